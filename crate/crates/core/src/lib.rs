pub mod matlin;
pub mod quantum;
pub mod sdp;
pub mod discrimination;
pub mod duality;
pub mod cli;
