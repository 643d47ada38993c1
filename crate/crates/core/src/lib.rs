pub mod linalg;
pub mod network;
pub mod text;
pub mod toric;
pub mod phospho;
pub mod multistat;
