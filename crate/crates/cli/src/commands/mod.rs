pub mod optimize;
pub mod state;
pub mod surface;
pub mod verify;
