pub mod scalars;
pub mod engine;
pub mod rootdata;
pub mod presentations;
pub mod structure;
pub mod lifting;
pub mod verify;
