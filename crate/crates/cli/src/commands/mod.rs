pub mod decompose;
pub mod eig_sweep;
pub mod rank;
pub mod storage_sweep;
pub mod verify;
