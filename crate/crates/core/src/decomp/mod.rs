//! Builders and evaluators for the explicit polyadic and tensor-train
//! decompositions of join tensors, the dense brute-force oracle, and
//! symmetric-part storage.

mod cp;
mod dense;
mod profile;
mod serialize;
mod storage;
mod sym;
mod tt;

pub use cp::{build_cp, PolyadicDecomposition};
pub use dense::{
    materialize_dense, materialize_dense_guarded, DenseTensor, DEFAULT_DENSE_GUARD,
};
pub use profile::{nested_cp_profiles, CpProfile};
pub use serialize::{cp_to_json, tt_to_json, CpSerial, TtSerial};
pub use storage::{symmetric_storage, StorageDetail, StorageReport};
pub use sym::{multiset_count, multiset_count_u128, symmetric_part, SymmetricPart};
pub use tt::{build_tt, TensorTrain};
