//! Submonoids of finite commutative monoids times chains: enumeration by a
//! transfer matrix, spectral closed forms, and the correspondence with
//! saturated transfer systems.

pub mod appendix;
pub mod closed_forms;
pub mod eigenmatrix;
pub mod error;
pub mod ideals;
pub mod lattice;
pub mod limits;
pub mod linalg;
pub mod mask;
pub mod monoid;
pub mod notation;
pub mod oracle;
pub mod order;
pub mod spectral;
pub mod transfer;
pub mod transfer_systems;

pub use error::{Error, Result};
pub use lattice::SubmonoidLattice;
pub use limits::Limits;
pub use mask::SubsetMask;
pub use monoid::CayleyMonoid;
pub use order::PartialOrder;
pub use spectral::Spectrum;
pub use transfer::{CountSequence, TransferMatrix};
