//! Combinatorics of factorization systems on finite lattices.
//!
//! The crate enumerates transfer systems and factorization systems on a
//! finite lattice, computes their characteristic and cocharacteristic
//! operators, and checks the correspondences between reflective and
//! coreflective systems, closure and interior operators, submonoids,
//! saturated covers, monads and fibrant/cofibrant model structures.

pub mod bits;
mod closure_system;
pub mod cochar;
pub mod counting;
pub mod crypto;
pub mod error;
pub mod factorization;
pub mod io;
pub mod lattice;
pub mod transfer;
pub mod verify;

pub use bits::{ElemSet, Relation};
pub use error::{Error, Result};
pub use lattice::{build_lattice, make_standard, Lattice, Standard};
pub use transfer::{TransferSystem, DEFAULT_MAX_STRUCTURES};
