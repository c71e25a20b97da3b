//! Exact-arithmetic engine for the loop-algebra Fock module on the
//! equivariant cohomology of the incidence Hilbert schemes `(C^2)^[n,n+1]`.
//!
//! The crate is organised bottom-up:
//!
//! * [`partitions`]: Young diagram combinatorics (hooks, corners, dominance).
//! * [`incidence`]: incidence pairs, marked cells, the hook products
//!   `h(λ,μ)` / `h₊(λ,μ)`, Euler classes and Betti numbers.
//! * [`fock`]: exact sparse vectors and the Heisenberg / translation
//!   operators on the operator basis `t̃^i ã_{-ν}|0⟩`.
//! * [`curve_classes`]: the curve-class bases `[L^λC]` and `[L̃^{λ,μ}C]`.
//! * [`basis_change`]: transition matrices between the three bases, plus
//!   the on-disk matrix cache.
//! * [`ring`]: the `⋆̃` / `⋆` products, the ordinary cup product and the
//!   comparison maps `t ∪ f*`, `g*`.
//! * [`symfunc`]: the symmetric-function dictionary `Φ`, `Φ̃`.
//! * [`verify`]: named check suites shared by the command line tool.

pub mod basis_change;
pub mod curve_classes;
pub mod error;
pub mod fock;
pub mod incidence;
pub mod partitions;
pub mod ring;
pub mod scalar;
pub mod symfunc;
pub mod verify;

pub use basis_change::{BasisKey, BasisTag, Engine, TransitionMatrix};
pub use curve_classes::{CoefficientRule, HilbLKey};
pub use error::{Error, Result};
pub use fock::{B2Key, FockVector};
pub use incidence::{IncidencePair, MarkedCells, WeightMultiset};
pub use partitions::{Cell, Corner, Partition};
pub use ring::OrdinaryClass;
pub use scalar::Scalar;
pub use symfunc::{PolyV, SymFunc};

/// Library version baked into cache keys.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
