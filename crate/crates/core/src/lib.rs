//! Fuzzy anti-norms on finite-dimensional real vector spaces.
//!
//! A fuzzy anti-norm `ν(x, t)` is built from a base norm, a non-increasing
//! decay profile `f` and a t-conorm, as `ν(x, t) = f(t / ‖x‖)`. From it come
//! the ascending α-norm family, fuzzy α-convergence of sequences and an
//! α-version of Riesz's lemma.

pub mod alphacut;
pub mod antinorm;
pub mod bisect;
pub mod error;
pub mod profile;
pub mod report;
pub mod riesz;
pub mod sampling;
pub mod sequences;
pub mod space;
pub mod tconorm;

pub use alphacut::{alpha_norm, AlphaNormFamily, ExtendedNonneg};
pub use antinorm::{combine_max, verify_antinorm_axioms, FuzzyAntiNorm};
pub use error::{Error, Result};
pub use profile::DecayProfile;
pub use report::{AxiomEntry, AxiomReport, Status, Witness};
pub use riesz::{riesz_witness, verify_witness, RieszWitness, Subspace};
pub use sequences::{Rate, SequenceVerdict, VectorSequence, Verdict};
pub use space::{BaseNorm, VectorSpaceSpec};
pub use tconorm::{TConorm, UnitValue};
