//! Exact classical simulation of boson sampling on linear interferometers
//! with partial distinguishability and photon loss.
//!
//! The crate has two halves that check each other:
//!
//! * second-quantized engines ([`distributions`], [`sampler`], [`schur`])
//!   working with occupations and matrix permanents, and
//! * a brute-force first-quantized oracle ([`density`]) that builds the
//!   symmetrized tensor-space states, applies `U^{(x)n}`, traces out Label or
//!   lost qudits and measures.
//!
//! ```
//! use distinguon::{distributions, fock::Occupation, interferometer};
//!
//! let bs = interferometer::balanced_beamsplitter();
//! let input = Occupation::new(vec![1, 1]).unwrap();
//! let d = distributions::ideal_distribution(&bs, &input).unwrap();
//! // no coincidences: Hong-Ou-Mandel
//! assert!(d.probability(&input).abs() < 1e-15);
//! ```

pub mod density;
pub mod distributions;
pub mod error;
pub mod fock;
pub mod interferometer;
pub mod matrix;
pub mod perm;
pub mod permanent;
pub mod rng;
pub mod sampler;
pub mod schur;
pub mod verify;

pub use distributions::{
    DistMatrix, LabelConfiguration, Limits, Model, ModeLabels, OccupationDistribution,
};
pub use error::{Error, Result};
pub use fock::{ModeWord, Occupation, SystemLabelOccupation};
pub use interferometer::ElementSequence;
pub use matrix::{ComplexMatrix, C64};
pub use rng::RandomSeed;
