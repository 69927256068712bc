//! Noisy 2×2 bimatrix games.
//!
//! Players act on private, Gaussian-perturbed copies of an actual game. The
//! crate classifies equilibria, computes the probability that perturbed
//! behaviour stays close to the actual equilibria, and checks those numbers
//! by Monte Carlo.

// `!(a < b)` is used on purpose so NaN falls into the rejecting branch
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod formats;
pub mod game;
pub mod misinfo;
pub mod montecarlo;
pub mod normal;
pub mod prob;
pub mod quadrature;

pub use error::{Error, Result};
pub use game::{Bimatrix2x2, Matrix2, NeClass, Player, Pure, Strategy, StrategyProfile};
pub use misinfo::{MisinformationGame, NoiseLaw, NoiseSpec, Tolerance};
pub use normal::NormalDist;
pub use prob::{ConsistencyReport, RatioForm, ProbConfig, Window};
pub use quadrature::QuadratureConfig;
