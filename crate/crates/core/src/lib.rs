//! Numerical toolkit for projective metrics on the simplex, contraction of
//! (perturbed) positive matrices, and the entropy rate of binary hidden
//! Markov processes.
//!
//! The crate is organized around one pipeline:
//!
//! 1. [`metrics`] defines the real and complex Hilbert metrics and the
//!    Poincaré-based alternative on simplex domains.
//! 2. [`matrix`] and [`mobius`] compute contraction coefficients of
//!    positive-matrix actions — Birkhoff's closed form, the half-plane
//!    closed form, and numerical suprema for perturbed maps.
//! 3. [`certify`] stress-tests contraction and neighborhood invariance for
//!    complex perturbations with seeded Monte Carlo, including oracles for
//!    the two inequalities the contraction argument rests on.
//! 4. [`hmm`] and [`bsc`] implement the observation filter and entropy-rate
//!    computation for hidden Markov processes, specialized to binary Markov
//!    chains seen through binary symmetric channels.
//! 5. [`radius`] certifies lower bounds on the radius of analyticity of the
//!    entropy rate in the channel parameter, by randomized search over
//!    feasibility conditions.
//!
//! All randomized routines take explicit seeds and produce identical results
//! for identical seeds, independent of worker count (see [`seeding`]).
//!
//! # Quick start
//!
//! ```
//! use blackwell::bsc::{entropy_rate_exact, BscHmm};
//! use blackwell::matrix::{birkhoff_tau, PositiveMatrix};
//! use blackwell::radius::{max_radius_search, verify_tuple, RadiusProblem};
//!
//! // Contraction coefficient of a positive matrix action.
//! let t = PositiveMatrix::new(vec![vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
//! assert!((birkhoff_tau(&t).unwrap() - 1.0 / 3.0).abs() < 1e-15);
//!
//! // Entropy of a binary chain seen through a noisy channel, in nats.
//! let model = BscHmm::symmetric(0.7, 0.2).unwrap();
//! let h = entropy_rate_exact(&model, 12).unwrap();
//! assert!(h > 0.0 && h < std::f64::consts::LN_2);
//!
//! // Certified lower bound on how far the channel parameter can move
//! // while the entropy rate stays analytic.
//! let problem = RadiusProblem::symmetric(0.7, 0.2).unwrap();
//! let outcome = max_radius_search(&problem, 2_000, 7).unwrap();
//! assert!(outcome.r_max > 0.0);
//! assert!(verify_tuple(&problem, &outcome.best.unwrap()));
//! ```

pub mod bsc;
pub mod certify;
pub mod error;
pub mod hmm;
pub mod matrix;
pub mod metrics;
pub mod mobius;
pub mod radius;
pub mod report;
pub mod seeding;
pub mod simplex;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, PositiveMatrix};
pub use simplex::{ComplexSimplexPoint, HalfPlanePoint, RealSimplexPoint};
