//! Weak and strict saddles of finite two-player zero-sum games.
//!
//! A saddle is an inclusion-minimal product of row and column sets in which
//! every outside action is dominated by an inside one, given that the
//! opponent plays inside. Under weak dominance all saddles of a game are
//! interchangeable and equivalent up to permuting rows and columns; strict
//! saddles are unique. This crate enumerates and searches saddles exactly,
//! computes exact game values and equilibria by rational linear programming,
//! and machine-checks those structural results on fixed and random games.

pub mod dominance;
pub mod equilibrium;
pub mod error;
pub mod fixtures;
pub mod game;
pub mod generate;
pub mod io;
pub mod lp;
pub mod rational;
pub mod saddle;
pub mod verify;

pub use dominance::{DominanceMode, DominanceWitness};
pub use equilibrium::{MixedStrategyPair, PureSaddlePoint};
pub use error::{Error, Result};
pub use game::{ActionProduct, ZeroSumGame};
pub use generate::{GeneratorConfig, GeneratorKind};
pub use rational::Rational;
pub use saddle::{PermutationWitness, SaddleSet};
