//! Quantum and classical learning machines for the k-th root of NOT.
//!
//! An operation is a `k`-th root of NOT when `n·k` applications return the
//! input bit for even `n` and its negation for odd `n`. This crate trains two
//! kinds of machine to perform it for `k = 2^m`:
//!
//! - [`quantum`]: a single qubit whose unitary is found by a Gaussian random
//!   walk over Euler angles, guided by a teacher that only sees `M` sampled
//!   measurement outcomes per trial.
//! - [`classical`]: a probabilistic machine on `2k` internal states trained by
//!   additive reward/penalty updates of its transition matrix.
//!
//! Both are scored with the exact figures of merit in [`merit`]. The
//! [`oracle`] module enumerates small deterministic machines to check the
//! `2k`-state lower bound and the closed-form count of target functions, and
//! [`harness`] runs seeded experiments and writes CSV and SVG output.
//!
//! ```
//! use rootnot::{merit, Unitary2};
//!
//! let root = Unitary2::exact_root(8).unwrap();
//! assert!((merit::quantum_merit(&root, 8, 10) - 1.0).abs() < 1e-12);
//! ```

pub mod classical;
pub mod error;
pub mod harness;
pub mod merit;
pub mod oracle;
pub mod qcore;
pub mod quantum;

use rand::SeedableRng;

pub use classical::{ClassicalMachine, UpdateGains};
pub use error::{Error, Result};
pub use merit::{MachineKind, MeritPoint, MeritSeries};
pub use qcore::{EulerAngles, Unitary2};
pub use quantum::{TeacherSchedule, WalkWidths};

/// The random stream every learner owns.
pub type Stream = rand_chacha::ChaCha8Rng;

/// A reproducible stream for `seed`.
pub fn stream(seed: u64) -> Stream {
    Stream::seed_from_u64(seed)
}
