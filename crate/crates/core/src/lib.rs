//! Upper bounds on Zarankiewicz numbers `z(m, n; s, t)`.
//!
//! * [`exactmath`]: binomials, the `alpha`/`beta` quantities and Roman points.
//! * [`bounds`]: Roman's bounds, the closed-form bound `B_k` and the classical
//!   comparison bounds.
//! * [`lpcore`]: the linear programs over edge-size counts and an exact
//!   rational simplex solver with dual certificates.
//! * [`oracle`]: brute-force ground truth for tiny parameters and random
//!   `(s, t-1)`-linear hypergraphs.
//! * [`survey`]: batch tables, match counts and improvement curves.
//! * [`verify`]: the invariant suites run by `zbound verify`.

pub mod bounds;
pub mod error;
pub mod exactmath;
pub mod lpcore;
pub mod oracle;
pub mod survey;
pub mod verify;

pub use error::{Error, Result};
pub use exactmath::{BigRational, ZParams};
