//! Exact divisor classes of pointed Brill-Noether loci in the projectivized
//! `k`-th Hodge bundle `PE^k_g` over the moduli space of stable curves.
//!
//! Three independent routes compute the class of the closure of `H^a_{g,d}`,
//! the locus of `k`-differentials vanishing at a point where some `g^r_d` has
//! vanishing sequence at least `a`:
//!
//! * a closed form in the cone coefficients `(mu, nu)`
//!   ([`divisor_classes::bn_k_class_direct`]);
//! * pushing forward the product of the incidence divisor `k psi - eta` with
//!   the pointed Brill-Noether class from `M_{g,1}-bar`
//!   ([`divisor_classes::bn_k_class_pushforward`]);
//! * solving the linear system imposed by test families
//!   ([`test_families::solve_coefficients`]).
//!
//! [`test_families::verify_dual_path`] runs all three and compares them.
//! All arithmetic is exact.

pub mod batch;
pub mod brill_noether;
pub mod divisor_classes;
pub mod error;
pub mod linalg;
pub mod picard;
pub mod rational;
pub mod teichmuller;
pub mod test_families;

pub use brill_noether::{BNData, VanishingSequence};
pub use error::{Error, Result};
pub use picard::{DownClass, UpClass};
pub use rational::Q;
