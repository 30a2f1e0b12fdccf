//! Reference implementations, theorem checkers and random frameworks used
//! to certify the optimised semantics.

pub mod brute;
pub mod random;
pub mod theorems;

pub use brute::{brute_alpha, brute_c_admissible, brute_formability, brute_vmax, Brute, BRUTE_LIMIT};
pub use random::{generate_random, generate_restricted, RandomModelSpec};
pub use theorems::{check_all, check_theorem, Theorem, TheoremReport, Verdict};
