//! Exact Frobenius numbers, genus, Sylvester power sums and weighted power
//! sums over the gaps of a numerical semigroup.
//!
//! Three independent routes are provided and cross-checked in the tests:
//! residue-table (Apéry set) formulas for arbitrary generators
//! ([`sylvester`]), closed forms for arithmetic progressions
//! ([`arithprog`]), and brute-force enumeration ([`oracle`]).
//!
//! ```
//! use frobenius_core::{apery_general, power_sum, Generators};
//!
//! let gens = Generators::new([13, 16, 19, 22, 25]).unwrap();
//! let table = apery_general(&gens);
//! assert_eq!(power_sum(&table, 1).unwrap(), 894.into());
//! ```

pub mod apery;
pub mod arithprog;
mod error;
pub mod exact;
pub mod numberfield;
pub mod oracle;
pub mod poly;
pub mod query;
pub mod sylvester;

pub use apery::{apery_arith, apery_general, apery_polynomial, AperyTable, ArithProgression, Generators};
pub use arithprog::{frobenius_ap, genus_ap, power_sum_ap, weighted_sum_ap, ApBranch};
pub use error::{Error, Result};
pub use exact::{bernoulli, binomial, eulerian, stirling2, BigInt, BigRational};
pub use numberfield::{Embedding, LambdaSpec, NumberRing, RingElement};
pub use oracle::{gap_set, oracle_power_sum, oracle_weighted_sum, GapSet};
pub use query::{GapSummary, MethodChoice, Problem};
pub use sylvester::{
    frobenius, genus, power_sum, weighted_moment, weighted_sum, weighted_sum_general, weighted_sum_unity_a,
    Method,
};
