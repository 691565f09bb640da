//! Exact Bernoulli, Genocchi and generalized Genocchi numbers, computed by
//! two independent routes, together with a harness that checks their
//! divisibility and congruence properties over `(n, a)` grids.
//!
//! The generalized Genocchi numbers `G_{n,a}` (`a ≥ 2`) are the differential
//! coefficients of `a·t / (e^{(a−1)t} + … + e^t + 1)`; `G_{n,2}` is the
//! classical `G_n`.

pub mod error;
pub mod numeric;
pub mod series;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use numeric::{
    congruent_mod, coprime_part, factorize, padic_valuation, CongruenceJudgment, Factorizer,
    PrimeWitness, Rat, Valuation,
};
pub use series::{exp_sum_series, EgfSeries};
pub use special::{
    check_valuation_bound, gen_genocchi_bernoulli, gen_genocchi_egf, gen_genocchi_numbers,
    genocchi, genocchi_numbers, von_staudt_clausen_sum, BernoulliTable, GenocchiValue,
};
pub use verify::{Failure, Grid, TheoremId, VerificationReport, Verifier};

pub use num_bigint::BigInt;
