//! Bernoulli, Genocchi and generalized Genocchi numbers.
//!
//! Every family has two independent routes:
//!
//! * Bernoulli numbers come from the reciprocal of `(e^t − 1)/t` and from the
//!   recurrence `Σ_{k≤n} C(n+1,k) B_k = 0`.
//! * `G_{n,a}` comes from the expansion of `a·t / (e^{(a−1)t} + … + 1)` and
//!   from the Bernoulli sum `Σ_{k<n} C(n,k) B_k a^k`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{int_valuation, Factorizer, Rat};
use crate::series::{binomial_row, exp_sum_series, EgfSeries};

/// `B_0..=B_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliTable {
    values: Vec<Rat>,
}

impl BernoulliTable {
    /// Computes the table by series reciprocal and checks it against the
    /// recurrence before returning it.
    pub fn compute(max_index: usize) -> Self {
        let values = bernoulli_by_series(max_index);
        let oracle = bernoulli_by_recurrence(max_index);
        if let Some(n) = (0..=max_index).find(|&n| values[n] != oracle[n]) {
            panic!(
                "Bernoulli routes disagree at n = {n}: series {} vs recurrence {}",
                values[n], oracle[n]
            );
        }
        BernoulliTable { values }
    }

    /// Wraps previously computed values, e.g. from a cache file. Only the
    /// structural invariants are checked here.
    pub fn from_values(values: Vec<Rat>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::IndexOutOfRange { index: 0, max: 0 });
        }
        Ok(BernoulliTable { values })
    }

    /// The prefix `B_0..=B_n`.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        self.get(n)?;
        Ok(BernoulliTable {
            values: self.values[..=n].to_vec(),
        })
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> Result<&Rat> {
        self.values.get(n).ok_or(Error::IndexOutOfRange {
            index: n,
            max: self.max_index(),
        })
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    /// `B_n` re-derived from `B_0..B_{n−1}` of this table via the recurrence.
    pub fn rederive(&self, n: usize) -> Result<Rat> {
        if n == 0 {
            return Ok(Rat::one());
        }
        self.get(n)?;
        let row = binomial_row(n + 1);
        let s: Rat = (0..n)
            .map(|k| Rat::from_integer(row[k].clone()) * &self.values[k])
            .sum();
        Ok(-(s / Rat::from(n as i64 + 1)))
    }
}

/// `B_0..=B_N` as the differential coefficients of the reciprocal of
/// `(e^t − 1)/t`, whose coefficient `n` is `1/(n+1)`.
pub fn bernoulli_by_series(max_index: usize) -> Vec<Rat> {
    EgfSeries::from_fn(max_index, |n| Rat::new(1, n as i64 + 1))
        .reciprocal()
        .expect("constant term is 1")
        .into_coeffs()
}

/// `B_0..=B_N` from `B_0 = 1` and `Σ_{k=0}^{n} C(n+1,k) B_k = 0`.
pub fn bernoulli_by_recurrence(max_index: usize) -> Vec<Rat> {
    let mut b = Vec::with_capacity(max_index + 1);
    b.push(Rat::one());
    for n in 1..=max_index {
        let row = binomial_row(n + 1);
        let s: Rat = (0..n)
            .filter(|&k| !b[k].is_zero())
            .map(|k| Rat::from_integer(row[k].clone()) * &b[k])
            .sum();
        b.push(-(s / Rat::from(n as i64 + 1)));
    }
    b
}

/// A generalized Genocchi number `G_{n,a}`; `a = 2` gives the classical `G_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenocchiValue {
    pub n: usize,
    pub a: u64,
    pub value: BigInt,
}

fn integral(series: EgfSeries) -> Result<Vec<BigInt>> {
    series
        .into_coeffs()
        .into_iter()
        .enumerate()
        .map(|(index, c)| {
            c.to_integer().ok_or_else(|| Error::NonIntegral {
                index,
                value: c.to_string(),
            })
        })
        .collect()
}

/// `G_0..=G_N` from `2t/(e^t + 1)`.
pub fn genocchi_numbers(max_index: usize) -> Result<Vec<BigInt>> {
    if max_index == 0 {
        return Ok(vec![BigInt::zero()]);
    }
    let order = max_index - 1;
    let denom = EgfSeries::exp(Rat::one(), order)
        .add(&EgfSeries::constant(Rat::one(), order))?;
    integral(denom.reciprocal()?.scale(&Rat::from(2)).shift_up())
}

/// `G_n` from `2t/(e^t + 1)`.
pub fn genocchi(n: usize) -> Result<BigInt> {
    Ok(genocchi_numbers(n)?.swap_remove(n))
}

/// `G_{0,a}..=G_{N,a}` from `a·t / (e^{(a−1)t} + … + e^t + 1)`.
pub fn gen_genocchi_numbers(max_index: usize, a: u64) -> Result<Vec<BigInt>> {
    if a < 2 {
        return Err(Error::BaseTooSmall(a));
    }
    if max_index == 0 {
        return Ok(vec![BigInt::zero()]);
    }
    let h = exp_sum_series(a, max_index - 1)?.reciprocal()?;
    integral(h.scale(&Rat::from(a as i64)).shift_up())
}

/// `G_{n,a}` by series expansion.
pub fn gen_genocchi_egf(n: usize, a: u64) -> Result<BigInt> {
    Ok(gen_genocchi_numbers(n, a)?.swap_remove(n))
}

/// `G_{n,a} = Σ_{k=0}^{n−1} C(n,k) B_k a^k` for `n ≥ 1`.
///
/// Returned as a rational so integrality stays checkable by the caller.
pub fn gen_genocchi_bernoulli(n: usize, a: u64, table: &BernoulliTable) -> Result<Rat> {
    if n == 0 {
        return Err(Error::Hypothesis {
            n,
            a,
            reason: "the Bernoulli sum is stated for n >= 1",
        });
    }
    if a < 2 {
        return Err(Error::BaseTooSmall(a));
    }
    table.get(n - 1)?;
    let row = binomial_row(n);
    let a = BigInt::from(a);
    let mut power = BigInt::one();
    let mut sum = Rat::zero();
    for k in 0..n {
        let b = &table.values()[k];
        if !b.is_zero() {
            sum = sum + Rat::from_integer(&row[k] * &power) * b;
        }
        power *= &a;
    }
    Ok(sum)
}

/// Primes `p` with `(p − 1) | n`, found by scanning the divisors of `n`.
pub fn staudt_primes(n: usize) -> Vec<u64> {
    let n = n as u64;
    let mut divisors = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            divisors.push(d);
            if d * d != n {
                divisors.push(n / d);
            }
        }
        d += 1;
    }
    let factorizer = Factorizer::global();
    let mut primes: Vec<u64> = divisors
        .into_iter()
        .map(|d| d + 1)
        .filter(|&p| factorizer.is_prime(p).expect("divisor + 1 within sieve range"))
        .collect();
    primes.sort_unstable();
    primes
}

/// `B_n + Σ_{(p−1)|n} 1/p` for even `n ≥ 2`.
pub fn von_staudt_clausen_sum(n: usize, table: &BernoulliTable) -> Result<Rat> {
    if n % 2 == 1 {
        return Err(Error::OddIndex(n));
    }
    if n == 0 {
        return Err(Error::Hypothesis {
            n,
            a: 0,
            reason: "the prime sum is stated for even n >= 2",
        });
    }
    let b = table.get(n)?.clone();
    Ok(staudt_primes(n)
        .into_iter()
        .fold(b, |acc, p| acc + Rat::new(1, p as i64)))
}

/// `ν_p(B_n) ≥ −1` for every prime `p ≤ prime_bound` and every prime
/// dividing `den(B_n)`.
pub fn check_valuation_bound(n: usize, table: &BernoulliTable, prime_bound: u64) -> Result<bool> {
    let b = table.get(n)?;
    if b.is_zero() {
        return Ok(true);
    }
    let factorizer = Factorizer::global();
    // The numerator is an integer, so only the denominator can pull ν_p below 0.
    let small_ok = factorizer
        .primes()
        .iter()
        .take_while(|&&p| p <= prime_bound)
        .all(|&p| int_valuation(b.den(), p) <= 1);
    if !small_ok {
        return Ok(false);
    }
    Ok(factorizer.factorize(b.den())?.iter().all(|&(_, e)| e <= 1))
}
