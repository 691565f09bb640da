//! Exact integers and rationals, factorization, p-adic valuations and the
//! congruence relation extended from ℤ to ℚ.
//!
//! A congruence `x ≡ y (mod m)` between rationals holds when `m` divides the
//! numerator of `x − y`. Equivalently, `ν_p(x − y) ≥ ν_p(m)` for every prime
//! `p | m`. Both criteria are evaluated by [`congruent_mod`] and must agree.
//!
//! Unlike congruences in ℤ, congruences in ℚ cannot be multiplied side to
//! side: `3 ≡ 0` and `1/3 ≡ 10/3 (mod 3)`, yet `1 ≢ 0 (mod 3)`. Sums, and
//! scaling by a factor whose denominator is coprime to the modulus, are fine.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sieve bound used by [`factorize`] and [`padic_valuation`].
pub const DEFAULT_SIEVE_BOUND: u64 = 1_000_000;

/// A rational number in lowest terms with a positive denominator.
///
/// `den()` is the smallest positive `d` with `d·r ∈ ℤ` and `num() = d·r`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rat(BigRational);

impl Rat {
    /// Builds `num/den` in lowest terms. Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Rat(BigRational::new(num.into(), den.into()))
    }

    pub fn checked_new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Option<Self> {
        let den = den.into();
        if den.is_zero() {
            None
        } else {
            Some(Self::new(num, den))
        }
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn num(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn den(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The integer value, if the denominator is 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    pub fn recip(&self) -> Self {
        Rat(self.0.recip())
    }

    pub fn pow(&self, exp: i32) -> Self {
        Rat(num_traits::Pow::pow(&self.0, exp))
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.num())
        } else {
            write!(f, "{}/{}", self.num(), self.den())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rat({self})")
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_integer(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat::from_integer(n)
    }
}

impl From<BigRational> for Rat {
    fn from(r: BigRational) -> Self {
        Rat(r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $tr<Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'b Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl std::iter::Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

/// A p-adic valuation. `Infinity` is the valuation of zero and compares
/// greater than every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinity
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl PartialEq<i64> for Valuation {
    fn eq(&self, other: &i64) -> bool {
        *self == Valuation::Finite(*other)
    }
}

impl PartialOrd<i64> for Valuation {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Valuation::Finite(*other)))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

/// Trial-division factorizer backed by a prime sieve.
///
/// A value is factored completely when the cofactor left after dividing out
/// every sieve prime is below `bound²`; otherwise it is rejected.
#[derive(Debug, Clone)]
pub struct Factorizer {
    bound: u64,
    primes: Vec<u64>,
    composite: Vec<bool>,
}

impl Factorizer {
    pub fn new(bound: u64) -> Self {
        let bound = bound.max(2);
        let size = bound as usize + 1;
        let mut composite = vec![false; size];
        composite[0] = true;
        composite[1] = true;
        let mut i = 2;
        while i * i < size {
            if !composite[i] {
                let mut j = i * i;
                while j < size {
                    composite[j] = true;
                    j += i;
                }
            }
            i += 1;
        }
        let primes = (2..size).filter(|&k| !composite[k]).map(|k| k as u64).collect();
        Factorizer {
            bound,
            primes,
            composite,
        }
    }

    /// Shared factorizer with [`DEFAULT_SIEVE_BOUND`].
    pub fn global() -> &'static Factorizer {
        static GLOBAL: OnceLock<Factorizer> = OnceLock::new();
        GLOBAL.get_or_init(|| Factorizer::new(DEFAULT_SIEVE_BOUND))
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn is_prime(&self, p: u64) -> Result<bool> {
        if p <= self.bound {
            return Ok(!self.composite[p as usize]);
        }
        if p / self.bound >= self.bound {
            return Err(Error::BeyondFactorBound {
                value: p.to_string(),
                cofactor: p.to_string(),
                bound: self.bound,
            });
        }
        Ok(self
            .primes
            .iter()
            .take_while(|&&q| q * q <= p)
            .all(|&q| p % q != 0))
    }

    /// Prime factorization of a positive integer, primes strictly increasing.
    pub fn factorize(&self, n: &BigInt) -> Result<Vec<(u64, u32)>> {
        if n.sign() != Sign::Plus {
            return Err(Error::NotPositive(n.to_string()));
        }
        let mut rest: BigUint = n.magnitude().clone();
        let mut out = Vec::new();
        for &p in &self.primes {
            if rest.is_one() {
                return Ok(out);
            }
            let pb = BigUint::from(p);
            if &pb * &pb > rest {
                break;
            }
            let mut e = 0u32;
            loop {
                let (q, r) = rest.div_rem(&pb);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
        }
        if rest.is_one() {
            return Ok(out);
        }
        // No prime up to min(bound, sqrt(rest)) divides rest.
        match rest.to_u64() {
            Some(r) if r <= self.bound || r / self.bound < self.bound => {
                out.push((r, 1));
                Ok(out)
            }
            _ => Err(Error::BeyondFactorBound {
                value: n.to_string(),
                cofactor: rest.to_string(),
                bound: self.bound,
            }),
        }
    }
}

/// Factorizes `n ≥ 1` with the shared default sieve.
pub fn factorize(n: impl Into<BigInt>) -> Result<Vec<(u64, u32)>> {
    Factorizer::global().factorize(&n.into())
}

pub fn is_prime(p: u64) -> Result<bool> {
    Factorizer::global().is_prime(p)
}

/// Multiplicity of the prime `p` in a nonzero integer. `p` is not checked.
pub(crate) fn int_valuation(n: &BigInt, p: u64) -> u64 {
    debug_assert!(!n.is_zero());
    let pb = BigUint::from(p);
    let mut m = n.magnitude().clone();
    let mut e = 0;
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return e;
        }
        m = q;
        e += 1;
    }
}

/// ν_p(x) = ν_p(num x) − ν_p(den x), with ν_p(0) = ∞.
pub fn padic_valuation(x: &Rat, p: u64) -> Result<Valuation> {
    if !is_prime(p)? {
        return Err(Error::NotPrime(p));
    }
    if x.is_zero() {
        return Ok(Valuation::Infinity);
    }
    let up = int_valuation(x.num(), p) as i64;
    let down = int_valuation(x.den(), p) as i64;
    Ok(Valuation::Finite(up - down))
}

/// π_a(n): the greatest divisor of `n` coprime with `a`.
pub fn coprime_part(n: u64, a: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::NotPositive(n.to_string()));
    }
    if a == 0 {
        return Err(Error::NotPositive(a.to_string()));
    }
    let mut n = n;
    loop {
        let g = n.gcd(&a);
        if g == 1 {
            return Ok(n);
        }
        n /= g;
    }
}

/// Per-prime evidence for a congruence judgment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeWitness {
    pub prime: u64,
    /// ν_p(x − y).
    pub difference: Valuation,
    /// ν_p(m).
    pub modulus: u32,
}

/// Outcome of testing `x ≡ y (mod m)` over ℚ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceJudgment {
    pub holds: bool,
    pub modulus: u64,
    pub witness: Vec<PrimeWitness>,
}

/// Tests `x ≡ y (mod m)`: `m` divides the numerator of `x − y`.
///
/// The valuation form is evaluated alongside and must agree; a disagreement
/// is an arithmetic bug and panics.
pub fn congruent_mod(x: &Rat, y: &Rat, m: u64) -> Result<CongruenceJudgment> {
    if m == 0 {
        return Err(Error::NotPositive(m.to_string()));
    }
    let diff = x - y;
    let by_numerator = (diff.num() % BigInt::from(m)).is_zero();
    let mut witness = Vec::new();
    for (p, e) in factorize(m)? {
        witness.push(PrimeWitness {
            prime: p,
            difference: padic_valuation(&diff, p)?,
            modulus: e,
        });
    }
    let by_valuation = witness
        .iter()
        .all(|w| w.difference >= i64::from(w.modulus));
    assert_eq!(
        by_numerator, by_valuation,
        "congruence criteria disagree for {x} ≡ {y} (mod {m})"
    );
    Ok(CongruenceJudgment {
        holds: by_numerator,
        modulus: m,
        witness,
    })
}

/// Least nonnegative residue of an integer.
pub fn residue(n: &BigInt, m: u64) -> u64 {
    n.mod_floor(&BigInt::from(m))
        .to_u64()
        .expect("residue fits the modulus")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(1).unwrap(), vec![]);
        assert_eq!(factorize(12).unwrap(), vec![(2, 2), (3, 1)]);
        assert_eq!(
            factorize(2730).unwrap(),
            vec![(2, 1), (3, 1), (5, 1), (7, 1), (13, 1)]
        );
    }

    #[test]
    fn factorize_rejects_nonpositive() {
        assert!(matches!(factorize(0), Err(Error::NotPositive(_))));
        assert!(matches!(factorize(-6), Err(Error::NotPositive(_))));
    }

    #[test]
    fn factorize_respects_bound() {
        let small = Factorizer::new(10);
        // 97 < 10², resolved as a prime cofactor
        assert_eq!(small.factorize(&BigInt::from(2 * 97)).unwrap(), vec![(2, 1), (97, 1)]);
        // 101·103 cannot be certified with primes ≤ 10
        assert!(matches!(
            small.factorize(&BigInt::from(101 * 103)),
            Err(Error::BeyondFactorBound { .. })
        ));
        // large squarefree products of small primes are fine
        let n: BigInt = [2u64, 3, 5, 7].iter().map(|&p| BigInt::from(p).pow(20)).product();
        assert_eq!(small.factorize(&n).unwrap(), vec![(2, 20), (3, 20), (5, 20), (7, 20)]);
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(padic_valuation(&Rat::from(12), 2).unwrap(), Valuation::Finite(2));
        assert_eq!(padic_valuation(&Rat::new(1, 6), 3).unwrap(), Valuation::Finite(-1));
        assert_eq!(padic_valuation(&Rat::zero(), 5).unwrap(), Valuation::Infinity);
        assert_eq!(padic_valuation(&Rat::from(7), 4), Err(Error::NotPrime(4)));
        assert_eq!(padic_valuation(&Rat::from(7), 1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn infinity_dominates() {
        assert!(Valuation::Infinity > Valuation::Finite(i64::MAX));
        assert!(Valuation::Finite(-3) < Valuation::Finite(0));
        assert_eq!(Valuation::Infinity + Valuation::Finite(-4), Valuation::Infinity);
    }

    #[test]
    fn coprime_part_examples() {
        assert_eq!(coprime_part(12, 2).unwrap(), 3);
        assert_eq!(coprime_part(1, 7).unwrap(), 1);
        assert_eq!(coprime_part(360, 6).unwrap(), 5);
        assert!(coprime_part(0, 3).is_err());
        assert!(coprime_part(3, 0).is_err());
    }

    #[test]
    fn congruence_examples() {
        assert!(congruent_mod(&Rat::new(7, 3), &Rat::new(1, 3), 2).unwrap().holds);
        assert!(congruent_mod(&Rat::new(1, 2), &Rat::from(3), 5).unwrap().holds);
        let j = congruent_mod(&Rat::new(1, 6), &Rat::new(1, 2), 3).unwrap();
        assert!(!j.holds);
        assert_eq!(
            j.witness,
            vec![PrimeWitness { prime: 3, difference: Valuation::Finite(-1), modulus: 1 }]
        );
        assert!(congruent_mod(&Rat::new(1, 6), &Rat::new(1, 2), 1).unwrap().holds);
        assert!(congruent_mod(&Rat::one(), &Rat::one(), 0).is_err());
    }

    #[test]
    fn congruences_do_not_multiply() {
        // 3 ≡ 0 and 1/3 ≡ 10/3 (mod 3), but the products are 1 and 0.
        let m = 3;
        assert!(congruent_mod(&Rat::from(3), &Rat::zero(), m).unwrap().holds);
        assert!(congruent_mod(&Rat::new(1, 3), &Rat::new(10, 3), m).unwrap().holds);
        let lhs = Rat::from(3) * Rat::new(1, 3);
        let rhs = Rat::zero() * Rat::new(10, 3);
        assert!(!congruent_mod(&lhs, &rhs, m).unwrap().holds);
    }

    #[test]
    fn sign_lives_in_numerator() {
        let r = Rat::new(3, -6);
        assert_eq!(r.num(), &BigInt::from(-1));
        assert_eq!(r.den(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-1/2");
    }

    #[test]
    fn residue_is_nonnegative() {
        assert_eq!(residue(&BigInt::from(-26), 3), 1);
        assert_eq!(residue(&BigInt::from(10), 6), 4);
    }
}
