//! Truncated power series in exponential form.
//!
//! A series of order `N` stores its differential coefficients `a_0..=a_N`,
//! so it represents `f(t) = Σ a_n t^n / n!`. Products are binomial
//! convolutions. Operations never extend or shrink the order implicitly;
//! mixing orders is an error.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::Rat;

/// Row `n` of Pascal's triangle.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * (n - k) / (k + 1);
        row.push(c.clone());
    }
    row
}

/// Rows `0..=n` of Pascal's triangle.
pub fn binomial_triangle(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![BigInt::one(); i + 1];
        if i >= 2 {
            let prev = &rows[i - 1];
            for k in 1..i {
                row[k] = &prev[k - 1] + &prev[k];
            }
        }
        rows.push(row);
    }
    rows
}

/// Truncated series `Σ_{n≤N} a_n t^n/n!` held by its differential coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EgfSeries {
    coeffs: Vec<Rat>,
}

impl EgfSeries {
    /// Builds a series from `a_0..=a_N`. Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least a_0");
        EgfSeries { coeffs }
    }

    pub fn from_integers<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(coeffs.into_iter().map(Rat::from_integer).collect())
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rat) -> Self {
        Self::new((0..=order).map(f).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| Rat::zero())
    }

    pub fn constant(c: Rat, order: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); order + 1];
        coeffs[0] = c;
        Self::new(coeffs)
    }

    /// `e^{ct}`: every differential coefficient is `c^n`.
    pub fn exp(c: Rat, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut p = Rat::one();
        for _ in 0..=order {
            coeffs.push(p.clone());
            p = p * &c;
        }
        Self::new(coeffs)
    }

    /// The series `t` (`a_1 = 1`).
    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |n| if n == 1 { Rat::one() } else { Rat::zero() })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Rat {
        &self.coeffs[n]
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    fn check_orders(&self, other: &EgfSeries) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &EgfSeries) -> Result<EgfSeries> {
        self.check_orders(other)?;
        Ok(Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    /// Binomial convolution `(fg)_n = Σ_k C(n,k) f_k g_{n−k}`.
    pub fn mul(&self, other: &EgfSeries) -> Result<EgfSeries> {
        self.check_orders(other)?;
        let order = self.order();
        let binom = binomial_triangle(order);
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n)
                    .filter(|&k| !self.coeffs[k].is_zero() && !other.coeffs[n - k].is_zero())
                    .map(|k| {
                        Rat::from_integer(binom[n][k].clone())
                            * &self.coeffs[k]
                            * &other.coeffs[n - k]
                    })
                    .sum()
            })
            .collect();
        Ok(Self::new(coeffs))
    }

    pub fn scale(&self, c: &Rat) -> EgfSeries {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplicative inverse by back-substitution on the convolution system:
    /// `r_0 = 1/f_0`, `r_n = −(1/f_0) Σ_{k=1}^{n} C(n,k) f_k r_{n−k}`.
    pub fn reciprocal(&self) -> Result<EgfSeries> {
        if self.coeffs[0].is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        if self.is_idc() {
            Ok(self.reciprocal_integral())
        } else {
            Ok(self.reciprocal_rational())
        }
    }

    fn reciprocal_rational(&self) -> EgfSeries {
        let inv0 = self.coeffs[0].recip();
        let order = self.order();
        let mut out: Vec<Rat> = Vec::with_capacity(order + 1);
        out.push(inv0.clone());
        let mut row = vec![BigInt::one()];
        for n in 1..=order {
            row = next_binomial_row(&row);
            let acc: Rat = (1..=n)
                .filter(|&k| !self.coeffs[k].is_zero() && !out[n - k].is_zero())
                .map(|k| Rat::from_integer(row[k].clone()) * &self.coeffs[k] * &out[n - k])
                .sum();
            out.push(-(acc * &inv0));
        }
        Self::new(out)
    }

    /// Same system for integer coefficients, solved without fractions:
    /// `s_n = f_0^{n+1} r_n` satisfies `s_0 = 1` and
    /// `s_n = −Σ_{k=1}^{n} C(n,k) f_k f_0^{k−1} s_{n−k}`.
    fn reciprocal_integral(&self) -> EgfSeries {
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.to_integer().expect("integral coefficients"))
            .collect();
        let c = &ints[0];
        let order = self.order();
        let mut weights = Vec::with_capacity(order + 1);
        let mut power = BigInt::one();
        weights.push(BigInt::zero());
        for f in &ints[1..] {
            weights.push(f * &power);
            power *= c;
        }
        let mut s: Vec<BigInt> = Vec::with_capacity(order + 1);
        s.push(BigInt::one());
        let mut row = vec![BigInt::one()];
        for n in 1..=order {
            row = next_binomial_row(&row);
            let mut acc = BigInt::zero();
            for k in 1..=n {
                if !weights[k].is_zero() && !s[n - k].is_zero() {
                    acc += &row[k] * &weights[k] * &s[n - k];
                }
            }
            s.push(-acc);
        }
        let mut denom = c.clone();
        let out = s
            .into_iter()
            .map(|sn| {
                let r = Rat::new(sn, denom.clone());
                denom *= c;
                r
            })
            .collect();
        Self::new(out)
    }

    /// Differential coefficients of `t ↦ f(ct)`: `c^n a_n`.
    pub fn scale_arg(&self, c: &Rat) -> EgfSeries {
        let mut p = Rat::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a * &p);
            p = p * c;
        }
        Self::new(coeffs)
    }

    /// `f(t)/t` for `f_0 = 0`. Drops one order: `r_m = f_{m+1}/(m+1)`.
    pub fn shift_down(&self) -> Result<EgfSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        if self.order() == 0 {
            // t·0 truncated at order 0 carries no information about f/t
            return Err(Error::IndexOutOfRange { index: 1, max: 0 });
        }
        Ok(Self::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(m, a)| a / Rat::from(m as i64 + 1))
                .collect(),
        ))
    }

    /// `t·f(t)`, one order higher: `r_0 = 0`, `r_n = n f_{n−1}`.
    pub fn shift_up(&self) -> EgfSeries {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rat::zero());
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(m, a)| a * Rat::from(m as i64 + 1)),
        );
        Self::new(coeffs)
    }

    /// True when every differential coefficient is an integer.
    pub fn is_idc(&self) -> bool {
        self.coeffs.iter().all(Rat::is_integer)
    }

    /// `a_0 / f(a_0 t)`, which is an IDC-series whenever `f` is.
    ///
    /// Panics if `f` is IDC and the result is not.
    pub fn idc_reciprocal_scaled(&self) -> Result<EgfSeries> {
        let a0 = self.coeffs[0].clone();
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let out = self.scale_arg(&a0).reciprocal()?.scale(&a0);
        if self.is_idc() {
            assert!(out.is_idc(), "a_0/f(a_0 t) lost integrality for {self:?}");
        }
        Ok(out)
    }
}

fn next_binomial_row(prev: &[BigInt]) -> Vec<BigInt> {
    let n = prev.len();
    let mut row = Vec::with_capacity(n + 1);
    row.push(BigInt::one());
    for k in 1..n {
        row.push(&prev[k - 1] + &prev[k]);
    }
    row.push(BigInt::one());
    row
}

/// `e^{(a−1)t} + … + e^t + 1`: coefficient `n` is `Σ_{k<a} k^n` with `0^0 = 1`.
pub fn exp_sum_series(a: u64, order: usize) -> Result<EgfSeries> {
    if a < 2 {
        return Err(Error::BaseTooSmall(a));
    }
    let mut powers: Vec<BigInt> = (0..a).map(|_| BigInt::one()).collect();
    let mut coeffs = Vec::with_capacity(order + 1);
    for _ in 0..=order {
        let d: BigInt = powers.iter().sum();
        coeffs.push(Rat::from_integer(d));
        for (k, p) in powers.iter_mut().enumerate() {
            *p *= k;
        }
    }
    Ok(EgfSeries::new(coeffs))
}
