//! Truncated power series in `t` over a [`Coeff`] ring.

mod factor;

pub use factor::{factor_product, Factor};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::{Adams, Coeff, DivInt};

/// `sum_{n=0}^{N} a_n t^n`, exact modulo `t^(N+1)`.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncSeries<C> {
    /// Builds a series of the given order, padding or truncating `coeffs`.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        TruncSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    pub fn constant(c: C, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// `c t^n`.
    pub fn monomial(n: usize, c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        if n <= order {
            s.coeffs[n] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> TruncSeries<D> {
        TruncSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn try_map<D: Coeff>(&self, f: impl Fn(&C) -> Result<D>) -> Result<TruncSeries<D>> {
        Ok(TruncSeries {
            coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    /// The lowest degree at which two series differ, up to the smaller order.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }

    /// Cauchy product; the result has the smaller of the two orders.
    pub fn mul_series(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![C::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                let prev = std::mem::replace(&mut out[i + j], C::zero());
                out[i + j] = prev + a.clone() * b.clone();
            }
        }
        TruncSeries { coeffs: out }
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let b0 = self.coeffs[0].unit_inverse().ok_or(Error::NonUnitConstant)?;
        let n = self.order();
        let mut out: Vec<C> = Vec::with_capacity(n + 1);
        out.push(b0.clone());
        for k in 1..=n {
            let mut acc = C::zero();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc = acc + a.clone() * out[k - j].clone();
                }
            }
            out.push(-(b0.clone() * acc));
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// `self^e` for a series with constant term 1.
    pub fn pow_int(&self, e: i64) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantNotOne);
        }
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one(self.order());
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_series(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul_series(&sq);
            }
        }
        Ok(acc)
    }

    /// Substitutes `t -> c t^k`, keeping the order.
    pub fn rescale(&self, k: usize, c: &C) -> Self {
        assert!(k >= 1, "rescaling exponent must be positive");
        let order = self.order();
        let mut out = vec![C::zero(); order + 1];
        let mut power = C::one();
        for (n, a) in self.coeffs.iter().enumerate() {
            if n * k > order {
                break;
            }
            out[n * k] = a.clone() * power.clone();
            power = power * c.clone();
        }
        TruncSeries { coeffs: out }
    }

    /// Applies `f` to every coefficient of `a(t)` and substitutes `t -> t^k`.
    fn substitute_power_with(&self, k: usize, f: impl Fn(&C) -> C) -> Self {
        let order = self.order();
        let mut out = vec![C::zero(); order + 1];
        for (n, a) in self.coeffs.iter().enumerate() {
            if n * k > order {
                break;
            }
            out[n * k] = f(a);
        }
        TruncSeries { coeffs: out }
    }

    /// Serializes with a per-coefficient encoder.
    pub fn to_json_with(&self, f: impl Fn(&C) -> Value) -> Value {
        json!({
            "variable": "t",
            "order": self.order(),
            "coeffs": self.coeffs.iter().map(f).collect::<Vec<_>>(),
        })
    }
}

impl<C: Adams> TruncSeries<C> {
    /// `psi_k(a)(t^k)`: Adams operation on coefficients together with
    /// `t -> t^k`, the plethystic action on the series.
    pub fn adams(&self, k: usize) -> Self {
        self.substitute_power_with(k, |a| a.adams(k as u32))
    }
}

impl<C: DivInt> TruncSeries<C> {
    /// The ordinary exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonAugmented);
        }
        let n = self.order();
        let mut f: Vec<C> = Vec::with_capacity(n + 1);
        f.push(C::one());
        // n f_n = sum_{k=1}^{n} k a_k f_{n-k}
        for m in 1..=n {
            let mut acc = C::zero();
            for k in 1..=m {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc = acc + C::from_i64(k as i64) * a.clone() * f[m - k].clone();
                }
            }
            f.push(acc.div_int(m as i64));
        }
        Ok(TruncSeries { coeffs: f })
    }

    /// The ordinary logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantNotOne);
        }
        let n = self.order();
        let mut l: Vec<C> = vec![C::zero(); n + 1];
        // n l_n = n f_n - sum_{k=1}^{n-1} k l_k f_{n-k}
        for m in 1..=n {
            let mut acc = C::from_i64(m as i64) * self.coeffs[m].clone();
            for k in 1..m {
                let f = &self.coeffs[m - k];
                if !f.is_zero() && !l[k].is_zero() {
                    acc = acc - C::from_i64(k as i64) * l[k].clone() * f.clone();
                }
            }
            l[m] = acc.div_int(m as i64);
        }
        Ok(TruncSeries { coeffs: l })
    }
}

impl TruncSeries<BigInt> {
    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| i64::try_from(c).ok()).collect()
    }

    pub fn from_i64(v: &[i64]) -> Self {
        TruncSeries {
            coeffs: v.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "t^{n}: {c}")?;
        }
        Ok(())
    }
}

impl<'a, C: Coeff> Add<&'a TruncSeries<C>> for &'a TruncSeries<C> {
    type Output = TruncSeries<C>;

    fn add(self, rhs: &'a TruncSeries<C>) -> TruncSeries<C> {
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<'a, C: Coeff> Sub<&'a TruncSeries<C>> for &'a TruncSeries<C> {
    type Output = TruncSeries<C>;

    fn sub(self, rhs: &'a TruncSeries<C>) -> TruncSeries<C> {
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<'a, C: Coeff> Mul<&'a TruncSeries<C>> for &'a TruncSeries<C> {
    type Output = TruncSeries<C>;

    fn mul(self, rhs: &'a TruncSeries<C>) -> TruncSeries<C> {
        self.mul_series(rhs)
    }
}

impl<C: Coeff> Neg for &TruncSeries<C> {
    type Output = TruncSeries<C>;

    fn neg(self) -> TruncSeries<C> {
        self.map(|a| -a.clone())
    }
}
