//! Named motivic classes and the realization homomorphisms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::{poly_divrem, Adams, Coeff, Laurent};
use crate::{IntSeries, MotSeries, MotWeight, RatWeight, WeightSeries};

/// `prod_{k=1}^{n} (L^k - 1)`.
pub fn class_lfact(n: u32) -> MotWeight {
    (1..=n as i64).fold(MotWeight::one(), |acc, k| {
        &acc * &(&MotWeight::l_pow(k) - &MotWeight::one())
    })
}

/// `[GL_n] = L^(n choose 2) * prod_{k=1}^{n} (L^k - 1)`.
pub fn class_gl(n: u32) -> MotWeight {
    let n = n as i64;
    class_lfact(n as u32).shift(n * (n - 1))
}

/// The Gaussian binomial `[n choose k]_L`, the class of the Grassmannian `Gr(k, n)`.
pub fn gaussian_binomial(n: u32, k: u32) -> Result<MotWeight> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "Gaussian binomial needs 0 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    let num = class_lfact(n).to_rational();
    let den = (&class_lfact(n - k) * &class_lfact(k)).to_rational();
    let (q, r) = poly_divrem(&num, &den);
    debug_assert!(r.is_zero());
    MotWeight::to_integer(&q).ok_or_else(|| Error::NotIntegral("Gaussian binomial".into()))
}

/// `[P^N]_vir = L^(-N/2) (L^(N+1) - 1) / (L - 1)`, for any integer `N`.
pub fn proj_vir(n: i64) -> MotWeight {
    // (L^(N+1) - 1)/(L - 1) is sum_{i=0}^{N} L^i for N >= 0, 0 for N = -1 and
    // -(L^-1 + ... + L^-(|N|-1)) below that.
    let geometric = if n >= 0 {
        MotWeight::from_terms((0..=n).map(|i| (2 * i, BigInt::one())))
    } else {
        MotWeight::from_terms((1..=(-n - 1)).map(|i| (-2 * i, -BigInt::one())))
    };
    &geometric * &MotWeight::l_half_pow(-n)
}

/// `[X]_vir = L^(-d/2) [X]` for smooth `X` of dimension `d`.
pub fn vir_normalize(x: &MotWeight, d: i64) -> MotWeight {
    x * &MotWeight::l_half_pow(-d)
}

/// Compactly supported Euler characteristic: evaluation at `u = 1`.
pub fn realize_euler(x: &MotWeight) -> BigInt {
    x.sum_coeffs()
}

pub fn realize_euler_rat(x: &RatWeight) -> Result<BigRational> {
    x.evaluate(&BigRational::one())
}

pub fn realize_euler_series(s: &MotSeries) -> IntSeries {
    s.map(realize_euler)
}

/// Weight polynomial: `L^(1/2) -> q^(1/2)`, i.e. `u -> -q^(1/2)`.
pub fn realize_weight(x: &MotWeight) -> WeightPoly {
    WeightPoly::from_motivic(x)
}

pub fn realize_weight_series(s: &MotSeries) -> WeightSeries {
    s.map(realize_weight)
}

/// E-polynomial of a Tate class, `E(L^n) = (xy)^n`. Keys are the exponents of
/// `x` and `y` in half-units.
pub fn realize_e_polynomial(x: &MotWeight) -> BTreeMap<(i64, i64), BigInt> {
    x.flip_sign()
        .terms()
        .map(|(e, c)| ((e, e), c.clone()))
        .collect()
}

/// A half-integer, stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a half-integer: {s:?}"));
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            return match q.trim() {
                "2" => Ok(HalfInt::from_twice(p)),
                "1" => Ok(HalfInt::from_int(p)),
                _ => Err(bad()),
            };
        }
        if let Ok(n) = s.parse::<i64>() {
            return Ok(HalfInt::from_int(n));
        }
        let v: f64 = s.parse().map_err(|_| bad())?;
        let twice = (v * 2.0).round();
        if (twice - v * 2.0).abs() > 1e-12 || !twice.is_finite() {
            return Err(bad());
        }
        Ok(HalfInt::from_twice(twice as i64))
    }
}

/// Laurent polynomial in `q^(1/2)`; exponents count half-powers of `q`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct WeightPoly(Laurent<BigInt>);

impl WeightPoly {
    pub fn new(p: Laurent<BigInt>) -> Self {
        WeightPoly(p)
    }

    /// `q^(k/2)`.
    pub fn q_half_pow(k: i64) -> Self {
        WeightPoly(Laurent::u_pow(k))
    }

    pub fn inner(&self) -> &Laurent<BigInt> {
        &self.0
    }

    pub fn from_motivic(x: &MotWeight) -> Self {
        WeightPoly(x.flip_sign())
    }

    /// Inverse of the weight realization on Tate classes.
    pub fn to_motivic(&self) -> MotWeight {
        self.0.flip_sign()
    }

    /// Substitutes `q^(1/2) -> -q^(1/2)`.
    pub fn negate_root(&self) -> Self {
        WeightPoly(self.0.flip_sign())
    }

    /// Value at `q^(1/2) = -1`, the Euler characteristic.
    pub fn euler(&self) -> BigInt {
        self.0.flip_sign().sum_coeffs()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.0.coeff(exp)
    }

    /// JSON: array of `[exponent_in_half_powers_of_q, "coefficient"]`, descending.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.0
                .terms()
                .rev()
                .map(|(e, c)| json!([e, c.to_string()]))
                .collect(),
        )
    }
}

impl fmt::Display for WeightPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.0.terms().rev().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write!(f, "{}*q^({e}/2)", c.abs())?;
        }
        Ok(())
    }
}

impl Zero for WeightPoly {
    fn zero() -> Self {
        WeightPoly(Laurent::zero())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for WeightPoly {
    fn one() -> Self {
        WeightPoly(Laurent::one())
    }
}

impl Add for WeightPoly {
    type Output = WeightPoly;

    fn add(self, rhs: WeightPoly) -> WeightPoly {
        WeightPoly(&self.0 + &rhs.0)
    }
}

impl Sub for WeightPoly {
    type Output = WeightPoly;

    fn sub(self, rhs: WeightPoly) -> WeightPoly {
        WeightPoly(&self.0 - &rhs.0)
    }
}

impl Mul for WeightPoly {
    type Output = WeightPoly;

    fn mul(self, rhs: WeightPoly) -> WeightPoly {
        WeightPoly(&self.0 * &rhs.0)
    }
}

impl Neg for WeightPoly {
    type Output = WeightPoly;

    fn neg(self) -> WeightPoly {
        WeightPoly(-self.0)
    }
}

impl Coeff for WeightPoly {
    fn from_bigint(n: &BigInt) -> Self {
        WeightPoly(Laurent::constant(n.clone()))
    }

    fn unit_inverse(&self) -> Option<Self> {
        self.0.unit_inverse().map(WeightPoly)
    }
}

impl Adams for WeightPoly {
    fn adams(&self, k: u32) -> Self {
        WeightPoly::from_motivic(&self.to_motivic().adams(k))
    }
}

/// Betti numbers `b_0, ..., b_6` of a smooth projective threefold.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BettiVector([u64; 7]);

impl BettiVector {
    pub fn new(b: [u64; 7]) -> Self {
        BettiVector(b)
    }

    pub fn get(&self, d: usize) -> u64 {
        self.0[d]
    }

    pub fn as_array(&self) -> [u64; 7] {
        self.0
    }

    /// Betti numbers of `P^3`.
    pub fn p3() -> Self {
        BettiVector([1, 0, 1, 0, 1, 0, 1])
    }

    /// `sum (-1)^d b_d`.
    pub fn euler(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// Weight polynomial of the threefold, `sum_d b_d q^(d/2)`.
    pub fn weight_class(&self) -> WeightPoly {
        WeightPoly(Laurent::from_terms(
            self.0
                .iter()
                .enumerate()
                .map(|(d, &b)| (d as i64, BigInt::from(b))),
        ))
    }

    /// Betti vector of a Tate class `sum b_(2i) L^i` with `0 <= i <= 3`.
    pub fn from_tate(x: &MotWeight) -> Result<Self> {
        let mut b = [0u64; 7];
        for (e, c) in x.terms() {
            if !(0..=6).contains(&e) || e % 2 != 0 || c.is_negative() {
                return Err(Error::InvalidArgument(format!(
                    "{x} is not the class of a Tate threefold"
                )));
            }
            b[e as usize] = u64::try_from(c).map_err(|_| Error::InvalidArgument("Betti number too large".into()))?;
        }
        Ok(BettiVector(b))
    }
}

impl FromStr for BettiVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 7 {
            return Err(Error::Parse(format!("expected 7 Betti numbers, got {}", parts.len())));
        }
        let mut b = [0u64; 7];
        for (slot, p) in b.iter_mut().zip(parts) {
            *slot = p
                .parse()
                .map_err(|_| Error::Parse(format!("bad Betti number {p:?}")))?;
        }
        Ok(BettiVector(b))
    }
}
