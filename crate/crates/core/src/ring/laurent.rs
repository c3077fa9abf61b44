use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::{Adams, Coeff, DivInt};
use crate::error::{Error, Result};

/// Scalars a [`Laurent`] polynomial may carry.
pub trait Scalar: Coeff + Adams + Signed + fmt::Display {}

impl Scalar for BigInt {}
impl Scalar for BigRational {}

/// A Laurent polynomial in `u = -L^(1/2)`.
///
/// Exponents count half-powers of `L`, so `L` itself is `u^2` and
/// `L^(1/2) = -u`. No stored coefficient is zero; the zero polynomial has an
/// empty term map.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Laurent<C> {
    terms: BTreeMap<i64, C>,
}

impl<C: Scalar> Laurent<C> {
    pub fn monomial(exp: i64, coeff: C) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Laurent { terms }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(0, c)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(iter: I) -> Self {
        let mut terms: BTreeMap<i64, C> = BTreeMap::new();
        for (e, c) in iter {
            accumulate(&mut terms, e, c);
        }
        terms.retain(|_, c| !c.is_zero());
        Laurent { terms }
    }

    /// `u^k`.
    pub fn u_pow(k: i64) -> Self {
        Self::monomial(k, C::one())
    }

    /// `L^k`.
    pub fn l_pow(k: i64) -> Self {
        Self::u_pow(2 * k)
    }

    /// `L^(p/2) = (-u)^p`.
    pub fn l_half_pow(p: i64) -> Self {
        let c = if p.rem_euclid(2) == 0 { C::one() } else { -C::one() };
        Self::monomial(p, c)
    }

    /// A polynomial in `L` given by coefficients of `L^0, L^1, ...`.
    pub fn from_l_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (2 * i as i64, C::from_i64(c))),
        )
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &C)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> C {
        self.terms.get(&exp).cloned().unwrap_or_else(C::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Highest exponent; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest exponent; `None` for zero.
    pub fn low_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.values().next_back()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c.clone() * s.clone()))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Substitutes `u -> -u`.
    pub fn flip_sign(&self) -> Self {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, if e.rem_euclid(2) == 0 { c.clone() } else { -c.clone() }))
                .collect(),
        }
    }

    /// Substitutes `u -> u^k` for `k >= 1`.
    pub fn substitute_power(&self, k: u32) -> Self {
        assert!(k >= 1, "Adams operations are indexed by positive integers");
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e * k as i64, c.clone()))
                .collect(),
        }
    }

    /// Value at `u = 1`, the sum of coefficients.
    pub fn sum_coeffs(&self) -> C {
        self.terms.values().fold(C::zero(), |acc, c| acc + c.clone())
    }

    /// Value at `u = x`; `None` when `x` is not invertible and negative powers
    /// are present.
    pub fn eval(&self, x: &C) -> Option<C> {
        let mut acc = C::zero();
        for (e, c) in self.terms() {
            acc = acc + c.clone() * pow_signed(x, e)?;
        }
        Some(acc)
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Laurent<D> {
        Laurent::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Integer scalars as rationals.
    pub fn to_rational(&self) -> Laurent<BigRational>
    where
        C: Into<BigRational>,
    {
        self.map_coeffs(|c| c.clone().into())
    }

    /// JSON form: terms `[exponent_in_half_powers_of_L, "coefficient"]` in
    /// descending order, in the `u` convention.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| json!([e, c.to_string()]))
            .collect();
        json!({ "convention": "u=-L^(1/2)", "terms": terms })
    }

    /// Canonical text in the `L` convention: `c*L^(p/2)` terms, descending.
    pub fn to_l_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let c = if e.rem_euclid(2) == 0 { c.clone() } else { -c.clone() };
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&format!("{abs}*L^({e}/2)"));
        }
        out
    }
}

impl Laurent<BigInt> {
    /// Parses the JSON form written by [`Laurent::to_json`].
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse("malformed weight JSON".into());
        if v.get("convention").and_then(Value::as_str) != Some("u=-L^(1/2)") {
            return Err(bad());
        }
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(bad)?;
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            let pair = t.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
            let e = pair[0].as_i64().ok_or_else(bad)?;
            let c: BigInt = pair[1].as_str().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            out.push((e, c));
        }
        Ok(Self::from_terms(out))
    }

    /// Coefficientwise division; `None` unless every quotient is integral.
    pub fn to_integer(q: &Laurent<BigRational>) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in q.terms() {
            if !c.is_integer() {
                return None;
            }
            terms.insert(e, c.to_integer());
        }
        Some(Laurent { terms })
    }
}

fn pow_signed<C: Scalar>(x: &C, e: i64) -> Option<C> {
    let base = if e < 0 { x.unit_inverse()? } else { x.clone() };
    let mut acc = C::one();
    for _ in 0..e.unsigned_abs() {
        acc = acc * base.clone();
    }
    Some(acc)
}

fn accumulate<C: Scalar>(terms: &mut BTreeMap<i64, C>, e: i64, c: C) {
    if c.is_zero() {
        return;
    }
    let slot = terms.entry(e).or_insert_with(C::zero);
    let prev = std::mem::replace(slot, C::zero());
    *slot = prev + c;
}

impl<C: Scalar> fmt::Display for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_l_string())
    }
}

impl<C: Scalar> Zero for Laurent<C> {
    fn zero() -> Self {
        Laurent { terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Scalar> One for Laurent<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<'a, C: Scalar> Add<&'a Laurent<C>> for &'a Laurent<C> {
    type Output = Laurent<C>;

    fn add(self, rhs: &'a Laurent<C>) -> Laurent<C> {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            accumulate(&mut terms, *e, c.clone());
        }
        terms.retain(|_, c| !c.is_zero());
        Laurent { terms }
    }
}

impl<'a, C: Scalar> Sub<&'a Laurent<C>> for &'a Laurent<C> {
    type Output = Laurent<C>;

    fn sub(self, rhs: &'a Laurent<C>) -> Laurent<C> {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            accumulate(&mut terms, *e, -c.clone());
        }
        terms.retain(|_, c| !c.is_zero());
        Laurent { terms }
    }
}

impl<'a, C: Scalar> Mul<&'a Laurent<C>> for &'a Laurent<C> {
    type Output = Laurent<C>;

    fn mul(self, rhs: &'a Laurent<C>) -> Laurent<C> {
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                accumulate(&mut terms, e1 + e2, c1.clone() * c2.clone());
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Laurent { terms }
    }
}

impl<C: Scalar> Neg for &Laurent<C> {
    type Output = Laurent<C>;

    fn neg(self) -> Laurent<C> {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Scalar> $tr for Laurent<C> {
            type Output = Laurent<C>;
            fn $m(self, rhs: Laurent<C>) -> Laurent<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Scalar> Neg for Laurent<C> {
    type Output = Laurent<C>;

    fn neg(self) -> Laurent<C> {
        -&self
    }
}

impl<C: Scalar> Coeff for Laurent<C> {
    fn from_bigint(n: &BigInt) -> Self {
        Self::constant(C::from_bigint(n))
    }

    fn unit_inverse(&self) -> Option<Self> {
        if !self.is_monomial() {
            return None;
        }
        let (e, c) = self.terms().next()?;
        Some(Self::monomial(-e, c.unit_inverse()?))
    }
}

impl<C: Scalar> Adams for Laurent<C> {
    fn adams(&self, k: u32) -> Self {
        self.substitute_power(k)
    }
}

impl<C: Scalar + DivInt> DivInt for Laurent<C> {
    fn div_int(&self, k: i64) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, c.div_int(k))).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::MotWeight;

    fn l() -> MotWeight {
        MotWeight::l_pow(1)
    }

    #[test]
    fn difference_of_squares() {
        let a = MotWeight::from_terms([(2, 1.into()), (0, (-1).into())]);
        let b = MotWeight::from_terms([(2, 1.into()), (0, 1.into())]);
        let expected = MotWeight::from_terms([(4, 1.into()), (0, (-1).into())]);
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn adding_zero_is_identity() {
        assert_eq!(&l() + &MotWeight::zero(), MotWeight::u_pow(2));
    }

    #[test]
    fn product_of_gl_factors() {
        let a = &l() - &MotWeight::one();
        let b = &MotWeight::l_pow(2) - &MotWeight::one();
        let expected = MotWeight::from_terms([
            (6, 1.into()),
            (4, (-1).into()),
            (2, (-1).into()),
            (0, 1.into()),
        ]);
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let a = &l() - &l();
        assert!(a.is_zero());
        assert_eq!(a.num_terms(), 0);
        assert_eq!(a.degree(), None);
    }

    #[test]
    fn half_powers_carry_signs() {
        // L^(1/2) = -u, L^(3/2) = -u^3, L = u^2
        assert_eq!(MotWeight::l_half_pow(1), MotWeight::monomial(1, (-1).into()));
        assert_eq!(MotWeight::l_half_pow(3), MotWeight::monomial(3, (-1).into()));
        assert_eq!(MotWeight::l_half_pow(2), MotWeight::u_pow(2));
        assert_eq!(MotWeight::l_half_pow(-1), MotWeight::monomial(-1, (-1).into()));
    }

    #[test]
    fn text_form_uses_l_convention() {
        let x = &(&MotWeight::l_pow(3) + &MotWeight::l_pow(2)) + &MotWeight::l_pow(1);
        assert_eq!(x.to_l_string(), "1*L^(6/2) + 1*L^(4/2) + 1*L^(2/2)");
        assert_eq!(MotWeight::l_half_pow(3).to_l_string(), "1*L^(3/2)");
        assert_eq!(MotWeight::u_pow(3).to_l_string(), "-1*L^(3/2)");
        let y = &MotWeight::one() - &MotWeight::l_half_pow(-1);
        assert_eq!(y.to_l_string(), "1*L^(0/2) - 1*L^(-1/2)");
        assert_eq!(MotWeight::zero().to_l_string(), "0");
    }

    #[test]
    fn json_roundtrip() {
        let x = MotWeight::from_terms([(3, (-7).into()), (-2, 12.into())]);
        let v = x.to_json();
        assert_eq!(v["terms"][0], json!([3, "-7"]));
        assert_eq!(MotWeight::from_json(&v).unwrap(), x);
    }

    #[test]
    fn eval_and_units() {
        let x = MotWeight::from_terms([(-1, 2.into()), (2, 3.into())]);
        assert_eq!(x.eval(&BigInt::from(1)), Some(BigInt::from(5)));
        assert_eq!(x.eval(&BigInt::from(-1)), Some(BigInt::from(1)));
        assert_eq!(x.eval(&BigInt::from(2)), None);
        assert_eq!(
            MotWeight::monomial(3, (-1).into()).unit_inverse(),
            Some(MotWeight::monomial(-3, (-1).into()))
        );
        assert_eq!(x.unit_inverse(), None);
    }
}
