use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::{Adams, Coeff, DivInt, Laurent};
use crate::error::{Error, Result};
use crate::MotWeight;

type QPoly = Laurent<BigRational>;

/// A reduced fraction of Laurent polynomials in `u`.
///
/// Normal form: `den` is a primitive integer polynomial with nonzero constant
/// term and positive leading coefficient, `num` and `den` are coprime over
/// the rationals, and any power of `u` lives in `num`. The normal form is
/// unique, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatWeight {
    num: QPoly,
    den: QPoly,
}

/// Reduces `num / den` to normal form.
pub fn rf_reduce(num: &MotWeight, den: &MotWeight) -> Result<RatWeight> {
    RatWeight::new(num.to_rational(), den.to_rational())
}

impl RatWeight {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let s = den.low_degree().unwrap_or(0);
        let mut den = den.shift(-s);
        let mut num = num.shift(-s);

        if den.degree() != Some(0) {
            let nlow = num.low_degree().unwrap_or(0);
            let g = poly_gcd(&num.shift(-nlow), &den);
            if g.degree().unwrap_or(0) > 0 {
                num = exact_quotient(&num.shift(-nlow), &g).shift(nlow);
                den = exact_quotient(&den, &g);
            }
        }

        let scale = primitive_scale(&den);
        Ok(RatWeight {
            num: num.scale(&scale),
            den: den.scale(&scale),
        })
    }

    pub fn from_mot(w: &MotWeight) -> Self {
        RatWeight {
            num: w.to_rational(),
            den: QPoly::one(),
        }
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    /// The denominator as an integer polynomial (always integral in normal form).
    pub fn den_integral(&self) -> MotWeight {
        MotWeight::to_integer(&self.den).expect("normalized denominator is integral")
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The underlying Laurent polynomial when the denominator is 1 and the
    /// numerator is integral.
    pub fn to_mot_weight(&self) -> Option<MotWeight> {
        if self.is_polynomial() {
            MotWeight::to_integer(&self.num)
        } else {
            None
        }
    }

    /// Degree as a rational function, `deg num - deg den`.
    pub fn degree(&self) -> Option<i64> {
        Some(self.num.degree()? - self.den.degree()?)
    }

    /// Equality by cross-multiplication.
    pub fn cross_eq(&self, other: &RatWeight) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Exact value at `u = x`.
    pub fn evaluate(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(x).ok_or(Error::SpecializationPole)?;
        if d.is_zero() {
            return Err(Error::SpecializationPole);
        }
        let n = self.num.eval(x).ok_or(Error::SpecializationPole)?;
        Ok(n / d)
    }

    /// Substitutes `u -> u^k` in numerator and denominator.
    pub fn adams_op(&self, k: u32) -> Self {
        Self::new(self.num.substitute_power(k), self.den.substitute_power(k))
            .expect("substitution keeps the denominator nonzero")
    }

    pub fn to_json(&self) -> Value {
        json!({ "num": self.num.to_json(), "den": self.den.to_json() })
    }
}

fn primitive_scale(den: &QPoly) -> BigRational {
    let mut lcm = BigInt::one();
    for (_, c) in den.terms() {
        lcm = lcm.lcm(c.denom());
    }
    let mut content = BigInt::zero();
    for (_, c) in den.terms() {
        let v = c.numer() * (&lcm / c.denom());
        content = content.gcd(&v);
    }
    let mut scale = BigRational::new(lcm, content);
    if den.leading_coeff().map(|c| c.is_negative()).unwrap_or(false) {
        scale = -scale;
    }
    scale
}

fn to_dense(p: &QPoly) -> Vec<BigRational> {
    let deg = match p.degree() {
        Some(d) => d,
        None => return Vec::new(),
    };
    debug_assert!(p.low_degree().unwrap() >= 0);
    let mut v = vec![BigRational::zero(); deg as usize + 1];
    for (e, c) in p.terms() {
        v[e as usize] = c.clone();
    }
    v
}

fn from_dense(v: Vec<BigRational>) -> QPoly {
    QPoly::from_terms(v.into_iter().enumerate().map(|(i, c)| (i as i64, c)))
}

/// Division with remainder of polynomials (no negative exponents) over the
/// rationals.
pub fn poly_divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    assert!(!b.is_zero(), "polynomial division by zero");
    let b = to_dense(b);
    let mut r = to_dense(a);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (QPoly::zero(), from_dense(r));
    }
    let lead_inv = b[db].recip();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                let t = &c * bj;
                r[i + j] -= t;
            }
        }
        q[i] = c;
    }
    r.truncate(db);
    (from_dense(q), from_dense(r))
}

fn monic(p: &QPoly) -> QPoly {
    match p.leading_coeff() {
        Some(c) => p.scale(&c.recip()),
        None => QPoly::zero(),
    }
}

/// Monic greatest common divisor of two polynomials over the rationals,
/// by Euclid's algorithm on monic remainders.
pub fn poly_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let (mut a, mut b) = (monic(a), monic(b));
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let (_, r) = poly_divrem(&a, &b);
        a = b;
        b = monic(&r);
    }
    a
}

fn exact_quotient(a: &QPoly, b: &QPoly) -> QPoly {
    let (q, r) = poly_divrem(a, b);
    debug_assert!(r.is_zero(), "divisor does not divide");
    q
}

impl fmt::Display for RatWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl From<MotWeight> for RatWeight {
    fn from(w: MotWeight) -> Self {
        RatWeight::from_mot(&w)
    }
}

impl Zero for RatWeight {
    fn zero() -> Self {
        RatWeight {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatWeight {
    fn one() -> Self {
        RatWeight {
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }
}

impl<'a> Add<&'a RatWeight> for &'a RatWeight {
    type Output = RatWeight;

    fn add(self, rhs: &'a RatWeight) -> RatWeight {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.is_polynomial() {
                return RatWeight {
                    num: &self.num + &rhs.num,
                    den: self.den.clone(),
                };
            }
            return RatWeight::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero den");
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatWeight::new(num, &self.den * &rhs.den).expect("nonzero den")
    }
}

impl Neg for &RatWeight {
    type Output = RatWeight;

    fn neg(self) -> RatWeight {
        RatWeight {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<'a> Sub<&'a RatWeight> for &'a RatWeight {
    type Output = RatWeight;

    fn sub(self, rhs: &'a RatWeight) -> RatWeight {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatWeight> for &'a RatWeight {
    type Output = RatWeight;

    fn mul(self, rhs: &'a RatWeight) -> RatWeight {
        if self.is_zero() || rhs.is_zero() {
            return RatWeight::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatWeight {
                num: &self.num * &rhs.num,
                den: QPoly::one(),
            };
        }
        RatWeight::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero den")
    }
}

impl<'a> Div<&'a RatWeight> for &'a RatWeight {
    type Output = Result<RatWeight>;

    fn div(self, rhs: &'a RatWeight) -> Result<RatWeight> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatWeight::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatWeight {
            type Output = RatWeight;
            fn $m(self, rhs: RatWeight) -> RatWeight {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatWeight {
    type Output = RatWeight;

    fn neg(self) -> RatWeight {
        -&self
    }
}

impl Coeff for RatWeight {
    fn from_bigint(n: &BigInt) -> Self {
        RatWeight {
            num: QPoly::from_bigint(n),
            den: QPoly::one(),
        }
    }

    fn unit_inverse(&self) -> Option<Self> {
        self.inverse().ok()
    }
}

impl Adams for RatWeight {
    fn adams(&self, k: u32) -> Self {
        self.adams_op(k)
    }
}

impl DivInt for RatWeight {
    fn div_int(&self, k: i64) -> Self {
        RatWeight {
            num: self.num.div_int(k),
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l_minus(k: i64) -> MotWeight {
        &MotWeight::l_pow(k) - &MotWeight::one()
    }

    #[test]
    fn factor_cancellation() {
        let r = rf_reduce(&l_minus(2), &l_minus(1)).unwrap();
        assert_eq!(r.to_mot_weight(), Some(&MotWeight::l_pow(1) + &MotWeight::one()));
    }

    #[test]
    fn zero_numerator() {
        let r = rf_reduce(&MotWeight::zero(), &l_minus(1)).unwrap();
        assert!(r.is_zero());
        assert!(r.is_polynomial());
    }

    #[test]
    fn single_cancellation() {
        let num = &MotWeight::l_pow(2) * &l_minus(1);
        let den = &l_minus(1) * &l_minus(1);
        let r = rf_reduce(&num, &den).unwrap();
        assert_eq!(r.num(), &MotWeight::l_pow(2).to_rational());
        assert_eq!(r.den(), &l_minus(1).to_rational());
    }

    #[test]
    fn zero_denominator_is_an_error() {
        let e = rf_reduce(&MotWeight::one(), &MotWeight::zero()).unwrap_err();
        assert_eq!(e.to_string(), "division by zero weight");
    }

    #[test]
    fn u_power_content_moves_to_numerator() {
        // 1 / (u^3 - u) = u^{-1} / (u^2 - 1)
        let den = MotWeight::from_terms([(3, 1.into()), (1, (-1).into())]);
        let r = rf_reduce(&MotWeight::one(), &den).unwrap();
        assert_eq!(r.num(), &MotWeight::u_pow(-1).to_rational());
        assert_eq!(r.den().low_degree(), Some(0));
    }

    #[test]
    fn denominator_is_primitive_with_positive_lead() {
        // 3 / (2 - 4u^2) = -3/2 / (2u^2 - 1)
        let den = MotWeight::from_terms([(0, 2.into()), (2, (-4).into())]);
        let r = rf_reduce(&MotWeight::from_bigint(&3.into()), &den).unwrap();
        assert_eq!(r.den(), &MotWeight::from_terms([(2, 2.into()), (0, (-1).into())]).to_rational());
        assert_eq!(r.num().coeff(0), BigRational::new((-3).into(), 2.into()));
    }

    #[test]
    fn evaluation_and_poles() {
        let l_plus_one = RatWeight::from_mot(&(&MotWeight::l_pow(1) + &MotWeight::one()));
        assert_eq!(l_plus_one.evaluate(&BigRational::one()).unwrap(), BigRational::from_integer(2.into()));
        let cube = RatWeight::from_mot(&MotWeight::u_pow(3));
        assert_eq!(cube.evaluate(&BigRational::one()).unwrap(), BigRational::one());
        let r = rf_reduce(&MotWeight::l_pow(2), &l_minus(1)).unwrap();
        assert_eq!(r.evaluate(&BigRational::one()).unwrap_err().to_string(), "specialization pole");
        let inv_u = RatWeight::from_mot(&MotWeight::u_pow(-1));
        assert_eq!(inv_u.evaluate(&BigRational::zero()).unwrap_err(), Error::SpecializationPole);
    }

    #[test]
    fn adams_on_half_power() {
        // psi_2(L^(1/2)) = psi_2(-u) = -u^2 = -L
        let w = RatWeight::from_mot(&MotWeight::l_half_pow(1));
        let expected = RatWeight::from_mot(&-MotWeight::l_pow(1));
        assert_eq!(w.adams(2), expected);
        assert_eq!(RatWeight::from_mot(&MotWeight::u_pow(1)).adams(2), RatWeight::from_mot(&MotWeight::u_pow(2)));
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        let a = (&l_minus(2) * &l_minus(3)).to_rational();
        let b = (&l_minus(4) * &l_minus(1)).to_rational();
        // gcd is (L-1)^2 (L+1)
        assert_eq!(poly_gcd(&a, &b), (&l_minus(1) * &l_minus(2)).to_rational());
    }
}
