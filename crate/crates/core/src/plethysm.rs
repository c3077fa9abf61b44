//! The power structure on coefficient rings, realized on truncated series.
//!
//! `Exp(sum A_n t^n) = prod (1 - t^n)^(-A_n)`, where a power of `(1 - t)` by a
//! class follows the sign rule `(1 - t)^(-u^i) = (1 - u^i t)^(-1)`. Geometric
//! symmetric products are not constructed; the class-level image of the
//! power structure is all that is computed.
//!
//! Over [`MotWeight`] there are two routes: the monomial product (default) and
//! `exp(sum_k psi_k(A)(t^k) / k)` through the rationals. They must agree and
//! the tests hold them to it. Over [`RatWeight`] only the second route exists.

use std::ops::Deref;


use crate::classes::WeightPoly;
use crate::error::{Error, Result};
use crate::ring::{Adams, Coeff, DivInt};
use crate::series::{factor_product, Factor, TruncSeries};
use crate::{MotSeries, MotWeight, QSeries, RatWeight};

/// A series with zero constant term: the domain of `Exp`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpArgument<C>(TruncSeries<C>);

impl<C: Coeff> ExpArgument<C> {
    pub fn new(series: TruncSeries<C>) -> Result<Self> {
        if !series.coeff(0).is_zero() {
            return Err(Error::NonAugmented);
        }
        Ok(ExpArgument(series))
    }

    pub fn into_series(self) -> TruncSeries<C> {
        self.0
    }
}

impl<C> Deref for ExpArgument<C> {
    type Target = TruncSeries<C>;

    fn deref(&self) -> &TruncSeries<C> {
        &self.0
    }
}

/// Coefficient rings with a power structure.
pub trait Plethystic: Coeff {
    fn exp_pleth(a: &ExpArgument<Self>) -> Result<TruncSeries<Self>>;
    fn log_pleth(f: &TruncSeries<Self>) -> Result<ExpArgument<Self>>;
}

/// `Exp` of a series; errors unless the constant term is zero.
pub fn exp_pleth<C: Plethystic>(a: &TruncSeries<C>) -> Result<TruncSeries<C>> {
    C::exp_pleth(&ExpArgument::new(a.clone())?)
}

/// Inverse of [`exp_pleth`]; errors unless the constant term is 1.
pub fn log_pleth<C: Plethystic>(f: &TruncSeries<C>) -> Result<ExpArgument<C>> {
    C::log_pleth(f)
}

/// `f^x := Exp(x Log f)`.
pub fn pow_class<C: Plethystic>(f: &TruncSeries<C>, x: &C) -> Result<TruncSeries<C>> {
    let log = log_pleth(f)?;
    C::exp_pleth(&ExpArgument(log.scale(x)))
}

/// Monomial-product route over Laurent polynomials with integer coefficients:
/// each term `c u^i t^n` contributes the factor `(1 - u^i t^n)^(-c)`.
pub fn exp_monomial(a: &ExpArgument<MotWeight>) -> MotSeries {
    let order = a.order();
    let factors = (1..=order).flat_map(|n| {
        a.coeff(n)
            .terms()
            .map(move |(i, c)| Factor::new(n, MotWeight::u_pow(i), -c.clone()))
            .collect::<Vec<_>>()
    });
    factor_product(factors, order)
}

/// `exp(sum_{k>=1} psi_k(a)(t^k) / k)` over a ring containing the rationals.
pub fn exp_adams<C: Adams + DivInt>(a: &ExpArgument<C>) -> TruncSeries<C> {
    let order = a.order();
    let mut sum = TruncSeries::<C>::zero(order);
    for k in 1..=order {
        sum = &sum + &a.adams(k).map(|c| c.div_int(k as i64));
    }
    sum.exp().expect("argument has zero constant term")
}

/// `Log f = sum_k (mu(k)/k) psi_k(log f)(t^k)`.
pub fn log_adams<C: Adams + DivInt>(f: &TruncSeries<C>) -> Result<ExpArgument<C>> {
    let log = f.log()?;
    let order = f.order();
    let mut sum = TruncSeries::<C>::zero(order);
    for k in 1..=order {
        let mu = mobius(k as u64);
        if mu == 0 {
            continue;
        }
        let term = log.adams(k).map(|c| c.div_int(k as i64));
        sum = if mu > 0 { &sum + &term } else { &sum - &term };
    }
    ExpArgument::new(sum)
}

fn to_rational_series(s: &MotSeries) -> QSeries {
    s.map(|c| c.to_rational())
}

fn to_integer_series(s: &QSeries) -> Result<MotSeries> {
    s.try_map(|c| {
        MotWeight::to_integer(c)
            .ok_or_else(|| Error::NotIntegral(format!("coefficient {c} is not integral")))
    })
}

/// `Exp` over [`MotWeight`] computed through the rationals; an oracle for the
/// monomial route.
pub fn exp_via_adams(a: &ExpArgument<MotWeight>) -> Result<MotSeries> {
    let q = ExpArgument(to_rational_series(a));
    to_integer_series(&exp_adams(&q))
}

impl Plethystic for MotWeight {
    fn exp_pleth(a: &ExpArgument<Self>) -> Result<MotSeries> {
        Ok(exp_monomial(a))
    }

    fn log_pleth(f: &MotSeries) -> Result<ExpArgument<Self>> {
        let q = log_adams(&to_rational_series(f))?;
        ExpArgument::new(to_integer_series(&q)?)
    }
}

impl Plethystic for RatWeight {
    fn exp_pleth(a: &ExpArgument<Self>) -> Result<TruncSeries<Self>> {
        Ok(exp_adams(a))
    }

    fn log_pleth(f: &TruncSeries<Self>) -> Result<ExpArgument<Self>> {
        log_adams(f)
    }
}

// The weight realization respects power structures, so Exp on weight
// polynomials is conjugate to Exp on MotWeight.
impl Plethystic for WeightPoly {
    fn exp_pleth(a: &ExpArgument<Self>) -> Result<TruncSeries<Self>> {
        let m = ExpArgument(a.map(WeightPoly::to_motivic));
        Ok(exp_monomial(&m).map(WeightPoly::from_motivic))
    }

    fn log_pleth(f: &TruncSeries<Self>) -> Result<ExpArgument<Self>> {
        let l = MotWeight::log_pleth(&f.map(WeightPoly::to_motivic))?;
        Ok(ExpArgument(l.map(WeightPoly::from_motivic)))
    }
}

/// The Möbius function, by trial division.
pub fn mobius(mut n: u64) -> i64 {
    assert!(n >= 1);
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rf_reduce;
    use num_traits::{One, Zero};

    fn l() -> MotWeight {
        MotWeight::l_pow(1)
    }

    fn t_times(c: MotWeight, order: usize) -> MotSeries {
        MotSeries::monomial(1, c, order)
    }

    #[test]
    fn mobius_values() {
        let got: Vec<i64> = (1..=12).map(mobius).collect();
        assert_eq!(got, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn exp_of_t_is_geometric() {
        let e = exp_pleth(&t_times(MotWeight::one(), 6)).unwrap();
        assert_eq!(e, MotSeries::new(vec![MotWeight::one(); 7], 6));
    }

    #[test]
    fn exp_of_projective_line_gives_symmetric_square() {
        let p1 = &MotWeight::one() + &l();
        let e = exp_pleth(&t_times(p1, 4)).unwrap();
        let p2 = MotWeight::from_l_coeffs(&[1, 1, 1]);
        assert_eq!(e.coeff(2), &p2);
        assert_eq!(exp_via_adams(&ExpArgument::new(t_times(&MotWeight::one() + &l(), 4)).unwrap()).unwrap(), e);
    }

    #[test]
    fn exp_rejects_constant_term() {
        let s = MotSeries::one(3);
        assert_eq!(exp_pleth(&s).unwrap_err().to_string(), "Exp of non-augmented series");
    }

    #[test]
    fn exp_linear_term_over_rational_weights() {
        let c1 = rf_reduce(&MotWeight::l_pow(2), &(&l() - &MotWeight::one())).unwrap();
        let arg = TruncSeries::new(vec![RatWeight::zero(), c1.clone(), c1.clone(), c1.clone()], 3);
        let e = exp_pleth(&arg).unwrap();
        assert_eq!(e.coeff(1), &c1);
    }

    #[test]
    fn log_of_geometric_is_t() {
        let f = MotSeries::new(vec![MotWeight::one(); 6], 5);
        assert_eq!(log_pleth(&f).unwrap().into_series(), t_times(MotWeight::one(), 5));
        assert_eq!(log_pleth(&MotSeries::zero(3)).unwrap_err(), Error::ConstantNotOne);
    }

    #[test]
    fn power_by_affine_line() {
        // (1-t)^{-L} = sum L^n t^n
        let f = MotSeries::new(vec![MotWeight::one(); 6], 5).inverse().unwrap();
        let g = pow_class(&f, &-l()).unwrap();
        for n in 0..=5 {
            assert_eq!(g.coeff(n), &MotWeight::l_pow(n as i64));
        }
        assert_eq!(pow_class(&f, &MotWeight::zero()).unwrap(), MotSeries::one(5));
        let f_inv = MotSeries::new(vec![MotWeight::one(); 6], 5);
        let h = pow_class(&f_inv, &(&MotWeight::one() + &l())).unwrap();
        assert_eq!(h.coeff(2), &MotWeight::from_l_coeffs(&[1, 1, 1]));
    }

    #[test]
    fn sign_rule_for_half_powers() {
        // Exp(L^(1/2) t) = Exp(-u t) = 1 - u t = 1 + L^(1/2) t
        let e = exp_pleth(&t_times(MotWeight::l_half_pow(1), 4)).unwrap();
        let expected = MotSeries::new(vec![MotWeight::one(), MotWeight::l_half_pow(1)], 4);
        assert_eq!(e, expected);
        assert!(e.coeff(2).is_zero());
        assert!(MotWeight::one().is_one());
    }
}
