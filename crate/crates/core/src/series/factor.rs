use num_bigint::BigInt;
use num_traits::Zero;

use super::TruncSeries;
use crate::ring::{binomial_signed, Coeff};

/// One factor `(1 - c t^m)^e` of an infinite product.
#[derive(Clone, Debug, PartialEq)]
pub struct Factor<C> {
    pub m: usize,
    pub c: C,
    pub e: BigInt,
}

impl<C> Factor<C> {
    pub fn new(m: usize, c: C, e: impl Into<BigInt>) -> Self {
        assert!(m >= 1, "factor t-exponent must be positive");
        Factor { m, c, e: e.into() }
    }
}

/// Expands `prod (1 - c t^m)^e` modulo `t^(order+1)`.
///
/// The stream must yield factors in nondecreasing `m`; consumption stops at
/// the first factor with `m > order`, so infinite streams are fine.
pub fn factor_product<C, I>(factors: I, order: usize) -> TruncSeries<C>
where
    C: Coeff,
    I: IntoIterator<Item = Factor<C>>,
{
    let mut acc = TruncSeries::<C>::one(order).into_coeffs();
    for f in factors {
        if f.m > order {
            break;
        }
        if f.e.is_zero() || f.c.is_zero() {
            continue;
        }
        // (1 - c x)^e = sum_r binom(e, r) (-c)^r x^r
        let rmax = order / f.m;
        let mut expansion: Vec<C> = Vec::with_capacity(rmax + 1);
        let neg_c = -f.c.clone();
        let mut power = C::one();
        for r in 0..=rmax {
            let b = binomial_signed(&f.e, r);
            if b.is_zero() {
                break;
            }
            expansion.push(C::from_bigint(&b) * power.clone());
            power = power * neg_c.clone();
        }
        for n in (0..=order).rev() {
            let mut v = acc[n].clone();
            for (r, coef) in expansion.iter().enumerate().skip(1) {
                let shift = r * f.m;
                if shift > n {
                    break;
                }
                let src = &acc[n - shift];
                if !src.is_zero() {
                    v = v + src.clone() * coef.clone();
                }
            }
            acc[n] = v;
        }
    }
    TruncSeries::new(acc, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{IntSeries, MotWeight};
    use num_traits::One;

    #[test]
    fn euler_product_counts_partitions() {
        let p = factor_product((1..).map(|m| Factor::new(m, BigInt::from(1), -1)), 10);
        assert_eq!(p.to_i64_vec().unwrap(), vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn macmahon_product() {
        let m = factor_product((1..).map(|m| Factor::new(m, BigInt::from(1), -(m as i64))), 6);
        assert_eq!(m.to_i64_vec().unwrap(), vec![1, 1, 3, 6, 13, 24, 48]);
    }

    #[test]
    fn positive_exponent_is_a_polynomial() {
        let p = factor_product([Factor::new(1, BigInt::from(1), 3)], 5);
        assert_eq!(p, IntSeries::from_i64(&[1, -3, 3, -1, 0, 0]));
    }

    #[test]
    fn non_monomial_coefficient() {
        // (1 - (1+L) t)^{-1}: coefficient of t^2 is (1+L)^2
        let c = &MotWeight::one() + &MotWeight::l_pow(1);
        let p = factor_product([Factor::new(1, c.clone(), -1)], 3);
        assert_eq!(p.coeff(2), &(&c * &c));
    }
}
