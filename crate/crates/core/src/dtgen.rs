//! Generating functions of (virtual motives of) Hilbert schemes of points.
//!
//! Each series is computed by at least one route; wherever two routes are
//! known to agree both are available so the agreement can be checked.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::classes::{
    class_gl, class_lfact, gaussian_binomial, proj_vir, vir_normalize, BettiVector, HalfInt,
    WeightPoly,
};
use crate::error::{Error, Result};
use crate::plethysm::{exp_pleth, pow_class};
use crate::ring::{rf_reduce, TruncLaurent};
use crate::series::{factor_product, Factor, TruncSeries};
use crate::{IntSeries, LaurentTailSeries, MotSeries, MotWeight, RatSeries, RatWeight, WeightSeries};

/// How a partition function was computed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Route {
    Product,
    Recursion,
    ExpFormula,
    PowerFormula,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Product => "product",
            Route::Recursion => "recursion",
            Route::ExpFormula => "exp_formula",
            Route::PowerFormula => "power_formula",
        }
    }
}

/// A partition function `sum [Hilb^n]_vir t^n` tagged with its route.
#[derive(Clone, PartialEq, Debug)]
pub struct ZSeries {
    pub series: MotSeries,
    pub route: Route,
}

impl ZSeries {
    fn new(series: MotSeries, route: Route) -> Self {
        debug_assert!(series.coeff(0).is_one());
        ZSeries { series, route }
    }
}

/// `L^2 / (L - 1)`, the weight of a commuting pair of 1x1 matrices modulo `GL_1`.
fn ctilde_one() -> RatWeight {
    rf_reduce(&MotWeight::l_pow(2), &(&MotWeight::l_pow(1) - &MotWeight::one()))
        .expect("nonzero denominator")
}

/// The Feit–Fine series `C(t) = Exp(L^2/(L-1) * t/(1-t))`, whose `t^n`
/// coefficient is `[C_n] / [GL_n]` for the commuting variety `C_n`.
pub fn feit_fine_c(order: usize) -> RatSeries {
    let c1 = ctilde_one();
    let mut coeffs = vec![RatWeight::zero()];
    coeffs.extend(std::iter::repeat_n(c1, order));
    exp_pleth(&TruncSeries::new(coeffs, order)).expect("augmented argument")
}

/// `[C_n] = c_n [GL_n]`, required to be a polynomial.
pub fn commuting_variety_class(c: &RatSeries, n: usize) -> Result<MotWeight> {
    let gl = RatWeight::from_mot(&class_gl(n as u32));
    (c.coeff(n) * &gl)
        .to_mot_weight()
        .ok_or(Error::PolynomialityViolated(n))
}

/// `prod_{m>=1} prod_{j>=0} (1 - L^(1-j) t^m)^(-1)` with every coefficient
/// expanded in descending powers of `L`, exact at exponents `>= floor`
/// (half-powers of `L`).
///
/// A factor with index `j` first contributes at `L^(1-j)`, and the rest of a
/// degree-`n` product is at most `L^n`, so `j` only needs to run while
/// `2 - 2j + 2n >= floor`.
pub fn feit_fine_double_product(order: usize, floor: i64) -> LaurentTailSeries {
    let n = order as i64;
    let j_max = (2 + 2 * n - floor).max(0) / 2;
    let working_floor = floor - 2 * n;
    let mut acc = LaurentTailSeries::one(order);
    for m in 1..=order {
        let block = factor_product(
            (0..=j_max).map(|j| {
                Factor::new(m, TruncLaurent::monomial(2 - 2 * j, One::one()), -1)
            }),
            order,
        );
        acc = acc
            .mul_series(&block)
            .map(|c| c.clone().truncate(working_floor));
    }
    acc.map(|c| {
        debug_assert!(c.floor().is_none_or(|f| f <= floor));
        c.clone().truncate(floor)
    })
}

/// `prod_{m>=1} prod_{k=0}^{m-1} (1 - L^(k+2-m/2) t^m)^(-1)`.
pub fn z_c3_product(order: usize) -> ZSeries {
    let factors = (1..=order).flat_map(|m| {
        (0..m).map(move |k| {
            let (m, k) = (m as i64, k as i64);
            Factor::new(m as usize, MotWeight::l_half_pow(2 * k + 4 - m), -1)
        })
    });
    ZSeries::new(factor_product(factors, order), Route::Product)
}

/// The stratification recursion
///
/// `w_n = L^(n(n+1)) [C_n] - sum_{k<n} [n choose k]_L L^((n-k)(n+2k)) [C_(n-k)] w_k`,
/// `w_0 = 1`, normalized by `[Hilb^n]_vir = L^(-3n^2/2) w_n / Lfact(n)`.
pub fn z_c3_recursion(order: usize) -> Result<ZSeries> {
    let c = feit_fine_c(order);
    let commuting: Vec<MotWeight> = (0..=order)
        .map(|n| commuting_variety_class(&c, n))
        .collect::<Result<_>>()?;

    let mut w: Vec<MotWeight> = vec![MotWeight::one()];
    let mut out = vec![MotWeight::one()];
    for n in 1..=order {
        let ni = n as i64;
        let mut wn = commuting[n].shift(2 * ni * (ni + 1));
        for (k, wk) in w.iter().enumerate() {
            let ki = k as i64;
            let term = &(&gaussian_binomial(n as u32, k as u32)? * &commuting[n - k])
                .shift(2 * (ni - ki) * (ni + 2 * ki))
                * wk;
            wn = &wn - &term;
        }
        let hilb = rf_reduce(
            &(&wn * &MotWeight::l_half_pow(-3 * ni * ni)),
            &class_lfact(n as u32),
        )?
        .to_mot_weight()
        .ok_or(Error::PolynomialityViolated(n))?;
        w.push(wn);
        out.push(hilb);
    }
    Ok(ZSeries::new(TruncSeries::new(out, order), Route::Recursion))
}

/// Per-degree outcome of an identity between two series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub passes: Vec<bool>,
}

impl DegreeReport {
    pub fn from_series<C: crate::ring::Coeff>(lhs: &TruncSeries<C>, rhs: &TruncSeries<C>) -> Self {
        DegreeReport {
            passes: lhs.coeffs().iter().zip(rhs.coeffs()).map(|(a, b)| a == b).collect(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.passes.iter().all(|&p| p)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.passes.iter().position(|&p| !p)
    }
}

/// Checks `C(L^(1/2) t) = Z_C3(t) C(L^(-1/2) t)` exactly over rational weights.
pub fn twisted_quotient_check(order: usize) -> DegreeReport {
    let c = feit_fine_c(order);
    let half = RatWeight::from_mot(&MotWeight::l_half_pow(1));
    let neg_half = RatWeight::from_mot(&MotWeight::l_half_pow(-1));
    let lhs = c.rescale(1, &half);
    let z = z_c3_product(order).series.map(RatWeight::from_mot);
    let rhs = z.mul_series(&c.rescale(1, &neg_half));
    DegreeReport::from_series(&lhs, &rhs)
}

/// `x t / ((1 + L^(1/2) t)(1 + L^(-1/2) t))` as a series; the shape shared by
/// the threefold formulas.
fn threefold_kernel(x: &MotWeight, order: usize) -> MotSeries {
    // 1/((1 - u t)(1 - u^-1 t)) = sum_n h_n(u, u^-1) t^n
    let mut coeffs = vec![MotWeight::zero()];
    for n in 1..=order as i64 {
        let h = MotWeight::from_terms((0..n).map(|i| (n - 1 - 2 * i, BigInt::one())));
        coeffs.push(x * &h);
    }
    TruncSeries::new(coeffs, order)
}

/// `Z_X(-t) = Exp(-t [X]_vir / ((1 + L^(1/2) t)(1 + L^(-1/2) t)))` for a
/// threefold of class `x`.
pub fn z_x_exp(x: &MotWeight, order: usize) -> ZSeries {
    let arg = threefold_kernel(&-vir_normalize(x, 3), order);
    let z_neg = exp_pleth(&arg).expect("augmented argument");
    ZSeries::new(z_neg.rescale(1, &-MotWeight::one()), Route::ExpFormula)
}

/// Punctual series `Z_(C^3,0)(t)` from its `Exp` form.
pub fn z_punctual_c3(order: usize) -> ZSeries {
    z_x_exp(&MotWeight::one(), order)
}

/// `Z_X = Z_(C^3,0)^[X]`.
///
/// The power is taken in the variable `-t`, in which every factor of the
/// punctual series has the form `(1 - u^i (-t)^m)^(-1)`; the product form of
/// `Z_X` is read this way too. Taken in `t` itself, the sign rule would see
/// the coefficients `(-1)^m u^i` and give a different series.
pub fn z_x_power(x: &MotWeight, order: usize) -> Result<ZSeries> {
    let minus_one = -MotWeight::one();
    let z0 = z_punctual_c3(order).series.rescale(1, &minus_one);
    let zx = pow_class(&z0, x)?.rescale(1, &minus_one);
    Ok(ZSeries::new(zx, Route::PowerFormula))
}

/// `sum [Hilb^n(X)]_vir T^n = Exp(T [X]_vir Exp(T [P^(d-2)]_vir))` with
/// `T = (-1)^d t`, returned as a series in `t`.
///
/// Both `Exp`s are taken in the variable `t`. Dimensions 0 through 3 are
/// exact to any order; for `d >= 4` only orders up to `t^3` are defined.
pub fn unified_formula(d: i64, x: &MotWeight, order: usize) -> Result<ZSeries> {
    if d < 0 {
        return Err(Error::InvalidArgument(format!("dimension must be non-negative, got {d}")));
    }
    if d > 3 && order > 3 {
        return Err(Error::InvalidArgument(format!(
            "no virtual motive is defined beyond t^3 in dimension {d}; requested order {order}"
        )));
    }
    let sign = if d % 2 == 0 { MotWeight::one() } else { -MotWeight::one() };
    let inner_arg = MotSeries::monomial(1, &sign * &proj_vir(d - 2), order);
    let inner = exp_pleth(&inner_arg)?;
    let scale = &sign * &vir_normalize(x, d);
    let mut coeffs = vec![MotWeight::zero()];
    coeffs.extend(inner.coeffs()[..order].iter().map(|c| &scale * c));
    let f = exp_pleth(&TruncSeries::new(coeffs, order))?;
    Ok(ZSeries::new(f.rescale(1, &sign), Route::ExpFormula))
}

/// `sum [Hilb^n(S)] t^n = Exp([S] t / (1 - L t))`, without normalization.
pub fn goettsche_surface(s: &MotWeight, order: usize) -> MotSeries {
    let mut coeffs = vec![MotWeight::zero()];
    coeffs.extend((0..order as i64).map(|k| s.shift(2 * k)));
    exp_pleth(&TruncSeries::new(coeffs, order)).expect("augmented argument")
}

/// `1 + t + [d choose 1]_L t^2 + [d+1 choose 2]_L t^3`: punctual Hilbert
/// schemes of `C^d` up to three points.
pub fn cheah_low(d: u32) -> Result<MotSeries> {
    if d < 1 {
        return Err(Error::InvalidArgument("cheah_low needs d >= 1".into()));
    }
    Ok(TruncSeries::new(
        vec![
            MotWeight::one(),
            MotWeight::one(),
            gaussian_binomial(d, 1)?,
            gaussian_binomial(d + 1, 2)?,
        ],
        3,
    ))
}

/// `Z_(C^d)` to order 3 assembled from [`cheah_low`]: the power by `L^d`
/// followed by the normalization `t -> L^(-d/2) t`.
pub fn cheah_assembly(d: u32) -> Result<MotSeries> {
    let punctual = cheah_low(d)?;
    let full = pow_class(&punctual, &MotWeight::l_pow(d as i64))?;
    Ok(full.rescale(1, &MotWeight::l_half_pow(-(d as i64))))
}

/// `M_delta(t, q^(1/2)) = prod_m prod_{k<m} (1 - q^(delta + 1/2 + k - m/2) t^m)^(-1)`.
pub fn refined_macmahon(delta: HalfInt, order: usize) -> WeightSeries {
    let factors = (1..=order).flat_map(move |m| {
        (0..m).map(move |k| {
            let e = delta.twice() + 1 + 2 * k as i64 - m as i64;
            Factor::new(m, WeightPoly::q_half_pow(e), -1)
        })
    });
    factor_product(factors, order)
}

/// `prod_{d=0}^{6} M_((d-3)/2)(-t, -q^(1/2))^((-1)^d b_d)`.
pub fn weight_partition_function(b: &BettiVector, order: usize) -> WeightSeries {
    let mut acc = WeightSeries::one(order);
    for d in 0..7usize {
        let bd = b.get(d) as i64;
        if bd == 0 {
            continue;
        }
        let m = refined_macmahon(HalfInt::from_twice(d as i64 - 3), order)
            .map(WeightPoly::negate_root)
            .rescale(1, &-WeightPoly::one());
        let e = if d % 2 == 0 { bd } else { -bd };
        acc = acc.mul_series(&m.pow_int(e).expect("constant term is 1"));
    }
    acc
}

/// MacMahon's function `M(t) = prod (1 - t^m)^(-m)`.
pub fn macmahon_function(order: usize) -> IntSeries {
    factor_product(
        (1..=order).map(|m| Factor::new(m, BigInt::one(), -(m as i64))),
        order,
    )
}

/// `M(-t)^chi`.
pub fn signed_macmahon_power(chi: i64, order: usize) -> IntSeries {
    macmahon_function(order)
        .rescale(1, &-BigInt::one())
        .pow_int(chi)
        .expect("constant term is 1")
}

/// MacMahon's guess for `d`-dimensional partitions,
/// `prod (1 - t^m)^(-binom(m + d - 3, d - 2))`.
pub fn macmahon_guess(d: u32, order: usize) -> Result<IntSeries> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("MacMahon's guess needs d >= 2, got {d}")));
    }
    let d = d as u64;
    Ok(factor_product(
        (1..=order).map(|m| {
            let e = binomial(m as u64 + d - 3, d - 2);
            Factor::new(m, BigInt::one(), -e)
        }),
        order,
    ))
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}
