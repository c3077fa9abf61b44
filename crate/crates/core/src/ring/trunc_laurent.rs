use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Coeff, Laurent, RatWeight};

/// A Laurent series in descending powers of `u`, known exactly at every
/// exponent `>= floor` and unknown below it. `floor == None` means exact.
///
/// Exponents are in half-powers of `L`, as for [`Laurent`].
#[derive(Clone, Debug)]
pub struct TruncLaurent {
    floor: Option<i64>,
    terms: BTreeMap<i64, BigRational>,
}

impl TruncLaurent {
    pub fn exact(p: &Laurent<BigRational>) -> Self {
        TruncLaurent {
            floor: None,
            terms: p.terms().map(|(e, c)| (e, c.clone())).collect(),
        }
    }

    pub fn monomial(exp: i64, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        TruncLaurent { floor: None, terms }
    }

    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    /// Highest exponent present; `None` for zero.
    pub fn top(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        self.terms.iter().rev().map(|(e, c)| (*e, c))
    }

    /// Drops every term below `floor` and records the loss of exactness.
    pub fn truncate(mut self, floor: i64) -> Self {
        self.terms = self.terms.split_off(&floor);
        self.floor = Some(self.floor.map_or(floor, |f| f.max(floor)));
        self
    }

    /// Whether two expansions agree at every exponent where both are exact
    /// and at or above `floor`.
    pub fn agrees_above(&self, other: &TruncLaurent, floor: i64) -> bool {
        let lo = [Some(floor), self.floor, other.floor].into_iter().flatten().max().unwrap();
        let a: Vec<_> = self.terms.range(lo..).collect();
        let b: Vec<_> = other.terms.range(lo..).collect();
        a == b
    }

    // Highest exponent that the unknown tail could influence, plus one.
    fn effective_top(&self) -> Option<i64> {
        match (self.top(), self.floor) {
            (Some(t), Some(f)) => Some(t.max(f)),
            (Some(t), None) => Some(t),
            (None, Some(f)) => Some(f),
            (None, None) => None,
        }
    }

    fn is_exact_zero(&self) -> bool {
        self.floor.is_none() && self.terms.is_empty()
    }
}

fn max_floor(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Descending expansion of `w` at `u = infinity`, exact for every exponent
/// `>= floor` (exponents in half-powers of `L`).
pub fn expand_at_infinity(w: &RatWeight, floor: i64) -> TruncLaurent {
    let num = w.num();
    let den = w.den();
    let (Some(dn), Some(dd)) = (num.degree(), den.degree()) else {
        return TruncLaurent::exact(&Laurent::zero()).truncate(floor);
    };
    let lead_inv = den.leading_coeff().unwrap().recip();
    let den_terms: Vec<(i64, BigRational)> = den.terms().map(|(e, c)| (e, c.clone())).collect();
    let mut rem: BTreeMap<i64, BigRational> = num.terms().map(|(e, c)| (e, c.clone())).collect();
    let mut out = BTreeMap::new();
    let mut e = dn - dd;
    while e >= floor {
        let c = rem.remove(&(e + dd)).unwrap_or_else(BigRational::zero) * &lead_inv;
        if !c.is_zero() {
            for (de, dc) in &den_terms {
                if *de == dd {
                    continue;
                }
                let slot = rem.entry(e + de).or_insert_with(BigRational::zero);
                *slot -= &c * dc;
                if slot.is_zero() {
                    rem.remove(&(e + de));
                }
            }
            out.insert(e, c);
        }
        e -= 1;
    }
    TruncLaurent {
        floor: Some(floor),
        terms: out,
    }
}

impl PartialEq for TruncLaurent {
    fn eq(&self, other: &Self) -> bool {
        self.floor == other.floor && self.terms == other.terms
    }
}

impl fmt::Display for TruncLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = Laurent::from_terms(self.terms.iter().map(|(e, c)| (*e, c.clone())));
        write!(f, "{p}")?;
        if let Some(fl) = self.floor {
            write!(f, " + O(L^({fl}/2))")?;
        }
        Ok(())
    }
}

impl Zero for TruncLaurent {
    fn zero() -> Self {
        TruncLaurent {
            floor: None,
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for TruncLaurent {
    fn one() -> Self {
        Self::monomial(0, BigRational::one())
    }
}

impl Add for TruncLaurent {
    type Output = TruncLaurent;

    fn add(self, rhs: TruncLaurent) -> TruncLaurent {
        let floor = max_floor(self.floor, rhs.floor);
        let mut terms = self.terms;
        for (e, c) in rhs.terms {
            let slot = terms.entry(e).or_insert_with(BigRational::zero);
            *slot += c;
        }
        terms.retain(|e, c| !c.is_zero() && floor.is_none_or(|f| *e >= f));
        TruncLaurent { floor, terms }
    }
}

impl Neg for TruncLaurent {
    type Output = TruncLaurent;

    fn neg(self) -> TruncLaurent {
        TruncLaurent {
            floor: self.floor,
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Sub for TruncLaurent {
    type Output = TruncLaurent;

    fn sub(self, rhs: TruncLaurent) -> TruncLaurent {
        self + (-rhs)
    }
}

impl Mul for TruncLaurent {
    type Output = TruncLaurent;

    fn mul(self, rhs: TruncLaurent) -> TruncLaurent {
        if self.is_exact_zero() || rhs.is_exact_zero() {
            return TruncLaurent::zero();
        }
        // The unknown tail of one factor (exponents < floor) meets at most the
        // top of the other.
        let from_lhs = self.floor.map(|f| f + rhs.effective_top().unwrap());
        let from_rhs = rhs.floor.map(|f| f + self.effective_top().unwrap());
        let floor = max_floor(from_lhs, from_rhs);
        let mut terms: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = e1 + e2;
                if floor.is_some_and(|f| e < f) {
                    continue;
                }
                let slot = terms.entry(e).or_insert_with(BigRational::zero);
                *slot += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        TruncLaurent { floor, terms }
    }
}

impl Coeff for TruncLaurent {
    fn from_bigint(n: &BigInt) -> Self {
        Self::monomial(0, BigRational::from_integer(n.clone()))
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.floor.is_some() || self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(Self::monomial(-e, c.recip()))
    }
}
