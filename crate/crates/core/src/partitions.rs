//! Brute-force enumeration of `d`-dimensional partitions (finite order ideals
//! in `N^d`) and refined statistics of plane partitions.
//!
//! Ideals are generated by adding boxes in strictly increasing lexicographic
//! order. Every predecessor of a box is lexicographically smaller, so each
//! prefix of the sorted box list is again an ideal and every ideal arises from
//! exactly one path.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::classes::{HalfInt, WeightPoly};
use crate::error::{Error, Result};
use crate::ring::Laurent;
use crate::series::TruncSeries;
use crate::WeightSeries;

/// Largest dimension the packed box encoding supports.
pub const MAX_DIM: u32 = 8;

/// Largest `n` enumerated for a given dimension without refusing.
pub fn size_ceiling(d: u32) -> usize {
    match d {
        1 => 255,
        2 => 40,
        3 => 14,
        4 => 10,
        _ => 8,
    }
}

fn check_request(d: u32, n: usize) -> Result<()> {
    if d == 0 || d > MAX_DIM {
        return Err(Error::InvalidArgument(format!(
            "dimension must be between 1 and {MAX_DIM}, got {d}"
        )));
    }
    let ceiling = size_ceiling(d);
    if n > ceiling {
        return Err(Error::ResourceCeiling(format!(
            "enumeration of {d}-dimensional partitions is capped at n = {ceiling}, requested {n}"
        )));
    }
    Ok(())
}

/// A finite downward-closed set of lattice points in `N^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderIdeal {
    dim: usize,
    boxes: BTreeSet<Vec<u32>>,
}

impl OrderIdeal {
    pub fn new(dim: usize, boxes: impl IntoIterator<Item = Vec<u32>>) -> Result<Self> {
        let boxes: BTreeSet<Vec<u32>> = boxes.into_iter().collect();
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        for b in &boxes {
            if b.len() != dim {
                return Err(Error::InvalidArgument(format!("box {b:?} is not in N^{dim}")));
            }
            for i in 0..dim {
                if b[i] > 0 {
                    let mut p = b.clone();
                    p[i] -= 1;
                    if !boxes.contains(&p) {
                        return Err(Error::InvalidArgument(format!(
                            "not downward closed: {b:?} present but {p:?} missing"
                        )));
                    }
                }
            }
        }
        Ok(OrderIdeal { dim, boxes })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.boxes.len()
    }

    pub fn boxes(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.boxes.iter()
    }

    /// Refined statistics of a plane partition.
    pub fn stats(&self) -> Result<RefinedStats> {
        if self.dim != 3 {
            return Err(Error::InvalidArgument(format!(
                "refined statistics need dimension 3, got {}",
                self.dim
            )));
        }
        let mut s = RefinedStats::default();
        for b in &self.boxes {
            s.record(b[0], b[1]);
        }
        Ok(s)
    }

    /// The ideal with the first two axes exchanged.
    pub fn swap_xy(&self) -> Self {
        let boxes = self
            .boxes
            .iter()
            .map(|b| {
                let mut c = b.clone();
                if self.dim >= 2 {
                    c.swap(0, 1);
                }
                c
            })
            .collect();
        OrderIdeal { dim: self.dim, boxes }
    }
}

/// Boxes `(x, y, z)` of a plane partition counted by the sign of `x - y`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RefinedStats {
    pub w_minus: u32,
    pub w_zero: u32,
    pub w_plus: u32,
}

impl RefinedStats {
    fn record(&mut self, x: u32, y: u32) {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => self.w_minus += 1,
            std::cmp::Ordering::Equal => self.w_zero += 1,
            std::cmp::Ordering::Greater => self.w_plus += 1,
        }
    }

    pub fn size(&self) -> u32 {
        self.w_minus + self.w_zero + self.w_plus
    }

    /// Twice the exponent of `q` carried by this plane partition.
    pub fn twice_q_exponent(&self, delta: HalfInt) -> i64 {
        self.w_minus as i64 - self.w_plus as i64 + delta.twice() * self.w_zero as i64
    }
}

// Boxes are packed 8 bits per coordinate, first coordinate most significant,
// so integer order is lexicographic order.
struct Packing {
    dim: u32,
}

impl Packing {
    fn shift(&self, i: u32) -> u32 {
        8 * (self.dim - 1 - i)
    }

    fn coord(&self, b: u64, i: u32) -> u64 {
        (b >> self.shift(i)) & 0xff
    }

    fn unit(&self, i: u32) -> u64 {
        1 << self.shift(i)
    }

    fn unpack(&self, b: u64) -> Vec<u32> {
        (0..self.dim).map(|i| self.coord(b, i) as u32).collect()
    }
}

#[derive(Clone)]
struct State {
    boxes: Vec<u64>,
    set: HashSet<u64>,
}

impl State {
    fn empty() -> Self {
        State { boxes: Vec::new(), set: HashSet::new() }
    }

    fn push(&mut self, b: u64) {
        self.boxes.push(b);
        self.set.insert(b);
    }

    fn pop(&mut self) {
        let b = self.boxes.pop().expect("nonempty");
        self.set.remove(&b);
    }

    /// Addable boxes lexicographically after the last one, each listed once.
    fn extensions(&self, p: &Packing) -> Vec<u64> {
        let Some(&last) = self.boxes.last() else {
            return vec![0];
        };
        let mut out = Vec::new();
        for &b in &self.boxes {
            for i in 0..p.dim {
                // generate c from c - e_i only for the first nonzero coordinate i of c
                if (0..i).any(|j| p.coord(b, j) != 0) || p.coord(b, i) == 0xff {
                    continue;
                }
                let c = b + p.unit(i);
                if c <= last || self.set.contains(&c) {
                    continue;
                }
                let closed = (i + 1..p.dim)
                    .all(|j| p.coord(c, j) == 0 || self.set.contains(&(c - p.unit(j))));
                if closed {
                    out.push(c);
                }
            }
        }
        out
    }
}

fn walk(state: &mut State, p: &Packing, n_max: usize, visit: &mut impl FnMut(&State)) {
    visit(state);
    if state.boxes.len() == n_max {
        return;
    }
    for c in state.extensions(p) {
        state.push(c);
        walk(state, p, n_max, visit);
        state.pop();
    }
}

/// Runs `visit` on every ideal of size at most `n_max`, splitting the search
/// tree across the current rayon pool; per-branch accumulators are merged
/// with `merge`.
fn fold_ideals<A, V, M>(d: u32, n_max: usize, init: impl Fn() -> A + Sync, visit: V, merge: M) -> A
where
    A: Send,
    V: Fn(&mut A, &State) + Sync,
    M: Fn(A, A) -> A + Sync,
{
    let p = Packing { dim: d };
    let split_depth = n_max.min(3);
    let mut acc = init();
    let mut frontier = Vec::new();
    let mut seed = State::empty();
    walk(&mut seed, &p, split_depth, &mut |s| {
        if s.boxes.len() == split_depth {
            frontier.push(s.clone());
        } else {
            visit(&mut acc, s);
        }
    });
    let rest = frontier
        .into_par_iter()
        .map(|mut s| {
            let mut a = init();
            walk(&mut s, &p, n_max, &mut |t| visit(&mut a, t));
            a
        })
        .reduce(&init, &merge);
    merge(acc, rest)
}

/// Numbers of `d`-dimensional partitions of every size `0..=n_max`.
pub fn count_dpartitions_upto(d: u32, n_max: usize) -> Result<Vec<BigInt>> {
    check_request(d, n_max)?;
    if d == 1 {
        return Ok(vec![BigInt::from(1); n_max + 1]);
    }
    let counts = fold_ideals(
        d,
        n_max,
        || vec![0u64; n_max + 1],
        |a, s| a[s.boxes.len()] += 1,
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    );
    Ok(counts.into_iter().map(BigInt::from).collect())
}

/// Number of `d`-dimensional partitions of `n`.
pub fn count_dpartitions(d: u32, n: usize) -> Result<BigInt> {
    Ok(count_dpartitions_upto(d, n)?.pop().expect("nonempty"))
}

/// Every order ideal of size exactly `n` in `N^d`, in generation order.
pub fn list_ideals(d: u32, n: usize) -> Result<Vec<OrderIdeal>> {
    check_request(d, n)?;
    let p = Packing { dim: d };
    let mut out = Vec::new();
    walk(&mut State::empty(), &p, n, &mut |s| {
        if s.boxes.len() == n {
            out.push(OrderIdeal {
                dim: d as usize,
                boxes: s.boxes.iter().map(|&b| p.unpack(b)).collect(),
            });
        }
    });
    Ok(out)
}

/// Multiplicity of each refined statistic over plane partitions of size at
/// most `n_max`.
pub fn stats_histogram(n_max: usize) -> Result<BTreeMap<RefinedStats, u64>> {
    check_request(3, n_max)?;
    let p = Packing { dim: 3 };
    Ok(fold_ideals(
        3,
        n_max,
        BTreeMap::new,
        |a, s| {
            let mut st = RefinedStats::default();
            for &b in &s.boxes {
                st.record(p.coord(b, 0) as u32, p.coord(b, 1) as u32);
            }
            *a.entry(st).or_insert(0) += 1;
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    ))
}

/// `sum_alpha t^|alpha| q^((w_-(alpha) - w_+(alpha) + 2 delta w_0(alpha)) / 2)`
/// over plane partitions with `|alpha| <= n_max`.
pub fn refined_sum(n_max: usize, delta: HalfInt) -> Result<WeightSeries> {
    let hist = stats_histogram(n_max)?;
    let mut coeffs = vec![WeightPoly::zero(); n_max + 1];
    for (st, mult) in hist {
        let term = WeightPoly::new(Laurent::monomial(st.twice_q_exponent(delta), BigInt::from(mult)));
        let n = st.size() as usize;
        coeffs[n] = coeffs[n].clone() + term;
    }
    Ok(TruncSeries::new(coeffs, n_max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_dpartitions(3, 0).unwrap(), BigInt::from(1));
        assert_eq!(count_dpartitions(5, 0).unwrap(), BigInt::from(1));
        assert_eq!(count_dpartitions(3, 2).unwrap(), BigInt::from(3));
        assert_eq!(count_dpartitions(2, 4).unwrap(), BigInt::from(5));
        assert_eq!(count_dpartitions(1, 7).unwrap(), BigInt::from(1));
    }

    #[test]
    fn partitions_and_plane_partitions() {
        // p(n) by the pentagonal recurrence, plane partitions by the divisor recurrence
        let n = 10;
        let mut p = vec![1i64];
        for m in 1..=n as i64 {
            let mut s = 0;
            for k in 1.. {
                let g1 = k * (3 * k - 1) / 2;
                if g1 > m {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                s += sign * p[(m - g1) as usize];
                let g2 = k * (3 * k + 1) / 2;
                if g2 <= m {
                    s += sign * p[(m - g2) as usize];
                }
            }
            p.push(s);
        }
        assert_eq!(count_dpartitions_upto(2, n).unwrap(), i(&p));

        // m M(m) = sum_{k=1}^m sigma_2(k) M(m-k)
        let sigma2 = |k: i64| (1..=k).filter(|d| k % d == 0).map(|d| d * d).sum::<i64>();
        let mut mm = vec![1i64];
        for m in 1..=n as i64 {
            let s: i64 = (1..=m).map(|k| sigma2(k) * mm[(m - k) as usize]).sum();
            mm.push(s / m);
        }
        assert_eq!(count_dpartitions_upto(3, n).unwrap(), i(&mm));
    }

    #[test]
    fn generation_has_no_duplicates() {
        for (d, n) in [(2, 6), (3, 5), (4, 4)] {
            let ideals = list_ideals(d, n).unwrap();
            let distinct: HashSet<_> = ideals.iter().cloned().collect();
            assert_eq!(distinct.len(), ideals.len());
            assert_eq!(BigInt::from(ideals.len()), count_dpartitions(d, n).unwrap());
            for ideal in &ideals {
                OrderIdeal::new(d as usize, ideal.boxes().cloned()).unwrap();
            }
        }
    }

    #[test]
    fn ceilings_and_bad_dimensions() {
        assert!(matches!(count_dpartitions(3, 15), Err(Error::ResourceCeiling(_))));
        assert!(matches!(count_dpartitions(4, 11), Err(Error::ResourceCeiling(_))));
        assert!(matches!(count_dpartitions(0, 1), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn ideal_validation_and_stats() {
        let single = OrderIdeal::new(3, [vec![0, 0, 0]]).unwrap();
        assert_eq!(single.stats().unwrap(), RefinedStats { w_minus: 0, w_zero: 1, w_plus: 0 });
        let x = OrderIdeal::new(3, [vec![0, 0, 0], vec![1, 0, 0]]).unwrap();
        assert_eq!(x.stats().unwrap(), RefinedStats { w_minus: 0, w_zero: 1, w_plus: 1 });
        let y = OrderIdeal::new(3, [vec![0, 0, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(y.stats().unwrap(), RefinedStats { w_minus: 1, w_zero: 1, w_plus: 0 });
        assert_eq!(x.swap_xy(), y);
        assert!(OrderIdeal::new(3, [vec![1, 0, 0]]).is_err());
        assert!(OrderIdeal::new(2, [vec![0, 0]]).unwrap().stats().is_err());
    }

    #[test]
    fn refined_sum_low_terms() {
        let s = refined_sum(2, HalfInt::from_int(0)).unwrap();
        assert_eq!(s.coeff(0), &WeightPoly::q_half_pow(0));
        assert_eq!(s.coeff(1), &WeightPoly::q_half_pow(0));
        let expected = WeightPoly::q_half_pow(0) + WeightPoly::q_half_pow(1) + WeightPoly::q_half_pow(-1);
        assert_eq!(s.coeff(2), &expected);
        let s = refined_sum(1, HalfInt::from_twice(3)).unwrap();
        assert_eq!(s.coeff(1), &WeightPoly::q_half_pow(3));
    }

    #[test]
    fn stats_are_mirror_symmetric() {
        let hist = stats_histogram(7).unwrap();
        for (st, mult) in &hist {
            let mirror = RefinedStats { w_minus: st.w_plus, w_zero: st.w_zero, w_plus: st.w_minus };
            assert_eq!(hist.get(&mirror), Some(mult));
        }
        let counts = count_dpartitions_upto(3, 7).unwrap();
        for n in 0..=7u32 {
            let boxes: u64 =
                hist.iter().filter(|(s, _)| s.size() == n).map(|(s, m)| s.size() as u64 * m).sum();
            assert_eq!(BigInt::from(boxes), BigInt::from(n) * &counts[n as usize]);
        }
    }

    #[test]
    fn thread_count_does_not_change_totals() {
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| count_dpartitions_upto(4, 7).unwrap());
        let b = four.install(|| count_dpartitions_upto(4, 7).unwrap());
        assert_eq!(a, b);
    }
}
