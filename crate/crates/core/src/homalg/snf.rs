//! Smith normal form over the integers and ranks over prime fields.
//!
//! Invariant factors are computed in two phases. Unit pivots are eliminated
//! sparsely in checked `i64` arithmetic, restarting in `BigInt` arithmetic on
//! overflow; whatever is left has no unit entry and goes through a dense
//! `BigInt` reduction.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::homalg::matrix::IntMatrix;

/// Invariant factors and optional unimodular transforms with `U·A·V = D`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    /// Nonzero diagonal entries `d_1 | d_2 | …`, all positive.
    pub factors: Vec<BigInt>,
    pub transforms: Option<Transforms>,
}

#[derive(Clone, Debug)]
pub struct Transforms {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// The diagonal matrix `D`.
    pub fn diagonal(&self) -> IntMatrix {
        IntMatrix::from_triples(self.rows, self.cols, self.factors.iter().enumerate().map(|(i, d)| (i, i, d.clone())))
            .expect("diagonal fits")
    }
}

/// Computes the Smith normal form; transforms are only produced on request.
pub fn smith_normal_form(a: &IntMatrix, with_transforms: bool) -> SmithForm {
    if with_transforms {
        let mut d = Dense::new(a.to_dense(), a.rows(), a.cols(), true);
        d.reduce();
        let factors = d.factors();
        let t = d.transforms.expect("tracked");
        let m = a.rows();
        let n = a.cols();
        SmithForm {
            rows: m,
            cols: n,
            factors,
            transforms: Some(Transforms {
                u: IntMatrix::from_dense_big(m, m, &t.u),
                u_inv: IntMatrix::from_dense_big(m, m, &t.u_inv),
                v: IntMatrix::from_dense_big(n, n, &t.v),
                v_inv: IntMatrix::from_dense_big(n, n, &t.v_inv),
            }),
        }
    } else {
        SmithForm { rows: a.rows(), cols: a.cols(), factors: invariant_factors(a), transforms: None }
    }
}

/// Nonzero invariant factors of `a`, in divisibility order.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let (units, rest) = match eliminate_units::<i64>(a) {
        Some(r) => (r.0, r.1.into_iter().map(|row| row.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect()).collect()),
        None => eliminate_units::<BigInt>(a).expect("big integers do not overflow"),
    };
    let rest: Vec<Vec<(usize, BigInt)>> = rest;
    let mut out = vec![BigInt::one(); units];
    if !rest.is_empty() {
        let mut cols: Vec<usize> = rest.iter().flat_map(|r| r.iter().map(|(c, _)| *c)).collect();
        cols.sort_unstable();
        cols.dedup();
        let mut dense = vec![vec![BigInt::zero(); cols.len()]; rest.len()];
        for (i, row) in rest.iter().enumerate() {
            for (c, v) in row {
                let j = cols.binary_search(c).expect("collected");
                dense[i][j] = v.clone();
            }
        }
        let ncols = cols.len();
        let mut d = Dense::new(dense, rest.len(), ncols, false);
        d.reduce();
        out.extend(d.factors());
    }
    out
}

pub fn rank(a: &IntMatrix) -> usize {
    invariant_factors(a).len()
}

trait Entry: Clone + Sized {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn is_unit(&self) -> bool;
    fn is_zero_entry(&self) -> bool;
    /// `a − f·b`, or `None` on overflow.
    fn sub_mul(a: &Self, f: &Self, b: &Self) -> Option<Self>;
    fn mul_entry(a: &Self, b: &Self) -> Option<Self>;
    fn neg_entry(a: &Self) -> Option<Self>;
}

impl Entry for i64 {
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn is_zero_entry(&self) -> bool {
        *self == 0
    }
    fn sub_mul(a: &Self, f: &Self, b: &Self) -> Option<Self> {
        a.checked_sub(f.checked_mul(*b)?)
    }
    fn mul_entry(a: &Self, b: &Self) -> Option<Self> {
        a.checked_mul(*b)
    }
    fn neg_entry(a: &Self) -> Option<Self> {
        a.checked_neg()
    }
}

impl Entry for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn is_zero_entry(&self) -> bool {
        self.is_zero()
    }
    fn sub_mul(a: &Self, f: &Self, b: &Self) -> Option<Self> {
        Some(a - f * b)
    }
    fn mul_entry(a: &Self, b: &Self) -> Option<Self> {
        Some(a * b)
    }
    fn neg_entry(a: &Self) -> Option<Self> {
        Some(-a)
    }
}

type SparseRow<T> = Vec<(usize, T)>;

/// Removes unit pivots one at a time, cheapest first; returns their number
/// and the remaining nonempty rows.
fn eliminate_units<T: Entry>(a: &IntMatrix) -> Option<(usize, Vec<SparseRow<T>>)> {
    let mut rows: Vec<SparseRow<T>> = vec![Vec::new(); a.rows()];
    for (c, col) in a.columns().iter().enumerate() {
        for (r, v) in col {
            rows[*r].push((c, T::from_big(v)?));
        }
    }
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); a.cols()];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_rows[*c].insert(r);
        }
    }
    let mut units = 0;
    loop {
        let Some((pr, pc)) = choose_pivot(&rows, &col_rows) else { break };
        let pivot_row = std::mem::take(&mut rows[pr]);
        let pv = pivot_row.iter().find(|(c, _)| *c == pc).expect("pivot present").1.clone();
        for (c, _) in &pivot_row {
            col_rows[*c].remove(&pr);
        }
        let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
        for r in targets {
            let x = rows[r].iter().find(|(c, _)| *c == pc).expect("indexed").1.clone();
            // pv is ±1, so x / pv = x · pv
            let f = T::mul_entry(&x, &pv)?;
            let merged = sub_scaled(&rows[r], &f, &pivot_row, r, &mut col_rows)?;
            rows[r] = merged;
        }
        debug_assert!(col_rows[pc].is_empty());
        units += 1;
    }
    Some((units, rows.into_iter().filter(|r| !r.is_empty()).collect()))
}

fn choose_pivot<T: Entry>(rows: &[SparseRow<T>], col_rows: &[BTreeSet<usize>]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (c, rs) in col_rows.iter().enumerate() {
        if rs.is_empty() {
            continue;
        }
        let ccost = rs.len() - 1;
        if let Some((b, _, _)) = best {
            if ccost >= b && ccost > 0 {
                continue;
            }
        }
        for &r in rs {
            let row = &rows[r];
            let v = &row[row.binary_search_by_key(&c, |(cc, _)| *cc).expect("indexed")].1;
            if !v.is_unit() {
                continue;
            }
            let cost = ccost * (row.len() - 1);
            if best.map_or(true, |(b, _, _)| cost < b) {
                best = Some((cost, r, c));
                if cost == 0 {
                    return Some((r, c));
                }
            }
        }
    }
    best.map(|(_, r, c)| (r, c))
}

/// `row − f·pivot`, keeping the column index in step.
fn sub_scaled<T: Entry>(
    row: &SparseRow<T>,
    f: &T,
    pivot: &SparseRow<T>,
    r: usize,
    col_rows: &mut [BTreeSet<usize>],
) -> Option<SparseRow<T>> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            let v = T::neg_entry(&T::mul_entry(f, &pivot[j].1)?)?;
            col_rows[cj].insert(r);
            out.push((cj, v));
            j += 1;
        } else {
            let v = T::sub_mul(&row[i].1, f, &pivot[j].1)?;
            if v.is_zero_entry() {
                col_rows[ci].remove(&r);
            } else {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

struct DenseTransforms {
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

struct Dense {
    a: Vec<Vec<BigInt>>,
    m: usize,
    n: usize,
    transforms: Option<DenseTransforms>,
    rank: usize,
}

impl Dense {
    fn new(a: Vec<Vec<BigInt>>, m: usize, n: usize, track: bool) -> Self {
        let transforms = track.then(|| DenseTransforms { u: identity(m), u_inv: identity(m), v: identity(n), v_inv: identity(n) });
        Self { a, m, n, transforms, rank: 0 }
    }

    fn factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|t| self.a[t][t].clone()).collect()
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(t) = &mut self.transforms {
            t.u.swap(i, j);
            for row in &mut t.u_inv {
                row.swap(i, j);
            }
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(t) = &mut self.transforms {
            for row in &mut t.v {
                row.swap(i, j);
            }
            t.v_inv.swap(i, j);
        }
    }

    /// `row_i += c · row_j`
    fn row_add(&mut self, i: usize, j: usize, c: &BigInt) {
        add_row(&mut self.a, i, j, c);
        if let Some(t) = &mut self.transforms {
            add_row(&mut t.u, i, j, c);
            add_col(&mut t.u_inv, j, i, &-c);
        }
    }

    /// `col_i += c · col_j`
    fn col_add(&mut self, i: usize, j: usize, c: &BigInt) {
        add_col(&mut self.a, i, j, c);
        if let Some(t) = &mut self.transforms {
            add_col(&mut t.v, i, j, c);
            add_row(&mut t.v_inv, j, i, &-c);
        }
    }

    fn row_neg(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if let Some(t) = &mut self.transforms {
            for x in &mut t.u[i] {
                *x = -&*x;
            }
            for row in &mut t.u_inv {
                row[i] = -&row[i];
            }
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let x = &self.a[i][j];
                if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    if x.abs().is_one() {
                        return Some((i, j));
                    }
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn reduce(&mut self) {
        let mut t = 0;
        while t < self.m.min(self.n) {
            let Some((pi, pj)) = self.min_entry(t) else { break };
            self.row_swap(t, pi);
            self.col_swap(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.m {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].div_floor(&self.a[t][t]);
                        self.row_add(i, t, &-q);
                        clean &= self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..self.n {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].div_floor(&self.a[t][t]);
                        self.col_add(j, t, &-q);
                        clean &= self.a[t][j].is_zero();
                    }
                }
                if !clean {
                    let row_min = (t + 1..self.m).filter(|&i| !self.a[i][t].is_zero()).min_by_key(|&i| self.a[i][t].abs());
                    let col_min = (t + 1..self.n).filter(|&j| !self.a[t][j].is_zero()).min_by_key(|&j| self.a[t][j].abs());
                    match (row_min, col_min) {
                        (Some(i), Some(j)) if self.a[t][j].abs() < self.a[i][t].abs() => self.col_swap(t, j),
                        (Some(i), _) => self.row_swap(t, i),
                        (None, Some(j)) => self.col_swap(t, j),
                        (None, None) => unreachable!(),
                    }
                    continue;
                }
                let p = self.a[t][t].clone();
                let bad = (t + 1..self.m).find(|&i| (t + 1..self.n).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => self.row_add(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.row_neg(t);
            }
            t += 1;
        }
        self.rank = t;
    }
}

fn add_row(m: &mut [Vec<BigInt>], i: usize, j: usize, c: &BigInt) {
    if c.is_zero() {
        return;
    }
    let (src, dst) = if i < j {
        let (lo, hi) = m.split_at_mut(j);
        (&hi[0], &mut lo[i])
    } else {
        let (lo, hi) = m.split_at_mut(i);
        (&lo[j], &mut hi[0])
    };
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += c * s;
        }
    }
}

fn add_col(m: &mut [Vec<BigInt>], i: usize, j: usize, c: &BigInt) {
    if c.is_zero() {
        return;
    }
    for row in m {
        if !row[j].is_zero() {
            let add = c * &row[j];
            row[i] += add;
        }
    }
}

/// Rank of `a` reduced modulo the prime `p`.
pub fn rank_mod_p(a: &IntMatrix, p: u64) -> usize {
    let modulus = BigInt::from(p);
    let mut pivots: std::collections::HashMap<usize, Vec<(usize, u64)>> = std::collections::HashMap::new();
    for col in a.columns() {
        // columns of `a` are the vectors; rank is the same either way
        let mut v: Vec<(usize, u64)> = col
            .iter()
            .map(|(r, x)| (*r, u64::try_from(&x.mod_floor(&modulus)).expect("reduced")))
            .filter(|(_, x)| *x != 0)
            .collect();
        while let Some(&(lead, x)) = v.first() {
            match pivots.get(&lead) {
                Some(pv) => v = axpy_mod(&v, p - x, pv, p),
                None => {
                    let inv = inverse_mod(x, p);
                    let normalized = v.iter().map(|(r, y)| (*r, mul_mod(*y, inv, p))).collect();
                    pivots.insert(lead, normalized);
                    break;
                }
            }
        }
    }
    pivots.len()
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inverse_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "{a} is not invertible modulo {p}");
    t.rem_euclid(p as i128) as u64
}

/// `v + c·w` over `Z/p`, both sorted by index.
fn axpy_mod(v: &[(usize, u64)], c: u64, w: &[(usize, u64)], p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        let a = v.get(i).map_or(usize::MAX, |e| e.0);
        let b = w.get(j).map_or(usize::MAX, |e| e.0);
        if a < b {
            out.push(v[i]);
            i += 1;
        } else if b < a {
            out.push((b, mul_mod(c, w[j].1, p)));
            j += 1;
        } else {
            let s = (v[i].1 + mul_mod(c, w[j].1, p)) % p;
            if s != 0 {
                out.push((a, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(rows: &[Vec<i64>]) -> Vec<i64> {
        invariant_factors(&IntMatrix::from_dense(rows)).iter().map(|x| x.to_i64().unwrap()).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(factors(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), vec![1, 1, 1]);
        assert_eq!(factors(&[vec![2, 0], vec![0, 4]]), vec![2, 4]);
        // |det| = 8 and the entry gcd is 2
        assert_eq!(factors(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(factors(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
    }

    #[test]
    fn transforms_diagonalize() {
        let a = IntMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith_normal_form(&a, true);
        let t = s.transforms.as_ref().unwrap();
        assert_eq!(&(&t.u * &a) * &t.v, s.diagonal());
        assert_eq!(&t.u * &t.u_inv, IntMatrix::identity(3));
        assert_eq!(&t.v * &t.v_inv, IntMatrix::identity(3));
        assert_eq!(s.factors, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn overflow_escalates() {
        let big = i64::MAX / 2;
        let a = IntMatrix::from_dense(&[vec![1, big, big], vec![big, 1, 3], vec![5, big, 7]]);
        let fast = invariant_factors(&a);
        let dense = smith_normal_form(&a, true).factors;
        assert_eq!(fast, dense);
    }

    #[test]
    fn modular_rank() {
        let a = IntMatrix::from_dense(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(rank_mod_p(&a, 2), 1);
        assert_eq!(rank_mod_p(&a, 3), 1);
        assert_eq!(rank_mod_p(&a, 5), 2);
        assert_eq!(inverse_mod(3, 7), 5);
    }
}
