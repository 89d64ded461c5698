//! Sparse integer matrices stored by column.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An integer matrix with arbitrary-precision entries.
///
/// Column `c` is a list of `(row, value)` pairs sorted by row with no zero values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, BigInt)>>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, cols: n, data: (0..n).map(|i| vec![(i, BigInt::one())]).collect() }
    }

    /// Builds from unsorted columns; repeated rows are summed and zeros dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, BigInt)>>) -> Result<Self> {
        let cols = columns.len();
        let mut data = Vec::with_capacity(cols);
        for (c, col) in columns.into_iter().enumerate() {
            if let Some(&(r, _)) = col.iter().find(|(r, _)| *r >= rows) {
                return Err(Error::Invalid(format!("entry ({r}, {c}) outside a {rows}×{cols} matrix")));
            }
            data.push(normalize_column(col));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds from `(row, col, value)` triples.
    pub fn from_triples(rows: usize, cols: usize, triples: impl IntoIterator<Item = (usize, usize, BigInt)>) -> Result<Self> {
        let mut columns = vec![Vec::new(); cols];
        for (r, c, v) in triples {
            if c >= cols {
                return Err(Error::Invalid(format!("entry ({r}, {c}) outside a {rows}×{cols} matrix")));
            }
            columns[c].push((r, v));
        }
        Self::from_columns(rows, columns)
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let triples = rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &v)| (i, j, BigInt::from(v))));
        Self::from_triples(r, c, triples).expect("dense input is in range")
    }

    pub(crate) fn from_sorted_columns(rows: usize, data: Vec<Vec<(usize, BigInt)>>) -> Self {
        debug_assert!(data.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0) && c.iter().all(|(r, v)| *r < rows && !v.is_zero())));
        Self { rows, cols: data.len(), data }
    }

    /// Column `j` has a single `1` in row `f[j]`.
    pub fn from_function(rows: usize, f: &[usize]) -> Self {
        Self::from_sorted_columns(rows, f.iter().map(|&r| vec![(r, BigInt::one())]).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(usize, BigInt)] {
        &self.data[c]
    }

    pub fn columns(&self) -> &[Vec<(usize, BigInt)>] {
        &self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        match self.data[c].binary_search_by_key(&r, |(row, _)| *row) {
            Ok(k) => self.data[c][k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (c, col) in self.data.iter().enumerate() {
            for (r, v) in col {
                out[*r][c] = v.clone();
            }
        }
        out
    }

    pub fn from_dense_big(rows: usize, cols: usize, dense: &[Vec<BigInt>]) -> Self {
        let data = (0..cols)
            .map(|c| (0..rows).filter(|&r| !dense[r][c].is_zero()).map(|r| (r, dense[r][c].clone())).collect())
            .collect();
        Self { rows, cols, data }
    }

    /// Entries as `i64` row vectors, if they all fit.
    pub fn to_dense_i64(&self) -> Option<Vec<Vec<i64>>> {
        let mut out = vec![vec![0i64; self.cols]; self.rows];
        for (c, col) in self.data.iter().enumerate() {
            for (r, v) in col {
                out[*r][c] = i64::try_from(v).ok()?;
            }
        }
        Some(out)
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.rows];
        for (c, col) in self.data.iter().enumerate() {
            for (r, v) in col {
                data[*r].push((c, v.clone()));
            }
        }
        Self { rows: self.cols, cols: self.rows, data }
    }

    /// Matrix–vector product with a sparse vector.
    pub fn apply(&self, v: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
        let mut acc = Vec::new();
        for (c, x) in v {
            for (r, a) in &self.data[*c] {
                acc.push((*r, a * x));
            }
        }
        normalize_column(acc)
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Mismatch(format!("cannot multiply {}×{} by {}×{}", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        Ok(IntMatrix { rows: self.rows, cols: rhs.cols, data: rhs.data.iter().map(|col| self.apply(col)).collect() })
    }

    fn combine(&self, rhs: &IntMatrix, sign: i32) -> Result<IntMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Mismatch(format!("shapes {}×{} and {}×{} differ", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| {
                let mut col: Vec<(usize, BigInt)> = a.clone();
                col.extend(b.iter().map(|(r, v)| (*r, if sign < 0 { -v } else { v.clone() })));
                normalize_column(col)
            })
            .collect();
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_add(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.combine(rhs, 1)
    }

    pub fn checked_sub(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.combine(rhs, -1)
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        if k.is_zero() {
            return IntMatrix::zero(self.rows, self.cols);
        }
        let data = self.data.iter().map(|col| col.iter().map(|(r, v)| (*r, v * k)).collect()).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    /// Places blocks on a grid; `blocks[i][j]` fills row band `i`, column band `j`.
    pub fn block(row_sizes: &[usize], col_sizes: &[usize], blocks: &[Vec<Option<&IntMatrix>>]) -> Result<IntMatrix> {
        let rows: usize = row_sizes.iter().sum();
        let mut data: Vec<Vec<(usize, BigInt)>> = Vec::new();
        for (j, &w) in col_sizes.iter().enumerate() {
            let mut band = vec![Vec::new(); w];
            let mut offset = 0;
            for (i, &h) in row_sizes.iter().enumerate() {
                if let Some(b) = blocks[i][j] {
                    if b.rows != h || b.cols != w {
                        return Err(Error::Mismatch(format!(
                            "block ({i},{j}) is {}×{}, expected {h}×{w}",
                            b.rows, b.cols
                        )));
                    }
                    for (c, col) in b.data.iter().enumerate() {
                        band[c].extend(col.iter().map(|(r, v)| (r + offset, v.clone())));
                    }
                }
                offset += h;
            }
            data.extend(band);
        }
        Ok(IntMatrix { rows, cols: data.len(), data })
    }

    /// Largest absolute entry, zero for an empty matrix.
    pub fn max_abs(&self) -> BigInt {
        self.data.iter().flatten().map(|(_, v)| v.abs()).max().unwrap_or_default()
    }

    /// Entries reduced into `0..p`, as row-major `u64` rows.
    pub fn to_dense_mod(&self, p: u64) -> Vec<Vec<u64>> {
        let mut out = vec![vec![0u64; self.cols]; self.rows];
        let m = BigInt::from(p);
        for (c, col) in self.data.iter().enumerate() {
            for (r, v) in col {
                let x = ((v % &m) + &m) % &m;
                out[*r][c] = u64::try_from(&x).expect("reduced below p");
            }
        }
        out
    }
}

fn normalize_column(mut col: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    col.sort_by_key(|(r, _)| *r);
    let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(col.len());
    for (r, v) in col {
        match out.last_mut() {
            Some((lr, lv)) if *lr == r => *lv += v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_add(rhs).expect("matrix shapes agree")
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_sub(rhs).expect("matrix shapes agree")
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("inner dimensions agree")
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        self.scale(&BigInt::from(-1))
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows * self.cols <= 400 {
            writeln!(f, "IntMatrix {}×{} [", self.rows, self.cols)?;
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
                writeln!(f, "  {}", cells.join(" "))?;
            }
            write!(f, "]")
        } else {
            write!(f, "IntMatrix {}×{} ({} nonzero)", self.rows, self.cols, self.nnz())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_dense(&[vec![1, 2], vec![0, -1], vec![3, 0]]);
        let b = IntMatrix::from_dense(&[vec![2, 0, 1], vec![1, 1, 0]]);
        let ab = &a * &b;
        assert_eq!(ab, IntMatrix::from_dense(&[vec![4, 2, 1], vec![-1, -1, 0], vec![6, 0, 3]]));
        assert_eq!((&a * &b).transpose(), &b.transpose() * &a.transpose());
    }

    #[test]
    fn duplicates_sum_and_cancel() {
        let m = IntMatrix::from_triples(2, 1, [(0, 0, BigInt::from(1)), (0, 0, BigInt::from(-1)), (1, 0, BigInt::from(2))]).unwrap();
        assert_eq!(m.column(0), &[(1, BigInt::from(2))]);
    }

    #[test]
    fn blocks() {
        let i = IntMatrix::identity(2);
        let z = IntMatrix::from_dense(&[vec![5], vec![6]]);
        let m = IntMatrix::block(&[2], &[2, 1], &[vec![Some(&i), Some(&z)]]).unwrap();
        assert_eq!(m, IntMatrix::from_dense(&[vec![1, 0, 5], vec![0, 1, 6]]));
    }

    #[test]
    fn shape_errors() {
        let a = IntMatrix::zero(2, 3);
        assert!(a.checked_mul(&a).is_err());
        assert!(a.checked_add(&IntMatrix::zero(3, 2)).is_err());
    }
}
