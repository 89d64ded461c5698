//! Dense linear algebra over prime fields and the rationals.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::homalg::complex::Ring;
use crate::homalg::snf::{inverse_mod, mul_mod};

pub trait Field: Clone + Debug {
    type E: Clone + PartialEq + Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn from_int(&self, a: &BigInt) -> Self::E;
    fn ring(&self) -> Ring;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField(pub u64);

impl Field for PrimeField {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.0 as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.add(a, &(self.0 - b) )
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.0)
    }
    fn inv(&self, a: &u64) -> u64 {
        inverse_mod(*a, self.0)
    }
    fn from_int(&self, a: &BigInt) -> u64 {
        u64::try_from(&a.mod_floor(&BigInt::from(self.0))).expect("reduced")
    }
    fn ring(&self) -> Ring {
        Ring::Fp(self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn from_int(&self, a: &BigInt) -> BigRational {
        BigRational::from_integer(a.clone())
    }
    fn ring(&self) -> Ring {
        Ring::Q
    }
}

/// A growing list of linearly independent vectors in echelon form.
///
/// Each stored row remembers how it is written in terms of the vectors
/// accepted so far, so [`EchelonBasis::express`] returns coordinates with
/// respect to the accepted vectors in insertion order.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F: Field> {
    field: F,
    dim: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<F::E>>,
    combos: Vec<Vec<F::E>>,
    accepted: usize,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(field: F, dim: usize) -> Self {
        Self { field, dim, pivots: Vec::new(), rows: Vec::new(), combos: Vec::new(), accepted: 0 }
    }

    pub fn len(&self) -> usize {
        self.accepted
    }

    pub fn is_empty(&self) -> bool {
        self.accepted == 0
    }

    /// Reduces `v` against the stored rows; returns the residual and the
    /// combination of accepted vectors that was subtracted.
    fn reduce(&self, v: &[F::E]) -> (Vec<F::E>, Vec<F::E>) {
        let f = &self.field;
        let mut r = v.to_vec();
        let mut c = vec![f.zero(); self.accepted];
        for (k, &pv) in self.pivots.iter().enumerate() {
            if f.is_zero(&r[pv]) {
                continue;
            }
            let a = r[pv].clone();
            for (x, y) in r.iter_mut().zip(&self.rows[k]) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&a, y));
                }
            }
            for (x, y) in c.iter_mut().zip(&self.combos[k]) {
                if !f.is_zero(y) {
                    *x = f.add(x, &f.mul(&a, y));
                }
            }
        }
        (r, c)
    }

    /// Adds `v` if it is independent of the accepted vectors.
    pub fn insert(&mut self, v: &[F::E]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let f = self.field.clone();
        let (mut r, c) = self.reduce(v);
        let Some(pv) = r.iter().position(|x| !f.is_zero(x)) else { return false };
        let inv = f.inv(&r[pv]);
        for x in r.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // the new row is (v − Σ c_i a_i) / r[pv]
        let mut combo: Vec<F::E> = c.iter().map(|x| f.mul(&f.sub(&f.zero(), x), &inv)).collect();
        combo.push(inv.clone());
        for existing in &mut self.combos {
            existing.push(f.zero());
        }
        // keep rows fully reduced so reduction order does not matter
        for k in 0..self.rows.len() {
            let a = self.rows[k][pv].clone();
            if f.is_zero(&a) {
                continue;
            }
            for (x, y) in self.rows[k].iter_mut().zip(&r) {
                *x = f.sub(x, &f.mul(&a, y));
            }
            for (x, y) in self.combos[k].iter_mut().zip(&combo) {
                *x = f.sub(x, &f.mul(&a, y));
            }
        }
        self.pivots.push(pv);
        self.rows.push(r);
        self.combos.push(combo);
        self.accepted += 1;
        true
    }

    pub fn contains(&self, v: &[F::E]) -> bool {
        self.reduce(v).0.iter().all(|x| self.field.is_zero(x))
    }

    /// Coordinates of `v` in the accepted vectors, if `v` lies in their span.
    pub fn express(&self, v: &[F::E]) -> Option<Vec<F::E>> {
        let (r, c) = self.reduce(v);
        r.iter().all(|x| self.field.is_zero(x)).then_some(c)
    }
}

/// A dense matrix stored as a list of columns.
pub type Columns<E> = Vec<Vec<E>>;

/// Basis of `{x : A x = 0}` for `A` given by its columns over a space of dimension `rows`.
pub fn kernel<F: Field>(field: &F, rows: usize, a: &Columns<F::E>) -> Columns<F::E> {
    let n = a.len();
    // row-reduce A^T augmented with the identity: dependencies among columns
    let mut basis = EchelonBasis::new(field.clone(), rows);
    let mut out = Vec::new();
    let mut kept = Vec::new();
    for (j, col) in a.iter().enumerate() {
        match basis.express(col) {
            Some(c) => {
                let mut v = vec![field.zero(); n];
                v[j] = field.one();
                for (k, &idx) in kept.iter().enumerate() {
                    let idx: usize = idx;
                    v[idx] = field.sub(&v[idx], &c[k]);
                }
                out.push(v);
            }
            None => {
                basis.insert(col);
                kept.push(j);
            }
        }
    }
    out
}

pub fn rank<F: Field>(field: &F, rows: usize, a: &Columns<F::E>) -> usize {
    let mut b = EchelonBasis::new(field.clone(), rows);
    a.iter().filter(|c| b.insert(c)).count()
}

/// `A x` for column-stored `A`.
pub fn apply<F: Field>(field: &F, rows: usize, a: &Columns<F::E>, x: &[F::E]) -> Vec<F::E> {
    let mut out = vec![field.zero(); rows];
    for (col, xi) in a.iter().zip(x) {
        if field.is_zero(xi) {
            continue;
        }
        for (o, v) in out.iter_mut().zip(col) {
            if !field.is_zero(v) {
                *o = field.add(o, &field.mul(v, xi));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_one() {
        let f = PrimeField(5);
        let a = vec![vec![1, 2], vec![2, 4], vec![0, 0]];
        let k = kernel(&f, 2, &a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(apply(&f, 2, &a, v).iter().all(|x| *x == 0));
        }
        assert_eq!(rank(&f, 2, &a), 1);
    }

    #[test]
    fn express_in_accepted_vectors() {
        let f = Rationals;
        let q = |n: i64| BigRational::from_integer(n.into());
        let mut b = EchelonBasis::new(f, 3);
        assert!(b.insert(&[q(0), q(1), q(1)]));
        assert!(b.insert(&[q(1), q(1), q(0)]));
        assert!(!b.insert(&[q(1), q(2), q(1)]));
        assert_eq!(b.express(&[q(2), q(5), q(3)]).unwrap(), vec![q(3), q(2)]);
        assert!(b.express(&[q(0), q(0), q(1)]).is_none());
    }
}
