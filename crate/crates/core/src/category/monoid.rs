//! Finite monoids, commutative presentations, actions and bar constructions.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::category::{Composite, FinNonUnitalCategory};
use crate::error::{identity, invalid, Error, Result};
use crate::homalg::{FPAbelianGroup, IntMatrix};
use crate::sset::{HomotopyCertificate, SemiSimplicialSet};

/// A finite monoid given by its multiplication table, `table[a][b] = a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinMonoid {
    table: Vec<Vec<usize>>,
    unit: usize,
}

impl FinMonoid {
    pub fn new(table: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(invalid!("a monoid has at least its unit"));
        }
        if unit >= n {
            return Err(invalid!("unit {unit} out of range"));
        }
        if let Some(r) = table.iter().position(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
            return Err(invalid!("row {r} of the multiplication table is malformed"));
        }
        for a in 0..n {
            if table[unit][a] != a || table[a][unit] != a {
                return Err(identity!("{unit} is not a two-sided unit at {a}"));
            }
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(identity!("associativity fails for ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(Self { table, unit })
    }

    /// `Z/n` written additively, unit `0`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self { table, unit: 0 }
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `{1, z}` with `z·z = z`; element `0` is the unit.
    pub fn absorbing() -> Self {
        Self { table: vec![vec![0, 1], vec![1, 1]], unit: 0 }
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.size()).find(|&b| self.table[a][b] == self.unit && self.table[b][a] == self.unit)
    }

    pub fn is_group(&self) -> bool {
        (0..self.size()).all(|a| self.inverse(a).is_some())
    }

    /// The one-object category with `m(f, g) = f·g` and the unit as identity.
    pub fn as_category(&self) -> FinNonUnitalCategory {
        let n = self.size();
        let composites: Vec<Composite> =
            (0..n).flat_map(|f| (0..n).map(move |g| (f, g))).map(|(f, g)| Composite { f, g, gf: self.table[f][g] }).collect();
        FinNonUnitalCategory::new(1, vec![(0, 0); n], &composites, Some(vec![self.unit])).expect("monoid axioms give a category")
    }

    pub fn nerve(&self, cutoff: usize) -> SemiSimplicialSet {
        self.as_category().nerve(cutoff)
    }

    /// The commutative presentation on all elements with `e_a + e_b ~ e_{ab}`.
    pub fn to_presentation(&self) -> MonoidPresentation {
        let n = self.size();
        let unitvec = |k: usize| {
            let mut v = vec![0u64; n];
            v[k] += 1;
            v
        };
        let mut relations = Vec::new();
        for a in 0..n {
            for b in a..n {
                let mut lhs = unitvec(a);
                lhs[b] += 1;
                relations.push((lhs, unitvec(self.table[a][b])));
            }
        }
        MonoidPresentation { generators: n, relations }
    }

    pub fn left_regular(&self) -> MonoidAction {
        MonoidAction { side: Side::Left, size: self.size(), table: self.table.clone() }
    }

    /// The action on a single point.
    pub fn point_action(&self, side: Side) -> MonoidAction {
        MonoidAction { side, size: 1, table: vec![vec![0]; self.size()] }
    }
}

/// A commutative monoid `N^k / (u_i ~ v_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidPresentation {
    pub generators: usize,
    pub relations: Vec<(Vec<u64>, Vec<u64>)>,
}

impl MonoidPresentation {
    pub fn new(generators: usize, relations: Vec<(Vec<u64>, Vec<u64>)>) -> Result<Self> {
        if let Some(k) = relations.iter().position(|(u, v)| u.len() != generators || v.len() != generators) {
            return Err(invalid!("relation {k} does not have {generators} exponents on each side"));
        }
        Ok(Self { generators, relations })
    }

    pub fn free(generators: usize) -> Self {
        Self { generators, relations: Vec::new() }
    }
}

/// The Grothendieck group of a commutative presentation: `Z^k / ⟨u_i − v_i⟩`.
pub fn grothendieck_group(m: &MonoidPresentation) -> FPAbelianGroup {
    let columns = m
        .relations
        .iter()
        .map(|(u, v)| (0..m.generators).map(|g| (g, BigInt::from(u[g]) - BigInt::from(v[g]))).collect())
        .collect();
    FPAbelianGroup::cokernel(&IntMatrix::from_columns(m.generators, columns).expect("relations have the generator count"))
}

/// The Grothendieck group of a commutative table monoid.
pub fn grothendieck_group_of_table(m: &FinMonoid) -> Result<FPAbelianGroup> {
    if !m.is_commutative() {
        return Err(Error::Unsupported("the group completion is computed for commutative monoids".into()));
    }
    Ok(grothendieck_group(&m.to_presentation()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
}

/// An action of a monoid on a finite set; `table[m][x]` is `m·x` (left) or `x·m` (right).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidAction {
    side: Side,
    size: usize,
    table: Vec<Vec<usize>>,
}

impl MonoidAction {
    pub fn new(m: &FinMonoid, side: Side, size: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        let a = Self { side, size, table };
        a.validate(m)?;
        Ok(a)
    }

    pub fn validate(&self, m: &FinMonoid) -> Result<()> {
        if self.table.len() != m.size() || self.table.iter().any(|r| r.len() != self.size || r.iter().any(|&v| v >= self.size)) {
            return Err(invalid!("action table must be {}×{} with entries below {}", m.size(), self.size, self.size));
        }
        for x in 0..self.size {
            if self.table[m.unit()][x] != x {
                return Err(identity!("the unit does not fix {x}"));
            }
            for a in 0..m.size() {
                for b in 0..m.size() {
                    let ok = match self.side {
                        Side::Left => self.table[a][self.table[b][x]] == self.table[m.mul(a, b)][x],
                        Side::Right => self.table[b][self.table[a][x]] == self.table[m.mul(a, b)][x],
                    };
                    if !ok {
                        return Err(identity!("action is not associative at ({a}, {b}, {x})"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn act(&self, m: usize, x: usize) -> usize {
        self.table[m][x]
    }
}

/// `B(Y, M, X)` through `cutoff`: level `p` is `Y × M^p × X` in lexicographic order.
pub fn bar_construction(y: &MonoidAction, m: &FinMonoid, x: &MonoidAction, cutoff: usize) -> Result<SemiSimplicialSet> {
    if y.side != Side::Right || x.side != Side::Left {
        return Err(invalid!("B(Y, M, X) needs a right action on Y and a left action on X"));
    }
    y.validate(m)?;
    x.validate(m)?;
    let n = m.size();
    let size = |p: usize| y.size * n.pow(p as u32) * x.size;
    let encode = |t: &[usize]| -> usize {
        // t = (y, m_1, …, m_p, x)
        let p = t.len() - 2;
        let mut k = t[0];
        for &mi in &t[1..=p] {
            k = k * n + mi;
        }
        k * x.size + t[p + 1]
    };
    let decode = |p: usize, mut k: usize| -> Vec<usize> {
        let mut t = vec![0; p + 2];
        t[p + 1] = k % x.size;
        k /= x.size;
        for i in (1..=p).rev() {
            t[i] = k % n;
            k /= n;
        }
        t[0] = k;
        t
    };
    let sizes: Vec<usize> = (0..=cutoff).map(size).collect();
    let mut faces = vec![Vec::new()];
    for p in 1..=cutoff {
        let mut level = vec![Vec::with_capacity(sizes[p]); p + 1];
        for k in 0..sizes[p] {
            let t = decode(p, k);
            for (i, table) in level.iter_mut().enumerate() {
                let mut d = t.clone();
                if i == 0 {
                    d[1] = y.act(t[1], t[0]);
                    d.remove(0);
                } else if i == p {
                    d[p + 1] = x.act(t[p], t[p + 1]);
                    d.remove(p);
                } else {
                    d[i] = m.mul(t[i], t[i + 1]);
                    d.remove(i + 1);
                }
                table.push(encode(&d));
            }
        }
        faces.push(level);
    }
    Ok(SemiSimplicialSet::from_parts_unchecked(sizes, faces, Some(cutoff)))
}

/// The extra degeneracy of `B(*, M, M)` over a point: `h_0(*) = e` and
/// `h(m_1, …, m_p, x) = (m_1, …, m_p, x, e)`.
pub fn bar_extra_degeneracy(m: &FinMonoid, cutoff: usize) -> Result<HomotopyCertificate> {
    let point = m.point_action(Side::Right);
    let space = bar_construction(&point, m, &m.left_regular(), cutoff)?;
    let n = m.size();
    let mut maps = vec![vec![m.unit()]];
    for k in 1..=cutoff {
        maps.push((0..space.size(k - 1)).map(|i| i * n + m.unit()).collect());
    }
    let augmentation = vec![0; space.size(0)];
    Ok(HomotopyCertificate::ExtraDegeneracy { last: true, space, base: 1, augmentation, maps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::{chain_homotopy_from_certificate, ChainComplex, Ring};

    #[test]
    fn bar_with_points_is_nerve() {
        let m = FinMonoid::cyclic(3);
        let b = bar_construction(&m.point_action(Side::Right), &m, &m.point_action(Side::Left), 4).unwrap();
        assert_eq!(b, m.nerve(4));
    }

    #[test]
    fn bar_sizes() {
        let m = FinMonoid::cyclic(2);
        let b = bar_construction(&m.point_action(Side::Right), &m, &m.left_regular(), 5).unwrap();
        assert_eq!(b.sizes(), &[2, 4, 8, 16, 32, 64]);
        assert!(b.validate().valid);
    }

    #[test]
    fn bar_contraction() {
        for m in [FinMonoid::cyclic(2), FinMonoid::cyclic(3), FinMonoid::absorbing(), FinMonoid::trivial()] {
            let c = bar_extra_degeneracy(&m, 5).unwrap();
            assert!(c.check().unwrap().valid);
            let h = chain_homotopy_from_certificate(&c, Ring::Z).unwrap();
            assert_eq!(h.verified_through, 5);
            assert!(h.source.is_acyclic_through(5).unwrap());
        }
    }

    #[test]
    fn group_completions() {
        assert_eq!(grothendieck_group(&MonoidPresentation::free(3)), FPAbelianGroup::free(3));
        let p = MonoidPresentation::new(2, vec![(vec![1, 0], vec![0, 1])]).unwrap();
        assert_eq!(grothendieck_group(&p), FPAbelianGroup::free(1));
        assert!(grothendieck_group_of_table(&FinMonoid::absorbing()).unwrap().is_trivial());
        assert_eq!(grothendieck_group_of_table(&FinMonoid::cyclic(6)).unwrap(), FPAbelianGroup::from_small(0, &[6]));
    }

    #[test]
    fn nerve_of_z2_homology() {
        let h = ChainComplex::unnormalized(&FinMonoid::cyclic(2).nerve(7), Ring::Z).homology_through(5).unwrap();
        let shown: Vec<String> = h.iter().map(|g| g.group.to_string()).collect();
        assert_eq!(shown, ["Z", "Z/2", "0", "Z/2", "0", "Z/2"]);
    }

    #[test]
    fn non_commutative_rejected() {
        let m = FinMonoid::new(vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]], 0).unwrap();
        assert!(!m.is_commutative());
        assert!(grothendieck_group_of_table(&m).is_err());
    }
}
