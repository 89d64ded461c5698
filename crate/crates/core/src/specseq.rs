//! The spectral sequence of a filtered double complex over a field.
//!
//! Pages are computed from the total complex with the filtration by columns
//! (or by rows): with `F_s` spanned by the summands of filtration `≤ s`,
//!
//! ```text
//! Z^r_s = F_s ∩ ∂⁻¹ F_{s−r}
//! E^r_s = Z^r_s / (Z^{r−1}_{s−1} + ∂ Z^{r−1}_{s+r−1})
//! ```
//!
//! and `d^r : E^r_s → E^r_{s−r}` is induced by `∂`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homalg::field::{apply, kernel, Columns, EchelonBasis, Field, PrimeField, Rationals};
use crate::homalg::{ChainComplex, DoubleComplex, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// Filter by the horizontal degree `p`.
    Columns,
    /// Filter by the vertical degree `q`.
    Rows,
}

impl std::str::FromStr for Orientation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "columns" | "cols" => Ok(Orientation::Columns),
            "rows" => Ok(Orientation::Rows),
            _ => Err(Error::Invalid(format!("unknown orientation {s:?}, expected columns or rows"))),
        }
    }
}

/// One spot of a page: position `(filtration, complementary degree)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spot {
    pub s: usize,
    pub t: usize,
    pub dim: usize,
    /// Representatives as vectors in the total complex, entries printed in the field.
    pub reps: Vec<Vec<String>>,
}

/// `d^r` from `(s, t)` to `(s − r, t + r − 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PageDifferential {
    pub from: (usize, usize),
    pub to: (usize, usize),
    pub rank: usize,
    /// `matrix[i][j]`: coordinate `i` of the image of representative `j`.
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SSPage {
    pub r: usize,
    pub orientation: Orientation,
    pub ring: Ring,
    pub spots: Vec<Spot>,
    pub differentials: Vec<PageDifferential>,
}

impl SSPage {
    pub fn dim(&self, s: usize, t: usize) -> usize {
        self.spots.iter().find(|x| x.s == s && x.t == t).map_or(0, |x| x.dim)
    }

    /// Nonzero dimensions keyed by position.
    pub fn dims(&self) -> BTreeMap<(usize, usize), usize> {
        self.spots.iter().filter(|x| x.dim > 0).map(|x| ((x.s, x.t), x.dim)).collect()
    }

    pub fn differential(&self, s: usize, t: usize) -> Option<&PageDifferential> {
        self.differentials.iter().find(|d| d.from == (s, t))
    }

    pub fn is_zero_differential(&self) -> bool {
        self.differentials.iter().all(|d| d.rank == 0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralSequence {
    pub orientation: Orientation,
    pub ring: Ring,
    /// Total degrees `0..=trusted_through` are computed.
    pub trusted_through: usize,
    pub stabilized: bool,
    pub pages: Vec<SSPage>,
}

impl SpectralSequence {
    pub fn last(&self) -> &SSPage {
        self.pages.last().expect("at least one page")
    }
}

/// Pages `E^0, …` up to `max_page` or until no later differential can be nonzero.
pub fn spectral_sequence(d: &DoubleComplex, orientation: Orientation, max_page: usize) -> Result<SpectralSequence> {
    match d.ring() {
        Ring::Z => Err(Error::Unsupported("spectral sequences are computed over fields; use q or f<p>".into())),
        Ring::Q => Engine::new(Rationals, d, orientation).run(max_page),
        Ring::Fp(p) => Engine::new(PrimeField(p), d, orientation).run(max_page),
    }
}

struct Engine<'a, F: Field> {
    field: F,
    dc: &'a DoubleComplex,
    tot: ChainComplex,
    orientation: Orientation,
    /// Filtration of each basis vector of `Tot_n`.
    filt: Vec<Vec<usize>>,
    /// `∂_n` as dense columns over the field.
    bd: Vec<Columns<F::E>>,
    top: usize,
}

impl<'a, F: Field> Engine<'a, F> {
    fn new(field: F, dc: &'a DoubleComplex, orientation: Orientation) -> Self {
        let tot = dc.total();
        let top = tot.trusted_through().unwrap_or(tot.top());
        let stored = tot.top();
        let filt = (0..=stored + 1)
            .map(|n| {
                let mut f = Vec::new();
                for (p, q, _) in dc.total_layout(n) {
                    let s = match orientation {
                        Orientation::Columns => p,
                        Orientation::Rows => q,
                    };
                    f.extend(std::iter::repeat(s).take(dc.rank(p, q)));
                }
                if n > stored {
                    f.clear();
                }
                f
            })
            .collect();
        let bd = (0..=stored + 1)
            .map(|n| {
                let m = tot.boundary(n);
                let rows = tot.rank(n.saturating_sub(1));
                m.columns()
                    .iter()
                    .map(|col| {
                        let mut v = vec![field.zero(); rows];
                        for (r, x) in col {
                            v[*r] = field.from_int(x);
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        Self { field, dc, tot, orientation, filt, bd, top }
    }

    fn dim(&self, n: usize) -> usize {
        self.filt.get(n).map_or(0, Vec::len)
    }

    /// `Z^r_s` in total degree `n`, for `r ≥ −1`.
    fn cycles(&self, n: usize, s: isize, r: isize) -> Columns<F::E> {
        if s < 0 {
            return Vec::new();
        }
        let dim = self.dim(n);
        let cols: Vec<usize> = (0..dim).filter(|&i| self.filt[n][i] as isize <= s).collect();
        if n == 0 {
            return cols.iter().map(|&i| unit(&self.field, dim, i)).collect();
        }
        let rows: Vec<usize> = (0..self.dim(n - 1)).filter(|&i| self.filt[n - 1][i] as isize > s - r).collect();
        let sub: Columns<F::E> = cols.iter().map(|&c| rows.iter().map(|&r| self.bd[n][c][r].clone()).collect()).collect();
        kernel(&self.field, rows.len(), &sub)
            .into_iter()
            .map(|k| {
                let mut v = vec![self.field.zero(); dim];
                for (x, &c) in k.into_iter().zip(&cols) {
                    v[c] = x;
                }
                v
            })
            .collect()
    }

    fn boundary(&self, n: usize, x: &[F::E]) -> Vec<F::E> {
        apply(&self.field, self.dim(n - 1), &self.bd[n], x)
    }

    /// Representatives of `E^r_s` in degree `n` and an echelon basis for coordinates.
    fn spot(&self, n: usize, s: usize, r: usize) -> (Columns<F::E>, EchelonBasis<F>, usize) {
        let (s, r) = (s as isize, r as isize);
        let z = self.cycles(n, s, r);
        let mut basis = EchelonBasis::new(self.field.clone(), self.dim(n));
        for v in self.cycles(n, s - 1, r - 1) {
            basis.insert(&v);
        }
        if n < self.bd.len() - 1 {
            for v in self.cycles(n + 1, s + r - 1, r - 1) {
                basis.insert(&self.boundary(n + 1, &v));
            }
        }
        let offset = basis.len();
        let reps = z.into_iter().filter(|v| basis.insert(v)).collect();
        (reps, basis, offset)
    }

    fn run(self, max_page: usize) -> Result<SpectralSequence> {
        let top = self.top;
        let max_s = top;
        let mut pages = Vec::new();
        let mut stabilized = false;
        for r in 0..=max_page {
            let mut spots = BTreeMap::new();
            for n in 0..=top {
                for s in 0..=n.min(max_s) {
                    spots.insert((n, s), self.spot(n, s, r));
                }
            }
            let mut differentials = Vec::new();
            for n in 1..=top {
                for s in r..=n {
                    let (reps, _, _) = &spots[&(n, s)];
                    let target = (n - 1, s - r);
                    let Some((treps, tbasis, toff)) = spots.get(&target) else { continue };
                    if reps.is_empty() || treps.is_empty() {
                        continue;
                    }
                    let cols: Vec<Vec<F::E>> = reps
                        .iter()
                        .map(|x| {
                            let y = self.boundary(n, x);
                            let c = tbasis.express(&y).expect("∂ of a representative lies in the target cycles");
                            c[*toff..].to_vec()
                        })
                        .collect();
                    let rank = crate::homalg::field::rank(&self.field, treps.len(), &cols);
                    let matrix = (0..treps.len()).map(|i| cols.iter().map(|c| show(&c[i])).collect()).collect();
                    differentials.push(PageDifferential {
                        from: (s, n - s),
                        to: (s - r, n - 1 - (s - r)),
                        rank,
                        matrix,
                    });
                }
            }
            let spots_out = spots
                .iter()
                .filter(|(_, v)| !v.0.is_empty())
                .map(|(&(n, s), v)| Spot { s, t: n - s, dim: v.0.len(), reps: v.0.iter().map(|x| x.iter().map(show).collect()).collect() })
                .collect();
            pages.push(SSPage { r, orientation: self.orientation, ring: self.field.ring(), spots: spots_out, differentials });
            // d^r lowers the filtration by r, and every spot has filtration ≤ top
            if r >= 1 && r > max_s {
                stabilized = true;
                break;
            }
        }
        let _ = (&self.dc, &self.tot);
        Ok(SpectralSequence { orientation: self.orientation, ring: self.field.ring(), trusted_through: top, stabilized, pages })
    }
}

fn unit<F: Field>(f: &F, dim: usize, i: usize) -> Vec<F::E> {
    let mut v = vec![f.zero(); dim];
    v[i] = f.one();
    v
}

fn show<E: std::fmt::Debug>(x: &E) -> String {
    let s = format!("{x:?}");
    // rationals print as Ratio { numer: .., denom: .. }; keep that readable
    s.replace("Ratio { numer: ", "").replace(", denom: ", "/").replace(" }", "")
}

/// Per total degree: `Σ_{s+t=n} dim E^∞_{s,t}` against `dim H_n(Tot)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvergenceReport {
    pub pass: bool,
    pub stabilized: bool,
    pub tallies: Vec<ConvergenceTally>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvergenceTally {
    pub degree: usize,
    pub page_total: usize,
    pub homology: usize,
}

pub fn check_convergence(ss: &SpectralSequence, tot: &ChainComplex) -> Result<ConvergenceReport> {
    let last = ss.last();
    let tot = tot.with_ring(ss.ring);
    let mut tallies = Vec::new();
    for n in 0..=ss.trusted_through {
        let page_total = last.spots.iter().filter(|x| x.s + x.t == n).map(|x| x.dim).sum();
        let homology = tot.homology(n)?.group.rank;
        tallies.push(ConvergenceTally { degree: n, page_total, homology });
    }
    let pass = ss.stabilized && tallies.iter().all(|t| t.page_total == t.homology);
    Ok(ConvergenceReport { pass, stabilized: ss.stabilized, tallies })
}

/// Structural checks of computed pages against the double complex itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PageAudit {
    /// E¹ is the homology of the columns (or rows) and `d¹` is induced by
    /// `dh` (or `± dv`) on those classes.
    pub first_page: bool,
    pub squares_zero: bool,
    /// `dim E^{r+1} = dim ker d^r − dim im d^r` at every spot below the top
    /// computed degree, and `≤` in the top degree.
    pub dims_follow_ranks: bool,
    pub monotone: bool,
    pub problems: Vec<String>,
}

impl PageAudit {
    pub fn pass(&self) -> bool {
        self.first_page && self.squares_zero && self.dims_follow_ranks && self.monotone
    }
}

pub fn audit_pages(ss: &SpectralSequence, d: &DoubleComplex) -> Result<PageAudit> {
    match ss.ring {
        Ring::Z => Err(Error::Unsupported("pages are computed over fields".into())),
        Ring::Q => Ok(audit_with(Rationals, ss, d)),
        Ring::Fp(p) => Ok(audit_with(PrimeField(p), ss, d)),
    }
}

fn parse<F: Field>(f: &F, s: &str) -> F::E {
    let q: num_rational::BigRational = s.parse().expect("entries are printed as fractions or integers");
    f.mul(&f.from_int(q.numer()), &f.inv(&f.from_int(q.denom())))
}

fn field_columns<F: Field>(f: &F, m: &crate::homalg::IntMatrix, sign: bool) -> Columns<F::E> {
    m.columns()
        .iter()
        .map(|col| {
            let mut v = vec![f.zero(); m.rows()];
            for (r, x) in col {
                v[*r] = if sign { f.from_int(&-x) } else { f.from_int(x) };
            }
            v
        })
        .collect()
}

fn audit_with<F: Field>(f: F, ss: &SpectralSequence, d: &DoubleComplex) -> PageAudit {
    let mut problems = Vec::new();
    let rows = ss.orientation == Orientation::Rows;
    // bidegree (p, q) of filtration s and complementary degree t
    let at = |s: usize, t: usize| if rows { (t, s) } else { (s, t) };
    // the part of a total-degree vector lying in bidegree (p, q)
    let block = |v: &[F::E], p: usize, q: usize| -> Vec<F::E> {
        let (_, _, off) = d.total_layout(p + q).into_iter().find(|x| (x.0, x.1) == (p, q)).expect("bidegree in layout");
        v[off..off + d.rank(p, q)].to_vec()
    };
    // the differential inside the filtration quotient, and the one inducing d¹
    let inner = |p: usize, q: usize| -> Option<Columns<F::E>> {
        if rows {
            (p > 0).then(|| field_columns(&f, d.dh(p, q), false))
        } else {
            (q > 0).then(|| field_columns(&f, d.dv(p, q), false))
        }
    };
    let first = |p: usize, q: usize| -> Columns<F::E> {
        if rows {
            field_columns(&f, d.dv(p, q), p % 2 == 1)
        } else {
            field_columns(&f, d.dh(p, q), false)
        }
    };
    let in_range = |p: usize, q: usize| p < d.levels_h() && q < d.levels_v();
    let mut first_page = true;
    if let Some(e1) = ss.pages.get(1) {
        let reps = |s: usize, t: usize| -> Vec<Vec<F::E>> {
            let (p, q) = at(s, t);
            e1.spots
                .iter()
                .find(|x| (x.s, x.t) == (s, t))
                .map(|x| x.reps.iter().map(|v| block(&v.iter().map(|e| parse(&f, e)).collect::<Vec<_>>(), p, q)).collect())
                .unwrap_or_default()
        };
        // boundaries of the inner differential landing in (p, q)
        let inner_boundaries = |p: usize, q: usize| -> EchelonBasis<F> {
            let mut b = EchelonBasis::new(f.clone(), d.rank(p, q));
            let (sp, sq) = if rows { (p + 1, q) } else { (p, q + 1) };
            if in_range(sp, sq) {
                for c in inner(sp, sq).unwrap_or_default() {
                    b.insert(&c);
                }
            }
            b
        };
        for n in 0..=ss.trusted_through {
            for s in 0..=n {
                let t = n - s;
                let (p, q) = at(s, t);
                if !in_range(p, q) {
                    continue;
                }
                let here = reps(s, t);
                // E¹ dimension is the homology of the inner complex
                let line = if rows { d.row(q) } else { d.column(p) };
                let k = if rows { p } else { q };
                let expected = line.with_ring(ss.ring).homology(k).map(|h| h.group.rank).unwrap_or(usize::MAX);
                if here.len() != expected {
                    problems.push(format!("E¹ at ({s},{t}) has dimension {} but the inner homology has {expected}", here.len()));
                    first_page = false;
                }
                if let Some(m) = inner(p, q) {
                    let rows_out = if rows { d.rank(p - 1, q) } else { d.rank(p, q - 1) };
                    if here.iter().any(|c| apply(&f, rows_out, &m, c).iter().any(|x| !f.is_zero(x))) {
                        problems.push(format!("E¹ representative at ({s},{t}) is not an inner cycle"));
                        first_page = false;
                    }
                }
                let mut classes = inner_boundaries(p, q);
                if !here.iter().all(|c| classes.insert(c)) {
                    problems.push(format!("E¹ representatives at ({s},{t}) are dependent modulo boundaries"));
                    first_page = false;
                }
                if s == 0 || here.is_empty() {
                    continue;
                }
                let (tp, tq) = at(s - 1, t);
                let target = reps(s - 1, t);
                let map = first(p, q);
                let matrix = e1.differential(s, t).map(|x| x.matrix.clone()).unwrap_or_default();
                let bounds = inner_boundaries(tp, tq);
                for (j, c) in here.iter().enumerate() {
                    let mut y = apply(&f, d.rank(tp, tq), &map, c);
                    for (i, tr) in target.iter().enumerate() {
                        let a = parse(&f, &matrix[i][j]);
                        for (yk, tk) in y.iter_mut().zip(tr) {
                            *yk = f.sub(yk, &f.mul(&a, tk));
                        }
                    }
                    if !bounds.contains(&y) {
                        problems.push(format!("d¹ column {j} at ({s},{t}) disagrees with the induced map"));
                        first_page = false;
                    }
                }
            }
        }
    }
    let mut squares_zero = true;
    let mut dims_follow_ranks = true;
    let mut monotone = true;
    for (page, next) in ss.pages.iter().zip(ss.pages.iter().skip(1)) {
        let r = page.r;
        for dr in &page.differentials {
            let Some(after) = page.differential(dr.to.0, dr.to.1) else { continue };
            let rows_out = after.matrix.len();
            let a: Columns<F::E> = (0..after.matrix.first().map_or(0, Vec::len)).map(|j| (0..rows_out).map(|i| parse(&f, &after.matrix[i][j])).collect()).collect();
            for j in 0..dr.matrix.first().map_or(0, Vec::len) {
                let x: Vec<F::E> = dr.matrix.iter().map(|row| parse(&f, &row[j])).collect();
                if apply(&f, rows_out, &a, &x).iter().any(|v| !f.is_zero(v)) {
                    problems.push(format!("d^{r} ∘ d^{r} ≠ 0 from ({}, {})", dr.from.0, dr.from.1));
                    squares_zero = false;
                }
            }
        }
        let positions: std::collections::BTreeSet<(usize, usize)> = page.spots.iter().chain(&next.spots).map(|x| (x.s, x.t)).collect();
        for (s, t) in positions {
            let out = page.differential(s, t).map_or(0, |x| x.rank);
            let inc: usize = page.differentials.iter().filter(|x| x.to == (s, t)).map(|x| x.rank).sum();
            let (now, later) = (page.dim(s, t), next.dim(s, t));
            // differentials out of the first uncomputed degree are not recorded
            let exact = s + t < ss.trusted_through;
            if now < out + inc || (exact && later != now - out - inc) || later > now - out - inc {
                problems.push(format!("E^{} at ({s},{t}) has dimension {later}, expected {now} − {out} − {inc}", r + 1));
                dims_follow_ranks = false;
            }
            if later > now {
                monotone = false;
            }
        }
    }
    PageAudit { first_page, squares_zero, dims_follow_ranks, monotone, problems }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{BiSemiSimplicialSet, SemiSimplicialSet};

    fn square(ring: Ring) -> DoubleComplex {
        let i = SemiSimplicialSet::standard(1);
        DoubleComplex::from_bisset(&BiSemiSimplicialSet::exterior_product(&i, &i), ring)
    }

    #[test]
    fn square_over_f2() {
        let ss = spectral_sequence(&square(Ring::Fp(2)), Orientation::Columns, 5).unwrap();
        let e1 = &ss.pages[1];
        assert_eq!(e1.dims(), BTreeMap::from([((0, 0), 2), ((1, 0), 1)]));
        let e2 = &ss.pages[2];
        assert_eq!(e2.dims(), BTreeMap::from([((0, 0), 1)]));
        assert!(ss.stabilized);
        assert_eq!(ss.last().dims(), e2.dims());
    }

    #[test]
    fn integers_rejected() {
        assert!(spectral_sequence(&square(Ring::Z), Orientation::Columns, 3).is_err());
    }

    #[test]
    fn torus_over_q() {
        let c = SemiSimplicialSet::boundary(2).unwrap();
        let d = DoubleComplex::from_bisset(&BiSemiSimplicialSet::exterior_product(&c, &c), Ring::Q);
        for o in [Orientation::Columns, Orientation::Rows] {
            let ss = spectral_sequence(&d, o, 6).unwrap();
            assert_eq!(ss.pages[2].dims(), BTreeMap::from([((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 1)]));
            for page in &ss.pages[2..] {
                assert!(page.is_zero_differential());
            }
            let rep = check_convergence(&ss, &d.total()).unwrap();
            assert!(rep.pass);
            assert_eq!(rep.tallies.iter().map(|t| t.page_total).collect::<Vec<_>>(), vec![1, 2, 1]);
        }
    }

    #[test]
    fn audits_pass_in_both_orientations() {
        let c = SemiSimplicialSet::boundary(2).unwrap();
        let i = SemiSimplicialSet::standard(1);
        let cases = [
            DoubleComplex::from_bisset(&BiSemiSimplicialSet::exterior_product(&c, &c), Ring::Q),
            DoubleComplex::from_bisset(&BiSemiSimplicialSet::exterior_product(&c, &i), Ring::Fp(2)),
            DoubleComplex::from_bisset(&BiSemiSimplicialSet::exterior_product(&i, &c), Ring::Fp(3)),
            square(Ring::Fp(2)),
        ];
        for d in &cases {
            for o in [Orientation::Columns, Orientation::Rows] {
                let ss = spectral_sequence(d, o, 6).unwrap();
                let audit = audit_pages(&ss, d).unwrap();
                assert!(audit.pass(), "{o:?}: {:?}", audit.problems);
            }
        }
    }

    #[test]
    fn tampered_first_differential_is_caught() {
        let c = SemiSimplicialSet::boundary(2).unwrap();
        let d = DoubleComplex::from_bisset(&BiSemiSimplicialSet::exterior_product(&c, &SemiSimplicialSet::standard(1)), Ring::Q);
        let mut ss = spectral_sequence(&d, Orientation::Columns, 4).unwrap();
        let dif = ss.pages[1].differentials.iter_mut().find(|x| x.rank > 0).expect("a nonzero d¹");
        dif.matrix[0][0] = "5".into();
        assert!(!audit_pages(&ss, &d).unwrap().first_page);
    }
}
