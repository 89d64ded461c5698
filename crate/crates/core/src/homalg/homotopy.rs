//! Chain homotopies induced by simplicial certificates.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::homalg::complex::{ChainComplex, Ring};
use crate::homalg::map::{signed_tables, unit_sign, ChainHomotopy, ChainMap};
use crate::homalg::matrix::IntMatrix;
use crate::sset::HomotopyCertificate;

/// A chain homotopy `P` with `∂P + P∂ = to − from`, already verified.
#[derive(Clone, Debug)]
pub struct CertifiedHomotopy {
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub from: ChainMap,
    pub to: ChainMap,
    pub homotopy: ChainHomotopy,
    /// Degrees in which the identity was checked.
    pub verified_through: usize,
}

/// Turns a valid certificate into a chain homotopy and checks it exactly.
///
/// * extra degeneracies give a contraction of the augmented complex,
///   `∂P + P∂ = id`;
/// * a nullhomotopy gives `∂P + P∂ = f − c` with `c` the constant map to `y0`;
/// * a homotopy gives `∂P + P∂ = g − f`.
pub fn chain_homotopy_from_certificate(c: &HomotopyCertificate, ring: Ring) -> Result<CertifiedHomotopy> {
    let report = c.check()?;
    if !report.valid {
        let first = &report.failures[0];
        return Err(Error::Identity(format!("certificate fails {} at degree {} simplex {}", first.identity, first.degree, first.simplex)));
    }
    let (source, target, from, to, maps) = match c {
        HomotopyCertificate::ExtraDegeneracy { last, space, base, augmentation, maps } => {
            let eps = IntMatrix::from_function(*base, augmentation);
            let aug = ChainComplex::unnormalized(space, ring).augmented(*base, &eps)?;
            let p = maps
                .iter()
                .enumerate()
                .map(|(k, t)| {
                    let rows = space.size(k);
                    let s = if *last { unit_sign(k) } else { BigInt::from(1) };
                    signed_tables(rows, t.len(), &[(s, t)])
                })
                .collect();
            let id = ChainMap::identity(&aug);
            let zero = ChainMap::zero(&aug, &aug);
            (aug.clone(), aug, zero, id, p)
        }
        HomotopyCertificate::Nullhomotopy { source, target, f, y0, maps } => {
            let cs = ChainComplex::unnormalized(source, ring);
            let ct = ChainComplex::unnormalized(target, ring);
            let fm = ChainMap::induced(f, source, target)?;
            let mut constant = ChainMap::zero(&cs, &ct).maps().to_vec();
            if !constant.is_empty() {
                constant[0] = IntMatrix::from_function(target.size(0), &vec![*y0; source.size(0)]);
            }
            let p = maps.iter().enumerate().map(|(k, t)| signed_tables(target.size(k + 1), t.len(), &[(unit_sign(k + 1), t)])).collect();
            (cs, ct, ChainMap::new(constant), fm, p)
        }
        HomotopyCertificate::Homotopy { source, target, f, g, maps } => {
            let cs = ChainComplex::unnormalized(source, ring);
            let ct = ChainComplex::unnormalized(target, ring);
            let fm = ChainMap::induced(f, source, target)?;
            let gm = ChainMap::induced(g, source, target)?;
            let p = maps
                .iter()
                .enumerate()
                .map(|(k, family)| {
                    let terms: Vec<(BigInt, &[usize])> = family.iter().enumerate().map(|(i, t)| (unit_sign(i + 1), t.as_slice())).collect();
                    signed_tables(target.size(k + 1), source.size(k), &terms)
                })
                .collect();
            (cs, ct, fm, gm, p)
        }
    };
    let homotopy = ChainHomotopy { maps };
    let through = verification_range(&homotopy, &source, &target);
    let Some(through) = through else {
        return Err(Error::Truncated("the certificate covers no degree".into()));
    };
    homotopy.verify(&from, &to, &source, &target, through)?;
    Ok(CertifiedHomotopy { source, target, from, to, homotopy, verified_through: through })
}

/// The largest `d` such that `P_0..P_d` and `∂_{d+1}` of the target are known.
fn verification_range(p: &ChainHomotopy, src: &ChainComplex, tgt: &ChainComplex) -> Option<usize> {
    let by_maps = p.maps.len().checked_sub(1)?;
    let by_target = match tgt.truncated_at() {
        Some(n) => n.checked_sub(1)?,
        None => usize::MAX,
    };
    let by_source = match src.truncated_at() {
        Some(n) => n,
        None => usize::MAX,
    };
    Some(by_maps.min(by_target).min(by_source))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{SSetMap, SemiSimplicialSet};

    fn interval_contraction() -> HomotopyCertificate {
        // ∇¹ deformed onto vertex 1 by the edge
        let x = SemiSimplicialSet::standard(1);
        HomotopyCertificate::Nullhomotopy {
            source: SemiSimplicialSet::point(),
            target: x,
            f: SSetMap::new(vec![vec![0]]),
            y0: 1,
            maps: vec![vec![0]],
        }
    }

    #[test]
    fn nullhomotopy_gives_identity() {
        let h = chain_homotopy_from_certificate(&interval_contraction(), Ring::Z).unwrap();
        assert_eq!(h.verified_through, 0);
        assert_eq!(h.homotopy.maps[0].to_dense_i64().unwrap(), vec![vec![-1]]);
    }
}
