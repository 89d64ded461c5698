//! The Künneth formula on invariant factors, as an independent oracle for products.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::homalg::group::FPAbelianGroup;

/// `A ⊗ B` for finitely generated abelian groups.
pub fn tensor(a: &FPAbelianGroup, b: &FPAbelianGroup) -> FPAbelianGroup {
    let mut orders = Vec::new();
    for x in a.cyclic_orders() {
        for y in b.cyclic_orders() {
            // Z ⊗ Z/n = Z/n, Z/m ⊗ Z/n = Z/gcd
            orders.push(if x.is_zero() { y.clone() } else if y.is_zero() { x.clone() } else { x.gcd(&y) });
        }
    }
    FPAbelianGroup::from_cyclic(&orders)
}

/// `Tor(A, B)`; only torsion pairs contribute.
pub fn tor(a: &FPAbelianGroup, b: &FPAbelianGroup) -> FPAbelianGroup {
    let orders: Vec<BigUint> = a.torsion.iter().flat_map(|x| b.torsion.iter().map(move |y| x.gcd(y))).collect();
    FPAbelianGroup::from_cyclic(&orders)
}

/// `H_n(X × Y) = ⊕_{i+j=n} H_i ⊗ H_j ⊕ ⊕_{i+j=n−1} Tor(H_i, H_j)`.
///
/// Inputs list degrees `0, 1, …`; unlisted degrees are zero.
pub fn kunneth(hx: &[FPAbelianGroup], hy: &[FPAbelianGroup]) -> Vec<FPAbelianGroup> {
    if hx.is_empty() || hy.is_empty() {
        return Vec::new();
    }
    let top = hx.len() + hy.len() - 1;
    let mut out = vec![FPAbelianGroup::trivial(); top];
    for (i, a) in hx.iter().enumerate() {
        for (j, b) in hy.iter().enumerate() {
            out[i + j] = out[i + j].direct_sum(&tensor(a, b));
            if i + j + 1 < top {
                out[i + j + 1] = out[i + j + 1].direct_sum(&tor(a, b));
            }
        }
    }
    while out.len() > 1 && out.last().map_or(false, FPAbelianGroup::is_trivial) {
        out.pop();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(r: usize, t: &[u64]) -> FPAbelianGroup {
        FPAbelianGroup::from_small(r, t)
    }

    #[test]
    fn torus() {
        let s1 = [g(1, &[]), g(1, &[])];
        assert_eq!(kunneth(&s1, &s1), vec![g(1, &[]), g(2, &[]), g(1, &[])]);
    }

    #[test]
    fn projective_planes() {
        let rp2 = [g(1, &[]), g(0, &[2]), g(0, &[])];
        let h = kunneth(&rp2, &rp2);
        assert_eq!(h[1], g(0, &[2, 2]));
        assert_eq!(h[2], g(0, &[2]));
        assert_eq!(h[3], g(0, &[2]));
    }

    #[test]
    fn point_is_neutral() {
        let rp2 = [g(1, &[]), g(0, &[2])];
        assert_eq!(kunneth(&rp2, &[g(1, &[])]), rp2.to_vec());
    }
}
