//! Seeded random semi-simplicial and simplicial sets of small size.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::sset::{SemiSimplicialSet, SimplexRef, SimplicialSet};

/// Bounds for the random generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomShape {
    pub max_dim: usize,
    /// Upper bound on the number of (non-degenerate) simplices per level.
    pub max_per_level: usize,
}

impl Default for RandomShape {
    fn default() -> Self {
        Self { max_dim: 3, max_per_level: 5 }
    }
}

/// A random face tuple `(x_0, …, x_q)` with `d_i x_j = d_{j−1} x_i` for `i < j`.
fn random_boundary(rng: &mut ChaCha8Rng, size: usize, q: usize, face: &dyn Fn(usize, usize) -> usize) -> Option<Vec<usize>> {
    fn extend(
        rng: &mut ChaCha8Rng,
        size: usize,
        q: usize,
        face: &dyn Fn(usize, usize) -> usize,
        cur: &mut Vec<usize>,
    ) -> bool {
        let j = cur.len();
        if j == q + 1 {
            return true;
        }
        let mut candidates: Vec<usize> = (0..size).collect();
        candidates.shuffle(rng);
        for x in candidates {
            if q >= 2 && (0..j).any(|i| face(i, x) != face(j - 1, cur[i])) {
                continue;
            }
            cur.push(x);
            if extend(rng, size, q, face, cur) {
                return true;
            }
            cur.pop();
        }
        false
    }
    if size == 0 {
        return None;
    }
    let mut cur = Vec::with_capacity(q + 1);
    extend(rng, size, q, face, &mut cur).then_some(cur)
}

/// A random finite semi-simplicial set; the same seed always gives the same set.
pub fn random_semi_simplicial(seed: u64, shape: RandomShape) -> SemiSimplicialSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sizes = vec![rng.gen_range(1..=shape.max_per_level.max(1))];
    let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for q in 1..=shape.max_dim {
        let want = rng.gen_range(0..=shape.max_per_level);
        let mut level: Vec<Vec<usize>> = vec![Vec::new(); q + 1];
        for _ in 0..want {
            let prev = &faces;
            let lookup = |i: usize, x: usize| prev[q - 1][i][x];
            let Some(t) = random_boundary(&mut rng, sizes[q - 1], q, &lookup) else { break };
            for (i, x) in t.into_iter().enumerate() {
                level[i].push(x);
            }
        }
        let n = level[0].len();
        if n == 0 {
            break;
        }
        sizes.push(n);
        faces.push(level);
    }
    SemiSimplicialSet::new(sizes, faces, None).expect("random faces satisfy the identities by construction")
}

/// A random finite simplicial set whose generator faces may be degenerate.
pub fn random_simplicial(seed: u64, shape: RandomShape) -> SimplicialSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![rng.gen_range(1..=shape.max_per_level.max(1))];
    let mut gen_faces: Vec<Vec<Vec<SimplexRef>>> = vec![vec![Vec::new(); counts[0]]];
    for q in 1..=shape.max_dim {
        let current = SimplicialSet::new(counts.clone(), gen_faces.clone(), None).expect("built generator by generator");
        let e = current.enumerate(q - 1);
        let refs = e.simplices.as_ref().expect("enumerated from generators")[q - 1].clone();
        let want = rng.gen_range(0..=shape.max_per_level);
        let mut level = Vec::new();
        for _ in 0..want {
            let lookup = |i: usize, x: usize| e.sset.face(q - 1, i, x);
            let Some(t) = random_boundary(&mut rng, refs.len(), q, &lookup) else { break };
            level.push(t.into_iter().map(|x| refs[x].clone()).collect());
        }
        if level.is_empty() {
            break;
        }
        counts.push(level.len());
        gen_faces.push(level);
    }
    SimplicialSet::new(counts, gen_faces, None).expect("random faces satisfy the identities by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        for seed in 0..30 {
            let x = random_semi_simplicial(seed, RandomShape::default());
            assert_eq!(x, random_semi_simplicial(seed, RandomShape::default()));
            assert!(x.validate().valid);
            assert!(x.sizes().iter().all(|&n| n <= 5));
            assert!(x.sizes().len() <= 4);
            let y = random_simplicial(seed, RandomShape::default());
            assert_eq!(y, random_simplicial(seed, RandomShape::default()));
            y.validate(4).unwrap();
        }
    }

    #[test]
    fn some_have_degenerate_faces() {
        let any = (0..30).any(|s| {
            let y = random_simplicial(s, RandomShape::default());
            (1..y.generator_counts().len()).any(|q| (0..y.generator_count(q)).any(|g| y.generator_faces(q, g).iter().any(|r| r.is_degenerate())))
        });
        assert!(any);
    }
}
