//! Seeded random split systems for sweeps, benches and `check --random`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::BitSet;
use crate::splits::{GroundSet, Split, SplitSystem, Subset};

pub type SweepRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SweepRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Ground set `{1..n}`; labels sort lexicographically, so `10` precedes `2`.
pub fn numbered_ground(n: usize) -> GroundSet {
    GroundSet::new((1..=n).map(|i| i.to_string())).expect("n >= 2")
}

/// Number of distinct splits of an `n`-set.
pub fn max_split_count(n: usize) -> usize {
    if n >= 64 {
        usize::MAX
    } else {
        (1usize << (n - 1)) - 1
    }
}

fn random_part(rng: &mut impl Rng, n: usize) -> Subset {
    loop {
        let mut bits = BitSet::new(n);
        for i in 0..n {
            if rng.random_bool(0.5) {
                bits.insert(i);
            }
        }
        let c = bits.count();
        if c > 0 && c < n {
            return Subset::from_bits(bits);
        }
    }
}

fn push_new(parts: &mut Vec<Subset>, seen: &mut Vec<Split>, part: Subset) -> bool {
    let split = Split::new(part.clone()).expect("proper part");
    if seen.contains(&split) {
        return false;
    }
    seen.push(split);
    parts.push(part);
    true
}

/// Up to `m` distinct uniformly random splits on `n` elements.
pub fn random_system(rng: &mut impl Rng, n: usize, m: usize) -> SplitSystem {
    let ground = numbered_ground(n);
    let m = m.clamp(1, max_split_count(n));
    let (mut parts, mut seen) = (Vec::new(), Vec::new());
    while parts.len() < m {
        let p = random_part(rng, n);
        push_new(&mut parts, &mut seen, p);
    }
    SplitSystem::new(ground, parts).expect("distinct proper splits")
}

/// Pairwise-compatible splits, from a random laminar family of subsets
/// avoiding element 0. At most `2n - 3` splits exist, so `m` is clamped.
pub fn random_compatible(rng: &mut impl Rng, n: usize, m: usize) -> SplitSystem {
    let ground = numbered_ground(n);
    let m = m.clamp(1, 2 * n - 3);
    let (mut parts, mut seen) = (Vec::<Subset>::new(), Vec::new());
    let mut attempts = 0;
    while parts.len() < m && attempts < 10_000 {
        attempts += 1;
        let mut p = random_part(rng, n);
        if p.contains(0) {
            p = p.complement();
        }
        let laminar = parts
            .iter()
            .all(|q| !q.intersects(&p) || q.is_subset(&p) || p.is_subset(q));
        if laminar {
            push_new(&mut parts, &mut seen, p);
        }
    }
    SplitSystem::new(ground, parts).expect("distinct proper splits")
}

/// A system whose first two splits are incompatible (`n >= 4`), filled with
/// random splits up to `m`.
pub fn random_with_incompatible_pair(rng: &mut impl Rng, n: usize, m: usize) -> SplitSystem {
    assert!(n >= 4, "incompatible splits need at least 4 elements");
    let ground = numbered_ground(n);
    let m = m.clamp(2, max_split_count(n));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    // Two splits cutting a 2x2 grid of the first four shuffled elements.
    let mut s = vec![order[0], order[1]];
    let mut t = vec![order[0], order[2]];
    for &x in &order[4..] {
        if rng.random_bool(0.5) {
            s.push(x);
        }
        if rng.random_bool(0.5) {
            t.push(x);
        }
    }
    let (mut parts, mut seen) = (Vec::new(), Vec::new());
    push_new(&mut parts, &mut seen, Subset::from_indices(n, s));
    push_new(&mut parts, &mut seen, Subset::from_indices(n, t));
    while parts.len() < m {
        let p = random_part(rng, n);
        push_new(&mut parts, &mut seen, p);
    }
    SplitSystem::new(ground, parts).expect("distinct proper splits")
}

/// Mostly compatible splits with `extra` two-element parts mixed in. A
/// pair only crosses the tree splits on one path, so the vertex count stays
/// far below `2^m`.
pub fn sparse_system(rng: &mut impl Rng, n: usize, m: usize, extra: usize) -> SplitSystem {
    let base = random_compatible(rng, n, m.saturating_sub(extra));
    let mut parts: Vec<Subset> = base.splits().iter().map(|s| s.part_b().clone()).collect();
    let mut seen: Vec<Split> = base.splits().to_vec();
    let mut misses = 0;
    while parts.len() < m.min(max_split_count(n)) {
        let p = if n >= 3 && misses < 64 {
            let pair = rand::seq::index::sample(rng, n, 2);
            Subset::from_bits(BitSet::from_indices(n, pair.iter()))
        } else {
            random_part(rng, n)
        };
        if !push_new(&mut parts, &mut seen, p) {
            misses += 1;
        }
    }
    SplitSystem::new(base.ground().clone(), parts).expect("distinct proper splits")
}

/// Random `n` in `lo..=hi` and `m` in `1..=m_max`, for sweeps.
pub fn random_shape(rng: &mut impl Rng, lo: usize, hi: usize, m_max: usize) -> (usize, usize) {
    (rng.random_range(lo..=hi), rng.random_range(1..=m_max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_and_well_formed() {
        let a = random_system(&mut rng(7), 6, 5);
        let b = random_system(&mut rng(7), 6, 5);
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
        assert_eq!(random_system(&mut rng(1), 3, 10).len(), 3);
    }

    #[test]
    fn compatible_generator() {
        let mut r = rng(3);
        for _ in 0..50 {
            let s = random_compatible(&mut r, 7, 7);
            assert!(s.pairwise_compatible());
            assert_eq!(s.len(), 7);
        }
    }

    #[test]
    fn incompatible_generator() {
        let mut r = rng(4);
        for _ in 0..50 {
            let s = random_with_incompatible_pair(&mut r, 5, 4);
            assert!(!s.compatible(0, 1));
        }
    }

    #[test]
    fn sparse_generator() {
        let s = sparse_system(&mut rng(5), 14, 12, 2);
        assert_eq!(s.len(), 12);
        assert!(numbered_ground(10).label(1) == "10");
    }
}
