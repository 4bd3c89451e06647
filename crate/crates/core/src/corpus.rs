//! Seeded tree generation for tests and the `random` subcommand.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::tree::{BrauerTree, TreeDocument};

/// Random planar tree with `e` edges: each new vertex attaches to a random
/// existing vertex at a random position in its rotation; the exceptional
/// vertex is chosen uniformly.
pub fn random_tree(seed: u64, e: usize, multiplicity: u32) -> BrauerTree {
    assert!(e >= 1 && multiplicity >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rotations: Vec<Vec<String>> = vec![Vec::new()];
    let mut edges = BTreeMap::new();
    for k in 1..=e {
        let parent = rng.gen_range(0..rotations.len());
        let id = format!("E{k}");
        let pos = rng.gen_range(0..=rotations[parent].len());
        rotations[parent].insert(pos, id.clone());
        rotations.push(vec![id.clone()]);
        edges.insert(id, [format!("v{parent}"), format!("v{k}")]);
    }
    let exceptional = rng.gen_range(0..rotations.len());
    let vertices = rotations
        .into_iter()
        .enumerate()
        .map(|(v, rot)| (format!("v{v}"), rot))
        .collect();
    BrauerTree::from_document(TreeDocument {
        multiplicity: multiplicity as i64,
        exceptional: format!("v{exceptional}"),
        vertices,
        edges,
    })
    .expect("generated tree is valid")
}

/// Every star, and every line with every choice of exceptional vertex,
/// for `e <= max_e`, `m <= max_m`.
pub fn stars_and_lines(max_e: usize, max_m: u32) -> Vec<BrauerTree> {
    let mut out = Vec::new();
    for m in 1..=max_m {
        for e in 1..=max_e {
            out.push(BrauerTree::star(m, e));
            for position in 0..=e {
                out.push(BrauerTree::line(m, e, position));
            }
        }
    }
    out
}

/// `count` seeded random trees with `e` in `1..=max_e`, `m` in `1..=max_m`.
pub fn random_corpus(seed: u64, count: usize, max_e: usize, max_m: u32) -> Vec<BrauerTree> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let e = rng.gen_range(1..=max_e);
            let m = rng.gen_range(1..=max_m);
            random_tree(rng.gen(), e, m)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let a = random_tree(7, 9, 2);
        let b = random_tree(7, 9, 2);
        assert!(a.same_embedding(&b));
        assert_eq!(a.edge_count(), 9);
    }

    #[test]
    fn corpus_sizes() {
        // per (m, e): one star and e + 1 lines
        let trees = stars_and_lines(3, 2);
        assert_eq!(trees.len(), 2 * (2 + 3 + 4 + 3));
        assert_eq!(random_corpus(1, 5, 9, 3).len(), 5);
    }
}
