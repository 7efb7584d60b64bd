//! Constructive shortest generator words: breadth-first search over the
//! Cayley graph of SL2(Z/NZ) under right multiplication by the N
//! generators, plus the exact group-size formula used as its oracle.
//!
//! BFS discovers each element at its shortest word length, and because
//! parents leave the queue in lexicographic order and children are
//! generated in letter order, the first word found is also the
//! lexicographically smallest among the shortest.

use std::collections::HashMap;

use crate::error::SlError;
use crate::ring::{sl2_order_mod, Ring};
use crate::sl2::Mat2;
use crate::word::Word;

/// Full-coverage report for one modulus: every element reached, at which
/// distance, and the per-length histogram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyCoverReport {
    pub modulus: u64,
    pub group_size: u64,
    pub reached: u64,
    /// Distance of the farthest element from the identity.
    pub max_word_length: u32,
    /// Entry k counts the elements whose shortest word has length k.
    pub per_length_counts: Vec<u64>,
}

/// Default cap on the group size a search may expand.
pub const DEFAULT_BFS_BUDGET: u64 = 1_000_000;

/// |SL2(Z/NZ)| = N^3 * prod over primes p | N of (1 - 1/p^2), exactly.
pub fn sl2_size(n: u64) -> Result<u64, SlError> {
    if n < 2 {
        return Err(SlError::InvalidModulus(n));
    }
    u64::try_from(sl2_order_mod(n)).map_err(|_| SlError::Overflow)
}

struct SearchNode {
    key: [u64; 4],
    parent: u32,
    letter: u64,
    depth: u32,
}

/// BFS from the identity; stops early once `target` is found (if given).
/// Returns the node list and the index of the target when found.
fn bfs(ring: &Ring, target: Option<[u64; 4]>) -> (Vec<SearchNode>, Option<u32>) {
    let id = Mat2::identity(ring);
    let gens: Vec<Mat2> = ring
        .elements()
        .map(|alpha| Mat2::generator(ring, alpha))
        .collect();
    let mut nodes = vec![SearchNode {
        key: id.key(),
        parent: u32::MAX,
        letter: 0,
        depth: 0,
    }];
    let mut index: HashMap<[u64; 4], u32> = HashMap::new();
    index.insert(id.key(), 0);
    let mut mats = vec![id];
    if target == Some(nodes[0].key) {
        return (nodes, Some(0));
    }
    let mut cursor = 0usize;
    while cursor < nodes.len() {
        let depth = nodes[cursor].depth;
        let current = mats[cursor].clone();
        for (letter, g) in gens.iter().enumerate() {
            let child = &current * g;
            let key = child.key();
            if index.contains_key(&key) {
                continue;
            }
            let idx = nodes.len() as u32;
            index.insert(key, idx);
            nodes.push(SearchNode {
                key,
                parent: cursor as u32,
                letter: letter as u64,
                depth: depth + 1,
            });
            mats.push(child);
            if target == Some(key) {
                return (nodes, Some(idx));
            }
        }
        cursor += 1;
    }
    (nodes, None)
}

fn word_to(ring: &Ring, nodes: &[SearchNode], mut idx: u32) -> Word {
    let mut letters = Vec::new();
    while idx != 0 {
        let node = &nodes[idx as usize];
        letters.push(ring.elem(node.letter).expect("generator letter"));
        idx = node.parent;
    }
    letters.reverse();
    Word::new(ring, letters).expect("canonical letters")
}

/// A word of minimal length mapping to the given matrix, lexicographically
/// smallest among the minimal ones; the identity yields the empty word.
/// Coverage of the whole group is guaranteed, so a miss is a broken
/// invariant rather than an error.
pub fn find_word(m: &Mat2) -> Result<Word, SlError> {
    let ring = m.ring();
    if !ring.is_integers_mod() {
        return Err(SlError::NotIntegersMod);
    }
    let (nodes, found) = bfs(ring, Some(m.key()));
    let idx = found.expect("generators cover the whole group");
    Ok(word_to(ring, &nodes, idx))
}

/// Exhaust the Cayley graph of SL2(Z/NZ) and report coverage, diameter,
/// and the per-length histogram. The group size is checked against the
/// budget before any expansion.
pub fn cayley_cover(n: u64, budget: u64) -> Result<CayleyCoverReport, SlError> {
    let group_size = sl2_size(n)?;
    if group_size > budget {
        return Err(SlError::BudgetExceeded {
            needed: group_size,
            budget,
        });
    }
    let ring = Ring::integers_mod(n)?;
    let (nodes, _) = bfs(&ring, None);
    let max_word_length = nodes.iter().map(|s| s.depth).max().unwrap_or(0);
    let mut per_length_counts = vec![0u64; max_word_length as usize + 1];
    for node in &nodes {
        per_length_counts[node.depth as usize] += 1;
    }
    Ok(CayleyCoverReport {
        modulus: n,
        group_size,
        reached: nodes.len() as u64,
        max_word_length,
        per_length_counts,
    })
}
