//! Comparison baselines: per-field Huffman codes and naive fixed-length
//! codes on the most probable elements.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::codebook::{canonical_prefix_from_lengths, Codebook, LengthVector};
use crate::codec::success_probability;
use crate::distribution::{ElementDistribution, EntryDistribution};
use crate::error::Result;
use crate::opt_shared::shared_success_probability;

#[derive(Debug, Clone)]
pub struct HuffmanResult {
    /// Non-decreasing, every element assigned.
    pub lengths: LengthVector,
    /// Expected codeword length in bits.
    pub expected_length: f64,
    pub code: Codebook,
}

#[derive(Debug, PartialEq)]
struct Node {
    weight: f64,
    // creation order: leaves first, by element index, then merges
    id: usize,
}

impl Eq for Node {}

impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .total_cmp(&other.weight)
            .then(self.id.cmp(&other.id))
    }
}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Classical two-lowest merge. On equal weights the earlier-created node is
/// merged first; leaves are created in element order. A single element gets
/// a one-bit codeword, as first-field codewords are never empty.
pub fn huffman(dist: &ElementDistribution) -> HuffmanResult {
    let n = dist.len();
    let mut parent = vec![usize::MAX; n];
    let mut heap: BinaryHeap<Reverse<Node>> = dist
        .probs()
        .iter()
        .enumerate()
        .map(|(id, &weight)| Reverse(Node { weight, id }))
        .collect();
    while heap.len() > 1 {
        let Reverse(x) = heap.pop().expect("two nodes");
        let Reverse(y) = heap.pop().expect("two nodes");
        let id = parent.len();
        parent.push(usize::MAX);
        parent[x.id] = id;
        parent[y.id] = id;
        heap.push(Reverse(Node {
            weight: x.weight + y.weight,
            id,
        }));
    }

    let mut depths: Vec<u32> = (0..n)
        .map(|leaf| {
            let mut depth = 0;
            let mut node = leaf;
            while parent[node] != usize::MAX {
                node = parent[node];
                depth += 1;
            }
            depth
        })
        .collect();
    if n == 1 {
        depths[0] = 1;
    }
    depths.sort_unstable();
    let expected_length = depths
        .iter()
        .zip(dist.probs())
        .map(|(&l, &p)| p * l as f64)
        .sum();
    let lengths = LengthVector::from_lengths(&depths);
    let code = canonical_prefix_from_lengths(&lengths).expect("Huffman lengths satisfy Kraft");
    HuffmanResult {
        lengths,
        expected_length,
        code,
    }
}

/// Success of independent per-field Huffman codes.
pub fn huffman_pair_success(dist: &EntryDistribution, width: u32) -> Result<f64> {
    success_probability(
        &huffman(&dist.first).lengths,
        &huffman(&dist.second).lengths,
        dist,
        width,
    )
}

/// Success of one Huffman code used for both fields.
pub fn huffman_shared_success(dist: &ElementDistribution, width: u32) -> Result<f64> {
    shared_success_probability(&huffman(dist).lengths, dist, width)
}

/// Lengths `len` on the `2^len` most probable elements, nothing elsewhere.
pub fn top_fixed_lengths(n: usize, len: u32) -> LengthVector {
    let covered = if len >= usize::BITS - 1 {
        n
    } else {
        n.min(1 << len)
    };
    LengthVector::with_tail(&vec![len; covered], n)
}

/// Two fixed-length codes splitting the word into `floor(L/2)` and
/// `ceil(L/2)` bits.
pub fn naive_fixed_pair(dist: &EntryDistribution, width: u32) -> (LengthVector, LengthVector) {
    (
        top_fixed_lengths(dist.first.len(), width / 2),
        top_fixed_lengths(dist.second.len(), width - width / 2),
    )
}

pub fn naive_fixed_pair_success(dist: &EntryDistribution, width: u32) -> Result<f64> {
    let (l1, l2) = naive_fixed_pair(dist, width);
    success_probability(&l1, &l2, dist, width)
}

/// One fixed-length code of `floor(L/2)` bits shared by both fields.
pub fn naive_fixed_shared_success(dist: &ElementDistribution, width: u32) -> Result<f64> {
    shared_success_probability(&top_fixed_lengths(dist.len(), width / 2), dist, width)
}
