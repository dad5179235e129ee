use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An ordered partition of `0..n` into nonempty blocks whose sizes differ by
/// at most one. A refinement also records the index of each block's parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equipartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
    parent: Option<Vec<usize>>,
}

impl Equipartition {
    /// Validates `blocks` as an equipartition of `0..n`.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::BadPartition("no blocks".into()));
        }
        let mut seen = vec![false; n];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::BadPartition("empty block".into()));
            }
            for &v in block {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::BadPartition(format!("vertex {v} appears twice")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::BadPartition(format!("vertex {v} is not covered")));
        }
        let (lo, hi) = size_range(&blocks);
        if hi - lo > 1 {
            return Err(Error::BadPartition(format!("block sizes range from {lo} to {hi}")));
        }
        Ok(Equipartition { n, blocks, parent: None })
    }

    /// Validates `blocks` as an equipartition refining `coarse`, with
    /// `parent[i]` the index of the coarse block containing block `i`.
    pub fn with_parent(coarse: &Equipartition, blocks: Vec<Vec<usize>>, parent: Vec<usize>) -> Result<Self> {
        let mut part = Equipartition::new(coarse.n, blocks)?;
        if parent.len() != part.blocks.len() {
            return Err(Error::BadPartition("parent list length differs from block count".into()));
        }
        let owner = coarse.block_of();
        for (block, &p) in part.blocks.iter().zip(&parent) {
            if p >= coarse.order() || block.iter().any(|&v| owner[v] != p) {
                return Err(Error::BadPartition(format!("a block is not contained in parent {p}")));
            }
        }
        part.parent = Some(parent);
        Ok(part)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of blocks.
    pub fn order(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn parent(&self) -> Option<&[usize]> {
        self.parent.as_deref()
    }

    pub fn min_block_size(&self) -> usize {
        size_range(&self.blocks).0
    }

    pub fn max_block_size(&self) -> usize {
        size_range(&self.blocks).1
    }

    /// `block_of()[v]` is the index of the block containing `v`.
    pub fn block_of(&self) -> Vec<usize> {
        let mut owner = vec![0; self.n];
        for (i, block) in self.blocks.iter().enumerate() {
            for &v in block {
                owner[v] = i;
            }
        }
        owner
    }

    /// Children of coarse block `i`, in block order. Empty if there is no parent map.
    pub fn children_of(&self, i: usize) -> Vec<usize> {
        match &self.parent {
            Some(parent) => (0..parent.len()).filter(|&b| parent[b] == i).collect(),
            None => Vec::new(),
        }
    }

    /// Blocks as a JSON array of arrays.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.blocks).expect("vectors serialize")
    }

    pub fn from_json(n: usize, text: &str) -> Result<Self> {
        let blocks: Vec<Vec<usize>> = serde_json::from_str(text)?;
        Equipartition::new(n, blocks)
    }

    /// Splits every block into `parts` consecutive chunks of `order(block)`,
    /// larger chunks first. `order` receives the block index and its vertices
    /// and returns them rearranged.
    pub(crate) fn split_each(
        &self,
        parts: usize,
        mut order: impl FnMut(usize, &[usize]) -> Vec<usize>,
    ) -> Result<Equipartition> {
        let min_block = self.min_block_size();
        if parts == 0 || parts > min_block {
            return Err(Error::RefinementTooFine { min_block, parts });
        }
        let mut blocks = Vec::with_capacity(self.order() * parts);
        let mut parent = Vec::with_capacity(self.order() * parts);
        for (i, block) in self.blocks.iter().enumerate() {
            let arranged = order(i, block);
            debug_assert_eq!(arranged.len(), block.len());
            let (q, extra) = (block.len() / parts, block.len() % parts);
            let mut start = 0;
            for j in 0..parts {
                let len = q + usize::from(j < extra);
                let mut chunk = arranged[start..start + len].to_vec();
                chunk.sort_unstable();
                blocks.push(chunk);
                parent.push(i);
                start += len;
            }
        }
        Equipartition::with_parent(self, blocks, parent)
    }
}

impl Serialize for Equipartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks.serialize(s)
    }
}

fn size_range(blocks: &[Vec<usize>]) -> (usize, usize) {
    let lo = blocks.iter().map(Vec::len).min().unwrap_or(0);
    let hi = blocks.iter().map(Vec::len).max().unwrap_or(0);
    (lo, hi)
}

/// A seeded uniform equipartition of `0..n` into `k` blocks; the first
/// `n mod k` blocks have the larger size.
pub fn equipartition(n: usize, k: usize, seed: u64) -> Result<Equipartition> {
    if k == 0 || k > n {
        return Err(Error::BadOrder { n, k });
    }
    let mut vertices: Vec<usize> = (0..n).collect();
    vertices.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let (q, extra) = (n / k, n % k);
    let mut blocks = Vec::with_capacity(k);
    let mut start = 0;
    for i in 0..k {
        let len = q + usize::from(i < extra);
        let mut block = vertices[start..start + len].to_vec();
        block.sort_unstable();
        blocks.push(block);
        start += len;
    }
    Equipartition::new(n, blocks)
}

/// Refines every block of `a` into `parts` near-equal pieces. Because the
/// blocks of `a` differ in size by at most one, so do all pieces.
pub fn refine_equipartition(a: &Equipartition, parts: usize, seed: u64) -> Result<Equipartition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    a.split_each(parts, |_, block| {
        let mut shuffled = block.to_vec();
        shuffled.shuffle(&mut rng);
        shuffled
    })
}
