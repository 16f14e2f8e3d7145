//! Flags: ordered set partitions of {1..n}.
//!
//! A flag with blocks `(B_1, ..., B_{k+1})` corresponds to the chain of
//! partial unions `I_j = B_1 ∪ ... ∪ B_j`. Its length is the number of
//! blocks minus one and its type is the composition of block sizes. Every
//! weight vector `omega` determines a flag by grouping positions into level
//! sets ordered by increasing value.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::qsym::Composition;
use crate::util::{expand_submask, mask_elements, mask_from_elements};

/// Default upper bound on ground sizes accepted by the flag enumerator.
pub const DEFAULT_MAX_GROUND: usize = 9;

/// An ordered set partition of {1..n}, stored as nonempty pairwise disjoint
/// block bitmasks covering the full ground set.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Flag {
    n: usize,
    blocks: Vec<u32>,
}

impl Flag {
    /// Build a flag from 1-based element blocks, validating the partition.
    pub fn new(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut masks = Vec::with_capacity(blocks.len());
        for block in blocks {
            let mask = mask_from_elements(block.iter().copied())
                .filter(|&m| m < (1u32 << n))
                .ok_or_else(|| {
                    Error::InvalidFlag(format!("block {block:?} outside ground set 1..={n}"))
                })?;
            if mask.count_ones() as usize != block.len() {
                return Err(Error::InvalidFlag(format!(
                    "block {block:?} has repeated elements"
                )));
            }
            masks.push(mask);
        }
        Flag::from_masks(n, masks)
    }

    /// Build a flag from block bitmasks, validating the partition.
    pub fn from_masks(n: usize, blocks: Vec<u32>) -> Result<Self> {
        if n == 0 || n > 32 {
            return Err(Error::InvalidFlag(format!("unsupported ground size {n}")));
        }
        let full = ((1u64 << n) - 1) as u32;
        let mut seen = 0u32;
        for &b in &blocks {
            if b == 0 {
                return Err(Error::InvalidFlag("empty block".into()));
            }
            if b & !full != 0 {
                return Err(Error::InvalidFlag("block outside ground set".into()));
            }
            if b & seen != 0 {
                return Err(Error::InvalidFlag("blocks overlap".into()));
            }
            seen |= b;
        }
        if seen != full {
            return Err(Error::InvalidFlag("blocks do not cover the ground set".into()));
        }
        Ok(Flag { n, blocks })
    }

    /// The one-block flag on {1..n}.
    pub fn single_block(n: usize) -> Result<Self> {
        Flag::from_masks(n, vec![((1u64 << n) - 1) as u32])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Length of the flag: number of blocks minus one.
    pub fn length(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn block_masks(&self) -> &[u32] {
        &self.blocks
    }

    /// Blocks as sorted 1-based element lists.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|&b| mask_elements(b)).collect()
    }

    /// The composition of block sizes.
    pub fn flag_type(&self) -> Composition {
        Composition::from_parts_unchecked(self.blocks.iter().map(|b| b.count_ones()).collect())
    }

    /// The opposite flag: blocks in reverse order.
    pub fn opposite(&self) -> Flag {
        let mut blocks = self.blocks.clone();
        blocks.reverse();
        Flag {
            n: self.n,
            blocks,
        }
    }

    /// Partial unions `I_1 ⊂ I_2 ⊂ ... ⊂ I_{k+1} = {1..n}`.
    pub fn prefix_unions(&self) -> Vec<u32> {
        let mut acc = 0u32;
        self.blocks
            .iter()
            .map(|&b| {
                acc |= b;
                acc
            })
            .collect()
    }

    /// Whether `self` refines `other`: every block of `other` is a union of
    /// consecutive blocks of `self`.
    pub fn refines(&self, other: &Flag) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::InvalidArgument(
                "flags live on different ground sets".into(),
            ));
        }
        let mut i = 0;
        for &coarse in &other.blocks {
            let mut acc = 0u32;
            while acc != coarse {
                if i >= self.blocks.len() || self.blocks[i] & !coarse != 0 {
                    return Ok(false);
                }
                acc |= self.blocks[i];
                i += 1;
            }
        }
        Ok(i == self.blocks.len())
    }

    /// All flags refined by `self` (merge any choice of adjacent blocks);
    /// there are `2^length` of them, `self` included.
    pub fn coarsenings(&self) -> Vec<Flag> {
        let boundaries = self.blocks.len() - 1;
        let mut out = Vec::with_capacity(1 << boundaries);
        for cut in 0..(1u32 << boundaries) {
            let mut blocks = Vec::new();
            let mut acc = self.blocks[0];
            for i in 0..boundaries {
                if cut >> i & 1 == 1 {
                    blocks.push(acc);
                    acc = self.blocks[i + 1];
                } else {
                    acc |= self.blocks[i + 1];
                }
            }
            blocks.push(acc);
            out.push(Flag {
                n: self.n,
                blocks,
            });
        }
        out
    }

    /// JSON form: array of blocks, each a sorted array of 1-based elements,
    /// e.g. `[[2],[1,3]]`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.blocks()
                .into_iter()
                .map(|b| Value::Array(b.into_iter().map(|e| Value::Number(e.into())).collect()))
                .collect(),
        )
    }

    /// Parse the JSON form; the ground size is the total number of elements.
    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Json("flag must be an array of blocks".into()))?;
        let mut blocks = Vec::with_capacity(arr.len());
        let mut n = 0usize;
        for b in arr {
            let elems = b
                .as_array()
                .ok_or_else(|| Error::Json("flag block must be an array".into()))?;
            let mut block = Vec::with_capacity(elems.len());
            for e in elems {
                let e = e
                    .as_u64()
                    .filter(|&e| (1..=32).contains(&e))
                    .ok_or_else(|| Error::Json(format!("bad flag element {e}")))?
                    as usize;
                n = n.max(e);
                block.push(e);
            }
            blocks.push(block);
        }
        Flag::new(n, &blocks).map_err(|e| Error::Json(e.to_string()))
    }
}

impl std::fmt::Display for Flag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, e) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", e)?;
            }
            write!(f, "}}")?;
        }
        write!(f, ")")
    }
}

/// The flag of a weight vector: level sets of `omega` ordered by increasing
/// value. `omega[i]` is the weight of element `i + 1`; weights must be
/// positive.
pub fn flag_from_weight(omega: &[u32]) -> Result<Flag> {
    let n = omega.len();
    if n == 0 || n > 32 {
        return Err(Error::InvalidArgument(format!(
            "weight vector length {n} unsupported"
        )));
    }
    if omega.contains(&0) {
        return Err(Error::InvalidArgument("weights must be positive".into()));
    }
    let mut values: Vec<u32> = omega.to_vec();
    values.sort_unstable();
    values.dedup();
    let blocks: Vec<u32> = values
        .iter()
        .map(|&v| {
            let mut mask = 0u32;
            for (i, &w) in omega.iter().enumerate() {
                if w == v {
                    mask |= 1 << i;
                }
            }
            mask
        })
        .collect();
    Flag::from_masks(n, blocks)
}

/// Lazily enumerate every flag on {1..n} with the default size cap.
///
/// The order is deterministic: the first block runs over nonempty subsets of
/// the remaining elements in binary-mask order (over compressed indices),
/// then recursion continues on what is left.
pub fn enumerate_flags(n: usize) -> Result<FlagIter> {
    enumerate_flags_with_max(n, DEFAULT_MAX_GROUND)
}

/// Lazily enumerate every flag on {1..n}, rejecting `n` outside `1..=max`.
pub fn enumerate_flags_with_max(n: usize, max: usize) -> Result<FlagIter> {
    if n == 0 || n > max || max > 32 {
        return Err(Error::SizeOutOfRange { n, max });
    }
    Ok(FlagIter {
        n,
        stack: vec![Frame {
            remaining: ((1u64 << n) - 1) as u32,
            t: 0,
        }],
        blocks: Vec::new(),
    })
}

struct Frame {
    remaining: u32,
    t: u32,
}

/// Streaming iterator over all flags on a ground set.
pub struct FlagIter {
    n: usize,
    stack: Vec<Frame>,
    blocks: Vec<u32>,
}

impl Iterator for FlagIter {
    type Item = Flag;

    fn next(&mut self) -> Option<Flag> {
        loop {
            let depth = self.stack.len().checked_sub(1)?;
            let frame = &mut self.stack[depth];
            frame.t += 1;
            let count = frame.remaining.count_ones();
            if frame.t >= (1u32 << count) {
                // This level is exhausted; the parent will overwrite its
                // block slot on its next choice.
                self.stack.pop();
                continue;
            }
            let sub = expand_submask(frame.t, frame.remaining);
            let rest = frame.remaining & !sub;
            self.blocks.truncate(depth);
            self.blocks.push(sub);
            if rest == 0 {
                return Some(Flag {
                    n: self.n,
                    blocks: self.blocks.clone(),
                });
            }
            self.stack.push(Frame {
                remaining: rest,
                t: 0,
            });
        }
    }
}
