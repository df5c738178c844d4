//! Binary words and the offset-tuple representation of a weight class.
//!
//! A word of length `w` and weight `h` with its ones at 1-based slots
//! `p_1 < ... < p_h` is described by the offsets `x_i = p_i - i`, which
//! satisfy `0 <= x_1 <= ... <= x_h <= w - h`. The map is a bijection
//! between the weight class and that set of tuples.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// One block of `w` binary symbols. Slot `k` (1-based) holds `bits[k - 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryWord {
    bits: Vec<bool>,
}

impl BinaryWord {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn zeros(w: usize) -> Self {
        Self {
            bits: vec![false; w],
        }
    }

    /// Word of length `w` whose `index`-th bit (0-based, most significant
    /// first) is bit `w - 1 - index` of `value`.
    pub fn from_index(value: u64, w: usize) -> Self {
        debug_assert!(w <= 64);
        Self {
            bits: (0..w).map(|k| (value >> (w - 1 - k)) & 1 == 1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Symbol in 1-based slot `k`.
    pub fn slot(&self, k: usize) -> bool {
        self.bits[k - 1]
    }

    pub fn hamming_weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// 1-based slot indices of the ones, ascending.
    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(k, _)| k + 1)
    }

    /// All `2^w` words of length `w` in lexicographic order.
    pub fn all(w: usize) -> impl Iterator<Item = BinaryWord> {
        assert!(w < 64, "exhaustive word enumeration needs w < 64");
        (0..1u64 << w).map(move |v| BinaryWord::from_index(v, w))
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidBitString(s.to_owned())),
            })
            .collect::<Result<Vec<_>>>()
            .map(BinaryWord::new)
    }
}

/// A weakly increasing tuple of nonnegative integers bounded by `bound`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OffsetTuple {
    offsets: Vec<u32>,
    bound: u32,
}

impl OffsetTuple {
    pub fn new(offsets: Vec<u32>, bound: u32) -> Result<Self> {
        let monotone = offsets.windows(2).all(|p| p[0] <= p[1]);
        let bounded = offsets.last().is_none_or(|&x| x <= bound);
        if monotone && bounded {
            Ok(Self { offsets, bound })
        } else {
            Err(Error::InvalidOffsets { offsets, bound })
        }
    }

    pub fn empty(bound: u32) -> Self {
        Self {
            offsets: Vec::new(),
            bound,
        }
    }

    pub fn offsets(&self) -> &[u32] {
        &self.offsets
    }

    pub fn into_offsets(self) -> Vec<u32> {
        self.offsets
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// Number of entries, i.e. the Hamming weight of the word it encodes.
    pub fn weight(&self) -> usize {
        self.offsets.len()
    }

    pub fn all_even(&self) -> bool {
        self.offsets.iter().all(|x| x % 2 == 0)
    }

    /// Same shape (weight and bound) as `other`.
    pub fn same_shape(&self, other: &OffsetTuple) -> bool {
        self.weight() == other.weight() && self.bound == other.bound
    }

    pub(crate) fn from_raw(offsets: Vec<u32>, bound: u32) -> Self {
        debug_assert!(offsets.windows(2).all(|p| p[0] <= p[1]));
        debug_assert!(offsets.last().is_none_or(|&x| x <= bound));
        Self { offsets, bound }
    }

    /// Parses the comma-separated form produced by `Display`.
    pub fn parse(s: &str, bound: u32) -> Result<Self> {
        let s = s.trim();
        let offsets = if s.is_empty() {
            Vec::new()
        } else {
            s.split(',')
                .map(|t| t.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::InvalidOffsetList(s.to_owned()))?
        };
        Self::new(offsets, bound)
    }
}

impl fmt::Display for OffsetTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.offsets.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Offsets `(p_1 - 1, ..., p_h - h)` of the ones of `word`, bounded by `w - h`.
pub fn to_offsets(word: &BinaryWord) -> OffsetTuple {
    let h = word.hamming_weight();
    let offsets = word
        .positions()
        .enumerate()
        .map(|(i, p)| (p - (i + 1)) as u32)
        .collect();
    OffsetTuple::from_raw(offsets, (word.len() - h) as u32)
}

/// Inverse of [`to_offsets`].
pub fn from_offsets(x: &OffsetTuple, w: usize) -> Result<BinaryWord> {
    let h = x.weight();
    if h > w || x.bound as usize != w - h {
        return Err(Error::BoundMismatch {
            h,
            bound: x.bound,
            w,
        });
    }
    let mut bits = vec![false; w];
    for (i, &off) in x.offsets.iter().enumerate() {
        bits[off as usize + i] = true;
    }
    Ok(BinaryWord::new(bits))
}

/// Lexicographic enumeration of every weakly increasing `h`-tuple with
/// entries in `[0, bound]`.
pub fn offset_tuples(h: usize, bound: u32) -> OffsetTuples {
    OffsetTuples {
        current: Some(vec![0; h]),
        bound,
    }
}

/// Iterator returned by [`offset_tuples`].
#[derive(Debug, Clone)]
pub struct OffsetTuples {
    current: Option<Vec<u32>>,
    bound: u32,
}

impl Iterator for OffsetTuples {
    type Item = OffsetTuple;

    fn next(&mut self) -> Option<OffsetTuple> {
        let cur = self.current.take()?;
        let item = OffsetTuple::from_raw(cur.clone(), self.bound);
        // Advance: bump the rightmost entry below the bound, reset the tail to it.
        let mut next = cur;
        if let Some(i) = next.iter().rposition(|&x| x < self.bound) {
            let v = next[i] + 1;
            for x in &mut next[i..] {
                *x = v;
            }
            self.current = Some(next);
        }
        Some(item)
    }
}
