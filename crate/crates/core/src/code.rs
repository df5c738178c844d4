//! The optimal zero-error code.
//!
//! Rounding every offset down to an even number, `x_i -> 2 * floor(x_i / 2)`,
//! maps non-adjacent tuples to non-adjacent tuples, and its range (tuples
//! with only even entries) is independent. That range is the codebook.
//! Halving a codeword gives a weakly increasing tuple bounded by
//! `d = floor((w - h) / 2)`, so class `h` holds `C(h + d, h)` codewords and
//! the classes together hold `F_w`.
//!
//! Messages are numbered by weight class first (ascending `h`), then
//! lexicographically inside the class.

use serde::{Deserialize, Serialize};

use crate::channel::{transmit, ReceivedBlock, SkewPattern};
use crate::graph::is_edge;
use crate::words::{from_offsets, offset_tuples, to_offsets, BinaryWord, OffsetTuple};
use crate::{Error, Result};

/// Largest block length whose codebook can be indexed by `u128` messages.
pub const CODEBOOK_MAX_W: usize = 180;

/// Largest block length [`verify_adjacency_reducing`] checks exhaustively.
pub const ADJACENCY_CHECK_MAX_W: usize = 12;

/// Index of a message inside one block's codebook.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Message(pub u128);

/// Componentwise `2 * floor(x_i / 2)`.
pub fn f_map(x: &OffsetTuple) -> OffsetTuple {
    let offsets = x.offsets().iter().map(|&v| v & !1).collect();
    OffsetTuple::new(offsets, x.bound()).expect("rounding down to even keeps monotonicity")
}

/// Checks exhaustively that [`f_map`] never turns a non-adjacent pair into
/// an adjacent one and that its range is an independent set.
pub fn verify_adjacency_reducing(w: usize) -> Result<bool> {
    if w > ADJACENCY_CHECK_MAX_W {
        return Err(Error::GuardExceeded {
            w,
            limit: ADJACENCY_CHECK_MAX_W,
        });
    }
    for h in 0..=w {
        let vertices: Vec<_> = offset_tuples(h, (w - h) as u32).collect();
        let images: Vec<_> = vertices.iter().map(f_map).collect();
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if !is_edge(&vertices[i], &vertices[j])? && is_edge(&images[i], &images[j])? {
                    return Ok(false);
                }
            }
        }
        let mut range = images;
        range.sort();
        range.dedup();
        for i in 0..range.len() {
            for j in i + 1..range.len() {
                if is_edge(&range[i], &range[j])? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Binomial coefficients by Pascal's rule, saturating at `u128::MAX`.
#[derive(Debug, Clone)]
struct Binomials {
    rows: Vec<Vec<u128>>,
}

impl Binomials {
    fn new(n_max: usize) -> Self {
        let mut rows: Vec<Vec<u128>> = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut row = vec![1u128; n + 1];
            for k in 1..n {
                row[k] = rows[n - 1][k - 1].saturating_add(rows[n - 1][k]);
            }
            rows.push(row);
        }
        Self { rows }
    }

    fn get(&self, n: usize, k: usize) -> u128 {
        if k > n {
            0
        } else {
            self.rows[n][k]
        }
    }
}

/// The even-offset codebook for one block length.
#[derive(Debug, Clone)]
pub struct Codebook {
    w: usize,
    class_sizes: Vec<u128>,
    class_offsets: Vec<u128>,
    binomials: Binomials,
}

impl Codebook {
    pub fn new(w: usize) -> Result<Self> {
        if w == 0 {
            return Err(Error::EmptyBlock);
        }
        if w > CODEBOOK_MAX_W {
            return Err(Error::CodebookTooLarge {
                w,
                limit: CODEBOOK_MAX_W,
            });
        }
        let binomials = Binomials::new(w);
        let class_sizes: Vec<u128> = (0..=w).map(|h| binomials.get(h + (w - h) / 2, h)).collect();
        let mut class_offsets = Vec::with_capacity(w + 2);
        let mut acc = 0u128;
        class_offsets.push(0);
        for &s in &class_sizes {
            acc += s;
            class_offsets.push(acc);
        }
        Ok(Self {
            w,
            class_sizes,
            class_offsets,
            binomials,
        })
    }

    pub fn w(&self) -> usize {
        self.w
    }

    /// Total number of codewords, `F_w`.
    pub fn len(&self) -> u128 {
        self.class_offsets[self.w + 1]
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn class_sizes(&self) -> &[u128] {
        &self.class_sizes
    }

    /// Prefix sums of the class sizes; entry `h` is the first message of class `h`.
    pub fn class_offsets(&self) -> &[u128] {
        &self.class_offsets
    }

    /// Half range `d = floor((w - h) / 2)` of class `h`.
    fn half_bound(&self, h: usize) -> usize {
        (self.w - h) / 2
    }

    /// Codewords of weight `h` in lexicographic order.
    pub fn class(&self, h: usize) -> impl Iterator<Item = OffsetTuple> + '_ {
        let bound = (self.w - h) as u32;
        offset_tuples(h, self.half_bound(h) as u32).map(move |z| {
            let mut doubled = z.into_offsets();
            doubled.iter_mut().for_each(|v| *v *= 2);
            OffsetTuple::from_raw(doubled, bound)
        })
    }

    /// All codewords in message order.
    pub fn codewords(&self) -> impl Iterator<Item = OffsetTuple> + '_ {
        (0..=self.w).flat_map(move |h| self.class(h))
    }

    pub fn contains(&self, word: &BinaryWord) -> bool {
        word.len() == self.w && to_offsets(word).all_even()
    }

    /// Unranks `m` into its codeword.
    pub fn encode(&self, m: Message) -> Result<BinaryWord> {
        if m.0 >= self.len() {
            return Err(Error::MessageOutOfRange {
                index: m.0,
                size: self.len(),
            });
        }
        let h = self.class_offsets.partition_point(|&o| o <= m.0) - 1;
        let mut rank = m.0 - self.class_offsets[h];
        let n = self.half_bound(h) + h;

        // Lexicographic unranking of an h-subset of {0, .., n-1}; the halved
        // offset is the subset element minus its index.
        let mut offsets = Vec::with_capacity(h);
        let mut c = 0;
        for i in 0..h {
            loop {
                let count = self.binomials.get(n - c - 1, h - i - 1);
                if rank >= count {
                    rank -= count;
                    c += 1;
                } else {
                    offsets.push(2 * (c - i) as u32);
                    c += 1;
                    break;
                }
            }
        }
        let x = OffsetTuple::new(offsets, (self.w - h) as u32)?;
        from_offsets(&x, self.w)
    }

    /// Inverse of [`Codebook::encode`].
    pub fn rank(&self, word: &BinaryWord) -> Result<Message> {
        if word.len() != self.w {
            return Err(Error::DimensionMismatch {
                expected: self.w,
                actual: word.len(),
            });
        }
        self.rank_offsets(&to_offsets(word))
    }

    fn rank_offsets(&self, x: &OffsetTuple) -> Result<Message> {
        if !x.all_even() {
            return Err(Error::NotCodeword {
                offsets: x.offsets().to_vec(),
            });
        }
        let h = x.weight();
        let n = self.half_bound(h) + h;
        let mut rank = 0u128;
        let mut start = 0;
        for (i, &off) in x.offsets().iter().enumerate() {
            let c = (off / 2) as usize + i;
            for j in start..c {
                rank += self.binomials.get(n - j - 1, h - i - 1);
            }
            start = c + 1;
        }
        Ok(Message(self.class_offsets[h] + rank))
    }

    /// Recovers the message from a received block.
    ///
    /// Codeword offsets are even, so the `i`-th pulse was sent from a slot
    /// with the parity of `i`; of the two slots adjacent to an arrival only
    /// one qualifies. Anything else cannot have come from a codeword.
    pub fn decode(&self, rx: &ReceivedBlock) -> Result<Message> {
        if rx.w() != self.w {
            return Err(Error::DimensionMismatch {
                expected: self.w,
                actual: rx.w(),
            });
        }
        let h = rx.pulse_count();
        let bound = (self.w - h.min(self.w)) as u32;
        let mut offsets = Vec::with_capacity(h);
        for (idx, &r) in rx.arrivals().iter().enumerate() {
            let i = idx + 1;
            let violation = Error::ParityViolation {
                pulse: i,
                arrival: i64::from(r),
            };
            let (lo, hi) = (r as usize / 2, (r as usize).div_ceil(2));
            let slot = [lo, hi]
                .into_iter()
                .find(|&p| p % 2 == i % 2)
                .ok_or(violation.clone())?;
            if slot < i || slot > self.w {
                return Err(violation);
            }
            let off = (slot - i) as u32;
            if off > bound || offsets.last().is_some_and(|&prev| prev > off) {
                return Err(violation);
            }
            offsets.push(off);
        }
        self.rank_offsets(&OffsetTuple::new(offsets, bound)?)
    }

    pub fn to_export(&self) -> CodebookExport {
        CodebookExport {
            w: self.w,
            classes: (0..=self.w)
                .map(|h| self.class(h).map(|x| x.offsets().to_vec()).collect())
                .collect(),
        }
    }

    /// `{"w": .., "classes": [[[offsets..], ..], ..]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_export()).expect("codebook serializes")
    }
}

/// Convenience wrapper for [`Codebook::new`].
pub fn build_codebook(w: usize) -> Result<Codebook> {
    Codebook::new(w)
}

/// JSON shape of an exported codebook.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodebookExport {
    pub w: usize,
    pub classes: Vec<Vec<Vec<u32>>>,
}

/// One line of a codec stream.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StreamRecord {
    pub block: u64,
    pub message: u128,
    pub word: String,
    pub arrivals: Vec<u32>,
}

/// Encodes and transmits consecutive blocks; `skew_for(block)` supplies the
/// skew pattern of each block.
pub fn encode_stream(
    cb: &Codebook,
    messages: &[Message],
    mut skew_for: impl FnMut(u64) -> SkewPattern,
) -> Result<Vec<StreamRecord>> {
    messages
        .iter()
        .enumerate()
        .map(|(block, &m)| {
            let block = block as u64;
            let word = cb.encode(m)?;
            let rx = transmit(&word, &skew_for(block))?;
            Ok(StreamRecord {
                block,
                message: m.0,
                word: word.to_string(),
                arrivals: rx.arrivals().to_vec(),
            })
        })
        .collect()
}

/// Decodes each record from its arrivals alone.
pub fn decode_stream(cb: &Codebook, records: &[StreamRecord]) -> Result<Vec<Message>> {
    let mut sorted: Vec<_> = records.iter().collect();
    sorted.sort_by_key(|r| r.block);
    sorted
        .into_iter()
        .map(|r| cb.decode(&ReceivedBlock::new(r.arrivals.clone(), cb.w())?))
        .collect()
}

/// Newline-delimited JSON, one record per line.
pub fn to_ndjson(records: &[StreamRecord]) -> String {
    records
        .iter()
        .map(|r| serde_json::to_string(r).expect("record serializes") + "\n")
        .collect()
}

pub fn from_ndjson(text: &str) -> std::result::Result<Vec<StreamRecord>, serde_json::Error> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(serde_json::from_str)
        .collect()
}
