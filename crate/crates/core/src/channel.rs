//! The (1,w) skew channel on a half-slot grid.
//!
//! A pulse sent in slot `k` with skew `sigma_k` (in half slots) arrives at
//! grid index `2k + sigma_k`. The first slot of a block may only shift
//! right and the last only left, so pulses never leave their block.
//! Coinciding pulses are kept as a multiset: the receiver observes how many
//! pulses land on each index.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::words::BinaryWord;
use crate::{Error, Result};

/// Which skews a pulse may take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SkewMode {
    /// Every pulse shifts by exactly half a slot.
    Binary,
    /// Pulses may also stay put; boundary slots may stay put too.
    Ternary,
    /// Interior pulses may stay put; boundary slots keep their forced shift.
    TernaryPinned,
}

impl SkewMode {
    pub const ALL: [SkewMode; 3] = [SkewMode::Binary, SkewMode::Ternary, SkewMode::TernaryPinned];

    /// Admissible skews for 1-based slot `k` of a block of length `w`.
    pub fn choices(self, k: usize, w: usize) -> &'static [i8] {
        let first = k == 1;
        let last = k == w;
        match (self, first, last) {
            // A one-slot block can only stay put.
            (_, true, true) => &[0],
            (SkewMode::Binary | SkewMode::TernaryPinned, true, false) => &[1],
            (SkewMode::Binary | SkewMode::TernaryPinned, false, true) => &[-1],
            (SkewMode::Binary, false, false) => &[-1, 1],
            (SkewMode::Ternary, true, false) => &[0, 1],
            (SkewMode::Ternary, false, true) => &[-1, 0],
            (SkewMode::Ternary | SkewMode::TernaryPinned, false, false) => &[-1, 0, 1],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SkewMode::Binary => "binary",
            SkewMode::Ternary => "ternary",
            SkewMode::TernaryPinned => "ternary-pinned",
        }
    }
}

impl fmt::Display for SkewMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SkewMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "binary" => Ok(SkewMode::Binary),
            "ternary" => Ok(SkewMode::Ternary),
            "ternary-pinned" => Ok(SkewMode::TernaryPinned),
            _ => Err(format!(
                "unknown skew mode {s:?} (expected binary, ternary or ternary-pinned)"
            )),
        }
    }
}

/// Per-slot skews `sigma_1..sigma_w` in half-slot units.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewPattern {
    sigmas: Vec<i8>,
}

impl SkewPattern {
    /// Checks every slot against the choices `mode` admits.
    pub fn new(sigmas: Vec<i8>, mode: SkewMode) -> Result<Self> {
        let w = sigmas.len();
        if w == 0 {
            return Err(Error::EmptyBlock);
        }
        let ok = sigmas
            .iter()
            .enumerate()
            .all(|(i, s)| mode.choices(i + 1, w).contains(s));
        if ok {
            Ok(Self { sigmas })
        } else {
            Err(Error::InvalidSkew { sigmas })
        }
    }

    pub fn sigmas(&self) -> &[i8] {
        &self.sigmas
    }

    pub fn len(&self) -> usize {
        self.sigmas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigmas.is_empty()
    }

    pub fn is_admissible(&self, mode: SkewMode) -> bool {
        let w = self.sigmas.len();
        self.sigmas
            .iter()
            .enumerate()
            .all(|(i, s)| mode.choices(i + 1, w).contains(s))
    }

    /// Builds the pattern whose slot `k` takes choice `pick(k, choices)`.
    pub fn from_choices(
        w: usize,
        mode: SkewMode,
        mut pick: impl FnMut(usize, &[i8]) -> i8,
    ) -> Result<Self> {
        if w == 0 {
            return Err(Error::EmptyBlock);
        }
        let sigmas = (1..=w).map(|k| pick(k, mode.choices(k, w))).collect();
        Self::new(sigmas, mode)
    }
}

impl fmt::Display for SkewPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.sigmas.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s:+}")?;
        }
        f.write_str(")")
    }
}

/// Number of admissible patterns for a block of length `w`.
pub fn skew_count(w: usize, mode: SkewMode) -> u128 {
    (1..=w).map(|k| mode.choices(k, w).len() as u128).product()
}

/// Every admissible skew pattern for a block of length `w`, each exactly once.
pub fn enumerate_skews(w: usize, mode: SkewMode) -> Result<SkewPatterns> {
    if w == 0 {
        return Err(Error::EmptyBlock);
    }
    let choices: Vec<&'static [i8]> = (1..=w).map(|k| mode.choices(k, w)).collect();
    Ok(SkewPatterns {
        digits: Some(vec![0; w]),
        choices,
    })
}

/// Odometer over the per-slot choice lists; the last slot varies fastest.
#[derive(Debug, Clone)]
pub struct SkewPatterns {
    digits: Option<Vec<usize>>,
    choices: Vec<&'static [i8]>,
}

impl Iterator for SkewPatterns {
    type Item = SkewPattern;

    fn next(&mut self) -> Option<SkewPattern> {
        let digits = self.digits.as_mut()?;
        let sigmas = digits
            .iter()
            .zip(&self.choices)
            .map(|(&d, c)| c[d])
            .collect();
        let mut i = digits.len();
        loop {
            if i == 0 {
                self.digits = None;
                break;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < self.choices[i].len() {
                break;
            }
            digits[i] = 0;
        }
        Some(SkewPattern { sigmas })
    }
}

/// Arrival indices of the pulses of one block, sorted, repeats allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReceivedBlock {
    arrivals: Vec<u32>,
    w: usize,
}

impl ReceivedBlock {
    /// Sorts `arrivals`; every index must lie in `[1, 2w + 1]`.
    pub fn new(mut arrivals: Vec<u32>, w: usize) -> Result<Self> {
        if w == 0 {
            return Err(Error::EmptyBlock);
        }
        arrivals.sort_unstable();
        if let Some(pos) = arrivals
            .iter()
            .position(|&r| r == 0 || r as usize > 2 * w + 1)
        {
            return Err(Error::ParityViolation {
                pulse: pos + 1,
                arrival: arrivals[pos] as i64,
            });
        }
        Ok(Self { arrivals, w })
    }

    pub fn arrivals(&self) -> &[u32] {
        &self.arrivals
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn pulse_count(&self) -> usize {
        self.arrivals.len()
    }
}

/// Physical timing used to turn half-slot indices into seconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelTiming {
    /// Signaling interval `T` in seconds.
    pub period: f64,
    /// Propagation delay `tau` in seconds.
    pub delay: f64,
}

impl ChannelTiming {
    pub fn new(period: f64, delay: f64) -> Option<Self> {
        (period > 0.0 && delay >= 0.0 && period.is_finite() && delay.is_finite())
            .then_some(Self { period, delay })
    }

    /// `t = tau + (r / 2) * T` for every arrival.
    pub fn timestamps(&self, rx: &ReceivedBlock) -> Vec<f64> {
        rx.arrivals
            .iter()
            .map(|&r| self.delay + f64::from(r) / 2.0 * self.period)
            .collect()
    }

    pub fn timestamps_json(&self, rx: &ReceivedBlock) -> String {
        serde_json::to_string(&self.timestamps(rx)).expect("floats serialize")
    }
}

/// Sends `word` through the channel under `skew`.
pub fn transmit(word: &BinaryWord, skew: &SkewPattern) -> Result<ReceivedBlock> {
    if word.len() != skew.len() {
        return Err(Error::DimensionMismatch {
            expected: word.len(),
            actual: skew.len(),
        });
    }
    if word.is_empty() {
        return Err(Error::EmptyBlock);
    }
    let mut arrivals: Vec<u32> = word
        .positions()
        .map(|k| (2 * k as i64 + i64::from(skew.sigmas[k - 1])) as u32)
        .collect();
    arrivals.sort_unstable();
    Ok(ReceivedBlock {
        arrivals,
        w: word.len(),
    })
}

/// All distinct outputs `word` can produce under `mode`.
pub fn output_set(word: &BinaryWord, mode: SkewMode) -> Result<BTreeSet<ReceivedBlock>> {
    enumerate_skews(word.len(), mode)?
        .map(|s| transmit(word, &s))
        .collect()
}

/// Whether `a` and `b` can produce the same output, by exhaustive search
/// over skew patterns.
pub fn confusable_bruteforce(a: &BinaryWord, b: &BinaryWord, mode: SkewMode) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    let outs_a = output_set(a, mode)?;
    let outs_b = output_set(b, mode)?;
    Ok(!outs_a.is_disjoint(&outs_b))
}
