//! Frames of discernment and the bit-pattern indexing of their subsets.
//!
//! Bit `i` (least significant first) of a [`Subset`] is set when element
//! `ω_{i+1}` belongs to it, so index 3 on a three-element frame is `{ω1, ω2}`
//! and index 6 is `{ω2, ω3}`. Every dense vector in this crate uses this order.

use std::fmt;

use crate::error::{BeliefError, Result};

/// Largest supported frame. Dense vectors have `2^n` entries.
pub const MAX_FRAME: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    n: usize,
    labels: Option<Vec<String>>,
}

impl Frame {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_FRAME {
            return Err(BeliefError::FrameSize(n));
        }
        Ok(Self { n, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut frame = Self::new(labels.len())?;
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(BeliefError::Labels(format!("duplicate label {l:?}")));
            }
        }
        frame.labels = Some(labels);
        Ok(frame)
    }

    /// Builds a frame from a dense vector length, which must be `2^n`.
    pub fn from_len(len: usize) -> Result<Self> {
        if !len.is_power_of_two() || len < 2 {
            return Err(BeliefError::LengthNotPowerOfTwo(len));
        }
        let n = len.trailing_zeros() as usize;
        Self::new(n).map_err(|_| BeliefError::LengthNotPowerOfTwo(len))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of subsets, `2^n`.
    #[inline]
    pub fn size(&self) -> usize {
        1 << self.n
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn omega(&self) -> Subset {
        Subset((self.size() - 1) as u32)
    }

    pub fn singleton(&self, element: usize) -> Subset {
        debug_assert!(element < self.n);
        Subset(1 << element)
    }

    /// Same element count and, when both carry labels, the same labels.
    pub fn compatible(&self, other: &Frame) -> bool {
        self.n == other.n
            && match (&self.labels, &other.labels) {
                (Some(a), Some(b)) => a == b,
                _ => true,
            }
    }

    pub(crate) fn check_compatible(&self, other: &Frame) -> Result<()> {
        if self.compatible(other) {
            Ok(())
        } else {
            Err(BeliefError::FrameMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        (0..self.size() as u32).map(Subset)
    }

    /// Human-readable name of a subset, e.g. `{w1,w3}` or `{a,c}` with labels.
    pub fn describe(&self, s: Subset) -> String {
        let names: Vec<String> = s
            .elements()
            .map(|i| match &self.labels {
                Some(l) => l[i].clone(),
                None => format!("w{}", i + 1),
            })
            .collect();
        format!("{{{}}}", names.join(","))
    }
}

/// A subset of the frame, stored as its bit pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Cardinality (popcount).
    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, element: usize) -> bool {
        self.0 >> element & 1 == 1
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & other.0 == self.0
    }

    /// Zero-based element indices in ascending order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits >> i & 1 == 1)
    }

    /// Subsets obtained by removing exactly one element, in ascending index order.
    pub fn children(self) -> impl Iterator<Item = Subset> {
        let bits = self.0;
        let mut rest = bits;
        let mut out = Vec::with_capacity(self.len());
        while rest != 0 {
            let low = rest & rest.wrapping_neg();
            out.push(Subset(bits ^ low));
            rest ^= low;
        }
        out.reverse();
        out.into_iter()
    }

    /// Supersets obtained by adding exactly one element of the frame.
    pub fn parents(self, frame: &Frame) -> impl Iterator<Item = Subset> {
        let bits = self.0;
        (0..frame.n())
            .filter(move |i| bits >> i & 1 == 0)
            .map(move |i| Subset(bits | 1 << i))
    }

    pub fn complement(self, frame: &Frame) -> Subset {
        Subset(!self.0 & frame.omega().0)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.0)
    }
}

/// All subsets of cardinality `k` in ascending numeric order.
///
/// The ordering is relied on by the layer-by-layer passes of the
/// isopignistic algorithms.
pub fn subsets_by_cardinality(frame: &Frame, k: usize) -> Result<Vec<Subset>> {
    let n = frame.n();
    if k > n {
        return Err(BeliefError::Domain(format!("cardinality {k} exceeds frame size {n}")));
    }
    if k == 0 {
        return Ok(vec![Subset::EMPTY]);
    }
    // Gosper's hack walks same-popcount words in increasing order.
    let limit = 1u64 << n;
    let mut v: u64 = (1u64 << k) - 1;
    let mut out = Vec::new();
    while v < limit {
        out.push(Subset(v as u32));
        let c = v & v.wrapping_neg();
        let r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
    Ok(out)
}

/// Children of a nonempty subset: every subset missing exactly one element.
pub fn children(s: Subset) -> Result<Vec<Subset>> {
    if s.is_empty() {
        return Err(BeliefError::Domain("the empty set has no children".into()));
    }
    Ok(s.children().collect())
}

/// Child indices of `i` (remove one bit), ascending.
#[inline]
pub(crate) fn child_indices(i: usize) -> impl Iterator<Item = usize> {
    let mut rest = i;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let high = 1usize << (usize::BITS - 1 - rest.leading_zeros());
        rest ^= high;
        Some(i ^ high)
    })
}
