//! Fixed-length binary words and their rotation classes.
//!
//! A [`BitWord`] is a word of 1..=64 bits packed into a `u64` with the
//! first written symbol `x_0` at the most significant position, so numeric
//! comparison of equal-length words agrees with lexicographic comparison
//! of the written strings. Everything else in the crate (necklaces, run
//! tests, successor rules) is built from the primitives here.

use std::fmt;
use std::str::FromStr;

use crate::Error;

/// Binary word `x_0 x_1 … x_{len-1}` with `x_0` leftmost / most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitWord {
    bits: u64,
    len: u32,
}

impl BitWord {
    /// Builds a word from its numeric value.
    ///
    /// Panics if `len` is outside 1..=64 or `bits` has a set bit at or
    /// above position `len`.
    pub fn new(bits: u64, len: u32) -> Self {
        assert!((1..=64).contains(&len), "word length {len} outside 1..=64");
        assert!(
            len == 64 || bits >> len == 0,
            "value 0x{bits:x} does not fit in {len} bits"
        );
        Self { bits, len }
    }

    /// The all-ones word of the given length.
    pub fn ones(len: u32) -> Self {
        assert!((1..=64).contains(&len));
        Self {
            bits: mask(len),
            len,
        }
    }

    /// The all-zero word of the given length.
    pub fn zeros(len: u32) -> Self {
        assert!((1..=64).contains(&len));
        Self { bits: 0, len }
    }

    pub fn value(&self) -> u64 {
        self.bits
    }

    #[allow(clippy::len_without_is_empty)] // length is always at least one
    pub fn len(&self) -> u32 {
        self.len
    }

    /// Bit at written position `i` (0 = leftmost).
    pub fn bit(&self, i: u32) -> u64 {
        assert!(i < self.len);
        (self.bits >> (self.len - 1 - i)) & 1
    }

    /// Word with every bit complemented.
    pub fn complement(&self) -> Self {
        Self {
            bits: !self.bits & mask(self.len),
            len: self.len,
        }
    }

    /// Cyclic left shift by `r` positions: `x_r … x_{len-1} x_0 … x_{r-1}`.
    pub fn rotate_left(&self, r: u32) -> Self {
        let r = r % self.len;
        if r == 0 {
            return *self;
        }
        let bits = ((self.bits << r) | (self.bits >> (self.len - r))) & mask(self.len);
        Self {
            bits,
            len: self.len,
        }
    }

    /// Number of ones in the word.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Same word with the last symbol complemented.
    pub fn companion(&self) -> Self {
        Self {
            bits: self.bits ^ 1,
            len: self.len,
        }
    }

    /// Length of the longest run of zeros; the run wraps around iff
    /// `cyclic`. The all-zero word reports `len` in both modes.
    pub fn zero_run_max(&self, cyclic: bool) -> u32 {
        if self.bits == 0 {
            return self.len;
        }
        let mut max = 0;
        let mut cur = 0;
        for i in 0..self.len {
            if self.bit(i) == 0 {
                cur += 1;
                max = max.max(cur);
            } else {
                cur = 0;
            }
        }
        if cyclic {
            let lead = (self.bits.leading_zeros() - (64 - self.len)).min(self.len);
            let trail = self.bits.trailing_zeros().min(self.len);
            max = max.max(lead + trail);
        }
        max
    }

    /// True iff the word is an `(n,s)`-word: no acyclic zero run longer
    /// than `s`.
    pub fn is_ns_word(&self, s: u32) -> bool {
        assert!(s >= 1);
        self.zero_run_max(false) <= s
    }

    /// True iff the word lies in an `(n,s)`-necklace: no cyclic zero run
    /// longer than `s`. Rotation-invariant.
    pub fn is_ns_necklace(&self, s: u32) -> bool {
        assert!(s >= 1);
        self.zero_run_max(true) <= s
    }

    /// Rotation amount whose application yields the least-valued rotation.
    /// Linear-time two-pointer scan over the implicitly doubled word.
    fn least_rotation_index(&self, invert: bool) -> u32 {
        let n = self.len;
        let at = |p: u32| {
            let b = self.bit(p % n);
            if invert {
                b ^ 1
            } else {
                b
            }
        };
        let (mut i, mut j, mut k) = (0u32, 1u32, 0u32);
        while i < n && j < n && k < n {
            let a = at(i + k);
            let b = at(j + k);
            if a == b {
                k += 1;
                continue;
            }
            if a > b {
                i += k + 1;
            } else {
                j += k + 1;
            }
            if i == j {
                j += 1;
            }
            k = 0;
        }
        i.min(j)
    }

    /// Rotation with the minimum value (the Lyndon-side canonical form).
    pub fn min_rotation(&self) -> Self {
        self.rotate_left(self.least_rotation_index(false))
    }

    /// Rotation with the maximum value. The least rotation of the
    /// complemented word starts at the same position.
    pub fn max_rotation(&self) -> Self {
        self.rotate_left(self.least_rotation_index(true))
    }

    /// Rotation class of this word.
    pub fn necklace(&self) -> Necklace {
        let n = self.len;
        let mut period = n;
        for p in 1..n {
            if n.is_multiple_of(p) && self.rotate_left(p) == *self {
                period = p;
                break;
            }
        }
        Necklace {
            canonical: self.min_rotation(),
            period,
        }
    }
}

fn mask(len: u32) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", self.bit(i))?;
        }
        Ok(())
    }
}

impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s.is_empty() || s.len() > 64 {
            return Err(Error::Parse(format!(
                "bit string must have 1..=64 symbols, got {}",
                s.len()
            )));
        }
        let mut bits = 0u64;
        for c in s.chars() {
            bits = (bits << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    _ => return Err(Error::Parse(format!("invalid symbol {c:?} in bit string"))),
                };
        }
        Ok(Self {
            bits,
            len: s.len() as u32,
        })
    }
}

/// Rotation class of an order-`n` word: the least rotation plus the
/// smallest period. A necklace is of full order iff `period == order`;
/// it represents exactly `period` distinct words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Necklace {
    canonical: BitWord,
    period: u32,
}

impl Necklace {
    pub fn canonical(&self) -> BitWord {
        self.canonical
    }

    /// Smallest `p` dividing the order with `rotate_left(p)` a fixpoint.
    pub fn period(&self) -> u32 {
        self.period
    }

    /// Length of the underlying words.
    pub fn order(&self) -> u32 {
        self.canonical.len()
    }

    pub fn is_full_order(&self) -> bool {
        self.period == self.order()
    }

    /// One period of the canonical word: the Lyndon representative for
    /// nonzero necklaces.
    pub fn lyndon_rep(&self) -> BitWord {
        let n = self.canonical.len();
        let d = self.period;
        BitWord::new(self.canonical.value() >> (n - d), d)
    }
}
