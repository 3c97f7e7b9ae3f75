//! Lexicographic Lyndon-word generation (FKM successor rule).
//!
//! The stream walks pre-necklaces of order `n` in increasing value: set the
//! last zero to one, truncate there, replicate the prefix periodically, and
//! keep exactly the prefixes whose length divides `n`. Those prefixes are
//! the Lyndon representatives of the order-`n` necklaces, visited from the
//! smallest to the largest, and concatenating them yields the
//! lexicographically least sequence that covers the corresponding words.

use crate::Error;

/// Largest word order the stream accepts; words are manipulated as `u64`s.
pub const MAX_ORDER: u32 = 63;

/// Iterator over Lyndon words `(value, length)` of the necklaces of order
/// `n`, in increasing lexicographic order, starting strictly after a seed
/// word.
#[derive(Debug, Clone)]
pub struct LyndonStream {
    n: u32,
    y: u64,
    mask: u64,
    emit_zero_first: bool,
}

impl LyndonStream {
    /// All Lyndon words of order `n`, starting with the all-zero word `0`.
    /// Concatenation gives the least de Bruijn sequence of span `n`.
    pub fn for_all(n: u32) -> Result<Self, Error> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::InvalidParameter(format!(
                "order {n} outside 1..={MAX_ORDER}"
            )));
        }
        Ok(Self {
            n,
            y: 0,
            mask: word_mask(n),
            emit_zero_first: true,
        })
    }

    /// Lyndon words of exactly the `(n,s)`-necklaces.
    ///
    /// For `s <= n-2` these are the Lyndon words after the seed
    /// `0^{s+1} 1^{n-s-1}`, the largest one not contained in an
    /// `(n,s)`-necklace. For `s = n-1` only the all-zero necklace is
    /// excluded; for `s >= n` nothing is.
    pub fn for_ns(n: u32, s: u32) -> Result<Self, Error> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::InvalidParameter(format!(
                "order {n} outside 1..={MAX_ORDER}"
            )));
        }
        if s == 0 {
            return Err(Error::InvalidParameter("run limit s must be >= 1".into()));
        }
        if s >= n {
            return Self::for_all(n);
        }
        let low_ones = n - s - 1;
        let seed = if low_ones == 0 {
            0
        } else {
            (1u64 << low_ones) - 1
        };
        Ok(Self {
            n,
            y: seed,
            mask: word_mask(n),
            emit_zero_first: false,
        })
    }

    /// Flattens the stream into individual bits, most significant first.
    pub fn bits(self) -> impl Iterator<Item = u8> {
        self.flat_map(|(z, j)| (0..j).map(move |t| ((z >> (j - 1 - t)) & 1) as u8))
    }
}

impl Iterator for LyndonStream {
    type Item = (u64, u32);

    fn next(&mut self) -> Option<(u64, u32)> {
        if self.emit_zero_first {
            self.emit_zero_first = false;
            return Some((0, 1));
        }
        while self.y != self.mask {
            let j = self.n - self.y.trailing_ones();
            let z = (self.y >> (self.n - j)) | 1;
            self.y = replicate(z, j, self.n);
            if self.n.is_multiple_of(j) {
                return Some((z, j));
            }
        }
        None
    }
}

/// First `n` bits of `zzz…` for a `j`-bit word `z`.
fn replicate(z: u64, j: u32, n: u32) -> u64 {
    let mut v = z;
    let mut filled = j;
    while filled < n {
        let take = j.min(n - filled);
        v = (v << take) | (z >> (j - take));
        filled += take;
    }
    v
}

fn word_mask(n: u32) -> u64 {
    (1u64 << n) - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(stream: LyndonStream) -> Vec<String> {
        stream
            .map(|(z, j)| {
                (0..j)
                    .map(|t| {
                        if (z >> (j - 1 - t)) & 1 == 1 {
                            '1'
                        } else {
                            '0'
                        }
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn full_order_three() {
        assert_eq!(
            words(LyndonStream::for_all(3).unwrap()),
            ["0", "001", "011", "1"]
        );
    }

    #[test]
    fn restricted_three_two() {
        // s = n-1 drops exactly the all-zero necklace.
        assert_eq!(
            words(LyndonStream::for_ns(3, 2).unwrap()),
            ["001", "011", "1"]
        );
    }

    #[test]
    fn restricted_five_two() {
        assert_eq!(
            words(LyndonStream::for_ns(5, 2).unwrap()),
            ["00101", "00111", "01011", "01111", "1"]
        );
    }

    #[test]
    fn bits_concatenation() {
        let bits: Vec<u8> = LyndonStream::for_ns(3, 2).unwrap().bits().collect();
        assert_eq!(bits, [0, 0, 1, 0, 1, 1, 1]);
    }

    #[test]
    fn emitted_words_are_lyndon_words_of_ns_necklaces() {
        use crate::BitWord;
        for n in 2..=10u32 {
            for s in 1..=n {
                let mut seen = 0u64;
                for (z, j) in LyndonStream::for_ns(n, s).unwrap() {
                    let rep = BitWord::new(z, j);
                    // A Lyndon word is the strictly least rotation of itself.
                    assert_eq!(rep.min_rotation(), rep);
                    assert_eq!(rep.necklace().period(), j);
                    seen += u64::from(j);
                }
                // Total emitted length equals the number of words covered.
                let brute: u64 = (0..(1u64 << n))
                    .filter(|&v| BitWord::new(v, n).is_ns_necklace(s))
                    .count() as u64;
                assert_eq!(seen, brute, "length sum vs brute force at ({n},{s})");
            }
        }
    }
}
