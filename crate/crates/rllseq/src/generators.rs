//! Construction of maximum-length `(n,s)`-sequences and their verifier.
//!
//! Two construction routes live here. `generate_merge` runs the successor
//! rule that joins all `(n,s)`-necklaces into one cycle at their
//! largest-valued vertex ending in a zero. `generate_lex` concatenates the
//! Lyndon words of the `(n,s)`-necklaces in increasing lexicographic
//! order, which is the route whose windows can be decoded by streaming.
//! The keyed variant with stored merge vertices lives in [`crate::vset`].

use std::fmt;

use serde::Serialize;

use crate::enumeration::count_necklace_words;
use crate::lyndon::LyndonStream;
use crate::{Error, Result};

/// Order cap for the merge generators: the doubled-window run tests and
/// the stored-word matcher all fit one machine word up to here.
pub const MAX_MERGE_ORDER: u32 = 24;

/// Order cap for the lexicographic generator.
pub const MAX_LEX_ORDER: u32 = 32;

/// A generated or parsed bit sequence with its window parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceBuffer {
    bits: Vec<u8>,
    n: u32,
    s: u32,
    cyclic: bool,
}

impl SequenceBuffer {
    pub fn new(bits: Vec<u8>, n: u32, s: u32, cyclic: bool) -> Result<Self> {
        if !(1..=MAX_LEX_ORDER).contains(&n) || s < 1 {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= n <= {MAX_LEX_ORDER} and s >= 1, got ({n},{s})"
            )));
        }
        if bits.is_empty() {
            return Err(Error::InvalidParameter("empty sequence".into()));
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::Parse("sequence bits must be 0 or 1".into()));
        }
        if !cyclic && (bits.len() as u64) < u64::from(n) {
            return Err(Error::InvalidParameter(format!(
                "acyclic sequence of {} bits has no window of order {n}",
                bits.len()
            )));
        }
        Ok(Self { bits, n, s, cyclic })
    }

    pub fn from_bit_str(text: &str, n: u32, s: u32, cyclic: bool) -> Result<Self> {
        let bits = text
            .chars()
            .map(|c| match c {
                '0' => Ok(0u8),
                '1' => Ok(1u8),
                _ => Err(Error::Parse(format!("invalid symbol {c:?} in sequence"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(bits, n, s, cyclic)
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn run_limit(&self) -> u32 {
        self.s
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    /// Number of length-`n` windows: every position for a cyclic
    /// sequence, `len - n + 1` for an acyclic one.
    pub fn window_count(&self) -> usize {
        if self.cyclic {
            self.bits.len()
        } else {
            self.bits.len() - self.n as usize + 1
        }
    }

    /// Window starting at position `p`, as a value with the first bit most
    /// significant. Cyclic windows wrap around.
    pub fn window_at(&self, p: usize) -> u64 {
        let len = self.bits.len();
        let mut w = 0u64;
        for j in 0..self.n as usize {
            let idx = if self.cyclic { (p + j) % len } else { p + j };
            w = (w << 1) | u64::from(self.bits[idx]);
        }
        w
    }

    /// All windows in position order, with a rolling update.
    pub fn windows(&self) -> impl Iterator<Item = u64> + '_ {
        let len = self.bits.len();
        let n = self.n as usize;
        let mask = word_mask(self.n);
        let mut w = self.window_at(0);
        let mut p = 0usize;
        let count = self.window_count();
        std::iter::from_fn(move || {
            if p >= count {
                return None;
            }
            let out = w;
            let incoming = if self.cyclic {
                (p + n) % len
            } else {
                (p + n).min(len - 1)
            };
            w = ((w << 1) | u64::from(self.bits[incoming])) & mask;
            p += 1;
            Some(out)
        })
    }

    pub fn to_bit_string(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b == 1 { '1' } else { '0' })
            .collect()
    }

    /// Packed form: decimal bit count, a newline, then the bits packed
    /// most significant first with zero padding in the final byte.
    pub fn to_packed(&self) -> Vec<u8> {
        let mut out = format!("{}\n", self.bits.len()).into_bytes();
        let mut acc = 0u8;
        for (i, &b) in self.bits.iter().enumerate() {
            acc = (acc << 1) | b;
            if i % 8 == 7 {
                out.push(acc);
                acc = 0;
            }
        }
        let rem = self.bits.len() % 8;
        if rem != 0 {
            out.push(acc << (8 - rem));
        }
        out
    }

    /// Parses the packed form produced by [`SequenceBuffer::to_packed`].
    pub fn from_packed(data: &[u8], n: u32, s: u32, cyclic: bool) -> Result<Self> {
        let newline = data
            .iter()
            .position(|&b| b == b'\n')
            .ok_or_else(|| Error::Parse("packed form is missing its header".into()))?;
        let header = std::str::from_utf8(&data[..newline])
            .map_err(|_| Error::Parse("packed header is not ASCII".into()))?;
        let count: usize = header
            .parse()
            .map_err(|_| Error::Parse(format!("bad packed length {header:?}")))?;
        let body = &data[newline + 1..];
        if body.len() != count.div_ceil(8) {
            return Err(Error::Parse(format!(
                "packed body has {} bytes, expected {}",
                body.len(),
                count.div_ceil(8)
            )));
        }
        let bits = (0..count)
            .map(|i| (body[i / 8] >> (7 - i % 8)) & 1)
            .collect();
        Self::new(bits, n, s, cyclic)
    }
}

impl fmt::Display for SequenceBuffer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

pub(crate) fn word_mask(n: u32) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// True iff the `n`-bit word has an acyclic zero run longer than `s`.
/// Runs of length `>= s+1` survive `s` shift-and steps.
pub(crate) fn acyclic_zero_run_exceeds(w: u64, n: u32, s: u32) -> bool {
    if s >= n {
        return false;
    }
    let mut z = !w & word_mask(n);
    for _ in 0..s {
        z &= z >> 1;
    }
    z != 0
}

/// True iff the `n`-bit word has a cyclic zero run longer than `s`.
/// Wrap runs are exposed by doubling the word, so `n <= 32`.
pub(crate) fn cyclic_zero_run_exceeds(w: u64, n: u32, s: u32) -> bool {
    debug_assert!(n <= 32);
    if s >= n {
        return false;
    }
    let doubled = (w << n) | w;
    let mut z = !doubled & word_mask(2 * n);
    for _ in 0..s {
        z &= z >> 1;
    }
    z != 0
}

/// Runs the necklace-merging successor rule from the all-ones window
/// until the window `0 1^{n-1}` comes around.
///
/// For each candidate `Y` (the previous window shifted with a zero
/// appended) whose necklace has no cyclic run of more than `s` zeros,
/// `is_merge_vertex` decides whether the emitted bit is the complement of
/// the bit leaving the window (a cycle join) or a copy of it.
pub(crate) fn merge_successor_run(
    n: u32,
    s: u32,
    mut is_merge_vertex: impl FnMut(u64) -> bool,
) -> Result<Vec<u8>> {
    let mask = word_mask(n);
    let terminal = mask >> 1;
    let mut window = mask;
    let mut bits: Vec<u8> = vec![1; n as usize];
    let step_cap = 2u64.checked_shl(n).unwrap_or(u64::MAX);
    let mut steps = 0u64;
    while window != terminal {
        if steps > step_cap {
            return Err(Error::Internal("successor rule failed to terminate"));
        }
        steps += 1;
        let outgoing = (window >> (n - 1)) & 1;
        let candidate = (window << 1) & mask;
        let next = if cyclic_zero_run_exceeds(candidate, n, s) {
            outgoing
        } else if is_merge_vertex(candidate) {
            outgoing ^ 1
        } else {
            outgoing
        };
        bits.push(next as u8);
        window = ((window << 1) | next) & mask;
    }
    bits.truncate(bits.len() - (n as usize - 1));
    Ok(bits)
}

fn validate_merge_params(n: u32, s: u32) -> Result<()> {
    if !(2..=MAX_MERGE_ORDER).contains(&n) || s < 1 {
        return Err(Error::InvalidParameter(format!(
            "merge generator needs 2 <= n <= {MAX_MERGE_ORDER} and s >= 1, got ({n},{s})"
        )));
    }
    Ok(())
}

/// Maximum-length cyclic `(n,s)`-sequence by merging every
/// `(n,s)`-necklace at its largest-valued vertex ending in a zero: the
/// candidate joins exactly when it equals the maximum rotation of its
/// necklace. `O(n)` work per emitted bit.
pub fn generate_merge(n: u32, s: u32) -> Result<SequenceBuffer> {
    validate_merge_params(n, s)?;
    let bits = merge_successor_run(n, s, |y| {
        crate::BitWord::new(y, n).max_rotation().value() == y
    })?;
    SequenceBuffer::new(bits, n, s, true)
}

/// Maximum-length cyclic `(n,s)`-sequence as the concatenation of the
/// Lyndon words of the `(n,s)`-necklaces in increasing lexicographic
/// order.
pub fn generate_lex(n: u32, s: u32) -> Result<SequenceBuffer> {
    if !(2..=MAX_LEX_ORDER).contains(&n) || s < 1 {
        return Err(Error::InvalidParameter(format!(
            "lex generator needs 2 <= n <= {MAX_LEX_ORDER} and s >= 1, got ({n},{s})"
        )));
    }
    let bits: Vec<u8> = LyndonStream::for_ns(n, s)?.bits().collect();
    SequenceBuffer::new(bits, n, s, true)
}

/// Maximum-length acyclic `(n,s)`-sequence. For `s < n-1` this is
/// `0^s 1^{n-s-1}` followed by the Lyndon concatenation and `s` closing
/// zeros, which picks up `s` extra windows outside the necklaces. For
/// `s >= n-1` no extra windows exist and the cyclic sequence is returned
/// in acyclic form with its first `n-1` bits appended.
pub fn generate_lex_acyclic(n: u32, s: u32) -> Result<SequenceBuffer> {
    let cyclic = generate_lex(n, s)?;
    let mut bits = Vec::with_capacity(cyclic.len() + n as usize + s as usize);
    if s < n - 1 {
        bits.extend(std::iter::repeat_n(0u8, s as usize));
        bits.extend(std::iter::repeat_n(1u8, (n - s - 1) as usize));
        bits.extend_from_slice(cyclic.bits());
        bits.extend(std::iter::repeat_n(0u8, s as usize));
    } else {
        bits.extend_from_slice(cyclic.bits());
        bits.extend_from_slice(&cyclic.bits()[..n as usize - 1]);
    }
    SequenceBuffer::new(bits, n, s, false)
}

/// Outcome of checking a sequence against the defining `(n,s)` window
/// properties and the maximal-length targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    /// Every window is an `(n,s)`-word and all windows are distinct.
    pub valid: bool,
    /// Bit length of the sequence.
    pub length: usize,
    pub distinct_windows: bool,
    /// No window has a zero run longer than `s`.
    pub run_ok: bool,
    /// `valid` and the length equals the maximum: the necklace-word count
    /// for cyclic input, plus `s + n - 1` (or `n - 1` when `s >= n-1`)
    /// for acyclic input.
    pub is_maximum: bool,
    /// The window set is exactly the full `(n,s)`-necklace word set.
    pub covers_exactly_necklace_words: bool,
}

/// Checks the window properties of `seq` and compares it against the
/// maximum-length targets. Property failures are reported in the result;
/// `Err` is reserved for parameters whose targets cannot be computed.
pub fn verify(seq: &SequenceBuffer) -> Result<VerifyReport> {
    let n = seq.order();
    let s = seq.run_limit();
    let ell = count_necklace_words(n, s)?;

    let mut run_ok = true;
    let mut necklace_words = 0u64;
    let mut windows: Vec<u64> = Vec::with_capacity(seq.window_count());
    for w in seq.windows() {
        if acyclic_zero_run_exceeds(w, n, s) {
            run_ok = false;
        }
        if !cyclic_zero_run_exceeds(w, n, s) {
            necklace_words += 1;
        }
        windows.push(w);
    }
    let total = windows.len() as u64;
    windows.sort_unstable();
    let distinct_windows = windows.windows(2).all(|p| p[0] != p[1]);

    let valid = run_ok && distinct_windows;
    let expected_len = if seq.is_cyclic() {
        ell
    } else if s < n - 1 {
        ell + u64::from(s) + u64::from(n) - 1
    } else {
        ell + u64::from(n) - 1
    };
    Ok(VerifyReport {
        valid,
        length: seq.len(),
        distinct_windows,
        run_ok,
        is_maximum: valid && seq.len() as u64 == expected_len,
        covers_exactly_necklace_words: distinct_windows && necklace_words == total && total == ell,
    })
}
