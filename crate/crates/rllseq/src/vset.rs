//! Keyed generation: the stored-word set `V` and its merge rule.
//!
//! The merge generator joins each necklace at one chosen vertex. Storing
//! `k` specially shaped words `V(0..k-1)` and joining their necklaces at
//! the stored word instead of the default vertex turns every assignment of
//! the free key bits into a different maximum-length sequence: `2^K`
//! sequences for `K = k * theta` stored bits.
//!
//! Each `V(i)` is laid out as
//!
//! ```text
//!   [ ones every s+1 positions, index bits of i between ] 0
//!   [ middle: pattern zeros, cadence ones, free bits    ]
//!   0 [ ones run of length pattern_span + 2 ] 0
//! ```
//!
//! The suffix ones run is the unique longest in the word, which makes the
//! necklace of `V(i)` recognizable from any rotation in `O(n)` time, and
//! the index bits then name `i` directly.

use crate::bitword::BitWord;
use crate::generators::{
    acyclic_zero_run_exceeds, cyclic_zero_run_exceeds, merge_successor_run, word_mask,
    SequenceBuffer, MAX_MERGE_ORDER,
};
use crate::{Error, Result};

/// Position layout shared by all words of a stored set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VSetSpec {
    pub n: u32,
    pub s: u32,
    pub k: u32,
    /// Bits needed to name a stored word: `ceil(log2 k)`.
    pub m: u32,
    /// Span of the prefix one-pattern: ones sit at positions `0, s+1, …,
    /// pattern_span`; the distinguished suffix run has `pattern_span + 2`
    /// ones.
    pub pattern_span: u32,
    /// Prefix positions carrying the binary representation of the word
    /// index, most significant first.
    pub index_positions: Vec<u32>,
    pub fixed_ones: Vec<u32>,
    pub fixed_zeros: Vec<u32>,
    /// Positions a key may set freely; every assignment stays valid.
    pub free_positions: Vec<u32>,
}

impl VSetSpec {
    /// Free positions per stored word.
    pub fn theta(&self) -> usize {
        self.free_positions.len()
    }

    /// Total key length `K = k * theta`.
    pub fn key_bits(&self) -> usize {
        self.k as usize * self.theta()
    }

    /// Length of the unique longest ones run in every stored word.
    pub fn marker_run(&self) -> u32 {
        self.pattern_span + 2
    }
}

/// An instantiated stored set: the layout plus the `k` words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VSet {
    pub spec: VSetSpec,
    pub words: Vec<BitWord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cell {
    One,
    Zero,
    Index,
    Candidate,
    Free,
}

/// Computes the deterministic position layout for a stored set, or
/// explains why none exists.
pub fn vset_layout(n: u32, s: u32, k: u32) -> Result<VSetSpec> {
    if !(2..=MAX_MERGE_ORDER).contains(&n) || s < 1 {
        return Err(Error::InvalidParameter(format!(
            "stored-word layout needs 2 <= n <= {MAX_MERGE_ORDER} and s >= 1, got ({n},{s})"
        )));
    }
    if k < 2 {
        // k = 1 degenerates the index prefix (zero index bits).
        return Err(Error::InvalidParameter(format!(
            "stored set needs k >= 2, got {k}"
        )));
    }
    let m = u32::BITS - (k - 1).leading_zeros();
    let q = m.div_ceil(s);
    let p = (s + 1) * q;
    // Prefix pattern plus its closing zero is p+2 bits, the suffix block
    // is p+4 bits.
    if n < 2 * p + 6 {
        return Err(Error::LayoutInfeasible(format!(
            "prefix and suffix need {} bits, word has {n}",
            2 * p + 6
        )));
    }
    let mid_lo = p + 2;
    let mid_hi = n - p - 5; // may be mid_lo - 1 (empty middle)

    let mut cells = vec![Cell::Candidate; n as usize];
    for pos in 0..=p {
        cells[pos as usize] = if pos % (s + 1) == 0 {
            Cell::One
        } else {
            Cell::Index
        };
    }
    cells[(p + 1) as usize] = Cell::Zero;
    cells[(n - p - 4) as usize] = Cell::Zero;
    for pos in (n - p - 3)..=(n - 2) {
        cells[pos as usize] = Cell::One;
    }
    cells[(n - 1) as usize] = Cell::Zero;

    // Pattern zeros break every potential ones run in the middle at the
    // marker cadence; only positions inside the middle are eligible.
    let mut j = 1;
    loop {
        let pos = (p + 2) * j;
        if pos < 2 || pos - 2 > mid_hi {
            break;
        }
        let pos = pos - 2;
        if pos >= mid_lo {
            cells[pos as usize] = Cell::Zero;
        }
        j += 1;
    }

    // Cadence ones close every s+1 block of the middle, continuing the
    // prefix spacing. A collision with a pattern zero moves the one a
    // step early, keeping the zero.
    for pos in mid_lo..=mid_hi.min(n - 1) {
        if pos % (s + 1) == 0 {
            if cells[pos as usize] == Cell::Zero {
                debug_assert_eq!(cells[(pos - 1) as usize], Cell::Candidate);
                cells[(pos - 1) as usize] = Cell::One;
            } else {
                cells[pos as usize] = Cell::One;
            }
        }
    }

    // Conservative freedom: a candidate is free only if neither value can
    // break an invariant even when every other non-fixed position takes
    // the adversarial value. Unsafe candidates are pinned left to right.
    let zero_run_through = |cells: &[Cell], q_pos: u32| -> u32 {
        let worst_one = |pos: u32| cells[pos as usize] == Cell::One;
        let mut run = 1;
        let mut left = q_pos;
        while left > 0 && !worst_one(left - 1) {
            left -= 1;
            run += 1;
        }
        let mut right = q_pos;
        while right + 1 < n && !worst_one(right + 1) {
            right += 1;
            run += 1;
        }
        run
    };
    let ones_run_through = |cells: &[Cell], q_pos: u32| -> u32 {
        let worst_zero = |pos: u32| cells[pos as usize] == Cell::Zero;
        let mut run = 1;
        let mut left = q_pos;
        while left > 0 && !worst_zero(left - 1) {
            left -= 1;
            run += 1;
        }
        let mut right = q_pos;
        while right + 1 < n && !worst_zero(right + 1) {
            right += 1;
            run += 1;
        }
        run
    };
    for pos in mid_lo..=mid_hi.min(n - 1) {
        if cells[pos as usize] != Cell::Candidate {
            continue;
        }
        let zero_safe = zero_run_through(&cells, pos) <= s;
        let ones_safe = ones_run_through(&cells, pos) <= p + 1;
        cells[pos as usize] = if zero_safe && ones_safe {
            Cell::Free
        } else if !zero_safe {
            Cell::One
        } else {
            Cell::Zero
        };
    }

    let mut spec = VSetSpec {
        n,
        s,
        k,
        m,
        pattern_span: p,
        index_positions: Vec::new(),
        fixed_ones: Vec::new(),
        fixed_zeros: Vec::new(),
        free_positions: Vec::new(),
    };
    for (pos, cell) in cells.iter().enumerate() {
        let pos = pos as u32;
        match cell {
            Cell::One => spec.fixed_ones.push(pos),
            Cell::Zero => spec.fixed_zeros.push(pos),
            Cell::Index => spec.index_positions.push(pos),
            Cell::Free => spec.free_positions.push(pos),
            Cell::Candidate => unreachable!("candidate survived classification"),
        }
    }
    if spec.theta() == 0 {
        return Err(Error::LayoutInfeasible(format!(
            "no free positions at (n,s,k) = ({n},{s},{k})"
        )));
    }
    validate_extremes(&spec)?;
    Ok(spec)
}

/// Checks the corner instantiations (smallest and largest index, all-zero
/// and all-ones key slice) against every stored-word requirement.
fn validate_extremes(spec: &VSetSpec) -> Result<()> {
    for index in [0, spec.k - 1] {
        for fill in [0u8, 1u8] {
            let word = build_word(spec, index, &vec![fill; spec.theta()]);
            if !stored_word_ok(spec, word) {
                return Err(Error::LayoutInfeasible(format!(
                    "fixed assignment violates the word requirements at index {index}, fill {fill}"
                )));
            }
        }
    }
    Ok(())
}

fn stored_word_ok(spec: &VSetSpec, word: u64) -> bool {
    let (n, s) = (spec.n, spec.s);
    if acyclic_zero_run_exceeds(word, n, s) || cyclic_zero_run_exceeds(word, n, s) {
        return false;
    }
    let runs = cyclic_ones_runs(word, n);
    let longest = runs.iter().map(|r| r.len).max().unwrap_or(0);
    let at_longest: Vec<_> = runs.iter().filter(|r| r.len == longest).collect();
    longest == spec.marker_run() && at_longest.len() == 1 && at_longest[0].end() == n - 2
}

/// Word value with the fixed pattern, the index bits of `index`, and the
/// free positions taken from `fill` in position order.
fn build_word(spec: &VSetSpec, index: u32, fill: &[u8]) -> u64 {
    debug_assert!(index < spec.k);
    debug_assert_eq!(fill.len(), spec.theta());
    let n = spec.n;
    let set = |word: u64, pos: u32, bit: u64| word | (bit << (n - 1 - pos));
    let mut word = 0u64;
    for &pos in &spec.fixed_ones {
        word = set(word, pos, 1);
    }
    let width = spec.index_positions.len() as u32;
    for (slot, &pos) in spec.index_positions.iter().enumerate() {
        let bit = u64::from(index >> (width - 1 - slot as u32)) & 1;
        word = set(word, pos, bit);
    }
    for (slot, &pos) in spec.free_positions.iter().enumerate() {
        word = set(word, pos, u64::from(fill[slot]));
    }
    word
}

/// Instantiates the `k` stored words from a key of `K = k * theta` bits;
/// word `i` takes the `i`-th slice of `theta` bits.
pub fn vset_instantiate(spec: &VSetSpec, free_bits: &[u8]) -> Result<VSet> {
    if free_bits.len() != spec.key_bits() {
        return Err(Error::KeyLength {
            expected: spec.key_bits(),
            got: free_bits.len(),
        });
    }
    if free_bits.iter().any(|&b| b > 1) {
        return Err(Error::Parse("key bits must be 0 or 1".into()));
    }
    let theta = spec.theta();
    let words = (0..spec.k)
        .map(|i| {
            let slice = &free_bits[i as usize * theta..(i as usize + 1) * theta];
            let word = build_word(spec, i, slice);
            debug_assert!(
                stored_word_ok(spec, word),
                "stored word {i} broke an invariant"
            );
            BitWord::new(word, spec.n)
        })
        .collect();
    Ok(VSet {
        spec: spec.clone(),
        words,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct OnesRun {
    pub start: u32,
    pub len: u32,
}

impl OnesRun {
    /// Last position of the run, cyclically.
    pub fn end(&self) -> u32 {
        self.start + self.len - 1 // callers reduce mod n where needed
    }
}

/// Maximal cyclic runs of ones in an `n`-bit word. A run wrapping the
/// word boundary is reported once, starting at its true start; its end may
/// therefore exceed `n - 1` and is understood modulo `n`.
pub(crate) fn cyclic_ones_runs(word: u64, n: u32) -> Vec<OnesRun> {
    let mask = word_mask(n);
    let word = word & mask;
    if word == 0 {
        return Vec::new();
    }
    if word == mask {
        return vec![OnesRun { start: 0, len: n }];
    }
    let bit = |pos: u32| (word >> (n - 1 - pos)) & 1;
    let mut runs = Vec::new();
    let mut pos = 0;
    while pos < n {
        if bit(pos) == 0 {
            pos += 1;
            continue;
        }
        let start = pos;
        while pos < n && bit(pos) == 1 {
            pos += 1;
        }
        runs.push(OnesRun {
            start,
            len: pos - start,
        });
    }
    // Merge a trailing run into a leading one across the boundary.
    if runs.len() > 1 {
        let first = runs[0];
        let last = *runs.last().unwrap();
        if first.start == 0 && last.end() == n - 1 {
            runs[0] = OnesRun {
                start: last.start,
                len: last.len + first.len,
            };
            runs.pop();
        }
    }
    runs
}

/// Decides whether `y` lies on the same necklace as some stored word, and
/// which one, in `O(n)`: the unique longest ones run is located, `y` is
/// rotated to put that run just before the last position, the prefix
/// pattern is checked, and the index bits name the only possible match.
pub fn match_v(y: BitWord, vset: &VSet) -> Option<usize> {
    let spec = &vset.spec;
    let n = spec.n;
    if y.len() != n {
        return None;
    }
    let runs = cyclic_ones_runs(y.value(), n);
    let longest = runs.iter().map(|r| r.len).max()?;
    if longest != spec.marker_run() {
        return None;
    }
    let mut at_longest = runs.iter().filter(|r| r.len == longest);
    let run = at_longest.next()?;
    if at_longest.next().is_some() {
        return None;
    }
    // Rotate the run end onto position n-2.
    let end = run.end() % n;
    let rotated = y.rotate_left((end + 2) % n);
    for &pos in &spec.fixed_ones {
        if pos > spec.pattern_span {
            break;
        }
        if rotated.bit(pos) != 1 {
            return None;
        }
    }
    let mut index: u32 = 0;
    for &pos in &spec.index_positions {
        index = (index << 1) | rotated.bit(pos) as u32;
    }
    if index >= spec.k {
        return None;
    }
    (rotated == vset.words[index as usize]).then_some(index as usize)
}

/// Maximum-length cyclic `(n,s)`-sequence selected by a key: necklaces
/// holding a stored word are joined exactly at that word, all others at
/// their largest vertex ending in a zero. Distinct keys give distinct
/// sequences; per-bit work stays `O(n)` and working space
/// `O(max(n, K))`.
pub fn generate_merge_v(n: u32, s: u32, k: u32, free_bits: &[u8]) -> Result<SequenceBuffer> {
    let spec = vset_layout(n, s, k)?;
    let vset = vset_instantiate(&spec, free_bits)?;
    let bits = merge_successor_run(n, s, |y| match match_v(BitWord::new(y, n), &vset) {
        Some(i) => y == vset.words[i].value(),
        None => BitWord::new(y, n).max_rotation().value() == y,
    })?;
    SequenceBuffer::new(bits, n, s, true)
}

/// Parses a key given as `ceil(K/4)` hex digits, big-endian; bits above
/// `K` in the top nibble are ignored.
pub fn parse_key_hex(hex: &str, key_bits: usize) -> Result<Vec<u8>> {
    let digits = key_bits.div_ceil(4);
    let hex = hex.trim();
    if hex.len() != digits {
        return Err(Error::Parse(format!(
            "key must be {digits} hex digits for {key_bits} bits, got {}",
            hex.len()
        )));
    }
    let mut nibbles = Vec::with_capacity(digits);
    for c in hex.chars() {
        let v = c
            .to_digit(16)
            .ok_or_else(|| Error::Parse(format!("invalid hex digit {c:?} in key")))?;
        nibbles.push(v as u8);
    }
    // Bit j of the key (most significant first) is value bit K-1-j.
    let value_bit = |t: usize| (nibbles[digits - 1 - t / 4] >> (t % 4)) & 1;
    Ok((0..key_bits).map(|j| value_bit(key_bits - 1 - j)).collect())
}
