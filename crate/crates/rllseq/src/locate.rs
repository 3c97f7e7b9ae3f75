//! Position decoding: from an `n`-bit window back to where it sits in a
//! maximum-length sequence.
//!
//! Two routes with the same answers: a position table built once from a
//! generated sequence, and a streaming scan of the lexicographic
//! construction that keeps `O(n)` state and never stores the sequence.
//! Positions are 0-indexed from the first emitted bit.

use std::collections::HashMap;

use crate::bitword::BitWord;
use crate::generators::{word_mask, SequenceBuffer, MAX_LEX_ORDER};
use crate::lyndon::LyndonStream;
use crate::{Error, Result};

/// Window-to-position table for one sequence with distinct windows.
#[derive(Debug, Clone)]
pub struct SequenceIndex {
    n: u32,
    s: u32,
    length: usize,
    table: HashMap<u64, usize>,
}

impl SequenceIndex {
    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn run_limit(&self) -> u32 {
        self.s
    }

    /// Number of indexed windows.
    pub fn len(&self) -> usize {
        self.length
    }

    pub fn is_empty(&self) -> bool {
        self.length == 0
    }
}

/// Maps every window of `seq` to its start position. Sequences with a
/// repeated window have no well-defined decoder and are rejected.
pub fn build_index(seq: &SequenceBuffer) -> Result<SequenceIndex> {
    let mut table = HashMap::with_capacity(seq.window_count());
    for (p, w) in seq.windows().enumerate() {
        if table.insert(w, p).is_some() {
            return Err(Error::DuplicateWindows);
        }
    }
    Ok(SequenceIndex {
        n: seq.order(),
        s: seq.run_limit(),
        length: table.len(),
        table,
    })
}

/// Unique start position of `w`, or `None` when `w` is not a window of
/// the indexed sequence (wrong length included).
pub fn locate(idx: &SequenceIndex, w: BitWord) -> Option<usize> {
    if w.len() != idx.n {
        return None;
    }
    idx.table.get(&w.value()).copied()
}

/// Position of `w` in the cyclic lexicographic `(n,s)`-sequence, found by
/// streaming the Lyndon concatenation with `O(n)` memory and no stored
/// index. Agrees with [`locate`] over [`build_index`] on every window.
pub fn locate_lex_stream(n: u32, s: u32, w: BitWord) -> Result<Option<usize>> {
    if !(2..=MAX_LEX_ORDER).contains(&n) || s < 1 {
        return Err(Error::InvalidParameter(format!(
            "stream decoder needs 2 <= n <= {MAX_LEX_ORDER} and s >= 1, got ({n},{s})"
        )));
    }
    if w.len() != n {
        return Ok(None);
    }
    // Only words of the (n,s)-necklaces appear as windows.
    if !w.is_ns_necklace(s) {
        return Ok(None);
    }
    let target = w.value();
    let mask = word_mask(n);
    let head: Vec<u8> = LyndonStream::for_ns(n, s)?
        .bits()
        .take(n as usize - 1)
        .collect();

    let mut window = 0u64;
    let mut emitted = 0usize;
    for b in LyndonStream::for_ns(n, s)?.bits().chain(head) {
        window = ((window << 1) | u64::from(b)) & mask;
        emitted += 1;
        if emitted >= n as usize && window == target {
            return Ok(Some(emitted - n as usize));
        }
    }
    Ok(None)
}
