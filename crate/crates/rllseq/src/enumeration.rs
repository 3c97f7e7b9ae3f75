//! Exact and asymptotic counting for `(n,s)`-words and necklaces.
//!
//! `h(n,s)` counts the `(n,s)`-words, `ell(n,s)` counts the words covered
//! by the `(n,s)`-necklaces, which is also the maximum length of a cyclic
//! `(n,s)`-sequence. Counts are exact in checked 64-bit arithmetic; the
//! growth rate comes from the unique positive root of the characteristic
//! equation `x^{s+1} = x^s + … + x + 1`.

use std::collections::BTreeMap;

use serde_json::json;

use crate::lyndon::LyndonStream;
use crate::{Error, Result};

/// Default cap on the order accepted by the direct necklace walk.
pub const DEFAULT_ENUM_CAP: u32 = 28;

fn validate_ns(n: u32, s: u32) -> Result<()> {
    if n < 1 || s < 1 {
        return Err(Error::InvalidParameter(format!(
            "need n >= 1 and s >= 1, got ({n},{s})"
        )));
    }
    Ok(())
}

fn pow2(n: u32, what: &'static str) -> Result<u64> {
    1u64.checked_shl(n).ok_or(Error::Overflow(what))
}

/// Number of `(n,s)`-words, by the recursion
/// `h(n) = h(n-1) + … + h(n-s-1)` from the bases `h(i) = 2^i` for
/// `i <= s` and `h(s+1) = 2^{s+1} - 1`. For `s >= n` every word qualifies.
pub fn count_words(n: u32, s: u32) -> Result<u64> {
    validate_ns(n, s)?;
    if s >= n {
        return pow2(n, "count_words");
    }
    if n == s + 1 {
        return Ok(pow2(n, "count_words")? - 1);
    }
    // Rolling window of the last s+1 values, starting at h(1)..h(s+1).
    let mut window: Vec<u64> = (1..=s).map(|i| 1u64 << i).collect();
    window.push((1u64 << (s + 1)) - 1);
    for _ in (s + 2)..=n {
        let mut next: u64 = 0;
        for &v in &window {
            next = next.checked_add(v).ok_or(Error::Overflow("count_words"))?;
        }
        window.remove(0);
        window.push(next);
    }
    Ok(*window.last().unwrap())
}

/// Fibonacci-shifted count of `(n,1)`-words: `g(1) = 2`, `g(2) = 3`,
/// `g(n) = g(n-1) + g(n-2)`, extended downward with `g(0) = g(-1) = 1` so
/// that `ell(n,1) = g(n) - g(n-4)` holds from `n = 3` on.
pub fn fib_g(n: i64) -> Result<u64> {
    if n < -1 {
        return Err(Error::InvalidParameter(format!(
            "fib_g needs n >= -1, got {n}"
        )));
    }
    let (mut a, mut b) = (1u64, 1u64); // g(-1), g(0)
    for _ in 0..n {
        let next = a.checked_add(b).ok_or(Error::Overflow("fib_g"))?;
        a = b;
        b = next;
    }
    Ok(if n == -1 { 1 } else { b })
}

/// Number of words in all `(n,s)`-necklaces, i.e. the maximum length of a
/// cyclic `(n,s)`-sequence. Computed by direct enumeration: the Lyndon
/// walk visits every `(n,s)`-necklace once and contributes its period.
/// `2^n` for `s >= n` and `2^n - 1` for `s = n-1` need no walk.
pub fn count_necklace_words(n: u32, s: u32) -> Result<u64> {
    count_necklace_words_with_cap(n, s, DEFAULT_ENUM_CAP)
}

/// [`count_necklace_words`] with an explicit cap on the walked order.
pub fn count_necklace_words_with_cap(n: u32, s: u32, cap: u32) -> Result<u64> {
    validate_ns(n, s)?;
    if s >= n {
        return pow2(n, "count_necklace_words");
    }
    if s == n - 1 {
        return Ok(pow2(n, "count_necklace_words")? - 1);
    }
    if n > cap {
        return Err(Error::CapExceeded(format!(
            "necklace walk needs n <= {cap}, got {n}"
        )));
    }
    Ok(LyndonStream::for_ns(n, s)?.map(|(_, j)| u64::from(j)).sum())
}

/// Closed formula for the necklace-word count,
/// `ell = h(n-1) + sum_{i=1}^{s} i * h(n-i-2)` with `h(0) = h(-1) = 1`.
/// Only valid for `s <= n-2`; the direct walk is authoritative elsewhere.
pub fn count_necklace_words_formula(n: u32, s: u32) -> Result<u64> {
    validate_ns(n, s)?;
    if s > n.saturating_sub(2) {
        return Err(Error::InvalidParameter(format!(
            "closed necklace formula needs s <= n-2, got ({n},{s})"
        )));
    }
    let h_ext = |m: i64| -> Result<u64> {
        if m <= 0 {
            Ok(1)
        } else {
            count_words(m as u32, s)
        }
    };
    let mut total = count_words(n - 1, s)?;
    for i in 1..=s {
        let term = h_ext(i64::from(n) - i64::from(i) - 2)?
            .checked_mul(u64::from(i))
            .ok_or(Error::Overflow("count_necklace_words_formula"))?;
        total = total
            .checked_add(term)
            .ok_or(Error::Overflow("count_necklace_words_formula"))?;
    }
    Ok(total)
}

/// Value of the characteristic polynomial `x^{s+1} - sum_{i=0}^{s} x^i`.
fn char_poly(x: f64, s: u32) -> f64 {
    let mut p = 1.0;
    let mut sum = 0.0;
    for _ in 0..=s {
        sum += p;
        p *= x;
    }
    p - sum
}

/// Unique positive real root of the characteristic equation, found by
/// bisection on [1, 2]; the polynomial is `-s` at 1 and `+1` at 2. The
/// bracket is narrowed to `tol` or machine resolution, whichever is hit
/// first.
pub fn lambda_root(s: u32, tol: f64) -> f64 {
    assert!(s >= 1, "lambda_root needs s >= 1");
    assert!(tol > 0.0, "lambda_root needs tol > 0");
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // bracket at machine resolution
        }
        if char_poly(mid, s) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Closed-form word count
/// `h(n,s) = floor(lambda^{n+1} (lambda-1) / ((s+2) lambda - 2(s+1)) + 0.5)`.
/// Fails rather than guesses when the value leaves the exactly
/// representable range or rounds within 0.01 of an integer boundary.
pub fn count_words_closed(n: u32, s: u32) -> Result<u64> {
    validate_ns(n, s)?;
    let lambda = lambda_root(s, 1e-15);
    let expr = lambda.powi(n as i32 + 1) * (lambda - 1.0)
        / (f64::from(s + 2) * lambda - 2.0 * f64::from(s + 1));
    if !expr.is_finite() || expr >= 9.0e15 {
        return Err(Error::PrecisionLoss(format!(
            "closed form at ({n},{s}) leaves the exact f64 integer range"
        )));
    }
    let shifted = expr + 0.5;
    let frac = shifted.fract();
    if !(0.01..=0.99).contains(&frac) {
        return Err(Error::PrecisionLoss(format!(
            "closed form at ({n},{s}) rounds within 0.01 of a boundary"
        )));
    }
    Ok(shifted.floor() as u64)
}

/// Binomial coefficient with the usual zero conventions for out-of-range
/// arguments.
fn binom(a: i64, b: i64) -> u64 {
    if b < 0 || a < 0 || b > a {
        return 0;
    }
    let (a, b) = (a as u128, b.min(a - b) as u128);
    let mut r: u128 = 1;
    for i in 1..=b {
        r = r * (a - b + i) / i;
    }
    u64::try_from(r).expect("binomial exceeds u64")
}

/// Number of `(n,1)`-words of weight `k`: `C(k+1, n-k)` when
/// `k+1 >= n-k`, zero otherwise.
pub fn count_weight_words(n: u32, k: u32) -> u64 {
    assert!(n >= 1 && k <= n && n <= 64);
    let (n, k) = (i64::from(n), i64::from(k));
    if k + 1 >= n - k {
        binom(k + 1, n - k)
    } else {
        0
    }
}

/// Number of words of weight `k` inside the `(n,1)`-necklaces:
/// `C(k, n-k) + C(k-1, n-k-1)` when `k+1 >= n-k`, zero otherwise.
pub fn count_weight_necklace_words(n: u32, k: u32) -> u64 {
    assert!(n >= 1 && k <= n && n <= 64);
    let (n, k) = (i64::from(n), i64::from(k));
    if k + 1 >= n - k {
        binom(k, n - k) + binom(k - 1, n - k - 1)
    } else {
        0
    }
}

/// Rate `log2(ell)/n` and redundancy `n - log2(ell)` of a maximum-length
/// cyclic `(n,s)`-sequence, from the exact count.
pub fn metrics(n: u32, s: u32) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "metrics needs n >= 2, got {n}"
        )));
    }
    let ell = count_necklace_words(n, s)? as f64;
    let log = ell.log2();
    Ok((log / f64::from(n), f64::from(n) - log))
}

/// Exact `(ell, h)` counts over a parameter grid, matching the published
/// table layout: cells `(n, s)` for `1 <= n <= n_max`,
/// `1 <= s <= min(s_max, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub n_max: u32,
    pub s_max: u32,
    entries: BTreeMap<(u32, u32), (u64, u64)>,
}

impl CountTable {
    /// `(ell, h)` at `(n, s)`, if the cell is inside the grid.
    pub fn get(&self, n: u32, s: u32) -> Option<(u64, u64)> {
        self.entries.get(&(n, s)).copied()
    }

    /// Cells as `(n, s, ell, h)` rows in (n, s) order.
    pub fn rows(&self) -> impl Iterator<Item = (u32, u32, u64, u64)> + '_ {
        self.entries
            .iter()
            .map(|(&(n, s), &(ell, h))| (n, s, ell, h))
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("n\ts\tell\th\n");
        for (n, s, ell, h) in self.rows() {
            out.push_str(&format!("{n}\t{s}\t{ell}\t{h}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<_> = self
            .rows()
            .map(|(n, s, ell, h)| json!({"n": n, "s": s, "ell": ell, "h": h}))
            .collect();
        serde_json::to_string_pretty(&rows).expect("table serializes")
    }
}

fn table_cells(n_max: u32, s_max: u32) -> Result<Vec<(u32, u32)>> {
    if n_max < 1 || s_max < 1 {
        return Err(Error::InvalidParameter(format!(
            "table needs n_max >= 1 and s_max >= 1, got ({n_max},{s_max})"
        )));
    }
    Ok((1..=n_max)
        .flat_map(|n| (1..=s_max.min(n)).map(move |s| (n, s)))
        .collect())
}

fn assemble_table(n_max: u32, s_max: u32, cells: Vec<((u32, u32), (u64, u64))>) -> CountTable {
    CountTable {
        n_max,
        s_max,
        entries: cells.into_iter().collect(),
    }
}

/// Builds the count grid, fanning the cells out over rayon when the
/// `parallel` feature is enabled.
pub fn count_table(n_max: u32, s_max: u32) -> Result<CountTable> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let cells = table_cells(n_max, s_max)?
            .into_par_iter()
            .map(|(n, s)| Ok(((n, s), (count_necklace_words(n, s)?, count_words(n, s)?))))
            .collect::<Result<Vec<_>>>()?;
        Ok(assemble_table(n_max, s_max, cells))
    }
    #[cfg(not(feature = "parallel"))]
    {
        count_table_seq(n_max, s_max)
    }
}

/// Single-threaded variant of [`count_table`]; also the benchmark
/// baseline for the parallel build.
pub fn count_table_seq(n_max: u32, s_max: u32) -> Result<CountTable> {
    let cells = table_cells(n_max, s_max)?
        .into_iter()
        .map(|(n, s)| Ok(((n, s), (count_necklace_words(n, s)?, count_words(n, s)?))))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble_table(n_max, s_max, cells))
}

/// One row of the asymptotic rate table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateEntry {
    pub s: u32,
    /// Root of the characteristic equation; the sequence count grows as
    /// `lambda^n`.
    pub lambda: f64,
    /// Asymptotic rate `log2(lambda)`.
    pub log_lambda: f64,
    /// Redundancy per position, `1 - log2(lambda)`.
    pub redundancy_coeff: f64,
}

/// Rate entries for `s = 1..=s_max`.
pub fn rate_table(s_max: u32) -> Vec<RateEntry> {
    (1..=s_max)
        .map(|s| {
            let lambda = lambda_root(s, 1e-12);
            let log_lambda = lambda.log2();
            RateEntry {
                s,
                lambda,
                log_lambda,
                redundancy_coeff: 1.0 - log_lambda,
            }
        })
        .collect()
}

pub fn rates_to_tsv(entries: &[RateEntry]) -> String {
    let mut out = String::from("s\tlambda\trate\n");
    for e in entries {
        out.push_str(&format!("{}\t{:.4}\t{:.4}\n", e.s, e.lambda, e.log_lambda));
    }
    out
}

pub fn rates_to_json(entries: &[RateEntry]) -> String {
    let rows: Vec<_> = entries
        .iter()
        .map(|e| json!({"s": e.s, "lambda": e.lambda, "rate": e.log_lambda}))
        .collect();
    serde_json::to_string_pretty(&rows).expect("rates serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_count_examples() {
        assert_eq!(count_words(5, 2).unwrap(), 24);
        assert_eq!(count_words(2, 2).unwrap(), 4);
        // Base cases: h = 2^n - 1 one step past the trivial range, 2^n in it.
        assert_eq!(count_words(3, 2).unwrap(), 7);
        assert_eq!(count_words(3, 3).unwrap(), 8);
        assert_eq!(count_words(11, 1).unwrap(), 233);
    }

    #[test]
    fn fib_g_examples() {
        assert_eq!(fib_g(1).unwrap(), 2);
        assert_eq!(fib_g(2).unwrap(), 3);
        assert_eq!(fib_g(3).unwrap(), 5);
        assert_eq!(fib_g(0).unwrap(), 1);
        assert_eq!(fib_g(-1).unwrap(), 1);
        assert!(fib_g(-2).is_err());
    }

    #[test]
    fn necklace_word_count_examples() {
        assert_eq!(count_necklace_words(5, 2).unwrap(), 21);
        assert_eq!(count_necklace_words(3, 1).unwrap(), 4);
        assert_eq!(count_necklace_words(4, 3).unwrap(), 15);
        assert_eq!(count_necklace_words(7, 7).unwrap(), 128);
        let expect = fib_g(11).unwrap() - fib_g(7).unwrap();
        assert_eq!(count_necklace_words(11, 1).unwrap(), expect);
        assert_eq!(expect, 199);
    }

    #[test]
    fn necklace_count_matches_fibonacci_identity_up_to_40() {
        for n in 3..=40i64 {
            let direct = count_necklace_words_with_cap(n as u32, 1, 40).unwrap();
            assert_eq!(direct, fib_g(n).unwrap() - fib_g(n - 4).unwrap(), "n={n}");
        }
    }

    #[test]
    fn walk_matches_closed_formula() {
        for n in 3..=14u32 {
            for s in 1..=(n - 2) {
                assert_eq!(
                    count_necklace_words(n, s).unwrap(),
                    count_necklace_words_formula(n, s).unwrap(),
                    "({n},{s})"
                );
            }
        }
    }

    #[test]
    fn lambda_examples() {
        assert!((lambda_root(1, 1e-12) - 1.6180).abs() < 5e-5);
        assert!((lambda_root(5, 1e-12) - 1.9836).abs() < 5e-5);
        assert!((lambda_root(12, 1e-12) - 1.9999).abs() < 5e-5);
    }

    #[test]
    fn lambda_monotone_below_two() {
        let mut prev = 1.0;
        for s in 1..=20 {
            let l = lambda_root(s, 1e-12);
            assert!(l > prev && l < 2.0, "s={s} lambda={l}");
            prev = l;
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(count_words_closed(5, 2).unwrap(), 24);
        assert_eq!(count_words_closed(10, 3).unwrap(), 773);
        assert_eq!(count_words_closed(4, 1).unwrap(), 8);
    }

    #[test]
    fn closed_form_flags_precision_loss() {
        // Values past the exactly representable f64 integers are refused
        // instead of silently rounded.
        assert!(matches!(
            count_words_closed(80, 1),
            Err(Error::PrecisionLoss(_))
        ));
    }

    #[test]
    fn weight_count_examples() {
        assert_eq!(count_weight_words(5, 3), 6);
        assert_eq!(count_weight_words(7, 7), 1);
        assert_eq!(count_weight_words(5, 1), 0);
        assert_eq!(count_weight_necklace_words(5, 3), 5);
        assert_eq!(count_weight_necklace_words(6, 6), 1);
        let total: u64 = (0..=5).map(|k| count_weight_necklace_words(5, k)).sum();
        assert_eq!(total, 11);
    }

    #[test]
    fn weight_sums_match_totals() {
        for n in 1..=30u32 {
            let words: u64 = (0..=n).map(|k| count_weight_words(n, k)).sum();
            assert_eq!(words, count_words(n, 1).unwrap(), "word sum at n={n}");
        }
        // n = 1 is degenerate for the necklace split: the all-zero word
        // sits in a (1,1)-necklace but carries no weight-k term.
        for n in 2..=30u32 {
            let neck: u64 = (0..=n).map(|k| count_weight_necklace_words(n, k)).sum();
            assert_eq!(
                neck,
                count_necklace_words_with_cap(n, 1, 30).unwrap(),
                "necklace sum at n={n}"
            );
        }
    }

    #[test]
    fn metrics_examples() {
        let (rate1, red1) = metrics(20, 1).unwrap();
        assert!((rate1 - 0.6942).abs() < 1e-3);
        assert!(red1 < 19.0);
        let (rate2, _) = metrics(20, 2).unwrap();
        assert!((rate2 - 0.8791).abs() < 1e-3);
    }

    #[test]
    fn table_cells_and_invariants() {
        let table = count_table(11, 7).unwrap();
        assert_eq!(table.get(5, 2), Some((21, 24)));
        assert_eq!(table.get(11, 1), Some((199, 233)));
        assert_eq!(table.get(1, 1), Some((2, 2)));
        assert!(table.get(1, 2).is_none());
        for (n, s, ell, h) in table.rows() {
            assert!(ell <= h, "ell <= h at ({n},{s})");
            if s >= n {
                assert_eq!(ell, h);
                assert_eq!(h, 1 << n);
            }
        }
        assert_eq!(table, count_table_seq(11, 7).unwrap());
    }

    #[test]
    fn tsv_layout() {
        let table = count_table(3, 2).unwrap();
        let tsv = table.to_tsv();
        let lines: Vec<&str> = tsv.lines().collect();
        assert_eq!(lines[0], "n\ts\tell\th");
        assert!(lines.contains(&"3\t2\t7\t7"));
    }

    #[test]
    fn rates_emitters() {
        let rates = rate_table(2);
        let tsv = rates_to_tsv(&rates);
        assert!(tsv.contains("1\t1.6180\t0.6942"));
        assert!(tsv.contains("2\t1.8393\t0.8791"));
        let json = rates_to_json(&rates);
        assert!(json.contains("\"rate\""));
    }
}
