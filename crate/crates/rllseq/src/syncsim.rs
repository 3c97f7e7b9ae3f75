//! Pulse-slot synchronization simulator.
//!
//! A beacon repeats a verified sequence; the receiver sees one `n`-slot
//! window at an unknown offset, possibly with per-slot inversions, and
//! acquires by decoding the window position. The doubled-slot scheme
//! (two pulse slots per bit, `2^{n+1}` slots, `2n`-slot windows) is the
//! analytic baseline the run-length-limited sequences are measured
//! against.
//!
//! All randomness comes from SplitMix64; each trial derives its own
//! stream from `(seed, trial)`, so reports are reproducible bit for bit
//! on any platform regardless of how the trials are scheduled.

use serde::Serialize;

use crate::bitword::BitWord;
use crate::enumeration::{count_necklace_words, metrics};
use crate::generators::{verify, SequenceBuffer};
use crate::locate::{build_index, locate, SequenceIndex};
use crate::{Error, Result};

/// Noisy-channel and trial-count settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelConfig {
    /// Per-slot inversion probability, in `[0, 1)`.
    pub flip_prob: f64,
    pub trials: u64,
    pub seed: u64,
}

/// Acquisition statistics plus the rate/redundancy bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SyncReport {
    pub trials: u64,
    pub successes: u64,
    pub success_rate: f64,
    pub window_slots: u32,
    pub sequence_slots: u64,
    /// `log2(sequence length) / window order`.
    pub rate: f64,
    /// `window order - log2(sequence length)`.
    pub redundancy: f64,
}

/// SplitMix64 (the 64-bit mix of Steele, Lea, and Flood). Small, fast,
/// and stable across platforms; the whole simulator keys off it.
#[derive(Debug, Clone)]
struct SplitMix64(u64);

impl SplitMix64 {
    /// Stream for one trial: the state is `seed XOR (trial+1) * golden`.
    fn for_trial(seed: u64, trial: u64) -> Self {
        Self(seed ^ (trial + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..bound` by the fixed-point multiply.
    fn next_below(&mut self, bound: u64) -> u64 {
        ((u128::from(self.next_u64()) * u128::from(bound)) >> 64) as u64
    }
}

fn run_trial(seq: &SequenceBuffer, index: &SequenceIndex, cfg: &ChannelConfig, t: u64) -> bool {
    let n = seq.order();
    let mut rng = SplitMix64::for_trial(cfg.seed, t);
    let offset = rng.next_below(seq.window_count() as u64) as usize;
    let mut window = seq.window_at(offset);
    if cfg.flip_prob > 0.0 {
        for slot in 0..n {
            if rng.next_f64() < cfg.flip_prob {
                window ^= 1 << (n - 1 - slot);
            }
        }
    }
    locate(index, BitWord::new(window, n)) == Some(offset)
}

fn validate_config(cfg: &ChannelConfig) -> Result<()> {
    if !(0.0..1.0).contains(&cfg.flip_prob) {
        return Err(Error::InvalidParameter(format!(
            "flip probability must lie in [0,1), got {}",
            cfg.flip_prob
        )));
    }
    if cfg.trials < 1 {
        return Err(Error::InvalidParameter("need at least one trial".into()));
    }
    Ok(())
}

fn assemble(seq: &SequenceBuffer, cfg: &ChannelConfig, successes: u64) -> SyncReport {
    let len = seq.len() as f64;
    let n = seq.order();
    SyncReport {
        trials: cfg.trials,
        successes,
        success_rate: successes as f64 / cfg.trials as f64,
        window_slots: n,
        sequence_slots: seq.len() as u64,
        rate: len.log2() / f64::from(n),
        redundancy: f64::from(n) - len.log2(),
    }
}

/// Runs `cfg.trials` independent acquisition trials against a verified
/// sequence: random offset, window read, optional per-slot flips, decode.
/// A trial succeeds only when the decoder returns exactly the drawn
/// offset.
pub fn simulate(seq: &SequenceBuffer, cfg: &ChannelConfig) -> Result<SyncReport> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        validate_config(cfg)?;
        let index = checked_index(seq)?;
        let successes = (0..cfg.trials)
            .into_par_iter()
            .filter(|&t| run_trial(seq, &index, cfg, t))
            .count() as u64;
        Ok(assemble(seq, cfg, successes))
    }
    #[cfg(not(feature = "parallel"))]
    {
        simulate_seq(seq, cfg)
    }
}

/// Single-threaded variant of [`simulate`]; also the benchmark baseline
/// for the parallel build.
pub fn simulate_seq(seq: &SequenceBuffer, cfg: &ChannelConfig) -> Result<SyncReport> {
    validate_config(cfg)?;
    let index = checked_index(seq)?;
    let successes = (0..cfg.trials)
        .filter(|&t| run_trial(seq, &index, cfg, t))
        .count() as u64;
    Ok(assemble(seq, cfg, successes))
}

fn checked_index(seq: &SequenceBuffer) -> Result<SequenceIndex> {
    let report = verify(seq)?;
    if !report.valid {
        return Err(Error::InvalidParameter(
            "sequence fails verification; nothing to acquire against".into(),
        ));
    }
    build_index(seq)
}

/// Analytic figures for the doubled-slot baseline of order `n`: two pulse
/// slots per bit over a full de Bruijn sequence, so `2^{n+1}` slots,
/// `2n`-slot windows, rate 0.5 by its defining convention, redundancy
/// `n-1`.
pub fn baseline_metrics(n: u32) -> Result<SyncReport> {
    if !(2..=62).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "baseline needs 2 <= n <= 62, got {n}"
        )));
    }
    Ok(SyncReport {
        trials: 0,
        successes: 0,
        success_rate: 1.0,
        window_slots: 2 * n,
        sequence_slots: 1u64 << (n + 1),
        rate: 0.5,
        redundancy: f64::from(n) - 1.0,
    })
}

/// Analytic comparison at order `n`: our maximum-length `(n,s)`-sequence
/// (an `n`-slot window) against the doubled-slot baseline (a `2n`-slot
/// window).
pub fn compare(n: u32, s: u32) -> Result<(SyncReport, SyncReport)> {
    let ell = count_necklace_words(n, s)?;
    let (rate, redundancy) = metrics(n, s)?;
    let ours = SyncReport {
        trials: 0,
        successes: 0,
        success_rate: 1.0,
        window_slots: n,
        sequence_slots: ell,
        rate,
        redundancy,
    };
    Ok((ours, baseline_metrics(n)?))
}
