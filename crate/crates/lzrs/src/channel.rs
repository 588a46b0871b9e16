//! Bit-error injection and the randomized resilience experiment.
//!
//! The channel flips each payload bit independently with probability `ber`
//! from a seeded generator, so a (model, seed, length) triple always yields
//! the same pattern. The harness encodes an input once, corrupts it with
//! per-trial seeds, decodes, and counts byte-exact recoveries. The file
//! header is left untouched: corruption is confined to the encoded stream
//! so the comparison isolates the embedded-parity schemes themselves.

use crate::framing::FormatError;
use crate::pipeline::{self, CodeMode, EncodeConfig, EncodeError};
use rand::prelude::*;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use std::io::{self, Write};

#[derive(Debug, Clone, Copy)]
pub struct ErrorModel {
    /// Probability of flipping each bit, in [0, 1].
    pub ber: f64,
    pub seed: u64,
}

/// Flip bits of `payload` in place; returns the number of flipped bits.
pub fn inject(payload: &mut [u8], model: &ErrorModel) -> u64 {
    assert!((0.0..=1.0).contains(&model.ber), "ber must be in [0, 1]");
    let mut rng = ChaCha12Rng::seed_from_u64(model.seed);
    let mut flips = 0;
    for byte in payload.iter_mut() {
        for bit in 0..8 {
            if rng.random_bool(model.ber) {
                *byte ^= 1 << bit;
                flips += 1;
            }
        }
    }
    flips
}

/// Corrupt a protected container, skipping its header.
pub fn corrupt_file(file: &mut [u8], model: &ErrorModel) -> Result<u64, FormatError> {
    let (_, header_len) = crate::framing::Header::parse(file)?;
    Ok(inject(&mut file[header_len..], model))
}

#[derive(Debug, Clone)]
pub struct TrialReport {
    pub input: String,
    pub algorithm: &'static str,
    pub e1: u8,
    pub ber: f64,
    pub trials: u32,
    pub successes: u32,
    pub mean_e: f64,
    pub payload_bytes: usize,
}

#[derive(Debug, Clone)]
pub struct Experiment {
    pub input: String,
    pub mode: CodeMode,
    pub window: usize,
    pub max_len: usize,
    pub bers: Vec<f64>,
    pub trials: u32,
    pub base_seed: u64,
}

fn algorithm_name(mode: CodeMode) -> &'static str {
    match mode {
        CodeMode::Constant { .. } => "constant",
        CodeMode::Adaptive { .. } => "adaptive",
    }
}

/// Encode once, then for every BER run `trials` independent corruptions.
/// Success means the decoder returned with no failure status and the output
/// equals the source byte for byte; a miscorrection producing wrong output
/// counts as a failure.
pub fn run_experiment(source: &[u8], exp: &Experiment) -> Result<Vec<TrialReport>, EncodeError> {
    let cfg = EncodeConfig { mode: exp.mode, window: exp.window, max_len: exp.max_len };
    let enc = pipeline::encode(source, &cfg)?;
    let e1 = match exp.mode {
        CodeMode::Constant { e, .. } => e,
        CodeMode::Adaptive { e1 } => e1,
    };
    let mut reports = Vec::with_capacity(exp.bers.len());
    for (bi, &ber) in exp.bers.iter().enumerate() {
        let successes = (0..exp.trials)
            .into_par_iter()
            .filter(|&trial| {
                // distinct, reproducible seed per (ber, trial) point
                let seed = exp.base_seed ^ ((bi as u64) << 32) ^ trial as u64;
                let mut file = enc.file.clone();
                inject(&mut file[enc.header_len..], &ErrorModel { ber, seed });
                match pipeline::decode(&file, exp.window, exp.max_len) {
                    Ok(out) => out.is_success() && out.data == source,
                    Err(_) => false,
                }
            })
            .count() as u32;
        reports.push(TrialReport {
            input: exp.input.clone(),
            algorithm: algorithm_name(exp.mode),
            e1,
            ber,
            trials: exp.trials,
            successes,
            mean_e: enc.plan.mean_e(),
            payload_bytes: enc.payload_len,
        });
    }
    Ok(reports)
}

pub const CSV_HEADER: &str = "input,algorithm,e1,ber,trials,successes,mean_e,payload_bytes";

pub fn write_csv<W: Write>(w: &mut W, reports: &[TrialReport]) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in reports {
        writeln!(
            w,
            "{},{},{},{},{},{},{:.4},{}",
            r.input, r.algorithm, r.e1, r.ber, r.trials, r.successes, r.mean_e, r.payload_bytes
        )?;
    }
    Ok(())
}
