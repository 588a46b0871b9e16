//! Deterministic synthetic test inputs with different redundancy profiles.
//!
//! No real corpus files ship with the repository; these generators stand in
//! for them. Each is seeded, so expected values frozen in tests stay stable.

use rand::prelude::*;
use rand_chacha::ChaCha12Rng;

pub const NAMES: [&str; 5] = ["text", "source", "geo", "log", "dna"];

pub fn by_name(name: &str, len: usize) -> Vec<u8> {
    match name {
        "text" => text(len),
        "source" => source_code(len),
        "geo" => geo_like(len),
        "log" => log_lines(len),
        "dna" => dna(len),
        other => panic!("unknown corpus input {other}"),
    }
}

/// English-like word salad: moderate redundancy, long tail of novel digrams.
pub fn text(len: usize) -> Vec<u8> {
    let words = [
        "the", "of", "and", "pointer", "window", "entropy", "channel", "block", "stream",
        "redundancy", "parity", "match", "symbol", "history", "measure", "encoder", "decoder",
        "length", "error", "protection", "experiment", "result", "string", "value",
    ];
    let mut rng = ChaCha12Rng::seed_from_u64(0x7e57_0001);
    let mut out = Vec::with_capacity(len + 16);
    while out.len() < len {
        out.extend_from_slice(words[rng.random_range(0..words.len())].as_bytes());
        out.push(if rng.random_bool(0.08) { b'.' } else { b' ' });
        if rng.random_bool(0.04) {
            out.push(b'\n');
        }
    }
    out.truncate(len);
    out
}

/// Highly repetitive program text.
pub fn source_code(len: usize) -> Vec<u8> {
    let mut rng = ChaCha12Rng::seed_from_u64(0x7e57_0002);
    let mut out = Vec::with_capacity(len + 64);
    let mut n = 0u32;
    while out.len() < len {
        n += 1;
        let line = match rng.random_range(0..4) {
            0 => format!("    let value_{n} = table[index_{}] + offset;\n", n % 7),
            1 => format!("    if value_{n} > threshold {{ count += 1; }}\n"),
            2 => format!("    assert_eq!(buffer.len(), expected_len_{});\n", n % 5),
            _ => format!("    // update the running checksum for chunk {n}\n"),
        };
        out.extend_from_slice(line.as_bytes());
    }
    out.truncate(len);
    out
}

/// Binary record data: slowly drifting 4-byte samples with zero padding,
/// giving very high match multiplicity (a stand-in for seismic traces).
pub fn geo_like(len: usize) -> Vec<u8> {
    let mut rng = ChaCha12Rng::seed_from_u64(0x7e57_0003);
    let mut out = Vec::with_capacity(len + 8);
    let mut level: i32 = 1000;
    while out.len() < len {
        level += rng.random_range(-3..=3);
        let sample = (level.clamp(0, 4095)) as u16;
        out.extend_from_slice(&[0, (sample >> 8) as u8, (sample & 0xFF) as u8, 0]);
        if rng.random_bool(0.02) {
            out.extend_from_slice(&[0u8; 16]);
        }
    }
    out.truncate(len);
    out
}

/// Timestamped log lines: strong line-level repetition.
pub fn log_lines(len: usize) -> Vec<u8> {
    let mut rng = ChaCha12Rng::seed_from_u64(0x7e57_0004);
    let mut out = Vec::with_capacity(len + 80);
    let mut t = 1_700_000_000u64;
    while out.len() < len {
        t += rng.random_range(1..30);
        let line = match rng.random_range(0..3) {
            0 => format!("[{t}] INFO worker-{} accepted connection\n", rng.random_range(0..4)),
            1 => format!("[{t}] WARN queue depth {} above soft limit\n", rng.random_range(90..120)),
            _ => format!("[{t}] INFO request served in {} ms\n", rng.random_range(1..40)),
        };
        out.extend_from_slice(line.as_bytes());
    }
    out.truncate(len);
    out
}

/// Four-symbol alphabet: short matches everywhere, huge multiplicity.
pub fn dna(len: usize) -> Vec<u8> {
    let mut rng = ChaCha12Rng::seed_from_u64(0x7e57_0005);
    (0..len).map(|_| b"ACGT"[rng.random_range(0..4)]).collect()
}
