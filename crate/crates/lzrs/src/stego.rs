//! Covert bit embedding in LZ77 pointer choice.
//!
//! A token whose longest match occurs at M distinct offsets can carry
//! d = floor(log2 M) bits: the bits, read MSB-first, index the ascending
//! candidate list. Embedding changes only which offset a record names, so
//! the decompressed output and the serialized size are untouched and a
//! plain LZ77 decoder never notices.

use crate::lz77::{self, Record, Token};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StegoError {
    #[error("embedding {bits} bits exceeds range capacity of {budget}")]
    CapacityExceeded { bits: usize, budget: usize },
    #[error("token {index}: stored position is not a longest-match offset")]
    CorruptPointer { index: usize },
    #[error(transparent)]
    Stream(#[from] lz77::StreamError),
}

/// Bits a token with multiplicity `m` can carry.
#[inline]
pub fn token_capacity(m: usize) -> u32 {
    debug_assert!(m >= 1);
    usize::ilog2(m)
}

/// Total capacity of a token range, in bits.
pub fn range_budget(tokens: &[Token]) -> usize {
    tokens.iter().map(|t| token_capacity(t.multiplicity()) as usize).sum()
}

/// Unpack bytes into bits, MSB first.
pub fn bytes_to_bits(bytes: &[u8]) -> Vec<bool> {
    let mut out = Vec::with_capacity(bytes.len() * 8);
    for &b in bytes {
        for shift in (0..8).rev() {
            out.push(b >> shift & 1 == 1);
        }
    }
    out
}

/// Pack bits into bytes, MSB first; a ragged tail is zero-padded.
pub fn bits_to_bytes(bits: &[bool]) -> Vec<u8> {
    let mut out = Vec::with_capacity(bits.len().div_ceil(8));
    for chunk in bits.chunks(8) {
        let mut b = 0u8;
        for (k, &bit) in chunk.iter().enumerate() {
            if bit {
                b |= 1 << (7 - k);
            }
        }
        out.push(b);
    }
    out
}

/// Spend `bits` on the pointer choices of `tokens`, MSB-first in stream
/// order. Tokens after the bits run out take index 0, so the result is a
/// pure function of (parse, bits).
pub fn embed(tokens: &mut [Token], bits: &[bool]) -> Result<(), StegoError> {
    let budget = range_budget(tokens);
    if bits.len() > budget {
        return Err(StegoError::CapacityExceeded { bits: bits.len(), budget });
    }
    let mut next = 0usize;
    for token in tokens.iter_mut() {
        let d = token_capacity(token.multiplicity());
        let mut v = 0usize;
        for _ in 0..d {
            v <<= 1;
            if next < bits.len() {
                v |= bits[next] as usize;
                next += 1;
            }
        }
        token.record.pos = token.candidates[v];
    }
    Ok(())
}

/// Recover the first `nbits` embedded bits from a record range.
///
/// `history` must be the exact decompressed text preceding the range;
/// `range_ends_stream` marks a range whose final record is the last of the
/// whole stream (its match may have been truncated at end of input).
pub fn extract(
    records: &[Record],
    history: &[u8],
    window: usize,
    max_len: usize,
    nbits: usize,
    range_ends_stream: bool,
) -> Result<Vec<bool>, StegoError> {
    let mut text = history.to_vec();
    let mut bits = Vec::new();
    for (index, rec) in records.iter().enumerate() {
        let i = text.len();
        lz77::decompress_record(rec, index, &mut text, window, max_len)?;
        let is_last = range_ends_stream && index + 1 == records.len();
        let cands = lz77::recompute_candidates(
            &text,
            i,
            rec.len as usize,
            rec.sym,
            window,
            max_len,
            is_last,
        );
        bits.extend(index_bits(rec, &cands, index)?);
    }
    if nbits > bits.len() {
        return Err(StegoError::CapacityExceeded { bits: nbits, budget: bits.len() });
    }
    bits.truncate(nbits);
    Ok(bits)
}

/// The low `d` bits (MSB-first) of a record's candidate index. A pointer
/// outside the list, or at an index an honest embedder can never pick,
/// means the stream was corrupted past what RS could repair.
pub fn index_bits(rec: &Record, candidates: &[u16], index: usize) -> Result<Vec<bool>, StegoError> {
    let v = match candidates.binary_search(&rec.pos) {
        Ok(v) => v,
        Err(_) => return Err(StegoError::CorruptPointer { index }),
    };
    let d = token_capacity(candidates.len());
    if v >> d != 0 {
        return Err(StegoError::CorruptPointer { index });
    }
    Ok((0..d).rev().map(|shift| v >> shift & 1 == 1).collect())
}
