//! Block planning and the protected-file container format.
//!
//! The serialized token stream is cut into blocks of `255 - 2*e_n` bytes.
//! `e_1` is caller-supplied; in adaptive mode each following budget is
//! derived from the embedding capacity of the block before it:
//! `e_{n+1} = floor(capacity(B_n) / 16)`, capacity being the sum of
//! `floor(log2 M_k)` over the tokens assigned to the block. A 4-byte record
//! that straddles a boundary belongs to the block holding its *last* byte,
//! so by the time the decoder has corrected blocks `1..n` it can read every
//! record of block `n` and recover the parity for block `n+1` from them.
//!
//! Container layout (bit-exact):
//! `[magic "LZRA"][version 1][mode 0|1][e (constant mode only)][e1]`
//! `[payload_len u64 LE][rs1 2*e1 bytes][payload]`.
//! `e1 = 0` gives the backward-compatible variant whose payload is a plain
//! LZ77 stream.

use crate::lz77::{Token, RECORD_LEN};
use crate::stego::token_capacity;
use std::ops::Range;
use thiserror::Error;

pub const MAGIC: [u8; 4] = *b"LZRA";
pub const VERSION: u8 = 1;
/// Reed-Solomon codeword length; block + parity never exceed this.
pub const RS_BLOCK: usize = 255;
/// Largest per-block parity budget, keeping block length >= 1.
pub const MAX_E: u8 = 127;
/// Bits of embedding capacity per unit of e (2 parity bytes).
pub const BITS_PER_E: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Constant,
    Adaptive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// Byte offset of the block within the serialized stream.
    pub start: usize,
    pub len: usize,
    /// Parity budget protecting this block.
    pub e: u8,
    /// Tokens whose records end inside this block.
    pub tokens: Range<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPlan {
    pub blocks: Vec<Block>,
    /// Times a derived budget had to be clamped to `MAX_E`.
    pub clamp_events: usize,
}

impl BlockPlan {
    pub fn mean_e(&self) -> f64 {
        if self.blocks.is_empty() {
            return 0.0;
        }
        self.blocks.iter().map(|b| b.e as f64).sum::<f64>() / self.blocks.len() as f64
    }
}

/// Embedding capacity of a token range, in bits.
pub fn capacity(tokens: &[Token], range: Range<usize>) -> usize {
    tokens[range].iter().map(|t| token_capacity(t.multiplicity()) as usize).sum()
}

fn block_len(e: u8) -> usize {
    RS_BLOCK - 2 * e as usize
}

fn plan(tokens: &[Token], stream_len: usize, e1: u8, constant_e: Option<u8>) -> BlockPlan {
    debug_assert_eq!(stream_len, tokens.len() * RECORD_LEN);
    let mut blocks = Vec::new();
    let mut clamp_events = 0;
    let mut start = 0usize;
    let mut next_token = 0usize;
    let mut e = e1;
    while start < stream_len {
        let len = block_len(e).min(stream_len - start);
        let end = start + len;
        let first = next_token;
        // token k's record occupies bytes [4k, 4k+4); it ends in this block
        // when its last byte 4k+3 lies before `end`
        while next_token < tokens.len() && RECORD_LEN * next_token + RECORD_LEN - 1 < end {
            next_token += 1;
        }
        blocks.push(Block { start, len, e, tokens: first..next_token });
        start = end;
        e = match constant_e {
            Some(c) => c,
            None => {
                let cap = capacity(tokens, first..next_token);
                let derived = cap / BITS_PER_E;
                if derived > MAX_E as usize {
                    clamp_events += 1;
                    MAX_E
                } else {
                    derived as u8
                }
            }
        };
    }
    debug_assert_eq!(next_token, tokens.len());
    BlockPlan { blocks, clamp_events }
}

/// Adaptive plan: block 1 sized by `e1`, every later budget derived from
/// the preceding block's capacity.
pub fn plan_blocks(tokens: &[Token], stream_len: usize, e1: u8) -> BlockPlan {
    assert!(e1 <= MAX_E);
    plan(tokens, stream_len, e1, None)
}

/// Constant plan: every block `255 - 2e` bytes with the same budget, except
/// block 1 which is sized by its own protection level `e1`.
pub fn plan_blocks_constant(tokens: &[Token], stream_len: usize, e: u8, e1: u8) -> BlockPlan {
    assert!(e <= MAX_E && e1 <= MAX_E);
    plan(tokens, stream_len, e1, Some(e))
}

/// Index of the first block (if any) whose capacity cannot hold the 2e
/// parity bytes of its successor under a constant-e plan.
pub fn constant_deficit(tokens: &[Token], plan: &BlockPlan, e: u8) -> Option<usize> {
    let need = BITS_PER_E * e as usize;
    plan.blocks
        .iter()
        .take(plan.blocks.len().saturating_sub(1))
        .position(|b| capacity(tokens, b.tokens.clone()) < need)
}

/// The largest constant e the stream's redundancy supports: every block but
/// the last must be able to embed the 2e parity bytes of its successor.
pub fn max_constant_e(tokens: &[Token], stream_len: usize) -> u8 {
    for e in (1..=MAX_E).rev() {
        let plan = plan_blocks_constant(tokens, stream_len, e, e);
        if constant_deficit(tokens, &plan, e).is_none() {
            return e;
        }
    }
    0
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("bad magic bytes (not an LZRA container)")]
    BadMagic,
    #[error("unsupported container version {0}")]
    BadVersion(u8),
    #[error("unknown mode byte {0}")]
    BadMode(u8),
    #[error("header truncated at {0} bytes")]
    TruncatedHeader(usize),
    #[error("e value {0} exceeds the maximum of 127")]
    BadE(u8),
    #[error("payload length {0} is not a multiple of 4")]
    RaggedPayload(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Header {
    pub mode: Mode,
    /// Constant-mode block budget; unused in adaptive mode.
    pub const_e: u8,
    /// Protection level of the first block; 0 means backward-compatible.
    pub e1: u8,
    pub payload_len: u64,
    /// Parity of the first block, `2 * e1` bytes.
    pub rs1: Vec<u8>,
}

impl Header {
    pub fn encoded_len(&self) -> usize {
        let mode_extra = match self.mode {
            Mode::Constant => 1,
            Mode::Adaptive => 0,
        };
        4 + 1 + 1 + mode_extra + 1 + 8 + self.rs1.len()
    }

    pub fn write(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        match self.mode {
            Mode::Constant => {
                out.push(0);
                out.push(self.const_e);
            }
            Mode::Adaptive => out.push(1),
        }
        out.push(self.e1);
        out.extend_from_slice(&self.payload_len.to_le_bytes());
        debug_assert_eq!(self.rs1.len(), 2 * self.e1 as usize);
        out.extend_from_slice(&self.rs1);
    }

    /// Parse a header from the front of `bytes`; returns the header and its
    /// encoded length.
    pub fn parse(bytes: &[u8]) -> Result<(Header, usize), FormatError> {
        let need = |n: usize| {
            if bytes.len() < n {
                Err(FormatError::TruncatedHeader(bytes.len()))
            } else {
                Ok(())
            }
        };
        need(6)?;
        if bytes[..4] != MAGIC {
            return Err(FormatError::BadMagic);
        }
        if bytes[4] != VERSION {
            return Err(FormatError::BadVersion(bytes[4]));
        }
        let (mode, const_e, mut at) = match bytes[5] {
            0 => {
                need(7)?;
                (Mode::Constant, bytes[6], 7)
            }
            1 => (Mode::Adaptive, 0, 6),
            other => return Err(FormatError::BadMode(other)),
        };
        need(at + 9)?;
        let e1 = bytes[at];
        at += 1;
        let payload_len = u64::from_le_bytes(bytes[at..at + 8].try_into().unwrap());
        at += 8;
        if e1 > MAX_E || const_e > MAX_E {
            return Err(FormatError::BadE(e1.max(const_e)));
        }
        if payload_len % RECORD_LEN as u64 != 0 {
            return Err(FormatError::RaggedPayload(payload_len));
        }
        let rs_len = 2 * e1 as usize;
        need(at + rs_len)?;
        let rs1 = bytes[at..at + rs_len].to_vec();
        at += rs_len;
        Ok((Header { mode, const_e, e1, payload_len, rs1 }, at))
    }
}
