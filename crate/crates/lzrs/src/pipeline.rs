//! Top-level encoders and decoders: LZ77 parse, block planning, and
//! Reed-Solomon parity threaded backwards through the stream.
//!
//! The encoder walks the planned blocks in reverse: the parity of block n is
//! computed once its bytes are final and then hidden in the pointer choices
//! of block n-1. The decoder runs forward: correct a block with the parity
//! recovered from its predecessor, decompress its records, and read out of
//! their pointer choices both the next block's parity and (via the capacity
//! recomputation) the next block's length.

use crate::framing::{self, BlockPlan, FormatError, Header, Mode, BITS_PER_E, MAX_E};
use crate::lz77::{self, MatchFinder, Record, RECORD_LEN};
use crate::rs::{self, RsStatus};
use crate::stego;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeMode {
    /// Same budget `e` for every block; block 1 protected at `e1`
    /// (conventionally equal to `e`, or 0 for the compatible variant).
    Constant { e: u8, e1: u8 },
    /// Per-block budgets derived from the preceding block's capacity.
    Adaptive { e1: u8 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncodeConfig {
    pub mode: CodeMode,
    pub window: usize,
    pub max_len: usize,
}

impl Default for EncodeConfig {
    fn default() -> Self {
        EncodeConfig {
            mode: CodeMode::Adaptive { e1: 1 },
            window: lz77::DEFAULT_WINDOW,
            max_len: lz77::DEFAULT_MAX_LEN,
        }
    }
}

#[derive(Debug, Error)]
pub enum EncodeError {
    #[error("block {block} capacity {capacity} bits cannot embed {required} parity bits; retry with smaller e")]
    InsufficientCapacity { block: usize, capacity: usize, required: usize },
    #[error("e value {0} exceeds the maximum of 127")]
    BadE(u8),
    #[error(transparent)]
    Rs(#[from] rs::RsError),
    #[error(transparent)]
    Stego(#[from] stego::StegoError),
}

#[derive(Debug)]
pub struct Encoded {
    /// The complete on-disk container.
    pub file: Vec<u8>,
    pub plan: BlockPlan,
    pub header_len: usize,
    pub payload_len: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailCause {
    /// RS decoding gave up on the block.
    Rs,
    /// The corrected block decompressed to an invalid token stream.
    Stream,
    /// The payload ended before the header's stated length.
    Truncated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeStatus {
    Ok,
    Corrected,
    Failed { block: usize, cause: FailCause },
}

#[derive(Debug)]
pub struct DecodeOutcome {
    /// On failure this is the prefix recovered before the failing block.
    pub data: Vec<u8>,
    pub blocks_corrected: usize,
    /// Budget of every block the decoder processed, in order.
    pub block_es: Vec<u8>,
    pub status: DecodeStatus,
}

impl DecodeOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self.status, DecodeStatus::Ok | DecodeStatus::Corrected)
    }
}

pub fn encode(source: &[u8], cfg: &EncodeConfig) -> Result<Encoded, EncodeError> {
    let (e1, const_e) = match cfg.mode {
        CodeMode::Constant { e, e1 } => (e1, Some(e)),
        CodeMode::Adaptive { e1 } => (e1, None),
    };
    if e1 > MAX_E || const_e.unwrap_or(0) > MAX_E {
        return Err(EncodeError::BadE(e1.max(const_e.unwrap_or(0))));
    }

    let mut tokens = lz77::compress(source, cfg.window, cfg.max_len);
    let mut payload = lz77::serialize(tokens.iter().map(|t| t.record));
    let plan = match const_e {
        Some(e) => {
            let p = framing::plan_blocks_constant(&tokens, payload.len(), e, e1);
            if let Some(block) = framing::constant_deficit(&tokens, &p, e) {
                return Err(EncodeError::InsufficientCapacity {
                    block,
                    capacity: framing::capacity(&tokens, p.blocks[block].tokens.clone()),
                    required: BITS_PER_E * e as usize,
                });
            }
            p
        }
        None => framing::plan_blocks(&tokens, payload.len(), e1),
    };

    // Reverse pass: parity of block n lands in the pointers of block n-1.
    // Walking backwards guarantees block n's bytes are final when read: they
    // are touched only by embedding into blocks n and n+1, both done by then.
    for n in (1..plan.blocks.len()).rev() {
        let blk = &plan.blocks[n];
        let parity = rs::encode(&payload[blk.start..blk.start + blk.len], blk.e as usize)?;
        let bits = stego::bytes_to_bits(&parity);
        let target = plan.blocks[n - 1].tokens.clone();
        stego::embed(&mut tokens[target.clone()], &bits)?;
        for k in target {
            let mut rec = Vec::with_capacity(RECORD_LEN);
            tokens[k].record.write(&mut rec);
            payload[RECORD_LEN * k..RECORD_LEN * (k + 1)].copy_from_slice(&rec);
        }
    }

    let rs1 = match plan.blocks.first() {
        Some(b) => rs::encode(&payload[b.start..b.start + b.len], e1 as usize)?,
        None => rs::encode(&[], e1 as usize)?,
    };
    let header = Header {
        mode: if const_e.is_some() { Mode::Constant } else { Mode::Adaptive },
        const_e: const_e.unwrap_or(0),
        e1,
        payload_len: payload.len() as u64,
        rs1,
    };
    let mut file = Vec::with_capacity(header.encoded_len() + payload.len());
    header.write(&mut file);
    let header_len = file.len();
    let payload_len = payload.len();
    file.extend_from_slice(&payload);
    Ok(Encoded { file, plan, header_len, payload_len })
}

pub fn encode_adaptive(source: &[u8], e1: u8) -> Result<Encoded, EncodeError> {
    encode(source, &EncodeConfig { mode: CodeMode::Adaptive { e1 }, ..Default::default() })
}

pub fn encode_constant(source: &[u8], e: u8) -> Result<Encoded, EncodeError> {
    encode(source, &EncodeConfig { mode: CodeMode::Constant { e, e1: e }, ..Default::default() })
}

struct BlockReader<'a> {
    payload: &'a [u8],
    payload_len: usize,
    consumed: usize,
}

impl<'a> BlockReader<'a> {
    fn remaining(&self) -> usize {
        self.payload_len - self.consumed
    }

    /// Take the next block of up to `255 - 2e` bytes; None means the file is
    /// physically shorter than the header promised.
    fn take(&mut self, e: u8) -> Option<&'a [u8]> {
        let len = (framing::RS_BLOCK - 2 * e as usize).min(self.remaining());
        if self.consumed + len > self.payload.len() {
            return None;
        }
        let b = &self.payload[self.consumed..self.consumed + len];
        self.consumed += len;
        Some(b)
    }
}

/// Decode a protected container. `window` and `max_len` must match the
/// encoder's settings; they are not stored in the header.
pub fn decode(file: &[u8], window: usize, max_len: usize) -> Result<DecodeOutcome, FormatError> {
    let (header, header_len) = Header::parse(file)?;
    let payload_len = header.payload_len as usize;
    let total_records = payload_len / RECORD_LEN;
    let mut reader = BlockReader {
        payload: &file[header_len..],
        payload_len,
        consumed: 0,
    };

    let mut out = Vec::new();
    let mut finder = MatchFinder::new(window);
    let mut carry: Vec<u8> = Vec::new();
    let mut rec_index = 0usize;
    let mut blocks_corrected = 0usize;
    let mut block_es = Vec::new();
    let mut e = header.e1;
    let mut parity = header.rs1.clone();
    let mut block_no = 0usize;

    let fail = |out: Vec<u8>, corrected, es, block, cause| {
        Ok(DecodeOutcome {
            data: out,
            blocks_corrected: corrected,
            block_es: es,
            status: DecodeStatus::Failed { block, cause },
        })
    };

    while reader.remaining() > 0 {
        block_no += 1;
        block_es.push(e);
        let raw = match reader.take(e) {
            Some(b) => b,
            None => return fail(out, blocks_corrected, block_es, block_no, FailCause::Truncated),
        };
        let mut word = raw.to_vec();
        word.extend_from_slice(&parity);
        let corrected = match rs::decode(&word, e as usize) {
            Ok((data, status)) => {
                if let RsStatus::Corrected(_) = status {
                    blocks_corrected += 1;
                }
                data
            }
            Err(rs::RsError::Unrecoverable) => {
                return fail(out, blocks_corrected, block_es, block_no, FailCause::Rs)
            }
            Err(_) => unreachable!("block and parity sizes are bounded by construction"),
        };

        // Decompress every record that ends inside this block and collect the
        // bits its pointer choice carries. Up to 3 tail bytes stay in `carry`
        // for the record straddling into the next block.
        carry.extend_from_slice(&corrected);
        let mut bits = Vec::new();
        let mut chunks = carry.chunks_exact(RECORD_LEN);
        for chunk in &mut chunks {
            let rec = Record::read(chunk.try_into().unwrap());
            let i = out.len();
            if lz77::decompress_record(&rec, rec_index, &mut out, window, max_len).is_err() {
                return fail(out, blocks_corrected, block_es, block_no, FailCause::Stream);
            }
            finder.advance(&out, i);
            let is_last = rec_index + 1 == total_records;
            let cands = finder.candidates(&out, i, rec.len as usize, rec.sym, max_len, is_last);
            match stego::index_bits(&rec, &cands, rec_index) {
                Ok(b) => bits.extend(b),
                Err(_) => {
                    return fail(out, blocks_corrected, block_es, block_no, FailCause::Stream)
                }
            }
            rec_index += 1;
        }
        carry = chunks.remainder().to_vec();

        if reader.remaining() == 0 {
            break;
        }
        // Budget for the next block, recomputed exactly as the planner did.
        e = match header.mode {
            Mode::Constant => header.const_e,
            Mode::Adaptive => ((bits.len() / BITS_PER_E) as u8).min(MAX_E),
        };
        let need = BITS_PER_E * e as usize;
        if bits.len() < need {
            // only reachable after a miscorrection scrambled the capacity
            return fail(out, blocks_corrected, block_es, block_no, FailCause::Stream);
        }
        parity = stego::bits_to_bytes(&bits[..need]);
    }

    if rec_index != total_records || !carry.is_empty() {
        return fail(out, blocks_corrected, block_es, block_no.max(1), FailCause::Truncated);
    }
    Ok(DecodeOutcome {
        data: out,
        blocks_corrected,
        block_es,
        status: if blocks_corrected == 0 { DecodeStatus::Ok } else { DecodeStatus::Corrected },
    })
}

/// Decode with the default 32 KB window and 255-byte match cap.
pub fn decode_default(file: &[u8]) -> Result<DecodeOutcome, FormatError> {
    decode(file, lz77::DEFAULT_WINDOW, lz77::DEFAULT_MAX_LEN)
}
