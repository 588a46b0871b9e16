//! Sliding-window LZ77 with multiplicity-aware match finding.
//!
//! Every token is a (position, length, next-symbol) triple. The encoder also
//! records the full ordered set of window offsets that achieve the longest
//! match ("candidates"); picking any of them decompresses identically, which
//! is the redundancy the stego layer spends. The decoder can rederive the
//! exact same candidate list from the decompressed history alone.
//!
//! Stream format, bit-exact: one 4-byte record per token,
//! `[pos_lo][pos_hi][len][sym]`, position little-endian with the top bit
//! reserved zero. `pos == 0 && len == 0` encodes a literal.

use thiserror::Error;

/// Window length used throughout the experiments (32 KB). Valid match
/// distances are `1 ..= window - 1`, so they always fit in 15 bits.
pub const DEFAULT_WINDOW: usize = 32 * 1024;
/// Longest match emitted, in bytes.
pub const DEFAULT_MAX_LEN: usize = 255;
/// Serialized size of one token.
pub const RECORD_LEN: usize = 4;

pub const MAX_WINDOW: usize = 32 * 1024;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StreamError {
    #[error("stream length {0} is not a multiple of {RECORD_LEN}")]
    BadFrameLength(usize),
    #[error("record {index}: position {pos} exceeds available history {history}")]
    PositionOutOfRange { index: usize, pos: u16, history: usize },
    #[error("record {index}: position {pos} outside the {window}-byte window")]
    PositionOutsideWindow { index: usize, pos: u16, window: usize },
    #[error("record {index}: length {len} exceeds maximum {max_len}")]
    LengthTooLong { index: usize, len: u8, max_len: usize },
    #[error("record {index}: position {pos} with zero length is not a valid token")]
    ZeroLengthPointer { index: usize, pos: u16 },
    #[error("record {index}: emitted position {pos} is not a longest-match offset")]
    PointerNotACandidate { index: usize, pos: u16 },
}

/// The serialized unit: what survives on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Record {
    pub pos: u16,
    pub len: u8,
    pub sym: u8,
}

impl Record {
    pub fn write(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&[self.pos as u8, (self.pos >> 8) as u8, self.len, self.sym]);
    }

    pub fn read(bytes: &[u8; RECORD_LEN]) -> Record {
        Record {
            pos: bytes[0] as u16 | (bytes[1] as u16) << 8,
            len: bytes[2],
            sym: bytes[3],
        }
    }
}

/// Encoder-side token: the record plus every longest-match offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub record: Record,
    /// Strictly ascending distances; `[0]` for a literal. Multiplicity is
    /// `candidates.len()`.
    pub candidates: Vec<u16>,
}

impl Token {
    pub fn multiplicity(&self) -> usize {
        self.candidates.len()
    }
}

pub fn serialize(records: impl IntoIterator<Item = Record>) -> Vec<u8> {
    let mut out = Vec::new();
    for r in records {
        r.write(&mut out);
    }
    out
}

/// Every 4-byte record parses; corruption is only detected later, when the
/// record is actually decompressed.
pub fn deserialize(bytes: &[u8]) -> Result<Vec<Record>, StreamError> {
    if !bytes.len().is_multiple_of(RECORD_LEN) {
        return Err(StreamError::BadFrameLength(bytes.len()));
    }
    Ok(bytes
        .chunks_exact(RECORD_LEN)
        .map(|c| Record::read(c.try_into().unwrap()))
        .collect())
}

fn check_params(window: usize, max_len: usize) {
    assert!((1..=MAX_WINDOW).contains(&window), "window must be in 1..=32768");
    assert!((1..=255).contains(&max_len), "max_len must be in 1..=255");
}

/// Greedy longest-match parse. Each token's `candidates` holds all window
/// offsets achieving the (capped) maximal length; the emitted position is
/// the smallest offset until the stego layer overrides it.
pub fn compress(source: &[u8], window: usize, max_len: usize) -> Vec<Token> {
    check_params(window, max_len);
    let mut finder = MatchFinder::new(window);
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < source.len() {
        finder.advance(source, i);
        let remaining = source.len() - i;
        let lim = max_len.min(remaining - 1);
        let len = if lim >= 1 { finder.longest(source, i, lim) } else { 0 };
        if len == 0 {
            tokens.push(Token {
                record: Record { pos: 0, len: 0, sym: source[i] },
                candidates: vec![0],
            });
            i += 1;
            continue;
        }
        let sym = source[i + len];
        let is_last = len + 1 == remaining;
        let candidates = finder.candidates(source, i, len, sym, max_len, is_last);
        debug_assert!(!candidates.is_empty());
        tokens.push(Token {
            record: Record { pos: candidates[0], len: len as u8, sym },
            candidates,
        });
        i += len + 1;
    }
    tokens
}

/// Exact inverse of `compress`, regardless of which candidate each position
/// names. Invalid records signal a corrupt stream (typically residual RS
/// miscorrection).
pub fn decompress(records: &[Record], window: usize, max_len: usize) -> Result<Vec<u8>, StreamError> {
    check_params(window, max_len);
    let mut out = Vec::new();
    for (index, rec) in records.iter().enumerate() {
        decompress_record(rec, index, &mut out, window, max_len)?;
    }
    Ok(out)
}

/// Append one record's expansion to `out`.
pub fn decompress_record(
    rec: &Record,
    index: usize,
    out: &mut Vec<u8>,
    window: usize,
    max_len: usize,
) -> Result<(), StreamError> {
    if rec.len == 0 {
        if rec.pos != 0 {
            return Err(StreamError::ZeroLengthPointer { index, pos: rec.pos });
        }
        out.push(rec.sym);
        return Ok(());
    }
    let d = rec.pos as usize;
    if d == 0 || d > out.len() {
        return Err(StreamError::PositionOutOfRange { index, pos: rec.pos, history: out.len() });
    }
    if d >= window {
        return Err(StreamError::PositionOutsideWindow { index, pos: rec.pos, window });
    }
    if rec.len as usize > max_len {
        return Err(StreamError::LengthTooLong { index, len: rec.len, max_len });
    }
    let start = out.len() - d;
    for t in 0..rec.len as usize {
        let b = out[start + t];
        out.push(b); // self-overlap copies bytes produced in this loop
    }
    out.push(rec.sym);
    Ok(())
}

/// Reference candidate recomputation by direct window scan.
///
/// `text` must hold the decompressed stream through the end of this token's
/// match, i.e. at least `i + len` bytes where `i` is the token's starting
/// index. `is_last` marks the final token of a stream, whose match may have
/// been truncated by end of input. This is the normative rule; the chained
/// `MatchFinder` is the fast equivalent.
pub fn recompute_candidates(
    text: &[u8],
    i: usize,
    len: usize,
    sym: u8,
    window: usize,
    max_len: usize,
    is_last: bool,
) -> Vec<u16> {
    check_params(window, max_len);
    if len == 0 {
        return vec![0];
    }
    let free = len == max_len || is_last;
    let wmax = i.min(window - 1);
    let mut out = Vec::new();
    for d in 1..=wmax {
        let p = i - d;
        if (0..len).all(|t| text[p + t] == text[i + t]) && (free || text[p + len] != sym) {
            out.push(d as u16);
        }
    }
    out
}

const NIL: u32 = u32::MAX;
const HASH3_BITS: u32 = 15;

/// Incremental longest-match index over a growing text.
///
/// Three chains cover match lengths 1, 2, and >= 3 (single byte, byte pair,
/// hashed 3-byte prefix). Chains are exhaustive within the window, so the
/// candidate sets they produce are identical to the brute-force scan. Both
/// the encoder and the block decoder run the same structure, which is what
/// keeps their candidate lists in agreement.
pub struct MatchFinder {
    window: usize,
    mask: usize,
    head1: Vec<u32>,
    head2: Vec<u32>,
    head3: Vec<u32>,
    prev1: Vec<u32>,
    prev2: Vec<u32>,
    prev3: Vec<u32>,
    cursor1: usize,
    cursor2: usize,
    cursor3: usize,
}

#[inline]
fn hash3(text: &[u8], p: usize) -> usize {
    let key = (text[p] as u32) << 16 | (text[p + 1] as u32) << 8 | text[p + 2] as u32;
    (key.wrapping_mul(0x9E37_79B1) >> (32 - HASH3_BITS)) as usize
}

impl MatchFinder {
    pub fn new(window: usize) -> MatchFinder {
        assert!((1..=MAX_WINDOW).contains(&window));
        let ring = window.next_power_of_two();
        MatchFinder {
            window,
            mask: ring - 1,
            head1: vec![NIL; 256],
            head2: vec![NIL; 1 << 16],
            head3: vec![NIL; 1 << HASH3_BITS],
            prev1: vec![NIL; ring],
            prev2: vec![NIL; ring],
            prev3: vec![NIL; ring],
            cursor1: 0,
            cursor2: 0,
            cursor3: 0,
        }
    }

    /// Index every position `p <= upto` whose key bytes are available.
    /// Positions beyond `upto` must not be inserted before querying at
    /// `upto`, otherwise ring slots still reachable from the window would be
    /// overwritten.
    pub fn advance(&mut self, text: &[u8], upto: usize) {
        while self.cursor1 <= upto && self.cursor1 < text.len() {
            let p = self.cursor1;
            self.prev1[p & self.mask] = self.head1[text[p] as usize];
            self.head1[text[p] as usize] = p as u32;
            self.cursor1 += 1;
        }
        while self.cursor2 <= upto && self.cursor2 + 1 < text.len() {
            let p = self.cursor2;
            let key = (text[p] as usize) << 8 | text[p + 1] as usize;
            self.prev2[p & self.mask] = self.head2[key];
            self.head2[key] = p as u32;
            self.cursor2 += 1;
        }
        while self.cursor3 <= upto && self.cursor3 + 2 < text.len() {
            let p = self.cursor3;
            let key = hash3(text, p);
            self.prev3[p & self.mask] = self.head3[key];
            self.head3[key] = p as u32;
            self.cursor3 += 1;
        }
    }

    fn walk(&self, chain: u8, text: &[u8], i: usize, mut visit: impl FnMut(usize)) {
        let (head, prev) = match chain {
            1 => (self.head1[text[i] as usize], &self.prev1),
            2 => {
                if i + 1 >= text.len() {
                    return;
                }
                let key = (text[i] as usize) << 8 | text[i + 1] as usize;
                (self.head2[key], &self.prev2)
            }
            _ => {
                if i + 2 >= text.len() {
                    return;
                }
                (self.head3[hash3(text, i)], &self.prev3)
            }
        };
        let wmax = i.min(self.window - 1);
        let mut p = head;
        while p != NIL {
            let pu = p as usize;
            if pu >= i {
                // the position currently being encoded; skip it
                p = prev[pu & self.mask];
                continue;
            }
            let d = i - pu;
            if d > wmax {
                break;
            }
            visit(pu);
            p = prev[pu & self.mask];
        }
    }

    /// Length of the longest match at `i`, capped at `lim`; 0 if none.
    pub fn longest(&self, text: &[u8], i: usize, lim: usize) -> usize {
        let mut best = 0usize;
        if lim >= 3 {
            self.walk(3, text, i, |p| {
                if best == lim {
                    return;
                }
                let mut t = 0;
                while t < lim && text[p + t] == text[i + t] {
                    t += 1;
                }
                if t >= 3 && t > best {
                    best = t;
                }
            });
        }
        if best == 0 && lim >= 2 {
            self.walk(2, text, i, |p| {
                if text[p] == text[i] && text[p + 1] == text[i + 1] {
                    best = 2;
                }
            });
        }
        if best == 0 && lim >= 1 {
            self.walk(1, text, i, |p| {
                if text[p] == text[i] {
                    best = 1;
                }
            });
        }
        best
    }

    /// All distances achieving a longest match of exactly `len` at `i`,
    /// ascending. Equivalent to [`recompute_candidates`].
    pub fn candidates(
        &self,
        text: &[u8],
        i: usize,
        len: usize,
        sym: u8,
        max_len: usize,
        is_last: bool,
    ) -> Vec<u16> {
        if len == 0 {
            return vec![0];
        }
        let free = len == max_len || is_last;
        let chain = len.min(3) as u8;
        let mut out = Vec::new();
        self.walk(chain, text, i, |p| {
            if (0..len).all(|t| text[p + t] == text[i + t]) && (free || text[p + len] != sym) {
                out.push((i - p) as u16);
            }
        });
        out
    }
}
