//! Error-resilient LZ77 compression.
//!
//! A longest match that occurs at several window offsets leaves the encoder
//! a free choice of pointer; that choice carries hidden bits without adding
//! a single byte to the stream. This crate spends those bits on Reed-Solomon
//! parity: the compressed stream is cut into blocks and the parity of each
//! block rides inside the pointer choices of the block before it, either
//! with one constant budget for the whole stream or with a per-block budget
//! that follows the locally available redundancy.
//!
//! Layers, bottom up:
//!
//! - [`gf256`] / [`rs`]: GF(2^8) arithmetic and a systematic RS(255, 255-2e)
//!   codec with shortened codes.
//! - [`lz77`]: the sliding-window parser that records every longest-match
//!   offset per token, plus the 4-byte record stream format.
//! - [`stego`]: embedding and extracting bit strings via pointer selection.
//! - [`framing`]: variable-length block planning and the container header.
//! - [`pipeline`]: the end-to-end encoders and the block-by-block decoder.
//! - [`channel`]: seeded bit-error injection and the trial harness.

pub mod channel;
pub mod framing;
pub mod gf256;
pub mod lz77;
pub mod pipeline;
pub mod rs;
pub mod stego;
