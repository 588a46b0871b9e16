//! Systematic Reed-Solomon codec over GF(256), codeword length <= 255.
//!
//! Layout is data-then-parity with 2e parity bytes correcting up to e byte
//! errors. Messages shorter than 255 - 2e are treated as shortened codes
//! (implicitly zero-padded in front). The generator polynomial has roots
//! alpha^1 .. alpha^2e.
//!
//! Decoding is syndrome / Berlekamp-Massey / Chien / Forney. Beyond e errors
//! the decoder usually reports failure, but miscorrection to a different
//! codeword is possible and inherent to RS codes; callers that need
//! end-to-end integrity must check it downstream.

use crate::gf256;
use thiserror::Error;

/// Full codeword length for the unshortened code.
pub const CODEWORD_LEN: usize = 255;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RsError {
    #[error("invalid RS parameters: data {data} + parity {parity} exceeds 255")]
    BlockTooLong { data: usize, parity: usize },
    #[error("received word of {len} bytes is shorter than {parity} parity bytes")]
    TooShort { len: usize, parity: usize },
    #[error("unrecoverable codeword: more than e byte errors detected")]
    Unrecoverable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RsStatus {
    /// Syndromes were clean; nothing changed.
    Ok,
    /// This many byte positions were corrected.
    Corrected(usize),
}

/// Generator polynomial for 2e parity symbols, ascending coefficients,
/// leading coefficient (x^2e) last and always 1.
fn generator_poly(e: usize) -> Vec<u8> {
    let mut g = vec![1u8];
    for i in 1..=(2 * e) as i32 {
        let root = gf256::alpha_pow(i);
        // g *= (x + root)
        let mut next = vec![0u8; g.len() + 1];
        for (j, &c) in g.iter().enumerate() {
            next[j + 1] ^= c;
            next[j] ^= gf256::mul(c, root);
        }
        g = next;
    }
    g
}

/// Compute the 2e systematic parity bytes for `data`.
pub fn encode(data: &[u8], e: usize) -> Result<Vec<u8>, RsError> {
    let parity_len = 2 * e;
    if data.len() + parity_len > CODEWORD_LEN {
        return Err(RsError::BlockTooLong {
            data: data.len(),
            parity: parity_len,
        });
    }
    if e == 0 {
        return Ok(Vec::new());
    }
    let g = generator_poly(e);
    // Remainder of data(x) * x^2e divided by g(x), synthetic division.
    let mut rem = vec![0u8; parity_len];
    for &byte in data {
        let factor = byte ^ rem[0];
        rem.rotate_left(1);
        rem[parity_len - 1] = 0;
        if factor != 0 {
            for (r, &gc) in rem.iter_mut().zip(g.iter().rev().skip(1)) {
                *r ^= gf256::mul(gc, factor);
            }
        }
    }
    Ok(rem)
}

fn syndromes(received: &[u8], e: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(2 * e);
    for i in 1..=(2 * e) as i32 {
        let x = gf256::alpha_pow(i);
        let mut acc = 0u8;
        for &byte in received {
            acc = gf256::mul(acc, x) ^ byte;
        }
        out.push(acc);
    }
    out
}

fn eval_poly_ascending(coeffs: &[u8], x: u8) -> u8 {
    let mut acc = 0u8;
    for &c in coeffs.iter().rev() {
        acc = gf256::mul(acc, x) ^ c;
    }
    acc
}

/// Decode `received` = data || parity in place of up to e byte errors.
/// Returns the corrected data portion and whether corrections were made.
pub fn decode(received: &[u8], e: usize) -> Result<(Vec<u8>, RsStatus), RsError> {
    let parity_len = 2 * e;
    if received.len() > CODEWORD_LEN {
        return Err(RsError::BlockTooLong {
            data: received.len() - parity_len.min(received.len()),
            parity: parity_len,
        });
    }
    if received.len() < parity_len {
        return Err(RsError::TooShort {
            len: received.len(),
            parity: parity_len,
        });
    }
    let data_len = received.len() - parity_len;
    if e == 0 {
        return Ok((received.to_vec(), RsStatus::Ok));
    }

    let synd = syndromes(received, e);
    if synd.iter().all(|&s| s == 0) {
        return Ok((received[..data_len].to_vec(), RsStatus::Ok));
    }

    // Berlekamp-Massey: error locator lambda(x), ascending coefficients.
    let mut lambda = vec![1u8];
    let mut prev = vec![1u8];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut b = 1u8;
    for i in 0..parity_len {
        let mut delta = synd[i];
        for j in 1..=l.min(lambda.len() - 1) {
            delta ^= gf256::mul(lambda[j], synd[i - j]);
        }
        if delta == 0 {
            m += 1;
        } else {
            let coef = gf256::div(delta, b);
            let mut t = lambda.clone();
            if t.len() < prev.len() + m {
                t.resize(prev.len() + m, 0);
            }
            for (j, &p) in prev.iter().enumerate() {
                t[j + m] ^= gf256::mul(coef, p);
            }
            if 2 * l <= i {
                prev = lambda;
                b = delta;
                l = i + 1 - l;
                m = 1;
            } else {
                m += 1;
            }
            lambda = t;
        }
    }
    while lambda.last() == Some(&0) {
        lambda.pop();
    }
    let degree = lambda.len() - 1;
    if degree != l || degree > e {
        return Err(RsError::Unrecoverable);
    }

    // Chien search over the received positions only.
    let n = received.len() as i32;
    let mut positions = Vec::new();
    let mut inv_locators = Vec::new();
    for j in 0..n {
        let x_inv = gf256::alpha_pow(-(n - 1 - j));
        if eval_poly_ascending(&lambda, x_inv) == 0 {
            positions.push(j as usize);
            inv_locators.push(x_inv);
        }
    }
    if positions.len() != degree {
        return Err(RsError::Unrecoverable);
    }

    // Forney: omega(x) = S(x) * lambda(x) mod x^2e, first root alpha^1.
    let mut omega = vec![0u8; parity_len];
    for (i, &s) in synd.iter().enumerate() {
        for (j, &lc) in lambda.iter().enumerate() {
            if i + j < parity_len {
                omega[i + j] ^= gf256::mul(s, lc);
            }
        }
    }
    // Formal derivative of lambda keeps odd-degree terms.
    let mut lambda_deriv = vec![0u8; lambda.len().saturating_sub(1)];
    for (i, &c) in lambda.iter().enumerate().skip(1) {
        if i % 2 == 1 {
            lambda_deriv[i - 1] = c;
        }
    }

    let mut corrected = received.to_vec();
    for (&pos, &x_inv) in positions.iter().zip(inv_locators.iter()) {
        let num = eval_poly_ascending(&omega, x_inv);
        let den = eval_poly_ascending(&lambda_deriv, x_inv);
        if den == 0 {
            return Err(RsError::Unrecoverable);
        }
        corrected[pos] ^= gf256::div(num, den);
    }

    // Reject patterns whose "correction" does not land on a codeword.
    if syndromes(&corrected, e).iter().any(|&s| s != 0) {
        return Err(RsError::Unrecoverable);
    }
    Ok((
        corrected[..data_len].to_vec(),
        RsStatus::Corrected(positions.len()),
    ))
}
