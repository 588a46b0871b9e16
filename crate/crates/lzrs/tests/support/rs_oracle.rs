//! Independent textbook Reed-Solomon reference.
//!
//! Deliberately shares nothing with the crate's codec: field multiplication
//! is shift-and-reduce (no tables), the encoder solves the parity linear
//! system by Gaussian elimination over GF(256), and the decoder uses the
//! extended Euclidean (Sugiyama) algorithm instead of Berlekamp-Massey.
//! Same code conventions: polynomial 0x11D, generator 2, roots alpha^1..2e,
//! data-then-parity layout.

const POLY: u16 = 0x11D;

pub fn gmul(a: u8, b: u8) -> u8 {
    let mut a = a as u16;
    let mut b = b as u16;
    let mut r: u16 = 0;
    while b != 0 {
        if b & 1 != 0 {
            r ^= a;
        }
        a <<= 1;
        if a & 0x100 != 0 {
            a ^= POLY;
        }
        b >>= 1;
    }
    r as u8
}

pub fn gpow(mut base: u8, mut exp: u64) -> u8 {
    let mut r = 1u8;
    exp %= 255;
    while exp > 0 {
        if exp & 1 == 1 {
            r = gmul(r, base);
        }
        base = gmul(base, base);
        exp >>= 1;
    }
    r
}

pub fn ginv(a: u8) -> u8 {
    assert!(a != 0);
    gpow(a, 254)
}

fn alpha(i: u64) -> u8 {
    gpow(2, i)
}

/// Evaluate the codeword `c` (c[0] = highest-degree coefficient) at x.
fn eval_word(c: &[u8], x: u8) -> u8 {
    c.iter().fold(0u8, |acc, &b| gmul(acc, x) ^ b)
}

/// Systematic parity via linear solve: find the 2e parity bytes that zero
/// the codeword at alpha^1 .. alpha^2e.
pub fn encode(data: &[u8], e: usize) -> Vec<u8> {
    let t = 2 * e;
    if t == 0 {
        return Vec::new();
    }
    assert!(data.len() + t <= 255);
    // row i (root alpha^(i+1)): sum_j parity_j * alpha^((i+1)*(t-1-j)) = rhs_i
    let mut m = vec![vec![0u8; t + 1]; t];
    for (i, row) in m.iter_mut().enumerate() {
        let root = alpha(i as u64 + 1);
        for (j, cell) in row.iter_mut().take(t).enumerate() {
            *cell = gpow(root, (t - 1 - j) as u64);
        }
        // rhs: data contribution, data byte j has degree (n-1-j)
        let n = data.len() + t;
        let mut rhs = 0u8;
        for (j, &d) in data.iter().enumerate() {
            rhs ^= gmul(d, gpow(root, (n - 1 - j) as u64));
        }
        row[t] = rhs;
    }
    // Gaussian elimination
    for col in 0..t {
        let pivot = (col..t).find(|&r| m[r][col] != 0).expect("singular parity system");
        m.swap(col, pivot);
        let inv = ginv(m[col][col]);
        for cell in m[col].iter_mut() {
            *cell = gmul(*cell, inv);
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && row[col] != 0 {
                let f = row[col];
                for (cell, &v) in row.iter_mut().zip(&pivot_row) {
                    *cell ^= gmul(f, v);
                }
            }
        }
    }
    (0..t).map(|r| m[r][t]).collect()
}

/// Sugiyama decoder; returns the corrected data or None when the word is
/// beyond repair.
pub fn decode(received: &[u8], e: usize) -> Option<Vec<u8>> {
    let t = 2 * e;
    if t == 0 {
        return Some(received.to_vec());
    }
    let n = received.len();
    assert!(n <= 255 && n >= t);
    let synd: Vec<u8> = (1..=t as u64).map(|i| eval_word(received, alpha(i))).collect();
    if synd.iter().all(|&s| s == 0) {
        return Some(received[..n - t].to_vec());
    }

    // Extended Euclid on x^2e and S(x) (ascending coefficients) until the
    // remainder degree drops below e.
    let mut r_prev: Vec<u8> = {
        let mut v = vec![0u8; t + 1];
        v[t] = 1;
        v
    };
    let mut r_cur = synd.clone();
    trim(&mut r_cur);
    let mut u_prev: Vec<u8> = vec![0];
    let mut u_cur: Vec<u8> = vec![1];
    while degree(&r_cur) >= e as isize {
        if r_cur.iter().all(|&c| c == 0) {
            return None;
        }
        let (q, rem) = poly_divmod(&r_prev, &r_cur);
        let u_next = poly_add(&u_prev, &poly_mul(&q, &u_cur));
        r_prev = r_cur;
        r_cur = rem;
        u_prev = u_cur;
        u_cur = u_next;
    }
    let lambda = u_cur;
    let omega = r_cur;
    if lambda.is_empty() || lambda.iter().all(|&c| c == 0) {
        return None;
    }
    // normalize so lambda(0) = 1
    let l0 = lambda[0];
    if l0 == 0 {
        return None;
    }
    let inv0 = ginv(l0);
    let lambda: Vec<u8> = lambda.iter().map(|&c| gmul(c, inv0)).collect();
    let omega: Vec<u8> = omega.iter().map(|&c| gmul(c, inv0)).collect();

    // roots by scanning every field element
    let mut corrected = received.to_vec();
    let mut nroots = 0;
    for (j, byte) in corrected.iter_mut().enumerate() {
        let x_inv = gpow(2, 255 - ((n - 1 - j) as u64 % 255));
        if eval_ascending(&lambda, x_inv) == 0 {
            nroots += 1;
            let num = eval_ascending(&omega, x_inv);
            let mut den = 0u8;
            for (i, &c) in lambda.iter().enumerate() {
                if i % 2 == 1 {
                    den ^= gmul(c, gpow(x_inv, (i - 1) as u64));
                }
            }
            if den == 0 {
                return None;
            }
            *byte ^= gmul(num, ginv(den));
        }
    }
    if nroots as isize != degree(&lambda) || nroots > e {
        return None;
    }
    for i in 1..=t as u64 {
        if eval_word(&corrected, alpha(i)) != 0 {
            return None;
        }
    }
    Some(corrected[..n - t].to_vec())
}

fn degree(p: &[u8]) -> isize {
    p.iter().rposition(|&c| c != 0).map(|d| d as isize).unwrap_or(-1)
}

fn trim(p: &mut Vec<u8>) {
    while p.last() == Some(&0) && p.len() > 1 {
        p.pop();
    }
}

fn eval_ascending(p: &[u8], x: u8) -> u8 {
    p.iter().rev().fold(0u8, |acc, &c| gmul(acc, x) ^ c)
}

fn poly_add(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; a.len().max(b.len())];
    for (i, &c) in a.iter().enumerate() {
        out[i] ^= c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] ^= c;
    }
    out
}

fn poly_mul(a: &[u8], b: &[u8]) -> Vec<u8> {
    if a.is_empty() || b.is_empty() {
        return vec![0];
    }
    let mut out = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] ^= gmul(x, y);
        }
    }
    out
}

/// Quotient and remainder of a / b, ascending coefficients.
fn poly_divmod(a: &[u8], b: &[u8]) -> (Vec<u8>, Vec<u8>) {
    let db = degree(b);
    assert!(db >= 0);
    let mut rem = a.to_vec();
    let mut q = vec![0u8; a.len()];
    let lead_inv = ginv(b[db as usize]);
    while degree(&rem) >= db {
        let dr = degree(&rem);
        let shift = (dr - db) as usize;
        let f = gmul(rem[dr as usize], lead_inv);
        q[shift] ^= f;
        for (i, &c) in b.iter().enumerate() {
            rem[i + shift] ^= gmul(f, c);
        }
    }
    trim(&mut rem);
    (q, rem)
}
