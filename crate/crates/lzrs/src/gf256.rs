//! GF(2^8) arithmetic over the primitive polynomial 0x11D with generator 2.
//!
//! Log/antilog tables are built at compile time; all operations are table
//! lookups and therefore safe to call from any thread.

/// x^8 + x^4 + x^3 + x^2 + 1
pub const PRIMITIVE_POLY: u16 = 0x11D;

/// Generator element alpha = 2.
pub const GENERATOR: u8 = 2;

const EXP_LEN: usize = 512;

struct Tables {
    exp: [u8; EXP_LEN],
    log: [u8; 256],
}

static TABLES: Tables = build_tables();

const fn build_tables() -> Tables {
    let mut exp = [0u8; EXP_LEN];
    let mut log = [0u8; 256];
    let mut x: u16 = 1;
    let mut i = 0;
    while i < 255 {
        exp[i] = x as u8;
        log[x as usize] = i as u8;
        x <<= 1;
        if x & 0x100 != 0 {
            x ^= PRIMITIVE_POLY;
        }
        i += 1;
    }
    // duplicate so sums of two logs index without a modulo
    while i < EXP_LEN {
        exp[i] = exp[i - 255];
        i += 1;
    }
    Tables { exp, log }
}

#[inline]
pub fn add(a: u8, b: u8) -> u8 {
    a ^ b
}

#[inline]
pub fn mul(a: u8, b: u8) -> u8 {
    if a == 0 || b == 0 {
        0
    } else {
        TABLES.exp[TABLES.log[a as usize] as usize + TABLES.log[b as usize] as usize]
    }
}

/// `a / b`; `b` must be nonzero.
#[inline]
pub fn div(a: u8, b: u8) -> u8 {
    assert!(b != 0, "division by zero in GF(256)");
    if a == 0 {
        0
    } else {
        let la = TABLES.log[a as usize] as usize;
        let lb = TABLES.log[b as usize] as usize;
        TABLES.exp[la + 255 - lb]
    }
}

/// Multiplicative inverse of a nonzero element.
#[inline]
pub fn inv(a: u8) -> u8 {
    div(1, a)
}

/// alpha^power, with `power` reduced mod 255 (negative exponents allowed).
#[inline]
pub fn alpha_pow(power: i32) -> u8 {
    let mut p = power % 255;
    if p < 0 {
        p += 255;
    }
    TABLES.exp[p as usize]
}

/// Discrete log base alpha of a nonzero element.
#[inline]
pub fn log(a: u8) -> u8 {
    assert!(a != 0, "log of zero in GF(256)");
    TABLES.log[a as usize]
}
