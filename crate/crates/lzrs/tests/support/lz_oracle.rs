//! Brute-force LZ77 oracle: finds the longest match and its complete
//! candidate set by scanning every window offset, sharing no code with the
//! crate's match finder.

pub struct OracleToken {
    pub len: usize,
    pub sym: u8,
    /// Ascending distances achieving the longest (capped) match; `[0]` for
    /// a literal.
    pub candidates: Vec<u16>,
}

fn match_len(src: &[u8], p: usize, i: usize, lim: usize) -> usize {
    let mut t = 0;
    while t < lim && i + t < src.len() && src[p + t] == src[i + t] {
        t += 1;
    }
    t
}

/// Parse `src` greedily, returning per-token candidate sets.
pub fn parse(src: &[u8], window: usize, max_len: usize) -> Vec<OracleToken> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < src.len() {
        let remaining = src.len() - i;
        let lim = max_len.min(remaining - 1);
        let wmax = i.min(window - 1);
        let mut best = 0;
        for d in 1..=wmax {
            best = best.max(match_len(src, i - d, i, lim));
        }
        if best == 0 {
            out.push(OracleToken { len: 0, sym: src[i], candidates: vec![0] });
            i += 1;
            continue;
        }
        let candidates: Vec<u16> = (1..=wmax)
            .filter(|&d| match_len(src, i - d, i, lim) == best)
            .map(|d| d as u16)
            .collect();
        out.push(OracleToken { len: best, sym: src[i + best], candidates });
        i += best + 1;
    }
    out
}
