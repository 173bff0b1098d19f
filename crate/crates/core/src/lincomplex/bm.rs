//! Packed Berlekamp-Massey over GF(2).
//!
//! The discrepancy at step `k` is the parity of `C & window`, where the window
//! holds `s_k, s_{k-1}, ...` in bit order. Storing the sequence reversed makes
//! that window a contiguous bit range; keeping 64 pre-shifted copies makes every
//! window word-aligned, so the inner loop is one AND/XOR per word.

use crate::generators::Bitstream;

pub(crate) struct BmResult {
    pub lengths: Vec<u32>,
    pub complexity: usize,
    /// `c_0 .. c_L`, `c_0 = 1`; bits above `complexity` are zero.
    pub poly: Vec<u64>,
}

/// `windows[t][q]` = reversed-sequence bits `64 q + t .. 64 q + t + 63`.
fn shifted_windows(bits: &Bitstream) -> Vec<Vec<u64>> {
    let n = bits.len();
    let nw = n / 64 + 2;
    let mut rev = vec![0u64; nw];
    for (j, w) in bits.words().iter().enumerate() {
        let mut w = *w;
        while w != 0 {
            let i = j * 64 + w.trailing_zeros() as usize;
            w &= w - 1;
            let r = n - 1 - i;
            rev[r / 64] |= 1u64 << (r % 64);
        }
    }
    (0..64)
        .map(|t| {
            if t == 0 {
                return rev.clone();
            }
            (0..nw)
                .map(|q| (rev[q] >> t) | rev.get(q + 1).map_or(0, |&hi| hi << (64 - t)))
                .collect()
        })
        .collect()
}

#[inline]
fn xor_shifted(dst: &mut [u64], src: &[u64], src_top: usize, shift: usize) {
    let (ws, bs) = (shift / 64, shift % 64);
    if bs == 0 {
        for w in 0..=src_top {
            dst[w + ws] ^= src[w];
        }
    } else {
        for w in 0..=src_top {
            dst[w + ws] ^= src[w] << bs;
            dst[w + ws + 1] ^= src[w] >> (64 - bs);
        }
    }
}

/// Runs the algorithm once over `bits`, optionally recording `L(k)` for every prefix.
///
/// `bits` must be nonempty.
pub(crate) fn run(bits: &Bitstream, keep_profile: bool) -> BmResult {
    let n = bits.len();
    debug_assert!(n > 0);
    let windows = shifted_windows(bits);
    let nw = n / 64 + 2;

    let mut c = vec![0u64; nw];
    let mut b = vec![0u64; nw];
    let mut t = vec![0u64; nw];
    c[0] = 1;
    b[0] = 1;
    // Degree bounds; deg C <= L always holds, so these stay <= n.
    let (mut c_deg, mut b_deg, mut t_deg) = (0usize, 0usize, 0usize);
    let mut l = 0usize;
    let mut m = 1usize;
    let mut lengths = Vec::with_capacity(if keep_profile { n } else { 0 });

    for k in 0..n {
        let o = n - 1 - k;
        let win = &windows[o % 64][o / 64..];
        let top = c_deg / 64;
        let mut acc = 0u64;
        for (cw, ww) in c[..=top].iter().zip(win) {
            acc ^= cw & ww;
        }
        if acc.count_ones() & 1 == 1 {
            if 2 * l <= k {
                let copy_top = c_deg.max(t_deg) / 64;
                t[..=copy_top].copy_from_slice(&c[..=copy_top]);
                t_deg = c_deg;
                xor_shifted(&mut c, &b, b_deg / 64, m);
                l = k + 1 - l;
                c_deg = c_deg.max(b_deg + m).min(l);
                std::mem::swap(&mut b, &mut t);
                std::mem::swap(&mut b_deg, &mut t_deg);
                m = 1;
            } else {
                xor_shifted(&mut c, &b, b_deg / 64, m);
                c_deg = c_deg.max(b_deg + m).min(l);
                m += 1;
            }
        } else {
            m += 1;
        }
        if keep_profile {
            lengths.push(l as u32);
        }
    }

    c.truncate(l / 64 + 1);
    BmResult {
        lengths,
        complexity: l,
        poly: c,
    }
}
