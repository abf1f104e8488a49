//! Radix-2 number-theoretic transforms over two NTT-friendly primes.

use rayon::join;

pub const P1: u64 = 998_244_353;
pub const P2: u64 = 469_762_049;
const G: u64 = 3;

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn bit_reverse(a: &mut [u64]) {
    let n = a.len();
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
}

pub fn ntt(a: &mut [u64], p: u64, invert: bool) {
    let n = a.len();
    debug_assert!(n.is_power_of_two());
    bit_reverse(a);
    let mut len = 2;
    while len <= n {
        let mut w = pow_mod(G, (p - 1) / len as u64, p);
        if invert {
            w = pow_mod(w, p - 2, p);
        }
        let half = len / 2;
        let mut twiddles = Vec::with_capacity(half);
        let mut t = 1u64;
        for _ in 0..half {
            twiddles.push(t);
            t = t * w % p;
        }
        for chunk in a.chunks_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for ((u, v), &tw) in lo.iter_mut().zip(hi.iter_mut()).zip(&twiddles) {
                let x = *u;
                let y = *v * tw % p;
                *u = if x + y >= p { x + y - p } else { x + y };
                *v = if x >= y { x - y } else { x + p - y };
            }
        }
        len <<= 1;
    }
    if invert {
        let inv = pow_mod(n as u64, p - 2, p);
        for x in a.iter_mut() {
            *x = *x * inv % p;
        }
    }
}

fn cyclic_mod(f: &[i64], g: &[i64], size: usize, p: u64) -> Vec<u64> {
    let load = |s: &[i64]| {
        let mut v = vec![0u64; size];
        for (d, &x) in v.iter_mut().zip(s) {
            *d = x.rem_euclid(p as i64) as u64;
        }
        v
    };
    let (mut a, mut b) = join(|| load(f), || load(g));
    join(|| ntt(&mut a, p, false), || ntt(&mut b, p, false));
    for (x, y) in a.iter_mut().zip(&b) {
        *x = *x * y % p;
    }
    ntt(&mut a, p, true);
    a
}

/// Linear convolution of signed integer sequences, exact whenever every
/// output lies in `(−P1·P2/2, P1·P2/2)`.
pub fn convolve_exact_raw(f: &[i64], g: &[i64]) -> Vec<i64> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let out_len = f.len() + g.len() - 1;
    let size = out_len.next_power_of_two();
    let (r1, r2) = join(|| cyclic_mod(f, g, size, P1), || cyclic_mod(f, g, size, P2));
    let m = (P1 as i128) * (P2 as i128);
    let inv = pow_mod(P1 % P2, P2 - 2, P2) as i128;
    (0..out_len)
        .map(|i| {
            let (a, b) = (r1[i] as i128, r2[i] as i128);
            // x = a + P1·((b − a)·P1⁻¹ mod P2)
            let k = ((b - a).rem_euclid(P2 as i128) * inv).rem_euclid(P2 as i128);
            let mut x = a + (P1 as i128) * k;
            if x > m / 2 {
                x -= m;
            }
            x as i64
        })
        .collect()
}

/// Largest magnitude the reconstruction represents unambiguously.
pub fn exact_range() -> u128 {
    (P1 as u128) * (P2 as u128) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_products() {
        assert_eq!(convolve_exact_raw(&[1, 2, 3], &[4, 5]), vec![4, 13, 22, 15]);
        assert_eq!(convolve_exact_raw(&[-1, 1], &[1, 1]), vec![-1, 0, 1]);
        let big = 1i64 << 28;
        assert_eq!(convolve_exact_raw(&[big, big], &[big]), vec![big * big, big * big]);
    }

    #[test]
    fn roots_exist() {
        assert_eq!(pow_mod(G, P1 - 1, P1), 1);
        assert_eq!((P1 - 1) % (1 << 23), 0);
        assert_eq!((P2 - 1) % (1 << 26), 0);
    }
}
