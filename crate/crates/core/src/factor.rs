/// Prime factorization as `(prime, exponent)` pairs in increasing prime order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    /// Builds from pairs, sorting and merging repeated primes.
    pub fn from_pairs(mut pairs: Vec<(u64, u32)>) -> Self {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort_unstable();
        let mut merged: Vec<(u64, u32)> = Vec::with_capacity(pairs.len());
        for (p, e) in pairs {
            match merged.last_mut() {
                Some(last) if last.0 == p => last.1 += e,
                _ => merged.push((p, e)),
            }
        }
        Self { pairs: merged }
    }

    pub(crate) fn from_pairs_unchecked(pairs: Vec<(u64, u32)>) -> Self {
        Self { pairs }
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    pub fn value(&self) -> u64 {
        self.pairs.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn is_one(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_prime(&self) -> bool {
        self.pairs.len() == 1 && self.pairs[0].1 == 1
    }

    pub fn is_squarefree(&self) -> bool {
        self.pairs.iter().all(|&(_, e)| e == 1)
    }

    /// Number of prime factors counted with multiplicity.
    pub fn big_omega(&self) -> u32 {
        self.pairs.iter().map(|&(_, e)| e).sum()
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> u32 {
        self.pairs.len() as u32
    }

    pub fn mu(&self) -> i64 {
        if self.is_squarefree() {
            if self.pairs.len() % 2 == 0 {
                1
            } else {
                -1
            }
        } else {
            0
        }
    }

    pub fn phi(&self) -> u64 {
        self.pairs
            .iter()
            .map(|&(p, e)| p.pow(e - 1) * (p - 1))
            .product()
    }

    /// `n * prod (1 - 2/p)` over odd primes, with the 2-part contributing `phi(2^s)`.
    pub fn phi2(&self) -> u64 {
        self.pairs
            .iter()
            .map(|&(p, e)| {
                if p == 2 {
                    1u64 << (e - 1)
                } else {
                    p.pow(e - 1) * (p - 2)
                }
            })
            .product()
    }

    /// k-fold divisor function.
    pub fn tau_k(&self, k: u32) -> u64 {
        self.pairs
            .iter()
            .map(|&(_, e)| binomial((e + k - 1) as u64, (k - 1) as u64))
            .product()
    }

    pub fn tau(&self) -> u64 {
        self.tau_k(2)
    }

    pub fn rad(&self) -> u64 {
        self.pairs.iter().map(|&(p, _)| p).product()
    }

    pub fn smallest_prime(&self) -> Option<u64> {
        self.pairs.first().map(|&(p, _)| p)
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.pairs.last().map(|&(p, _)| p)
    }

    /// All divisors in increasing order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.pairs {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }

    /// Primes listed with multiplicity, ascending.
    pub fn prime_multiset(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.big_omega() as usize);
        for &(p, e) in &self.pairs {
            for _ in 0..e {
                out.push(p);
            }
        }
        out
    }
}

/// Exact binomial coefficient for small arguments.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Inverse of `a` modulo `m`, if it exists.
/// Factorization by trial division; fine for `n` up to about `10^13`.
pub fn trial_factor(mut n: u64) -> Factorization {
    let mut pairs = Vec::new();
    for p in [2u64, 3] {
        let mut e = 0;
        while n > 1 && n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            pairs.push((p, e));
        }
    }
    let mut d = 5u64;
    let mut step = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            pairs.push((d, e));
        }
        d += step;
        step = 6 - step;
    }
    if n > 1 {
        pairs.push((n, 1));
    }
    Factorization::from_pairs(pairs)
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}
