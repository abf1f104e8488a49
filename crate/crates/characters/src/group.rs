use goldtwin_core::{Error, Result};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Largest modulus whose character group may be enumerated.
pub const GROUP_BUDGET: u64 = 1_000_000;

/// One cyclic factor of `(Z/p^α)^*`: its order and a discrete-log table.
#[derive(Debug)]
pub(crate) struct CyclicFactor {
    pub order: u64,
    /// `log[r]` for residues `r` mod `p^α`; `u32::MAX` marks non-units.
    pub log: Vec<u32>,
}

/// The unit group modulo a prime power, split into cyclic factors.
///
/// Odd `p^α` uses the smallest primitive root; `2^α` with `α >= 3` uses the
/// generators `-1` and `5`, and `4` uses `-1` alone.
#[derive(Debug)]
pub struct PrimePowerGroup {
    pub p: u64,
    pub alpha: u32,
    pub modulus: u64,
    pub(crate) factors: Vec<CyclicFactor>,
    /// Generator of the cyclic odd-prime group (unused for `p = 2`).
    pub generator: u64,
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

fn distinct_primes(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest primitive root modulo `p^α` for an odd prime `p`.
pub fn smallest_primitive_root(p: u64, alpha: u32) -> u64 {
    let ph = p - 1;
    let qs = distinct_primes(ph);
    let mut g = 2;
    loop {
        if g % p != 0 && qs.iter().all(|&q| pow_mod(g, ph / q, p) != 1) {
            if alpha == 1 || pow_mod(g, ph, p * p) != 1 {
                return g;
            }
        }
        g += 1;
    }
}

impl PrimePowerGroup {
    fn new(p: u64, alpha: u32) -> Self {
        let modulus = p.pow(alpha);
        let m = modulus as usize;
        if p != 2 {
            let g = smallest_primitive_root(p, alpha);
            let order = modulus / p * (p - 1);
            let mut log = vec![u32::MAX; m];
            let mut x = 1u64;
            for k in 0..order {
                log[x as usize] = k as u32;
                x = x * g % modulus;
            }
            return Self { p, alpha, modulus, factors: vec![CyclicFactor { order, log }], generator: g };
        }
        match alpha {
            1 => Self { p, alpha, modulus, factors: Vec::new(), generator: 1 },
            2 => {
                let mut log = vec![u32::MAX; 4];
                log[1] = 0;
                log[3] = 1;
                Self { p, alpha, modulus, factors: vec![CyclicFactor { order: 2, log }], generator: 3 }
            }
            _ => {
                let order5 = modulus / 4;
                let mut sign = vec![u32::MAX; m];
                let mut five = vec![u32::MAX; m];
                let mut x = 1u64;
                for b in 0..order5 {
                    sign[x as usize] = 0;
                    five[x as usize] = b as u32;
                    let y = (modulus - x) as usize;
                    sign[y] = 1;
                    five[y] = b as u32;
                    x = x * 5 % modulus;
                }
                Self {
                    p,
                    alpha,
                    modulus,
                    factors: vec![
                        CyclicFactor { order: 2, log: sign },
                        CyclicFactor { order: order5, log: five },
                    ],
                    generator: 5,
                }
            }
        }
    }

    pub fn factor_orders(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.order).collect()
    }

    pub fn phi(&self) -> u64 {
        self.factors.iter().map(|f| f.order).product()
    }

    /// Conductor exponent of the component character with the given exponents.
    pub fn conductor_exponent(&self, exps: &[u64]) -> u32 {
        if self.p != 2 {
            let e = exps[0];
            if e == 0 {
                return 0;
            }
            let mut v = 0;
            let mut x = e;
            while x % self.p == 0 && v < self.alpha - 1 {
                x /= self.p;
                v += 1;
            }
            return self.alpha - v;
        }
        match self.alpha {
            1 => 0,
            2 => {
                if exps[0] == 0 {
                    0
                } else {
                    2
                }
            }
            _ => {
                let (a, b) = (exps[0], exps[1]);
                if b == 0 {
                    return if a == 0 { 0 } else { 2 };
                }
                self.alpha - b.trailing_zeros()
            }
        }
    }
}

/// `(Z/q)^*` as a product of prime-power groups, with exponent slots laid out
/// component by component.
#[derive(Debug)]
pub struct CharacterGroup {
    pub modulus: u64,
    pub components: Vec<Arc<PrimePowerGroup>>,
    /// Orders of all cyclic factors in slot order.
    pub orders: Vec<u64>,
    /// First slot of each component.
    pub offsets: Vec<usize>,
    /// Least common multiple of the factor orders.
    pub exponent: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    goldtwin_core::gcd(a, b)
}

fn prime_power_group(p: u64, alpha: u32) -> Arc<PrimePowerGroup> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Arc<PrimePowerGroup>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(g) = cache.lock().unwrap().get(&(p, alpha)) {
        return g.clone();
    }
    let g = Arc::new(PrimePowerGroup::new(p, alpha));
    cache.lock().unwrap().entry((p, alpha)).or_insert(g).clone()
}

impl CharacterGroup {
    /// Group of characters modulo `q`; shared through a process-wide cache.
    pub fn get(q: u64) -> Result<Arc<CharacterGroup>> {
        if q == 0 || q > GROUP_BUDGET {
            return Err(Error::Config(format!(
                "modulus {q} outside the character enumeration budget [1, {GROUP_BUDGET}]"
            )));
        }
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CharacterGroup>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(g) = cache.lock().unwrap().get(&q) {
            return Ok(g.clone());
        }
        let g = Arc::new(Self::build(q));
        Ok(cache.lock().unwrap().entry(q).or_insert(g).clone())
    }

    fn build(q: u64) -> Self {
        let mut components = Vec::new();
        let mut n = q;
        for p in distinct_primes(q) {
            let mut alpha = 0;
            while n % p == 0 {
                n /= p;
                alpha += 1;
            }
            components.push(prime_power_group(p, alpha));
        }
        let mut orders = Vec::new();
        let mut offsets = Vec::new();
        for c in &components {
            offsets.push(orders.len());
            orders.extend(c.factor_orders());
        }
        let exponent = orders.iter().fold(1u64, |acc, &o| acc / gcd(acc, o) * o);
        Self { modulus: q, components, orders, offsets, exponent }
    }

    pub fn size(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Exponent slots belonging to component `i`.
    pub fn slots(&self, i: usize) -> std::ops::Range<usize> {
        let start = self.offsets[i];
        start..start + self.components[i].factors.len()
    }

    /// Discrete logs of `n` in every slot, or `None` if `gcd(n, q) > 1`.
    pub fn logs(&self, n: u64) -> Option<Vec<u64>> {
        let mut out = Vec::with_capacity(self.orders.len());
        for c in &self.components {
            let r = (n % c.modulus) as usize;
            for f in &c.factors {
                let l = f.log[r];
                if l == u32::MAX {
                    return None;
                }
                out.push(l as u64);
            }
            if c.factors.is_empty() && r % 2 == 0 {
                return None;
            }
        }
        Some(out)
    }
}
