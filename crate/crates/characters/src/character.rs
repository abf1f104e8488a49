use crate::group::CharacterGroup;
use goldtwin_core::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

/// `e(x) = exp(2πi x)`.
pub fn e(x: f64) -> Complex64 {
    let t = TAU * (x - x.floor());
    Complex64::new(t.cos(), t.sin())
}

/// `e(k/q)` with `k` reduced first.
pub fn e_frac(k: i128, q: u64) -> Complex64 {
    let r = k.rem_euclid(q as i128) as f64;
    e(r / q as f64)
}

/// A Dirichlet character: one exponent per cyclic factor of `(Z/q)^*`.
#[derive(Clone)]
pub struct DirichletCharacter {
    group: Arc<CharacterGroup>,
    exps: Vec<u64>,
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exps == other.exps
    }
}

impl Eq for DirichletCharacter {}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi[q={}; {:?}]", self.modulus(), self.exps)
    }
}

impl DirichletCharacter {
    pub fn new(group: Arc<CharacterGroup>, exps: Vec<u64>) -> Result<Self> {
        if exps.len() != group.orders.len() {
            return Err(Error::Usage(format!(
                "modulus {} needs {} exponents, got {}",
                group.modulus,
                group.orders.len(),
                exps.len()
            )));
        }
        let exps = exps.iter().zip(&group.orders).map(|(&e, &o)| e % o).collect();
        Ok(Self { group, exps })
    }

    pub fn principal(q: u64) -> Result<Self> {
        let group = CharacterGroup::get(q)?;
        let exps = vec![0; group.orders.len()];
        Ok(Self { group, exps })
    }

    /// Character with the given mixed-radix index in its group.
    pub fn from_index(group: Arc<CharacterGroup>, mut index: u64) -> Self {
        let mut exps = vec![0; group.orders.len()];
        for (slot, &o) in group.orders.iter().enumerate().rev() {
            exps[slot] = index % o;
            index /= o;
        }
        Self { group, exps }
    }

    pub fn index(&self) -> u64 {
        self.exps
            .iter()
            .zip(&self.group.orders)
            .fold(0, |acc, (&e, &o)| acc * o + e)
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    pub fn group(&self) -> &Arc<CharacterGroup> {
        &self.group
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    /// `χ(n) = e(angle / exponent)` for units, `None` otherwise.
    pub fn angle(&self, n: i64) -> Option<u64> {
        let q = self.modulus();
        let r = n.rem_euclid(q as i64) as u64;
        let logs = self.group.logs(r)?;
        let big = self.group.exponent as u128;
        let mut acc: u128 = 0;
        for ((&l, &e), &o) in logs.iter().zip(&self.exps).zip(&self.group.orders) {
            acc = (acc + (l as u128 * e as u128 % o as u128) * (big / o as u128)) % big;
        }
        Some(acc as u64)
    }

    pub fn eval(&self, n: i64) -> Complex64 {
        match self.angle(n) {
            Some(a) => e(a as f64 / self.group.exponent as f64),
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// Values `χ(0), …, χ(q-1)`.
    pub fn values(&self) -> Vec<Complex64> {
        (0..self.modulus() as i64).map(|n| self.eval(n)).collect()
    }

    /// Value of a real character as an integer in {-1, 0, 1}.
    pub fn eval_real(&self, n: i64) -> Result<i64> {
        if !self.is_real() {
            return Err(Error::Usage("character is not real".into()));
        }
        Ok(match self.angle(n) {
            None => 0,
            Some(0) => 1,
            Some(_) => -1,
        })
    }

    pub fn is_principal(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_real(&self) -> bool {
        self.exps
            .iter()
            .zip(&self.group.orders)
            .all(|(&e, &o)| (2 * e) % o == 0)
    }

    pub fn order(&self) -> u64 {
        self.exps.iter().zip(&self.group.orders).fold(1u64, |acc, (&e, &o)| {
            let k = o / goldtwin_core::gcd(e, o);
            acc / goldtwin_core::gcd(acc, k) * k
        })
    }

    pub fn conj(&self) -> Self {
        let exps = self
            .exps
            .iter()
            .zip(&self.group.orders)
            .map(|(&e, &o)| (o - e) % o)
            .collect();
        Self { group: self.group.clone(), exps }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.modulus() != other.modulus() {
            return Err(Error::Usage("characters have different moduli".into()));
        }
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .zip(&self.group.orders)
            .map(|((&a, &b), &o)| (a + b) % o)
            .collect();
        Ok(Self { group: self.group.clone(), exps })
    }

    /// Prime-power components `(p, α, χ^{(p^α)})`.
    pub fn components(&self) -> Vec<(u64, u32, DirichletCharacter)> {
        let mut out = Vec::new();
        for (i, c) in self.group.components.iter().enumerate() {
            let g = CharacterGroup::get(c.modulus).expect("component within budget");
            let exps = self.exps[self.group.slots(i)].to_vec();
            out.push((c.p, c.alpha, DirichletCharacter { group: g, exps }));
        }
        out
    }

    /// The component character modulo the unitary divisor `d` of `q`.
    pub fn restrict(&self, d: u64) -> Result<Self> {
        let q = self.modulus();
        if d == 0 || q % d != 0 || goldtwin_core::gcd(d, q / d) != 1 {
            return Err(Error::Usage(format!("{d} is not a unitary divisor of {q}")));
        }
        let group = CharacterGroup::get(d)?;
        let mut exps = Vec::new();
        for (i, c) in self.group.components.iter().enumerate() {
            if d % c.modulus == 0 {
                exps.extend_from_slice(&self.exps[self.group.slots(i)]);
            }
        }
        Ok(Self { group, exps })
    }

    /// Assembles a character modulo the product of pairwise coprime moduli.
    pub fn from_components(parts: &[DirichletCharacter]) -> Result<Self> {
        let q: u64 = parts.iter().map(|c| c.modulus()).product();
        let group = CharacterGroup::get(q)?;
        let mut exps = vec![0; group.orders.len()];
        for part in parts {
            for (i, comp) in part.group.components.iter().enumerate() {
                let j = group
                    .components
                    .iter()
                    .position(|c| c.p == comp.p)
                    .ok_or_else(|| Error::Usage("moduli are not coprime".into()))?;
                if group.components[j].alpha != comp.alpha {
                    return Err(Error::Usage("moduli are not coprime".into()));
                }
                let src = part.group.slots(i);
                let dst = group.slots(j);
                exps[dst].copy_from_slice(&part.exps[src]);
            }
        }
        Ok(Self { group, exps })
    }

    /// Conductor exponents per component, aligned with `group().components`.
    pub fn conductor_exponents(&self) -> Vec<u32> {
        self.group
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| c.conductor_exponent(&self.exps[self.group.slots(i)]))
            .collect()
    }

    pub fn conductor(&self) -> u64 {
        self.group
            .components
            .iter()
            .zip(self.conductor_exponents())
            .map(|(c, b)| c.p.pow(b))
            .product()
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus()
    }

    /// The primitive character inducing this one.
    pub fn primitive_part(&self) -> Self {
        let f = self.conductor();
        let group = CharacterGroup::get(f).expect("conductor within budget");
        let mut exps = Vec::with_capacity(group.orders.len());
        for target in group.components.iter() {
            let i = self
                .group
                .components
                .iter()
                .position(|c| c.p == target.p)
                .expect("conductor prime divides modulus");
            let src = &self.group.components[i];
            let src_exps = &self.exps[self.group.slots(i)];
            if target.p == 2 {
                match target.alpha {
                    1 => {}
                    2 => exps.push(src_exps[0]),
                    _ => {
                        let shift = src.alpha - target.alpha;
                        exps.push(src_exps[0]);
                        exps.push(src_exps[1] >> shift);
                    }
                }
            } else {
                // Match the value at the target's generator.
                let g = target.generator;
                let l = src.factors[0].log[(g % src.modulus) as usize] as u128;
                let src_order = src.factors[0].order as u128;
                let tgt_order = target.factors[0].order as u128;
                let num = src_exps[0] as u128 * l % src_order * tgt_order;
                debug_assert_eq!(num % src_order, 0);
                exps.push(((num / src_order) % tgt_order) as u64);
            }
        }
        Self { group, exps }
    }

    /// Lift to a multiple `q2` of the modulus.
    pub fn induce(&self, q2: u64) -> Result<Self> {
        let q = self.modulus();
        if q2 % q != 0 {
            return Err(Error::Usage(format!("{q2} is not a multiple of {q}")));
        }
        let target = CharacterGroup::get(q2)?;
        let mut exps = Vec::with_capacity(target.orders.len());
        for tc in &target.components {
            let found = self.group.components.iter().position(|c| c.p == tc.p);
            let Some(i) = found else {
                exps.extend(std::iter::repeat(0).take(tc.factors.len()));
                continue;
            };
            let src = &self.group.components[i];
            let src_exps = &self.exps[self.group.slots(i)];
            if tc.p == 2 {
                let (a, b) = match src.alpha {
                    1 => (0, 0),
                    2 => (src_exps[0], 0),
                    _ => (src_exps[0], src_exps[1]),
                };
                match tc.alpha {
                    1 => {}
                    2 => exps.push(a),
                    _ => {
                        let shift = tc.alpha - src.alpha.max(2);
                        exps.push(a);
                        exps.push(b << shift);
                    }
                }
            } else {
                let l = src.factors[0].log[(tc.generator % src.modulus) as usize] as u128;
                let src_order = src.factors[0].order as u128;
                let tgt_order = tc.factors[0].order as u128;
                let a = src_exps[0] as u128 * l % src_order;
                exps.push((a * (tgt_order / src_order) % tgt_order) as u64);
            }
        }
        Ok(Self { group: target, exps })
    }
}

/// All `φ(q)` characters modulo `q` in index order.
pub fn character_group(q: u64) -> Result<Vec<DirichletCharacter>> {
    let group = CharacterGroup::get(q)?;
    Ok((0..group.size())
        .map(|i| DirichletCharacter::from_index(group.clone(), i))
        .collect())
}

/// Real characters modulo `q`.
pub fn real_characters(q: u64) -> Result<Vec<DirichletCharacter>> {
    Ok(character_group(q)?.into_iter().filter(|c| c.is_real()).collect())
}

/// Legendre symbol modulo an odd prime as a character.
pub fn legendre_character(p: u64) -> Result<DirichletCharacter> {
    if p < 3 || p % 2 == 0 {
        return Err(Error::Usage(format!("{p} is not an odd prime")));
    }
    let group = CharacterGroup::get(p)?;
    if group.components.len() != 1 || group.components[0].alpha != 1 {
        return Err(Error::Usage(format!("{p} is not an odd prime")));
    }
    DirichletCharacter::new(group, vec![(p - 1) / 2])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_examples() {
        let g1 = character_group(1).unwrap();
        assert_eq!(g1.len(), 1);
        assert_eq!(g1[0].eval(5), Complex64::new(1.0, 0.0));
        let g5 = character_group(5).unwrap();
        let mut orders: Vec<u64> = g5.iter().map(|c| c.order()).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 4, 4]);
        let g8 = character_group(8).unwrap();
        assert_eq!(g8.len(), 4);
        assert!(g8.iter().all(|c| c.is_real()));
        assert_eq!(g5.iter().filter(|c| c.is_principal()).count(), 1);
    }

    #[test]
    fn conductor_examples() {
        assert_eq!(DirichletCharacter::principal(12).unwrap().conductor(), 1);
        let chi3 = legendre_character(3).unwrap();
        let lifted = chi3.induce(9).unwrap();
        assert_eq!(lifted.conductor(), 3);
        assert_eq!(lifted.primitive_part(), chi3);
        assert_eq!(legendre_character(5).unwrap().conductor(), 5);
    }

    #[test]
    fn legendre_values() {
        let chi = legendre_character(7).unwrap();
        let vals: Vec<i64> = (0..7).map(|n| chi.eval_real(n).unwrap()).collect();
        assert_eq!(vals, vec![0, 1, 1, -1, 1, -1, -1]);
    }
}
