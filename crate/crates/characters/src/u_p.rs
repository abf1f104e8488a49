use crate::character::character_group;
use goldtwin_core::{gcd, mod_inverse, Error, Result};

/// Weights `u_P(n; a, q)` for every residue `n mod q`: the indicator of
/// `n ≡ a` minus the projection onto characters of conductor at most `P`.
pub fn u_p_table(a: i64, q: u64, p_level: u64) -> Result<Vec<f64>> {
    let ar = a.rem_euclid(q as i64) as u64;
    if gcd(ar, q) != 1 {
        return Err(Error::Usage(format!("gcd({a}, {q}) > 1")));
    }
    let a_inv = mod_inverse(ar, q)
        .ok_or_else(|| Error::Usage(format!("{a} is not invertible mod {q}")))?;
    let mut proj = vec![0.0; q as usize];
    let chars = character_group(q)?;
    let phi = chars.len() as f64;
    for chi in chars.iter().filter(|c| c.conductor() <= p_level) {
        for (r, slot) in proj.iter_mut().enumerate() {
            let x = ((r as u128 * a_inv as u128) % q as u128) as i64;
            *slot += chi.eval(x).re;
        }
    }
    Ok((0..q)
        .map(|r| {
            let hit = if (r as u128 * a_inv as u128) % q as u128 == 1 % q as u128 { 1.0 } else { 0.0 };
            hit - proj[r as usize] / phi
        })
        .collect())
}

pub fn u_p(n: i64, a: i64, q: u64, p_level: u64) -> Result<f64> {
    let table = u_p_table(a, q, p_level)?;
    Ok(table[n.rem_euclid(q as i64) as usize])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!((u_p(1, 1, 7, 1).unwrap() - 5.0 / 6.0).abs() < 1e-12);
        assert!((u_p(3, 1, 7, 1).unwrap() + 1.0 / 6.0).abs() < 1e-12);
        for n in 0..12 {
            assert!(u_p(n, 5, 12, 12).unwrap().abs() < 1e-12);
        }
        assert!(u_p(1, 3, 12, 1).is_err());
    }
}
