use goldtwin_core::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Upper and lower functions `F`, `f` of the linear sieve on the grid
/// `s = 1 + k h`.
#[derive(Clone, Debug)]
pub struct LinearSieveFunctions {
    pub h: f64,
    pub s_max: f64,
    upper: Vec<f64>,
    lower: Vec<f64>,
    steps_per_unit: usize,
}

impl LinearSieveFunctions {
    /// Solves `(sF(s))' = f(s−1)`, `(sf(s))' = F(s−1)` from the initial segments
    /// `F = 2e^γ/s` on `[1,3]` and `f = 2e^γ log(s−1)/s` on `[2,4]`.
    pub fn solve(s_max: f64, h: f64) -> Result<Self> {
        if !(4.0..=20.0).contains(&s_max) {
            return Err(Error::Usage(format!("s_max={s_max} outside [4, 20]")));
        }
        if !(h > 0.0 && h <= 1e-3) {
            return Err(Error::Usage(format!("step h={h} must lie in (0, 1e-3]")));
        }
        let steps = (1.0 / h).round() as usize;
        if ((steps as f64) * h - 1.0).abs() > 1e-9 {
            return Err(Error::Usage(format!("1/h must be an integer, got h={h}")));
        }
        let h = 1.0 / steps as f64;
        let len = ((s_max - 1.0) * steps as f64).ceil() as usize + 1;
        let s_at = |k: usize| 1.0 + k as f64 * h;
        let two_eg = 2.0 * EULER_GAMMA.exp();
        let mut upper = vec![0.0; len];
        let mut lower = vec![0.0; len];
        let i3 = 2 * steps;
        let i4 = 3 * steps;
        for k in 0..len.min(i3 + 1) {
            upper[k] = two_eg / s_at(k);
        }
        for k in steps..len.min(i4 + 1) {
            let s = s_at(k);
            lower[k] = two_eg * (s - 1.0).ln() / s;
        }
        // Running integrals of sF and sf beyond the initial segments.
        let mut s_upper = 3.0 * upper[i3];
        let mut s_lower = 4.0 * lower[i4];
        for k in i3 + 1..len {
            let s = s_at(k);
            s_upper += 0.5 * h * (lower[k - 1 - steps] + lower[k - steps]);
            upper[k] = s_upper / s;
            if k > i4 {
                s_lower += 0.5 * h * (upper[k - 1 - steps] + upper[k - steps]);
                lower[k] = s_lower / s;
            }
        }
        Ok(Self { h, s_max: s_at(len - 1), upper, lower, steps_per_unit: steps })
    }

    fn interp(&self, v: &[f64], s: f64) -> Result<f64> {
        if !(1.0..=self.s_max).contains(&s) {
            return Err(Error::Range(format!("s={s} outside [1, {}]", self.s_max)));
        }
        let x = (s - 1.0) * self.steps_per_unit as f64;
        let k = (x.floor() as usize).min(v.len() - 2);
        let t = x - k as f64;
        Ok(v[k] * (1.0 - t) + v[k + 1] * t)
    }

    /// `F(s)`.
    pub fn upper(&self, s: f64) -> Result<f64> {
        self.interp(&self.upper, s)
    }

    /// `f(s)`.
    pub fn lower(&self, s: f64) -> Result<f64> {
        self.interp(&self.lower, s)
    }

    /// Grid nodes `(s, f(s), F(s))`.
    pub fn table(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        (0..self.upper.len()).map(|k| (1.0 + k as f64 * self.h, self.lower[k], self.upper[k]))
    }

    /// Defects at the two knots: `|4f(4) − ∫₂⁴ F(t−1)dt|` and
    /// `|3F(3) − 2F(2) − ∫₂³ f(t−1)dt|`, integrals by the grid trapezoid rule.
    pub fn junction_defects(&self) -> (f64, f64) {
        let n = self.steps_per_unit;
        let trap = |v: &[f64], a: usize, b: usize| {
            (a..b).map(|k| 0.5 * self.h * (v[k] + v[k + 1])).sum::<f64>()
        };
        let at4 = (4.0 * self.lower[3 * n] - trap(&self.upper, 0, 2 * n)).abs();
        // f(t−1) = 0 on [2,3].
        let at3 = (3.0 * self.upper[2 * n] - 2.0 * self.upper[n] - trap(&self.lower, 0, n)).abs();
        (at4, at3)
    }
}

fn simpson(f: impl Fn(f64) -> Result<f64>, a: f64, b: f64, n: usize) -> Result<f64> {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut acc = f(a)? + f(b)?;
    for i in 1..n {
        acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(a + i as f64 * h)?;
    }
    Ok(acc * h / 3.0)
}

/// `f(s) − ½∫₁^u F(s−t)/t dt` with `s = level/z`, `u = y/z` (exponents of `N`).
pub fn weighted_margin(fns: &LinearSieveFunctions, z_exp: f64, y_exp: f64, level_exp: f64) -> Result<f64> {
    let s = level_exp / z_exp;
    let u = y_exp / z_exp;
    if u < 1.0 {
        return Err(Error::Usage(format!("y exponent {y_exp} below z exponent {z_exp}")));
    }
    if s - u < 1.0 {
        return Err(Error::Range(format!("F needed at s={} below 1", s - u)));
    }
    let integral = simpson(|t| Ok(fns.upper(s - t)? / t), 1.0, u, 4000)?;
    Ok(fns.lower(s)? - 0.5 * integral)
}

/// Margin of the three-prime-factor minorant at the default exponents.
pub fn p3_margin(fns: &LinearSieveFunctions) -> Result<f64> {
    weighted_margin(fns, 0.1, 1.0 / 3.0, 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_segments() {
        let fns = LinearSieveFunctions::solve(10.0, 1e-3).unwrap();
        assert!((fns.upper(2.0).unwrap() - EULER_GAMMA.exp()).abs() < 1e-12);
        assert_eq!(fns.lower(2.0).unwrap(), 0.0);
        assert!(LinearSieveFunctions::solve(10.0, 0.01).is_err());
        let (a, b) = fns.junction_defects();
        assert!(a <= 10.0 * fns.h && b <= 10.0 * fns.h);
    }
}
