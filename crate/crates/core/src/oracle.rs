//! Derivatives computed without symbolic differentiation, for cross-checking
//! `partial_x` / `partial_y`.
//!
//! Along a coordinate line `t ↦ p + t·e`, the map `h(t)` (cleared of negative
//! powers of `y_j + t` when needed) is a polynomial of known degree, so the
//! difference quotient `(h(t) − h(0)) / t` is a polynomial too. Interpolating
//! it through enough sample points and reading its value at `t = 0` gives
//! `h'(0)` exactly.

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::laurent::LaurentPoly;

/// Value at 0 of the polynomial of degree `< ts.len()` through `(ts[k], vs[k])`.
fn lagrange_at_zero(ts: &[Rat], vs: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (k, (tk, vk)) in ts.iter().zip(vs).enumerate() {
        let mut w = vk.clone();
        for (l, tl) in ts.iter().enumerate() {
            if l != k {
                w = w * tl * (tl - tk).inv().expect("distinct nodes");
            }
        }
        acc += w;
    }
    acc
}

/// `h'(0)` where `h` is a polynomial of degree at most `degree`, avoiding the
/// nodes in `forbidden`.
fn derivative_at_zero(degree: u32, forbidden: &[Rat], h: impl Fn(&Rat) -> Result<Rat>) -> Result<Rat> {
    let h0 = h(&Rat::zero())?;
    let needed = degree.max(1) as usize;
    let mut ts = Vec::with_capacity(needed);
    let mut candidate = 1i64;
    while ts.len() < needed {
        let t = Rat::from(candidate);
        if !forbidden.contains(&t) {
            ts.push(t);
        }
        candidate += 1;
    }
    let vs = ts
        .iter()
        .map(|t| Ok((h(t)? - &h0) * t.inv()?))
        .collect::<Result<Vec<_>>>()?;
    Ok(lagrange_at_zero(&ts, &vs))
}

pub fn partial_x_at(f: &LaurentPoly, i: usize, x: &[Rat], y: &[Rat]) -> Result<Rat> {
    let (n, _) = f.signature();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, len: n });
    }
    let degree = f.terms().map(|(mono, _)| mono.x_exps[i]).max().unwrap_or(0);
    derivative_at_zero(degree, &[], |t| {
        let mut shifted = x.to_vec();
        shifted[i] = &shifted[i] + t;
        f.evaluate(&shifted, y)
    })
}

pub fn partial_y_at(f: &LaurentPoly, j: usize, x: &[Rat], y: &[Rat]) -> Result<Rat> {
    let (_, m) = f.signature();
    if j >= m {
        return Err(Error::IndexOutOfRange { index: j, len: m });
    }
    let exps = || f.terms().map(|(mono, _)| mono.y_exps[j]);
    let clear = exps().min().unwrap_or(0).min(0).unsigned_abs();
    let top = exps().max().unwrap_or(0).max(0).unsigned_abs();
    let yj = &y[j];
    // h(t) = (y_j + t)^K · f(.., y_j + t, ..)
    let h_prime = derivative_at_zero(clear + top, &[-yj.clone()], |t| {
        let mut shifted = y.to_vec();
        shifted[j] = yj + t;
        Ok(shifted[j].pow(i64::from(clear))? * f.evaluate(x, &shifted)?)
    })?;
    // h'(0) = K y^{K−1} f(p) + y^K f'(p)
    let k = i64::from(clear);
    let base = Rat::from(k) * yj.pow(k - 1)? * f.evaluate(x, y)?;
    Ok((h_prime - base) * yj.pow(k)?.inv()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::Monomial;

    #[test]
    fn agrees_with_power_rule_example() {
        // x1^3 y1^-1 + 5 x1, d/dx1 = 3 x1^2 y1^-1 + 5
        let f = LaurentPoly::from_terms(
            1,
            1,
            [
                (Monomial { x_exps: vec![3], y_exps: vec![-1] }, Rat::one()),
                (Monomial { x_exps: vec![1], y_exps: vec![0] }, Rat::from(5)),
            ],
        );
        let (x, y) = ([Rat::new(2, 3).unwrap()], [Rat::new(-5, 2).unwrap()]);
        for (sym, oracle) in [
            (f.partial_x(0).unwrap(), partial_x_at(&f, 0, &x, &y).unwrap()),
            (f.partial_y(0).unwrap(), partial_y_at(&f, 0, &x, &y).unwrap()),
        ] {
            assert_eq!(sym.evaluate(&x, &y).unwrap(), oracle);
        }
    }
}
