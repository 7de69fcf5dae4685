//! Numeric roots of univariate polynomials by Durand–Kerner iteration, with
//! exact recovery of Gaussian-rational roots.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::univariate::UnivariatePolynomial;

/// A root approximation, with its exact value when it is a Gaussian rational
/// of small height.
#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub exact: Option<Scalar>,
}

const MAX_DENOMINATOR: i64 = 1 << 20;

/// Distinct roots of `u`, sorted by real part then imaginary part.
pub fn univariate_roots(u: &UnivariatePolynomial, precision: f64, max_iterations: usize) -> Result<Vec<Root>> {
    assert!(!u.is_zero(), "roots of the zero polynomial");
    let sf = u.squarefree();
    let deg = sf.degree().unwrap_or(0);
    let mut roots = match deg {
        0 => Vec::new(),
        1 => {
            let c = &sf.coeffs()[0] / &sf.coeffs()[1];
            let r = -c;
            vec![Root { value: r.to_complex(), exact: Some(r) }]
        }
        _ => {
            let approx = durand_kerner(&sf, precision, max_iterations)?;
            approx.into_iter().map(|z| recover_exact(&sf, z)).collect()
        }
    };
    roots.sort_by(|a, b| a.value.re.total_cmp(&b.value.re).then(a.value.im.total_cmp(&b.value.im)));
    Ok(roots)
}

fn durand_kerner(p: &UnivariatePolynomial, precision: f64, max_iterations: usize) -> Result<Vec<Complex64>> {
    let c: Vec<Complex64> = p.coeffs().iter().map(Scalar::to_complex).collect();
    let n = c.len() - 1;
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|a| a / lead).collect();
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a);

    // Fujiwara bound for the initial circle.
    let radius = (1..=n)
        .map(|k| {
            let a = monic[n - k].norm();
            if k == n {
                (a / 2.0).powf(1.0 / k as f64)
            } else {
                a.powf(1.0 / k as f64)
            }
        })
        .fold(0.0f64, f64::max)
        * 2.0;
    let radius = if radius > 0.0 { radius } else { 1.0 };
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + 0.4)).collect();

    let mut residual = f64::INFINITY;
    for _ in 0..max_iterations {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != k {
                    denom *= z[k] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(f64::EPSILON, 0.0);
            }
            let step = eval(z[k]) / denom;
            z[k] -= step;
            max_step = max_step.max(step.norm() / z[k].norm().max(1.0));
        }
        residual = max_step;
        if max_step <= precision {
            // Two Newton corrections against the exact-coefficient polynomial.
            let dp: Vec<Complex64> = (1..=n).map(|k| monic[k] * k as f64).collect();
            for zk in z.iter_mut() {
                for _ in 0..2 {
                    let d = dp.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * *zk + a);
                    if d.norm() > 0.0 {
                        *zk -= eval(*zk) / d;
                    }
                }
            }
            return Ok(z);
        }
    }
    Err(Error::NonConvergence { iterations: max_iterations, residual })
}

/// Best rational approximation with denominator at most `max_den`.
fn rationalize(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a;
        if frac.abs() < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    (k1 != 0).then(|| BigRational::new(BigInt::from(h1), BigInt::from(k1)))
}

fn recover_exact(p: &UnivariatePolynomial, z: Complex64) -> Root {
    let scale = z.norm().max(1.0);
    let snap = |x: f64| if x.abs() <= 1e-9 * scale { 0.0 } else { x };
    let candidate = rationalize(snap(z.re), MAX_DENOMINATOR)
        .zip(rationalize(snap(z.im), MAX_DENOMINATOR))
        .map(|(re, im)| Scalar::new(re, im));
    match candidate {
        Some(c) if p.eval(&c).is_zero() => Root { value: c.to_complex(), exact: Some(c) },
        _ => Root { value: z, exact: None },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::univariate::UniPoly;

    fn up(c: &[i64]) -> UnivariatePolynomial {
        UniPoly::new(c.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    #[test]
    fn linear_factors() {
        let r = univariate_roots(&up(&[0, 1, 4]), 1e-12, 500).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].exact, Some(Scalar::from_ratio(-1, 4)));
        assert_eq!(r[1].exact, Some(Scalar::from_int(0)));
    }

    #[test]
    fn conjugate_pair() {
        let r = univariate_roots(&up(&[1, 0, 1]), 1e-12, 500).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].exact, Some(-Scalar::i()));
        assert_eq!(r[1].exact, Some(Scalar::i()));
    }

    #[test]
    fn multiple_root_listed_once() {
        let r = univariate_roots(&up(&[0, 0, 1]), 1e-12, 500).unwrap();
        assert_eq!(r, vec![Root { value: Complex64::new(0.0, 0.0), exact: Some(Scalar::from_int(0)) }]);
    }

    #[test]
    fn irrational_roots_are_numeric() {
        // t^3 - 2
        let r = univariate_roots(&up(&[-2, 0, 0, 1]), 1e-12, 500).unwrap();
        assert_eq!(r.len(), 3);
        let real = r.iter().find(|x| x.value.im.abs() < 1e-9).unwrap();
        assert!((real.value.re - 2f64.cbrt()).abs() < 1e-12);
        assert!(real.exact.is_none());
    }

    #[test]
    fn rationalize_small_fractions() {
        assert_eq!(rationalize(-0.25, 100), Some(BigRational::new((-1).into(), 4.into())));
        assert_eq!(rationalize(0.0, 100), Some(BigRational::zero()));
    }
}
