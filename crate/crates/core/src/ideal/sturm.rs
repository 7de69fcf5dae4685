//! Exact real-root counting with Sturm sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::univariate::{RealPolynomial, UniPoly, UnivariatePolynomial};

fn sturm_sequence(p: &RealPolynomial) -> Vec<RealPolynomial> {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r.scale(&BigRational::from_integer(BigInt::from(-1))));
    }
    seq
}

fn sign_changes(seq: &[RealPolynomial], x: &BigRational) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|s| s.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `u` in the closed interval `[a, b]`.
pub fn sturm_count(u: &RealPolynomial, a: &BigRational, b: &BigRational) -> usize {
    assert!(!u.is_zero(), "Sturm count of the zero polynomial");
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    let mut p = u.squarefree();
    if p.degree() == Some(0) {
        return 0;
    }
    let mut count = 0;
    // Divide out endpoint roots so the classical theorem applies on (a, b).
    for x in [a, b] {
        if p.eval(x).is_zero() {
            count += 1;
            p = p.div_rem(&UniPoly::linear_root(x)).0;
        }
        if a == b {
            return count;
        }
    }
    if p.degree() == Some(0) {
        return count;
    }
    let seq = sturm_sequence(&p);
    count + sign_changes(&seq, a) - sign_changes(&seq, b)
}

/// A closed rational interval inside `[a, b]` that contains exactly one root
/// of `u` and has width at most `max_width`; degenerate when the root is
/// found exactly. `None` when `u` has no root in `[a, b]`.
pub fn isolate_root(
    u: &RealPolynomial,
    a: &BigRational,
    b: &BigRational,
    max_width: &BigRational,
) -> Option<(BigRational, BigRational)> {
    let (mut lo, mut hi) = (a.clone(), b.clone());
    if sturm_count(u, &lo, &hi) == 0 {
        return None;
    }
    if u.eval(&lo).is_zero() {
        return Some((lo.clone(), lo));
    }
    let two = BigRational::from_integer(2.into());
    loop {
        if u.eval(&hi).is_zero() {
            return Some((hi.clone(), hi));
        }
        if sturm_count(u, &lo, &hi) == 1 && &(&hi - &lo) <= max_width {
            return Some((lo, hi));
        }
        let mid = (&lo + &hi) / &two;
        if u.eval(&mid).is_zero() {
            return Some((mid.clone(), mid));
        }
        if sturm_count(u, &lo, &mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

/// The real polynomial whose roots are exactly the real roots of `u`:
/// `gcd(Re u, Im u)` coefficientwise.
pub fn real_root_part(u: &UnivariatePolynomial) -> RealPolynomial {
    let (re, im) = u.real_imag();
    if im.is_zero() {
        re
    } else {
        re.gcd(&im)
    }
}
