//! Term-list representation sorted by a monomial order, used inside the
//! Gröbner engine. Terms are stored ascending so the leading term is last.

use std::cmp::Ordering;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::MonomialOrder;
use crate::poly::{ExponentVector, Polynomial, Ring};
use crate::scalar::Scalar;

pub(crate) type Mono = SmallVec<[u32; 8]>;

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct DPoly {
    pub terms: Vec<(Mono, Scalar)>,
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&x| x as u64).sum();
    let db: u64 = b.iter().map(|&x| x as u64).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GRevLex => grevlex(a, b),
            MonomialOrder::Block(k) => {
                let k = k.min(a.len());
                grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }

    /// A key whose lexicographic order on `Vec<i64>` matches `cmp`.
    pub(crate) fn sort_key(&self, a: &[u32]) -> Vec<i64> {
        fn revlex_key(a: &[u32], out: &mut Vec<i64>) {
            out.push(a.iter().map(|&x| x as i64).sum());
            out.extend(a.iter().rev().map(|&x| -(x as i64)));
        }
        let mut out = Vec::with_capacity(a.len() + 2);
        match *self {
            MonomialOrder::Lex => out.extend(a.iter().map(|&x| x as i64)),
            MonomialOrder::GRevLex => revlex_key(a, &mut out),
            MonomialOrder::Block(k) => {
                let k = k.min(a.len());
                revlex_key(&a[..k], &mut out);
                revlex_key(&a[k..], &mut out);
            }
        }
        out
    }
}

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn lcm(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub(crate) fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn quotient(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl DPoly {
    pub fn zero() -> Self {
        DPoly { terms: Vec::new() }
    }

    pub fn from_poly(p: &Polynomial, order: MonomialOrder) -> Self {
        let mut terms: Vec<(Mono, Scalar)> =
            p.terms().map(|(e, c)| (SmallVec::from_slice(e.entries()), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        DPoly { terms }
    }

    pub fn to_poly(&self, ring: &Ring) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().map(|(m, c)| (ExponentVector(m.clone()), c.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Mono {
        &self.terms.last().expect("leading monomial of zero").0
    }

    pub fn lc(&self) -> &Scalar {
        &self.terms.last().expect("leading coefficient of zero").1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0)
    }

    pub fn make_monic(&mut self) {
        if self.is_zero() || self.lc().is_one() {
            return;
        }
        let inv = self.lc().inv();
        for t in &mut self.terms {
            t.1 = &t.1 * &inv;
        }
    }

    /// `self - c · x^m · g`, merged in order.
    pub fn sub_scaled(&self, c: &Scalar, m: &[u32], g: &DPoly, order: MonomialOrder) -> DPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let shifted = g.terms.iter().map(|(gm, gc)| {
            let mm: Mono = gm.iter().zip(m).map(|(a, b)| a + b).collect();
            (mm, gc * c)
        });
        let mut a = self.terms.iter().peekable();
        let mut b = shifted.peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (m, c) = b.next().unwrap();
                    out.push((m, -c));
                }
                (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                    Ordering::Less => out.push(a.next().unwrap().clone()),
                    Ordering::Greater => {
                        let (m, c) = b.next().unwrap();
                        out.push((m, -c));
                    }
                    Ordering::Equal => {
                        let (xm, xc) = a.next().unwrap();
                        let (_, yc) = b.next().unwrap();
                        let d = xc - &yc;
                        if !d.is_zero() {
                            out.push((xm.clone(), d));
                        }
                    }
                },
            }
        }
        DPoly { terms: out }
    }

    /// Full reduction modulo `basis`: no term of the result is divisible by a
    /// leading monomial of the basis.
    pub fn reduce(&self, basis: &[DPoly], order: MonomialOrder) -> DPoly {
        let mut p = self.clone();
        let mut rem: Vec<(Mono, Scalar)> = Vec::new();
        while let Some((lm, lc)) = p.terms.last() {
            let divisor = basis.iter().find(|g| !g.is_zero() && divides(g.lm(), lm));
            match divisor {
                Some(g) => {
                    let c = lc / g.lc();
                    let m = quotient(lm, g.lm());
                    p = p.sub_scaled(&c, &m, g, order);
                }
                None => {
                    rem.push(p.terms.pop().unwrap());
                }
            }
        }
        rem.reverse();
        DPoly { terms: rem }
    }

    pub fn s_polynomial(&self, g: &DPoly, order: MonomialOrder) -> DPoly {
        let l = lcm(self.lm(), g.lm());
        let mf = quotient(&l, self.lm());
        let mg = quotient(&l, g.lm());
        let zero = DPoly::zero();
        let a = zero.sub_scaled(&-&self.lc().inv(), &mf, self, order);
        a.sub_scaled(&g.lc().inv(), &mg, g, order)
    }
}
