//! Dense univariate polynomials over Q or Q(i).

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::poly::{ExponentVector, Polynomial, Ring};
use crate::scalar::Scalar;

/// Exact field used for univariate coefficients.
pub trait Coeff: Clone + PartialEq + Zero + One + fmt::Debug + Send + Sync {
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn div_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn to_c64(&self) -> Complex64;
    fn to_scalar(&self) -> Scalar;
}

impl Coeff for BigRational {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn div_ref(&self, o: &Self) -> Self {
        self / o
    }
    fn neg_ref(&self) -> Self {
        -self.clone()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::real(self.clone())
    }
}

impl Coeff for Scalar {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn div_ref(&self, o: &Self) -> Self {
        self / o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn to_c64(&self) -> Complex64 {
        self.to_complex()
    }
    fn to_scalar(&self) -> Scalar {
        self.clone()
    }
}

/// Coefficients in ascending degree; the last one is nonzero unless empty.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
}

pub type UnivariatePolynomial = UniPoly<Scalar>;
pub type RealPolynomial = UniPoly<BigRational>;

impl<F: Coeff> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `t - a`
    pub fn linear_root(a: &F) -> Self {
        Self::new(vec![a.neg_ref(), F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = F::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z).add_ref(o.coeffs.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = F::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z).sub_ref(o.coeffs.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = F::one().div_ref(l);
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dl = d.leading().expect("division by zero polynomial").clone();
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].div_ref(&dl);
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub_ref(&c.mul_ref(b));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd (zero iff both inputs are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul_ref(&from_usize::<F>(k)))
                .collect(),
        )
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x).add_ref(c);
        }
        acc
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_c64();
        }
        acc
    }

    pub fn to_scalar_poly(&self) -> UnivariatePolynomial {
        UniPoly::new(self.coeffs.iter().map(Coeff::to_scalar).collect())
    }

    /// Whether `self = u · o` for a nonzero constant `u`.
    pub fn is_associate(&self, o: &Self) -> bool {
        self.degree() == o.degree() && self.monic() == o.monic()
    }

    pub fn to_polynomial(&self, ring: &Ring, var: usize) -> Polynomial {
        let n = ring.nvars();
        Polynomial::from_terms(
            ring,
            self.coeffs.iter().enumerate().map(|(k, c)| {
                let mut e = ExponentVector::zero(n);
                e.0[var] = k as u32;
                (e, c.to_scalar())
            }),
        )
    }

    /// Canonical text in the polynomial grammar using `var` as the variable name.
    pub fn display_in(&self, var: &str) -> String {
        let ring = Ring::new(&[var]).expect("single name is always distinct");
        self.to_polynomial(&ring, 0).to_string()
    }
}

fn from_usize<F: Coeff>(k: usize) -> F {
    // Small integers by repeated doubling to stay generic over the field.
    let mut acc = F::zero();
    let mut base = F::one();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc.add_ref(&base);
        }
        base = base.add_ref(&base);
        k >>= 1;
    }
    acc
}

impl UnivariatePolynomial {
    /// Reads a polynomial in a single-variable ring.
    pub fn from_polynomial(p: &Polynomial) -> Self {
        assert_eq!(p.nvars(), 1, "expected a univariate polynomial");
        let deg = p.total_degree().unwrap_or(0) as usize;
        let mut coeffs = vec![Scalar::zero(); deg + 1];
        for (e, c) in p.terms() {
            coeffs[e.entries()[0] as usize] = c.clone();
        }
        UniPoly::new(coeffs)
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_real)
    }

    /// Splits `p = a + I·b` with real `a`, `b`.
    pub fn real_imag(&self) -> (RealPolynomial, RealPolynomial) {
        (
            UniPoly::new(self.coeffs.iter().map(|c| c.re.clone()).collect()),
            UniPoly::new(self.coeffs.iter().map(|c| c.im.clone()).collect()),
        )
    }

    /// Canonical associate: primitive integer coefficients with positive
    /// leading coefficient when real, monic otherwise.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        if !self.is_real() {
            return self.monic();
        }
        let (re, _) = self.real_imag();
        re.primitive().to_scalar_poly()
    }
}

impl RealPolynomial {
    /// Integer coefficients with content 1 and positive leading coefficient.
    pub fn primitive(&self) -> Self {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::Signed;
        if self.is_zero() {
            return Self::zero();
        }
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for a in &ints {
            g = g.gcd(a);
        }
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        UniPoly::new(ints.into_iter().map(|a| BigRational::from_integer(a / &g)).collect())
    }

    pub fn sign_at(&self, x: &BigRational) -> std::cmp::Ordering {
        self.eval(x).cmp(&BigRational::zero())
    }
}
