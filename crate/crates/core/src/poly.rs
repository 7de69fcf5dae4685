//! Sparse multivariate polynomials over Q(i) with dense exponent vectors.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Ordered list of variable names. Cheap to clone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Arc<[String]>,
}

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::Instance(format!("duplicate variable name `{a}`")));
            }
        }
        Ok(Ring { names: names.into() })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// A name not present in the ring, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut candidate = base.to_string();
        while self.index_of(&candidate).is_some() {
            candidate.push('_');
        }
        candidate
    }

    /// Ring over the variables `indices` of `self`, in the given order.
    pub fn sub_ring(&self, indices: &[usize]) -> Ring {
        Ring { names: indices.iter().map(|&i| self.names[i].clone()).collect::<Vec<_>>().into() }
    }

    /// Ring with `extra` appended after the existing variables.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Ring> {
        let mut names: Vec<String> = self.names.to_vec();
        names.extend(extra.iter().map(|s| s.as_ref().to_string()));
        Ring::new(&names)
    }
}

/// Exponent vector `α ∈ Z₊ⁿ`. Ordered by graded lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector(pub SmallVec<[u32; 8]>);

impl ExponentVector {
    pub fn zero(n: usize) -> Self {
        ExponentVector(SmallVec::from_elem(0, n))
    }

    pub fn from_slice(e: &[u32]) -> Self {
        ExponentVector(SmallVec::from_slice(e))
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = Self::zero(n);
        e.0[i] = 1;
        e
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn add(&self, o: &Self) -> Self {
        ExponentVector(self.0.iter().zip(o.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// True when every coordinate outside `axes` is zero.
    pub fn supported_in(&self, axes: &[usize]) -> bool {
        self.0.iter().enumerate().all(|(i, &e)| e == 0 || axes.contains(&i))
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// A point of `Cⁿ` in double precision.
pub type ComplexPoint = Vec<Complex64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<ExponentVector, Scalar>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(ExponentVector::zero(ring.nvars()), c);
        p
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Scalar::one())
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::monomial(ring, ExponentVector::unit(ring.nvars(), i), Scalar::one())
    }

    pub fn monomial(ring: &Ring, exp: ExponentVector, c: Scalar) -> Self {
        assert_eq!(exp.len(), ring.nvars(), "exponent length does not match ring");
        let mut p = Self::zero(ring);
        p.add_term(exp, c);
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, Scalar)>,
    {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            assert_eq!(e.len(), ring.nvars(), "exponent length does not match ring");
            p.add_term(e, c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Option<&Scalar> {
        self.terms.get(e)
    }

    pub fn support(&self) -> Vec<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(ExponentVector::degree).max()
    }

    /// The constant value if the polynomial has no non-constant term.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                (e.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(Scalar::is_real)
    }

    fn add_term(&mut self, e: ExponentVector, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, o: &Self) {
        assert!(
            self.ring == o.ring,
            "polynomials over different rings: {:?} vs {:?}",
            self.ring.names(),
            o.ring.names()
        );
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &ExponentVector, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.add(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal holomorphic partial derivative `∂p/∂x_i` (0-based `i`).
    pub fn partial_derivative(&self, i: usize) -> Self {
        assert!(i < self.nvars(), "variable index out of range");
        let mut out = Self::zero(&self.ring);
        for (e, c) in &self.terms {
            let k = e.0[i];
            if k == 0 {
                continue;
            }
            let mut d = e.clone();
            d.0[i] -= 1;
            out.add_term(d, c * &Scalar::from_int(k as i64));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars()).map(|i| self.partial_derivative(i)).collect()
    }

    /// `p|_{C^I}`: keeps exactly the terms whose exponents vanish outside `axes`.
    pub fn restrict_to_axes(&self, axes: &[usize]) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.supported_in(axes))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sum of the terms whose exponents lie in `members`.
    pub fn select_terms(&self, members: &[ExponentVector]) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: members
                .iter()
                .filter_map(|e| self.terms.get(e).map(|c| (e.clone(), c.clone())))
                .collect(),
        }
    }

    /// Numeric evaluation; coefficients converted to doubles, each variable
    /// eliminated by a Horner pass over its exponents.
    pub fn evaluate(&self, z: &[Complex64]) -> Complex64 {
        assert_eq!(z.len(), self.nvars(), "point dimension does not match ring");
        let terms: Vec<(&[u32], Complex64)> =
            self.terms.iter().map(|(e, c)| (e.entries(), c.to_complex())).collect();
        horner(&terms, z, 0)
    }

    /// Exact evaluation at a Gaussian-rational point.
    pub fn evaluate_exact(&self, z: &[Scalar]) -> Scalar {
        assert_eq!(z.len(), self.nvars(), "point dimension does not match ring");
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (zi, &k) in z.iter().zip(e.entries()) {
                if k > 0 {
                    t = &t * &zi.pow(k);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Moves the polynomial into `target`, sending variable `i` to `map[i]`.
    /// Variables mapped to `None` must not occur.
    pub fn remap(&self, target: &Ring, map: &[Option<usize>]) -> Result<Self> {
        assert_eq!(map.len(), self.nvars());
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut ne = ExponentVector::zero(target.nvars());
            for (i, &k) in e.entries().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => ne.0[j] += k,
                    None => {
                        return Err(Error::Internal(format!(
                            "variable `{}` occurs but has no image in the target ring",
                            self.ring.name(i)
                        )))
                    }
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Substitutes `x_i = value` and drops `x_i` from the ring.
    pub fn substitute(&self, i: usize, value: &Scalar) -> Self {
        let keep: Vec<usize> = (0..self.nvars()).filter(|&k| k != i).collect();
        let ring = self.ring.sub_ring(&keep);
        let mut out = Self::zero(&ring);
        for (e, c) in &self.terms {
            let ne = ExponentVector(keep.iter().map(|&k| e.0[k]).collect());
            out.add_term(ne, c * &value.pow(e.0[i]));
        }
        out
    }

    /// Multiplies by the least common denominator so every coefficient has
    /// integer real and imaginary parts.
    pub fn clear_denominators(&self) -> Self {
        use num_integer::Integer;
        let mut l = num_bigint::BigInt::one();
        for c in self.terms.values() {
            l = l.lcm(c.re.denom()).lcm(c.im.denom());
        }
        self.scale(&Scalar::real(num_rational::BigRational::from_integer(l)))
    }
}

fn horner(terms: &[(&[u32], Complex64)], z: &[Complex64], var: usize) -> Complex64 {
    if terms.is_empty() {
        return Complex64::new(0.0, 0.0);
    }
    if var == z.len() {
        return terms.iter().map(|t| t.1).sum();
    }
    // Group by exponent of `var`, highest first.
    let mut groups: BTreeMap<u32, Vec<(&[u32], Complex64)>> = BTreeMap::new();
    for t in terms {
        groups.entry(t.0[var]).or_default().push(*t);
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut prev: Option<u32> = None;
    for (&k, g) in groups.iter().rev() {
        if let Some(p) = prev {
            acc *= z[var].powu(p - k);
        }
        acc += horner(g, z, var + 1);
        prev = Some(k);
    }
    if let Some(p) = prev {
        acc *= z[var].powu(p);
    }
    acc
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        self.check_ring(o);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        self.check_ring(o);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        self.check_ring(o);
        let mut out = Polynomial::zero(&self.ring);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&Scalar::from_int(-1))
    }
}

macro_rules! forward_owned_poly {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, o: Polynomial) -> Polynomial {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned_poly!(Add, add);
forward_owned_poly!(Sub, sub);
forward_owned_poly!(Mul, mul);

/// Determinant of a small square matrix of polynomials (Laplace expansion).
pub fn determinant(m: &[Vec<Polynomial>], ring: &Ring) -> Polynomial {
    let k = m.len();
    match k {
        0 => Polynomial::one(ring),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = Polynomial::zero(ring);
            for col in 0..k {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &m[0][col] * &determinant(&minor, ring);
                acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// All `k × k` minors of the Jacobian of `polys` with respect to the variables
/// in `columns`. Zero minors are dropped.
pub fn jacobian_minors(polys: &[Polynomial], columns: &[usize], ring: &Ring) -> Vec<Polynomial> {
    let k = polys.len();
    if k == 0 || k > columns.len() {
        return Vec::new();
    }
    let jac: Vec<Vec<Polynomial>> =
        polys.iter().map(|p| columns.iter().map(|&c| p.partial_derivative(c)).collect()).collect();
    let mut out = Vec::new();
    for subset in k_subsets(columns.len(), k) {
        let sub: Vec<Vec<Polynomial>> =
            jac.iter().map(|row| subset.iter().map(|&c| row[c].clone()).collect()).collect();
        let d = determinant(&sub, ring);
        if !d.is_zero() {
            out.push(d);
        }
    }
    out
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every subset of `items` (including the empty one), smallest first.
pub fn all_subsets(items: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 0..=items.len() {
        for s in k_subsets(items.len(), k) {
            out.push(s.into_iter().map(|i| items[i]).collect());
        }
    }
    out
}

fn write_monomial(f: &mut fmt::Formatter<'_>, ring: &Ring, e: &ExponentVector) -> fmt::Result {
    let mut first = true;
    for (i, &k) in e.entries().iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if k == 1 {
            write!(f, "{}", ring.name(i))?;
        } else {
            write!(f, "{}^{}", ring.name(i), k)?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    /// Canonical form: terms in descending graded-lex order, explicit `*` and `^`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_printed_negative();
            let mag = if neg { -c } else { c.clone() };
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if e.degree() == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write_monomial(f, &self.ring, e)?;
            } else {
                write!(f, "{mag}*")?;
                write_monomial(f, &self.ring, e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn xy() -> Ring {
        Ring::new(&["x", "y"]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &xy()).unwrap()
    }

    #[test]
    fn partials_follow_power_rule() {
        let f = p("x + x^2*y");
        assert_eq!(f.partial_derivative(0), p("1 + 2*x*y"));
        assert_eq!(f.partial_derivative(1), p("x^2"));
        assert!(p("5").partial_derivative(0).is_zero());
    }

    #[test]
    fn restriction_substitutes_zero() {
        let f = p("x + x^2*y");
        assert_eq!(f.restrict_to_axes(&[0]), p("x"));
        assert!(f.restrict_to_axes(&[1]).is_zero());
        assert_eq!(p("x*y - 1").restrict_to_axes(&[0]), p("-1"));
        assert_eq!(f.restrict_to_axes(&[0, 1]), f);
    }

    #[test]
    fn evaluation_examples() {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        assert_eq!(p("x^2*y^2 - x*y").evaluate(&[c(1.0, 0.0), c(1.0, 0.0)]), c(0.0, 0.0));
        assert_eq!(p("x + x^2*y").evaluate(&[c(1.0, 0.0), c(-1.0, 0.0)]), c(0.0, 0.0));
        assert_eq!(p("x^2 + y^2").evaluate(&[c(1.0, 0.0), c(0.0, 1.0)]), c(0.0, 0.0));
    }

    #[test]
    fn printing_is_descending_grlex() {
        assert_eq!(p("x + x^2*y").to_string(), "x^2*y + x");
        assert_eq!(p("(x+y)^2").to_string(), "x^2 + 2*x*y + y^2");
        assert_eq!(p("1/2*x - I*y + 3").to_string(), "1/2*x - I*y + 3");
        assert_eq!(p("(1+I)*x - (2 - I)").to_string(), "(1 + I)*x - (2 - I)");
        assert_eq!(p("0").to_string(), "0");
    }

    #[test]
    fn determinant_and_minors() {
        let r = xy();
        let m = vec![vec![p("x"), p("y")], vec![p("1"), p("x")]];
        assert_eq!(determinant(&m, &r), p("x^2 - y"));
        let minors = jacobian_minors(&[p("x*y - 1")], &[0, 1], &r);
        assert_eq!(minors, vec![p("y"), p("x")]);
        assert!(jacobian_minors(&[p("x"), p("y"), p("x*y")], &[0, 1], &r).is_empty());
    }

    #[test]
    fn subsets_enumerate_everything() {
        assert_eq!(k_subsets(4, 2).len(), 6);
        assert_eq!(all_subsets(&[2, 5]), vec![vec![], vec![2], vec![5], vec![2, 5]]);
    }

    #[test]
    fn substitute_drops_variable() {
        let f = p("x + 3*x^2*y");
        let g = f.substitute(1, &Scalar::from_int(2));
        assert_eq!(g.ring().names(), &["x".to_string()]);
        assert_eq!(g.to_string(), "6*x^2 + x");
    }
}
