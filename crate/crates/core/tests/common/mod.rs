//! Instance generators and independent oracles shared by the property suites
//! and the acceptance harness.
#![allow(dead_code)]

use bifset::newton::{face_part, min_degree_and_face};
use bifset::univariate::{RealPolynomial, UniPoly, UnivariatePolynomial};
use bifset::{ExponentVector, Polynomial, Ring, Scalar};
use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn ring(n: usize) -> Ring {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    Ring::new(&names).unwrap()
}

pub fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            return c;
        }
    }
}

pub fn random_exponent(rng: &mut ChaCha8Rng, n: usize, max_deg: u32) -> ExponentVector {
    let total = rng.gen_range(0..=max_deg);
    let mut e = vec![0u32; n];
    for _ in 0..total {
        e[rng.gen_range(0..n)] += 1;
    }
    ExponentVector::from_slice(&e)
}

/// Random integer polynomial with up to `terms` monomials of degree `<= max_deg`.
pub fn random_poly(rng: &mut ChaCha8Rng, ring: &Ring, terms: usize, max_deg: u32, bound: i64) -> Polynomial {
    loop {
        let t: Vec<(ExponentVector, Scalar)> = (0..terms)
            .map(|_| (random_exponent(rng, ring.nvars(), max_deg), Scalar::from_int(nonzero(rng, bound))))
            .collect();
        let p = Polynomial::from_terms(ring, t);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Same, with Gaussian-integer coefficients.
pub fn random_complex_poly(rng: &mut ChaCha8Rng, ring: &Ring, terms: usize, max_deg: u32, bound: i64) -> Polynomial {
    loop {
        let t: Vec<(ExponentVector, Scalar)> = (0..terms)
            .map(|_| {
                let c = Scalar::new(rat(rng.gen_range(-bound..=bound)), rat(rng.gen_range(-bound..=bound)));
                (random_exponent(rng, ring.nvars(), max_deg), c)
            })
            .collect();
        let p = Polynomial::from_terms(ring, t);
        if !p.is_zero() {
            return p;
        }
    }
}

// ---------------------------------------------------------------- Euler

pub struct EulerTriple {
    pub f: Polynomial,
    pub axes: Vec<usize>,
    pub q: Vec<BigRational>,
}

pub fn euler_triple(rng: &mut ChaCha8Rng) -> EulerTriple {
    loop {
        let n = rng.gen_range(2..=3);
        let r = ring(n);
        let terms = rng.gen_range(2..=8);
        let f = random_poly(rng, &r, terms, 5, 5);
        let mut axes: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.7)).collect();
        if axes.is_empty() {
            axes.push(rng.gen_range(0..n));
        }
        if f.restrict_to_axes(&axes).is_zero() {
            continue;
        }
        let mut q: Vec<BigRational> = axes.iter().map(|_| rat(rng.gen_range(-3..=3))).collect();
        if !q.iter().any(Signed::is_negative) {
            let k = rng.gen_range(0..q.len());
            q[k] = rat(-rng.gen_range(1..=3));
        }
        return EulerTriple { f, axes, q };
    }
}

/// Checks the face selection by hand and returns
/// `Σ q_i x_i ∂f_Δ/∂x_i − d f_Δ`, which must vanish identically.
pub fn euler_residual(t: &EulerTriple) -> Result<Polynomial, String> {
    let (d, face) = min_degree_and_face(&t.f, &t.axes, &t.q).map_err(|e| e.to_string())?;
    let weight = |e: &ExponentVector| -> BigRational {
        t.axes.iter().zip(&t.q).map(|(&i, qi)| qi * BigInt::from(e.entries()[i])).sum()
    };
    let restricted = t.f.restrict_to_axes(&t.axes);
    for (e, _) in restricted.terms() {
        let w = weight(e);
        if w < d {
            return Err(format!("support point {:?} lies below the face", e.entries()));
        }
        if (w == d) != face.members.contains(e) {
            return Err(format!("face membership of {:?} is wrong", e.entries()));
        }
    }
    let fd = face_part(&t.f, &face);
    let ring = t.f.ring();
    let mut acc = fd.scale(&-Scalar::real(d));
    for (&i, qi) in t.axes.iter().zip(&t.q) {
        let xi = Polynomial::var(ring, i);
        let term = (&xi * &fd.partial_derivative(i)).scale(&Scalar::real(qi.clone()));
        acc = &acc + &term;
    }
    Ok(acc)
}

// ------------------------------------------------------- exact linear algebra

/// Solves `a x = b` over Q; `None` when inconsistent.
pub fn solve_linear(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].recip();
        for k in c..cols {
            a[r][k] = &a[r][k] * &inv;
        }
        b[r] = &b[r] * &inv;
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let m = a[i][c].clone();
                for k in c..cols {
                    let v = &a[r][k] * &m;
                    a[i][k] -= v;
                }
                let v = &b[r] * &m;
                b[i] -= v;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if b[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = b[i].clone();
    }
    Some(x)
}

fn monomials_up_to(n: usize, deg: u32) -> Vec<ExponentVector> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
        if cur.len() == n {
            out.push(ExponentVector::from_slice(cur));
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, deg, &mut Vec::new(), &mut out);
    out
}

/// `p ∈ ⟨gens⟩` with multipliers of total degree `<= bound`, decided by
/// exact linear algebra on the coefficients. Real coefficients only.
pub fn member_with_bounded_multipliers(p: &Polynomial, gens: &[Polynomial], bound: u32) -> bool {
    let ring = p.ring();
    let monos = monomials_up_to(ring.nvars(), bound);
    let mut columns: Vec<Polynomial> = Vec::new();
    for g in gens {
        for m in &monos {
            columns.push(g.mul_monomial(m, &Scalar::from_int(1)));
        }
    }
    let mut rows: Vec<ExponentVector> = columns.iter().flat_map(|c| c.support()).chain(p.support()).collect();
    rows.sort();
    rows.dedup();
    let real = |s: Option<&Scalar>| -> BigRational {
        let s = s.cloned().unwrap_or_else(Scalar::zero);
        assert!(s.is_real(), "real coefficients expected");
        s.re
    };
    let a: Vec<Vec<BigRational>> =
        rows.iter().map(|e| columns.iter().map(|c| real(c.coefficient(e))).collect()).collect();
    let b: Vec<BigRational> = rows.iter().map(|e| real(p.coefficient(e))).collect();
    solve_linear(a, b).is_some()
}

pub struct MembershipInstance {
    pub gens: Vec<Polynomial>,
    pub p: Polynomial,
}

/// Half the instances are combinations of the generators, half are
/// combinations plus a random monomial.
pub fn membership_instance(rng: &mut ChaCha8Rng, k: usize) -> MembershipInstance {
    let n = rng.gen_range(2..=3);
    let r = ring(n);
    let ngens = rng.gen_range(1..=2);
    let gens: Vec<Polynomial> = (0..ngens)
        .map(|_| {
            let terms = rng.gen_range(2..=3);
            random_poly(rng, &r, terms, 2, 3)
        })
        .collect();
    let mut p = Polynomial::zero(&r);
    for g in &gens {
        let terms = rng.gen_range(1..=3);
        let a = random_poly(rng, &r, terms, 1, 3);
        p = &p + &(&a * g);
    }
    if k % 2 == 1 {
        let m = Polynomial::monomial(&r, random_exponent(rng, n, 2), Scalar::from_int(nonzero(rng, 3)));
        p = &p + &m;
    }
    MembershipInstance { gens, p }
}

// ------------------------------------------------------------ resultants

fn rp_mul(a: &RealPolynomial, b: &RealPolynomial) -> RealPolynomial {
    a.mul(b)
}

fn det(m: &[Vec<RealPolynomial>]) -> RealPolynomial {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = RealPolynomial::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<RealPolynomial>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect()).collect();
        let term = rp_mul(&m[0][j], &det(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Coefficients of `p ∈ Q[x, y]` as a polynomial in `x` (variable 0), each a
/// polynomial in `y`; index = power of `x`.
fn x_coefficients(p: &Polynomial) -> Vec<RealPolynomial> {
    let dx = p.terms().map(|(e, _)| e.entries()[0]).max().unwrap_or(0) as usize;
    let mut out = vec![Vec::<BigRational>::new(); dx + 1];
    for (e, c) in p.terms() {
        let (i, j) = (e.entries()[0] as usize, e.entries()[1] as usize);
        let v = &mut out[i];
        if v.len() <= j {
            v.resize(j + 1, BigRational::zero());
        }
        v[j] += c.re.clone();
    }
    out.into_iter().map(RealPolynomial::new).collect()
}

/// `Res_x(f, g)` from the Sylvester matrix.
pub fn sylvester_resultant(f: &Polynomial, g: &Polynomial) -> RealPolynomial {
    let a = x_coefficients(f);
    let b = x_coefficients(g);
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut s = vec![vec![RealPolynomial::zero(); size]; size];
    for row in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            s[row][row + k] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            s[n + row][row + k] = c.clone();
        }
    }
    det(&s)
}

/// Roots via eigenvalues of the companion matrix.
pub fn companion_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    let mut m = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        m[(i, deg - 1)] = -coeffs[i] / lead;
    }
    // The unshifted Schur iteration can stall on the companion's sparsity
    // pattern; a dense similarity transform breaks it.
    let mut scramble = 0.0;
    loop {
        let t = DMatrix::<f64>::from_fn(deg, deg, |i, j| {
            let v = if i == j { 1.0 } else { 0.0 };
            v + scramble * (((i * 7 + j * 13) % 11) as f64 / 11.0 - 0.5)
        });
        let a = &t * &m * t.clone().try_inverse().expect("invertible transform");
        if let Some(schur) = nalgebra::linalg::Schur::try_new(a, f64::EPSILON, 10_000) {
            return schur.complex_eigenvalues().iter().copied().collect();
        }
        scramble += 0.1;
    }
}

pub fn real_coeffs_f64(u: &RealPolynomial) -> Vec<f64> {
    u.coeffs().iter().map(|c| c.to_f64().unwrap()).collect()
}

pub fn scalar_real_coeffs_f64(u: &UnivariatePolynomial) -> Vec<f64> {
    u.coeffs()
        .iter()
        .map(|c| {
            assert!(c.is_real());
            c.re.to_f64().unwrap()
        })
        .collect()
}

/// Bivariate systems whose leading coefficients in `x` are constants, so the
/// resultant's roots are exactly the projections of the common zeros.
pub fn resultant_instance(rng: &mut ChaCha8Rng) -> Option<(Polynomial, Polynomial)> {
    let r = Ring::new(&["x", "y"]).unwrap();
    let make = |rng: &mut ChaCha8Rng, dx: u32| -> Polynomial {
        let lead = nonzero(rng, 3);
        let mut terms = vec![(ExponentVector::from_slice(&[dx, 0]), Scalar::from_int(lead))];
        for i in 0..dx {
            for j in 0..=(2 - i.min(2)) {
                if rng.gen_bool(0.6) {
                    terms.push((ExponentVector::from_slice(&[i, j]), Scalar::from_int(rng.gen_range(-4..=4))));
                }
            }
        }
        Polynomial::from_terms(&r, terms)
    };
    let dx = rng.gen_range(1..=2);
    let f = make(rng, dx);
    let g = make(rng, 2);
    let res = sylvester_resultant(&f, &g);
    (res.degree().unwrap_or(0) >= 1).then_some((f, g))
}

/// Pairs every root of `a` with a distinct root of `b` within `tol`
/// (relative to `max(1, |z|)`).
pub fn same_root_sets(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    for z in a {
        let best = b
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .min_by(|x, y| (x.1 - z).norm().total_cmp(&(y.1 - z).norm()));
        match best {
            Some((k, w)) if (w - z).norm() <= tol * z.norm().max(1.0) => used[k] = true,
            _ => return false,
        }
    }
    true
}

// ------------------------------------------------------------------ Sturm

pub struct SturmInstance {
    pub u: RealPolynomial,
    pub a: BigRational,
    pub b: BigRational,
}

/// Products of distinct rational linear factors (roots on a 1/4 grid) and an
/// optional positive-definite quadratic, scaled randomly.
pub fn sturm_instance(rng: &mut ChaCha8Rng) -> SturmInstance {
    let mut grid: Vec<i64> = (-16..=16).collect();
    grid.shuffle(rng);
    let m = rng.gen_range(0..=6);
    let mut u = RealPolynomial::constant(rat(nonzero(rng, 5)));
    for &k in &grid[..m] {
        u = u.mul(&UniPoly::linear_root(&ratio(k, 4)));
    }
    if rng.gen_bool(0.5) || m == 0 {
        let c = rat(rng.gen_range(1..=4));
        u = u.mul(&RealPolynomial::new(vec![c, rat(rng.gen_range(-1..=1)), rat(1)]));
    }
    let off = ratio(1, 997);
    let mut a = ratio(rng.gen_range(-35..=35), 7) + &off;
    let mut b = ratio(rng.gen_range(-35..=35), 7) + &off;
    if a > b {
        std::mem::swap(&mut a, &mut b);
    }
    SturmInstance { u, a, b }
}

/// Counts sign changes on a `1/64` grid across `[a, b]` and confirms each one
/// by bisection down to width `2^-40`.
pub fn bisection_count(u: &RealPolynomial, a: &BigRational, b: &BigRational) -> usize {
    let step = ratio(1, 64);
    let sign = |x: &BigRational| u.eval(x).signum();
    let mut pts = Vec::new();
    let mut x = a.clone();
    while &x < b {
        pts.push(x.clone());
        x += &step;
    }
    pts.push(b.clone());
    let tiny = BigRational::new(BigInt::one(), BigInt::one() << 40);
    let mut count = 0;
    for w in pts.windows(2) {
        let (sl, sr) = (sign(&w[0]), sign(&w[1]));
        if sl.is_zero() {
            count += 1;
            continue;
        }
        if sl != sr && !sr.is_zero() {
            let (mut lo, mut hi) = (w[0].clone(), w[1].clone());
            while &hi - &lo > tiny {
                let mid = (&lo + &hi) / rat(2);
                let sm = sign(&mid);
                if sm.is_zero() {
                    break;
                }
                if sm == sl {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            count += 1;
        }
    }
    if sign(b).is_zero() {
        count += 1;
    }
    count
}

// ------------------------------------------------------------------ probe

fn gradient_by_hand(p: &Polynomial, z: &[Complex64]) -> Vec<Complex64> {
    let mut g = vec![Complex64::new(0.0, 0.0); z.len()];
    for (e, c) in p.terms() {
        let c = c.to_complex();
        for i in 0..z.len() {
            let ai = e.entries()[i];
            if ai == 0 {
                continue;
            }
            let mut v = c * ai as f64;
            for (k, zk) in z.iter().enumerate() {
                let pow = if k == i { ai - 1 } else { e.entries()[k] };
                v *= zk.powu(pow);
            }
            g[i] += v;
        }
    }
    g
}

/// `min_λ ‖conj ∇f + Σ λ_j conj ∇g_j‖` through the normal equations.
pub fn normal_equations_nu(f: &Polynomial, gs: &[Polynomial], z: &[Complex64]) -> f64 {
    let n = z.len();
    let b = DVector::from_iterator(n, gradient_by_hand(f, z).into_iter().map(|v| v.conj()));
    if gs.is_empty() {
        return b.norm();
    }
    let a = conj_gradient_matrix(gs, z);
    let ah = a.adjoint();
    let lambda = (&ah * &a).lu().solve(&(-(&ah * &b))).expect("full column rank");
    (b + a * lambda).norm()
}

pub struct ProbeInstance {
    pub f: Polynomial,
    pub gs: Vec<Polynomial>,
    pub z: Vec<Complex64>,
}

fn conj_gradient_matrix(gs: &[Polynomial], z: &[Complex64]) -> DMatrix<Complex64> {
    let cols: Vec<Complex64> = gs.iter().flat_map(|g| gradient_by_hand(g, z).into_iter().map(|v| v.conj())).collect();
    DMatrix::from_column_slice(z.len(), gs.len(), &cols)
}

/// Random systems at random points; the constraint gradients are kept well
/// conditioned so the normal equations are a fair oracle.
pub fn probe_instance(rng: &mut ChaCha8Rng) -> ProbeInstance {
    loop {
        let n = rng.gen_range(2..=4);
        let r = ring(n);
        let p = rng.gen_range(0..n.min(3));
        let terms = rng.gen_range(1..=5);
        let f = random_complex_poly(rng, &r, terms, 3, 3);
        let gs: Vec<Polynomial> = (0..p)
            .map(|_| {
                let terms = rng.gen_range(2..=4);
                random_complex_poly(rng, &r, terms, 3, 3)
            })
            .collect();
        let z: Vec<Complex64> =
            (0..n).map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect();
        if p > 0 {
            let sv = conj_gradient_matrix(&gs, &z).singular_values();
            if sv.min() < 1e-3 * sv.max().max(1.0) {
                continue;
            }
        }
        return ProbeInstance { f, gs, z };
    }
}

// ------------------------------------------------------ proptest strategies

pub mod strategies {
    use super::*;
    use proptest::prelude::*;

    /// Sparse polynomials in `n` variables, Gaussian-integer coefficients.
    pub fn poly(n: usize, max_exp: u32, max_terms: usize, complex: bool) -> impl Strategy<Value = Polynomial> {
        let im = if complex { -3i64..=3 } else { 0i64..=0 };
        prop::collection::vec((prop::collection::vec(0..=max_exp, n), -5i64..=5, im), 0..=max_terms).prop_map(
            move |terms| {
                let r = ring(n);
                Polynomial::from_terms(
                    &r,
                    terms.into_iter().map(|(e, re, im)| (ExponentVector::from_slice(&e), Scalar::new(rat(re), rat(im)))),
                )
            },
        )
    }

    pub fn nonzero_poly(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
        poly(n, max_exp, max_terms, false).prop_filter("nonzero", |p| !p.is_zero())
    }

    pub fn seed() -> impl Strategy<Value = u64> {
        any::<u64>()
    }
}
