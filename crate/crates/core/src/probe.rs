//! Floating-point profiles of the Rabier function along user-supplied curves.
//! Profiles only: nothing here decides membership of a value in K∞.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::poly::{ComplexPoint, Polynomial};

/// Points with some `|g_j|` above this are not on S and are rejected.
pub const CONSTRAINT_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeSample {
    pub point: ComplexPoint,
    pub f_value: Complex64,
    pub nu: f64,
    /// `‖point‖ · ν(point)`
    pub product: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ProbeEntry {
    Sample(ProbeSample),
    Rejected { point: ComplexPoint, constraint: usize, residual: f64 },
}

fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

fn norm(u: &[Complex64]) -> f64 {
    u.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

fn remove_component(v: &mut [Complex64], q: &[Complex64]) {
    let c = inner(q, v);
    for (a, b) in v.iter_mut().zip(q) {
        *a -= c * b;
    }
}

/// Orthonormal basis of the span, by modified Gram–Schmidt with one round
/// of reorthogonalization. Numerically dependent vectors are dropped.
fn orthonormal_basis(vectors: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let scale = vectors.iter().map(|v| norm(v)).fold(0.0, f64::max);
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &basis {
                remove_component(&mut w, q);
            }
        }
        let n = norm(&w);
        if n > 1e-12 * scale && n > 0.0 {
            basis.push(w.into_iter().map(|a| a / n).collect());
        }
    }
    basis
}

fn conj_gradient(p: &Polynomial, z: &[Complex64]) -> Vec<Complex64> {
    (0..p.nvars()).map(|i| p.partial_derivative(i).evaluate(z).conj()).collect()
}

/// `ν(z) = min_λ ‖∇f(z) + Σ λ_j ∇g_j(z)‖` with conjugated gradients: the
/// distance from `∇f` to the span of the `∇g_j`.
pub fn rabier_nu(f: &Polynomial, gs: &[Polynomial], z: &[Complex64]) -> f64 {
    let mut r = conj_gradient(f, z);
    let span: Vec<Vec<Complex64>> = gs.iter().map(|g| conj_gradient(g, z)).collect();
    let basis = orthonormal_basis(&span);
    for _ in 0..2 {
        for q in &basis {
            remove_component(&mut r, q);
        }
    }
    norm(&r)
}

fn profile_point(f: &Polynomial, gs: &[Polynomial], z: &ComplexPoint) -> ProbeEntry {
    for (j, g) in gs.iter().enumerate() {
        let r = g.evaluate(z).norm();
        // Written so that a NaN residual is rejected too.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(r <= CONSTRAINT_TOLERANCE) {
            return ProbeEntry::Rejected { point: z.clone(), constraint: j, residual: r };
        }
    }
    let nu = rabier_nu(f, gs, z);
    ProbeEntry::Sample(ProbeSample { point: z.clone(), f_value: f.evaluate(z), nu, product: norm(z) * nu })
}

/// `f`, `ν` and `‖x‖·ν` at each curve point, in input order.
pub fn asymptotic_profile(f: &Polynomial, gs: &[Polynomial], curve: &[ComplexPoint]) -> Vec<ProbeEntry> {
    curve.par_iter().map(|z| profile_point(f, gs, z)).collect()
}
