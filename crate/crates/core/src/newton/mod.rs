//! Newton polyhedra at infinity (hull of the support, origin not adjoined),
//! faces cut out by covectors, and enumeration of face tuples.

pub mod lp;
mod search;
mod tuples;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{ExponentVector, Polynomial};
use lp::{lp_feasible, Constraint, Relation};
use search::{enumerate_raw, DRule};

pub use tuples::{enumerate_face_tuples, FaceTuple, TupleMode};

/// Largest ring dimension accepted by the face machinery.
pub const MAX_VARIABLES: usize = 8;
/// Largest support accepted per polynomial.
pub const MAX_SUPPORT: usize = 64;

/// A face `Δ(q, Γ)` with the covector that exposes it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceDescriptor {
    /// Support points on the face, ascending. Full-length exponent vectors.
    pub members: Vec<ExponentVector>,
    /// Covector on the chosen axes.
    pub witness_q: Vec<BigRational>,
    /// `min ⟨q, α⟩` over the support.
    pub value_d: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NewtonPolyhedron {
    pub axes: Vec<usize>,
    /// Support of the restriction to `C^I`, ascending.
    pub points: Vec<ExponentVector>,
    pub vertices: Vec<ExponentVector>,
    /// Every nonempty face, the polyhedron itself included (covector 0).
    pub faces: Vec<FaceDescriptor>,
}

pub(crate) fn check_sizes(p: &Polynomial) -> Result<()> {
    if p.nvars() > MAX_VARIABLES {
        return Err(Error::SizeLimit(format!("{} variables (limit {MAX_VARIABLES})", p.nvars())));
    }
    if p.len() > MAX_SUPPORT {
        return Err(Error::SizeLimit(format!("support of size {} (limit {MAX_SUPPORT})", p.len())));
    }
    Ok(())
}

pub(crate) fn restricted_support(p: &Polynomial, axes: &[usize]) -> Result<Vec<ExponentVector>> {
    check_sizes(p)?;
    let r = p.restrict_to_axes(axes);
    if r.is_zero() {
        return Err(Error::ZeroRestriction { axes: axes.to_vec() });
    }
    Ok(r.support())
}

pub(crate) fn project(e: &ExponentVector, axes: &[usize]) -> Vec<i64> {
    axes.iter().map(|&i| e.entries()[i] as i64).collect()
}

pub(crate) fn dot(q: &[BigRational], e: &ExponentVector, axes: &[usize]) -> BigRational {
    q.iter().zip(axes).fold(BigRational::zero(), |acc, (qi, &i)| acc + qi * BigInt::from(e.entries()[i]))
}

/// `true` iff `alpha` is an extreme point of the hull of `points`.
fn is_vertex(alpha: &[i64], points: &[Vec<i64>]) -> bool {
    let nq = alpha.len();
    let cs: Vec<Constraint> = points
        .iter()
        .filter(|b| b.as_slice() != alpha)
        .map(|b| {
            let coeffs: Vec<i64> = b.iter().zip(alpha).map(|(x, y)| x - y).collect();
            Constraint::from_ints(&coeffs, Relation::Ge, 1)
        })
        .collect();
    lp_feasible(nq, &cs).witness().is_some()
}

/// Γ(p|_{C^I}) inside `R^I`.
pub fn newton_polyhedron(p: &Polynomial, axes: &[usize]) -> Result<NewtonPolyhedron> {
    let points = restricted_support(p, axes)?;
    let coords: Vec<Vec<i64>> = points.iter().map(|e| project(e, axes)).collect();
    let vertices =
        points.iter().zip(&coords).filter(|(_, c)| is_vertex(c, &coords)).map(|(e, _)| e.clone()).collect();
    let mut faces: Vec<FaceDescriptor> = enumerate_raw(&[coords], DRule::Free, false)
        .into_iter()
        .map(|raw| FaceDescriptor {
            members: raw.members[0].iter().map(|&k| points[k].clone()).collect(),
            witness_q: raw.q,
            value_d: raw.d[0].clone(),
        })
        .collect();
    faces.sort();
    Ok(NewtonPolyhedron { axes: axes.to_vec(), points, vertices, faces })
}

/// Vertices of the full Γ(p) that lie in the coordinate subspace `R^I`.
pub fn vertices_in_subspace(p: &Polynomial, axes: &[usize]) -> Result<Vec<ExponentVector>> {
    let all: Vec<usize> = (0..p.nvars()).collect();
    let full = newton_polyhedron(p, &all)?;
    Ok(full.vertices.into_iter().filter(|v| v.supported_in(axes)).collect())
}

/// `d(q, Γ(p|_{C^I}))` and the face where it is attained.
pub fn min_degree_and_face(p: &Polynomial, axes: &[usize], q: &[BigRational]) -> Result<(BigRational, FaceDescriptor)> {
    assert_eq!(q.len(), axes.len(), "covector length must match the axes");
    let points = restricted_support(p, axes)?;
    let dots: Vec<BigRational> = points.iter().map(|e| dot(q, e, axes)).collect();
    let d = dots.iter().min().cloned().expect("nonempty support");
    let members = points.iter().zip(&dots).filter(|(_, v)| **v == d).map(|(e, _)| e.clone()).collect();
    Ok((d.clone(), FaceDescriptor { members, witness_q: q.to_vec(), value_d: d }))
}

/// `p_Δ`: the terms of `p` whose exponents lie on the face.
pub fn face_part(p: &Polynomial, face: &FaceDescriptor) -> Polynomial {
    p.select_terms(&face.members)
}

/// A pure power `x_i^k` (k ≥ 1) of every variable appears in the support.
pub fn is_convenient(p: &Polynomial) -> bool {
    (0..p.nvars()).all(|i| {
        p.terms().any(|(e, _)| e.entries()[i] > 0 && e.entries().iter().enumerate().all(|(j, &x)| j == i || x == 0))
    })
}
