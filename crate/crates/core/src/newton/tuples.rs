use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::search::{enumerate_raw, DRule};
use super::{face_part, project, restricted_support, FaceDescriptor};
use crate::error::{Error, Result};
use crate::poly::{ExponentVector, Polynomial};

/// Which covectors a tuple ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TupleMode {
    /// Faces of `f` and of the chosen `g_j` with `d(q, Γ(f|_I)) < 0`.
    D0Negative,
    /// Faces of `f` and of the chosen `g_j` with `d(q, Γ(f|_I)) = 0`.
    D0Zero,
    /// Faces of the chosen `g_j` only.
    NoF,
}

/// Faces of `f|_I` and `g_j|_I` (j ∈ J) exposed by one common covector `q`
/// with `min_{i∈I} q_i < 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceTuple {
    pub mode: TupleMode,
    /// Axes I, ascending, 0-based.
    pub axes: Vec<usize>,
    /// Constraint indices J, ascending, 0-based.
    pub constraints: Vec<usize>,
    pub delta0: Option<FaceDescriptor>,
    /// One face per entry of `constraints`, in the same order.
    pub deltas: Vec<FaceDescriptor>,
    /// Primitive integer covector on `axes`.
    pub witness_q: Vec<BigRational>,
    pub d0: Option<BigRational>,
}

impl FaceTuple {
    pub fn f_face(&self, f: &Polynomial) -> Option<Polynomial> {
        self.delta0.as_ref().map(|d| face_part(f, d))
    }

    pub fn g_faces(&self, gs: &[Polynomial]) -> Vec<Polynomial> {
        self.constraints.iter().zip(&self.deltas).map(|(&j, d)| face_part(&gs[j], d)).collect()
    }

    /// Re-derives every face from the witness and checks the mode conditions.
    pub fn replay(&self, f: &Polynomial, gs: &[Polynomial]) -> bool {
        let q = &self.witness_q;
        if q.len() != self.axes.len() || !q.iter().any(|x| x.is_negative()) {
            return false;
        }
        let face_ok = |p: &Polynomial, face: &FaceDescriptor| -> bool {
            let Ok((d, expected)) = super::min_degree_and_face(p, &self.axes, q) else { return false };
            d == face.value_d && expected.members == face.members
        };
        match (&self.delta0, self.mode) {
            (None, TupleMode::NoF) => {}
            (Some(face), TupleMode::D0Negative) if face.value_d.is_negative() => {
                if !face_ok(f, face) {
                    return false;
                }
            }
            (Some(face), TupleMode::D0Zero) if face.value_d.is_zero() => {
                if !face_ok(f, face) {
                    return false;
                }
            }
            _ => return false,
        }
        self.constraints.len() == self.deltas.len()
            && self.constraints.iter().zip(&self.deltas).all(|(&j, face)| face_ok(&gs[j], face))
    }
}

/// Every tuple of faces realized by some `q` on `R^I` with a negative
/// coordinate and the mode's condition on `d(q, Γ(f|_I))`, sorted canonically.
pub fn enumerate_face_tuples(
    f: &Polynomial,
    gs: &[Polynomial],
    axes: &[usize],
    constraints: &[usize],
    mode: TupleMode,
) -> Result<Vec<FaceTuple>> {
    if axes.is_empty() {
        return Err(Error::Internal("face tuples need a nonempty axis set".into()));
    }
    let mut axes = axes.to_vec();
    axes.sort_unstable();
    axes.dedup();
    let mut constraints = constraints.to_vec();
    constraints.sort_unstable();
    constraints.dedup();

    let mut polys: Vec<&Polynomial> = Vec::new();
    if mode != TupleMode::NoF {
        polys.push(f);
    }
    polys.extend(constraints.iter().map(|&j| &gs[j]));
    if polys.is_empty() {
        return Ok(Vec::new());
    }
    let supports: Vec<Vec<ExponentVector>> =
        polys.iter().map(|p| restricted_support(p, &axes)).collect::<Result<_>>()?;
    let coords: Vec<Vec<Vec<i64>>> =
        supports.iter().map(|s| s.iter().map(|e| project(e, &axes)).collect()).collect();
    let rule = match mode {
        TupleMode::D0Negative => DRule::Negative,
        TupleMode::D0Zero => DRule::Zero,
        TupleMode::NoF => DRule::Free,
    };

    let mut out: Vec<FaceTuple> = enumerate_raw(&coords, rule, true)
        .into_iter()
        .map(|raw| {
            let mut faces = raw.members.iter().zip(&supports).zip(&raw.d).map(|((m, s), d)| FaceDescriptor {
                members: m.iter().map(|&k| s[k].clone()).collect(),
                witness_q: raw.q.clone(),
                value_d: d.clone(),
            });
            let delta0 = if mode == TupleMode::NoF { None } else { faces.next() };
            let deltas: Vec<FaceDescriptor> = faces.collect();
            FaceTuple {
                mode,
                axes: axes.clone(),
                constraints: constraints.clone(),
                d0: delta0.as_ref().map(|d| d.value_d.clone()),
                delta0,
                deltas,
                witness_q: raw.q,
            }
        })
        .collect();
    out.sort();
    Ok(out)
}
