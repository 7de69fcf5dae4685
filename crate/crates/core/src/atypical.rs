//! Smoothness of S, Newton non-degeneracy at infinity, the value sets K₀ and
//! Σ∞, and the resulting superset of the bifurcation set.
//!
//! Every symbolic system uses holomorphic partial derivatives. The complex
//! conjugation in the gradient is absorbed by the free multipliers λ_j, so the
//! projected value sets are unchanged.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::config::Config;
use crate::error::{ordered, Error, Result};
use crate::ideal::{contains_one, eliminate_to_univariate, saturation_contains_one, univariate_roots, Eliminant};
use crate::newton::{enumerate_face_tuples, is_convenient, FaceTuple, TupleMode};
use crate::poly::{all_subsets, jacobian_minors, Polynomial, Ring};
use crate::scalar::Scalar;
use crate::univariate::{UniPoly, UnivariatePolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Certified,
    Failed,
    /// Nothing to check: an empty variety, or no constraints at all.
    Vacuous,
    /// Only finitely many parameter values were checked; never a certificate.
    SampledOnly,
}

impl Status {
    pub fn passes(self) -> bool {
        matches!(self, Status::Certified | Status::Vacuous)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Certified => "certified",
            Status::Failed => "failed",
            Status::Vacuous => "vacuous",
            Status::SampledOnly => "sampled-only",
        }
    }
}

/// Which smoothness condition a tuple was checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// The constraint system defining S.
    Constraints,
    /// Face system of the constraints alone.
    ConstraintFaces,
    /// Face system of f (with d < 0) together with the constraint faces.
    FunctionFaces,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub condition: Condition,
    pub tuple: Option<FaceTuple>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub status: Status,
    pub witnesses: Vec<Witness>,
    /// Number of individual systems examined.
    pub checked: usize,
}

impl Verdict {
    pub fn passes(&self) -> bool {
        self.status.passes()
    }
}

fn jacobian_reason(k: usize, axes: usize) -> String {
    if k > axes {
        format!("{k} equations in {axes} torus variables with a nonempty zero set")
    } else {
        "the face system has torus zeros where its Jacobian drops rank".to_string()
    }
}

/// Whether `{g_1..g_p}` cuts out a smooth complete intersection: the
/// constraints and all maximal Jacobian minors have no common zero.
pub fn verify_s_smooth(gs: &[Polynomial], cfg: &Config) -> Result<Verdict> {
    if gs.is_empty() {
        return Ok(Verdict { status: Status::Vacuous, witnesses: vec![], checked: 0 });
    }
    let ring = gs[0].ring();
    let cols: Vec<usize> = (0..ring.nvars()).collect();
    let mut sys = gs.to_vec();
    sys.extend(jacobian_minors(gs, &cols, ring));
    let ok = contains_one(&sys, cfg).map_err(|e| e.with_context(|| "smoothness of S".into()))?;
    Ok(if ok {
        Verdict { status: Status::Certified, witnesses: vec![], checked: 1 }
    } else {
        Verdict {
            status: Status::Failed,
            witnesses: vec![Witness {
                condition: Condition::Constraints,
                tuple: None,
                reason: "the constraint gradients are dependent somewhere on S".into(),
            }],
            checked: 1,
        }
    })
}

fn torus_monomial(ring: &Ring) -> Polynomial {
    (0..ring.nvars()).fold(Polynomial::one(ring), |acc, i| &acc * &Polynomial::var(ring, i))
}

/// Moves polynomials supported on `axes` into the ring of those variables.
fn to_axes_ring(polys: &[Polynomial], axes: &[usize]) -> Result<(Ring, Vec<Polynomial>)> {
    let ring = polys[0].ring();
    let sub = ring.sub_ring(axes);
    let mut map = vec![None; ring.nvars()];
    for (pos, &i) in axes.iter().enumerate() {
        map[i] = Some(pos);
    }
    let moved = polys.iter().map(|p| p.remap(&sub, &map)).collect::<Result<_>>()?;
    Ok((sub, moved))
}

/// Smoothness of `{polys = 0}` inside the torus `(C*)^I`. An empty zero set
/// is vacuous; more equations than variables on a nonempty set fails.
pub fn check_tuple_smooth_on_torus(polys: &[Polynomial], axes: &[usize], cfg: &Config) -> Result<Status> {
    if polys.is_empty() {
        return Ok(Status::Certified);
    }
    let (ring, sys) = to_axes_ring(polys, axes)?;
    let h = torus_monomial(&ring);
    if saturation_contains_one(&sys, &h, cfg)? {
        return Ok(Status::Vacuous);
    }
    if sys.len() > axes.len() {
        return Ok(Status::Failed);
    }
    let cols: Vec<usize> = (0..ring.nvars()).collect();
    let mut with_minors = sys.clone();
    with_minors.extend(jacobian_minors(&sys, &cols, &ring));
    Ok(if saturation_contains_one(&with_minors, &h, cfg)? { Status::Certified } else { Status::Failed })
}

/// Index sets I with `f|_I ≢ 0`, each paired with every admissible J.
fn index_pairs(f: &Polynomial, gs: &[Polynomial]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = f.nvars();
    let vars: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    for axes in all_subsets(&vars).into_iter().filter(|s| !s.is_empty()) {
        if f.restrict_to_axes(&axes).is_zero() {
            continue;
        }
        let avail: Vec<usize> = (0..gs.len()).filter(|&j| !gs[j].restrict_to_axes(&axes).is_zero()).collect();
        for js in all_subsets(&avail) {
            out.push((axes.clone(), js));
        }
    }
    out
}

pub(crate) fn describe_tuple(t: &FaceTuple, ring: &Ring) -> String {
    let names: Vec<&str> = t.axes.iter().map(|&i| ring.name(i)).collect();
    let js: Vec<String> = t.constraints.iter().map(|j| (j + 1).to_string()).collect();
    let q: Vec<String> = t.witness_q.iter().map(crate::scalar::fmt_rational).collect();
    format!("I = {{{}}}, J = {{{}}}, q = ({})", names.join(", "), js.join(", "), q.join(", "))
}

type Checked = (Condition, FaceTuple, Status);

fn check_pair(f: &Polynomial, gs: &[Polynomial], axes: &[usize], js: &[usize], cfg: &Config) -> Result<Vec<Checked>> {
    let mut out = Vec::new();
    let ring = f.ring();
    if !js.is_empty() {
        for t in enumerate_face_tuples(f, gs, axes, js, TupleMode::NoF)? {
            let s = check_tuple_smooth_on_torus(&t.g_faces(gs), axes, cfg)
                .map_err(|e| e.with_context(|| describe_tuple(&t, ring)))?;
            out.push((Condition::ConstraintFaces, t, s));
        }
    }
    for t in enumerate_face_tuples(f, gs, axes, js, TupleMode::D0Negative)? {
        let mut polys = vec![t.f_face(f).expect("tuple carries a face of f")];
        polys.extend(t.g_faces(gs));
        let s = check_tuple_smooth_on_torus(&polys, axes, cfg).map_err(|e| e.with_context(|| describe_tuple(&t, ring)))?;
        out.push((Condition::FunctionFaces, t, s));
    }
    Ok(out)
}

/// Newton non-degeneracy at infinity of `f` restricted to `{g = 0}`.
pub fn check_nondegenerate_at_infinity(f: &Polynomial, gs: &[Polynomial], cfg: &Config) -> Result<Verdict> {
    let pairs = index_pairs(f, gs);
    let results: Vec<Vec<Checked>> =
        ordered(pairs.par_iter().map(|(axes, js)| check_pair(f, gs, axes, js, cfg)).collect())?;
    let checked: Vec<Checked> = results.into_iter().flatten().collect();
    let witnesses: Vec<Witness> = checked
        .iter()
        .filter(|(_, _, s)| *s == Status::Failed)
        .map(|(cond, t, _)| {
            let k = t.constraints.len() + usize::from(*cond == Condition::FunctionFaces);
            Witness { condition: *cond, tuple: Some(t.clone()), reason: jacobian_reason(k, t.axes.len()) }
        })
        .collect();
    let status = if witnesses.is_empty() { Status::Certified } else { Status::Failed };
    Ok(Verdict { status, witnesses, checked: checked.len() })
}

/// Where an eliminant came from.
#[derive(Clone, Debug, PartialEq)]
pub enum SourceKind {
    /// Critical values of f on S.
    CriticalValues,
    /// Values of a face function at torus critical points.
    Tuple(FaceTuple),
    /// The value 0, included unconditionally by the superset.
    Zero,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValueSource {
    pub kind: SourceKind,
    /// Squarefree, normalized eliminant in the value variable `c`.
    pub eliminant: UnivariatePolynomial,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Value {
    pub value: Complex64,
    pub exact: Option<Scalar>,
}

/// A finite set of values with per-source exact eliminants.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ValueSet {
    pub sources: Vec<ValueSource>,
    /// Deduplicated roots of all eliminants, sorted by real then imaginary part.
    pub values: Vec<Value>,
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(1.0)
}

impl ValueSet {
    pub fn from_sources(sources: Vec<ValueSource>, cfg: &Config) -> Result<Self> {
        let mut all = Vec::new();
        for s in &sources {
            for r in univariate_roots(&s.eliminant, cfg.root_tolerance, cfg.max_root_iterations)? {
                all.push(Value { value: r.value, exact: r.exact });
            }
        }
        all.sort_by(|a, b| a.value.re.total_cmp(&b.value.re).then(a.value.im.total_cmp(&b.value.im)));
        let mut values: Vec<Value> = Vec::new();
        for v in all {
            match values.iter_mut().find(|w| close(w.value, v.value, cfg.value_tolerance)) {
                Some(w) => {
                    if w.exact.is_none() && v.exact.is_some() {
                        *w = v;
                    }
                }
                None => values.push(v),
            }
        }
        Ok(ValueSet { sources, values })
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        self.values.iter().any(|v| close(v.value, z, tol))
    }

    /// Squarefree part of the product of the source eliminants.
    pub fn eliminant(&self) -> UnivariatePolynomial {
        let prod =
            self.sources.iter().fold(UniPoly::constant(Scalar::from_int(1)), |acc: UnivariatePolynomial, s| {
                acc.mul(&s.eliminant)
            });
        prod.squarefree().normalized()
    }

    /// The union of several sets, sources concatenated in order.
    pub fn union(sets: &[&ValueSet], cfg: &Config) -> Result<Self> {
        let sources = sets.iter().flat_map(|s| s.sources.iter().cloned()).collect();
        ValueSet::from_sources(sources, cfg)
    }

    pub fn zero() -> ValueSource {
        ValueSource { kind: SourceKind::Zero, eliminant: UniPoly::new(vec![Scalar::from_int(0), Scalar::from_int(1)]) }
    }
}

fn fresh(names: &[String], base: &str) -> String {
    let mut candidate = base.to_string();
    let mut k = 0;
    while names.iter().any(|n| n == &candidate) || candidate == crate::parse::IMAGINARY_UNIT {
        k += 1;
        candidate = format!("{base}_{k}");
    }
    candidate
}

/// The Lagrange system `{g_j} ∪ {∂f/∂x_i + Σ λ_j ∂g_j/∂x_i} ∪ {c - f}` over the
/// variables in `axes`, in a ring `x_I, λ_J, c`. Returns the ring, the
/// generators and the index of `c`.
fn lagrange_system(f: &Polynomial, gs: &[Polynomial], axes: &[usize]) -> Result<(Ring, Vec<Polynomial>, usize)> {
    let ring = f.ring();
    let mut names: Vec<String> = axes.iter().map(|&i| ring.name(i).to_string()).collect();
    for j in 0..gs.len() {
        let l = fresh(&names, &format!("lambda{}", j + 1));
        names.push(l);
    }
    let c = fresh(&names, "c");
    names.push(c);
    let big = Ring::new(&names)?;
    let mut map = vec![None; ring.nvars()];
    for (pos, &i) in axes.iter().enumerate() {
        map[i] = Some(pos);
    }
    let k = axes.len();
    let fb = f.remap(&big, &map)?;
    let gb: Vec<Polynomial> = gs.iter().map(|g| g.remap(&big, &map)).collect::<Result<_>>()?;
    let mut gens = gb.clone();
    for i in 0..k {
        let mut eq = fb.partial_derivative(i);
        for (j, g) in gb.iter().enumerate() {
            eq = &eq + &(&Polynomial::var(&big, k + j) * &g.partial_derivative(i));
        }
        gens.push(eq);
    }
    let ci = k + gs.len();
    gens.push(&Polynomial::var(&big, ci) - &fb);
    Ok((big, gens, ci))
}

/// Critical values K₀ of `f` on S via Lagrange multipliers.
pub fn critical_values_k0(f: &Polynomial, gs: &[Polynomial], cfg: &Config) -> Result<ValueSet> {
    let axes: Vec<usize> = (0..f.nvars()).collect();
    let (ring, gens, ci) = lagrange_system(f, gs, &axes)?;
    let e = eliminate_to_univariate(&ring, &gens, None, ci, cfg).map_err(|e| e.with_context(|| "K0".into()))?;
    let sources = match e {
        Eliminant::Unit => vec![],
        Eliminant::Zero => return Err(Error::NonFinite { what: "K0 projection".into() }),
        Eliminant::Poly(u) => vec![ValueSource { kind: SourceKind::CriticalValues, eliminant: u }],
    };
    ValueSet::from_sources(sources, cfg)
}

fn sigma_pair(f: &Polynomial, gs: &[Polynomial], axes: &[usize], js: &[usize], cfg: &Config) -> Result<Vec<ValueSource>> {
    let mut out = Vec::new();
    for t in enumerate_face_tuples(f, gs, axes, js, TupleMode::D0Zero)? {
        let ctx = || describe_tuple(&t, f.ring());
        let fd = t.f_face(f).expect("tuple carries a face of f");
        let (ring, gens, ci) = lagrange_system(&fd, &t.g_faces(gs), axes)?;
        let h = (0..axes.len()).fold(Polynomial::one(&ring), |acc, i| &acc * &Polynomial::var(&ring, i));
        match eliminate_to_univariate(&ring, &gens, Some(&h), ci, cfg).map_err(|e| e.with_context(ctx))? {
            Eliminant::Unit => {}
            Eliminant::Zero => return Err(Error::NonFinite { what: format!("Σ∞ contribution from {}", ctx()) }),
            Eliminant::Poly(u) => out.push(ValueSource { kind: SourceKind::Tuple(t.clone()), eliminant: u }),
        }
    }
    Ok(out)
}

/// Σ∞: values of face functions with `d = 0` at torus critical points of the
/// constrained face systems.
pub fn sigma_infinity(f: &Polynomial, gs: &[Polynomial], cfg: &Config) -> Result<ValueSet> {
    let pairs = index_pairs(f, gs);
    let parts: Vec<Vec<ValueSource>> =
        ordered(pairs.par_iter().map(|(axes, js)| sigma_pair(f, gs, axes, js, cfg)).collect())?;
    ValueSet::from_sources(parts.into_iter().flatten().collect(), cfg)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// f is convenient and non-degenerate: B = K₀.
    Exact,
    /// Non-degenerate, not convenient: B ⊆ K₀ ∪ Σ∞ ∪ {0}.
    Superset,
    /// Non-degeneracy failed; only K₀ is reported and no superset is claimed.
    NotCertified,
    /// S is not a smooth complete intersection; nothing is claimed.
    SingularConstraints,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Exact => "exact",
            Outcome::Superset => "superset",
            Outcome::NotCertified => "not-certified",
            Outcome::SingularConstraints => "singular-constraints",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BifurcationReport {
    pub smoothness: Verdict,
    pub convenient: bool,
    pub nondegeneracy: Option<Verdict>,
    pub k0: Option<ValueSet>,
    pub sigma_infinity: Option<ValueSet>,
    pub outcome: Outcome,
    /// The certified set: B itself when exact, a superset of B otherwise.
    pub values: Option<ValueSet>,
}

pub fn bifurcation_superset(f: &Polynomial, gs: &[Polynomial], cfg: &Config) -> Result<BifurcationReport> {
    let smoothness = verify_s_smooth(gs, cfg)?;
    let convenient = is_convenient(f);
    if !smoothness.passes() {
        return Ok(BifurcationReport {
            smoothness,
            convenient,
            nondegeneracy: None,
            k0: None,
            sigma_infinity: None,
            outcome: Outcome::SingularConstraints,
            values: None,
        });
    }
    let nondeg = check_nondegenerate_at_infinity(f, gs, cfg)?;
    let k0 = critical_values_k0(f, gs, cfg)?;
    let (outcome, sigma, values) = if !nondeg.passes() {
        (Outcome::NotCertified, None, None)
    } else if convenient {
        (Outcome::Exact, None, Some(k0.clone()))
    } else {
        let sigma = sigma_infinity(f, gs, cfg)?;
        let zero = ValueSet::from_sources(vec![ValueSet::zero()], cfg)?;
        let values = ValueSet::union(&[&k0, &sigma, &zero], cfg)?;
        (Outcome::Superset, Some(sigma), Some(values))
    };
    Ok(BifurcationReport {
        smoothness,
        convenient,
        nondegeneracy: Some(nondeg),
        k0: Some(k0),
        sigma_infinity: sigma,
        outcome,
        values,
    })
}
