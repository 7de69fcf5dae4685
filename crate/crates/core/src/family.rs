//! One-parameter families `f_t`, `t ∈ [0,1]`, with real rational polynomial
//! coefficients in `t`: constancy of the Newton polyhedron, non-degeneracy for
//! every parameter value, and sampled diagnostics.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::atypical::{
    check_tuple_smooth_on_torus, critical_values_k0, describe_tuple, sigma_infinity, Condition, Status, ValueSet,
    Verdict, Witness,
};
use crate::config::Config;
use crate::error::{ordered, Error, Result};
use crate::ideal::{eliminate_to_univariate, groebner_in, isolate_root, real_root_part, sturm_count, Eliminant, MonomialOrder};
use crate::newton::{enumerate_face_tuples, newton_polyhedron, FaceTuple, TupleMode};
use crate::poly::{all_subsets, jacobian_minors, ExponentVector, Polynomial, Ring};
use crate::scalar::Scalar;
use crate::univariate::{RealPolynomial, UniPoly};

/// `f(x, t) = Σ_α c_α(t) x^α` with real rational `c_α`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyPolynomial {
    x_ring: Ring,
    /// The family as one polynomial in `x_1..x_n, t` (t last).
    full: Polynomial,
    terms: BTreeMap<ExponentVector, RealPolynomial>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl FamilyPolynomial {
    /// Reads a polynomial whose variable `t` is the parameter.
    pub fn new(p: &Polynomial, t: usize) -> Result<Self> {
        let ring = p.ring();
        if t >= ring.nvars() {
            return Err(Error::Instance("family parameter is not a ring variable".into()));
        }
        if !p.is_real() {
            return Err(Error::Instance("family coefficients must be real rational polynomials in the parameter".into()));
        }
        let xs: Vec<usize> = (0..ring.nvars()).filter(|&i| i != t).collect();
        let x_ring = ring.sub_ring(&xs);
        let mut order = xs.clone();
        order.push(t);
        let full_ring = ring.sub_ring(&order);
        let n = xs.len();
        let map: Vec<Option<usize>> = (0..ring.nvars())
            .map(|i| Some(if i == t { n } else if i < t { i } else { i - 1 }))
            .collect();
        let full = p.remap(&full_ring, &map)?;
        let mut coeffs: BTreeMap<ExponentVector, Vec<BigRational>> = BTreeMap::new();
        for (e, c) in full.terms() {
            let x = ExponentVector::from_slice(&e.entries()[..n]);
            let k = e.entries()[n] as usize;
            let v = coeffs.entry(x).or_default();
            if v.len() <= k {
                v.resize(k + 1, BigRational::zero());
            }
            v[k] = c.re.clone();
        }
        let terms = coeffs.into_iter().map(|(e, v)| (e, UniPoly::new(v))).collect();
        Ok(FamilyPolynomial { x_ring, full, terms })
    }

    pub fn x_ring(&self) -> &Ring {
        &self.x_ring
    }

    pub fn parameter_name(&self) -> &str {
        self.full.ring().name(self.x_ring.nvars())
    }

    pub fn as_polynomial(&self) -> &Polynomial {
        &self.full
    }

    pub fn coefficients(&self) -> &BTreeMap<ExponentVector, RealPolynomial> {
        &self.terms
    }

    /// `f_t` for a fixed rational `t`.
    pub fn at(&self, t: &BigRational) -> Polynomial {
        Polynomial::from_terms(&self.x_ring, self.terms.iter().map(|(e, c)| (e.clone(), Scalar::real(c.eval(t)))))
    }

    /// The support with every coefficient set to 1.
    pub fn generic(&self) -> Polynomial {
        Polynomial::from_terms(&self.x_ring, self.terms.keys().map(|e| (e.clone(), Scalar::from_int(1))))
    }

    /// `f_Δ` with its `t`-dependence, in the ring `x_1..x_n, t`.
    pub fn face(&self, members: &[ExponentVector]) -> Polynomial {
        let n = self.x_ring.nvars();
        Polynomial::from_terms(
            self.full.ring(),
            self.full
                .terms()
                .filter(|(e, _)| members.iter().any(|m| m.entries() == &e.entries()[..n]))
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }
}

/// A coefficient of the polyhedron that vanishes somewhere on `[0,1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexFailure {
    pub vertex: ExponentVector,
    /// Rational interval inside `[0,1]` holding exactly one root.
    pub interval: (BigRational, BigRational),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolyhedronCheck {
    pub status: Status,
    pub vertices: Vec<ExponentVector>,
    pub failures: Vec<VertexFailure>,
}

fn unit_interval() -> (BigRational, BigRational) {
    (BigRational::zero(), BigRational::one())
}

fn isolation_width() -> BigRational {
    rat(1, 1024)
}

/// Γ(f_t) is independent of t iff no vertex coefficient vanishes on `[0,1]`;
/// other support points may vanish without moving the hull.
pub fn constant_polyhedron_check(family: &FamilyPolynomial) -> Result<PolyhedronCheck> {
    let generic = family.generic();
    if generic.is_zero() {
        return Err(Error::Instance("the family is identically zero".into()));
    }
    let all: Vec<usize> = (0..generic.nvars()).collect();
    let poly = newton_polyhedron(&generic, &all)?;
    let (a, b) = unit_interval();
    let mut failures = Vec::new();
    for v in &poly.vertices {
        let c = &family.terms[v];
        if sturm_count(c, &a, &b) > 0 {
            let interval = isolate_root(c, &a, &b, &isolation_width()).expect("counted root");
            failures.push(VertexFailure { vertex: v.clone(), interval });
        }
    }
    let status = if failures.is_empty() { Status::Certified } else { Status::Failed };
    Ok(PolyhedronCheck { status, vertices: poly.vertices, failures })
}

/// Outcome of eliminating everything but `t` from one degeneracy system.
#[derive(Clone, Debug, PartialEq)]
pub struct TupleEliminant {
    pub condition: Condition,
    pub tuple: FaceTuple,
    pub eliminant: Eliminant,
    pub status: Status,
    /// Isolating interval of a bad parameter value, when one exists.
    pub interval: Option<(BigRational, BigRational)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyVerdict {
    pub verdict: Verdict,
    pub tuples: Vec<TupleEliminant>,
}

/// Parameter values checked when elimination to `t` is inconclusive.
pub fn fallback_samples() -> Vec<BigRational> {
    vec![rat(0, 1), rat(1, 4), rat(1, 2), rat(3, 4), rat(1, 1)]
}

fn substitute_t(p: &Polynomial, n: usize, t: &BigRational) -> Polynomial {
    p.substitute(n, &Scalar::real(t.clone()))
}

/// Face tuple checked for every t: face polynomials live in `x, t`.
fn check_family_tuple(
    family: &FamilyPolynomial,
    gs: &[Polynomial],
    cond: Condition,
    tuple: FaceTuple,
    cfg: &Config,
) -> Result<TupleEliminant> {
    let n = family.x_ring.nvars();
    let full_ring = family.full.ring();
    let to_full: Vec<Option<usize>> = (0..n).map(Some).collect();
    let mut polys: Vec<Polynomial> = Vec::new();
    if cond == Condition::FunctionFaces {
        polys.push(family.face(&tuple.delta0.as_ref().expect("face of f").members));
    }
    for g in tuple.g_faces(gs) {
        polys.push(g.remap(full_ring, &to_full)?);
    }
    let ctx = || describe_tuple(&tuple, &family.x_ring);

    // Ring x_I, t.
    let axes = &tuple.axes;
    let mut idx: Vec<usize> = axes.clone();
    idx.push(n);
    let ring = full_ring.sub_ring(&idx);
    let mut map = vec![None; n + 1];
    for (pos, &i) in idx.iter().enumerate() {
        map[i] = Some(pos);
    }
    let sys: Vec<Polynomial> = polys.iter().map(|p| p.remap(&ring, &map)).collect::<Result<_>>()?;
    let k = sys.len();
    let cols: Vec<usize> = (0..axes.len()).collect();
    let mut gens = sys.clone();
    if k <= axes.len() {
        gens.extend(jacobian_minors(&sys, &cols, &ring));
    }
    let h = cols.iter().fold(Polynomial::one(&ring), |acc, &i| &acc * &Polynomial::var(&ring, i));
    let eliminant =
        eliminate_to_univariate(&ring, &gens, Some(&h), axes.len(), cfg).map_err(|e| e.with_context(ctx))?;

    let (a, b) = unit_interval();
    let (status, interval) = match &eliminant {
        Eliminant::Unit => (Status::Certified, None),
        Eliminant::Poly(u) => {
            let real = real_root_part(u);
            if real.degree().unwrap_or(0) == 0 || sturm_count(&real, &a, &b) == 0 {
                (Status::Certified, None)
            } else {
                (Status::Failed, isolate_root(&real, &a, &b, &isolation_width()))
            }
        }
        Eliminant::Zero => {
            let mut status = Status::SampledOnly;
            let mut interval = None;
            for t in fallback_samples() {
                let at: Vec<Polynomial> = polys.iter().map(|p| substitute_t(p, n, &t)).collect();
                let s = check_tuple_smooth_on_torus(&at, axes, cfg).map_err(|e| e.with_context(ctx))?;
                if s == Status::Failed {
                    status = Status::Failed;
                    interval = Some((t.clone(), t));
                    break;
                }
            }
            (status, interval)
        }
    };
    Ok(TupleEliminant { condition: cond, tuple, eliminant, status, interval })
}

/// Non-degeneracy of `f_t` on S for every `t ∈ [0,1]`, decided by
/// eliminating to `t` and counting real roots on the interval.
pub fn family_nondegeneracy_check(family: &FamilyPolynomial, gs: &[Polynomial], cfg: &Config) -> Result<FamilyVerdict> {
    let generic = family.generic();
    let n = generic.nvars();
    let vars: Vec<usize> = (0..n).collect();
    let mut jobs: Vec<(Condition, FaceTuple)> = Vec::new();
    for axes in all_subsets(&vars).into_iter().filter(|s| !s.is_empty()) {
        if generic.restrict_to_axes(&axes).is_zero() {
            continue;
        }
        let avail: Vec<usize> = (0..gs.len()).filter(|&j| !gs[j].restrict_to_axes(&axes).is_zero()).collect();
        for js in all_subsets(&avail) {
            if !js.is_empty() {
                for t in enumerate_face_tuples(&generic, gs, &axes, &js, TupleMode::NoF)? {
                    jobs.push((Condition::ConstraintFaces, t));
                }
            }
            for t in enumerate_face_tuples(&generic, gs, &axes, &js, TupleMode::D0Negative)? {
                jobs.push((Condition::FunctionFaces, t));
            }
        }
    }
    let tuples: Vec<TupleEliminant> =
        ordered(jobs.into_par_iter().map(|(cond, t)| check_family_tuple(family, gs, cond, t, cfg)).collect())?;
    let witnesses: Vec<Witness> = tuples
        .iter()
        .filter(|r| r.status != Status::Certified)
        .map(|r| Witness {
            condition: r.condition,
            tuple: Some(r.tuple.clone()),
            reason: match r.status {
                Status::Failed => "degenerate for some parameter value in [0, 1]".into(),
                _ => "elimination to the parameter was inconclusive; only sampled values were checked".into(),
            },
        })
        .collect();
    let status = if tuples.iter().any(|r| r.status == Status::Failed) {
        Status::Failed
    } else if tuples.iter().any(|r| r.status == Status::SampledOnly) {
        Status::SampledOnly
    } else {
        Status::Certified
    };
    Ok(FamilyVerdict { verdict: Verdict { status, witnesses, checked: tuples.len() }, tuples })
}

/// K₀ and Σ∞ of one family member.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleDiagnostics {
    pub t: BigRational,
    pub k0: ValueSet,
    /// `None` when Σ∞ is not finite at this parameter value.
    pub sigma_infinity: Option<ValueSet>,
    /// Largest modulus among the sampled values (0 when there are none).
    pub radius: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityReport {
    pub polyhedron: PolyhedronCheck,
    pub nondegeneracy: Option<FamilyVerdict>,
    /// True only when both hypotheses are certified.
    pub stable: bool,
    pub samples: Vec<SampleDiagnostics>,
    /// Maximum of the per-sample radii.
    pub radius: f64,
}

/// Errors when `f_t` is constant on S.
fn check_nonconstant(ft: &Polynomial, gs: &[Polynomial], t: &BigRational, cfg: &Config) -> Result<()> {
    let nf = if gs.is_empty() {
        ft.clone()
    } else {
        groebner_in(ft.ring(), gs, MonomialOrder::GRevLex, cfg)?.normal_form(ft)
    };
    if nf.as_constant().is_some() || nf.is_zero() {
        return Err(Error::ConstantFamily { t: crate::scalar::fmt_rational(t) });
    }
    Ok(())
}

fn sample(family: &FamilyPolynomial, gs: &[Polynomial], t: &BigRational, cfg: &Config) -> Result<SampleDiagnostics> {
    let ft = family.at(t);
    check_nonconstant(&ft, gs, t, cfg)?;
    let k0 = critical_values_k0(&ft, gs, cfg)?;
    let sigma = match sigma_infinity(&ft, gs, cfg) {
        Ok(s) => Some(s),
        Err(Error::NonFinite { .. }) => None,
        Err(e) => return Err(e),
    };
    let radius = k0
        .values
        .iter()
        .chain(sigma.iter().flat_map(|s| s.values.iter()))
        .map(|v| v.value.norm())
        .fold(0.0, f64::max);
    Ok(SampleDiagnostics { t: t.clone(), k0, sigma_infinity: sigma, radius })
}

pub fn default_samples() -> Vec<BigRational> {
    vec![rat(0, 1), rat(1, 2), rat(1, 1)]
}

/// Checks both hypotheses of the monodromy-stability theorem and samples
/// the value sets along the family.
pub fn stability_report(
    family: &FamilyPolynomial,
    gs: &[Polynomial],
    samples: &[BigRational],
    cfg: &Config,
) -> Result<StabilityReport> {
    for g in gs {
        if g.ring() != family.x_ring() {
            return Err(Error::Instance("constraints must not involve the family parameter".into()));
        }
    }
    let polyhedron = constant_polyhedron_check(family)?;
    let nondegeneracy =
        if polyhedron.status.passes() { Some(family_nondegeneracy_check(family, gs, cfg)?) } else { None };
    let stable = polyhedron.status == Status::Certified
        && nondegeneracy.as_ref().is_some_and(|v| v.verdict.status == Status::Certified);
    let samples: Vec<SampleDiagnostics> =
        ordered(samples.par_iter().map(|t| sample(family, gs, t, cfg)).collect())?;
    let radius = samples.iter().map(|s| s.radius).fold(0.0, f64::max);
    Ok(StabilityReport { polyhedron, nondegeneracy, stable, samples, radius })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn fam(s: &str) -> FamilyPolynomial {
        let r = Ring::new(&["x", "y", "t"]).unwrap();
        FamilyPolynomial::new(&parse_polynomial(s, &r).unwrap(), 2).unwrap()
    }

    #[test]
    fn coefficients_split_by_monomial() {
        let f = fam("x + (1 + t)*x^2*y");
        assert_eq!(f.coefficients().len(), 2);
        assert_eq!(f.at(&rat(1, 2)).to_string(), "3/2*x^2*y + x");
        assert_eq!(f.parameter_name(), "t");
    }

    #[test]
    fn polyhedron_constancy() {
        assert_eq!(constant_polyhedron_check(&fam("x + (1 + t)*x^2*y")).unwrap().status, Status::Certified);
        let bad = constant_polyhedron_check(&fam("x + (1 - 2*t)*x^2*y")).unwrap();
        assert_eq!(bad.status, Status::Failed);
        let fail = &bad.failures[0];
        assert_eq!(fail.vertex, ExponentVector::from_slice(&[2, 1]));
        assert!(fail.interval.0 <= rat(1, 2) && rat(1, 2) <= fail.interval.1);
        assert_eq!(constant_polyhedron_check(&fam("x")).unwrap().status, Status::Certified);
    }

    #[test]
    fn family_nondegeneracy() {
        let c = Config::default();
        let v = family_nondegeneracy_check(&fam("x + (1 + t)*x^2*y"), &[], &c).unwrap();
        assert_eq!(v.verdict.status, Status::Certified);
        let v = family_nondegeneracy_check(&fam("(x + y)^2"), &[], &c).unwrap();
        assert_eq!(v.verdict.status, Status::Failed);
        let v = family_nondegeneracy_check(&fam("x + x^2*y"), &[], &c).unwrap();
        assert_eq!(v.verdict.status, Status::Certified);
        assert!(v.tuples.iter().all(|t| t.eliminant == Eliminant::Unit));
    }

    #[test]
    fn stability_examples() {
        let c = Config::default();
        let r = stability_report(&fam("x + (1 + t)*x^2*y"), &[], &default_samples(), &c).unwrap();
        assert!(r.stable);
        assert_eq!(r.radius, 0.0);
        let r = stability_report(&fam("x + (1 - 2*t)*x^2*y"), &[], &default_samples(), &c).unwrap();
        assert!(!r.stable);
        assert!(r.nondegeneracy.is_none());
        let r = stability_report(&fam("x^2*y^2 - x*y"), &[], &default_samples(), &c).unwrap();
        assert!(r.stable);
        assert!((r.radius - 0.25).abs() < 1e-12);
    }

    #[test]
    fn constant_member_is_an_error() {
        let c = Config::default();
        let err = stability_report(&fam("t*x"), &[], &default_samples(), &c).unwrap_err();
        assert!(matches!(err, Error::ConstantFamily { .. }));
    }
}
