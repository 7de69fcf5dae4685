//! JSON rendering of pipeline results. Exact data is printed in canonical
//! polynomial syntax; numerics carry 12 significant digits.

use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::{json, Map, Value as Json};

use crate::atypical::{BifurcationReport, Condition, SourceKind, ValueSet, Verdict};
use crate::family::{PolyhedronCheck, StabilityReport};
use crate::ideal::Eliminant;
use crate::newton::{FaceDescriptor, FaceTuple, NewtonPolyhedron};
use crate::poly::{ExponentVector, Polynomial, Ring};
use crate::probe::ProbeEntry;
use crate::scalar::fmt_rational;

pub const FORMAT_VERSION: u32 = 1;

/// `%.12g`-style formatting.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("exponent");
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x))
    } else {
        let m = trim_zeros(mantissa);
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Complex number in polynomial syntax; parts below `1e-12 · max(1, |z|)` are
/// printed as zero.
pub fn fmt_complex(z: Complex64) -> String {
    let tiny = 1e-12 * z.norm().max(1.0);
    let re = if z.re.abs() <= tiny { 0.0 } else { z.re };
    let im = if z.im.abs() <= tiny { 0.0 } else { z.im };
    let imag = |v: f64| if v == 1.0 { "I".to_string() } else { format!("{}*I", fmt_f64(v)) };
    match (re == 0.0, im == 0.0) {
        (_, true) => fmt_f64(re),
        (true, false) => {
            if im == -1.0 {
                "-I".into()
            } else {
                imag(im)
            }
        }
        (false, false) => {
            let sign = if im < 0.0 { '-' } else { '+' };
            format!("{} {sign} {}", fmt_f64(re), imag(im.abs()))
        }
    }
}

fn rationals(v: &[BigRational]) -> Json {
    Json::from(v.iter().map(fmt_rational).collect::<Vec<_>>())
}

fn exponents(v: &[ExponentVector]) -> Json {
    Json::from(v.iter().map(|e| e.entries().to_vec()).collect::<Vec<_>>())
}

fn one_based(v: &[usize]) -> Json {
    Json::from(v.iter().map(|i| i + 1).collect::<Vec<_>>())
}

fn face(p: &Polynomial, d: &FaceDescriptor) -> Json {
    json!({
        "members": exponents(&d.members),
        "d": fmt_rational(&d.value_d),
        "polynomial": crate::newton::face_part(p, d).to_string(),
    })
}

pub fn tuple(t: &FaceTuple, f: &Polynomial, gs: &[Polynomial]) -> Json {
    let ring = f.ring();
    let mut m = Map::new();
    m.insert("axes".into(), one_based(&t.axes));
    m.insert("variables".into(), Json::from(t.axes.iter().map(|&i| ring.name(i)).collect::<Vec<_>>()));
    m.insert("constraints".into(), one_based(&t.constraints));
    m.insert("q".into(), rationals(&t.witness_q));
    if let Some(d0) = &t.delta0 {
        m.insert("f_face".into(), face(f, d0));
    }
    let g: Vec<Json> = t
        .constraints
        .iter()
        .zip(&t.deltas)
        .map(|(&j, d)| {
            let mut o = face(&gs[j], d);
            o.as_object_mut().unwrap().insert("constraint".into(), Json::from(j + 1));
            o
        })
        .collect();
    m.insert("g_faces".into(), Json::from(g));
    Json::Object(m)
}

fn condition(c: Condition) -> &'static str {
    match c {
        Condition::Constraints => "constraints",
        Condition::ConstraintFaces => "constraint-faces",
        Condition::FunctionFaces => "function-faces",
    }
}

pub fn verdict(v: &Verdict, f: &Polynomial, gs: &[Polynomial]) -> Json {
    let witnesses: Vec<Json> = v
        .witnesses
        .iter()
        .map(|w| {
            let mut o = Map::new();
            o.insert("condition".into(), condition(w.condition).into());
            o.insert("reason".into(), w.reason.clone().into());
            if let Some(t) = &w.tuple {
                o.insert("tuple".into(), tuple(t, f, gs));
            }
            Json::Object(o)
        })
        .collect();
    json!({ "status": v.status.as_str(), "checked": v.checked, "witnesses": witnesses })
}

fn value_string(exact: &Option<crate::scalar::Scalar>, z: Complex64) -> String {
    match exact {
        Some(e) => e.to_string(),
        None => fmt_complex(z),
    }
}

pub fn value_set(v: &ValueSet, f: &Polynomial, gs: &[Polynomial]) -> Json {
    let values: Vec<Json> = v
        .values
        .iter()
        .map(|x| {
            json!({
                "exact": x.exact.as_ref().map(|e| e.to_string()),
                "numeric": fmt_complex(x.value),
            })
        })
        .collect();
    let sources: Vec<Json> = v
        .sources
        .iter()
        .map(|s| {
            let mut o = Map::new();
            match &s.kind {
                SourceKind::CriticalValues => {
                    o.insert("kind".into(), "critical-values".into());
                }
                SourceKind::Zero => {
                    o.insert("kind".into(), "zero".into());
                }
                SourceKind::Tuple(t) => {
                    o.insert("kind".into(), "face-tuple".into());
                    o.insert("tuple".into(), tuple(t, f, gs));
                }
            }
            o.insert("eliminant".into(), s.eliminant.display_in("c").into());
            Json::Object(o)
        })
        .collect();
    json!({
        "values": values,
        "eliminant": v.eliminant().display_in("c"),
        "sources": sources,
    })
}

/// Value strings of a set: exact where known, numeric otherwise.
pub fn value_list(v: &ValueSet) -> Json {
    Json::from(v.values.iter().map(|x| value_string(&x.exact, x.value)).collect::<Vec<_>>())
}

pub fn polyhedron(name: &str, p: &Polynomial, np: &NewtonPolyhedron) -> Json {
    let faces: Vec<Json> = np
        .faces
        .iter()
        .map(|fd| json!({ "members": exponents(&fd.members), "q": rationals(&fd.witness_q), "d": fmt_rational(&fd.value_d) }))
        .collect();
    json!({
        "polynomial": name,
        "expression": p.to_string(),
        "axes": one_based(&np.axes),
        "points": exponents(&np.points),
        "vertices": exponents(&np.vertices),
        "faces": faces,
    })
}

pub fn bifurcation(r: &BifurcationReport, f: &Polynomial, gs: &[Polynomial]) -> Map<String, Json> {
    let mut m = Map::new();
    m.insert("smoothness".into(), verdict(&r.smoothness, f, gs));
    m.insert("convenient".into(), r.convenient.into());
    m.insert("nondegeneracy".into(), r.nondegeneracy.as_ref().map_or(Json::Null, |v| verdict(v, f, gs)));
    m.insert("k0".into(), r.k0.as_ref().map_or(Json::Null, |v| value_set(v, f, gs)));
    m.insert("sigma_infinity".into(), r.sigma_infinity.as_ref().map_or(Json::Null, |v| value_set(v, f, gs)));
    m.insert("outcome".into(), r.outcome.as_str().into());
    let set = |v: &Option<ValueSet>| match v {
        Some(v) => {
            let items: Vec<String> = v.values.iter().map(|x| value_string(&x.exact, x.value)).collect();
            format!("{{{}}}", items.join(", "))
        }
        None => "{}".into(),
    };
    let claim = match r.outcome {
        crate::atypical::Outcome::Exact => format!("B = K0 = {}", set(&r.values)),
        crate::atypical::Outcome::Superset => format!("B ⊆ K0 ∪ Σ∞ ∪ {{0}} = {}", set(&r.values)),
        crate::atypical::Outcome::NotCertified => "superset not certified".into(),
        crate::atypical::Outcome::SingularConstraints => "S is not a smooth complete intersection".into(),
    };
    m.insert("claim".into(), claim.into());
    m.insert("superset".into(), r.values.as_ref().map_or(Json::Null, value_list));
    m.insert("values".into(), r.values.as_ref().map_or(Json::Null, |v| value_set(v, f, gs)));
    m
}

fn polyhedron_check(c: &PolyhedronCheck) -> Json {
    let failures: Vec<Json> = c
        .failures
        .iter()
        .map(|x| {
            json!({
                "vertex": x.vertex.entries().to_vec(),
                "interval": [fmt_rational(&x.interval.0), fmt_rational(&x.interval.1)],
            })
        })
        .collect();
    json!({ "status": c.status.as_str(), "vertices": exponents(&c.vertices), "failures": failures })
}

fn eliminant(e: &Eliminant, var: &str) -> Json {
    match e {
        Eliminant::Unit => "1".into(),
        Eliminant::Zero => "0".into(),
        Eliminant::Poly(u) => u.display_in(var).into(),
    }
}

pub fn stability(r: &StabilityReport, f: &Polynomial, gs: &[Polynomial], t: &str) -> Map<String, Json> {
    let mut m = Map::new();
    m.insert("polyhedron".into(), polyhedron_check(&r.polyhedron));
    let nondeg = r.nondegeneracy.as_ref().map_or(Json::Null, |v| {
        let mut o = verdict(&v.verdict, f, gs).as_object().cloned().unwrap();
        let tuples: Vec<Json> = v
            .tuples
            .iter()
            .map(|x| {
                json!({
                    "condition": condition(x.condition),
                    "status": x.status.as_str(),
                    "eliminant": eliminant(&x.eliminant, t),
                    "interval": x.interval.as_ref().map(|(a, b)| vec![fmt_rational(a), fmt_rational(b)]),
                    "tuple": tuple(&x.tuple, f, gs),
                })
            })
            .collect();
        o.insert("tuples".into(), tuples.into());
        Json::Object(o)
    });
    m.insert("nondegeneracy".into(), nondeg);
    m.insert("stable".into(), r.stable.into());
    let claim = if r.stable { "global monodromies of all members are isomorphic" } else { "no stability claim" };
    m.insert("claim".into(), claim.into());
    let samples: Vec<Json> = r
        .samples
        .iter()
        .map(|s| {
            json!({
                "t": fmt_rational(&s.t),
                "k0": value_list(&s.k0),
                "sigma_infinity": s.sigma_infinity.as_ref().map(value_list),
                "radius": fmt_f64(s.radius),
            })
        })
        .collect();
    m.insert("samples".into(), samples.into());
    m.insert("radius".into(), fmt_f64(r.radius).into());
    m
}

pub fn probe(entries: &[ProbeEntry]) -> Json {
    let point = |p: &[Complex64]| Json::from(p.iter().map(|z| fmt_complex(*z)).collect::<Vec<_>>());
    Json::from(
        entries
            .iter()
            .map(|e| match e {
                ProbeEntry::Sample(s) => json!({
                    "point": point(&s.point),
                    "f": fmt_complex(s.f_value),
                    "nu": fmt_f64(s.nu),
                    "product": fmt_f64(s.product),
                }),
                ProbeEntry::Rejected { point: p, constraint, residual } => json!({
                    "point": point(p),
                    "rejected": { "constraint": constraint + 1, "residual": fmt_f64(*residual) },
                }),
            })
            .collect::<Vec<_>>(),
    )
}

pub fn ring_names(r: &Ring) -> Json {
    Json::from(r.names().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_f64(-0.25), "-0.25");
        assert_eq!(fmt_f64(1.0), "1");
        assert_eq!(fmt_f64(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_f64(2.5e-4), "0.00025");
        assert_eq!(fmt_f64(2.5e-7), "2.5e-07");
        assert_eq!(fmt_f64(123456789012345.0), "1.23456789012e+14");
    }

    #[test]
    fn complex_formatting() {
        assert_eq!(fmt_complex(Complex64::new(0.0, 1.0)), "I");
        assert_eq!(fmt_complex(Complex64::new(0.0, -1.0)), "-I");
        assert_eq!(fmt_complex(Complex64::new(1.5, -2.0)), "1.5 - 2*I");
        assert_eq!(fmt_complex(Complex64::new(-0.25, 1e-17)), "-0.25");
    }
}
