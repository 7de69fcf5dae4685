//! Gröbner bases over Q(i), elimination, saturation and univariate root
//! extraction.
//!
//! Buchberger's algorithm with the normal selection strategy (smallest lcm
//! first, ties by pair index), Buchberger's product criterion and the chain
//! criterion. Every basis returned is reduced and monic.

mod dpoly;
pub mod roots;
pub mod sturm;

use std::collections::{BTreeSet, HashSet};

use num_traits::One;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::poly::{Polynomial, Ring};
use crate::scalar::Scalar;
use crate::univariate::UnivariatePolynomial;
use dpoly::{coprime, divides, lcm, DPoly};

pub use roots::{univariate_roots, Root};
pub use sturm::{isolate_root, real_root_part, sturm_count};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    GRevLex,
    /// Elimination order: graded reverse lex on the first `k` variables,
    /// ties broken by graded reverse lex on the rest.
    Block(usize),
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    generators: Vec<Polynomial>,
    internal: Vec<DPoly>,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Always true: the engine only hands out reduced bases.
    pub fn is_reduced(&self) -> bool {
        true
    }

    pub fn is_unit(&self) -> bool {
        self.internal.len() == 1 && self.internal[0].is_constant()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.internal.is_empty()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        assert_eq!(p.ring(), &self.ring, "normal form across rings");
        DPoly::from_poly(p, self.order).reduce(&self.internal, self.order).to_poly(&self.ring)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Replays the Buchberger certificate: every S-polynomial reduces to zero.
    pub fn verify_s_pairs(&self) -> bool {
        let g = &self.internal;
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                if !g[i].s_polynomial(&g[j], self.order).reduce(g, self.order).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Normal form of `p` against a reduced basis.
pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    gb.normal_form(p)
}

pub fn groebner(gens: &[Polynomial], order: MonomialOrder, cfg: &Config) -> Result<GroebnerBasis> {
    let ring = match gens.first() {
        Some(g) => g.ring().clone(),
        None => {
            return Err(Error::Internal("groebner() needs the ring; use groebner_in".into()));
        }
    };
    groebner_in(&ring, gens, order, cfg)
}

pub fn groebner_in(ring: &Ring, gens: &[Polynomial], order: MonomialOrder, cfg: &Config) -> Result<GroebnerBasis> {
    for g in gens {
        assert_eq!(g.ring(), ring, "all generators must live in one ring");
    }
    let input: Vec<DPoly> = gens.iter().map(|g| DPoly::from_poly(g, order)).filter(|d| !d.is_zero()).collect();
    let internal = buchberger(input, order, cfg.max_pairs)?;
    let generators = internal.iter().map(|d| d.to_poly(ring)).collect();
    Ok(GroebnerBasis { ring: ring.clone(), order, generators, internal })
}

fn unit_basis(n: usize) -> Vec<DPoly> {
    vec![DPoly { terms: vec![(smallvec::SmallVec::from_elem(0, n), Scalar::one())] }]
}

fn buchberger(input: Vec<DPoly>, order: MonomialOrder, max_pairs: usize) -> Result<Vec<DPoly>> {
    let nvars = match input.first() {
        Some(p) => p.lm().len(),
        None => return Ok(Vec::new()),
    };
    let mut basis: Vec<DPoly> = Vec::new();
    let mut queue: BTreeSet<(Vec<i64>, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut created = 0usize;

    let mut add = |basis: &mut Vec<DPoly>,
                   queue: &mut BTreeSet<(Vec<i64>, usize, usize)>,
                   pending: &mut HashSet<(usize, usize)>,
                   mut p: DPoly|
     -> Result<bool> {
        p.make_monic();
        if p.is_constant() {
            return Ok(true);
        }
        let k = basis.len();
        for i in 0..k {
            let key = order.sort_key(&lcm(basis[i].lm(), p.lm()));
            queue.insert((key, i, k));
            pending.insert((i, k));
            created += 1;
            if created > max_pairs {
                return Err(Error::BudgetExceeded { pairs: created, limit: max_pairs, context: None });
            }
        }
        basis.push(p);
        Ok(false)
    };

    for p in input {
        let r = p.reduce(&basis, order);
        if r.is_zero() {
            continue;
        }
        if add(&mut basis, &mut queue, &mut pending, r)? {
            return Ok(unit_basis(nvars));
        }
    }

    while let Some(entry) = queue.pop_first() {
        let (_, i, j) = entry;
        pending.remove(&(i, j));
        let (li, lj) = (basis[i].lm().clone(), basis[j].lm().clone());
        if coprime(&li, &lj) {
            continue;
        }
        let l = lcm(&li, &lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(basis[k].lm(), &l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = basis[i].s_polynomial(&basis[j], order);
        let r = s.reduce(&basis, order);
        if r.is_zero() {
            continue;
        }
        if add(&mut basis, &mut queue, &mut pending, r)? {
            return Ok(unit_basis(nvars));
        }
    }

    Ok(interreduce(basis, order))
}

/// Minimal, tail-reduced, monic basis, sorted by leading monomial.
fn interreduce(basis: Vec<DPoly>, order: MonomialOrder) -> Vec<DPoly> {
    let mut minimal: Vec<DPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            j != i && divides(h.lm(), g.lm()) && (h.lm() != g.lm() || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<DPoly> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let mut r = minimal[i].reduce(&others, order);
        r.make_monic();
        out.push(r);
    }
    out.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    out
}

/// Whether `1` lies in the ideal generated by `gens` (false for no generators).
pub fn contains_one(gens: &[Polynomial], cfg: &Config) -> Result<bool> {
    match gens.first() {
        None => Ok(false),
        Some(g) => Ok(groebner_in(&g.ring().clone(), gens, MonomialOrder::GRevLex, cfg)?.is_unit()),
    }
}

/// Adjoins a fresh variable `u` in front of the ring together with `1 - u·h`.
fn rabinowitsch(gens: &[Polynomial], h: &Polynomial) -> Result<(Ring, Vec<Polynomial>)> {
    let ring = h.ring();
    let u = ring.fresh_name("u");
    let mut names = vec![u];
    names.extend(ring.names().iter().cloned());
    let big = Ring::new(&names)?;
    let map: Vec<Option<usize>> = (0..ring.nvars()).map(|i| Some(i + 1)).collect();
    let mut out = Vec::with_capacity(gens.len() + 1);
    for g in gens {
        out.push(g.remap(&big, &map)?);
    }
    let uh = &Polynomial::var(&big, 0) * &h.remap(&big, &map)?;
    out.push(&Polynomial::one(&big) - &uh);
    Ok((big, out))
}

/// Whether the saturation `(gens : h^∞)` is the unit ideal, i.e. the zero set
/// of `gens` lies inside `{h = 0}`.
pub fn saturation_contains_one(gens: &[Polynomial], h: &Polynomial, cfg: &Config) -> Result<bool> {
    let (_, sys) = rabinowitsch(gens, h)?;
    contains_one(&sys, cfg)
}

/// Generators of `(gens : h^∞)` in the original ring.
pub fn saturate(gens: &[Polynomial], h: &Polynomial, cfg: &Config) -> Result<Vec<Polynomial>> {
    assert!(!h.is_zero(), "saturation by the zero polynomial");
    let (big, sys) = rabinowitsch(gens, h)?;
    let gb = groebner_in(&big, &sys, MonomialOrder::Block(1), cfg)?;
    let ring = h.ring();
    let back: Vec<Option<usize>> = (0..big.nvars()).map(|i| i.checked_sub(1)).collect();
    gb.generators()
        .iter()
        .filter(|g| g.terms().all(|(e, _)| e.entries()[0] == 0))
        .map(|g| g.remap(ring, &back))
        .collect()
}

/// Generators of `I ∩ Q(i)[keep]`, returned in the ring of the kept variables
/// (in their original relative order).
pub fn eliminate(ring: &Ring, gens: &[Polynomial], keep: &[usize], cfg: &Config) -> Result<Vec<Polynomial>> {
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    let elim: Vec<usize> = (0..ring.nvars()).filter(|i| !keep.contains(i)).collect();
    let perm: Vec<usize> = elim.iter().chain(keep.iter()).copied().collect();
    let permuted = ring.sub_ring(&perm);
    let mut to_perm = vec![None; ring.nvars()];
    for (pos, &v) in perm.iter().enumerate() {
        to_perm[v] = Some(pos);
    }
    let sys: Vec<Polynomial> = gens.iter().map(|g| g.remap(&permuted, &to_perm)).collect::<Result<_>>()?;
    let gb = groebner_in(&permuted, &sys, MonomialOrder::Block(elim.len()), cfg)?;
    let kept_ring = ring.sub_ring(&keep);
    let back: Vec<Option<usize>> =
        (0..permuted.nvars()).map(|pos| pos.checked_sub(elim.len())).collect();
    gb.generators()
        .iter()
        .filter(|g| g.terms().all(|(e, _)| e.entries()[..elim.len()].iter().all(|&x| x == 0)))
        .map(|g| g.remap(&kept_ring, &back))
        .collect()
}

/// The elimination ideal of a system down to one variable.
#[derive(Clone, Debug, PartialEq)]
pub enum Eliminant {
    /// The system has no solutions.
    Unit,
    /// The projection is Zariski dense.
    Zero,
    /// Squarefree, canonically normalized generator.
    Poly(UnivariatePolynomial),
}

/// Saturates by `h` (when given) and projects onto variable `keep`.
pub fn eliminate_to_univariate(
    ring: &Ring,
    gens: &[Polynomial],
    saturate_by: Option<&Polynomial>,
    keep: usize,
    cfg: &Config,
) -> Result<Eliminant> {
    let (ring, sys, keep) = match saturate_by {
        Some(h) => {
            let (big, sys) = rabinowitsch(gens, h)?;
            (big, sys, keep + 1)
        }
        None => (ring.clone(), gens.to_vec(), keep),
    };
    let elim = eliminate(&ring, &sys, &[keep], cfg)?;
    match elim.as_slice() {
        [] => Ok(Eliminant::Zero),
        [g] => {
            let u = UnivariatePolynomial::from_polynomial(g);
            if u.degree() == Some(0) {
                Ok(Eliminant::Unit)
            } else {
                Ok(Eliminant::Poly(u.squarefree().normalized()))
            }
        }
        _ => Err(Error::Internal("univariate elimination ideal with several generators".into())),
    }
}
