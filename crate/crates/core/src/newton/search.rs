//! Depth-first search over in/out decisions for every support point, pruned
//! by exact LP feasibility. Each leaf is one realizable tuple of faces.
//!
//! LP variables are `q` (one per axis) followed by one `d_k` per support set.
//! A point on the face satisfies `⟨q,α⟩ - d_k = 0`, a point off the face
//! `⟨q,α⟩ - d_k ≥ 1`, and an undecided point `⟨q,α⟩ - d_k ≥ 0`.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::lp::{int, lp_feasible, Constraint, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum DRule {
    Free,
    /// `d_0 ≤ -1`
    Negative,
    /// `d_0 = 0`
    Zero,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Undecided,
    In,
    Out,
}

#[derive(Clone, Debug)]
pub(crate) struct RawTuple {
    /// Indices of face members in each support, ascending.
    pub members: Vec<Vec<usize>>,
    /// Primitive integer covector.
    pub q: Vec<BigRational>,
    pub d: Vec<BigRational>,
}

struct Search<'a> {
    supports: &'a [Vec<Vec<i64>>],
    /// (support index, point index) in decision order.
    flat: Vec<(usize, usize)>,
    nq: usize,
    rule: DRule,
    negative: bool,
    status: Vec<Status>,
    leaves: Vec<Vec<Status>>,
}

impl Search<'_> {
    fn nvars(&self) -> usize {
        self.nq + self.supports.len()
    }

    fn constraints(&self) -> Vec<Constraint> {
        let nv = self.nvars();
        let mut cs = Vec::with_capacity(self.flat.len() + 1);
        if self.rule != DRule::Free {
            let mut row = vec![BigRational::zero(); nv];
            row[self.nq] = BigRational::one();
            cs.push(match self.rule {
                DRule::Negative => Constraint::new(row, Relation::Le, int(-1)),
                _ => Constraint::new(row, Relation::Eq, int(0)),
            });
        }
        for (f, &(k, idx)) in self.flat.iter().enumerate() {
            let mut row = vec![BigRational::zero(); nv];
            for (r, &a) in row.iter_mut().zip(&self.supports[k][idx]) {
                *r = int(a);
            }
            row[self.nq + k] = int(-1);
            cs.push(match self.status[f] {
                Status::Undecided => Constraint::new(row, Relation::Ge, int(0)),
                Status::In => Constraint::new(row, Relation::Eq, int(0)),
                Status::Out => Constraint::new(row, Relation::Ge, int(1)),
            });
        }
        cs
    }

    fn negativity_row(&self, i: usize) -> Constraint {
        let mut row = vec![BigRational::zero(); self.nvars()];
        row[i] = BigRational::one();
        Constraint::new(row, Relation::Le, int(-1))
    }

    /// A point satisfying the current system, reusing `hint` when it still fits.
    fn solve(&self, hint: Option<&[BigRational]>) -> Option<Vec<BigRational>> {
        let cs = self.constraints();
        let disjuncts: Vec<Option<Constraint>> =
            if self.negative { (0..self.nq).map(|i| Some(self.negativity_row(i))).collect() } else { vec![None] };
        if let Some(w) = hint {
            if cs.iter().all(|c| c.holds(w)) && disjuncts.iter().any(|d| d.as_ref().is_none_or(|d| d.holds(w))) {
                return Some(w.to_vec());
            }
        }
        for extra in disjuncts {
            let mut sys = cs.clone();
            sys.extend(extra);
            if let Some(w) = lp_feasible(self.nvars(), &sys).witness() {
                return Some(w.to_vec());
            }
        }
        None
    }

    fn last_of_support(&self, pos: usize) -> bool {
        pos + 1 == self.flat.len() || self.flat[pos + 1].0 != self.flat[pos].0
    }

    fn has_member(&self, pos: usize) -> bool {
        let k = self.flat[pos].0;
        (0..pos).rev().take_while(|&p| self.flat[p].0 == k).any(|p| self.status[p] == Status::In)
    }

    fn dfs(&mut self, pos: usize, hint: Vec<BigRational>) {
        if pos == self.flat.len() {
            self.leaves.push(self.status.clone());
            return;
        }
        for choice in [Status::In, Status::Out] {
            if choice == Status::Out && self.last_of_support(pos) && !self.has_member(pos) {
                continue;
            }
            self.status[pos] = choice;
            if let Some(w) = self.solve(Some(&hint)) {
                self.dfs(pos + 1, w);
            }
        }
        self.status[pos] = Status::Undecided;
    }
}

fn primitive(q: &[BigRational]) -> Vec<BigRational> {
    let l = q.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = q.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return q.to_vec();
    }
    ints.into_iter().map(|x| BigRational::from_integer(x / &g)).collect()
}

/// All realizable face tuples of the given supports (coordinates already
/// projected to the chosen axes). With `negative`, some coordinate of `q`
/// must be negative. Leaves come back in decision order.
pub(crate) fn enumerate_raw(supports: &[Vec<Vec<i64>>], rule: DRule, negative: bool) -> Vec<RawTuple> {
    let nq = supports.first().and_then(|s| s.first()).map_or(0, |p| p.len());
    let flat: Vec<(usize, usize)> =
        supports.iter().enumerate().flat_map(|(k, s)| (0..s.len()).map(move |i| (k, i))).collect();
    let mut search = Search {
        supports,
        nq,
        rule,
        negative,
        status: vec![Status::Undecided; flat.len()],
        flat,
        leaves: Vec::new(),
    };
    if search.solve(None).is_none() {
        return Vec::new();
    }
    let start = vec![BigRational::zero(); search.nvars()];
    search.dfs(0, start);

    let leaves = std::mem::take(&mut search.leaves);
    leaves
        .into_iter()
        .map(|leaf| {
            // Re-solve from scratch so the witness depends only on the tuple.
            search.status = leaf.clone();
            let w = search.solve(None).expect("leaf was feasible during the search");
            let q = primitive(&w[..nq]);
            let d: Vec<BigRational> = supports
                .iter()
                .map(|s| {
                    s.iter()
                        .map(|p| q.iter().zip(p).fold(BigRational::zero(), |acc, (a, &b)| acc + a * int(b)))
                        .min()
                        .expect("nonempty support")
                })
                .collect();
            let mut members = vec![Vec::new(); supports.len()];
            for (f, &(k, idx)) in search.flat.iter().enumerate() {
                if leaf[f] == Status::In {
                    members[k].push(idx);
                }
            }
            debug_assert!(!negative || q.iter().any(|x| x.is_negative()));
            RawTuple { members, q, d }
        })
        .collect()
}
