//! Exact feasibility for rational linear systems over free variables.
//!
//! Phase-one simplex over `BigRational` with Bland's rule. Infeasible systems
//! come with a Farkas certificate that can be checked independently.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Eq,
    Ge,
    Le,
}

/// `coeffs · x (relation) rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn new(coeffs: Vec<BigRational>, relation: Relation, rhs: BigRational) -> Self {
        Constraint { coeffs, relation, rhs }
    }

    pub fn from_ints(coeffs: &[i64], relation: Relation, rhs: i64) -> Self {
        Constraint { coeffs: coeffs.iter().map(|&c| int(c)).collect(), relation, rhs: int(rhs) }
    }

    pub fn lhs(&self, x: &[BigRational]) -> BigRational {
        self.coeffs.iter().zip(x).fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn holds(&self, x: &[BigRational]) -> bool {
        let v = self.lhs(x);
        match self.relation {
            Relation::Eq => v == self.rhs,
            Relation::Ge => v >= self.rhs,
            Relation::Le => v <= self.rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility {
    /// A point satisfying every constraint.
    Feasible(Vec<BigRational>),
    /// Farkas multipliers, one per constraint; see [`verify_farkas`].
    Infeasible(Vec<BigRational>),
}

impl Feasibility {
    pub fn witness(&self) -> Option<&[BigRational]> {
        match self {
            Feasibility::Feasible(x) => Some(x),
            Feasibility::Infeasible(_) => None,
        }
    }
}

pub(crate) fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Checks that `y` proves infeasibility: `Σ y_r a_r = 0`, `y_r ≥ 0` on `≥`
/// rows, `y_r ≤ 0` on `≤` rows, and `Σ y_r b_r > 0`.
pub fn verify_farkas(nvars: usize, constraints: &[Constraint], y: &[BigRational]) -> bool {
    if y.len() != constraints.len() {
        return false;
    }
    for j in 0..nvars {
        let s = constraints.iter().zip(y).fold(BigRational::zero(), |acc, (c, yr)| acc + &c.coeffs[j] * yr);
        if !s.is_zero() {
            return false;
        }
    }
    let signs_ok = constraints.iter().zip(y).all(|(c, yr)| match c.relation {
        Relation::Eq => true,
        Relation::Ge => !yr.is_negative(),
        Relation::Le => !yr.is_positive(),
    });
    let yb = constraints.iter().zip(y).fold(BigRational::zero(), |acc, (c, yr)| acc + &c.rhs * yr);
    signs_ok && yb.is_positive()
}

/// Decides whether the system has a solution with all variables free.
pub fn lp_feasible(nvars: usize, constraints: &[Constraint]) -> Feasibility {
    for c in constraints {
        assert_eq!(c.coeffs.len(), nvars, "constraint width mismatch");
    }
    let m = constraints.len();
    if m == 0 {
        return Feasibility::Feasible(vec![BigRational::zero(); nvars]);
    }

    // Columns: x⁺ (nvars), x⁻ (nvars), one slack per inequality, one
    // artificial per row, then the right-hand side.
    let nslack = constraints.iter().filter(|c| c.relation != Relation::Eq).count();
    let art0 = 2 * nvars + nslack;
    let ncols = art0 + m;
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut flip = Vec::with_capacity(m);
    let mut slack = 2 * nvars;
    for (r, c) in constraints.iter().enumerate() {
        let mut row = vec![BigRational::zero(); ncols + 1];
        for (j, a) in c.coeffs.iter().enumerate() {
            row[j] = a.clone();
            row[nvars + j] = -a;
        }
        match c.relation {
            Relation::Eq => {}
            Relation::Ge => {
                row[slack] = -BigRational::one();
                slack += 1;
            }
            Relation::Le => {
                row[slack] = BigRational::one();
                slack += 1;
            }
        }
        row[ncols] = c.rhs.clone();
        let negate = c.rhs.is_negative();
        if negate {
            for v in row.iter_mut() {
                *v = -&*v;
            }
        }
        row[art0 + r] = BigRational::one();
        flip.push(negate);
        rows.push(row);
    }

    // Reduced costs for the phase-one objective (sum of artificials).
    let mut obj = vec![BigRational::zero(); ncols + 1];
    for j in 0..art0 {
        obj[j] = -rows.iter().fold(BigRational::zero(), |acc, row| acc + &row[j]);
    }
    obj[ncols] = -rows.iter().fold(BigRational::zero(), |acc, row| acc + &row[ncols]);
    let mut basis: Vec<usize> = (art0..ncols).collect();

    loop {
        let Some(enter) = (0..ncols).find(|&j| obj[j].is_negative()) else { break };
        let mut leave: Option<(usize, BigRational)> = None;
        for (r, row) in rows.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[ncols] / &row[enter];
            let better = match &leave {
                None => true,
                Some((lr, lratio)) => ratio < *lratio || (ratio == *lratio && basis[r] < basis[*lr]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        let (r, _) = leave.expect("phase-one objective is bounded below");
        pivot(&mut rows, &mut obj, r, enter);
        basis[r] = enter;
    }

    if obj[ncols].is_zero() {
        let mut vals = vec![BigRational::zero(); ncols];
        for (r, &b) in basis.iter().enumerate() {
            vals[b] = rows[r][ncols].clone();
        }
        let x: Vec<BigRational> = (0..nvars).map(|j| &vals[j] - &vals[nvars + j]).collect();
        debug_assert!(constraints.iter().all(|c| c.holds(&x)));
        Feasibility::Feasible(x)
    } else {
        let y: Vec<BigRational> = (0..m)
            .map(|r| {
                let dual = BigRational::one() - &obj[art0 + r];
                if flip[r] {
                    -dual
                } else {
                    dual
                }
            })
            .collect();
        debug_assert!(verify_farkas(nvars, constraints, &y));
        Feasibility::Infeasible(y)
    }
}

fn pivot(rows: &mut [Vec<BigRational>], obj: &mut [BigRational], r: usize, col: usize) {
    let p = rows[r][col].clone();
    for v in rows[r].iter_mut() {
        if !v.is_zero() {
            *v = &*v / &p;
        }
    }
    let prow = rows[r].clone();
    let eliminate = |row: &mut [BigRational]| {
        let f = row[col].clone();
        if f.is_zero() {
            return;
        }
        for (v, pv) in row.iter_mut().zip(&prow) {
            if !pv.is_zero() {
                *v = &*v - &f * pv;
            }
        }
    };
    for (i, row) in rows.iter_mut().enumerate() {
        if i != r {
            eliminate(row);
        }
    }
    eliminate(obj);
}

#[cfg(test)]
mod tests {
    use super::*;
    use Relation::*;

    #[test]
    fn single_negativity_row() {
        let cs = vec![Constraint::from_ints(&[1, 0, 0], Le, -1)];
        let x = lp_feasible(3, &cs);
        let w = x.witness().unwrap();
        assert!(cs[0].holds(w));
    }

    #[test]
    fn contradictory_rows_have_a_certificate() {
        // q1 = 0 and 2 q1 + q2 >= 1 and q2 <= -1
        let cs = vec![
            Constraint::from_ints(&[1, 0], Eq, 0),
            Constraint::from_ints(&[2, 1], Ge, 1),
            Constraint::from_ints(&[0, 1], Le, -1),
        ];
        match lp_feasible(2, &cs) {
            Feasibility::Infeasible(y) => assert!(verify_farkas(2, &cs, &y)),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn equality_systems() {
        // q . (2,1) = d, q . (1,0) >= d + 1, d = 0, q2 <= -1
        let cs = vec![
            Constraint::from_ints(&[2, 1, -1], Eq, 0),
            Constraint::from_ints(&[1, 0, -1], Ge, 1),
            Constraint::from_ints(&[0, 0, 1], Eq, 0),
            Constraint::from_ints(&[0, 1, 0], Le, -1),
        ];
        let w = lp_feasible(3, &cs).witness().unwrap().to_vec();
        assert!(cs.iter().all(|c| c.holds(&w)));
        assert_eq!(&w[1], &(-&w[0] * int(2)));
    }

    #[test]
    fn empty_system_is_feasible() {
        assert_eq!(lp_feasible(2, &[]), Feasibility::Feasible(vec![int(0), int(0)]));
    }
}
