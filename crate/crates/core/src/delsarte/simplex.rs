//! Dense two-phase simplex over exact rationals with Bland's rule.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// `maximize c.x` subject to `rows` and `x >= 0`.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub rows: Vec<(Vec<Rational>, Relation, Rational)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    /// Optimal `x`, value, and dual `y` (`y >= 0` on `Le` rows, `y <= 0` on
    /// `Ge` rows, `A^T y >= c`, `b.y = value`).
    Optimal {
        x: Vec<Rational>,
        value: Rational,
        y: Vec<Rational>,
    },
    /// Farkas certificate: `y` with the dual sign pattern, `A^T y >= 0`
    /// and `b.y < 0`.
    Infeasible { y: Vec<Rational> },
    /// Feasible `x` and direction `d >= 0` with `A d` respecting the
    /// homogeneous rows and `c.d > 0`.
    Unbounded { x: Vec<Rational>, direction: Vec<Rational> },
}

struct Tableau {
    /// `m` rows of `ncols + 1` entries; the last is the right-hand side.
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::one() / &self.t[r][c];
        for v in self.t[r].iter_mut() {
            *v *= &inv;
        }
        let pr = self.t[r].clone();
        for (k, row) in self.t.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(pr.iter()) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Reduced costs `d_j = c_j - c_B B^{-1} a_j`.
    fn reduced(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut d: Vec<Rational> = cost.to_vec();
        for (row, &b) in self.t.iter().zip(self.basis.iter()) {
            if cost[b].is_zero() {
                continue;
            }
            for j in 0..self.ncols {
                if !row[j].is_zero() {
                    d[j] -= &cost[b] * &row[j];
                }
            }
        }
        d
    }

    /// Maximize `cost` over columns allowed by `eligible`. Returns the
    /// unbounded column if any.
    fn optimize(&mut self, cost: &[Rational], eligible: &dyn Fn(usize) -> bool) -> Option<usize> {
        loop {
            let d = self.reduced(cost);
            let enter = (0..self.ncols).find(|&j| eligible(j) && d[j].is_positive());
            let c = enter?;
            let rhs = self.ncols;
            let mut best: Option<(usize, Rational)> = None;
            for (r, row) in self.t.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[rhs] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                    };
                    if better {
                        best = Some((r, ratio));
                    }
                }
            }
            match best {
                None => return Some(c),
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }

    fn solution(&self, n: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); n];
        for (row, &b) in self.t.iter().zip(self.basis.iter()) {
            if b < n {
                x[b] = row[self.ncols].clone();
            }
        }
        x
    }
}

/// Solve exactly.
pub fn solve(lp: &LinearProgram) -> Outcome {
    let n = lp.objective.len();
    let m = lp.rows.len();
    // Normalize to b >= 0.
    let mut flip = vec![false; m];
    let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = lp.rows.clone();
    for (k, (a, rel, b)) in rows.iter_mut().enumerate() {
        if b.is_negative() {
            flip[k] = true;
            for v in a.iter_mut() {
                *v = -v.clone();
            }
            *b = -b.clone();
            *rel = match rel {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }
    // Columns: structural | one surplus per Ge row | one unit column per row
    // (slack for Le, artificial otherwise).
    let n_surplus = rows.iter().filter(|r| r.1 == Relation::Ge).count();
    let surplus0 = n;
    let unit0 = n + n_surplus;
    let ncols = unit0 + m;
    let mut t = Vec::with_capacity(m);
    let mut artificial = vec![false; ncols];
    let mut s_idx = surplus0;
    for (k, (a, rel, b)) in rows.iter().enumerate() {
        let mut row = vec![Rational::zero(); ncols + 1];
        row[..n].clone_from_slice(a);
        if *rel == Relation::Ge {
            row[s_idx] = -Rational::one();
            s_idx += 1;
        }
        row[unit0 + k] = Rational::one();
        if *rel != Relation::Le {
            artificial[unit0 + k] = true;
        }
        row[ncols] = b.clone();
        t.push(row);
    }
    let mut tab = Tableau {
        t,
        basis: (unit0..unit0 + m).collect(),
        ncols,
    };

    // Phase 1: maximize -sum(artificials).
    let phase1: Vec<Rational> = (0..ncols)
        .map(|j| if artificial[j] { -Rational::one() } else { Rational::zero() })
        .collect();
    tab.optimize(&phase1, &|_| true);
    let infeasibility: Rational = tab
        .t
        .iter()
        .zip(tab.basis.iter())
        .filter(|(_, &b)| artificial[b])
        .map(|(row, _)| row[ncols].clone())
        .fold(Rational::zero(), |a, b| a + b);
    let duals = |tab: &Tableau, cost: &[Rational]| -> Vec<Rational> {
        let d = tab.reduced(cost);
        (0..m)
            .map(|k| {
                let y = &cost[unit0 + k] - &d[unit0 + k];
                if flip[k] {
                    -y
                } else {
                    y
                }
            })
            .collect()
    };
    if infeasibility.is_positive() {
        return Outcome::Infeasible { y: duals(&tab, &phase1) };
    }
    // Drive zero-level artificials out of the basis where possible.
    for r in 0..m {
        if artificial[tab.basis[r]] {
            if let Some(c) = (0..unit0).find(|&j| !tab.t[r][j].is_zero()) {
                tab.pivot(r, c);
            }
        }
    }

    // Phase 2.
    let mut cost = vec![Rational::zero(); ncols];
    cost[..n].clone_from_slice(&lp.objective);
    if let Some(c) = tab.optimize(&cost, &|j| !artificial[j]) {
        let x = tab.solution(n);
        let mut direction = vec![Rational::zero(); n];
        if c < n {
            direction[c] = Rational::one();
        }
        for (row, &b) in tab.t.iter().zip(tab.basis.iter()) {
            if b < n {
                direction[b] = -row[c].clone();
            }
        }
        return Outcome::Unbounded { x, direction };
    }
    let x = tab.solution(n);
    let value = x
        .iter()
        .zip(lp.objective.iter())
        .fold(Rational::zero(), |acc, (a, b)| acc + a * b);
    Outcome::Optimal {
        x,
        value,
        y: duals(&tab, &cost),
    }
}

/// Check that `y` is dual feasible for `lp` with objective `c`, returning
/// `b.y`. Independent of the solver.
pub fn dual_value(lp: &LinearProgram, c: &[Rational], y: &[Rational]) -> Option<Rational> {
    if y.len() != lp.rows.len() {
        return None;
    }
    for ((_, rel, _), yk) in lp.rows.iter().zip(y.iter()) {
        let ok = match rel {
            Relation::Le => !yk.is_negative(),
            Relation::Ge => !yk.is_positive(),
            Relation::Eq => true,
        };
        if !ok {
            return None;
        }
    }
    for (j, cj) in c.iter().enumerate() {
        let s = lp
            .rows
            .iter()
            .zip(y.iter())
            .fold(Rational::zero(), |acc, ((a, _, _), yk)| acc + &a[j] * yk);
        if s < *cj {
            return None;
        }
    }
    Some(
        lp.rows
            .iter()
            .zip(y.iter())
            .fold(Rational::zero(), |acc, ((_, _, b), yk)| acc + b * yk),
    )
}

/// Primal feasibility of `x`.
pub fn is_feasible(lp: &LinearProgram, x: &[Rational]) -> bool {
    x.len() == lp.objective.len()
        && x.iter().all(|v| !v.is_negative())
        && lp.rows.iter().all(|(a, rel, b)| {
            let s = a.iter().zip(x.iter()).fold(Rational::zero(), |acc, (p, q)| acc + p * q);
            match rel {
                Relation::Le => s <= *b,
                Relation::Eq => s == *b,
                Relation::Ge => s >= *b,
            }
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn row(a: &[i64], rel: Relation, b: i64) -> (Vec<Rational>, Relation, Rational) {
        (a.iter().map(|&v| int(v)).collect(), rel, int(b))
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6)
        let lp = LinearProgram {
            objective: vec![int(3), int(5)],
            rows: vec![
                row(&[1, 0], Relation::Le, 4),
                row(&[0, 2], Relation::Le, 12),
                row(&[3, 2], Relation::Le, 18),
            ],
        };
        match solve(&lp) {
            Outcome::Optimal { x, value, y } => {
                assert_eq!(value, int(36));
                assert_eq!(x, vec![int(2), int(6)]);
                assert_eq!(dual_value(&lp, &lp.objective, &y), Some(int(36)));
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn equality_and_ge_rows() {
        // max -x - y, x + y >= 1, x - y = 1/2 -> x = 3/4, y = 1/4
        let lp = LinearProgram {
            objective: vec![int(-1), int(-1)],
            rows: vec![
                row(&[1, 1], Relation::Ge, 1),
                (vec![int(1), int(-1)], Relation::Eq, rat(1, 2)),
            ],
        };
        match solve(&lp) {
            Outcome::Optimal { x, value, y } => {
                assert_eq!(value, int(-1));
                assert_eq!(x, vec![rat(3, 4), rat(1, 4)]);
                assert!(is_feasible(&lp, &x));
                assert_eq!(dual_value(&lp, &lp.objective, &y), Some(int(-1)));
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn infeasible_has_farkas_certificate() {
        let lp = LinearProgram {
            objective: vec![int(1)],
            rows: vec![row(&[1], Relation::Le, 1), row(&[1], Relation::Ge, 2)],
        };
        match solve(&lp) {
            Outcome::Infeasible { y } => {
                let zero = vec![int(0)];
                let v = dual_value(&lp, &zero, &y).unwrap();
                assert!(v.is_negative());
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn unbounded_direction() {
        let lp = LinearProgram {
            objective: vec![int(1), int(0)],
            rows: vec![row(&[-1, 1], Relation::Le, 1)],
        };
        match solve(&lp) {
            Outcome::Unbounded { direction, .. } => assert!(direction[0].is_positive()),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn redundant_equalities() {
        let lp = LinearProgram {
            objective: vec![int(1), int(1)],
            rows: vec![
                row(&[1, 1], Relation::Eq, 2),
                row(&[2, 2], Relation::Eq, 4),
                row(&[1, 0], Relation::Le, 1),
            ],
        };
        match solve(&lp) {
            Outcome::Optimal { value, y, .. } => {
                assert_eq!(value, int(2));
                assert_eq!(dual_value(&lp, &lp.objective, &y), Some(int(2)));
            }
            o => panic!("{o:?}"),
        }
    }
}
