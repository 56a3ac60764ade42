//! Exact rational simplex with Bland's anti-cycling rule.
//!
//! Dense two-phase tableau over `BigRational`. Bland's pivot rule (smallest
//! eligible column, ties in the ratio test broken by smallest basic
//! variable) guarantees termination, and exact arithmetic means the sign of
//! the optimum is trustworthy — which is what the admissibility verdict
//! rests on. Problem sizes here are tiny by LP standards, so no factorised
//! basis or sparsity is attempted.

use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Constraint sense.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Ge,
    Le,
}

/// One row: `sum(coeff * var) relation rhs` over variables `0..num_vars`.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// Maximise `objective . x` subject to the constraints, `x >= 0`.
#[derive(Debug, Clone)]
pub struct Program {
    pub num_vars: usize,
    pub objective: Vec<(usize, Rational)>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// rows x (cols + 1); last column is the right-hand side.
    rows: Vec<Vec<Rational>>,
    cols: usize,
    basis: Vec<usize>,
    /// Reduced-cost row for the current objective (maximisation).
    obj: Vec<Rational>,
}

impl Tableau {
    fn rhs_index(&self) -> usize {
        self.cols
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let pivot = self.rows[row][col].clone();
        debug_assert!(!pivot.is_zero());
        for x in self.rows[row].iter_mut() {
            *x = &*x / &pivot;
        }
        for r in 0..self.rows.len() {
            if r == row {
                continue;
            }
            let factor = self.rows[r][col].clone();
            if factor.is_zero() {
                continue;
            }
            for c in 0..=self.cols {
                let delta = &factor * &self.rows[row][c];
                self.rows[r][c] = &self.rows[r][c] - &delta;
            }
        }
        let factor = self.obj[col].clone();
        if !factor.is_zero() {
            for c in 0..=self.cols {
                let delta = &factor * &self.rows[row][c];
                self.obj[c] = &self.obj[c] - &delta;
            }
        }
        self.basis[row] = col;
    }

    /// Run the simplex loop with Bland's rule, allowing only columns below
    /// `col_limit` to enter. Returns false on unboundedness.
    fn optimize(&mut self, col_limit: usize) -> bool {
        loop {
            let entering = (0..col_limit).find(|&j| self.obj[j].is_positive());
            let Some(j) = entering else {
                return true;
            };
            let rhs = self.rhs_index();
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                if !self.rows[r][j].is_positive() {
                    continue;
                }
                let ratio = &self.rows[r][rhs] / &self.rows[r][j];
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, j);
        }
    }
}

/// Solve the program exactly. Deterministic: identical inputs take identical
/// pivot sequences.
pub fn solve_max(p: &Program) -> Outcome {
    let m = p.constraints.len();
    // Column layout: structural vars, slack/surplus vars, artificials.
    let mut slack_count = 0;
    for c in &p.constraints {
        if c.relation != Relation::Eq {
            slack_count += 1;
        }
    }
    let slack_base = p.num_vars;
    let art_base = slack_base + slack_count;
    let total = art_base + m; // at most one artificial per row
    let zero = Rational::zero();
    let one = Rational::one();

    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut basis = vec![usize::MAX; m];
    let mut art_cols: Vec<Option<usize>> = vec![None; m];
    let mut next_slack = slack_base;
    let mut next_art = art_base;
    for (i, c) in p.constraints.iter().enumerate() {
        let mut row = vec![zero.clone(); total + 1];
        for (v, coeff) in &c.coeffs {
            debug_assert!(*v < p.num_vars);
            row[*v] = &row[*v] + coeff;
        }
        row[total] = c.rhs.clone();
        let mut relation = c.relation;
        if row[total].is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            relation = match relation {
                Relation::Eq => Relation::Eq,
                Relation::Ge => Relation::Le,
                Relation::Le => Relation::Ge,
            };
        }
        match relation {
            Relation::Le => {
                row[next_slack] = one.clone();
                basis[i] = next_slack;
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -one.clone();
                next_slack += 1;
                row[next_art] = one.clone();
                basis[i] = next_art;
                art_cols[i] = Some(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                row[next_art] = one.clone();
                basis[i] = next_art;
                art_cols[i] = Some(next_art);
                next_art += 1;
            }
        }
        rows.push(row);
    }
    let art_start = art_base;
    let used_cols = next_art;
    // Trim unused artificial columns' bookkeeping by simply never letting
    // them enter; the tableau keeps `total` columns for simplicity.
    let mut t = Tableau {
        rows,
        cols: total,
        basis,
        obj: vec![zero.clone(); total + 1],
    };

    // Phase 1: maximise -(sum of artificials).
    let mut any_artificial = false;
    for j in art_start..used_cols {
        t.obj[j] = -one.clone();
        any_artificial = true;
    }
    if any_artificial {
        // Price out the artificial basis.
        for r in 0..m {
            if t.basis[r] >= art_start {
                for c in 0..=t.cols {
                    let delta = t.rows[r][c].clone();
                    t.obj[c] = &t.obj[c] + &delta;
                }
            }
        }
        if !t.optimize(art_start) {
            // Phase 1 objective is bounded by construction.
            return Outcome::Unbounded;
        }
        let rhs = t.rhs_index();
        let phase1: Rational = (0..m)
            .filter(|&r| t.basis[r] >= art_start)
            .map(|r| t.rows[r][rhs].clone())
            .fold(zero.clone(), |a, b| a + b);
        if !phase1.is_zero() {
            return Outcome::Infeasible;
        }
        // Drive any lingering zero-valued artificials out of the basis.
        for r in 0..m {
            if t.basis[r] >= art_start {
                if let Some(j) = (0..art_start).find(|&j| !t.rows[r][j].is_zero()) {
                    t.pivot(r, j);
                }
                // A fully zero row is redundant; the artificial stays basic
                // at zero and never re-enters, which is harmless.
            }
        }
    }

    // Phase 2: real objective priced against the current basis.
    for c in 0..=t.cols {
        t.obj[c] = zero.clone();
    }
    for (v, coeff) in &p.objective {
        t.obj[*v] = &t.obj[*v] + coeff;
    }
    for r in 0..m {
        let b = t.basis[r];
        let cb = t.obj[b].clone();
        if !cb.is_zero() {
            for c in 0..=t.cols {
                let delta = &cb * &t.rows[r][c];
                t.obj[c] = &t.obj[c] - &delta;
            }
        }
    }
    if !t.optimize(art_start) {
        return Outcome::Unbounded;
    }

    let rhs = t.rhs_index();
    let mut point = vec![zero.clone(); p.num_vars];
    for r in 0..m {
        if t.basis[r] < p.num_vars {
            point[t.basis[r]] = t.rows[r][rhs].clone();
        }
    }
    let value = p
        .objective
        .iter()
        .map(|(v, c)| c * &point[*v])
        .fold(zero, |a, b| a + b);
    Outcome::Optimal { value, point }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn var(v: usize, n: i64, d: i64) -> (usize, Rational) {
        (v, ratio(n, d))
    }

    #[test]
    fn simple_bounded_max() {
        // max x + y, x + y <= 3, x <= 2, y <= 2
        let p = Program {
            num_vars: 2,
            objective: vec![var(0, 1, 1), var(1, 1, 1)],
            constraints: vec![
                Constraint {
                    coeffs: vec![var(0, 1, 1), var(1, 1, 1)],
                    relation: Relation::Le,
                    rhs: ratio(3, 1),
                },
                Constraint {
                    coeffs: vec![var(0, 1, 1)],
                    relation: Relation::Le,
                    rhs: ratio(2, 1),
                },
                Constraint {
                    coeffs: vec![var(1, 1, 1)],
                    relation: Relation::Le,
                    rhs: ratio(2, 1),
                },
            ],
        };
        match solve_max(&p) {
            Outcome::Optimal { value, .. } => assert_eq!(value, ratio(3, 1)),
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn equality_and_ge() {
        // max t subject to x = 1, x - t >= 0  ->  t* = 1.
        let p = Program {
            num_vars: 2,
            objective: vec![var(1, 1, 1)],
            constraints: vec![
                Constraint {
                    coeffs: vec![var(0, 1, 1)],
                    relation: Relation::Eq,
                    rhs: ratio(1, 1),
                },
                Constraint {
                    coeffs: vec![var(0, 1, 1), var(1, -1, 1)],
                    relation: Relation::Ge,
                    rhs: ratio(0, 1),
                },
            ],
        };
        match solve_max(&p) {
            Outcome::Optimal { value, point } => {
                assert_eq!(value, ratio(1, 1));
                assert_eq!(point[0], ratio(1, 1));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_detected() {
        // x = 1 and x = 2 cannot both hold.
        let p = Program {
            num_vars: 1,
            objective: vec![var(0, 1, 1)],
            constraints: vec![
                Constraint {
                    coeffs: vec![var(0, 1, 1)],
                    relation: Relation::Eq,
                    rhs: ratio(1, 1),
                },
                Constraint {
                    coeffs: vec![var(0, 1, 1)],
                    relation: Relation::Eq,
                    rhs: ratio(2, 1),
                },
            ],
        };
        assert_eq!(solve_max(&p), Outcome::Infeasible);
    }

    #[test]
    fn unbounded_detected() {
        let p = Program {
            num_vars: 1,
            objective: vec![var(0, 1, 1)],
            constraints: vec![Constraint {
                coeffs: vec![var(0, 1, 1)],
                relation: Relation::Ge,
                rhs: ratio(1, 1),
            }],
        };
        assert_eq!(solve_max(&p), Outcome::Unbounded);
    }

    #[test]
    fn degenerate_ties_terminate() {
        // A classic degenerate system; Bland's rule must not cycle.
        let p = Program {
            num_vars: 3,
            objective: vec![var(0, 3, 4), var(1, -150, 1), var(2, 1, 50)],
            constraints: vec![
                Constraint {
                    coeffs: vec![var(0, 1, 4), var(1, -60, 1), var(2, -1, 25)],
                    relation: Relation::Le,
                    rhs: ratio(0, 1),
                },
                Constraint {
                    coeffs: vec![var(0, 1, 2), var(1, -90, 1), var(2, -1, 50)],
                    relation: Relation::Le,
                    rhs: ratio(0, 1),
                },
                Constraint {
                    coeffs: vec![var(2, 1, 1)],
                    relation: Relation::Le,
                    rhs: ratio(1, 1),
                },
            ],
        };
        match solve_max(&p) {
            Outcome::Optimal { value, .. } => assert_eq!(value, ratio(1, 20)),
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn negative_rhs_is_normalised() {
        // max -x subject to -x <= -2  (i.e. x >= 2): optimum -2.
        let p = Program {
            num_vars: 1,
            objective: vec![var(0, -1, 1)],
            constraints: vec![Constraint {
                coeffs: vec![var(0, -1, 1)],
                relation: Relation::Le,
                rhs: ratio(-2, 1),
            }],
        };
        match solve_max(&p) {
            Outcome::Optimal { value, point } => {
                assert_eq!(value, ratio(-2, 1));
                assert_eq!(point[0], ratio(2, 1));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }
}
