//! Exact two-phase simplex over the rationals (Bland's rule).
//!
//! Variables are nonnegative; callers split free variables themselves.

use num_traits::{One, Signed, Zero};

use crate::rational::{self, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Q>,
    pub relation: Relation,
    pub rhs: Q,
}

/// `minimize objective·x` subject to the constraints and `x ≥ 0`.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<Q>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Q>, value: Q },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn nvars(&self) -> usize {
        self.objective.len()
    }

    /// Checks `x ≥ 0` and every constraint exactly.
    pub fn is_feasible(&self, x: &[Q]) -> bool {
        x.len() == self.nvars()
            && x.iter().all(rational::is_nonneg)
            && self.constraints.iter().all(|c| {
                let lhs = rational::dot(&c.coeffs, x);
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                }
            })
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).run(&self.objective)
    }
}

struct Tableau {
    /// Rows `[a_1 … a_N | b]` in canonical form for `basis`.
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    nvars: usize,
    /// Columns `≥ first_artificial` are artificial.
    first_artificial: usize,
    ncols: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let nvars = lp.nvars();
        let m = lp.constraints.len();
        // Flip rows so every right-hand side is nonnegative.
        let normalized: Vec<(Vec<Q>, Relation, Q)> = lp
            .constraints
            .iter()
            .map(|c| {
                if c.rhs.is_negative() {
                    let rel = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (c.coeffs.iter().map(|x| -x).collect(), rel, -c.rhs.clone())
                } else {
                    (c.coeffs.clone(), c.relation, c.rhs.clone())
                }
            })
            .collect();
        let nslack = normalized.iter().filter(|(_, r, _)| *r != Relation::Eq).count();
        let nart = normalized.iter().filter(|(_, r, _)| *r != Relation::Le).count();
        let first_artificial = nvars + nslack;
        let ncols = first_artificial + nart;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut slack, mut art) = (nvars, first_artificial);
        for (coeffs, rel, rhs) in normalized {
            let mut row = vec![Q::zero(); ncols + 1];
            row[..nvars].clone_from_slice(&coeffs);
            row[ncols] = rhs;
            match rel {
                Relation::Le => {
                    row[slack] = Q::one();
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -Q::one();
                    slack += 1;
                    row[art] = Q::one();
                    basis.push(art);
                    art += 1;
                }
                Relation::Eq => {
                    row[art] = Q::one();
                    basis.push(art);
                    art += 1;
                }
            }
            rows.push(row);
        }
        Self {
            rows,
            basis,
            nvars,
            first_artificial,
            ncols,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Q::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Minimizes `cost` over columns `< allowed`; `false` if unbounded.
    fn optimize(&mut self, cost: &[Q], allowed: usize) -> bool {
        loop {
            let reduced = |j: usize| -> Q {
                let mut v = cost[j].clone();
                for (row, &b) in self.rows.iter().zip(&self.basis) {
                    if !row[j].is_zero() && !cost[b].is_zero() {
                        v -= &cost[b] * &row[j];
                    }
                }
                v
            };
            let Some(enter) = (0..allowed).find(|&j| !self.basis.contains(&j) && reduced(j).is_negative()) else {
                return true;
            };
            let mut best: Option<(Q, usize, usize)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[enter].is_positive() {
                    let ratio = &row[self.ncols] / &row[enter];
                    let better = match &best {
                        None => true,
                        Some((r, _, b)) => ratio < *r || (ratio == *r && self.basis[i] < *b),
                    };
                    if better {
                        best = Some((ratio, i, self.basis[i]));
                    }
                }
            }
            let Some((_, leave, _)) = best else {
                return false;
            };
            self.pivot(leave, enter);
        }
    }

    fn run(mut self, objective: &[Q]) -> LpOutcome {
        let mut phase1 = vec![Q::zero(); self.ncols];
        for c in phase1.iter_mut().skip(self.first_artificial) {
            *c = Q::one();
        }
        self.optimize(&phase1, self.ncols);
        let infeasibility: Q = self
            .rows
            .iter()
            .zip(&self.basis)
            .filter(|(_, &b)| b >= self.first_artificial)
            .map(|(row, _)| row[self.ncols].clone())
            .sum();
        if infeasibility.is_positive() {
            return LpOutcome::Infeasible;
        }
        // Drive zero-valued artificials out of the basis, dropping rows
        // that turn out to be redundant.
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= self.first_artificial {
                match (0..self.first_artificial).find(|&j| !self.rows[r][j].is_zero()) {
                    Some(c) => self.pivot(r, c),
                    None => {
                        self.rows.remove(r);
                        self.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        let mut cost = vec![Q::zero(); self.ncols];
        cost[..self.nvars].clone_from_slice(objective);
        if !self.optimize(&cost, self.first_artificial) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Q::zero(); self.nvars];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < self.nvars {
                x[b] = row[self.ncols].clone();
            }
        }
        let value = rational::dot(objective, &x);
        LpOutcome::Optimal { x, value }
    }
}
