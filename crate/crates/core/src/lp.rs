//! Two-phase dense simplex with Bland's anti-cycling rule.
//!
//! Works over any [`Field`]; with [`Rational`](crate::field::Rational) every
//! verdict (feasible, optimal value, unbounded) is exact. All variables are
//! non-negative; callers split free variables themselves.

use std::cmp::Ordering;

use crate::field::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint<T> {
    pub coeffs: Vec<T>,
    pub rel: Relation,
    pub rhs: T,
}

impl<T> Constraint<T> {
    pub fn new(coeffs: Vec<T>, rel: Relation, rhs: T) -> Self {
        Constraint { coeffs, rel, rhs }
    }
}

#[derive(Clone, Debug)]
pub struct LinearProgram<T> {
    pub n_vars: usize,
    pub constraints: Vec<Constraint<T>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome<T> {
    Optimal { x: Vec<T>, value: T },
    /// Phase one could not drive the artificial variables to zero; the
    /// payload is the minimal total infeasibility reached.
    Infeasible { infeasibility: T },
    Unbounded,
}

impl<T: Field> LpOutcome<T> {
    pub fn optimal_value(&self) -> Option<&T> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[T]> {
        match self {
            LpOutcome::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }
}

impl<T: Field> LinearProgram<T> {
    pub fn new(n_vars: usize) -> Self {
        LinearProgram { n_vars, constraints: Vec::new() }
    }

    pub fn push(&mut self, coeffs: Vec<T>, rel: Relation, rhs: T) -> &mut Self {
        assert_eq!(coeffs.len(), self.n_vars, "constraint width");
        self.constraints.push(Constraint::new(coeffs, rel, rhs));
        self
    }

    pub fn maximize(&self, objective: &[T]) -> LpOutcome<T> {
        assert_eq!(objective.len(), self.n_vars, "objective width");
        Tableau::build(self).solve(objective)
    }

    pub fn minimize(&self, objective: &[T]) -> LpOutcome<T> {
        let neg: Vec<T> = objective.iter().map(|c| -c.clone()).collect();
        match self.maximize(&neg) {
            LpOutcome::Optimal { x, value } => LpOutcome::Optimal { x, value: -value },
            other => other,
        }
    }

    /// Any feasible point, or the infeasibility certificate from phase one.
    pub fn feasible_point(&self) -> LpOutcome<T> {
        self.maximize(&vec![T::zero(); self.n_vars])
    }
}

struct Tableau<T> {
    /// m rows of width `n_cols + 1`; the last column is the right-hand side.
    rows: Vec<Vec<T>>,
    basis: Vec<usize>,
    n_orig: usize,
    n_cols: usize,
    artificial_start: usize,
}

impl<T: Field> Tableau<T> {
    fn build(lp: &LinearProgram<T>) -> Self {
        let n = lp.n_vars;
        // Normalise to non-negative right-hand sides.
        let normalised: Vec<Constraint<T>> = lp
            .constraints
            .iter()
            .map(|c| {
                if c.rhs.sign() == Ordering::Less {
                    let rel = match c.rel {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    Constraint::new(c.coeffs.iter().map(|v| -v.clone()).collect(), rel, -c.rhs.clone())
                } else {
                    c.clone()
                }
            })
            .collect();
        let n_slack = normalised.iter().filter(|c| c.rel != Relation::Eq).count();
        let n_art = normalised.iter().filter(|c| c.rel != Relation::Le).count();
        let artificial_start = n + n_slack;
        let n_cols = artificial_start + n_art;
        let mut rows = Vec::with_capacity(normalised.len());
        let mut basis = Vec::with_capacity(normalised.len());
        let (mut slack, mut art) = (n, artificial_start);
        for c in &normalised {
            let mut row = vec![T::zero(); n_cols + 1];
            for (dst, v) in row.iter_mut().zip(&c.coeffs) {
                *dst = v.clone();
            }
            row[n_cols] = if c.rhs.is_negligible() { T::zero() } else { c.rhs.clone() };
            match c.rel {
                Relation::Le => {
                    row[slack] = T::one();
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -T::one();
                    slack += 1;
                    row[art] = T::one();
                    basis.push(art);
                    art += 1;
                }
                Relation::Eq => {
                    row[art] = T::one();
                    basis.push(art);
                    art += 1;
                }
            }
            rows.push(row);
        }
        Tableau { rows, basis, n_orig: n, n_cols, artificial_start }
    }

    fn solve(mut self, objective: &[T]) -> LpOutcome<T> {
        if self.artificial_start < self.n_cols {
            let mut phase_one = vec![T::zero(); self.n_cols];
            for c in phase_one.iter_mut().skip(self.artificial_start) {
                *c = -T::one();
            }
            let allowed = self.n_cols;
            if !self.optimise(&phase_one, allowed) {
                unreachable!("phase one is bounded");
            }
            let value = self.objective_value(&phase_one);
            if value.sign() == Ordering::Less {
                return LpOutcome::Infeasible { infeasibility: -value };
            }
            self.drive_out_artificials();
        }
        let mut cost = vec![T::zero(); self.n_cols];
        for (c, v) in cost.iter_mut().zip(objective) {
            *c = v.clone();
        }
        if !self.optimise(&cost, self.artificial_start) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![T::zero(); self.n_orig];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < self.n_orig {
                x[b] = row[self.n_cols].clone();
            }
        }
        let value = crate::linalg::dot(objective, &x);
        LpOutcome::Optimal { x, value }
    }

    fn objective_value(&self, cost: &[T]) -> T {
        self.rows
            .iter()
            .zip(&self.basis)
            .fold(T::zero(), |acc, (row, &b)| acc + cost[b].clone() * row[self.n_cols].clone())
    }

    /// Maximises `cost` over columns `< allowed`. Returns false if unbounded.
    fn optimise(&mut self, cost: &[T], allowed: usize) -> bool {
        loop {
            // Bland: lowest-index column with positive reduced profit.
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut reduced = cost[j].clone();
                for (row, &b) in self.rows.iter().zip(&self.basis) {
                    if !row[j].is_zero() {
                        reduced = reduced - cost[b].clone() * row[j].clone();
                    }
                }
                reduced.sign() == Ordering::Greater
            });
            let Some(col) = entering else { return true };
            let mut leave: Option<(usize, T)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[col].sign() != Ordering::Greater {
                    continue;
                }
                let ratio = row[self.n_cols].clone() / row[col].clone();
                let better = match &leave {
                    None => true,
                    Some((li, lr)) if ratio.approx_eq(lr) => self.basis[i] < self.basis[*li],
                    Some((_, lr)) => ratio < *lr,
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((pivot_row, _)) = leave else { return false };
            self.pivot(pivot_row, col);
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = T::one() / self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        self.rows[r][c] = T::one();
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v = v.clone() - f.clone() * p.clone();
                }
            }
            row[c] = T::zero();
            if !T::EXACT && row[self.n_cols].is_negligible() {
                row[self.n_cols] = T::zero();
            }
        }
        self.basis[r] = c;
    }

    /// After a feasible phase one, pivot remaining (zero-level) artificials out
    /// of the basis or drop their rows as redundant.
    fn drive_out_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < self.artificial_start {
                i += 1;
                continue;
            }
            let col = (0..self.artificial_start).find(|&j| !self.rows[i][j].is_negligible());
            match col {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.basis.remove(i);
                }
            }
        }
        for row in self.rows.iter_mut() {
            for v in row[self.artificial_start..self.n_cols].iter_mut() {
                *v = T::zero();
            }
        }
    }
}
