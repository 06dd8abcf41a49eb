//! Dense two-phase primal simplex over exact rationals.
//!
//! Pivoting follows Bland's rule (lowest eligible column enters, ties in the
//! ratio test leave by lowest basic column), so every solve terminates and the
//! result depends only on the row and column order of the program.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VarBounds {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

/// `sense objective·x` subject to the rows and per-variable bounds.
/// Variables are free unless bounded.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<VarBounds>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpResult {
    pub status: LpStatus,
    pub value: Option<Rational>,
    pub point: Option<Vector>,
}

impl LpResult {
    fn without_point(status: LpStatus) -> Self {
        Self {
            status,
            value: None,
            point: None,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

impl LinearProgram {
    pub fn new(sense: Sense, objective: Vec<Rational>) -> Self {
        let m = objective.len();
        Self {
            sense,
            objective,
            constraints: Vec::new(),
            bounds: vec![VarBounds::default(); m],
        }
    }

    pub fn maximize(objective: Vec<Rational>) -> Self {
        Self::new(Sense::Maximize, objective)
    }

    pub fn minimize(objective: Vec<Rational>) -> Self {
        Self::new(Sense::Minimize, objective)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn constrain(
        &mut self,
        coeffs: Vec<Rational>,
        relation: Relation,
        rhs: Rational,
    ) -> &mut Self {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    pub fn bound(
        &mut self,
        var: usize,
        lower: Option<Rational>,
        upper: Option<Rational>,
    ) -> &mut Self {
        self.bounds[var] = VarBounds { lower, upper };
        self
    }

    pub fn nonnegative(&mut self, var: usize) -> &mut Self {
        self.bound(var, Some(Rational::zero()), None)
    }

    fn check_shape(&self) -> Result<()> {
        let m = self.num_vars();
        if self.bounds.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: self.bounds.len(),
            });
        }
        if let Some(c) = self.constraints.iter().find(|c| c.coeffs.len() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: c.coeffs.len(),
            });
        }
        Ok(())
    }

    /// Exact feasibility of `point` against every row and bound.
    pub fn is_feasible(&self, point: &Vector) -> bool {
        if point.dim() != self.num_vars() {
            return false;
        }
        let rows_ok = self.constraints.iter().all(|c| {
            let lhs = point.dot(&c.coeffs);
            match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Eq => lhs == c.rhs,
                Relation::Ge => lhs >= c.rhs,
            }
        });
        let bounds_ok = self.bounds.iter().zip(point.coords()).all(|(b, x)| {
            b.lower.as_ref().is_none_or(|l| x >= l) && b.upper.as_ref().is_none_or(|u| x <= u)
        });
        rows_ok && bounds_ok
    }
}

/// How one original variable is rebuilt from standard-form columns.
struct VarMap {
    offset: Rational,
    terms: Vec<(usize, bool)>,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    obj: Vec<Rational>,
    basis: Vec<usize>,
    cols: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rational {
        &self.rows[r][self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x /= &p;
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let eliminate = |row: &mut Vec<Rational>| {
            if row[c].is_zero() {
                return;
            }
            let k = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &k * p;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Sets the reduced-cost row for maximising `cost` over the current basis.
    fn price(&mut self, cost: &[Rational]) {
        let mut obj: Vec<Rational> = cost.to_vec();
        obj.push(Rational::zero());
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (o, x) in obj.iter_mut().zip(&self.rows[r]) {
                if !x.is_zero() {
                    *o -= cb * x;
                }
            }
        }
        self.obj = obj;
    }

    fn run(&mut self, allowed: &[bool]) -> Outcome {
        loop {
            let Some(enter) = (0..self.cols).find(|&j| allowed[j] && self.obj[j].is_positive())
            else {
                return Outcome::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return Outcome::Unbounded,
            }
        }
    }
}

/// Solves `lp` exactly.
pub fn solve(lp: &LinearProgram) -> Result<LpResult> {
    lp.check_shape()?;
    for b in &lp.bounds {
        if let (Some(l), Some(u)) = (&b.lower, &b.upper) {
            if l > u {
                return Ok(LpResult::without_point(LpStatus::Infeasible));
            }
        }
    }

    // Standard form: every column nonnegative.
    let mut maps = Vec::with_capacity(lp.num_vars());
    let mut n_std = 0usize;
    let mut extra_rows: Vec<(usize, Rational)> = Vec::new();
    for b in &lp.bounds {
        let map = match (&b.lower, &b.upper) {
            (Some(l), upper) => {
                let col = n_std;
                n_std += 1;
                if let Some(u) = upper {
                    extra_rows.push((col, u - l));
                }
                VarMap {
                    offset: l.clone(),
                    terms: vec![(col, true)],
                }
            }
            (None, Some(u)) => {
                let col = n_std;
                n_std += 1;
                VarMap {
                    offset: u.clone(),
                    terms: vec![(col, false)],
                }
            }
            (None, None) => {
                let col = n_std;
                n_std += 2;
                VarMap {
                    offset: Rational::zero(),
                    terms: vec![(col, true), (col + 1, false)],
                }
            }
        };
        maps.push(map);
    }

    let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = Vec::new();
    for c in &lp.constraints {
        let mut coeffs = vec![Rational::zero(); n_std];
        let mut rhs = c.rhs.clone();
        for (a, map) in c.coeffs.iter().zip(&maps) {
            if a.is_zero() {
                continue;
            }
            rhs -= a * &map.offset;
            for &(col, positive) in &map.terms {
                if positive {
                    coeffs[col] += a;
                } else {
                    coeffs[col] -= a;
                }
            }
        }
        rows.push((coeffs, c.relation, rhs));
    }
    for (col, cap) in extra_rows {
        let mut coeffs = vec![Rational::zero(); n_std];
        coeffs[col] = Rational::from_integer(1.into());
        rows.push((coeffs, Relation::Le, cap));
    }
    for (coeffs, rel, rhs) in rows.iter_mut() {
        if rhs.is_negative() {
            for x in coeffs.iter_mut() {
                *x = -&*x;
            }
            *rhs = -&*rhs;
            *rel = match rel {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }

    let n_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let n_art = rows.iter().filter(|r| r.1 != Relation::Le).count();
    let cols = n_std + n_slack + n_art;
    let art_start = n_std + n_slack;

    let mut tab_rows = Vec::with_capacity(rows.len());
    let mut basis = Vec::with_capacity(rows.len());
    let (mut next_slack, mut next_art) = (n_std, art_start);
    let one = Rational::from_integer(1.into());
    for (coeffs, rel, rhs) in rows {
        let mut row = coeffs;
        row.resize(cols + 1, Rational::zero());
        row[cols] = rhs;
        match rel {
            Relation::Le => {
                row[next_slack] = one.clone();
                basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -one.clone();
                next_slack += 1;
                row[next_art] = one.clone();
                basis.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                row[next_art] = one.clone();
                basis.push(next_art);
                next_art += 1;
            }
        }
        tab_rows.push(row);
    }

    let mut tab = Tableau {
        rows: tab_rows,
        obj: Vec::new(),
        basis,
        cols,
    };

    // Phase 1: drive the artificial columns to zero.
    let all = vec![true; cols];
    if n_art > 0 {
        let mut cost = vec![Rational::zero(); cols];
        for c in cost.iter_mut().skip(art_start) {
            *c = -one.clone();
        }
        tab.price(&cost);
        tab.run(&all);
        if !tab.obj[cols].is_zero() {
            return Ok(LpResult::without_point(LpStatus::Infeasible));
        }
        let mut r = 0;
        while r < tab.rows.len() {
            if tab.basis[r] >= art_start {
                match (0..art_start).find(|&j| !tab.rows[r][j].is_zero()) {
                    Some(j) => tab.pivot(r, j),
                    None => {
                        tab.rows.remove(r);
                        tab.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }

    // Phase 2 on the real objective, artificial columns barred.
    let mut cost = vec![Rational::zero(); cols];
    for (a, map) in lp.objective.iter().zip(&maps) {
        let a = match lp.sense {
            Sense::Maximize => a.clone(),
            Sense::Minimize => -a,
        };
        for &(col, positive) in &map.terms {
            if positive {
                cost[col] += &a;
            } else {
                cost[col] -= &a;
            }
        }
    }
    let allowed: Vec<bool> = (0..cols).map(|j| j < art_start).collect();
    tab.price(&cost);
    if let Outcome::Unbounded = tab.run(&allowed) {
        return Ok(LpResult::without_point(LpStatus::Unbounded));
    }

    let mut std_vals = vec![Rational::zero(); cols];
    for (r, &b) in tab.basis.iter().enumerate() {
        std_vals[b] = tab.rhs(r).clone();
    }
    let point: Vec<Rational> = maps
        .iter()
        .map(|m| {
            m.terms
                .iter()
                .fold(m.offset.clone(), |acc, &(col, positive)| {
                    if positive {
                        acc + &std_vals[col]
                    } else {
                        acc - &std_vals[col]
                    }
                })
        })
        .collect();
    let point = Vector::new(point);
    let value = point.dot(&lp.objective);
    debug_assert!(lp.is_feasible(&point));
    Ok(LpResult {
        status: LpStatus::Optimal,
        value: Some(value),
        point: Some(point),
    })
}
