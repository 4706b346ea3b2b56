//! Thin adapter over `microlp` so the rest of the crate builds problems row by row.

use crate::error::{Error, Result};
use microlp::{ComparisonOp, OptimizationDirection, Problem, Variable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

pub struct Lp {
    problem: Problem,
    vars: Vec<Variable>,
}

pub struct LpSolution {
    pub objective: f64,
    pub values: Vec<f64>,
}

impl Lp {
    pub fn new(sense: Sense) -> Self {
        let dir = match sense {
            Sense::Minimize => OptimizationDirection::Minimize,
            Sense::Maximize => OptimizationDirection::Maximize,
        };
        Lp {
            problem: Problem::new(dir),
            vars: Vec::new(),
        }
    }

    /// Adds a variable and returns its column index. Use infinite bounds for free variables.
    pub fn var(&mut self, objective: f64, lo: f64, hi: f64) -> usize {
        self.vars.push(self.problem.add_var(objective, (lo, hi)));
        self.vars.len() - 1
    }

    pub fn constraint(&mut self, terms: &[(usize, f64)], cmp: Cmp, rhs: f64) {
        let row: Vec<(Variable, f64)> = terms.iter().map(|&(i, c)| (self.vars[i], c)).collect();
        let op = match cmp {
            Cmp::Le => ComparisonOp::Le,
            Cmp::Ge => ComparisonOp::Ge,
            Cmp::Eq => ComparisonOp::Eq,
        };
        self.problem.add_constraint(row.as_slice(), op, rhs);
    }

    pub fn solve(&self) -> Result<LpSolution> {
        let sol = self
            .problem
            .solve()
            .map_err(|e| Error::Lp(e.to_string()))?
            .into_solution()
            .map_err(|_| Error::Lp("solve interrupted".into()))?;
        Ok(LpSolution {
            objective: sol.objective(),
            values: self.vars.iter().map(|&v| sol.var_value(v)).collect(),
        })
    }
}
