//! Exact linear programming and the linear programs built on digraphs.

mod programs;
mod simplex;

pub use programs::*;
pub use simplex::{
    solve_lp, solve_lp_with, CertificateError, Constraint, LpError, LpProblem, LpSolution,
    LpStatus, Optimum, PivotRule, Relation, SolverOptions,
};
