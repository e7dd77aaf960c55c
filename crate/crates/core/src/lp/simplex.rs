//! Exact two-phase primal simplex over the rationals.
//!
//! The tableau is kept fraction-free: every entry is an integer and the
//! true tableau is `T / d`, where `d > 0` is the previous pivot element.
//! Each pivot `T[i][j] ← (p·T[i][j] − T[i][c]·T[r][j]) / d` divides
//! exactly, so no gcd normalization happens inside the loop.
//!
//! The leaving row is chosen by the minimum ratio test with ties broken
//! toward the lowest-index basic variable; see [`PivotRule`] for the
//! entering column. Every solve is deterministic.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("constraint {row} has {found} coefficients, expected {expected}")]
    RowLength {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// `minimize objective·x` subject to the constraints and `x ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem {
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
}

impl LpProblem {
    pub fn minimize(objective: Vec<Rational>) -> Self {
        LpProblem {
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn add(
        &mut self,
        coeffs: Vec<Rational>,
        relation: Relation,
        rhs: Rational,
    ) -> Result<&mut Self, LpError> {
        if coeffs.len() != self.num_vars() {
            return Err(LpError::RowLength {
                row: self.constraints.len(),
                found: coeffs.len(),
                expected: self.num_vars(),
            });
        }
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        Ok(self)
    }

    /// Plain-text form: a `vars k` header, a `min` row, then one row per
    /// constraint as `a_1 … a_k >= b` or `a_1 … a_k = b`, all `num/den`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "vars {}", self.num_vars()).unwrap();
        out.push_str("min");
        for c in &self.objective {
            write!(out, " {}", rational::Canonical(c)).unwrap();
        }
        out.push('\n');
        for row in &self.constraints {
            let mut first = true;
            for a in &row.coeffs {
                if !first {
                    out.push(' ');
                }
                first = false;
                write!(out, "{}", rational::Canonical(a)).unwrap();
            }
            let rel = match row.relation {
                Relation::Ge => ">=",
                Relation::Eq => "=",
            };
            if !first {
                out.push(' ');
            }
            writeln!(out, "{rel} {}", rational::Canonical(&row.rhs)).unwrap();
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self, LpError> {
        let err = |line: usize, message: &str| LpError::Parse {
            line,
            message: message.to_string(),
        };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or_else(|| err(1, "missing `vars` header"))?;
        let k: usize = header
            .strip_prefix("vars ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| err(ln, "expected `vars <count>`"))?;
        let parse_all = |ln: usize, toks: &[&str]| -> Result<Vec<Rational>, LpError> {
            toks.iter()
                .map(|t| rational::parse(t).map_err(|e| err(ln, &e.to_string())))
                .collect()
        };
        let (ln, obj) = lines.next().ok_or_else(|| err(ln, "missing `min` row"))?;
        let toks: Vec<&str> = obj.split_whitespace().collect();
        if toks.first() != Some(&"min") {
            return Err(err(ln, "expected `min` row"));
        }
        let objective = parse_all(ln, &toks[1..])?;
        if objective.len() != k {
            return Err(err(ln, "objective length differs from `vars`"));
        }
        let mut lp = LpProblem::minimize(objective);
        for (ln, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let pos = toks
                .iter()
                .position(|t| *t == ">=" || *t == "=")
                .ok_or_else(|| err(ln, "missing relation"))?;
            if pos + 2 != toks.len() {
                return Err(err(ln, "expected a single right-hand side"));
            }
            let relation = if toks[pos] == ">=" {
                Relation::Ge
            } else {
                Relation::Eq
            };
            let coeffs = parse_all(ln, &toks[..pos])?;
            let rhs = parse_all(ln, &toks[pos + 1..])?.remove(0);
            lp.add(coeffs, relation, rhs)
                .map_err(|e| err(ln, &e.to_string()))?;
        }
        Ok(lp)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum {
    pub value: Rational,
    pub assignment: Vec<Rational>,
    /// One multiplier per constraint; a dual-feasible certificate of optimality.
    pub duals: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpSolution {
    Optimal(Optimum),
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

impl LpSolution {
    pub fn status(&self) -> LpStatus {
        match self {
            LpSolution::Optimal(_) => LpStatus::Optimal,
            LpSolution::Infeasible => LpStatus::Infeasible,
            LpSolution::Unbounded => LpStatus::Unbounded,
        }
    }

    pub fn optimum(&self) -> Option<&Optimum> {
        match self {
            LpSolution::Optimal(o) => Some(o),
            _ => None,
        }
    }

    pub fn into_optimum(self) -> Option<Optimum> {
        match self {
            LpSolution::Optimal(o) => Some(o),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertificateError {
    #[error("assignment has wrong length or a negative entry")]
    BadAssignment,
    #[error("constraint {0} is violated")]
    PrimalViolated(usize),
    #[error("reported value differs from objective at the assignment")]
    ValueMismatch,
    #[error("dual multiplier of constraint {0} has the wrong sign")]
    DualSign(usize),
    #[error("reduced cost of variable {0} is negative")]
    DualViolated(usize),
    #[error("dual objective differs from primal value")]
    DualityGap,
}

impl Optimum {
    /// Re-substitutes the assignment and the dual multipliers into the
    /// problem. Success proves optimality by weak duality.
    pub fn verify(&self, lp: &LpProblem) -> Result<(), CertificateError> {
        let k = lp.num_vars();
        if self.assignment.len() != k || self.assignment.iter().any(Signed::is_negative) {
            return Err(CertificateError::BadAssignment);
        }
        if self.duals.len() != lp.constraints.len() {
            return Err(CertificateError::DualSign(self.duals.len()));
        }
        for (i, row) in lp.constraints.iter().enumerate() {
            let lhs = dot(&row.coeffs, &self.assignment);
            let ok = match row.relation {
                Relation::Ge => lhs >= row.rhs,
                Relation::Eq => lhs == row.rhs,
            };
            if !ok {
                return Err(CertificateError::PrimalViolated(i));
            }
            if row.relation == Relation::Ge && self.duals[i].is_negative() {
                return Err(CertificateError::DualSign(i));
            }
        }
        if dot(&lp.objective, &self.assignment) != self.value {
            return Err(CertificateError::ValueMismatch);
        }
        for j in 0..k {
            let col = lp
                .constraints
                .iter()
                .zip(&self.duals)
                .fold(rational::zero(), |acc, (row, y)| acc + &row.coeffs[j] * y);
            if col > lp.objective[j] {
                return Err(CertificateError::DualViolated(j));
            }
        }
        let dual_value = lp
            .constraints
            .iter()
            .zip(&self.duals)
            .fold(rational::zero(), |acc, (row, y)| acc + &row.rhs * y);
        if dual_value != self.value {
            return Err(CertificateError::DualityGap);
        }
        Ok(())
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Integer row equal to `scale · row`, with `scale > 0` rational.
fn integer_row(row: &[Rational]) -> (Vec<BigInt>, Rational) {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = row
        .iter()
        .map(|q| q.numer() * (&lcm / q.denom()))
        .collect();
    let gcd = ints
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() || gcd.is_one() {
        return (ints, Rational::from_integer(lcm));
    }
    let scale = Rational::new(lcm, gcd.clone());
    (ints.into_iter().map(|x| x / &gcd).collect(), scale)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Aux {
    Surplus(usize),
    Artificial(usize),
}

/// Consecutive degenerate pivots tolerated before falling back to Bland.
const DEGENERATE_LIMIT: usize = 50;

struct Tableau {
    /// `rows` constraint rows, then the phase-2 row, then the phase-1 row.
    t: Vec<Vec<BigInt>>,
    d: BigInt,
    rows: usize,
    cols: usize,
    basis: Vec<usize>,
    /// Columns allowed to enter the basis.
    eligible: Vec<bool>,
    rule: PivotRule,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.cols
    }

    fn pivot(&mut self, r: usize, c: usize) {
        if self.t[r][c].is_negative() {
            for x in self.t[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot_row = std::mem::take(&mut self.t[r]);
        let p = pivot_row[c].clone();
        debug_assert!(p.is_positive());
        let d = std::mem::replace(&mut self.d, p.clone());
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c].clone();
            if f.is_zero() {
                if p != d {
                    for x in row.iter_mut() {
                        if !x.is_zero() {
                            *x = &*x * &p / &d;
                        }
                    }
                }
                continue;
            }
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                let mut v = &*x * &p;
                if !y.is_zero() {
                    v -= &f * y;
                }
                *x = if d.is_one() { v } else { v / &d };
            }
        }
        self.t[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Runs Bland's rule on objective row `obj` until optimal or unbounded.
    /// Returns false if unbounded.
    fn optimize(&mut self, obj: usize) -> bool {
        let rhs = self.rhs();
        let mut degenerate_run = 0usize;
        let dantzig = self.rule == PivotRule::DantzigThenBland;
        loop {
            let entering = if dantzig && degenerate_run < DEGENERATE_LIMIT {
                (0..self.cols)
                    .filter(|&j| self.eligible[j] && self.t[obj][j].is_negative())
                    .min_by(|&a, &b| self.t[obj][a].cmp(&self.t[obj][b]).then(a.cmp(&b)))
            } else {
                (0..self.cols).find(|&j| self.eligible[j] && self.t[obj][j].is_negative())
            };
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<usize> = None;
            for i in 0..self.rows {
                if !self.t[i][c].is_positive() {
                    continue;
                }
                best = match best {
                    None => Some(i),
                    Some(b) => {
                        // rhs_i / t_ic  vs  rhs_b / t_bc
                        let lhs = &self.t[i][rhs] * &self.t[b][c];
                        let cur = &self.t[b][rhs] * &self.t[i][c];
                        if lhs < cur || (lhs == cur && self.basis[i] < self.basis[b]) {
                            Some(i)
                        } else {
                            Some(b)
                        }
                    }
                };
            }
            match best {
                Some(r) => {
                    if self.t[r][rhs].is_zero() {
                        degenerate_run += 1;
                    } else {
                        degenerate_run = 0;
                    }
                    self.pivot(r, c)
                }
                None => return false,
            }
        }
    }
}

/// Entering-column rule. Both are deterministic and terminate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotRule {
    /// Lowest-index improving column on every pivot.
    Bland,
    /// Most negative reduced cost (lowest index on ties); switches to
    /// Bland after a run of degenerate pivots and back after the next
    /// pivot that strictly improves the objective.
    #[default]
    DantzigThenBland,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolverOptions {
    pub rule: PivotRule,
}

pub fn solve_lp(lp: &LpProblem) -> LpSolution {
    solve_lp_with(lp, SolverOptions::default())
}

pub fn solve_lp_with(lp: &LpProblem, options: SolverOptions) -> LpSolution {
    let k = lp.num_vars();
    let m = lp.constraints.len();

    // Column layout: structural, then one surplus per `>=` row, then
    // one artificial per row that lacks a natural starting basic column.
    let mut aux_cols: Vec<Aux> = Vec::new();
    let mut surplus_of = vec![None; m];
    for (i, row) in lp.constraints.iter().enumerate() {
        if row.relation == Relation::Ge {
            surplus_of[i] = Some(k + aux_cols.len());
            aux_cols.push(Aux::Surplus(i));
        }
    }
    let mut negated = vec![false; m];
    let mut artificial_of = vec![None; m];
    for (i, row) in lp.constraints.iter().enumerate() {
        negated[i] = match row.relation {
            Relation::Ge => !row.rhs.is_positive(),
            Relation::Eq => row.rhs.is_negative(),
        };
        let slack_is_basic = row.relation == Relation::Ge && negated[i];
        if !slack_is_basic {
            artificial_of[i] = Some(k + aux_cols.len());
            aux_cols.push(Aux::Artificial(i));
        }
    }
    let cols = k + aux_cols.len();
    let is_artificial = |j: usize| j >= k && j < cols && matches!(aux_cols[j - k], Aux::Artificial(_));

    let mut t = Vec::with_capacity(m + 2);
    let mut scales = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for (i, row) in lp.constraints.iter().enumerate() {
        let mut q: Vec<Rational> = row.coeffs.clone();
        q.push(row.rhs.clone());
        if negated[i] {
            for x in q.iter_mut() {
                *x = -&*x;
            }
        }
        let (ints, scale) = integer_row(&q);
        let mut full = vec![BigInt::zero(); cols + 1];
        full[..k].clone_from_slice(&ints[..k]);
        full[cols] = ints[k].clone();
        if let Some(s) = surplus_of[i] {
            full[s] = if negated[i] { BigInt::one() } else { -BigInt::one() };
        }
        if let Some(a) = artificial_of[i] {
            full[a] = BigInt::one();
            basis.push(a);
        } else {
            basis.push(surplus_of[i].unwrap());
        }
        scales.push(scale);
        t.push(full);
    }

    let (obj_ints, obj_scale) = integer_row(&lp.objective);
    let mut phase2 = vec![BigInt::zero(); cols + 1];
    phase2[..k].clone_from_slice(&obj_ints);
    t.push(phase2);

    let mut phase1 = vec![BigInt::zero(); cols + 1];
    for i in 0..m {
        if artificial_of[i].is_some() {
            for j in (0..=cols).filter(|&j| !is_artificial(j)) {
                phase1[j] -= &t[i][j];
            }
        }
    }
    t.push(phase1);

    let eligible = (0..cols).map(|j| !is_artificial(j)).collect();
    let mut tab = Tableau {
        t,
        d: BigInt::one(),
        rows: m,
        cols,
        basis,
        eligible,
        rule: options.rule,
    };
    let obj2 = m;
    let obj1 = m + 1;
    let rhs = cols;

    if artificial_of.iter().any(Option::is_some) {
        tab.optimize(obj1);
        if !tab.t[obj1][rhs].is_zero() {
            return LpSolution::Infeasible;
        }
        // Drive zero-level artificials out of the basis where possible;
        // rows where that fails are redundant and stay frozen at zero.
        for r in 0..m {
            let b = tab.basis[r];
            if is_artificial(b) {
                if let Some(c) = (0..cols).find(|&j| tab.eligible[j] && !tab.t[r][j].is_zero()) {
                    tab.pivot(r, c);
                }
            }
        }
    }

    if !tab.optimize(obj2) {
        return LpSolution::Unbounded;
    }

    let d = Rational::from_integer(tab.d.clone());
    let mut assignment = vec![rational::zero(); k];
    for r in 0..m {
        if tab.basis[r] < k {
            assignment[tab.basis[r]] = Rational::from_integer(tab.t[r][rhs].clone()) / &d;
        }
    }
    let reduced = |j: usize| Rational::from_integer(tab.t[obj2][j].clone()) / (&d * &obj_scale);
    let duals = (0..m)
        .map(|i| match (surplus_of[i], artificial_of[i]) {
            (Some(s), _) => &scales[i] * reduced(s),
            (None, Some(a)) => {
                let y = &scales[i] * reduced(a);
                if negated[i] {
                    y
                } else {
                    -y
                }
            }
            (None, None) => unreachable!("every row has a surplus or an artificial column"),
        })
        .collect();
    let value = dot(&lp.objective, &assignment);
    LpSolution::Optimal(Optimum {
        value,
        assignment,
        duals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn solve_checked(lp: &LpProblem) -> LpSolution {
        let sol = solve_lp(lp);
        if let Some(opt) = sol.optimum() {
            opt.verify(lp).expect("certificate");
        }
        sol
    }

    #[test]
    fn single_lower_bound() {
        let mut lp = LpProblem::minimize(r(&[1]));
        lp.add(r(&[1]), Relation::Ge, int(3)).unwrap();
        let opt = solve_checked(&lp).into_optimum().unwrap();
        assert_eq!(opt.value, int(3));
        assert_eq!(opt.duals, r(&[1]));
    }

    #[test]
    fn covering_two_vars() {
        let mut lp = LpProblem::minimize(r(&[1, 1]));
        lp.add(r(&[1, 1]), Relation::Ge, int(1)).unwrap();
        lp.add(r(&[1, 0]), Relation::Ge, int(0)).unwrap();
        lp.add(r(&[0, 1]), Relation::Ge, int(0)).unwrap();
        assert_eq!(solve_checked(&lp).into_optimum().unwrap().value, int(1));
    }

    #[test]
    fn three_cycle_stable_lp() {
        // columns {0},{1},{2}; vertex v is covered by {v} and {v-1}
        let mut lp = LpProblem::minimize(r(&[1, 1, 1]));
        lp.add(r(&[1, 0, 1]), Relation::Ge, int(1)).unwrap();
        lp.add(r(&[1, 1, 0]), Relation::Ge, int(1)).unwrap();
        lp.add(r(&[0, 1, 1]), Relation::Ge, int(1)).unwrap();
        let opt = solve_checked(&lp).into_optimum().unwrap();
        assert_eq!(opt.value, ratio(3, 2));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LpProblem::minimize(r(&[1]));
        lp.add(r(&[-1]), Relation::Ge, int(1)).unwrap();
        assert_eq!(solve_lp(&lp), LpSolution::Infeasible);

        let mut lp = LpProblem::minimize(r(&[-1, 0]));
        lp.add(r(&[1, -1]), Relation::Ge, int(0)).unwrap();
        assert_eq!(solve_lp(&lp), LpSolution::Unbounded);
    }

    #[test]
    fn equality_rows_and_fractions() {
        // min 2x + 3y  s.t.  x + y = 7/2,  x - y >= -3,  x <= 1 as -x >= -1
        let mut lp = LpProblem::minimize(r(&[2, 3]));
        lp.add(r(&[1, 1]), Relation::Eq, ratio(7, 2)).unwrap();
        lp.add(r(&[1, -1]), Relation::Ge, int(-3)).unwrap();
        lp.add(r(&[-1, 0]), Relation::Ge, int(-1)).unwrap();
        let opt = solve_checked(&lp).into_optimum().unwrap();
        assert_eq!(opt.assignment, vec![int(1), ratio(5, 2)]);
        assert_eq!(opt.value, ratio(19, 2));
    }

    #[test]
    fn negative_equality_rhs_and_redundant_row() {
        let mut lp = LpProblem::minimize(r(&[1, 2]));
        lp.add(r(&[-1, -1]), Relation::Eq, int(-2)).unwrap();
        lp.add(r(&[2, 2]), Relation::Eq, int(4)).unwrap();
        let opt = solve_checked(&lp).into_optimum().unwrap();
        assert_eq!(opt.value, int(2));
    }

    #[test]
    fn zero_objective_feasibility() {
        let mut lp = LpProblem::minimize(r(&[0, 0, 0]));
        lp.add(r(&[1, 1, 1]), Relation::Eq, int(1)).unwrap();
        lp.add(r(&[0, -1, 1]), Relation::Ge, int(0)).unwrap();
        lp.add(r(&[1, 0, -1]), Relation::Ge, int(0)).unwrap();
        lp.add(r(&[-1, 1, 0]), Relation::Ge, int(0)).unwrap();
        let opt = solve_checked(&lp).into_optimum().unwrap();
        assert_eq!(opt.assignment, vec![ratio(1, 3); 3]);
    }

    #[test]
    fn no_constraints() {
        let lp = LpProblem::minimize(r(&[1, 0]));
        let opt = solve_checked(&lp).into_optimum().unwrap();
        assert_eq!(opt.value, int(0));
        assert_eq!(solve_lp(&LpProblem::minimize(r(&[-1]))), LpSolution::Unbounded);
    }

    #[test]
    fn row_length_checked() {
        let mut lp = LpProblem::minimize(r(&[1, 1]));
        assert!(matches!(
            lp.add(r(&[1]), Relation::Ge, int(1)),
            Err(LpError::RowLength { row: 0, found: 1, expected: 2 })
        ));
    }

    /// Vertex-enumeration oracle: with x ≥ 0 the feasible region is
    /// pointed, so a bounded-below optimum sits at the unique solution of
    /// some k linearly independent tight hyperplanes.
    fn brute_force_min(lp: &LpProblem) -> Option<Rational> {
        let k = lp.num_vars();
        let mut planes: Vec<(Vec<Rational>, Rational)> = lp
            .constraints()
            .iter()
            .map(|c| (c.coeffs.clone(), c.rhs.clone()))
            .collect();
        for j in 0..k {
            let mut e = vec![int(0); k];
            e[j] = int(1);
            planes.push((e, int(0)));
        }
        let feasible = |x: &[Rational]| {
            x.iter().all(|v| !v.is_negative())
                && lp.constraints().iter().all(|c| {
                    let lhs = dot(&c.coeffs, x);
                    match c.relation {
                        Relation::Ge => lhs >= c.rhs,
                        Relation::Eq => lhs == c.rhs,
                    }
                })
        };
        let mut best: Option<Rational> = None;
        let total = planes.len();
        for mask in 0u32..1 << total {
            if mask.count_ones() as usize != k {
                continue;
            }
            let chosen: Vec<&(Vec<Rational>, Rational)> =
                (0..total).filter(|i| mask >> i & 1 == 1).map(|i| &planes[i]).collect();
            if let Some(x) = gauss_solve(&chosen) {
                if feasible(&x) {
                    let v = dot(lp.objective(), &x);
                    best = Some(match best {
                        Some(b) if b <= v => b,
                        _ => v,
                    });
                }
            }
        }
        best
    }

    fn gauss_solve(rows: &[&(Vec<Rational>, Rational)]) -> Option<Vec<Rational>> {
        let k = rows.len();
        let mut m: Vec<Vec<Rational>> = rows
            .iter()
            .map(|(a, b)| {
                let mut r = a.clone();
                r.push(b.clone());
                r
            })
            .collect();
        for col in 0..k {
            let piv = (col..k).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, piv);
            let lead = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x = &*x / &lead;
            }
            let pivot_row = m[col].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, p) in row.iter_mut().zip(&pivot_row) {
                        *x -= &f * p;
                    }
                }
            }
        }
        Some(m.into_iter().map(|r| r[k].clone()).collect())
    }

    #[test]
    fn oracle_on_three_cycle_program() {
        let mut lp = LpProblem::minimize(r(&[1, 1, 1]));
        lp.add(r(&[1, 0, 1]), Relation::Ge, int(1)).unwrap();
        lp.add(r(&[1, 1, 0]), Relation::Ge, int(1)).unwrap();
        lp.add(r(&[0, 1, 1]), Relation::Ge, int(1)).unwrap();
        assert_eq!(brute_force_min(&lp), Some(ratio(3, 2)));
    }

    fn arb_lp() -> impl proptest::strategy::Strategy<Value = LpProblem> {
        use proptest::prelude::*;
        (1usize..=3).prop_flat_map(|k| {
            let row = (
                proptest::collection::vec(-3i64..=3, k),
                prop_oneof![4 => Just(Relation::Ge), 1 => Just(Relation::Eq)],
                -3i64..=4,
                1i64..=3,
            );
            (
                proptest::collection::vec(0i64..=3, k),
                proptest::collection::vec(row, 0..=4),
            )
                .prop_map(|(obj, rows)| {
                    let mut lp = LpProblem::minimize(r(&obj));
                    for (a, rel, b, den) in rows {
                        lp.add(r(&a), rel, ratio(b, den)).unwrap();
                    }
                    lp
                })
        })
    }

    proptest::proptest! {
        #[test]
        fn matches_vertex_enumeration(lp in arb_lp()) {
            let expected = brute_force_min(&lp);
            for rule in [PivotRule::Bland, PivotRule::DantzigThenBland] {
                let sol = solve_lp_with(&lp, SolverOptions { rule });
                match (&expected, sol.optimum()) {
                    (None, None) => proptest::prop_assert_eq!(sol.status(), LpStatus::Infeasible),
                    (Some(v), Some(opt)) => {
                        proptest::prop_assert_eq!(&opt.value, v);
                        proptest::prop_assert_eq!(opt.verify(&lp), Ok(()));
                    }
                    _ => proptest::prop_assert!(false, "status mismatch: {:?} vs {:?}", expected, sol),
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let mut lp = LpProblem::minimize(vec![ratio(1, 2), int(-3)]);
        lp.add(vec![int(1), ratio(2, 3)], Relation::Ge, int(1)).unwrap();
        lp.add(vec![int(0), int(1)], Relation::Eq, ratio(-5, 7)).unwrap();
        let text = lp.to_text();
        assert_eq!(
            text,
            "vars 2\nmin 1/2 -3/1\n1/1 2/3 >= 1/1\n0/1 1/1 = -5/7\n"
        );
        assert_eq!(LpProblem::parse_text(&text).unwrap(), lp);
        assert!(LpProblem::parse_text("vars 2\nmin 1 1\n1 >= 1\n").is_err());
    }
}
