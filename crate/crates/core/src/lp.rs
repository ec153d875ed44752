//! Exact-arithmetic linear programming over H-polyhedra.
//!
//! A two-phase primal simplex with Bland's anti-cycling pivot rule, run
//! entirely in rational arithmetic. Free variables are split into positive
//! and negative parts, inequality rows get slacks, and phase one minimizes
//! a sum of artificials (no big-M constants). Every certificate this module
//! returns re-verifies by direct substitution:
//!
//! * `Optimal` carries the optimal point together with dual multipliers
//!   that are nonnegative on inequality rows and satisfy exact
//!   complementary slackness and strong duality;
//! * `Unbounded` carries a feasible point and an objective-improving
//!   recession ray;
//! * `Infeasible` carries a Farkas certificate: a nonnegative combination
//!   of the rows that contracts to `0 <= negative`.
//!
//! The pivot rule is deterministic, so identical inputs produce
//! bit-identical outputs.

use crate::error::{Error, Result};
use crate::linalg::{dot, is_zero_vec, vec_sub, Vector};
use crate::num::Q;
use crate::polyhedra::HPolyhedron;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

/// Dual multipliers for the rows of the solved polyhedron.
///
/// The multipliers certify the maximization form: with `c` the objective
/// of the equivalent max problem (the given objective for `Max`, its
/// negation for `Min`), they satisfy `A^T λ + E^T μ = c`, `λ >= 0`, and
/// `b^T λ + d^T μ` equals the optimal value of that max problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualMultipliers {
    pub ineq: Vector,
    pub eq: Vector,
}

/// Farkas certificate of infeasibility: `λ >= 0` with
/// `λ^T A + μ^T E = 0` and `λ^T b + μ^T d < 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub ineq: Vector,
    pub eq: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: Q,
        point: Vector,
        duals: DualMultipliers,
    },
    Unbounded {
        point: Vector,
        ray: Vector,
    },
    Infeasible {
        certificate: FarkasCertificate,
    },
}

impl LpOutcome {
    pub fn optimal_value(&self) -> Option<&Q> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn optimal_point(&self) -> Option<&Vector> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpOutcome::Infeasible { .. })
    }
}

/// Optimizes `objective` over `p` exactly.
pub fn solve_lp(objective: &[Q], sense: Sense, p: &HPolyhedron) -> Result<LpOutcome> {
    if objective.len() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: objective.len(),
        });
    }
    let internal_obj: Vector = match sense {
        Sense::Max => objective.to_vec(),
        Sense::Min => objective.iter().map(|c| -c).collect(),
    };
    let outcome = solve_max(&internal_obj, p)?;
    let outcome = match (sense, outcome) {
        (Sense::Min, LpOutcome::Optimal { value, point, duals }) => LpOutcome::Optimal {
            value: -value,
            point,
            duals,
        },
        (_, other) => other,
    };
    verify_outcome(objective, sense, p, &outcome)?;
    Ok(outcome)
}

/// Feasibility probe: any point of `p`, or `None` when `p` is empty.
pub fn feasible_point(p: &HPolyhedron) -> Result<Option<Vector>> {
    match solve_lp(&vec![Q::zero(); p.dim()], Sense::Max, p)? {
        LpOutcome::Optimal { point, .. } => Ok(Some(point)),
        LpOutcome::Unbounded { point, .. } => Ok(Some(point)),
        LpOutcome::Infeasible { .. } => Ok(None),
    }
}

struct Tableau {
    /// Rows in canonical form; last column is the right-hand side.
    rows: Vec<Vector>,
    /// Basic variable of each row.
    basis: Vec<usize>,
    /// Reduced-cost row; last entry is minus the current objective value.
    cost: Vector,
    ncols: usize,
    n: usize,
    n_ineq: usize,
    n_rows: usize,
    /// Orientation applied to each original row to make the rhs nonnegative.
    sigma: Vec<Q>,
}

impl Tableau {
    fn art_col(&self, row: usize) -> usize {
        2 * self.n + self.n_ineq + row
    }

    fn is_artificial(&self, col: usize) -> bool {
        col >= 2 * self.n + self.n_ineq
    }

    fn build(p: &HPolyhedron) -> Self {
        let n = p.dim();
        let n_ineq = p.ineq().len();
        let n_rows = n_ineq + p.eq().len();
        let ncols = 2 * n + n_ineq + n_rows;
        let mut rows = Vec::with_capacity(n_rows);
        let mut sigma = Vec::with_capacity(n_rows);
        let all_rows = p
            .ineq()
            .iter()
            .map(|(a, b)| (a, b, true))
            .chain(p.eq().iter().map(|(e, c)| (e, c, false)));
        for (idx, (a, b, is_ineq)) in all_rows.enumerate() {
            let flip = b.is_negative();
            let s = if flip { -Q::one() } else { Q::one() };
            let mut row = vec![Q::zero(); ncols + 1];
            for (j, v) in a.iter().enumerate() {
                row[j] = &s * v;
                row[n + j] = -&row[j];
            }
            if is_ineq {
                row[2 * n + idx] = s.clone();
            }
            row[2 * n + n_ineq + idx] = Q::one();
            row[ncols] = &s * b;
            rows.push(row);
            sigma.push(s);
        }
        let basis: Vec<usize> = (0..n_rows).map(|i| 2 * n + n_ineq + i).collect();
        Tableau {
            rows,
            basis,
            cost: vec![Q::zero(); ncols + 1],
            ncols,
            n,
            n_ineq,
            n_rows,
            sigma,
        }
    }

    /// Rebuilds the reduced-cost row for the objective `col_cost`.
    fn set_costs(&mut self, col_cost: &dyn Fn(usize) -> Q) {
        for j in 0..=self.ncols {
            let mut acc = if j < self.ncols { col_cost(j) } else { Q::zero() };
            for (i, row) in self.rows.iter().enumerate() {
                if !row[j].is_zero() {
                    let cb = col_cost(self.basis[i]);
                    if !cb.is_zero() {
                        acc -= &(&cb * &row[j]);
                    }
                }
            }
            self.cost[j] = acc;
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        if inv != Q::one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    if !pv.is_zero() {
                        *v -= &(&f * pv);
                    }
                }
            }
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for (v, pv) in self.cost.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &(&f * pv);
                }
            }
        }
        self.basis[r] = c;
    }

    /// Primal simplex iteration. Entering columns follow Dantzig's
    /// largest-coefficient rule until the objective stalls on degenerate
    /// pivots, then switch permanently to Bland's rule, which guarantees
    /// termination. Both rules break ties by column index, and the leaving
    /// row breaks ratio ties by the lowest basic-variable index, so the
    /// pivot sequence is deterministic.
    /// Returns `Ok` on optimality, `Err(col)` on an unbounded column.
    fn simplex(&mut self, allow_artificial: bool) -> std::result::Result<(), usize> {
        let stall_limit = 4 * (self.n_rows + 1);
        let mut stalled = 0usize;
        let mut bland = false;
        loop {
            let mut entering: Option<usize> = None;
            if bland {
                for j in 0..self.ncols {
                    if !allow_artificial && self.is_artificial(j) {
                        continue;
                    }
                    if self.cost[j].is_positive() {
                        entering = Some(j);
                        break;
                    }
                }
            } else {
                let mut best: Option<(usize, &Q)> = None;
                for j in 0..self.ncols {
                    if !allow_artificial && self.is_artificial(j) {
                        continue;
                    }
                    if self.cost[j].is_positive()
                        && best.as_ref().is_none_or(|(_, c)| self.cost[j] > **c)
                    {
                        best = Some((j, &self.cost[j]));
                    }
                }
                entering = best.map(|(j, _)| j);
            }
            let Some(e) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, Q)> = None;
            for i in 0..self.n_rows {
                if self.rows[i][e].is_positive() {
                    let ratio = &self.rows[i][self.ncols] / &self.rows[i][e];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((r, ratio)) => {
                    if ratio.is_zero() {
                        stalled += 1;
                        if stalled > stall_limit {
                            bland = true;
                        }
                    } else {
                        stalled = 0;
                    }
                    self.pivot(r, e);
                }
                None => return Err(e),
            }
        }
    }

    fn rhs(&self, i: usize) -> &Q {
        &self.rows[i][self.ncols]
    }

    /// Current basic solution restricted to the original variables.
    fn point(&self) -> Vector {
        let mut pos = vec![Q::zero(); self.n];
        let mut neg = vec![Q::zero(); self.n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n {
                pos[b] = self.rhs(i).clone();
            } else if b < 2 * self.n {
                neg[b - self.n] = self.rhs(i).clone();
            }
        }
        vec_sub(&pos, &neg)
    }

    /// Row duals read off the artificial columns' reduced costs, mapped
    /// back through the row orientation.
    fn duals(&self, art_cost: &Q) -> Vector {
        (0..self.n_rows)
            .map(|i| {
                let y = art_cost - &self.cost[self.art_col(i)];
                &self.sigma[i] * &y
            })
            .collect()
    }
}

fn solve_max(objective: &[Q], p: &HPolyhedron) -> Result<LpOutcome> {
    let n = p.dim();
    let n_ineq = p.ineq().len();

    if p.ineq().is_empty() && p.eq().is_empty() {
        // Unconstrained: optimal only for the zero objective.
        if is_zero_vec(objective) {
            return Ok(LpOutcome::Optimal {
                value: Q::zero(),
                point: vec![Q::zero(); n],
                duals: DualMultipliers {
                    ineq: Vector::new(),
                    eq: Vector::new(),
                },
            });
        }
        return Ok(LpOutcome::Unbounded {
            point: vec![Q::zero(); n],
            ray: objective.to_vec(),
        });
    }

    let mut t = Tableau::build(p);

    // Phase one: maximize minus the sum of artificials.
    let phase1 = |j: usize| {
        if j >= 2 * n + n_ineq {
            -Q::one()
        } else {
            Q::zero()
        }
    };
    t.set_costs(&phase1);
    t.simplex(true)
        .map_err(|_| Error::Internal("phase-1 objective cannot be unbounded"))?;
    // The cost row's rhs entry is minus the objective value, i.e. the
    // artificial sum for phase one.
    let infeasibility = t.cost[t.ncols].clone();
    if infeasibility.is_negative() {
        return Err(Error::Internal("negative artificial sum"));
    }
    if infeasibility.is_positive() {
        let y = t.duals(&-Q::one());
        return Ok(LpOutcome::Infeasible {
            certificate: FarkasCertificate {
                ineq: y[..n_ineq].to_vec(),
                eq: y[n_ineq..].to_vec(),
            },
        });
    }

    // Drive any basic artificial out; rows that end up all-zero outside the
    // artificial block are redundant and stay inert with a zero dual.
    for r in 0..t.n_rows {
        if t.is_artificial(t.basis[r]) {
            let col = (0..2 * n + n_ineq).find(|&j| !t.rows[r][j].is_zero());
            if let Some(c) = col {
                t.pivot(r, c);
            }
        }
    }

    // Phase two.
    let obj: Vector = objective.to_vec();
    let phase2 = move |j: usize| {
        if j < n {
            obj[j].clone()
        } else if j < 2 * n {
            -&obj[j - n]
        } else {
            Q::zero()
        }
    };
    t.set_costs(&phase2);
    match t.simplex(false) {
        Ok(()) => {
            let point = t.point();
            let value = dot(objective, &point);
            let y = t.duals(&Q::zero());
            Ok(LpOutcome::Optimal {
                value,
                point,
                duals: DualMultipliers {
                    ineq: y[..n_ineq].to_vec(),
                    eq: y[n_ineq..].to_vec(),
                },
            })
        }
        Err(e) => {
            // Entering column e improves forever: assemble the ray.
            let mut delta = vec![Q::zero(); 2 * n];
            if e < 2 * n {
                delta[e] = Q::one();
            }
            for (i, &b) in t.basis.iter().enumerate() {
                if b < 2 * n && !t.rows[i][e].is_zero() {
                    delta[b] = -&t.rows[i][e];
                }
            }
            let ray: Vector = (0..n).map(|j| &delta[j] - &delta[n + j]).collect();
            Ok(LpOutcome::Unbounded {
                point: t.point(),
                ray,
            })
        }
    }
}

/// Feasibility of `sum(lambda_i * cols_i) + sum(mu_j * free_j) = target`
/// with `lambda >= 0` and `mu` free: a standard-form phase-one simplex
/// whose row count is the target dimension, so very wide systems (many
/// generators) stay cheap. Deterministic (Bland).
pub fn nonneg_solution_exists(
    cols: &[Vector],
    free_cols: &[Vector],
    target: &[Q],
) -> Result<bool> {
    let m = target.len();
    for c in cols.iter().chain(free_cols) {
        if c.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: c.len(),
            });
        }
    }
    let n = cols.len() + 2 * free_cols.len();
    let ncols = n + m;
    // Rows: columns then +/- free splits then the artificial identity.
    let mut rows: Vec<Vector> = Vec::with_capacity(m);
    let mut sigma: Vec<bool> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = target[i].is_negative();
        let s = if flip { -Q::one() } else { Q::one() };
        let mut row = Vec::with_capacity(ncols + 1);
        for c in cols {
            row.push(&s * &c[i]);
        }
        for f in free_cols {
            row.push(&s * &f[i]);
        }
        for f in free_cols {
            row.push(-&(&s * &f[i]));
        }
        for k in 0..m {
            row.push(if k == i { Q::one() } else { Q::zero() });
        }
        row.push(&s * &target[i]);
        rows.push(row);
        sigma.push(flip);
    }
    let mut basis: Vec<usize> = (0..m).map(|i| n + i).collect();
    // Reduced costs for maximizing minus the artificial sum.
    let mut cost = vec![Q::zero(); ncols + 1];
    for j in 0..=ncols {
        let mut acc = Q::zero();
        for row in &rows {
            acc += &row[j];
        }
        // c_j - c_B^T col_j with c = -1 exactly on artificials.
        cost[j] = if (n..ncols).contains(&j) {
            acc - Q::one()
        } else {
            acc
        };
    }
    loop {
        let Some(e) = (0..ncols).find(|&j| cost[j].is_positive()) else {
            break;
        };
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..m {
            if rows[i][e].is_positive() {
                let ratio = &rows[i][ncols] / &rows[i][e];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && basis[i] < basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            return Err(Error::Internal("phase-1 cannot be unbounded"));
        };
        let inv = rows[r][e].recip();
        for v in rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[e].is_zero() {
                let f = row[e].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    if !pv.is_zero() {
                        *v -= &(&f * pv);
                    }
                }
            }
        }
        if !cost[e].is_zero() {
            let f = cost[e].clone();
            for (v, pv) in cost.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &(&f * pv);
                }
            }
        }
        basis[r] = e;
    }
    // Feasible iff the artificial sum (the cost row's rhs) vanished.
    Ok(cost[ncols].is_zero())
}

fn verify_outcome(
    objective: &[Q],
    sense: Sense,
    p: &HPolyhedron,
    outcome: &LpOutcome,
) -> Result<()> {
    let ok = match outcome {
        LpOutcome::Optimal {
            value,
            point,
            duals,
        } => verify_optimal(objective, sense, p, value, point, duals),
        LpOutcome::Unbounded { point, ray } => verify_unbounded(objective, sense, p, point, ray),
        LpOutcome::Infeasible { certificate } => verify_farkas(p, certificate),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Internal("simplex certificate failed verification"))
    }
}

/// Exact re-check of an optimality certificate: primal feasibility, dual
/// feasibility, complementary slackness, and strong duality.
pub fn verify_optimal(
    objective: &[Q],
    sense: Sense,
    p: &HPolyhedron,
    value: &Q,
    point: &[Q],
    duals: &DualMultipliers,
) -> bool {
    if point.len() != p.dim() || dot(objective, point) != *value {
        return false;
    }
    if !p.contains_unchecked(point) {
        return false;
    }
    if duals.ineq.len() != p.ineq().len() || duals.eq.len() != p.eq().len() {
        return false;
    }
    if duals.ineq.iter().any(Q::is_negative) {
        return false;
    }
    // A^T λ + E^T μ = c for the maximization form.
    let c_max: Vector = match sense {
        Sense::Max => objective.to_vec(),
        Sense::Min => objective.iter().map(|c| -c).collect(),
    };
    for j in 0..p.dim() {
        let mut acc = Q::zero();
        for ((a, _), l) in p.ineq().iter().zip(&duals.ineq) {
            if !a[j].is_zero() {
                acc += &(&a[j] * l);
            }
        }
        for ((e, _), m) in p.eq().iter().zip(&duals.eq) {
            if !e[j].is_zero() {
                acc += &(&e[j] * m);
            }
        }
        if acc != c_max[j] {
            return false;
        }
    }
    // Strong duality in the maximization form.
    let mut dual_value = Q::zero();
    for ((_, b), l) in p.ineq().iter().zip(&duals.ineq) {
        dual_value += &(b * l);
    }
    for ((_, d), m) in p.eq().iter().zip(&duals.eq) {
        dual_value += &(d * m);
    }
    let primal_max = match sense {
        Sense::Max => value.clone(),
        Sense::Min => -value,
    };
    if dual_value != primal_max {
        return false;
    }
    // Complementary slackness.
    for ((a, b), l) in p.ineq().iter().zip(&duals.ineq) {
        if l.is_positive() && dot(a, point) != *b {
            return false;
        }
    }
    true
}

/// Exact re-check of an unboundedness certificate.
pub fn verify_unbounded(
    objective: &[Q],
    sense: Sense,
    p: &HPolyhedron,
    point: &[Q],
    ray: &[Q],
) -> bool {
    if !p.contains_unchecked(point) || is_zero_vec(ray) {
        return false;
    }
    for (a, _) in p.ineq() {
        if dot(a, ray).is_positive() {
            return false;
        }
    }
    for (e, _) in p.eq() {
        if !dot(e, ray).is_zero() {
            return false;
        }
    }
    let gain = dot(objective, ray);
    match sense {
        Sense::Max => gain.is_positive(),
        Sense::Min => gain.is_negative(),
    }
}

/// Exact re-check of a Farkas infeasibility certificate.
pub fn verify_farkas(p: &HPolyhedron, cert: &FarkasCertificate) -> bool {
    if cert.ineq.len() != p.ineq().len() || cert.eq.len() != p.eq().len() {
        return false;
    }
    if cert.ineq.iter().any(Q::is_negative) {
        return false;
    }
    for j in 0..p.dim() {
        let mut acc = Q::zero();
        for ((a, _), l) in p.ineq().iter().zip(&cert.ineq) {
            if !a[j].is_zero() {
                acc += &(&a[j] * l);
            }
        }
        for ((e, _), m) in p.eq().iter().zip(&cert.eq) {
            if !e[j].is_zero() {
                acc += &(&e[j] * m);
            }
        }
        if !acc.is_zero() {
            return false;
        }
    }
    let mut bound = Q::zero();
    for ((_, b), l) in p.ineq().iter().zip(&cert.ineq) {
        bound += &(b * l);
    }
    for ((_, d), m) in p.eq().iter().zip(&cert.eq) {
        bound += &(d * m);
    }
    bound.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::HPolyhedron;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    fn qv(vals: &[i64]) -> Vector {
        vals.iter().map(|&n| Q::from_int(n)).collect()
    }

    #[test]
    fn box_vertex_optimum() {
        let p = HPolyhedron::hypercube(2, Q::one());
        let out = solve_lp(&qv(&[1, 1]), Sense::Max, &p).unwrap();
        match out {
            LpOutcome::Optimal { value, point, .. } => {
                assert_eq!(value, Q::from_int(2));
                assert_eq!(point, qv(&[1, 1]));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn unbounded_halfline() {
        // max x over {x >= 0}
        let p = HPolyhedron::new(1, vec![(qv(&[-1]), Q::zero())], vec![]).unwrap();
        let out = solve_lp(&qv(&[1]), Sense::Max, &p).unwrap();
        match out {
            LpOutcome::Unbounded { point, ray } => {
                assert_eq!(point, qv(&[0]));
                assert!(ray[0].is_positive());
            }
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_interval() {
        // {x <= -1, x >= 2}
        let p = HPolyhedron::new(
            1,
            vec![(qv(&[1]), Q::from_int(-1)), (qv(&[-1]), Q::from_int(-2))],
            vec![],
        )
        .unwrap();
        let out = solve_lp(&qv(&[1]), Sense::Max, &p).unwrap();
        assert!(out.is_infeasible());
    }

    #[test]
    fn equality_rows_two_phase() {
        // max x + y subject to x + y = 1, x, y in [0, 5]
        let mut p = HPolyhedron::box_bounds(&qv(&[0, 0]), &qv(&[5, 5])).unwrap();
        p.push_eq(qv(&[1, 1]), Q::one());
        let out = solve_lp(&qv(&[1, 1]), Sense::Max, &p).unwrap();
        assert_eq!(out.optimal_value(), Some(&Q::one()));
        // min of x over the same segment
        let out = solve_lp(&qv(&[1, 0]), Sense::Min, &p).unwrap();
        assert_eq!(out.optimal_value(), Some(&Q::zero()));
    }

    #[test]
    fn fractional_data_stays_exact() {
        // max (2/3)x over {x <= 5/7}
        let p = HPolyhedron::new(1, vec![(qv(&[1]), q(5, 7))], vec![]).unwrap();
        let out = solve_lp(&[q(2, 3)], Sense::Max, &p).unwrap();
        assert_eq!(out.optimal_value(), Some(&q(10, 21)));
    }

    #[test]
    fn duals_certify_strong_duality() {
        // max 3x + 4y over the unit box: duals must reproduce the value.
        let p = HPolyhedron::hypercube(2, Q::one());
        let out = solve_lp(&qv(&[3, 4]), Sense::Max, &p).unwrap();
        let LpOutcome::Optimal { value, duals, .. } = &out else {
            panic!("expected optimal");
        };
        let mut dual_value = Q::zero();
        for ((_, b), l) in p.ineq().iter().zip(&duals.ineq) {
            dual_value += &(b * l);
        }
        assert_eq!(dual_value, *value);
    }

    #[test]
    fn degenerate_lp_terminates() {
        // Many redundant rows through the origin force degenerate pivots.
        let rows = vec![
            (qv(&[1, 0]), Q::zero()),
            (qv(&[0, 1]), Q::zero()),
            (qv(&[1, 1]), Q::zero()),
            (qv(&[1, 2]), Q::zero()),
            (qv(&[2, 1]), Q::zero()),
            (qv(&[-1, 0]), Q::one()),
            (qv(&[0, -1]), Q::one()),
        ];
        let p = HPolyhedron::new(2, rows, vec![]).unwrap();
        let out = solve_lp(&qv(&[1, 1]), Sense::Max, &p).unwrap();
        assert_eq!(out.optimal_value(), Some(&Q::zero()));
    }

    #[test]
    fn deterministic_output() {
        let p = HPolyhedron::hypercube(3, Q::from_int(2));
        let a = solve_lp(&qv(&[1, -2, 3]), Sense::Min, &p).unwrap();
        let b = solve_lp(&qv(&[1, -2, 3]), Sense::Min, &p).unwrap();
        assert_eq!(a, b);
    }
}
