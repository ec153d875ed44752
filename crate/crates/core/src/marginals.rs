//! Optimal value (marginal) functions and ordered-space chain rules.
//!
//! A marginal problem pairs a cost `phi(x, y)` with a convex-graph
//! constraint map `F: Q^n ⇉ Q^m`; the marginal is
//! `mu(x) = inf { phi(x,y) : y in F(x) }`. For polyhedral data the inner
//! infimum is attained whenever finite, so the epigraph of `mu` is the
//! exact projection of the epigraph of `phi + indicator(gph F)`.
//! Construction rejects problems where `mu` reaches `-inf` (detected by a
//! recession-direction LP) rather than approximating them. The conjugate
//! and subdifferential of `mu` are computed along several independent
//! routes so callers can compare them exactly.

use crate::error::{Error, Result};
use crate::linalg::{zero_vec, Matrix, Vector};
use crate::lp::{feasible_point, solve_lp, LpOutcome, Sense};
use crate::multimaps::{Multimap, RulePreimage};
use crate::num::{ExtReal, Q};
use crate::pl::{compose, conjugate_sum_rule, LinearMap, PLFunction};
use crate::polyhedra::{HPolyhedron, PolyhedralCone};

/// Cost-plus-constraint data of a marginal function.
#[derive(Clone, Debug)]
pub struct MarginalProblem {
    phi: PLFunction,
    constraint: Multimap,
}

impl MarginalProblem {
    /// Validates shapes, a nonempty domain for the marginal, and the
    /// absence of `-inf` values (no recession direction of the combined
    /// epigraph that keeps `x` fixed while driving the height down).
    pub fn new(phi: PLFunction, constraint: Multimap) -> Result<Self> {
        let (n, m) = (constraint.n(), constraint.m());
        if phi.dim() != n + m {
            return Err(Error::DimensionMismatch {
                expected: n + m,
                got: phi.dim(),
            });
        }
        let problem = MarginalProblem { phi, constraint };
        let epi_h = problem.combined_epigraph();
        if epi_h.is_empty() {
            return Err(Error::EmptyInput(
                "cost and constraint graph never meet: the marginal has empty domain",
            ));
        }
        // A direction (0, dy, -1) in the recession cone witnesses
        // mu(x) = -inf somewhere.
        let rec = epi_h.recession_cone();
        let mut probe = rec.as_poly().clone();
        for j in 0..n {
            let mut e = zero_vec(n + m + 1);
            e[j] = Q::one();
            probe.push_eq(e, Q::zero());
        }
        let mut e = zero_vec(n + m + 1);
        e[n + m] = Q::one();
        probe.push_eq(e, -Q::one());
        if feasible_point(&probe)?.is_some() {
            return Err(Error::MinusInfinityDetected);
        }
        Ok(problem)
    }

    pub fn n(&self) -> usize {
        self.constraint.n()
    }

    pub fn m(&self) -> usize {
        self.constraint.m()
    }

    pub fn cost(&self) -> &PLFunction {
        &self.phi
    }

    pub fn constraint(&self) -> &Multimap {
        &self.constraint
    }

    /// Epigraph of `phi + indicator(gph F)` in `(x, y, t)`: the epigraph
    /// rows of the cost stacked with the graph rows (height-free).
    fn combined_epigraph(&self) -> HPolyhedron {
        let (n, m) = (self.n(), self.m());
        let mut epi = self.phi.epigraph().clone();
        for (a, b) in self.constraint.graph().ineq() {
            let mut row = a.clone();
            row.push(Q::zero());
            epi.push_ineq(row, b.clone());
        }
        for (e, c) in self.constraint.graph().eq() {
            let mut row = e.clone();
            row.push(Q::zero());
            epi.push_eq(row, c.clone());
        }
        debug_assert_eq!(epi.dim(), n + m + 1);
        epi
    }

    /// `phi + indicator(gph F)` as a PL function on `(x, y)`.
    pub fn objective_with_constraint(&self) -> Result<PLFunction> {
        PLFunction::from_epigraph(self.n() + self.m(), self.combined_epigraph())
    }
}

/// `mu(x)` by one LP over the inner variables.
pub fn marginal_value(p: &MarginalProblem, x: &[Q]) -> Result<ExtReal> {
    let (n, m) = (p.n(), p.m());
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    // Slice the combined epigraph at x: variables (y, t).
    let epi_h = p.combined_epigraph();
    let mut map: Matrix = Vec::with_capacity(n + m + 1);
    for _ in 0..n {
        map.push(zero_vec(m + 1));
    }
    for j in 0..m + 1 {
        let mut row = zero_vec(m + 1);
        row[j] = Q::one();
        map.push(row);
    }
    let mut shift = x.to_vec();
    shift.extend(zero_vec(m + 1));
    let slice = epi_h.affine_preimage(&map, &shift)?;
    let mut obj = zero_vec(m + 1);
    obj[m] = Q::one();
    Ok(match solve_lp(&obj, Sense::Min, &slice)? {
        LpOutcome::Optimal { value, .. } => ExtReal::Finite(value),
        LpOutcome::Infeasible { .. } => ExtReal::PlusInfinity,
        LpOutcome::Unbounded { .. } => return Err(Error::MinusInfinityDetected),
    })
}

/// Closed form of `mu`: its epigraph is the exact shadow of the combined
/// epigraph with the inner variables eliminated.
pub fn marginal_closed_form(p: &MarginalProblem) -> Result<PLFunction> {
    let (n, m) = (p.n(), p.m());
    let epi_h = p.combined_epigraph();
    let mut keep: Vec<usize> = (0..n).collect();
    keep.push(n + m);
    let epi_mu = epi_h.project(&keep)?;
    PLFunction::from_epigraph(n, epi_mu)
}

/// Solution map `M(x) = { y in F(x) : phi(x, y) = mu(x) }`.
pub fn solution_map(p: &MarginalProblem, x: &[Q]) -> Result<HPolyhedron> {
    let (n, m) = (p.n(), p.m());
    let mu_x = match marginal_value(p, x)? {
        ExtReal::Finite(v) => v,
        _ => return Err(Error::NotInDomain),
    };
    let feasible = p.constraint.value_at(x)?;
    // phi(x, y) <= mu(x): preimage of epi phi under y -> (x, y, mu(x)).
    let mut map: Matrix = Vec::with_capacity(n + m + 1);
    for _ in 0..n {
        map.push(zero_vec(m));
    }
    for j in 0..m {
        let mut row = zero_vec(m);
        row[j] = Q::one();
        map.push(row);
    }
    map.push(zero_vec(m));
    let mut shift = x.to_vec();
    shift.extend(zero_vec(m));
    shift.push(mu_x);
    let level = p.phi.epigraph().affine_preimage(&map, &shift)?;
    Ok(feasible.intersect(&level)?.canonicalize())
}

/// The marginal conjugate along three routes: from the closed form of
/// `mu`, from the combined objective at `(x*, 0)`, and from the
/// convolution formula with its attaining split.
#[derive(Clone, Debug)]
pub struct MarginalConjugate {
    pub mu_star: ExtReal,
    pub via_sum: ExtReal,
    pub via_convolution: ExtReal,
    /// Split `(w1, w2)` with `phi*(w1) + sigma_gph(w2) = via_convolution`
    /// and `w1 + w2 = (x*, 0)`, when finite.
    pub split: Option<(Vector, Vector)>,
}

pub fn marginal_conjugate(p: &MarginalProblem, xstar: &[Q]) -> Result<MarginalConjugate> {
    let (n, m) = (p.n(), p.m());
    if xstar.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: xstar.len(),
        });
    }
    let mu = marginal_closed_form(p)?;
    let mu_star = mu.conjugate_value(xstar)?;

    let h = p.objective_with_constraint()?;
    let mut probe = xstar.to_vec();
    probe.extend(zero_vec(m));
    let via_sum = h.conjugate_value(&probe)?;

    let graph_indicator = PLFunction::indicator(p.constraint.graph())?;
    let rule = conjugate_sum_rule(&p.phi, &graph_indicator, &probe)?;
    let (via_convolution, split) = match rule.split {
        Some((w1, w2)) => {
            let v1 = p.phi.conjugate_value(&w1)?;
            let v2 = graph_indicator.conjugate_value(&w2)?;
            (v1.try_add(&v2)?, Some((w1, w2)))
        }
        None => (rule.lhs, None),
    };
    Ok(MarginalConjugate {
        mu_star,
        via_sum,
        via_convolution,
        split,
    })
}

/// The marginal subdifferential along three routes: from the closed form,
/// from the sum representation `{x* : (x*, 0) in ∂(phi + indicator)(xbar,
/// ybar)}`, and from the coderivative union
/// `{x* + u* : (x*, y*) in ∂phi, u* in D*F(y*)}` realized as a linear
/// image of the carried preimage polyhedron.
#[derive(Clone, Debug)]
pub struct MarginalSubdiff {
    pub lhs: HPolyhedron,
    pub via_sum_representation: HPolyhedron,
    pub via_coderivative: HPolyhedron,
    pub equal: bool,
    pub preimage: RulePreimage,
}

pub fn marginal_subdifferential(
    p: &MarginalProblem,
    xbar: &[Q],
    ybar: &[Q],
) -> Result<MarginalSubdiff> {
    let (n, m) = (p.n(), p.m());
    if xbar.len() != n || ybar.len() != m {
        return Err(Error::DimensionMismatch {
            expected: n + m,
            got: xbar.len() + ybar.len(),
        });
    }
    // ybar must solve the inner problem at xbar.
    let mu_x = match marginal_value(p, xbar)? {
        ExtReal::Finite(v) => v,
        _ => return Err(Error::NotASolution),
    };
    let mut at = xbar.to_vec();
    at.extend(ybar.iter().cloned());
    if !p.constraint.graph_contains(xbar, ybar)? || p.phi.evaluate(&at)? != ExtReal::Finite(mu_x) {
        return Err(Error::NotASolution);
    }

    let mu = marginal_closed_form(p)?;
    let lhs = mu.subdifferential(xbar)?;

    // Sum representation: slice of the subdifferential of the combined
    // objective at (x*, 0).
    let h = p.objective_with_constraint()?;
    let dh = h.subdifferential(&at)?;
    let mut map: Matrix = Vec::with_capacity(n + m);
    for j in 0..n {
        let mut row = zero_vec(n);
        row[j] = Q::one();
        map.push(row);
    }
    for _ in 0..m {
        map.push(zero_vec(n));
    }
    let via_sum_representation = dh
        .affine_preimage(&map, &zero_vec(n + m))?
        .canonicalize();

    // Coderivative union: preimage (x*, y*, u*) with
    // (x*, y*) in ∂phi(xbar, ybar) and (u*, -y*) in N((xbar,ybar); gph F).
    let dphi = p.phi.subdifferential(&at)?;
    let ncone = crate::supports::normal_cone(p.constraint.graph(), &at)?;
    let width = n + m + n;
    let mut pre = HPolyhedron::universe(width);
    for (a, b) in dphi.ineq() {
        let mut row = a.clone();
        row.extend(zero_vec(n));
        pre.push_ineq(row, b.clone());
    }
    for (e, c) in dphi.eq() {
        let mut row = e.clone();
        row.extend(zero_vec(n));
        pre.push_eq(row, c.clone());
    }
    for (a, b) in ncone.as_poly().ineq() {
        // a_u . u* - a_y . y* <= b
        let mut row = zero_vec(width);
        for (j, v) in a[n..n + m].iter().enumerate() {
            row[n + j] = -v;
        }
        for (j, v) in a[..n].iter().enumerate() {
            row[n + m + j] = v.clone();
        }
        pre.push_ineq(row, b.clone());
    }
    for (e, c) in ncone.as_poly().eq() {
        let mut row = zero_vec(width);
        for (j, v) in e[n..n + m].iter().enumerate() {
            row[n + j] = -v;
        }
        for (j, v) in e[..n].iter().enumerate() {
            row[n + m + j] = v.clone();
        }
        pre.push_eq(row, c.clone());
    }
    let mut sum_map: Matrix = Vec::with_capacity(n);
    for j in 0..n {
        let mut row = zero_vec(width);
        row[j] = Q::one();
        row[n + m + j] = Q::one();
        sum_map.push(row);
    }
    let via_coderivative = pre.affine_image(&sum_map, &zero_vec(n))?;
    let equal = lhs.set_equal(&via_sum_representation)? && lhs.set_equal(&via_coderivative)?;
    Ok(MarginalSubdiff {
        lhs,
        via_sum_representation,
        via_coderivative,
        equal,
        preimage: RulePreimage {
            preimage: pre,
            map: sum_map,
            shift: zero_vec(n),
        },
    })
}

/// Collapsed coderivative formula for an `x`-independent cost:
/// `∂mu(xbar) = union over y* in ∂phi_y(ybar) of D*F(xbar, ybar)(y*)`.
/// Errors unless every epigraph row of the cost ignores `x`.
pub fn marginal_subdifferential_param_free(
    p: &MarginalProblem,
    xbar: &[Q],
    ybar: &[Q],
) -> Result<HPolyhedron> {
    let (n, m) = (p.n(), p.m());
    let x_free = p
        .phi
        .epigraph()
        .ineq()
        .iter()
        .chain(p.phi.epigraph().eq())
        .all(|(a, _)| a[..n].iter().all(Q::is_zero));
    if !x_free {
        return Err(Error::ShapeMismatch(
            "cost depends on the parameter; the collapsed formula needs phi = phi(y)".into(),
        ));
    }
    // phi as a function of y alone.
    let mut epi_y = HPolyhedron::universe(m + 1);
    for (a, b) in p.phi.epigraph().ineq() {
        let mut row = a[n..].to_vec();
        epi_y.push_ineq(std::mem::take(&mut row), b.clone());
    }
    for (e, c) in p.phi.epigraph().eq() {
        let mut row = e[n..].to_vec();
        epi_y.push_eq(std::mem::take(&mut row), c.clone());
    }
    let phi_y = PLFunction::from_epigraph(m, epi_y)?;
    let dphi_y = phi_y.subdifferential(ybar)?;

    let mut at = xbar.to_vec();
    at.extend(ybar.iter().cloned());
    let ncone = crate::supports::normal_cone(p.constraint.graph(), &at)?;

    // Preimage (y*, u*): y* in ∂phi_y, (u*, -y*) in N.
    let width = m + n;
    let mut pre = HPolyhedron::universe(width);
    for (a, b) in dphi_y.ineq() {
        let mut row = a.clone();
        row.extend(zero_vec(n));
        pre.push_ineq(row, b.clone());
    }
    for (e, c) in dphi_y.eq() {
        let mut row = e.clone();
        row.extend(zero_vec(n));
        pre.push_eq(row, c.clone());
    }
    for (a, b) in ncone.as_poly().ineq() {
        let mut row = zero_vec(width);
        for (j, v) in a[n..n + m].iter().enumerate() {
            row[j] = -v;
        }
        for (j, v) in a[..n].iter().enumerate() {
            row[m + j] = v.clone();
        }
        pre.push_ineq(row, b.clone());
    }
    for (e, c) in ncone.as_poly().eq() {
        let mut row = zero_vec(width);
        for (j, v) in e[n..n + m].iter().enumerate() {
            row[j] = -v;
        }
        for (j, v) in e[..n].iter().enumerate() {
            row[m + j] = v.clone();
        }
        pre.push_eq(row, c.clone());
    }
    let mut u_map: Matrix = Vec::with_capacity(n);
    for j in 0..n {
        let mut row = zero_vec(width);
        row[m + j] = Q::one();
        u_map.push(row);
    }
    pre.affine_image(&u_map, &zero_vec(n))
}

/// Ordered-space chain problem: an ordering cone `Y+`, an affine inner
/// map, and a cost that must be nondecreasing for the cone order.
#[derive(Clone, Debug)]
pub struct OrderedChainProblem {
    yplus: PolyhedralCone,
    map: LinearMap,
    phi: PLFunction,
}

impl OrderedChainProblem {
    /// Validates the monotonicity of the cost exactly: pushing the
    /// epigraph down the cone directions must stay inside the epigraph
    /// (`epi phi - Y+ x {0}` contained in `epi phi`).
    pub fn new(yplus: PolyhedralCone, map: LinearMap, phi: PLFunction) -> Result<Self> {
        let m = phi.dim();
        if yplus.dim() != m || map.out_dim() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: yplus.dim(),
            });
        }
        let neg_cone = yplus.as_poly().negate();
        let height_zero = HPolyhedron::singleton(&[Q::zero()]);
        let shifted = phi
            .epigraph()
            .minkowski_sum(&neg_cone.product(&height_zero))?;
        if !shifted.is_subset(phi.epigraph())? {
            return Err(Error::MonotonicityViolation);
        }
        Ok(OrderedChainProblem { yplus, map, phi })
    }

    pub fn cone(&self) -> &PolyhedralCone {
        &self.yplus
    }

    pub fn inner_map(&self) -> &LinearMap {
        &self.map
    }

    pub fn cost(&self) -> &PLFunction {
        &self.phi
    }

    /// `F(x) = { y : f(x) ≺ y }`, i.e. `gph F = {(x,y) : y - f(x) in Y+}`.
    pub fn ordering_multimap(&self) -> Result<Multimap> {
        let (n, m) = (self.map.in_dim(), self.map.out_dim());
        // (x, y) -> y - Ax - b into the cone.
        let mut mmap: Matrix = Vec::with_capacity(m);
        for (i, arow) in self.map.matrix.iter().enumerate() {
            let mut row: Vector = arow.iter().map(|v| -v).collect();
            row.extend(zero_vec(m));
            row[n + i] = Q::one();
            mmap.push(row);
        }
        let shift: Vector = match &self.map.shift {
            Some(s) => s.iter().map(|v| -v).collect(),
            None => zero_vec(m),
        };
        let graph = self.yplus.as_poly().affine_preimage(&mmap, &shift)?;
        Multimap::new(n, m, graph)
    }
}

/// Both sides of an ordered-space identity.
#[derive(Clone, Debug)]
pub struct OrderedChainRule {
    pub lhs: HPolyhedron,
    pub rhs: HPolyhedron,
    pub equal: bool,
}

/// `∂(phi ∘ f)(xbar) = union over y* in ∂phi(f(xbar)) of ∂(y* ∘ f)(xbar)`;
/// for affine `f` the right side is the adjoint image of `∂phi(f(xbar))`.
pub fn ordered_chain_rule(q: &OrderedChainProblem, xbar: &[Q]) -> Result<OrderedChainRule> {
    let composed = compose(&q.phi, &q.map)?;
    if !matches!(composed.evaluate(xbar)?, ExtReal::Finite(_)) {
        return Err(Error::NotInDomain);
    }
    let lhs = composed.subdifferential(xbar)?;
    let fx = q.map.apply(xbar);
    let dphi = q.phi.subdifferential(&fx)?;
    let rhs = dphi
        .affine_image(&q.map.transpose_matrix(), &zero_vec(q.map.in_dim()))?
        .canonicalize();
    let equal = lhs.set_equal(&rhs)?;
    Ok(OrderedChainRule { lhs, rhs, equal })
}

/// The key identity behind the ordered chain rule:
/// `D*F(xbar, f(xbar))(y*) = ∂(y* ∘ f)(xbar) = {A^T y*}` for the
/// epigraphical map `F` of the ordering, whenever `y*` is a subgradient of
/// the cost at `f(xbar)`.
pub fn epigraphical_coderivative_check(
    q: &OrderedChainProblem,
    xbar: &[Q],
    ystar: &[Q],
) -> Result<OrderedChainRule> {
    let fx = q.map.apply(xbar);
    let dphi = q.phi.subdifferential(&fx)?;
    if !dphi.contains(ystar)? {
        return Err(Error::NotASubgradient);
    }
    let f = q.ordering_multimap()?;
    let lhs = crate::multimaps::coderivative(&f, xbar, &fx, ystar)?;
    let rhs = HPolyhedron::singleton(&q.map.adjoint_apply(ystar));
    let equal = lhs.set_equal(&rhs)?;
    Ok(OrderedChainRule { lhs, rhs, equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pl::PLFunction;

    fn qv(vals: &[i64]) -> Vector {
        vals.iter().map(|&n| Q::from_int(n)).collect()
    }

    fn fin(n: i64, d: i64) -> ExtReal {
        ExtReal::Finite(Q::new(n, d))
    }

    /// phi(x, y) = y over F(x) = [x, x+1]: mu(x) = x.
    fn band_problem() -> MarginalProblem {
        let phi = PLFunction::from_max_affine(&[(qv(&[0, 1]), Q::zero())], None).unwrap();
        let graph = HPolyhedron::new(
            2,
            vec![(qv(&[1, -1]), Q::zero()), (qv(&[-1, 1]), Q::one())],
            vec![],
        )
        .unwrap();
        let map = Multimap::new(1, 1, graph).unwrap();
        MarginalProblem::new(phi, map).unwrap()
    }

    #[test]
    fn marginal_of_band() {
        let p = band_problem();
        assert_eq!(marginal_value(&p, &qv(&[0])).unwrap(), fin(0, 1));
        assert_eq!(marginal_value(&p, &qv(&[3])).unwrap(), fin(3, 1));
        let mu = marginal_closed_form(&p).unwrap();
        let ident = PLFunction::from_max_affine(&[(qv(&[1]), Q::zero())], None).unwrap();
        assert!(mu.equal(&ident).unwrap());
    }

    #[test]
    fn solution_map_of_band() {
        let p = band_problem();
        let m = solution_map(&p, &qv(&[2])).unwrap();
        assert!(m.set_equal(&HPolyhedron::singleton(&qv(&[2]))).unwrap());
    }

    #[test]
    fn solution_map_flat_objective() {
        // phi = 0: M(x) = F(x).
        let phi = PLFunction::constant(2, Q::zero());
        let graph = HPolyhedron::new(
            2,
            vec![(qv(&[0, 1]), Q::one()), (qv(&[0, -1]), Q::zero())],
            vec![],
        )
        .unwrap();
        let map = Multimap::new(1, 1, graph).unwrap();
        let p = MarginalProblem::new(phi, map).unwrap();
        let m = solution_map(&p, &qv(&[7])).unwrap();
        assert!(m
            .set_equal(&HPolyhedron::interval(Q::zero(), Q::one()))
            .unwrap());
    }

    #[test]
    fn minus_infinity_rejected() {
        // phi(x, y) = y over F(x) = all of Q: mu = -inf.
        let phi = PLFunction::from_max_affine(&[(qv(&[0, 1]), Q::zero())], None).unwrap();
        let map = Multimap::new(1, 1, HPolyhedron::universe(2)).unwrap();
        assert_eq!(
            MarginalProblem::new(phi, map).err(),
            Some(Error::MinusInfinityDetected)
        );
    }

    #[test]
    fn marginal_conjugate_of_band() {
        // mu(x) = x, so mu* = indicator of {1}.
        let p = band_problem();
        let out = marginal_conjugate(&p, &qv(&[1])).unwrap();
        assert_eq!(out.mu_star, fin(0, 1));
        assert_eq!(out.via_sum, fin(0, 1));
        assert_eq!(out.via_convolution, fin(0, 1));
        let (w1, w2) = out.split.unwrap();
        assert_eq!(w1.len(), 2);
        assert_eq!(w2.len(), 2);
        let out = marginal_conjugate(&p, &qv(&[2])).unwrap();
        assert_eq!(out.mu_star, ExtReal::PlusInfinity);
        assert_eq!(out.via_sum, ExtReal::PlusInfinity);
        assert_eq!(out.via_convolution, ExtReal::PlusInfinity);
    }

    #[test]
    fn marginal_conjugate_constant_constraint() {
        // F constant [0,1], phi(x,y) = y: mu = 0, mu* = indicator of 0.
        let phi = PLFunction::from_max_affine(&[(qv(&[0, 1]), Q::zero())], None).unwrap();
        let graph = HPolyhedron::new(
            2,
            vec![(qv(&[0, 1]), Q::one()), (qv(&[0, -1]), Q::zero())],
            vec![],
        )
        .unwrap();
        let p = MarginalProblem::new(phi, Multimap::new(1, 1, graph).unwrap()).unwrap();
        let out = marginal_conjugate(&p, &qv(&[0])).unwrap();
        assert_eq!(out.mu_star, fin(0, 1));
        assert_eq!(out.via_sum, out.mu_star);
        assert_eq!(out.via_convolution, out.mu_star);
    }

    #[test]
    fn marginal_subdifferential_of_band() {
        let p = band_problem();
        let out = marginal_subdifferential(&p, &qv(&[0]), &qv(&[0])).unwrap();
        assert!(out.equal);
        assert!(out
            .lhs
            .set_equal(&HPolyhedron::singleton(&qv(&[1])))
            .unwrap());
        // A non-minimizer is rejected: phi(0, 1) = 1 > mu(0) = 0.
        assert_eq!(
            marginal_subdifferential(&p, &qv(&[0]), &qv(&[1])).err(),
            Some(Error::NotASolution)
        );
    }

    #[test]
    fn parameter_free_collapse() {
        // phi = y (independent of x) over the band.
        let p = band_problem();
        let collapsed =
            marginal_subdifferential_param_free(&p, &qv(&[0]), &qv(&[0])).unwrap();
        let full = marginal_subdifferential(&p, &qv(&[0]), &qv(&[0])).unwrap();
        assert!(collapsed.set_equal(&full.lhs).unwrap());
    }

    fn relu() -> PLFunction {
        PLFunction::from_max_affine(&[(qv(&[1]), Q::zero()), (qv(&[0]), Q::zero())], None).unwrap()
    }

    fn halfline_cone() -> PolyhedralCone {
        PolyhedralCone::new(HPolyhedron::new(1, vec![(qv(&[-1]), Q::zero())], vec![]).unwrap())
            .unwrap()
    }

    #[test]
    fn ordered_chain_rule_scaling() {
        // Y+ = [0, inf), f(x) = 2x, phi = max(y, 0): both sides are [0, 2].
        let q = OrderedChainProblem::new(
            halfline_cone(),
            LinearMap::new(vec![qv(&[2])]).unwrap(),
            relu(),
        )
        .unwrap();
        let out = ordered_chain_rule(&q, &qv(&[0])).unwrap();
        assert!(out.equal);
        assert!(out
            .lhs
            .set_equal(&HPolyhedron::interval(Q::zero(), Q::from_int(2)))
            .unwrap());
    }

    #[test]
    fn ordered_chain_rule_linear_cost() {
        // phi(y) = 3y is Y+-nondecreasing; both sides are {A^T 3}.
        let phi = PLFunction::from_max_affine(&[(qv(&[3]), Q::zero())], None).unwrap();
        let q = OrderedChainProblem::new(
            halfline_cone(),
            LinearMap::new(vec![qv(&[2])]).unwrap(),
            phi,
        )
        .unwrap();
        let out = ordered_chain_rule(&q, &qv(&[1])).unwrap();
        assert!(out.equal);
        assert!(out
            .lhs
            .set_equal(&HPolyhedron::singleton(&qv(&[6])))
            .unwrap());
    }

    #[test]
    fn monotonicity_validation() {
        // phi(y) = -y is decreasing for Y+ = [0, inf): rejected.
        let phi = PLFunction::from_max_affine(&[(qv(&[-1]), Q::zero())], None).unwrap();
        assert_eq!(
            OrderedChainProblem::new(
                halfline_cone(),
                LinearMap::new(vec![qv(&[1])]).unwrap(),
                phi,
            )
            .err(),
            Some(Error::MonotonicityViolation)
        );
    }

    #[test]
    fn subgradients_of_nondecreasing_cost_pair_with_cone() {
        // Proposition check: subgradients at 0 of max(y, 0) pair
        // nonnegatively with the cone generators.
        let q = OrderedChainProblem::new(
            halfline_cone(),
            LinearMap::new(vec![qv(&[1])]).unwrap(),
            relu(),
        )
        .unwrap();
        let dphi = q.cost().subdifferential(&qv(&[0])).unwrap();
        let gens = dphi.h_to_v().unwrap();
        for v in &gens.vertices {
            // cone generator z = 1
            assert!(!v[0].is_negative());
        }
    }

    #[test]
    fn epigraphical_coderivative_identity() {
        let q = OrderedChainProblem::new(
            halfline_cone(),
            LinearMap::new(vec![qv(&[2])]).unwrap(),
            relu(),
        )
        .unwrap();
        // y* = 1/2 lies in ∂phi(0) = [0, 1].
        let out = epigraphical_coderivative_check(&q, &qv(&[0]), &[Q::new(1, 2)]).unwrap();
        assert!(out.equal);
        assert!(out
            .lhs
            .set_equal(&HPolyhedron::singleton(&[Q::one()]))
            .unwrap());
        // y* outside the subdifferential is rejected.
        assert_eq!(
            epigraphical_coderivative_check(&q, &qv(&[0]), &qv(&[2])).err(),
            Some(Error::NotASubgradient)
        );
    }
}
