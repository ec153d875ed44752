//! Proper piecewise-linear convex functions and their calculus.
//!
//! The canonical representation is the epigraph polyhedron: a function on
//! `Q^n` is carried by an `HPolyhedron` in `n+1` variables whose last
//! coordinate is the epigraph height. Every construction in the conjugate
//! and subdifferential calculus is then a polyhedral operation on
//! epigraphs: conjugates are supports of the epigraph, subdifferentials
//! are slices of its normal cone, sums and convolutions are projections
//! and Minkowski sums. Properness is enforced at construction; the value
//! `-inf` is not representable.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, transpose, zero_vec, Matrix, Vector};
use crate::lp::{solve_lp, LpOutcome, Sense};
use crate::num::{ExtReal, Q};
use crate::polyhedra::{Generators, HPolyhedron};
use crate::supports::{check_qualification, normal_cone, support, support_intersection, QCReport};

/// Proper convex piecewise-linear function, canonically its epigraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PLFunction {
    dim: usize,
    epi: HPolyhedron,
}

/// Linear map `x -> Ax` with an optional shift making it affine where a
/// rule permits. The adjoint is the transpose.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearMap {
    #[serde(rename = "A")]
    pub matrix: Matrix,
    #[serde(rename = "b", default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<Vector>,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let cols = matrix.first().map_or(0, Vec::len);
        if matrix.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged matrix".into()));
        }
        Ok(LinearMap {
            matrix,
            shift: None,
        })
    }

    pub fn with_shift(matrix: Matrix, shift: Vector) -> Result<Self> {
        let mut m = LinearMap::new(matrix)?;
        if m.out_dim() != shift.len() {
            return Err(Error::ShapeMismatch("shift length must match rows".into()));
        }
        m.shift = Some(shift);
        Ok(m)
    }

    pub fn out_dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn in_dim(&self) -> usize {
        self.matrix.first().map_or(0, Vec::len)
    }

    pub fn is_linear(&self) -> bool {
        self.shift.is_none()
    }

    pub fn apply(&self, x: &[Q]) -> Vector {
        let mut y: Vector = self.matrix.iter().map(|row| dot(row, x)).collect();
        if let Some(s) = &self.shift {
            for (yi, si) in y.iter_mut().zip(s) {
                *yi += si;
            }
        }
        y
    }

    /// `A* y = A^T y`, ignoring any shift.
    pub fn adjoint_apply(&self, ystar: &[Q]) -> Vector {
        let t = transpose(&self.matrix, self.in_dim());
        t.iter().map(|row| dot(row, ystar)).collect()
    }

    pub fn transpose_matrix(&self) -> Matrix {
        transpose(&self.matrix, self.in_dim())
    }
}

impl PLFunction {
    /// Wraps an epigraph polyhedron, enforcing properness: the set must be
    /// nonempty, every row must tolerate the upward ray, and at least one
    /// row must bound the height from below (otherwise the function is
    /// `-inf` on its domain).
    pub fn from_epigraph(dim: usize, epi: HPolyhedron) -> Result<Self> {
        if epi.dim() != dim + 1 {
            return Err(Error::DimensionMismatch {
                expected: dim + 1,
                got: epi.dim(),
            });
        }
        for (a, _) in epi.ineq() {
            if a[dim].is_positive() {
                return Err(Error::NotAnEpigraph(
                    "inequality row excludes the upward ray",
                ));
            }
        }
        for (e, _) in epi.eq() {
            if !e[dim].is_zero() {
                return Err(Error::NotAnEpigraph("equality row pins the height"));
            }
        }
        if !epi.ineq().iter().any(|(a, _)| a[dim].is_negative()) {
            return Err(Error::ImproperFunction(
                "no row bounds the height from below; value -inf on the domain",
            ));
        }
        if epi.is_empty() {
            return Err(Error::ImproperFunction("empty epigraph"));
        }
        Ok(PLFunction { dim, epi })
    }

    /// `max_i (<a_i, x> + b_i)` restricted to an optional domain.
    pub fn from_max_affine(pieces: &[(Vector, Q)], domain: Option<&HPolyhedron>) -> Result<Self> {
        let Some((first, _)) = pieces.first() else {
            return Err(Error::ImproperFunction("max of zero affine pieces"));
        };
        let dim = first.len();
        let mut epi = HPolyhedron::universe(dim + 1);
        for (a, b) in pieces {
            if a.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: a.len(),
                });
            }
            let mut row = a.clone();
            row.push(-Q::one());
            epi.push_ineq(row, -b);
        }
        if let Some(d) = domain {
            if d.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: d.dim(),
                });
            }
            for (a, b) in d.ineq() {
                let mut row = a.clone();
                row.push(Q::zero());
                epi.push_ineq(row, b.clone());
            }
            for (e, c) in d.eq() {
                let mut row = e.clone();
                row.push(Q::zero());
                epi.push_eq(row, c.clone());
            }
        }
        PLFunction::from_epigraph(dim, epi)
    }

    /// Indicator of a nonempty set: `0` on the set, `+inf` outside.
    pub fn indicator(set: &HPolyhedron) -> Result<Self> {
        let dim = set.dim();
        let mut epi = HPolyhedron::universe(dim + 1);
        for (a, b) in set.ineq() {
            let mut row = a.clone();
            row.push(Q::zero());
            epi.push_ineq(row, b.clone());
        }
        for (e, c) in set.eq() {
            let mut row = e.clone();
            row.push(Q::zero());
            epi.push_eq(row, c.clone());
        }
        let mut t_row = zero_vec(dim + 1);
        t_row[dim] = -Q::one();
        epi.push_ineq(t_row, Q::zero());
        PLFunction::from_epigraph(dim, epi)
    }

    /// The constant function `x -> c` on the whole space.
    pub fn constant(dim: usize, c: Q) -> Self {
        PLFunction::from_max_affine(&[(zero_vec(dim), c)], None).expect("constant is proper")
    }

    /// `|x|` in one dimension.
    pub fn abs1() -> Self {
        PLFunction::from_max_affine(
            &[(vec![Q::one()], Q::zero()), (vec![-Q::one()], Q::zero())],
            None,
        )
        .expect("abs is proper")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn epigraph(&self) -> &HPolyhedron {
        &self.epi
    }

    /// Effective domain as a polyhedron (projection of the epigraph).
    pub fn domain(&self) -> Result<HPolyhedron> {
        self.epi.project(&(0..self.dim).collect::<Vec<_>>())
    }

    /// Semantic equality of functions: equality of epigraphs as sets.
    pub fn equal(&self, other: &PLFunction) -> Result<bool> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        self.epi.set_equal(&other.epi)
    }

    /// `f(x) = min { t : (x, t) in epi f }`, `+inf` off the domain.
    pub fn evaluate(&self, x: &[Q]) -> Result<ExtReal> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        let mut slice = self.epi.clone();
        for (j, v) in x.iter().enumerate() {
            let mut e = zero_vec(self.dim + 1);
            e[j] = Q::one();
            slice.push_eq(e, v.clone());
        }
        let mut height = zero_vec(self.dim + 1);
        height[self.dim] = Q::one();
        Ok(match solve_lp(&height, Sense::Min, &slice)? {
            LpOutcome::Optimal { value, .. } => ExtReal::Finite(value),
            LpOutcome::Infeasible { .. } => ExtReal::PlusInfinity,
            LpOutcome::Unbounded { .. } => {
                return Err(Error::Internal("proper function unbounded on a fiber"))
            }
        })
    }

    /// `f*(x*) = sigma_{epi f}(x*, -1)`, one LP.
    pub fn conjugate_value(&self, xstar: &[Q]) -> Result<ExtReal> {
        if xstar.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: xstar.len(),
            });
        }
        let mut probe = xstar.to_vec();
        probe.push(-Q::one());
        Ok(support(&self.epi, &probe)?.value)
    }

    /// Closed form of the conjugate, assembled from the epigraph
    /// generators: each vertex `(v, t)` contributes the affine piece
    /// `<v, y> - t`, each recession ray `(r, s)` the domain constraint
    /// `<r, y> <= s`, each lineality direction the tight version.
    pub fn conjugate(&self) -> Result<PLFunction> {
        let gens = self.epi.h_to_v()?;
        let mut epi = HPolyhedron::universe(self.dim + 1);
        for v in &gens.vertices {
            let mut row = v[..self.dim].to_vec();
            row.push(-Q::one());
            epi.push_ineq(row, v[self.dim].clone());
        }
        for r in &gens.rays {
            let mut row = r[..self.dim].to_vec();
            row.push(Q::zero());
            epi.push_ineq(row, r[self.dim].clone());
        }
        for l in &gens.lineality {
            let mut row = l[..self.dim].to_vec();
            row.push(Q::zero());
            epi.push_eq(row, l[self.dim].clone());
        }
        PLFunction::from_epigraph(self.dim, epi.canonicalize())
    }

    /// `f** = (f*)*`; equals `f` exactly for the proper closed convex
    /// functions carried here.
    pub fn biconjugate(&self) -> Result<PLFunction> {
        self.conjugate()?.conjugate()
    }

    /// Subdifferential at a domain point: the slice
    /// `{x* : (x*, -1) in N((xbar, f(xbar)); epi f)}`, obtained from the
    /// normal cone by substitution. Never empty on the domain.
    pub fn subdifferential(&self, xbar: &[Q]) -> Result<HPolyhedron> {
        if xbar.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: xbar.len(),
            });
        }
        let fx = match self.evaluate(xbar)? {
            ExtReal::Finite(v) => v,
            _ => return Err(Error::NotInDomain),
        };
        let mut at = xbar.to_vec();
        at.push(fx);
        let cone = normal_cone(&self.epi, &at)?;
        // Preimage of the cone under x* -> (x*, -1).
        let mut map: Matrix = Vec::with_capacity(self.dim + 1);
        for j in 0..self.dim {
            let mut row = zero_vec(self.dim);
            row[j] = Q::one();
            map.push(row);
        }
        map.push(zero_vec(self.dim));
        let mut shift = zero_vec(self.dim + 1);
        shift[self.dim] = -Q::one();
        let sub = cone.as_poly().affine_preimage(&map, &shift)?.canonicalize();
        if sub.is_empty() {
            return Err(Error::Internal(
                "empty subdifferential at a domain point of a PL convex function",
            ));
        }
        Ok(sub)
    }

    /// `lambda * f` for `lambda >= 0`, with the convention
    /// `0 * f = indicator(dom f)`.
    pub fn scale(&self, lambda: &Q) -> Result<PLFunction> {
        if lambda.is_negative() {
            return Err(Error::ShapeMismatch(
                "scale factor must be nonnegative".into(),
            ));
        }
        if lambda.is_zero() {
            return PLFunction::indicator(&self.domain()?);
        }
        // (x, t) in epi(lambda f) iff (x, t/lambda) in epi f.
        let mut map: Matrix = Vec::with_capacity(self.dim + 1);
        for j in 0..self.dim + 1 {
            let mut row = zero_vec(self.dim + 1);
            row[j] = if j == self.dim {
                lambda.recip()
            } else {
                Q::one()
            };
            map.push(row);
        }
        let epi = self.epi.affine_preimage(&map, &zero_vec(self.dim + 1))?;
        PLFunction::from_epigraph(self.dim, epi)
    }
}

/// `f + g`, epigraph by projecting `{(x, t, t1) : (x, t1) in epi f,
/// (x, t - t1) in epi g}`. Errors with `EmptyCommonDomain` when the
/// domains miss each other.
pub fn sum(f: &PLFunction, g: &PLFunction) -> Result<PLFunction> {
    if f.dim != g.dim {
        return Err(Error::DimensionMismatch {
            expected: f.dim,
            got: g.dim,
        });
    }
    let n = f.dim;
    let mut sys = HPolyhedron::universe(n + 2);
    for (a, b) in f.epi.ineq() {
        let mut row = a[..n].to_vec();
        row.push(Q::zero());
        row.push(a[n].clone());
        sys.push_ineq(row, b.clone());
    }
    for (e, c) in f.epi.eq() {
        let mut row = e[..n].to_vec();
        row.push(Q::zero());
        row.push(e[n].clone());
        sys.push_eq(row, c.clone());
    }
    for (a, b) in g.epi.ineq() {
        let mut row = a[..n].to_vec();
        row.push(a[n].clone());
        row.push(-&a[n]);
        sys.push_ineq(row, b.clone());
    }
    for (e, c) in g.epi.eq() {
        let mut row = e[..n].to_vec();
        row.push(e[n].clone());
        row.push(-&e[n]);
        sys.push_eq(row, c.clone());
    }
    let epi = sys.project(&(0..=n).collect::<Vec<_>>())?;
    PLFunction::from_epigraph(n, epi).map_err(|e| match e {
        Error::ImproperFunction(_) => Error::EmptyCommonDomain,
        other => other,
    })
}

/// `g ∘ A` for an affine map; the epigraph is an exact preimage.
pub fn compose(g: &PLFunction, a: &LinearMap) -> Result<PLFunction> {
    if a.out_dim() != g.dim {
        return Err(Error::ShapeMismatch(
            "map output dimension must match the function".into(),
        ));
    }
    let n = a.in_dim();
    // (x, t) -> (Ax + b, t)
    let mut map: Matrix = Vec::with_capacity(g.dim + 1);
    for row in &a.matrix {
        let mut r = row.clone();
        r.push(Q::zero());
        map.push(r);
    }
    let mut last = zero_vec(n + 1);
    last[n] = Q::one();
    map.push(last);
    let mut shift = match &a.shift {
        Some(s) => s.clone(),
        None => zero_vec(g.dim),
    };
    shift.push(Q::zero());
    let epi = g.epi.affine_preimage(&map, &shift)?;
    PLFunction::from_epigraph(n, epi).map_err(|e| match e {
        Error::ImproperFunction(_) => Error::InfeasibleComposition,
        other => other,
    })
}

/// Pointwise maximum: `epi(f ∨ g) = epi f ∩ epi g`.
pub fn pointwise_max(f: &PLFunction, g: &PLFunction) -> Result<PLFunction> {
    if f.dim != g.dim {
        return Err(Error::DimensionMismatch {
            expected: f.dim,
            got: g.dim,
        });
    }
    let epi = f.epi.intersect(&g.epi)?;
    PLFunction::from_epigraph(f.dim, epi).map_err(|e| match e {
        Error::ImproperFunction(_) => Error::EmptyCommonDomain,
        other => other,
    })
}

/// Infimal convolution; for polyhedral functions the infimum is attained
/// and the epigraph is exactly the Minkowski sum of the epigraphs.
/// `ImproperResult` signals a `-inf` value (an unbounded recession
/// direction of the summed epigraph).
pub fn inf_convolution(f: &PLFunction, g: &PLFunction) -> Result<PLFunction> {
    if f.dim != g.dim {
        return Err(Error::DimensionMismatch {
            expected: f.dim,
            got: g.dim,
        });
    }
    let epi = f.epi.minkowski_sum(&g.epi)?;
    PLFunction::from_epigraph(f.dim, epi).map_err(|e| match e {
        Error::ImproperFunction(_) => Error::ImproperResult,
        other => other,
    })
}

/// Pointwise value of `(f ⊕ g)(x)` by one LP over the splitting variables,
/// with an attaining split `u` (so `f(u) + g(x - u)` equals the value).
pub fn inf_convolution_value(
    f: &PLFunction,
    g: &PLFunction,
    x: &[Q],
) -> Result<(ExtReal, Option<Vector>)> {
    if f.dim != g.dim {
        return Err(Error::DimensionMismatch {
            expected: f.dim,
            got: g.dim,
        });
    }
    if x.len() != f.dim {
        return Err(Error::DimensionMismatch {
            expected: f.dim,
            got: x.len(),
        });
    }
    let n = f.dim;
    // Variables (u, t1, t2): (u, t1) in epi f, (x - u, t2) in epi g.
    let mut sys = HPolyhedron::universe(n + 2);
    for (a, b) in f.epi.ineq() {
        let mut row = a[..n].to_vec();
        row.push(a[n].clone());
        row.push(Q::zero());
        sys.push_ineq(row, b.clone());
    }
    for (e, c) in f.epi.eq() {
        let mut row = e[..n].to_vec();
        row.push(e[n].clone());
        row.push(Q::zero());
        sys.push_eq(row, c.clone());
    }
    for (a, b) in g.epi.ineq() {
        // a_x . (x - u) + a_t t2 <= b
        let mut row: Vector = a[..n].iter().map(|v| -v).collect();
        row.push(Q::zero());
        row.push(a[n].clone());
        sys.push_ineq(row, b - &dot(&a[..n], x));
    }
    for (e, c) in g.epi.eq() {
        let mut row: Vector = e[..n].iter().map(|v| -v).collect();
        row.push(Q::zero());
        row.push(e[n].clone());
        sys.push_eq(row, c - &dot(&e[..n], x));
    }
    let mut obj = zero_vec(n + 2);
    obj[n] = Q::one();
    obj[n + 1] = Q::one();
    Ok(match solve_lp(&obj, Sense::Min, &sys)? {
        LpOutcome::Optimal { value, point, .. } => {
            (ExtReal::Finite(value), Some(point[..n].to_vec()))
        }
        LpOutcome::Infeasible { .. } => (ExtReal::PlusInfinity, None),
        LpOutcome::Unbounded { .. } => return Err(Error::ImproperResult),
    })
}

/// Output of the conjugate sum rule at one probe.
#[derive(Clone, Debug)]
pub struct ConjugateSumRule {
    pub lhs: ExtReal,
    pub split: Option<(Vector, Vector)>,
    pub qc: QCReport,
}

/// `(f+g)*(x*)` via the support of the intersection of the two lifted
/// epigraph cylinders, with the attaining split `x* = x1* + x2*` such that
/// `f*(x1*) + g*(x2*)` reproduces the value exactly.
pub fn conjugate_sum_rule(f: &PLFunction, g: &PLFunction, xstar: &[Q]) -> Result<ConjugateSumRule> {
    if f.dim != g.dim {
        return Err(Error::DimensionMismatch {
            expected: f.dim,
            got: g.dim,
        });
    }
    if xstar.len() != f.dim {
        return Err(Error::DimensionMismatch {
            expected: f.dim,
            got: xstar.len(),
        });
    }
    let n = f.dim;
    // Cylinders in (x, l1, l2): l1 >= f(x) and l2 >= g(x).
    let mut omega1 = HPolyhedron::universe(n + 2);
    for (a, b) in f.epi.ineq() {
        let mut row = a[..n].to_vec();
        row.push(a[n].clone());
        row.push(Q::zero());
        omega1.push_ineq(row, b.clone());
    }
    for (e, c) in f.epi.eq() {
        let mut row = e[..n].to_vec();
        row.push(e[n].clone());
        row.push(Q::zero());
        omega1.push_eq(row, c.clone());
    }
    let mut omega2 = HPolyhedron::universe(n + 2);
    for (a, b) in g.epi.ineq() {
        let mut row = a[..n].to_vec();
        row.push(Q::zero());
        row.push(a[n].clone());
        omega2.push_ineq(row, b.clone());
    }
    for (e, c) in g.epi.eq() {
        let mut row = e[..n].to_vec();
        row.push(Q::zero());
        row.push(e[n].clone());
        omega2.push_eq(row, c.clone());
    }
    let mut probe = xstar.to_vec();
    probe.push(-Q::one());
    probe.push(-Q::one());
    let out = match support_intersection(&omega1, &omega2, &probe) {
        Ok(out) => out,
        Err(Error::EmptyIntersection) => return Err(Error::EmptyCommonDomain),
        Err(other) => return Err(other),
    };
    let qc = check_qualification(&f.domain()?, &g.domain()?, None)?;
    match out.value {
        ExtReal::Finite(value) => {
            let (w1, w2) = out.split.expect("finite support carries a split");
            // Finiteness forces the split heights onto (-1, 0) and (0, -1).
            if w1[n] != -Q::one()
                || !w1[n + 1].is_zero()
                || !w2[n].is_zero()
                || w2[n + 1] != -Q::one()
            {
                return Err(Error::Internal("sum-rule split has wrong height parts"));
            }
            let x1 = w1[..n].to_vec();
            let x2 = w2[..n].to_vec();
            let f1 = f.conjugate_value(&x1)?;
            let g2 = g.conjugate_value(&x2)?;
            if f1.try_add(&g2)? != ExtReal::Finite(value.clone()) {
                return Err(Error::Internal("sum-rule split does not attain"));
            }
            Ok(ConjugateSumRule {
                lhs: ExtReal::Finite(value),
                split: Some((x1, x2)),
                qc,
            })
        }
        v => Ok(ConjugateSumRule {
            lhs: v,
            split: None,
            qc,
        }),
    }
}

/// Output of the conjugate chain rule at one probe.
#[derive(Clone, Debug)]
pub struct ConjugateChainRule {
    pub lhs: ExtReal,
    pub witness: Option<Vector>,
}

/// `(g ∘ A)*(x*) = min { g*(y*) : A* y* = x* }` with an attaining `y*`
/// recovered by minimizing the closed-form conjugate over the fiber.
pub fn conjugate_chain_rule(
    g: &PLFunction,
    a: &LinearMap,
    xstar: &[Q],
) -> Result<ConjugateChainRule> {
    if !a.is_linear() {
        return Err(Error::ShapeMismatch(
            "conjugate chain rule expects a linear map".into(),
        ));
    }
    let composed = compose(g, a)?;
    if xstar.len() != composed.dim() {
        return Err(Error::DimensionMismatch {
            expected: composed.dim(),
            got: xstar.len(),
        });
    }
    let lhs = composed.conjugate_value(xstar)?;
    if lhs == ExtReal::PlusInfinity {
        return Ok(ConjugateChainRule { lhs, witness: None });
    }
    let gstar = g.conjugate()?;
    let m = g.dim;
    // Variables (y*, s): (y*, s) in epi g*, A^T y* = x*.
    let mut sys = gstar.epigraph().clone();
    let at = a.transpose_matrix();
    for (j, row) in at.iter().enumerate() {
        let mut e = row.clone();
        e.push(Q::zero());
        sys.push_eq(e, xstar[j].clone());
    }
    let mut obj = zero_vec(m + 1);
    obj[m] = Q::one();
    match solve_lp(&obj, Sense::Min, &sys)? {
        LpOutcome::Optimal { value, point, .. } => {
            if ExtReal::Finite(value) != lhs {
                return Err(Error::Internal("chain-rule witness does not attain"));
            }
            let ystar = point[..m].to_vec();
            if a.adjoint_apply(&ystar) != xstar.to_vec() {
                return Err(Error::Internal("chain-rule witness leaves the fiber"));
            }
            Ok(ConjugateChainRule {
                lhs,
                witness: Some(ystar),
            })
        }
        _ => Err(Error::Internal(
            "attainment of the chain-rule infimum failed",
        )),
    }
}

/// Output of the conjugate max rule at one probe.
#[derive(Clone, Debug)]
pub struct ConjugateMaxRule {
    pub lhs: ExtReal,
    pub lambda: Option<Q>,
    pub split: Option<(Vector, Vector)>,
}

/// `(f ∨ g)*(x*) = min over lambda in [0,1] of [lambda f + (1-lambda) g]*(x*)`,
/// the attaining `lambda` read off the support decomposition of
/// `epi f ∩ epi g` at `(x*, -1)` (heights `-lambda1`, `-lambda2` summing
/// to `-1`). The endpoint convention `0 f = indicator(dom f)` applies.
pub fn conjugate_max_rule(f: &PLFunction, g: &PLFunction, xstar: &[Q]) -> Result<ConjugateMaxRule> {
    if f.dim != g.dim {
        return Err(Error::DimensionMismatch {
            expected: f.dim,
            got: g.dim,
        });
    }
    if xstar.len() != f.dim {
        return Err(Error::DimensionMismatch {
            expected: f.dim,
            got: xstar.len(),
        });
    }
    let n = f.dim;
    let mut probe = xstar.to_vec();
    probe.push(-Q::one());
    let out = match support_intersection(&f.epi, &g.epi, &probe) {
        Ok(out) => out,
        Err(Error::EmptyIntersection) => return Err(Error::EmptyCommonDomain),
        Err(other) => return Err(other),
    };
    match out.value {
        ExtReal::Finite(value) => {
            let (w1, w2) = out.split.expect("finite support carries a split");
            let lambda1 = -&w1[n];
            let lambda2 = -&w2[n];
            if lambda1.is_negative() || lambda2.is_negative() || &lambda1 + &lambda2 != Q::one() {
                return Err(Error::Internal("max-rule heights are not a convex split"));
            }
            Ok(ConjugateMaxRule {
                lhs: ExtReal::Finite(value),
                lambda: Some(lambda1),
                split: Some((w1[..n].to_vec(), w2[..n].to_vec())),
            })
        }
        v => Ok(ConjugateMaxRule {
            lhs: v,
            lambda: None,
            split: None,
        }),
    }
}

/// `[lambda f + (1 - lambda) g]` with the endpoint convention
/// `0 f = indicator(dom f)`; used to re-verify max-rule outputs.
pub fn convex_mix(f: &PLFunction, g: &PLFunction, lambda: &Q) -> Result<PLFunction> {
    if lambda.is_negative() || lambda > &Q::one() {
        return Err(Error::ShapeMismatch("mix weight outside [0,1]".into()));
    }
    let one_minus = &Q::one() - lambda;
    sum(&f.scale(lambda)?, &g.scale(&one_minus)?)
}

/// Both sides of a subdifferential identity, compared exactly.
#[derive(Clone, Debug)]
pub struct SubdiffRule {
    pub lhs: HPolyhedron,
    pub rhs: HPolyhedron,
    pub equal: bool,
}

/// `∂(f+g)(xbar) = ∂f(xbar) + ∂g(xbar)` (right side a Minkowski sum).
pub fn subdiff_sum_rule(f: &PLFunction, g: &PLFunction, xbar: &[Q]) -> Result<SubdiffRule> {
    let fg = sum(f, g)?;
    if !matches!(fg.evaluate(xbar)?, ExtReal::Finite(_)) {
        return Err(Error::NotInDomain);
    }
    let lhs = fg.subdifferential(xbar)?;
    let df = f.subdifferential(xbar)?;
    let dg = g.subdifferential(xbar)?;
    let rhs = df.minkowski_sum(&dg)?;
    let equal = lhs.set_equal(&rhs)?;
    Ok(SubdiffRule { lhs, rhs, equal })
}

/// `∂(g ∘ A)(xbar) = A* ∂g(A xbar)` (right side an affine image under the
/// adjoint).
pub fn subdiff_chain_rule(g: &PLFunction, a: &LinearMap, xbar: &[Q]) -> Result<SubdiffRule> {
    if !a.is_linear() {
        return Err(Error::ShapeMismatch(
            "subdifferential chain rule expects a linear map".into(),
        ));
    }
    let composed = compose(g, a)?;
    if !matches!(composed.evaluate(xbar)?, ExtReal::Finite(_)) {
        return Err(Error::NotInDomain);
    }
    let lhs = composed.subdifferential(xbar)?;
    let dg = g.subdifferential(&a.apply(xbar))?;
    let rhs = dg
        .affine_image(&a.transpose_matrix(), &zero_vec(a.in_dim()))?
        .canonicalize();
    let equal = lhs.set_equal(&rhs)?;
    Ok(SubdiffRule { lhs, rhs, equal })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MaxCase {
    FirstDominates,
    SecondDominates,
    Tie,
}

#[derive(Clone, Debug)]
pub struct SubdiffMaxRule {
    pub case: MaxCase,
    pub lhs: HPolyhedron,
    pub rhs: HPolyhedron,
    pub equal: bool,
}

/// Subdifferential of `f ∨ g` at `xbar`: the dominating function's
/// subdifferential off ties, the closed convex hull of the union at a tie
/// (computed through generators).
pub fn subdiff_max_rule(f: &PLFunction, g: &PLFunction, xbar: &[Q]) -> Result<SubdiffMaxRule> {
    let (fx, gx) = match (f.evaluate(xbar)?, g.evaluate(xbar)?) {
        (ExtReal::Finite(a), ExtReal::Finite(b)) => (a, b),
        _ => return Err(Error::NotInDomain),
    };
    let maxed = pointwise_max(f, g)?;
    let lhs = maxed.subdifferential(xbar)?;
    let (case, rhs) = match fx.cmp(&gx) {
        std::cmp::Ordering::Greater => (MaxCase::FirstDominates, f.subdifferential(xbar)?),
        std::cmp::Ordering::Less => (MaxCase::SecondDominates, g.subdifferential(xbar)?),
        std::cmp::Ordering::Equal => {
            let df = f.subdifferential(xbar)?;
            let dg = g.subdifferential(xbar)?;
            (MaxCase::Tie, convex_hull_union(&df, &dg)?)
        }
    };
    let equal = lhs.set_equal(&rhs)?;
    Ok(SubdiffMaxRule {
        case,
        lhs,
        rhs,
        equal,
    })
}

/// Closed convex hull of the union of two nonempty polyhedra, through the
/// union of their generator sets.
pub fn convex_hull_union(p: &HPolyhedron, q: &HPolyhedron) -> Result<HPolyhedron> {
    let gp = p.h_to_v()?;
    let gq = q.h_to_v()?;
    let merged = Generators {
        dim: gp.dim,
        vertices: [gp.vertices, gq.vertices].concat(),
        rays: [gp.rays, gq.rays].concat(),
        lineality: [gp.lineality, gq.lineality].concat(),
    };
    Ok(HPolyhedron::v_to_h(&merged))
}

mod serde_impl {
    use super::*;
    use serde::de;

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum PLFunctionJson {
        Epigraph {
            dim: usize,
            epi: HPolyhedron,
        },
        MaxAffine {
            max_affine: Vec<Vector>,
            #[serde(default)]
            domain: Option<HPolyhedron>,
        },
    }

    impl<'de> Deserialize<'de> for PLFunction {
        fn deserialize<D: serde::Deserializer<'de>>(
            deserializer: D,
        ) -> std::result::Result<Self, D::Error> {
            match PLFunctionJson::deserialize(deserializer)? {
                PLFunctionJson::Epigraph { dim, epi } => {
                    PLFunction::from_epigraph(dim, epi).map_err(de::Error::custom)
                }
                PLFunctionJson::MaxAffine { max_affine, domain } => {
                    let pieces: Vec<(Vector, Q)> = max_affine
                        .into_iter()
                        .map(|mut row| {
                            if row.len() < 2 {
                                return Err(de::Error::custom(
                                    "max_affine row needs coefficients and an offset",
                                ));
                            }
                            let b = row.pop().expect("nonempty");
                            Ok((row, b))
                        })
                        .collect::<std::result::Result<_, D::Error>>()?;
                    PLFunction::from_max_affine(&pieces, domain.as_ref())
                        .map_err(de::Error::custom)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qv(vals: &[i64]) -> Vector {
        vals.iter().map(|&n| Q::from_int(n)).collect()
    }

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    fn fin(n: i64, d: i64) -> ExtReal {
        ExtReal::Finite(q(n, d))
    }

    /// max(x, 2x - 1): kink at x = 1.
    fn kinked() -> PLFunction {
        PLFunction::from_max_affine(&[(qv(&[1]), Q::zero()), (qv(&[2]), -Q::one())], None).unwrap()
    }

    #[test]
    fn evaluation() {
        let abs = PLFunction::abs1();
        assert_eq!(abs.evaluate(&qv(&[-3])).unwrap(), fin(3, 1));
        let ind = PLFunction::indicator(&HPolyhedron::interval(Q::zero(), Q::one())).unwrap();
        assert_eq!(ind.evaluate(&qv(&[2])).unwrap(), ExtReal::PlusInfinity);
        assert_eq!(kinked().evaluate(&qv(&[1])).unwrap(), fin(1, 1));
    }

    #[test]
    fn properness_rejected() {
        // Height unconstrained below: improper.
        let epi = HPolyhedron::universe(2);
        assert!(matches!(
            PLFunction::from_epigraph(1, epi),
            Err(Error::ImproperFunction(_))
        ));
        // Empty domain rejected.
        let mut epi = HPolyhedron::empty(2);
        epi.push_ineq(qv(&[0, -1]), Q::zero());
        assert!(matches!(
            PLFunction::from_epigraph(1, epi),
            Err(Error::ImproperFunction(_))
        ));
        // A row excluding the upward ray is not an epigraph.
        let mut epi = HPolyhedron::universe(2);
        epi.push_ineq(qv(&[0, 1]), Q::one());
        epi.push_ineq(qv(&[0, -1]), Q::zero());
        assert!(matches!(
            PLFunction::from_epigraph(1, epi),
            Err(Error::NotAnEpigraph(_))
        ));
    }

    #[test]
    fn conjugate_of_abs() {
        let abs = PLFunction::abs1();
        assert_eq!(abs.conjugate_value(&[q(1, 2)]).unwrap(), fin(0, 1));
        assert_eq!(
            abs.conjugate_value(&[q(2, 1)]).unwrap(),
            ExtReal::PlusInfinity
        );
        let star = abs.conjugate().unwrap();
        let ind = PLFunction::indicator(&HPolyhedron::interval(-Q::one(), Q::one())).unwrap();
        assert!(star.equal(&ind).unwrap());
    }

    #[test]
    fn conjugate_of_indicator_is_support() {
        let set = HPolyhedron::interval(-Q::one(), Q::from_int(2));
        let ind = PLFunction::indicator(&set).unwrap();
        for xs in [qv(&[1]), qv(&[-1]), qv(&[3])] {
            let via_conj = ind.conjugate_value(&xs).unwrap();
            let via_support = support(&set, &xs).unwrap().value;
            assert_eq!(via_conj, via_support);
        }
    }

    #[test]
    fn conjugate_of_kinked_max() {
        let f = kinked();
        assert_eq!(f.conjugate_value(&[q(3, 2)]).unwrap(), fin(1, 2));
        let star = f.conjugate().unwrap();
        let dom = star.domain().unwrap();
        assert!(dom
            .set_equal(&HPolyhedron::interval(Q::one(), Q::from_int(2)))
            .unwrap());
        assert_eq!(star.evaluate(&[q(3, 2)]).unwrap(), fin(1, 2));
    }

    #[test]
    fn biconjugate_fixed_point() {
        for f in [
            PLFunction::abs1(),
            kinked(),
            PLFunction::indicator(&HPolyhedron::interval(Q::zero(), Q::one())).unwrap(),
        ] {
            let bi = f.biconjugate().unwrap();
            assert!(bi.equal(&f).unwrap());
        }
    }

    #[test]
    fn inf_convolution_cases() {
        let abs = PLFunction::abs1();
        // Convolution with the indicator of the origin is the identity.
        let origin = PLFunction::indicator(&HPolyhedron::singleton(&qv(&[0]))).unwrap();
        let conv = inf_convolution(&abs, &origin).unwrap();
        assert!(conv.equal(&abs).unwrap());
        // Indicator convolution realizes the Minkowski sum of the sets.
        let a = HPolyhedron::interval(Q::zero(), Q::one());
        let b = HPolyhedron::interval(Q::from_int(2), Q::from_int(3));
        let conv = inf_convolution(
            &PLFunction::indicator(&a).unwrap(),
            &PLFunction::indicator(&b).unwrap(),
        )
        .unwrap();
        let expect =
            PLFunction::indicator(&HPolyhedron::interval(Q::from_int(2), Q::from_int(4))).unwrap();
        assert!(conv.equal(&expect).unwrap());
        // abs ⊕ abs = abs: value 4 at x = 4, the split attains.
        let (value, split) = inf_convolution_value(&abs, &abs, &qv(&[4])).unwrap();
        assert_eq!(value, fin(4, 1));
        let u = split.unwrap();
        let rest = &Q::from_int(4) - &u[0];
        assert_eq!(u[0].abs() + rest.abs(), Q::from_int(4));
    }

    #[test]
    fn inf_convolution_improper() {
        // x ⊕ (-x) drives the value to -inf everywhere.
        let up = PLFunction::from_max_affine(&[(qv(&[1]), Q::zero())], None).unwrap();
        let down = PLFunction::from_max_affine(&[(qv(&[-1]), Q::zero())], None).unwrap();
        assert_eq!(inf_convolution(&up, &down), Err(Error::ImproperResult));
    }

    #[test]
    fn subdifferentials_of_abs() {
        let abs = PLFunction::abs1();
        let at0 = abs.subdifferential(&qv(&[0])).unwrap();
        assert!(at0
            .set_equal(&HPolyhedron::interval(-Q::one(), Q::one()))
            .unwrap());
        let at1 = abs.subdifferential(&qv(&[1])).unwrap();
        assert!(at1.set_equal(&HPolyhedron::singleton(&qv(&[1]))).unwrap());
    }

    #[test]
    fn subdifferential_outside_domain_errors() {
        let ind = PLFunction::indicator(&HPolyhedron::interval(Q::zero(), Q::one())).unwrap();
        assert_eq!(ind.subdifferential(&qv(&[2])), Err(Error::NotInDomain));
        // On the boundary it is the normal cone direction.
        let at1 = ind.subdifferential(&qv(&[1])).unwrap();
        assert!(at1.contains(&qv(&[7])).unwrap());
        assert!(!at1.contains(&qv(&[-1])).unwrap());
    }

    #[test]
    fn subdifferential_of_indicator_is_normal_cone() {
        let set = HPolyhedron::box_bounds(&qv(&[0, 0]), &qv(&[1, 1])).unwrap();
        let ind = PLFunction::indicator(&set).unwrap();
        let xbar = qv(&[1, 0]);
        let sub = ind.subdifferential(&xbar).unwrap();
        let cone = normal_cone(&set, &xbar).unwrap();
        assert!(sub.set_equal(cone.as_poly()).unwrap());
    }

    #[test]
    fn fenchel_young_at_the_kink() {
        let f = kinked();
        let x = qv(&[1]);
        let fx = match f.evaluate(&x).unwrap() {
            ExtReal::Finite(v) => v,
            _ => panic!(),
        };
        let xstar = q(3, 2);
        let fstar = match f.conjugate_value(&[xstar.clone()]).unwrap() {
            ExtReal::Finite(v) => v,
            _ => panic!(),
        };
        // Equality case of Fenchel-Young: 3/2 is a subgradient at the kink.
        assert_eq!(&fx + &fstar, &xstar * &x[0]);
        let sub = f.subdifferential(&x).unwrap();
        assert!(sub.contains(&[xstar]).unwrap());
    }

    #[test]
    fn conjugate_sum_rule_on_two_kinks() {
        // f = |x|, g = |x - 1|: (f+g)*(0) = -1 with split (1, -1).
        let f = PLFunction::abs1();
        let g =
            PLFunction::from_max_affine(&[(qv(&[1]), -Q::one()), (qv(&[-1]), Q::one())], None)
                .unwrap();
        let out = conjugate_sum_rule(&f, &g, &qv(&[0])).unwrap();
        assert_eq!(out.lhs, fin(-1, 1));
        let (x1, x2) = out.split.unwrap();
        assert_eq!(x1, qv(&[1]));
        assert_eq!(x2, qv(&[-1]));
        assert!(out.qc.any_holds);
    }

    #[test]
    fn conjugate_sum_rule_with_zero() {
        let f = PLFunction::abs1();
        let zero = PLFunction::constant(1, Q::zero());
        let out = conjugate_sum_rule(&f, &zero, &[q(1, 2)]).unwrap();
        assert_eq!(out.lhs, fin(0, 1));
        let (x1, x2) = out.split.unwrap();
        // zero* = indicator of {0}, so the split is forced to (x*, 0).
        assert_eq!(x1, vec![q(1, 2)]);
        assert_eq!(x2, qv(&[0]));
    }

    #[test]
    fn conjugate_sum_rule_identical_indicators() {
        let ind = PLFunction::indicator(&HPolyhedron::interval(Q::zero(), Q::one())).unwrap();
        let out = conjugate_sum_rule(&ind, &ind, &qv(&[1])).unwrap();
        assert_eq!(out.lhs, fin(1, 1));
        let (x1, x2) = out.split.unwrap();
        let s1 = ind.conjugate_value(&x1).unwrap();
        let s2 = ind.conjugate_value(&x2).unwrap();
        assert_eq!(s1.try_add(&s2).unwrap(), fin(1, 1));
    }

    #[test]
    fn conjugate_sum_rule_infinite_probe() {
        // Indicators of [0,1] and [1,2]: intersection {1}; conjugate of the
        // sum is finite everywhere, but pairing with a one-sided domain
        // keeps it finite too; use disjoint-domain precondition instead.
        let f = PLFunction::indicator(&HPolyhedron::interval(Q::zero(), Q::one())).unwrap();
        let g = PLFunction::indicator(&HPolyhedron::interval(Q::from_int(3), Q::from_int(4)))
            .unwrap();
        assert_eq!(
            conjugate_sum_rule(&f, &g, &qv(&[0])).err(),
            Some(Error::EmptyCommonDomain)
        );
    }

    #[test]
    fn conjugate_chain_rule_doubling() {
        // A x = (x, x), g = |y1| + |y2|: (g ∘ A) = 2|x|.
        let a = LinearMap::new(vec![qv(&[1]), qv(&[1])]).unwrap();
        let g = PLFunction::from_max_affine(
            &[
                (qv(&[1, 1]), Q::zero()),
                (qv(&[1, -1]), Q::zero()),
                (qv(&[-1, 1]), Q::zero()),
                (qv(&[-1, -1]), Q::zero()),
            ],
            None,
        )
        .unwrap();
        let out = conjugate_chain_rule(&g, &a, &qv(&[1])).unwrap();
        assert_eq!(out.lhs, fin(0, 1));
        let y = out.witness.unwrap();
        assert_eq!(&y[0] + &y[1], Q::one());
        assert_eq!(g.conjugate_value(&y).unwrap(), fin(0, 1));
        // Outside [-2, 2] the conjugate is +inf.
        let out = conjugate_chain_rule(&g, &a, &qv(&[3])).unwrap();
        assert_eq!(out.lhs, ExtReal::PlusInfinity);
        assert!(out.witness.is_none());
    }

    #[test]
    fn conjugate_chain_rule_identity_and_zero_map() {
        let g = PLFunction::abs1();
        let id = LinearMap::new(vec![qv(&[1])]).unwrap();
        let out = conjugate_chain_rule(&g, &id, &[q(1, 2)]).unwrap();
        assert_eq!(out.lhs, fin(0, 1));
        assert_eq!(out.witness.unwrap(), vec![q(1, 2)]);

        // Zero map: (g ∘ 0)*(0) = -g(0) = 0.
        let zero_map = LinearMap::new(vec![qv(&[0])]).unwrap();
        let out = conjugate_chain_rule(&g, &zero_map, &qv(&[0])).unwrap();
        assert_eq!(out.lhs, fin(0, 1));
        let y = out.witness.unwrap();
        assert_eq!(g.conjugate_value(&y).unwrap(), fin(0, 1));
    }

    #[test]
    fn conjugate_max_rule_abs() {
        // f = x, g = -x, f ∨ g = |x|; at x* in [-1,1] the value is 0 with
        // lambda = (x* + 1)/2.
        let f = PLFunction::from_max_affine(&[(qv(&[1]), Q::zero())], None).unwrap();
        let g = PLFunction::from_max_affine(&[(qv(&[-1]), Q::zero())], None).unwrap();
        let out = conjugate_max_rule(&f, &g, &[q(1, 2)]).unwrap();
        assert_eq!(out.lhs, fin(0, 1));
        assert_eq!(out.lambda.unwrap(), q(3, 4));
        let mix = convex_mix(&f, &g, &q(3, 4)).unwrap();
        assert_eq!(mix.conjugate_value(&[q(1, 2)]).unwrap(), fin(0, 1));
    }

    #[test]
    fn conjugate_max_rule_identical_functions() {
        let f = PLFunction::abs1();
        let out = conjugate_max_rule(&f, &f, &[q(1, 2)]).unwrap();
        assert_eq!(out.lhs, f.conjugate_value(&[q(1, 2)]).unwrap());
        let lambda = out.lambda.unwrap();
        assert!(!lambda.is_negative() && lambda <= Q::one());
    }

    #[test]
    fn conjugate_max_rule_endpoint() {
        // f = indicator([0,1]), g = 0: f ∨ g = f; at x* = 1 the value is 1.
        let f = PLFunction::indicator(&HPolyhedron::interval(Q::zero(), Q::one())).unwrap();
        let g = PLFunction::constant(1, Q::zero());
        let out = conjugate_max_rule(&f, &g, &qv(&[1])).unwrap();
        assert_eq!(out.lhs, fin(1, 1));
        let lambda = out.lambda.unwrap();
        let mix = convex_mix(&f, &g, &lambda).unwrap();
        assert_eq!(mix.conjugate_value(&qv(&[1])).unwrap(), fin(1, 1));
    }

    #[test]
    fn subdiff_sum_rule_examples() {
        let abs = PLFunction::abs1();
        let out = subdiff_sum_rule(&abs, &abs, &qv(&[0])).unwrap();
        assert!(out.equal);
        assert!(out
            .lhs
            .set_equal(&HPolyhedron::interval(-Q::from_int(2), Q::from_int(2)))
            .unwrap());

        // Affine g translates the subdifferential by its gradient.
        let affine = PLFunction::from_max_affine(&[(qv(&[3]), Q::one())], None).unwrap();
        let out = subdiff_sum_rule(&abs, &affine, &qv(&[0])).unwrap();
        assert!(out.equal);
        assert!(out
            .lhs
            .set_equal(&HPolyhedron::interval(Q::from_int(2), Q::from_int(4)))
            .unwrap());

        // Two half-plane indicators at the origin: the nonnegative quadrant.
        let lower = HPolyhedron::new(2, vec![(qv(&[0, 1]), Q::zero())], vec![]).unwrap();
        let left = HPolyhedron::new(2, vec![(qv(&[1, 0]), Q::zero())], vec![]).unwrap();
        let out = subdiff_sum_rule(
            &PLFunction::indicator(&lower).unwrap(),
            &PLFunction::indicator(&left).unwrap(),
            &qv(&[0, 0]),
        )
        .unwrap();
        assert!(out.equal);
        assert!(out.lhs.contains(&qv(&[2, 3])).unwrap());
        assert!(!out.lhs.contains(&qv(&[-1, 0])).unwrap());
    }

    #[test]
    fn subdiff_chain_rule_examples() {
        // g = l1 norm on Q^2, A x = (x, x): both sides are [-2, 2] at 0.
        let g = PLFunction::from_max_affine(
            &[
                (qv(&[1, 1]), Q::zero()),
                (qv(&[1, -1]), Q::zero()),
                (qv(&[-1, 1]), Q::zero()),
                (qv(&[-1, -1]), Q::zero()),
            ],
            None,
        )
        .unwrap();
        let a = LinearMap::new(vec![qv(&[1]), qv(&[1])]).unwrap();
        let out = subdiff_chain_rule(&g, &a, &qv(&[0])).unwrap();
        assert!(out.equal);
        assert!(out
            .lhs
            .set_equal(&HPolyhedron::interval(-Q::from_int(2), Q::from_int(2)))
            .unwrap());

        // Identity map degenerates to ∂g.
        let id = LinearMap::new(vec![qv(&[1, 0]), qv(&[0, 1])]).unwrap();
        let out = subdiff_chain_rule(&g, &id, &qv(&[0, 0])).unwrap();
        assert!(out.equal);

        // Linear g gives the singleton adjoint image.
        let lin = PLFunction::from_max_affine(&[(qv(&[2, -1]), Q::zero())], None).unwrap();
        let out = subdiff_chain_rule(&lin, &id, &qv(&[0, 0])).unwrap();
        assert!(out.equal);
        assert!(out
            .lhs
            .set_equal(&HPolyhedron::singleton(&qv(&[2, -1])))
            .unwrap());
    }

    #[test]
    fn subdiff_max_rule_cases() {
        // Case (a): f = x + 5 dominates g = -x at 0.
        let f = PLFunction::from_max_affine(&[(qv(&[1]), Q::from_int(5))], None).unwrap();
        let g = PLFunction::from_max_affine(&[(qv(&[-1]), Q::zero())], None).unwrap();
        let out = subdiff_max_rule(&f, &g, &qv(&[0])).unwrap();
        assert_eq!(out.case, MaxCase::FirstDominates);
        assert!(out.equal);
        assert!(out
            .lhs
            .set_equal(&HPolyhedron::singleton(&qv(&[1])))
            .unwrap());

        // Case (c): tie of x and -x gives co{1, -1} = [-1, 1].
        let fx = PLFunction::from_max_affine(&[(qv(&[1]), Q::zero())], None).unwrap();
        let out = subdiff_max_rule(&fx, &g, &qv(&[0])).unwrap();
        assert_eq!(out.case, MaxCase::Tie);
        assert!(out.equal);
        assert!(out
            .lhs
            .set_equal(&HPolyhedron::interval(-Q::one(), Q::one()))
            .unwrap());

        // Kink dominating an affine minorant: rhs is ∂ max(x,0)(0) = [0,1].
        let relu =
            PLFunction::from_max_affine(&[(qv(&[1]), Q::zero()), (qv(&[0]), Q::zero())], None)
                .unwrap();
        let low = PLFunction::from_max_affine(&[(qv(&[1]), -Q::one())], None).unwrap();
        let out = subdiff_max_rule(&relu, &low, &qv(&[0])).unwrap();
        assert_eq!(out.case, MaxCase::FirstDominates);
        assert!(out.equal);
        assert!(out
            .lhs
            .set_equal(&HPolyhedron::interval(Q::zero(), Q::one()))
            .unwrap());
    }

    #[test]
    fn max_epigraph_is_intersection() {
        let f = PLFunction::abs1();
        let g = kinked();
        let m = pointwise_max(&f, &g).unwrap();
        let inter = f.epigraph().intersect(g.epigraph()).unwrap();
        assert!(m.epigraph().set_equal(&inter).unwrap());
    }

    #[test]
    fn pl_function_json_forms() {
        let f: PLFunction =
            serde_json::from_str(r#"{"max_affine": [["1", "0"], ["-1", "0"]]}"#).unwrap();
        assert!(f.equal(&PLFunction::abs1()).unwrap());
        let round: PLFunction = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert!(round.equal(&f).unwrap());
        let with_domain: PLFunction = serde_json::from_str(
            r#"{"max_affine": [["0", "0"]], "domain": {"dim":1,"ineq":[["1","1"],["-1","0"]],"eq":[]}}"#,
        )
        .unwrap();
        assert_eq!(
            with_domain.evaluate(&qv(&[2])).unwrap(),
            ExtReal::PlusInfinity
        );
        assert_eq!(with_domain.evaluate(&qv(&[1])).unwrap(), fin(0, 1));
    }
}
