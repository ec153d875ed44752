//! Polyhedral set algebra over exact rationals.
//!
//! The universal carrier is [`HPolyhedron`]: a finite system of linear
//! inequalities and equations. Emptiness is a queryable state, never an
//! invariant violation. The generator form [`Generators`] (vertices, rays,
//! lineality) is produced by a double-description conversion and feeds the
//! enumeration-based oracles; the constraint form feeds the LP-based main
//! path. Projection is Fourier-Motzkin with LP redundancy pruning, and all
//! produced polyhedra come out canonicalized: primitive integer rows,
//! merged equality pairs, irredundant, lexicographically sorted. Identical
//! inputs therefore yield bit-identical outputs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    dot, is_zero_vec, lex_cmp, nullspace, primitive, primitive_scale, rowspace, solve_square,
    vec_neg, vec_scale, vec_sub, zero_vec, Matrix, Vector,
};
use crate::lp::{feasible_point, solve_lp, LpOutcome, Sense};
use crate::num::Q;

/// Convex set `{x : Ax <= b, Ex = c}` in rational space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HPolyhedronJson", into = "HPolyhedronJson")]
pub struct HPolyhedron {
    dim: usize,
    ineq: Vec<(Vector, Q)>,
    eq: Vec<(Vector, Q)>,
}

#[derive(Serialize, Deserialize)]
struct HPolyhedronJson {
    dim: usize,
    #[serde(default)]
    ineq: Vec<Vector>,
    #[serde(default)]
    eq: Vec<Vector>,
}

impl TryFrom<HPolyhedronJson> for HPolyhedron {
    type Error = String;

    fn try_from(j: HPolyhedronJson) -> std::result::Result<Self, String> {
        let split = |rows: Vec<Vector>, what: &str| -> std::result::Result<Vec<(Vector, Q)>, String> {
            rows.into_iter()
                .map(|mut row| {
                    if row.len() != j.dim + 1 {
                        return Err(format!(
                            "{what} row must have {} entries (coefficients then bound), got {}",
                            j.dim + 1,
                            row.len()
                        ));
                    }
                    let b = row.pop().expect("nonempty row");
                    Ok((row, b))
                })
                .collect()
        };
        Ok(HPolyhedron {
            dim: j.dim,
            ineq: split(j.ineq, "ineq")?,
            eq: split(j.eq, "eq")?,
        })
    }
}

impl From<HPolyhedron> for HPolyhedronJson {
    fn from(p: HPolyhedron) -> Self {
        let join = |rows: Vec<(Vector, Q)>| {
            rows.into_iter()
                .map(|(mut a, b)| {
                    a.push(b);
                    a
                })
                .collect()
        };
        HPolyhedronJson {
            dim: p.dim,
            ineq: join(p.ineq),
            eq: join(p.eq),
        }
    }
}

/// Vertex/ray/lineality form of a polyhedron:
/// `conv(vertices) + cone(rays) + span(lineality)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generators {
    pub dim: usize,
    pub vertices: Vec<Vector>,
    pub rays: Vec<Vector>,
    pub lineality: Vec<Vector>,
}

impl Generators {
    pub fn is_empty_set(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }
}

/// An `HPolyhedron` whose every bound is zero, hence a closed cone
/// containing the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HPolyhedron", into = "HPolyhedron")]
pub struct PolyhedralCone(HPolyhedron);

impl TryFrom<HPolyhedron> for PolyhedralCone {
    type Error = String;

    fn try_from(p: HPolyhedron) -> std::result::Result<Self, String> {
        PolyhedralCone::new(p).map_err(|e| e.to_string())
    }
}

impl From<PolyhedralCone> for HPolyhedron {
    fn from(c: PolyhedralCone) -> HPolyhedron {
        c.0
    }
}

impl PolyhedralCone {
    pub fn new(p: HPolyhedron) -> Result<Self> {
        let zero_bounds = p.ineq.iter().all(|(_, b)| b.is_zero())
            && p.eq.iter().all(|(_, c)| c.is_zero());
        if zero_bounds {
            Ok(PolyhedralCone(p))
        } else {
            Err(Error::ShapeMismatch(
                "polyhedral cone requires zero bounds on every constraint".into(),
            ))
        }
    }

    pub fn whole_space(dim: usize) -> Self {
        PolyhedralCone(HPolyhedron::universe(dim))
    }

    pub fn origin(dim: usize) -> Self {
        let eye: Vec<(Vector, Q)> = (0..dim)
            .map(|i| {
                let mut e = zero_vec(dim);
                e[i] = Q::one();
                (e, Q::zero())
            })
            .collect();
        PolyhedralCone(HPolyhedron::new(dim, vec![], eye).expect("valid rows"))
    }

    pub fn as_poly(&self) -> &HPolyhedron {
        &self.0
    }

    pub fn into_poly(self) -> HPolyhedron {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn contains(&self, x: &[Q]) -> Result<bool> {
        self.0.contains(x)
    }

    /// Whether the cone is a linear subspace, tested by mutual containment
    /// of the cone and its reflection.
    pub fn is_subspace(&self) -> Result<bool> {
        let negated = self.0.negate();
        Ok(self.0.is_subset(&negated)? && negated.is_subset(&self.0)?)
    }
}

impl HPolyhedron {
    pub fn new(dim: usize, ineq: Vec<(Vector, Q)>, eq: Vec<(Vector, Q)>) -> Result<Self> {
        for (a, _) in ineq.iter().chain(eq.iter()) {
            if a.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: a.len(),
                });
            }
        }
        Ok(HPolyhedron { dim, ineq, eq })
    }

    /// The whole space: no constraints.
    pub fn universe(dim: usize) -> Self {
        HPolyhedron {
            dim,
            ineq: vec![],
            eq: vec![],
        }
    }

    /// Canonical empty set: the contradictory row `0 <= -1`.
    pub fn empty(dim: usize) -> Self {
        HPolyhedron {
            dim,
            ineq: vec![(zero_vec(dim), -Q::one())],
            eq: vec![],
        }
    }

    /// The box `{x : -radius <= x_i <= radius}`.
    pub fn hypercube(dim: usize, radius: Q) -> Self {
        let mut ineq = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let mut pos = zero_vec(dim);
            pos[i] = Q::one();
            ineq.push((pos.clone(), radius.clone()));
            let mut neg = pos;
            neg[i] = -Q::one();
            ineq.push((neg, radius.clone()));
        }
        HPolyhedron {
            dim,
            ineq,
            eq: vec![],
        }
    }

    /// The box with per-coordinate bounds `lo_i <= x_i <= hi_i`.
    pub fn box_bounds(lo: &[Q], hi: &[Q]) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                got: hi.len(),
            });
        }
        let dim = lo.len();
        let mut ineq = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let mut pos = zero_vec(dim);
            pos[i] = Q::one();
            ineq.push((pos.clone(), hi[i].clone()));
            let mut neg = pos;
            neg[i] = -Q::one();
            ineq.push((neg, -&lo[i]));
        }
        Ok(HPolyhedron {
            dim,
            ineq,
            eq: vec![],
        })
    }

    /// The single point `{p}`.
    pub fn singleton(p: &[Q]) -> Self {
        let dim = p.len();
        let eq = (0..dim)
            .map(|i| {
                let mut e = zero_vec(dim);
                e[i] = Q::one();
                (e, p[i].clone())
            })
            .collect();
        HPolyhedron {
            dim,
            ineq: vec![],
            eq,
        }
    }

    /// 1-dimensional interval `[lo, hi]`.
    pub fn interval(lo: Q, hi: Q) -> Self {
        HPolyhedron {
            dim: 1,
            ineq: vec![(vec![Q::one()], hi), (vec![-Q::one()], -lo)],
            eq: vec![],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ineq(&self) -> &[(Vector, Q)] {
        &self.ineq
    }

    pub fn eq(&self) -> &[(Vector, Q)] {
        &self.eq
    }

    pub fn push_ineq(&mut self, a: Vector, b: Q) {
        assert_eq!(a.len(), self.dim, "row length must match dimension");
        self.ineq.push((a, b));
    }

    pub fn push_eq(&mut self, e: Vector, c: Q) {
        assert_eq!(e.len(), self.dim, "row length must match dimension");
        self.eq.push((e, c));
    }

    /// Exact membership; no dimension check (used on trusted data).
    pub fn contains_unchecked(&self, x: &[Q]) -> bool {
        self.ineq.iter().all(|(a, b)| dot(a, x) <= *b)
            && self.eq.iter().all(|(e, c)| dot(e, x) == *c)
    }

    pub fn contains(&self, x: &[Q]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(self.contains_unchecked(x))
    }

    pub fn is_empty(&self) -> bool {
        feasible_point(self).expect("feasibility probe cannot fail").is_none()
    }

    pub fn any_point(&self) -> Option<Vector> {
        feasible_point(self).expect("feasibility probe cannot fail")
    }

    /// Cartesian product: constraints of `self` on the first block,
    /// constraints of `other` on the second.
    pub fn product(&self, other: &HPolyhedron) -> HPolyhedron {
        let dim = self.dim + other.dim;
        let mut ineq = Vec::with_capacity(self.ineq.len() + other.ineq.len());
        let mut eq = Vec::with_capacity(self.eq.len() + other.eq.len());
        for (a, b) in &self.ineq {
            let mut row = a.clone();
            row.extend(zero_vec(other.dim));
            ineq.push((row, b.clone()));
        }
        for (a, b) in &other.ineq {
            let mut row = zero_vec(self.dim);
            row.extend(a.iter().cloned());
            ineq.push((row, b.clone()));
        }
        for (e, c) in &self.eq {
            let mut row = e.clone();
            row.extend(zero_vec(other.dim));
            eq.push((row, c.clone()));
        }
        for (e, c) in &other.eq {
            let mut row = zero_vec(self.dim);
            row.extend(e.iter().cloned());
            eq.push((row, c.clone()));
        }
        HPolyhedron { dim, ineq, eq }
    }

    /// Intersection: stacked constraints.
    pub fn intersect(&self, other: &HPolyhedron) -> Result<HPolyhedron> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut ineq = self.ineq.clone();
        ineq.extend(other.ineq.iter().cloned());
        let mut eq = self.eq.clone();
        eq.extend(other.eq.iter().cloned());
        Ok(HPolyhedron {
            dim: self.dim,
            ineq,
            eq,
        })
    }

    /// `{x + shift : x in self}`.
    pub fn translate(&self, shift: &[Q]) -> HPolyhedron {
        assert_eq!(shift.len(), self.dim);
        HPolyhedron {
            dim: self.dim,
            ineq: self
                .ineq
                .iter()
                .map(|(a, b)| (a.clone(), b + &dot(a, shift)))
                .collect(),
            eq: self
                .eq
                .iter()
                .map(|(e, c)| (e.clone(), c + &dot(e, shift)))
                .collect(),
        }
    }

    /// `{-x : x in self}`.
    pub fn negate(&self) -> HPolyhedron {
        HPolyhedron {
            dim: self.dim,
            ineq: self
                .ineq
                .iter()
                .map(|(a, b)| (vec_neg(a), b.clone()))
                .collect(),
            eq: self
                .eq
                .iter()
                .map(|(e, c)| (vec_neg(e), c.clone()))
                .collect(),
        }
    }

    /// Exact orthogonal projection onto the coordinates in `keep`
    /// (ascending), via Fourier-Motzkin elimination with LP redundancy
    /// pruning after every eliminated variable.
    pub fn project(&self, keep: &[usize]) -> Result<HPolyhedron> {
        let mut keep: Vec<usize> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if keep.iter().any(|&k| k >= self.dim) {
            return Err(Error::ShapeMismatch(format!(
                "projection index out of range for dimension {}",
                self.dim
            )));
        }
        let out_dim = keep.len();
        if self.is_empty() {
            return Ok(HPolyhedron::empty(out_dim));
        }
        let mut work = Working::from_poly(self);
        let mut drop: Vec<usize> = (0..self.dim).filter(|i| !keep.contains(i)).collect();
        // Mid-elimination LP pruning pays off only once combination rows
        // pile up; the final canonicalization prunes exactly either way.
        let prune_threshold = 4 * (self.dim + 1);
        while !drop.is_empty() {
            let var = work.pick_elimination_var(&drop);
            drop.retain(|&v| v != var);
            if !work.eliminate(var) {
                return Ok(HPolyhedron::empty(out_dim));
            }
            if work.ineq.len() > prune_threshold {
                work.prune();
            }
        }
        // Eliminated columns are zero by now; restrict to the kept ones.
        let full = work.into_poly();
        let select = |(a, b): &(Vector, Q)| -> (Vector, Q) {
            (keep.iter().map(|&k| a[k].clone()).collect(), b.clone())
        };
        let restricted = HPolyhedron {
            dim: out_dim,
            ineq: full.ineq.iter().map(select).collect(),
            eq: full.eq.iter().map(select).collect(),
        };
        Ok(restricted.canonicalize())
    }

    /// `{u + v : u in self, v in other}`.
    pub fn minkowski_sum(&self, other: &HPolyhedron) -> Result<HPolyhedron> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let n = self.dim;
        // Variables (w, v); self constrains w - v, other constrains v.
        let mut sys = HPolyhedron::universe(2 * n);
        for (a, b) in &self.ineq {
            let mut row = a.clone();
            row.extend(vec_neg(a));
            sys.push_ineq(row, b.clone());
        }
        for (e, c) in &self.eq {
            let mut row = e.clone();
            row.extend(vec_neg(e));
            sys.push_eq(row, c.clone());
        }
        for (a, b) in &other.ineq {
            let mut row = zero_vec(n);
            row.extend(a.iter().cloned());
            sys.push_ineq(row, b.clone());
        }
        for (e, c) in &other.eq {
            let mut row = zero_vec(n);
            row.extend(e.iter().cloned());
            sys.push_eq(row, c.clone());
        }
        sys.project(&(0..n).collect::<Vec<_>>())
    }

    /// Algebraic difference `{u - v : u in self, v in other}`.
    pub fn minkowski_diff(&self, other: &HPolyhedron) -> Result<HPolyhedron> {
        self.minkowski_sum(&other.negate())
    }

    /// True iff a closed sup-norm ball of some positive rational radius
    /// around the origin fits inside the set. Exact row test: every
    /// inequality needs positive slack at the origin and every equality
    /// must be trivial.
    pub fn origin_in_interior(&self) -> bool {
        for (a, b) in &self.ineq {
            if is_zero_vec(a) {
                if b.is_negative() {
                    return false;
                }
            } else if !b.is_positive() {
                return false;
            }
        }
        for (e, c) in &self.eq {
            if !is_zero_vec(e) || !c.is_zero() {
                return false;
            }
        }
        true
    }

    /// A point of the interior of `self` that also lies in `other`,
    /// or `None` when `int(self) ∩ other` is empty. Solves one LP that
    /// maximizes a uniform slack variable.
    pub fn interior_point_meeting(&self, other: &HPolyhedron) -> Result<Option<Vector>> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        for (e, c) in &self.eq {
            if !is_zero_vec(e) {
                return Ok(None);
            }
            if !c.is_zero() {
                return Ok(None);
            }
        }
        let n = self.dim;
        // Variables (x, r): maximize r with a_i x + |a_i|_1 r <= b_i.
        let mut sys = HPolyhedron::universe(n + 1);
        for (a, b) in &self.ineq {
            let norm1: Q = a.iter().map(Q::abs).sum();
            let mut row = a.clone();
            row.push(norm1);
            sys.push_ineq(row, b.clone());
        }
        for (a, b) in &other.ineq {
            let mut row = a.clone();
            row.push(Q::zero());
            sys.push_ineq(row, b.clone());
        }
        for (e, c) in &other.eq {
            let mut row = e.clone();
            row.push(Q::zero());
            sys.push_eq(row, c.clone());
        }
        let mut cap = zero_vec(n + 1);
        cap[n] = Q::one();
        sys.push_ineq(cap.clone(), Q::one());
        match solve_lp(&cap, Sense::Max, &sys)? {
            LpOutcome::Optimal { value, mut point, .. } if value.is_positive() => {
                point.truncate(n);
                Ok(Some(point))
            }
            _ => Ok(None),
        }
    }

    /// Whether the set has nonempty interior.
    pub fn is_solid(&self) -> Result<bool> {
        Ok(self
            .interior_point_meeting(&HPolyhedron::universe(self.dim))?
            .is_some())
    }

    /// `{Ax + shift : x in self}` for a `rows x dim` matrix, computed on
    /// generators: vertices map through the affine map, rays and lineality
    /// through its linear part.
    pub fn affine_image(&self, a: &Matrix, shift: &[Q]) -> Result<HPolyhedron> {
        let rows = a.len();
        if shift.len() != rows || a.iter().any(|r| r.len() != self.dim) {
            return Err(Error::ShapeMismatch(
                "affine image expects a rows x dim matrix with matching shift".into(),
            ));
        }
        if self.is_empty() {
            return Ok(HPolyhedron::empty(rows));
        }
        let gens = self.h_to_v()?;
        let apply = |x: &Vector| -> Vector { a.iter().map(|arow| dot(arow, x)).collect() };
        let mut vertices: Vec<Vector> = gens
            .vertices
            .iter()
            .map(|v| {
                let mut y = apply(v);
                for (yi, si) in y.iter_mut().zip(shift) {
                    *yi += si;
                }
                y
            })
            .collect();
        vertices.sort_by(|x, y| lex_cmp(x, y));
        vertices.dedup();
        let mut rays: Vec<Vector> = gens
            .rays
            .iter()
            .map(|r| primitive(&apply(r)))
            .filter(|r| !is_zero_vec(r))
            .collect();
        rays.sort_by(|x, y| lex_cmp(x, y));
        rays.dedup();
        let mut lineality: Vec<Vector> = gens
            .lineality
            .iter()
            .map(|l| primitive(&apply(l)))
            .filter(|l| !is_zero_vec(l))
            .collect();
        lineality.sort_by(|x, y| lex_cmp(x, y));
        lineality.dedup();
        Ok(HPolyhedron::v_to_h(&Generators {
            dim: rows,
            vertices,
            rays,
            lineality,
        }))
    }

    /// `{x : Ax + shift in self}` for a `dim x cols` matrix; pure
    /// substitution, no projection involved.
    pub fn affine_preimage(&self, a: &Matrix, shift: &[Q]) -> Result<HPolyhedron> {
        if a.len() != self.dim || shift.len() != self.dim {
            return Err(Error::ShapeMismatch(
                "affine preimage expects a dim x cols matrix with matching shift".into(),
            ));
        }
        let cols = a.first().map_or(0, Vec::len);
        if a.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged matrix".into()));
        }
        let compose = |(c, b): (&Vector, &Q)| -> (Vector, Q) {
            // c . (Ax + shift) <= b  =>  (c A) x <= b - c . shift
            let mut row = zero_vec(cols);
            for (ci, arow) in c.iter().zip(a) {
                if !ci.is_zero() {
                    for (rj, aij) in row.iter_mut().zip(arow) {
                        *rj += &(ci * aij);
                    }
                }
            }
            (row, b - &dot(c, shift))
        };
        Ok(HPolyhedron {
            dim: cols,
            ineq: self.ineq.iter().map(|(c, b)| compose((c, b))).collect(),
            eq: self.eq.iter().map(|(e, c)| compose((e, c))).collect(),
        })
    }

    /// Exact subset test: every inequality of `other` is satisfied by the
    /// maximum over `self`, and every equality of `other` is tight on
    /// `self`. The empty set is a subset of everything.
    pub fn is_subset(&self, other: &HPolyhedron) -> Result<bool> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        if self.is_empty() {
            return Ok(true);
        }
        for (a, b) in &other.ineq {
            match solve_lp(a, Sense::Max, self)? {
                LpOutcome::Optimal { value, .. } => {
                    if value > *b {
                        return Ok(false);
                    }
                }
                LpOutcome::Unbounded { .. } => return Ok(false),
                LpOutcome::Infeasible { .. } => unreachable!("nonempty by probe"),
            }
        }
        for (e, c) in &other.eq {
            for sense in [Sense::Max, Sense::Min] {
                match solve_lp(e, sense, self)? {
                    LpOutcome::Optimal { value, .. } => {
                        if value != *c {
                            return Ok(false);
                        }
                    }
                    LpOutcome::Unbounded { .. } => return Ok(false),
                    LpOutcome::Infeasible { .. } => unreachable!("nonempty by probe"),
                }
            }
        }
        Ok(true)
    }

    pub fn set_equal(&self, other: &HPolyhedron) -> Result<bool> {
        Ok(self.is_subset(other)? && other.is_subset(self)?)
    }

    /// The recession cone read off the constraint rows (valid for a
    /// nonempty set): inequalities with zeroed bounds, equalities kept
    /// homogeneous.
    pub fn recession_cone(&self) -> PolyhedralCone {
        let p = HPolyhedron {
            dim: self.dim,
            ineq: self
                .ineq
                .iter()
                .filter(|(a, _)| !is_zero_vec(a))
                .map(|(a, _)| (a.clone(), Q::zero()))
                .collect(),
            eq: self
                .eq
                .iter()
                .filter(|(e, _)| !is_zero_vec(e))
                .map(|(e, _)| (e.clone(), Q::zero()))
                .collect(),
        };
        PolyhedralCone(p)
    }

    /// Membership of `d` in the recession cone (valid for a nonempty set).
    pub fn recession_contains(&self, d: &[Q]) -> bool {
        self.ineq.iter().all(|(a, _)| !dot(a, d).is_positive())
            && self.eq.iter().all(|(e, _)| dot(e, d).is_zero())
    }

    /// Boundedness via coordinate-wise LPs.
    pub fn is_bounded(&self) -> Result<bool> {
        for i in 0..self.dim {
            let mut e = zero_vec(self.dim);
            e[i] = Q::one();
            for sense in [Sense::Max, Sense::Min] {
                if matches!(solve_lp(&e, sense, self)?, LpOutcome::Unbounded { .. }) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Smallest closed polyhedral cone containing the set (the closure of
    /// the set of nonnegative multiples). Errors on the empty set.
    pub fn conic_hull(&self) -> Result<PolyhedralCone> {
        let gens = self.h_to_v()?;
        let mut rays: Vec<Vector> = Vec::new();
        for v in gens.vertices.iter().chain(gens.rays.iter()) {
            if !is_zero_vec(v) {
                rays.push(primitive(v));
            }
        }
        Ok(cone_from_generators(self.dim, &rays, &gens.lineality))
    }

    /// Constraint-to-generator conversion (double description).
    /// Errors on the empty set.
    pub fn h_to_v(&self) -> Result<Generators> {
        if self.is_empty() {
            return Err(Error::EmptyInput("h_to_v requires a nonempty polyhedron"));
        }
        // Homogenize: {(x, t) : Ax <= bt, Ex = ct, t >= 0}.
        let d = self.dim + 1;
        let mut ineq_normals: Vec<Vector> = Vec::with_capacity(self.ineq.len() + 1);
        for (a, b) in &self.ineq {
            let mut row = a.clone();
            row.push(-b);
            ineq_normals.push(row);
        }
        let mut t_row = zero_vec(d);
        t_row[self.dim] = -Q::one();
        ineq_normals.push(t_row);
        let eq_normals: Vec<Vector> = self
            .eq
            .iter()
            .map(|(e, c)| {
                let mut row = e.clone();
                row.push(-c);
                row
            })
            .collect();
        let (lineality, rays) = cone_generators(d, &ineq_normals, &eq_normals);

        let mut vertices = Vec::new();
        let mut rec_rays = Vec::new();
        for r in rays {
            let t = &r[self.dim];
            match t.cmp_zero() {
                std::cmp::Ordering::Greater => {
                    let inv = t.recip();
                    vertices.push(r[..self.dim].iter().map(|x| x * &inv).collect::<Vector>());
                }
                std::cmp::Ordering::Equal => rec_rays.push(primitive(&r[..self.dim])),
                std::cmp::Ordering::Less => unreachable!("homogenization forces t >= 0"),
            }
        }
        let mut lin = Vec::new();
        for l in lineality {
            debug_assert!(l[self.dim].is_zero(), "lineality cannot tilt the t axis");
            lin.push(primitive(&l[..self.dim]));
        }
        vertices.sort_by(|a, b| lex_cmp(a, b));
        rec_rays.sort_by(|a, b| lex_cmp(a, b));
        lin.sort_by(|a, b| lex_cmp(a, b));
        debug_assert!(!vertices.is_empty(), "nonempty polyhedron yields a vertex");
        Ok(Generators {
            dim: self.dim,
            vertices,
            rays: rec_rays,
            lineality: lin,
        })
    }

    /// Generator-to-constraint conversion; inverse of [`h_to_v`] up to
    /// canonicalization.
    pub fn v_to_h(gens: &Generators) -> HPolyhedron {
        if gens.vertices.is_empty() {
            return HPolyhedron::empty(gens.dim);
        }
        let d = gens.dim + 1;
        // Polar of the lifted cone C = cone{(v,1)} + cone{(r,0)} + span{(l,0)}.
        let mut ineq_normals: Vec<Vector> = Vec::new();
        for v in &gens.vertices {
            let mut row = v.clone();
            row.push(Q::one());
            ineq_normals.push(row);
        }
        for r in &gens.rays {
            let mut row = r.clone();
            row.push(Q::zero());
            ineq_normals.push(row);
        }
        let eq_normals: Vec<Vector> = gens
            .lineality
            .iter()
            .map(|l| {
                let mut row = l.clone();
                row.push(Q::zero());
                row
            })
            .collect();
        let (polar_lin, polar_rays) = cone_generators(d, &ineq_normals, &eq_normals);
        // Each polar ray (a, beta) is a valid row <a, x> <= -beta; polar
        // lineality vectors give equality rows.
        let mut out = HPolyhedron::universe(gens.dim);
        for r in polar_rays {
            let (a, beta) = (r[..gens.dim].to_vec(), r[gens.dim].clone());
            out.push_ineq(a, -beta);
        }
        for l in polar_lin {
            let (e, gamma) = (l[..gens.dim].to_vec(), l[gens.dim].clone());
            out.push_eq(e, -gamma);
        }
        // The polar rays are extreme, so the rows are already irredundant;
        // only normalization and ordering are needed.
        out.tidy()
    }

    /// Light canonical form: primitive rows, merged equality pairs, no
    /// duplicates, lexicographic order -- without the LP redundancy sweep.
    /// Used on conversion outputs whose rows are minimal by construction.
    pub fn tidy(&self) -> HPolyhedron {
        let mut work = Working::from_poly(self);
        if !work.cleanup() {
            return HPolyhedron::empty(self.dim);
        }
        let mut p = work.into_poly();
        p.ineq.sort_by(|(a1, b1), (a2, b2)| lex_cmp(a1, a2).then(b1.cmp(b2)));
        p.eq.sort_by(|(a1, b1), (a2, b2)| lex_cmp(a1, a2).then(b1.cmp(b2)));
        p
    }

    /// Canonical form: primitive rows, merged equality pairs, no
    /// duplicates, no redundant rows (LP-tested), lexicographic order.
    /// Empty sets collapse to the canonical empty representation.
    pub fn canonicalize(&self) -> HPolyhedron {
        let mut work = Working::from_poly(self);
        if !work.cleanup() {
            return HPolyhedron::empty(self.dim);
        }
        if work.clone().into_poly().is_empty() {
            return HPolyhedron::empty(self.dim);
        }
        work.prune();
        let mut p = work.into_poly();
        p.ineq.sort_by(|(a1, b1), (a2, b2)| lex_cmp(a1, a2).then(b1.cmp(b2)));
        p.eq.sort_by(|(a1, b1), (a2, b2)| lex_cmp(a1, a2).then(b1.cmp(b2)));
        p
    }
}

/// H-form of `cone(rays) + span(lineality)` via the polar cone.
pub fn cone_from_generators(dim: usize, rays: &[Vector], lineality: &[Vector]) -> PolyhedralCone {
    let (polar_lin, polar_rays) = cone_generators(dim, rays, lineality);
    let mut out = HPolyhedron::universe(dim);
    for r in polar_rays {
        out.push_ineq(r, Q::zero());
    }
    for l in polar_lin {
        out.push_eq(l, Q::zero());
    }
    PolyhedralCone(out.tidy())
}

/// Double-description kernel: generators of the cone
/// `{y : <n, y> <= 0 for n in ineq_normals, <m, y> = 0 for m in eq_normals}`
/// as a lineality basis plus extreme rays (primitive, sorted).
///
/// The cone is first split off its lineality space, the pointed remainder
/// is seeded with a maximal independent subset of constraints, and the
/// remaining constraints are inserted one at a time with the combinatorial
/// adjacency test bounding the ray combinations.
pub fn cone_generators(
    dim: usize,
    ineq_normals: &[Vector],
    eq_normals: &[Vector],
) -> (Matrix, Vec<Vector>) {
    let mut all: Matrix = ineq_normals.to_vec();
    all.extend(eq_normals.iter().cloned());
    let lineality = nullspace(&all, dim);
    let complement = rowspace(&all);
    let d = complement.len();
    if d == 0 {
        return (lineality, vec![]);
    }

    // Reduced constraints in the coordinates of the complement basis.
    let reduce = |v: &Vector| -> Vector { complement.iter().map(|w| dot(w, v)).collect() };
    let mut constraints: Vec<Vector> = Vec::new();
    for n in ineq_normals {
        constraints.push(reduce(n));
    }
    for m in eq_normals {
        let r = reduce(m);
        constraints.push(vec_neg(&r));
        constraints.push(r);
    }

    // Seed with the first maximal independent subset.
    let mut seed: Vec<usize> = Vec::new();
    let mut seed_rows: Matrix = Vec::new();
    for (i, c) in constraints.iter().enumerate() {
        if seed.len() == d {
            break;
        }
        seed_rows.push(c.clone());
        if crate::linalg::rank(&seed_rows) == seed.len() + 1 {
            seed.push(i);
        } else {
            seed_rows.pop();
        }
    }
    debug_assert_eq!(seed.len(), d, "constraints span the complement");

    // Initial rays: negated dual basis of the seed normals.
    let words = constraints.len().div_ceil(64);
    let mut rays: Vec<Vector> = Vec::new();
    let mut active: Vec<BitSet> = Vec::new();
    for k in 0..d {
        let mut rhs = zero_vec(d);
        rhs[k] = -Q::one();
        let r = solve_square(&seed_rows, &rhs).expect("seed rows are independent");
        let mut act = BitSet::new(words);
        for (j, &cidx) in seed.iter().enumerate() {
            if j != k {
                act.set(cidx);
            }
        }
        rays.push(primitive(&r));
        active.push(act);
    }

    for t in 0..constraints.len() {
        if seed.contains(&t) {
            continue;
        }
        let ct = &constraints[t];
        let vals: Vec<Q> = rays.iter().map(|r| dot(ct, r)).collect();
        let has_pos = vals.iter().any(Q::is_positive);
        if !has_pos {
            for (r, v) in active.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.set(t);
                }
            }
            continue;
        }
        let mut next_rays: Vec<Vector> = Vec::new();
        let mut next_active: Vec<BitSet> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if !vals[i].is_positive() {
                let mut act = active[i].clone();
                if vals[i].is_zero() {
                    act.set(t);
                }
                next_rays.push(r.clone());
                next_active.push(act);
            }
        }
        for (i, ri) in rays.iter().enumerate() {
            if !vals[i].is_positive() {
                continue;
            }
            for (j, rj) in rays.iter().enumerate() {
                if !vals[j].is_negative() {
                    continue;
                }
                if !adjacent(&active, i, j, rays.len()) {
                    continue;
                }
                // vals[i] * rj - vals[j] * ri kills constraint t.
                let combo = vec_sub(&vec_scale(&vals[i], rj), &vec_scale(&vals[j], ri));
                let mut act = active[i].intersect(&active[j]);
                act.set(t);
                next_rays.push(primitive(&combo));
                next_active.push(act);
            }
        }
        rays = next_rays;
        active = next_active;
    }

    // Map back to ambient coordinates.
    let mut out: Vec<Vector> = rays
        .iter()
        .map(|u| {
            let mut y = zero_vec(dim);
            for (uk, wk) in u.iter().zip(&complement) {
                if !uk.is_zero() {
                    for (yi, wi) in y.iter_mut().zip(wk) {
                        *yi += &(uk * wi);
                    }
                }
            }
            primitive(&y)
        })
        .collect();
    out.sort_by(|a, b| lex_cmp(a, b));
    out.dedup();
    (lineality, out)
}

/// Word-packed constraint activity set for the adjacency test.
#[derive(Clone)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(words: usize) -> Self {
        BitSet(vec![0; words])
    }

    fn set(&mut self, idx: usize) {
        self.0[idx / 64] |= 1 << (idx % 64);
    }

    fn intersect(&self, other: &BitSet) -> BitSet {
        BitSet(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a & b)
                .collect(),
        )
    }

    fn contains_intersection(&self, a: &BitSet, b: &BitSet) -> bool {
        self.0
            .iter()
            .zip(a.0.iter().zip(&b.0))
            .all(|(s, (x, y))| (x & y) & !s == 0)
    }
}

/// Combinatorial adjacency: rays `i` and `j` are adjacent iff no third ray
/// is active on every constraint where both are active.
fn adjacent(active: &[BitSet], i: usize, j: usize, nrays: usize) -> bool {
    for k in 0..nrays {
        if k == i || k == j {
            continue;
        }
        if active[k].contains_intersection(&active[i], &active[j]) {
            return false;
        }
    }
    true
}

/// Mutable row system used by projection and canonicalization.
#[derive(Clone)]
struct Working {
    dim: usize,
    ineq: Vec<(Vector, Q)>,
    eq: Vec<(Vector, Q)>,
}

impl Working {
    fn from_poly(p: &HPolyhedron) -> Self {
        Working {
            dim: p.dim,
            ineq: p.ineq.clone(),
            eq: p.eq.clone(),
        }
    }

    fn into_poly(self) -> HPolyhedron {
        HPolyhedron {
            dim: self.dim,
            ineq: self.ineq,
            eq: self.eq,
        }
    }

    /// Normalizes, deduplicates, drops trivial rows, and merges opposite
    /// inequality pairs into equalities. Returns false when a row is an
    /// outright contradiction.
    fn cleanup(&mut self) -> bool {
        let mut ineq_map: BTreeMap<Vector, Q> = BTreeMap::new();
        for (a, b) in std::mem::take(&mut self.ineq) {
            if is_zero_vec(&a) {
                if b.is_negative() {
                    return false;
                }
                continue;
            }
            let scale = primitive_scale(&a);
            let a = primitive(&a);
            let b = &scale * &b;
            match ineq_map.get_mut(&a) {
                Some(existing) => {
                    if b < *existing {
                        *existing = b;
                    }
                }
                None => {
                    ineq_map.insert(a, b);
                }
            }
        }
        let mut eq_set: BTreeMap<Vector, Q> = BTreeMap::new();
        let mut push_eq = |e: Vector, c: Q| -> bool {
            // Sign-normalize so the first nonzero coefficient is positive.
            let flip = e.iter().find(|v| !v.is_zero()).is_some_and(Q::is_negative);
            let (e, c) = if flip { (vec_neg(&e), -c) } else { (e, c) };
            match eq_set.get(&e) {
                Some(existing) => existing == &c,
                None => {
                    eq_set.insert(e, c);
                    true
                }
            }
        };
        for (e, c) in std::mem::take(&mut self.eq) {
            if is_zero_vec(&e) {
                if !c.is_zero() {
                    return false;
                }
                continue;
            }
            let scale = primitive_scale(&e);
            if !push_eq(primitive(&e), &scale * &c) {
                return false;
            }
        }
        // Opposite inequality pairs with matching bounds become equalities.
        let keys: Vec<Vector> = ineq_map.keys().cloned().collect();
        for a in keys {
            let Some(b) = ineq_map.get(&a).cloned() else {
                continue;
            };
            let na = vec_neg(&a);
            if let Some(nb) = ineq_map.get(&na) {
                let nb = nb.clone();
                if nb == -&b {
                    ineq_map.remove(&a);
                    ineq_map.remove(&na);
                    if !push_eq(a, b) {
                        return false;
                    }
                } else if -&nb > b {
                    // a x <= b together with a x >= -nb > b: empty.
                    return false;
                }
            }
        }
        self.ineq = ineq_map.into_iter().collect();
        self.eq = eq_set.into_iter().collect();
        true
    }

    /// Removes rows whose deletion does not change the set (one LP each,
    /// in lexicographic order for determinism). Assumes a nonempty,
    /// cleaned system.
    fn prune(&mut self) {
        let mut i = 0;
        while i < self.ineq.len() {
            let (a, b) = self.ineq[i].clone();
            let mut trial = self.clone();
            trial.ineq.remove(i);
            let redundant = match solve_lp(&a, Sense::Max, &trial.into_poly()) {
                Ok(LpOutcome::Optimal { value, .. }) => value <= b,
                Ok(_) => false,
                Err(_) => false,
            };
            if redundant {
                self.ineq.remove(i);
            } else {
                i += 1;
            }
        }
        let mut k = 0;
        while k < self.eq.len() {
            let (e, c) = self.eq[k].clone();
            let mut trial = self.clone();
            trial.eq.remove(k);
            let trial = trial.into_poly();
            let tight = |sense| match solve_lp(&e, sense, &trial) {
                Ok(LpOutcome::Optimal { value, .. }) => value == c,
                _ => false,
            };
            if tight(Sense::Max) && tight(Sense::Min) {
                self.eq.remove(k);
            } else {
                k += 1;
            }
        }
    }

    /// Chooses the next variable to eliminate: prefer equality
    /// substitution, otherwise the smallest Fourier-Motzkin product.
    fn pick_elimination_var(&self, candidates: &[usize]) -> usize {
        for &v in candidates {
            if self.eq.iter().any(|(e, _)| !e[v].is_zero()) {
                return v;
            }
        }
        let mut best = candidates[0];
        let mut best_cost = usize::MAX;
        for &v in candidates {
            let pos = self.ineq.iter().filter(|(a, _)| a[v].is_positive()).count();
            let neg = self.ineq.iter().filter(|(a, _)| a[v].is_negative()).count();
            let cost = pos * neg;
            if cost < best_cost {
                best_cost = cost;
                best = v;
            }
        }
        best
    }

    /// Eliminates one variable in place (the column is zeroed, not
    /// removed). Returns false when a contradiction surfaces.
    fn eliminate(&mut self, var: usize) -> bool {
        if let Some(pivot_idx) = self.eq.iter().position(|(e, _)| !e[var].is_zero()) {
            let (pe, pc) = self.eq.remove(pivot_idx);
            let inv = pe[var].recip();
            let substitute = |(a, b): &mut (Vector, Q)| {
                if a[var].is_zero() {
                    return;
                }
                let factor = &a[var] * &inv;
                for (ai, pi) in a.iter_mut().zip(&pe) {
                    *ai -= &(&factor * pi);
                }
                *b -= &(&factor * &pc);
                debug_assert!(a[var].is_zero());
            };
            self.ineq.iter_mut().for_each(substitute);
            self.eq.iter_mut().for_each(substitute);
        } else {
            let rows = std::mem::take(&mut self.ineq);
            let (mut zero, mut pos, mut neg) = (Vec::new(), Vec::new(), Vec::new());
            for row in rows {
                match row.0[var].cmp_zero() {
                    std::cmp::Ordering::Equal => zero.push(row),
                    std::cmp::Ordering::Greater => pos.push(row),
                    std::cmp::Ordering::Less => neg.push(row),
                }
            }
            for (ap, bp) in &pos {
                for (an, bn) in &neg {
                    // |c_n| * row_p + |c_p| * row_n cancels the column.
                    let wp = an[var].abs();
                    let wn = ap[var].clone();
                    let a: Vector = ap
                        .iter()
                        .zip(an)
                        .map(|(x, y)| &(&wp * x) + &(&wn * y))
                        .collect();
                    debug_assert!(a[var].is_zero());
                    zero.push((a, &(&wp * bp) + &(&wn * bn)));
                }
            }
            self.ineq = zero;
        }
        self.cleanup()
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

    fn unit_box(dim: usize) -> HPolyhedron {
        HPolyhedron::hypercube(dim, Q::one())
    }

    #[test]
    fn membership() {
        let b = unit_box(2);
        assert!(b.contains(&qv(&[0, 0])).unwrap());
        assert!(!b.contains(&qv(&[2, 0])).unwrap());
        let line = HPolyhedron::new(2, vec![], vec![(qv(&[1, 0]), Q::zero())]).unwrap();
        assert!(line.contains(&qv(&[0, 5])).unwrap());
        assert!(b.contains(&qv(&[0])).is_err());
    }

    #[test]
    fn projection_of_triangle() {
        // {(x,y): x+y <= 1, x >= 0, y >= 0} onto x is [0,1].
        let t = HPolyhedron::new(
            2,
            vec![
                (qv(&[1, 1]), Q::one()),
                (qv(&[-1, 0]), Q::zero()),
                (qv(&[0, -1]), Q::zero()),
            ],
            vec![],
        )
        .unwrap();
        let shadow = t.project(&[0]).unwrap();
        assert!(shadow
            .set_equal(&HPolyhedron::interval(Q::zero(), Q::one()))
            .unwrap());
    }

    #[test]
    fn projection_of_product_recovers_factor() {
        let p = HPolyhedron::new(
            2,
            vec![(qv(&[1, 1]), Q::one()), (qv(&[-1, 0]), Q::one())],
            vec![],
        )
        .unwrap();
        let cube = unit_box(3);
        let prod = p.product(&cube);
        let shadow = prod.project(&[0, 1]).unwrap();
        assert!(shadow.set_equal(&p).unwrap());
    }

    #[test]
    fn projection_with_equality_pair_is_whole_line() {
        // {(x,y): y >= 2x, y <= 2x} onto x: eliminating y leaves all of Q.
        let p = HPolyhedron::new(
            2,
            vec![(qv(&[2, -1]), Q::zero()), (qv(&[-2, 1]), Q::zero())],
            vec![],
        )
        .unwrap();
        let shadow = p.project(&[0]).unwrap();
        assert!(shadow.set_equal(&HPolyhedron::universe(1)).unwrap());
    }

    #[test]
    fn minkowski_differences() {
        let i01 = HPolyhedron::interval(Q::zero(), Q::one());
        let d = i01.minkowski_diff(&i01).unwrap();
        assert!(d
            .set_equal(&HPolyhedron::interval(-Q::one(), Q::one()))
            .unwrap());

        let sq = HPolyhedron::box_bounds(&qv(&[0, 0]), &qv(&[1, 1])).unwrap();
        let pt = HPolyhedron::singleton(&qv(&[2, 2]));
        let shifted = sq.minkowski_diff(&pt).unwrap();
        let expected = HPolyhedron::box_bounds(&qv(&[-2, -2]), &qv(&[-1, -1])).unwrap();
        assert!(shifted.set_equal(&expected).unwrap());

        // {0} - [0, inf) = (-inf, 0]
        let origin = HPolyhedron::singleton(&qv(&[0]));
        let halfline = HPolyhedron::new(1, vec![(qv(&[-1]), Q::zero())], vec![]).unwrap();
        let diff = origin.minkowski_diff(&halfline).unwrap();
        let expected = HPolyhedron::new(1, vec![(qv(&[1]), Q::zero())], vec![]).unwrap();
        assert!(diff.set_equal(&expected).unwrap());
    }

    #[test]
    fn minkowski_sum_with_origin_is_identity() {
        let p = unit_box(2);
        let zero = HPolyhedron::singleton(&qv(&[0, 0]));
        assert!(p.minkowski_sum(&zero).unwrap().set_equal(&p).unwrap());
        assert!(p
            .minkowski_diff(&p)
            .unwrap()
            .contains(&qv(&[0, 0]))
            .unwrap());
    }

    #[test]
    fn interiority_of_origin() {
        assert!(unit_box(2).origin_in_interior());
        assert!(!HPolyhedron::interval(Q::zero(), Q::one()).origin_in_interior());
        let line = HPolyhedron::new(1, vec![], vec![(qv(&[1]), Q::zero())]).unwrap();
        assert!(!line.origin_in_interior());
    }

    #[test]
    fn conic_hulls() {
        // {(1,1)} generates the ray t(1,1).
        let pt = HPolyhedron::singleton(&qv(&[1, 1]));
        let cone = pt.conic_hull().unwrap();
        assert!(cone.contains(&qv(&[3, 3])).unwrap());
        assert!(!cone.contains(&qv(&[1, 2])).unwrap());
        assert!(!cone.contains(&qv(&[-1, -1])).unwrap());

        // [-1,1] generates the whole line.
        let seg = HPolyhedron::interval(-Q::one(), Q::one());
        let cone = seg.conic_hull().unwrap();
        assert!(cone.as_poly().set_equal(&HPolyhedron::universe(1)).unwrap());

        // [1,2] generates [0, inf).
        let seg = HPolyhedron::interval(Q::one(), Q::from_int(2));
        let cone = seg.conic_hull().unwrap();
        let halfline = HPolyhedron::new(1, vec![(qv(&[-1]), Q::zero())], vec![]).unwrap();
        assert!(cone.as_poly().set_equal(&halfline).unwrap());

        assert!(HPolyhedron::empty(2).conic_hull().is_err());
    }

    #[test]
    fn subspace_detection() {
        assert!(PolyhedralCone::whole_space(3).is_subspace().unwrap());
        assert!(PolyhedralCone::origin(2).is_subspace().unwrap());
        let halfline =
            PolyhedralCone::new(HPolyhedron::new(1, vec![(qv(&[-1]), Q::zero())], vec![]).unwrap())
                .unwrap();
        assert!(!halfline.is_subspace().unwrap());
    }

    #[test]
    fn square_generators() {
        let sq = HPolyhedron::box_bounds(&qv(&[0, 0]), &qv(&[1, 1])).unwrap();
        let g = sq.h_to_v().unwrap();
        assert_eq!(g.vertices.len(), 4);
        assert!(g.rays.is_empty() && g.lineality.is_empty());
        assert!(g.vertices.contains(&qv(&[0, 0])));
        assert!(g.vertices.contains(&qv(&[1, 1])));
    }

    #[test]
    fn halfline_generators() {
        let p = HPolyhedron::new(1, vec![(qv(&[-1]), Q::zero())], vec![]).unwrap();
        let g = p.h_to_v().unwrap();
        assert_eq!(g.vertices, vec![qv(&[0])]);
        assert_eq!(g.rays, vec![qv(&[1])]);
        assert!(g.lineality.is_empty());
    }

    #[test]
    fn absolute_value_epigraph_generators() {
        // {(x,y): y >= |x|} has vertex (0,0) and rays (1,1), (-1,1).
        let p = HPolyhedron::new(
            2,
            vec![(qv(&[1, -1]), Q::zero()), (qv(&[-1, -1]), Q::zero())],
            vec![],
        )
        .unwrap();
        let g = p.h_to_v().unwrap();
        assert_eq!(g.vertices, vec![qv(&[0, 0])]);
        assert_eq!(g.rays.len(), 2);
        assert!(g.rays.contains(&qv(&[1, 1])));
        assert!(g.rays.contains(&qv(&[-1, 1])));
    }

    #[test]
    fn round_trip_h_v_h() {
        for p in [
            unit_box(2),
            HPolyhedron::new(
                2,
                vec![(qv(&[1, -1]), Q::zero()), (qv(&[-1, -1]), Q::zero())],
                vec![],
            )
            .unwrap(),
            HPolyhedron::new(2, vec![(qv(&[1, 0]), Q::one())], vec![(qv(&[0, 1]), q(1, 2))])
                .unwrap(),
        ] {
            let g = p.h_to_v().unwrap();
            let back = HPolyhedron::v_to_h(&g);
            assert!(back.set_equal(&p).unwrap(), "round trip failed for {p:?}");
        }
    }

    #[test]
    fn affine_maps() {
        // image of [0,1] under x -> 2x+1 is [1,3]
        let seg = HPolyhedron::interval(Q::zero(), Q::one());
        let img = seg
            .affine_image(&vec![qv(&[2])], &qv(&[1]))
            .unwrap();
        assert!(img
            .set_equal(&HPolyhedron::interval(Q::one(), Q::from_int(3)))
            .unwrap());

        // preimage of [0,1] under x -> 2x is [0,1/2]
        let pre = seg
            .affine_preimage(&vec![qv(&[2])], &qv(&[0]))
            .unwrap();
        assert!(pre
            .set_equal(&HPolyhedron::interval(Q::zero(), q(1, 2)))
            .unwrap());

        // image of the unit square under (x,y) -> x+y is [0,2]
        let sq = HPolyhedron::box_bounds(&qv(&[0, 0]), &qv(&[1, 1])).unwrap();
        let img = sq.affine_image(&vec![qv(&[1, 1])], &qv(&[0])).unwrap();
        assert!(img
            .set_equal(&HPolyhedron::interval(Q::zero(), Q::from_int(2)))
            .unwrap());
    }

    #[test]
    fn subset_tests() {
        let small = HPolyhedron::interval(Q::zero(), Q::one());
        let big = HPolyhedron::interval(Q::zero(), Q::from_int(2));
        assert!(small.is_subset(&big).unwrap());
        assert!(!big.is_subset(&small).unwrap());
        assert!(HPolyhedron::empty(1).is_subset(&small).unwrap());
    }

    #[test]
    fn redundant_rows_do_not_change_the_set() {
        let sq = unit_box(2);
        let mut redundant = sq.clone();
        redundant.push_ineq(qv(&[1, 1]), Q::from_int(5));
        redundant.push_ineq(qv(&[1, 0]), Q::from_int(3));
        assert!(sq.set_equal(&redundant).unwrap());
        let canon_a = sq.canonicalize();
        let canon_b = redundant.canonicalize();
        assert_eq!(canon_a, canon_b);
    }

    #[test]
    fn canonicalize_merges_equality_pairs() {
        let p = HPolyhedron::new(
            2,
            vec![(qv(&[2, -1]), Q::zero()), (qv(&[-2, 1]), Q::zero())],
            vec![],
        )
        .unwrap();
        let c = p.canonicalize();
        assert_eq!(c.ineq().len(), 0);
        assert_eq!(c.eq().len(), 1);
    }

    #[test]
    fn empty_detection_and_canonical_form() {
        let p = HPolyhedron::new(
            1,
            vec![(qv(&[1]), -Q::one()), (qv(&[-1]), Q::from_int(-2))],
            vec![],
        )
        .unwrap();
        assert!(p.is_empty());
        assert_eq!(p.canonicalize(), HPolyhedron::empty(1));
        assert!(HPolyhedron::v_to_h(&Generators {
            dim: 1,
            vertices: vec![],
            rays: vec![qv(&[1])],
            lineality: vec![]
        })
        .is_empty());
    }

    #[test]
    fn json_round_trip() {
        let sq = unit_box(2);
        let s = serde_json::to_string(&sq).unwrap();
        let back: HPolyhedron = serde_json::from_str(&s).unwrap();
        assert_eq!(sq, back);
        let parsed: HPolyhedron = serde_json::from_str(
            r#"{"dim":1,"ineq":[["1","1/2"]],"eq":[]}"#,
        )
        .unwrap();
        assert_eq!(parsed.ineq()[0].1, q(1, 2));
        assert!(serde_json::from_str::<HPolyhedron>(r#"{"dim":2,"ineq":[["1","2"]]}"#).is_err());
    }

    #[test]
    fn bounded_detection() {
        assert!(unit_box(3).is_bounded().unwrap());
        let halfline = HPolyhedron::new(1, vec![(qv(&[-1]), Q::zero())], vec![]).unwrap();
        assert!(!halfline.is_bounded().unwrap());
    }
}
