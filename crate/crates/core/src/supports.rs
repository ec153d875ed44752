//! Support functions, normal cones, the convex extremal principle, and the
//! intersection rules with exact attainment witnesses.
//!
//! The support value of a polyhedron is computed by one LP and always comes
//! with a witness: a maximizer, an improving recession ray, or the empty-set
//! marker (`sup over the empty set = -inf`, reported, never silently
//! converted). The intersection rule recovers the attaining decomposition
//! `x* = x1* + x2*` from the dual multipliers of the stacked system, so one
//! LP yields both the value and the witness promised by the calculus.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    dot, is_zero_vec, lex_cmp, primitive, vec_add, vec_neg, vec_scale, zero_vec, Vector,
};
use crate::lp::{solve_lp, LpOutcome, Sense};
use crate::num::{ExtReal, Q};
use crate::polyhedra::{cone_from_generators, HPolyhedron, PolyhedralCone};

/// Value of a support function together with its attainment witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportValue {
    pub value: ExtReal,
    pub witness: SupportWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SupportWitness {
    /// Point of the set attaining the finite supremum.
    Maximizer(Vector),
    /// Recession direction with strictly positive pairing.
    UnboundedRay(Vector),
    /// The set is empty and the supremum is `-inf`.
    EmptySet,
}

/// Which qualification conditions hold for a pair of sets.
///
/// `difference_interiority` is the condition `0 in int(O1 - O2)`; it is
/// paired with `bounded_set` (boundedness of the second set, or of its
/// localized replacement when a reference point is supplied).
/// `attouch_brezis` asks the conic hull of the difference to be a linear
/// subspace. `any_holds` is the disjunction accepted by the intersection
/// theorems.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QCReport {
    pub difference_interiority: bool,
    pub bounded_set: bool,
    pub interiority_1_meets_2: bool,
    pub interiority_2_meets_1: bool,
    pub attouch_brezis: bool,
    pub any_holds: bool,
}

impl QCReport {
    pub fn from_flags(
        difference_interiority: bool,
        bounded_set: bool,
        interiority_1_meets_2: bool,
        interiority_2_meets_1: bool,
        attouch_brezis: bool,
    ) -> Self {
        QCReport {
            difference_interiority,
            bounded_set,
            interiority_1_meets_2,
            interiority_2_meets_1,
            attouch_brezis,
            any_holds: (difference_interiority && bounded_set)
                || interiority_1_meets_2
                || interiority_2_meets_1
                || attouch_brezis,
        }
    }
}

/// Separation witness for an extremal system: a nonzero functional with
/// `sup over O1 <= inf over O2`, plus a translation making the sets
/// disjoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalWitness {
    pub translation: Vector,
    pub separator: Vector,
    pub sup_value: Q,
    pub inf_value: Q,
}

/// `sup { <xstar, x> : x in omega }` with witness.
pub fn support(omega: &HPolyhedron, xstar: &[Q]) -> Result<SupportValue> {
    if xstar.len() != omega.dim() {
        return Err(Error::DimensionMismatch {
            expected: omega.dim(),
            got: xstar.len(),
        });
    }
    Ok(match solve_lp(xstar, Sense::Max, omega)? {
        LpOutcome::Optimal { value, point, .. } => SupportValue {
            value: ExtReal::Finite(value),
            witness: SupportWitness::Maximizer(point),
        },
        LpOutcome::Unbounded { ray, .. } => SupportValue {
            value: ExtReal::PlusInfinity,
            witness: SupportWitness::UnboundedRay(ray),
        },
        LpOutcome::Infeasible { .. } => SupportValue {
            value: ExtReal::MinusInfinity,
            witness: SupportWitness::EmptySet,
        },
    })
}

/// Normal cone to `omega` at `xbar`: the cone generated by the active
/// inequality rows plus the spans of the equality rows.
pub fn normal_cone(omega: &HPolyhedron, xbar: &[Q]) -> Result<PolyhedralCone> {
    if !omega.contains(xbar)? {
        return Err(Error::NotInSet);
    }
    let mut rays: Vec<Vector> = Vec::new();
    for (a, b) in omega.ineq() {
        if dot(a, xbar) == *b && !is_zero_vec(a) {
            rays.push(primitive(a));
        }
    }
    let lineality: Vec<Vector> = omega
        .eq()
        .iter()
        .filter(|(e, _)| !is_zero_vec(e))
        .map(|(e, _)| primitive(e))
        .collect();
    Ok(cone_from_generators(omega.dim(), &rays, &lineality))
}

/// Extremality of the pair: `0 not in int(O1 - O2)`.
pub fn is_extremal_system(o1: &HPolyhedron, o2: &HPolyhedron) -> Result<bool> {
    if o1.is_empty() || o2.is_empty() {
        return Err(Error::EmptyInput("extremality requires nonempty sets"));
    }
    Ok(!o1.minkowski_diff(o2)?.origin_in_interior())
}

/// Separates an extremal pair whose difference has nonempty interior.
///
/// The separator is chosen among the canonical rows of the difference
/// polyhedron supporting it at the origin, lexicographically least for
/// determinism. The translation is `-separator / k` with `k` the smallest
/// positive integer passing the LP disjointness re-check (`k = 1` always
/// does for polyhedra; the verification still runs).
pub fn separate(o1: &HPolyhedron, o2: &HPolyhedron) -> Result<ExtremalWitness> {
    if o1.is_empty() || o2.is_empty() {
        return Err(Error::EmptyInput("separation requires nonempty sets"));
    }
    let diff = o1.minkowski_diff(o2)?;
    if diff.origin_in_interior() {
        return Err(Error::NotExtremal);
    }
    if !diff.is_solid()? {
        return Err(Error::NotSolid);
    }
    // Candidate separators x* with sigma_{O1-O2}(x*) <= 0: equality rows in
    // either orientation, or inequality rows with a nonpositive bound. The
    // canonical difference supports the origin on at least one such row.
    let canon = diff.canonicalize();
    let mut candidates: Vec<Vector> = Vec::new();
    for (a, b) in canon.ineq() {
        if !b.is_positive() && !is_zero_vec(a) {
            candidates.push(primitive(a));
        }
    }
    for (e, c) in canon.eq() {
        if c.is_zero() && !is_zero_vec(e) {
            candidates.push(primitive(e));
            candidates.push(primitive(&vec_neg(e)));
        }
    }
    candidates.sort_by(|a, b| lex_cmp(a, b));
    let separator = candidates
        .into_iter()
        .next()
        .ok_or(Error::Internal("extremal difference must support the origin"))?;

    let sup_value = match support(o1, &separator)?.value {
        ExtReal::Finite(v) => v,
        _ => return Err(Error::Internal("separator unbounded on the first set")),
    };
    let inf_value = match support(o2, &vec_neg(&separator))?.value {
        ExtReal::Finite(v) => -v,
        _ => return Err(Error::Internal("separator unbounded on the second set")),
    };
    if sup_value > inf_value {
        return Err(Error::Internal("separation inequality failed"));
    }

    // Translation a = -separator/k verified by LP disjointness.
    let mut k = Q::one();
    loop {
        let translation = vec_scale(&(-Q::one() / k.clone()), &separator);
        let moved = o1.translate(&translation);
        if moved.intersect(o2)?.is_empty() {
            return Ok(ExtremalWitness {
                translation,
                separator,
                sup_value,
                inf_value,
            });
        }
        k = k + Q::one();
        if k > Q::from_int(16) {
            return Err(Error::Internal("no verified translation found"));
        }
    }
}

/// `0 in int(o1 - o2)` without constructing the difference polyhedron:
/// by convexity the origin is interior iff every signed corner direction
/// `c` of the unit box admits `r > 0` with `r c in o1 - o2`, one small LP
/// per corner over `(r, u, v)`.
pub fn difference_origin_interior(o1: &HPolyhedron, o2: &HPolyhedron) -> Result<bool> {
    let n = o1.dim();
    if o2.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: o2.dim(),
        });
    }
    for mask in 0u32..(1 << n) {
        let corner: Vector = (0..n)
            .map(|i| {
                if mask & (1 << i) != 0 {
                    Q::one()
                } else {
                    -Q::one()
                }
            })
            .collect();
        // Variables (r, u, v): u in o1, v in o2, u - v = r * corner.
        let mut sys = HPolyhedron::universe(1 + 2 * n);
        for (a, b) in o1.ineq() {
            let mut row = zero_vec(1 + 2 * n);
            row[1..n + 1].clone_from_slice(a);
            sys.push_ineq(row, b.clone());
        }
        for (e, c) in o1.eq() {
            let mut row = zero_vec(1 + 2 * n);
            row[1..n + 1].clone_from_slice(e);
            sys.push_eq(row, c.clone());
        }
        for (a, b) in o2.ineq() {
            let mut row = zero_vec(1 + 2 * n);
            row[n + 1..].clone_from_slice(a);
            sys.push_ineq(row, b.clone());
        }
        for (e, c) in o2.eq() {
            let mut row = zero_vec(1 + 2 * n);
            row[n + 1..].clone_from_slice(e);
            sys.push_eq(row, c.clone());
        }
        for i in 0..n {
            let mut row = zero_vec(1 + 2 * n);
            row[0] = -&corner[i];
            row[1 + i] = Q::one();
            row[1 + n + i] = -Q::one();
            sys.push_eq(row, Q::zero());
        }
        let mut r_dir = zero_vec(1 + 2 * n);
        r_dir[0] = Q::one();
        sys.push_ineq(vec_neg(&r_dir), Q::zero());
        let positive = match solve_lp(&r_dir, Sense::Max, &sys)? {
            LpOutcome::Optimal { value, .. } => value.is_positive(),
            LpOutcome::Unbounded { .. } => true,
            LpOutcome::Infeasible { .. } => false,
        };
        if !positive {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the closed conic hull of `o1 - o2` is a linear subspace,
/// decided on generators: the hull is generated by pairwise vertex
/// differences and the recession directions, and a generated cone is a
/// subspace iff the negated sum of its generators lies back inside it
/// (then each generator is individually reversible). One standard-form
/// feasibility LP.
pub fn difference_hull_is_subspace(o1: &HPolyhedron, o2: &HPolyhedron) -> Result<bool> {
    let g1 = o1.h_to_v()?;
    let g2 = o2.h_to_v()?;
    let mut gens: Vec<Vector> = Vec::new();
    for u in &g1.vertices {
        for v in &g2.vertices {
            let d = crate::linalg::vec_sub(u, v);
            if !is_zero_vec(&d) {
                gens.push(primitive(&d));
            }
        }
    }
    gens.extend(g1.rays.iter().map(|r| primitive(r)));
    gens.extend(g2.rays.iter().map(|r| primitive(&vec_neg(r))));
    gens.sort_by(|a, b| lex_cmp(a, b));
    gens.dedup();
    let mut lineality: Vec<Vector> = g1.lineality.clone();
    lineality.extend(g2.lineality.iter().cloned());
    if gens.is_empty() {
        return Ok(true);
    }
    let mut neg_sum = zero_vec(o1.dim());
    for g in &gens {
        neg_sum = crate::linalg::vec_sub(&neg_sum, g);
    }
    crate::lp::nonneg_solution_exists(&gens, &lineality, &neg_sum)
}

/// Evaluates the qualification conditions for a pair of sets. With a
/// reference point the difference-interiority condition is localized:
/// the second set is replaced by its intersection with the closed unit
/// sup-norm box around the point, which is bounded by construction.
pub fn check_qualification(
    o1: &HPolyhedron,
    o2: &HPolyhedron,
    xbar: Option<&[Q]>,
) -> Result<QCReport> {
    if o1.dim() != o2.dim() {
        return Err(Error::DimensionMismatch {
            expected: o1.dim(),
            got: o2.dim(),
        });
    }
    let (difference_interiority, bounded_set) = match xbar {
        Some(point) => {
            if point.len() != o1.dim() {
                return Err(Error::DimensionMismatch {
                    expected: o1.dim(),
                    got: point.len(),
                });
            }
            let ball = HPolyhedron::hypercube(o1.dim(), Q::one()).translate(point);
            let localized = o2.intersect(&ball)?;
            (difference_origin_interior(o1, &localized)?, true)
        }
        None => (difference_origin_interior(o1, o2)?, o2.is_bounded()?),
    };
    let interiority_2_meets_1 = o2.interior_point_meeting(o1)?.is_some();
    let interiority_1_meets_2 = o1.interior_point_meeting(o2)?.is_some();
    let attouch_brezis = difference_hull_is_subspace(o1, o2)?;
    Ok(QCReport::from_flags(
        difference_interiority,
        bounded_set,
        interiority_1_meets_2,
        interiority_2_meets_1,
        attouch_brezis,
    ))
}

/// Support-intersection rule output: the support of the intersection and,
/// when finite, a decomposition `xstar = part1 + part2` whose component
/// supports add up to the value exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportIntersection {
    pub value: ExtReal,
    pub split: Option<(Vector, Vector)>,
}

/// `sigma_{O1 ∩ O2}(xstar)` with the attaining decomposition read off the
/// dual multipliers of the stacked constraint system: rows of `o1` fund
/// `part1`, rows of `o2` fund `part2`.
pub fn support_intersection(
    o1: &HPolyhedron,
    o2: &HPolyhedron,
    xstar: &[Q],
) -> Result<SupportIntersection> {
    let stacked = o1.intersect(o2)?;
    if xstar.len() != stacked.dim() {
        return Err(Error::DimensionMismatch {
            expected: stacked.dim(),
            got: xstar.len(),
        });
    }
    match solve_lp(xstar, Sense::Max, &stacked)? {
        LpOutcome::Optimal { value, duals, .. } => {
            // Stacking order: o1.ineq, o2.ineq, then o1.eq, o2.eq.
            let n = stacked.dim();
            let mut part1 = zero_vec(n);
            let mut part2 = zero_vec(n);
            let n1 = o1.ineq().len();
            for (i, l) in duals.ineq.iter().enumerate() {
                if l.is_zero() {
                    continue;
                }
                let (row, _) = &stacked.ineq()[i];
                let target = if i < n1 { &mut part1 } else { &mut part2 };
                *target = vec_add(target, &vec_scale(l, row));
            }
            let e1 = o1.eq().len();
            for (k, m) in duals.eq.iter().enumerate() {
                if m.is_zero() {
                    continue;
                }
                let (row, _) = &stacked.eq()[k];
                let target = if k < e1 { &mut part1 } else { &mut part2 };
                *target = vec_add(target, &vec_scale(m, row));
            }
            if vec_add(&part1, &part2) != xstar.to_vec() {
                return Err(Error::Internal("dual split does not reassemble the probe"));
            }
            // Attainment re-check: the component supports must add up.
            let s1 = support(o1, &part1)?.value;
            let s2 = support(o2, &part2)?.value;
            match (s1, s2) {
                (ExtReal::Finite(v1), ExtReal::Finite(v2)) => {
                    if &v1 + &v2 != value {
                        return Err(Error::Internal("support split does not attain"));
                    }
                }
                _ => return Err(Error::Internal("support split must be finite")),
            }
            Ok(SupportIntersection {
                value: ExtReal::Finite(value),
                split: Some((part1, part2)),
            })
        }
        LpOutcome::Unbounded { .. } => Ok(SupportIntersection {
            value: ExtReal::PlusInfinity,
            split: None,
        }),
        LpOutcome::Infeasible { .. } => Err(Error::EmptyIntersection),
    }
}

/// Both sides of the conjugate-of-support-convolution identity: the
/// conjugate of `sigma_1 ⊕ sigma_2` evaluated from a generator description
/// of the convolution, and the indicator of the intersection.
pub fn support_conv_conjugate_check(
    o1: &HPolyhedron,
    o2: &HPolyhedron,
    x: &[Q],
) -> Result<(ExtReal, ExtReal)> {
    let inter = o1.intersect(o2)?;
    if inter.is_empty() {
        return Err(Error::EmptyIntersection);
    }
    if x.len() != inter.dim() {
        return Err(Error::DimensionMismatch {
            expected: inter.dim(),
            got: x.len(),
        });
    }
    let sigma1 = crate::pl::PLFunction::indicator(o1)?.conjugate()?;
    let sigma2 = crate::pl::PLFunction::indicator(o2)?.conjugate()?;
    let conv = crate::pl::inf_convolution(&sigma1, &sigma2)?;
    let lhs = crate::oracles::conjugate_oracle(&conv, x)?;
    let rhs = if inter.contains(x)? {
        ExtReal::Finite(Q::zero())
    } else {
        ExtReal::PlusInfinity
    };
    Ok((lhs, rhs))
}

/// Both sides of the normal-cone intersection rule, compared exactly.
#[derive(Clone, Debug)]
pub struct NormalIntersection {
    pub lhs: PolyhedralCone,
    pub rhs: PolyhedralCone,
    pub equal: bool,
    pub qc: QCReport,
}

pub fn normal_intersection_rule(
    o1: &HPolyhedron,
    o2: &HPolyhedron,
    xbar: &[Q],
) -> Result<NormalIntersection> {
    let inter = o1.intersect(o2)?;
    if !inter.contains(xbar)? {
        return Err(Error::NotInSet);
    }
    let lhs = normal_cone(&inter, xbar)?;
    let n1 = normal_cone(o1, xbar)?;
    let n2 = normal_cone(o2, xbar)?;
    let sum = n1.as_poly().minkowski_sum(n2.as_poly())?;
    let rhs = PolyhedralCone::new(sum)?;
    let equal = lhs.as_poly().set_equal(rhs.as_poly())?;
    let qc = check_qualification(o1, o2, Some(xbar))?;
    Ok(NormalIntersection { lhs, rhs, equal, qc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec_sub;

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
    fn support_of_box() {
        let sv = support(&unit_box(2), &qv(&[3, 4])).unwrap();
        assert_eq!(sv.value, ExtReal::Finite(Q::from_int(7)));
        assert_eq!(sv.witness, SupportWitness::Maximizer(qv(&[1, 1])));
    }

    #[test]
    fn support_of_halfline_is_unbounded() {
        let p = HPolyhedron::new(1, vec![(qv(&[-1]), Q::zero())], vec![]).unwrap();
        let sv = support(&p, &qv(&[1])).unwrap();
        assert_eq!(sv.value, ExtReal::PlusInfinity);
        match sv.witness {
            SupportWitness::UnboundedRay(r) => assert!(dot(&r, &qv(&[1])).is_positive()),
            other => panic!("expected ray, got {other:?}"),
        }
    }

    #[test]
    fn support_of_simplex_picks_best_vertex() {
        // Standard simplex in dimension 3.
        let mut p = HPolyhedron::new(3, vec![], vec![(qv(&[1, 1, 1]), Q::one())]).unwrap();
        for i in 0..3 {
            let mut row = qv(&[0, 0, 0]);
            row[i] = -Q::one();
            p.push_ineq(row, Q::zero());
        }
        let sv = support(&p, &qv(&[5, 1, 2])).unwrap();
        assert_eq!(sv.value, ExtReal::Finite(Q::from_int(5)));
        assert_eq!(sv.witness, SupportWitness::Maximizer(qv(&[1, 0, 0])));
    }

    #[test]
    fn support_of_empty_set() {
        let sv = support(&HPolyhedron::empty(2), &qv(&[1, 0])).unwrap();
        assert_eq!(sv.value, ExtReal::MinusInfinity);
        assert_eq!(sv.witness, SupportWitness::EmptySet);
    }

    #[test]
    fn normal_cone_cases() {
        let b = unit_box(2);
        // Interior point: {0}.
        let n = normal_cone(&b, &qv(&[0, 0])).unwrap();
        assert!(n
            .as_poly()
            .set_equal(PolyhedralCone::origin(2).as_poly())
            .unwrap());
        // Corner (1,1): the nonnegative quadrant.
        let n = normal_cone(&b, &qv(&[1, 1])).unwrap();
        assert!(n.contains(&qv(&[2, 3])).unwrap());
        assert!(!n.contains(&qv(&[-1, 0])).unwrap());
        // Outside point errors.
        assert_eq!(normal_cone(&b, &qv(&[2, 2])), Err(Error::NotInSet));
    }

    #[test]
    fn normal_cone_generators_support_characterization() {
        // x* in N(xbar; O) iff sigma_O(x*) = <x*, xbar>.
        let b = unit_box(2);
        let xbar = qv(&[1, 0]);
        let n = normal_cone(&b, &xbar).unwrap();
        let gens = n.as_poly().h_to_v().unwrap();
        for r in gens.rays.iter().chain(gens.vertices.iter()) {
            if is_zero_vec(r) {
                continue;
            }
            let sv = support(&b, r).unwrap();
            assert_eq!(sv.value, ExtReal::Finite(dot(r, &xbar)));
        }
    }

    #[test]
    fn extremality_of_touching_intervals() {
        let a = HPolyhedron::interval(-Q::one(), Q::zero());
        let b = HPolyhedron::interval(Q::zero(), Q::one());
        assert!(is_extremal_system(&a, &b).unwrap());
        let c = HPolyhedron::interval(-Q::one(), Q::one());
        let d = HPolyhedron::interval(Q::zero(), Q::from_int(2));
        assert!(!is_extremal_system(&c, &d).unwrap());
        let e = HPolyhedron::interval(Q::zero(), Q::one());
        let f = HPolyhedron::interval(Q::from_int(3), Q::from_int(4));
        assert!(is_extremal_system(&e, &f).unwrap());
    }

    #[test]
    fn separation_of_touching_boxes() {
        let o1 = HPolyhedron::box_bounds(&qv(&[-1, -1]), &qv(&[0, 1])).unwrap();
        let o2 = HPolyhedron::box_bounds(&qv(&[0, -1]), &qv(&[1, 1])).unwrap();
        let w = separate(&o1, &o2).unwrap();
        assert_eq!(w.separator, qv(&[1, 0]));
        assert_eq!(w.sup_value, Q::zero());
        assert_eq!(w.inf_value, Q::zero());
        assert_eq!(w.translation, vec![-Q::one(), Q::zero()]);
        let moved = o1.translate(&w.translation);
        assert!(moved.intersect(&o2).unwrap().is_empty());
    }

    #[test]
    fn separation_of_disjoint_sets() {
        let o1 = HPolyhedron::singleton(&qv(&[0]));
        let o2 = HPolyhedron::interval(Q::one(), Q::from_int(2));
        let w = separate(&o1, &o2).unwrap();
        assert_eq!(w.sup_value, Q::zero());
        assert_eq!(w.inf_value, Q::one());
        assert!(w.sup_value <= w.inf_value);
    }

    #[test]
    fn separation_rejects_overlapping_interiors() {
        let c = HPolyhedron::interval(-Q::one(), Q::one());
        let d = HPolyhedron::interval(Q::zero(), Q::from_int(2));
        assert_eq!(separate(&c, &d), Err(Error::NotExtremal));
    }

    #[test]
    fn extremality_implies_no_interior_meeting() {
        let a = HPolyhedron::interval(-Q::one(), Q::zero());
        let b = HPolyhedron::interval(Q::zero(), Q::one());
        assert!(is_extremal_system(&a, &b).unwrap());
        assert!(a.interior_point_meeting(&b).unwrap().is_none());
        assert!(b.interior_point_meeting(&a).unwrap().is_none());
    }

    #[test]
    fn qualification_flags_overlapping_boxes() {
        let o1 = unit_box(2);
        let o2 = HPolyhedron::box_bounds(&qv(&[0, 0]), &qv(&[2, 2])).unwrap();
        let qc = check_qualification(&o1, &o2, None).unwrap();
        assert!(qc.difference_interiority);
        assert!(qc.bounded_set);
        assert!(qc.interiority_1_meets_2);
        assert!(qc.interiority_2_meets_1);
        assert!(qc.attouch_brezis);
        assert!(qc.any_holds);
    }

    #[test]
    fn qualification_flags_touching_intervals() {
        let o1 = HPolyhedron::interval(-Q::one(), Q::zero());
        let o2 = HPolyhedron::interval(Q::zero(), Q::one());
        let qc = check_qualification(&o1, &o2, None).unwrap();
        assert!(!qc.difference_interiority);
        assert!(!qc.attouch_brezis); // cone of [-2,0] is a half-line
        assert!(!qc.interiority_1_meets_2);
        assert!(!qc.interiority_2_meets_1);
    }

    #[test]
    fn qualification_flags_origin_pair() {
        let zero = HPolyhedron::singleton(&qv(&[0]));
        let qc = check_qualification(&zero, &zero, None).unwrap();
        assert!(qc.attouch_brezis); // {0} is a subspace
        assert!(!qc.difference_interiority);
    }

    #[test]
    fn support_intersection_of_boxes() {
        let o1 = unit_box(2);
        let o2 = HPolyhedron::box_bounds(&qv(&[0, 0]), &qv(&[2, 2])).unwrap();
        let out = support_intersection(&o1, &o2, &qv(&[-1, -1])).unwrap();
        assert_eq!(out.value, ExtReal::Finite(Q::zero()));
        let (p1, p2) = out.split.unwrap();
        // Only the second box's rows are active at the maximizer (0,0).
        assert_eq!(p1, qv(&[0, 0]));
        assert_eq!(p2, qv(&[-1, -1]));
    }

    #[test]
    fn support_intersection_identity_case() {
        let o = unit_box(2);
        let out = support_intersection(&o, &o, &qv(&[1, 2])).unwrap();
        assert_eq!(out.value, ExtReal::Finite(Q::from_int(3)));
        let (p1, p2) = out.split.unwrap();
        let s1 = support(&o, &p1).unwrap().value;
        let s2 = support(&o, &p2).unwrap().value;
        assert_eq!(s1.try_add(&s2).unwrap(), ExtReal::Finite(Q::from_int(3)));
    }

    #[test]
    fn support_intersection_of_halfplanes() {
        let lower = HPolyhedron::new(2, vec![(qv(&[0, 1]), Q::zero())], vec![]).unwrap();
        let left = HPolyhedron::new(2, vec![(qv(&[1, 0]), Q::zero())], vec![]).unwrap();
        let out = support_intersection(&lower, &left, &qv(&[1, 1])).unwrap();
        assert_eq!(out.value, ExtReal::Finite(Q::zero()));
        let (p1, p2) = out.split.unwrap();
        assert_eq!(p1, qv(&[0, 1]));
        assert_eq!(p2, qv(&[1, 0]));
    }

    #[test]
    fn support_intersection_unbounded_probe() {
        let lower = HPolyhedron::new(2, vec![(qv(&[0, 1]), Q::zero())], vec![]).unwrap();
        let out = support_intersection(&lower, &lower, &qv(&[1, 0])).unwrap();
        assert_eq!(out.value, ExtReal::PlusInfinity);
        assert!(out.split.is_none());
    }

    #[test]
    fn support_intersection_empty_errors() {
        let a = HPolyhedron::interval(Q::zero(), Q::one());
        let b = HPolyhedron::interval(Q::from_int(3), Q::from_int(4));
        assert_eq!(
            support_intersection(&a, &b, &qv(&[1])),
            Err(Error::EmptyIntersection)
        );
    }

    #[test]
    fn support_intersection_one_sided_bound() {
        // For any decomposition, sigma_{O1∩O2}(x*) <= sigma1(x1*) + sigma2(x2*).
        let o1 = unit_box(2);
        let o2 = HPolyhedron::box_bounds(&qv(&[0, -1]), &qv(&[3, 3])).unwrap();
        let xstar = qv(&[2, -1]);
        let value = match support_intersection(&o1, &o2, &xstar).unwrap().value {
            ExtReal::Finite(v) => v,
            _ => panic!("finite expected"),
        };
        for split1 in [qv(&[2, 0]), qv(&[0, -1]), qv(&[1, 1])] {
            let split2 = vec_sub(&xstar, &split1);
            let s1 = support(&o1, &split1).unwrap().value;
            let s2 = support(&o2, &split2).unwrap().value;
            let bound = s1.try_add(&s2).unwrap();
            assert!(ExtReal::Finite(value.clone()) <= bound);
        }
    }

    #[test]
    fn normal_intersection_halfplanes() {
        let lower = HPolyhedron::new(2, vec![(qv(&[0, 1]), Q::zero())], vec![]).unwrap();
        let left = HPolyhedron::new(2, vec![(qv(&[1, 0]), Q::zero())], vec![]).unwrap();
        let out = normal_intersection_rule(&lower, &left, &qv(&[0, 0])).unwrap();
        assert!(out.equal);
        assert!(out.lhs.contains(&qv(&[1, 1])).unwrap());
        assert!(!out.lhs.contains(&qv(&[-1, 0])).unwrap());
    }

    #[test]
    fn normal_intersection_interior_point() {
        let o1 = unit_box(2);
        let o2 = HPolyhedron::hypercube(2, Q::from_int(2));
        let out = normal_intersection_rule(&o1, &o2, &qv(&[0, 0])).unwrap();
        assert!(out.equal);
        assert!(out
            .lhs
            .as_poly()
            .set_equal(PolyhedralCone::origin(2).as_poly())
            .unwrap());
    }

    #[test]
    fn normal_intersection_touching_boxes() {
        let o1 = HPolyhedron::box_bounds(&qv(&[0, 0]), &qv(&[1, 1])).unwrap();
        let o2 = HPolyhedron::box_bounds(&qv(&[1, 0]), &qv(&[2, 1])).unwrap();
        let out = normal_intersection_rule(&o1, &o2, &qv(&[1, 0])).unwrap();
        assert!(out.equal);
        // Both sides equal cone{(1,0),(-1,0),(0,-1)}.
        assert!(out.lhs.contains(&qv(&[5, 0])).unwrap());
        assert!(out.lhs.contains(&qv(&[-5, 0])).unwrap());
        assert!(out.lhs.contains(&qv(&[0, -2])).unwrap());
        assert!(!out.lhs.contains(&qv(&[0, 1])).unwrap());
    }

    #[test]
    fn separation_always_yields_extremality() {
        // Part (iii): a verified translation witness certifies extremality.
        let o1 = HPolyhedron::interval(-Q::from_int(2), Q::zero());
        let o2 = HPolyhedron::interval(Q::zero(), q(1, 2));
        let w = separate(&o1, &o2).unwrap();
        let moved = o1.translate(&w.translation);
        assert!(moved.intersect(&o2).unwrap().is_empty());
        assert!(is_extremal_system(&o1, &o2).unwrap());
    }
}
