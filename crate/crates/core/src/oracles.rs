//! Independent brute-force verification paths.
//!
//! The main computation path works on H-representations through the
//! simplex; everything here recomputes the same quantities from generator
//! (V-form) descriptions by direct enumeration, sharing no solver code
//! with the main path. Support and conjugate values are maxima over
//! enumerated vertices with recession-ray side conditions; subgradient
//! membership is the definitional inequality checked on every generator;
//! the decomposition sampler spot-checks union readings with a
//! counter-based deterministic generator so parallel evaluation stays
//! order-independent.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, vec_add, vec_scale, zero_vec, Vector};
use crate::multimaps::RulePreimage;
use crate::num::{ExtReal, Q};
use crate::pl::PLFunction;
use crate::polyhedra::{cone_generators, Generators, HPolyhedron};

/// Tally of oracle comparisons; a passing run has no mismatches.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub input: String,
    pub main_value: String,
    pub oracle_value: String,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn merge(&mut self, other: OracleReport) {
        self.checked += other.checked;
        self.mismatches.extend(other.mismatches);
    }

    pub fn record(&mut self, ok: bool, input: impl Into<String>, main: impl ToString, oracle: impl ToString) {
        self.checked += 1;
        if !ok {
            self.mismatches.push(Mismatch {
                input: input.into(),
                main_value: main.to_string(),
                oracle_value: oracle.to_string(),
            });
        }
    }
}

/// Generator form computed without any feasibility LP: the homogenization
/// is handed straight to the double-description kernel, and emptiness is
/// read off the absence of vertices. Returns `None` for the empty set.
pub fn generators_by_enumeration(p: &HPolyhedron) -> Option<Generators> {
    let d = p.dim() + 1;
    let mut ineq_normals: Vec<Vector> = Vec::with_capacity(p.ineq().len() + 1);
    for (a, b) in p.ineq() {
        let mut row = a.clone();
        row.push(-b);
        ineq_normals.push(row);
    }
    let mut t_row = zero_vec(d);
    t_row[p.dim()] = -Q::one();
    ineq_normals.push(t_row);
    let eq_normals: Vec<Vector> = p
        .eq()
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
        let t = &r[p.dim()];
        if t.is_positive() {
            let inv = t.recip();
            vertices.push(r[..p.dim()].iter().map(|x| x * &inv).collect::<Vector>());
        } else {
            rec_rays.push(r[..p.dim()].to_vec());
        }
    }
    if vertices.is_empty() {
        return None;
    }
    let lin: Vec<Vector> = lineality.iter().map(|l| l[..p.dim()].to_vec()).collect();
    Some(Generators {
        dim: p.dim(),
        vertices,
        rays: rec_rays,
        lineality: lin,
    })
}

/// `sup over omega of <xstar, .>` by generator enumeration: the maximum
/// over vertices, `+inf` when a ray or lineality direction pairs
/// positively, `-inf` on the empty set.
pub fn support_oracle(omega: &HPolyhedron, xstar: &[Q]) -> Result<ExtReal> {
    if xstar.len() != omega.dim() {
        return Err(Error::DimensionMismatch {
            expected: omega.dim(),
            got: xstar.len(),
        });
    }
    let Some(gens) = generators_by_enumeration(omega) else {
        return Ok(ExtReal::MinusInfinity);
    };
    Ok(support_from_generators(&gens, xstar))
}

/// Support evaluation over an already-computed generator form; callers
/// probing the same set repeatedly enumerate once and reuse this.
pub fn support_from_generators(gens: &Generators, xstar: &[Q]) -> ExtReal {
    for r in &gens.rays {
        if dot(r, xstar).is_positive() {
            return ExtReal::PlusInfinity;
        }
    }
    for l in &gens.lineality {
        if !dot(l, xstar).is_zero() {
            return ExtReal::PlusInfinity;
        }
    }
    let best = gens
        .vertices
        .iter()
        .map(|v| dot(v, xstar))
        .max()
        .expect("nonempty vertex list");
    ExtReal::Finite(best)
}

/// Conjugate value from the epigraph generators: the maximum of
/// `<x*, v> - t` over vertices `(v, t)`, `+inf` as soon as a recession
/// direction `(r, s)` of the epigraph has `<x*, r> - s > 0`.
pub fn conjugate_oracle(f: &PLFunction, xstar: &[Q]) -> Result<ExtReal> {
    if xstar.len() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: xstar.len(),
        });
    }
    let mut probe = xstar.to_vec();
    probe.push(-Q::one());
    support_oracle(f.epigraph(), &probe)
}

/// Function value by pure row arithmetic (no LP, no enumeration): the
/// domain rows are the height-free rows, and on the domain the value is
/// the largest lower bound the height rows impose.
pub fn evaluate_oracle(f: &PLFunction, x: &[Q]) -> Result<ExtReal> {
    if x.len() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: x.len(),
        });
    }
    let n = f.dim();
    let mut best: Option<Q> = None;
    for (a, b) in f.epigraph().ineq() {
        let pairing = dot(&a[..n], x);
        if a[n].is_zero() {
            if pairing > *b {
                return Ok(ExtReal::PlusInfinity);
            }
        } else {
            // a_t < 0 for epigraph rows: t >= (pairing - b) / (-a_t).
            let bound = &(&pairing - b) / &(-&a[n]);
            best = Some(match best {
                Some(cur) => cur.max(bound),
                None => bound,
            });
        }
    }
    for (e, c) in f.epigraph().eq() {
        if dot(&e[..n], x) != *c {
            return Ok(ExtReal::PlusInfinity);
        }
    }
    Ok(match best {
        Some(v) => ExtReal::Finite(v),
        None => ExtReal::PlusInfinity,
    })
}

/// Definitional subgradient test by generator enumeration: the affine
/// minorant `f(xbar) + <x*, . - xbar>` must clear every vertex of the
/// epigraph, every recession ray (slope condition), and every lineality
/// direction (tight slope).
pub fn subgradient_oracle(f: &PLFunction, xbar: &[Q], xstar: &[Q]) -> Result<bool> {
    if xstar.len() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: xstar.len(),
        });
    }
    let fx = match evaluate_oracle(f, xbar)? {
        ExtReal::Finite(v) => v,
        _ => return Err(Error::NotInDomain),
    };
    let gens = generators_by_enumeration(f.epigraph())
        .ok_or(Error::Internal("proper function with empty epigraph"))?;
    Ok(subgradient_from_generators(&gens, &fx, xbar, xstar))
}

/// The subgradient test against an already-enumerated epigraph; `fx` is
/// the function value at `xbar`.
pub fn subgradient_from_generators(epi_gens: &Generators, fx: &Q, xbar: &[Q], xstar: &[Q]) -> bool {
    let n = epi_gens.dim - 1;
    let base = fx - &dot(xstar, xbar);
    for v in &epi_gens.vertices {
        // t_v >= f(xbar) + <x*, v - xbar>
        if v[n] < &dot(xstar, &v[..n]) + &base {
            return false;
        }
    }
    for r in &epi_gens.rays {
        if dot(xstar, &r[..n]) > r[n] {
            return false;
        }
    }
    for l in &epi_gens.lineality {
        if dot(xstar, &l[..n]) != l[n] {
            return false;
        }
    }
    true
}

/// Deterministic counter-based pseudorandom stream: each draw depends
/// only on `(seed, counter)`, so samples can be evaluated in any order.
#[derive(Clone, Copy, Debug)]
pub struct CounterRng {
    seed: u64,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        CounterRng { seed }
    }

    pub fn value(&self, counter: u64) -> u64 {
        // splitmix64 on the keyed counter.
        let mut z = self
            .seed
            .wrapping_add(counter.wrapping_mul(0x9E3779B97F4A7C15))
            .wrapping_add(0x9E3779B97F4A7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Integer in the inclusive range `[lo, hi]`.
    pub fn int_in(&self, counter: u64, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.value(counter) % span) as i64
    }

    /// Rational weight in `[0, 1]` with denominator 16.
    pub fn weight(&self, counter: u64) -> Q {
        Q::new(self.int_in(counter, 0, 16), 16)
    }
}

/// Spot-checks a union reading: sampled points of the preimage must map
/// into the computed image, and every vertex of the image must be realized
/// by a preimage witness (extracted by a feasibility LP and re-verified by
/// substitution).
pub fn decomposition_sampler(
    rule: &RulePreimage,
    image: &HPolyhedron,
    seed: u64,
    count: usize,
) -> OracleReport {
    let mut report = OracleReport::default();
    let Some(gens) = generators_by_enumeration(&rule.preimage) else {
        report.record(
            image.is_empty(),
            "empty preimage",
            "image must be empty",
            if image.is_empty() { "empty" } else { "nonempty" },
        );
        return report;
    };
    let rng = CounterRng::new(seed);
    let width = rule.preimage.dim();
    for i in 0..count {
        let base = (i as u64) * 1024;
        // Random convex combination of vertices.
        let mut weights: Vec<Q> = (0..gens.vertices.len())
            .map(|k| Q::from_int(rng.int_in(base + k as u64, 0, 8)))
            .collect();
        if weights.iter().all(Q::is_zero) {
            let idx = (rng.value(base + 999) as usize) % weights.len();
            weights[idx] = Q::one();
        }
        let total: Q = weights.iter().sum();
        let mut point = zero_vec(width);
        for (v, w) in gens.vertices.iter().zip(&weights) {
            if !w.is_zero() {
                point = vec_add(&point, &vec_scale(&(w / &total), v));
            }
        }
        // Nonnegative ray and signed lineality contributions.
        for (k, r) in gens.rays.iter().enumerate() {
            let c = Q::from_int(rng.int_in(base + 100 + k as u64, 0, 3));
            if !c.is_zero() {
                point = vec_add(&point, &vec_scale(&c, r));
            }
        }
        for (k, l) in gens.lineality.iter().enumerate() {
            let c = Q::from_int(rng.int_in(base + 200 + k as u64, -3, 3));
            if !c.is_zero() {
                point = vec_add(&point, &vec_scale(&c, l));
            }
        }
        let mapped = rule.image_of(&point);
        let ok = image.contains_unchecked(&mapped);
        report.record(
            ok,
            format!("sample {i}"),
            "mapped sample in image",
            if ok { "inside" } else { "outside" },
        );
    }
    // Every vertex of the image is realized by a preimage witness.
    match image.h_to_v() {
        Ok(image_gens) => {
            for (k, v) in image_gens.vertices.iter().enumerate() {
                let mut fiber = rule.preimage.clone();
                for (row, (target, shift_i)) in
                    rule.map.iter().zip(v.iter().zip(&rule.shift))
                {
                    fiber.push_eq(row.clone(), target - shift_i);
                }
                let ok = match fiber.any_point() {
                    Some(w) => rule.image_of(&w) == *v,
                    None => false,
                };
                report.record(
                    ok,
                    format!("image vertex {k}"),
                    "witness exists and maps back",
                    if ok { "verified" } else { "missing" },
                );
            }
        }
        Err(_) => {
            report.record(false, "image", "nonempty image", "h_to_v failed");
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::supports::support;

    fn qv(vals: &[i64]) -> Vector {
        vals.iter().map(|&n| Q::from_int(n)).collect()
    }

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    #[test]
    fn support_oracle_agrees_with_lp_path() {
        let sets = [
            HPolyhedron::hypercube(2, Q::one()),
            HPolyhedron::new(2, vec![(qv(&[1, -1]), Q::zero())], vec![]).unwrap(),
            HPolyhedron::new(2, vec![(qv(&[1, 0]), Q::one())], vec![(qv(&[0, 1]), q(1, 2))])
                .unwrap(),
            HPolyhedron::empty(2),
        ];
        let probes = [qv(&[1, 1]), qv(&[-2, 3]), qv(&[0, 0]), qv(&[5, -1])];
        for s in &sets {
            for p in &probes {
                let lp = support(s, p).unwrap().value;
                let oracle = support_oracle(s, p).unwrap();
                assert_eq!(lp, oracle, "support mismatch on {s:?} at {p:?}");
            }
        }
    }

    #[test]
    fn conjugate_oracle_values() {
        let abs = PLFunction::abs1();
        assert_eq!(
            conjugate_oracle(&abs, &[q(1, 2)]).unwrap(),
            ExtReal::Finite(Q::zero())
        );
        assert_eq!(
            conjugate_oracle(&abs, &[q(2, 1)]).unwrap(),
            ExtReal::PlusInfinity
        );
        let kinked = PLFunction::from_max_affine(
            &[(qv(&[1]), Q::zero()), (qv(&[2]), -Q::one())],
            None,
        )
        .unwrap();
        assert_eq!(
            conjugate_oracle(&kinked, &[q(3, 2)]).unwrap(),
            ExtReal::Finite(q(1, 2))
        );
    }

    #[test]
    fn evaluate_oracle_matches_lp_evaluation() {
        let kinked = PLFunction::from_max_affine(
            &[(qv(&[1]), Q::zero()), (qv(&[2]), -Q::one())],
            None,
        )
        .unwrap();
        for x in [-2i64, 0, 1, 3] {
            let p = qv(&[x]);
            assert_eq!(
                evaluate_oracle(&kinked, &p).unwrap(),
                kinked.evaluate(&p).unwrap()
            );
        }
        let ind = PLFunction::indicator(&HPolyhedron::interval(Q::zero(), Q::one())).unwrap();
        assert_eq!(
            evaluate_oracle(&ind, &qv(&[2])).unwrap(),
            ExtReal::PlusInfinity
        );
    }

    #[test]
    fn subgradient_oracle_cases() {
        let abs = PLFunction::abs1();
        assert!(subgradient_oracle(&abs, &qv(&[0]), &qv(&[1])).unwrap());
        assert!(!subgradient_oracle(&abs, &qv(&[0]), &[q(3, 2)]).unwrap());
        let ind = PLFunction::indicator(&HPolyhedron::interval(Q::zero(), Q::one())).unwrap();
        assert!(subgradient_oracle(&ind, &qv(&[1]), &qv(&[7])).unwrap());
        assert_eq!(
            subgradient_oracle(&ind, &qv(&[2]), &qv(&[0])),
            Err(Error::NotInDomain)
        );
    }

    #[test]
    fn subgradient_oracle_matches_subdifferential() {
        let kinked = PLFunction::from_max_affine(
            &[(qv(&[1]), Q::zero()), (qv(&[2]), -Q::one())],
            None,
        )
        .unwrap();
        let xbar = qv(&[1]);
        let sub = kinked.subdifferential(&xbar).unwrap();
        for cand in [q(1, 1), q(3, 2), q(2, 1), q(1, 2), q(5, 2)] {
            let member = sub.contains(&[cand.clone()]).unwrap();
            let oracle = subgradient_oracle(&kinked, &xbar, &[cand]).unwrap();
            assert_eq!(member, oracle);
        }
    }

    #[test]
    fn counter_rng_is_deterministic_and_order_free() {
        let rng = CounterRng::new(42);
        let forward: Vec<u64> = (0..10).map(|i| rng.value(i)).collect();
        let backward: Vec<u64> = (0..10).rev().map(|i| rng.value(i)).collect();
        assert_eq!(
            forward,
            backward.into_iter().rev().collect::<Vec<_>>()
        );
        assert_ne!(forward[0], forward[1]);
    }

    #[test]
    fn sampler_on_identity_projection() {
        // Preimage = unit square, map = identity: image = the square.
        let square = HPolyhedron::hypercube(2, Q::one());
        let map: Matrix = vec![qv(&[1, 0]), qv(&[0, 1])];
        let rule = RulePreimage {
            preimage: square.clone(),
            map,
            shift: qv(&[0, 0]),
        };
        let report = decomposition_sampler(&rule, &square, 0, 25);
        assert!(report.passed(), "mismatches: {:?}", report.mismatches);
        assert!(report.checked >= 25);
    }

    #[test]
    fn sampler_on_sum_projection() {
        // Preimage {(a, b) in [0,1]^2}, map a+b: image [0, 2].
        let square = HPolyhedron::hypercube(2, Q::one());
        let rule = RulePreimage {
            preimage: square,
            map: vec![qv(&[1, 1])],
            shift: qv(&[0]),
        };
        let image = HPolyhedron::interval(-Q::from_int(2), Q::from_int(2));
        let report = decomposition_sampler(&rule, &image, 7, 40);
        assert!(report.passed(), "mismatches: {:?}", report.mismatches);
    }

    #[test]
    fn sampler_vacuous_on_empty_preimage() {
        let rule = RulePreimage {
            preimage: HPolyhedron::empty(1),
            map: vec![qv(&[1])],
            shift: qv(&[0]),
        };
        let report = decomposition_sampler(&rule, &HPolyhedron::empty(1), 0, 10);
        assert!(report.passed());
        let bad = decomposition_sampler(&rule, &HPolyhedron::interval(Q::zero(), Q::one()), 0, 10);
        assert!(!bad.passed());
    }
}
