//! Seeded random instance generation with planted feasibility.
//!
//! Every instance is well posed by construction: set pairs share a planted
//! common point, polytopes are boxed so conversions stay small, marginal
//! problems get bounded constraint graphs, and probe points are planted to
//! satisfy the preconditions of their rule. Constraint normals come from
//! the small integer lattice `{-3..3}` to keep rational bit-growth bounded
//! through Fourier-Motzkin. Generation is a pure function of
//! `(kind, seed, index)`.

use serde_json::json;

use polycal::linalg::{dot, lex_cmp, Vector};
use polycal::marginals::{solution_map, MarginalProblem};
use polycal::num::Q;
use polycal::oracles::CounterRng;
use polycal::pl::{LinearMap, PLFunction};
use polycal::{HPolyhedron, Multimap};

use crate::instance::{
    CodChainProbe, CodIntersectProbe, CodSumProbe, Instance, Kind, OrderedProbe, XYProbe,
};
use crate::{HarnessError, Result};

/// Size knobs for generated instances.
#[derive(Clone, Copy, Debug)]
pub struct GenConfig {
    /// Inclusive range of ambient dimensions.
    pub dims: (usize, usize),
    /// Extra constraint rows per generated set.
    pub budget: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            dims: (1, 3),
            budget: 3,
        }
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.dims;
        if lo < 1 || hi > 6 || lo > hi {
            return Err(HarnessError::Schema(
                "dims must satisfy 1 <= lo <= hi <= 6".into(),
            ));
        }
        if self.budget < 1 || self.budget > 12 {
            return Err(HarnessError::Schema("budget must lie in 1..=12".into()));
        }
        Ok(())
    }
}

/// Sequential draw cursor over the counter-based generator.
struct Stream {
    rng: CounterRng,
    cursor: u64,
}

impl Stream {
    fn new(seed: u64, index: u64, retry: u64) -> Self {
        // Disjoint counter namespaces per (index, retry).
        Stream {
            rng: CounterRng::new(seed),
            cursor: index
                .wrapping_mul(1 << 24)
                .wrapping_add(retry.wrapping_mul(1 << 18)),
        }
    }

    fn int(&mut self, lo: i64, hi: i64) -> i64 {
        let v = self.rng.int_in(self.cursor, lo, hi);
        self.cursor += 1;
        v
    }

    fn usize_in(&mut self, lo: usize, hi: usize) -> usize {
        self.int(lo as i64, hi as i64) as usize
    }

    fn qvec(&mut self, dim: usize, lo: i64, hi: i64) -> Vector {
        (0..dim).map(|_| Q::from_int(self.int(lo, hi))).collect()
    }

    fn nonzero_qvec(&mut self, dim: usize, lo: i64, hi: i64) -> Vector {
        loop {
            let v = self.qvec(dim, lo, hi);
            if v.iter().any(|q| !q.is_zero()) {
                return v;
            }
        }
    }
}

/// Bounded polytope through `plant`: a radius-4 box plus `extra` random
/// rows offset to keep the planted point feasible; the first `tight` of
/// them pass through the point exactly.
fn polytope_through(s: &mut Stream, dim: usize, plant: &[Q], extra: usize, tight: usize) -> HPolyhedron {
    let mut p = HPolyhedron::hypercube(dim, Q::from_int(4));
    for k in 0..extra {
        let a = s.nonzero_qvec(dim, -3, 3);
        let slack = if k < tight {
            Q::zero()
        } else {
            Q::from_int(s.int(0, 2))
        };
        let b = dot(&a, plant) + slack;
        p.push_ineq(a, b);
    }
    p
}

/// Max-affine function, optionally tied so every piece is active at
/// `kink_at`, optionally restricted to the radius-4 box.
fn max_affine(
    s: &mut Stream,
    dim: usize,
    pieces: usize,
    bounded: bool,
    kink_at: Option<&[Q]>,
) -> PLFunction {
    let raw: Vec<(Vector, Q)> = (0..pieces.max(1))
        .map(|_| (s.qvec(dim, -3, 3), Q::from_int(s.int(-2, 2))))
        .collect();
    let pieces: Vec<(Vector, Q)> = match kink_at {
        Some(p) => {
            let level = dot(&raw[0].0, p) + raw[0].1.clone();
            raw.into_iter()
                .map(|(a, _)| {
                    let b = &level - &dot(&a, p);
                    (a, b)
                })
                .collect()
        }
        None => raw,
    };
    let domain = bounded.then(|| HPolyhedron::hypercube(dim, Q::from_int(4)));
    PLFunction::from_max_affine(&pieces, domain.as_ref()).expect("max-affine is proper")
}

/// Either a kinked max-affine function or the indicator of a planted
/// polytope, per the stream's coin.
fn pl_function(s: &mut Stream, dim: usize, budget: usize, plant: &[Q]) -> PLFunction {
    if s.int(0, 3) == 0 {
        let set = polytope_through(s, dim, plant, budget.min(2), 0);
        PLFunction::indicator(&set).expect("planted set is nonempty")
    } else {
        let pieces = s.usize_in(1, 3);
        let kink = s.int(0, 1) == 1;
        max_affine(s, dim, pieces, true, kink.then_some(plant))
    }
}

fn box_multimap(s: &mut Stream, n: usize, m: usize, plant: &[Q], budget: usize) -> Multimap {
    let graph = polytope_through(s, n + m, plant, budget, 1);
    Multimap::new(n, m, graph).expect("planted graph is nonempty")
}

fn linear_multimap(s: &mut Stream, n: usize, m: usize) -> (Multimap, LinearMap) {
    let rows: Vec<Vector> = (0..m).map(|_| s.qvec(n, -2, 2)).collect();
    let map = LinearMap::new(rows).expect("rectangular matrix");
    let mm = Multimap::from_linear_map(&map).expect("graph of a map is nonempty");
    (mm, map)
}

/// Lexicographically least vertex of a nonempty polyhedron.
fn lex_least_vertex(p: &HPolyhedron) -> Option<Vector> {
    let gens = p.h_to_v().ok()?;
    gens.vertices
        .into_iter()
        .min_by(|a, b| lex_cmp(a, b))
}

/// Generates the `index`-th instance of a kind. Retries with fresh
/// sub-streams when a draw is ill posed; reports a generation failure
/// after a bounded number of retries.
pub fn generate(kind: Kind, seed: u64, index: u64, cfg: &GenConfig) -> Result<Instance> {
    cfg.validate()?;
    for retry in 0..20 {
        if let Some(instance) = try_generate(kind, seed, index, retry, cfg) {
            return Ok(instance);
        }
    }
    Err(HarnessError::Schema(format!(
        "generation failed for kind {} at index {index}",
        kind.as_str()
    )))
}

fn try_generate(
    kind: Kind,
    seed: u64,
    index: u64,
    retry: u64,
    cfg: &GenConfig,
) -> Option<Instance> {
    let mut s = Stream::new(seed, index, retry);
    let (lo, hi) = cfg.dims;
    let id = format!("{}_{:04}", kind.as_str(), index);
    let make = |payload: serde_json::Value, probes: Option<serde_json::Value>| Instance {
        id: Some(id.clone()),
        kind,
        payload,
        probe_points: probes,
    };

    match kind {
        Kind::SupportIntersection => {
            let dim = s.usize_in(lo, hi);
            let plant = s.qvec(dim, -2, 2);
            let o1 = polytope_through(&mut s, dim, &plant, cfg.budget, 0);
            let o2 = polytope_through(&mut s, dim, &plant, cfg.budget, 0);
            let probes: Vec<Vector> = (0..5).map(|_| s.qvec(dim, -3, 3)).collect();
            Some(make(
                json!({"omega1": o1, "omega2": o2}),
                Some(json!(probes)),
            ))
        }
        Kind::NormalIntersection => {
            let dim = s.usize_in(lo, hi);
            let plant = s.qvec(dim, -2, 2);
            let o1 = polytope_through(&mut s, dim, &plant, cfg.budget.max(1), 1);
            let o2 = polytope_through(&mut s, dim, &plant, cfg.budget.max(1), 1);
            Some(make(
                json!({"omega1": o1, "omega2": o2}),
                Some(json!([plant])),
            ))
        }
        Kind::ConjugateSum | Kind::ConjugateMax => {
            let dim = s.usize_in(lo, hi.min(3));
            let plant = s.qvec(dim, -2, 2);
            let f = pl_function(&mut s, dim, cfg.budget, &plant);
            let g = pl_function(&mut s, dim, cfg.budget, &plant);
            let probes: Vec<Vector> = (0..5).map(|_| s.qvec(dim, -3, 3)).collect();
            Some(make(json!({"f": f, "g": g}), Some(json!(probes))))
        }
        Kind::ConjugateChain => {
            let n = s.usize_in(1, 2);
            let m = s.usize_in(1, hi.min(3));
            let rows: Vec<Vector> = (0..m).map(|_| s.qvec(n, -2, 2)).collect();
            let a = LinearMap::new(rows).expect("rectangular");
            let npieces = s.usize_in(1, 3);
            let g = max_affine(&mut s, m, npieces, true, None);
            // Probes in the adjoint range land in the finite part.
            let mut probes: Vec<Vector> = Vec::new();
            for _ in 0..3 {
                let ystar = s.qvec(m, -2, 2);
                probes.push(a.adjoint_apply(&ystar));
            }
            for _ in 0..2 {
                probes.push(s.qvec(n, -3, 3));
            }
            Some(make(json!({"g": g, "a": a}), Some(json!(probes))))
        }
        Kind::SubdiffSum => {
            let dim = s.usize_in(lo, hi.min(3));
            let xbar = s.qvec(dim, -2, 2);
            let f = pl_function(&mut s, dim, cfg.budget, &xbar);
            let g = pl_function(&mut s, dim, cfg.budget, &xbar);
            Some(make(json!({"f": f, "g": g}), Some(json!([xbar]))))
        }
        Kind::SubdiffChain => {
            let n = s.usize_in(1, 2);
            let m = s.usize_in(1, hi.min(3));
            let rows: Vec<Vector> = (0..m).map(|_| s.qvec(n, -2, 2)).collect();
            let a = LinearMap::new(rows).expect("rectangular");
            let xbar = s.qvec(n, -1, 1);
            let npieces = s.usize_in(2, 3);
            let g = max_affine(&mut s, m, npieces, true, Some(&a.apply(&xbar)));
            Some(make(json!({"g": g, "a": a}), Some(json!([xbar]))))
        }
        Kind::SubdiffMax => {
            let dim = s.usize_in(lo, hi.min(3));
            let xbar = s.qvec(dim, -2, 2);
            let fp = s.usize_in(1, 3);
            let f = max_affine(&mut s, dim, fp, true, Some(&xbar));
            let gp = s.usize_in(1, 3);
            let g = max_affine(&mut s, dim, gp, true, Some(&xbar));
            // Tie or dominate, cycled deterministically.
            let f_at = f.evaluate(&xbar).ok()?;
            let g_at = g.evaluate(&xbar).ok()?;
            let (fv, gv) = (f_at.as_finite()?, g_at.as_finite()?);
            let delta = match s.int(0, 2) {
                0 => fv - gv,                                // tie
                1 => &(fv - gv) - &Q::from_int(s.int(1, 2)), // f dominates
                _ => &(fv - gv) + &Q::from_int(s.int(1, 2)), // g dominates
            };
            let g = polycal::pl::sum(&g, &PLFunction::constant(dim, delta)).ok()?;
            Some(make(json!({"f": f, "g": g}), Some(json!([xbar]))))
        }
        Kind::MarginalConjugate | Kind::MarginalSubdiff => {
            let n = s.usize_in(1, 2);
            let m = s.usize_in(1, 2);
            let plant = s.qvec(n + m, -2, 2);
            let constraint = box_multimap(&mut s, n, m, &plant, cfg.budget);
            // Every third cost ignores the parameter (collapsed corollary).
            let phi = if s.int(0, 2) == 0 {
                let pieces: Vec<(Vector, Q)> = (0..s.usize_in(1, 2))
                    .map(|_| {
                        let mut a = polycal::linalg::zero_vec(n);
                        a.extend(s.qvec(m, -3, 3));
                        (a, Q::from_int(s.int(-2, 2)))
                    })
                    .collect();
                PLFunction::from_max_affine(&pieces, None).ok()?
            } else {
                let npieces = s.usize_in(1, 3);
                max_affine(&mut s, n + m, npieces, false, None)
            };
            let problem = MarginalProblem::new(phi.clone(), constraint.clone()).ok()?;
            let probes = match kind {
                Kind::MarginalConjugate => {
                    let ps: Vec<Vector> = (0..3).map(|_| s.qvec(n, -2, 2)).collect();
                    json!(ps)
                }
                _ => {
                    let xbar = plant[..n].to_vec();
                    let m_at = solution_map(&problem, &xbar).ok()?;
                    let ybar = lex_least_vertex(&m_at)?;
                    json!([XYProbe { xbar, ybar }])
                }
            };
            Some(make(
                json!({"phi": phi, "F": constraint}),
                Some(probes),
            ))
        }
        Kind::OrderedChain => {
            let n = s.usize_in(1, 2);
            let m = s.usize_in(1, 2);
            // Ordering cone: the nonnegative orthant.
            let mut cone = HPolyhedron::universe(m);
            for i in 0..m {
                let mut row = polycal::linalg::zero_vec(m);
                row[i] = -Q::one();
                cone.push_ineq(row, Q::zero());
            }
            // Nondecreasing cost: nonnegative piece slopes, full domain.
            let pieces: Vec<(Vector, Q)> = (0..s.usize_in(1, 3))
                .map(|_| (s.qvec(m, 0, 3), Q::from_int(s.int(-2, 2))))
                .collect();
            let phi = PLFunction::from_max_affine(&pieces, None).ok()?;
            let rows: Vec<Vector> = (0..m).map(|_| s.qvec(n, -2, 2)).collect();
            let shift = s.qvec(m, -2, 2);
            let f = LinearMap::with_shift(rows, shift).expect("shapes agree");
            let xbar = s.qvec(n, -2, 2);
            let dphi = phi.subdifferential(&f.apply(&xbar)).ok()?;
            let ystar = lex_least_vertex(&dphi)?;
            Some(make(
                json!({"Yplus": cone, "f": f, "phi": phi}),
                Some(json!([OrderedProbe {
                    xbar,
                    ystar: Some(ystar)
                }])),
            ))
        }
        Kind::CodSum => {
            let n = s.usize_in(1, 2);
            let m = s.usize_in(1, 2);
            let xbar = s.qvec(n, -2, 2);
            let linear = s.int(0, 3) == 0;
            let (f1, f2, y1bar, y2bar) = if linear {
                let (m1, a) = linear_multimap(&mut s, n, m);
                let (m2, b) = linear_multimap(&mut s, n, m);
                let y1 = a.apply(&xbar);
                let y2 = b.apply(&xbar);
                (m1, m2, y1, y2)
            } else {
                let y1 = s.qvec(m, -2, 2);
                let y2 = s.qvec(m, -2, 2);
                let mut p1 = xbar.clone();
                p1.extend(y1.iter().cloned());
                let mut p2 = xbar.clone();
                p2.extend(y2.iter().cloned());
                (
                    box_multimap(&mut s, n, m, &p1, cfg.budget),
                    box_multimap(&mut s, n, m, &p2, cfg.budget),
                    y1,
                    y2,
                )
            };
            let ybar = polycal::linalg::vec_add(&y1bar, &y2bar);
            let ystar = s.qvec(m, -2, 2);
            Some(make(
                json!({"f1": f1, "f2": f2}),
                Some(json!([CodSumProbe {
                    xbar,
                    ybar,
                    y1bar,
                    y2bar,
                    ystar
                }])),
            ))
        }
        Kind::CodChain => {
            let n = s.usize_in(1, 2);
            let m = s.usize_in(1, 2);
            let p = s.usize_in(1, 2);
            let xbar = s.qvec(n, -2, 2);
            let linear = s.int(0, 3) == 0;
            let (f, g, ybar, zbar) = if linear {
                let (mf, a) = linear_multimap(&mut s, n, m);
                let (mg, b) = linear_multimap(&mut s, m, p);
                let y = a.apply(&xbar);
                let z = b.apply(&y);
                (mf, mg, y, z)
            } else {
                let ybar = s.qvec(m, -2, 2);
                let zbar = s.qvec(p, -2, 2);
                let mut pf = xbar.clone();
                pf.extend(ybar.iter().cloned());
                let mut pg = ybar.clone();
                pg.extend(zbar.iter().cloned());
                (
                    box_multimap(&mut s, n, m, &pf, cfg.budget),
                    box_multimap(&mut s, m, p, &pg, cfg.budget),
                    ybar,
                    zbar,
                )
            };
            let zstar = s.qvec(p, -2, 2);
            Some(make(
                json!({"f": f, "g": g}),
                Some(json!([CodChainProbe {
                    xbar,
                    ybar,
                    zbar,
                    zstar
                }])),
            ))
        }
        Kind::CodIntersect => {
            let n = s.usize_in(1, 2);
            let m = s.usize_in(1, 2);
            let xbar = s.qvec(n, -2, 2);
            let ybar = s.qvec(m, -2, 2);
            let mut plant = xbar.clone();
            plant.extend(ybar.iter().cloned());
            let f1 = box_multimap(&mut s, n, m, &plant, cfg.budget);
            let f2 = box_multimap(&mut s, n, m, &plant, cfg.budget);
            let ystar = s.qvec(m, -2, 2);
            Some(make(
                json!({"f1": f1, "f2": f2}),
                Some(json!([CodIntersectProbe { xbar, ybar, ystar }])),
            ))
        }
        Kind::Extremal => {
            let dim = s.usize_in(lo, hi);
            let extremal = index % 2 == 0;
            let (o1, o2) = if extremal {
                // Separate two boxes by a hyperplane through a planted
                // point; both keep full dimension so the difference stays
                // solid.
                let p = s.qvec(dim, -2, 2);
                let a = s.nonzero_qvec(dim, -2, 2);
                let level = dot(&a, &p);
                let mut o1 = HPolyhedron::hypercube(dim, Q::from_int(4)).translate(&p);
                o1.push_ineq(a.clone(), level.clone());
                let mut o2 = HPolyhedron::hypercube(dim, Q::from_int(4)).translate(&p);
                o2.push_ineq(a.iter().map(|v| -v).collect(), -level);
                (o1, o2)
            } else {
                // Deep overlap: boxes around nearby centers.
                let p = s.qvec(dim, -1, 1);
                let shift = s.qvec(dim, -1, 1);
                let o1 = HPolyhedron::hypercube(dim, Q::from_int(3)).translate(&p);
                let o2 = HPolyhedron::hypercube(dim, Q::from_int(3))
                    .translate(&polycal::linalg::vec_add(&p, &shift));
                (o1, o2)
            };
            Some(make(
                json!({"omega1": o1, "omega2": o2, "expect_extremal": extremal}),
                None,
            ))
        }
        Kind::Biconjugate => {
            let dim = s.usize_in(lo, hi.min(3));
            let plant = s.qvec(dim, -2, 2);
            let f = pl_function(&mut s, dim, cfg.budget, &plant);
            Some(make(json!({"f": f}), None))
        }
    }
}
