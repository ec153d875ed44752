//! Convex-graph set-valued mappings and coderivative calculus.
//!
//! A multimap `F: Q^n ⇉ Q^m` is carried by its graph polyhedron in `n+m`
//! variables. The coderivative `D*F(xbar, ybar)(y*)` is the slice
//! `{x* : (x*, -y*) in N((xbar, ybar); gph F)}` of the graph's normal
//! cone, a polyhedron in the `x*` variables (possibly empty, which is a
//! legal value, never an error). The sum, chain, and intersection rules
//! each compare the coderivative of the composite map against a
//! polyhedral right-hand side; unions over decompositions are computed as
//! linear images of a single preimage polyhedron, which the rule output
//! carries so witnesses can be extracted and sampled.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{vec_add, zero_vec, Matrix, Vector};
use crate::num::Q;
use crate::polyhedra::HPolyhedron;
use crate::supports::{normal_cone, QCReport};

/// Set-valued mapping with convex polyhedral graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MultimapJson", into = "MultimapJson")]
pub struct Multimap {
    n: usize,
    m: usize,
    graph: HPolyhedron,
}

#[derive(Serialize, Deserialize)]
struct MultimapJson {
    n: usize,
    m: usize,
    graph: HPolyhedron,
}

impl TryFrom<MultimapJson> for Multimap {
    type Error = String;

    fn try_from(j: MultimapJson) -> std::result::Result<Self, String> {
        Multimap::new(j.n, j.m, j.graph).map_err(|e| e.to_string())
    }
}

impl From<Multimap> for MultimapJson {
    fn from(f: Multimap) -> MultimapJson {
        MultimapJson {
            n: f.n,
            m: f.m,
            graph: f.graph,
        }
    }
}

/// A union computed as the linear image of one polyhedron: the rule output
/// equals `{map . w + shift : w in preimage}`. Kept alongside the result
/// so decompositions can be re-extracted and spot-checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RulePreimage {
    pub preimage: HPolyhedron,
    pub map: Matrix,
    pub shift: Vector,
}

impl RulePreimage {
    pub fn image_of(&self, w: &[Q]) -> Vector {
        let mut y: Vector = self.map.iter().map(|row| crate::linalg::dot(row, w)).collect();
        for (yi, si) in y.iter_mut().zip(&self.shift) {
            *yi += si;
        }
        y
    }
}

impl Multimap {
    pub fn new(n: usize, m: usize, graph: HPolyhedron) -> Result<Self> {
        if graph.dim() != n + m {
            return Err(Error::DimensionMismatch {
                expected: n + m,
                got: graph.dim(),
            });
        }
        if graph.is_empty() {
            return Err(Error::EmptyInput("multimap graph must be nonempty"));
        }
        Ok(Multimap { n, m, graph })
    }

    /// The graph of `x -> {Ax + b}`.
    pub fn from_linear_map(a: &crate::pl::LinearMap) -> Result<Self> {
        let (n, m) = (a.in_dim(), a.out_dim());
        let mut graph = HPolyhedron::universe(n + m);
        for (i, row) in a.matrix.iter().enumerate() {
            let mut e: Vector = row.iter().map(|v| -v).collect();
            e.extend(zero_vec(m));
            e[n + i] = Q::one();
            let b = match &a.shift {
                Some(s) => s[i].clone(),
                None => Q::zero(),
            };
            graph.push_eq(e, b);
        }
        Multimap::new(n, m, graph)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn graph(&self) -> &HPolyhedron {
        &self.graph
    }

    pub fn domain(&self) -> Result<HPolyhedron> {
        self.graph.project(&(0..self.n).collect::<Vec<_>>())
    }

    pub fn range(&self) -> Result<HPolyhedron> {
        self.graph
            .project(&(self.n..self.n + self.m).collect::<Vec<_>>())
    }

    /// `F(x)` as a polyhedron in the output variables (substitution).
    pub fn value_at(&self, x: &[Q]) -> Result<HPolyhedron> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        // (x fixed, y free): map y -> (x, y).
        let mut map: Matrix = Vec::with_capacity(self.n + self.m);
        for _ in 0..self.n {
            map.push(zero_vec(self.m));
        }
        for j in 0..self.m {
            let mut row = zero_vec(self.m);
            row[j] = Q::one();
            map.push(row);
        }
        let mut shift = x.to_vec();
        shift.extend(zero_vec(self.m));
        self.graph.affine_preimage(&map, &shift)
    }

    pub fn graph_contains(&self, x: &[Q], y: &[Q]) -> Result<bool> {
        if x.len() != self.n || y.len() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.n + self.m,
                got: x.len() + y.len(),
            });
        }
        let mut point = x.to_vec();
        point.extend(y.iter().cloned());
        self.graph.contains(&point)
    }
}

/// `D*F(xbar, ybar)(y*)`: the slice of the graph's normal cone at height
/// `-y*`, as a polyhedron in the `x*` variables. Empty output is legal.
pub fn coderivative(f: &Multimap, xbar: &[Q], ybar: &[Q], ystar: &[Q]) -> Result<HPolyhedron> {
    if !f.graph_contains(xbar, ybar)? {
        return Err(Error::NotInGraph);
    }
    if ystar.len() != f.m {
        return Err(Error::DimensionMismatch {
            expected: f.m,
            got: ystar.len(),
        });
    }
    let mut at = xbar.to_vec();
    at.extend(ybar.iter().cloned());
    let cone = normal_cone(&f.graph, &at)?;
    // Preimage of the cone under x* -> (x*, -y*).
    let mut map: Matrix = Vec::with_capacity(f.n + f.m);
    for j in 0..f.n {
        let mut row = zero_vec(f.n);
        row[j] = Q::one();
        map.push(row);
    }
    for _ in 0..f.m {
        map.push(zero_vec(f.n));
    }
    let mut shift = zero_vec(f.n);
    shift.extend(ystar.iter().map(|v| -v));
    Ok(cone.as_poly().affine_preimage(&map, &shift)?.canonicalize())
}

/// `(F1 + F2)(x) = F1(x) + F2(x)`, graph by projection.
pub fn map_sum(f1: &Multimap, f2: &Multimap) -> Result<Multimap> {
    if f1.n != f2.n || f1.m != f2.m {
        return Err(Error::DimensionMismatch {
            expected: f1.n + f1.m,
            got: f2.n + f2.m,
        });
    }
    let (n, m) = (f1.n, f1.m);
    // Variables (x, y, y1): (x, y1) in gph F1, (x, y - y1) in gph F2.
    let mut sys = HPolyhedron::universe(n + 2 * m);
    let embed =
        |rows: &HPolyhedron, into: &mut HPolyhedron, y_to_y1: bool| {
            for (a, b) in rows.ineq() {
                into.push_ineq(sum_embed_row(a, n, m, y_to_y1), b.clone());
            }
            for (e, c) in rows.eq() {
                into.push_eq(sum_embed_row(e, n, m, y_to_y1), c.clone());
            }
        };
    embed(&f1.graph, &mut sys, true);
    embed(&f2.graph, &mut sys, false);
    let graph = sys.project(&(0..n + m).collect::<Vec<_>>())?;
    Multimap::new(n, m, graph).map_err(|e| match e {
        Error::EmptyInput(_) => Error::EmptyIntersection,
        other => other,
    })
}

// Row layout (x, y, y1): y_to_y1 embeds the row onto (x, y1); otherwise
// onto (x, y - y1).
fn sum_embed_row(row: &[Q], n: usize, m: usize, y_to_y1: bool) -> Vector {
    let mut out = row[..n].to_vec();
    if y_to_y1 {
        out.extend(zero_vec(m));
        out.extend(row[n..n + m].iter().cloned());
    } else {
        out.extend(row[n..n + m].iter().cloned());
        out.extend(row[n..n + m].iter().map(|v| -v));
    }
    out
}

/// `S(xbar, ybar)`: all splits `ybar = y1 + y2` with `yi in Fi(xbar)`,
/// as a polyhedron in the `2m` split variables.
pub fn sum_decompositions(
    f1: &Multimap,
    f2: &Multimap,
    xbar: &[Q],
    ybar: &[Q],
) -> Result<HPolyhedron> {
    if f1.n != f2.n || f1.m != f2.m {
        return Err(Error::DimensionMismatch {
            expected: f1.n + f1.m,
            got: f2.n + f2.m,
        });
    }
    let (n, m) = (f1.n, f1.m);
    if xbar.len() != n || ybar.len() != m {
        return Err(Error::DimensionMismatch {
            expected: n + m,
            got: xbar.len() + ybar.len(),
        });
    }
    let v1 = f1.value_at(xbar)?;
    let v2 = f2.value_at(xbar)?;
    let mut sys = v1.product(&v2);
    for j in 0..m {
        let mut e = zero_vec(2 * m);
        e[j] = Q::one();
        e[m + j] = Q::one();
        sys.push_eq(e, ybar[j].clone());
    }
    Ok(sys.canonicalize())
}

/// Output of a coderivative calculus rule: both sides, the exact equality
/// verdict, qualification flags, and the preimage realizing the right side
/// as a linear image.
#[derive(Clone, Debug)]
pub struct CodRule {
    pub lhs: HPolyhedron,
    pub rhs: HPolyhedron,
    pub equal: bool,
    pub qc: QCReport,
    pub preimage: RulePreimage,
}

/// `D*(F1+F2)(xbar, ybar)(y*) = D*F1(xbar, y1bar)(y*) + D*F2(xbar, y2bar)(y*)`
/// for any split `(y1bar, y2bar)` of `ybar`.
pub fn coderivative_sum_rule(
    f1: &Multimap,
    f2: &Multimap,
    xbar: &[Q],
    ybar: &[Q],
    y1bar: &[Q],
    y2bar: &[Q],
    ystar: &[Q],
) -> Result<CodRule> {
    if vec_add(&y1bar.to_vec(), &y2bar.to_vec()) != ybar.to_vec()
        || !f1.graph_contains(xbar, y1bar)?
        || !f2.graph_contains(xbar, y2bar)?
    {
        return Err(Error::NotADecomposition);
    }
    let total = map_sum(f1, f2)?;
    let lhs = coderivative(&total, xbar, ybar, ystar)?;
    let c1 = coderivative(f1, xbar, y1bar, ystar)?;
    let c2 = coderivative(f2, xbar, y2bar, ystar)?;
    let rhs = c1.minkowski_sum(&c2)?;
    let equal = lhs.set_equal(&rhs)?;

    let n = f1.n;
    // Preimage (x1*, x2*) with map x1* + x2*.
    let preimage = RulePreimage {
        preimage: c1.product(&c2),
        map: side_by_side_identity(n),
        shift: zero_vec(n),
    };

    let dom1 = f1.domain()?;
    let dom2 = f2.domain()?;
    let qc = QCReport {
        difference_interiority: crate::supports::difference_origin_interior(&dom1, &dom2)?,
        bounded_set: dom2.is_bounded()?,
        interiority_1_meets_2: f1.graph.is_solid()?
            && dom1.interior_point_meeting(&dom2)?.is_some(),
        interiority_2_meets_1: f2.graph.is_solid()?
            && dom2.interior_point_meeting(&dom1)?.is_some(),
        attouch_brezis: crate::supports::difference_hull_is_subspace(&dom1, &dom2)?,
        any_holds: false,
    };
    let qc = QCReport {
        any_holds: qc.interiority_1_meets_2 || qc.interiority_2_meets_1 || qc.attouch_brezis,
        ..qc
    };
    Ok(CodRule {
        lhs,
        rhs,
        equal,
        qc,
        preimage,
    })
}

fn side_by_side_identity(n: usize) -> Matrix {
    let mut map: Matrix = Vec::with_capacity(n);
    for j in 0..n {
        let mut row = zero_vec(2 * n);
        row[j] = Q::one();
        row[n + j] = Q::one();
        map.push(row);
    }
    map
}

/// `(G ∘ F)(x) = union of G(y) over y in F(x)`, graph by projection.
pub fn map_compose(g: &Multimap, f: &Multimap) -> Result<Multimap> {
    if f.m != g.n {
        return Err(Error::DimensionMismatch {
            expected: f.m,
            got: g.n,
        });
    }
    let (n, m, p) = (f.n, f.m, g.m);
    // Variables (x, y, z).
    let mut sys = HPolyhedron::universe(n + m + p);
    for (a, b) in f.graph.ineq() {
        let mut row = a.clone();
        row.extend(zero_vec(p));
        sys.push_ineq(row, b.clone());
    }
    for (e, c) in f.graph.eq() {
        let mut row = e.clone();
        row.extend(zero_vec(p));
        sys.push_eq(row, c.clone());
    }
    for (a, b) in g.graph.ineq() {
        let mut row = zero_vec(n);
        row.extend(a.iter().cloned());
        sys.push_ineq(row, b.clone());
    }
    for (e, c) in g.graph.eq() {
        let mut row = zero_vec(n);
        row.extend(e.iter().cloned());
        sys.push_eq(row, c.clone());
    }
    let mut keep: Vec<usize> = (0..n).collect();
    keep.extend(n + m..n + m + p);
    let graph = sys.project(&keep)?;
    Multimap::new(n, p, graph).map_err(|e| match e {
        Error::EmptyInput(_) => Error::InfeasibleComposition,
        other => other,
    })
}

/// `D*(G∘F)(xbar, zbar)(z*) = D*F(xbar, ybar) ∘ D*G(ybar, zbar) (z*)` for
/// any intermediate point `ybar in F(xbar) ∩ G^{-1}(zbar)`. The right side
/// is the `x*`-shadow of the preimage polyhedron in `(x*, y*)`.
pub fn coderivative_chain_rule(
    f: &Multimap,
    g: &Multimap,
    xbar: &[Q],
    ybar: &[Q],
    zbar: &[Q],
    zstar: &[Q],
) -> Result<CodRule> {
    if !f.graph_contains(xbar, ybar)? || !g.graph_contains(ybar, zbar)? {
        return Err(Error::BadIntermediatePoint);
    }
    if zstar.len() != g.m {
        return Err(Error::DimensionMismatch {
            expected: g.m,
            got: zstar.len(),
        });
    }
    let (n, m) = (f.n, f.m);
    let composed = map_compose(g, f)?;
    let lhs = coderivative(&composed, xbar, zbar, zstar)?;

    // Preimage in (x*, y*): (x*, -y*) in N(gph F), (y*, -z*) in N(gph G).
    let mut at_f = xbar.to_vec();
    at_f.extend(ybar.iter().cloned());
    let nf = normal_cone(&f.graph, &at_f)?;
    let mut at_g = ybar.to_vec();
    at_g.extend(zbar.iter().cloned());
    let ng = normal_cone(&g.graph, &at_g)?;

    let mut pre = HPolyhedron::universe(n + m);
    for (a, b) in nf.as_poly().ineq() {
        let mut row = a[..n].to_vec();
        row.extend(a[n..n + m].iter().map(|v| -v));
        pre.push_ineq(row, b.clone());
    }
    for (e, c) in nf.as_poly().eq() {
        let mut row = e[..n].to_vec();
        row.extend(e[n..n + m].iter().map(|v| -v));
        pre.push_eq(row, c.clone());
    }
    for (a, b) in ng.as_poly().ineq() {
        // a_y . y* + a_z . (-z*) <= b
        let mut row = zero_vec(n);
        row.extend(a[..m].iter().cloned());
        pre.push_ineq(row, b + &crate::linalg::dot(&a[m..], zstar));
    }
    for (e, c) in ng.as_poly().eq() {
        let mut row = zero_vec(n);
        row.extend(e[..m].iter().cloned());
        pre.push_eq(row, c + &crate::linalg::dot(&e[m..], zstar));
    }
    let rhs = pre.project(&(0..n).collect::<Vec<_>>())?;
    let equal = lhs.set_equal(&rhs)?;

    let mut x_shadow: Matrix = Vec::with_capacity(n);
    for j in 0..n {
        let mut row = zero_vec(n + m);
        row[j] = Q::one();
        x_shadow.push(row);
    }
    let preimage = RulePreimage {
        preimage: pre,
        map: x_shadow,
        shift: zero_vec(n),
    };

    let rge = f.range()?;
    let dom_g = g.domain()?;
    let qc = QCReport {
        difference_interiority: crate::supports::difference_origin_interior(&rge, &dom_g)?,
        bounded_set: dom_g.is_bounded()?,
        interiority_1_meets_2: f.graph.is_solid()?
            && (rge.interior_point_meeting(&dom_g)?.is_some()
                || dom_g.interior_point_meeting(&rge)?.is_some()),
        interiority_2_meets_1: g.graph.is_solid()?
            && (rge.interior_point_meeting(&dom_g)?.is_some()
                || dom_g.interior_point_meeting(&rge)?.is_some()),
        attouch_brezis: crate::supports::difference_hull_is_subspace(&rge, &dom_g)?,
        any_holds: false,
    };
    let qc = QCReport {
        any_holds: qc.interiority_1_meets_2 || qc.interiority_2_meets_1 || qc.attouch_brezis,
        ..qc
    };
    Ok(CodRule {
        lhs,
        rhs,
        equal,
        qc,
        preimage,
    })
}

/// `(F1 ∩ F2)(x) = F1(x) ∩ F2(x)`; the graph is the stacked system.
pub fn map_intersect(f1: &Multimap, f2: &Multimap) -> Result<Multimap> {
    if f1.n != f2.n || f1.m != f2.m {
        return Err(Error::DimensionMismatch {
            expected: f1.n + f1.m,
            got: f2.n + f2.m,
        });
    }
    let graph = f1.graph.intersect(&f2.graph)?;
    Multimap::new(f1.n, f1.m, graph).map_err(|e| match e {
        Error::EmptyInput(_) => Error::EmptyIntersection,
        other => other,
    })
}

/// `D*(F1∩F2)(xbar, ybar)(y*) = union over y1* + y2* = y* of
/// D*F1(y1*) + D*F2(y2*)`, the union realized as the linear image of one
/// polyhedron in `(x1*, x2*, y1*, y2*)`.
pub fn coderivative_intersection_rule(
    f1: &Multimap,
    f2: &Multimap,
    xbar: &[Q],
    ybar: &[Q],
    ystar: &[Q],
) -> Result<CodRule> {
    if !f1.graph_contains(xbar, ybar)? || !f2.graph_contains(xbar, ybar)? {
        return Err(Error::NotInBothGraphs);
    }
    if ystar.len() != f1.m {
        return Err(Error::DimensionMismatch {
            expected: f1.m,
            got: ystar.len(),
        });
    }
    let (n, m) = (f1.n, f1.m);
    let inter = map_intersect(f1, f2)?;
    let lhs = coderivative(&inter, xbar, ybar, ystar)?;

    let mut at = xbar.to_vec();
    at.extend(ybar.iter().cloned());
    let n1 = normal_cone(&f1.graph, &at)?;
    let n2 = normal_cone(&f2.graph, &at)?;

    // Preimage (x1*, x2*, y1*, y2*): (xi*, -yi*) in Ni, y1* + y2* = y*.
    let mut pre = HPolyhedron::universe(2 * n + 2 * m);
    let embed = |cone: &HPolyhedron, x_off: usize, y_off: usize, pre: &mut HPolyhedron| {
        for (a, b) in cone.ineq() {
            let mut row = zero_vec(2 * n + 2 * m);
            for (j, v) in a[..n].iter().enumerate() {
                row[x_off + j] = v.clone();
            }
            for (j, v) in a[n..n + m].iter().enumerate() {
                row[y_off + j] = -v;
            }
            pre.push_ineq(row, b.clone());
        }
        for (e, c) in cone.eq() {
            let mut row = zero_vec(2 * n + 2 * m);
            for (j, v) in e[..n].iter().enumerate() {
                row[x_off + j] = v.clone();
            }
            for (j, v) in e[n..n + m].iter().enumerate() {
                row[y_off + j] = -v;
            }
            pre.push_eq(row, c.clone());
        }
    };
    embed(n1.as_poly(), 0, 2 * n, &mut pre);
    embed(n2.as_poly(), n, 2 * n + m, &mut pre);
    for j in 0..m {
        let mut e = zero_vec(2 * n + 2 * m);
        e[2 * n + j] = Q::one();
        e[2 * n + m + j] = Q::one();
        pre.push_eq(e, ystar[j].clone());
    }
    let mut map: Matrix = Vec::with_capacity(n);
    for j in 0..n {
        let mut row = zero_vec(2 * n + 2 * m);
        row[j] = Q::one();
        row[n + j] = Q::one();
        map.push(row);
    }
    let rhs = pre.affine_image(&map, &zero_vec(n))?;
    let equal = lhs.set_equal(&rhs)?;
    let preimage = RulePreimage {
        preimage: pre,
        map,
        shift: zero_vec(n),
    };

    let qc = QCReport {
        difference_interiority: crate::supports::difference_origin_interior(
            &f1.graph, &f2.graph,
        )?,
        bounded_set: f2.graph.is_bounded()?,
        interiority_1_meets_2: f1.graph.interior_point_meeting(&f2.graph)?.is_some(),
        interiority_2_meets_1: f2.graph.interior_point_meeting(&f1.graph)?.is_some(),
        attouch_brezis: crate::supports::difference_hull_is_subspace(&f1.graph, &f2.graph)?,
        any_holds: false,
    };
    let qc = QCReport {
        any_holds: qc.interiority_1_meets_2 || qc.interiority_2_meets_1 || qc.attouch_brezis,
        ..qc
    };
    Ok(CodRule {
        lhs,
        rhs,
        equal,
        qc,
        preimage,
    })
}
