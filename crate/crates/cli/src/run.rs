//! Rule execution: runs one instance, cross-checks every main-path value
//! against the enumeration oracles, and renders a report.
//!
//! Verdict policy: identity violations fail (they would be genuine
//! findings), violated probe preconditions skip with the error name, and
//! malformed input surfaces as a harness error (exit code 2 in the CLI).

use serde_json::{json, Value};

use polycal::linalg::{dot, is_zero_vec, vec_add, Vector};
use polycal::marginals::{
    epigraphical_coderivative_check, marginal_closed_form, marginal_conjugate,
    marginal_subdifferential, marginal_subdifferential_param_free, ordered_chain_rule,
    MarginalProblem, OrderedChainProblem,
};
use polycal::multimaps::{
    coderivative_chain_rule, coderivative_intersection_rule, coderivative_sum_rule,
};
use polycal::num::{ExtReal, Q};
use polycal::oracles::{
    conjugate_oracle, decomposition_sampler, generators_by_enumeration, subgradient_from_generators,
    support_from_generators, support_oracle, OracleReport,
};
use polycal::pl::{
    compose, conjugate_chain_rule, conjugate_max_rule, conjugate_sum_rule, convex_mix,
    pointwise_max, subdiff_chain_rule, subdiff_max_rule, subdiff_sum_rule, sum,
};
use polycal::supports::{
    is_extremal_system, normal_intersection_rule, separate, support, support_intersection,
};
use polycal::{Error, HPolyhedron, PLFunction, PolyhedralCone};

use crate::instance::{
    CodChainProbe, CodIntersectProbe, CodSumProbe, Instance, Kind, OrderedProbe, Payload, XYProbe,
};
use crate::report::{ProbeReport, Report, Verdict};
use crate::{HarnessError, Result};

/// Sampler defaults: fixed for reproducibility.
const SAMPLER_SEED: u64 = 0;
const SAMPLER_COUNT: usize = 100;

struct Ctx {
    probes: Vec<ProbeReport>,
    oracle: OracleReport,
}

impl Ctx {
    fn new() -> Self {
        Ctx {
            probes: Vec::new(),
            oracle: OracleReport::default(),
        }
    }

    fn skip(&mut self, probe: Value, reason: impl ToString) {
        self.probes.push(ProbeReport {
            probe,
            verdict: Verdict::Skip,
            reason: Some(reason.to_string()),
            witnesses: Value::Null,
        });
    }

    fn finish(&mut self, probe: Value, ok: bool, fail_reason: &str, witnesses: Value) {
        self.probes.push(ProbeReport {
            probe,
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            reason: (!ok).then(|| fail_reason.to_string()),
            witnesses,
        });
    }
}

/// Loads, validates, and runs a single instance file.
pub fn run_check(path: &std::path::Path) -> Result<Report> {
    let instance = Instance::load(path)?;
    run_instance(&instance)
}

/// Executes an already-parsed instance.
pub fn run_instance(instance: &Instance) -> Result<Report> {
    let payload = instance.parse_payload()?;
    match (instance.kind, payload) {
        (Kind::SupportIntersection, Payload::Sets(p)) => support_intersection_check(instance, p),
        (Kind::NormalIntersection, Payload::Sets(p)) => normal_intersection_check(instance, p),
        (Kind::Extremal, Payload::Sets(p)) => extremal_check(instance, p),
        (Kind::ConjugateSum, Payload::Functions(p)) => conjugate_sum_check(instance, p),
        (Kind::ConjugateMax, Payload::Functions(p)) => conjugate_max_check(instance, p),
        (Kind::SubdiffSum, Payload::Functions(p)) => subdiff_sum_check(instance, p),
        (Kind::SubdiffMax, Payload::Functions(p)) => subdiff_max_check(instance, p),
        (Kind::ConjugateChain, Payload::Composition(p)) => conjugate_chain_check(instance, p),
        (Kind::SubdiffChain, Payload::Composition(p)) => subdiff_chain_check(instance, p),
        (Kind::MarginalConjugate, Payload::Marginal(p)) => marginal_conjugate_check(instance, p),
        (Kind::MarginalSubdiff, Payload::Marginal(p)) => marginal_subdiff_check(instance, p),
        (Kind::OrderedChain, Payload::Ordered(p)) => ordered_chain_check(instance, p),
        (Kind::CodSum, Payload::MapPair(p)) => cod_sum_check(instance, p),
        (Kind::CodIntersect, Payload::MapPair(p)) => cod_intersect_check(instance, p),
        (Kind::CodChain, Payload::MapChain(p)) => cod_chain_check(instance, p),
        (Kind::Biconjugate, Payload::Function(p)) => biconjugate_check(instance, p),
        _ => Err(HarnessError::Schema("payload does not match kind".into())),
    }
}

fn ext_str(v: &ExtReal) -> String {
    v.to_string()
}

/// Cached enumeration of an epigraph for repeated oracle probes.
struct EpiOracle {
    gens: polycal::Generators,
}

impl EpiOracle {
    fn new(f: &PLFunction) -> Self {
        let gens = generators_by_enumeration(f.epigraph()).expect("proper epigraph is nonempty");
        EpiOracle { gens }
    }

    fn conjugate(&self, xstar: &[Q]) -> ExtReal {
        let mut probe = xstar.to_vec();
        probe.push(-Q::one());
        support_from_generators(&self.gens, &probe)
    }
}

fn support_intersection_check(
    instance: &Instance,
    p: crate::instance::SetsPayload,
) -> Result<Report> {
    let probes: Vec<Vector> = instance.parse_probes()?;
    let inter = p.omega1.intersect(&p.omega2)?;
    let inter_gens = generators_by_enumeration(&inter);
    let o1_gens = generators_by_enumeration(&p.omega1);
    let o2_gens = generators_by_enumeration(&p.omega2);
    let mut ctx = Ctx::new();
    for xstar in probes {
        let probe_json = json!(xstar);
        match support_intersection(&p.omega1, &p.omega2, &xstar) {
            Err(Error::EmptyIntersection) => ctx.skip(probe_json, "EmptyIntersection"),
            Err(e) => ctx.skip(probe_json, e),
            Ok(out) => {
                let oracle_value = match &inter_gens {
                    Some(g) => support_from_generators(g, &xstar),
                    None => ExtReal::MinusInfinity,
                };
                ctx.oracle.record(
                    oracle_value == out.value,
                    format!("support at {xstar:?}"),
                    ext_str(&out.value),
                    ext_str(&oracle_value),
                );
                let mut ok = true;
                let mut witnesses = json!({ "value": out.value });
                if let (ExtReal::Finite(v), Some((x1, x2))) = (&out.value, &out.split) {
                    let s1 = support(&p.omega1, x1)?.value;
                    let s2 = support(&p.omega2, x2)?.value;
                    ok &= s1.try_add(&s2)? == ExtReal::Finite(v.clone());
                    let o1 = match &o1_gens {
                        Some(g) => support_from_generators(g, x1),
                        None => ExtReal::MinusInfinity,
                    };
                    let o2 = match &o2_gens {
                        Some(g) => support_from_generators(g, x2),
                        None => ExtReal::MinusInfinity,
                    };
                    ctx.oracle.record(
                        o1 == s1 && o2 == s2,
                        format!("split supports at {xstar:?}"),
                        format!("{}, {}", ext_str(&s1), ext_str(&s2)),
                        format!("{}, {}", ext_str(&o1), ext_str(&o2)),
                    );
                    witnesses = json!({
                        "value": out.value,
                        "x1star": x1,
                        "x2star": x2,
                    });
                }
                ctx.finish(probe_json, ok, "decomposition does not attain", witnesses);
            }
        }
    }
    Ok(Report::conclude(instance, None, ctx.probes, ctx.oracle))
}

/// Nonzero generator directions (vertices and rays) of a cone polyhedron.
fn cone_directions(cone: &PolyhedralCone) -> Result<Vec<Vector>> {
    let gens = cone.as_poly().h_to_v()?;
    let mut dirs: Vec<Vector> = Vec::new();
    for v in gens.vertices.iter().chain(gens.rays.iter()) {
        if !is_zero_vec(v) {
            dirs.push(v.clone());
        }
    }
    for l in &gens.lineality {
        dirs.push(l.clone());
        dirs.push(l.iter().map(|x| -x).collect());
    }
    Ok(dirs)
}

fn normal_intersection_check(
    instance: &Instance,
    p: crate::instance::SetsPayload,
) -> Result<Report> {
    let probes: Vec<Vector> = instance.parse_probes()?;
    let inter = p.omega1.intersect(&p.omega2)?;
    let inter_gens = generators_by_enumeration(&inter);
    let mut ctx = Ctx::new();
    let mut qc_out = None;
    for xbar in probes {
        let probe_json = json!(xbar);
        match normal_intersection_rule(&p.omega1, &p.omega2, &xbar) {
            Err(Error::NotInSet) => ctx.skip(probe_json, "NotInSet"),
            Err(e) => ctx.skip(probe_json, e),
            Ok(out) => {
                // Normal directions are characterized by support attainment:
                // x* in N(xbar) iff sigma(x*) = <x*, xbar>; check via the
                // V-side oracle on every generator of the computed cone.
                let gens = inter_gens.as_ref().expect("probe point lies in the set");
                for dir in cone_directions(&out.lhs)? {
                    let sup = support_from_generators(gens, &dir);
                    let pairing = ExtReal::Finite(dot(&dir, &xbar));
                    ctx.oracle.record(
                        sup == pairing,
                        format!("normal generator {dir:?}"),
                        ext_str(&pairing),
                        ext_str(&sup),
                    );
                }
                let witnesses = json!({
                    "lhs": out.lhs.as_poly(),
                    "rhs": out.rhs.as_poly(),
                });
                qc_out = Some(out.qc.clone());
                ctx.finish(
                    probe_json,
                    out.equal,
                    "normal cone intersection rule violated",
                    witnesses,
                );
            }
        }
    }
    Ok(Report::conclude(instance, qc_out, ctx.probes, ctx.oracle))
}

fn extremal_check(instance: &Instance, p: crate::instance::SetsPayload) -> Result<Report> {
    let mut ctx = Ctx::new();
    let extremal = is_extremal_system(&p.omega1, &p.omega2)?;
    let mut ok = match p.expect_extremal {
        Some(expected) => expected == extremal,
        None => true,
    };
    let mut witnesses = json!({ "extremal": extremal });
    if extremal {
        // Extremality forbids interior meetings.
        ok &= p.omega1.interior_point_meeting(&p.omega2)?.is_none();
        ok &= p.omega2.interior_point_meeting(&p.omega1)?.is_none();
        match separate(&p.omega1, &p.omega2) {
            Ok(w) => {
                ok &= !is_zero_vec(&w.separator) && w.sup_value <= w.inf_value;
                // The translated set must be LP-certified disjoint.
                let moved = p.omega1.translate(&w.translation);
                ok &= moved.intersect(&p.omega2)?.is_empty();
                // Support values re-checked on the V-side.
                let s1 = support_oracle(&p.omega1, &w.separator)?;
                ctx.oracle.record(
                    s1 == ExtReal::Finite(w.sup_value.clone()),
                    "separation sup",
                    &w.sup_value,
                    ext_str(&s1),
                );
                let neg: Vector = w.separator.iter().map(|x| -x).collect();
                let s2 = support_oracle(&p.omega2, &neg)?;
                ctx.oracle.record(
                    s2 == ExtReal::Finite(-&w.inf_value),
                    "separation inf",
                    &w.inf_value,
                    ext_str(&s2),
                );
                witnesses = json!({
                    "extremal": true,
                    "separator": w.separator,
                    "translation": w.translation,
                    "sup": w.sup_value,
                    "inf": w.inf_value,
                });
            }
            Err(Error::NotSolid) => {
                ctx.skip(Value::Null, "NotSolid");
                return Ok(Report::conclude(instance, None, ctx.probes, ctx.oracle));
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        // Non-extremal pairs must be rejected through the interiority test.
        ok &= p
            .omega1
            .minkowski_diff(&p.omega2)?
            .origin_in_interior();
        ok &= matches!(separate(&p.omega1, &p.omega2), Err(Error::NotExtremal));
    }
    ctx.finish(Value::Null, ok, "extremal principle violated", witnesses);
    Ok(Report::conclude(instance, None, ctx.probes, ctx.oracle))
}

fn conjugate_sum_check(instance: &Instance, p: crate::instance::FunctionsPayload) -> Result<Report> {
    let probes: Vec<Vector> = instance.parse_probes()?;
    let mut ctx = Ctx::new();
    let total = match sum(&p.f, &p.g) {
        Ok(t) => t,
        Err(Error::EmptyCommonDomain) => {
            for xstar in probes {
                ctx.skip(json!(xstar), "EmptyCommonDomain");
            }
            return Ok(Report::conclude(instance, None, ctx.probes, ctx.oracle));
        }
        Err(e) => return Err(e.into()),
    };
    let total_oracle = EpiOracle::new(&total);
    let f_oracle = EpiOracle::new(&p.f);
    let g_oracle = EpiOracle::new(&p.g);
    let mut qc_out = None;
    for xstar in probes {
        let probe_json = json!(xstar);
        match conjugate_sum_rule(&p.f, &p.g, &xstar) {
            Err(Error::EmptyCommonDomain) => ctx.skip(probe_json, "EmptyCommonDomain"),
            Err(e) => return Err(e.into()),
            Ok(rule) => {
                let direct = total.conjugate_value(&xstar)?;
                let mut ok = direct == rule.lhs;
                let oracle_value = total_oracle.conjugate(&xstar);
                ctx.oracle.record(
                    oracle_value == rule.lhs,
                    format!("(f+g)* at {xstar:?}"),
                    ext_str(&rule.lhs),
                    ext_str(&oracle_value),
                );
                let mut witnesses = json!({ "value": rule.lhs });
                if let Some((x1, x2)) = &rule.split {
                    let v1 = p.f.conjugate_value(x1)?;
                    let v2 = p.g.conjugate_value(x2)?;
                    ok &= v1.try_add(&v2)? == rule.lhs;
                    let o1 = f_oracle.conjugate(x1);
                    let o2 = g_oracle.conjugate(x2);
                    ctx.oracle.record(
                        o1 == v1 && o2 == v2,
                        format!("split conjugates at {xstar:?}"),
                        format!("{}, {}", ext_str(&v1), ext_str(&v2)),
                        format!("{}, {}", ext_str(&o1), ext_str(&o2)),
                    );
                    witnesses = json!({ "value": rule.lhs, "x1star": x1, "x2star": x2 });
                }
                qc_out = Some(rule.qc.clone());
                ctx.finish(probe_json, ok, "conjugate sum rule violated", witnesses);
            }
        }
    }
    Ok(Report::conclude(instance, qc_out, ctx.probes, ctx.oracle))
}

fn conjugate_chain_check(
    instance: &Instance,
    p: crate::instance::CompositionPayload,
) -> Result<Report> {
    let probes: Vec<Vector> = instance.parse_probes()?;
    let mut ctx = Ctx::new();
    let composed = match compose(&p.g, &p.a) {
        Ok(c) => c,
        Err(Error::InfeasibleComposition) => {
            for xstar in probes {
                ctx.skip(json!(xstar), "InfeasibleComposition");
            }
            return Ok(Report::conclude(instance, None, ctx.probes, ctx.oracle));
        }
        Err(e) => return Err(e.into()),
    };
    let composed_oracle = EpiOracle::new(&composed);
    let g_oracle = EpiOracle::new(&p.g);
    for xstar in probes {
        let probe_json = json!(xstar);
        match conjugate_chain_rule(&p.g, &p.a, &xstar) {
            Err(Error::InfeasibleComposition) => ctx.skip(probe_json, "InfeasibleComposition"),
            Err(e) => return Err(e.into()),
            Ok(rule) => {
                let oracle_value = composed_oracle.conjugate(&xstar);
                ctx.oracle.record(
                    oracle_value == rule.lhs,
                    format!("(g.A)* at {xstar:?}"),
                    ext_str(&rule.lhs),
                    ext_str(&oracle_value),
                );
                let mut ok = true;
                let mut witnesses = json!({ "value": rule.lhs });
                if let Some(ystar) = &rule.witness {
                    ok &= p.a.adjoint_apply(ystar) == xstar;
                    let gy = p.g.conjugate_value(ystar)?;
                    ok &= gy == rule.lhs;
                    let oy = g_oracle.conjugate(ystar);
                    ctx.oracle.record(
                        oy == gy,
                        format!("g* at witness {ystar:?}"),
                        ext_str(&gy),
                        ext_str(&oy),
                    );
                    witnesses = json!({ "value": rule.lhs, "ystar": ystar });
                }
                ctx.finish(probe_json, ok, "conjugate chain rule violated", witnesses);
            }
        }
    }
    Ok(Report::conclude(instance, None, ctx.probes, ctx.oracle))
}

fn conjugate_max_check(instance: &Instance, p: crate::instance::FunctionsPayload) -> Result<Report> {
    let probes: Vec<Vector> = instance.parse_probes()?;
    let mut ctx = Ctx::new();
    let maxed = match pointwise_max(&p.f, &p.g) {
        Ok(m) => m,
        Err(Error::EmptyCommonDomain) => {
            for xstar in probes {
                ctx.skip(json!(xstar), "EmptyCommonDomain");
            }
            return Ok(Report::conclude(instance, None, ctx.probes, ctx.oracle));
        }
        Err(e) => return Err(e.into()),
    };
    let maxed_oracle = EpiOracle::new(&maxed);
    for xstar in probes {
        let probe_json = json!(xstar);
        match conjugate_max_rule(&p.f, &p.g, &xstar) {
            Err(Error::EmptyCommonDomain) => ctx.skip(probe_json, "EmptyCommonDomain"),
            Err(e) => return Err(e.into()),
            Ok(rule) => {
                let oracle_value = maxed_oracle.conjugate(&xstar);
                ctx.oracle.record(
                    oracle_value == rule.lhs,
                    format!("(f v g)* at {xstar:?}"),
                    ext_str(&rule.lhs),
                    ext_str(&oracle_value),
                );
                let mut ok = true;
                let mut witnesses = json!({ "value": rule.lhs });
                if let Some(lambda) = &rule.lambda {
                    // The attained mix reproduces the value; other mixes
                    // can only be larger.
                    let mix = convex_mix(&p.f, &p.g, lambda)?;
                    ok &= mix.conjugate_value(&xstar)? == rule.lhs;
                    for sample in [Q::zero(), Q::new(1, 2), Q::one()] {
                        let other = convex_mix(&p.f, &p.g, &sample)?;
                        ok &= other.conjugate_value(&xstar)? >= rule.lhs;
                    }
                    witnesses = json!({ "value": rule.lhs, "lambda": lambda });
                }
                ctx.finish(probe_json, ok, "conjugate max rule violated", witnesses);
            }
        }
    }
    Ok(Report::conclude(instance, None, ctx.probes, ctx.oracle))
}

/// Oracle checks shared by the subdifferential rules: every generator of
/// the computed subdifferential must pass the definitional oracle, and
/// Fenchel-Young must hold with equality on the vertices.
fn check_subdifferential_generators(
    ctx: &mut Ctx,
    func: &PLFunction,
    xbar: &[Q],
    sub: &HPolyhedron,
) -> Result<bool> {
    let gens = sub.h_to_v()?;
    let mut fenchel_ok = true;
    let fx = match func.evaluate(xbar)? {
        ExtReal::Finite(v) => v,
        _ => return Err(Error::NotInDomain.into()),
    };
    let epi_gens = generators_by_enumeration(func.epigraph())
        .ok_or(HarnessError::Schema("proper function with empty epigraph".into()))?;
    for v in &gens.vertices {
        let is_sub = subgradient_from_generators(&epi_gens, &fx, xbar, v);
        ctx.oracle.record(
            is_sub,
            format!("subgradient vertex {v:?}"),
            "member",
            if is_sub { "member" } else { "outside" },
        );
        // Fenchel-Young equality characterization on generators.
        match func.conjugate_value(v)? {
            ExtReal::Finite(fs) => fenchel_ok &= &fx + &fs == dot(v, xbar),
            _ => fenchel_ok = false,
        }
    }
    for r in &gens.rays {
        for v in &gens.vertices {
            let deep = vec_add(v, r);
            let is_sub = subgradient_from_generators(&epi_gens, &fx, xbar, &deep);
            ctx.oracle.record(
                is_sub,
                format!("subgradient ray point {deep:?}"),
                "member",
                if is_sub { "member" } else { "outside" },
            );
        }
    }
    Ok(fenchel_ok)
}

fn subdiff_sum_check(instance: &Instance, p: crate::instance::FunctionsPayload) -> Result<Report> {
    let probes: Vec<Vector> = instance.parse_probes()?;
    let mut ctx = Ctx::new();
    for xbar in probes {
        let probe_json = json!(xbar);
        match subdiff_sum_rule(&p.f, &p.g, &xbar) {
            Err(Error::NotInDomain) => ctx.skip(probe_json, "NotInDomain"),
            Err(Error::EmptyCommonDomain) => ctx.skip(probe_json, "EmptyCommonDomain"),
            Err(e) => return Err(e.into()),
            Ok(rule) => {
                let total = sum(&p.f, &p.g)?;
                let mut ok = rule.equal;
                ok &= check_subdifferential_generators(&mut ctx, &total, &xbar, &rule.lhs)?;
                ctx.finish(
                    probe_json,
                    ok,
                    "subdifferential sum rule violated",
                    json!({ "lhs": rule.lhs, "rhs": rule.rhs }),
                );
            }
        }
    }
    Ok(Report::conclude(instance, None, ctx.probes, ctx.oracle))
}

fn subdiff_chain_check(
    instance: &Instance,
    p: crate::instance::CompositionPayload,
) -> Result<Report> {
    let probes: Vec<Vector> = instance.parse_probes()?;
    let mut ctx = Ctx::new();
    for xbar in probes {
        let probe_json = json!(xbar);
        match subdiff_chain_rule(&p.g, &p.a, &xbar) {
            Err(Error::NotInDomain) => ctx.skip(probe_json, "NotInDomain"),
            Err(Error::InfeasibleComposition) => ctx.skip(probe_json, "InfeasibleComposition"),
            Err(e) => return Err(e.into()),
            Ok(rule) => {
                let composed = compose(&p.g, &p.a)?;
                let mut ok = rule.equal;
                ok &= check_subdifferential_generators(&mut ctx, &composed, &xbar, &rule.lhs)?;
                ctx.finish(
                    probe_json,
                    ok,
                    "subdifferential chain rule violated",
                    json!({ "lhs": rule.lhs, "rhs": rule.rhs }),
                );
            }
        }
    }
    Ok(Report::conclude(instance, None, ctx.probes, ctx.oracle))
}

fn subdiff_max_check(instance: &Instance, p: crate::instance::FunctionsPayload) -> Result<Report> {
    let probes: Vec<Vector> = instance.parse_probes()?;
    let mut ctx = Ctx::new();
    for xbar in probes {
        let probe_json = json!(xbar);
        match subdiff_max_rule(&p.f, &p.g, &xbar) {
            Err(Error::NotInDomain) => ctx.skip(probe_json, "NotInDomain"),
            Err(Error::EmptyCommonDomain) => ctx.skip(probe_json, "EmptyCommonDomain"),
            Err(e) => return Err(e.into()),
            Ok(rule) => {
                let maxed = pointwise_max(&p.f, &p.g)?;
                let mut ok = rule.equal;
                ok &= check_subdifferential_generators(&mut ctx, &maxed, &xbar, &rule.lhs)?;
                ctx.finish(
                    probe_json,
                    ok,
                    "subdifferential max rule violated",
                    json!({ "case": rule.case, "lhs": rule.lhs, "rhs": rule.rhs }),
                );
            }
        }
    }
    Ok(Report::conclude(instance, None, ctx.probes, ctx.oracle))
}

fn marginal_conjugate_check(
    instance: &Instance,
    p: crate::instance::MarginalPayload,
) -> Result<Report> {
    let probes: Vec<Vector> = instance.parse_probes()?;
    let problem = MarginalProblem::new(p.phi.clone(), p.constraint.clone())?;
    let mu = marginal_closed_form(&problem)?;
    let mut ctx = Ctx::new();
    for xstar in probes {
        let probe_json = json!(xstar);
        match marginal_conjugate(&problem, &xstar) {
            Err(e) => ctx.skip(probe_json, e),
            Ok(out) => {
                let ok = out.mu_star == out.via_sum && out.mu_star == out.via_convolution;
                let oracle_value = conjugate_oracle(&mu, &xstar)?;
                ctx.oracle.record(
                    oracle_value == out.mu_star,
                    format!("mu* at {xstar:?}"),
                    ext_str(&out.mu_star),
                    ext_str(&oracle_value),
                );
                ctx.finish(
                    probe_json,
                    ok,
                    "marginal conjugate routes disagree",
                    json!({
                        "mu_star": out.mu_star,
                        "via_sum": out.via_sum,
                        "via_convolution": out.via_convolution,
                        "split": out.split,
                    }),
                );
            }
        }
    }
    Ok(Report::conclude(instance, None, ctx.probes, ctx.oracle))
}

fn marginal_subdiff_check(
    instance: &Instance,
    p: crate::instance::MarginalPayload,
) -> Result<Report> {
    let probes: Vec<XYProbe> = instance.parse_probes()?;
    let problem = MarginalProblem::new(p.phi.clone(), p.constraint.clone())?;
    let mu = marginal_closed_form(&problem)?;
    let n = problem.n();
    let x_free = p
        .phi
        .epigraph()
        .ineq()
        .iter()
        .chain(p.phi.epigraph().eq())
        .all(|(a, _)| a[..n].iter().all(Q::is_zero));
    let mut ctx = Ctx::new();
    for probe in probes {
        let probe_json = serde_json::to_value(&probe).expect("probe serializes");
        match marginal_subdifferential(&problem, &probe.xbar, &probe.ybar) {
            Err(Error::NotASolution) => ctx.skip(probe_json, "NotASolution"),
            Err(e) => return Err(e.into()),
            Ok(out) => {
                let mut ok = out.equal;
                ok &= check_subdifferential_generators(&mut ctx, &mu, &probe.xbar, &out.lhs)?;
                let sampler = decomposition_sampler(
                    &out.preimage,
                    &out.via_coderivative,
                    SAMPLER_SEED,
                    SAMPLER_COUNT,
                );
                ctx.oracle.merge(sampler);
                // Parameter-independent costs collapse to the coderivative
                // union over the cost subgradients alone.
                if x_free {
                    let collapsed =
                        marginal_subdifferential_param_free(&problem, &probe.xbar, &probe.ybar)?;
                    ok &= collapsed.set_equal(&out.lhs)?;
                }
                ctx.finish(
                    probe_json,
                    ok,
                    "marginal subdifferential routes disagree",
                    json!({
                        "lhs": out.lhs,
                        "via_sum_representation": out.via_sum_representation,
                        "via_coderivative": out.via_coderivative,
                    }),
                );
            }
        }
    }
    Ok(Report::conclude(instance, None, ctx.probes, ctx.oracle))
}

fn ordered_chain_check(instance: &Instance, p: crate::instance::OrderedPayload) -> Result<Report> {
    let probes: Vec<OrderedProbe> = instance.parse_probes()?;
    let cone = PolyhedralCone::new(p.yplus.clone())?;
    let problem = OrderedChainProblem::new(cone.clone(), p.f.clone(), p.phi.clone())?;
    let mut ctx = Ctx::new();
    for probe in probes {
        let probe_json = serde_json::to_value(&probe).expect("probe serializes");
        match ordered_chain_rule(&problem, &probe.xbar) {
            Err(Error::NotInDomain) => ctx.skip(probe_json, "NotInDomain"),
            Err(e) => return Err(e.into()),
            Ok(rule) => {
                let mut ok = rule.equal;
                // Subgradients of a nondecreasing cost pair nonnegatively
                // with the ordering cone generators.
                let fx = p.f.apply(&probe.xbar);
                let dphi = p.phi.subdifferential(&fx)?;
                let dphi_gens = dphi.h_to_v()?;
                let cone_dirs = cone_directions(&cone)?;
                for ystar in dphi_gens.vertices.iter().chain(dphi_gens.rays.iter()) {
                    for z in &cone_dirs {
                        let pairing = dot(ystar, z);
                        ctx.oracle.record(
                            !pairing.is_negative(),
                            format!("monotone pairing <{ystar:?}, {z:?}>"),
                            ">= 0",
                            pairing.to_string(),
                        );
                    }
                }
                if let Some(ystar) = &probe.ystar {
                    match epigraphical_coderivative_check(&problem, &probe.xbar, ystar) {
                        Err(Error::NotASubgradient) => {
                            ctx.skip(probe_json.clone(), "NotASubgradient");
                            continue;
                        }
                        Err(e) => return Err(e.into()),
                        Ok(check) => ok &= check.equal,
                    }
                }
                ctx.finish(
                    probe_json,
                    ok,
                    "ordered chain rule violated",
                    json!({ "lhs": rule.lhs, "rhs": rule.rhs }),
                );
            }
        }
    }
    Ok(Report::conclude(instance, None, ctx.probes, ctx.oracle))
}

fn cod_sum_check(instance: &Instance, p: crate::instance::MapPairPayload) -> Result<Report> {
    let probes: Vec<CodSumProbe> = instance.parse_probes()?;
    let mut ctx = Ctx::new();
    let mut qc_out = None;
    for probe in probes {
        let probe_json = serde_json::to_value(&probe).expect("probe serializes");
        match coderivative_sum_rule(
            &p.f1,
            &p.f2,
            &probe.xbar,
            &probe.ybar,
            &probe.y1bar,
            &probe.y2bar,
            &probe.ystar,
        ) {
            Err(Error::NotADecomposition) => ctx.skip(probe_json, "NotADecomposition"),
            Err(e) => return Err(e.into()),
            Ok(rule) => {
                let sampler =
                    decomposition_sampler(&rule.preimage, &rule.rhs, SAMPLER_SEED, SAMPLER_COUNT);
                ctx.oracle.merge(sampler);
                qc_out = Some(rule.qc.clone());
                ctx.finish(
                    probe_json,
                    rule.equal,
                    "coderivative sum rule violated",
                    json!({ "lhs": rule.lhs, "rhs": rule.rhs }),
                );
            }
        }
    }
    Ok(Report::conclude(instance, qc_out, ctx.probes, ctx.oracle))
}

fn cod_chain_check(instance: &Instance, p: crate::instance::MapChainPayload) -> Result<Report> {
    let probes: Vec<CodChainProbe> = instance.parse_probes()?;
    let mut ctx = Ctx::new();
    let mut qc_out = None;
    for probe in probes {
        let probe_json = serde_json::to_value(&probe).expect("probe serializes");
        match coderivative_chain_rule(
            &p.f,
            &p.g,
            &probe.xbar,
            &probe.ybar,
            &probe.zbar,
            &probe.zstar,
        ) {
            Err(Error::BadIntermediatePoint) => ctx.skip(probe_json, "BadIntermediatePoint"),
            Err(e) => return Err(e.into()),
            Ok(rule) => {
                let sampler =
                    decomposition_sampler(&rule.preimage, &rule.rhs, SAMPLER_SEED, SAMPLER_COUNT);
                ctx.oracle.merge(sampler);
                qc_out = Some(rule.qc.clone());
                ctx.finish(
                    probe_json,
                    rule.equal,
                    "coderivative chain rule violated",
                    json!({ "lhs": rule.lhs, "rhs": rule.rhs }),
                );
            }
        }
    }
    Ok(Report::conclude(instance, qc_out, ctx.probes, ctx.oracle))
}

fn cod_intersect_check(instance: &Instance, p: crate::instance::MapPairPayload) -> Result<Report> {
    let probes: Vec<CodIntersectProbe> = instance.parse_probes()?;
    let mut ctx = Ctx::new();
    let mut qc_out = None;
    for probe in probes {
        let probe_json = serde_json::to_value(&probe).expect("probe serializes");
        match coderivative_intersection_rule(&p.f1, &p.f2, &probe.xbar, &probe.ybar, &probe.ystar)
        {
            Err(Error::NotInBothGraphs) => ctx.skip(probe_json, "NotInBothGraphs"),
            Err(e) => return Err(e.into()),
            Ok(rule) => {
                let sampler =
                    decomposition_sampler(&rule.preimage, &rule.rhs, SAMPLER_SEED, SAMPLER_COUNT);
                ctx.oracle.merge(sampler);
                qc_out = Some(rule.qc.clone());
                ctx.finish(
                    probe_json,
                    rule.equal,
                    "coderivative intersection rule violated",
                    json!({ "lhs": rule.lhs, "rhs": rule.rhs }),
                );
            }
        }
    }
    Ok(Report::conclude(instance, qc_out, ctx.probes, ctx.oracle))
}

fn biconjugate_check(instance: &Instance, p: crate::instance::FunctionPayload) -> Result<Report> {
    let mut ctx = Ctx::new();
    let bi = p.f.biconjugate()?;
    let ok = bi.equal(&p.f)?;
    // Conjugate values against the enumeration oracle at small probes.
    let dim = p.f.dim();
    for k in 0..3i64 {
        let probe: Vector = (0..dim).map(|j| Q::from_int(k - 1 + j as i64 % 2)).collect();
        let main = p.f.conjugate_value(&probe)?;
        let oracle = conjugate_oracle(&p.f, &probe)?;
        ctx.oracle.record(
            main == oracle,
            format!("f* at {probe:?}"),
            ext_str(&main),
            ext_str(&oracle),
        );
    }
    ctx.finish(
        Value::Null,
        ok,
        "biconjugate fixed point violated",
        json!({ "dim": p.f.dim() }),
    );
    Ok(Report::conclude(instance, None, ctx.probes, ctx.oracle))
}
