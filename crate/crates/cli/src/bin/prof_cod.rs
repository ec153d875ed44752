use polycal_cli::gen::{generate, GenConfig};
use polycal_cli::instance::{CodIntersectProbe, Kind, Payload};
use std::time::Instant;

fn main() {
    let cfg = GenConfig {
        dims: (1, 2),
        budget: 3,
    };
    for idx in 0..10u64 {
        let inst = generate(Kind::CodIntersect, 0, idx, &cfg).unwrap();
        let Payload::MapPair(p) = inst.parse_payload().unwrap() else {
            panic!()
        };
        let probes: Vec<CodIntersectProbe> = inst.parse_probes().unwrap();
        let pr = &probes[0];
        let t = Instant::now();
        let rule = polycal::multimaps::coderivative_intersection_rule(
            &p.f1, &p.f2, &pr.xbar, &pr.ybar, &pr.ystar,
        )
        .unwrap();
        let rule_t = t.elapsed();
        let t = Instant::now();
        let rep =
            polycal::oracles::decomposition_sampler(&rule.preimage, &rule.rhs, 0, 100);
        let samp_t = t.elapsed();
        let t = Instant::now();
        let _full = polycal_cli::run::run_instance(&inst).unwrap();
        println!(
            "idx {idx} (n={} m={}): rule {rule_t:?} sampler {samp_t:?} (checked {}) full {:?}",
            p.f1.n(),
            p.f1.m(),
            rep.checked,
            t.elapsed()
        );
    }
}
