use polycal::num::Q;
use polycal_cli::gen::{generate, GenConfig};
use polycal_cli::instance::{Kind, Payload};
use std::time::Instant;

fn main() {
    let cfg = GenConfig {
        dims: (4, 4),
        budget: 3,
    };
    let inst = generate(Kind::SupportIntersection, 0, 0, &cfg).unwrap();
    let Payload::Sets(sets) = inst.parse_payload().unwrap() else {
        panic!()
    };
    let probes: Vec<Vec<Q>> = inst.parse_probes().unwrap();
    for (k, xstar) in probes.iter().enumerate() {
        let t = Instant::now();
        let out =
            polycal::supports::support_intersection(&sets.omega1, &sets.omega2, xstar).unwrap();
        println!("probe {k} {xstar:?}: rule {:?}", t.elapsed());
        if let Some((x1, x2)) = &out.split {
            let t = Instant::now();
            let s1 = polycal::supports::support(&sets.omega1, x1).unwrap();
            println!("  support(o1, x1={x1:?}): {:?} = {:?}", t.elapsed(), s1.value);
            let t = Instant::now();
            let s2 = polycal::supports::support(&sets.omega2, x2).unwrap();
            println!("  support(o2, x2={x2:?}): {:?} = {:?}", t.elapsed(), s2.value);
        }
    }
}
