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
    println!(
        "o1 rows={} o2 rows={}",
        sets.omega1.ineq().len(),
        sets.omega2.ineq().len()
    );
    let t = Instant::now();
    let g1 = sets.omega1.h_to_v().unwrap();
    println!("h_to_v(o1): {:?} verts={}", t.elapsed(), g1.vertices.len());
    let t = Instant::now();
    let g2 = sets.omega2.h_to_v().unwrap();
    println!("h_to_v(o2): {:?} verts={}", t.elapsed(), g2.vertices.len());
    let inter = sets.omega1.intersect(&sets.omega2).unwrap();
    let t = Instant::now();
    let gi = polycal::oracles::generators_by_enumeration(&inter);
    println!(
        "enum(inter): {:?} verts={:?}",
        t.elapsed(),
        gi.map(|g| g.vertices.len())
    );
    let t = Instant::now();
    let probe: Vec<polycal::Q> = (0..4).map(|i| polycal::Q::from_int(i - 2)).collect();
    let si = polycal::supports::support_intersection(&sets.omega1, &sets.omega2, &probe).unwrap();
    println!("support_intersection: {:?} value={:?}", t.elapsed(), si.value);
    let t = Instant::now();
    let report = polycal_cli::run::run_instance(&inst).unwrap();
    println!("full run_instance: {:?} verdict={:?}", t.elapsed(), report.verdict);
}
