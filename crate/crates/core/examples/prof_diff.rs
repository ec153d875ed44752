use polycal::num::Q;
use polycal::polyhedra::HPolyhedron;
use polycal::supports::check_qualification;
use std::time::Instant;

fn main() {
    let qv = |v: &[i64]| -> Vec<Q> { v.iter().map(|&n| Q::from_int(n)).collect() };
    let mut o1 = HPolyhedron::hypercube(4, Q::from_int(4));
    o1.push_ineq(qv(&[1, -2, 3, 1]), Q::from_int(2));
    o1.push_ineq(qv(&[-2, 1, 0, 3]), Q::from_int(1));
    o1.push_ineq(qv(&[3, 3, -1, -2]), Q::from_int(3));
    let mut o2 = HPolyhedron::hypercube(4, Q::from_int(4));
    o2.push_ineq(qv(&[2, 1, -3, 1]), Q::from_int(1));
    o2.push_ineq(qv(&[-1, -1, 2, -3]), Q::from_int(2));
    o2.push_ineq(qv(&[0, 3, 1, -1]), Q::from_int(2));

    let t = Instant::now();
    let diff = o1.minkowski_diff(&o2).unwrap();
    println!(
        "minkowski_diff: {:?} rows={}",
        t.elapsed(),
        diff.ineq().len()
    );

    let t = Instant::now();
    let hull = diff.conic_hull().unwrap();
    println!(
        "conic_hull: {:?} rows={}",
        t.elapsed(),
        hull.as_poly().ineq().len()
    );

    let t = Instant::now();
    let _ = hull.is_subspace().unwrap();
    println!("is_subspace: {:?}", t.elapsed());

    let t = Instant::now();
    let gens = diff.h_to_v().unwrap();
    println!(
        "h_to_v(diff): {:?} verts={} rays={}",
        t.elapsed(),
        gens.vertices.len(),
        gens.rays.len()
    );

    let t = Instant::now();
    let qc = check_qualification(&o1, &o2, None).unwrap();
    println!("check_qualification: {:?} {:?}", t.elapsed(), qc);
}
