use polycal::num::Q;
use polycal::polyhedra::HPolyhedron;
use std::time::Instant;

fn main() {
    let qv = |v: &[i64]| -> Vec<Q> { v.iter().map(|&n| Q::from_int(n)).collect() };
    let mut o1 = HPolyhedron::hypercube(4, Q::from_int(4));
    o1.push_ineq(qv(&[1, -2, 3, 1]), Q::from_int(2));
    o1.push_ineq(qv(&[-2, 1, 0, 3]), Q::from_int(1));
    o1.push_ineq(qv(&[3, 3, -1, -2]), Q::from_int(3));

    let t = Instant::now();
    let empty = o1.is_empty();
    println!("is_empty: {:?} -> {empty}", t.elapsed());

    let t = Instant::now();
    let g1 = o1.h_to_v().unwrap();
    println!(
        "h_to_v(o1): {:?} verts={} rays={} lin={}",
        t.elapsed(),
        g1.vertices.len(),
        g1.rays.len(),
        g1.lineality.len()
    );

    let t = Instant::now();
    let back = HPolyhedron::v_to_h(&g1);
    println!("v_to_h: {:?} rows={}", t.elapsed(), back.ineq().len());

    let t = Instant::now();
    let ok = back.set_equal(&o1).unwrap();
    println!("set_equal: {:?} -> {ok}", t.elapsed());
}
