use polycal::num::Q;
use polycal::polyhedra::HPolyhedron;
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
    let g1 = o1.h_to_v().unwrap();
    let g2 = o2.negate().h_to_v().unwrap();
    println!(
        "both h_to_v: {:?} v1={} v2={}",
        t.elapsed(),
        g1.vertices.len(),
        g2.vertices.len()
    );

    let t = Instant::now();
    let mut vertices = Vec::new();
    for u in &g1.vertices {
        for v in &g2.vertices {
            vertices.push(polycal::linalg::vec_add(u, v));
        }
    }
    vertices.sort_by(|x, y| polycal::linalg::lex_cmp(x, y));
    vertices.dedup();
    println!("pairwise: {:?} count={}", t.elapsed(), vertices.len());

    let t = Instant::now();
    let gens = polycal::Generators {
        dim: 4,
        vertices,
        rays: vec![],
        lineality: vec![],
    };
    let hull = HPolyhedron::v_to_h(&gens);
    println!(
        "v_to_h(pairwise): {:?} rows={}",
        t.elapsed(),
        hull.ineq().len()
    );
}
