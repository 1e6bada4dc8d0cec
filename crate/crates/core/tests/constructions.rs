use cellcollapse::collapse::{
    collapse_convex, collapse_star_shaped, convex_split_collapse, endo_collapse, endo_collapse_convex,
    hudson_collapse, ne_to_collapse, ConvexMode, SearchBudget, Subdivision,
};
use cellcollapse::gallery;
use cellcollapse::geometry::{int_point, GeometricComplex};
use cellcollapse::verify::{verify_certificate, verify_ne};
use cellcollapse::{Cell, Simplex, SimplicialComplex};
use std::collections::BTreeMap;

fn budget() -> SearchBudget {
    SearchBudget::new(100_000, 7)
}

#[test]
fn mode_c_on_simplices() {
    for d in 1..=3 {
        let g = gallery::simplex(d);
        let out = convex_split_collapse(&g, None, ConvexMode::C, budget()).unwrap();
        let f = out.removed.clone().unwrap();
        assert_eq!(f.len(), d);
        let mut want = out.sd.subdivide_subcomplex(&g.complex.boundary().unwrap()).unwrap().faces().clone();
        want.remove(&f);
        assert_eq!(out.cert.target_complex().faces(), &want);
        assert!(verify_certificate(&out.source, &out.cert, None));
    }
}

#[test]
fn mode_c_on_random_subdivisions() {
    for seed in 0..3 {
        let g = gallery::random_subdivision(3, 5, seed).unwrap();
        let out = convex_split_collapse(&g, None, ConvexMode::C, budget()).unwrap();
        assert!(verify_certificate(&out.source, &out.cert, None));
    }
}

fn octahedron() -> GeometricComplex {
    // rays ±e_i; vertex 2i is +e_i, 2i+1 is -e_i
    let mut facets = Vec::new();
    for a in [0u32, 1] {
        for b in [2u32, 3] {
            for c in [4u32, 5] {
                facets.push(vec![a, b, c]);
            }
        }
    }
    let complex = SimplicialComplex::from_vertex_lists(facets).unwrap();
    let mut pos = BTreeMap::new();
    for i in 0..3 {
        let mut p = [0i64; 3];
        p[i] = 1;
        pos.insert(2 * i as u32, int_point(&p));
        p[i] = -1;
        pos.insert(2 * i as u32 + 1, int_point(&p));
    }
    GeometricComplex::new(complex, pos).unwrap()
}

#[test]
fn mode_a_on_a_sphere() {
    let g = octahedron();
    let h = int_point(&[5, 3, 2]);
    let out = convex_split_collapse(&g, Some(&h), ConvexMode::A, budget()).unwrap();
    assert_eq!(out.cert.target.len(), 1);
    assert!(verify_certificate(&out.source, &out.cert, None));
}

#[test]
fn mode_b_on_a_spherical_triangle() {
    let g = GeometricComplex::new(
        SimplicialComplex::simplex_on([0, 1, 2]),
        [(0, int_point(&[1, 0, 0])), (1, int_point(&[0, 1, 0])), (2, int_point(&[0, 0, 1]))].into_iter().collect(),
    )
    .unwrap();
    let h = int_point(&[3, 2, -1]);
    let out = convex_split_collapse(&g, Some(&h), ConvexMode::B, budget()).unwrap();
    assert!(verify_certificate(&out.source, &out.cert, None));
}

#[test]
fn endo_collapses() {
    for d in 2..=3 {
        let g = gallery::simplex(d);
        let (s, delta, cert) = endo_collapse_convex(&g, None, budget()).unwrap();
        let start = s.complex.delete_face(&delta).unwrap();
        assert!(verify_certificate(&start, &cert, None));
        for other in s.complex.facets().into_iter().take(5) {
            let (s, delta, cert) = endo_collapse_convex(&g, Some(&other), budget()).unwrap();
            let start = s.complex.delete_face(&delta).unwrap();
            let end = s.subdivide_subcomplex(&g.complex.boundary().unwrap()).unwrap();
            assert!(verify_certificate(&start, &cert, Some(&end)));
        }
    }
    let sphere = gallery::boundary_sphere(3);
    let facet = sphere.facets()[0].clone();
    let cert = endo_collapse(&sphere, &facet, budget()).unwrap();
    assert_eq!(cert.target.len(), 1);
    assert!(endo_collapse(&gallery::dunce_hat(), &Simplex::from([1, 2, 5]), budget()).is_err());
}

#[test]
fn hudson_on_derived_subdivisions() {
    for d in 1..=3 {
        let g = gallery::simplex(d);
        let c = g.complex.clone();
        let apex = d as u32;
        let base = c.delete_vertex(apex);
        let cert = cellcollapse::collapse::ccoll(&base, &SimplicialComplex::empty(), apex).unwrap();
        let sub = Subdivision::derived(&g).unwrap();
        let (sdd, out) = hudson_collapse(&c, &cert, &sub, budget()).unwrap();
        assert!(verify_certificate(&sdd.complex, &out, None));
        assert_eq!(out.target.len(), 1);
    }
}

#[test]
fn convex_collapses() {
    for seed in 0..3 {
        let g = gallery::random_subdivision(2, 6, seed).unwrap();
        let (s, cert) = collapse_convex(&g, budget()).unwrap();
        assert!(verify_certificate(&s.complex, &cert, None));
    }
    let g = gallery::random_convex(9, 2, 1).unwrap();
    let (s, cert) = collapse_convex(&g, budget()).unwrap();
    assert!(verify_certificate(&s.complex, &cert, None));
    let g = gallery::random_subdivision(3, 4, 2).unwrap();
    let (s, cert) = collapse_convex(&g, budget()).unwrap();
    assert!(verify_certificate(&s.complex, &cert, None));
}

#[test]
fn star_shaped_l_shapes() {
    let (g, x) = gallery::lshape_2d();
    let (s, cert) = collapse_star_shaped(&g, &x, budget()).unwrap();
    assert!(verify_ne(&s.complex, &cert));
    let (g, x) = gallery::lshape_3d();
    let (s, cert) = collapse_star_shaped(&g, &x, budget()).unwrap();
    assert!(verify_ne(&s.complex, &cert));
    let col = ne_to_collapse(&s.complex, &cert).unwrap();
    assert!(verify_certificate(&s.complex, &col, None));
    assert!(Cell::dim(&col.target[0]) == 0);
}
