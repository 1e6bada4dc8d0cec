//! Certificate constructions and transformers for cones, links, unions and
//! derived subdivisions.

use alloc::format;
use alloc::vec::Vec;

use super::{CollapseCertificate, NeCertificate, NeStep};
use crate::complex::{Cell, CellComplex, Simplex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::subdivision::{order_complex, sd, sd0, sd_derived, DerivedComplex};
use crate::verify;

fn failed(e: verify::Rejection) -> Error {
    Error::VerificationFailed(format!("{e}"))
}

fn by_dim_desc(faces: &mut [Simplex]) {
    faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
}

/// `a ∗ base ↘ a ∗ sub` for a subcomplex `sub` of `base` (`sub` may be empty,
/// leaving the apex).
pub fn ccoll(base: &SimplicialComplex, sub: &SimplicialComplex, apex: VertexId) -> Result<CollapseCertificate<Simplex>> {
    if !sub.is_subcomplex_of(base) {
        return Err(Error::NotSubcomplex("the smaller base".into()));
    }
    let cone = base.cone(apex)?;
    let mut gone: Vec<Simplex> = base.faces().difference(sub.faces()).cloned().collect();
    by_dim_desc(&mut gone);
    let steps: Vec<(Simplex, Simplex)> = gone.into_iter().map(|s| {
        let t = s.with_vertex(apex);
        (s, t)
    }).collect();
    let end = if sub.is_empty() { SimplicialComplex::simplex_on([apex]) } else { sub.cone(apex)? };
    let cert = CollapseCertificate { steps, target: end.facets() };
    verify::check_collapse(&cone, &cert, Some(&end)).map_err(failed)?;
    Ok(cert)
}

/// Lifts `Lk(v, c) ↘ S` to `c ↘ (c − v) ∪ (v ∗ S)`.
pub fn cecoll_lift(
    c: &SimplicialComplex,
    v: VertexId,
    link_cert: &CollapseCertificate<Simplex>,
) -> Result<CollapseCertificate<Simplex>> {
    let steps: Vec<(Simplex, Simplex)> =
        link_cert.steps.iter().map(|(s, t)| (s.with_vertex(v), t.with_vertex(v))).collect();
    let s = link_cert.target_complex();
    let end = c.delete_vertex(v).union(&if s.is_empty() { SimplicialComplex::simplex_on([v]) } else { s.cone(v)? });
    let cert = CollapseCertificate { steps, target: end.facets() };
    verify::check_collapse(c, &cert, Some(&end)).map_err(failed)?;
    Ok(cert)
}

/// Reuses the steps of `c ↘ c'` inside `d ∪ c`, which then collapses to `d`
/// provided `d ∩ c = c'`.
pub fn uc_embed<C: Cell>(
    d: &CellComplex<C>,
    c: &CellComplex<C>,
    cert: &CollapseCertificate<C>,
) -> Result<CollapseCertificate<C>> {
    if d.intersection(c) != cert.target_complex() {
        return Err(Error::NotSubcomplex("the two complexes do not meet in the collapse target".into()));
    }
    let union = d.union(c);
    let out = CollapseCertificate { steps: cert.steps.clone(), target: d.facets() };
    verify::check_collapse(&union, &out, Some(d)).map_err(failed)?;
    Ok(out)
}

fn conev_raw(k: &SimplicialComplex, apex: VertexId) -> Result<NeCertificate> {
    if !k.facets().iter().all(|f| f.contains_vertex(apex)) {
        return Err(Error::BadParameters(format!("{apex} is not a cone apex")));
    }
    let mut cur = k.clone();
    let mut steps = Vec::new();
    for u in k.vertices() {
        if u == apex {
            continue;
        }
        let link = cur.vertex_link(u)?;
        steps.push(NeStep { vertex: u, link: conev_raw(&link, apex)? });
        cur = cur.delete_vertex(u);
    }
    Ok(NeCertificate { steps, point: apex })
}

/// Non-evasiveness of a cone: delete the other vertices, each link again a
/// cone with the same apex.
pub fn conev(k: &SimplicialComplex, apex: VertexId) -> Result<NeCertificate> {
    let cert = conev_raw(k, apex)?;
    verify::check_ne(k, &cert).map_err(failed)?;
    Ok(cert)
}

/// Turns a non-evasiveness certificate into a collapse to its point.
pub fn ne_to_collapse(k: &SimplicialComplex, cert: &NeCertificate) -> Result<CollapseCertificate<Simplex>> {
    let out = ne_to_collapse_raw(k, cert)?;
    verify::check_collapse(k, &out, None).map_err(failed)?;
    Ok(out)
}

fn ne_to_collapse_raw(k: &SimplicialComplex, cert: &NeCertificate) -> Result<CollapseCertificate<Simplex>> {
    let mut cur = k.clone();
    let mut steps = Vec::new();
    for st in &cert.steps {
        let v = st.vertex;
        let link = cur.vertex_link(v)?;
        let lc = ne_to_collapse_raw(&link, &st.link)?;
        steps.extend(lc.steps.iter().map(|(s, t)| (s.with_vertex(v), t.with_vertex(v))));
        steps.push((Simplex::vertex(v), Simplex::new([v, st.link.point])));
        cur = cur.delete_vertex(v);
    }
    Ok(CollapseCertificate { steps, target: alloc::vec![Simplex::vertex(cert.point)] })
}

/// sd of `k` with vertex for face `f` named `name(f)`.
fn sd_named(k: &SimplicialComplex, name: &dyn Fn(&Simplex) -> VertexId) -> SimplicialComplex {
    let (oc, elems) = order_complex(k.faces());
    oc.relabel(|i| name(&elems[i as usize]))
}

/// The deletions showing `(sd k) − u ↘NE sd(k − u)`: the vertices of faces
/// strictly containing `u`, by increasing dimension, each link a cone over
/// the vertex of the complementary face. `d` is the current subdivided
/// complex with `u` already gone and is updated in place.
fn cone_steps(
    k: &SimplicialComplex,
    u: VertexId,
    name: &dyn Fn(&Simplex) -> VertexId,
    d: &mut SimplicialComplex,
    out: &mut Vec<NeStep>,
) -> Result<()> {
    let mut taus: Vec<Simplex> = k.iter().filter(|t| t.len() > 1 && t.contains_vertex(u)).cloned().collect();
    taus.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    for t in taus {
        let w = name(&t);
        let apex = name(&t.without_vertex(u).expect("t has another vertex"));
        let link = d.vertex_link(w)?;
        out.push(NeStep { vertex: w, link: conev_raw(&link, apex)? });
        *d = d.delete_vertex(w);
    }
    Ok(())
}

/// Lifts `k ↘NE k'` to `sd k ↘NE sd k'`; returns the steps and `k'`.
fn lift_steps(
    k: &SimplicialComplex,
    steps: &[NeStep],
    name: &dyn Fn(&Simplex) -> VertexId,
) -> Result<(Vec<NeStep>, SimplicialComplex)> {
    let mut cur = k.clone();
    let mut d = sd_named(k, name);
    let mut out = Vec::new();
    for st in steps {
        let u = st.vertex;
        let link = cur.vertex_link(u)?;
        let lifted = lift_cert(&link, &st.link, &|r: &Simplex| name(&r.with_vertex(u)))?;
        let uu = name(&Simplex::vertex(u));
        out.push(NeStep { vertex: uu, link: lifted });
        d = d.delete_vertex(uu);
        cone_steps(&cur, u, name, &mut d, &mut out)?;
        cur = cur.delete_vertex(u);
    }
    Ok((out, cur))
}

fn lift_cert(k: &SimplicialComplex, cert: &NeCertificate, name: &dyn Fn(&Simplex) -> VertexId) -> Result<NeCertificate> {
    let (steps, _) = lift_steps(k, &cert.steps, name)?;
    Ok(NeCertificate { steps, point: name(&Simplex::vertex(cert.point)) })
}

/// `k ↘NE k'` gives `sd k ↘NE sd k'`, in the vertex names of `sd k`.
pub fn nonev_lift_steps(k: &SimplicialComplex, steps: &[NeStep]) -> Result<(DerivedComplex, Vec<NeStep>)> {
    let s = sd(k);
    let name = |f: &Simplex| s.vertex_of(f).expect("face of k");
    let (out, end) = lift_steps(k, steps, &name)?;
    let end_sd = s.subdivide_subcomplex(&end)?;
    verify::check_ne_steps(&s.complex, &out, &end_sd).map_err(failed)?;
    Ok((s, out))
}

/// A non-evasiveness certificate of `k` lifted to one of `sd k`.
pub fn nonev_lift(k: &SimplicialComplex, cert: &NeCertificate) -> Result<(DerivedComplex, NeCertificate)> {
    let s = sd(k);
    let name = |f: &Simplex| s.vertex_of(f).expect("face of k");
    let out = lift_cert(k, cert, &name)?;
    verify::check_ne(&s.complex, &out).map_err(failed)?;
    Ok((s, out))
}

/// `(sd^m c) − v ↘NE sd^m(c − v)`, in the vertex names of `sd^m c`. The
/// returned steps start from `sd^m c` with the vertex of `v` removed.
pub fn ne_cone_lemma_steps(c: &SimplicialComplex, v: VertexId, m: usize) -> Result<(DerivedComplex, Vec<NeStep>)> {
    if !c.has_vertex(v) {
        return Err(Error::FaceNotInComplex(format!("vertex {v}")));
    }
    let mut levels = alloc::vec![sd0(c, None)];
    let mut vids = alloc::vec![v];
    for j in 0..m {
        let next = sd_derived(&levels[j]);
        vids.push(next.vertex_of(&Simplex::vertex(vids[j])).expect("vertex survives"));
        levels.push(next);
    }
    let steps = cone_rec(&levels, &vids, m)?;
    let top = &levels[m];
    let start = top.complex.delete_vertex(vids[m]);
    let end = top.complex.filter_closed(|f| !top.base_carrier_of_face(f).contains_vertex(v));
    verify::check_ne_steps(&start, &steps, &end).map_err(failed)?;
    Ok((levels.pop().expect("level m"), steps))
}

fn cone_rec(levels: &[DerivedComplex], vids: &[VertexId], m: usize) -> Result<Vec<NeStep>> {
    if m == 0 {
        return Ok(Vec::new());
    }
    let e = &levels[m - 1].complex;
    let f = &levels[m];
    let name = |s: &Simplex| f.vertex_of(s).expect("face of the previous level");
    let mut d = f.complex.delete_vertex(vids[m]);
    let mut out = Vec::new();
    cone_steps(e, vids[m - 1], &name, &mut d, &mut out)?;
    let inner = cone_rec(levels, vids, m - 1)?;
    let (lifted, _) = lift_steps(&e.delete_vertex(vids[m - 1]), &inner, &name)?;
    out.extend(lifted);
    Ok(out)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::SimplicialComplex as K;

    #[test]
    fn ccoll_on_a_triangle_base() {
        let base = K::simplex_on([1, 2]);
        let sub = K::simplex_on([1]);
        let cert = ccoll(&base, &sub, 0).unwrap();
        assert_eq!(cert.steps.len(), 2);
        assert_eq!(cert.target_complex(), K::simplex_on([0, 1]));
        let all = ccoll(&base, &K::empty(), 0).unwrap();
        assert_eq!(all.target, alloc::vec![Simplex::vertex(0)]);
    }

    #[test]
    fn conev_of_a_cone_over_a_circle() {
        let c = K::simplex_on([1, 2, 3]).boundary().unwrap().cone(0).unwrap();
        let cert = conev(&c, 0).unwrap();
        assert_eq!(cert.point, 0);
        assert_eq!(cert.steps.len(), 3);
        let col = ne_to_collapse(&c, &cert).unwrap();
        assert_eq!(col.target, alloc::vec![Simplex::vertex(0)]);
    }

    #[test]
    fn cone_lemma_on_a_triangle() {
        let c = K::simplex_on([1, 2, 3]);
        let (s, steps) = ne_cone_lemma_steps(&c, 1, 1).unwrap();
        let deleted: Vec<Simplex> = steps.iter().map(|st| s.carrier(st.vertex).clone()).collect();
        assert_eq!(deleted, alloc::vec![Simplex::from([1, 2]), Simplex::from([1, 3]), Simplex::from([1, 2, 3])]);
        assert!(ne_cone_lemma_steps(&c, 1, 0).unwrap().1.is_empty());
        let (_, two) = ne_cone_lemma_steps(&c, 2, 2).unwrap();
        assert!(!two.is_empty());
    }

    #[test]
    fn cone_lemma_on_an_edge() {
        let c = K::simplex_on([1, 2]);
        let (s, steps) = ne_cone_lemma_steps(&c, 2, 1).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(s.carrier(steps[0].vertex), &Simplex::from([1, 2]));
    }

    #[test]
    fn nonev_lifts_a_path_certificate() {
        let p = K::from_vertex_lists([[0, 1], [1, 2]]).unwrap();
        let cert = NeCertificate {
            steps: alloc::vec![
                NeStep { vertex: 0, link: NeCertificate::point(1) },
                NeStep { vertex: 1, link: NeCertificate::point(2) },
            ],
            point: 2,
        };
        assert!(verify::verify_ne(&p, &cert));
        let (s, lifted) = nonev_lift(&p, &cert).unwrap();
        assert!(verify::verify_ne(&s.complex, &lifted));
    }

    #[test]
    fn union_embedding() {
        let c = K::simplex_on([0, 1, 2]);
        let d = K::from_vertex_lists([[1, 2], [2, 3]]).unwrap();
        let cert = CollapseCertificate {
            steps: alloc::vec![
                (Simplex::from([0, 2]), Simplex::from([0, 1, 2])),
                (Simplex::from([0]), Simplex::from([0, 1])),
            ],
            target: alloc::vec![Simplex::from([1, 2])],
        };
        let out = uc_embed(&d, &c, &cert).unwrap();
        assert_eq!(out.target_complex(), d);
    }
}
