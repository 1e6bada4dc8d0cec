//! Vertex-by-vertex elimination: each deletion is justified by collapsing
//! the vertex link and lifting the collapse to the star.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use super::lemmas::ccoll;
use super::search::{collapse_search, CollapseTarget};
use super::{CollapseCertificate, SearchBudget};
use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};

/// A simplicial complex with a per-vertex star index, for cheap links and
/// deletions.
#[derive(Clone, Debug)]
pub(crate) struct Live {
    faces: BTreeSet<Simplex>,
    star: BTreeMap<VertexId, BTreeSet<Simplex>>,
}

impl Live {
    pub(crate) fn new(c: &SimplicialComplex) -> Self {
        let mut star: BTreeMap<VertexId, BTreeSet<Simplex>> = BTreeMap::new();
        for f in c.iter() {
            for &v in f.vertices() {
                star.entry(v).or_default().insert(f.clone());
            }
        }
        Live { faces: c.faces().clone(), star }
    }

    pub(crate) fn has_vertex(&self, v: VertexId) -> bool {
        self.star.contains_key(&v)
    }

    pub(crate) fn link(&self, v: VertexId) -> SimplicialComplex {
        let faces = self.star.get(&v).map(|s| s.iter().filter_map(|f| f.without_vertex(v)).collect()).unwrap_or_default();
        SimplicialComplex::from_closed_set(faces)
    }

    pub(crate) fn delete_vertex(&mut self, v: VertexId) {
        let Some(st) = self.star.remove(&v) else { return };
        for f in st {
            self.faces.remove(&f);
            for u in f.vertices() {
                if *u != v {
                    if let Some(s) = self.star.get_mut(u) {
                        s.remove(&f);
                    }
                }
            }
        }
    }

    pub(crate) fn insert(&mut self, f: Simplex) {
        for &v in f.vertices() {
            self.star.entry(v).or_default().insert(f.clone());
        }
        self.faces.insert(f);
    }

    pub(crate) fn complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_closed_set(self.faces.clone())
    }
}

/// Collapses `link` onto `sub` (any vertex when `sub` is empty): by the cone
/// construction when both share an apex, otherwise by search.
pub(crate) fn solve_link(
    link: &SimplicialComplex,
    sub: &SimplicialComplex,
    budget: SearchBudget,
) -> Result<CollapseCertificate<Simplex>> {
    if let Some(a) = link.cone_apex() {
        if sub.is_empty() || sub.facets().iter().all(|f| f.contains_vertex(a)) {
            let base = link.delete_vertex(a);
            let sub_base = sub.delete_vertex(a);
            if sub_base.is_subcomplex_of(&base) {
                return ccoll(&base, &sub_base, a);
            }
        }
    }
    let target = if sub.is_empty() { CollapseTarget::Point } else { CollapseTarget::Complex(sub.clone()) };
    collapse_search(link, &target, budget)
}

/// Deletes the vertices in `order` one at a time, keeping every face of
/// `keep` (a subcomplex of `start`). At vertex `v` the link collapses onto
/// `Lk(v, keep)`, or to a point when `v` is not in `keep`, and the collapse
/// is lifted to the star of `v`. Returns the steps and the final complex.
pub fn eliminate_vertices(
    start: &SimplicialComplex,
    order: &[VertexId],
    keep: &SimplicialComplex,
    budget: SearchBudget,
) -> Result<(Vec<(Simplex, Simplex)>, SimplicialComplex)> {
    if !keep.is_subcomplex_of(start) {
        return Err(Error::NotSubcomplex("kept complex".into()));
    }
    let kept = Live::new(keep);
    let mut cur = Live::new(start);
    let mut steps = Vec::new();
    for &v in order {
        if !cur.has_vertex(v) {
            return Err(Error::FaceNotInComplex(format!("vertex {v}")));
        }
        let link = cur.link(v);
        let sub = kept.link(v);
        let in_keep = kept.has_vertex(v);
        if in_keep && sub.is_empty() {
            if link.is_empty() {
                continue;
            }
            return Err(Error::ProvedImpossible);
        }
        if link.is_empty() {
            return Err(Error::ProvedImpossible);
        }
        let lc = solve_link(&link, &sub, budget)?;
        steps.extend(lc.steps.iter().map(|(s, t)| (s.with_vertex(v), t.with_vertex(v))));
        cur.delete_vertex(v);
        if in_keep {
            for f in sub.iter() {
                cur.insert(f.with_vertex(v));
            }
            cur.insert(Simplex::vertex(v));
        } else {
            let p = lc.target[0].vertices()[0];
            steps.push((Simplex::vertex(v), Simplex::new([v, p])));
        }
    }
    Ok((steps, cur.complex()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify_certificate;

    #[test]
    fn eliminating_a_triangle_down_to_an_edge() {
        let t = SimplicialComplex::simplex_on([0, 1, 2]);
        let keep = SimplicialComplex::simplex_on([1, 2]);
        let (steps, end) = eliminate_vertices(&t, &[0], &keep, SearchBudget::default()).unwrap();
        assert_eq!(end, keep);
        let cert = CollapseCertificate { steps, target: end.facets() };
        assert!(verify_certificate(&t, &cert, Some(&keep)));
    }

    #[test]
    fn kept_vertex_keeps_its_star_in_keep() {
        let t = SimplicialComplex::from_vertex_lists([[0, 1, 2], [0, 2, 3]]).unwrap();
        let keep = SimplicialComplex::from_vertex_lists([[0, 1], [2, 3]]).unwrap();
        let (steps, end) = eliminate_vertices(&t, &[2], &keep, SearchBudget::default()).unwrap();
        let cert = CollapseCertificate { steps, target: end.facets() };
        assert!(verify_certificate(&t, &cert, None));
        assert!(keep.is_subcomplex_of(&end));
    }
}
