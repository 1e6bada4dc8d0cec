//! Replay checkers for collapse and non-evasiveness certificates.
//!
//! Nothing here calls into the search or construction code: the checkers
//! keep their own face sets and superface counts.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use core::fmt;

use crate::collapse::{CollapseCertificate, NeCertificate, NeStep};
use crate::complex::{Cell, CellComplex, Simplex, SimplicialComplex, VertexId};

/// Where and why a replay stopped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    /// Index of the offending step; equals the step count when only the end
    /// state is wrong.
    pub step: usize,
    pub reason: String,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {}", self.step, self.reason)
    }
}

fn reject(step: usize, reason: impl Into<String>) -> Rejection {
    Rejection { step, reason: reason.into() }
}

struct Replay<C: Cell> {
    faces: BTreeSet<C>,
    above: BTreeMap<C, usize>,
}

impl<C: Cell> Replay<C> {
    fn new(faces: impl IntoIterator<Item = C>) -> Self {
        let faces: BTreeSet<C> = faces.into_iter().collect();
        let mut above: BTreeMap<C, usize> = faces.iter().map(|f| (f.clone(), 0)).collect();
        for g in &faces {
            for f in g.all_faces() {
                if &f != g {
                    *above.entry(f).or_insert(0) += 1;
                }
            }
        }
        Replay { faces, above }
    }

    fn drop_face(&mut self, g: &C) {
        self.faces.remove(g);
        self.above.remove(g);
        for f in g.all_faces() {
            if &f != g {
                if let Some(n) = self.above.get_mut(&f) {
                    *n -= 1;
                }
            }
        }
    }
}

/// Replays `cert` on `c`. The end state must equal `target` when given,
/// and the closure of `cert.target` in any case.
pub fn check_collapse<C: Cell>(
    c: &CellComplex<C>,
    cert: &CollapseCertificate<C>,
    target: Option<&CellComplex<C>>,
) -> Result<(), Rejection> {
    let mut r = Replay::new(c.iter().cloned());
    for (i, (s, t)) in cert.steps.iter().enumerate() {
        if !r.faces.contains(s) {
            return Err(reject(i, alloc::format!("{s} is not present")));
        }
        if !r.faces.contains(t) {
            return Err(reject(i, alloc::format!("{t} is not present")));
        }
        if s == t || !s.is_face_of(t) {
            return Err(reject(i, alloc::format!("{s} is not a proper face of {t}")));
        }
        if r.above[s] != 1 {
            return Err(reject(i, alloc::format!("{s} lies in {} other faces", r.above[s])));
        }
        r.drop_face(t);
        r.drop_face(s);
    }
    let n = cert.steps.len();
    let mut declared: BTreeSet<C> = BTreeSet::new();
    for f in &cert.target {
        declared.extend(f.all_faces());
    }
    if declared != r.faces {
        return Err(reject(n, "end state differs from the declared target"));
    }
    if let Some(t) = target {
        if t.faces() != &r.faces {
            return Err(reject(n, "end state differs from the requested target"));
        }
    }
    Ok(())
}

pub fn verify_certificate<C: Cell>(
    c: &CellComplex<C>,
    cert: &CollapseCertificate<C>,
    target: Option<&CellComplex<C>>,
) -> bool {
    check_collapse(c, cert, target).is_ok()
}

fn link_of(faces: &BTreeSet<Simplex>, v: VertexId) -> BTreeSet<Simplex> {
    faces
        .iter()
        .filter(|f| f.contains_vertex(v))
        .filter_map(|f| f.without_vertex(v))
        .collect()
}

fn delete(faces: &mut BTreeSet<Simplex>, v: VertexId) {
    faces.retain(|f| !f.contains_vertex(v));
}

/// Checks a list of deletions and returns the faces that remain.
fn replay_ne_steps(
    mut faces: BTreeSet<Simplex>,
    steps: &[NeStep],
    depth: usize,
) -> Result<BTreeSet<Simplex>, Rejection> {
    for (i, st) in steps.iter().enumerate() {
        if !faces.contains(&Simplex::vertex(st.vertex)) {
            return Err(reject(i, alloc::format!("vertex {} is not present (depth {depth})", st.vertex)));
        }
        let link = link_of(&faces, st.vertex);
        if let Err(e) = replay_ne(link, &st.link, depth + 1) {
            return Err(reject(
                i,
                alloc::format!("link of {} (depth {depth}): {}", st.vertex, e),
            ));
        }
        delete(&mut faces, st.vertex);
    }
    Ok(faces)
}

fn replay_ne(faces: BTreeSet<Simplex>, cert: &NeCertificate, depth: usize) -> Result<(), Rejection> {
    let rest = replay_ne_steps(faces, &cert.steps, depth)?;
    let point: BTreeSet<Simplex> = [Simplex::vertex(cert.point)].into_iter().collect();
    if rest != point {
        return Err(reject(cert.steps.len(), alloc::format!("{} faces remain, not the point {}", rest.len(), cert.point)));
    }
    Ok(())
}

pub fn check_ne(c: &SimplicialComplex, cert: &NeCertificate) -> Result<(), Rejection> {
    replay_ne(c.faces().clone(), cert, 0)
}

pub fn verify_ne(c: &SimplicialComplex, cert: &NeCertificate) -> bool {
    check_ne(c, cert).is_ok()
}

/// Checks the deletions of `C ↘NE C'`.
pub fn check_ne_steps(c: &SimplicialComplex, steps: &[NeStep], end: &SimplicialComplex) -> Result<(), Rejection> {
    let rest = replay_ne_steps(c.faces().clone(), steps, 0)?;
    if &rest != end.faces() {
        return Err(reject(steps.len(), "end state differs from the requested complex"));
    }
    Ok(())
}

pub fn verify_ne_steps(c: &SimplicialComplex, steps: &[NeStep], end: &SimplicialComplex) -> bool {
    check_ne_steps(c, steps, end).is_ok()
}
