use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::incidence::Incidence;
use super::lemmas::conev;
use super::{CollapseCertificate, NeCertificate, NeStep, SearchBudget};
use crate::complex::{Cell, CellComplex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::verify;

/// What a collapse should end at.
#[derive(Clone, Debug)]
pub enum CollapseTarget<C: Cell> {
    /// Any single vertex.
    Point,
    Complex(CellComplex<C>),
}

struct Problem<C: Cell> {
    inc: Incidence<C>,
    protected: Vec<bool>,
    goal: usize,
}

impl<C: Cell> Problem<C> {
    fn new(c: &CellComplex<C>, target: &CollapseTarget<C>) -> Result<Self> {
        let inc = Incidence::from_complex(c);
        let mut protected = alloc::vec![false; inc.len()];
        let goal = match target {
            CollapseTarget::Point => 1,
            CollapseTarget::Complex(t) => {
                for f in t.iter() {
                    let i = inc.index(f).ok_or_else(|| Error::NotSubcomplex(format!("{f} is not a face")))?;
                    protected[i] = true;
                }
                t.len()
            }
        };
        Ok(Problem { inc, protected, goal })
    }

    fn done(&self) -> bool {
        self.inc.live() == self.goal
    }

    fn certificate(&self, steps: &[(usize, usize)]) -> CollapseCertificate<C> {
        CollapseCertificate {
            steps: steps.iter().map(|&(i, j)| (self.inc.elem(i).clone(), self.inc.elem(j).clone())).collect(),
            target: self.inc.to_complex().facets(),
        }
    }
}

fn euler_mismatch<C: Cell>(c: &CellComplex<C>, target: &CollapseTarget<C>) -> bool {
    let want = match target {
        CollapseTarget::Point => 1,
        CollapseTarget::Complex(t) => t.euler_characteristic(),
    };
    c.euler_characteristic() != want
}

fn checked<C: Cell>(
    c: &CellComplex<C>,
    cert: CollapseCertificate<C>,
    target: &CollapseTarget<C>,
) -> Result<CollapseCertificate<C>> {
    let t = match target {
        CollapseTarget::Point => None,
        CollapseTarget::Complex(t) => Some(t),
    };
    verify::check_collapse(c, &cert, t).map_err(|e| Error::VerificationFailed(format!("{e}")))?;
    Ok(cert)
}

/// Greedy collapse, highest-dimensional free faces first, with ties broken
/// by a seeded shuffle. `None` when it gets stuck before the target.
pub fn greedy_collapse<C: Cell>(
    c: &CellComplex<C>,
    target: &CollapseTarget<C>,
    seed: u64,
) -> Result<Option<CollapseCertificate<C>>> {
    let mut p = Problem::new(c, target)?;
    let mut priority: Vec<u64> = (0..p.inc.len() as u64).collect();
    if seed != 0 {
        priority.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let steps = p.inc.greedy(&p.protected, &priority);
    if !p.done() {
        return Ok(None);
    }
    checked(c, p.certificate(&steps), target).map(Some)
}

const GREEDY_RESTARTS: u64 = 8;

/// Searches for a collapsing sequence from `c` to `target`.
///
/// Tries a few greedy passes, then backtracks over free pairs with failed
/// states memoized. Exhausting the tree gives [`Error::ProvedImpossible`];
/// running out of nodes gives [`Error::BudgetExceeded`].
pub fn collapse_search<C: Cell>(
    c: &CellComplex<C>,
    target: &CollapseTarget<C>,
    budget: SearchBudget,
) -> Result<CollapseCertificate<C>> {
    if c.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut p = Problem::new(c, target)?;
    if euler_mismatch(c, target) {
        return Err(Error::ProvedImpossible);
    }
    if p.done() {
        return checked(c, p.certificate(&[]), target);
    }
    if p.inc.free_pairs(&p.protected).is_empty() {
        return Err(Error::ProvedImpossible);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for round in 0..GREEDY_RESTARTS {
        let seed = if round == 0 { 0 } else { rng.gen::<u64>() | 1 };
        if let Some(cert) = greedy_collapse(c, target, seed)? {
            return Ok(cert);
        }
    }

    let mut failed: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut nodes = 0usize;
    let mut path: Vec<(usize, usize)> = Vec::new();
    // Each frame holds the free pairs still to try at that depth.
    let mut stack: Vec<Vec<(usize, usize)>> = alloc::vec![options(&p)];
    loop {
        let Some(top) = stack.last_mut() else {
            return Err(Error::ProvedImpossible);
        };
        match top.pop() {
            Some((i, j)) => {
                p.inc.collapse(i, j);
                path.push((i, j));
                if p.done() {
                    let cert = p.certificate(&path);
                    return checked(c, cert, target);
                }
                let key = p.inc.alive_bits();
                if failed.contains(&key) {
                    p.inc.uncollapse(i, j);
                    path.pop();
                    continue;
                }
                nodes += 1;
                if nodes > budget.max_nodes {
                    return Err(Error::BudgetExceeded(budget.max_nodes));
                }
                stack.push(options(&p));
            }
            None => {
                stack.pop();
                failed.insert(p.inc.alive_bits());
                if let Some((i, j)) = path.pop() {
                    p.inc.uncollapse(i, j);
                }
            }
        }
    }
}

fn options<C: Cell>(p: &Problem<C>) -> Vec<(usize, usize)> {
    let mut v = p.inc.free_pairs(&p.protected);
    // popped from the back: highest dimension first
    v.reverse();
    v
}

type Memo = BTreeMap<Vec<Vec<VertexId>>, Option<NeCertificate>>;

pub(crate) fn relabel_ne(cert: &NeCertificate, f: &dyn Fn(VertexId) -> VertexId) -> NeCertificate {
    NeCertificate {
        steps: cert.steps.iter().map(|s| NeStep { vertex: f(s.vertex), link: relabel_ne(&s.link, f) }).collect(),
        point: f(cert.point),
    }
}

/// Non-evasiveness certificate for a tree, peeling leaves.
fn tree_certificate(k: &SimplicialComplex) -> NeCertificate {
    let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> = k.vertices().into_iter().map(|v| (v, BTreeSet::new())).collect();
    for f in k.iter().filter(|f| f.len() == 2) {
        let (a, b) = (f.vertices()[0], f.vertices()[1]);
        adj.get_mut(&a).unwrap().insert(b);
        adj.get_mut(&b).unwrap().insert(a);
    }
    let mut steps = Vec::new();
    while adj.len() > 1 {
        let (&leaf, nb) = adj.iter().find(|(_, n)| n.len() == 1).expect("a tree has leaves");
        let parent = *nb.iter().next().unwrap();
        steps.push(NeStep { vertex: leaf, link: NeCertificate::point(parent) });
        adj.remove(&leaf);
        adj.get_mut(&parent).unwrap().remove(&leaf);
    }
    NeCertificate { steps, point: *adj.keys().next().unwrap() }
}

struct NeSearch {
    memo: Memo,
    nodes: usize,
    max_nodes: usize,
}

impl NeSearch {
    fn run(&mut self, k: &SimplicialComplex) -> Result<Option<NeCertificate>> {
        let verts = k.vertices();
        match verts.len() {
            0 => return Ok(None),
            1 => return Ok(Some(NeCertificate::point(verts[0]))),
            _ => {}
        }
        if k.euler_characteristic() != 1 {
            return Ok(None);
        }
        if k.dim() == Some(1) {
            // connected with χ = 1
            return Ok(Some(tree_certificate(k)));
        }
        if let Some(a) = k.cone_apex() {
            return conev(k, a).map(Some);
        }
        let key = k.canonical_key();
        let back = |i: VertexId| verts[i as usize];
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.as_ref().map(|c| relabel_ne(c, &back)));
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::BudgetExceeded(self.max_nodes));
        }
        let mut order: Vec<(usize, VertexId, SimplicialComplex)> = Vec::new();
        for &v in &verts {
            let l = k.vertex_link(v)?;
            if l.euler_characteristic() != 1 {
                continue;
            }
            let rank = if l.is_cone() { 0 } else { l.len() };
            order.push((rank, v, l));
        }
        order.sort_by_key(|(r, v, _)| (*r, *v));
        let mut found = None;
        for (_, v, l) in order {
            let Some(lc) = self.run(&l)? else { continue };
            let rest = k.delete_vertex(v);
            if let Some(mut rc) = self.run(&rest)? {
                rc.steps.insert(0, NeStep { vertex: v, link: lc });
                found = Some(rc);
                break;
            }
        }
        let index: BTreeMap<VertexId, VertexId> = verts.iter().enumerate().map(|(i, &v)| (v, i as VertexId)).collect();
        self.memo.insert(key, found.as_ref().map(|c| relabel_ne(c, &|v| index[&v])));
        Ok(found)
    }
}

/// Searches for a non-evasiveness certificate. [`Error::ProvedEvasive`] when
/// every deletion order fails.
pub fn is_non_evasive(c: &SimplicialComplex, budget: SearchBudget) -> Result<NeCertificate> {
    if c.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut s = NeSearch { memo: Memo::new(), nodes: 0, max_nodes: budget.max_nodes };
    match s.run(c)? {
        Some(cert) => {
            verify::check_ne(c, &cert).map_err(|e| Error::VerificationFailed(format!("{e}")))?;
            Ok(cert)
        }
        None => Err(Error::ProvedEvasive),
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    #[test]
    fn tetrahedron_collapses_to_a_point() {
        let t = SimplicialComplex::simplex_on([0, 1, 2, 3]);
        let cert = collapse_search(&t, &CollapseTarget::Point, budget()).unwrap();
        assert_eq!(cert.target.len(), 1);
        assert_eq!(cert.steps.len(), 7);
    }

    #[test]
    fn sphere_is_impossible_and_evasive() {
        for d in 1..=3u32 {
            let s = SimplicialComplex::simplex_on(0..=d).boundary().unwrap();
            assert_eq!(collapse_search(&s, &CollapseTarget::Point, budget()), Err(Error::ProvedImpossible));
            assert_eq!(is_non_evasive(&s, budget()), Err(Error::ProvedEvasive));
        }
    }

    #[test]
    fn collapse_onto_a_subcomplex() {
        let t = SimplicialComplex::simplex_on([0, 1, 2]);
        let path = SimplicialComplex::from_vertex_lists([[0, 1], [1, 2]]).unwrap();
        let cert = collapse_search(&t, &CollapseTarget::Complex(path.clone()), budget()).unwrap();
        assert_eq!(cert.target_complex(), path);
        let bad = SimplicialComplex::from_vertex_lists([[0], [2]]).unwrap();
        assert_eq!(
            collapse_search(&t, &CollapseTarget::Complex(bad), budget()),
            Err(Error::ProvedImpossible)
        );
    }

    #[test]
    fn backtracking_finds_what_greedy_might_miss() {
        // a triangle with a dangling edge and a hollow square attached
        let c = SimplicialComplex::from_vertex_lists(alloc::vec![
            alloc::vec![0, 1, 2],
            alloc::vec![2, 3],
        ])
        .unwrap();
        let cert = collapse_search(&c, &CollapseTarget::Point, SearchBudget::new(1000, 3)).unwrap();
        assert!(verify::verify_certificate(&c, &cert, None));
    }

    #[test]
    fn ne_search_on_small_examples() {
        let path = SimplicialComplex::from_vertex_lists([[0, 1], [1, 2], [2, 3]]).unwrap();
        let cert = is_non_evasive(&path, budget()).unwrap();
        assert_eq!(cert.steps.len(), 3);
        let cone = SimplicialComplex::simplex_on([0, 1, 2]).boundary().unwrap().cone(9).unwrap();
        assert_eq!(is_non_evasive(&cone, budget()).unwrap().point, 9);
        let two = SimplicialComplex::from_vertex_lists([[0], [1]]).unwrap();
        assert_eq!(is_non_evasive(&two, budget()), Err(Error::ProvedEvasive));
    }

    #[test]
    fn ne_search_uses_non_cone_links() {
        // a triangulated hexagon strip: not a cone, but non-evasive
        let c = SimplicialComplex::from_vertex_lists([[0, 1, 2], [1, 2, 3], [2, 3, 4], [3, 4, 5]]).unwrap();
        assert!(!c.is_cone());
        let cert = is_non_evasive(&c, budget()).unwrap();
        assert!(verify::verify_ne(&c, &cert));
    }
}
