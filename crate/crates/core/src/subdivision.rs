//! Derived subdivisions with carrier maps, derived orders and derived
//! neighborhoods.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::complex::{Cell, Simplex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::geometry::{linalg, GeometricComplex, Halfspace, Point};

/// A derived subdivision. Vertex `i` of `complex` stands for the parent face
/// `carrier[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedComplex {
    pub complex: SimplicialComplex,
    carrier: BTreeMap<VertexId, Simplex>,
    index: BTreeMap<Simplex, VertexId>,
    /// Smallest face of the original (undivided) complex containing each vertex.
    base: BTreeMap<VertexId, Simplex>,
    positions: Option<BTreeMap<VertexId, Point>>,
}

impl DerivedComplex {
    /// Parent face subdivided by vertex `v`.
    pub fn carrier(&self, v: VertexId) -> &Simplex {
        &self.carrier[&v]
    }

    pub fn carriers(&self) -> &BTreeMap<VertexId, Simplex> {
        &self.carrier
    }

    /// The vertex subdividing parent face `s`.
    pub fn vertex_of(&self, s: &Simplex) -> Option<VertexId> {
        self.index.get(s).copied()
    }

    /// Carrier in the original complex, composed through every level.
    pub fn base_carrier(&self, v: VertexId) -> &Simplex {
        &self.base[&v]
    }

    /// Smallest original face containing a face of the subdivision.
    pub fn base_carrier_of_face(&self, f: &Simplex) -> Simplex {
        let mut out = self.base[&f.vertices()[0]].clone();
        for v in &f.vertices()[1..] {
            out = out.union(&self.base[v]);
        }
        out
    }

    /// The chain of parent faces making up a face of the subdivision, by size.
    pub fn chain(&self, f: &Simplex) -> Vec<Simplex> {
        let mut c: Vec<Simplex> = f.vertices().iter().map(|v| self.carrier[v].clone()).collect();
        c.sort_by_key(|s| s.len());
        c
    }

    pub fn positions(&self) -> Option<&BTreeMap<VertexId, Point>> {
        self.positions.as_ref()
    }

    pub fn geometric(&self) -> Option<GeometricComplex> {
        let p = self.positions.as_ref()?;
        GeometricComplex::new(self.complex.clone(), p.clone()).ok()
    }

    /// The subdivided copy of a subcomplex of the parent.
    pub fn subdivide_subcomplex(&self, sub: &SimplicialComplex) -> Result<SimplicialComplex> {
        let mut keep = BTreeSet::new();
        for f in sub.faces() {
            match self.index.get(f) {
                Some(v) => {
                    keep.insert(*v);
                }
                None => return Err(Error::NotSubcomplex(format!("{}", f))),
            }
        }
        Ok(self.complex.induced(&keep))
    }
}

/// Order complex of a family of vertex sets ordered by inclusion. Vertex ids
/// follow the (size, lexicographic) order of the family.
pub fn order_complex(elements: &BTreeSet<Simplex>) -> (SimplicialComplex, Vec<Simplex>) {
    let mut elems: Vec<Simplex> = elements.iter().cloned().collect();
    elems.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    // Upward covers.
    let mut up: Vec<Vec<usize>> = alloc::vec![Vec::new(); elems.len()];
    for (j, y) in elems.iter().enumerate() {
        let below: Vec<usize> = (0..j).filter(|&i| elems[i].len() < y.len() && elems[i].is_subset(y)).collect();
        for &i in &below {
            let covered = below
                .iter()
                .any(|&k| k != i && elems[k].len() > elems[i].len() && elems[i].is_subset(&elems[k]));
            if !covered {
                up[i].push(j);
            }
        }
    }
    let mut has_down = alloc::vec![false; elems.len()];
    for u in &up {
        for &j in u {
            has_down[j] = true;
        }
    }
    let mut facets = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..elems.len()).filter(|&i| !has_down[i]).map(|i| alloc::vec![i]).collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().expect("chains are nonempty");
        if up[last].is_empty() {
            facets.push(Simplex::new(chain.iter().map(|&i| i as VertexId)));
        } else {
            for &n in &up[last] {
                let mut c = chain.clone();
                c.push(n);
                stack.push(c);
            }
        }
    }
    (SimplicialComplex::closure(facets), elems)
}

/// Maximal chains of a simplicial complex, from permutations of its facets.
fn simplicial_chains(c: &SimplicialComplex, id: &BTreeMap<Simplex, VertexId>) -> Vec<Simplex> {
    let mut out = Vec::new();
    for f in c.facets() {
        let vs = f.vertices().to_vec();
        let mut perm: Vec<usize> = (0..vs.len()).collect();
        loop {
            let mut chain = Vec::with_capacity(vs.len());
            let mut cur: Vec<VertexId> = Vec::new();
            for &k in &perm {
                cur.push(vs[k]);
                chain.push(id[&Simplex::new(cur.iter().copied())]);
            }
            out.push(Simplex::new(chain));
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    out
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn build(c: &SimplicialComplex, base: Option<&DerivedComplex>, positions: Option<BTreeMap<Simplex, Point>>) -> DerivedComplex {
    let mut faces: Vec<Simplex> = c.faces().iter().cloned().collect();
    faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let index: BTreeMap<Simplex, VertexId> = faces.iter().enumerate().map(|(i, s)| (s.clone(), i as VertexId)).collect();
    let carrier: BTreeMap<VertexId, Simplex> = faces.iter().enumerate().map(|(i, s)| (i as VertexId, s.clone())).collect();
    let complex = SimplicialComplex::closure(simplicial_chains(c, &index));
    let base = carrier
        .iter()
        .map(|(v, s)| {
            let b = match base {
                Some(prev) => prev.base_carrier_of_face(s),
                None => s.clone(),
            };
            (*v, b)
        })
        .collect();
    let positions = positions.map(|p| p.into_iter().map(|(s, x)| (index[&s], x)).collect());
    DerivedComplex {
        complex,
        carrier,
        index,
        base,
        positions,
    }
}

/// Barycentric subdivision of a complex.
pub fn sd(c: &SimplicialComplex) -> DerivedComplex {
    build(c, None, None)
}

/// Barycentric subdivision realized with barycenters.
pub fn sd_geometric(g: &GeometricComplex) -> DerivedComplex {
    let pos = g.complex.faces().iter().map(|s| (s.clone(), g.barycenter(s))).collect();
    build(&g.complex, None, Some(pos))
}

/// Barycentric subdivision of a derived complex; base carriers compose.
pub fn sd_derived(d: &DerivedComplex) -> DerivedComplex {
    let pos = d.positions.as_ref().map(|p| {
        d.complex
            .faces()
            .iter()
            .map(|s| {
                let pts: Vec<&Point> = s.vertices().iter().map(|v| &p[v]).collect();
                (s.clone(), linalg::centroid(pts))
            })
            .collect()
    });
    build(&d.complex, Some(d), pos)
}

/// The identity "subdivision": every vertex carries itself.
pub fn sd0(c: &SimplicialComplex, positions: Option<&BTreeMap<VertexId, Point>>) -> DerivedComplex {
    let carrier: BTreeMap<VertexId, Simplex> = c.vertices().into_iter().map(|v| (v, Simplex::vertex(v))).collect();
    let index = carrier.iter().map(|(v, s)| (s.clone(), *v)).collect();
    DerivedComplex {
        complex: c.clone(),
        base: carrier.clone(),
        carrier,
        index,
        positions: positions.cloned(),
    }
}

/// `m`-fold iterated subdivision with base carriers in `c`.
pub fn sd_m(c: &SimplicialComplex, m: usize) -> DerivedComplex {
    let mut d = sd0(c, None);
    for _ in 0..m {
        d = sd_derived(&d);
    }
    d
}

pub fn sd_m_geometric(g: &GeometricComplex, m: usize) -> DerivedComplex {
    let mut d = sd0(&g.complex, Some(g.positions()));
    for _ in 0..m {
        d = sd_derived(&d);
    }
    d
}

/// Derived subdivision placing the vertex of every face that crosses the
/// boundary hyperplane of `h` on that hyperplane.
pub fn h_splitting_sd(g: &GeometricComplex, h: &Halfspace) -> Result<DerivedComplex> {
    for (v, p) in g.positions() {
        if h.side(p) == 0 {
            return Err(Error::NonGenericHyperplane(format!("vertex {} lies on it", v)));
        }
    }
    let mut pos = BTreeMap::new();
    for s in g.complex.faces() {
        let vs = s.vertices();
        let mut cuts: Vec<Point> = Vec::new();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let (a, b) = (g.position(vs[i]), g.position(vs[j]));
                if h.side(a) != h.side(b) {
                    cuts.push(h.crossing(a, b).expect("sides differ"));
                }
            }
        }
        let x = if cuts.is_empty() {
            g.barycenter(s)
        } else {
            linalg::centroid(cuts.iter())
        };
        pos.insert(s.clone(), x);
    }
    Ok(build(&g.complex, None, Some(pos)))
}

/// A linear extension of the derived order induced by `seed`, listed from
/// smallest to largest. Faces of `c` are the nodes; ties are broken by
/// (dimension, lexicographic) order.
///
/// A seeded face that is the smallest seeded face of its own closure comes
/// before all of its strict faces.
pub fn derived_order(c: &SimplicialComplex, seed: &[Simplex]) -> Result<Vec<Simplex>> {
    let rank: BTreeMap<&Simplex, usize> = seed.iter().enumerate().map(|(i, s)| (s, i)).collect();
    for s in seed {
        if !c.contains(s) {
            return Err(Error::FaceNotInComplex(format!("{}", s)));
        }
    }
    if rank.len() != seed.len() {
        return Err(Error::CyclicRelation("seed order repeats a face".into()));
    }
    let mut nodes: Vec<Simplex> = c.faces().iter().cloned().collect();
    nodes.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let id: BTreeMap<&Simplex, usize> = nodes.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let n = nodes.len();
    let mut succ: Vec<BTreeSet<usize>> = alloc::vec![BTreeSet::new(); n];
    for w in seed.windows(2) {
        succ[id[&w[0]]].insert(id[&w[1]]);
    }
    for (si, s) in nodes.iter().enumerate() {
        let faces = s.all_faces();
        let min = faces.iter().filter(|t| rank.contains_key(t)).min_by_key(|t| rank[t]);
        for t in faces.iter().filter(|t| *t != s) {
            let ti = id[t];
            if Some(t) == min {
                succ[ti].insert(si);
            } else {
                succ[si].insert(ti);
            }
        }
    }
    let mut indeg = alloc::vec![0usize; n];
    for s in &succ {
        for &t in s {
            indeg[t] += 1;
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut out = Vec::with_capacity(n);
    while let Some(i) = ready.pop_first() {
        out.push(nodes[i].clone());
        for &t in &succ[i] {
            indeg[t] -= 1;
            if indeg[t] == 0 {
                ready.insert(t);
            }
        }
    }
    if out.len() != n {
        let stuck = (0..n).find(|&i| indeg[i] > 0).expect("some node is on a cycle");
        return Err(Error::CyclicRelation(format!("{}", nodes[stuck])));
    }
    Ok(out)
}

/// N(D, C): the union of the stars in sd C of the faces of sd D.
pub fn derived_neighborhood(sdc: &DerivedComplex, d: &SimplicialComplex) -> Result<SimplicialComplex> {
    let mut marks = BTreeSet::new();
    for f in d.faces() {
        match sdc.vertex_of(f) {
            Some(v) => {
                marks.insert(v);
            }
            None => return Err(Error::NotSubcomplex(format!("{}", f))),
        }
    }
    Ok(SimplicialComplex::closure(
        sdc.complex
            .facets()
            .into_iter()
            .filter(|f| f.vertices().iter().any(|v| marks.contains(v))),
    ))
}
