use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use super::{CellComplex, Simplex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};

impl CellComplex<Simplex> {
    /// Builds a complex from facet vertex lists.
    pub fn from_vertex_lists<I, J>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = VertexId>,
    {
        let mut fs = Vec::new();
        for f in facets {
            match Simplex::try_new(f) {
                Some(s) => fs.push(s),
                None => return Err(Error::EmptyInput),
            }
        }
        Self::from_facets(fs)
    }

    /// Sorted vertex ids.
    pub fn vertices(&self) -> Vec<VertexId> {
        self.faces()
            .iter()
            .filter(|f| f.len() == 1)
            .map(|f| f.vertices()[0])
            .collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.faces().iter().filter(|f| f.len() == 1).count()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.contains(&Simplex::vertex(v))
    }

    /// Lk(σ, C); `None` stands for the empty face, whose link is C.
    pub fn link(&self, sigma: Option<&Simplex>) -> Result<Self> {
        let Some(sigma) = sigma else {
            return Ok(self.clone());
        };
        if !self.contains(sigma) {
            return Err(Error::FaceNotInComplex(format!("{}", sigma)));
        }
        let mut faces = BTreeSet::new();
        for f in self.faces() {
            if f.len() > sigma.len() && sigma.is_subset(f) {
                if let Some(d) = f.difference(sigma) {
                    faces.insert(d);
                }
            }
        }
        Ok(Self::from_closed_set(faces))
    }

    pub fn vertex_link(&self, v: VertexId) -> Result<Self> {
        self.link(Some(&Simplex::vertex(v)))
    }

    /// C − v: all faces avoiding v.
    pub fn delete_vertex(&self, v: VertexId) -> Self {
        Self::from_closed_set(
            self.faces()
                .iter()
                .filter(|f| !f.contains_vertex(v))
                .cloned()
                .collect(),
        )
    }

    /// Faces whose vertices all lie in `keep`.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Self {
        Self::from_closed_set(
            self.faces()
                .iter()
                .filter(|f| f.vertices().iter().all(|v| keep.contains(v)))
                .cloned()
                .collect(),
        )
    }

    /// The join C ∗ D of complexes on disjoint vertex sets.
    pub fn join(&self, other: &Self) -> Result<Self> {
        let a: BTreeSet<VertexId> = self.vertices().into_iter().collect();
        if let Some(v) = other.vertices().into_iter().find(|v| a.contains(v)) {
            return Err(Error::VertexClash(format!("vertex {}", v)));
        }
        let mut faces: BTreeSet<Simplex> = self.faces().clone();
        faces.extend(other.faces().iter().cloned());
        for f in self.faces() {
            for g in other.faces() {
                faces.insert(f.union(g));
            }
        }
        Ok(Self::from_closed_set(faces))
    }

    /// v ∗ C.
    pub fn cone(&self, v: VertexId) -> Result<Self> {
        if self.has_vertex(v) {
            return Err(Error::VertexClash(format!("vertex {}", v)));
        }
        let mut faces: BTreeSet<Simplex> = self.faces().clone();
        faces.insert(Simplex::vertex(v));
        for f in self.faces() {
            faces.insert(f.with_vertex(v));
        }
        Ok(Self::from_closed_set(faces))
    }

    /// A vertex contained in every facet, if any (smallest id first).
    pub fn cone_apex(&self) -> Option<VertexId> {
        let facets = self.facets();
        let first = facets.first()?;
        first
            .vertices()
            .iter()
            .copied()
            .find(|&v| facets.iter().all(|f| f.contains_vertex(v)))
    }

    pub fn is_cone(&self) -> bool {
        self.cone_apex().is_some()
    }

    /// Relabels every vertex through `f`, which must be injective on the vertex set.
    pub fn relabel<F: FnMut(VertexId) -> VertexId>(&self, mut f: F) -> Self {
        Self::from_closed_set(self.faces().iter().map(|s| s.map(&mut f)).collect())
    }

    /// Facet list with vertices renumbered 0.. in increasing id order, sorted.
    /// Isomorphic complexes may have different keys; equal keys mean
    /// isomorphic complexes.
    pub fn canonical_key(&self) -> Vec<Vec<VertexId>> {
        let index: BTreeMap<VertexId, VertexId> = self
            .vertices()
            .into_iter()
            .enumerate()
            .map(|(i, v)| (v, i as VertexId))
            .collect();
        let mut key: Vec<Vec<VertexId>> = self
            .facets()
            .iter()
            .map(|f| f.vertices().iter().map(|v| index[v]).collect())
            .collect();
        key.sort();
        key
    }

    /// For each vertex, the faces containing it.
    pub fn vertex_faces(&self) -> BTreeMap<VertexId, Vec<Simplex>> {
        let mut out: BTreeMap<VertexId, Vec<Simplex>> = BTreeMap::new();
        for f in self.faces() {
            for &v in f.vertices() {
                out.entry(v).or_default().push(f.clone());
            }
        }
        out
    }

    /// True when every ridge lies in at most two facets and the complex is pure.
    pub fn is_pseudomanifold(&self) -> bool {
        self.boundary().is_ok()
    }

    pub fn facet_lists(&self) -> Vec<Vec<VertexId>> {
        self.facets().iter().map(|f| f.vertices().to_vec()).collect()
    }
}

impl SimplicialComplex {
    /// The full simplex on the given vertices.
    pub fn simplex_on<I: IntoIterator<Item = VertexId>>(vertices: I) -> Self {
        Self::closure([Simplex::new(vertices)])
    }
}
