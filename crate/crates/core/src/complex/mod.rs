//! Face-closed cell complexes: simplicial complexes over integer vertex ids
//! and cubical complexes of unit integer boxes.

mod cube;
mod simplex;
mod simplicial;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

pub use cube::Cube;
pub use simplex::Simplex;

use crate::error::{Error, Result};

pub type VertexId = u32;

/// A closed cell whose faces can be enumerated from the cell alone.
pub trait Cell: Clone + Ord + fmt::Debug + fmt::Display {
    fn dim(&self) -> usize;
    /// Codimension-one faces.
    fn boundary(&self) -> Vec<Self>;
    /// Non-strict face relation.
    fn is_face_of(&self, other: &Self) -> bool;
    /// Every nonempty face, the cell itself included.
    fn all_faces(&self) -> Vec<Self>;
    fn vertex_cells(&self) -> Vec<Self>;
}

/// An immutable downward-closed set of cells.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellComplex<C: Cell> {
    faces: BTreeSet<C>,
}

pub type SimplicialComplex = CellComplex<Simplex>;
pub type CubicalComplex = CellComplex<Cube>;

impl<C: Cell> Default for CellComplex<C> {
    fn default() -> Self {
        Self::empty()
    }
}

impl<C: Cell> CellComplex<C> {
    pub fn empty() -> Self {
        CellComplex {
            faces: BTreeSet::new(),
        }
    }

    /// Downward closure of a facet list.
    pub fn from_facets<I: IntoIterator<Item = C>>(facets: I) -> Result<Self> {
        let mut faces = BTreeSet::new();
        for f in facets {
            for g in f.all_faces() {
                faces.insert(g);
            }
        }
        if faces.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(CellComplex { faces })
    }

    /// Downward closure of an arbitrary cell collection, empty allowed.
    pub fn closure<I: IntoIterator<Item = C>>(cells: I) -> Self {
        let mut faces = BTreeSet::new();
        for f in cells {
            if faces.contains(&f) {
                continue;
            }
            for g in f.all_faces() {
                faces.insert(g);
            }
        }
        CellComplex { faces }
    }

    /// Wraps a face set that the caller knows to be closed.
    pub fn from_closed_set(faces: BTreeSet<C>) -> Self {
        debug_assert!(faces
            .iter()
            .all(|f| f.boundary().iter().all(|g| faces.contains(g))));
        CellComplex { faces }
    }

    pub fn faces(&self) -> &BTreeSet<C> {
        &self.faces
    }

    pub fn into_faces(self) -> BTreeSet<C> {
        self.faces
    }

    pub fn iter(&self) -> impl Iterator<Item = &C> {
        self.faces.iter()
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, c: &C) -> bool {
        self.faces.contains(c)
    }

    /// `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.faces.iter().map(|f| f.dim()).max()
    }

    /// Inclusion-maximal faces, sorted.
    pub fn facets(&self) -> Vec<C> {
        let mut covered: BTreeSet<&C> = BTreeSet::new();
        let mut bd_cache = Vec::new();
        for f in &self.faces {
            bd_cache.push(f.boundary());
        }
        for b in &bd_cache {
            for g in b {
                if let Some(r) = self.faces.get(g) {
                    covered.insert(r);
                }
            }
        }
        self.faces
            .iter()
            .filter(|f| !covered.contains(f))
            .cloned()
            .collect()
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets().iter().all(|f| Some(f.dim()) == d)
    }

    /// Face numbers `(f_0, ..., f_dim)`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for f in &self.faces {
            let d = f.dim();
            if out.len() <= d {
                out.resize(d + 1, 0);
            }
            out[d] += 1;
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn vertex_cells(&self) -> Vec<C> {
        self.faces.iter().filter(|f| f.dim() == 0).cloned().collect()
    }

    fn require(&self, c: &C) -> Result<()> {
        if self.faces.contains(c) {
            Ok(())
        } else {
            Err(Error::FaceNotInComplex(format!("{}", c)))
        }
    }

    /// Smallest subcomplex containing every face that contains `sigma`.
    pub fn star(&self, sigma: &C) -> Result<Self> {
        self.require(sigma)?;
        Ok(Self::closure(
            self.faces.iter().filter(|f| sigma.is_face_of(f)).cloned(),
        ))
    }

    /// Removes the open star of `sigma`: all faces having `sigma` as a face.
    pub fn delete_face(&self, sigma: &C) -> Result<Self> {
        self.require(sigma)?;
        Ok(CellComplex {
            faces: self
                .faces
                .iter()
                .filter(|f| !sigma.is_face_of(f))
                .cloned()
                .collect(),
        })
    }

    /// `C - D`: faces of `C` meeting no relative interior of a face of `D`,
    /// i.e. faces containing no vertex of `D`.
    pub fn deletion(&self, d: &Self) -> Result<Self> {
        if !d.is_subcomplex_of(self) {
            return Err(Error::FaceNotInComplex(
                "deleted complex is not a subcomplex".into(),
            ));
        }
        let dv: BTreeSet<C> = d.vertex_cells().into_iter().collect();
        Ok(CellComplex {
            faces: self
                .faces
                .iter()
                .filter(|f| f.vertex_cells().iter().all(|v| !dv.contains(v)))
                .cloned()
                .collect(),
        })
    }

    /// `R(C, A)` for a set `A` given through a predicate on vertices: the
    /// largest subcomplex all of whose vertices satisfy `keep`.
    pub fn restrict_vertices<F: FnMut(&C) -> bool>(&self, mut keep: F) -> Self {
        let ok: BTreeSet<C> = self
            .vertex_cells()
            .into_iter()
            .filter(|v| keep(v))
            .collect();
        CellComplex {
            faces: self
                .faces
                .iter()
                .filter(|f| f.vertex_cells().iter().all(|v| ok.contains(v)))
                .cloned()
                .collect(),
        }
    }

    /// Faces satisfying a predicate that is closed under taking faces.
    pub fn filter_closed<F: FnMut(&C) -> bool>(&self, mut keep: F) -> Self {
        let faces: BTreeSet<C> = self.faces.iter().filter(|f| keep(*f)).cloned().collect();
        Self::from_closed_set(faces)
    }

    pub fn is_subcomplex_of(&self, other: &Self) -> bool {
        self.faces.is_subset(&other.faces)
    }

    pub fn union(&self, other: &Self) -> Self {
        CellComplex {
            faces: self.faces.union(&other.faces).cloned().collect(),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        CellComplex {
            faces: self.faces.intersection(&other.faces).cloned().collect(),
        }
    }

    /// Number of codimension-one cofaces of every face.
    pub fn coface_counts(&self) -> BTreeMap<&C, usize> {
        let mut counts: BTreeMap<&C, usize> = self.faces.iter().map(|f| (f, 0)).collect();
        for f in &self.faces {
            for g in f.boundary() {
                if let Some(r) = self.faces.get(&g) {
                    *counts.get_mut(r).expect("closed") += 1;
                }
            }
        }
        counts
    }

    /// Codimension-one cofaces of `sigma`.
    pub fn cofaces(&self, sigma: &C) -> Vec<C> {
        let d = sigma.dim() + 1;
        self.faces
            .iter()
            .filter(|f| f.dim() == d && sigma.is_face_of(f))
            .cloned()
            .collect()
    }

    /// All free pairs `(face, unique coface)`, sorted by the free face.
    pub fn free_pairs(&self) -> Vec<(C, C)> {
        let mut up: BTreeMap<&C, Vec<&C>> = BTreeMap::new();
        for f in &self.faces {
            for g in f.boundary() {
                if let Some(r) = self.faces.get(&g) {
                    up.entry(r).or_default().push(f);
                }
            }
        }
        let mut out = Vec::new();
        for (f, cof) in &up {
            if cof.len() == 1 && !up.contains_key(cof[0]) {
                out.push(((*f).clone(), cof[0].clone()));
            }
        }
        out
    }

    /// Faces contained in exactly one other face.
    pub fn free_faces(&self) -> BTreeSet<C> {
        self.free_pairs().into_iter().map(|(f, _)| f).collect()
    }

    /// Deletes a free face together with its unique coface.
    pub fn elementary_collapse(&self, sigma: &C) -> Result<Self> {
        self.require(sigma)?;
        let cof = self.cofaces(sigma);
        if cof.len() != 1 || !self.cofaces(&cof[0]).is_empty() {
            return Err(Error::NotFree(format!("{}", sigma)));
        }
        let mut faces = self.faces.clone();
        faces.remove(sigma);
        faces.remove(&cof[0]);
        Ok(CellComplex { faces })
    }

    /// Pure complex boundary: closure of ridges lying in exactly one facet.
    pub fn boundary(&self) -> Result<Self> {
        let Some(d) = self.dim() else {
            return Ok(Self::empty());
        };
        let facets = self.facets();
        if facets.iter().any(|f| f.dim() != d) {
            return Err(Error::NotPseudomanifold("complex is not pure".into()));
        }
        if d == 0 {
            return Ok(Self::empty());
        }
        let mut count: BTreeMap<C, usize> = BTreeMap::new();
        for f in &facets {
            for r in f.boundary() {
                *count.entry(r).or_default() += 1;
            }
        }
        if let Some((r, _)) = count.iter().find(|(_, &n)| n > 2) {
            return Err(Error::NotPseudomanifold(format!(
                "ridge {} lies in more than two facets",
                r
            )));
        }
        Ok(Self::closure(
            count.into_iter().filter(|(_, n)| *n == 1).map(|(r, _)| r),
        ))
    }
}

impl<C: Cell> fmt::Debug for CellComplex<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.facets()).finish()
    }
}

impl<C: Cell> FromIterator<C> for CellComplex<C> {
    fn from_iter<T: IntoIterator<Item = C>>(iter: T) -> Self {
        Self::closure(iter)
    }
}
