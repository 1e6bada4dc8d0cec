use alloc::vec::Vec;
use core::fmt;

use smallvec::SmallVec;

use super::{Cell, VertexId};

/// A nonempty simplex, stored as its strictly increasing vertex list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(SmallVec<[VertexId; 4]>);

impl Simplex {
    /// Builds a simplex from arbitrary vertex ids; duplicates are removed.
    ///
    /// Panics on an empty vertex list, since the empty face is never stored.
    pub fn new<I: IntoIterator<Item = VertexId>>(vertices: I) -> Self {
        let mut v: SmallVec<[VertexId; 4]> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        assert!(!v.is_empty(), "a simplex needs at least one vertex");
        Simplex(v)
    }

    /// Like [`Simplex::new`] but returns `None` for an empty vertex list.
    pub fn try_new<I: IntoIterator<Item = VertexId>>(vertices: I) -> Option<Self> {
        let mut v: SmallVec<[VertexId; 4]> = vertices.into_iter().collect();
        if v.is_empty() {
            return None;
        }
        v.sort_unstable();
        v.dedup();
        Some(Simplex(v))
    }

    pub fn vertex(v: VertexId) -> Self {
        Simplex(smallvec::smallvec![v])
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Simplex) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut j = 0;
        for &a in self.0.iter() {
            while j < other.0.len() && other.0[j] < a {
                j += 1;
            }
            if j == other.0.len() || other.0[j] != a {
                return false;
            }
            j += 1;
        }
        true
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.contains_vertex(*v))
    }

    /// Vertex-set union (the join when the result is a face).
    pub fn union(&self, other: &Simplex) -> Simplex {
        Simplex::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn with_vertex(&self, v: VertexId) -> Simplex {
        let mut out = self.0.clone();
        if let Err(pos) = out.binary_search(&v) {
            out.insert(pos, v);
        }
        Simplex(out)
    }

    /// The face spanned by the remaining vertices, or `None` when nothing remains.
    pub fn without_vertex(&self, v: VertexId) -> Option<Simplex> {
        let out: SmallVec<[VertexId; 4]> = self.0.iter().copied().filter(|&u| u != v).collect();
        if out.is_empty() {
            None
        } else {
            Some(Simplex(out))
        }
    }

    /// Vertices of `self` not in `other`, if any.
    pub fn difference(&self, other: &Simplex) -> Option<Simplex> {
        Simplex::try_new(self.0.iter().copied().filter(|v| !other.contains_vertex(*v)))
    }

    pub fn intersection(&self, other: &Simplex) -> Option<Simplex> {
        Simplex::try_new(self.0.iter().copied().filter(|v| other.contains_vertex(*v)))
    }

    /// Relabels vertices through `f`.
    pub fn map<F: FnMut(VertexId) -> VertexId>(&self, f: F) -> Simplex {
        Simplex::new(self.0.iter().copied().map(f))
    }
}

impl Cell for Simplex {
    fn dim(&self) -> usize {
        self.0.len() - 1
    }

    fn boundary(&self) -> Vec<Self> {
        if self.0.len() == 1 {
            return Vec::new();
        }
        (0..self.0.len())
            .map(|skip| {
                Simplex(
                    self.0
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != skip)
                        .map(|(_, v)| *v)
                        .collect(),
                )
            })
            .collect()
    }

    fn is_face_of(&self, other: &Self) -> bool {
        self.is_subset(other)
    }

    fn all_faces(&self) -> Vec<Self> {
        let n = self.0.len();
        assert!(n < 32, "simplex dimension too large");
        (1u32..(1u32 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }

    fn vertex_cells(&self) -> Vec<Self> {
        self.0.iter().map(|&v| Simplex::vertex(v)).collect()
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v)?;
        }
        f.write_str("]")
    }
}

impl From<&[VertexId]> for Simplex {
    fn from(v: &[VertexId]) -> Self {
        Simplex::new(v.iter().copied())
    }
}

impl<const N: usize> From<[VertexId; N]> for Simplex {
    fn from(v: [VertexId; N]) -> Self {
        Simplex::new(v)
    }
}
