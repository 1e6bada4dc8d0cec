//! Exact rational realizations of simplicial complexes.

mod closest;
mod convex;
mod halfspace;
pub mod linalg;
mod spherical;
mod starshaped;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};

pub use closest::{closest_point_on_simplex, closest_point_on_star, ClosestPoint};
pub use convex::{all_stars_convex, convex_hull_triangulation, hull_volume, is_convex_support};
pub use halfspace::{generic_direction, lower_link, restrict_to_halfspace, split_link, Halfspace, SplitLink};
pub use spherical::{spherical_distance_less, ProjectiveMap, SphericalPoint};
pub use starshaped::{is_star_shaped, locate_point, segment_in_complex, StarShapedWitness};

pub type Rational = BigRational;
pub type Point = Vec<Rational>;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int_point(c: &[i64]) -> Point {
    c.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect()
}

/// A simplicial complex with a rational position for every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricComplex {
    pub complex: SimplicialComplex,
    positions: BTreeMap<VertexId, Point>,
    dim: usize,
}

impl GeometricComplex {
    pub fn new(complex: SimplicialComplex, positions: BTreeMap<VertexId, Point>) -> Result<Self> {
        let mut dim = None;
        for v in complex.vertices() {
            let Some(p) = positions.get(&v) else {
                return Err(Error::DimensionMismatch(format!("vertex {} has no position", v)));
            };
            match dim {
                None => dim = Some(p.len()),
                Some(d) if d != p.len() => {
                    return Err(Error::DimensionMismatch(format!(
                        "vertex {} has {} coordinates, expected {}",
                        v,
                        p.len(),
                        d
                    )))
                }
                _ => {}
            }
        }
        let Some(dim) = dim else {
            return Err(Error::EmptyInput);
        };
        let positions = positions
            .into_iter()
            .filter(|(v, _)| complex.has_vertex(*v))
            .collect();
        Ok(GeometricComplex {
            complex,
            positions,
            dim,
        })
    }

    /// Builds from facet lists and integer coordinates indexed by vertex id.
    pub fn from_int(facets: &[&[VertexId]], coords: &[&[i64]]) -> Result<Self> {
        let complex = SimplicialComplex::from_vertex_lists(facets.iter().map(|f| f.iter().copied()))?;
        let positions = coords
            .iter()
            .enumerate()
            .map(|(i, c)| (i as VertexId, int_point(c)))
            .collect();
        Self::new(complex, positions)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn position(&self, v: VertexId) -> &Point {
        &self.positions[&v]
    }

    pub fn positions(&self) -> &BTreeMap<VertexId, Point> {
        &self.positions
    }

    pub fn face_points(&self, s: &Simplex) -> Vec<&Point> {
        s.vertices().iter().map(|v| &self.positions[v]).collect()
    }

    pub fn barycenter(&self, s: &Simplex) -> Point {
        linalg::centroid(self.face_points(s))
    }

    /// The same realization restricted to a subcomplex.
    pub fn restrict(&self, sub: SimplicialComplex) -> Result<Self> {
        let positions = sub
            .vertices()
            .into_iter()
            .map(|v| (v, self.positions[&v].clone()))
            .collect();
        Self::new(sub, positions)
    }

    /// Errors on the first facet whose vertices are affinely dependent.
    pub fn check_facets(&self) -> Result<()> {
        for f in self.complex.facets() {
            let pts: Vec<Point> = self.face_points(&f).into_iter().cloned().collect();
            if linalg::affine_dim(&pts) != f.len() - 1 {
                return Err(Error::DegenerateFacet(format!("{}", f)));
            }
        }
        Ok(())
    }

    /// True when every facet is a `d`-simplex in `R^d`.
    pub fn is_full_dimensional(&self) -> bool {
        self.complex
            .facets()
            .iter()
            .all(|f| f.len() == self.dim + 1)
    }
}
