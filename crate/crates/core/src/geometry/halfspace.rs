use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::Rng;

use super::linalg::{dot, sign, sub};
use super::{GeometricComplex, Point, Rational};
use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};

/// The affine halfspace `<y, normal> >= offset`; its boundary is the hyperplane H.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: Point,
    pub offset: Rational,
}

impl Halfspace {
    pub fn new(normal: Point, offset: Rational) -> Result<Self> {
        if normal.iter().all(|x| *x == Rational::from_integer(0.into())) {
            return Err(Error::BadParameters("halfspace normal is zero".into()));
        }
        Ok(Halfspace { normal, offset })
    }

    /// Halfspace bounded by the hyperplane through `x` orthogonal to `normal`.
    pub fn through(normal: Point, x: &[Rational]) -> Result<Self> {
        let offset = dot(&normal, x);
        Self::new(normal, offset)
    }

    /// Sign of `<p, normal> - offset`.
    pub fn side(&self, p: &[Rational]) -> i8 {
        sign(&(dot(p, &self.normal) - &self.offset))
    }

    pub fn opposite(&self) -> Self {
        Halfspace {
            normal: self.normal.iter().map(|x| -x).collect(),
            offset: -self.offset.clone(),
        }
    }

    /// Parameter where the segment `[a,b]` meets the boundary hyperplane.
    pub fn crossing(&self, a: &[Rational], b: &[Rational]) -> Option<Point> {
        let fa = dot(a, &self.normal) - &self.offset;
        let fb = dot(b, &self.normal) - &self.offset;
        if fa == fb {
            return None;
        }
        let t = &fa / (&fa - &fb);
        Some(a.iter().zip(b).map(|(x, y)| x + &t * (y - x)).collect())
    }
}

/// True when all vertices have pairwise distinct heights `<v, nu>`.
pub fn is_generic_direction(g: &GeometricComplex, nu: &[Rational]) -> bool {
    let mut seen = BTreeSet::new();
    g.positions().values().all(|p| seen.insert(dot(p, nu)))
}

/// A random integer direction under which vertex heights are pairwise
/// distinct (so no edge is orthogonal to it).
pub fn generic_direction<R: Rng>(g: &GeometricComplex, rng: &mut R, attempts: usize) -> Result<Point> {
    let d = g.ambient_dim();
    for k in 0..attempts {
        let bound = 8i64 << (k / 8).min(40);
        let nu: Point = (0..d)
            .map(|_| Rational::from_integer(BigInt::from(rng.gen_range(-bound..=bound))))
            .collect();
        if nu.iter().any(|x| *x != Rational::from_integer(0.into())) && is_generic_direction(g, &nu) {
            return Ok(nu);
        }
    }
    Err(Error::RetryBudgetExceeded(attempts))
}

fn link_signs(v: VertexId, nu: &[Rational], g: &GeometricComplex) -> Result<(SimplicialComplex, BTreeMap<VertexId, i8>)> {
    let link = g.complex.vertex_link(v)?;
    let pv = g.position(v);
    let mut signs = BTreeMap::new();
    for u in link.vertices() {
        let s = sign(&dot(&sub(g.position(u), pv), nu));
        if s == 0 {
            return Err(Error::NonGenericDirection(format!("edge [{},{}]", v.min(u), v.max(u))));
        }
        signs.insert(u, s);
    }
    Ok((link, signs))
}

/// Subcomplex of Lk(v) spanned by neighbors `u` with `<u - v, nu> < 0`.
pub fn lower_link(v: VertexId, nu: &[Rational], g: &GeometricComplex) -> Result<SimplicialComplex> {
    let (link, signs) = link_signs(v, nu, g)?;
    Ok(link.filter_closed(|f| f.vertices().iter().all(|u| signs[u] < 0)))
}

/// The link of `v` cut by the closed side `<y - v, nu> <= 0`.
///
/// Cells are polytopes given by vertex sets; crossing vertices get fresh ids
/// above every id of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitLink {
    pub cells: BTreeSet<Simplex>,
    /// Fresh vertex id → the cut link edge `(below, above)`.
    pub crossing: BTreeMap<VertexId, (VertexId, VertexId)>,
    /// Positions of the crossing vertices, on the hyperplane through v.
    pub positions: BTreeMap<VertexId, Point>,
}

pub fn split_link(v: VertexId, nu: &[Rational], g: &GeometricComplex) -> Result<SplitLink> {
    let (link, signs) = link_signs(v, nu, g)?;
    let mut next = g.complex.vertices().last().copied().unwrap_or(0) + 1;
    let mut edge_id: BTreeMap<(VertexId, VertexId), VertexId> = BTreeMap::new();
    let mut crossing = BTreeMap::new();
    let mut positions = BTreeMap::new();
    let h = Halfspace::through(nu.to_vec(), g.position(v))?;
    for e in link.faces().iter().filter(|f| f.len() == 2) {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        if signs[&a] != signs[&b] {
            let (lo, hi) = if signs[&a] < 0 { (a, b) } else { (b, a) };
            edge_id.insert((a, b), next);
            crossing.insert(next, (lo, hi));
            positions.insert(next, h.crossing(g.position(lo), g.position(hi)).expect("signs differ"));
            next += 1;
        }
    }
    let mut cells = BTreeSet::new();
    for f in link.faces() {
        let vs = f.vertices();
        let mut below: Vec<VertexId> = vs.iter().copied().filter(|u| signs[u] < 0).collect();
        let mut cut: Vec<VertexId> = Vec::new();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if let Some(&id) = edge_id.get(&(vs[i], vs[j])) {
                    cut.push(id);
                }
            }
        }
        if !cut.is_empty() {
            cells.insert(Simplex::new(cut.iter().copied()));
        }
        below.extend(cut);
        if let Some(s) = Simplex::try_new(below) {
            cells.insert(s);
        }
    }
    Ok(SplitLink {
        cells,
        crossing,
        positions,
    })
}

/// R(G, H̄₊): faces whose vertices all lie on the nonnegative side, or on
/// the strictly positive side when `open`.
pub fn restrict_to_halfspace(g: &GeometricComplex, h: &Halfspace, open: bool) -> SimplicialComplex {
    let ok: BTreeSet<VertexId> = g
        .positions()
        .iter()
        .filter(|(_, p)| {
            let s = h.side(p);
            s > 0 || (!open && s == 0)
        })
        .map(|(v, _)| *v)
        .collect();
    g.complex.induced(&ok)
}

#[cfg(test)]
mod tests {
    use super::super::{int_point, rat};
    use super::*;
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn plane_patch() -> GeometricComplex {
        // Hexagon around vertex 0 at the origin.
        GeometricComplex::from_int(
            &[&[0, 1, 2], &[0, 2, 3], &[0, 3, 4], &[0, 4, 5], &[0, 5, 6], &[0, 6, 1]],
            &[&[0, 0], &[2, 1], &[1, 3], &[-1, 2], &[-2, -1], &[-1, -3], &[1, -2]],
        )
        .unwrap()
    }

    #[test]
    fn lower_link_of_plane_patch_is_a_path() {
        let g = plane_patch();
        let ll = lower_link(0, &int_point(&[0, 1]), &g).unwrap();
        assert_eq!(ll.vertices(), vec![4, 5, 6]);
        assert_eq!(ll.facets(), vec![Simplex::from([4, 5]), Simplex::from([5, 6])]);
    }

    #[test]
    fn apex_of_cone_has_everything_below() {
        let g = GeometricComplex::from_int(
            &[&[0, 1, 2], &[0, 2, 3], &[0, 3, 4], &[0, 4, 1]],
            &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0], &[-1, 0, 0], &[0, -1, 0]],
        )
        .unwrap();
        let nu = int_point(&[0, 0, 1]);
        let ll = lower_link(0, &nu, &g).unwrap();
        assert_eq!(ll, g.complex.vertex_link(0).unwrap());
        let sl = split_link(0, &nu, &g).unwrap();
        assert!(sl.crossing.is_empty());
        assert_eq!(&sl.cells, ll.faces());
        // Seen from the bottom, nothing lies below.
        assert!(lower_link(0, &int_point(&[0, 0, -1]), &g).unwrap().is_empty());
    }

    #[test]
    fn single_neighbor_below() {
        let g = GeometricComplex::from_int(&[&[0, 1, 2]], &[&[0, 0], &[1, -1], &[1, 1]]).unwrap();
        let ll = lower_link(0, &int_point(&[0, 1]), &g).unwrap();
        assert_eq!(ll.facets(), vec![Simplex::vertex(1)]);
    }

    #[test]
    fn lower_link_inside_split_link() {
        let g = plane_patch();
        let nu = vec![rat(1, 3), rat(1, 1)];
        let ll = lower_link(0, &nu, &g).unwrap();
        let sl = split_link(0, &nu, &g).unwrap();
        assert!(ll.faces().iter().all(|f| sl.cells.contains(f)));
        assert_eq!(sl.crossing.len(), 2);
        for (id, p) in &sl.positions {
            assert_eq!(dot(p, &nu), rat(0, 1), "crossing {} off the hyperplane", id);
        }
    }

    #[test]
    fn non_generic_direction_is_rejected() {
        let g = plane_patch();
        assert!(matches!(
            lower_link(0, &int_point(&[1, -2]), &g),
            Err(Error::NonGenericDirection(_))
        ));
    }

    #[test]
    fn grid_rejects_diagonal_direction() {
        let g = GeometricComplex::from_int(&[&[0, 1, 2], &[1, 2, 3]], &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert!(!is_generic_direction(&g, &int_point(&[1, 1])));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let nu = generic_direction(&g, &mut rng, 100).unwrap();
        assert!(is_generic_direction(&g, &nu));
    }

    #[test]
    fn restriction_by_sign() {
        let g = GeometricComplex::from_int(&[&[0, 1], &[1, 2], &[0, 2]], &[&[0, 0], &[2, 0], &[1, 2]]).unwrap();
        let below = Halfspace::new(int_point(&[0, -1]), rat(-1, 1)).unwrap();
        assert_eq!(restrict_to_halfspace(&g, &below, false).facets(), vec![Simplex::from([0, 1])]);
        let all = Halfspace::new(int_point(&[0, 1]), rat(-5, 1)).unwrap();
        assert_eq!(restrict_to_halfspace(&g, &all, true), g.complex);
    }
}
