//! Collapsing a single simplex or cube onto the star of a face in its
//! boundary, and the distance-driven collapse of cubical complexes.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use super::CollapseCertificate;
use crate::complex::{Cell, CellComplex, Cube, CubicalComplex, Simplex};
use crate::error::{Error, Result};
use crate::verify;

/// Cells that collapse onto `St(μ, ∂P)` by an explicit sweep.
pub trait StarCollapsible: Cell {
    /// Pairs removing the faces of `self` outside `St(mu, ∂self)`, in order.
    fn star_collapse_steps(&self, mu: &Self) -> Result<Vec<(Self, Self)>>;
}

fn proper_face<C: Cell>(p: &C, mu: &C) -> Result<()> {
    if !mu.is_face_of(p) || mu == p {
        return Err(Error::BadParameters(format!("{mu} is not a proper face of {p}")));
    }
    Ok(())
}

impl StarCollapsible for Simplex {
    fn star_collapse_steps(&self, mu: &Self) -> Result<Vec<(Self, Self)>> {
        proper_face(self, mu)?;
        let far = self.difference(mu).expect("mu is proper");
        let a = mu.vertices()[0];
        let mut free: Vec<Simplex> = self
            .all_faces()
            .into_iter()
            .filter(|t| far.is_subset(t) && !t.contains_vertex(a))
            .collect();
        free.sort_by(|x, y| y.len().cmp(&x.len()).then_with(|| x.cmp(y)));
        Ok(free.into_iter().map(|t| {
            let u = t.with_vertex(a);
            (t, u)
        }).collect())
    }
}

impl StarCollapsible for Cube {
    fn star_collapse_steps(&self, mu: &Self) -> Result<Vec<(Self, Self)>> {
        proper_face(self, mu)?;
        let n = self.ambient_dim();
        // axes along which mu sits on one side of self, with the far value
        let fixed: Vec<(usize, i64)> = (0..n)
            .filter(|&i| self.spans(i) && !mu.spans(i))
            .map(|i| {
                let far = if mu.lo()[i] == self.lo()[i] { self.lo()[i] + 1 } else { self.lo()[i] };
                (i, far)
            })
            .collect();
        let (j, far_j) = fixed[0];
        let mut free: Vec<Cube> = self
            .all_faces()
            .into_iter()
            .filter(|r| fixed.iter().all(|&(i, far)| r.spans(i) || r.lo()[i] == far))
            .filter(|r| !r.spans(j))
            .collect();
        free.sort_by(|x, y| y.dim().cmp(&x.dim()).then_with(|| x.cmp(y)));
        let forward = far_j == self.lo()[j];
        Ok(free.into_iter().map(|r| {
            let u = r.extend(j, forward);
            (r, u)
        }).collect())
    }
}

/// `P ↘ St(μ, ∂P)` for a single simplex or cube `p`.
pub fn facet_star_collapse<C: StarCollapsible>(p: &C, mu: &C) -> Result<CollapseCertificate<C>> {
    let whole = CellComplex::closure([p.clone()]);
    let steps = p.star_collapse_steps(mu)?;
    let star = CellComplex::closure(
        p.boundary().into_iter().filter(|f| mu.is_face_of(f)),
    );
    let cert = CollapseCertificate { steps, target: star.facets() };
    verify::check_collapse(&whole, &cert, Some(&star))
        .map_err(|e| Error::VerificationFailed(format!("{e}")))?;
    Ok(cert)
}

/// As [`facet_star_collapse`], for a complex that must be a single closed cell.
pub fn facet_star_collapse_complex<C: StarCollapsible>(
    k: &CellComplex<C>,
    mu: &C,
) -> Result<CollapseCertificate<C>> {
    let facets = k.facets();
    if facets.len() != 1 {
        return Err(Error::UnsupportedCell(format!("{} facets, expected one cell", facets.len())));
    }
    facet_star_collapse(&facets[0], mu)
}

fn dist2(c: &Cube, w: &[i64]) -> i64 {
    c.intervals()
        .iter()
        .zip(w)
        .map(|(&(a, b), &x)| {
            let d = if x < a { a - x } else if x > b { x - b } else { 0 };
            d * d
        })
        .sum()
}

/// The face of `c` closest to the integer point `w`.
fn nearest_face(c: &Cube, w: &[i64]) -> Cube {
    let mut f = c.clone();
    for (i, &x) in w.iter().enumerate() {
        if c.spans(i) {
            let lo = c.lo()[i];
            if x <= lo {
                f = f.pin(i, false);
            } else if x >= lo + 1 {
                f = f.pin(i, true);
            }
        }
    }
    f
}

/// Collapses a cubical complex to the vertex `root`, repeatedly taking the
/// facets farthest from `root` and collapsing each onto the star of its
/// nearest face.
pub fn collapse_cubical_cat0(k: &CubicalComplex, root: &Cube) -> Result<CollapseCertificate<Cube>> {
    if root.dim() != 0 || !k.contains(root) {
        return Err(Error::FaceNotInComplex(format!("{root}")));
    }
    let w = root.lo().to_vec();
    let mut cur: BTreeSet<Cube> = k.faces().clone();
    let mut steps: Vec<(Cube, Cube)> = Vec::new();
    while cur.len() > 1 {
        let now = CellComplex::from_closed_set(cur.clone());
        let facets = now.facets();
        let sigma = facets
            .iter()
            .max_by(|a, b| dist2(a, &w).cmp(&dist2(b, &w)).then_with(|| b.cmp(a)))
            .expect("nonempty");
        let mu = nearest_face(sigma, &w);
        if &mu == sigma {
            return Err(Error::StarMinimalityViolation(format!("{sigma} is a far isolated vertex")));
        }
        let group: Vec<&Cube> = facets.iter().filter(|p| mu.is_face_of(p) && nearest_face(p, &w) == mu).collect();
        for p in group {
            let local = p.star_collapse_steps(&mu)?;
            for (s, t) in &local {
                for q in &facets {
                    if q != p && (s.is_face_of(q) || t.is_face_of(q)) {
                        return Err(Error::StarMinimalityViolation(format!(
                            "{s} is shared by {p} and {q}"
                        )));
                    }
                }
                cur.remove(t);
                cur.remove(s);
            }
            steps.extend(local);
        }
    }
    if !cur.contains(root) {
        return Err(Error::StarMinimalityViolation("collapse ended away from the root".into()));
    }
    let cert = CollapseCertificate { steps, target: alloc::vec![root.clone()] };
    verify::check_collapse(k, &cert, None).map_err(|e| Error::VerificationFailed(format!("{e}")))?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(m: i64, n: i64) -> CubicalComplex {
        CellComplex::closure(
            (0..m).flat_map(|i| (0..n).map(move |j| Cube::new(&[i, j], &[true, true]))),
        )
    }

    #[test]
    fn triangle_onto_vertex_star() {
        let p = Simplex::from([1, 2, 3]);
        let cert = facet_star_collapse(&p, &Simplex::from([1])).unwrap();
        assert_eq!(cert.steps, alloc::vec![(Simplex::from([2, 3]), Simplex::from([1, 2, 3]))]);
        let cert = facet_star_collapse(&p, &Simplex::from([1, 2])).unwrap();
        assert_eq!(cert.target, alloc::vec![Simplex::from([1, 2])]);
    }

    #[test]
    fn square_onto_corner_star() {
        let sq = Cube::new(&[0, 0], &[true, true]);
        let cert = facet_star_collapse(&sq, &Cube::point(&[0, 0])).unwrap();
        assert_eq!(cert.target.len(), 2);
        assert!(facet_star_collapse(&sq, &sq).is_err());
        let cube = Cube::new(&[0, 0, 0], &[true, true, true]);
        for mu in cube.all_faces() {
            if mu != cube {
                facet_star_collapse(&cube, &mu).unwrap();
            }
        }
    }

    #[test]
    fn not_a_single_cell() {
        let g = grid(1, 2);
        assert!(matches!(
            facet_star_collapse_complex(&g, &Cube::point(&[0, 0])),
            Err(Error::UnsupportedCell(_))
        ));
    }

    #[test]
    fn grid_collapses_to_the_corner() {
        let g = grid(2, 2);
        let cert = collapse_cubical_cat0(&g, &Cube::point(&[0, 0])).unwrap();
        // first removed faces belong to the top right square
        assert!(cert.steps[0].1.is_face_of(&Cube::new(&[1, 1], &[true, true])));
        assert_eq!(cert.target, alloc::vec![Cube::point(&[0, 0])]);
        let one = grid(1, 1);
        let c = collapse_cubical_cat0(&one, &Cube::point(&[1, 1])).unwrap();
        assert_eq!(c.steps.len(), 4);
    }
}
