use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed};

use super::linalg::{dist2, dot, solve, sub};
use super::{GeometricComplex, Point, Rational};
use crate::complex::{Cell, Simplex};
use crate::error::{Error, Result};

/// A nearest point together with the face holding it in its relative interior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosestPoint {
    pub point: Point,
    pub carrier: Simplex,
    pub dist2: Rational,
}

/// Projection of `w` onto the affine hull of `face`, if it lands in the open face.
fn relint_projection(w: &[Rational], g: &GeometricComplex, face: &Simplex) -> Option<Point> {
    let pts = g.face_points(face);
    let p0 = pts[0];
    if pts.len() == 1 {
        return Some(p0.clone());
    }
    let e: Vec<Point> = pts[1..].iter().map(|p| sub(p, p0)).collect();
    let k = e.len();
    let gram: Vec<Vec<Rational>> = (0..k)
        .map(|i| (0..k).map(|j| dot(&e[i], &e[j])).collect())
        .collect();
    let wp = sub(w, p0);
    let rhs: Vec<Rational> = e.iter().map(|ei| dot(&wp, ei)).collect();
    let lambda = solve(gram, rhs)?;
    let l0 = lambda.iter().fold(Rational::one(), |acc, l| acc - l);
    if !l0.is_positive() || lambda.iter().any(|l| !l.is_positive()) {
        return None;
    }
    let mut x = p0.clone();
    for (l, ei) in lambda.iter().zip(&e) {
        for (xc, ec) in x.iter_mut().zip(ei) {
            *xc += l * ec;
        }
    }
    Some(x)
}

/// Exact nearest point of a realized simplex to `w`.
pub fn closest_point_on_simplex(w: &[Rational], g: &GeometricComplex, s: &Simplex) -> ClosestPoint {
    let mut best: Option<ClosestPoint> = None;
    for face in s.all_faces() {
        if let Some(x) = relint_projection(w, g, &face) {
            let d = dist2(&x, w);
            if best.as_ref().map_or(true, |b| d < b.dist2) {
                best = Some(ClosestPoint {
                    point: x,
                    carrier: face,
                    dist2: d,
                });
            }
        }
    }
    best.expect("vertex projections always qualify")
}

/// Nearest point to `w` on |St(σ, G)|, with its carrier face.
///
/// Fails when two facets of the star give distinct points at the same minimal
/// distance.
pub fn closest_point_on_star(w: &[Rational], sigma: &Simplex, g: &GeometricComplex) -> Result<ClosestPoint> {
    if !g.complex.contains(sigma) {
        return Err(Error::FaceNotInComplex(format!("{}", sigma)));
    }
    let mut best: Option<ClosestPoint> = None;
    let mut tied = false;
    for f in g.complex.facets() {
        if !sigma.is_subset(&f) {
            continue;
        }
        let c = closest_point_on_simplex(w, g, &f);
        match &best {
            Some(b) if c.dist2 > b.dist2 => {}
            Some(b) if c.dist2 == b.dist2 => tied |= c.point != b.point,
            _ => {
                best = Some(c);
                tied = false;
            }
        }
    }
    if tied {
        return Err(Error::NonUniqueMinimum(format!("{}", sigma)));
    }
    Ok(best.expect("star of a face is nonempty"))
}

#[cfg(test)]
mod tests {
    use super::super::{int_point, rat, GeometricComplex};
    use super::*;
    use alloc::vec;

    fn triangle() -> GeometricComplex {
        GeometricComplex::from_int(&[&[0, 1, 2]], &[&[0, 0], &[1, 0], &[0, 1]]).unwrap()
    }

    #[test]
    fn point_on_vertex_is_its_own_projection() {
        let g = triangle();
        let c = closest_point_on_star(&int_point(&[1, 0]), &Simplex::vertex(1), &g).unwrap();
        assert_eq!(c.point, int_point(&[1, 0]));
        assert_eq!(c.carrier, Simplex::vertex(1));
    }

    #[test]
    fn clamps_to_segment_end() {
        let g = GeometricComplex::from_int(&[&[0, 1]], &[&[0, 0], &[1, 0]]).unwrap();
        let c = closest_point_on_star(&int_point(&[2, 1]), &Simplex::vertex(0), &g).unwrap();
        assert_eq!(c.point, int_point(&[1, 0]));
        assert_eq!(c.carrier, Simplex::vertex(1));
    }

    #[test]
    fn ties_above_the_minimum_are_ignored() {
        // Two star facets tie at distance 1 before a later one reaches 0.
        let g = GeometricComplex::from_int(
            &[&[0, 1, 4], &[0, 3, 4], &[1, 4, 5], &[3, 4, 7], &[4, 5, 8], &[4, 7, 8]],
            &[&[0, 0], &[1, 0], &[2, 0], &[0, 1], &[1, 1], &[2, 1], &[0, 2], &[1, 2], &[2, 2]],
        )
        .unwrap();
        let c = closest_point_on_star(&int_point(&[2, 2]), &Simplex::vertex(4), &g).unwrap();
        assert_eq!(c.carrier, Simplex::vertex(8));
        let square = GeometricComplex::from_int(&[&[0, 1, 2], &[0, 2, 3]], &[&[0, 0], &[2, 0], &[2, 2], &[0, 2]]).unwrap();
        assert!(matches!(
            closest_point_on_star(&int_point(&[3, 3]), &Simplex::vertex(0), &square),
            Ok(_)
        ));
    }

    #[test]
    fn hypotenuse_projection() {
        let g = triangle();
        let c = closest_point_on_star(&int_point(&[1, 1]), &Simplex::from([0, 1, 2]), &g).unwrap();
        assert_eq!(c.point, vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(c.carrier, Simplex::from([1, 2]));
        assert_eq!(c.dist2, rat(1, 2));
    }

    #[test]
    fn grid_sampling_never_beats_projection() {
        let g = triangle();
        let w = vec![rat(3, 2), rat(2, 3)];
        let c = closest_point_on_simplex(&w, &g, &Simplex::from([0, 1, 2]));
        for i in 0..=20i64 {
            for j in 0..=(20 - i) {
                let p = vec![rat(i, 20), rat(j, 20)];
                assert!(dist2(&p, &w) >= c.dist2);
            }
        }
    }

    #[test]
    fn symmetric_star_has_two_minima() {
        // Two triangles meeting at vertex 0 with a notch between them; w sits
        // on the symmetry axis beyond the notch.
        let g = GeometricComplex::from_int(
            &[&[0, 1, 2], &[0, 3, 4]],
            &[&[0, 0], &[4, 1], &[1, 4], &[-4, 1], &[-1, 4]],
        )
        .unwrap();
        let w = int_point(&[0, 6]);
        assert!(matches!(
            closest_point_on_star(&w, &Simplex::vertex(0), &g),
            Err(Error::NonUniqueMinimum(_))
        ));
    }
}
