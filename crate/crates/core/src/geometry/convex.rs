use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::linalg::{determinant, sign, signed_volume, sub};
use super::{GeometricComplex, Point, Rational};
use crate::error::{Error, Result};

fn orient(points: &[Point], facet: &[usize], q: &Point) -> i8 {
    let base = &points[facet[0]];
    let mut rows: Vec<Point> = facet[1..].iter().map(|&i| sub(&points[i], base)).collect();
    rows.push(sub(q, base));
    sign(&determinant(rows))
}

/// Placing triangulation of the convex hull of `points`, as index lists of
/// full-dimensional simplices. Points are placed in the given order; a point
/// that lands inside the current hull is not used.
pub fn convex_hull_triangulation(points: &[Point]) -> Result<Vec<Vec<usize>>> {
    let Some(first) = points.first() else {
        return Err(Error::EmptyInput);
    };
    let d = first.len();
    if d == 0 {
        return Ok(alloc::vec![alloc::vec![0]]);
    }
    let mut init: Vec<usize> = alloc::vec![0];
    let mut rows: Vec<Point> = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        if init.len() == d + 1 {
            break;
        }
        let mut trial = rows.clone();
        trial.push(sub(p, first));
        if super::linalg::rank(trial.clone()) == trial.len() {
            rows = trial;
            init.push(i);
        }
    }
    if init.len() != d + 1 {
        return Err(Error::DimensionMismatch("points do not span the ambient space".into()));
    }
    let mut simplices = alloc::vec![init.clone()];
    // Boundary facets with a vertex on their inner side.
    let mut boundary: Vec<(Vec<usize>, usize)> = (0..=d)
        .map(|skip| {
            let f: Vec<usize> = init.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &v)| v).collect();
            (f, init[skip])
        })
        .collect();
    for (p, q) in points.iter().enumerate() {
        if init.contains(&p) {
            continue;
        }
        let visible: Vec<bool> = boundary
            .iter()
            .map(|(f, inner)| {
                let s = orient(points, f, q);
                s != 0 && s != orient(points, f, &points[*inner])
            })
            .collect();
        if !visible.iter().any(|&b| b) {
            continue;
        }
        let mut ridge_count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for (k, (f, _)) in boundary.iter().enumerate() {
            if visible[k] {
                for skip in 0..f.len() {
                    let r: Vec<usize> = f.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, &v)| v).collect();
                    *ridge_count.entry(r).or_default() += 1;
                }
            }
        }
        let mut next = Vec::new();
        for (k, (f, inner)) in boundary.into_iter().enumerate() {
            if !visible[k] {
                next.push((f, inner));
                continue;
            }
            let mut s = f.clone();
            s.push(p);
            s.sort_unstable();
            simplices.push(s);
            for skip in 0..f.len() {
                let r: Vec<usize> = f.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, &v)| v).collect();
                if ridge_count[&r] == 1 {
                    let mut nf = r;
                    nf.push(p);
                    nf.sort_unstable();
                    next.push((nf, f[skip]));
                }
            }
        }
        boundary = next;
    }
    Ok(simplices)
}

/// `d!` times the volume of the convex hull.
pub fn hull_volume(points: &[Point]) -> Result<Rational> {
    let simplices = convex_hull_triangulation(points)?;
    Ok(simplices.iter().fold(Rational::zero(), |acc, s| {
        let pts: Vec<&Point> = s.iter().map(|&i| &points[i]).collect();
        acc + signed_volume(&pts).abs()
    }))
}

/// True iff |G| equals the convex hull of its vertices, compared by volume.
pub fn is_convex_support(g: &GeometricComplex) -> Result<bool> {
    if !g.is_full_dimensional() {
        return Err(Error::DimensionMismatch(
            "convexity test needs a pure full-dimensional complex".into(),
        ));
    }
    let mut total = Rational::zero();
    for f in g.complex.facets() {
        let v = signed_volume(&g.face_points(&f)).abs();
        if v.is_zero() {
            return Err(Error::DegenerateFacet(format!("{}", f)));
        }
        total += v;
    }
    let pts: Vec<Point> = g.positions().values().cloned().collect();
    Ok(total == hull_volume(&pts)?)
}

/// True iff the star of every face has convex support.
pub fn all_stars_convex(g: &GeometricComplex) -> Result<bool> {
    for s in g.complex.faces() {
        let st = g.restrict(g.complex.star(s)?)?;
        if !is_convex_support(&st)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::super::{int_point, rat, GeometricComplex};
    use super::*;
    use alloc::vec;

    #[test]
    fn square_hull_volume() {
        let pts = vec![int_point(&[0, 0]), int_point(&[2, 0]), int_point(&[2, 2]), int_point(&[0, 2]), int_point(&[1, 1])];
        assert_eq!(hull_volume(&pts).unwrap(), rat(8, 1));
    }

    #[test]
    fn collinear_points_on_hull_edge() {
        let pts = vec![int_point(&[0, 0]), int_point(&[2, 0]), int_point(&[0, 2]), int_point(&[1, 0]), int_point(&[3, 0])];
        assert_eq!(hull_volume(&pts).unwrap(), rat(6, 1));
    }

    #[test]
    fn cube_hull_volume() {
        let mut pts = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    pts.push(int_point(&[x, y, z]));
                }
            }
        }
        assert_eq!(hull_volume(&pts).unwrap(), rat(6, 1));
    }

    #[test]
    fn convex_polygon_and_l_shape() {
        let sq = GeometricComplex::from_int(&[&[0, 1, 2], &[0, 2, 3]], &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]).unwrap();
        assert!(is_convex_support(&sq).unwrap());
        let l = GeometricComplex::from_int(
            &[&[0, 1, 4], &[0, 4, 3], &[3, 4, 6], &[3, 6, 5], &[1, 2, 7], &[1, 7, 4]],
            &[&[0, 0], &[1, 0], &[2, 0], &[0, 1], &[1, 1], &[0, 2], &[1, 2], &[2, 1]],
        )
        .unwrap();
        assert!(!is_convex_support(&l).unwrap());
        let t = GeometricComplex::from_int(&[&[0, 1, 2]], &[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert!(is_convex_support(&t).unwrap());
    }

    #[test]
    fn degenerate_facet_is_reported() {
        let g = GeometricComplex::from_int(&[&[0, 1, 2]], &[&[0, 0], &[1, 1], &[2, 2]]).unwrap();
        assert!(matches!(is_convex_support(&g), Err(Error::DegenerateFacet(_))));
    }
}
