use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::linalg::{add, barycentric, scale, sub};
use super::{GeometricComplex, Point, Rational};
use crate::complex::Simplex;
use crate::error::{Error, Result};

/// A segment from the tested center that leaves the complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarShapedWitness {
    pub target: Point,
    /// A point of the segment outside every facet.
    pub outside: Point,
}

fn require_full(g: &GeometricComplex) -> Result<()> {
    if g.is_full_dimensional() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(
            "point location needs a pure full-dimensional complex".into(),
        ))
    }
}

/// A facet containing `q`, if any.
pub fn locate_point(g: &GeometricComplex, q: &[Rational]) -> Result<Option<Simplex>> {
    require_full(g)?;
    for f in g.complex.facets() {
        let Some(l) = barycentric(&g.face_points(&f), q) else {
            return Err(Error::DegenerateFacet(alloc::format!("{}", f)));
        };
        if l.iter().all(|x| !x.is_negative()) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// `None` when the closed segment `[a,b]` lies in |G|, otherwise a point of
/// the segment outside |G|.
pub fn segment_in_complex(g: &GeometricComplex, a: &[Rational], b: &[Rational]) -> Result<Option<Point>> {
    require_full(g)?;
    let mut intervals: Vec<(Rational, Rational)> = Vec::new();
    for f in g.complex.facets() {
        let pts = g.face_points(&f);
        let (Some(la), Some(lb)) = (barycentric(&pts, a), barycentric(&pts, b)) else {
            return Err(Error::DegenerateFacet(alloc::format!("{}", f)));
        };
        let mut lo = Rational::zero();
        let mut hi = Rational::one();
        let mut empty = false;
        for (c, e) in la.iter().zip(&lb) {
            let s = e - c;
            if s.is_zero() {
                if c.is_negative() {
                    empty = true;
                    break;
                }
            } else {
                let t = -c / &s;
                if s.is_positive() {
                    if t > lo {
                        lo = t;
                    }
                } else if t < hi {
                    hi = t;
                }
            }
        }
        if !empty && lo <= hi {
            intervals.push((lo, hi));
        }
    }
    intervals.sort();
    let point_at = |t: &Rational| add(a, &scale(&sub(b, a), t));
    let mut covered = Rational::zero();
    let mut started = false;
    for (lo, hi) in &intervals {
        if (!started && lo > &Rational::zero()) || (started && lo > &covered) {
            let gap_start = if started { covered.clone() } else { Rational::zero() };
            let mid = (gap_start + lo) / Rational::from_integer(2.into());
            return Ok(Some(point_at(&mid)));
        }
        started = true;
        if hi > &covered {
            covered = hi.clone();
        }
    }
    if !started {
        return Ok(Some(a.to_vec()));
    }
    if covered < Rational::one() {
        let mid = (covered + Rational::one()) / Rational::from_integer(2.into());
        return Ok(Some(point_at(&mid)));
    }
    Ok(None)
}

/// Checks the segments from `x` to every vertex and every facet barycenter.
/// Returns a leaving segment when one exists.
pub fn star_shaped_witness(g: &GeometricComplex, x: &[Rational]) -> Result<Option<StarShapedWitness>> {
    if locate_point(g, x)?.is_none() {
        return Err(Error::PointOutsideComplex);
    }
    let mut targets: Vec<Point> = g.positions().values().cloned().collect();
    for f in g.complex.facets() {
        targets.push(g.barycenter(&f));
    }
    for t in targets {
        if let Some(out) = segment_in_complex(g, x, &t)? {
            return Ok(Some(StarShapedWitness { target: t, outside: out }));
        }
    }
    Ok(None)
}

pub fn is_star_shaped(g: &GeometricComplex, x: &[Rational]) -> Result<bool> {
    Ok(star_shaped_witness(g, x)?.is_none())
}
