use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::linalg::{dot, norm2};
use super::{Point, Rational};
use crate::error::{Error, Result};

/// A point of the unit sphere, given by a nonzero rational ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalPoint {
    ray: Point,
}

impl SphericalPoint {
    pub fn new(ray: Point) -> Result<Self> {
        if ray.iter().all(|x| x.is_zero()) {
            return Err(Error::BadParameters("zero ray".into()));
        }
        Ok(SphericalPoint { ray })
    }

    pub fn ray(&self) -> &[Rational] {
        &self.ray
    }

    /// `sign(cos θ) · cos² θ` up to the positive factor `|x|²`, where θ is the
    /// angle to `x`. Monotone decreasing in θ.
    fn closeness(&self, x: &SphericalPoint) -> Rational {
        let c = dot(&self.ray, &x.ray);
        let q = &c * &c / norm2(&self.ray);
        if c.is_negative() {
            -q
        } else {
            q
        }
    }

    fn is_antipodal_to(&self, x: &SphericalPoint) -> bool {
        let c = dot(&self.ray, &x.ray);
        c.is_negative() && &c * &c == norm2(&self.ray) * norm2(&x.ray)
    }
}

/// Compares the angular distances from `a` and from `b` to `x`;
/// `Less` means `a` is strictly closer.
pub fn spherical_distance_less(a: &SphericalPoint, b: &SphericalPoint, x: &SphericalPoint) -> Result<Ordering> {
    if a.is_antipodal_to(x) && b.is_antipodal_to(x) {
        return Err(Error::AntipodalAmbiguity);
    }
    Ok(b.closeness(x).cmp(&a.closeness(x)))
}

/// A projective map `y ↦ A y` with `A = I + u vᵀ` and `u ⊥ h`; it preserves
/// every hemisphere `<y, h> >= 0` and fixes its boundary setwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveMap {
    u: Point,
    v: Point,
}

impl ProjectiveMap {
    pub fn identity(dim: usize) -> Self {
        ProjectiveMap {
            u: alloc::vec![Rational::zero(); dim],
            v: alloc::vec![Rational::zero(); dim],
        }
    }

    /// A random small perturbation preserving the hemisphere with pole `h`.
    pub fn random_fixing<R: Rng>(h: &[Rational], rng: &mut R) -> Self {
        let d = h.len();
        let mut r = || Rational::new(BigInt::from(rng.gen_range(-16i64..=16)), BigInt::from(64));
        let raw: Point = (0..d).map(|_| r()).collect();
        // Project out h so that u ⊥ h.
        let hh = norm2(h);
        let k = dot(&raw, h) / &hh;
        let u: Point = raw.iter().zip(h).map(|(a, b)| a - &k * b).collect();
        let v: Point = (0..d).map(|_| r()).collect();
        // |u|,|v| <= d/4 keeps 1 + <v,u> away from zero for small d; check anyway.
        let m = ProjectiveMap { u, v };
        if (Rational::one() + dot(&m.v, &m.u)).is_zero() {
            Self::identity(d)
        } else {
            m
        }
    }

    pub fn apply(&self, y: &[Rational]) -> Point {
        let s = dot(&self.v, y);
        y.iter().zip(&self.u).map(|(a, b)| a + &s * b).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::int_point;
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sp(c: &[i64]) -> SphericalPoint {
        SphericalPoint::new(int_point(c)).unwrap()
    }

    #[test]
    fn the_point_itself_is_closest() {
        let x = sp(&[1, 0, 0]);
        assert_eq!(spherical_distance_less(&x, &sp(&[1, 1, 0]), &x).unwrap(), Ordering::Less);
    }

    #[test]
    fn symmetric_points_tie() {
        let x = sp(&[0, 0, 1]);
        assert_eq!(spherical_distance_less(&sp(&[1, 0, 1]), &sp(&[-1, 0, 1]), &x).unwrap(), Ordering::Equal);
    }

    #[test]
    fn acute_angles_compare_by_cosine() {
        // Rays at about 27 and 63 degrees from x.
        let x = sp(&[1, 0]);
        let a = sp(&[2, 1]);
        let b = sp(&[1, 2]);
        assert_eq!(spherical_distance_less(&a, &b, &x).unwrap(), Ordering::Less);
        assert_eq!(spherical_distance_less(&b, &a, &x).unwrap(), Ordering::Greater);
        // Obtuse angles are farther than acute ones with the same cos².
        assert_eq!(spherical_distance_less(&sp(&[1, 1]), &sp(&[-1, 1]), &x).unwrap(), Ordering::Less);
    }

    #[test]
    fn antipodal_pair_is_ambiguous() {
        let x = sp(&[1, 0]);
        assert_eq!(
            spherical_distance_less(&sp(&[-1, 0]), &sp(&[-2, 0]), &x),
            Err(Error::AntipodalAmbiguity)
        );
    }

    #[test]
    fn projective_map_preserves_hemisphere() {
        let h = int_point(&[0, 0, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = ProjectiveMap::random_fixing(&h, &mut rng);
        for y in [int_point(&[1, 2, 3]), int_point(&[-4, 1, 0]), int_point(&[0, 1, -2])] {
            assert_eq!(dot(&m.apply(&y), &h), dot(&y, &h));
        }
    }
}
