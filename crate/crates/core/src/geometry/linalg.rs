//! Dense exact linear algebra over `BigRational`.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::{Point, Rational};

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Rational], b: &[Rational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Rational], k: &Rational) -> Point {
    a.iter().map(|x| x * k).collect()
}

pub fn norm2(a: &[Rational]) -> Rational {
    dot(a, a)
}

pub fn dist2(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| {
            let d = x - y;
            acc + &d * &d
        })
}

/// Arithmetic mean of a nonempty point list.
pub fn centroid<'a, I: IntoIterator<Item = &'a Point>>(points: I) -> Point {
    let mut it = points.into_iter();
    let first = it.next().expect("centroid of no points");
    let mut acc = first.clone();
    let mut n = 1i64;
    for p in it {
        acc = add(&acc, p);
        n += 1;
    }
    scale(&acc, &Rational::new(1.into(), n.into()))
}

/// Solves `a x = b` for square nonsingular `a`; `None` when singular.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for k in col..n {
            a[col][k] = &a[col][k] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in col..n {
                    let t = &f * &a[col][k];
                    a[r][k] -= t;
                }
                let t = &f * &b[col];
                b[r] -= t;
            }
        }
    }
    Some(b)
}

pub fn determinant(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        det *= &a[col][col];
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for k in col..n {
                    let t = &f * &a[col][k];
                    a[r][k] -= t;
                }
            }
        }
    }
    det
}

/// Row rank.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let m = rows.len();
    if m == 0 {
        return 0;
    }
    let n = rows[0].len();
    let mut r = 0;
    for col in 0..n {
        let Some(piv) = (r..m).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        for i in r + 1..m {
            if !rows[i][col].is_zero() {
                let f = &rows[i][col] / &rows[r][col];
                for k in col..n {
                    let t = &f * &rows[r][k];
                    rows[i][k] -= t;
                }
            }
        }
        r += 1;
        if r == m {
            break;
        }
    }
    r
}

/// Dimension of the affine hull of a nonempty point set.
pub fn affine_dim(points: &[Point]) -> usize {
    let rows: Vec<Point> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
    rank(rows)
}

/// Signed volume times `d!` of a full-dimensional simplex with `d+1` vertices.
pub fn signed_volume(points: &[&Point]) -> Rational {
    let rows: Vec<Point> = points[1..].iter().map(|p| sub(p, points[0])).collect();
    determinant(rows)
}

/// Barycentric coordinates of `q` with respect to a full-dimensional simplex.
pub fn barycentric(points: &[&Point], q: &[Rational]) -> Option<Vec<Rational>> {
    let d = q.len();
    let n = points.len();
    if n != d + 1 {
        return None;
    }
    let mut a = Vec::with_capacity(d + 1);
    for i in 0..d {
        a.push(points.iter().map(|p| p[i].clone()).collect());
    }
    a.push((0..n).map(|_| Rational::one()).collect());
    let mut b: Vec<Rational> = q.to_vec();
    b.push(Rational::one());
    solve(a, b)
}

pub fn sign(x: &Rational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::super::{int_point, rat};
    use super::*;
    use alloc::vec;

    #[test]
    fn solves_small_system() {
        let a = vec![vec![rat(2, 1), rat(1, 1)], vec![rat(1, 1), rat(3, 1)]];
        let x = solve(a, vec![rat(3, 1), rat(5, 1)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
    }

    #[test]
    fn singular_system_has_no_solution() {
        let a = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]];
        assert!(solve(a, vec![rat(1, 1), rat(1, 1)]).is_none());
    }

    #[test]
    fn determinant_and_rank() {
        let m = vec![
            vec![rat(1, 1), rat(2, 1), rat(3, 1)],
            vec![rat(0, 1), rat(1, 1), rat(4, 1)],
            vec![rat(5, 1), rat(6, 1), rat(0, 1)],
        ];
        assert_eq!(determinant(m.clone()), rat(1, 1));
        assert_eq!(rank(m), 3);
        let pts = vec![int_point(&[0, 0]), int_point(&[1, 1]), int_point(&[2, 2])];
        assert_eq!(affine_dim(&pts), 1);
    }

    #[test]
    fn barycentric_of_centroid() {
        let p = [int_point(&[0, 0]), int_point(&[3, 0]), int_point(&[0, 3])];
        let refs: Vec<&Point> = p.iter().collect();
        let l = barycentric(&refs, &int_point(&[1, 1])).unwrap();
        assert_eq!(l, vec![rat(1, 3), rat(1, 3), rat(1, 3)]);
    }
}
