//! Deterministic example complexes.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{Cell, CellComplex, Cube, CubicalComplex, Simplex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::geometry::{convex_hull_triangulation, int_point, linalg, rat, GeometricComplex, Point, Rational};

/// A generated complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GalleryItem {
    Simplicial(SimplicialComplex),
    Geometric(GeometricComplex),
    Cubical(CubicalComplex),
}

impl GalleryItem {
    /// The underlying simplicial complex, if simplicial.
    pub fn simplicial(&self) -> Option<&SimplicialComplex> {
        match self {
            GalleryItem::Simplicial(c) => Some(c),
            GalleryItem::Geometric(g) => Some(&g.complex),
            GalleryItem::Cubical(_) => None,
        }
    }
}

/// A gallery entry by name with integer parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GallerySpec {
    pub name: String,
    pub params: BTreeMap<String, i64>,
}

impl GallerySpec {
    pub fn new(name: &str) -> Self {
        GallerySpec { name: name.into(), params: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, value: i64) -> Self {
        self.params.insert(key.into(), value);
        self
    }

    fn get(&self, key: &str, default: Option<i64>) -> Result<i64> {
        self.params
            .get(key)
            .copied()
            .or(default)
            .ok_or_else(|| Error::BadParameters(format!("{} needs parameter {key}", self.name)))
    }

    fn count(&self, key: &str, default: Option<i64>, min: i64) -> Result<usize> {
        let v = self.get(key, default)?;
        if v < min {
            return Err(Error::BadParameters(format!("{key} = {v} is below {min}")));
        }
        Ok(v as usize)
    }
}

pub const NAMES: &[&str] = &[
    "simplex",
    "boundary_sphere",
    "cone",
    "dunce_hat",
    "bing_house",
    "grid",
    "tri_grid",
    "surface",
    "wheel",
    "lshape_2d",
    "lshape_3d",
    "random_convex",
    "random_subdivision",
    "random_star_ball",
    "staircase",
];

/// Builds the named complex.
pub fn generate(spec: &GallerySpec) -> Result<GalleryItem> {
    use GalleryItem::*;
    Ok(match spec.name.as_str() {
        "simplex" => Geometric(simplex(spec.count("d", None, 0)?)),
        "boundary_sphere" => Simplicial(boundary_sphere(spec.count("d", None, 1)?)),
        "cone" => Simplicial(cone(&boundary_sphere(spec.count("d", None, 1)?))),
        "dunce_hat" => Simplicial(dunce_hat()),
        "bing_house" => Geometric(bing_house()),
        "grid" => Cubical(grid(spec.count("m", None, 1)?, spec.count("n", None, 1)?)),
        "tri_grid" => {
            let pattern = match spec.get("pattern", Some(0))? {
                0 => Diagonal::Slash,
                1 => Diagonal::Backslash,
                p => return Err(Error::BadParameters(format!("pattern {p}"))),
            };
            Geometric(tri_grid(spec.count("m", None, 1)?, spec.count("n", None, 1)?, &|_, _| pattern))
        }
        "surface" => {
            let g = spec.count("g", None, 1)?;
            let mut pi: Vec<usize> = (0..g).collect();
            pi.shuffle(&mut ChaCha8Rng::seed_from_u64(spec.get("seed", Some(0))? as u64));
            Simplicial(surface_mg(g, &pi)?)
        }
        "wheel" => Simplicial(wheel(spec.count("k", None, 3)?)),
        "lshape_2d" => Geometric(lshape_2d().0),
        "lshape_3d" => Geometric(lshape_3d().0),
        "random_convex" => Geometric(random_convex(
            spec.count("n", None, 1)?,
            spec.count("d", Some(2), 1)?,
            spec.get("seed", Some(0))? as u64,
        )?),
        "random_subdivision" => Geometric(random_subdivision(
            spec.count("d", None, 1)?,
            spec.count("k", None, 0)?,
            spec.get("seed", Some(0))? as u64,
        )?),
        "random_star_ball" => Geometric(random_star_ball(spec.count("d", Some(2), 2)?, spec.get("seed", Some(0))? as u64)?),
        "staircase" => {
            let mut heights = Vec::new();
            while let Some(&h) = spec.params.get(&format!("h{}", heights.len())) {
                heights.push(h.max(0) as usize);
            }
            if heights.is_empty() {
                heights = random_partition(spec.count("n", None, 1)?, spec.get("seed", Some(0))? as u64);
            }
            Cubical(staircase(&heights)?)
        }
        other => return Err(Error::UnknownSpec(other.into())),
    })
}

/// The standard `d`-simplex in `R^d`: the origin (vertex 0) and the unit
/// vectors.
pub fn simplex(d: usize) -> GeometricComplex {
    let positions: BTreeMap<VertexId, Point> = (0..=d)
        .map(|i| {
            let p = (0..d).map(|j| if j + 1 == i { rat(1, 1) } else { rat(0, 1) }).collect();
            (i as VertexId, p)
        })
        .collect();
    GeometricComplex::new(SimplicialComplex::simplex_on(0..=d as VertexId), positions).expect("valid simplex")
}

/// `∂Δ^d` on the vertices `0..=d`.
pub fn boundary_sphere(d: usize) -> SimplicialComplex {
    SimplicialComplex::simplex_on(0..=d as VertexId).boundary().expect("a simplex is a pseudomanifold")
}

/// Cone with a new apex one above the largest vertex id.
pub fn cone(c: &SimplicialComplex) -> SimplicialComplex {
    let apex = c.vertices().last().map_or(0, |v| v + 1);
    c.cone(apex).expect("fresh apex")
}

/// An 8-vertex dunce hat: a triangle with boundary word `a a a⁻¹`, each
/// side cut into three edges.
pub fn dunce_hat() -> SimplicialComplex {
    const FACETS: [[VertexId; 3]; 17] = [
        [1, 2, 5], [1, 2, 7], [1, 2, 8], [1, 3, 4], [1, 3, 5], [1, 3, 6], [1, 4, 6], [1, 7, 8], [2, 3, 6],
        [2, 3, 7], [2, 3, 8], [2, 5, 6], [3, 4, 7], [3, 5, 8], [4, 5, 6], [4, 5, 8], [4, 7, 8],
    ];
    SimplicialComplex::from_vertex_lists(FACETS).expect("nonempty")
}

/// Unit squares of Bing's house in the box `[0,5]×[0,3]×[0,4]`, given by
/// the normal axis, its coordinate and the lower corner in the other two.
fn bing_squares() -> BTreeSet<(usize, i64, i64, i64)> {
    let (xs, ys, zs, floor) = (5, 3, 4, 2);
    let mut sq = BTreeSet::new();
    for a in 0..ys {
        for b in 0..zs {
            sq.insert((0, 0, a, b));
            sq.insert((0, xs, a, b));
        }
    }
    for a in 0..xs {
        for b in 0..zs {
            sq.insert((1, 0, a, b));
            sq.insert((1, ys, a, b));
        }
        for b in 0..ys {
            sq.insert((2, 0, a, b));
            sq.insert((2, zs, a, b));
            sq.insert((2, floor, a, b));
        }
    }
    // the tunnel into the upper room, entered from below
    sq.remove(&(2, 0, 1, 1));
    sq.remove(&(2, floor, 1, 1));
    for z in 0..floor {
        sq.extend([(0, 1, 1, z), (0, 2, 1, z), (1, 1, 1, z), (1, 2, 1, z)]);
        // wall tying the tunnel to the side of the lower room
        sq.insert((1, 1, 0, z));
    }
    // the tunnel into the lower room, entered from above
    sq.remove(&(2, zs, 3, 1));
    sq.remove(&(2, floor, 3, 1));
    for z in floor..zs {
        sq.extend([(0, 3, 1, z), (0, 4, 1, z), (1, 1, 3, z), (1, 2, 3, z)]);
        sq.insert((1, 1, 4, z));
    }
    sq
}

/// Bing's house with two rooms, each unit square cut along a diagonal.
pub fn bing_house() -> GeometricComplex {
    let mut corners: Vec<[[i64; 3]; 4]> = Vec::new();
    for (axis, fixed, a, b) in bing_squares() {
        let other: Vec<usize> = (0..3).filter(|&i| i != axis).collect();
        let corner = |da: i64, db: i64| {
            let mut p = [0i64; 3];
            p[axis] = fixed;
            p[other[0]] = a + da;
            p[other[1]] = b + db;
            p
        };
        corners.push([corner(0, 0), corner(1, 0), corner(1, 1), corner(0, 1)]);
    }
    let points: BTreeSet<[i64; 3]> = corners.iter().flatten().copied().collect();
    let id: BTreeMap<[i64; 3], VertexId> = points.iter().enumerate().map(|(i, p)| (*p, i as VertexId)).collect();
    let mut facets = Vec::new();
    for c in &corners {
        facets.push([id[&c[0]], id[&c[1]], id[&c[2]]]);
        facets.push([id[&c[0]], id[&c[2]], id[&c[3]]]);
    }
    let complex = SimplicialComplex::from_vertex_lists(facets).expect("nonempty");
    let positions = id.iter().map(|(p, v)| (*v, int_point(p))).collect();
    GeometricComplex::new(complex, positions).expect("consistent")
}

/// The cubical `m × n` grid on `[0,m]×[0,n]`.
pub fn grid(m: usize, n: usize) -> CubicalComplex {
    CellComplex::closure(
        (0..m as i64).flat_map(|i| (0..n as i64).map(move |j| Cube::new(&[i, j], &[true, true]))),
    )
}

/// The cubical complex of a Young diagram: column `i` holds the squares
/// `[i,i+1]×[j,j+1]` for `j < heights[i]`; heights must not increase.
pub fn staircase(heights: &[usize]) -> Result<CubicalComplex> {
    if heights.is_empty() || heights[0] == 0 {
        return Err(Error::BadParameters("empty staircase".into()));
    }
    if heights.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::BadParameters("staircase heights must not increase".into()));
    }
    Ok(CellComplex::closure(heights.iter().enumerate().flat_map(|(i, &h)| {
        (0..h as i64).map(move |j| Cube::new(&[i as i64, j], &[true, true]))
    })))
}

fn random_partition(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut left = n;
    let mut out = Vec::new();
    let mut cap = n;
    while left > 0 {
        let h = rng.gen_range(1..=cap.min(left));
        out.push(h);
        left -= h;
        cap = h;
    }
    out
}

/// Diagonal used to cut a grid square.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diagonal {
    /// from the lower left to the upper right corner
    Slash,
    /// from the upper left to the lower right corner
    Backslash,
}

fn grid_id(x: usize, y: usize, m: usize) -> VertexId {
    (y * (m + 1) + x) as VertexId
}

/// Triangles of square `(x, y)`, left one first.
fn square_triangles(x: usize, y: usize, m: usize, d: Diagonal) -> [[VertexId; 3]; 2] {
    let v = |dx: usize, dy: usize| grid_id(x + dx, y + dy, m);
    match d {
        Diagonal::Backslash => [[v(0, 0), v(0, 1), v(1, 0)], [v(0, 1), v(1, 1), v(1, 0)]],
        Diagonal::Slash => [[v(0, 0), v(0, 1), v(1, 1)], [v(0, 0), v(1, 0), v(1, 1)]],
    }
}

/// The `m × n` grid with each square `(x, y)` cut by `pattern(x, y)`;
/// vertex `(x, y)` has id `y(m+1) + x`.
pub fn tri_grid(m: usize, n: usize, pattern: &dyn Fn(usize, usize) -> Diagonal) -> GeometricComplex {
    let mut facets = Vec::new();
    for y in 0..n {
        for x in 0..m {
            facets.extend(square_triangles(x, y, m, pattern(x, y)));
        }
    }
    let complex = SimplicialComplex::from_vertex_lists(facets).expect("nonempty");
    let positions = (0..=n)
        .flat_map(|y| (0..=m).map(move |x| (grid_id(x, y, m), int_point(&[x as i64, y as i64]))))
        .collect();
    GeometricComplex::new(complex, positions).expect("consistent")
}

/// The closed genus-`g` surface with `20g` triangles glued from a strip of
/// `4g` squares and `g` prisms; `pi` pairs hole `i` with hole `g + pi[i]`.
pub fn surface_mg(g: usize, pi: &[usize]) -> Result<SimplicialComplex> {
    let mut check: Vec<usize> = pi.to_vec();
    check.sort_unstable();
    if g == 0 || check != (0..g).collect::<Vec<_>>() {
        return Err(Error::BadParameters("pi must be a permutation of 0..g".into()));
    }
    let m = 4 * g;
    let mut strip: Vec<[VertexId; 3]> = Vec::new();
    for x in 0..m {
        let d = if x < 2 * g { Diagonal::Backslash } else { Diagonal::Slash };
        strip.extend(square_triangles(x, 0, m, d));
    }
    strip.pop();
    let disk = SimplicialComplex::from_vertex_lists(strip.iter().copied()).expect("nonempty");
    let apex = grid_id(0, 2, m);
    let sphere = disk.union(&disk.boundary()?.cone(apex)?);
    // holes a_1 .. a_2g, numbered from 1 left to right
    let hole = |j: usize| -> Simplex {
        let a = if j <= g { 4 * j - 2 } else { 4 * j - 1 };
        Simplex::new(strip[a - 1])
    };
    let mut facets: BTreeSet<Simplex> = sphere.facets().into_iter().collect();
    for j in 1..=2 * g {
        facets.remove(&hole(j));
    }
    let p = |x: usize, y: usize| grid_id(x, y, m);
    for i in 0..g {
        // hole i sits in square 2i (backslash, right triangle), matched hole in
        // square 2(g + pi[i]) + 1 (slash, left triangle)
        let x = 2 * i;
        let ours = [p(x, 1), p(x + 1, 1), p(x + 1, 0)];
        let y = 2 * (g + pi[i]) + 1;
        let theirs = [p(y + 1, 1), p(y, 1), p(y, 0)];
        for k in 0..3 {
            let (a, b) = (ours[k], ours[(k + 1) % 3]);
            let (c, d) = (theirs[k], theirs[(k + 1) % 3]);
            facets.insert(Simplex::new([a, b, d]));
            facets.insert(Simplex::new([a, c, d]));
        }
    }
    Ok(SimplicialComplex::closure(facets))
}

/// A disk: vertex 0 coned over the `k`-cycle `1..=k`.
pub fn wheel(k: usize) -> SimplicialComplex {
    let k = k as VertexId;
    SimplicialComplex::from_vertex_lists((1..=k).map(|i| [0, i, i % k + 1])).expect("nonempty")
}

const L_FACETS: [[VertexId; 3]; 6] = [[0, 1, 4], [0, 4, 3], [3, 4, 6], [3, 6, 5], [1, 2, 7], [1, 7, 4]];
const L_COORDS: [[i64; 2]; 8] = [[0, 0], [1, 0], [2, 0], [0, 1], [1, 1], [0, 2], [1, 2], [2, 1]];

/// The L-shaped hexagon `[0,2]×[0,1] ∪ [0,1]×[0,2]` in six triangles, with a
/// point of its kernel.
pub fn lshape_2d() -> (GeometricComplex, Point) {
    let coords: Vec<&[i64]> = L_COORDS.iter().map(|c| c.as_slice()).collect();
    let facets: Vec<&[VertexId]> = L_FACETS.iter().map(|f| f.as_slice()).collect();
    (GeometricComplex::from_int(&facets, &coords).expect("valid"), alloc::vec![rat(1, 2), rat(1, 2)])
}

/// The L-hexagon times `[0,1]`, each triangular prism cut into three
/// tetrahedra along increasing vertex ids, with a kernel point.
pub fn lshape_3d() -> (GeometricComplex, Point) {
    let top = |v: VertexId| v + 8;
    let mut facets = Vec::new();
    for f in L_FACETS {
        let mut t = f;
        t.sort_unstable();
        let [a, b, c] = t;
        facets.push([a, b, c, top(c)]);
        facets.push([a, b, top(b), top(c)]);
        facets.push([a, top(a), top(b), top(c)]);
    }
    let complex = SimplicialComplex::from_vertex_lists(facets).expect("nonempty");
    let positions = (0..16u32)
        .map(|v| {
            let c = L_COORDS[(v % 8) as usize];
            (v, int_point(&[c[0], c[1], (v / 8) as i64]))
        })
        .collect();
    (GeometricComplex::new(complex, positions).expect("valid"), alloc::vec![rat(1, 2), rat(1, 2), rat(1, 2)])
}

/// A triangulated convex polytope on `n` random integer points in `R^d`
/// (points inside the running hull are dropped).
pub fn random_convex(n: usize, d: usize, seed: u64) -> Result<GeometricComplex> {
    if n < d + 1 {
        return Err(Error::BadParameters(format!("{n} points cannot span R^{d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let points: Vec<Point> =
            (0..n).map(|_| (0..d).map(|_| rat(rng.gen_range(-20..=20), 1)).collect()).collect();
        let Ok(simplices) = convex_hull_triangulation(&points) else { continue };
        let complex = SimplicialComplex::from_vertex_lists(
            simplices.iter().map(|s| s.iter().map(|&i| i as VertexId).collect::<Vec<_>>()),
        )?;
        let positions = points.into_iter().enumerate().map(|(i, p)| (i as VertexId, p)).collect();
        return GeometricComplex::new(complex, positions);
    }
    Err(Error::RetryBudgetExceeded(64))
}

/// The standard `Δ^d` (see [`simplex`]) after `k` random stellar moves, each placing a new vertex inside
/// a random facet or on a random edge.
pub fn random_subdivision(d: usize, k: usize, seed: u64) -> Result<GeometricComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = simplex(d);
    let mut faces: BTreeSet<Simplex> = base.complex.faces().clone();
    let mut pos: BTreeMap<VertexId, Point> = base.positions().clone();
    for step in 0..k {
        let v = (d + 1 + step) as VertexId;
        let current = SimplicialComplex::from_closed_set(faces.clone());
        let on_edge = d > 1 && rng.gen_bool(0.3);
        let target: Simplex = if on_edge {
            let edges: Vec<Simplex> = current.iter().filter(|f| f.len() == 2).cloned().collect();
            edges[rng.gen_range(0..edges.len())].clone()
        } else {
            let facets = current.facets();
            facets[rng.gen_range(0..facets.len())].clone()
        };
        let weights: Vec<Rational> = (0..target.len()).map(|_| rat(rng.gen_range(1..=4), 1)).collect();
        let total: Rational = weights.iter().sum();
        let mut p: Point = alloc::vec![rat(0, 1); d];
        for (u, w) in target.vertices().iter().zip(&weights) {
            p = linalg::add(&p, &linalg::scale(&pos[u], &(w / &total)));
        }
        pos.insert(v, p);
        // stellar subdivision of `target`
        let star: Vec<Simplex> = faces.iter().filter(|f| target.is_subset(f)).cloned().collect();
        for f in &star {
            faces.remove(f);
        }
        for f in &star {
            for u in target.vertices() {
                if let Some(rest) = f.without_vertex(*u) {
                    for g in rest.all_faces() {
                        faces.insert(g.with_vertex(v));
                        faces.insert(g);
                    }
                }
            }
        }
        faces.insert(Simplex::vertex(v));
    }
    GeometricComplex::new(SimplicialComplex::from_closed_set(faces), pos)
}

const RAYS_2D: [[i64; 2]; 16] = [
    [1, 0], [2, 1], [1, 1], [1, 2], [0, 1], [-1, 2], [-1, 1], [-2, 1],
    [-1, 0], [-2, -1], [-1, -1], [-1, -2], [0, -1], [1, -2], [1, -1], [2, -1],
];

/// A ball coned from vertex 0 at the origin over a sphere whose vertices
/// sit on fixed rays at random integer radii, so it is star-shaped about
/// the origin. In the plane the sphere is a polygon on 5 to 8 of 16 rays;
/// in space it is an octahedron on the coordinate axes with some octant
/// triangles split by a vertex on the diagonal ray.
pub fn random_star_ball(d: usize, seed: u64) -> Result<GeometricComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut facets: Vec<Vec<VertexId>> = Vec::new();
    let mut positions: BTreeMap<VertexId, Point> = BTreeMap::new();
    positions.insert(0, int_point(&alloc::vec![0; d]));
    match d {
        2 => {
            let rays = loop {
                let k = rng.gen_range(5..=8);
                let mut pick: Vec<usize> = (0..16).collect();
                pick.shuffle(&mut rng);
                pick.truncate(k);
                pick.sort_unstable();
                // consecutive rays less than a half turn apart
                if (0..k).all(|i| (pick[(i + 1) % k] + 16 - pick[i]) % 16 < 8) {
                    break pick;
                }
            };
            let k = rays.len();
            for (i, &r) in rays.iter().enumerate() {
                let s = rng.gen_range(1..=4);
                positions.insert(i as VertexId + 1, int_point(&[RAYS_2D[r][0] * s, RAYS_2D[r][1] * s]));
                facets.push(alloc::vec![0, i as VertexId + 1, ((i + 1) % k) as VertexId + 1]);
            }
        }
        3 => {
            for axis in 0..3 {
                for (j, sign) in [1i64, -1].into_iter().enumerate() {
                    let mut p = [0i64; 3];
                    p[axis] = sign * rng.gen_range(2..=4);
                    positions.insert((2 * axis + j) as VertexId + 1, int_point(&p));
                }
            }
            let mut next = 7;
            for a in [1, 2] {
                for b in [3, 4] {
                    for c in [5, 6] {
                        if rng.gen_bool(0.5) {
                            facets.push(alloc::vec![0, a, b, c]);
                            continue;
                        }
                        let t = [rat(1, 3), rat(1, 2), rat(2, 1)][rng.gen_range(0..3)].clone();
                        let sign = |v: VertexId| if v % 2 == 1 { rat(1, 1) } else { rat(-1, 1) };
                        positions.insert(next, alloc::vec![&t * sign(a), &t * sign(b), &t * sign(c)]);
                        facets.extend([alloc::vec![0, a, b, next], alloc::vec![0, b, c, next], alloc::vec![0, a, c, next]]);
                        next += 1;
                    }
                }
            }
        }
        _ => return Err(Error::BadParameters(format!("star balls in dimension {d}"))),
    }
    GeometricComplex::new(SimplicialComplex::from_vertex_lists(facets)?, positions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{is_convex_support, is_star_shaped};

    #[test]
    fn dunce_hat_counts() {
        let d = dunce_hat();
        assert_eq!(d.f_vector(), alloc::vec![8, 24, 17]);
        assert_eq!(d.euler_characteristic(), 1);
        assert!(d.free_faces().is_empty());
    }

    #[test]
    fn bing_house_counts() {
        let b = bing_house();
        assert_eq!(b.complex.euler_characteristic(), 1);
        assert!(b.complex.free_faces().is_empty());
        assert_eq!(b.complex.dim(), Some(2));
    }

    #[test]
    fn grid_f_vector() {
        for (m, n) in [(1, 1), (2, 3), (4, 2)] {
            assert_eq!(grid(m, n).f_vector(), alloc::vec![(m + 1) * (n + 1), m * (n + 1) + n * (m + 1), m * n]);
        }
    }

    #[test]
    fn surfaces_have_20g_triangles() {
        for g in 1..=3 {
            let pi: Vec<usize> = (0..g).rev().collect();
            let s = surface_mg(g, &pi).unwrap();
            assert_eq!(s.f_vector()[2], 20 * g);
            assert_eq!(s.euler_characteristic(), 2 - 2 * g as i64);
            assert!(s.boundary().unwrap().is_empty());
        }
    }

    #[test]
    fn lshapes_are_star_shaped_not_convex() {
        let (g, x) = lshape_2d();
        assert!(is_star_shaped(&g, &x).unwrap());
        assert!(!is_convex_support(&g).unwrap());
        let (g, x) = lshape_3d();
        g.check_facets().unwrap();
        assert!(is_star_shaped(&g, &x).unwrap());
        assert!(!is_convex_support(&g).unwrap());
    }

    #[test]
    fn random_complexes_are_convex() {
        for seed in 0..4 {
            let g = random_convex(8, 2, seed).unwrap();
            assert!(is_convex_support(&g).unwrap());
            let s = random_subdivision(3, 6, seed).unwrap();
            s.check_facets().unwrap();
            assert!(is_convex_support(&s).unwrap());
            assert_eq!(s.complex.euler_characteristic(), 1);
        }
    }

    #[test]
    fn unknown_names_and_bad_parameters() {
        assert!(matches!(generate(&GallerySpec::new("klein")), Err(Error::UnknownSpec(_))));
        assert!(matches!(generate(&GallerySpec::new("grid")), Err(Error::BadParameters(_))));
        let st = generate(&GallerySpec::new("staircase").with("h0", 2).with("h1", 1)).unwrap();
        assert!(matches!(st, GalleryItem::Cubical(_)));
    }
}
