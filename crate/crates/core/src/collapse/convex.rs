//! Collapses of derived subdivisions of convex complexes: elimination in a
//! derived order, endo-collapses, and the transfer of a collapse of `C` to
//! `sd D` for a subdivision `D` of `C`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::engine::eliminate_vertices;
use super::incidence::Incidence;
use super::search::{collapse_search, CollapseTarget};
use super::{CollapseCertificate, SearchBudget};
use crate::complex::{Cell, Simplex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::geometry::{
    generic_direction, is_convex_support, linalg, GeometricComplex, Point, ProjectiveMap, Rational,
};
use crate::subdivision::{derived_neighborhood, derived_order, sd, sd_geometric, DerivedComplex};
use crate::verify;

const DIRECTION_ATTEMPTS: usize = 64;
const PERTURBATION_ATTEMPTS: usize = 16;

fn failed(e: verify::Rejection) -> Error {
    Error::VerificationFailed(format!("{e}"))
}

/// Which collapse of a derived neighborhood to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvexMode {
    /// `N(R(C, H̄₊), C)` collapses to a point.
    A,
    /// `N(R(C, H̄₊), C)` collapses onto `N(R(∂C, H̄₊), ∂C)`.
    B,
    /// `sd C` collapses onto `sd ∂C − F` for a facet `F` of `sd ∂C`.
    C,
}

/// A collapse of a subcomplex `source` of `sd.complex`.
#[derive(Clone, Debug)]
pub struct SplitCollapse {
    pub sd: DerivedComplex,
    pub source: SimplicialComplex,
    pub cert: CollapseCertificate<Simplex>,
    /// Mode C only: the facet of `sd ∂C` that is removed.
    pub removed: Option<Simplex>,
}

/// Projects points spanning a `k`-flat onto `k` coordinates, keeping them
/// affinely independent.
fn chart(points: &BTreeMap<VertexId, Point>, k: usize) -> Result<BTreeMap<VertexId, Point>> {
    let n = points.values().next().map(|p| p.len()).unwrap_or(0);
    let all: Vec<Point> = points.values().cloned().collect();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let pick = |p: &Point| -> Point { (0..n).filter(|i| mask & (1 << i) != 0).map(|i| p[i].clone()).collect() };
        let proj: Vec<Point> = all.iter().map(pick).collect();
        if linalg::affine_dim(&proj) == k {
            return Ok(points.iter().map(|(v, p)| (*v, pick(p))).collect());
        }
    }
    Err(Error::DimensionMismatch(format!("points do not span a {k}-flat")))
}

fn mode_c(g: &GeometricComplex, rng: &mut ChaCha8Rng, budget: SearchBudget) -> Result<SplitCollapse> {
    let d = g.complex.dim().ok_or(Error::EmptyInput)?;
    if d == 0 || d != g.ambient_dim() {
        return Err(Error::BadParameters(format!("expected a full-dimensional complex, got dimension {d}")));
    }
    let nu = generic_direction(g, rng, DIRECTION_ATTEMPTS)?;
    let height = |v: VertexId| linalg::dot(g.position(v), &nu);
    let mut verts = g.complex.vertices();
    verts.sort_by_key(|&v| height(v));
    let seed: Vec<Simplex> = verts.iter().map(|&v| Simplex::vertex(v)).collect();
    let order = derived_order(&g.complex, &seed)?;
    let s = sd(&g.complex);
    let ids: Vec<VertexId> = order.iter().map(|f| s.vertex_of(f).expect("face of C")).collect();
    let v0 = *verts.last().expect("nonempty");
    let v0s = s.vertex_of(&Simplex::vertex(v0)).expect("vertex of C");
    if *ids.last().expect("nonempty") != v0s {
        return Err(Error::OracleInconsistency("the highest vertex is not last in the derived order".into()));
    }
    let boundary = s.subdivide_subcomplex(&g.complex.boundary()?)?;

    let (first, removed) = if d == 1 {
        let link = s.complex.vertex_link(v0s)?;
        let p = link.vertices()[0];
        (alloc::vec![(Simplex::vertex(v0s), Simplex::new([v0s, p]))], Simplex::vertex(v0s))
    } else {
        let lk = g.complex.vertex_link(v0)?;
        let p0 = g.position(v0);
        let mut projected = BTreeMap::new();
        for u in lk.vertices() {
            let y = linalg::sub(g.position(u), p0);
            let t = -linalg::dot(&y, &nu);
            if !t.is_positive() {
                return Err(Error::NotConvex);
            }
            projected.insert(u, linalg::scale(&y, &(Rational::from_integer(1.into()) / t)));
        }
        let lg = GeometricComplex::new(lk, chart(&projected, d - 1)?)?;
        let inner = mode_c(&lg, rng, budget)?;
        let name = |w: VertexId| s.vertex_of(&inner.sd.carrier(w).with_vertex(v0)).expect("face of the star");
        let lift = |f: &Simplex| f.map(name).with_vertex(v0s);
        let steps = inner.cert.steps.iter().map(|(a, b)| (lift(a), lift(b))).collect();
        (steps, lift(inner.removed.as_ref().expect("mode C")))
    };
    let mut c_f: BTreeSet<Simplex> = boundary.faces().clone();
    if !c_f.remove(&removed) {
        return Err(Error::FaceNotInComplex(format!("{removed}")));
    }
    let c_f = SimplicialComplex::from_closed_set(c_f);
    let mut faces = s.complex.faces().clone();
    for (a, b) in &first {
        faces.remove(a);
        faces.remove(b);
    }
    let sigma1 = SimplicialComplex::from_closed_set(faces);
    let rest: Vec<VertexId> = ids[1..ids.len() - 1].iter().rev().copied().collect();
    let (more, end) = eliminate_vertices(&sigma1, &rest, &c_f, budget)?;
    if end != c_f {
        return Err(Error::VerificationFailed("elimination did not end at sd ∂C − F".into()));
    }
    let mut steps = first;
    steps.extend(more);
    let cert = CollapseCertificate { steps, target: c_f.facets() };
    verify::check_collapse(&s.complex, &cert, Some(&c_f)).map_err(failed)?;
    Ok(SplitCollapse { source: s.complex.clone(), sd: s, cert, removed: Some(removed) })
}

/// Largest `|P|²` over positive projections of `h` onto the cones over the
/// faces of `sigma`, with the face attaining it; `None` on a tie.
fn cone_projection(
    sigma: &Simplex,
    g: &GeometricComplex,
    h: &[Rational],
    cache: &mut BTreeMap<Simplex, Option<Rational>>,
) -> Result<(Rational, Simplex)> {
    let mut best: Option<(Rational, Simplex)> = None;
    let mut tie = false;
    for f in sigma.all_faces() {
        let value = match cache.get(&f) {
            Some(v) => v.clone(),
            None => {
                let pts = g.face_points(&f);
                let gram: Vec<Vec<Rational>> =
                    pts.iter().map(|a| pts.iter().map(|b| linalg::dot(a, b)).collect()).collect();
                let rhs: Vec<Rational> = pts.iter().map(|a| linalg::dot(a, h)).collect();
                let v = linalg::solve(gram, rhs.clone()).and_then(|lam| {
                    lam.iter().all(|l| l.is_positive()).then(|| lam.iter().zip(&rhs).map(|(l, r)| l * r).sum())
                });
                cache.insert(f.clone(), v.clone());
                v
            }
        };
        let Some(value) = value else { continue };
        match &best {
            Some((b, _)) if *b > value => {}
            Some((b, _)) if *b == value => tie = true,
            _ => {
                tie = false;
                best = Some((value, f));
            }
        }
    }
    if tie {
        return Err(Error::GenericityFailure(format!("two closest faces in {sigma}")));
    }
    best.ok_or_else(|| Error::GenericityFailure(format!("{sigma} faces away from the pole")))
}

fn mode_ab(g: &GeometricComplex, h: &[Rational], mode: ConvexMode, budget: SearchBudget) -> Result<SplitCollapse> {
    let mut heights = BTreeMap::new();
    for (v, p) in g.positions() {
        let t = linalg::dot(p, h);
        if t.is_zero() {
            return Err(Error::GenericityFailure(format!("vertex {v} lies on the equator")));
        }
        heights.insert(*v, t.is_positive());
    }
    let upper = |f: &Simplex| f.vertices().iter().all(|v| heights[v]);
    let r = g.complex.filter_closed(upper);
    if r.is_empty() {
        return Err(Error::BadParameters("no face lies in the open hemisphere".into()));
    }
    let s = sd(&g.complex);
    let n = derived_neighborhood(&s, &r)?;

    let mut cache = BTreeMap::new();
    let mut closest: Vec<(Rational, Simplex)> = Vec::new();
    for f in r.iter() {
        let (value, carrier) = cone_projection(f, g, h, &mut cache)?;
        if &carrier == f {
            closest.push((value, f.clone()));
        }
    }
    closest.sort_by(|a, b| b.0.cmp(&a.0));
    if closest.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::GenericityFailure("two faces at equal distance from the pole".into()));
    }
    let seed: Vec<Simplex> = closest.into_iter().map(|(_, f)| f).collect();
    let order = derived_order(&g.complex, &seed)?;
    let ids: Vec<VertexId> =
        order.iter().map(|f| s.vertex_of(f).expect("face of C")).filter(|v| n.has_vertex(*v)).collect();

    let keep = match mode {
        ConvexMode::A => SimplicialComplex::empty(),
        ConvexMode::B => {
            let bd = g.complex.boundary()?;
            let sb = sd(&bd);
            let nb = derived_neighborhood(&sb, &bd.filter_closed(upper))?;
            nb.relabel(|w| s.vertex_of(sb.carrier(w)).expect("boundary face"))
        }
        ConvexMode::C => unreachable!(),
    };
    let last = ids[0];
    let rest: Vec<VertexId> = ids[1..].iter().rev().copied().collect();
    let (steps, end) = eliminate_vertices(&n, &rest, &keep, budget)?;
    let want = match mode {
        ConvexMode::A => SimplicialComplex::simplex_on([last]),
        _ => keep,
    };
    if end != want {
        return Err(Error::VerificationFailed("elimination ended at the wrong complex".into()));
    }
    let cert = CollapseCertificate { steps, target: want.facets() };
    verify::check_collapse(&n, &cert, Some(&want)).map_err(failed)?;
    Ok(SplitCollapse { sd: s, source: n, cert, removed: None })
}

/// Collapses a derived neighborhood of a convex complex by eliminating
/// vertices in a derived order.
///
/// Modes A and B read `g` as a spherical complex (vertex positions are rays)
/// and `pole` as the center of the closed hemisphere `H̄₊`; projective maps
/// fixing the pole are tried when distances tie. Mode C takes a convex
/// complex in `R^d`, or a spherical one inside the open hemisphere when a
/// pole is given.
pub fn convex_split_collapse(
    g: &GeometricComplex,
    pole: Option<&[Rational]>,
    mode: ConvexMode,
    budget: SearchBudget,
) -> Result<SplitCollapse> {
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    match (mode, pole) {
        (ConvexMode::C, None) => mode_c(g, &mut rng, budget),
        (ConvexMode::C, Some(h)) => {
            let mut flat = BTreeMap::new();
            for (v, p) in g.positions() {
                let t = linalg::dot(p, h);
                if !t.is_positive() {
                    return Err(Error::BadParameters(format!("vertex {v} is outside the open hemisphere")));
                }
                flat.insert(*v, linalg::scale(p, &(Rational::from_integer(1.into()) / t)));
            }
            let k = g.ambient_dim() - 1;
            mode_c(&GeometricComplex::new(g.complex.clone(), chart(&flat, k)?)?, &mut rng, budget)
        }
        (_, None) => Err(Error::BadParameters("modes A and B need a hemisphere".into())),
        (_, Some(h)) => {
            let mut cur = g.clone();
            for _ in 0..PERTURBATION_ATTEMPTS {
                match mode_ab(&cur, h, mode, budget) {
                    Err(Error::GenericityFailure(_)) => {
                        let m = ProjectiveMap::random_fixing(h, &mut rng);
                        let moved = g.positions().iter().map(|(v, p)| (*v, m.apply(p))).collect();
                        cur = GeometricComplex::new(g.complex.clone(), moved)?;
                    }
                    other => return other,
                }
            }
            Err(Error::GenericityFailure(format!("{PERTURBATION_ATTEMPTS} perturbations")))
        }
    }
}

fn facet_containing(c: &SimplicialComplex, f: &Simplex) -> Result<Simplex> {
    let mut it = c.facets().into_iter().filter(|x| f.is_subset(x));
    match (it.next(), it.next()) {
        (Some(x), None) => Ok(x),
        _ => Err(Error::NotManifold(format!("{f} is not a boundary facet"))),
    }
}

/// Moves the unmatched facet of an acyclic matching from `from` to `to`
/// along a gradient path between top cells, and replays the result.
fn reroute(
    start: &SimplicialComplex,
    pairs: &[(Simplex, Simplex)],
    from: &Simplex,
    to: &Simplex,
    end: &SimplicialComplex,
) -> Option<Vec<(Simplex, Simplex)>> {
    let up: BTreeMap<&Simplex, &Simplex> = pairs.iter().map(|(a, b)| (a, b)).collect();
    let top = from.len();
    let mut parent: BTreeMap<Simplex, (Simplex, Simplex)> = BTreeMap::new();
    let mut queue = VecDeque::from([from.clone()]);
    let mut seen = BTreeSet::from([from.clone()]);
    while let Some(x) = queue.pop_front() {
        if &x == to {
            break;
        }
        for r in x.boundary() {
            if let Some(&y) = up.get(&r) {
                if y.len() == top && *y != x && seen.insert(y.clone()) {
                    parent.insert(y.clone(), (x.clone(), r.clone()));
                    queue.push_back(y.clone());
                }
            }
        }
    }
    if !seen.contains(to) {
        return None;
    }
    let mut pairs: BTreeMap<Simplex, Simplex> = pairs.iter().cloned().collect();
    let mut y = to.clone();
    while &y != from {
        let (x, r) = parent[&y].clone();
        pairs.insert(r, x.clone());
        y = x;
    }
    let mut inc = Incidence::from_complex(start);
    let matching = pairs.iter().filter_map(|(a, b)| Some((inc.index(a)?, inc.index(b)?))).collect();
    let steps = inc.follow_matching(&matching);
    if inc.live() != end.len() {
        return None;
    }
    Some(steps.iter().map(|&(i, j)| (inc.elem(i).clone(), inc.elem(j).clone())).collect())
}

/// `sd C − Δ ↘ sd ∂C` for a convex complex `C` in `R^d` and a facet `Δ` of
/// `sd C` (defaults to the one the construction frees first).
pub fn endo_collapse_convex(
    g: &GeometricComplex,
    delta: Option<&Simplex>,
    budget: SearchBudget,
) -> Result<(DerivedComplex, Simplex, CollapseCertificate<Simplex>)> {
    let sc = mode_c(g, &mut ChaCha8Rng::seed_from_u64(budget.seed), budget)?;
    let s = sc.sd;
    let f = sc.removed.expect("mode C");
    let delta_f = facet_containing(&s.complex, &f)?;
    let end = s.subdivide_subcomplex(&g.complex.boundary()?)?;
    let pairs: Vec<(Simplex, Simplex)> =
        sc.cert.steps.iter().filter(|(a, b)| !(a == &f && b == &delta_f)).cloned().collect();
    if pairs.len() + 1 != sc.cert.steps.len() {
        return Err(Error::VerificationFailed("the removed boundary facet is not freed by its facet".into()));
    }
    let delta = delta.cloned().unwrap_or_else(|| delta_f.clone());
    if !s.complex.facets().contains(&delta) {
        return Err(Error::FaceNotInComplex(format!("{delta}")));
    }
    let start = s.complex.delete_face(&delta)?;
    let steps = if delta == delta_f {
        pairs
    } else {
        match reroute(&start, &pairs, &delta_f, &delta, &end) {
            Some(st) => st,
            None => collapse_search(&start, &CollapseTarget::Complex(end.clone()), budget)?.steps,
        }
    };
    let cert = CollapseCertificate { steps, target: end.facets() };
    verify::check_collapse(&start, &cert, Some(&end)).map_err(failed)?;
    Ok((s, delta, cert))
}

/// A facet-deleted manifold collapsing onto its boundary, or to a point when
/// closed, found by search.
pub fn endo_collapse(c: &SimplicialComplex, sigma: &Simplex, budget: SearchBudget) -> Result<CollapseCertificate<Simplex>> {
    if !c.facets().contains(sigma) {
        return Err(Error::FaceNotInComplex(format!("{sigma}")));
    }
    let boundary = c.boundary()?;
    let start = c.delete_face(sigma)?;
    let target = if boundary.is_empty() { CollapseTarget::Point } else { CollapseTarget::Complex(boundary) };
    collapse_search(&start, &target, budget)
}

/// A subdivision `D` of a complex `C`: each vertex of `D` names the face of
/// `C` (as a vertex set) whose relative interior contains it. Vertices of `C`
/// keep their ids in `D`.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: GeometricComplex,
    pub carrier: BTreeMap<VertexId, Simplex>,
}

impl Subdivision {
    /// Carriers computed from the geometry of a simplicial `c`.
    pub fn from_geometry(c: &GeometricComplex, d: GeometricComplex) -> Result<Self> {
        let mut carrier = BTreeMap::new();
        for (v, p) in d.positions() {
            let mut found = None;
            for f in c.complex.facets() {
                let pts = c.face_points(&f);
                if let Some(bc) = linalg::barycentric(&pts, p) {
                    if bc.iter().all(|x| !x.is_negative()) {
                        let verts = f.vertices().iter().zip(&bc).filter(|(_, x)| x.is_positive()).map(|(u, _)| *u);
                        found = Some(Simplex::new(verts));
                        break;
                    }
                }
            }
            carrier.insert(*v, found.ok_or_else(|| Error::CarrierMissing(format!("vertex {v}")))?);
        }
        Ok(Subdivision { complex: d, carrier })
    }

    /// The barycentric subdivision of `c`, with the barycenters of vertices
    /// keeping the vertex ids.
    pub fn derived(c: &GeometricComplex) -> Result<Self> {
        let s = sd_geometric(c);
        let rename = |w: VertexId| -> VertexId {
            let f = s.carrier(w);
            if f.len() == 1 { f.vertices()[0] } else { w + OFFSET }
        };
        let offset_ok = c.complex.vertices().into_iter().all(|v| v < OFFSET);
        if !offset_ok {
            return Err(Error::BadParameters("vertex ids too large".into()));
        }
        let complex = s.complex.relabel(rename);
        let pos = s.positions().expect("geometric").iter().map(|(w, p)| (rename(*w), p.clone())).collect();
        let carrier = s.carriers().iter().map(|(w, f)| (rename(*w), f.clone())).collect();
        Ok(Subdivision { complex: GeometricComplex::new(complex, pos)?, carrier })
    }
}

const OFFSET: VertexId = 1 << 20;

/// Smallest face of the poset containing `u`.
fn smallest_face<'a>(faces: &'a BTreeSet<Simplex>, u: &Simplex) -> Option<&'a Simplex> {
    faces.iter().filter(|f| u.is_subset(f)).min_by_key(|f| f.len())
}

struct Transfer<'a> {
    d: &'a Subdivision,
    sdd: DerivedComplex,
    /// D-face → smallest face of C containing it.
    carrier: BTreeMap<Simplex, Simplex>,
}

impl Transfer<'_> {
    fn region(&self, x: &Simplex) -> SimplicialComplex {
        self.d.complex.complex.filter_closed(|f| self.carrier[f].is_subset(x))
    }

    /// `R(sd D, x) − top ↘ R(sd D, ∂x)` in the ids of `sd D`.
    fn endo(&self, x: &Simplex, region: &SimplicialComplex, top: &Simplex, budget: SearchBudget) -> Result<Vec<(Simplex, Simplex)>> {
        let k = region.dim().expect("nonempty");
        let pts = region.vertices().into_iter().map(|v| (v, self.d.complex.position(v).clone())).collect();
        let g = GeometricComplex::new(region.clone(), chart(&pts, k)?)?;
        let local = sd(&region.clone());
        let to_local = |w: VertexId| local.vertex_of(self.sdd.carrier(w)).expect("face of the region");
        let (s, _, cert) = endo_collapse_convex(&g, Some(&top.map(to_local)), budget)
            .map_err(|e| match e {
                Error::NotConvex => Error::NotConvex,
                other => Error::VerificationFailed(format!("endo-collapse of {x}: {other}")),
            })?;
        let back = |w: VertexId| self.sdd.vertex_of(s.carrier(w)).expect("face of D");
        Ok(cert.steps.iter().map(|(a, b)| (a.map(back), b.map(back))).collect())
    }
}

fn hudson_poset(
    faces: &BTreeSet<Simplex>,
    steps: &[(Simplex, Simplex)],
    end: &BTreeSet<Simplex>,
    d: &Subdivision,
    budget: SearchBudget,
) -> Result<(DerivedComplex, CollapseCertificate<Simplex>)> {
    for v in d.complex.complex.vertices() {
        match d.carrier.get(&v) {
            Some(c) if faces.contains(c) => {}
            _ => return Err(Error::CarrierMissing(format!("vertex {v}"))),
        }
    }
    let mut carrier = BTreeMap::new();
    for f in d.complex.complex.iter() {
        let mut u = d.carrier[&f.vertices()[0]].clone();
        for v in &f.vertices()[1..] {
            u = u.union(&d.carrier[v]);
        }
        let c = smallest_face(faces, &u).ok_or_else(|| Error::CarrierMissing(format!("{f}")))?;
        carrier.insert(f.clone(), c.clone());
    }
    let t = Transfer { d, sdd: sd(&d.complex.complex), carrier };
    let mut out: Vec<(Simplex, Simplex)> = Vec::new();
    for (sigma, big) in steps {
        let small_region = t.region(sigma);
        let big_region = t.region(big);
        let k = small_region.dim().ok_or_else(|| Error::CarrierMissing(format!("{sigma}")))?;
        let small_sd = t.sdd.subdivide_subcomplex(&small_region)?;
        let big_sd = t.sdd.subdivide_subcomplex(&big_region)?;
        let delta = small_sd.facets().into_iter().find(|f| f.len() == k + 1).expect("pure region");
        let top = big_sd
            .facets()
            .into_iter()
            .find(|f| f.len() == k + 2 && delta.is_subset(f))
            .ok_or_else(|| Error::VerificationFailed(format!("no cell of {big} over {sigma}")))?;
        out.push((delta.clone(), top.clone()));
        out.extend(t.endo(big, &big_region, &top, budget)?);
        if k > 0 {
            out.extend(t.endo(sigma, &small_region, &delta, budget)?);
        }
    }
    let want = t.sdd.complex.filter_closed(|f| {
        f.vertices().iter().all(|w| end.contains(&t.carrier[t.sdd.carrier(*w)]))
    });
    let cert = CollapseCertificate { steps: out, target: want.facets() };
    verify::check_collapse(&t.sdd.complex, &cert, Some(&want)).map_err(failed)?;
    Ok((t.sdd, cert))
}

/// Transfers a collapse `C ↘ C'` to `sd D ↘ R(sd D, |C'|)` for a
/// subdivision `D` of the simplicial complex `C`.
pub fn hudson_collapse(
    c: &SimplicialComplex,
    cert: &CollapseCertificate<Simplex>,
    d: &Subdivision,
    budget: SearchBudget,
) -> Result<(DerivedComplex, CollapseCertificate<Simplex>)> {
    verify::check_collapse(c, cert, None).map_err(failed)?;
    hudson_poset(c.faces(), &cert.steps, cert.target_complex().faces(), d, budget)
}

/// Facet hyperplanes `<n, y> <= b` of the convex hull of a full-dimensional
/// complex, read off its boundary.
fn hull_facets(g: &GeometricComplex) -> Result<Vec<(Point, Rational)>> {
    let d = g.ambient_dim();
    let center = linalg::centroid(g.positions().values());
    let mut out: BTreeSet<(Point, Rational)> = BTreeSet::new();
    for f in g.complex.boundary()?.facets() {
        let pts = g.face_points(&f);
        let mut n: Point = if d == 1 {
            alloc::vec![Rational::from_integer(1.into())]
        } else {
            let rows: Vec<Point> = pts[1..].iter().map(|p| linalg::sub(p, pts[0])).collect();
            (0..d)
                .map(|j| {
                    let minor: Vec<Vec<Rational>> =
                        rows.iter().map(|r| r.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, x)| x.clone()).collect()).collect();
                    let det = linalg::determinant(minor);
                    if j % 2 == 0 { det } else { -det }
                })
                .collect()
        };
        let mut b = linalg::dot(&n, pts[0]);
        if linalg::dot(&n, &center) > b {
            n = n.iter().map(|x| -x).collect();
            b = -b;
        }
        let scale = n.iter().find(|x| !x.is_zero()).expect("nonzero normal").abs();
        let n: Point = n.iter().map(|x| x / &scale).collect();
        out.insert((n, b / scale));
    }
    Ok(out.into_iter().collect())
}

/// The face poset of the convex hull of `g` (faces as sets of extreme
/// vertices) and the carrier of every vertex of `g`.
pub(crate) fn polytope_faces(g: &GeometricComplex) -> Result<(BTreeSet<Simplex>, BTreeMap<VertexId, Simplex>)> {
    let d = g.ambient_dim();
    let planes = hull_facets(g)?;
    let on: BTreeMap<VertexId, Vec<usize>> = g
        .positions()
        .iter()
        .map(|(v, p)| (*v, (0..planes.len()).filter(|&i| linalg::dot(&planes[i].0, p) == planes[i].1).collect()))
        .collect();
    let extreme: Vec<VertexId> = on
        .iter()
        .filter(|(_, hs)| linalg::rank(hs.iter().map(|&i| planes[i].0.clone()).collect()) == d)
        .map(|(v, _)| *v)
        .collect();
    let whole = Simplex::new(extreme.iter().copied());
    let facet_sets: Vec<Simplex> = (0..planes.len())
        .map(|i| Simplex::new(extreme.iter().copied().filter(|v| on[v].contains(&i))))
        .collect();
    let mut faces: BTreeSet<Simplex> = facet_sets.iter().cloned().collect();
    faces.insert(whole.clone());
    loop {
        let cur: Vec<Simplex> = faces.iter().cloned().collect();
        let mut grew = false;
        for a in &cur {
            for b in &cur {
                if let Some(x) = a.intersection(b) {
                    grew |= faces.insert(x);
                }
            }
        }
        if !grew {
            break;
        }
    }
    let carrier = on
        .iter()
        .map(|(v, hs)| {
            let mut c = whole.clone();
            for &i in hs {
                c = c.intersection(&facet_sets[i]).expect("the vertex lies on the face");
            }
            (*v, c)
        })
        .collect();
    Ok((faces, carrier))
}

/// Collapses a polytope, seen as the complex of its faces, to a vertex.
fn collapse_polytope(faces: &BTreeSet<Simplex>, g: &GeometricComplex, seed: u64) -> Result<Vec<(Simplex, Simplex)>> {
    let elems: Vec<Simplex> = faces.iter().cloned().collect();
    let rank: Vec<usize> = elems
        .iter()
        .map(|f| linalg::affine_dim(&g.face_points(f).into_iter().cloned().collect::<Vec<_>>()))
        .collect();
    let down: Vec<Vec<usize>> = (0..elems.len())
        .map(|i| {
            (0..elems.len())
                .filter(|&j| rank[j] + 1 == rank[i] && elems[j].is_subset(&elems[i]))
                .collect()
        })
        .collect();
    let protected = alloc::vec![false; elems.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..PERTURBATION_ATTEMPTS {
        let mut inc = Incidence::from_poset(elems.clone(), rank.clone(), down.clone());
        let mut priority: Vec<u64> = (0..elems.len() as u64).collect();
        rand::seq::SliceRandom::shuffle(priority.as_mut_slice(), &mut rng);
        let steps = inc.greedy(&protected, &priority);
        if inc.live() == 1 {
            return Ok(steps.into_iter().map(|(i, j)| (elems[i].clone(), elems[j].clone())).collect());
        }
    }
    Err(Error::BudgetExceeded(PERTURBATION_ATTEMPTS))
}

/// `sd G ↘` a point for a triangulation `G` of a convex polytope: collapse
/// the polytope as a complex of faces and transfer the collapse.
pub fn collapse_convex(g: &GeometricComplex, budget: SearchBudget) -> Result<(DerivedComplex, CollapseCertificate<Simplex>)> {
    if !is_convex_support(g)? {
        return Err(Error::NotConvex);
    }
    let (faces, carrier) = polytope_faces(g)?;
    let steps = collapse_polytope(&faces, g, budget.seed)?;
    let mut left = faces.clone();
    for (a, b) in &steps {
        left.remove(a);
        left.remove(b);
    }
    let sub = Subdivision { complex: g.clone(), carrier };
    hudson_poset(&faces, &steps, &left, &sub, budget)
}
