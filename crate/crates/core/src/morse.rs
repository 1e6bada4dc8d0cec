//! Discrete vector fields and the gradient matching induced by a
//! star-minimal function.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::complex::{Cell, Simplex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::geometry::{closest_point_on_star, linalg::dist2, GeometricComplex, Point, Rational};

/// Pairs `(σ, Σ)` with `σ` a codimension-one face of `Σ`, keyed by `σ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiscreteVectorField {
    pairs: BTreeMap<Simplex, Simplex>,
    heads: BTreeSet<Simplex>,
}

impl DiscreteVectorField {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a pair; fails if it is not a codimension-one incidence or reuses a face.
    pub fn insert(&mut self, sigma: Simplex, big: Simplex) -> Result<()> {
        if sigma.len() + 1 != big.len() || !sigma.is_subset(&big) {
            return Err(Error::BadParameters(format!("{} is not a facet of {}", sigma, big)));
        }
        for f in [&sigma, &big] {
            if self.contains_face(f) {
                return Err(Error::BadParameters(format!("{} is already matched", f)));
            }
        }
        self.heads.insert(big.clone());
        self.pairs.insert(sigma, big);
        Ok(())
    }

    pub fn from_pairs<I: IntoIterator<Item = (Simplex, Simplex)>>(pairs: I) -> Result<Self> {
        let mut v = Self::new();
        for (a, b) in pairs {
            v.insert(a, b)?;
        }
        Ok(v)
    }

    pub fn contains_face(&self, f: &Simplex) -> bool {
        self.pairs.contains_key(f) || self.heads.contains(f)
    }

    /// The coface matched with `sigma`, if `sigma` is the lower face of a pair.
    pub fn image(&self, sigma: &Simplex) -> Option<&Simplex> {
        self.pairs.get(sigma)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Simplex, &Simplex)> {
        self.pairs.iter()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// An acyclic vector field together with its unmatched faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseMatching {
    pub field: DiscreteVectorField,
    pub critical: BTreeSet<Simplex>,
}

impl MorseMatching {
    /// Number of critical faces in each dimension.
    pub fn morse_vector(&self, dim: usize) -> Vec<usize> {
        let mut c = alloc::vec![0; dim + 1];
        for f in &self.critical {
            c[f.dim()] += 1;
        }
        c
    }
}

/// Answer of a star-minimal oracle for one face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleAnswer {
    /// Face carrying the minimum over the star, when known.
    pub mu: Option<Simplex>,
    /// The preferred minimal vertex of `mu`.
    pub y: VertexId,
}

pub trait StarMinimalOracle {
    fn query(&self, sigma: &Simplex) -> Result<OracleAnswer>;
}

/// Squared Euclidean distance to a base point, with ties between vertices
/// broken by id.
#[derive(Clone, Debug)]
pub struct DistanceOracle<'a> {
    g: &'a GeometricComplex,
    w: Point,
}

impl<'a> DistanceOracle<'a> {
    pub fn new(g: &'a GeometricComplex, w: Point) -> Result<Self> {
        if w.len() != g.ambient_dim() {
            return Err(Error::DimensionMismatch("base point".into()));
        }
        Ok(DistanceOracle { g, w })
    }

    pub fn from_vertex(g: &'a GeometricComplex, v: VertexId) -> Result<Self> {
        if !g.complex.has_vertex(v) {
            return Err(Error::FaceNotInComplex(format!("[{}]", v)));
        }
        Ok(DistanceOracle {
            g,
            w: g.position(v).clone(),
        })
    }

    fn vertex_key(&self, v: VertexId) -> (Rational, VertexId) {
        (dist2(self.g.position(v), &self.w), v)
    }
}

impl StarMinimalOracle for DistanceOracle<'_> {
    fn query(&self, sigma: &Simplex) -> Result<OracleAnswer> {
        let cp = closest_point_on_star(&self.w, sigma, self.g).map_err(|e| match e {
            Error::NonUniqueMinimum(s) => Error::StarMinimalityViolation(s),
            other => other,
        })?;
        let y = cp
            .carrier
            .vertices()
            .iter()
            .copied()
            .min_by_key(|&v| self.vertex_key(v))
            .expect("carrier is nonempty");
        Ok(OracleAnswer { mu: Some(cp.carrier), y })
    }
}

/// A pointer function given as an explicit table.
#[derive(Clone, Debug, Default)]
pub struct TableOracle(pub BTreeMap<Simplex, VertexId>);

impl StarMinimalOracle for TableOracle {
    fn query(&self, sigma: &Simplex) -> Result<OracleAnswer> {
        match self.0.get(sigma) {
            Some(&y) => Ok(OracleAnswer { mu: None, y }),
            None => Err(Error::FaceNotInComplex(format!("{}", sigma))),
        }
    }
}

/// Queries the oracle once per face and checks each answer lies in the star.
pub fn pointer_function<O: StarMinimalOracle + ?Sized>(c: &SimplicialComplex, oracle: &O) -> Result<BTreeMap<Simplex, VertexId>> {
    let mut y = BTreeMap::new();
    for s in c.faces() {
        let a = oracle.query(s)?;
        if let Some(mu) = &a.mu {
            if !mu.contains_vertex(a.y) || !c.contains(&mu.union(s)) {
                return Err(Error::OracleInconsistency(format!("{}", s)));
            }
        }
        if !c.contains(&s.with_vertex(a.y)) {
            return Err(Error::OracleInconsistency(format!("{}", s)));
        }
        y.insert(s.clone(), a.y);
    }
    Ok(y)
}

fn faces_by_dim(c: &SimplicialComplex) -> Vec<Simplex> {
    let mut f: Vec<Simplex> = c.faces().iter().cloned().collect();
    f.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    f
}

/// Θ(σ) = y(σ) ∗ σ, built by increasing dimension from a pointer table.
pub fn gradient_matching_from_pointer(c: &SimplicialComplex, y: &BTreeMap<Simplex, VertexId>) -> Result<MorseMatching> {
    let mut field = DiscreteVectorField::new();
    for s in faces_by_dim(c) {
        if field.contains_face(&s) {
            continue;
        }
        let Some(&v) = y.get(&s) else {
            return Err(Error::OracleInconsistency(format!("{}", s)));
        };
        if s.contains_vertex(v) {
            continue;
        }
        let big = s.with_vertex(v);
        if !c.contains(&big) {
            return Err(Error::JoinMissing(format!("{}", big)));
        }
        if field.contains_face(&big) {
            return Err(Error::OracleInconsistency(format!("two faces map to {}", big)));
        }
        field.insert(s, big)?;
    }
    if let Some(cycle) = find_closed_path(&field) {
        return Err(Error::OracleInconsistency(format!(
            "closed gradient path through {}",
            cycle[0].0
        )));
    }
    let critical = c.faces().iter().filter(|f| !field.contains_face(f)).cloned().collect();
    Ok(MorseMatching { field, critical })
}

pub fn gradient_matching<O: StarMinimalOracle + ?Sized>(c: &SimplicialComplex, oracle: &O) -> Result<MorseMatching> {
    let y = pointer_function(c, oracle)?;
    gradient_matching_from_pointer(c, &y)
}

/// A closed gradient path, if one exists.
pub fn find_closed_path(v: &DiscreteVectorField) -> Option<Vec<(Simplex, Simplex)>> {
    let nodes: Vec<(&Simplex, &Simplex)> = v.pairs().collect();
    let id: BTreeMap<&Simplex, usize> = nodes.iter().enumerate().map(|(i, (s, _))| (*s, i)).collect();
    let succ: Vec<Vec<usize>> = nodes
        .iter()
        .map(|(s, big)| {
            big.boundary()
                .iter()
                .filter(|t| t != s)
                .filter_map(|t| id.get(t).copied())
                .collect()
        })
        .collect();
    // 0 = new, 1 = on stack, 2 = done.
    let mut state = alloc::vec![0u8; nodes.len()];
    for start in 0..nodes.len() {
        if state[start] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = alloc::vec![(start, 0)];
        state[start] = 1;
        while let Some(&mut (n, ref mut k)) = stack.last_mut() {
            if *k < succ[n].len() {
                let m = succ[n][*k];
                *k += 1;
                match state[m] {
                    0 => {
                        state[m] = 1;
                        stack.push((m, 0));
                    }
                    1 => {
                        let pos = stack.iter().position(|(x, _)| *x == m).expect("on stack");
                        return Some(
                            stack[pos..]
                                .iter()
                                .map(|(x, _)| (nodes[*x].0.clone(), nodes[*x].1.clone()))
                                .collect(),
                        );
                    }
                    _ => {}
                }
            } else {
                state[n] = 2;
                stack.pop();
            }
        }
    }
    None
}

pub fn is_acyclic(v: &DiscreteVectorField) -> bool {
    find_closed_path(v).is_none()
}

/// 𝔓 = {(v, τ) : v ∈ τ, y(τ) = v, y(τ − v) ≠ v}, with (v, v) ∈ 𝔓 iff y(v) = v.
pub fn predicted_critical_pairs_from_pointer(y: &BTreeMap<Simplex, VertexId>) -> BTreeSet<(VertexId, Simplex)> {
    let mut out = BTreeSet::new();
    for (t, &v) in y {
        if !t.contains_vertex(v) {
            continue;
        }
        match t.without_vertex(v) {
            None => {
                out.insert((v, t.clone()));
            }
            Some(rest) => {
                if y.get(&rest) != Some(&v) {
                    out.insert((v, t.clone()));
                }
            }
        }
    }
    out
}

pub fn predicted_critical_pairs<O: StarMinimalOracle + ?Sized>(c: &SimplicialComplex, oracle: &O) -> Result<BTreeSet<(VertexId, Simplex)>> {
    Ok(predicted_critical_pairs_from_pointer(&pointer_function(c, oracle)?))
}

/// Facet criterion for a Morse matching to be a gradient matching.
pub fn is_gradient_matching(m: &MorseMatching, c: &SimplicialComplex) -> bool {
    let facets = c.facets();
    m.field.pairs().all(|(s, big)| {
        let y = big.difference(s).expect("codimension one").vertices()[0];
        facets.iter().filter(|f| big.is_subset(f)).any(|f| {
            f.all_faces()
                .iter()
                .filter(|t| s.is_subset(t) && !t.contains_vertex(y))
                .all(|t| m.field.image(t) == Some(&t.with_vertex(y)))
        })
    })
}

/// Euler characteristic from a Morse vector.
pub fn alternating_sum(mv: &[usize]) -> i64 {
    mv.iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::int_point;
    use alloc::vec;

    fn s<const N: usize>(v: [VertexId; N]) -> Simplex {
        Simplex::from(v)
    }

    #[test]
    fn single_edge_from_first_vertex() {
        let g = GeometricComplex::from_int(&[&[1, 2]], &[&[9], &[0], &[1]]).unwrap();
        let o = DistanceOracle::from_vertex(&g, 1).unwrap();
        let m = gradient_matching(&g.complex, &o).unwrap();
        assert_eq!(m.field.pairs().collect::<Vec<_>>(), vec![(&s([2]), &s([1, 2]))]);
        assert_eq!(m.morse_vector(1), vec![1, 0]);
        let p = predicted_critical_pairs(&g.complex, &o).unwrap();
        assert_eq!(p.into_iter().collect::<Vec<_>>(), vec![(1, s([1]))]);
    }

    #[test]
    fn path_on_a_line() {
        let g = GeometricComplex::from_int(&[&[0, 1], &[1, 2]], &[&[0], &[1], &[2]]).unwrap();
        let o = DistanceOracle::from_vertex(&g, 0).unwrap();
        let y = pointer_function(&g.complex, &o).unwrap();
        assert_eq!(y[&s([1])], 0);
        assert_eq!(y[&s([2])], 1);
        assert_eq!(y[&s([1, 2])], 1);
        assert_eq!(y[&s([0, 1])], 0);
    }

    #[test]
    fn square_grid_from_corner() {
        // 2x2 grid of unit squares, each split along the same diagonal.
        let mut facets: Vec<Vec<VertexId>> = Vec::new();
        let id = |i: u32, j: u32| i * 3 + j;
        for i in 0..2 {
            for j in 0..2 {
                facets.push(vec![id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
                facets.push(vec![id(i, j), id(i, j + 1), id(i + 1, j + 1)]);
            }
        }
        let coords: Vec<Vec<i64>> = (0..3).flat_map(|i| (0..3).map(move |j| vec![i, j])).collect();
        let fr: Vec<&[VertexId]> = facets.iter().map(|f| f.as_slice()).collect();
        let cr: Vec<&[i64]> = coords.iter().map(|c| c.as_slice()).collect();
        let g = GeometricComplex::from_int(&fr, &cr).unwrap();
        let o = DistanceOracle::from_vertex(&g, 0).unwrap();
        let m = gradient_matching(&g.complex, &o).unwrap();
        assert_eq!(m.morse_vector(2), vec![1, 0, 0]);
        assert!(is_gradient_matching(&m, &g.complex));
    }

    #[test]
    fn empty_field_is_acyclic() {
        assert!(is_acyclic(&DiscreteVectorField::new()));
        let pt = SimplicialComplex::simplex_on([0]);
        let m = MorseMatching {
            field: DiscreteVectorField::new(),
            critical: pt.faces().clone(),
        };
        assert!(is_gradient_matching(&m, &pt));
    }

    #[test]
    fn closed_path_on_square_boundary() {
        // Two triangles 012, 023 sharing edge 02; a V-path around vertices.
        let v = DiscreteVectorField::from_pairs([
            (s([0]), s([0, 1])),
            (s([1]), s([1, 2])),
            (s([2]), s([2, 3])),
            (s([3]), s([0, 3])),
        ])
        .unwrap();
        let cyc = find_closed_path(&v).unwrap();
        assert_eq!(cyc.len(), 4);
        let two = DiscreteVectorField::from_pairs([(s([0, 1]), s([0, 1, 2])), (s([0, 2]), s([0, 2, 3]))]).unwrap();
        assert!(is_acyclic(&two));
        assert!(DiscreteVectorField::from_pairs([(s([0]), s([0, 1])), (s([1]), s([0, 1]))]).is_err());
    }

    #[test]
    fn two_cycle_witness() {
        // Edges 01 and 12 of a triangle boundary chase each other through
        // the 2-faces 012 and 013 of a tetrahedron boundary.
        let v = DiscreteVectorField::from_pairs([(s([0, 1]), s([0, 1, 2])), (s([1, 2]), s([1, 2, 3])), (s([1, 3]), s([0, 1, 3]))]).unwrap();
        let cyc = find_closed_path(&v).unwrap();
        assert!(cyc.len() >= 2);
    }

    #[test]
    fn facet_condition_counterexample() {
        // On a triangle, the pair (1, 12) forces 13 ↦ 123, but 13 is
        // already matched with vertex 3.
        let c = SimplicialComplex::simplex_on([1, 2, 3]);
        let field =
            DiscreteVectorField::from_pairs([(s([1]), s([1, 2])), (s([3]), s([1, 3])), (s([2, 3]), s([1, 2, 3]))]).unwrap();
        assert!(is_acyclic(&field));
        let critical = c.faces().iter().filter(|f| !field.contains_face(f)).cloned().collect();
        let m = MorseMatching { field, critical };
        assert!(!is_gradient_matching(&m, &c));
        let good = DiscreteVectorField::from_pairs([(s([2]), s([1, 2])), (s([3]), s([1, 3])), (s([2, 3]), s([1, 2, 3]))]).unwrap();
        let critical = c.faces().iter().filter(|f| !good.contains_face(f)).cloned().collect();
        assert!(is_gradient_matching(&MorseMatching { field: good, critical }, &c));
    }

    #[test]
    fn reflex_star_violates_star_minimality() {
        let g = GeometricComplex::from_int(
            &[&[0, 1, 2], &[0, 3, 4]],
            &[&[0, 0], &[4, 1], &[1, 4], &[-4, 1], &[-1, 4]],
        )
        .unwrap();
        let o = DistanceOracle::new(&g, int_point(&[0, 6])).unwrap();
        assert!(matches!(
            gradient_matching(&g.complex, &o),
            Err(Error::StarMinimalityViolation(_))
        ));
    }
}
