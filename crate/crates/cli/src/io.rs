//! JSON complex and certificate files.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use cellcollapse::collapse::{CollapseCertificate, NeCertificate, NeStep};
use cellcollapse::geometry::{GeometricComplex, Point, Rational};
use cellcollapse::{Cube, CubicalComplex, Simplex, SimplicialComplex, VertexId};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Simplicial,
    Cubical,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexEntry {
    pub id: VertexId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub name: String,
    pub kind: Kind,
    pub dim: usize,
    pub vertices: Vec<VertexEntry>,
    /// Simplicial facets as vertex id lists.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub facets: Vec<Vec<VertexId>>,
    /// Cubical facets as `[lo, hi]` intervals.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub boxes: Vec<Vec<[i64; 2]>>,
    /// Face of a parent complex carrying each vertex.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carrier: Option<BTreeMap<VertexId, Vec<VertexId>>>,
}

/// A parsed complex file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    Simplicial {
        complex: SimplicialComplex,
        positions: Option<BTreeMap<VertexId, Point>>,
        carrier: Option<BTreeMap<VertexId, Simplex>>,
    },
    Cubical {
        complex: CubicalComplex,
        /// Vertex ids of the lattice points, in file order.
        ids: BTreeMap<VertexId, Vec<i64>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loaded {
    pub name: String,
    pub model: Model,
}

pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| CliError::input(format!("not a rational number: {s:?}")))
}

/// Parses `"p/q,p/q,…"`.
pub fn parse_point(s: &str) -> Result<Point> {
    s.split(',').map(parse_rational).collect()
}

fn coords_of(p: &Point) -> Vec<String> {
    p.iter().map(format_rational).collect()
}

impl ComplexFile {
    pub fn simplicial(
        name: &str,
        complex: &SimplicialComplex,
        positions: Option<&BTreeMap<VertexId, Point>>,
        carrier: Option<&BTreeMap<VertexId, Simplex>>,
    ) -> Self {
        let vertices = complex
            .vertices()
            .into_iter()
            .map(|id| VertexEntry { id, coords: positions.map(|p| coords_of(&p[&id])) })
            .collect();
        ComplexFile {
            name: name.into(),
            kind: Kind::Simplicial,
            dim: complex.dim().unwrap_or(0),
            vertices,
            facets: complex.facet_lists(),
            boxes: Vec::new(),
            carrier: carrier.map(|c| {
                complex.vertices().into_iter().map(|v| (v, c[&v].vertices().to_vec())).collect()
            }),
        }
    }

    pub fn geometric(name: &str, g: &GeometricComplex) -> Self {
        Self::simplicial(name, &g.complex, Some(g.positions()), None)
    }

    /// Lattice points get ids in lexicographic order.
    pub fn cubical(name: &str, complex: &CubicalComplex) -> Self {
        let corners: BTreeSet<Vec<i64>> = complex.vertex_cells().iter().map(|c| c.lo().to_vec()).collect();
        let vertices = corners
            .iter()
            .enumerate()
            .map(|(i, p)| VertexEntry {
                id: i as VertexId,
                coords: Some(p.iter().map(|x| format!("{x}/1")).collect()),
            })
            .collect();
        ComplexFile {
            name: name.into(),
            kind: Kind::Cubical,
            dim: complex.dim().unwrap_or(0),
            vertices,
            facets: Vec::new(),
            boxes: complex.facets().iter().map(box_of).collect(),
            carrier: None,
        }
    }

    pub fn from_loaded(l: &Loaded) -> Self {
        match &l.model {
            Model::Simplicial { complex, positions, carrier } => {
                Self::simplicial(&l.name, complex, positions.as_ref(), carrier.as_ref())
            }
            Model::Cubical { complex, .. } => Self::cubical(&l.name, complex),
        }
    }

    pub fn load(&self) -> Result<Loaded> {
        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v.id) {
                return Err(CliError::input(format!("vertex id {} is repeated", v.id)));
            }
        }
        let with = self.vertices.iter().filter(|v| v.coords.is_some()).count();
        if with != 0 && with != self.vertices.len() {
            return Err(CliError::input("coordinates must be given for all vertices or none"));
        }
        let model = match self.kind {
            Kind::Simplicial => self.load_simplicial(with > 0)?,
            Kind::Cubical => self.load_cubical()?,
        };
        Ok(Loaded { name: self.name.clone(), model })
    }

    fn load_simplicial(&self, has_coords: bool) -> Result<Model> {
        if !self.boxes.is_empty() {
            return Err(CliError::input("a simplicial complex has no boxes"));
        }
        let complex = SimplicialComplex::from_vertex_lists(self.facets.iter().cloned())?;
        let listed: BTreeSet<VertexId> = self.vertices.iter().map(|v| v.id).collect();
        if complex.vertices().into_iter().collect::<BTreeSet<_>>() != listed {
            return Err(CliError::input("the vertex list does not match the facets"));
        }
        if complex.dim() != Some(self.dim) {
            return Err(CliError::input(format!("dim is {} but the facets have dimension {:?}", self.dim, complex.dim())));
        }
        let positions = if has_coords {
            let mut pos = BTreeMap::new();
            for v in &self.vertices {
                let c = v.coords.as_ref().expect("all vertices have coordinates");
                pos.insert(v.id, c.iter().map(|s| parse_rational(s)).collect::<Result<Point>>()?);
            }
            // checks a common ambient dimension
            GeometricComplex::new(complex.clone(), pos.clone())?;
            Some(pos)
        } else {
            None
        };
        let carrier = match &self.carrier {
            None => None,
            Some(m) => {
                let mut out = BTreeMap::new();
                for v in &listed {
                    let f = m.get(v).ok_or_else(|| CliError::input(format!("vertex {v} has no carrier")))?;
                    let s = Simplex::try_new(f.iter().copied())
                        .ok_or_else(|| CliError::input(format!("vertex {v} has an empty carrier")))?;
                    out.insert(*v, s);
                }
                Some(out)
            }
        };
        Ok(Model::Simplicial { complex, positions, carrier })
    }

    fn load_cubical(&self) -> Result<Model> {
        if !self.facets.is_empty() {
            return Err(CliError::input("a cubical complex has boxes, not facets"));
        }
        let mut cubes = Vec::new();
        for b in &self.boxes {
            let iv: Vec<(i64, i64)> = b.iter().map(|[lo, hi]| (*lo, *hi)).collect();
            cubes.push(Cube::from_intervals(&iv).ok_or_else(|| CliError::input(format!("bad box {b:?}")))?);
        }
        let complex = CubicalComplex::from_facets(cubes)?;
        if complex.dim() != Some(self.dim) {
            return Err(CliError::input("dim does not match the boxes"));
        }
        let mut ids = BTreeMap::new();
        for v in &self.vertices {
            let c = v.coords.as_ref().ok_or_else(|| CliError::input("cubical vertices need coordinates"))?;
            let mut p = Vec::new();
            for s in c {
                let r = parse_rational(s)?;
                if !r.is_integer() {
                    return Err(CliError::input(format!("vertex {} is not a lattice point", v.id)));
                }
                p.push(r.to_integer().try_into().map_err(|_| CliError::input("coordinate out of range"))?);
            }
            ids.insert(v.id, p);
        }
        let corners: BTreeSet<Vec<i64>> = complex.vertex_cells().iter().map(|c| c.lo().to_vec()).collect();
        if ids.values().cloned().collect::<BTreeSet<_>>() != corners || ids.len() != corners.len() {
            return Err(CliError::input("the vertex list does not match the boxes"));
        }
        Ok(Model::Cubical { complex, ids })
    }

    /// sha256 of the canonical serialization.
    pub fn digest(&self) -> Result<String> {
        let canon = ComplexFile::from_loaded(&self.load()?);
        Ok(hex::encode(Sha256::digest(serde_json::to_vec(&canon)?)))
    }
}

fn box_of(c: &Cube) -> Vec<[i64; 2]> {
    c.intervals().into_iter().map(|(a, b)| [a, b]).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FaceJson {
    Simplex(Vec<VertexId>),
    Box(Vec<[i64; 2]>),
}

impl FaceJson {
    fn simplex(&self) -> Result<Simplex> {
        match self {
            FaceJson::Simplex(v) => Simplex::try_new(v.iter().copied()).ok_or_else(|| CliError::input("empty face")),
            FaceJson::Box(_) => Err(CliError::input("expected a simplex, found a box")),
        }
    }

    fn cube(&self) -> Result<Cube> {
        match self {
            FaceJson::Box(b) => {
                let iv: Vec<(i64, i64)> = b.iter().map(|[lo, hi]| (*lo, *hi)).collect();
                Cube::from_intervals(&iv).ok_or_else(|| CliError::input(format!("bad box {b:?}")))
            }
            // `[]` parses as a simplex
            FaceJson::Simplex(v) if v.is_empty() => Err(CliError::input("empty face")),
            FaceJson::Simplex(_) => Err(CliError::input("expected a box, found a simplex")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertType {
    Collapse,
    Ne,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Source {
    pub name: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeTree {
    pub point: VertexId,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<NeTreeStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeTreeStep {
    pub vertex: VertexId,
    pub link: NeTree,
}

impl From<&NeCertificate> for NeTree {
    fn from(c: &NeCertificate) -> Self {
        NeTree {
            point: c.point,
            steps: c.steps.iter().map(|s| NeTreeStep { vertex: s.vertex, link: (&s.link).into() }).collect(),
        }
    }
}

impl From<&NeTree> for NeCertificate {
    fn from(t: &NeTree) -> Self {
        NeCertificate {
            point: t.point,
            steps: t.steps.iter().map(|s| NeStep { vertex: s.vertex, link: (&s.link).into() }).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    #[serde(rename = "type")]
    pub cert_type: CertType,
    pub source: Source,
    /// `[face, coface]` pairs of a collapse.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<[FaceJson; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree: Option<NeTree>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub target: Vec<FaceJson>,
    /// The complex the certificate is about, when embedded.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexFile>,
}

impl CertificateFile {
    fn source_of(file: &ComplexFile) -> Result<Source> {
        Ok(Source { name: file.name.clone(), sha256: file.digest()? })
    }

    pub fn collapse_simplicial(cert: &CollapseCertificate<Simplex>, file: ComplexFile) -> Result<Self> {
        let face = |s: &Simplex| FaceJson::Simplex(s.vertices().to_vec());
        Ok(CertificateFile {
            cert_type: CertType::Collapse,
            source: Self::source_of(&file)?,
            steps: cert.steps.iter().map(|(a, b)| [face(a), face(b)]).collect(),
            tree: None,
            target: cert.target.iter().map(face).collect(),
            complex: Some(file),
        })
    }

    pub fn collapse_cubical(cert: &CollapseCertificate<Cube>, file: ComplexFile) -> Result<Self> {
        let face = |c: &Cube| FaceJson::Box(box_of(c));
        Ok(CertificateFile {
            cert_type: CertType::Collapse,
            source: Self::source_of(&file)?,
            steps: cert.steps.iter().map(|(a, b)| [face(a), face(b)]).collect(),
            tree: None,
            target: cert.target.iter().map(face).collect(),
            complex: Some(file),
        })
    }

    pub fn ne(cert: &NeCertificate, file: ComplexFile) -> Result<Self> {
        Ok(CertificateFile {
            cert_type: CertType::Ne,
            source: Self::source_of(&file)?,
            steps: Vec::new(),
            tree: Some(cert.into()),
            target: Vec::new(),
            complex: Some(file),
        })
    }

    pub fn to_simplicial(&self) -> Result<CollapseCertificate<Simplex>> {
        self.expect(CertType::Collapse)?;
        Ok(CollapseCertificate {
            steps: self.steps.iter().map(|[a, b]| Ok((a.simplex()?, b.simplex()?))).collect::<Result<_>>()?,
            target: self.target.iter().map(FaceJson::simplex).collect::<Result<_>>()?,
        })
    }

    pub fn to_cubical(&self) -> Result<CollapseCertificate<Cube>> {
        self.expect(CertType::Collapse)?;
        Ok(CollapseCertificate {
            steps: self.steps.iter().map(|[a, b]| Ok((a.cube()?, b.cube()?))).collect::<Result<_>>()?,
            target: self.target.iter().map(FaceJson::cube).collect::<Result<_>>()?,
        })
    }

    pub fn to_ne(&self) -> Result<NeCertificate> {
        self.expect(CertType::Ne)?;
        self.tree.as_ref().map(NeCertificate::from).ok_or_else(|| CliError::input("NE certificate without a tree"))
    }

    fn expect(&self, t: CertType) -> Result<()> {
        if self.cert_type == t {
            Ok(())
        } else {
            Err(CliError::input(format!("expected a {t:?} certificate, found {:?}", self.cert_type)))
        }
    }
}

pub fn read_text(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::Io { path: p.display().to_string(), source: e }),
        None => std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Io { path: "<stdin>".into(), source: e }),
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: Option<&Path>) -> Result<T> {
    Ok(serde_json::from_str(&read_text(path)?)?)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| CliError::Io { path: path.display().to_string(), source: e })
}

#[cfg(test)]
mod tests {
    use super::*;
    use cellcollapse::gallery;
    use cellcollapse::geometry::rat;

    #[test]
    fn rationals_round_trip() {
        for r in [rat(3, 4), rat(-7, 2), rat(5, 1), rat(0, 1)] {
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
        assert_eq!(parse_rational("6/8").unwrap(), rat(3, 4));
        assert_eq!(parse_rational(" 2 ").unwrap(), rat(2, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(parse_point("1/2,0,-3/1").unwrap(), vec![rat(1, 2), rat(0, 1), rat(-3, 1)]);
    }

    #[test]
    fn geometric_file_round_trip() {
        let f = ComplexFile::geometric("simplex", &gallery::simplex(3));
        let text = serde_json::to_string(&f).unwrap();
        let back: ComplexFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(ComplexFile::from_loaded(&back.load().unwrap()), f);
    }

    #[test]
    fn cubical_file_round_trip() {
        let f = ComplexFile::cubical("grid", &gallery::grid(2, 3));
        assert_eq!(f.vertices.len(), 12);
        let l = f.load().unwrap();
        assert_eq!(ComplexFile::from_loaded(&l), f);
    }

    #[test]
    fn malformed_files_are_rejected() {
        let mut f = ComplexFile::geometric("t", &gallery::simplex(2));
        f.vertices[1].coords = None;
        assert!(f.load().is_err());
        let mut f = ComplexFile::geometric("t", &gallery::simplex(2));
        f.vertices[2].id = 0;
        assert!(f.load().is_err());
        let mut f = ComplexFile::simplicial("t", &gallery::dunce_hat(), None, None);
        f.dim = 3;
        assert!(f.load().is_err());
        f.dim = 2;
        f.vertices.pop();
        assert!(f.load().is_err());
    }

    #[test]
    fn digest_ignores_layout() {
        let f = ComplexFile::simplicial("bd", &gallery::boundary_sphere(2), None, None);
        let mut g = f.clone();
        g.facets.reverse();
        g.facets[0].reverse();
        assert_eq!(f.digest().unwrap(), g.digest().unwrap());
        let mut h = f.clone();
        h.facets.pop();
        h.facets.push(vec![0, 1]);
        h.facets.push(vec![0, 5]);
        h.vertices.push(VertexEntry { id: 5, coords: None });
        assert_ne!(f.digest().unwrap(), h.digest().unwrap());
    }

    #[test]
    fn certificates_round_trip() {
        let c = SimplicialComplex::simplex_on([0, 1]);
        let cert = CollapseCertificate {
            steps: vec![(Simplex::vertex(1), Simplex::from([0, 1]))],
            target: vec![Simplex::vertex(0)],
        };
        let file = CertificateFile::collapse_simplicial(&cert, ComplexFile::simplicial("e", &c, None, None)).unwrap();
        let text = serde_json::to_string(&file).unwrap();
        let back: CertificateFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_simplicial().unwrap(), cert);
        assert!(back.to_ne().is_err());
        let ne = NeCertificate { steps: vec![NeStep { vertex: 1, link: NeCertificate::point(0) }], point: 0 };
        let file = CertificateFile::ne(&ne, ComplexFile::simplicial("e", &c, None, None)).unwrap();
        let back: CertificateFile = serde_json::from_str(&serde_json::to_string(&file).unwrap()).unwrap();
        assert_eq!(back.to_ne().unwrap(), ne);
        let cube = Cube::new(&[0, 0], &[true, false]);
        let cc = CollapseCertificate { steps: vec![(Cube::point(&[1, 0]), cube.clone())], target: vec![Cube::point(&[0, 0])] };
        let k = CubicalComplex::closure([cube]);
        let file = CertificateFile::collapse_cubical(&cc, ComplexFile::cubical("seg", &k)).unwrap();
        let back: CertificateFile = serde_json::from_str(&serde_json::to_string(&file).unwrap()).unwrap();
        assert_eq!(back.to_cubical().unwrap(), cc);
    }
}
