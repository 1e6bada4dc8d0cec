//! Subcommand implementations. Each returns a report and, for producers,
//! the JSON file to write.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use cellcollapse::collapse::{
    collapse_convex, collapse_cubical_cat0, collapse_search, collapse_star_shaped, hudson_collapse, is_non_evasive,
    CollapseTarget, SearchBudget, Subdivision,
};
use cellcollapse::gallery::{self, GalleryItem, GallerySpec};
use cellcollapse::geometry::GeometricComplex;
use cellcollapse::morse::{gradient_matching, predicted_critical_pairs, DistanceOracle};
use cellcollapse::subdivision::{sd_m, sd_m_geometric, DerivedComplex};
use cellcollapse::verify::{check_collapse, check_ne};
use cellcollapse::{Cube, SimplicialComplex, VertexId};
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::io::{read_json, CertType, CertificateFile, ComplexFile, Loaded, Model};

#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub seed: u64,
    pub budget: usize,
}

impl Settings {
    fn budget(&self) -> SearchBudget {
        SearchBudget::new(self.budget, self.seed)
    }
}

/// What a command produced.
#[derive(Debug)]
pub struct Outcome {
    pub report: Value,
    pub lines: Vec<String>,
    /// JSON document to write, for producing commands.
    pub file: Option<String>,
    /// A negative but well-formed answer (exit code 1).
    pub negative: bool,
}

impl Outcome {
    fn new(report: Value, lines: Vec<String>) -> Self {
        Outcome { report, lines, file: None, negative: false }
    }

    fn with_file<T: serde::Serialize>(mut self, doc: &T) -> Result<Self> {
        self.file = Some(serde_json::to_string_pretty(doc)?);
        Ok(self)
    }
}

pub fn load_complex(path: Option<&Path>) -> Result<Loaded> {
    read_json::<ComplexFile>(path)?.load()
}

fn simplicial(l: &Loaded) -> Result<&SimplicialComplex> {
    match &l.model {
        Model::Simplicial { complex, .. } => Ok(complex),
        Model::Cubical { .. } => Err(CliError::input("this command needs a simplicial complex")),
    }
}

fn geometric(l: &Loaded) -> Result<GeometricComplex> {
    match &l.model {
        Model::Simplicial { complex, positions: Some(p), .. } => Ok(GeometricComplex::new(complex.clone(), p.clone())?),
        Model::Simplicial { .. } => Err(CliError::input("this command needs vertex coordinates")),
        Model::Cubical { .. } => Err(CliError::input("this command needs a simplicial complex")),
    }
}

fn derived_file(name: &str, s: &DerivedComplex) -> ComplexFile {
    let carrier: BTreeMap<VertexId, _> =
        s.complex.vertices().into_iter().map(|v| (v, s.base_carrier(v).clone())).collect();
    ComplexFile::simplicial(name, &s.complex, s.positions(), Some(&carrier))
}

fn faces(list: &[impl std::fmt::Display]) -> String {
    list.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn gallery(name: &str, params: &[(String, i64)]) -> Result<Outcome> {
    let mut spec = GallerySpec::new(name);
    for (k, v) in params {
        spec = spec.with(k, *v);
    }
    let item = gallery::generate(&spec)?;
    let file = match &item {
        GalleryItem::Simplicial(c) => ComplexFile::simplicial(name, c, None, None),
        GalleryItem::Geometric(g) => ComplexFile::geometric(name, g),
        GalleryItem::Cubical(k) => ComplexFile::cubical(name, k),
    };
    let f = match &item {
        GalleryItem::Cubical(k) => k.f_vector(),
        other => other.simplicial().expect("simplicial").f_vector(),
    };
    Outcome::new(
        json!({"command": "gallery", "name": name, "f_vector": f}),
        vec![format!("{name}: f-vector {f:?}")],
    )
    .with_file(&file)
}

pub fn fvector(input: Option<&Path>) -> Result<Outcome> {
    let l = load_complex(input)?;
    let (f, chi) = match &l.model {
        Model::Simplicial { complex, .. } => (complex.f_vector(), complex.euler_characteristic()),
        Model::Cubical { complex, .. } => (complex.f_vector(), complex.euler_characteristic()),
    };
    Ok(Outcome::new(
        json!({"command": "fvector", "name": l.name, "f_vector": f, "euler_characteristic": chi}),
        vec![format!("f-vector {f:?}"), format!("Euler characteristic {chi}")],
    ))
}

pub fn sd(input: Option<&Path>, m: usize) -> Result<Outcome> {
    let l = load_complex(input)?;
    let s = match &l.model {
        Model::Simplicial { positions: Some(_), .. } => sd_m_geometric(&geometric(&l)?, m),
        _ => sd_m(simplicial(&l)?, m),
    };
    let name = format!("sd^{m} {}", l.name);
    let f = s.complex.f_vector();
    Outcome::new(json!({"command": "sd", "m": m, "f_vector": f}), vec![format!("{name}: f-vector {f:?}")])
        .with_file(&derived_file(&name, &s))
}

pub fn ne(input: Option<&Path>, set: Settings) -> Result<Outcome> {
    let l = load_complex(input)?;
    let c = simplicial(&l)?;
    let cert = is_non_evasive(c, set.budget())?;
    let file = CertificateFile::ne(&cert, ComplexFile::from_loaded(&l))?;
    Outcome::new(
        json!({"command": "ne", "non_evasive": true, "point": cert.point, "size": cert.size()}),
        vec![format!("non-evasive: {} deletions, ends at vertex {}", cert.steps.len(), cert.point)],
    )
    .with_file(&file)
}

pub fn collapse(input: Option<&Path>, target: &str, set: Settings) -> Result<Outcome> {
    let l = load_complex(input)?;
    let target_model = if target == "point" { None } else { Some(load_complex(Some(Path::new(target)))?.model) };
    let source = ComplexFile::from_loaded(&l);
    let (file, steps, end) = match (&l.model, target_model) {
        (Model::Simplicial { complex, .. }, t) => {
            let t = match t {
                None => CollapseTarget::Point,
                Some(Model::Simplicial { complex: sub, .. }) => CollapseTarget::Complex(sub),
                Some(_) => return Err(CliError::input("target kind differs from the complex")),
            };
            let cert = collapse_search(complex, &t, set.budget())?;
            (CertificateFile::collapse_simplicial(&cert, source)?, cert.steps.len(), faces(&cert.target))
        }
        (Model::Cubical { complex, .. }, t) => {
            let t = match t {
                None => CollapseTarget::Point,
                Some(Model::Cubical { complex: sub, .. }) => CollapseTarget::Complex(sub),
                Some(_) => return Err(CliError::input("target kind differs from the complex")),
            };
            let cert = collapse_search(complex, &t, set.budget())?;
            (CertificateFile::collapse_cubical(&cert, source)?, cert.steps.len(), faces(&cert.target))
        }
    };
    Outcome::new(
        json!({"command": "collapse", "steps": steps, "target": end}),
        vec![format!("collapsed in {steps} steps onto {end}")],
    )
    .with_file(&file)
}

pub enum BasePoint {
    Vertex(VertexId),
    Point(String),
}

pub fn morse(input: Option<&Path>, base: BasePoint, check_bijection: bool) -> Result<Outcome> {
    let l = load_complex(input)?;
    let g = geometric(&l)?;
    let oracle = match base {
        BasePoint::Vertex(v) => DistanceOracle::from_vertex(&g, v)?,
        BasePoint::Point(s) => DistanceOracle::new(&g, crate::io::parse_point(&s)?)?,
    };
    let m = gradient_matching(&g.complex, &oracle)?;
    let dim = g.complex.dim().unwrap_or(0);
    let mv = m.morse_vector(dim);
    let pairs: Vec<[String; 2]> = m.field.pairs().map(|(a, b)| [a.to_string(), b.to_string()]).collect();
    let critical: Vec<String> = m.critical.iter().map(|f| f.to_string()).collect();
    let mut lines = vec![format!("Morse vector {mv:?}"), format!("critical: {}", critical.join(" "))];
    lines.extend(pairs.iter().map(|[a, b]| format!("{a} -> {b}")));
    let mut report = json!({"command": "morse", "morse_vector": mv, "pairs": pairs, "critical": critical});
    let mut negative = false;
    if check_bijection {
        let predicted = predicted_critical_pairs(&g.complex, &oracle)?;
        let faces: std::collections::BTreeSet<_> = predicted.iter().map(|(_, t)| t.clone()).collect();
        let ok = faces.len() == predicted.len() && faces == m.critical;
        lines.push(format!(
            "bijection check: {} ({} predicted pairs, {} critical faces)",
            if ok { "ok" } else { "MISMATCH" },
            predicted.len(),
            m.critical.len()
        ));
        report["bijection"] = json!(ok);
        negative = !ok;
    }
    let mut out = Outcome::new(report, lines);
    out.negative = negative;
    Ok(out)
}

pub fn cat0_collapse(input: Option<&Path>, root: VertexId) -> Result<Outcome> {
    let l = load_complex(input)?;
    let Model::Cubical { complex, ids } = &l.model else {
        return Err(CliError::input("cat0-collapse needs a cubical complex"));
    };
    let p = ids.get(&root).ok_or_else(|| CliError::input(format!("no vertex {root}")))?;
    let cert = collapse_cubical_cat0(complex, &Cube::point(p))?;
    let file = CertificateFile::collapse_cubical(&cert, ComplexFile::from_loaded(&l))?;
    Outcome::new(
        json!({"command": "cat0-collapse", "steps": cert.steps.len(), "root": root}),
        vec![format!("collapsed in {} steps onto vertex {root}", cert.steps.len())],
    )
    .with_file(&file)
}

pub fn star_collapse(input: Option<&Path>, center: &str, set: Settings) -> Result<Outcome> {
    let l = load_complex(input)?;
    let g = geometric(&l)?;
    let x = crate::io::parse_point(center)?;
    let (s, cert) = collapse_star_shaped(&g, &x, set.budget())?;
    let name = format!("sd^{} {}", g.ambient_dim().saturating_sub(2), l.name);
    let file = CertificateFile::ne(&cert, derived_file(&name, &s))?;
    Outcome::new(
        json!({"command": "star-collapse", "subdivision": name, "f_vector": s.complex.f_vector(), "size": cert.size()}),
        vec![format!("{name} is non-evasive: {} deletions", cert.steps.len())],
    )
    .with_file(&file)
}

pub fn convex_collapse(input: Option<&Path>, set: Settings) -> Result<Outcome> {
    let l = load_complex(input)?;
    let g = geometric(&l)?;
    let (s, cert) = collapse_convex(&g, set.budget())?;
    let name = format!("sd {}", l.name);
    let file = CertificateFile::collapse_simplicial(&cert, derived_file(&name, &s))?;
    Outcome::new(
        json!({"command": "convex-collapse", "steps": cert.steps.len(), "target": faces(&cert.target)}),
        vec![format!("{name} collapses in {} steps onto {}", cert.steps.len(), faces(&cert.target))],
    )
    .with_file(&file)
}

pub fn hudson(input: Option<&Path>, cert: &Path, subdivision: &Path, set: Settings) -> Result<Outcome> {
    let l = load_complex(input)?;
    let c = simplicial(&l)?;
    let cf: CertificateFile = read_json(Some(cert))?;
    if cf.source.sha256 != ComplexFile::from_loaded(&l).digest()? {
        return Err(CliError::input("the certificate was made for a different complex"));
    }
    let cc = cf.to_simplicial()?;
    let d = load_complex(Some(subdivision))?;
    let dg = geometric(&d)?;
    let sub = match &d.model {
        Model::Simplicial { carrier: Some(carrier), .. } => Subdivision { complex: dg, carrier: carrier.clone() },
        _ => Subdivision::from_geometry(&geometric(&l)?, dg)?,
    };
    let (s, out) = hudson_collapse(c, &cc, &sub, set.budget())?;
    let name = format!("sd {}", d.name);
    let file = CertificateFile::collapse_simplicial(&out, derived_file(&name, &s))?;
    Outcome::new(
        json!({"command": "hudson", "steps": out.steps.len(), "target_facets": out.target.len()}),
        vec![format!("{name} collapses in {} steps onto {} facets", out.steps.len(), out.target.len())],
    )
    .with_file(&file)
}

pub fn verify(complex: Option<&PathBuf>, cert: Option<&PathBuf>) -> Result<Outcome> {
    let cf: CertificateFile = read_json(cert.map(|p| p.as_path()))?;
    let file = match complex {
        Some(p) => read_json::<ComplexFile>(Some(p))?,
        None => cf.complex.clone().ok_or_else(|| CliError::input("no complex given and none embedded"))?,
    };
    if file.digest()? != cf.source.sha256 {
        return Err(CliError::input(format!("complex does not match the certificate source {}", cf.source.name)));
    }
    let l = file.load()?;
    let result = match (cf.cert_type, &l.model) {
        (CertType::Collapse, Model::Simplicial { complex, .. }) => check_collapse(complex, &cf.to_simplicial()?, None),
        (CertType::Collapse, Model::Cubical { complex, .. }) => check_collapse(complex, &cf.to_cubical()?, None),
        (CertType::Ne, Model::Simplicial { complex, .. }) => check_ne(complex, &cf.to_ne()?),
        (CertType::Ne, Model::Cubical { .. }) => return Err(CliError::input("NE certificates need a simplicial complex")),
    };
    let mut out = match &result {
        Ok(()) => Outcome::new(
            json!({"command": "verify", "valid": true, "source": cf.source.name}),
            vec![format!("valid certificate for {}", cf.source.name)],
        ),
        Err(r) => Outcome::new(
            json!({"command": "verify", "valid": false, "step": r.step, "reason": r.reason}),
            vec![format!("rejected: {r}")],
        ),
    };
    out.negative = result.is_err();
    Ok(out)
}
