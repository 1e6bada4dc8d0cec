//! Non-evasiveness of derived subdivisions of star-shaped complexes.

use alloc::format;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::engine::Live;
use super::lemmas::conev;
use super::search::is_non_evasive;
use super::{NeCertificate, NeStep, SearchBudget};
use crate::complex::{Simplex, VertexId};
use crate::error::{Error, Result};
use crate::geometry::{generic_direction, is_star_shaped, linalg, GeometricComplex, Halfspace, Rational};
use crate::subdivision::{derived_order, h_splitting_sd, sd0, DerivedComplex};
use crate::verify;

const DIRECTION_ATTEMPTS: usize = 64;

/// Deletes `order` from `cur`, certifying each link as a cone or by search.
fn delete_in_order(cur: &mut Live, order: &[VertexId], budget: SearchBudget, out: &mut Vec<NeStep>) -> Result<()> {
    for &v in order {
        let link = cur.link(v);
        let cert = match link.cone_apex() {
            Some(a) => conev(&link, a)?,
            None => is_non_evasive(&link, budget)?,
        };
        out.push(NeStep { vertex: v, link: cert });
        cur.delete_vertex(v);
    }
    Ok(())
}

/// A non-evasiveness certificate for `sd^{d-2} G`, where `G` is a
/// star-shaped triangulated `d`-ball in `R^d` with star-center `x`
/// (`d` = 2 or 3). For `d = 3` the subdivision splits along a generic
/// hyperplane through `x`.
pub fn collapse_star_shaped(
    g: &GeometricComplex,
    x: &[Rational],
    budget: SearchBudget,
) -> Result<(DerivedComplex, NeCertificate)> {
    let d = g.ambient_dim();
    if g.complex.dim() != Some(d) {
        return Err(Error::DimensionMismatch(format!("a {d}-complex in R^{d} is required")));
    }
    if !is_star_shaped(g, x)? {
        return Err(Error::BadParameters("the point is not a star-center".into()));
    }
    match d {
        2 => {
            let cert = is_non_evasive(&g.complex, budget)?;
            Ok((sd0(&g.complex, Some(g.positions())), cert))
        }
        3 => split_and_delete(g, x, budget),
        _ => Err(Error::BadParameters(format!("dimension {d} is not supported"))),
    }
}

fn split_and_delete(g: &GeometricComplex, x: &[Rational], budget: SearchBudget) -> Result<(DerivedComplex, NeCertificate)> {
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut nu = None;
    for _ in 0..DIRECTION_ATTEMPTS {
        let cand = generic_direction(g, &mut rng, DIRECTION_ATTEMPTS)?;
        let hx = linalg::dot(&cand, x);
        if g.positions().values().all(|p| linalg::dot(p, &cand) != hx) {
            nu = Some(cand);
            break;
        }
    }
    let nu = nu.ok_or(Error::RetryBudgetExceeded(DIRECTION_ATTEMPTS))?;
    let h = Halfspace::through(nu.clone(), x)?;
    let s = h_splitting_sd(g, &h)?;
    let pos = s.positions().expect("realized");
    let side = |w: VertexId| h.side(&pos[&w]);

    let mut verts = g.complex.vertices();
    verts.sort_by_key(|&v| linalg::dot(g.position(v), &nu));
    let mut cur = Live::new(&s.complex);
    let mut steps = Vec::new();
    for (sign, seed) in [(1i8, verts.clone()), (-1i8, verts.iter().rev().copied().collect())] {
        let seed: Vec<Simplex> = seed.into_iter().map(Simplex::vertex).collect();
        let order = derived_order(&g.complex, &seed)?;
        let doomed: Vec<VertexId> = order
            .iter()
            .rev()
            .map(|f| s.vertex_of(f).expect("face of G"))
            .filter(|&w| side(w) == sign)
            .collect();
        delete_in_order(&mut cur, &doomed, budget, &mut steps)?;
    }
    let rest = is_non_evasive(&cur.complex(), budget)?;
    steps.extend(rest.steps);
    let cert = NeCertificate { steps, point: rest.point };
    verify::check_ne(&s.complex, &cert).map_err(|e| Error::VerificationFailed(format!("{e}")))?;
    Ok((s, cert))
}
