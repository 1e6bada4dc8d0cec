//! Elementary collapses, searches for collapsing sequences and
//! non-evasiveness, and the constructive collapsers for convex, star-shaped
//! and cubical complexes.

mod convex;
mod cubical;
mod engine;
mod incidence;
mod lemmas;
mod search;
mod starshaped;

use alloc::vec::Vec;

use crate::complex::{Cell, CellComplex, VertexId};

pub use convex::{
    collapse_convex, convex_split_collapse, endo_collapse, endo_collapse_convex, hudson_collapse, ConvexMode,
    Subdivision,
};
pub use cubical::{collapse_cubical_cat0, facet_star_collapse, facet_star_collapse_complex, StarCollapsible};
pub use engine::eliminate_vertices;
pub use incidence::Incidence;
pub use lemmas::{
    ccoll, cecoll_lift, conev, ne_cone_lemma_steps, ne_to_collapse, nonev_lift, nonev_lift_steps, uc_embed,
};
pub use search::{collapse_search, greedy_collapse, is_non_evasive, CollapseTarget};
pub use starshaped::collapse_star_shaped;

/// A sequence of elementary collapses and the facets of the complex it ends at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseCertificate<C: Cell> {
    pub steps: Vec<(C, C)>,
    pub target: Vec<C>,
}

impl<C: Cell> CollapseCertificate<C> {
    pub fn target_complex(&self) -> CellComplex<C> {
        CellComplex::closure(self.target.iter().cloned())
    }

    /// Replays the steps without checking them.
    pub fn apply(&self, c: &CellComplex<C>) -> CellComplex<C> {
        let mut faces = c.faces().clone();
        for (s, t) in &self.steps {
            faces.remove(s);
            faces.remove(t);
        }
        CellComplex::from_closed_set(faces)
    }
}

/// One deletion in a non-evasive reduction: `vertex` is removed after `link`
/// certifies its link in the current complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeStep {
    pub vertex: VertexId,
    pub link: NeCertificate,
}

/// Non-evasiveness certificate. The deletions run in order on the shrinking
/// complex and `point` is the surviving vertex; reading it from the front
/// gives the usual (vertex, link certificate, rest certificate) tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeCertificate {
    pub steps: Vec<NeStep>,
    pub point: VertexId,
}

impl NeCertificate {
    pub fn point(v: VertexId) -> Self {
        NeCertificate { steps: Vec::new(), point: v }
    }

    /// Total number of deletions, links included.
    pub fn size(&self) -> usize {
        self.steps.iter().map(|s| 1 + s.link.size()).sum()
    }
}

/// Limits for the exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 200_000, seed: 0 }
    }
}

impl SearchBudget {
    pub fn new(max_nodes: usize, seed: u64) -> Self {
        SearchBudget { max_nodes: max_nodes.max(1), seed }
    }
}
