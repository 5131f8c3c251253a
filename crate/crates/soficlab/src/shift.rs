//! Shift handles and cover specifications.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::present::{self, FischerCover};
use crate::word::Alphabet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum ShiftKind {
    /// General sofic shift: label image of the presentation.
    Sofic,
    /// The labeling is injective on edges, so the shift is conjugate to the
    /// edge shift of its presentation via the labeling itself.
    SftEdgeShift,
}

/// A sofic shift, owned as a trimmed presentation. The Fischer covers are
/// computed lazily and cached; all other invariants are recomputed by the
/// modules that need them.
#[derive(Debug)]
pub struct ShiftHandle {
    graph: LabeledGraph,
    kind: ShiftKind,
    fischer: OnceLock<FischerCover>,
    left_fischer: OnceLock<FischerCover>,
}

impl Clone for ShiftHandle {
    fn clone(&self) -> Self {
        let fischer = OnceLock::new();
        if let Some(f) = self.fischer.get() {
            let _ = fischer.set(f.clone());
        }
        let left_fischer = OnceLock::new();
        if let Some(f) = self.left_fischer.get() {
            let _ = left_fischer.set(f.clone());
        }
        ShiftHandle {
            graph: self.graph.clone(),
            kind: self.kind,
            fischer,
            left_fischer,
        }
    }
}

impl PartialEq for ShiftHandle {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.kind == other.kind
    }
}
impl Eq for ShiftHandle {}

impl ShiftHandle {
    /// Trims the graph and wraps it. The empty graph is allowed and
    /// represents the empty shift.
    pub fn from_graph(graph: LabeledGraph) -> Result<Self> {
        let (graph, _) = graph.trim();
        let kind = if graph.vertex_count() > 0 && graph.has_injective_labeling() {
            ShiftKind::SftEdgeShift
        } else {
            ShiftKind::Sofic
        };
        Ok(ShiftHandle {
            graph,
            kind,
            fischer: OnceLock::new(),
            left_fischer: OnceLock::new(),
        })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        let graph = LabeledGraph::new(alphabet, Vec::new(), Vec::new())
            .expect("empty graph construction");
        ShiftHandle {
            graph,
            kind: ShiftKind::Sofic,
            fischer: OnceLock::new(),
            left_fischer: OnceLock::new(),
        }
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn kind(&self) -> ShiftKind {
        self.kind
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.graph.alphabet()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.vertex_count() == 0
    }

    pub fn is_irreducible_presentation(&self) -> bool {
        self.graph.is_irreducible()
    }

    /// Minimal right-resolving presentation (cached).
    pub fn fischer(&self) -> Result<&FischerCover> {
        if let Some(f) = self.fischer.get() {
            return Ok(f);
        }
        let f = present::fischer_cover(self)?;
        let _ = self.fischer.set(f);
        Ok(self.fischer.get().expect("fischer cache set"))
    }

    /// Minimal left-resolving presentation (cached).
    pub fn left_fischer(&self) -> Result<&FischerCover> {
        if let Some(f) = self.left_fischer.get() {
            return Ok(f);
        }
        let f = present::left_fischer_cover(self)?;
        let _ = self.left_fischer.set(f);
        Ok(self.left_fischer.get().expect("left fischer cache set"))
    }
}

/// A 1-block factor code from an SFT edge shift onto a sofic shift: the
/// domain is the edge shift of `cover`, the map reads off edge labels, and
/// the image equals `codomain`. Construction validates image equality.
#[derive(Debug, Clone)]
pub struct CoverSpec {
    cover: LabeledGraph,
    codomain: ShiftHandle,
}

impl CoverSpec {
    pub fn new(cover: LabeledGraph, codomain: ShiftHandle) -> Result<Self> {
        let (trimmed, _) = cover.trim();
        if trimmed != cover {
            return Err(Error::Precondition(
                "cover presentation must be essential".into(),
            ));
        }
        if cover.vertex_count() == 0 || codomain.is_empty() {
            return Err(Error::EmptyShift("cover specification".into()));
        }
        if cover.alphabet() != codomain.alphabet() {
            return Err(Error::Precondition(
                "cover and codomain must share an alphabet".into(),
            ));
        }
        // Image equality as two containments; this works for reducible
        // covers as well.
        if !present::graph_language_contains(codomain.graph(), &cover)? {
            return Err(Error::Precondition(
                "cover image is not contained in the codomain".into(),
            ));
        }
        if !present::graph_language_contains(&cover, codomain.graph())? {
            return Err(Error::Precondition(
                "codomain is not contained in the cover image".into(),
            ));
        }
        Ok(CoverSpec { cover, codomain })
    }

    /// Skips image validation. For construction-internal covers whose image
    /// equality is established by the surrounding algorithm and re-checked
    /// by its validation step.
    pub(crate) fn new_unchecked(cover: LabeledGraph, codomain: ShiftHandle) -> Self {
        CoverSpec { cover, codomain }
    }

    /// The identity cover of an SFT edge shift: the labeling of the
    /// presentation is already injective, so it is itself a conjugacy.
    pub fn identity(handle: &ShiftHandle) -> Result<Self> {
        if handle.kind() != ShiftKind::SftEdgeShift {
            return Err(Error::Precondition(
                "identity cover requires an SFT edge shift handle".into(),
            ));
        }
        Ok(CoverSpec {
            cover: handle.graph().clone(),
            codomain: handle.clone(),
        })
    }

    pub fn cover_graph(&self) -> &LabeledGraph {
        &self.cover
    }

    pub fn codomain(&self) -> &ShiftHandle {
        &self.codomain
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::LabeledGraph;

    fn even_graph() -> LabeledGraph {
        let a = Alphabet::new(["0", "1"]).unwrap();
        LabeledGraph::new(
            a,
            vec!["A".into(), "B".into()],
            vec![(0, 0, 1), (0, 1, 0), (1, 0, 0)],
        )
        .unwrap()
    }

    #[test]
    fn kind_detection() {
        let h = ShiftHandle::from_graph(even_graph()).unwrap();
        assert_eq!(h.kind(), ShiftKind::Sofic);
        let e = ShiftHandle::from_graph(even_graph().edge_shift_presentation().unwrap()).unwrap();
        assert_eq!(e.kind(), ShiftKind::SftEdgeShift);
    }

    #[test]
    fn from_graph_trims() {
        let a = Alphabet::new(["0"]).unwrap();
        let g = LabeledGraph::new(
            a.clone(),
            vec!["A".into(), "B".into()],
            vec![(0, 0, 0), (0, 1, 0)],
        )
        .unwrap();
        let h = ShiftHandle::from_graph(g).unwrap();
        assert_eq!(h.graph().vertex_count(), 1);
        let empty = ShiftHandle::empty(a);
        assert!(empty.is_empty());
    }

    #[test]
    fn identity_cover_only_for_edge_shifts() {
        let sofic = ShiftHandle::from_graph(even_graph()).unwrap();
        assert!(CoverSpec::identity(&sofic).is_err());
        let sft =
            ShiftHandle::from_graph(even_graph().edge_shift_presentation().unwrap()).unwrap();
        let c = CoverSpec::identity(&sft).unwrap();
        assert_eq!(c.cover_graph(), sft.graph());
    }

    #[test]
    fn cover_spec_validates_image() {
        let even = ShiftHandle::from_graph(even_graph()).unwrap();
        // The presentation itself covers its own image.
        let ok = CoverSpec::new(even_graph(), even.clone());
        assert!(ok.is_ok());
        // A cover of the golden mean shift does not present the even shift.
        let a = Alphabet::new(["0", "1"]).unwrap();
        let golden = LabeledGraph::new(
            a,
            vec!["A".into(), "B".into()],
            vec![(0, 0, 1), (0, 1, 0), (1, 0, 1)],
        )
        .unwrap();
        assert!(CoverSpec::new(golden, even).is_err());
    }
}
