//! Finite edge-labeled multigraphs and the basic graph operations every
//! other module builds on. Edges carry stable integer ids: ids are indices
//! into the edge list, and every rebuilding operation reports an id map.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol, Word};

pub type VertexId = u32;
pub type EdgeId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub src: VertexId,
    pub dst: VertexId,
    pub label: Symbol,
}

/// Edge-labeled multigraph over an [`Alphabet`]. Vertex names are unique.
/// Out- and in-edge lists are kept sorted by (label, endpoint, id) so every
/// traversal in the crate is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledGraph {
    alphabet: Alphabet,
    vertex_names: Vec<String>,
    edges: Vec<Edge>,
    #[serde(skip)]
    out: Vec<Vec<EdgeId>>,
    #[serde(skip)]
    inn: Vec<Vec<EdgeId>>,
}

/// Maps from pre-operation ids to post-operation ids. `None` marks deletion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdMap {
    pub vertex_map: Vec<Option<VertexId>>,
    pub edge_map: Vec<Option<EdgeId>>,
}

#[derive(Debug, Clone)]
pub struct SccDecomposition {
    /// Components in topological order of the condensation (edges go from
    /// lower to higher index or stay inside a component).
    pub components: Vec<Vec<VertexId>>,
    /// Component index of each vertex.
    pub component_of: Vec<usize>,
    /// Whether the component contains an edge (equivalently, a cycle).
    pub cycle_bearing: Vec<bool>,
}

/// Records how a higher block presentation was built: each new vertex is a
/// path of `m - 1` old edges starting at `start`, each new edge is a path
/// of `m` old edges.
#[derive(Debug, Clone)]
pub struct HigherBlockMap {
    pub m: u32,
    pub vertex_paths: Vec<(VertexId, Vec<EdgeId>)>,
    pub edge_paths: Vec<Vec<EdgeId>>,
}

impl LabeledGraph {
    pub fn new(
        alphabet: Alphabet,
        vertex_names: Vec<String>,
        edges: Vec<(VertexId, VertexId, Symbol)>,
    ) -> Result<Self> {
        let n = vertex_names.len();
        let mut seen = BTreeSet::new();
        for name in &vertex_names {
            if !seen.insert(name.clone()) {
                return Err(Error::Precondition(format!("duplicate vertex name {name:?}")));
            }
        }
        let mut es = Vec::with_capacity(edges.len());
        for &(src, dst, label) in &edges {
            if src as usize >= n || dst as usize >= n {
                return Err(Error::Precondition(format!(
                    "edge endpoint out of range: {src} -> {dst} with {n} vertices"
                )));
            }
            if label as usize >= alphabet.len() {
                return Err(Error::Precondition(format!(
                    "edge label {label} out of range for alphabet of size {}",
                    alphabet.len()
                )));
            }
            es.push(Edge { src, dst, label });
        }
        let mut g = LabeledGraph {
            alphabet,
            vertex_names,
            edges: es,
            out: Vec::new(),
            inn: Vec::new(),
        };
        g.rebuild_adjacency();
        Ok(g)
    }

    /// Builds a graph with numbered vertex names `v0..v{n-1}`.
    pub fn with_numbered_vertices(
        alphabet: Alphabet,
        n: usize,
        edges: Vec<(VertexId, VertexId, Symbol)>,
    ) -> Result<Self> {
        let names = (0..n).map(|i| format!("v{i}")).collect();
        Self::new(alphabet, names, edges)
    }

    pub(crate) fn rebuild_adjacency(&mut self) {
        let n = self.vertex_names.len();
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        let mut order: Vec<EdgeId> = (0..self.edges.len() as EdgeId).collect();
        order.sort_by_key(|&e| {
            let ed = &self.edges[e as usize];
            (ed.label, ed.dst, e)
        });
        for &e in &order {
            out[self.edges[e as usize].src as usize].push(e);
        }
        order.sort_by_key(|&e| {
            let ed = &self.edges[e as usize];
            (ed.label, ed.src, e)
        });
        for &e in &order {
            inn[self.edges[e as usize].dst as usize].push(e);
        }
        self.out = out;
        self.inn = inn;
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v as usize]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names
            .iter()
            .position(|n| n == name)
            .map(|i| i as VertexId)
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e as usize]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v as usize]
    }

    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.inn[v as usize]
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.vertex_names.len() as VertexId
    }

    /// Steps the nondeterministic transition relation: all endpoints of
    /// `label`-edges leaving `v`.
    pub fn successors(&self, v: VertexId, label: Symbol) -> impl Iterator<Item = VertexId> + '_ {
        self.out[v as usize]
            .iter()
            .filter(move |&&e| self.edges[e as usize].label == label)
            .map(|&e| self.edges[e as usize].dst)
    }

    pub fn is_essential(&self) -> bool {
        self.vertices()
            .all(|v| !self.out[v as usize].is_empty() && !self.inn[v as usize].is_empty())
    }

    /// Deletes vertices not on any bi-infinite path: repeatedly strips
    /// vertices with no outgoing or no incoming edge. The result may be the
    /// empty graph; that represents the empty shift.
    pub fn trim(&self) -> (LabeledGraph, IdMap) {
        let n = self.vertex_count();
        let mut alive = vec![true; n];
        let mut outdeg: Vec<usize> = (0..n).map(|v| self.out[v].len()).collect();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.inn[v].len()).collect();
        let mut queue: VecDeque<usize> =
            (0..n).filter(|&v| outdeg[v] == 0 || indeg[v] == 0).collect();
        let mut queued: Vec<bool> = (0..n).map(|v| outdeg[v] == 0 || indeg[v] == 0).collect();
        while let Some(v) = queue.pop_front() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for &e in &self.out[v] {
                let w = self.edges[e as usize].dst as usize;
                if alive[w] {
                    indeg[w] -= 1;
                    if indeg[w] == 0 && !queued[w] {
                        queued[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            for &e in &self.inn[v] {
                let w = self.edges[e as usize].src as usize;
                if alive[w] {
                    outdeg[w] -= 1;
                    if outdeg[w] == 0 && !queued[w] {
                        queued[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        let keep: Vec<VertexId> = (0..n as VertexId).filter(|&v| alive[v as usize]).collect();
        self.restrict_to_vertices(&keep)
    }

    /// Subgraph induced by `keep` (order defines new ids). Edges with both
    /// endpoints kept survive, preserving relative id order.
    pub fn restrict_to_vertices(&self, keep: &[VertexId]) -> (LabeledGraph, IdMap) {
        let mut vertex_map = vec![None; self.vertex_count()];
        for (new, &old) in keep.iter().enumerate() {
            vertex_map[old as usize] = Some(new as VertexId);
        }
        let mut edge_map = vec![None; self.edges.len()];
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if let (Some(s), Some(d)) = (vertex_map[e.src as usize], vertex_map[e.dst as usize]) {
                edge_map[i] = Some(edges.len() as EdgeId);
                edges.push(Edge {
                    src: s,
                    dst: d,
                    label: e.label,
                });
            }
        }
        let names = keep
            .iter()
            .map(|&v| self.vertex_names[v as usize].clone())
            .collect();
        let mut g = LabeledGraph {
            alphabet: self.alphabet.clone(),
            vertex_names: names,
            edges,
            out: Vec::new(),
            inn: Vec::new(),
        };
        g.rebuild_adjacency();
        (g, IdMap { vertex_map, edge_map })
    }

    /// Subgraph keeping exactly the listed edges and every vertex.
    pub fn restrict_to_edges(&self, keep: &BTreeSet<EdgeId>) -> (LabeledGraph, IdMap) {
        let vertex_map = (0..self.vertex_count() as VertexId).map(Some).collect();
        let mut edge_map = vec![None; self.edges.len()];
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if keep.contains(&(i as EdgeId)) {
                edge_map[i] = Some(edges.len() as EdgeId);
                edges.push(*e);
            }
        }
        let mut g = LabeledGraph {
            alphabet: self.alphabet.clone(),
            vertex_names: self.vertex_names.clone(),
            edges,
            out: Vec::new(),
            inn: Vec::new(),
        };
        g.rebuild_adjacency();
        (g, IdMap { vertex_map, edge_map })
    }

    /// Tarjan's strongly connected components, iterative. Components are
    /// returned in topological order of the condensation.
    pub fn scc_decompose(&self) -> SccDecomposition {
        let n = self.vertex_count();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack: Vec<usize> = Vec::new();
        let mut next_index = 0usize;
        let mut components: Vec<Vec<VertexId>> = Vec::new();
        let mut component_of = vec![usize::MAX; n];

        // Explicit DFS stack: (vertex, next out-edge position).
        let mut call: Vec<(usize, usize)> = Vec::new();
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            call.push((root, 0));
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut pos)) = call.last_mut() {
                if *pos < self.out[v].len() {
                    let e = self.out[v][*pos];
                    *pos += 1;
                    let w = self.edges[e as usize].dst as usize;
                    if index[w] == usize::MAX {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().expect("tarjan stack underflow");
                            on_stack[w] = false;
                            component_of[w] = components.len();
                            comp.push(w as VertexId);
                            if w == v {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        components.push(comp);
                    }
                }
            }
        }
        // Tarjan emits components in reverse topological order.
        components.reverse();
        let count = components.len();
        for c in component_of.iter_mut() {
            *c = count - 1 - *c;
        }
        let cycle_bearing = components
            .iter()
            .enumerate()
            .map(|(ci, comp)| {
                comp.iter().any(|&v| {
                    self.out[v as usize]
                        .iter()
                        .any(|&e| component_of[self.edges[e as usize].dst as usize] == ci)
                })
            })
            .collect();
        SccDecomposition {
            components,
            component_of,
            cycle_bearing,
        }
    }

    pub fn is_irreducible(&self) -> bool {
        !self.edges.is_empty() && self.scc_decompose().components.len() == 1 && self.is_essential()
    }

    /// Period of an essential irreducible graph: the gcd of its cycle
    /// lengths. Computed from a BFS potential: for depths d, every edge
    /// u -> v contributes |d(u) + 1 - d(v)| to the gcd.
    pub fn graph_period(&self) -> Result<u64> {
        if !self.is_irreducible() {
            return Err(Error::NotIrreducible(
                "graph period is defined for essential irreducible graphs".into(),
            ));
        }
        let n = self.vertex_count();
        let mut depth = vec![i64::MIN; n];
        depth[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.out[v] {
                let w = self.edges[e as usize].dst as usize;
                if depth[w] == i64::MIN {
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        let mut g: u64 = 0;
        for e in &self.edges {
            let imbalance = (depth[e.src as usize] + 1 - depth[e.dst as usize]).unsigned_abs();
            g = g.gcd(&imbalance);
        }
        if g == 0 {
            return Err(Error::Internal(
                "irreducible graph with zero period gcd".into(),
            ));
        }
        Ok(g)
    }

    /// m-th higher block presentation, m >= 1. New vertices are paths of
    /// m - 1 edges, new edges are paths of m edges; a new edge carries the
    /// label of the first old edge on its path, so the presented shift is
    /// unchanged and the map on covers is a conjugacy.
    pub fn higher_block(&self, m: u32) -> Result<(LabeledGraph, HigherBlockMap)> {
        if m == 0 {
            return Err(Error::Precondition("higher block order must be >= 1".into()));
        }
        if !self.is_essential() {
            return Err(Error::Precondition(
                "higher block presentation requires an essential graph".into(),
            ));
        }
        // Paths of length m - 1, extended one edge at a time.
        let mut paths: Vec<(VertexId, Vec<EdgeId>)> =
            self.vertices().map(|v| (v, Vec::new())).collect();
        for _ in 1..m {
            let mut next = Vec::new();
            for (start, path) in &paths {
                let end = match path.last() {
                    Some(&e) => self.edges[e as usize].dst,
                    None => *start,
                };
                for &e in &self.out[end as usize] {
                    let mut p = path.clone();
                    p.push(e);
                    next.push((*start, p));
                }
            }
            paths = next;
        }
        let mut index: BTreeMap<(VertexId, Vec<EdgeId>), VertexId> = BTreeMap::new();
        for (i, key) in paths.iter().enumerate() {
            index.insert(key.clone(), i as VertexId);
        }
        let names = paths
            .iter()
            .map(|(start, path)| {
                if path.is_empty() {
                    self.vertex_names[*start as usize].clone()
                } else {
                    let ids: Vec<String> = path.iter().map(|e| format!("e{e}")).collect();
                    format!("{}[{}]", RESERVED, ids.join("."))
                }
            })
            .collect();
        let mut edges = Vec::new();
        let mut edge_paths = Vec::new();
        for (i, (start, path)) in paths.iter().enumerate() {
            let end = match path.last() {
                Some(&e) => self.edges[e as usize].dst,
                None => *start,
            };
            for &e in &self.out[end as usize] {
                let mut full = path.clone();
                full.push(e);
                // Target vertex: drop the first edge of the extended path.
                let (tstart, tpath) = if full.len() == 1 {
                    (self.edges[full[0] as usize].dst, Vec::new())
                } else {
                    (self.edges[full[0] as usize].dst, full[1..].to_vec())
                };
                let t = *index
                    .get(&(tstart, tpath))
                    .ok_or_else(|| Error::Internal("higher block path not indexed".into()))?;
                let label = self.edges[full[0] as usize].label;
                edges.push((i as VertexId, t, label));
                edge_paths.push(full);
            }
        }
        let g = LabeledGraph::new(self.alphabet.clone(), names, edges)?;
        Ok((
            g,
            HigherBlockMap {
                m,
                vertex_paths: paths,
                edge_paths,
            },
        ))
    }

    /// Edge-reversed graph: labels kept, sources and targets swapped.
    /// Presents the reversed shift; edge ids are preserved.
    pub fn reverse(&self) -> LabeledGraph {
        let mut g = LabeledGraph {
            alphabet: self.alphabet.clone(),
            vertex_names: self.vertex_names.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    src: e.dst,
                    dst: e.src,
                    label: e.label,
                })
                .collect(),
            out: Vec::new(),
            inn: Vec::new(),
        };
        g.rebuild_adjacency();
        g
    }

    /// Disjoint union. Vertex names are prefixed to stay unique; returns
    /// the vertex id offset of `other` inside the union.
    pub fn disjoint_union(&self, other: &LabeledGraph) -> Result<(LabeledGraph, VertexId)> {
        if self.alphabet != other.alphabet {
            return Err(Error::Precondition(
                "disjoint union requires a shared alphabet".into(),
            ));
        }
        let offset = self.vertex_count() as VertexId;
        let mut names: Vec<String> = self
            .vertex_names
            .iter()
            .map(|n| format!("{RESERVED}0.{n}"))
            .collect();
        names.extend(other.vertex_names.iter().map(|n| format!("{RESERVED}1.{n}")));
        let mut edges: Vec<(VertexId, VertexId, Symbol)> =
            self.edges.iter().map(|e| (e.src, e.dst, e.label)).collect();
        edges.extend(
            other
                .edges
                .iter()
                .map(|e| (e.src + offset, e.dst + offset, e.label)),
        );
        Ok((LabeledGraph::new(self.alphabet.clone(), names, edges)?, offset))
    }

    /// Integer adjacency matrix (edge multiplicities).
    pub fn adjacency(&self) -> Vec<Vec<u64>> {
        let n = self.vertex_count();
        let mut a = vec![vec![0u64; n]; n];
        for e in &self.edges {
            a[e.src as usize][e.dst as usize] += 1;
        }
        a
    }

    /// Reinterprets the graph as an edge shift presentation: same shape,
    /// every edge relabeled by its own id, alphabet `e0..e{k-1}`.
    pub fn edge_shift_presentation(&self) -> Result<LabeledGraph> {
        let alphabet =
            Alphabet::with_generated((0..self.edges.len()).map(|i| format!("e{i}")))?;
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.src, e.dst, i as Symbol))
            .collect();
        LabeledGraph::new(alphabet, self.vertex_names.clone(), edges)
    }

    /// True when no two edges share the same label, i.e. the labeling is a
    /// bijection onto its image and the presented shift is conjugate to the
    /// edge shift of the graph itself.
    pub fn has_injective_labeling(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| seen.insert(e.label))
    }

    /// No vertex has two outgoing edges with the same label.
    pub fn is_right_resolving(&self) -> bool {
        self.vertices().all(|v| {
            let mut seen = BTreeSet::new();
            self.out[v as usize]
                .iter()
                .all(|&e| seen.insert(self.edges[e as usize].label))
        })
    }

    /// No vertex has two incoming edges with the same label.
    pub fn is_left_resolving(&self) -> bool {
        self.vertices().all(|v| {
            let mut seen = BTreeSet::new();
            self.inn[v as usize]
                .iter()
                .all(|&e| seen.insert(self.edges[e as usize].label))
        })
    }

    /// Deterministic single-symbol image of a sorted vertex subset.
    pub fn subset_image(&self, subset: &[VertexId], label: Symbol) -> Vec<VertexId> {
        let mut image = BTreeSet::new();
        for &v in subset {
            for w in self.successors(v, label) {
                image.insert(w);
            }
        }
        image.into_iter().collect()
    }

    /// Iterated subset image along a word.
    pub fn subset_run(&self, subset: &[VertexId], word: &[Symbol]) -> Vec<VertexId> {
        let mut current: Vec<VertexId> = subset.to_vec();
        for &a in word {
            if current.is_empty() {
                break;
            }
            current = self.subset_image(&current, a);
        }
        current
    }

    pub fn full_vertex_set(&self) -> Vec<VertexId> {
        self.vertices().collect()
    }

    /// Label word along an edge path.
    pub fn label_word(&self, path: &[EdgeId]) -> Word {
        Word(path.iter().map(|&e| self.edges[e as usize].label).collect())
    }

    /// True when consecutive edges are incident (dst of one is src of next).
    pub fn is_path(&self, path: &[EdgeId]) -> bool {
        path.windows(2)
            .all(|w| self.edges[w[0] as usize].dst == self.edges[w[1] as usize].src)
    }
}

const RESERVED: char = crate::word::RESERVED_PREFIX;

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn even_shift() -> LabeledGraph {
        // A -1-> A, A -0-> B, B -0-> A.
        let a = Alphabet::new(["0", "1"]).unwrap();
        LabeledGraph::new(
            a,
            vec!["A".into(), "B".into()],
            vec![(0, 0, 1), (0, 1, 0), (1, 0, 0)],
        )
        .unwrap()
    }

    #[test]
    fn trim_removes_stranded_vertices() {
        let a = Alphabet::new(["0", "1"]).unwrap();
        // C only reachable, D only co-reachable, E isolated.
        let g = LabeledGraph::new(
            a,
            vec!["A".into(), "B".into(), "C".into(), "D".into(), "E".into()],
            vec![(0, 1, 0), (1, 0, 1), (0, 2, 0), (3, 0, 1)],
        )
        .unwrap();
        let (t, map) = g.trim();
        assert_eq!(t.vertex_count(), 2);
        assert_eq!(t.edge_count(), 2);
        assert!(t.is_essential());
        assert_eq!(map.vertex_map[2], None);
        assert_eq!(map.vertex_map[0], Some(0));
        // Trim is idempotent.
        let (t2, _) = t.trim();
        assert_eq!(t2, t);
    }

    #[test]
    fn trim_can_empty_the_graph() {
        let a = Alphabet::new(["0"]).unwrap();
        let g = LabeledGraph::new(a, vec!["A".into(), "B".into()], vec![(0, 1, 0)]).unwrap();
        let (t, _) = g.trim();
        assert_eq!(t.vertex_count(), 0);
    }

    #[test]
    fn scc_topological_order_and_cycles() {
        let a = Alphabet::new(["0"]).unwrap();
        // Two 1-cycles joined by a path through an acyclic middle vertex.
        let g = LabeledGraph::new(
            a,
            vec!["A".into(), "M".into(), "B".into()],
            vec![(0, 0, 0), (0, 1, 0), (1, 2, 0), (2, 2, 0)],
        )
        .unwrap();
        let scc = g.scc_decompose();
        assert_eq!(scc.components.len(), 3);
        // Topological order: A before M before B.
        assert!(scc.component_of[0] < scc.component_of[1]);
        assert!(scc.component_of[1] < scc.component_of[2]);
        let m_comp = scc.component_of[1];
        assert!(!scc.cycle_bearing[m_comp]);
        assert!(scc.cycle_bearing[scc.component_of[0]]);
    }

    #[test]
    fn period_of_even_presentation_is_one() {
        assert_eq!(even_shift().graph_period().unwrap(), 1);
    }

    #[test]
    fn period_of_bipartite_cycle_is_two() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        let g = LabeledGraph::new(
            a,
            vec!["x".into(), "y".into()],
            vec![(0, 1, 0), (1, 0, 0), (0, 1, 1)],
        )
        .unwrap();
        assert_eq!(g.graph_period().unwrap(), 2);
    }

    #[test]
    fn higher_block_preserves_period_and_counts() {
        let g = even_shift();
        for m in 1..=3 {
            let (h, map) = g.higher_block(m).unwrap();
            assert!(h.is_irreducible());
            assert_eq!(h.graph_period().unwrap(), 1);
            // Vertices of the m-th block graph are paths of m - 1 edges.
            assert!(map.vertex_paths.iter().all(|(_, p)| p.len() == (m - 1) as usize));
            assert_eq!(h.edge_count(), map.edge_paths.len());
        }
        let (h2, _) = g.higher_block(2).unwrap();
        // Paths of one edge: one per edge.
        assert_eq!(h2.vertex_count(), 3);
        assert_eq!(h2.edge_count(), 5);
    }

    #[test]
    fn reverse_round_trip() {
        let g = even_shift();
        let r = g.reverse().reverse();
        assert_eq!(g, r);
    }

    #[test]
    fn edge_shift_presentation_has_injective_labels() {
        let g = even_shift();
        assert!(!g.has_injective_labeling());
        let e = g.edge_shift_presentation().unwrap();
        assert!(e.has_injective_labeling());
        assert_eq!(e.edge_count(), g.edge_count());
    }

    #[test]
    fn restrict_reports_id_maps() {
        let g = even_shift();
        let (sub, map) = g.restrict_to_vertices(&[0]);
        assert_eq!(sub.vertex_count(), 1);
        assert_eq!(sub.edge_count(), 1); // only the loop at A survives
        assert_eq!(map.edge_map[0], Some(0));
        assert_eq!(map.edge_map[1], None);
    }
}
