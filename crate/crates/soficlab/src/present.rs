//! Presentations of sofic shifts: subset determinization, Fischer covers,
//! magic and synchronizing words, and exact comparisons (containment,
//! equality, isomorphism of deterministic presentations).

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexId};
use crate::shift::ShiftHandle;
use crate::word::{Symbol, Word};

/// Deterministic subset automaton built from one initial subset. State ids
/// index `subsets`; state 0 is the initial subset. The empty subset is not
/// a state: a missing transition means the symbol kills the subset.
#[derive(Debug, Clone)]
pub struct SubsetAutomaton {
    pub subsets: Vec<Vec<VertexId>>,
    pub transitions: Vec<Vec<Option<u32>>>,
}

impl SubsetAutomaton {
    pub fn state_count(&self) -> usize {
        self.subsets.len()
    }

    /// The subsets, indexed by state id; each is sorted.
    pub fn subsets(&self) -> impl Iterator<Item = &[VertexId]> {
        self.subsets.iter().map(|s| s.as_slice())
    }

    pub fn step(&self, state: u32, symbol: Symbol) -> Option<u32> {
        self.transitions[state as usize][symbol as usize]
    }

    pub fn run(&self, state: u32, word: &[Symbol]) -> Option<u32> {
        let mut s = state;
        for &a in word {
            s = self.step(s, a)?;
        }
        Some(s)
    }

    /// Converts the automaton into a labeled graph whose vertices are the
    /// subset states. Vertex names render the subsets through `g`.
    pub fn to_graph(&self, g: &LabeledGraph) -> Result<LabeledGraph> {
        let names = self
            .subsets
            .iter()
            .map(|s| render_subset(g, s))
            .collect::<Vec<_>>();
        let mut edges = Vec::new();
        for (s, row) in self.transitions.iter().enumerate() {
            for (a, t) in row.iter().enumerate() {
                if let Some(t) = t {
                    edges.push((s as VertexId, *t, a as Symbol));
                }
            }
        }
        LabeledGraph::new(g.alphabet().clone(), names, edges)
    }
}

fn render_subset(g: &LabeledGraph, subset: &[VertexId]) -> String {
    let names: Vec<&str> = subset.iter().map(|&v| g.vertex_name(v)).collect();
    format!("{{{}}}", names.join(","))
}

/// Subset construction from `initial`, exploring only reachable subsets.
/// Errors when more than `cap` subsets appear.
pub fn determinize(
    g: &LabeledGraph,
    initial: Vec<VertexId>,
    cap: usize,
) -> Result<SubsetAutomaton> {
    let mut subsets: Vec<Vec<VertexId>> = Vec::new();
    let mut index: HashMap<Vec<VertexId>, u32> = HashMap::new();
    let mut transitions: Vec<Vec<Option<u32>>> = Vec::new();
    let mut initial_sorted = initial;
    initial_sorted.sort_unstable();
    initial_sorted.dedup();
    index.insert(initial_sorted.clone(), 0);
    subsets.push(initial_sorted);
    let mut queue = VecDeque::from([0u32]);
    while let Some(s) = queue.pop_front() {
        let mut row = vec![None; g.alphabet().len()];
        for a in g.alphabet().symbols() {
            let image = g.subset_image(&subsets[s as usize], a);
            if image.is_empty() {
                continue;
            }
            let id = match index.get(&image) {
                Some(&id) => id,
                None => {
                    let id = subsets.len() as u32;
                    if subsets.len() >= cap {
                        return Err(Error::budget("determinizing a presentation", cap as u64));
                    }
                    index.insert(image.clone(), id);
                    subsets.push(image);
                    queue.push_back(id);
                    id
                }
            };
            row[a as usize] = Some(id);
        }
        transitions.push(row);
    }
    Ok(SubsetAutomaton {
        subsets,
        transitions,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Orientation {
    Right,
    Left,
}

/// Minimal deterministic presentation of an irreducible sofic shift: for
/// `Right`, the unique (up to isomorphism) right-resolving, follower
/// separated, irreducible presentation. Construction also certifies a magic
/// word: reading it from the full vertex set leaves exactly one vertex, the
/// collapse vertex. For `Left` the graph is left-resolving and the magic
/// word pins the unique source of its paths instead.
#[derive(Debug, Clone)]
pub struct FischerCover {
    graph: LabeledGraph,
    orientation: Orientation,
    magic_word: Word,
    collapse_vertex: VertexId,
}

impl FischerCover {
    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn magic_word(&self) -> &Word {
        &self.magic_word
    }

    pub fn collapse_vertex(&self) -> VertexId {
        self.collapse_vertex
    }

    /// Deterministic transition: the unique `label`-successor of `v`.
    pub fn step(&self, v: VertexId, label: Symbol) -> Option<VertexId> {
        debug_assert_eq!(self.orientation, Orientation::Right);
        self.graph.successors(v, label).next()
    }

    pub fn run(&self, v: VertexId, word: &[Symbol]) -> Option<VertexId> {
        let mut cur = v;
        for &a in word {
            cur = self.step(cur, a)?;
        }
        Some(cur)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum MagicStatus {
    /// All paths carrying the word end at one vertex (start at one vertex,
    /// for left covers).
    Magic,
    /// The word occurs but does not collapse the cover.
    NotMagic,
    /// The word is not in the language of the shift.
    NotInLanguage,
}

/// Right Fischer cover of an irreducible sofic shift.
pub fn fischer_cover(handle: &ShiftHandle) -> Result<FischerCover> {
    if handle.is_empty() {
        return Err(Error::EmptyShift("fischer cover".into()));
    }
    let g = handle.graph();
    if !g.is_irreducible() {
        return Err(Error::NotIrreducible(
            "fischer cover requires an irreducible presentation".into(),
        ));
    }
    let cap = Budgets::default().state_cap;
    let det = determinize(g, g.full_vertex_set(), cap)?;

    // Reachable subset of minimal cardinality. From any subset reachable
    // from it, reading a return word reaches it exactly again (minimality
    // plus irreducibility), so the part of the automaton reachable from it
    // is strongly connected and still presents the shift.
    let s0 = (0..det.state_count() as u32)
        .min_by_key(|&s| (det.subsets[s as usize].len(), s))
        .expect("determinization has at least one state");
    let mut reach = vec![false; det.state_count()];
    reach[s0 as usize] = true;
    let mut queue = VecDeque::from([s0]);
    let mut order = vec![s0];
    while let Some(s) = queue.pop_front() {
        for t in det.transitions[s as usize].iter().flatten() {
            if !reach[*t as usize] {
                reach[*t as usize] = true;
                queue.push_back(*t);
                order.push(*t);
            }
        }
    }

    // Merge states with equal follower languages: partition refinement on
    // (symbol alive?, class of target) signatures.
    let mut class: HashMap<u32, u32> = order.iter().map(|&s| (s, 0)).collect();
    let mut class_count = 1u32;
    loop {
        let mut sig_to_class: BTreeMap<Vec<Option<u32>>, u32> = BTreeMap::new();
        let mut next: HashMap<u32, u32> = HashMap::new();
        for &s in &order {
            let sig: Vec<Option<u32>> = det.transitions[s as usize]
                .iter()
                .map(|t| t.map(|t| class[&t]))
                .collect();
            let id = match sig_to_class.get(&sig) {
                Some(&id) => id,
                None => {
                    let id = sig_to_class.len() as u32;
                    sig_to_class.insert(sig, id);
                    id
                }
            };
            next.insert(s, id);
        }
        let next_count = sig_to_class.len() as u32;
        let stable = next_count == class_count && order.iter().all(|s| class[s] == next[s]);
        class = next;
        class_count = next_count;
        if stable {
            break;
        }
    }

    // Quotient graph. Class representative: the member whose subset is
    // smallest (by cardinality, then lexicographically); its subset names
    // the vertex.
    let mut rep: Vec<Option<u32>> = vec![None; class_count as usize];
    for &s in &order {
        let c = class[&s] as usize;
        let better = match rep[c] {
            None => true,
            Some(r) => {
                let a = &det.subsets[s as usize];
                let b = &det.subsets[r as usize];
                (a.len(), a) < (b.len(), b)
            }
        };
        if better {
            rep[c] = Some(s);
        }
    }
    let names: Vec<String> = rep
        .iter()
        .map(|r| render_subset(g, &det.subsets[r.expect("nonempty class") as usize]))
        .collect();
    let mut edges = Vec::new();
    for (c, r) in rep.iter().enumerate() {
        let r = r.expect("nonempty class");
        for (a, t) in det.transitions[r as usize].iter().enumerate() {
            if let Some(t) = t {
                edges.push((c as VertexId, class[t], a as Symbol));
            }
        }
    }
    let cover = LabeledGraph::new(g.alphabet().clone(), names, edges)?;
    if !cover.is_irreducible() {
        return Err(Error::Internal(
            "fischer quotient is not strongly connected".into(),
        ));
    }
    if !cover.is_right_resolving() {
        return Err(Error::Internal("fischer quotient is not deterministic".into()));
    }

    let (magic_word, collapse_vertex) = find_magic_word(&cover, cap)?;
    Ok(FischerCover {
        graph: cover,
        orientation: Orientation::Right,
        magic_word,
        collapse_vertex,
    })
}

/// Shortest word whose subset run from the full vertex set is a singleton,
/// by breadth-first search over the subset automaton.
fn find_magic_word(g: &LabeledGraph, cap: usize) -> Result<(Word, VertexId)> {
    let det = determinize(g, g.full_vertex_set(), cap)?;
    if det.subsets[0].len() == 1 {
        return Ok((Word::empty(), det.subsets[0][0]));
    }
    let mut parent: Vec<Option<(u32, Symbol)>> = vec![None; det.state_count()];
    let mut seen = vec![false; det.state_count()];
    seen[0] = true;
    let mut queue = VecDeque::from([0u32]);
    while let Some(s) = queue.pop_front() {
        for (a, t) in det.transitions[s as usize].iter().enumerate() {
            let Some(t) = *t else { continue };
            if seen[t as usize] {
                continue;
            }
            seen[t as usize] = true;
            parent[t as usize] = Some((s, a as Symbol));
            if det.subsets[t as usize].len() == 1 {
                let mut word = Vec::new();
                let mut cur = t;
                while let Some((p, sym)) = parent[cur as usize] {
                    word.push(sym);
                    cur = p;
                }
                word.reverse();
                return Ok((Word(word), det.subsets[t as usize][0]));
            }
            queue.push_back(t);
        }
    }
    Err(Error::Internal(
        "deterministic irreducible presentation admits no collapse word".into(),
    ))
}

/// Left Fischer cover: minimal left-resolving presentation, computed as the
/// reversed right cover of the reversed shift.
pub fn left_fischer_cover(handle: &ShiftHandle) -> Result<FischerCover> {
    if handle.is_empty() {
        return Err(Error::EmptyShift("left fischer cover".into()));
    }
    let reversed = ShiftHandle::from_graph(handle.graph().reverse())?;
    let f = fischer_cover(&reversed)?;
    let mut magic = f.magic_word.clone();
    magic.0.reverse();
    Ok(FischerCover {
        graph: f.graph.reverse(),
        orientation: Orientation::Left,
        magic_word: magic,
        collapse_vertex: f.collapse_vertex,
    })
}

/// Does `w` collapse the cover? For right covers: the endpoints of all
/// paths labeled `w` form a singleton. For left covers: the sources do.
pub fn is_magic(cover: &FischerCover, w: &Word) -> MagicStatus {
    let image = match cover.orientation {
        Orientation::Right => cover.graph.subset_run(&cover.graph.full_vertex_set(), &w.0),
        Orientation::Left => {
            let rev = cover.graph.reverse();
            let mut rw = w.clone();
            rw.0.reverse();
            rev.subset_run(&rev.full_vertex_set(), &rw.0)
        }
    };
    match image.len() {
        0 => MagicStatus::NotInLanguage,
        1 => MagicStatus::Magic,
        _ => MagicStatus::NotMagic,
    }
}

/// Is `w` a synchronizing word of the shift: whenever `uw` and `wv` are in
/// the language, so is `uwv`. Equivalent to `w` being magic for the right
/// Fischer cover.
pub fn is_synchronizing(handle: &ShiftHandle, w: &Word) -> Result<MagicStatus> {
    Ok(is_magic(handle.fischer()?, w))
}

/// Language containment between the sofic shifts presented by two graphs
/// (equivalently, shift containment). Decided by a product search for an
/// `inner` path whose label dies in the `outer` subset automaton; subsets
/// are built lazily.
pub fn graph_language_contains(outer: &LabeledGraph, inner: &LabeledGraph) -> Result<bool> {
    let (inner, _) = inner.trim();
    if inner.vertex_count() == 0 {
        return Ok(true);
    }
    let (outer, _) = outer.trim();
    if outer.vertex_count() == 0 {
        return Ok(false);
    }
    // Align symbols by name. An inner edge whose label is unknown to the
    // outer alphabet immediately witnesses non-containment, because every
    // edge of a trimmed graph lies on a bi-infinite path.
    let map: Vec<Option<Symbol>> = inner
        .alphabet()
        .names()
        .iter()
        .map(|n| outer.alphabet().lookup(n))
        .collect();

    let cap = Budgets::default().state_cap;
    let mut subsets: Vec<Vec<VertexId>> = vec![outer.full_vertex_set()];
    let mut subset_index: HashMap<Vec<VertexId>, u32> = HashMap::new();
    subset_index.insert(subsets[0].clone(), 0);

    let mut visited: std::collections::HashSet<(VertexId, u32)> =
        std::collections::HashSet::new();
    let mut queue: VecDeque<(VertexId, u32)> = VecDeque::new();
    for u in inner.vertices() {
        visited.insert((u, 0));
        queue.push_back((u, 0));
    }
    while let Some((u, s)) = queue.pop_front() {
        for &e in inner.out_edges(u) {
            let edge = inner.edge(e);
            let Some(mapped) = map[edge.label as usize] else {
                return Ok(false);
            };
            let image = outer.subset_image(&subsets[s as usize], mapped);
            if image.is_empty() {
                return Ok(false);
            }
            let sid = match subset_index.get(&image) {
                Some(&id) => id,
                None => {
                    let id = subsets.len() as u32;
                    if subsets.len() >= cap {
                        return Err(Error::budget("deciding language containment", cap as u64));
                    }
                    subset_index.insert(image.clone(), id);
                    subsets.push(image);
                    id
                }
            };
            if visited.insert((edge.dst, sid)) {
                queue.push_back((edge.dst, sid));
            }
        }
    }
    Ok(true)
}

/// Shift containment between handles.
pub fn shift_contains(outer: &ShiftHandle, inner: &ShiftHandle) -> Result<bool> {
    graph_language_contains(outer.graph(), inner.graph())
}

/// Equality of the presented shifts. Irreducible handles are compared by
/// canonical forms of their Fischer covers; the general case falls back to
/// two containment checks.
pub fn shifts_equal(a: &ShiftHandle, b: &ShiftHandle) -> Result<bool> {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return Ok(true),
        (true, false) | (false, true) => return Ok(false),
        _ => {}
    }
    if a.is_irreducible_presentation() && b.is_irreducible_presentation() {
        let fa = a.fischer()?;
        let fb = b.fischer()?;
        return deterministic_graphs_isomorphic(fa.graph(), fb.graph());
    }
    Ok(graph_language_contains(a.graph(), b.graph())?
        && graph_language_contains(b.graph(), a.graph())?)
}

type CanonicalSignature = Vec<Vec<(String, u32)>>;

/// Canonical form of a strongly connected deterministic labeled graph:
/// breadth-first renumbering from each start vertex with out-edges visited
/// in label order, minimized over starts. Two such graphs are isomorphic
/// as labeled graphs iff their canonical forms agree.
fn canonical_signature(g: &LabeledGraph) -> Result<CanonicalSignature> {
    if !g.is_right_resolving() {
        return Err(Error::Precondition(
            "canonical form requires a deterministic presentation".into(),
        ));
    }
    let n = g.vertex_count();
    let mut best: Option<CanonicalSignature> = None;
    for start in g.vertices() {
        let mut number = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        number[start as usize] = 0;
        order.push(start);
        let mut head = 0usize;
        while head < order.len() {
            let v = order[head];
            head += 1;
            let mut outs: Vec<(String, VertexId)> = g
                .out_edges(v)
                .iter()
                .map(|&e| {
                    let ed = g.edge(e);
                    (g.alphabet().name(ed.label).to_string(), ed.dst)
                })
                .collect();
            outs.sort();
            for (_, t) in &outs {
                if number[*t as usize] == u32::MAX {
                    number[*t as usize] = order.len() as u32;
                    order.push(*t);
                }
            }
        }
        if order.len() != n {
            return Err(Error::Precondition(
                "canonical form requires a strongly connected graph".into(),
            ));
        }
        let sig: CanonicalSignature = order
            .iter()
            .map(|&v| {
                let mut row: Vec<(String, u32)> = g
                    .out_edges(v)
                    .iter()
                    .map(|&e| {
                        let ed = g.edge(e);
                        (
                            g.alphabet().name(ed.label).to_string(),
                            number[ed.dst as usize],
                        )
                    })
                    .collect();
                row.sort();
                row
            })
            .collect();
        if best.as_ref().map_or(true, |b| &sig < b) {
            best = Some(sig);
        }
    }
    best.ok_or_else(|| Error::Precondition("canonical form of the empty graph".into()))
}

/// Labeled isomorphism of strongly connected deterministic presentations.
/// Labels are matched by name, so the graphs may use different alphabets.
pub fn deterministic_graphs_isomorphic(a: &LabeledGraph, b: &LabeledGraph) -> Result<bool> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_signature(a)? == canonical_signature(b)?)
}

/// Isomorphism of Fischer covers. Left covers are compared through their
/// reversals, which are deterministic.
pub fn fischer_covers_isomorphic(a: &FischerCover, b: &FischerCover) -> Result<bool> {
    if a.orientation() != b.orientation() {
        return Ok(false);
    }
    match a.orientation() {
        Orientation::Right => deterministic_graphs_isomorphic(a.graph(), b.graph()),
        Orientation::Left => {
            deterministic_graphs_isomorphic(&a.graph().reverse(), &b.graph().reverse())
        }
    }
}

/// Isomorphism of unlabeled multigraphs by backtracking over vertex maps,
/// pruned by degree invariants. Intended for small graphs (conjugacy
/// witnesses); vertex count is capped by the caller.
pub fn unlabeled_digraphs_isomorphic(a: &LabeledGraph, b: &LabeledGraph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    if n == 0 {
        return true;
    }
    let am = a.adjacency();
    let bm = b.adjacency();
    let profile = |m: &Vec<Vec<u64>>, v: usize| -> (u64, u64, u64) {
        let out: u64 = m[v].iter().sum();
        let inn: u64 = m.iter().map(|row| row[v]).sum();
        (out, inn, m[v][v])
    };
    let a_profiles: Vec<_> = (0..n).map(|v| profile(&am, v)).collect();
    let b_profiles: Vec<_> = (0..n).map(|v| profile(&bm, v)).collect();
    {
        let mut sa = a_profiles.clone();
        let mut sb = b_profiles.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return false;
        }
    }

    fn backtrack(
        am: &Vec<Vec<u64>>,
        bm: &Vec<Vec<u64>>,
        ap: &[(u64, u64, u64)],
        bp: &[(u64, u64, u64)],
        assign: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        v: usize,
    ) -> bool {
        let n = am.len();
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || ap[v] != bp[w] {
                continue;
            }
            let ok = (0..v).all(|u| {
                let uu = assign[u].expect("assigned prefix");
                am[u][v] == bm[uu][w] && am[v][u] == bm[w][uu]
            }) && am[v][v] == bm[w][w];
            if !ok {
                continue;
            }
            assign[v] = Some(w);
            used[w] = true;
            if backtrack(am, bm, ap, bp, assign, used, v + 1) {
                return true;
            }
            assign[v] = None;
            used[w] = false;
        }
        false
    }

    let mut assign = vec![None; n];
    let mut used = vec![false; n];
    backtrack(&am, &bm, &a_profiles, &b_profiles, &mut assign, &mut used, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn even_graph() -> LabeledGraph {
        let a = Alphabet::new(["0", "1"]).unwrap();
        LabeledGraph::new(
            a,
            vec!["A".into(), "B".into()],
            vec![(0, 0, 1), (0, 1, 0), (1, 0, 0)],
        )
        .unwrap()
    }

    fn even_handle() -> ShiftHandle {
        ShiftHandle::from_graph(even_graph()).unwrap()
    }

    /// Intersection of the golden mean and even shifts: ones separated by
    /// positive even blocks of zeros.
    fn golden_even_graph() -> LabeledGraph {
        let a = Alphabet::new(["0", "1"]).unwrap();
        LabeledGraph::new(
            a,
            vec!["v1".into(), "v2".into(), "v3".into()],
            vec![(0, 1, 1), (1, 2, 0), (2, 1, 0), (2, 0, 0)],
        )
        .unwrap()
    }

    /// Two vertices, two a-edges forming a 2-cycle, one b-edge.
    fn aab_graph() -> LabeledGraph {
        let a = Alphabet::new(["a", "b"]).unwrap();
        LabeledGraph::new(
            a,
            vec!["x".into(), "y".into()],
            vec![(0, 1, 0), (1, 0, 0), (0, 1, 1)],
        )
        .unwrap()
    }

    #[test]
    fn determinize_even_from_full_set() {
        let g = even_graph();
        let det = determinize(&g, g.full_vertex_set(), 1000).unwrap();
        // {A,B} -0-> {A,B}, -1-> {A}; {A} -0-> {B}, -1-> {A}; {B} -0-> {A}.
        assert_eq!(det.state_count(), 3);
    }

    #[test]
    fn fischer_of_even_is_the_even_presentation() {
        let h = even_handle();
        let f = h.fischer().unwrap();
        assert_eq!(f.graph().vertex_count(), 2);
        assert_eq!(f.graph().edge_count(), 3);
        assert!(deterministic_graphs_isomorphic(f.graph(), &even_graph()).unwrap());
        assert_eq!(is_magic(f, f.magic_word()), MagicStatus::Magic);
        assert_eq!(f.magic_word(), &Word(vec![1]));
    }

    #[test]
    fn fischer_is_idempotent_on_covers() {
        for g in [even_graph(), golden_even_graph(), aab_graph()] {
            let h = ShiftHandle::from_graph(g).unwrap();
            let f = h.fischer().unwrap();
            let again = ShiftHandle::from_graph(f.graph().clone()).unwrap();
            let f2 = again.fischer().unwrap();
            assert!(deterministic_graphs_isomorphic(f.graph(), f2.graph()).unwrap());
        }
    }

    #[test]
    fn fischer_of_golden_even_has_three_states() {
        let h = ShiftHandle::from_graph(golden_even_graph()).unwrap();
        let f = h.fischer().unwrap();
        assert_eq!(f.graph().vertex_count(), 3);
        assert_eq!(f.graph().edge_count(), 4);
        // Expected cover: s0 -0-> s1, s1 -0-> s2, s2 -0-> s1, s2 -1-> s0.
        let a = Alphabet::new(["0", "1"]).unwrap();
        let expected = LabeledGraph::new(
            a,
            vec!["s0".into(), "s1".into(), "s2".into()],
            vec![(0, 1, 0), (1, 2, 0), (2, 1, 0), (2, 0, 1)],
        )
        .unwrap();
        assert!(deterministic_graphs_isomorphic(f.graph(), &expected).unwrap());
    }

    #[test]
    fn fischer_of_aab_is_itself() {
        let h = ShiftHandle::from_graph(aab_graph()).unwrap();
        let f = h.fischer().unwrap();
        assert!(deterministic_graphs_isomorphic(f.graph(), &aab_graph()).unwrap());
        assert_eq!(is_magic(f, &Word(vec![1])), MagicStatus::Magic);
        assert_eq!(is_magic(f, &Word(vec![0])), MagicStatus::NotMagic);
    }

    #[test]
    fn fischer_requires_irreducible() {
        let a = Alphabet::new(["0", "1"]).unwrap();
        // Two loops, one connecting edge: reducible.
        let g = LabeledGraph::new(
            a,
            vec!["A".into(), "B".into()],
            vec![(0, 0, 0), (1, 1, 1), (0, 1, 0)],
        )
        .unwrap();
        let h = ShiftHandle::from_graph(g).unwrap();
        assert!(matches!(h.fischer(), Err(Error::NotIrreducible(_))));
    }

    #[test]
    fn left_fischer_of_even() {
        let h = even_handle();
        let f = h.left_fischer().unwrap();
        assert_eq!(f.orientation(), Orientation::Left);
        assert!(f.graph().is_left_resolving());
        // The even presentation is reversal-symmetric.
        assert_eq!(f.graph().vertex_count(), 2);
        assert_eq!(is_magic(f, f.magic_word()), MagicStatus::Magic);
    }

    #[test]
    fn synchronizing_words_of_even() {
        let h = even_handle();
        assert_eq!(is_synchronizing(&h, &Word(vec![1])).unwrap(), MagicStatus::Magic);
        assert_eq!(
            is_synchronizing(&h, &Word(vec![0])).unwrap(),
            MagicStatus::NotMagic
        );
        assert_eq!(
            is_synchronizing(&h, &Word(vec![0, 1])).unwrap(),
            MagicStatus::Magic
        );
        // 0-run of odd length bounded by 1s is not in the language.
        assert_eq!(
            is_synchronizing(&h, &Word(vec![1, 0, 1])).unwrap(),
            MagicStatus::NotInLanguage
        );
    }

    #[test]
    fn containment_and_equality() {
        let even = even_handle();
        let ge = ShiftHandle::from_graph(golden_even_graph()).unwrap();
        assert!(shift_contains(&even, &ge).unwrap());
        assert!(!shift_contains(&ge, &even).unwrap());
        assert!(!shifts_equal(&even, &ge).unwrap());
        // A higher block presentation presents the same shift.
        let (hb, _) = even.graph().higher_block(3).unwrap();
        let hb = ShiftHandle::from_graph(hb).unwrap();
        assert!(shifts_equal(&even, &hb).unwrap());
    }

    #[test]
    fn unlabeled_iso_ignores_names_and_labels() {
        let g1 = even_graph();
        let a = Alphabet::new(["x", "y"]).unwrap();
        let g2 = LabeledGraph::new(
            a,
            vec!["P".into(), "Q".into()],
            vec![(1, 0, 0), (0, 1, 1), (1, 1, 0)],
        )
        .unwrap();
        assert!(unlabeled_digraphs_isomorphic(&g1, &g2));
        let a = Alphabet::new(["x"]).unwrap();
        // Two parallel edges and a return edge: different degree profile.
        let g3 = LabeledGraph::new(
            a,
            vec!["P".into(), "Q".into()],
            vec![(0, 1, 0), (0, 1, 0), (1, 0, 0)],
        )
        .unwrap();
        assert!(!unlabeled_digraphs_isomorphic(&g1, &g3));
    }
}
