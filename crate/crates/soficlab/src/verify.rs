//! Independent checks for covers and languages: fiber products, diamond
//! detection, degree computation, and brute-force language oracles.
//!
//! The oracles here deliberately avoid the faster machinery used elsewhere
//! (Fischer covers, subset caching) so that agreement between the two
//! routes is meaningful evidence.

use std::collections::{BTreeSet, VecDeque};

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, LabeledGraph, VertexId};
use crate::shift::CoverSpec;
use crate::word::{PrimitiveWord, Symbol, Word};

/// Fiber product of two presentations over a common alphabet: vertices are
/// pairs, edges are label-matched edge pairs. The pair tables map product
/// ids back to the factors.
pub struct FiberProduct {
    pub graph: LabeledGraph,
    pub vertex_pairs: Vec<(VertexId, VertexId)>,
    pub edge_pairs: Vec<(EdgeId, EdgeId)>,
}

pub fn fiber_product(g1: &LabeledGraph, g2: &LabeledGraph) -> Result<FiberProduct> {
    if g1.alphabet().names() != g2.alphabet().names() {
        return Err(Error::Alphabet(
            "fiber product requires matching alphabets".into(),
        ));
    }
    let n2 = g2.vertex_count() as u32;
    let pair_id = |u: VertexId, v: VertexId| u * n2 + v;
    let mut names = Vec::with_capacity((g1.vertex_count() * g2.vertex_count()).max(1));
    let mut vertex_pairs = Vec::with_capacity(names.capacity());
    for u in g1.vertices() {
        for v in g2.vertices() {
            names.push(format!("^({},{})", g1.vertex_name(u), g2.vertex_name(v)));
            vertex_pairs.push((u, v));
        }
    }
    let mut edges = Vec::new();
    let mut edge_pairs = Vec::new();
    for e1 in 0..g1.edge_count() as EdgeId {
        let a = g1.edge(e1);
        for e2 in 0..g2.edge_count() as EdgeId {
            let b = g2.edge(e2);
            if a.label != b.label {
                continue;
            }
            edges.push((pair_id(a.src, b.src), pair_id(a.dst, b.dst), a.label));
            edge_pairs.push((e1, e2));
        }
    }
    let graph = LabeledGraph::new(g1.alphabet().clone(), names, edges)?;
    Ok(FiberProduct {
        graph,
        vertex_pairs,
        edge_pairs,
    })
}

/// Is the labeling of `w` injective on bi-infinite paths? True iff the
/// essential part of the fiber product of `w` with itself is the diagonal,
/// in vertices and in edge pairs.
pub fn injective_on(w: &LabeledGraph) -> Result<bool> {
    let fp = fiber_product(w, w)?;
    let (_, idmap) = fp.graph.trim();
    for (old, new) in idmap.vertex_map.iter().enumerate() {
        if new.is_some() {
            let (u, v) = fp.vertex_pairs[old];
            if u != v {
                return Ok(false);
            }
        }
    }
    for (old, new) in idmap.edge_map.iter().enumerate() {
        if new.is_some() {
            let (e1, e2) = fp.edge_pairs[old];
            if e1 != e2 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Is the cover finite-to-one? For an irreducible cover this holds iff the
/// essential fiber product has no diamond: no pair of distinct paths with
/// equal labels, equal start, and equal end. Searched as reachability from
/// a diagonal vertex back to a diagonal vertex through at least one
/// off-diagonal edge pair.
pub fn finite_to_one(pi: &CoverSpec) -> Result<bool> {
    let g = pi.cover_graph();
    if !g.is_irreducible() {
        return Err(Error::NotIrreducible(
            "finite-to-one check requires an irreducible cover".into(),
        ));
    }
    let fp = fiber_product(g, g)?;
    let (trimmed, idmap) = fp.graph.trim();
    // Map trimmed vertices back to pair data.
    let mut old_of = vec![0usize; trimmed.vertex_count()];
    for (old, new) in idmap.vertex_map.iter().enumerate() {
        if let Some(n) = new {
            old_of[*n as usize] = old;
        }
    }
    Ok(!diamond_reachable(&trimmed, &idmap, &fp, &old_of))
}

fn diamond_reachable(
    trimmed: &LabeledGraph,
    idmap: &crate::graph::IdMap,
    fp: &FiberProduct,
    old_of: &[usize],
) -> bool {
    let mut old_edge_of = vec![0usize; trimmed.edge_count()];
    for (old, new) in idmap.edge_map.iter().enumerate() {
        if let Some(n) = new {
            old_edge_of[*n as usize] = old;
        }
    }
    let diagonal = |v: VertexId| {
        let (a, b) = fp.vertex_pairs[old_of[v as usize]];
        a == b
    };
    let off_diag_edge = |e: EdgeId| {
        let (e1, e2) = fp.edge_pairs[old_edge_of[e as usize]];
        e1 != e2
    };
    // State: (vertex, has an off-diagonal edge been used).
    let n = trimmed.vertex_count();
    let mut seen = vec![[false; 2]; n];
    let mut queue = VecDeque::new();
    for v in trimmed.vertices() {
        if diagonal(v) {
            seen[v as usize][0] = true;
            queue.push_back((v, false));
        }
    }
    while let Some((v, used)) = queue.pop_front() {
        for &e in trimmed.out_edges(v) {
            let edge = trimmed.edge(e);
            let next_used = used || off_diag_edge(e);
            if next_used && diagonal(edge.dst) {
                return true;
            }
            let flag = usize::from(next_used);
            if !seen[edge.dst as usize][flag] {
                seen[edge.dst as usize][flag] = true;
                queue.push_back((edge.dst, next_used));
            }
        }
    }
    false
}

/// Degree of a finite-to-one cover: the number of preimages of every
/// doubly transitive image point. Equals the minimum, over words w in the
/// image language and positions i, of the number of distinct cover
/// vertices occurring at position i on paths presenting w; every such set
/// is the intersection of a forward subset (image of the full vertex set
/// under the prefix) and a backward subset (coimage under the suffix), and
/// every nonempty such intersection occurs, so the minimum is taken over
/// reachable subset pairs.
pub fn degree(pi: &CoverSpec) -> Result<u64> {
    if !finite_to_one(pi)? {
        return Err(Error::NotFiniteToOne);
    }
    let g = pi.cover_graph();
    let cap = Budgets::default().state_cap;
    let forward = crate::present::determinize(g, g.full_vertex_set(), cap)?;
    let reversed = g.reverse();
    let backward = crate::present::determinize(&reversed, reversed.full_vertex_set(), cap)?;
    let mut best: Option<u64> = None;
    for s in forward.subsets() {
        for b in backward.subsets() {
            let size = intersection_size(s, b);
            if size > 0 && best.map_or(true, |m| size < m) {
                best = Some(size);
            }
        }
    }
    best.ok_or_else(|| Error::Internal("cover with empty subset language".into()))
}

fn intersection_size(a: &[VertexId], b: &[VertexId]) -> u64 {
    let mut i = 0;
    let mut j = 0;
    let mut count = 0;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// All words of the language up to length `max_len`, by raw path
/// enumeration on the trimmed presentation. Includes the empty word.
pub fn brute_language(g: &LabeledGraph, max_len: u32, budget: u64) -> Result<BTreeSet<Word>> {
    let (g, _) = g.trim();
    let mut words = BTreeSet::new();
    words.insert(Word::empty());
    if g.vertex_count() == 0 {
        return Ok(words);
    }
    let mut explored = 0u64;
    // Frontier of (vertex, word) pairs; words deduplicated via the set.
    let mut frontier: Vec<(VertexId, Word)> = g.vertices().map(|v| (v, Word::empty())).collect();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (v, w) in frontier {
            for &e in g.out_edges(v) {
                explored += 1;
                if explored > budget {
                    return Err(Error::budget("enumerating language words", budget));
                }
                let edge = g.edge(e);
                let mut extended = w.clone();
                extended.0.push(edge.label);
                words.insert(extended.clone());
                next.push((edge.dst, extended));
            }
        }
        next.sort_by(|a, b| (a.0, &a.1 .0).cmp(&(b.0, &b.1 .0)));
        next.dedup();
        frontier = next;
    }
    Ok(words)
}

/// Membership of one word, by the same raw route as [`brute_language`].
pub fn word_in_language(g: &LabeledGraph, w: &Word) -> bool {
    let (g, _) = g.trim();
    if g.vertex_count() == 0 {
        return w.is_empty();
    }
    !g.subset_run(&g.full_vertex_set(), &w.0).is_empty()
}

/// Searches for a synchronization violation: words a, b with |a|, |b| <=
/// max_len such that a·w and w·b are in the language but a·w·b is not.
/// Returns the first violation in length-lexicographic order. Finding none
/// is consistent with (not a proof of) w synchronizing.
pub fn refute_synchronizing(
    g: &LabeledGraph,
    w: &Word,
    max_len: u32,
    budget: u64,
) -> Result<Option<(Word, Word)>> {
    let (g, _) = g.trim();
    if !word_in_language(&g, w) {
        return Err(Error::Precondition(
            "refuting synchronization of a word outside the language".into(),
        ));
    }
    let lefts = all_words(g.alphabet().len(), max_len, budget)?;
    let rights = lefts.clone();
    for a in &lefts {
        let aw = a.concat(w);
        if !word_in_language(&g, &aw) {
            continue;
        }
        for b in &rights {
            let wb = w.concat(b);
            if !word_in_language(&g, &wb) {
                continue;
            }
            let awb = aw.concat(b);
            if !word_in_language(&g, &awb) {
                return Ok(Some((a.clone(), b.clone())));
            }
        }
    }
    Ok(None)
}

/// All words over k symbols of length 0..=max_len, in length-lex order.
fn all_words(k: usize, max_len: u32, budget: u64) -> Result<Vec<Word>> {
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    let mut total = 1u64;
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for s in 0..k as Symbol {
                total += 1;
                if total > budget {
                    return Err(Error::budget("enumerating words", budget));
                }
                let mut e = w.clone();
                e.0.push(s);
                next.push(e);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(out)
}

/// Brute count of points of least period n in the shift presented by `g`:
/// enumerates all length-n words, keeps the primitive ones whose periodic
/// orbit lies in the shift. Each point contributes once (its n-window).
pub fn count_periodic_brute(g: &LabeledGraph, n: u32, budget: u64) -> Result<u64> {
    let k = g.alphabet().len();
    let mut count = 0u64;
    let mut total = 0u64;
    let mut w = Word(vec![0; n as usize]);
    loop {
        total += 1;
        if total > budget {
            return Err(Error::budget("enumerating periodic candidates", budget));
        }
        if w.is_primitive() && crate::census::presents_periodic(g, &w) {
            count += 1;
        }
        // Odometer increment.
        let mut i = n as usize;
        loop {
            if i == 0 {
                return Ok(count);
            }
            i -= 1;
            w.0[i] += 1;
            if (w.0[i] as usize) < k {
                break;
            }
            w.0[i] = 0;
        }
    }
}

/// Preimages of the periodic point w^infinity under a cover labeling,
/// computed on the phase product (vertex, position mod |w|). For a
/// finite-to-one cover its essential part is a disjoint union of simple
/// cycles; each cycle of length l carries l/|w| preimage points, each of
/// least period exactly l.
#[derive(Debug, Clone)]
pub struct PointPreimages {
    pub period: u32,
    /// Lengths of the essential phase-product cycles, sorted.
    pub cycle_lengths: Vec<u64>,
}

impl PointPreimages {
    pub fn count(&self) -> u64 {
        self.cycle_lengths
            .iter()
            .map(|l| l / self.period as u64)
            .sum()
    }

    /// Least periods of the preimage points (with multiplicity of orbits).
    pub fn preimage_periods(&self) -> Vec<u64> {
        self.cycle_lengths.clone()
    }
}

pub fn point_preimages(cover: &LabeledGraph, w: &PrimitiveWord) -> Result<PointPreimages> {
    let m = w.len() as u32;
    let word = w.word();
    let n = cover.vertex_count() as u32;
    if n == 0 {
        return Ok(PointPreimages {
            period: m,
            cycle_lengths: Vec::new(),
        });
    }
    // Phase product digraph on (vertex, phase).
    let id = |v: VertexId, p: u32| (v * m + p) as usize;
    let total = (n * m) as usize;
    let mut out_adj: Vec<Vec<usize>> = vec![Vec::new(); total];
    for p in 0..m {
        let sym = word.0[p as usize];
        for v in cover.vertices() {
            for t in cover.successors(v, sym) {
                out_adj[id(v, p)].push(id(t, (p + 1) % m));
            }
        }
    }
    // Trim to the essential part: vertices on bi-infinite walks.
    let mut alive: Vec<bool> = vec![true; total];
    loop {
        let mut changed = false;
        let mut in_deg = vec![0usize; total];
        let mut out_deg = vec![0usize; total];
        for (u, outs) in out_adj.iter().enumerate() {
            if !alive[u] {
                continue;
            }
            for &t in outs {
                if alive[t] {
                    out_deg[u] += 1;
                    in_deg[t] += 1;
                }
            }
        }
        for u in 0..total {
            if alive[u] && (in_deg[u] == 0 || out_deg[u] == 0) {
                alive[u] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    // The essential part must be a disjoint union of simple cycles for the
    // count to be finite.
    let mut next_of: Vec<Option<usize>> = vec![None; total];
    let mut in_count = vec![0usize; total];
    for (u, outs) in out_adj.iter().enumerate() {
        if !alive[u] {
            continue;
        }
        let living: Vec<usize> = outs.iter().copied().filter(|&t| alive[t]).collect();
        if living.len() != 1 {
            return Err(Error::NotFiniteToOne);
        }
        for &t in &living {
            in_count[t] += 1;
        }
        next_of[u] = Some(living[0]);
    }
    if (0..total).any(|u| alive[u] && in_count[u] != 1) {
        return Err(Error::NotFiniteToOne);
    }
    // Walk the cycles.
    let mut seen = vec![false; total];
    let mut cycle_lengths = Vec::new();
    for start in 0..total {
        if !alive[start] || seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            len += 1;
            v = next_of[v].expect("alive vertices have a successor");
        }
        debug_assert_eq!(v, start, "component is a simple cycle");
        cycle_lengths.push(len);
    }
    cycle_lengths.sort_unstable();
    Ok(PointPreimages {
        period: m,
        cycle_lengths,
    })
}

/// Replays a receptivity witness against the raw language oracle: checks
/// that m1 w^k m2 is in the language for k = 0..=k_max.
pub fn replay_receptivity_witness(
    g: &LabeledGraph,
    w: &Word,
    witness: &crate::census::ReceptivityWitness,
    k_max: u32,
) -> bool {
    for k in 0..=k_max {
        let mut text = witness.m1.clone();
        for _ in 0..k {
            text = text.concat(w);
        }
        text = text.concat(&witness.m2);
        if !word_in_language(g, &text) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shift::ShiftHandle;
    use crate::word::Alphabet;

    fn even_handle() -> ShiftHandle {
        let a = Alphabet::new(["0", "1"]).unwrap();
        let g = LabeledGraph::new(
            a,
            vec!["A".into(), "B".into()],
            vec![(0, 0, 1), (0, 1, 0), (1, 0, 0)],
        )
        .unwrap();
        ShiftHandle::from_graph(g).unwrap()
    }

    fn fischer_cover_spec(h: &ShiftHandle) -> CoverSpec {
        let f = h.fischer().unwrap().graph().clone();
        CoverSpec::new(f, h.clone()).unwrap()
    }

    #[test]
    fn identity_labeling_is_injective() {
        let h = even_handle();
        let edge = h.graph().edge_shift_presentation().unwrap();
        assert!(injective_on(&edge).unwrap());
    }

    #[test]
    fn constant_labeling_is_not_injective() {
        let a = Alphabet::new(["a"]).unwrap();
        let g = LabeledGraph::new(
            a,
            vec!["P".into(), "Q".into()],
            vec![(0, 1, 0), (1, 0, 0), (0, 0, 0)],
        )
        .unwrap();
        assert!(!injective_on(&g).unwrap());
    }

    #[test]
    fn fischer_cover_is_finite_to_one_of_degree_one() {
        let h = even_handle();
        let pi = fischer_cover_spec(&h);
        assert!(finite_to_one(&pi).unwrap());
        assert_eq!(degree(&pi).unwrap(), 1);
    }

    #[test]
    fn parallel_identical_loops_are_not_finite_to_one() {
        let a = Alphabet::new(["a"]).unwrap();
        let g = LabeledGraph::new(
            a,
            vec!["P".into()],
            vec![(0, 0, 0), (0, 0, 0)],
        )
        .unwrap();
        let y = ShiftHandle::from_graph(
            LabeledGraph::new(Alphabet::new(["a"]).unwrap(), vec!["Q".into()], vec![(0, 0, 0)])
                .unwrap(),
        )
        .unwrap();
        let pi = CoverSpec::new(g, y).unwrap();
        assert!(!finite_to_one(&pi).unwrap());
        assert!(matches!(degree(&pi), Err(Error::NotFiniteToOne)));
    }

    #[test]
    fn degree_two_for_a_doubled_cycle() {
        // A 4-cycle labeled (ab)^2 covers the 2-cycle labeled ab twice.
        let a4 = Alphabet::new(["a", "b"]).unwrap();
        let cover = LabeledGraph::new(
            a4,
            vec!["0".into(), "1".into(), "2".into(), "3".into()],
            vec![(0, 1, 0), (1, 2, 1), (2, 3, 0), (3, 0, 1)],
        )
        .unwrap();
        let a2 = Alphabet::new(["a", "b"]).unwrap();
        let base = LabeledGraph::new(
            a2,
            vec!["u".into(), "v".into()],
            vec![(0, 1, 0), (1, 0, 1)],
        )
        .unwrap();
        let y = ShiftHandle::from_graph(base).unwrap();
        let pi = CoverSpec::new(cover, y).unwrap();
        assert!(finite_to_one(&pi).unwrap());
        assert_eq!(degree(&pi).unwrap(), 2);
    }

    #[test]
    fn brute_language_of_even_shift() {
        let h = even_handle();
        let words = brute_language(h.graph(), 3, 1_000_000).unwrap();
        let a = h.alphabet();
        let has = |t: &str| words.contains(&Word::parse(t, a).unwrap());
        assert!(has(""));
        assert!(has("00"));
        assert!(has("11"));
        assert!(has("001"));
        assert!(has("100"));
        assert!(!has("101")); // odd block of zeros between ones
        assert!(has("010")); // occurs inside (001)^infinity
        assert_eq!(words.iter().filter(|w| w.len() == 3).count(), 7);
    }

    #[test]
    fn refute_synchronizing_finds_the_even_violation() {
        let h = even_handle();
        let zero = Word::parse("0", h.alphabet()).unwrap();
        let hit = refute_synchronizing(h.graph(), &zero, 4, 1_000_000)
            .unwrap()
            .expect("0 is not synchronizing");
        let (a, b) = hit;
        assert_eq!(a.render(h.alphabet()), "1");
        assert_eq!(b.render(h.alphabet()), "1");
        let one = Word::parse("1", h.alphabet()).unwrap();
        assert!(refute_synchronizing(h.graph(), &one, 5, 10_000_000)
            .unwrap()
            .is_none());
    }

    #[test]
    fn brute_periodic_count_matches_census() {
        let h = even_handle();
        let t = crate::census::census(&h, 6).unwrap();
        for n in 1..=6u32 {
            let brute = count_periodic_brute(h.graph(), n, 1_000_000).unwrap();
            assert_eq!(brute, t.q_at(n), "period {n}");
        }
    }

    #[test]
    fn preimages_of_periodic_points_under_the_fischer_cover() {
        let h = even_handle();
        let f = h.fischer().unwrap().graph();
        let one = PrimitiveWord::new(Word::parse("1", h.alphabet()).unwrap()).unwrap();
        let p = point_preimages(f, &one).unwrap();
        assert_eq!(p.count(), 1);
        assert_eq!(p.cycle_lengths, vec![1]);
        // 0^infinity lifts to the single 2-cycle A->B->A: one preimage of
        // least period 2, zero of least period 1.
        let zero = PrimitiveWord::new(Word::parse("0", h.alphabet()).unwrap()).unwrap();
        let p0 = point_preimages(f, &zero).unwrap();
        assert_eq!(p0.cycle_lengths, vec![2]);
        assert_eq!(p0.count(), 2);
        // The two preimage points (phases of the 2-cycle) are the orbit of
        // one least-period-2 cover point.
        let hundred = PrimitiveWord::new(Word::parse("100", h.alphabet()).unwrap()).unwrap();
        let p100 = point_preimages(f, &hundred).unwrap();
        assert_eq!(p100.count(), 1);
        assert_eq!(p100.cycle_lengths, vec![3]);
    }

    #[test]
    fn receptivity_witness_replay() {
        let h = even_handle();
        let one = PrimitiveWord::new(Word::parse("1", h.alphabet()).unwrap()).unwrap();
        let report = crate::census::is_receptive(&h, &one).unwrap();
        let witness = report.witness.unwrap();
        assert!(replay_receptivity_witness(
            h.graph(),
            one.word(),
            &witness,
            10
        ));
    }
}
