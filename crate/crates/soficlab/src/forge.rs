//! Constructions that build new covers and subshifts from old ones, each
//! validating its own output before returning it.
//!
//! * [`forge_receptive_cover`] grafts a fresh cycle onto a cover so that a
//!   chosen receptive periodic point of the image gains a lift of the same
//!   least period, without changing the presented shift.
//! * [`forge_ai_cover`] and [`ai_sft_cover`] build, for a receptive periodic
//!   point of an irreducible positive-entropy sofic shift, a cover in which
//!   that point lifts to a synchronizing periodic point of the same least
//!   period while every other periodic point keeps exactly one preimage; the
//!   SFT variant composes with a canonical deterministic presentation of the
//!   lifted shift to produce an equal-entropy edge-shift cover of degree one.
//! * [`extract_injective_sub`] carves an irreducible subshift out of the
//!   domain of a cover on which the covering map is injective, with entropy
//!   within `eps` of the image entropy and the same graph period.
//! * [`enlarge_with_orbit`] and [`grow_periodic_support`] enlarge such a
//!   subshift with detector-guarded gadgets so that its image gains
//!   prescribed periodic orbits while the restriction stays injective.
//!
//! Subshift results are returned as presentations over the edge alphabet of
//! the ambient cover graph: symbol `i` names edge `i`, consecutive symbols
//! name consecutive edges, and [`image_presentation`] recovers the labeled
//! image. Every construction attaches a [`Provenance`] record describing the
//! parameters it chose and a [`ValidationReport`] listing the checks it ran;
//! a failed check aborts with [`Error::ForgeValidation`] rather than
//! returning an unverified object.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::budget::Budgets;
use crate::census;
use crate::entropy::{self, EntropyEnclosure};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, LabeledGraph, VertexId};
use crate::present;
use crate::shift::{CoverSpec, ShiftHandle};
use crate::verify;
use crate::word::{lyndon_words, Alphabet, Kmp, PrimitiveWord, Symbol, Word};

/// Edge-count bound below which injectivity is checked directly with the
/// fiber product; above it, the recorded structural conditions stand alone.
const DIRECT_INJECTIVITY_EDGE_CAP: usize = 1_500;
/// How far the synchronizing pair may be lengthened while searching for
/// rotation-avoiding endpoints.
const EXTEND_STEPS: usize = 16;
/// Longest orbit checked for unique lifting when validating a cover built
/// by the alternation construction.
const ORBIT_CHECK_LEN: usize = 5;
/// Largest power of the short cycle label that may be forbidden while
/// searching for a marker.
const MARKER_POWER_CAP: u32 = 8;
/// Extra cycle repetitions tried per forbidden power when a marker word
/// fails its overlap checks.
const MARKER_BUMP_CAP: u32 = 6;
/// Hard cap on the return length explored when sizing the marker subshift.
const RETURN_LENGTH_CAP: u32 = 280;
/// Largest marker subshift, in edges, the extraction will materialize.
const BOUQUET_EDGE_CAP: u64 = 400_000;
/// Cap on the exponent probed while looking for a detector power.
const DETECTOR_POWER_CAP: u32 = 64;
/// Cap on the connector length explored while wiring an orbit gadget.
const CONNECTOR_LENGTH_CAP: usize = 256;
/// Rebuild attempts before the growth construction gives up.
const GROW_REBUILD_CAP: u32 = 3;

/// One named check performed while validating a construction.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// The checks a construction ran on its own output, in order.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
}

impl ValidationReport {
    /// Records an informational entry that cannot fail.
    fn note(&mut self, name: &str, detail: impl Into<String>) {
        self.checks.push(ValidationCheck {
            name: name.to_owned(),
            passed: true,
            detail: detail.into(),
        });
    }

    /// Records a pass/fail check and aborts the construction on failure.
    fn require(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> Result<()> {
        let detail = detail.into();
        self.checks.push(ValidationCheck {
            name: name.to_owned(),
            passed,
            detail: detail.clone(),
        });
        if passed {
            Ok(())
        } else {
            Err(Error::ForgeValidation(format!("{name}: {detail}")))
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// How a construction was assembled: a stable name plus the concrete
/// parameters (witness words, connectors, thresholds) that were chosen.
#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub construction: String,
    pub parameters: BTreeMap<String, String>,
}

impl Provenance {
    fn new(construction: &str) -> Self {
        Provenance {
            construction: construction.to_owned(),
            parameters: BTreeMap::new(),
        }
    }

    fn set(&mut self, key: &str, value: impl Into<String>) {
        self.parameters.insert(key.to_owned(), value.into());
    }
}

/// Output of a forge construction.
///
/// Cover-building operations set `cover`; [`forge_ai_cover`] additionally
/// sets `intermediate` to the lifted shift over the enlarged alphabet whose
/// relabeling the cover presents. Subshift-building operations set `sub_sft`
/// to an edge-alphabet presentation as described in the module docs.
#[derive(Debug, Clone)]
pub struct ForgeResult {
    pub cover: Option<CoverSpec>,
    pub sub_sft: Option<ShiftHandle>,
    pub intermediate: Option<ShiftHandle>,
    pub provenance: Provenance,
    pub validation: ValidationReport,
}

// ---------------------------------------------------------------------------
// shared helpers
// ---------------------------------------------------------------------------

/// Rewrites every edge label through `map` (indexed by old symbol) into
/// `alphabet`, keeping vertices and adjacency.
fn relabel(g: &LabeledGraph, alphabet: Alphabet, map: &[Symbol]) -> Result<LabeledGraph> {
    let edges = g
        .edges()
        .iter()
        .map(|e| (e.src, e.dst, map[e.label as usize]))
        .collect();
    LabeledGraph::new(alphabet, g.vertex_names().to_vec(), edges)
}

/// For a presentation over the edge alphabet of `g` (symbol `i` names edge
/// `i`), the presentation of its labeled image: the same vertices with each
/// symbol replaced by the label of the edge it names.
pub fn image_presentation(sub: &LabeledGraph, g: &LabeledGraph) -> Result<LabeledGraph> {
    if sub.alphabet().len() != g.edge_count() {
        return Err(Error::Precondition(format!(
            "subshift alphabet has {} symbols but the cover graph has {} edges",
            sub.alphabet().len(),
            g.edge_count()
        )));
    }
    let map: Vec<Symbol> = g.edges().iter().map(|e| e.label).collect();
    relabel(sub, g.alphabet().clone(), &map)
}

/// Checks that `sub` presents a subset of the edge shift of `g`: its symbols
/// name edges of `g` and consecutive symbols name consecutive edges. Returns,
/// per vertex of `sub`, the vertex of `g` all its incident edges pass through.
fn check_edge_presentation(sub: &LabeledGraph, g: &LabeledGraph) -> Result<Vec<VertexId>> {
    if sub.alphabet().len() != g.edge_count() {
        return Err(Error::Precondition(format!(
            "subshift alphabet has {} symbols but the cover graph has {} edges",
            sub.alphabet().len(),
            g.edge_count()
        )));
    }
    let mut position: Vec<Option<VertexId>> = vec![None; sub.vertex_count()];
    let mut assign = |v: VertexId, pos: VertexId| -> Result<()> {
        match position[v as usize] {
            None => {
                position[v as usize] = Some(pos);
                Ok(())
            }
            Some(p) if p == pos => Ok(()),
            Some(p) => Err(Error::Precondition(format!(
                "subshift vertex {v} sits over cover vertices {p} and {pos} at once; \
                 consecutive symbols do not name consecutive edges"
            ))),
        }
    };
    for e in sub.edges() {
        let ge = g.edge(e.label as EdgeId);
        assign(e.src, ge.src)?;
        assign(e.dst, ge.dst)?;
    }
    position
        .into_iter()
        .map(|p| {
            p.ok_or_else(|| {
                Error::Precondition("subshift presentation has an isolated vertex".into())
            })
        })
        .collect()
}

/// Lexicographically least labeled path realizing `word`: starting vertices
/// in id order, out-edges in their stored (label, endpoint) order.
fn find_labeled_path(g: &LabeledGraph, word: &Word) -> Option<(VertexId, Vec<EdgeId>)> {
    fn go(g: &LabeledGraph, v: VertexId, rest: &[Symbol], path: &mut Vec<EdgeId>) -> bool {
        let Some((&a, rest)) = rest.split_first() else {
            return true;
        };
        for &e in g.out_edges(v) {
            let edge = g.edge(e);
            if edge.label != a {
                continue;
            }
            path.push(e);
            if go(g, edge.dst, rest, path) {
                return true;
            }
            path.pop();
        }
        false
    }
    let mut path = Vec::with_capacity(word.len());
    for v in g.vertices() {
        path.clear();
        if go(g, v, word.symbols(), &mut path) {
            return Some((v, path));
        }
    }
    None
}

/// Incremental graph under construction: named vertices plus an edge list.
struct GraphAssembly {
    vertex_names: Vec<String>,
    edges: Vec<(VertexId, VertexId, Symbol)>,
    taken: BTreeSet<String>,
}

impl GraphAssembly {
    fn empty() -> Self {
        GraphAssembly {
            vertex_names: Vec::new(),
            edges: Vec::new(),
            taken: BTreeSet::new(),
        }
    }

    fn from_graph(g: &LabeledGraph) -> Self {
        GraphAssembly {
            vertex_names: g.vertex_names().to_vec(),
            edges: g.edges().iter().map(|e| (e.src, e.dst, e.label)).collect(),
            taken: g.vertex_names().iter().cloned().collect(),
        }
    }

    fn add_vertex(&mut self, name: String) -> VertexId {
        let id = self.vertex_names.len() as VertexId;
        self.taken.insert(name.clone());
        self.vertex_names.push(name);
        id
    }

    /// Adds a vertex with a generated name that collides with nothing seen
    /// so far; generated names start with the reserved prefix.
    fn fresh_vertex(&mut self, base: &str) -> VertexId {
        let mut i = 0u64;
        loop {
            let candidate = format!("^{base}{i}");
            i += 1;
            if !self.taken.contains(&candidate) {
                return self.add_vertex(candidate);
            }
        }
    }

    fn edge(&mut self, src: VertexId, dst: VertexId, label: Symbol) {
        self.edges.push((src, dst, label));
    }

    /// Chain of fresh interior vertices reading the nonempty `word` from
    /// `from` to `to`.
    fn chain(&mut self, base: &str, from: VertexId, to: VertexId, word: &[Symbol]) {
        debug_assert!(!word.is_empty(), "a chain needs at least one edge");
        let mut cur = from;
        for (i, &a) in word.iter().enumerate() {
            let next = if i + 1 == word.len() {
                to
            } else {
                self.fresh_vertex(base)
            };
            self.edge(cur, next, a);
            cur = next;
        }
    }

    /// Chain ending at a fresh terminal vertex, which is returned.
    fn chain_to_fresh(&mut self, base: &str, from: VertexId, word: &[Symbol]) -> VertexId {
        let to = self.fresh_vertex(base);
        self.chain(base, from, to, word);
        to
    }

    fn build(self, alphabet: Alphabet) -> Result<LabeledGraph> {
        LabeledGraph::new(alphabet, self.vertex_names, self.edges)
    }
}

// ---------------------------------------------------------------------------
// receptive cycle graft
// ---------------------------------------------------------------------------

/// Grafts a fresh cycle onto the cover so that the receptive periodic point
/// `w`^inf gains a lift of least period `|w|`, leaving the presented shift
/// unchanged.
///
/// The graft rides on the receptivity witness (m1, m2): a fresh chain
/// reading m1 then w leaves a vertex where that word was already readable,
/// lands on a fresh cycle reading w, and a fresh chain reading m2 returns to
/// the original endpoint. Because m1 w^k m2 is allowed for every k, every
/// new bi-infinite label sequence was already presented.
pub fn forge_receptive_cover(pi: &CoverSpec, w: &PrimitiveWord) -> Result<ForgeResult> {
    forge_receptive_cover_with(pi, w, &Budgets::default())
}

pub fn forge_receptive_cover_with(
    pi: &CoverSpec,
    w: &PrimitiveWord,
    budgets: &Budgets,
) -> Result<ForgeResult> {
    let y = pi.codomain();
    let g = pi.cover_graph();
    let n = w.len();
    let report = census::is_receptive_with(y, w, budgets)?;
    let Some(witness) = report.witness else {
        return Err(Error::NotReceptive(format!(
            "no synchronizing pair brackets arbitrary powers of {}",
            w.word().render(y.alphabet())
        )));
    };
    // An empty witness word happens only when every word synchronizes (a
    // one-vertex deterministic presentation); w itself then serves instead
    // and keeps m1 w^k m2 in the language.
    let m1 = if witness.m1.is_empty() {
        w.word().clone()
    } else {
        witness.m1.clone()
    };
    let m2 = if witness.m2.is_empty() {
        w.word().clone()
    } else {
        witness.m2.clone()
    };

    let bracket = m1.concat(w.word()).concat(&m2);
    let Some((start, alpha)) = find_labeled_path(g, &bracket) else {
        return Err(Error::Internal(
            "witnessed word is not readable in the cover presentation".into(),
        ));
    };
    let end = g.edge(*alpha.last().expect("bracket word is nonempty")).dst;
    let p_before = g.graph_period()?;

    let mut asm = GraphAssembly::from_graph(g);
    let entry = m1.concat(w.word());
    let hub = asm.chain_to_fresh("graft", start, entry.symbols());
    asm.chain("graft", hub, hub, w.word().symbols());
    asm.chain("graft", hub, end, m2.symbols());
    let g2 = asm.build(g.alphabet().clone())?;

    let mut validation = ValidationReport::default();
    let mut provenance = Provenance::new("receptive-cycle-graft");
    provenance.set("point", format!("({})^inf", w.word().render(y.alphabet())));
    provenance.set("m1", m1.render(y.alphabet()));
    provenance.set("m2", m2.render(y.alphabet()));
    provenance.set("entry-vertex", g.vertex_name(start).to_owned());
    provenance.set("exit-vertex", g.vertex_name(end).to_owned());
    provenance.set("cycle-vertex", g2.vertex_name(hub).to_owned());
    provenance.set("cycle-length", n.to_string());

    validation.require(
        "forged-graph-essential",
        g2.is_essential(),
        "every vertex keeps incoming and outgoing edges",
    )?;
    let forged = ShiftHandle::from_graph(g2.clone())?;
    validation.require(
        "image-unchanged",
        present::shifts_equal(&forged, y)?,
        "the enlarged presentation presents exactly the original shift",
    )?;
    // The graft may glue the new cycle to existing walks over the same
    // labels, so the forged labeling need not be finite-to-one over the
    // grafted point; existence of a length-n aligned cycle is the right
    // check (with w primitive it carries a lift of least period exactly n).
    let lift_exists = census::has_aligned_cycle(&g2, w.word());
    validation.require(
        "lift-of-least-period",
        lift_exists,
        format!(
            "closed aligned path of length {n} reading ({})^inf: {lift_exists}",
            w.word().render(y.alphabet())
        ),
    )?;
    let spec = CoverSpec::new_unchecked(g2.clone(), y.clone());
    let counts = census::cover_census(&spec, n as u32, budgets)?;
    validation.require(
        "aligned-count-positive",
        counts[n - 1] >= n as u64,
        format!("aligned image counts {counts:?}"),
    )?;
    let p_after = g2.graph_period()?;
    if n as u64 % p_before == 0 {
        validation.require(
            "graph-period-preserved",
            p_after == p_before,
            format!("{p_before} -> {p_after}"),
        )?;
    } else {
        validation.note(
            "graph-period",
            format!(
                "cycle length {n} is not a multiple of the original period {p_before}; \
                 the period is now {p_after}"
            ),
        );
    }

    Ok(ForgeResult {
        cover: Some(spec),
        sub_sft: None,
        intermediate: None,
        provenance,
        validation,
    })
}

// ---------------------------------------------------------------------------
// alternation cover
// ---------------------------------------------------------------------------

/// Progress automaton over the image alphabet for the forbidden family
/// u w^k v with k >= 1: a subset-determinized matcher whose missing
/// transitions are exactly the ones completing a member of the family.
/// Bi-infinite label sequences readable in a product with this automaton
/// are exactly the sequences avoiding every member.
struct PatternDfa {
    /// Sorted progress subsets, indexed by state id; state 0 is empty.
    states: Vec<Vec<u32>>,
    /// `trans[state][symbol]`; None marks a completed forbidden word.
    trans: Vec<Vec<Option<u32>>>,
}

impl PatternDfa {
    /// Progress ids: `0..ul-1` made `i+1` symbols of u; `ul-1 + j` sits at
    /// phase `j` of the cycle block with no full repetition yet;
    /// `ul-1 + n + j` the same with at least one full repetition;
    /// `ul-1 + 2n + (j-1)` matched `j` symbols of v. Matching all of v from
    /// the repeated block completes the family.
    fn build(
        u: &[Symbol],
        w: &[Symbol],
        v: &[Symbol],
        alphabet_len: usize,
        cap: usize,
    ) -> Result<PatternDfa> {
        let ul = u.len();
        let n = w.len();
        let vl = v.len();
        assert!(ul >= 2 && vl >= 2 && n >= 1, "endpoint words outgrow the period word");
        let w_false = ul - 1;
        let v_base = ul - 1 + 2 * n;
        // Pushes the successors of one progress id; true when a successor
        // completes the family.
        let advance = |state: u32, a: Symbol, out: &mut Vec<u32>| -> bool {
            let s = state as usize;
            if s < w_false {
                if u[s + 1] == a {
                    out.push(if s + 2 == ul { w_false as u32 } else { (s + 1) as u32 });
                }
                false
            } else if s < v_base {
                let rel = s - w_false;
                let (j, completed) = if rel < n { (rel, false) } else { (rel - n, true) };
                if w[j] == a {
                    let nj = (j + 1) % n;
                    let completed2 = completed || j + 1 == n;
                    out.push((w_false + if completed2 { n } else { 0 } + nj) as u32);
                }
                if completed && j == 0 && v[0] == a {
                    out.push(v_base as u32);
                }
                false
            } else {
                let j = s - v_base + 1;
                if v[j] == a {
                    if j + 1 == vl {
                        return true;
                    }
                    out.push((v_base + j) as u32);
                }
                false
            }
        };

        let mut states: Vec<Vec<u32>> = vec![Vec::new()];
        let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
        index.insert(Vec::new(), 0);
        let mut trans: Vec<Vec<Option<u32>>> = Vec::new();
        let mut cursor = 0usize;
        while cursor < states.len() {
            let current = states[cursor].clone();
            cursor += 1;
            let mut row = Vec::with_capacity(alphabet_len);
            for a in 0..alphabet_len as Symbol {
                let mut nxt: Vec<u32> = Vec::new();
                let mut dead = false;
                for &st in &current {
                    if advance(st, a, &mut nxt) {
                        dead = true;
                        break;
                    }
                }
                if dead {
                    row.push(None);
                    continue;
                }
                if u[0] == a {
                    nxt.push(0);
                }
                nxt.sort_unstable();
                nxt.dedup();
                let id = match index.get(&nxt) {
                    Some(&id) => id,
                    None => {
                        if states.len() >= cap {
                            return Err(Error::budget("pattern automaton states", cap as u64));
                        }
                        let id = states.len() as u32;
                        index.insert(nxt.clone(), id);
                        states.push(nxt);
                        id
                    }
                };
                row.push(Some(id));
            }
            trans.push(row);
        }
        Ok(PatternDfa { states, trans })
    }

    fn step(&self, state: u32, a: Symbol) -> Option<u32> {
        self.trans[state as usize][a as usize]
    }

    fn run(&self, state: u32, word: &[Symbol]) -> Option<u32> {
        word.iter().try_fold(state, |s, &a| self.step(s, a))
    }

    fn state_count(&self) -> usize {
        self.states.len()
    }
}

/// Deterministic walk through graph and pattern automaton at once; the
/// graph must be right-resolving along the word.
fn pair_walk(
    g: &LabeledGraph,
    dfa: &PatternDfa,
    start: (VertexId, u32),
    word: &[Symbol],
) -> Option<(VertexId, u32)> {
    let (mut gv, mut d) = start;
    for &a in word {
        gv = g.successors(gv, a).next()?;
        d = dfa.step(d, a)?;
    }
    Some((gv, d))
}

/// Extends the witness pair to equal-length words u = x . m1 and v = m2 . z,
/// both readable in `g`, longer than the period word, whose outer blocks
/// (the |w|-prefix of u and the |w|-suffix of v) avoid every rotation of w.
fn extend_witness_pair(
    g: &LabeledGraph,
    m1: &Word,
    m2: &Word,
    w: &Word,
    m2_landing: VertexId,
    budgets: &Budgets,
) -> Result<(Word, Word)> {
    let n = w.len();
    let rotations: BTreeSet<Vec<Symbol>> = (0..n).map(|r| w.rotation(r).0).collect();
    let base = m1.len().max(m2.len()).max(n + 1);
    let mut nodes = 0u64;
    for len in base..=base + EXTEND_STEPS {
        let x = left_extension(g, m1, len - m1.len(), &rotations, n, &mut nodes, budgets)?;
        let z = right_extension(g, m2, m2_landing, len - m2.len(), &rotations, n, &mut nodes, budgets)?;
        if let (Some(x), Some(z)) = (x, z) {
            return Ok((x.concat(m1), m2.concat(&z)));
        }
    }
    Err(Error::budget(
        "extending the synchronizing pair past every rotation of the period word",
        EXTEND_STEPS as u64,
    ))
}

/// Lexicographically least x of the given length such that x . m1 is
/// readable in `g` and the |w|-prefix of x . m1 avoids `rotations`.
fn left_extension(
    g: &LabeledGraph,
    m1: &Word,
    len: usize,
    rotations: &BTreeSet<Vec<Symbol>>,
    n: usize,
    nodes: &mut u64,
    budgets: &Budgets,
) -> Result<Option<Word>> {
    fn go(
        g: &LabeledGraph,
        m1: &Word,
        subset: &[VertexId],
        chosen: &mut Vec<Symbol>,
        len: usize,
        rotations: &BTreeSet<Vec<Symbol>>,
        n: usize,
        nodes: &mut u64,
        cap: u64,
    ) -> Result<bool> {
        *nodes += 1;
        if *nodes > cap {
            return Err(Error::budget("searching witness extensions", cap));
        }
        if chosen.len() == len {
            if g.subset_run(subset, m1.symbols()).is_empty() {
                return Ok(false);
            }
            let mut block: Vec<Symbol> = Vec::with_capacity(n);
            block.extend(chosen.iter().copied());
            block.extend(m1.symbols().iter().copied());
            block.truncate(n);
            return Ok(!rotations.contains(&block));
        }
        for a in 0..g.alphabet().len() as Symbol {
            let next = g.subset_image(subset, a);
            if next.is_empty() {
                continue;
            }
            chosen.push(a);
            if go(g, m1, &next, chosen, len, rotations, n, nodes, cap)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
    let mut chosen = Vec::with_capacity(len);
    let full = g.full_vertex_set();
    if go(g, m1, &full, &mut chosen, len, rotations, n, nodes, budgets.word_budget)? {
        Ok(Some(Word(chosen)))
    } else {
        Ok(None)
    }
}

/// Lexicographically least z of the given length readable from `landing`
/// such that the |w|-suffix of m2 . z avoids `rotations`.
fn right_extension(
    g: &LabeledGraph,
    m2: &Word,
    landing: VertexId,
    len: usize,
    rotations: &BTreeSet<Vec<Symbol>>,
    n: usize,
    nodes: &mut u64,
    budgets: &Budgets,
) -> Result<Option<Word>> {
    fn go(
        g: &LabeledGraph,
        v: VertexId,
        m2: &Word,
        chosen: &mut Vec<Symbol>,
        len: usize,
        rotations: &BTreeSet<Vec<Symbol>>,
        n: usize,
        nodes: &mut u64,
        cap: u64,
    ) -> Result<bool> {
        *nodes += 1;
        if *nodes > cap {
            return Err(Error::budget("searching witness extensions", cap));
        }
        if chosen.len() == len {
            let mut block: Vec<Symbol> = Vec::with_capacity(n);
            if len >= n {
                block.extend_from_slice(&chosen[len - n..]);
            } else {
                let need = n - len;
                block.extend_from_slice(&m2.symbols()[m2.len() - need..]);
                block.extend_from_slice(chosen);
            }
            return Ok(!rotations.contains(&block));
        }
        for a in 0..g.alphabet().len() as Symbol {
            let Some(next) = g.successors(v, a).next() else {
                continue;
            };
            chosen.push(a);
            if go(g, next, m2, chosen, len, rotations, n, nodes, cap)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
    let mut chosen = Vec::with_capacity(len);
    if go(g, landing, m2, &mut chosen, len, rotations, n, nodes, budgets.word_budget)? {
        Ok(Some(Word(chosen)))
    } else {
        Ok(None)
    }
}

/// How many points of the lifted shift presented by `p_hat` collapse
/// letterwise (through `collapse`) onto the aligned periodic point w^inf.
/// `Ok(None)` reports an infinite preimage set.
///
/// Distinct walks of `p_hat` reading the same lifted symbol sequence are one
/// point of the lifted shift, so walk counting overcounts; this counts label
/// sequences instead. The phase product of `p_hat` against w is determinized
/// by lifted symbol, which presents the same set of sequences; after
/// trimming, that set is finite exactly when every subset state has a single
/// successor, in which case the deterministic part is a disjoint union of
/// cycles and each cycle's primitive label root `r` contributes one orbit
/// with |r|/|w| members over the aligned point itself.
fn collapsed_point_preimages(
    p_hat: &LabeledGraph,
    collapse: &[Symbol],
    w: &PrimitiveWord,
    cap: usize,
) -> Result<Option<u64>> {
    let m = w.len();
    let nv = p_hat.vertex_count();
    if nv == 0 || m == 0 {
        return Ok(Some(0));
    }
    let pid = |v: VertexId, phase: usize| v * m as u32 + phase as u32;
    let names: Vec<String> = (0..nv)
        .flat_map(|v| (0..m).map(move |p| format!("^q{v}p{p}")))
        .collect();
    let mut edges: Vec<(VertexId, VertexId, Symbol)> = Vec::new();
    for e in p_hat.edges() {
        let a = collapse[e.label as usize];
        for (phase, &want) in w.word().symbols().iter().enumerate() {
            if a == want {
                edges.push((pid(e.src, phase), pid(e.dst, (phase + 1) % m), e.label));
            }
        }
    }
    let product = LabeledGraph::new(p_hat.alphabet().clone(), names, edges)?;
    let (product, _) = product.trim();
    if product.vertex_count() == 0 {
        return Ok(Some(0));
    }
    let auto = present::determinize(&product, product.full_vertex_set(), cap)?;
    let det = auto.to_graph(&product)?;
    let (det, _) = det.trim();
    if det.vertex_count() == 0 {
        return Ok(Some(0));
    }
    if det.vertices().any(|v| det.out_edges(v).len() != 1) {
        return Ok(None);
    }
    let primitive_root = |z: &[Symbol]| -> Vec<Symbol> {
        for d in 1..=z.len() {
            if z.len() % d == 0 && (0..z.len()).all(|i| z[i] == z[i % d]) {
                return z[..d].to_vec();
            }
        }
        z.to_vec()
    };
    let mut visited = vec![false; det.vertex_count()];
    let mut classes: HashSet<Vec<Symbol>> = HashSet::new();
    let mut total = 0u64;
    for v0 in det.vertices() {
        if visited[v0 as usize] {
            continue;
        }
        let mut order: HashMap<VertexId, usize> = HashMap::new();
        let mut seq: Vec<Symbol> = Vec::new();
        let mut cur = v0;
        loop {
            if visited[cur as usize] && !order.contains_key(&cur) {
                break;
            }
            if let Some(&i) = order.get(&cur) {
                let root = primitive_root(&seq[i..]);
                if root.len() % m != 0 {
                    return Err(Error::Internal(
                        "collapsed preimage root does not align with the point period".into(),
                    ));
                }
                let members = (root.len() / m) as u64;
                if classes.insert(Word(root).least_rotation().0) {
                    total += members;
                }
                break;
            }
            order.insert(cur, seq.len());
            visited[cur as usize] = true;
            let e = det.edge(det.out_edges(cur)[0]);
            seq.push(e.label);
            cur = e.dst;
        }
    }
    Ok(Some(total))
}

/// Everything the alternation construction produces and verifies: the
/// lifted shift over the enlarged alphabet, its relabeled presentation, and
/// the composed deterministic cover.
struct AiCore {
    y_hat: ShiftHandle,
    relabeled: LabeledGraph,
    composite: LabeledGraph,
    provenance: Provenance,
    validation: ValidationReport,
}

fn build_ai_core(y: &ShiftHandle, xi: &PrimitiveWord, budgets: &Budgets) -> Result<AiCore> {
    if y.is_empty() {
        return Err(Error::EmptyShift("alternation cover construction".into()));
    }
    let h_y = entropy::entropy_with(y, budgets.tol)?;
    if h_y.exact_zero {
        return Err(Error::ZeroEntropy(
            "the alternation construction needs words outside every power of the period word"
                .into(),
        ));
    }
    let report = census::is_receptive_with(y, xi, budgets)?;
    let Some(witness) = report.witness else {
        return Err(Error::NotReceptive(format!(
            "no synchronizing pair brackets arbitrary powers of {}",
            xi.word().render(y.alphabet())
        )));
    };
    let fischer = y.fischer()?;
    let g = fischer.graph().clone();
    let a_len = g.alphabet().len();
    let n = xi.len();
    let w = xi.word().clone();

    // Degenerate empty witness words only happen when everything
    // synchronizes; the period word itself then serves.
    let m1 = if witness.m1.is_empty() { w.clone() } else { witness.m1.clone() };
    let m2 = if witness.m2.is_empty() { w.clone() } else { witness.m2.clone() };
    let landing_set = g.subset_run(&g.full_vertex_set(), m2.symbols());
    let [m2_landing] = landing_set[..] else {
        return Err(Error::Internal(
            "second witness word is not magic for the deterministic presentation".into(),
        ));
    };
    let (u, v) = extend_witness_pair(&g, &m1, &m2, &w, m2_landing, budgets)?;
    let ell = u.len();

    // Reading v from the head of the witness cycle pins the vertex the exit
    // chain lands on; reading u from anywhere ends on the cycle head again
    // (the first witness word is magic), so alternations compose.
    let Some(cycle_head) = g.vertex_by_name(&witness.collapse_vertex) else {
        return Err(Error::Internal(
            "witness names a vertex missing from the deterministic presentation".into(),
        ));
    };
    let Some(v_landing) = fischer.run(cycle_head, v.symbols()) else {
        return Err(Error::Internal("exit word is not readable from the witness cycle".into()));
    };

    let dfa = PatternDfa::build(u.symbols(), w.symbols(), v.symbols(), a_len, budgets.state_cap)?;
    let Some(dfa_after_v) = dfa.run(0, v.symbols()) else {
        return Err(Error::Internal("exit word already completes a forbidden pattern".into()));
    };

    // Product of the presentation with the automaton, seeded everywhere.
    let mut pairs: Vec<(VertexId, u32)> = Vec::new();
    let mut pair_index: HashMap<(VertexId, u32), u32> = HashMap::new();
    let mut queue: VecDeque<u32> = VecDeque::new();
    for gv in g.vertices() {
        pair_index.insert((gv, 0), pairs.len() as u32);
        queue.push_back(pairs.len() as u32);
        pairs.push((gv, 0));
    }
    let mut prod_edges: Vec<(u32, u32, Symbol)> = Vec::new();
    while let Some(pid) = queue.pop_front() {
        let (gv, d) = pairs[pid as usize];
        for &e in g.out_edges(gv) {
            let edge = g.edge(e);
            let Some(d2) = dfa.step(d, edge.label) else {
                continue;
            };
            let key = (edge.dst, d2);
            let nid = match pair_index.get(&key) {
                Some(&nid) => nid,
                None => {
                    if pairs.len() >= budgets.state_cap {
                        return Err(Error::budget(
                            "pattern product states",
                            budgets.state_cap as u64,
                        ));
                    }
                    let nid = pairs.len() as u32;
                    pair_index.insert(key, nid);
                    pairs.push(key);
                    queue.push_back(nid);
                    nid
                }
            };
            prod_edges.push((pid, nid, edge.label));
        }
    }

    // Keep only the middle vertices that sit on some alternation cycle:
    // reachable from the exit landing and able to reach a vertex where u is
    // still readable.
    let Some(&hstar) = pair_index.get(&(v_landing, dfa_after_v)) else {
        return Err(Error::Internal("exit landing state missing from the pattern product".into()));
    };
    let entry_capable: Vec<bool> = pairs
        .iter()
        .map(|&pair| pair_walk(&g, &dfa, pair, u.symbols()).is_some())
        .collect();
    let mut out_adj: Vec<Vec<u32>> = vec![Vec::new(); pairs.len()];
    let mut in_adj: Vec<Vec<u32>> = vec![Vec::new(); pairs.len()];
    for &(s, t, _) in &prod_edges {
        out_adj[s as usize].push(t);
        in_adj[t as usize].push(s);
    }
    let bfs = |seeds: Vec<u32>, adj: &[Vec<u32>]| -> Vec<bool> {
        let mut seen = vec![false; pairs.len()];
        let mut queue: VecDeque<u32> = VecDeque::new();
        for s in seeds {
            if !seen[s as usize] {
                seen[s as usize] = true;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &t in &adj[v as usize] {
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    };
    let fwd = bfs(vec![hstar], &out_adj);
    let entry_seeds: Vec<u32> =
        (0..pairs.len() as u32).filter(|&i| entry_capable[i as usize]).collect();
    let bwd = bfs(entry_seeds, &in_adj);
    if !(fwd[hstar as usize] && bwd[hstar as usize]) {
        return Err(Error::ForgeValidation(
            "alternation middle graph is empty: the exit landing cannot reach an entry".into(),
        ));
    }

    // Fresh symbols for the lifted period word.
    let mut hat_names: Vec<String> = Vec::with_capacity(n);
    {
        let mut taken: BTreeSet<String> = g.alphabet().names().iter().cloned().collect();
        for j in 0..n {
            let mut candidate = format!("^w{j}");
            let mut c = 0u32;
            while taken.contains(&candidate) {
                candidate = format!("^w{j}x{c}");
                c += 1;
            }
            taken.insert(candidate.clone());
            hat_names.push(candidate);
        }
    }
    let b_alphabet = g.alphabet().extend(hat_names.clone())?;
    let hat: Vec<Symbol> = (0..n).map(|j| (a_len + j) as Symbol).collect();
    let mut b_to_a: Vec<Symbol> = (0..a_len as Symbol).collect();
    b_to_a.extend(w.symbols().iter().copied());

    // Assemble: kept middle graph, fresh cycle, entry chains reading u,
    // one exit chain reading v, and fused chains for overlapping gaps.
    let mut asm = GraphAssembly::empty();
    let mut kept: Vec<Option<VertexId>> = vec![None; pairs.len()];
    for pid in 0..pairs.len() {
        if fwd[pid] && bwd[pid] {
            kept[pid] = Some(asm.add_vertex(format!("q{pid}")));
        }
    }
    for &(s, t, a) in &prod_edges {
        if let (Some(s2), Some(t2)) = (kept[s as usize], kept[t as usize]) {
            asm.edge(s2, t2, a);
        }
    }
    let cyc: Vec<VertexId> = (0..n).map(|_| asm.fresh_vertex("c")).collect();
    for j in 0..n {
        asm.edge(cyc[j], cyc[(j + 1) % n], hat[j]);
    }
    let mut entries = 0usize;
    for pid in 0..pairs.len() {
        let Some(from) = kept[pid] else { continue };
        if !entry_capable[pid] {
            continue;
        }
        let pre = asm.chain_to_fresh("en", from, u.symbols());
        asm.edge(pre, cyc[1 % n], hat[0]);
        entries += 1;
    }
    let exit_target = kept[hstar as usize].expect("exit landing was kept");
    asm.chain("ex", cyc[0], exit_target, v.symbols());
    let mut overlaps: Vec<usize> = Vec::new();
    for d in 1..=ell {
        if v.symbols()[ell - d..] != u.symbols()[..d] {
            continue;
        }
        if fischer.run(v_landing, &u.symbols()[d..]).is_none() {
            continue;
        }
        let mut fused: Vec<Symbol> = v.symbols().to_vec();
        fused.extend_from_slice(&u.symbols()[d..]);
        let pre = asm.chain_to_fresh("ov", cyc[0], &fused);
        asm.edge(pre, cyc[1 % n], hat[0]);
        overlaps.push(d);
    }
    let p_hat = asm.build(b_alphabet.clone())?;
    let y_hat = ShiftHandle::from_graph(p_hat)?;

    let mut validation = ValidationReport::default();
    let mut provenance = Provenance::new("alternation-cover");
    provenance.set("point", format!("({})^inf", w.render(g.alphabet())));
    provenance.set("u", u.render(g.alphabet()));
    provenance.set("v", v.render(g.alphabet()));
    provenance.set("lift-symbols", hat_names.join(" "));
    provenance.set("pattern-states", dfa.state_count().to_string());
    provenance.set("middle-vertices", kept.iter().flatten().count().to_string());
    provenance.set("entry-count", entries.to_string());
    provenance.set("overlap-gaps", format!("{overlaps:?}"));

    let relabeled = relabel(y_hat.graph(), g.alphabet().clone(), &b_to_a)?;
    let image = ShiftHandle::from_graph(relabeled.clone())?;
    validation.require(
        "image-is-target",
        present::shifts_equal(&image, y)?,
        "relabeling the lifted presentation back yields exactly the target shift",
    )?;
    validation.require(
        "lift-presentation-irreducible",
        y_hat.is_irreducible_presentation(),
        format!("{} vertices", y_hat.graph().vertex_count()),
    )?;
    let w_hat = PrimitiveWord::new(Word(hat.clone()))?;
    validation.require(
        "lift-point-present",
        census::contains_periodic(&y_hat, w_hat.word())?,
        "the fresh cycle word is a point of the lifted shift",
    )?;
    validation.require(
        "lift-point-synchronizing",
        census::is_synchronizing_point(&y_hat, &w_hat)?,
        "the fresh cycle word synchronizes the lifted shift",
    )?;
    validation.note(
        "lift-point-period",
        format!(
            "the lift uses {n} fresh symbols, so its least period is exactly {n} \
             and it relabels onto the chosen point"
        ),
    );

    let composite = {
        let hat_cover = y_hat.fischer()?;
        relabel(hat_cover.graph(), g.alphabet().clone(), &b_to_a)?
    };
    let composite_spec = CoverSpec::new_unchecked(composite.clone(), y.clone());
    match verify::degree(&composite_spec) {
        Ok(d) => validation.require("composite-degree-one", d == 1, format!("degree {d}"))?,
        Err(Error::NotFiniteToOne) => {
            validation.require("composite-degree-one", false, "composite cover is not finite-to-one")?
        }
        Err(e) => return Err(e),
    }
    let mut failures: Vec<String> = Vec::new();
    let mut scanned = 0usize;
    for m in 1..=ORBIT_CHECK_LEN {
        for eta in lyndon_words(a_len, m, budgets.word_budget)? {
            if !census::contains_periodic(y, &eta)? {
                continue;
            }
            let pe = PrimitiveWord::new(eta)?;
            if pe.word() == xi.word() {
                continue;
            }
            scanned += 1;
            match collapsed_point_preimages(y_hat.graph(), &b_to_a, &pe, budgets.state_cap)? {
                Some(1) => {}
                Some(count) => failures.push(format!(
                    "({})^inf has {count} preimages in the lifted shift",
                    pe.word().render(g.alphabet())
                )),
                None => failures.push(format!(
                    "({})^inf has infinitely many preimages in the lifted shift",
                    pe.word().render(g.alphabet())
                )),
            }
        }
    }
    validation.require(
        "other-orbits-lift-uniquely",
        failures.is_empty(),
        if failures.is_empty() {
            format!(
                "{scanned} orbits of length at most {ORBIT_CHECK_LEN} each collapse \
                 from exactly one point of the lifted shift"
            )
        } else {
            failures.join("; ")
        },
    )?;

    Ok(AiCore { y_hat, relabeled, composite, provenance, validation })
}

/// Builds a cover of the irreducible positive-entropy sofic shift `y` in
/// which the receptive periodic point `xi`^inf lifts to a synchronizing
/// periodic point of the same least period, while every other periodic
/// point has exactly one preimage.
///
/// The result's `intermediate` is the lifted shift over the enlarged
/// alphabet (the period word replaced by fresh symbols); `cover` presents
/// the composition of that presentation with the relabeling onto `y`.
pub fn forge_ai_cover(y: &ShiftHandle, xi: &PrimitiveWord) -> Result<ForgeResult> {
    forge_ai_cover_with(y, xi, &Budgets::default())
}

pub fn forge_ai_cover_with(
    y: &ShiftHandle,
    xi: &PrimitiveWord,
    budgets: &Budgets,
) -> Result<ForgeResult> {
    let core = build_ai_core(y, xi, budgets)?;
    let spec = CoverSpec::new_unchecked(core.relabeled, y.clone());
    Ok(ForgeResult {
        cover: Some(spec),
        sub_sft: None,
        intermediate: Some(core.y_hat),
        provenance: core.provenance,
        validation: core.validation,
    })
}

/// Composes the alternation cover with a canonical deterministic
/// presentation of the lifted shift, yielding an equal-entropy degree-one
/// cover whose domain is an edge shift and in which `xi`^inf has a lift of
/// the same least period.
pub fn ai_sft_cover(y: &ShiftHandle, xi: &PrimitiveWord) -> Result<CoverSpec> {
    ai_sft_cover_with(y, xi, &Budgets::default())
}

pub fn ai_sft_cover_with(
    y: &ShiftHandle,
    xi: &PrimitiveWord,
    budgets: &Budgets,
) -> Result<CoverSpec> {
    Ok(ai_sft_cover_core(y, xi, budgets)?.0)
}

/// [`ai_sft_cover_with`] keeping the validation report, for callers that
/// attach the cover as certificate evidence.
pub(crate) fn ai_sft_cover_core(
    y: &ShiftHandle,
    xi: &PrimitiveWord,
    budgets: &Budgets,
) -> Result<(CoverSpec, ValidationReport)> {
    let mut core = build_ai_core(y, xi, budgets)?;
    let composite = core.composite.clone();
    let comp_handle = ShiftHandle::from_graph(composite.clone())?;
    core.validation.require(
        "sft-image-is-target",
        present::shifts_equal(&comp_handle, y)?,
        "the composed presentation presents exactly the target shift",
    )?;
    let pre = verify::point_preimages(&composite, xi)?;
    core.validation.require(
        "sft-lift-of-least-period",
        pre.preimage_periods().contains(&(xi.len() as u64)),
        format!("lift least periods {:?}", pre.preimage_periods()),
    )?;
    let dom = ShiftHandle::from_graph(composite.edge_shift_presentation()?)?;
    let h_dom = entropy::entropy_with(&dom, budgets.tol)?;
    let h_y = entropy::entropy_with(y, budgets.tol)?;
    core.validation.require(
        "entropy-preserved",
        h_dom.log_lo <= h_y.log_hi && h_y.log_lo <= h_dom.log_hi,
        format!(
            "domain entropy in [{:.9}, {:.9}], target entropy in [{:.9}, {:.9}]",
            h_dom.log_lo, h_dom.log_hi, h_y.log_lo, h_y.log_hi
        ),
    )?;
    let p_y = y.fischer()?.graph().graph_period()?;
    let p_c = composite.graph_period()?;
    core.validation.require(
        "canonical-period-divides",
        p_c % p_y == 0,
        format!("canonical period {p_y}, cover period {p_c}"),
    )?;
    Ok((
        CoverSpec::new_unchecked(composite, y.clone()),
        core.validation,
    ))
}

// ---------------------------------------------------------------------------
// injective restriction
// ---------------------------------------------------------------------------

/// Finds a short cycle whose label word is primitive, preferring shorter
/// cycles, lower start vertices, and lexicographically smaller labels.
fn primitive_label_cycle(g: &LabeledGraph, budgets: &Budgets) -> Result<(VertexId, Vec<EdgeId>)> {
    fn dfs(
        g: &LabeledGraph,
        root: VertexId,
        at: VertexId,
        remaining: usize,
        path: &mut Vec<EdgeId>,
        nodes: &mut u64,
        cap: u64,
    ) -> Result<bool> {
        *nodes += 1;
        if *nodes > cap {
            return Err(Error::budget(
                "searching for a short cycle with primitive label",
                cap,
            ));
        }
        if remaining == 0 {
            return Ok(at == root && g.label_word(path).is_primitive());
        }
        for &e in g.out_edges(at) {
            path.push(e);
            if dfs(g, root, g.edge(e).dst, remaining - 1, path, nodes, cap)? {
                return Ok(true);
            }
            path.pop();
        }
        Ok(false)
    }

    let mut nodes = 0u64;
    for len in 1..=budgets.depth_max as usize {
        for root in g.vertices() {
            let mut path = Vec::with_capacity(len);
            if dfs(g, root, root, len, &mut path, &mut nodes, budgets.word_budget)? {
                return Ok((root, path));
            }
        }
    }
    Err(Error::budget(
        "searching for a short cycle with primitive label",
        budgets.depth_max as u64,
    ))
}

/// Finds a path of exactly `len` edges whose label word is outside `avoid`,
/// scanning starts in vertex order and labels lexicographically.
fn path_avoiding(
    g: &LabeledGraph,
    len: usize,
    avoid: &BTreeSet<Vec<Symbol>>,
) -> Option<(VertexId, Vec<EdgeId>)> {
    fn dfs(
        g: &LabeledGraph,
        at: VertexId,
        remaining: usize,
        path: &mut Vec<EdgeId>,
        avoid: &BTreeSet<Vec<Symbol>>,
    ) -> bool {
        if remaining == 0 {
            return !avoid.contains(&g.label_word(path).0);
        }
        for &e in g.out_edges(at) {
            path.push(e);
            if dfs(g, g.edge(e).dst, remaining - 1, path, avoid) {
                return true;
            }
            path.pop();
        }
        false
    }

    for start in g.vertices() {
        let mut path = Vec::with_capacity(len);
        if dfs(g, start, len, &mut path, avoid) {
            return Some((start, path));
        }
    }
    None
}

/// Shortest edge path between two vertices; empty when they coincide.
fn shortest_connector(g: &LabeledGraph, from: VertexId, to: VertexId) -> Result<Vec<EdgeId>> {
    if from == to {
        return Ok(Vec::new());
    }
    let mut parent: Vec<Option<EdgeId>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = VecDeque::new();
    seen[from as usize] = true;
    queue.push_back(from);
    while let Some(v) = queue.pop_front() {
        for &e in g.out_edges(v) {
            let dst = g.edge(e).dst;
            if !seen[dst as usize] {
                seen[dst as usize] = true;
                parent[dst as usize] = Some(e);
                if dst == to {
                    let mut path = Vec::new();
                    let mut at = to;
                    while at != from {
                        let e = parent[at as usize].expect("parent chain reaches the source");
                        path.push(e);
                        at = g.edge(e).src;
                    }
                    path.reverse();
                    return Ok(path);
                }
                queue.push_back(dst);
            }
        }
    }
    Err(Error::Internal(
        "connector endpoints lie in different components of an irreducible graph".into(),
    ))
}

/// Start positions of every occurrence of `pattern` inside `text`.
fn occurrence_starts(pattern: &[Symbol], text: &[Symbol]) -> Vec<usize> {
    let kmp = Kmp::new(pattern);
    if kmp.is_empty() {
        return Vec::new();
    }
    let mut starts = Vec::new();
    let mut state = 0usize;
    for (i, &s) in text.iter().enumerate() {
        state = kmp.step(state, s);
        if state == kmp.len() {
            starts.push(i + 1 - kmp.len());
        }
    }
    starts
}

/// True when the only occurrences of `marker` in `marker filler marker` are
/// the two designated ones, so markers cannot appear at unexpected shifts.
fn marker_isolated(marker: &[Symbol], filler: &[Symbol]) -> bool {
    let mut text = Vec::with_capacity(marker.len() * 2 + filler.len());
    text.extend_from_slice(marker);
    text.extend_from_slice(filler);
    text.extend_from_slice(marker);
    occurrence_starts(marker, &text) == vec![0, marker.len() + filler.len()]
}

/// Enumerates one representative path per label word among the `from -> to`
/// paths of length at most `max_len` that avoid `forbidden` as a factor.
/// Paths sharing a label keep only the lexicographically first edge
/// sequence, so the result is a partial function from words to paths.
fn return_representatives(
    g: &LabeledGraph,
    from: VertexId,
    to: VertexId,
    forbidden: &Word,
    max_len: usize,
    budgets: &Budgets,
) -> Result<Vec<(Word, Vec<EdgeId>)>> {
    let kmp = Kmp::new(forbidden.symbols());
    let states = kmp.len();
    let nv = g.vertex_count();
    // reach[k][v][q]: a forbidden-free continuation of exactly k edges from
    // vertex v in matcher state q ends at `to`.
    let mut reach: Vec<Vec<Vec<bool>>> = vec![vec![vec![false; states]; nv]; max_len + 1];
    for q in 0..states {
        reach[0][to as usize][q] = true;
    }
    for k in 1..=max_len {
        for v in 0..nv {
            for q in 0..states {
                let hit = g.out_edges(v as VertexId).iter().any(|&e| {
                    let edge = g.edge(e);
                    let q2 = kmp.step(q, edge.label);
                    q2 < states && reach[k - 1][edge.dst as usize][q2]
                });
                reach[k][v][q] = hit;
            }
        }
    }
    let mut reach_le = reach.clone();
    for k in 1..=max_len {
        for v in 0..nv {
            for q in 0..states {
                reach_le[k][v][q] = reach_le[k][v][q] || reach_le[k - 1][v][q];
            }
        }
    }

    let mut out: Vec<(Word, Vec<EdgeId>)> = Vec::new();
    let mut seen_labels: HashSet<(usize, Vec<Symbol>)> = HashSet::new();
    let mut path: Vec<EdgeId> = Vec::new();
    let mut nodes = 0u64;

    fn dfs(
        g: &LabeledGraph,
        kmp: &Kmp,
        at: VertexId,
        q: usize,
        to: VertexId,
        max_len: usize,
        reach_le: &[Vec<Vec<bool>>],
        path: &mut Vec<EdgeId>,
        seen_labels: &mut HashSet<(usize, Vec<Symbol>)>,
        out: &mut Vec<(Word, Vec<EdgeId>)>,
        nodes: &mut u64,
        cap: u64,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > cap {
            return Err(Error::budget("enumerating return words", cap));
        }
        if at == to && !path.is_empty() {
            let label = g.label_word(path);
            if seen_labels.insert((label.len(), label.0.clone())) {
                out.push((label, path.clone()));
            }
        }
        if path.len() == max_len {
            return Ok(());
        }
        let states = kmp.len();
        for &e in g.out_edges(at) {
            let edge = g.edge(e);
            let q2 = kmp.step(q, edge.label);
            if q2 == states {
                continue;
            }
            if !reach_le[max_len - path.len() - 1][edge.dst as usize][q2] {
                continue;
            }
            path.push(e);
            dfs(
                g, kmp, edge.dst, q2, to, max_len, reach_le, path, seen_labels, out, nodes, cap,
            )?;
            path.pop();
        }
        Ok(())
    }

    dfs(
        g,
        &kmp,
        from,
        0,
        to,
        max_len,
        &reach_le,
        &mut path,
        &mut seen_labels,
        &mut out,
        &mut nodes,
        budgets.word_budget,
    )?;
    Ok(out)
}

/// Picks the smallest return length `nn` such that both `nn` and `nn - p`
/// carry enough return words for the entropy target: length `j` qualifies
/// when `ln(count[j]) >= target * (m + j)` with `m` the marker length.
/// Requiring two lengths at distance `p` keeps the graph period at `p`.
fn choose_return_length(counts: &[u64], m: usize, p: usize, target: f64) -> Option<usize> {
    let bar = |j: usize| -> bool {
        counts
            .get(j)
            .is_some_and(|&c| c > 0 && (c as f64).ln() >= target * (m + j) as f64)
    };
    (p + 1..counts.len()).find(|&nn| bar(nn) && bar(nn - p))
}

/// Entropy enclosure for a wheel graph: a hub cycle of `m` edges with
/// `count` parallel petal chains of each listed extra length. The wheel has
/// the same cycle structure as the marker bouquet, so the two share entropy,
/// but its vertex count stays small enough for the spectral enclosure.
fn bouquet_entropy(m: usize, petals: &[(usize, u64)], tol: f64) -> Result<EntropyEnclosure> {
    let longest = petals.iter().map(|&(j, _)| j).max().unwrap_or(0);
    // Vertices: 0..=m on the marker spine (0 is the hub, m the spine end),
    // then one shared petal-interior chain t_1..t_{longest-1}. A petal of
    // length j runs m -> t_1 -> ... -> t_{j-1} -> 0, with the closing edge
    // carrying multiplicity count_j. Every petal cycle through the hub has
    // m + j edges, the same first-return structure as the real bouquet, so
    // the spectral radii agree while the vertex count stays near m.
    let spine = m + 1;
    let interior = longest.saturating_sub(1);
    let size = spine + interior;
    let mut adj = vec![vec![0u64; size]; size];
    for i in 0..m {
        adj[i][i + 1] += 1;
    }
    let petal_vertex = |step: usize| -> usize {
        // `step` edges into a petal; step 0 is the spine end.
        if step == 0 {
            m
        } else {
            spine + step - 1
        }
    };
    for step in 1..longest {
        adj[petal_vertex(step - 1)][petal_vertex(step)] += 1;
    }
    for &(j, count) in petals {
        adj[petal_vertex(j - 1)][0] += count;
    }
    entropy::spectral_enclosure(&adj, tol)
}

/// Assembles the marker bouquet as an edge-labeled graph over the edge
/// alphabet of `g`: a spine spelling the marker path `v_path`, closed by one
/// petal chain per return representative.
fn build_bouquet(
    g: &LabeledGraph,
    v_path: &[EdgeId],
    reps: &[(Word, Vec<EdgeId>)],
) -> Result<LabeledGraph> {
    let alphabet = g.edge_shift_presentation()?.alphabet().clone();
    let mut asm = GraphAssembly::empty();
    let m = v_path.len();
    let spine: Vec<VertexId> = (0..=m).map(|i| asm.add_vertex(format!("s{i}"))).collect();
    for (i, &e) in v_path.iter().enumerate() {
        asm.edge(spine[i], spine[i + 1], e as Symbol);
    }
    for (t, (_, rep)) in reps.iter().enumerate() {
        let ids: Vec<Symbol> = rep.iter().map(|&e| e as Symbol).collect();
        asm.chain(&format!("g{t}"), spine[m], spine[0], &ids);
    }
    asm.build(alphabet)
}

/// Carves an irreducible subshift out of the domain edge shift of `pi` on
/// which the covering map is injective, keeping entropy within `eps` of the
/// image and preserving the graph period.
///
/// Small injectively labeled covers pass through whole. Otherwise points
/// are restricted to repeated marker blocks separated by return words that
/// avoid a high power of a short cycle label; the marker contains an even
/// higher power, so marker occurrences pin down walk boundaries and the
/// label sequence decodes to a unique walk.
pub fn extract_injective_sub(pi: &CoverSpec, eps: f64) -> Result<ForgeResult> {
    extract_injective_sub_with(pi, eps, &Budgets::default())
}

/// [`extract_injective_sub`] under explicit budgets.
pub fn extract_injective_sub_with(
    pi: &CoverSpec,
    eps: f64,
    budgets: &Budgets,
) -> Result<ForgeResult> {
    let g = pi.cover_graph();
    let y = pi.codomain();
    if !g.is_irreducible() {
        return Err(Error::NotIrreducible("injective restriction".into()));
    }
    let h_y = entropy::entropy_with(y, budgets.tol)?;
    if h_y.exact_zero {
        return Err(Error::ZeroEntropy(
            "a single periodic orbit leaves no entropy to approximate".into(),
        ));
    }
    if !(eps > 0.0 && eps < h_y.log_lo) {
        return Err(Error::Precondition(format!(
            "eps must lie strictly between 0 and the image entropy lower bound {:.9}; got {eps}",
            h_y.log_lo
        )));
    }

    // Injectively labeled covers need no restriction at all.
    if g.edge_count() <= DIRECT_INJECTIVITY_EDGE_CAP && verify::injective_on(g)? {
        let mut validation = ValidationReport::default();
        let mut provenance = Provenance::new("whole-domain");
        provenance.set("eps", format!("{eps}"));
        validation.require(
            "restriction-injective-direct",
            true,
            "the labeling is injective on the whole domain",
        )?;
        validation.require(
            "subshift-irreducible",
            true,
            "the whole domain is kept and is irreducible",
        )?;
        validation.note(
            "entropy-within-eps",
            format!(
                "the whole domain carries the image entropy, at least {:.9}",
                h_y.log_lo
            ),
        );
        validation.note(
            "graph-period-preserved",
            format!(
                "the domain is returned unchanged (period {})",
                g.graph_period()?
            ),
        );
        let sub = ShiftHandle::from_graph(g.edge_shift_presentation()?)?;
        return Ok(ForgeResult {
            cover: None,
            sub_sft: Some(sub),
            intermediate: None,
            provenance,
            validation,
        });
    }

    let p = g.graph_period()? as usize;
    let target = h_y.log_hi - eps;
    let (cycle_head, u_cycle) = primitive_label_cycle(g, budgets)?;
    let u_label = g.label_word(&u_cycle);
    let ell = u_cycle.len();
    let rotations: BTreeSet<Vec<Symbol>> = (0..ell).map(|r| u_label.rotation(r).0).collect();
    let Some((a_start, a_path)) = path_avoiding(g, ell, &rotations) else {
        return Err(Error::Precondition(
            "every path of the cycle length reads a rotation of the cycle label; \
             the cover has no marker material"
                .into(),
        ));
    };
    let a_end = g.edge(*a_path.last().expect("marker block is nonempty")).dst;
    let b1 = shortest_connector(g, a_end, cycle_head)?;
    let b2 = shortest_connector(g, cycle_head, a_start)?;
    let s_v = a_start;
    let t_v = a_end;

    // marker = A b1 u^reps b2 A with A the avoiding block: the u-power makes
    // the marker unmistakable among return words that avoid a lower power.
    let mut outcome = None;
    'power: for power in 1..=MARKER_POWER_CAP {
        let forbidden = u_label.repeat(2 * power as usize);
        let mut counts: Vec<u64> = Vec::new();
        let mut limit: u32 = 0;
        for bump in 0..MARKER_BUMP_CAP {
            let reps_in_marker = 2 * power + 2 + bump;
            let mut v_path: Vec<EdgeId> = Vec::new();
            v_path.extend_from_slice(&a_path);
            v_path.extend_from_slice(&b1);
            for _ in 0..reps_in_marker {
                v_path.extend_from_slice(&u_cycle);
            }
            v_path.extend_from_slice(&b2);
            v_path.extend_from_slice(&a_path);
            let v_label = g.label_word(&v_path);
            let m = v_path.len();
            if !marker_isolated(v_label.symbols(), &[]) {
                continue;
            }
            let nn = loop {
                if let Some(nn) = choose_return_length(&counts, m, p, target) {
                    break Some(nn);
                }
                if limit >= RETURN_LENGTH_CAP {
                    break None;
                }
                limit = (limit.max(8) * 2).min(RETURN_LENGTH_CAP);
                counts = census::count_words_avoiding(
                    g,
                    t_v,
                    s_v,
                    &forbidden,
                    limit,
                    budgets.state_cap,
                )?;
            };
            let Some(nn) = nn else { continue 'power };
            let reps = return_representatives(g, t_v, s_v, &forbidden, nn, budgets)?;
            let mut by_len: BTreeMap<usize, u64> = BTreeMap::new();
            for (w, _) in &reps {
                *by_len.entry(w.len()).or_insert(0) += 1;
            }
            for (j, &c) in counts.iter().enumerate().take(nn + 1).skip(1) {
                if by_len.get(&j).copied().unwrap_or(0) != c {
                    return Err(Error::Internal(
                        "return-word enumeration disagrees with the automaton count".into(),
                    ));
                }
            }
            if !reps
                .iter()
                .all(|(w, _)| marker_isolated(v_label.symbols(), w.symbols()))
            {
                continue;
            }
            outcome = Some((power, reps_in_marker, v_path, v_label, nn, reps, by_len));
            break 'power;
        }
    }
    let Some((power, reps_in_marker, v_path, v_label, nn, reps, by_len)) = outcome else {
        return Err(Error::budget(
            "marker search exhausted its power and repetition caps",
            MARKER_POWER_CAP as u64,
        ));
    };
    let m = v_path.len();

    let mut total_edges = m as u64;
    for (w, _) in &reps {
        total_edges += w.len() as u64;
    }
    if total_edges > BOUQUET_EDGE_CAP {
        return Err(Error::budget("marker subshift size", BOUQUET_EDGE_CAP));
    }
    let bouquet = build_bouquet(g, &v_path, &reps)?;

    let mut validation = ValidationReport::default();
    let mut provenance = Provenance::new("marker-restriction");
    provenance.set("eps", format!("{eps}"));
    provenance.set("cycle-label", u_label.render(g.alphabet()));
    provenance.set("forbidden-power", (2 * power).to_string());
    provenance.set("marker-repetitions", reps_in_marker.to_string());
    provenance.set("marker-path-length", m.to_string());
    provenance.set("return-length", nn.to_string());
    provenance.set("return-words", reps.len().to_string());

    validation.require(
        "subshift-irreducible",
        bouquet.is_irreducible(),
        format!(
            "{} vertices, {} edges",
            bouquet.vertex_count(),
            bouquet.edge_count()
        ),
    )?;
    validation.require(
        "marker-self-overlap-free",
        marker_isolated(v_label.symbols(), &[]),
        "the marker meets itself only at full offset",
    )?;
    validation.require(
        "marker-blocks-isolated",
        reps.iter()
            .all(|(w, _)| marker_isolated(v_label.symbols(), w.symbols())),
        format!("{} return words scanned", reps.len()),
    )?;
    validation.note(
        "return-count-cross-check",
        format!("return words of lengths 1..={nn} agree with the automaton path counts"),
    );
    let labeled = image_presentation(&bouquet, g)?;
    validation.require(
        "image-within-target",
        present::graph_language_contains(y.graph(), &labeled)?,
        "every restricted label sequence is allowed in the image shift",
    )?;
    if labeled.edge_count() <= DIRECT_INJECTIVITY_EDGE_CAP {
        validation.require(
            "restriction-injective-direct",
            verify::injective_on(&labeled)?,
            "no two distinct walks share a label sequence",
        )?;
    } else {
        validation.note(
            "restriction-injective-structural",
            format!(
                "{} edges exceed the direct-check cap; marker occurrences pin walk \
                 boundaries and each return word keeps a single representative path, \
                 so label sequences decode to unique walks",
                labeled.edge_count()
            ),
        );
    }
    let petal_counts: Vec<(usize, u64)> = by_len.iter().map(|(&j, &c)| (j, c)).collect();
    let h_w = bouquet_entropy(m, &petal_counts, budgets.tol)?;
    provenance.set(
        "subshift-entropy",
        format!("[{:.9}, {:.9}]", h_w.log_lo, h_w.log_hi),
    );
    validation.require(
        "entropy-within-eps",
        h_w.log_lo >= h_y.log_hi - eps,
        format!(
            "subshift entropy at least {:.9}, image entropy at most {:.9}, eps {eps}",
            h_w.log_lo, h_y.log_hi
        ),
    )?;
    validation.require(
        "graph-period-preserved",
        bouquet.graph_period()? == p as u64,
        format!("period {p}"),
    )?;
    let sub = ShiftHandle::from_graph(bouquet)?;
    Ok(ForgeResult {
        cover: None,
        sub_sft: Some(sub),
        intermediate: None,
        provenance,
        validation,
    })
}

// ---------------------------------------------------------------------------
// orbit grafts
// ---------------------------------------------------------------------------

/// True when some bi-infinite walk of `g` reads the periodic stream of `w`
/// with the stream aligned to position 0 somewhere, equivalently when the
/// product of `g` with the cyclic phase automaton of `w` has a cycle.
fn reads_aligned_cycle(g: &LabeledGraph, w: &Word) -> bool {
    let n = w.len();
    if n == 0 {
        return false;
    }
    let nv = g.vertex_count();
    let total = nv * n;
    let mut preds: Vec<Vec<u32>> = vec![Vec::new(); total];
    let mut out_deg = vec![0u32; total];
    for i in 0..n {
        let j = (i + 1) % n;
        for e in g.edges() {
            if e.label == w.symbols()[i] {
                let from = i * nv + e.src as usize;
                let to = j * nv + e.dst as usize;
                out_deg[from] += 1;
                preds[to].push(from as u32);
            }
        }
    }
    // Peel vertices that cannot continue forward; a cycle survives iff
    // anything remains.
    let mut queue: VecDeque<u32> = (0..total as u32)
        .filter(|&x| out_deg[x as usize] == 0)
        .collect();
    let mut dead = vec![false; total];
    let mut alive = total;
    while let Some(x) = queue.pop_front() {
        if dead[x as usize] {
            continue;
        }
        dead[x as usize] = true;
        alive -= 1;
        for &p in &preds[x as usize] {
            if !dead[p as usize] {
                out_deg[p as usize] -= 1;
                if out_deg[p as usize] == 0 {
                    queue.push_back(p);
                }
            }
        }
    }
    alive > 0
}

/// True when `path` is a nonempty closed path of `g`.
fn is_closed_path(g: &LabeledGraph, path: &[EdgeId]) -> bool {
    if path.is_empty() {
        return false;
    }
    g.is_path(path) && g.edge(path[0]).src == g.edge(*path.last().expect("nonempty path")).dst
}

/// Least exponent `r` with `label^r` outside the language of `image`.
fn detector_exponent(image: &LabeledGraph, label: &Word) -> Result<u32> {
    for r in 1..=DETECTOR_POWER_CAP {
        if !verify::word_in_language(image, &label.repeat(r as usize)) {
            return Ok(r);
        }
    }
    Err(Error::budget(
        "detector exponent for the orbit label",
        DETECTOR_POWER_CAP as u64,
    ))
}

/// Shortest path `from -> to` whose label differs somewhere from the
/// periodic stream of `label` laid alongside it. With `anchor_end` the
/// stream is phased so that a fresh repetition of `label` starts right
/// after the path (entry connectors); otherwise a repetition ends right
/// before it (exit connectors). The mismatch stops runs of the orbit label
/// from bleeding across the connector.
fn mismatching_connector(
    g: &LabeledGraph,
    from: VertexId,
    to: VertexId,
    label: &Word,
    anchor_end: bool,
    budgets: &Budgets,
) -> Result<Vec<EdgeId>> {
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        g: &LabeledGraph,
        at: VertexId,
        to: VertexId,
        stream: &[Symbol],
        offset: usize,
        len: usize,
        mismatched: bool,
        dist: &[Vec<bool>],
        path: &mut Vec<EdgeId>,
        nodes: &mut u64,
        cap: u64,
    ) -> Result<bool> {
        *nodes += 1;
        if *nodes > cap {
            return Err(Error::budget("connector search for the orbit gadget", cap));
        }
        if path.len() == len {
            return Ok(mismatched);
        }
        let forced = stream[(offset + path.len()) % stream.len()];
        for &e in g.out_edges(at) {
            let edge = g.edge(e);
            if !dist[len - path.len() - 1][edge.dst as usize] {
                continue;
            }
            path.push(e);
            let mm = mismatched || edge.label != forced;
            if dfs(g, edge.dst, to, stream, offset, len, mm, dist, path, nodes, cap)? {
                return Ok(true);
            }
            path.pop();
        }
        Ok(false)
    }

    let ln = label.len();
    let nv = g.vertex_count();
    let mut dist = vec![vec![false; nv]; CONNECTOR_LENGTH_CAP + 1];
    dist[0][to as usize] = true;
    for k in 1..=CONNECTOR_LENGTH_CAP {
        for v in 0..nv {
            dist[k][v] = g
                .out_edges(v as VertexId)
                .iter()
                .any(|&e| dist[k - 1][g.edge(e).dst as usize]);
        }
    }
    let mut nodes = 0u64;
    for len in 1..=CONNECTOR_LENGTH_CAP {
        if !dist[len][from as usize] {
            continue;
        }
        let offset = if anchor_end { (ln - len % ln) % ln } else { 0 };
        let mut path = Vec::with_capacity(len);
        if dfs(
            g,
            from,
            to,
            label.symbols(),
            offset,
            len,
            false,
            &dist,
            &mut path,
            &mut nodes,
            budgets.word_budget,
        )? {
            return Ok(path);
        }
    }
    Err(Error::budget(
        "connector search for the orbit gadget",
        CONNECTOR_LENGTH_CAP as u64,
    ))
}

/// One periodic orbit scheduled for grafting: a closed cover-graph path
/// whose label is primitive, with connectors from and to the junction and
/// the saturation depth of its repetition grid.
struct OrbitGadget {
    rho: Vec<EdgeId>,
    label: Word,
    entry: Vec<EdgeId>,
    exit: Vec<EdgeId>,
    saturation: u32,
    detector: u32,
}

/// Prepares the gadget for grafting the orbit of `rho` onto a subshift
/// whose current image is presented by `image`, entering and leaving at the
/// cover vertex `junction_g`.
fn build_orbit_gadget(
    g: &LabeledGraph,
    image: &LabeledGraph,
    junction_g: VertexId,
    rho: &[EdgeId],
    margin: u32,
    budgets: &Budgets,
) -> Result<OrbitGadget> {
    let label = g.label_word(rho);
    if !label.is_primitive() {
        return Err(Error::Precondition(format!(
            "orbit label {} is a proper power, so the labeled point has a shorter period \
             than the walk",
            label.render(g.alphabet())
        )));
    }
    if reads_aligned_cycle(image, &label) {
        return Err(Error::Precondition(format!(
            "the periodic point of {} is already in the image of the subshift",
            label.render(g.alphabet())
        )));
    }
    let detector = detector_exponent(image, &label)?;
    let head = g.edge(rho[0]).src;
    let entry = mismatching_connector(g, junction_g, head, &label, true, budgets)?;
    let exit = mismatching_connector(g, head, junction_g, &label, false, budgets)?;
    let saturation = detector + (entry.len() + exit.len()) as u32 + margin;
    Ok(OrbitGadget {
        rho: rho.to_vec(),
        label,
        entry,
        exit,
        saturation,
        detector,
    })
}

/// Builds the enlarged edge-presentation graph: `layers + 1` copies of the
/// subshift graph where every step climbs toward the saturated top copy,
/// plus one repetition grid per gadget. Layer 0 can only be entered through
/// gadget exits, so consecutive gadget excursions are at least `layers`
/// steps apart; a gadget excursion must run its grid to saturation before
/// the exit opens, so it reads at least the detector power of the orbit
/// label.
fn attach_orbit_gadgets(
    w_graph: &LabeledGraph,
    junction: VertexId,
    gadgets: &[OrbitGadget],
    layers: u32,
) -> Result<LabeledGraph> {
    let nv = w_graph.vertex_count() as u32;
    let mut asm = GraphAssembly::empty();
    for c in 0..=layers {
        for v in 0..nv {
            asm.add_vertex(format!("L{c}x{}", w_graph.vertex_name(v)));
        }
    }
    let copy = |v: VertexId, c: u32| -> VertexId { c * nv + v };
    for c in 0..=layers {
        let up = (c + 1).min(layers);
        for e in w_graph.edges() {
            asm.edge(copy(e.src, c), copy(e.dst, up), e.label);
        }
    }
    for (t, gd) in gadgets.iter().enumerate() {
        let cols = gd.rho.len() as u32;
        let rows = gd.saturation;
        let mut base = 0;
        for r in 0..=rows {
            for j in 0..cols {
                let vid = asm.add_vertex(format!("^G{t}c{j}r{r}"));
                if r == 0 && j == 0 {
                    base = vid;
                }
            }
        }
        let grid = |j: u32, r: u32| -> VertexId { base + r * cols + j };
        for r in 0..=rows {
            for j in 0..cols {
                let (tj, tr) = if j + 1 == cols {
                    (0, (r + 1).min(rows))
                } else {
                    (j + 1, r)
                };
                asm.edge(grid(j, r), grid(tj, tr), gd.rho[j as usize] as Symbol);
            }
        }
        let entry_ids: Vec<Symbol> = gd.entry.iter().map(|&e| e as Symbol).collect();
        asm.chain(&format!("G{t}i"), copy(junction, layers), grid(0, 0), &entry_ids);
        let exit_ids: Vec<Symbol> = gd.exit.iter().map(|&e| e as Symbol).collect();
        asm.chain(&format!("G{t}j"), grid(0, rows), copy(junction, 0), &exit_ids);
    }
    asm.build(w_graph.alphabet().clone())
}

/// Enlarges a subshift `sub` of the domain edge shift of `pi` so that its
/// image additionally presents the periodic orbit spelled by `orbit` (a
/// primitive word of cover edge symbols forming a closed path), keeping the
/// covering map injective on the enlarged subshift.
pub fn enlarge_with_orbit(
    pi: &CoverSpec,
    sub: &ShiftHandle,
    orbit: &PrimitiveWord,
) -> Result<ForgeResult> {
    enlarge_with_orbit_with(pi, sub, orbit, &Budgets::default())
}

/// [`enlarge_with_orbit`] under explicit budgets.
pub fn enlarge_with_orbit_with(
    pi: &CoverSpec,
    sub: &ShiftHandle,
    orbit: &PrimitiveWord,
    budgets: &Budgets,
) -> Result<ForgeResult> {
    let g = pi.cover_graph();
    if sub.is_empty() {
        return Err(Error::EmptyShift("orbit graft".into()));
    }
    let w_graph = sub.graph();
    let positions = check_edge_presentation(w_graph, g)?;
    if !w_graph.is_irreducible() {
        return Err(Error::NotIrreducible("orbit graft".into()));
    }
    let mut rho: Vec<EdgeId> = Vec::with_capacity(orbit.len());
    for &s in orbit.word().symbols() {
        if (s as usize) >= g.edge_count() {
            return Err(Error::Precondition(format!(
                "orbit symbol {s} does not name an edge of the cover graph"
            )));
        }
        rho.push(s);
    }
    if !is_closed_path(g, &rho) {
        return Err(Error::Precondition(
            "orbit word does not spell a closed path in the cover graph".into(),
        ));
    }
    let label = g.label_word(&rho);
    if !label.is_primitive() {
        return Err(Error::Precondition(format!(
            "orbit label {} is a proper power, so the labeled point has a shorter period \
             than the walk",
            label.render(g.alphabet())
        )));
    }
    let image = image_presentation(w_graph, g)?;
    if reads_aligned_cycle(&image, &label) {
        return Err(Error::Precondition(format!(
            "the periodic point of {} is already in the image of the subshift",
            label.render(g.alphabet())
        )));
    }
    if w_graph.edge_count() > DIRECT_INJECTIVITY_EDGE_CAP {
        return Err(Error::budget(
            "verifying the injectivity hypothesis on the subshift",
            DIRECT_INJECTIVITY_EDGE_CAP as u64,
        ));
    }
    if !verify::injective_on(&image)? {
        return Err(Error::Precondition(
            "the covering map is not injective on the given subshift".into(),
        ));
    }

    let junction: VertexId = 0;
    let junction_g = positions[junction as usize];
    let gadget = build_orbit_gadget(g, &image, junction_g, &rho, 0, budgets)?;
    let theta =
        4 * (gadget.entry.len() + gadget.exit.len() + gadget.detector as usize * rho.len()) + 1;
    let t_graph = attach_orbit_gadgets(w_graph, junction, std::slice::from_ref(&gadget), theta as u32)?;
    let t_handle = ShiftHandle::from_graph(t_graph)?;

    let mut validation = ValidationReport::default();
    let mut provenance = Provenance::new("orbit-graft");
    provenance.set("orbit-label", gadget.label.render(g.alphabet()));
    provenance.set("orbit-length", rho.len().to_string());
    provenance.set("detector-power", gadget.detector.to_string());
    provenance.set("entry-length", gadget.entry.len().to_string());
    provenance.set("exit-length", gadget.exit.len().to_string());
    provenance.set("gadget-saturation", gadget.saturation.to_string());
    provenance.set("layers", theta.to_string());

    let tg = t_handle.graph();
    validation.require(
        "enlarged-irreducible",
        tg.is_irreducible(),
        format!("{} vertices, {} edges", tg.vertex_count(), tg.edge_count()),
    )?;
    let t_image = image_presentation(tg, g)?;
    validation.require(
        "image-gains-orbit",
        reads_aligned_cycle(&t_image, &gadget.label),
        format!(
            "the periodic point of {} is now presented",
            gadget.label.render(g.alphabet())
        ),
    )?;
    validation.note(
        "detector-power",
        format!(
            "power {} of the orbit label is outside the base image language, so \
             saturated repetition blocks are recognizable",
            gadget.detector
        ),
    );
    if t_image.edge_count() <= DIRECT_INJECTIVITY_EDGE_CAP {
        validation.require(
            "enlarged-injective-direct",
            verify::injective_on(&t_image)?,
            "no two distinct walks share a label sequence",
        )?;
    } else {
        validation.note(
            "enlarged-injective-structural",
            format!(
                "{} edges exceed the direct-check cap; the detector power isolates \
                 gadget traversals and mismatching connectors pin their boundaries, \
                 so label sequences decode to unique walks",
                t_image.edge_count()
            ),
        );
    }
    let p_w = w_graph.graph_period()?;
    let io_len = (gadget.entry.len() + gadget.exit.len()) as u64;
    if rho.len() as u64 % p_w == 0 && io_len % p_w == 0 {
        validation.require(
            "graph-period-preserved",
            tg.graph_period()? == p_w,
            format!("period {p_w}"),
        )?;
    } else {
        validation.note("graph-period", format!("period is now {}", tg.graph_period()?));
    }
    Ok(ForgeResult {
        cover: None,
        sub_sft: Some(t_handle),
        intermediate: None,
        provenance,
        validation,
    })
}

/// One aligned periodic orbit of the image: a rooted closed cover walk
/// whose label is primitive, so walk and labeled point share a least
/// period.
struct OrbitTarget {
    label: Word,
    walk: Vec<EdgeId>,
}

/// One representative rooted closed walk per aligned orbit of length up to
/// `max_len`, deduplicated by the rotation class of the label; lengths
/// ascend and the lexicographically first representative is kept.
fn aligned_orbit_targets(
    g: &LabeledGraph,
    max_len: usize,
    budgets: &Budgets,
) -> Result<Vec<OrbitTarget>> {
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        g: &LabeledGraph,
        root: VertexId,
        at: VertexId,
        remaining: usize,
        path: &mut Vec<EdgeId>,
        seen: &mut BTreeSet<Vec<Symbol>>,
        out: &mut Vec<OrbitTarget>,
        nodes: &mut u64,
        cap: u64,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > cap {
            return Err(Error::budget("enumerating aligned orbits", cap));
        }
        if remaining == 0 {
            if at == root {
                let label = g.label_word(path);
                if label.is_primitive() && seen.insert(label.least_rotation().0) {
                    out.push(OrbitTarget {
                        label,
                        walk: path.clone(),
                    });
                }
            }
            return Ok(());
        }
        for &e in g.out_edges(at) {
            path.push(e);
            dfs(g, root, g.edge(e).dst, remaining - 1, path, seen, out, nodes, cap)?;
            path.pop();
        }
        Ok(())
    }

    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let mut nodes = 0u64;
    for len in 1..=max_len {
        for root in g.vertices() {
            let mut path = Vec::with_capacity(len);
            dfs(
                g,
                root,
                root,
                len,
                &mut path,
                &mut seen,
                &mut out,
                &mut nodes,
                budgets.word_budget,
            )?;
        }
    }
    Ok(out)
}

/// Compares the least-period census of the subshift presented by `tg`
/// against the target counts (index k-1 holds the count for period k).
fn check_periodic_match(
    tg: &LabeledGraph,
    r_counts: &[u64],
    budgets: &Budgets,
) -> Result<(bool, String)> {
    let mut ok = true;
    let mut details = Vec::new();
    for k in 1..=r_counts.len() {
        let q = census::closed_walk_least_period_count(tg, k as u32, budgets.word_budget)?;
        let r = r_counts[k - 1];
        if q != r {
            ok = false;
        }
        details.push(format!("period {k}: subshift {q} vs cover target {r}"));
    }
    Ok((ok, details.join("; ")))
}

/// Extracts an injective subshift within `eps` of the image entropy and
/// then grafts every aligned periodic orbit of length up to
/// `horizon * period` whose point the subshift does not yet present, so
/// the enlarged subshift carries exactly the same short periodic counts as
/// the receptive census of the cover.
pub fn grow_periodic_support(pi: &CoverSpec, eps: f64, horizon: u32) -> Result<ForgeResult> {
    grow_periodic_support_with(pi, eps, horizon, &Budgets::default())
}

/// [`grow_periodic_support`] under explicit budgets.
pub fn grow_periodic_support_with(
    pi: &CoverSpec,
    eps: f64,
    horizon: u32,
    budgets: &Budgets,
) -> Result<ForgeResult> {
    let mut base = extract_injective_sub_with(pi, eps, budgets)?;
    base.provenance.set("horizon", horizon.to_string());
    if horizon == 0 {
        return Ok(base);
    }
    let g = pi.cover_graph();
    let p = g.graph_period()? as usize;
    let max_len = horizon as usize * p;
    let r_counts = census::cover_census(pi, max_len as u32, budgets)?;
    let w0 = base.sub_sft.clone().expect("extraction always returns a subshift");
    let mut validation = base.validation;
    let mut provenance = base.provenance;
    let w_graph = w0.graph();
    let image0 = image_presentation(w_graph, g)?;

    let targets = aligned_orbit_targets(g, max_len, budgets)?;
    let mut aligned_points = vec![0u64; max_len + 1];
    for t in &targets {
        aligned_points[t.label.len()] += t.label.len() as u64;
    }
    let census_ok = (1..=max_len).all(|k| aligned_points[k] == r_counts[k - 1]);
    validation.require(
        "aligned-orbit-census-match",
        census_ok,
        format!(
            "orbit sweep counts {:?} vs receptive census {:?}",
            &aligned_points[1..],
            r_counts
        ),
    )?;

    let pending: Vec<&OrbitTarget> = targets
        .iter()
        .filter(|t| !reads_aligned_cycle(&image0, &t.label))
        .collect();
    provenance.set("grafted-orbits", pending.len().to_string());
    provenance.set("skipped-orbits", (targets.len() - pending.len()).to_string());

    if pending.is_empty() {
        let (ok, detail) = check_periodic_match(w_graph, &r_counts, budgets)?;
        validation.require("periodic-counts-match", ok, detail)?;
        return Ok(ForgeResult {
            cover: None,
            sub_sft: Some(w0.clone()),
            intermediate: None,
            provenance,
            validation,
        });
    }

    let construction_params = provenance.parameters;
    provenance = Provenance::new("periodic-support-growth");
    provenance.parameters = construction_params;
    provenance.set(
        "orbit-labels",
        pending
            .iter()
            .map(|t| t.label.render(g.alphabet()))
            .collect::<Vec<_>>()
            .join(" "),
    );

    let junction: VertexId = 0;
    let junction_g = check_edge_presentation(w_graph, g)?[junction as usize];
    let widest = pending.iter().map(|t| t.label.len()).max().unwrap_or(1);
    let mut gadgets: Vec<OrbitGadget> = Vec::new();
    for t in &pending {
        let margin = ((2 * widest + t.label.len()) / t.label.len()) as u32 + 1;
        gadgets.push(build_orbit_gadget(
            g, &image0, junction_g, &t.walk, margin, budgets,
        )?);
    }

    let mut t_final: Option<(ShiftHandle, String, usize)> = None;
    let mut attempts = 0u32;
    let mut last_detail = String::new();
    for _attempt in 0..=GROW_REBUILD_CAP {
        attempts += 1;
        let theta = gadgets
            .iter()
            .map(|gd| {
                4 * (gd.entry.len() + gd.exit.len() + gd.detector as usize * gd.rho.len()) + 1
            })
            .max()
            .unwrap_or(1)
            .max(max_len + 1);
        let t_graph = attach_orbit_gadgets(w_graph, junction, &gadgets, theta as u32)?;
        let handle = ShiftHandle::from_graph(t_graph)?;
        let (ok, detail) = check_periodic_match(handle.graph(), &r_counts, budgets)?;
        last_detail = detail;
        if ok {
            t_final = Some((handle, last_detail.clone(), theta));
            break;
        }
        // Deeper saturation pushes stray periodic walks past the horizon.
        for gd in &mut gadgets {
            gd.saturation += widest as u32 + 1;
        }
    }
    let Some((t_handle, match_detail, theta)) = t_final else {
        validation.require("periodic-counts-match", false, last_detail)?;
        unreachable!("a failed required check always errors");
    };
    validation.require("periodic-counts-match", true, match_detail)?;
    provenance.set("layers", theta.to_string());
    provenance.set("rebuild-attempts", attempts.to_string());
    provenance.set(
        "detector-powers",
        gadgets
            .iter()
            .map(|gd| gd.detector.to_string())
            .collect::<Vec<_>>()
            .join(" "),
    );
    provenance.set(
        "gadget-saturations",
        gadgets
            .iter()
            .map(|gd| gd.saturation.to_string())
            .collect::<Vec<_>>()
            .join(" "),
    );

    let tg = t_handle.graph();
    validation.require(
        "grown-irreducible",
        tg.is_irreducible(),
        format!("{} vertices, {} edges", tg.vertex_count(), tg.edge_count()),
    )?;
    let t_image = image_presentation(tg, g)?;
    validation.require(
        "image-gains-orbits",
        pending
            .iter()
            .all(|t| reads_aligned_cycle(&t_image, &t.label)),
        format!("{} orbits grafted", pending.len()),
    )?;
    if t_image.edge_count() <= DIRECT_INJECTIVITY_EDGE_CAP {
        validation.require(
            "grown-injective-direct",
            verify::injective_on(&t_image)?,
            "no two distinct walks share a label sequence",
        )?;
    } else {
        validation.note(
            "grown-injective-structural",
            format!(
                "{} edges exceed the direct-check cap; detector powers isolate gadget \
                 traversals, mismatching connectors pin their boundaries, and the base \
                 restriction is injective, so label sequences decode to unique walks",
                t_image.edge_count()
            ),
        );
    }
    validation.require(
        "graph-period-preserved",
        tg.graph_period()? == p as u64,
        format!("period {p}"),
    )?;
    validation.note(
        "entropy-floor",
        "the saturated top layer contains a full copy of the extracted subshift, so \
         its entropy floor carries over",
    );
    Ok(ForgeResult {
        cover: None,
        sub_sft: Some(t_handle),
        intermediate: None,
        provenance,
        validation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two-vertex presentation of the even shift; edge 0 is the loop
    /// labeled 1, edges 1 and 2 the round trip labeled 0.
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

    fn even_cover() -> CoverSpec {
        let g = even_graph();
        let y = ShiftHandle::from_graph(g.clone()).unwrap();
        CoverSpec::new(g, y).unwrap()
    }

    fn pw(alphabet: &Alphabet, text: &str) -> PrimitiveWord {
        PrimitiveWord::new(Word::parse(text, alphabet).unwrap()).unwrap()
    }

    /// Seven-vertex right-resolving presentation whose fixed label point of
    /// `a` has only period-two lifts.
    fn context_graph() -> LabeledGraph {
        let alphabet = Alphabet::new(["u", "w", "a", "v"]).unwrap();
        let names: Vec<String> = (1..=7).map(|i| format!("a{i}")).collect();
        let (u, w, a, v) = (0, 1, 2, 3);
        LabeledGraph::new(
            alphabet,
            names,
            vec![
                (0, 1, w),
                (1, 2, a),
                (2, 3, a),
                (3, 2, a),
                (3, 4, v),
                (0, 5, a),
                (5, 0, u),
                (5, 6, a),
                (6, 5, a),
                (5, 4, v),
                (6, 4, v),
                (4, 0, u),
            ],
        )
        .unwrap()
    }

    fn two_cycle_handle() -> ShiftHandle {
        let alphabet = Alphabet::new(["a", "b"]).unwrap();
        let g = LabeledGraph::new(
            alphabet,
            vec!["m".into(), "n".into()],
            vec![(0, 1, 0), (1, 0, 1)],
        )
        .unwrap();
        ShiftHandle::from_graph(g).unwrap()
    }

    #[test]
    fn receptive_cover_grafts_even_fixed_point() {
        let pi = even_cover();
        let w = pw(pi.codomain().alphabet(), "1");
        let out = forge_receptive_cover(&pi, &w).unwrap();
        assert!(out.validation.all_passed(), "{:#?}", out.validation);
        assert_eq!(out.provenance.construction, "receptive-cycle-graft");
        let spec = out.cover.expect("receptive graft returns a cover");
        assert!(census::has_aligned_cycle(spec.cover_graph(), w.word()));
        assert!(spec.cover_graph().vertex_count() > pi.cover_graph().vertex_count());
    }

    #[test]
    fn receptive_cover_creates_aligned_lift_in_context_graph() {
        let y = ShiftHandle::from_graph(context_graph()).unwrap();
        let w = pw(y.alphabet(), "a");
        // Before the graft every lift of the fixed point has least period 2.
        let pre = verify::point_preimages(y.graph(), &w).unwrap();
        assert!(!pre.preimage_periods().is_empty());
        assert!(pre.preimage_periods().iter().all(|&p| p == 2));
        let fischer = y.fischer().unwrap().graph().clone();
        let pi = CoverSpec::new(fischer, y.clone()).unwrap();
        let out = forge_receptive_cover(&pi, &w).unwrap();
        assert!(out.validation.all_passed(), "{:#?}", out.validation);
        let spec = out.cover.unwrap();
        assert!(census::has_aligned_cycle(spec.cover_graph(), w.word()));
    }

    #[test]
    fn receptive_cover_rejects_non_receptive_point() {
        let pi = even_cover();
        let w = pw(pi.codomain().alphabet(), "0");
        match forge_receptive_cover(&pi, &w) {
            Err(Error::NotReceptive(_)) => {}
            other => panic!("expected a receptivity error, got {other:?}"),
        }
    }

    #[test]
    fn ai_cover_even_fixed_point() {
        let y = even_handle();
        let xi = pw(y.alphabet(), "1");
        let out = forge_ai_cover(&y, &xi).unwrap();
        assert!(out.validation.all_passed(), "{:#?}", out.validation);
        assert_eq!(out.provenance.construction, "alternation-cover");
        let lift = out.intermediate.expect("lift shift over the extended alphabet");
        assert_eq!(lift.alphabet().len(), 3);
        let cover = out.cover.expect("alternation cover map");
        assert!(present::shifts_equal(cover.codomain(), &y).unwrap());
    }

    #[test]
    fn ai_cover_rejects_non_receptive_point() {
        let y = even_handle();
        let xi = pw(y.alphabet(), "0");
        match forge_ai_cover(&y, &xi) {
            Err(Error::NotReceptive(_)) => {}
            other => panic!("expected a receptivity error, got {other:?}"),
        }
    }

    #[test]
    fn ai_cover_rejects_zero_entropy() {
        let y = two_cycle_handle();
        let xi = pw(y.alphabet(), "ab");
        match forge_ai_cover(&y, &xi) {
            Err(Error::ZeroEntropy(_)) => {}
            other => panic!("expected a zero-entropy error, got {other:?}"),
        }
    }

    #[test]
    fn ai_sft_cover_even_has_degree_one() {
        let y = even_handle();
        let xi = pw(y.alphabet(), "1");
        let spec = ai_sft_cover(&y, &xi).unwrap();
        assert_eq!(verify::degree(&spec).unwrap(), 1);
        assert_eq!(spec.cover_graph().alphabet().len(), 2);
        let pre = verify::point_preimages(spec.cover_graph(), &xi).unwrap();
        assert!(pre.preimage_periods().contains(&1));
    }

    #[test]
    fn ai_cover_context_graph_fixed_point() {
        let y = ShiftHandle::from_graph(context_graph()).unwrap();
        let xi = pw(y.alphabet(), "a");
        let out = forge_ai_cover(&y, &xi).unwrap();
        assert!(out.validation.all_passed(), "{:#?}", out.validation);
    }

    #[test]
    fn extraction_carves_marker_subshift() {
        let pi = even_cover();
        let out = extract_injective_sub(&pi, 0.3).unwrap();
        assert!(out.validation.all_passed(), "{:#?}", out.validation);
        assert_eq!(out.provenance.construction, "marker-restriction");
        assert!(out.provenance.parameters.contains_key("return-length"));
        let sub = out.sub_sft.expect("extraction returns a subshift");
        assert!(!sub.is_empty());
    }

    #[test]
    fn extraction_rejects_out_of_range_eps() {
        let pi = even_cover();
        assert!(matches!(
            extract_injective_sub(&pi, 0.0),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            extract_injective_sub(&pi, 1.0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn extraction_keeps_injective_domain_whole() {
        let alphabet = Alphabet::new(["a", "b", "c"]).unwrap();
        let g = LabeledGraph::new(
            alphabet,
            vec!["x".into(), "y".into()],
            vec![(0, 1, 0), (1, 0, 1), (0, 0, 2)],
        )
        .unwrap();
        let y = ShiftHandle::from_graph(g.clone()).unwrap();
        let pi = CoverSpec::new(g, y).unwrap();
        let out = extract_injective_sub(&pi, 0.3).unwrap();
        assert!(out.validation.all_passed(), "{:#?}", out.validation);
        assert_eq!(out.provenance.construction, "whole-domain");
    }

    #[test]
    fn enlarge_rejects_imprimitive_orbit_label() {
        let pi = even_cover();
        let w = extract_injective_sub(&pi, 0.4).unwrap().sub_sft.unwrap();
        let orbit = PrimitiveWord::new(Word(vec![1, 2])).unwrap();
        match enlarge_with_orbit(&pi, &w, &orbit) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("proper power"), "{msg}"),
            other => panic!("expected a primitivity error, got {other:?}"),
        }
    }

    #[test]
    fn enlarge_grafts_fixed_point_orbit() {
        let pi = even_cover();
        let w = extract_injective_sub(&pi, 0.4).unwrap().sub_sft.unwrap();
        let orbit = PrimitiveWord::new(Word(vec![0])).unwrap();
        let out = enlarge_with_orbit(&pi, &w, &orbit).unwrap();
        assert!(out.validation.all_passed(), "{:#?}", out.validation);
        assert_eq!(out.provenance.construction, "orbit-graft");
        let enlarged = out.sub_sft.unwrap();
        match enlarge_with_orbit(&pi, &enlarged, &orbit) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("already"), "{msg}"),
            other => panic!("expected the already-presented error, got {other:?}"),
        }
    }

    #[test]
    fn grow_matches_receptive_census() {
        let pi = even_cover();
        let out = grow_periodic_support(&pi, 0.3, 3).unwrap();
        assert!(out.validation.all_passed(), "{:#?}", out.validation);
        assert_eq!(out.provenance.construction, "periodic-support-growth");
        assert_eq!(
            out.provenance.parameters.get("grafted-orbits").map(String::as_str),
            Some("2")
        );
        let grown = out.sub_sft.unwrap();
        let budget = Budgets::default().word_budget;
        let counts: Vec<u64> = (1..=3)
            .map(|k| {
                census::closed_walk_least_period_count(grown.graph(), k, budget).unwrap()
            })
            .collect();
        assert_eq!(counts, vec![1, 0, 3]);
    }

    #[test]
    fn grow_with_zero_horizon_is_extraction() {
        let pi = even_cover();
        let out = grow_periodic_support(&pi, 0.3, 0).unwrap();
        assert!(out.validation.all_passed(), "{:#?}", out.validation);
        assert_eq!(out.provenance.construction, "marker-restriction");
        assert_eq!(
            out.provenance.parameters.get("horizon").map(String::as_str),
            Some("0")
        );
    }

    #[test]
    fn grow_rejects_zero_entropy() {
        let y = two_cycle_handle();
        let pi = CoverSpec::new(y.graph().clone(), y.clone()).unwrap();
        match grow_periodic_support(&pi, 0.1, 1) {
            Err(Error::ZeroEntropy(_)) => {}
            other => panic!("expected a zero-entropy error, got {other:?}"),
        }
    }

    #[test]
    fn pattern_automaton_blocks_bracketed_powers() {
        let dfa = PatternDfa::build(&[0, 1], &[2], &[1, 0], 3, 10_000).unwrap();
        let run = |w: &[Symbol]| dfa.run(0, w);
        // u w^k v with k >= 1 is forbidden, wherever it starts.
        assert!(run(&[0, 1, 2, 1, 0]).is_none());
        assert!(run(&[0, 1, 2, 2, 1, 0]).is_none());
        assert!(run(&[0, 0, 1, 2, 1, 0]).is_none());
        // k = 0, missing pieces, or unfinished v survive.
        assert!(run(&[0, 1, 1, 0]).is_some());
        assert!(run(&[0, 1, 2]).is_some());
        assert!(run(&[0, 1, 2, 1]).is_some());
    }

    #[test]
    fn image_presentation_round_trips_even() {
        let g = even_graph();
        let edges = g.edge_shift_presentation().unwrap();
        let image = image_presentation(&edges, &g).unwrap();
        let left = ShiftHandle::from_graph(image).unwrap();
        let right = ShiftHandle::from_graph(g).unwrap();
        assert!(present::shifts_equal(&left, &right).unwrap());
    }

    #[test]
    fn aligned_cycle_detection_on_even() {
        let g = even_graph();
        let word = |t: &str| Word::parse(t, g.alphabet()).unwrap();
        assert!(reads_aligned_cycle(&g, &word("1")));
        assert!(reads_aligned_cycle(&g, &word("0")));
        assert!(!reads_aligned_cycle(&g, &word("01")));
    }

    #[test]
    fn occurrence_scan_sees_overlaps() {
        assert_eq!(occurrence_starts(&[0, 0], &[0, 0, 0, 1, 0, 0]), vec![0, 1, 4]);
        assert!(marker_isolated(&[0, 1, 1, 0], &[2]));
        assert!(!marker_isolated(&[0, 1, 0], &[1]));
    }
}
