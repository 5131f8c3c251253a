//! Decision procedures for embedding questions against irreducible sofic
//! targets: embeddings into irreducible SFTs, embeddings through a fixed
//! cover, and the three factorizability notions (through some irreducible
//! SFT, through a cover, through an almost invertible cover).
//!
//! Every procedure returns a three-valued verdict. YES and NO verdicts carry
//! a [`DecisionReport`] whose certificate data can be replayed; UNKNOWN
//! records why the bounded search stopped. NO verdicts are only issued on
//! certified obstructions (an exact count violation, a periodic point whose
//! least period breaks the required rotation, a certified entropy excess, or
//! a certified equal-entropy situation in which the remaining route — a
//! conjugacy — is exactly refuted). Failure of a bounded witness search is
//! never reported as NO.

use std::fmt::Write as _;

use serde::Serialize;

use crate::budget::Budgets;
use crate::census;
use crate::entropy::{self, EntropyOrder};
use crate::error::{Error, Result};
use crate::forge;
use crate::format;
use crate::period::{self, PPeriodicityCertificate};
use crate::present;
use crate::shift::{CoverSpec, ShiftHandle, ShiftKind};
use crate::structure;
pub use crate::tail::TailCertificate;
use crate::tail::{self, TailOutcome, TailProblem, TailTargetKind};
use crate::verify;
use crate::word::{lyndon_words, PrimitiveWord};

/// Three-valued answer of a decision procedure.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict3<C> {
    Yes { certificate: C },
    No { certificate: C },
    Unknown { reason: String },
}

impl<C> Verdict3<C> {
    pub fn yes(certificate: C) -> Self {
        Verdict3::Yes { certificate }
    }

    pub fn no(certificate: C) -> Self {
        Verdict3::No { certificate }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        Verdict3::Unknown {
            reason: reason.into(),
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict3::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict3::No { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict3::Unknown { .. })
    }

    /// Conventional process exit code: YES 0, NO 1, UNKNOWN 2.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict3::Yes { .. } => 0,
            Verdict3::No { .. } => 1,
            Verdict3::Unknown { .. } => 2,
        }
    }
}

/// How a single checked condition came out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConditionStatus {
    Holds,
    Fails,
    Undetermined,
}

/// One named condition together with a human-readable explanation.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionReport {
    pub name: String,
    pub status: ConditionStatus,
    pub detail: String,
}

/// Certified obstruction attached to a NO verdict.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind")]
pub enum NoWitness {
    /// An exact periodic count on the domain exceeds the exact budget the
    /// target offers at the same length.
    CountViolation {
        m: u64,
        count: u64,
        bound: u64,
        compared_to: String,
    },
    /// The domain is not p-periodic for the required p.
    NotPPeriodic {
        p: u64,
        certificate: PPeriodicityCertificate,
    },
    /// The domain's entropy is certified strictly above the target's.
    EntropyExcess {
        left_log_lo: f64,
        right_log_hi: f64,
    },
    /// Entropies are certified equal, so only a conjugacy could remain, and
    /// the periodic counts at length m certify that no conjugacy exists.
    ConjugacyObstruction {
        m: u64,
        left: u64,
        right: u64,
        detail: String,
    },
    /// Entropies are certified equal, so the target would have to be
    /// conjugate to the domain as an SFT, but the target is strictly sofic.
    StrictlySofic { detail: String },
    /// Every irreducible component of the target was exactly refuted.
    AllComponentsRefuted { components: usize },
}

/// Outcome of one component inside a factorizable-embedding search.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentOutcome {
    pub component: usize,
    pub level: u32,
    pub verdict: String,
    pub reason: String,
}

/// Full record of a decision: the checked conditions, exact horizons, and —
/// depending on the verdict — an obstruction witness or the certificates
/// (tail bound, conjugacy note, section note) behind a YES.
#[derive(Debug, Clone, Serialize)]
pub struct DecisionReport {
    /// Stable name of the procedure that produced this report.
    pub procedure: String,
    /// Global period of the target presentation.
    pub p: u64,
    /// Periodic counts were compared exactly for every length `m <= checked_up_to`.
    pub checked_up_to: u64,
    pub conditions: Vec<ConditionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<NoWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail: Option<TailCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjugacy: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub component: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ComponentOutcome>,
    /// Materialized almost-invertible cover of the target, attached by the
    /// factorization-through-almost-invertible-cover procedure on YES.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ai_cover: Option<AiCoverCertificate>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// An almost invertible cover of the target, materialized as certificate
/// evidence: the composed presentation, the receptive periodic point that
/// seeded it, its verified degree, and the construction checks that passed.
#[derive(Debug, Clone, Serialize)]
pub struct AiCoverCertificate {
    /// Render of the seeding receptive periodic point's repeating word.
    pub point: String,
    pub vertices: usize,
    pub edges: usize,
    /// Degree of the cover; 1 means almost invertible.
    pub degree: u64,
    /// Names of the construction validations that were checked and passed.
    pub validations: Vec<String>,
    /// The cover presentation as a graph document (JSON text).
    pub presentation: String,
}

impl DecisionReport {
    fn new(procedure: &str, p: u64, checked_up_to: u64) -> Self {
        DecisionReport {
            procedure: procedure.into(),
            p,
            checked_up_to,
            conditions: Vec::new(),
            witness: None,
            tail: None,
            conjugacy: None,
            component: None,
            components: Vec::new(),
            ai_cover: None,
            notes: Vec::new(),
        }
    }

    fn condition(&mut self, name: &str, status: ConditionStatus, detail: impl Into<String>) {
        self.conditions.push(ConditionReport {
            name: name.into(),
            status,
            detail: detail.into(),
        });
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    fn into_no(mut self, witness: NoWitness) -> Verdict3<DecisionReport> {
        self.witness = Some(witness);
        Verdict3::no(self)
    }

    fn into_unknown(self, headline: &str) -> Verdict3<DecisionReport> {
        let mut reason = String::from(headline);
        let undetermined: Vec<&str> = self
            .conditions
            .iter()
            .filter(|c| c.status == ConditionStatus::Undetermined)
            .map(|c| c.name.as_str())
            .collect();
        if !undetermined.is_empty() {
            let _ = write!(reason, " (undetermined: {})", undetermined.join(", "));
        }
        Verdict3::unknown(reason)
    }
}

/// Swallows budget exhaustion, turning it into `None` so the caller can
/// degrade the affected condition to "undetermined" instead of aborting.
fn budget_opt<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Budget { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn require_nonempty_irreducible(handle: &ShiftHandle, role: &str) -> Result<()> {
    if handle.is_empty() {
        return Err(Error::EmptyShift(role.into()));
    }
    if !handle.is_irreducible_presentation() {
        return Err(Error::NotIrreducible(format!(
            "{role} must be presented by an irreducible graph"
        )));
    }
    Ok(())
}

fn require_irreducible_edge_shift(handle: &ShiftHandle, role: &str) -> Result<()> {
    require_nonempty_irreducible(handle, role)?;
    if handle.kind() != ShiftKind::SftEdgeShift {
        return Err(Error::Precondition(format!(
            "{role} must be an edge shift (injectively labeled presentation)"
        )));
    }
    Ok(())
}

/// Exact comparison horizon: all lengths `1..=p * n` are compared, covering
/// the first `n` multiples of the period and every length in between (where
/// the target side vanishes and any domain point is already a violation).
fn comparison_horizon(p: u64, n: u32) -> u32 {
    p.saturating_mul(n as u64).min(u32::MAX as u64) as u32
}

/// First index (as a length m >= 1) where `left[m-1] > right[m-1]`.
fn first_count_violation(left: &[u64], right: &[u64]) -> Option<(u64, u64, u64)> {
    left.iter()
        .zip(right.iter())
        .enumerate()
        .find(|(_, (l, r))| l > r)
        .map(|(i, (l, r))| ((i + 1) as u64, *l, *r))
}

/// First length where the two exact count sequences differ at all.
fn first_count_difference(left: &[u64], right: &[u64]) -> Option<(u64, u64, u64)> {
    left.iter()
        .zip(right.iter())
        .enumerate()
        .find(|(_, (l, r))| l != r)
        .map(|(i, (l, r))| ((i + 1) as u64, *l, *r))
}

fn describe_p_certificate(cert: &PPeriodicityCertificate) -> String {
    match cert {
        PPeriodicityCertificate::WindowColoring { k, .. } => {
            format!("clopen window coloring of radius {k} rotates under the shift")
        }
        PPeriodicityCertificate::PeriodObstruction { word, least_period } => format!(
            "the periodic point ({word})^inf has least period {least_period}, \
             which the required rotation forbids"
        ),
        PPeriodicityCertificate::SftExact { .. } => {
            "edge-shift walk defects decide the rotation exactly".into()
        }
    }
}

/// Searches for a bounded conjugacy witness between two shifts.
///
/// Returns a human-readable description when one is found. Two routes are
/// tried: exact equality of the presented shifts, and — when both handles
/// are edge shifts — isomorphism of the underlying digraphs of low-order
/// block recodings (an unlabeled digraph isomorphism identifies the edge
/// shifts up to renaming, and block recoding is a conjugacy).
fn conjugacy_witness(a: &ShiftHandle, b: &ShiftHandle) -> Result<Option<String>> {
    if a.is_empty() || b.is_empty() {
        return Ok((a.is_empty() && b.is_empty()).then(|| "both shifts are empty".to_string()));
    }
    if present::shifts_equal(a, b)? {
        return Ok(Some(
            "the two presentations define the same shift".to_string(),
        ));
    }
    if a.kind() == ShiftKind::SftEdgeShift && b.kind() == ShiftKind::SftEdgeShift {
        for ma in 1..=2u32 {
            for mb in 1..=2u32 {
                let ga = if ma == 1 {
                    a.graph().clone()
                } else {
                    a.graph().higher_block(ma)?.0
                };
                let gb = if mb == 1 {
                    b.graph().clone()
                } else {
                    b.graph().higher_block(mb)?.0
                };
                if present::unlabeled_digraphs_isomorphic(&ga, &gb) {
                    return Ok(Some(format!(
                        "edge shifts are conjugate: the {ma}-block and {mb}-block \
                         recodings have isomorphic underlying graphs"
                    )));
                }
            }
        }
    }
    Ok(None)
}

const SECTION_VERTEX_CAP: usize = 12;

/// Searches for a section of the cover: a sliding block code `rho` from the
/// image back into the cover SFT with `pi . rho = id`.
///
/// The search inverts injective restrictions: if the labeling is injective
/// on a vertex-induced subgraph that still presents the full image, the
/// restricted map is a bijective sliding block code and its inverse is a
/// section. The full graph is tried first, then every vertex subset up to
/// [`SECTION_VERTEX_CAP`] vertices.
fn section_witness(pi: &CoverSpec) -> Result<Option<String>> {
    let g = pi.cover_graph();
    if verify::injective_on(g)? {
        return Ok(Some(
            "the cover map is injective on the whole cover; its inverse is a section".into(),
        ));
    }
    let v = g.vertex_count();
    if v > SECTION_VERTEX_CAP {
        return Ok(None);
    }
    let y = pi.codomain();
    for mask in 1u32..(1u32 << v) {
        if mask.count_ones() as usize == v {
            continue;
        }
        let keep: Vec<u32> = (0..v as u32).filter(|i| mask & (1 << i) != 0).collect();
        let (sub, _) = g.restrict_to_vertices(&keep);
        let (sub, _) = sub.trim();
        if sub.vertex_count() == 0 || sub.edge_count() == 0 {
            continue;
        }
        if !verify::injective_on(&sub)? {
            continue;
        }
        let names: Vec<String> = sub.vertex_names().to_vec();
        let handle = ShiftHandle::from_graph(sub)?;
        if present::shifts_equal(&handle, y)? {
            return Ok(Some(format!(
                "the labeling is injective on the subgraph induced by {{{}}} and that \
                 subgraph still presents the image; inverting it gives a section",
                names.join(", ")
            )));
        }
    }
    Ok(None)
}

/// Shared skeleton for the count-and-period necessity checks.
///
/// Runs the p-periodicity test and the exact count comparison (every length
/// up to the horizon; off-multiples of p carry a zero budget on the target
/// side by periodicity, which the exact target counts realize naturally).
/// Returns `Err(report-with-witness)` on a certified obstruction, otherwise
/// the statuses of the two conditions.
struct NecessityOutcome {
    p_periodic: ConditionStatus,
    counts: ConditionStatus,
    domain_counts: Option<Vec<u64>>,
}

fn check_necessities(
    report: &mut DecisionReport,
    z: &ShiftHandle,
    p: u64,
    horizon: u32,
    target_counts: Option<&[u64]>,
    compared_to: &str,
    budgets: &Budgets,
) -> Result<std::result::Result<NecessityOutcome, NoWitness>> {
    // Rotation necessity first: a failed rotation is the sharper witness.
    let p_periodic = match period::is_p_periodic_with(z, p, budgets)? {
        Verdict3::No { certificate } => {
            report.condition(
                "p-periodicity",
                ConditionStatus::Fails,
                describe_p_certificate(&certificate),
            );
            return Ok(Err(NoWitness::NotPPeriodic { p, certificate }));
        }
        Verdict3::Yes { certificate } => {
            report.condition(
                "p-periodicity",
                ConditionStatus::Holds,
                describe_p_certificate(&certificate),
            );
            ConditionStatus::Holds
        }
        Verdict3::Unknown { reason } => {
            report.condition("p-periodicity", ConditionStatus::Undetermined, reason);
            ConditionStatus::Undetermined
        }
    };

    let domain_counts = budget_opt(census::q_counts(z.graph(), horizon, budgets))?;
    let counts = match (&domain_counts, target_counts) {
        (Some(qz), Some(t)) => match first_count_violation(qz, t) {
            Some((m, count, bound)) => {
                report.condition(
                    "count-comparison",
                    ConditionStatus::Fails,
                    format!("at length {m} the domain has {count} periodic points but {compared_to} allows {bound}"),
                );
                return Ok(Err(NoWitness::CountViolation {
                    m,
                    count,
                    bound,
                    compared_to: compared_to.into(),
                }));
            }
            None => {
                report.condition(
                    "count-comparison",
                    ConditionStatus::Holds,
                    format!(
                        "exact periodic counts stay within {compared_to} for all lengths up to {horizon}"
                    ),
                );
                ConditionStatus::Holds
            }
        },
        _ => {
            report.condition(
                "count-comparison",
                ConditionStatus::Undetermined,
                "exact census exhausted its budget",
            );
            ConditionStatus::Undetermined
        }
    };

    Ok(Ok(NecessityOutcome {
        p_periodic,
        counts,
        domain_counts,
    }))
}

/// Runs the infinite-tail certification once the finite horizon is clean.
fn settle_tail(
    mut report: DecisionReport,
    problem: &TailProblem<'_>,
    necessity: &NecessityOutcome,
    compared_to: &str,
    budgets: &Budgets,
) -> Result<Verdict3<DecisionReport>> {
    if necessity.counts != ConditionStatus::Holds {
        return Ok(report.into_unknown(
            "the entropy gap is certified but the exact count comparison did not finish",
        ));
    }
    match tail::certify_tail(problem, budgets)? {
        TailOutcome::Certified(cert) => {
            report.condition(
                "count-tail",
                ConditionStatus::Holds,
                "all remaining lengths are covered by a certified growth bound",
            );
            report.tail = Some(cert);
            Ok(Verdict3::yes(report))
        }
        TailOutcome::Violation { m, count, bound } => {
            report.condition(
                "count-tail",
                ConditionStatus::Fails,
                format!("at length {m} the domain has {count} periodic points but {compared_to} allows {bound}"),
            );
            Ok(report.into_no(NoWitness::CountViolation {
                m,
                count,
                bound,
                compared_to: compared_to.into(),
            }))
        }
        TailOutcome::Inconclusive(why) => {
            report.condition("count-tail", ConditionStatus::Undetermined, why);
            Ok(report.into_unknown(
                "finite conditions hold but the infinite count tail could not be certified",
            ))
        }
    }
}

fn entropy_excess_witness(z: &ShiftHandle, target: &ShiftHandle, tol: f64) -> Result<NoWitness> {
    let ez = entropy::entropy_with(z, tol)?;
    let et = entropy::entropy_with(target, tol)?;
    Ok(NoWitness::EntropyExcess {
        left_log_lo: ez.log_lo,
        right_log_hi: et.log_hi,
    })
}

/// Decides whether `z` embeds into the irreducible SFT presented by `w`.
///
/// `w` must be a nonempty irreducible edge shift. The embedding exists
/// exactly when `z` and `w` are conjugate, or all three of the following
/// hold, with p the period of the target graph: `h(z) < h(w)`, `z` is
/// p-periodic, and every exact periodic count of `z` is dominated by the
/// matching count of `w`.
pub fn decide_embed_irreducible_sft(
    z: &ShiftHandle,
    w: &ShiftHandle,
    n_max: u32,
) -> Result<Verdict3<DecisionReport>> {
    let budgets = Budgets {
        decide_n_max: n_max,
        ..Budgets::default()
    };
    decide_embed_irreducible_sft_with(z, w, &budgets)
}

pub fn decide_embed_irreducible_sft_with(
    z: &ShiftHandle,
    w: &ShiftHandle,
    budgets: &Budgets,
) -> Result<Verdict3<DecisionReport>> {
    require_irreducible_edge_shift(w, "the embedding target")?;
    let p = w.graph().graph_period()?;
    let horizon = comparison_horizon(p, budgets.decide_n_max);
    let mut report = DecisionReport::new("embed-into-irreducible-sft", p, horizon as u64);

    if z.is_empty() {
        report.condition(
            "empty-domain",
            ConditionStatus::Holds,
            "the empty shift embeds via the empty map",
        );
        return Ok(Verdict3::yes(report));
    }

    if let Some(witness) = conjugacy_witness(z, w)? {
        report.condition("conjugacy", ConditionStatus::Holds, witness.clone());
        report.conjugacy = Some(witness);
        return Ok(Verdict3::yes(report));
    }

    let compared_to = "the periodic points of the target edge shift";
    let target_counts = budget_opt(census::q_counts(w.graph(), horizon, budgets))?;
    let necessity =
        match check_necessities(&mut report, z, p, horizon, target_counts.as_deref(), compared_to, budgets)? {
            Ok(outcome) => outcome,
            Err(witness) => return Ok(report.into_no(witness)),
        };

    match entropy::compare_entropy(z, w)? {
        EntropyOrder::Less => {
            report.condition(
                "entropy-gap",
                ConditionStatus::Holds,
                "the domain's entropy is certified strictly below the target's",
            );
            if necessity.p_periodic != ConditionStatus::Holds {
                return Ok(report.into_unknown(
                    "the entropy gap is certified but the rotation test was inconclusive",
                ));
            }
            let problem = TailProblem {
                z,
                p,
                horizon: horizon as u64,
                target: TailTargetKind::SftPoints(w),
            };
            settle_tail(report, &problem, &necessity, compared_to, budgets)
        }
        EntropyOrder::Greater => {
            report.condition(
                "entropy-gap",
                ConditionStatus::Fails,
                "the domain's entropy is certified strictly above the target's",
            );
            let witness = entropy_excess_witness(z, w, budgets.tol)?;
            Ok(report.into_no(witness))
        }
        EntropyOrder::Equal => {
            report.condition(
                "entropy-gap",
                ConditionStatus::Fails,
                "the entropies are certified equal, so only a conjugacy could remain",
            );
            if let (Some(qz), Some(qw)) = (&necessity.domain_counts, &target_counts) {
                if let Some((m, left, right)) = first_count_difference(qz, qw) {
                    return Ok(report.into_no(NoWitness::ConjugacyObstruction {
                        m,
                        left,
                        right,
                        detail: "equal entropy forces the embedding to be onto, hence a \
                                 conjugacy, but the periodic counts differ"
                            .into(),
                    }));
                }
            }
            Ok(report.into_unknown(
                "equal entropy: an embedding would have to be a conjugacy, and the bounded \
                 search found neither a conjugacy nor a refutation",
            ))
        }
        EntropyOrder::Inconclusive { .. } => {
            report.condition(
                "entropy-gap",
                ConditionStatus::Undetermined,
                "the entropy enclosures overlap at the configured tolerance",
            );
            Ok(report.into_unknown("the entropy comparison was inconclusive"))
        }
    }
}

/// Decides whether `z` embeds into the image of the cover `pi` through `pi`
/// itself, i.e. whether some embedding of `z` lifts along the cover.
pub fn decide_embed_through_cover(
    z: &ShiftHandle,
    pi: &CoverSpec,
    n_max: u32,
) -> Result<Verdict3<DecisionReport>> {
    let budgets = Budgets {
        decide_n_max: n_max,
        ..Budgets::default()
    };
    decide_embed_through_cover_with(z, pi, &budgets)
}

pub fn decide_embed_through_cover_with(
    z: &ShiftHandle,
    pi: &CoverSpec,
    budgets: &Budgets,
) -> Result<Verdict3<DecisionReport>> {
    let g = pi.cover_graph();
    if !g.is_irreducible() {
        return Err(Error::NotIrreducible(
            "embedding through a cover requires an irreducible cover graph".into(),
        ));
    }
    let y = pi.codomain();
    let p = g.graph_period()?;
    let horizon = comparison_horizon(p, budgets.decide_n_max);
    let mut report = DecisionReport::new("embed-through-cover", p, horizon as u64);

    if z.is_empty() {
        report.condition(
            "empty-domain",
            ConditionStatus::Holds,
            "the empty shift embeds via the empty map",
        );
        return Ok(Verdict3::yes(report));
    }

    let compared_to = "the aligned periodic preimage counts of the cover";
    let target_counts = budget_opt(census::cover_census(pi, horizon, budgets))?;
    let necessity =
        match check_necessities(&mut report, z, p, horizon, target_counts.as_deref(), compared_to, budgets)? {
            Ok(outcome) => outcome,
            Err(witness) => return Ok(report.into_no(witness)),
        };

    match entropy::compare_entropy(z, y)? {
        EntropyOrder::Less => {
            report.condition(
                "entropy-gap",
                ConditionStatus::Holds,
                "the domain's entropy is certified strictly below the image's",
            );
            if necessity.p_periodic != ConditionStatus::Holds {
                return Ok(report.into_unknown(
                    "the entropy gap is certified but the rotation test was inconclusive",
                ));
            }
            let problem = TailProblem {
                z,
                p,
                horizon: horizon as u64,
                target: TailTargetKind::CoverAligned(pi),
            };
            settle_tail(report, &problem, &necessity, compared_to, budgets)
        }
        EntropyOrder::Greater => {
            report.condition(
                "entropy-gap",
                ConditionStatus::Fails,
                "the domain's entropy is certified strictly above the image's",
            );
            let witness = entropy_excess_witness(z, y, budgets.tol)?;
            Ok(report.into_no(witness))
        }
        EntropyOrder::Equal => {
            report.condition(
                "entropy-gap",
                ConditionStatus::Fails,
                "the entropies are certified equal, so the embedding would have to be onto",
            );
            // An onto embedding through the cover is a conjugacy z -> image
            // together with a section of the cover.
            if let Some(conj) = conjugacy_witness(z, y)? {
                if let Some(section) = section_witness(pi)? {
                    report.condition("conjugacy", ConditionStatus::Holds, conj.clone());
                    report.condition("section", ConditionStatus::Holds, section);
                    report.conjugacy = Some(conj);
                    return Ok(Verdict3::yes(report));
                }
                report.condition("conjugacy", ConditionStatus::Holds, conj.clone());
                report.condition(
                    "section",
                    ConditionStatus::Undetermined,
                    "no section of the cover was found within the bounded search",
                );
                report.conjugacy = Some(conj);
                return Ok(report.into_unknown(
                    "equal entropy: the domain is conjugate to the image but no section of \
                     the cover was found within bounds",
                ));
            }
            let image_counts = budget_opt(census::q_counts(y.graph(), horizon, budgets))?;
            if let (Some(qz), Some(qy)) = (&necessity.domain_counts, &image_counts) {
                if let Some((m, left, right)) = first_count_difference(qz, qy) {
                    return Ok(report.into_no(NoWitness::ConjugacyObstruction {
                        m,
                        left,
                        right,
                        detail: "equal entropy forces the embedding to be onto, hence a \
                                 conjugacy with the image, but the periodic counts differ"
                            .into(),
                    }));
                }
            }
            Ok(report.into_unknown(
                "equal entropy: an embedding through the cover would have to be onto, and \
                 the bounded search found neither a witness nor a refutation",
            ))
        }
        EntropyOrder::Inconclusive { .. } => {
            report.condition(
                "entropy-gap",
                ConditionStatus::Undetermined,
                "the entropy enclosures overlap at the configured tolerance",
            );
            Ok(report.into_unknown("the entropy comparison was inconclusive"))
        }
    }
}

/// Decides whether `z` admits an embedding into the irreducible sofic shift
/// `y` that factors through some surjective sliding block code out of an
/// irreducible SFT (a cover of `y`).
pub fn decide_s_factorizable(
    z: &ShiftHandle,
    y: &ShiftHandle,
    n_max: u32,
) -> Result<Verdict3<DecisionReport>> {
    let budgets = Budgets {
        decide_n_max: n_max,
        ..Budgets::default()
    };
    decide_s_factorizable_with(z, y, &budgets)
}

pub fn decide_s_factorizable_with(
    z: &ShiftHandle,
    y: &ShiftHandle,
    budgets: &Budgets,
) -> Result<Verdict3<DecisionReport>> {
    require_nonempty_irreducible(y, "the factorization target")?;
    let fischer = y.fischer()?;
    let p = fischer.graph().graph_period()?;
    let horizon = comparison_horizon(p, budgets.decide_n_max);
    let mut report = DecisionReport::new("s-factorizable-embed", p, horizon as u64);

    if z.is_empty() {
        report.condition(
            "empty-domain",
            ConditionStatus::Holds,
            "the empty shift embeds via the empty map, factoring through any cover",
        );
        return Ok(Verdict3::yes(report));
    }

    let compared_to = "the receptive periodic points of the target";
    let target_counts = match budget_opt(census::census_with(y, horizon, budgets))? {
        Some(table) => Some(
            (1..=horizon)
                .map(|m| table.rec_at(m))
                .collect::<Vec<u64>>(),
        ),
        None => None,
    };
    let necessity =
        match check_necessities(&mut report, z, p, horizon, target_counts.as_deref(), compared_to, budgets)? {
            Ok(outcome) => outcome,
            Err(witness) => return Ok(report.into_no(witness)),
        };

    match entropy::compare_entropy(z, y)? {
        EntropyOrder::Less => {
            report.condition(
                "entropy-gap",
                ConditionStatus::Holds,
                "the domain's entropy is certified strictly below the target's",
            );
            if necessity.p_periodic != ConditionStatus::Holds {
                return Ok(report.into_unknown(
                    "the entropy gap is certified but the rotation test was inconclusive",
                ));
            }
            let problem = TailProblem {
                z,
                p,
                horizon: horizon as u64,
                target: TailTargetKind::Receptive(y),
            };
            settle_tail(report, &problem, &necessity, compared_to, budgets)
        }
        EntropyOrder::Greater => {
            report.condition(
                "entropy-gap",
                ConditionStatus::Fails,
                "the domain's entropy is certified strictly above the target's",
            );
            let witness = entropy_excess_witness(z, y, budgets.tol)?;
            Ok(report.into_no(witness))
        }
        EntropyOrder::Equal => {
            report.condition(
                "entropy-gap",
                ConditionStatus::Fails,
                "the entropies are certified equal, so the domain and target would have \
                 to be conjugate SFTs",
            );
            let derived = structure::derived_shift_with(y, budgets)?;
            if !derived.is_empty() {
                report.condition(
                    "target-is-sft",
                    ConditionStatus::Fails,
                    "the target has a nonempty derived shift, so it is strictly sofic",
                );
                return Ok(report.into_no(NoWitness::StrictlySofic {
                    detail: "equal entropy requires the domain and target to be conjugate \
                             SFTs, but the target is strictly sofic (nonempty derived shift)"
                        .into(),
                }));
            }
            report.condition(
                "target-is-sft",
                ConditionStatus::Holds,
                "the target's derived shift is empty, so the target is an SFT",
            );
            if let Some(witness) = conjugacy_witness(z, y)? {
                report.condition("conjugacy", ConditionStatus::Holds, witness.clone());
                report.conjugacy = Some(witness);
                return Ok(Verdict3::yes(report));
            }
            let image_counts = budget_opt(census::q_counts(y.graph(), horizon, budgets))?;
            if let (Some(qz), Some(qy)) = (&necessity.domain_counts, &image_counts) {
                if let Some((m, left, right)) = first_count_difference(qz, qy) {
                    return Ok(report.into_no(NoWitness::ConjugacyObstruction {
                        m,
                        left,
                        right,
                        detail: "equal entropy requires a conjugacy with the target, but \
                                 the periodic counts differ"
                            .into(),
                    }));
                }
            }
            Ok(report.into_unknown(
                "equal entropy: a conjugacy with the SFT target is required, and the \
                 bounded search found neither a witness nor a refutation",
            ))
        }
        EntropyOrder::Inconclusive { .. } => {
            report.condition(
                "entropy-gap",
                ConditionStatus::Undetermined,
                "the entropy enclosures overlap at the configured tolerance",
            );
            Ok(report.into_unknown("the entropy comparison was inconclusive"))
        }
    }
}

fn summarize_component_verdict(v: &Verdict3<DecisionReport>) -> (String, String) {
    match v {
        Verdict3::Yes { certificate } => {
            let detail = certificate
                .conjugacy
                .clone()
                .unwrap_or_else(|| "rotation, counts, entropy gap and count tail all hold".into());
            ("yes".into(), detail)
        }
        Verdict3::No { certificate } => {
            let detail = match &certificate.witness {
                Some(NoWitness::CountViolation { m, count, bound, .. }) => format!(
                    "count violation at length {m}: {count} domain points, budget {bound}"
                ),
                Some(NoWitness::NotPPeriodic { p, .. }) => {
                    format!("the domain is not {p}-periodic")
                }
                Some(NoWitness::EntropyExcess { .. }) => {
                    "the domain's entropy exceeds the component's".into()
                }
                Some(NoWitness::ConjugacyObstruction { m, .. }) => {
                    format!("equal entropy but the periodic counts differ at length {m}")
                }
                Some(NoWitness::StrictlySofic { .. }) => {
                    "equal entropy but the component is strictly sofic".into()
                }
                Some(NoWitness::AllComponentsRefuted { .. }) | None => "refuted".into(),
            };
            ("no".into(), detail)
        }
        Verdict3::Unknown { reason } => ("unknown".into(), reason.clone()),
    }
}

/// Decides whether `z` admits a factorizable embedding into the irreducible
/// sofic shift `y`: an embedding factoring through some irreducible SFT.
///
/// Equivalently (and this is how the procedure works), whether some
/// irreducible component of `y` admits an embedding of `z` factoring
/// through a cover of that component's closure. The verdict also answers
/// the injective variant: an embedding factors through some irreducible SFT
/// exactly when it factors through an injective one.
pub fn decide_factorizable(
    z: &ShiftHandle,
    y: &ShiftHandle,
    n_max: u32,
) -> Result<Verdict3<DecisionReport>> {
    let budgets = Budgets {
        decide_n_max: n_max,
        ..Budgets::default()
    };
    decide_factorizable_with(z, y, &budgets)
}

pub fn decide_factorizable_with(
    z: &ShiftHandle,
    y: &ShiftHandle,
    budgets: &Budgets,
) -> Result<Verdict3<DecisionReport>> {
    require_nonempty_irreducible(y, "the factorization target")?;
    let p = y.fischer()?.graph().graph_period()?;
    let horizon = comparison_horizon(p, budgets.decide_n_max);
    let mut report = DecisionReport::new("factorizable-embed", p, horizon as u64);
    report.note(
        "a factorizable embedding exists exactly when an injectively factorizable one does; \
         this verdict answers both",
    );

    if z.is_empty() {
        report.condition(
            "empty-domain",
            ConditionStatus::Holds,
            "the empty shift embeds via the empty map",
        );
        return Ok(Verdict3::yes(report));
    }

    let tree = match budget_opt(structure::component_tree_with(y, budgets.depth_max, budgets))? {
        Some(tree) => tree,
        None => {
            report.condition(
                "component-tree",
                ConditionStatus::Undetermined,
                "the component tree exceeded its depth or state budget",
            );
            return Ok(report.into_unknown(
                "the component tree of the target could not be built within budget",
            ));
        }
    };
    report.condition(
        "component-tree",
        ConditionStatus::Holds,
        format!(
            "the target has {} irreducible component(s) across {} level(s)",
            tree.components.len(),
            tree.levels.len()
        ),
    );

    // When the domain's entropy certifiably exceeds everything below the top
    // level, only the top component can host the embedding.
    let mut candidates: Vec<usize> = (0..tree.components.len()).collect();
    if tree.levels.len() > 1 {
        if let EntropyOrder::Greater = entropy::compare_entropy(z, &tree.levels[1])? {
            report.note(
                "the domain's entropy is certified above the derived shift; only the top \
                 component can host the embedding",
            );
            candidates = vec![0];
        }
    }

    let mut any_unknown = false;
    for idx in candidates {
        let component = &tree.components[idx];
        let sub = decide_s_factorizable_with(z, &component.closure, budgets)?;
        let (verdict, reason) = summarize_component_verdict(&sub);
        report.components.push(ComponentOutcome {
            component: idx,
            level: component.level,
            verdict,
            reason,
        });
        match sub {
            Verdict3::Yes { certificate } => {
                report.tail = certificate.tail.clone();
                report.conjugacy = certificate.conjugacy.clone();
                report.component = Some(idx);
                report.condition(
                    "component-search",
                    ConditionStatus::Holds,
                    format!(
                        "component {idx} at level {} accepts an embedding factoring through \
                         a cover of its closure",
                        component.level
                    ),
                );
                return Ok(Verdict3::yes(report));
            }
            Verdict3::No { .. } => {}
            Verdict3::Unknown { .. } => any_unknown = true,
        }
    }

    if any_unknown {
        report.condition(
            "component-search",
            ConditionStatus::Undetermined,
            "no component accepted the embedding, and at least one component was undetermined",
        );
        return Ok(report
            .into_unknown("no component certified the embedding, but not all were refuted"));
    }
    let refuted = report.components.len();
    report.condition(
        "component-search",
        ConditionStatus::Fails,
        format!("all {refuted} candidate component(s) were exactly refuted"),
    );
    Ok(report.into_no(NoWitness::AllComponentsRefuted {
        components: refuted,
    }))
}

/// Bound on the seed-orbit scan: the first receptive orbit of length at
/// most this seeds the materialized almost invertible cover.
const AI_SEED_SCAN_LEN: usize = 8;

/// Materializes an almost invertible cover of `y` as YES-certificate
/// evidence: seeds the alternation construction with the first receptive
/// orbit found, composes it with the canonical deterministic presentation
/// of the lifted shift, and verifies the degree of the result. A
/// zero-entropy target is covered by its own canonical presentation
/// (conjugately, hence degree 1). Returns None when no receptive orbit
/// within the scan bound materializes a cover inside the budgets.
fn assemble_ai_cover(y: &ShiftHandle, budgets: &Budgets) -> Result<Option<AiCoverCertificate>> {
    for m in 1..=AI_SEED_SCAN_LEN {
        for eta in lyndon_words(y.alphabet().len(), m, budgets.word_budget)? {
            if !census::contains_periodic(y, &eta)? {
                continue;
            }
            let pw = PrimitiveWord::new(eta)?;
            if !census::is_receptive_with(y, &pw, budgets)?.receptive {
                continue;
            }
            let point = pw.word().render(y.alphabet());
            let (spec, validations) = match forge::ai_sft_cover_core(y, &pw, budgets) {
                Ok((spec, report)) => {
                    let names = report
                        .checks
                        .iter()
                        .filter(|c| c.passed)
                        .map(|c| c.name.clone())
                        .collect();
                    (spec, names)
                }
                Err(Error::ZeroEntropy(_)) => {
                    let spec = CoverSpec::new(y.fischer()?.graph().clone(), y.clone())?;
                    (spec, vec!["zero-entropy-canonical-cover".to_owned()])
                }
                Err(Error::Budget { .. }) => return Ok(None),
                Err(e) => return Err(e),
            };
            let degree = verify::degree(&spec)?;
            return Ok(Some(AiCoverCertificate {
                point,
                vertices: spec.cover_graph().vertex_count(),
                edges: spec.cover_graph().edge_count(),
                degree,
                validations,
                presentation: format::serialize_graph(spec.cover_graph()),
            }));
        }
    }
    Ok(None)
}

/// Decides whether `z` admits an embedding into `y` factoring through an
/// almost invertible cover of `y`.
///
/// Requires a certified strict entropy gap `h(z) < h(y)`; under that gap the
/// existence of an almost invertible factorization is equivalent to the
/// existence of one through an arbitrary cover, which is what gets decided.
pub fn decide_ai_factorizable(
    z: &ShiftHandle,
    y: &ShiftHandle,
    n_max: u32,
) -> Result<Verdict3<DecisionReport>> {
    let budgets = Budgets {
        decide_n_max: n_max,
        ..Budgets::default()
    };
    decide_ai_factorizable_with(z, y, &budgets)
}

pub fn decide_ai_factorizable_with(
    z: &ShiftHandle,
    y: &ShiftHandle,
    budgets: &Budgets,
) -> Result<Verdict3<DecisionReport>> {
    require_nonempty_irreducible(y, "the factorization target")?;
    if !z.is_empty() {
        match entropy::compare_entropy(z, y)? {
            EntropyOrder::Less => {}
            _ => {
                return Err(Error::Precondition(
                    "almost invertible factorization requires a certified entropy gap \
                     h(domain) < h(target)"
                        .into(),
                ))
            }
        }
    }
    match decide_s_factorizable_with(z, y, budgets)? {
        Verdict3::Yes { mut certificate } => {
            certificate.procedure = "ai-factorizable-embed".into();
            match assemble_ai_cover(y, budgets)? {
                Some(cover) => {
                    certificate.condition(
                        "ai-cover-degree",
                        if cover.degree == 1 {
                            ConditionStatus::Holds
                        } else {
                            ConditionStatus::Fails
                        },
                        format!(
                            "composed cover over ({})^inf: {} vertices, {} edges, degree {}",
                            cover.point, cover.vertices, cover.edges, cover.degree
                        ),
                    );
                    certificate.ai_cover = Some(cover);
                }
                None => certificate.condition(
                    "ai-cover-degree",
                    ConditionStatus::Undetermined,
                    format!(
                        "no receptive orbit of length at most {AI_SEED_SCAN_LEN} \
                         materialized a cover within the budgets"
                    ),
                ),
            }
            certificate.note(
                "under the certified entropy gap, an embedding factoring through some cover \
                 factors through an almost invertible one; the attached cover materializes it",
            );
            Ok(Verdict3::yes(certificate))
        }
        Verdict3::No { mut certificate } => {
            certificate.procedure = "ai-factorizable-embed".into();
            Ok(Verdict3::No {
                certificate,
            })
        }
        Verdict3::Unknown { reason } => Ok(Verdict3::unknown(reason)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::LabeledGraph;
    use crate::word::{Alphabet, Word};

    fn handle(edges: Vec<(u32, u32, u32)>, n: usize, symbols: &[&str]) -> ShiftHandle {
        let a = Alphabet::new(symbols.iter().copied()).unwrap();
        let names = (0..n).map(|i| format!("v{i}")).collect();
        ShiftHandle::from_graph(LabeledGraph::new(a, names, edges).unwrap()).unwrap()
    }

    /// The orbit of (word)^inf, presented by a labeled cycle.
    fn orbit_shift(word: &str, symbols: &[&str]) -> ShiftHandle {
        let a = Alphabet::new(symbols.iter().copied()).unwrap();
        let w = Word::parse(word, &a).unwrap();
        let n = w.len() as u32;
        let names = (0..n).map(|i| format!("c{i}")).collect();
        let edges = (0..n).map(|i| (i, (i + 1) % n, w.0[i as usize])).collect();
        ShiftHandle::from_graph(LabeledGraph::new(a, names, edges).unwrap()).unwrap()
    }

    fn orbit01() -> ShiftHandle {
        orbit_shift("01", &["0", "1"])
    }

    fn orbit100() -> ShiftHandle {
        orbit_shift("100", &["0", "1"])
    }

    /// Golden mean SFT as an edge shift (three distinctly labeled edges).
    fn golden_edge() -> ShiftHandle {
        handle(
            vec![(0, 0, 0), (0, 1, 1), (1, 0, 2)],
            2,
            &["e0", "e1", "e2"],
        )
    }

    /// Golden mean shift over {0, 1}: a sofic-kind presentation of the SFT.
    fn golden_sofic() -> ShiftHandle {
        handle(vec![(0, 0, 0), (0, 1, 1), (1, 0, 0)], 2, &["0", "1"])
    }

    /// Full shift on two symbols as an edge shift.
    fn full2() -> ShiftHandle {
        handle(vec![(0, 0, 0), (0, 0, 1)], 1, &["0", "1"])
    }

    fn even() -> ShiftHandle {
        handle(vec![(0, 0, 1), (0, 1, 0), (1, 0, 0)], 2, &["0", "1"])
    }

    /// Intersection of the golden mean and even shifts.
    fn golden_even() -> ShiftHandle {
        handle(
            vec![(0, 1, 1), (1, 2, 0), (2, 1, 0), (2, 0, 0)],
            3,
            &["0", "1"],
        )
    }

    fn fixed_point_zero() -> ShiftHandle {
        handle(vec![(0, 0, 0)], 1, &["0"])
    }

    fn fixed_point_one() -> ShiftHandle {
        handle(vec![(0, 0, 1)], 1, &["0", "1"])
    }

    fn two_fixed_points() -> ShiftHandle {
        handle(vec![(0, 0, 0), (1, 1, 1)], 2, &["0", "1"])
    }

    /// Two-vertex cycle with distinct labels: an edge shift of period 2.
    fn two_cycle() -> ShiftHandle {
        handle(vec![(0, 1, 0), (1, 0, 1)], 2, &["x", "y"])
    }

    #[test]
    fn orbit_embeds_into_golden_mean() {
        let verdict = decide_embed_irreducible_sft(&orbit01(), &golden_edge(), 6).unwrap();
        let Verdict3::Yes { certificate } = verdict else {
            panic!("expected YES, got {verdict:?}");
        };
        assert_eq!(certificate.p, 1);
        assert!(certificate.tail.is_some());
    }

    #[test]
    fn fixed_point_fails_rotation_into_two_cycle() {
        let verdict = decide_embed_irreducible_sft(&fixed_point_zero(), &two_cycle(), 6).unwrap();
        let Verdict3::No { certificate } = verdict else {
            panic!("expected NO, got {verdict:?}");
        };
        match certificate.witness {
            Some(NoWitness::NotPPeriodic { p, .. }) => assert_eq!(p, 2),
            other => panic!("expected a rotation obstruction, got {other:?}"),
        }
    }

    #[test]
    fn two_fixed_points_exceed_golden_budget() {
        let verdict = decide_embed_irreducible_sft(&two_fixed_points(), &golden_edge(), 6).unwrap();
        let Verdict3::No { certificate } = verdict else {
            panic!("expected NO, got {verdict:?}");
        };
        match certificate.witness {
            Some(NoWitness::CountViolation { m, count, bound, .. }) => {
                assert_eq!((m, count, bound), (1, 2, 1));
            }
            other => panic!("expected a count violation, got {other:?}"),
        }
    }

    #[test]
    fn conjugate_two_cycles_embed() {
        // Zero entropy on both sides; the conjugacy shortcut finds the
        // unlabeled graph isomorphism between the two 2-cycles.
        let verdict = decide_embed_irreducible_sft(&orbit01(), &two_cycle(), 6).unwrap();
        let Verdict3::Yes { certificate } = verdict else {
            panic!("expected YES, got {verdict:?}");
        };
        assert!(certificate.conjugacy.is_some());
    }

    #[test]
    fn even_shift_not_s_factorizable_into_itself() {
        // The identity embedding of the even shift into itself does not
        // factor through any cover; the fixed point 0^inf is not receptive,
        // so the count budget at length 1 is already too small.
        let even = even();
        let verdict = decide_s_factorizable(&even.clone(), &even, 5).unwrap();
        let Verdict3::No { certificate } = verdict else {
            panic!("expected NO, got {verdict:?}");
        };
        match certificate.witness {
            Some(NoWitness::CountViolation { m, count, bound, .. }) => {
                assert_eq!((m, count, bound), (1, 2, 1));
            }
            other => panic!("expected a count violation, got {other:?}"),
        }
    }

    /// Edge shift whose adjacency is the companion matrix of
    /// x^4 - x^3 - x - 1 = (x^2 - x - 1)(x^2 + 1): entropy exactly that of
    /// the golden mean, periodic counts 1, 0, 3, 8, ...
    fn golden_companion4() -> ShiftHandle {
        handle(
            vec![
                (0, 1, 0),
                (1, 2, 1),
                (2, 3, 2),
                (3, 3, 3),
                (3, 1, 4),
                (3, 0, 5),
            ],
            4,
            &["a", "b", "c", "d", "e", "f"],
        )
    }

    #[test]
    fn equal_entropy_strictly_sofic_target_refutes_s_factorizable() {
        // Counts match the receptive budget of the even shift up to length
        // 3, and the entropies are exactly equal; the refutation is that the
        // target would have to be a conjugate SFT but is strictly sofic.
        let verdict = decide_s_factorizable(&golden_companion4(), &even(), 3).unwrap();
        let Verdict3::No { certificate } = verdict else {
            panic!("expected NO, got {verdict:?}");
        };
        assert!(matches!(
            certificate.witness,
            Some(NoWitness::StrictlySofic { .. })
        ));
        // With a longer horizon the exact counts refute first: q_4 = 8
        // exceeds the four receptive points of least period 4.
        let verdict = decide_s_factorizable(&golden_companion4(), &even(), 6).unwrap();
        let Verdict3::No { certificate } = verdict else {
            panic!("expected NO, got {verdict:?}");
        };
        match certificate.witness {
            Some(NoWitness::CountViolation { m, count, bound, .. }) => {
                assert_eq!((m, count, bound), (4, 8, 4));
            }
            other => panic!("expected a count violation, got {other:?}"),
        }
    }

    #[test]
    fn equal_entropy_sft_without_witness_stays_unknown() {
        // The golden mean edge shift against the golden mean shift over
        // {0, 1}: conjugate in truth, but the bounded witness search only
        // recodes edge shifts, so the honest answer here is UNKNOWN.
        let verdict = decide_s_factorizable(&golden_edge(), &golden_sofic(), 5).unwrap();
        assert!(verdict.is_unknown(), "got {verdict:?}");
    }

    #[test]
    fn orbit_embeds_through_even_cover() {
        let even = even();
        let cover = even.fischer().unwrap();
        let pi = CoverSpec::new(cover.graph().clone(), even.clone()).unwrap();
        let verdict = decide_embed_through_cover(&orbit100(), &pi, 6).unwrap();
        let Verdict3::Yes { certificate } = verdict else {
            panic!("expected YES, got {verdict:?}");
        };
        assert!(certificate.tail.is_some());
    }

    #[test]
    fn two_fixed_points_fail_through_even_cover() {
        let even = even();
        let pi = CoverSpec::new(even.fischer().unwrap().graph().clone(), even.clone()).unwrap();
        let verdict = decide_embed_through_cover(&two_fixed_points(), &pi, 6).unwrap();
        let Verdict3::No { certificate } = verdict else {
            panic!("expected NO, got {verdict:?}");
        };
        match certificate.witness {
            Some(NoWitness::CountViolation { m, count, bound, .. }) => {
                assert_eq!((m, count, bound), (1, 2, 1));
            }
            other => panic!("expected a count violation, got {other:?}"),
        }
    }

    #[test]
    fn identity_cover_matches_direct_sft_decision() {
        let targets = [golden_edge(), two_cycle(), full2()];
        let domains = [orbit01(), fixed_point_zero(), two_fixed_points(), orbit100()];
        for w in &targets {
            let pi = CoverSpec::identity(w).unwrap();
            for z in &domains {
                let direct = decide_embed_irreducible_sft(z, w, 5).unwrap();
                let through = decide_embed_through_cover(z, &pi, 5).unwrap();
                assert_eq!(
                    direct.is_yes(),
                    through.is_yes(),
                    "identity-cover YES mismatch"
                );
                assert_eq!(
                    direct.is_no(),
                    through.is_no(),
                    "identity-cover NO mismatch"
                );
            }
        }
    }

    #[test]
    fn fixed_point_not_s_factorizable_into_golden_even() {
        // The only fixed point of the target is not receptive, so the count
        // budget at length 1 is zero.
        let verdict = decide_s_factorizable(&fixed_point_zero(), &golden_even(), 6).unwrap();
        let Verdict3::No { certificate } = verdict else {
            panic!("expected NO, got {verdict:?}");
        };
        match certificate.witness {
            Some(NoWitness::CountViolation { m, count, bound, .. }) => {
                assert_eq!((m, count, bound), (1, 1, 0));
            }
            other => panic!("expected a count violation, got {other:?}"),
        }
    }

    #[test]
    fn orbit_s_factorizable_into_even() {
        let verdict = decide_s_factorizable(&orbit100(), &even(), 6).unwrap();
        assert!(verdict.is_yes(), "got {verdict:?}");
    }

    #[test]
    fn one_fixed_point_s_factorizable_into_even() {
        let verdict = decide_s_factorizable(&fixed_point_one(), &even(), 6).unwrap();
        assert!(verdict.is_yes(), "got {verdict:?}");
    }

    #[test]
    fn fixed_point_factorizable_into_golden_even_via_component() {
        let verdict = decide_factorizable(&fixed_point_zero(), &golden_even(), 6).unwrap();
        let Verdict3::Yes { certificate } = verdict else {
            panic!("expected YES, got {verdict:?}");
        };
        let idx = certificate.component.expect("a component should be named");
        assert!(idx > 0, "the top component cannot host the fixed point");
        assert!(!certificate.components.is_empty());
    }

    #[test]
    fn two_fixed_points_factorizable_into_full_shift() {
        let verdict = decide_factorizable(&two_fixed_points(), &full2(), 6).unwrap();
        assert!(verdict.is_yes(), "got {verdict:?}");
    }

    #[test]
    fn s_factorizable_implies_factorizable() {
        let cases = [
            (orbit100(), even()),
            (fixed_point_one(), even()),
            (two_fixed_points(), full2()),
        ];
        for (z, y) in &cases {
            let strong = decide_s_factorizable(z, y, 5).unwrap();
            if strong.is_yes() {
                let weak = decide_factorizable(z, y, 5).unwrap();
                assert!(weak.is_yes(), "monotonicity violated");
            }
        }
    }

    #[test]
    fn ai_requires_entropy_gap() {
        let even = even();
        let err = decide_ai_factorizable(&even.clone(), &even, 5).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn ai_follows_s_factorizable_under_gap() {
        let verdict = decide_ai_factorizable(&orbit100(), &even(), 6).unwrap();
        let Verdict3::Yes { certificate } = verdict else {
            panic!("expected YES, got {verdict:?}");
        };
        assert_eq!(certificate.procedure, "ai-factorizable-embed");
        let cover = certificate.ai_cover.expect("YES attaches a materialized cover");
        assert_eq!(cover.degree, 1);
        assert_eq!(cover.point, "1");
        assert!(cover.validations.iter().any(|v| v == "composite-degree-one"));
        let replay = crate::format::parse_presentation(&cover.presentation).unwrap();
        assert_eq!(verify::degree(&CoverSpec::new(replay.graph().clone(), even()).unwrap()).unwrap(), 1);
    }

    #[test]
    fn golden_even_into_even_reports_components() {
        // The inclusion domain: exercised verbatim; the verdict is whatever
        // the exact conditions yield, with per-component records kept.
        let verdict = decide_factorizable(&golden_even(), &even(), 4).unwrap();
        match &verdict {
            Verdict3::Yes { certificate } => {
                assert!(!certificate.components.is_empty());
            }
            Verdict3::No { certificate } => {
                assert!(!certificate.components.is_empty());
            }
            Verdict3::Unknown { .. } => {}
        }
    }

    #[test]
    fn decisions_replay_deterministically() {
        let a = decide_embed_irreducible_sft(&orbit01(), &golden_edge(), 6).unwrap();
        let b = decide_embed_irreducible_sft(&orbit01(), &golden_edge(), 6).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        let c = decide_s_factorizable(&fixed_point_zero(), &golden_even(), 6).unwrap();
        let d = decide_s_factorizable(&fixed_point_zero(), &golden_even(), 6).unwrap();
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            serde_json::to_string(&d).unwrap()
        );
    }

    #[test]
    fn empty_domain_embeds_everywhere() {
        let empty = ShiftHandle::empty(Alphabet::new(["0"]).unwrap());
        assert!(decide_embed_irreducible_sft(&empty, &golden_edge(), 4)
            .unwrap()
            .is_yes());
        assert!(decide_s_factorizable(&empty, &even(), 4).unwrap().is_yes());
        assert!(decide_factorizable(&empty, &even(), 4).unwrap().is_yes());
    }
}
