//! Certified entropy enclosures and entropy comparison.
//!
//! The entropy of a sofic shift is the natural logarithm of the spectral
//! radius of the adjacency matrix of any right-resolving presentation. The
//! enclosure here is rigorous on both sides: for a positive integer vector
//! x and B = A + I, Collatz-Wielandt gives
//!
//!   min_i (Bx)_i / x_i  <=  lambda(B)  <=  max_i (Bx)_i / x_i
//!
//! (the lower bound needs B irreducible, so on reducible graphs it is
//! taken per strongly connected component; the upper bound holds for any
//! positive x). Power iteration tightens both ends in exact rational
//! arithmetic. When two enclosures refuse to separate, an exact phase
//! compares the spectral radii as algebraic numbers: both are the largest
//! real roots of the characteristic polynomials, isolated by Sturm
//! bisection; equality is certified by a common root of the gcd inside the
//! intersection of isolating intervals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::shift::ShiftHandle;

const MAX_POWER_ITERS: u32 = 2_000;
const CHARPOLY_VERTEX_CAP: usize = 24;
const MAX_BISECTIONS: u32 = 512;

/// Two-sided enclosure of the spectral radius lambda and of the entropy
/// log(lambda). The rational bounds are exact statements; the float bounds
/// are outward-rounded logarithms.
#[derive(Debug, Clone, Serialize)]
pub struct EntropyEnclosure {
    #[serde(serialize_with = "serialize_rational")]
    pub lambda_lo: BigRational,
    #[serde(serialize_with = "serialize_rational")]
    pub lambda_hi: BigRational,
    pub log_lo: f64,
    pub log_hi: f64,
    /// True when the entropy is exactly zero (every cycle-bearing strongly
    /// connected component is a simple cycle).
    pub exact_zero: bool,
}

fn serialize_rational<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl EntropyEnclosure {
    pub fn log_width(&self) -> f64 {
        self.log_hi - self.log_lo
    }

    fn from_lambda(lambda_lo: BigRational, lambda_hi: BigRational, exact_zero: bool) -> Self {
        let (log_lo, log_hi) = if exact_zero {
            (0.0, 0.0)
        } else {
            (ln_lower(&lambda_lo), ln_upper(&lambda_hi))
        };
        EntropyEnclosure {
            lambda_lo,
            lambda_hi,
            log_lo,
            log_hi,
            exact_zero,
        }
    }
}

/// Certified outcome of comparing two entropies.
#[derive(Debug, Clone, Serialize)]
pub enum EntropyOrder {
    Less,
    Equal,
    Greater,
    /// Bounded effort exhausted without separating or proving equality.
    Inconclusive {
        left: EntropyEnclosure,
        right: EntropyEnclosure,
    },
}

/// Entropy of the shift, enclosed to within `tol` in log scale when the
/// iteration budget allows (the returned bounds are sound either way).
pub fn entropy(handle: &ShiftHandle) -> Result<EntropyEnclosure> {
    entropy_with(handle, 1e-9)
}

pub fn entropy_with(handle: &ShiftHandle, tol: f64) -> Result<EntropyEnclosure> {
    let det = deterministic_presentation(handle)?;
    let adj = det.adjacency();
    spectral_enclosure(&adj, tol)
}

/// A right-resolving presentation of the same shift: the graph itself when
/// already right-resolving, the Fischer cover for irreducible handles, and
/// otherwise the trimmed full determinization.
pub(crate) fn deterministic_presentation(handle: &ShiftHandle) -> Result<LabeledGraph> {
    if handle.is_empty() {
        return Err(Error::EmptyShift("entropy of the empty shift".into()));
    }
    let g = handle.graph();
    if g.is_right_resolving() {
        return Ok(g.clone());
    }
    if handle.is_irreducible_presentation() {
        return Ok(handle.fischer()?.graph().clone());
    }
    let cap = crate::budget::Budgets::default().state_cap;
    let auto = crate::present::determinize(g, g.full_vertex_set(), cap)?;
    let (trimmed, _) = auto.to_graph(g)?.trim();
    if trimmed.vertex_count() == 0 {
        return Err(Error::Internal(
            "determinization of a nonempty shift trimmed to nothing".into(),
        ));
    }
    Ok(trimmed)
}

/// Spectral radius enclosure of a nonnegative integer matrix interpreted
/// as the adjacency matrix of an essential graph (so at least one cycle).
pub(crate) fn spectral_enclosure(adj: &[Vec<u64>], tol: f64) -> Result<EntropyEnclosure> {
    let sccs = adjacency_sccs(adj);
    let mut cyclic: Vec<Vec<usize>> = Vec::new();
    for scc in &sccs {
        if scc.len() > 1 || adj[scc[0]][scc[0]] > 0 {
            cyclic.push(scc.clone());
        }
    }
    if cyclic.is_empty() {
        return Err(Error::Precondition(
            "spectral enclosure of an acyclic graph".into(),
        ));
    }
    if cyclic.iter().all(|scc| is_simple_cycle(adj, scc)) {
        let one = BigRational::one();
        return Ok(EntropyEnclosure::from_lambda(one.clone(), one, true));
    }
    let mut lo = BigRational::zero();
    let mut hi = BigRational::zero();
    for scc in &cyclic {
        let sub = restrict_adjacency(adj, scc);
        let (scc_lo, scc_hi) = perron_enclosure(&sub, tol, MAX_POWER_ITERS);
        if scc_lo > lo {
            lo = scc_lo;
        }
        if scc_hi > hi {
            hi = scc_hi;
        }
    }
    if lo > hi {
        return Err(Error::Internal("spectral bounds crossed".into()));
    }
    Ok(EntropyEnclosure::from_lambda(lo, hi, false))
}

/// Collatz-Wielandt enclosure of the Perron root of an irreducible
/// nonnegative matrix, via power iteration with B = A + I.
fn perron_enclosure(adj: &[Vec<u64>], tol: f64, max_iters: u32) -> (BigRational, BigRational) {
    let n = adj.len();
    let mut x: Vec<BigInt> = vec![BigInt::one(); n];
    let mut best_lo = BigRational::zero();
    let mut best_hi: Option<BigRational> = None;
    for iter in 0..max_iters {
        // y = (A + I) x
        let mut y = x.clone();
        for i in 0..n {
            for j in 0..n {
                if adj[i][j] > 0 {
                    y[i] += BigInt::from(adj[i][j]) * &x[j];
                }
            }
        }
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for i in 0..n {
            let q = BigRational::new(y[i].clone(), x[i].clone());
            if lo.as_ref().map_or(true, |l| &q < l) {
                lo = Some(q.clone());
            }
            if hi.as_ref().map_or(true, |h| &q > h) {
                hi = Some(q);
            }
        }
        let one = BigRational::one();
        let lo = lo.expect("nonempty matrix") - &one;
        let hi = hi.expect("nonempty matrix") - one;
        if lo > best_lo {
            best_lo = lo;
        }
        if best_hi.as_ref().map_or(true, |b| &hi < b) {
            best_hi = Some(hi);
        }
        let gap = ln_upper(best_hi.as_ref().expect("set above"))
            - ln_lower(&best_lo.clone().max(BigRational::one()));
        if gap <= tol && iter >= 1 {
            break;
        }
        x = y;
        if iter % 8 == 7 {
            reduce_by_gcd(&mut x);
        }
    }
    (best_lo, best_hi.expect("at least one iteration"))
}

fn reduce_by_gcd(x: &mut [BigInt]) {
    use num_integer::Integer;
    let mut g = BigInt::zero();
    for v in x.iter() {
        g = g.gcd(v);
    }
    if g > BigInt::one() {
        for v in x.iter_mut() {
            *v /= &g;
        }
    }
}

fn restrict_adjacency(adj: &[Vec<u64>], keep: &[usize]) -> Vec<Vec<u64>> {
    keep.iter()
        .map(|&i| keep.iter().map(|&j| adj[i][j]).collect())
        .collect()
}

fn is_simple_cycle(adj: &[Vec<u64>], scc: &[usize]) -> bool {
    // Exactly one outgoing edge inside the component per vertex.
    scc.iter()
        .all(|&i| scc.iter().map(|&j| adj[i][j]).sum::<u64>() == 1)
}

fn adjacency_sccs(adj: &[Vec<u64>]) -> Vec<Vec<usize>> {
    // Iterative Tarjan on the adjacency digraph.
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut out = Vec::new();
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        while let Some(&mut (v, ref mut child)) = call.last_mut() {
            if *child == 0 {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            let mut descended = false;
            while *child < n {
                let w = *child;
                *child += 1;
                if adj[v][w] == 0 {
                    continue;
                }
                if index[w] == usize::MAX {
                    call.push((w, 0));
                    descended = true;
                    break;
                } else if on_stack[w] && index[w] < low[v] {
                    low[v] = index[w];
                }
            }
            if descended {
                continue;
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                out.push(comp);
            }
            call.pop();
            if let Some(&mut (parent, _)) = call.last_mut() {
                if low[v] < low[parent] {
                    low[parent] = low[v];
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Outward-rounded logarithms.

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::MAX)
}

/// A float certainly <= ln(r), for r >= some positive value.
pub(crate) fn ln_lower(r: &BigRational) -> f64 {
    if r <= &BigRational::zero() {
        return f64::NEG_INFINITY;
    }
    let v = rational_to_f64(r);
    let l = v.ln();
    l - (l.abs() + 1.0) * 1e-12
}

/// A float certainly >= ln(r).
pub(crate) fn ln_upper(r: &BigRational) -> f64 {
    if r <= &BigRational::zero() {
        return f64::NEG_INFINITY;
    }
    let v = rational_to_f64(r);
    let l = v.ln();
    l + (l.abs() + 1.0) * 1e-12
}

// ---------------------------------------------------------------------------
// Exact phase: characteristic polynomials, Sturm sequences.

/// Characteristic polynomial of an integer matrix by Faddeev-LeVerrier.
/// Returned low-to-high: c[0] + c[1] x + ... + c[n] x^n with c[n] = 1.
pub(crate) fn charpoly(adj: &[Vec<u64>]) -> Vec<BigInt> {
    let n = adj.len();
    let a: Vec<Vec<BigInt>> = adj
        .iter()
        .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n]; // M_0 = 0
    let mut c = BigInt::one();
    for k in 1..=n {
        // M_k = A (M_{k-1} + c_{k-1} I)
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += &c;
        }
        m = crate::census::mat_mul(&a, &m);
        let tr = crate::census::mat_trace(&m);
        c = -tr / BigInt::from(k as i64);
        coeffs[n - k] = c.clone();
    }
    coeffs
}

type Poly = Vec<BigRational>;

fn poly_from_bigint(c: &[BigInt]) -> Poly {
    c.iter()
        .map(|v| BigRational::from_integer(v.clone()))
        .collect()
}

fn poly_trim(p: &mut Poly) {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_is_zero(p: &Poly) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn poly_degree(p: &Poly) -> usize {
    p.len().saturating_sub(1)
}

fn poly_derivative(p: &Poly) -> Poly {
    if p.len() <= 1 {
        return vec![BigRational::zero()];
    }
    let mut out = Vec::with_capacity(p.len() - 1);
    for (i, c) in p.iter().enumerate().skip(1) {
        out.push(c * BigRational::from_integer(BigInt::from(i)));
    }
    out
}

fn poly_monic(p: &Poly) -> Poly {
    let lead = p.last().expect("nonempty polynomial");
    if lead.is_zero() || lead.is_one() {
        return p.clone();
    }
    p.iter().map(|c| c / lead).collect()
}

/// Quotient and remainder of a by b (b nonzero), coefficients exact.
fn poly_divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut r = a.clone();
    poly_trim(&mut r);
    let mut divisor = b.clone();
    poly_trim(&mut divisor);
    debug_assert!(!poly_is_zero(&divisor));
    let db = poly_degree(&divisor);
    let lead = divisor.last().expect("nonzero divisor").clone();
    if poly_is_zero(&r) || poly_degree(&r) < db {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); poly_degree(&r) - db + 1];
    while !poly_is_zero(&r) && poly_degree(&r) >= db {
        let dr = poly_degree(&r);
        let factor = &r[dr] / &lead;
        q[dr - db] = factor.clone();
        for i in 0..=db {
            let sub = &factor * &divisor[i];
            r[dr - db + i] -= sub;
        }
        poly_trim(&mut r);
    }
    (q, r)
}

fn poly_rem(a: &Poly, b: &Poly) -> Poly {
    poly_divrem(a, b).1
}

fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let mut x = a.clone();
    let mut y = b.clone();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !poly_is_zero(&y) {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
        poly_trim(&mut y);
        if !poly_is_zero(&y) {
            y = poly_monic(&y);
        }
    }
    poly_monic(&x)
}

fn poly_divide_exact(a: &Poly, b: &Poly) -> Poly {
    poly_divrem(a, b).0
}

fn poly_square_free(p: &Poly) -> Poly {
    let d = poly_derivative(p);
    if poly_is_zero(&d) {
        return p.clone();
    }
    let g = poly_gcd(p, &d);
    if poly_degree(&g) == 0 {
        return p.clone();
    }
    poly_divide_exact(p, &g)
}

fn poly_eval_sign(p: &Poly, x: &BigRational) -> i8 {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    if acc.is_zero() {
        0
    } else if acc.is_positive() {
        1
    } else {
        -1
    }
}

fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = Vec::new();
    let mut p0 = p.clone();
    poly_trim(&mut p0);
    seq.push(p0.clone());
    let mut p1 = poly_derivative(&p0);
    poly_trim(&mut p1);
    if poly_is_zero(&p1) {
        return seq;
    }
    seq.push(p1);
    loop {
        let n = seq.len();
        let r = poly_rem(&seq[n - 2], &seq[n - 1]);
        if poly_is_zero(&r) {
            break;
        }
        let neg: Poly = r.iter().map(|c| -c).collect();
        seq.push(neg);
    }
    seq
}

fn sign_variations(seq: &[Poly], x: &BigRational) -> u32 {
    let mut variations = 0;
    let mut last: i8 = 0;
    for p in seq {
        let s = poly_eval_sign(p, x);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            variations += 1;
        }
        last = s;
    }
    variations
}

/// Number of distinct real roots of the square-free polynomial in (a, b].
fn count_roots(seq: &[Poly], a: &BigRational, b: &BigRational) -> u32 {
    sign_variations(seq, a).saturating_sub(sign_variations(seq, b))
}

/// Isolating interval (lo, hi] for the LARGEST real root of square-free
/// `p`, starting from an interval guaranteed to contain it. Bisects until
/// the interval holds exactly one root of p, then keeps narrowing.
struct RootIsolation {
    seq: Vec<Poly>,
    lo: BigRational,
    hi: BigRational,
}

impl RootIsolation {
    fn new(p: Poly, lo: BigRational, hi: BigRational) -> Self {
        let seq = sturm_sequence(&p);
        RootIsolation { seq, lo, hi }
    }

    fn refine(&mut self) {
        let two = BigRational::from_integer(BigInt::from(2));
        let mid = (&self.lo + &self.hi) / two;
        // The target is the largest root, so prefer the upper half.
        if count_roots(&self.seq, &mid, &self.hi) >= 1 {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    fn isolated(&self) -> bool {
        count_roots(&self.seq, &self.lo, &self.hi) == 1
    }
}

/// Compares the entropies of two shifts with certified outcomes. `Less`,
/// `Equal` and `Greater` are proofs; `Inconclusive` reports the enclosures
/// reached when the effort budget ran out.
pub fn compare_entropy(left: &ShiftHandle, right: &ShiftHandle) -> Result<EntropyOrder> {
    match (left.is_empty(), right.is_empty()) {
        (true, true) => return Ok(EntropyOrder::Equal),
        (true, false) => return Ok(EntropyOrder::Less),
        (false, true) => return Ok(EntropyOrder::Greater),
        (false, false) => {}
    }
    let la = deterministic_presentation(left)?;
    let lb = deterministic_presentation(right)?;
    let adj_a = la.adjacency();
    let adj_b = lb.adjacency();
    let enc_a = spectral_enclosure(&adj_a, 1e-9)?;
    let enc_b = spectral_enclosure(&adj_b, 1e-9)?;
    if enc_a.lambda_hi < enc_b.lambda_lo {
        return Ok(EntropyOrder::Less);
    }
    if enc_b.lambda_hi < enc_a.lambda_lo {
        return Ok(EntropyOrder::Greater);
    }
    if enc_a.exact_zero && enc_b.exact_zero {
        return Ok(EntropyOrder::Equal);
    }
    if adj_a.len() > CHARPOLY_VERTEX_CAP || adj_b.len() > CHARPOLY_VERTEX_CAP {
        return Ok(EntropyOrder::Inconclusive {
            left: enc_a,
            right: enc_b,
        });
    }
    // Exact phase. The spectral radius of a nonnegative matrix is its
    // largest real eigenvalue, so compare largest real roots.
    let pa = poly_square_free(&poly_from_bigint(&charpoly(&adj_a)));
    let pb = poly_square_free(&poly_from_bigint(&charpoly(&adj_b)));
    let g = poly_gcd(&pa, &pb);
    let g_seq = if poly_degree(&g) >= 1 {
        Some(sturm_sequence(&g))
    } else {
        None
    };
    let one = BigRational::one();
    let mut iso_a = RootIsolation::new(
        pa,
        (&enc_a.lambda_lo - &one).max(BigRational::zero()),
        enc_a.lambda_hi.clone(),
    );
    let mut iso_b = RootIsolation::new(
        pb,
        (&enc_b.lambda_lo - &one).max(BigRational::zero()),
        enc_b.lambda_hi.clone(),
    );
    for _ in 0..MAX_BISECTIONS {
        iso_a.refine();
        iso_b.refine();
        if iso_a.hi <= iso_b.lo {
            return Ok(EntropyOrder::Less);
        }
        if iso_b.hi <= iso_a.lo {
            return Ok(EntropyOrder::Greater);
        }
        if iso_a.isolated() && iso_b.isolated() {
            if let Some(seq) = &g_seq {
                let lo = iso_a.lo.clone().max(iso_b.lo.clone());
                let hi = iso_a.hi.clone().min(iso_b.hi.clone());
                if lo < hi && count_roots(seq, &lo, &hi) >= 1 {
                    // The common root is the unique root of each
                    // polynomial in its isolating interval: both radii.
                    return Ok(EntropyOrder::Equal);
                }
            }
            // Coprime, or no common root nearby: keep separating.
        }
    }
    Ok(EntropyOrder::Inconclusive {
        left: enc_a,
        right: enc_b,
    })
}

/// Certified pair (x, mu) with A x <= mu x componentwise and x positive:
/// mu is then an upper bound for the spectral radius, and the pair feeds
/// growth bounds of the form (A^m x)_i <= mu^m x_i. Iteration picks the
/// best mu seen within the budget.
pub(crate) fn super_eigenvector(adj: &[Vec<u64>], iters: u32) -> (Vec<BigInt>, BigRational) {
    let n = adj.len();
    let mut x: Vec<BigInt> = vec![BigInt::one(); n];
    let mut best: Option<(Vec<BigInt>, BigRational)> = None;
    for iter in 0..iters.max(1) {
        let mut y = x.clone();
        for i in 0..n {
            for j in 0..n {
                if adj[i][j] > 0 {
                    y[i] += BigInt::from(adj[i][j]) * &x[j];
                }
            }
        }
        let mut mu = BigRational::zero();
        for i in 0..n {
            let q = BigRational::new(&y[i] - &x[i], x[i].clone());
            if q > mu {
                mu = q;
            }
        }
        if best.as_ref().map_or(true, |(_, b)| &mu < b) {
            best = Some((x.clone(), mu));
        }
        x = y;
        if iter % 8 == 7 {
            reduce_by_gcd(&mut x);
        }
    }
    best.expect("at least one iteration")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::LabeledGraph;
    use crate::word::Alphabet;

    fn handle(edges: Vec<(u32, u32, u32)>, n: usize, symbols: &[&str]) -> ShiftHandle {
        let a = Alphabet::new(symbols.iter().copied()).unwrap();
        let names = (0..n).map(|i| format!("v{i}")).collect();
        ShiftHandle::from_graph(LabeledGraph::new(a, names, edges).unwrap()).unwrap()
    }

    fn golden_mean() -> ShiftHandle {
        handle(vec![(0, 0, 0), (0, 1, 1), (1, 0, 0)], 2, &["0", "1"])
    }

    fn even() -> ShiftHandle {
        handle(vec![(0, 0, 1), (0, 1, 0), (1, 0, 0)], 2, &["0", "1"])
    }

    fn full2() -> ShiftHandle {
        handle(vec![(0, 0, 0), (0, 0, 1)], 1, &["0", "1"])
    }

    fn cycle(n: u32) -> ShiftHandle {
        let edges = (0..n).map(|i| (i, (i + 1) % n, 0)).collect();
        handle(edges, n as usize, &["0"])
    }

    #[test]
    fn golden_mean_entropy_enclosure() {
        let e = entropy(&golden_mean()).unwrap();
        let phi = 1.618033988749895f64;
        assert!(rational_to_f64(&e.lambda_lo) <= phi);
        assert!(rational_to_f64(&e.lambda_hi) >= phi);
        assert!(e.log_width() <= 1e-9);
        assert!((e.log_lo - 0.4812118250596).abs() < 1e-6);
        assert!(!e.exact_zero);
    }

    #[test]
    fn full_shift_entropy_is_log_two() {
        let e = entropy(&full2()).unwrap();
        assert!((e.log_lo - std::f64::consts::LN_2).abs() < 1e-9);
        assert!((e.log_hi - std::f64::consts::LN_2).abs() < 1e-9);
    }

    #[test]
    fn single_cycle_has_exactly_zero_entropy() {
        let e = entropy(&cycle(3)).unwrap();
        assert!(e.exact_zero);
        assert_eq!(e.log_lo, 0.0);
        assert_eq!(e.log_hi, 0.0);
        assert_eq!(e.lambda_lo, BigRational::one());
    }

    #[test]
    fn even_and_golden_mean_have_equal_entropy() {
        // Different presentations, same spectral radius: exact route.
        match compare_entropy(&even(), &golden_mean()).unwrap() {
            EntropyOrder::Equal => {}
            other => panic!("expected Equal, got {other:?}"),
        }
    }

    #[test]
    fn strict_entropy_comparisons() {
        assert!(matches!(
            compare_entropy(&golden_mean(), &full2()).unwrap(),
            EntropyOrder::Less
        ));
        assert!(matches!(
            compare_entropy(&full2(), &even()).unwrap(),
            EntropyOrder::Greater
        ));
        assert!(matches!(
            compare_entropy(&cycle(2), &cycle(3)).unwrap(),
            EntropyOrder::Equal
        ));
        assert!(matches!(
            compare_entropy(&cycle(5), &golden_mean()).unwrap(),
            EntropyOrder::Less
        ));
    }

    #[test]
    fn golden_intersect_even_is_strictly_smaller() {
        // Fischer cover of the intersection has charpoly x^3 - x - 1
        // (plastic number, about 1.3247).
        let ge = handle(
            vec![(0, 1, 1), (1, 2, 0), (2, 1, 0), (2, 0, 0)],
            3,
            &["0", "1"],
        );
        let e = entropy(&ge).unwrap();
        assert!((rational_to_f64(&e.lambda_lo) - 1.3247179572).abs() < 1e-6);
        assert!(matches!(
            compare_entropy(&ge, &even()).unwrap(),
            EntropyOrder::Less
        ));
    }

    #[test]
    fn charpoly_of_golden_matrix() {
        // [[1,1],[1,0]] has charpoly x^2 - x - 1.
        let p = charpoly(&[vec![1, 1], vec![1, 0]]);
        assert_eq!(
            p,
            vec![BigInt::from(-1), BigInt::from(-1), BigInt::from(1)]
        );
    }

    #[test]
    fn super_eigenvector_bounds_growth() {
        let adj = vec![vec![1, 1], vec![1, 0]];
        let (x, mu) = super_eigenvector(&adj, 64);
        assert!(x.iter().all(|v| v > &BigInt::zero()));
        // Check A x <= mu x exactly.
        for i in 0..2 {
            let mut row = BigRational::zero();
            for j in 0..2 {
                row += BigRational::from_integer(BigInt::from(adj[i][j]) * &x[j]);
            }
            assert!(row <= &mu * BigRational::from_integer(x[i].clone()));
        }
        // mu is close to the golden ratio from above.
        let m = rational_to_f64(&mu);
        assert!(m >= 1.618033988749894 && m < 1.62);
    }

    #[test]
    fn reducible_spectral_enclosure_takes_component_maximum() {
        // One fixed loop and a separate full-shift-like double loop.
        let adj = vec![vec![1, 0], vec![0, 2]];
        let e = spectral_enclosure(&adj, 1e-9).unwrap();
        assert!((rational_to_f64(&e.lambda_lo) - 2.0).abs() < 1e-9);
        assert!((rational_to_f64(&e.lambda_hi) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn sturm_counts_roots_of_wilkinson_like_product() {
        // p = (x-1)(x-2)(x-3): roots 1, 2, 3.
        let p: Poly = vec![
            BigRational::from_integer(BigInt::from(-6)),
            BigRational::from_integer(BigInt::from(11)),
            BigRational::from_integer(BigInt::from(-6)),
            BigRational::from_integer(BigInt::from(1)),
        ];
        let seq = sturm_sequence(&p);
        let r = |v: i64| BigRational::from_integer(BigInt::from(v));
        assert_eq!(count_roots(&seq, &r(0), &r(4)), 3);
        assert_eq!(count_roots(&seq, &r(1), &r(3)), 2); // half-open: excludes 1
        assert_eq!(count_roots(&seq, &r(2), &r(4)), 1);
    }
}
