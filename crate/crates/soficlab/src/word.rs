//! Alphabets, words, and primitive words (necklace representatives).

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Index into an [`Alphabet`].
pub type Symbol = u32;

/// Names starting with this prefix are reserved for machine-generated
/// symbols and vertex names; user input must not use it.
pub const RESERVED_PREFIX: char = '^';

/// Finite ordered alphabet. Symbols are addressed by index; names are
/// unique, nonempty, and user-supplied names never start with `^`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Alphabet {
    symbols: Vec<String>,
    #[serde(skip)]
    index: BTreeMap<String, Symbol>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        for name in &symbols {
            if name.starts_with(RESERVED_PREFIX) {
                return Err(Error::Alphabet(format!(
                    "symbol {name:?} uses the reserved prefix {RESERVED_PREFIX:?}"
                )));
            }
        }
        Self::with_generated(symbols)
    }

    /// Like [`Alphabet::new`] but permits the reserved prefix. Used by
    /// constructions that must mint symbols distinct from all user symbols.
    pub(crate) fn with_generated<S: Into<String>>(
        symbols: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::Alphabet("alphabet is empty".into()));
        }
        let mut index = BTreeMap::new();
        for (i, name) in symbols.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::Alphabet("empty symbol name".into()));
            }
            if index.insert(name.clone(), i as Symbol).is_some() {
                return Err(Error::Alphabet(format!("duplicate symbol {name:?}")));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.symbols[s as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.symbols
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        self.index.get(name).copied()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        0..self.symbols.len() as Symbol
    }

    /// Mints a name carrying the reserved prefix that collides with no
    /// existing symbol.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut candidate = format!("{RESERVED_PREFIX}{base}");
        let mut counter = 0u32;
        while self.index.contains_key(&candidate) {
            counter += 1;
            candidate = format!("{RESERVED_PREFIX}{base}{counter}");
        }
        candidate
    }

    /// Extends the alphabet with new (possibly generated) names, returning
    /// the extended alphabet. Existing symbol indices are preserved.
    pub(crate) fn extend<S: Into<String>>(
        &self,
        extra: impl IntoIterator<Item = S>,
    ) -> Result<Alphabet> {
        let mut symbols = self.symbols.clone();
        symbols.extend(extra.into_iter().map(Into::into));
        Self::with_generated(symbols)
    }
}

/// Finite word: a sequence of symbol indices into some alphabet.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn repeat(&self, k: usize) -> Word {
        let mut v = Vec::with_capacity(self.0.len() * k);
        for _ in 0..k {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }

    pub fn rotation(&self, r: usize) -> Word {
        let n = self.0.len();
        if n == 0 {
            return self.clone();
        }
        let r = r % n;
        let mut v = Vec::with_capacity(n);
        v.extend_from_slice(&self.0[r..]);
        v.extend_from_slice(&self.0[..r]);
        Word(v)
    }

    /// A word is primitive when it is not a proper power of a shorter word.
    pub fn is_primitive(&self) -> bool {
        let n = self.0.len();
        if n == 0 {
            return false;
        }
        for d in 1..n {
            if n % d == 0 && (0..n).all(|i| self.0[i] == self.0[i % d]) {
                return false;
            }
        }
        true
    }

    /// Lexicographically least rotation.
    pub fn least_rotation(&self) -> Word {
        let n = self.0.len();
        if n == 0 {
            return self.clone();
        }
        let mut best = 0usize;
        for r in 1..n {
            for i in 0..n {
                let a = self.0[(r + i) % n];
                let b = self.0[(best + i) % n];
                if a != b {
                    if a < b {
                        best = r;
                    }
                    break;
                }
            }
        }
        self.rotation(best)
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        let parts: Vec<&str> = self.0.iter().map(|&s| alphabet.name(s)).collect();
        if parts.iter().all(|p| p.chars().count() == 1) {
            parts.concat()
        } else {
            parts.join(",")
        }
    }

    /// Parses a word over `alphabet`. Accepts comma-separated symbol names,
    /// and when every symbol of the alphabet is a single character also a
    /// plain character string.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Word> {
        let lookup = |name: &str| {
            alphabet.lookup(name).ok_or_else(|| {
                Error::Precondition(format!("symbol {name:?} is not in the alphabet"))
            })
        };
        if text.contains(',') {
            let mut v = Vec::new();
            for part in text.split(',') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                v.push(lookup(part)?);
            }
            return Ok(Word(v));
        }
        if alphabet.lookup(text).is_some() {
            return Ok(Word(vec![alphabet.lookup(text).unwrap()]));
        }
        if alphabet.names().iter().all(|n| n.chars().count() == 1) {
            let mut v = Vec::new();
            for ch in text.chars() {
                v.push(lookup(&ch.to_string())?);
            }
            return Ok(Word(v));
        }
        Err(Error::Precondition(format!(
            "cannot parse word {text:?}: use comma-separated symbol names"
        )))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Primitive word in canonical form: the lexicographically least rotation.
/// One `PrimitiveWord` of length n stands for one full shift orbit of
/// least period n.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PrimitiveWord(Word);

impl PrimitiveWord {
    pub fn new(word: Word) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::Precondition("empty word is not primitive".into()));
        }
        if !word.is_primitive() {
            return Err(Error::Precondition(format!(
                "word {word} is a proper power, not primitive"
            )));
        }
        Ok(PrimitiveWord(word.least_rotation()))
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// All primitive necklace representatives (Lyndon words) of length exactly
/// `n` over `k` symbols, in lexicographic order. Errors when the ambient
/// word count `k^n` exceeds `budget`.
pub fn lyndon_words(k: usize, n: usize, budget: u64) -> Result<Vec<Word>> {
    if n == 0 || k == 0 {
        return Ok(Vec::new());
    }
    let mut total: u64 = 1;
    for _ in 0..n {
        total = total.saturating_mul(k as u64);
        if total > budget {
            return Err(Error::budget(
                format!("enumerating necklaces of length {n} over {k} symbols"),
                budget,
            ));
        }
    }
    let mut out = Vec::new();
    let mut w: Vec<Symbol> = vec![0];
    loop {
        if w.len() == n {
            out.push(Word(w.clone()));
        }
        // Duval: extend periodically to length n, trim maximal symbols,
        // increment the last remaining position.
        let mut x: Vec<Symbol> = (0..n).map(|i| w[i % w.len()]).collect();
        while x.last() == Some(&((k - 1) as Symbol)) {
            x.pop();
        }
        match x.last_mut() {
            None => break,
            Some(last) => *last += 1,
        }
        w = x;
    }
    Ok(out)
}

/// Knuth-Morris-Pratt matcher state machine for one pattern. `step` feeds a
/// symbol and returns the new number of matched symbols; a return value of
/// `pattern.len()` signals an occurrence ending at the fed symbol.
#[derive(Debug, Clone)]
pub struct Kmp {
    pattern: Vec<Symbol>,
    failure: Vec<usize>,
}

impl Kmp {
    pub fn new(pattern: &[Symbol]) -> Self {
        let mut failure = vec![0usize; pattern.len() + 1];
        let mut k = 0usize;
        for i in 1..pattern.len() {
            while k > 0 && pattern[i] != pattern[k] {
                k = failure[k];
            }
            if pattern[i] == pattern[k] {
                k += 1;
            }
            failure[i + 1] = k;
        }
        Kmp {
            pattern: pattern.to_vec(),
            failure,
        }
    }

    pub fn len(&self) -> usize {
        self.pattern.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pattern.is_empty()
    }

    /// Feeds one symbol from state `state` (number of matched symbols,
    /// 0..=len). A full match re-enters at its longest proper border, so
    /// overlapping occurrences are reported.
    pub fn step(&self, mut state: usize, symbol: Symbol) -> usize {
        if state == self.pattern.len() {
            state = self.failure[state];
        }
        while state > 0 && self.pattern[state] != symbol {
            state = self.failure[state];
        }
        if self.pattern[state] == symbol {
            state + 1
        } else {
            0
        }
    }

    /// True when `text` contains the pattern.
    pub fn occurs_in(&self, text: &[Symbol]) -> bool {
        let mut state = 0usize;
        for &s in text {
            state = self.step(state, s);
            if state == self.pattern.len() {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    #[test]
    fn alphabet_rejects_reserved_and_duplicates() {
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(["^x"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        let a = ab();
        assert_eq!(a.lookup("b"), Some(1));
        assert!(a.fresh_name("w").starts_with('^'));
    }

    #[test]
    fn primitivity_and_rotation() {
        assert!(Word(vec![0, 0, 1]).is_primitive());
        assert!(!Word(vec![0, 1, 0, 1]).is_primitive());
        assert!(!Word(vec![0, 0, 0]).is_primitive());
        assert_eq!(Word(vec![1, 0, 0]).least_rotation(), Word(vec![0, 0, 1]));
        let p = PrimitiveWord::new(Word(vec![1, 0])).unwrap();
        assert_eq!(p.word(), &Word(vec![0, 1]));
        assert!(PrimitiveWord::new(Word(vec![1, 0, 1, 0])).is_err());
    }

    #[test]
    fn lyndon_enumeration_counts() {
        // Primitive necklace counts over 2 symbols: 2, 1, 2, 3, 6, 9.
        let counts: Vec<usize> = (1..=6)
            .map(|n| lyndon_words(2, n, 1_000_000).unwrap().len())
            .collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6, 9]);
        // Over 3 symbols: 3, 3, 8, 18.
        let counts: Vec<usize> = (1..=4)
            .map(|n| lyndon_words(3, n, 1_000_000).unwrap().len())
            .collect();
        assert_eq!(counts, vec![3, 3, 8, 18]);
        // Every emitted word is primitive and canonical.
        for w in lyndon_words(2, 6, 1_000_000).unwrap() {
            assert!(w.is_primitive());
            assert_eq!(w, w.least_rotation());
        }
    }

    #[test]
    fn lyndon_budget_guard() {
        assert!(matches!(
            lyndon_words(10, 12, 1_000),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn word_parse_and_render() {
        let a = ab();
        let w = Word::parse("abba", &a).unwrap();
        assert_eq!(w, Word(vec![0, 1, 1, 0]));
        assert_eq!(w.render(&a), "abba");
        let multi = Alphabet::new(["x", "yy"]).unwrap();
        let w = Word::parse("x,yy,x", &multi).unwrap();
        assert_eq!(w, Word(vec![0, 1, 0]));
        assert_eq!(w.render(&multi), "x,yy,x");
        assert!(Word::parse("zz", &a).is_err());
    }

    #[test]
    fn kmp_overlapping_occurrences() {
        // Pattern "aa" in "aaa": occurrences at positions 1 and 2.
        let k = Kmp::new(&[0, 0]);
        let mut state = 0;
        let mut hits = 0;
        for &s in &[0, 0, 0] {
            state = k.step(state, s);
            if state == 2 {
                hits += 1;
            }
        }
        assert_eq!(hits, 2);
        assert!(k.occurs_in(&[1, 0, 0, 1]));
        assert!(!k.occurs_in(&[1, 0, 1, 0]));
    }
}
