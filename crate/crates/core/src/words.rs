//! One-dimensional shifts over a finite ordered alphabet.
//!
//! A shift is presented either by a finite list of forbidden words, as the
//! full shift, or as the "at most `k` copies of symbol `a`" family, which is
//! not of finite type and has zero entropy. All quantities here are functions
//! of the block language `B_n(X)`; the shift map itself is never built.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::automaton::LanguageAutomaton;
use crate::bigmath::ln_big;
use crate::error::{Result, ShiftError};
use crate::limits::Limits;
use crate::search::first_hereditary_set;

pub type Symbol = u8;

/// Symbols `0..r` with their natural order. Serialization writes symbols as
/// single digits, so `r` is limited to 10.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Alphabet(u8);

impl Alphabet {
    pub const BINARY: Alphabet = Alphabet(2);

    pub fn new(size: usize) -> Result<Self> {
        if (2..=10).contains(&size) {
            Ok(Alphabet(size as u8))
        } else {
            Err(ShiftError::InvalidSpec(format!(
                "alphabet size must be in 2..=10, got {size}"
            )))
        }
    }

    pub fn size(self) -> usize {
        self.0 as usize
    }

    pub fn contains(self, symbol: Symbol) -> bool {
        symbol < self.0
    }
}

impl TryFrom<usize> for Alphabet {
    type Error = ShiftError;
    fn try_from(size: usize) -> Result<Self> {
        Alphabet::new(size)
    }
}

impl From<Alphabet> for usize {
    fn from(a: Alphabet) -> usize {
        a.size()
    }
}

/// A finite word, written as a string of digits.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }
}

impl FromStr for Word {
    type Err = ShiftError;
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|ch| {
                ch.to_digit(10)
                    .map(|d| d as Symbol)
                    .ok_or_else(|| ShiftError::InvalidSpec(format!("non-digit symbol {ch:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShiftKind {
    /// Words avoiding every listed factor.
    Forbidden(Vec<Word>),
    Full,
    /// Words with at most `count` occurrences of `symbol`.
    AtMostK { symbol: Symbol, count: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ShiftSpec1DRepr", into = "ShiftSpec1DRepr")]
pub struct ShiftSpec1D {
    alphabet: Alphabet,
    kind: ShiftKind,
}

impl ShiftSpec1D {
    pub fn new(alphabet: Alphabet, kind: ShiftKind) -> Result<Self> {
        match &kind {
            ShiftKind::Forbidden(words) => {
                if words.is_empty() {
                    return Err(ShiftError::InvalidSpec(
                        "forbidden list must be nonempty (use the full shift instead)".into(),
                    ));
                }
                for w in words {
                    if w.is_empty() {
                        return Err(ShiftError::InvalidSpec("empty forbidden word".into()));
                    }
                    if let Some(&s) = w.symbols().iter().find(|&&s| !alphabet.contains(s)) {
                        return Err(ShiftError::InvalidSpec(format!(
                            "symbol {s} in forbidden word {w} is outside the alphabet"
                        )));
                    }
                }
            }
            ShiftKind::Full => {}
            ShiftKind::AtMostK { symbol, .. } => {
                if !alphabet.contains(*symbol) {
                    return Err(ShiftError::InvalidSpec(format!(
                        "symbol {symbol} is outside the alphabet"
                    )));
                }
            }
        }
        Ok(ShiftSpec1D { alphabet, kind })
    }

    pub fn full(r: usize) -> Result<Self> {
        ShiftSpec1D::new(Alphabet::new(r)?, ShiftKind::Full)
    }

    pub fn forbidden(r: usize, words: &[&str]) -> Result<Self> {
        let words = words.iter().map(|w| w.parse()).collect::<Result<Vec<Word>>>()?;
        ShiftSpec1D::new(Alphabet::new(r)?, ShiftKind::Forbidden(words))
    }

    pub fn at_most_k(r: usize, symbol: Symbol, count: usize) -> Result<Self> {
        ShiftSpec1D::new(Alphabet::new(r)?, ShiftKind::AtMostK { symbol, count })
    }

    /// Binary sequences without two adjacent 1s.
    pub fn golden_mean() -> Self {
        ShiftSpec1D::forbidden(2, &["11"]).expect("valid")
    }

    /// The binary shift whose only point is `0^∞`.
    pub fn zero_point() -> Self {
        ShiftSpec1D::forbidden(2, &["1"]).expect("valid")
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn kind(&self) -> &ShiftKind {
        &self.kind
    }

    /// Longest forbidden word, or 1 when there is none.
    pub fn max_forbidden_len(&self) -> usize {
        match &self.kind {
            ShiftKind::Forbidden(ws) => ws.iter().map(Word::len).max().unwrap_or(1),
            _ => 1,
        }
    }

    pub fn automaton(&self) -> LanguageAutomaton {
        let r = self.alphabet.size();
        match &self.kind {
            ShiftKind::Forbidden(ws) => {
                let raw: Vec<Vec<Symbol>> = ws.iter().map(|w| w.0.clone()).collect();
                LanguageAutomaton::from_forbidden(r, &raw)
            }
            ShiftKind::Full => LanguageAutomaton::from_forbidden(r, &[]),
            ShiftKind::AtMostK { symbol, count } => {
                LanguageAutomaton::at_most_k(r, *symbol, *count)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum KindTag {
    Forbidden,
    Full,
    AtMostK,
}

#[derive(Serialize, Deserialize)]
struct ShiftSpec1DRepr {
    alphabet: usize,
    kind: KindTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    forbidden: Option<Vec<Word>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    symbol: Option<Symbol>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    count: Option<usize>,
}

impl TryFrom<ShiftSpec1DRepr> for ShiftSpec1D {
    type Error = ShiftError;
    fn try_from(r: ShiftSpec1DRepr) -> Result<Self> {
        let alphabet = Alphabet::new(r.alphabet)?;
        let kind = match r.kind {
            KindTag::Full => ShiftKind::Full,
            KindTag::Forbidden => ShiftKind::Forbidden(r.forbidden.ok_or_else(|| {
                ShiftError::InvalidSpec("kind \"forbidden\" needs a \"forbidden\" list".into())
            })?),
            KindTag::AtMostK => ShiftKind::AtMostK {
                symbol: r.symbol.ok_or_else(|| {
                    ShiftError::InvalidSpec("kind \"at_most_k\" needs \"symbol\"".into())
                })?,
                count: r.count.ok_or_else(|| {
                    ShiftError::InvalidSpec("kind \"at_most_k\" needs \"count\"".into())
                })?,
            },
        };
        ShiftSpec1D::new(alphabet, kind)
    }
}

impl From<ShiftSpec1D> for ShiftSpec1DRepr {
    fn from(s: ShiftSpec1D) -> Self {
        let alphabet = s.alphabet.size();
        match s.kind {
            ShiftKind::Full => ShiftSpec1DRepr {
                alphabet,
                kind: KindTag::Full,
                forbidden: None,
                symbol: None,
                count: None,
            },
            ShiftKind::Forbidden(ws) => ShiftSpec1DRepr {
                alphabet,
                kind: KindTag::Forbidden,
                forbidden: Some(ws),
                symbol: None,
                count: None,
            },
            ShiftKind::AtMostK { symbol, count } => ShiftSpec1DRepr {
                alphabet,
                kind: KindTag::AtMostK,
                forbidden: None,
                symbol: Some(symbol),
                count: Some(count),
            },
        }
    }
}

/// A set of positions in ℕ (1-based), possibly infinite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PositionSet {
    Finite(BTreeSet<usize>),
    /// Positions `p` with `p mod period` in `residues`.
    Periodic { period: usize, residues: BTreeSet<usize> },
    All,
}

impl PositionSet {
    pub fn empty() -> Self {
        PositionSet::Finite(BTreeSet::new())
    }

    /// `{1, 3, 5, ...}`
    pub fn odd() -> Self {
        PositionSet::Periodic {
            period: 2,
            residues: [1].into(),
        }
    }

    pub fn contains(&self, position: usize) -> bool {
        match self {
            PositionSet::Finite(s) => s.contains(&position),
            PositionSet::Periodic { period, residues } => {
                *period > 0 && residues.contains(&(position % period))
            }
            PositionSet::All => position >= 1,
        }
    }

    /// `S ∩ [1, n]`.
    pub fn window(&self, n: usize) -> BTreeSet<usize> {
        (1..=n).filter(|&p| self.contains(p)).collect()
    }
}

/// `B_n(X)` in lexicographic order.
pub fn blocks_1d(x: &ShiftSpec1D, n: usize) -> Result<Vec<Word>> {
    blocks_1d_capped(x, n, Limits::global().enumeration)
}

pub fn blocks_1d_capped(x: &ShiftSpec1D, n: usize, cap: u64) -> Result<Vec<Word>> {
    let aut = x.automaton();
    let count = aut.count_words(n);
    if count > BigUint::from(cap) {
        return Err(ShiftError::cap(count, cap));
    }
    Ok(aut.words(n).into_iter().map(Word).collect())
}

/// `|B_n(X)|` without materializing the words.
pub fn count_blocks_1d(x: &ShiftSpec1D, n: usize) -> BigUint {
    x.automaton().count_words(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EntropyEstimate {
    /// `ln |B_n| / n`
    pub raw: f64,
    /// `min_{1 ≤ m ≤ n} ln |B_m| / m`, an upper bound on `h(X)`.
    pub fekete_upper: f64,
}

pub fn entropy_est_1d(x: &ShiftSpec1D, n: usize) -> Result<EntropyEstimate> {
    if n == 0 {
        return Err(ShiftError::Domain("entropy estimate needs n >= 1".into()));
    }
    let counts = x.automaton().count_words_upto(n);
    let rate = |m: usize| ln_big(&counts[m]) / m as f64;
    let fekete_upper = (1..=n).map(rate).fold(f64::INFINITY, f64::min);
    Ok(EntropyEstimate {
        raw: rate(n),
        fekete_upper,
    })
}

/// Certified lower bound on `h(X)` (natural log) from the Perron root of the
/// shift's transfer matrix.
pub fn entropy_lower_bound_1d(x: &ShiftSpec1D) -> f64 {
    x.automaton().entropy_lower_bound()
}

/// Length-`n` words dominated coordinatewise by some word of `B_n(X)`.
pub fn hereditary_closure(x: &ShiftSpec1D, n: usize) -> Result<Vec<Word>> {
    let cap = Limits::global().enumeration;
    let blocks = blocks_1d_capped(x, n, cap)?;
    let mut seen: HashSet<Vec<Symbol>> = blocks.iter().map(|w| w.0.clone()).collect();
    let mut stack: Vec<Vec<Symbol>> = seen.iter().cloned().collect();
    while let Some(w) = stack.pop() {
        for i in 0..w.len() {
            if w[i] > 0 {
                let mut lower = w.clone();
                lower[i] -= 1;
                if seen.insert(lower.clone()) {
                    if seen.len() as u64 > cap {
                        return Err(ShiftError::cap(seen.len(), cap));
                    }
                    stack.push(lower);
                }
            }
        }
    }
    let mut out: Vec<Word> = seen.into_iter().map(Word).collect();
    out.sort();
    Ok(out)
}

/// True iff the closure and the language agree at every length `1..=n`.
pub fn is_hereditary_upto(x: &ShiftSpec1D, n: usize) -> Result<bool> {
    for m in 1..=n {
        if hereditary_closure(x, m)? != blocks_1d(x, m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether every assignment on `positions` (0-based) occurs in `words`.
pub(crate) fn realizes_all(words: &[Vec<Symbol>], positions: &[usize], r: usize) -> bool {
    let needed = match (r as u64).checked_pow(positions.len() as u32) {
        Some(v) if v <= 1 << 26 => v as usize,
        _ => return false,
    };
    if words.len() < needed {
        return false;
    }
    let mut seen = vec![false; needed];
    let mut hits = 0;
    for w in words {
        let key = positions.iter().fold(0usize, |acc, &p| acc * r + w[p] as usize);
        if !seen[key] {
            seen[key] = true;
            hits += 1;
            if hits == needed {
                return true;
            }
        }
    }
    false
}

/// Whether `S ⊆ [1, ℓ]` is independent for `X` at window length `ℓ`.
pub fn is_indep_1d(x: &ShiftSpec1D, s: &BTreeSet<usize>, len: usize) -> Result<bool> {
    if let Some(&p) = s.iter().find(|&&p| p == 0 || p > len) {
        return Err(ShiftError::Domain(format!("position {p} outside [1, {len}]")));
    }
    let words = x.automaton().words_capped(len, Limits::global().enumeration)?;
    let positions: Vec<usize> = s.iter().map(|p| p - 1).collect();
    Ok(realizes_all(&words, &positions, x.alphabet.size()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaxIndependence {
    /// `J_ℓ`
    pub j: usize,
    /// Lexicographically smallest independent set of size `J_ℓ` (1-based).
    pub witness: BTreeSet<usize>,
    /// `min_{m ≤ ℓ} J_m / m`, an upper bound on `lim J_ℓ / ℓ`.
    #[serde(serialize_with = "crate::numfmt::ser_ratio")]
    pub fekete_limit_est: Rational64,
}

pub fn max_indep_j(x: &ShiftSpec1D, len: usize) -> Result<MaxIndependence> {
    max_indep_for(&x.automaton(), len)
}

/// `[J_1, ..., J_ℓ]` for an arbitrary base language.
pub(crate) fn max_indep_profile(aut: &LanguageAutomaton, len: usize) -> Result<Vec<usize>> {
    let mut profile = Vec::with_capacity(len);
    let mut prev = 0;
    for m in 1..=len {
        let (j, _) = largest_independent(aut, m, prev + 1)?;
        profile.push(j);
        prev = j;
    }
    Ok(profile)
}

pub(crate) fn max_indep_for(aut: &LanguageAutomaton, len: usize) -> Result<MaxIndependence> {
    if len == 0 {
        return Err(ShiftError::Domain("window length must be >= 1".into()));
    }
    let mut best_ratio: Option<Rational64> = None;
    let mut prev = 0;
    let mut last = (0, Vec::new());
    for m in 1..=len {
        // J_m <= J_{m-1} + 1 since prefixes of admissible words are admissible
        last = largest_independent(aut, m, prev + 1)?;
        prev = last.0;
        let ratio = Rational64::new(last.0 as i64, m as i64);
        best_ratio = Some(best_ratio.map_or(ratio, |b| b.min(ratio)));
    }
    Ok(MaxIndependence {
        j: last.0,
        witness: last.1.into_iter().map(|p| p + 1).collect(),
        fekete_limit_est: best_ratio.expect("len >= 1"),
    })
}

fn largest_independent(
    aut: &LanguageAutomaton,
    len: usize,
    upper: usize,
) -> Result<(usize, Vec<usize>)> {
    let words = aut.words_capped(len, Limits::global().enumeration)?;
    if words.is_empty() {
        return Err(ShiftError::EmptyLanguage);
    }
    let r = aut.alphabet_size();
    for k in (1..=upper.min(len)).rev() {
        if let Some(set) = first_hereditary_set(len, k, |s| realizes_all(&words, s, r)) {
            return Ok((k, set));
        }
    }
    Ok((0, Vec::new()))
}

impl LanguageAutomaton {
    pub(crate) fn words_capped(&self, n: usize, cap: u64) -> Result<Vec<Vec<Symbol>>> {
        let count = self.count_words(n);
        if count > BigUint::from(cap) {
            return Err(ShiftError::cap(count, cap));
        }
        Ok(self.words(n))
    }
}

/// `J_m / m` as a float, for reports.
pub fn j_ratio(j: usize, m: usize) -> f64 {
    Rational64::new(j as i64, m as i64).to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(ws: &[Word]) -> Vec<String> {
        ws.iter().map(|w| w.to_string()).collect()
    }

    /// Exhaustive oracle: every word over the alphabet, filtered by substring search.
    fn brute_blocks(r: usize, forbidden: &[&str], n: usize) -> Vec<String> {
        let mut out = Vec::new();
        for code in 0..(r as u64).pow(n as u32) {
            let mut digits = vec![0u64; n];
            let mut c = code;
            for d in digits.iter_mut().rev() {
                *d = c % r as u64;
                c /= r as u64;
            }
            let s: String = digits.iter().map(|d| d.to_string()).collect();
            if !forbidden.iter().any(|f| s.contains(f)) {
                out.push(s);
            }
        }
        out
    }

    #[test]
    fn golden_mean_blocks() {
        let x = ShiftSpec1D::golden_mean();
        assert_eq!(
            strings(&blocks_1d(&x, 3).unwrap()),
            vec!["000", "001", "010", "100", "101"]
        );
        for n in 0..=10 {
            assert_eq!(strings(&blocks_1d(&x, n).unwrap()), brute_blocks(2, &["11"], n));
        }
    }

    #[test]
    fn small_languages() {
        assert_eq!(blocks_1d(&ShiftSpec1D::full(2).unwrap(), 2).unwrap().len(), 4);
        let alt = ShiftSpec1D::forbidden(2, &["00", "11"]).unwrap();
        assert_eq!(strings(&blocks_1d(&alt, 3).unwrap()), vec!["010", "101"]);
        let empty = blocks_1d(&ShiftSpec1D::golden_mean(), 0).unwrap();
        assert_eq!(empty, vec![Word::default()]);
        let ternary = ShiftSpec1D::forbidden(3, &["12", "2"]).unwrap();
        for n in 0..=6 {
            assert_eq!(
                strings(&blocks_1d(&ternary, n).unwrap()),
                brute_blocks(3, &["12", "2"], n)
            );
        }
    }

    #[test]
    fn cap_is_enforced() {
        let x = ShiftSpec1D::full(2).unwrap();
        assert!(matches!(
            blocks_1d_capped(&x, 5, 31),
            Err(ShiftError::CapExceeded { .. })
        ));
        assert_eq!(blocks_1d_capped(&x, 5, 32).unwrap().len(), 32);
    }

    #[test]
    fn entropy_examples() {
        let full = entropy_est_1d(&ShiftSpec1D::full(2).unwrap(), 7).unwrap();
        assert!((full.raw - 2f64.ln()).abs() < 1e-12);
        assert!((full.fekete_upper - 2f64.ln()).abs() < 1e-12);
        let gm = entropy_est_1d(&ShiftSpec1D::golden_mean(), 3).unwrap();
        assert!((gm.raw - 5f64.ln() / 3.0).abs() < 1e-12);
        assert!((gm.raw - 0.5365).abs() < 1e-4);
        let cap = entropy_est_1d(&ShiftSpec1D::at_most_k(2, 1, 1).unwrap(), 10).unwrap();
        assert!((cap.raw - 11f64.ln() / 10.0).abs() < 1e-12);
        let later = entropy_est_1d(&ShiftSpec1D::at_most_k(2, 1, 1).unwrap(), 400).unwrap();
        assert!(later.raw < 0.02);
        assert!(entropy_est_1d(&ShiftSpec1D::golden_mean(), 0).is_err());
    }

    #[test]
    fn closure_examples() {
        let full = ShiftSpec1D::full(2).unwrap();
        assert_eq!(hereditary_closure(&full, 2).unwrap().len(), 4);
        let gm = ShiftSpec1D::golden_mean();
        assert_eq!(hereditary_closure(&gm, 4).unwrap(), blocks_1d(&gm, 4).unwrap());
        assert_eq!(blocks_1d(&gm, 4).unwrap().len(), 8);
        let no01 = ShiftSpec1D::forbidden(2, &["01"]).unwrap();
        assert_eq!(
            strings(&hereditary_closure(&no01, 2).unwrap()),
            vec!["00", "01", "10", "11"]
        );
        assert!(is_hereditary_upto(&gm, 6).unwrap());
        assert!(!is_hereditary_upto(&no01, 2).unwrap());
        assert!(is_hereditary_upto(&full, 10).unwrap());
        assert!(is_hereditary_upto(&ShiftSpec1D::at_most_k(2, 1, 2).unwrap(), 6).unwrap());
        assert!(!is_hereditary_upto(&ShiftSpec1D::at_most_k(2, 0, 1).unwrap(), 3).unwrap());
    }

    #[test]
    fn independence_examples() {
        let gm = ShiftSpec1D::golden_mean();
        assert!(is_indep_1d(&gm, &[1, 3].into(), 3).unwrap());
        assert!(!is_indep_1d(&gm, &[1, 2].into(), 2).unwrap());
        assert!(is_indep_1d(&gm, &BTreeSet::new(), 4).unwrap());
        assert!(is_indep_1d(&gm, &[4].into(), 3).is_err());
    }

    #[test]
    fn max_independence_examples() {
        let full = max_indep_j(&ShiftSpec1D::full(2).unwrap(), 5).unwrap();
        assert_eq!(full.j, 5);
        assert_eq!(full.witness, (1..=5).collect());
        assert_eq!(full.fekete_limit_est, Rational64::from_integer(1));
        let gm = max_indep_j(&ShiftSpec1D::golden_mean(), 4).unwrap();
        assert_eq!(gm.j, 2);
        assert_eq!(gm.witness, [1, 3].into());
        assert_eq!(gm.fekete_limit_est, Rational64::new(1, 2));
        let cap = max_indep_j(&ShiftSpec1D::at_most_k(2, 1, 1).unwrap(), 6).unwrap();
        assert_eq!(cap.j, 1);
        assert_eq!(cap.fekete_limit_est, Rational64::new(1, 6));
    }

    #[test]
    fn periodic_positions() {
        let odd = PositionSet::odd();
        assert_eq!(odd.window(7), [1, 3, 5, 7].into());
        assert!(!PositionSet::empty().contains(1));
        assert!(PositionSet::All.contains(9));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"alphabet":2,"kind":"forbidden","forbidden":["11"]}"#;
        let x: ShiftSpec1D = serde_json::from_str(text).unwrap();
        assert_eq!(x, ShiftSpec1D::golden_mean());
        assert_eq!(serde_json::to_string(&x).unwrap(), text);
        let k: ShiftSpec1D =
            serde_json::from_str(r#"{"alphabet":2,"kind":"at_most_k","symbol":1,"count":1}"#)
                .unwrap();
        assert_eq!(k, ShiftSpec1D::at_most_k(2, 1, 1).unwrap());
        assert!(serde_json::from_str::<ShiftSpec1D>(r#"{"alphabet":2,"kind":"forbidden"}"#).is_err());
        assert!(serde_json::from_str::<ShiftSpec1D>(r#"{"alphabet":1,"kind":"full"}"#).is_err());
        assert!(serde_json::from_str::<ShiftSpec1D>(
            r#"{"alphabet":2,"kind":"forbidden","forbidden":["12"]}"#
        )
        .is_err());
    }
}
