//! Deterministic automata that read a shift's language left to right.
//!
//! Every base used by the crate (forbidden words, occurrence caps, one-step
//! symbol matrices) compiles to one of these. A state summarizes the part of
//! the history that can still influence admissibility, so counting and the
//! tree dynamic programs never look at whole words.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::perron::perron_bracket;
use crate::words::Symbol;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanguageAutomaton {
    alphabet: usize,
    delta: Vec<Option<u32>>,
    initial: usize,
}

impl LanguageAutomaton {
    /// States are the last `L - 1` symbols read (fewer near the start), where
    /// `L` is the longest forbidden word.
    pub fn from_forbidden(alphabet: usize, forbidden: &[Vec<Symbol>]) -> Self {
        let keep = forbidden.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1);
        let mut ids: HashMap<Vec<Symbol>, usize> = HashMap::new();
        let mut states: Vec<Vec<Symbol>> = Vec::new();
        let mut queue = VecDeque::new();
        ids.insert(Vec::new(), 0);
        states.push(Vec::new());
        queue.push_back(0usize);
        let mut delta: Vec<Option<u32>> = Vec::new();
        while let Some(q) = queue.pop_front() {
            if delta.len() < (q + 1) * alphabet {
                delta.resize((q + 1) * alphabet, None);
            }
            for c in 0..alphabet {
                let mut next = states[q].clone();
                next.push(c as Symbol);
                if forbidden.iter().any(|f| next.ends_with(f)) {
                    continue;
                }
                if next.len() > keep {
                    next.drain(..next.len() - keep);
                }
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = states.len();
                        ids.insert(next.clone(), id);
                        states.push(next);
                        queue.push_back(id);
                        id
                    }
                };
                delta[q * alphabet + c] = Some(id as u32);
            }
        }
        delta.resize(states.len() * alphabet, None);
        LanguageAutomaton {
            alphabet,
            delta,
            initial: 0,
        }
    }

    /// State `i` means `i` occurrences of `symbol` so far.
    pub fn at_most_k(alphabet: usize, symbol: Symbol, k: usize) -> Self {
        let mut delta = vec![None; (k + 1) * alphabet];
        for q in 0..=k {
            for c in 0..alphabet {
                let next = if c == symbol as usize { q + 1 } else { q };
                if next <= k {
                    delta[q * alphabet + c] = Some(next as u32);
                }
            }
        }
        LanguageAutomaton {
            alphabet,
            delta,
            initial: 0,
        }
    }

    /// State 0 is the empty history; state `1 + s` means the last symbol was `s`.
    pub fn one_step(rows: &[Vec<bool>]) -> Self {
        let r = rows.len();
        let mut delta = vec![None; (r + 1) * r];
        for c in 0..r {
            delta[c] = Some(1 + c as u32);
        }
        for (s, row) in rows.iter().enumerate() {
            for (c, &ok) in row.iter().enumerate() {
                if ok {
                    delta[(1 + s) * r + c] = Some(1 + c as u32);
                }
            }
        }
        LanguageAutomaton {
            alphabet: r,
            delta,
            initial: 0,
        }
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len() / self.alphabet
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    #[inline]
    pub fn step(&self, state: usize, symbol: usize) -> Option<usize> {
        self.delta[state * self.alphabet + symbol].map(|s| s as usize)
    }

    pub fn run(&self, word: &[Symbol]) -> Option<usize> {
        word.iter()
            .try_fold(self.initial, |q, &c| self.step(q, c as usize))
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        self.run(word).is_some()
    }

    /// `[|B_0|, |B_1|, ..., |B_n|]`.
    pub fn count_words_upto(&self, n: usize) -> Vec<BigUint> {
        let states = self.num_states();
        let mut mass = vec![BigUint::zero(); states];
        mass[self.initial] = BigUint::one();
        let mut out = Vec::with_capacity(n + 1);
        out.push(BigUint::one());
        for _ in 0..n {
            let mut next = vec![BigUint::zero(); states];
            for (q, m) in mass.iter().enumerate() {
                if m.is_zero() {
                    continue;
                }
                for c in 0..self.alphabet {
                    if let Some(t) = self.step(q, c) {
                        next[t] += m;
                    }
                }
            }
            mass = next;
            out.push(mass.iter().sum());
        }
        out
    }

    pub fn count_words(&self, n: usize) -> BigUint {
        self.count_words_upto(n).pop().expect("nonempty")
    }

    /// All accepted words of length `n` in lexicographic order.
    pub fn words(&self, n: usize) -> Vec<Vec<Symbol>> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        self.extend_words(self.initial, n, &mut current, &mut out);
        out
    }

    fn extend_words(
        &self,
        q: usize,
        remaining: usize,
        current: &mut Vec<Symbol>,
        out: &mut Vec<Vec<Symbol>>,
    ) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for c in 0..self.alphabet {
            if let Some(t) = self.step(q, c) {
                current.push(c as Symbol);
                self.extend_words(t, remaining - 1, current, out);
                current.pop();
            }
        }
    }

    /// Symbol-counting transfer matrix between states.
    pub fn transfer_matrix(&self) -> Vec<Vec<f64>> {
        let states = self.num_states();
        let mut m = vec![vec![0.0; states]; states];
        for (q, row) in m.iter_mut().enumerate() {
            for c in 0..self.alphabet {
                if let Some(t) = self.step(q, c) {
                    row[t] += 1.0;
                }
            }
        }
        m
    }

    /// A lower bound on the entropy of the language (natural log), from the
    /// Collatz–Wielandt bracket of the transfer matrix. Zero-entropy languages
    /// report 0.
    pub fn entropy_lower_bound(&self) -> f64 {
        let b = perron_bracket(&self.transfer_matrix());
        if b.lower <= 1.0 {
            0.0
        } else {
            b.lower.ln()
        }
    }

    /// Shortest length `≤ horizon` at which lowering a symbol of an accepted
    /// word leaves the language, found by a search over pairs of runs.
    pub fn first_non_hereditary_length(&self, horizon: usize) -> Option<usize> {
        let r = self.alphabet_size();
        let start = (self.initial, self.initial);
        let mut seen: HashSet<(usize, usize)> = HashSet::from([start]);
        let mut frontier = vec![start];
        for length in 1..=horizon {
            let mut next = Vec::new();
            for &(q, p) in &frontier {
                for a in 0..r {
                    let Some(q2) = self.step(q, a) else { continue };
                    for b in 0..=a {
                        match self.step(p, b) {
                            None => return Some(length),
                            Some(p2) => {
                                if seen.insert((q2, p2)) {
                                    next.push((q2, p2));
                                }
                            }
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_mean_states() {
        let a = LanguageAutomaton::from_forbidden(2, &[vec![1, 1]]);
        assert_eq!(a.num_states(), 3);
        assert!(a.accepts(&[1, 0, 1, 0, 0, 1]));
        assert!(!a.accepts(&[0, 1, 1]));
        let counts: Vec<u32> = a
            .count_words_upto(6)
            .iter()
            .map(|c| c.try_into().unwrap())
            .collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 8, 13, 21]);
    }

    #[test]
    fn occurrence_cap() {
        let a = LanguageAutomaton::at_most_k(2, 1, 1);
        assert_eq!(a.count_words(10), BigUint::from(11u32));
        assert_eq!(a.entropy_lower_bound(), 0.0);
    }

    #[test]
    fn hereditary_search() {
        let golden = LanguageAutomaton::from_forbidden(2, &[vec![1, 1]]);
        assert_eq!(golden.first_non_hereditary_length(10), None);
        let zero_zero = LanguageAutomaton::from_forbidden(2, &[vec![0, 0]]);
        assert_eq!(zero_zero.first_non_hereditary_length(10), Some(2));
        let upward = LanguageAutomaton::one_step(&[vec![true, true], vec![false, true]]);
        assert_eq!(upward.first_non_hereditary_length(10), Some(2));
    }

    #[test]
    fn one_step_matrix() {
        let a = LanguageAutomaton::one_step(&[vec![true, true], vec![false, true]]);
        assert!(a.accepts(&[0, 0, 1, 1]));
        assert!(!a.accepts(&[1, 0]));
        assert_eq!(a.count_words(4), BigUint::from(5u32));
    }

    #[test]
    fn golden_mean_entropy_bound() {
        let a = LanguageAutomaton::from_forbidden(2, &[vec![1, 1]]);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let h = a.entropy_lower_bound();
        assert!(h <= phi.ln() + 1e-12);
        assert!(phi.ln() - h < 1e-8);
    }
}
