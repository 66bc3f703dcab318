//! Tree-shifts on Markov-Cayley trees.
//!
//! A labeling of `Δ_n` belongs to the tree-shift when the labels along every
//! root-to-vertex path spell a word of the base language. The base is either
//! a one-dimensional shift (every path must lie in its language) or a
//! one-step symbol matrix (consecutive labels must be allowed by it). Both
//! compile to a [`LanguageAutomaton`], and every computation here is a
//! dynamic program over that automaton and the tree's generator types.

mod bip;
mod density;
mod independence;

pub use bip::{bip_search, BipSearch, BipWitness, SearchMode};
pub use density::{
    restrict, sink_lift, tree_density, EvenLevels, SinkLift, TreeDensity, VertexSource, WholeTree,
};
pub use independence::{is_indep_tree, max_independent_set, MaxIndependentSet};

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::automaton::LanguageAutomaton;
use crate::bigmath::ln_big;
use crate::error::{Result, ShiftError};
use crate::limits::{Limits, MAX_TRACKED_STATES};
use crate::trees::{format_bool_rows, parse_bool_rows, AdjacencyMatrix, TreeGeometry};
use crate::words::ShiftSpec1D;

/// A one-step symbol matrix `A`: label `b` may follow label `a` iff `A[a][b]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct SymbolMatrix {
    rows: Vec<Vec<bool>>,
}

impl TryFrom<Vec<String>> for SymbolMatrix {
    type Error = ShiftError;
    fn try_from(rows: Vec<String>) -> Result<Self> {
        SymbolMatrix::new(parse_bool_rows(&rows)?)
    }
}

impl From<SymbolMatrix> for Vec<String> {
    fn from(m: SymbolMatrix) -> Self {
        format_bool_rows(&m.rows)
    }
}

impl SymbolMatrix {
    pub fn new(rows: Vec<Vec<bool>>) -> Result<Self> {
        let r = rows.len();
        if !(2..=10).contains(&r) || rows.iter().any(|row| row.len() != r) {
            return Err(ShiftError::InvalidSpec(format!(
                "symbol matrix must be square with 2..=10 symbols, got {r} rows"
            )));
        }
        Ok(SymbolMatrix { rows })
    }

    pub fn from_strings(rows: &[&str]) -> Result<Self> {
        let owned: Vec<String> = rows.iter().map(|s| s.to_string()).collect();
        SymbolMatrix::new(parse_bool_rows(&owned)?)
    }

    /// `[[1,1],[0,1]]`: a 1 may never be followed by a 0.
    pub fn upward() -> Self {
        SymbolMatrix::from_strings(&["11", "01"]).expect("valid")
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<bool>] {
        &self.rows
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeBase {
    Shift(ShiftSpec1D),
    Matrix(SymbolMatrix),
}

impl TreeBase {
    pub fn alphabet_size(&self) -> usize {
        match self {
            TreeBase::Shift(x) => x.alphabet().size(),
            TreeBase::Matrix(a) => a.size(),
        }
    }

    pub fn automaton(&self) -> LanguageAutomaton {
        match self {
            TreeBase::Shift(x) => x.automaton(),
            TreeBase::Matrix(a) => LanguageAutomaton::one_step(&a.rows),
        }
    }
}

/// A validated tree-shift: geometry, base, and the compiled automaton.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TreeShiftRepr", into = "TreeShiftRepr")]
pub struct TreeShiftSpec {
    geometry: TreeGeometry,
    base: TreeBase,
    automaton: LanguageAutomaton,
}

#[derive(Serialize, Deserialize)]
struct TreeShiftRepr {
    tree: AdjacencyMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    base: Option<ShiftSpec1D>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<SymbolMatrix>,
}

impl TryFrom<TreeShiftRepr> for TreeShiftSpec {
    type Error = ShiftError;
    fn try_from(r: TreeShiftRepr) -> Result<Self> {
        let base = match (r.base, r.matrix) {
            (Some(x), None) => TreeBase::Shift(x),
            (None, Some(a)) => TreeBase::Matrix(a),
            _ => {
                return Err(ShiftError::InvalidSpec(
                    "tree-shift needs exactly one of `base` or `matrix`".into(),
                ))
            }
        };
        make_tree_shift(TreeGeometry::new(r.tree), base)
    }
}

impl From<TreeShiftSpec> for TreeShiftRepr {
    fn from(s: TreeShiftSpec) -> Self {
        let (base, matrix) = match s.base {
            TreeBase::Shift(x) => (Some(x), None),
            TreeBase::Matrix(a) => (None, Some(a)),
        };
        TreeShiftRepr {
            tree: s.geometry.matrix().clone(),
            base,
            matrix,
        }
    }
}

pub fn make_tree_shift(geometry: TreeGeometry, base: TreeBase) -> Result<TreeShiftSpec> {
    if let TreeBase::Matrix(a) = &base {
        if let Some(symbol) = a.rows.iter().position(|row| !row.iter().any(|&b| b)) {
            return Err(ShiftError::DeadSymbol { symbol });
        }
    }
    let automaton = base.automaton();
    // a word longer than the state count revisits a state, hence extends forever
    if automaton.count_words(automaton.num_states() + 1).is_zero() {
        return Err(ShiftError::EmptyBase);
    }
    Ok(TreeShiftSpec {
        geometry,
        base,
        automaton,
    })
}

impl TreeShiftSpec {
    pub fn new(tree: AdjacencyMatrix, base: TreeBase) -> Result<Self> {
        make_tree_shift(TreeGeometry::new(tree), base)
    }

    pub fn geometry(&self) -> &TreeGeometry {
        &self.geometry
    }

    pub fn base(&self) -> &TreeBase {
        &self.base
    }

    pub fn automaton(&self) -> &LanguageAutomaton {
        &self.automaton
    }

    pub fn alphabet_size(&self) -> usize {
        self.automaton.alphabet_size()
    }

    /// Generator types: `0..d` for a vertex ending in that generator and
    /// `d` for the root.
    pub(crate) fn root_type(&self) -> usize {
        self.geometry.d()
    }

    pub(crate) fn child_types(&self, t: usize) -> Vec<usize> {
        if t == self.root_type() {
            (0..self.geometry.d()).collect()
        } else {
            self.geometry.matrix().successors(t).collect()
        }
    }

    pub(crate) fn check_tracked_states(&self) -> Result<()> {
        let states = self.automaton.num_states();
        if states > MAX_TRACKED_STATES {
            return Err(ShiftError::cap(
                format!("state sets over {states} automaton states"),
                MAX_TRACKED_STATES as u64,
            ));
        }
        Ok(())
    }

    pub(crate) fn full_mask(&self) -> u64 {
        (1u64 << self.automaton.num_states()) - 1
    }

    /// States `q` with `δ(q, c) ∈ mask`.
    pub(crate) fn preimage(&self, mask: u64, c: usize) -> u64 {
        (0..self.automaton.num_states())
            .filter(|&q| matches!(self.automaton.step(q, c), Some(p) if mask >> p & 1 == 1))
            .fold(0, |acc, q| acc | 1 << q)
    }

    /// States `q` with `δ(q, a) ∈ mask` for some symbol `a`.
    pub(crate) fn free_preimage(&self, mask: u64) -> u64 {
        (0..self.alphabet_size()).fold(0, |acc, c| acc | self.preimage(mask, c))
    }

    pub(crate) fn contains_initial(&self, mask: u64) -> bool {
        mask >> self.automaton.initial() & 1 == 1
    }
}

/// `[|P(Δ_0)|, ..., |P(Δ_n)|]` by a bottom-up program over generator types
/// and automaton states.
pub fn count_patterns_upto(spec: &TreeShiftSpec, n: usize) -> Vec<BigUint> {
    let aut = &spec.automaton;
    let (states, r) = (aut.num_states(), aut.alphabet_size());
    let types = spec.root_type() + 1;
    let children: Vec<Vec<usize>> = (0..types).map(|t| spec.child_types(t)).collect();
    // w[t][q]: labelings below a type-t vertex whose own label led to state q
    let mut w = vec![vec![BigUint::one(); states]; types];
    let root_total = |w: &Vec<Vec<BigUint>>| -> BigUint {
        (0..r)
            .filter_map(|a| aut.step(aut.initial(), a))
            .map(|p| w[spec.root_type()][p].clone())
            .sum()
    };
    let mut out = vec![root_total(&w)];
    for _ in 0..n {
        // x[t][q]: labelings of a type-t child subtree under a parent in state q
        let x: Vec<Vec<BigUint>> = (0..types)
            .map(|t| {
                (0..states)
                    .map(|q| (0..r).filter_map(|a| aut.step(q, a)).map(|p| &w[t][p]).sum())
                    .collect()
            })
            .collect();
        w = (0..types)
            .map(|t| {
                (0..states)
                    .map(|q| children[t].iter().map(|&c| &x[c][q]).product())
                    .collect()
            })
            .collect();
        out.push(root_total(&w));
    }
    out
}

/// `|P(Δ_n, 𝒯)|`
pub fn count_patterns(spec: &TreeShiftSpec, n: usize) -> BigUint {
    count_patterns_upto(spec, n).pop().expect("nonempty")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TreeEntropy {
    #[serde(serialize_with = "crate::numfmt::ser_big")]
    pub count: BigUint,
    /// `ln |P(Δ_n)| / |Δ_n|`
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub raw: f64,
    /// Largest raw value over the depths in the second half of `1..=n`.
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub running_max_tail: f64,
}

/// Raw entropy at each depth `1..=n`.
pub fn tree_entropy_profile(spec: &TreeShiftSpec, n: usize) -> Vec<f64> {
    let counts = count_patterns_upto(spec, n);
    (1..=n)
        .map(|k| raw_entropy(&counts[k], &spec.geometry.delta_size(k)))
        .collect()
}

pub fn tree_entropy_est(spec: &TreeShiftSpec, n: usize) -> Result<TreeEntropy> {
    if n == 0 {
        return Err(ShiftError::Domain("tree entropy needs n >= 1".into()));
    }
    let raws = tree_entropy_profile(spec, n);
    let running_max_tail = raws[n / 2..].iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(TreeEntropy {
        count: count_patterns(spec, n),
        raw: raws[n - 1],
        running_max_tail,
    })
}

/// `ln count / size`, exact enough for counts far beyond `f64` range.
pub(crate) fn raw_entropy(count: &BigUint, size: &BigUint) -> f64 {
    let size = crate::bigmath::big_ratio(size, &BigUint::one());
    ln_big(count) / size
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurfaceEntropy {
    /// Distinct restrictions of `Δ_n` patterns to `T_n`.
    #[serde(serialize_with = "crate::numfmt::ser_big")]
    pub count: BigUint,
    /// `ln count / |T_n|`
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub raw: f64,
}

type MaskDistribution = BTreeMap<u64, BigUint>;

/// Counts labelings of `T_n` that extend to a pattern on `Δ_n`.
///
/// For each subtree the program tracks, per labeling of its bottom level,
/// the set of parent states from which the subtree can be completed, and
/// keeps the number of labelings producing each such set.
pub fn surface_entropy_est(spec: &TreeShiftSpec, n: usize) -> Result<SurfaceEntropy> {
    spec.check_tracked_states()?;
    let cap = Limits::global().enumeration;
    let r = spec.alphabet_size();
    let types = spec.root_type() + 1;
    let mut memo: HashMap<(usize, usize), MaskDistribution> = HashMap::new();
    // height 0: the vertex sits on T_n and carries a fixed label
    let mut leaf = MaskDistribution::new();
    for c in 0..r {
        *leaf.entry(spec.preimage(spec.full_mask(), c)).or_default() += 1u32;
    }
    for t in 0..types {
        memo.insert((0, t), leaf.clone());
    }
    for h in 1..=n {
        for t in 0..types {
            let mut combined = MaskDistribution::from([(spec.full_mask(), BigUint::one())]);
            for c in spec.child_types(t) {
                let child = &memo[&(h - 1, c)];
                let mut next = MaskDistribution::new();
                for (m1, k1) in &combined {
                    for (m2, k2) in child {
                        *next.entry(m1 & m2).or_default() += k1 * k2;
                    }
                }
                if next.len() as u64 > cap {
                    return Err(ShiftError::cap(next.len(), cap));
                }
                combined = next;
            }
            let mut lifted = MaskDistribution::new();
            for (m, k) in combined {
                *lifted.entry(spec.free_preimage(m)).or_default() += k;
            }
            memo.insert((h, t), lifted);
        }
    }
    let count: BigUint = memo[&(n, spec.root_type())]
        .iter()
        .filter(|(&m, _)| spec.contains_initial(m))
        .map(|(_, k)| k)
        .sum();
    let raw = raw_entropy(&count, &spec.geometry.level_size(n));
    Ok(SurfaceEntropy { count, raw })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary(base: TreeBase) -> TreeShiftSpec {
        TreeShiftSpec::new(AdjacencyMatrix::binary(), base).unwrap()
    }

    pub(crate) fn t_a() -> TreeShiftSpec {
        binary(TreeBase::Matrix(SymbolMatrix::upward()))
    }

    /// All labelings of Δ_n whose root paths are accepted.
    fn brute_patterns(spec: &TreeShiftSpec, n: usize) -> (usize, Vec<Vec<u8>>) {
        let vertices = spec.geometry().delta_vertices(n).unwrap();
        let r = spec.alphabet_size();
        let index: HashMap<_, _> = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let mut count = 0;
        let mut surfaces = std::collections::BTreeSet::new();
        let total = r.pow(vertices.len() as u32);
        for code in 0..total {
            let mut c = code;
            let labels: Vec<u8> = (0..vertices.len())
                .map(|_| {
                    let s = (c % r) as u8;
                    c /= r;
                    s
                })
                .collect();
            let ok = vertices.iter().all(|v| {
                let mut path = vec![labels[index[&crate::trees::Vertex::root()]]];
                for k in 1..=v.level() {
                    let prefix = crate::trees::Vertex::from_generators(v.generators()[..k].to_vec());
                    path.push(labels[index[&prefix]]);
                }
                spec.automaton().accepts(&path)
            });
            if ok {
                count += 1;
                surfaces.insert(
                    vertices
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| v.level() == n)
                        .map(|(i, _)| labels[i])
                        .collect::<Vec<_>>(),
                );
            }
        }
        (count, surfaces.into_iter().collect())
    }

    #[test]
    fn construction() {
        let comb = TreeShiftSpec::new(
            AdjacencyMatrix::comb(),
            TreeBase::Shift(ShiftSpec1D::golden_mean()),
        );
        assert!(comb.is_ok());
        let dead = TreeShiftSpec::new(
            AdjacencyMatrix::binary(),
            TreeBase::Matrix(SymbolMatrix::from_strings(&["00", "00"]).unwrap()),
        );
        assert!(matches!(dead, Err(ShiftError::DeadSymbol { symbol: 0 })));
        let empty = TreeShiftSpec::new(
            AdjacencyMatrix::binary(),
            TreeBase::Shift(ShiftSpec1D::forbidden(2, &["0", "1"]).unwrap()),
        );
        assert!(matches!(empty, Err(ShiftError::EmptyBase)));
    }

    #[test]
    fn counting_examples() {
        let full = binary(TreeBase::Shift(ShiftSpec1D::full(2).unwrap()));
        assert_eq!(count_patterns(&full, 1), BigUint::from(8u32));
        let golden = binary(TreeBase::Shift(ShiftSpec1D::golden_mean()));
        assert_eq!(count_patterns(&golden, 1), BigUint::from(5u32));
        let c: Vec<BigUint> = count_patterns_upto(&t_a(), 5);
        let mut expected = BigUint::from(2u32);
        assert_eq!(c[0], expected);
        for k in 1..=5 {
            expected = BigUint::one() + &expected * &expected;
            assert_eq!(c[k], expected);
        }
        assert_eq!(c[3], BigUint::from(677u32));
    }

    #[test]
    fn counts_match_brute_force() {
        let catalog = [
            binary(TreeBase::Shift(ShiftSpec1D::full(2).unwrap())),
            binary(TreeBase::Shift(ShiftSpec1D::golden_mean())),
            binary(TreeBase::Shift(ShiftSpec1D::zero_point())),
            t_a(),
            TreeShiftSpec::new(AdjacencyMatrix::comb(), TreeBase::Shift(ShiftSpec1D::golden_mean())).unwrap(),
            TreeShiftSpec::new(AdjacencyMatrix::comb(), TreeBase::Shift(ShiftSpec1D::at_most_k(2, 1, 1).unwrap())).unwrap(),
        ];
        for spec in &catalog {
            for n in 0..=2 {
                let (count, surfaces) = brute_patterns(spec, n);
                assert_eq!(count_patterns(spec, n), BigUint::from(count));
                assert_eq!(surface_entropy_est(spec, n).unwrap().count, BigUint::from(surfaces.len()));
            }
        }
    }

    #[test]
    fn entropy_examples() {
        let full = binary(TreeBase::Shift(ShiftSpec1D::full(2).unwrap()));
        let e = tree_entropy_est(&full, 5).unwrap();
        assert!((e.raw - 2f64.ln()).abs() < 1e-12);
        let a = tree_entropy_est(&t_a(), 3).unwrap();
        assert!((a.raw - 677f64.ln() / 15.0).abs() < 1e-12);
        assert!((a.raw - 0.4345).abs() < 1e-4);
        assert!(tree_entropy_est(&t_a(), 0).is_err());
    }

    #[test]
    fn surface_examples() {
        let full = binary(TreeBase::Shift(ShiftSpec1D::full(2).unwrap()));
        let s = surface_entropy_est(&full, 2).unwrap();
        assert_eq!(s.count, BigUint::from(16u32));
        assert!((s.raw - 2f64.ln()).abs() < 1e-12);
        assert_eq!(surface_entropy_est(&t_a(), 2).unwrap().count, BigUint::from(16u32));
        let zero = binary(TreeBase::Shift(ShiftSpec1D::zero_point()));
        for n in 0..5 {
            let z = surface_entropy_est(&zero, n).unwrap();
            assert_eq!(z.count, BigUint::one());
            assert_eq!(z.raw, 0.0);
        }
    }

    #[test]
    fn json_forms() {
        let text = r#"{"tree":{"d":2,"rows":["11","11"]},"matrix":["11","01"]}"#;
        let spec: TreeShiftSpec = serde_json::from_str(text).unwrap();
        assert_eq!(spec, t_a());
        assert_eq!(serde_json::to_string(&spec).unwrap(), text);
        let shift: TreeShiftSpec = serde_json::from_str(
            r#"{"tree":{"d":2,"rows":["11","01"]},"base":{"alphabet":2,"kind":"forbidden","forbidden":["11"]}}"#,
        )
        .unwrap();
        assert!(matches!(shift.base(), TreeBase::Shift(_)));
        assert!(serde_json::from_str::<TreeShiftSpec>(r#"{"tree":{"d":2,"rows":["11","01"]}}"#).is_err());
    }
}
