//! Independence sets of tree-shifts.
//!
//! For a vertex `v` and an assignment on the marked vertices below it, let
//! `Φ(v)` be the set of states the path can be in just above `v` from which
//! the subtree of `v` admits a labeling. Marked vertices take the assigned
//! symbol and the rest are free. Different subtrees are assigned
//! independently, so the set of `Φ(v)` achievable over all assignments
//! combines child by child, and `S` is independent iff every achievable
//! `Φ(root)` contains the initial state.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigUint;
use serde::Serialize;

use crate::bigmath::big_ratio;
use crate::error::{Result, ShiftError};
use crate::trees::{Vertex, VertexSet};
use crate::words::{max_indep_profile, Symbol};

use super::TreeShiftSpec;

/// Marked vertices: `None` ranges over every symbol, `Some(c)` is fixed.
pub(crate) type Marking = BTreeMap<Vertex, Option<Symbol>>;

pub(crate) struct Propagator<'a> {
    spec: &'a TreeShiftSpec,
    n: usize,
    free: HashMap<(usize, usize), u64>,
}

impl<'a> Propagator<'a> {
    pub(crate) fn new(spec: &'a TreeShiftSpec, n: usize) -> Result<Self> {
        spec.check_tracked_states()?;
        Ok(Propagator {
            spec,
            n,
            free: HashMap::new(),
        })
    }

    fn vertex_type(&self, v: &Vertex) -> usize {
        v.last().unwrap_or(self.spec.root_type())
    }

    /// `Φ` of an unmarked subtree of height `h` rooted at a type-`t` vertex.
    fn free_mask(&mut self, h: usize, t: usize) -> u64 {
        if let Some(&m) = self.free.get(&(h, t)) {
            return m;
        }
        let mut inter = self.spec.full_mask();
        if h > 0 {
            for c in self.spec.child_types(t) {
                inter &= self.free_mask(h - 1, c);
            }
        }
        let m = self.spec.free_preimage(inter);
        self.free.insert((h, t), m);
        m
    }

    fn achievable(&mut self, v: &Vertex, marks: &Marking) -> BTreeSet<u64> {
        let h = self.n - v.level();
        let t = self.vertex_type(v);
        let has_mark = marks
            .range(v.clone()..)
            .next()
            .is_some_and(|(w, _)| v.is_prefix_of(w));
        if !has_mark {
            return BTreeSet::from([self.free_mask(h, t)]);
        }
        let mut combined = BTreeSet::from([self.spec.full_mask()]);
        if h > 0 {
            for c in self.spec.child_types(t) {
                let child = self.achievable(&v.child(c), marks);
                combined = combined
                    .iter()
                    .flat_map(|m1| child.iter().map(move |m2| m1 & m2))
                    .collect();
            }
        }
        match marks.get(v) {
            None => combined.into_iter().map(|m| self.spec.free_preimage(m)).collect(),
            Some(None) => combined
                .into_iter()
                .flat_map(|m| {
                    (0..self.spec.alphabet_size()).map(move |c| (m, c))
                })
                .map(|(m, c)| self.spec.preimage(m, c))
                .collect(),
            Some(Some(c)) => combined
                .into_iter()
                .map(|m| self.spec.preimage(m, *c as usize))
                .collect(),
        }
    }

    /// Every assignment consistent with `marks` extends to a pattern on `Δ_n`.
    pub(crate) fn all_extend(&mut self, marks: &Marking) -> bool {
        self.achievable(&Vertex::root(), marks)
            .into_iter()
            .all(|m| self.spec.contains_initial(m))
    }
}

pub(crate) fn check_vertices<'v>(
    spec: &TreeShiftSpec,
    vertices: impl IntoIterator<Item = &'v Vertex>,
    n: usize,
) -> Result<()> {
    for v in vertices {
        if v.level() > n || !spec.geometry().contains(v) {
            return Err(ShiftError::InvalidVertex(format!("{v} is not a vertex of Δ_{n}")));
        }
    }
    Ok(())
}

/// Whether every assignment `S → 𝒜` extends to a pattern of the tree-shift
/// on `Δ_n`.
pub fn is_indep_tree(spec: &TreeShiftSpec, s: &VertexSet, n: usize) -> Result<bool> {
    check_vertices(spec, s, n)?;
    let marks: Marking = s.iter().map(|v| (v.clone(), None)).collect();
    Ok(Propagator::new(spec, n)?.all_extend(&marks))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaxIndependentSet {
    pub witness: VertexSet,
    pub size: usize,
    /// Sum over a chain decomposition of `Δ_n` of the 1D bound `J_ℓ`.
    pub upper_bound: usize,
    /// True when `size` is proved maximal.
    pub certified: bool,
    /// `size / |Δ_n|`
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub ratio: f64,
}

/// Exhaustive search is used when bounds disagree and `|Δ_n|` is at most this.
const EXHAUSTIVE_LIMIT: usize = 24;

/// A largest independence set inside `Δ_n`.
///
/// Greedy selection (deepest level first) gives a lower bound. Splitting
/// `Δ_n` into vertical chains, `|T_k| − |T_{k−1}|` chains run from level `k`
/// to `n`, and each meets an independence set in at most `J_{n−k+1}` vertices,
/// which gives the upper bound.
pub fn max_independent_set(spec: &TreeShiftSpec, n: usize) -> Result<MaxIndependentSet> {
    let geometry = spec.geometry();
    let mut order = geometry.delta_vertices(n)?;
    order.sort_by(|a, b| b.level().cmp(&a.level()).then_with(|| a.cmp(b)));
    let mut prop = Propagator::new(spec, n)?;
    let mut marks = Marking::new();
    for v in &order {
        marks.insert(v.clone(), None);
        if !prop.all_extend(&marks) {
            marks.remove(v);
        }
    }
    let j = max_indep_profile(spec.automaton(), n + 1)?;
    let mut bound = BigUint::default();
    for k in 0..=n {
        let starts = geometry.level_size(k)
            - if k == 0 {
                BigUint::default()
            } else {
                geometry.level_size(k - 1)
            };
        bound += starts * BigUint::from(j[n - k]);
    }
    let upper_bound = usize::try_from(bound).unwrap_or(usize::MAX);
    let mut best: Vec<Vertex> = marks.keys().cloned().collect();
    let mut certified = best.len() == upper_bound;
    if !certified && order.len() <= EXHAUSTIVE_LIMIT {
        let mut current = Marking::new();
        branch(&mut prop, &order, 0, &mut current, &mut best, upper_bound);
        certified = true;
    }
    let size = best.len();
    Ok(MaxIndependentSet {
        witness: best.into_iter().collect(),
        size,
        upper_bound,
        certified,
        ratio: big_ratio(&BigUint::from(size), &geometry.delta_size(n)),
    })
}

/// Include-first branch and bound over `order`; independence is inherited by
/// subsets, so a failed inclusion prunes the whole branch.
pub(crate) fn branch(
    prop: &mut Propagator<'_>,
    order: &[Vertex],
    i: usize,
    current: &mut Marking,
    best: &mut Vec<Vertex>,
    ceiling: usize,
) {
    if best.len() >= ceiling || current.len() + (order.len() - i) <= best.len() {
        return;
    }
    if i == order.len() {
        *best = current.keys().cloned().collect();
        return;
    }
    let v = &order[i];
    current.insert(v.clone(), None);
    if prop.all_extend(current) {
        branch(prop, order, i + 1, current, best, ceiling);
    }
    current.remove(v);
    branch(prop, order, i + 1, current, best, ceiling);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::AdjacencyMatrix;
    use crate::treeshifts::{SymbolMatrix, TreeBase};
    use crate::words::ShiftSpec1D;

    fn t_a() -> TreeShiftSpec {
        TreeShiftSpec::new(AdjacencyMatrix::binary(), TreeBase::Matrix(SymbolMatrix::upward())).unwrap()
    }

    fn set(ids: &[&str]) -> VertexSet {
        ids.iter().map(|s| s.parse().unwrap()).collect()
    }

    /// Tries every assignment on `S` against every labeling of `Δ_n`.
    fn brute_indep(spec: &TreeShiftSpec, s: &VertexSet, n: usize) -> bool {
        let vertices = spec.geometry().delta_vertices(n).unwrap();
        let index: HashMap<_, _> = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let r = spec.alphabet_size();
        let mut realized = BTreeSet::new();
        for code in 0..r.pow(vertices.len() as u32) {
            let mut c = code;
            let labels: Vec<u8> = (0..vertices.len())
                .map(|_| {
                    let x = (c % r) as u8;
                    c /= r;
                    x
                })
                .collect();
            let ok = vertices.iter().all(|v| {
                let path: Vec<u8> = (0..=v.level())
                    .map(|k| labels[index[&Vertex::from_generators(v.generators()[..k].to_vec())]])
                    .collect();
                spec.automaton().accepts(&path)
            });
            if ok {
                realized.insert(s.iter().map(|v| labels[index[v]]).collect::<Vec<_>>());
            }
        }
        realized.len() == r.pow(s.len() as u32)
    }

    #[test]
    fn examples() {
        let a = t_a();
        assert!(is_indep_tree(&a, &set(&["1", "2"]), 1).unwrap());
        assert!(!is_indep_tree(&a, &set(&["ε", "2"]), 1).unwrap());
        assert!(is_indep_tree(&a, &VertexSet::new(), 3).unwrap());
        assert!(is_indep_tree(&a, &set(&["ε"]), 2).unwrap());
        assert!(is_indep_tree(&a, &set(&["111"]), 2).is_err());
        let comb = TreeShiftSpec::new(AdjacencyMatrix::comb(), TreeBase::Shift(ShiftSpec1D::golden_mean())).unwrap();
        assert!(is_indep_tree(&comb, &set(&["21"]), 2).is_err());
    }

    #[test]
    fn matches_brute_force_on_small_sets() {
        let specs = [
            t_a(),
            TreeShiftSpec::new(AdjacencyMatrix::binary(), TreeBase::Shift(ShiftSpec1D::golden_mean())).unwrap(),
            TreeShiftSpec::new(AdjacencyMatrix::comb(), TreeBase::Shift(ShiftSpec1D::at_most_k(2, 1, 1).unwrap())).unwrap(),
        ];
        for spec in &specs {
            let vertices = spec.geometry().delta_vertices(2).unwrap();
            for mask in 0u32..1 << vertices.len() {
                if mask.count_ones() > 3 {
                    continue;
                }
                let s: VertexSet = vertices
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, v)| v.clone())
                    .collect();
                assert_eq!(is_indep_tree(spec, &s, 2).unwrap(), brute_indep(spec, &s, 2), "{s:?}");
            }
        }
    }

    #[test]
    fn maximum_sets() {
        let comb = TreeShiftSpec::new(AdjacencyMatrix::comb(), TreeBase::Shift(ShiftSpec1D::at_most_k(2, 1, 1).unwrap())).unwrap();
        for n in 1..=6 {
            let m = max_independent_set(&comb, n).unwrap();
            assert_eq!(m.size, n + 1);
            assert!(m.certified);
        }
        let full = TreeShiftSpec::new(AdjacencyMatrix::binary(), TreeBase::Shift(ShiftSpec1D::full(2).unwrap())).unwrap();
        let m = max_independent_set(&full, 3).unwrap();
        assert_eq!(m.size, 15);
        assert_eq!(m.ratio, 1.0);
    }
}
