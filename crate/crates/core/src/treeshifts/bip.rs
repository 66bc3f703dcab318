//! Search for independence sets confined to the top levels of `Δ_n`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use serde::Serialize;

use crate::bigmath::big_ratio;
use crate::error::{Result, ShiftError};
use crate::shatter::{extract_shattered, largest_guaranteed_k, BinaryFamily};
use crate::trees::{spectral_radius, Vertex, VertexSet, EXPANDING_TOLERANCE};

use super::independence::{branch, Marking, Propagator};
use super::TreeShiftSpec;

/// Windows up to this size are searched exhaustively.
pub const EXHAUSTIVE_WINDOW: usize = 20;
/// Surfaces up to this size seed the greedy search with a shattered set.
const SEED_SURFACE: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    /// Proved maximal; an absent witness proves there is none.
    Exhaustive,
    /// Heuristic; an absent witness proves nothing.
    Greedy,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BipWitness {
    pub vertices: VertexSet,
    /// `|S_n| / |Δ_n|`
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BipSearch {
    pub witness: Option<BipWitness>,
    pub mode: SearchMode,
    /// `|Δ_n \ Δ_{n−l}|`
    pub window: usize,
}

/// Looks for a large independence set inside `Δ_n \ Δ_{n−l}`.
///
/// Window vertices are ordered by level from the surface down and
/// lexicographically within a level. Small windows get an exact branch and
/// bound; larger ones a greedy pass, seeded when possible by a shattered set
/// of the surface patterns.
pub fn bip_search(spec: &TreeShiftSpec, l: usize, n: usize) -> Result<BipSearch> {
    if l == 0 {
        return Err(ShiftError::PreconditionViolated("l must be >= 1".into()));
    }
    let spectral = spectral_radius(spec.geometry().matrix());
    if spectral <= 1.0 + EXPANDING_TOLERANCE {
        return Err(ShiftError::PreconditionViolated(format!(
            "tree is not expandable (spectral radius {spectral})"
        )));
    }
    let geometry = spec.geometry();
    let mut window = Vec::new();
    for level in (n.saturating_sub(l - 1)..=n).rev() {
        window.extend(geometry.vertices_at(level)?);
    }
    let mut prop = Propagator::new(spec, n)?;
    let (best, mode) = if window.len() <= EXHAUSTIVE_WINDOW {
        let mut best = Vec::new();
        branch(&mut prop, &window, 0, &mut Marking::new(), &mut best, window.len());
        (best, SearchMode::Exhaustive)
    } else {
        let seed = surface_seed(spec, &mut prop, n, geometry.level_size(n))?;
        let mut marks: Marking = seed.into_iter().map(|v| (v, None)).collect();
        for v in &window {
            if marks.contains_key(v) {
                continue;
            }
            marks.insert(v.clone(), None);
            if !prop.all_extend(&marks) {
                marks.remove(v);
            }
        }
        (marks.into_keys().collect(), SearchMode::Greedy)
    };
    let witness = (!best.is_empty()).then(|| BipWitness {
        ratio: big_ratio(&BigUint::from(best.len()), &geometry.delta_size(n)),
        vertices: best.into_iter().collect(),
    });
    Ok(BipSearch {
        witness,
        mode,
        window: window.len(),
    })
}

/// For binary alphabets and small surfaces: the family of realizable
/// labelings of `T_n` and a Sauer–Shelah shattered set of it.
fn surface_seed(
    spec: &TreeShiftSpec,
    prop: &mut Propagator<'_>,
    n: usize,
    surface_size: BigUint,
) -> Result<Vec<Vertex>> {
    if spec.alphabet_size() != 2 || surface_size > BigUint::from(SEED_SURFACE) {
        return Ok(Vec::new());
    }
    let surface = spec.geometry().vertices_at(n)?;
    let mut members = BTreeSet::new();
    for code in 0u64..1 << surface.len() {
        let marks: Marking = surface
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), Some((code >> i & 1) as u8)))
            .collect();
        if prop.all_extend(&marks) {
            members.insert(code);
        }
    }
    let family = BinaryFamily::new(surface.len(), members)?;
    let k = largest_guaranteed_k(&family);
    if k == 0 {
        return Ok(Vec::new());
    }
    let shattered = extract_shattered(&family, k)?;
    Ok(shattered.indices().iter().map(|&i| surface[i - 1].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::AdjacencyMatrix;
    use crate::treeshifts::{count_patterns, is_indep_tree, SymbolMatrix, TreeBase};
    use crate::words::ShiftSpec1D;

    fn binary(base: TreeBase) -> TreeShiftSpec {
        TreeShiftSpec::new(AdjacencyMatrix::binary(), base).unwrap()
    }

    #[test]
    fn full_shift_surface() {
        let full = binary(TreeBase::Shift(ShiftSpec1D::full(2).unwrap()));
        for n in 1..=5 {
            let found = bip_search(&full, 1, n).unwrap();
            let w = found.witness.unwrap();
            assert_eq!(w.vertices.len(), 1 << n);
            assert!(w.vertices.iter().all(|v| v.level() == n));
            let expected = (1u64 << n) as f64 / ((1u64 << (n + 1)) - 1) as f64;
            assert!((w.ratio - expected).abs() < 1e-12);
        }
        assert_eq!(bip_search(&full, 1, 4).unwrap().mode, SearchMode::Exhaustive);
        assert_eq!(bip_search(&full, 1, 5).unwrap().mode, SearchMode::Greedy);
    }

    #[test]
    fn upward_matrix_surface() {
        let a = binary(TreeBase::Matrix(SymbolMatrix::upward()));
        for n in 1..=5 {
            let w = bip_search(&a, 1, n).unwrap().witness.unwrap();
            assert_eq!(w.vertices.len(), 1 << n);
            assert!(count_patterns(&a, n) >= BigUint::from(2u32).pow(w.vertices.len() as u32));
            assert!(is_indep_tree(&a, &w.vertices, n).unwrap());
        }
    }

    #[test]
    fn zero_base_has_none() {
        let zero = binary(TreeBase::Shift(ShiftSpec1D::zero_point()));
        for n in 1..=4 {
            let found = bip_search(&zero, 1, n).unwrap();
            assert!(found.witness.is_none());
        }
        let found = bip_search(&zero, 2, 3).unwrap();
        assert_eq!(found.mode, SearchMode::Exhaustive);
        assert!(found.witness.is_none());
    }

    #[test]
    fn preconditions() {
        let comb = TreeShiftSpec::new(AdjacencyMatrix::comb(), TreeBase::Shift(ShiftSpec1D::golden_mean())).unwrap();
        assert!(bip_search(&comb, 1, 3).is_err());
        let full = binary(TreeBase::Shift(ShiftSpec1D::full(2).unwrap()));
        assert!(bip_search(&full, 0, 3).is_err());
    }
}
