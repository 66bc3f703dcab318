//! Densities of vertex sets in `Δ_n` and the lift of a 1D independence set
//! onto the sinks of an unexpandable tree.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::bigmath::big_ratio;
use crate::error::{Result, ShiftError};
use crate::trees::{sink_decomposition, TreeGeometry, Vertex, VertexSet};
use crate::words::PositionSet;

use super::TreeShiftSpec;

/// A possibly infinite set of tree vertices, described level by level.
pub trait VertexSource {
    fn contains(&self, geometry: &TreeGeometry, v: &Vertex) -> bool;

    /// `|S ∩ T_level|`
    fn level_count(&self, geometry: &TreeGeometry, level: usize) -> Result<BigUint>;
}

impl VertexSource for VertexSet {
    fn contains(&self, _: &TreeGeometry, v: &Vertex) -> bool {
        std::collections::BTreeSet::contains(self, v)
    }

    fn level_count(&self, geometry: &TreeGeometry, level: usize) -> Result<BigUint> {
        Ok(BigUint::from(
            self.iter()
                .filter(|v| v.level() == level && geometry.contains(v))
                .count(),
        ))
    }
}

/// Every vertex.
#[derive(Clone, Copy, Debug, Default)]
pub struct WholeTree;

impl VertexSource for WholeTree {
    fn contains(&self, _: &TreeGeometry, _: &Vertex) -> bool {
        true
    }

    fn level_count(&self, geometry: &TreeGeometry, level: usize) -> Result<BigUint> {
        Ok(geometry.level_size(level))
    }
}

/// Vertices on even levels, the root included.
#[derive(Clone, Copy, Debug, Default)]
pub struct EvenLevels;

impl VertexSource for EvenLevels {
    fn contains(&self, _: &TreeGeometry, v: &Vertex) -> bool {
        v.level().is_multiple_of(2)
    }

    fn level_count(&self, geometry: &TreeGeometry, level: usize) -> Result<BigUint> {
        Ok(if level.is_multiple_of(2) {
            geometry.level_size(level)
        } else {
            BigUint::zero()
        })
    }
}

/// `S ∩ Δ_n`, materialized.
pub fn restrict(source: &dyn VertexSource, geometry: &TreeGeometry, n: usize) -> Result<VertexSet> {
    Ok(geometry
        .delta_vertices(n)?
        .into_iter()
        .filter(|v| source.contains(geometry, v))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TreeDensity {
    pub depths: Vec<usize>,
    /// `|S ∩ Δ_n| / |Δ_n|` for each requested depth.
    #[serde(serialize_with = "crate::numfmt::ser_f64_vec")]
    pub ratios: Vec<f64>,
    /// Largest and smallest ratio over the second half of the depths.
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub upper: f64,
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub lower: f64,
}

pub fn tree_density(
    source: &dyn VertexSource,
    geometry: &TreeGeometry,
    depths: &[usize],
) -> Result<TreeDensity> {
    if depths.is_empty() || depths.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ShiftError::Domain("depths must be nonempty and increasing".into()));
    }
    let last = *depths.last().expect("nonempty");
    let mut inside = BigUint::zero();
    let mut total = BigUint::zero();
    let mut ratios = Vec::with_capacity(depths.len());
    let mut next = depths.iter().peekable();
    for level in 0..=last {
        inside += source.level_count(geometry, level)?;
        total += geometry.level_size(level);
        if next.peek() == Some(&&level) {
            next.next();
            ratios.push(big_ratio(&inside, &total));
        }
    }
    let tail = &ratios[ratios.len() / 2..];
    Ok(TreeDensity {
        depths: depths.to_vec(),
        upper: tail.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        lower: tail.iter().copied().fold(f64::INFINITY, f64::min),
        ratios,
    })
}

/// The set `U` obtained by placing a 1D position set on every ray from the
/// moment the ray enters a sink: `g_1 … g_m ∈ U` iff `g_m` lies in a sink,
/// `g_e` is the first sink generator on the path, and `m − e + 1 ∈ S`.
#[derive(Clone, Debug, PartialEq)]
pub struct SinkLift {
    sink_generators: Vec<usize>,
    positions: PositionSet,
}

impl SinkLift {
    pub fn positions(&self) -> &PositionSet {
        &self.positions
    }

    /// 0-based generators lying in a sink.
    pub fn sink_generators(&self) -> &[usize] {
        &self.sink_generators
    }

    fn in_sink(&self, g: usize) -> bool {
        self.sink_generators.binary_search(&g).is_ok()
    }

    /// Level-`m` vertices whose last generator lies in a sink.
    fn sink_count(&self, geometry: &TreeGeometry, m: usize) -> BigUint {
        if m == 0 {
            return BigUint::zero();
        }
        let v = geometry.level_vector(m);
        self.sink_generators.iter().map(|&g| &v[g]).sum()
    }
}

impl VertexSource for SinkLift {
    fn contains(&self, geometry: &TreeGeometry, v: &Vertex) -> bool {
        let gens = v.generators();
        if !geometry.contains(v) || !v.last().is_some_and(|g| self.in_sink(g)) {
            return false;
        }
        let entry = gens
            .iter()
            .position(|&g| self.in_sink(g as usize))
            .expect("last generator is in a sink");
        self.positions.contains(gens.len() - entry)
    }

    /// Each sink class is a cycle without exits, so a vertex entering a sink
    /// at level `e` has exactly one descendant per later level, all in the
    /// sink. Vertices entering at level `e` number `sink(e) − sink(e−1)`.
    fn level_count(&self, geometry: &TreeGeometry, level: usize) -> Result<BigUint> {
        let mut total = BigUint::zero();
        let mut previous = BigUint::zero();
        for e in 1..=level {
            let current = self.sink_count(geometry, e);
            if self.positions.contains(level - e + 1) {
                total += &current - &previous;
            }
            previous = current;
        }
        Ok(total)
    }
}

/// Lifts `positions` onto the sinks of the tree.
///
/// Requires an unexpandable tree and a hereditary base, so that every
/// vertex outside the lift can carry the symbol 0.
pub fn sink_lift(spec: &TreeShiftSpec, positions: &PositionSet) -> Result<SinkLift> {
    let decomposition = sink_decomposition(spec.geometry().matrix())?;
    let states = spec.automaton().num_states();
    // the pair search in the automaton is exhaustive once every pair is seen
    if let Some(length) = spec.automaton().first_non_hereditary_length(states * states + 1) {
        return Err(ShiftError::NotHereditary { length });
    }
    Ok(SinkLift {
        sink_generators: decomposition.sink_generators(),
        positions: positions.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::AdjacencyMatrix;
    use crate::treeshifts::{is_indep_tree, SymbolMatrix, TreeBase};
    use crate::words::ShiftSpec1D;

    fn comb(base: ShiftSpec1D) -> TreeShiftSpec {
        TreeShiftSpec::new(AdjacencyMatrix::comb(), TreeBase::Shift(base)).unwrap()
    }

    #[test]
    fn simple_densities() {
        let bin = TreeGeometry::new(AdjacencyMatrix::binary());
        let depths: Vec<usize> = (1..=20).collect();
        let whole = tree_density(&WholeTree, &bin, &depths).unwrap();
        assert!(whole.ratios.iter().all(|&r| r == 1.0));
        let even = tree_density(&EvenLevels, &bin, &depths).unwrap();
        assert!((even.upper - 2.0 / 3.0).abs() < 1e-3);
        assert!((even.lower - 1.0 / 3.0).abs() < 1e-3);
        let comb_geometry = TreeGeometry::new(AdjacencyMatrix::comb());
        let ray: VertexSet = (0..=200).map(|k| Vertex::from_generators(vec![1; k])).collect();
        let depths: Vec<usize> = (1..=200).collect();
        let d = tree_density(&ray, &comb_geometry, &depths).unwrap();
        assert!(d.upper < 0.02);
        assert!(tree_density(&WholeTree, &bin, &[3, 2]).is_err());
    }

    #[test]
    fn lift_counts_match_membership() {
        let spec = comb(ShiftSpec1D::golden_mean());
        let lift = sink_lift(&spec, &PositionSet::odd()).unwrap();
        let g = spec.geometry();
        for level in 0..=8 {
            let listed = g
                .vertices_at(level)
                .unwrap()
                .iter()
                .filter(|v| lift.contains(g, v))
                .count();
            assert_eq!(lift.level_count(g, level).unwrap(), BigUint::from(listed));
        }
        // the chain 3 -> 2 -> 1 exercises entries deeper than level 1
        let chain = TreeShiftSpec::new(
            AdjacencyMatrix::from_strings(&["100", "110", "011"]).unwrap(),
            TreeBase::Shift(ShiftSpec1D::golden_mean()),
        )
        .unwrap();
        let lift = sink_lift(&chain, &PositionSet::odd()).unwrap();
        let g = chain.geometry();
        for level in 0..=7 {
            let listed = g
                .vertices_at(level)
                .unwrap()
                .iter()
                .filter(|v| lift.contains(g, v))
                .count();
            assert_eq!(lift.level_count(g, level).unwrap(), BigUint::from(listed));
        }
    }

    #[test]
    fn lift_examples() {
        let spec = comb(ShiftSpec1D::golden_mean());
        let lift = sink_lift(&spec, &PositionSet::odd()).unwrap();
        let depths: Vec<usize> = (1..=200).collect();
        let d = tree_density(&lift, spec.geometry(), &depths).unwrap();
        assert!((d.ratios.last().unwrap() - 0.5).abs() < 0.02);
        for n in 1..=6 {
            let u = restrict(&lift, spec.geometry(), n).unwrap();
            assert!(is_indep_tree(&spec, &u, n).unwrap());
        }
        let full = comb(ShiftSpec1D::full(2).unwrap());
        let all = sink_lift(&full, &PositionSet::All).unwrap();
        let d = tree_density(&all, full.geometry(), &depths).unwrap();
        assert!(*d.ratios.last().unwrap() > 0.98);
        let none = sink_lift(&spec, &PositionSet::empty()).unwrap();
        let d = tree_density(&none, spec.geometry(), &depths).unwrap();
        assert_eq!(d.upper, 0.0);
    }

    #[test]
    fn lift_errors() {
        let expandable = TreeShiftSpec::new(
            AdjacencyMatrix::binary(),
            TreeBase::Shift(ShiftSpec1D::golden_mean()),
        )
        .unwrap();
        assert!(matches!(
            sink_lift(&expandable, &PositionSet::odd()),
            Err(ShiftError::NotUnexpandable { .. })
        ));
        let upward = TreeShiftSpec::new(AdjacencyMatrix::comb(), TreeBase::Matrix(SymbolMatrix::upward())).unwrap();
        assert!(matches!(
            sink_lift(&upward, &PositionSet::odd()),
            Err(ShiftError::NotHereditary { length: 2 })
        ));
    }
}
