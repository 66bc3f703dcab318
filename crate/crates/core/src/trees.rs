//! Markov-Cayley trees: the subtree of the free semigroup on `d` generators
//! whose consecutive generators obey a 0/1 matrix `M`.
//!
//! Generators are 0-based in code and printed 1-based, so the vertex
//! `g1 g2 g2` is written `"122"`. The root is the empty word.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bigmath::big_ratio;
use crate::error::{Result, ShiftError};
use crate::limits::Limits;
use crate::perron::{perron_bracket, strongly_connected_classes};

/// Threshold above which a spectral radius counts as expanding.
pub const EXPANDING_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AdjacencyRepr", into = "AdjacencyRepr")]
pub struct AdjacencyMatrix {
    rows: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct AdjacencyRepr {
    d: usize,
    rows: Vec<String>,
}

impl TryFrom<AdjacencyRepr> for AdjacencyMatrix {
    type Error = ShiftError;
    fn try_from(r: AdjacencyRepr) -> Result<Self> {
        let rows = parse_bool_rows(&r.rows)?;
        if rows.len() != r.d {
            return Err(ShiftError::InvalidSpec(format!(
                "d = {} but {} rows given",
                r.d,
                rows.len()
            )));
        }
        AdjacencyMatrix::new(rows)
    }
}

impl From<AdjacencyMatrix> for AdjacencyRepr {
    fn from(m: AdjacencyMatrix) -> Self {
        AdjacencyRepr {
            d: m.d(),
            rows: format_bool_rows(&m.rows),
        }
    }
}

/// Parses `["11", "01"]` into a square boolean matrix.
pub(crate) fn parse_bool_rows(rows: &[String]) -> Result<Vec<Vec<bool>>> {
    let n = rows.len();
    rows.iter()
        .map(|row| {
            if row.len() != n {
                return Err(ShiftError::InvalidSpec(format!(
                    "row {row:?} should have {n} entries"
                )));
            }
            row.chars()
                .map(|ch| match ch {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(ShiftError::InvalidSpec(format!("row {row:?} is not 0/1"))),
                })
                .collect()
        })
        .collect()
}

pub(crate) fn format_bool_rows(rows: &[Vec<bool>]) -> Vec<String> {
    rows.iter()
        .map(|row| row.iter().map(|&b| if b { '1' } else { '0' }).collect())
        .collect()
}

impl AdjacencyMatrix {
    pub fn new(rows: Vec<Vec<bool>>) -> Result<Self> {
        let d = rows.len();
        if d == 0 || d > 9 {
            return Err(ShiftError::InvalidSpec(format!("generator count {d} outside 1..=9")));
        }
        if rows.iter().any(|r| r.len() != d) {
            return Err(ShiftError::InvalidSpec("adjacency matrix must be square".into()));
        }
        if let Some(row) = rows.iter().position(|r| !r.iter().any(|&b| b)) {
            return Err(ShiftError::DeadEnd { row: row + 1 });
        }
        Ok(AdjacencyMatrix { rows })
    }

    pub fn from_strings(rows: &[&str]) -> Result<Self> {
        let owned: Vec<String> = rows.iter().map(|s| s.to_string()).collect();
        AdjacencyMatrix::new(parse_bool_rows(&owned)?)
    }

    /// `[[1,1],[0,1]]`: paths `g1^a g2^b`.
    pub fn comb() -> Self {
        AdjacencyMatrix::from_strings(&["11", "01"]).expect("valid")
    }

    /// `[[1,1],[1,1]]`: the full binary tree.
    pub fn binary() -> Self {
        AdjacencyMatrix::from_strings(&["11", "11"]).expect("valid")
    }

    pub fn identity(d: usize) -> Result<Self> {
        AdjacencyMatrix::new((0..d).map(|i| (0..d).map(|j| i == j).collect()).collect())
    }

    pub fn d(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<bool>] {
        &self.rows
    }

    /// Generators allowed after `g`.
    pub fn successors(&self, g: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[g].iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| j)
    }

    fn as_f64(&self) -> Vec<Vec<f64>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect())
            .collect()
    }
}

/// A vertex of the tree: a word over the generators, 0-based internally.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(Vec<u8>);

impl Vertex {
    pub fn root() -> Self {
        Vertex(Vec::new())
    }

    pub fn from_generators(gens: Vec<u8>) -> Self {
        Vertex(gens)
    }

    pub fn generators(&self) -> &[u8] {
        &self.0
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().map(|&g| g as usize)
    }

    pub fn child(&self, g: usize) -> Vertex {
        let mut gens = self.0.clone();
        gens.push(g as u8);
        Vertex(gens)
    }

    /// Strict or equal prefix.
    pub fn is_prefix_of(&self, other: &Vertex) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Digits `1..=d` with the root as the empty string.
    pub fn id(&self) -> String {
        self.0.iter().map(|g| char::from(b'1' + g)).collect()
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            f.write_str(&self.id())
        }
    }
}

impl FromStr for Vertex {
    type Err = ShiftError;
    fn from_str(s: &str) -> Result<Self> {
        if s == "ε" {
            return Ok(Vertex::root());
        }
        s.chars()
            .map(|ch| match ch.to_digit(10) {
                Some(d) if d >= 1 => Ok((d - 1) as u8),
                _ => Err(ShiftError::InvalidVertex(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(Vertex)
    }
}

impl Serialize for Vertex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.id())
    }
}

impl<'de> Deserialize<'de> for Vertex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A finite set of vertices, ordered lexicographically by generator word.
pub type VertexSet = BTreeSet<Vertex>;

/// Tree geometry with lazily extended level vectors `v_n` (`v_1` all ones,
/// `v_{n+1} = v_n M`), where `v_n(j)` counts level-`n` vertices ending in `g_j`.
#[derive(Debug)]
pub struct TreeGeometry {
    matrix: AdjacencyMatrix,
    levels: Mutex<Vec<Vec<BigUint>>>,
}

impl Clone for TreeGeometry {
    fn clone(&self) -> Self {
        TreeGeometry::new(self.matrix.clone())
    }
}

impl PartialEq for TreeGeometry {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl TreeGeometry {
    pub fn new(matrix: AdjacencyMatrix) -> Self {
        let d = matrix.d();
        TreeGeometry {
            matrix,
            levels: Mutex::new(vec![vec![BigUint::one(); d]]),
        }
    }

    pub fn matrix(&self) -> &AdjacencyMatrix {
        &self.matrix
    }

    pub fn d(&self) -> usize {
        self.matrix.d()
    }

    /// `v_n` for `n ≥ 1`.
    pub fn level_vector(&self, n: usize) -> Vec<BigUint> {
        assert!(n >= 1, "level vectors start at level 1");
        let mut levels = self.levels.lock().expect("level cache poisoned");
        while levels.len() < n {
            let last = levels.last().expect("seeded");
            let d = self.d();
            let next: Vec<BigUint> = (0..d)
                .map(|j| {
                    (0..d)
                        .filter(|&i| self.matrix.get(i, j))
                        .map(|i| &last[i])
                        .sum()
                })
                .collect();
            levels.push(next);
        }
        levels[n - 1].clone()
    }

    /// `|T_n|`
    pub fn level_size(&self, n: usize) -> BigUint {
        if n == 0 {
            BigUint::one()
        } else {
            self.level_vector(n).iter().sum()
        }
    }

    /// `|Δ_n| = Σ_{i ≤ n} |T_i|`
    pub fn delta_size(&self, n: usize) -> BigUint {
        (0..=n).map(|i| self.level_size(i)).sum()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        let g = v.generators();
        g.iter().all(|&x| (x as usize) < self.d())
            && g.windows(2).all(|w| self.matrix.get(w[0] as usize, w[1] as usize))
    }

    /// Generators allowed as the next letter after `v`.
    pub fn children_generators(&self, v: &Vertex) -> Vec<usize> {
        match v.last() {
            None => (0..self.d()).collect(),
            Some(g) => self.matrix.successors(g).collect(),
        }
    }

    /// `T_n` in lexicographic order.
    pub fn vertices_at(&self, n: usize) -> Result<Vec<Vertex>> {
        self.check_materializable(&self.level_size(n))?;
        let mut layer = vec![Vertex::root()];
        for _ in 0..n {
            layer = layer
                .iter()
                .flat_map(|v| self.children_generators(v).into_iter().map(move |g| v.child(g)))
                .collect();
        }
        Ok(layer)
    }

    /// `Δ_n` in depth-first (lexicographic) order.
    pub fn delta_vertices(&self, n: usize) -> Result<Vec<Vertex>> {
        self.check_materializable(&self.delta_size(n))?;
        let mut out = Vec::new();
        let mut stack = vec![Vertex::root()];
        while let Some(v) = stack.pop() {
            if v.level() < n {
                for g in self.children_generators(&v).into_iter().rev() {
                    stack.push(v.child(g));
                }
            }
            out.push(v);
        }
        Ok(out)
    }

    fn check_materializable(&self, size: &BigUint) -> Result<()> {
        let cap = Limits::global().enumeration;
        if *size > BigUint::from(cap) {
            Err(ShiftError::cap(size, cap))
        } else {
            Ok(())
        }
    }
}

/// `[|T_0|, ..., |T_n|]`
pub fn level_sizes(m: &AdjacencyMatrix, n: usize) -> Vec<BigUint> {
    let geometry = TreeGeometry::new(m.clone());
    (0..=n).map(|i| geometry.level_size(i)).collect()
}

/// `[|Δ_0|, ..., |Δ_n|]`
pub fn delta_sizes(m: &AdjacencyMatrix, n: usize) -> Vec<BigUint> {
    let mut total = BigUint::zero();
    level_sizes(m, n)
        .into_iter()
        .map(|t| {
            total += t;
            total.clone()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpandingNumber {
    /// `|T_{n+1}| / |T_n|`
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub ratio_est: f64,
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub spectral: f64,
    pub expandable: bool,
}

pub fn spectral_radius(m: &AdjacencyMatrix) -> f64 {
    perron_bracket(&m.as_f64()).estimate()
}

pub fn expanding_number(m: &AdjacencyMatrix, n: usize) -> Result<ExpandingNumber> {
    if n < 2 {
        return Err(ShiftError::Domain("expanding number needs n >= 2".into()));
    }
    let geometry = TreeGeometry::new(m.clone());
    let ratio_est = big_ratio(&geometry.level_size(n + 1), &geometry.level_size(n));
    let spectral = spectral_radius(m);
    Ok(ExpandingNumber {
        ratio_est,
        spectral,
        expandable: spectral > 1.0 + EXPANDING_TOLERANCE,
    })
}

/// Irreducible classes of an unexpandable matrix in block upper-triangular
/// order. Generator indices here are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SinkDecomposition {
    /// Generators listed class by class.
    pub order: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    /// Positions in `classes` of the classes with no exits.
    pub sinks: Vec<usize>,
}

impl SinkDecomposition {
    /// 0-based generators lying in some sink.
    pub fn sink_generators(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .sinks
            .iter()
            .flat_map(|&c| self.classes[c].iter().map(|g| g - 1))
            .collect();
        out.sort_unstable();
        out
    }
}

/// Every class must be a single vertex without a loop or a simple cycle; any
/// other irreducible block has spectral radius above 1.
pub fn sink_decomposition(m: &AdjacencyMatrix) -> Result<SinkDecomposition> {
    let d = m.d();
    let mut classes = strongly_connected_classes(m.rows());
    classes.sort();
    let mut class_of = vec![0; d];
    for (c, members) in classes.iter().enumerate() {
        for &g in members {
            class_of[g] = c;
        }
    }
    for members in &classes {
        let trivial = members.len() == 1 && !m.get(members[0], members[0]);
        let cycle = members
            .iter()
            .all(|&g| members.iter().filter(|&&h| m.get(g, h)).count() == 1);
        if !trivial && !cycle {
            return Err(ShiftError::NotUnexpandable {
                class: members.iter().map(|g| g + 1).collect(),
            });
        }
    }
    // condensation edges, then Kahn's algorithm preferring the smallest class
    let k = classes.len();
    let mut exits = vec![BTreeSet::new(); k];
    let mut indegree = vec![0usize; k];
    for i in 0..d {
        for j in m.successors(i) {
            let (a, b) = (class_of[i], class_of[j]);
            if a != b && exits[a].insert(b) {
                indegree[b] += 1;
            }
        }
    }
    let mut ready: BTreeSet<usize> = (0..k).filter(|&c| indegree[c] == 0).collect();
    let mut topo = Vec::with_capacity(k);
    while let Some(c) = ready.pop_first() {
        topo.push(c);
        for &b in &exits[c] {
            indegree[b] -= 1;
            if indegree[b] == 0 {
                ready.insert(b);
            }
        }
    }
    debug_assert_eq!(topo.len(), k, "condensation is acyclic");
    let ordered: Vec<Vec<usize>> = topo
        .iter()
        .map(|&c| classes[c].iter().map(|g| g + 1).collect())
        .collect();
    let sinks = topo
        .iter()
        .enumerate()
        .filter(|(_, &c)| exits[c].is_empty())
        .map(|(pos, _)| pos)
        .collect();
    Ok(SinkDecomposition {
        order: ordered.iter().flatten().copied().collect(),
        classes: ordered,
        sinks,
    })
}

/// Number of level-`m` vertices whose last generator lies in a sink, with
/// the root counted as `|sinks|` (as if seeded by the identity) and level
/// `-1` as 0.
fn sink_mass(geometry: &TreeGeometry, sinks: &[usize], m: isize) -> BigUint {
    if m < 0 {
        return BigUint::zero();
    }
    let v = geometry.level_vector(m as usize + 1);
    sinks.iter().map(|&g| &v[g]).sum()
}

/// `[a_1, ..., a_{n+1}]` with `a_ℓ = S(n−ℓ+1) − S(n−ℓ)`, where `S(m)` sums
/// `v_{m+1}` over sink generators and `S(−1) = 0`.
pub fn entering_counts(m: &AdjacencyMatrix, n: usize) -> Result<Vec<BigUint>> {
    let sinks = sink_decomposition(m)?.sink_generators();
    let geometry = TreeGeometry::new(m.clone());
    (1..=n + 1)
        .map(|l| {
            let hi = sink_mass(&geometry, &sinks, n as isize - l as isize + 1);
            let lo = sink_mass(&geometry, &sinks, n as isize - l as isize);
            if hi < lo {
                return Err(ShiftError::InvariantViolated(format!(
                    "negative entering count at level {l}"
                )));
            }
            Ok(hi - lo)
        })
        .collect()
}

/// `Σ_ℓ ℓ·a_ℓ / |Δ_n|` as a float.
pub fn entering_mass_ratio(m: &AdjacencyMatrix, n: usize) -> Result<f64> {
    let a = entering_counts(m, n)?;
    let weighted: BigUint = a
        .iter()
        .enumerate()
        .map(|(i, x)| x * BigUint::from(i + 1))
        .sum();
    Ok(big_ratio(&weighted, &TreeGeometry::new(m.clone()).delta_size(n)))
}
