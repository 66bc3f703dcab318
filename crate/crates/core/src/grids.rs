//! Two-dimensional shifts on ℕ² presented by forbidden rectangular patterns.
//!
//! Blocks are `k1 × k2` arrays indexed by `(i, j) ∈ [1,k1] × [1,k2]`; the first
//! coordinate selects the row. Only locally admissible blocks are produced:
//! a block is kept when no forbidden pattern occurs at any placement inside
//! it. For the built-in shifts (full, hard square, horizontal golden mean,
//! all zeros) the symbol 0 can be placed next to anything, so every locally
//! admissible block extends to a point and local admissibility is exact.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, ShiftError};
use crate::limits::Limits;
use crate::shatter::{self, BinaryFamily};
use crate::words::{realizes_all, Alphabet, Symbol};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "GridBlockRepr", into = "GridBlockRepr")]
pub struct GridBlock {
    rows: usize,
    cols: usize,
    cells: Vec<Symbol>,
}

impl GridBlock {
    pub fn new(rows: usize, cols: usize, cells: Vec<Symbol>) -> Result<Self> {
        if rows == 0 || cols == 0 || cells.len() != rows * cols {
            return Err(ShiftError::InvalidSpec(format!(
                "block of dims {rows}x{cols} needs {} cells, got {}",
                rows * cols,
                cells.len()
            )));
        }
        Ok(GridBlock { rows, cols, cells })
    }

    /// Builds a block from rows of digits, e.g. `["10", "01"]`.
    pub fn from_rows(rows: &[&str]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut cells = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(ShiftError::InvalidSpec("ragged rows".into()));
            }
            for ch in r.chars() {
                let d = ch
                    .to_digit(10)
                    .ok_or_else(|| ShiftError::InvalidSpec(format!("non-digit cell {ch:?}")))?;
                cells.push(d as Symbol);
            }
        }
        GridBlock::new(rows.len(), cols, cells)
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Cell `(i, j)` with 1-based coordinates.
    pub fn get(&self, i: usize, j: usize) -> Symbol {
        self.cells[(i - 1) * self.cols + (j - 1)]
    }

    /// Row-major cells.
    pub fn cells(&self) -> &[Symbol] {
        &self.cells
    }

    /// Restriction to the first `j` rows.
    pub fn top_rows(&self, j: usize) -> &[Symbol] {
        &self.cells[..j * self.cols]
    }
}

impl fmt::Display for GridBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.cells.chunks(self.cols).enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            for s in row {
                write!(f, "{s}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct GridBlockRepr {
    dims: [usize; 2],
    cells: String,
}

impl TryFrom<GridBlockRepr> for GridBlock {
    type Error = ShiftError;
    fn try_from(r: GridBlockRepr) -> Result<Self> {
        let cells = r
            .cells
            .chars()
            .map(|ch| {
                ch.to_digit(10)
                    .map(|d| d as Symbol)
                    .ok_or_else(|| ShiftError::InvalidSpec(format!("non-digit cell {ch:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        GridBlock::new(r.dims[0], r.dims[1], cells)
    }
}

impl From<GridBlock> for GridBlockRepr {
    fn from(b: GridBlock) -> Self {
        GridBlockRepr {
            dims: [b.rows, b.cols],
            cells: b.cells.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// `‖w‖_a`, the number of cells of `w` carrying `a`.
pub fn count_symbol(w: &GridBlock, a: Symbol) -> usize {
    w.cells.iter().filter(|&&s| s == a).count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ShiftSpec2DRepr", into = "ShiftSpec2DRepr")]
pub struct ShiftSpec2D {
    alphabet: Alphabet,
    forbidden: Vec<GridBlock>,
}

#[derive(Serialize, Deserialize)]
struct ShiftSpec2DRepr {
    alphabet: usize,
    #[serde(default)]
    forbidden: Vec<GridBlock>,
}

impl TryFrom<ShiftSpec2DRepr> for ShiftSpec2D {
    type Error = ShiftError;
    fn try_from(r: ShiftSpec2DRepr) -> Result<Self> {
        ShiftSpec2D::new(Alphabet::new(r.alphabet)?, r.forbidden)
    }
}

impl From<ShiftSpec2D> for ShiftSpec2DRepr {
    fn from(s: ShiftSpec2D) -> Self {
        ShiftSpec2DRepr {
            alphabet: s.alphabet.size(),
            forbidden: s.forbidden,
        }
    }
}

impl ShiftSpec2D {
    /// An empty pattern list is the full shift.
    pub fn new(alphabet: Alphabet, forbidden: Vec<GridBlock>) -> Result<Self> {
        for p in &forbidden {
            if let Some(&s) = p.cells.iter().find(|&&s| !alphabet.contains(s)) {
                return Err(ShiftError::InvalidSpec(format!(
                    "pattern {p} uses symbol {s} outside the alphabet"
                )));
            }
        }
        Ok(ShiftSpec2D {
            alphabet,
            forbidden,
        })
    }

    pub fn full(r: usize) -> Result<Self> {
        ShiftSpec2D::new(Alphabet::new(r)?, Vec::new())
    }

    /// No two horizontally or vertically adjacent 1s.
    pub fn hard_square() -> Self {
        ShiftSpec2D::new(
            Alphabet::BINARY,
            vec![
                GridBlock::from_rows(&["11"]).expect("valid"),
                GridBlock::from_rows(&["1", "1"]).expect("valid"),
            ],
        )
        .expect("valid")
    }

    /// Golden mean rule along rows only.
    pub fn horizontal_golden_mean() -> Self {
        ShiftSpec2D::new(
            Alphabet::BINARY,
            vec![GridBlock::from_rows(&["11"]).expect("valid")],
        )
        .expect("valid")
    }

    /// The binary shift whose only point is all zeros.
    pub fn all_zeros() -> Self {
        ShiftSpec2D::new(
            Alphabet::BINARY,
            vec![GridBlock::from_rows(&["1"]).expect("valid")],
        )
        .expect("valid")
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn forbidden(&self) -> &[GridBlock] {
        &self.forbidden
    }

    /// Whether a forbidden pattern has its bottom-right corner at `(i, j)`
    /// (0-based) of the partially filled row-major array `cells` of width `cols`.
    fn violates_at(&self, cells: &[Symbol], cols: usize, i: usize, j: usize) -> bool {
        self.forbidden.iter().any(|p| {
            if i + 1 < p.rows || j + 1 < p.cols {
                return false;
            }
            let (top, left) = (i + 1 - p.rows, j + 1 - p.cols);
            (0..p.rows).all(|a| {
                (0..p.cols).all(|b| cells[(top + a) * cols + left + b] == p.cells[a * p.cols + b])
            })
        })
    }

    fn max_pattern_rows(&self) -> usize {
        self.forbidden.iter().map(|p| p.rows).max().unwrap_or(1)
    }
}

/// Locally admissible `k1 × k2` blocks in lexicographic order of their cells.
pub fn blocks_2d(x: &ShiftSpec2D, k1: usize, k2: usize) -> Result<Vec<GridBlock>> {
    blocks_2d_capped(x, k1, k2, Limits::global().enumeration)
}

pub fn blocks_2d_capped(x: &ShiftSpec2D, k1: usize, k2: usize, cap: u64) -> Result<Vec<GridBlock>> {
    if k1 == 0 || k2 == 0 {
        return Err(ShiftError::Domain("block dims must be positive".into()));
    }
    let mut cells = vec![0; k1 * k2];
    let mut out = Vec::new();
    fill(x, k1, k2, 0, &mut cells, &mut out, cap)?;
    Ok(out)
}

fn fill(
    x: &ShiftSpec2D,
    k1: usize,
    k2: usize,
    pos: usize,
    cells: &mut [Symbol],
    out: &mut Vec<GridBlock>,
    cap: u64,
) -> Result<()> {
    if pos == k1 * k2 {
        if out.len() as u64 >= cap {
            return Err(ShiftError::cap(format!("more than {cap}"), cap));
        }
        out.push(GridBlock {
            rows: k1,
            cols: k2,
            cells: cells.to_vec(),
        });
        return Ok(());
    }
    let (i, j) = (pos / k2, pos % k2);
    for s in 0..x.alphabet.size() as Symbol {
        cells[pos] = s;
        if !x.violates_at(cells, k2, i, j) {
            fill(x, k1, k2, pos + 1, cells, out, cap)?;
        }
    }
    Ok(())
}

/// Row-by-row transfer computation of `|B_{k1,k2}|` and of `M^a_{k1,k2}`.
struct RowTransfer {
    rows: Vec<Vec<Symbol>>,
    weights: Vec<usize>,
}

impl RowTransfer {
    fn new(x: &ShiftSpec2D, k2: usize, a: Symbol) -> Result<Self> {
        let rows: Vec<Vec<Symbol>> = blocks_2d(x, 1, k2)?
            .into_iter()
            .map(|b| b.cells)
            .collect();
        let weights = rows.iter().map(|r| r.iter().filter(|&&s| s == a).count()).collect();
        Ok(RowTransfer { rows, weights })
    }

    /// Does stacking `stack` (row indices, last = newest) create a violation
    /// with bottom edge on the newest row?
    fn bottom_ok(&self, x: &ShiftSpec2D, stack: &[usize]) -> bool {
        let cols = self.rows.first().map_or(0, Vec::len);
        let cells: Vec<Symbol> = stack.iter().flat_map(|&r| self.rows[r].iter().copied()).collect();
        let i = stack.len() - 1;
        (0..cols).all(|j| !x.violates_at(&cells, cols, i, j))
    }

    /// `(count, max weight)` over all admissible stacks of `k1` rows.
    fn run(&self, x: &ShiftSpec2D, k1: usize) -> (BigUint, Option<usize>) {
        let keep = x.max_pattern_rows().saturating_sub(1);
        let mut layer: HashMap<Vec<usize>, (BigUint, usize)> = HashMap::new();
        layer.insert(Vec::new(), (BigUint::one(), 0));
        for _ in 0..k1 {
            let mut next: HashMap<Vec<usize>, (BigUint, usize)> = HashMap::new();
            for (state, (count, best)) in &layer {
                for r in 0..self.rows.len() {
                    let mut stack = state.clone();
                    stack.push(r);
                    if !self.bottom_ok(x, &stack) {
                        continue;
                    }
                    if stack.len() > keep {
                        stack.drain(..stack.len() - keep);
                    }
                    let w = best + self.weights[r];
                    let entry = next.entry(stack).or_insert((BigUint::zero(), 0));
                    entry.0 += count;
                    entry.1 = entry.1.max(w);
                }
            }
            layer = next;
        }
        let count = layer.values().map(|(c, _)| c).sum();
        let best = layer.values().map(|&(_, m)| m).max();
        (count, best)
    }
}

/// `|B_{k1,k2}(X)|` by row transfer, without materializing blocks.
pub fn count_blocks_2d(x: &ShiftSpec2D, k1: usize, k2: usize) -> Result<BigUint> {
    if k1 == 0 || k2 == 0 {
        return Err(ShiftError::Domain("block dims must be positive".into()));
    }
    Ok(RowTransfer::new(x, k2, 0)?.run(x, k1).0)
}

/// `M^a_{k1,k2}(X)` by row transfer.
pub fn max_symbol_count(x: &ShiftSpec2D, k1: usize, k2: usize, a: Symbol) -> Result<usize> {
    if k1 == 0 || k2 == 0 {
        return Err(ShiftError::Domain("block dims must be positive".into()));
    }
    RowTransfer::new(x, k2, a)?
        .run(x, k1)
        .1
        .ok_or(ShiftError::EmptyLanguage)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxSymbolBlock {
    /// `M^a_{k1,k2}`
    pub m: usize,
    /// Lexicographically first block attaining the maximum.
    pub witness: GridBlock,
}

pub fn max_symbol_block(x: &ShiftSpec2D, k1: usize, k2: usize, a: Symbol) -> Result<MaxSymbolBlock> {
    check_symbol(x, a)?;
    let mut best: Option<MaxSymbolBlock> = None;
    for w in blocks_2d(x, k1, k2)? {
        let m = count_symbol(&w, a);
        if best.as_ref().is_none_or(|b| m > b.m) {
            best = Some(MaxSymbolBlock { m, witness: w });
        }
    }
    best.ok_or(ShiftError::EmptyLanguage)
}

fn check_symbol(x: &ShiftSpec2D, a: Symbol) -> Result<()> {
    if x.alphabet.contains(a) {
        Ok(())
    } else {
        Err(ShiftError::Domain(format!("symbol {a} outside the alphabet")))
    }
}

/// `min_{1 ≤ k1,k2 ≤ kmax} M^a_{k1,k2} / (k1 k2)`, an upper bound on `Fr_a(X)`.
pub fn fr_estimate(x: &ShiftSpec2D, a: Symbol, kmax: usize) -> Result<Rational64> {
    check_symbol(x, a)?;
    if kmax == 0 {
        return Err(ShiftError::Domain("kmax must be >= 1".into()));
    }
    let mut best: Option<Rational64> = None;
    for k2 in 1..=kmax {
        let transfer = RowTransfer::new(x, k2, a)?;
        for k1 in 1..=kmax {
            let m = transfer.run(x, k1).1.ok_or(ShiftError::EmptyLanguage)?;
            let r = Rational64::new(m as i64, (k1 * k2) as i64);
            best = Some(best.map_or(r, |b| b.min(r)));
        }
    }
    Ok(best.expect("kmax >= 1"))
}

/// First block (lexicographically) whose top-`j`-row restrictions all carry
/// at least `j · k2 · target` copies of `a`.
pub fn prefix_regular_block(
    x: &ShiftSpec2D,
    k1: usize,
    k2: usize,
    a: Symbol,
    target: Rational64,
) -> Result<Option<GridBlock>> {
    check_symbol(x, a)?;
    if target < Rational64::from_integer(0) || target > Rational64::from_integer(1) {
        return Err(ShiftError::Domain(format!("target {target} outside [0, 1]")));
    }
    let blocks = blocks_2d(x, k1, k2)?;
    if blocks.is_empty() {
        return Err(ShiftError::EmptyLanguage);
    }
    let (num, den) = (*target.numer(), *target.denom());
    Ok(blocks.into_iter().find(|u| {
        let mut running = 0i64;
        (1..=k1).all(|j| {
            running += u.cells[(j - 1) * k2..j * k2].iter().filter(|&&s| s == a).count() as i64;
            running * den >= (j * k2) as i64 * num
        })
    }))
}

/// A subset of ℕ² (1-based), explicit or given by a rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GridPositionRepr", into = "GridPositionRepr")]
pub enum GridPositionSet {
    Explicit(BTreeSet<(usize, usize)>),
    /// `{(i, j) : i + j even}`
    Checkerboard,
    /// `{(i, j) : i ≤ m}`
    RowsLeq(usize),
    All,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum GridPositionRepr {
    Explicit(Vec<[usize; 2]>),
    Named(String),
    RowsLeq { rows_leq: usize },
}

impl TryFrom<GridPositionRepr> for GridPositionSet {
    type Error = ShiftError;
    fn try_from(r: GridPositionRepr) -> Result<Self> {
        match r {
            GridPositionRepr::Explicit(v) => {
                if v.iter().any(|&[i, j]| i == 0 || j == 0) {
                    return Err(ShiftError::InvalidSpec("grid coordinates start at 1".into()));
                }
                Ok(GridPositionSet::Explicit(v.into_iter().map(|[i, j]| (i, j)).collect()))
            }
            GridPositionRepr::Named(name) => match name.as_str() {
                "checkerboard" => Ok(GridPositionSet::Checkerboard),
                "all" => Ok(GridPositionSet::All),
                other => Err(ShiftError::InvalidSpec(format!("unknown position set {other:?}"))),
            },
            GridPositionRepr::RowsLeq { rows_leq } => Ok(GridPositionSet::RowsLeq(rows_leq)),
        }
    }
}

impl From<GridPositionSet> for GridPositionRepr {
    fn from(s: GridPositionSet) -> Self {
        match s {
            GridPositionSet::Explicit(set) => {
                GridPositionRepr::Explicit(set.into_iter().map(|(i, j)| [i, j]).collect())
            }
            GridPositionSet::Checkerboard => GridPositionRepr::Named("checkerboard".into()),
            GridPositionSet::All => GridPositionRepr::Named("all".into()),
            GridPositionSet::RowsLeq(m) => GridPositionRepr::RowsLeq { rows_leq: m },
        }
    }
}

impl GridPositionSet {
    pub fn contains(&self, i: usize, j: usize) -> bool {
        match self {
            GridPositionSet::Explicit(s) => s.contains(&(i, j)),
            GridPositionSet::Checkerboard => (i + j).is_multiple_of(2),
            GridPositionSet::RowsLeq(m) => i <= *m,
            GridPositionSet::All => true,
        }
    }

    /// `|S ∩ [1,n1] × [1,n2]|`
    pub fn count_in(&self, n1: usize, n2: usize) -> usize {
        match self {
            GridPositionSet::Explicit(s) => {
                s.iter().filter(|&&(i, j)| i <= n1 && j <= n2).count()
            }
            GridPositionSet::Checkerboard => (n1 * n2).div_ceil(2),
            GridPositionSet::RowsLeq(m) => (*m).min(n1) * n2,
            GridPositionSet::All => n1 * n2,
        }
    }

    /// Members inside the window, row-major.
    pub fn members_in(&self, k1: usize, k2: usize) -> Vec<(usize, usize)> {
        (1..=k1)
            .flat_map(|i| (1..=k2).map(move |j| (i, j)))
            .filter(|&(i, j)| self.contains(i, j))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridDensity {
    #[serde(serialize_with = "crate::numfmt::ser_ratio_vec")]
    pub ratios: Vec<Rational64>,
    /// Largest ratio over the second half of the window schedule.
    #[serde(serialize_with = "crate::numfmt::ser_ratio")]
    pub upper_est: Rational64,
}

pub fn upper_density_grid(s: &GridPositionSet, windows: &[(usize, usize)]) -> Result<GridDensity> {
    if windows.is_empty() {
        return Err(ShiftError::Domain("window schedule is empty".into()));
    }
    if windows.iter().any(|&(a, b)| a == 0 || b == 0) {
        return Err(ShiftError::Domain("windows must be at least 1x1".into()));
    }
    let ratios: Vec<Rational64> = windows
        .iter()
        .map(|&(n1, n2)| Rational64::new(s.count_in(n1, n2) as i64, (n1 * n2) as i64))
        .collect();
    let upper_est = ratios[windows.len() / 2..]
        .iter()
        .copied()
        .max()
        .expect("tail half is nonempty");
    Ok(GridDensity { ratios, upper_est })
}

fn window_positions(s: &GridPositionSet, k1: usize, k2: usize) -> Result<Vec<usize>> {
    if let GridPositionSet::Explicit(set) = s {
        if let Some(&(i, j)) = set.iter().find(|&&(i, j)| i > k1 || j > k2) {
            return Err(ShiftError::Domain(format!(
                "position ({i},{j}) outside the {k1}x{k2} window"
            )));
        }
    }
    Ok(s.members_in(k1, k2)
        .into_iter()
        .map(|(i, j)| (i - 1) * k2 + (j - 1))
        .collect())
}

/// Every assignment on `S` occurs in some block of `B_{k1,k2}(X)`.
pub fn is_indep_2d(x: &ShiftSpec2D, s: &GridPositionSet, k1: usize, k2: usize) -> Result<bool> {
    let positions = window_positions(s, k1, k2)?;
    let cells: Vec<Vec<Symbol>> = blocks_2d(x, k1, k2)?.into_iter().map(|b| b.cells).collect();
    Ok(realizes_all(&cells, &positions, x.alphabet.size()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndepWitness2D {
    pub j: BTreeSet<(usize, usize)>,
    pub k: usize,
}

/// Sauer–Shelah witness: the largest `k` allowed by the counting hypothesis on
/// `B_{k1,k2}(X)`, and the lexicographically first independent `k`-set.
pub fn indep_witness_2d(x: &ShiftSpec2D, k1: usize, k2: usize) -> Result<IndepWitness2D> {
    if x.alphabet.size() != 2 {
        return Err(ShiftError::Domain("independence witnesses need a binary alphabet".into()));
    }
    let n = k1 * k2;
    if n > 64 {
        return Err(ShiftError::Domain("window larger than 64 cells".into()));
    }
    let blocks = blocks_2d(x, k1, k2)?;
    if blocks.is_empty() {
        return Err(ShiftError::EmptyLanguage);
    }
    let family = BinaryFamily::new(
        n,
        blocks.iter().map(|b| {
            b.cells
                .iter()
                .enumerate()
                .fold(0u64, |acc, (p, &s)| acc | ((s as u64) << p))
        }),
    )?;
    let k = shatter::largest_guaranteed_k(&family);
    if k == 0 {
        return Err(ShiftError::NoWitness);
    }
    let index_set = shatter::extract_shattered(&family, k)?;
    let j: BTreeSet<(usize, usize)> = index_set
        .indices()
        .iter()
        .map(|&p| ((p - 1) / k2 + 1, (p - 1) % k2 + 1))
        .collect();
    let set = GridPositionSet::Explicit(j.clone());
    if !is_indep_2d(x, &set, k1, k2)? {
        return Err(ShiftError::InvariantViolated(format!(
            "extracted set {j:?} is not independent"
        )));
    }
    Ok(IndepWitness2D { j, k })
}
