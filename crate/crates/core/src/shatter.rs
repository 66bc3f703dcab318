//! Shattering combinatorics for families of binary tuples: the binomial tail
//! bound, Pajor's count of shattered sets and Sauer–Shelah extraction.
//!
//! Coordinates are 1-based. Member bit `i - 1` holds coordinate `i`, and the
//! string form writes coordinate 1 first.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::bigmath::binomial_prefix_sum;
use crate::error::{Result, ShiftError};
use crate::limits::Limits;
use crate::search::first_hereditary_set;
use crate::words::Symbol;

/// A set of distinct binary tuples of length `n ≤ 64`, bit-packed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FamilyRepr", into = "FamilyRepr")]
pub struct BinaryFamily {
    n: usize,
    members: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct FamilyRepr {
    n: usize,
    members: Vec<String>,
}

impl TryFrom<FamilyRepr> for BinaryFamily {
    type Error = ShiftError;
    fn try_from(r: FamilyRepr) -> Result<Self> {
        let members = r
            .members
            .iter()
            .map(|s| parse_member(r.n, s))
            .collect::<Result<Vec<_>>>()?;
        BinaryFamily::new(r.n, members)
    }
}

impl From<BinaryFamily> for FamilyRepr {
    fn from(f: BinaryFamily) -> Self {
        FamilyRepr {
            n: f.n,
            members: f.members.iter().map(|&m| format_member(f.n, m)).collect(),
        }
    }
}

fn parse_member(n: usize, s: &str) -> Result<u64> {
    if s.len() != n {
        return Err(ShiftError::InvalidSpec(format!("member {s:?} has length != {n}")));
    }
    s.chars().enumerate().try_fold(0u64, |acc, (i, ch)| match ch {
        '0' => Ok(acc),
        '1' => Ok(acc | (1 << i)),
        _ => Err(ShiftError::InvalidSpec(format!("member {s:?} is not binary"))),
    })
}

fn format_member(n: usize, m: u64) -> String {
    (0..n).map(|i| if m >> i & 1 == 1 { '1' } else { '0' }).collect()
}

impl BinaryFamily {
    /// Duplicates are dropped; members are kept sorted.
    pub fn new(n: usize, members: impl IntoIterator<Item = u64>) -> Result<Self> {
        if n > 64 {
            return Err(ShiftError::Domain(format!("tuple length {n} exceeds 64")));
        }
        let members: BTreeSet<u64> = members.into_iter().collect();
        if n < 64 {
            if let Some(&m) = members.iter().find(|&&m| m >> n != 0) {
                return Err(ShiftError::InvalidSpec(format!(
                    "member {m:#b} has bits beyond length {n}"
                )));
            }
        }
        Ok(BinaryFamily {
            n,
            members: members.into_iter().collect(),
        })
    }

    /// Parses members written as `"010"` with coordinate 1 first.
    pub fn from_strings(n: usize, members: &[&str]) -> Result<Self> {
        let parsed = members
            .iter()
            .map(|s| parse_member(n, s))
            .collect::<Result<Vec<_>>>()?;
        BinaryFamily::new(n, parsed)
    }

    /// All of `{0,1}^n`.
    pub fn full(n: usize) -> Result<Self> {
        if n > 20 {
            return Err(ShiftError::Domain("full family limited to n <= 20".into()));
        }
        BinaryFamily::new(n, 0..1u64 << n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn member_strings(&self) -> Vec<String> {
        self.members.iter().map(|&m| format_member(self.n, m)).collect()
    }
}

/// A sorted subset of `[1, n]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        if set.contains(&0) {
            return Err(ShiftError::Domain("indices start at 1".into()));
        }
        Ok(IndexSet(set.into_iter().collect()))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn mask(&self) -> u64 {
        self.0.iter().fold(0, |acc, &i| acc | 1 << (i - 1))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A map `η : S → {0, …, r−1}`; `values[t]` is the symbol at `set.indices()[t]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    set: IndexSet,
    values: Vec<Symbol>,
}

impl Assignment {
    pub fn new(set: IndexSet, values: Vec<Symbol>) -> Result<Self> {
        if set.len() != values.len() {
            return Err(ShiftError::Domain(format!(
                "assignment has {} values for {} indices",
                values.len(),
                set.len()
            )));
        }
        Ok(Assignment { set, values })
    }

    pub fn set(&self) -> &IndexSet {
        &self.set
    }

    pub fn values(&self) -> &[Symbol] {
        &self.values
    }

    pub fn get(&self, index: usize) -> Option<Symbol> {
        self.set.0.binary_search(&index).ok().map(|t| self.values[t])
    }

    /// Does the binary tuple `member` agree with this assignment?
    pub fn matches(&self, member: u64) -> bool {
        self.set
            .0
            .iter()
            .zip(&self.values)
            .all(|(&i, &v)| (member >> (i - 1) & 1) as Symbol == v)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailBound {
    #[serde(serialize_with = "crate::numfmt::ser_big")]
    pub lhs: BigUint,
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub rhs: f64,
    pub holds: bool,
}

/// Base-2 entropy `H₂(ε) = −ε log₂ ε − (1−ε) log₂(1−ε)`, with `H₂(0) = H₂(1) = 0`.
pub fn binary_entropy(eps: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(eps) + term(1.0 - eps)
}

/// `Σ_{j ≤ ⌊εN⌋} C(N, j)` against `2^{N·H₂(ε)}`.
pub fn entropy_tail_bound(n: usize, eps: Rational64) -> Result<TailBound> {
    if n == 0 {
        return Err(ShiftError::Domain("N must be >= 1".into()));
    }
    if eps <= Rational64::from_integer(0) || eps > Rational64::new(1, 2) {
        return Err(ShiftError::Domain(format!("eps {eps} outside (0, 1/2]")));
    }
    let upto = (eps * Rational64::from_integer(n as i64)).floor().to_integer() as usize;
    let lhs = binomial_prefix_sum(n, upto);
    let h = binary_entropy(eps.to_f64().expect("finite"));
    let exponent = n as f64 * h;
    let rhs = exponent.exp2();
    // compare in log space so huge N stays exact enough
    let holds = crate::bigmath::ln_big(&lhs) <= exponent * std::f64::consts::LN_2 + 1e-12;
    Ok(TailBound { lhs, rhs, holds })
}

fn shattered_mask(f: &BinaryFamily, mask: u64, size: usize) -> bool {
    if size >= 64 || (f.members.len() as u128) < 1u128 << size {
        return false;
    }
    let needed = 1usize << size;
    let mut seen = HashSet::with_capacity(needed);
    for &m in &f.members {
        seen.insert(m & mask);
        if seen.len() == needed {
            return true;
        }
    }
    false
}

/// All `2^{|S|}` patterns on `S` occur among the members.
pub fn is_shattered(f: &BinaryFamily, s: &IndexSet) -> Result<bool> {
    if let Some(&i) = s.0.iter().find(|&&i| i > f.n) {
        return Err(ShiftError::Domain(format!("index {i} outside [1, {}]", f.n)));
    }
    if f.is_empty() {
        return Ok(false);
    }
    Ok(shattered_mask(f, s.mask(), s.len()))
}

/// `|𝕀(F)|`, counting `∅` when `F` is nonempty.
pub fn count_shattered(f: &BinaryFamily) -> Result<u64> {
    count_shattered_capped(f, Limits::global().enumeration)
}

pub fn count_shattered_capped(f: &BinaryFamily, cap: u64) -> Result<u64> {
    if f.is_empty() {
        return Ok(0);
    }
    // shattered sets are closed under subsets, so grow them index by index
    let mut count = 0u64;
    let mut stack: Vec<(u64, usize, usize)> = vec![(0, 0, 0)];
    while let Some((mask, size, next)) = stack.pop() {
        count += 1;
        if count > cap {
            return Err(ShiftError::cap(format!("more than {cap} shattered sets"), cap));
        }
        for i in next..f.n {
            let grown = mask | 1 << i;
            if shattered_mask(f, grown, size + 1) {
                stack.push((grown, size + 1, i + 1));
            }
        }
    }
    Ok(count)
}

/// Largest `k ≤ n` with `|F| > Σ_{j<k} C(n, j)`; zero for the empty family.
pub fn largest_guaranteed_k(f: &BinaryFamily) -> usize {
    let size = BigUint::from(f.len());
    (0..=f.n)
        .rev()
        .find(|&k| k == 0 || size > binomial_prefix_sum(f.n, k - 1))
        .filter(|_| !f.is_empty())
        .unwrap_or(0)
}

/// The lexicographically smallest shattered `k`-set, which exists whenever
/// `|F| > Σ_{j<k} C(n, j)`.
pub fn extract_shattered(f: &BinaryFamily, k: usize) -> Result<IndexSet> {
    if k > f.n {
        return Err(ShiftError::PreconditionViolated(format!("k = {k} exceeds n = {}", f.n)));
    }
    let bound = if k == 0 {
        BigUint::default()
    } else {
        binomial_prefix_sum(f.n, k - 1)
    };
    if BigUint::from(f.len()) <= bound {
        return Err(ShiftError::PreconditionViolated(format!(
            "|F| = {} does not exceed {bound}",
            f.len()
        )));
    }
    let found = first_hereditary_set(f.n, k, |s| {
        let mask = s.iter().fold(0u64, |acc, &i| acc | 1 << i);
        shattered_mask(f, mask, s.len())
    });
    match found {
        Some(s) => IndexSet::new(s.into_iter().map(|i| i + 1)),
        None => Err(ShiftError::InvariantViolated(format!(
            "no shattered {k}-set although the counting hypothesis holds"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: usize, m: &[&str]) -> BinaryFamily {
        BinaryFamily::from_strings(n, m).unwrap()
    }

    fn set(v: &[usize]) -> IndexSet {
        IndexSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn tail_bound_examples() {
        let a = entropy_tail_bound(4, Rational64::new(1, 2)).unwrap();
        assert_eq!(a.lhs, BigUint::from(11u32));
        assert!((a.rhs - 16.0).abs() < 1e-9);
        assert!(a.holds);
        let b = entropy_tail_bound(9, Rational64::new(1, 3)).unwrap();
        assert_eq!(b.lhs, BigUint::from(130u32));
        assert!((b.rhs - 307.6).abs() < 0.1);
        assert!(b.holds);
        // ⌊εN⌋ = 0 leaves only C(N, 0)
        let c = entropy_tail_bound(5, Rational64::new(1, 10)).unwrap();
        assert_eq!(c.lhs, BigUint::from(1u32));
        assert!(c.rhs >= 1.0 && c.holds);
        assert!(entropy_tail_bound(4, Rational64::from_integer(0)).is_err());
        assert!(entropy_tail_bound(4, Rational64::new(3, 5)).is_err());
        assert!(entropy_tail_bound(0, Rational64::new(1, 2)).is_err());
    }

    #[test]
    fn entropy_function() {
        assert_eq!(binary_entropy(0.0), 0.0);
        assert!((binary_entropy(0.5) - 1.0).abs() < 1e-15);
        assert!((binary_entropy(1.0 / 3.0) - 0.918_295_834).abs() < 1e-9);
    }

    #[test]
    fn shattering_examples() {
        let full = BinaryFamily::full(2).unwrap();
        assert!(is_shattered(&full, &set(&[1, 2])).unwrap());
        let f = fam(3, &["000", "001", "010", "100"]);
        assert!(!is_shattered(&f, &set(&[2, 3])).unwrap());
        assert!(is_shattered(&f, &set(&[3])).unwrap());
        assert!(is_shattered(&f, &set(&[])).unwrap());
        assert!(!is_shattered(&fam(3, &[]), &set(&[])).unwrap());
        assert!(is_shattered(&f, &set(&[4])).is_err());
    }

    #[test]
    fn counting_examples() {
        assert_eq!(count_shattered(&fam(2, &["00"])).unwrap(), 1);
        assert_eq!(count_shattered(&BinaryFamily::full(2).unwrap()).unwrap(), 4);
        assert_eq!(count_shattered(&fam(3, &["000", "001", "010", "100"])).unwrap(), 4);
        assert_eq!(count_shattered(&fam(3, &[])).unwrap(), 0);
        assert!(count_shattered_capped(&BinaryFamily::full(4).unwrap(), 5).is_err());
    }

    #[test]
    fn extraction_examples() {
        assert_eq!(extract_shattered(&BinaryFamily::full(2).unwrap(), 2).unwrap(), set(&[1, 2]));
        let f = fam(3, &["000", "001", "010", "011", "100"]);
        assert_eq!(extract_shattered(&f, 2).unwrap(), set(&[2, 3]));
        assert_eq!(extract_shattered(&fam(1, &["0", "1"]), 1).unwrap(), set(&[1]));
        assert!(matches!(
            extract_shattered(&fam(3, &["000", "001", "010", "100"]), 2),
            Err(ShiftError::PreconditionViolated(_))
        ));
        assert_eq!(largest_guaranteed_k(&f), 2);
        assert_eq!(largest_guaranteed_k(&BinaryFamily::full(3).unwrap()), 3);
        assert_eq!(largest_guaranteed_k(&fam(3, &["000"])), 0);
    }

    #[test]
    fn assignments() {
        let a = Assignment::new(set(&[1, 3]), vec![1, 0]).unwrap();
        assert_eq!(a.get(3), Some(0));
        assert_eq!(a.get(2), None);
        assert!(a.matches(parse_member(3, "110").unwrap()));
        assert!(!a.matches(parse_member(3, "101").unwrap()));
        assert!(Assignment::new(set(&[1]), vec![]).is_err());
    }

    #[test]
    fn json_form() {
        let f: BinaryFamily = serde_json::from_str(r#"{"n":3,"members":["010","000","010"]}"#).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"n":3,"members":["000","010"]}"#);
        assert!(serde_json::from_str::<BinaryFamily>(r#"{"n":2,"members":["012"]}"#).is_err());
        assert!(serde_json::from_str::<BinaryFamily>(r#"{"n":2,"members":["0"]}"#).is_err());
    }
}
