//! Tuple arithmetic: module degrees, transvection orders and the product
//! skeleton.
//!
//! A tuple `(n1, …, nt)` encodes the modules `m_i = V_(i·n1 - 2(n2 + … + ni))`.
//! The product `m_i ⊗ m_j → m_k` (with `i ≤ j` and `i + j ≤ k`) is
//! `α_ijk · (·,·)_c` where `c = (deg m_i + deg m_j - deg m_k) / 2`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{arg_err, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ChainTuple(Vec<i64>);

impl ChainTuple {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return arg_err("a chain tuple needs at least one entry");
        }
        Ok(ChainTuple(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// Number of modules `t`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `n_i`, 1-based.
    pub fn n(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    pub fn prefix(&self, k: usize) -> ChainTuple {
        ChainTuple(self.0[..k].to_vec())
    }

    pub fn extended(&self, next: i64) -> ChainTuple {
        let mut v = self.0.clone();
        v.push(next);
        ChainTuple(v)
    }
}

impl<const N: usize> From<[i64; N]> for ChainTuple {
    fn from(v: [i64; N]) -> Self {
        assert!(N > 0, "empty chain tuple");
        ChainTuple(v.to_vec())
    }
}

impl fmt::Display for ChainTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (idx, n) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

/// Parses space- or comma-separated integers.
impl FromStr for ChainTuple {
    type Err = Error;

    /// Accepts `3 1 1 3`, `3,1,1,3` and the display form `(3, 1, 1, 3)`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(inner);
        let entries = inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|w| !w.is_empty())
            .map(|w| {
                w.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("not an integer: {w:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ChainTuple::new(entries)
    }
}

/// Module degrees derived from a tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleLayout {
    tuple: ChainTuple,
    degrees: Vec<usize>,
}

impl ModuleLayout {
    pub fn tuple(&self) -> &ChainTuple {
        &self.tuple
    }

    pub fn t(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// `deg m_i`, 1-based.
    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i - 1]
    }

    pub fn dim(&self, i: usize) -> usize {
        self.degrees[i - 1] + 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d + 1).collect()
    }

    /// Dimension of the nilradical `m_1 ⊕ … ⊕ m_t`.
    pub fn nil_dim(&self) -> usize {
        self.degrees.iter().map(|d| d + 1).sum()
    }
}

/// Signed module degrees `i·n1 - 2 Σ_{j=2..i} n_j`.
pub fn raw_degrees(tuple: &ChainTuple) -> Vec<i64> {
    let n1 = tuple.n(1);
    let mut acc = 0;
    (1..=tuple.len())
        .map(|i| {
            if i >= 2 {
                acc += tuple.n(i);
            }
            i as i64 * n1 - 2 * acc
        })
        .collect()
}

pub fn layout(tuple: &ChainTuple) -> Result<ModuleLayout> {
    let raw = raw_degrees(tuple);
    let mut degrees = Vec::with_capacity(raw.len());
    for (idx, d) in raw.into_iter().enumerate() {
        if d < 0 {
            return Err(Error::NegativeDegree {
                index: idx + 1,
                degree: d,
            });
        }
        degrees.push(d as usize);
    }
    Ok(ModuleLayout {
        tuple: tuple.clone(),
        degrees,
    })
}

/// Index triple `(i, j, k)` of a product `m_i ⊗ m_j → m_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlotIndex {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl SlotIndex {
    pub const fn new(i: usize, j: usize, k: usize) -> Self {
        SlotIndex { i, j, k }
    }
}

impl fmt::Display for SlotIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.i < 10 && self.j < 10 && self.k < 10 {
            write!(f, "{}{}{}", self.i, self.j, self.k)
        } else {
            write!(f, "{}_{}_{}", self.i, self.j, self.k)
        }
    }
}

impl FromStr for SlotIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a slot index: {s:?}"));
        let parts: Vec<usize> = if s.contains('_') || s.contains(',') {
            s.split(['_', ','])
                .map(|p| p.trim().parse().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        match parts[..] {
            [i, j, k] => Ok(SlotIndex { i, j, k }),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ForcedZeroReason {
    /// `deg m_i + deg m_j - deg m_k` is odd: `m_k` never occurs in `m_i ⊗ m_j`.
    ParityOfC,
    /// `c` is negative or exceeds `min(deg m_i, deg m_j)`.
    COutOfRange,
    /// `i = j` with `c` even: the only invariant product is symmetric, while
    /// the bracket on `m_i` must be skew.
    SkewEvenC,
}

impl fmt::Display for ForcedZeroReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ForcedZeroReason::ParityOfC => "degree parity: m_k does not occur in m_i ⊗ m_j",
            ForcedZeroReason::COutOfRange => "m_k does not occur in the Clebsch-Gordan decomposition",
            ForcedZeroReason::SkewEvenC => "even transvection on equal modules is symmetric, not skew",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SlotStatus {
    ForcedZero(ForcedZeroReason),
    /// `i = 1, k = j + 1`: the product must be nonzero so that `m_(j+1) ⊆ [m_1, m_j]`.
    Required,
    Candidate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProductSlot {
    pub index: SlotIndex,
    /// The transvection order `c_ijk` when it is admissible.
    pub order: Option<usize>,
    pub status: SlotStatus,
}

impl ProductSlot {
    pub fn is_forced_zero(&self) -> bool {
        matches!(self.status, SlotStatus::ForcedZero(_))
    }
}

/// All product slots of a layout, in lexicographic `(i, j, k)` order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    slots: Vec<ProductSlot>,
}

impl Skeleton {
    pub fn slots(&self) -> &[ProductSlot] {
        &self.slots
    }

    pub fn get(&self, index: SlotIndex) -> Option<&ProductSlot> {
        self.slots
            .binary_search_by(|s| s.index.cmp(&index))
            .ok()
            .map(|p| &self.slots[p])
    }

    pub fn iter(&self) -> impl Iterator<Item = &ProductSlot> {
        self.slots.iter()
    }

    pub fn required(&self) -> impl Iterator<Item = SlotIndex> + '_ {
        self.slots
            .iter()
            .filter(|s| s.status == SlotStatus::Required)
            .map(|s| s.index)
    }
}

fn check_indices(layout: &ModuleLayout, i: usize, j: usize, k: usize) -> Result<()> {
    let t = layout.t();
    if !(1 <= i && i <= j && i + j <= k && k <= t) {
        return arg_err(format!(
            "slot ({i}, {j}, {k}) needs 1 ≤ i ≤ j and i + j ≤ k ≤ t = {t}"
        ));
    }
    Ok(())
}

fn classify_order(layout: &ModuleLayout, i: usize, j: usize, k: usize) -> std::result::Result<usize, ForcedZeroReason> {
    let diff = layout.degree(i) as i64 + layout.degree(j) as i64 - layout.degree(k) as i64;
    if diff.rem_euclid(2) != 0 {
        return Err(ForcedZeroReason::ParityOfC);
    }
    let c = diff / 2;
    if c < 0 || c as usize > layout.degree(i).min(layout.degree(j)) {
        return Err(ForcedZeroReason::COutOfRange);
    }
    Ok(c as usize)
}

/// `c_ijk` when it is a non-negative integer not exceeding
/// `min(deg m_i, deg m_j)`, `None` otherwise.
pub fn c_index(layout: &ModuleLayout, i: usize, j: usize, k: usize) -> Result<Option<usize>> {
    check_indices(layout, i, j, k)?;
    Ok(classify_order(layout, i, j, k).ok())
}

/// A failed condition of the integer admissibility check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    N1NotPositive { n1: i64 },
    N2Even { n2: i64 },
    N2OutOfRange { n1: i64, n2: i64 },
    EntryOutOfRange { index: usize, value: i64, bound: i64 },
}

fn subscript(i: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    i.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::N1NotPositive { n1 } => write!(f, "n₁ must be positive (got {n1})"),
            Violation::N2Even { n2 } => write!(f, "n₂ must be odd (got {n2})"),
            Violation::N2OutOfRange { n1, n2 } => {
                write!(f, "n₂ must satisfy 1 ≤ n₂ ≤ n₁ (got n₂ = {n2}, n₁ = {n1})")
            }
            Violation::EntryOutOfRange { index, value, bound } => {
                let s = subscript(*index);
                let p = subscript(index - 1);
                if value < &0 {
                    write!(f, "n{s} must be non-negative (got {value})")
                } else {
                    write!(f, "n{s} > min(n₁, deg m{p}) = {bound} (got {value})")
                }
            }
        }
    }
}

/// Outcome of the integer admissibility check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Admissibility {
    pub violations: Vec<Violation>,
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Integer admissibility: `m_2 ⊆ Λ² m_1` and `m_(i+1) ⊆ m_1 ⊗ m_i`, i.e.
/// `n2` odd with `1 ≤ n2 ≤ n1` and `0 ≤ n_(i+1) ≤ min(n1, deg m_i)`.
pub fn step1_admissible(tuple: &ChainTuple) -> Admissibility {
    let mut violations = Vec::new();
    let n1 = tuple.n(1);
    if n1 < 1 {
        violations.push(Violation::N1NotPositive { n1 });
    }
    if tuple.len() >= 2 {
        let n2 = tuple.n(2);
        if n2.rem_euclid(2) == 0 {
            violations.push(Violation::N2Even { n2 });
        }
        if n2 < 1 || n2 > n1 {
            violations.push(Violation::N2OutOfRange { n1, n2 });
        }
    }
    let raw = raw_degrees(tuple);
    for i in 2..tuple.len() {
        let value = tuple.n(i + 1);
        let bound = n1.min(raw[i - 1]);
        if value < 0 || value > bound {
            violations.push(Violation::EntryOutOfRange {
                index: i + 1,
                value,
                bound,
            });
        }
    }
    Admissibility { violations }
}

/// Every admissible tuple of length `t ≥ 1` with `1 ≤ n1 ≤ n1_max`, in
/// lexicographic order.
pub fn admissible_tuples(t: usize, n1_max: i64) -> Vec<ChainTuple> {
    let mut out: Vec<ChainTuple> = (1..=n1_max).map(|n1| ChainTuple::from([n1])).collect();
    for len in 2..=t {
        let mut next = Vec::new();
        for prefix in &out {
            let n1 = prefix.n(1);
            let range: Vec<i64> = if len == 2 {
                (1..=n1).step_by(2).collect()
            } else {
                let deg = raw_degrees(prefix)[len - 2];
                (0..=n1.min(deg)).collect()
            };
            next.extend(range.into_iter().map(|v| prefix.extended(v)));
        }
        out = next;
    }
    out
}

/// Classifies every product slot `(i, j, k)` with `1 ≤ i ≤ j`, `i + j ≤ k ≤ t`.
pub fn alpha_skeleton(layout: &ModuleLayout) -> Skeleton {
    let t = layout.t();
    let mut slots = Vec::new();
    for i in 1..=t {
        for j in i..=t {
            for k in (i + j)..=t {
                let (order, status) = match classify_order(layout, i, j, k) {
                    Err(reason) => (None, SlotStatus::ForcedZero(reason)),
                    Ok(c) if i == j && c % 2 == 0 => {
                        (Some(c), SlotStatus::ForcedZero(ForcedZeroReason::SkewEvenC))
                    }
                    Ok(c) if i == 1 && k == j + 1 => (Some(c), SlotStatus::Required),
                    Ok(c) => (Some(c), SlotStatus::Candidate),
                };
                slots.push(ProductSlot {
                    index: SlotIndex { i, j, k },
                    order,
                    status,
                });
            }
        }
    }
    Skeleton { slots }
}
