//! Ordered index sets, finite windows into them, and the cut structure of the
//! reference flag.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ordered set labelling the basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexKind {
    /// `1 < 2 < 3 < ...`
    PositiveInts,
    /// `... < -3 < -2 < -1`; the mirror image of `PositiveInts`.
    NegativeInts,
    /// `... < -1 < 0 < 1 < ...`
    AllInts,
    /// The nonzero integers in natural order.
    SatoSplit,
    /// `1 < 2 < ... < ... < -2 < -1`
    PosThenNeg,
}

impl IndexKind {
    pub const ALL: [IndexKind; 5] = [
        IndexKind::PositiveInts,
        IndexKind::NegativeInts,
        IndexKind::AllInts,
        IndexKind::SatoSplit,
        IndexKind::PosThenNeg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IndexKind::PositiveInts => "positive_ints",
            IndexKind::NegativeInts => "negative_ints",
            IndexKind::AllInts => "all_ints",
            IndexKind::SatoSplit => "sato_split",
            IndexKind::PosThenNeg => "pos_then_neg",
        }
    }

    pub fn is_valid(self, i: i64) -> bool {
        match self {
            IndexKind::PositiveInts => i >= 1,
            IndexKind::NegativeInts => i <= -1,
            IndexKind::AllInts => true,
            IndexKind::SatoSplit | IndexKind::PosThenNeg => i != 0,
        }
    }

    fn key(self, i: i64) -> (u8, i64) {
        match self {
            IndexKind::PosThenNeg if i < 0 => (1, i),
            _ => (0, i),
        }
    }

    /// Compares two valid indices in the order of this kind.
    pub fn cmp(self, a: i64, b: i64) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }

    pub fn le(self, a: i64, b: i64) -> bool {
        self.cmp(a, b) != Ordering::Greater
    }

    pub fn min(self) -> Option<i64> {
        match self {
            IndexKind::PositiveInts | IndexKind::PosThenNeg => Some(1),
            _ => None,
        }
    }

    pub fn max(self) -> Option<i64> {
        match self {
            IndexKind::NegativeInts | IndexKind::PosThenNeg => Some(-1),
            _ => None,
        }
    }

    pub fn succ(self, i: i64) -> Option<i64> {
        match self {
            IndexKind::NegativeInts if i == -1 => None,
            IndexKind::PosThenNeg if i == -1 => None,
            IndexKind::SatoSplit if i == -1 => Some(1),
            _ => Some(i + 1),
        }
    }

    pub fn pred(self, i: i64) -> Option<i64> {
        match self {
            IndexKind::PositiveInts if i == 1 => None,
            IndexKind::PosThenNeg if i == 1 => None,
            IndexKind::SatoSplit if i == 1 => Some(-1),
            _ => Some(i - 1),
        }
    }

    /// Whether the order admits a global translation `i -> i + d` (in order positions).
    pub fn supports_translation(self) -> bool {
        matches!(self, IndexKind::AllInts | IndexKind::SatoSplit)
    }

    /// Whether `i <-> -i` is a meaningful pairing of basis vectors.
    pub fn supports_pairing(self) -> bool {
        self.supports_translation()
    }

    fn rank(self, i: i64) -> i64 {
        match self {
            IndexKind::SatoSplit if i > 0 => i - 1,
            _ => i,
        }
    }

    fn unrank(self, r: i64) -> i64 {
        match self {
            IndexKind::SatoSplit if r >= 0 => r + 1,
            _ => r,
        }
    }

    /// Moves `i` by `d` positions in the index order. Only defined for
    /// translation kinds, or for `d == 0`.
    pub fn translate(self, i: i64, d: i64) -> i64 {
        if d == 0 {
            return i;
        }
        assert!(self.supports_translation(), "{} has no translation", self.name());
        self.unrank(self.rank(i) + d)
    }

    /// Number of order positions from `a` to `b`, for translation kinds.
    pub fn distance(self, a: i64, b: i64) -> i64 {
        assert!(self.supports_translation(), "{} has no translation", self.name());
        self.rank(b) - self.rank(a)
    }

    /// Kind obtained by reversing the order and relabelling `i -> -i`.
    pub fn mirror(self) -> IndexKind {
        match self {
            IndexKind::PositiveInts => IndexKind::NegativeInts,
            IndexKind::NegativeInts => IndexKind::PositiveInts,
            k => k,
        }
    }

    /// Order type of the whole index set.
    pub fn order_type(self) -> BlockType {
        self.block_type(None, None)
    }

    /// Order type of the interval `(after, upto]`; `None` means unbounded.
    pub fn block_type(self, after: Option<i64>, upto: Option<i64>) -> BlockType {
        if self == IndexKind::PosThenNeg {
            let starts_positive = after.is_none_or(|a| a > 0);
            let ends_negative = upto.is_none_or(|b| b < 0);
            if starts_positive && ends_negative {
                return BlockType::OmegaPlusOmegaStar;
            }
            let count = match (after, upto) {
                (None, Some(b)) => b,
                (Some(a), Some(b)) => b - a,
                (Some(a), None) => -1 - a,
                (None, None) => unreachable!(),
            };
            return BlockType::Finite(count.max(0) as u64);
        }
        let bottom = after.map(|a| self.rank(a)).or(self.min().map(|m| self.rank(m) - 1));
        let top = upto.map(|b| self.rank(b)).or(self.max().map(|m| self.rank(m)));
        match (bottom, top) {
            (Some(lo), Some(hi)) => BlockType::Finite((hi - lo).max(0) as u64),
            (Some(_), None) => BlockType::Omega,
            (None, Some(_)) => BlockType::OmegaStar,
            (None, None) => BlockType::Integers,
        }
    }
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Order type of a block of consecutive indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockType {
    Finite(u64),
    /// Has a least element but no greatest.
    Omega,
    /// Has a greatest element but no least.
    OmegaStar,
    Integers,
    /// A copy of `Omega` followed by a copy of `OmegaStar`.
    OmegaPlusOmegaStar,
}

impl BlockType {
    pub fn reversed(self) -> BlockType {
        match self {
            BlockType::Omega => BlockType::OmegaStar,
            BlockType::OmegaStar => BlockType::Omega,
            t => t,
        }
    }

    pub fn finite_size(self) -> Option<u64> {
        match self {
            BlockType::Finite(n) => Some(n),
            _ => None,
        }
    }
}

/// The ordered index set, with the pairing flag used by isotropic schemas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexSchema {
    pub kind: IndexKind,
    pub paired: bool,
}

impl IndexSchema {
    pub fn new(kind: IndexKind, paired: bool) -> Result<Self> {
        if paired && !kind.supports_pairing() {
            return Err(Error::InvalidSchema(format!("index kind {kind} cannot be paired")));
        }
        Ok(IndexSchema { kind, paired })
    }

    pub fn unpaired(kind: IndexKind) -> Self {
        IndexSchema { kind, paired: false }
    }
}

/// A finite set of consecutive integers, read as indices of some kind.
///
/// For every kind except `PosThenNeg` this is an interval of the index order.
/// On `PosThenNeg` the range `[lo, hi]` with `lo < 0 < hi` is the union of an
/// initial and a final segment, which is the natural exhaustion of that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Window {
    bounds: Option<(i64, i64)>,
}

impl Window {
    pub fn empty() -> Self {
        Window { bounds: None }
    }

    /// The valid indices of `kind` in `[lo, hi]`, with bounds tightened to them.
    pub fn new(kind: IndexKind, lo: i64, hi: i64) -> Self {
        let idx: Vec<i64> = (lo..=hi).filter(|&i| kind.is_valid(i)).collect();
        match (idx.first(), idx.last()) {
            (Some(&a), Some(&b)) => Window { bounds: Some((a, b)) },
            _ => Window::empty(),
        }
    }

    /// Window containing a single index.
    pub fn single(i: i64) -> Self {
        Window { bounds: Some((i, i)) }
    }

    pub fn bounds(&self) -> Option<(i64, i64)> {
        self.bounds
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_none()
    }

    /// Indices in the window, sorted in the order of `kind`.
    pub fn indices(&self, kind: IndexKind) -> Vec<i64> {
        let Some((lo, hi)) = self.bounds else {
            return Vec::new();
        };
        let mut v: Vec<i64> = (lo..=hi).filter(|&i| kind.is_valid(i)).collect();
        v.sort_by(|&a, &b| kind.cmp(a, b));
        v
    }

    pub fn len(&self, kind: IndexKind) -> usize {
        match self.bounds {
            None => 0,
            Some((lo, hi)) => (lo..=hi).filter(|&i| kind.is_valid(i)).count(),
        }
    }

    pub fn contains(&self, i: i64) -> bool {
        self.bounds.is_some_and(|(lo, hi)| lo <= i && i <= hi)
    }

    pub fn contains_window(&self, other: &Window) -> bool {
        match other.bounds {
            None => true,
            Some((a, b)) => self.contains(a) && self.contains(b),
        }
    }

    pub fn hull(&self, other: &Window) -> Window {
        match (self.bounds, other.bounds) {
            (None, _) => *other,
            (_, None) => *self,
            (Some((a, b)), Some((c, d))) => Window { bounds: Some((a.min(c), b.max(d))) },
        }
    }

    /// Image of the window under translation by `d` order positions.
    pub fn translate(&self, kind: IndexKind, d: i64) -> Window {
        match self.bounds {
            None => *self,
            Some((lo, hi)) => Window { bounds: Some((kind.translate(lo, d), kind.translate(hi, d))) },
        }
    }

    /// Grows the window by `margin` integers on each side.
    pub fn widen(&self, kind: IndexKind, margin: i64) -> Window {
        match self.bounds {
            None => *self,
            Some((lo, hi)) => Window::new(kind, lo - margin, hi + margin),
        }
    }

    /// Smallest window of the form `[-n, n]` containing this one.
    pub fn pairing_closed(&self, kind: IndexKind) -> Window {
        match self.bounds {
            None => Window::empty(),
            Some((lo, hi)) => {
                let n = lo.abs().max(hi.abs());
                Window::new(kind, -n, n)
            }
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.bounds {
            None => f.write_str("[]"),
            Some((lo, hi)) => write!(f, "[{lo}, {hi}]"),
        }
    }
}

/// A cut of the reference flag: its lower set is every index `<= after`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CutId {
    pub after: i64,
}

impl CutId {
    pub fn after(i: i64) -> Self {
        CutId { after: i }
    }
}

impl fmt::Display for CutId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "after {}", self.after)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CutFamily {
    /// Finitely many cuts, listed in increasing index order by the index they follow.
    Finite(Vec<i64>),
    /// A cut after every index that has a successor.
    EveryPosition,
}

/// An index set together with the cuts of the reference flag.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlagSchema {
    pub index: IndexSchema,
    pub cuts: CutFamily,
}

impl FlagSchema {
    /// Builds and validates a schema.
    pub fn new(index: IndexSchema, cuts: CutFamily) -> Result<Self> {
        let s = FlagSchema { index, cuts };
        validate_schema(&s)?;
        Ok(s)
    }

    pub fn finite(kind: IndexKind, cuts: Vec<i64>) -> Result<Self> {
        Self::new(IndexSchema::unpaired(kind), CutFamily::Finite(cuts))
    }

    pub fn every_position(kind: IndexKind) -> Result<Self> {
        Self::new(IndexSchema::unpaired(kind), CutFamily::EveryPosition)
    }

    pub fn kind(&self) -> IndexKind {
        self.index.kind
    }

    pub fn is_every_position(&self) -> bool {
        matches!(self.cuts, CutFamily::EveryPosition)
    }

    /// The listed cuts, or `None` for an infinite family.
    pub fn finite_cuts(&self) -> Option<Vec<CutId>> {
        match &self.cuts {
            CutFamily::Finite(v) => Some(v.iter().map(|&a| CutId::after(a)).collect()),
            CutFamily::EveryPosition => None,
        }
    }

    pub fn is_cut(&self, c: CutId) -> bool {
        let kind = self.kind();
        if !kind.is_valid(c.after) || kind.succ(c.after).is_none() {
            return false;
        }
        match &self.cuts {
            CutFamily::Finite(v) => v.contains(&c.after),
            CutFamily::EveryPosition => true,
        }
    }

    /// Whether index `j` lies in the lower set of `cut`.
    pub fn is_below(&self, j: i64, cut: CutId) -> bool {
        self.kind().le(j, cut.after)
    }

    /// Number of window indices in the lower set of `cut`.
    pub fn lower_count(&self, cut: CutId, window: &Window) -> usize {
        window.indices(self.kind()).into_iter().filter(|&j| self.is_below(j, cut)).count()
    }

    /// Cuts whose lower sets split the window differently, one per split,
    /// represented by the cut right after each window index but the last.
    pub fn gap_cuts(&self, window: &Window) -> Vec<CutId> {
        let idx = window.indices(self.kind());
        if idx.len() < 2 {
            return Vec::new();
        }
        idx[..idx.len() - 1].iter().map(|&a| CutId::after(a)).collect()
    }

    /// Cuts relevant to a window: every listed cut for finite families, the
    /// gap cuts for `EveryPosition`.
    pub fn cuts_for_window(&self, window: &Window) -> Vec<CutId> {
        match &self.cuts {
            CutFamily::Finite(v) => v.iter().map(|&a| CutId::after(a)).collect(),
            CutFamily::EveryPosition => self.gap_cuts(window),
        }
    }

    /// Block order types from the bottom of the index set to the top.
    pub fn block_types(&self) -> Option<Vec<BlockType>> {
        let CutFamily::Finite(cuts) = &self.cuts else {
            return None;
        };
        let kind = self.kind();
        let mut bounds: Vec<Option<i64>> = vec![None];
        bounds.extend(cuts.iter().map(|&a| Some(a)));
        bounds.push(None);
        Some(bounds.windows(2).map(|w| kind.block_type(w[0], w[1])).collect())
    }
}

/// Checks the cut list: valid indices, strictly increasing, every block nonempty.
pub fn validate_schema(s: &FlagSchema) -> Result<()> {
    let kind = s.kind();
    if s.index.paired && !kind.supports_pairing() {
        return Err(Error::InvalidSchema(format!("index kind {kind} cannot be paired")));
    }
    let CutFamily::Finite(cuts) = &s.cuts else {
        return Ok(());
    };
    for &a in cuts {
        if !kind.is_valid(a) {
            return Err(Error::InvalidSchema(format!("{a} is not an index of {kind}")));
        }
        if kind.succ(a).is_none() {
            return Err(Error::InvalidSchema(format!("cut after the last index {a} leaves an empty block")));
        }
    }
    for w in cuts.windows(2) {
        match kind.cmp(w[0], w[1]) {
            Ordering::Less => {}
            Ordering::Equal => {
                return Err(Error::InvalidSchema(format!("repeated cut after {}", w[0])));
            }
            Ordering::Greater => {
                return Err(Error::InvalidSchema(format!("cuts after {} and {} are out of order", w[0], w[1])));
            }
        }
    }
    Ok(())
}

/// Whether some order-reversing bijection of the index set preserves the block partition.
pub fn is_symmetric(s: &FlagSchema) -> bool {
    match s.block_types() {
        None => s.kind().order_type().reversed() == s.kind().order_type(),
        Some(blocks) => blocks.iter().rev().map(|b| b.reversed()).eq(blocks.iter().copied()),
    }
}

/// Schema of the perpendicular chain, read in the reversed order with indices negated.
pub fn dual_schema(s: &FlagSchema) -> FlagSchema {
    let kind = s.kind();
    let mirror = kind.mirror();
    let cuts = match &s.cuts {
        CutFamily::EveryPosition => CutFamily::EveryPosition,
        CutFamily::Finite(v) => {
            let mut d: Vec<i64> = v.iter().map(|&a| -kind.succ(a).expect("validated cut has a successor")).collect();
            d.sort_by(|&a, &b| mirror.cmp(a, b));
            CutFamily::Finite(d)
        }
    };
    FlagSchema { index: IndexSchema { kind: mirror, paired: s.index.paired }, cuts }
}

/// Moves the single cut of a translation-invariant schema by `k` positions.
pub fn shifted_schema(s: &FlagSchema, k: i64) -> Result<FlagSchema> {
    let kind = s.kind();
    match &s.cuts {
        CutFamily::Finite(v) if v.len() == 1 && kind.supports_translation() => {
            Ok(FlagSchema { index: s.index, cuts: CutFamily::Finite(vec![kind.translate(v[0], k)]) })
        }
        _ => Err(Error::UnsupportedSchemaKind(format!(
            "shifting needs a single cut on a translation-invariant index set, got {kind}"
        ))),
    }
}

/// Strictly increasing dimensions `d^1 < ... < d^s` below the window size.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TypeVector {
    pub dims: Vec<usize>,
}

impl TypeVector {
    /// Whether consecutive differences of `0, d^1, ..., d^s, total` read the same backwards.
    pub fn is_palindromic(&self, total: usize) -> bool {
        let mut full = vec![0];
        full.extend(&self.dims);
        full.push(total);
        let gaps: Vec<usize> = full.windows(2).map(|w| w[1] - w[0]).collect();
        gaps.iter().eq(gaps.iter().rev())
    }
}

/// Type of the flag induced by the reference flag on the span of a window.
pub fn truncate_type(s: &FlagSchema, window: &Window) -> TypeVector {
    let n = window.len(s.kind());
    let mut dims: Vec<usize> =
        s.cuts_for_window(window).into_iter().map(|c| s.lower_count(c, window)).filter(|&d| d > 0 && d < n).collect();
    dims.dedup();
    TypeVector { dims }
}
