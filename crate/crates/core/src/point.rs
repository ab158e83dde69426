//! Flags that agree with the reference flag outside a finite window.

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Subspace};
use crate::schema::{CutFamily, CutId, FlagSchema, TypeVector, Window};

/// One member of the chain, in window coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMember {
    pub cut: CutId,
    pub space: Subspace,
    /// `dim space - |lower(cut) ∩ window|`.
    pub offset: i64,
}

/// A flag equal to the reference flag away from `window`.
///
/// The member at cut `a` is `space ⊕ span{e_j : j ∉ window, j <= a}`. Finite cut
/// families store one member per cut. `EveryPosition` families store one member per
/// gap cut of the window; every other cut shares a member with a gap cut.
#[derive(Clone)]
pub struct FlagPoint {
    schema: FlagSchema,
    window: Window,
    members: Vec<ChainMember>,
}

impl FlagPoint {
    /// Builds a point from subspaces in window coordinates, checking the chain.
    pub fn new(schema: FlagSchema, window: Window, chain: Vec<(CutId, Subspace)>) -> Result<Self> {
        let kind = schema.kind();
        let n = window.len(kind);
        let expected = schema.cuts_for_window(&window);
        let cuts: Vec<CutId> = chain.iter().map(|(c, _)| *c).collect();
        if cuts != expected {
            return Err(Error::InvalidPoint(format!(
                "chain cuts {:?} do not match the schema cuts {:?} for window {window}",
                cuts.iter().map(|c| c.after).collect::<Vec<_>>(),
                expected.iter().map(|c| c.after).collect::<Vec<_>>()
            )));
        }
        let mut members = Vec::with_capacity(chain.len());
        for (cut, space) in chain {
            if space.ambient_dim() != n {
                return Err(Error::InvalidPoint(format!(
                    "member at {cut} lives in dimension {}, window has {n} indices",
                    space.ambient_dim()
                )));
            }
            let offset = space.dim() as i64 - schema.lower_count(cut, &window) as i64;
            members.push(ChainMember { cut, space, offset });
        }
        let p = FlagPoint { schema, window, members };
        p.check_chain()?;
        Ok(p)
    }

    fn check_chain(&self) -> Result<()> {
        let kind = self.schema.kind();
        if self.schema.is_every_position() {
            for (k, m) in self.members.iter().enumerate() {
                if m.space.dim() != k + 1 {
                    return Err(Error::InvalidPoint(format!("member at {} must have dimension {}", m.cut, k + 1)));
                }
            }
        }
        for pair in self.members.windows(2) {
            let (lo, hi) = (&pair[0], &pair[1]);
            if !lo.space.is_subspace_of(&hi.space) {
                return Err(Error::InvalidPoint(format!("member at {} is not inside member at {}", lo.cut, hi.cut)));
            }
            // In the infinite flag the step must stay proper.
            if let Some(size) = kind.block_type(Some(lo.cut.after), Some(hi.cut.after)).finite_size() {
                if size as i64 + hi.offset - lo.offset < 1 {
                    return Err(Error::InvalidPoint(format!("members at {} and {} coincide", lo.cut, hi.cut)));
                }
            }
        }
        if let (Some(first), CutFamily::Finite(_)) = (self.members.first(), &self.schema.cuts) {
            if let Some(size) = kind.block_type(None, Some(first.cut.after)).finite_size() {
                if size as i64 + first.offset < 1 {
                    return Err(Error::InvalidPoint(format!("member at {} is zero", first.cut)));
                }
            }
        }
        if let (Some(last), CutFamily::Finite(_)) = (self.members.last(), &self.schema.cuts) {
            if let Some(size) = kind.block_type(Some(last.cut.after), None).finite_size() {
                if size as i64 - last.offset < 1 {
                    return Err(Error::InvalidPoint(format!("member at {} is everything", last.cut)));
                }
            }
        }
        Ok(())
    }

    /// The coordinate flag of the reference itself.
    pub fn reference(schema: &FlagSchema, window: Window) -> FlagPoint {
        let kind = schema.kind();
        let idx = window.indices(kind);
        let members = schema
            .cuts_for_window(&window)
            .into_iter()
            .map(|cut| {
                let below: Vec<usize> =
                    idx.iter().enumerate().filter(|(_, &j)| schema.is_below(j, cut)).map(|(k, _)| k).collect();
                ChainMember { cut, space: Subspace::coordinate(idx.len(), &below), offset: 0 }
            })
            .collect();
        FlagPoint { schema: schema.clone(), window, members }
    }

    /// Flag whose member at each cut is spanned by the leading columns of `basis`.
    pub fn from_adapted_basis(
        schema: &FlagSchema,
        window: Window,
        basis: &DenseMatrix,
        offsets: &[i64],
    ) -> Result<FlagPoint> {
        let n = window.len(schema.kind());
        if basis.rows() != n || !basis.is_invertible() {
            return Err(Error::InvalidPoint("adapted basis must be an invertible window matrix".into()));
        }
        let cuts = schema.cuts_for_window(&window);
        if offsets.len() != cuts.len() {
            return Err(Error::InvalidPoint(format!("expected {} offsets", cuts.len())));
        }
        let cols = basis.transpose();
        let mut chain = Vec::with_capacity(cuts.len());
        for (cut, &off) in cuts.iter().zip(offsets) {
            let d = schema.lower_count(*cut, &window) as i64 + off;
            if d < 0 || d > n as i64 {
                return Err(Error::InvalidPoint(format!("offset {off} at {cut} does not fit the window")));
            }
            let rows: Vec<usize> = (0..d as usize).collect();
            let all: Vec<usize> = (0..n).collect();
            chain.push((*cut, Subspace::row_span(&cols.select(&rows, &all))));
        }
        FlagPoint::new(schema.clone(), window, chain)
    }

    pub fn schema(&self) -> &FlagSchema {
        &self.schema
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn members(&self) -> &[ChainMember] {
        &self.members
    }

    /// Window indices in order; coordinate `k` belongs to `indices()[k]`.
    pub fn indices(&self) -> Vec<i64> {
        self.window.indices(self.schema.kind())
    }

    /// The proper members of the window chain (neither zero nor everything).
    pub fn chain(&self) -> Vec<&Subspace> {
        self.members.iter().map(|m| &m.space).filter(|s| !s.is_zero() && !s.is_full()).collect()
    }

    /// Window part of the member at any cut of the schema.
    pub fn chain_at(&self, cut: CutId) -> Result<Subspace> {
        if !self.schema.is_cut(cut) {
            return Err(Error::InvalidPoint(format!("{cut} is not a cut of the schema")));
        }
        match &self.schema.cuts {
            CutFamily::Finite(_) => Ok(self
                .members
                .iter()
                .find(|m| m.cut == cut)
                .map(|m| m.space.clone())
                .expect("finite points carry every cut")),
            CutFamily::EveryPosition => {
                let n = self.window.len(self.schema.kind());
                let k = self.schema.lower_count(cut, &self.window);
                Ok(if k == 0 {
                    Subspace::zero(n)
                } else if k == n {
                    Subspace::full(n)
                } else {
                    self.members[k - 1].space.clone()
                })
            }
        }
    }

    /// Offsets per cut; all zero exactly for points commensurable with the reference.
    pub fn relative_position(&self) -> Vec<(CutId, i64)> {
        match self.schema.cuts {
            CutFamily::Finite(_) => self.members.iter().map(|m| (m.cut, m.offset)).collect(),
            CutFamily::EveryPosition => Vec::new(),
        }
    }

    pub fn offsets(&self) -> Vec<i64> {
        self.members.iter().map(|m| m.offset).collect()
    }

    /// Dimensions of the proper window members, which form the type of the window flag.
    pub fn dimension_vector(&self) -> TypeVector {
        let n = self.window.len(self.schema.kind());
        let mut dims: Vec<usize> = self.members.iter().map(|m| m.space.dim()).filter(|&d| d > 0 && d < n).collect();
        dims.dedup();
        TypeVector { dims }
    }

    /// The same flag described on a larger window.
    pub fn enlarge_window(&self, new_window: &Window) -> Result<FlagPoint> {
        if !new_window.contains_window(&self.window) {
            return Err(Error::InvalidWindow(format!("{new_window} does not contain {}", self.window)));
        }
        if *new_window == self.window {
            return Ok(self.clone());
        }
        let kind = self.schema.kind();
        let new_idx = new_window.indices(kind);
        let positions: Vec<usize> = self
            .indices()
            .iter()
            .map(|i| new_idx.iter().position(|j| j == i).expect("old window inside new"))
            .collect();
        let fresh: Vec<(usize, i64)> =
            new_idx.iter().enumerate().filter(|(_, &j)| !self.window.contains(j)).map(|(k, &j)| (k, j)).collect();
        let n = new_idx.len();
        let mut members = Vec::new();
        for cut in self.schema.cuts_for_window(new_window) {
            let old = self.chain_at(cut)?;
            let below: Vec<usize> =
                fresh.iter().filter(|(_, j)| self.schema.is_below(*j, cut)).map(|(k, _)| *k).collect();
            let space = old.embed(n, &positions).sum(&Subspace::coordinate(n, &below))?;
            let offset = space.dim() as i64 - self.schema.lower_count(cut, new_window) as i64;
            members.push(ChainMember { cut, space, offset });
        }
        Ok(FlagPoint { schema: self.schema.clone(), window: *new_window, members })
    }

    /// Whether both flags differ from a common shifted reference by finitely many vectors
    /// with the same relative dimensions.
    pub fn is_commensurable(&self, other: &FlagPoint) -> Result<bool> {
        if self.schema != other.schema {
            return Err(Error::SchemaMismatch);
        }
        let hull = self.window.hull(&other.window);
        let a = self.enlarge_window(&hull)?;
        let b = other.enlarge_window(&hull)?;
        Ok(a.members.iter().zip(&b.members).all(|(x, y)| x.space.dim() == y.space.dim()))
    }
}

/// Equality of the flags described, independent of the window used.
impl PartialEq for FlagPoint {
    fn eq(&self, other: &Self) -> bool {
        if self.schema != other.schema {
            return false;
        }
        let hull = self.window.hull(&other.window);
        match (self.enlarge_window(&hull), other.enlarge_window(&hull)) {
            (Ok(a), Ok(b)) => a.members == b.members,
            _ => false,
        }
    }
}

impl std::fmt::Debug for FlagPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FlagPoint").field("window", &self.window).field("members", &self.members).finish()
    }
}

pub fn reference_point(s: &FlagSchema, window: Window) -> FlagPoint {
    FlagPoint::reference(s, window)
}

pub fn enlarge_window(p: &FlagPoint, new_window: &Window) -> Result<FlagPoint> {
    p.enlarge_window(new_window)
}

pub fn is_commensurable(p: &FlagPoint, q: &FlagPoint) -> Result<bool> {
    p.is_commensurable(q)
}

pub fn relative_position(p: &FlagPoint) -> Vec<(CutId, i64)> {
    p.relative_position()
}
