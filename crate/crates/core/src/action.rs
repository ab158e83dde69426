//! Operators acting on flag points, and the duality involution on symmetric schemas.

use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::operator::StructuredOperator;
use crate::point::{ChainMember, FlagPoint};
use crate::schema::{dual_schema, is_symmetric, CutFamily, CutId, FlagSchema, IndexKind, Window};

/// Window on which both the point and the operator are written, wide enough that
/// no far basis vector crosses a cut of the schema.
fn working_window(f: &StructuredOperator, p: &FlagPoint) -> Result<Window> {
    let mut w = p.window().hull(&f.window());
    if f.tail_shift() != 0 {
        match &f.schema().cuts {
            CutFamily::Finite(cuts) => {
                for &a in cuts {
                    w = w.hull(&f.crossing_window(CutId::after(a)));
                }
            }
            CutFamily::EveryPosition => {
                return Err(Error::Unrepresentable("a tail shift moves infinitely many cuts of this schema".into()))
            }
        }
    }
    Ok(w)
}

fn check_schemas(f: &StructuredOperator, p: &FlagPoint) -> Result<()> {
    if f.schema() != p.schema() {
        return Err(Error::SchemaMismatch);
    }
    Ok(())
}

/// Rebuilds a point on the target window from images of the members at each cut.
fn assemble(schema: &FlagSchema, window: Window, cuts: &[CutId], spaces: Vec<Subspace>) -> FlagPoint {
    let chain = cuts.iter().copied().zip(spaces).collect();
    FlagPoint::new(schema.clone(), window, chain).expect("image of a flag is a flag")
}

/// Action through annihilators: the member at each cut is the annihilator of the
/// image of its annihilator under the dual of the inverse.
pub fn act(f: &StructuredOperator, p: &FlagPoint) -> Result<FlagPoint> {
    check_schemas(f, p)?;
    let w = working_window(f, p)?;
    let f = f.absorb(&w)?;
    let p = p.enlarge_window(&w)?;
    let inv = f.inverse().matrix().clone();
    let cuts: Vec<CutId> = p.members().iter().map(|m| m.cut).collect();
    let spaces = p
        .members()
        .iter()
        .map(|m| {
            let ann = m.space.annihilator();
            if ann.is_zero() {
                return Ok(Subspace::full(inv.cols()));
            }
            let pushed = Subspace::row_span(&ann.basis().mul(&inv)?);
            Ok(pushed.annihilator())
        })
        .collect::<Result<Vec<_>>>()?;
    let target = f.target_window();
    Ok(assemble(p.schema(), target, &target_cuts(p.schema(), &target, &cuts), spaces))
}

/// Direct image of each member; only for operators that fix all but finitely many basis vectors.
pub fn act_direct(f: &StructuredOperator, p: &FlagPoint) -> Result<FlagPoint> {
    check_schemas(f, p)?;
    if !f.is_eventually_identity() {
        return Err(Error::Precondition("direct action needs an operator without tail shift".into()));
    }
    let w = p.window().hull(&f.window());
    let f = f.absorb(&w)?;
    let p = p.enlarge_window(&w)?;
    let cuts: Vec<CutId> = p.members().iter().map(|m| m.cut).collect();
    let spaces = p.members().iter().map(|m| m.space.image(f.matrix())).collect::<Result<Vec<_>>>()?;
    Ok(assemble(p.schema(), w, &cuts, spaces))
}

/// Cut list on the target window. Gap cuts move with the window; listed cuts stay.
fn target_cuts(schema: &FlagSchema, target: &Window, cuts: &[CutId]) -> Vec<CutId> {
    match schema.cuts {
        CutFamily::Finite(_) => cuts.to_vec(),
        CutFamily::EveryPosition => schema.gap_cuts(target),
    }
}

/// Whether `f` maps `p` to itself.
pub fn in_stabilizer(f: &StructuredOperator, p: &FlagPoint) -> Result<bool> {
    Ok(act(f, p)? == *p)
}

/// The order-reversing index bijection used to identify the dual chain with a flag
/// in the original space: `i -> t(-i)` for a translation `t` chosen so that the
/// listed cuts are preserved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reversal {
    kind: IndexKind,
    offset: i64,
}

impl Reversal {
    pub fn for_schema(s: &FlagSchema) -> Result<Reversal> {
        if !is_symmetric(s) {
            return Err(Error::NotSymmetric);
        }
        let kind = s.kind();
        let dual = dual_schema(s);
        let offset = match (&s.cuts, &dual.cuts) {
            (CutFamily::Finite(orig), CutFamily::Finite(mirrored))
                if !orig.is_empty() && kind.supports_translation() =>
            {
                kind.distance(mirrored[0], orig[0])
            }
            _ => 0,
        };
        let r = Reversal { kind, offset };
        if let (CutFamily::Finite(orig), CutFamily::Finite(mirrored)) = (&s.cuts, &dual.cuts) {
            let moved: Vec<i64> = mirrored.iter().map(|&a| kind.translate(a, offset)).collect();
            if &moved != orig {
                return Err(Error::NotSymmetric);
            }
        }
        Ok(r)
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn apply(&self, i: i64) -> i64 {
        self.kind.translate(-i, self.offset)
    }

    pub fn apply_window(&self, w: &Window) -> Window {
        match w.bounds() {
            None => Window::empty(),
            Some((lo, hi)) => {
                let (a, b) = (self.apply(hi), self.apply(lo));
                Window::new(self.kind, a.min(b), a.max(b))
            }
        }
    }
}

/// Sends a flag to the chain of annihilators, read back in the original space through
/// the schema's order reversal. Members are listed in the new cut order.
pub fn duality_map(p: &FlagPoint) -> Result<FlagPoint> {
    let schema = p.schema();
    let sigma = Reversal::for_schema(schema)?;
    let kind = schema.kind();
    let old_idx = p.indices();
    let window = sigma.apply_window(&p.window());
    let new_idx = window.indices(kind);
    let perm: Vec<usize> = old_idx
        .iter()
        .map(|&i| new_idx.iter().position(|&j| j == sigma.apply(i)).expect("reversal maps windows"))
        .collect();
    let mut members: Vec<ChainMember> = p
        .members()
        .iter()
        .map(|m| {
            let next = kind.succ(m.cut.after).expect("cuts have successors");
            ChainMember { cut: CutId::after(sigma.apply(next)), space: m.space.annihilator().permute(&perm), offset: 0 }
        })
        .collect();
    members.sort_by(|a, b| kind.cmp(a.cut.after, b.cut.after));
    if schema.is_every_position() {
        // A cut may land between the window's two ends; the gap cut with the same
        // lower part of the window describes the same member.
        let gaps = schema.gap_cuts(&window);
        for m in &mut members {
            let below = schema.lower_count(m.cut, &window);
            m.cut = gaps[below - 1];
        }
    }
    let chain = members.into_iter().map(|m| (m.cut, m.space)).collect();
    FlagPoint::new(schema.clone(), window, chain)
}
