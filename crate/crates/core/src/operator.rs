//! Invertible operators that act by a finite matrix on a window and by a
//! translation of the basis everywhere else.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::rational::Rational;
use crate::schema::{CutFamily, CutId, FlagSchema, IndexKind, Window};

/// A finitely supported vector, keyed by basis index.
pub type SparseVector = BTreeMap<i64, Rational>;

pub fn basis_vector(i: i64) -> SparseVector {
    SparseVector::from([(i, Rational::one())])
}

fn add_entry(v: &mut SparseVector, i: i64, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(i).or_insert_with(Rational::zero);
    *e += &c;
    if e.is_zero() {
        v.remove(&i);
    }
}

/// Pairing of a dual vector with a vector: `sum y_i x_i`.
pub fn pair(y: &SparseVector, x: &SparseVector) -> Rational {
    y.iter().filter_map(|(i, a)| x.get(i).map(|b| a * b)).fold(Rational::zero(), |acc, t| acc + t)
}

/// `e_i -> e_{i+d}` outside `window` (in order positions), `matrix` on it.
///
/// Columns of `matrix` follow the window indices in order; rows follow the
/// translated window.
#[derive(Clone)]
pub struct StructuredOperator {
    schema: FlagSchema,
    window: Window,
    tail_shift: i64,
    matrix: DenseMatrix,
}

/// The four blocks of an operator at one cut, on an absorbed window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSplitting {
    pub cut: CutId,
    /// Source window the blocks are read from.
    pub window: Window,
    pub tail_shift: i64,
    /// Rows below the cut, columns below.
    pub a: DenseMatrix,
    /// Rows below, columns above.
    pub b: DenseMatrix,
    /// Rows above, columns below.
    pub c: DenseMatrix,
    /// Rows above, columns above.
    pub d: DenseMatrix,
}

/// Degrees at the cuts near an operator's window, plus the value taken at every other cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    pub per_cut: BTreeMap<CutId, i64>,
    pub uniform_tail_degree: i64,
}

impl DegreeReport {
    pub fn at(&self, cut: CutId) -> i64 {
        self.per_cut.get(&cut).copied().unwrap_or(self.uniform_tail_degree)
    }

    pub fn is_zero(&self) -> bool {
        self.uniform_tail_degree == 0 && self.per_cut.values().all(|&d| d == 0)
    }
}

impl StructuredOperator {
    pub fn new(schema: FlagSchema, window: Window, tail_shift: i64, matrix: DenseMatrix) -> Result<Self> {
        let kind = schema.kind();
        if tail_shift != 0 && !kind.supports_translation() {
            return Err(Error::UnsupportedSchemaKind(format!("{kind} admits no tail shift")));
        }
        let n = window.len(kind);
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "window {window} has {n} indices but the matrix is {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if !matrix.is_invertible() {
            return Err(Error::Singular);
        }
        Ok(StructuredOperator { schema, window, tail_shift, matrix })
    }

    pub fn identity(schema: &FlagSchema) -> Self {
        StructuredOperator {
            schema: schema.clone(),
            window: Window::empty(),
            tail_shift: 0,
            matrix: DenseMatrix::zeros(0, 0),
        }
    }

    /// Translation of the whole basis by `k` positions.
    pub fn shift(schema: &FlagSchema, k: i64) -> Result<Self> {
        if !schema.kind().supports_translation() {
            return Err(Error::UnsupportedSchemaKind(format!("{} admits no shift", schema.kind())));
        }
        Ok(StructuredOperator {
            schema: schema.clone(),
            window: Window::empty(),
            tail_shift: k,
            matrix: DenseMatrix::zeros(0, 0),
        })
    }

    pub fn schema(&self) -> &FlagSchema {
        &self.schema
    }

    pub fn kind(&self) -> IndexKind {
        self.schema.kind()
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn tail_shift(&self) -> i64 {
        self.tail_shift
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    /// Window the matrix rows live on.
    pub fn target_window(&self) -> Window {
        self.window.translate(self.kind(), self.tail_shift)
    }

    pub fn source_indices(&self) -> Vec<i64> {
        self.window.indices(self.kind())
    }

    pub fn target_indices(&self) -> Vec<i64> {
        self.target_window().indices(self.kind())
    }

    /// Image of a basis index under the tail translation.
    pub fn tail_image(&self, i: i64) -> i64 {
        self.kind().translate(i, self.tail_shift)
    }

    pub fn apply(&self, v: &SparseVector) -> SparseVector {
        let src = self.source_indices();
        let tgt = self.target_indices();
        let mut out = SparseVector::new();
        for (&i, c) in v {
            match src.iter().position(|&s| s == i) {
                Some(col) => {
                    for (row, &t) in tgt.iter().enumerate() {
                        let m = self.matrix.get(row, col);
                        if !m.is_zero() {
                            add_entry(&mut out, t, m * c);
                        }
                    }
                }
                None => add_entry(&mut out, self.tail_image(i), c.clone()),
            }
        }
        out
    }

    /// The same operator with its matrix written on a larger window.
    pub fn absorb(&self, new_window: &Window) -> Result<Self> {
        if !new_window.contains_window(&self.window) {
            return Err(Error::InvalidWindow(format!("{new_window} does not contain {}", self.window)));
        }
        if *new_window == self.window {
            return Ok(self.clone());
        }
        let kind = self.kind();
        let src = new_window.indices(kind);
        let tgt = new_window.translate(kind, self.tail_shift).indices(kind);
        let old_src = self.source_indices();
        let old_tgt = self.target_indices();
        let row_of: Vec<usize> =
            old_tgt.iter().map(|t| tgt.iter().position(|x| x == t).expect("target inside")).collect();
        let mut m = DenseMatrix::zeros(tgt.len(), src.len());
        for (col, &s) in src.iter().enumerate() {
            match old_src.iter().position(|&x| x == s) {
                Some(oc) => {
                    for (orow, &row) in row_of.iter().enumerate() {
                        m.set(row, col, self.matrix.get(orow, oc).clone());
                    }
                }
                None => {
                    let t = self.tail_image(s);
                    let row = tgt.iter().position(|&x| x == t).expect("translated window");
                    m.set(row, col, Rational::one());
                }
            }
        }
        Ok(StructuredOperator {
            schema: self.schema.clone(),
            window: *new_window,
            tail_shift: self.tail_shift,
            matrix: m,
        })
    }

    fn check_schema(&self, other: &StructuredOperator) -> Result<()> {
        if self.schema != other.schema {
            return Err(Error::SchemaMismatch);
        }
        Ok(())
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &StructuredOperator) -> Result<Self> {
        self.check_schema(other)?;
        let kind = self.kind();
        let pulled = self.window.translate(kind, -other.tail_shift);
        let w = other.window.hull(&pulled);
        let g = other.absorb(&w)?;
        let f = self.absorb(&w.translate(kind, other.tail_shift))?;
        Ok(StructuredOperator {
            schema: self.schema.clone(),
            window: w,
            tail_shift: self.tail_shift + other.tail_shift,
            matrix: f.matrix.mul(&g.matrix)?,
        })
    }

    pub fn inverse(&self) -> Self {
        StructuredOperator {
            schema: self.schema.clone(),
            window: self.target_window(),
            tail_shift: -self.tail_shift,
            matrix: self.matrix.invert().expect("operator matrices are invertible"),
        }
    }

    /// Whether the operator is the identity map.
    pub fn is_identity(&self) -> bool {
        self.tail_shift == 0 && self.matrix.is_identity()
    }

    /// Operator on dual vectors with `<bar(f) y, x> = <y, f x>`.
    pub fn bar(&self) -> DualOperator {
        DualOperator(StructuredOperator {
            schema: self.schema.clone(),
            window: self.target_window(),
            tail_shift: -self.tail_shift,
            matrix: self.matrix.transpose(),
        })
    }

    /// Source indices whose tail image lands on the other side of `cut`.
    pub fn crossing_window(&self, cut: CutId) -> Window {
        let kind = self.kind();
        let d = self.tail_shift;
        let a = cut.after;
        match d.cmp(&0) {
            std::cmp::Ordering::Equal => Window::empty(),
            std::cmp::Ordering::Greater => Window::new(kind, kind.translate(a, 1 - d), a),
            std::cmp::Ordering::Less => Window::new(kind, kind.translate(a, 1), kind.translate(a, -d)),
        }
    }

    /// Blocks at `cut`, after absorbing every index whose image crosses it.
    pub fn splitting_at_cut(&self, cut: CutId) -> Result<CutSplitting> {
        let kind = self.kind();
        if !kind.is_valid(cut.after) || kind.succ(cut.after).is_none() {
            return Err(Error::InvalidSchema(format!("{cut} is not a cut position")));
        }
        let f = self.absorb(&self.window.hull(&self.crossing_window(cut)))?;
        let src = f.source_indices();
        let tgt = f.target_indices();
        let split = |idx: &[i64]| -> (Vec<usize>, Vec<usize>) {
            let (lo, hi): (Vec<usize>, Vec<usize>) = (0..idx.len()).partition(|&k| self.schema.is_below(idx[k], cut));
            (lo, hi)
        };
        let (src_lo, src_hi) = split(&src);
        let (tgt_lo, tgt_hi) = split(&tgt);
        let m = &f.matrix;
        Ok(CutSplitting {
            cut,
            window: f.window,
            tail_shift: f.tail_shift,
            a: m.select(&tgt_lo, &src_lo),
            b: m.select(&tgt_lo, &src_hi),
            c: m.select(&tgt_hi, &src_lo),
            d: m.select(&tgt_hi, &src_hi),
        })
    }

    /// `rank C(f) - rank C(f^-1)` at `cut`.
    pub fn degree_at_cut(&self, cut: CutId) -> Result<i64> {
        self.degree_with_inverse(&self.inverse(), cut)
    }

    /// Degrees at several cuts, inverting once.
    pub fn degrees_at(&self, cuts: &[CutId]) -> Result<Vec<i64>> {
        let inv = self.inverse();
        cuts.iter().map(|&c| self.degree_with_inverse(&inv, c)).collect()
    }

    fn degree_with_inverse(&self, inv: &StructuredOperator, cut: CutId) -> Result<i64> {
        let c = self.splitting_at_cut(cut)?.c.rank() as i64;
        let c_inv = inv.splitting_at_cut(cut)?.c.rank() as i64;
        Ok(c - c_inv)
    }

    /// Cuts at which the degree is computed explicitly.
    pub fn evaluated_cuts(&self) -> Vec<CutId> {
        let kind = self.kind();
        match &self.schema.cuts {
            CutFamily::Finite(v) => v.iter().map(|&a| CutId::after(a)).collect(),
            CutFamily::EveryPosition => {
                let span = self.window.hull(&self.target_window());
                let margin = self.tail_shift.abs() + 1;
                let around =
                    if span.is_empty() { Window::new(kind, -margin, margin) } else { span.widen(kind, margin) };
                around.indices(kind).into_iter().filter(|&a| kind.succ(a).is_some()).map(CutId::after).collect()
            }
        }
    }

    pub fn degree(&self) -> Result<DegreeReport> {
        let inv = self.inverse();
        let mut per_cut = BTreeMap::new();
        for cut in self.evaluated_cuts() {
            per_cut.insert(cut, self.degree_with_inverse(&inv, cut)?);
        }
        Ok(DegreeReport { per_cut, uniform_tail_degree: self.tail_shift })
    }

    /// Differs from the identity on finitely many basis vectors.
    pub fn is_eventually_identity(&self) -> bool {
        self.tail_shift == 0
    }

    /// Every cut block below the diagonal is finite.
    pub fn is_w_aligned(&self) -> bool {
        self.tail_shift == 0 || !self.schema.is_every_position()
    }

    pub fn is_eligible(&self) -> Result<bool> {
        if !self.is_w_aligned() {
            return Ok(false);
        }
        Ok(self.degree()?.is_zero())
    }

    /// Membership in the Mackey group: invertible and preserving the restricted dual.
    /// Holds for every well-formed value of this type; rechecked here structurally.
    pub fn is_mackey(&self) -> bool {
        let kind = self.kind();
        (self.tail_shift == 0 || kind.supports_translation())
            && self.matrix.is_square()
            && self.matrix.rows() == self.window.len(kind)
            && self.matrix.is_invertible()
    }

    /// Row and column finiteness of the blocks at `cut`, for the operator and its inverse.
    ///
    /// After absorbing the crossing indices, every basis vector outside the window
    /// stays on its side of the cut, so the `C` block is the window block and the
    /// `A` rows and `D` columns outside the window have a single entry.
    pub fn satisfies_block_conditions(&self, cut: CutId) -> Result<bool> {
        for f in [self.clone(), self.inverse()] {
            let s = f.splitting_at_cut(cut)?;
            let g = f.absorb(&s.window)?;
            let kind = self.kind();
            let probe = s.window.widen(kind, self.tail_shift.abs() + 2);
            for i in probe.indices(kind) {
                if s.window.contains(i) {
                    continue;
                }
                let j = g.tail_image(i);
                if self.schema.is_below(i, cut) != self.schema.is_below(j, cut) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether `self = λ·other` for a nonzero rational `λ`.
    ///
    /// Both send all but finitely many basis vectors to basis vectors, so the
    /// only possible ratio is 1.
    pub fn projectively_equal(&self, other: &StructuredOperator) -> Result<bool> {
        self.check_schema(other)?;
        Ok(self == other)
    }
}

/// Semantic equality: same map on every basis vector.
impl PartialEq for StructuredOperator {
    fn eq(&self, other: &Self) -> bool {
        if self.schema != other.schema || self.tail_shift != other.tail_shift {
            return false;
        }
        let hull = self.window.hull(&other.window);
        match (self.absorb(&hull), other.absorb(&hull)) {
            (Ok(a), Ok(b)) => a.matrix == b.matrix,
            _ => false,
        }
    }
}

impl std::fmt::Debug for StructuredOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StructuredOperator")
            .field("window", &self.window)
            .field("tail_shift", &self.tail_shift)
            .field("matrix", &self.matrix)
            .finish()
    }
}

/// An operator on dual coordinates, `e_i^*` keyed by `i`.
#[derive(Clone, PartialEq, Debug)]
pub struct DualOperator(pub StructuredOperator);

impl DualOperator {
    pub fn apply(&self, y: &SparseVector) -> SparseVector {
        self.0.apply(y)
    }

    pub fn as_operator(&self) -> &StructuredOperator {
        &self.0
    }

    /// Block of entries from dual vectors above `cut` to dual vectors below it.
    ///
    /// This is the transpose of the `C` block of the original operator.
    pub fn c_block_transpose(&self, cut: CutId) -> Result<DenseMatrix> {
        Ok(self.0.splitting_at_cut(cut)?.b)
    }
}

pub fn identity_op(s: &FlagSchema) -> StructuredOperator {
    StructuredOperator::identity(s)
}

pub fn shift_op(s: &FlagSchema, k: i64) -> Result<StructuredOperator> {
    StructuredOperator::shift(s, k)
}

pub fn compose(f: &StructuredOperator, g: &StructuredOperator) -> Result<StructuredOperator> {
    f.compose(g)
}

pub fn invert_op(f: &StructuredOperator) -> StructuredOperator {
    f.inverse()
}

pub fn bar_op(f: &StructuredOperator) -> DualOperator {
    f.bar()
}

pub fn degree_at_cut(f: &StructuredOperator, cut: CutId) -> Result<i64> {
    f.degree_at_cut(cut)
}
