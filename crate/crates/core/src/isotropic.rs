//! Symmetric and symplectic pairings of `e_i` with `e_{-i}`, isotropic flags, and
//! form-preserving operators.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Subspace};
use crate::operator::StructuredOperator;
use crate::point::FlagPoint;
use crate::rational::Rational;
use crate::schema::{CutId, FlagSchema, IndexKind, Window};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormKind {
    /// `(e_i, e_{-i}) = 1` on all integers, with `(e_0, e_0) = 1`.
    OrthogonalAllInts,
    /// `(e_i, e_{-i}) = 1` on the nonzero integers.
    OrthogonalSato,
    /// `(e_i, e_{-i}) = 1` and `(e_{-i}, e_i) = -1` for `i > 0`.
    SymplecticSato,
}

impl FormKind {
    pub const ALL: [FormKind; 3] = [FormKind::OrthogonalAllInts, FormKind::OrthogonalSato, FormKind::SymplecticSato];

    pub fn index_kind(self) -> IndexKind {
        match self {
            FormKind::OrthogonalAllInts => IndexKind::AllInts,
            FormKind::OrthogonalSato | FormKind::SymplecticSato => IndexKind::SatoSplit,
        }
    }

    pub fn is_symplectic(self) -> bool {
        self == FormKind::SymplecticSato
    }

    pub fn name(self) -> &'static str {
        match self {
            FormKind::OrthogonalAllInts => "orthogonal_all_ints",
            FormKind::OrthogonalSato => "orthogonal_sato",
            FormKind::SymplecticSato => "symplectic_sato",
        }
    }

    /// `(e_i, e_j)`.
    pub fn pairing(self, i: i64, j: i64) -> i64 {
        if i != -j {
            return 0;
        }
        if self.is_symplectic() && i < 0 {
            -1
        } else {
            1
        }
    }

    fn check(self, schema: &FlagSchema) -> Result<()> {
        if schema.kind() != self.index_kind() {
            return Err(Error::FormMismatch(format!(
                "{} needs index kind {}, schema has {}",
                self.name(),
                self.index_kind(),
                schema.kind()
            )));
        }
        Ok(())
    }
}

/// Gram matrix of a form on a window closed under `i -> -i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramWindow {
    pub window: Window,
    pub gram: DenseMatrix,
}

impl GramWindow {
    pub fn new(form: FormKind, window: &Window) -> GramWindow {
        let kind = form.index_kind();
        let window = window.pairing_closed(kind);
        let idx = window.indices(kind);
        let n = idx.len();
        let mut gram = DenseMatrix::zeros(n, n);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                let v = form.pairing(i, j);
                if v != 0 {
                    gram.set(a, b, Rational::from_int(v));
                }
            }
        }
        GramWindow { window, gram }
    }

    /// `{v | (v, u) = 0 for all u in s}`.
    pub fn perp(&self, s: &Subspace) -> Result<Subspace> {
        if s.is_zero() {
            return Ok(Subspace::full(s.ambient_dim()));
        }
        // Rows of B·G^T are the functionals v -> (v, u) for the basis rows u of B.
        let functionals = s.basis().mul(&self.gram.transpose())?;
        Ok(Subspace::row_span(&functionals).annihilator())
    }
}

/// Whether every member is isotropic or coisotropic and the chain is closed under `⊥`.
pub fn is_isotropic_flag(p: &FlagPoint, form: FormKind) -> Result<bool> {
    form.check(p.schema())?;
    let schema = p.schema();
    let kind = schema.kind();
    let gw = GramWindow::new(form, &p.window());
    let p = p.enlarge_window(&gw.window)?;
    for m in p.members() {
        let perp = gw.perp(&m.space)?;
        if !(m.space.is_subspace_of(&perp) || perp.is_subspace_of(&m.space)) {
            return Ok(false);
        }
        // Away from the window, the perpendicular of the lower set of `a` is the lower set of `-succ(a)`.
        let partner = CutId::after(-kind.succ(m.cut.after).expect("cut has a successor"));
        if !schema.is_cut(partner) || p.chain_at(partner)? != perp {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Warning for the two flag shapes that behave differently from all others, if `p` has one.
pub fn exclusion_warning(p: &FlagPoint, form: FormKind) -> Option<String> {
    let blocks = p.schema().block_types()?;
    if blocks.len() != 3 {
        return None;
    }
    let first = blocks[0].finite_size();
    let middle = blocks[1].finite_size();
    if form.is_symplectic() && first == Some(1) {
        return Some("flag of shape 0 ⊂ W ⊂ W⊥ ⊂ V with dim W = 1 under a symplectic form".into());
    }
    if !form.is_symplectic() && middle == Some(2) {
        return Some("flag of shape 0 ⊂ W ⊂ W⊥ ⊂ V with dim W⊥/W = 2 under a symmetric form".into());
    }
    None
}

fn closed_matrix(f: &StructuredOperator, form: FormKind) -> Result<(GramWindow, DenseMatrix)> {
    form.check(f.schema())?;
    if f.tail_shift() != 0 {
        return Err(Error::NonzeroTail(f.tail_shift()));
    }
    let gw = GramWindow::new(form, &f.window());
    let m = f.absorb(&gw.window)?.matrix().clone();
    Ok((gw, m))
}

/// `(f x, f y) = (x, y)` for all vectors, checked as `MᵀGM = G` on a closed window.
pub fn preserves_form(f: &StructuredOperator, form: FormKind) -> Result<bool> {
    let (gw, m) = closed_matrix(f, form)?;
    Ok(m.transpose().mul(&gw.gram)?.mul(&m)? == gw.gram)
}

/// The antidiagonal reflection of the window matrix equals its inverse, conjugated
/// by the sign pattern of the form in the symplectic case.
pub fn reflection_condition(f: &StructuredOperator, form: FormKind) -> Result<bool> {
    let (gw, m) = closed_matrix(f, form)?;
    let reflected = m.antidiagonal_reflection();
    let inv = m.invert()?;
    if !form.is_symplectic() {
        return Ok(reflected == inv);
    }
    let idx = gw.window.indices(form.index_kind());
    let signs: Vec<Rational> = idx.iter().map(|&i| Rational::from_int(if i > 0 { 1 } else { -1 })).collect();
    let n = idx.len();
    let mut twisted = inv;
    for r in 0..n {
        for c in 0..n {
            let v = twisted.get(r, c) * &(&signs[r] * &signs[c]);
            twisted.set(r, c, v);
        }
    }
    Ok(reflected == twisted)
}

/// `(I - X)^-1 (I + X)` for `X = G^-1 S`, which preserves the form whenever `S` is
/// antisymmetric (symmetric form) or symmetric (symplectic form) and `I - X` is invertible.
pub fn cayley_transform(form: FormKind, window: &Window, s: &DenseMatrix) -> Result<DenseMatrix> {
    let gw = GramWindow::new(form, window);
    let n = gw.gram.rows();
    if s.rows() != n || s.cols() != n {
        return Err(Error::DimensionMismatch("generator must match the closed window".into()));
    }
    let x = gw.gram.invert()?.mul(s)?;
    let id = DenseMatrix::identity(n);
    id.sub(&x)?.invert()?.mul(&id.add(&x)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sato() -> FlagSchema {
        FlagSchema::finite(IndexKind::SatoSplit, vec![-1]).unwrap()
    }

    fn op(m: &[&[i64]]) -> StructuredOperator {
        StructuredOperator::new(sato(), Window::new(IndexKind::SatoSplit, -1, 1), 0, DenseMatrix::from_i64(m)).unwrap()
    }

    fn diagonal_point(form: FormKind) -> bool {
        let w = Window::new(IndexKind::SatoSplit, -1, 1);
        let v = Subspace::span(2, &[vec![Rational::one(), Rational::one()]]).unwrap();
        let p = FlagPoint::new(sato(), w, vec![(CutId::after(-1), v)]).unwrap();
        is_isotropic_flag(&p, form).unwrap()
    }

    #[test]
    fn isotropic_examples() {
        let p = FlagPoint::reference(&sato(), Window::new(IndexKind::SatoSplit, -2, 2));
        assert!(is_isotropic_flag(&p, FormKind::OrthogonalSato).unwrap());
        assert!(is_isotropic_flag(&p, FormKind::SymplecticSato).unwrap());
        assert!(!diagonal_point(FormKind::OrthogonalSato));
        assert!(diagonal_point(FormKind::SymplecticSato));
        assert!(is_isotropic_flag(&p, FormKind::OrthogonalAllInts).is_err());
    }

    #[test]
    fn preservation_examples() {
        let id = StructuredOperator::identity(&sato());
        let swap = op(&[&[0, 1], &[1, 0]]);
        let scale = op(&[&[2, 0], &[0, 1]]);
        for form in [FormKind::OrthogonalSato, FormKind::SymplecticSato] {
            assert!(preserves_form(&id, form).unwrap());
            assert!(reflection_condition(&id, form).unwrap());
        }
        assert!(preserves_form(&swap, FormKind::OrthogonalSato).unwrap());
        assert!(reflection_condition(&swap, FormKind::OrthogonalSato).unwrap());
        assert!(!preserves_form(&scale, FormKind::OrthogonalSato).unwrap());
        let unipotent = op(&[&[1, 1], &[0, 1]]);
        assert!(!reflection_condition(&unipotent, FormKind::OrthogonalSato).unwrap());
        assert!(!preserves_form(&unipotent, FormKind::OrthogonalSato).unwrap());
        let shift = StructuredOperator::shift(&sato(), 1).unwrap();
        assert_eq!(preserves_form(&shift, FormKind::OrthogonalSato), Err(Error::NonzeroTail(1)));
    }

    #[test]
    fn symplectic_sign_on_small_windows() {
        // [[0,1],[-1,0]] on {-1, 1} preserves the symplectic form but is not
        // its own antidiagonal-reflected inverse without the sign twist.
        let rot = op(&[&[0, 1], &[-1, 0]]);
        assert!(preserves_form(&rot, FormKind::SymplecticSato).unwrap());
        assert!(reflection_condition(&rot, FormKind::SymplecticSato).unwrap());
        let swap = op(&[&[0, 1], &[1, 0]]);
        assert!(!preserves_form(&swap, FormKind::SymplecticSato).unwrap());
        assert!(!reflection_condition(&swap, FormKind::SymplecticSato).unwrap());
    }
}
