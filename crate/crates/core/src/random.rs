//! Seeded generators of matrices, operators, and points for property checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::isotropic::{cayley_transform, FormKind, GramWindow};
use crate::linalg::DenseMatrix;
use crate::operator::StructuredOperator;
use crate::point::FlagPoint;
use crate::rational::Rational;
use crate::schema::{CutFamily, FlagSchema, IndexKind, Window};

pub type TrialRng = ChaCha8Rng;

/// Independent generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(
        seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ trial.wrapping_add(1).wrapping_mul(0xD1B5_4A32_D192_ED03),
    )
}

/// Small integer, occasionally halved, zero with probability about `1 - density`.
pub fn sparse_entry(rng: &mut TrialRng, density: f64) -> Rational {
    if !rng.gen_bool(density) {
        return Rational::zero();
    }
    let v = *[-2i64, -1, 1, 2].choose(rng).expect("nonempty");
    if rng.gen_bool(0.15) {
        Rational::new(v, 2)
    } else {
        Rational::from_int(v)
    }
}

fn nonzero_entry(rng: &mut TrialRng) -> Rational {
    let v = *[-2i64, -1, 1, 1, 2].choose(rng).expect("nonempty");
    Rational::from_int(v)
}

/// Invertible `n x n` matrix: a permutation times unit lower times upper triangular.
pub fn invertible_matrix(rng: &mut TrialRng, n: usize) -> DenseMatrix {
    let density = 0.5;
    let mut lower = DenseMatrix::identity(n);
    let mut upper = DenseMatrix::zeros(n, n);
    for r in 0..n {
        upper.set(r, r, nonzero_entry(rng));
        for c in 0..n {
            if c < r {
                lower.set(r, c, sparse_entry(rng, density));
            } else if c > r {
                upper.set(r, c, sparse_entry(rng, density));
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    if rng.gen_bool(0.5) {
        perm.shuffle(rng);
    }
    let all: Vec<usize> = (0..n).collect();
    let p = DenseMatrix::identity(n).select(&perm, &all);
    p.mul(&lower).and_then(|x| x.mul(&upper)).expect("square factors")
}

/// Window with `len` valid indices, starting near the middle of the index set.
pub fn window_of_len(rng: &mut TrialRng, kind: IndexKind, len: usize) -> Window {
    if len == 0 {
        return Window::empty();
    }
    let start = match kind {
        IndexKind::PositiveInts => rng.gen_range(1..=4),
        IndexKind::NegativeInts => rng.gen_range(-(len as i64) - 4..=-(len as i64)),
        _ => rng.gen_range(-(len as i64) - 2..=2),
    };
    let mut hi = start;
    while Window::new(kind, start, hi).len(kind) < len {
        hi += 1;
    }
    Window::new(kind, start, hi)
}

/// Operator with a window of at most `max_len` indices and, on kinds that allow it,
/// a tail shift of size at most `max_shift`.
pub fn operator(rng: &mut TrialRng, schema: &FlagSchema, max_len: usize, max_shift: i64) -> StructuredOperator {
    let kind = schema.kind();
    let shift = if kind.supports_translation() && max_shift > 0 { rng.gen_range(-max_shift..=max_shift) } else { 0 };
    let len = rng.gen_range(0..=max_len);
    let window = window_of_len(rng, kind, len);
    let m = invertible_matrix(rng, len);
    StructuredOperator::new(schema.clone(), window, shift, m).expect("generated operator is valid")
}

/// Operator fixing all but finitely many basis vectors.
pub fn eventually_identity(rng: &mut TrialRng, schema: &FlagSchema, max_len: usize) -> StructuredOperator {
    operator(rng, schema, max_len, 0)
}

/// Index of the block of the reference flag containing `i`.
fn block_of(schema: &FlagSchema, i: i64, idx: &[i64]) -> usize {
    match &schema.cuts {
        CutFamily::Finite(cuts) => {
            cuts.iter().filter(|&&a| !schema.is_below(i, crate::schema::CutId::after(a))).count()
        }
        CutFamily::EveryPosition => idx.iter().position(|&j| j == i).expect("index in window"),
    }
}

/// Operator on `window` whose matrix never sends a basis vector into a higher block.
pub fn block_upper(rng: &mut TrialRng, schema: &FlagSchema, window: Window) -> StructuredOperator {
    let kind = schema.kind();
    let idx = window.indices(kind);
    let n = idx.len();
    let blocks: Vec<usize> = idx.iter().map(|&i| block_of(schema, i, &idx)).collect();
    let mut upper = DenseMatrix::zeros(n, n);
    for r in 0..n {
        upper.set(r, r, nonzero_entry(rng));
        for c in r + 1..n {
            upper.set(r, c, sparse_entry(rng, 0.5));
        }
    }
    // Mix inside each block, which keeps every row in its block.
    let mut mix = DenseMatrix::identity(n);
    for r in 0..n {
        for c in 0..n {
            if r != c && blocks[r] == blocks[c] && rng.gen_bool(0.3) {
                mix = elementary(n, r, c, sparse_entry(rng, 1.0)).mul(&mix).expect("square");
            }
        }
    }
    let m = mix.mul(&upper).expect("square");
    StructuredOperator::new(schema.clone(), window, 0, m).expect("block upper operator is invertible")
}

fn elementary(n: usize, r: usize, c: usize, v: Rational) -> DenseMatrix {
    let mut e = DenseMatrix::identity(n);
    e.set(r, c, v);
    e
}

/// Random flag on a window of `len` indices with the given offsets (zero if `None`).
pub fn point(rng: &mut TrialRng, schema: &FlagSchema, len: usize, offsets: Option<&[i64]>) -> FlagPoint {
    let kind = schema.kind();
    let window = window_of_len(rng, kind, len);
    let n = window.len(kind);
    let cuts = schema.cuts_for_window(&window);
    let zeros = vec![0; cuts.len()];
    let offsets = offsets.unwrap_or(&zeros);
    let basis = invertible_matrix(rng, n);
    FlagPoint::from_adapted_basis(schema, window, &basis, offsets).expect("offsets fit the window")
}

/// Offsets for a single-cut schema that fit a window of `len` indices around the cut.
pub fn single_cut_offset(rng: &mut TrialRng, max: i64) -> i64 {
    rng.gen_range(-max..=max)
}

/// Form-preserving operator on the closed window `[-n, n]`, built from Cayley transforms.
pub fn form_preserving(rng: &mut TrialRng, schema: &FlagSchema, form: FormKind, n: i64) -> StructuredOperator {
    let kind = form.index_kind();
    let window = Window::new(kind, -n, n);
    let size = window.len(kind);
    let mut m = DenseMatrix::identity(size);
    let factors = rng.gen_range(1..=2);
    let mut made = 0;
    while made < factors {
        let mut s = DenseMatrix::zeros(size, size);
        for r in 0..size {
            for c in r..size {
                let v = if rng.gen_bool(0.35) { sparse_entry(rng, 1.0) } else { Rational::zero() };
                if r == c {
                    if form.is_symplectic() {
                        s.set(r, c, v);
                    }
                    continue;
                }
                let mirrored = if form.is_symplectic() { v.clone() } else { -&v };
                s.set(r, c, v);
                s.set(c, r, mirrored);
            }
        }
        if let Ok(q) = cayley_transform(form, &window, &s) {
            m = q.mul(&m).expect("square");
            made += 1;
        }
    }
    if !form.is_symplectic() && rng.gen_bool(0.3) {
        // Swapping e_i and e_{-i} preserves a symmetric pairing.
        let idx = window.indices(kind);
        let i = **idx.iter().filter(|&&i| i > 0).collect::<Vec<_>>().choose(rng).expect("n >= 1");
        let a = idx.iter().position(|&j| j == i).expect("present");
        let b = idx.iter().position(|&j| j == -i).expect("closed window");
        let mut perm: Vec<usize> = (0..size).collect();
        perm.swap(a, b);
        let all: Vec<usize> = (0..size).collect();
        m = DenseMatrix::identity(size).select(&perm, &all).mul(&m).expect("square");
    }
    debug_assert!({
        let g = GramWindow::new(form, &window).gram;
        m.transpose().mul(&g).unwrap().mul(&m).unwrap() == g
    });
    StructuredOperator::new(schema.clone(), window, 0, m).expect("Cayley transforms are invertible")
}

/// Operator on a closed window that preserves the form about half the time.
pub fn maybe_form_preserving(
    rng: &mut TrialRng,
    schema: &FlagSchema,
    form: FormKind,
    max_n: i64,
) -> StructuredOperator {
    let n = rng.gen_range(1..=max_n);
    let f = form_preserving(rng, schema, form, n);
    match rng.gen_range(0..4) {
        0 | 1 => f,
        2 => {
            // Perturb one entry.
            let mut m = f.matrix().clone();
            let size = m.rows();
            let (r, c) = (rng.gen_range(0..size), rng.gen_range(0..size));
            let v = m.get(r, c) + &nonzero_entry(rng);
            m.set(r, c, v);
            match StructuredOperator::new(schema.clone(), f.window(), 0, m) {
                Ok(g) => g,
                Err(_) => f,
            }
        }
        _ => {
            let w = f.window();
            let m = invertible_matrix(rng, w.len(schema.kind()));
            StructuredOperator::new(schema.clone(), w, 0, m).expect("invertible")
        }
    }
}
