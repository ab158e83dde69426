use genflag_core::linalg::{annihilator, intersect, invert, rank, rref};
use genflag_core::operator::{basis_vector, pair, SparseVector};
use genflag_core::random::{self, trial_rng};
use genflag_core::*;

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

fn m(rows: &[&[i64]]) -> DenseMatrix {
    DenseMatrix::from_i64(rows)
}

fn span(n: usize, vecs: &[&[i64]]) -> Subspace {
    let vecs: Vec<Vec<Rational>> = vecs.iter().map(|v| v.iter().map(|&x| r(x)).collect()).collect();
    Subspace::span(n, &vecs).unwrap()
}

fn sato() -> FlagSchema {
    Scenario::Sato.schema()
}

fn sw(lo: i64, hi: i64) -> Window {
    Window::new(IndexKind::SatoSplit, lo, hi)
}

fn swap() -> StructuredOperator {
    StructuredOperator::new(sato(), sw(-1, 1), 0, m(&[&[0, 1], &[1, 0]])).unwrap()
}

fn unipotent() -> StructuredOperator {
    StructuredOperator::new(sato(), sw(-1, 1), 0, m(&[&[1, 1], &[0, 1]])).unwrap()
}

#[test]
fn rref_examples() {
    assert_eq!(rref(&m(&[&[2, 4], &[1, 2]])), m(&[&[1, 2], &[0, 0]]));
    assert_eq!(rref(&DenseMatrix::identity(3)), DenseMatrix::identity(3));
    assert_eq!(rref(&m(&[&[0, 1], &[1, 0]])), DenseMatrix::identity(2));
}

#[test]
fn rank_examples() {
    assert_eq!(rank(&DenseMatrix::zeros(3, 3)), 0);
    assert_eq!(rank(&DenseMatrix::identity(4)), 4);
    assert_eq!(rank(&m(&[&[1, 2], &[2, 4], &[3, 6]])), 1);
}

#[test]
fn annihilator_examples() {
    assert_eq!(annihilator(&span(3, &[&[1, 0, 0]])), span(3, &[&[0, 1, 0], &[0, 0, 1]]));
    assert!(annihilator(&Subspace::full(4)).is_zero());
    assert_eq!(annihilator(&span(2, &[&[1, 1]])), span(2, &[&[1, -1]]));
}

#[test]
fn intersect_examples() {
    let a = span(3, &[&[1, 2, 0], &[0, 1, 1]]);
    assert_eq!(intersect(&a, &a).unwrap(), a);
    assert!(intersect(&span(2, &[&[1, 0]]), &span(2, &[&[0, 1]])).unwrap().is_zero());
    let b = span(3, &[&[1, 0, 0], &[0, 1, 0]]);
    let c = span(3, &[&[0, 1, 0], &[0, 0, 1]]);
    assert_eq!(intersect(&b, &c).unwrap(), span(3, &[&[0, 1, 0]]));
}

#[test]
fn invert_examples() {
    assert_eq!(invert(&DenseMatrix::identity(5)).unwrap(), DenseMatrix::identity(5));
    assert_eq!(invert(&m(&[&[0, 1], &[1, 0]])).unwrap(), m(&[&[0, 1], &[1, 0]]));
    assert_eq!(invert(&m(&[&[1, 1], &[0, 1]])).unwrap(), m(&[&[1, -1], &[0, 1]]));
    assert_eq!(invert(&m(&[&[1, 2], &[2, 4]])), Err(Error::Singular));
}

#[test]
fn schema_validation() {
    assert!(validate_schema(&sato()).is_ok());
    assert!(FlagSchema::every_position(IndexKind::AllInts).is_ok());
    assert!(FlagSchema::finite(IndexKind::AllInts, vec![2, 2]).is_err());
    assert!(FlagSchema::finite(IndexKind::SatoSplit, vec![0]).is_err());
}

#[test]
fn scenario_symmetry() {
    let expected = [true, false, true, true, true];
    for (s, e) in Scenario::EXAMPLES.into_iter().zip(expected) {
        assert_eq!(is_symmetric(&s.schema()), e, "{s}");
    }
    assert!(is_symmetric(&Scenario::Sato.schema()));
}

#[test]
fn shifted_schemas() {
    assert_eq!(shifted_schema(&sato(), 0).unwrap(), sato());
    assert_eq!(shifted_schema(&sato(), 1).unwrap(), FlagSchema::finite(IndexKind::SatoSplit, vec![1]).unwrap());
    assert_eq!(shifted_schema(&sato(), -2).unwrap(), FlagSchema::finite(IndexKind::SatoSplit, vec![-3]).unwrap());
    assert!(shifted_schema(&Scenario::Ex2_3.schema(), 1).is_err());
}

#[test]
fn truncated_types() {
    assert_eq!(truncate_type(&sato(), &sw(-2, 2)).dims, vec![2]);
    let all = Scenario::Ex2_3.schema();
    assert_eq!(truncate_type(&all, &Window::new(IndexKind::AllInts, -1, 2)).dims, vec![1, 2, 3]);
    assert!(truncate_type(&sato(), &sw(1, 3)).dims.is_empty());
}

#[test]
fn dual_schemas() {
    assert_eq!(dual_schema(&sato()), sato());
    let pos = Scenario::Ex2_2.schema();
    let d = dual_schema(&pos);
    assert_ne!(d, pos);
    assert_eq!(d.kind(), IndexKind::NegativeInts);
    assert_eq!(dual_schema(&d), pos);
    let two = Scenario::Ex2_4.schema();
    assert_eq!(dual_schema(&two), two);
}

#[test]
fn reference_points() {
    let p = FlagPoint::reference(&sato(), sw(-2, 2));
    assert_eq!(p.chain(), vec![&span(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]])]);
    // Zero is an index here, so the window has three basis vectors.
    let q = Scenario::Ex2_3.reference_point(Some(Window::new(IndexKind::AllInts, -1, 1)));
    assert_eq!(q.chain(), vec![&span(3, &[&[1, 0, 0]]), &span(3, &[&[1, 0, 0], &[0, 1, 0]])]);
    assert!(FlagPoint::reference(&sato(), sw(1, 2)).chain().is_empty());
}

#[test]
fn enlarging_windows() {
    let p = FlagPoint::reference(&sato(), sw(-1, 1));
    assert_eq!(p.enlarge_window(&sw(-2, 2)).unwrap(), FlagPoint::reference(&sato(), sw(-2, 2)));
    let q = FlagPoint::new(sato(), sw(-1, 1), vec![(CutId::after(-1), span(2, &[&[0, 1]]))]).unwrap();
    let big = q.enlarge_window(&sw(-2, 2)).unwrap();
    assert_eq!(big.members()[0].space, span(4, &[&[1, 0, 0, 0], &[0, 0, 1, 0]]));
    assert!(q.enlarge_window(&sw(0, 1)).is_err());
}

#[test]
fn commensurability() {
    let w = FlagPoint::reference(&sato(), sw(-2, 2));
    assert!(w.is_commensurable(&w).unwrap());
    let swapped = FlagPoint::new(sato(), sw(-1, 1), vec![(CutId::after(-1), span(2, &[&[0, 1]]))]).unwrap();
    assert!(w.is_commensurable(&swapped).unwrap());
    let w1 = FlagPoint::from_adapted_basis(&sato(), sw(-2, 2), &DenseMatrix::identity(4), &[1]).unwrap();
    assert!(!w.is_commensurable(&w1).unwrap());
}

#[test]
fn relative_positions() {
    let w = FlagPoint::reference(&sato(), sw(-2, 2));
    assert_eq!(w.relative_position(), vec![(CutId::after(-1), 0)]);
    let sh = StructuredOperator::shift(&sato(), 1).unwrap();
    assert_eq!(act(&sh, &w).unwrap().relative_position(), vec![(CutId::after(-1), 1)]);
    assert_eq!(act(&sh.inverse(), &w).unwrap().relative_position(), vec![(CutId::after(-1), -1)]);
}

#[test]
fn identity_operator() {
    let id = StructuredOperator::identity(&sato());
    let v = SparseVector::from([(-3, r(2)), (5, Rational::new(1, 3))]);
    assert_eq!(id.apply(&v), v);
    assert!(id.degree().unwrap().is_zero());
    assert_eq!(id.compose(&swap()).unwrap(), swap());
    assert_eq!(swap().compose(&id).unwrap(), swap());
}

#[test]
fn shift_operator() {
    let sh = StructuredOperator::shift(&sato(), 1).unwrap();
    assert_eq!(sh.apply(&basis_vector(-1)), basis_vector(1));
    assert_eq!(sh.apply(&basis_vector(-5)), basis_vector(-4));
    assert!(StructuredOperator::shift(&Scenario::Ex2_2.schema(), 1).is_err());
}

#[test]
fn absorbing() {
    let id = StructuredOperator::identity(&sato()).absorb(&sw(-2, 2)).unwrap();
    assert_eq!(id.matrix(), &DenseMatrix::identity(4));
    let all = StructuredOperator::identity(&Scenario::Ex2_3.schema());
    assert_eq!(all.absorb(&Window::new(IndexKind::AllInts, -2, 2)).unwrap().matrix(), &DenseMatrix::identity(5));
    let sh = StructuredOperator::shift(&sato(), 1).unwrap().absorb(&sw(-2, 2)).unwrap();
    // Columns e_{-2}, e_{-1}, e_1, e_2 land on e_{-1}, e_1, e_2, e_3 in order.
    assert_eq!(sh.matrix(), &DenseMatrix::identity(4));
    assert_eq!(sh.target_indices(), vec![-1, 1, 2, 3]);
    assert_eq!(sh.apply(&basis_vector(2)), basis_vector(3));
}

#[test]
fn splittings() {
    let id = StructuredOperator::identity(&sato());
    assert!(id.splitting_at_cut(CutId::after(-1)).unwrap().c.is_zero());
    let sh = StructuredOperator::shift(&sato(), 1).unwrap();
    let c = sh.splitting_at_cut(CutId::after(-1)).unwrap().c;
    assert_eq!((c.rows(), c.cols(), c.rank()), (1, 1, 1));
    let s = swap().splitting_at_cut(CutId::after(-1)).unwrap();
    assert_eq!((s.c.rows(), s.c.cols(), s.c.rank()), (1, 1, 1));
    assert_eq!((s.b.rows(), s.b.cols(), s.b.rank()), (1, 1, 1));
}

#[test]
fn degrees_and_predicates() {
    let cut = CutId::after(-1);
    let id = StructuredOperator::identity(&sato());
    let sh = StructuredOperator::shift(&sato(), 1).unwrap();
    assert_eq!(id.degree_at_cut(cut).unwrap(), 0);
    assert_eq!(sh.degree_at_cut(cut).unwrap(), 1);
    assert_eq!(swap().degree_at_cut(cut).unwrap(), 0);

    assert!(id.is_eventually_identity());
    assert!(!sh.is_eventually_identity());
    assert!(swap().is_eventually_identity());

    assert!(unipotent().is_w_aligned());
    assert!(sh.is_w_aligned());
    let all_sh = StructuredOperator::shift(&Scenario::Ex2_3.schema(), 1).unwrap();
    assert!(!all_sh.is_w_aligned());

    assert!(unipotent().is_eligible().unwrap());
    assert!(!sh.is_eligible().unwrap());
    assert!(swap().is_eligible().unwrap());
}

#[test]
fn stabilizers() {
    let w = FlagPoint::reference(&sato(), sw(-2, 2));
    assert!(in_stabilizer(&StructuredOperator::identity(&sato()), &w).unwrap());
    assert!(in_stabilizer(&unipotent(), &w).unwrap());
    assert!(!in_stabilizer(&swap(), &w).unwrap());
}

#[test]
fn dual_operator_pairing() {
    for t in 0..100 {
        let mut rng = trial_rng(11, t);
        let f = random::operator(&mut rng, &sato(), 5, 2);
        let probe = f.window().hull(&f.target_window()).widen(IndexKind::SatoSplit, 3);
        let vec = |rng: &mut random::TrialRng| -> SparseVector {
            probe
                .indices(IndexKind::SatoSplit)
                .into_iter()
                .map(|i| (i, random::sparse_entry(rng, 0.6)))
                .filter(|(_, v)| !v.is_zero())
                .collect()
        };
        let (x, y) = (vec(&mut rng), vec(&mut rng));
        assert_eq!(pair(&f.bar().apply(&y), &x), pair(&y, &f.apply(&x)), "trial {t}");
    }
}

#[test]
fn acting_on_the_reference() {
    let w = FlagPoint::reference(&sato(), sw(-2, 2));
    let sh = StructuredOperator::shift(&sato(), 1).unwrap();
    let next = FlagPoint::from_adapted_basis(&sato(), sw(-2, 2), &DenseMatrix::identity(4), &[1]).unwrap();
    assert_eq!(act(&sh, &w).unwrap(), next);

    let q = act(&swap(), &w).unwrap();
    let expected = span(4, &[&[1, 0, 0, 0], &[0, 0, 1, 0]]);
    assert_eq!(q.enlarge_window(&sw(-2, 2)).unwrap().members()[0].space, expected);
    assert_eq!(q.offsets(), vec![0]);
    assert!(q.is_commensurable(&w).unwrap());
}

#[test]
fn stabilizer_acts_trivially() {
    let s = Scenario::Ex2_3;
    let f = StructuredOperator::new(
        s.schema(),
        Window::new(IndexKind::AllInts, -1, 1),
        0,
        m(&[&[1, 2, -1], &[0, 3, 1], &[0, 0, 1]]),
    )
    .unwrap();
    let p = s.reference_point(None);
    assert!(in_stabilizer(&f, &p).unwrap());
    assert_eq!(act(&f, &p).unwrap(), p);
}

#[test]
fn duality_needs_symmetry() {
    let p = Scenario::Ex2_2.reference_point(None);
    assert_eq!(duality_map(&p), Err(Error::NotSymmetric));
    let q = Scenario::Ex2_4.reference_point(None);
    assert_eq!(duality_map(&q).unwrap(), q);
}

#[test]
fn isotropic_examples() {
    let w = FlagPoint::reference(&sato(), sw(-2, 2));
    assert!(is_isotropic_flag(&w, FormKind::OrthogonalSato).unwrap());
    let diag = FlagPoint::new(sato(), sw(-1, 1), vec![(CutId::after(-1), span(2, &[&[1, 1]]))]).unwrap();
    assert!(!is_isotropic_flag(&diag, FormKind::OrthogonalSato).unwrap());
    assert!(is_isotropic_flag(&diag, FormKind::SymplecticSato).unwrap());
}

#[test]
fn form_preservation_examples() {
    let id = StructuredOperator::identity(&sato());
    let diag = StructuredOperator::new(sato(), sw(-1, 1), 0, m(&[&[2, 0], &[0, 1]])).unwrap();
    for form in [FormKind::OrthogonalSato, FormKind::SymplecticSato] {
        assert!(preserves_form(&id, form).unwrap());
        assert!(reflection_condition(&id, form).unwrap());
    }
    assert!(preserves_form(&swap(), FormKind::OrthogonalSato).unwrap());
    assert!(reflection_condition(&swap(), FormKind::OrthogonalSato).unwrap());
    assert!(!preserves_form(&diag, FormKind::OrthogonalSato).unwrap());
    assert!(!reflection_condition(&diag, FormKind::OrthogonalSato).unwrap());
    assert!(!reflection_condition(&unipotent(), FormKind::OrthogonalSato).unwrap());
}

#[test]
fn symplectic_sign_on_two_and_four_indices() {
    // Gram conjugation is the oracle; every 2x2 and a spread of 4x4 matrices
    // with entries in {-1, 0, 1} must agree with the reflection test.
    let form = FormKind::SymplecticSato;
    let mut checked = 0;
    let mut preserving = 0;
    for code in 0..81 {
        let e: Vec<i64> = (0..4).map(|k| (code / 3i64.pow(k)) % 3 - 1).collect();
        let mat = m(&[&[e[0], e[1]], &[e[2], e[3]]]);
        if !mat.is_invertible() {
            continue;
        }
        let f = StructuredOperator::new(sato(), sw(-1, 1), 0, mat).unwrap();
        let p = preserves_form(&f, form).unwrap();
        assert_eq!(p, reflection_condition(&f, form).unwrap(), "{f:?}");
        checked += 1;
        preserving += p as usize;
    }
    assert!(checked > 0 && preserving > 0);
    for t in 0..200 {
        let mut rng = trial_rng(5, t);
        let f = random::maybe_form_preserving(&mut rng, &sato(), form, 2);
        assert_eq!(preserves_form(&f, form).unwrap(), reflection_condition(&f, form).unwrap(), "{f:?}");
    }
}
