//! Seeded property suites. Each trial draws from its own generator, so a report
//! depends only on the suite, the seed, and the trial count.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::action::{act, act_direct, duality_map, in_stabilizer};
use crate::document::{OperatorDoc, PointDoc, SchemaDoc};
use crate::error::{Error, Result};
use crate::isotropic::{is_isotropic_flag, preserves_form, reflection_condition, FormKind};
use crate::operator::{pair, SparseVector, StructuredOperator};
use crate::point::FlagPoint;
use crate::random::{self, TrialRng};
use crate::scenarios::Scenario;
use crate::schema::{dual_schema, is_symmetric, CutId, FlagSchema, IndexKind, Window};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub failures: usize,
    /// Smallest failing case seen, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub passed: bool,
    pub properties: Vec<PropertyReport>,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    DegreeAdditivity,
    ShiftDegree,
    EligibleNormality,
    ActionLaw,
    OracleEquivalence,
    ExampleScenarios,
    SymmetryDetection,
    IsotropicEquivalence,
    BarRank,
    StabilizerDegree,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::DegreeAdditivity,
        Suite::ShiftDegree,
        Suite::EligibleNormality,
        Suite::ActionLaw,
        Suite::OracleEquivalence,
        Suite::ExampleScenarios,
        Suite::SymmetryDetection,
        Suite::IsotropicEquivalence,
        Suite::BarRank,
        Suite::StabilizerDegree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::DegreeAdditivity => "degree-additivity",
            Suite::ShiftDegree => "shift-degree",
            Suite::EligibleNormality => "eligible-normality",
            Suite::ActionLaw => "action-law",
            Suite::OracleEquivalence => "oracle-equivalence",
            Suite::ExampleScenarios => "example-2-scenarios",
            Suite::SymmetryDetection => "symmetry-detection",
            Suite::IsotropicEquivalence => "isotropic-equivalence",
            Suite::BarRank => "bar-rank",
            Suite::StabilizerDegree => "stabilizer-degree",
        }
    }

    /// Trial count used when none is given. Where a suite loops over scenarios or
    /// forms, the count is per scenario or form.
    pub fn default_trials(self) -> usize {
        match self {
            Suite::DegreeAdditivity => 1000,
            Suite::ShiftDegree => 200,
            Suite::EligibleNormality => 500,
            Suite::ActionLaw => 500,
            Suite::OracleEquivalence => 500,
            Suite::ExampleScenarios => 200,
            Suite::SymmetryDetection => 200,
            Suite::IsotropicEquivalence => 500,
            Suite::BarRank => 500,
            Suite::StabilizerDegree => 500,
        }
    }

    pub fn run(self, seed: u64, trials: Option<usize>) -> SuiteReport {
        let trials = trials.unwrap_or(self.default_trials());
        let properties = match self {
            Suite::DegreeAdditivity => degree_additivity(seed, trials),
            Suite::ShiftDegree => shift_degree(seed, trials),
            Suite::EligibleNormality => eligible_normality(seed, trials),
            Suite::ActionLaw => action_law(seed, trials),
            Suite::OracleEquivalence => oracle_equivalence(seed, trials),
            Suite::ExampleScenarios => example_scenarios(seed, trials),
            Suite::SymmetryDetection => symmetry_detection(seed, trials),
            Suite::IsotropicEquivalence => isotropic_equivalence(seed, trials),
            Suite::BarRank => bar_rank(seed, trials),
            Suite::StabilizerDegree => stabilizer_degree(seed, trials),
        };
        SuiteReport {
            suite: self.name().to_string(),
            seed,
            trials,
            passed: properties.iter().all(|p| p.passed),
            properties,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Document(format!("unknown suite {s:?}")))
    }
}

pub fn run_suite(name: &str, seed: u64, trials: Option<usize>) -> Result<SuiteReport> {
    Ok(name.parse::<Suite>()?.run(seed, trials))
}

/// Running tally for one property.
struct Check {
    name: String,
    checked: usize,
    failures: usize,
    smallest: Option<(usize, Value)>,
}

impl Check {
    fn new(name: impl Into<String>) -> Check {
        Check { name: name.into(), checked: 0, failures: 0, smallest: None }
    }

    /// Counts one case. An error counts as a failure and is kept with the case.
    fn record(&mut self, outcome: Result<bool>, size: usize, case: impl FnOnce() -> Value) {
        self.checked += 1;
        let error = match outcome {
            Ok(true) => return,
            Ok(false) => None,
            Err(e) => Some(e.to_string()),
        };
        self.failures += 1;
        if self.smallest.as_ref().is_some_and(|(s, _)| *s <= size) {
            return;
        }
        let mut v = case();
        if let (Some(e), Value::Object(map)) = (error, &mut v) {
            map.insert("error".into(), Value::String(e));
        }
        self.smallest = Some((size, v));
    }

    fn finish(self) -> PropertyReport {
        PropertyReport {
            name: self.name,
            passed: self.failures == 0,
            checked: self.checked,
            failures: self.failures,
            counterexample: self.smallest.map(|(_, v)| v),
        }
    }
}

fn finish(checks: Vec<Check>) -> Vec<PropertyReport> {
    checks.into_iter().map(Check::finish).collect()
}

fn schema_doc(s: &FlagSchema) -> Value {
    serde_json::to_value(SchemaDoc::from_schema(s)).expect("serializes")
}

fn op_doc(f: &StructuredOperator) -> Value {
    serde_json::to_value(OperatorDoc::from_operator(f)).expect("serializes")
}

fn point_doc(p: &FlagPoint) -> Value {
    serde_json::to_value(PointDoc::from_point(p)).expect("serializes")
}

fn op_size(f: &StructuredOperator) -> usize {
    f.window().len(f.kind()) + f.tail_shift().unsigned_abs() as usize
}

/// Random eligible operator, found by rejection. Falls back to the identity.
fn eligible_operator(rng: &mut TrialRng, schema: &FlagSchema, max_len: usize) -> StructuredOperator {
    for _ in 0..64 {
        let f = random::operator(rng, schema, max_len, 2);
        if f.is_eligible().unwrap_or(false) {
            return f;
        }
    }
    StructuredOperator::identity(schema)
}

/// Random point; on single-cut translation schemas the offset is random too.
fn random_point(rng: &mut TrialRng, schema: &FlagSchema, max_len: usize) -> FlagPoint {
    let kind = schema.kind();
    let len = rng.gen_range(1..=max_len);
    let window = random::window_of_len(rng, kind, len);
    let cuts = schema.cuts_for_window(&window);
    let mut offsets = vec![0; cuts.len()];
    if kind.supports_translation() && cuts.len() == 1 && !schema.is_every_position() {
        let lower = schema.lower_count(cuts[0], &window) as i64;
        offsets[0] = rng.gen_range(-lower..=len as i64 - lower);
    }
    let basis = random::invertible_matrix(rng, len);
    FlagPoint::from_adapted_basis(schema, window, &basis, &offsets).expect("offsets fit")
}

fn sparse_vector(rng: &mut TrialRng, window: &Window, kind: IndexKind) -> SparseVector {
    let mut v = SparseVector::new();
    for i in window.indices(kind) {
        let x = random::sparse_entry(rng, 0.5);
        if !x.is_zero() {
            v.insert(i, x);
        }
    }
    v
}

fn degree_additivity(seed: u64, trials: usize) -> Vec<PropertyReport> {
    let schemas = [Scenario::Sato.schema(), Scenario::Ex2_3.schema()];
    let mut additive = Check::new("degree_of_product_is_sum");
    let mut inverse = Check::new("degree_of_inverse_is_negated");
    let mut composition = Check::new("product_matches_successive_application");
    let mut tail = Check::new("degree_equals_tail_shift");
    for t in 0..trials {
        let mut rng = random::trial_rng(seed, t as u64);
        let schema = &schemas[t % 2];
        let f = random::operator(&mut rng, schema, 12, 3);
        let g = random::operator(&mut rng, schema, 12, 3);
        let size = op_size(&f) + op_size(&g);
        let case = || json!({"trial": t, "schema": schema_doc(schema), "f": op_doc(&f), "g": op_doc(&g)});
        let h = match f.compose(&g) {
            Ok(h) => h,
            Err(e) => {
                additive.record(Err(e), size, case);
                continue;
            }
        };
        let mut cuts = f.evaluated_cuts();
        cuts.extend(g.evaluated_cuts());
        cuts.extend(h.evaluated_cuts());
        cuts.sort();
        cuts.dedup();
        let degrees = (|| {
            Ok((f.degrees_at(&cuts)?, g.degrees_at(&cuts)?, h.degrees_at(&cuts)?, f.inverse().degrees_at(&cuts)?))
        })();
        let (df, dg, dh, dfi) = match degrees {
            Ok(d) => d,
            Err(e) => {
                additive.record(Err(e), size, case);
                continue;
            }
        };
        additive.record(Ok((0..cuts.len()).all(|k| dh[k] == df[k] + dg[k])), size, case);
        inverse.record(Ok((0..cuts.len()).all(|k| dfi[k] == -df[k])), size, case);
        tail.record(Ok(df.iter().all(|&d| d == f.tail_shift()) && dh.iter().all(|&d| d == h.tail_shift())), size, case);
        let kind = schema.kind();
        let probe = f.window().hull(&g.window()).hull(&h.window()).widen(kind, 4);
        let agrees = probe.indices(kind).into_iter().all(|j| {
            let e = crate::operator::basis_vector(j);
            h.apply(&e) == f.apply(&g.apply(&e))
        });
        composition.record(Ok(agrees), size, case);
    }
    finish(vec![additive, inverse, composition, tail])
}

fn shift_degree(seed: u64, trials: usize) -> Vec<PropertyReport> {
    let schema = Scenario::Sato.schema();
    let cut = CutId::after(-1);
    let reference = FlagPoint::reference(&schema, Window::new(IndexKind::SatoSplit, -6, 6));
    let mut degree = Check::new("shift_degree_at_cut");
    let mut moves = Check::new("shift_moves_reference");
    for k in -5..=5 {
        let case = || json!({"k": k});
        let s = match StructuredOperator::shift(&schema, k) {
            Ok(s) => s,
            Err(e) => {
                degree.record(Err(e), 0, case);
                continue;
            }
        };
        degree.record(s.degree_at_cut(cut).map(|d| d == k), 0, case);
        moves.record(act(&s, &reference).map(|q| q.relative_position() == vec![(cut, k)]), 0, case);
    }
    let mut component = Check::new("action_adds_degree_to_position");
    for t in 0..trials {
        let mut rng = random::trial_rng(seed, t as u64);
        let p = random_point(&mut rng, &schema, 6);
        let f = random::operator(&mut rng, &schema, 6, 3);
        let size = op_size(&f) + p.window().len(schema.kind());
        let outcome = (|| {
            let d = f.degree_at_cut(cut)?;
            let q = act(&f, &p)?;
            Ok(q.relative_position() == vec![(cut, p.offsets()[0] + d)])
        })();
        component.record(outcome, size, || json!({"trial": t, "f": op_doc(&f), "p": point_doc(&p)}));
    }
    finish(vec![degree, moves, component])
}

fn eligible_normality(seed: u64, trials: usize) -> Vec<PropertyReport> {
    let mut conjugate = Check::new("conjugate_is_eligible");
    let mut product = Check::new("product_is_eligible");
    let mut inverse = Check::new("inverse_is_eligible");
    let mut tail = Check::new("nonzero_tail_is_not_eligible");
    for t in 0..trials {
        let mut rng = random::trial_rng(seed, t as u64);
        let schema = Scenario::EXAMPLES[t % 5].schema();
        let f = eligible_operator(&mut rng, &schema, 6);
        let f2 = eligible_operator(&mut rng, &schema, 6);
        let g = random::operator(&mut rng, &schema, 6, 2);
        let size = op_size(&f) + op_size(&f2) + op_size(&g);
        let case =
            || json!({"trial": t, "schema": schema_doc(&schema), "f": op_doc(&f), "f2": op_doc(&f2), "g": op_doc(&g)});
        conjugate.record(g.compose(&f).and_then(|x| x.compose(&g.inverse())).and_then(|c| c.is_eligible()), size, case);
        product.record(f.compose(&f2).and_then(|x| x.is_eligible()), size, case);
        inverse.record(f.inverse().is_eligible(), size, case);
        if g.tail_shift() != 0 {
            tail.record(g.is_eligible().map(|e| !e), size, case);
        }
    }
    finish(vec![conjugate, product, inverse, tail])
}

const POINTS_PER_OPERATOR: usize = 20;

fn action_law(seed: u64, trials: usize) -> Vec<PropertyReport> {
    let mut commensurable = Check::new("result_is_commensurable");
    let mut law = Check::new("action_of_product");
    let mut position = Check::new("relative_position_is_kept");
    let scenarios = [Scenario::Ex2_1, Scenario::Ex2_3, Scenario::Ex2_4, Scenario::Ex2_5];
    for (s, scenario) in scenarios.iter().enumerate() {
        let schema = scenario.schema();
        for t in 0..trials {
            let mut rng = random::trial_rng(seed ^ ((s as u64) << 48), t as u64);
            let f = eligible_operator(&mut rng, &schema, 5);
            let g = eligible_operator(&mut rng, &schema, 5);
            let fg = f.compose(&g);
            for k in 0..POINTS_PER_OPERATOR {
                let p = random_point(&mut rng, &schema, 5);
                let size = op_size(&f) + op_size(&g) + p.window().len(schema.kind());
                let case = || {
                    json!({"scenario": scenario.name(), "trial": t, "point": k,
                           "f": op_doc(&f), "g": op_doc(&g), "p": point_doc(&p)})
                };
                let q = act(&f, &p);
                commensurable.record(q.clone().and_then(|q| q.is_commensurable(&p)), size, case);
                position.record(q.map(|q| q.relative_position() == p.relative_position()), size, case);
                let outcome = (|| {
                    let lhs = act(fg.as_ref().map_err(Clone::clone)?, &p)?;
                    let rhs = act(&f, &act(&g, &p)?)?;
                    Ok(lhs == rhs)
                })();
                law.record(outcome, size, case);
            }
        }
    }
    finish(vec![commensurable, law, position])
}

fn oracle_equivalence(seed: u64, trials: usize) -> Vec<PropertyReport> {
    let mut equal = Check::new("annihilator_action_equals_direct_image");
    for t in 0..trials {
        let mut rng = random::trial_rng(seed, t as u64);
        let scenario = Scenario::EXAMPLES[t % 5];
        let schema = scenario.schema();
        let f = random::eventually_identity(&mut rng, &schema, 6);
        let p = random_point(&mut rng, &schema, 6);
        let size = op_size(&f) + p.window().len(schema.kind());
        let outcome = (|| Ok(act(&f, &p)? == act_direct(&f, &p)?))();
        equal.record(
            outcome,
            size,
            || json!({"scenario": scenario.name(), "trial": t, "f": op_doc(&f), "p": point_doc(&p)}),
        );
    }
    finish(vec![equal])
}

/// Mixture of generic operators, shifts times window operators, and block-upper ones.
fn scenario_operator(rng: &mut TrialRng, schema: &FlagSchema) -> StructuredOperator {
    let kind = schema.kind();
    match rng.gen_range(0..3) {
        0 => random::operator(rng, schema, 6, 2),
        1 if kind.supports_translation() => {
            let k = rng.gen_range(-2..=2);
            let s = StructuredOperator::shift(schema, k).expect("translation kind");
            let f = random::eventually_identity(rng, schema, 5);
            s.compose(&f).expect("same schema")
        }
        _ => {
            let len = rng.gen_range(0..=6);
            let w = random::window_of_len(rng, kind, len);
            random::block_upper(rng, schema, w)
        }
    }
}

fn example_scenarios(seed: u64, trials: usize) -> Vec<PropertyReport> {
    let mut checks = Vec::new();
    for (s, scenario) in Scenario::EXAMPLES.iter().enumerate() {
        let schema = scenario.schema();
        let mut agree = Check::new(format!("{}_predicate_matches_matrix_description", scenario.name()));
        for t in 0..trials {
            let mut rng = random::trial_rng(seed ^ ((s as u64) << 48), t as u64);
            let f = scenario_operator(&mut rng, &schema);
            let outcome = (|| {
                let library = f.is_w_aligned() && f.is_eligible()?;
                Ok(library == scenario.golden_membership(&f)?)
            })();
            agree.record(outcome, op_size(&f), || json!({"trial": t, "f": op_doc(&f)}));
        }
        checks.push(agree);
    }
    finish(checks)
}

/// Random valid schema with a short list of cuts.
fn random_finite_schema(rng: &mut TrialRng) -> Option<FlagSchema> {
    let kind = IndexKind::ALL[rng.gen_range(0..IndexKind::ALL.len())];
    let mut cuts: Vec<i64> = (0..rng.gen_range(0..=3))
        .map(|_| rng.gen_range(-4..=4))
        .filter(|&a| kind.is_valid(a) && kind.succ(a).is_some())
        .collect();
    cuts.sort_by(|&a, &b| kind.cmp(a, b));
    cuts.dedup();
    FlagSchema::finite(kind, cuts).ok()
}

fn symmetry_detection(seed: u64, trials: usize) -> Vec<PropertyReport> {
    let mut expected = Check::new("scenario_symmetry_values");
    for scenario in Scenario::EXAMPLES {
        let schema = scenario.schema();
        expected.record(
            Ok(is_symmetric(&schema) == scenario.expected_symmetric()),
            0,
            || json!({"scenario": scenario.name(), "expected": scenario.expected_symmetric()}),
        );
    }
    let mut involution = Check::new("dual_schema_is_involution");
    let mut keeps = Check::new("dual_schema_keeps_symmetry");
    let mut twice = Check::new("duality_map_twice_is_identity");
    let mut reference = Check::new("reference_is_self_dual");
    let symmetric = [Scenario::Ex2_1, Scenario::Ex2_3, Scenario::Ex2_4, Scenario::Ex2_5];
    for t in 0..trials {
        let mut rng = random::trial_rng(seed, t as u64);
        if let Some(s) = random_finite_schema(&mut rng) {
            let d = dual_schema(&s);
            let case = || json!({"trial": t, "schema": schema_doc(&s)});
            involution.record(Ok(dual_schema(&d) == s), 0, case);
            keeps.record(Ok(is_symmetric(&d) == is_symmetric(&s)), 0, case);
        }
        let scenario = symmetric[t % symmetric.len()];
        let schema = scenario.schema();
        let p = random_point(&mut rng, &schema, 6);
        let size = p.window().len(schema.kind());
        twice.record(
            duality_map(&p).and_then(|q| duality_map(&q)).map(|r| r == p),
            size,
            || json!({"scenario": scenario.name(), "trial": t, "p": point_doc(&p)}),
        );
        let len = rng.gen_range(0..=6);
        let w = random::window_of_len(&mut rng, schema.kind(), len);
        let r = FlagPoint::reference(&schema, w);
        reference.record(
            duality_map(&r).map(|q| q == r),
            len,
            || json!({"scenario": scenario.name(), "trial": t, "window": w.bounds()}),
        );
    }
    finish(vec![expected, involution, keeps, twice, reference])
}

fn form_schema(form: FormKind) -> FlagSchema {
    match form {
        FormKind::OrthogonalAllInts => Scenario::Ex2_3.schema(),
        FormKind::OrthogonalSato | FormKind::SymplecticSato => Scenario::Sato.schema(),
    }
}

/// Half-width of the largest closed window with at most ten indices.
fn max_half_width(form: FormKind) -> i64 {
    match form.index_kind() {
        IndexKind::AllInts => 4,
        _ => 5,
    }
}

fn isotropic_equivalence(seed: u64, trials: usize) -> Vec<PropertyReport> {
    let mut checks = Vec::new();
    for (s, form) in FormKind::ALL.into_iter().enumerate() {
        let schema = form_schema(form);
        let name = form.name();
        let mut equiv = Check::new(format!("{name}_preserves_iff_reflection"));
        let mut eligible = Check::new(format!("{name}_preserving_is_eligible"));
        let mut closure = Check::new(format!("{name}_preserving_closed_under_products"));
        let mut isotropic = Check::new(format!("{name}_preserving_keeps_reference_isotropic"));
        let reference = FlagPoint::reference(&schema, Window::new(form.index_kind(), -2, 2));
        for t in 0..trials {
            let mut rng = random::trial_rng(seed ^ ((s as u64) << 48), t as u64);
            let f = random::maybe_form_preserving(&mut rng, &schema, form, max_half_width(form));
            let size = op_size(&f);
            let case = || json!({"form": name, "trial": t, "f": op_doc(&f)});
            let preserving = match preserves_form(&f, form) {
                Ok(b) => b,
                Err(e) => {
                    equiv.record(Err(e), size, case);
                    continue;
                }
            };
            equiv.record(reflection_condition(&f, form).map(|r| r == preserving), size, case);
            if !preserving {
                continue;
            }
            eligible.record(f.is_eligible().map(|e| e && f.is_w_aligned()), size, case);
            let n = rng.gen_range(1..=max_half_width(form));
            let g = random::form_preserving(&mut rng, &schema, form, n);
            let outcome = (|| Ok(preserves_form(&f.compose(&g)?, form)? && preserves_form(&f.inverse(), form)?))();
            closure.record(
                outcome,
                size + op_size(&g),
                || json!({"form": name, "trial": t, "f": op_doc(&f), "g": op_doc(&g)}),
            );
            isotropic.record(act_direct(&f, &reference).and_then(|q| is_isotropic_flag(&q, form)), size, case);
        }
        checks.extend([equiv, eligible, closure, isotropic]);
    }
    finish(checks)
}

fn bar_rank(seed: u64, trials: usize) -> Vec<PropertyReport> {
    let mut transpose = Check::new("rank_equals_rank_of_transpose");
    let mut from_dual = Check::new("rank_from_dual_operator");
    let mut pairing = Check::new("dual_operator_pairing");
    let mut blocks = Check::new("blocks_are_finite");
    let mut twice = Check::new("dual_of_dual_is_original");
    for t in 0..trials {
        let mut rng = random::trial_rng(seed, t as u64);
        let schema = Scenario::ALL[t % Scenario::ALL.len()].schema();
        let kind = schema.kind();
        let f = random::operator(&mut rng, &schema, 8, 3);
        let cuts = f.evaluated_cuts();
        let cut = cuts[rng.gen_range(0..cuts.len())];
        let size = op_size(&f);
        let case = || json!({"trial": t, "schema": schema_doc(&schema), "f": op_doc(&f), "cut": cut.after});
        let c = match f.splitting_at_cut(cut) {
            Ok(s) => s.c,
            Err(e) => {
                transpose.record(Err(e), size, case);
                continue;
            }
        };
        transpose.record(Ok(c.rank() == c.transpose().rank()), size, case);
        let bar = f.bar();
        from_dual.record(bar.c_block_transpose(cut).map(|ct| ct.rank() == c.rank()), size, case);
        blocks.record(f.satisfies_block_conditions(cut), size, case);
        let probe = f.window().hull(&f.target_window()).widen(kind, 3);
        let x = sparse_vector(&mut rng, &probe, kind);
        let y = sparse_vector(&mut rng, &probe, kind);
        pairing.record(Ok(pair(&bar.apply(&y), &x) == pair(&y, &f.apply(&x))), size, case);
        twice.record(Ok(bar.as_operator().bar().0 == f), size, case);
    }
    finish(vec![transpose, from_dual, pairing, blocks, twice])
}

fn stabilizer_degree(seed: u64, trials: usize) -> Vec<PropertyReport> {
    let mut degree = Check::new("degree_is_zero_everywhere");
    let mut stabilizes = Check::new("stabilizes_reference");
    let mut eligible = Check::new("is_eligible");
    for t in 0..trials {
        let mut rng = random::trial_rng(seed, t as u64);
        let scenario = Scenario::EXAMPLES[t % 5];
        let schema = scenario.schema();
        let kind = schema.kind();
        let len = rng.gen_range(1..=6);
        let w = random::window_of_len(&mut rng, kind, len);
        let f = random::block_upper(&mut rng, &schema, w);
        let rlen = rng.gen_range(0..=6);
        let rw = random::window_of_len(&mut rng, kind, rlen);
        let reference = FlagPoint::reference(&schema, rw);
        let size = len + rlen;
        let case =
            || json!({"scenario": scenario.name(), "trial": t, "f": op_doc(&f), "reference_window": rw.bounds()});
        degree.record(f.degree().map(|d| d.is_zero()), size, case);
        stabilizes.record(in_stabilizer(&f, &reference), size, case);
        eligible.record(f.is_eligible(), size, case);
    }
    finish(vec![degree, stabilizes, eligible])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(run_suite("nope", 0, None).is_err());
    }

    #[test]
    fn small_runs_pass_and_repeat() {
        for s in Suite::ALL {
            let a = s.run(3, Some(4));
            assert!(a.passed, "{}", a.to_json());
            assert_eq!(a.to_json(), s.run(3, Some(4)).to_json());
        }
    }
}
