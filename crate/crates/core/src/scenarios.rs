//! Named reference flags with hand-written matrix descriptions of their groups.
//!
//! Each golden predicate reads matrix entries off [`StructuredOperator::apply`] on a
//! band of basis vectors and tests the entry pattern directly, without going through
//! splittings, degrees, or the eligibility predicates.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::operator::{basis_vector, StructuredOperator};
use crate::point::FlagPoint;
use crate::rational::Rational;
use crate::schema::{FlagSchema, IndexKind, Window};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scenario {
    /// One cut between the negative and positive integers.
    Ex2_1,
    /// A cut after every positive integer.
    Ex2_2,
    /// A cut after every integer.
    Ex2_3,
    /// `1 < 2 < ... < -2 < -1` with cuts after the first index and before the last.
    Ex2_4,
    /// `1 < 2 < ... < -2 < -1` with a cut after every index.
    Ex2_5,
    /// Same flag as `Ex2_1`, under the usual name.
    Sato,
}

impl Scenario {
    pub const ALL: [Scenario; 6] =
        [Scenario::Ex2_1, Scenario::Ex2_2, Scenario::Ex2_3, Scenario::Ex2_4, Scenario::Ex2_5, Scenario::Sato];

    /// The five distinct examples, without the alias.
    pub const EXAMPLES: [Scenario; 5] =
        [Scenario::Ex2_1, Scenario::Ex2_2, Scenario::Ex2_3, Scenario::Ex2_4, Scenario::Ex2_5];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Ex2_1 => "ex2_1",
            Scenario::Ex2_2 => "ex2_2",
            Scenario::Ex2_3 => "ex2_3",
            Scenario::Ex2_4 => "ex2_4",
            Scenario::Ex2_5 => "ex2_5",
            Scenario::Sato => "sato",
        }
    }

    pub fn schema(self) -> FlagSchema {
        let s = match self {
            Scenario::Ex2_1 | Scenario::Sato => FlagSchema::finite(IndexKind::SatoSplit, vec![-1]),
            Scenario::Ex2_2 => FlagSchema::every_position(IndexKind::PositiveInts),
            Scenario::Ex2_3 => FlagSchema::every_position(IndexKind::AllInts),
            Scenario::Ex2_4 => FlagSchema::finite(IndexKind::PosThenNeg, vec![1, -2]),
            Scenario::Ex2_5 => FlagSchema::every_position(IndexKind::PosThenNeg),
        };
        s.expect("built-in schemas are valid")
    }

    pub fn default_window(self) -> Window {
        Window::new(self.schema().kind(), -2, 4)
    }

    pub fn reference_point(self, window: Option<Window>) -> FlagPoint {
        FlagPoint::reference(&self.schema(), window.unwrap_or_else(|| self.default_window()))
    }

    /// Whether the reference flag is expected to be symmetric.
    pub fn expected_symmetric(self) -> bool {
        self != Scenario::Ex2_2
    }

    /// Membership in the group described by the scenario's matrix conditions.
    pub fn golden_membership(self, f: &StructuredOperator) -> Result<bool> {
        if f.schema() != &self.schema() {
            return Err(Error::SchemaMismatch);
        }
        let inv = f.inverse();
        let band = Band::around(f);
        let m = band.materialize(f);
        let mi = band.materialize(&inv);
        let kind = f.kind();
        Ok(match self {
            Scenario::Ex2_1 | Scenario::Sato => {
                let split = |i: i64| i < 0;
                [&m, &mi].iter().all(|x| x.rows_finitary_on(split) && x.c_block_finitary(split))
                    && m.c_block(split).rank() == mi.c_block(split).rank()
            }
            Scenario::Ex2_2 => m.finitely_many_below_diagonal(kind),
            Scenario::Ex2_3 => {
                [&m, &mi].iter().all(|x| x.finitely_many_below_diagonal(kind))
                    && band.inner.iter().all(|&n| m.lower_part(kind, n).rank() == mi.lower_part(kind, n).rank())
            }
            Scenario::Ex2_4 => [&m, &mi].iter().all(|x| x.rows_finitary_on(|_| true)),
            Scenario::Ex2_5 => {
                [&m, &mi].iter().all(|x| x.rows_finitary_on(|_| true) && x.finitely_many_below_diagonal(kind))
            }
        })
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scenario::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Document(format!("unknown scenario {s:?}")))
    }
}

/// Basis indices around an operator: an inner part that holds everything
/// non-generic, and a rim on each side where only the tail acts.
struct Band {
    inner: Vec<i64>,
    rim: Vec<i64>,
}

const RIM: i64 = 3;

impl Band {
    fn around(f: &StructuredOperator) -> Band {
        let kind = f.kind();
        let core = f.window().hull(&f.target_window());
        let margin = f.tail_shift().abs() + 2;
        let inner_w = if core.is_empty() { Window::new(kind, -margin, margin) } else { core.widen(kind, margin) };
        let outer_w = inner_w.widen(kind, RIM + f.tail_shift().abs());
        let inner = inner_w.indices(kind);
        let rim = outer_w.indices(kind).into_iter().filter(|i| !inner_w.contains(*i)).collect();
        Band { inner, rim }
    }

    fn materialize(&self, f: &StructuredOperator) -> Entries {
        let mut entries = BTreeMap::new();
        for &j in self.inner.iter().chain(&self.rim) {
            for (i, v) in f.apply(&basis_vector(j)) {
                entries.insert((i, j), v);
            }
        }
        Entries { entries, inner: self.inner.clone(), rim: self.rim.clone() }
    }
}

/// Entries `(row, column) -> value` of the columns in a band.
struct Entries {
    entries: BTreeMap<(i64, i64), Rational>,
    inner: Vec<i64>,
    rim: Vec<i64>,
}

impl Entries {
    /// No rim column has an entry strictly below the diagonal, so only the
    /// finitely many inner columns can.
    fn finitely_many_below_diagonal(&self, kind: IndexKind) -> bool {
        self.entries
            .keys()
            .filter(|(_, j)| self.rim.contains(j))
            .all(|&(i, j)| kind.cmp(i, j) != std::cmp::Ordering::Greater)
    }

    /// Rows among the inner indices (restricted by `rows`) receive nothing from the rim.
    fn rows_finitary_on(&self, rows: impl Fn(i64) -> bool) -> bool {
        self.entries.keys().filter(|(_, j)| self.rim.contains(j)).all(|&(i, _)| !(self.inner.contains(&i) && rows(i)))
    }

    /// Rim columns on the lower side land on the lower side.
    fn c_block_finitary(&self, lower: impl Fn(i64) -> bool) -> bool {
        self.entries.keys().filter(|(_, j)| self.rim.contains(j) && lower(*j)).all(|&(i, _)| lower(i))
    }

    /// Entries with row on the upper side and column on the lower side.
    fn c_block(&self, lower: impl Fn(i64) -> bool) -> DenseMatrix {
        let rows: Vec<i64> = self.row_set().into_iter().filter(|&i| !lower(i)).collect();
        let cols: Vec<i64> = self.inner.iter().chain(&self.rim).copied().filter(|&j| lower(j)).collect();
        self.block(&rows, &cols)
    }

    /// Entries below the diagonal in rows after `n` and columns up to `n`.
    fn lower_part(&self, kind: IndexKind, n: i64) -> DenseMatrix {
        let rows: Vec<i64> = self.row_set().into_iter().filter(|&i| kind.cmp(i, n).is_gt()).collect();
        let cols: Vec<i64> = self.inner.iter().chain(&self.rim).copied().filter(|&j| kind.cmp(j, n).is_le()).collect();
        self.block(&rows, &cols)
    }

    fn row_set(&self) -> Vec<i64> {
        let mut rows: Vec<i64> = self.entries.keys().map(|&(i, _)| i).collect();
        rows.sort_unstable();
        rows.dedup();
        rows
    }

    fn block(&self, rows: &[i64], cols: &[i64]) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(rows.len(), cols.len());
        for (r, i) in rows.iter().enumerate() {
            for (c, j) in cols.iter().enumerate() {
                if let Some(v) = self.entries.get(&(*i, *j)) {
                    m.set(r, c, v.clone());
                }
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Scenario::ALL {
            assert_eq!(s.name().parse::<Scenario>().unwrap(), s);
        }
        assert!("ex9".parse::<Scenario>().is_err());
    }

    #[test]
    fn shift_is_outside_every_golden_group() {
        for s in [Scenario::Sato, Scenario::Ex2_3] {
            let f = StructuredOperator::shift(&s.schema(), 1).unwrap();
            assert!(!s.golden_membership(&f).unwrap(), "{s}");
            let g = StructuredOperator::shift(&s.schema(), -2).unwrap();
            assert!(!s.golden_membership(&g).unwrap(), "{s}");
        }
    }

    #[test]
    fn finite_cycle_is_inside() {
        // e_{-1} -> e_0 -> e_1 -> e_{-1}: its strictly lower parts have ranks 2 and 1,
        // yet it differs from the identity in finitely many places.
        let s = Scenario::Ex2_3;
        let w = Window::new(IndexKind::AllInts, -1, 1);
        let m = DenseMatrix::from_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let f = StructuredOperator::new(s.schema(), w, 0, m).unwrap();
        assert!(s.golden_membership(&f).unwrap());
    }
}
