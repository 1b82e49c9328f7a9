//! Exact sparse row reduction over the rationals.
//!
//! Two elimination structures cover every computation in the crate:
//! [`Echelon`] keeps the unique reduced row echelon form of a row space for
//! fast membership, rank and kernel queries; [`TriangularSolver`] keeps an
//! LU-style factorization of the inserted rows, which turns "express this
//! vector over the input rows" (a membership certificate) into one forward
//! pass and one triangular back-conversion. Pivots are always the first
//! nonzero column in the fixed column order, so results are deterministic.

use std::collections::HashMap;

use num_traits::Zero;

use crate::poly::Rational;

fn one() -> Rational {
    Rational::from_integer(1.into())
}

/// Sorted sparse vector without stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new(mut entries: Vec<(usize, Rational)>) -> Self {
        entries.retain(|(_, c)| !c.is_zero());
        entries.sort_by_key(|(i, _)| *i);
        let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(entries.len());
        for (i, c) in entries {
            match merged.last_mut() {
                Some((j, acc)) if *j == i => *acc += c,
                _ => merged.push((i, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        SparseVec { entries: merged }
    }

    pub fn empty() -> Self {
        SparseVec::default()
    }

    pub fn unit(col: usize) -> Self {
        SparseVec {
            entries: vec![(col, one())],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Rational)> {
        self.entries.iter()
    }

    /// Entry in the first (smallest) column: the pivot candidate.
    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn get(&self, col: usize) -> Option<&Rational> {
        self.entries
            .binary_search_by_key(&col, |(i, _)| *i)
            .ok()
            .map(|idx| &self.entries[idx].1)
    }

    pub fn scale(&mut self, factor: &Rational) {
        if factor.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, c) in &mut self.entries {
            *c *= factor;
        }
    }

    /// `self += factor * other`, merging sorted entry lists.
    pub fn axpy(&mut self, factor: &Rational, other: &SparseVec) {
        if factor.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = self.entries.iter();
        let mut b = other.entries.iter();
        let mut next_a = a.next();
        let mut next_b = b.next();
        loop {
            match (next_a, next_b) {
                (Some((ia, ca)), Some((ib, cb))) => {
                    if ia < ib {
                        out.push((*ia, ca.clone()));
                        next_a = a.next();
                    } else if ib < ia {
                        out.push((*ib, cb * factor));
                        next_b = b.next();
                    } else {
                        let c = ca + cb * factor;
                        if !c.is_zero() {
                            out.push((*ia, c));
                        }
                        next_a = a.next();
                        next_b = b.next();
                    }
                }
                (Some((ia, ca)), None) => {
                    out.push((*ia, ca.clone()));
                    next_a = a.next();
                }
                (None, Some((ib, cb))) => {
                    out.push((*ib, cb * factor));
                    next_b = b.next();
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }
}

/// Incremental reduced row echelon form. The RREF is unique for a given row
/// space once the column order is fixed, so bases and ranks are canonical.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Inserts an input row; returns `true` when the rank grew.
    pub fn insert(&mut self, row: SparseVec) -> bool {
        let mut v = row;
        self.eliminate(&mut v);
        let Some((pivot, lead)) = v.leading() else {
            return false;
        };
        let inv = one() / lead.clone();
        v.scale(&inv);
        // clear the new pivot column from the existing basis
        for i in 0..self.rows.len() {
            if let Some(c) = self.rows[i].get(pivot).cloned() {
                let neg = -c;
                self.rows[i].axpy(&neg, &v);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < pivot);
        self.pivots.insert(pos, pivot);
        self.rows.insert(pos, v);
        true
    }

    /// One ascending pass over the pivots fully reduces `v`: subtracting a
    /// pivot row only introduces entries in later columns.
    fn eliminate(&self, v: &mut SparseVec) {
        for i in 0..self.rows.len() {
            let Some(c) = v.get(self.pivots[i]).cloned() else {
                continue;
            };
            let neg = -c;
            v.axpy(&neg, &self.rows[i]);
        }
    }

    /// Remainder of `v` modulo the row space.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        self.eliminate(&mut v);
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// A basis of the kernel of the matrix whose rows were inserted, one
    /// vector per free column, in ascending column order, solved by
    /// back-substitution in descending pivot order.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let mut pivot_flags = vec![false; self.ncols];
        for &p in &self.pivots {
            pivot_flags[p] = true;
        }
        let mut basis = Vec::with_capacity(self.ncols - self.rank());
        for (free, flagged) in pivot_flags.iter().enumerate() {
            if *flagged {
                continue;
            }
            let mut x: HashMap<usize, Rational> = HashMap::new();
            x.insert(free, one());
            for i in (0..self.rows.len()).rev() {
                let p = self.pivots[i];
                let mut s = Rational::zero();
                for (c, coeff) in self.rows[i].iter() {
                    if *c == p {
                        continue;
                    }
                    if let Some(v) = x.get(c) {
                        s += coeff * v;
                    }
                }
                if !s.is_zero() {
                    x.insert(p, -s);
                }
            }
            basis.push(SparseVec::new(x.into_iter().collect()));
        }
        basis
    }
}

/// LU-style factorization of a list of independent rows: each inserted row
/// is forward-eliminated against the immutable triangular rows kept so far,
/// and the elimination steps are recorded. Expressing a vector over the
/// *input* rows then costs one forward pass plus one back-conversion through
/// the recorded history, with no stored combination vectors.
#[derive(Clone, Debug)]
pub struct TriangularSolver {
    ncols: usize,
    /// Immutable echelon rows in insertion order, pivot coefficient 1.
    rows: Vec<SparseVec>,
    /// Pivot column of each row.
    row_pivot: Vec<usize>,
    /// Row ids sorted by pivot column.
    order: Vec<usize>,
    /// `input_i = lead_i * rows_i + sum(c * rows_j)` over the history pairs.
    histories: Vec<(Rational, Vec<(usize, Rational)>)>,
}

impl TriangularSolver {
    pub fn new(ncols: usize) -> Self {
        TriangularSolver {
            ncols,
            rows: Vec::new(),
            row_pivot: Vec::new(),
            order: Vec::new(),
            histories: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts an input row, returning `false` (and recording nothing) when
    /// it is dependent on the rows already inserted.
    pub fn insert(&mut self, row: SparseVec) -> bool {
        let mut v = row;
        let mut history = Vec::new();
        for &id in &self.order {
            let Some(c) = v.get(self.row_pivot[id]).cloned() else {
                continue;
            };
            let neg = -c.clone();
            v.axpy(&neg, &self.rows[id]);
            history.push((id, c));
        }
        let Some((pivot, lead)) = v.leading() else {
            return false;
        };
        let lead = lead.clone();
        let inv = one() / lead.clone();
        v.scale(&inv);
        let id = self.rows.len();
        let pos = self.order.partition_point(|&q| self.row_pivot[q] < pivot);
        self.rows.push(v);
        self.row_pivot.push(pivot);
        self.order.insert(pos, id);
        self.histories.push((lead, history));
        true
    }

    /// Expresses `v` as a combination of the input rows, or `None` when `v`
    /// is outside their span. Entry `i` of the result multiplies the `i`-th
    /// successfully inserted row.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        let mut v = v.clone();
        let mut over_rows: HashMap<usize, Rational> = HashMap::new();
        for &id in &self.order {
            let Some(c) = v.get(self.row_pivot[id]).cloned() else {
                continue;
            };
            let neg = -c.clone();
            v.axpy(&neg, &self.rows[id]);
            *over_rows.entry(id).or_insert_with(Rational::zero) += c;
        }
        if !v.is_zero() {
            return None;
        }
        // substitute rows by inputs in reverse insertion order; histories
        // only reference earlier ids, so one sweep suffices
        let mut over_inputs: Vec<Rational> = vec![Rational::zero(); self.rows.len()];
        let mut pending: Vec<Rational> = vec![Rational::zero(); self.rows.len()];
        for (id, c) in over_rows {
            pending[id] = c;
        }
        for id in (0..self.rows.len()).rev() {
            if pending[id].is_zero() {
                continue;
            }
            let (lead, history) = &self.histories[id];
            let y = &pending[id] / lead;
            for (j, c) in history {
                let adjust = &y * c;
                pending[*j] -= adjust;
            }
            over_inputs[id] = y;
        }
        Some(SparseVec::new(
            over_inputs.into_iter().enumerate().collect(),
        ))
    }
}
