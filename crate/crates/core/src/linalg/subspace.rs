use std::collections::BTreeMap;

use super::sparse::{combine, SparseVec};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Subspace of `k^N` held in reduced row-echelon form.
///
/// Rows are keyed by pivot column; each pivot entry is 1 and every other
/// row vanishes in that column, so equal subspaces have identical data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl SubspaceBasis {
    pub fn new(ambient: usize) -> Self {
        SubspaceBasis {
            ambient,
            rows: BTreeMap::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        SubspaceBasis {
            ambient,
            rows: (0..ambient).map(|i| (i, SparseVec::unit(i))).collect(),
        }
    }

    pub fn from_vectors<I: IntoIterator<Item = SparseVec>>(ambient: usize, vs: I) -> Result<Self> {
        let mut b = SubspaceBasis::new(ambient);
        for v in vs {
            b.try_insert(v)?;
        }
        Ok(b)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    pub fn rows_sorted(&self) -> Vec<SparseVec> {
        self.rows.values().cloned().collect()
    }

    /// Remainder of `v` after elimination against the basis.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let coeffs: Vec<(Scalar, &SparseVec)> = v
            .iter()
            .filter_map(|(i, c)| self.rows.get(i).map(|r| (-c, r)))
            .collect();
        if coeffs.is_empty() {
            return v.clone();
        }
        let one = Scalar::one();
        combine(std::iter::once((&one, v)).chain(coeffs.iter().map(|(c, r)| (c, *r))))
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` with respect to the pivot rows (pivot -> coefficient),
    /// or `None` when `v` is outside the subspace.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<(usize, Scalar)>> {
        if !self.contains(v) {
            return None;
        }
        Some(
            v.iter()
                .filter(|(i, _)| self.rows.contains_key(i))
                .cloned()
                .collect(),
        )
    }

    fn check(&self, v: &SparseVec) -> Result<()> {
        match v.max_index() {
            Some(i) if i >= self.ambient => Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: i + 1,
            }),
            _ => Ok(()),
        }
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn try_insert(&mut self, v: SparseVec) -> Result<bool> {
        self.check(&v)?;
        Ok(self.insert(v))
    }

    /// Adds `v` (indices must be in range); returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(&v);
        if r.is_zero() {
            return false;
        }
        let r = r.normalized();
        let p = r.leading().unwrap().0;
        for row in self.rows.values_mut() {
            if let Some(c) = row.get_ref(p) {
                let c = -c;
                *row = row.axpy(&c, &r);
            }
        }
        self.rows.insert(p, r);
        true
    }

    pub fn extend<I: IntoIterator<Item = SparseVec>>(&mut self, vs: I) -> usize {
        let before = self.dim();
        for v in vs {
            self.insert(v);
        }
        self.dim() - before
    }

    pub fn is_subspace_of(&self, other: &SubspaceBasis) -> bool {
        self.rows.values().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &SubspaceBasis) -> SubspaceBasis {
        let mut s = self.clone();
        s.extend(other.rows.values().cloned());
        s
    }

    /// Intersection via the kernel of `[A; -B]`.
    pub fn intersect(&self, other: &SubspaceBasis) -> SubspaceBasis {
        let a: Vec<SparseVec> = self.rows_sorted();
        let b: Vec<SparseVec> = other.rows_sorted();
        let cols: Vec<SparseVec> = a.iter().cloned().chain(b.iter().map(SparseVec::neg)).collect();
        let ker = kernel_of_columns(&cols);
        let mut out = SubspaceBasis::new(self.ambient);
        for k in ker {
            let v = combine(k.iter().filter(|(i, _)| *i < a.len()).map(|(i, c)| (c, &a[*i])));
            out.insert(v);
        }
        out
    }

    /// Orthogonal complement under the standard bilinear form.
    pub fn annihilator(&self) -> SubspaceBasis {
        let rows = self.rows_sorted();
        let ns = nullspace(&rows, self.ambient);
        SubspaceBasis::from_vectors(self.ambient, ns).expect("in range")
    }
}

/// Elimination that remembers how each reduced vector is built from the
/// original inputs, used for solving `sum c_i v_i = target`.
#[derive(Clone, Debug)]
pub struct TrackedBasis {
    ambient: usize,
    count: usize,
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
    kernel: Vec<SparseVec>,
}

impl TrackedBasis {
    pub fn new(ambient: usize) -> Self {
        TrackedBasis {
            ambient,
            count: 0,
            rows: BTreeMap::new(),
            kernel: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Returns (remainder, combination) with `v - remainder = sum combination_i v_i`.
    fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut vec = v.clone();
        let mut combo = SparseVec::new();
        loop {
            let hit = vec.iter().find_map(|(i, c)| self.rows.get(i).map(|r| (c.clone(), r)));
            match hit {
                None => return (vec, combo),
                Some((c, (row, rc))) => {
                    vec = vec.axpy(&-&c, row);
                    combo = combo.axpy(&c, rc);
                }
            }
        }
    }

    /// Adds the next input vector (index = number of previous pushes).
    pub fn push(&mut self, v: SparseVec) {
        let idx = self.count;
        self.count += 1;
        let (r, combo) = self.reduce(&v);
        // v - r = combo . inputs, so r = v - combo
        let own = SparseVec::unit(idx).sub(&combo);
        if r.is_zero() {
            self.kernel.push(own);
            return;
        }
        let (p, lead) = r.leading().unwrap().clone();
        let inv = lead.inv().expect("nonzero");
        self.rows.insert(p, (r.scale(&inv), own.scale(&inv)));
    }

    /// Basis of linear relations among the inputs.
    pub fn kernel(&self) -> &[SparseVec] {
        &self.kernel
    }

    /// Some `c` with `sum c_i v_i = target`, or `None` if unsolvable.
    pub fn solve(&self, target: &SparseVec) -> Option<SparseVec> {
        let (r, combo) = self.reduce(target);
        if r.is_zero() {
            Some(combo)
        } else {
            None
        }
    }
}

/// Basis of `{c : sum c_i cols_i = 0}`.
pub fn kernel_of_columns(cols: &[SparseVec]) -> Vec<SparseVec> {
    let ambient = cols.iter().filter_map(SparseVec::max_index).max().map_or(0, |m| m + 1);
    let mut t = TrackedBasis::new(ambient);
    for c in cols {
        t.push(c.clone());
    }
    t.kernel
}

/// Basis of `{x in k^ncols : r . x = 0 for all rows r}`, one vector per free column.
pub fn nullspace(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let mut b = SubspaceBasis::new(ncols);
    for r in rows {
        b.insert(r.clone());
    }
    let pivots: Vec<usize> = b.pivots().collect();
    let mut out = Vec::new();
    for free in 0..ncols {
        if b.rows.contains_key(&free) {
            continue;
        }
        let mut pairs = vec![(free, Scalar::one())];
        for &p in &pivots {
            let c = b.rows[&p].get(free);
            if !c.is_zero() {
                pairs.push((p, -c));
            }
        }
        out.push(SparseVec::from_pairs(pairs));
    }
    out
}

/// Solves `sum c_i cols_i = target`; returns one particular solution.
pub fn solve_combination(cols: &[SparseVec], target: &SparseVec) -> Option<SparseVec> {
    let ambient = cols
        .iter()
        .chain(std::iter::once(target))
        .filter_map(SparseVec::max_index)
        .max()
        .map_or(0, |m| m + 1);
    let mut t = TrackedBasis::new(ambient);
    for c in cols {
        t.push(c.clone());
    }
    t.solve(target)
}
