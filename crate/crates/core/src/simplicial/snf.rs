//! Smith normal form over the integers, with arbitrary-precision entries.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| !v[j].is_zero())
                    .map(|j| self.get(i, j) * &v[j])
                    .sum()
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let delta = s * factor;
                self.data[dst * self.cols + j] += delta;
            }
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let delta = s * factor;
                self.data[i * self.cols + dst] += delta;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.data[idx] = -std::mem::take(&mut self.data[idx]);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let idx = i * self.cols + c;
            self.data[idx] = -std::mem::take(&mut self.data[idx]);
        }
    }
}

/// `left * a * right == diagonal`, with `left_inv`, `right_inv` the inverses
/// of the unimodular transforms.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub left: IntMatrix,
    pub left_inv: IntMatrix,
    pub right: IntMatrix,
    pub right_inv: IntMatrix,
    /// Nonzero invariant factors, positive, each dividing the next.
    pub factors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

/// Records elementary operations so that the transforms can be replayed.
struct Transforms {
    left: IntMatrix,
    left_inv: IntMatrix,
    right: IntMatrix,
    right_inv: IntMatrix,
}

enum Op<'a> {
    SwapRows(usize, usize),
    SwapCols(usize, usize),
    AddRow(usize, usize, &'a BigInt),
    AddCol(usize, usize, &'a BigInt),
    NegRow(usize),
}

fn apply(m: &mut IntMatrix, t: &mut Option<Transforms>, op: Op<'_>) {
    match op {
        Op::SwapRows(a, b) => {
            m.swap_rows(a, b);
            if let Some(t) = t {
                t.left.swap_rows(a, b);
                t.left_inv.swap_cols(a, b);
            }
        }
        Op::SwapCols(a, b) => {
            m.swap_cols(a, b);
            if let Some(t) = t {
                t.right.swap_cols(a, b);
                t.right_inv.swap_rows(a, b);
            }
        }
        Op::AddRow(dst, src, f) => {
            m.add_row(dst, src, f);
            if let Some(t) = t {
                t.left.add_row(dst, src, f);
                // (I + f E_{dst,src})^{-1} = I - f E_{dst,src}, applied on the right.
                let neg = -f;
                t.left_inv.add_col(src, dst, &neg);
            }
        }
        Op::AddCol(dst, src, f) => {
            m.add_col(dst, src, f);
            if let Some(t) = t {
                t.right.add_col(dst, src, f);
                let neg = -f;
                t.right_inv.add_row(src, dst, &neg);
            }
        }
        Op::NegRow(r) => {
            m.negate_row(r);
            if let Some(t) = t {
                t.left.negate_row(r);
                t.left_inv.negate_col(r);
            }
        }
    }
}

fn reduce(
    mut m: IntMatrix,
    mut t: Option<Transforms>,
) -> (IntMatrix, Option<Transforms>, Vec<BigInt>) {
    let (rows, cols) = (m.rows, m.cols);
    let mut factors = Vec::new();
    let mut step = 0;
    while step < rows.min(cols) {
        // Pivot: smallest nonzero magnitude in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in step..rows {
            for j in step..cols {
                let v = m.get(i, j);
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < m.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        apply(&mut m, &mut t, Op::SwapRows(step, pi));
        apply(&mut m, &mut t, Op::SwapCols(step, pj));

        loop {
            let mut dirty = false;
            for i in step + 1..rows {
                if m.get(i, step).is_zero() {
                    continue;
                }
                let q = -m.get(i, step).div_floor(m.get(step, step));
                apply(&mut m, &mut t, Op::AddRow(i, step, &q));
                if !m.get(i, step).is_zero() {
                    apply(&mut m, &mut t, Op::SwapRows(step, i));
                    dirty = true;
                }
            }
            for j in step + 1..cols {
                if m.get(step, j).is_zero() {
                    continue;
                }
                let q = -m.get(step, j).div_floor(m.get(step, step));
                apply(&mut m, &mut t, Op::AddCol(j, step, &q));
                if !m.get(step, j).is_zero() {
                    apply(&mut m, &mut t, Op::SwapCols(step, j));
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Divisibility: the pivot must divide the whole trailing block.
            let pivot = m.get(step, step).clone();
            let offender = (step + 1..rows)
                .flat_map(|i| (step + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !m.get(i, j).is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    apply(&mut m, &mut t, Op::AddRow(step, i, &BigInt::one()));
                }
                None => break,
            }
        }
        if m.get(step, step).is_negative() {
            apply(&mut m, &mut t, Op::NegRow(step));
        }
        factors.push(m.get(step, step).clone());
        step += 1;
    }
    (m, t, factors)
}

/// Nonzero invariant factors of `a`.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    reduce(a.clone(), None).2
}

/// Integer matrix stored as sparse rows.
#[derive(Clone, Debug, Default)]
pub struct SparseIntMatrix {
    cols: usize,
    rows: Vec<BTreeMap<usize, BigInt>>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BTreeMap::new(); rows],
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        if v.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, v);
        }
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows.len(), self.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, v) in row {
                m.set(i, j, v.clone());
            }
        }
        m
    }
}

/// Nonzero invariant factors of a sparse matrix. Unit pivots are eliminated
/// in place first; each contributes a factor 1. What remains goes through
/// the dense reduction.
pub fn sparse_invariant_factors(mut a: SparseIntMatrix) -> Vec<BigInt> {
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); a.cols];
    for (i, row) in a.rows.iter().enumerate() {
        for &j in row.keys() {
            col_rows[j].insert(i);
        }
    }
    let mut units = 0;
    loop {
        let mut progress = false;
        for j in 0..a.cols {
            let pivot = col_rows[j]
                .iter()
                .copied()
                .filter(|&r| a.rows[r][&j].abs().is_one())
                .min_by_key(|&r| (a.rows[r].len(), r));
            let Some(p) = pivot else { continue };
            let prow = std::mem::take(&mut a.rows[p]);
            for &c in prow.keys() {
                col_rows[c].remove(&p);
            }
            let sign = &prow[&j];
            let others: Vec<usize> = col_rows[j].iter().copied().collect();
            for r in others {
                let f = &a.rows[r][&j] * sign;
                for (&c, v) in &prow {
                    let entry = a.rows[r].entry(c).or_insert_with(BigInt::zero);
                    *entry -= &f * v;
                    if entry.is_zero() {
                        a.rows[r].remove(&c);
                        col_rows[c].remove(&r);
                    } else {
                        col_rows[c].insert(r);
                    }
                }
            }
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let live_rows: Vec<usize> = (0..a.rows.len())
        .filter(|&i| !a.rows[i].is_empty())
        .collect();
    let live_cols: Vec<usize> = (0..a.cols).filter(|&j| !col_rows[j].is_empty()).collect();
    let col_pos: BTreeMap<usize, usize> =
        live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let mut core = IntMatrix::zeros(live_rows.len(), live_cols.len());
    for (k, &i) in live_rows.iter().enumerate() {
        for (j, v) in &a.rows[i] {
            core.set(k, col_pos[j], v.clone());
        }
    }
    let mut factors = vec![BigInt::one(); units];
    factors.extend(invariant_factors(&core));
    factors
}

pub fn smith_decompose(a: &IntMatrix) -> SmithDecomposition {
    let t = Transforms {
        left: IntMatrix::identity(a.rows),
        left_inv: IntMatrix::identity(a.rows),
        right: IntMatrix::identity(a.cols),
        right_inv: IntMatrix::identity(a.cols),
    };
    let (_, t, factors) = reduce(a.clone(), Some(t));
    let t = t.expect("transforms tracked");
    SmithDecomposition {
        left: t.left,
        left_inv: t.left_inv,
        right: t.right,
        right_inv: t.right_inv,
        factors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diag_of(d: &SmithDecomposition, a: &IntMatrix) -> IntMatrix {
        d.left.mul(a).mul(&d.right)
    }

    #[test]
    fn classic_example() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let f = invariant_factors(&a);
        assert_eq!(f, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn four_cycle_boundary_has_rank_three() {
        // Edges ab, ad, bc, cd over vertices a, b, c, d.
        let a = IntMatrix::from_rows(&[
            vec![-1, -1, 0, 0],
            vec![1, 0, -1, 0],
            vec![0, 0, 1, -1],
            vec![0, 1, 0, 1],
        ]);
        assert_eq!(invariant_factors(&a), vec![BigInt::one(); 3]);
    }

    #[test]
    fn empty_shapes() {
        assert!(invariant_factors(&IntMatrix::zeros(0, 5)).is_empty());
        assert!(invariant_factors(&IntMatrix::zeros(3, 0)).is_empty());
        assert!(invariant_factors(&IntMatrix::zeros(2, 2)).is_empty());
    }

    proptest! {
        #[test]
        fn decomposition_is_consistent(
            rows in 1usize..5,
            cols in 1usize..5,
            seed in proptest::collection::vec(-6i64..7, 25),
        ) {
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|i| (0..cols).map(|j| seed[i * 5 + j]).collect())
                .collect();
            let a = IntMatrix::from_rows(&data);
            let d = smith_decompose(&a);
            let s = diag_of(&d, &a);
            for i in 0..rows {
                for j in 0..cols {
                    let expected = if i == j && i < d.rank() { d.factors[i].clone() } else { BigInt::zero() };
                    prop_assert_eq!(s.get(i, j), &expected);
                }
            }
            for w in d.factors.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            prop_assert_eq!(d.left.mul(&d.left_inv), IntMatrix::identity(rows));
            prop_assert_eq!(d.right.mul(&d.right_inv), IntMatrix::identity(cols));
            prop_assert_eq!(invariant_factors(&a), d.factors);
        }
    }

    proptest! {
        #[test]
        fn sparse_path_matches_dense(
            rows in 1usize..7,
            cols in 1usize..7,
            seed in proptest::collection::vec(-2i64..=2, 49),
        ) {
            let dense = IntMatrix::from_rows(
                &(0..rows).map(|i| seed[i * 7..i * 7 + cols].to_vec()).collect::<Vec<_>>(),
            );
            let mut sparse = SparseIntMatrix::zeros(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    sparse.set(i, j, dense.get(i, j).clone());
                }
            }
            prop_assert_eq!(sparse.to_dense(), dense.clone());
            prop_assert_eq!(sparse_invariant_factors(sparse), invariant_factors(&dense));
        }
    }
}
