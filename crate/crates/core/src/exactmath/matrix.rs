//! Dense matrices over a [`Field`], Gaussian elimination, and subspaces.

use super::field::Field;
use super::MathError;

#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> DenseMatrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, entries: Vec<F::Elem>) -> Result<Self, MathError> {
        if entries.len() != rows * cols {
            return Err(MathError::ShapeMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|e| !field.is_valid(e)) {
            return Err(MathError::InvalidElement(format!("{bad:?}")));
        }
        Ok(DenseMatrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let entries = vec![field.zero(); rows * cols];
        DenseMatrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = m.field.one();
        }
        m
    }

    pub fn from_rows(field: F, cols: usize, rows: &[Vec<F::Elem>]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            entries.extend(r.iter().cloned());
        }
        DenseMatrix {
            field,
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn from_columns(field: F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, v) in c.iter().enumerate() {
                m.entries[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    /// Builds a matrix over `Q` or `F_p` from small integers.
    pub fn from_i64(field: F, rows: usize, cols: usize, values: &[i64]) -> Result<Self, MathError> {
        let entries = values.iter().map(|v| field.from_i64(*v)).collect();
        Self::new(field, rows, cols, entries)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                let orow = other.row(k);
                let base = i * other.cols;
                for (j, b) in orow.iter().enumerate() {
                    if !f.is_zero(b) {
                        out.entries[base + j] = f.mul_add(&out.entries[base + j], a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(f.zero(), |acc, (a, b)| {
                    if f.is_zero(a) || f.is_zero(b) {
                        acc
                    } else {
                        f.mul_add(&acc, a, b)
                    }
                })
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        DenseMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let entries = self.entries.iter().map(|a| self.field.mul(a, c)).collect();
        DenseMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.entries.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..cols {
                    let pv = self.get(r, j);
                    if f.is_zero(pv) {
                        continue;
                    }
                    let v = f.sub(self.get(i, j), &f.mul(&factor, pv));
                    self.entries[i * cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Rank and a basis of the right kernel `{v : M v = 0}`.
    ///
    /// The basis is read off the reduced row echelon form, one vector per
    /// free column, so it depends only on the row space of `M`.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<F::Elem>>) {
        let f = &self.field;
        let mut r = self.clone();
        let pivots = r.rref_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let kernel = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![f.zero(); self.cols];
                v[free] = f.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(r.get(i, free));
                }
                v
            })
            .collect();
        (pivots.len(), kernel)
    }

    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        self.rank_kernel().1
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let solver = LinearSolver::new(self);
        if solver.rank() != self.rows {
            return None;
        }
        let n = self.rows;
        let columns: Vec<Vec<F::Elem>> = (0..n)
            .map(|j| {
                let mut e = vec![self.field.zero(); n];
                e[j] = self.field.one();
                solver.solve(&e).expect("invertible")
            })
            .collect();
        Some(Self::from_columns(self.field.clone(), n, &columns))
    }
}

/// Precomputed elimination for repeated solves of `A x = b`.
#[derive(Clone, Debug)]
pub struct LinearSolver<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    /// Reduced row echelon form of `A`, only the first `rank` rows.
    reduced: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    /// `T` with `T A = R`.
    transform: DenseMatrix<F>,
}

impl<F: Field> LinearSolver<F> {
    pub fn new(a: &DenseMatrix<F>) -> Self {
        let f = a.field().clone();
        let (rows, cols) = (a.rows(), a.cols());
        let mut aug = DenseMatrix::zeros(f.clone(), rows, cols + rows);
        for i in 0..rows {
            for j in 0..cols {
                aug.set(i, j, a.get(i, j).clone());
            }
            aug.set(i, cols + i, f.one());
        }
        // eliminate on the A-part only: pivots restricted to columns < cols
        let pivots = rref_restricted(&mut aug, cols);
        let reduced = (0..pivots.len()).map(|i| aug.row(i)[..cols].to_vec()).collect();
        let mut transform = DenseMatrix::zeros(f.clone(), rows, rows);
        for i in 0..rows {
            for j in 0..rows {
                transform.set(i, j, aug.get(i, cols + j).clone());
            }
        }
        LinearSolver {
            field: f,
            rows,
            cols,
            reduced,
            pivots,
            transform,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// A particular solution, or `None` if `b` is outside the column space.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let f = &self.field;
        let c = self.transform.mul_vec(b);
        if c[self.rank()..].iter().any(|v| !f.is_zero(v)) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &p) in self.pivots.iter().enumerate() {
            x[p] = c[i].clone();
        }
        Some(x)
    }

    pub fn reduced_rows(&self) -> &[Vec<F::Elem>] {
        &self.reduced
    }
}

fn rref_restricted<F: Field>(m: &mut DenseMatrix<F>, pivot_cols: usize) -> Vec<usize> {
    let f = m.field().clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(m.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.entries.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
        for j in 0..cols {
            let v = f.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        let pivot_row: Vec<F::Elem> = m.row(r).to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c).clone();
            if f.is_zero(&factor) {
                continue;
            }
            for (j, pv) in pivot_row.iter().enumerate() {
                if !f.is_zero(pv) {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, pv));
                    m.set(i, j, v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A subspace of `F^n` held as a reduced echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    /// Echelon rows, each normalized to 1 at its pivot and zero at the
    /// pivots of the other rows.
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn new(field: F, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn spanned_by<'a, I>(field: F, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a Vec<F::Elem>>,
        F::Elem: 'a,
    {
        let mut s = Self::new(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    /// `v` minus its projection along the echelon basis.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (j, r) in row.iter().enumerate() {
                if !f.is_zero(r) {
                    w[j] = f.sub(&w[j], &f.mul(&c, r));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v`; returns `true` if the dimension grew.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let f = self.field.clone();
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&w[p]).expect("nonzero");
        for x in w.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // keep the basis fully reduced at the new pivot
        for row in self.rows.iter_mut() {
            let c = row[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (j, x) in w.iter().enumerate() {
                if !f.is_zero(x) {
                    row[j] = f.sub(&row[j], &f.mul(&c, x));
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }
}
