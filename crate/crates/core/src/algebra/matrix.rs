//! Dense matrices over a [`Field`] and exact echelon routines over ℚ.
//!
//! Pivoting is always "first nonzero column, smallest row index", so the
//! reduced echelon form and the kernel basis below are canonical.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{primitive_integer_vector, Field, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Exact rational matrix.
pub type QMatrix = Matrix<Rational>;

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Build from row vectors. Every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: Vec<F>) {
        assert_eq!(row.len(), self.cols, "ragged matrix");
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// `row[target] -= factor * row[source]`, touching columns `from..`.
    fn eliminate(&mut self, target: usize, source: usize, factor: &F, from: usize) {
        let cols = self.cols;
        let (t, s) = if target < source {
            let (lo, hi) = self.data.split_at_mut(source * cols);
            (&mut lo[target * cols..(target + 1) * cols], &hi[..cols])
        } else {
            let (lo, hi) = self.data.split_at_mut(target * cols);
            (&mut hi[..cols], &lo[source * cols..(source + 1) * cols])
        };
        for c in from..cols {
            if !s[c].is_zero() {
                t[c].sub_mul_assign(factor, &s[c]);
            }
        }
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        self.echelon(true)
    }

    fn echelon(&mut self, reduced: bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = self.get(r, c).inv();
            if reduced {
                for cc in c..self.cols {
                    let v = self.get(r, cc).mul(&inv);
                    self.set(r, cc, v);
                }
            }
            let start = if reduced { 0 } else { r + 1 };
            for i in start..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let factor = if reduced {
                    self.get(i, c).clone()
                } else {
                    self.get(i, c).mul(&inv)
                };
                self.eliminate(i, r, &factor, c);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Rank by forward elimination.
    pub fn rank(&self) -> usize {
        self.clone().echelon(false).len()
    }

    /// Basis of the right null space: one vector per free column `f`, equal
    /// to `e_f − Σ_i R[i][f] e_{pivot_i}` for the reduced echelon form `R`.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        kernel_from_rref(&m, &pivots, |x| x.clone())
    }

    /// One solution of `self · x = b`, free variables set to zero.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for (r, br) in b.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, br.clone());
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(i, self.cols).clone();
        }
        Some(x)
    }
}

fn kernel_from_rref<F: Field, G: Field>(
    m: &Matrix<G>,
    pivots: &[usize],
    to_field: impl Fn(&G) -> F,
) -> Vec<Vec<F>> {
    let mut is_pivot = vec![false; m.cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for f in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![F::zero(); m.cols];
        v[f] = F::one();
        for (i, &p) in pivots.iter().enumerate() {
            let entry = m.get(i, f);
            if !entry.is_zero() {
                v[p] = to_field(entry).neg();
            }
        }
        out.push(v);
    }
    out
}

// ---------------------------------------------------------------------------
// Exact routines over ℚ. Rows are cleared of denominators and reduced
// fraction-free with content removal, which keeps entries far smaller than
// naive rational elimination.
// ---------------------------------------------------------------------------

fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for v in row.iter() {
        if !v.is_zero() {
            g = g.gcd(v);
            if g == BigInt::from(1) {
                return;
            }
        }
    }
    if g.is_zero() || g == BigInt::from(1) {
        return;
    }
    for v in row.iter_mut() {
        if !v.is_zero() {
            *v /= &g;
        }
    }
}

/// Fraction-free elimination on integer rows. Returns `(row, column)` of
/// each pivot; rows are permuted so pivot `k` sits in row `k`.
fn integer_echelon(rows: &mut [Vec<BigInt>], cols: usize, reduced: bool) -> Vec<usize> {
    let n = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().expect("pivot row present");
        let targets = if reduced {
            head.iter_mut().chain(tail.iter_mut()).collect::<Vec<_>>()
        } else {
            tail.iter_mut().collect::<Vec<_>>()
        };
        let pv = pivot_row[c].clone();
        for row in targets {
            if row[c].is_zero() {
                continue;
            }
            let g = pv.gcd(&row[c]);
            let a = &pv / &g;
            let b = &row[c] / &g;
            // Columns before `c` are zero in the pivot row but must still be
            // scaled in rows above it.
            for cc in 0..cols {
                if pivot_row[cc].is_zero() {
                    if !row[cc].is_zero() && !a.is_one() {
                        row[cc] *= &a;
                    }
                } else {
                    let updated = &row[cc] * &a - &pivot_row[cc] * &b;
                    row[cc] = updated;
                }
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn integer_rows(m: &QMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|r| primitive_integer_vector(m.row(r)))
        .collect()
}

/// Exact reduced row echelon form over ℚ with zero rows dropped.
pub fn rref_exact(m: &QMatrix) -> (QMatrix, Vec<usize>) {
    let mut rows = integer_rows(m);
    let pivots = integer_echelon(&mut rows, m.cols(), true);
    let mut out = QMatrix::zeros(pivots.len(), m.cols());
    for (i, &p) in pivots.iter().enumerate() {
        let mut lead = rows[i][p].clone();
        if lead.is_negative() {
            lead = -lead;
            for v in rows[i].iter_mut() {
                *v = -v.clone();
            }
        }
        for (c, v) in rows[i].iter().enumerate() {
            if !v.is_zero() {
                out.set(i, c, Rational::new(v.clone(), lead.clone()));
            }
        }
    }
    (out, pivots)
}

/// Exact rank over ℚ.
pub fn rank(m: &QMatrix) -> usize {
    let mut rows = integer_rows(m);
    integer_echelon(&mut rows, m.cols(), false).len()
}

/// Exact right null space over ℚ, in the canonical form of [`Matrix::kernel`].
pub fn kernel(m: &QMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref_exact(m);
    kernel_from_rref(&r, &pivots, |x| x.clone())
}

/// Exact solution of `m · x = b` with free variables zero.
pub fn solve_exact(m: &QMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(b.len(), m.rows());
    let mut aug = QMatrix::zeros(m.rows(), m.cols() + 1);
    for (r, br) in b.iter().enumerate() {
        for c in 0..m.cols() {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, m.cols(), br.clone());
    }
    let (red, pivots) = rref_exact(&aug);
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = vec![<Rational as Zero>::zero(); m.cols()];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = red.get(i, m.cols()).clone();
    }
    Some(x)
}

/// Reduce `v` against rows of a matrix in reduced echelon form.
pub fn reduce_against<F: Field>(v: &mut [F], rref_rows: &Matrix<F>, pivots: &[usize]) {
    for (i, &p) in pivots.iter().enumerate() {
        if v[p].is_zero() {
            continue;
        }
        let factor = v[p].clone();
        for (c, entry) in rref_rows.row(i).iter().enumerate().skip(p) {
            if !entry.is_zero() {
                v[c].sub_mul_assign(&factor, entry);
            }
        }
    }
}
