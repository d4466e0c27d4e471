//! Dense matrices over the rationals with exact rank, kernel and solve.
//!
//! Elimination is fraction-free (Bareiss): rows are scaled to integers and
//! the Schur-complement updates divide by the previous pivot, which is exact
//! and keeps intermediate entries polynomially bounded.
//!
//! [`KernelBuilder`] handles the large, very redundant row streams that the
//! cochain complexes produce: it maintains the null space of the rows seen so
//! far, so a row already implied by its predecessors costs only a few sparse
//! dot products.

use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols));
        QMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Rational) {
        let e = &mut self.data[r * self.cols + c];
        *e += v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn matmul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if !b.is_zero() {
                        let prod = a * b;
                        out.add_at(r, c, &prod);
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let mut t = Rational::zero();
        for i in 0..self.rows {
            t += self.at(i, i);
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for c in 0..self.cols {
                    let a = self.at(r, c);
                    if !a.is_zero() && !v[c].is_zero() {
                        let p = a * &v[c];
                        acc += &p;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows)
            .all(|r| (0..self.cols).all(|c| r == c || self.at(r, c).is_zero()))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..r).all(|c| self.at(r, c) == self.at(c, r)))
    }

    /// Exact rank and a basis of the right null space, `A v = 0`.
    ///
    /// Kernel vectors are primitive integer vectors (content removed).
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<Rational>>) {
        let (echelon, pivot_cols) = self.bareiss_echelon();
        let rank = pivot_cols.len();
        let mut kernel = Vec::with_capacity(self.cols - rank);
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &c in &pivot_cols {
                s[c] = true;
            }
            s
        };
        for fc in 0..self.cols {
            if pivot_set[fc] {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[fc] = Rational::one();
            // back-substitute through the echelon rows, bottom up
            for i in (0..rank).rev() {
                let p = pivot_cols[i];
                let mut acc = Rational::zero();
                for j in (p + 1)..self.cols {
                    if !echelon[i][j].is_zero() && !v[j].is_zero() {
                        let t = &echelon[i][j] * &v[j];
                        acc += &t;
                    }
                }
                if !acc.is_zero() {
                    v[p] = -(&acc / &echelon[i][p]);
                }
            }
            normalize_primitive(&mut v);
            kernel.push(v);
        }
        (rank, kernel)
    }

    pub fn rank(&self) -> usize {
        self.bareiss_echelon().1.len()
    }

    /// Determinant of a square matrix, by fraction-free elimination.
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rational::one();
        }
        let mut m: Vec<Vec<Rational>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        // scale rows to integers, remembering the factors
        let mut scale = Rational::one();
        for row in &mut m {
            let f = integer_scale(row);
            scale = &scale * &f;
        }
        let mut prev = Rational::one();
        let mut sign = 1i64;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return Rational::zero();
            };
            if pr != c {
                m.swap(pr, c);
                sign = -sign;
            }
            for i in (c + 1)..n {
                for j in (c + 1)..n {
                    let t = &(&m[c][c] * &m[i][j]) - &(&m[i][c] * &m[c][j]);
                    m[i][j] = &t / &prev;
                }
                m[i][c] = Rational::zero();
            }
            prev = m[c][c].clone();
        }
        &(&prev * &Rational::from_int(sign)) / &scale
    }

    /// One exact solution of `A x = b`, if the system is consistent.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "dimension mismatch");
        let mut m: Vec<Vec<Rational>> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(b[r].clone());
                row
            })
            .collect();
        let cols = self.cols;
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, pr);
            let inv = m[r][c].recip();
            for j in c..=cols {
                m[r][j] = &m[r][j] * &inv;
            }
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in c..=cols {
                        let t = &f * &m[r][j];
                        m[i][j] = &m[i][j] - &t;
                    }
                }
            }
            pivots.push((r, c));
            r += 1;
            if r == m.len() {
                break;
            }
        }
        // inconsistent if any zero row has nonzero rhs
        for i in r..m.len() {
            if !m[i][cols].is_zero() {
                return None;
            }
        }
        let mut x = vec![Rational::zero(); cols];
        for &(pr, pc) in &pivots {
            x[pc] = m[pr][cols].clone();
        }
        Some(x)
    }

    fn bareiss_echelon(&self) -> (Vec<Vec<Rational>>, Vec<usize>) {
        let mut m: Vec<Vec<Rational>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        for row in &mut m {
            integer_scale(row);
        }
        let mut pivot_cols = Vec::new();
        let mut prev = Rational::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, pr);
            for i in (r + 1)..self.rows {
                for j in (c + 1)..self.cols {
                    let t = &(&m[r][c] * &m[i][j]) - &(&m[i][c] * &m[r][j]);
                    m[i][j] = &t / &prev;
                }
                m[i][c] = Rational::zero();
            }
            prev = m[r][c].clone();
            pivot_cols.push(c);
            r += 1;
        }
        (m, pivot_cols)
    }
}

impl std::fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.at(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Scale `row` by the lcm of its denominators so all entries are integers;
/// returns the factor used.
fn integer_scale(row: &mut [Rational]) -> Rational {
    let mut lcm = num_bigint::BigInt::from(1);
    for x in row.iter() {
        if !x.is_zero() {
            let d = x.denom();
            lcm = num_integer::lcm(lcm, d);
        }
    }
    if lcm == num_bigint::BigInt::from(1) {
        return Rational::one();
    }
    let f = Rational::from_big_rational(num_rational::BigRational::from_integer(lcm));
    for x in row.iter_mut() {
        *x = &*x * &f;
    }
    f
}

/// Scale a rational vector to a primitive integer vector: clear
/// denominators, then divide by the gcd of the numerators. Signs are
/// preserved.
pub fn normalize_primitive(v: &mut [Rational]) {
    // fast path: every entry fits in i64
    'small: {
        let mut lcm: i64 = 1;
        let mut gcd: i64 = 0;
        for x in v.iter() {
            let Some((n, d)) = x.as_i64_pair() else {
                break 'small;
            };
            if n == 0 {
                continue;
            }
            let g = gcd_pair(lcm, d);
            let Some(l) = (lcm / g).checked_mul(d) else {
                break 'small;
            };
            lcm = l;
            gcd = gcd_pair(gcd, n);
        }
        if gcd == 0 {
            return;
        }
        let mut scaled = Vec::with_capacity(v.len());
        for x in v.iter() {
            let (n, d) = x.as_i64_pair().expect("checked above");
            // n/d * lcm is integral; divide out the common content
            let Some(num) = n.checked_mul(lcm / d) else {
                break 'small;
            };
            scaled.push(num);
        }
        let mut content = 0i64;
        for &n in &scaled {
            content = gcd_pair(content, n);
        }
        if content > 1 {
            for n in scaled.iter_mut() {
                *n /= content;
            }
        }
        for (x, n) in v.iter_mut().zip(scaled) {
            *x = Rational::from_int(n);
        }
        return;
    }
    integer_scale(v);
    let mut g = num_bigint::BigInt::from(0);
    for x in v.iter() {
        if !x.is_zero() {
            g = num_integer::Integer::gcd(&g, &x.numer());
        }
    }
    if g > num_bigint::BigInt::from(1) {
        let inv = Rational::from_big_rational(num_rational::BigRational::from_integer(g)).recip();
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
    }
}

fn gcd_pair(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

/// Row-reduced span of a growing set of vectors, with membership tests.
#[derive(Clone)]
pub struct Span {
    ncols: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new(ncols: usize) -> Self {
        Span {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Residual of `v` after reduction against the current basis.
    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ncols, "dimension mismatch");
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let f = w[p].clone();
                for (x, y) in w.iter_mut().zip(row.iter()) {
                    if !y.is_zero() {
                        let t = &f * y;
                        *x -= &t;
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Rational::is_zero)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        // eliminate the new pivot column from the existing rows
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(w.iter()) {
                    if !y.is_zero() {
                        let t = &f * y;
                        *x -= &t;
                    }
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }
}

/// Like [`Span`] but remembers how each reduced row was formed, so members
/// can be expressed as exact linear combinations of the inserted generators.
pub struct SpanSolver {
    ncols: usize,
    rows: Vec<Vec<Rational>>,
    coords: Vec<Vec<Rational>>, // rows[i] = sum_g coords[i][g] * generator_g
    pivots: Vec<usize>,
    ngens: usize,
}

impl SpanSolver {
    pub fn new(ncols: usize) -> Self {
        SpanSolver {
            ncols,
            rows: Vec::new(),
            coords: Vec::new(),
            pivots: Vec::new(),
            ngens: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce_tracked(&self, v: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut w = v.to_vec();
        let mut c = vec![Rational::zero(); self.ngens];
        for i in 0..self.rows.len() {
            let p = self.pivots[i];
            if !w[p].is_zero() {
                let f = w[p].clone();
                for (x, y) in w.iter_mut().zip(self.rows[i].iter()) {
                    if !y.is_zero() {
                        let t = &f * y;
                        *x -= &t;
                    }
                }
                for (x, y) in c.iter_mut().zip(self.coords[i].iter()) {
                    if !y.is_zero() {
                        let t = &f * y;
                        *x += &t;
                    }
                }
            }
        }
        (w, c)
    }

    /// Inserts a generator; returns whether the span grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ncols, "dimension mismatch");
        self.ngens += 1;
        for c in self.coords.iter_mut() {
            c.push(Rational::zero());
        }
        let (mut w, neg_c) = self.reduce_tracked(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        // v = sum neg_c_g gen_g + w  =>  w = v - sum neg_c_g gen_g
        let mut c: Vec<Rational> = neg_c.iter().map(|x| -x).collect();
        c[self.ngens - 1] = Rational::one();
        let inv = w[p].recip();
        for x in w.iter_mut() {
            *x = &*x * &inv;
        }
        for x in c.iter_mut() {
            *x = &*x * &inv;
        }
        self.rows.push(w);
        self.coords.push(c);
        self.pivots.push(p);
        true
    }

    /// Coordinates of `v` over the inserted generators, if `v` is in the span.
    pub fn solve(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let (w, c) = self.reduce_tracked(v);
        if w.iter().all(Rational::is_zero) {
            Some(c)
        } else {
            None
        }
    }
}

/// Incremental null-space tracker for a stream of rows.
///
/// Invariant: `kernel` is a basis of the exact null space of every row pushed
/// so far. A row orthogonal to the whole basis lies in the span of earlier
/// rows and is discarded without any elimination work.
pub struct KernelBuilder {
    ncols: usize,
    rank: usize,
    kernel: Vec<Vec<Rational>>,
}

impl KernelBuilder {
    pub fn new(ncols: usize) -> Self {
        let kernel = (0..ncols)
            .map(|i| {
                let mut v = vec![Rational::zero(); ncols];
                v[i] = Rational::one();
                v
            })
            .collect();
        KernelBuilder {
            ncols,
            rank: 0,
            kernel,
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nullity(&self) -> usize {
        self.kernel.len()
    }

    pub fn push_sparse(&mut self, row: &[(usize, Rational)]) {
        if row.is_empty() {
            return;
        }
        let dots: Vec<Rational> = self
            .kernel
            .iter()
            .map(|k| {
                let mut acc = Rational::zero();
                for (idx, coeff) in row {
                    if !k[*idx].is_zero() {
                        let t = coeff * &k[*idx];
                        acc += &t;
                    }
                }
                acc
            })
            .collect();
        self.shrink(dots);
    }

    pub fn push_dense(&mut self, row: &[Rational]) {
        assert_eq!(row.len(), self.ncols, "dimension mismatch");
        let sparse: Vec<(usize, Rational)> = row
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect();
        self.push_sparse(&sparse);
    }

    fn shrink(&mut self, dots: Vec<Rational>) {
        // pivot on a unit dot when one exists, to keep updates cheap
        let pivot = dots
            .iter()
            .position(|d| d.abs().is_one())
            .or_else(|| dots.iter().position(|d| !d.is_zero()));
        let Some(p) = pivot else {
            return; // row already implied
        };
        let kp = self.kernel.swap_remove(p);
        let dp = dots[p].clone();
        let mut dots = dots;
        dots.swap_remove(p);
        for (k, d) in self.kernel.iter_mut().zip(dots.iter()) {
            if d.is_zero() {
                continue;
            }
            // k := dp * k - d * kp, then strip content
            for (x, y) in k.iter_mut().zip(kp.iter()) {
                let a = &dp * x;
                let b = d * y;
                *x = &a - &b;
            }
            normalize_primitive(k);
        }
        self.rank += 1;
    }

    /// Dot products of a sparse row with every current kernel vector;
    /// all zero means the row adds no constraint.
    pub fn annihilates(&self, row: &[(usize, Rational)]) -> bool {
        self.kernel.iter().all(|k| {
            let mut acc = Rational::zero();
            for (idx, coeff) in row {
                if !k[*idx].is_zero() {
                    let t = coeff * &k[*idx];
                    acc += &t;
                }
            }
            acc.is_zero()
        })
    }

    pub fn into_kernel(self) -> Vec<Vec<Rational>> {
        self.kernel
    }

    pub fn kernel(&self) -> &[Vec<Rational>] {
        &self.kernel
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn identity_has_full_rank() {
        let m = QMatrix::identity(2);
        let (rank, kernel) = m.rank_kernel();
        assert_eq!(rank, 2);
        assert!(kernel.is_empty());
    }

    #[test]
    fn proportional_rows() {
        let m = QMatrix::from_rows(vec![vec![r(1), r(2)], vec![r(2), r(4)]]);
        let (rank, kernel) = m.rank_kernel();
        assert_eq!(rank, 1);
        assert_eq!(kernel.len(), 1);
        assert_eq!(kernel[0], vec![r(-2), r(1)]);
    }

    #[test]
    fn zero_matrix_kernel_is_standard_basis() {
        let m = QMatrix::zeros(3, 3);
        let (rank, kernel) = m.rank_kernel();
        assert_eq!(rank, 0);
        assert_eq!(kernel.len(), 3);
        for (i, v) in kernel.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(x, &r((i == j) as i64));
            }
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = QMatrix::from_rows(vec![vec![r(1), r(2)], vec![r(2), r(4)]]);
        let x = m.solve(&[r(3), r(6)]).expect("consistent");
        assert_eq!(m.mul_vec(&x), vec![r(3), r(6)]);
        assert!(m.solve(&[r(3), r(7)]).is_none());
    }

    #[test]
    fn det_small() {
        let m = QMatrix::from_rows(vec![
            vec![Rational::new(1, 2), r(2)],
            vec![r(3), r(4)],
        ]);
        assert_eq!(m.det(), Rational::new(-4, 1));
    }

    fn small_matrix() -> impl Strategy<Value = QMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(rows, cols)| {
            proptest::collection::vec(
                proptest::collection::vec((-5i64..=5, 1i64..=3), cols),
                rows,
            )
            .prop_map(|rows| {
                QMatrix::from_rows(
                    rows.into_iter()
                        .map(|r| r.into_iter().map(|(n, d)| Rational::new(n, d)).collect())
                        .collect(),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_exact_and_rank_nullity_adds_up(m in small_matrix()) {
            let (rank, kernel) = m.rank_kernel();
            prop_assert_eq!(rank + kernel.len(), m.cols());
            for v in &kernel {
                let image = m.mul_vec(v);
                prop_assert!(image.iter().all(Rational::is_zero));
            }
        }

        #[test]
        fn streaming_kernel_matches_bareiss(m in small_matrix()) {
            let (rank, kernel) = m.rank_kernel();
            let mut kb = KernelBuilder::new(m.cols());
            for rr in 0..m.rows() {
                kb.push_dense(m.row(rr));
            }
            prop_assert_eq!(kb.rank(), rank);
            prop_assert_eq!(kb.nullity(), kernel.len());
            for v in kb.kernel() {
                let image = m.mul_vec(v);
                prop_assert!(image.iter().all(Rational::is_zero));
            }
        }
    }
}
