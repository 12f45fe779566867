//! Exact integer and rational linear algebra on small dense matrices.
//!
//! Everything here is sized for root-datum work (dimension below ~10), so the
//! algorithms are the textbook ones: fraction-free elimination, Smith normal
//! form with transforms, and row-style Hermite reduction.

use num::integer::Integer;
use num::rational::Ratio;
use num::{One, Zero};
use std::fmt;

/// Exact rational scalar used by every solver in this crate.
pub type Rational = Ratio<i128>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|r| self.row(r))).finish()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix row {r}");
            m.data[r * cols..(r + 1) * cols].copy_from_slice(row);
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vec<i64>]) -> Self {
        Self::from_rows(rows, cols).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    out[(r, c)] += a * other[(k, c)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..self.cols).all(|c| self[(r, c)] == i64::from(r == c)))
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> i128 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> =
            (0..n).map(|r| self.row(r).iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&r| a[r][k] != 0) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }

    pub fn rank(&self) -> usize {
        rational_echelon(&to_rational(self)).len()
    }

    /// Exact inverse when the matrix is unimodular.
    pub fn unimodular_inverse(&self) -> Option<IntMatrix> {
        let inv = rational_inverse(self)?;
        let mut out = Self::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let q = inv[r][c];
                if !q.is_integer() {
                    return None;
                }
                out[(r, c)] = *q.numer() as i64;
            }
        }
        Some(out)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (r, c): (usize, usize)) -> &i64 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut i64 {
        &mut self.data[r * self.cols + c]
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_rational(m: &IntMatrix) -> Vec<Vec<Rational>> {
    (0..m.rows)
        .map(|r| m.row(r).iter().map(|&x| Rational::from_integer(x as i128)).collect())
        .collect()
}

/// Reduced row echelon form; returns the nonzero rows only.
fn rational_echelon(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for c in 0..cols {
        let Some(p) = (pivot_row..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, p);
        let inv = a[pivot_row][c].recip();
        for x in a[pivot_row].iter_mut() {
            *x *= inv;
        }
        for r in 0..a.len() {
            if r != pivot_row && !a[r][c].is_zero() {
                let f = a[r][c];
                for k in 0..cols {
                    let v = a[pivot_row][k];
                    a[r][k] -= f * v;
                }
            }
        }
        pivot_row += 1;
    }
    a.truncate(pivot_row);
    a
}

pub fn rational_inverse(m: &IntMatrix) -> Option<Vec<Vec<Rational>>> {
    assert_eq!(m.rows, m.cols, "inverse of a non-square matrix");
    let n = m.rows;
    let mut aug: Vec<Vec<Rational>> = to_rational(m);
    for (r, row) in aug.iter_mut().enumerate() {
        row.extend((0..n).map(|c| Rational::from_integer(i128::from(r == c))));
    }
    let ech = rational_echelon(&aug);
    if ech.len() < n || (0..n).any(|i| ech[i][i] != Rational::one()) {
        return None;
    }
    Some(ech.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Solves `a x = b` over the rationals for a matrix with linearly independent
/// columns. Returns `None` when the system is inconsistent.
pub fn solve_rational(a: &IntMatrix, b: &[i64]) -> Option<Vec<Rational>> {
    assert_eq!(a.rows, b.len());
    let n = a.cols;
    let mut aug = to_rational(a);
    for (row, &v) in aug.iter_mut().zip(b) {
        row.push(Rational::from_integer(v as i128));
    }
    let ech = rational_echelon(&aug);
    let mut x = vec![Rational::zero(); n];
    for row in &ech {
        match row.iter().position(|q| !q.is_zero()) {
            Some(p) if p == n => return None,
            Some(p) => {
                if row[..n].iter().enumerate().any(|(c, q)| c != p && !q.is_zero()) {
                    panic!("solve_rational called with dependent columns");
                }
                x[p] = row[n];
            }
            None => {}
        }
    }
    if ech.iter().filter(|r| r[..n].iter().any(|q| !q.is_zero())).count() < n {
        panic!("solve_rational called with dependent columns");
    }
    Some(x)
}

/// Converts a rational vector to integers when every entry is integral.
pub fn integral(v: &[Rational]) -> Option<Vec<i64>> {
    v.iter()
        .map(|q| q.is_integer().then(|| *q.numer() as i64))
        .collect()
}

/// Smith normal form `u * a * v = diag(d)` with unimodular transforms.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries, each dividing the next; length is the rank.
    pub diagonal: Vec<i64>,
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut s: Vec<Vec<i128>> =
        (0..m).map(|r| a.row(r).iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..m).map(|r| (0..m).map(|c| i128::from(r == c)).collect()).collect();
    let mut v: Vec<Vec<i128>> = (0..n).map(|r| (0..n).map(|c| i128::from(r == c)).collect()).collect();

    let swap_cols = |mat: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        for row in mat.iter_mut() {
            row.swap(i, j);
        }
    };
    // column j += f * column i
    let add_col = |mat: &mut Vec<Vec<i128>>, j: usize, i: usize, f: i128| {
        for row in mat.iter_mut() {
            row[j] += f * row[i];
        }
    };
    // row j += f * row i
    let add_row = |mat: &mut Vec<Vec<i128>>, j: usize, i: usize, f: i128| {
        let src = mat[i].clone();
        for (x, y) in mat[j].iter_mut().zip(src) {
            *x += f * y;
        }
    };

    let mut diagonal = Vec::new();
    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for r in t..m {
                for c in t..n {
                    if s[r][c] != 0 && best.is_none_or(|(br, bc)| s[r][c].abs() < s[br][bc].abs()) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = best else {
                return finish(u, v, diagonal);
            };
            s.swap(t, pr);
            u.swap(t, pr);
            swap_cols(&mut s, t, pc);
            swap_cols(&mut v, t, pc);

            let p = s[t][t];
            let mut clean = true;
            for r in t + 1..m {
                let q = num::Integer::div_floor(&s[r][t], &p);
                if q != 0 {
                    add_row(&mut s, r, t, -q);
                    add_row(&mut u, r, t, -q);
                }
                clean &= s[r][t] == 0;
            }
            for c in t + 1..n {
                let q = num::Integer::div_floor(&s[t][c], &p);
                if q != 0 {
                    add_col(&mut s, c, t, -q);
                    add_col(&mut v, c, t, -q);
                }
                clean &= s[t][c] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility condition on the rest of the block
            let bad = (t + 1..m).find(|&r| (t + 1..n).any(|c| s[r][c] % p != 0));
            if let Some(r) = bad {
                add_row(&mut s, t, r, 1);
                add_row(&mut u, t, r, 1);
                continue;
            }
            break;
        }
        if s[t][t] < 0 {
            for x in s[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        diagonal.push(s[t][t] as i64);
    }
    return finish(u, v, diagonal);

    fn finish(u: Vec<Vec<i128>>, v: Vec<Vec<i128>>, diagonal: Vec<i64>) -> SmithForm {
        let conv = |mat: Vec<Vec<i128>>| {
            let cols = mat.first().map_or(0, Vec::len);
            let rows: Vec<Vec<i64>> =
                mat.into_iter().map(|r| r.into_iter().map(|x| x as i64).collect()).collect();
            IntMatrix::from_rows(cols, &rows)
        };
        SmithForm { u: conv(u), v: conv(v), diagonal }
    }
}

/// A ℤ-basis of the integer kernel `{x : a x = 0}`, one vector per entry.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<i64>> {
    let snf = smith_normal_form(a);
    (snf.diagonal.len()..a.cols).map(|c| snf.v.col(c)).collect()
}

/// Row-style Hermite normal form of the lattice spanned by `generators`.
/// Returns a basis (nonzero rows, upper triangular with positive pivots).
pub fn hermite_basis(dim: usize, generators: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i128>> =
        generators.iter().map(|g| g.iter().map(|&x| x as i128).collect()).collect();
    let mut basis: Vec<Vec<i128>> = Vec::new();
    for c in 0..dim {
        // gcd-combine every row with a nonzero entry in column c
        let mut pivot: Option<Vec<i128>> = None;
        let mut rest = Vec::new();
        for row in rows.drain(..) {
            if row[c] == 0 {
                rest.push(row);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(row),
                Some(p) => {
                    let g = p[c].extended_gcd(&row[c]);
                    let (a, b) = (p[c] / g.gcd, row[c] / g.gcd);
                    let new_p: Vec<i128> = p.iter().zip(&row).map(|(x, y)| g.x * x + g.y * y).collect();
                    let killed: Vec<i128> = p.iter().zip(&row).map(|(x, y)| a * y - b * x).collect();
                    debug_assert_eq!(killed[c], 0);
                    rest.push(killed);
                    pivot = Some(new_p);
                }
            }
        }
        rows = rest;
        if let Some(mut p) = pivot {
            if p[c] < 0 {
                p.iter_mut().for_each(|x| *x = -*x);
            }
            basis.push(p);
        }
    }
    // reduce entries above pivots
    for i in 0..basis.len() {
        let pc = basis[i].iter().position(|&x| x != 0).unwrap();
        for j in 0..i {
            let q = num::Integer::div_floor(&basis[j][pc], &basis[i][pc]);
            if q != 0 {
                let src = basis[i].clone();
                for (x, y) in basis[j].iter_mut().zip(src) {
                    *x -= q * y;
                }
            }
        }
    }
    basis.into_iter().map(|r| r.into_iter().map(|x| x as i64).collect()).collect()
}

/// Absolute index of the sublattice spanned by `generators` inside `ℤ^dim`,
/// or `None` when the span has lower rank.
pub fn sublattice_index(dim: usize, generators: &[Vec<i64>]) -> Option<u64> {
    let basis = hermite_basis(dim, generators);
    if basis.len() < dim {
        return None;
    }
    Some(IntMatrix::from_rows(dim, &basis).det().unsigned_abs() as u64)
}

pub fn gcd_all(values: impl IntoIterator<Item = i64>) -> i64 {
    values.into_iter().fold(0i64, |g, x| g.gcd(&x))
}

/// Multiplicative inverse of `a` modulo `m`, when it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let g = a.extended_gcd(&m);
    (g.gcd.abs() == 1).then(|| (g.x * g.gcd).rem_euclid(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_smith(a: &IntMatrix) {
        let s = smith_normal_form(a);
        let d = s.u.mul(a).mul(&s.v);
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                let expect = if r == c && r < s.diagonal.len() { s.diagonal[r] } else { 0 };
                assert_eq!(d[(r, c)], expect, "{a:?} -> {d:?}");
            }
        }
        for w in s.diagonal.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        assert_eq!(s.u.det().abs(), 1);
        assert_eq!(s.v.det().abs(), 1);
    }

    #[test]
    fn smith_of_a3_cartan() {
        let a = IntMatrix::from_rows(3, &[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        check_smith(&a);
        assert_eq!(smith_normal_form(&a).diagonal, vec![1, 1, 4]);
    }

    #[test]
    fn smith_rectangular_and_degenerate() {
        check_smith(&IntMatrix::from_rows(2, &[vec![2, 4], vec![6, 8], vec![10, 12]]));
        check_smith(&IntMatrix::from_rows(3, &[vec![0, 0, 0], vec![0, 6, 0]]));
        check_smith(&IntMatrix::zeros(2, 3));
        let s = smith_normal_form(&IntMatrix::from_rows(2, &[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal, vec![1, 6]);
    }

    #[test]
    fn determinant_and_inverse() {
        let a = IntMatrix::from_rows(3, &[vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 0]]);
        assert_eq!(a.det(), 1);
        let inv = a.unimodular_inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        let b = IntMatrix::from_rows(2, &[vec![2, 0], vec![0, 1]]);
        assert!(b.unimodular_inverse().is_none());
        assert_eq!(IntMatrix::identity(0).det(), 1);
    }

    #[test]
    fn kernel_and_hermite() {
        let a = IntMatrix::from_rows(3, &[vec![1, -1, 0], vec![0, 1, -1]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1, 1, 1]);
        let h = hermite_basis(2, &[vec![2, 0], vec![0, 2], vec![1, 1]]);
        assert_eq!(IntMatrix::from_rows(2, &h).det().abs(), 2);
        assert_eq!(sublattice_index(2, &[vec![2, 0], vec![0, 2], vec![1, 1]]), Some(2));
        assert_eq!(sublattice_index(2, &[vec![1, 1]]), None);
    }

    #[test]
    fn rational_solve() {
        let a = IntMatrix::from_cols(3, &[vec![1, -1, 0], vec![0, 1, -1]]);
        let x = solve_rational(&a, &[1, 1, -2]).unwrap();
        assert_eq!(integral(&x), Some(vec![1, 2]));
        assert!(solve_rational(&a, &[1, 0, 0]).is_none());
        assert_eq!(mod_inverse(3, 4), Some(3));
        assert_eq!(mod_inverse(2, 4), None);
    }
}
