//! Exact dense linear algebra over the rationals.
//!
//! Everything downstream (radicals, Hom spaces, balanced tensor products,
//! quotient algebras) reduces to row reduction of [`Matrix`] values whose
//! entries are arbitrary-precision rationals. There is no floating point here.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar; always stored in lowest terms with positive denominator.
pub type Scalar = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },
    #[error("cannot parse scalar {0:?}")]
    BadScalar(String),
}

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_scalar(text: &str) -> Result<Scalar, LinAlgError> {
    let text = text.trim();
    let bad = || LinAlgError::BadScalar(text.to_string());
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(p, q))
        }
        None => {
            let p: BigInt = text.parse().map_err(|_| bad())?;
            Ok(Scalar::from_integer(p))
        }
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn zero_vec(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: zero_vec(rows * cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, LinAlgError> {
        if data.len() != rows * cols {
            return Err(LinAlgError::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                found: format!("{} entries", data.len()),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self, LinAlgError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinAlgError::DimensionMismatch {
                    expected: format!("row of length {cols}"),
                    found: format!("row of length {}", row.len()),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                r.iter().map(|&x| int(x))
            })
            .collect();
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .fold(Scalar::zero(), |a, b| a + b)
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch {
                expected: format!("{} rows", self.cols),
                found: format!("{} rows", other.rows),
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Panics on shape mismatch; use [`Matrix::try_mul`] for checked products.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.try_mul(other).expect("matrix product shape mismatch")
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Reduced row-echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let x = m.get(r, j) * &inv;
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let x = m.get(r, j);
                    if !x.is_zero() {
                        let y = x * &f;
                        *m.entry_mut(i, j) -= y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            reduced: m,
            rank: pivots.len(),
            pivots,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let Rref {
            reduced, pivots, ..
        } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = unit_vec(self.cols, f);
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self * x = rhs`, or `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinAlgError> {
        if rhs.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch {
                expected: format!("rhs of length {}", self.rows),
                found: format!("rhs of length {}", rhs.len()),
            });
        }
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let Rref {
            reduced, pivots, ..
        } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = zero_vec(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = reduced.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Two-sided inverse, or `None` when singular or not square.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one());
        }
        let r = aug.rref();
        if r.pivots.iter().take_while(|&&p| p < n).count() < n {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.reduced.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A subspace of `k^n` kept in reduced echelon form.
///
/// The basis vectors are the rows of the reduced echelon form, so the
/// coordinates of a member are simply its entries at the pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| unit_vec(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let m = Matrix::from_rows(ambient, vectors.to_vec()).expect("vector length mismatch");
        let Rref {
            reduced,
            rank,
            pivots,
        } = m.rref();
        Subspace {
            ambient,
            basis: (0..rank).map(|i| reduced.row(i).to_vec()).collect(),
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its echelon reduction against this subspace.
    pub fn residual(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let c = -w[p].clone();
                axpy(&mut w, &c, row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.residual(v))
    }

    /// Coordinates with respect to [`Subspace::basis`], or `None` if `v` is outside.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn from_coords(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut v = zero_vec(self.ambient);
        for (c, row) in coords.iter().zip(&self.basis) {
            axpy(&mut v, c, row);
        }
        v
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &all)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // x = Σ a_i s_i = Σ b_j o_j  ⇔  [S | -O] (a,b) = 0
        let n = self.dim() + other.dim();
        if n == 0 {
            return Subspace::zero(self.ambient);
        }
        let mut cols: Vec<Vec<Scalar>> = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
        let m = Matrix::from_columns(self.ambient, &cols);
        let vecs: Vec<Vec<Scalar>> = m
            .nullspace()
            .into_iter()
            .map(|sol| self.from_coords(&sol[..self.dim()]))
            .collect();
        Subspace::span(self.ambient, &vecs)
    }

    /// Image of the subspace under a linear map.
    pub fn image(&self, map: &Matrix) -> Subspace {
        let vecs: Vec<Vec<Scalar>> = self.basis.iter().map(|v| map.mul_vec(v)).collect();
        Subspace::span(map.rows(), &vecs)
    }
}

/// Quotient `k^n / R` with basis the images of the standard vectors at the
/// non-pivot columns of `R`'s echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    relations: Subspace,
    basis_columns: Vec<usize>,
}

impl Quotient {
    pub fn new(relations: Subspace) -> Self {
        let mut is_pivot = vec![false; relations.ambient()];
        for &p in relations.pivots() {
            is_pivot[p] = true;
        }
        let basis_columns = (0..relations.ambient()).filter(|&c| !is_pivot[c]).collect();
        Quotient {
            relations,
            basis_columns,
        }
    }

    pub fn by_span(ambient: usize, relations: &[Vec<Scalar>]) -> Self {
        Self::new(Subspace::span(ambient, relations))
    }

    pub fn dim(&self) -> usize {
        self.basis_columns.len()
    }

    pub fn ambient(&self) -> usize {
        self.relations.ambient()
    }

    /// Ambient indices whose images form the quotient basis.
    pub fn basis_columns(&self) -> &[usize] {
        &self.basis_columns
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// Quotient coordinates of an ambient vector.
    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        let w = self.relations.residual(v);
        self.basis_columns.iter().map(|&c| w[c].clone()).collect()
    }

    /// Canonical representative of a quotient vector.
    pub fn lift(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut v = zero_vec(self.ambient());
        for (c, &col) in coords.iter().zip(&self.basis_columns) {
            v[col] = c.clone();
        }
        v
    }

    /// Matrix of the induced map on the quotient for an ambient map that
    /// preserves the relation subspace.
    pub fn induced_map(&self, map: &Matrix) -> Matrix {
        let cols: Vec<Vec<Scalar>> = self
            .basis_columns
            .iter()
            .map(|&c| self.project(&map.column(c)))
            .collect();
        Matrix::from_columns(self.dim(), &cols)
    }
}

/// Dimension of `{X : X·a_k = b_k·X for all k}` together with a basis, where
/// `X` is a `rows × cols` matrix. The `a_k` are `cols × cols`, the `b_k` are
/// `rows × rows`. This is the intertwiner solver used for every Hom space.
pub fn intertwiners(rows: usize, cols: usize, pairs: &[(&Matrix, &Matrix)]) -> Vec<Matrix> {
    let unknowns = rows * cols;
    if unknowns == 0 {
        return Vec::new();
    }
    let mut equations: Vec<Vec<Scalar>> = Vec::new();
    for (a, b) in pairs {
        assert_eq!((a.rows(), a.cols()), (cols, cols), "domain action shape");
        assert_eq!((b.rows(), b.cols()), (rows, rows), "codomain action shape");
        // (X a)_{ij} - (b X)_{ij} = Σ_k X_{ik} a_{kj} - Σ_k b_{ik} X_{kj}
        for i in 0..rows {
            for j in 0..cols {
                let mut eq = zero_vec(unknowns);
                for k in 0..cols {
                    let x = a.get(k, j);
                    if !x.is_zero() {
                        eq[i * cols + k] += x;
                    }
                }
                for k in 0..rows {
                    let x = b.get(i, k);
                    if !x.is_zero() {
                        eq[k * cols + j] -= x;
                    }
                }
                if !is_zero_vec(&eq) {
                    equations.push(eq);
                }
            }
        }
    }
    let solutions = if equations.is_empty() {
        (0..unknowns).map(|i| unit_vec(unknowns, i)).collect()
    } else {
        Matrix::from_rows(unknowns, equations)
            .expect("equation width")
            .nullspace()
    };
    solutions
        .into_iter()
        .map(|v| Matrix::from_vec(rows, cols, v).expect("intertwiner shape"))
        .collect()
}

pub fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

pub fn is_nonnegative_integer(x: &Scalar) -> bool {
    x.is_integer() && !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_examples() {
        let m = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, Matrix::from_i64(&[&[1, -1], &[-1, 2]]));
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert!(Matrix::zeros(2, 3).inverse().is_none());
        assert_eq!(Matrix::zeros(0, 0).inverse(), Some(Matrix::zeros(0, 0)));
    }

    #[test]
    fn rref_identity_and_zero() {
        let r = Matrix::identity(2).rref();
        assert_eq!(r.reduced, Matrix::identity(2));
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);

        let r = Matrix::zeros(3, 3).rref();
        assert_eq!(r.reduced, Matrix::zeros(3, 3));
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_rank_one() {
        let r = Matrix::from_i64(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.reduced, Matrix::from_i64(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn nullspace_examples() {
        assert!(Matrix::identity(3).nullspace().is_empty());
        assert_eq!(Matrix::zeros(2, 3).nullspace().len(), 3);
        let ns = Matrix::from_i64(&[&[1, 1]]).nullspace();
        assert_eq!(ns, vec![vec![int(-1), int(1)]]);
    }

    #[test]
    fn solve_examples() {
        let x = Matrix::identity(2).solve(&[int(1), int(2)]).unwrap();
        assert_eq!(x, Some(vec![int(1), int(2)]));

        let m = Matrix::from_i64(&[&[1, 1]]);
        let x = m.solve(&[int(2)]).unwrap().unwrap();
        assert_eq!(&x[0] + &x[1], int(2));

        let m = Matrix::from_i64(&[&[1], &[1]]);
        assert_eq!(m.solve(&[int(0), int(1)]).unwrap(), None);
    }

    #[test]
    fn solve_rejects_bad_rhs() {
        let err = Matrix::identity(2).solve(&[int(1)]).unwrap_err();
        assert!(matches!(err, LinAlgError::DimensionMismatch { .. }));
    }

    #[test]
    fn scalar_text_round_trip() {
        assert_eq!(parse_scalar("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_scalar("-4").unwrap(), int(-4));
        assert_eq!(format_scalar(&ratio(-2, 4)), "-1/2");
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn quotient_projection() {
        // k^3 / span{(1,1,0)}
        let q = Quotient::by_span(3, &[vec![int(1), int(1), int(0)]]);
        assert_eq!(q.dim(), 2);
        assert_eq!(q.basis_columns(), &[1, 2]);
        assert_eq!(q.project(&[int(1), int(0), int(0)]), vec![int(-1), int(0)]);
        assert_eq!(q.project(&[int(2), int(2), int(0)]), vec![int(0), int(0)]);
    }

    #[test]
    fn subspace_intersection() {
        let a = Subspace::span(3, &[unit_vec(3, 0), unit_vec(3, 1)]);
        let b = Subspace::span(3, &[unit_vec(3, 1), unit_vec(3, 2)]);
        let c = a.intersection(&b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&unit_vec(3, 1)));
    }

    #[test]
    fn intertwiners_of_scalar_actions() {
        // commutant of a diagonal matrix with distinct entries is diagonal
        let d = Matrix::from_i64(&[&[1, 0], &[0, 2]]);
        let sols = intertwiners(2, 2, &[(&d, &d)]);
        assert_eq!(sols.len(), 2);
    }

    #[test]
    fn ceil_div_values() {
        assert_eq!(ceil_div(0, 6), 0);
        assert_eq!(ceil_div(1, 6), 1);
        assert_eq!(ceil_div(2, 2), 1);
        assert_eq!(ceil_div(7, 3), 3);
    }
}
