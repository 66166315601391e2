//! Exact dense linear algebra over a [`FieldSpec`]: reduced row echelon form,
//! solving, kernels, and canonical subspaces.
//!
//! Subspaces are always stored as the rows of a reduced row echelon matrix, so
//! equality of subspaces is equality of matrices and membership is a single
//! reduction pass. No pivoting heuristics are needed: arithmetic is exact and
//! the first nonzero entry in column order is taken, which makes every result
//! deterministic.

use crate::error::Error;
use crate::field::{FieldSpec, Scalar};

/// A dense matrix over an exact field, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
    field: FieldSpec,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
            field,
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix { rows: n, cols, data, field }
    }

    pub fn from_fn(field: FieldSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = Matrix::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
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

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Scalar> {
        self.row(i).to_vec()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let f = self.field;
        Matrix::from_fn(f, self.rows, other.cols, |i, j| {
            let mut acc = f.zero();
            for k in 0..self.cols {
                if !self[(i, k)].is_zero() && !other[(k, j)].is_zero() {
                    acc = f.add(&acc, &f.mul(&self[(i, k)], &other[(k, j)]));
                }
            }
            acc
        })
    }

    /// Matrix-vector product (vector as column).
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for k in 0..self.cols {
                    if !self[(i, k)].is_zero() && !v[k].is_zero() {
                        acc = f.add(&acc, &f.mul(&self[(i, k)], &v[k]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn scaled(&self, c: &Scalar) -> Matrix {
        let f = self.field;
        Matrix::from_fn(f, self.rows, self.cols, |i, j| f.mul(&self[(i, j)], c))
    }

    pub fn add_matrix(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Matrix::from_fn(f, self.rows, self.cols, |i, j| f.add(&self[(i, j)], &other[(i, j)]))
    }

    pub fn sub_matrix(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        self.add_matrix(&other.scaled(&f.from_integer(-1)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn flatten(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let f = m.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // First nonzero entry in column order.
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(&m[(r, c)]).expect("pivot is nonzero");
            m.scale_row(r, &inv);
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let factor = m[(i, c)].clone();
                    m.sub_scaled_row(i, r, &factor);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// One exact solution of `self · x = rhs`, or `None` if inconsistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(self.rows, rhs.len(), "rhs length");
        let f = self.field;
        // Augmented RREF.
        let mut aug = Matrix::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = rhs[i].clone();
        }
        let (red, pivots) = aug.rref();
        // Inconsistent iff a pivot lands in the augmented column.
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = red[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// The kernel `{x : self · x = 0}` as a canonical subspace.
    pub fn kernel(&self) -> Subspace {
        let f = self.field;
        let (red, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (c, pr) in pivot_set.iter().enumerate() {
                if let Some(r) = pr {
                    v[c] = f.neg(&red[(*r, free)]);
                }
            }
            basis.push(v);
        }
        Subspace::from_vectors(f, self.cols, basis)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Scalar) {
        let f = self.field;
        for j in 0..self.cols {
            self[(r, j)] = f.mul(&self[(r, j)], c);
        }
    }

    fn sub_scaled_row(&mut self, dst: usize, src: usize, c: &Scalar) {
        let f = self.field;
        for j in 0..self.cols {
            if !self[(src, j)].is_zero() {
                let t = f.mul(&self[(src, j)], c);
                self[(dst, j)] = f.sub(&self[(dst, j)], &t);
            }
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

/// A linear subspace of k^n in canonical form: the rows of its basis matrix
/// are in RREF, so two `Subspace` values are equal iff they are the same
/// subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_vectors(field: FieldSpec, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        let mut e = Echelon::new(field, ambient);
        for v in vectors {
            e.insert(v);
        }
        e.into_subspace()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.basis.rows()).map(|i| self.basis.row(i))
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn field(&self) -> &FieldSpec {
        self.basis.field()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Reduces `v` against the basis; returns the remainder.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let f = *self.field();
        let mut v = v.to_vec();
        for (r, &c) in self.pivots.iter().enumerate() {
            if !v[c].is_zero() {
                let factor = v[c].clone();
                for j in 0..self.ambient {
                    let t = f.mul(&self.basis[(r, j)], &factor);
                    v[j] = f.sub(&v[j], &t);
                }
            }
        }
        v
    }


    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the RREF basis, when `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut e = Echelon::new(*self.field(), self.ambient);
        for v in self.basis_vectors().chain(other.basis_vectors()) {
            e.insert(v.to_vec());
        }
        e.into_subspace()
    }

    /// `{x : ⟨b, x⟩ = 0 for every basis row b}`.
    pub fn perp(&self) -> Subspace {
        self.basis.kernel()
    }
}

/// Incremental echelon container kept fully reduced, so the final basis is in
/// RREF with rows ordered by pivot column.
pub(crate) struct Echelon {
    field: FieldSpec,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: FieldSpec, ambient: usize) -> Self {
        Echelon { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }


    fn reduce(&self, mut v: Vec<Scalar>) -> Option<(usize, Vec<Scalar>)> {
        let f = self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for j in 0..self.ambient {
                    if !row[j].is_zero() {
                        let t = f.mul(&row[j], &factor);
                        v[j] = f.sub(&v[j], &t);
                    }
                }
            }
        }
        let lead = v.iter().position(|x| !x.is_zero())?;
        Some((lead, v))
    }

    /// Inserts a vector; returns true iff it enlarged the span.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.ambient);
        let f = self.field;
        let Some((lead, mut v)) = self.reduce(v) else {
            return false;
        };
        let inv = f.inv(&v[lead]).expect("lead is nonzero");
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // Back-eliminate the new pivot from existing rows.
        for (row, _) in self.rows.iter_mut().zip(&self.pivots) {
            if !row[lead].is_zero() {
                let factor = row[lead].clone();
                for j in 0..self.ambient {
                    if !v[j].is_zero() {
                        let t = f.mul(&v[j], &factor);
                        row[j] = f.sub(&row[j], &t);
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(at, lead);
        self.rows.insert(at, v);
        true
    }

    pub fn into_subspace(self) -> Subspace {
        let basis = Matrix::from_rows(self.field, self.ambient, self.rows);
        Subspace { ambient: self.ambient, basis, pivots: self.pivots }
    }
}

/// A spanning set with deterministic coordinates in the *original* generator
/// order, built by tracking the row transform alongside the RREF.
#[derive(Debug, Clone)]
pub struct Basis {
    original: Matrix,
    rref: Matrix,
    pivots: Vec<usize>,
    /// transform · original = rref (rows of `transform` express RREF rows in
    /// terms of the original independent generators).
    transform: Matrix,
}

impl Basis {
    /// `generators` must be linearly independent rows.
    pub fn from_independent_rows(field: FieldSpec, cols: usize, generators: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        let n = generators.len();
        let original = Matrix::from_rows(field, cols, generators);
        // Augment with the identity to capture the transform.
        let mut aug = Matrix::zeros(field, n, cols + n);
        for i in 0..n {
            for j in 0..cols {
                aug[(i, j)] = original[(i, j)].clone();
            }
            aug[(i, cols + i)] = field.one();
        }
        let (red, pivots) = aug.rref();
        let pivots: Vec<usize> = pivots.into_iter().filter(|&c| c < cols).collect();
        if pivots.len() != n {
            return Err(Error::DimensionMismatch("generators are linearly dependent".into()));
        }
        let rref = Matrix::from_fn(field, n, cols, |i, j| red[(i, j)].clone());
        let transform = Matrix::from_fn(field, n, n, |i, j| red[(i, cols + j)].clone());
        Ok(Basis { original, rref, pivots, transform })
    }

    pub fn dim(&self) -> usize {
        self.original.rows()
    }

    pub fn original(&self) -> &Matrix {
        &self.original
    }

    /// Coordinates of `v` with respect to the original generators, if `v`
    /// lies in their span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let f = *self.rref.field();
        // Coordinates in the RREF basis read off at the pivot columns.
        let coords: Vec<Scalar> = self.pivots.iter().map(|&c| v[c].clone()).collect();
        // Verify membership exactly.
        let mut check = vec![f.zero(); v.len()];
        for (r, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                for j in 0..v.len() {
                    let t = f.mul(&self.rref[(r, j)], c);
                    check[j] = f.add(&check[j], &t);
                }
            }
        }
        if check != v {
            return None;
        }
        // Transform back: v = coords · rref = coords · transform · original.
        let n = self.dim();
        let mut out = vec![f.zero(); n];
        for (r, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                for j in 0..n {
                    let t = f.mul(&self.transform[(r, j)], c);
                    out[j] = f.add(&out[j], &t);
                }
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn gf3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    fn mat(field: FieldSpec, cols: usize, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            field,
            cols,
            rows.iter().map(|r| r.iter().map(|&x| field.from_integer(x)).collect()).collect(),
        )
    }

    // 2x2 determinant oracle, independent of rref.
    fn det2(m: &Matrix) -> Scalar {
        let f = *m.field();
        f.sub(&f.mul(&m[(0, 0)], &m[(1, 1)]), &f.mul(&m[(0, 1)], &m[(1, 0)]))
    }

    #[test]
    fn rref_identity_and_zero() {
        let f = gf3();
        let id = Matrix::identity(f, 4);
        let (r, p) = id.rref();
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1, 2, 3]);
        let z = Matrix::zeros(f, 3, 5);
        let (r, p) = z.rref();
        assert!(r.is_zero());
        assert!(p.is_empty());
    }

    #[test]
    fn rref_rank_one_example() {
        // det [[1,2],[2,1]] = 1 - 4 = -3 ≡ 0 (mod 3), so rank 1.
        let f = gf3();
        let m = mat(f, 2, &[&[1, 2], &[2, 1]]);
        assert!(det2(&m).is_zero());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn solve_examples() {
        let f = gf3();
        let id = Matrix::identity(f, 3);
        let v = vec![f.from_integer(1), f.from_integer(2), f.from_integer(0)];
        assert_eq!(id.solve(&v).unwrap(), v);

        let z = Matrix::zeros(f, 2, 2);
        assert!(z.solve(&[f.one(), f.zero()]).is_none());

        // Random seeded 5x5 invertible system; verify by substitution.
        let mut rng = StdRng::seed_from_u64(0xC3A1);
        loop {
            let m = Matrix::from_fn(f, 5, 5, |_, _| f.from_integer(rng.gen_range(0..3)));
            if m.rank() < 5 {
                continue;
            }
            let rhs: Vec<Scalar> = (0..5).map(|_| f.from_integer(rng.gen_range(0..3))).collect();
            let x = m.solve(&rhs).unwrap();
            assert_eq!(m.apply(&x), rhs);
            break;
        }
    }

    #[test]
    fn kernel_rank_nullity_and_membership() {
        let f = gf3();
        let m = mat(f, 3, &[&[1, 2, 0], &[2, 1, 1], &[0, 0, 0]]);
        let k = m.kernel();
        assert_eq!(m.rank() + k.dim(), 3);
        for v in k.basis_vectors() {
            assert!(m.apply(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn basis_rejects_dependent_rows() {
        let f = gf3();
        let gens = vec![
            vec![f.one(), f.from_integer(2), f.zero()],
            vec![f.from_integer(2), f.one(), f.zero()], // = 2 × the first
        ];
        assert!(Basis::from_independent_rows(f, 3, gens).is_err());
    }

    #[test]
    fn basis_coordinates_round_trip() {
        let f = gf3();
        let gens = vec![
            vec![f.from_integer(2), f.one(), f.zero()],
            vec![f.zero(), f.one(), f.one()],
        ];
        let b = Basis::from_independent_rows(f, 3, gens).unwrap();
        // v = 1·g0 + 2·g1 = (2, 0, 2)
        let v = vec![f.from_integer(2), f.zero(), f.from_integer(2)];
        assert_eq!(b.coordinates(&v).unwrap(), vec![f.one(), f.from_integer(2)]);
        assert!(b.coordinates(&[f.one(), f.zero(), f.zero()]).is_none());
    }

    proptest! {
        // span(B) = span(rref(B)), decided by mutual membership.
        #[test]
        fn span_is_rref_invariant(seed in 0u64..500) {
            let f = gf3();
            let mut rng = StdRng::seed_from_u64(seed);
            let rows = rng.gen_range(1..5usize);
            let cols = rng.gen_range(1..5usize);
            let vectors: Vec<Vec<Scalar>> = (0..rows)
                .map(|_| (0..cols).map(|_| f.from_integer(rng.gen_range(0..3))).collect())
                .collect();
            let sub = Subspace::from_vectors(f, cols, vectors.clone());
            for v in &vectors {
                prop_assert!(sub.contains(v));
            }
            // And every basis vector is a combination of the originals:
            // rank of originals equals dim of the subspace.
            let m = Matrix::from_rows(f, cols, vectors);
            prop_assert_eq!(m.rank(), sub.dim());
        }

        #[test]
        fn rank_nullity_random(seed in 0u64..200) {
            let f = FieldSpec::prime(5).unwrap();
            let mut rng = StdRng::seed_from_u64(seed);
            let rows = rng.gen_range(1..6usize);
            let cols = rng.gen_range(1..6usize);
            let m = Matrix::from_fn(f, rows, cols, |_, _| f.from_integer(rng.gen_range(0..5)));
            prop_assert_eq!(m.rank() + m.kernel().dim(), cols);
        }
    }
}
