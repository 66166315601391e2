//! The generic structure-constant superalgebra: a finite-dimensional algebra
//! presented by a labeled basis, a parity vector, an optional ℤ-degree vector,
//! and a sparse structure-constant table.
//!
//! Multiplication is the bilinear extension of the table, so every identity
//! checker in this crate only has to quantify over basis tuples.

use crate::error::Error;
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{Echelon, Matrix, Subspace};

/// Parity of a homogeneous element: 0 (even) or 1 (odd).
pub type Parity = u8;

/// Sparse coefficient vector: (basis index, nonzero coefficient), sorted by index.
pub type SparseVec = Vec<(u32, Scalar)>;

/// Finite-dimensional superalgebra given by structure constants.
///
/// Immutable after construction; identity sweeps may partition the index
/// space arbitrarily and are safe to run concurrently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Superalgebra {
    field: FieldSpec,
    dim: usize,
    labels: Vec<String>,
    parity: Vec<Parity>,
    degree: Option<Vec<i64>>,
    /// Row (i, j) holds the coefficients of e_i · e_j.
    table: Vec<SparseVec>,
}

impl Superalgebra {
    /// Builds an algebra from table entries `(i, j, k, coefficient)`.
    ///
    /// Zero coefficients are dropped; duplicate `(i, j, k)` entries are an
    /// error. Degree consistency is not enforced here; `check_grading`
    /// verifies it, so deliberately corrupted gradings can be constructed
    /// for negative tests.
    pub fn new(
        field: FieldSpec,
        labels: Vec<String>,
        parity: Vec<Parity>,
        degree: Option<Vec<i64>>,
        entries: Vec<(usize, usize, usize, Scalar)>,
    ) -> Result<Self, Error> {
        let dim = labels.len();
        if parity.len() != dim {
            return Err(Error::DimensionMismatch("parity length != dim".into()));
        }
        if parity.iter().any(|&p| p > 1) {
            return Err(Error::Format("parity entries must be 0 or 1".into()));
        }
        if let Some(d) = &degree {
            if d.len() != dim {
                return Err(Error::DimensionMismatch("degree length != dim".into()));
            }
        }
        let mut table = vec![SparseVec::new(); dim * dim];
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Format(format!("table index out of range: ({i},{j},{k})")));
            }
            if !field.admits(&c) {
                return Err(Error::FieldMismatch(format!("coefficient at ({i},{j},{k})")));
            }
            if c.is_zero() {
                continue;
            }
            let row = &mut table[i * dim + j];
            if row.iter().any(|(kk, _)| *kk == k as u32) {
                return Err(Error::Format(format!("duplicate table entry ({i},{j},{k})")));
            }
            row.push((k as u32, c));
        }
        for row in &mut table {
            row.sort_by_key(|(k, _)| *k);
        }
        Ok(Superalgebra { field, dim, labels, parity, degree, table })
    }

    /// An algebra with zero multiplication.
    pub fn abelian(field: FieldSpec, labels: Vec<String>, parity: Vec<Parity>) -> Self {
        let dim = labels.len();
        Superalgebra {
            field,
            dim,
            labels,
            parity: parity.clone(),
            degree: None,
            table: vec![SparseVec::new(); dim * dim],
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn parity(&self) -> &[Parity] {
        &self.parity
    }

    pub fn parity_of(&self, i: usize) -> Parity {
        self.parity[i]
    }

    pub fn degree(&self) -> Option<&[i64]> {
        self.degree.as_deref()
    }

    /// Replaces the degree vector (used to attach or corrupt gradings).
    pub fn with_degrees(mut self, degree: Option<Vec<i64>>) -> Self {
        if let Some(d) = &degree {
            assert_eq!(d.len(), self.dim, "degree length");
        }
        self.degree = degree;
        self
    }

    /// The structure-constant row of e_i · e_j.
    pub fn row(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim + j]
    }

    pub fn table_is_zero(&self) -> bool {
        self.table.iter().all(|r| r.is_empty())
    }

    /// Iterates all nonzero entries as `(i, j, k, coefficient)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        (0..self.dim * self.dim).flat_map(move |idx| {
            let (i, j) = (idx / self.dim, idx % self.dim);
            self.table[idx].iter().map(move |(k, c)| (i, j, *k as usize, c))
        })
    }

    /// Bilinear product of two coefficient vectors.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::DimensionMismatch("vector length != dim".into()));
        }
        if x.iter().chain(y).any(|c| !self.field.admits(c)) {
            return Err(Error::FieldMismatch("vector entries".into()));
        }
        Ok(self.mul_vectors(x, y))
    }

    pub(crate) fn mul_vectors(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let mut acc = vec![f.zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, v) in self.row(i, j) {
                    let t = f.mul(v, &c);
                    acc[*k as usize] = f.add(&acc[*k as usize], &t);
                }
            }
        }
        acc
    }

    /// e_i · v as a dense vector.
    pub fn mul_basis_vec(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let mut acc = vec![f.zero(); self.dim];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (k, c) in self.row(i, j) {
                let t = f.mul(c, vj);
                acc[*k as usize] = f.add(&acc[*k as usize], &t);
            }
        }
        acc
    }

    /// v · e_j as a dense vector.
    pub fn mul_vec_basis(&self, v: &[Scalar], j: usize) -> Vec<Scalar> {
        let f = self.field;
        let mut acc = vec![f.zero(); self.dim];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (k, c) in self.row(i, j) {
                let t = f.mul(c, vi);
                acc[*k as usize] = f.add(&acc[*k as usize], &t);
            }
        }
        acc
    }

    /// The matrix of left multiplication by `x`.
    pub fn left_mult(&self, x: &[Scalar]) -> LinearMap {
        let f = self.field;
        let mut m = Matrix::zeros(f, self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.mul_vec_basis_col(x, j);
            for (r, v) in col.into_iter().enumerate() {
                m[(r, j)] = v;
            }
        }
        LinearMap::new(m, self.parity_of_vector(x).unwrap_or(0))
    }

    /// The matrix of right multiplication by `x`.
    pub fn right_mult(&self, x: &[Scalar]) -> LinearMap {
        let f = self.field;
        let mut m = Matrix::zeros(f, self.dim, self.dim);
        for j in 0..self.dim {
            let e_j: Vec<Scalar> = (0..self.dim).map(|t| if t == j { f.one() } else { f.zero() }).collect();
            let col = self.mul_vectors(&e_j, x);
            for (r, v) in col.into_iter().enumerate() {
                m[(r, j)] = v;
            }
        }
        LinearMap::new(m, self.parity_of_vector(x).unwrap_or(0))
    }

    fn mul_vec_basis_col(&self, x: &[Scalar], j: usize) -> Vec<Scalar> {
        // x · placed as left factor against e_j: column j of L_x.
        let f = self.field;
        let mut acc = vec![f.zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (k, c) in self.row(i, j) {
                let t = f.mul(c, xi);
                acc[*k as usize] = f.add(&acc[*k as usize], &t);
            }
        }
        acc
    }

    /// Left multiplications by every basis element.
    pub fn left_mult_operators(&self) -> Vec<LinearMap> {
        (0..self.dim).map(|i| self.left_mult_basis(i)).collect()
    }

    /// Right multiplications by every basis element.
    pub fn right_mult_operators(&self) -> Vec<LinearMap> {
        let f = self.field;
        (0..self.dim)
            .map(|j| {
                let mut m = Matrix::zeros(f, self.dim, self.dim);
                for i in 0..self.dim {
                    for (k, c) in self.row(i, j) {
                        m[(*k as usize, i)] = c.clone();
                    }
                }
                LinearMap::new(m, self.parity[j])
            })
            .collect()
    }

    /// Left multiplication by basis element i.
    pub fn left_mult_basis(&self, i: usize) -> LinearMap {
        let f = self.field;
        let mut m = Matrix::zeros(f, self.dim, self.dim);
        for j in 0..self.dim {
            for (k, c) in self.row(i, j) {
                m[(*k as usize, j)] = c.clone();
            }
        }
        LinearMap::new(m, self.parity[i])
    }

    /// Parity of a homogeneous vector; `None` when the support is mixed.
    pub fn parity_of_vector(&self, v: &[Scalar]) -> Option<Parity> {
        let mut p = None;
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                match p {
                    None => p = Some(self.parity[i]),
                    Some(q) if q != self.parity[i] => return None,
                    _ => {}
                }
            }
        }
        Some(p.unwrap_or(0))
    }

    /// Span of all products: the derived subalgebra as a subspace.
    pub fn derived_subalgebra(&self) -> Subspace {
        let f = self.field;
        let mut e = Echelon::new(f, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let row = self.row(i, j);
                if !row.is_empty() {
                    let mut v = vec![f.zero(); self.dim];
                    for (k, c) in row {
                        v[*k as usize] = c.clone();
                    }
                    e.insert(v);
                }
            }
        }
        e.into_subspace()
    }

    /// `{x : x·A = 0 = A·x}`, the annihilator of both multiplications.
    pub fn center(&self) -> Subspace {
        let f = self.field;
        // Parametrized intersection of kernels: P rows span the candidates.
        let mut p = Matrix::identity(f, self.dim);
        for j in 0..self.dim {
            for side in 0..2 {
                if p.rows() == 0 {
                    break;
                }
                // Condition matrix A: column c = (side 0: e_j · p_c, side 1: p_c · e_j).
                let mut a = Matrix::zeros(f, self.dim, p.rows());
                for c in 0..p.rows() {
                    let v = p.row(c);
                    let w = if side == 0 { self.mul_basis_vec(j, v) } else { self.mul_vec_basis(v, j) };
                    for (r, x) in w.into_iter().enumerate() {
                        a[(r, c)] = x;
                    }
                }
                let ker = a.kernel();
                if ker.dim() == p.rows() {
                    continue;
                }
                let mut rows = Vec::with_capacity(ker.dim());
                for coeff in ker.basis_vectors() {
                    let mut v = vec![f.zero(); self.dim];
                    for (c, cc) in coeff.iter().enumerate() {
                        if !cc.is_zero() {
                            for t in 0..self.dim {
                                let s = f.mul(&p[(c, t)], cc);
                                v[t] = f.add(&v[t], &s);
                            }
                        }
                    }
                    rows.push(v);
                }
                p = Matrix::from_rows(f, self.dim, rows);
            }
        }
        Subspace::from_vectors(f, self.dim, (0..p.rows()).map(|i| p.row_vec(i)).collect())
    }

    /// Whether `sub` is closed under multiplication by the whole algebra.
    pub fn is_ideal(&self, sub: &Subspace) -> bool {
        for v in sub.basis_vectors() {
            for j in 0..self.dim {
                if !sub.contains(&self.mul_vec_basis(v, j)) || !sub.contains(&self.mul_basis_vec(j, v)) {
                    return false;
                }
            }
        }
        true
    }

    /// The induced algebra on a multiplicatively closed subspace.
    ///
    /// Basis rows must be parity-homogeneous. Labels are inherited when the
    /// row is a standard basis vector and synthesized otherwise.
    pub fn subalgebra_on(&self, sub: &Subspace) -> Result<Superalgebra, Error> {
        let f = self.field;
        let n = sub.dim();
        let mut labels = Vec::with_capacity(n);
        let mut parity = Vec::with_capacity(n);
        for (r, v) in sub.basis_vectors().enumerate() {
            let support: Vec<usize> = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i).collect();
            let p = self
                .parity_of_vector(v)
                .ok_or_else(|| Error::Precondition(format!("subspace row {r} has mixed parity")))?;
            parity.push(p);
            if support.len() == 1 && v[support[0]].is_one() {
                labels.push(self.labels[support[0]].clone());
            } else {
                labels.push(format!("b{r}"));
            }
        }
        let degree = self.degree.as_ref().and_then(|deg| {
            let mut out = Vec::with_capacity(n);
            for v in sub.basis_vectors() {
                let ds: Vec<i64> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, _)| deg[i])
                    .collect();
                if ds.windows(2).all(|w| w[0] == w[1]) && !ds.is_empty() {
                    out.push(ds[0]);
                } else {
                    return None;
                }
            }
            Some(out)
        });
        let rows: Vec<Vec<Scalar>> = sub.basis_vectors().map(|v| v.to_vec()).collect();
        let mut entries = Vec::new();
        for (a, u) in rows.iter().enumerate() {
            for (b, w) in rows.iter().enumerate() {
                let prod = self.mul_vectors(u, w);
                let coords = sub
                    .coordinates(&prod)
                    .ok_or_else(|| Error::Precondition("subspace is not multiplicatively closed".into()))?;
                for (k, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        entries.push((a, b, k, c));
                    }
                }
            }
        }
        Superalgebra::new(f, labels, parity, degree, entries)
    }

    /// The quotient algebra by a (verified) ideal, on the standard complement
    /// of the ideal's pivot columns.
    pub fn quotient_by(&self, ideal: &Subspace) -> Result<Superalgebra, Error> {
        if !self.is_ideal(ideal) {
            return Err(Error::Precondition("subspace is not an ideal".into()));
        }
        let f = self.field;
        let complement: Vec<usize> = (0..self.dim).filter(|i| !ideal.pivots().contains(i)).collect();
        let pos: std::collections::HashMap<usize, usize> =
            complement.iter().enumerate().map(|(r, &c)| (c, r)).collect();
        let labels = complement.iter().map(|&i| self.labels[i].clone()).collect();
        let parity = complement.iter().map(|&i| self.parity[i]).collect();
        let mut entries = Vec::new();
        for (a, &ia) in complement.iter().enumerate() {
            for (b, &ib) in complement.iter().enumerate() {
                let mut prod = vec![f.zero(); self.dim];
                for (k, c) in self.row(ia, ib) {
                    prod[*k as usize] = c.clone();
                }
                let rem = ideal.reduce(&prod);
                for (k, c) in rem.into_iter().enumerate() {
                    if !c.is_zero() {
                        let kk = *pos
                            .get(&k)
                            .ok_or_else(|| Error::Precondition("reduction left a pivot coordinate".into()))?;
                        entries.push((a, b, kk, c));
                    }
                }
            }
        }
        Superalgebra::new(f, labels, parity, None, entries)
    }

    /// Verifies the ℤ-grading: the table respects degrees and parity is the
    /// degree mod 2.
    pub fn check_grading(&self) -> Result<VerificationReport, Error> {
        let deg = self
            .degree
            .as_ref()
            .ok_or_else(|| Error::Precondition("no degree vector present".into()))?;
        let mut checked = 0u64;
        for i in 0..self.dim {
            checked += 1;
            if deg[i].rem_euclid(2) != self.parity[i] as i64 {
                return Ok(VerificationReport::fail(
                    "grading",
                    checked,
                    Counterexample {
                        indices: vec![i],
                        lhs: vec![format!("degree {} mod 2", deg[i])],
                        rhs: vec![format!("parity {}", self.parity[i])],
                    },
                ));
            }
        }
        for (i, j, k, c) in self.entries() {
            checked += 1;
            if deg[k] != deg[i] + deg[j] {
                return Ok(VerificationReport::fail(
                    "grading",
                    checked,
                    Counterexample {
                        indices: vec![i, j, k],
                        lhs: vec![format!("deg {} + deg {}", deg[i], deg[j])],
                        rhs: vec![format!("deg {} with coefficient {}", deg[k], c)],
                    },
                ));
            }
        }
        Ok(VerificationReport::pass("grading", checked))
    }

    /// Basis index sets per degree, ascending.
    pub fn graded_components(&self) -> Option<Vec<(i64, Vec<usize>)>> {
        let deg = self.degree.as_ref()?;
        let mut map: std::collections::BTreeMap<i64, Vec<usize>> = Default::default();
        for (i, d) in deg.iter().enumerate() {
            map.entry(*d).or_default().push(i);
        }
        Some(map.into_iter().collect())
    }

    pub fn standard_basis_vector(&self, i: usize) -> Vec<Scalar> {
        let f = self.field;
        (0..self.dim).map(|t| if t == i { f.one() } else { f.zero() }).collect()
    }
}

/// The matrix of an operator with respect to an algebra's basis, with a
/// parity tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    pub matrix: Matrix,
    pub parity: Parity,
}

impl LinearMap {
    pub fn new(matrix: Matrix, parity: Parity) -> Self {
        assert_eq!(matrix.rows(), matrix.cols(), "operator matrices are square");
        LinearMap { matrix, parity }
    }

    pub fn zero(field: FieldSpec, n: usize, parity: Parity) -> Self {
        LinearMap::new(Matrix::zeros(field, n, n), parity)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(v)
    }

    /// Super-commutator [f, g] = fg − (−1)^{|f||g|} gf.
    pub fn super_commutator(&self, other: &LinearMap) -> LinearMap {
        let fg = self.matrix.matmul(&other.matrix);
        let gf = other.matrix.matmul(&self.matrix);
        let m = if self.parity & other.parity == 1 {
            fg.add_matrix(&gf)
        } else {
            fg.sub_matrix(&gf)
        };
        LinearMap::new(m, (self.parity + other.parity) % 2)
    }

    pub fn flatten(&self) -> Vec<Scalar> {
        self.matrix.flatten()
    }

    pub fn scaled(&self, c: &Scalar) -> LinearMap {
        LinearMap::new(self.matrix.scaled(c), self.parity)
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.parity, other.parity, "adding maps of different parity");
        LinearMap::new(self.matrix.add_matrix(&other.matrix), self.parity)
    }
}

/// A symmetric bilinear form given by its Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    matrix: Matrix,
}

impl BilinearForm {
    pub fn new(matrix: Matrix) -> Result<Self, Error> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::DimensionMismatch("Gram matrix must be square".into()));
        }
        if matrix != matrix.transpose() {
            return Err(Error::Precondition("bilinear form must be symmetric".into()));
        }
        Ok(BilinearForm { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn gram(&self, i: usize, j: usize) -> &Scalar {
        &self.matrix[(i, j)]
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let f = *self.matrix.field();
        let mut acc = f.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || self.matrix[(i, j)].is_zero() {
                    continue;
                }
                let t = f.mul(&f.mul(xi, yj), &self.matrix[(i, j)]);
                acc = f.add(&acc, &t);
            }
        }
        acc
    }

    /// Restriction to the span of the given rows (expressed in the ambient basis).
    pub fn restrict(&self, rows: &[Vec<Scalar>]) -> BilinearForm {
        let f = *self.matrix.field();
        let n = rows.len();
        let m = Matrix::from_fn(f, n, n, |i, j| self.eval(&rows[i], &rows[j]));
        BilinearForm { matrix: m }
    }
}

/// Structured pass/fail record for one identity, with the first violating
/// basis tuple on failure.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Counterexample {
    /// Basis index tuple at which the identity fails.
    pub indices: Vec<usize>,
    /// Left-hand side value(s), serialized.
    pub lhs: Vec<String>,
    /// Right-hand side value(s), serialized.
    pub rhs: Vec<String>,
}

impl VerificationReport {
    pub fn pass(identity: &str, checked: u64) -> Self {
        VerificationReport { identity: identity.into(), pass: true, counterexample: None, checked, seed: None }
    }

    pub fn fail(identity: &str, checked: u64, counterexample: Counterexample) -> Self {
        VerificationReport {
            identity: identity.into(),
            pass: false,
            counterexample: Some(counterexample),
            checked,
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

pub(crate) fn vec_to_strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}
