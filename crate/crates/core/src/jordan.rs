//! Jordan algebras with a normalized trace: the hermitian 3×3 algebras
//! H₃(C′) over a unital composition algebra (characteristic ∉ {2,3}), and the
//! characteristic-3 route through unital commutative alternative algebras
//! with a trace-zero hyperplane.
//!
//! A normalized trace is a linear form t_J with t_J(1) = 1 and
//! t_J((xy)z) = t_J(x(yz)); it splits J = k1 ⊕ J⁰ and the product as
//! xy = t_J(xy)1 + x∗y.

use crate::algebra::{LinearMap, Superalgebra};
use crate::composition::CompositionAlgebra;
use crate::derivations::OperatorAlgebra;
use crate::error::Error;
use crate::field::{FieldSpec, Scalar};
use crate::identities::{check_commutative_super, check_super_alternative, Accum};
use crate::linalg::{Basis, Matrix, Subspace};

/// A unital commutative algebra with a normalized trace.
#[derive(Debug, Clone)]
pub struct JordanWithTrace {
    pub algebra: Superalgebra,
    /// Coordinates of the trace functional on the basis.
    pub trace: Vec<Scalar>,
    pub unit: Vec<Scalar>,
    j0: Basis,
}

impl JordanWithTrace {
    /// The hermitian 3×3 matrices over `cprime` under x∘y = ½(xy + yx), with
    /// t_J = ⅓ · (sum of diagonal scalars).
    pub fn h3(cprime: &CompositionAlgebra) -> Result<Self, Error> {
        let f = *cprime.field();
        if f.characteristic() == 3 {
            return Err(Error::UnsupportedField(
                "H₃ needs 3 invertible for the normalized trace; use the characteristic-3 route".into(),
            ));
        }
        let cd = cprime.dim();
        let dim = 3 + 3 * cd;
        let cells: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

        // A hermitian matrix is a 3×3 array of C′ vectors with m[j][i] = conj(m[i][j]).
        let conj = |x: &[Scalar]| -> Vec<Scalar> {
            let t = cprime.trace(x);
            (0..cd).map(|r| f.sub(&f.mul(&t, &cprime.unit[r]), &x[r])).collect()
        };
        let zero_mat = || vec![vec![vec![f.zero(); cd]; 3]; 3];
        let mut basis_mats = Vec::with_capacity(dim);
        let mut labels = Vec::with_capacity(dim);
        for d in 0..3 {
            let mut m = zero_mat();
            m[d][d] = cprime.unit.clone();
            basis_mats.push(m);
            labels.push(format!("E{}{}", d + 1, d + 1));
        }
        for (ci, &(i, j)) in cells.iter().enumerate() {
            for b in 0..cd {
                let mut m = zero_mat();
                let eb = cprime.algebra.standard_basis_vector(b);
                m[j][i] = conj(&eb);
                m[i][j] = eb;
                basis_mats.push(m);
                labels.push(format!("c{}{}[{}]", i + 1, j + 1, cprime.algebra.labels()[b]));
                let _ = ci;
            }
        }

        // Decompose a hermitian matrix into basis coordinates.
        let coords_of = |m: &Vec<Vec<Vec<Scalar>>>| -> Result<Vec<Scalar>, Error> {
            let mut out = vec![f.zero(); dim];
            for d in 0..3 {
                // Diagonal entries of a hermitian matrix are scalar multiples of 1.
                let lam = scalar_of_unit_multiple(&f, &m[d][d], &cprime.unit)
                    .ok_or_else(|| Error::IdentityFailure("diagonal entry not scalar".into()))?;
                out[d] = lam;
            }
            for (ci, &(i, j)) in cells.iter().enumerate() {
                for b in 0..cd {
                    out[3 + ci * cd + b] = m[i][j][b].clone();
                }
                // Hermitian consistency of the opposite entry.
                let expect = conj(&m[i][j]);
                if m[j][i] != expect {
                    return Err(Error::IdentityFailure("product is not hermitian".into()));
                }
            }
            Ok(out)
        };

        let matmul = |x: &Vec<Vec<Vec<Scalar>>>, y: &Vec<Vec<Vec<Scalar>>>| -> Vec<Vec<Vec<Scalar>>> {
            let mut out = zero_mat();
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        let p = cprime.algebra.mul_vectors(&x[i][k], &y[k][j]);
                        for r in 0..cd {
                            out[i][j][r] = f.add(&out[i][j][r], &p[r]);
                        }
                    }
                }
            }
            out
        };

        let half = f.inv(&f.from_integer(2))?;
        let mut entries = Vec::new();
        for (a, x) in basis_mats.iter().enumerate() {
            for (b, y) in basis_mats.iter().enumerate() {
                let xy = matmul(x, y);
                let yx = matmul(y, x);
                let mut sym = zero_mat();
                for i in 0..3 {
                    for j in 0..3 {
                        for r in 0..cd {
                            sym[i][j][r] = f.mul(&half, &f.add(&xy[i][j][r], &yx[i][j][r]));
                        }
                    }
                }
                let coords = coords_of(&sym)?;
                for (k, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        entries.push((a, b, k, c));
                    }
                }
            }
        }
        let algebra = Superalgebra::new(f, labels, vec![0; dim], None, entries)?;
        let third = f.inv(&f.from_integer(3))?;
        let mut trace = vec![f.zero(); dim];
        for d in 0..3 {
            trace[d] = third.clone();
        }
        let mut unit = vec![f.zero(); dim];
        for d in 0..3 {
            unit[d] = f.one();
        }
        let j = JordanWithTrace::assemble(algebra, trace, unit)?;
        j.verify(true)?;
        Ok(j)
    }

    /// A unital commutative alternative algebra A over a characteristic-3
    /// field becomes a Jordan algebra with normalized trace once a
    /// codimension-1 subspace A⁰ with (A,A,A) ⊆ A⁰ and 1 ∉ A⁰ is chosen:
    /// t(1) = 1, t(A⁰) = 0.
    pub fn from_alternative_with_hyperplane(a: &Superalgebra, a0: &Subspace) -> Result<Self, Error> {
        let f = *a.field();
        let dim = a.dim();
        if a0.ambient() != dim || a0.dim() + 1 != dim {
            return Err(Error::Precondition("hyperplane must have codimension 1".into()));
        }
        if a.parity().iter().any(|&p| p == 1) {
            return Err(Error::Precondition("the characteristic-3 route takes a plain algebra".into()));
        }
        let unit = find_unit(a).ok_or_else(|| Error::Precondition("algebra is not unital".into()))?;
        if a0.contains(&unit) {
            return Err(Error::Precondition("hyperplane contains the unit".into()));
        }
        // (A, A, A) ⊆ A⁰.
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if !a0.contains(&crate::identities::associator(a, i, j, k)) {
                        return Err(Error::Precondition("hyperplane does not contain the associators".into()));
                    }
                }
            }
        }
        // Solve for the trace: t(A⁰) = 0, t(1) = 1.
        let mut rows: Vec<Vec<Scalar>> = a0.basis_vectors().map(|v| v.to_vec()).collect();
        rows.push(unit.clone());
        let mut rhs = vec![f.zero(); dim];
        rhs[dim - 1] = f.one();
        let m = Matrix::from_rows(f, dim, rows);
        let trace = m.solve(&rhs).ok_or_else(|| Error::Precondition("no trace functional exists".into()))?;
        let j = JordanWithTrace::assemble(a.clone(), trace, unit)?;
        j.verify(false)?;
        Ok(j)
    }

    /// Assembles the structure without identity verification. Used by the
    /// verified constructors and by negative tests that corrupt the trace.
    pub fn with_custom_trace(algebra: Superalgebra, trace: Vec<Scalar>, unit: Vec<Scalar>) -> Result<Self, Error> {
        JordanWithTrace::assemble(algebra, trace, unit)
    }

    fn assemble(algebra: Superalgebra, trace: Vec<Scalar>, unit: Vec<Scalar>) -> Result<Self, Error> {
        let f = *algebra.field();
        let dim = algebra.dim();
        if trace.len() != dim || unit.len() != dim {
            return Err(Error::DimensionMismatch("trace/unit length".into()));
        }
        let kernel = Matrix::from_rows(f, dim, vec![trace.clone()]).kernel();
        let j0 = Basis::from_independent_rows(f, dim, kernel.basis_vectors().map(|v| v.to_vec()).collect())?;
        Ok(JordanWithTrace { algebra, trace, unit, j0 })
    }

    fn verify(&self, linearized_jordan: bool) -> Result<(), Error> {
        let f = *self.algebra.field();
        let dim = self.algebra.dim();
        if !self.trace_of(&self.unit).is_one() {
            return Err(Error::IdentityFailure("t_J(1) ≠ 1".into()));
        }
        if !check_commutative_super(&self.algebra).pass {
            return Err(Error::IdentityFailure("product is not commutative".into()));
        }
        // Trace associativity t_J((xy)z) = t_J(x(yz)) on basis triples.
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let assoc = crate::identities::associator(&self.algebra, i, j, k);
                    if !self.trace_of(&assoc).is_zero() {
                        return Err(Error::IdentityFailure(format!(
                            "trace is not associative at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        if linearized_jordan {
            self.check_linearized_jordan()?;
        } else {
            // Characteristic 3: alternativity plus the cubic identity on
            // basis pairs (the trilinear polarization is degenerate here).
            if !check_super_alternative(&self.algebra).pass {
                return Err(Error::IdentityFailure("algebra is not alternative".into()));
            }
            for x in 0..dim {
                let ex = self.algebra.standard_basis_vector(x);
                let sq = self.algebra.mul_vectors(&ex, &ex);
                for y in 0..dim {
                    let ey = self.algebra.standard_basis_vector(y);
                    let lhs = self.algebra.mul_vectors(&self.algebra.mul_vectors(&sq, &ey), &ex);
                    let rhs = self.algebra.mul_vectors(&sq, &self.algebra.mul_vectors(&ey, &ex));
                    if lhs != rhs {
                        return Err(Error::IdentityFailure(format!("Jordan identity fails at ({x},{y})")));
                    }
                }
            }
        }
        let _ = f;
        Ok(())
    }

    /// Full linearization of (x², y, x) = 0: the cyclic sum
    /// (x₁x₂, y, x₃) + (x₂x₃, y, x₁) + (x₃x₁, y, x₂) = 0 on all basis
    /// 4-tuples, which decides the Jordan identity when 3 is invertible.
    fn check_linearized_jordan(&self) -> Result<(), Error> {
        let f = *self.algebra.field();
        let dim = self.algebra.dim();
        let alg = &self.algebra;
        let mut acc = Accum::new(f, dim);
        for x1 in 0..dim {
            for x2 in 0..dim {
                for x3 in 0..dim {
                    for y in 0..dim {
                        acc.clear();
                        for (a, b, c) in [(x1, x2, x3), (x2, x3, x1), (x3, x1, x2)] {
                            // ((ab)·y)·c − (ab)·(y·c)
                            let rab = alg.row(a, b);
                            for (l, cl) in rab {
                                for (m, cm) in alg.row(*l as usize, y) {
                                    let w = f.mul(cl, cm);
                                    for (t, ct) in alg.row(*m as usize, c) {
                                        let v = f.mul(&w, ct);
                                        acc.add(*t, &v);
                                    }
                                }
                            }
                            for (m, cm) in alg.row(y, c) {
                                for (l, cl) in rab {
                                    let w = f.neg(&f.mul(cl, cm));
                                    for (t, ct) in alg.row(*l as usize, *m as usize) {
                                        let v = f.mul(&w, ct);
                                        acc.add(*t, &v);
                                    }
                                }
                            }
                        }
                        if !acc.is_zero() {
                            return Err(Error::IdentityFailure(format!(
                                "linearized Jordan identity fails at ({x1},{x2},{x3};{y})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &FieldSpec {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn trace_of(&self, x: &[Scalar]) -> Scalar {
        let f = *self.algebra.field();
        let mut acc = f.zero();
        for (t, c) in self.trace.iter().zip(x) {
            if !t.is_zero() && !c.is_zero() {
                acc = f.add(&acc, &f.mul(t, c));
            }
        }
        acc
    }

    /// x∗y = xy − t_J(xy)·1 ∈ J⁰.
    pub fn star_product(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let f = *self.algebra.field();
        let xy = self.algebra.mul_vectors(x, y);
        let t = self.trace_of(&xy);
        xy.iter().zip(&self.unit).map(|(v, u)| f.sub(v, &f.mul(&t, u))).collect()
    }

    /// Splits x = t_J(x)·1 + x⁰.
    pub fn trace_split(&self, x: &[Scalar]) -> (Scalar, Vec<Scalar>) {
        let f = *self.algebra.field();
        let t = self.trace_of(x);
        let x0 = x.iter().zip(&self.unit).map(|(v, u)| f.sub(v, &f.mul(&t, u))).collect();
        (t, x0)
    }

    /// The inner derivation d_{x,y} = [l_x, l_y] : z ↦ x(yz) − y(xz).
    pub fn inner_derivation(&self, x: &[Scalar], y: &[Scalar]) -> LinearMap {
        self.algebra.left_mult(x).super_commutator(&self.algebra.left_mult(y))
    }

    pub fn j0_dim(&self) -> usize {
        self.j0.dim()
    }

    /// The i-th canonical J⁰ basis vector, in J coordinates.
    pub fn j0_basis_vector(&self, i: usize) -> Vec<Scalar> {
        self.j0.original().row_vec(i)
    }

    pub fn j0_coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.j0.coordinates(v)
    }

    /// The span of all d_{x,y}, x, y ∈ J⁰, as a Lie algebra on a canonical
    /// basis. (d_{1,x} = 0, so J⁰ pairs span everything.)
    pub fn inder_jordan(&self) -> Result<OperatorAlgebra, Error> {
        let m = self.j0_dim();
        let mut gens = Vec::new();
        for i in 0..m {
            for j in (i + 1)..m {
                gens.push(self.inner_derivation(&self.j0_basis_vector(i), &self.j0_basis_vector(j)));
            }
        }
        OperatorAlgebra::from_generators(*self.algebra.field(), self.dim(), &gens, "d")
    }
}

/// Extracts λ from v = λ·unit, if v is such a multiple.
fn scalar_of_unit_multiple(f: &FieldSpec, v: &[Scalar], unit: &[Scalar]) -> Option<Scalar> {
    let lead = unit.iter().position(|c| !c.is_zero())?;
    let lam = f.div(&v[lead], &unit[lead]).ok()?;
    for (a, b) in v.iter().zip(unit) {
        if *a != f.mul(&lam, b) {
            return None;
        }
    }
    Some(lam)
}

/// Solves for a two-sided unit element, if one exists.
pub fn find_unit(alg: &Superalgebra) -> Option<Vec<Scalar>> {
    let f = *alg.field();
    let dim = alg.dim();
    // u with u·e_j = e_j for all j: stack the right-multiplication matrices.
    let mut rows = Vec::with_capacity(dim * dim);
    let mut rhs = Vec::with_capacity(dim * dim);
    for j in 0..dim {
        // (u·e_j)_m = Σ_i u_i c(i,j)_m
        let mut block = vec![vec![f.zero(); dim]; dim];
        for i in 0..dim {
            for (m, c) in alg.row(i, j) {
                block[*m as usize][i] = f.add(&block[*m as usize][i], c);
            }
        }
        for (m, row) in block.into_iter().enumerate() {
            rows.push(row);
            rhs.push(if m == j { f.one() } else { f.zero() });
        }
    }
    let m = Matrix::from_rows(f, dim, rows);
    let u = m.solve(&rhs)?;
    // Verify it is also a left unit.
    for j in 0..dim {
        let e = alg.standard_basis_vector(j);
        if alg.mul_vectors(&u, &e) != e || alg.mul_vectors(&e, &u) != e {
            return None;
        }
    }
    Some(u)
}
