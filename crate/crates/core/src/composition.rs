//! Unital composition algebras (the ground field k, the binarions k × k,
//! split quaternions Mat₂(k), the split Cayley algebra C(k)) with their
//! norms, traces, inner derivations D_{a,b}, and the trace-zero bracket
//! algebra s = (C⁰, [·,·]).
//!
//! Only split forms are constructed; the basis and multiplication table of
//! the split Cayley algebra are fixed as
//! (e₁, e₂, u₁, u₂, u₃, v₁, v₂, v₃) with
//! uᵢvⱼ = −δᵢⱼe₁, vᵢuⱼ = −δᵢⱼe₂, uᵢuⱼ = εᵢⱼₖvₖ, vᵢvⱼ = εᵢⱼₖuₖ,
//! and the hyperbolic norm pairing n(e₁,e₂) = 1 = n(uⱼ,vⱼ).

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::{BilinearForm, LinearMap, Superalgebra};
use crate::derivations::OperatorAlgebra;
use crate::error::Error;
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{Basis, Matrix, Subspace};
use crate::meataxe::DEFAULT_SEED;

/// The four split unital composition algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompositionKind {
    GroundField,
    Binarion,
    Matrix2,
    SplitCayley,
}

impl CompositionKind {
    pub fn dim(&self) -> usize {
        match self {
            CompositionKind::GroundField => 1,
            CompositionKind::Binarion => 2,
            CompositionKind::Matrix2 => 4,
            CompositionKind::SplitCayley => 8,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CompositionKind::GroundField => "k",
            CompositionKind::Binarion => "k×k",
            CompositionKind::Matrix2 => "Mat2(k)",
            CompositionKind::SplitCayley => "C(k)",
        }
    }
}

/// A unital composition algebra: the algebra, the polarized norm n(·,·), and
/// the unit element. Constructed only through [`build_composition`], which
/// verifies multiplicativity of the norm and the degree-2 equation.
#[derive(Debug, Clone)]
pub struct CompositionAlgebra {
    pub kind: CompositionKind,
    pub algebra: Superalgebra,
    pub norm: BilinearForm,
    pub unit: Vec<Scalar>,
}

/// Builds the split composition algebra of the given kind.
pub fn build_composition(kind: CompositionKind, field: FieldSpec) -> Result<CompositionAlgebra, Error> {
    let f = field;
    let one = f.one();
    let m_one = f.from_integer(-1);
    let (labels, entries, gram_entries): (Vec<&str>, Vec<(usize, usize, usize, Scalar)>, Vec<(usize, usize, Scalar)>) =
        match kind {
            CompositionKind::GroundField => (
                vec!["1"],
                vec![(0, 0, 0, one.clone())],
                vec![(0, 0, f.from_integer(2))],
            ),
            CompositionKind::Binarion => (
                vec!["e1", "e2"],
                vec![(0, 0, 0, one.clone()), (1, 1, 1, one.clone())],
                vec![(0, 1, one.clone())],
            ),
            CompositionKind::Matrix2 => {
                // Matrix units E11, E12, E21, E22; norm is the determinant.
                let idx = |i: usize, j: usize| -> usize {
                    match (i, j) {
                        (1, 1) => 0,
                        (1, 2) => 1,
                        (2, 1) => 2,
                        (2, 2) => 3,
                        _ => unreachable!(),
                    }
                };
                let mut entries = Vec::new();
                for i in 1..=2 {
                    for j in 1..=2 {
                        for k in 1..=2 {
                            for l in 1..=2 {
                                if j == k {
                                    entries.push((idx(i, j), idx(k, l), idx(i, l), one.clone()));
                                }
                            }
                        }
                    }
                }
                (
                    vec!["E11", "E12", "E21", "E22"],
                    entries,
                    vec![(0, 3, one.clone()), (1, 2, m_one.clone())],
                )
            }
            CompositionKind::SplitCayley => {
                let (e1, e2) = (0usize, 1usize);
                let u = |j: usize| 1 + j; // u1=2, u2=3, u3=4
                let v = |j: usize| 4 + j; // v1=5, v2=6, v3=7
                let mut entries = vec![(e1, e1, e1, one.clone()), (e2, e2, e2, one.clone())];
                for j in 1..=3 {
                    entries.push((e1, u(j), u(j), one.clone()));
                    entries.push((u(j), e2, u(j), one.clone()));
                    entries.push((e2, v(j), v(j), one.clone()));
                    entries.push((v(j), e1, v(j), one.clone()));
                    entries.push((u(j), v(j), e1, m_one.clone()));
                    entries.push((v(j), u(j), e2, m_one.clone()));
                }
                // u_i u_j = ε_ijk v_k and v_i v_j = ε_ijk u_k.
                for (i, j, k, sign) in [(1, 2, 3, 1i64), (2, 3, 1, 1), (3, 1, 2, 1), (2, 1, 3, -1), (3, 2, 1, -1), (1, 3, 2, -1)] {
                    entries.push((u(i), u(j), v(k), f.from_integer(sign)));
                    entries.push((v(i), v(j), u(k), f.from_integer(sign)));
                }
                let mut gram = vec![(e1, e2, one.clone())];
                for j in 1..=3 {
                    gram.push((u(j), v(j), one.clone()));
                }
                (vec!["e1", "e2", "u1", "u2", "u3", "v1", "v2", "v3"], entries, gram)
            }
        };

    let dim = kind.dim();
    let algebra = Superalgebra::new(
        f,
        labels.into_iter().map(String::from).collect(),
        vec![0; dim],
        None,
        entries,
    )?;
    let mut gram = Matrix::zeros(f, dim, dim);
    for (i, j, c) in gram_entries {
        gram[(i, j)] = c.clone();
        gram[(j, i)] = c;
    }
    let norm = BilinearForm::new(gram)?;
    let unit = match kind {
        CompositionKind::GroundField => vec![one.clone()],
        CompositionKind::Binarion => vec![one.clone(), one.clone()],
        CompositionKind::Matrix2 => vec![one.clone(), f.zero(), f.zero(), one.clone()],
        CompositionKind::SplitCayley => {
            let mut u = vec![f.zero(); 8];
            u[0] = one.clone();
            u[1] = one.clone();
            u
        }
    };
    let c = CompositionAlgebra { kind, algebra, norm, unit };
    c.verify_construction()?;
    Ok(c)
}

impl CompositionAlgebra {
    pub fn field(&self) -> &FieldSpec {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// The quadratic norm n(x) = ½ n(x, x).
    pub fn quadratic_norm(&self, x: &[Scalar]) -> Scalar {
        let f = *self.field();
        let half = f.inv(&f.from_integer(2)).expect("characteristic ≠ 2");
        f.mul(&half, &self.norm.eval(x, x))
    }

    /// The trace t(x) = n(x, 1).
    pub fn trace(&self, x: &[Scalar]) -> Scalar {
        self.norm.eval(x, &self.unit)
    }

    /// Kernel of the trace as a canonical subspace; dim C − 1.
    pub fn trace_zero_subspace(&self) -> Subspace {
        let f = *self.field();
        let dim = self.dim();
        let row: Vec<Scalar> = (0..dim)
            .map(|i| self.trace(&self.algebra.standard_basis_vector(i)))
            .collect();
        Matrix::from_rows(f, dim, vec![row]).kernel()
    }

    /// The fixed trace-zero basis: h = e₁ − e₂ plus the off-diagonal part.
    pub fn trace_zero_basis(&self) -> (Vec<String>, Vec<Vec<Scalar>>) {
        let f = *self.field();
        let e = |i: usize| self.algebra.standard_basis_vector(i);
        let minus = |mut a: Vec<Scalar>, b: Vec<Scalar>| -> Vec<Scalar> {
            for (x, y) in a.iter_mut().zip(b) {
                *x = f.sub(x, &y);
            }
            a
        };
        match self.kind {
            CompositionKind::GroundField => (vec![], vec![]),
            CompositionKind::Binarion => (vec!["h".into()], vec![minus(e(0), e(1))]),
            CompositionKind::Matrix2 => (
                vec!["H".into(), "E12".into(), "E21".into()],
                vec![minus(e(0), e(3)), e(1), e(2)],
            ),
            CompositionKind::SplitCayley => (
                vec!["h".into(), "u1".into(), "u2".into(), "u3".into(), "v1".into(), "v2".into(), "v3".into()],
                vec![minus(e(0), e(1)), e(2), e(3), e(4), e(5), e(6), e(7)],
            ),
        }
    }

    /// The commutator algebra s = (C⁰, [·,·]) on the fixed trace-zero basis,
    /// carrying the restricted norm.
    ///
    /// Always constructed; whether it is a Lie algebra (it is for Cayley
    /// exactly in characteristic 3) is decided by `check_super_jacobi`.
    pub fn bracket_algebra(&self) -> Result<TraceZeroBracket, Error> {
        let f = *self.field();
        let (labels, rows) = self.trace_zero_basis();
        let n = rows.len();
        let basis = Basis::from_independent_rows(f, self.dim(), rows.clone())?;
        let mut entries = Vec::new();
        for (i, a) in rows.iter().enumerate() {
            for (j, b) in rows.iter().enumerate() {
                let ab = self.algebra.mul_vectors(a, b);
                let ba = self.algebra.mul_vectors(b, a);
                let comm: Vec<Scalar> = ab.iter().zip(&ba).map(|(x, y)| f.sub(x, y)).collect();
                let coords = basis
                    .coordinates(&comm)
                    .ok_or_else(|| Error::Precondition("commutator left the trace-zero subspace".into()))?;
                for (k, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        entries.push((i, j, k, c));
                    }
                }
            }
        }
        let algebra = Superalgebra::new(f, labels, vec![0; n], None, entries)?;
        let norm = self.norm.restrict(&rows);
        Ok(TraceZeroBracket { algebra, norm, basis })
    }

    /// The inner derivation `D_{a,b}(c) = [[a,b],c] + 3(a,c,b)`.
    pub fn inner_derivation(&self, a: &[Scalar], b: &[Scalar]) -> LinearMap {
        let f = *self.field();
        let alg = &self.algebra;
        let three = f.from_integer(3);
        let ab = alg.mul_vectors(a, b);
        let ba = alg.mul_vectors(b, a);
        let comm: Vec<Scalar> = ab.iter().zip(&ba).map(|(x, y)| f.sub(x, y)).collect();
        let dim = self.dim();
        let mut m = Matrix::zeros(f, dim, dim);
        for j in 0..dim {
            let c = alg.standard_basis_vector(j);
            // [[a,b], c]
            let t1 = alg.mul_vectors(&comm, &c);
            let t2 = alg.mul_vectors(&c, &comm);
            // (a, c, b) = (ac)b − a(cb)
            let ac = alg.mul_vectors(a, &c);
            let acb = alg.mul_vectors(&ac, b);
            let cb = alg.mul_vectors(&c, b);
            let a_cb = alg.mul_vectors(a, &cb);
            for r in 0..dim {
                let assoc = f.sub(&acb[r], &a_cb[r]);
                let val = f.add(&f.sub(&t1[r], &t2[r]), &f.mul(&three, &assoc));
                m[(r, j)] = val;
            }
        }
        LinearMap::new(m, 0)
    }

    /// The linear span of all D_{a,b} as a Lie algebra on a canonical basis.
    pub fn inder_algebra(&self) -> Result<OperatorAlgebra, Error> {
        let (_, rows) = self.trace_zero_basis();
        let mut gens = Vec::new();
        for i in 0..rows.len() {
            for j in (i + 1)..rows.len() {
                gens.push(self.inner_derivation(&rows[i], &rows[j]));
            }
        }
        let span = OperatorAlgebra::from_generators(*self.field(), self.dim(), &gens, "D")?;
        if !span.all_derivations_of(&self.algebra)? {
            return Err(Error::IdentityFailure("an inner derivation fails the Leibniz rule".into()));
        }
        Ok(span)
    }

    fn verify_construction(&self) -> Result<(), Error> {
        let f = *self.field();
        let dim = self.dim();
        if !matches!(dim, 1 | 2 | 4 | 8) {
            return Err(Error::Precondition(format!("composition algebras have dim 1, 2, 4, 8; got {dim}")));
        }
        // The unit acts as identity on both sides.
        for i in 0..dim {
            let e = self.algebra.standard_basis_vector(i);
            if self.algebra.mul_vectors(&self.unit, &e) != e || self.algebra.mul_vectors(&e, &self.unit) != e {
                return Err(Error::IdentityFailure(format!("unit fails at basis element {i}")));
            }
        }
        let mut rng = StdRng::seed_from_u64(DEFAULT_SEED);
        let mut pairs: Vec<(Vec<Scalar>, Vec<Scalar>)> = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                pairs.push((self.algebra.standard_basis_vector(i), self.algebra.standard_basis_vector(j)));
            }
        }
        let bound = match f {
            FieldSpec::Prime(p) => p as i64,
            FieldSpec::Rationals => 50,
        };
        for _ in 0..100 {
            let r = |rng: &mut StdRng| -> Vec<Scalar> {
                (0..dim).map(|_| f.from_integer(rng.gen_range(0..bound))).collect()
            };
            pairs.push((r(&mut rng), r(&mut rng)));
        }
        for (a, b) in &pairs {
            // n(ab) = n(a) n(b)
            let ab = self.algebra.mul_vectors(a, b);
            let lhs = self.quadratic_norm(&ab);
            let rhs = f.mul(&self.quadratic_norm(a), &self.quadratic_norm(b));
            if lhs != rhs {
                return Err(Error::IdentityFailure("norm is not multiplicative".into()));
            }
            // a² − t(a)a + n(a)1 = 0
            let sq = self.algebra.mul_vectors(a, a);
            let t = self.trace(a);
            let nq = self.quadratic_norm(a);
            for r in 0..dim {
                let val = f.add(
                    &f.sub(&sq[r], &f.mul(&t, &a[r])),
                    &f.mul(&nq, &self.unit[r]),
                );
                if !val.is_zero() {
                    return Err(Error::IdentityFailure("degree-2 equation fails".into()));
                }
            }
        }
        Ok(())
    }
}

/// The trace-zero commutator algebra together with the restriction of the
/// polarized norm to its basis.
#[derive(Debug, Clone)]
pub struct TraceZeroBracket {
    pub algebra: Superalgebra,
    pub norm: BilinearForm,
    basis: Basis,
}

impl TraceZeroBracket {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Coordinates of an ambient vector (in C) in the trace-zero basis.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.basis.coordinates(v)
    }

    /// The i-th basis vector in ambient C coordinates.
    pub fn ambient_basis_vector(&self, i: usize) -> Vec<Scalar> {
        self.basis.original().row_vec(i)
    }
}

/// `[[a,b],b] = n(b,b)a − n(a,b)b` on all basis pairs of the trace-zero
/// bracket algebra (characteristic 3).
pub fn check_abb_identity(s: &TraceZeroBracket) -> crate::algebra::VerificationReport {
    use crate::algebra::{vec_to_strings, Counterexample, VerificationReport};
    let f = *s.algebra.field();
    let dim = s.dim();
    let mut checked = 0u64;
    for a in 0..dim {
        for b in 0..dim {
            checked += 1;
            let ea = s.algebra.standard_basis_vector(a);
            let eb = s.algebra.standard_basis_vector(b);
            let ab = s.algebra.mul_vectors(&ea, &eb);
            let lhs = s.algebra.mul_vectors(&ab, &eb);
            let nbb = s.norm.gram(b, b).clone();
            let nab = s.norm.gram(a, b).clone();
            let rhs: Vec<Scalar> = (0..dim)
                .map(|r| f.sub(&f.mul(&nbb, &ea[r]), &f.mul(&nab, &eb[r])))
                .collect();
            if lhs != rhs {
                return VerificationReport::fail(
                    "[[a,b],b] = n(b,b)a - n(a,b)b",
                    checked,
                    Counterexample { indices: vec![a, b], lhs: vec_to_strings(&lhs), rhs: vec_to_strings(&rhs) },
                );
            }
        }
    }
    crate::algebra::VerificationReport::pass("[[a,b],b] = n(b,b)a - n(a,b)b", checked)
}

/// D_{ab,c} + D_{bc,a} + D_{ca,b} = 0 on all basis triples of C.
pub fn check_d_cyclic(c: &CompositionAlgebra) -> crate::algebra::VerificationReport {
    use crate::algebra::{Counterexample, VerificationReport};
    let dim = c.dim();
    let mut checked = 0u64;
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                checked += 1;
                let (a, b, cc) = (
                    c.algebra.standard_basis_vector(i),
                    c.algebra.standard_basis_vector(j),
                    c.algebra.standard_basis_vector(k),
                );
                let ab = c.algebra.mul_vectors(&a, &b);
                let bc = c.algebra.mul_vectors(&b, &cc);
                let ca = c.algebra.mul_vectors(&cc, &a);
                let sum = c
                    .inner_derivation(&ab, &cc)
                    .add(&c.inner_derivation(&bc, &a))
                    .add(&c.inner_derivation(&ca, &b));
                if !sum.matrix.is_zero() {
                    return VerificationReport::fail(
                        "D_{ab,c} + D_{bc,a} + D_{ca,b} = 0",
                        checked,
                        Counterexample { indices: vec![i, j, k], lhs: vec!["nonzero operator".into()], rhs: vec!["0".into()] },
                    );
                }
            }
        }
    }
    VerificationReport::pass("D_{ab,c} + D_{bc,a} + D_{ca,b} = 0", checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::{check_super_jacobi, is_derivation};
    use crate::meataxe::{is_simple, spin_submodule};

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn cayley(p: u64) -> CompositionAlgebra {
        build_composition(CompositionKind::SplitCayley, gf(p)).unwrap()
    }

    #[test]
    fn all_kinds_build_over_assorted_fields() {
        for kind in [
            CompositionKind::GroundField,
            CompositionKind::Binarion,
            CompositionKind::Matrix2,
            CompositionKind::SplitCayley,
        ] {
            for f in [gf(3), gf(5), gf(7), FieldSpec::rationals()] {
                let c = build_composition(kind, f).unwrap();
                assert_eq!(c.dim(), kind.dim());
            }
        }
    }

    #[test]
    fn cayley_table_and_norm_values() {
        let c = cayley(5);
        let f = *c.field();
        let (u1, v1, e1) = (2, 5, 0);
        // u1·v1 = -e1
        let prod = c.algebra.mul_vectors(
            &c.algebra.standard_basis_vector(u1),
            &c.algebra.standard_basis_vector(v1),
        );
        let mut expected = vec![f.zero(); 8];
        expected[e1] = f.from_integer(-1);
        assert_eq!(prod, expected);
        // u1·u2 = v3
        let prod = c.algebra.mul_vectors(
            &c.algebra.standard_basis_vector(2),
            &c.algebra.standard_basis_vector(3),
        );
        let mut expected = vec![f.zero(); 8];
        expected[7] = f.one();
        assert_eq!(prod, expected);
        // n(e1, e2) = 1
        assert!(c.norm.gram(0, 1).is_one());
        // t(e1) = 1
        assert!(c.trace(&c.algebra.standard_basis_vector(0)).is_one());
    }

    #[test]
    fn binarion_and_matrix2_norms() {
        let f = gf(5);
        // n((a, b)) = ab on the binarions.
        let b = build_composition(CompositionKind::Binarion, f).unwrap();
        let x = vec![f.from_integer(3), f.from_integer(4)];
        assert_eq!(b.quadratic_norm(&x), f.from_integer(12));
        // n = det on 2×2 matrices.
        let m = build_composition(CompositionKind::Matrix2, f).unwrap();
        let x = vec![f.from_integer(1), f.from_integer(2), f.from_integer(3), f.from_integer(4)];
        assert_eq!(m.quadratic_norm(&x), f.from_integer(4 - 6));
    }

    #[test]
    fn trace_zero_dimensions() {
        assert_eq!(cayley(3).trace_zero_subspace().dim(), 7);
        let k = build_composition(CompositionKind::GroundField, gf(3)).unwrap();
        assert_eq!(k.trace_zero_subspace().dim(), 0);
        let m2 = build_composition(CompositionKind::Matrix2, gf(3)).unwrap();
        assert_eq!(m2.trace_zero_subspace().dim(), 3);
        // The fixed basis spans the same subspace.
        let c = cayley(3);
        let sub = c.trace_zero_subspace();
        for row in c.trace_zero_basis().1 {
            assert!(sub.contains(&row));
        }
    }

    #[test]
    fn bracket_c0_structure_constants() {
        let s = cayley(3).bracket_algebra().unwrap();
        let f = *s.algebra.field();
        let alg = &s.algebra;
        // basis order: h, u1, u2, u3, v1, v2, v3
        let basis = |i: usize| alg.standard_basis_vector(i);
        // [h, u1] = 2u1
        let mut want = vec![f.zero(); 7];
        want[1] = f.from_integer(2);
        assert_eq!(alg.mul_vectors(&basis(0), &basis(1)), want);
        // [u1, v1] = -h
        let mut want = vec![f.zero(); 7];
        want[0] = f.from_integer(-1);
        assert_eq!(alg.mul_vectors(&basis(1), &basis(4)), want);
        // [u1, u2] = 2v3
        let mut want = vec![f.zero(); 7];
        want[6] = f.from_integer(2);
        assert_eq!(alg.mul_vectors(&basis(1), &basis(2)), want);
        // [h, v2] = -2v2
        let mut want = vec![f.zero(); 7];
        want[5] = f.from_integer(-2);
        assert_eq!(alg.mul_vectors(&basis(0), &basis(5)), want);
    }

    #[test]
    fn s_is_lie_in_char_3_but_not_char_5() {
        let s3 = cayley(3).bracket_algebra().unwrap();
        assert!(check_super_jacobi(&s3.algebra).pass);
        let s5 = cayley(5).bracket_algebra().unwrap();
        let rep = check_super_jacobi(&s5.algebra);
        assert!(!rep.pass);
        // The counterexample triple really violates the identity.
        let ce = rep.counterexample.unwrap();
        let sum = crate::identities::jacobi_sum_on_vectors(
            &s5.algebra,
            &s5.algebra.standard_basis_vector(ce.indices[0]),
            &s5.algebra.standard_basis_vector(ce.indices[1]),
            &s5.algebra.standard_basis_vector(ce.indices[2]),
        )
        .unwrap();
        assert!(sum.iter().any(|c| !c.is_zero()));
    }

    #[test]
    fn inner_derivation_properties() {
        let c = cayley(3);
        let f = *c.field();
        let (labels, rows) = c.trace_zero_basis();
        assert_eq!(labels[0], "h");
        // D_{1,b} = 0
        let d = c.inner_derivation(&c.unit, &rows[1]);
        assert!(d.matrix.is_zero());
        // D_{a,b} + D_{b,a} = 0
        let d1 = c.inner_derivation(&rows[0], &rows[4]);
        let d2 = c.inner_derivation(&rows[4], &rows[0]);
        assert!(d1.add(&d2).matrix.is_zero());
        // char 3: D_{a,b} = ad_{[a,b]}
        let a = &rows[2];
        let b = &rows[5];
        let ab = c.algebra.mul_vectors(a, b);
        let ba = c.algebra.mul_vectors(b, a);
        let comm: Vec<Scalar> = ab.iter().zip(&ba).map(|(x, y)| f.sub(x, y)).collect();
        let d = c.inner_derivation(a, b);
        for j in 0..8 {
            let e = c.algebra.standard_basis_vector(j);
            let lhs = d.apply(&e);
            let ce = c.algebra.mul_vectors(&comm, &e);
            let ec = c.algebra.mul_vectors(&e, &comm);
            let rhs: Vec<Scalar> = ce.iter().zip(&ec).map(|(x, y)| f.sub(x, y)).collect();
            assert_eq!(lhs, rhs);
        }
        // And it is a derivation.
        assert!(is_derivation(&c.algebra, &d).unwrap().pass);
    }

    #[test]
    fn inder_dimensions() {
        assert_eq!(cayley(5).inder_algebra().unwrap().dim(), 14);
        assert_eq!(cayley(3).inder_algebra().unwrap().dim(), 7);
        let m2 = build_composition(CompositionKind::Matrix2, gf(5)).unwrap();
        assert_eq!(m2.inder_algebra().unwrap().dim(), 3);
        let b = build_composition(CompositionKind::Binarion, gf(5)).unwrap();
        assert_eq!(b.inder_algebra().unwrap().dim(), 0);
    }

    #[test]
    fn d_cyclic_holds_on_every_kind() {
        for kind in [
            CompositionKind::GroundField,
            CompositionKind::Binarion,
            CompositionKind::Matrix2,
            CompositionKind::SplitCayley,
        ] {
            let c = build_composition(kind, gf(3)).unwrap();
            assert!(check_d_cyclic(&c).pass);
        }
    }

    #[test]
    fn abb_identity_char3() {
        let s = cayley(3).bracket_algebra().unwrap();
        assert!(check_abb_identity(&s).pass);
    }

    #[test]
    fn norm_invariance_under_inner_derivations() {
        let c = cayley(3);
        let f = *c.field();
        let inder = c.inder_algebra().unwrap();
        for d in &inder.operators {
            for i in 0..8 {
                for j in 0..8 {
                    let ei = c.algebra.standard_basis_vector(i);
                    let ej = c.algebra.standard_basis_vector(j);
                    let lhs = f.add(&c.norm.eval(&d.apply(&ei), &ej), &c.norm.eval(&ei, &d.apply(&ej)));
                    assert!(lhs.is_zero());
                }
            }
        }
    }

    #[test]
    fn s_simple_dim7_zero_center_over_gf3() {
        let s = cayley(3).bracket_algebra().unwrap();
        assert_eq!(s.dim(), 7);
        assert!(is_simple(&s.algebra, DEFAULT_SEED).unwrap());
        assert!(s.algebra.center().is_zero());
        assert_eq!(s.algebra.derived_subalgebra().dim(), 7);
        // Cross-check: every basis vector spins to the whole space.
        let ops = s.algebra.left_mult_operators();
        for i in 0..7 {
            let spun = spin_submodule(*s.algebra.field(), 7, &ops, &[s.algebra.standard_basis_vector(i)]);
            assert!(spun.is_full());
        }
    }

    #[test]
    fn s_module_spin_of_u1_tensor_v1_generates() {
        let s = cayley(3).bracket_algebra().unwrap();
        let f = *s.algebra.field();
        let ad = crate::homs::adjoint_operators(&s.algebra);
        let ops = crate::homs::tensor_product_action(&ad, &ad);
        // u1 ⊗ v1 at index 1*7 + 4.
        let mut seed = vec![f.zero(); 49];
        seed[7 + 4] = f.one();
        let spun = spin_submodule(f, 49, &ops, &[seed]);
        assert!(spun.is_full());
    }

    #[test]
    fn hom_dimensions_over_gf3() {
        let s = cayley(3).bracket_algebra().unwrap();
        let ad = crate::homs::adjoint_operators(&s.algebra);
        let tensor = crate::homs::tensor_product_action(&ad, &ad);
        let hom_s = crate::homs::equivariant_hom_dimension(&tensor, &ad).unwrap();
        assert_eq!(hom_s, 1);
        let trivial = crate::homs::trivial_action(*s.algebra.field(), 7);
        let hom_k = crate::homs::equivariant_hom_dimension(&tensor, &trivial).unwrap();
        assert_eq!(hom_k, 1);
    }
}
