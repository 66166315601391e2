//! Equivariant linear maps and module utilities: intertwiner spaces, tensor
//! product actions, and adjoint operator families.

use crate::algebra::{LinearMap, Superalgebra};
use crate::error::Error;
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{Matrix, Subspace};

/// Dimension of `{f : f ∘ ρ_src(s) = ρ_tgt(s) ∘ f for every s}` where both
/// operator families are indexed by the same Lie algebra basis.
pub fn equivariant_hom_dimension(source: &[LinearMap], target: &[LinearMap]) -> Result<usize, Error> {
    Ok(equivariant_hom_space(source, target)?.dim())
}

/// The full solution space of the intertwiner equations, flattened row-major
/// as (target-dim × source-dim) matrices.
pub fn equivariant_hom_space(source: &[LinearMap], target: &[LinearMap]) -> Result<Subspace, Error> {
    if source.len() != target.len() {
        return Err(Error::DimensionMismatch("operator families must share their index set".into()));
    }
    if source.is_empty() {
        return Err(Error::Precondition("empty operator family".into()));
    }
    let ns = source[0].dim();
    let nt = target[0].dim();
    let field = *source[0].matrix.field();
    let unknowns = nt * ns; // F_{r,c}, row-major
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let minus_one = field.from_integer(-1);
    for (s, t) in source.iter().zip(target) {
        if s.dim() != ns || t.dim() != nt {
            return Err(Error::DimensionMismatch("ragged operator family".into()));
        }
        // (F·S − T·F)_{r,c} = Σ_m F_{r,m} S_{m,c} − Σ_m T_{r,m} F_{m,c} = 0.
        for r in 0..nt {
            for c in 0..ns {
                let mut row = vec![field.zero(); unknowns];
                for m in 0..ns {
                    let v = &s.matrix[(m, c)];
                    if !v.is_zero() {
                        row[r * ns + m] = field.add(&row[r * ns + m], v);
                    }
                }
                for m in 0..nt {
                    let v = &t.matrix[(r, m)];
                    if !v.is_zero() {
                        let v = field.mul(v, &minus_one);
                        row[m * ns + c] = field.add(&row[m * ns + c], &v);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return Ok(Subspace::full(field, unknowns));
    }
    Ok(Matrix::from_rows(field, unknowns, rows).kernel())
}

/// The action on V ⊗ W induced by actions on the factors:
/// ρ(x) = ρ_V(x) ⊗ 1 + 1 ⊗ ρ_W(x), with (i, j) ↦ i·dim(W) + j.
pub fn tensor_product_action(v_ops: &[LinearMap], w_ops: &[LinearMap]) -> Vec<LinearMap> {
    assert_eq!(v_ops.len(), w_ops.len());
    v_ops
        .iter()
        .zip(w_ops)
        .map(|(a, b)| {
            let field = *a.matrix.field();
            let (nv, nw) = (a.dim(), b.dim());
            let mut m = Matrix::zeros(field, nv * nw, nv * nw);
            for i in 0..nv {
                for j in 0..nw {
                    let col = i * nw + j;
                    for r in 0..nv {
                        let v = &a.matrix[(r, i)];
                        if !v.is_zero() {
                            let dst = r * nw + j;
                            m[(dst, col)] = field.add(&m[(dst, col)], v);
                        }
                    }
                    for r in 0..nw {
                        let v = &b.matrix[(r, j)];
                        if !v.is_zero() {
                            let dst = i * nw + r;
                            m[(dst, col)] = field.add(&m[(dst, col)], v);
                        }
                    }
                }
            }
            assert_eq!(a.parity, b.parity);
            LinearMap::new(m, a.parity)
        })
        .collect()
}

/// Adjoint operators ad_{e_i} of a (super)algebra under its own product: for
/// anticommutative algebras these are the left multiplications.
pub fn adjoint_operators(alg: &Superalgebra) -> Vec<LinearMap> {
    alg.left_mult_operators()
}

/// The family of zero operators on the 1-dimensional trivial module, indexed
/// like `ops`.
pub fn trivial_action(field: FieldSpec, count: usize) -> Vec<LinearMap> {
    (0..count).map(|_| LinearMap::zero(field, 1, 0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_of_trivial_with_trivial_is_one() {
        let f = FieldSpec::prime(3).unwrap();
        let src = trivial_action(f, 2);
        let tgt = trivial_action(f, 2);
        assert_eq!(equivariant_hom_dimension(&src, &tgt).unwrap(), 1);
    }

    #[test]
    fn tensor_action_matches_leibniz_on_simple_tensors() {
        let f = FieldSpec::prime(5).unwrap();
        let a = LinearMap::new(
            Matrix::from_fn(f, 2, 2, |i, j| f.from_integer((i + 2 * j) as i64)),
            0,
        );
        let b = LinearMap::new(
            Matrix::from_fn(f, 2, 2, |i, j| f.from_integer((2 * i + j + 1) as i64)),
            0,
        );
        let t = tensor_product_action(&[a.clone()], &[b.clone()]);
        // On e_0 ⊗ e_1: ρ(e_0⊗e_1) = a(e_0)⊗e_1 + e_0⊗b(e_1).
        let mut simple = vec![f.zero(); 4];
        simple[1] = f.one(); // index 0*2+1
        let out = t[0].apply(&simple);
        let ae0 = a.apply(&[f.one(), f.zero()]);
        let be1 = b.apply(&[f.zero(), f.one()]);
        let mut expected = vec![f.zero(); 4];
        for i in 0..2 {
            expected[i * 2 + 1] = f.add(&expected[i * 2 + 1], &ae0[i]);
            expected[i] = f.add(&expected[i], &be1[i]);
        }
        assert_eq!(out, expected);
    }
}
