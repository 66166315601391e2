//! Canonical operator spans and derivation algebras.
//!
//! Operator families (inner derivations, full derivation algebras, the
//! operators d_{a,b}) are canonicalized by RREF of their flattened matrices,
//! split by parity: the basis is the set of pivot rows, so coordinates of any
//! operator in the span are read off at the pivot positions. The span then
//! carries the structure of a Lie superalgebra under the super-commutator.

use crate::algebra::{LinearMap, Parity, Superalgebra};
use crate::error::Error;
use crate::field::{FieldSpec, Scalar};
use crate::identities::is_derivation;
use crate::linalg::{Echelon, Matrix, Subspace};

/// A Lie superalgebra of operators: the abstract algebra on a canonical RREF
/// basis together with the concrete matrices realizing it.
#[derive(Debug, Clone)]
pub struct OperatorAlgebra {
    /// Structure constants of the super-commutator on the canonical basis.
    pub algebra: Superalgebra,
    /// Concrete operator per basis element, in basis order (even rows first).
    pub operators: Vec<LinearMap>,
    even: Subspace,
    odd: Subspace,
    space_dim: usize,
}

impl OperatorAlgebra {
    /// RREF-canonicalizes the span of the generators (split by parity) and
    /// computes the super-commutator structure constants.
    ///
    /// Fails when the span is not closed under the super-commutator.
    pub fn from_generators(
        field: FieldSpec,
        space_dim: usize,
        generators: &[LinearMap],
        label_prefix: &str,
    ) -> Result<Self, Error> {
        let n2 = space_dim * space_dim;
        let mut even = Echelon::new(field, n2);
        let mut odd = Echelon::new(field, n2);
        for g in generators {
            if g.dim() != space_dim {
                return Err(Error::DimensionMismatch("generator size".into()));
            }
            let flat = g.flatten();
            match g.parity {
                0 => even.insert(flat),
                _ => odd.insert(flat),
            };
        }
        let even = even.into_subspace();
        let odd = odd.into_subspace();
        Self::from_canonical(field, space_dim, even, odd, label_prefix)
    }

    fn from_canonical(
        field: FieldSpec,
        space_dim: usize,
        even: Subspace,
        odd: Subspace,
        label_prefix: &str,
    ) -> Result<Self, Error> {
        let mut operators = Vec::new();
        for v in even.basis_vectors() {
            operators.push(LinearMap::new(unflatten(field, space_dim, v), 0));
        }
        for v in odd.basis_vectors() {
            operators.push(LinearMap::new(unflatten(field, space_dim, v), 1));
        }
        let dim = operators.len();
        let labels: Vec<String> = (0..dim).map(|i| format!("{label_prefix}{i}")).collect();
        let parity: Vec<Parity> = operators.iter().map(|m| m.parity).collect();

        let coords = |map: &LinearMap| -> Option<Vec<Scalar>> {
            let flat = map.flatten();
            let (sub, offset) = if map.parity == 0 { (&even, 0) } else { (&odd, even.dim()) };
            let c = sub.coordinates(&flat)?;
            let mut out = vec![field.zero(); dim];
            for (r, v) in c.into_iter().enumerate() {
                out[offset + r] = v;
            }
            Some(out)
        };

        let mut entries = Vec::new();
        for (a, ma) in operators.iter().enumerate() {
            for (b, mb) in operators.iter().enumerate() {
                let comm = ma.super_commutator(mb);
                let c = coords(&comm).ok_or_else(|| {
                    Error::Precondition(format!("operator span is not closed under the commutator at ({a},{b})"))
                })?;
                for (k, v) in c.into_iter().enumerate() {
                    if !v.is_zero() {
                        entries.push((a, b, k, v));
                    }
                }
            }
        }
        let algebra = Superalgebra::new(field, labels, parity, None, entries)?;
        Ok(OperatorAlgebra { algebra, operators, even, odd, space_dim })
    }

    pub fn dim(&self) -> usize {
        self.operators.len()
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    pub fn even_dim(&self) -> usize {
        self.even.dim()
    }

    pub fn odd_dim(&self) -> usize {
        self.odd.dim()
    }

    /// Coordinates of a parity-homogeneous operator in the canonical basis.
    pub fn coordinates(&self, map: &LinearMap) -> Option<Vec<Scalar>> {
        let field = *map.matrix.field();
        let flat = map.flatten();
        let (sub, offset) = if map.parity == 0 { (&self.even, 0) } else { (&self.odd, self.even.dim()) };
        let c = sub.coordinates(&flat)?;
        let mut out = vec![field.zero(); self.dim()];
        for (r, v) in c.into_iter().enumerate() {
            out[offset + r] = v;
        }
        Some(out)
    }

    pub fn contains(&self, map: &LinearMap) -> bool {
        self.coordinates(map).is_some()
    }

    /// The flattened even/odd spans, for subspace comparisons.
    pub fn even_span(&self) -> &Subspace {
        &self.even
    }

    pub fn odd_span(&self) -> &Subspace {
        &self.odd
    }

    /// Verifies that every basis operator is a derivation of `alg`.
    pub fn all_derivations_of(&self, alg: &Superalgebra) -> Result<bool, Error> {
        for op in &self.operators {
            if !is_derivation(alg, op)?.pass {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn unflatten(field: FieldSpec, n: usize, flat: &[Scalar]) -> Matrix {
    Matrix::from_fn(field, n, n, |i, j| flat[i * n + j].clone())
}

/// Solves the signed Leibniz system and returns the full Lie superalgebra of
/// derivations of `alg` on a canonical basis.
pub fn compute_derivation_algebra(alg: &Superalgebra) -> Result<OperatorAlgebra, Error> {
    let field = *alg.field();
    let dim = alg.dim();
    let has_odd = alg.parity().iter().any(|&p| p == 1);
    let mut generators = Vec::new();
    for sigma in 0..=(has_odd as u8) {
        for m in derivation_space(alg, sigma)? {
            generators.push(m);
        }
    }
    OperatorAlgebra::from_generators(field, dim, &generators, "D")
}

/// Kernel of the Leibniz system for derivations of parity `sigma`.
fn derivation_space(alg: &Superalgebra, sigma: Parity) -> Result<Vec<LinearMap>, Error> {
    let field = *alg.field();
    let dim = alg.dim();
    let unknowns = dim * dim; // D_{r,c}, row-major
    let mut rows: Vec<Vec<Scalar>> = Vec::new();

    // Parity block constraints: D maps parity p to parity p + sigma.
    for r in 0..dim {
        for c in 0..dim {
            if alg.parity_of(r) != (alg.parity_of(c) + sigma) % 2 {
                let mut row = vec![field.zero(); unknowns];
                row[r * dim + c] = field.one();
                rows.push(row);
            }
        }
    }

    // Leibniz: for all basis pairs (i,j) and components m:
    //   Σ_l c(i,j)_l D_{m,l} − Σ_r c(r,j)_m D_{r,i} − ε Σ_r c(i,r)_m D_{r,j} = 0
    let minus_one = field.from_integer(-1);
    for i in 0..dim {
        let eps_negates = sigma & alg.parity_of(i) == 1;
        for j in 0..dim {
            let mut eq = vec![vec![field.zero(); unknowns]; dim];
            for (l, c) in alg.row(i, j) {
                for (m, eq_m) in eq.iter_mut().enumerate() {
                    eq_m[m * dim + *l as usize] = field.add(&eq_m[m * dim + *l as usize], c);
                }
            }
            for r in 0..dim {
                for (m, c) in alg.row(r, j) {
                    let m = *m as usize;
                    let v = field.mul(c, &minus_one);
                    eq[m][r * dim + i] = field.add(&eq[m][r * dim + i], &v);
                }
                for (m, c) in alg.row(i, r) {
                    let m = *m as usize;
                    let v = if eps_negates { c.clone() } else { field.mul(c, &minus_one) };
                    eq[m][r * dim + j] = field.add(&eq[m][r * dim + j], &v);
                }
            }
            for eq_m in eq {
                if eq_m.iter().any(|x| !x.is_zero()) {
                    rows.push(eq_m);
                }
            }
        }
    }

    if rows.is_empty() {
        rows.push(vec![field.zero(); unknowns]);
    }
    let system = Matrix::from_rows(field, unknowns, rows);
    let kernel = system.kernel();
    Ok(kernel
        .basis_vectors()
        .map(|v| LinearMap::new(unflatten(field, dim, v), sigma))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivations_of_the_ground_field_are_zero() {
        let f = FieldSpec::prime(5).unwrap();
        let k = Superalgebra::new(f, vec!["1".into()], vec![0], None, vec![(0, 0, 0, f.one())]).unwrap();
        let der = compute_derivation_algebra(&k).unwrap();
        assert_eq!(der.dim(), 0);
    }

    #[test]
    fn operator_span_canonical_and_closed() {
        // sl2-like span: ad-matrices of a 2-dim nonabelian Lie algebra
        // [x, y] = y: L_x = diag over (x,y)...
        let f = FieldSpec::prime(5).unwrap();
        let alg = Superalgebra::new(
            f,
            vec!["x".into(), "y".into()],
            vec![0, 0],
            None,
            vec![(0, 1, 1, f.one()), (1, 0, 1, f.from_integer(-1))],
        )
        .unwrap();
        let gens: Vec<LinearMap> = alg.left_mult_operators();
        let span = OperatorAlgebra::from_generators(f, 2, &gens, "D").unwrap();
        assert_eq!(span.dim(), 2);
        for op in &span.operators {
            assert!(span.contains(op));
        }
        // The bracket in the span reproduces super-commutators.
        let comm = span.operators[0].super_commutator(&span.operators[1]);
        assert!(span.contains(&comm));
    }
}
