//! Submodule spinning and irreducibility testing over prime fields.
//!
//! Irreducibility uses Norton's criterion in the sound nullity-one form: a
//! random element θ of the enveloping algebra with nullity exactly 1 whose
//! kernel vector spins to the whole space, and whose transpose kernel vector
//! spins to the whole space under the transposed operators, certifies
//! irreducibility. Reducibility is certified by an explicit proper invariant
//! subspace, re-verified before it is returned.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::{LinearMap, Superalgebra};
use crate::error::Error;
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{Echelon, Matrix, Subspace};

/// Default seed for all randomized routines, recorded in certificates.
pub const DEFAULT_SEED: u64 = 0xC3A1;

const MAX_ATTEMPTS: u64 = 200;

/// Least subspace containing `seeds` and invariant under all `operators`.
pub fn spin_submodule(field: FieldSpec, dim: usize, operators: &[LinearMap], seeds: &[Vec<Scalar>]) -> Subspace {
    let mut ech = Echelon::new(field, dim);
    let mut queue: Vec<Vec<Scalar>> = Vec::new();
    for s in seeds {
        assert_eq!(s.len(), dim, "seed length");
        if ech.insert(s.clone()) {
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        if ech.dim() == dim {
            break;
        }
        for op in operators {
            let w = op.apply(&v);
            if ech.insert(w.clone()) {
                queue.push(w);
                if ech.dim() == dim {
                    break;
                }
            }
        }
    }
    let sub = ech.into_subspace();
    #[cfg(debug_assertions)]
    {
        for s in seeds {
            debug_assert!(sub.contains(s), "spin lost a seed");
        }
        if sub.dim() < dim {
            for op in operators {
                for v in sub.basis_vectors() {
                    debug_assert!(sub.contains(&op.apply(v)), "spin not invariant");
                }
            }
        }
    }
    sub
}

/// Outcome of the irreducibility test.
#[derive(Debug, Clone)]
pub enum Irreducibility {
    Irreducible(NortonWitness),
    Reducible(Subspace),
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible(_))
    }
}

/// The witnessing element of the enveloping algebra: which words with which
/// coefficients were summed, plus the seed that produced them.
#[derive(Debug, Clone, serde::Serialize)]
pub struct NortonWitness {
    pub seed: u64,
    pub attempt: u64,
    /// Words over the generator indices, each with a scalar coefficient.
    pub words: Vec<(Vec<usize>, String)>,
}

/// Decides whether the module k^dim under `operators` is irreducible.
///
/// Only prime fields are supported: the success probability of random
/// enveloping-algebra elements needs a finite field.
pub fn is_irreducible_module(
    field: FieldSpec,
    dim: usize,
    operators: &[LinearMap],
    seed: u64,
) -> Result<Irreducibility, Error> {
    let FieldSpec::Prime(_) = field else {
        return Err(Error::UnsupportedField("irreducibility testing needs a prime field".into()));
    };
    if dim == 0 {
        return Err(Error::DimensionMismatch("zero-dimensional module".into()));
    }
    if dim == 1 {
        return Ok(Irreducibility::Irreducible(NortonWitness { seed, attempt: 0, words: Vec::new() }));
    }
    if operators.is_empty() {
        // Every line is invariant.
        let line = Subspace::from_vectors(field, dim, vec![unit_vector(field, dim, 0)]);
        return Ok(Irreducibility::Reducible(line));
    }

    let transposed: Vec<LinearMap> = operators
        .iter()
        .map(|op| LinearMap::new(op.matrix.transpose(), op.parity))
        .collect();

    let mut rng = StdRng::seed_from_u64(seed);
    for attempt in 0..MAX_ATTEMPTS {
        let (theta, words) = random_envelope_element(field, dim, operators, &mut rng);
        let kernel = theta.kernel();
        if kernel.dim() == 0 {
            continue;
        }
        // Any kernel vector spinning to a proper subspace certifies
        // reducibility regardless of the nullity.
        for v in kernel.basis_vectors() {
            let spun = spin_submodule(field, dim, operators, &[v.to_vec()]);
            if !spun.is_full() {
                verify_invariant(&spun, operators);
                return Ok(Irreducibility::Reducible(spun));
            }
        }
        // Transpose side: a proper spin there annihilates a proper invariant
        // subspace of the original module.
        let t_kernel = theta.transpose().kernel();
        let w = t_kernel.basis_vectors().next().expect("nullity(θᵀ) = nullity(θ) > 0");
        let t_spun = spin_submodule(field, dim, &transposed, &[w.to_vec()]);
        if !t_spun.is_full() {
            let ann = t_spun.perp();
            verify_invariant(&ann, operators);
            if ann.is_zero() || ann.is_full() {
                return Err(Error::Inconclusive(attempt));
            }
            return Ok(Irreducibility::Reducible(ann));
        }
        if kernel.dim() == 1 {
            // Norton's criterion applies: both spins full with nullity one.
            return Ok(Irreducibility::Irreducible(NortonWitness { seed, attempt, words }));
        }
        // Nullity > 1 with all spins full is inconclusive; draw another θ.
    }
    Err(Error::Inconclusive(MAX_ATTEMPTS))
}

fn verify_invariant(sub: &Subspace, operators: &[LinearMap]) {
    debug_assert!(!sub.is_zero() && !sub.is_full(), "certificate must be proper and nonzero");
    for op in operators {
        for v in sub.basis_vectors() {
            assert!(sub.contains(&op.apply(v)), "certificate subspace is not invariant");
        }
    }
}

/// A random element of the enveloping algebra: a random linear combination
/// of all generators plus a few scaled words of length 2 or 3, so that the
/// element is generic in the envelope rather than concentrated on a few
/// nilpotent pieces.
fn random_envelope_element(
    field: FieldSpec,
    dim: usize,
    operators: &[LinearMap],
    rng: &mut StdRng,
) -> (Matrix, Vec<(Vec<usize>, String)>) {
    let p = field.characteristic();
    let mut acc = Matrix::zeros(field, dim, dim);
    let mut words = Vec::new();
    for (i, op) in operators.iter().enumerate() {
        let c = rng.gen_range(0..p);
        if c != 0 {
            let coeff = field.from_integer(c as i64);
            acc = acc.add_matrix(&op.matrix.scaled(&coeff));
            words.push((vec![i], coeff.to_string()));
        }
    }
    let terms = rng.gen_range(2..=4usize);
    for _ in 0..terms {
        let len = rng.gen_range(2..=3usize);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..operators.len())).collect();
        let coeff = field.from_integer(rng.gen_range(1..p) as i64);
        let mut m = operators[word[0]].matrix.clone();
        for &g in &word[1..] {
            m = m.matmul(&operators[g].matrix);
        }
        acc = acc.add_matrix(&m.scaled(&coeff));
        words.push((word, coeff.to_string()));
    }
    (acc, words)
}

fn unit_vector(field: FieldSpec, dim: usize, i: usize) -> Vec<Scalar> {
    (0..dim).map(|t| if t == i { field.one() } else { field.zero() }).collect()
}

/// An algebra is simple iff its table is nonzero and its adjoint module (left
/// and right multiplications together) is irreducible: invariant subspaces
/// of that module are exactly the two-sided ideals.
pub fn is_simple(alg: &Superalgebra, seed: u64) -> Result<bool, Error> {
    if alg.table_is_zero() {
        return Ok(false);
    }
    let mut ops = alg.left_mult_operators();
    ops.extend(alg.right_mult_operators());
    Ok(is_irreducible_module(*alg.field(), alg.dim(), &ops, seed)?.is_irreducible())
}

/// Spins every basis vector and collects the inclusion-minimal ideals found.
/// For a direct sum of simple ideals this recovers the summands.
pub fn minimal_basis_ideals(alg: &Superalgebra) -> Vec<Subspace> {
    let field = *alg.field();
    let dim = alg.dim();
    let mut ops = alg.left_mult_operators();
    ops.extend(alg.right_mult_operators());
    let mut spins: Vec<Subspace> = Vec::new();
    for i in 0..dim {
        let s = spin_submodule(field, dim, &ops, &[alg.standard_basis_vector(i)]);
        if !spins.contains(&s) {
            spins.push(s);
        }
    }
    spins
        .iter()
        .filter(|s| !spins.iter().any(|t| t != *s && s.contains_subspace(t)))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    #[test]
    fn spin_trivial_cases() {
        let f = gf3();
        let id = LinearMap::new(Matrix::identity(f, 3), 0);
        // Seeds spanning the space give the whole space.
        let seeds: Vec<Vec<Scalar>> = (0..3).map(|i| unit_vector(f, 3, i)).collect();
        assert!(spin_submodule(f, 3, &[id.clone()], &seeds).is_full());
        // The zero seed spins to the zero subspace.
        let zero = vec![f.zero(); 3];
        assert!(spin_submodule(f, 3, &[id], &[zero]).is_zero());
    }

    #[test]
    fn identity_operators_leave_lines_invariant() {
        let f = gf3();
        let id = LinearMap::new(Matrix::identity(f, 2), 0);
        let out = is_irreducible_module(f, 2, &[id], DEFAULT_SEED).unwrap();
        match out {
            Irreducibility::Reducible(s) => assert_eq!(s.dim(), 1),
            _ => panic!("identity module of dim 2 is reducible"),
        }
    }

    #[test]
    fn abelian_adjoint_is_reducible_and_not_simple() {
        let f = gf3();
        let a = Superalgebra::abelian(f, vec!["a".into(), "b".into()], vec![0, 0]);
        assert!(!is_simple(&a, DEFAULT_SEED).unwrap());
        let ops = a.left_mult_operators();
        assert!(!is_irreducible_module(f, 2, &ops, DEFAULT_SEED).unwrap().is_irreducible());
    }

    #[test]
    fn reducible_certificates_are_invariant() {
        // A module with an invariant line: upper-triangular action.
        let f = gf3();
        let mut m = Matrix::zeros(f, 3, 3);
        m[(0, 0)] = f.one();
        m[(0, 1)] = f.one();
        m[(1, 1)] = f.from_integer(2);
        m[(2, 2)] = f.one();
        let op = LinearMap::new(m, 0);
        match is_irreducible_module(f, 3, &[op.clone()], DEFAULT_SEED).unwrap() {
            Irreducibility::Reducible(sub) => {
                assert!(sub.dim() > 0 && sub.dim() < 3);
                for v in sub.basis_vectors() {
                    assert!(sub.contains(&op.apply(v)));
                }
            }
            Irreducibility::Irreducible(_) => panic!("triangular module is reducible"),
        }
    }

    #[test]
    fn annihilator_of_transpose_spin_is_invariant() {
        // The logic behind the transpose branch: functionals spun under the
        // transposed operators annihilate an invariant subspace.
        let f = gf3();
        let mut m = Matrix::zeros(f, 3, 3);
        m[(0, 1)] = f.one();
        m[(1, 2)] = f.from_integer(2);
        let op = LinearMap::new(m.clone(), 0);
        let t = LinearMap::new(m.transpose(), 0);
        // e₂ spans ker(opᵀ); its transpose spin stays proper.
        let w = spin_submodule(f, 3, &[t], &[unit_vector(f, 3, 2)]);
        let ann = w.perp();
        assert!(ann.dim() > 0 && ann.dim() < 3);
        for v in ann.basis_vectors() {
            assert!(ann.contains(&op.apply(v)));
        }
    }

    #[test]
    fn rationals_are_rejected() {
        let f = FieldSpec::rationals();
        let id = LinearMap::new(Matrix::identity(f, 2), 0);
        assert!(matches!(
            is_irreducible_module(f, 2, &[id], DEFAULT_SEED),
            Err(Error::UnsupportedField(_))
        ));
    }
}
