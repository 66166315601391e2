//! Shestakov's simple commutative alternative superalgebras over fields of
//! characteristic 3: the composition superalgebra B(1,2), the divided power
//! algebras Γ = O(1;N) with the lowering derivation D, and B(Γ, D, 0).
//!
//! B(Γ, D, 0) has B₀ = Γ, B₁ = Γu with a(bu) = (ab)u = (au)b and
//! (au)(bu) = aD(b) − D(a)b, and is simple exactly when Γ has no proper
//! D-invariant ideal. The whole family is consistently ℤ-graded by
//! deg t⁽ʳ⁾ = 2r, deg u = −1.

use crate::algebra::{LinearMap, Superalgebra};
use crate::error::Error;
use crate::field::{binomial, FieldSpec};
use crate::linalg::Matrix;
use crate::meataxe::{is_irreducible_module, spin_submodule, Irreducibility};

fn require_char3(field: &FieldSpec) -> Result<(), Error> {
    if field.characteristic() != 3 {
        return Err(Error::UnsupportedField(format!(
            "this construction is specific to characteristic 3, got characteristic {}",
            field.characteristic()
        )));
    }
    Ok(())
}

/// The three-dimensional composition superalgebra B(1,2): basis (1, u, v),
/// parities (0, 1, 1), u² = v² = 0, uv = −vu = 1.
pub fn build_b12(field: FieldSpec) -> Result<Superalgebra, Error> {
    require_char3(&field)?;
    let one = field.one();
    let m_one = field.from_integer(-1);
    Superalgebra::new(
        field,
        vec!["1".into(), "u".into(), "v".into()],
        vec![0, 1, 1],
        None,
        vec![
            (0, 0, 0, one.clone()),
            (0, 1, 1, one.clone()),
            (1, 0, 1, one.clone()),
            (0, 2, 2, one.clone()),
            (2, 0, 2, one.clone()),
            (1, 2, 0, one),
            (2, 1, 0, m_one),
        ],
    )
}

/// The divided power algebra Γ = O(1;N) with its lowering derivation D.
#[derive(Debug, Clone)]
pub struct DividedPowerAlgebra {
    pub n: u32,
    /// dim 3^N, basis t⁽⁰⁾ … t⁽³ᴺ⁻¹⁾, graded by deg t⁽ʳ⁾ = 2r.
    pub algebra: Superalgebra,
    /// D : t⁽ʳ⁾ ↦ t⁽ʳ⁻¹⁾, t⁽⁰⁾ ↦ 0.
    pub derivation: LinearMap,
}

/// Builds Γ = O(1;N): t⁽ʳ⁾t⁽ˢ⁾ = C(r+s, r)·t⁽ʳ⁺ˢ⁾, zero when r+s exceeds
/// 3^N − 1.
pub fn build_divided_powers(n: u32, field: FieldSpec) -> Result<DividedPowerAlgebra, Error> {
    require_char3(&field)?;
    if n == 0 {
        return Err(Error::Precondition("N must be at least 1".into()));
    }
    let dim = 3usize.pow(n);
    let labels: Vec<String> = (0..dim).map(|r| format!("t({r})")).collect();
    let degree: Vec<i64> = (0..dim).map(|r| 2 * r as i64).collect();
    let mut entries = Vec::new();
    for r in 0..dim {
        for s in 0..dim {
            if r + s < dim {
                let c = binomial(r as u64, s as u64, &field);
                if !c.is_zero() {
                    entries.push((r, s, r + s, c));
                }
            }
        }
    }
    let algebra = Superalgebra::new(field, labels, vec![0; dim], Some(degree), entries)?;
    let mut d = Matrix::zeros(field, dim, dim);
    for r in 1..dim {
        d[(r - 1, r)] = field.one();
    }
    let derivation = LinearMap::new(d, 0);
    let out = DividedPowerAlgebra { n, algebra, derivation };
    debug_assert!(crate::identities::is_derivation(&out.algebra, &out.derivation).unwrap().pass);
    Ok(out)
}

/// B(Γ, D, 0): even part Γ, odd part Γu.
#[derive(Debug, Clone)]
pub struct BGammaD {
    pub base: DividedPowerAlgebra,
    /// dim 2·3^N, graded by deg t⁽ʳ⁾ = 2r, deg(t⁽ʳ⁾u) = 2r − 1.
    pub algebra: Superalgebra,
}

/// Builds B(Γ, D, 0) on the basis t⁽⁰⁾,…,t⁽³ᴺ⁻¹⁾, t⁽⁰⁾u,…,t⁽³ᴺ⁻¹⁾u.
pub fn build_b_gamma(base: &DividedPowerAlgebra) -> Result<BGammaD, Error> {
    let field = *base.algebra.field();
    let g = 3usize.pow(base.n);
    let mut labels: Vec<String> = base.algebra.labels().to_vec();
    labels.extend((0..g).map(|r| format!("t({r})u")));
    let mut parity = vec![0u8; g];
    parity.extend(vec![1u8; g]);
    let mut degree: Vec<i64> = (0..g).map(|r| 2 * r as i64).collect();
    degree.extend((0..g).map(|r| 2 * r as i64 - 1));

    let mut entries = Vec::new();
    let gamma_row = |r: usize, s: usize| base.algebra.row(r, s);
    for r in 0..g {
        for s in 0..g {
            // Γ · Γ.
            for (k, c) in gamma_row(r, s) {
                entries.push((r, s, *k as usize, c.clone()));
            }
            // a(bu) = (ab)u and (au)b = (ab)u.
            for (k, c) in gamma_row(r, s) {
                entries.push((r, g + s, g + *k as usize, c.clone()));
                entries.push((g + s, r, g + *k as usize, c.clone()));
            }
            // (au)(bu) = aD(b) − D(a)b.
            let adb = base.algebra.mul_basis_vec(r, &base.derivation.apply(&base.algebra.standard_basis_vector(s)));
            let dab = base.algebra.mul_vec_basis(&base.derivation.apply(&base.algebra.standard_basis_vector(r)), s);
            for (k, (x, y)) in adb.iter().zip(&dab).enumerate() {
                let c = field.sub(x, y);
                if !c.is_zero() {
                    entries.push((g + r, g + s, k, c));
                }
            }
        }
    }
    let algebra = Superalgebra::new(field, labels, parity, Some(degree), entries)?;
    Ok(BGammaD { base: base.clone(), algebra })
}

/// Whether Γ has no proper ideal invariant under `d`: irreducibility of Γ
/// under its left multiplications together with the derivation.
pub fn check_d_simple(gamma: &Superalgebra, d: &LinearMap, seed: u64) -> Result<bool, Error> {
    let mut ops = gamma.left_mult_operators();
    ops.push(d.clone());
    Ok(is_irreducible_module(*gamma.field(), gamma.dim(), &ops, seed)?.is_irreducible())
}

/// Re-export of the generic simplicity test for these instances.
pub fn is_simple_super(alg: &Superalgebra, seed: u64) -> Result<bool, Error> {
    crate::meataxe::is_simple(alg, seed)
}

/// Certified variant of [`check_d_simple`] for cross-checking: also spins
/// every basis vector and insists each spin is the whole space.
pub fn check_d_simple_both_ways(gamma: &Superalgebra, d: &LinearMap, seed: u64) -> Result<bool, Error> {
    let field = *gamma.field();
    let dim = gamma.dim();
    let mut ops = gamma.left_mult_operators();
    ops.push(d.clone());
    let norton = is_irreducible_module(field, dim, &ops, seed)?;
    let spins_full = (0..dim).all(|i| {
        spin_submodule(field, dim, &ops, &[gamma.standard_basis_vector(i)]).is_full()
    });
    match norton {
        Irreducibility::Irreducible(_) => Ok(spins_full),
        Irreducibility::Reducible(_) => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Scalar;
    use crate::identities::{
        check_commutative_super, check_jacobi_a_identity, check_super_alternative,
    };
    use crate::jordan::find_unit;
    use crate::meataxe::DEFAULT_SEED;

    fn gf3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    #[test]
    fn b12_table() {
        let b = build_b12(gf3()).unwrap();
        let f = *b.field();
        let (u, v) = (b.standard_basis_vector(1), b.standard_basis_vector(2));
        // u·v = 1
        assert_eq!(b.mul_vectors(&u, &v), b.standard_basis_vector(0));
        // v·u = -1
        let mut m_one = vec![f.zero(); 3];
        m_one[0] = f.from_integer(-1);
        assert_eq!(b.mul_vectors(&v, &u), m_one);
        // u² = 0
        assert!(b.mul_vectors(&u, &u).iter().all(Scalar::is_zero));
        assert_eq!(find_unit(&b).unwrap(), b.standard_basis_vector(0));
    }

    #[test]
    fn b12_is_commutative_alternative_super() {
        let b = build_b12(gf3()).unwrap();
        assert!(check_commutative_super(&b).pass);
        assert!(check_super_alternative(&b).pass);
        assert!(check_jacobi_a_identity(&b).pass);
    }

    #[test]
    fn b12_needs_char3() {
        assert!(build_b12(FieldSpec::prime(5).unwrap()).is_err());
        assert!(build_b12(FieldSpec::rationals()).is_err());
    }

    #[test]
    fn divided_powers_products() {
        let g = build_divided_powers(1, gf3()).unwrap();
        let f = *g.algebra.field();
        assert_eq!(g.algebra.dim(), 3);
        // t⁽¹⁾t⁽¹⁾ = 2t⁽²⁾
        let t1 = g.algebra.standard_basis_vector(1);
        let mut want = vec![f.zero(); 3];
        want[2] = f.from_integer(2);
        assert_eq!(g.algebra.mul_vectors(&t1, &t1), want);
        // t⁽¹⁾t⁽²⁾ = C(3,1) t⁽³⁾ = 0 (also out of range)
        let t2 = g.algebra.standard_basis_vector(2);
        assert!(g.algebra.mul_vectors(&t1, &t2).iter().all(Scalar::is_zero));
        // D(t⁽²⁾) = t⁽¹⁾
        assert_eq!(g.derivation.apply(&t2), t1);
        // D(t⁽⁰⁾) = 0
        assert!(g.derivation.apply(&g.algebra.standard_basis_vector(0)).iter().all(Scalar::is_zero));
        assert!(g.algebra.check_grading().unwrap().pass);
        assert!(build_divided_powers(0, gf3()).is_err());
    }

    #[test]
    fn divided_powers_n2_derivation_is_leibniz() {
        let g = build_divided_powers(2, gf3()).unwrap();
        assert_eq!(g.algebra.dim(), 9);
        assert!(crate::identities::is_derivation(&g.algebra, &g.derivation).unwrap().pass);
    }

    #[test]
    fn b_gamma_products_and_grading() {
        let g = build_divided_powers(1, gf3()).unwrap();
        let b = build_b_gamma(&g).unwrap();
        let f = *b.algebra.field();
        assert_eq!(b.algebra.dim(), 6);
        // (1u)(t⁽¹⁾u) = 1·D(t⁽¹⁾) − D(1)·t⁽¹⁾ = t⁽⁰⁾ = 1.
        let ou = b.algebra.standard_basis_vector(3);
        let t1u = b.algebra.standard_basis_vector(4);
        assert_eq!(b.algebra.mul_vectors(&ou, &t1u), b.algebra.standard_basis_vector(0));
        // t⁽¹⁾·(1u) = t⁽¹⁾u.
        let t1 = b.algebra.standard_basis_vector(1);
        assert_eq!(b.algebra.mul_vectors(&t1, &ou), t1u);
        // Grading: deg u = −1, every component 1-dimensional over [−1, 2(3ᴺ−1)].
        assert!(b.algebra.check_grading().unwrap().pass);
        let comps = b.algebra.graded_components().unwrap();
        assert_eq!(comps.len(), 6);
        assert_eq!(comps.first().unwrap().0, -1);
        assert_eq!(comps.last().unwrap().0, 4);
        for (_, idx) in comps {
            assert_eq!(idx.len(), 1);
        }
        let _ = f;
    }

    #[test]
    fn b_gamma_is_commutative_alternative_super() {
        for n in [1, 2] {
            let g = build_divided_powers(n, gf3()).unwrap();
            let b = build_b_gamma(&g).unwrap();
            assert!(check_commutative_super(&b.algebra).pass);
            assert!(check_super_alternative(&b.algebra).pass);
            assert!(check_jacobi_a_identity(&b.algebra).pass);
            // Unital with unit t⁽⁰⁾.
            assert_eq!(find_unit(&b.algebra).unwrap(), b.algebra.standard_basis_vector(0));
        }
    }

    #[test]
    fn d_simplicity() {
        let f = gf3();
        for n in [1, 2] {
            let g = build_divided_powers(n, f).unwrap();
            assert!(check_d_simple_both_ways(&g.algebra, &g.derivation, DEFAULT_SEED).unwrap());
        }
        // D = 0: the span of t⁽¹⁾, …, t⁽³ᴺ⁻¹⁾ is a proper invariant ideal.
        let g = build_divided_powers(1, f).unwrap();
        let zero = LinearMap::zero(f, 3, 0);
        assert!(!check_d_simple(&g.algebra, &zero, DEFAULT_SEED).unwrap());
        // A nilpotent fake: t⁽¹⁾ ↦ 0, t⁽²⁾ ↦ 0 (identity on t⁽⁰⁾ scale zero).
        let fake = LinearMap::zero(f, 3, 0);
        assert!(!check_d_simple(&g.algebra, &fake, DEFAULT_SEED).unwrap());
    }

    #[test]
    fn simplicity_of_the_family() {
        let f = gf3();
        assert!(is_simple_super(&build_b12(f).unwrap(), DEFAULT_SEED).unwrap());
        let g = build_divided_powers(1, f).unwrap();
        let b = build_b_gamma(&g).unwrap();
        assert!(is_simple_super(&b.algebra, DEFAULT_SEED).unwrap());
        // Γ alone is not simple: spinning t⁽²⁾ exhibits a proper ideal.
        assert!(!is_simple_super(&g.algebra, DEFAULT_SEED).unwrap());
        let mut ops = g.algebra.left_mult_operators();
        ops.extend(g.algebra.right_mult_operators());
        let ideal = spin_submodule(f, 3, &ops, &[g.algebra.standard_basis_vector(2)]);
        assert_eq!(ideal.dim(), 1);
        assert!(g.algebra.is_ideal(&ideal));
    }
}
