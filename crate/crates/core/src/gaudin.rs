//! The quadratic Gaudin Hamiltonians and the transfer matrices built from
//! the generating series, together with subspace-preservation helpers.

use crate::linalg;
use crate::matrix::Matrix;
use crate::ratfunc::RatFunc;
use crate::repr::TensorModule;
use crate::scalar::Scalar;
use num::One as _;

/// H_r = sum over s != r of
/// (e11^(r)e11^(s) - e12^(r)e21^(s) + e21^(r)e12^(s) - e22^(r)e22^(s)) / (b_r - b_s).
pub fn hamiltonians(m: &TensorModule) -> Vec<Matrix<Scalar>> {
    let k = m.k();
    let mut out = Vec::with_capacity(k);
    for r in 0..k {
        let mut h = Matrix::zero(m.dim(), m.dim());
        for s in 0..k {
            if s == r {
                continue;
            }
            let mut term = &m.slot_matrix(1, 1, r) * &m.slot_matrix(1, 1, s);
            term = &term - &(&m.slot_matrix(1, 2, r) * &m.slot_matrix(2, 1, s));
            term = &term + &(&m.slot_matrix(2, 1, r) * &m.slot_matrix(1, 2, s));
            term = &term - &(&m.slot_matrix(2, 2, r) * &m.slot_matrix(2, 2, s));
            let denom = (&m.spec.points[r] - &m.spec.points[s]).inv();
            h = &h + &term.scalar_mul(&denom);
        }
        out.push(h);
    }
    out
}

/// The quadratic transfer matrix
/// (1/2)(e11(x)^2 - e12(x)e21(x) + e21(x)e12(x) - e22(x)^2).
pub fn transfer_h(m: &TensorModule) -> Matrix<RatFunc> {
    transfer_h_from(
        &m.series_matrix(1, 1),
        &m.series_matrix(1, 2),
        &m.series_matrix(2, 1),
        &m.series_matrix(2, 2),
    )
}

/// transfer_h built from arbitrary generating-series matrices.
pub fn transfer_h_from(
    e11: &Matrix<RatFunc>,
    e12: &Matrix<RatFunc>,
    e21: &Matrix<RatFunc>,
    e22: &Matrix<RatFunc>,
) -> Matrix<RatFunc> {
    let mut t = e11 * e11;
    t = &t - &(e12 * e21);
    t = &t + &(e21 * e12);
    t = &t - &(e22 * e22);
    t.scalar_mul(&RatFunc::constant(Scalar::from_ratio(1, 2)))
}

/// The second transfer matrix
/// (1/2)(e11 + e22)' + (1/2)(e11 + e22)^2 - transfer_h.
pub fn transfer_t(m: &TensorModule) -> Matrix<RatFunc> {
    transfer_t_from(
        &m.series_matrix(1, 1),
        &m.series_matrix(1, 2),
        &m.series_matrix(2, 1),
        &m.series_matrix(2, 2),
    )
}

/// transfer_t built from arbitrary generating-series matrices.
pub fn transfer_t_from(
    e11: &Matrix<RatFunc>,
    e12: &Matrix<RatFunc>,
    e21: &Matrix<RatFunc>,
    e22: &Matrix<RatFunc>,
) -> Matrix<RatFunc> {
    let g1 = e11 + e22;
    let half = RatFunc::constant(Scalar::from_ratio(1, 2));
    let mut t = g1.derivative().scalar_mul(&half);
    t = &t + &(&g1 * &g1).scalar_mul(&half);
    &t - &transfer_h_from(e11, e12, e21, e22)
}

/// The first two Berezinian coefficients as series matrices:
/// G1 = e11 + e22 and G2 = (e11 + e22)e22 - e21 e12.
pub fn transfer_g12(m: &TensorModule) -> (Matrix<RatFunc>, Matrix<RatFunc>) {
    let g1 = &m.series_matrix(1, 1) + &m.series_matrix(2, 2);
    let g2 = &(&g1 * &m.series_matrix(2, 2))
        - &(&m.series_matrix(2, 1) * &m.series_matrix(1, 2));
    (g1, g2)
}

/// The central scalar zeta(x) = sum (alpha_s + beta_s)/(x - b_s) by which
/// G1 acts on the whole module.
pub fn zeta(m: &TensorModule) -> RatFunc {
    let mut z = RatFunc::zero();
    for (w, b) in m.spec.weights.iter().zip(&m.spec.points) {
        z = &z + &RatFunc::simple_pole(&w.sum(), b);
    }
    z
}

/// Right-hand side of the pole expansion of transfer_h:
/// (1/2) sum_s (a_s(a_s-1) - b_s(b_s+1))/(x-b_s)^2 Id + sum_s H_s/(x-b_s).
pub fn transfer_h_pole_expansion(m: &TensorModule) -> Matrix<RatFunc> {
    let dim = m.dim();
    let mut t: Matrix<RatFunc> = Matrix::zero(dim, dim);
    let half = Scalar::from_ratio(1, 2);
    for (w, b) in m.spec.weights.iter().zip(&m.spec.points) {
        let c = &w.alpha * (&w.alpha - &Scalar::one()) - &w.beta * (&w.beta + &Scalar::one());
        let pole = RatFunc::simple_pole(&Scalar::one(), b);
        let coeff = &(&pole * &pole) * &RatFunc::constant(&half * &c);
        t = &t + &Matrix::<RatFunc>::identity(dim).scalar_mul(&coeff);
    }
    for (h, b) in hamiltonians(m).iter().zip(&m.spec.points) {
        let pole = RatFunc::simple_pole(&Scalar::one(), b);
        t = &t + &h.to_ratfunc().scalar_mul(&pole);
    }
    t
}

/// Does the operator map the span of the given scalar vectors into itself
/// (with rational-function coefficients)? Checked by pairing the image with
/// an exact basis of functionals vanishing on the span.
pub fn preserves_span(op: &Matrix<RatFunc>, basis: &[Vec<Scalar>]) -> bool {
    if basis.is_empty() {
        return true;
    }
    let dim = basis[0].len();
    // Rows of `cols` are the basis vectors; its kernel is the annihilator.
    let rows = Matrix::from_fn(basis.len(), dim, |r, c| basis[r][c].clone());
    let annihilator = linalg::kernel_basis(&rows);
    for v in basis {
        let image = apply_ratfunc(op, v);
        for f in &annihilator {
            let mut acc = RatFunc::zero();
            for (fi, im) in f.iter().zip(&image) {
                acc = &acc + &im.scale(fi);
            }
            if !acc.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Applies a rational-function matrix to a scalar vector.
pub fn apply_ratfunc(op: &Matrix<RatFunc>, v: &[Scalar]) -> Vec<RatFunc> {
    let rf: Vec<RatFunc> = v.iter().map(|c| RatFunc::constant(c.clone())).collect();
    op.apply(&rf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{model_a, model_b, model_d};
    use crate::poly::Poly;
    use crate::repr::build_tensor_module;
    use num::Zero as _;

    fn ma() -> TensorModule {
        build_tensor_module(&model_a()).unwrap()
    }

    #[test]
    fn vacuum_hamiltonian_eigenvalues() {
        let m = ma();
        let hs = hamiltonians(&m);
        let vac = m.vacuum();
        let mut minus = vac.clone();
        minus[0] = -&minus[0];
        assert_eq!(hs[0].apply(&vac), minus);
        assert_eq!(hs[1].apply(&vac), vac);
    }

    #[test]
    fn singular_line_is_eigenline() {
        let m = ma();
        let hs = hamiltonians(&m);
        // v2 x v1 - v1 x v2 is fixed by H_1.
        let mut v = vec![Scalar::zero(); 4];
        v[2] = Scalar::one();
        v[1] = -Scalar::one();
        assert_eq!(hs[0].apply(&v), v);
    }

    #[test]
    fn hamiltonians_commute_with_each_other_and_gl11() {
        for spec in [model_a(), model_d()] {
            let m = build_tensor_module(&spec).unwrap();
            let hs = hamiltonians(&m);
            for a in &hs {
                for b in &hs {
                    assert!(a.commutator(b).is_zero());
                }
                for i in 1..=2 {
                    for j in 1..=2 {
                        let g = m.generator_matrix(i, j, 0);
                        assert!(a.commutator(&g).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn pole_expansion_identity() {
        for spec in [model_a(), model_b(), model_d()] {
            let m = build_tensor_module(&spec).unwrap();
            assert_eq!(transfer_h(&m), transfer_h_pole_expansion(&m));
        }
    }

    #[test]
    fn vacuum_transfer_values() {
        let m = ma();
        let th = transfer_h(&m);
        let image = apply_ratfunc(&th, &m.vacuum());
        // 1/(x(x-1)) on the vacuum.
        let want = RatFunc::new(Poly::one(), Poly::from_int_coeffs(&[0, -1, 1]));
        assert_eq!(image[0], want);
        assert!(image[1..].iter().all(|f| f.is_zero()));
        // T kills the vacuum when all beta vanish.
        let tt = transfer_t(&m);
        assert!(apply_ratfunc(&tt, &m.vacuum()).iter().all(|f| f.is_zero()));
    }

    #[test]
    fn singular_sector_transfer_eigenvalue() {
        let m = ma();
        let th = transfer_h(&m);
        let v = &m.singular_weight_basis(1)[0];
        let image = apply_ratfunc(&th, v);
        // Eigenvalue 1/x - 1/(x-1).
        let want = &RatFunc::simple_pole(&Scalar::one(), &Scalar::zero())
            - &RatFunc::simple_pole(&Scalar::one(), &Scalar::one());
        for (im, c) in image.iter().zip(v) {
            assert_eq!(*im, want.scale(c));
        }
    }

    #[test]
    fn transfer_relations() {
        for spec in [model_a(), model_d()] {
            let m = build_tensor_module(&spec).unwrap();
            let (g1, g2) = transfer_g12(&m);
            // T = G2.
            assert_eq!(transfer_t(&m), g2);
            // transfer_h = (1/2)G1^2 - G2 + (1/2)G1'.
            let half = RatFunc::constant(Scalar::from_ratio(1, 2));
            let rhs = &(&(&g1 * &g1).scalar_mul(&half) - &g2)
                + &g1.derivative().scalar_mul(&half);
            assert_eq!(transfer_h(&m), rhs);
            // G1 acts by the central scalar.
            assert_eq!(
                g1.is_scalar_multiple_of_identity(),
                Some(zeta(&m))
            );
        }
    }

    #[test]
    fn transfer_matrices_pairwise_commute() {
        let m = build_tensor_module(&model_d()).unwrap();
        let (g1, g2) = transfer_g12(&m);
        let fam = [transfer_h(&m), transfer_t(&m), g1, g2];
        for a in &fam {
            for b in &fam {
                assert!((&(a * b) - &(b * a)).is_zero());
            }
        }
    }

    #[test]
    fn transfer_preserves_weight_and_singular_spaces() {
        for spec in [model_a(), model_b()] {
            let m = build_tensor_module(&spec).unwrap();
            let (g1, g2) = transfer_g12(&m);
            let fam = [transfer_h(&m), transfer_t(&m), g1, g2];
            for l in 0..=m.k() {
                let sector: Vec<Vec<Scalar>> = m
                    .sector_indices(l)
                    .into_iter()
                    .map(|i| {
                        let mut v = vec![Scalar::zero(); m.dim()];
                        v[i] = Scalar::one();
                        v
                    })
                    .collect();
                let sing = m.singular_weight_basis(l);
                for op in &fam {
                    assert!(preserves_span(op, &sector));
                    assert!(preserves_span(op, &sing));
                }
            }
        }
    }
}
