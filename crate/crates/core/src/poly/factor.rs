//! Factorization of quadratic forms in two or three variables into linear
//! factors over Q or a quadratic extension.

use num_traits::Zero;

use super::linalg::QMatrix;
use super::{Monomial, Poly};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Outcome of [`factor_into_linear`]: either `scale * f1 * f2 = q` with
/// linear `f1`, `f2`, or a certificate of irreducibility (rank 3).
#[derive(Clone, Debug)]
pub enum QuadraticFactorization {
    Split {
        factors: (Poly, Poly),
        scale: Rational,
    },
    Irreducible,
}

fn gram_matrix(q: &Poly) -> QMatrix {
    let n = q.ring().nvars();
    let mut g = QMatrix::zero(n, n);
    let two = Rational::from(num_bigint::BigInt::from(2));
    for i in 0..n {
        for j in 0..n {
            let mut exps = vec![0u16; n];
            exps[i] += 1;
            exps[j] += 1;
            let c = match q.coeff(&Monomial(exps)) {
                Scalar::Rat(r) => r,
                Scalar::Quad(_) => panic!("factor_into_linear expects rational coefficients"),
            };
            g.set(i, j, if i == j { c } else { c / &two });
        }
    }
    g
}

fn linear_form(ring: &super::Ring, coeffs: &[Scalar]) -> Poly {
    let mut p = Poly::zero(ring);
    for (i, c) in coeffs.iter().enumerate() {
        p = p.add(&Poly::var(ring, i).scale(c));
    }
    p
}

/// Factors a binary quadratic form `a s^2 + b s t + c t^2` given by its
/// coefficients, returning linear-form coefficient pairs and a scale.
fn factor_binary(
    a: &Rational,
    b: &Rational,
    c: &Rational,
) -> (([Scalar; 2], [Scalar; 2]), Rational) {
    if a.is_zero() {
        if b.is_zero() {
            // c t^2
            return (
                (
                    [Scalar::zero(), Scalar::one()],
                    [Scalar::zero(), Scalar::one()],
                ),
                c.clone(),
            );
        }
        // t (b s + c t)
        return (
            (
                [Scalar::zero(), Scalar::one()],
                [Scalar::Rat(b.clone()), Scalar::Rat(c.clone())],
            ),
            Rational::from(num_bigint::BigInt::from(1)),
        );
    }
    // a (s - r1 t)(s - r2 t)
    let roots = super::roots::quadratic_roots(c, b, a);
    (
        (
            [Scalar::one(), roots[0].neg()],
            [Scalar::one(), roots[1].neg()],
        ),
        a.clone(),
    )
}

/// Factors a homogeneous quadratic in 2 or 3 variables as a product of two
/// linear forms over Q or Q(sqrt(D)), or reports rank 3 as irreducible.
pub fn factor_into_linear(q: &Poly) -> Result<QuadraticFactorization> {
    if q.is_zero() {
        return Err(Error::ZeroInput);
    }
    if q.homogeneous_degree() != Some(2) {
        return Err(Error::NonHomogeneous);
    }
    let ring = q.ring().clone();
    let n = ring.nvars();
    assert!(n == 2 || n == 3, "quadratic forms in 2 or 3 variables");
    let gram = gram_matrix(q);
    let rank = gram.rank();
    if rank == 3 {
        return Ok(QuadraticFactorization::Irreducible);
    }
    if n == 2 {
        let a = match q.coeff(&Monomial(vec![2, 0])) {
            Scalar::Rat(r) => r,
            _ => unreachable!(),
        };
        let b = match q.coeff(&Monomial(vec![1, 1])) {
            Scalar::Rat(r) => r,
            _ => unreachable!(),
        };
        let c = match q.coeff(&Monomial(vec![0, 2])) {
            Scalar::Rat(r) => r,
            _ => unreachable!(),
        };
        let ((f1, f2), scale) = factor_binary(&a, &b, &c);
        return Ok(QuadraticFactorization::Split {
            factors: (linear_form(&ring, &f1), linear_form(&ring, &f2)),
            scale,
        });
    }
    // Three variables, rank <= 2: restrict to a complement of the radical.
    let kernel = gram.kernel_basis();
    debug_assert_eq!(kernel.len(), 3 - rank);
    // Complete kernel vectors to a basis with coordinate vectors.
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for e in 0..3 {
        let mut cand: Vec<Vec<Rational>> = basis.clone();
        let mut unit = vec![Rational::zero(); 3];
        unit[e] = Rational::from(num_bigint::BigInt::from(1));
        cand.push(unit);
        for k in &kernel {
            cand.push(k.clone());
        }
        if cand.len() <= 3 && QMatrix::from_rows(cand.clone()).rank() == cand.len() {
            basis.push(cand[basis.len()].clone());
        }
        if basis.len() + kernel.len() == 3 {
            break;
        }
    }
    let mut full: Vec<Vec<Rational>> = basis.clone();
    for k in &kernel {
        full.push(k.clone());
    }
    assert_eq!(full.len(), 3);
    assert_eq!(QMatrix::from_rows(full.clone()).rank(), 3);
    // Coordinates with respect to `full` (as columns): x = B^T X, so the
    // coordinate functionals are rows of (B^T)^{-1} where B has basis rows.
    let bt: Vec<Vec<Scalar>> = (0..3)
        .map(|i| (0..3).map(|j| Scalar::Rat(full[j][i].clone())).collect())
        .collect();
    let inv = crate::scalar::invert_matrix(&bt).expect("basis is invertible");
    let functional = |row: usize| -> Poly {
        linear_form(&ring, &inv[row])
    };
    let eval_q = |v: &[Rational]| -> Rational {
        let scalars: Vec<Scalar> = v.iter().map(|r| Scalar::Rat(r.clone())).collect();
        match q.eval(&scalars) {
            Scalar::Rat(r) => r,
            _ => unreachable!(),
        }
    };
    if rank <= 1 {
        // q = c * L^2 with L the first coordinate functional.
        let c = eval_q(&basis[0]);
        let l = functional(0);
        return Ok(QuadraticFactorization::Split {
            factors: (l.clone(), l),
            scale: c,
        });
    }
    // rank 2: q restricted to span(basis) is a binary form.
    let a = eval_q(&basis[0]);
    let c = eval_q(&basis[1]);
    let sum: Vec<Rational> = (0..3).map(|i| &basis[0][i] + &basis[1][i]).collect();
    let b = eval_q(&sum) - &a - &c;
    let ((f1, f2), scale) = factor_binary(&a, &b, &c);
    let x1 = functional(0);
    let x2 = functional(1);
    let lift = |f: &[Scalar; 2]| x1.scale(&f[0]).add(&x2.scale(&f[1]));
    Ok(QuadraticFactorization::Split {
        factors: (lift(&f1), lift(&f2)),
        scale,
    })
}
