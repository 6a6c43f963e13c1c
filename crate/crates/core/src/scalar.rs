//! Exact scalar arithmetic: arbitrary-precision rationals and quadratic
//! extensions Q(sqrt(D)).
//!
//! A [`Scalar`] is either a rational number or an element `a + b*sqrt(D)` of a
//! quadratic extension with square-free `D` not in {0, 1}. Negative `D`
//! encodes complex values (`i` is `sqrt(-1)`); positive `D` encodes real
//! quadratic irrationalities. Values with `b = 0` are always demoted to the
//! rational variant, so equality is structural.

use std::fmt;

use num_bigint::BigInt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `p/q` from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// An element `a + b*sqrt(disc)` with `b != 0` and square-free `disc`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    pub a: Rational,
    pub b: Rational,
    pub disc: BigInt,
}

/// A value of Q or of a single quadratic extension Q(sqrt(D)).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rational),
    Quad(QuadExt),
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rat(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::Rat(rat_int(n))
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(Rational::one())
    }

    /// Canonical constructor: demotes `b = 0` to the rational variant.
    pub fn quad(a: Rational, b: Rational, disc: BigInt) -> Self {
        if b.is_zero() {
            Scalar::Rat(a)
        } else {
            debug_assert!(!disc.is_zero() && !disc.is_one(), "disc must not be 0 or 1");
            Scalar::Quad(QuadExt { a, b, disc })
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rat(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Quad(_) => None,
        }
    }

    /// The discriminant of the extension the value lives in; `None` for Q.
    pub fn disc(&self) -> Option<&BigInt> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Quad(q) => Some(&q.disc),
        }
    }

    fn parts(&self, disc: &BigInt) -> (Rational, Rational) {
        match self {
            Scalar::Rat(r) => (r.clone(), Rational::zero()),
            Scalar::Quad(q) => {
                assert_eq!(&q.disc, disc, "mixed quadratic extensions");
                (q.a.clone(), q.b.clone())
            }
        }
    }

    /// The shared disc of two operands, or an error when they disagree.
    fn joint_disc(&self, other: &Scalar) -> Result<Option<BigInt>> {
        match (self.disc(), other.disc()) {
            (None, None) => Ok(None),
            (Some(d), None) | (None, Some(d)) => Ok(Some(d.clone())),
            (Some(d1), Some(d2)) => {
                if d1 == d2 {
                    Ok(Some(d1.clone()))
                } else {
                    Err(Error::MixedDiscs(d1.clone(), d2.clone()))
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        match self.joint_disc(other)? {
            None => Ok(Scalar::Rat(
                self.as_rational().unwrap() + other.as_rational().unwrap(),
            )),
            Some(d) => {
                let (a1, b1) = self.parts(&d);
                let (a2, b2) = other.parts(&d);
                Ok(Scalar::quad(a1 + a2, b1 + b2, d))
            }
        }
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        match self.joint_disc(other)? {
            None => Ok(Scalar::Rat(
                self.as_rational().unwrap() * other.as_rational().unwrap(),
            )),
            Some(d) => {
                let (a1, b1) = self.parts(&d);
                let (a2, b2) = other.parts(&d);
                let dd = Rational::from(d.clone());
                // (a1 + b1 s)(a2 + b2 s) = a1 a2 + b1 b2 D + (a1 b2 + a2 b1) s
                Ok(Scalar::quad(
                    &a1 * &a2 + &b1 * &b2 * dd,
                    &a1 * &b2 + &a2 * &b1,
                    d,
                ))
            }
        }
    }

    pub fn checked_neg(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Quad(q) => Scalar::quad(-&q.a, -&q.b, q.disc.clone()),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&other.checked_neg())
    }

    /// Conjugate `a + b*sqrt(D) -> a - b*sqrt(D)`; identity on rationals.
    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r.clone()),
            Scalar::Quad(q) => Scalar::quad(q.a.clone(), -&q.b, q.disc.clone()),
        }
    }

    /// The field norm `x * conj(x)`; always rational.
    pub fn norm(&self) -> Rational {
        match self {
            Scalar::Rat(r) => r * r,
            Scalar::Quad(q) => &q.a * &q.a - &q.b * &q.b * Rational::from(q.disc.clone()),
        }
    }

    pub fn checked_inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Scalar::Rat(r) => Ok(Scalar::Rat(r.recip())),
            Scalar::Quad(q) => {
                // 1/(a + b s) = (a - b s) / (a^2 - b^2 D); the norm is nonzero
                // because D is not a square.
                let n = self.norm();
                assert!(!n.is_zero(), "nonzero quadratic element with zero norm");
                Ok(Scalar::quad(&q.a / &n, -&q.b / &n, q.disc.clone()))
            }
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_mul(&other.checked_inv()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    // Panicking operators for internal use: a disc mismatch is a programming
    // error once values enter a computation, not a user-facing condition.
    pub fn add(&self, other: &Scalar) -> Scalar {
        self.checked_add(other).expect("scalar add")
    }
    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.checked_sub(other).expect("scalar sub")
    }
    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.checked_mul(other).expect("scalar mul")
    }
    pub fn div(&self, other: &Scalar) -> Scalar {
        self.checked_div(other).expect("scalar div")
    }
    pub fn neg(&self) -> Scalar {
        self.checked_neg()
    }
    pub fn inv(&self) -> Scalar {
        self.checked_inv().expect("scalar inv")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", r),
            Scalar::Quad(q) => {
                if q.a.is_zero() {
                    if q.b.is_negative() {
                        write!(f, "-{}*sqrt({})", -&q.b, q.disc)
                    } else {
                        write!(f, "{}*sqrt({})", q.b, q.disc)
                    }
                } else if q.b.is_negative() {
                    write!(f, "{} - {}*sqrt({})", q.a, -&q.b, q.disc)
                } else {
                    write!(f, "{} + {}*sqrt({})", q.a, q.b, q.disc)
                }
            }
        }
    }
}

/// Bound for the trial-division phase of square-free decomposition. Integers
/// whose square parts hide behind larger primes are treated as square-free;
/// at the sizes this toolkit works with that case does not arise.
const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// Splits `n != 0` as `sign * s^2 * m` with `m` square-free, returning `(s, m)`
/// where `m` carries the sign of `n`.
pub fn squarefree_decomposition(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_zero());
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut rest = n.abs();
    let mut square = BigInt::one();
    let mut free = BigInt::one();

    // Fast path: a perfect square needs no factoring.
    let root = rest.sqrt();
    if &root * &root == rest {
        return (root, BigInt::from(sign));
    }

    let mut p = BigInt::from(2u32);
    let bound = BigInt::from(TRIAL_DIVISION_BOUND);
    while &p * &p <= rest && p <= bound {
        if (&rest % &p).is_zero() {
            let mut e = 0u32;
            while (&rest % &p).is_zero() {
                rest /= &p;
                e += 1;
            }
            for _ in 0..e / 2 {
                square *= &p;
            }
            if e % 2 == 1 {
                free *= &p;
            }
        }
        p += if p == BigInt::from(2u32) { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        let root = rest.sqrt();
        if &root * &root == rest {
            square *= root;
        } else {
            free *= rest;
        }
    }
    (square, free * BigInt::from(sign))
}

/// The exact square root of a rational number within Q or Q(sqrt(D)).
///
/// Returns the positive rational root when `r` is a perfect square, and
/// otherwise the canonical `b*sqrt(D)` with positive `b` and square-free `D`
/// (negative for negative `r`). `sqrt(0) = 0`.
pub fn sqrt_in_field(r: &Rational) -> Scalar {
    if r.is_zero() {
        return Scalar::zero();
    }
    // r = p/q = pq / q^2, so sqrt(r) = sqrt(pq)/q.
    let pq = r.numer() * r.denom();
    let (s, m) = squarefree_decomposition(&pq);
    let coeff = Rational::new(s, r.denom().clone());
    if m.is_one() {
        Scalar::Rat(coeff)
    } else {
        Scalar::quad(Rational::zero(), coeff, m)
    }
}

/// The exact square root of an element of Q(sqrt(D)) inside the same field,
/// when it exists there.
pub fn sqrt_in_quad_ext(x: &Scalar) -> Option<Scalar> {
    match x {
        Scalar::Rat(r) => match sqrt_in_field(r) {
            s @ Scalar::Rat(_) => Some(s),
            // The rational square root left Q; it only stays "in field" if the
            // caller's field matches, which we cannot know here. Return it and
            // let the caller check the disc.
            s @ Scalar::Quad(_) => Some(s),
        },
        Scalar::Quad(q) => {
            // (p + q' s)^2 = u + v s  =>  p^2 + q'^2 D = u, 2 p q' = v.
            let u = &q.a;
            let v = &q.b;
            let d = Rational::from(q.disc.clone());
            let n = u * u - v * v * &d;
            let sqrt_n = match sqrt_in_field(&n) {
                Scalar::Rat(r) => r,
                Scalar::Quad(_) => return None,
            };
            for sign in [1i64, -1] {
                let cand = (u + Rational::from(BigInt::from(sign)) * &sqrt_n)
                    / Rational::from(BigInt::from(2));
                if cand.is_zero() {
                    continue;
                }
                if let Scalar::Rat(p) = sqrt_in_field(&cand) {
                    // q' = v / (2p)
                    let qq = v / (Rational::from(BigInt::from(2)) * &p);
                    let cand = Scalar::quad(p, qq, q.disc.clone());
                    if cand.mul(&cand) == *x {
                        return Some(cand);
                    }
                }
            }
            None
        }
    }
}

/// Inverts a small square matrix of scalars by Gauss-Jordan elimination.
/// Returns `None` when the matrix is singular.
pub fn invert_matrix(m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n));
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut inv: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        let pivot_inv = a[col][col].inv();
        for j in 0..n {
            a[col][j] = a[col][j].mul(&pivot_inv);
            inv[col][j] = inv[col][j].mul(&pivot_inv);
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for j in 0..n {
                    let t = a[col][j].mul(&factor);
                    a[r][j] = a[r][j].sub(&t);
                    let t = inv[col][j].mul(&factor);
                    inv[r][j] = inv[r][j].sub(&t);
                }
            }
        }
    }
    Some(inv)
}

/// Determinant of a small square matrix of scalars.
pub fn matrix_det(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut det = Scalar::one();
    for col in 0..n {
        let pivot_row = match (col..n).find(|&r| !a[r][col].is_zero()) {
            Some(r) => r,
            None => return Scalar::zero(),
        };
        if pivot_row != col {
            a.swap(col, pivot_row);
            det = det.neg();
        }
        det = det.mul(&a[col][col]);
        let pivot_inv = a[col][col].inv();
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let factor = a[r][col].mul(&pivot_inv);
                for j in col..n {
                    let t = a[col][j].mul(&factor);
                    a[r][j] = a[r][j].sub(&t);
                }
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: (i64, i64), b: (i64, i64), d: i64) -> Scalar {
        Scalar::quad(rat(a.0, a.1), rat(b.0, b.1), BigInt::from(d))
    }

    #[test]
    fn rational_addition() {
        let x = Scalar::Rat(rat(1, 2));
        let y = Scalar::Rat(rat(1, 3));
        assert_eq!(x.add(&y), Scalar::Rat(rat(5, 6)));
    }

    #[test]
    fn conjugate_product() {
        // (1 + sqrt(2)) * (1 - sqrt(2)) = -1
        let x = q((1, 1), (1, 1), 2);
        let y = q((1, 1), (-1, 1), 2);
        assert_eq!(x.mul(&y), Scalar::from(-1));
    }

    #[test]
    fn quad_inverse() {
        // inv(3 + sqrt(5)) = 3/4 - (1/4) sqrt(5)
        let x = q((3, 1), (1, 1), 5);
        let inv = x.inv();
        assert_eq!(inv, q((3, 4), (-1, 4), 5));
        assert!(x.mul(&inv).is_one());
    }

    #[test]
    fn mixed_discs_error() {
        let x = q((0, 1), (1, 1), 2);
        let y = q((0, 1), (1, 1), 3);
        assert!(matches!(x.checked_add(&y), Err(Error::MixedDiscs(_, _))));
    }

    #[test]
    fn demotion_to_rational() {
        // (sqrt(2))^2 = 2 must be structurally rational.
        let s = q((0, 1), (1, 1), 2);
        assert_eq!(s.mul(&s), Scalar::from(2));
    }

    #[test]
    fn sqrt_perfect_square() {
        assert_eq!(sqrt_in_field(&rat_int(4)), Scalar::from(2));
    }

    #[test]
    fn sqrt_squarefree() {
        assert_eq!(sqrt_in_field(&rat_int(2)), q((0, 1), (1, 1), 2));
    }

    #[test]
    fn sqrt_nine_halves() {
        // 9/2 = (3/2)^2 * 2
        assert_eq!(sqrt_in_field(&rat(9, 2)), q((0, 1), (3, 2), 2));
    }

    #[test]
    fn sqrt_negative() {
        assert_eq!(sqrt_in_field(&rat_int(-4)), q((0, 1), (2, 1), -1));
        let s = sqrt_in_field(&rat(-3, 4));
        assert_eq!(s, q((0, 1), (1, 2), -3));
        assert_eq!(s.mul(&s), Scalar::Rat(rat(-3, 4)));
    }

    #[test]
    fn sqrt_squares_back() {
        for (n, d) in [(7, 3), (-5, 2), (49, 4), (18, 1), (-1, 1), (97, 96)] {
            let r = rat(n, d);
            let s = sqrt_in_field(&r);
            assert_eq!(s.mul(&s), Scalar::Rat(r));
        }
    }

    #[test]
    fn sqrt_inside_extension() {
        // sqrt(3 + 2 sqrt(2)) = 1 + sqrt(2)
        let x = q((3, 1), (2, 1), 2);
        let s = sqrt_in_quad_ext(&x).unwrap();
        assert_eq!(s.mul(&s), x);
        // 1 + sqrt(3) has no square root in Q(sqrt(3)).
        let y = q((1, 1), (1, 1), 3);
        assert!(sqrt_in_quad_ext(&y).is_none());
    }

    #[test]
    fn matrix_inverse_roundtrip() {
        let m = vec![
            vec![Scalar::from(2), Scalar::from(1), Scalar::from(0)],
            vec![Scalar::from(1), Scalar::from(-1), Scalar::from(3)],
            vec![Scalar::from(0), Scalar::from(5), Scalar::from(1)],
        ];
        let inv = invert_matrix(&m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Scalar::zero();
                for k in 0..3 {
                    acc = acc.add(&m[i][k].mul(&inv[k][j]));
                }
                assert_eq!(acc, if i == j { Scalar::one() } else { Scalar::zero() });
            }
        }
    }

    #[test]
    fn field_axioms_randomized() {
        // Deterministic pseudo-random triples in Q and in Q(sqrt(-1)).
        let mut state = 0x12345u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as i64 % 13) - 6
        };
        for _ in 0..200 {
            let mk = |a: i64, b: i64, quad: bool| {
                if quad {
                    Scalar::quad(rat_int(a), rat_int(b), BigInt::from(-1))
                } else {
                    Scalar::Rat(rat(a, b.abs().max(1)))
                }
            };
            for quad in [false, true] {
                let x = mk(next(), next(), quad);
                let y = mk(next(), next(), quad);
                let z = mk(next(), next(), quad);
                assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
                assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
                assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
                if !x.is_zero() {
                    assert!(x.mul(&x.inv()).is_one());
                }
            }
        }
    }
}
