//! Multivariate gcd over Q (and over quadratic extensions) by recursive
//! content / primitive-part reduction and a primitive pseudo-remainder
//! sequence. Fine at this artifact's degrees; no modular reconstruction.

use num_traits::One;

use super::Poly;
use crate::scalar::Scalar;

/// Pseudo-remainder of `a` by `b` with respect to variable `v`, normalized
/// by the integer content after every elimination step. The result agrees
/// with the true pseudo-remainder up to a rational scalar, which is all the
/// gcd computation needs, and it keeps coefficients near subresultant size
/// instead of compounding.
fn pseudo_rem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let db = b.degree_in(v);
    debug_assert!(db >= 1);
    let lb = b.coeff_of_power(v, db);
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(v);
        if dr < db {
            break;
        }
        let lr = r.coeff_of_power(v, dr);
        let shifted = lr.mul_var_pow(v, (dr - db) as u16).mul(b);
        r = lb.mul(&r).sub(&shifted);
        if !r.is_zero() && r.is_rational() {
            let c = r.rational_content();
            if !c.is_one() {
                r = r.scale_rat(&c.recip());
            }
        }
    }
    r
}

/// Gcd of the coefficients of `p` viewed as univariate in `v`.
fn content_in(p: &Poly, v: usize) -> Poly {
    let mut acc = Poly::zero(p.ring());
    for c in p.as_univariate_in(v) {
        if !c.is_zero() {
            acc = gcd_inner(&acc, &c);
        }
    }
    acc
}

/// Certifies that the gcd of `a` and `b` is free of `v` by specializing all
/// other variables at a random rational point and taking a univariate gcd.
/// Sound in one direction only: a constant specialized gcd proves the full
/// gcd has no `v`-part; a nonconstant one proves nothing.
fn coprime_in_var(a: &Poly, b: &Poly, v: usize) -> bool {
    let ring = a.ring();
    let mut rng = crate::rng::SeededRng::new(0x9cd5eed);
    for _ in 0..2 {
        let images: Vec<Poly> = (0..ring.nvars())
            .map(|i| {
                if i == v {
                    Poly::var(ring, i)
                } else {
                    Poly::constant(ring, Scalar::from(rng.nonzero_int(97)))
                }
            })
            .collect();
        let a_spec = a.substitute(&images);
        let b_spec = b.substitute(&images);
        // The specialization must preserve the leading v-degrees, otherwise
        // the degree bound argument does not apply.
        if a_spec.degree_in(v) != a.degree_in(v) || b_spec.degree_in(v) != b.degree_in(v) {
            continue;
        }
        if !a_spec.is_rational() || !b_spec.is_rational() {
            return false;
        }
        let g = univariate_gcd(&a_spec, &b_spec, v);
        if g.is_constant() {
            return true;
        }
    }
    false
}

/// Euclidean gcd of two univariate polynomials (coefficients in the field).
fn univariate_gcd(a: &Poly, b: &Poly, v: usize) -> Poly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        // Remainder of x by y in the single variable v.
        let dy = y.degree_in(v);
        let ly = y.coeff_of_power(v, dy);
        let ly_inv = Poly::constant(
            x.ring(),
            ly.leading().expect("nonzero").1.inv(),
        );
        let mut r = x.clone();
        while !r.is_zero() && r.degree_in(v) >= dy {
            let dr = r.degree_in(v);
            let lr = r.coeff_of_power(v, dr);
            let factor = lr.mul(&ly_inv).mul_var_pow(v, (dr - dy) as u16);
            r = r.sub(&factor.mul(&y));
        }
        x = y;
        y = r;
    }
    x
}

fn gcd_inner(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.ring());
    }
    // Main variable: the last one either polynomial depends on.
    let v = (0..a.ring().nvars())
        .rev()
        .find(|&v| a.depends_on(v) || b.depends_on(v))
        .expect("nonconstant polynomial depends on some variable");
    if !a.depends_on(v) {
        return gcd_inner(a, &content_in(b, v));
    }
    if !b.depends_on(v) {
        return gcd_inner(&content_in(a, v), b);
    }
    // Cheap coprimality certificate before the pseudo-remainder sequence: if
    // a random specialization has constant univariate gcd, the full gcd has
    // no v-part and reduces to the contents.
    let multivariate = (0..a.ring().nvars()).filter(|&i| a.depends_on(i) || b.depends_on(i)).count() > 1;
    if multivariate && a.is_rational() && b.is_rational() && coprime_in_var(a, b, v) {
        return gcd_inner(&content_in(a, v), &content_in(b, v));
    }

    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let cg = gcd_inner(&ca, &cb);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");

    let (mut big, mut small) = if pa.degree_in(v) >= pb.degree_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        let r = pseudo_rem(&big, &small, v);
        if r.is_zero() {
            return cg.mul(&small);
        }
        if r.degree_in(v) == 0 {
            // The primitive parts are coprime in v.
            return cg;
        }
        let rc = content_in(&r, v);
        big = small;
        small = r.exact_div(&rc).expect("content divides");
    }
}

/// Gcd in canonical form: integer coefficients with positive leading
/// coefficient for rational inputs, monic for quadratic-extension inputs.
/// `gcd(p, 0) = canonicalize(p)`.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    assert_eq!(a.ring(), b.ring(), "polynomial ring mismatch");
    let g = gcd_inner(a, b);
    g.canonicalize()
}

/// Gcd of a list; zero entries are skipped.
pub fn poly_gcd_many(polys: &[Poly]) -> Poly {
    assert!(!polys.is_empty());
    let mut acc = Poly::zero(polys[0].ring());
    for p in polys {
        if !p.is_zero() {
            acc = gcd_inner(&acc, p);
            if acc.is_constant() && !acc.is_zero() {
                break;
            }
        }
    }
    acc.canonicalize()
}

/// Divides a tuple of polynomials by the gcd of its entries and clears the
/// joint rational content, making the first nonzero entry's leading
/// coefficient positive. The result generates the same tuple up to a scalar.
pub fn content_clear_tuple(polys: &[Poly]) -> Vec<Poly> {
    let g = poly_gcd_many(polys);
    let reduced: Vec<Poly> = if g.is_zero() || g.is_constant() {
        polys.to_vec()
    } else {
        polys
            .iter()
            .map(|p| {
                if p.is_zero() {
                    p.clone()
                } else {
                    p.exact_div(&g).expect("gcd divides")
                }
            })
            .collect()
    };
    if !reduced.iter().all(|p| p.is_rational()) {
        return reduced;
    }
    // Joint rational content.
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed, Zero};
    let mut lcm = BigInt::one();
    let mut gcd = BigInt::zero();
    for p in &reduced {
        for (_, c) in p.terms() {
            lcm = lcm.lcm(c.as_rational().unwrap().denom());
        }
    }
    for p in &reduced {
        for (_, c) in p.terms() {
            let r = c.as_rational().unwrap();
            gcd = gcd.gcd(&(r.numer() * (&lcm / r.denom())));
        }
    }
    if gcd.is_zero() {
        return reduced;
    }
    let mut factor = crate::scalar::Rational::new(lcm, gcd);
    if let Some(first) = reduced.iter().find(|p| !p.is_zero()) {
        let lead = first.leading().unwrap().1.as_rational().unwrap();
        if (lead * &factor).is_negative() {
            factor = -factor;
        }
    }
    reduced
        .iter()
        .map(|p| p.scale(&Scalar::Rat(factor.clone())))
        .collect()
}
