//! Exact root finding for univariate polynomials and binary forms over Q,
//! with roots in Q or a quadratic extension Q(sqrt(D)).
//!
//! Rational roots come from divisor enumeration after bounded trial-division
//! factoring; residual factors of degree two are solved by the quadratic
//! formula and residual quartics are split into rational quadratics via the
//! resolvent cubic when possible. Anything beyond that is reported as
//! incomplete rather than approximated.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Poly;
use crate::scalar::{sqrt_in_field, sqrt_in_quad_ext, Rational, Scalar};

const FACTOR_TRIAL_BOUND: u64 = 1_000_000;
const MAX_DIVISOR_PAIRS: usize = 200_000;

/// Roots of a univariate polynomial with multiplicities.
#[derive(Clone, Debug)]
pub struct RootSet {
    pub roots: Vec<(Scalar, usize)>,
    /// False when an irreducible factor of degree >= 3 remains, or when
    /// integer factoring gave up and candidates may have been missed.
    pub complete: bool,
}

/// Roots `[s : t]` of a binary form with multiplicities; `[1 : 0]` is the
/// root at infinity.
#[derive(Clone, Debug)]
pub struct BinaryRootSet {
    pub roots: Vec<([Scalar; 2], usize)>,
    pub complete: bool,
}

fn trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn deg(v: &[Rational]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

fn derivative(v: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = v
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from(BigInt::from(i)))
        .collect();
    trim(&mut out);
    out
}

fn eval(v: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in v.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = deg(b).expect("division by zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    let mut q = vec![Rational::zero(); r.len().saturating_sub(db)];
    while let Some(dr) = deg(&r) {
        if dr < db {
            break;
        }
        let coeff = &r[dr] / &b[db];
        let shift = dr - db;
        q[shift] = coeff.clone();
        for i in 0..=db {
            let t = &b[i] * &coeff;
            r[shift + i] -= t;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn monic(v: &[Rational]) -> Vec<Rational> {
    match deg(v) {
        None => Vec::new(),
        Some(d) => {
            let lead = v[d].clone();
            v.iter().map(|c| c / &lead).collect()
        }
    }
}

fn uni_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// Yun's square-free decomposition: `f = prod out[i].0 ^ out[i].1`.
pub fn squarefree_decomposition(f: &[Rational]) -> Vec<(Vec<Rational>, usize)> {
    let mut f = f.to_vec();
    trim(&mut f);
    assert!(!f.is_empty());
    if deg(&f) == Some(0) {
        return Vec::new();
    }
    let df = derivative(&f);
    let g = uni_gcd(&f, &df);
    let mut w = divrem(&f, &g).0;
    let mut y = divrem(&df, &g).0;
    let mut z = sub(&y, &derivative(&w));
    let mut out = Vec::new();
    let mut i = 1;
    while deg(&w).is_some_and(|d| d > 0) {
        let h = uni_gcd(&w, &z);
        if deg(&h).is_some_and(|d| d > 0) {
            out.push((h.clone(), i));
        }
        w = divrem(&w, &h).0;
        y = divrem(&z, &h).0;
        z = sub(&y, &derivative(&w));
        i += 1;
    }
    out
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut base: u64, mut e: u64| {
        let mut acc = 1u64;
        base %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Bounded trial-division factoring. Returns prime factors with exponents and
/// `None` residual on success; `Some(residual)` when a cofactor resisted.
fn factor_bounded(n: &BigInt) -> (Vec<(BigInt, u32)>, Option<BigInt>) {
    let mut rest = n.abs();
    let mut factors = Vec::new();
    if rest.is_one() || rest.is_zero() {
        return (factors, None);
    }
    let bound = BigInt::from(FACTOR_TRIAL_BOUND);
    let mut p = BigInt::from(2u32);
    while &p * &p <= rest && p <= bound {
        if (&rest % &p).is_zero() {
            let mut e = 0u32;
            while (&rest % &p).is_zero() {
                rest /= &p;
                e += 1;
            }
            factors.push((p.clone(), e));
        }
        p += if p == BigInt::from(2u32) { 1 } else { 2 };
    }
    if rest.is_one() {
        return (factors, None);
    }
    if &p * &p > rest {
        factors.push((rest, 1));
        return (factors, None);
    }
    if let Ok(small) = u64::try_from(&rest) {
        if is_prime_u64(small) {
            factors.push((rest, 1));
            return (factors, None);
        }
    }
    (factors, Some(rest))
}

fn divisors(factors: &[(BigInt, u32)], cap: usize) -> Option<Vec<BigInt>> {
    let mut out = vec![BigInt::one()];
    for (p, e) in factors {
        let prev = out.clone();
        let mut power = BigInt::one();
        for _ in 0..*e {
            power *= p;
            for d in &prev {
                out.push(d * &power);
                if out.len() > cap {
                    return None;
                }
            }
        }
    }
    out.sort();
    Some(out)
}

/// Clears denominators and content: integer coefficient vector.
fn to_integer(v: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in v {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut gcd = BigInt::zero();
    for c in &ints {
        gcd = gcd.gcd(c);
    }
    if gcd.is_zero() || gcd.is_one() {
        ints
    } else {
        ints.iter().map(|c| c / &gcd).collect()
    }
}

/// All rational roots of a square-free polynomial with nonzero constant term.
/// Returns the roots, the deflated remainder, and a completeness flag.
fn rational_roots_squarefree(g: &[Rational]) -> (Vec<Rational>, Vec<Rational>, bool) {
    let ints = to_integer(g);
    let n = ints.len() - 1;
    if n == 0 {
        return (Vec::new(), g.to_vec(), true);
    }
    let a0 = &ints[0];
    let an = &ints[n];
    debug_assert!(!a0.is_zero());
    let (f0, r0) = factor_bounded(a0);
    let (fn_, rn) = factor_bounded(an);
    let mut complete = r0.is_none() && rn.is_none();
    let d0 = divisors(&f0, MAX_DIVISOR_PAIRS);
    let dn = divisors(&fn_, MAX_DIVISOR_PAIRS);
    let (d0, dn) = match (d0, dn) {
        (Some(a), Some(b)) if a.len().saturating_mul(b.len()) <= MAX_DIVISOR_PAIRS => (a, b),
        _ => {
            return (Vec::new(), g.to_vec(), false);
        }
    };
    // Filters: for a root p/q, (q x - p) divides the integer polynomial, so
    // (q - p) | g(1) and (q + p) | g(-1).
    let g1: BigInt = ints.iter().sum();
    let gm1: BigInt = ints
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c })
        .sum();
    let mut roots = Vec::new();
    for q in &dn {
        for p in &d0 {
            if !p.gcd(q).is_one() {
                continue;
            }
            for sign in [1i64, -1] {
                let ps = p * BigInt::from(sign);
                if !g1.is_zero() {
                    let div = q - &ps;
                    if !div.is_zero() && !(&g1 % &div).is_zero() {
                        continue;
                    }
                    if div.is_zero() {
                        continue; // root would be 1; covered by g(1) == 0 only
                    }
                }
                if !gm1.is_zero() {
                    let div = q + &ps;
                    if !div.is_zero() && !(&gm1 % &div).is_zero() {
                        continue;
                    }
                    if div.is_zero() {
                        continue;
                    }
                }
                let cand = Rational::new(ps, q.clone());
                if eval(g, &cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    let mut rem = g.to_vec();
    for r in &roots {
        let linear = vec![-r.clone(), Rational::one()];
        let (q, rr) = divrem(&rem, &linear);
        debug_assert!(rr.is_empty());
        rem = q;
    }
    if deg(&rem) == Some(1) {
        // Can only happen when candidate enumeration was cut short.
        complete = false;
    }
    (roots, rem, complete)
}

/// Both roots of `c2 x^2 + c1 x + c0` over Q or Q(sqrt(D)).
pub fn quadratic_roots(c0: &Rational, c1: &Rational, c2: &Rational) -> [Scalar; 2] {
    assert!(!c2.is_zero());
    let four: Rational = Rational::from(BigInt::from(4));
    let two: Rational = Rational::from(BigInt::from(2));
    let delta = c1 * c1 - four * c2 * c0;
    let s = sqrt_in_field(&delta);
    let minus_c1 = Scalar::Rat(-c1);
    let inv_2a = Scalar::Rat((two * c2).recip());
    [
        minus_c1.add(&s).mul(&inv_2a),
        minus_c1.sub(&s).mul(&inv_2a),
    ]
}

/// Splits a monic square-free rational quartic into two monic rational
/// quadratics `(x^2 + b x + c)(x^2 + d x + e)` via the resolvent cubic in
/// `z = c + e`, when such a factorization exists over Q.
fn quartic_split(f: &[Rational]) -> Option<([Rational; 2], [Rational; 2])> {
    debug_assert_eq!(deg(f), Some(4));
    debug_assert!(f[4].is_one());
    let p = &f[3];
    let q = &f[2];
    let r = &f[1];
    let s = &f[0];
    let four: Rational = Rational::from(BigInt::from(4));
    // z^3 - q z^2 + (p r - 4 s) z - (p^2 s - 4 q s + r^2)
    let resolvent = vec![
        -(p * p * s - &four * q * s + r * r),
        p * r - &four * s,
        -q,
        Rational::one(),
    ];
    let (zs, _, _) = rational_roots_squarefree_or_all(&resolvent);
    for z in zs {
        // c + e = z, c e = s
        let disc_ce = &z * &z - &four * s;
        let sq_ce = match sqrt_in_field(&disc_ce) {
            Scalar::Rat(v) => v,
            Scalar::Quad(_) => continue,
        };
        let two: Rational = Rational::from(BigInt::from(2));
        let c = (&z + &sq_ce) / &two;
        let e = (&z - &sq_ce) / &two;
        // b + d = p, b d = q - z
        let disc_bd = p * p - &four * (q - &z);
        let sq_bd = match sqrt_in_field(&disc_bd) {
            Scalar::Rat(v) => v,
            Scalar::Quad(_) => continue,
        };
        let b = (p + &sq_bd) / &two;
        let d = (p - &sq_bd) / &two;
        // Cross terms must match r = b e + c d, for one of the pairings.
        if &b * &e + &c * &d == *r {
            return Some(([b, c], [d, e]));
        }
        if &d * &e + &c * &b == *r {
            return Some(([d, c], [b, e]));
        }
    }
    None
}

/// Rational roots of an arbitrary polynomial (used on resolvents, where
/// square-freeness is not guaranteed): falls back to testing on the
/// square-free part.
fn rational_roots_squarefree_or_all(f: &[Rational]) -> (Vec<Rational>, Vec<Rational>, bool) {
    let mut g = f.to_vec();
    trim(&mut g);
    let mut zeros_stripped = g.clone();
    let mut shift = 0;
    while zeros_stripped.first().is_some_and(|c| c.is_zero()) {
        zeros_stripped.remove(0);
        shift += 1;
    }
    let sf = {
        let d = derivative(&zeros_stripped);
        if d.is_empty() {
            zeros_stripped.clone()
        } else {
            let gg = uni_gcd(&zeros_stripped, &d);
            divrem(&zeros_stripped, &gg).0
        }
    };
    let (mut roots, rem, complete) = rational_roots_squarefree(&sf);
    if shift > 0 {
        roots.push(Rational::zero());
    }
    (roots, rem, complete)
}

/// All roots of a univariate rational polynomial in Q and quadratic
/// extensions, with multiplicities.
pub fn univariate_roots(f: &[Rational]) -> RootSet {
    let mut f = f.to_vec();
    trim(&mut f);
    assert!(!f.is_empty(), "root finding needs a nonzero polynomial");
    let mut roots: Vec<(Scalar, usize)> = Vec::new();
    let mut complete = true;
    // Zero roots.
    let mut shift = 0;
    while f.first().is_some_and(|c| c.is_zero()) {
        f.remove(0);
        shift += 1;
    }
    if shift > 0 {
        roots.push((Scalar::zero(), shift));
    }
    if deg(&f) == Some(0) {
        return RootSet { roots, complete };
    }
    for (part, mult) in squarefree_decomposition(&f) {
        let (rs, rem, part_complete) = rational_roots_squarefree(&part);
        complete &= part_complete;
        for r in rs {
            roots.push((Scalar::Rat(r), mult));
        }
        match deg(&rem) {
            None | Some(0) => {}
            Some(2) => {
                let [r1, r2] = quadratic_roots(&rem[0], &rem[1], &rem[2]);
                roots.push((r1, mult));
                roots.push((r2, mult));
            }
            Some(4) => {
                let m = monic(&rem);
                match quartic_split(&m) {
                    Some(([b, c], [d, e])) => {
                        let one = Rational::one();
                        let [r1, r2] = quadratic_roots(&c, &b, &one);
                        let [r3, r4] = quadratic_roots(&e, &d, &one);
                        for r in [r1, r2, r3, r4] {
                            roots.push((r, mult));
                        }
                    }
                    None => complete = false,
                }
            }
            _ => complete = false,
        }
    }
    RootSet { roots, complete }
}

/// Roots of a homogeneous binary form in a two-variable ring. Roots are
/// normalized as `[u, 1]` for finite `u = s/t` and `[1, 0]` at infinity.
pub fn binary_form_roots(f: &Poly) -> BinaryRootSet {
    assert_eq!(f.ring().nvars(), 2);
    assert!(!f.is_zero());
    assert!(f.is_homogeneous());
    let d = f.homogeneous_degree().unwrap();
    // Coefficient of s^i t^(d-i).
    let coeffs: Vec<Rational> = (0..=d)
        .map(|i| {
            let mono = super::Monomial(vec![i as u16, (d - i) as u16]);
            match f.coeff(&mono) {
                Scalar::Rat(r) => r,
                Scalar::Quad(_) => panic!("binary_form_roots expects rational coefficients"),
            }
        })
        .collect();
    let mut g = coeffs;
    trim(&mut g);
    let inf_mult = d + 1 - g.len();
    let set = univariate_roots(&g);
    let mut roots: Vec<([Scalar; 2], usize)> = set
        .roots
        .into_iter()
        .map(|(r, m)| ([r, Scalar::one()], m))
        .collect();
    if inf_mult > 0 {
        roots.push(([Scalar::one(), Scalar::zero()], inf_mult));
    }
    BinaryRootSet {
        roots,
        complete: set.complete,
    }
}

/// Monic gcd of two univariate polynomials with scalar coefficients in one
/// quadratic extension (Euclidean algorithm over the field).
pub fn uni_gcd_scalar(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    fn trim_s(v: &mut Vec<Scalar>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }
    fn rem(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let db = b.len() - 1;
        let mut r = a.to_vec();
        while r.len() > db {
            let dr = r.len() - 1;
            let coeff = r[dr].div(&b[db]);
            let shift = dr - db;
            for i in 0..=db {
                let t = b[i].mul(&coeff);
                r[shift + i] = r[shift + i].sub(&t);
            }
            trim_s(&mut r);
            if r.is_empty() {
                break;
            }
        }
        r
    }
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim_s(&mut x);
    trim_s(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        let inv = lead.inv();
        for c in &mut x {
            *c = c.mul(&inv);
        }
    }
    x
}

/// Roots of a univariate polynomial with coefficients in Q(sqrt(D)), staying
/// inside quadratic extensions. Returns the distinct roots found and whether
/// the enumeration is complete.
pub fn scalar_poly_roots(f: &[Scalar]) -> (Vec<Scalar>, bool) {
    let mut v = f.to_vec();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    assert!(!v.is_empty());
    if v.iter().all(|c| c.is_rational()) {
        let rs: Vec<Rational> = v
            .iter()
            .map(|c| c.as_rational().unwrap().clone())
            .collect();
        let set = univariate_roots(&rs);
        return (set.roots.into_iter().map(|(r, _)| r).collect(), set.complete);
    }
    let mut roots = Vec::new();
    let mut complete = true;
    // Zero roots.
    let mut w = v.clone();
    let mut had_zero = false;
    while w.first().is_some_and(|c| c.is_zero()) {
        w.remove(0);
        had_zero = true;
    }
    if had_zero {
        roots.push(Scalar::zero());
    }
    match w.len() - 1 {
        0 => {}
        1 => {
            roots.push(w[0].neg().div(&w[1]));
        }
        2 => {
            // (-c1 +- sqrt(c1^2 - 4 c2 c0)) / (2 c2), all within the field.
            let four = Scalar::from(4);
            let two = Scalar::from(2);
            let delta = w[1].mul(&w[1]).sub(&four.mul(&w[2]).mul(&w[0]));
            match sqrt_in_quad_ext(&delta) {
                Some(s) => {
                    let inv = two.mul(&w[2]).inv();
                    roots.push(w[1].neg().add(&s).mul(&inv));
                    roots.push(w[1].neg().sub(&s).mul(&inv));
                }
                None => complete = false,
            }
        }
        _ => complete = false,
    }
    roots.dedup();
    (roots, complete)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn r(n: i64) -> Rational {
        rat_int(n)
    }

    #[test]
    fn rational_root_enumeration() {
        // (x - 2)(x + 3)(2x - 1) = 2x^3 + 3x^2 - 11x... expand:
        // (x-2)(x+3) = x^2 + x - 6; times (2x - 1): 2x^3 + 2x^2 - 12x - x^2 - x + 6
        // = 2x^3 + x^2 - 13x + 6
        let f = vec![r(6), r(-13), r(1), r(2)];
        let set = univariate_roots(&f);
        assert!(set.complete);
        let mut roots: Vec<Scalar> = set.roots.iter().map(|(r, _)| r.clone()).collect();
        roots.sort_by_key(|s| format!("{}", s));
        assert!(roots.contains(&Scalar::Rat(r(2))));
        assert!(roots.contains(&Scalar::Rat(r(-3))));
        assert!(roots.contains(&Scalar::Rat(rat(1, 2))));
    }

    #[test]
    fn multiplicities_via_yun() {
        // x^2 (x - 1)^3
        let f = vec![r(0), r(0), r(-1), r(3), r(-3), r(1)];
        let set = univariate_roots(&f);
        assert!(set.complete);
        let mut found = set.roots.clone();
        found.sort_by_key(|(s, _)| format!("{}", s));
        assert_eq!(found.len(), 2);
        assert!(found.contains(&(Scalar::zero(), 2)));
        assert!(found.contains(&(Scalar::Rat(r(1)), 3)));
    }

    #[test]
    fn quadratic_extension_roots() {
        // x^2 - 2
        let set = univariate_roots(&[r(-2), r(0), r(1)]);
        assert!(set.complete);
        assert_eq!(set.roots.len(), 2);
        for (root, _) in &set.roots {
            assert_eq!(root.mul(root), Scalar::from(2));
        }
        // x^2 + 1
        let set = univariate_roots(&[r(1), r(0), r(1)]);
        for (root, _) in &set.roots {
            assert_eq!(root.mul(root), Scalar::from(-1));
        }
    }

    #[test]
    fn quartic_splits_into_quadratics() {
        // (x^2 - 2)(x^2 - 3) = x^4 - 5x^2 + 6: four quadratic-irrational roots.
        let f = vec![r(6), r(0), r(-5), r(0), r(1)];
        let set = univariate_roots(&f);
        assert!(set.complete);
        assert_eq!(set.roots.len(), 4);
        for (root, _) in &set.roots {
            let sq = root.mul(root);
            assert!(sq == Scalar::from(2) || sq == Scalar::from(3));
        }
    }

    #[test]
    fn irreducible_quartic_incomplete() {
        // x^4 + x + 1 is irreducible over Q.
        let f = vec![r(1), r(1), r(0), r(0), r(1)];
        let set = univariate_roots(&f);
        assert!(!set.complete);
        assert!(set.roots.is_empty());
    }

    #[test]
    fn irreducible_cubic_incomplete() {
        // x^3 - 2
        let set = univariate_roots(&[r(-2), r(0), r(0), r(1)]);
        assert!(!set.complete);
        assert!(set.roots.is_empty());
    }

    #[test]
    fn binary_form_with_infinity() {
        // s t^2 (s - t): roots [0:1], [1:1], and [1:0] (from degree drop).
        use crate::poly::Ring;
        let ring = Ring::st();
        let s = Poly::var_named(&ring, "s");
        let t = Poly::var_named(&ring, "t");
        let f = s.mul(&t.pow(2)).mul(&s.sub(&t));
        let set = binary_form_roots(&f);
        assert!(set.complete);
        let mut mults = std::collections::BTreeMap::new();
        for (root, m) in &set.roots {
            mults.insert(format!("[{}:{}]", root[0], root[1]), *m);
        }
        assert_eq!(mults.get("[0:1]"), Some(&1));
        assert_eq!(mults.get("[1:1]"), Some(&1));
        assert_eq!(mults.get("[1:0]"), Some(&2));
    }

    #[test]
    fn scalar_roots_in_gaussian_field() {
        // (x - i)(x - 2) over Q(i): x^2 - (2 + i) x + 2i
        let i = Scalar::quad(r(0), r(1), BigInt::from(-1));
        let c0 = Scalar::from(2).mul(&i);
        let c1 = Scalar::from(-2).sub(&i);
        let (roots, complete) = scalar_poly_roots(&[c0, c1, Scalar::one()]);
        assert!(complete);
        assert!(roots.contains(&i));
        assert!(roots.contains(&Scalar::from(2)));
    }

    #[test]
    fn prime_test_small() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(97));
        assert!(is_prime_u64(1_000_003));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(1_000_001)); // 101 * 9901
        assert!(is_prime_u64(18_446_744_073_709_551_557)); // largest u64 prime
    }
}
