//! Sparse exact multivariate polynomials over Q and Q(sqrt(D)).
//!
//! Monomials are ordered graded-lexicographically with the ring's declared
//! variable order (rings declare their variables alphabetically, so e.g. the
//! surface ring is (t, u, v, w)). The order drives canonical printing, sign
//! normalization and deterministic minor selection.

pub mod factor;
pub mod gcd;
pub mod linalg;
pub mod roots;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// An ordered list of variable names shared by a family of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring(Arc<Vec<String>>);

impl Ring {
    pub fn new(vars: &[&str]) -> Ring {
        debug_assert!(
            vars.windows(2).all(|w| w[0] < w[1]),
            "ring variables must be declared in alphabetical order: {:?}",
            vars
        );
        Ring(Arc::new(vars.iter().map(|s| s.to_string()).collect()))
    }

    /// Source plane coordinates.
    pub fn xyz() -> Ring {
        Ring::new(&["x", "y", "z"])
    }

    /// Target space coordinates for surface equations.
    pub fn tuvw() -> Ring {
        Ring::new(&["t", "u", "v", "w"])
    }

    /// Line coordinates of the dual plane.
    pub fn lines() -> Ring {
        Ring::new(&["l0", "l1", "l2"])
    }

    /// Parameters of a symbolic line restriction: the two spanning points
    /// (p, q) and the parameters (s, t).
    pub fn line_params() -> Ring {
        Ring::new(&["p0", "p1", "p2", "q0", "q1", "q2", "s", "t"])
    }

    /// The (p, q) block alone.
    pub fn pq() -> Ring {
        Ring::new(&["p0", "p1", "p2", "q0", "q1", "q2"])
    }

    /// Binary parameters of a concrete line restriction.
    pub fn st() -> Ring {
        Ring::new(&["s", "t"])
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn vars(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }
}

/// Exponent vector; its `Ord` is graded lex so that the maximum is the
/// leading monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// A sparse polynomial: a map from monomials to nonzero scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(ring: &Ring) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Poly {
        let mut p = Poly::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.nvars()), c);
        }
        p
    }

    pub fn one(ring: &Ring) -> Poly {
        Poly::constant(ring, Scalar::one())
    }

    pub fn var(ring: &Ring, i: usize) -> Poly {
        let mut p = Poly::zero(ring);
        p.terms
            .insert(Monomial::var(ring.nvars(), i), Scalar::one());
        p
    }

    pub fn var_named(ring: &Ring, name: &str) -> Poly {
        Poly::var(ring, ring.index_of(name).expect("unknown variable"))
    }

    pub fn from_terms(ring: &Ring, terms: &[(Scalar, &[u16])]) -> Poly {
        let mut p = Poly::zero(ring);
        for (c, exps) in terms {
            assert_eq!(exps.len(), ring.nvars());
            p.add_term(Monomial(exps.to_vec()), c.clone());
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().total_degree() == 0)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// `Some(d)` when every stored monomial has total degree `d`. The zero
    /// polynomial is homogeneous of every degree and reports `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys();
        let first = match it.next() {
            None => return Some(0),
            Some(m) => m.total_degree(),
        };
        if it.all(|m| m.total_degree() == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    fn add_term(&mut self, mono: Monomial, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn assert_same_ring(&self, other: &Poly) {
        assert_eq!(self.ring, other.ring, "polynomial ring mismatch");
    }

    pub fn checked_same_ring(&self, other: &Poly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_same_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.assert_same_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.neg());
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.assert_same_ring(other);
        let mut out = Poly::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let mut out = Poly::zero(&self.ring);
        for (m, k) in &self.terms {
            out.terms.insert(m.clone(), k.mul(c));
        }
        out
    }

    pub fn scale_rat(&self, c: &Rational) -> Poly {
        self.scale(&Scalar::Rat(c.clone()))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn mul_var_pow(&self, var: usize, e: u16) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            exps[var] += e;
            out.terms.insert(Monomial(exps), c.clone());
        }
        out
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, mono: &Monomial) -> Scalar {
        self.terms.get(mono).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn degree_in(&self, var: usize) -> usize {
        self.terms
            .keys()
            .map(|m| m.0[var] as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    /// Coefficient of `var^k`, as a polynomial free of `var`.
    pub fn coeff_of_power(&self, var: usize, k: usize) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            if m.0[var] as usize == k {
                let mut exps = m.0.clone();
                exps[var] = 0;
                out.terms.insert(Monomial(exps), c.clone());
            }
        }
        out
    }

    /// Coefficients with respect to `var`, ascending from `var^0`.
    pub fn as_univariate_in(&self, var: usize) -> Vec<Poly> {
        let d = self.degree_in(var);
        (0..=d).map(|k| self.coeff_of_power(var, k)).collect()
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e > 0 {
                let mut exps = m.0.clone();
                exps[var] -= 1;
                out.add_term(Monomial(exps), c.mul(&Scalar::from(e as i64)));
            }
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.ring.nvars());
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&point[v].pow(e as u32));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn eval_rat(&self, point: &[Rational]) -> Scalar {
        let scalars: Vec<Scalar> = point.iter().map(|r| Scalar::Rat(r.clone())).collect();
        self.eval(&scalars)
    }

    /// Substitutes `images[i]` for variable `i`. All images must share a ring,
    /// which becomes the ring of the result.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ring.nvars());
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .unwrap_or_else(|| self.ring.clone());
        for im in images {
            assert_eq!(im.ring, target, "substitution images must share a ring");
        }
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|_| vec![Poly::one(&target)]).collect();
        let power = |v: usize, e: usize, powers: &mut Vec<Vec<Poly>>| -> Poly {
            while powers[v].len() <= e {
                let last = powers[v].last().unwrap().mul(&images[v]);
                powers[v].push(last);
            }
            powers[v][e].clone()
        };
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(&target, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&power(v, e as usize, &mut powers));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Linear change of variables: variable `i` maps to the linear form
    /// `sum_j m[i][j] * y_j` in a ring with `m[i].len()` variables.
    pub fn substitute_linear(&self, target: &Ring, m: &[Vec<Scalar>]) -> Result<Poly> {
        if m.len() != self.ring.nvars() || m.iter().any(|row| row.len() != target.nvars()) {
            return Err(Error::DimensionMismatch(format!(
                "substitution matrix must be {} x {}",
                self.ring.nvars(),
                target.nvars()
            )));
        }
        let images: Vec<Poly> = m
            .iter()
            .map(|row| {
                let mut p = Poly::zero(target);
                for (j, c) in row.iter().enumerate() {
                    p.add_term(Monomial::var(target.nvars(), j), c.clone());
                }
                p
            })
            .collect();
        Ok(self.substitute(&images))
    }

    /// Transports the polynomial to another ring of the same size, matching
    /// variables by position.
    pub fn rename_ring(&self, target: &Ring) -> Poly {
        assert_eq!(target.nvars(), self.ring.nvars());
        Poly {
            ring: target.clone(),
            terms: self.terms.clone(),
        }
    }

    /// Embeds into a larger ring; `map[i]` is the index of old variable `i`.
    pub fn embed(&self, target: &Ring, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.ring.nvars());
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; target.nvars()];
            for (v, &e) in m.0.iter().enumerate() {
                exps[map[v]] = e;
            }
            out.terms.insert(Monomial(exps), c.clone());
        }
        out
    }

    /// Projects onto a smaller ring; variables not in `map` must not occur.
    pub fn project(&self, target: &Ring, map: &[Option<usize>]) -> Poly {
        assert_eq!(map.len(), self.ring.nvars());
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; target.nvars()];
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let idx = map[v].expect("projected variable occurs in polynomial");
                    exps[idx] = e;
                }
            }
            out.terms.insert(Monomial(exps), c.clone());
        }
        out
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.is_rational())
    }

    /// The common disc of the coefficients, `None` when all are rational.
    pub fn disc(&self) -> Option<BigInt> {
        for c in self.terms.values() {
            if let Some(d) = c.disc() {
                return Some(d.clone());
            }
        }
        None
    }

    /// Exact division: `Some(q)` with `self = q * d` or `None`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        self.assert_same_ring(d);
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.ring);
        let (dm, dc) = {
            let (m, c) = d.leading().unwrap();
            (m.clone(), c.clone())
        };
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return None;
            }
            let qm = rm.div(&dm);
            let qc = rc.div(&dc);
            let mut qterm = Poly::zero(&self.ring);
            qterm.terms.insert(qm, qc);
            rem = rem.sub(&qterm.mul(d));
            quot = quot.add(&qterm);
        }
        Some(quot)
    }

    /// Clears denominators and the integer content and makes the graded-lex
    /// leading coefficient positive. Rational polynomials only; polynomials
    /// with quadratic coefficients are normalized to be monic instead.
    pub fn canonicalize(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        if self.is_rational() {
            let mut lcm = BigInt::one();
            for c in self.terms.values() {
                let r = c.as_rational().unwrap();
                lcm = lcm.lcm(r.denom());
            }
            let mut gcd = BigInt::zero();
            for c in self.terms.values() {
                let r = c.as_rational().unwrap();
                let scaled = r.numer() * (&lcm / r.denom());
                gcd = gcd.gcd(&scaled);
            }
            let mut factor = Rational::new(lcm, gcd);
            let leading = self.leading().unwrap().1.as_rational().unwrap().clone();
            if (leading * &factor).is_negative() {
                factor = -factor;
            }
            self.scale_rat(&factor)
        } else {
            let lead = self.leading().unwrap().1.clone();
            self.scale(&lead.inv())
        }
    }

    /// Content of a rational polynomial: the positive rational `c` with
    /// `self = c * canonicalize(self)` up to the leading sign.
    pub fn rational_content(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.as_rational().expect("rational poly").denom());
        }
        let mut gcd = BigInt::zero();
        for c in self.terms.values() {
            let r = c.as_rational().unwrap();
            gcd = gcd.gcd(&(r.numer() * (&lcm / r.denom())));
        }
        Rational::new(gcd, lcm)
    }

    /// Restriction of a homogeneous polynomial in (x, y, z) to the symbolic
    /// line {s p + t q}: a polynomial in (p0..p2, q0..q2, s, t).
    pub fn restrict_to_line_symbolic(&self) -> Result<Poly> {
        if !self.is_homogeneous() {
            return Err(Error::NonHomogeneous);
        }
        assert_eq!(self.ring.nvars(), 3);
        let target = Ring::line_params();
        let s = Poly::var_named(&target, "s");
        let t = Poly::var_named(&target, "t");
        let images: Vec<Poly> = (0..3)
            .map(|i| {
                let p = Poly::var(&target, i);
                let q = Poly::var(&target, 3 + i);
                s.mul(&p).add(&t.mul(&q))
            })
            .collect();
        Ok(self.substitute(&images))
    }

    /// Restriction to the concrete line through `p` and `q`: a binary form in
    /// (s, t).
    pub fn restrict_to_line(&self, p: &[Rational; 3], q: &[Rational; 3]) -> Result<Poly> {
        if !self.is_homogeneous() {
            return Err(Error::NonHomogeneous);
        }
        assert_eq!(self.ring.nvars(), 3);
        let target = Ring::st();
        let s = Poly::var_named(&target, "s");
        let t = Poly::var_named(&target, "t");
        let images: Vec<Poly> = (0..3)
            .map(|i| {
                s.scale_rat(&p[i]).add(&t.scale_rat(&q[i]))
            })
            .collect();
        Ok(self.substitute(&images))
    }
}

fn fmt_mono(ring: &Ring, m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (v, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{}", ring.var_name(v))?;
        } else {
            write!(f, "{}^{}", ring.var_name(v), e)?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let constant = m.total_degree() == 0;
            match c {
                Scalar::Rat(r) => {
                    let neg = r.is_negative();
                    let mag = if neg { -r } else { r.clone() };
                    if i == 0 {
                        if neg {
                            write!(f, "-")?;
                        }
                    } else if neg {
                        write!(f, " - ")?;
                    } else {
                        write!(f, " + ")?;
                    }
                    if constant {
                        write!(f, "{}", mag)?;
                    } else {
                        if !mag.is_one() {
                            write!(f, "{}*", mag)?;
                        }
                        fmt_mono(&self.ring, m, f)?;
                    }
                }
                Scalar::Quad(_) => {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    if constant {
                        write!(f, "({})", c)?;
                    } else {
                        write!(f, "({})*", c)?;
                        fmt_mono(&self.ring, m, f)?;
                    }
                }
            }
        }
        Ok(())
    }
}
