//! The normal-form catalog with expected invariants, projective-equivalence
//! witnesses, invariant signatures, and the constructive classifier for
//! quadratic maps with quadric image.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::parse::parse_map;
use crate::planarity::{
    component_dependencies, dual_map, implicitize, is_trivial, maps_equal_up_to_scalar,
};
use crate::poly::factor::{factor_into_linear, QuadraticFactorization};
use crate::poly::linalg::QMatrix;
use crate::poly::{Monomial, Poly, Ring};
use crate::ratmap::{ProjPoint, RationalMap};
use crate::rng::SeededRng;
use crate::scalar::{invert_matrix, matrix_det, sqrt_in_field, Rational, Scalar};

/// Labels of the built-in normal forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Q1, Q2, Q3, Q4, Q5, Q6, Q7, Q8, Q9, Q10,
    C1, C2, C3, C4, C5, C6,
    Phi1a, Phi1b, Phi2,
}

impl Label {
    pub fn all() -> [Label; 19] {
        use Label::*;
        [
            Q1, Q2, Q3, Q4, Q5, Q6, Q7, Q8, Q9, Q10, C1, C2, C3, C4, C5, C6, Phi1a, Phi1b, Phi2,
        ]
    }

    pub fn as_str(&self) -> &'static str {
        use Label::*;
        match self {
            Q1 => "Q1", Q2 => "Q2", Q3 => "Q3", Q4 => "Q4", Q5 => "Q5",
            Q6 => "Q6", Q7 => "Q7", Q8 => "Q8", Q9 => "Q9", Q10 => "Q10",
            C1 => "C1", C2 => "C2", C3 => "C3", C4 => "C4", C5 => "C5", C6 => "C6",
            Phi1a => "Phi1a", Phi1b => "Phi1b", Phi2 => "Phi2",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Expected invariants of a catalog entry. Surface equations are stored for
/// the cubic forms whose equations the catalog pins down; every numeric field
/// is recomputed at test time.
#[derive(Clone, Debug)]
pub struct Expected {
    pub map_degree: usize,
    pub base_weight: usize,
    pub base_multiplicities: Vec<usize>,
    pub base_field_discs: Vec<i64>,
    pub surface_degree: usize,
    pub surface_equation: Option<&'static str>,
    pub topological_degree: usize,
    pub cotrivial: bool,
    pub dual_degree: usize,
}

#[derive(Clone, Debug)]
pub struct NormalForm {
    pub label: Label,
    pub map: RationalMap,
    pub source: &'static str,
    pub expected: Expected,
}

struct Entry {
    label: Label,
    text: &'static str,
    base: (usize, &'static [usize], &'static [i64]),
    surface: (usize, Option<&'static str>),
    k: usize,
    cotrivial: bool,
    dual_degree: usize,
}

const ENTRIES: &[Entry] = &[
    Entry { label: Label::Q1, text: "[x*y : x*z : y*z : x^2+y^2+z^2]",
        base: (0, &[], &[]), surface: (4, None), k: 1, cotrivial: false, dual_degree: 3 },
    Entry { label: Label::Q2, text: "[x*y : x*z : y*z : x^2-y^2+z^2]",
        base: (0, &[], &[]), surface: (4, None), k: 1, cotrivial: false, dual_degree: 3 },
    Entry { label: Label::Q3, text: "[x^2+y^2 : y^2+z^2 : x*z : y*z]",
        base: (0, &[], &[]), surface: (4, None), k: 1, cotrivial: false, dual_degree: 3 },
    Entry { label: Label::Q4, text: "[x^2-y^2 : x*y : y*z : z^2]",
        base: (0, &[], &[]), surface: (4, None), k: 1, cotrivial: false, dual_degree: 3 },
    Entry { label: Label::Q5, text: "[x*z-y*z : x^2 : y^2 : z^2]",
        base: (0, &[], &[]), surface: (4, None), k: 1, cotrivial: false, dual_degree: 3 },
    Entry { label: Label::Q6, text: "[x^2 : x*z-y^2 : y*z : z^2]",
        base: (0, &[], &[]), surface: (4, None), k: 1, cotrivial: false, dual_degree: 3 },
    Entry { label: Label::Q7, text: "[y^2-z^2 : x*y : x*z : y*z]",
        base: (1, &[1], &[0]), surface: (3, None), k: 1, cotrivial: false, dual_degree: 2 },
    Entry { label: Label::Q8, text: "[x*y : x*z : y^2 : z^2]",
        base: (1, &[1], &[0]), surface: (3, None), k: 1, cotrivial: false, dual_degree: 2 },
    Entry { label: Label::Q9, text: "[x*y : x*z-y^2 : y*z : z^2]",
        base: (1, &[1], &[0]), surface: (3, None), k: 1, cotrivial: false, dual_degree: 2 },
    // The dual planarization of (Q10) is equivalent to (Q10) itself, so the
    // content-cleared dual degree is 2.
    Entry { label: Label::Q10, text: "[x^2 : x*y : y^2 : z^2]",
        base: (0, &[], &[]), surface: (2, None), k: 2, cotrivial: false, dual_degree: 2 },
    Entry { label: Label::C1, text: "[z*(x^2+y^2) : y*(x^2+z^2) : x*(y^2+z^2) : x*y*z]",
        base: (3, &[1, 1, 1], &[0, 0, 0]),
        surface: (3, Some("4*t^3 - t*u^2 - t*v^2 - t*w^2 + u*v*w")),
        k: 2, cotrivial: false, dual_degree: 2 },
    Entry { label: Label::C2, text: "[z*(x^2-y^2) : y*(x^2+z^2) : x*(y^2-z^2) : x*y*z]",
        base: (3, &[1, 1, 1], &[0, 0, 0]),
        surface: (3, Some("4*t^3 + t*u^2 - t*v^2 + t*w^2 + u*v*w")),
        k: 2, cotrivial: false, dual_degree: 2 },
    Entry { label: Label::C3, text: "[x^2*z : z*(x^2+y^2) : x*(x^2+y^2-z^2) : y*(x^2+y^2+z^2)]",
        base: (3, &[1, 1, 1], &[-1, -1, 0]),
        surface: (3, Some("t^2*u + 4*u^2*v - 4*u*v^2 + u*w^2 - v*w^2")),
        k: 2, cotrivial: false, dual_degree: 2 },
    Entry { label: Label::C4, text: "[x^2*y : x*(x^2-y^2) : z*(x^2+y^2) : y*z^2]",
        base: (3, &[1, 2], &[0, 0]),
        surface: (3, Some("4*t*u^2 + t*v^2 - u*w^2")),
        k: 2, cotrivial: false, dual_degree: 2 },
    Entry { label: Label::C5, text: "[x^2*(x+y) : y^2*(x+y) : z^2*(x-y) : x*y*z]",
        base: (3, &[1, 2], &[0, 0]),
        surface: (3, Some("t^2*u - t^2*v - u*v*w")),
        k: 2, cotrivial: false, dual_degree: 2 },
    Entry { label: Label::C6, text: "[x^3 : x*y^2 : 2*x*y*z-y^3 : z*(x*z-y^2)]",
        base: (3, &[3], &[0]),
        surface: (3, Some("4*t*u*v - u*w^2 + v^3")),
        k: 2, cotrivial: false, dual_degree: 2 },
    Entry { label: Label::Phi1a, text: "[x^2 : x*y : x*z : y*z]",
        base: (2, &[1, 1], &[0, 0]), surface: (2, None), k: 1, cotrivial: true, dual_degree: 1 },
    Entry { label: Label::Phi1b, text: "[x^2 : x*y : x*z : y^2+z^2]",
        base: (2, &[1, 1], &[-1, -1]), surface: (2, None), k: 1, cotrivial: true, dual_degree: 1 },
    Entry { label: Label::Phi2, text: "[x^2 : x*y : y^2 : x*z]",
        base: (2, &[2], &[0]), surface: (2, None), k: 1, cotrivial: true, dual_degree: 1 },
];

/// All 19 built-in normal forms with exact components.
pub fn catalog() -> Vec<NormalForm> {
    ENTRIES
        .iter()
        .map(|e| {
            let map = parse_map(e.text)
                .and_then(|m| m.to_rational_map())
                .expect("catalog entries parse");
            NormalForm {
                label: e.label,
                map,
                source: e.text,
                expected: Expected {
                    map_degree: if matches!(e.label, Label::C1 | Label::C2 | Label::C3 | Label::C4 | Label::C5 | Label::C6) { 3 } else { 2 },
                    base_weight: e.base.0,
                    base_multiplicities: e.base.1.to_vec(),
                    base_field_discs: e.base.2.to_vec(),
                    surface_degree: e.surface.0,
                    surface_equation: e.surface.1,
                    topological_degree: e.k,
                    cotrivial: e.cotrivial,
                    dual_degree: e.dual_degree,
                },
            }
        })
        .collect()
}

/// Projective invariants used to separate classes; every field is
/// recomputable from the map and seed alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSignature {
    pub map_degree: usize,
    pub trivial: bool,
    pub cotrivial: bool,
    pub base_multiplicities: Vec<usize>,
    pub base_weight: usize,
    pub base_field_discs: Vec<BigInt>,
    pub surface_degree: usize,
    pub topological_degree: usize,
    pub dual_degree: Option<usize>,
    pub complete: bool,
}

pub fn invariant_signature(map: &RationalMap, seed: u64) -> Result<InvariantSignature> {
    let trivial = is_trivial(map);
    let surface = implicitize(map, 4)?;
    let base = map.base_locus(seed);
    let mut base_multiplicities: Vec<usize> =
        base.points.iter().map(|b| b.multiplicity).collect();
    base_multiplicities.sort();
    let mut base_field_discs: Vec<BigInt> = base
        .points
        .iter()
        .map(|b| b.point.field_disc().unwrap_or_else(BigInt::zero))
        .collect();
    base_field_discs.sort();
    let mut complete = base.complete;
    let (cotrivial, dual_degree) = if trivial {
        (true, None)
    } else {
        match dual_map(map) {
            Ok(d) => {
                let deps = component_dependencies(&d.components);
                (!deps.is_empty(), Some(d.degree))
            }
            // Generic lines map into lines; co-trivial by the pencil argument.
            Err(Error::ImageSpansLine) => (true, None),
            Err(e) => return Err(e),
        }
    };
    let topological_degree = if surface.image_dimension == 2 {
        let k = map.topological_degree(seed)?;
        complete &= k.samples_complete;
        k.sampled
    } else {
        complete = false;
        0
    };
    Ok(InvariantSignature {
        map_degree: map.degree(),
        trivial,
        cotrivial,
        base_multiplicities,
        base_weight: base.weight,
        base_field_discs,
        surface_degree: surface.degree,
        topological_degree,
        dual_degree,
        complete,
    })
}

/// A projective-equivalence witness: `Phi = mu . Phi' . eta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub eta: Vec<Vec<Scalar>>,
    pub mu: Vec<Vec<Scalar>>,
}

impl EquivalenceWitness {
    pub fn identity() -> EquivalenceWitness {
        let id = |n: usize| -> Vec<Vec<Scalar>> {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
                        .collect()
                })
                .collect()
        };
        EquivalenceWitness {
            eta: id(3),
            mu: id(4),
        }
    }

    pub fn from_rational(eta: &[Vec<Rational>], mu: &[Vec<Rational>]) -> EquivalenceWitness {
        let conv = |m: &[Vec<Rational>]| -> Vec<Vec<Scalar>> {
            m.iter()
                .map(|row| row.iter().map(|r| Scalar::Rat(r.clone())).collect())
                .collect()
        };
        EquivalenceWitness {
            eta: conv(eta),
            mu: conv(mu),
        }
    }

    pub fn is_invertible(&self) -> bool {
        !matrix_det(&self.eta).is_zero() && !matrix_det(&self.mu).is_zero()
    }
}

/// Applies a witness to a normal form: the components of `mu . (phi' . eta)`.
pub fn apply_witness(form: &[Poly; 4], w: &EquivalenceWitness) -> [Poly; 4] {
    let ring = form[0].ring().clone();
    let composed: Vec<Poly> = form
        .iter()
        .map(|f| {
            f.substitute_linear(&ring, &w.eta)
                .expect("3x3 witness matrix")
        })
        .collect();
    let mut out = Vec::with_capacity(4);
    for row in &w.mu {
        let mut acc = Poly::zero(&ring);
        for (f, c) in composed.iter().zip(row.iter()) {
            acc = acc.add(&f.scale(c));
        }
        out.push(acc);
    }
    out.try_into().unwrap()
}

/// Exact check of `Phi = mu . Phi' . eta` up to one global scalar.
pub fn verify_equivalence(
    map: &RationalMap,
    other: &RationalMap,
    w: &EquivalenceWitness,
) -> Result<bool> {
    if !w.is_invertible() {
        return Err(Error::InvalidWitness);
    }
    let transformed = apply_witness(other.components(), w);
    Ok(maps_equal_up_to_scalar(&transformed, map.components()))
}

/// Labels of the real classification of quadratic maps with quadric image.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadricLabel {
    Phi1a,
    Phi1b,
    Phi2,
    Phi3,
}

impl QuadricLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            QuadricLabel::Phi1a => "Phi1a",
            QuadricLabel::Phi1b => "Phi1b",
            QuadricLabel::Phi2 => "Phi2",
            QuadricLabel::Phi3 => "Phi3",
        }
    }

    /// Over the complex numbers Phi1a and Phi1b merge into one class.
    pub fn complex_str(&self) -> &'static str {
        match self {
            QuadricLabel::Phi1a | QuadricLabel::Phi1b => "Phi1",
            QuadricLabel::Phi2 => "Phi2",
            QuadricLabel::Phi3 => "Phi3",
        }
    }

    fn normal_form(&self) -> [Poly; 4] {
        let r = Ring::xyz();
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let z = Poly::var(&r, 2);
        match self {
            QuadricLabel::Phi1a => [x.pow(2), x.mul(&y), x.mul(&z), y.mul(&z)],
            QuadricLabel::Phi1b => [x.pow(2), x.mul(&y), x.mul(&z), y.pow(2).add(&z.pow(2))],
            QuadricLabel::Phi2 => [x.pow(2), x.mul(&y), y.pow(2), x.mul(&z)],
            QuadricLabel::Phi3 => [x.pow(2), x.mul(&y), y.pow(2), z.pow(2)],
        }
    }
}

#[derive(Clone, Debug)]
pub struct QuadricClassification {
    pub label: QuadricLabel,
    /// Constructive witness `Phi = mu . NF . eta` when all entries stay in
    /// one quadratic extension.
    pub witness: Option<EquivalenceWitness>,
}

/// Tracks the running reduction `cur(x) = T . Phi(L x)` so the final witness
/// is `mu = T^{-1}`, `eta = L^{-1}`.
struct Reduction {
    cur: [Poly; 4],
    target: Vec<Vec<Scalar>>,
    source: Vec<Vec<Scalar>>,
}

impl Reduction {
    fn new(map: &RationalMap) -> Reduction {
        let id = EquivalenceWitness::identity();
        Reduction {
            cur: map.components().clone(),
            target: id.mu,
            source: id.eta,
        }
    }

    fn target_step(&mut self, n: &[Vec<Scalar>]) {
        let ring = self.cur[0].ring().clone();
        let mut out = Vec::with_capacity(4);
        for row in n {
            let mut acc = Poly::zero(&ring);
            for (f, c) in self.cur.iter().zip(row.iter()) {
                acc = acc.add(&f.scale(c));
            }
            out.push(acc);
        }
        self.cur = out.try_into().unwrap();
        self.target = mat_mul(n, &self.target);
    }

    fn source_step(&mut self, m: &[Vec<Scalar>]) {
        let ring = self.cur[0].ring().clone();
        self.cur = self
            .cur
            .iter()
            .map(|f| f.substitute_linear(&ring, m).expect("3x3 matrix"))
            .collect::<Vec<_>>()
            .try_into()
            .unwrap();
        self.source = mat_mul(&self.source, m);
    }

    fn witness(&self) -> Option<EquivalenceWitness> {
        let mu = invert_matrix(&self.target)?;
        let eta = invert_matrix(&self.source)?;
        Some(EquivalenceWitness { eta, mu })
    }
}

fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = Scalar::zero();
                    for l in 0..k {
                        acc = acc.add(&a[i][l].mul(&b[l][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn coeff_rat(p: &Poly, exps: &[u16]) -> Scalar {
    p.coeff(&Monomial(exps.to_vec()))
}

/// Gram matrix of the quadric in component order (phi_0, ..., phi_3), i.e. in
/// the coordinates (u, v, w, t) of the target space.
fn gram_component_order(q: &Poly) -> Vec<Vec<Rational>> {
    let ring = q.ring();
    // Component alpha corresponds to target variable: 0 -> u, 1 -> v, 2 -> w, 3 -> t.
    let var_of = [
        ring.index_of("u").unwrap(),
        ring.index_of("v").unwrap(),
        ring.index_of("w").unwrap(),
        ring.index_of("t").unwrap(),
    ];
    let two = Rational::from(BigInt::from(2));
    (0..4)
        .map(|i| {
            (0..4)
                .map(|j| {
                    let mut exps = vec![0u16; 4];
                    exps[var_of[i]] += 1;
                    exps[var_of[j]] += 1;
                    let c = match coeff_rat(q, &exps) {
                        Scalar::Rat(r) => r,
                        _ => unreachable!("rational quadric"),
                    };
                    if i == j {
                        c
                    } else {
                        c / &two
                    }
                })
                .collect()
        })
        .collect()
}

fn bilinear(gram: &[Vec<Rational>], p: &[Rational], q: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for i in 0..4 {
        for j in 0..4 {
            acc += &gram[i][j] * &p[i] * &q[j];
        }
    }
    acc
}

/// Splits the scalar coordinates of a point into rational and sqrt parts:
/// `coord = a + b sqrt(disc)`.
fn split_parts(p: &ProjPoint) -> (Vec<Rational>, Vec<Rational>) {
    let mut re = Vec::new();
    let mut im = Vec::new();
    for c in p.coords() {
        match c {
            Scalar::Rat(r) => {
                re.push(r.clone());
                im.push(Rational::zero());
            }
            Scalar::Quad(q) => {
                re.push(q.a.clone());
                im.push(q.b.clone());
            }
        }
    }
    (re, im)
}

fn scalar_cols_to_matrix(cols: [Vec<Scalar>; 3]) -> Vec<Vec<Scalar>> {
    (0..3)
        .map(|r| (0..3).map(|c| cols[c][r].clone()).collect())
        .collect()
}

/// Extracts, for each component of `cur`, its coordinates in the given basis
/// of quadratic monomial forms; asserts the residual coefficients vanish.
fn express_in_basis(
    cur: &[Poly; 4],
    basis_exps: [&[u16]; 4],
    zero_checks: &[(&[u16], Option<&[u16]>)],
) -> Vec<Vec<Scalar>> {
    let mut rows = Vec::with_capacity(4);
    for f in cur {
        for (exps, equal_to) in zero_checks {
            let c = coeff_rat(f, exps);
            match equal_to {
                None => assert!(c.is_zero(), "residual coefficient must vanish"),
                Some(other) => {
                    assert_eq!(c, coeff_rat(f, other), "paired coefficients must agree")
                }
            }
        }
        rows.push(
            basis_exps
                .iter()
                .map(|exps| coeff_rat(f, exps))
                .collect::<Vec<Scalar>>(),
        );
    }
    rows
}

/// The constructive real classification of a quadratic map whose image is
/// dense in a quadric surface (and not contained in a plane). The decision
/// tree follows the constructive reduction: a smooth quadric leads to the
/// two-base-point forms, a cone to the [x^2 : xy : y^2 : phi_3] reduction and
/// the vanishing/sign of the coefficient a_2.
pub fn classify_quadric_image(map: &RationalMap, seed: u64) -> Result<QuadricClassification> {
    if map.degree() != 2 {
        return Err(Error::NotAQuadricImageMap("map degree is not 2".into()));
    }
    if is_trivial(map) {
        return Err(Error::NotAQuadricImageMap(
            "image is contained in a plane".into(),
        ));
    }
    let surface = implicitize(map, 2).map_err(|_| {
        Error::NotAQuadricImageMap("no quadric equation of degree <= 2".into())
    })?;
    if surface.degree != 2 || surface.image_dimension != 2 || surface.equations.len() != 1 {
        return Err(Error::NotAQuadricImageMap(
            "image is not a two-dimensional quadric".into(),
        ));
    }
    let quadric = &surface.equations[0];
    let gram = gram_component_order(quadric);
    let rank = QMatrix::from_rows(gram.clone()).rank();
    match rank {
        4 => classify_smooth(map, seed),
        3 => classify_cone(map, &gram),
        _ => Err(Error::NotAQuadricImageMap(
            "quadric has rank at most 2".into(),
        )),
    }
}

/// Smooth quadric: the base locus is two distinct points; both rational or a
/// real-irrational pair gives Phi1a, a complex-conjugate pair gives Phi1b.
fn classify_smooth(map: &RationalMap, seed: u64) -> Result<QuadricClassification> {
    let base = map.base_locus(seed);
    if !base.complete || base.points.len() != 2 || base.weight != 2 {
        return Err(Error::NotAQuadricImageMap(
            "smooth-quadric map must have exactly two simple base points".into(),
        ));
    }
    let a = &base.points[0].point;
    let b = &base.points[1].point;
    let disc = a.field_disc();
    let label = match &disc {
        Some(d) if d.is_negative() => QuadricLabel::Phi1b,
        _ => QuadricLabel::Phi1a,
    };
    let mut reduction = Reduction::new(map);
    let source_matrix: Option<Vec<Vec<Scalar>>> = match (&disc, label) {
        (None, _) => {
            // Rational points: M = [r a b] sends e1 -> a, e2 -> b.
            let mut cols: Option<[Vec<Scalar>; 3]> = None;
            for unit in 0..3 {
                let mut r = vec![Scalar::zero(); 3];
                r[unit] = Scalar::one();
                let cand = [r.clone(), a.coords().to_vec(), b.coords().to_vec()];
                let m = scalar_cols_to_matrix(cand.clone());
                if !matrix_det(&m).is_zero() {
                    cols = Some(cand);
                    break;
                }
            }
            cols.map(scalar_cols_to_matrix)
        }
        (Some(d), _) => {
            // a = p + sqrt(d) q with rational vectors p, q. The reduction
            // sends the pair to the standard positions with entries in
            // Q(sqrt(|d|)).
            let (p, q) = split_parts(a);
            let s = sqrt_in_field(&Rational::from(d.abs()));
            let half = Scalar::Rat(crate::scalar::rat(1, 2));
            let t_cols: [Vec<Scalar>; 3] = if d.is_negative() {
                // Targets: eta p = (0, s, -s), eta q = (0, 1, 1), eta r = e0.
                [
                    vec![Scalar::zero(), s.clone(), s.neg()],
                    vec![Scalar::zero(), Scalar::one(), Scalar::one()],
                    vec![Scalar::one(), Scalar::zero(), Scalar::zero()],
                ]
            } else {
                // Targets: eta p = (0, 1/2, 1/2), eta q = (0, 1/(2s), -1/(2s)).
                let inv2s = half.mul(&s.inv());
                [
                    vec![Scalar::zero(), half.clone(), half.clone()],
                    vec![Scalar::zero(), inv2s.clone(), inv2s.neg()],
                    vec![Scalar::one(), Scalar::zero(), Scalar::zero()],
                ]
            };
            // eta = T . [p q r]^{-1}; the source step uses M = eta^{-1}.
            let mut m_pre: Option<Vec<Vec<Scalar>>> = None;
            for unit in 0..3 {
                let mut r = vec![Scalar::zero(); 3];
                r[unit] = Scalar::one();
                let cols = [
                    p.iter().map(|v| Scalar::Rat(v.clone())).collect::<Vec<_>>(),
                    q.iter().map(|v| Scalar::Rat(v.clone())).collect::<Vec<_>>(),
                    r,
                ];
                let m = scalar_cols_to_matrix(cols);
                if !matrix_det(&m).is_zero() {
                    m_pre = Some(m);
                    break;
                }
            }
            let t_mat = scalar_cols_to_matrix(t_cols);
            m_pre.and_then(|pre| invert_matrix(&t_mat).map(|t_inv| mat_mul(&pre, &t_inv)))
        }
    };
    let source_matrix = match source_matrix {
        Some(m) => m,
        None => {
            return Ok(QuadricClassification {
                label,
                witness: None,
            })
        }
    };
    reduction.source_step(&source_matrix);
    // Express the transformed components in the normal-form basis.
    let rows = match label {
        QuadricLabel::Phi1a => express_in_basis(
            &reduction.cur,
            [&[2, 0, 0], &[1, 1, 0], &[1, 0, 1], &[0, 1, 1]],
            &[(&[0, 2, 0], None), (&[0, 0, 2], None)],
        ),
        QuadricLabel::Phi1b => express_in_basis(
            &reduction.cur,
            [&[2, 0, 0], &[1, 1, 0], &[1, 0, 1], &[0, 2, 0]],
            &[(&[0, 1, 1], None), (&[0, 0, 2], Some(&[0, 2, 0]))],
        ),
        _ => unreachable!(),
    };
    let n = match invert_matrix(&rows) {
        Some(n) => n,
        None => {
            return Ok(QuadricClassification {
                label,
                witness: None,
            })
        }
    };
    reduction.target_step(&n);
    debug_assert_eq!(reduction.cur, label.normal_form());
    Ok(QuadricClassification {
        label,
        witness: reduction.witness(),
    })
}

/// Cone: transform the target so the quadric becomes Y1^2 = Y0 Y2, reduce the
/// map to [x^2 : xy : y^2 : z (a0 x + a1 y + a2 z)], and decide by a2.
fn classify_cone(map: &RationalMap, gram: &[Vec<Rational>]) -> Result<QuadricClassification> {
    let mut reduction = Reduction::new(map);
    // Vertex = radical of the Gram matrix.
    let vertex = {
        let kernel = QMatrix::from_rows(gram.to_vec()).kernel_basis();
        assert_eq!(kernel.len(), 1, "rank-3 quadric has a one-dimensional radical");
        kernel[0].clone()
    };
    // Two rational points on the cone with nonzero pairing, off the vertex.
    let mut rng = SeededRng::new(0xc0de).derive(map.components()[0].num_terms() as u64);
    let eval_point = |rng: &mut SeededRng| -> Option<Vec<Rational>> {
        let x = ProjPoint::from_rationals(&rng.proj_point3()).ok()?;
        let img = map.evaluate(&x)?;
        Some(
            img.coords()
                .iter()
                .map(|c| c.as_rational().expect("rational image").clone())
                .collect(),
        )
    };
    let (p1, p2) = {
        let mut found = None;
        for _ in 0..64 {
            let (Some(a), Some(b)) = (eval_point(&mut rng), eval_point(&mut rng)) else {
                continue;
            };
            if !bilinear(gram, &a, &b).is_zero() {
                found = Some((a, b));
                break;
            }
        }
        found.ok_or_else(|| Error::NotAQuadricImageMap("no transversal point pair".into()))?
    };
    // w orthogonal to both p1 and p2 with Q(w) != 0.
    let ortho_rows: Vec<Vec<Rational>> = vec![
        (0..4).map(|j| bilinear_row(gram, &p1, j)).collect(),
        (0..4).map(|j| bilinear_row(gram, &p2, j)).collect(),
    ];
    let ortho_kernel = QMatrix::from_rows(ortho_rows).kernel_basis();
    let q_of = |v: &[Rational]| bilinear(gram, v, v);
    let mut w = None;
    'outer: for i in 0..ortho_kernel.len() {
        for j in 0..ortho_kernel.len() {
            let cand: Vec<Rational> = (0..4)
                .map(|k| {
                    if i == j {
                        ortho_kernel[i][k].clone()
                    } else {
                        &ortho_kernel[i][k] + &ortho_kernel[j][k]
                    }
                })
                .collect();
            if !q_of(&cand).is_zero() {
                w = Some(cand);
                break 'outer;
            }
        }
    }
    let w = w.ok_or_else(|| Error::NotAQuadricImageMap("degenerate orthogonal space".into()))?;
    let alpha = q_of(&w);
    let beta = bilinear(gram, &p1, &p2);
    let t_scale = -&alpha / (Rational::from(BigInt::from(2)) * &beta);
    // Basis (p1, w, t p2, vertex); new components are N^{-1} phi.
    let basis_cols: Vec<Vec<Rational>> = vec![
        p1.clone(),
        w.clone(),
        p2.iter().map(|c| c * &t_scale).collect(),
        vertex.clone(),
    ];
    let n_basis: Vec<Vec<Scalar>> = (0..4)
        .map(|r| {
            (0..4)
                .map(|c| Scalar::Rat(basis_cols[c][r].clone()))
                .collect()
        })
        .collect();
    let n_inv = invert_matrix(&n_basis)
        .ok_or_else(|| Error::NotAQuadricImageMap("degenerate cone basis".into()))?;
    reduction.target_step(&n_inv);
    // Now psi_1^2 = psi_0 psi_2 exactly.
    let psi0 = reduction.cur[0].clone();
    let psi1 = reduction.cur[1].clone();
    let psi2 = reduction.cur[2].clone();
    debug_assert_eq!(psi1.mul(&psi1), psi0.mul(&psi2));
    let (chi0, c0) = rank_one_root(&psi0)?;
    let (chi1, c2) = rank_one_root(&psi2)?;
    let rho = psi1
        .exact_div(&chi0.mul(&chi1))
        .and_then(|q| {
            if q.is_constant() && !q.is_zero() {
                Some(q.eval(&[Scalar::zero(), Scalar::zero(), Scalar::zero()]))
            } else {
                None
            }
        })
        .expect("psi_1 is a scalar multiple of chi_0 chi_1");
    // Rescale target coordinates to (chi0^2, chi0 chi1, chi1^2, psi3).
    let rescale: Vec<Vec<Scalar>> = vec![
        vec![Scalar::Rat(c0.recip()), Scalar::zero(), Scalar::zero(), Scalar::zero()],
        vec![Scalar::zero(), rho.inv(), Scalar::zero(), Scalar::zero()],
        vec![Scalar::zero(), Scalar::zero(), Scalar::Rat(c2.recip()), Scalar::zero()],
        vec![Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::one()],
    ];
    reduction.target_step(&rescale);
    // Source change: chi0 -> x, chi1 -> y.
    let xyz = Ring::xyz();
    let lin_coeffs = |p: &Poly| -> Vec<Scalar> {
        vec![
            coeff_rat(p, &[1, 0, 0]),
            coeff_rat(p, &[0, 1, 0]),
            coeff_rat(p, &[0, 0, 1]),
        ]
    };
    let mut c_rows = vec![lin_coeffs(&chi0), lin_coeffs(&chi1)];
    for unit in 0..3 {
        let mut r = vec![Scalar::zero(); 3];
        r[unit] = Scalar::one();
        let mut cand = c_rows.clone();
        cand.push(r);
        if cand.len() == 3 && !matrix_det(&cand).is_zero() {
            c_rows = cand;
            break;
        }
    }
    assert_eq!(c_rows.len(), 3);
    let c_inv = invert_matrix(&c_rows).expect("chi forms are independent");
    reduction.source_step(&c_inv);
    let x = Poly::var(&xyz, 0);
    let y = Poly::var(&xyz, 1);
    debug_assert_eq!(reduction.cur[0], x.pow(2));
    debug_assert_eq!(reduction.cur[1], x.mul(&y));
    debug_assert_eq!(reduction.cur[2], y.pow(2));
    // Kill the (x, y)-part of the last component.
    let phi3 = reduction.cur[3].clone();
    let kill: Vec<Vec<Scalar>> = vec![
        vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()],
        vec![Scalar::zero(), Scalar::one(), Scalar::zero(), Scalar::zero()],
        vec![Scalar::zero(), Scalar::zero(), Scalar::one(), Scalar::zero()],
        vec![
            coeff_rat(&phi3, &[2, 0, 0]).neg(),
            coeff_rat(&phi3, &[1, 1, 0]).neg(),
            coeff_rat(&phi3, &[0, 2, 0]).neg(),
            Scalar::one(),
        ],
    ];
    reduction.target_step(&kill);
    // phi3 = z (a0 x + a1 y + a2 z)
    let phi3 = reduction.cur[3].clone();
    let a0 = coeff_rat(&phi3, &[1, 0, 1]);
    let a1 = coeff_rat(&phi3, &[0, 1, 1]);
    let a2 = coeff_rat(&phi3, &[0, 0, 2]);
    if a2.is_zero() {
        if a0.is_zero() && a1.is_zero() {
            return Err(Error::NotAQuadricImageMap(
                "last component vanished; image lies in a plane".into(),
            ));
        }
        let (a0, a1) = if a0.is_zero() {
            // Swap x and y in the source and components 0, 2 in the target.
            let swap_src = vec![
                vec![Scalar::zero(), Scalar::one(), Scalar::zero()],
                vec![Scalar::one(), Scalar::zero(), Scalar::zero()],
                vec![Scalar::zero(), Scalar::zero(), Scalar::one()],
            ];
            reduction.source_step(&swap_src);
            let swap_tgt = vec![
                vec![Scalar::zero(), Scalar::zero(), Scalar::one(), Scalar::zero()],
                vec![Scalar::zero(), Scalar::one(), Scalar::zero(), Scalar::zero()],
                vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()],
                vec![Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::one()],
            ];
            reduction.target_step(&swap_tgt);
            (a1.clone(), a0.clone())
        } else {
            (a0.clone(), a1.clone())
        };
        // Substitute x = (xt - a1 y)/a0 via the inverse change xt = a0 x + a1 y.
        let c2_rows = vec![
            vec![a0.clone(), a1.clone(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::one(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::zero(), Scalar::one()],
        ];
        let c2_inv = invert_matrix(&c2_rows).expect("a0 nonzero");
        reduction.source_step(&c2_inv);
        // First three components are independent quadratics in (x, y):
        // bring them back to (x^2, xy, y^2) by a target change.
        let rows = (0..3)
            .map(|i| {
                vec![
                    coeff_rat(&reduction.cur[i], &[2, 0, 0]),
                    coeff_rat(&reduction.cur[i], &[1, 1, 0]),
                    coeff_rat(&reduction.cur[i], &[0, 2, 0]),
                ]
            })
            .collect::<Vec<_>>();
        let inv3 = invert_matrix(&rows).expect("independent quadratics");
        let mut fix = vec![vec![Scalar::zero(); 4]; 4];
        for i in 0..3 {
            for j in 0..3 {
                fix[i][j] = inv3[i][j].clone();
            }
        }
        fix[3][3] = Scalar::one();
        reduction.target_step(&fix);
        debug_assert_eq!(reduction.cur, QuadricLabel::Phi2.normal_form());
        Ok(QuadricClassification {
            label: QuadricLabel::Phi2,
            witness: reduction.witness(),
        })
    } else {
        // a2 != 0: z = c0' x + c1' y + c2' z with c2' = 1/sqrt(|a2|).
        let a2_rat = a2.as_rational().expect("rational reduction").clone();
        let s = sqrt_in_field(&a2_rat.abs());
        let two = Scalar::from(2);
        let c0p = a0.neg().div(&two.mul(&a2));
        let c1p = a1.neg().div(&two.mul(&a2));
        let c2p = s.inv();
        let subst = vec![
            vec![Scalar::one(), Scalar::zero(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::one(), Scalar::zero()],
            vec![c0p, c1p, c2p],
        ];
        reduction.source_step(&subst);
        // Last component is now +-z^2 plus a quadratic in (x, y); kill it.
        let phi3 = reduction.cur[3].clone();
        let sign = coeff_rat(&phi3, &[0, 0, 2]);
        debug_assert!(sign == Scalar::one() || sign == Scalar::from(-1));
        let kill2 = vec![
            vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::one(), Scalar::zero(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::zero(), Scalar::one(), Scalar::zero()],
            vec![
                coeff_rat(&phi3, &[2, 0, 0]).neg().div(&sign),
                coeff_rat(&phi3, &[1, 1, 0]).neg().div(&sign),
                coeff_rat(&phi3, &[0, 2, 0]).neg().div(&sign),
                sign.inv(),
            ],
        ];
        reduction.target_step(&kill2);
        debug_assert_eq!(reduction.cur, QuadricLabel::Phi3.normal_form());
        Ok(QuadricClassification {
            label: QuadricLabel::Phi3,
            witness: reduction.witness(),
        })
    }
}

fn bilinear_row(gram: &[Vec<Rational>], p: &[Rational], j: usize) -> Rational {
    let mut acc = Rational::zero();
    for i in 0..4 {
        acc += &gram[i][j] * &p[i];
    }
    acc
}

/// Writes a rank-one quadratic form as `c * L^2`.
fn rank_one_root(psi: &Poly) -> Result<(Poly, Rational)> {
    match factor_into_linear(psi)? {
        QuadraticFactorization::Split { factors, scale } => {
            if factors.0 != factors.1 {
                return Err(Error::NotAQuadricImageMap(
                    "cone component is not a perfect square".into(),
                ));
            }
            Ok((factors.0, scale))
        }
        QuadraticFactorization::Irreducible => Err(Error::NotAQuadricImageMap(
            "cone component is irreducible".into(),
        )),
    }
}

/// Labels of catalog entries whose invariant signature coincides with the
/// map's. A necessary-condition filter, never a proof of equivalence.
pub fn match_against_catalog(map: &RationalMap, seed: u64) -> Result<Vec<Label>> {
    if is_trivial(map) {
        return Ok(Vec::new());
    }
    let sig = invariant_signature(map, seed)?;
    let reference = catalog_signatures(seed);
    Ok(reference
        .iter()
        .filter(|(_, s)| *s == sig)
        .map(|(l, _)| *l)
        .collect())
}

type SignatureTable = Arc<Vec<(Label, InvariantSignature)>>;

/// Catalog signatures for a seed, computed once per process.
pub fn catalog_signatures(seed: u64) -> SignatureTable {
    static CACHE: OnceLock<Mutex<HashMap<u64, SignatureTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("catalog signature cache");
    guard
        .entry(seed)
        .or_insert_with(|| {
            Arc::new(
                catalog()
                    .iter()
                    .map(|nf| {
                        let sig = invariant_signature(&nf.map, seed)
                            .expect("catalog signatures are computable");
                        (nf.label, sig)
                    })
                    .collect(),
            )
        })
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(label: Label) -> RationalMap {
        catalog()
            .into_iter()
            .find(|nf| nf.label == label)
            .unwrap()
            .map
    }

    #[test]
    fn catalog_has_19_forms() {
        assert_eq!(catalog().len(), 19);
    }

    #[test]
    fn catalog_component_examples() {
        // (C5) components
        let c5 = form(Label::C5);
        let r = Ring::xyz();
        let x = Poly::var_named(&r, "x");
        let y = Poly::var_named(&r, "y");
        let z = Poly::var_named(&r, "z");
        assert_eq!(c5.components()[0], x.pow(2).mul(&x.add(&y)));
        assert_eq!(c5.components()[1], y.pow(2).mul(&x.add(&y)));
        assert_eq!(c5.components()[2], z.pow(2).mul(&x.sub(&y)));
        assert_eq!(c5.components()[3], x.mul(&y).mul(&z));
        // (Q10)
        let q10 = form(Label::Q10);
        assert_eq!(q10.components()[3], z.pow(2));
        // Phi1b
        let phi1b = form(Label::Phi1b);
        assert_eq!(phi1b.components()[3], y.pow(2).add(&z.pow(2)));
    }

    #[test]
    fn signature_q10() {
        let sig = invariant_signature(&form(Label::Q10), 0).unwrap();
        assert!(sig.complete);
        assert_eq!(sig.map_degree, 2);
        assert!(!sig.trivial);
        assert!(!sig.cotrivial);
        assert_eq!(sig.base_weight, 0);
        assert_eq!(sig.surface_degree, 2);
        assert_eq!(sig.topological_degree, 2);
        // Derived by hand: the content-cleared dual of (Q10) is again
        // quadratic (the dual planarization is equivalent to the map itself).
        assert_eq!(sig.dual_degree, Some(2));
    }

    #[test]
    fn signature_c1() {
        let sig = invariant_signature(&form(Label::C1), 0).unwrap();
        assert!(sig.complete);
        assert_eq!(sig.map_degree, 3);
        assert_eq!(sig.base_weight, 3);
        assert_eq!(sig.base_multiplicities, vec![1, 1, 1]);
        assert_eq!(sig.surface_degree, 3);
        assert_eq!(sig.topological_degree, 2);
        assert_eq!(sig.dual_degree, Some(2));
        assert!(!sig.cotrivial);
    }

    #[test]
    fn signature_phi1a() {
        let sig = invariant_signature(&form(Label::Phi1a), 0).unwrap();
        assert_eq!(sig.map_degree, 2);
        assert!(!sig.trivial);
        assert!(sig.cotrivial);
        assert_eq!(sig.base_weight, 2);
        assert_eq!(sig.surface_degree, 2);
        assert_eq!(sig.topological_degree, 1);
        assert_eq!(sig.dual_degree, Some(1));
    }

    #[test]
    fn verify_identity_witness() {
        let q10 = form(Label::Q10);
        let w = EquivalenceWitness::identity();
        assert!(verify_equivalence(&q10, &q10, &w).unwrap());
    }

    #[test]
    fn verify_swap_witness() {
        // The x <-> y symmetry of (Q10): with eta the source swap and mu the
        // target permutation (u, v, w, t) -> (w, v, u, t), mu . Q10 . eta
        // returns (Q10) itself.
        let q10 = form(Label::Q10);
        let eta = vec![
            vec![Scalar::zero(), Scalar::one(), Scalar::zero()],
            vec![Scalar::one(), Scalar::zero(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::zero(), Scalar::one()],
        ];
        let mu = vec![
            vec![Scalar::zero(), Scalar::zero(), Scalar::one(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::one(), Scalar::zero(), Scalar::zero()],
            vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::one()],
        ];
        let w = EquivalenceWitness { eta, mu };
        assert!(verify_equivalence(&q10, &q10, &w).unwrap());
        // The swapped presentation itself is equivalent to (Q10) with the
        // source swap alone.
        let r = Ring::xyz();
        let x = Poly::var_named(&r, "x");
        let y = Poly::var_named(&r, "y");
        let z = Poly::var_named(&r, "z");
        let swapped = RationalMap::new([y.pow(2), y.mul(&x), x.pow(2), z.pow(2)]).unwrap();
        let mut w2 = EquivalenceWitness::identity();
        w2.eta = w.eta.clone();
        assert!(verify_equivalence(&swapped, &q10, &w2).unwrap());
    }

    #[test]
    fn verify_sign_flip_witness() {
        // [x^2 : xy : y^2 : -z^2] = diag(1,1,1,-1) . (Q10).
        let q10 = form(Label::Q10);
        let r = Ring::xyz();
        let x = Poly::var_named(&r, "x");
        let y = Poly::var_named(&r, "y");
        let z = Poly::var_named(&r, "z");
        let flipped = RationalMap::new([x.pow(2), x.mul(&y), y.pow(2), z.pow(2).neg()]).unwrap();
        let mut w = EquivalenceWitness::identity();
        w.mu[3][3] = Scalar::from(-1);
        assert!(verify_equivalence(&flipped, &q10, &w).unwrap());
    }

    #[test]
    fn witness_inverts_symmetrically() {
        // If w carries the normal form to the disguised map, the inverted
        // witness carries the disguised map back to the normal form.
        let q10 = form(Label::Q10);
        let mut rng = SeededRng::new(11);
        let w = EquivalenceWitness::from_rational(
            &rng.invertible_matrix(3),
            &rng.invertible_matrix(4),
        );
        let disguised = RationalMap::new(apply_witness(q10.components(), &w)).unwrap();
        assert!(verify_equivalence(&disguised, &q10, &w).unwrap());
        let inverted = EquivalenceWitness {
            eta: invert_matrix(&w.eta).unwrap(),
            mu: invert_matrix(&w.mu).unwrap(),
        };
        assert!(verify_equivalence(&q10, &disguised, &inverted).unwrap());
    }

    #[test]
    fn singular_witness_rejected() {
        let q10 = form(Label::Q10);
        let mut w = EquivalenceWitness::identity();
        w.eta[0][0] = Scalar::zero();
        assert!(matches!(
            verify_equivalence(&q10, &q10, &w),
            Err(Error::InvalidWitness)
        ));
    }

    #[test]
    fn classify_the_four_forms() {
        // "one and only one": the four section-5 forms classify to distinct
        // labels, each with a verified witness.
        let cases = [
            (form(Label::Phi1a), QuadricLabel::Phi1a),
            (form(Label::Phi1b), QuadricLabel::Phi1b),
            (form(Label::Phi2), QuadricLabel::Phi2),
            (form(Label::Q10), QuadricLabel::Phi3),
        ];
        for (map, expected) in cases {
            let c = classify_quadric_image(&map, 0).unwrap();
            assert_eq!(c.label, expected);
            let w = c.witness.expect("witness available");
            let nf = RationalMap::new(c.label.normal_form()).unwrap();
            assert!(verify_equivalence(&map, &nf, &w).unwrap());
        }
    }

    #[test]
    fn classify_rejects_cubic() {
        assert!(matches!(
            classify_quadric_image(&form(Label::C1), 0),
            Err(Error::NotAQuadricImageMap(_))
        ));
    }

    #[test]
    fn classify_rejects_quartic_surface_map() {
        assert!(matches!(
            classify_quadric_image(&form(Label::Q1), 0),
            Err(Error::NotAQuadricImageMap(_))
        ));
    }

    #[test]
    fn classify_with_irrational_witnesses() {
        // Maps whose reduction needs entries in Q(sqrt(D)) with D != +-1:
        // conjugate base pair of disc -2, real-irrational pair of disc 2, and
        // cone maps with square-free a2 of either sign.
        let r = Ring::xyz();
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let z = Poly::var(&r, 2);
        let two = Scalar::from(2);
        let cases: Vec<([Poly; 4], QuadricLabel)> = vec![
            (
                // base points [0 : 1 : +- sqrt(-1/2)]
                [
                    x.pow(2),
                    x.mul(&y),
                    x.mul(&z),
                    y.pow(2).add(&z.pow(2).scale(&two)),
                ],
                QuadricLabel::Phi1b,
            ),
            (
                // base points [0 : 1 : +- sqrt(1/2)]
                [
                    x.pow(2),
                    x.mul(&y),
                    x.mul(&z),
                    y.pow(2).sub(&z.pow(2).scale(&two)),
                ],
                QuadricLabel::Phi1a,
            ),
            (
                // cone with a2 = 3
                [
                    x.pow(2),
                    x.mul(&y),
                    y.pow(2),
                    z.mul(&x.add(&z.scale(&Scalar::from(3)))),
                ],
                QuadricLabel::Phi3,
            ),
            (
                // cone with a2 = -3: the final sign flip applies
                [
                    x.pow(2),
                    x.mul(&y),
                    y.pow(2),
                    z.mul(&x.sub(&z.scale(&Scalar::from(3)))),
                ],
                QuadricLabel::Phi3,
            ),
        ];
        for (components, expected) in cases {
            let map = RationalMap::new(components).unwrap();
            let c = classify_quadric_image(&map, 0).unwrap();
            assert_eq!(c.label, expected);
            let w = c.witness.expect("witness in a single quadratic extension");
            let nf = RationalMap::new(expected.normal_form()).unwrap();
            assert!(verify_equivalence(&map, &nf, &w).unwrap());
        }
    }

    #[test]
    fn classify_conjugated_forms() {
        let mut rng = SeededRng::new(17);
        for label in [
            QuadricLabel::Phi1a,
            QuadricLabel::Phi1b,
            QuadricLabel::Phi2,
            QuadricLabel::Phi3,
        ] {
            let nf = RationalMap::new(label.normal_form()).unwrap();
            for _ in 0..3 {
                let eta = rng.invertible_matrix(3);
                let mu = rng.invertible_matrix(4);
                let w = EquivalenceWitness::from_rational(&eta, &mu);
                let disguised =
                    RationalMap::new(apply_witness(nf.components(), &w)).unwrap();
                let c = classify_quadric_image(&disguised, 0).unwrap();
                assert_eq!(c.label, label, "label stable under conjugation");
                if let Some(cw) = c.witness {
                    assert!(verify_equivalence(&disguised, &nf, &cw).unwrap());
                }
            }
        }
    }

    #[test]
    fn match_catalog_c3_unique() {
        let matches = match_against_catalog(&form(Label::C3), 0).unwrap();
        assert_eq!(matches, vec![Label::C3]);
    }

    #[test]
    fn match_trivial_empty() {
        let r = Ring::xyz();
        let x = Poly::var_named(&r, "x");
        let y = Poly::var_named(&r, "y");
        let trivial = RationalMap::new([
            x.pow(2),
            x.mul(&y),
            y.pow(2),
            x.pow(2).add(&x.mul(&y)),
        ])
        .unwrap();
        assert!(match_against_catalog(&trivial, 0).unwrap().is_empty());
    }

    #[test]
    fn match_conjugated_q10() {
        let mut rng = SeededRng::new(5);
        let q10 = form(Label::Q10);
        let eta = rng.invertible_matrix(3);
        let mu = rng.invertible_matrix(4);
        let w = EquivalenceWitness::from_rational(&eta, &mu);
        let disguised = RationalMap::new(apply_witness(q10.components(), &w)).unwrap();
        let matches = match_against_catalog(&disguised, 0).unwrap();
        assert_eq!(matches, vec![Label::Q10]);
    }
}
