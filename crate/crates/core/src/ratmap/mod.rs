//! Rational maps P^2 -> P^3 and their local invariants: normalization and
//! content extraction, evaluation, base loci with multiplicities, fibers,
//! topological degree, and the Jacobian degeneracy locus.

pub mod fulton;
pub mod zeros;

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::gcd::poly_gcd_many;
use crate::poly::linalg::PolyMatrix;
use crate::poly::{Poly, Ring};
use crate::rng::SeededRng;
use crate::scalar::{Rational, Scalar};
use fulton::{intersection_multiplicity, Multiplicity};
use zeros::common_projective_zeros;

/// A point of P^2 or P^3 with exact coordinates, normalized so the first
/// nonzero coordinate is 1. Equality is exact coordinate equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPoint {
    coords: Vec<Scalar>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Scalar>) -> Result<ProjPoint> {
        assert!(coords.len() == 3 || coords.len() == 4);
        // All coordinates must live in one quadratic extension.
        let mut disc: Option<BigInt> = None;
        for c in &coords {
            if let Some(d) = c.disc() {
                match &disc {
                    None => disc = Some(d.clone()),
                    Some(existing) if existing == d => {}
                    Some(existing) => {
                        return Err(Error::MixedDiscs(existing.clone(), d.clone()))
                    }
                }
            }
        }
        let first = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(Error::ZeroInput)?
            .clone();
        let inv = first.inv();
        Ok(ProjPoint {
            coords: coords.iter().map(|c| c.mul(&inv)).collect(),
        })
    }

    pub fn from_rationals(coords: &[Rational]) -> Result<ProjPoint> {
        ProjPoint::new(coords.iter().map(|r| Scalar::Rat(r.clone())).collect())
    }

    pub fn from_ints(coords: &[i64]) -> ProjPoint {
        ProjPoint::new(coords.iter().map(|&c| Scalar::from(c)).collect())
            .expect("nonzero integer point")
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// 0 for rational points, the disc otherwise (after normalization).
    pub fn field_disc(&self) -> Option<BigInt> {
        self.coords.iter().find_map(|c| c.disc().cloned())
    }

    pub fn conj(&self) -> ProjPoint {
        ProjPoint {
            coords: self.coords.iter().map(|c| c.conj()).collect(),
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}

/// A base point together with its multiplicity m(b).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasePoint {
    pub point: ProjPoint,
    pub multiplicity: usize,
}

/// The indeterminacy locus of a map with multiplicities and flags.
#[derive(Clone, Debug)]
pub struct BaseLocus {
    pub points: Vec<BasePoint>,
    /// Sum of multiplicities (meaningful when complete).
    pub weight: usize,
    pub complete: bool,
    /// True when content clearing at construction was nontrivial, i.e. the
    /// original map's base locus contained a curve.
    pub positive_dimensional: bool,
}

/// A fiber of the map over a target point.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub points: Vec<ProjPoint>,
    pub complete: bool,
}

/// Sampled topological degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologicalDegree {
    pub sampled: usize,
    pub samples_complete: bool,
}

/// Jacobian degeneracy data: the four 3x3 minors of the 4x3 Jacobian, their
/// common factor (a nontrivial factor certifies a one-dimensional degeneracy
/// locus), and the rank at a generic rational point.
#[derive(Clone, Debug)]
pub struct JacobianInfo {
    pub minors: [Poly; 4],
    pub common_factor: Poly,
    pub generic_rank: usize,
}

/// A rational map P^2 -> P^3: four content-cleared homogeneous polynomials of
/// one degree in {1, 2, 3}. The same object represents the linear web of
/// plane curves spanned by the components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMap {
    components: [Poly; 4],
    degree: usize,
    extracted_content: Poly,
}

impl RationalMap {
    /// Normalizes four raw components: checks homogeneity and equal degrees,
    /// divides out the four-way gcd, and verifies the cleared degree.
    pub fn new(raw: [Poly; 4]) -> Result<RationalMap> {
        let ring = raw[0].ring().clone();
        for p in &raw {
            p.checked_same_ring(&raw[0])?;
            if !p.is_rational() {
                return Err(Error::DimensionMismatch(
                    "map components must have rational coefficients".into(),
                ));
            }
        }
        if ring.nvars() != 3 {
            return Err(Error::DimensionMismatch(
                "map components must live in three variables".into(),
            ));
        }
        if raw.iter().all(|p| p.is_zero()) {
            return Err(Error::AllComponentsZero);
        }
        let mut degree = None;
        for p in &raw {
            if p.is_zero() {
                continue;
            }
            let d = p.homogeneous_degree().ok_or(Error::NonHomogeneous)?;
            match degree {
                None => degree = Some(d),
                Some(existing) if existing == d => {}
                Some(_) => {
                    return Err(Error::DimensionMismatch(
                        "components must share one degree".into(),
                    ))
                }
            }
        }
        let content = poly_gcd_many(&raw);
        let components: Vec<Poly> = raw
            .iter()
            .map(|p| {
                if p.is_zero() {
                    p.clone()
                } else {
                    p.exact_div(&content).expect("content divides")
                }
            })
            .collect();
        let cleared_degree = components
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.homogeneous_degree().unwrap())
            .next()
            .unwrap();
        if !(1..=3).contains(&cleared_degree) {
            return Err(Error::UnsupportedDegree(cleared_degree));
        }
        Ok(RationalMap {
            components: components.try_into().unwrap(),
            degree: cleared_degree,
            extracted_content: content,
        })
    }

    pub fn components(&self) -> &[Poly; 4] {
        &self.components
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn extracted_content(&self) -> &Poly {
        &self.extracted_content
    }

    pub fn ring(&self) -> &Ring {
        self.components[0].ring()
    }

    /// The web member cut out by the plane with covector `c`.
    pub fn web_member(&self, c: &[Rational; 4]) -> Poly {
        let mut acc = Poly::zero(self.ring());
        for (p, coeff) in self.components.iter().zip(c.iter()) {
            acc = acc.add(&p.scale_rat(coeff));
        }
        acc
    }

    /// Image of a point; `None` exactly when all four components vanish
    /// (an indeterminacy point).
    pub fn evaluate(&self, p: &ProjPoint) -> Option<ProjPoint> {
        assert_eq!(p.dim(), 2);
        let vals: Vec<Scalar> = self.components.iter().map(|f| f.eval(p.coords())).collect();
        if vals.iter().all(|v| v.is_zero()) {
            None
        } else {
            Some(ProjPoint::new(vals).expect("image point in one extension"))
        }
    }

    /// Jacobian minors, their common factor, and the generic rank.
    pub fn jacobian_degeneracy(&self) -> JacobianInfo {
        let ring = self.ring();
        let jac = PolyMatrix::from_fn(ring, 4, 3, |a, j| self.components[a].derivative(j));
        let minor = |skip: usize| -> Poly {
            let rows: Vec<usize> = (0..4).filter(|&r| r != skip).collect();
            PolyMatrix::from_fn(ring, 3, 3, |r, c| jac.get(rows[r], c).clone()).det()
        };
        let minors = [minor(0), minor(1), minor(2), minor(3)];
        let common_factor = poly_gcd_many(&minors);
        JacobianInfo {
            minors,
            common_factor,
            generic_rank: self.jacobian_generic_rank(),
        }
    }

    /// Rank of the Jacobian matrix at seeded random rational points; 3 means
    /// the image is a surface. Cheap, no symbolic minors.
    pub fn jacobian_generic_rank(&self) -> usize {
        let ring = self.ring();
        let jac = PolyMatrix::from_fn(ring, 4, 3, |a, j| self.components[a].derivative(j));
        let mut rng = SeededRng::new(0x6a61636f);
        let mut generic_rank = 0;
        for _ in 0..3 {
            let p = rng.proj_point3();
            let m = crate::poly::linalg::QMatrix::from_rows(
                (0..4)
                    .map(|a| {
                        (0..3)
                            .map(|j| match jac.get(a, j).eval_rat(&p) {
                                Scalar::Rat(v) => v,
                                _ => unreachable!(),
                            })
                            .collect()
                    })
                    .collect(),
            );
            generic_rank = generic_rank.max(m.rank());
            if generic_rank == 3 {
                break;
            }
        }
        generic_rank
    }

    /// All indeterminacy points with multiplicities.
    pub fn base_locus(&self, seed: u64) -> BaseLocus {
        let mut rng = SeededRng::new(seed).derive(0xba5e);
        let locus = common_projective_zeros(&self.components, &mut rng);
        let mut points = Vec::new();
        let mut weight = 0;
        for p in locus.points {
            let multiplicity = self
                .base_point_multiplicity(&p, seed)
                .expect("computed base point has a multiplicity");
            weight += multiplicity;
            points.push(BasePoint {
                point: p,
                multiplicity,
            });
        }
        BaseLocus {
            points,
            weight,
            complete: locus.complete,
            positive_dimensional: !self.extracted_content.is_constant(),
        }
    }

    /// Minimum intersection index at `b` of seeded random pairs of web
    /// members; the minimum is attained generically, and the degree-formula
    /// cross-check downstream catches any residual overestimate.
    pub fn base_point_multiplicity(&self, b: &ProjPoint, seed: u64) -> Result<usize> {
        if self.evaluate(b).is_some() {
            return Err(Error::NotABasePoint);
        }
        let chart = b
            .coords()
            .iter()
            .position(|c| !c.is_zero())
            .expect("projective point");
        let aff = Ring::new(&["a", "b"]);
        let mut images = Vec::new();
        let mut affine_coords = Vec::new();
        let mut var_idx = 0;
        for (i, c) in b.coords().iter().enumerate() {
            if i == chart {
                images.push(Poly::one(&aff));
            } else {
                images.push(Poly::var(&aff, var_idx));
                affine_coords.push(c.clone());
                var_idx += 1;
            }
        }
        let localized: Vec<Poly> = self
            .components
            .iter()
            .map(|p| p.substitute(&images))
            .collect();
        let pt: [Scalar; 2] = [affine_coords[0].clone(), affine_coords[1].clone()];
        let mut rng = SeededRng::new(seed).derive(0x6d756c74 ^ chart as u64);
        let mut best: Option<usize> = None;
        let mut valid = 0;
        let mut attempts = 0;
        while valid < 8 && attempts < 32 {
            attempts += 1;
            let draw = |rng: &mut SeededRng| -> Vec<Rational> {
                (0..4).map(|_| Rational::from(BigInt::from(rng.int(9)))).collect()
            };
            let c1 = draw(&mut rng);
            let c2 = draw(&mut rng);
            let member = |c: &[Rational]| -> Poly {
                let mut acc = Poly::zero(&aff);
                for (p, coeff) in localized.iter().zip(c.iter()) {
                    acc = acc.add(&p.scale_rat(coeff));
                }
                acc
            };
            let f = member(&c1);
            let g = member(&c2);
            if f.is_zero() || g.is_zero() {
                continue;
            }
            match intersection_multiplicity(&f, &g, &pt) {
                Multiplicity::Finite(m) => {
                    valid += 1;
                    best = Some(best.map_or(m, |b| b.min(m)));
                }
                Multiplicity::Infinite => continue,
            }
        }
        best.ok_or(Error::NotABasePoint)
    }

    /// Solves the rank-one conditions `phi_i(x) y_j = phi_j(x) y_i`, excludes
    /// base points, and verifies every candidate by evaluation.
    pub fn fiber_over(&self, y: &ProjPoint, seed: u64) -> Fiber {
        self.fiber_over_with_known(y, seed, &[])
    }

    /// Fiber computation seeded with already-known fiber members (their
    /// projections are divided out of the eliminant, which keeps the integer
    /// factoring small when fiber points have large coordinates).
    pub fn fiber_over_with_known(&self, y: &ProjPoint, seed: u64, known: &[ProjPoint]) -> Fiber {
        assert_eq!(y.dim(), 3);
        let mut system = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                let p = self.components[i]
                    .scale(&y.coords()[j])
                    .sub(&self.components[j].scale(&y.coords()[i]));
                if !p.is_zero() {
                    system.push(p);
                }
            }
        }
        if system.is_empty() {
            return Fiber {
                points: Vec::new(),
                complete: false,
            };
        }
        let mut rng = SeededRng::new(seed).derive(0xf1be5);
        let locus = zeros::common_projective_zeros_with_known(&system, &mut rng, known);
        let points: Vec<ProjPoint> = locus
            .points
            .into_iter()
            .filter(|p| match self.evaluate(p) {
                Some(img) => &img == y,
                None => false,
            })
            .collect();
        Fiber {
            points,
            complete: locus.complete,
        }
    }

    /// Maximum cardinality among complete fibers over five seeded random
    /// image points.
    pub fn topological_degree(&self, seed: u64) -> Result<TopologicalDegree> {
        if self.jacobian_generic_rank() < 3 {
            return Err(Error::NotASurfaceImage);
        }
        let mut rng = SeededRng::new(seed).derive(0x70d36);
        let mut best_complete: Option<usize> = None;
        let mut best_any = 0;
        let mut samples_complete = true;
        for sample in 0..5u64 {
            let mut source = None;
            for _ in 0..16 {
                let cand = ProjPoint::from_rationals(&rng.proj_point3()).expect("nonzero");
                if self.evaluate(&cand).is_some() {
                    source = Some(cand);
                    break;
                }
            }
            let source = source.expect("found a point outside the base locus");
            let image = self.evaluate(&source).unwrap();
            let fiber =
                self.fiber_over_with_known(&image, seed.wrapping_add(sample), std::slice::from_ref(&source));
            debug_assert!(
                !fiber.complete || fiber.points.contains(&source),
                "complete fibers contain their source point"
            );
            best_any = best_any.max(fiber.points.len());
            if fiber.complete {
                best_complete = Some(best_complete.map_or(fiber.points.len(), |b| {
                    b.max(fiber.points.len())
                }));
            } else {
                samples_complete = false;
            }
        }
        match best_complete {
            Some(sampled) => Ok(TopologicalDegree {
                sampled,
                samples_complete,
            }),
            None => Ok(TopologicalDegree {
                sampled: best_any,
                samples_complete: false,
            }),
        }
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} : {} : {} : {}]",
            self.components[0], self.components[1], self.components[2], self.components[3]
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> (Ring, Poly, Poly, Poly) {
        let r = Ring::xyz();
        (
            r.clone(),
            Poly::var_named(&r, "x"),
            Poly::var_named(&r, "y"),
            Poly::var_named(&r, "z"),
        )
    }

    /// Phi_1 = [x^2 : xy : xz : yz]
    fn phi1() -> RationalMap {
        let (_, x, y, z) = xyz();
        RationalMap::new([x.pow(2), x.mul(&y), x.mul(&z), y.mul(&z)]).unwrap()
    }

    /// (Q10) = [x^2 : xy : y^2 : z^2]
    fn q10() -> RationalMap {
        let (_, x, y, z) = xyz();
        RationalMap::new([x.pow(2), x.mul(&y), y.pow(2), z.pow(2)]).unwrap()
    }

    #[test]
    fn content_extraction() {
        let (_, x, y, z) = xyz();
        let map = RationalMap::new([
            x.mul(&x.pow(2)),
            x.mul(&x.mul(&y)),
            x.mul(&y.pow(2)),
            x.mul(&z.pow(2)),
        ])
        .unwrap();
        assert_eq!(map.degree(), 2);
        assert_eq!(map.extracted_content(), &x);
        assert_eq!(map.components(), q10().components());
    }

    #[test]
    fn no_content_is_one() {
        let (_, x, y, z) = xyz();
        let map = RationalMap::new([x.pow(3), y.pow(3), z.pow(3), x.pow(2).mul(&y)]).unwrap();
        assert!(map.extracted_content().is_constant());
        assert_eq!(map.degree(), 3);
    }

    #[test]
    fn degree_out_of_range() {
        let (_, x, y, z) = xyz();
        let quartic = [x.pow(4), y.pow(4), z.pow(4), x.pow(2).mul(&y.pow(2))];
        assert!(matches!(
            RationalMap::new(quartic),
            Err(Error::UnsupportedDegree(4))
        ));
    }

    #[test]
    fn evaluate_indeterminate() {
        let map = phi1();
        assert!(map.evaluate(&ProjPoint::from_ints(&[0, 1, 0])).is_none());
        let img = map.evaluate(&ProjPoint::from_ints(&[1, 1, 1])).unwrap();
        assert_eq!(img, ProjPoint::from_ints(&[1, 1, 1, 1]));
    }

    #[test]
    fn evaluate_projectively_well_defined() {
        let map = q10();
        let p = ProjPoint::from_ints(&[2, 3, 5]);
        let p_scaled = ProjPoint::new(vec![
            Scalar::from(2 * 7),
            Scalar::from(3 * 7),
            Scalar::from(5 * 7),
        ])
        .unwrap();
        assert_eq!(map.evaluate(&p), map.evaluate(&p_scaled));
    }

    #[test]
    fn base_locus_phi1() {
        let locus = phi1().base_locus(0);
        assert!(locus.complete);
        assert!(!locus.positive_dimensional);
        assert_eq!(locus.weight, 2);
        let pts: Vec<&ProjPoint> = locus.points.iter().map(|b| &b.point).collect();
        assert!(pts.contains(&&ProjPoint::from_ints(&[0, 1, 0])));
        assert!(pts.contains(&&ProjPoint::from_ints(&[0, 0, 1])));
        assert!(locus.points.iter().all(|b| b.multiplicity == 1));
    }

    #[test]
    fn base_locus_q1_empty() {
        let (_, x, y, z) = xyz();
        let q1 = RationalMap::new([
            x.mul(&y),
            x.mul(&z),
            y.mul(&z),
            x.pow(2).add(&y.pow(2)).add(&z.pow(2)),
        ])
        .unwrap();
        let locus = q1.base_locus(0);
        assert!(locus.complete);
        assert_eq!(locus.weight, 0);
        assert!(locus.points.is_empty());
    }

    #[test]
    fn multiplicity_q8() {
        // (Q8) = [xy : xz : y^2 : z^2] has base point [1:0:0] of multiplicity 1.
        let (_, x, y, z) = xyz();
        let q8 = RationalMap::new([x.mul(&y), x.mul(&z), y.pow(2), z.pow(2)]).unwrap();
        let locus = q8.base_locus(0);
        assert!(locus.complete);
        assert_eq!(locus.weight, 1);
        assert_eq!(locus.points[0].point, ProjPoint::from_ints(&[1, 0, 0]));
    }

    #[test]
    fn not_a_base_point() {
        let map = q10();
        assert!(matches!(
            map.base_point_multiplicity(&ProjPoint::from_ints(&[1, 1, 1]), 0),
            Err(Error::NotABasePoint)
        ));
    }

    #[test]
    fn fiber_q10() {
        let map = q10();
        let y = ProjPoint::from_ints(&[1, 1, 1, 1]);
        let fiber = map.fiber_over(&y, 0);
        assert!(fiber.complete);
        assert_eq!(fiber.points.len(), 2);
        assert!(fiber.points.contains(&ProjPoint::from_ints(&[1, 1, 1])));
        assert!(fiber.points.contains(&ProjPoint::from_ints(&[1, 1, -1])));
    }

    #[test]
    fn fiber_phi1_singleton() {
        let map = phi1();
        let y = ProjPoint::from_ints(&[1, 1, 1, 1]);
        let fiber = map.fiber_over(&y, 0);
        assert!(fiber.complete);
        assert_eq!(fiber.points, vec![ProjPoint::from_ints(&[1, 1, 1])]);
    }

    #[test]
    fn fiber_contains_source() {
        let map = q10();
        let mut rng = SeededRng::new(42);
        for _ in 0..3 {
            let p = ProjPoint::from_rationals(&rng.proj_point3()).unwrap();
            if let Some(img) = map.evaluate(&p) {
                let fiber = map.fiber_over(&img, 1);
                assert!(fiber.points.contains(&p));
                for q in &fiber.points {
                    assert_eq!(map.evaluate(q).unwrap(), img);
                }
            }
        }
    }

    #[test]
    fn topological_degrees() {
        assert_eq!(q10().topological_degree(0).unwrap().sampled, 2);
        assert_eq!(phi1().topological_degree(0).unwrap().sampled, 1);
    }

    #[test]
    fn jacobian_q10() {
        let info = q10().jacobian_degeneracy();
        assert_eq!(info.generic_rank, 3);
        // Every minor contains the ramification factor z.
        let (_, _, _, z) = xyz();
        assert!(info.common_factor.exact_div(&z).is_some());
    }

    #[test]
    fn jacobian_linear_immersion_rank() {
        let (_, x, y, z) = xyz();
        // A rank-2 example: components spanned by three squares of two forms.
        let map = RationalMap::new([
            x.pow(2),
            x.mul(&y),
            y.pow(2),
            x.pow(2).add(&x.mul(&y)),
        ])
        .unwrap();
        let info = map.jacobian_degeneracy();
        assert_eq!(info.generic_rank, 2);
        let _ = z;
    }

    #[test]
    fn base_locus_sampling_invariant() {
        // Base points are exactly the indeterminate points among sampled
        // random points (no false negatives on samples).
        let map = phi1();
        let locus = map.base_locus(0);
        let mut rng = SeededRng::new(7);
        for _ in 0..200 {
            let p = ProjPoint::from_rationals(&rng.proj_point3()).unwrap();
            let indeterminate = map.evaluate(&p).is_none();
            let listed = locus.points.iter().any(|b| b.point == p);
            assert_eq!(indeterminate, listed);
        }
    }
}
