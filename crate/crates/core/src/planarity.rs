//! The planarization predicates and constructions: the planarization test,
//! triviality and co-triviality detection, the dual planarization, plane and
//! residual conic of a line, implicitization of the image surface, the
//! degree-formula cross-check, and the double-dual identity.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::gcd::content_clear_tuple;
use crate::poly::linalg::{symbolic_kernel_vector, PolyMatrix, QMatrix};
use crate::poly::{Monomial, Poly, Ring};
use crate::ratmap::{ProjPoint, RationalMap};
use crate::rng::SeededRng;
use crate::scalar::{Rational, Scalar};

/// All monomials of total degree `d` in the ring, leading (graded-lex
/// largest) first.
pub fn monomials_of_degree(ring: &Ring, d: usize) -> Vec<Monomial> {
    fn gen(nvars: usize, d: usize, prefix: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if prefix.len() == nvars - 1 {
            prefix.push(d as u16);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=d {
            prefix.push(e as u16);
            gen(nvars, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    gen(ring.nvars(), d, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// The (d+1) x 4 matrix of a symbolic line restriction: row `i` holds the
/// coefficients of `s^(d-i) t^i` in `phi_alpha(s p + t q)`, as polynomials in
/// the (p, q) parameter ring.
#[derive(Clone, Debug)]
pub struct LineRestrictionMatrix {
    pub matrix: PolyMatrix,
    pub map_degree: usize,
}

pub fn line_restriction_matrix(map: &RationalMap) -> LineRestrictionMatrix {
    let d = map.degree();
    let pq = Ring::pq();
    let full = Ring::line_params();
    let s_idx = full.index_of("s").unwrap();
    let t_idx = full.index_of("t").unwrap();
    let restricted: Vec<Poly> = map
        .components()
        .iter()
        .map(|p| p.restrict_to_line_symbolic().expect("components homogeneous"))
        .collect();
    let project_map: Vec<Option<usize>> = (0..full.nvars())
        .map(|v| if v < 6 { Some(v) } else { None })
        .collect();
    let matrix = PolyMatrix::from_fn(&pq, d + 1, 4, |i, alpha| {
        restricted[alpha]
            .coeff_of_power(s_idx, d - i)
            .coeff_of_power(t_idx, i)
            .project(&pq, &project_map)
    });
    LineRestrictionMatrix {
        matrix,
        map_degree: d,
    }
}

/// Concrete restriction coefficient matrix for the line through `p` and `q`.
fn concrete_restriction(map: &RationalMap, p: &[Rational; 3], q: &[Rational; 3]) -> QMatrix {
    let d = map.degree();
    let st = Ring::st();
    let s_idx = st.index_of("s").unwrap();
    let t_idx = st.index_of("t").unwrap();
    let rows: Vec<Vec<Rational>> = (0..=d)
        .map(|i| {
            map.components()
                .iter()
                .map(|f| {
                    let r = f.restrict_to_line(p, q).expect("homogeneous");
                    let mut exps = vec![0u16; 2];
                    exps[s_idx] = (d - i) as u16;
                    exps[t_idx] = i as u16;
                    match r.coeff(&Monomial(exps)) {
                        Scalar::Rat(v) => v,
                        _ => unreachable!(),
                    }
                })
                .collect()
        })
        .collect();
    QMatrix::from_rows(rows)
}

/// Determinant of the concrete 4x4 restriction matrix of a cubic map at one
/// witness line; a nonzero value certifies non-planarity.
pub fn planarity_witness_det(
    map: &RationalMap,
    p: &[Rational; 3],
    q: &[Rational; 3],
) -> Rational {
    assert_eq!(map.degree(), 3);
    let m = concrete_restriction(map, p, q);
    let ring = Ring::new(&["c"]);
    let pm = PolyMatrix::from_fn(&ring, 4, 4, |r, c| {
        Poly::constant(&ring, Scalar::Rat(m.get(r, c).clone()))
    });
    match pm.det().eval(&[Scalar::zero()]) {
        Scalar::Rat(v) => v,
        _ => unreachable!(),
    }
}

/// Decides the planarization property. Maps of degree 1 and 2 take lines to
/// (subsets of) lines and conics, hence are always planarizations; for cubic
/// maps the 4x4 symbolic restriction determinant must vanish identically.
/// Seeded sample lines serve as a fast rejection pre-filter.
pub fn is_planarization(map: &RationalMap) -> bool {
    if map.degree() <= 2 {
        return true;
    }
    let mut rng = SeededRng::new(0x706c616e);
    for _ in 0..3 {
        let p = rng.proj_point3();
        let q = rng.proj_point3();
        if !planarity_witness_det(map, &p, &q).is_zero() {
            return false;
        }
    }
    line_restriction_matrix(map).matrix_det_is_zero()
}

impl LineRestrictionMatrix {
    fn matrix_det_is_zero(&self) -> bool {
        assert_eq!(self.map_degree, 3);
        let square = PolyMatrix::from_fn(&Ring::pq(), 4, 4, |r, c| self.matrix.get(r, c).clone());
        square.det().is_zero()
    }
}

/// True iff the four components are linearly dependent over Q, i.e. the
/// image lies in a plane.
pub fn is_trivial(map: &RationalMap) -> bool {
    !component_dependencies(map.components()).is_empty()
}

/// Kernel of the coefficient matrix of a 4-tuple of equal-degree forms:
/// vectors `b` with `sum b_alpha f_alpha = 0`.
pub fn component_dependencies(components: &[Poly; 4]) -> Vec<Vec<Rational>> {
    let degree = components
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.homogeneous_degree().expect("homogeneous"))
        .max()
        .unwrap_or(0);
    let ring = components[0].ring();
    let monos = monomials_of_degree(ring, degree);
    let rows: Vec<Vec<Rational>> = monos
        .iter()
        .map(|m| {
            components
                .iter()
                .map(|f| match f.coeff(m) {
                    Scalar::Rat(v) => v,
                    _ => panic!("rational components expected"),
                })
                .collect()
        })
        .collect();
    QMatrix::from_rows(rows).kernel_basis()
}

/// The dual planarization in line coordinates: the map sending a line to the
/// unique plane containing its image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualMap {
    /// Content-cleared components in the line-coordinate ring (l0, l1, l2);
    /// source is the dual plane, target the dual 3-space.
    pub components: [Poly; 4],
    pub degree: usize,
}

/// Builds the linear system `c . phi = l . m` over the line-coordinate ring
/// and extracts the `c`-part of its one-dimensional kernel.
pub fn dual_map(map: &RationalMap) -> Result<DualMap> {
    if is_trivial(map) {
        return Err(Error::TrivialMap);
    }
    let d = map.degree();
    if d == 1 {
        // Degree-1 maps take lines to lines (and are always trivial anyway).
        return Err(Error::ImageSpansLine);
    }
    let lines = Ring::lines();
    let xyz = map.ring();
    let row_monos = monomials_of_degree(xyz, d);
    let m_monos = monomials_of_degree(xyz, d - 1);
    let cols = 4 + m_monos.len();
    let system = PolyMatrix::from_fn(&lines, row_monos.len(), cols, |r, c| {
        let mu = &row_monos[r];
        if c < 4 {
            Poly::constant(&lines, map.components()[c].coeff(mu))
        } else {
            // -coefficient of mu in (l . x) * x^nu
            let nu = &m_monos[c - 4];
            let mut acc = Poly::zero(&lines);
            for j in 0..3 {
                let shifted = nu.mul(&Monomial::var(3, j));
                if &shifted == mu {
                    acc = acc.sub(&Poly::var(&lines, j));
                }
            }
            acc
        }
    });
    let kernel = match symbolic_kernel_vector(&system) {
        Ok(v) => v,
        Err(Error::DegenerateKernel) => return Err(Error::ImageSpansLine),
        Err(e) => return Err(e),
    };
    let c_part = content_clear_tuple(&kernel[0..4]);
    let components: [Poly; 4] = c_part.try_into().expect("four components");
    // Re-verify the defining divisibility identity in the combined ring.
    let combined = Ring::new(&["l0", "l1", "l2", "x", "y", "z"]);
    let mut total = Poly::zero(&combined);
    for (alpha, comp) in components.iter().enumerate() {
        let c_emb = comp.embed(&combined, &[0, 1, 2]);
        let phi_emb = map.components()[alpha].embed(&combined, &[3, 4, 5]);
        total = total.add(&c_emb.mul(&phi_emb));
    }
    let mut line_form = Poly::zero(&combined);
    for j in 0..3 {
        line_form = line_form.add(&Poly::var(&combined, j).mul(&Poly::var(&combined, 3 + j)));
    }
    if !total.is_zero() {
        assert!(
            total.exact_div(&line_form).is_some(),
            "dual components must satisfy the divisibility identity"
        );
    }
    let degree = components
        .iter()
        .find(|p| !p.is_zero())
        .and_then(|p| p.homogeneous_degree())
        .expect("dual components not all zero");
    Ok(DualMap { components, degree })
}

/// Co-triviality: every image plane passes through one fixed point.
#[derive(Clone, Debug)]
pub struct Cotriviality {
    pub cotrivial: bool,
    /// The common point of the planes, when one exists and the map is not
    /// trivial.
    pub center: Option<ProjPoint>,
}

pub fn is_cotrivial(map: &RationalMap) -> Result<Cotriviality> {
    if is_trivial(map) {
        // Trivial planarizations are co-trivial by definition.
        return Ok(Cotriviality {
            cotrivial: true,
            center: None,
        });
    }
    match dual_map(map) {
        Ok(dual) => {
            let deps = component_dependencies(&dual.components);
            match deps.first() {
                Some(b) => Ok(Cotriviality {
                    cotrivial: true,
                    center: Some(ProjPoint::from_rationals(b)?),
                }),
                None => Ok(Cotriviality {
                    cotrivial: false,
                    center: None,
                }),
            }
        }
        Err(Error::ImageSpansLine) => {
            // Generic lines map into lines; all planes through such a line
            // form a pencil. Intersect the plane pencils of sampled lines.
            let mut rng = SeededRng::new(0xc0714);
            let mut covectors: Vec<Vec<Rational>> = Vec::new();
            for _ in 0..6 {
                let l = rng.line();
                if let Ok(analysis) = plane_of_line(map, &l) {
                    if let Some(basis) = analysis.plane_pencil {
                        covectors.extend(basis);
                    }
                }
            }
            if covectors.is_empty() {
                return Ok(Cotriviality {
                    cotrivial: true,
                    center: None,
                });
            }
            let kernel = QMatrix::from_rows(covectors).kernel_basis();
            Ok(Cotriviality {
                cotrivial: true,
                center: kernel
                    .first()
                    .map(|b| ProjPoint::from_rationals(b))
                    .transpose()?,
            })
        }
        Err(e) => Err(e),
    }
}

/// Analysis of one concrete line: its plane (when unique) and, for cubic
/// maps, the residual conic of the web member cut out by that plane.
#[derive(Clone, Debug)]
pub struct LineAnalysis {
    pub line: [Rational; 3],
    /// True when the image of the line spans at most a line.
    pub special: bool,
    pub plane: Option<ProjPoint>,
    pub residual_conic: Option<Poly>,
    /// Basis of all plane covectors containing the line's image (used in the
    /// degenerate regime where the plane is not unique).
    pub plane_pencil: Option<Vec<Vec<Rational>>>,
}

/// Two distinct rational points spanning the line `l . x = 0`.
pub fn points_on_line(l: &[Rational; 3]) -> ([Rational; 3], [Rational; 3]) {
    let candidates = [
        [Rational::zero(), -l[2].clone(), l[1].clone()],
        [l[2].clone(), Rational::zero(), -l[0].clone()],
        [-l[1].clone(), l[0].clone(), Rational::zero()],
    ];
    let nonzero: Vec<&[Rational; 3]> = candidates
        .iter()
        .filter(|c| c.iter().any(|x| !x.is_zero()))
        .collect();
    for i in 0..nonzero.len() {
        for j in i + 1..nonzero.len() {
            let rows = vec![nonzero[i].to_vec(), nonzero[j].to_vec()];
            if QMatrix::from_rows(rows).rank() == 2 {
                return (nonzero[i].clone(), nonzero[j].clone());
            }
        }
    }
    panic!("a nonzero covector has two independent points on its line");
}

pub fn plane_of_line(map: &RationalMap, l: &[Rational; 3]) -> Result<LineAnalysis> {
    if l.iter().all(|c| c.is_zero()) {
        return Err(Error::ZeroInput);
    }
    let (p, q) = points_on_line(l);
    let matrix = concrete_restriction(map, &p, &q);
    let rank = matrix.rank();
    if rank <= 2 {
        let pencil = matrix.kernel_basis();
        return Ok(LineAnalysis {
            line: l.clone(),
            special: true,
            plane: None,
            residual_conic: None,
            plane_pencil: Some(pencil),
        });
    }
    let kernel = matrix.kernel_basis();
    debug_assert_eq!(kernel.len(), 1);
    let plane_vec = kernel[0].clone();
    let plane = ProjPoint::from_rationals(&plane_vec)?;
    let residual_conic = if map.degree() == 3 {
        let coeffs: [Rational; 4] = [
            plane_vec[0].clone(),
            plane_vec[1].clone(),
            plane_vec[2].clone(),
            plane_vec[3].clone(),
        ];
        let kappa = map.web_member(&coeffs);
        let xyz = map.ring();
        let mut line_form = Poly::zero(xyz);
        for j in 0..3 {
            line_form = line_form.add(&Poly::var(xyz, j).scale_rat(&l[j]));
        }
        let sigma = kappa
            .exact_div(&line_form)
            .expect("the web member of the plane contains the line");
        Some(sigma)
    } else {
        None
    };
    Ok(LineAnalysis {
        line: l.clone(),
        special: false,
        plane: Some(plane),
        residual_conic,
        plane_pencil: None,
    })
}

/// Implicit model of the image: annihilating forms of minimal degree.
#[derive(Clone, Debug)]
pub struct SurfaceModel {
    pub equations: Vec<Poly>,
    pub degree: usize,
    pub image_dimension: usize,
}

/// Finds the minimal-degree forms `F` in (u, v, w, t) with `F(phi) = 0` by
/// linear algebra on coefficient spaces, for `D = 1..=dmax`. The coordinate
/// correspondence is `u = phi_0, v = phi_1, w = phi_2, t = phi_3`.
pub fn implicitize(map: &RationalMap, dmax: usize) -> Result<SurfaceModel> {
    let tuvw = Ring::tuvw();
    let t_i = tuvw.index_of("t").unwrap();
    let u_i = tuvw.index_of("u").unwrap();
    let v_i = tuvw.index_of("v").unwrap();
    let w_i = tuvw.index_of("w").unwrap();
    let xyz = map.ring();
    let phi = map.components();
    for target_degree in 1..=dmax {
        let cols = monomials_of_degree(&tuvw, target_degree);
        let row_monos = monomials_of_degree(xyz, map.degree() * target_degree);
        let mut rows: Vec<Vec<Rational>> = vec![vec![Rational::zero(); cols.len()]; row_monos.len()];
        let row_index: std::collections::BTreeMap<&Monomial, usize> =
            row_monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        for (c, mono) in cols.iter().enumerate() {
            let product = phi[3]
                .pow(mono.0[t_i] as u32)
                .mul(&phi[0].pow(mono.0[u_i] as u32))
                .mul(&phi[1].pow(mono.0[v_i] as u32))
                .mul(&phi[2].pow(mono.0[w_i] as u32));
            for (m, coeff) in product.terms() {
                let r = row_index[m];
                rows[r][c] = coeff.as_rational().expect("rational map").clone();
            }
        }
        let kernel = QMatrix::from_rows(rows).kernel_basis();
        if kernel.is_empty() {
            continue;
        }
        let equations: Vec<Poly> = kernel
            .iter()
            .map(|v| {
                let mut f = Poly::zero(&tuvw);
                for (c, mono) in cols.iter().enumerate() {
                    if !v[c].is_zero() {
                        f = f.add(&Poly::from_terms(
                            &tuvw,
                            &[(Scalar::Rat(v[c].clone()), &mono.0)],
                        ));
                    }
                }
                f.canonicalize()
            })
            .collect();
        // Every equation must annihilate the map exactly.
        for eq in &equations {
            let composed = eq.substitute(&[phi[3].clone(), phi[0].clone(), phi[1].clone(), phi[2].clone()]);
            assert!(composed.is_zero(), "annihilator check");
        }
        let generic_rank = map.jacobian_generic_rank();
        let image_dimension = if kernel.len() > 1 || generic_rank <= 2 { 1 } else { 2 };
        return Ok(SurfaceModel {
            equations,
            degree: target_degree,
            image_dimension,
        });
    }
    Err(Error::DegreeBoundExceeded(dmax))
}

/// The degree-formula cross-check `d^2 = surfaceDegree * k + |B|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeFormula {
    pub map_degree_squared: usize,
    pub surface_degree: usize,
    pub topological_degree: usize,
    pub base_weight: usize,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub enum DegreeFormulaOutcome {
    Checked(DegreeFormula),
    /// Base locus or fiber sampling was incomplete; partial data only.
    Incomplete {
        map_degree_squared: usize,
        surface_degree: Option<usize>,
        base_weight_partial: usize,
    },
}

pub fn degree_formula_check(map: &RationalMap, seed: u64) -> Result<DegreeFormulaOutcome> {
    let base = map.base_locus(seed);
    let surface = implicitize(map, 4)?;
    if surface.image_dimension < 2 {
        return Err(Error::NotASurfaceImage);
    }
    if !base.complete {
        return Ok(DegreeFormulaOutcome::Incomplete {
            map_degree_squared: map.degree() * map.degree(),
            surface_degree: Some(surface.degree),
            base_weight_partial: base.weight,
        });
    }
    let k = map.topological_degree(seed)?;
    if !k.samples_complete {
        return Ok(DegreeFormulaOutcome::Incomplete {
            map_degree_squared: map.degree() * map.degree(),
            surface_degree: Some(surface.degree),
            base_weight_partial: base.weight,
        });
    }
    let lhs = map.degree() * map.degree();
    let holds = lhs == surface.degree * k.sampled + base.weight;
    Ok(DegreeFormulaOutcome::Checked(DegreeFormula {
        map_degree_squared: lhs,
        surface_degree: surface.degree,
        topological_degree: k.sampled,
        base_weight: base.weight,
        holds,
    }))
}

/// Exact equality of two component 4-tuples up to one global nonzero scalar,
/// by cross-multiplying all pairs.
pub fn maps_equal_up_to_scalar(a: &[Poly; 4], b: &[Poly; 4]) -> bool {
    for i in 0..4 {
        for j in i + 1..4 {
            if a[i].mul(&b[j]) != a[j].mul(&b[i]) {
                return false;
            }
        }
    }
    // Exclude the degenerate all-zero pairing mismatch.
    (0..4).all(|i| a[i].is_zero() == b[i].is_zero())
}

/// Computes the dual twice and compares with the original map up to scalar.
pub fn double_dual_check(map: &RationalMap) -> Result<bool> {
    let first = dual_map(map)?;
    let xyz = Ring::xyz();
    let as_map = RationalMap::new([
        first.components[0].rename_ring(&xyz),
        first.components[1].rename_ring(&xyz),
        first.components[2].rename_ring(&xyz),
        first.components[3].rename_ring(&xyz),
    ])?;
    let second = dual_map(&as_map)?;
    let back: [Poly; 4] = [
        second.components[0].rename_ring(&xyz),
        second.components[1].rename_ring(&xyz),
        second.components[2].rename_ring(&xyz),
        second.components[3].rename_ring(&xyz),
    ];
    Ok(maps_equal_up_to_scalar(&back, map.components()))
}
