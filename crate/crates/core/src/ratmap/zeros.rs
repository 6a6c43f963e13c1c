//! Common projective zeros of a system of homogeneous polynomials in
//! (x, y, z), over Q and single quadratic extensions.
//!
//! Strategy: eliminate z via resultants of seeded random combinations of the
//! system, gcd the resulting binary eliminants in (x, y), factor that gcd,
//! lift each projected root by solving the restricted univariate system in z,
//! and verify every candidate by substitution. Roots that would need an
//! algebraic extension of degree >= 3 (or a tower) are not enumerated; the
//! locus is then flagged incomplete.

use super::ProjPoint;
use crate::poly::gcd::poly_gcd;
use crate::poly::linalg::resultant;
use crate::poly::roots::{binary_form_roots, scalar_poly_roots, uni_gcd_scalar};
use crate::poly::{Poly, Ring};
use crate::rng::SeededRng;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct ZeroLocus {
    pub points: Vec<ProjPoint>,
    pub complete: bool,
}

fn random_combination(system: &[Poly], rng: &mut SeededRng) -> Poly {
    let ring = system[0].ring();
    let mut acc = Poly::zero(ring);
    for p in system {
        let c = Scalar::from(rng.int(9));
        acc = acc.add(&p.scale(&c));
    }
    acc
}

/// Restriction of `p` to the pencil `[x0 w : y0 w : z]`, as a binary form in
/// the ring (w, z).
fn restrict_to_pencil(p: &Poly, x0: &Scalar, y0: &Scalar) -> Poly {
    let wz = Ring::new(&["w", "z"]);
    let w = Poly::var(&wz, 0);
    let z = Poly::var(&wz, 1);
    let images = vec![w.scale(x0), w.scale(y0), z];
    p.substitute(&images)
}

/// All common zeros of the system with coordinates in Q or one Q(sqrt(D)).
pub fn common_projective_zeros(system: &[Poly], rng: &mut SeededRng) -> ZeroLocus {
    common_projective_zeros_with_known(system, rng, &[])
}

/// Variant that accepts already-known zeros (e.g. the source point of a
/// fiber). Their projections are divided out of the binary eliminant before
/// root enumeration, which keeps the integer factoring small, and they are
/// re-added as lift candidates.
pub fn common_projective_zeros_with_known(
    system: &[Poly],
    rng: &mut SeededRng,
    known: &[ProjPoint],
) -> ZeroLocus {
    assert!(!system.is_empty());
    let ring = system[0].ring().clone();
    assert_eq!(ring.nvars(), 3);
    let nonzero: Vec<Poly> = system.iter().filter(|p| !p.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        // The empty system vanishes everywhere; not a finite locus.
        return ZeroLocus {
            points: Vec::new(),
            complete: false,
        };
    }
    if nonzero.iter().any(|p| !p.is_rational()) {
        // The elimination pipeline factors over Q; quadratic-coefficient
        // systems are not enumerated.
        return ZeroLocus {
            points: Vec::new(),
            complete: false,
        };
    }

    let mut points: Vec<ProjPoint> = Vec::new();
    let mut complete = true;

    let verify = |p: &ProjPoint| nonzero.iter().all(|f| f.eval(p.coords()).is_zero());

    // The point [0:0:1] projects nowhere; test it directly.
    if let Ok(origin) = ProjPoint::new(vec![Scalar::zero(), Scalar::zero(), Scalar::one()]) {
        if verify(&origin) {
            points.push(origin);
        }
    }

    // Gather binary eliminants in (x, y).
    let xy = Ring::new(&["x", "y"]);
    let mut eliminants: Vec<Poly> = Vec::new();
    for p in &nonzero {
        if !p.depends_on(2) {
            eliminants.push(p.project(&xy, &[Some(0), Some(1), None]));
        }
    }
    let mut attempts = 0;
    while eliminants.len() < 3 && attempts < 24 {
        attempts += 1;
        let a = random_combination(&nonzero, rng);
        let b = random_combination(&nonzero, rng);
        if a.is_zero() || b.is_zero() || !a.depends_on(2) || !b.depends_on(2) {
            continue;
        }
        if let Ok(res) = resultant(&a, &b, 2) {
            if !res.is_zero() {
                eliminants.push(res.project(&xy, &[Some(0), Some(1), None]).canonicalize());
            }
        }
    }
    if eliminants.is_empty() {
        // Every combination pair shared a factor: the zero set contains a
        // curve, which the finite enumeration cannot represent.
        return ZeroLocus {
            points,
            complete: false,
        };
    }

    let mut g = eliminants[0].clone();
    for e in &eliminants[1..] {
        g = poly_gcd(&g, e);
        if g.is_constant() {
            break;
        }
    }

    if !g.is_constant() && !g.is_homogeneous() {
        // Mixed-degree systems are outside the enumeration's contract.
        return ZeroLocus {
            points,
            complete: false,
        };
    }

    // Projections to enumerate: the known points' first, divided out of the
    // eliminant so root finding only factors what remains.
    let mut projections: Vec<[Scalar; 2]> = Vec::new();
    for p in known {
        let (x0, y0) = (&p.coords()[0], &p.coords()[1]);
        if x0.is_zero() && y0.is_zero() {
            continue; // the [0:0:1] check covers this point
        }
        let proj = if y0.is_zero() {
            [Scalar::one(), Scalar::zero()]
        } else {
            [x0.div(y0), Scalar::one()]
        };
        if !projections.contains(&proj) {
            projections.push(proj);
        }
    }
    if !g.is_constant() {
        for proj in &projections {
            if !proj.iter().all(|c| c.is_rational()) {
                continue;
            }
            let factor = if proj[1].is_zero() {
                Poly::var(&xy, 1)
            } else {
                Poly::var(&xy, 0).sub(&Poly::var(&xy, 1).scale(&proj[0]))
            };
            while let Some(q) = g.exact_div(&factor) {
                g = q;
                if g.is_constant() {
                    break;
                }
            }
        }
    }
    if !g.is_constant() {
        let roots = binary_form_roots(&g);
        complete &= roots.complete;
        for (root, _) in &roots.roots {
            if !projections.contains(root) {
                projections.push(root.clone());
            }
        }
    }

    {
        for root in &projections {
            let (x0, y0) = (&root[0], &root[1]);
            // Lift z along the pencil [x0 w : y0 w : z].
            let restricted: Vec<Poly> = nonzero
                .iter()
                .map(|p| restrict_to_pencil(p, x0, y0))
                .filter(|p| !p.is_zero())
                .collect();
            if restricted.is_empty() {
                // A whole line of zeros.
                complete = false;
                continue;
            }
            // Univariate polynomials in z at w = 1.
            let unis: Vec<Vec<Scalar>> = restricted
                .iter()
                .map(|p| {
                    let d = p.degree_in(1);
                    (0..=d)
                        .map(|k| {
                            let c = p.coeff_of_power(1, k);
                            c.eval(&[Scalar::one(), Scalar::zero()])
                        })
                        .collect()
                })
                .collect();
            let mut h = unis[0].clone();
            for u in &unis[1..] {
                h = uni_gcd_scalar(&h, u);
                if h.len() == 1 {
                    break;
                }
            }
            if h.is_empty() {
                // All restrictions vanished identically in z.
                complete = false;
                continue;
            }
            if h.len() == 1 {
                // No common z: this projected root was spurious.
                continue;
            }
            let (zs, lift_complete) = scalar_poly_roots(&h);
            complete &= lift_complete;
            for z0 in zs {
                match ProjPoint::new(vec![x0.clone(), y0.clone(), z0]) {
                    Ok(p) => {
                        if verify(&p) && !points.contains(&p) {
                            points.push(p);
                        }
                    }
                    Err(_) => {
                        // Coordinates in two different extensions.
                        complete = false;
                    }
                }
            }
        }
    }

    ZeroLocus { points, complete }
}
