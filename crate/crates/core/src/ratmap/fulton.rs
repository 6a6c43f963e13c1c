//! Intersection multiplicity of two affine plane curves by the recursive
//! axiomatic algorithm: reduce the univariate parts along y = 0 against each
//! other, split off factors of y, and count orders of vanishing.

use super::super::poly::gcd::poly_gcd;
use crate::poly::Poly;
use crate::scalar::Scalar;

/// Result of an intersection-multiplicity computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Multiplicity {
    Finite(usize),
    Infinite,
}

fn eval_origin(f: &Poly) -> Scalar {
    let zeros = vec![Scalar::zero(); f.ring().nvars()];
    f.eval(&zeros)
}

/// `f(x, 0)` as a coefficient vector in x.
fn restrict_y0(f: &Poly) -> Vec<Scalar> {
    let d = f.degree_in(0);
    (0..=d)
        .map(|k| {
            let c = f.coeff_of_power(0, k);
            // Constant term of the coefficient (terms with y drop out).
            let zeros = vec![Scalar::zero(); f.ring().nvars()];
            c.eval(&zeros)
        })
        .collect()
}

fn poly_deg(v: &[Scalar]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero())
}

fn ord_x(v: &[Scalar]) -> usize {
    v.iter().position(|c| !c.is_zero()).expect("nonzero poly")
}

/// Multiplicity at the origin for coprime `f`, `g` (no common factor through
/// the origin). Terminates: every step lowers the x-degree of one restriction
/// or splits off a factor of y.
fn reduce(f: &Poly, g: &Poly) -> usize {
    if !eval_origin(f).is_zero() || !eval_origin(g).is_zero() {
        return 0;
    }
    let f0 = restrict_y0(f);
    let g0 = restrict_y0(g);
    let df = poly_deg(&f0);
    let dg = poly_deg(&g0);
    match (df, dg) {
        (None, None) => unreachable!("coprime inputs cannot both be divisible by y"),
        (None, Some(_)) => {
            // f = y h: I(f, g) = I(y, g) + I(h, g) and I(y, g) = ord_x g(x, 0).
            let y = Poly::var(f.ring(), 1);
            let h = f.exact_div(&y).expect("y divides f");
            ord_x(&g0) + reduce(&h, g)
        }
        (Some(_), None) => reduce(g, f),
        (Some(df), Some(dg)) => {
            if df > dg {
                return reduce(g, f);
            }
            // Kill the leading coefficient of g(x, 0): g' = g - (lg/lf) x^(dg-df) f
            let ratio = g0[dg].div(&f0[df]);
            let shifted = f.mul_var_pow(0, (dg - df) as u16).scale(&ratio);
            let g_new = g.sub(&shifted);
            reduce(f, &g_new)
        }
    }
}

/// Intersection multiplicity of the curves `f = 0` and `g = 0` at the origin
/// of a two-variable affine ring.
pub fn multiplicity_at_origin(f: &Poly, g: &Poly) -> Multiplicity {
    assert_eq!(f.ring(), g.ring());
    assert_eq!(f.ring().nvars(), 2);
    assert!(!(f.is_zero() && g.is_zero()), "curves must not both be zero");
    if f.is_zero() {
        return if eval_origin(g).is_zero() {
            Multiplicity::Infinite
        } else {
            Multiplicity::Finite(0)
        };
    }
    if g.is_zero() {
        return if eval_origin(f).is_zero() {
            Multiplicity::Infinite
        } else {
            Multiplicity::Finite(0)
        };
    }
    if !eval_origin(f).is_zero() || !eval_origin(g).is_zero() {
        return Multiplicity::Finite(0);
    }
    let d = poly_gcd(f, g);
    if !d.is_constant() {
        if eval_origin(&d).is_zero() {
            return Multiplicity::Infinite;
        }
        // Strip the common factor: it does not pass through the origin, so it
        // contributes nothing by additivity.
        let f = f.exact_div(&d).expect("gcd divides");
        let g = g.exact_div(&d).expect("gcd divides");
        return Multiplicity::Finite(reduce(&f, &g));
    }
    Multiplicity::Finite(reduce(f, g))
}

/// Intersection multiplicity at an arbitrary affine point with coordinates in
/// Q or Q(sqrt(D)): translate the point to the origin first.
pub fn intersection_multiplicity(f: &Poly, g: &Poly, p: &[Scalar; 2]) -> Multiplicity {
    let ring = f.ring();
    let images = vec![
        Poly::var(ring, 0).add(&Poly::constant(ring, p[0].clone())),
        Poly::var(ring, 1).add(&Poly::constant(ring, p[1].clone())),
    ];
    let ft = f.substitute(&images);
    let gt = g.substitute(&images);
    multiplicity_at_origin(&ft, &gt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;
    use crate::scalar::rat_int;

    fn ab() -> (Ring, Poly, Poly) {
        let r = Ring::new(&["a", "b"]);
        (r.clone(), Poly::var(&r, 0), Poly::var(&r, 1))
    }

    #[test]
    fn transversal_lines() {
        let (_, x, y) = ab();
        assert_eq!(multiplicity_at_origin(&x, &y), Multiplicity::Finite(1));
    }

    #[test]
    fn tangency_order_two() {
        // I0(y, y - x^2) = 2 by invariance and additivity.
        let (_, x, y) = ab();
        let g = y.sub(&x.pow(2));
        assert_eq!(multiplicity_at_origin(&y, &g), Multiplicity::Finite(2));
    }

    #[test]
    fn point_off_curves() {
        // p = (1, 1) lies on x - y but not on x + y.
        let (_, x, y) = ab();
        let p = [Scalar::from(1), Scalar::from(1)];
        assert_eq!(
            intersection_multiplicity(&x.sub(&y), &x.add(&y), &p),
            Multiplicity::Finite(0)
        );
    }

    #[test]
    fn shared_component_is_infinite() {
        let (_, x, y) = ab();
        let f = x.mul(&y);
        let g = x.mul(&x.add(&y));
        assert_eq!(multiplicity_at_origin(&f, &g), Multiplicity::Infinite);
    }

    #[test]
    fn cusp_meets_axis() {
        // I0(y^2 - x^3, y) = I0(-x^3, y) = 3.
        let (_, x, y) = ab();
        let f = y.pow(2).sub(&x.pow(3));
        assert_eq!(multiplicity_at_origin(&f, &y), Multiplicity::Finite(3));
    }

    #[test]
    fn additivity_example() {
        // I0(x, y (y - x)) = I0(x, y) + I0(x, y - x) = 2.
        let (_, x, y) = ab();
        let g = y.mul(&y.sub(&x));
        assert_eq!(multiplicity_at_origin(&x, &g), Multiplicity::Finite(2));
    }

    #[test]
    fn node_of_cubic() {
        // Nodal cubic y^2 - x^2 (x + 1) against x: order 2 at origin.
        let (r, x, y) = ab();
        let f = y
            .pow(2)
            .sub(&x.pow(2).mul(&x.add(&Poly::one(&r))));
        assert_eq!(multiplicity_at_origin(&f, &x), Multiplicity::Finite(2));
    }

    #[test]
    fn translated_point() {
        // Circles meeting at (1, 0): (x^2 + y^2 - 1) and (x - 1).
        let (r, x, y) = ab();
        let circle = x.pow(2).add(&y.pow(2)).sub(&Poly::one(&r));
        let line = x.sub(&Poly::one(&r));
        let p = [Scalar::from(1), Scalar::from(0)];
        assert_eq!(
            intersection_multiplicity(&circle, &line, &p),
            Multiplicity::Finite(2)
        );
        let _ = rat_int(0);
    }

    #[test]
    fn quadratic_extension_point() {
        // The curves y - x^2 and y - 2 meet at (sqrt(2), 2) transversally.
        let (_, x, y) = ab();
        let f = y.sub(&x.pow(2));
        let g = y.sub(&Poly::constant(x.ring(), Scalar::from(2)));
        let s2 = crate::scalar::sqrt_in_field(&rat_int(2));
        let p = [s2, Scalar::from(2)];
        assert_eq!(
            intersection_multiplicity(&f, &g, &p),
            Multiplicity::Finite(1)
        );
    }
}
