//! Exact linear algebra: fraction-free (Bareiss) elimination over the
//! integers for rational matrices, determinants of polynomial matrices, and
//! symbolic kernel vectors via signed maximal minors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::gcd::content_clear_tuple;
use super::{Poly, Ring};
use crate::error::{Error, Result};
use crate::rng::SeededRng;
use crate::scalar::{Rational, Scalar};

/// Dense matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> QMatrix {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> QMatrix {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c));
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    /// Rows cleared to integers (row scaling preserves rank and kernel).
    fn to_integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let mut lcm = BigInt::one();
                for c in 0..self.cols {
                    lcm = lcm.lcm(self.get(r, c).denom());
                }
                (0..self.cols)
                    .map(|c| {
                        let q = self.get(r, c);
                        q.numer() * (&lcm / q.denom())
                    })
                    .collect()
            })
            .collect()
    }

    /// Fraction-free row echelon form. Returns the echelon matrix together
    /// with the pivot columns and the original indices of the pivot rows.
    fn bareiss_echelon(&self) -> (Vec<Vec<BigInt>>, Vec<usize>, Vec<usize>) {
        let mut m = self.to_integer_rows();
        let mut row_origin: Vec<usize> = (0..self.rows).collect();
        let mut pivot_cols = Vec::new();
        let mut pivot_rows = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r >= self.rows {
                break;
            }
            let pivot = match (r..self.rows).find(|&i| !m[i][c].is_zero()) {
                Some(i) => i,
                None => continue,
            };
            m.swap(r, pivot);
            row_origin.swap(r, pivot);
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    m[i][j] = q;
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            pivot_cols.push(c);
            pivot_rows.push(row_origin[r]);
            r += 1;
        }
        (m, pivot_cols, pivot_rows)
    }

    pub fn rank(&self) -> usize {
        self.bareiss_echelon().1.len()
    }

    /// Original indices of a maximal independent set of rows.
    pub fn pivot_rows(&self) -> Vec<usize> {
        self.bareiss_echelon().2
    }

    /// Basis of the right null space in canonical integer form: for each free
    /// column one vector with `-1` there before normalization, pivots solved
    /// by back substitution, then scaled to coprime integers with positive
    /// first nonzero entry.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (ech, pivot_cols, _) = self.bareiss_echelon();
        let rank = pivot_cols.len();
        let free_cols: Vec<usize> = (0..self.cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free_cols {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = -Rational::one();
            // Solve pivot entries bottom-up.
            for i in (0..rank).rev() {
                let pc = pivot_cols[i];
                let mut acc = Rational::zero();
                for c in pc + 1..self.cols {
                    if !ech[i][c].is_zero() {
                        acc += Rational::from(ech[i][c].clone()) * &v[c];
                    }
                }
                v[pc] = -acc / Rational::from(ech[i][pc].clone());
            }
            basis.push(canonical_vector(&v));
        }
        basis
    }
}

/// Scales a rational vector to coprime integers with positive first nonzero
/// entry.
pub fn canonical_vector(v: &[Rational]) -> Vec<Rational> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut gcd = BigInt::zero();
    for x in v {
        gcd = gcd.gcd(&(x.numer() * (&lcm / x.denom())));
    }
    if gcd.is_zero() {
        return v.to_vec();
    }
    let mut factor = Rational::new(lcm, gcd);
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if (first * &factor).is_negative() {
            factor = -factor;
        }
    }
    v.iter().map(|x| x * &factor).collect()
}

/// Dense matrix of polynomials over a shared ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub ring: Ring,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn from_fn(ring: &Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> PolyMatrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let p = f(r, c);
                assert_eq!(p.ring(), ring);
                entries.push(p);
            }
        }
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    /// Determinant by fraction-free Bareiss elimination; divisions are exact
    /// in the polynomial ring.
    pub fn det(&self) -> Poly {
        assert_eq!(self.rows, self.cols, "determinant of a square matrix");
        let n = self.rows;
        if n == 0 {
            return Poly::one(&self.ring);
        }
        let mut m: Vec<Vec<Poly>> = (0..n)
            .map(|r| (0..n).map(|c| self.get(r, c).clone()).collect())
            .collect();
        let mut sign = false;
        let mut prev = Poly::one(&self.ring);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = !sign;
                    }
                    None => return Poly::zero(&self.ring),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                    m[i][j] = if num.is_zero() {
                        num
                    } else {
                        num.exact_div(&prev).expect("Bareiss division is exact")
                    };
                }
                m[i][k] = Poly::zero(&self.ring);
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if sign {
            det.neg()
        } else {
            det
        }
    }

    pub fn eval_rat(&self, point: &[Rational]) -> QMatrix {
        let mut out = QMatrix::zero(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                match self.get(r, c).eval_rat(point) {
                    Scalar::Rat(v) => out.set(r, c, v),
                    Scalar::Quad(_) => unreachable!("rational specialization"),
                }
            }
        }
        out
    }

    fn sub_det(&self, rows: &[usize], skip_col: usize) -> Poly {
        let cols: Vec<usize> = (0..self.cols).filter(|&c| c != skip_col).collect();
        let sub = PolyMatrix::from_fn(&self.ring, rows.len(), cols.len(), |r, c| {
            self.get(rows[r], cols[c]).clone()
        });
        sub.det()
    }
}

/// Kernel vector of a polynomial matrix whose generic nullity is one.
///
/// A seeded rational specialization selects `cols - 1` independent rows; the
/// kernel vector is the vector of signed maximal minors along that selection,
/// content-cleared. The defining identity `M v = 0` is re-verified exactly.
pub fn symbolic_kernel_vector(m: &PolyMatrix) -> Result<Vec<Poly>> {
    assert!(m.rows + 1 >= m.cols, "matrix must have at least cols-1 rows");
    let mut last_err = Error::NoKernel;
    for attempt in 0..4u64 {
        let mut rng = SeededRng::new(0x6b65726e).derive(attempt);
        let point: Vec<Rational> = (0..m.ring.nvars()).map(|_| rng.nonzero_rational()).collect();
        let specialized = m.eval_rat(&point);
        let (_, pivot_cols, pivot_rows) = specialized.bareiss_echelon();
        let rank = pivot_cols.len();
        if rank == m.cols {
            return Err(Error::NoKernel);
        }
        if rank < m.cols - 1 {
            last_err = Error::DegenerateKernel;
            continue;
        }
        let rows = pivot_rows;
        let mut v: Vec<Poly> = Vec::with_capacity(m.cols);
        for j in 0..m.cols {
            let minor = m.sub_det(&rows, j);
            v.push(if j % 2 == 1 { minor.neg() } else { minor });
        }
        if v.iter().all(|p| p.is_zero()) {
            last_err = Error::DegenerateKernel;
            continue;
        }
        // Verify M v = 0 identically; failure means the symbolic rank is
        // actually full and the specialization was unlucky.
        let verified = (0..m.rows).all(|r| {
            let mut acc = Poly::zero(&m.ring);
            for j in 0..m.cols {
                acc = acc.add(&m.get(r, j).mul(&v[j]));
            }
            acc.is_zero()
        });
        if verified {
            return Ok(content_clear_tuple(&v));
        }
        last_err = Error::NoKernel;
    }
    Err(last_err)
}

/// Sylvester matrix of two polynomials with respect to `var`; entries are
/// polynomials in the remaining variables.
pub fn sylvester(p: &Poly, q: &Poly, var: usize) -> Result<PolyMatrix> {
    p.checked_same_ring(q)?;
    let m = p.degree_in(var);
    let n = q.degree_in(var);
    if m == 0 {
        return Err(Error::VarAbsent(p.ring().var_name(var).to_string()));
    }
    if n == 0 {
        return Err(Error::VarAbsent(q.ring().var_name(var).to_string()));
    }
    let pc = p.as_univariate_in(var);
    let qc = q.as_univariate_in(var);
    let size = m + n;
    let ring = p.ring().clone();
    Ok(PolyMatrix::from_fn(&ring, size, size, |r, c| {
        // n rows of p-coefficients then m rows of q-coefficients, descending.
        if r < n {
            let k = m as isize - (c as isize - r as isize);
            if (0..=m as isize).contains(&k) {
                pc[k as usize].clone()
            } else {
                Poly::zero(&ring)
            }
        } else {
            let rr = r - n;
            let k = n as isize - (c as isize - rr as isize);
            if (0..=n as isize).contains(&k) {
                qc[k as usize].clone()
            } else {
                Poly::zero(&ring)
            }
        }
    }))
}

/// Resultant with respect to `var`: the determinant of the Sylvester matrix.
/// Vanishes identically iff the inputs share a factor involving `var`.
pub fn resultant(p: &Poly, q: &Poly, var: usize) -> Result<Poly> {
    Ok(sylvester(p, q, var)?.det())
}
