//! Deterministic seeded randomness for sampling points, lines and witnesses.
//!
//! All randomized operations in the toolkit draw from this generator so that
//! results are byte-identical across runs given the same seed.

use num_bigint::BigInt;

use crate::scalar::{rat, Rational};

/// splitmix64 stream; small, portable and stable across platforms.
#[derive(Clone, Debug)]
pub struct SeededRng {
    state: u64,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng { state: seed }
    }

    /// Derives an independent stream for a sub-task.
    pub fn derive(&self, salt: u64) -> SeededRng {
        let mut r = SeededRng::new(self.state ^ salt.wrapping_mul(0x9E3779B97F4A7C15));
        r.next_u64();
        SeededRng::new(r.next_u64())
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    /// Uniform integer in `[-bound, bound]`.
    pub fn int(&mut self, bound: u64) -> i64 {
        self.below(2 * bound + 1) as i64 - bound as i64
    }

    /// Nonzero integer in `[-bound, bound]`.
    pub fn nonzero_int(&mut self, bound: u64) -> i64 {
        loop {
            let v = self.int(bound);
            if v != 0 {
                return v;
            }
        }
    }

    /// Rational with numerator and denominator bounded by 97.
    pub fn rational(&mut self) -> Rational {
        let num = self.int(97);
        let den = 1 + self.below(97) as i64;
        rat(num, den)
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        let num = self.nonzero_int(97);
        let den = 1 + self.below(97) as i64;
        rat(num, den)
    }

    /// A random projective point of P^2 with rational coordinates, not all zero.
    pub fn proj_point3(&mut self) -> [Rational; 3] {
        loop {
            let p = [self.rational(), self.rational(), self.rational()];
            if p.iter().any(|c| !num_traits::Zero::is_zero(c)) {
                return p;
            }
        }
    }

    /// A random line covector with small integer entries, not all zero.
    pub fn line(&mut self) -> [Rational; 3] {
        loop {
            let l = [
                rat(self.int(9), 1),
                rat(self.int(9), 1),
                rat(self.int(9), 1),
            ];
            if l.iter().any(|c| !num_traits::Zero::is_zero(c)) {
                return l;
            }
        }
    }

    /// An invertible n x n matrix with small integer entries. Inverses of the
    /// random witnesses feed integer factoring downstream, so entries stay
    /// small by construction.
    pub fn invertible_matrix(&mut self, n: usize) -> Vec<Vec<Rational>> {
        loop {
            let m: Vec<Vec<Rational>> = (0..n)
                .map(|_| (0..n).map(|_| rat(self.int(5), 1)).collect())
                .collect();
            if !int_det(&m).is_zero() {
                return m;
            }
        }
    }
}

fn int_det(m: &[Vec<Rational>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = Rational::from(BigInt::from(1));
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !num_traits::Zero::is_zero(&a[r][col])) {
            Some(r) => r,
            None => return BigInt::from(0),
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        det *= &a[col][col];
        let inv = a[col][col].recip();
        for r in col + 1..n {
            if !num_traits::Zero::is_zero(&a[r][col]) {
                let f = &a[r][col] * &inv;
                for j in col..n {
                    let t = &a[col][j] * &f;
                    a[r][j] -= t;
                }
            }
        }
    }
    det.to_integer()
}

use num_traits::Zero;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_streams() {
        let mut a = SeededRng::new(7);
        let mut b = SeededRng::new(7);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn rational_bounds() {
        let mut r = SeededRng::new(0);
        for _ in 0..500 {
            let q = r.rational();
            assert!(q.numer().magnitude() <= &97u32.into());
            assert!(q.denom().magnitude() <= &97u32.into());
        }
    }

    #[test]
    fn invertible_matrices_invert() {
        let mut r = SeededRng::new(3);
        for _ in 0..20 {
            let m = r.invertible_matrix(3);
            assert!(!int_det(&m).is_zero());
        }
    }
}
