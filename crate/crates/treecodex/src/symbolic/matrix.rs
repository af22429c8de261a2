//! Square symbolic matrices and exact determinants.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::symbolic::poly::MultiPoly;

/// Default cap on symbolic determinant size.
pub const DET_BOUND: usize = 9;

/// A square grid of polynomials with a declared index origin (0 or 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMatrix {
    origin: usize,
    entries: Vec<Vec<MultiPoly>>,
}

impl SymMatrix {
    pub fn new(origin: usize, entries: Vec<Vec<MultiPoly>>) -> Self {
        let size = entries.len();
        assert!(entries.iter().all(|row| row.len() == size), "matrix must be square");
        assert!(origin <= 1);
        Self { origin, entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn origin(&self) -> usize {
        self.origin
    }

    /// Entry at matrix indices (respecting the origin).
    pub fn at(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i - self.origin][j - self.origin]
    }

    /// Drops the first row and column, shifting the origin up by one.
    pub fn minor_at_origin(&self) -> SymMatrix {
        let entries = self.entries[1..]
            .iter()
            .map(|row| row[1..].to_vec())
            .collect();
        SymMatrix { origin: self.origin + 1, entries }
    }

    pub fn row_sum(&self, i: usize) -> MultiPoly {
        self.entries[i - self.origin]
            .iter()
            .fold(MultiPoly::zero(), |acc, e| acc.add(e))
    }

    /// Exact determinant by cofactor expansion, memoized over column
    /// subsets. Sizes above [`DET_BOUND`] are refused.
    pub fn det(&self) -> Result<MultiPoly> {
        self.det_bounded(DET_BOUND)
    }

    pub fn det_bounded(&self, bound: usize) -> Result<MultiPoly> {
        let n = self.size();
        if n > bound || n > 63 {
            return Err(Error::BoundExceeded { n, bound });
        }
        if n == 0 {
            return Ok(MultiPoly::one());
        }
        let full: u64 = (1 << n) - 1;
        let mut memo: Vec<Option<MultiPoly>> = vec![None; 1 << n];
        self.det_rec(full, &mut memo);
        Ok(memo[full as usize].take().unwrap())
    }

    /// Determinant of the submatrix on the last popcount(mask) rows and the
    /// columns in `mask`, filled into the memo table.
    fn det_rec(&self, mask: u64, memo: &mut [Option<MultiPoly>]) {
        if memo[mask as usize].is_some() {
            return;
        }
        let n = self.size();
        let k = mask.count_ones() as usize;
        let row = n - k; // expand along the first remaining row
        let mut acc = MultiPoly::zero();
        if k == 0 {
            acc = MultiPoly::one();
        } else {
            let mut sign = 1i64;
            for j in 0..n {
                if mask & (1 << j) == 0 {
                    continue;
                }
                let e = &self.entries[row][j];
                if !e.is_zero() {
                    let sub_mask = mask & !(1 << j);
                    self.det_rec(sub_mask, memo);
                    let sub = memo[sub_mask as usize].as_ref().unwrap();
                    acc = acc.add(&e.mul(sub).scale(sign));
                }
                sign = -sign;
            }
        }
        memo[mask as usize] = Some(acc);
    }

    /// Evaluates every entry at an integer point.
    pub fn eval<F: Fn(crate::symbolic::poly::Var) -> BigInt + Copy>(&self, point: F) -> Vec<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.eval(point)).collect())
            .collect()
    }
}

/// Exact integer determinant by Bareiss fraction-free elimination.
pub fn det_int(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n));
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = 1i64;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k] == BigInt::from(0) {
            // pivot search
            match (k + 1..n).find(|&r| m[r][k] != BigInt::from(0)) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::from(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::from(0);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::poly::{MultiPoly, Var};
    use rand::{Rng, SeedableRng};

    fn c(v: i64) -> MultiPoly {
        MultiPoly::constant(v)
    }

    #[test]
    fn identity_has_unit_determinant() {
        let m = SymMatrix::new(
            0,
            vec![
                vec![c(1), c(0), c(0)],
                vec![c(0), c(1), c(0)],
                vec![c(0), c(0), c(1)],
            ],
        );
        assert_eq!(m.det().unwrap(), MultiPoly::one());
    }

    #[test]
    fn final_upper_triangular_shape_has_the_factored_determinant() {
        // [b0, -b2-b3, -b3; 0, s, 0; 0, 0, s] with s = b0+b1+b2+b3
        let b = |j: i32| MultiPoly::var(Var::B(j));
        let s = b(0).add(&b(1)).add(&b(2)).add(&b(3));
        let m = SymMatrix::new(
            1,
            vec![
                vec![b(0), b(2).neg().sub(&b(3)), b(3).neg()],
                vec![c(0), s.clone(), c(0)],
                vec![c(0), c(0), s.clone()],
            ],
        );
        assert_eq!(m.det().unwrap(), b(0).mul(&s.pow(2)));
    }

    #[test]
    fn size_bound_is_enforced() {
        let m = SymMatrix::new(0, vec![vec![c(1); 10]; 10]);
        assert!(m.det().is_err());
    }

    #[test]
    fn cofactor_and_fraction_free_agree_on_random_integer_matrices() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for trial in 0..50 {
            let n = rng.gen_range(1..=5usize);
            let ints: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect())
                .collect();
            let sym = SymMatrix::new(
                0,
                ints.iter()
                    .map(|row| row.iter().map(|&v| c(v)).collect())
                    .collect(),
            );
            let by_cofactor = sym.det().unwrap();
            let by_bareiss = det_int(
                ints.iter()
                    .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
                    .collect(),
            );
            let expected = by_cofactor.eval(|_| BigInt::from(0));
            assert_eq!(expected, by_bareiss, "trial {trial}");
        }
    }
}
