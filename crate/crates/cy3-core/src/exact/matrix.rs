//! Dense integer matrices: fraction-free determinants (Bareiss) and Smith
//! normal form with recorded unimodular transforms.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Int;

/// Dense row-major matrix of exact integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    /// Builds a matrix from row-major entries; `data.len()` must equal
    /// `rows * cols`.
    pub fn new(rows: usize, cols: usize, data: Vec<Int>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "matrix data has {} entries, expected {rows}x{cols} = {}",
                data.len(),
                rows * cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Convenience constructor from machine-integer rows, which must all
    /// have the same length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidArgument(
                "matrix rows have unequal lengths".to_string(),
            ));
        }
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| Int::from(v)))
            .collect();
        Self::new(r, c, data)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Int::one();
        }
        m
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Exact matrix product.
    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::InvalidArgument(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Int::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * rhs.get(k, j);
                }
                *out.get_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    /// Determinant by the Bareiss fraction-free algorithm: every interior
    /// division is exact, so no rationals appear and no precision is lost.
    pub fn det(&self) -> Result<Int> {
        if !self.is_square() {
            return Err(Error::NonSquareMatrix {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Int::one());
        }
        let mut m = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !m.get(r, k).is_zero()) {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return Ok(Int::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j);
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    *m.get_mut(i, j) = q;
                }
                *m.get_mut(i, k) = Int::zero();
            }
            prev = m.get(k, k).clone();
        }
        Ok(sign * m.get(n - 1, n - 1).clone())
    }

    /// Smith normal form with recorded transforms; see
    /// [`SmithNormalForm`].
    pub fn smith_normal_form(&self) -> SmithNormalForm {
        let (m, n) = (self.rows, self.cols);
        let mut d = self.clone();
        let mut u = IntMatrix::identity(m);
        let mut v = IntMatrix::identity(n);
        for t in 0..m.min(n) {
            'pivot: loop {
                // Smallest nonzero entry of the trailing submatrix becomes
                // the pivot; if there is none the matrix is finished.
                let Some((pi, pj)) = d.min_abs_entry(t) else {
                    return SmithNormalForm { d, u, v };
                };
                if pi != t {
                    d.swap_rows(t, pi);
                    u.swap_rows(t, pi);
                }
                if pj != t {
                    d.swap_cols(t, pj);
                    v.swap_cols(t, pj);
                }
                if d.get(t, t).is_negative() {
                    d.negate_row(t);
                    u.negate_row(t);
                }
                // Clear below and to the right of the pivot. Any nonzero
                // remainder is strictly smaller than the pivot and sends
                // us back to pivot selection, so the loop terminates.
                let mut dirty = false;
                for i in t + 1..m {
                    if !d.get(i, t).is_zero() {
                        let q = d.get(i, t).div_floor(d.get(t, t));
                        d.row_sub(i, t, &q);
                        u.row_sub(i, t, &q);
                        dirty |= !d.get(i, t).is_zero();
                    }
                }
                for j in t + 1..n {
                    if !d.get(t, j).is_zero() {
                        let q = d.get(t, j).div_floor(d.get(t, t));
                        d.col_sub(j, t, &q);
                        v.col_sub(j, t, &q);
                        dirty |= !d.get(t, j).is_zero();
                    }
                }
                if dirty {
                    continue 'pivot;
                }
                // Divisibility pass: the pivot must divide every entry of
                // the trailing submatrix so that the diagonal forms a
                // divisor chain. Folding an offending row into row t
                // exposes the obstruction to the clearing pass above.
                for i in t + 1..m {
                    for j in t + 1..n {
                        if !d.get(i, j).mod_floor(d.get(t, t)).is_zero() {
                            d.row_add(t, i);
                            u.row_add(t, i);
                            continue 'pivot;
                        }
                    }
                }
                break;
            }
        }
        SmithNormalForm { d, u, v }
    }

    fn min_abs_entry(&self, from: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, Int)> = None;
        for i in from..self.rows {
            for j in from..self.cols {
                let a = self.get(i, j).abs();
                if a.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, _, b)| &a < b) {
                    best = Some((i, j, a));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row_i -= q * row_k`
    fn row_sub(&mut self, i: usize, k: usize, q: &Int) {
        for j in 0..self.cols {
            let delta = q * self.get(k, j);
            *self.get_mut(i, j) -= delta;
        }
    }

    /// `col_j -= q * col_k`
    fn col_sub(&mut self, j: usize, k: usize, q: &Int) {
        for i in 0..self.rows {
            let delta = q * self.get(i, k);
            *self.get_mut(i, j) -= delta;
        }
    }

    /// `row_t += row_i`
    fn row_add(&mut self, t: usize, i: usize) {
        for j in 0..self.cols {
            let delta = self.get(i, j).clone();
            *self.get_mut(t, j) += delta;
        }
    }

    fn negate_row(&mut self, t: usize) {
        for j in 0..self.cols {
            let v = -self.get(t, j).clone();
            *self.get_mut(t, j) = v;
        }
    }
}

/// Result of [`IntMatrix::smith_normal_form`]: `d = u * a * v` where `u`
/// and `v` are unimodular and `d` is diagonal with each diagonal entry
/// non-negative and dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithNormalForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithNormalForm {
    /// The nonzero diagonal entries `d1 | d2 | ...`.
    pub fn invariant_factors(&self) -> Vec<Int> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cofactor_det(m: &IntMatrix) -> Int {
        let n = m.rows();
        if n == 0 {
            return Int::one();
        }
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = Int::zero();
        for j in 0..n {
            if m.get(0, j).is_zero() {
                continue;
            }
            let mut minor = IntMatrix::zeros(n - 1, n - 1);
            for i in 1..n {
                let mut jj = 0;
                for k in 0..n {
                    if k == j {
                        continue;
                    }
                    *minor.get_mut(i - 1, jj) = m.get(i, k).clone();
                    jj += 1;
                }
            }
            let term = m.get(0, j) * cofactor_det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> IntMatrix {
        let data = (0..rows * cols)
            .map(|_| int(rng.gen_range(-9..=9)))
            .collect();
        IntMatrix::new(rows, cols, data).unwrap()
    }

    fn check_snf(a: &IntMatrix) {
        let snf = a.smith_normal_form();
        // d = u * a * v
        let uav = snf.u.mul(a).unwrap().mul(&snf.v).unwrap();
        assert_eq!(uav, snf.d, "u*a*v must equal d");
        // u and v unimodular
        assert_eq!(snf.u.det().unwrap().abs(), Int::one());
        assert_eq!(snf.v.det().unwrap().abs(), Int::one());
        // d diagonal, non-negative, divisor chain
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    assert!(snf.d.get(i, j).is_zero(), "off-diagonal entry nonzero");
                }
            }
        }
        let diag: Vec<Int> = (0..snf.d.rows().min(snf.d.cols()))
            .map(|i| snf.d.get(i, i).clone())
            .collect();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative() && !w[1].is_negative());
            if !w[0].is_zero() {
                assert!(
                    (&w[1] % &w[0]).is_zero(),
                    "divisor chain broken: {} does not divide {}",
                    w[0],
                    w[1]
                );
            } else {
                assert!(w[1].is_zero(), "zero must not precede a nonzero factor");
            }
        }
    }

    #[test]
    fn det_identity_and_diagonal() {
        assert_eq!(IntMatrix::identity(4).det().unwrap(), int(1));
        let d = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(d.det().unwrap(), int(6));
    }

    #[test]
    fn det_rejects_non_square() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        assert_eq!(
            m.det().unwrap_err(),
            Error::NonSquareMatrix { rows: 2, cols: 3 }
        );
    }

    #[test]
    fn det_of_singular_matrix_is_zero() {
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(m.det().unwrap(), int(0));
        let z = IntMatrix::zeros(3, 3);
        assert_eq!(z.det().unwrap(), int(0));
    }

    #[test]
    fn det_agrees_with_cofactor_expansion_on_1000_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(20260819);
        for case in 0..1000 {
            let n = rng.gen_range(1..=5);
            let m = random_matrix(&mut rng, n, n);
            assert_eq!(
                m.det().unwrap(),
                cofactor_det(&m),
                "disagreement on case {case}"
            );
        }
    }

    #[test]
    fn snf_of_identity_is_identity() {
        let snf = IntMatrix::identity(3).smith_normal_form();
        assert_eq!(snf.d, IntMatrix::identity(3));
        assert_eq!(snf.invariant_factors(), vec![int(1), int(1), int(1)]);
    }

    #[test]
    fn snf_small_example() {
        // By hand: gcd of all entries is 2, |det| = |16 - 24| = 8, so the
        // invariant factors are (2, 8/2) = (2, 4).
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]).unwrap();
        let snf = m.smith_normal_form();
        assert_eq!(snf.invariant_factors(), vec![int(2), int(4)]);
        check_snf(&m);
    }

    #[test]
    fn snf_of_zero_and_rectangular_matrices() {
        let z = IntMatrix::zeros(2, 3);
        let snf = z.smith_normal_form();
        assert_eq!(snf.d, IntMatrix::zeros(2, 3));
        assert!(snf.invariant_factors().is_empty());
        check_snf(&z);

        let r = IntMatrix::from_rows(&[vec![4, 6, 10]]).unwrap();
        let snf = r.smith_normal_form();
        assert_eq!(snf.invariant_factors(), vec![int(2)]);
        check_snf(&r);
    }

    #[test]
    fn snf_transform_identity_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(4203);
        for _ in 0..300 {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(1..=4);
            let m = random_matrix(&mut rng, rows, cols);
            check_snf(&m);
        }
    }

    #[test]
    fn snf_factor_product_equals_abs_det_for_nonsingular() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let mut seen = 0;
        while seen < 200 {
            let n = rng.gen_range(1..=4);
            let m = random_matrix(&mut rng, n, n);
            let det = m.det().unwrap();
            if det.is_zero() {
                continue;
            }
            seen += 1;
            let product: Int = m
                .smith_normal_form()
                .invariant_factors()
                .iter()
                .product();
            assert_eq!(product, det.abs());
        }
    }
}
