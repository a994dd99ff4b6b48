//! Exact integer matrices: Smith normal form with unimodular transforms,
//! integer kernels, and exact solving. Entries are arbitrary-size integers;
//! nothing here ever truncates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
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

    fn add_row_multiple(&mut self, target: usize, source: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(target, j) + c * self.get(source, j);
            self.set(target, j, v);
        }
    }

    fn add_col_multiple(&mut self, target: usize, source: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, target) + c * self.get(i, source);
            self.set(i, target, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let pivot = (k + 1..n).find(|&i| !m.get(i, k).is_zero());
                match pivot {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, k, BigInt::zero());
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1)
    }
}

pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

/// Smith normal form: returns (U, D, V) with U*M*V = D, U and V unimodular,
/// D diagonal with nonnegative entries and d_i | d_{i+1}.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let steps = m.rows().min(m.cols());

    for k in 0..steps {
        'outer: loop {
            // Smallest |entry| in the trailing block as pivot keeps growth tame.
            let mut best: Option<(usize, usize)> = None;
            for i in k..d.rows() {
                for j in k..d.cols() {
                    if !d.get(i, j).is_zero()
                        && best.is_none_or(|(bi, bj)| d.get(i, j).abs() < d.get(bi, bj).abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);
            if d.get(k, k).is_negative() {
                d.negate_row(k);
                u.negate_row(k);
            }

            let mut dirty = false;
            for i in k + 1..d.rows() {
                let q = -(d.get(i, k).div_floor(d.get(k, k)));
                d.add_row_multiple(i, k, &q);
                u.add_row_multiple(i, k, &q);
                if !d.get(i, k).is_zero() {
                    dirty = true;
                }
            }
            for j in k + 1..d.cols() {
                let q = -(d.get(k, j).div_floor(d.get(k, k)));
                d.add_col_multiple(j, k, &q);
                v.add_col_multiple(j, k, &q);
                if !d.get(k, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }

            // Enforce divisibility of the trailing block by the pivot.
            for i in k + 1..d.rows() {
                for j in k + 1..d.cols() {
                    if !(d.get(i, j) % d.get(k, k)).is_zero() {
                        d.add_row_multiple(k, i, &BigInt::one());
                        u.add_row_multiple(k, i, &BigInt::one());
                        continue 'outer;
                    }
                }
            }
            break;
        }
    }
    SnfResult { u, d, v }
}

/// Basis (as columns) of the integer kernel {x : Mx = 0}.
pub fn kernel_lattice(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let steps = m.rows().min(m.cols());
    let mut free_cols = Vec::new();
    for j in 0..m.cols() {
        if j >= steps || snf.d.get(j, j).is_zero() {
            free_cols.push(j);
        }
    }
    let mut out = IntMatrix::zero(m.cols(), free_cols.len());
    for (t, &j) in free_cols.iter().enumerate() {
        for i in 0..m.cols() {
            out.set(i, t, snf.v.get(i, j).clone());
        }
    }
    out
}

/// Exact solve B*X = N for integer X; None when no integral solution exists.
pub fn solve_exact(b: &IntMatrix, n: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(b.rows(), n.rows());
    let snf = smith_normal_form(b);
    let un = snf.u.mul(n);
    let steps = b.rows().min(b.cols());
    let mut y = IntMatrix::zero(b.cols(), n.cols());
    for i in 0..b.rows() {
        for j in 0..n.cols() {
            let rhs = un.get(i, j);
            if i < steps && !snf.d.get(i, i).is_zero() {
                let (q, r) = rhs.div_rem(snf.d.get(i, i));
                if !r.is_zero() {
                    return None;
                }
                y.set(i, j, q);
            } else if !rhs.is_zero() {
                return None;
            }
        }
    }
    Some(snf.v.mul(&y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(m: &IntMatrix) {
        let snf = smith_normal_form(m);
        assert_eq!(snf.u.mul(m).mul(&snf.v), snf.d);
        assert_eq!(snf.u.det().abs(), BigInt::one(), "U not unimodular");
        assert_eq!(snf.v.det().abs(), BigInt::one(), "V not unimodular");
        let steps = m.rows().min(m.cols());
        for k in 0..steps {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    if i != j {
                        assert!(snf.d.get(i, j).is_zero());
                    }
                }
            }
            if k + 1 < steps && !snf.d.get(k + 1, k + 1).is_zero() {
                assert!(
                    (snf.d.get(k + 1, k + 1) % snf.d.get(k, k)).is_zero(),
                    "divisibility chain broken"
                );
            }
        }
    }

    #[test]
    fn identity_is_fixed() {
        let m = IntMatrix::identity(4);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.d, m);
        check_snf(&m);
    }

    #[test]
    fn diag_2_3_gives_1_6() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.d.get(0, 0), &BigInt::from(1));
        assert_eq!(snf.d.get(1, 1), &BigInt::from(6));
        check_snf(&m);
    }

    #[test]
    fn zero_matrix() {
        let m = IntMatrix::zero(3, 2);
        let snf = smith_normal_form(&m);
        assert!(snf.d.is_zero());
        check_snf(&m);
    }

    #[test]
    fn random_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let r = rng.gen_range(1..=6);
            let c = rng.gen_range(1..=6);
            let rows: Vec<Vec<i64>> = (0..r)
                .map(|_| (0..c).map(|_| rng.gen_range(-30..=30)).collect())
                .collect();
            check_snf(&IntMatrix::from_i64_rows(&rows));
        }
    }

    #[test]
    fn kernel_and_solve() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let k = kernel_lattice(&m);
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());

        let b = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        let n = IntMatrix::from_i64_rows(&[vec![4], vec![9]]);
        let x = solve_exact(&b, &n).unwrap();
        assert_eq!(b.mul(&x), n);
        let bad = IntMatrix::from_i64_rows(&[vec![3], vec![9]]);
        assert!(solve_exact(&b, &bad).is_none());
    }
}
