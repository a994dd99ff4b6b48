//! Exact linear algebra over Z/l^N: Howell-form span bases with
//! valuation-aware pivoting. Membership decisions are exact; positive
//! answers carry coefficients over the original generators, negative
//! answers carry an annihilating functional (Z/l^N is self-injective, so a
//! functional separating the vector from the span always exists).

use crate::intmat::{kernel_lattice, IntMatrix};
use crate::padic::pow_l;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

fn val_of(l: u64, q: u64, x: u64, prec: u32) -> u32 {
    if x % q == 0 {
        return prec;
    }
    let mut v = 0;
    let mut y = x % q;
    while y % l == 0 {
        y /= l;
        v += 1;
    }
    v
}

fn inv_unit_mod(l: u64, q: u64, a: u64) -> u64 {
    // a coprime to l; Newton lift of the inverse mod l.
    let mut y = crate::padic::inv_mod_prime(a % l, l) as u128;
    let q = q as u128;
    let a = a as u128 % q;
    loop {
        let p = a * y % q;
        if p == 1 {
            return y as u64;
        }
        y = y * ((2 + q - p) % q) % q;
    }
}

#[derive(Debug, Clone)]
struct BasisRow {
    col: usize,
    val: u32,
    row: Vec<u64>,
    expr: Vec<u64>,
}

/// Row span of a set of generators in (Z/l^N)^dim, kept in Howell normal
/// form so membership is a single greedy reduction.
#[derive(Debug, Clone)]
pub struct SpanBasis {
    l: u64,
    prec: u32,
    q: u64,
    dim: usize,
    gens: Vec<Vec<u64>>,
    basis: Vec<BasisRow>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum Membership {
    Member {
        /// Coefficients over the original generators: x = sum c_i g_i mod l^N.
        coeffs: Vec<u64>,
    },
    NotMember {
        /// Functional phi with phi . g = 0 mod l^N for every generator while
        /// phi . x != 0; the residual after full reduction is kept alongside.
        functional: Vec<u64>,
        pairing: u64,
    },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

impl SpanBasis {
    pub fn build(l: u64, prec: u32, dim: usize, gens: Vec<Vec<u64>>) -> Self {
        let q = pow_l(l, prec);
        let n = gens.len();
        let mut span = SpanBasis {
            l,
            prec,
            q,
            dim,
            gens: gens
                .iter()
                .map(|g| g.iter().map(|x| x % q).collect())
                .collect(),
            basis: Vec::new(),
        };
        let mut work: Vec<(Vec<u64>, Vec<u64>)> = span
            .gens
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let mut e = vec![0u64; n];
                e[i] = 1;
                (g.clone(), e)
            })
            .collect();
        while let Some((v, ex)) = work.pop() {
            span.insert(v, ex, &mut work);
        }
        span.back_reduce();
        span.basis.sort_by_key(|r| r.col);
        span
    }

    fn insert(&mut self, mut v: Vec<u64>, mut ex: Vec<u64>, work: &mut Vec<(Vec<u64>, Vec<u64>)>) {
        loop {
            let Some(c) = v.iter().position(|&x| x % self.q != 0) else {
                return;
            };
            let ve = val_of(self.l, self.q, v[c], self.prec);
            if let Some(idx) = self.basis.iter().position(|r| r.col == c) {
                if ve >= self.basis[idx].val {
                    let f = v[c] / pow_l(self.l, self.basis[idx].val);
                    self.sub_multiple(&mut v, &mut ex, idx, f);
                    continue;
                }
                // Smaller valuation: the new row takes the pivot.
                self.normalize(&mut v, &mut ex, c, ve);
                let old = std::mem::replace(
                    &mut self.basis[idx],
                    BasisRow {
                        col: c,
                        val: ve,
                        row: v.clone(),
                        expr: ex.clone(),
                    },
                );
                work.push((old.row, old.expr));
                self.push_shadow(c, ve, &v, &ex, work);
                return;
            }
            self.normalize(&mut v, &mut ex, c, ve);
            self.basis.push(BasisRow {
                col: c,
                val: ve,
                row: v.clone(),
                expr: ex.clone(),
            });
            self.push_shadow(c, ve, &v, &ex, work);
            return;
        }
    }

    fn push_shadow(
        &self,
        _c: usize,
        ve: u32,
        v: &[u64],
        ex: &[u64],
        work: &mut Vec<(Vec<u64>, Vec<u64>)>,
    ) {
        // l^{N-v} * row lies in the span with the pivot annihilated; adding it
        // is what gives the Howell property.
        if ve > 0 {
            let s = pow_l(self.l, self.prec - ve);
            let sv: Vec<u64> = v
                .iter()
                .map(|&x| (x as u128 * s as u128 % self.q as u128) as u64)
                .collect();
            if sv.iter().any(|&x| x != 0) {
                let se: Vec<u64> = ex
                    .iter()
                    .map(|&x| (x as u128 * s as u128 % self.q as u128) as u64)
                    .collect();
                work.push((sv, se));
            }
        }
    }

    fn normalize(&self, v: &mut [u64], ex: &mut [u64], c: usize, ve: u32) {
        let unit = v[c] / pow_l(self.l, ve);
        let w = inv_unit_mod(self.l, self.q, unit);
        for x in v.iter_mut().chain(ex.iter_mut()) {
            *x = (*x as u128 * w as u128 % self.q as u128) as u64;
        }
    }

    fn sub_multiple(&self, v: &mut [u64], ex: &mut [u64], idx: usize, f: u64) {
        let row = &self.basis[idx];
        for (x, r) in v.iter_mut().zip(&row.row) {
            *x = ((*x as u128 + self.q as u128 - (f as u128 * *r as u128 % self.q as u128))
                % self.q as u128) as u64;
        }
        for (x, r) in ex.iter_mut().zip(&row.expr) {
            *x = ((*x as u128 + self.q as u128 - (f as u128 * *r as u128 % self.q as u128))
                % self.q as u128) as u64;
        }
    }

    fn back_reduce(&mut self) {
        self.basis.sort_by_key(|r| r.col);
        for i in 0..self.basis.len() {
            for j in 0..self.basis.len() {
                if i == j {
                    continue;
                }
                let (cj, vj) = (self.basis[j].col, self.basis[j].val);
                let e = self.basis[i].row[cj];
                let f = e / pow_l(self.l, vj);
                if f != 0 {
                    let (a, b) = if i < j {
                        let (x, y) = self.basis.split_at_mut(j);
                        (&mut x[i], &y[0])
                    } else {
                        let (x, y) = self.basis.split_at_mut(i);
                        (&mut y[0], &x[j])
                    };
                    for (x, r) in a.row.iter_mut().zip(&b.row) {
                        *x = ((*x as u128 + self.q as u128
                            - (f as u128 * *r as u128 % self.q as u128))
                            % self.q as u128) as u64;
                    }
                    for (x, r) in a.expr.iter_mut().zip(&b.expr) {
                        *x = ((*x as u128 + self.q as u128
                            - (f as u128 * *r as u128 % self.q as u128))
                            % self.q as u128) as u64;
                    }
                }
            }
        }
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    /// The unique Howell invariant of the span: sorted (pivot column,
    /// valuation) pairs plus the canonical rows. Equal spans have equal forms.
    pub fn canonical_rows(&self) -> Vec<(usize, u32, Vec<u64>)> {
        self.basis
            .iter()
            .map(|r| (r.col, r.val, r.row.clone()))
            .collect()
    }

    pub fn membership(&self, x: &[u64]) -> Membership {
        assert_eq!(x.len(), self.dim);
        let mut rem: Vec<u64> = x.iter().map(|v| v % self.q).collect();
        let mut coeffs = vec![0u64; self.gens.len()];
        for r in &self.basis {
            let e = rem[r.col];
            if e == 0 {
                continue;
            }
            if val_of(self.l, self.q, e, self.prec) < r.val {
                return self.not_member(x);
            }
            let f = e / pow_l(self.l, r.val);
            for (t, s) in rem.iter_mut().zip(&r.row) {
                *t = ((*t as u128 + self.q as u128 - (f as u128 * *s as u128 % self.q as u128))
                    % self.q as u128) as u64;
            }
            for (t, s) in coeffs.iter_mut().zip(&r.expr) {
                *t = ((*t as u128 + f as u128 * *s as u128) % self.q as u128) as u64;
            }
        }
        if rem.iter().all(|&v| v == 0) {
            debug_assert!(self.verify_coeffs(x, &coeffs));
            Membership::Member { coeffs }
        } else {
            self.not_member(x)
        }
    }

    fn verify_coeffs(&self, x: &[u64], coeffs: &[u64]) -> bool {
        let mut acc = vec![0u128; self.dim];
        for (c, g) in coeffs.iter().zip(&self.gens) {
            for (a, v) in acc.iter_mut().zip(g) {
                *a = (*a + *c as u128 * *v as u128) % self.q as u128;
            }
        }
        acc.iter().zip(x).all(|(a, b)| *a == (*b % self.q) as u128)
    }

    fn not_member(&self, x: &[u64]) -> Membership {
        let functional = self
            .separating_functional(x)
            .expect("reduction failed yet no separating functional exists");
        let pairing = self.pair(&functional, x);
        Membership::NotMember {
            functional,
            pairing,
        }
    }

    fn pair(&self, phi: &[u64], x: &[u64]) -> u64 {
        let mut acc = 0u128;
        for (a, b) in phi.iter().zip(x) {
            acc = (acc + *a as u128 * (*b % self.q) as u128) % self.q as u128;
        }
        acc as u64
    }

    /// A functional vanishing on the span but not on x. Computed from the
    /// integer kernel of [B | l^N I] over the Howell basis B.
    pub fn separating_functional(&self, x: &[u64]) -> Option<Vec<u64>> {
        let r = self.basis.len();
        let mut m = IntMatrix::zero(r, self.dim + r);
        for (i, row) in self.basis.iter().enumerate() {
            for (j, v) in row.row.iter().enumerate() {
                m.set(i, j, num_bigint::BigInt::from(*v));
            }
            m.set(i, self.dim + i, num_bigint::BigInt::from(self.q));
        }
        let ker = kernel_lattice(&m);
        let qi = num_bigint::BigInt::from(self.q);
        for t in 0..ker.cols() {
            let phi: Vec<u64> = (0..self.dim)
                .map(|i| {
                    let v = ker.get(i, t).mod_floor(&qi);
                    v.to_u64().unwrap()
                })
                .collect();
            if self.pair(&phi, x) != 0 && self.gens.iter().all(|g| self.pair(&phi, g) == 0) {
                return Some(phi);
            }
        }
        // Single kernel vectors may not separate; try the residual-guided
        // combination: any Z-combination of kernel vectors is admissible.
        let mut acc = vec![0u64; self.dim];
        for t in 0..ker.cols() {
            let phi: Vec<u64> = (0..self.dim)
                .map(|i| ker.get(i, t).mod_floor(&qi).to_u64().unwrap())
                .collect();
            if self.gens.iter().all(|g| self.pair(&phi, g) == 0) {
                for (a, b) in acc.iter_mut().zip(&phi) {
                    *a = (*a + *b) % self.q;
                }
                if self.pair(&acc, x) != 0 {
                    return Some(acc);
                }
            }
        }
        None
    }
}

use num_integer::Integer as _;

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    /// Brute-force span membership over small moduli: enumerate all
    /// coefficient tuples.
    fn brute_member(q: u64, gens: &[Vec<u64>], x: &[u64]) -> bool {
        let n = gens.len();
        let mut tuple = vec![0u64; n];
        loop {
            let mut acc = vec![0u64; x.len()];
            for (c, g) in tuple.iter().zip(gens) {
                for (a, v) in acc.iter_mut().zip(g) {
                    *a = (*a + c * v) % q;
                }
            }
            if acc.iter().zip(x).all(|(a, b)| a == &(b % q)) {
                return true;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return false;
                }
                tuple[i] += 1;
                if tuple[i] == q {
                    tuple[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }

    #[test]
    fn matches_brute_force() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let (l, prec) = (3u64, 3u32);
        let q = pow_l(l, prec);
        for _ in 0..30 {
            let dim = rng.gen_range(1..=3);
            let ng = rng.gen_range(1..=2);
            let gens: Vec<Vec<u64>> = (0..ng)
                .map(|_| (0..dim).map(|_| rng.gen_range(0..q)).collect())
                .collect();
            let span = SpanBasis::build(l, prec, dim, gens.clone());
            for _ in 0..12 {
                let x: Vec<u64> = (0..dim).map(|_| rng.gen_range(0..q)).collect();
                let got = span.membership(&x);
                let want = brute_member(q, &gens, &x);
                assert_eq!(got.is_member(), want, "gens={gens:?} x={x:?}");
                match got {
                    Membership::Member { coeffs } => {
                        let mut acc = vec![0u64; dim];
                        for (c, g) in coeffs.iter().zip(&gens) {
                            for (a, v) in acc.iter_mut().zip(g) {
                                *a = (*a + c * v) % q;
                            }
                        }
                        assert_eq!(acc, x.iter().map(|v| v % q).collect::<Vec<_>>());
                    }
                    Membership::NotMember {
                        functional,
                        pairing,
                    } => {
                        assert_ne!(pairing, 0);
                        for g in &gens {
                            let mut acc = 0u64;
                            for (a, b) in functional.iter().zip(g) {
                                acc = (acc + a * b) % q;
                            }
                            assert_eq!(acc, 0);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn zero_always_member() {
        let span = SpanBasis::build(3, 4, 3, vec![vec![3, 0, 1]]);
        assert!(span.membership(&[0, 0, 0]).is_member());
    }

    #[test]
    fn generator_multiple_member() {
        let span = SpanBasis::build(3, 4, 2, vec![vec![3, 6]]);
        assert!(span.membership(&[9, 18]).is_member());
        assert!(!span.membership(&[1, 2]).is_member());
    }

    #[test]
    fn canonical_form_is_span_invariant() {
        // Same span presented by different generators.
        let a = SpanBasis::build(3, 3, 3, vec![vec![1, 2, 3], vec![0, 3, 6]]);
        let b = SpanBasis::build(
            3,
            3,
            3,
            vec![vec![1, 5, 9], vec![1, 2, 3], vec![0, 6, 12], vec![2, 4, 6]],
        );
        assert_eq!(a.canonical_rows(), b.canonical_rows());
    }
}
