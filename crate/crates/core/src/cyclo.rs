//! Arithmetic in Z[zeta] and (Z/l^N)[zeta] for zeta a primitive l^m-th root
//! of unity, represented against the power basis 1, zeta, ..., zeta^{phi-1}
//! with phi = phi(l^m) = l^{m-1}(l-1).
//!
//! Reduction uses zeta^{l^m} = 1 together with the cyclotomic relation
//! zeta^phi = -(1 + zeta^{l^{m-1}} + ... + zeta^{(l-2) l^{m-1}}); an exponent
//! in [phi, l^m) lands entirely below phi in one step.
//!
//! `CycInt` is exact (i64 coefficients) and carries character values;
//! `CycloScalar` has truncated l-adic coefficients and is what the group
//! algebras compute with.

use crate::error::ArithError;
use crate::padic::PadicScalar;

pub fn phi_of_level(l: u64, level: u32) -> usize {
    if level == 0 {
        1
    } else {
        (l.pow(level - 1) * (l - 1)) as usize
    }
}

fn full_order(l: u64, level: u32) -> usize {
    l.pow(level) as usize
}

/// Distribute the coefficient at exponent `e` (0 <= e < l^level) onto the
/// power basis, accumulating via `acc(index, sign)`.
fn reduce_exponent(l: u64, level: u32, e: usize, mut acc: impl FnMut(usize, i64)) {
    let phi = phi_of_level(l, level);
    if e < phi {
        acc(e, 1);
    } else {
        let step = l.pow(level - 1) as usize;
        let base = e - phi;
        for i in 0..(l - 1) as usize {
            acc(base + i * step, -1);
        }
    }
}

// ---------------------------------------------------------------------------
// Exact cyclotomic integers
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    l: u64,
    level: u32,
    coeffs: Vec<i64>,
}

impl CycInt {
    pub fn zero(l: u64, level: u32) -> Self {
        CycInt {
            l,
            level,
            coeffs: vec![0; phi_of_level(l, level)],
        }
    }

    pub fn from_int(l: u64, level: u32, v: i64) -> Self {
        let mut z = Self::zero(l, level);
        z.coeffs[0] = v;
        z
    }

    pub fn one(l: u64, level: u32) -> Self {
        Self::from_int(l, level, 1)
    }

    /// zeta^e, e taken mod l^level.
    pub fn root(l: u64, level: u32, e: i64) -> Self {
        let n = full_order(l, level);
        let e = e.rem_euclid(n as i64) as usize;
        let mut z = Self::zero(l, level);
        reduce_exponent(l, level, e, |i, s| z.coeffs[i] += s);
        z
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Some(r) when the element is the rational integer r.
    pub fn as_int(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    fn assert_compat(&self, other: &Self) {
        assert_eq!(self.l, other.l);
        assert_eq!(self.level, other.level);
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compat(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycInt {
            l: self.l,
            level: self.level,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_compat(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycInt {
            l: self.l,
            level: self.level,
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        CycInt {
            l: self.l,
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        CycInt {
            l: self.l,
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_compat(other);
        let n = full_order(self.l, self.level);
        let mut raw = vec![0i64; 2 * n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                raw[i + j] += a.checked_mul(*b).expect("cyclotomic overflow");
            }
        }
        let mut out = Self::zero(self.l, self.level);
        for (e, c) in raw.into_iter().enumerate() {
            if c != 0 {
                reduce_exponent(self.l, self.level, e % n, |i, s| out.coeffs[i] += s * c);
            }
        }
        out
    }

    /// Galois action zeta -> zeta^u for gcd(u, l) = 1.
    pub fn galois(&self, u: u64) -> Result<Self, ArithError> {
        if u % self.l == 0 {
            return Err(ArithError::BadUnit(u));
        }
        let n = full_order(self.l, self.level) as u64;
        let mut out = Self::zero(self.l, self.level);
        for (j, c) in self.coeffs.iter().enumerate() {
            if *c != 0 {
                let e = (u * j as u64 % n) as usize;
                reduce_exponent(self.l, self.level, e, |i, s| out.coeffs[i] += s * c);
            }
        }
        Ok(out)
    }

    /// Complex conjugation zeta -> zeta^{-1}.
    pub fn conj(&self) -> Self {
        let n = full_order(self.l, self.level) as u64;
        self.galois(n - 1).expect("-1 is a unit")
    }

    /// Exact division by a rational integer; None when not divisible.
    pub fn exact_div_int(&self, d: i64) -> Option<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            if c % d != 0 {
                return None;
            }
            coeffs.push(c / d);
        }
        Some(CycInt {
            l: self.l,
            level: self.level,
            coeffs,
        })
    }

    /// Re-express at a higher cyclotomic level.
    pub fn embed_at_level(&self, level: u32) -> Self {
        assert!(level >= self.level);
        if level == self.level {
            return self.clone();
        }
        let shift = self.l.pow(level - self.level) as usize;
        let n = full_order(self.l, level);
        let mut out = Self::zero(self.l, level);
        for (j, c) in self.coeffs.iter().enumerate() {
            if *c != 0 {
                reduce_exponent(self.l, level, (j * shift) % n, |i, s| out.coeffs[i] += s * c);
            }
        }
        out
    }

    /// Reduce into the truncated ring at the given precision.
    pub fn to_scalar(&self, prec: u32) -> CycloScalar {
        CycloScalar {
            l: self.l,
            level: self.level,
            coeffs: self
                .coeffs
                .iter()
                .map(|&c| PadicScalar::from_i64(self.l, c, prec))
                .collect(),
        }
    }
}

impl std::fmt::Display for CycInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if *c < 0 { "-" } else { "+" })?;
            } else if *c < 0 {
                write!(f, "-")?;
            }
            let a = c.abs();
            match (j, a) {
                (0, a) => write!(f, "{a}")?,
                (1, 1) => write!(f, "z")?,
                (1, a) => write!(f, "{a}*z")?,
                (j, 1) => write!(f, "z^{j}")?,
                (j, a) => write!(f, "{a}*z^{j}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Truncated cyclotomic scalars
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloScalar {
    l: u64,
    level: u32,
    coeffs: Vec<PadicScalar>,
}

impl CycloScalar {
    pub fn zero(l: u64, level: u32, prec: u32) -> Self {
        CycloScalar {
            l,
            level,
            coeffs: vec![PadicScalar::zero(l, prec); phi_of_level(l, level)],
        }
    }

    pub fn one(l: u64, level: u32, prec: u32) -> Self {
        let mut z = Self::zero(l, level, prec);
        z.coeffs[0] = PadicScalar::one(l, prec);
        z
    }

    pub fn from_padic(level: u32, s: PadicScalar) -> Self {
        let mut z = Self::zero(s.l(), level, s.prec());
        z.coeffs[0] = s;
        z
    }

    pub fn from_u64(l: u64, level: u32, v: u64, prec: u32) -> Self {
        Self::from_padic(level, PadicScalar::new(l, v, prec))
    }

    pub fn root(l: u64, level: u32, e: i64, prec: u32) -> Self {
        CycInt::root(l, level, e).to_scalar(prec)
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[PadicScalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn min_prec(&self) -> u32 {
        self.coeffs.iter().map(|c| c.prec()).min().unwrap()
    }

    /// Minimum coefficient valuation: the element is divisible by l^v in the
    /// integral lattice exactly when v <= this.
    pub fn valuation(&self) -> u32 {
        self.coeffs.iter().map(|c| c.valuation()).min().unwrap()
    }

    fn assert_compat(&self, other: &Self) {
        assert_eq!(self.l, other.l);
        assert_eq!(self.level, other.level);
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compat(other);
        CycloScalar {
            l: self.l,
            level: self.level,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_compat(other);
        CycloScalar {
            l: self.l,
            level: self.level,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CycloScalar {
            l: self.l,
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_compat(other);
        let p = self.min_prec().min(other.min_prec());
        let n = full_order(self.l, self.level);
        let m = crate::padic::pow_l(self.l, p) as u128;
        let mut raw = vec![0u128; 2 * n];
        for (i, a) in self.coeffs.iter().enumerate() {
            let av = a.value() as u128 % m;
            if av == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let bv = b.value() as u128 % m;
                if bv != 0 {
                    raw[i + j] = (raw[i + j] + av * bv) % m;
                }
            }
        }
        let mut out = vec![0i128; phi_of_level(self.l, self.level)];
        for (e, c) in raw.into_iter().enumerate() {
            if c != 0 {
                reduce_exponent(self.l, self.level, e % n, |i, s| {
                    out[i] += s as i128 * c as i128
                });
            }
        }
        CycloScalar {
            l: self.l,
            level: self.level,
            coeffs: out
                .into_iter()
                .map(|c| PadicScalar::new(self.l, c.rem_euclid(m as i128) as u64, p))
                .collect(),
        }
    }

    pub fn mul_padic(&self, s: &PadicScalar) -> Self {
        CycloScalar {
            l: self.l,
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c.mul(s)).collect(),
        }
    }

    pub fn mul_pow_l(&self, e: u32) -> Self {
        CycloScalar {
            l: self.l,
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c.mul_pow_l(e)).collect(),
        }
    }

    pub fn exact_div_l(&self, r: u32) -> Result<Self, ArithError> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            match c.exact_div_l(r) {
                Ok(q) => coeffs.push(q),
                Err(ArithError::NotDivisible {
                    requested,
                    valuation,
                    ..
                }) => {
                    return Err(ArithError::NotDivisible {
                        requested,
                        valuation,
                        index: i,
                    })
                }
                Err(e) => return Err(e),
            }
        }
        Ok(CycloScalar {
            l: self.l,
            level: self.level,
            coeffs,
        })
    }

    /// Galois action zeta -> zeta^u on coefficients.
    pub fn galois(&self, u: u64) -> Result<Self, ArithError> {
        if u % self.l == 0 {
            return Err(ArithError::BadUnit(u));
        }
        let n = full_order(self.l, self.level) as u64;
        let p = self.min_prec();
        let m = crate::padic::pow_l(self.l, p) as i128;
        let mut out = vec![0i128; phi_of_level(self.l, self.level)];
        for (j, c) in self.coeffs.iter().enumerate() {
            let v = (c.value() % m as u64) as i128;
            if v != 0 {
                let e = (u * j as u64 % n) as usize;
                reduce_exponent(self.l, self.level, e, |i, s| out[i] += s as i128 * v);
            }
        }
        Ok(CycloScalar {
            l: self.l,
            level: self.level,
            coeffs: out
                .into_iter()
                .map(|c| PadicScalar::new(self.l, c.rem_euclid(m) as u64, p))
                .collect(),
        })
    }

    /// Residue of the evaluation zeta -> 1; detects units mod l.
    pub fn eval_at_one(&self) -> PadicScalar {
        let mut acc = PadicScalar::zero(self.l, self.min_prec());
        for c in &self.coeffs {
            acc = acc.add(c);
        }
        acc
    }

    pub fn is_unit(&self) -> bool {
        self.eval_at_one().is_unit()
    }

    pub fn reduce_prec(&self, p: u32) -> Self {
        CycloScalar {
            l: self.l,
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c.reduce_prec(p)).collect(),
        }
    }

    pub fn congruent_at(&self, other: &Self, p: u32) -> bool {
        self.level == other.level
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| a.congruent_at(b, p))
    }
}

impl std::fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c.value())?;
        }
        write!(f, "] + O({}^{})", self.l, self.min_prec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_powers_cycle() {
        // zeta_9 in Z[zeta_9]: zeta^9 = 1 and zeta^6 reduces below phi(9)=6.
        let z = CycInt::root(3, 2, 1);
        let mut acc = CycInt::one(3, 2);
        for _ in 0..9 {
            acc = acc.mul(&z);
        }
        assert_eq!(acc, CycInt::one(3, 2));
        let z6 = CycInt::root(3, 2, 6);
        assert_eq!(z6.coeffs(), &[-1, 0, 0, -1, 0, 0]);
    }

    #[test]
    fn level_one_relation() {
        // 1 + zeta_3 + zeta_3^2 = 0.
        let s = CycInt::one(3, 1)
            .add(&CycInt::root(3, 1, 1))
            .add(&CycInt::root(3, 1, 2));
        assert!(s.is_zero());
    }

    #[test]
    fn galois_is_multiplicative() {
        let x = CycInt::root(3, 2, 1).add(&CycInt::from_int(3, 2, 2));
        let y = CycInt::root(3, 2, 5).sub(&CycInt::from_int(3, 2, 1));
        let lhs = x.mul(&y).galois(2).unwrap();
        let rhs = x.galois(2).unwrap().mul(&y.galois(2).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn embed_preserves_products() {
        let x = CycInt::root(3, 1, 1);
        let y = CycInt::root(3, 1, 2);
        let lhs = x.mul(&y).embed_at_level(2);
        let rhs = x.embed_at_level(2).mul(&y.embed_at_level(2));
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, CycInt::one(3, 2).embed_at_level(2));
    }

    #[test]
    fn scalar_galois_identity_and_composition() {
        let x = CycloScalar::root(3, 2, 1, 6).add(&CycloScalar::from_u64(3, 2, 5, 6));
        assert_eq!(x.galois(1).unwrap(), x);
        let a = x.galois(2).unwrap().galois(4).unwrap();
        let b = x.galois(8).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn scalar_div_roundtrip() {
        let x = CycloScalar::root(3, 2, 4, 6).add(&CycloScalar::from_u64(3, 2, 7, 6));
        let y = x.mul_pow_l(2);
        let q = y.exact_div_l(2).unwrap();
        assert!(q.congruent_at(&x, 6));
    }
}
