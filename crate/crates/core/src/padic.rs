//! Truncated l-adic scalars with per-value absolute precision.
//!
//! A `PadicScalar` is a residue mod `l^prec` together with the exponent
//! `prec` itself. Knowing a value "at precision p" means knowing it mod
//! `l^p` and nothing more; every operation computes the precision its
//! output honestly carries. Addition and multiplication keep the minimum
//! of the operand precisions. Division by `l^r` costs `r`. Multiplying by
//! the exact constant `l^e` *gains* `e` (the product of something known
//! mod `l^p` with `l^e` is determined mod `l^{p+e}`), which is what keeps
//! logarithm series from bleeding precision.

use crate::error::ArithError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicScalar {
    l: u64,
    prec: u32,
    value: u64,
}

/// Largest precision exponent such that l^prec still fits comfortably in u64.
pub fn max_prec(l: u64) -> u32 {
    let mut p = 0u32;
    let mut m: u128 = 1;
    while m * (l as u128) < (1u128 << 62) {
        m *= l as u128;
        p += 1;
    }
    p
}

pub fn pow_l(l: u64, e: u32) -> u64 {
    let mut m = 1u64;
    for _ in 0..e {
        m = m.checked_mul(l).expect("l-power overflow");
    }
    m
}

impl PadicScalar {
    pub fn new(l: u64, value: u64, prec: u32) -> Self {
        assert!(prec >= 1, "precision must be at least 1");
        assert!(prec <= max_prec(l), "precision {prec} too large for l={l}");
        PadicScalar {
            l,
            prec,
            value: value % pow_l(l, prec),
        }
    }

    pub fn from_i64(l: u64, value: i64, prec: u32) -> Self {
        let m = pow_l(l, prec) as i64;
        Self::new(l, value.rem_euclid(m) as u64, prec)
    }

    pub fn zero(l: u64, prec: u32) -> Self {
        Self::new(l, 0, prec)
    }

    pub fn one(l: u64, prec: u32) -> Self {
        Self::new(l, 1, prec)
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        pow_l(self.l, self.prec)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// l-adic valuation of the stored residue, capped at `prec` (the zero
    /// residue has valuation `prec`: all we know is O(l^prec)).
    pub fn valuation(&self) -> u32 {
        if self.value == 0 {
            return self.prec;
        }
        let mut v = 0;
        let mut x = self.value;
        while x % self.l == 0 {
            x /= self.l;
            v += 1;
        }
        v
    }

    fn meet(&self, other: &Self) -> (u64, u32) {
        assert_eq!(self.l, other.l, "mixed primes");
        (self.l, self.prec.min(other.prec))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (l, p) = self.meet(other);
        let m = pow_l(l, p) as u128;
        Self::new(l, ((self.value as u128 + other.value as u128) % m) as u64, p)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (l, p) = self.meet(other);
        let m = pow_l(l, p) as u128;
        Self::new(
            l,
            ((self.value as u128 + m - (other.value as u128 % m)) % m) as u64,
            p,
        )
    }

    pub fn neg(&self) -> Self {
        let m = self.modulus();
        Self::new(self.l, (m - self.value) % m, self.prec)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (l, p) = self.meet(other);
        let m = pow_l(l, p) as u128;
        Self::new(l, ((self.value as u128 * other.value as u128) % m) as u64, p)
    }

    pub fn mul_u64(&self, k: u64) -> Self {
        self.mul(&Self::new(self.l, k % self.modulus(), self.prec))
    }

    /// Multiply by the exact constant l^e. Absolute precision rises by e
    /// (capped at the representable maximum for this prime).
    pub fn mul_pow_l(&self, e: u32) -> Self {
        let p = (self.prec + e).min(max_prec(self.l));
        let m = pow_l(self.l, p) as u128;
        let shift = pow_l(self.l, e) as u128;
        Self::new(self.l, ((self.value as u128 * shift) % m) as u64, p)
    }

    /// Exact division by l^r. Fails with `NotDivisible` when the stored
    /// residue is not a multiple of l^r, and with `PrecisionExhausted` when
    /// the quotient would carry no precision at all.
    pub fn exact_div_l(&self, r: u32) -> Result<Self, ArithError> {
        if r == 0 {
            return Ok(*self);
        }
        if self.prec <= r {
            return Err(ArithError::PrecisionExhausted(format!(
                "dividing a value at precision {} by l^{r}",
                self.prec
            )));
        }
        let d = pow_l(self.l, r);
        if self.value % d != 0 {
            return Err(ArithError::NotDivisible {
                requested: r,
                valuation: self.valuation(),
                index: 0,
            });
        }
        Ok(Self::new(self.l, self.value / d, self.prec - r))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::one(self.l, self.prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_unit(&self) -> bool {
        self.value % self.l != 0
    }

    /// Inverse of a unit, exact at the value's own precision.
    pub fn inv(&self) -> Result<Self, ArithError> {
        if !self.is_unit() {
            return Err(ArithError::BadUnit(self.value));
        }
        // Newton lifting of the inverse mod l.
        let m = self.modulus() as u128;
        let mut y = inv_mod_prime(self.value % self.l, self.l) as u128;
        loop {
            let prod = (self.value as u128 * y) % m;
            if prod == 1 {
                break;
            }
            y = (y * ((2 + m - prod) % m)) % m;
        }
        Ok(Self::new(self.l, y as u64, self.prec))
    }

    /// Truncate to a lower precision (never raises).
    pub fn reduce_prec(&self, p: u32) -> Self {
        let p = p.min(self.prec).max(1);
        Self::new(self.l, self.value % pow_l(self.l, p), p)
    }

    /// Do the two values agree mod l^p? Requires both to carry at least
    /// precision p.
    pub fn congruent_at(&self, other: &Self, p: u32) -> bool {
        if self.prec < p || other.prec < p {
            return false;
        }
        let m = pow_l(self.l, p);
        self.value % m == other.value % m
    }
}

pub fn inv_mod_prime(a: u64, l: u64) -> u64 {
    // l is a small odd prime; Fermat.
    let mut acc = 1u64;
    let mut base = a % l;
    let mut e = l - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % l;
        }
        base = base * base % l;
        e >>= 1;
    }
    acc
}

impl std::fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} + O({}^{})", self.value, self.l, self.prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructed_divisible() {
        let u = PadicScalar::new(3, 5, 6);
        let x = u.mul_u64(3);
        let q = x.exact_div_l(1).unwrap();
        assert_eq!(q.value(), 5);
        assert_eq!(q.prec(), 5);
    }

    #[test]
    fn unit_not_divisible() {
        let one = PadicScalar::one(3, 6);
        assert!(matches!(
            one.exact_div_l(1),
            Err(ArithError::NotDivisible { .. })
        ));
    }

    #[test]
    fn forced_division() {
        let x = PadicScalar::new(3, 9, 4);
        let q = x.exact_div_l(2).unwrap();
        assert_eq!(q.value(), 1);
        assert_eq!(q.prec(), 2);
    }

    #[test]
    fn precision_floor() {
        let x = PadicScalar::new(3, 27, 3);
        assert!(matches!(
            x.exact_div_l(3),
            Err(ArithError::PrecisionExhausted(_))
        ));
    }

    #[test]
    fn shift_gains_precision() {
        let x = PadicScalar::new(3, 7, 4);
        let y = x.mul_pow_l(2);
        assert_eq!(y.prec(), 6);
        assert_eq!(y.value(), 63);
    }

    #[test]
    fn inverse_roundtrip() {
        for v in 1..729u64 {
            if v % 3 == 0 {
                continue;
            }
            let x = PadicScalar::new(3, v, 6);
            let y = x.inv().unwrap();
            assert_eq!(x.mul(&y).value(), 1);
        }
    }

    #[test]
    fn min_precision_rule() {
        let a = PadicScalar::new(3, 10, 6);
        let b = PadicScalar::new(3, 4, 4);
        assert_eq!(a.mul(&b).prec(), 4);
        assert_eq!(a.add(&b).prec(), 4);
    }
}
