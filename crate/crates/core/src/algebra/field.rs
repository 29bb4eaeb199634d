use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_PRIME: u32 = 32003;

/// Arithmetic modulo an odd prime `p < 2^31`. Elements are plain `u32`
/// values in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(3..1 << 31).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p: p as u32 })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u32 {
        (x % u64::from(self.p)) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % u64::from(self.p)) as u32
    }

    /// `a - b * c`
    #[inline]
    pub fn sub_mul(self, a: u32, b: u32, c: u32) -> u32 {
        self.sub(a, self.mul(b, c))
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        self.pow(a, u64::from(self.p) - 2)
    }

    /// Maps a signed integer into the field.
    pub fn from_i64(self, x: i64) -> u32 {
        x.rem_euclid(i64::from(self.p)) as u32
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        Self::new(u64::from(p))
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}
