//! Arithmetic in the prime field `F_p`.
//!
//! The modulus stands in for the algebraically closed base field: all rank
//! computations are exact, and genericity is approximated by drawing
//! scalars uniformly from a large `F_p`.

use crate::{Error, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Default modulus, the Mersenne prime `2^31 - 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// A prime modulus for the working field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
}

impl FieldSpec {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Field {
                p,
                reason: "modulus must be prime".into(),
            });
        }
        Ok(FieldSpec { p })
    }

    pub fn default_prime() -> Self {
        FieldSpec { p: DEFAULT_PRIME }
    }

    /// The trace-form radical computation and the genericity heuristics need
    /// the modulus to exceed the module dimension.
    pub fn require_larger_than(&self, d: usize) -> Result<()> {
        if self.p <= d as u64 {
            return Err(Error::Field {
                p: self.p,
                reason: format!("modulus must exceed the dimension {d}"),
            });
        }
        Ok(())
    }

    #[inline]
    pub fn reduce(&self, x: i64) -> u64 {
        let p = self.p as i64;
        (((x % p) + p) % p) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "division by zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    /// Uniform field element.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    /// Uniform nonzero field element.
    pub fn sample_nonzero<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(1..self.p)
    }
}

/// Deterministic Miller-Rabin primality test, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        a %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    // These witnesses decide primality for every 64-bit integer.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
