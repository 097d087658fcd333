use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A field element, always stored reduced modulo the field's prime.
pub type Elem = u8;

/// The prime field GF(p) for a prime `2 <= p <= 97`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u8,
}

pub const MAX_PRIME: u32 = 97;

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::UnsupportedField(p));
        }
        Ok(Self { p: p as u8 })
    }

    pub fn gf2() -> Self {
        Self { p: 2 }
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p as u32
    }

    #[inline]
    pub fn reduce(self, x: i64) -> Elem {
        x.rem_euclid(self.p as i64) as Elem
    }

    #[inline]
    pub fn add(self, a: Elem, b: Elem) -> Elem {
        let s = a as u16 + b as u16;
        if s >= self.p as u16 {
            (s - self.p as u16) as Elem
        } else {
            s as Elem
        }
    }

    #[inline]
    pub fn sub(self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(self, a: Elem) -> Elem {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: Elem, b: Elem) -> Elem {
        ((a as u16 * b as u16) % self.p as u16) as Elem
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: Elem) -> Elem {
        debug_assert!(a != 0, "inverse of zero");
        // a^(p-2) by square-and-multiply
        let mut base = a;
        let mut exp = self.p - 2;
        let mut acc: Elem = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `dst += c * src`, entrywise.
    #[inline]
    pub fn axpy(self, dst: &mut [Elem], c: Elem, src: &[Elem]) {
        debug_assert_eq!(dst.len(), src.len());
        match (self.p, c) {
            (_, 0) => {}
            (2, _) => dst.iter_mut().zip(src).for_each(|(d, s)| *d ^= s),
            (_, 1) => dst.iter_mut().zip(src).for_each(|(d, s)| *d = self.add(*d, *s)),
            _ => dst
                .iter_mut()
                .zip(src)
                .for_each(|(d, s)| *d = ((*d as u16 + c as u16 * *s as u16) % self.p as u16) as Elem),
        }
    }

    /// Number of elements in a space of dimension `dim`, saturating at `u64::MAX`.
    pub fn count(self, dim: usize) -> u64 {
        (0..dim).fold(1u64, |acc, _| acc.saturating_mul(self.p as u64))
    }
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        Self::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p()
    }
}

impl std::fmt::Display for PrimeField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({})", self.p)
    }
}
