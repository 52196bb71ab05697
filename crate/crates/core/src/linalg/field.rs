//! Exact scalar fields: a prime field F_p and the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Default modulus for randomized testing.
pub const DEFAULT_PRIME: u32 = 32003;

/// An exact field. Elements are plain values; the field object carries any
/// runtime parameters (the modulus for F_p).
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + fmt::Display + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// A random element: uniform over F_p, small integers over Q.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// Short name used in reports, e.g. `F_32003` or `Q`.
    fn name(&self) -> String;

    /// Rank of a row-major `rows × cols` matrix. Plain Gaussian elimination
    /// on a copy; fields may override with a better-behaved algorithm.
    fn rank(&self, rows: usize, cols: usize, entries: &[Self::Elem]) -> usize {
        let mut a = entries.to_vec();
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !self.is_zero(&a[r * cols + c])) else {
                continue;
            };
            if p != rank {
                for k in 0..cols {
                    a.swap(p * cols + k, rank * cols + k);
                }
            }
            let inv = self.inv(&a[rank * cols + c]).expect("pivot is nonzero");
            for r in rank + 1..rows {
                if self.is_zero(&a[r * cols + c]) {
                    continue;
                }
                let f = self.mul(&a[r * cols + c], &inv);
                for k in c..cols {
                    let t = self.mul(&f, &a[rank * cols + k]);
                    a[r * cols + k] = self.sub(&a[r * cols + k], &t);
                }
            }
            rank += 1;
        }
        rank
    }
}

/// The prime field F_p with canonical representatives in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Accepts odd primes below 2^31 so that products fit in a `u64`.
    pub fn new(p: u32) -> Result<Self> {
        if !(3..1 << 31).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidPrime(u64::from(p)));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn pow(&self, b: u32, mut e: u32) -> u32 {
        let p = u64::from(self.p);
        let mut acc = 1u64;
        let mut b64 = u64::from(b);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b64 % p;
            }
            b64 = b64 * b64 % p;
            e >>= 1;
        }
        acc as u32
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(i64::from(self.p)) as u32
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (u64::from(*a) * u64::from(*b) % u64::from(self.p)) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }
    fn name(&self) -> String {
        format!("F_{}", self.p)
    }
}

/// The rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-3..=3))
    }
    fn name(&self) -> String {
        "Q".to_string()
    }

    /// Bareiss fraction-free elimination after clearing row denominators.
    fn rank(&self, rows: usize, cols: usize, entries: &[BigRational]) -> usize {
        let mut a: Vec<BigInt> = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let row = &entries[r * cols..(r + 1) * cols];
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            a.extend(row.iter().map(|x| x.numer() * (&l / x.denom())));
        }
        bareiss_rank(rows, cols, &mut a)
    }
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination. Every
/// division is exact, so intermediate entries stay bounded by minors.
pub fn bareiss_rank(rows: usize, cols: usize, a: &mut [BigInt]) -> usize {
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r * cols + c].is_zero()) else {
            continue;
        };
        if p != rank {
            for k in 0..cols {
                a.swap(p * cols + k, rank * cols + k);
            }
        }
        let piv = a[rank * cols + c].clone();
        for r in rank + 1..rows {
            let f = a[r * cols + c].clone();
            for k in c + 1..cols {
                let v = (&piv * &a[r * cols + k] - &f * &a[rank * cols + k]) / &prev;
                a[r * cols + k] = v;
            }
            a[r * cols + c] = BigInt::zero();
        }
        prev = piv;
        rank += 1;
    }
    rank
}
