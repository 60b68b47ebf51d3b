//! Coefficient fields for the oracle: F_p and ℚ.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait Field: Sync + Send {
    type E: Clone + PartialEq + Debug + Send + Sync;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn from_bigint(&self, b: &BigInt) -> Self::E;
    /// An integer vector spanning the same line as `v`.
    fn integerize(&self, v: &[Self::E]) -> Vec<BigInt>;
}

/// The prime field F_p.
#[derive(Debug, Clone, Copy)]
pub struct Fp(pub u64);

impl Fp {
    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * a % self.0;
            }
            a = a * a % self.0;
            e >>= 1;
        }
        acc
    }
}

impl Field for Fp {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a) % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.0 - 2)
    }
    fn from_bigint(&self, b: &BigInt) -> u64 {
        b.mod_floor(&BigInt::from(self.0)).to_u64().unwrap()
    }
    fn integerize(&self, v: &[u64]) -> Vec<BigInt> {
        v.iter().map(|&a| BigInt::from(a)).collect()
    }
}

/// The rationals.
#[derive(Debug, Clone, Copy)]
pub struct Qf;

impl Field for Qf {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
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
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn from_bigint(&self, b: &BigInt) -> BigRational {
        BigRational::from_integer(b.clone())
    }
    fn integerize(&self, v: &[BigRational]) -> Vec<BigInt> {
        let den = v
            .iter()
            .fold(BigInt::one(), |l, a| l.lcm(a.denom()));
        let ints: Vec<BigInt> = v.iter().map(|a| a.numer() * (&den / a.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, a| g.gcd(a));
        if g.is_zero() {
            return ints;
        }
        let lead_neg = ints.iter().find(|a| !a.is_zero()).is_some_and(|a| a.is_negative());
        let g = if lead_neg { -g } else { g };
        ints.into_iter().map(|a| a / &g).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse() {
        let f = Fp(7);
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert_eq!(f.from_bigint(&BigInt::from(-1)), 6);
    }

    #[test]
    fn q_integerize() {
        let q = Qf;
        let v = vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new((-1).into(), 3.into()),
        ];
        assert_eq!(q.integerize(&v), vec![BigInt::from(3), BigInt::from(-2)]);
    }
}
