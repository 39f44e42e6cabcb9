//! Exact arithmetic in Z[zeta_p], the cyclotomic integers for a prime p.
//!
//! Elements are integer vectors over the power basis 1, z, ..., z^{p-2},
//! reduced by z^{p-1} = -(1 + z + ... + z^{p-2}). The basis is free, so
//! equality and rationality tests are coordinate-wise. Character sums built
//! from these never round: a sum is an integer exactly when its tail
//! coordinates vanish.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct CycloInt {
    p: u64,
    coords: Vec<BigInt>, // length p-1, coefficients of 1, z, ..., z^{p-2}
}

impl CycloInt {
    pub fn zero(p: u64) -> CycloInt {
        assert!(p >= 2, "root order must be a prime >= 2");
        CycloInt {
            p,
            coords: vec![BigInt::zero(); (p - 1) as usize],
        }
    }

    pub fn from_int(p: u64, v: impl Into<BigInt>) -> CycloInt {
        let mut out = CycloInt::zero(p);
        out.coords[0] = v.into();
        out
    }

    /// z^e, exponent taken mod p.
    pub fn zeta_pow(p: u64, e: u64) -> CycloInt {
        let mut out = CycloInt::zero(p);
        out.add_zeta(e);
        out
    }

    pub fn order(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Adds z^e in place without allocating; the hot path of every
    /// brute-force character sum.
    pub fn add_zeta(&mut self, e: u64) {
        let e = (e % self.p) as usize;
        if e == (self.p - 1) as usize {
            for c in &mut self.coords {
                *c -= 1;
            }
        } else {
            self.coords[e] += 1;
        }
    }

    pub fn add_assign(&mut self, other: &CycloInt) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch);
        }
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a += b;
        }
        Ok(())
    }

    pub fn add(&self, other: &CycloInt) -> Result<CycloInt> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn neg(&self) -> CycloInt {
        CycloInt {
            p: self.p,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &CycloInt) -> Result<CycloInt> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CycloInt) -> Result<CycloInt> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch);
        }
        let n = (self.p - 1) as usize;
        let mut conv = vec![BigInt::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                conv[i + j] += a * b;
            }
        }
        let mut out = CycloInt::zero(self.p);
        for (k, c) in conv.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // exponents k in [0, 2p-4]: either a basis power, exactly p-1
            // (fold via the relation), or >= p (wraps since z^p = 1).
            if k < n {
                out.coords[k] += c;
            } else if k == n {
                for t in &mut out.coords {
                    *t -= &c;
                }
            } else {
                out.coords[k - self.p as usize] += c;
            }
        }
        Ok(out)
    }

    /// The rational part, if this element lies in Z.
    pub fn as_integer(&self) -> Result<BigInt> {
        if self.coords[1..].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotRational);
        }
        Ok(self.coords[0].clone())
    }

    pub fn as_i64(&self) -> Result<i64> {
        let v = self.as_integer()?;
        i64::try_from(v).map_err(|_| Error::Overflow("cyclotomic value exceeds i64".into()))
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }
}

impl fmt::Display for CycloInt {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    out.write_str("-")?;
                }
            } else if c.is_negative() {
                out.write_str("-")?;
            } else {
                out.write_str("+")?;
            }
            first = false;
            let a = c.abs();
            match e {
                0 => write!(out, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(out, "{a}*")?;
                    }
                    if e == 1 {
                        out.write_str("z")?;
                    } else {
                        write!(out, "z^{e}")?;
                    }
                }
            }
        }
        if first {
            out.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloInt {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_for_p2_is_minus_one() {
        let z = CycloInt::zeta_pow(2, 1);
        assert_eq!(z, CycloInt::from_int(2, -1));
        assert_eq!(z.mul(&z).unwrap(), CycloInt::from_int(2, 1));
        assert_eq!(CycloInt::zeta_pow(2, 2), CycloInt::from_int(2, 1));
    }

    #[test]
    fn geometric_sums_vanish() {
        for p in [2u64, 3, 5, 7, 11] {
            let mut acc = CycloInt::zero(p);
            for e in 0..p {
                acc.add_zeta(e);
            }
            assert!(acc.is_zero(), "sum of all p-th roots must vanish, p={p}");
        }
    }

    #[test]
    fn multiplication_respects_exponents() {
        for p in [3u64, 5, 7] {
            for a in 0..p {
                for b in 0..p {
                    let lhs = CycloInt::zeta_pow(p, a).mul(&CycloInt::zeta_pow(p, b)).unwrap();
                    assert_eq!(lhs, CycloInt::zeta_pow(p, (a + b) % p));
                }
            }
        }
    }

    #[test]
    fn ring_axioms_spot_check() {
        let p = 5;
        let x = CycloInt::zeta_pow(p, 1)
            .add(&CycloInt::from_int(p, 2))
            .unwrap();
        let y = CycloInt::zeta_pow(p, 3).sub(&CycloInt::from_int(p, 1)).unwrap();
        let z = CycloInt::zeta_pow(p, 4);
        let lhs = x.mul(&y).unwrap().mul(&z).unwrap();
        let rhs = x.mul(&y.mul(&z).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let dist = x.mul(&y.add(&z).unwrap()).unwrap();
        let expand = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
        assert_eq!(dist, expand);
    }

    #[test]
    fn rationality_detection() {
        let p = 7;
        let mut acc = CycloInt::zero(p);
        for e in 1..p {
            acc.add_zeta(e);
        }
        // sum over nontrivial roots = -1
        assert_eq!(acc.as_integer().unwrap(), BigInt::from(-1));
        assert_eq!(acc.as_i64().unwrap(), -1);
        let z = CycloInt::zeta_pow(p, 2);
        assert_eq!(z.as_integer(), Err(Error::NotRational));
    }

    #[test]
    fn mismatched_orders_error() {
        let a = CycloInt::zero(3);
        let b = CycloInt::zero(5);
        assert_eq!(a.add(&b), Err(Error::PrimeMismatch));
        assert_eq!(a.mul(&b), Err(Error::PrimeMismatch));
    }

    #[test]
    fn display_forms() {
        let p = 5;
        let v = CycloInt::zeta_pow(p, 1)
            .add(&CycloInt::zeta_pow(p, 1))
            .unwrap()
            .sub(&CycloInt::from_int(p, 3))
            .unwrap();
        assert_eq!(v.to_string(), "-3+2*z");
        assert_eq!(CycloInt::zero(p).to_string(), "0");
        assert_eq!(CycloInt::zeta_pow(p, 4).to_string(), "-1-z-z^2-z^3");
    }
}
