//! The cyclotomic layer Q(zeta_p), stored in the z-basis where z = zeta - 1.
//!
//! The minimal polynomial of z over Q is Psi(T) = Phi_p(1 + T), which is
//! Eisenstein at p with Psi(T) = sum_j C(p, j+1) T^j. Elements are reduced
//! polynomials in z of degree < p-1. For p = 2 the layer degenerates to Q
//! with z = -2.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{
    padic_val, poly_const, poly_extended_gcd, poly_mul, poly_rem, poly_resultant, poly_trim, Arith,
    Poly, Rationals,
};
use crate::error::{Error, Result};
use crate::value::Value;

/// Element of Q(zeta_p) as a z-polynomial of degree < p-1.
pub type CycElem = Poly<BigRational>;

/// Context for arithmetic in Q(zeta_p) = Q[T]/(Psi_p).
#[derive(Clone, Debug)]
pub struct CycCtx {
    pub p: u32,
    psi: Poly<BigRational>,
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl CycCtx {
    pub fn new(p: u32) -> Self {
        // Psi(T) = ((1+T)^p - 1)/T; coefficient of T^j is C(p, j+1)
        let psi = (0..p)
            .map(|j| BigRational::from_integer(binomial(p, j + 1)))
            .collect();
        CycCtx { p, psi }
    }

    pub fn degree(&self) -> usize {
        (self.p - 1) as usize
    }

    pub fn from_rational(&self, q: BigRational) -> CycElem {
        poly_const(&Rationals, q)
    }

    pub fn from_int(&self, n: i64) -> CycElem {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// z itself (T mod Psi); for p = 2 this is the constant -2.
    pub fn z(&self) -> CycElem {
        self.reduce(vec![BigRational::zero(), BigRational::one()])
    }

    /// zeta = 1 + z.
    pub fn zeta(&self) -> CycElem {
        self.reduce(vec![BigRational::one(), BigRational::one()])
    }

    pub fn reduce(&self, f: Poly<BigRational>) -> CycElem {
        let f = poly_trim(&Rationals, f);
        if f.len() < self.psi.len() {
            return f;
        }
        poly_rem(&Rationals, &f, &self.psi).expect("psi is monic")
    }

    /// Norm to Q as a resultant with the minimal polynomial of z. Equals the
    /// product of the conjugates because Psi is monic.
    pub fn norm(&self, x: &CycElem) -> BigRational {
        if x.is_empty() {
            return BigRational::zero();
        }
        poly_resultant(&Rationals, &self.psi, x).expect("rational arithmetic")
    }

    /// v(x) = v_p(N(x)) / (p - 1), with v(p) = 1 and v(0) = infinity.
    pub fn valuation(&self, x: &CycElem) -> Value {
        let n = self.norm(x);
        match padic_val(&n, self.p) {
            None => Value::Infinity,
            Some(k) => Value::Finite(BigRational::new(
                BigInt::from(k),
                BigInt::from(self.p - 1),
            )),
        }
    }

    /// Gauss-style valuation from the z-basis: the candidate values
    /// v_p(a_i) + i/(p-1) are pairwise distinct, so the minimum is exact.
    /// Kept as an independent route; tests check it against `valuation`.
    pub fn valuation_by_terms(&self, x: &CycElem) -> Value {
        let mut best = Value::Infinity;
        for (i, c) in x.iter().enumerate() {
            if let Some(k) = padic_val(c, self.p) {
                let cand = Value::Finite(
                    BigRational::from_integer(BigInt::from(k))
                        + BigRational::new(BigInt::from(i), BigInt::from(self.p - 1)),
                );
                best = best.min_with(&cand);
            }
        }
        best
    }

    /// Image in F_p for x with v(x) >= 0: z maps to 0, so this is the
    /// constant coefficient mod p.
    pub fn residue(&self, x: &CycElem) -> Result<u64> {
        if self.valuation(x) < Value::zero() {
            return Err(Error::NegativeValuation);
        }
        let c = match x.first() {
            None => return Ok(0),
            Some(c) => c,
        };
        let p = BigInt::from(self.p);
        let num = c.numer().mod_floor_big(&p);
        let den = c.denom().mod_floor_big(&p);
        if den.is_zero() {
            // v(x) >= 0 forces every coefficient to be p-integral
            return Err(Error::NegativeValuation);
        }
        let num = num.to_u64_digits().1.first().copied().unwrap_or(0);
        let den = den.to_u64_digits().1.first().copied().unwrap_or(0);
        let den_inv = mod_inv(den, self.p as u64);
        Ok(num * den_inv % self.p as u64)
    }

    pub fn pow(&self, x: &CycElem, e: i64) -> Result<CycElem> {
        let mut base = if e < 0 { self.inv(x)? } else { x.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        Ok(acc)
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime, a nonzero mod p
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

trait ModFloor {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt;
}

impl ModFloor for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r < BigInt::zero() {
            r + m
        } else {
            r
        }
    }
}

impl Arith<CycElem> for CycCtx {
    fn zero(&self) -> CycElem {
        Vec::new()
    }
    fn one(&self) -> CycElem {
        vec![BigRational::one()]
    }
    fn is_zero(&self, a: &CycElem) -> bool {
        a.is_empty()
    }
    fn add(&self, a: &CycElem, b: &CycElem) -> CycElem {
        crate::arith::poly_add(&Rationals, a, b)
    }
    fn sub(&self, a: &CycElem, b: &CycElem) -> CycElem {
        crate::arith::poly_sub(&Rationals, a, b)
    }
    fn mul(&self, a: &CycElem, b: &CycElem) -> CycElem {
        self.reduce(poly_mul(&Rationals, a, b))
    }
    fn neg(&self, a: &CycElem) -> CycElem {
        crate::arith::poly_neg(&Rationals, a)
    }
    fn inv(&self, a: &CycElem) -> Result<CycElem> {
        if a.is_empty() {
            return Err(Error::DivisionByZero);
        }
        if self.p == 2 {
            return Ok(vec![a[0].recip()]);
        }
        let (g, _, y) = poly_extended_gcd(&Rationals, &self.psi, a)?;
        if g.len() != 1 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.reduce(y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_is_eisenstein() {
        let c = CycCtx::new(5);
        // Psi = T^4 + 5T^3 + 10T^2 + 10T + 5
        let got: Vec<i64> = c.psi.iter().map(|q| {
            assert!(q.is_integer());
            i64::try_from(q.to_integer()).unwrap()
        }).collect();
        assert_eq!(got, vec![5, 10, 10, 5, 1]);
    }

    #[test]
    fn p2_layer_is_rationals() {
        let c = CycCtx::new(2);
        assert_eq!(c.z(), c.from_int(-2));
        assert_eq!(c.zeta(), c.from_int(-1));
        assert_eq!(c.valuation(&c.from_int(2)), Value::from_ratio(1, 1));
    }

    #[test]
    fn z_has_value_one_over_p_minus_one() {
        for p in [3u32, 5, 7] {
            let c = CycCtx::new(p);
            assert_eq!(c.valuation(&c.z()), Value::from_ratio(1, (p - 1) as i64));
            assert_eq!(c.valuation(&c.from_int(p as i64)), Value::from_ratio(1, 1));
        }
    }

    #[test]
    fn z_squared_at_p3() {
        // z^2 = -3*zeta at p = 3, i.e. -3 - 3z in the z-basis
        let c = CycCtx::new(3);
        let z2 = c.mul(&c.z(), &c.z());
        assert_eq!(z2, vec![
            BigRational::from_integer(BigInt::from(-3)),
            BigRational::from_integer(BigInt::from(-3)),
        ]);
    }

    #[test]
    fn valuation_routes_agree() {
        let c = CycCtx::new(5);
        let mut x = c.z();
        for k in 0..12 {
            x = c.mul(&x, &c.add(&c.z(), &c.from_int(k % 3 + 1)));
            assert_eq!(c.valuation(&x), c.valuation_by_terms(&x));
        }
    }

    #[test]
    fn inverse_and_norm_multiplicativity() {
        let c = CycCtx::new(5);
        let x = c.add(&c.z(), &c.from_int(2));
        let xi = c.inv(&x).unwrap();
        assert!(c.eq(&c.mul(&x, &xi), &c.one()));
        let y = c.mul(&c.z(), &c.z());
        assert_eq!(c.norm(&c.mul(&x, &y)), c.norm(&x) * c.norm(&y));
    }

    #[test]
    fn residue_of_zeta_is_one() {
        let c = CycCtx::new(3);
        assert_eq!(c.residue(&c.zeta()).unwrap(), 1);
        assert_eq!(c.residue(&c.z()).unwrap(), 0);
        // z^2/3 = -zeta has residue -1 = 2 mod 3
        let z2 = c.mul(&c.z(), &c.z());
        let x = c.mul(&z2, &c.from_rational(BigRational::new(BigInt::one(), BigInt::from(3))));
        assert_eq!(c.residue(&x).unwrap(), 2);
    }
}
