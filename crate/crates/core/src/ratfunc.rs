//! Rational functions in u over Q(zeta_p), with the Gauss valuation.
//!
//! Canonical form: numerator and denominator reduced by their gcd and the
//! denominator monic. When u is not adjoined both stay constant.

use crate::arith::{
    poly_add, poly_divmod, poly_gcd, poly_mul, poly_scale, poly_sub, poly_trim, Arith, Poly,
};
use crate::cyclotomic::{CycCtx, CycElem};
use crate::error::{Error, Result};
use crate::value::Value;

/// num/den with CycElem coefficients; canonical.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc {
    pub num: Poly<CycElem>,
    pub den: Poly<CycElem>,
}

/// Context for Q(zeta_p)(u) arithmetic.
#[derive(Clone, Debug)]
pub struct RatCtx {
    pub cyc: CycCtx,
    pub with_u: bool,
}

impl RatCtx {
    pub fn new(p: u32, with_u: bool) -> Self {
        RatCtx {
            cyc: CycCtx::new(p),
            with_u,
        }
    }

    pub fn from_cyc(&self, c: CycElem) -> RatFunc {
        RatFunc {
            num: if c.is_empty() { Vec::new() } else { vec![c] },
            den: vec![self.cyc.one()],
        }
    }

    pub fn u(&self) -> RatFunc {
        RatFunc {
            num: vec![self.cyc.zero(), self.cyc.one()],
            den: vec![self.cyc.one()],
        }
    }

    pub fn normalize(&self, num: Poly<CycElem>, den: Poly<CycElem>) -> Result<RatFunc> {
        let num = poly_trim(&self.cyc, num);
        let den = poly_trim(&self.cyc, den);
        if den.is_empty() {
            return Err(Error::DivisionByZero);
        }
        if num.is_empty() {
            return Ok(RatFunc {
                num,
                den: vec![self.cyc.one()],
            });
        }
        let g = poly_gcd(&self.cyc, &num, &den)?;
        let (num, _) = poly_divmod(&self.cyc, &num, &g)?;
        let (den, _) = poly_divmod(&self.cyc, &den, &g)?;
        let lc_inv = self.cyc.inv(den.last().unwrap())?;
        Ok(RatFunc {
            num: poly_scale(&self.cyc, &num, &lc_inv),
            den: poly_scale(&self.cyc, &den, &lc_inv),
        })
    }

    /// Gauss valuation: min over numerator coefficients minus min over
    /// denominator coefficients. Multiplicative by definition.
    pub fn valuation(&self, x: &RatFunc) -> Value {
        let vmin = |f: &Poly<CycElem>| {
            f.iter()
                .map(|c| self.cyc.valuation(c))
                .fold(Value::Infinity, |a, b| a.min_with(&b))
        };
        match vmin(&x.num) {
            Value::Infinity => Value::Infinity,
            vn => vn.sub(&vmin(&x.den)).expect("den nonzero"),
        }
    }
}

impl Arith<RatFunc> for RatCtx {
    fn zero(&self) -> RatFunc {
        RatFunc {
            num: Vec::new(),
            den: vec![self.cyc.one()],
        }
    }
    fn one(&self) -> RatFunc {
        RatFunc {
            num: vec![self.cyc.one()],
            den: vec![self.cyc.one()],
        }
    }
    fn is_zero(&self, a: &RatFunc) -> bool {
        a.num.is_empty()
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let num = poly_add(
            &self.cyc,
            &poly_mul(&self.cyc, &a.num, &b.den),
            &poly_mul(&self.cyc, &b.num, &a.den),
        );
        self.normalize(num, poly_mul(&self.cyc, &a.den, &b.den))
            .expect("nonzero denominators")
    }
    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let num = poly_sub(
            &self.cyc,
            &poly_mul(&self.cyc, &a.num, &b.den),
            &poly_mul(&self.cyc, &b.num, &a.den),
        );
        self.normalize(num, poly_mul(&self.cyc, &a.den, &b.den))
            .expect("nonzero denominators")
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        self.normalize(
            poly_mul(&self.cyc, &a.num, &b.num),
            poly_mul(&self.cyc, &a.den, &b.den),
        )
        .expect("nonzero denominators")
    }
    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc {
            num: crate::arith::poly_neg(&self.cyc, &a.num),
            den: a.den.clone(),
        }
    }
    fn inv(&self, a: &RatFunc) -> Result<RatFunc> {
        if a.num.is_empty() {
            return Err(Error::DivisionByZero);
        }
        self.normalize(a.den.clone(), a.num.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_valuation_is_multiplicative() {
        let ctx = RatCtx::new(3, true);
        // x = z*u/(1+u): v = 1/2
        let z = ctx.from_cyc(ctx.cyc.z());
        let u = ctx.u();
        let one_plus_u = ctx.add(&ctx.one(), &u);
        let x = ctx
            .mul(&ctx.mul(&z, &u), &ctx.inv(&one_plus_u).unwrap())
            .clone();
        assert_eq!(ctx.valuation(&x), Value::from_ratio(1, 2));
        let y = ctx.mul(&x, &x);
        assert_eq!(ctx.valuation(&y), Value::from_ratio(1, 1));
    }

    #[test]
    fn canonical_form_equality() {
        let ctx = RatCtx::new(3, true);
        let u = ctx.u();
        // (u^2 - 1)/(u - 1) == u + 1
        let u2m1 = ctx.sub(&ctx.mul(&u, &u), &ctx.one());
        let um1 = ctx.sub(&u, &ctx.one());
        let lhs = ctx.mul(&u2m1, &ctx.inv(&um1).unwrap());
        let rhs = ctx.add(&u, &ctx.one());
        assert_eq!(lhs, rhs);
    }
}
