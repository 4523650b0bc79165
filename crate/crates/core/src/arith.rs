//! Coefficient arithmetic shared by every layer of the nested field tower.
//!
//! Element types carry no context, so operations go through a context object
//! implementing [`Arith`]. Polynomial algorithms (division, extended gcd,
//! resultants) are generic over that trait and get reused for Q[T], the
//! cyclotomic layer, rational functions in u, the s-layer, residue fields,
//! and polynomials over K and L.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Field operations on elements of type `T`, dispatched through a context.
pub trait Arith<T: Clone> {
    fn zero(&self) -> T;
    fn one(&self) -> T;
    fn is_zero(&self, a: &T) -> bool;
    fn add(&self, a: &T, b: &T) -> T;
    fn sub(&self, a: &T, b: &T) -> T;
    fn mul(&self, a: &T, b: &T) -> T;
    fn neg(&self, a: &T) -> T;
    fn inv(&self, a: &T) -> Result<T>;

    fn div(&self, a: &T, b: &T) -> Result<T> {
        Ok(self.mul(a, &self.inv(b)?))
    }
    fn eq(&self, a: &T, b: &T) -> bool {
        self.is_zero(&self.sub(a, b))
    }
}

/// The rationals.
#[derive(Clone, Copy, Debug)]
pub struct Rationals;

impl Arith<BigRational> for Rationals {
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
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }
}

/// Dense polynomial: coefficients in ascending degree, no trailing zeros.
pub type Poly<T> = Vec<T>;

pub fn poly_trim<T: Clone, A: Arith<T>>(ctx: &A, mut f: Poly<T>) -> Poly<T> {
    while let Some(last) = f.last() {
        if ctx.is_zero(last) {
            f.pop();
        } else {
            break;
        }
    }
    f
}

pub fn poly_zero<T: Clone>() -> Poly<T> {
    Vec::new()
}

pub fn poly_const<T: Clone, A: Arith<T>>(ctx: &A, c: T) -> Poly<T> {
    if ctx.is_zero(&c) {
        Vec::new()
    } else {
        vec![c]
    }
}

pub fn poly_is_zero<T: Clone>(f: &Poly<T>) -> bool {
    f.is_empty()
}

pub fn poly_deg<T: Clone>(f: &Poly<T>) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

pub fn poly_add<T: Clone, A: Arith<T>>(ctx: &A, f: &Poly<T>, g: &Poly<T>) -> Poly<T> {
    let n = f.len().max(g.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = f.get(i).cloned().unwrap_or_else(|| ctx.zero());
        let b = g.get(i).cloned().unwrap_or_else(|| ctx.zero());
        out.push(ctx.add(&a, &b));
    }
    poly_trim(ctx, out)
}

pub fn poly_sub<T: Clone, A: Arith<T>>(ctx: &A, f: &Poly<T>, g: &Poly<T>) -> Poly<T> {
    poly_add(ctx, f, &poly_neg(ctx, g))
}

pub fn poly_neg<T: Clone, A: Arith<T>>(ctx: &A, f: &Poly<T>) -> Poly<T> {
    f.iter().map(|c| ctx.neg(c)).collect()
}

pub fn poly_mul<T: Clone, A: Arith<T>>(ctx: &A, f: &Poly<T>, g: &Poly<T>) -> Poly<T> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ctx.zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if ctx.is_zero(a) {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            out[i + j] = ctx.add(&out[i + j], &ctx.mul(a, b));
        }
    }
    poly_trim(ctx, out)
}

pub fn poly_scale<T: Clone, A: Arith<T>>(ctx: &A, f: &Poly<T>, c: &T) -> Poly<T> {
    poly_trim(ctx, f.iter().map(|a| ctx.mul(a, c)).collect())
}

/// Euclidean division over a field: f = q*g + r with deg r < deg g.
pub fn poly_divmod<T: Clone, A: Arith<T>>(
    ctx: &A,
    f: &Poly<T>,
    g: &Poly<T>,
) -> Result<(Poly<T>, Poly<T>)> {
    if g.is_empty() {
        return Err(Error::DivisionByZero);
    }
    let lc_inv = ctx.inv(g.last().unwrap())?;
    let dg = g.len() - 1;
    let mut rem = f.clone();
    if rem.len() < g.len() {
        return Ok((Vec::new(), rem));
    }
    let mut quot = vec![ctx.zero(); rem.len() - dg];
    while rem.len() >= g.len() && !rem.is_empty() {
        let k = rem.len() - 1 - dg;
        let c = ctx.mul(rem.last().unwrap(), &lc_inv);
        quot[k] = c.clone();
        for (i, gi) in g.iter().enumerate() {
            let t = ctx.mul(gi, &c);
            rem[k + i] = ctx.sub(&rem[k + i], &t);
        }
        rem = poly_trim(ctx, rem);
    }
    Ok((poly_trim(ctx, quot), rem))
}

pub fn poly_rem<T: Clone, A: Arith<T>>(ctx: &A, f: &Poly<T>, g: &Poly<T>) -> Result<Poly<T>> {
    Ok(poly_divmod(ctx, f, g)?.1)
}

/// Monic gcd.
pub fn poly_gcd<T: Clone, A: Arith<T>>(ctx: &A, f: &Poly<T>, g: &Poly<T>) -> Result<Poly<T>> {
    let mut a = f.clone();
    let mut b = g.clone();
    while !b.is_empty() {
        let r = poly_rem(ctx, &a, &b)?;
        a = b;
        b = r;
    }
    if a.is_empty() {
        return Ok(a);
    }
    let lc_inv = ctx.inv(a.last().unwrap())?;
    Ok(poly_scale(ctx, &a, &lc_inv))
}

/// Extended gcd: returns (g, x, y) with x*f + y*g0 = g, g monic (or zero).
pub fn poly_extended_gcd<T: Clone, A: Arith<T>>(
    ctx: &A,
    f: &Poly<T>,
    g0: &Poly<T>,
) -> Result<(Poly<T>, Poly<T>, Poly<T>)> {
    let mut r0 = f.clone();
    let mut r1 = g0.clone();
    let mut s0 = poly_const(ctx, ctx.one());
    let mut s1 = poly_zero();
    let mut t0 = poly_zero();
    let mut t1 = poly_const(ctx, ctx.one());
    while !r1.is_empty() {
        let (q, r) = poly_divmod(ctx, &r0, &r1)?;
        let s = poly_sub(ctx, &s0, &poly_mul(ctx, &q, &s1));
        let t = poly_sub(ctx, &t0, &poly_mul(ctx, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.is_empty() {
        return Ok((r0, s0, t0));
    }
    let lc_inv = ctx.inv(r0.last().unwrap())?;
    Ok((
        poly_scale(ctx, &r0, &lc_inv),
        poly_scale(ctx, &s0, &lc_inv),
        poly_scale(ctx, &t0, &lc_inv),
    ))
}

/// Resultant of f and g via the Euclidean remainder sequence. With f monic
/// this equals the product of g over the roots of f.
pub fn poly_resultant<T: Clone, A: Arith<T>>(ctx: &A, f: &Poly<T>, g: &Poly<T>) -> Result<T> {
    fn pow<T: Clone, A: Arith<T>>(ctx: &A, base: &T, mut e: usize) -> T {
        let mut acc = ctx.one();
        let mut b = base.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = ctx.mul(&acc, &b);
            }
            b = ctx.mul(&b, &b);
            e >>= 1;
        }
        acc
    }
    let mut a = f.clone();
    let mut b = g.clone();
    let mut acc = ctx.one();
    loop {
        if b.is_empty() {
            return Ok(if a.len() <= 1 { acc } else { ctx.zero() });
        }
        if b.len() == 1 {
            // res(a, c) = c^{deg a}
            let da = a.len().saturating_sub(1);
            return Ok(ctx.mul(&acc, &pow(ctx, &b[0], da)));
        }
        if a.len() < b.len() {
            let da = a.len().saturating_sub(1);
            let db = b.len() - 1;
            if (da * db) % 2 == 1 {
                acc = ctx.neg(&acc);
            }
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        // res(a, b) = (-1)^(da*db) * lc(b)^(da - dr) * res(b, r) with r = a mod b
        let da = a.len() - 1;
        let db = b.len() - 1;
        let r = poly_rem(ctx, &a, &b)?;
        if r.is_empty() {
            return Ok(ctx.zero());
        }
        let dr = r.len() - 1;
        acc = ctx.mul(&acc, &pow(ctx, b.last().unwrap(), da - dr));
        if (da * db) % 2 == 1 {
            acc = ctx.neg(&acc);
        }
        a = b;
        b = r;
    }
}

pub fn poly_derivative<T: Clone, A: Arith<T>>(ctx: &A, f: &Poly<T>) -> Poly<T> {
    if f.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(f.len() - 1);
    for (i, c) in f.iter().enumerate().skip(1) {
        let mut k = ctx.zero();
        for _ in 0..i {
            k = ctx.add(&k, &ctx.one());
        }
        out.push(ctx.mul(c, &k));
    }
    poly_trim(ctx, out)
}

pub fn poly_eval<T: Clone, A: Arith<T>>(ctx: &A, f: &Poly<T>, x: &T) -> T {
    let mut acc = ctx.zero();
    for c in f.iter().rev() {
        acc = ctx.add(&ctx.mul(&acc, x), c);
    }
    acc
}

/// p-adic valuation of a nonzero rational; None for zero.
pub fn padic_val(q: &BigRational, p: u32) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let count = |mut n: BigInt| -> i64 {
        let mut c = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            c += 1;
        }
        c
    };
    Some(count(q.numer().clone()) - count(q.denom().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn qp(cs: &[i64]) -> Poly<BigRational> {
        poly_trim(&Rationals, cs.iter().map(|&c| q(c, 1)).collect())
    }

    #[test]
    fn divmod_roundtrip() {
        let f = qp(&[2, 0, 1, 3]); // 3x^3 + x^2 + 2
        let g = qp(&[1, 1]); // x + 1
        let (quo, rem) = poly_divmod(&Rationals, &f, &g).unwrap();
        let back = poly_add(&Rationals, &poly_mul(&Rationals, &quo, &g), &rem);
        assert_eq!(back, f);
    }

    #[test]
    fn extended_gcd_bezout() {
        let f = qp(&[-1, 0, 1]); // x^2 - 1
        let g = qp(&[1, 1]); // x + 1
        let (d, x, y) = poly_extended_gcd(&Rationals, &f, &g).unwrap();
        assert_eq!(d, qp(&[1, 1]));
        let lhs = poly_add(
            &Rationals,
            &poly_mul(&Rationals, &x, &f),
            &poly_mul(&Rationals, &y, &g),
        );
        assert_eq!(lhs, d);
    }

    #[test]
    fn resultant_of_monic_is_product_over_roots() {
        // f = (x-1)(x-2) = x^2 - 3x + 2, g = x - 5 -> res = g(1)*g(2) = (-4)(-3) = 12
        let f = qp(&[2, -3, 1]);
        let g = qp(&[-5, 1]);
        assert_eq!(poly_resultant(&Rationals, &f, &g).unwrap(), q(12, 1));
        // res(f, c) = c^2
        assert_eq!(poly_resultant(&Rationals, &f, &qp(&[7])).unwrap(), q(49, 1));
        // shared root -> 0
        assert_eq!(poly_resultant(&Rationals, &f, &qp(&[-1, 1])).unwrap(), q(0, 1));
    }

    #[test]
    fn padic_values() {
        assert_eq!(padic_val(&q(12, 1), 2), Some(2));
        assert_eq!(padic_val(&q(1, 18), 3), Some(-2));
        assert_eq!(padic_val(&q(0, 1), 5), None);
    }
}
