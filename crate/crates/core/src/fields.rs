//! The configurable base field K = Q(zeta_p)[u?][s]/(s^(p^n) - p): a global
//! model whose henselization is the field the invariants refer to.
//!
//! Elements are s-polynomials of degree < p^n with rational-function
//! coefficients over the cyclotomic layer. Three facts keep everything exact:
//! v(z) = 1/(p-1), v(s) = 1/p^n, and the candidate values in the s-layer
//! minimum are pairwise distinct because gcd(p-1, p^n) = 1.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{poly_extended_gcd, Arith, Poly};
use crate::cyclotomic::CycElem;
use crate::error::{Error, Result};
use crate::ratfunc::{RatCtx, RatFunc};
use crate::residue::{ResCtx, ResElem};
use crate::value::{Value, ValueGroup};

/// Backend description: prime p, optional transcendental u, tower level n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FieldDesc {
    pub p: u32,
    pub with_u: bool,
    pub tower_level: u32,
}

/// Element of K: coefficients of 1, s, ..., s^(p^n - 1).
#[derive(Clone, Debug, PartialEq)]
pub struct FieldElem {
    pub coeffs: Vec<RatFunc>,
}

/// Field handle exposing constants and exact operations.
#[derive(Clone, Debug)]
pub struct Field {
    pub desc: FieldDesc,
    pub rat: RatCtx,
    pub res: ResCtx,
    pub group: ValueGroup,
    s_deg: usize,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn make_field(desc: FieldDesc) -> Result<Field> {
    if !is_prime(desc.p) {
        return Err(Error::NotPrime(desc.p));
    }
    let s_deg = (desc.p as usize).pow(desc.tower_level);
    Ok(Field {
        desc,
        rat: RatCtx::new(desc.p, desc.with_u),
        res: ResCtx::new(desc.p, desc.with_u),
        group: ValueGroup::for_backend(desc.p, desc.tower_level),
        s_deg,
    })
}

impl Field {
    pub fn p(&self) -> u32 {
        self.desc.p
    }

    fn wrap(&self, c0: RatFunc) -> FieldElem {
        let mut coeffs = vec![self.rat.zero(); self.s_deg];
        coeffs[0] = c0;
        FieldElem { coeffs }
    }

    pub fn zero(&self) -> FieldElem {
        self.wrap(self.rat.zero())
    }

    pub fn one(&self) -> FieldElem {
        self.wrap(self.rat.one())
    }

    pub fn from_int(&self, n: i64) -> FieldElem {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(&self, q: BigRational) -> FieldElem {
        self.wrap(self.rat.from_cyc(self.rat.cyc.from_rational(q)))
    }

    pub fn p_elem(&self) -> FieldElem {
        self.from_int(self.desc.p as i64)
    }

    pub fn z(&self) -> FieldElem {
        self.wrap(self.rat.from_cyc(self.rat.cyc.z()))
    }

    pub fn zeta(&self) -> FieldElem {
        self.wrap(self.rat.from_cyc(self.rat.cyc.zeta()))
    }

    pub fn u(&self) -> Result<FieldElem> {
        if !self.desc.with_u {
            return Err(Error::UnknownSymbol('u'));
        }
        Ok(self.wrap(self.rat.u()))
    }

    pub fn s(&self) -> Result<FieldElem> {
        if self.desc.tower_level == 0 {
            return Err(Error::UnknownSymbol('s'));
        }
        let mut coeffs = vec![self.rat.zero(); self.s_deg];
        coeffs[1] = self.rat.one();
        Ok(FieldElem { coeffs })
    }

    pub fn is_zero(&self, x: &FieldElem) -> bool {
        x.coeffs.iter().all(|c| self.rat.is_zero(c))
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| self.rat.add(x, y))
                .collect(),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| self.rat.sub(x, y))
                .collect(),
        }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        FieldElem {
            coeffs: a.coeffs.iter().map(|x| self.rat.neg(x)).collect(),
        }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let n = self.s_deg;
        let mut acc = vec![self.rat.zero(); 2 * n];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.rat.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let t = self.rat.mul(x, y);
                acc[i + j] = self.rat.add(&acc[i + j], &t);
            }
        }
        // fold s^(n + k) = p * s^k
        let p_rf = self.rat.from_cyc(self.rat.cyc.from_int(self.desc.p as i64));
        let mut coeffs = acc[..n].to_vec();
        for k in 0..n {
            let folded = self.rat.mul(&acc[n + k], &p_rf);
            coeffs[k] = self.rat.add(&coeffs[k], &folded);
        }
        FieldElem { coeffs }
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        if self.s_deg == 1 {
            return Ok(self.wrap(self.rat.inv(&a.coeffs[0])?));
        }
        // extended gcd with S^(p^n) - p over Q(zeta)(u)
        let mut modulus: Poly<RatFunc> = vec![self.rat.zero(); self.s_deg + 1];
        modulus[0] = self
            .rat
            .neg(&self.rat.from_cyc(self.rat.cyc.from_int(self.desc.p as i64)));
        modulus[self.s_deg] = self.rat.one();
        let apoly: Poly<RatFunc> = crate::arith::poly_trim(&self.rat, a.coeffs.clone());
        let (g, _, y) = poly_extended_gcd(&self.rat, &modulus, &apoly)?;
        if g.len() != 1 {
            return Err(Error::DivisionByZero);
        }
        let mut coeffs = y;
        coeffs.resize(self.s_deg, self.rat.zero());
        Ok(FieldElem { coeffs })
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElem, e: i64) -> Result<FieldElem> {
        let mut base = if e < 0 { self.inv(a)? } else { a.clone() };
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

    pub fn eq(&self, a: &FieldElem, b: &FieldElem) -> bool {
        a == b
    }

    /// v(sum_j b_j s^j) = min_j (v(b_j) + j/p^n); exact because the candidate
    /// values are pairwise distinct mod (1/(p-1))Z.
    pub fn valuation(&self, x: &FieldElem) -> Value {
        let pn = BigInt::from(self.s_deg);
        let mut best = Value::Infinity;
        for (j, c) in x.coeffs.iter().enumerate() {
            let vc = self.rat.valuation(c);
            if let Value::Finite(q) = vc {
                let cand = Value::Finite(q + BigRational::new(BigInt::from(j), pn.clone()));
                best = best.min_with(&cand);
            }
        }
        best
    }

    /// Image in the residue field; requires v(x) >= 0. The s-coefficients of
    /// positive index never contribute: their term values are nonzero.
    pub fn residue(&self, x: &FieldElem) -> Result<ResElem> {
        let v = self.valuation(x);
        if v < Value::zero() {
            return Err(Error::NegativeValuation);
        }
        if !v.is_finite() {
            return Ok(self.res.from_const(0));
        }
        self.residue_ratfunc(&x.coeffs[0])
    }

    fn residue_ratfunc(&self, b: &RatFunc) -> Result<ResElem> {
        if self.rat.is_zero(b) {
            return Ok(self.res.from_const(0));
        }
        let cyc = &self.rat.cyc;
        let vmin = |f: &Poly<CycElem>| {
            f.iter()
                .map(|c| cyc.valuation(c))
                .fold(Value::Infinity, |a, v| a.min_with(&v))
        };
        let vd = vmin(&b.den);
        // scale num and den by z^(-m) so the denominator becomes a Gauss unit
        let m = (vd.finite() * BigRational::from_integer(BigInt::from(self.desc.p - 1)))
            .to_integer();
        let m = i64::try_from(m).map_err(|_| Error::MalformedValue(vd.to_string()))?;
        let zm_inv = cyc.pow(&cyc.z(), -m)?;
        let reduce_poly = |f: &Poly<CycElem>| -> Result<Poly<u64>> {
            f.iter()
                .map(|c| cyc.residue(&cyc.mul(c, &zm_inv)))
                .collect()
        };
        let num = reduce_poly(&b.num)?;
        let den = reduce_poly(&b.den)?;
        self.res.from_parts(num, den)
    }

    /// Canonical lift of a residue element: coefficients lift to {0..p-1},
    /// u maps to u.
    pub fn lift(&self, r: &ResElem) -> FieldElem {
        let lift_poly = |f: &Poly<u64>| -> Poly<CycElem> {
            f.iter()
                .map(|&c| self.rat.cyc.from_int(c as i64))
                .collect()
        };
        let num = RatFunc {
            num: lift_poly(&r.num),
            den: vec![self.rat.cyc.one()],
        };
        let den = RatFunc {
            num: lift_poly(&r.den),
            den: vec![self.rat.cyc.one()],
        };
        let out = self
            .rat
            .mul(&num, &self.rat.inv(&den).expect("den nonzero"));
        self.wrap(out)
    }

    /// Canonical monomial z^a s^b of a given lattice value: b is the unique
    /// representative in [0, p^n) and a is then forced.
    pub fn monomial(&self, gamma: &Value) -> Result<FieldElem> {
        let m = self
            .group
            .lattice_index(gamma)
            .ok_or_else(|| Error::MalformedValue(gamma.to_string()))?;
        let pn = BigInt::from(self.s_deg);
        let pm1 = BigInt::from(self.desc.p - 1);
        let b = if self.s_deg == 1 {
            BigInt::zero()
        } else {
            // b = m * (p-1)^(-1) mod p^n
            let inv = mod_inv_big(&pm1, &pn);
            ((m.clone() % &pn + &pn) * inv % &pn + &pn) % &pn
        };
        let e = (m - &b * &pm1) / &pn;
        let e = i64::try_from(e).map_err(|_| Error::MalformedValue(gamma.to_string()))?;
        let b = i64::try_from(b).expect("b < p^n");
        let mut out = self.pow(&self.z(), e)?;
        if b > 0 {
            out = self.mul(&out, &self.pow(&self.s()?, b)?);
        }
        Ok(out)
    }

    /// Pretty expression string; re-parses to the same element.
    pub fn render(&self, x: &FieldElem) -> String {
        if self.is_zero(x) {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (j, c) in x.coeffs.iter().enumerate() {
            if self.rat.is_zero(c) {
                continue;
            }
            let base = self.render_ratfunc(c);
            let part = match j {
                0 => base,
                1 => format!("{}*s", paren_if_composite(&base)),
                _ => format!("{}*s^{}", paren_if_composite(&base), j),
            };
            parts.push(part);
        }
        parts.join(" + ")
    }

    fn render_ratfunc(&self, c: &RatFunc) -> String {
        let num = self.render_upoly(&c.num);
        if c.den == vec![self.rat.cyc.one()] {
            num
        } else {
            format!(
                "{}/{}",
                paren_if_composite(&num),
                paren_always(&self.render_upoly(&c.den))
            )
        }
    }

    fn render_upoly(&self, f: &Poly<CycElem>) -> String {
        if f.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in f.iter().enumerate() {
            if c.is_empty() {
                continue;
            }
            let base = render_cyc(c);
            let part = match k {
                0 => base,
                1 => format!("{}*u", paren_if_composite(&base)),
                _ => format!("{}*u^{}", paren_if_composite(&base), k),
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

fn mod_inv_big(a: &BigInt, m: &BigInt) -> BigInt {
    // extended euclid; gcd(a, m) = 1
    let (mut r0, mut r1) = (m.clone(), ((a % m) + m) % m);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    ((t0 % m) + m) % m
}

fn render_cyc(c: &CycElem) -> String {
    let mut parts = Vec::new();
    for (i, q) in c.iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        let qs = render_rational(q);
        let part = match i {
            0 => qs,
            1 => format!("{}*z", qs),
            _ => format!("{}*z^{}", qs, i),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn render_rational(q: &BigRational) -> String {
    if q.is_integer() {
        let n = q.to_integer();
        if n.is_negative() {
            format!("(0 - {})", -n)
        } else {
            format!("{}", n)
        }
    } else if q.is_negative() {
        format!("(0 - {}/{})", -q.numer(), q.denom())
    } else {
        format!("({}/{})", q.numer(), q.denom())
    }
}

fn paren_if_composite(s: &str) -> String {
    if s.contains(' ') || s.contains('/') || s.contains('*') {
        format!("({})", s)
    } else {
        s.to_string()
    }
}

fn paren_always(s: &str) -> String {
    format!("({})", s)
}

/// Decides c in k^p; returns the root when true. Errors on c = 0.
pub fn is_pth_power_residue(field: &Field, c: &ResElem) -> Result<(bool, Option<ResElem>)> {
    let root = field.res.pth_root(c)?;
    Ok((root.is_some(), root))
}

/// Decides c in {x^p - x | x in k}; returns a root when solvable.
pub fn artin_schreier_solvable(field: &Field, c: &ResElem) -> (bool, Option<ResElem>) {
    let root = field.res.artin_schreier_root(c);
    (root.is_some(), root)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32, with_u: bool, n: u32) -> Field {
        make_field(FieldDesc {
            p,
            with_u,
            tower_level: n,
        })
        .unwrap()
    }

    #[test]
    fn backend_constants() {
        let k3 = f(3, false, 0);
        assert_eq!(k3.group.denominator_lattice, 2);
        let k2 = f(2, false, 0);
        assert_eq!(k2.zeta(), k2.from_int(-1));
        assert_eq!(k2.z(), k2.from_int(-2));
        assert_eq!(k2.group.denominator_lattice, 1);
        let k31 = f(3, true, 1);
        assert_eq!(k31.group.denominator_lattice, 6);
        assert!(make_field(FieldDesc { p: 4, with_u: false, tower_level: 0 }).is_err());
    }

    #[test]
    fn valuation_examples() {
        let k3 = f(3, false, 0);
        assert_eq!(k3.valuation(&k3.z()), Value::from_ratio(1, 2));
        let k2 = f(2, false, 0);
        assert_eq!(k2.valuation(&k2.from_int(2)), Value::from_ratio(1, 1));
        // 3 + s over (p=3, n=1): min(1, 1/3) = 1/3
        let k31 = f(3, false, 1);
        let x = k31.add(&k31.from_int(3), &k31.s().unwrap());
        assert_eq!(k31.valuation(&x), Value::from_ratio(1, 3));
        assert_eq!(k31.valuation(&k31.s().unwrap()), Value::from_ratio(1, 3));
    }

    #[test]
    fn s_tower_relation() {
        let k = f(3, false, 1);
        let s = k.s().unwrap();
        let s3 = k.mul(&k.mul(&s, &s), &s);
        assert_eq!(s3, k.from_int(3));
        let inv_s = k.inv(&s).unwrap();
        assert_eq!(k.mul(&s, &inv_s), k.one());
    }

    #[test]
    fn residue_examples() {
        let k3 = f(3, false, 0);
        assert!(k3.res.is_one(&k3.residue(&k3.zeta()).unwrap()));
        let one_plus_z = k3.add(&k3.one(), &k3.z());
        assert!(k3.res.is_one(&k3.residue(&one_plus_z).unwrap()));
        // u/(1+u) stays itself
        let ku = f(3, true, 0);
        let u = ku.u().unwrap();
        let x = ku.div(&u, &ku.add(&ku.one(), &u)).unwrap();
        let r = ku.residue(&x).unwrap();
        assert_eq!(r, ku.res.from_parts(vec![0, 1], vec![1, 1]).unwrap());
        // negative valuation errors
        assert!(k3.residue(&k3.inv(&k3.z()).unwrap()).is_err());
    }

    #[test]
    fn monomial_is_canonical() {
        let k = f(3, true, 1);
        // value 1/3 at D = 6: m = 2, b = 1, e = 0 -> s
        let m = k.monomial(&Value::from_ratio(1, 3)).unwrap();
        assert_eq!(m, k.s().unwrap());
        // value 1/6: m = 1, b = 2, e = -1 -> s^2/z
        let m2 = k.monomial(&Value::from_ratio(1, 6)).unwrap();
        let expected = k
            .div(&k.pow(&k.s().unwrap(), 2).unwrap(), &k.z())
            .unwrap();
        assert_eq!(m2, expected);
        assert_eq!(k.valuation(&m2), Value::from_ratio(1, 6));
        // plain backend: value p/(p-1) is z^p
        let k3 = f(3, false, 0);
        let zp = k3.monomial(&Value::from_ratio(3, 2)).unwrap();
        assert_eq!(zp, k3.pow(&k3.z(), 3).unwrap());
    }

    #[test]
    fn lift_of_residue_reduces_back() {
        let k = f(3, true, 0);
        let r = k.res.from_parts(vec![2, 1], vec![1, 0, 1]).unwrap();
        let lifted = k.lift(&r);
        assert_eq!(k.residue(&lifted).unwrap(), r);
    }

    #[test]
    fn render_roundtrip() {
        let k = f(3, true, 1);
        let u = k.u().unwrap();
        let s = k.s().unwrap();
        let x = k.add(
            &k.div(&k.z(), &k.add(&k.one(), &u)).unwrap(),
            &k.mul(&k.from_rational(BigRational::new(BigInt::from(-3), BigInt::from(2))), &s),
        );
        let src = k.render(&x);
        let back = crate::expr::eval_expr(&k, &src).unwrap();
        assert_eq!(back, x);
    }
}
