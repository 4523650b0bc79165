//! Residue field arithmetic: F_p, or F_p(u) when the transcendental u is
//! adjoined with the Gauss valuation.
//!
//! Elements are rational functions in lowest terms with monic denominator;
//! the F_p backend is the degree-zero case of the same representation.

use crate::arith::{poly_add, poly_gcd, poly_mul, poly_scale, poly_sub, poly_trim, Arith, Poly};
use crate::error::{Error, Result};

/// Prime field context; elements are u64 values in [0, p).
#[derive(Clone, Copy, Debug)]
pub struct FpCtx {
    pub p: u64,
}

impl FpCtx {
    pub fn inv_u64(&self, a: u64) -> u64 {
        // Fermat; p prime and a nonzero mod p
        let mut result = 1u64;
        let mut base = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        result
    }
}

impl Arith<u64> for FpCtx {
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        a % self.p == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_u64(*a))
    }
}

/// Element of F_p(u): num/den in lowest terms, den monic. The F_p case is
/// deg num = deg den = 0, den = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResElem {
    pub num: Poly<u64>,
    pub den: Poly<u64>,
}

/// Residue field context.
#[derive(Clone, Copy, Debug)]
pub struct ResCtx {
    pub fp: FpCtx,
    pub with_u: bool,
}

impl ResCtx {
    pub fn new(p: u32, with_u: bool) -> Self {
        ResCtx {
            fp: FpCtx { p: p as u64 },
            with_u,
        }
    }

    pub fn from_parts(&self, num: Poly<u64>, den: Poly<u64>) -> Result<ResElem> {
        let num = poly_trim(&self.fp, num);
        let den = poly_trim(&self.fp, den);
        if den.is_empty() {
            return Err(Error::DivisionByZero);
        }
        if num.is_empty() {
            return Ok(ResElem { num, den: vec![1] });
        }
        let g = poly_gcd(&self.fp, &num, &den)?;
        let (num, _) = crate::arith::poly_divmod(&self.fp, &num, &g)?;
        let (den, _) = crate::arith::poly_divmod(&self.fp, &den, &g)?;
        let lc_inv = self.fp.inv_u64(*den.last().unwrap());
        Ok(ResElem {
            num: poly_scale(&self.fp, &num, &lc_inv),
            den: poly_scale(&self.fp, &den, &lc_inv),
        })
    }

    pub fn from_const(&self, c: u64) -> ResElem {
        ResElem {
            num: poly_trim(&self.fp, vec![c % self.fp.p]),
            den: vec![1],
        }
    }

    pub fn u(&self) -> ResElem {
        ResElem {
            num: vec![0, 1],
            den: vec![1],
        }
    }

    pub fn is_zero(&self, x: &ResElem) -> bool {
        x.num.is_empty()
    }

    pub fn is_one(&self, x: &ResElem) -> bool {
        x.num == vec![1] && x.den == vec![1]
    }

    pub fn mul(&self, a: &ResElem, b: &ResElem) -> ResElem {
        self.from_parts(
            poly_mul(&self.fp, &a.num, &b.num),
            poly_mul(&self.fp, &a.den, &b.den),
        )
        .expect("nonzero denominators")
    }

    pub fn add(&self, a: &ResElem, b: &ResElem) -> ResElem {
        let num = poly_add(
            &self.fp,
            &poly_mul(&self.fp, &a.num, &b.den),
            &poly_mul(&self.fp, &b.num, &a.den),
        );
        self.from_parts(num, poly_mul(&self.fp, &a.den, &b.den))
            .expect("nonzero denominators")
    }

    pub fn sub(&self, a: &ResElem, b: &ResElem) -> ResElem {
        let num = poly_sub(
            &self.fp,
            &poly_mul(&self.fp, &a.num, &b.den),
            &poly_mul(&self.fp, &b.num, &a.den),
        );
        self.from_parts(num, poly_mul(&self.fp, &a.den, &b.den))
            .expect("nonzero denominators")
    }

    pub fn inv(&self, a: &ResElem) -> Result<ResElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        self.from_parts(a.den.clone(), a.num.clone())
    }

    pub fn pow(&self, a: &ResElem, e: u32) -> ResElem {
        let mut acc = self.from_const(1);
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Decides c in k^p and returns the p-th root when it exists. In lowest
    /// terms a p-th power has numerator and denominator of the form
    /// sum a_i u^(p*i), because Frobenius fixes F_p. For F_p itself every
    /// element is a p-th power.
    pub fn pth_root(&self, c: &ResElem) -> Result<Option<ResElem>> {
        if self.is_zero(c) {
            return Err(Error::DivisionByZero);
        }
        let p = self.fp.p as usize;
        let root_of_poly = |f: &Poly<u64>| -> Option<Poly<u64>> {
            let mut out = vec![0u64; (f.len() - 1) / p + 1];
            for (i, &a) in f.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                if i % p != 0 {
                    return None;
                }
                out[i / p] = a;
            }
            Some(poly_trim(&self.fp, out))
        };
        let (rn, rd) = match (root_of_poly(&c.num), root_of_poly(&c.den)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Ok(None),
        };
        let root = self.from_parts(rn, rd)?;
        debug_assert_eq!(self.pow(&root, self.fp.p as u32), *c);
        Ok(Some(root))
    }

    /// Decides c in {x^p - x | x in k} and returns a root when solvable.
    ///
    /// Any solution x = g/h in lowest terms forces den(c) = h^p exactly, so h
    /// is read off as a p-th root and g solves the F_p-linear system
    /// g^p - g h^(p-1) = num(c) (Frobenius is linear over F_p).
    pub fn artin_schreier_root(&self, c: &ResElem) -> Option<ResElem> {
        if self.is_zero(c) {
            return Some(self.from_const(0));
        }
        let p = self.fp.p as usize;
        let h = if c.den == vec![1] {
            vec![1u64]
        } else {
            let mut out = vec![0u64; (c.den.len() - 1) / p + 1];
            for (i, &a) in c.den.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                if i % p != 0 {
                    return None;
                }
                out[i / p] = a;
            }
            poly_trim(&self.fp, out)
        };
        let hp1 = self.poly_power(&h, (p - 1) as u32);
        let deg_num = c.num.len().saturating_sub(1);
        let bound = (deg_num / p).max(h.len().saturating_sub(1)) + 1;
        // unknowns g_0..g_{bound}; equations: coeff_k(g^p - g*h^{p-1} - P) = 0
        let rows = (bound * p).max(hp1.len().saturating_sub(1) + bound).max(deg_num) + 1;
        let cols = bound + 1;
        let mut mat = vec![vec![0u64; cols + 1]; rows];
        for i in 0..cols {
            // g_i * u^{i*p} from g^p
            mat[i * p][i] = (mat[i * p][i] + 1) % self.fp.p;
            // -g_i * hp1_j at row i + j
            for (j, &hj) in hp1.iter().enumerate() {
                mat[i + j][i] = self.fp.sub(&mat[i + j][i], &hj);
            }
        }
        for (k, &a) in c.num.iter().enumerate() {
            mat[k][cols] = a;
        }
        let sol = solve_mod_p(&self.fp, mat, cols)?;
        let g = poly_trim(&self.fp, sol);
        let x = self.from_parts(g, h).ok()?;
        debug_assert_eq!(self.sub(&self.pow(&x, self.fp.p as u32), &x), *c);
        Some(x)
    }

    fn poly_power(&self, f: &Poly<u64>, e: u32) -> Poly<u64> {
        let mut acc = vec![1u64];
        for _ in 0..e {
            acc = poly_mul(&self.fp, &acc, f);
        }
        acc
    }
}

/// Gaussian elimination over F_p for an augmented matrix; returns any
/// particular solution of the first `cols` unknowns.
fn solve_mod_p(fp: &FpCtx, mut mat: Vec<Vec<u64>>, cols: usize) -> Option<Vec<u64>> {
    let rows = mat.len();
    let mut pivot_of_col = vec![usize::MAX; cols];
    let mut r = 0;
    for c in 0..cols {
        let mut pr = None;
        for i in r..rows {
            if mat[i][c] % fp.p != 0 {
                pr = Some(i);
                break;
            }
        }
        let Some(pr) = pr else { continue };
        mat.swap(r, pr);
        let inv = fp.inv_u64(mat[r][c]);
        for j in c..=cols {
            mat[r][j] = mat[r][j] * inv % fp.p;
        }
        for i in 0..rows {
            if i != r && mat[i][c] % fp.p != 0 {
                let f = mat[i][c];
                for j in c..=cols {
                    let t = fp.mul(&f, &mat[r][j]);
                    mat[i][j] = fp.sub(&mat[i][j], &t);
                }
            }
        }
        pivot_of_col[c] = r;
        r += 1;
        if r == rows {
            break;
        }
    }
    // inconsistency: a zero row with nonzero rhs
    for row in &mat {
        if row[..cols].iter().all(|&x| x % fp.p == 0) && row[cols] % fp.p != 0 {
            return None;
        }
    }
    let mut sol = vec![0u64; cols];
    for c in 0..cols {
        if pivot_of_col[c] != usize::MAX {
            sol[c] = mat[pivot_of_col[c]][cols];
        }
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pth_root_over_fp_always_exists() {
        let k = ResCtx::new(3, false);
        let c = k.from_const(2);
        let root = k.pth_root(&c).unwrap().unwrap();
        assert_eq!(root, k.from_const(2)); // 2^3 = 8 = 2 mod 3
        assert!(k.pth_root(&k.from_const(0)).is_err());
    }

    #[test]
    fn u_is_not_a_cube() {
        let k = ResCtx::new(3, true);
        assert!(k.pth_root(&k.u()).unwrap().is_none());
    }

    #[test]
    fn constructed_cube_recovers_root() {
        // (u/(1+u))^3
        let k = ResCtx::new(3, true);
        let base = k.from_parts(vec![0, 1], vec![1, 1]).unwrap();
        let cube = k.pow(&base, 3);
        let root = k.pth_root(&cube).unwrap().unwrap();
        assert_eq!(root, base);
    }

    #[test]
    fn artin_schreier_over_fp() {
        let k = ResCtx::new(3, false);
        assert_eq!(k.artin_schreier_root(&k.from_const(0)), Some(k.from_const(0)));
        assert!(k.artin_schreier_root(&k.from_const(1)).is_none());
    }

    #[test]
    fn artin_schreier_constructed() {
        // u^3 - u is in the image with root u
        let k = ResCtx::new(3, true);
        let u = k.u();
        let c = k.sub(&k.pow(&u, 3), &u);
        let x = k.artin_schreier_root(&c).unwrap();
        assert_eq!(k.sub(&k.pow(&x, 3), &x), c);
        // 1/u^3 - 1/u has root 1/u
        let iu = k.inv(&u).unwrap();
        let c2 = k.sub(&k.pow(&iu, 3), &iu);
        let x2 = k.artin_schreier_root(&c2).unwrap();
        assert_eq!(k.sub(&k.pow(&x2, 3), &x2), c2);
    }

    #[test]
    fn artin_schreier_unsolvable_rational() {
        // 1/u has a pole of order 1, not divisible by 3
        let k = ResCtx::new(3, true);
        let c = k.inv(&k.u()).unwrap();
        assert!(k.artin_schreier_root(&c).is_none());
    }
}
