//! Best-h normalization and the five-case classification with all numeric
//! invariants.
//!
//! An extension class is walked to its best representative by multiplying by
//! p-th powers: first the value of h is normalized, then the residue, then a
//! loop strictly increases t = v(h - 1) until one of the five terminal
//! conditions holds. Reaching t > p*v(z) certifies that h is a p-th power in
//! the henselization and the class is rejected.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{Field, FieldDesc, FieldElem};
use crate::report::{IdealDesc, RingTag};
use crate::value::{in_p_multiple, Value};

pub const DEFAULT_MAX_ITER: u32 = 200;

/// The five terminal cases of the best-h normalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    #[serde(rename = "UNRAMIFIED_I")]
    UnramifiedI,
    #[serde(rename = "WILD_II")]
    WildII,
    #[serde(rename = "WILD_III")]
    WildIII,
    #[serde(rename = "FEROCIOUS_IV")]
    FerociousIV,
    #[serde(rename = "FEROCIOUS_V")]
    FerociousV,
}

impl CaseTag {
    pub fn is_wild(&self) -> bool {
        matches!(self, CaseTag::WildII | CaseTag::WildIII)
    }
    pub fn is_unit_class(&self) -> bool {
        !matches!(self, CaseTag::WildII)
    }
}

/// Result of the best-h walk. The class relation is
/// h_best = h_input^exp_twist * multiplier^p, with exp_twist = 1 except in
/// the non-unit wild case where the value of h is twisted to the minimal
/// positive lattice element.
#[derive(Clone, Debug)]
pub struct BestH {
    pub h_best: FieldElem,
    pub case: CaseTag,
    pub iterations: u32,
    pub multiplier: FieldElem,
    pub exp_twist: u32,
}

pub fn best_h(field: &Field, h: &FieldElem, max_iter: u32) -> Result<BestH> {
    if field.is_zero(h) {
        return Err(Error::ZeroH);
    }
    let p = field.p() as i64;
    let vz = field.valuation(&field.z());
    let pvz = vz.scalar_mul_int(p);
    let mut iterations = 0u32;
    let mut mult = field.one();
    let mut h = h.clone();

    // Stage 1: normalize v(h) mod p*Gamma.
    let vh = field.valuation(&h);
    let m = field.group.lattice_index(&vh).expect("h nonzero");
    let m_mod_p = ((&m % p + p) % p).to_string().parse::<i64>().expect("small");
    if m_mod_p != 0 {
        // Wild non-unit class. Twist the exponent so the normalized value is
        // the minimal positive element of the lattice, matching the
        // classical choice v(h) = v(pi).
        let istar = mod_inverse(m_mod_p, p);
        if istar != 1 {
            h = field.pow(&h, istar)?;
            iterations += 1;
        }
        let d = field.group.denominator_lattice as i64;
        let target = Value::Finite(BigRational::new(BigInt::from(1), BigInt::from(d)));
        let gap = target.sub(&field.valuation(&h))?;
        let g = field.monomial(&gap.div_int(p))?;
        if !field.eq(&g, &field.one()) {
            h = field.mul(&h, &field.pow(&g, p)?);
            mult = field.mul(&mult, &g);
            iterations += 1;
        }
        return Ok(BestH {
            h_best: h,
            case: CaseTag::WildII,
            iterations,
            multiplier: mult,
            exp_twist: istar as u32,
        });
    }
    if !vh.is_zero() {
        let g = field.monomial(&vh.div_int(-p))?;
        h = field.mul(&h, &field.pow(&g, p)?);
        mult = field.mul(&mult, &g);
        iterations += 1;
    }

    // Stage 2: normalize the residue of the unit h.
    let r = field.residue(&h)?;
    if !field.res.is_one(&r) {
        match field.res.pth_root(&r)? {
            None => {
                return Ok(BestH {
                    h_best: h,
                    case: CaseTag::FerociousIV,
                    iterations,
                    multiplier: mult,
                    exp_twist: 1,
                })
            }
            Some(root) => {
                let g = field.inv(&field.lift(&root))?;
                h = field.mul(&h, &field.pow(&g, p)?);
                mult = field.mul(&mult, &g);
                iterations += 1;
            }
        }
    }

    // Stage 3: drive t = v(h - 1) upward until a terminal condition.
    loop {
        if iterations > max_iter {
            return Err(Error::IterationCap(max_iter));
        }
        let hm1 = field.sub(&h, &field.one());
        let t = field.valuation(&hm1);
        if t > pvz {
            // p-th power in the henselization; includes h == 1 exactly
            return Err(Error::NotInA);
        }
        if t == pvz {
            let zp = field.pow(&field.z(), p)?;
            let cbar = field.residue(&field.div(&hm1, &zp)?)?;
            match field.res.artin_schreier_root(&cbar) {
                None => {
                    return Ok(BestH {
                        h_best: h,
                        case: CaseTag::UnramifiedI,
                        iterations,
                        multiplier: mult,
                        exp_twist: 1,
                    })
                }
                Some(x) => {
                    let g = field.sub(&field.one(), &field.mul(&field.lift(&x), &field.z()));
                    h = field.mul(&h, &field.pow(&g, p)?);
                    mult = field.mul(&mult, &g);
                    iterations += 1;
                    continue;
                }
            }
        }
        // 0 < t < p*v(z)
        if !in_p_multiple(&t, &field.group, field.p())? {
            return Ok(BestH {
                h_best: h,
                case: CaseTag::WildIII,
                iterations,
                multiplier: mult,
                exp_twist: 1,
            });
        }
        let ms = field.monomial(&t.div_int(p))?;
        let mp = field.pow(&ms, p)?;
        let cbar = field.residue(&field.div(&hm1, &mp)?)?;
        match field.res.pth_root(&cbar)? {
            None => {
                return Ok(BestH {
                    h_best: h,
                    case: CaseTag::FerociousV,
                    iterations,
                    multiplier: mult,
                    exp_twist: 1,
                });
            }
            Some(root) => {
                let g = field.sub(&field.one(), &field.mul(&field.lift(&root), &ms));
                h = field.mul(&h, &field.pow(&g, p)?);
                mult = field.mul(&mult, &g);
                iterations += 1;
            }
        }
    }
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    let mut result = 1i64;
    let mut base = a.rem_euclid(p);
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

/// All ideal descriptors attached to a classification.
#[derive(Clone, Debug, Serialize)]
pub struct IdealSet {
    #[serde(rename = "H")]
    pub h: IdealDesc,
    #[serde(rename = "J_sigma")]
    pub j_sigma: IdealDesc,
    #[serde(rename = "I_sigma")]
    pub i_sigma: IdealDesc,
    #[serde(rename = "N_sigma")]
    pub n_sigma: IdealDesc,
    #[serde(rename = "I_threshold")]
    pub i_threshold: IdealDesc,
}

/// Integer-normalized invariants for a discrete value group of L, obtained
/// by scaling with the lattice denominator of Gamma_L.
#[derive(Clone, Debug, Serialize)]
pub struct WNormalized {
    pub lattice_denominator: u64,
    pub t: i64,
    pub sw: i64,
    pub j: i64,
    pub i: i64,
}

/// Annotation added by descent to a subfield presentation.
#[derive(Clone, Debug, Serialize)]
pub struct DescentInfo {
    pub descended: bool,
    pub m: u32,
}

/// Full classification of an extension class.
#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub p: u32,
    pub field: FieldDesc,
    pub h_input: String,
    pub h_best: String,
    pub case: CaseTag,
    pub e: u32,
    pub f: u32,
    pub defect: u32,
    pub t: Value,
    pub sw: Value,
    pub j: Value,
    pub i: Value,
    #[serde(rename = "H_gen_val")]
    pub h_gen_val: Value,
    pub iterations: u32,
    pub model: &'static str,
    pub ideals: IdealSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_normalized: Option<WNormalized>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub descent: Option<DescentInfo>,
    #[serde(skip)]
    pub h_input_elem: FieldElem,
    #[serde(skip)]
    pub h_best_elem: FieldElem,
}

impl ExtensionReport {
    /// Lattice denominator of Gamma_L = (1/(e*D))Z.
    pub fn lattice_denominator_l(&self) -> u64 {
        let d = (self.p as u64 - 1) * (self.p as u64).pow(self.field.tower_level);
        self.e as u64 * d
    }

    pub fn fill_w_normalized(&mut self) {
        let den = self.lattice_denominator_l();
        let scale = |v: &Value| -> i64 {
            let q = v.finite() * BigRational::from_integer(BigInt::from(den));
            i64::try_from(q.to_integer()).expect("small integer")
        };
        self.w_normalized = Some(WNormalized {
            lattice_denominator: den,
            t: scale(&self.t),
            sw: scale(&self.sw),
            j: scale(&self.j),
            i: scale(&self.i),
        });
    }
}

pub fn classify(field: &Field, h: &FieldElem) -> Result<ExtensionReport> {
    classify_with(field, h, DEFAULT_MAX_ITER)
}

pub fn classify_with(field: &Field, h: &FieldElem, max_iter: u32) -> Result<ExtensionReport> {
    let best = best_h(field, h, max_iter)?;
    let p = field.p();
    let vz = field.valuation(&field.z());
    let pvz = vz.scalar_mul_int(p as i64);
    let d = field.group.denominator_lattice;

    // t = v(h_best - 1): 0 in cases (ii)/(iv), p*v(z) in case (i)
    let t = field.valuation(&field.sub(&best.h_best, &field.one()));
    let sw = pvz.sub(&t)?;
    let j = sw.div_int(p as i64);
    let pd = BigRational::new(BigInt::from(1), BigInt::from(p as u64 * d));
    let i = match best.case {
        CaseTag::UnramifiedI => Value::zero(),
        CaseTag::WildII | CaseTag::WildIII => j.add(&Value::Finite(pd)),
        CaseTag::FerociousIV | CaseTag::FerociousV => j.clone(),
    };
    let (e, f) = match best.case {
        CaseTag::WildII | CaseTag::WildIII => (p, 1),
        _ => (1, p),
    };

    let zp = field.pow(&field.z(), p as i64)?;
    let h_gen = field.div(&zp, &field.sub(&best.h_best, &field.one()))?;
    let cutoff = sw.scalar_mul(&BigRational::new(
        BigInt::from(p - 1),
        BigInt::from(p),
    ));

    let mu_name = if best.case.is_unit_class() { "alpha - 1" } else { "alpha" };
    let ideals = IdealSet {
        h: IdealDesc::principal(RingTag::A, sw.clone()).with_witness(
            "z^p/(h_best - 1)",
            field.render(&h_gen),
            sw.clone(),
        ),
        j_sigma: IdealDesc::principal(RingTag::B, j.clone()).with_witness(
            "sigma(mu)/mu - 1",
            format!("mu = {}", mu_name),
            j.clone(),
        ),
        i_sigma: IdealDesc::principal(RingTag::B, i.clone()),
        n_sigma: IdealDesc::principal(RingTag::A, sw.clone()),
        i_threshold: IdealDesc::threshold(RingTag::A, cutoff),
    };

    Ok(ExtensionReport {
        p,
        field: field.desc,
        h_input: field.render(h),
        h_best: field.render(&best.h_best),
        case: best.case,
        e,
        f,
        defect: 1,
        t,
        sw,
        j,
        i,
        h_gen_val: ideals.h.gen_val.clone(),
        iterations: best.iterations,
        model: "global",
        ideals,
        w_normalized: None,
        descent: None,
        h_input_elem: h.clone(),
        h_best_elem: best.h_best,
    })
}
