use std::time::Instant;
fn main() {
    use kummerlab::fields::{make_field, FieldDesc};
    let k = make_field(FieldDesc { p: 3, with_u: true, tower_level: 1 }).unwrap();
    let h = kummerlab::expr::eval_expr(&k, "1 + u^3*z").unwrap();
    let t0 = Instant::now();
    let b = kummerlab::classify::best_h(&k, &h, 200).unwrap();
    eprintln!("best_h done in {:?}, case {:?}", t0.elapsed(), b.case);
    let t0 = Instant::now();
    let hm1 = k.sub(&b.h_best, &k.one());
    let tv = k.valuation(&hm1);
    eprintln!("t = {} in {:?}", tv, t0.elapsed());
    let t0 = Instant::now();
    let zp = k.pow(&k.z(), 3).unwrap();
    let hg = k.div(&zp, &hm1).unwrap();
    eprintln!("h_gen division in {:?}", t0.elapsed());
    let t0 = Instant::now();
    let s = k.render(&hg);
    eprintln!("render len {} in {:?}", s.len(), t0.elapsed());
    let t0 = Instant::now();
    let v = k.valuation(&hg);
    eprintln!("valuation {} in {:?}", v, t0.elapsed());
}
