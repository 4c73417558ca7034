//! Exact arithmetic in the degree 11 trace field Q(w).
//!
//!     cargo run --example number_field

use knot_torsion::exactalg::{NfMatrix, NfPoly};
use knot_torsion::tables::trace_field;

fn main() -> knot_torsion::Result<()> {
    let k = trace_field();
    println!("field modulus: {}", k.modulus());
    let w = k.gen();
    let w11 = w.pow(11);
    println!("w^11 = {w11}");
    println!("display coordinates (w^10 .. 1): {}", w11.to_display_string());

    let x = &w + &k.from_int(3);
    let y = x.inv()?;
    println!("1/(w + 3) = {y}");
    println!("check: (w + 3) * that = {}", &x * &y);

    // (t - 1)^2 (t + w) and (t - 1)(t - w)
    let f = &NfPoly::from_ints(&k, &[1, -2, 1]) * &NfPoly::new(&k, vec![w.clone(), k.one()]);
    let g = &NfPoly::from_ints(&k, &[-1, 1]) * &NfPoly::new(&k, vec![-&w, k.one()]);
    println!("gcd = {}", f.gcd(&g)?);

    let m = NfMatrix::from_rows(vec![
        vec![k.one(), w.clone(), k.zero()],
        vec![w.clone(), w.pow(2), k.one()],
        vec![k.from_int(2), k.zero(), w.clone()],
    ])?;
    println!("det = {}", m.det(&k)?);
    println!("rank = {}", m.rank()?);
    Ok(())
}
