//! Fox derivatives and the Jacobian of a presentation.
//!
//!     cargo run --example fox_calculus

use knot_torsion::foxcalc::{fox_derivative, fox_jacobian, fundamental_identity_defect};
use knot_torsion::freegroup::Word;
use knot_torsion::tables::Knot;

fn main() -> knot_torsion::Result<()> {
    let w = Word::parse("abAB")?;
    for g in ['a', 'b'] {
        println!("d({w})/d{g} = {}", fox_derivative(&w, g));
    }

    let p = Knot::KinoshitaTerasaka.presentation();
    let jac = fox_jacobian(&p);
    println!("{jac}");
    for r in p.relators() {
        let defect = fundamental_identity_defect(r, p.generators());
        println!("fundamental identity on {r}: {}", if defect.is_zero() { "holds" } else { "FAILS" });
    }
    Ok(())
}
