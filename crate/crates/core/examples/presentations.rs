//! Parse the built-in knot groups, compute their abelianization and check
//! that random Tietze moves leave it alone.
//!
//!     cargo run --example presentations

use knot_torsion::freegroup::{abelianization, tietze_perturb, Word};
use knot_torsion::tables::{figure_eight, Knot};

fn main() -> knot_torsion::Result<()> {
    let w = Word::parse("abACbcbacBCABaBc")?;
    println!("{} has {} letters, inverse {}", w, w.len(), w.invert());
    println!("free_reduce(abBA) = {:?}", Word::parse("abBA")?.free_reduce().render());

    for knot in Knot::ALL {
        let p = knot.presentation();
        let alpha = abelianization(&p)?;
        println!("{knot}: {p}");
        println!("  alpha = {alpha}, meridian {} has alpha {}", knot.meridian(), alpha.of_word(&knot.meridian()));
        let q = tietze_perturb(&p, 7, 5);
        println!("  after 5 Tietze moves: {q}");
        println!("  alpha = {}", abelianization(&q)?);
    }
    println!("figure-eight: {}", figure_eight());
    Ok(())
}
