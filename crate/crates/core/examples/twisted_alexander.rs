//! The twisted Alexander fraction of the figure-eight knot and its values
//! at t = 1 and t = -1.
//!
//!     cargo run --example twisted_alexander

use knot_torsion::freegroup::abelianization;
use knot_torsion::replift::{LiftSign, Representation};
use knot_torsion::tables::figure_eight;
use knot_torsion::torsioncore::{torsion_at, torsion_report, twisted_alexander};

const FIGURE_EIGHT_REP: &str = include_str!("../data/figure_eight.rep");

fn main() -> knot_torsion::Result<()> {
    let p = figure_eight();
    let r = Representation::parse_text(FIGURE_EIGHT_REP, &p)?;
    for dim in [2, 4] {
        let f = twisted_alexander(&p, &r, dim, 'a')?;
        println!("{f}");
        println!("reduced: {}", f.reduced()?);
        println!("at t=1: {}   at t=-1: {}", torsion_at(&f, 1)?, torsion_at(&f, -1)?);
        // the minus lift is the sign-twisted representation at t = 1
        let twisted = r.epsilon_twist(&abelianization(&p)?);
        let g = twisted_alexander(&p, &twisted, dim, 'a')?;
        println!("sign-twisted at t=1: {}", torsion_at(&g, 1)?);
        println!("{}\n", torsion_report(&p, &r, dim, LiftSign::Minus, Some('b'))?);
    }
    Ok(())
}
