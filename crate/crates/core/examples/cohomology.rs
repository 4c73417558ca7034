//! Twisted cohomology of presentation complexes: the solved holonomy is
//! acyclic, a free group is not.
//!
//!     cargo run --release --example cohomology

use std::collections::BTreeMap;

use knot_torsion::cli::{default_data_dir, load_knot_data};
use knot_torsion::exactalg::{NfMatrix, NumberField};
use knot_torsion::freegroup::Presentation;
use knot_torsion::replift::Representation;
use knot_torsion::tables::Knot;
use knot_torsion::torsioncore::cohomology_dims;

fn main() -> knot_torsion::Result<()> {
    for knot in Knot::ALL {
        let (p, r) = load_knot_data(&default_data_dir(), knot)?;
        for d in [2, 3] {
            println!("{knot} d={d}: {}", cohomology_dims(&p, &r, d)?);
        }
    }

    // rank 3 free group, generators sent to an irreducible triple
    let q = NumberField::rationals();
    let m = |a: i64, b: i64, c: i64, d: i64| {
        NfMatrix::from_rows(vec![
            vec![q.from_int(a), q.from_int(b)],
            vec![q.from_int(c), q.from_int(d)],
        ])
    };
    let free = Presentation::from_strs("abc", &[])?;
    let images: BTreeMap<char, NfMatrix> =
        [('a', m(1, 1, 0, 1)?), ('b', m(1, 0, 1, 1)?), ('c', m(2, 1, 1, 1)?)].into_iter().collect();
    let r = Representation::new(&free, &q, images, None)?;
    println!("free group of rank 3, d=2: {}", cohomology_dims(&free, &r, 2)?);
    Ok(())
}
