//! Torsion of the Kinoshita-Terasaka and Conway knots from the shipped
//! representations, compared with the published tables.
//!
//!     cargo run --release --example torsion_tables           # n = 2
//!     cargo run --release --example torsion_tables -- 2 4 6

use knot_torsion::cli::{default_data_dir, load_knot_data};
use knot_torsion::replift::LiftSign;
use knot_torsion::tables::{expected_column, trace_field, ColumnMatch, Knot};
use knot_torsion::torsioncore::{torsion_report, torsion_tsv};

fn main() -> knot_torsion::Result<()> {
    let mut dims: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    if dims.is_empty() {
        dims.push(2);
    }
    let data: Vec<_> = Knot::ALL
        .iter()
        .map(|&k| load_knot_data(&default_data_dir(), k).map(|d| (k, d)))
        .collect::<Result<_, _>>()?;

    for lift in [LiftSign::Plus, LiftSign::Minus] {
        let mut cols = Vec::new();
        for &d in &dims {
            for (knot, (p, r)) in &data {
                let rep = torsion_report(p, r, d, lift, None)?;
                if let Some(col) = expected_column(*knot, d, lift) {
                    let m = ColumnMatch::new(&rep.value, &col);
                    println!(
                        "{knot} n={d} {lift}: literal {}, ascending scale {:?}",
                        m.literal,
                        m.ascending_scale.map(|s| s.to_string())
                    );
                }
                cols.push((format!("{knot} n={d} {lift}"), rep.display));
            }
        }
        print!("{}", torsion_tsv(&trace_field(), &cols));
    }
    Ok(())
}
