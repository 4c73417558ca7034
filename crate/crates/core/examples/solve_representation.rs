//! Solve for the parabolic representations of a knot group.
//!
//!     cargo run --release --example solve_representation            # figure-eight
//!     cargo run --release --example solve_representation -- conway
//!     cargo run --release --example solve_representation -- kt

use knot_torsion::freegroup::Presentation;
use knot_torsion::replift::check_representation;
use knot_torsion::repsolve::{build_system, presubstitute, solve, SolveOptions, SolveSpec};
use knot_torsion::tables::{figure_eight, trace_field, Knot};

fn main() -> knot_torsion::Result<()> {
    let which = std::env::args().nth(1).unwrap_or_default();
    let (p, spec, field_poly): (Presentation, SolveSpec, _) = match which.as_str() {
        "conway" | "kt" => {
            let knot = if which == "kt" { Knot::KinoshitaTerasaka } else { Knot::Conway };
            let p = knot.presentation();
            let spec = SolveSpec::with_meridian(&p, &knot.meridian())?;
            (p, spec, Some(trace_field().modulus().clone()))
        }
        _ => {
            let p = figure_eight();
            let spec = SolveSpec::default_policy(&p)?;
            (p, spec, None)
        }
    };

    let sys = build_system(&spec)?;
    println!("{sys}");
    let pre = presubstitute(&sys)?;
    println!("{} unknowns left after linear substitution", pre.kept.len());

    let opts = SolveOptions { field_poly, ..SolveOptions::default() };
    let out = solve(&spec, &opts)?;
    println!("{} solutions modulo {}", out.quotient_dim, out.prime);
    for b in &out.branches {
        let check = check_representation(&p, &b.representation)?;
        println!(
            "degree {:>2}  field {}  recognized {}  relators {}",
            b.degree(),
            b.field.modulus(),
            b.recognized,
            if check.passed() { "ok" } else { "FAIL" }
        );
    }
    if let Some(b) = out.branches.last() {
        print!("{}", b.representation.to_text());
    }
    Ok(())
}
