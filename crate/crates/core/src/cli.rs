//! Command-line front end. `main.rs` only forwards to [`run`].

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::exactalg::{parse_rational, RatPoly, Rational};
use crate::foxcalc::fox_jacobian;
use crate::freegroup::{abelianization, Presentation, Word};
use crate::replift::{check_representation, LiftSign, Representation};
use crate::repsolve::{export_representation, solve, SolveOptions, SolveSpec};
use crate::tables::{expected_column, trace_field, ColumnMatch, Knot, FIELD_POLY, TABLE_DIMS};
use crate::torsioncore::{
    cohomology_dims, default_column, torsion_report, torsion_tsv, twisted_alexander,
};

#[derive(Parser, Debug)]
#[command(name = "knot-torsion", version)]
#[command(about = "Exact twisted torsion of knot groups over number fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print generators, relator lengths, deficiency and abelianization
    Parse {
        #[arg(long)]
        pres: PathBuf,
    },
    /// Solve for parabolic SL(2) representations and write them out
    Solve(SolveArgs),
    /// Verify determinants and relators of a representation file
    CheckRep {
        #[arg(long)]
        pres: PathBuf,
        #[arg(long)]
        rep: PathBuf,
    },
    /// Print the Fox Jacobian
    Fox {
        #[arg(long)]
        pres: PathBuf,
    },
    /// Torsion at t = +1 / -1 as a TSV table
    Torsion(TorsionArgs),
    /// Uncancelled numerator and denominator of the twisted Alexander fraction
    Alex {
        #[arg(long)]
        pres: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Deleted generator
        #[arg(long)]
        column: Option<char>,
    },
    /// Twisted cohomology dimensions of the presentation complex
    Cohom {
        #[arg(long)]
        pres: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
    /// Torsion tables for the Kinoshita-Terasaka and Conway knots
    Table(TableArgs),
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long)]
    pub pres: PathBuf,
    /// Word sent to [[1,1],[0,1]]; without it every generator with
    /// |alpha| = 1 gets trace 2
    #[arg(long)]
    pub meridian: Option<String>,
    #[arg(long, default_value_t = 64)]
    pub max_degree: usize,
    #[arg(long)]
    pub time_cap: Option<u64>,
    /// Rewrite matching branches over Q[x]/(f); coefficients leading first
    #[arg(long, allow_hyphen_values = true)]
    pub field_poly: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Directory for the representation files
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LiftChoice {
    Plus,
    Minus,
    Both,
}

impl LiftChoice {
    pub fn signs(self) -> Vec<LiftSign> {
        match self {
            LiftChoice::Plus => vec![LiftSign::Plus],
            LiftChoice::Minus => vec![LiftSign::Minus],
            LiftChoice::Both => vec![LiftSign::Plus, LiftSign::Minus],
        }
    }
}

#[derive(Args, Debug)]
pub struct TorsionArgs {
    #[arg(long)]
    pub pres: PathBuf,
    /// Plus lift; the minus lift is derived from it
    #[arg(long)]
    pub rep: PathBuf,
    #[arg(long = "dim", value_delimiter = ',', default_value = "2")]
    pub dims: Vec<usize>,
    #[arg(long, value_enum, default_value_t = LiftChoice::Both)]
    pub lift: LiftChoice,
    #[arg(long)]
    pub column: Option<char>,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Compare against the published values
    #[arg(long)]
    pub paper: bool,
    /// Also accept columns that list ascending coordinates times one
    /// scale shared by every column
    #[arg(long, requires = "paper")]
    pub ascending: bool,
    /// Directory holding <knot>.pres and <knot>.rep
    #[arg(long)]
    pub data: Option<PathBuf>,
    #[arg(long = "dim", value_delimiter = ',')]
    pub dims: Vec<usize>,
    #[arg(long, value_enum, default_value_t = LiftChoice::Both)]
    pub lift: LiftChoice,
}

/// Shipped data directory.
pub fn default_data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

/// Runs a parsed command. `Ok(false)` means the command ran but a check
/// it performs failed.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<bool> {
    match cli.command {
        Command::Parse { pres } => cmd_parse(&pres, out),
        Command::Solve(args) => cmd_solve(&args, out),
        Command::CheckRep { pres, rep } => cmd_check_rep(&pres, &rep, out),
        Command::Fox { pres } => {
            let p = Presentation::read(&pres)?;
            writeln!(out, "{}", fox_jacobian(&p))?;
            Ok(true)
        }
        Command::Torsion(args) => cmd_torsion(&args, out),
        Command::Alex {
            pres,
            rep,
            dim,
            column,
        } => cmd_alex(&pres, &rep, dim, column, out),
        Command::Cohom { pres, rep, dim } => {
            let p = Presentation::read(&pres)?;
            let r = Representation::read(&rep, &p)?;
            let c = cohomology_dims(&p, &r, dim)?;
            writeln!(out, "{c}")?;
            Ok(true)
        }
        Command::Table(args) => cmd_table(&args, out),
    }
}

fn cmd_parse(path: &Path, out: &mut dyn Write) -> Result<bool> {
    let p = Presentation::read(path)?;
    let gens: String = p.generators().iter().map(|g| format!(" {g}")).collect();
    writeln!(out, "generators:{gens}")?;
    for r in p.relators() {
        writeln!(out, "relator\t{}\tlength {}", r.render(), r.len())?;
    }
    writeln!(out, "deficiency\t{}", p.deficiency())?;
    let alpha = abelianization(&p)?;
    for g in p.generators() {
        writeln!(out, "alpha({g})\t{}", alpha.get(*g))?;
    }
    Ok(true)
}

/// Parses `"1 -1 3 ..."` (leading coefficient first).
pub fn parse_field_poly(s: &str) -> Result<RatPoly> {
    let coeffs = s
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(parse_rational)
        .collect::<Result<Vec<Rational>>>()?;
    let f = RatPoly::from_descending(coeffs);
    if f.degree().unwrap_or(0) < 1 {
        return Err(Error::SolveSetup("field polynomial must have degree >= 1".into()));
    }
    Ok(f.monic())
}

fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> Result<bool> {
    let p = Presentation::read(&args.pres)?;
    let spec = match &args.meridian {
        Some(m) => SolveSpec::with_meridian(&p, &Word::parse(m)?)?,
        None => SolveSpec::default_policy(&p)?,
    };
    let opts = SolveOptions {
        max_degree: args.max_degree,
        time_cap: args.time_cap.map(Duration::from_secs),
        seed: args.seed,
        field_poly: args.field_poly.as_deref().map(parse_field_poly).transpose()?,
        ..SolveOptions::default()
    };
    let start = Instant::now();
    let outcome = solve(&spec, &opts)?;
    writeln!(
        out,
        "# {} branch(es), {} solutions mod {}, {:.2}s",
        outcome.branches.len(),
        outcome.quotient_dim,
        outcome.prime,
        start.elapsed().as_secs_f64()
    )?;
    if outcome.singular_points + outcome.unresolved_points > 0 {
        writeln!(
            out,
            "# skipped: {} singular, {} unresolved",
            outcome.singular_points, outcome.unresolved_points
        )?;
    }
    if outcome.branches.is_empty() {
        return Err(Error::NoSolutions);
    }
    fs::create_dir_all(&args.out)?;
    let stem = args
        .pres
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("branch");
    for (i, b) in outcome.branches.iter().enumerate() {
        let path = args.out.join(format!("{stem}.branch{i}.rep"));
        export_representation(b, &path)?;
        writeln!(
            out,
            "branch {i}\tdegree {}\tfield {}\t{}\t{}",
            b.degree(),
            b.field.modulus(),
            if b.recognized { "recognized" } else { "own field" },
            path.display()
        )?;
    }
    Ok(true)
}

fn cmd_check_rep(pres: &Path, rep: &Path, out: &mut dyn Write) -> Result<bool> {
    let p = Presentation::read(pres)?;
    let r = Representation::read(rep, &p)?;
    let check = check_representation(&p, &r)?;
    writeln!(out, "{check}")?;
    if let Some(m) = r.meridian() {
        writeln!(out, "trace({})\t{}", m.render(), r.trace_of(m)?)?;
    }
    Ok(check.passed())
}

fn check_dims(dims: &[usize]) -> Result<()> {
    if let Some(d) = dims.iter().find(|&&d| d < 2) {
        return Err(Error::Dimension(format!("dimension {d} < 2")));
    }
    for d in dims.iter().filter(|&&d| d % 2 == 1) {
        eprintln!("warning: d={d} is odd; acyclicity is not guaranteed");
    }
    Ok(())
}

fn cmd_torsion(args: &TorsionArgs, out: &mut dyn Write) -> Result<bool> {
    check_dims(&args.dims)?;
    let p = Presentation::read(&args.pres)?;
    let r = Representation::read(&args.rep, &p)?;
    let mut cols = Vec::new();
    for &d in &args.dims {
        for lift in args.lift.signs() {
            let rep = torsion_report(&p, &r, d, lift, args.column)?;
            cols.push((format!("d={d} {lift}"), rep.display));
        }
    }
    write!(out, "{}", torsion_tsv(r.field(), &cols))?;
    Ok(true)
}

fn cmd_alex(
    pres: &Path,
    rep: &Path,
    dim: usize,
    column: Option<char>,
    out: &mut dyn Write,
) -> Result<bool> {
    let p = Presentation::read(pres)?;
    let r = Representation::read(rep, &p)?;
    let column = match column {
        Some(c) => c,
        None => default_column(&p, &abelianization(&p)?)
            .ok_or_else(|| Error::NotKnotLike("no generator with nonzero alpha".into()))?,
    };
    let f = twisted_alexander(&p, &r, dim, column)?;
    writeln!(out, "{f}")?;
    Ok(true)
}

/// One computed cell of the published tables.
#[derive(Clone, Debug)]
pub struct TableCell {
    pub knot: Knot,
    pub dim: usize,
    pub lift: LiftSign,
    pub display: Vec<Rational>,
    pub matched: Option<ColumnMatch>,
}

/// Loads `<stem>.pres` and `<stem>.rep` and verifies the representation.
pub fn load_knot_data(dir: &Path, knot: Knot) -> Result<(Presentation, Representation)> {
    let pres = dir.join(format!("{}.pres", knot.file_stem()));
    let rep = dir.join(format!("{}.rep", knot.file_stem()));
    for path in [&pres, &rep] {
        if !path.exists() {
            return Err(Error::Io(format!(
                "missing {}; generate it with `knot-torsion solve --pres {} --meridian {} --field-poly \"{}\"`",
                path.display(),
                pres.display(),
                knot.meridian().render(),
                FIELD_POLY.map(|c| c.to_string()).join(" ")
            )));
        }
    }
    let p = Presentation::read(&pres)?;
    let r = Representation::read(&rep, &p)?;
    let check = check_representation(&p, &r)?;
    if !check.passed() {
        return Err(Error::InvalidRepresentation(format!(
            "{} failed the relator check:\n{check}",
            rep.display()
        )));
    }
    Ok((p, r))
}

fn cmd_table(args: &TableArgs, out: &mut dyn Write) -> Result<bool> {
    let dims = if args.dims.is_empty() {
        TABLE_DIMS.to_vec()
    } else {
        args.dims.clone()
    };
    check_dims(&dims)?;
    let dir = args.data.clone().unwrap_or_else(default_data_dir);
    let data = Knot::ALL
        .iter()
        .map(|&k| load_knot_data(&dir, k).map(|d| (k, d)))
        .collect::<Result<Vec<_>>>()?;
    let field = trace_field();
    let mut cells = Vec::new();
    for lift in args.lift.signs() {
        let mut cols = Vec::new();
        for &d in &dims {
            for (knot, (p, r)) in &data {
                if r.field().modulus() != field.modulus() {
                    return Err(Error::FieldMismatch);
                }
                let rep = torsion_report(p, r, d, lift, None)?;
                let matched = if args.paper {
                    expected_column(*knot, d, lift).map(|col| ColumnMatch::new(&rep.value, &col))
                } else {
                    None
                };
                cols.push((format!("{knot} n={d}"), rep.display.clone()));
                cells.push(TableCell {
                    knot: *knot,
                    dim: d,
                    lift,
                    display: rep.display,
                    matched,
                });
            }
        }
        let trace = if lift == LiftSign::Plus { 2 } else { -2 };
        writeln!(out, "# meridian trace {trace}")?;
        write!(out, "{}", torsion_tsv(&field, &cols))?;
    }
    for lift in args.lift.signs() {
        for &d in &dims {
            let pair: Vec<&TableCell> = cells
                .iter()
                .filter(|c| c.dim == d && c.lift == lift)
                .collect();
            let same = pair.windows(2).all(|w| w[0].display == w[1].display);
            writeln!(out, "# KT vs C\tn={d}\t{lift}\t{}", if same { "equal" } else { "differ" })?;
        }
    }
    if !args.paper {
        return Ok(true);
    }
    Ok(report_paper_diff(&cells, args.ascending, out)?)
}

fn report_paper_diff(cells: &[TableCell], ascending: bool, out: &mut dyn Write) -> Result<bool> {
    let scales: Vec<&Rational> = cells
        .iter()
        .filter_map(|c| c.matched.as_ref()?.ascending_scale.as_ref())
        .collect();
    let checked = cells.iter().filter(|c| c.matched.is_some()).count();
    let shared = (scales.len() == checked && scales.windows(2).all(|w| w[0] == w[1]))
        .then(|| scales.first().copied())
        .flatten();
    let mut all = true;
    for c in cells {
        let Some(m) = &c.matched else {
            writeln!(out, "diff\t{}\tn={}\t{}\tno published column", c.knot, c.dim, c.lift)?;
            continue;
        };
        let scale = m
            .ascending_scale
            .as_ref()
            .map_or("none".to_string(), |s| s.to_string());
        let pass = m.literal || (ascending && shared.is_some());
        all &= pass;
        writeln!(
            out,
            "diff\t{}\tn={}\t{}\t{}\tliteral {}\tascending scale {scale}",
            c.knot,
            c.dim,
            c.lift,
            if pass { "PASS" } else { "FAIL" },
            if m.literal { "match" } else { "mismatch" },
        )?;
    }
    if let Some(s) = shared {
        writeln!(out, "# every column equals {s} x ascending coordinates")?;
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_poly_parsing() {
        let f = parse_field_poly("2 0 -4").unwrap();
        assert_eq!(f, RatPoly::from_ints(&[-2, 0, 1]));
        assert!(parse_field_poly("7").is_err());
        assert!(parse_field_poly("1 x").is_err());
    }

    #[test]
    fn dims_below_two_rejected() {
        assert!(check_dims(&[2, 1]).is_err());
        assert!(check_dims(&[2, 4]).is_ok());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
