//! Command-line front end: cohomology tables, ladder reports, and manifold
//! verdicts for the pinched nested-tube quotient, plus small standalone
//! calculators for twisted complexes and multiplication towers.

mod report;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use solq_core::abelian::CoefficientRing;
use solq_core::complex::lens_complex;
use solq_core::primes::PrimeSet;
use solq_core::solenoid::SolenoidModel;
use solq_core::tower::{Direction, MittagLeffler, Tower, TowerBase};
use solq_core::verdict::classify;
use solq_core::Error;

#[derive(Parser)]
#[command(
    name = "solq",
    version,
    about = "Cohomology tables and manifold verdicts for the pinched nested-tube quotient"
)]
struct Cli {
    /// Emit a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include derivation traces in the output.
    #[arg(long, global = true)]
    trace: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ModelArgs {
    /// Winding primes: a comma list like "2,3", "all", or "all-except:<list>".
    #[arg(long)]
    primes: String,
    /// Coefficient ring: Z, Q, or mod:<m>.
    #[arg(long, default_value = "Z")]
    coeff: String,
}

#[derive(Subcommand)]
enum Command {
    /// Homology of the twisted complex of order q, along both computation routes.
    Lens {
        #[arg(long)]
        q: u64,
        /// Coefficient ring: Z, Q, or mod:<m>.
        #[arg(long)]
        coeff: Option<String>,
    },
    /// Homology of the suspension of the order-q twisted complex.
    Suspend {
        #[arg(long)]
        q: u64,
    },
    /// Local cohomology table at the pinch point.
    Local(ModelArgs),
    /// Cohomology of the complement of the wild set.
    Complement(ModelArgs),
    /// Relative cohomology of the quotient modulo that complement.
    Pair(ModelArgs),
    /// Local connectedness of the neighborhood ladder at the pinch point.
    Clc(ModelArgs),
    /// The full manifold classification over one coefficient ring.
    Classify(ModelArgs),
    /// Symbolic limits of a multiplication tower, with a finite probe as a
    /// cross-check where one makes sense.
    Tower {
        /// Which limit: lim, lim1, or colim.
        #[arg(value_parser = ["lim", "lim1", "colim"])]
        op: String,
        /// Base group: Z, Q, or mod:<m>.
        #[arg(long)]
        base: String,
        /// Winding primes driving the multiplication bonds.
        #[arg(long)]
        primes: String,
        /// Probe depth for the finite cross-check.
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(2..))]
        depth: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Inconsistency(_) => 3,
                _ => 2,
            };
            std::process::exit(code);
        }
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    match &cli.command {
        Command::Lens { q, coeff } => lens_command(cli, *q, coeff.as_deref()),
        Command::Suspend { q } => suspend_command(cli, *q),
        Command::Local(args) => {
            let (model, ring) = parse_model(args)?;
            let table = model.local_cohomology_at_wild_point(&ring)?;
            table_command(cli, "local", &model, &table, "local cohomology at the pinch point")
        }
        Command::Complement(args) => {
            let (model, ring) = parse_model(args)?;
            let table = model.complement_cohomology(&ring)?;
            table_command(cli, "complement", &model, &table, "cohomology of the complement")
        }
        Command::Pair(args) => {
            let (model, ring) = parse_model(args)?;
            let table = model.quotient_pair_cohomology(&ring)?;
            table_command(
                cli,
                "pair",
                &model,
                &table,
                "relative cohomology of the quotient modulo the complement",
            )
        }
        Command::Clc(args) => clc_command(cli, args),
        Command::Classify(args) => classify_command(cli, args),
        Command::Tower {
            op,
            base,
            primes,
            depth,
        } => tower_command(cli, op, base, primes, *depth as usize),
    }
}

fn parse_model(args: &ModelArgs) -> Result<(SolenoidModel, CoefficientRing), Error> {
    let primes: PrimeSet = args.primes.parse()?;
    let ring: CoefficientRing = args.coeff.parse()?;
    Ok((SolenoidModel::new(primes), ring))
}

fn emit(cli: &Cli, value: Value, lines: Vec<String>) {
    use std::io::Write;
    let text = if cli.json {
        serde_json::to_string_pretty(&value).expect("reports serialize")
    } else {
        lines.join("\n")
    };
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{text}") {
        // A closed pipe is the reader's choice, not an error worth a panic.
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write report: {e}");
        std::process::exit(2);
    }
}

fn lens_command(cli: &Cli, q: u64, coeff: Option<&str>) -> Result<(), Error> {
    let complex = lens_complex(q)?;
    let integral = complex.homology();
    let integral_strings: Vec<String> = integral.iter().map(|g| g.to_string()).collect();

    let mut lines = vec![format!("twisted complex of order {q}")];
    lines.push(format!("  integral homology: {}", integral_strings.join(", ")));

    let mut payload = json!({
        "schema_version": report::SCHEMA_VERSION,
        "command": "lens",
        "q": q,
        "ring": coeff,
        "integral_homology": integral_strings,
        "with_coefficients": Value::Null,
        "divergence": Value::Null,
    });

    if let Some(text) = coeff {
        let ring: CoefficientRing = text.parse()?;
        let uct_homology: Vec<String> = complex
            .homology_with(&ring)
            .iter()
            .map(|g| g.to_string())
            .collect();
        let uct_cohomology: Vec<String> = complex
            .cohomology_with(&ring)
            .iter()
            .map(|g| g.to_string())
            .collect();
        let field = if ring.is_field() {
            let h: Vec<String> = complex
                .field_homology(&ring)?
                .iter()
                .map(|g| g.to_string())
                .collect();
            let c: Vec<String> = complex
                .field_cohomology(&ring)?
                .iter()
                .map(|g| g.to_string())
                .collect();
            Some((h, c))
        } else {
            None
        };
        let agree = field
            .as_ref()
            .map(|(h, c)| *h == uct_homology && *c == uct_cohomology);

        lines.push(format!("  over {ring}:"));
        lines.push(format!("    homology:   {}", uct_homology.join(", ")));
        lines.push(format!("    cohomology: {}", uct_cohomology.join(", ")));
        match agree {
            Some(true) => lines.push(
                "    universal-coefficient and field-rank routes agree".to_string(),
            ),
            Some(false) => lines.push(
                "    WARNING: universal-coefficient and field-rank routes disagree"
                    .to_string(),
            ),
            None => {}
        }

        let divergence = if let CoefficientRing::Mod(modulus) = &ring {
            let torsion_part = integral[1].torsion_product_mod(&modulus.big());
            if !torsion_part.is_trivial() {
                Some(format!(
                    "the degree-two homology over {ring} is {torsion_part}, carried \
                     entirely by the torsion product with the degree-one class; a \
                     table built from tensor parts alone would wrongly show 0 there"
                ))
            } else {
                None
            }
        } else {
            None
        };
        if let Some(note) = &divergence {
            lines.push(format!("  note: {note}"));
        }

        let obj = payload.as_object_mut().expect("payload is an object");
        obj.insert(
            "with_coefficients".to_string(),
            json!({
                "homology": uct_homology,
                "cohomology": uct_cohomology,
                "paths": {
                    "universal_coefficients": {
                        "homology": uct_homology,
                        "cohomology": uct_cohomology,
                    },
                    "field_rank": field.as_ref().map(|(h, c)| json!({
                        "homology": h,
                        "cohomology": c,
                    })),
                    "agree": agree,
                },
            }),
        );
        obj.insert("divergence".to_string(), json!(divergence));
    }

    emit(cli, payload, lines);
    Ok(())
}

fn suspend_command(cli: &Cli, q: u64) -> Result<(), Error> {
    let complex = lens_complex(q)?;
    let suspended: Vec<String> = complex
        .suspension_homology()?
        .iter()
        .map(|g| g.to_string())
        .collect();
    let payload = json!({
        "schema_version": report::SCHEMA_VERSION,
        "command": "suspend",
        "q": q,
        "homology": suspended,
    });
    let lines = vec![
        format!("suspension of the order-{q} twisted complex"),
        format!("  homology: {}", suspended.join(", ")),
    ];
    emit(cli, payload, lines);
    Ok(())
}

fn table_command(
    cli: &Cli,
    command: &str,
    model: &SolenoidModel,
    table: &solq_core::solenoid::DegreeTable,
    heading: &str,
) -> Result<(), Error> {
    let payload = json!({
        "schema_version": report::SCHEMA_VERSION,
        "command": command,
        "primes": model.primes().to_string(),
        "table": report::table_json(table, cli.trace),
    });
    let mut lines = vec![format!(
        "{heading} over {} (winding primes {})",
        table.ring,
        model.primes()
    )];
    report::push_table_text(&mut lines, table, cli.trace);
    emit(cli, payload, lines);
    Ok(())
}

fn clc_command(cli: &Cli, args: &ModelArgs) -> Result<(), Error> {
    let (model, ring) = parse_model(args)?;
    let clc = model.clc_report(&ring)?;
    let payload = json!({
        "schema_version": report::SCHEMA_VERSION,
        "command": "clc",
        "primes": model.primes().to_string(),
        "clc": report::clc_json(&clc),
    });
    let mut lines = vec![format!(
        "ladder local connectedness over {ring} (winding primes {})",
        model.primes()
    )];
    report::push_clc_text(&mut lines, &clc);
    emit(cli, payload, lines);
    Ok(())
}

fn classify_command(cli: &Cli, args: &ModelArgs) -> Result<(), Error> {
    let (model, ring) = parse_model(args)?;
    let verdict = classify(&model, &ring)?;
    let payload = json!({
        "schema_version": report::SCHEMA_VERSION,
        "command": "classify",
        "verdict": report::verdict_json(&verdict, cli.trace),
    });
    let mut lines = vec![format!(
        "classification over {ring} (winding primes {})",
        model.primes()
    )];
    report::push_verdict_text(&mut lines, &verdict);
    emit(cli, payload, lines);
    Ok(())
}

fn tower_command(
    cli: &Cli,
    op: &str,
    base_text: &str,
    primes_text: &str,
    depth: usize,
) -> Result<(), Error> {
    let base_ring: CoefficientRing = base_text.parse()?;
    let base = match &base_ring {
        CoefficientRing::Integers => TowerBase::Integers,
        CoefficientRing::Rationals => TowerBase::Rationals,
        CoefficientRing::Mod(m) => TowerBase::Cyclic(m.value()),
    };
    let primes: PrimeSet = primes_text.parse()?;
    let direction = if op == "colim" {
        Direction::Direct
    } else {
        Direction::Inverse
    };
    let tower = Tower::multiplication(direction, base, primes.clone(), 0)?;
    let analysis = match op {
        "lim" => tower.limit()?,
        "lim1" => tower.derived_limit()?,
        "colim" => tower.colimit()?,
        other => return Err(Error::InvalidTower(format!("unknown operation {other}"))),
    };

    let describe = match op {
        "lim" => "inverse limit",
        "lim1" => "derived inverse limit",
        _ => "colimit",
    };
    let mut lines = vec![format!(
        "{describe} of {base_ring} under multiplication by {{{primes}}}"
    )];
    lines.push(format!("  value: {}", analysis.value));

    let mut payload = json!({
        "schema_version": report::SCHEMA_VERSION,
        "command": "tower",
        "op": op,
        "base": base_ring.to_string(),
        "primes": primes.to_string(),
        "depth": depth,
        "value": analysis.value.to_string(),
        "probe": Value::Null,
        "mittag_leffler": Value::Null,
    });
    let obj = payload.as_object_mut().expect("payload is an object");

    if cli.trace {
        obj.insert("trace".to_string(), report::trace_json(&analysis.trace));
        report::push_trace_text(&mut lines, &analysis.trace, "  ");
    }

    if op == "lim1" {
        let ml = tower.mittag_leffler()?;
        let word = match ml.status {
            MittagLeffler::Holds => "holds",
            MittagLeffler::Fails => "fails",
            MittagLeffler::Unknown => "unknown",
        };
        obj.insert("mittag_leffler".to_string(), json!(word));
        lines.push(format!("  image stabilization: {word}"));
    } else if matches!(base_ring, CoefficientRing::Rationals) {
        let note = "probe skipped: rational levels are not materialized";
        obj.insert("probe".to_string(), json!({ "skipped": note }));
        lines.push(format!("  {note}"));
    } else if depth < 6 {
        let note = "probe skipped: needs depth at least 6";
        obj.insert("probe".to_string(), json!({ "skipped": note }));
        lines.push(format!("  {note}"));
    } else {
        let probe = tower.truncation_oracle(depth)?;
        let agrees = if probe.stabilized {
            analysis.value.to_fg().map(|fg| fg == probe.value)
        } else {
            None
        };
        obj.insert("probe".to_string(), report::oracle_json(&probe, agrees));
        report::push_oracle_text(&mut lines, &probe, agrees);
    }

    emit(cli, payload, lines);
    Ok(())
}
