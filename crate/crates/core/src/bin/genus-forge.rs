use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use genus_forge::arith::UniPoly;
use genus_forge::coadjoint::{crosscheck_qi, orbit_fixed_points, OrbitSpec};
use genus_forge::localization::{
    build_relation, chern_numbers, chi_y_from_counts, cpn_fixed_points, divides_chi_y, genus_qexp,
    hilbert_polynomial, verify_relation, DivisionOutcome, FixedPointData,
};
use genus_forge::modular::{eisenstein, qn_expansion_via_product, QSeriesJson};
use genus_forge::polytope::{combinatorial_index, h_divisibility, FHVectors, PolytopeInput};
use genus_forge::selftest::{criterion_ids, run_all, run_criterion, DEFAULT_SEED};
use genus_forge::symfunc::{chi_y_power_series, f_lambda_csv, f_lambda_table, genus_value, partitions_at_most};
use genus_forge::Error;

#[derive(Parser)]
#[command(name = "genus-forge", version, about = "Exact elliptic genera, Eisenstein relations and localization")]
struct Cli {
    /// q-adic precision: series are exact below q^PREC.
    #[arg(long, global = true, env = "GENUS_FORGE_PREC", default_value_t = 15)]
    prec: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// q-expansion of G_{k,N}.
    Eisenstein { k: u32, level: i64 },
    /// Taylor coefficients of Q_N below x^X, from its product expansion.
    Qn {
        level: u32,
        #[arg(long, default_value_t = 4)]
        x_order: u32,
    },
    /// f_lambda table for dimension 2n; with --fixed-points, the genus of that manifold by two routes.
    Genus {
        level: u32,
        n: usize,
        #[arg(long)]
        fixed_points: Option<String>,
    },
    /// chi_y genus from fixed-point counts and from Chern numbers, plus the index divisibility test.
    Chiy {
        fixed_points: String,
        #[arg(long)]
        index: Option<u32>,
    },
    /// Relations among level-N Eisenstein series for weights k_min..=k_max.
    Relations {
        fixed_points: String,
        level: u32,
        k_min: u32,
        k_max: u32,
        #[arg(long)]
        verify: bool,
    },
    /// Hilbert polynomials H_m(x) by equivariant localization.
    Hilbert {
        fixed_points: String,
        level: u32,
        /// A single m; all 0..=n when omitted.
        #[arg(long)]
        m: Option<usize>,
    },
    /// Fixed-point data of a coadjoint orbit given as {"family","rank","J"}.
    Coadjoint {
        orbit: String,
        /// Circle direction, comma separated; random generic if omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        xi: Option<Vec<i64>>,
        /// Cross-check divided differences against localization for n <= |I| <= n + EXTRA.
        #[arg(long)]
        crosscheck: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// h-vector, combinatorial index and divisibility for {"f":[..]} or {"edges":[..]}.
    Polytope {
        input: String,
        #[arg(long)]
        index: Option<u32>,
    },
    /// Runs the built-in verification suite.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        only: Option<u8>,
    },
}

enum Failure {
    Verification(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Reads `-` (stdin), a path, or inline JSON.
fn read_input(arg: &str) -> Result<String, Failure> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(e.to_string()))?;
        return Ok(s);
    }
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("{arg}: {e}")))
}

/// `cpn:N:w1,w2,…` or fixed-point JSON.
fn load_fixed_points(arg: &str) -> Result<FixedPointData, Failure> {
    if let Some(rest) = arg.strip_prefix("cpn:") {
        let (n, ws) = rest.split_once(':').ok_or_else(|| Failure::Usage("expected cpn:N:w1,…,wN".into()))?;
        let n: usize = n.parse().map_err(|_| Failure::Usage(format!("bad n in {arg}")))?;
        let w = ws
            .split(',')
            .map(|s| s.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| Failure::Usage(format!("bad weights in {arg}")))?;
        return Ok(cpn_fixed_points(n, &w)?);
    }
    Ok(FixedPointData::from_json(&read_input(arg)?)?)
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable output")
}

fn run(cli: Cli) -> Outcome {
    if cli.prec == 0 {
        return Err(Failure::Usage("--prec must be at least 1".into()));
    }
    let prec = cli.prec;
    match cli.command {
        Command::Eisenstein { k, level } => {
            let g = eisenstein(k, level, prec)?;
            match cli.format {
                Format::Json => println!("{}", json(&QSeriesJson::from_series(&g))),
                _ => println!("{g}"),
            }
        }
        Command::Qn { level, x_order } => {
            let qn = qn_expansion_via_product(level, x_order, prec)?;
            for (j, c) in qn.coeffs.iter().enumerate() {
                match cli.format {
                    Format::Json => println!("{}", serde_json::to_string(&QSeriesJson::from_series(c)).expect("json")),
                    _ => println!("a_{j} = {c}"),
                }
            }
        }
        Command::Genus { level, n, fixed_points } => {
            let table = f_lambda_table(level, n, prec)?;
            match cli.format {
                Format::Csv => print!("{}", f_lambda_csv(&[(level, table.clone())])?),
                Format::Json => {
                    let rows: Vec<_> =
                        table.iter().map(|(p, s)| (p.to_string(), QSeriesJson::from_series(s))).collect();
                    println!("{}", json(&rows));
                }
                Format::Text => {
                    for (p, s) in &table {
                        println!("f_{p} = {s}");
                    }
                }
            }
            if let Some(arg) = fixed_points {
                let fpd = load_fixed_points(&arg)?;
                if fpd.n != n {
                    return Err(Failure::Usage(format!("fixed-point data has n = {}, table has n = {n}", fpd.n)));
                }
                let chern = chern_numbers(&fpd)?;
                let mut assembled = genus_forge::modular::QSeries::zero(genus_forge::modular::q_ctx(level, prec));
                for (p, s) in &table {
                    assembled = assembled.try_add(&s.scale_by(&chern[p]))?;
                }
                let localized = genus_qexp(&fpd, level, prec)?;
                println!("genus (Chern numbers)  = {assembled}");
                println!("genus (localization)   = {localized}");
                if assembled != localized {
                    return Err(Failure::Verification("the two genus routes disagree".into()));
                }
            }
        }
        Command::Chiy { fixed_points, index } => {
            let fpd = load_fixed_points(&fixed_points)?;
            let counts = chi_y_from_counts(&fpd)?;
            let genus: UniPoly = genus_value(&chi_y_power_series(fpd.n), &chern_numbers(&fpd)?, fpd.n)?;
            println!("chi_y (fixed-point counts) = {counts}");
            println!("chi_y (Chern numbers)      = {genus}");
            if counts != genus {
                return Err(Failure::Verification("chi_y routes disagree".into()));
            }
            if let Some(k0) = index.or(fpd.asserted_index) {
                match divides_chi_y(&counts, k0)? {
                    DivisionOutcome::Quotient(q) => println!("divisible by the index-{k0} factor; quotient {q}"),
                    DivisionOutcome::Remainder(r) => {
                        return Err(Failure::Verification(format!("index {k0}: remainder {r}")));
                    }
                }
            }
        }
        Command::Relations { fixed_points, level, k_min, k_max, verify } => {
            let fpd = load_fixed_points(&fixed_points)?;
            let mut rels = Vec::new();
            for k in k_min..=k_max {
                let rel = build_relation(&fpd, level, k)?;
                let status = if verify {
                    let check = verify_relation(&rel, prec)?;
                    if !check.passed() {
                        return Err(Failure::Verification(format!("k = {k}: {rel} leaves {}", check.residual)));
                    }
                    format!("  [verified through q^{}]", prec - 1)
                } else {
                    String::new()
                };
                if cli.format == Format::Text {
                    println!("k = {k}: {}{status}", rel.primitive());
                }
                rels.push(rel);
            }
            if cli.format == Format::Json {
                println!("{}", json(&rels));
            }
        }
        Command::Hilbert { fixed_points, level, m } => {
            let fpd = load_fixed_points(&fixed_points)?;
            let ms: Vec<usize> = m.map(|m| vec![m]).unwrap_or_else(|| (0..=fpd.n).collect());
            for m in ms {
                let h = hilbert_polynomial(&fpd, level, m)?;
                println!("H_{m}(x) = {}", h.polynomial);
            }
        }
        Command::Coadjoint { orbit, xi, crosscheck, seed } => {
            let orbit = OrbitSpec::from_json(&read_input(&orbit)?)?;
            let xi = match xi {
                Some(xi) => xi,
                None => {
                    let mut rng = StdRng::seed_from_u64(seed);
                    loop {
                        let cand: Vec<i64> =
                            (0..orbit.root_system.dim()).map(|_| rng.gen_range(-9..=9)).collect();
                        if orbit_fixed_points(&orbit, &cand).is_ok() {
                            break cand;
                        }
                    }
                }
            };
            let fpd = orbit_fixed_points(&orbit, &xi)?;
            if let Some(extra) = crosscheck {
                let n = orbit.n() as u32;
                for k in n..=n + extra {
                    for p in partitions_at_most(k, orbit.n()) {
                        let r = crosscheck_qi(&orbit, &p, &xi)?;
                        eprintln!("q_{p}: {} / {}", r.divided_difference, r.localization);
                        if !r.passed() {
                            return Err(Failure::Verification(format!("q_{p} differs at xi = {xi:?}")));
                        }
                    }
                }
            }
            println!("{}", fpd.to_json());
        }
        Command::Polytope { input, index } => {
            let parsed: PolytopeInput =
                serde_json::from_str(&read_input(&input)?).map_err(|e| Failure::Usage(e.to_string()))?;
            match parsed {
                PolytopeInput::F { f } => {
                    let fh = FHVectors::from_f(f)?;
                    println!("h = {:?}", fh.h);
                    if !fh.is_palindromic() {
                        println!("warning: h-vector is not palindromic");
                    }
                    if let Some(k0) = index {
                        match h_divisibility(&fh.h, k0)? {
                            DivisionOutcome::Quotient(q) => println!("divisible by the index-{k0} factor; quotient {q}"),
                            DivisionOutcome::Remainder(r) => {
                                return Err(Failure::Verification(format!("index {k0}: remainder {r}")));
                            }
                        }
                    }
                }
                PolytopeInput::Edges { edges } => {
                    println!("combinatorial index = {}", combinatorial_index(&edges)?);
                }
            }
        }
        Command::Selftest { seed, only } => {
            let reports = match only {
                Some(id) => vec![run_criterion(id, seed).ok_or_else(|| {
                    Failure::Usage(format!("unknown criterion {id}; known: {:?}", criterion_ids().collect::<Vec<_>>()))
                })?],
                None => run_all(seed),
            };
            for r in &reports {
                println!("{r}");
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            if failed > 0 {
                return Err(Failure::Verification(format!("{failed} criteria failed (seed {seed})")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
