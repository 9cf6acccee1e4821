use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use manypoints::compositum::{build_lattice, CompositumError, CompositumSpec, CurveReport};
use manypoints::gf::FieldSpec;
use manypoints::poly::set_default_seed;
use manypoints::quad::{Mode, QuadError};
use manypoints::search::{run_search, Family, SearchSpace};
use manypoints::tables::dataset::load_dataset_file;
use manypoints::tables::{
    hasse_weil_bound, load_dataset, serre_bound, verify_all, RowFlag, RowReport, RowVerdict, TableRow, VerifyOptions,
};
use serde::Serialize;

/// Exit statuses.
const EXIT_OTHER: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_NOT_DISJOINT: u8 = 3;
const EXIT_DEGENERATE: u8 = 4;
const EXIT_MISMATCH: u8 = 5;

#[derive(Parser)]
#[command(name = "manypoints", version, about = "Composita of quadratic extensions of F_q(x)")]
struct Cli {
    /// Seed for randomized polynomial factorization.
    #[arg(long, global = true, default_value_t = manypoints::poly::default_seed())]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CharMode {
    Kummer,
    ArtinSchreier,
}

#[derive(Subcommand)]
enum Command {
    /// Genus, rational places and a defining equation for one compositum.
    Construct {
        #[arg(long)]
        q: u32,
        /// Generator f_i; repeat for each (1 to 4).
        #[arg(long = "f", required = true, num_args = 1)]
        f: Vec<String>,
        /// Field modulus as comma-separated coefficients, constant term first.
        #[arg(long)]
        modulus: Option<String>,
        /// The element written `w`, as comma-separated coefficients.
        #[arg(long)]
        w: Option<String>,
        /// Fail unless the characteristic gives this mode.
        #[arg(long, value_enum)]
        mode: Option<CharMode>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Print the per-place log and the subfield data.
        #[arg(long, short)]
        verbose: bool,
    },
    /// Recompute (g, N) for the table rows.
    VerifyTables {
        #[arg(long)]
        q: Option<u32>,
        /// A single row, e.g. `q=3,g=4`.
        #[arg(long)]
        row: Option<String>,
        /// Also run the transcription-suspect and incomplete rows.
        #[arg(long)]
        include_suspect: bool,
        /// Use only the default `w`.
        #[arg(long)]
        no_scan: bool,
        /// Dataset file replacing the embedded one.
        #[arg(long)]
        dataset: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, short)]
        verbose: bool,
    },
    /// Exhaustive record search.
    Search {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        genus_cap: u64,
        /// Characteristic 2: pole places, `rational` or a maximal degree.
        #[arg(long, default_value = "rational")]
        even_poles: String,
        /// Characteristic 2: maximal (odd) pole order.
        #[arg(long, default_value_t = 1)]
        max_order: u32,
        /// Odd characteristic: maximal degree of the irreducible factors.
        #[arg(long, default_value_t = 2)]
        pool_degree: usize,
        /// Odd characteristic: maximal degree of f (defaults to the pool degree).
        #[arg(long)]
        max_degree: Option<usize>,
        /// Skip candidates equivalent under x -> a*x + b.
        #[arg(long)]
        symmetry: bool,
        #[arg(long, default_value_t = 8)]
        max_ties: usize,
        /// Write the records in dataset format to this file.
        #[arg(long)]
        export: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Serre and Hasse-Weil bounds.
    Bounds {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        g: u64,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn new(code: u8, msg: impl Into<String>) -> Failure {
        Failure { code, msg: msg.into() }
    }
}

impl From<CompositumError> for Failure {
    fn from(e: CompositumError) -> Failure {
        let code = match &e {
            CompositumError::Parse { .. } => EXIT_PARSE,
            CompositumError::NotDisjoint { .. } => EXIT_NOT_DISJOINT,
            CompositumError::Degenerate { .. } | CompositumError::Quad(QuadError::ZeroFunction) => EXIT_DEGENERATE,
            CompositumError::BadArity(_) | CompositumError::FieldMismatch => EXIT_PARSE,
            _ => EXIT_OTHER,
        };
        Failure::new(code, e.to_string())
    }
}

fn coeff_list(s: &str, what: &str) -> Result<Vec<u32>, Failure> {
    s.split(',')
        .map(|c| c.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{what} {s:?}: {e}")))
}

fn build_field(q: u32, modulus: Option<&str>, w: Option<&str>) -> Result<FieldSpec, Failure> {
    let bad = |e: manypoints::gf::FieldError| Failure::new(EXIT_PARSE, e.to_string());
    let mut field = FieldSpec::of_order(q).map_err(bad)?;
    if let Some(m) = modulus {
        field = FieldSpec::new(field.p(), field.e(), Some(&coeff_list(m, "modulus")?)).map_err(bad)?;
    }
    if let Some(w) = w {
        let elem = field.element(&coeff_list(w, "w")?).map_err(bad)?;
        field = field.with_generator(&elem).map_err(bad)?;
    }
    Ok(field)
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn render_curve(r: &CurveReport, verbose: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "field {}{}", r.field, if r.w_flagged { " (w is not a root of the modulus)" } else { "" });
    for (i, f) in r.f.iter().enumerate() {
        let _ = writeln!(s, "f{} = {}", i + 1, f);
    }
    let _ = writeln!(s, "genus {}", r.genus);
    let _ = writeln!(s, "N {}", r.rational_places);
    let _ = writeln!(s, "subfield genera {:?}", r.subfield_genera);
    let _ = writeln!(s, "Serre bound {}, Hasse-Weil bound {}", r.serre_bound, r.hasse_weil_bound);
    if let Some(eq) = &r.equation {
        let _ = writeln!(s, "equation {eq} = 0");
    }
    if verbose {
        let _ = writeln!(s, "subfields:");
        for sub in &r.subfields {
            let _ = writeln!(
                s,
                "  {:?}: f = {}, reduced {}, genus {}, ramified [{}]",
                sub.subset,
                sub.f,
                sub.reduced,
                sub.genus,
                sub.ramified.join(", ")
            );
        }
        let _ = writeln!(s, "places:");
        for p in &r.place_log {
            let _ = writeln!(s, "  {}: {} -> {}", p.place, p.statuses, p.contribution);
        }
    }
    s
}

#[allow(clippy::too_many_arguments)]
fn construct(
    q: u32,
    f: &[String],
    modulus: Option<&str>,
    w: Option<&str>,
    mode: Option<CharMode>,
    format: Format,
    verbose: bool,
) -> Result<String, Failure> {
    let field = build_field(q, modulus, w)?;
    if f.len() > 4 {
        return Err(Failure::new(EXIT_PARSE, format!("at most 4 generators, got {}", f.len())));
    }
    match (mode, Mode::of(&field)) {
        (Some(CharMode::Kummer), Mode::ArtinSchreier) | (Some(CharMode::ArtinSchreier), Mode::Kummer) => {
            return Err(Failure::new(EXIT_PARSE, format!("requested mode does not match characteristic {}", field.p())));
        }
        _ => {}
    }
    let exprs: Vec<&str> = f.iter().map(String::as_str).collect();
    let spec = CompositumSpec::parse(&field, &exprs)?;
    let lattice = build_lattice(&spec)?;
    let report = CurveReport::build(&lattice, true)?;
    Ok(match format {
        Format::Json => json(&report),
        Format::Text => render_curve(&report, verbose),
    })
}

fn parse_row_selector(s: &str) -> Result<(u32, Option<u64>), Failure> {
    let mut q = None;
    let mut g = None;
    for part in s.split(',') {
        let (k, v) = part.split_once('=').ok_or_else(|| Failure::new(EXIT_PARSE, format!("bad row {s:?}")))?;
        let bad = |_| Failure::new(EXIT_PARSE, format!("bad row {s:?}"));
        match k.trim() {
            "q" => q = Some(v.trim().parse::<u32>().map_err(bad)?),
            "g" if v.trim() == "?" => g = None,
            "g" => g = Some(v.trim().parse::<u64>().map_err(bad)?),
            _ => return Err(Failure::new(EXIT_PARSE, format!("bad row {s:?}"))),
        }
    }
    Ok((q.ok_or_else(|| Failure::new(EXIT_PARSE, format!("row {s:?} lacks q")))?, g))
}

fn verdict_line(r: &RowReport) -> String {
    match &r.verdict {
        RowVerdict::Match { genus, n, w, generators_tried } => {
            format!("match g={genus} N={n} (w={w:?}, {generators_tried} generator(s) tried)")
        }
        RowVerdict::Mismatch { trials, .. } => {
            let got: Vec<String> = trials
                .iter()
                .map(|t| match (t.genus, t.n) {
                    (Some(g), Some(n)) => format!("({g},{n})"),
                    _ => format!("error: {}", t.error.clone().unwrap_or_default()),
                })
                .collect();
            let mut shown = got.clone();
            shown.dedup();
            format!("MISMATCH: computed {}", shown.join(" "))
        }
        RowVerdict::Skipped { reason } => format!("skipped: {reason}"),
        RowVerdict::Unusable { error } => format!("unusable: {error}"),
    }
}

fn render_row(s: &mut String, r: &RowReport, verbose: bool) {
    let flags: Vec<&str> = r.flags.iter().filter(|f| **f != RowFlag::Clean).map(|f| f.as_str()).collect();
    let flags = if flags.is_empty() { String::new() } else { format!(" [{}]", flags.join(",")) };
    let _ = writeln!(s, "{} N={}{}: {}", r.label, r.expected_n, flags, verdict_line(r));
    if let Some(eq) = &r.equation {
        match eq.equal {
            Some(true) => {}
            Some(false) => {
                let _ = writeln!(s, "  printed equation differs at Y^{:?}", eq.differing_degrees);
            }
            None => {
                let _ = writeln!(s, "  printed equation not compared: {}", eq.detail.clone().unwrap_or_default());
            }
        }
    }
    if let RowVerdict::Mismatch { place_log, .. } = &r.verdict {
        for p in place_log {
            let _ = writeln!(s, "  {p}");
        }
    }
    if let Some(rec) = &r.reconstruction {
        let _ = writeln!(s, "  reconstruction: {}", verdict_line(rec));
    }
    if verbose {
        let _ = writeln!(s, "  line {}", r.line);
    }
}

#[allow(clippy::too_many_arguments)]
fn verify_tables(
    q: Option<u32>,
    row: Option<&str>,
    include_suspect: bool,
    no_scan: bool,
    dataset: Option<&PathBuf>,
    format: Format,
    verbose: bool,
) -> Result<(String, bool), Failure> {
    let rows = match dataset {
        Some(p) => load_dataset_file(p),
        None => load_dataset(),
    }
    .map_err(|e| Failure::new(EXIT_OTHER, e.to_string()))?;
    let selector = row.map(parse_row_selector).transpose()?;
    let filter = |r: &TableRow| {
        q.is_none_or(|q| r.q == q)
            && selector.is_none_or(|(sq, sg)| r.q == sq && r.expected_g == sg)
            && (include_suspect || selector.is_some() || r.is_clean())
    };
    let options = VerifyOptions { generator_scan: !no_scan, ..VerifyOptions::default() };
    let summary = verify_all(&rows, filter, options);
    if summary.rows.is_empty() {
        return Err(Failure::new(EXIT_OTHER, "no rows selected"));
    }
    let ok = summary.all_clean_match();
    let out = match format {
        Format::Json => json(&summary),
        Format::Text => {
            let mut s = String::new();
            for r in &summary.rows {
                render_row(&mut s, r, verbose);
            }
            let _ = writeln!(
                s,
                "{} rows: {} matched, {} mismatched, {} skipped, {} unusable; clean failures: {}",
                summary.rows.len(),
                summary.matched,
                summary.mismatched,
                summary.skipped,
                summary.unusable,
                if summary.failures.is_empty() { "none".to_string() } else { summary.failures.join(", ") }
            );
            s
        }
    };
    Ok((out, ok))
}

#[allow(clippy::too_many_arguments)]
fn search(
    q: u32,
    n: usize,
    genus_cap: u64,
    even_poles: &str,
    max_order: u32,
    pool_degree: usize,
    max_degree: Option<usize>,
    symmetry: bool,
    max_ties: usize,
    export: Option<&PathBuf>,
    format: Format,
) -> Result<String, Failure> {
    let field = build_field(q, None, None)?;
    let family = match Mode::of(&field) {
        Mode::ArtinSchreier => {
            let place_degree = if even_poles == "rational" {
                1
            } else {
                even_poles
                    .parse::<usize>()
                    .map_err(|_| Failure::new(EXIT_PARSE, format!("--even-poles {even_poles:?}")))?
            };
            Family::Even { place_degree, max_order }
        }
        Mode::Kummer => Family::Odd { pool_degree, max_degree: max_degree.unwrap_or(pool_degree) },
    };
    let mut space =
        SearchSpace::new(&field, n, family, genus_cap).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    space.symmetry = symmetry;
    space.max_ties = max_ties;
    let book = run_search(&space);
    book.reverify().map_err(|e| Failure::new(EXIT_OTHER, e))?;
    if let Some(path) = export {
        std::fs::write(path, book.to_dataset())
            .map_err(|e| Failure::new(EXIT_OTHER, format!("{}: {e}", path.display())))?;
    }
    Ok(match format {
        Format::Json => json(&book),
        Format::Text => format!("{book}\n{}", book.to_dataset()),
    })
}

fn bounds(q: u64, g: u64) -> Result<String, Failure> {
    FieldSpec::of_order(q as u32).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    Ok(format!("q={q} g={g}: Serre {}, Hasse-Weil {}\n", serre_bound(q, g), hasse_weil_bound(q, g)))
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    set_default_seed(cli.seed);
    match cli.command {
        Command::Construct { q, f, modulus, w, mode, format, verbose } => {
            construct(q, &f, modulus.as_deref(), w.as_deref(), mode, format, verbose).map(|s| (s, true))
        }
        Command::VerifyTables { q, row, include_suspect, no_scan, dataset, format, verbose } => {
            verify_tables(q, row.as_deref(), include_suspect, no_scan, dataset.as_ref(), format, verbose)
        }
        Command::Search {
            q,
            n,
            genus_cap,
            even_poles,
            max_order,
            pool_degree,
            max_degree,
            symmetry,
            max_ties,
            export,
            format,
        } => search(
            q,
            n,
            genus_cap,
            &even_poles,
            max_order,
            pool_degree,
            max_degree,
            symmetry,
            max_ties,
            export.as_ref(),
            format,
        )
        .map(|s| (s, true)),
        Command::Bounds { q, g } => bounds(q, g).map(|s| (s, true)),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_MISMATCH)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
