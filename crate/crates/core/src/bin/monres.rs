use std::fs;
use std::io::{Read as _, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use monres::classify::{classify, Context};
use monres::io::{
    betti_json, format_ideal_file, lattice_json, parse_ideal_file, read_resolution, resolution_to_json,
};
use monres::monomial::{subset_from_indices, subset_label, subset_members};
use monres::poset::{poset_construction, rlm_construction, ConstructionOutput, HomologyBasis, Preimage, PreimageChoice};
use monres::resolution::{
    atomic_lattice_resolution, maximal_approximation, minimize_resolution, scarf_complex, taylor_resolution,
    verify_resolution, BettiTable, MultigradedComplex,
};
use monres::{BettiPoset, Chain, Error, FieldSpec, LcmLattice, MonomialIdeal, Result, Subset};

#[derive(Parser)]
#[command(name = "monres", version, about = "Minimal free resolutions of monomial ideals via lcm-lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Field characteristic: 0 for the rationals or a prime.
    #[arg(long = "char", global = true, env = "MONRES_FIELD")]
    characteristic: Option<u32>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Accept non-minimal generating sets and minimize them.
    #[arg(long, global = true)]
    minimize_gens: bool,
    /// Threads for the per-element homology computation.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct Input {
    /// Ideal file, or `-` for standard input.
    file: Option<PathBuf>,
    /// Ideal given inline, e.g. "vars a b; gens a^2 a*b".
    #[arg(short = 'e', long = "ideal", conflicts_with = "file")]
    text: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Route {
    /// Reduced homology of the complexes at lattice elements.
    Homology,
    /// Minimization of the Taylor resolution.
    Taylor,
}

#[derive(Subcommand)]
enum Command {
    /// List the lcm-lattice with labels and covers.
    Lattice(Input),
    /// Graded Betti numbers.
    Betti {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "homology")]
        via: Route,
    },
    /// Minimal resolution built along the lattice.
    Resolve(Input),
    /// The Taylor resolution.
    Taylor(Input),
    /// Minimize the Taylor resolution by consecutive cancellations.
    Minimize(Input),
    /// The poset construction.
    Poset {
        #[command(flatten)]
        input: Input,
        /// Homology basis override `LABEL=CHAIN[,CHAIN...]`, e.g. `123=-1+3`.
        #[arg(long = "basis")]
        basis: Vec<String>,
    },
    /// The RLM construction.
    Rlm {
        #[command(flatten)]
        input: Input,
        #[arg(long = "basis")]
        basis: Vec<String>,
        /// Preimage choice `LABEL:INDEX=CHAIN`, e.g. `123:0=-2+3`.
        #[arg(long = "preimage")]
        preimage: Vec<String>,
    },
    /// Maximal approximation of a resolution.
    Approx {
        #[command(flatten)]
        input: Input,
        /// Resolution JSON to approximate instead of the lattice resolution.
        #[arg(long)]
        resolution: Option<PathBuf>,
    },
    /// Decide membership in the ideal classes.
    Classify(Input),
    /// Check a resolution JSON dump.
    Verify {
        /// Resolution JSON file, or `-` for standard input.
        file: PathBuf,
    },
    /// Faces of the Scarf complex.
    Scarf(Input),
    /// Reproducible random ideals.
    Random {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        maxdeg: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

struct Outcome {
    text: String,
    code: u8,
}

fn ok(text: String) -> Result<Outcome> {
    Ok(Outcome { text, code: 0 })
}

fn read_source(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

struct Loaded {
    ideal: MonomialIdeal,
    field: FieldSpec,
}

fn load(cli: &Cli, input: &Input) -> Result<Loaded> {
    let text = match (&input.text, &input.file) {
        (Some(t), _) => t.clone(),
        (None, Some(p)) => read_source(p)?,
        (None, None) => return Err(Error::Parse("no ideal given (file, `-` or --ideal)".into())),
    };
    let f = parse_ideal_file(&text)?;
    let ideal = if cli.minimize_gens {
        MonomialIdeal::minimized(f.vars, f.gens)?
    } else {
        MonomialIdeal::new(f.vars, f.gens)?
    };
    let field = match cli.characteristic {
        Some(p) => FieldSpec::new(p)?,
        None => f.field.unwrap_or_default(),
    };
    Ok(Loaded { ideal, field })
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn emit_complex(cli: &Cli, f: &MultigradedComplex) -> String {
    if cli.json {
        pretty(&resolution_to_json(f))
    } else {
        f.render()
    }
}

/// Parses `123` or `1,12` into a generator subset.
fn parse_label(s: &str) -> Result<Subset> {
    let idx: Vec<usize> = if s.contains(',') {
        s.split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad label `{s}`"))))
            .collect::<Result<_>>()?
    } else {
        s.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("bad label `{s}`"))))
            .collect::<Result<_>>()?
    };
    if idx.iter().any(|&i| i == 0 || i > 63) {
        return Err(Error::Parse(format!("generator index out of range in `{s}`")));
    }
    Ok(subset_from_indices(&idx.iter().map(|i| i - 1).collect::<Vec<_>>()))
}

fn homology_basis(lat: &LcmLattice, field: FieldSpec, specs: &[String]) -> Result<HomologyBasis> {
    let mut hb = HomologyBasis::canonical(lat, field)?;
    for spec in specs {
        let (a, chains) = spec
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected LABEL=CHAIN in `{spec}`")))?;
        let chains = chains.split(',').map(|c| Chain::parse(field, c)).collect::<Result<Vec<_>>>()?;
        hb.set(lat, parse_label(a.trim())?, chains)?;
    }
    Ok(hb)
}

fn preimages(field: FieldSpec, specs: &[String]) -> Result<PreimageChoice> {
    if specs.is_empty() {
        return Ok(PreimageChoice::Canonical);
    }
    let mut out = Vec::new();
    for spec in specs {
        let (head, chain) = spec
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected LABEL:INDEX=CHAIN in `{spec}`")))?;
        let (a, k) = head.split_once(':').unwrap_or((head, "0"));
        let index = k.trim().parse().map_err(|_| Error::Parse(format!("bad index in `{spec}`")))?;
        out.push(Preimage { m: parse_label(a.trim())?, index, chain: Chain::parse(field, chain)? });
    }
    Ok(PreimageChoice::Explicit(out))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn emit_construction(cli: &Cli, out: &ConstructionOutput) -> String {
    if cli.json {
        return emit_complex(cli, &out.complex);
    }
    let mut s = out.complex.render();
    s.push_str(&format!("complex: {}\n", yes_no(out.is_complex)));
    match &out.report.failure {
        None => s.push_str("resolution: yes\n"),
        Some(f) => s.push_str(&format!("resolution: no ({f})\n")),
    }
    s.push_str(&format!("minimal: {}\n", yes_no(out.report.minimal)));
    s
}

fn betti_table(cli: &Cli, l: &Loaded, route: Route) -> Result<BettiTable> {
    match route {
        Route::Homology => {
            let lat = LcmLattice::build(&l.ideal);
            let bp = BettiPoset::compute(&lat, l.field, cli.jobs);
            Ok(BettiTable::from_homology(&lat, &bp))
        }
        Route::Taylor => Ok(minimize_resolution(&taylor_resolution(&l.ideal, l.field)?)?.0.betti_table()),
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Lattice(input) => {
            let l = load(cli, input)?;
            let lat = LcmLattice::build(&l.ideal);
            if cli.json {
                return ok(pretty(&lattice_json(&lat)));
            }
            let mut s = String::new();
            for e in lat.elements() {
                let covers: Vec<String> = e.lower.iter().map(|c| c.to_string()).collect();
                s.push_str(&format!(
                    "{:>4}  {:<24} A={:<10} rank {}  covers [{}]\n",
                    e.id,
                    l.ideal.format(&e.mdeg),
                    subset_label(e.label),
                    e.rank,
                    covers.join(" ")
                ));
            }
            ok(s)
        }
        Command::Betti { input, via } => {
            let l = load(cli, input)?;
            let t = betti_table(cli, &l, *via)?;
            if cli.json {
                ok(pretty(&betti_json(&t, &l.ideal)))
            } else {
                ok(t.render(&l.ideal))
            }
        }
        Command::Resolve(input) => {
            let l = load(cli, input)?;
            let lat = LcmLattice::build(&l.ideal);
            ok(emit_complex(cli, &atomic_lattice_resolution(&lat, l.field)?.resolution))
        }
        Command::Taylor(input) => {
            let l = load(cli, input)?;
            ok(emit_complex(cli, &taylor_resolution(&l.ideal, l.field)?))
        }
        Command::Minimize(input) => {
            let l = load(cli, input)?;
            let (f, tb) = minimize_resolution(&taylor_resolution(&l.ideal, l.field)?)?;
            let mut s = emit_complex(cli, &f);
            if let (false, Some(tb)) = (cli.json, tb) {
                s.push_str("Taylor basis:\n");
                s.push_str(&tb.render());
            }
            ok(s)
        }
        Command::Poset { input, basis } => {
            let l = load(cli, input)?;
            let lat = LcmLattice::build(&l.ideal);
            let hb = homology_basis(&lat, l.field, basis)?;
            ok(emit_construction(cli, &poset_construction(&lat, &hb)?))
        }
        Command::Rlm { input, basis, preimage } => {
            let l = load(cli, input)?;
            let lat = LcmLattice::build(&l.ideal);
            let hb = homology_basis(&lat, l.field, basis)?;
            let choice = preimages(l.field, preimage)?;
            ok(emit_construction(cli, &rlm_construction(&lat, &hb, &choice)?))
        }
        Command::Approx { input, resolution } => {
            let f = match resolution {
                Some(p) => read_resolution(&read_source(p)?)?,
                None => {
                    let l = load(cli, input)?;
                    atomic_lattice_resolution(&LcmLattice::build(&l.ideal), l.field)?.resolution
                }
            };
            ok(emit_complex(cli, &maximal_approximation(&f)))
        }
        Command::Classify(input) => {
            let l = load(cli, input)?;
            let lat = LcmLattice::build(&l.ideal);
            let ctx = Context::with_jobs(&lat, l.field, cli.jobs)?;
            let report = classify(&ctx)?;
            if cli.json {
                ok(pretty(&report))
            } else {
                ok(report.render())
            }
        }
        Command::Verify { file } => {
            let f = read_resolution(&read_source(file)?)?;
            let report = verify_resolution(&f);
            let code = if report.passed() { 0 } else { 2 };
            let text = if cli.json {
                pretty(&json!({
                    "passed": report.passed(),
                    "minimal": report.minimal,
                    "failure": report.failure.as_ref().map(|f| f.to_string()),
                    "mdeg": report.failure.as_ref().and_then(|f| f.mdeg.clone()),
                }))
            } else {
                match &report.failure {
                    None => format!("PASS (minimal: {})\n", yes_no(report.minimal)),
                    Some(fl) => format!("FAIL: {fl}\n"),
                }
            };
            Ok(Outcome { text, code })
        }
        Command::Scarf(input) => {
            let l = load(cli, input)?;
            let faces = scarf_complex(&l.ideal)?;
            if cli.json {
                let v: Vec<Vec<usize>> = faces.iter().map(|f| subset_members(f.0).map(|i| i + 1).collect()).collect();
                ok(pretty(&v))
            } else {
                let v: Vec<String> = faces.iter().map(|f| f.to_string()).collect();
                ok(format!("{}\n", v.join(" ")))
            }
        }
        Command::Random { r, n, maxdeg, seed, count } => {
            if *n == 0 || *maxdeg == 0 {
                return Err(Error::Precondition("--n and --maxdeg must be positive".into()));
            }
            let ideals: Vec<MonomialIdeal> = (0..*count)
                .map(|k| monres::random::random_ideal(seed.wrapping_add(k as u64), *r, *n, *maxdeg))
                .collect();
            if cli.json {
                let v: Vec<_> = ideals
                    .iter()
                    .map(|i| {
                        json!({
                            "vars": i.names(),
                            "gens": i.gens().iter().map(|g| i.format(g)).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                ok(pretty(&v))
            } else {
                ok(ideals.iter().map(|i| format_ideal_file(i) + "\n").collect())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut text = out.text;
            if cli.json && !text.ends_with('\n') {
                text.push('\n');
            }
            // a closed pipe (e.g. `| head`) is not an error
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
