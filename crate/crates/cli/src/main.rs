use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use symchain::complex::{direct_sum, koszul, tensor};
use symchain::homology::{homology_bounded, homology_presented, is_quasi_iso};
use symchain::io::{parse_complex, parse_map, serialize_complex};
use symchain::minimal::minimize;
use symchain::series::{poinc_check, rank_series, verify_series_identity, Sign};
use symchain::sym2::{alpha, sym2, weak_sym2, WeakSym2};
use symchain::theorems::{check_s2fpd01, check_s2fpd02, check_symm07, check_symm07pp, check_symm09, run_paper_corpus};
use symchain::{io::serialize_map, Error, FreeComplex, Ring, Scalar};

const BOUND_VAR: &str = "SYMCHAIN_DEGREE_BOUND";

#[derive(Parser)]
#[command(name = "symchain", version, about = "Symmetric squares of chain complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a complex document is well formed and ∂∂ = 0
    Validate { file: PathBuf },
    /// Σⁿ of a complex
    Shift {
        file: PathBuf,
        #[arg(short = 'n', allow_hyphen_values = true)]
        n: i64,
    },
    /// Direct sum of two complexes
    Dsum { a: PathBuf, b: PathBuf },
    /// Tensor product of two complexes
    Tensor { a: PathBuf, b: PathBuf },
    /// Koszul complex on a list of ring elements
    Koszul {
        #[arg(long)]
        ring: String,
        /// Comma-separated elements, e.g. `x,y`
        #[arg(long, allow_hyphen_values = true)]
        elements: String,
    },
    /// Second symmetric power S²(X)
    Sym2 { file: PathBuf },
    /// Weak second symmetric power s²(X)
    WeakSym2 { file: PathBuf },
    /// The map α: X⊗X → X⊗X
    Alpha { file: PathBuf },
    /// Homology of a complex
    Homology {
        file: PathBuf,
        /// Internal-degree bound for graded rings
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Whether a chain map is a quasi-isomorphism (exit 1 if not)
    QuasiIso {
        file: PathBuf,
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Rank series of X, or with --verify the rank series identity for S²(X)
    Series {
        file: PathBuf,
        #[arg(long)]
        verify: bool,
    },
    /// Minimal model of a complex over a local ring
    Minimize { file: PathBuf },
    /// Q(t)² ± Q(−t²) for a truncated power series Q
    Poinc {
        /// Comma-separated coefficients r0,r1,...
        #[arg(long)]
        coeffs: String,
        #[arg(long, allow_hyphen_values = true)]
        sign: Sign,
        #[arg(long, default_value_t = 20)]
        order: usize,
    },
    /// Check one of the structural theorems on a complex (exit 1 if it fails)
    Check {
        theorem: Theorem,
        file: PathBuf,
        #[arg(long)]
        bound: Option<i64>,
        /// Print the report as JSON
        #[arg(long)]
        json: bool,
    },
    /// The worked-example corpus
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    Run,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    Symm07,
    Symm07pp,
    S2fpd01,
    S2fpd02,
    Symm09,
}

/// Exit statuses: 0 success, 1 mathematical check failed, 2 bad input.
enum Failure {
    Check(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn complex(path: &Path) -> Result<FreeComplex, Failure> {
    parse_complex(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn bound(flag: Option<i64>) -> Result<Option<i64>, Failure> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(BOUND_VAR) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| Failure::Input(format!("{BOUND_VAR}={v:?} is not an integer"))),
        Err(_) => Ok(None),
    }
}

fn list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, Failure> {
    s.split(',')
        .map(|p| p.trim().parse().map_err(|_| Failure::Input(format!("bad {what} {p:?}"))))
        .collect()
}

fn run(cmd: Command) -> Outcome {
    Ok(match cmd {
        Command::Validate { file } => {
            let text = read(&file)?;
            match parse_complex(&text) {
                Ok(x) => format!("valid: ranks {:?} from degree {}\n", x.ranks(), x.lo()),
                Err(Error::InvalidComplex(v)) => return Err(Failure::Check(format!("invalid: {v}"))),
                Err(e) => return Err(Failure::Input(format!("{}: {e}", file.display()))),
            }
        }
        Command::Shift { file, n } => serialize_complex(&complex(&file)?.shift(n)),
        Command::Dsum { a, b } => serialize_complex(&direct_sum(&complex(&a)?, &complex(&b)?)?),
        Command::Tensor { a, b } => serialize_complex(&tensor(&complex(&a)?, &complex(&b)?)?),
        Command::Koszul { ring, elements } => {
            let ring: Ring = ring.parse()?;
            let elems = elements.split(',').map(|s| Scalar::parse(&ring, s.trim())).collect::<Result<Vec<_>, _>>()?;
            serialize_complex(&koszul(&elems)?)
        }
        Command::Sym2 { file } => serialize_complex(&sym2(&complex(&file)?)?.complex),
        Command::WeakSym2 { file } => match weak_sym2(&complex(&file)?)? {
            WeakSym2::Free(s) => serialize_complex(&s.complex),
            WeakSym2::Presented { complex, .. } => {
                let mut out = String::from("presented complex (generators / relations per degree)\n");
                for n in complex.lo()..=complex.hi() {
                    out.push_str(&format!("degree {n}: {} generators\n", complex.generators(n)));
                    let rel = complex.relations(n);
                    if rel.cols() > 0 {
                        out.push_str(&format!("  relations: {:?}\n", rel.to_strings()));
                    }
                    if n > complex.lo() {
                        out.push_str(&format!("  d{n}: {:?}\n", complex.diff(n).to_strings()));
                    }
                }
                out.push_str("homology:\n");
                out.push_str(&homology_presented(&complex)?.to_string());
                out
            }
        },
        Command::Alpha { file } => serialize_map(&alpha(&complex(&file)?)?),
        Command::Homology { file, bound: b } => {
            let h = homology_bounded(&complex(&file)?, bound(b)?)?;
            let mut out = h.to_string();
            if h.is_exact() {
                out.push_str("exact\n");
            }
            out
        }
        Command::QuasiIso { file, bound: b } => {
            let f = parse_map(&read(&file)?).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
            let v = is_quasi_iso(&f, bound(b)?)?;
            if !v.holds() {
                return Err(Failure::Check(format!("quasi-isomorphism: {v}")));
            }
            format!("quasi-isomorphism: {v}\n")
        }
        Command::Series { file, verify } => {
            let x = complex(&file)?;
            if verify {
                let id = verify_series_identity(&x)?;
                if !id.holds() {
                    return Err(Failure::Check(format!("identity fails: {} vs {}", id.lhs, id.rhs)));
                }
                format!("identity holds: {}\n", id.lhs)
            } else {
                format!("{}\n", rank_series(&x))
            }
        }
        Command::Minimize { file } => serialize_complex(&minimize(&complex(&file)?)?.complex),
        Command::Poinc { coeffs, sign, order } => {
            let r = poinc_check(&list::<u64>(&coeffs, "coefficient")?, sign, order)?;
            let mut out = format!("expansion to order {}: {:?}\n", r.order, r.expansion);
            match r.value() {
                Some(v) => out.push_str(&format!("constant: {v}\n")),
                None => out.push_str("constant: no\n"),
            }
            out.push_str(&format!("higher coefficients vanish: {}\n", r.higher_vanish));
            for c in &r.cases {
                out.push_str(&format!("({}) {}: {}\n", c.label, c.statement, match (c.applies, c.conclusion) {
                    (false, _) => "not applicable",
                    (true, true) => "holds",
                    (true, false) => "FAILS",
                }));
            }
            if !r.consistent() {
                return Err(Failure::Check(out));
            }
            out
        }
        Command::Check { theorem, file, bound: b, json } => {
            let x = complex(&file)?;
            let b = bound(b)?;
            let rep = match theorem {
                Theorem::Symm07 => check_symm07(&x, b)?,
                Theorem::Symm07pp => check_symm07pp(&x, b)?,
                Theorem::S2fpd01 => check_s2fpd01(&x)?,
                Theorem::S2fpd02 => check_s2fpd02(&x)?,
                Theorem::Symm09 => check_symm09(&x, b)?,
            };
            let out = if json { rep.to_json() + "\n" } else { rep.to_string() };
            if !rep.passed() {
                return Err(Failure::Check(out));
            }
            out
        }
        Command::Corpus { action: CorpusAction::Run } => {
            let results = run_paper_corpus();
            let mut out = String::new();
            for r in &results {
                out.push_str(&format!("{} {}: {}\n", if r.passed { "pass" } else { "FAIL" }, r.id, r.detail));
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            if failed > 0 {
                out.push_str(&format!("{failed} of {} fixtures failed\n", results.len()));
                return Err(Failure::Check(out));
            }
            out.push_str(&format!("all {} fixtures pass\n", results.len()));
            out
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check(out)) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
