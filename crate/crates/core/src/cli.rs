//! The `hforge` command line.
//!
//! Exit status is 0 on success, 1 on a domain error (a JSON object
//! `{"error": kind, "message": ...}` goes to standard error) and 2 on a usage
//! error.

use std::io::Read as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::analysis::{defect, equivalent, h3_submatrix_scan, DEFAULT_NODE_BUDGET, DEFAULT_RANK_TOL, H3_TOL};
use crate::error::{invalid, Error, Result};
use crate::io::{matrix_from_json, matrix_to_json};
use crate::matrix::{is_hadamard, root_of_unity, Matrix, UnimodularScalar, DEFAULT_TOL};
use crate::mubs::{
    build_b_set, build_m_set, m_multiplication_table, m_set_algebra_check, m_to_bc9_params, verify_mub, MubSet,
    MULTIPLICATION_TABLE,
};
use crate::orbits::{
    backelin, bc9_matrix, bc9a, bc9b, fourier9, special, zeta_to_params, BackelinParams, Bc9Params, FourierParams,
    Sign, ZetaPoint,
};
use crate::scan::{
    backelin_intersections, fourier_butson_census, records_to_csv, summarize, zeta_defect_scan, GridSpec,
};

#[derive(Parser, Debug)]
#[command(name = "hforge", version, about = "Complex Hadamard matrices of order 9")]
struct Cli {
    /// Tolerance (checks default to 1e-9, rank thresholds to 1e-8).
    #[arg(long, global = true, env = "HFORGE_TOL")]
    tol: Option<f64>,

    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a matrix and write it as JSON.
    Construct(ConstructArgs),
    /// Check a matrix or a MUB set.
    Verify {
        #[command(subcommand)]
        what: VerifyWhat,
    },
    /// Defect report of a matrix file.
    Defect {
        /// Matrix file, `-` for standard input.
        #[arg(default_value = "-")]
        file: PathBuf,
    },
    /// Decide equivalence of two matrix files.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// List 3x3 Hadamard submatrices.
    ReduceScan {
        #[arg(default_value = "-")]
        file: PathBuf,
    },
    /// Defect over a grid of the zeta plane (CSV).
    ScanZeta(ScanArgs),
    /// Defect histogram of the 6^4 sixth-root points of the block Fourier orbit.
    CensusButson,
    /// The 27 pairwise intersections of the Backelin defect-6 loci.
    BackelinIntersections,
    /// Verify both MUB sets, the multiplication table and the parameter table.
    MubCheck,
}

#[derive(Subcommand, Debug)]
enum VerifyWhat {
    /// Hadamard test of a matrix file.
    Hadamard {
        #[arg(default_value = "-")]
        file: PathBuf,
    },
    /// Unbiasedness of a built-in set or of a list of basis files.
    Mub {
        #[arg(long, value_enum, conflicts_with = "files")]
        set: Option<MubChoice>,
        files: Vec<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MubChoice {
    B,
    M,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    /// BCCB form, from `--zeta` if given, else from `--x --y --u --w`.
    Bc9,
    Bc9Params,
    Bc9Zeta,
    Bc9a,
    Bc9b,
    Fourier9,
    Backelin,
    Special,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: Family,

    /// Parameters of the BCCB form (`re,im` or `p/q` meaning exp(2 pi i p/q)).
    #[arg(long, value_parser = parse_unimodular, allow_hyphen_values = true)]
    x: Option<UnimodularScalar>,
    #[arg(long, value_parser = parse_unimodular, allow_hyphen_values = true)]
    y: Option<UnimodularScalar>,
    #[arg(long, value_parser = parse_unimodular, allow_hyphen_values = true)]
    u: Option<UnimodularScalar>,
    #[arg(long, value_parser = parse_unimodular, allow_hyphen_values = true)]
    w: Option<UnimodularScalar>,

    /// `re,im`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    zeta: Option<Complex64>,
    #[arg(long, default_value = "++", value_parser = parse_branch, allow_hyphen_values = true)]
    branch: (Sign, Sign),

    #[arg(long, value_parser = parse_unimodular, allow_hyphen_values = true)]
    mu: Option<UnimodularScalar>,
    #[arg(long, value_parser = parse_unimodular, allow_hyphen_values = true)]
    xi: Option<UnimodularScalar>,
    /// `p/q`: the parameter of bc9a or bc9b as exp(2 pi i p/q).
    #[arg(long, value_parser = parse_phase, allow_hyphen_values = true)]
    phase: Option<UnimodularScalar>,

    #[arg(long, value_parser = parse_unimodular, allow_hyphen_values = true)]
    x1: Option<UnimodularScalar>,
    #[arg(long, value_parser = parse_unimodular, allow_hyphen_values = true)]
    x2: Option<UnimodularScalar>,
    #[arg(long, value_parser = parse_unimodular, allow_hyphen_values = true)]
    x3: Option<UnimodularScalar>,
    #[arg(long, value_parser = parse_unimodular, allow_hyphen_values = true)]
    x4: Option<UnimodularScalar>,

    /// Backelin `v`; `--u` doubles as the Backelin `u`.
    #[arg(long, value_parser = parse_unimodular, allow_hyphen_values = true)]
    v: Option<UnimodularScalar>,

    /// Named matrix for `--family special`.
    #[arg(long, default_value = "BC9AcapB")]
    name: String,

    /// Root-of-unity order for the phase-form file.
    #[arg(long)]
    q: Option<u32>,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, default_value_t = 401)]
    resolution: usize,
    #[arg(long, default_value_t = -3.2, allow_hyphen_values = true)]
    re_min: f64,
    #[arg(long, default_value_t = 3.2, allow_hyphen_values = true)]
    re_max: f64,
    #[arg(long, default_value_t = -3.2, allow_hyphen_values = true)]
    im_min: f64,
    #[arg(long, default_value_t = 3.2, allow_hyphen_values = true)]
    im_max: f64,
    /// Comma-separated branch pairs, e.g. `++,+-`.
    #[arg(long, default_value = "++", value_delimiter = ',', value_parser = parse_branch, allow_hyphen_values = true)]
    branches: Vec<(Sign, Sign)>,
    /// Print a JSON summary (histogram, marching mask) instead of the CSV;
    /// with `--out` the CSV still goes to the file.
    #[arg(long)]
    summary: bool,
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected re,im, got {s:?}"))?;
    let re: f64 = re.trim().parse().map_err(|_| format!("bad real part {re:?}"))?;
    let im: f64 = im.trim().parse().map_err(|_| format!("bad imaginary part {im:?}"))?;
    Ok(Complex64::new(re, im))
}

fn parse_phase(s: &str) -> std::result::Result<UnimodularScalar, String> {
    let (p, q) = s.split_once('/').ok_or_else(|| format!("expected p/q, got {s:?}"))?;
    let p: i64 = p.trim().parse().map_err(|_| format!("bad numerator {p:?}"))?;
    let q: u32 = q.trim().parse().map_err(|_| format!("bad denominator {q:?}"))?;
    root_of_unity(q, p).map_err(|e| e.to_string())
}

fn parse_unimodular(s: &str) -> std::result::Result<UnimodularScalar, String> {
    if s.contains('/') {
        return parse_phase(s);
    }
    UnimodularScalar::new(parse_complex(s)?).map_err(|e| e.to_string())
}

fn parse_branch(s: &str) -> std::result::Result<(Sign, Sign), String> {
    Sign::parse_pair(s).map_err(|e| e.to_string())
}

fn read_input(path: &Path) -> Result<Matrix> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)?
    };
    matrix_from_json(&text)
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn construct(a: &ConstructArgs) -> Result<Matrix> {
    let one = UnimodularScalar::ONE;
    let w = root_of_unity(3, 1)?;
    let bc9_from_params = || {
        let p = Bc9Params::new(a.x.unwrap_or(one), a.y.unwrap_or(one), a.u.unwrap_or(w), a.w.unwrap_or(w * w));
        bc9_matrix(&p)
    };
    let bc9_from_zeta = |zeta: Complex64| -> Result<Matrix> {
        let p = zeta_to_params(&ZetaPoint::new(zeta, a.branch.0, a.branch.1))?;
        Ok(bc9_matrix(&p))
    };
    Ok(match a.family {
        Family::Bc9 => match a.zeta {
            Some(z) => bc9_from_zeta(z)?,
            None => bc9_from_params(),
        },
        Family::Bc9Params => bc9_from_params(),
        Family::Bc9Zeta => bc9_from_zeta(a.zeta.unwrap_or(Complex64::new(0.0, 0.0)))?,
        Family::Bc9a => bc9a(a.mu.or(a.phase).unwrap_or(one)),
        Family::Bc9b => bc9b(a.xi.or(a.phase).unwrap_or(one)),
        Family::Fourier9 => fourier9(&FourierParams::new(
            a.x1.unwrap_or(one),
            a.x2.unwrap_or(one),
            a.x3.unwrap_or(one),
            a.x4.unwrap_or(one),
        )),
        Family::Backelin => backelin(&BackelinParams::new(a.u.unwrap_or(one), a.v.unwrap_or(one))),
        Family::Special => special(&a.name)?,
    })
}

fn mub_set_from_files(files: &[PathBuf]) -> Result<MubSet> {
    if files.is_empty() {
        return Err(invalid("give --set b|m or a list of basis files"));
    }
    let bases = files.iter().map(|f| read_input(f)).collect::<Result<Vec<_>>>()?;
    let labels = files.iter().map(|f| f.display().to_string()).collect();
    Ok(MubSet { bases, labels })
}

fn execute(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Construct(a) => Ok(matrix_to_json(&construct(a)?, a.q)),
        Command::Verify { what: VerifyWhat::Hadamard { file } } => {
            let tol = cli.tol.unwrap_or(DEFAULT_TOL);
            let h = read_input(file)?;
            let ok = is_hadamard(&h, tol);
            let report = json!({
                "hadamard": ok,
                "n": h.n(),
                "hadamard_error": h.hadamard_error(),
                "tolerance": tol,
            });
            if !ok {
                return Err(Error::CheckFailed(format!("not a Hadamard matrix at tol {tol}: {report}")));
            }
            to_json(&report)
        }
        Command::Verify { what: VerifyWhat::Mub { set, files } } => {
            let tol = cli.tol.unwrap_or(1e-12);
            let s = match set {
                Some(MubChoice::B) => build_b_set(),
                Some(MubChoice::M) => build_m_set(),
                None => mub_set_from_files(files)?,
            };
            let report = verify_mub(&s, tol);
            if !report.pass {
                return Err(Error::CheckFailed(format!("not mutually unbiased: {}", serde_json::to_string(&report)?)));
            }
            to_json(&report)
        }
        Command::Defect { file } => to_json(&defect(&read_input(file)?, cli.tol.unwrap_or(DEFAULT_RANK_TOL))?),
        Command::Equiv { a, b, budget } => to_json(&equivalent(&read_input(a)?, &read_input(b)?, *budget)),
        Command::ReduceScan { file } => {
            let hits = h3_submatrix_scan(&read_input(file)?, cli.tol.unwrap_or(H3_TOL));
            let list: Vec<_> = hits.iter().map(|(r, c)| json!({"rows": r, "cols": c})).collect();
            to_json(&json!({"count": hits.len(), "submatrices": list}))
        }
        Command::ScanZeta(s) => {
            let g = GridSpec {
                re_min: s.re_min,
                re_max: s.re_max,
                im_min: s.im_min,
                im_max: s.im_max,
                resolution: s.resolution,
                tol: cli.tol.unwrap_or(DEFAULT_RANK_TOL),
                branches: s.branches.clone(),
            };
            let records = zeta_defect_scan(&g)?;
            if s.summary {
                if let Some(path) = &cli.out {
                    std::fs::write(path, records_to_csv(&records))?;
                }
                // the summary itself always goes to standard output
                print!("{}", to_json(&summarize(&g, &records))?);
                return Ok(String::new());
            }
            Ok(records_to_csv(&records))
        }
        Command::CensusButson => Ok(serde_json::to_string(&fourier_butson_census()?)? + "\n"),
        Command::BackelinIntersections => {
            let pts = backelin_intersections()?;
            let mut out = Vec::with_capacity(pts.len());
            for p in &pts {
                let report = defect(&backelin(&p.params()), DEFAULT_RANK_TOL)?;
                out.push(json!({
                    "u_exp27": p.u_exp27,
                    "v_exp27": p.v_exp27,
                    "u": p.u,
                    "v": p.v,
                    "loci": p.loci,
                    "defect": report.defect,
                    "reliable": report.reliable,
                }));
            }
            to_json(&json!({"count": pts.len(), "points": out}))
        }
        Command::MubCheck => {
            let tol = cli.tol.unwrap_or(1e-12);
            let table = m_multiplication_table()?;
            let params = (2..=9)
                .map(|i| {
                    let (sign, p) = m_to_bc9_params(i)?;
                    Ok(json!({"index": i, "sign": sign, "params": p.values()}))
                })
                .collect::<Result<Vec<_>>>()?;
            let report = json!({
                "b_set": verify_mub(&build_b_set(), tol),
                "m_set": verify_mub(&build_m_set(), tol),
                "multiplication_table": table,
                "table_matches": table == MULTIPLICATION_TABLE,
                "algebra": m_set_algebra_check(),
                "bc9_params": params,
            });
            to_json(&report)
        }
    }
}

/// Parse `argv` (program name first), run the command and return the exit
/// status.
pub fn run(argv: &[String]) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = execute(&cli).and_then(|text| {
        if text.is_empty() {
            return Ok(());
        }
        match &cli.out {
            Some(path) => std::fs::write(path, text).map_err(Error::from),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let obj = json!({"error": e.kind(), "message": e.to_string()});
            eprintln!("{obj}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn value_parsers() {
        assert_eq!(parse_complex("-1.5,2").unwrap(), Complex64::new(-1.5, 2.0));
        assert!(parse_complex("1").is_err());
        let z = parse_unimodular("1/4").unwrap();
        assert_eq!(z.value(), Complex64::new(0.0, 1.0));
        assert!(parse_unimodular("2,0").is_err());
        assert!(parse_phase("1/0").is_err());
        assert_eq!(parse_branch("+-").unwrap(), (Sign::Plus, Sign::Minus));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(&argv("hforge --help")), 0);
        assert_eq!(run(&argv("hforge frobnicate")), 2);
        assert_eq!(run(&argv("hforge construct --family bc9 --zeta 9,0 --out /dev/null")), 1);
        assert_eq!(run(&argv("hforge construct --family special --name nope --out /dev/null")), 1);
        assert_eq!(run(&argv("hforge construct --family special --out /dev/null")), 0);
    }

    #[test]
    fn every_family_default_is_hadamard() {
        for fam in ["bc9", "bc9-params", "bc9-zeta", "bc9a", "bc9b", "fourier9", "backelin", "special"] {
            let cli = Cli::try_parse_from(argv(&format!("hforge construct --family {fam}"))).unwrap();
            let Command::Construct(a) = &cli.command else { unreachable!() };
            assert!(is_hadamard(&construct(a).unwrap(), DEFAULT_TOL), "{fam}");
        }
    }
}
