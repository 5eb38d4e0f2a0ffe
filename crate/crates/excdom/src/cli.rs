//! Command-line surface: `gen`, `eval`, `classify`, `peirce`, `embed`, `verify`.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use excdom_core::compactify::{FreudenthalPoint, RankOnePoint};
use excdom_core::domains::{boundary_report_v, boundary_report_w, classify_v_with, classify_w_with, BoundaryReport, Location};
use excdom_core::jts::{minimal_polynomial, rank_with, MinimalPolynomial};
use excdom_core::sample;
use excdom_core::tripotents::{peirce, q_involution_split};
use excdom_core::type_v::{peirce_w, q_involution_split_w, rank_w_with};
use excdom_core::Tolerances;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::json::{complex, AlbertJson, Element, FreudenthalJson, VerdictJson};
use crate::verify;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum System {
    /// The 27-dimensional Albert space
    V,
    /// The 16-dimensional subsystem
    W,
}

#[derive(Debug, Parser)]
#[command(name = "excdom", version, about = "Exceptional bounded symmetric domains of dimension 27 and 16")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for every sampled quantity
    #[arg(long, global = true, env = "EXCDOM_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Number of samples
    #[arg(long, global = true, default_value_t = 100)]
    pub n: usize,
    /// System of the elements; inferred from the input when omitted
    #[arg(long, global = true, value_enum, ignore_case = true)]
    pub system: Option<System>,
    #[arg(long, global = true, default_value_t = Tolerances::DEFAULT.alg)]
    pub tol_alg: f64,
    #[arg(long, global = true, default_value_t = Tolerances::DEFAULT.cls)]
    pub tol_cls: f64,
    /// Rescale generated elements to this spectral norm
    #[arg(long, global = true)]
    pub target_norm: Option<f64>,
    /// Input file of JSON elements (default: stdin)
    #[arg(long = "in", global = true)]
    pub input: Option<PathBuf>,
    /// Output file (default: stdout)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample elements as JSON lines
    Gen,
    /// Adjoint, determinant, minimal polynomial, roots and rank
    Eval,
    /// Domain verdict; exit code 0 interior, 1 boundary, 2 exterior
    Classify,
    /// Peirce dimensions and boundary geometry of a tripotent
    Peirce,
    /// Image in the projective compactification
    Embed,
    /// Run the randomized identity suites
    Verify {
        /// Negative control: perturb the adjoint and quadratic map
        #[arg(long, hide = true, default_value_t = 0.0)]
        perturb: f64,
    },
}

/// Exit code for failures other than a domain verdict.
pub const EXIT_ERROR: u8 = 3;

impl Cli {
    fn tol(&self) -> Tolerances {
        Tolerances { alg: self.tol_alg, cls: self.tol_cls }
    }

    fn output(&self) -> anyhow::Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }

    fn elements(&self) -> anyhow::Result<Vec<Element>> {
        let mut text = String::new();
        match &self.input {
            Some(p) => File::open(p).with_context(|| format!("cannot open {}", p.display()))?.read_to_string(&mut text)?,
            None => io::stdin().read_to_string(&mut text)?,
        };
        let mut out = Vec::new();
        for (i, v) in serde_json::Deserializer::from_str(&text).into_iter::<Value>().enumerate() {
            let v = v.with_context(|| format!("malformed JSON in element {}", i + 1))?;
            let e = Element::from_value(v).with_context(|| format!("element {} is not an element", i + 1))?;
            let want = match self.system {
                Some(System::V) => Some(excdom_core::albert::DIM),
                Some(System::W) => Some(excdom_core::type_v::DIM),
                None => None,
            };
            if let Some(d) = want.filter(|d| *d != e.dim()) {
                bail!("dimension mismatch in element {}: system expects {d} complex coordinates, found {}", i + 1, e.dim());
            }
            out.push(e);
        }
        Ok(out)
    }
}

fn write_line(w: &mut dyn Write, v: &impl serde::Serialize) -> anyhow::Result<()> {
    serde_json::to_writer(&mut *w, v)?;
    writeln!(w)?;
    Ok(())
}

fn monic_coefficients(m: &MinimalPolynomial) -> Vec<f64> {
    let [s1, s2, s3] = m.coeffs().map(|c| c.re);
    match m.degree() {
        3 => vec![1.0, -s1, s2, -s3],
        _ => vec![1.0, -s1, s2],
    }
}

fn gen(cli: &Cli, w: &mut dyn Write) -> anyhow::Result<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    for _ in 0..cli.n {
        let e = match cli.system.unwrap_or(System::V) {
            System::V => {
                let x = sample::albert(&mut rng);
                Element::V(cli.target_norm.and_then(|t| sample::rescale(&x, t)).unwrap_or(x))
            }
            System::W => {
                let x = sample::w_element(&mut rng);
                Element::W(cli.target_norm.and_then(|t| sample::rescale_w(&x, t)).unwrap_or(x))
            }
        };
        write_line(w, &e.to_value())?;
    }
    Ok(0)
}

fn eval(cli: &Cli, w: &mut dyn Write) -> anyhow::Result<u8> {
    let tol = cli.tol();
    for e in cli.elements()? {
        let (ambient, m, rank) = match e {
            Element::V(x) => (x, minimal_polynomial(&x, &x), rank_with(&x, &tol)),
            Element::W(x) => (x.embed(), excdom_core::type_v::minimal_polynomial_w(&x, &x), rank_w_with(&x, &tol)),
        };
        let report = json!({
            "adjoint": AlbertJson::from(&ambient.sharp()),
            "det": complex(ambient.det()),
            "minpoly": monic_coefficients(&m),
            "roots": m.real_roots(),
            "rank": rank,
        });
        write_line(w, &report)?;
    }
    Ok(0)
}

fn location_code(l: Location) -> u8 {
    match l {
        Location::Interior => 0,
        Location::Boundary(_) => 1,
        Location::Exterior => 2,
    }
}

fn classify(cli: &Cli, w: &mut dyn Write) -> anyhow::Result<u8> {
    let tol = cli.tol();
    let mut code = 0;
    for e in cli.elements()? {
        let v = match e {
            Element::V(x) => classify_v_with(&x, &tol),
            Element::W(x) => classify_w_with(&x, &tol),
        };
        code = code.max(location_code(v.location));
        write_line(w, &VerdictJson::from(&v))?;
    }
    Ok(code)
}

fn cr(t: excdom_core::domains::CrType) -> Value {
    json!([t.s, t.t])
}

fn peirce_report(r: &BoundaryReport, residual: f64, split: (usize, usize)) -> Value {
    json!({
        "rank": r.rank,
        "dims": r.peirce_dims,
        "projector_residual": residual,
        "v2_plus": split.0,
        "v2_minus": split.1,
        "normal_dim": r.normal_dim,
        "stratum_cr_type": cr(r.stratum),
        "tripotent_cr_type": cr(r.tripotents),
        "affine_rank": r.affine_rank,
    })
}

fn peirce_cmd(cli: &Cli, w: &mut dyn Write) -> anyhow::Result<u8> {
    for e in cli.elements()? {
        let report = match e {
            Element::V(x) => {
                let (r, pd, s) = (boundary_report_v(&x)?, peirce(&x)?, q_involution_split(&x)?);
                peirce_report(&r, pd.residual, (s.plus, s.minus))
            }
            Element::W(x) => {
                let (r, pd, s) = (boundary_report_w(&x)?, peirce_w(&x)?, q_involution_split_w(&x)?);
                peirce_report(&r, pd.residual, (s.plus, s.minus))
            }
        };
        write_line(w, &report)?;
    }
    Ok(0)
}

fn embed(cli: &Cli, w: &mut dyn Write) -> anyhow::Result<u8> {
    for e in cli.elements()? {
        let report = match e {
            Element::V(x) => {
                let p = FreudenthalPoint::embed(&x);
                json!({ "point": FreudenthalJson::from(&p), "residuals": p.residuals() })
            }
            Element::W(x) => {
                let p = RankOnePoint::embed(&x);
                json!({ "z": AlbertJson::from(&p.z), "residual": p.residual() })
            }
        };
        write_line(w, &report)?;
    }
    Ok(0)
}

fn verify_cmd(cli: &Cli, perturb: f64, w: &mut dyn Write) -> anyhow::Result<u8> {
    let cfg = verify::Config { seed: cli.seed, samples: cli.n, tol: cli.tol(), perturb };
    let report = verify::run(&cfg);
    serde_json::to_writer_pretty(&mut *w, &report)?;
    writeln!(w)?;
    Ok(if report.pass { 0 } else { 1 })
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: &Cli) -> anyhow::Result<u8> {
    if !(cli.tol_alg > 0.0 && cli.tol_cls > 0.0) {
        bail!("tolerances must be positive");
    }
    let mut w = cli.output()?;
    let code = match &cli.command {
        Command::Gen => gen(cli, &mut *w)?,
        Command::Eval => eval(cli, &mut *w)?,
        Command::Classify => classify(cli, &mut *w)?,
        Command::Peirce => peirce_cmd(cli, &mut *w)?,
        Command::Embed => embed(cli, &mut *w)?,
        Command::Verify { perturb } => verify_cmd(cli, *perturb, &mut *w)?,
    };
    w.flush()?;
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use excdom_core::albert::AlbertElement;

    #[test]
    fn monic_coefficients_of_diag() {
        let x = AlbertElement::diag_re([1.0, 2.0, 3.0]);
        assert_eq!(monic_coefficients(&minimal_polynomial(&x, &x)), vec![1.0, -14.0, 49.0, -36.0]);
        let e = AlbertElement::e(0);
        assert_eq!(monic_coefficients(&minimal_polynomial(&e, &e)), vec![1.0, -1.0, 0.0, 0.0]);
    }

    #[test]
    fn flags_parse() {
        let cli = Cli::try_parse_from(["excdom", "classify", "--system", "w", "--tol-cls", "1e-6"]).unwrap();
        assert_eq!(cli.system, Some(System::W));
        assert_eq!(cli.tol().cls, 1e-6);
        assert!(Cli::try_parse_from(["excdom", "verify", "--perturb", "0.1"]).is_ok());
        assert!(Cli::try_parse_from(["excdom", "frobnicate"]).is_err());
    }
}
