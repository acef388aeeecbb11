use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{Context, Result};
use num_rational::BigRational;
use serde::Serialize;

use kappa_core::bounds::{self, closed_form_bounds, ClosedFormBounds};
use kappa_core::charpoly::char_poly;
use kappa_core::conventions::{resolve, Conventions};
use kappa_core::curves::MIN_GENUS;
use kappa_core::digraph::{primitivity_exponent, Digraph};
use kappa_core::matrix::MatrixDocument;
use kappa_core::report::{sweep, SweepConfig, SweepDocument, SWEEP_COLUMNS};
use kappa_core::spectral::{self, dominant_root_check, expected_char_poly, perron_root, perron_vector, RootEnclosure};
use kappa_core::twist::phi_matrix_for;
use kappa_core::verify::{self, summary_lines, VerifyConfig};
use kappa_core::{CurveSystem, IntMatrix};

use crate::output::{csv, emit, json};
use crate::{Cli, Command, Format, GlobalOpts, Outcome, UsageError};

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    conventions: Option<&'a Conventions>,
    results: T,
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let opts = &cli.opts;
    match &cli.command {
        Command::Matrix => matrix(opts),
        Command::Charpoly => charpoly(opts),
        Command::Spectrum => spectrum(opts),
        Command::Digraph => digraph(opts),
        Command::Mixing => mixing(opts),
        Command::Bounds => bounds_cmd(opts),
        Command::Sweep { exact_limit } => sweep_cmd(opts, *exact_limit),
        Command::Verify { corrupt_expected } => verify_cmd(opts, *corrupt_expected),
    }
}

fn conventions(opts: &GlobalOpts) -> Result<Conventions> {
    let rotation = opts.rotation.rotation()?;
    let orientation = opts.orientation.orientation()?;
    Ok(resolve(rotation, orientation)?)
}

fn tolerance(opts: &GlobalOpts) -> Result<BigRational> {
    spectral::tolerance_from_f64(opts.tol)
        .map_err(|_| UsageError(format!("--tol must be positive and finite, got {}", opts.tol)).into())
}

fn any_genera(opts: &GlobalOpts) -> Result<Vec<u64>> {
    let range = opts
        .genus
        .ok_or_else(|| UsageError("--genus is required".into()))?;
    Ok(range.genera())
}

fn construction_genera(opts: &GlobalOpts) -> Result<Vec<u64>> {
    let genera = any_genera(opts)?;
    if genera[0] < MIN_GENUS {
        return Err(UsageError(format!(
            "construction requires g >= {MIN_GENUS}, got g = {}",
            genera[0]
        ))
        .into());
    }
    Ok(genera)
}

struct Built {
    genus: u64,
    sys: CurveSystem,
    m: IntMatrix,
}

fn build(conv: &Conventions, genera: &[u64]) -> Result<Vec<Built>> {
    genera
        .iter()
        .map(|&genus| {
            let sys = conv.system(genus)?;
            let m = phi_matrix_for(&sys);
            Ok(Built { genus, sys, m })
        })
        .collect()
}

fn labels(sys: &CurveSystem) -> Vec<String> {
    sys.basis().iter().map(ToString::to_string).collect()
}

fn envelope<T: Serialize>(command: &str, conv: Option<&Conventions>, results: T) -> Result<String> {
    json(&Envelope {
        command,
        conventions: conv,
        results,
    })
}

#[derive(Serialize)]
struct MatrixResult {
    genus: u64,
    #[serde(flatten)]
    matrix: MatrixDocument,
}

fn matrix(opts: &GlobalOpts) -> Result<Outcome> {
    let conv = conventions(opts)?;
    let built = build(&conv, &construction_genera(opts)?)?;
    let body = match opts.format {
        Format::Json => {
            let results: Vec<MatrixResult> = built
                .iter()
                .map(|b| MatrixResult {
                    genus: b.genus,
                    matrix: MatrixDocument::new(labels(&b.sys), &b.m),
                })
                .collect();
            envelope("matrix", Some(&conv), results)?
        }
        Format::Csv => {
            let mut records = Vec::new();
            for b in &built {
                let names = labels(&b.sys);
                for (i, row) in b.m.sparse_rows().iter().enumerate() {
                    for (j, v) in row {
                        records.push(vec![
                            b.genus.to_string(),
                            names[i].clone(),
                            names[*j].clone(),
                            v.to_string(),
                        ]);
                    }
                }
            }
            csv(&["genus", "row", "column", "value"], records)?
        }
        Format::Text => {
            let mut s = String::new();
            for b in &built {
                let names = labels(&b.sys);
                writeln!(s, "# g={} dimension {} (column u = image of u)", b.genus, names.len())?;
                writeln!(s, "{:>5} {}", "", names.iter().map(|n| format!("{n:>4}")).collect::<String>())?;
                for (i, name) in names.iter().enumerate() {
                    let row: String = b.m.row(i).iter().map(|v| format!("{v:>4}")).collect();
                    writeln!(s, "{name:>5} {row}")?;
                }
            }
            s
        }
    };
    emit(opts, body)?;
    Ok(Outcome::Ok)
}

#[derive(Serialize)]
struct CharPolyResult {
    genus: u64,
    degree: usize,
    coefficients: Vec<String>,
    polynomial: String,
    closed_form: String,
    matches_closed_form: bool,
}

fn charpoly(opts: &GlobalOpts) -> Result<Outcome> {
    let conv = conventions(opts)?;
    let results: Vec<CharPolyResult> = build(&conv, &construction_genera(opts)?)?
        .iter()
        .map(|b| {
            let p = char_poly(&b.m)?;
            let e = expected_char_poly(b.genus)?;
            Ok(CharPolyResult {
                genus: b.genus,
                degree: p.degree(),
                coefficients: p.to_strings(),
                polynomial: p.to_string(),
                closed_form: e.to_string(),
                matches_closed_form: p == e,
            })
        })
        .collect::<Result<_>>()?;
    let body = match opts.format {
        Format::Json => envelope("charpoly", Some(&conv), &results)?,
        Format::Csv => csv(
            &["genus", "degree", "matches_closed_form", "coefficients"],
            results.iter().map(|r| {
                vec![
                    r.genus.to_string(),
                    r.degree.to_string(),
                    r.matches_closed_form.to_string(),
                    r.coefficients.join(" "),
                ]
            }),
        )?,
        Format::Text => results
            .iter()
            .map(|r| {
                format!(
                    "g={}: {}\n  closed form: {} ({})\n",
                    r.genus,
                    r.polynomial,
                    r.closed_form,
                    if r.matches_closed_form { "match" } else { "MISMATCH" }
                )
            })
            .collect(),
    };
    emit(opts, body)?;
    Ok(Outcome::Ok)
}

#[derive(Serialize)]
struct WeightEntry {
    curve: String,
    weight: f64,
}

#[derive(Serialize)]
struct SpectrumResult {
    genus: u64,
    lambda: RootEnclosure,
    lambda_lower: f64,
    lambda_upper: f64,
    log_lambda: [f64; 2],
    /// Largest root modulus of the computed characteristic polynomial.
    char_poly_max_modulus: [f64; 2],
    /// Largest root modulus of the closed-form polynomial.
    closed_form_max_modulus: [f64; 2],
    perron_vector_residual: f64,
    perron_vector: Vec<WeightEntry>,
}

fn spectrum(opts: &GlobalOpts) -> Result<Outcome> {
    let conv = conventions(opts)?;
    let tol = tolerance(opts)?;
    let results: Vec<SpectrumResult> = build(&conv, &construction_genera(opts)?)?
        .iter()
        .map(|b| {
            let enc = perron_root(&b.m, &tol)?;
            let vec = perron_vector(&b.m, &tol)?;
            let own = dominant_root_check(&char_poly(&b.m)?, &enc, 1e-6)?;
            let closed = dominant_root_check(&expected_char_poly(b.genus)?, &enc, 1e-6)?;
            let (lo, hi) = enc.to_f64_outward();
            let (ln_lo, ln_hi) = enc.ln_outward();
            Ok(SpectrumResult {
                genus: b.genus,
                lambda_lower: lo,
                lambda_upper: hi,
                log_lambda: [ln_lo, ln_hi],
                char_poly_max_modulus: [own.max_modulus_lower, own.max_modulus_upper],
                closed_form_max_modulus: [closed.max_modulus_lower, closed.max_modulus_upper],
                perron_vector_residual: spectral::rational_to_f64(&vec.residual),
                perron_vector: labels(&b.sys)
                    .into_iter()
                    .zip(vec.weights_f64())
                    .map(|(curve, weight)| WeightEntry { curve, weight })
                    .collect(),
                lambda: enc,
            })
        })
        .collect::<Result<_>>()?;
    let body = match opts.format {
        Format::Json => envelope("spectrum", Some(&conv), &results)?,
        Format::Csv => csv(
            &[
                "genus",
                "lambda_lower",
                "lambda_upper",
                "log_lambda_lower",
                "log_lambda_upper",
                "char_poly_max_modulus_lower",
                "char_poly_max_modulus_upper",
                "closed_form_max_modulus_lower",
                "closed_form_max_modulus_upper",
                "perron_vector_residual",
            ],
            results.iter().map(|r| {
                [
                    r.genus.to_string(),
                    r.lambda_lower.to_string(),
                    r.lambda_upper.to_string(),
                    r.log_lambda[0].to_string(),
                    r.log_lambda[1].to_string(),
                    r.char_poly_max_modulus[0].to_string(),
                    r.char_poly_max_modulus[1].to_string(),
                    r.closed_form_max_modulus[0].to_string(),
                    r.closed_form_max_modulus[1].to_string(),
                    r.perron_vector_residual.to_string(),
                ]
            }),
        )?,
        Format::Text => {
            let mut s = String::new();
            for r in &results {
                writeln!(s, "g={}", r.genus)?;
                writeln!(s, "  lambda       in [{:.15}, {:.15}]", r.lambda_lower, r.lambda_upper)?;
                writeln!(s, "  log lambda   in [{:.15}, {:.15}]", r.log_lambda[0], r.log_lambda[1])?;
                writeln!(
                    s,
                    "  max |root| of char_poly    in [{:.12}, {:.12}]",
                    r.char_poly_max_modulus[0], r.char_poly_max_modulus[1]
                )?;
                writeln!(
                    s,
                    "  max |root| of closed form  in [{:.12}, {:.12}]",
                    r.closed_form_max_modulus[0], r.closed_form_max_modulus[1]
                )?;
                let min = r.perron_vector.iter().map(|w| w.weight).fold(f64::INFINITY, f64::min);
                writeln!(s, "  perron vector: min weight {min:.3e}, residual {:.3e}", r.perron_vector_residual)?;
            }
            s
        }
    };
    emit(opts, body)?;
    Ok(Outcome::Ok)
}

#[derive(Serialize)]
struct DigraphResult {
    genus: u64,
    orientation: String,
    vertices: Vec<String>,
    edges: Vec<(String, String, String)>,
    self_loops: BTreeMap<String, String>,
    strongly_connected: bool,
    period: usize,
    path_length: usize,
    path_counts: Vec<String>,
}

fn digraph(opts: &GlobalOpts) -> Result<Outcome> {
    let conv = conventions(opts)?;
    let built = build(&conv, &construction_genera(opts)?)?;
    let graphs: Vec<(u64, Digraph)> = built
        .iter()
        .map(|b| Ok((b.genus, Digraph::for_curves(&b.sys, &b.m, conv.orientation)?)))
        .collect::<Result<_>>()?;
    let edges = |g: &Digraph| -> Vec<(String, String, String)> {
        g.to_edge_list()
            .lines()
            .map(|l| {
                let mut it = l.split(' ').map(str::to_string);
                (it.next().unwrap(), it.next().unwrap(), it.next().unwrap())
            })
            .collect()
    };
    let body = match opts.format {
        Format::Json => {
            let results: Vec<DigraphResult> = graphs
                .iter()
                .map(|(genus, g)| {
                    let j = (*genus - 2) as usize;
                    DigraphResult {
                        genus: *genus,
                        orientation: g.orientation().to_string(),
                        vertices: g.labels().to_vec(),
                        edges: edges(g),
                        self_loops: g
                            .self_loop_census()
                            .into_iter()
                            .map(|(v, k)| (g.labels()[v].clone(), k.to_string()))
                            .collect(),
                        strongly_connected: g.is_strongly_connected(),
                        period: g.period(),
                        path_length: j,
                        path_counts: g.path_counts(j).iter().map(ToString::to_string).collect(),
                    }
                })
                .collect();
            envelope("digraph", Some(&conv), results)?
        }
        Format::Csv => csv(
            &["genus", "source", "target", "multiplicity"],
            graphs.iter().flat_map(|(genus, g)| {
                edges(g)
                    .into_iter()
                    .map(move |(u, v, k)| vec![genus.to_string(), u, v, k])
            }),
        )?,
        Format::Text => {
            if graphs.len() == 1 {
                graphs[0].1.to_edge_list()
            } else {
                graphs
                    .iter()
                    .map(|(genus, g)| format!("# g={genus}\n{}", g.to_edge_list()))
                    .collect()
            }
        }
    };
    emit(opts, body)?;
    Ok(Outcome::Ok)
}

#[derive(Serialize)]
struct MixingResult {
    genus: u64,
    primitivity_exponent: Option<usize>,
    bound: u64,
    within_bound: bool,
    /// Lengths `k` in `[g-1, 2g-1]` at which paths from a1 miss a vertex.
    incomplete_cover_lengths: Vec<usize>,
}

fn mixing(opts: &GlobalOpts) -> Result<Outcome> {
    let conv = conventions(opts)?;
    let results: Vec<MixingResult> = build(&conv, &construction_genera(opts)?)?
        .iter()
        .map(|b| {
            let g = b.genus;
            let r = primitivity_exponent(&b.m, 4 * g as usize)?;
            let graph = Digraph::for_curves(&b.sys, &b.m, conv.orientation)?;
            let a1 = b.sys.position(b.sys.a(1));
            let incomplete = ((g - 1) as usize..=(2 * g - 1) as usize)
                .filter(|&k| graph.exact_length_cover(a1, k).len() != graph.len())
                .collect();
            Ok(MixingResult {
                genus: g,
                primitivity_exponent: r,
                bound: 2 * g - 1,
                within_bound: r.is_some_and(|r| (r as u64) < 2 * g),
                incomplete_cover_lengths: incomplete,
            })
        })
        .collect::<Result<_>>()?;
    let body = match opts.format {
        Format::Json => envelope("mixing", Some(&conv), &results)?,
        Format::Csv => csv(
            &["genus", "primitivity_exponent", "bound", "within_bound", "a1_cover_complete"],
            results.iter().map(|r| {
                [
                    r.genus.to_string(),
                    r.primitivity_exponent.map(|x| x.to_string()).unwrap_or_default(),
                    r.bound.to_string(),
                    r.within_bound.to_string(),
                    r.incomplete_cover_lengths.is_empty().to_string(),
                ]
            }),
        )?,
        Format::Text => results
            .iter()
            .map(|r| {
                format!(
                    "g={}: primitivity exponent {} (bound {}), a1 cover on [{}, {}]: {}\n",
                    r.genus,
                    r.primitivity_exponent
                        .map(|x| x.to_string())
                        .unwrap_or_else(|| format!("> {}", 4 * r.genus)),
                    r.bound,
                    r.genus - 1,
                    r.bound,
                    if r.incomplete_cover_lengths.is_empty() {
                        "complete".to_string()
                    } else {
                        format!("incomplete at {:?}", r.incomplete_cover_lengths)
                    }
                )
            })
            .collect(),
    };
    emit(opts, body)?;
    Ok(Outcome::Ok)
}

#[derive(Serialize)]
struct BoundsResult {
    #[serde(flatten)]
    closed_form: ClosedFormBounds,
    /// `kappa_lower` with `log(lambda)` replaced by its closed-form upper bound.
    kappa_lower_closed_form: Option<f64>,
    kappa_lower_log_g: Option<f64>,
    kappa_upper_log_g: Option<f64>,
    euler_identity: bool,
}

fn bounds_cmd(opts: &GlobalOpts) -> Result<Outcome> {
    let results: Vec<BoundsResult> = any_genera(opts)?
        .into_iter()
        .map(|g| {
            let row = bounds::asymptotic_row(g).ok();
            let cf = closed_form_bounds(g);
            BoundsResult {
                kappa_lower_closed_form: row.as_ref().map(|r| r.kappa_lower),
                kappa_lower_log_g: row.as_ref().map(|r| r.kappa_lower_log_g),
                kappa_upper_log_g: cf.kappa_upper.map(|k| k * (g as f64).ln()),
                euler_identity: cf
                    .filling_floor
                    .is_some_and(|i| bounds::euler_identity_check(i, 1, g)),
                closed_form: cf,
            }
        })
        .collect();
    let o = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
    let body = match opts.format {
        Format::Json => envelope("bounds", None, &results)?,
        Format::Csv => csv(
            &[
                "genus",
                "kappa_upper",
                "filling_floor",
                "ellc_lower",
                "dil_lower",
                "dil_upper",
                "dil_upper_sharp",
                "lemma_hypothesis",
                "kappa_lower_closed_form",
                "kappa_lower_log_g",
                "kappa_upper_log_g",
                "euler_identity",
            ],
            results.iter().map(|r| {
                let c = &r.closed_form;
                [
                    c.genus.to_string(),
                    o(c.kappa_upper),
                    c.filling_floor.map(|x| x.to_string()).unwrap_or_default(),
                    c.ellc_lower.clone().unwrap_or_default(),
                    o(c.dil_lower),
                    o(c.dil_upper),
                    o(c.dil_upper_sharp),
                    c.dilatation_hypothesis_holds.to_string(),
                    o(r.kappa_lower_closed_form),
                    o(r.kappa_lower_log_g),
                    o(r.kappa_upper_log_g),
                    r.euler_identity.to_string(),
                ]
            }),
        )?,
        Format::Text => {
            let f = |x: Option<f64>| x.map(|v| format!("{v:.9}")).unwrap_or_else(|| "-".into());
            let mut s = format!(
                "{:>7} {:>12} {:>12} {:>12} {:>12} {:>8} {:>12} {:>12}\n",
                "g", "kappa_upper", "dil_lower", "dil_upper", "dil_sharp", "ellC", "kl*log g", "ku*log g"
            );
            for r in &results {
                let c = &r.closed_form;
                writeln!(
                    s,
                    "{:>7} {:>12} {:>12} {:>12} {:>12} {:>8} {:>12} {:>12}{}",
                    c.genus,
                    f(c.kappa_upper),
                    f(c.dil_lower),
                    f(c.dil_upper),
                    f(c.dil_upper_sharp),
                    c.ellc_lower.clone().unwrap_or_else(|| "-".into()),
                    f(r.kappa_lower_log_g),
                    f(r.kappa_upper_log_g),
                    c.notes.iter().map(|n| format!("  [{n}]")).collect::<String>()
                )?;
            }
            s
        }
    };
    emit(opts, body)?;
    Ok(Outcome::Ok)
}

fn sweep_cmd(opts: &GlobalOpts, exact_limit: u64) -> Result<Outcome> {
    let genera = construction_genera(opts)?;
    let mut cfg = SweepConfig::new(conventions(opts)?);
    cfg.tol = tolerance(opts)?;
    cfg.exact_limit = exact_limit;
    let rows = sweep(&cfg, genera[0], *genera.last().unwrap()).context("sweep failed")?;
    let body = match opts.format {
        Format::Json => json(&SweepDocument::new(&cfg, rows))?,
        Format::Csv => csv(&SWEEP_COLUMNS, rows.iter().map(|r| r.csv_record()))?,
        Format::Text => {
            let mut s = format!(
                "# rotation {} ({}), orientation {} ({})\n{:>6} {:>5} {:>14} {:>12} {:>12} {:>12} {:>12} {:>12} {:>5}\n",
                cfg.conventions.rotation,
                cfg.conventions.rotation_resolution,
                cfg.conventions.orientation,
                cfg.conventions.orientation_resolution,
                "g",
                "dim",
                "log_lambda",
                "dil_lower",
                "dil_upper",
                "dil_sharp",
                "kappa_lower",
                "kappa_upper",
                "mix"
            );
            for r in &rows {
                writeln!(
                    s,
                    "{:>6} {:>5} {:>14.10} {:>12.9} {:>12.9} {:>12.9} {:>12.9} {:>12.9} {:>5}",
                    r.genus,
                    r.dimension,
                    r.log_lambda_upper,
                    r.dil_lower,
                    r.dil_upper,
                    r.dil_upper_sharp,
                    r.kappa_lower_lo,
                    r.kappa_upper,
                    r.mixing_exponent.map(|x| x.to_string()).unwrap_or_else(|| "-".into())
                )?;
            }
            s
        }
    };
    emit(opts, body)?;
    Ok(Outcome::Ok)
}

fn verify_cmd(opts: &GlobalOpts, corrupt: bool) -> Result<Outcome> {
    let genera = match opts.genus {
        Some(_) => Some(construction_genera(opts)?),
        None => None,
    };
    let mut cfg = VerifyConfig::new(conventions(opts)?);
    cfg.tol = tolerance(opts)?;
    if corrupt {
        cfg.expected = verify::corrupted_expected_char_poly;
    }
    let report = match &genera {
        Some(g) => verify::run_for_genera(&cfg, g),
        None => verify::run_acceptance(&cfg),
    };
    let body = match opts.format {
        Format::Json => json(&report)?,
        Format::Csv => csv(
            &["criterion", "name", "genus", "hard", "passed", "detail"],
            report.checks.iter().map(|c| {
                [
                    c.criterion.to_string(),
                    c.name.clone(),
                    c.genus.map(|g| g.to_string()).unwrap_or_default(),
                    c.hard.to_string(),
                    c.passed.to_string(),
                    c.detail.clone(),
                ]
            }),
        )?,
        Format::Text => {
            let conv = &report.conventions;
            let mut s = format!(
                "rotation {} ({}), orientation {} ({})\n",
                conv.rotation, conv.rotation_resolution, conv.orientation, conv.orientation_resolution
            );
            for line in summary_lines(&report) {
                writeln!(s, "{line}")?;
            }
            for c in report.checks.iter().filter(|c| !c.passed) {
                writeln!(s, "  {c}")?;
            }
            writeln!(s, "{}", if report.passed { "all checks passed" } else { "verification FAILED" })?;
            s
        }
    };
    emit(opts, body)?;
    Ok(if report.passed { Outcome::Ok } else { Outcome::ChecksFailed })
}
