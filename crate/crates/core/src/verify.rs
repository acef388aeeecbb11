//! The acceptance checks, shared by the test suite and the `verify` command.
//!
//! Every check yields a [`CheckResult`]. Hard checks decide the overall
//! verdict; soft checks are diagnostics that are reported but never fail a
//! run.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, Interval};
use crate::charpoly::char_poly;
use crate::conventions::{orientation_fit, Conventions, CALIBRATION_GENUS};
use crate::curves::{CurveSystem, MIN_GENUS};
use crate::digraph::{self, Digraph};
use crate::error::Result;
use crate::matrix::IntMatrix;
use crate::poly::IntPolynomial;
use crate::spectral::{self, RootEnclosure};
use crate::twist::{self, WeightVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Criterion {
    #[serde(rename = "AC1")]
    CharPoly,
    #[serde(rename = "AC2")]
    DilatationSandwich,
    #[serde(rename = "AC3")]
    DominantRoot,
    #[serde(rename = "AC4")]
    SelfLoop,
    #[serde(rename = "AC5")]
    Mixing,
    #[serde(rename = "AC6")]
    RowSum,
    #[serde(rename = "AC7")]
    KappaAsymptotics,
    #[serde(rename = "AC8")]
    Properties,
}

impl Criterion {
    pub const ALL: [Criterion; 8] = [
        Criterion::CharPoly,
        Criterion::DilatationSandwich,
        Criterion::DominantRoot,
        Criterion::SelfLoop,
        Criterion::Mixing,
        Criterion::RowSum,
        Criterion::KappaAsymptotics,
        Criterion::Properties,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Criterion::CharPoly => "AC1",
            Criterion::DilatationSandwich => "AC2",
            Criterion::DominantRoot => "AC3",
            Criterion::SelfLoop => "AC4",
            Criterion::Mixing => "AC5",
            Criterion::RowSum => "AC6",
            Criterion::KappaAsymptotics => "AC7",
            Criterion::Properties => "AC8",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Criterion::CharPoly => "characteristic polynomial identity",
            Criterion::DilatationSandwich => "dilatation sandwich",
            Criterion::DominantRoot => "dominant root",
            Criterion::SelfLoop => "self-loop census",
            Criterion::Mixing => "mixing exponent",
            Criterion::RowSum => "row-sum bound",
            Criterion::KappaAsymptotics => "kappa asymptotics",
            Criterion::Properties => "property suites",
        }
    }

    /// Smallest genus the criterion is stated for.
    pub fn min_genus(self) -> u64 {
        match self {
            Criterion::CharPoly | Criterion::SelfLoop | Criterion::Mixing | Criterion::Properties => 4,
            Criterion::DilatationSandwich | Criterion::DominantRoot | Criterion::RowSum => 5,
            Criterion::KappaAsymptotics => 10,
        }
    }

    /// Largest genus the criterion is stated for.
    pub fn max_genus(self) -> u64 {
        match self {
            Criterion::CharPoly | Criterion::Properties => 30,
            Criterion::DominantRoot => 20,
            Criterion::KappaAsymptotics => 10_000,
            _ => 60,
        }
    }

    /// The genera exercised by the acceptance suite.
    pub fn acceptance_genera(self) -> Vec<u64> {
        match self {
            Criterion::KappaAsymptotics => bounds::log_uniform_genera(10, 10_000, 500),
            c => (c.min_genus()..=c.max_genus()).collect(),
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub criterion: Criterion,
    pub name: String,
    pub genus: Option<u64>,
    pub passed: bool,
    /// Soft checks are informational and do not affect the verdict.
    pub hard: bool,
    pub detail: String,
}

impl CheckResult {
    fn hard(criterion: Criterion, name: &str, genus: u64, passed: bool, detail: String) -> Self {
        CheckResult {
            criterion,
            name: name.to_string(),
            genus: Some(genus),
            passed,
            hard: true,
            detail,
        }
    }

    fn soft(criterion: Criterion, name: &str, genus: u64, passed: bool, detail: String) -> Self {
        CheckResult {
            hard: false,
            ..Self::hard(criterion, name, genus, passed, detail)
        }
    }

    fn error(criterion: Criterion, name: &str, genus: u64, err: impl fmt::Display) -> Self {
        Self::hard(criterion, name, genus, false, format!("error: {err}"))
    }

    pub fn is_failure(&self) -> bool {
        self.hard && !self.passed
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.passed, self.hard) {
            (true, _) => "pass",
            (false, true) => "FAIL",
            (false, false) => "warn",
        };
        let genus = self.genus.map(|g| format!(" g={g}")).unwrap_or_default();
        write!(f, "[{status}] {} {}{genus}: {}", self.criterion, self.name, self.detail)
    }
}

/// Source of the closed-form polynomial that AC1 and AC3 compare against.
pub type ExpectedPoly = fn(u64) -> Result<IntPolynomial>;

/// A deliberately wrong closed form (`-9` in place of `-10`), used as a
/// negative control.
pub fn corrupted_expected_char_poly(genus: u64) -> Result<IntPolynomial> {
    let p = spectral::expected_char_poly(genus)?;
    let mut c = p.coeffs().to_vec();
    c[2 * genus as usize - 2] += 1;
    Ok(IntPolynomial::new(c))
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub conventions: Conventions,
    /// Width requested for Perron enclosures.
    pub tol: BigRational,
    pub expected: ExpectedPoly,
    pub random_vectors: usize,
    pub seed: u64,
}

impl VerifyConfig {
    pub fn new(conventions: Conventions) -> Self {
        VerifyConfig {
            conventions,
            tol: spectral::default_tolerance(),
            expected: spectral::expected_char_poly,
            random_vectors: 100,
            seed: 0x5eed,
        }
    }
}

/// Per-genus data shared between criteria.
struct GenusData<'a> {
    cfg: &'a VerifyConfig,
    genus: u64,
    sys: CurveSystem,
    m: IntMatrix,
    perron: OnceLock<std::result::Result<RootEnclosure, String>>,
    charpoly: OnceLock<std::result::Result<IntPolynomial, String>>,
}

impl<'a> GenusData<'a> {
    fn new(cfg: &'a VerifyConfig, genus: u64) -> Result<Self> {
        let sys = cfg.conventions.system(genus)?;
        let m = twist::phi_matrix_for(&sys);
        Ok(GenusData {
            cfg,
            genus,
            sys,
            m,
            perron: OnceLock::new(),
            charpoly: OnceLock::new(),
        })
    }

    /// Perron enclosure no wider than `min(tol, 1e-9)`.
    fn perron(&self) -> std::result::Result<&RootEnclosure, String> {
        self.perron
            .get_or_init(|| {
                let cap = BigRational::new(BigInt::one(), BigInt::from(1_000_000_000u64));
                let tol = if self.cfg.tol < cap { self.cfg.tol.clone() } else { cap };
                spectral::perron_root(&self.m, &tol).map_err(|e| e.to_string())
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn charpoly(&self) -> std::result::Result<&IntPolynomial, String> {
        self.charpoly
            .get_or_init(|| char_poly(&self.m).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(Clone::clone)
    }
}

/// The closed form with every exponent roughly halved:
/// `x^(2g-2) - x^(2g-3) - x^g - 10x^(g-1) - x^(g-2) - x + 1`.
pub fn half_scale_polynomial(genus: u64) -> IntPolynomial {
    let g = genus as usize;
    IntPolynomial::from_terms(&[
        (2 * g - 2, 1),
        (2 * g - 3, -1),
        (g, -1),
        (g - 1, -10),
        (g - 2, -1),
        (1, -1),
        (0, 1),
    ])
}

/// `(x^(g-1) - 1)^2`.
fn rotation_factor(genus: u64) -> IntPolynomial {
    IntPolynomial::from_terms(&[(genus as usize - 1, 1), (0, -1)]).pow(2)
}

fn first_difference(a: &IntPolynomial, b: &IntPolynomial) -> Option<(usize, BigInt, BigInt)> {
    let n = a.degree().max(b.degree());
    (0..=n).rev().find_map(|k| {
        let (x, y) = (a.coeff(k), b.coeff(k));
        (x != y).then_some((k, x, y))
    })
}

fn check_char_poly(d: &GenusData) -> Vec<CheckResult> {
    let c = Criterion::CharPoly;
    let g = d.genus;
    let p = match d.charpoly() {
        Ok(p) => p,
        Err(e) => return vec![CheckResult::error(c, "char_poly_equals_closed_form", g, e)],
    };
    let expected = match (d.cfg.expected)(g) {
        Ok(e) => e,
        Err(e) => return vec![CheckResult::error(c, "char_poly_equals_closed_form", g, e)],
    };
    let detail = match first_difference(p, &expected) {
        None => format!("{p}"),
        Some((k, got, want)) => format!("x^{k} coefficient is {got}, closed form has {want}"),
    };
    let mut out = vec![CheckResult::hard(
        c,
        "char_poly_equals_closed_form",
        g,
        *p == expected,
        detail,
    )];

    let factor = rotation_factor(g).mul(&half_scale_polynomial(g));
    out.push(CheckResult::soft(
        c,
        "char_poly_factorization",
        g,
        *p == factor,
        format!("char_poly = (x^{} - 1)^2 * ({})", g - 1, half_scale_polynomial(g)),
    ));

    let doubled = twist::phi_matrix_for(&match d.cfg.conventions.system(2 * g - 1) {
        Ok(s) => s,
        Err(e) => return out.into_iter().chain([CheckResult::error(c, "closed_form_divides", g, e)]).collect(),
    });
    let divides = char_poly(&doubled).map(|q| expected.divides(&q)).unwrap_or(false);
    out.push(CheckResult::soft(
        c,
        "closed_form_divides_char_poly_at_2g-1",
        g,
        divides,
        format!("closed form at g={g} divides char_poly at g={}", 2 * g - 1),
    ));
    out
}

fn bound_interval(x: f64) -> Interval {
    Interval::around(x, 4)
}

fn check_sandwich(d: &GenusData) -> Vec<CheckResult> {
    let c = Criterion::DilatationSandwich;
    let g = d.genus;
    let enc = match d.perron() {
        Ok(e) => e,
        Err(e) => return vec![CheckResult::error(c, "perron_enclosure", g, e)],
    };
    let (ln_lo, ln_hi) = enc.ln_outward();
    let width = enc.width_f64();
    let lower = bound_interval(bounds::dilatation_lower(g).expect("g >= 4"));
    let upper = bound_interval(bounds::dilatation_upper(g).expect("g >= 4"));
    let sharp = bound_interval(bounds::dilatation_upper_sharp(g).expect("g >= 4"));
    let log = format!("log lambda in [{ln_lo:.12}, {ln_hi:.12}]");
    vec![
        CheckResult::hard(
            c,
            "enclosure_width",
            g,
            enc.width() <= BigRational::new(BigInt::one(), BigInt::from(1_000_000_000u64)),
            format!("width {width:.3e} <= 1e-9"),
        ),
        CheckResult::hard(
            c,
            "lemma_lower",
            g,
            lower.hi <= ln_lo,
            format!("log(4g-4)/(2g-2) = {:.12} <= {log}", lower.hi),
        ),
        CheckResult::hard(
            c,
            "lemma_upper",
            g,
            ln_hi <= upper.lo,
            format!("{log} <= log(10g-21)/(g-2) = {:.12}", upper.lo),
        ),
        CheckResult::hard(
            c,
            "sharp_upper",
            g,
            ln_hi <= sharp.lo,
            format!("{log} <= 3log(4g-4)/(4g-4) = {:.12}", sharp.lo),
        ),
    ]
}

const ROOT_MATCH_TOL: f64 = 1e-6;

fn check_dominant_root(d: &GenusData) -> Vec<CheckResult> {
    let c = Criterion::DominantRoot;
    let g = d.genus;
    let name = "perron_root_equals_max_root_modulus";
    let enc = match d.perron() {
        Ok(e) => e,
        Err(e) => return vec![CheckResult::error(c, name, g, e)],
    };
    let check = (d.cfg.expected)(g).and_then(|p| spectral::dominant_root_check(&p, enc, ROOT_MATCH_TOL));
    let check = match check {
        Ok(x) => x,
        Err(e) => return vec![CheckResult::error(c, name, g, e)],
    };
    let (lo, hi) = enc.to_f64_outward();
    let matches = check.max_radius <= ROOT_MATCH_TOL
        && check.max_modulus_upper <= hi + ROOT_MATCH_TOL
        && check.max_modulus_lower >= lo - ROOT_MATCH_TOL;
    vec![
        CheckResult::hard(
            c,
            name,
            g,
            matches,
            format!(
                "lambda in [{lo:.12}, {hi:.12}], max root modulus in [{:.12}, {:.12}]",
                check.max_modulus_lower, check.max_modulus_upper
            ),
        ),
        CheckResult::soft(
            c,
            "roots_bounded_by_perron_root",
            g,
            check.holds,
            format!("every root modulus <= {hi:.12} + 1e-6"),
        ),
    ]
}

fn check_self_loops(d: &GenusData) -> Vec<CheckResult> {
    let c = Criterion::SelfLoop;
    let g = d.genus;
    let graph = match Digraph::for_curves(&d.sys, &d.m, d.cfg.conventions.orientation) {
        Ok(x) => x,
        Err(e) => return vec![CheckResult::error(c, "single_self_loop_at_a1", g, e)],
    };
    let census = graph.self_loop_census();
    let a1 = d.sys.position(d.sys.a(1));
    let only_a1 = census.len() == 1 && census.get(&a1) == Some(&BigInt::one());
    let listed: Vec<String> = census
        .iter()
        .map(|(v, k)| format!("{}:{k}", graph.labels()[*v]))
        .collect();
    let trace = d.m.trace();
    vec![
        CheckResult::hard(
            c,
            "single_self_loop_at_a1",
            g,
            only_a1,
            format!("self-loops {{{}}}", listed.join(", ")),
        ),
        CheckResult::hard(c, "trace_is_one", g, trace.is_one(), format!("trace {trace}")),
    ]
}

fn check_mixing(d: &GenusData) -> Vec<CheckResult> {
    let c = Criterion::Mixing;
    let g = d.genus;
    let cap = (2 * g - 1) as usize;
    let mut out = vec![match digraph::primitivity_exponent(&d.m, cap) {
        Ok(r) => CheckResult::hard(
            c,
            "primitivity_exponent_at_most_2g-1",
            g,
            r.is_some(),
            match r {
                Some(r) => format!("least r with M^r > 0 is {r} <= {cap}"),
                None => format!("M^r has a zero entry for every r <= {cap}"),
            },
        ),
        Err(e) => CheckResult::error(c, "primitivity_exponent_at_most_2g-1", g, e),
    }];
    match Digraph::for_curves(&d.sys, &d.m, d.cfg.conventions.orientation) {
        Ok(graph) => {
            let a1 = d.sys.position(d.sys.a(1));
            let short: Vec<usize> = ((g - 1) as usize..=cap)
                .filter(|&k| graph.exact_length_cover(a1, k).len() != graph.len())
                .collect();
            out.push(CheckResult::hard(
                c,
                "a1_reaches_everything",
                g,
                short.is_empty(),
                if short.is_empty() {
                    format!("paths of every length in [{}, {cap}] from a1 reach all {} vertices", g - 1, graph.len())
                } else {
                    format!("incomplete cover at lengths {short:?}")
                },
            ));
        }
        Err(e) => out.push(CheckResult::error(c, "a1_reaches_everything", g, e)),
    }
    out
}

fn check_row_sum(d: &GenusData) -> Vec<CheckResult> {
    let c = Criterion::RowSum;
    let g = d.genus;
    let orientation = d.cfg.conventions.orientation;
    let graph = match Digraph::for_curves(&d.sys, &d.m, orientation) {
        Ok(x) => x,
        Err(e) => return vec![CheckResult::error(c, "max_path_count", g, e)],
    };
    let counts = graph.path_counts((g - 2) as usize);
    let (argmax, max) = counts
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .expect("nonempty");
    let bound = BigInt::from(10 * g - 21);
    vec![CheckResult::hard(
        c,
        "max_path_count",
        g,
        *max <= bound,
        format!(
            "{orientation}: max paths of length {} is {max} (at {}), bound 10g-21 = {bound}",
            g - 2,
            graph.labels()[argmax]
        ),
    )]
}

/// The soft formula comparison at the calibration genus.
pub fn path_formula_checks(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let c = Criterion::RowSum;
    let g = CALIBRATION_GENUS;
    let sys = match cfg.conventions.system(g) {
        Ok(s) => s,
        Err(e) => return vec![CheckResult::error(c, "path_count_formulas", g, e)],
    };
    let fit = match orientation_fit(&sys, cfg.conventions.orientation) {
        Ok(f) => f,
        Err(e) => return vec![CheckResult::error(c, "path_count_formulas", g, e)],
    };
    let range = match fit.admissible_j {
        Some((a, b)) => format!("all seven hold for j in [{a}, {b}]"),
        None => "no j at which all seven hold".to_string(),
    };
    let misses: Vec<String> = fit
        .mismatches
        .iter()
        .take(8)
        .map(|m| format!("{}@j={}: {} vs {}", m.vertex, m.j, m.observed, m.expected))
        .collect();
    vec![CheckResult::soft(
        c,
        "path_count_formulas",
        g,
        fit.is_exact(),
        format!(
            "{}: {}/{} matched over j in [2, {}]; {range}{}",
            fit.orientation,
            fit.matched,
            fit.tested,
            g - 2,
            if misses.is_empty() {
                String::new()
            } else {
                format!("; first misses {}", misses.join(", "))
            }
        ),
    )]
}

fn check_kappa(genus: u64) -> Vec<CheckResult> {
    let c = Criterion::KappaAsymptotics;
    match bounds::asymptotic_row(genus) {
        Ok(row) => vec![
            CheckResult::hard(
                c,
                "kappa_upper_log_g",
                genus,
                2.0 < row.kappa_upper_log_g && row.kappa_upper_log_g < 2.1,
                format!("{:.9} in (2.0, 2.1)", row.kappa_upper_log_g),
            ),
            CheckResult::hard(
                c,
                "kappa_lower_log_g",
                genus,
                0.2 < row.kappa_lower_log_g && row.kappa_lower_log_g < 0.5,
                format!("{:.9} in (0.2, 0.5)", row.kappa_lower_log_g),
            ),
        ],
        Err(e) => vec![CheckResult::error(c, "kappa_products", genus, e)],
    }
}

fn random_vectors(dim: usize, count: usize, seed: u64) -> Vec<WeightVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let w: Vec<u64> = (0..dim)
                .map(|_| if rng.gen_bool(0.3) { 0 } else { rng.gen_range(0..1_000_000) })
                .collect();
            WeightVector::from_u64(&w)
        })
        .collect()
}

fn rational_pow(x: &BigRational, k: usize) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, _| acc * x)
}

fn check_properties(d: &GenusData) -> Vec<CheckResult> {
    let c = Criterion::Properties;
    let g = d.genus;
    let mut out = Vec::new();

    let bad_twists: Vec<String> = twist::monodromy_word(&d.sys)
        .iter()
        .filter_map(|&gen| {
            let det = twist::generator_map(&d.sys, gen).determinant().ok()?;
            (!det.is_one()).then(|| format!("{gen:?}: {det}"))
        })
        .collect();
    out.push(CheckResult::hard(
        c,
        "generator_determinants",
        g,
        bad_twists.is_empty(),
        if bad_twists.is_empty() {
            "every twist and the rotation have determinant 1".to_string()
        } else {
            bad_twists.join(", ")
        },
    ));

    match d.m.determinant() {
        Ok(det) => out.push(CheckResult::hard(c, "phi_determinant", g, det.is_one(), format!("det {det}"))),
        Err(e) => out.push(CheckResult::error(c, "phi_determinant", g, e)),
    }

    let vectors = random_vectors(d.sys.dimension(), d.cfg.random_vectors, d.cfg.seed ^ g);
    let mut cone_ok = 0;
    let mut oracle_ok = 0;
    for w in &vectors {
        let by_matrix = twist::apply(&d.m, w);
        if by_matrix.is_ok() {
            cone_ok += 1;
        }
        if let (Ok(a), Ok(b)) = (by_matrix, twist::apply_monodromy(&d.sys, w)) {
            if a == b {
                oracle_ok += 1;
            }
        }
    }
    let n = vectors.len();
    out.push(CheckResult::hard(
        c,
        "cone_preservation",
        g,
        cone_ok == n,
        format!("{cone_ok}/{n} random nonnegative vectors map to nonnegative vectors"),
    ));
    out.push(CheckResult::hard(
        c,
        "matrix_matches_sequential_twists",
        g,
        oracle_ok == n,
        format!("{oracle_ok}/{n} random vectors agree"),
    ));

    match d.charpoly() {
        Ok(p) => out.push(CheckResult::hard(
            c,
            "char_poly_palindromic",
            g,
            p.is_palindromic(),
            format!("degree {}", p.degree()),
        )),
        Err(e) => out.push(CheckResult::error(c, "char_poly_palindromic", g, e)),
    }

    match spectral::perron_vector(&d.m, &d.cfg.tol) {
        Ok(v) => {
            let bound = &d.cfg.tol * &v.eigenvalue.lower;
            let ok = v.is_strictly_positive() && v.residual <= bound;
            out.push(CheckResult::hard(
                c,
                "perron_vector",
                g,
                ok,
                format!(
                    "positive: {}, residual {:.3e} <= tol*lambda {:.3e}",
                    v.is_strictly_positive(),
                    spectral::rational_to_f64(&v.residual),
                    spectral::rational_to_f64(&bound)
                ),
            ));
        }
        Err(e) => out.push(CheckResult::error(c, "perron_vector", g, e)),
    }

    let enc = match d.perron() {
        Ok(e) => e,
        Err(e) => {
            out.push(CheckResult::error(c, "power_law", g, e));
            return out;
        }
    };
    let mut powers = vec![2usize, (g - 2) as usize];
    powers.dedup();
    for k in powers {
        let name = format!("power_law_k{k}");
        let mk = match d.m.pow(k as u32) {
            Ok(x) => x,
            Err(e) => {
                out.push(CheckResult::error(c, &name, g, e));
                continue;
            }
        };
        match spectral::perron_root(&mk, &d.cfg.tol) {
            Ok(ek) => {
                let lo = rational_pow(&enc.lower, k);
                let hi = rational_pow(&enc.upper, k);
                // both enclosures are certified, so they must overlap
                let slack = &d.cfg.tol * (&hi + BigRational::one());
                let ok = ek.lower <= &hi + &slack && lo <= &ek.upper + &slack;
                out.push(CheckResult::hard(
                    c,
                    &name,
                    g,
                    ok,
                    format!(
                        "lambda(M^{k}) in [{:.12}, {:.12}], lambda^{k} in [{:.12}, {:.12}]",
                        ek.lower_f64(),
                        ek.upper_f64(),
                        spectral::rational_to_f64(&lo),
                        spectral::rational_to_f64(&hi)
                    ),
                ));
            }
            Err(e) => out.push(CheckResult::error(c, &name, g, e)),
        }
    }
    out
}

fn check_genus(cfg: &VerifyConfig, genus: u64, criteria: &[Criterion]) -> Vec<CheckResult> {
    let data = match GenusData::new(cfg, genus) {
        Ok(d) => d,
        Err(e) => {
            return criteria
                .iter()
                .map(|&c| CheckResult::error(c, "construction", genus, &e))
                .collect()
        }
    };
    criteria
        .iter()
        .flat_map(|&c| match c {
            Criterion::CharPoly => check_char_poly(&data),
            Criterion::DilatationSandwich => check_sandwich(&data),
            Criterion::DominantRoot => check_dominant_root(&data),
            Criterion::SelfLoop => check_self_loops(&data),
            Criterion::Mixing => check_mixing(&data),
            Criterion::RowSum => check_row_sum(&data),
            Criterion::KappaAsymptotics => check_kappa(genus),
            Criterion::Properties => check_properties(&data),
        })
        .collect()
}

/// Runs one criterion over the given genera.
pub fn run_criterion(cfg: &VerifyConfig, criterion: Criterion, genera: &[u64]) -> Vec<CheckResult> {
    let mut out: Vec<CheckResult> = if criterion == Criterion::KappaAsymptotics {
        genera.par_iter().flat_map(|&g| check_kappa(g)).collect()
    } else {
        genera
            .par_iter()
            .flat_map(|&g| check_genus(cfg, g, &[criterion]))
            .collect()
    };
    if criterion == Criterion::RowSum {
        out.extend(path_formula_checks(cfg));
    }
    out
}

/// The full acceptance suite at the stated genus ranges.
pub fn run_acceptance(cfg: &VerifyConfig) -> SuiteReport {
    let checks = Criterion::ALL
        .iter()
        .flat_map(|&c| run_criterion(cfg, c, &c.acceptance_genera()))
        .collect();
    SuiteReport::new(cfg.conventions.clone(), checks)
}

/// Every criterion at every genus of `genera` that lies in its stated range
/// (criterion-specific floors apply; per-genus criteria have no ceiling
/// here).
pub fn run_for_genera(cfg: &VerifyConfig, genera: &[u64]) -> SuiteReport {
    let mut checks: Vec<CheckResult> = genera
        .par_iter()
        .flat_map(|&g| {
            let crits: Vec<Criterion> = Criterion::ALL
                .iter()
                .copied()
                .filter(|c| {
                    g >= c.min_genus().max(MIN_GENUS)
                        && (*c != Criterion::KappaAsymptotics || g <= c.max_genus())
                })
                .collect();
            check_genus(cfg, g, &crits)
        })
        .collect();
    if genera.iter().any(|&g| g >= Criterion::RowSum.min_genus()) {
        checks.extend(path_formula_checks(cfg));
    }
    checks.sort_by_key(|c| (c.criterion, c.genus));
    SuiteReport::new(cfg.conventions.clone(), checks)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionSummary {
    pub criterion: Criterion,
    pub title: String,
    pub checks: usize,
    pub failures: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub conventions: Conventions,
    pub passed: bool,
    pub summary: Vec<CriterionSummary>,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn new(conventions: Conventions, checks: Vec<CheckResult>) -> Self {
        let mut by: BTreeMap<Criterion, (usize, usize)> = BTreeMap::new();
        for ch in checks.iter().filter(|c| c.hard) {
            let e = by.entry(ch.criterion).or_default();
            e.0 += 1;
            e.1 += usize::from(!ch.passed);
        }
        let summary: Vec<CriterionSummary> = by
            .into_iter()
            .map(|(criterion, (n, f))| CriterionSummary {
                criterion,
                title: criterion.title().to_string(),
                checks: n,
                failures: f,
                passed: f == 0,
            })
            .collect();
        SuiteReport {
            conventions,
            passed: summary.iter().all(|s| s.passed),
            summary,
            checks,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.is_failure())
    }

    pub fn criterion_passed(&self, c: Criterion) -> Option<bool> {
        self.summary.iter().find(|s| s.criterion == c).map(|s| s.passed)
    }
}

/// One line per criterion, e.g. `AC4 PASS self-loop census (114 checks, 0 failed)`.
pub fn summary_lines(report: &SuiteReport) -> Vec<String> {
    report
        .summary
        .iter()
        .map(|s| {
            format!(
                "{} {} {} ({} checks, {} failed)",
                s.criterion,
                if s.passed { "PASS" } else { "FAIL" },
                s.title,
                s.checks,
                s.failures
            )
        })
        .collect()
}
