//! Per-genus sweep rows and the documents written by the command-line tool.

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, DilatationSource, Interval};
use crate::conventions::Conventions;
use crate::curves::MIN_GENUS;
use crate::digraph::{self, Digraph};
use crate::error::{Error, Result};
use crate::spectral::{self, RootEnclosure};
use crate::twist;

/// Fixed CSV column order of [`SweepRow`].
pub const SWEEP_COLUMNS: [&str; 29] = [
    "genus",
    "dimension",
    "trace",
    "determinant",
    "dilatation_source",
    "lambda_lower",
    "lambda_upper",
    "lambda_width",
    "log_lambda_lower",
    "log_lambda_upper",
    "dil_lower",
    "dil_upper",
    "dil_upper_sharp",
    "lemma_hypothesis",
    "lemma_bounds_hold",
    "sharp_bound_holds",
    "ellc_lower",
    "filling_floor",
    "mixing_exponent",
    "max_path_count",
    "path_count_bound",
    "kappa_lower_lo",
    "kappa_lower_hi",
    "kappa_upper",
    "kappa_lower_log_g",
    "kappa_upper_log_g",
    "kappa_consistent",
    "rotation",
    "orientation",
];

/// One genus of a sweep. Exact quantities are decimal strings; the spectral
/// fields are empty above the exact-computation limit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub genus: u64,
    pub dimension: usize,
    pub trace: Option<String>,
    pub determinant: Option<String>,
    pub dilatation_source: DilatationSource,
    pub lambda: Option<RootEnclosure>,
    pub lambda_lower: Option<f64>,
    pub lambda_upper: Option<f64>,
    pub lambda_width: Option<f64>,
    pub log_lambda_lower: f64,
    pub log_lambda_upper: f64,
    pub dil_lower: f64,
    pub dil_upper: f64,
    pub dil_upper_sharp: f64,
    pub lemma_hypothesis: bool,
    pub lemma_bounds_hold: Option<bool>,
    pub sharp_bound_holds: Option<bool>,
    pub ellc_lower: String,
    pub filling_floor: u64,
    /// Least `r <= 4g` with `M^r > 0`.
    pub mixing_exponent: Option<usize>,
    /// Largest number of length-`(g-2)` paths leaving a vertex.
    pub max_path_count: Option<String>,
    pub path_count_bound: u64,
    pub kappa_lower_lo: f64,
    pub kappa_lower_hi: f64,
    pub kappa_upper: f64,
    pub kappa_lower_log_g: f64,
    pub kappa_upper_log_g: f64,
    pub kappa_consistent: bool,
    pub rotation: String,
    pub orientation: String,
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(ToString::to_string).unwrap_or_default()
}

impl SweepRow {
    /// Values in [`SWEEP_COLUMNS`] order.
    pub fn csv_record(&self) -> Vec<String> {
        vec![
            self.genus.to_string(),
            self.dimension.to_string(),
            opt(&self.trace),
            opt(&self.determinant),
            match self.dilatation_source {
                DilatationSource::Exact => "exact".into(),
                DilatationSource::ClosedFormUpper => "closed_form_upper".into(),
            },
            opt(&self.lambda_lower),
            opt(&self.lambda_upper),
            opt(&self.lambda_width),
            self.log_lambda_lower.to_string(),
            self.log_lambda_upper.to_string(),
            self.dil_lower.to_string(),
            self.dil_upper.to_string(),
            self.dil_upper_sharp.to_string(),
            self.lemma_hypothesis.to_string(),
            opt(&self.lemma_bounds_hold),
            opt(&self.sharp_bound_holds),
            self.ellc_lower.clone(),
            self.filling_floor.to_string(),
            opt(&self.mixing_exponent),
            opt(&self.max_path_count),
            self.path_count_bound.to_string(),
            self.kappa_lower_lo.to_string(),
            self.kappa_lower_hi.to_string(),
            self.kappa_upper.to_string(),
            self.kappa_lower_log_g.to_string(),
            self.kappa_upper_log_g.to_string(),
            self.kappa_consistent.to_string(),
            self.rotation.clone(),
            self.orientation.clone(),
        ]
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub conventions: Conventions,
    pub tol: BigRational,
    /// Genera above this use the closed-form dilatation bound instead of
    /// the exact Perron root.
    pub exact_limit: u64,
}

impl SweepConfig {
    pub fn new(conventions: Conventions) -> Self {
        SweepConfig {
            conventions,
            tol: spectral::default_tolerance(),
            exact_limit: 300,
        }
    }
}

pub fn sweep_row(cfg: &SweepConfig, genus: u64) -> Result<SweepRow> {
    if genus < MIN_GENUS {
        return Err(Error::GenusTooSmall {
            genus,
            min: MIN_GENUS,
        });
    }
    let g = genus as f64;
    let cf = bounds::closed_form_bounds(genus);
    let dil_lower = cf.dil_lower.expect("g >= 4");
    let dil_upper = cf.dil_upper.expect("g >= 4");
    let dil_upper_sharp = cf.dil_upper_sharp.expect("g >= 4");
    let conv = &cfg.conventions;
    let sys = conv.system(genus)?;

    let mut row = SweepRow {
        genus,
        dimension: sys.dimension(),
        trace: None,
        determinant: None,
        dilatation_source: DilatationSource::ClosedFormUpper,
        lambda: None,
        lambda_lower: None,
        lambda_upper: None,
        lambda_width: None,
        log_lambda_lower: 0.0,
        log_lambda_upper: 0.0,
        dil_lower,
        dil_upper,
        dil_upper_sharp,
        lemma_hypothesis: cf.dilatation_hypothesis_holds,
        lemma_bounds_hold: None,
        sharp_bound_holds: None,
        ellc_lower: cf.ellc_lower.clone().expect("g >= 4"),
        filling_floor: cf.filling_floor.expect("g >= 4"),
        mixing_exponent: None,
        max_path_count: None,
        path_count_bound: 10 * genus - 21,
        kappa_lower_lo: 0.0,
        kappa_lower_hi: 0.0,
        kappa_upper: 0.0,
        kappa_lower_log_g: 0.0,
        kappa_upper_log_g: 0.0,
        kappa_consistent: false,
        rotation: conv.rotation.to_string(),
        orientation: conv.orientation.to_string(),
    };

    let log_dil = if genus <= cfg.exact_limit {
        let m = twist::phi_matrix_for(&sys);
        row.trace = Some(m.trace().to_string());
        row.determinant = Some(m.determinant()?.to_string());
        let enc = spectral::perron_root(&m, &cfg.tol)?;
        let (lo, hi) = enc.to_f64_outward();
        let (ln_lo, ln_hi) = enc.ln_outward();
        row.lambda_lower = Some(lo);
        row.lambda_upper = Some(hi);
        row.lambda_width = Some(enc.width_f64());
        row.lambda = Some(enc);
        row.dilatation_source = DilatationSource::Exact;
        row.lemma_bounds_hold = Some(dil_lower <= ln_lo && ln_hi <= dil_upper);
        row.sharp_bound_holds = Some(ln_hi <= dil_upper_sharp);
        row.mixing_exponent = digraph::primitivity_exponent(&m, 4 * genus as usize)?;
        let graph = Digraph::for_curves(&sys, &m, conv.orientation)?;
        row.max_path_count = graph
            .path_counts((genus - 2) as usize)
            .into_iter()
            .max()
            .map(|c| c.to_string());
        Interval::new(ln_lo, ln_hi)
    } else {
        bounds::dilatation_upper_interval(genus).expect("g >= 4")
    };
    row.log_lambda_lower = log_dil.lo;
    row.log_lambda_upper = log_dil.hi;

    let k = bounds::kappa_interval(genus, &log_dil)?;
    let log_g = g.ln();
    row.kappa_lower_lo = k.lower.lo;
    row.kappa_lower_hi = k.lower.hi;
    row.kappa_upper = k.upper;
    row.kappa_lower_log_g = k.lower.lo * log_g;
    row.kappa_upper_log_g = k.upper * log_g;
    row.kappa_consistent = k.consistent();
    Ok(row)
}

/// Rows for every genus in `[g_min, g_max]`, in genus order.
pub fn sweep(cfg: &SweepConfig, g_min: u64, g_max: u64) -> Result<Vec<SweepRow>> {
    (g_min..=g_max)
        .into_par_iter()
        .map(|g| sweep_row(cfg, g))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepMetadata {
    pub tool: String,
    pub version: String,
    pub tolerance: String,
    pub exact_limit: u64,
    pub conventions: Conventions,
    pub columns: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepDocument {
    pub metadata: SweepMetadata,
    pub rows: Vec<SweepRow>,
}

impl SweepDocument {
    pub fn new(cfg: &SweepConfig, rows: Vec<SweepRow>) -> Self {
        SweepDocument {
            metadata: SweepMetadata {
                tool: "kappa".into(),
                version: env!("CARGO_PKG_VERSION").into(),
                tolerance: cfg.tol.to_string(),
                exact_limit: cfg.exact_limit,
                conventions: cfg.conventions.clone(),
                columns: SWEEP_COLUMNS.iter().map(|c| c.to_string()).collect(),
            },
            rows,
        }
    }
}

/// `true` if every row has `kappa_lower <= kappa_upper` and a determinant
/// of one where computed.
pub fn rows_consistent(rows: &[SweepRow]) -> bool {
    rows.iter().all(|r| {
        r.kappa_consistent
            && r.determinant
                .as_deref()
                .is_none_or(|d| d.parse::<num_bigint::BigInt>().is_ok_and(|x| x.is_one()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::RotationDirection;
    use crate::digraph::Orientation;

    fn cfg() -> SweepConfig {
        SweepConfig::new(Conventions::fixed(RotationDirection::Plus, Orientation::Columns))
    }

    #[test]
    fn row_at_nine() {
        let r = sweep_row(&cfg(), 9).unwrap();
        assert_eq!(r.ellc_lower, "1/17");
        assert_eq!(r.filling_floor, 17);
        assert_eq!(r.dimension, 32);
        assert_eq!(r.trace.as_deref(), Some("1"));
        assert_eq!(r.csv_record().len(), SWEEP_COLUMNS.len());
        assert!(r.kappa_consistent);
        assert_eq!(r.dilatation_source, DilatationSource::Exact);
        assert!(r.mixing_exponent.unwrap() <= 17);
    }

    #[test]
    fn closed_form_above_limit() {
        let mut c = cfg();
        c.exact_limit = 5;
        let r = sweep_row(&c, 8).unwrap();
        assert_eq!(r.dilatation_source, DilatationSource::ClosedFormUpper);
        assert!(r.lambda.is_none() && r.trace.is_none());
        assert!((r.log_lambda_upper - r.dil_upper).abs() < 1e-12);
    }

    #[test]
    fn sweep_is_ordered() {
        let rows = sweep(&cfg(), 4, 9).unwrap();
        let genera: Vec<u64> = rows.iter().map(|r| r.genus).collect();
        assert_eq!(genera, (4..=9).collect::<Vec<_>>());
        assert!(rows_consistent(&rows));
        assert!(sweep_row(&cfg(), 3).is_err());
    }
}
