//! Closed-form bounds on dilatations, curve-complex translation lengths and
//! the optimal Lipschitz constant `kappa_g` of the systole map.
//!
//! Natural logarithms throughout. Reals are `f64` (round to nearest); the
//! interval helpers widen every transcendental result by two ulps so that
//! interval endpoints stay valid despite libm rounding.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Closed interval of reals with outward-rounded endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

fn down(x: f64, ulps: u32) -> f64 {
    (0..ulps).fold(x, |a, _| a.next_down())
}

fn up(x: f64, ulps: u32) -> f64 {
    (0..ulps).fold(x, |a, _| a.next_up())
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// A computed value widened by `ulps` in both directions.
    pub fn around(x: f64, ulps: u32) -> Self {
        Interval {
            lo: down(x, ulps),
            hi: up(x, ulps),
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0.0
    }

    /// `a / self` for a positive interval `a` and positive `self`.
    pub fn divide_into(&self, a: &Interval) -> Result<Interval> {
        if !self.is_positive() {
            return Err(Error::NonPositiveInterval {
                lower: self.lo,
                upper: self.hi,
            });
        }
        Ok(Interval {
            lo: down(a.lo / self.hi, 1),
            hi: up(a.hi / self.lo, 1),
        })
    }

    fn divide_into_scalar(&self, d: f64) -> Interval {
        Interval {
            lo: down(self.lo / d, 1),
            hi: up(self.hi / d, 1),
        }
    }

    pub fn scale(&self, k: &Interval) -> Interval {
        // both positive in every use here
        Interval {
            lo: down(self.lo * k.lo, 1),
            hi: up(self.hi * k.hi, 1),
        }
    }
}

fn ln_interval(x: f64) -> Interval {
    Interval::around(x.ln(), 2)
}

/// `2 / log(g - 1/2)`, valid for `g >= 2`.
pub fn kappa_upper(genus: u64) -> Option<f64> {
    (genus >= 2).then(|| 2.0 / (genus as f64 - 0.5).ln())
}

/// Minimum intersection number of a filling pair, `2g - 1`.
pub fn filling_floor(genus: u64) -> Option<u64> {
    (genus >= 2).then(|| 2 * genus - 1)
}

/// `log(4g - 4) / (2g - 2)`.
pub fn dilatation_lower(genus: u64) -> Option<f64> {
    (genus >= 4).then(|| {
        let g = genus as f64;
        (4.0 * g - 4.0).ln() / (2.0 * g - 2.0)
    })
}

/// `log(10g - 21) / (g - 2)`.
pub fn dilatation_upper(genus: u64) -> Option<f64> {
    (genus >= 4).then(|| {
        let g = genus as f64;
        (10.0 * g - 21.0).ln() / (g - 2.0)
    })
}

/// `3 log(4g - 4) / (4g - 4)`.
pub fn dilatation_upper_sharp(genus: u64) -> Option<f64> {
    (genus >= 4).then(|| {
        let g = genus as f64;
        3.0 * (4.0 * g - 4.0).ln() / (4.0 * g - 4.0)
    })
}

/// Outward interval around [`dilatation_upper`].
pub fn dilatation_upper_interval(genus: u64) -> Option<Interval> {
    (genus >= 4).then(|| {
        let g = genus as f64;
        ln_interval(10.0 * g - 21.0).divide_into_scalar(g - 2.0)
    })
}

/// Lower bound on the curve-complex translation length of the monodromy:
/// `(numerator, denominator) = (1, 2g - 1)`.
pub fn curve_complex_lower(genus: u64) -> Option<(u64, u64)> {
    (genus >= 4).then(|| (1, 2 * genus - 1))
}

/// Every closed form at one genus. Fields outside their domain are `None`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormBounds {
    pub genus: u64,
    pub kappa_upper: Option<f64>,
    pub filling_floor: Option<u64>,
    /// `1/(2g-1)` as a fraction string.
    pub ellc_lower: Option<String>,
    pub ellc_lower_value: Option<f64>,
    pub dil_lower: Option<f64>,
    pub dil_upper: Option<f64>,
    pub dil_upper_sharp: Option<f64>,
    /// The dilatation lemma is stated for `g > 4`.
    pub dilatation_hypothesis_holds: bool,
    pub notes: Vec<String>,
}

pub fn closed_form_bounds(genus: u64) -> ClosedFormBounds {
    let mut notes = Vec::new();
    if genus < 2 {
        notes.push("g < 2: no closed form applies".to_string());
    } else if genus < 4 {
        notes.push("g < 4: dilatation and translation-length bounds need the g >= 4 construction".to_string());
    } else if genus == 4 {
        notes.push("g = 4 is outside the dilatation lemma's hypothesis g > 4".to_string());
    }
    let ellc = curve_complex_lower(genus);
    ClosedFormBounds {
        genus,
        kappa_upper: kappa_upper(genus),
        filling_floor: filling_floor(genus),
        ellc_lower: ellc.map(|(a, b)| format!("{a}/{b}")),
        ellc_lower_value: ellc.map(|(a, b)| a as f64 / b as f64),
        dil_lower: dilatation_lower(genus),
        dil_upper: dilatation_upper(genus),
        dil_upper_sharp: dilatation_upper_sharp(genus),
        dilatation_hypothesis_holds: genus > 4,
        notes,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KappaInterval {
    /// `(1/(2g-1)) / log(lambda)` over the supplied `log(lambda)` interval.
    pub lower: Interval,
    pub upper: f64,
}

impl KappaInterval {
    pub fn consistent(&self) -> bool {
        self.lower.hi <= self.upper
    }
}

pub fn kappa_interval(genus: u64, log_dil: &Interval) -> Result<KappaInterval> {
    if genus < 2 {
        return Err(Error::GenusTooSmall { genus, min: 2 });
    }
    let denom = (2 * genus - 1) as f64;
    let ellc = Interval::new(down(1.0 / denom, 1), up(1.0 / denom, 1));
    let lower = log_dil.divide_into(&ellc)?;
    Ok(KappaInterval {
        lower,
        upper: kappa_upper(genus).expect("genus >= 2"),
    })
}

/// Euler-characteristic identity for a filling pair meeting `i` times with
/// `faces` complementary disks: `i - faces = 2g - 2`.
pub fn euler_identity_check(intersections: u64, faces: u64, genus: u64) -> bool {
    if intersections < 1 || faces < 1 {
        return false;
    }
    intersections as i128 - faces as i128 == 2 * genus as i128 - 2
}

/// Which value of `log(lambda)` fed a kappa lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DilatationSource {
    /// Certified enclosure of the exact Perron root.
    Exact,
    /// The closed-form upper bound `log(10g - 21)/(g - 2)`.
    ClosedFormUpper,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticRow {
    pub genus: u64,
    pub log_genus: f64,
    pub kappa_upper: f64,
    pub kappa_upper_log_g: f64,
    pub kappa_lower: f64,
    pub kappa_lower_log_g: f64,
    pub source: DilatationSource,
}

pub fn asymptotic_row(genus: u64) -> Result<AsymptoticRow> {
    if genus < 4 {
        return Err(Error::GenusTooSmall { genus, min: 4 });
    }
    let log_dil = dilatation_upper_interval(genus).expect("genus >= 4");
    let k = kappa_interval(genus, &log_dil)?;
    let log_g = (genus as f64).ln();
    // the lower bound on kappa is the low end of the interval
    Ok(AsymptoticRow {
        genus,
        log_genus: log_g,
        kappa_upper: k.upper,
        kappa_upper_log_g: k.upper * log_g,
        kappa_lower: k.lower.lo,
        kappa_lower_log_g: k.lower.lo * log_g,
        source: DilatationSource::ClosedFormUpper,
    })
}

/// Rows for `g_min, g_min + step, ...` up to `g_max`.
pub fn asymptotic_report(g_min: u64, g_max: u64, step: u64) -> Result<Vec<AsymptoticRow>> {
    if g_min < 4 {
        return Err(Error::GenusTooSmall {
            genus: g_min,
            min: 4,
        });
    }
    if g_max < g_min || step == 0 {
        return Err(Error::Parse(format!(
            "bad genus range {g_min}..{g_max} step {step}"
        )));
    }
    (g_min..=g_max)
        .step_by(step as usize)
        .map(asymptotic_row)
        .collect()
}

/// `count` genera spread log-uniformly over `[g_min, g_max]`, deduplicated,
/// always including both endpoints.
pub fn log_uniform_genera(g_min: u64, g_max: u64, count: usize) -> Vec<u64> {
    if count <= 1 || g_min >= g_max {
        return vec![g_min];
    }
    let (a, b) = ((g_min as f64).ln(), (g_max as f64).ln());
    let mut out: Vec<u64> = (0..count)
        .map(|k| {
            let t = k as f64 / (count - 1) as f64;
            ((a + t * (b - a)).exp().round() as u64).clamp(g_min, g_max)
        })
        .collect();
    out.dedup();
    out
}
