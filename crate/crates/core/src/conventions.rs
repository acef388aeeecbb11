//! Resolution of the two sign conventions the construction leaves open: the
//! direction of the rotation and the edge orientation used for path counts.
//!
//! `auto` runs a fixed calibration at genus 9. The rotation is chosen by
//! comparing characteristic polynomials with [`expected_char_poly`]; the
//! orientation by comparing path counts with seven per-vertex formulas.
//! Whatever is chosen is returned as a value and recorded by callers; there
//! is no global state.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::charpoly::char_poly;
use crate::curves::{CurveId, CurveSystem, RotationDirection};
use crate::digraph::{Digraph, Orientation};
use crate::error::{Error, Result};
use crate::spectral::expected_char_poly;
use crate::twist::phi_matrix_for;

pub const CALIBRATION_GENUS: u64 = 9;

/// A convention flag as given on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Choice<T> {
    #[default]
    Auto,
    Fixed(T),
}

impl FromStr for Choice<RotationDirection> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Choice::Auto),
            "plus" | "+1" => Ok(Choice::Fixed(RotationDirection::Plus)),
            "minus" | "-1" => Ok(Choice::Fixed(RotationDirection::Minus)),
            _ => Err(Error::Parse(format!("unknown rotation '{s}' (auto|plus|minus)"))),
        }
    }
}

impl FromStr for Choice<Orientation> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Choice::Auto),
            "columns" => Ok(Choice::Fixed(Orientation::Columns)),
            "rows" => Ok(Choice::Fixed(Orientation::Rows)),
            _ => Err(Error::Parse(format!(
                "unknown orientation '{s}' (auto|columns|rows)"
            ))),
        }
    }
}

/// How a convention was settled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Resolution {
    /// Set explicitly by the caller.
    Override,
    /// Exactly one candidate passed calibration.
    Calibrated,
    /// No candidate (or more than one) passed; the default was kept.
    Unresolved,
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Resolution::Override => "override",
            Resolution::Calibrated => "calibrated",
            Resolution::Unresolved => "unresolved",
        })
    }
}

/// One formula miss during orientation calibration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaMismatch {
    pub vertex: String,
    pub j: usize,
    pub expected: i64,
    pub observed: String,
}

/// How well one orientation reproduces the path-count formulas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationFit {
    pub orientation: Orientation,
    /// `(vertex, j)` pairs tested over `j` in `[2, g-2]`.
    pub tested: usize,
    pub matched: usize,
    /// Longest run of consecutive `j` in `[1, g-2]` on which all seven
    /// formulas hold, if any.
    pub admissible_j: Option<(usize, usize)>,
    pub mismatches: Vec<FormulaMismatch>,
}

impl OrientationFit {
    pub fn is_exact(&self) -> bool {
        self.matched == self.tested
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Conventions {
    pub rotation: RotationDirection,
    pub rotation_resolution: Resolution,
    pub orientation: Orientation,
    pub orientation_resolution: Resolution,
    pub calibration_genus: u64,
    /// Whether `char_poly` matched the closed form at the calibration genus,
    /// for `+1` and `-1` rotations. Empty when the rotation was overridden.
    pub rotation_matches: Vec<(RotationDirection, bool)>,
    /// Empty when the orientation was overridden.
    pub orientation_fits: Vec<OrientationFit>,
}

impl Conventions {
    /// Fixed conventions with no calibration.
    pub fn fixed(rotation: RotationDirection, orientation: Orientation) -> Self {
        Conventions {
            rotation,
            rotation_resolution: Resolution::Override,
            orientation,
            orientation_resolution: Resolution::Override,
            calibration_genus: CALIBRATION_GENUS,
            rotation_matches: Vec::new(),
            orientation_fits: Vec::new(),
        }
    }

    pub fn system(&self, genus: u64) -> Result<CurveSystem> {
        CurveSystem::with_rotation(genus, self.rotation)
    }
}

/// The seven per-vertex path-count formulas, as `(vertex, value at j)`.
pub fn path_count_formulas(sys: &CurveSystem) -> Vec<(CurveId, fn(i64) -> i64)> {
    let top = sys.period() as i64 - 1;
    vec![
        (sys.a(0), |j| 10 * j - 6),
        (sys.a(1), |j| 5 * j),
        (sys.b(0), |j| 10 * j - 1),
        (sys.b(1), |j| 5 * j),
        (sys.c(0), |j| 10 * j - 6),
        (sys.d(top), |j| 10 * j - 11),
        (sys.d(0), |j| 5 * j - 1),
    ]
}

/// Compares path counts under `orientation` with the seven formulas.
pub fn orientation_fit(sys: &CurveSystem, orientation: Orientation) -> Result<OrientationFit> {
    let m = phi_matrix_for(sys);
    let graph = Digraph::for_curves(sys, &m, orientation)?;
    let formulas = path_count_formulas(sys);
    let g = sys.genus() as usize;
    let mut tested = 0;
    let mut matched = 0;
    let mut mismatches = Vec::new();
    let mut all_hold = Vec::new();
    for j in 1..=g - 2 {
        let counts = graph.path_counts(j);
        let mut holds = true;
        for (v, f) in &formulas {
            let expected = f(j as i64);
            let observed = &counts[sys.position(*v)];
            let ok = *observed == BigInt::from(expected);
            holds &= ok;
            if j >= 2 {
                tested += 1;
                if ok {
                    matched += 1;
                } else {
                    mismatches.push(FormulaMismatch {
                        vertex: v.to_string(),
                        j,
                        expected,
                        observed: observed.to_string(),
                    });
                }
            }
        }
        all_hold.push((j, holds));
    }
    Ok(OrientationFit {
        orientation,
        tested,
        matched,
        admissible_j: longest_run(&all_hold),
        mismatches,
    })
}

fn longest_run(flags: &[(usize, bool)]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut start: Option<usize> = None;
    for &(j, ok) in flags {
        match (ok, start) {
            (true, None) => start = Some(j),
            (false, Some(_)) => start = None,
            _ => {}
        }
        if let Some(s) = start {
            if best.is_none_or(|(a, b)| j - s > b - a) {
                best = Some((s, j));
            }
        }
    }
    best
}

/// Settles both conventions, calibrating whichever is `Auto`.
pub fn resolve(rotation: Choice<RotationDirection>, orientation: Choice<Orientation>) -> Result<Conventions> {
    let mut conv = Conventions::fixed(RotationDirection::Plus, Orientation::Columns);

    match rotation {
        Choice::Fixed(r) => conv.rotation = r,
        Choice::Auto => {
            let expected = expected_char_poly(CALIBRATION_GENUS)?;
            for dir in [RotationDirection::Plus, RotationDirection::Minus] {
                let sys = CurveSystem::with_rotation(CALIBRATION_GENUS, dir)?;
                let p = char_poly(&phi_matrix_for(&sys))?;
                conv.rotation_matches.push((dir, p == expected));
            }
            let hits: Vec<RotationDirection> = conv
                .rotation_matches
                .iter()
                .filter(|(_, ok)| *ok)
                .map(|(d, _)| *d)
                .collect();
            if let [only] = hits[..] {
                conv.rotation = only;
                conv.rotation_resolution = Resolution::Calibrated;
            } else {
                conv.rotation_resolution = Resolution::Unresolved;
            }
        }
    }

    match orientation {
        Choice::Fixed(o) => conv.orientation = o,
        Choice::Auto => {
            let sys = conv.system(CALIBRATION_GENUS)?;
            for o in [Orientation::Columns, Orientation::Rows] {
                conv.orientation_fits.push(orientation_fit(&sys, o)?);
            }
            let exact: Vec<Orientation> = conv
                .orientation_fits
                .iter()
                .filter(|f| f.is_exact())
                .map(|f| f.orientation)
                .collect();
            if let [only] = exact[..] {
                conv.orientation = only;
                conv.orientation_resolution = Resolution::Calibrated;
            } else {
                conv.orientation_resolution = Resolution::Unresolved;
            }
        }
    }
    Ok(conv)
}
