//! Indices computed jointly from a reference curve `x` and a compared curve
//! `y` sampled on the same grid.
//!
//! All functions take magnitude arrays, not curves, so they can be used on any
//! aligned data. Only [`sda`] needs the frequency grid.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{mean, sum, trapezoid};
use crate::one_array;

/// Whether an index's value rises or falls as two curves drift apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    GrowsWithDifference,
    ShrinksWithDifference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TwoArrayIndexKind {
    CC,
    COV,
    ASLE,
    DABS,
    MM,
    SSE,
    RSSE,
    SSRE,
    SSMMRE,
    CSD,
    SpD,
    SDA,
    ED,
    AADRR,
}

impl TwoArrayIndexKind {
    pub const ALL: [TwoArrayIndexKind; 14] = [
        Self::CC,
        Self::COV,
        Self::ASLE,
        Self::DABS,
        Self::MM,
        Self::SSE,
        Self::RSSE,
        Self::SSRE,
        Self::SSMMRE,
        Self::CSD,
        Self::SpD,
        Self::SDA,
        Self::ED,
        Self::AADRR,
    ];

    pub fn abbrev(self) -> &'static str {
        match self {
            Self::CC => "CC",
            Self::COV => "COV",
            Self::ASLE => "ASLE",
            Self::DABS => "DABS",
            Self::MM => "MM",
            Self::SSE => "SSE",
            Self::RSSE => "RSSE",
            Self::SSRE => "SSRE",
            Self::SSMMRE => "SSMMRE",
            Self::CSD => "CSD",
            Self::SpD => "SpD",
            Self::SDA => "SDA",
            Self::ED => "ED",
            Self::AADRR => "AADRR",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::CC => "Correlation Coefficient",
            Self::COV => "Covariance",
            Self::ASLE => "Absolute Sum of Logarithmic Error",
            Self::DABS => "Absolute Average Difference",
            Self::MM => "Min-Max Index",
            Self::SSE => "Sum of Squared Error",
            Self::RSSE => "Root of Sum of Squared Error",
            Self::SSRE => "Sum of Squared Ratio Error",
            Self::SSMMRE => "Sum of Squared Max-Min Ratio Error",
            Self::CSD => "Comparative Standard Deviation",
            Self::SpD => "Spectrum Deviation",
            Self::SDA => "Standardized Difference Area",
            Self::ED => "Euclidean Distance",
            Self::AADRR => "Absolute Average Difference to Range Ratio",
        }
    }

    pub fn orientation(self) -> Orientation {
        match self {
            Self::CC | Self::COV | Self::MM => Orientation::ShrinksWithDifference,
            _ => Orientation::GrowsWithDifference,
        }
    }
}

fn check_pair(x: &[f64], y: &[f64]) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(Error::TooFewPoints(x.len()));
    }
    Ok(x.len())
}

fn all_positive(x: &[f64], y: &[f64]) -> Result<()> {
    for arr in [x, y] {
        if let Some((position, &value)) = arr.iter().enumerate().find(|(_, v)| v.is_nan() || **v <= 0.0) {
            return Err(Error::NonPositiveValue { position, value });
        }
    }
    Ok(())
}

fn pointwise(x: &[f64], y: &[f64], f: impl Fn(f64, f64) -> f64) -> f64 {
    sum(x.iter().zip(y).map(|(&a, &b)| f(a, b)))
}

/// Pearson correlation coefficient.
pub fn correlation_coefficient(x: &[f64], y: &[f64]) -> Result<f64> {
    check_pair(x, y)?;
    let (mx, my) = (mean(x), mean(y));
    let sxx = sum(x.iter().map(|v| (v - mx) * (v - mx)));
    let syy = sum(y.iter().map(|v| (v - my) * (v - my)));
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ConstantArray);
    }
    let sxy = pointwise(x, y, |a, b| (a - mx) * (b - my));
    // rounding can push |r| a hair past 1
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

pub fn covariance(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = check_pair(x, y)?;
    let (mx, my) = (mean(x), mean(y));
    Ok(pointwise(x, y, |a, b| (a - mx) * (b - my)) / n as f64)
}

/// Mean absolute difference of the two curves in dB.
pub fn asle(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = check_pair(x, y)?;
    for arr in [x, y] {
        if let Some(i) = arr.iter().position(|&v| v == 0.0) {
            return Err(Error::ZeroMagnitude(i));
        }
    }
    Ok(pointwise(x, y, |a, b| {
        (20.0 * a.abs().log10() - 20.0 * b.abs().log10()).abs()
    }) / n as f64)
}

pub fn dabs(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = check_pair(x, y)?;
    Ok(pointwise(x, y, |a, b| (a - b).abs()) / n as f64)
}

pub fn min_max(x: &[f64], y: &[f64]) -> Result<f64> {
    check_pair(x, y)?;
    all_positive(x, y)?;
    Ok(pointwise(x, y, f64::min) / pointwise(x, y, f64::max))
}

/// Mean squared error (divisor `N`).
pub fn sse(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = check_pair(x, y)?;
    Ok(pointwise(x, y, |a, b| (a - b) * (a - b)) / n as f64)
}

pub fn rsse(x: &[f64], y: &[f64]) -> Result<f64> {
    Ok(sse(x, y)?.sqrt())
}

pub fn ed(x: &[f64], y: &[f64]) -> Result<f64> {
    check_pair(x, y)?;
    Ok(pointwise(x, y, |a, b| (a - b) * (a - b)).sqrt())
}

/// Mean squared deviation of `y / x` from one. `x` is the reference.
pub fn ssre(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = check_pair(x, y)?;
    if let Some(i) = x.iter().position(|&v| v == 0.0) {
        return Err(Error::ZeroReferenceValue(i));
    }
    Ok(pointwise(x, y, |a, b| (b / a - 1.0).powi(2)) / n as f64)
}

/// Mean of `max / min - 1`. The summand is not squared.
pub fn ssmmre(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = check_pair(x, y)?;
    all_positive(x, y)?;
    Ok(pointwise(x, y, |a, b| a.max(b) / a.min(b) - 1.0) / n as f64)
}

pub fn csd(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = check_pair(x, y)?;
    let (mx, my) = (mean(x), mean(y));
    Ok((pointwise(x, y, |a, b| ((a - mx) - (b - my)).powi(2)) / n as f64).sqrt())
}

pub fn spectrum_deviation(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = check_pair(x, y)?;
    if let Some(i) = x.iter().zip(y).position(|(a, b)| a + b == 0.0) {
        return Err(Error::ZeroMidpoint(i));
    }
    Ok(pointwise(x, y, |a, b| {
        let m = 0.5 * (a + b);
        ((a / m - 1.0).powi(2) + (b / m - 1.0).powi(2)).sqrt()
    }) / n as f64)
}

/// Area between the curves over the area under the reference, both by the
/// trapezoidal rule on `frequencies`.
pub fn sda(x: &[f64], y: &[f64], frequencies: &[f64]) -> Result<f64> {
    check_pair(x, y)?;
    if frequencies.len() != x.len() {
        return Err(Error::LengthMismatch {
            left: frequencies.len(),
            right: x.len(),
        });
    }
    let reference = trapezoid(frequencies, x);
    if reference == 0.0 {
        return Err(Error::ZeroReferenceIntegral);
    }
    let diff: Vec<f64> = x.iter().zip(y).map(|(a, b)| (a - b).abs()).collect();
    Ok(trapezoid(frequencies, &diff) / reference)
}

/// DABS divided by the range of the compared curve `y`.
pub fn aadrr(x: &[f64], y: &[f64]) -> Result<f64> {
    let d = dabs(x, y)?;
    let r = one_array::range(y)?;
    if r == 0.0 {
        return Err(Error::ZeroRange);
    }
    Ok(d / r)
}

/// Uniform dispatch. `frequencies` is consumed by SDA only.
pub fn evaluate_two_array(kind: TwoArrayIndexKind, x: &[f64], y: &[f64], frequencies: &[f64]) -> Result<f64> {
    use TwoArrayIndexKind::*;
    match kind {
        CC => correlation_coefficient(x, y),
        COV => covariance(x, y),
        ASLE => asle(x, y),
        DABS => dabs(x, y),
        MM => min_max(x, y),
        SSE => sse(x, y),
        RSSE => rsse(x, y),
        SSRE => ssre(x, y),
        SSMMRE => ssmmre(x, y),
        CSD => csd(x, y),
        SpD => spectrum_deviation(x, y),
        SDA => sda(x, y, frequencies),
        ED => ed(x, y),
        AADRR => aadrr(x, y),
    }
}

/// Value of the index when a curve is compared with itself.
pub fn sound_value(kind: TwoArrayIndexKind, x: &[f64], frequencies: &[f64]) -> Result<f64> {
    evaluate_two_array(kind, x, x, frequencies)
}
