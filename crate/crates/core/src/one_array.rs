//! Single-curve statistics. Diagnosis with these compares the statistic of a
//! test curve against the same statistic of the reference curve.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{mean, sum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OneArrayIndexKind {
    Av,
    M,
    Har,
    R,
    AD,
    V,
    SD,
    SEM,
    RD,
}

impl OneArrayIndexKind {
    pub const ALL: [OneArrayIndexKind; 9] = [
        Self::Av,
        Self::M,
        Self::Har,
        Self::R,
        Self::AD,
        Self::V,
        Self::SD,
        Self::SEM,
        Self::RD,
    ];

    pub fn abbrev(self) -> &'static str {
        match self {
            Self::Av => "Av",
            Self::M => "M",
            Self::Har => "Har",
            Self::R => "R",
            Self::AD => "AD",
            Self::V => "V",
            Self::SD => "SD",
            Self::SEM => "SEM",
            Self::RD => "RD",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Av => "Average",
            Self::M => "Median",
            Self::Har => "Harmonic Mean",
            Self::R => "Range",
            Self::AD => "Average Deviation",
            Self::V => "Variance",
            Self::SD => "Standard Deviation",
            Self::SEM => "Standard Error of Mean",
            Self::RD => "Relation Dispersion",
        }
    }
}

fn non_empty(x: &[f64]) -> Result<()> {
    if x.is_empty() {
        Err(Error::EmptyArray)
    } else {
        Ok(())
    }
}

pub fn average(x: &[f64]) -> Result<f64> {
    non_empty(x)?;
    Ok(mean(x))
}

/// Sample median: the middle order statistic, or the mean of the two middle
/// ones for even lengths.
pub fn median(x: &[f64]) -> Result<f64> {
    non_empty(x)?;
    let mut sorted = x.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    Ok(if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    })
}

pub fn harmonic_mean(x: &[f64]) -> Result<f64> {
    non_empty(x)?;
    if let Some((position, &value)) = x.iter().enumerate().find(|(_, v)| v.is_nan() || **v <= 0.0) {
        return Err(Error::NonPositiveValue { position, value });
    }
    Ok(x.len() as f64 / sum(x.iter().map(|v| 1.0 / v)))
}

pub fn range(x: &[f64]) -> Result<f64> {
    non_empty(x)?;
    let (lo, hi) = x.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
        (lo.min(v), hi.max(v))
    });
    Ok(hi - lo)
}

pub fn average_deviation(x: &[f64]) -> Result<f64> {
    non_empty(x)?;
    let m = mean(x);
    Ok(sum(x.iter().map(|v| (v - m).abs())) / x.len() as f64)
}

/// Population variance (divisor `N`).
pub fn variance(x: &[f64]) -> Result<f64> {
    non_empty(x)?;
    let m = mean(x);
    Ok(sum(x.iter().map(|v| (v - m) * (v - m))) / x.len() as f64)
}

pub fn standard_deviation(x: &[f64]) -> Result<f64> {
    Ok(variance(x)?.sqrt())
}

pub fn standard_error_of_mean(x: &[f64]) -> Result<f64> {
    Ok(standard_deviation(x)? / (x.len() as f64).sqrt())
}

/// Coefficient of variation in percent, `100 * SD / mean`.
pub fn relation_dispersion(x: &[f64]) -> Result<f64> {
    let m = average(x)?;
    if m == 0.0 {
        return Err(Error::ZeroMean);
    }
    Ok(100.0 * standard_deviation(x)? / m)
}

pub fn evaluate_one_array(kind: OneArrayIndexKind, x: &[f64]) -> Result<f64> {
    match kind {
        OneArrayIndexKind::Av => average(x),
        OneArrayIndexKind::M => median(x),
        OneArrayIndexKind::Har => harmonic_mean(x),
        OneArrayIndexKind::R => range(x),
        OneArrayIndexKind::AD => average_deviation(x),
        OneArrayIndexKind::V => variance(x),
        OneArrayIndexKind::SD => standard_deviation(x),
        OneArrayIndexKind::SEM => standard_error_of_mean(x),
        OneArrayIndexKind::RD => relation_dispersion(x),
    }
}
