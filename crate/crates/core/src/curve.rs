//! Frequency sweeps, their validation, and alignment of a reference curve
//! with its fault cases onto one common grid.
//!
//! Interpolation is linear in magnitude over `log10(frequency)`. Nothing is
//! ever extrapolated: families are clipped to the frequency range that every
//! member covers.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// One broken invariant of a [`FrequencyResponse`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Violation {
    TooFewPoints(usize),
    LengthMismatch { frequencies: usize, magnitudes: usize },
    PhaseLengthMismatch { frequencies: usize, phases: usize },
    NonPositiveFrequency { position: usize },
    NotStrictlyIncreasing { position: usize },
    NonFiniteValue { position: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewPoints(n) => write!(f, "at least 2 points required, got {n}"),
            Violation::LengthMismatch {
                frequencies,
                magnitudes,
            } => write!(
                f,
                "length mismatch: {frequencies} frequencies, {magnitudes} magnitudes"
            ),
            Violation::PhaseLengthMismatch { frequencies, phases } => {
                write!(f, "length mismatch: {frequencies} frequencies, {phases} phases")
            }
            Violation::NonPositiveFrequency { position } => {
                write!(f, "frequency at position {position} is not positive")
            }
            Violation::NotStrictlyIncreasing { position } => {
                write!(f, "frequencies not strictly increasing at position {position}")
            }
            Violation::NonFiniteValue { position } => {
                write!(f, "non-finite value at position {position}")
            }
        }
    }
}

/// Outcome of [`validate`]: empty means the curve is well formed.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Validation {
    pub violations: Vec<Violation>,
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks raw sweep arrays against the curve invariants without building a
/// curve. Never fails; all problems are collected.
pub fn validate(frequencies: &[f64], magnitudes: &[f64], phases: Option<&[f64]>) -> Validation {
    let mut violations = Vec::new();
    if frequencies.len() != magnitudes.len() {
        violations.push(Violation::LengthMismatch {
            frequencies: frequencies.len(),
            magnitudes: magnitudes.len(),
        });
    }
    if let Some(p) = phases {
        if p.len() != frequencies.len() {
            violations.push(Violation::PhaseLengthMismatch {
                frequencies: frequencies.len(),
                phases: p.len(),
            });
        }
    }
    if frequencies.len() < 2 {
        violations.push(Violation::TooFewPoints(frequencies.len()));
    }
    for (i, &f) in frequencies.iter().enumerate() {
        if !f.is_finite() {
            violations.push(Violation::NonFiniteValue { position: i });
        } else if f <= 0.0 {
            violations.push(Violation::NonPositiveFrequency { position: i });
        }
        if i > 0 && frequencies[i - 1] >= f {
            violations.push(Violation::NotStrictlyIncreasing { position: i });
        }
    }
    let value_arrays = std::iter::once(magnitudes).chain(phases);
    for arr in value_arrays {
        if let Some(i) = arr.iter().position(|v| !v.is_finite()) {
            violations.push(Violation::NonFiniteValue { position: i });
        }
    }
    Validation { violations }
}

/// A measured or synthesized sweep. Immutable once built; construction
/// enforces every invariant checked by [`validate`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrequencyResponse {
    label: String,
    frequencies: Vec<f64>,
    magnitudes: Vec<f64>,
    phases: Option<Vec<f64>>,
}

impl FrequencyResponse {
    pub fn new(
        label: impl Into<String>,
        frequencies: Vec<f64>,
        magnitudes: Vec<f64>,
        phases: Option<Vec<f64>>,
    ) -> Result<Self> {
        let check = validate(&frequencies, &magnitudes, phases.as_deref());
        if !check.is_ok() {
            return Err(Error::InvalidCurve(check.violations));
        }
        Ok(Self {
            label: label.into(),
            frequencies,
            magnitudes,
            phases,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn magnitudes(&self) -> &[f64] {
        &self.magnitudes
    }

    pub fn phases(&self) -> Option<&[f64]> {
        self.phases.as_deref()
    }

    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    pub fn min_frequency(&self) -> f64 {
        self.frequencies[0]
    }

    pub fn max_frequency(&self) -> f64 {
        self.frequencies[self.frequencies.len() - 1]
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn validate(&self) -> Validation {
        validate(&self.frequencies, &self.magnitudes, self.phases.as_deref())
    }
}

/// Interpolated magnitudes (and phases, when present) of `curve` at each
/// point of `target`, linear in value over log-frequency.
///
/// Points of `target` that coincide with source grid points copy the source
/// values exactly.
pub fn interpolate(curve: &FrequencyResponse, target: &[f64]) -> Result<(Vec<f64>, Option<Vec<f64>>)> {
    if target.is_empty() || target.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidTargetGrid);
    }
    let (lo, hi) = (curve.min_frequency(), curve.max_frequency());
    if let Some(&f) = target.iter().find(|&&f| !(f >= lo && f <= hi)) {
        return Err(Error::TargetOutOfRange {
            frequency: f,
            min: lo,
            max: hi,
        });
    }

    let src = curve.frequencies();
    let mut magnitudes = Vec::with_capacity(target.len());
    let mut phases = curve.phases().map(|_| Vec::with_capacity(target.len()));
    for &f in target {
        match src.binary_search_by(|probe| probe.total_cmp(&f)) {
            Ok(i) => {
                magnitudes.push(curve.magnitudes()[i]);
                if let (Some(out), Some(p)) = (phases.as_mut(), curve.phases()) {
                    out.push(p[i]);
                }
            }
            Err(i) => {
                // lo < f < hi, so 1 <= i <= len - 1
                let (f0, f1) = (src[i - 1], src[i]);
                let t = (f.log10() - f0.log10()) / (f1.log10() - f0.log10());
                magnitudes.push(lerp(curve.magnitudes()[i - 1], curve.magnitudes()[i], t));
                if let (Some(out), Some(p)) = (phases.as_mut(), curve.phases()) {
                    out.push(lerp(p[i - 1], p[i], t));
                }
            }
        }
    }
    Ok((magnitudes, phases))
}

/// [`interpolate`] packaged as a new curve on `target`. The target needs at
/// least two points for the result to be a valid curve.
pub fn resample(curve: &FrequencyResponse, target: &[f64]) -> Result<FrequencyResponse> {
    let (magnitudes, phases) = interpolate(curve, target)?;
    FrequencyResponse::new(curve.label(), target.to_vec(), magnitudes, phases)
}

fn lerp(a: f64, b: f64, t: f64) -> f64 {
    let v = a + t * (b - a);
    v.clamp(a.min(b), a.max(b))
}

/// A comparison curve together with its fault severity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FaultCase {
    pub curve: FrequencyResponse,
    /// Severity in the caller's unit (typically percent of the winding).
    pub severity: f64,
    /// Severity divided by the largest severity in the family.
    pub severity_fraction: f64,
}

/// A reference fingerprint and its fault cases, all on one frequency grid and
/// sorted by ascending severity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveFamily {
    reference: FrequencyResponse,
    cases: Vec<FaultCase>,
}

impl CurveFamily {
    pub fn reference(&self) -> &FrequencyResponse {
        &self.reference
    }

    pub fn cases(&self) -> &[FaultCase] {
        &self.cases
    }

    pub fn frequencies(&self) -> &[f64] {
        self.reference.frequencies()
    }

    pub fn severity_fractions(&self) -> Vec<f64> {
        self.cases.iter().map(|c| c.severity_fraction).collect()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.cases.iter().map(|c| c.curve.label()).collect()
    }
}

/// Builds a [`CurveFamily`] from a reference and `(curve, severity)` pairs.
///
/// The common grid is the reference grid clipped to the intersection of all
/// frequency ranges. Severities may be in any positive unit; they are
/// normalized by the largest one.
pub fn align_family(
    reference: FrequencyResponse,
    cases: Vec<(FrequencyResponse, f64)>,
) -> Result<CurveFamily> {
    if cases.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if let Some(&(_, s)) = cases.iter().find(|(_, s)| !(s.is_finite() && *s > 0.0)) {
        return Err(Error::InvalidSeverity(s));
    }

    let lo = cases
        .iter()
        .map(|(c, _)| c.min_frequency())
        .fold(reference.min_frequency(), f64::max);
    let hi = cases
        .iter()
        .map(|(c, _)| c.max_frequency())
        .fold(reference.max_frequency(), f64::min);
    let grid: Vec<f64> = reference
        .frequencies()
        .iter()
        .copied()
        .filter(|&f| f >= lo && f <= hi)
        .collect();
    if grid.len() < 2 {
        return Err(Error::NoOverlap);
    }

    let mut cases = cases;
    cases.sort_by(|a, b| a.1.total_cmp(&b.1));
    if let Some(w) = cases.windows(2).find(|w| w[0].1 == w[1].1) {
        return Err(Error::DuplicateSeverity(w[0].1));
    }
    let max_severity = cases[cases.len() - 1].1;

    let reference = if grid.len() == reference.len() {
        reference
    } else {
        resample(&reference, &grid)?
    };
    let cases = cases
        .into_iter()
        .map(|(curve, severity)| {
            Ok(FaultCase {
                curve: resample(&curve, &grid)?,
                severity,
                severity_fraction: severity / max_severity,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CurveFamily { reference, cases })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(f: &[f64], m: &[f64]) -> FrequencyResponse {
        FrequencyResponse::new("c", f.to_vec(), m.to_vec(), None).unwrap()
    }

    #[test]
    fn validate_accepts_well_formed() {
        assert!(validate(&[100.0, 200.0, 400.0], &[5.0, 3.0, 8.0], None).is_ok());
    }

    #[test]
    fn validate_flags_duplicate_frequency() {
        let v = validate(&[100.0, 100.0, 200.0], &[5.0, 3.0, 8.0], None);
        assert_eq!(
            v.violations,
            vec![Violation::NotStrictlyIncreasing { position: 1 }]
        );
        assert!(v.violations[0]
            .to_string()
            .contains("frequencies not strictly increasing"));
    }

    #[test]
    fn validate_flags_length_mismatch() {
        let v = validate(&[100.0, 200.0], &[5.0, 3.0, 8.0], None);
        assert!(v.violations[0].to_string().starts_with("length mismatch"));
    }

    #[test]
    fn validate_flags_non_positive_frequency() {
        let v = validate(&[0.0, 200.0], &[5.0, 3.0], None);
        assert_eq!(
            v.violations,
            vec![Violation::NonPositiveFrequency { position: 0 }]
        );
        let v = validate(&[1.0, 2.0], &[5.0, f64::NAN], Some(&[0.0]));
        assert_eq!(v.violations.len(), 2);
    }

    #[test]
    fn resample_identity() {
        let c = curve(&[10.0, 20.0, 50.0], &[1.0, 7.0, 3.0]);
        assert_eq!(resample(&c, c.frequencies()).unwrap(), c);
    }

    #[test]
    fn resample_log_midpoint() {
        let c = curve(&[100.0, 10000.0], &[2.0, 6.0]);
        let (m, _) = interpolate(&c, &[1000.0]).unwrap();
        assert!((m[0] - 4.0).abs() < 1e-12);
        let r = resample(&c, &[1000.0]).unwrap_err();
        // a single-point target cannot form a valid curve
        assert_eq!(r.code(), "InvalidCurve");
        let r = resample(&c, &[1000.0, 10000.0]).unwrap();
        assert!((r.magnitudes()[0] - 4.0).abs() < 1e-12);
    }

    #[test]
    fn resample_constant_curve() {
        let c = curve(&[100.0, 200.0], &[1.0, 1.0]);
        let r = resample(&c, &[150.0, 200.0]).unwrap();
        assert_eq!(r.magnitudes()[0], 1.0);
    }

    #[test]
    fn resample_phase_follows_magnitude() {
        let c = FrequencyResponse::new("p", vec![100.0, 10000.0], vec![2.0, 6.0], Some(vec![-90.0, 90.0]))
            .unwrap();
        let r = resample(&c, &[100.0, 1000.0]).unwrap();
        assert!((r.phases().unwrap()[1]).abs() < 1e-12);
    }

    #[test]
    fn resample_rejects_extrapolation() {
        let c = curve(&[100.0, 200.0], &[1.0, 2.0]);
        let err = resample(&c, &[50.0, 150.0]).unwrap_err();
        assert_eq!(err.code(), "TargetOutOfRange");
        let err = resample(&c, &[150.0, 120.0]).unwrap_err();
        assert_eq!(err.code(), "InvalidTargetGrid");
    }

    #[test]
    fn align_family_identity_grid() {
        let f = [1.0, 2.0, 3.0];
        let r = curve(&f, &[1.0, 2.0, 3.0]);
        let a = curve(&f, &[2.0, 3.0, 4.0]);
        let fam = align_family(r.clone(), vec![(a.clone(), 10.0)]).unwrap();
        assert_eq!(fam.reference(), &r);
        assert_eq!(fam.cases()[0].curve, a);
        assert_eq!(fam.cases()[0].severity_fraction, 1.0);
    }

    #[test]
    fn align_family_normalizes_percent_severities() {
        let f = [1.0, 2.0];
        let r = curve(&f, &[1.0, 2.0]);
        let cases = [50.0, 15.0, 25.0]
            .iter()
            .map(|&s| (curve(&f, &[s, s + 1.0]), s))
            .collect();
        let fam = align_family(r, cases).unwrap();
        assert_eq!(fam.severity_fractions(), vec![0.3, 0.5, 1.0]);
        assert_eq!(fam.cases()[0].curve.magnitudes()[0], 15.0);
    }

    #[test]
    fn align_family_clips_to_intersection() {
        let r = curve(&[20.0, 100.0, 1e3, 3e7], &[1.0, 2.0, 3.0, 4.0]);
        let c = curve(&[100.0, 3e7], &[5.0, 6.0]);
        let fam = align_family(r, vec![(c, 1.0)]).unwrap();
        assert_eq!(fam.frequencies(), &[100.0, 1e3, 3e7]);
        assert_eq!(fam.reference().magnitudes(), &[2.0, 3.0, 4.0]);
    }

    #[test]
    fn align_family_errors() {
        let r = curve(&[1.0, 2.0], &[1.0, 1.0]);
        assert_eq!(align_family(r.clone(), vec![]).unwrap_err().code(), "EmptyFamily");
        let far = curve(&[10.0, 20.0], &[1.0, 1.0]);
        assert_eq!(
            align_family(r.clone(), vec![(far, 1.0)]).unwrap_err().code(),
            "NoOverlap"
        );
        let dup = vec![(r.clone(), 5.0), (r.clone(), 5.0)];
        assert_eq!(
            align_family(r.clone(), dup).unwrap_err().code(),
            "DuplicateSeverity"
        );
        assert_eq!(
            align_family(r.clone(), vec![(r, 0.0)]).unwrap_err().code(),
            "InvalidSeverity"
        );
    }
}
