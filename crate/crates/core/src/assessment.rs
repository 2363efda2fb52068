//! Severity profiles, trend and proportionality diagnostics, sensitivity
//! averages and the resulting index ranking.
//!
//! A profile pairs each fault case's normalized severity with the index's
//! normalized deviation from the sound condition, scaled so the largest
//! deviation in the family is exactly 1. A good index produces a profile that
//! never decreases and hugs the identity diagonal.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::catalog::{all_indices, IndexKind};
use crate::curve::CurveFamily;
use crate::error::{Error, Result};
use crate::one_array::{evaluate_one_array, OneArrayIndexKind};
use crate::two_array::{evaluate_two_array, sound_value, Orientation, TwoArrayIndexKind};

/// How one-array deltas `I(x) - I(y)` are turned into profile values.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// `|I(x) - I(y)| / max |I(x) - I(y)|`.
    #[default]
    Absolute,
    /// `(I(x) - I(y)) / max (I(x) - I(y))`, fails when no delta is positive.
    Signed,
}

impl std::str::FromStr for Normalization {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "absolute" => Ok(Normalization::Absolute),
            "signed" => Ok(Normalization::Signed),
            other => Err(format!(
                "unknown normalization `{other}` (expected signed or absolute)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfilePoint {
    pub severity_fraction: f64,
    pub normalized_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssessmentProfile {
    pub index: IndexKind,
    pub points: Vec<ProfilePoint>,
    pub is_monotone: bool,
    /// 1-based position of the first point whose value drops below its
    /// predecessor.
    pub first_violation: Option<usize>,
    pub proportionality_score: f64,
}

impl AssessmentProfile {
    pub fn values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.normalized_value).collect()
    }
}

/// Divides each delta by the largest one and fills in the diagnostics.
///
/// `severity_fractions` must be ascending and match `deltas` in length.
pub fn profile_from_deltas(
    index: IndexKind,
    severity_fractions: &[f64],
    deltas: &[f64],
) -> Result<AssessmentProfile> {
    if severity_fractions.len() != deltas.len() {
        return Err(Error::LengthMismatch {
            left: severity_fractions.len(),
            right: deltas.len(),
        });
    }
    let max = deltas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(max > 0.0 && max.is_finite()) {
        return Err(Error::DegenerateNormalization {
            index: index.abbrev(),
        });
    }
    let points: Vec<ProfilePoint> = severity_fractions
        .iter()
        .zip(deltas)
        .map(|(&s, &d)| ProfilePoint {
            severity_fraction: s,
            normalized_value: d / max,
        })
        .collect();
    let values: Vec<f64> = points.iter().map(|p| p.normalized_value).collect();
    let (is_monotone, first_violation) = check_monotone(&values);
    Ok(AssessmentProfile {
        index,
        is_monotone,
        first_violation,
        proportionality_score: proportionality_score(&points),
        points,
    })
}

/// Raw index value of every case: `I(y)` for one-array indices, `I(x, y)`
/// for two-array indices.
pub fn case_values(family: &CurveFamily, kind: IndexKind) -> Result<Vec<f64>> {
    let x = family.reference().magnitudes();
    let grid = family.frequencies();
    family
        .cases()
        .iter()
        .map(|c| {
            let y = c.curve.magnitudes();
            match kind {
                IndexKind::One(k) => evaluate_one_array(k, y),
                IndexKind::Two(k) => evaluate_two_array(k, x, y, grid),
            }
        })
        .collect()
}

/// Compares one case against the reference with a single index. One-array
/// indices report the percent change of the statistic relative to the
/// reference.
pub fn compare(kind: IndexKind, x: &[f64], y: &[f64], frequencies: &[f64]) -> Result<f64> {
    match kind {
        IndexKind::One(k) => change_percent(evaluate_one_array(k, x)?, evaluate_one_array(k, y)?),
        IndexKind::Two(k) => evaluate_two_array(k, x, y, frequencies),
    }
}

pub fn normalize_one_array(
    family: &CurveFamily,
    kind: OneArrayIndexKind,
    mode: Normalization,
) -> Result<AssessmentProfile> {
    let reference = evaluate_one_array(kind, family.reference().magnitudes())?;
    let deltas: Vec<f64> = case_values(family, IndexKind::One(kind))?
        .into_iter()
        .map(|v| match mode {
            Normalization::Absolute => (reference - v).abs(),
            Normalization::Signed => reference - v,
        })
        .collect();
    profile_from_deltas(IndexKind::One(kind), &family.severity_fractions(), &deltas)
}

pub fn normalize_two_array_growing(
    family: &CurveFamily,
    kind: TwoArrayIndexKind,
) -> Result<AssessmentProfile> {
    if kind.orientation() != Orientation::GrowsWithDifference {
        return Err(Error::WrongOrientation { index: kind.abbrev() });
    }
    let values = case_values(family, IndexKind::Two(kind))?;
    profile_from_deltas(IndexKind::Two(kind), &family.severity_fractions(), &values)
}

/// Normalizes CC, COV and MM by their drop from the sound value `I(x, x)`.
pub fn normalize_two_array_shrinking(
    family: &CurveFamily,
    kind: TwoArrayIndexKind,
) -> Result<AssessmentProfile> {
    if kind.orientation() != Orientation::ShrinksWithDifference {
        return Err(Error::WrongOrientation { index: kind.abbrev() });
    }
    let sound = sound_value(kind, family.reference().magnitudes(), family.frequencies())?;
    let drops: Vec<f64> = case_values(family, IndexKind::Two(kind))?
        .into_iter()
        .map(|v| sound - v)
        .collect();
    profile_from_deltas(IndexKind::Two(kind), &family.severity_fractions(), &drops)
}

pub fn normalize_two_array(family: &CurveFamily, kind: TwoArrayIndexKind) -> Result<AssessmentProfile> {
    match kind.orientation() {
        Orientation::GrowsWithDifference => normalize_two_array_growing(family, kind),
        Orientation::ShrinksWithDifference => normalize_two_array_shrinking(family, kind),
    }
}

pub fn normalize(family: &CurveFamily, kind: IndexKind, mode: Normalization) -> Result<AssessmentProfile> {
    match kind {
        IndexKind::One(k) => normalize_one_array(family, k, mode),
        IndexKind::Two(k) => normalize_two_array(family, k),
    }
}

/// Returns whether `values` never decrease, and the 1-based position of the
/// first value that does.
pub fn check_monotone(values: &[f64]) -> (bool, Option<usize>) {
    match values.windows(2).position(|w| w[1] < w[0]) {
        Some(i) => (false, Some(i + 2)),
        None => (true, None),
    }
}

/// Mean absolute distance of the profile from the identity diagonal.
pub fn proportionality_score(points: &[ProfilePoint]) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    crate::numeric::sum(
        points
            .iter()
            .map(|p| (p.normalized_value - p.severity_fraction).abs()),
    ) / points.len() as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SensitivityEntry {
    /// Index quantities at the three least severe levels.
    pub values: [f64; 3],
    /// Change percents level 1→2, 2→3 and 1→3, each relative to the earlier
    /// level.
    pub pairwise: [f64; 3],
    pub average: f64,
}

pub fn sensitivity_average(values: [f64; 3]) -> Result<SensitivityEntry> {
    let [i1, i2, i3] = values;
    if !values.iter().all(|v| v.is_finite()) {
        return Err(Error::ZeroBaseline);
    }
    if i1 == 0.0 || i2 == 0.0 {
        return Err(Error::ZeroBaseline);
    }
    let pct = |from: f64, to: f64| 100.0 * (to - from).abs() / from.abs();
    let pairwise = [pct(i1, i2), pct(i2, i3), pct(i1, i3)];
    Ok(SensitivityEntry {
        values,
        pairwise,
        average: (pairwise[0] + pairwise[1] + pairwise[2]) / 3.0,
    })
}

/// `100 * |value - reference| / |reference|`.
pub fn change_percent(reference: f64, value: f64) -> Result<f64> {
    if reference == 0.0 {
        return Err(Error::ZeroBaseline);
    }
    Ok(100.0 * (value - reference).abs() / reference.abs())
}

/// Quantities fed to [`sensitivity_average`] for the three least severe
/// cases: reference-relative change percents for one-array indices, raw
/// values for two-array indices.
pub fn sensitivity_inputs(family: &CurveFamily, kind: IndexKind) -> Result<[f64; 3]> {
    let n = family.cases().len();
    if n < 3 {
        return Err(Error::InsufficientLevels(n));
    }
    let values = case_values(family, kind)?;
    let mut out = [values[0], values[1], values[2]];
    if let IndexKind::One(k) = kind {
        let reference = evaluate_one_array(k, family.reference().magnitudes())?;
        for v in &mut out {
            *v = change_percent(reference, *v)?;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedIndex {
    pub rank: usize,
    pub index: IndexKind,
    pub is_monotone: bool,
    pub first_violation: Option<usize>,
    pub proportionality_score: f64,
    pub sensitivity_average: Option<f64>,
}

/// Orders indices: monotone before non-monotone, then by proportionality
/// score ascending, then sensitivity descending (missing last), then
/// abbreviation.
pub fn rank_indices(
    profiles: &[AssessmentProfile],
    sensitivities: &[(IndexKind, SensitivityEntry)],
) -> Vec<RankedIndex> {
    let mut rows: Vec<RankedIndex> = profiles
        .iter()
        .map(|p| RankedIndex {
            rank: 0,
            index: p.index,
            is_monotone: p.is_monotone,
            first_violation: p.first_violation,
            proportionality_score: p.proportionality_score,
            sensitivity_average: sensitivities
                .iter()
                .find(|(k, _)| *k == p.index)
                .map(|(_, s)| s.average),
        })
        .collect();
    rows.sort_by(|a, b| {
        b.is_monotone
            .cmp(&a.is_monotone)
            .then(a.proportionality_score.total_cmp(&b.proportionality_score))
            .then(match (a.sensitivity_average, b.sensitivity_average) {
                (Some(x), Some(y)) => y.total_cmp(&x),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => Ordering::Equal,
            })
            .then_with(|| {
                let (x, y) = (a.index.abbrev(), b.index.abbrev());
                x.to_ascii_lowercase().cmp(&y.to_ascii_lowercase()).then(x.cmp(y))
            })
    });
    for (i, r) in rows.iter_mut().enumerate() {
        r.rank = i + 1;
    }
    rows
}

#[derive(Debug, Clone, Default)]
pub struct AssessOptions {
    pub normalization: Normalization,
    /// Indices to evaluate; empty means the whole catalog.
    pub indices: Vec<IndexKind>,
}

/// Why an index could not be assessed on a family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexFailure {
    pub code: &'static str,
    pub message: String,
}

impl From<Error> for IndexFailure {
    fn from(e: Error) -> Self {
        IndexFailure {
            code: e.code(),
            message: e.to_string(),
        }
    }
}

/// Everything computed for one index over one family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexAssessment {
    pub index: IndexKind,
    /// Raw per-case values, in case order. Empty when evaluation failed.
    pub case_values: Vec<f64>,
    pub profile: Option<AssessmentProfile>,
    pub sensitivity: Option<SensitivityEntry>,
    /// First failure that prevented a profile from being built.
    pub failure: Option<IndexFailure>,
    pub sensitivity_failure: Option<IndexFailure>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assessment {
    pub normalization: Normalization,
    pub severity_fractions: Vec<f64>,
    pub labels: Vec<String>,
    /// Catalog order.
    pub indices: Vec<IndexAssessment>,
    pub ranking: Vec<RankedIndex>,
}

impl Assessment {
    pub fn get(&self, kind: IndexKind) -> Option<&IndexAssessment> {
        self.indices.iter().find(|a| a.index == kind)
    }

    pub fn profiles(&self) -> impl Iterator<Item = &AssessmentProfile> {
        self.indices.iter().filter_map(|a| a.profile.as_ref())
    }
}

/// Runs every selected index over the family. Per-index domain failures are
/// recorded in the result rather than aborting the run.
pub fn assess_family(family: &CurveFamily, options: &AssessOptions) -> Assessment {
    let selected: Vec<IndexKind> = all_indices()
        .filter(|k| options.indices.is_empty() || options.indices.contains(k))
        .collect();

    let indices: Vec<IndexAssessment> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|&kind| scope.spawn(move || assess_index(family, kind, options.normalization)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("index assessment panicked"))
            .collect()
    });

    let profiles: Vec<AssessmentProfile> = indices.iter().filter_map(|a| a.profile.clone()).collect();
    let sensitivities: Vec<(IndexKind, SensitivityEntry)> = indices
        .iter()
        .filter_map(|a| a.sensitivity.map(|s| (a.index, s)))
        .collect();
    Assessment {
        normalization: options.normalization,
        severity_fractions: family.severity_fractions(),
        labels: family.labels().into_iter().map(String::from).collect(),
        ranking: rank_indices(&profiles, &sensitivities),
        indices,
    }
}

fn assess_index(family: &CurveFamily, kind: IndexKind, mode: Normalization) -> IndexAssessment {
    let mut out = IndexAssessment {
        index: kind,
        case_values: Vec::new(),
        profile: None,
        sensitivity: None,
        failure: None,
        sensitivity_failure: None,
    };
    match case_values(family, kind) {
        Ok(v) => out.case_values = v,
        Err(e) => {
            out.failure = Some(e.into());
            return out;
        }
    }
    match normalize(family, kind, mode) {
        Ok(p) => out.profile = Some(p),
        Err(e) => out.failure = Some(e.into()),
    }
    match sensitivity_inputs(family, kind).and_then(sensitivity_average) {
        Ok(s) => out.sensitivity = Some(s),
        Err(e) => out.sensitivity_failure = Some(e.into()),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{align_family, FrequencyResponse};
    use proptest::prelude::*;
    use TwoArrayIndexKind::*;

    const DABS_KIND: IndexKind = IndexKind::Two(DABS);

    fn family(reference: &[f64], cases: &[(&[f64], f64)]) -> CurveFamily {
        let grid: Vec<f64> = (0..reference.len()).map(|i| 10.0 * (i + 1) as f64).collect();
        let r = FrequencyResponse::new("ref", grid.clone(), reference.to_vec(), None).unwrap();
        let cases = cases
            .iter()
            .enumerate()
            .map(|(i, (m, s))| {
                (
                    FrequencyResponse::new(format!("c{i}"), grid.clone(), m.to_vec(), None).unwrap(),
                    *s,
                )
            })
            .collect();
        align_family(r, cases).unwrap()
    }

    #[test]
    fn deltas_normalize_by_largest() {
        let p = profile_from_deltas(DABS_KIND, &[0.3, 0.5, 1.0], &[2.0, 5.0, 10.0]).unwrap();
        assert_eq!(p.values(), vec![0.2, 0.5, 1.0]);
        let p = profile_from_deltas(DABS_KIND, &[0.25, 0.75, 1.0], &[1.0, 3.0, 4.0]).unwrap();
        assert_eq!(p.values(), vec![0.25, 0.75, 1.0]);
        assert!(p.is_monotone);
        assert_eq!(p.proportionality_score, 0.0);
        let p = profile_from_deltas(DABS_KIND, &[1.0], &[0.7]).unwrap();
        assert_eq!(p.values(), vec![1.0]);
    }

    #[test]
    fn zero_deltas_are_degenerate() {
        let err = profile_from_deltas(DABS_KIND, &[0.5, 1.0], &[0.0, 0.0]).unwrap_err();
        assert_eq!(err.code(), "DegenerateNormalization");
    }

    #[test]
    fn one_array_identical_cases_are_degenerate() {
        let fam = family(
            &[1.0, 2.0, 3.0],
            &[(&[1.0, 2.0, 3.0], 1.0), (&[3.0, 2.0, 1.0], 2.0)],
        );
        let err = normalize_one_array(&fam, OneArrayIndexKind::Av, Normalization::Absolute).unwrap_err();
        assert_eq!(err.code(), "DegenerateNormalization");
    }

    #[test]
    fn one_array_signed_and_absolute_modes() {
        // Av: reference 2, cases 3 and 1.5
        let fam = family(&[1.0, 3.0], &[(&[2.0, 4.0], 1.0), (&[1.0, 2.0], 2.0)]);
        let abs = normalize_one_array(&fam, OneArrayIndexKind::Av, Normalization::Absolute).unwrap();
        assert_eq!(abs.values(), vec![1.0, 0.5]);
        let signed = normalize_one_array(&fam, OneArrayIndexKind::Av, Normalization::Signed).unwrap();
        assert_eq!(signed.values(), vec![-2.0, 1.0]);
        assert_eq!(signed.first_violation, None);
        let fam = family(&[1.0, 3.0], &[(&[2.0, 4.0], 1.0)]);
        assert_eq!(
            normalize_one_array(&fam, OneArrayIndexKind::Av, Normalization::Signed)
                .unwrap_err()
                .code(),
            "DegenerateNormalization"
        );
    }

    #[test]
    fn shrinking_normalization_matches_hand_example() {
        // MM drops of {0.1, 0.2, 0.4} from a sound value of 1
        let mm = [0.9, 0.8, 0.6];
        let drops: Vec<f64> = mm.iter().map(|v| 1.0 - v).collect();
        let p = profile_from_deltas(IndexKind::Two(MM), &[1.0 / 3.0, 2.0 / 3.0, 1.0], &drops).unwrap();
        let expected = [0.25, 0.5, 1.0];
        for (v, e) in p.values().iter().zip(expected) {
            assert!((v - e).abs() < 1e-12);
        }
        assert_eq!(p.values()[2], 1.0);
    }

    #[test]
    fn shrinking_sound_values() {
        let x = [1.0, 4.0, 2.0, 8.0];
        let fam = family(&x, &[(&[1.0, 3.0, 2.0, 6.0], 1.0), (&[2.0, 3.0, 3.0, 4.0], 2.0)]);
        assert_eq!(sound_value(CC, &x, fam.frequencies()).unwrap(), 1.0);
        assert_eq!(sound_value(MM, &x, fam.frequencies()).unwrap(), 1.0);
        let v = crate::one_array::variance(&x).unwrap();
        assert!((sound_value(COV, &x, fam.frequencies()).unwrap() - v).abs() < 1e-12);
        for k in [CC, COV, MM] {
            let p = normalize_two_array_shrinking(&fam, k).unwrap();
            assert_eq!(p.values().iter().copied().fold(f64::MIN, f64::max), 1.0);
        }
        assert_eq!(
            normalize_two_array_shrinking(&fam, DABS).unwrap_err().code(),
            "WrongOrientation"
        );
        assert_eq!(
            normalize_two_array_growing(&fam, MM).unwrap_err().code(),
            "WrongOrientation"
        );
    }

    #[test]
    fn monotone_checks() {
        assert_eq!(check_monotone(&[0.2, 0.5, 1.0]), (true, None));
        assert_eq!(check_monotone(&[0.3, 0.7, 0.6, 1.0]), (false, Some(3)));
        assert_eq!(check_monotone(&[0.4]), (true, None));
        assert_eq!(check_monotone(&[0.5, 0.5, 1.0]), (true, None));
    }

    #[test]
    fn proportionality_examples() {
        let on_line = [
            ProfilePoint {
                severity_fraction: 0.5,
                normalized_value: 0.5,
            },
            ProfilePoint {
                severity_fraction: 1.0,
                normalized_value: 1.0,
            },
        ];
        assert_eq!(proportionality_score(&on_line), 0.0);
        let mut pts = vec![
            ProfilePoint {
                severity_fraction: 0.5,
                normalized_value: 0.9,
            },
            ProfilePoint {
                severity_fraction: 1.0,
                normalized_value: 1.0,
            },
        ];
        assert!((proportionality_score(&pts) - 0.2).abs() < 1e-15);
        pts.reverse();
        assert!((proportionality_score(&pts) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn sensitivity_examples() {
        let s = sensitivity_average([10.0, 12.0, 15.0]).unwrap();
        assert_eq!(s.pairwise, [20.0, 25.0, 50.0]);
        assert!((s.average - 31.666_666_666_666_668).abs() < 1e-9);
        assert_eq!(sensitivity_average([4.0; 3]).unwrap().average, 0.0);
        assert_eq!(
            sensitivity_average([0.0, 1.0, 2.0]).unwrap_err().code(),
            "ZeroBaseline"
        );
        assert_eq!(
            sensitivity_average([1.0, 0.0, 2.0]).unwrap_err().code(),
            "ZeroBaseline"
        );
    }

    #[test]
    fn too_few_levels_for_sensitivity() {
        let fam = family(&[1.0, 3.0], &[(&[2.0, 4.0], 1.0)]);
        assert_eq!(
            sensitivity_inputs(&fam, DABS_KIND).unwrap_err().code(),
            "InsufficientLevels"
        );
    }

    fn profile(kind: IndexKind, values: &[f64]) -> AssessmentProfile {
        let sev: Vec<f64> = (1..=values.len())
            .map(|i| i as f64 / values.len() as f64)
            .collect();
        profile_from_deltas(kind, &sev, values).unwrap()
    }

    #[test]
    fn ranking_puts_monotone_first_and_breaks_ties_by_name() {
        // perfectly proportional but bent back once
        let mut bent = profile(IndexKind::Two(SpD), &[0.34, 1.0, 0.9]);
        bent.proportionality_score = 0.0;
        let other_bent = profile(IndexKind::Two(ASLE), &[1.0, 0.5, 0.9]);
        let a = profile(IndexKind::Two(SSE), &[0.9, 0.95, 1.0]);
        let b = profile(IndexKind::Two(ED), &[0.9, 0.95, 1.0]);
        let ranked = rank_indices(&[bent, a, other_bent, b], &[]);
        let order: Vec<&str> = ranked.iter().map(|r| r.index.abbrev()).collect();
        assert_eq!(order, ["ED", "SSE", "SpD", "ASLE"]);
        assert!(!ranked[2].is_monotone && !ranked[3].is_monotone);
        assert_eq!(
            ranked.iter().map(|r| r.rank).collect::<Vec<_>>(),
            vec![1, 2, 3, 4]
        );
    }

    #[test]
    fn ranking_prefers_higher_sensitivity_on_equal_scores() {
        let a = profile(IndexKind::Two(CSD), &[0.5, 1.0]);
        let b = profile(IndexKind::Two(ASLE), &[0.5, 1.0]);
        let s = |avg| SensitivityEntry {
            values: [1.0; 3],
            pairwise: [0.0; 3],
            average: avg,
        };
        let ranked = rank_indices(
            &[b, a],
            &[(IndexKind::Two(CSD), s(30.0)), (IndexKind::Two(ASLE), s(10.0))],
        );
        assert_eq!(ranked[0].index, IndexKind::Two(CSD));
    }

    #[test]
    fn assess_family_records_failures_per_index() {
        // case identical to reference: every growing index is degenerate
        let fam = family(&[1.0, 2.0, 3.0], &[(&[1.0, 2.0, 3.0], 1.0)]);
        let a = assess_family(&fam, &AssessOptions::default());
        assert_eq!(a.indices.len(), 23);
        let dabs = a.get(DABS_KIND).unwrap();
        assert_eq!(dabs.case_values, vec![0.0]);
        assert_eq!(dabs.failure.as_ref().unwrap().code, "DegenerateNormalization");
        assert_eq!(
            dabs.sensitivity_failure.as_ref().unwrap().code,
            "InsufficientLevels"
        );
        assert!(a.ranking.is_empty());
    }

    proptest! {
        #[test]
        fn inserted_drop_flips_monotone(mut v in prop::collection::vec(0.0f64..1.0, 2..30), at in 1usize..30, drop in 1e-6f64..1.0) {
            v.sort_by(f64::total_cmp);
            prop_assert_eq!(check_monotone(&v), (true, None));
            let at = at % v.len();
            prop_assume!(at >= 1);
            v.insert(at, v[at - 1] - drop);
            prop_assert_eq!(check_monotone(&v), (false, Some(at + 1)));
        }

        #[test]
        fn sensitivity_scale_invariant(i in prop::array::uniform3(0.1f64..100.0), k in 0.01f64..100.0) {
            let a = sensitivity_average(i).unwrap().average;
            let b = sensitivity_average(i.map(|v| v * k)).unwrap().average;
            prop_assert!((a - b).abs() <= 1e-9 * a.max(1.0));
        }
    }
}
