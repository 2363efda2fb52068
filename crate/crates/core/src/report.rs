//! Report emitters: index matrix, sensitivity table and ranking as CSV, and
//! severity profiles as standalone SVG charts.
//!
//! Every emitter is a pure function of its input, so identical inputs give
//! byte-identical files.

use std::fmt::Write as _;

use crate::assessment::{Assessment, AssessmentProfile};
use crate::catalog::{Arity, IndexKind};
use crate::error::{Error, Result};

/// Formats `v` with six significant digits, `%g` style.
pub fn format_sig6(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{v:.5e}");
    let (mantissa, exponent) = sci.split_once('e').expect("exponent form");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if (-5..6).contains(&exponent) {
        let decimals = (5 - exponent).max(0) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        format!("{}e{exponent}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(format_sig6).unwrap_or_default()
}

fn csv_bytes(header: Vec<String>, rows: Vec<Vec<String>>) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(&header).expect("writing to memory");
    for r in rows {
        w.write_record(&r).expect("writing to memory");
    }
    w.into_inner().expect("flushing to memory")
}

/// Rows are indices in catalog order; columns are the raw per-case index
/// values followed by the profile diagnostics.
pub fn emit_index_matrix(assessment: &Assessment) -> Vec<u8> {
    let mut header = vec!["index".to_string()];
    header.extend(assessment.labels.iter().cloned());
    header.extend(["monotone", "proportionality_score", "sensitivity_avg_percent"].map(String::from));
    if assessment.labels.is_empty() {
        return csv_bytes(header, Vec::new());
    }
    let rows = assessment
        .indices
        .iter()
        .map(|a| {
            let mut row = vec![a.index.abbrev().to_string()];
            if a.case_values.is_empty() {
                row.extend(assessment.labels.iter().map(|_| String::new()));
            } else {
                row.extend(a.case_values.iter().map(|&v| format_sig6(v)));
            }
            row.push(
                a.profile
                    .as_ref()
                    .map(|p| p.is_monotone.to_string())
                    .unwrap_or_default(),
            );
            row.push(opt(a.profile.as_ref().map(|p| p.proportionality_score)));
            row.push(opt(a.sensitivity.map(|s| s.average)));
            row
        })
        .collect();
    csv_bytes(header, rows)
}

/// One row per index: the three least severe levels, the quantities compared
/// at each, the pairwise change percents and their average.
pub fn emit_sensitivity(assessment: &Assessment) -> Vec<u8> {
    let header = [
        "index",
        "level1_severity",
        "level2_severity",
        "level3_severity",
        "value_level1",
        "value_level2",
        "value_level3",
        "change_1_2_percent",
        "change_2_3_percent",
        "change_1_3_percent",
        "sensitivity_avg_percent",
    ]
    .map(String::from)
    .to_vec();
    let levels: Vec<String> = (0..3)
        .map(|i| opt(assessment.severity_fractions.get(i).copied()))
        .collect();
    let rows = assessment
        .indices
        .iter()
        .map(|a| {
            let mut row = vec![a.index.abbrev().to_string()];
            row.extend(levels.iter().cloned());
            match a.sensitivity {
                Some(s) => {
                    row.extend(s.values.iter().map(|&v| format_sig6(v)));
                    row.extend(s.pairwise.iter().map(|&v| format_sig6(v)));
                    row.push(format_sig6(s.average));
                }
                None => row.extend(std::iter::repeat_n(String::new(), 7)),
            }
            row
        })
        .collect();
    csv_bytes(header, rows)
}

/// Ranked indices first, then indices that could not be profiled with the
/// failure code in `status`.
pub fn emit_ranking(assessment: &Assessment) -> Vec<u8> {
    let header = [
        "rank",
        "index",
        "arity",
        "monotone",
        "first_violation",
        "proportionality_score",
        "sensitivity_avg_percent",
        "status",
    ]
    .map(String::from)
    .to_vec();
    let arity = |k: IndexKind| match k.arity() {
        Arity::OneArray => "one-array",
        Arity::TwoArray => "two-array",
    };
    let mut rows: Vec<Vec<String>> = assessment
        .ranking
        .iter()
        .map(|r| {
            vec![
                r.rank.to_string(),
                r.index.abbrev().to_string(),
                arity(r.index).to_string(),
                r.is_monotone.to_string(),
                r.first_violation.map(|p| p.to_string()).unwrap_or_default(),
                format_sig6(r.proportionality_score),
                opt(r.sensitivity_average),
                "ok".to_string(),
            ]
        })
        .collect();
    for a in assessment.indices.iter().filter(|a| a.profile.is_none()) {
        let code = a.failure.as_ref().map_or("unavailable", |f| f.code);
        rows.push(vec![
            String::new(),
            a.index.abbrev().to_string(),
            arity(a.index).to_string(),
            String::new(),
            String::new(),
            String::new(),
            opt(a.sensitivity.map(|s| s.average)),
            code.to_string(),
        ]);
    }
    csv_bytes(header, rows)
}

const PALETTE: [&str; 12] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22",
    "#17becf", "#393b79", "#637939",
];
const DASHES: [&str; 2] = ["", "6 3"];

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 560.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 420.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Line chart of normalized index value against normalized fault severity,
/// one polyline per profile starting from the sound condition at the origin,
/// with the dotted identity diagonal for reference.
pub fn emit_profile_plot(profiles: &[AssessmentProfile], title: &str) -> Result<Vec<u8>> {
    if profiles.is_empty() {
        return Err(Error::EmptyProfiles);
    }
    // signed normalization can dip below zero
    let y_min = profiles
        .iter()
        .flat_map(|p| p.points.iter().map(|q| q.normalized_value))
        .fold(0.0f64, f64::min);
    let y_min = if y_min < 0.0 {
        (y_min * 4.0).floor() / 4.0
    } else {
        0.0
    };
    let px = |s: f64| LEFT + s * (RIGHT - LEFT);
    let py = |v: f64| BOTTOM - (v - y_min) / (1.0 - y_min) * (BOTTOM - TOP);

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="24" font-family="sans-serif" font-size="15" text-anchor="middle">{}</text>"#,
        (LEFT + RIGHT) / 2.0,
        escape(title)
    );

    // axes and ticks
    let _ = writeln!(
        svg,
        r#"<g stroke="black" stroke-width="1" fill="none"><rect x="{LEFT}" y="{TOP}" width="{:.2}" height="{:.2}"/></g>"#,
        RIGHT - LEFT,
        BOTTOM - TOP
    );
    let _ = writeln!(svg, r#"<g font-family="sans-serif" font-size="11" fill="black">"#);
    for i in 0..=4 {
        let s = f64::from(i) / 4.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{BOTTOM}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            BOTTOM + 5.0,
            BOTTOM + 18.0,
            format_sig6(s),
            x = px(s)
        );
    }
    let steps = ((1.0 - y_min) * 4.0).round() as i32;
    for i in 0..=steps {
        let v = y_min + f64::from(i) / 4.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            py(v) + 4.0,
            format_sig6(v),
            y = py(v)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">Normalized fault severity</text>"#,
        (LEFT + RIGHT) / 2.0,
        BOTTOM + 40.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="20" y="{y:.2}" text-anchor="middle" transform="rotate(-90 20 {y:.2})">Normalized index value</text>"#,
        y = (TOP + BOTTOM) / 2.0
    );
    let _ = writeln!(svg, "</g>");

    // proportional reference
    let _ = writeln!(
        svg,
        r#"<line id="identity" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-width="1.5" stroke-dasharray="2 4"/>"#,
        px(0.0),
        py(0.0),
        px(1.0),
        py(1.0)
    );

    for (i, p) in profiles.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let dash = DASHES[(i / PALETTE.len()) % DASHES.len()];
        let dash_attr = if dash.is_empty() {
            String::new()
        } else {
            format!(r#" stroke-dasharray="{dash}""#)
        };
        let mut pts = vec![format!("{:.2},{:.2}", px(0.0), py(0.0))];
        pts.extend(
            p.points
                .iter()
                .map(|q| format!("{:.2},{:.2}", px(q.severity_fraction), py(q.normalized_value))),
        );
        let _ = writeln!(
            svg,
            r#"<polyline data-index="{}" points="{}" fill="none" stroke="{color}" stroke-width="2"{dash_attr}/>"#,
            escape(p.index.abbrev()),
            pts.join(" ")
        );
        for q in &p.points {
            let _ = writeln!(
                svg,
                r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{color}"/>"#,
                px(q.severity_fraction),
                py(q.normalized_value)
            );
        }
        let ly = TOP + 10.0 + 18.0 * i as f64;
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"{dash_attr}/><text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12">{}</text>"#,
            RIGHT + 20.0,
            RIGHT + 45.0,
            RIGHT + 52.0,
            ly + 4.0,
            escape(p.index.abbrev())
        );
    }
    let _ = writeln!(
        svg,
        r#"<line x1="{:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="black" stroke-width="1.5" stroke-dasharray="2 4"/><text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12">proportional</text>"#,
        RIGHT + 20.0,
        RIGHT + 45.0,
        RIGHT + 52.0,
        TOP + 14.0 + 18.0 * profiles.len() as f64,
        ly = TOP + 10.0 + 18.0 * profiles.len() as f64
    );
    svg.push_str("</svg>\n");
    Ok(svg.into_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assessment::profile_from_deltas;
    use crate::two_array::TwoArrayIndexKind;

    #[test]
    fn six_significant_digits() {
        assert_eq!(format_sig6(0.0), "0");
        assert_eq!(format_sig6(1.0), "1");
        assert_eq!(format_sig6(0.5), "0.5");
        assert_eq!(format_sig6(4.0 / 3.0), "1.33333");
        assert_eq!(format_sig6(31.666666666), "31.6667");
        assert_eq!(format_sig6(123456789.0), "1.23457e8");
        assert_eq!(format_sig6(999999.5), "1e6");
        assert_eq!(format_sig6(-0.000123456789), "-0.000123457");
        assert_eq!(format_sig6(1.5e-7), "1.5e-7");
        assert_eq!(format_sig6(100000.0), "100000");
    }

    fn profile(values: &[f64]) -> AssessmentProfile {
        let sev: Vec<f64> = (1..=values.len())
            .map(|i| i as f64 / values.len() as f64)
            .collect();
        profile_from_deltas(IndexKind::Two(TwoArrayIndexKind::DABS), &sev, values).unwrap()
    }

    #[test]
    fn plot_on_identity_matches_diagonal() {
        let svg =
            String::from_utf8(emit_profile_plot(&[profile(&[0.25, 0.5, 0.75, 1.0])], "t").unwrap()).unwrap();
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains("<svg xmlns=\"http://www.w3.org/2000/svg\""));
        let diag = "x1=\"70.00\" y1=\"420.00\" x2=\"560.00\" y2=\"40.00\"";
        assert!(svg.contains(diag));
        assert!(
            svg.contains("points=\"70.00,420.00 192.50,325.00 315.00,230.00 437.50,135.00 560.00,40.00\"")
        );
        assert_eq!(svg.trim_end().lines().last(), Some("</svg>"));
    }

    #[test]
    fn plot_requires_profiles() {
        assert_eq!(emit_profile_plot(&[], "t").unwrap_err().code(), "EmptyProfiles");
    }

    #[test]
    fn plot_escapes_title() {
        let svg = String::from_utf8(emit_profile_plot(&[profile(&[1.0])], "a<b & c").unwrap()).unwrap();
        assert!(svg.contains("a&lt;b &amp; c"));
    }
}
