//! Synthetic winding sweeps from a lumped RLC ladder.
//!
//! Each section is a series branch (resistance and inductance in series, with
//! the inter-turn capacitance across them) followed by a shunt capacitance to
//! ground. The input impedance is found by folding the ladder from the far
//! terminal back to the input. Inter-turn faults short the series branch of
//! the first sections through a small contact resistance.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curve::{align_family, CurveFamily, FrequencyResponse};
use crate::error::{Error, Result};

pub const DEFAULT_CONTACT_RESISTANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Termination {
    Open,
    Grounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionValues {
    /// ohm
    pub series_resistance: f64,
    /// henry
    pub series_inductance: f64,
    /// farad
    pub shunt_capacitance_to_ground: f64,
    /// farad, across the series branch
    pub inter_turn_capacitance: f64,
}

/// Multiplicative magnitude noise `|Z| * (1 + amplitude * u)`, `u` uniform in
/// `[-1, 1]`, drawn from a seeded generator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseSpec {
    pub amplitude: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub f_start: f64,
    pub f_stop: f64,
    pub points_per_decade: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise: Option<NoiseSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LadderConfig {
    pub section_count: u32,
    pub per_section: SectionValues,
    pub termination: Termination,
    pub sweep: SweepSpec,
}

impl LadderConfig {
    /// The fixed configuration used by the acceptance suite. Mirrors
    /// `configs/acceptance_ladder.json`.
    ///
    /// The far end is grounded, as when a phase is measured against its
    /// neutral, and the section resistance damps the resonances enough for
    /// the grid to resolve them.
    pub fn acceptance() -> Self {
        LadderConfig {
            section_count: 100,
            per_section: SectionValues {
                series_resistance: 0.5,
                series_inductance: 50e-6,
                shunt_capacitance_to_ground: 200e-12,
                inter_turn_capacitance: 50e-12,
            },
            termination: Termination::Grounded,
            sweep: SweepSpec {
                f_start: 20.0,
                f_stop: 2e6,
                points_per_decade: 40,
                noise: None,
            },
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: LadderConfig =
            serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if self.section_count < 2 {
            return bad("section_count must be at least 2");
        }
        let v = &self.per_section;
        let elements = [
            v.series_resistance,
            v.series_inductance,
            v.shunt_capacitance_to_ground,
            v.inter_turn_capacitance,
        ];
        if elements.iter().any(|e| !(e.is_finite() && *e >= 0.0)) {
            return bad("element values must be finite and non-negative");
        }
        if v.series_inductance == 0.0
            && v.shunt_capacitance_to_ground == 0.0
            && v.inter_turn_capacitance == 0.0
        {
            return bad("at least one of the inductance or capacitances must be nonzero");
        }
        if self.termination == Termination::Open && v.shunt_capacitance_to_ground == 0.0 {
            return bad("an open ladder needs shunt capacitance, otherwise its input is open");
        }
        let s = &self.sweep;
        if !(s.f_start > 0.0 && s.f_start.is_finite() && s.f_stop.is_finite() && s.f_start < s.f_stop) {
            return bad("sweep needs 0 < f_start < f_stop");
        }
        if s.points_per_decade == 0 {
            return bad("points_per_decade must be positive");
        }
        if let Some(n) = s.noise {
            if !(n.amplitude >= 0.0 && n.amplitude < 1.0) {
                return bad("noise amplitude must lie in [0, 1)");
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaultSpec {
    /// Fraction of sections shorted, counted from the input terminal.
    pub shorted_fraction: f64,
    #[serde(default = "default_contact_resistance")]
    pub contact_resistance: f64,
}

fn default_contact_resistance() -> f64 {
    DEFAULT_CONTACT_RESISTANCE
}

impl FaultSpec {
    pub fn sound() -> Self {
        Self::shorted(0.0)
    }

    pub fn shorted(fraction: f64) -> Self {
        FaultSpec {
            shorted_fraction: fraction,
            contact_resistance: DEFAULT_CONTACT_RESISTANCE,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.shorted_fraction >= 0.0 && self.shorted_fraction < 1.0) {
            return Err(Error::InvalidFault(self.shorted_fraction));
        }
        if !(self.contact_resistance > 0.0 && self.contact_resistance.is_finite()) {
            return Err(Error::InvalidConfig("contact_resistance must be positive".into()));
        }
        Ok(())
    }

    /// Number of shorted sections out of `section_count`.
    pub fn shorted_sections(&self, section_count: u32) -> u32 {
        (self.shorted_fraction * f64::from(section_count)).round() as u32
    }
}

/// Series branch of one ladder section.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeriesBranch {
    Winding {
        resistance: f64,
        inductance: f64,
        inter_turn_capacitance: f64,
    },
    Shorted {
        contact_resistance: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Section {
    pub series: SeriesBranch,
    pub shunt_capacitance: f64,
}

/// Impedance where `None` stands for an open circuit.
type Impedance = Option<Complex64>;

fn series_impedance(branch: SeriesBranch, omega: f64) -> Complex64 {
    match branch {
        SeriesBranch::Shorted { contact_resistance } => Complex64::new(contact_resistance, 0.0),
        SeriesBranch::Winding {
            resistance,
            inductance,
            inter_turn_capacitance,
        } => {
            let rl = Complex64::new(resistance, omega * inductance);
            if rl == Complex64::new(0.0, 0.0) {
                return rl;
            }
            let admittance = rl.inv() + Complex64::new(0.0, omega * inter_turn_capacitance);
            admittance.inv()
        }
    }
}

/// `shunt ∥ load` for a capacitive shunt.
fn with_shunt(capacitance: f64, load: Impedance, omega: f64) -> Impedance {
    let shunt = Complex64::new(0.0, omega * capacitance);
    match load {
        None if capacitance == 0.0 => None,
        None => Some(shunt.inv()),
        Some(z) if z == Complex64::new(0.0, 0.0) => Some(z),
        Some(z) => Some((z.inv() + shunt).inv()),
    }
}

/// Input impedance of a chain of sections, first element at the input.
pub fn chain_impedance(sections: &[Section], termination: Termination, frequency: f64) -> Result<Complex64> {
    if !(frequency > 0.0 && frequency.is_finite()) {
        return Err(Error::InvalidFrequency(frequency));
    }
    let omega = 2.0 * PI * frequency;
    let mut load: Impedance = match termination {
        Termination::Open => None,
        Termination::Grounded => Some(Complex64::new(0.0, 0.0)),
    };
    for section in sections.iter().rev() {
        let downstream = with_shunt(section.shunt_capacitance, load, omega);
        load = downstream.map(|z| series_impedance(section.series, omega) + z);
    }
    load.ok_or_else(|| Error::InvalidConfig("ladder input is an open circuit".into()))
}

/// The ladder's sections with `fault` applied.
pub fn sections(config: &LadderConfig, fault: &FaultSpec) -> Vec<Section> {
    let shorted = fault.shorted_sections(config.section_count);
    let v = &config.per_section;
    (0..config.section_count)
        .map(|k| Section {
            series: if k < shorted {
                SeriesBranch::Shorted {
                    contact_resistance: fault.contact_resistance,
                }
            } else {
                SeriesBranch::Winding {
                    resistance: v.series_resistance,
                    inductance: v.series_inductance,
                    inter_turn_capacitance: v.inter_turn_capacitance,
                }
            },
            shunt_capacitance: v.shunt_capacitance_to_ground,
        })
        .collect()
}

pub fn input_impedance(config: &LadderConfig, fault: &FaultSpec, frequency: f64) -> Result<Complex64> {
    config.validate()?;
    fault.validate()?;
    chain_impedance(&sections(config, fault), config.termination, frequency)
}

/// Log-spaced grid from `f_start` to `f_stop`, both included.
pub fn log_grid(f_start: f64, f_stop: f64, points_per_decade: u32) -> Vec<f64> {
    let ppd = f64::from(points_per_decade);
    let steps = ppd * (f_stop / f_start).log10();
    // a final partial step shorter than this merges into f_stop
    let merge = 1e-6;
    let whole = (steps - merge).floor().max(0.0) as u32;
    let mut grid: Vec<f64> = (0..=whole)
        .map(|k| f_start * 10f64.powf(f64::from(k) / ppd))
        .collect();
    if steps - f64::from(whole) > merge {
        grid.push(f_stop);
    } else {
        *grid.last_mut().expect("grid is never empty") = f_stop;
    }
    grid[0] = f_start;
    grid
}

/// Frequency sweep of the faulted ladder: `|Z|` in ohm and `arg Z` in
/// degrees on the configured log grid.
pub fn sweep(config: &LadderConfig, fault: &FaultSpec) -> Result<FrequencyResponse> {
    config.validate()?;
    fault.validate()?;
    let chain = sections(config, fault);
    let s = &config.sweep;
    let grid = log_grid(s.f_start, s.f_stop, s.points_per_decade);
    let mut magnitudes = Vec::with_capacity(grid.len());
    let mut phases = Vec::with_capacity(grid.len());
    for &f in &grid {
        let z = chain_impedance(&chain, config.termination, f)?;
        magnitudes.push(z.norm());
        phases.push(z.arg().to_degrees());
    }
    if let Some(noise) = s.noise {
        let mut rng = ChaCha8Rng::seed_from_u64(noise.seed);
        for m in &mut magnitudes {
            *m *= 1.0 + noise.amplitude * rng.gen_range(-1.0..=1.0);
        }
    }
    FrequencyResponse::new(
        format!("shorted_{}", format_percent(fault.shorted_fraction * 100.0)),
        grid,
        magnitudes,
        Some(phases),
    )
}

/// Renders a percentage without floating-point noise, e.g. `16.5`.
pub fn format_percent(percent: f64) -> String {
    let rounded = (percent * 1e9).round() / 1e9;
    format!("{rounded}")
}

/// Reference sweep plus one fault case per severity (fractions of the
/// winding, each in `(0, 1)`).
pub fn make_family(config: &LadderConfig, severities: &[f64]) -> Result<CurveFamily> {
    make_family_with_contact(config, severities, DEFAULT_CONTACT_RESISTANCE)
}

pub fn make_family_with_contact(
    config: &LadderConfig,
    severities: &[f64],
    contact_resistance: f64,
) -> Result<CurveFamily> {
    if severities.is_empty() {
        return Err(Error::EmptySeverities);
    }
    if let Some(&s) = severities.iter().find(|s| !(**s > 0.0 && **s < 1.0)) {
        return Err(Error::InvalidFault(s));
    }
    let fault = |fraction| FaultSpec {
        shorted_fraction: fraction,
        contact_resistance,
    };
    let reference = sweep(config, &fault(0.0))?.with_label("reference");
    let cases = severities
        .iter()
        .map(|&s| {
            let label = format!("case_{}", format_percent(s * 100.0));
            Ok((sweep(config, &fault(s))?.with_label(label), s))
        })
        .collect::<Result<Vec<_>>>()?;
    align_family(reference, cases)
}
