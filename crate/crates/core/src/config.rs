//! Run configuration: a flat `key = value` document with optional sections.
//!
//! ```text
//! # weak drive at the principal resonance
//! [modulation]
//! epsilon = 0.01
//! drive = l0
//! [quasimode]
//! Q = 100
//! ```
//!
//! Key names are unique across sections, so keys may also appear before the
//! first section header. Unknown keys, repeated keys and keys placed under the
//! wrong section are errors.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use crate::dynamics::Detuning;
use crate::error::{Error, Result};
use crate::model::{CavityConfig, MethodTag, ModulationProfile, QuasiMode, Spacing, TimeGrid, TimeUnit, UnitSystem};
use crate::photon::Numerics;

const SECTIONS: [&str; 6] = ["cavity", "quasimode", "modulation", "grid", "numerics", "output"];

const KEYS: [(&str, &str); 23] = [
    ("units", "cavity"),
    ("mode_index", "cavity"),
    ("refractive_index", "cavity"),
    ("length", "cavity"),
    ("Q", "quasimode"),
    ("gamma", "quasimode"),
    ("epsilon", "modulation"),
    ("drive", "modulation"),
    ("t_start", "grid"),
    ("t_end", "grid"),
    ("points", "grid"),
    ("spacing", "grid"),
    ("time_unit", "grid"),
    ("quad_tolerance", "numerics"),
    ("cutoff", "numerics"),
    ("ode_tolerance", "numerics"),
    ("l_max", "numerics"),
    ("n_max", "numerics"),
    ("detuning", "numerics"),
    ("dir", "output"),
    ("svg", "output"),
    ("timestamp", "output"),
    ("methods", "output"),
];

/// How the linewidth is given: quality factor or linewidth in the cavity's frequency unit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Loss {
    Quality(f64),
    Linewidth(f64),
}

/// Drive frequency: the principal resonance or an explicit value in the cavity's frequency unit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DriveSpec {
    PrincipalResonance,
    Frequency(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CavitySection {
    pub units: UnitSystem,
    pub mode_index: i64,
    pub refractive_index: f64,
    pub length: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OutputSection {
    pub dir: PathBuf,
    pub svg: bool,
    pub timestamp: bool,
}

/// Everything a run needs.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub cavity: CavitySection,
    pub loss: Loss,
    pub epsilon: f64,
    pub drive: DriveSpec,
    pub grid: TimeGrid,
    pub numerics: Numerics,
    pub methods: BTreeSet<MethodTag>,
    pub output: OutputSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            cavity: CavitySection {
                units: UnitSystem::Normalized,
                mode_index: 1,
                refractive_index: 1.0,
                length: 2.0 * std::f64::consts::PI,
            },
            loss: Loss::Quality(100.0),
            epsilon: 0.01,
            drive: DriveSpec::PrincipalResonance,
            grid: TimeGrid::default(),
            numerics: Numerics::default(),
            methods: [
                MethodTag::Quadrature,
                MethodTag::ClosedWeak,
                MethodTag::ClosedGeneral,
                MethodTag::Phenomenological,
            ]
            .into(),
            output: OutputSection {
                dir: PathBuf::from("."),
                svg: false,
                timestamp: true,
            },
        }
    }
}

/// The validated physical objects a configuration describes, in internal units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Model {
    pub cavity: CavityConfig,
    pub mode: QuasiMode,
    pub profile: ModulationProfile,
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::validation(key, format!("cannot parse `{value}` as a number")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "yes" | "on" => Ok(true),
        "false" | "no" | "off" => Ok(false),
        _ => Err(Error::validation(key, format!("expected true or false, got `{value}`"))),
    }
}

impl RunConfig {
    /// Parses and validates a configuration document.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut section: Option<String> = None;
        let mut seen = BTreeSet::new();
        let mut has_q = false;
        let mut has_gamma = false;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('[') {
                let name = rest.strip_suffix(']').ok_or_else(|| Error::Parse {
                    line: line_no,
                    message: format!("malformed section header `{line}`"),
                })?;
                let name = name.trim();
                if !SECTIONS.contains(&name) {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("unknown section `[{name}]`"),
                    });
                }
                section = Some(name.to_string());
                continue;
            }
            // the brief form "epsilon=0.01, Q=100" puts several pairs on one line
            for item in line.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let (key, value) = item.split_once('=').ok_or_else(|| Error::Parse {
                    line: line_no,
                    message: format!("expected `key = value`, got `{item}`"),
                })?;
                let (key, value) = (key.trim(), value.trim());
                let home = KEYS
                    .iter()
                    .find(|(k, _)| *k == key)
                    .map(|(_, s)| *s)
                    .ok_or_else(|| Error::Parse {
                        line: line_no,
                        message: format!("unknown key `{key}`"),
                    })?;
                if let Some(s) = &section {
                    if s != home {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("key `{key}` belongs in [{home}], not [{s}]"),
                        });
                    }
                }
                if !seen.insert(key.to_string()) && key != "methods" {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("key `{key}` given twice"),
                    });
                }
                match key {
                    "Q" => has_q = true,
                    "gamma" => has_gamma = true,
                    _ => {}
                }
                if key == "methods" {
                    // the remainder of the line after `methods =` is the whole list
                    let start = line.find(item).unwrap_or(0);
                    let list = line[start..].split_once('=').map(|x| x.1).unwrap_or(value);
                    cfg.methods = parse_methods(list)?;
                    break;
                }
                cfg.set(key, value)?;
            }
        }
        if has_q && has_gamma {
            return Err(Error::validation("gamma", "give either Q or gamma, not both"));
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Applies one `key=value` override (as from `--set`) and revalidates.
    pub fn apply_override(&mut self, assignment: &str) -> Result<()> {
        let (key, value) = assignment.split_once('=').ok_or_else(|| Error::Parse {
            line: 0,
            message: format!("override `{assignment}` is not of the form key=value"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.iter().any(|(k, _)| *k == key) {
            return Err(Error::Parse {
                line: 0,
                message: format!("unknown key `{key}`"),
            });
        }
        if key == "methods" {
            self.methods = parse_methods(value)?;
        } else {
            self.set(key, value)?;
        }
        self.validate()
    }

    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "units" => self.cavity.units = value.parse()?,
            "mode_index" => self.cavity.mode_index = parse_num(key, value)?,
            "refractive_index" => self.cavity.refractive_index = parse_num(key, value)?,
            "length" => self.cavity.length = parse_num(key, value)?,
            "Q" => self.loss = Loss::Quality(parse_num(key, value)?),
            "gamma" => self.loss = Loss::Linewidth(parse_num(key, value)?),
            "epsilon" => self.epsilon = parse_num(key, value)?,
            "drive" => {
                self.drive = if value == "l0" {
                    DriveSpec::PrincipalResonance
                } else {
                    DriveSpec::Frequency(parse_num(key, value)?)
                }
            }
            "t_start" => self.grid.start = parse_num(key, value)?,
            "t_end" => self.grid.end = parse_num(key, value)?,
            "points" => self.grid.points = parse_num(key, value)?,
            "spacing" => self.grid.spacing = value.parse::<Spacing>()?,
            "time_unit" => self.grid.unit = value.parse::<TimeUnit>()?,
            "quad_tolerance" => self.numerics.quad_tolerance = parse_num(key, value)?,
            "cutoff" => self.numerics.cutoff = parse_num(key, value)?,
            "ode_tolerance" => self.numerics.ode_tolerance = parse_num(key, value)?,
            "l_max" => self.numerics.l_max = parse_num(key, value)?,
            "n_max" => self.numerics.n_max = parse_num(key, value)?,
            "detuning" => self.numerics.detuning = value.parse::<Detuning>()?,
            "dir" => self.output.dir = PathBuf::from(value),
            "svg" => self.output.svg = parse_bool(key, value)?,
            "timestamp" => self.output.timestamp = parse_bool(key, value)?,
            _ => unreachable!("key table and setter disagree on `{key}`"),
        }
        Ok(())
    }

    /// Checks every field and builds the physical model.
    pub fn validate(&self) -> Result<()> {
        self.model()?;
        self.grid.validate()?;
        self.numerics.validate()?;
        if self.methods.is_empty() {
            return Err(Error::validation("methods", "at least one method is required"));
        }
        Ok(())
    }

    /// Cavity, quasi-mode and drive in internal units (`ω₀ = 1`).
    pub fn model(&self) -> Result<Model> {
        let c = &self.cavity;
        let cavity = CavityConfig::with_units(c.mode_index, c.length, c.refractive_index, c.units)?;
        let mode = match self.loss {
            Loss::Quality(q) => QuasiMode::new(&cavity, q)?,
            Loss::Linewidth(g) => {
                if !(g > 0.0 && g.is_finite()) {
                    return Err(Error::validation("gamma", format!("must be positive and finite, got {g}")));
                }
                QuasiMode::from_linewidth(&cavity, cavity.to_internal_frequency(g))?
            }
        };
        let omega = match self.drive {
            DriveSpec::PrincipalResonance => 2.0,
            DriveSpec::Frequency(w) => cavity.to_internal_frequency(w),
        };
        let profile = ModulationProfile::new(self.epsilon, omega)?;
        Ok(Model { cavity, mode, profile })
    }

    /// Canonical text form; `RunConfig::parse(&cfg.to_text())` reproduces `cfg`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let c = &self.cavity;
        let _ = writeln!(s, "[cavity]");
        let _ = writeln!(s, "units = {}", c.units.as_str());
        let _ = writeln!(s, "mode_index = {}", c.mode_index);
        let _ = writeln!(s, "refractive_index = {:?}", c.refractive_index);
        let _ = writeln!(s, "length = {:?}", c.length);
        let _ = writeln!(s, "\n[quasimode]");
        match self.loss {
            Loss::Quality(q) => writeln!(s, "Q = {q:?}"),
            Loss::Linewidth(g) => writeln!(s, "gamma = {g:?}"),
        }
        .ok();
        let _ = writeln!(s, "\n[modulation]");
        let _ = writeln!(s, "epsilon = {:?}", self.epsilon);
        match self.drive {
            DriveSpec::PrincipalResonance => writeln!(s, "drive = l0"),
            DriveSpec::Frequency(w) => writeln!(s, "drive = {w:?}"),
        }
        .ok();
        let g = &self.grid;
        let _ = writeln!(s, "\n[grid]");
        let _ = writeln!(s, "t_start = {:?}", g.start);
        let _ = writeln!(s, "t_end = {:?}", g.end);
        let _ = writeln!(s, "points = {}", g.points);
        let _ = writeln!(s, "spacing = {}", g.spacing.as_str());
        let _ = writeln!(s, "time_unit = {}", g.unit.as_str());
        let n = &self.numerics;
        let _ = writeln!(s, "\n[numerics]");
        let _ = writeln!(s, "quad_tolerance = {:?}", n.quad_tolerance);
        let _ = writeln!(s, "cutoff = {:?}", n.cutoff);
        let _ = writeln!(s, "ode_tolerance = {:?}", n.ode_tolerance);
        let _ = writeln!(s, "l_max = {}", n.l_max);
        let _ = writeln!(s, "n_max = {}", n.n_max);
        let _ = writeln!(s, "detuning = {}", n.detuning);
        let o = &self.output;
        let _ = writeln!(s, "\n[output]");
        let _ = writeln!(s, "dir = {}", o.dir.display());
        let _ = writeln!(s, "svg = {}", o.svg);
        let _ = writeln!(s, "timestamp = {}", o.timestamp);
        let methods: Vec<&str> = self.methods.iter().map(|m| m.as_str()).collect();
        let _ = writeln!(s, "methods = {}", methods.join(", "));
        s
    }
}

fn parse_methods(list: &str) -> Result<BTreeSet<MethodTag>> {
    let methods = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(MethodTag::from_str)
        .collect::<Result<BTreeSet<_>>>()?;
    if methods.is_empty() {
        return Err(Error::validation("methods", "at least one method is required"));
    }
    Ok(methods)
}
