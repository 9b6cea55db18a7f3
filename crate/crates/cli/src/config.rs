//! TOML experiment documents.
//!
//! A document is read into a [`toml::Table`], command-line overrides are
//! written into that table by dotted key path, and only then is it
//! deserialized and validated. Every error names the offending key.

use std::collections::BTreeSet;

use hfsim_core::scenarios::{
    ExperimentConfig, ExperimentSetup, GridRequest, PlaneRequest, SlitState, WireLayout,
};
use hfsim_core::OpticsError;
use serde::{Deserialize, Serialize};
use toml::{Table, Value};

/// Built-in document equal to the library defaults.
pub const DEFAULT_CONFIG: &str = include_str!("../configs/default.toml");

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("malformed config: {0}")]
    Syntax(String),
    #[error("missing required key `{0}`")]
    MissingKey(String),
    #[error("invalid value for `{key}`: {reason}")]
    Invalid { key: String, reason: String },
    #[error("bad override `{0}`: expected key=value with a dotted key path")]
    Override(String),
    #[error("inconsistent configuration: {0}")]
    Optics(#[from] OpticsError),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wavelength_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slit_width_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slit_separation_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slit_state: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub focal_length_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wires: Option<WiresSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grids: Option<GridsSection>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WiresSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub width_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centers_m: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridsSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oversampling: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples_per_slit: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<PlaneSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lens: Option<PlaneSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub image: Option<PlaneSection>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaneSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub half_width_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

/// Parses a document with no overrides.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    load_config(text, &[])
}

/// Parses a document, applies `key=value` overrides in order, and resolves it.
pub fn load_config(
    text: &str,
    overrides: &[(String, String)],
) -> Result<ExperimentConfig, ConfigError> {
    let mut table: Table = text
        .parse()
        .map_err(|e: toml::de::Error| ConfigError::Syntax(e.to_string()))?;
    for (key, raw) in overrides {
        apply_override(&mut table, key, raw)?;
    }
    let doc: ConfigDocument = table
        .try_into()
        .map_err(|e: toml::de::Error| ConfigError::Syntax(e.to_string()))?;
    Ok(doc.to_setup()?.resolve()?)
}

/// Splits `key=value`.
pub fn split_override(arg: &str) -> Result<(String, String), ConfigError> {
    match arg.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(ConfigError::Override(arg.to_string())),
    }
}

/// Writes `raw` at the dotted path `key`, creating missing tables. The value
/// is read as a TOML literal, falling back to a bare string.
pub fn apply_override(table: &mut Table, key: &str, raw: &str) -> Result<(), ConfigError> {
    let bad = || ConfigError::Override(format!("{key}={raw}"));
    let parts: Vec<&str> = key.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(bad());
    }
    let value = format!("v = {raw}")
        .parse::<Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| Value::String(raw.to_string()));
    let (last, parents) = parts.split_last().expect("split yields at least one part");
    let mut cursor = table;
    for part in parents {
        cursor = match cursor
            .entry(part.to_string())
            .or_insert_with(|| Value::Table(Table::new()))
        {
            Value::Table(t) => t,
            _ => return Err(bad()),
        };
    }
    cursor.insert(last.to_string(), value);
    Ok(())
}

fn required(v: Option<f64>, key: &str) -> Result<f64, ConfigError> {
    v.ok_or_else(|| ConfigError::MissingKey(key.to_string()))
}

fn positive(v: f64, key: &str) -> Result<f64, ConfigError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(ConfigError::Invalid {
            key: key.to_string(),
            reason: format!("must be a positive length, got {v}"),
        })
    }
}

fn finite(v: f64, key: &str) -> Result<f64, ConfigError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ConfigError::Invalid {
            key: key.to_string(),
            reason: format!("must be finite, got {v}"),
        })
    }
}

fn at_least_one(n: usize, key: &str) -> Result<usize, ConfigError> {
    if n >= 1 {
        Ok(n)
    } else {
        Err(ConfigError::Invalid {
            key: key.to_string(),
            reason: "must be at least 1".into(),
        })
    }
}

fn plane_request(
    section: Option<PlaneSection>,
    name: &str,
    need_half_width: bool,
) -> Result<PlaneRequest, ConfigError> {
    let s = section.unwrap_or_default();
    let key = |field: &str| format!("grids.{name}.{field}");
    let half_width = match s.half_width_m {
        Some(hw) => Some(positive(hw, &key("half_width_m"))?),
        None if need_half_width => return Err(ConfigError::MissingKey(key("half_width_m"))),
        None => None,
    };
    Ok(PlaneRequest {
        center: s
            .center_m
            .map(|c| finite(c, &key("center_m")))
            .transpose()?,
        half_width,
        samples: s
            .samples
            .map(|n| at_least_one(n, &key("samples")))
            .transpose()?,
    })
}

impl ConfigDocument {
    pub fn to_setup(&self) -> Result<ExperimentSetup, ConfigError> {
        let wavelength = positive(required(self.wavelength_m, "wavelength_m")?, "wavelength_m")?;
        let slit_width = positive(required(self.slit_width_m, "slit_width_m")?, "slit_width_m")?;
        let slit_separation = positive(
            required(self.slit_separation_m, "slit_separation_m")?,
            "slit_separation_m",
        )?;
        let source_to_lens = positive(required(self.u_m, "u_m")?, "u_m")?;
        let focal_length = positive(
            required(self.focal_length_m, "focal_length_m")?,
            "focal_length_m",
        )?;
        let lens_to_image = self.v_m.map(|v| positive(v, "v_m")).transpose()?;
        let slit_state = match self.slit_state.as_deref() {
            None | Some("both") => SlitState::Both,
            Some("upper") => SlitState::UpperOnly,
            Some("lower") => SlitState::LowerOnly,
            Some(other) => {
                return Err(ConfigError::Invalid {
                    key: "slit_state".into(),
                    reason: format!("expected one of both, upper, lower; got {other:?}"),
                })
            }
        };

        let mut wires = WireLayout::default();
        if let Some(w) = &self.wires {
            if let Some(n) = w.count {
                wires.count = n;
            }
            if let Some(width) = w.width_m {
                if !(width.is_finite() && width >= 0.0) {
                    return Err(ConfigError::Invalid {
                        key: "wires.width_m".into(),
                        reason: format!("must be a non-negative length, got {width}"),
                    });
                }
                wires.width = width;
            }
            if let Some(c) = &w.centers_m {
                for y in c {
                    finite(*y, "wires.centers_m")?;
                }
                wires.count = c.len();
                wires.centers = Some(c.clone());
            }
        }

        let grids = self
            .grids
            .clone()
            .ok_or_else(|| ConfigError::MissingKey("grids".into()))?;
        let defaults = GridRequest::default();
        let oversampling = match grids.oversampling {
            Some(os) if !(os.is_finite() && os >= 1.0) => {
                return Err(ConfigError::Invalid {
                    key: "grids.oversampling".into(),
                    reason: format!("must be at least 1, got {os}"),
                })
            }
            Some(os) => os,
            None => defaults.oversampling,
        };
        let samples_per_slit = grids
            .samples_per_slit
            .map(|n| at_least_one(n, "grids.samples_per_slit"))
            .transpose()?
            .unwrap_or(defaults.samples_per_slit);

        Ok(ExperimentSetup {
            wavelength,
            slit_width,
            slit_separation,
            slit_state,
            source_to_lens,
            focal_length: Some(focal_length),
            lens_to_image,
            wires: Some(wires),
            grids: GridRequest {
                source: plane_request(grids.source, "source", false)?,
                lens: plane_request(grids.lens, "lens", true)?,
                image: plane_request(grids.image, "image", true)?,
                oversampling,
                samples_per_slit,
            },
        })
    }

    /// Fully explicit document for a resolved configuration: every derived
    /// value is written out so the document resolves to the same config.
    pub fn from_resolved(config: &ExperimentConfig) -> Self {
        let plane = |p: hfsim_core::scenarios::PlaneGrid| PlaneSection {
            center_m: Some(p.center),
            half_width_m: Some(p.half_width),
            samples: Some(p.samples),
        };
        let g = &config.grids;
        Self {
            wavelength_m: Some(config.ctx.wavelength()),
            slit_width_m: Some(config.slits.upper.width()),
            slit_separation_m: Some(config.slits.separation()),
            slit_state: Some(config.slit_state.label().to_string()),
            u_m: Some(config.source_to_lens),
            focal_length_m: config.lens.map(|l| l.focal_length()),
            v_m: config.lens_to_image,
            wires: config.wires.as_ref().map(|w| WiresSection {
                count: Some(w.count),
                width_m: Some(w.width),
                centers_m: w.centers.clone(),
            }),
            grids: Some(GridsSection {
                oversampling: Some(g.oversampling),
                samples_per_slit: Some(g.samples_per_slit),
                source: Some(plane(g.source)),
                lens: Some(plane(g.lens)),
                image: Some(plane(g.image)),
            }),
        }
    }
}

/// Serializes the resolved configuration as a TOML document.
pub fn echo_config(config: &ExperimentConfig) -> String {
    toml::to_string(&ConfigDocument::from_resolved(config))
        .expect("config documents always serialize")
}

/// Dotted keys accepted in a document, for help text and diagnostics.
pub fn known_keys() -> BTreeSet<&'static str> {
    [
        "wavelength_m",
        "slit_width_m",
        "slit_separation_m",
        "slit_state",
        "u_m",
        "focal_length_m",
        "v_m",
        "wires.count",
        "wires.width_m",
        "wires.centers_m",
        "grids.oversampling",
        "grids.samples_per_slit",
        "grids.source.center_m",
        "grids.source.half_width_m",
        "grids.source.samples",
        "grids.lens.center_m",
        "grids.lens.half_width_m",
        "grids.lens.samples",
        "grids.image.center_m",
        "grids.image.half_width_m",
        "grids.image.samples",
    ]
    .into_iter()
    .collect()
}
