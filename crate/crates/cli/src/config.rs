//! Run configuration (JSON, `schema_version` 1).

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use rydberg_core::blockade::BlockadeOptions;
use rydberg_core::coupling::{Geometry, SubspaceKind};
use rydberg_core::gatesim::{PhaseConvention, Protocol};
use rydberg_core::hydrogenics::{EnergyModel, EnergyModelKind, RadialMethod};
use rydberg_core::Error;

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    pub species: SpeciesConfig,
    pub n: u32,
    pub geometry: GeometryConfig,
    #[serde(default = "all_subspaces")]
    pub subspaces: Vec<SubspaceKind>,
    #[serde(default = "closed")]
    pub radial_method: RadialMethod,
    #[serde(default)]
    pub blockade: BlockadeOptions,
    #[serde(default)]
    pub gate: GateConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

fn all_subspaces() -> Vec<SubspaceKind> {
    SubspaceKind::ALL.to_vec()
}

fn closed() -> RadialMethod {
    RadialMethod::Closed
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpeciesConfig {
    #[serde(default = "one")]
    pub z: f64,
    pub energy_model: EnergyModelKind,
    /// Quantum defects keyed by `l`.
    #[serde(default)]
    pub defects: BTreeMap<u32, f64>,
    /// JSON file with a `defects` table; relative to the config file.
    /// Inline `defects` entries take precedence.
    #[serde(default)]
    pub defects_file: Option<PathBuf>,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Deserialize)]
struct DefectsFile {
    defects: BTreeMap<u32, f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LengthUnit {
    #[serde(rename = "um")]
    Micrometer,
    #[serde(rename = "a0")]
    Bohr,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    pub unit: LengthUnit,
    pub positions: Vec<[f64; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InteractionMode {
    #[default]
    EffectiveDiagonal,
    FullExchange,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShiftUnit {
    #[default]
    Mhz,
    Hartree,
    #[serde(rename = "cm-1")]
    Wavenumber,
}

/// Where effective-diagonal shifts come from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ShiftSource {
    /// Weakest shift of each manifold, computed from the configuration.
    Computed,
    /// Explicit values; `unit` applies to all three.
    Values {
        #[serde(default)]
        unit: ShiftUnit,
        sp: f64,
        pd: f64,
        spd: f64,
    },
    /// A spectrum file written by `shifts` (JSON or CSV); relative to the
    /// config file.
    File { path: PathBuf },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GateConfig {
    pub protocol: Protocol,
    /// Cyclic Rabi frequency `Ω / 2π`.
    pub rabi_mhz: f64,
    pub mode: InteractionMode,
    pub shift_source: ShiftSource,
    pub k2: i32,
    pub k3: i32,
    pub phase_convention: PhaseConvention,
}

impl Default for GateConfig {
    fn default() -> Self {
        GateConfig {
            protocol: Protocol::Toffoli,
            rabi_mhz: 0.1,
            mode: InteractionMode::EffectiveDiagonal,
            shift_source: ShiftSource::Computed,
            k2: 0,
            k3: 0,
            phase_convention: PhaseConvention::Compensated,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub format: Format,
    pub path: Option<PathBuf>,
}

/// A parsed configuration together with the directory relative paths
/// resolve against.
#[derive(Debug, Clone)]
pub struct LoadedConfig {
    pub config: RunConfig,
    pub base_dir: PathBuf,
}

impl LoadedConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let config: RunConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        if config.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                config.schema_version
            ))
            .into());
        }
        let base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        let loaded = LoadedConfig { config, base_dir };
        loaded.geometry()?;
        loaded.energy_model()?;
        Ok(loaded)
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    pub fn geometry(&self) -> Result<Geometry, CliError> {
        let g = &self.config.geometry;
        if g.positions.len() != 3 {
            return Err(Error::Geometry(format!(
                "expected exactly three positions, got {}",
                g.positions.len()
            ))
            .into());
        }
        let pos = [g.positions[0], g.positions[1], g.positions[2]];
        Ok(match g.unit {
            LengthUnit::Micrometer => Geometry::from_micrometers(pos)?,
            LengthUnit::Bohr => Geometry::new(pos)?,
        })
    }

    pub fn energy_model(&self) -> Result<EnergyModel, CliError> {
        let s = &self.config.species;
        if !(s.z.is_finite() && s.z > 0.0) {
            return Err(
                Error::Config(format!("nuclear charge must be positive, got {}", s.z)).into(),
            );
        }
        let mut defects = BTreeMap::new();
        if let Some(file) = &s.defects_file {
            let path = self.resolve(file);
            let text = fs::read_to_string(&path)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let parsed: DefectsFile = serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            defects.extend(parsed.defects);
        }
        defects.extend(s.defects.iter().map(|(&l, &d)| (l, d)));
        Ok(EnergyModel {
            kind: s.energy_model,
            z: s.z,
            defects,
        })
    }
}
