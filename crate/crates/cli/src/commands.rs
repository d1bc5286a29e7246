//! Subcommand implementations. Each returns the bytes to write.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use rydberg_core::blockade::{check_negligibility, BlockadeReport};
use rydberg_core::coupling::{
    assemble_subspace, eigen_shifts, write_matrix_dump, DegeneracyGuard, ShiftSpectrum,
    SubspaceKind,
};
use rydberg_core::gatesim::{
    run_protocol, BlockadeShifts, ExchangeSpec, GateReport, InteractionSpec, PhaseConvention,
    Protocol,
};
use rydberg_core::hydrogenics::{RadialMethod, RadialModel};
use rydberg_core::units::{hartree_to_rad_per_us, mhz_to_rad_per_us, EnergyUnit, CM1_IN_MHZ};
use rydberg_core::{Error, Execution};

use crate::config::{
    Format, InteractionMode, LoadedConfig, ShiftSource, ShiftUnit, SCHEMA_VERSION,
};
use crate::error::CliError;

fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut out = serde_json::to_vec_pretty(value)?;
    out.push(b'\n');
    Ok(out)
}

fn csv_bytes<T: Serialize>(rows: &[T]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    w.into_inner().map_err(|e| CliError::Output(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialRow {
    pub n: u32,
    pub l: u32,
    pub n_prime: u32,
    pub l_prime: u32,
    pub method: RadialMethod,
    pub z: f64,
    pub value_a0: f64,
}

pub fn radial(
    n: u32,
    l: u32,
    np: u32,
    lp: u32,
    method: RadialMethod,
    z: f64,
    format: Format,
) -> Result<Vec<u8>, CliError> {
    if l.abs_diff(lp) != 1 {
        log::warn!(
            "Δl = {} is dipole forbidden; the interaction pipeline never uses this integral",
            l.abs_diff(lp)
        );
    }
    if !(z.is_finite() && z > 0.0) {
        return Err(Error::Config(format!("nuclear charge must be positive, got {z}")).into());
    }
    let value = method.evaluate(n, l, np, lp)?.in_bohr(z);
    let row = RadialRow {
        n,
        l,
        n_prime: np,
        l_prime: lp,
        method,
        z,
        value_a0: value,
    };
    match format {
        Format::Json => json_bytes(&row),
        Format::Csv => csv_bytes(&[row]),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenRecord {
    pub hartree: f64,
    #[serde(rename = "cm-1")]
    pub wavenumber: f64,
    pub mhz: f64,
    pub dimensionless: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRecord {
    pub subspace: SubspaceKind,
    pub dimension: usize,
    pub prefactor_hartree: Option<f64>,
    pub zero_count: usize,
    pub eigenvalues: Vec<EigenRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftsFile {
    pub schema_version: u32,
    pub n: u32,
    pub geometry_bohr: [[f64; 3]; 3],
    pub spectra: Vec<SpectrumRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct ShiftCsvRow {
    subspace: SubspaceKind,
    index: usize,
    hartree: f64,
    #[serde(rename = "cm-1")]
    wavenumber: f64,
    mhz: f64,
    dimensionless: Option<f64>,
}

impl SpectrumRecord {
    fn new(spec: &ShiftSpectrum) -> Result<Self, CliError> {
        let kind = spec
            .kind
            .ok_or_else(|| Error::Validation("spectrum without subspace".into()))?;
        let eigenvalues = spec
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(i, &e)| EigenRecord {
                hartree: e,
                wavenumber: EnergyUnit::Wavenumber.from_hartree(e),
                mhz: EnergyUnit::MegaHertz.from_hartree(e),
                dimensionless: spec.dimensionless.as_ref().map(|d| d[i]),
            })
            .collect();
        Ok(SpectrumRecord {
            subspace: kind,
            dimension: spec.eigenvalues.len(),
            prefactor_hartree: spec.prefactor,
            zero_count: spec.zero_count(),
            eigenvalues,
        })
    }

    fn spectrum(&self) -> ShiftSpectrum {
        let dimensionless = self
            .eigenvalues
            .iter()
            .map(|e| e.dimensionless)
            .collect::<Option<Vec<f64>>>();
        ShiftSpectrum {
            kind: Some(self.subspace),
            eigenvalues: self.eigenvalues.iter().map(|e| e.hartree).collect(),
            dimensionless,
            prefactor: self.prefactor_hartree,
        }
    }
}

fn compute_spectra(
    cfg: &LoadedConfig,
    kinds: &[SubspaceKind],
    dump_dir: Option<&Path>,
) -> Result<Vec<ShiftSpectrum>, CliError> {
    let c = &cfg.config;
    let geometry = cfg.geometry()?;
    let model = cfg.energy_model()?;
    let radial = RadialModel::new(c.radial_method, c.species.z);
    let matrices = Execution::default().try_map(kinds, |&k| {
        assemble_subspace(
            k,
            c.n,
            &geometry,
            &radial,
            DegeneracyGuard::Energies(&model),
        )
    })?;
    if let Some(dir) = dump_dir {
        fs::create_dir_all(dir)?;
        for m in &matrices {
            let name = m.kind.map_or("custom", |k| k.name());
            let file = fs::File::create(dir.join(format!("{name}.txt")))?;
            write_matrix_dump(m, std::io::BufWriter::new(file))?;
        }
    }
    Ok(Execution::default().try_map(&matrices, eigen_shifts)?)
}

pub fn shifts(
    cfg: &LoadedConfig,
    format: Format,
    dump_dir: Option<&Path>,
) -> Result<Vec<u8>, CliError> {
    let spectra = compute_spectra(cfg, &cfg.config.subspaces, dump_dir)?;
    let records = spectra
        .iter()
        .map(SpectrumRecord::new)
        .collect::<Result<Vec<_>, _>>()?;
    for r in &records {
        if r.zero_count > 0 {
            log::info!(
                "{} manifold: {} zero eigenvalues",
                r.subspace.name(),
                r.zero_count
            );
        }
    }
    match format {
        Format::Json => json_bytes(&ShiftsFile {
            schema_version: SCHEMA_VERSION,
            n: cfg.config.n,
            geometry_bohr: *cfg.geometry()?.positions(),
            spectra: records,
        }),
        Format::Csv => {
            let rows: Vec<ShiftCsvRow> = records
                .iter()
                .flat_map(|r| {
                    r.eigenvalues
                        .iter()
                        .enumerate()
                        .map(move |(index, e)| ShiftCsvRow {
                            subspace: r.subspace,
                            index,
                            hartree: e.hartree,
                            wavenumber: e.wavenumber,
                            mhz: e.mhz,
                            dimensionless: e.dimensionless,
                        })
                })
                .collect();
            csv_bytes(&rows)
        }
    }
}

/// Reads spectra written by [`shifts`], in either format.
pub fn read_spectra(path: &Path) -> Result<Vec<ShiftSpectrum>, CliError> {
    let bad = |e: &dyn std::fmt::Display| CliError::Input(format!("{}: {e}", path.display()));
    let text = fs::read_to_string(path).map_err(|e| bad(&e))?;
    let is_csv = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if !is_csv {
        let file: ShiftsFile = serde_json::from_str(&text).map_err(|e| bad(&e))?;
        return Ok(file.spectra.iter().map(SpectrumRecord::spectrum).collect());
    }
    let mut records: Vec<SpectrumRecord> = Vec::new();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    for row in reader.deserialize::<ShiftCsvRow>() {
        let row = row.map_err(|e| bad(&e))?;
        let rec = EigenRecord {
            hartree: row.hartree,
            wavenumber: row.wavenumber,
            mhz: row.mhz,
            dimensionless: row.dimensionless,
        };
        match records.iter_mut().find(|r| r.subspace == row.subspace) {
            Some(r) => {
                r.eigenvalues.push(rec);
                r.dimension += 1;
            }
            None => records.push(SpectrumRecord {
                subspace: row.subspace,
                dimension: 1,
                prefactor_hartree: None,
                zero_count: 0,
                eigenvalues: vec![rec],
            }),
        }
    }
    Ok(records.iter().map(SpectrumRecord::spectrum).collect())
}

pub fn blockade(cfg: &LoadedConfig, format: Format) -> Result<(Vec<u8>, BlockadeReport), CliError> {
    let c = &cfg.config;
    let radial = RadialModel::new(c.radial_method, c.species.z);
    let report = check_negligibility(
        c.n,
        &cfg.geometry()?,
        &cfg.energy_model()?,
        &radial,
        &c.blockade,
        Execution::default(),
    )?;
    let bytes = match format {
        Format::Json => json_bytes(&report)?,
        Format::Csv => csv_bytes(&report.channels)?,
    };
    Ok((bytes, report))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateRun {
    /// Uniform `Δ/Ω` when the shifts were overridden from the command line.
    pub shift_ratio: Option<f64>,
    /// Effective-diagonal shifts used, rad/µs.
    pub shifts_rad_per_us: Option<BlockadeShifts>,
    pub report: GateReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct GateCsvRow {
    protocol: Protocol,
    shift_ratio: Option<f64>,
    rabi_mhz: f64,
    duration_us: f64,
    fidelity: f64,
    frame_fidelity: f64,
    worst_overlap: f64,
    leakage: f64,
    unitarity_defect: f64,
}

fn configured_shifts(cfg: &LoadedConfig) -> Result<BlockadeShifts, CliError> {
    Ok(match &cfg.config.gate.shift_source {
        ShiftSource::Computed => {
            BlockadeShifts::from_spectra(&compute_spectra(cfg, &SubspaceKind::ALL, None)?)?
        }
        ShiftSource::Values { unit, sp, pd, spd } => {
            let conv = |v: f64| match unit {
                ShiftUnit::Mhz => mhz_to_rad_per_us(v),
                ShiftUnit::Hartree => hartree_to_rad_per_us(v),
                ShiftUnit::Wavenumber => mhz_to_rad_per_us(v * CM1_IN_MHZ),
            };
            BlockadeShifts::new(conv(*sp), conv(*pd), conv(*spd))?
        }
        ShiftSource::File { path } => {
            BlockadeShifts::from_spectra(&read_spectra(&cfg.resolve(path))?)?
        }
    })
}

pub struct GateOptions {
    pub protocol: Option<Protocol>,
    pub ratios: Vec<f64>,
    pub convention: Option<PhaseConvention>,
}

pub fn gatesim(
    cfg: &LoadedConfig,
    opts: &GateOptions,
    format: Format,
) -> Result<(Vec<u8>, Vec<GateRun>), CliError> {
    let c = &cfg.config;
    let gate = &c.gate;
    if !(gate.rabi_mhz.is_finite() && gate.rabi_mhz > 0.0) {
        return Err(
            Error::Config(format!("rabi_mhz must be positive, got {}", gate.rabi_mhz)).into(),
        );
    }
    let rabi = mhz_to_rad_per_us(gate.rabi_mhz);
    let protocol = opts.protocol.unwrap_or(gate.protocol);
    let convention = opts.convention.unwrap_or(gate.phase_convention);
    let radial = RadialModel::new(c.radial_method, c.species.z);

    let mut specs: Vec<(Option<f64>, InteractionSpec)> = Vec::new();
    if !opts.ratios.is_empty() {
        for &r in &opts.ratios {
            if !(r.is_finite() && r >= 0.0) {
                return Err(Error::Config(format!("shift ratio must be >= 0, got {r}")).into());
            }
            specs.push((
                Some(r),
                InteractionSpec::EffectiveDiagonal(BlockadeShifts::uniform(r * rabi)),
            ));
        }
    } else {
        let spec = match gate.mode {
            InteractionMode::EffectiveDiagonal => {
                InteractionSpec::EffectiveDiagonal(configured_shifts(cfg)?)
            }
            InteractionMode::FullExchange => InteractionSpec::FullExchange(ExchangeSpec {
                n: c.n,
                k2: gate.k2,
                k3: gate.k3,
                geometry: cfg.geometry()?,
                energies: cfg.energy_model()?,
            }),
        };
        specs.push((None, spec));
    }

    let runs = Execution::default().try_map(&specs, |(ratio, spec)| {
        let report = run_protocol(protocol, rabi, spec, &radial, convention)?;
        let shifts = match spec {
            InteractionSpec::EffectiveDiagonal(s) => Some(*s),
            InteractionSpec::FullExchange(_) => None,
        };
        Ok::<_, Error>(GateRun {
            shift_ratio: *ratio,
            shifts_rad_per_us: shifts,
            report,
        })
    })?;
    let bytes = match format {
        Format::Json => json_bytes(&runs)?,
        Format::Csv => {
            let rows: Vec<GateCsvRow> = runs
                .iter()
                .map(|r| GateCsvRow {
                    protocol: r.report.protocol,
                    shift_ratio: r.shift_ratio,
                    rabi_mhz: gate.rabi_mhz,
                    duration_us: r.report.duration_us,
                    fidelity: r.report.fidelity,
                    frame_fidelity: r.report.frame_fidelity,
                    worst_overlap: r.report.worst_overlap,
                    leakage: r.report.leakage,
                    unitarity_defect: r.report.unitarity_defect,
                })
                .collect();
            csv_bytes(&rows)?
        }
    };
    Ok((bytes, runs))
}

/// Complex-matrix text for a projected gate.
pub fn write_gate_dump<W: Write>(run: &GateRun, mut out: W) -> std::io::Result<()> {
    writeln!(out, "# gate matrix")?;
    writeln!(out, "# protocol: {}", run.report.protocol)?;
    writeln!(out, "# basis: |c1 c2 t>, index 4*c1 + 2*c2 + t")?;
    writeln!(out, "# row col re im")?;
    for (r, row) in run.report.gate.iter().enumerate() {
        for (c, z) in row.iter().enumerate() {
            writeln!(out, "{r} {c} {:e} {:e}", z[0], z[1])?;
        }
    }
    Ok(())
}
