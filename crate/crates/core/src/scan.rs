//! Reproduction campaigns: threshold tables, B-T grid scans, bound
//! verification and state classification, with CSV/JSON output.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::pair_measures;
use crate::models::{build_hamiltonian, make_state, ChainModel, ModelKind, StateLabel};
use crate::oracle::{min_pair_producible_energy, min_product_energy};
use crate::par;
use crate::tensor::{ComplexMatrix, DensityState};
use crate::thermal::{mix_marginals, ThermalSolver};
use crate::tol;
use crate::witness::{
    bound, classify, separable_bound_with_field, threshold_report, EntanglementClass,
    ThresholdReport, Verdict, WitnessModel,
};

/// Inclusive numeric range with a positive step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Range {
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidArgument(format!(
                "range must be start:stop:step (got {s:?})"
            )));
        }
        let nums: Vec<f64> = parts
            .iter()
            .map(|p| {
                p.parse::<f64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad number {p:?} in range")))
            })
            .collect::<Result<_>>()?;
        let r = Self {
            start: nums[0],
            stop: nums[1],
            step: nums[2],
        };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        if self.step <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "range step must be positive (got {})",
                self.step
            )));
        }
        if self.stop < self.start {
            return Err(Error::InvalidArgument("empty range".into()));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1.5).floor() as usize;
        (0..count)
            .map(|k| self.start + k as f64 * self.step)
            .filter(|v| *v <= self.stop + 1e-9 * self.step)
            .collect()
    }
}

/// Grid-scan configuration. Defaults reproduce the detection map:
/// N = 10, B in [0, 5] step 0.1, T in [0.05, 4] step 0.05.
#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub kind: ModelKind,
    pub n: usize,
    pub j: f64,
    pub b_range: Range,
    pub t_range: Range,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            kind: ModelKind::HeisenbergField,
            n: 10,
            j: 1.0,
            b_range: Range {
                start: 0.0,
                stop: 5.0,
                step: 0.1,
            },
            t_range: Range {
                start: 0.05,
                stop: 4.0,
                step: 0.05,
            },
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        self.b_range.validate()?;
        self.t_range.validate()?;
        if self.t_range.start <= 0.0 {
            return Err(Error::InvalidArgument(
                "temperature range must start above 0".into(),
            ));
        }
        if self.n > 10 {
            return Err(Error::SizeExceeded(self.n, 10));
        }
        ChainModel {
            kind: self.kind,
            n: self.n,
            j: self.j,
            b: 0.0,
        }
        .validate()
    }
}

/// One grid point of the detection map.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GridRow {
    pub b: f64,
    pub t: f64,
    pub energy_per_site: f64,
    pub sep_bound_per_site: f64,
    pub detected: bool,
    pub concurrence: f64,
    pub eof: f64,
}

/// Run the scan: one eigendecomposition per field value, all
/// temperatures from the cached spectrum and eigenvector marginals.
/// Rows are ordered B outer, T inner.
pub fn grid_scan(config: &ScanConfig) -> Result<Vec<GridRow>> {
    config.validate()?;
    let b_values = config.b_range.values();
    let t_values = config.t_range.values();
    let n = config.n;
    let j = config.j;
    let columns: Vec<Result<Vec<GridRow>>> = par::map_collect(b_values, |b| {
        let model = match config.kind {
            ModelKind::Xy => {
                if b != 0.0 {
                    return Err(Error::InvalidArgument(
                        "the XY scan has no field term; use b 0:0:1".into(),
                    ));
                }
                ChainModel::xy(n, j)
            }
            _ => ChainModel::heisenberg_field(n, j, b),
        };
        let solver = ThermalSolver::new(build_hamiltonian(&model)?)?;
        let marginals = solver.eigenvector_marginals(&[1, 2]);
        let sep_bound_per_site = match config.kind {
            ModelKind::Xy => bound(WitnessModel::Xy, EntanglementClass::Separable, n, j) / n as f64,
            _ => separable_bound_with_field(n, j, b) / n as f64,
        };
        t_values
            .iter()
            .map(|&t| {
                let energy_per_site = solver.energy(t)? / n as f64;
                let weights = solver.weights(t)?;
                let pair = mix_marginals(&marginals, &weights, 2);
                let m = pair_measures(&pair)?;
                Ok(GridRow {
                    b,
                    t,
                    energy_per_site,
                    sep_bound_per_site,
                    detected: energy_per_site < sep_bound_per_site - tol::DETECTION_MARGIN,
                    concurrence: m.concurrence,
                    eof: m.eof,
                })
            })
            .collect()
    });
    let mut rows = Vec::new();
    for col in columns {
        rows.extend(col?);
    }
    Ok(rows)
}

fn fmt_float(v: f64) -> String {
    // 12 significant digits round-trip through the CSV.
    format!("{v:.12e}")
}

pub fn grid_to_csv(rows: &[GridRow]) -> String {
    let mut out = String::from("b,t,energy_per_site,sep_bound_per_site,detected,concurrence,eof\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt_float(r.b),
            fmt_float(r.t),
            fmt_float(r.energy_per_site),
            fmt_float(r.sep_bound_per_site),
            r.detected,
            fmt_float(r.concurrence),
            fmt_float(r.eof),
        );
    }
    out
}

pub fn grid_from_csv(text: &str) -> Result<Vec<GridRow>> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidArgument("empty csv".into()))?;
    if header != "b,t,energy_per_site,sep_bound_per_site,detected,concurrence,eof" {
        return Err(Error::InvalidArgument("unexpected csv header".into()));
    }
    let mut rows = Vec::new();
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 7 {
            return Err(Error::InvalidArgument(format!("bad csv row {line:?}")));
        }
        let num = |s: &str| -> Result<f64> {
            s.parse()
                .map_err(|_| Error::InvalidArgument(format!("bad number {s:?}")))
        };
        rows.push(GridRow {
            b: num(f[0])?,
            t: num(f[1])?,
            energy_per_site: num(f[2])?,
            sep_bound_per_site: num(f[3])?,
            detected: f[4] == "true",
            concurrence: num(f[5])?,
            eof: num(f[6])?,
        });
    }
    Ok(rows)
}

/// Write atomically: the target appears only after the content is
/// complete, so a failed run leaves no partial file.
pub fn write_atomic(path: &Path, content: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, content)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Threshold table for a list of chain lengths, one decomposition per N.
pub fn threshold_table(model: WitnessModel, ns: &[usize], j: f64) -> Result<Vec<ThresholdReport>> {
    for &n in ns {
        if n % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "threshold table needs even N (got {n})"
            )));
        }
        if n > tol::MAX_QUBITS {
            return Err(Error::SizeExceeded(n, tol::MAX_QUBITS));
        }
    }
    let reports = par::map_collect(ns.to_vec(), |n| {
        let chain = match model {
            WitnessModel::Xy => ChainModel::xy(n, j),
            WitnessModel::Heisenberg => ChainModel::heisenberg(n, j),
        };
        threshold_report(&chain)
    });
    reports.into_iter().collect()
}

fn fmt_threshold(t: Option<f64>) -> String {
    match t {
        Some(v) => format!("{v:.2}"),
        None => "-".into(),
    }
}

pub fn threshold_table_text(model: WitnessModel, reports: &[ThresholdReport]) -> String {
    let mut out = format!("threshold temperatures, {} chain (J = k_B = 1 units)\n", model.name());
    let _ = writeln!(out, "{:>4} {:>8} {:>8} {:>8}", "N", "T_C2", "T_C3", "T_R3");
    for r in reports {
        let _ = writeln!(
            out,
            "{:>4} {:>8} {:>8} {:>8}",
            r.n,
            fmt_threshold(r.t_c2),
            fmt_threshold(r.t_c3),
            fmt_threshold(r.t_r3)
        );
    }
    out
}

pub fn threshold_table_csv(reports: &[ThresholdReport]) -> String {
    let mut out = String::from("n,t_c2,t_c3,t_r3\n");
    for r in reports {
        let cell = |t: Option<f64>| t.map(fmt_float).unwrap_or_else(|| "-".into());
        let _ = writeln!(out, "{},{},{},{}", r.n, cell(r.t_c2), cell(r.t_c3), cell(r.t_r3));
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdJsonRow {
    pub n: usize,
    pub t_c2: Option<f64>,
    pub t_c3: Option<f64>,
    pub t_r3: Option<f64>,
}

pub fn threshold_table_json(reports: &[ThresholdReport]) -> String {
    let rows: Vec<ThresholdJsonRow> = reports
        .iter()
        .map(|r| ThresholdJsonRow {
            n: r.n,
            t_c2: r.t_c2,
            t_c3: r.t_c3,
            t_r3: r.t_r3,
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("serializable") + "\n"
}

/// One oracle-vs-closed-form comparison line.
#[derive(Debug, Clone, Serialize)]
pub struct BoundCheck {
    pub family: String,
    pub oracle_energy: f64,
    pub bound_energy: f64,
    pub deviation: f64,
}

/// Compare the optimizer minima against the closed-form bounds.
pub fn bounds_verify(
    model: WitnessModel,
    n: usize,
    j: f64,
    restarts: usize,
    seed: u64,
) -> Result<Vec<BoundCheck>> {
    let chain = match model {
        WitnessModel::Xy => ChainModel::xy(n, j),
        WitnessModel::Heisenberg => ChainModel::heisenberg(n, j),
    };
    let (product, _) = min_product_energy(&chain, restarts, seed)?;
    let product_bound = bound(model, EntanglementClass::Separable, n, j);
    let mut checks = vec![BoundCheck {
        family: "product".into(),
        oracle_energy: product,
        bound_energy: product_bound,
        deviation: (product - product_bound).abs(),
    }];
    if n % 2 == 0 {
        let pair = min_pair_producible_energy(&chain, restarts, seed)?;
        let pair_bound = bound(model, EntanglementClass::TwoProducible, n, j);
        checks.push(BoundCheck {
            family: "pair_producible".into(),
            oracle_energy: pair,
            bound_energy: pair_bound,
            deviation: (pair - pair_bound).abs(),
        });
    }
    Ok(checks)
}

/// Max deviation at which bounds-verify still counts as a pass.
pub fn bounds_verify_tolerance(n: usize) -> f64 {
    1e-4 * n as f64
}

pub fn bounds_report_text(model: WitnessModel, n: usize, checks: &[BoundCheck]) -> String {
    let mut out = format!("bound verification, {} chain, N = {n}\n", model.name());
    for c in checks {
        let _ = writeln!(
            out,
            "{:>16}: oracle {:+.9} vs bound {:+.9} (deviation {:.3e})",
            c.family, c.oracle_energy, c.bound_energy, c.deviation
        );
    }
    out
}

/// JSON matrix file for `classify`: flattened row-major [re, im] pairs.
#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n_qubits: usize,
    pub entries: Vec<[f64; 2]>,
}

pub fn load_state_file(path: &Path) -> Result<DensityState> {
    let text = std::fs::read_to_string(path)?;
    let file: MatrixFile = serde_json::from_str(&text)?;
    let dim = 1usize << file.n_qubits;
    if file.entries.len() != dim * dim {
        return Err(Error::InvalidDensity(format!(
            "expected {} entries for {} qubits, got {}",
            dim * dim,
            file.n_qubits,
            file.entries.len()
        )));
    }
    let mat = ComplexMatrix::from_fn(dim, |i, j| {
        let [re, im] = file.entries[i * dim + j];
        Complex64::new(re, im)
    });
    DensityState::from_matrix(mat, file.n_qubits)
}

pub fn save_state_file(path: &Path, state: &DensityState) -> Result<()> {
    let dim = state.dim();
    let entries: Vec<[f64; 2]> = (0..dim * dim)
        .map(|k| {
            let c = state.matrix().data()[k];
            [c.re, c.im]
        })
        .collect();
    let file = MatrixFile {
        n_qubits: state.n_qubits(),
        entries,
    };
    write_atomic(path, &(serde_json::to_string(&file)? + "\n"))
}

/// Where `classify` reads its state from.
pub enum StateSource {
    Named(StateLabel),
    File(std::path::PathBuf),
}

/// Classify a state under a chain model from its energy.
pub fn classify_state(source: &StateSource, model: &ChainModel) -> Result<Verdict> {
    let wmodel = WitnessModel::of(model)?;
    let state = match source {
        StateSource::Named(label) => make_state(*label, model.n)?.state,
        StateSource::File(path) => load_state_file(path)?,
    };
    if state.n_qubits() != model.n {
        return Err(Error::InvalidArgument(format!(
            "state has {} qubits but the model has {}",
            state.n_qubits(),
            model.n
        )));
    }
    let h = build_hamiltonian(model)?;
    let energy = h.expectation_in(state.matrix());
    Ok(classify(energy, wmodel, model.n, model.j))
}

pub fn verdict_text(v: &Verdict) -> String {
    let mut out = format!(
        "model {} N={} J={}: energy per site {:+.9}\n",
        v.model.name(),
        v.n,
        v.j,
        v.energy_per_site
    );
    if v.margins.is_empty() {
        out.push_str("no entanglement certified\n");
    }
    for (flag, margin) in &v.margins {
        let _ = writeln!(out, "{}: margin {:.6} below bound", flag.name(), margin);
    }
    out
}

#[derive(Debug, Serialize)]
pub struct VerdictJson {
    pub model: String,
    pub n: usize,
    pub j: f64,
    pub energy_per_site: f64,
    pub flags: Vec<String>,
    pub margins: Vec<f64>,
    pub bounds_per_site: Vec<f64>,
}

pub fn verdict_json(v: &Verdict) -> String {
    let row = VerdictJson {
        model: v.model.name().into(),
        n: v.n,
        j: v.j,
        energy_per_site: v.energy_per_site,
        flags: v.margins.iter().map(|(f, _)| f.name().to_string()).collect(),
        margins: v.margins.iter().map(|(_, m)| *m).collect(),
        bounds_per_site: EntanglementClass::ALL
            .iter()
            .map(|c| bound(v.model, *c, 1, v.j))
            .collect(),
    };
    serde_json::to_string_pretty(&row).expect("serializable") + "\n"
}
