//! Verification reports and the shared run configuration.
//!
//! A report is a flat list of named identity checks, each carrying the
//! measured residual (spectral norm unless the check documents otherwise),
//! the tolerance it was held to, and the pass verdict. JSON and CSV are the
//! stable encodings; the table form is for humans only.
//!
//! JSON and CSV emit every float with 17 significant digits
//! (`{:.16e}`), which round-trips `f64` losslessly and keeps byte-identical
//! output across runs of the same configuration. `wall_time_ms` is the one
//! field exempt from the determinism contract.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::FockSpec;

/// Parameters shared by every suite and CLI command.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Mode-a truncation.
    pub na_cut: usize,
    /// Mode-b truncation.
    pub nb_cut: usize,
    /// Inverse-temperature parameter of the modular data.
    pub beta: f64,
    /// Oscillator quantum of the Jaynes-Cummings pair.
    pub omega: f64,
    /// Jaynes-Cummings coupling.
    pub g: f64,
    /// Dirac energy scale.
    pub omega_d: f64,
    /// Interior margin used by projected identity checks.
    pub margin: usize,
    /// Base residual tolerance.
    pub tolerance: f64,
    /// Seed for every sampled check.
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            na_cut: 16,
            nb_cut: 16,
            beta: 1.0,
            omega: 1.0,
            g: 0.1,
            omega_d: 1.0,
            margin: 2,
            tolerance: 1e-10,
            seed: 42,
        }
    }
}

impl RunConfig {
    /// Check every field against its domain.
    pub fn validate(&self) -> Result<()> {
        let spec = FockSpec::new(self.na_cut, self.nb_cut)?;
        spec.check_margin(self.margin)?;
        for (name, value) in [
            ("beta", self.beta),
            ("omega", self.omega),
            ("g", self.g),
            ("omega_d", self.omega_d),
            ("tolerance", self.tolerance),
        ] {
            if value <= 0.0 || !value.is_finite() {
                return Err(Error::ParameterOutOfDomain {
                    name: match name {
                        "beta" => "beta",
                        "omega" => "omega",
                        "g" => "g",
                        "omega_d" => "omega_d",
                        _ => "tolerance",
                    },
                    value,
                    requirement: "must be finite and positive",
                });
            }
        }
        Ok(())
    }

    /// The Fock spec this configuration describes.
    pub fn spec(&self) -> Result<FockSpec> {
        FockSpec::new(self.na_cut, self.nb_cut)
    }

    /// Geometric tail of the thermal vector, `e^{-beta * min_cut}`. This is
    /// the a-priori bound on the truncation error of every identity that
    /// involves the cyclic vector.
    pub fn truncation_tail(&self) -> f64 {
        (-self.beta * self.na_cut.min(self.nb_cut) as f64).exp()
    }

    /// Tolerance applied to checks limited by the thermal tail:
    /// `max(tolerance, 10 * e^{-beta * min_cut})`.
    pub fn tail_tolerance(&self) -> f64 {
        self.tolerance.max(10.0 * self.truncation_tail())
    }
}

/// One named identity check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    /// Stable machine-readable identifier, unique within a suite.
    pub check_id: String,
    /// Human-readable statement of the identity being measured.
    pub paper_anchor: String,
    /// Measured residual.
    pub residual: f64,
    /// Tolerance the residual was held to.
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckEntry {
    pub fn new(check_id: &str, anchor: &str, residual: f64, tolerance: f64) -> Self {
        CheckEntry {
            check_id: check_id.to_string(),
            paper_anchor: anchor.to_string(),
            residual,
            tolerance,
            pass: residual.is_finite() && residual <= tolerance,
        }
    }
}

/// Result of one verification suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub config: RunConfig,
    /// Entries sorted by `check_id`.
    pub entries: Vec<CheckEntry>,
    /// Conjunction of all entry verdicts.
    pub overall_pass: bool,
    pub wall_time_ms: f64,
}

impl VerificationReport {
    /// Assemble a report: sorts entries by id and folds the verdict.
    pub fn from_entries(
        suite: &str,
        config: RunConfig,
        mut entries: Vec<CheckEntry>,
        wall_time_ms: f64,
    ) -> Self {
        entries.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        let overall_pass = entries.iter().all(|e| e.pass);
        VerificationReport {
            suite: suite.to_string(),
            config,
            entries,
            overall_pass,
            wall_time_ms,
        }
    }

    pub fn failing(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn entry(&self, check_id: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.check_id == check_id)
    }

    /// Canonical JSON encoding: fixed key order, floats at 17 significant
    /// digits. Byte-identical across runs up to `wall_time_ms`.
    pub fn to_json_string(&self) -> String {
        let mut out = String::with_capacity(1024);
        self.write_json(&mut out);
        out
    }

    pub(crate) fn write_json(&self, out: &mut String) {
        out.push_str("{\"suite\":");
        push_json_string(out, &self.suite);
        out.push_str(",\"config\":");
        write_config_json(out, &self.config);
        out.push_str(",\"entries\":[");
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str("{\"check_id\":");
            push_json_string(out, &e.check_id);
            out.push_str(",\"paper_anchor\":");
            push_json_string(out, &e.paper_anchor);
            out.push_str(",\"residual\":");
            out.push_str(&format_float_17(e.residual));
            out.push_str(",\"tolerance\":");
            out.push_str(&format_float_17(e.tolerance));
            out.push_str(",\"pass\":");
            out.push_str(if e.pass { "true" } else { "false" });
            out.push('}');
        }
        out.push_str("],\"overall_pass\":");
        out.push_str(if self.overall_pass { "true" } else { "false" });
        out.push_str(",\"wall_time_ms\":");
        out.push_str(&format_float_17(self.wall_time_ms));
        out.push('}');
    }

    /// CSV encoding of the same entry set. Text fields are always quoted.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("suite,check_id,paper_anchor,residual,tolerance,pass\n");
        for e in &self.entries {
            out.push_str(&format!(
                "\"{}\",\"{}\",\"{}\",{},{},{}\n",
                self.suite,
                e.check_id,
                e.paper_anchor,
                format_float_17(e.residual),
                format_float_17(e.tolerance),
                e.pass
            ));
        }
        out
    }

    /// Human-oriented table; not a stability contract.
    pub fn to_table_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "suite: {:<16} overall: {:<5} wall: {:.1} ms\n",
            self.suite,
            if self.overall_pass { "PASS" } else { "FAIL" },
            self.wall_time_ms
        ));
        out.push_str(&format!(
            "{:<40} {:>13} {:>13} {:>6}\n",
            "check", "residual", "tolerance", "result"
        ));
        for e in &self.entries {
            out.push_str(&format!(
                "{:<40} {:>13.4e} {:>13.4e} {:>6}\n",
                e.check_id,
                e.residual,
                e.tolerance,
                if e.pass { "pass" } else { "FAIL" }
            ));
        }
        out
    }
}

fn write_config_json(out: &mut String, c: &RunConfig) {
    out.push_str(&format!(
        "{{\"na_cut\":{},\"nb_cut\":{},\"beta\":{},\"omega\":{},\"g\":{},\"omega_d\":{},\"margin\":{},\"tolerance\":{},\"seed\":{}}}",
        c.na_cut,
        c.nb_cut,
        format_float_17(c.beta),
        format_float_17(c.omega),
        format_float_17(c.g),
        format_float_17(c.omega_d),
        c.margin,
        format_float_17(c.tolerance),
        c.seed
    ));
}

/// 17-significant-digit float form used by every stable encoding.
/// Round-trips any finite `f64` losslessly.
pub fn format_float_17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Minimal JSON string escaping; check ids and anchors stay in the
/// printable range so only the mandatory escapes matter.
fn push_json_string(out: &mut String, s: &str) {
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
}
