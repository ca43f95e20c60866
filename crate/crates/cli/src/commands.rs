//! Command implementations behind the `tga` binary. Each returns an exit
//! code plus the text for stdout so the exit-code contract is unit-testable.
//!
//! Exit codes: 0 success; 1 invalid factor system or sweep disagreement;
//! 2 config/parse error; 3 instance not admissible; 4 requested witness
//! does not exist.

use std::fs;
use std::path::Path;

use serde_json::json;

use tga_core::decide::{
    decide_equivalences, decide_group_ring_n_weak, decide_n_weakly_regular, decide_no_nilpotents,
    decide_xi_n, n_weak_witness, regularity_witness, witness_char_p, witness_quaternion,
    witness_unit_commutation, xi_n_witness, DecideError, Witness,
};
use tga_core::oracle::{nilpotent_search, property_scan, OracleConfig, ScanProperty};
use tga_core::AlgebraError;

use crate::config::{parse_config, InstanceConfig};
use crate::exprs::{parse_element, render_element};
use crate::sweep::{
    catalog_from_configs, default_catalog, run_sweep, SweepOptions, SweepProperty,
};

pub struct CmdOutput {
    pub code: i32,
    pub stdout: String,
}

fn out(code: i32, stdout: String) -> CmdOutput {
    CmdOutput { code, stdout }
}

fn parse_error(msg: impl std::fmt::Display) -> CmdOutput {
    out(2, format!("{}\n", json!({ "error": msg.to_string() })))
}

fn load_instances(path: &Path) -> Result<Vec<InstanceConfig>, CmdOutput> {
    let text = fs::read_to_string(path)
        .map_err(|e| parse_error(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text).map_err(parse_error)
}

fn load_single(path: &Path) -> Result<InstanceConfig, CmdOutput> {
    let mut instances = load_instances(path)?;
    if instances.len() != 1 {
        return Err(parse_error("expected exactly one instance in the config"));
    }
    Ok(instances.pop().unwrap())
}

/// `tga validate`: exit 0 iff the factor system is valid; violations are
/// printed either way.
pub fn cmd_validate(config: &Path) -> CmdOutput {
    let instance = match load_single(config) {
        Ok(i) => i,
        Err(e) => return e,
    };
    let alg = match instance.resolve_unvalidated() {
        Ok(a) => a,
        Err(e) => return parse_error(e),
    };
    let report = alg.rho().validate();
    let body = json!({
        "schema": tga_core::decide::REPORT_SCHEMA,
        "valid": report.is_valid(),
        "normalization_violations": report.normalization,
        "cocycle_violations": report.cocycle,
    });
    let code = if report.is_valid() { 0 } else { 1 };
    out(code, format!("{}\n", serde_json::to_string_pretty(&body).unwrap()))
}

/// `tga decide`: Decision JSON on stdout; exit 3 with the closure report
/// when the field is not sufficiently closed.
pub fn cmd_decide(config: &Path, property: &str, n: u64, seed: u64) -> CmdOutput {
    let instance = match load_single(config) {
        Ok(i) => i,
        Err(e) => return e,
    };
    let alg = match instance.resolve() {
        Ok(a) => a,
        Err(e) => return parse_error(e),
    };
    let result = match property {
        "no_nilpotents" => decide_no_nilpotents(&alg).map(|d| d.to_json()),
        "n_weakly_regular" | "n_weak" => decide_n_weakly_regular(&alg, n).map(|d| d.to_json()),
        "xi_n" => decide_xi_n(&alg).map(|d| d.to_json()),
        "equivalences" => decide_equivalences(&alg, n.max(2), 16, seed).map(|r| r.to_json()),
        "group_ring_n_weak" => Ok(decide_group_ring_n_weak(alg.field(), alg.group()).to_json()),
        other => return parse_error(format!("unknown property \"{other}\"")),
    };
    match result {
        Ok(v) => out(0, format!("{}\n", serde_json::to_string_pretty(&v).unwrap())),
        Err(DecideError::NotAdmissible(report)) => {
            let v = report.to_json(alg.field());
            out(3, format!("{}\n", serde_json::to_string_pretty(&v).unwrap()))
        }
        Err(e) => parse_error(e),
    }
}

fn witness_json(w: &Witness) -> String {
    format!("{}\n", serde_json::to_string_pretty(&w.to_json()).unwrap())
}

/// `tga witness`: constructs the requested certificate; exit 4 when none
/// exists.
pub fn cmd_witness(config: &Path, kind: &str, element: Option<&str>, n: u64) -> CmdOutput {
    let instance = match load_single(config) {
        Ok(i) => i,
        Err(e) => return e,
    };
    let alg = match instance.resolve() {
        Ok(a) => a,
        Err(e) => return parse_error(e),
    };
    let need_element = || -> Result<tga_core::AlgebraElement, CmdOutput> {
        let expr = element.ok_or_else(|| parse_error("this witness kind needs --element"))?;
        parse_element(&alg, expr).map_err(|e| parse_error(e))
    };
    let witness = match kind {
        "unit_commutation" => witness_unit_commutation(&alg),
        "char_p" => witness_char_p(&alg),
        "quaternion" => witness_quaternion(&alg),
        "regularity" => match need_element() {
            Ok(a) => regularity_witness(&a),
            Err(e) => return e,
        },
        "n_weak" => match need_element() {
            Ok(a) => match n_weak_witness(&a, n.max(2)) {
                Ok(w) => w,
                Err(AlgebraError::NotCommutative) => {
                    return parse_error("n_weak witness needs a commutative algebra")
                }
                Err(e) => return parse_error(e),
            },
            Err(e) => return e,
        },
        "xi_n" => match need_element() {
            Ok(a) => match xi_n_witness(&a) {
                Ok(w) => w,
                Err(AlgebraError::NotCommutative) => {
                    return parse_error("xi_n witness needs a commutative algebra")
                }
                Err(e) => return parse_error(e),
            },
            Err(e) => return e,
        },
        other => return parse_error(format!("unknown witness kind \"{other}\"")),
    };
    match witness {
        Some(w) => out(0, witness_json(&w)),
        None => out(4, format!("{}\n", json!({ "witness": null, "kind": kind }))),
    }
}

/// `tga oracle`: independent searches and per-element scans.
pub fn cmd_oracle(
    config: &Path,
    property: &str,
    n: u64,
    seed: u64,
    budget: u64,
    exhaustive_cap: u64,
    threads: usize,
) -> CmdOutput {
    let instance = match load_single(config) {
        Ok(i) => i,
        Err(e) => return e,
    };
    let alg = match instance.resolve() {
        Ok(a) => a,
        Err(e) => return parse_error(e),
    };
    let cfg = OracleConfig {
        exhaustive_cap,
        budget: instance.budget.unwrap_or(budget),
        seed: instance.seed.unwrap_or(seed),
        threads,
    };
    let body = match property {
        "no_nilpotents" => {
            let s = nilpotent_search(&alg, &cfg);
            json!({
                "schema": tga_core::decide::REPORT_SCHEMA,
                "property": "no_nilpotents",
                "holds": s.found.is_none(),
                "exhaustive": s.exhaustive,
                "tested": s.tested,
                "nilpotent": s.found.as_ref().map(render_element),
            })
        }
        "regular" | "strongly_regular" | "n_weak" | "xi_n" => {
            let prop = match property {
                "regular" => ScanProperty::Regular,
                "strongly_regular" => ScanProperty::StronglyRegular,
                "n_weak" => ScanProperty::NWeak(n.max(2)),
                _ => ScanProperty::XiN,
            };
            let s = property_scan(&alg, prop, &cfg);
            json!({
                "schema": tga_core::decide::REPORT_SCHEMA,
                "property": property,
                "n": if property == "n_weak" { Some(n.max(2)) } else { None },
                "holds": s.holds,
                "exhaustive": s.exhaustive,
                "tested": s.tested,
                "counterexample": s.counterexample.as_ref().map(render_element),
                "note": s.note,
            })
        }
        other => return parse_error(format!("unknown oracle property \"{other}\"")),
    };
    out(0, format!("{}\n", serde_json::to_string_pretty(&body).unwrap()))
}

/// `tga sweep`: the full decider-vs-oracle matrix; writes report.json,
/// report.csv and report.md under out_dir; exit 1 iff any disagreement.
#[allow(clippy::too_many_arguments)]
pub fn cmd_sweep(
    config: Option<&Path>,
    properties: &[String],
    n: u64,
    seed: u64,
    budget: u64,
    exhaustive_cap: u64,
    threads: usize,
    out_dir: &Path,
) -> CmdOutput {
    let catalog = match config {
        Some(path) => match load_instances(path) {
            Ok(instances) => catalog_from_configs(instances),
            Err(e) => return e,
        },
        None => default_catalog(seed),
    };
    let props: Vec<SweepProperty> = if properties.is_empty() {
        crate::sweep::default_properties()
    } else {
        let mut parsed = Vec::new();
        for p in properties {
            match SweepProperty::parse(p, n.max(2)) {
                Some(sp) => parsed.push(sp),
                None => return parse_error(format!("unknown sweep property \"{p}\"")),
            }
        }
        parsed
    };
    let opts = SweepOptions { properties: props, seed, budget, exhaustive_cap, threads };
    let report = run_sweep(&catalog, &opts);
    if let Err(e) = fs::create_dir_all(out_dir) {
        return parse_error(format!("cannot create {}: {e}", out_dir.display()));
    }
    let json_path = out_dir.join("report.json");
    let csv_path = out_dir.join("report.csv");
    let md_path = out_dir.join("report.md");
    let json_text = serde_json::to_string_pretty(&report.to_json()).unwrap();
    for (path, text) in [
        (&json_path, json_text),
        (&csv_path, report.to_csv()),
        (&md_path, report.to_markdown()),
    ] {
        if let Err(e) = fs::write(path, text) {
            return parse_error(format!("cannot write {}: {e}", path.display()));
        }
    }
    let summary = format!(
        "{} rows, {} disagreements -> {}\n",
        report.rows.len(),
        report.disagreements,
        json_path.display()
    );
    out(if report.disagreements == 0 { 0 } else { 1 }, summary)
}
