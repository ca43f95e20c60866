//! Catalog sweeps: run every decider against its independent oracle over
//! a list of instances and emit JSON/CSV/Markdown reports.
//!
//! Reports are deterministic under a fixed seed: rows are ordered by
//! catalog position, all randomness is derived from the seed and the
//! instance id, and wall-clock timings live in a separate top-level field
//! so the rest of the report is byte-stable.

use std::time::Instant;

use serde_json::{json, Map, Value};

use tga_core::decide::{decide_n_weakly_regular, decide_no_nilpotents, decide_xi_n, DecideError};
use tga_core::oracle::{nilpotent_search, property_scan, OracleConfig, ScanProperty};
use tga_core::Algebra;

use crate::config::{CocycleConfig, ConfigError, GroupConfig, InstanceConfig};
use crate::exprs::render_element;

pub const CSV_COLUMNS: &str =
    "schema,id,field,group,cocycle,property,n,status,decider,oracle,oracle_mode,agreement,witness";

/// Properties exercised by a sweep row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepProperty {
    NoNilpotents,
    NWeak(u64),
    XiN,
}

impl SweepProperty {
    pub fn name(&self) -> &'static str {
        match self {
            SweepProperty::NoNilpotents => "no_nilpotents",
            SweepProperty::NWeak(_) => "n_weakly_regular",
            SweepProperty::XiN => "xi_n",
        }
    }

    pub fn parse(s: &str, n: u64) -> Option<SweepProperty> {
        match s {
            "no_nilpotents" => Some(SweepProperty::NoNilpotents),
            "n_weakly_regular" | "n_weak" => Some(SweepProperty::NWeak(n)),
            "xi_n" => Some(SweepProperty::XiN),
            _ => None,
        }
    }
}

pub fn default_properties() -> Vec<SweepProperty> {
    vec![SweepProperty::NoNilpotents, SweepProperty::NWeak(2), SweepProperty::XiN]
}

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub properties: Vec<SweepProperty>,
    pub seed: u64,
    pub budget: u64,
    pub exhaustive_cap: u64,
    pub threads: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            properties: default_properties(),
            seed: 0,
            budget: 100_000,
            exhaustive_cap: 1 << 20,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub id: String,
    pub field: String,
    pub group: String,
    pub cocycle: String,
    pub property: String,
    pub n: Option<u64>,
    /// ok | not_admissible | error
    pub status: String,
    pub decider: Option<bool>,
    pub oracle: Option<bool>,
    pub oracle_mode: String,
    pub agreement: bool,
    pub witness: String,
    pub error: Option<String>,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub seed: u64,
    pub budget: u64,
    pub exhaustive_cap: u64,
    pub rows: Vec<SweepRow>,
    pub disagreements: usize,
    /// Row id+property -> milliseconds; excluded from determinism checks.
    pub timings: Vec<(String, f64)>,
}

/// FNV-1a, used to derive stable per-instance seeds from ids.
pub fn fnv1a(text: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in text.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// One named catalog entry.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: String,
    pub field_id: String,
    pub group_id: String,
    pub cocycle_id: String,
    pub config: InstanceConfig,
}

fn catalog_fields() -> Vec<(&'static str, u64, usize)> {
    vec![
        ("GF(2)", 2, 1),
        ("GF(3)", 3, 1),
        ("GF(4)", 2, 2),
        ("GF(5)", 5, 1),
        ("GF(7)", 7, 1),
        ("GF(9)", 3, 2),
        ("GF(25)", 5, 2),
    ]
}

fn catalog_groups() -> Vec<(&'static str, GroupConfig)> {
    let cyc = |m: usize| GroupConfig::Cyclic(m);
    let prod = |a: GroupConfig, b: GroupConfig| {
        GroupConfig::DirectProduct(Box::new(a), Box::new(b))
    };
    vec![
        ("C1", cyc(1)),
        ("C2", cyc(2)),
        ("C3", cyc(3)),
        ("C4", cyc(4)),
        ("C5", cyc(5)),
        ("C6", cyc(6)),
        ("C2xC2", prod(cyc(2), cyc(2))),
        ("C2xC4", prod(cyc(2), cyc(4))),
        ("C3xC3", prod(cyc(3), cyc(3))),
        ("S3", GroupConfig::Dihedral(3)),
        ("D4", GroupConfig::Dihedral(4)),
        ("Q8", GroupConfig::Quaternion8),
        ("Q8xC3", prod_q8_c3()),
    ]
}

fn prod_q8_c3() -> GroupConfig {
    GroupConfig::DirectProduct(Box::new(GroupConfig::Quaternion8), Box::new(GroupConfig::Cyclic(3)))
}

/// The built-in catalog: all fields x all groups, with the trivial
/// cocycle, three seeded coboundaries, and the smallest nontrivial
/// lambda-pairing where one is defined.
pub fn default_catalog(seed: u64) -> Vec<CatalogEntry> {
    use rand::{Rng, SeedableRng};
    let mut out = Vec::new();
    for (fid, p, k) in catalog_fields() {
        let field = tga_core::FieldSpec::gf(p, k).expect("catalog fields are valid");
        let q = field.q();
        for (gid, gcfg) in catalog_groups() {
            let group = gcfg.build().expect("catalog groups are valid");
            let order = group.order();
            let mut push = |cocycle_id: String, cocycle: CocycleConfig| {
                let id = format!("{fid}/{gid}/{cocycle_id}");
                out.push(CatalogEntry {
                    id: id.clone(),
                    field_id: fid.to_string(),
                    group_id: gid.to_string(),
                    cocycle_id,
                    config: InstanceConfig {
                        id: Some(id),
                        p,
                        k,
                        modulus: None,
                        group: gcfg.clone(),
                        cocycle,
                        seed: None,
                        budget: None,
                    },
                });
            };
            push("trivial".into(), CocycleConfig::Trivial);
            for i in 0..3u64 {
                let rng_seed = seed ^ fnv1a(&format!("{fid}/{gid}/coboundary#{i}"));
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(rng_seed);
                let mu: Vec<Vec<u64>> = (0..order)
                    .map(|g| {
                        let idx = if g == 0 { 1 } else { rng.gen_range(1..q) };
                        field.elem_from_index(idx).coeffs().to_vec()
                    })
                    .collect();
                push(format!("coboundary#{i}"), CocycleConfig::Coboundary(mu));
            }
            if let Some((m, n)) = gcfg.cyclic_product_shape() {
                let t = gcd(m as u64, n as u64);
                // Smallest lambda != 1 whose order divides gcd(m, n).
                let lambda = field.elements().skip(2).find(|l| {
                    !l.is_zero() && t % field.elem_order(l).unwrap() == 0
                });
                if let Some(lambda) = lambda {
                    push(
                        format!("lambda({})", render_coeffs(lambda.coeffs())),
                        CocycleConfig::LambdaPairing(lambda.coeffs().to_vec()),
                    );
                }
            }
        }
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn render_coeffs(c: &[u64]) -> String {
    c.iter().map(u64::to_string).collect::<Vec<_>>().join(";")
}

/// Loads catalog entries from parsed configs (ids default to position).
pub fn catalog_from_configs(configs: Vec<InstanceConfig>) -> Vec<CatalogEntry> {
    configs
        .into_iter()
        .enumerate()
        .map(|(i, config)| {
            let id = config.id.clone().unwrap_or_else(|| format!("instance#{i}"));
            CatalogEntry {
                id,
                field_id: format!("GF({}^{})", config.p, config.k),
                group_id: format!("{:?}", config.group),
                cocycle_id: format!("{:?}", config.cocycle),
                config,
            }
        })
        .collect()
}

fn run_row(
    alg: &Algebra,
    entry: &CatalogEntry,
    prop: SweepProperty,
    opts: &SweepOptions,
) -> SweepRow {
    let row_seed = opts.seed ^ fnv1a(&format!("{}/{}", entry.id, prop.name()));
    let cfg = OracleConfig {
        exhaustive_cap: opts.exhaustive_cap,
        budget: entry.config.budget.unwrap_or(opts.budget),
        seed: entry.config.seed.unwrap_or(row_seed),
        threads: opts.threads,
    };
    let mut row = SweepRow {
        id: entry.id.clone(),
        field: entry.field_id.clone(),
        group: entry.group_id.clone(),
        cocycle: entry.cocycle_id.clone(),
        property: prop.name().to_string(),
        n: match prop {
            SweepProperty::NWeak(n) => Some(n),
            _ => None,
        },
        status: "ok".into(),
        decider: None,
        oracle: None,
        oracle_mode: String::new(),
        agreement: true,
        witness: String::new(),
        error: None,
    };
    let decision = match prop {
        SweepProperty::NoNilpotents => decide_no_nilpotents(alg),
        SweepProperty::NWeak(n) => decide_n_weakly_regular(alg, n),
        SweepProperty::XiN => decide_xi_n(alg),
    };
    let decision = match decision {
        Ok(d) => d,
        Err(DecideError::NotAdmissible(report)) => {
            row.status = "not_admissible".into();
            row.witness = match report.suggested_degree {
                Some(kp) => format!("suggested extension degree {kp}"),
                None => "no extension suggestion".into(),
            };
            return row;
        }
        Err(e) => {
            row.status = "error".into();
            row.error = Some(e.to_string());
            return row;
        }
    };
    row.decider = Some(decision.verdict);
    if let Some(w) = &decision.witness {
        row.witness = format!(
            "{}: {} = {}",
            w.source,
            w.elements[0].0,
            render_element(&w.elements[0].1)
        );
    }
    match prop {
        SweepProperty::NoNilpotents => {
            let search = nilpotent_search(alg, &cfg);
            row.oracle_mode = if search.exhaustive { "exhaustive" } else { "randomized" }.into();
            row.oracle = Some(search.found.is_none());
            if let Some(x) = &search.found {
                if row.witness.is_empty() {
                    row.witness = format!("oracle nilpotent: {}", render_element(x));
                }
            }
        }
        SweepProperty::NWeak(n) => {
            let scan = property_scan(alg, ScanProperty::NWeak(n), &cfg);
            row.oracle_mode = if scan.exhaustive { "exhaustive" } else { "sampled" }.into();
            row.oracle = Some(scan.holds);
            if let Some(a) = &scan.counterexample {
                row.witness = format!("counterexample a = {}", render_element(a));
            }
        }
        SweepProperty::XiN => {
            let scan = property_scan(alg, ScanProperty::XiN, &cfg);
            row.oracle_mode = if scan.exhaustive { "exhaustive" } else { "sampled" }.into();
            row.oracle = Some(scan.holds);
            if let Some(a) = &scan.counterexample {
                row.witness = format!("counterexample a = {}", render_element(a));
            }
        }
    }
    row.agreement = row.decider == row.oracle;
    row
}

/// Runs the full decider-vs-oracle matrix. Per-row failures are recorded,
/// never fatal.
pub fn run_sweep(catalog: &[CatalogEntry], opts: &SweepOptions) -> SweepReport {
    let mut rows = Vec::new();
    let mut timings = Vec::new();
    for entry in catalog {
        let alg = match entry.config.resolve() {
            Ok(a) => a,
            Err(ConfigError(msg)) => {
                for prop in &opts.properties {
                    rows.push(SweepRow {
                        id: entry.id.clone(),
                        field: entry.field_id.clone(),
                        group: entry.group_id.clone(),
                        cocycle: entry.cocycle_id.clone(),
                        property: prop.name().to_string(),
                        n: None,
                        status: "error".into(),
                        decider: None,
                        oracle: None,
                        oracle_mode: String::new(),
                        agreement: true,
                        witness: String::new(),
                        error: Some(msg.clone()),
                    });
                }
                continue;
            }
        };
        for prop in &opts.properties {
            let start = Instant::now();
            let row = run_row(&alg, entry, *prop, opts);
            timings.push((
                format!("{}/{}", entry.id, prop.name()),
                start.elapsed().as_secs_f64() * 1e3,
            ));
            rows.push(row);
        }
    }
    let disagreements = rows.iter().filter(|r| r.status == "ok" && !r.agreement).count();
    SweepReport {
        seed: opts.seed,
        budget: opts.budget,
        exhaustive_cap: opts.exhaustive_cap,
        rows,
        disagreements,
        timings,
    }
}

fn verdict_str(v: Option<bool>) -> String {
    match v {
        Some(true) => "true".into(),
        Some(false) => "false".into(),
        None => String::new(),
    }
}

impl SweepReport {
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut m = Map::new();
                m.insert("id".into(), json!(r.id));
                m.insert("field".into(), json!(r.field));
                m.insert("group".into(), json!(r.group));
                m.insert("cocycle".into(), json!(r.cocycle));
                m.insert("property".into(), json!(r.property));
                m.insert("n".into(), json!(r.n));
                m.insert("status".into(), json!(r.status));
                m.insert("decider".into(), json!(r.decider));
                m.insert("oracle".into(), json!(r.oracle));
                m.insert("oracle_mode".into(), json!(r.oracle_mode));
                m.insert("agreement".into(), json!(r.agreement));
                m.insert("witness".into(), json!(r.witness));
                m.insert("error".into(), json!(r.error));
                Value::Object(m)
            })
            .collect();
        let timings: Vec<Value> =
            self.timings.iter().map(|(k, ms)| json!({ "row": k, "ms": ms })).collect();
        json!({
            "schema": tga_core::decide::REPORT_SCHEMA,
            "seed": self.seed,
            "budget": self.budget,
            "exhaustive_cap": self.exhaustive_cap,
            "disagreements": self.disagreements,
            "rows": rows,
            "timings": timings,
        })
    }

    pub fn to_csv(&self) -> String {
        fn esc(s: &str) -> String {
            if s.contains(',') || s.contains('"') || s.contains('\n') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        }
        let mut out = String::from(CSV_COLUMNS);
        out.push('\n');
        for r in &self.rows {
            let cells = [
                tga_core::decide::REPORT_SCHEMA.to_string(),
                r.id.clone(),
                r.field.clone(),
                r.group.clone(),
                r.cocycle.clone(),
                r.property.clone(),
                r.n.map(|n| n.to_string()).unwrap_or_default(),
                r.status.clone(),
                verdict_str(r.decider),
                verdict_str(r.oracle),
                r.oracle_mode.clone(),
                r.agreement.to_string(),
                r.witness.clone(),
            ];
            out.push_str(&cells.iter().map(|c| esc(c)).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("# Sweep report\n\n");
        out.push_str(&format!(
            "seed {} | budget {} | exhaustive cap {} | rows {} | disagreements {}\n\n",
            self.seed,
            self.budget,
            self.exhaustive_cap,
            self.rows.len(),
            self.disagreements
        ));
        out.push_str("| id | property | status | decider | oracle | mode | agree | witness |\n");
        out.push_str("|---|---|---|---|---|---|---|---|\n");
        for r in &self.rows {
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} | {} | {} |\n",
                r.id,
                r.property,
                r.status,
                verdict_str(r.decider),
                verdict_str(r.oracle),
                r.oracle_mode,
                r.agreement,
                r.witness.replace('|', "\\|")
            ));
        }
        out
    }
}
