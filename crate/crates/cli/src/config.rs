//! JSON instance configs: a field descriptor, a group descriptor, and a
//! cocycle descriptor resolve to a concrete algebra. A config file holds
//! either one instance object or a catalog array.

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use tga_core::cocycle::{FactorSystem, Rescaling};
use tga_core::field::{FieldElem, FieldSpec};
use tga_core::group::Group;
use tga_core::Algebra;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

/// Group descriptor: a catalog constructor or an explicit table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupConfig {
    Cyclic(usize),
    Dihedral(usize),
    Quaternion8,
    DirectProduct(Box<GroupConfig>, Box<GroupConfig>),
    Explicit(Vec<Vec<usize>>),
}

impl GroupConfig {
    pub fn from_value(v: &Value) -> Result<Self, ConfigError> {
        let obj = v
            .as_object()
            .ok_or_else(|| ConfigError("group descriptor must be an object".into()))?;
        if let Some(table) = obj.get("table") {
            let rows = table
                .as_array()
                .ok_or_else(|| ConfigError("group table must be an array".into()))?;
            let mut out = Vec::with_capacity(rows.len());
            for row in rows {
                let row = row
                    .as_array()
                    .ok_or_else(|| ConfigError("group table rows must be arrays".into()))?;
                let mut r = Vec::with_capacity(row.len());
                for cell in row {
                    r.push(cell.as_u64().ok_or_else(|| {
                        ConfigError("group table entries must be nonnegative integers".into())
                    })? as usize);
                }
                out.push(r);
            }
            return Ok(GroupConfig::Explicit(out));
        }
        let kind = obj
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| ConfigError("group descriptor needs a \"kind\" or a \"table\"".into()))?;
        let params = obj.get("params").and_then(Value::as_array);
        let single_int = |what: &str| -> Result<usize, ConfigError> {
            let p = params.ok_or_else(|| ConfigError(format!("{what} needs params: [m]")))?;
            if p.len() != 1 {
                return err(format!("{what} needs exactly one parameter"));
            }
            p[0]
                .as_u64()
                .map(|m| m as usize)
                .ok_or_else(|| ConfigError(format!("{what} parameter must be an integer")))
        };
        match kind {
            "cyclic" => Ok(GroupConfig::Cyclic(single_int("cyclic")?)),
            "dihedral" => Ok(GroupConfig::Dihedral(single_int("dihedral")?)),
            "quaternion8" => Ok(GroupConfig::Quaternion8),
            "direct_product" => {
                let p = params
                    .ok_or_else(|| ConfigError("direct_product needs params: [G1, G2]".into()))?;
                if p.len() != 2 {
                    return err("direct_product needs exactly two factor descriptors");
                }
                Ok(GroupConfig::DirectProduct(
                    Box::new(GroupConfig::from_value(&p[0])?),
                    Box::new(GroupConfig::from_value(&p[1])?),
                ))
            }
            other => err(format!("unknown group kind \"{other}\"")),
        }
    }

    pub fn to_value(&self) -> Value {
        match self {
            GroupConfig::Cyclic(m) => json!({ "kind": "cyclic", "params": [m] }),
            GroupConfig::Dihedral(m) => json!({ "kind": "dihedral", "params": [m] }),
            GroupConfig::Quaternion8 => json!({ "kind": "quaternion8", "params": [] }),
            GroupConfig::DirectProduct(a, b) => {
                json!({ "kind": "direct_product", "params": [a.to_value(), b.to_value()] })
            }
            GroupConfig::Explicit(t) => json!({ "table": t }),
        }
    }

    pub fn build(&self) -> Result<Group, ConfigError> {
        match self {
            GroupConfig::Cyclic(m) => Group::cyclic(*m).map_err(|e| ConfigError(e.to_string())),
            GroupConfig::Dihedral(m) => Group::dihedral(*m).map_err(|e| ConfigError(e.to_string())),
            GroupConfig::Quaternion8 => Ok(Group::quaternion8()),
            GroupConfig::DirectProduct(a, b) => {
                Group::direct_product(&a.build()?, &b.build()?)
                    .map_err(|e| ConfigError(e.to_string()))
            }
            GroupConfig::Explicit(t) => {
                Group::from_table(t.clone(), None).map_err(|e| ConfigError(e.to_string()))
            }
        }
    }

    /// (m, n) when this is the canonical product of two cyclic groups.
    pub fn cyclic_product_shape(&self) -> Option<(usize, usize)> {
        match self {
            GroupConfig::DirectProduct(a, b) => match (a.as_ref(), b.as_ref()) {
                (GroupConfig::Cyclic(m), GroupConfig::Cyclic(n)) => Some((*m, *n)),
                _ => None,
            },
            _ => None,
        }
    }
}

/// Cocycle descriptor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CocycleConfig {
    Trivial,
    LambdaPairing(Vec<u64>),
    Coboundary(Vec<Vec<u64>>),
    Explicit(Vec<Vec<Vec<u64>>>),
}

fn elem_from_value(v: &Value) -> Result<Vec<u64>, ConfigError> {
    let arr = v
        .as_array()
        .ok_or_else(|| ConfigError("field elements are encoded as coefficient arrays".into()))?;
    arr.iter()
        .map(|c| {
            c.as_u64()
                .ok_or_else(|| ConfigError("field coefficients must be nonnegative integers".into()))
        })
        .collect()
}

impl CocycleConfig {
    pub fn from_value(v: &Value) -> Result<Self, ConfigError> {
        let obj = v
            .as_object()
            .ok_or_else(|| ConfigError("cocycle descriptor must be an object".into()))?;
        let kind = obj
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| ConfigError("cocycle descriptor needs a \"kind\"".into()))?;
        match kind {
            "trivial" => Ok(CocycleConfig::Trivial),
            "lambda_pairing" => {
                let lam = obj
                    .get("lambda")
                    .ok_or_else(|| ConfigError("lambda_pairing needs \"lambda\"".into()))?;
                Ok(CocycleConfig::LambdaPairing(elem_from_value(lam)?))
            }
            "coboundary" => {
                let mu = obj
                    .get("mu")
                    .and_then(Value::as_array)
                    .ok_or_else(|| ConfigError("coboundary needs \"mu\": [elem, ...]".into()))?;
                let mu = mu.iter().map(elem_from_value).collect::<Result<_, _>>()?;
                Ok(CocycleConfig::Coboundary(mu))
            }
            "explicit" => {
                let table = obj
                    .get("table")
                    .and_then(Value::as_array)
                    .ok_or_else(|| ConfigError("explicit cocycle needs \"table\"".into()))?;
                let mut rows = Vec::with_capacity(table.len());
                for row in table {
                    let row = row
                        .as_array()
                        .ok_or_else(|| ConfigError("cocycle table rows must be arrays".into()))?;
                    rows.push(row.iter().map(elem_from_value).collect::<Result<_, _>>()?);
                }
                Ok(CocycleConfig::Explicit(rows))
            }
            other => err(format!("unknown cocycle kind \"{other}\"")),
        }
    }

    pub fn to_value(&self) -> Value {
        match self {
            CocycleConfig::Trivial => json!({ "kind": "trivial" }),
            CocycleConfig::LambdaPairing(l) => json!({ "kind": "lambda_pairing", "lambda": l }),
            CocycleConfig::Coboundary(mu) => json!({ "kind": "coboundary", "mu": mu }),
            CocycleConfig::Explicit(t) => json!({ "kind": "explicit", "table": t }),
        }
    }
}

/// One resolvable (K, G, rho) instance plus optional seed/budget overrides.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceConfig {
    pub id: Option<String>,
    pub p: u64,
    pub k: usize,
    pub modulus: Option<Vec<u64>>,
    pub group: GroupConfig,
    pub cocycle: CocycleConfig,
    pub seed: Option<u64>,
    pub budget: Option<u64>,
}

impl InstanceConfig {
    pub fn from_value(v: &Value) -> Result<Self, ConfigError> {
        let obj = v
            .as_object()
            .ok_or_else(|| ConfigError("instance must be an object".into()))?;
        let field = obj
            .get("field")
            .and_then(Value::as_object)
            .ok_or_else(|| ConfigError("instance needs \"field\": {p, k, modulus?}".into()))?;
        let p = field
            .get("p")
            .and_then(Value::as_u64)
            .ok_or_else(|| ConfigError("field needs prime \"p\"".into()))?;
        let k = field
            .get("k")
            .and_then(Value::as_u64)
            .ok_or_else(|| ConfigError("field needs degree \"k\"".into()))? as usize;
        let modulus = match field.get("modulus") {
            None | Some(Value::Null) => None,
            Some(m) => Some(elem_from_value(m)?),
        };
        let group = GroupConfig::from_value(
            obj.get("group")
                .ok_or_else(|| ConfigError("instance needs \"group\"".into()))?,
        )?;
        let cocycle = CocycleConfig::from_value(
            obj.get("cocycle")
                .ok_or_else(|| ConfigError("instance needs \"cocycle\"".into()))?,
        )?;
        Ok(InstanceConfig {
            id: obj.get("id").and_then(Value::as_str).map(String::from),
            p,
            k,
            modulus,
            group,
            cocycle,
            seed: obj.get("seed").and_then(Value::as_u64),
            budget: obj.get("budget").and_then(Value::as_u64),
        })
    }

    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        if let Some(id) = &self.id {
            obj.insert("id".into(), json!(id));
        }
        let mut field = Map::new();
        field.insert("p".into(), json!(self.p));
        field.insert("k".into(), json!(self.k));
        if let Some(m) = &self.modulus {
            field.insert("modulus".into(), json!(m));
        }
        obj.insert("field".into(), Value::Object(field));
        obj.insert("group".into(), self.group.to_value());
        obj.insert("cocycle".into(), self.cocycle.to_value());
        if let Some(s) = self.seed {
            obj.insert("seed".into(), json!(s));
        }
        if let Some(b) = self.budget {
            obj.insert("budget".into(), json!(b));
        }
        Value::Object(obj)
    }

    pub fn resolve_field(&self) -> Result<FieldSpec, ConfigError> {
        FieldSpec::new(self.p, self.k, self.modulus.clone())
            .map_err(|e| ConfigError(e.to_string()))
    }

    fn elem(&self, field: &FieldSpec, coeffs: &[u64]) -> Result<FieldElem, ConfigError> {
        field
            .elem_from_coeffs(coeffs)
            .map_err(|_| ConfigError(format!("element {coeffs:?} does not fit {field}")))
    }

    /// Builds the factor system without requiring the cocycle identities,
    /// so `validate` can report violations of explicit tables.
    pub fn resolve_unvalidated(&self) -> Result<Algebra, ConfigError> {
        let field = self.resolve_field()?;
        let group = Arc::new(self.group.build()?);
        let fs = match &self.cocycle {
            CocycleConfig::Trivial => FactorSystem::trivial(field, group),
            CocycleConfig::LambdaPairing(l) => {
                let (m, n) = self.group.cyclic_product_shape().ok_or_else(|| {
                    ConfigError(
                        "lambda_pairing requires group direct_product(cyclic(m), cyclic(n))".into(),
                    )
                })?;
                let lam = self.elem(&field, l)?;
                FactorSystem::lambda_pairing(field, group, m, n, lam)
                    .map_err(|e| ConfigError(e.to_string()))?
            }
            CocycleConfig::Coboundary(mu) => {
                let mu = mu
                    .iter()
                    .map(|c| self.elem(&field, c))
                    .collect::<Result<Vec<_>, _>>()?;
                let mu = Rescaling::new(&field, mu).map_err(|e| ConfigError(e.to_string()))?;
                FactorSystem::coboundary(field, group, &mu)
                    .map_err(|e| ConfigError(e.to_string()))?
            }
            CocycleConfig::Explicit(rows) => {
                let table = rows
                    .iter()
                    .map(|row| {
                        row.iter().map(|c| self.elem(&field, c)).collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                FactorSystem::from_table(field, group, table)
                    .map_err(|e| ConfigError(e.to_string()))?
            }
        };
        Ok(Algebra::new(fs))
    }

    /// Builds the algebra, insisting on a valid factor system.
    pub fn resolve(&self) -> Result<Algebra, ConfigError> {
        let alg = self.resolve_unvalidated()?;
        let report = alg.rho().validate();
        if !report.is_valid() {
            return err(format!(
                "factor system is invalid ({} normalization, {} cocycle violations)",
                report.normalization.len(),
                report.cocycle.len()
            ));
        }
        Ok(alg)
    }

    pub fn display_id(&self) -> String {
        match &self.id {
            Some(id) => id.clone(),
            None => format!("GF({}^{})/{:?}", self.p, self.k, self.group),
        }
    }
}

/// A config file: one instance or an array of instances.
pub fn parse_config(text: &str) -> Result<Vec<InstanceConfig>, ConfigError> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| ConfigError(format!("invalid JSON: {e}")))?;
    match v {
        Value::Array(items) => items.iter().map(InstanceConfig::from_value).collect(),
        obj @ Value::Object(_) => Ok(vec![InstanceConfig::from_value(&obj)?]),
        _ => err("config must be an instance object or an array of instances"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_single_instance() {
        let text = r#"{
            "field": {"p": 5, "k": 1},
            "group": {"kind": "direct_product",
                      "params": [{"kind": "cyclic", "params": [2]},
                                 {"kind": "cyclic", "params": [2]}]},
            "cocycle": {"kind": "lambda_pairing", "lambda": [4]}
        }"#;
        let configs = parse_config(text).unwrap();
        assert_eq!(configs.len(), 1);
        let alg = configs[0].resolve().unwrap();
        assert_eq!(alg.dim(), 4);
        assert!(!alg.rho().is_symmetric());
    }

    #[test]
    fn parse_explicit_table_group() {
        let text = r#"{
            "field": {"p": 3, "k": 1},
            "group": {"table": [[0, 1], [1, 0]]},
            "cocycle": {"kind": "trivial"}
        }"#;
        let alg = parse_config(text).unwrap()[0].resolve().unwrap();
        assert_eq!(alg.dim(), 2);
    }

    #[test]
    fn parse_catalog_array() {
        let text = r#"[
            {"field": {"p": 2, "k": 1}, "group": {"kind": "cyclic", "params": [2]},
             "cocycle": {"kind": "trivial"}},
            {"field": {"p": 3, "k": 2}, "group": {"kind": "quaternion8"},
             "cocycle": {"kind": "trivial"}, "seed": 7}
        ]"#;
        let configs = parse_config(text).unwrap();
        assert_eq!(configs.len(), 2);
        assert_eq!(configs[1].seed, Some(7));
        assert!(configs[1].resolve().is_ok());
    }

    #[test]
    fn coboundary_round_trip() {
        let text = r#"{
            "field": {"p": 5, "k": 1},
            "group": {"kind": "cyclic", "params": [3]},
            "cocycle": {"kind": "coboundary", "mu": [[1], [2], [3]]}
        }"#;
        let cfg = &parse_config(text).unwrap()[0];
        let alg = cfg.resolve().unwrap();
        assert!(alg.rho().validate().is_valid());
        let back = InstanceConfig::from_value(&cfg.to_value()).unwrap();
        assert_eq!(*cfg, back);
    }

    #[test]
    fn bad_configs_are_rejected() {
        assert!(parse_config("not json").is_err());
        assert!(parse_config("42").is_err());
        let no_field = r#"{"group": {"kind": "cyclic", "params": [2]},
                           "cocycle": {"kind": "trivial"}}"#;
        assert!(parse_config(no_field).is_err());
        let bad_kind = r#"{"field": {"p": 5, "k": 1},
                           "group": {"kind": "alternating", "params": [4]},
                           "cocycle": {"kind": "trivial"}}"#;
        assert!(parse_config(bad_kind).is_err());
        let lambda_on_cyclic = r#"{"field": {"p": 5, "k": 1},
                                   "group": {"kind": "cyclic", "params": [4]},
                                   "cocycle": {"kind": "lambda_pairing", "lambda": [4]}}"#;
        assert!(parse_config(lambda_on_cyclic).unwrap()[0].resolve().is_err());
    }

    #[test]
    fn explicit_cocycle_tables_resolve_unvalidated() {
        // A corrupted entry must resolve (for validation reporting) but
        // fail strict resolution.
        let text = r#"{
            "field": {"p": 5, "k": 1},
            "group": {"kind": "cyclic", "params": [2]},
            "cocycle": {"kind": "explicit", "table": [[[1], [1]], [[2], [1]]]}
        }"#;
        let cfg = &parse_config(text).unwrap()[0];
        let alg = cfg.resolve_unvalidated().unwrap();
        assert!(!alg.rho().validate().is_valid());
        assert!(cfg.resolve().is_err());
    }
}
