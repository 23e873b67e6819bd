//! Problem files: a JSON object holding one state and a list of channels.
//!
//! ```json
//! {
//!   "state": {"kind": "bloch", "r": [0.3535533905932738, 0.3535533905932738, 0.5]},
//!   "channels": [
//!     {"kind": "amplitude_damping", "q": 0.5},
//!     {"kind": "bit_flip", "q": 0.5}
//!   ]
//! }
//! ```
//!
//! Complex numbers are `[re, im]` pairs and matrices are row-major arrays of
//! rows. Structural problems map to [`Exit::Parse`], physically invalid
//! content to [`Exit::Validation`].

use std::path::Path;

use serde_json::{Map, Value};
use skewinfo::quantum::{
    amplitude_damping, bit_flip, density_from_bloch, density_from_matrix,
    pauli_unitary_channels, unitary_channel,
};
use skewinfo::{BlochVector, Complex64, ComplexMatrix, DensityMatrix, KrausChannel};

use crate::exit::{CliError, CliResult, Exit};

#[derive(Clone, Debug, PartialEq)]
pub enum StateSpec {
    Bloch(BlochVector),
    Matrix(ComplexMatrix),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ChannelSpec {
    AmplitudeDamping { q: f64 },
    BitFlip { q: f64 },
    Unitary(ComplexMatrix),
    Kraus(Vec<ComplexMatrix>),
    Pauli(Axis),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    pub state: StateSpec,
    pub channels: Vec<ChannelSpec>,
}

/// A validated problem.
#[derive(Clone, Debug)]
pub struct Instance {
    pub state: DensityMatrix,
    pub channels: Vec<KrausChannel>,
}

impl StateSpec {
    /// Rotates a Bloch state to azimuth `theta`, keeping its transverse
    /// length and `r_z`. `None` for matrix states.
    pub fn with_azimuth(&self, theta: f64) -> Option<StateSpec> {
        match self {
            StateSpec::Bloch(r) => {
                let transverse = r.x.hypot(r.y);
                Some(StateSpec::Bloch(BlochVector::azimuthal(transverse, theta, r.z)))
            }
            StateSpec::Matrix(_) => None,
        }
    }

    pub fn build(&self) -> CliResult<DensityMatrix> {
        match self {
            StateSpec::Bloch(r) => {
                density_from_bloch(*r).map_err(|e| CliError::validation("state.r", e))
            }
            StateSpec::Matrix(m) => {
                density_from_matrix(m).map_err(|e| CliError::validation("state.data", e))
            }
        }
    }
}

impl ChannelSpec {
    /// The damping or flip probability, for channels that have one.
    pub fn q(&self) -> Option<f64> {
        match self {
            ChannelSpec::AmplitudeDamping { q } | ChannelSpec::BitFlip { q } => Some(*q),
            _ => None,
        }
    }

    pub fn with_q(&self, q: f64) -> ChannelSpec {
        match self {
            ChannelSpec::AmplitudeDamping { .. } => ChannelSpec::AmplitudeDamping { q },
            ChannelSpec::BitFlip { .. } => ChannelSpec::BitFlip { q },
            other => other.clone(),
        }
    }

    /// Builds the channel; `path` names the entry in diagnostics.
    pub fn build(&self, path: &str) -> CliResult<KrausChannel> {
        let (res, field) = match self {
            ChannelSpec::AmplitudeDamping { q } => (amplitude_damping(*q), "q"),
            ChannelSpec::BitFlip { q } => (bit_flip(*q), "q"),
            ChannelSpec::Unitary(u) => (unitary_channel(u), "matrix"),
            ChannelSpec::Kraus(ops) => (KrausChannel::new("kraus", ops.clone()), "ops"),
            ChannelSpec::Pauli(axis) => {
                let (x, y, z) = pauli_unitary_channels();
                let ch = match axis {
                    Axis::X => x,
                    Axis::Y => y,
                    Axis::Z => z,
                };
                (Ok(ch), "axis")
            }
        };
        res.map_err(|e| CliError::validation(&format!("{path}.{field}"), e))
    }
}

impl Problem {
    pub fn parse(text: &str) -> CliResult<Problem> {
        let root: Value = serde_json::from_str(text).map_err(|e| {
            CliError::new(Exit::Parse, format!("(root): invalid JSON: {e}"))
        })?;
        let obj = object(&root, "(root)")?;
        allow_keys(obj, "", &["state", "channels"])?;
        let state = parse_state(required(obj, "", "state")?, "state")?;
        let channels = match obj.get("channels") {
            None => Vec::new(),
            Some(v) => array(v, "channels")?
                .iter()
                .enumerate()
                .map(|(i, c)| parse_channel(c, &format!("channels[{i}]")))
                .collect::<CliResult<_>>()?,
        };
        Ok(Problem { state, channels })
    }

    pub fn load(path: &Path) -> CliResult<Problem> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(&path.display().to_string(), e))?;
        Problem::parse(&text)
    }

    /// Validates the state and every channel and checks that dimensions agree.
    pub fn build(&self) -> CliResult<Instance> {
        let state = self.state.build()?;
        let mut channels = Vec::with_capacity(self.channels.len());
        for (i, spec) in self.channels.iter().enumerate() {
            let path = format!("channels[{i}]");
            let ch = spec.build(&path)?;
            if ch.dim() != state.dim() {
                return Err(CliError::new(
                    Exit::Dimension,
                    format!(
                        "{path}: channel acts on dimension {} but the state has dimension {}",
                        ch.dim(),
                        state.dim()
                    ),
                ));
            }
            channels.push(ch);
        }
        Ok(Instance { state, channels })
    }

    pub fn require_channels(&self, n: usize, command: &str) -> CliResult<()> {
        if self.channels.len() != n {
            return Err(CliError::new(
                Exit::Arity,
                format!(
                    "channels: {command} needs exactly {n} channels, file has {}",
                    self.channels.len()
                ),
            ));
        }
        Ok(())
    }
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn kind_name(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn object<'a>(v: &'a Value, path: &str) -> CliResult<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| CliError::parse(path, format!("expected an object, found {}", kind_name(v))))
}

fn array<'a>(v: &'a Value, path: &str) -> CliResult<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| CliError::parse(path, format!("expected an array, found {}", kind_name(v))))
}

fn number(v: &Value, path: &str) -> CliResult<f64> {
    v.as_f64()
        .ok_or_else(|| CliError::parse(path, format!("expected a number, found {}", kind_name(v))))
}

fn string<'a>(v: &'a Value, path: &str) -> CliResult<&'a str> {
    v.as_str()
        .ok_or_else(|| CliError::parse(path, format!("expected a string, found {}", kind_name(v))))
}

fn required<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> CliResult<&'a Value> {
    obj.get(key)
        .ok_or_else(|| CliError::parse(&join(path, key), "missing field"))
}

fn allow_keys(obj: &Map<String, Value>, path: &str, allowed: &[&str]) -> CliResult<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(CliError::parse(&join(path, k), "unknown field")),
        None => Ok(()),
    }
}

fn complex(v: &Value, path: &str) -> CliResult<Complex64> {
    let parts = array(v, path)?;
    if parts.len() != 2 {
        return Err(CliError::parse(
            path,
            format!("complex entry must be [re, im], found {} element(s)", parts.len()),
        ));
    }
    Ok(Complex64::new(
        number(&parts[0], &format!("{path}[0]"))?,
        number(&parts[1], &format!("{path}[1]"))?,
    ))
}

fn matrix(v: &Value, path: &str) -> CliResult<ComplexMatrix> {
    let rows = array(v, path)?;
    if rows.is_empty() {
        return Err(CliError::parse(path, "matrix has no rows"));
    }
    let mut data = Vec::new();
    let mut cols = None;
    for (i, row) in rows.iter().enumerate() {
        let rpath = format!("{path}[{i}]");
        let entries = array(row, &rpath)?;
        match cols {
            None if entries.is_empty() => return Err(CliError::parse(&rpath, "row is empty")),
            None => cols = Some(entries.len()),
            Some(c) if c != entries.len() => {
                return Err(CliError::parse(
                    &rpath,
                    format!("row has {} entries, expected {c}", entries.len()),
                ))
            }
            Some(_) => {}
        }
        for (j, e) in entries.iter().enumerate() {
            data.push(complex(e, &format!("{rpath}[{j}]"))?);
        }
    }
    ComplexMatrix::new(rows.len(), cols.unwrap_or(0), data).map_err(|e| CliError::parse(path, e))
}

fn parse_state(v: &Value, path: &str) -> CliResult<StateSpec> {
    let obj = object(v, path)?;
    let kind_path = join(path, "kind");
    match string(required(obj, path, "kind")?, &kind_path)? {
        "bloch" => {
            allow_keys(obj, path, &["kind", "r"])?;
            let rpath = join(path, "r");
            let r = array(required(obj, path, "r")?, &rpath)?;
            if r.len() != 3 {
                return Err(CliError::parse(
                    &rpath,
                    format!("Bloch vector needs 3 components, found {}", r.len()),
                ));
            }
            let mut xyz = [0.0; 3];
            for (k, c) in r.iter().enumerate() {
                xyz[k] = number(c, &format!("{rpath}[{k}]"))?;
            }
            Ok(StateSpec::Bloch(BlochVector::from_array(xyz)))
        }
        "matrix" => {
            allow_keys(obj, path, &["kind", "data"])?;
            let m = matrix(required(obj, path, "data")?, &join(path, "data"))?;
            Ok(StateSpec::Matrix(m))
        }
        other => Err(CliError::parse(
            &kind_path,
            format!("unknown state kind {other:?} (expected \"bloch\" or \"matrix\")"),
        )),
    }
}

fn parse_channel(v: &Value, path: &str) -> CliResult<ChannelSpec> {
    let obj = object(v, path)?;
    let kind_path = join(path, "kind");
    let kind = string(required(obj, path, "kind")?, &kind_path)?;
    let q = |obj: &Map<String, Value>| -> CliResult<f64> {
        allow_keys(obj, path, &["kind", "q"])?;
        number(required(obj, path, "q")?, &join(path, "q"))
    };
    match kind {
        "amplitude_damping" => Ok(ChannelSpec::AmplitudeDamping { q: q(obj)? }),
        "bit_flip" => Ok(ChannelSpec::BitFlip { q: q(obj)? }),
        "unitary" => {
            allow_keys(obj, path, &["kind", "matrix"])?;
            let m = matrix(required(obj, path, "matrix")?, &join(path, "matrix"))?;
            Ok(ChannelSpec::Unitary(m))
        }
        "kraus" => {
            allow_keys(obj, path, &["kind", "ops"])?;
            let ops_path = join(path, "ops");
            let ops = array(required(obj, path, "ops")?, &ops_path)?
                .iter()
                .enumerate()
                .map(|(i, m)| matrix(m, &format!("{ops_path}[{i}]")))
                .collect::<CliResult<Vec<_>>>()?;
            if ops.is_empty() {
                return Err(CliError::parse(&ops_path, "at least one Kraus operator is required"));
            }
            Ok(ChannelSpec::Kraus(ops))
        }
        "pauli" => {
            allow_keys(obj, path, &["kind", "axis"])?;
            let axis_path = join(path, "axis");
            let axis = match string(required(obj, path, "axis")?, &axis_path)? {
                "x" => Axis::X,
                "y" => Axis::Y,
                "z" => Axis::Z,
                other => {
                    return Err(CliError::parse(
                        &axis_path,
                        format!("unknown axis {other:?} (expected \"x\", \"y\" or \"z\")"),
                    ))
                }
            };
            Ok(ChannelSpec::Pauli(axis))
        }
        other => Err(CliError::parse(&kind_path, format!("unknown channel kind {other:?}"))),
    }
}
