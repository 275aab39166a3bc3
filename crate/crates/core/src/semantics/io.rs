//! Canonical JSON model files.
//!
//! ```json
//! {"worlds":2,"S":{"0":[[0],[0,1]],"1":[[0,1]]},"V":{"p0":[0]}}
//! {"worlds":2,"R":[[0,0],[0,1],[1,1]],"V":{"p0":[1]}}
//! {"worlds":3,"V":{"p0":[0,2],"p1":[]}}
//! ```
//!
//! Output is a single line with keys in the order shown; families are listed
//! by ascending bitmask, and world lists ascend.

use std::collections::BTreeSet;

use serde_json::{json, Map, Value};
use thiserror::Error;

use super::{KripkeModel, Model, ModelError, NeighborhoodModel, UniversalModel, Valuation, WorldSet};

#[derive(Debug, Error)]
pub enum ModelIoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid model file: {0}")]
    Format(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn format_err(msg: impl Into<String>) -> ModelIoError {
    ModelIoError::Format(msg.into())
}

/// Any of the three model kinds, as read from or written to a model file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelFile {
    Neighborhood(NeighborhoodModel),
    Kripke(KripkeModel),
    Universal(UniversalModel),
}

impl ModelFile {
    pub fn kind(&self) -> &'static str {
        match self {
            ModelFile::Neighborhood(_) => "neighborhood",
            ModelFile::Kripke(_) => "kripke",
            ModelFile::Universal(_) => "universal",
        }
    }

    pub fn from_json(text: &str) -> Result<ModelFile, ModelIoError> {
        let value: Value = serde_json::from_str(text)?;
        ModelFile::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Result<ModelFile, ModelIoError> {
        let obj = value
            .as_object()
            .ok_or_else(|| format_err("top level must be an object"))?;
        if let Some(key) = obj.keys().find(|k| !matches!(k.as_str(), "worlds" | "S" | "R" | "V")) {
            return Err(format_err(format!("unknown key `{key}`")));
        }
        let worlds = obj
            .get("worlds")
            .and_then(Value::as_u64)
            .ok_or_else(|| format_err("`worlds` must be a non-negative integer"))? as usize;
        if worlds == 0 || worlds > super::MAX_WORLDS {
            return Err(ModelError::WorldCount(worlds).into());
        }
        let valuation = match obj.get("V") {
            Some(v) => read_valuation(v, worlds)?,
            None => Valuation::new(),
        };
        match (obj.get("S"), obj.get("R")) {
            (Some(_), Some(_)) => Err(format_err("a model has either `S` or `R`, not both")),
            (Some(s), None) => {
                let families = read_families(s, worlds)?;
                Ok(ModelFile::Neighborhood(NeighborhoodModel::new(
                    worlds, families, valuation,
                )?))
            }
            (None, Some(r)) => {
                let pairs = read_pairs(r, worlds)?;
                Ok(ModelFile::Kripke(KripkeModel::new(worlds, pairs, valuation)?))
            }
            (None, None) => Ok(ModelFile::Universal(UniversalModel::new(worlds, valuation)?)),
        }
    }

    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        let (worlds, valuation) = match self {
            ModelFile::Neighborhood(m) => (m.world_count(), m.valuation()),
            ModelFile::Kripke(m) => (m.world_count(), m.valuation()),
            ModelFile::Universal(m) => (m.world_count(), m.valuation()),
        };
        obj.insert("worlds".into(), json!(worlds));
        match self {
            ModelFile::Neighborhood(m) => {
                let mut s = Map::new();
                for (w, family) in m.families().iter().enumerate() {
                    let sets: Vec<Value> = family.iter().map(|x| json!(x)).collect();
                    s.insert(w.to_string(), Value::Array(sets));
                }
                obj.insert("S".into(), Value::Object(s));
            }
            ModelFile::Kripke(m) => {
                let pairs: Vec<Value> = m.pairs().into_iter().map(|(a, b)| json!([a, b])).collect();
                obj.insert("R".into(), Value::Array(pairs));
            }
            ModelFile::Universal(_) => {}
        }
        let mut v = Map::new();
        for (atom, set) in valuation {
            v.insert(format!("p{atom}"), json!(set));
        }
        obj.insert("V".into(), Value::Object(v));
        Value::Object(obj)
    }

    /// Single-line canonical JSON, without a trailing newline.
    pub fn to_json(&self) -> String {
        self.to_value().to_string()
    }
}

impl From<NeighborhoodModel> for ModelFile {
    fn from(m: NeighborhoodModel) -> Self {
        ModelFile::Neighborhood(m)
    }
}

impl From<KripkeModel> for ModelFile {
    fn from(m: KripkeModel) -> Self {
        ModelFile::Kripke(m)
    }
}

impl From<UniversalModel> for ModelFile {
    fn from(m: UniversalModel) -> Self {
        ModelFile::Universal(m)
    }
}

fn read_world(v: &Value, worlds: usize) -> Result<usize, ModelIoError> {
    let w = v
        .as_u64()
        .ok_or_else(|| format_err(format!("expected a world index, found {v}")))? as usize;
    if w >= worlds {
        return Err(ModelError::WorldOutOfRange { world: w, worlds }.into());
    }
    Ok(w)
}

fn read_set(v: &Value, worlds: usize) -> Result<WorldSet, ModelIoError> {
    let items = v
        .as_array()
        .ok_or_else(|| format_err(format!("expected an array of worlds, found {v}")))?;
    let mut set = WorldSet::EMPTY;
    for item in items {
        let w = read_world(item, worlds)?;
        if set.contains(w) {
            return Err(format_err(format!("world {w} listed twice in {v}")));
        }
        set.insert(w);
    }
    Ok(set)
}

fn read_valuation(v: &Value, worlds: usize) -> Result<Valuation, ModelIoError> {
    let obj = v.as_object().ok_or_else(|| format_err("`V` must be an object"))?;
    let mut valuation = Valuation::new();
    for (name, set) in obj {
        let atom = name
            .strip_prefix('p')
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|d| d.parse::<u32>().ok())
            .ok_or_else(|| format_err(format!("bad atom name `{name}`")))?;
        valuation.insert(atom, read_set(set, worlds)?);
    }
    Ok(valuation)
}

fn read_families(v: &Value, worlds: usize) -> Result<Vec<BTreeSet<WorldSet>>, ModelIoError> {
    let obj = v.as_object().ok_or_else(|| format_err("`S` must be an object"))?;
    let mut families = vec![BTreeSet::new(); worlds];
    for (key, family) in obj {
        let w: usize = key
            .parse()
            .map_err(|_| format_err(format!("bad world key `{key}` in `S`")))?;
        if w >= worlds {
            return Err(ModelError::WorldOutOfRange { world: w, worlds }.into());
        }
        let sets = family
            .as_array()
            .ok_or_else(|| format_err(format!("`S.{key}` must be an array of world lists")))?;
        for set in sets {
            families[w].insert(read_set(set, worlds)?);
        }
    }
    Ok(families)
}

fn read_pairs(v: &Value, worlds: usize) -> Result<Vec<(usize, usize)>, ModelIoError> {
    let items = v
        .as_array()
        .ok_or_else(|| format_err("`R` must be an array of pairs"))?;
    items
        .iter()
        .map(|pair| match pair.as_array().map(Vec::as_slice) {
            Some([a, b]) => Ok((read_world(a, worlds)?, read_world(b, worlds)?)),
            _ => Err(format_err(format!("expected a [from,to] pair, found {pair}"))),
        })
        .collect()
}
