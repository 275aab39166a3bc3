use serde_json::{json, Map, Value};

use super::{SearchBounds, SearchOutcome, SearchVerdict};
use crate::formula::Formula;

/// A search run in the experiment report format.
#[derive(Debug, Clone)]
pub struct SearchReport<'a> {
    pub formula: &'a Formula,
    /// Premises of a global consequence check; empty for validity runs.
    pub premises: &'a [Formula],
    pub bounds: &'a SearchBounds,
    pub outcome: &'a SearchOutcome,
    /// `(samples, seed)` for randomized runs.
    pub sampling: Option<(u64, u64)>,
}

impl SearchReport<'_> {
    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("formula".into(), json!(self.formula.to_string()));
        if !self.premises.is_empty() {
            let ps: Vec<String> = self.premises.iter().map(ToString::to_string).collect();
            obj.insert("premises".into(), json!(ps));
        }
        obj.insert("class".into(), json!(self.bounds.model_class.name()));
        let mut bounds = Map::new();
        bounds.insert("max_worlds".into(), json!(self.bounds.max_worlds));
        bounds.insert("atoms".into(), json!(self.bounds.atoms));
        if let Some((samples, seed)) = self.sampling {
            bounds.insert("samples".into(), json!(samples));
            bounds.insert("seed".into(), json!(seed));
        }
        obj.insert("bounds".into(), Value::Object(bounds));
        obj.insert("verdict".into(), json!(self.outcome.verdict.name()));
        obj.insert("models_checked".into(), json!(self.outcome.models_checked));
        if let SearchVerdict::CountermodelFound { model, world } = &self.outcome.verdict {
            obj.insert("countermodel".into(), model.to_value());
            obj.insert("world".into(), json!(world));
        }
        Value::Object(obj)
    }

    pub fn to_json(&self) -> String {
        self.to_value().to_string()
    }
}
