//! Staged pass/fail reports shared by the pipelines and the command line.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stage {
    pub stage: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct PipelineReport {
    pub ok: bool,
    pub stages: Vec<Stage>,
}

impl PipelineReport {
    pub fn new() -> Self {
        PipelineReport {
            ok: true,
            stages: Vec::new(),
        }
    }

    /// Records a stage; returns `ok` so callers can stop early.
    pub fn push(&mut self, stage: &str, ok: bool, witness: Option<Value>) -> bool {
        self.ok &= ok;
        self.stages.push(Stage {
            stage: stage.to_string(),
            ok,
            witness,
        });
        ok
    }

    pub fn stage(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.stage == name)
    }

    /// Name of the first failing stage.
    pub fn first_failure(&self) -> Option<&str> {
        self.stages.iter().find(|s| !s.ok).map(|s| s.stage.as_str())
    }
}

/// Serializes a report for a witness field; reports are plain data so this
/// cannot fail.
pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable report")
}
