//! The JSON report envelope shared by all commands.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::galois::Certification;

/// How a numeric claim was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificationLevel {
    Exact,
    Evidence,
    MonteCarlo,
}

impl From<Certification> for CertificationLevel {
    fn from(c: Certification) -> Self {
        match c {
            Certification::Certified => CertificationLevel::Exact,
            Certification::Evidence | Certification::Inconclusive => CertificationLevel::Evidence,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SectionStatus {
    Ok,
    Partial,
    Inconclusive,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub name: String,
    pub certification: CertificationLevel,
    pub status: SectionStatus,
    pub data: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub toolkit_version: String,
    pub command: String,
    /// Input origamis in their text form.
    pub inputs: Vec<String>,
    pub sections: Vec<Section>,
}

impl ReportEnvelope {
    pub fn new(command: impl Into<String>) -> Self {
        ReportEnvelope {
            toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.into(),
            inputs: Vec::new(),
            sections: Vec::new(),
        }
    }

    pub fn push<T: Serialize>(
        &mut self,
        name: &str,
        certification: CertificationLevel,
        status: SectionStatus,
        data: &T,
    ) -> Result<()> {
        let data = serde_json::to_value(data).map_err(|e| Error::Precondition(format!("serializing {name}: {e}")))?;
        self.sections.push(Section { name: name.to_string(), certification, status, data });
        Ok(())
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values are JSON");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Precondition(format!("invalid report: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_byte_identical() {
        let mut r = ReportEnvelope::new("lyapunov");
        r.inputs.push("r=(1,2) u=(1)".into());
        r.push("exponents", CertificationLevel::MonteCarlo, SectionStatus::Ok, &vec![0.1f64 + 0.2, 1.0 / 3.0, 5e-324])
            .unwrap();
        r.push("z", CertificationLevel::Exact, SectionStatus::Partial, &serde_json::json!({"b": 1, "a": [2, "x"]}))
            .unwrap();
        let text = r.to_json();
        let back = ReportEnvelope::from_json(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), text);
        assert!(text.contains("\"monte-carlo\""));
    }
}
