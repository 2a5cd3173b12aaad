//! Curve specification files: JSON, or TOML when the path ends in `.toml`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::curves::CurveSpec;
use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Elliptic,
    Hyperelliptic2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Coeffs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<i64>>,
}

/// On-disk form of a curve, echoed verbatim into every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpecFile {
    pub p: u64,
    pub model: Model,
    pub coeffs: Coeffs,
}

impl CurveSpecFile {
    pub fn parse(text: &str, toml: bool) -> Result<CurveSpecFile, CliError> {
        if toml {
            toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
        } else {
            serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
        }
    }

    pub fn read(path: &Path) -> Result<CurveSpecFile, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        let toml = path.extension().is_some_and(|x| x.eq_ignore_ascii_case("toml"));
        CurveSpecFile::parse(&text, toml)
    }

    /// Builds and validates the curve.
    pub fn to_curve(&self) -> Result<CurveSpec, CliError> {
        let c = &self.coeffs;
        match self.model {
            Model::Elliptic => match (c.a, c.b, &c.f) {
                (Some(a), Some(b), None) => Ok(CurveSpec::elliptic(self.p, a, b)?),
                _ => Err(CliError::Parse(
                    "elliptic curves take coeffs {a, b} and nothing else".into(),
                )),
            },
            Model::Hyperelliptic2 => match (c.a, c.b, &c.f) {
                (None, None, Some(f)) => {
                    if f.len() != 6 && f.len() != 7 {
                        return Err(Error::BadDegree(format!(
                            "f must list 6 or 7 coefficients, got {}",
                            f.len()
                        ))
                        .into());
                    }
                    Ok(CurveSpec::hyperelliptic2(self.p, f)?)
                }
                _ => Err(CliError::Parse(
                    "hyperelliptic2 curves take coeffs {f} and nothing else".into(),
                )),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_and_toml_agree() {
        let j = CurveSpecFile::parse(r#"{"p":5,"model":"elliptic","coeffs":{"a":-1,"b":0}}"#, false).unwrap();
        let t = CurveSpecFile::parse("p = 5\nmodel = \"elliptic\"\n[coeffs]\na = -1\nb = 0\n", true).unwrap();
        assert_eq!(j, t);
        assert_eq!(j.to_curve().unwrap().genus(), 1);
    }

    #[test]
    fn rejects_unknown_keys_and_mixed_coeffs() {
        assert!(matches!(
            CurveSpecFile::parse(r#"{"p":5,"model":"elliptic","coeffs":{"a":1,"b":1},"x":1}"#, false),
            Err(CliError::Parse(_))
        ));
        assert!(matches!(
            CurveSpecFile::parse(r#"{"p":5,"model":"elliptic","coeffs":{"a":1,"c":1}}"#, false),
            Err(CliError::Parse(_))
        ));
        let mixed = CurveSpecFile::parse(r#"{"p":5,"model":"elliptic","coeffs":{"a":1,"b":1,"f":[1]}}"#, false).unwrap();
        assert!(matches!(mixed.to_curve(), Err(CliError::Parse(_))));
    }

    #[test]
    fn invalid_curves_map_to_library_errors() {
        let singular = CurveSpecFile::parse(r#"{"p":5,"model":"elliptic","coeffs":{"a":0,"b":0}}"#, false).unwrap();
        assert_eq!(singular.to_curve().unwrap_err().exit_code(), 2);
        let short = CurveSpecFile::parse(r#"{"p":5,"model":"hyperelliptic2","coeffs":{"f":[1,1,0,1]}}"#, false).unwrap();
        assert_eq!(short.to_curve().unwrap_err().exit_code(), 2);
    }
}
