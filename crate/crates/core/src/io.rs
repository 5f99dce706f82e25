//! Versioned JSON documents: instance files and result artifacts.
//!
//! Every document carries `format` and `version` (`"MAJOR.MINOR"`); readers
//! reject a different format or an unknown major version. Floats are written
//! in shortest round-trip form, so documents reload bit-exactly; CSV dumps use
//! exact decimal expansions instead.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{parse, ParseError};
use crate::gadgets::{BitStream, DecodeReport, GadgetError, GadgetRef};
use crate::instance::{Ball, InstanceError, IvpInstance, OpenSet};
use crate::rhs::Rhs;

pub const VERSION_MAJOR: u32 = 1;
pub const VERSION: &str = "1.0";

pub const INSTANCE_FORMAT: &str = "ivp-funnel/instance";
pub const SOLVE_FORMAT: &str = "ivp-funnel/solve-result";
pub const EXTEND_FORMAT: &str = "ivp-funnel/extension";
pub const DECODE_FORMAT: &str = "ivp-funnel/decode-report";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed document: {0}")]
    Json(String),
    #[error("expected a {expected} document, found {found:?}")]
    Format { expected: String, found: String },
    #[error("unsupported version {0:?} (this build reads {VERSION_MAJOR}.x)")]
    Version(String),
    #[error("expression error: {message}")]
    Expr { error: ParseError, message: String },
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error("{0}")]
    Schema(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum RhsSpec {
    /// Semicolon-separated components in the expression language.
    Expr(String),
    /// The parallel gadget over the listed streams.
    Gadget { streams: Vec<Vec<u64>>, cell_budget: u32 },
    /// One gadget `g_p` on `[0, 4]`.
    SingleGadget { stream: Vec<u64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum DomainSpec {
    Balls(Vec<Ball>),
    /// Must be `true`; expands to `B(0, 2^m)`, `m = 0..=31`.
    AutoGrowing(bool),
}

/// The on-disk form of `(f, U, x0, y0)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub format: String,
    pub version: String,
    pub dimension: usize,
    pub rhs: RhsSpec,
    pub domain: DomainSpec,
    pub x0: f64,
    pub y0: Vec<f64>,
}

impl InstanceFile {
    pub fn new(dimension: usize, rhs: RhsSpec, domain: DomainSpec, x0: f64, y0: Vec<f64>) -> InstanceFile {
        InstanceFile {
            format: INSTANCE_FORMAT.into(),
            version: VERSION.into(),
            dimension,
            rhs,
            domain,
            x0,
            y0,
        }
    }

    /// Instance file for the parallel gadget on the strip, started at the origin.
    pub fn gadget(streams: &[BitStream], cell_budget: u32) -> InstanceFile {
        let balls = OpenSet::strip(30).balls().to_vec();
        InstanceFile::new(
            1,
            RhsSpec::Gadget {
                streams: streams.iter().map(|s| s.clone().into()).collect(),
                cell_budget,
            },
            DomainSpec::Balls(balls),
            0.0,
            vec![0.0],
        )
    }

    pub fn parse_rhs(&self) -> Result<Rhs, IoError> {
        match &self.rhs {
            RhsSpec::Expr(text) => parse(text, self.dimension).map(Rhs::Expr).map_err(|e| IoError::Expr {
                message: format!("{e}\n{}", e.annotate(text)),
                error: e,
            }),
            RhsSpec::Gadget { streams, cell_budget } => {
                self.require_scalar()?;
                if *cell_budget == 0 {
                    return Err(IoError::Schema("cell_budget must be at least 1".into()));
                }
                Ok(Rhs::Gadget(GadgetRef::Parallel {
                    streams: BitStream::parse_list(streams)?,
                    cell_budget: *cell_budget,
                }))
            }
            RhsSpec::SingleGadget { stream } => {
                self.require_scalar()?;
                Ok(Rhs::Gadget(GadgetRef::Single {
                    stream: BitStream::new(stream)?,
                }))
            }
        }
    }

    fn require_scalar(&self) -> Result<(), IoError> {
        if self.dimension == 1 {
            Ok(())
        } else {
            Err(IoError::Schema("gadget right-hand sides have dimension 1".into()))
        }
    }

    pub fn to_instance(&self) -> Result<IvpInstance, IoError> {
        let rhs = self.parse_rhs()?;
        let domain = match &self.domain {
            DomainSpec::Balls(b) => OpenSet::new(b.clone(), self.dimension)?,
            DomainSpec::AutoGrowing(true) => OpenSet::auto_growing(self.dimension),
            DomainSpec::AutoGrowing(false) => {
                return Err(IoError::Schema("auto_growing must be true when present".into()))
            }
        };
        Ok(IvpInstance::new(rhs, domain, self.x0, self.y0.clone())?)
    }
}

/// Envelope shared by the result documents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document<T> {
    pub format: String,
    pub version: String,
    #[serde(flatten)]
    pub body: T,
}

impl<T> Document<T> {
    pub fn new(format: &str, body: T) -> Document<T> {
        Document {
            format: format.into(),
            version: VERSION.into(),
            body,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveBody {
    pub instance: InstanceFile,
    pub config: crate::solver::SolveConfig,
    pub at: AtPoint,
    pub result: crate::solver::SolveResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtPoint {
    pub x: f64,
    pub y: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtendBody {
    pub instance: InstanceFile,
    pub config: crate::solver::SolveConfig,
    pub state: crate::extender::ExtensionState,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecodeBody {
    pub indices: Vec<usize>,
    pub report: DecodeReport,
}

pub type SolveDocument = Document<SolveBody>;
pub type ExtendDocument = Document<ExtendBody>;
pub type DecodeDocument = Document<DecodeBody>;

fn check_header(v: &serde_json::Value, expected: &str) -> Result<(), IoError> {
    let found = v.get("format").and_then(|f| f.as_str()).unwrap_or("");
    if found != expected {
        return Err(IoError::Format {
            expected: expected.into(),
            found: found.into(),
        });
    }
    let version = v.get("version").and_then(|f| f.as_str()).unwrap_or("");
    let major = version.split('.').next().and_then(|m| m.parse::<u32>().ok());
    if major != Some(VERSION_MAJOR) {
        return Err(IoError::Version(version.into()));
    }
    Ok(())
}

/// Parses a document of the given format from text.
pub fn from_str<T: DeserializeOwned>(text: &str, format: &str) -> Result<T, IoError> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
    check_header(&v, format)?;
    serde_json::from_value(v).map_err(|e| IoError::Json(e.to_string()))
}

pub fn read<T: DeserializeOwned>(path: &Path, format: &str) -> Result<T, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    from_str(&text, format)
}

pub fn read_instance(path: &Path) -> Result<InstanceFile, IoError> {
    read(path, INSTANCE_FORMAT)
}

/// Pretty JSON with a trailing newline.
pub fn to_string<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn write(path: &Path, text: &str) -> Result<(), IoError> {
    std::fs::write(path, text).map_err(|source| IoError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXP: &str = r#"{
        "format": "ivp-funnel/instance", "version": "1.0", "dimension": 1,
        "rhs": {"expr": "y"}, "domain": {"auto_growing": true}, "x0": 0, "y0": [1]
    }"#;

    #[test]
    fn reads_instance_files() {
        let f: InstanceFile = from_str(EXP, INSTANCE_FORMAT).unwrap();
        let inst = f.to_instance().unwrap();
        assert_eq!(inst.dim(), 1);
        assert_eq!(inst.domain.balls().len(), 32);
        let back: InstanceFile = from_str(&to_string(&f), INSTANCE_FORMAT).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn rejects_versions_and_formats() {
        let v2 = EXP.replace("\"1.0\"", "\"2.0\"");
        assert!(matches!(from_str::<InstanceFile>(&v2, INSTANCE_FORMAT), Err(IoError::Version(_))));
        let v11 = EXP.replace("\"1.0\"", "\"1.7\"");
        assert!(from_str::<InstanceFile>(&v11, INSTANCE_FORMAT).is_ok());
        assert!(matches!(from_str::<InstanceFile>(EXP, SOLVE_FORMAT), Err(IoError::Format { .. })));
        let extra = EXP.replace("\"x0\"", "\"bogus\": 1, \"x0\"");
        assert!(matches!(from_str::<InstanceFile>(&extra, INSTANCE_FORMAT), Err(IoError::Json(_))));
    }

    #[test]
    fn expression_errors_carry_positions() {
        let bad = EXP.replace("\"y\"", "\"y + @\"");
        let f: InstanceFile = from_str(&bad, INSTANCE_FORMAT).unwrap();
        match f.to_instance() {
            Err(IoError::Expr { error, message }) => {
                assert_eq!(error.position(), Some(4));
                assert!(message.contains('^'));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn gadget_files() {
        let f = InstanceFile::gadget(&[BitStream::new(&[0]).unwrap()], 16);
        let text = to_string(&f);
        let back: InstanceFile = from_str(&text, INSTANCE_FORMAT).unwrap();
        assert!(back.to_instance().is_ok());
        let mut bad = back.clone();
        bad.rhs = RhsSpec::Gadget {
            streams: vec![vec![0, 1]],
            cell_budget: 16,
        };
        assert!(matches!(
            bad.to_instance(),
            Err(IoError::Gadget(GadgetError::DomainViolation { stream: 0 }))
        ));
        let empty = InstanceFile::gadget(&[], 16);
        assert!(empty.to_instance().is_ok());
    }
}
