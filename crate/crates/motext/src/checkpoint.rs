//! Resolution checkpoints.
//!
//! A checkpoint is two lines of JSON. The first is a header
//! `{"format":"motext-resolution","version":1,"sha256":"…"}`; the second is
//! the payload, whose SHA-256 (hex, over the exact bytes of the line without
//! its newline) is recorded in the header. The payload holds the algebra,
//! the computed rectangle, and for each stage the generators in order, each
//! as its internal degree, weight and boundary `[[generator, milnor_seq], …]`.
//! Serialization is canonical, so identical runs give identical files.

use std::path::Path;

use motext_core::resolution::GeneratorRecord;
use motext_core::{AlgebraSpec, Resolution};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{MotextError, Result};

pub const FORMAT: &str = "motext-resolution";
pub const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
    sha256: String,
}

#[derive(Serialize, Deserialize)]
struct Payload {
    algebra: String,
    max_s: u32,
    max_t: u32,
    stages: Vec<Vec<Record>>,
}

#[derive(Serialize, Deserialize)]
struct Record {
    t: u32,
    w: i32,
    d: Vec<(u32, Vec<u32>)>,
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn malformed(e: serde_json::Error) -> MotextError {
    MotextError::Malformed(e.to_string())
}

pub fn to_string(res: &Resolution) -> String {
    let (max_s, max_t) = res.range().unwrap_or((0, 0));
    let stages = if res.range().is_some() {
        (0..=max_s)
            .map(|s| {
                res.records(s)
                    .into_iter()
                    .map(|r| Record {
                        t: r.t,
                        w: r.weight,
                        d: r.diff,
                    })
                    .collect()
            })
            .collect()
    } else {
        Vec::new()
    };
    let payload = Payload {
        algebra: res.spec().name(),
        max_s,
        max_t,
        stages,
    };
    let body = serde_json::to_string(&payload).expect("payload serializes");
    let header = Header {
        format: FORMAT.to_string(),
        version: VERSION,
        sha256: digest(body.as_bytes()),
    };
    format!("{}\n{body}\n", serde_json::to_string(&header).expect("header serializes"))
}

pub fn from_str(text: &str) -> Result<Resolution> {
    let mut lines = text.lines();
    let header: Header = serde_json::from_str(lines.next().unwrap_or("")).map_err(malformed)?;
    if header.format != FORMAT || header.version != VERSION {
        return Err(MotextError::Version {
            format: header.format,
            version: header.version,
        });
    }
    let body = lines
        .next()
        .ok_or_else(|| MotextError::Malformed("missing payload line".into()))?;
    let actual = digest(body.as_bytes());
    if actual != header.sha256 {
        return Err(MotextError::Checksum {
            expected: header.sha256,
            actual,
        });
    }
    let payload: Payload = serde_json::from_str(body).map_err(malformed)?;
    let spec = AlgebraSpec::parse(&payload.algebra)
        .ok_or_else(|| MotextError::Malformed(format!("unknown algebra {}", payload.algebra)))?;
    if payload.stages.is_empty() {
        return Ok(Resolution::new(spec));
    }
    let stages = payload
        .stages
        .into_iter()
        .map(|st| {
            st.into_iter()
                .map(|r| GeneratorRecord {
                    t: r.t,
                    weight: r.w,
                    diff: r.d,
                })
                .collect()
        })
        .collect();
    Ok(Resolution::from_records(spec, payload.max_s, payload.max_t, stages)?)
}

pub fn save(res: &Resolution, path: &Path) -> Result<()> {
    std::fs::write(path, to_string(res)).map_err(|e| MotextError::io(path, e))
}

pub fn load(path: &Path) -> Result<Resolution> {
    let text = std::fs::read_to_string(path).map_err(|e| MotextError::io(path, e))?;
    from_str(&text)
}
