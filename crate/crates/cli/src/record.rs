//! The structured record every command produces. Table and CSV output are
//! renderings of it; JSON output is its serialization.

use pinsurf_core::census::Provenance;
use pinsurf_core::verify::VerifyReport;
use pinsurf_core::SurfaceKind;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    /// The invocation, without the program name.
    pub command: String,
    pub surface: Option<SurfaceKind>,
    pub payload: Payload,
    /// Provenance markers such as `DISPUTED` and the disputes behind them.
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Census {
        theory: String,
        modulus: u8,
        rows: Vec<CensusRow>,
    },
    Invariant {
        theory: String,
        name: String,
        value: u8,
        values: Vec<u8>,
        histogram: Option<[u64; 4]>,
    },
    Orbits {
        theory: String,
        method: String,
        orbits: Vec<OrbitRow>,
        verdict: Verdict,
    },
    Verify {
        report: VerifyReport,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub value: u8,
    pub count: u64,
    /// The remaining columns are only filled in with `--compare`.
    pub printed: Option<u64>,
    pub corrected: Option<u64>,
    pub recursion: Option<u64>,
    pub status: Option<Provenance>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRow {
    pub size: usize,
    pub invariant: u8,
    /// Bit encodings of the members: refinement values or enhancement
    /// choices.
    pub members: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// Orbits and invariant level sets coincide.
    Pass,
    /// Some orbit mixes invariant values.
    Fail,
    /// Orbits are invariant-constant but split a level set.
    Deficient,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Deficient => "DEFICIENT",
        }
    }
}
