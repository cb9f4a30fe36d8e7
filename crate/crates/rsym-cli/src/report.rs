//! Machine-readable reports. Rationals are written as `"n/d"` strings.

use std::fmt;
use std::str::FromStr;

use rsym::solver::{BoundPart, Linear};
use rsym::verifier::Failure;
use rsym::{DehnBoundReport, Presentation, Rat, Verifier};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational that serializes as `"n/d"`, or `"n"` when integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Frac(pub Rat);

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Frac {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        s.parse::<Rat>().map(Frac).map_err(|_| format!("not an exact fraction: {s:?}"))
    }
}

impl Serialize for Frac {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Frac {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Verified,
    Fail,
    /// The presentation needs interleaving, which the verifier does not handle.
    Unsupported,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverStatus {
    PlainVerified,
    TrivintVerified,
    Unverified,
}

impl fmt::Display for SolverStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverStatus::PlainVerified => "plain-verified",
            SolverStatus::TrivintVerified => "trivint-verified",
            SolverStatus::Unverified => "unverified",
        })
    }
}

/// `slope · n − offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearBound {
    pub slope: Frac,
    pub offset: Frac,
}

impl From<Linear> for LinearBound {
    fn from(l: Linear) -> Self {
        LinearBound { slope: Frac(l.slope), offset: Frac(l.offset) }
    }
}

impl fmt::Display for LinearBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let slope = if self.slope.0.is_integer() { format!("{}", self.slope) } else { format!("({})", self.slope) };
        let zero = Rat::from_integer(0);
        match self.offset.0.cmp(&zero) {
            std::cmp::Ordering::Equal => write!(f, "{slope}n"),
            std::cmp::Ordering::Greater => write!(f, "{slope}n - {}", self.offset),
            std::cmp::Ordering::Less => write!(f, "{slope}n + {}", Frac(-self.offset.0)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// `general`, `empty-vp` or `untwisted`.
    pub part: String,
    pub r: usize,
    pub r_i: usize,
    pub f: LinearBound,
    pub pd_rsym: LinearBound,
    pub pd_solver: Option<LinearBound>,
    pub dehn: LinearBound,
    pub lambda0: Frac,
    pub lambda: Frac,
    pub r_gamma: usize,
    pub gamma: Frac,
}

impl From<&DehnBoundReport> for Bounds {
    fn from(b: &DehnBoundReport) -> Self {
        let part = match b.part {
            BoundPart::General => "general",
            BoundPart::EmptyVp => "empty-vp",
            BoundPart::Untwisted => "untwisted",
        };
        Bounds {
            part: part.to_string(),
            r: b.r,
            r_i: b.r_i,
            f: b.f.into(),
            pd_rsym: b.pd_rsym.into(),
            pd_solver: b.pd_solver.map(Into::into),
            dehn: b.dehn.into(),
            lambda0: Frac(b.lambda0),
            lambda: Frac(b.lambda),
            r_gamma: b.r_gamma,
            gamma: Frac(b.gamma),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrailLine {
    pub place: String,
    pub step_len: usize,
    pub chi: Frac,
    pub psi: Frac,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureReport {
    pub relator: String,
    pub start_place: String,
    /// The failing decomposition, one step per line of the search list.
    pub trail: Vec<TrailLine>,
    pub list_size: usize,
}

impl FailureReport {
    pub fn new(v: &Verifier, pres: &Presentation, f: &Failure) -> Self {
        FailureReport {
            relator: format!("R{} = {}", f.relator + 1, pres.format_word(&pres.signed_relators()[f.relator])),
            start_place: v.describe_place(f.start),
            trail: f
                .trail
                .iter()
                .map(|s| TrailLine { place: v.describe_place(s.to), step_len: s.step_len, chi: Frac(s.chi), psi: Frac(s.psi) })
                .collect(),
            list_size: f.list.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub presentation: String,
    pub outcome: Outcome,
    pub epsilon: Frac,
    pub untwisted: bool,
    /// Wall-clock milliseconds, recorded only on request so that reports stay reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolverStatus>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Bounds>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<FailureReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialLine {
    pub relators: Vec<String>,
    /// `verified`, `failed` or `skipped: <reason>`.
    pub outcome: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub preset: String,
    pub seed: u64,
    pub epsilon: Frac,
    pub trials: Vec<TrialLine>,
    pub verified: usize,
}
