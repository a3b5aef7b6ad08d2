//! JSON documents printed under `--json`. Expressions are canonical strings;
//! big integers are plain JSON numbers of arbitrary size.

use serde::{Deserialize, Serialize};
use serde_json::Number;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ErrorDoc {
    pub error: String,
    pub message: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct WalkSeed {
    pub position: i64,
    pub cluster: [String; 2],
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Walk {
    pub m: u32,
    pub n: u32,
    pub word: String,
    pub seeds: Vec<WalkSeed>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct MActions {
    pub m: u32,
    pub n: u32,
    pub word: String,
    /// `P_0 = (x1, x2)` followed by one pair per letter.
    pub pairs: Vec<[String; 2]>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Equivalence {
    pub m: u32,
    pub n: u32,
    pub k_min: usize,
    pub k_max: usize,
    /// Number of evaluation points, absent for the symbolic check.
    pub points: Option<u32>,
    pub holds: bool,
    pub checked: usize,
    pub counterexample: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Clusters {
    pub m: u32,
    pub n: u32,
    pub period: Option<usize>,
    pub clusters: Vec<[String; 2]>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct DEntry {
    pub position: i64,
    /// `[[d1, d2] of x1, [d1, d2] of x2]`.
    pub dvectors: [[Number; 2]; 2],
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct DTable {
    pub m: u32,
    pub n: u32,
    pub table: Vec<DEntry>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct DCheck {
    pub m: u32,
    pub n: u32,
    pub mode: String,
    pub k_max: usize,
    pub holds: bool,
    /// First position where the recurrence and the engine disagree.
    pub mismatch: Option<i64>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Classification {
    pub m: u32,
    pub n: u32,
    #[serde(rename = "type")]
    pub kind: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Verification {
    pub m: u32,
    pub n: u32,
    pub expr: String,
    pub invariant: bool,
    pub degree_condition: Option<bool>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Construction {
    pub m: u32,
    pub n: u32,
    pub f: String,
    pub phi: String,
    pub clusters: usize,
    pub value: String,
    /// `invariant`, `constant` or `not_invariant`.
    pub kind: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Frame {
    pub s: u32,
    pub t: u32,
    pub dimension: usize,
    pub basis: Vec<String>,
    pub degree_condition: Vec<bool>,
    pub contains: Option<bool>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Search {
    pub m: u32,
    pub n: u32,
    pub frames: Vec<Frame>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub expr: String,
    pub variables: Vec<String>,
    pub g: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Solution {
    pub pair: [Number; 2],
    pub word: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Orbit {
    pub m: u32,
    pub n: u32,
    pub invariant: String,
    pub level: String,
    pub bound: u64,
    pub closed: bool,
    pub solutions: Vec<Solution>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct BruteForce {
    pub m: u32,
    pub n: u32,
    pub invariant: String,
    pub level: String,
    pub bound: u64,
    pub solutions: Vec<[u64; 2]>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Certificate {
    pub invariant: String,
    pub level: String,
    pub bound: u64,
    pub holds: bool,
    pub orbit: usize,
    pub brute_force: usize,
    pub missing: Vec<[u64; 2]>,
    pub unexpected: Vec<[Number; 2]>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct DescentStep {
    pub pair: [Number; 2],
    /// `above` (a > b^2) or `below` (a < b^2).
    pub case: String,
    pub a_prime: Number,
    pub b_prime: Number,
    pub first: bool,
    pub second: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Descent {
    pub bound: u64,
    pub holds: bool,
    pub steps: Vec<DescentStep>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Imr {
    pub matrix: Vec<Vec<i64>>,
    pub depth: usize,
    pub holds: bool,
    pub reached: usize,
    pub closed: bool,
    pub witness: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Mutated {
    pub matrix: Vec<Vec<i64>>,
    pub k: usize,
    pub result: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ExprValue {
    pub op: String,
    pub value: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ExprEqual {
    pub op: String,
    pub equal: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ExprNormal {
    pub op: String,
    pub numerator: String,
    pub d: [i64; 2],
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Violation {
    pub position: i64,
    pub variable: u8,
    pub constant: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ConstantTerms {
    pub m: u32,
    pub n: u32,
    pub length: usize,
    pub holds: bool,
    pub violation: Option<Violation>,
}
