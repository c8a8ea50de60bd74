//! Machine-readable reports. Counts are decimal strings because they
//! outgrow 64-bit integers quickly; JSON serialization is stable enough
//! that parsing a report and re-emitting it is byte-identical.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub h: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodResult {
    pub method: String,
    pub value: String,
    pub duration_us: u64,
}

/// One row of the per-shape breakdown: the skew shape encoded by a
/// composition together with its tableau count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeCount {
    pub composition: Vec<usize>,
    pub shape: minperm::SkewShape,
    pub count: String,
}

/// Result of a `count` run: one entry per requested method plus the
/// agreement verdict. The process exit status is 0 exactly when `agree`
/// is true.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: Parameters,
    pub results: Vec<MethodResult>,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub shapes: Option<Vec<ShapeCount>>,
}

impl RunReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("method,value,agree,duration_us\n");
        for result in &self.results {
            out.push_str(&format!(
                "{},{},{},{}\n",
                result.method, result.value, self.agree, result.duration_us
            ));
        }
        out
    }
}

/// True iff every requested method returned the same value.
pub fn all_agree(results: &[MethodResult]) -> bool {
    results.windows(2).all(|pair| pair[0].value == pair[1].value)
}


#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub d: usize,
    pub count: String,
}

/// Result of a `table` run: one row per descent count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub command: String,
    pub k: String,
    pub h: usize,
    pub max_d: usize,
    pub rows: Vec<TableRow>,
    pub duration_us: u64,
}

impl TableReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("d,count\n");
        for row in &self.rows {
            out.push_str(&format!("{},{}\n", row.d, row.count));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
    pub duration_us: u64,
}

/// Result of a `verify` run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub command: String,
    pub suite: String,
    pub checks: Vec<CheckReport>,
    pub passed: bool,
    pub duration_us: u64,
}
