//! Serializable records for JSON output and their TSV counterparts.

use serde::Serialize;
use serde_json::Value;

/// One construction result.
#[derive(Serialize, Debug)]
pub struct ConstructionRecord {
    pub k: u32,
    pub construction: &'static str,
    pub params: Value,
    pub p_size: Option<usize>,
    pub s_size: Option<usize>,
    pub coefficient: String,
    pub offset: u32,
}

impl ConstructionRecord {
    pub const TSV_HEADER: &'static str = "k\tconstruction\tparams\tp_size\ts_size\tcoefficient\toffset\n";

    pub fn tsv_row(&self) -> String {
        let params = match &self.params {
            Value::Object(map) => map
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(","),
            other => other.to_string(),
        };
        let opt = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            self.k,
            self.construction,
            params,
            opt(self.p_size),
            opt(self.s_size),
            self.coefficient,
            self.offset
        )
    }
}

pub fn records_tsv(records: &[ConstructionRecord]) -> String {
    let mut out = String::from(ConstructionRecord::TSV_HEADER);
    for r in records {
        out.push_str(&r.tsv_row());
    }
    out
}

/// Pretty JSON followed by a newline.
pub fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

/// `key<TAB>value` lines.
pub fn key_values(pairs: &[(&str, String)]) -> String {
    pairs.iter().map(|(k, v)| format!("{k}\t{v}\n")).collect()
}
