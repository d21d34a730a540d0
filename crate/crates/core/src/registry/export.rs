//! Catalog export as JSON Lines: one record per line, expressions in their
//! canonical printed form.

use super::record::IdentityRecord;

pub fn export_catalog(records: &[IdentityRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

pub fn import_catalog(text: &str) -> Result<Vec<IdentityRecord>, serde_json::Error> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(serde_json::from_str)
        .collect()
}
