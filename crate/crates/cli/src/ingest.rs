//! CSV knot-table ingestion.
//!
//! Expected header columns (KnotInfo naming): name, pd_notation, signature,
//! determinant, ozsvath_szabo_tau, rasmussen_invariant. Only name and
//! signature are mandatory per row; rows that fail validation are reported
//! with their line number, never silently dropped.

use num_bigint::BigInt;
use std::str::FromStr;

use untwist_core::diagram::parse_pd;
use untwist_core::record::KnotRecord;

/// Per-row outcome: a validated record or (line number, message).
pub type RowResult = std::result::Result<KnotRecord, (u64, String)>;

pub fn ingest_table(text: &str) -> Vec<RowResult> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());

    let headers = match reader.headers() {
        Ok(h) => h.clone(),
        Err(e) => return vec![Err((1, format!("bad CSV header: {e}")))],
    };
    let col = |name: &str| headers.iter().position(|h| h.eq_ignore_ascii_case(name));
    let name_col = col("name");
    let pd_col = col("pd_notation");
    let sig_col = col("signature");
    let det_col = col("determinant");
    let tau_col = col("ozsvath_szabo_tau");
    let s_col = col("rasmussen_invariant");

    let mut out = Vec::new();
    if name_col.is_none() || sig_col.is_none() {
        out.push(Err((1, "CSV needs name and signature columns".into())));
        return out;
    }

    for row in reader.records() {
        let record = match row {
            Ok(r) => r,
            Err(e) => {
                let line = e.position().map_or(0, csv::Position::line);
                out.push(Err((line, format!("unreadable row: {e}"))));
                continue;
            }
        };
        let line = record.position().map_or(0, csv::Position::line);
        let cell = |idx: Option<usize>| -> Option<&str> {
            idx.and_then(|i| record.get(i)).filter(|s| !s.is_empty())
        };
        let parsed = (|| -> Result<KnotRecord, String> {
            let name = cell(name_col).ok_or("missing name")?.to_string();
            let signature: i64 = cell(sig_col)
                .ok_or("missing signature")?
                .parse()
                .map_err(|e| format!("bad signature: {e}"))?;
            let mut rec = KnotRecord::named(&name, signature);
            if let Some(pd_text) = cell(pd_col) {
                rec.pd = Some(parse_pd(pd_text).map_err(|e| format!("bad pd_notation: {e}"))?);
            }
            if let Some(det) = cell(det_col) {
                rec.determinant =
                    Some(BigInt::from_str(det).map_err(|e| format!("bad determinant: {e}"))?);
            }
            if let Some(tau) = cell(tau_col) {
                rec.tau = Some(tau.parse().map_err(|e| format!("bad tau: {e}"))?);
            }
            if let Some(s) = cell(s_col) {
                rec.s = Some(s.parse().map_err(|e| format!("bad s: {e}"))?);
            }
            rec.validate().map_err(|e| e.to_string())?;
            rec.cross_check_determinant().map_err(|e| e.to_string())?;
            Ok(rec)
        })();
        out.push(parsed.map_err(|msg| (line, msg)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str =
        "name,pd_notation,signature,determinant,ozsvath_szabo_tau,rasmussen_invariant\n";

    #[test]
    fn valid_rows_become_records() {
        let csv = format!("{HEADER}4_1,X(1,7,2,6) X(5,3,6,2) X(3,8,4,1) X(7,4,8,5),0,5,0,0\n");
        // commas inside the pd cell must be quoted; use the quoted form
        let csv = csv.replace(
            "X(1,7,2,6) X(5,3,6,2) X(3,8,4,1) X(7,4,8,5)",
            "\"X(1,7,2,6) X(5,3,6,2) X(3,8,4,1) X(7,4,8,5)\"",
        );
        let rows = ingest_table(&csv);
        assert_eq!(rows.len(), 1);
        let rec = rows[0].as_ref().unwrap();
        assert_eq!(rec.name, "4_1");
        assert_eq!(rec.determinant, Some(BigInt::from(5)));
        assert_eq!(rec.tau, Some(0));
    }

    #[test]
    fn determinant_cross_check_failure_is_reported() {
        let csv = format!("{HEADER}4_1,\"X(1,7,2,6) X(5,3,6,2) X(3,8,4,1) X(7,4,8,5)\",0,7,,\n");
        let rows = ingest_table(&csv);
        assert_eq!(rows.len(), 1);
        let (line, msg) = rows[0].as_ref().unwrap_err();
        assert_eq!(*line, 2);
        assert!(msg.contains("cross-check"), "{msg}");
    }

    #[test]
    fn malformed_pd_is_a_row_error_not_a_crash() {
        let csv = format!("{HEADER}bad,\"X(1,2,3)\",0,,,\n good,,0,,3,\n");
        let rows = ingest_table(&csv);
        assert_eq!(rows.len(), 2);
        assert!(rows[0].is_err());
        let rec = rows[1].as_ref().unwrap();
        assert_eq!(rec.name, "good");
        assert_eq!(rec.tau, Some(3));
    }

    #[test]
    fn missing_columns_reported() {
        let rows = ingest_table("name,foo\nx,1\n");
        assert_eq!(rows.len(), 1);
        assert!(rows[0].is_err());
    }

    #[test]
    fn odd_s_rejected_per_row() {
        let csv = format!("{HEADER}weird,,0,,,3\n");
        let rows = ingest_table(&csv);
        assert!(rows[0].is_err());
    }
}
