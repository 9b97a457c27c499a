//! Subcommand implementations and report rendering.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use untwist_core::bounds::bounds_report;
use untwist_core::correction::{m_table, mod2_representatives};
use untwist_core::diagram::{
    checkerboard, definite_coloring, goeritz_matrix, Coloring, KnotDiagram,
};
use untwist_core::error::Error;
use untwist_core::form::certify_definiteness;
use untwist_core::jsonio::{
    bigint_to_value, bounds_to_value, form_to_value, mod2_map_to_value, report_to_value,
    table_to_value, value_to_matrix, value_to_record,
};
use untwist_core::obstruct::{obstruct_tu_one, Sign};
use untwist_core::record::KnotRecord;

use crate::{Cli, Command, Format};

type Result<T> = std::result::Result<T, Box<dyn std::error::Error>>;

pub fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Goeritz { mirror, coloring } => cmd_goeritz(cli, *mirror, coloring),
        Command::Dinv { mod2 } => cmd_dinv(cli, *mod2),
        Command::Obstruct { sign } => cmd_obstruct(cli, sign),
        Command::Bounds { q } => cmd_bounds(cli, q),
        Command::Ingest => cmd_ingest(cli),
    }
}

fn read_input(cli: &Cli) -> Result<(String, String)> {
    let path = cli.input.as_ref().ok_or("no --input file given")?;
    let text = fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
    Ok((text, path.display().to_string()))
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    if cli.output == "stdout" {
        println!("{text}");
    } else {
        fs::write(Path::new(&cli.output), format!("{text}\n"))
            .map_err(|e| format!("writing {}: {e}", cli.output))?;
    }
    Ok(())
}

/// Wrap per-knot payloads in a reproducible run manifest.
fn manifest(input_path: &str, command: &str, options: Value, reports: Vec<Value>) -> Value {
    json!({
        "command": command,
        "input": input_path,
        "options": options,
        "version": crate::VERSION,
        "reports": reports,
    })
}

fn parse_records(text: &str) -> Result<Vec<KnotRecord>> {
    let value: Value = serde_json::from_str(text)?;
    match &value {
        Value::Array(items) => items
            .iter()
            .map(|v| value_to_record(v).map_err(Into::into))
            .collect(),
        Value::Object(_) => Ok(vec![value_to_record(&value)?]),
        _ => Err("input must be a knot record or an array of records".into()),
    }
}

fn coloring_by_flag(d: &KnotDiagram, flag: &str) -> Result<Coloring> {
    match flag {
        "auto" => Ok(definite_coloring(d)?),
        "0" | "1" => {
            let (c0, c1) = checkerboard(d)?;
            Ok(if flag == "0" { c0 } else { c1 })
        }
        other => Err(format!("--coloring must be auto, 0, or 1 (got {other})").into()),
    }
}

fn cmd_goeritz(cli: &Cli, mirror: bool, coloring_flag: &str) -> Result<i32> {
    let (text, input_path) = read_input(cli)?;
    let records = parse_records(&text)?;
    let mut reports = Vec::new();
    let mut failures = 0;
    for record in &records {
        let payload = (|| -> Result<Value> {
            let pd = record
                .pd
                .as_ref()
                .ok_or_else(|| Error::Validation(format!("record {} has no pd", record.name)))?;
            let d = if mirror { pd.mirror() } else { pd.clone() };
            let coloring = coloring_by_flag(&d, coloring_flag)?;
            let g = goeritz_matrix(&d, &coloring)?;
            Ok(json!({
                "knot": record.name,
                "mirror": mirror,
                "form": form_to_value(&g.form),
                "determinant": bigint_to_value(&untwist_core::diagram::determinant_from_goeritz(&g)),
                "coloring_class": g.class_index,
                "white_regions": g.white_regions,
                "deleted_region_min_edge": g.deleted_region_min_edge,
            }))
        })();
        match payload {
            Ok(v) => reports.push(v),
            Err(e) => {
                failures += 1;
                reports.push(json!({"knot": record.name, "error": e.to_string()}));
            }
        }
    }
    let out = manifest(
        &input_path,
        "goeritz",
        json!({"mirror": mirror, "coloring": coloring_flag}),
        reports,
    );
    render(cli, &out)?;
    Ok(if failures > 0 { 2 } else { 0 })
}

fn cmd_dinv(cli: &Cli, mod2: bool) -> Result<i32> {
    let (text, input_path) = read_input(cli)?;
    let value: Value = serde_json::from_str(&text)?;
    // a bare matrix, a knot record, or an array of records
    let forms: Vec<(String, untwist_core::form::SymmetricForm)> = match &value {
        Value::Array(items) if items.first().is_some_and(Value::is_array) => {
            let m = value_to_matrix(&value)?;
            vec![("matrix".to_string(), certify_definiteness(m)?)]
        }
        _ => {
            let records = parse_records(&text)?;
            let mut out = Vec::new();
            for r in &records {
                let form = if let Some(g) = &r.goeritz {
                    certify_definiteness(g.clone())?
                } else if let Some(pd) = &r.pd {
                    let coloring = definite_coloring(pd)?;
                    goeritz_matrix(pd, &coloring)?.form
                } else {
                    return Err(Error::Validation(format!(
                        "record {} has neither goeritz nor pd",
                        r.name
                    ))
                    .into());
                };
                out.push((r.name.clone(), form));
            }
            out
        }
    };
    let mut reports = Vec::new();
    for (name, form) in &forms {
        let table = m_table(form)?;
        let table_value = if mod2 {
            mod2_map_to_value(&table, &mod2_representatives(&table))
        } else {
            table_to_value(&table)
        };
        reports.push(json!({
            "knot": name,
            "mod2": mod2,
            "table": table_value,
        }));
    }
    let out = manifest(&input_path, "dinv", json!({"mod2": mod2}), reports);
    render(cli, &out)?;
    Ok(0)
}

fn parse_sign(s: &str) -> Result<Vec<Sign>> {
    match s {
        "+" | "+1" | "plus" => Ok(vec![Sign::Plus]),
        "-" | "-1" | "minus" => Ok(vec![Sign::Minus]),
        "both" => Ok(vec![Sign::Plus, Sign::Minus]),
        other => Err(format!("--sign must be +, -, or both (got {other})").into()),
    }
}

fn cmd_obstruct(cli: &Cli, sign_flag: &str) -> Result<i32> {
    let signs = parse_sign(sign_flag)?;
    let (text, input_path) = read_input(cli)?;
    let records = parse_records(&text)?;
    let mut reports = Vec::new();
    let mut failures = 0;
    for record in &records {
        for &sign in &signs {
            match obstruct_tu_one(record, sign, cli.budget) {
                Ok(report) => reports.push(report_to_value(&report)),
                Err(e) => {
                    failures += 1;
                    reports.push(json!({
                        "knot": record.name,
                        "sign": sign.to_string(),
                        "error": e.to_string(),
                    }));
                }
            }
        }
    }
    let out = manifest(
        &input_path,
        "obstruct",
        json!({"sign": sign_flag, "budget": cli.budget}),
        reports,
    );
    render(cli, &out)?;
    Ok(if failures > 0 { 2 } else { 0 })
}

fn parse_q_range(q: &str) -> Result<Vec<i64>> {
    if let Some((a, b)) = q.split_once("..") {
        let lo: i64 = a.trim().parse()?;
        let hi: i64 = b.trim().trim_start_matches('=').parse()?;
        if lo < 1 || hi < lo {
            return Err(format!("bad q range {q}").into());
        }
        Ok((lo..=hi).collect())
    } else {
        let v: i64 = q.trim().parse()?;
        if v < 1 {
            return Err(format!("q must be positive (got {v})").into());
        }
        Ok(vec![v])
    }
}

fn cmd_bounds(cli: &Cli, q_flag: &str) -> Result<i32> {
    let qs = parse_q_range(q_flag)?;
    let (text, input_path) = read_input(cli)?;
    let records = parse_records(&text)?;
    let mut reports = Vec::new();
    let mut failures = 0;
    for record in &records {
        for &q in &qs {
            match bounds_report(&record.name, record.tau, record.s, q) {
                Ok(b) => reports.push(bounds_to_value(&b)),
                Err(e) => {
                    failures += 1;
                    reports.push(json!({
                        "knot": record.name,
                        "q": q,
                        "error": e.to_string(),
                    }));
                }
            }
        }
    }
    let out = manifest(&input_path, "bounds", json!({"q": q_flag}), reports);
    render(cli, &out)?;
    Ok(if failures > 0 { 2 } else { 0 })
}

fn cmd_ingest(cli: &Cli) -> Result<i32> {
    let (text, input_path) = read_input(cli)?;
    let ingested = crate::ingest::ingest_table(&text);
    let mut reports = Vec::new();
    let mut failures = 0;
    for row in ingested {
        match row {
            Ok(record) => {
                reports.push(json!({
                    "record": untwist_core::jsonio::record_to_value(&record),
                    "status": "ok",
                }));
            }
            Err((line, message)) => {
                failures += 1;
                reports.push(json!({
                    "line": line,
                    "error": message,
                    "status": "error",
                }));
            }
        }
    }
    let out = manifest(&input_path, "ingest", json!({}), reports);
    render(cli, &out)?;
    Ok(if failures > 0 { 2 } else { 0 })
}

fn render(cli: &Cli, manifest: &Value) -> Result<()> {
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(manifest)?,
        Format::Table => render_table(manifest),
    };
    emit(cli, &text)
}

/// Plain-text rendering of a run manifest.
fn render_table(manifest: &Value) -> String {
    let mut out = String::new();
    let command = manifest["command"].as_str().unwrap_or("?");
    let _ = writeln!(out, "# untwist {command} (v{})", crate::VERSION);
    for report in manifest["reports"].as_array().into_iter().flatten() {
        if let Some(err) = report.get("error") {
            let knot = report.get("knot").and_then(Value::as_str).unwrap_or("-");
            let message = err
                .as_str()
                .map(str::to_string)
                .unwrap_or_else(|| err.to_string());
            let _ = writeln!(out, "{knot}\tERROR\t{message}");
            continue;
        }
        match command {
            "goeritz" => {
                let _ = writeln!(
                    out,
                    "{}\tdet {}\trank {}",
                    report["knot"].as_str().unwrap_or("-"),
                    report["determinant"],
                    report["form"]["rank"],
                );
                let _ = writeln!(out, "{}", report["form"]["entries"]);
            }
            "dinv" => {
                let _ = writeln!(
                    out,
                    "{}\tgroup {}\t{} values{}",
                    report["knot"].as_str().unwrap_or("-"),
                    report["table"]["group"],
                    report["table"]["values"].as_array().map_or(0, Vec::len),
                    if report["mod2"].as_bool().unwrap_or(false) {
                        " (mod 2)"
                    } else {
                        ""
                    },
                );
                let values: Vec<String> = report["table"]["values"]
                    .as_array()
                    .into_iter()
                    .flatten()
                    .map(|v| v["m"].as_str().unwrap_or("?").to_string())
                    .collect();
                let _ = writeln!(out, "{}", values.join(" "));
            }
            "obstruct" => {
                let verdict = report["verdict"].as_str().unwrap_or("?");
                let mut line = format!(
                    "{}\tsign {}\tdet {}\t{}",
                    report["knot"].as_str().unwrap_or("-"),
                    report["sign"].as_str().unwrap_or("?"),
                    report["determinant"],
                    verdict,
                );
                if let Some(w) = report.get("witness") {
                    if let Some(u) = w.get("unit_multiplier") {
                        let _ = write!(line, "\twitness: multiplier {u}");
                    } else {
                        let _ = write!(line, "\twitness: {}", w["generator_images"]);
                    }
                }
                if let Some(r) = report.get("refutation") {
                    let _ = write!(line, "\t{}", r["summary"].as_str().unwrap_or("?"));
                }
                let _ = writeln!(out, "{line}");
            }
            "bounds" => {
                let _ = writeln!(
                    out,
                    "{}\tq {}\ttau {}\ts {}\tbest {}",
                    report["knot"].as_str().unwrap_or("-"),
                    report["q"],
                    report.get("tau_bound").unwrap_or(&Value::Null),
                    report.get("s_bound").unwrap_or(&Value::Null),
                    report["best"],
                );
            }
            "ingest" => {
                let name = report["record"]["name"].as_str().unwrap_or("-");
                let _ = writeln!(out, "{name}\tok");
            }
            _ => {
                let _ = writeln!(out, "{report}");
            }
        }
    }
    out.trim_end().to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_range_parsing() {
        assert_eq!(parse_q_range("3").unwrap(), vec![3]);
        assert_eq!(parse_q_range("1..3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_q_range("2..=4").unwrap(), vec![2, 3, 4]);
        assert!(parse_q_range("0").is_err());
        assert!(parse_q_range("5..2").is_err());
    }

    #[test]
    fn sign_parsing() {
        assert_eq!(parse_sign("+").unwrap(), vec![Sign::Plus]);
        assert_eq!(parse_sign("-1").unwrap(), vec![Sign::Minus]);
        assert_eq!(parse_sign("both").unwrap(), vec![Sign::Plus, Sign::Minus]);
        assert!(parse_sign("maybe").is_err());
    }

    #[test]
    fn verdict_is_not_an_error() {
        use untwist_core::obstruct::Verdict;
        assert_eq!(Verdict::Obstructed.to_string(), "obstructed");
    }
}
