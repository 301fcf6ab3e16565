//! File formats: rule, certificate and report JSON schemas, plus
//! space-time images (PBM for binary alphabets, PGM otherwise), PPM
//! renderings of 2D grids, plain-text grids and trajectory CSV.
//!
//! All writers are deterministic: fixed field order, no timestamps.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::CyclicConfig;
use crate::grid2d::{AntCell, Arrow, BilliardCell, Mark, TorusGrid};
use crate::involution::SearchReport;
use crate::rule::{Alphabet, LocalRule1D, Neighborhood, RuleError, State};
use crate::symmetry::{SymmetryCertificate, VerificationRoute};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid rule file: {0}")]
    InvalidRule(#[from] RuleError),
    #[error("invalid file: {0}")]
    Malformed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// The on-disk rule schema: `{"alphabet": m, "offsets": [...],
/// "table": [...]}` with the table indexed by the lexicographic rank of
/// the neighbor tuple in offset order, smallest offset most significant.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RuleFile {
    pub alphabet: usize,
    pub offsets: Vec<i32>,
    pub table: Vec<State>,
}

impl From<&LocalRule1D> for RuleFile {
    fn from(rule: &LocalRule1D) -> Self {
        RuleFile {
            alphabet: rule.alphabet().size(),
            offsets: rule.neighborhood().offsets().to_vec(),
            table: rule.table().to_vec(),
        }
    }
}

impl TryFrom<&RuleFile> for LocalRule1D {
    type Error = RuleError;

    fn try_from(file: &RuleFile) -> Result<Self, RuleError> {
        LocalRule1D::new(
            Alphabet::new(file.alphabet)?,
            Neighborhood::new(file.offsets.clone())?,
            file.table.clone(),
        )
    }
}

pub fn rule_to_json(rule: &LocalRule1D) -> String {
    serde_json::to_string_pretty(&RuleFile::from(rule)).expect("rule serializes")
}

pub fn rule_from_json(text: &str) -> Result<LocalRule1D, IoError> {
    let file: RuleFile = serde_json::from_str(text)?;
    Ok(LocalRule1D::try_from(&file)?)
}

/// Which checks a certificate bundle claims were run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateVerification {
    pub h_involution: bool,
    pub g_involution: bool,
    pub composition: bool,
    /// Route: "direct" with the inverse-search span, or "power" with the
    /// exponent whose identity replaced the wide square.
    pub route: String,
}

/// The certificate bundle `{F, H, G, verification}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateFile {
    #[serde(rename = "F")]
    pub f: RuleFile,
    #[serde(rename = "H")]
    pub h: RuleFile,
    #[serde(rename = "G")]
    pub g: RuleFile,
    pub verification: CertificateVerification,
}

impl From<&SymmetryCertificate> for CertificateFile {
    fn from(cert: &SymmetryCertificate) -> Self {
        let route = match cert.route() {
            VerificationRoute::Direct { inverse_span } => {
                format!("direct(inverse_span={inverse_span})")
            }
            VerificationRoute::PowerIdentity { exponent } => {
                format!("power(exponent={exponent})")
            }
        };
        CertificateFile {
            f: cert.f().into(),
            h: cert.h().into(),
            g: cert.g().into(),
            verification: CertificateVerification {
                h_involution: true,
                g_involution: true,
                composition: true,
                route,
            },
        }
    }
}

pub fn certificate_to_json(cert: &SymmetryCertificate) -> String {
    serde_json::to_string_pretty(&CertificateFile::from(cert)).expect("certificate serializes")
}

/// Re-checks a certificate bundle from disk through the full
/// verification path.
pub fn certificate_from_json(text: &str) -> Result<SymmetryCertificate, IoError> {
    let file: CertificateFile = serde_json::from_str(text)?;
    let f = LocalRule1D::try_from(&file.f)?;
    let h = LocalRule1D::try_from(&file.h)?;
    let cert = crate::symmetry::verify_certificate(&f, &h)
        .map_err(|e| IoError::Malformed(format!("certificate does not verify: {e}")))?;
    let g = LocalRule1D::try_from(&file.g)?;
    if !cert
        .g()
        .equal(&g)
        .map_err(|e| IoError::Malformed(e.to_string()))?
    {
        return Err(IoError::Malformed("stored G differs from F∘H".to_string()));
    }
    Ok(cert)
}

/// The search report schema, rules inline in the rule-file schema.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportFile {
    pub found: Vec<RuleFile>,
    pub nodes: u64,
    pub word_conflicts: u64,
    pub hook_rejections: u64,
    pub exhausted: bool,
}

impl From<&SearchReport> for ReportFile {
    fn from(report: &SearchReport) -> Self {
        ReportFile {
            found: report.found.iter().map(RuleFile::from).collect(),
            nodes: report.nodes,
            word_conflicts: report.word_conflicts,
            hook_rejections: report.hook_rejections,
            exhausted: report.exhausted,
        }
    }
}

pub fn report_to_json(report: &SearchReport) -> String {
    serde_json::to_string_pretty(&ReportFile::from(report)).expect("report serializes")
}

/// Re-checks every found rule in a report file with the square test.
pub fn report_from_json(text: &str) -> Result<Vec<LocalRule1D>, IoError> {
    let file: ReportFile = serde_json::from_str(text)?;
    let mut rules = Vec::new();
    for rf in &file.found {
        let rule = LocalRule1D::try_from(rf)?;
        if !crate::involution::is_involution(&rule) {
            return Err(IoError::Malformed(format!(
                "report lists a non-involution with table {:?}",
                rule.table()
            )));
        }
        rules.push(rule);
    }
    Ok(rules)
}

/// Space-time diagram of a 1D orbit as PBM (binary alphabets) or PGM,
/// one row per time step, earliest on top. ASCII formats, so identical
/// inputs give identical bytes.
pub fn orbit_image(rows: &[CyclicConfig]) -> String {
    assert!(!rows.is_empty(), "empty orbit");
    let width = rows[0].len();
    let m = rows[0].alphabet().size();
    let mut out = String::new();
    if m == 2 {
        out.push_str(&format!("P1\n{} {}\n", width, rows.len()));
        for row in rows {
            let line: Vec<String> = row.cells().iter().map(|&s| s.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
    } else {
        out.push_str(&format!("P2\n{} {}\n{}\n", width, rows.len(), m - 1));
        for row in rows {
            let line: Vec<String> = row.cells().iter().map(|&s| s.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
    }
    out
}

/// Plain-text rendering of a 1D orbit: `.` for state 0, `#` for state 1,
/// digits beyond.
pub fn orbit_text(rows: &[CyclicConfig]) -> String {
    let mut out = String::new();
    for row in rows {
        for &s in row.cells() {
            out.push(match s {
                0 => '.',
                1 => '#',
                d => char::from_digit(d as u32 % 36, 36).unwrap_or('?'),
            });
        }
        out.push('\n');
    }
    out
}

fn ppm_header(width: usize, height: usize) -> String {
    format!("P3\n{width} {height}\n255\n")
}

/// Billiard palette: white/black cells tinted by arrow so the partition
/// phase is visible. Fixed table, documented here: white cells are light
/// with a hue per arrow, black cells dark with the same hue ordering.
pub fn billiard_ppm(grid: &TorusGrid<BilliardCell>) -> String {
    let mut out = ppm_header(grid.width(), grid.height());
    for (x, y) in grid.positions() {
        let c = grid.get(x, y);
        let rgb = match (c.black, c.arrow) {
            (false, Arrow::Ne) => (255, 244, 244),
            (false, Arrow::Se) => (244, 255, 244),
            (false, Arrow::Sw) => (244, 244, 255),
            (false, Arrow::Nw) => (255, 255, 244),
            (true, Arrow::Ne) => (64, 0, 0),
            (true, Arrow::Se) => (0, 64, 0),
            (true, Arrow::Sw) => (0, 0, 64),
            (true, Arrow::Nw) => (64, 64, 0),
        };
        out.push_str(&format!("{} {} {}\n", rgb.0, rgb.1, rgb.2));
    }
    out
}

/// Ant palette: empty cells white/black, the head red, the tail blue
/// (darker on black cells).
pub fn ant_ppm(grid: &TorusGrid<AntCell>) -> String {
    let mut out = ppm_header(grid.width(), grid.height());
    for (x, y) in grid.positions() {
        let c = grid.get(x, y);
        let rgb = match (c.mark, c.black) {
            (Mark::Empty, false) => (255, 255, 255),
            (Mark::Empty, true) => (0, 0, 0),
            (Mark::Head, false) => (255, 0, 0),
            (Mark::Head, true) => (128, 0, 0),
            (Mark::Tail, false) => (0, 0, 255),
            (Mark::Tail, true) => (0, 0, 128),
        };
        out.push_str(&format!("{} {} {}\n", rgb.0, rgb.1, rgb.2));
    }
    out
}

/// Plain-text ant grid: `.`/`#` empty white/black, `H`/`h` head on
/// white/black, `T`/`t` tail likewise.
pub fn ant_text(grid: &TorusGrid<AntCell>) -> String {
    let mut out = String::new();
    for y in 0..grid.height() as i64 {
        for x in 0..grid.width() as i64 {
            let c = grid.get(x, y);
            out.push(match (c.mark, c.black) {
                (Mark::Empty, false) => '.',
                (Mark::Empty, true) => '#',
                (Mark::Head, false) => 'H',
                (Mark::Head, true) => 'h',
                (Mark::Tail, false) => 'T',
                (Mark::Tail, true) => 't',
            });
        }
        out.push('\n');
    }
    out
}

/// Plain-text billiard grid, color layer only.
pub fn billiard_text(grid: &TorusGrid<BilliardCell>) -> String {
    let mut out = String::new();
    for y in 0..grid.height() as i64 {
        for x in 0..grid.width() as i64 {
            out.push(if grid.get(x, y).black { '#' } else { '.' });
        }
        out.push('\n');
    }
    out
}

/// One CSV row per step: step, unwrapped position, heading, and the
/// color the departed cell was flipped to (1 = black).
pub fn trajectory_csv(rows: &[(usize, crate::grid2d::AntPose, bool)]) -> String {
    let mut out = String::from("step,x,y,dir,flipped_to_black\n");
    for (step, pose, flipped_to_black) in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            step,
            pose.x,
            pose.y,
            pose.dir.name(),
            u8::from(*flipped_to_black)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn rule_files_round_trip() {
        let (_, beta, _) = zoo::hedlund_pair();
        let text = rule_to_json(&beta);
        let back = rule_from_json(&text).unwrap();
        assert_eq!(back, beta);
    }

    #[test]
    fn rule_loader_validates() {
        assert!(rule_from_json(r#"{"alphabet":2,"offsets":[0],"table":[0,1,1]}"#).is_err());
        assert!(rule_from_json(r#"{"alphabet":2,"offsets":[0],"table":[0,2]}"#).is_err());
        assert!(rule_from_json(r#"{"alphabet":2,"offsets":[1,0],"table":[0,1,1,0]}"#).is_err());
        let ok = rule_from_json(r#"{"alphabet":2,"offsets":[0],"table":[1,0]}"#).unwrap();
        assert!(ok.equal(&zoo::negation()).unwrap());
    }

    #[test]
    fn certificate_files_reverify_on_load() {
        let (_, beta, f) = zoo::hedlund_pair();
        let cert = crate::symmetry::verify_certificate(&f, &beta).unwrap();
        let text = certificate_to_json(&cert);
        let back = certificate_from_json(&text).unwrap();
        assert!(back.f().equal(&f).unwrap());
        // Corrupt H so that it is no longer an involution.
        let mut file: CertificateFile = serde_json::from_str(&text).unwrap();
        file.h = RuleFile::from(&zoo::shift(1));
        let bad = serde_json::to_string(&file).unwrap();
        assert!(certificate_from_json(&bad).is_err());
    }

    #[test]
    fn orbit_images_have_stable_headers() {
        let a = Alphabet::new(2).unwrap();
        let rows = vec![
            CyclicConfig::new(a, vec![0, 1, 1]).unwrap(),
            CyclicConfig::new(a, vec![1, 0, 0]).unwrap(),
        ];
        let img = orbit_image(&rows);
        assert!(img.starts_with("P1\n3 2\n"));
        assert!(img.contains("0 1 1"));
        let a3 = Alphabet::new(3).unwrap();
        let rows3 = vec![CyclicConfig::new(a3, vec![0, 1, 2]).unwrap()];
        assert!(orbit_image(&rows3).starts_with("P2\n3 1\n2\n"));
        assert_eq!(orbit_text(&rows), ".##\n#..\n");
    }
}
