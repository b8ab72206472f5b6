//! The shipped knot table: one knot per line, tab-separated.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::diagram::{build_diagram, parse_pd_input, Diagram, PdCode};
use crate::error::{Error, Result};
use crate::poly::HalfLaurentPoly;
use crate::reduce::{hfk_report, parse_arrow, ReportOptions};

const SHIPPED: &str = include_str!("../../data/knots.tsv");

const COLUMNS: [&str; 9] = ["name", "pd", "mark", "alternating", "sigma", "delta", "curated", "flags", "reference"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotTableEntry {
    pub name: String,
    pub pd: PdCode,
    /// PD label of the marked edge
    pub mark: usize,
    pub alternating: bool,
    pub sigma: i64,
    /// symmetrized Alexander coefficients from the lowest power up
    pub delta: Vec<i64>,
    /// arrows `X>Y` confirmed outside the engine
    pub curated: Vec<(String, String)>,
    pub flags: Vec<String>,
    /// published ranks at (s, m), when recorded
    pub reference: Option<BTreeMap<(i64, i64), u64>>,
}

impl KnotTableEntry {
    pub fn diagram(&self) -> Result<Diagram> {
        build_diagram(&self.pd, self.mark)
    }

    pub fn alexander(&self) -> HalfLaurentPoly {
        let lo = -((self.delta.len() as i64 - 1) / 2);
        HalfLaurentPoly::from_int_terms(self.delta.iter().enumerate().map(|(i, &c)| (lo + i as i64, c)))
    }

    pub fn has_flag(&self, flag: &str) -> bool {
        self.flags.iter().any(|f| f == flag)
    }

    /// Report options carrying this entry's curated arrows.
    pub fn report_options(&self) -> ReportOptions {
        ReportOptions { use_curated: !self.curated.is_empty(), curated: self.curated.clone(), ..Default::default() }
    }
}

fn dash_or<T>(field: &str, f: impl FnOnce(&str) -> std::result::Result<T, String>) -> std::result::Result<Option<T>, String> {
    if field == "-" {
        Ok(None)
    } else {
        f(field).map(Some)
    }
}

fn parse_ints(text: &str) -> std::result::Result<Vec<i64>, String> {
    text.split(',').map(|t| t.trim().parse::<i64>().map_err(|_| format!("bad integer `{t}`"))).collect()
}

fn parse_reference(text: &str) -> std::result::Result<BTreeMap<(i64, i64), u64>, String> {
    let mut out = BTreeMap::new();
    for cell in text.split(';') {
        let (sm, rank) = cell.split_once(':').ok_or_else(|| format!("bad cell `{cell}`"))?;
        let sm = parse_ints(sm)?;
        let [s, m] = sm[..] else { return Err(format!("bad cell `{cell}`")) };
        let rank = rank.trim().parse::<u64>().map_err(|_| format!("bad rank in `{cell}`"))?;
        if out.insert((s, m), rank).is_some() {
            return Err(format!("duplicate cell ({s},{m})"));
        }
    }
    Ok(out)
}

fn parse_row(line: &str) -> std::result::Result<KnotTableEntry, String> {
    let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
    if fields.len() != COLUMNS.len() {
        return Err(format!("expected {} columns, found {}", COLUMNS.len(), fields.len()));
    }
    let name = fields[0].to_string();
    let mark = fields[2].parse::<usize>().map_err(|_| format!("bad mark `{}`", fields[2]))?;
    let input = parse_pd_input(&format!("{}\nmark: {mark}", fields[1])).map_err(|e| e.to_string())?;
    let alternating = match fields[3] {
        "Y" => true,
        "N" => false,
        other => return Err(format!("alternating must be Y or N, got `{other}`")),
    };
    let sigma = fields[4].parse::<i64>().map_err(|_| format!("bad signature `{}`", fields[4]))?;
    let delta = parse_ints(fields[5])?;
    if delta.len() % 2 == 0 || delta.iter().zip(delta.iter().rev()).any(|(a, b)| a != b) {
        return Err(format!("delta `{}` is not a symmetric coefficient list", fields[5]));
    }
    let curated = dash_or(fields[6], |t| t.split(',').map(|a| parse_arrow(a).map_err(|e| e.to_string())).collect())?
        .unwrap_or_default();
    let flags = dash_or(fields[7], |t| Ok(t.split(',').map(|f| f.trim().to_string()).collect()))?.unwrap_or_default();
    let reference = dash_or(fields[8], parse_reference)?;
    Ok(KnotTableEntry { name, pd: input.pd, mark: input.mark, alternating, sigma, delta, curated, flags, reference })
}

/// Checks that every curated arrow joins two states the reduction may pair.
fn validate_curated(entry: &KnotTableEntry) -> Result<()> {
    if entry.curated.is_empty() {
        return Ok(());
    }
    hfk_report(&entry.diagram()?, &entry.report_options())
        .map(|_| ())
        .map_err(|e| Error::BadCuration(format!("{}: {e}", entry.name)))
}

/// Parses table text. Blank lines and `#` comments are skipped.
pub fn parse_table(text: &str) -> Result<Vec<KnotTableEntry>> {
    let mut entries: Vec<KnotTableEntry> = vec![];
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let entry = parse_row(line).map_err(|msg| Error::Parse { line: i + 1, msg })?;
        if entries.iter().any(|e| e.name == entry.name) {
            return Err(Error::Parse { line: i + 1, msg: format!("duplicate knot `{}`", entry.name) });
        }
        if let Err(e) = validate_curated(&entry) {
            return Err(Error::Parse { line: i + 1, msg: e.to_string() });
        }
        entries.push(entry);
    }
    Ok(entries)
}

pub fn load_table(path: &Path) -> Result<Vec<KnotTableEntry>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_table(&text)
}

pub fn serialize_table(entries: &[KnotTableEntry]) -> String {
    let join = |v: Vec<String>, sep: &str| if v.is_empty() { "-".to_string() } else { v.join(sep) };
    let mut out = format!("# {}\n", COLUMNS.join("\t"));
    for e in entries {
        let reference = e.reference.as_ref().map_or("-".to_string(), |r| {
            join(r.iter().map(|((s, m), k)| format!("{s},{m}:{k}")).collect(), ";")
        });
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            e.name,
            e.pd,
            e.mark,
            if e.alternating { "Y" } else { "N" },
            e.sigma,
            join(e.delta.iter().map(i64::to_string).collect(), ","),
            join(e.curated.iter().map(|(a, b)| format!("{a}>{b}")).collect(), ","),
            join(e.flags.clone(), ","),
            reference,
        )
        .unwrap();
    }
    out
}

/// The table compiled into the library.
pub fn shipped_table() -> Vec<KnotTableEntry> {
    parse_table(SHIPPED).expect("shipped table parses")
}

pub fn lookup<'a>(table: &'a [KnotTableEntry], name: &str) -> Option<&'a KnotTableEntry> {
    table.iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{alexander_poly, signature};

    #[test]
    fn round_trip() {
        let table = shipped_table();
        assert_eq!(table.len(), 86);
        assert_eq!(parse_table(&serialize_table(&table)).unwrap(), table);
    }

    #[test]
    fn curated_arrow_is_carried() {
        let table = shipped_table();
        let e = lookup(&table, "9_43").unwrap();
        assert_eq!(e.curated, vec![("030330021".to_string(), "300330311".to_string())]);
        assert!(lookup(&table, "8_19").unwrap().has_flag("reference-only"));
    }

    #[test]
    fn small_entries_match_invariants() {
        for e in shipped_table().iter().filter(|e| e.pd.crossing_count() <= 7) {
            let d = e.diagram().unwrap();
            assert_eq!(alexander_poly(&d).unwrap(), e.alexander(), "{}", e.name);
            assert_eq!(signature(&d).unwrap(), e.sigma, "{}", e.name);
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "# header\n3_1\tX(0,4,1,3)\n";
        assert!(matches!(parse_table(bad), Err(Error::Parse { line: 2, .. })));
        let bad_arrow = "3_1\tX(0,4,1,3) X(2,0,3,5) X(4,2,5,1)\t0\tY\t-2\t1,-1,1\t000>111\t-\t-\n";
        assert!(matches!(parse_table(bad_arrow), Err(Error::Parse { line: 1, .. })));
    }
}
