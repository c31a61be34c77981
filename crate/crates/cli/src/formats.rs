//! Knot and complex file formats.
//!
//! Knot files are `key = value` lines followed by `seifert:` and the matrix
//! rows; a file starting with `{` is read as JSON with the same field
//! names. `torus = a,b` may replace the matrix.
//!
//! ```text
//! # right-handed trefoil
//! name = trefoil
//! mirrored = false
//! seifert:
//!   -1  1
//!    0 -1
//! ```
//!
//! Complex files start with `ranks r0 r1 r2 r3`; each further line is
//! `<map> <grading> <row> <col> <literal>` where `<map>` is one of
//! `boundary`, `delta1`, `delta2`, `u`, `endo` and the literal runs to the
//! end of the line. `boundary g` is the map out of grading `g`, and so is
//! `u g`. `delta1` entries use grading 1 and row 0, `delta2` entries
//! grading 2 and column 0. JSON uses the same names with entries as
//! `[grading, row, col, "literal"]`.

use std::fmt::Write as _;

use serde::Deserialize;
use ski_core::error::Error;
use ski_core::exact::{rat, Rational};
use ski_core::floer::{CobordismEndomorphism, GradedComplex, Matrix};
use ski_core::knotcore::{torus_knot, SeifertKnot, SeifertMatrix};
use ski_core::novikov::{eval_expression, NovikovElement, ParseError};

use crate::CliError;

/// `p/q` or an integer; decimals are refused.
pub fn parse_fraction(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    let bad = || format!("'{s}' is not an exact fraction p/q");
    if t.contains('.') || t.contains('e') {
        return Err(format!("'{s}': decimals are not accepted, write p/q"));
    }
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: i64 = n.parse().map_err(|_| bad())?;
    let d: i64 = d.parse().map_err(|_| bad())?;
    if d <= 0 {
        return Err(bad());
    }
    Ok(rat(n, d))
}

/// `a,b`.
pub fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("'{s}' is not of the form a,b"))?;
    let a = a.trim().parse().map_err(|_| format!("'{a}' is not an integer"))?;
    let b = b.trim().parse().map_err(|_| format!("'{b}' is not an integer"))?;
    Ok((a, b))
}

/// `k1=v1,k2=v2,...`.
pub fn parse_counts(s: &str) -> Result<Vec<(i64, i64)>, String> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| format!("'{kv}' is not k=v"))?;
            let k = k.trim().parse().map_err(|_| format!("'{k}' is not an integer"))?;
            let v = v.trim().parse().map_err(|_| format!("'{v}' is not an integer"))?;
            Ok((k, v))
        })
        .collect()
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct KnotJson {
    #[serde(default = "default_name")]
    name: String,
    #[serde(default)]
    mirrored: bool,
    #[serde(default)]
    seifert: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    torus: Option<(i64, i64)>,
}

fn default_name() -> String {
    "knot".into()
}

fn build_knot(
    name: String,
    mirrored: bool,
    seifert: Option<Vec<Vec<i64>>>,
    torus: Option<(i64, i64)>,
) -> Result<SeifertKnot, CliError> {
    let base = match (seifert, torus) {
        (Some(_), Some(_)) => return Err(CliError::parse("give either seifert or torus, not both")),
        (Some(rows), None) => SeifertKnot::new(name.clone(), SeifertMatrix::new(rows)?, false),
        (None, Some((a, b))) => torus_knot(a, b)?,
        (None, None) => return Err(CliError::parse("missing seifert matrix")),
    };
    let knot = SeifertKnot::new(name, base.seifert.clone(), false);
    Ok(if mirrored { knot.mirror() } else { knot })
}

pub fn parse_knot(src: &str) -> Result<SeifertKnot, CliError> {
    if src.trim_start().starts_with('{') {
        let k: KnotJson = serde_json::from_str(src).map_err(|e| CliError::parse(format!("knot JSON: {e}")))?;
        return build_knot(k.name, k.mirrored, k.seifert, k.torus);
    }
    let mut name = default_name();
    let mut mirrored = false;
    let mut torus = None;
    let mut rows: Option<Vec<Vec<i64>>> = None;
    let mut in_matrix = false;
    for (n, raw) in src.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let at = |msg: String| CliError::parse(format!("line {}: {msg}", n + 1));
        if line == "seifert:" {
            in_matrix = true;
            rows = Some(Vec::new());
            continue;
        }
        if let Some((k, v)) = line.split_once('=') {
            in_matrix = false;
            let v = v.trim();
            match k.trim() {
                "name" => name = v.to_string(),
                "mirrored" => {
                    mirrored = v.parse().map_err(|_| at(format!("mirrored must be true or false, got '{v}'")))?
                }
                "torus" => torus = Some(parse_pair(v).map_err(at)?),
                other => return Err(at(format!("unknown key '{other}'"))),
            }
            continue;
        }
        if !in_matrix {
            return Err(at(format!("unexpected '{line}'")));
        }
        let row: Result<Vec<i64>, _> = line.split_whitespace().map(str::parse).collect();
        let row = row.map_err(|_| at(format!("bad matrix row '{line}'")))?;
        rows.as_mut().expect("inside matrix").push(row);
    }
    build_knot(name, mirrored, rows, torus)
}

pub fn write_knot(k: &SeifertKnot) -> String {
    let mut s = format!("name = {}\nmirrored = {}\nseifert:\n", k.name, k.mirrored);
    for row in k.seifert.entries() {
        let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "{}", r.join(" "));
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Boundary,
    Delta1,
    Delta2,
    U,
    Endo,
}

impl Section {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "boundary" => Section::Boundary,
            "delta1" => Section::Delta1,
            "delta2" => Section::Delta2,
            "u" => Section::U,
            "endo" => Section::Endo,
            _ => return None,
        })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexJson {
    ranks: [usize; 4],
    #[serde(default)]
    boundary: Vec<(usize, usize, usize, String)>,
    #[serde(default)]
    delta1: Vec<(usize, usize, usize, String)>,
    #[serde(default)]
    delta2: Vec<(usize, usize, usize, String)>,
    #[serde(default)]
    u: Vec<(usize, usize, usize, String)>,
    #[serde(default)]
    endo: Vec<(usize, usize, usize, String)>,
}

struct Builder {
    complex: GradedComplex,
    endo: Option<CobordismEndomorphism>,
    depth: u32,
}

impl Builder {
    fn new(ranks: [usize; 4], depth: u32) -> Self {
        Builder {
            complex: GradedComplex::zero(ranks),
            endo: None,
            depth,
        }
    }

    fn literal(&self, s: &str) -> Result<NovikovElement, CliError> {
        eval_expression(s, self.depth).map_err(|e| match e {
            ParseError::Syntax { .. } => CliError::parse(format!("literal '{s}' {e}")),
            ParseError::Domain(d) => CliError::from(d),
        })
    }

    fn set(&mut self, sec: Section, g: usize, r: usize, c: usize, lit: &str) -> Result<(), CliError> {
        if g > 3 {
            return Err(CliError::parse(format!("grading {g} is not in 0..3")));
        }
        let x = self.literal(lit)?;
        let ranks = self.complex.ranks;
        let m = match sec {
            Section::Boundary => &mut self.complex.boundary[g],
            Section::U => &mut self.complex.umap[g],
            Section::Delta1 => {
                if g != 1 || r != 0 {
                    return Err(CliError::parse("delta1 entries are '1 0 <col>'"));
                }
                &mut self.complex.delta1
            }
            Section::Delta2 => {
                if g != 2 || c != 0 {
                    return Err(CliError::parse("delta2 entries are '2 <row> 0'"));
                }
                &mut self.complex.delta2
            }
            Section::Endo => &mut self.endo.get_or_insert_with(|| CobordismEndomorphism::zero(ranks)).maps[g],
        };
        if r >= m.rows() || c >= m.cols() {
            return Err(CliError::parse(format!(
                "entry ({r}, {c}) is outside the {}x{} map",
                m.rows(),
                m.cols()
            )));
        }
        if !m.get(r, c).is_zero() {
            return Err(CliError::parse(format!("entry ({r}, {c}) given twice")));
        }
        m.set(r, c, x);
        Ok(())
    }
}

/// Reads a complex and, if present, an endomorphism. Literals are
/// evaluated with the given inversion depth.
pub fn parse_complex(src: &str, depth: u32) -> Result<(GradedComplex, Option<CobordismEndomorphism>), CliError> {
    if src.trim_start().starts_with('{') {
        let j: ComplexJson = serde_json::from_str(src).map_err(|e| CliError::parse(format!("complex JSON: {e}")))?;
        let mut b = Builder::new(j.ranks, depth);
        for (sec, list) in [
            (Section::Boundary, &j.boundary),
            (Section::Delta1, &j.delta1),
            (Section::Delta2, &j.delta2),
            (Section::U, &j.u),
            (Section::Endo, &j.endo),
        ] {
            for (g, r, c, lit) in list {
                b.set(sec, *g, *r, *c, lit)?;
            }
        }
        return Ok((b.complex, b.endo));
    }
    let mut b: Option<Builder> = None;
    for (n, raw) in src.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let at = |e: CliError| e.with_context(format!("line {}", n + 1));
        let mut words = line.splitn(5, char::is_whitespace).filter(|w| !w.is_empty());
        let head = words.next().unwrap_or("");
        if head == "ranks" {
            let r: Result<Vec<usize>, _> = line.split_whitespace().skip(1).map(str::parse).collect();
            match r {
                Ok(r) if r.len() == 4 && b.is_none() => b = Some(Builder::new([r[0], r[1], r[2], r[3]], depth)),
                _ => return Err(at(CliError::parse("expected a single 'ranks r0 r1 r2 r3' line"))),
            }
            continue;
        }
        let sec = Section::parse(head).ok_or_else(|| at(CliError::parse(format!("unknown map '{head}'"))))?;
        let builder = b
            .as_mut()
            .ok_or_else(|| at(CliError::parse("'ranks' must come first")))?;
        let rest = line[head.len()..].trim_start();
        let mut it = rest.splitn(4, char::is_whitespace);
        let mut index = || -> Result<usize, CliError> {
            it.next()
                .and_then(|w| w.parse().ok())
                .ok_or_else(|| CliError::parse("expected '<grading> <row> <col> <literal>'"))
        };
        let (g, r, c) = (index().map_err(at)?, index().map_err(at)?, index().map_err(at)?);
        let lit = it.next().unwrap_or("").trim();
        if lit.is_empty() {
            return Err(at(CliError::parse("missing literal")));
        }
        builder.set(sec, g, r, c, lit).map_err(at)?;
    }
    let b = b.ok_or_else(|| CliError::parse("missing 'ranks' line"))?;
    Ok((b.complex, b.endo))
}

fn write_map(out: &mut String, name: &str, g: usize, m: &Matrix) {
    for (r, c, x) in m.entries() {
        if !x.is_zero() {
            let _ = writeln!(out, "{name} {g} {r} {c} {x}");
        }
    }
}

/// Text form of a complex; parses back to an equal complex.
pub fn write_complex(c: &GradedComplex, m: Option<&CobordismEndomorphism>) -> String {
    let r = c.ranks;
    let mut s = format!("ranks {} {} {} {}\n", r[0], r[1], r[2], r[3]);
    for g in 0..4 {
        write_map(&mut s, "boundary", g, &c.boundary[g]);
    }
    write_map(&mut s, "delta1", 1, &c.delta1);
    write_map(&mut s, "delta2", 2, &c.delta2);
    for g in 0..4 {
        write_map(&mut s, "u", g, &c.umap[g]);
    }
    if let Some(m) = m {
        for g in 0..4 {
            write_map(&mut s, "endo", g, &m.maps[g]);
        }
    }
    s
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::domain(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ski_core::exact::int;

    #[test]
    fn fractions() {
        assert_eq!(parse_fraction("1/4").unwrap(), rat(1, 4));
        assert_eq!(parse_fraction("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_fraction("2").unwrap(), int(2));
        assert!(parse_fraction("0.25").is_err());
        assert!(parse_fraction("1/0").is_err());
        assert!(parse_fraction("a/b").is_err());
        assert_eq!(parse_pair("2, 3").unwrap(), (2, 3));
        assert_eq!(parse_counts("0=2,1=3").unwrap(), vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn knot_text_and_json() {
        let k = parse_knot("# trefoil\nname = trefoil\nseifert:\n-1 1\n0 -1\n").unwrap();
        assert_eq!(k, SeifertKnot::trefoil());
        let j = parse_knot(r#"{"name": "trefoil", "seifert": [[-1, 1], [0, -1]]}"#).unwrap();
        assert_eq!(j, k);
        assert_eq!(parse_knot(&write_knot(&k)).unwrap(), k);
        let m = parse_knot("name = t\nmirrored = true\nseifert:\n-1 1\n0 -1\n").unwrap();
        assert!(m.mirrored);
        let t = parse_knot("name = T(2,5)\ntorus = 2,5\n").unwrap();
        assert_eq!(t.seifert.size(), 4);
        assert!(matches!(parse_knot("seifert:\n1 x\n"), Err(CliError::Parse(_))));
        assert!(matches!(parse_knot("seifert:\n1 0\n0 1\n"), Err(CliError::Domain { .. })));
        assert!(matches!(parse_knot("colour = red\n"), Err(CliError::Parse(_))));
    }

    #[test]
    fn complex_text_and_json() {
        let src = "ranks 0 1 1 0\n# unit boundary\nboundary 2 0 0 1 - T^(-1)\n";
        let (c, m) = parse_complex(src, 10).unwrap();
        assert!(m.is_none());
        assert_eq!(c.boundary[2].get(0, 0), &"1 - T^(-1)".parse().unwrap());
        let (c2, _) = parse_complex(&write_complex(&c, None), 10).unwrap();
        assert_eq!(c2, c);
        let j = r#"{"ranks": [0,1,1,0], "boundary": [[2,0,0,"1 - T^(-1)"]]}"#;
        assert_eq!(parse_complex(j, 10).unwrap().0, c);

        let src = "ranks 1 1 1 1\ndelta1 1 0 0 T^0\nendo 0 0 0 T^(-1/2)\n";
        let (c, m) = parse_complex(src, 10).unwrap();
        assert_eq!(c.delta1.get(0, 0), &NovikovElement::one());
        assert_eq!(m.unwrap().maps[0].get(0, 0), &"T^(-1/2)".parse().unwrap());

        for bad in [
            "boundary 2 0 0 1\n",
            "ranks 1 1\n",
            "ranks 0 1 1 0\nboundary 2 1 0 1\n",
            "ranks 0 1 1 0\nboundary 2 0 0 1 +\n",
            "ranks 0 1 1 0\nfoo 2 0 0 1\n",
            "ranks 0 1 1 0\ndelta1 2 0 0 1\n",
            "ranks 0 1 1 0\nboundary 2 0 0 1\nboundary 2 0 0 1\n",
        ] {
            assert!(matches!(parse_complex(bad, 10), Err(CliError::Parse(_))), "{bad}");
        }
        assert!(matches!(
            parse_complex("ranks 0 1 1 0\nboundary 2 0 0 1/0\n", 10),
            Err(CliError::Domain { .. })
        ));
    }
}
