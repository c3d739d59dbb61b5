use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use gwnbasis::polyring::default_variable_names;
use gwnbasis::{OrderKind, PointSet, TermOrdering};

/// Points read from disk, with variable names from the CSV header if any.
pub struct PointFile {
    pub points: PointSet,
    pub names: Vec<String>,
}

pub fn read_points(path: &Path) -> Result<PointFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let json = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
        || text.trim_start().starts_with(['[', '{']);
    let (rows, names) = if json {
        (parse_json(&text)?, None)
    } else {
        parse_csv(&text)?
    };
    if rows.is_empty() {
        bail!("{} contains no points", path.display());
    }
    let points = PointSet::new(rows).with_context(|| format!("in {}", path.display()))?;
    let names = names.unwrap_or_else(|| default_variable_names(points.nvars()));
    Ok(PointFile { points, names })
}

fn parse_json(text: &str) -> Result<Vec<Vec<f64>>> {
    #[derive(serde::Deserialize)]
    #[serde(untagged)]
    enum Doc {
        Rows(Vec<Vec<f64>>),
        Wrapped { points: Vec<Vec<f64>> },
    }
    Ok(
        match serde_json::from_str(text).context("malformed JSON point file")? {
            Doc::Rows(r) => r,
            Doc::Wrapped { points } => points,
        },
    )
}

type Rows = Vec<Vec<f64>>;

fn parse_csv(text: &str) -> Result<(Rows, Option<Vec<String>>)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    let mut names: Option<Vec<String>> = None;
    for (i, record) in reader.records().enumerate() {
        let record = record.context("malformed CSV")?;
        let parsed: Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(row) => rows.push(row),
            Err(_) if i == 0 => names = Some(record.iter().map(str::to_string).collect()),
            Err(e) => bail!("line {}: {e}", i + 1),
        }
    }
    if let (Some(n), Some(first)) = (&names, rows.first()) {
        if n.len() != first.len() {
            bail!("header has {} columns, data has {}", n.len(), first.len());
        }
    }
    Ok((rows, names))
}

pub fn write_points(out: &mut dyn Write, points: &PointSet, names: &[String]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(names)?;
    for p in points.iter() {
        w.write_record(p.iter().map(|c| c.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

/// `kind[:name,name,...]`, first name greatest.
pub fn parse_ordering(spec: &str, names: &[String]) -> Result<TermOrdering> {
    let (kind, vars) = match spec.split_once(':') {
        Some((k, v)) => (k, Some(v)),
        None => (spec, None),
    };
    let kind = match kind.trim().to_ascii_lowercase().as_str() {
        "degrevlex" => OrderKind::DegRevLex,
        "deglex" => OrderKind::DegLex,
        other => bail!("unknown term ordering '{other}'"),
    };
    let precedence = match vars {
        None => (0..names.len()).collect(),
        Some(v) => v
            .split(',')
            .map(|name| {
                let name = name.trim();
                names
                    .iter()
                    .position(|n| n == name)
                    .with_context(|| format!("unknown variable '{name}' in ordering"))
            })
            .collect::<Result<Vec<_>>>()?,
    };
    if precedence.len() != names.len() {
        bail!(
            "ordering lists {} variables, points have {}",
            precedence.len(),
            names.len()
        );
    }
    Ok(TermOrdering::with_precedence(kind, precedence)?)
}

pub fn write_output(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, contents).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_header_is_optional() {
        let (rows, names) = parse_csv("a, b\n1,2\n3,4\n").unwrap();
        assert_eq!(rows, vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
        assert_eq!(names.unwrap(), vec!["a", "b"]);
        let (rows, names) = parse_csv("1,2\n# note\n3,4\n").unwrap();
        assert_eq!(rows.len(), 2);
        assert!(names.is_none());
        assert!(parse_csv("1,2\nx,4\n").is_err());
    }

    #[test]
    fn json_forms() {
        assert_eq!(parse_json("[[1,2],[3,4]]").unwrap().len(), 2);
        assert_eq!(parse_json("{\"points\": [[1,2]]}").unwrap().len(), 1);
        assert!(parse_json("{\"p\": 1}").is_err());
    }

    #[test]
    fn orderings() {
        let names = default_variable_names(3);
        let o = parse_ordering("degrevlex:z,x,y", &names).unwrap();
        assert_eq!(o.precedence(), &[2, 0, 1]);
        assert_eq!(
            parse_ordering("deglex", &names).unwrap().kind(),
            OrderKind::DegLex
        );
        assert!(parse_ordering("lex", &names).is_err());
        assert!(parse_ordering("degrevlex:x,y", &names).is_err());
        assert!(parse_ordering("degrevlex:x,y,w", &names).is_err());
    }
}
