//! Rule, label and minority files: one `{name} b_1 ... b_N` line per vector.

use std::fs;
use std::io::Write;
use std::path::Path;

use corels_core::{AntecedentSet, BitVec, LabeledDataset};

use crate::error::{Error, Result};

/// One parsed `{name} bits` line.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedBits {
    pub name: String,
    pub bits: BitVec,
}

fn parse_line(path: &Path, line_no: usize, line: &str) -> Result<NamedBits> {
    let line = line.trim();
    let (name, rest) = if let Some(stripped) = line.strip_prefix('{') {
        let end = stripped
            .find('}')
            .ok_or_else(|| Error::format(path, line_no, "unterminated `{` in name"))?;
        (&stripped[..end], &stripped[end + 1..])
    } else {
        line.split_once(char::is_whitespace).unwrap_or((line, ""))
    };
    let bits = rest
        .split_whitespace()
        .map(|t| match t {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(Error::format(path, line_no, format!("expected 0 or 1, found `{other}`"))),
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(NamedBits {
        name: name.to_string(),
        bits: BitVec::from_bools(bits),
    })
}

/// Parses every non-blank line; all vectors must have the same length.
pub fn read_named_bits(path: &Path) -> Result<Vec<NamedBits>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut out: Vec<NamedBits> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let nb = parse_line(path, i + 1, line)?;
        if let Some(first) = out.first() {
            if nb.bits.len() != first.bits.len() {
                return Err(Error::format(
                    path,
                    i + 1,
                    format!("{} samples, earlier lines have {}", nb.bits.len(), first.bits.len()),
                ));
            }
        }
        out.push(nb);
    }
    Ok(out)
}

fn render(name: &str, bits: &BitVec) -> String {
    let mut s = String::with_capacity(name.len() + 3 + 2 * bits.len());
    s.push('{');
    s.push_str(name);
    s.push('}');
    for b in bits.iter() {
        s.push(' ');
        s.push(if b { '1' } else { '0' });
    }
    s.push('\n');
    s
}

fn write_lines<'a>(path: &Path, lines: impl IntoIterator<Item = (&'a str, &'a BitVec)>) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = std::io::BufWriter::new(file);
    for (name, bits) in lines {
        w.write_all(render(name, bits).as_bytes()).map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn write_rule_file(path: &Path, antecedents: &AntecedentSet) -> Result<()> {
    write_lines(path, antecedents.iter().map(|a| (a.name.as_str(), &a.captures)))
}

pub fn read_rule_file(path: &Path) -> Result<AntecedentSet> {
    let lines = read_named_bits(path)?;
    let n = lines.first().map_or(0, |l| l.bits.len());
    Ok(AntecedentSet::from_named(n, lines.into_iter().map(|l| (l.name, l.bits)))?)
}

pub fn write_label_file(path: &Path, labels: &BitVec) -> Result<()> {
    let zeros = labels.not();
    write_lines(path, [("label=0", &zeros), ("label=1", labels)])
}

/// Returns the label-1 vector; the label-0 line must be its complement.
pub fn read_label_file(path: &Path) -> Result<BitVec> {
    let lines = read_named_bits(path)?;
    if lines.len() != 2 {
        return Err(Error::format(path, lines.len().min(3), "label file needs exactly two lines"));
    }
    if lines[0].bits != lines[1].bits.not() {
        return Err(Error::format(path, 2, "label lines are not complementary"));
    }
    Ok(lines[1].bits.clone())
}

pub fn write_minority_file(path: &Path, mask: &BitVec) -> Result<()> {
    write_lines(path, [("minority", mask)])
}

pub fn read_minority_file(path: &Path) -> Result<BitVec> {
    let lines = read_named_bits(path)?;
    match lines.as_slice() {
        [one] => Ok(one.bits.clone()),
        _ => Err(Error::format(path, 1, "minority file needs exactly one line")),
    }
}

/// Loads a training set, computing the minority mask when no file is given.
pub fn load_dataset(rules: &Path, labels: &Path, minority: Option<&Path>) -> Result<LabeledDataset> {
    let antecedents = read_rule_file(rules)?;
    let y = read_label_file(labels)?;
    if !antecedents.is_empty() && antecedents.n_samples() != y.len() {
        return Err(Error::format(
            labels,
            1,
            format!("{} samples, rule file has {}", y.len(), antecedents.n_samples()),
        ));
    }
    let ds = match minority {
        Some(p) => {
            let mask = read_minority_file(p)?;
            if mask.len() != y.len() {
                return Err(Error::format(p, 1, format!("{} samples, label file has {}", mask.len(), y.len())));
            }
            LabeledDataset::with_minority_mask(antecedents, y, mask)?
        }
        None => LabeledDataset::new(antecedents, y)?,
    };
    Ok(ds)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let bits = |s: &str| BitVec::from_bools(s.bytes().map(|b| b == b'1'));
        let set = AntecedentSet::from_named(
            4,
            [
                ("age=18-20 AND sex=male".to_string(), bits("1010")),
                ("priors>3".to_string(), bits("0110")),
            ],
        )
        .unwrap();
        let rules = dir.path().join("r");
        let labels = dir.path().join("l");
        let minority = dir.path().join("m");
        write_rule_file(&rules, &set).unwrap();
        write_label_file(&labels, &bits("1100")).unwrap();
        write_minority_file(&minority, &bits("0001")).unwrap();
        assert_eq!(
            fs::read_to_string(&rules).unwrap(),
            "{age=18-20 AND sex=male} 1 0 1 0\n{priors>3} 0 1 1 0\n"
        );
        assert_eq!(fs::read_to_string(&labels).unwrap(), "{label=0} 0 0 1 1\n{label=1} 1 1 0 0\n");
        let ds = load_dataset(&rules, &labels, Some(&minority)).unwrap();
        assert_eq!(ds.antecedents, set);
        assert_eq!(ds.minority_mask, bits("0001"));
    }

    #[test]
    fn length_mismatch_names_line() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("r");
        fs::write(&p, "{a} 1 0 1\n{b} 1 0\n").unwrap();
        match read_rule_file(&p).unwrap_err() {
            Error::Format { line, .. } => assert_eq!(line, 2),
            e => panic!("{e}"),
        }
        fs::write(&p, "{a} 1 0 x\n").unwrap();
        assert!(read_rule_file(&p).is_err());
    }

    #[test]
    fn label_and_rule_lengths_must_agree() {
        let dir = tempfile::tempdir().unwrap();
        let r = dir.path().join("r");
        let l = dir.path().join("l");
        fs::write(&r, "{a} 1 0 1\n").unwrap();
        fs::write(&l, "{label=0} 0 1\n{label=1} 1 0\n").unwrap();
        assert!(matches!(load_dataset(&r, &l, None), Err(Error::Format { .. })));
        fs::write(&l, "{label=0} 0 1 1\n{label=1} 1 1 0\n").unwrap();
        assert!(matches!(read_label_file(&l), Err(Error::Format { line: 2, .. })));
    }

    #[test]
    fn unbraced_names_are_accepted() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("r");
        fs::write(&p, "x=1 1 0 1\n").unwrap();
        let set = read_rule_file(&p).unwrap();
        assert_eq!(set.get(0).name, "x=1");
    }
}
