//! Model files: the readable rule list followed by one machine-readable line.

use std::fs;
use std::path::Path;

use corels_core::{AntecedentSet, RuleList};

use crate::error::{Error, Result};

pub fn render_model(rule_list: &RuleList, antecedents: &AntecedentSet) -> String {
    format!("{}{}\n", rule_list.to_text(antecedents), rule_list.to_line(antecedents))
}

pub fn write_model(path: &Path, rule_list: &RuleList, antecedents: &AntecedentSet) -> Result<()> {
    fs::write(path, render_model(rule_list, antecedents)).map_err(|e| Error::io(path, e))
}

/// Reads the last non-blank line and resolves its names in `antecedents`.
pub fn read_model(path: &Path, antecedents: &AntecedentSet) -> Result<RuleList> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let (idx, line) = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .last()
        .ok_or_else(|| Error::format(path, 1, "empty model file"))?;
    RuleList::parse_line(line, antecedents).map_err(|e| Error::format(path, idx + 1, e.to_string()))
}
