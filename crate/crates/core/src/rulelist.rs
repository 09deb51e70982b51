use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::bitvec::BitVec;
use crate::bounds::majority;
use crate::dataset::AntecedentSet;
use crate::error::{Error, Result};
use crate::AntecedentId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rule {
    pub antecedent: AntecedentId,
    pub prediction: bool,
}

/// An ordered list of rules followed by a default prediction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RuleList {
    pub rules: Vec<Rule>,
    pub default_prediction: bool,
}

fn label_word(label: bool) -> &'static str {
    if label {
        "yes"
    } else {
        "no"
    }
}

impl RuleList {
    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn prefix(&self) -> Vec<AntecedentId> {
        self.rules.iter().map(|r| r.antecedent).collect()
    }

    /// The rule list for `prefix` whose predictions are the majority label
    /// (ties to 1) of the samples each rule captures in context.
    pub fn from_prefix(prefix: &[AntecedentId], antecedents: &AntecedentSet, labels: &BitVec) -> Self {
        let mut uncaptured = BitVec::ones(labels.len());
        let mut rules = Vec::with_capacity(prefix.len());
        for &a in prefix {
            let cap = uncaptured.and(&antecedents.get(a).captures);
            let (prediction, _) = majority(cap.count_ones(), cap.and_count(labels));
            uncaptured.andnot_assign(&cap);
            rules.push(Rule {
                antecedent: a,
                prediction,
            });
        }
        let (default_prediction, _) = majority(uncaptured.count_ones(), uncaptured.and_count(labels));
        RuleList {
            rules,
            default_prediction,
        }
    }

    pub fn predict(&self, antecedents: &AntecedentSet) -> BitVec {
        let n = antecedents.n_samples();
        let mut out = BitVec::zeros(n);
        let mut uncaptured = BitVec::ones(n);
        for r in &self.rules {
            let cap = uncaptured.and(&antecedents.get(r.antecedent).captures);
            if r.prediction {
                out.or_assign(&cap);
            }
            uncaptured.andnot_assign(&cap);
        }
        if self.default_prediction {
            out.or_assign(&uncaptured);
        }
        out
    }

    pub fn mistakes(&self, antecedents: &AntecedentSet, labels: &BitVec) -> usize {
        let p = self.predict(antecedents);
        p.andnot(labels).count_ones() + labels.andnot(&p).count_ones()
    }

    /// `if (...) then predict yes` / `else if ...` / `else predict no`.
    pub fn to_text(&self, antecedents: &AntecedentSet) -> String {
        let mut out = String::new();
        for (i, r) in self.rules.iter().enumerate() {
            let kw = if i == 0 { "if" } else { "else if" };
            out += &format!(
                "{kw} ({}) then predict {}\n",
                antecedents.get(r.antecedent).name,
                label_word(r.prediction)
            );
        }
        if self.rules.is_empty() {
            out += &format!("predict {}\n", label_word(self.default_prediction));
        } else {
            out += &format!("else predict {}\n", label_word(self.default_prediction));
        }
        out
    }

    /// `name:1,name:0,default:0`.
    pub fn to_line(&self, antecedents: &AntecedentSet) -> String {
        let mut parts: Vec<String> = self
            .rules
            .iter()
            .map(|r| format!("{}:{}", antecedents.get(r.antecedent).name, r.prediction as u8))
            .collect();
        parts.push(format!("default:{}", self.default_prediction as u8));
        parts.join(",")
    }

    /// Parses [`to_line`](Self::to_line) output, resolving names in
    /// `antecedents`.
    pub fn parse_line(line: &str, antecedents: &AntecedentSet) -> Result<Self> {
        let parse_label = |s: &str| match s.trim() {
            "1" => Ok(true),
            "0" => Ok(false),
            other => Err(Error::InvalidArgument(format!("bad prediction `{other}` in model line"))),
        };
        let mut rules = Vec::new();
        let mut default = None;
        let mut unknown = Vec::new();
        for part in line.trim().split(',') {
            let (name, pred) = part
                .rsplit_once(':')
                .ok_or_else(|| Error::InvalidArgument(format!("malformed model entry `{part}`")))?;
            let pred = parse_label(pred)?;
            if default.is_some() {
                return Err(Error::InvalidArgument("entries after default in model line".to_string()));
            }
            if name == "default" {
                default = Some(pred);
                continue;
            }
            match antecedents.find(name) {
                Some(a) => rules.push(Rule {
                    antecedent: a.id,
                    prediction: pred,
                }),
                None => unknown.push(name.to_string()),
            }
        }
        if !unknown.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "model uses antecedents missing from the rule file: {}",
                unknown.join(", ")
            )));
        }
        let default_prediction =
            default.ok_or_else(|| Error::InvalidArgument("model line has no default entry".to_string()))?;
        Ok(RuleList {
            rules,
            default_prediction,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set() -> (AntecedentSet, BitVec) {
        let bits = |s: &str| BitVec::from_bools(s.bytes().map(|b| b == b'1'));
        let set = AntecedentSet::from_named(
            6,
            [
                ("a=1".to_string(), bits("110000")),
                ("b=1".to_string(), bits("011100")),
            ],
        )
        .unwrap();
        (set, bits("111000"))
    }

    #[test]
    fn forced_predictions_and_mistakes() {
        let (set, labels) = set();
        let rl = RuleList::from_prefix(&[0, 1], &set, &labels);
        assert!(rl.rules[0].prediction);
        // b captures samples 2 and 3 in context: labels 1, 0, tie -> 1
        assert!(rl.rules[1].prediction);
        assert!(!rl.default_prediction);
        assert_eq!(rl.mistakes(&set, &labels), 1);
    }

    #[test]
    fn text_and_line_round_trip() {
        let (set, labels) = set();
        let rl = RuleList::from_prefix(&[1], &set, &labels);
        assert_eq!(rl.to_text(&set), "if (b=1) then predict yes\nelse predict no\n");
        let line = rl.to_line(&set);
        assert_eq!(line, "b=1:1,default:0");
        assert_eq!(RuleList::parse_line(&line, &set).unwrap(), rl);
        let empty = RuleList::from_prefix(&[], &set, &labels);
        assert_eq!(empty.to_text(&set), "predict yes\n");
        assert!(RuleList::parse_line("zzz:1,default:0", &set).is_err());
        assert!(RuleList::parse_line("a=1:1", &set).is_err());
    }
}
