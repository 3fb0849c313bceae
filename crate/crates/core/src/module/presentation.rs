//! Finite graded modules given by generators, degrees and Sq^k action lines.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

/// One line "i k l j1 ... jl": Sq^k g_i = g_{j1} + ... + g_{jl}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionRecord {
    pub generator: usize,
    pub square: u32,
    pub targets: BTreeSet<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModulePresentation {
    name: String,
    degrees: Vec<i32>,
    records: BTreeMap<(usize, u32), BTreeSet<usize>>,
}

impl PartialEq for ModulePresentation {
    fn eq(&self, other: &Self) -> bool {
        self.degrees == other.degrees && self.records == other.records
    }
}

impl Eq for ModulePresentation {}

impl ModulePresentation {
    pub fn new(name: impl Into<String>, degrees: Vec<i32>) -> Self {
        ModulePresentation {
            name: name.into(),
            degrees,
            records: BTreeMap::new(),
        }
    }

    pub fn sphere() -> Self {
        Self::new("S0", vec![0])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn min_degree(&self) -> i32 {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> i32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Largest k for which Sq^k can act nontrivially.
    pub fn span(&self) -> u32 {
        (self.max_degree() - self.min_degree()) as u32
    }

    /// Add a record; the targets replace any existing record for (i, k).
    /// An empty target set removes the record.
    pub fn set_action(
        &mut self,
        generator: usize,
        square: u32,
        targets: impl IntoIterator<Item = usize>,
    ) -> Result<()> {
        let targets: BTreeSet<usize> = targets.into_iter().collect();
        if generator >= self.dim() || targets.iter().any(|&j| j >= self.dim()) {
            return Err(Error::Input(format!(
                "generator index out of range in Sq^{square} g{generator}"
            )));
        }
        if square == 0 {
            return Err(Error::Input("Sq^0 records are not allowed".into()));
        }
        if targets.is_empty() {
            self.records.remove(&(generator, square));
        } else {
            self.records.insert((generator, square), targets);
        }
        Ok(())
    }

    pub fn remove_action(&mut self, generator: usize, square: u32) -> bool {
        self.records.remove(&(generator, square)).is_some()
    }

    pub fn action(&self, generator: usize, square: u32) -> Option<&BTreeSet<usize>> {
        self.records.get(&(generator, square))
    }

    /// Records sorted by (generator, square).
    pub fn records(&self) -> impl Iterator<Item = ActionRecord> + '_ {
        self.records.iter().map(|(&(i, k), t)| ActionRecord {
            generator: i,
            square: k,
            targets: t.clone(),
        })
    }

    pub fn record_count(&self) -> usize {
        self.records.len()
    }

    /// Records whose targets are not in degree d_i + k.
    pub fn degree_violations(&self) -> Vec<ActionRecord> {
        self.records()
            .filter(|r| {
                r.targets
                    .iter()
                    .any(|&j| self.degrees[j] != self.degrees[r.generator] + r.square as i32)
            })
            .collect()
    }

    /// Shift every degree by `k`.
    pub fn suspend(&self, k: i32) -> Self {
        ModulePresentation {
            name: self.name.clone(),
            degrees: self.degrees.iter().map(|d| d + k).collect(),
            records: self.records.clone(),
        }
    }

    /// Bruner's text format, records sorted by (i, k) with ascending targets.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}", self.dim()).unwrap();
        writeln!(s).unwrap();
        let degs: Vec<String> = self.degrees.iter().map(i32::to_string).collect();
        writeln!(s, "{}", degs.join(" ")).unwrap();
        writeln!(s).unwrap();
        for ((i, k), t) in &self.records {
            write!(s, "{i} {k} {}", t.len()).unwrap();
            for j in t {
                write!(s, " {j}").unwrap();
            }
            writeln!(s).unwrap();
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_named("", text)
    }

    pub fn parse_named(name: &str, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());

        let (ln, first) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty definition".into(),
        })?;
        let n: usize = parse_int(ln, first)?;
        if n == 0 {
            return Err(Error::Parse {
                line: ln,
                msg: "dimension must be positive".into(),
            });
        }
        let (ln, deg_line) = lines.next().ok_or(Error::Parse {
            line: ln + 1,
            msg: "missing degree line".into(),
        })?;
        let degrees: Vec<i32> = deg_line
            .split_whitespace()
            .map(|w| parse_int(ln, w))
            .collect::<Result<_>>()?;
        if degrees.len() != n {
            return Err(Error::Parse {
                line: ln,
                msg: format!("expected {n} degrees, found {}", degrees.len()),
            });
        }
        let mut m = ModulePresentation::new(name, degrees);
        for (ln, line) in lines {
            let nums: Vec<i64> = line
                .split_whitespace()
                .map(|w| parse_int(ln, w))
                .collect::<Result<_>>()?;
            let err = |msg: String| Error::Parse { line: ln, msg };
            if nums.len() < 3 {
                return Err(err(format!("action line needs at least 3 fields: {line:?}")));
            }
            let (i, k, l) = (nums[0], nums[1], nums[2]);
            if i < 0 || i as usize >= n {
                return Err(err(format!("generator {i} out of range 0..{n}")));
            }
            if k <= 0 {
                return Err(err(format!("square degree {k} must be positive")));
            }
            if l <= 0 || nums.len() as i64 - 3 != l {
                return Err(err(format!(
                    "count {l} does not match {} listed targets",
                    nums.len() - 3
                )));
            }
            let mut targets = BTreeSet::new();
            for &j in &nums[3..] {
                if j < 0 || j as usize >= n {
                    return Err(err(format!("target {j} out of range 0..{n}")));
                }
                if !targets.insert(j as usize) {
                    return Err(err(format!("target {j} listed twice")));
                }
            }
            let key = (i as usize, k as u32);
            if m.records.contains_key(&key) {
                return Err(err(format!("duplicate action line for generator {i}, Sq^{k}")));
            }
            m.records.insert(key, targets);
        }
        Ok(m)
    }
}

fn parse_int<T: std::str::FromStr>(line: usize, w: &str) -> Result<T> {
    w.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("malformed integer {w:?}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_text() {
        let s = ModulePresentation::parse("1\n0\n").unwrap();
        assert_eq!(s, ModulePresentation::sphere());
        assert_eq!(s.serialize(), "1\n\n0\n\n");
    }

    #[test]
    fn parse_errors_name_lines() {
        let cases = [
            ("2\n0 1\n0 1 1 5\n", 3),
            ("2\n0 1\n0 1 2 1\n", 3),
            ("2\n0 x\n", 2),
            ("2\n0 1\n0 1 1 1\n\n0 1 1 1\n", 5),
        ];
        for (text, line) in cases {
            match ModulePresentation::parse(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn suspension_round_trip() {
        let m = ModulePresentation::parse("2\n0 2\n0 2 1 1\n").unwrap();
        assert_eq!(m.suspend(0), m);
        assert_eq!(m.suspend(3).suspend(-3), m);
    }
}
