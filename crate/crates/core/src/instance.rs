//! Subset Sum instances and their plain-text file format.
//!
//! ```text
//! n t
//! z_1 z_2 ... z_n
//! ```
//!
//! The items form a multiset. Zeros and items above `t` are dropped on
//! construction and counted in [`Dropped`].

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("missing header line \"n t\"")]
    MissingHeader,
    #[error("target must be a positive integer, got {0}")]
    BadTarget(String),
    #[error("header announces {expected} items but {found} were given")]
    CountMismatch { expected: usize, found: usize },
}

/// Items removed while building an [`Instance`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Dropped {
    pub zeros: usize,
    pub over_target: usize,
}

impl Dropped {
    pub fn total(&self) -> usize {
        self.zeros + self.over_target
    }
}

/// A multiset of positive integers, each at most `target`, plus the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    items: Vec<usize>,
    target: usize,
}

impl Instance {
    /// Filters `items` and sorts them. Zeros and items above `target` are
    /// dropped.
    pub fn new<I: IntoIterator<Item = u64>>(items: I, target: usize) -> (Self, Dropped) {
        let mut dropped = Dropped::default();
        let mut kept = Vec::new();
        for z in items {
            if z == 0 {
                dropped.zeros += 1;
            } else if z > target as u64 {
                dropped.over_target += 1;
            } else {
                kept.push(z as usize);
            }
        }
        kept.sort_unstable();
        (Instance { items: kept, target }, dropped)
    }

    /// Like [`Instance::new`] but for callers that do not care about drops.
    pub fn from_items(items: &[usize], target: usize) -> Self {
        Self::new(items.iter().map(|&z| z as u64), target).0
    }

    /// Sorted multiset of items.
    pub fn items(&self) -> &[usize] {
        &self.items
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// Multiset size.
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Distinct items with their multiplicities, ascending.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &z in &self.items {
            match out.last_mut() {
                Some((v, c)) if *v == z => *c += 1,
                _ => out.push((z, 1)),
            }
        }
        out
    }

    /// Parses the text format. Returns the instance and what was dropped.
    pub fn parse(text: &str) -> Result<(Self, Dropped), ParseError> {
        let (items, target) = Self::parse_raw(text)?;
        Ok(Self::new(items, target))
    }

    /// Parses the text format without filtering: the items as written and
    /// the header target.
    pub fn parse_raw(text: &str) -> Result<(Vec<u64>, usize), ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(ParseError::Malformed {
                line: hline,
                msg: format!("expected \"n t\", got {header:?}"),
            });
        }
        let n: usize = fields[0].parse().map_err(|_| ParseError::Malformed {
            line: hline,
            msg: format!("item count {:?} is not a non-negative integer", fields[0]),
        })?;
        let target: usize = match fields[1].parse::<i128>() {
            Ok(t) if t > 0 && t <= usize::MAX as i128 => t as usize,
            _ => return Err(ParseError::BadTarget(fields[1].to_string())),
        };

        let mut items = Vec::with_capacity(n);
        for (line, body) in lines {
            for tok in body.split_whitespace() {
                let v: u64 = tok.parse().map_err(|_| ParseError::Malformed {
                    line,
                    msg: format!("{tok:?} is not a non-negative integer"),
                })?;
                items.push(v);
            }
        }
        if items.len() != n {
            return Err(ParseError::CountMismatch {
                expected: n,
                found: items.len(),
            });
        }
        Ok((items, target))
    }

    /// Serializes to the text format.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.items.len(), self.target)?;
        let body: Vec<String> = self.items.iter().map(|z| z.to_string()).collect();
        writeln!(f, "{}", body.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let (inst, d) = Instance::parse("3 12\n3 5 7\n").unwrap();
        assert_eq!(inst.items(), &[3, 5, 7]);
        assert_eq!(inst.target(), 12);
        assert_eq!(d, Dropped::default());

        let (inst, _) = Instance::parse("0 5\n").unwrap();
        assert!(inst.is_empty());
        assert_eq!(inst.target(), 5);

        let (inst, d) = Instance::parse("3 100\n1000000 4 0\n").unwrap();
        assert_eq!(inst.items(), &[4]);
        assert_eq!(d.over_target, 1);
        assert_eq!(d.zeros, 1);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(Instance::parse(""), Err(ParseError::MissingHeader));
        assert!(matches!(
            Instance::parse("2 0\n1 2\n"),
            Err(ParseError::BadTarget(_))
        ));
        assert!(matches!(
            Instance::parse("2 -3\n1 2\n"),
            Err(ParseError::BadTarget(_))
        ));
        assert_eq!(
            Instance::parse("2 10\n1 x\n"),
            Err(ParseError::Malformed {
                line: 2,
                msg: "\"x\" is not a non-negative integer".into()
            })
        );
        assert!(matches!(
            Instance::parse("2\n1 2\n"),
            Err(ParseError::Malformed { line: 1, .. })
        ));
        assert_eq!(
            Instance::parse("3 10\n1 2\n"),
            Err(ParseError::CountMismatch {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn multiplicities_are_grouped() {
        let inst = Instance::from_items(&[3, 1, 3, 3, 2, 1], 10);
        assert_eq!(inst.multiplicities(), vec![(1, 2), (2, 1), (3, 3)]);
    }

    proptest! {
        #[test]
        fn text_roundtrip(items in prop::collection::vec(1u64..500, 0..40), t in 1usize..500) {
            let (inst, _) = Instance::new(items, t);
            let (back, dropped) = Instance::parse(&inst.to_text()).unwrap();
            prop_assert_eq!(dropped.total(), 0);
            prop_assert_eq!(back, inst);
        }
    }
}
