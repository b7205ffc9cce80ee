use std::fmt;

use crate::error::{Error, Result};

/// Largest relation arity the dense storage supports.
pub const MAX_ARITY: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    pub name: String,
    pub arity: usize,
}

/// An ordered list of relation symbols with arities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    relations: Vec<Relation>,
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl Signature {
    pub fn new<S: Into<String>>(relations: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let relations: Vec<Relation> = relations
            .into_iter()
            .map(|(name, arity)| Relation {
                name: name.into(),
                arity,
            })
            .collect();
        for (i, r) in relations.iter().enumerate() {
            if !valid_identifier(&r.name) {
                return Err(Error::pre(format!("invalid relation name {:?}", r.name)));
            }
            if r.arity == 0 || r.arity > MAX_ARITY {
                return Err(Error::InvalidArity(format!(
                    "relation {} has arity {}, allowed range is 1..={MAX_ARITY}",
                    r.name, r.arity
                )));
            }
            if relations[..i].iter().any(|q| q.name == r.name) {
                return Err(Error::pre(format!("duplicate relation name {}", r.name)));
            }
        }
        Ok(Signature { relations })
    }

    /// Signature with relations named `R1, R2, ...` of the given arities.
    pub fn from_arities(arities: &[usize]) -> Result<Self> {
        Signature::new(
            arities
                .iter()
                .enumerate()
                .map(|(i, &a)| (format!("R{}", i + 1), a)),
        )
    }

    /// Same arities, relation names prefixed (used to keep source and target
    /// signatures visually distinct).
    pub fn with_prefix(arities: &[usize], prefix: &str) -> Result<Self> {
        Signature::new(
            arities
                .iter()
                .enumerate()
                .map(|(i, &a)| (format!("{prefix}{}", i + 1), a)),
        )
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn arity(&self, i: usize) -> usize {
        self.relations[i].arity
    }

    pub fn name(&self, i: usize) -> &str {
        &self.relations[i].name
    }

    pub fn arities(&self) -> Vec<usize> {
        self.relations.iter().map(|r| r.arity).collect()
    }

    pub fn max_arity(&self) -> usize {
        self.relations.iter().map(|r| r.arity).max().unwrap_or(0)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.relations.iter().position(|r| r.name == name)
    }

    pub fn all_unary(&self) -> bool {
        self.relations.iter().all(|r| r.arity == 1)
    }

    /// Text form: one `R <name> <arity>` line per relation.
    pub fn to_text(&self) -> String {
        self.relations
            .iter()
            .map(|r| format!("R {} {}\n", r.name, r.arity))
            .collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut rels = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                ["R", name, arity] => {
                    let arity = arity
                        .parse::<usize>()
                        .map_err(|_| Error::parse(lineno + 1, format!("bad arity {arity:?}")))?;
                    rels.push((name.to_string(), arity));
                }
                _ => return Err(Error::parse(lineno + 1, "expected `R <name> <arity>`")),
            }
        }
        Signature::new(rels)
    }

    /// Command-line form: semicolon-separated `name arity` pairs, e.g.
    /// `"R 3; S 1; T 1"`.
    pub fn parse_inline(text: &str) -> Result<Self> {
        let mut rels = Vec::new();
        for (i, item) in text.split(';').enumerate() {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let parts: Vec<&str> = item.split_whitespace().collect();
            match parts.as_slice() {
                [name, arity] => {
                    let arity = arity
                        .parse::<usize>()
                        .map_err(|_| Error::parse(i + 1, format!("bad arity {arity:?}")))?;
                    rels.push((name.to_string(), arity));
                }
                _ => return Err(Error::parse(i + 1, "expected `name arity`")),
            }
        }
        Signature::new(rels)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .relations
            .iter()
            .map(|r| format!("{} {}", r.name, r.arity))
            .collect();
        write!(f, "{}", items.join("; "))
    }
}
