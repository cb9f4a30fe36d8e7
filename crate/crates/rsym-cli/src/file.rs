//! JSON presentation files.
//!
//! ```json
//! {
//!   "pregroup": { "free_product": { "factors": [ { "cyclic": { "generator": "x", "order": 2 } },
//!                                                { "cyclic": { "generator": "y", "order": 3 } } ],
//!                                   "free": [] } },
//!   "generators": ["x", "y"],
//!   "relators": ["(x y)^7"]
//! }
//! ```
//!
//! A pregroup can instead be an explicit `table` with `elements`, `sigma` and `mult`, where
//! `mult` rows hold element names or `null` for undefined products. Element 0 is the identity.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use rsym::presentation::Degeneracy;
use rsym::words::Lexicon;
use rsym::{preprocess, Elem, FiniteGroup, Pregroup, Presentation, Word};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub pregroup: PregroupDef,
    /// Letters allowed in relators, with their inverses. Every letter when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    pub relators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PregroupDef {
    FreeProduct {
        #[serde(default)]
        factors: Vec<FactorDef>,
        #[serde(default)]
        free: Vec<String>,
    },
    Table {
        elements: Vec<String>,
        sigma: Vec<String>,
        mult: Vec<Vec<Option<String>>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum FactorDef {
    Cyclic { generator: String, order: usize },
    /// A Cayley table over element names; the first element is the identity.
    Group { name: String, elements: Vec<String>, table: Vec<Vec<String>> },
}

/// A message tied to a position in the file when one is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadError {
    pub path: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "{}:{l}:{c}: {}", self.path, self.message),
            (Some(l), None) => write!(f, "{}:{l}: {}", self.path, self.message),
            _ => write!(f, "{}: {}", self.path, self.message),
        }
    }
}

impl std::error::Error for LoadError {}

/// A validated, preprocessed presentation.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub pres: Presentation,
    /// Preprocessing steps, in order.
    pub log: Vec<String>,
    pub untwisted: bool,
}

impl Loaded {
    /// Parses a word over every letter of the (possibly preprocessed) pregroup.
    pub fn parse_word(&self, s: &str) -> Result<Word, String> {
        Lexicon::new(self.pres.pregroup()).parse(s).map_err(|e| e.to_string())
    }
}

struct Source<'a> {
    path: String,
    text: &'a str,
}

impl Source<'_> {
    fn err(&self, at: Option<usize>, message: impl Into<String>) -> LoadError {
        let (line, column) = match at {
            Some(off) => {
                let before = &self.text[..off];
                let line = before.matches('\n').count() + 1;
                let column = before.rfind('\n').map_or(off, |nl| off - nl - 1) + 1;
                (Some(line), Some(column))
            }
            None => (None, None),
        };
        LoadError { path: self.path.clone(), line, column, message: message.into() }
    }

    /// Byte offset of `key` as an object key.
    fn key(&self, key: &str) -> Option<usize> {
        self.text.find(&format!("\"{key}\""))
    }

    /// Byte offset of the string literal `value` after `key`.
    fn value_after(&self, key: &str, value: &str) -> Option<usize> {
        let start = self.key(key)?;
        let lit = serde_json::to_string(value).ok()?;
        self.text[start..].find(&lit).map(|i| start + i)
    }
}

pub fn load_presentation_file(path: &Path) -> Result<Loaded, LoadError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path)
        .map_err(|e| LoadError { path: shown.clone(), line: None, column: None, message: e.to_string() })?;
    load_presentation_str(&shown, &text)
}

pub fn load_presentation_str(path: &str, text: &str) -> Result<Loaded, LoadError> {
    let src = Source { path: path.to_string(), text };
    let file: PresentationFile = serde_json::from_str(text).map_err(|e| LoadError {
        path: path.to_string(),
        line: Some(e.line()),
        column: Some(e.column()),
        message: e.to_string(),
    })?;
    let pg = build_pregroup(&src, &file.pregroup)?;
    let violations = pg.validate_axioms();
    if !violations.is_empty() {
        let mut parts: Vec<String> = Vec::new();
        let mut seen = Vec::new();
        for v in &violations {
            if !seen.contains(&v.axiom) {
                seen.push(v.axiom);
                let names: Vec<&str> = v.witness.iter().map(|&e| pg.name(e)).collect();
                parts.push(format!("{} at ({})", v.axiom, names.join(", ")));
            }
        }
        return Err(src.err(src.key("pregroup"), format!("pregroup fails {}", parts.join("; "))));
    }

    let letters: Vec<Elem> = match &file.generators {
        None => pg.letters().collect(),
        Some(gens) => {
            let mut out = Vec::new();
            for g in gens {
                match pg.lookup(g) {
                    Some(e) if e != rsym::IDENTITY => out.push(e),
                    _ => return Err(src.err(src.value_after("generators", g), format!("unknown generator {g:?}"))),
                }
            }
            out
        }
    };
    let lex = Lexicon::restricted(&pg, &letters);
    let mut rels = Vec::new();
    for r in &file.relators {
        let at = src.value_after("relators", r);
        let w = lex.parse(r).map_err(|e| {
            let message = match &e {
                rsym::words::ParseError::Unknown { token, .. } => format!("undeclared generator {token:?} in relator {r:?}"),
                _ => format!("relator {r:?}: {e}"),
            };
            src.err(at, message)
        })?;
        rels.push(w);
    }
    let pre = preprocess(&pg, &rels).map_err(|e| src.err(src.key("relators"), e.to_string()))?;
    if let Some(d) = pre.degenerate {
        let msg = match d {
            Degeneracy::TrivialGenerator(g) => format!("relators force generator {g} to be trivial"),
            Degeneracy::NoRelators => "no relators remain after preprocessing".to_string(),
        };
        return Err(src.err(src.key("relators"), msg));
    }
    let pres = Presentation::new(pre.pregroup, pre.relators).map_err(|e| src.err(src.key("relators"), e.to_string()))?;
    let untwisted = pres.check_untwisted();
    Ok(Loaded { pres, log: pre.log, untwisted })
}

fn build_pregroup(src: &Source, def: &PregroupDef) -> Result<Pregroup, LoadError> {
    match def {
        PregroupDef::FreeProduct { factors, free } => {
            let mut groups = Vec::new();
            for f in factors {
                groups.push(match f {
                    FactorDef::Cyclic { generator, order } => {
                        if *order < 2 {
                            return Err(src.err(src.value_after("cyclic", generator), "cyclic factors need order at least 2"));
                        }
                        FiniteGroup::cyclic(generator, *order)
                    }
                    FactorDef::Group { name, elements, table } => {
                        let idx: HashMap<&str, usize> = elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
                        let mut rows = Vec::new();
                        for row in table {
                            let mut r = Vec::new();
                            for e in row {
                                let Some(&i) = idx.get(e.as_str()) else {
                                    return Err(src.err(src.value_after(name, e), format!("factor {name}: unknown element {e:?}")));
                                };
                                r.push(i);
                            }
                            rows.push(r);
                        }
                        FiniteGroup { name: name.clone(), elements: elements.clone(), table: rows }
                    }
                });
            }
            Pregroup::free_product(&groups, free).map_err(|e| src.err(src.key("free_product"), e.to_string()))
        }
        PregroupDef::Table { elements, sigma, mult } => {
            let at = src.key("table");
            let idx: HashMap<&str, Elem> = elements.iter().enumerate().map(|(i, e)| (e.as_str(), i as Elem)).collect();
            let look = |key: &str, e: &str| {
                idx.get(e).copied().ok_or_else(|| src.err(src.value_after(key, e), format!("unknown element {e:?}")))
            };
            let sig = sigma.iter().map(|e| look("sigma", e)).collect::<Result<Vec<_>, _>>()?;
            if mult.len() != elements.len() {
                return Err(src.err(src.key("mult"), format!("mult has {} rows, expected {}", mult.len(), elements.len())));
            }
            let mut flat = Vec::new();
            for row in mult {
                if row.len() != elements.len() {
                    return Err(src.err(src.key("mult"), format!("mult row has {} entries, expected {}", row.len(), elements.len())));
                }
                for e in row {
                    flat.push(e.as_deref().map(|e| look("mult", e)).transpose()?);
                }
            }
            Pregroup::from_parts(elements.clone(), sig, flat).map_err(|e| src.err(at, e.to_string()))
        }
    }
}
