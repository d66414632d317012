//! Text formats: ideal files, monomials, and JSON dumps.

use serde::{Deserialize, Serialize};

use crate::chain::{Chain, Face};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::lattice::LcmLattice;
use crate::matrix::Matrix;
use crate::monomial::{subset_members, Monomial, MonomialIdeal};
use crate::resolution::{BettiTable, MgElement, MultigradedComplex};
use crate::vcomplex::Label;

/// Parses a monomial such as `a^2*b` over the given variable names.
pub fn parse_monomial(names: &[String], text: &str) -> Result<Monomial> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut exps = vec![0u32; names.len()];
    if t == "1" {
        return Ok(Monomial::new(exps));
    }
    if t.is_empty() {
        return Err(Error::Parse("empty monomial".into()));
    }
    for factor in t.split('*') {
        let (var, e) = match factor.split_once('^') {
            Some((v, e)) => {
                let e: u32 = e
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                (v, e)
            }
            None => (factor, 1),
        };
        let idx = names
            .iter()
            .position(|n| n == var)
            .ok_or_else(|| Error::Parse(format!("undeclared variable `{var}` in `{text}`")))?;
        exps[idx] += e;
    }
    Ok(Monomial::new(exps))
}

/// Contents of an ideal file before minimality checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFile {
    pub vars: Vec<String>,
    pub gens: Vec<Monomial>,
    pub field: Option<FieldSpec>,
}

/// Parses `vars a b c; gens a^2 a*b b*c c^2` (statements separated by `;` or
/// newlines, `#` comments, optional `char p`).
pub fn parse_ideal_file(text: &str) -> Result<IdealFile> {
    let mut vars: Option<Vec<String>> = None;
    let mut gen_words: Vec<(usize, usize, String)> = Vec::new();
    let mut field = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut col = 0;
        for stmt in line.split(';') {
            let start_col = col + 1 + (stmt.len() - stmt.trim_start().len());
            col += stmt.len() + 1;
            let mut words = stmt.split_whitespace();
            let Some(kw) = words.next() else { continue };
            let rest: Vec<String> = words.map(str::to_string).collect();
            match kw {
                "vars" => {
                    if vars.is_some() {
                        return Err(Error::Parse(format!(
                            "line {}, column {start_col}: variables declared twice",
                            lineno + 1
                        )));
                    }
                    let mut seen = std::collections::HashSet::new();
                    for v in &rest {
                        if !seen.insert(v.clone()) {
                            return Err(Error::Parse(format!(
                                "line {}: variable `{v}` declared twice",
                                lineno + 1
                            )));
                        }
                    }
                    vars = Some(rest);
                }
                "gens" => {
                    for w in rest {
                        gen_words.push((lineno + 1, start_col, w));
                    }
                }
                "char" => {
                    let p: u32 = rest
                        .first()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| Error::Parse(format!("line {}: bad characteristic", lineno + 1)))?;
                    field = Some(FieldSpec::new(p)?);
                }
                other => {
                    return Err(Error::Parse(format!(
                        "line {}, column {start_col}: unknown statement `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
    }
    let vars = match vars {
        Some(v) => v,
        None => infer_vars(&gen_words),
    };
    let gens = gen_words
        .iter()
        .map(|(l, c, w)| {
            parse_monomial(&vars, w).map_err(|e| Error::Parse(format!("line {l}, column {c}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IdealFile { vars, gens, field })
}

fn infer_vars(words: &[(usize, usize, String)]) -> Vec<String> {
    let mut vars: Vec<String> = Vec::new();
    for (_, _, w) in words {
        for f in w.split('*') {
            let v = f.split('^').next().unwrap_or("").trim().to_string();
            if !v.is_empty() && v != "1" && !vars.contains(&v) {
                vars.push(v);
            }
        }
    }
    vars
}

/// Parses an ideal file and insists on a minimal generating set.
pub fn parse_ideal(text: &str) -> Result<MonomialIdeal> {
    let f = parse_ideal_file(text)?;
    MonomialIdeal::new(f.vars, f.gens)
}

/// Writes an ideal in the file grammar accepted by [`parse_ideal`].
pub fn format_ideal_file(ideal: &MonomialIdeal) -> String {
    let gens: Vec<String> = ideal.gens().iter().map(|g| ideal.format(g)).collect();
    format!("vars {}; gens {}", ideal.names().join(" "), gens.join(" "))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeElementJson {
    pub id: usize,
    pub mdeg: String,
    #[serde(rename = "A")]
    pub a: Vec<usize>,
    pub covers: Vec<usize>,
}

/// JSON-ready view of the lattice; `covers` lists the covered elements.
pub fn lattice_json(lat: &LcmLattice) -> Vec<LatticeElementJson> {
    lat.elements()
        .iter()
        .map(|e| LatticeElementJson {
            id: e.id,
            mdeg: lat.ideal().format(&e.mdeg),
            a: subset_members(e.label).map(|i| i + 1).collect(),
            covers: e.lower.clone(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainJson {
    pub size: usize,
    /// `(vertices, coefficient)` with 1-based vertices.
    pub terms: Vec<(Vec<usize>, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelJson {
    Chain(ChainJson),
    Name(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElementJson {
    pub mdeg: String,
    pub label: LabelJson,
}

/// Machine format of a multigraded complex. `frames[i - 1]` holds the rows of
/// the scalar matrix of `d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionJson {
    pub characteristic: u32,
    pub vars: Vec<String>,
    pub gens: Vec<String>,
    pub levels: Vec<Vec<BasisElementJson>>,
    pub frames: Vec<Vec<Vec<String>>>,
}

fn chain_json(c: &Chain) -> ChainJson {
    ChainJson {
        size: c.size(),
        terms: c
            .terms()
            .map(|(f, s)| (f.vertices(), s.to_string()))
            .collect(),
    }
}

fn chain_from_json(field: FieldSpec, c: &ChainJson) -> Result<Chain> {
    let terms = c
        .terms
        .iter()
        .map(|(vs, s)| {
            if vs.iter().any(|&v| v == 0 || v > 63) {
                return Err(Error::Parse(format!("vertex out of range in {vs:?}")));
            }
            Ok((Face::from_vertices(vs), field.parse_scalar(s)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Chain::from_terms(field, c.size, terms).map_err(|e| Error::Parse(e.to_string()))
}

pub fn resolution_to_json(f: &MultigradedComplex) -> ResolutionJson {
    let ideal = f.ideal();
    ResolutionJson {
        characteristic: f.field().characteristic,
        vars: ideal.names().to_vec(),
        gens: ideal.gens().iter().map(|g| ideal.format(g)).collect(),
        levels: f
            .levels()
            .iter()
            .map(|l| {
                l.iter()
                    .map(|e| BasisElementJson {
                        mdeg: ideal.format(&e.mdeg),
                        label: match &e.label {
                            Label::Chain(c) => LabelJson::Chain(chain_json(c)),
                            Label::Name(n) => LabelJson::Name(n.clone()),
                        },
                    })
                    .collect()
            })
            .collect(),
        frames: f
            .frames()
            .iter()
            .map(|m| {
                (0..m.rows())
                    .map(|r| m.row(r).iter().map(|s| s.to_string()).collect())
                    .collect()
            })
            .collect(),
    }
}

pub fn resolution_from_json(j: &ResolutionJson) -> Result<MultigradedComplex> {
    let field = FieldSpec::new(j.characteristic)?;
    let gens = j
        .gens
        .iter()
        .map(|g| parse_monomial(&j.vars, g))
        .collect::<Result<Vec<_>>>()?;
    let ideal = MonomialIdeal::new(j.vars.clone(), gens)?;
    let mut levels = Vec::new();
    for l in &j.levels {
        let mut lvl = Vec::new();
        for e in l {
            let label = match &e.label {
                LabelJson::Chain(c) => Label::Chain(chain_from_json(field, c)?),
                LabelJson::Name(n) => Label::Name(n.clone()),
            };
            lvl.push(MgElement { label, mdeg: parse_monomial(&j.vars, &e.mdeg)? });
        }
        levels.push(lvl);
    }
    let mut frames = Vec::new();
    for (k, rows) in j.frames.iter().enumerate() {
        let cols = levels.get(k + 1).map_or(0, |l| l.len());
        let mut parsed = Vec::new();
        for row in rows {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "frame {} has a row of length {}, expected {cols}",
                    k + 1,
                    row.len()
                )));
            }
            parsed.push(row.iter().map(|s| field.parse_scalar(s)).collect::<Result<Vec<_>>>()?);
        }
        frames.push(Matrix::from_rows(field, parsed, cols));
    }
    MultigradedComplex::new(ideal, field, levels, frames)
}

pub fn write_resolution(f: &MultigradedComplex) -> String {
    serde_json::to_string_pretty(&resolution_to_json(f)).expect("serializable")
}

pub fn read_resolution(text: &str) -> Result<MultigradedComplex> {
    let j: ResolutionJson = serde_json::from_str(text).map_err(|e| Error::Parse(format!("resolution JSON: {e}")))?;
    resolution_from_json(&j)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntryJson {
    pub i: usize,
    pub mdeg: String,
    #[serde(rename = "A")]
    pub a: Vec<usize>,
    pub b: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTableJson {
    pub totals: Vec<usize>,
    pub entries: Vec<BettiEntryJson>,
}

pub fn betti_json(t: &BettiTable, ideal: &MonomialIdeal) -> BettiTableJson {
    BettiTableJson {
        totals: t.totals(),
        entries: t
            .entries
            .iter()
            .map(|((i, m), b)| BettiEntryJson {
                i: *i,
                mdeg: ideal.format(m),
                a: subset_members(ideal.support_of(m)).map(|k| k + 1).collect(),
                b: *b,
            })
            .collect(),
    }
}
