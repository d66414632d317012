//! Faces of the simplex on the generators and field-coefficient chains.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::lattice::LcmLattice;
use crate::monomial::{subset_label, subset_members, Monomial, MonomialIdeal, Subset};

/// A face as a vertex bitset. Ordered by cardinality, then lexicographically
/// on the sorted vertex list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Face(pub Subset);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_vertices(vs: &[usize]) -> Face {
        Face(vs.iter().fold(0, |acc, v| acc | 1 << (v - 1)))
    }

    pub fn size(self) -> usize {
        self.0.count_ones() as usize
    }

    /// 1-based sorted vertices.
    pub fn vertices(self) -> Vec<usize> {
        subset_members(self.0).map(|i| i + 1).collect()
    }

    pub fn is_subset_of(self, s: Subset) -> bool {
        self.0 & !s == 0
    }

    /// Codimension-one faces with their boundary signs.
    pub fn boundary_terms(self) -> Vec<(Face, i64)> {
        subset_members(self.0)
            .enumerate()
            .map(|(pos, v)| (Face(self.0 & !(1 << v)), if pos % 2 == 0 { 1 } else { -1 }))
            .collect()
    }

    /// All subsets of `s` with exactly `k` elements, in face order.
    pub fn subsets_of_size(s: Subset, k: usize) -> Vec<Face> {
        let members: Vec<usize> = subset_members(s).collect();
        let n = members.len();
        let mut out = Vec::new();
        if k > n {
            return out;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(Face(idx.iter().fold(0, |acc, &i| acc | 1 << members[i])));
            let mut j = k;
            while j > 0 && idx[j - 1] == n - k + j - 1 {
                j -= 1;
            }
            if j == 0 {
                return out;
            }
            idx[j - 1] += 1;
            for t in j..k {
                idx[t] = idx[t - 1] + 1;
            }
        }
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.vertices().cmp(&other.vertices()))
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", subset_label(self.0))
    }
}

/// A homogeneous combination of faces of a fixed cardinality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    size: usize,
    field: FieldSpec,
    terms: BTreeMap<Face, Scalar>,
}

impl Chain {
    pub fn zero(field: FieldSpec, size: usize) -> Self {
        Chain { size, field, terms: BTreeMap::new() }
    }

    pub fn face(field: FieldSpec, f: Face) -> Self {
        let mut c = Chain::zero(field, f.size());
        c.terms.insert(f, field.one());
        c
    }

    pub fn from_terms(field: FieldSpec, size: usize, terms: Vec<(Face, Scalar)>) -> Result<Self> {
        let mut c = Chain::zero(field, size);
        for (f, s) in terms {
            c.add_term(f, &s)?;
        }
        Ok(c)
    }

    /// Builds a chain from coordinates over an ordered face list.
    pub fn from_coords(field: FieldSpec, size: usize, faces: &[Face], coords: &[Scalar]) -> Self {
        let mut c = Chain::zero(field, size);
        for (f, s) in faces.iter().zip(coords) {
            c.add_term(*f, s).expect("face size matches");
        }
        c
    }

    /// Number of vertices of each face; the simplicial dimension plus one.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dim(&self) -> isize {
        self.size as isize - 1
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Face, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, f: Face) -> Scalar {
        self.terms.get(&f).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, f: Face, s: &Scalar) -> Result<()> {
        if f.size() != self.size {
            return Err(Error::Precondition(format!(
                "face {f} has {} vertices, chain expects {}",
                f.size(),
                self.size
            )));
        }
        let e = self.terms.entry(f).or_insert_with(|| self.field.zero());
        *e += s;
        if e.is_zero() {
            self.terms.remove(&f);
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &Chain, s: &Scalar) -> Result<()> {
        if other.size != self.size {
            return Err(Error::Precondition("adding chains of different dimension".into()));
        }
        for (f, c) in &other.terms {
            self.add_term(*f, &(c * s))?;
        }
        Ok(())
    }

    pub fn scaled(&self, s: &Scalar) -> Chain {
        let mut c = Chain::zero(self.field, self.size);
        if !s.is_zero() {
            for (f, v) in &self.terms {
                c.terms.insert(*f, v * s);
            }
        }
        c
    }

    /// Coordinates over an ordered face list; `None` if a face is missing.
    pub fn coords(&self, faces: &[Face]) -> Option<Vec<Scalar>> {
        let index: BTreeMap<Face, usize> = faces.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let mut v = vec![self.field.zero(); faces.len()];
        for (f, s) in &self.terms {
            v[*index.get(f)?] = s.clone();
        }
        Some(v)
    }

    /// Augmented simplicial boundary; the boundary of a vertex is the empty face.
    pub fn boundary(&self) -> Result<Chain> {
        if self.size == 0 {
            return Err(Error::Precondition("boundary of the empty face".into()));
        }
        let mut out = Chain::zero(self.field, self.size - 1);
        for (f, s) in &self.terms {
            for (g, sign) in f.boundary_terms() {
                out.add_term(g, &(s * &self.field.from_i64(sign)))?;
            }
        }
        Ok(out)
    }

    pub fn support(&self) -> Subset {
        self.terms.keys().fold(0, |acc, f| acc | f.0)
    }

    fn nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::Precondition("operation undefined on the zero chain".into()))
        } else {
            Ok(())
        }
    }

    /// lcm of the multidegrees of the faces.
    pub fn mdeg(&self, ideal: &MonomialIdeal) -> Result<Monomial> {
        self.nonzero()?;
        ideal.mdeg_of_subset(self.support())
    }

    /// Terms whose face multidegree equals the chain's multidegree.
    pub fn initial_part(&self, ideal: &MonomialIdeal) -> Result<Chain> {
        let m = self.mdeg(ideal)?;
        let mut out = Chain::zero(self.field, self.size);
        for (f, s) in &self.terms {
            if ideal.mdeg_of_subset(f.0)? == m {
                out.terms.insert(*f, s.clone());
            }
        }
        Ok(out)
    }

    /// True if some face has closure equal to the closure of the support and
    /// both are the label of `m`.
    pub fn is_taylor_chain_at(&self, lat: &LcmLattice, m: usize) -> Result<bool> {
        self.nonzero()?;
        let target = lat.element(m).label;
        if lat.closure(self.support())? != target {
            return Ok(false);
        }
        for f in self.terms.keys() {
            if lat.closure(f.0)? == target {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Parses `1245-1456+1234`, `2/3*12-13`, `-1+3` or `∅`. Faces use single
    /// digits, or braces with commas for larger indices: `{1,12}`.
    pub fn parse(field: FieldSpec, text: &str) -> Result<Chain> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s.trim_start_matches('[').trim_end_matches(']').replace('−', "-");
        if s.is_empty() {
            return Err(Error::Parse("empty chain".into()));
        }
        let mut terms: Vec<(Face, Scalar)> = Vec::new();
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let mut sign = 1;
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = -1;
                }
                i += 1;
            } else if !terms.is_empty() {
                return Err(Error::Parse(format!("expected + or - at position {i} in `{s}`")));
            }
            let start = i;
            while i < chars.len() && chars[i] != '+' && chars[i] != '-' {
                if chars[i] == '{' {
                    while i < chars.len() && chars[i] != '}' {
                        i += 1;
                    }
                }
                i += 1;
            }
            let term: String = chars[start..i.min(chars.len())].iter().collect();
            let (coef, face_txt) = match term.rsplit_once(['*', '·']) {
                Some((c, f)) => (field.parse_scalar(c)?, f.to_string()),
                None => (field.one(), term.clone()),
            };
            let face = parse_face(&face_txt)?;
            terms.push((face, &coef * &field.from_i64(sign)));
        }
        let size = terms[0].0.size();
        Chain::from_terms(field, size, terms).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn parse_face(t: &str) -> Result<Face> {
    if t == "∅" || t == "()" || t == "e" {
        return Ok(Face::EMPTY);
    }
    let vs: Vec<usize> = if let Some(inner) = t.strip_prefix('{').and_then(|x| x.strip_suffix('}')) {
        inner
            .split(',')
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<usize>().map_err(|_| Error::Parse(format!("bad vertex `{x}`"))))
            .collect::<Result<_>>()?
    } else {
        t.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::Parse(format!("bad face `{t}`")))
            })
            .collect::<Result<_>>()?
    };
    if vs.iter().any(|&v| v == 0 || v > 63) {
        return Err(Error::Parse(format!("vertex out of range in `{t}`")));
    }
    let f = Face::from_vertices(&vs);
    if f.size() != vs.len() {
        return Err(Error::Parse(format!("repeated vertex in `{t}`")));
    }
    Ok(f)
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (face, s)) in self.terms.iter().enumerate() {
            let neg = s.is_negative();
            let abs = if neg { -s } else { s.clone() };
            if neg {
                write!(f, "-")?;
            } else if k > 0 {
                write!(f, "+")?;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "{face}")?;
        }
        Ok(())
    }
}
