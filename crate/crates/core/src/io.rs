//! JSON formats for fields, matrices, codes, profiles, designs and patterns.
//!
//! Fields are written "p" or "p^e". Prime-field entries are integers (negative ones are
//! reduced); extension-field entries are either the index encoding or a coefficient
//! array, constant term first. Rationals are strings "n/d" or integers.

use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize, Serializer};

use crate::codes::LinearCode;
use crate::designs::SubspaceDesign;
use crate::error::{Error, Result};
use crate::field::{format_rational, parse_rational, Field, FiniteField, Gf};
use crate::matrix::Matrix;
use crate::ntheory::factorize;
use crate::profiles::LocalProfile;
use crate::subspace::Subspace;
use crate::tensor::ErasurePattern;

pub fn ser_rational<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

/// Parses JSON, reporting the failing path on error.
pub fn from_json<T: DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::Parse {
            location: if path == "." { what.to_string() } else { format!("{what}: {path}") },
            message: e.into_inner().to_string(),
        }
    })
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum ElemJson {
    Int(i64),
    Coeffs(Vec<u64>),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum FieldJson {
    Order(u64),
    Spec(String),
}

pub fn parse_field(f: &FieldJson) -> Result<Gf> {
    match f {
        FieldJson::Spec(s) => Gf::parse(s),
        FieldJson::Order(q) => {
            let fs = factorize(*q);
            match fs.as_slice() {
                [(p, e)] => Gf::new(*p, *e),
                _ => Err(Error::Parse { location: "field".into(), message: format!("{q} is not a prime power") }),
            }
        }
    }
}

pub fn field_spec(f: &Gf) -> String {
    if f.e() == 1 {
        f.p().to_string()
    } else {
        format!("{}^{}", f.p(), f.e())
    }
}

fn parse_elem(field: &Gf, v: &ElemJson, at: &str) -> Result<u64> {
    let bad = |message: String| Error::Parse { location: at.to_string(), message };
    match v {
        ElemJson::Int(x) => {
            if field.e() == 1 {
                Ok(field.from_i64(*x))
            } else if *x >= 0 && (*x as u64) < field.order() {
                Ok(*x as u64)
            } else {
                Err(bad(format!("index {x} outside F_{}", field.order())))
            }
        }
        ElemJson::Coeffs(c) => {
            if c.iter().any(|&d| d >= field.p()) || c.len() > field.e() as usize {
                return Err(bad(format!("coefficients {c:?} do not describe an element of F_{}", field.order())));
            }
            field.from_coefficients(c)
        }
        ElemJson::Text(s) => {
            let r = parse_rational(s).map_err(|_| bad(format!("cannot read {s:?} as a field element")))?;
            let num = field.from_bigint(r.numer());
            let den = field.from_bigint(r.denom());
            field.div(&num, &den).ok_or_else(|| bad(format!("{s} has a denominator divisible by p")))
        }
    }
}

pub fn elem_json(field: &Gf, x: u64) -> ElemJson {
    if field.e() == 1 {
        ElemJson::Int(x as i64)
    } else {
        ElemJson::Coeffs(field.coefficients(x))
    }
}

pub fn parse_matrix(field: &Gf, cols: usize, rows: &[Vec<ElemJson>], at: &str) -> Result<Matrix<Gf>> {
    let mut out = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::Parse { location: format!("{at}[{r}]"), message: format!("expected {cols} entries, got {}", row.len()) });
        }
        out.push(row.iter().enumerate().map(|(c, v)| parse_elem(field, v, &format!("{at}[{r}][{c}]"))).collect::<Result<Vec<_>>>()?);
    }
    Matrix::from_rows(field.clone(), cols, out)
}

pub fn matrix_json(m: &Matrix<Gf>) -> Vec<Vec<ElemJson>> {
    m.to_rows().into_iter().map(|r| r.into_iter().map(|x| elem_json(m.field(), x)).collect()).collect()
}

/// {field, k, n, s, generator}; n counts folded positions, s defaults to 1.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    pub field: FieldJson,
    pub k: usize,
    pub n: usize,
    #[serde(default = "one")]
    pub s: usize,
    pub generator: Vec<Vec<ElemJson>>,
}

fn one() -> usize {
    1
}

impl CodeFile {
    pub fn parse(text: &str) -> Result<LinearCode<Gf>> {
        from_json::<CodeFile>(text, "code")?.build()
    }

    pub fn build(&self) -> Result<LinearCode<Gf>> {
        let field = parse_field(&self.field)?;
        if self.generator.len() != self.k {
            return Err(Error::Parse {
                location: "code: generator".into(),
                message: format!("k = {} but {} rows given", self.k, self.generator.len()),
            });
        }
        let g = parse_matrix(&field, self.n * self.s, &self.generator, "code: generator")?;
        LinearCode::new(g, self.s)
    }

    pub fn from_code(code: &LinearCode<Gf>) -> Self {
        CodeFile {
            field: FieldJson::Spec(field_spec(code.field())),
            k: code.k(),
            n: code.n(),
            s: code.s(),
            generator: matrix_json(code.generator()),
        }
    }
}

/// {q, b, n, subspaces}: each subspace is given by a spanning list of vectors in F^b.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileFile {
    pub q: FieldJson,
    pub b: usize,
    pub n: usize,
    pub subspaces: Vec<Vec<Vec<ElemJson>>>,
}

impl ProfileFile {
    pub fn parse(text: &str) -> Result<LocalProfile<Gf>> {
        from_json::<ProfileFile>(text, "profile")?.build()
    }

    pub fn build(&self) -> Result<LocalProfile<Gf>> {
        let field = parse_field(&self.q)?;
        if self.subspaces.len() != self.n {
            return Err(Error::Parse {
                location: "profile: subspaces".into(),
                message: format!("n = {} but {} subspaces given", self.n, self.subspaces.len()),
            });
        }
        let vs = self
            .subspaces
            .iter()
            .enumerate()
            .map(|(i, rows)| Ok(Subspace::from_matrix(&parse_matrix(&field, self.b, rows, &format!("profile: subspaces[{i}]"))?)))
            .collect::<Result<Vec<_>>>()?;
        LocalProfile::new(field, self.b, vs)
    }

    pub fn from_profile(p: &LocalProfile<Gf>) -> Self {
        ProfileFile {
            q: FieldJson::Spec(field_spec(p.field())),
            b: p.b(),
            n: p.n(),
            subspaces: p.subspaces().iter().map(|v| matrix_json(v.basis())).collect(),
        }
    }
}

/// {field, k, s, subspaces}: H_i by spanning vectors in F^k.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DesignFile {
    pub field: FieldJson,
    pub k: usize,
    pub s: usize,
    pub subspaces: Vec<Vec<Vec<ElemJson>>>,
}

impl DesignFile {
    pub fn parse(text: &str) -> Result<SubspaceDesign<Gf>> {
        from_json::<DesignFile>(text, "design")?.build()
    }

    pub fn build(&self) -> Result<SubspaceDesign<Gf>> {
        let field = parse_field(&self.field)?;
        let hs = self
            .subspaces
            .iter()
            .enumerate()
            .map(|(i, rows)| Ok(Subspace::from_matrix(&parse_matrix(&field, self.k, rows, &format!("design: subspaces[{i}]"))?)))
            .collect::<Result<Vec<_>>>()?;
        SubspaceDesign::new(field, self.k, self.s, hs)
    }

    pub fn from_design(d: &SubspaceDesign<Gf>) -> Self {
        DesignFile {
            field: FieldJson::Spec(field_spec(d.field())),
            k: d.k(),
            s: d.s(),
            subspaces: d.subspaces().iter().map(|h| matrix_json(h.basis())).collect(),
        }
    }
}

/// {m, n, cells}, cells 1-indexed [i, j] pairs.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PatternFile {
    pub m: usize,
    pub n: usize,
    pub cells: Vec<[usize; 2]>,
}

impl PatternFile {
    pub fn parse(text: &str) -> Result<ErasurePattern> {
        from_json::<PatternFile>(text, "pattern")?.build()
    }

    pub fn build(&self) -> Result<ErasurePattern> {
        let cells: Vec<(usize, usize)> = self.cells.iter().map(|c| (c[0], c[1])).collect();
        ErasurePattern::from_one_indexed(self.m, self.n, &cells).map_err(|e| Error::Parse { location: "pattern: cells".into(), message: e.to_string() })
    }

    pub fn from_pattern(e: &ErasurePattern) -> Self {
        PatternFile { m: e.m(), n: e.n(), cells: e.one_indexed().into_iter().map(|(i, j)| [i, j]).collect() }
    }
}

/// A subspace as its RREF basis rows, for reports.
pub fn subspace_json(u: &Subspace<Gf>) -> Vec<Vec<ElemJson>> {
    matrix_json(u.basis())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn code_roundtrip() {
        let text = r#"{"field": "7", "k": 2, "n": 3, "generator": [[1, 1, 1], [1, 2, -4]]}"#;
        let code = CodeFile::parse(text).unwrap();
        assert_eq!(code.generator().get(1, 2), &3);
        let again = CodeFile::from_code(&code).build().unwrap();
        assert_eq!(again, code);
    }

    #[test]
    fn extension_entries() {
        let text = r#"{"field": "3^2", "k": 1, "n": 2, "generator": [[[0, 1], 4]]}"#;
        let code = CodeFile::parse(text).unwrap();
        assert_eq!(code.generator().row(0), &[3, 4]);
    }

    #[test]
    fn errors_carry_locations() {
        let err = CodeFile::parse(r#"{"field": "7", "k": 1, "n": 2, "generator": [[1]]}"#).unwrap_err();
        assert!(matches!(&err, Error::Parse { location, .. } if location.contains("generator[0]")), "{err}");
        let err = PatternFile::parse(r#"{"m": 2, "n": 2, "cells": [[1, "x"]]}"#).unwrap_err();
        assert!(matches!(&err, Error::Parse { location, .. } if location.contains("cells")), "{err}");
        let err = PatternFile::parse(r#"{"m": 2, "n": 2, "cells": [[0, 1]]}"#).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn profile_with_integer_q() {
        let text = r#"{"q": 9, "b": 1, "n": 2, "subspaces": [[[1]], []]}"#;
        let p = ProfileFile::parse(text).unwrap();
        assert_eq!(p.field().order(), 9);
        assert_eq!(p.subspaces()[1].dim(), 0);
    }
}
