use std::fmt;

use super::scalar::Field;
use super::space::SpaceRef;
use super::sparse::Vector;
use crate::error::{Error, Result};

/// A vector together with the space it lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element<S: Field> {
    pub space: SpaceRef,
    pub coeffs: Vector<S>,
}

impl<S: Field> Element<S> {
    pub fn new(space: SpaceRef, coeffs: Vector<S>) -> Self {
        Element { space, coeffs }
    }

    pub fn zero(space: SpaceRef) -> Self {
        Element { space, coeffs: Vector::new() }
    }

    pub fn basis(space: SpaceRef, name: &str) -> Result<Self> {
        let i = space.lookup(name)?;
        Ok(Element { space, coeffs: Vector::unit(i) })
    }

    pub fn from_names(space: SpaceRef, terms: &[(&str, S)]) -> Result<Self> {
        let mut coeffs = Vector::new();
        for (name, c) in terms {
            coeffs.add_term(space.lookup(name)?, c.clone());
        }
        Ok(Element { space, coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// The common degree of all nonzero terms; `Ok(None)` for zero.
    pub fn degree(&self) -> Result<Option<i64>> {
        homogeneous_degree(&self.space, &self.coeffs)
    }

    /// Parses the compact syntax `name:coeff,name:coeff`. Coefficients are
    /// rationals `p/q`; a bare `name` means coefficient 1. Commas inside
    /// brackets belong to the name, so `[a,b]:2` is one term.
    pub fn parse(space: SpaceRef, text: &str) -> Result<Self> {
        let mut coeffs = Vector::new();
        for term in split_top_level(text) {
            let term = term.trim();
            if term.is_empty() {
                continue;
            }
            let (name, coeff) = match rsplit_top_level_colon(term) {
                Some((name, coeff)) => {
                    let c = S::parse_rational(coeff).ok_or_else(|| {
                        Error::Parse(format!("bad coefficient `{coeff}` in `{term}`"))
                    })?;
                    (name.trim(), c)
                }
                None => (term, S::one()),
            };
            coeffs.add_term(space.lookup(name)?, coeff);
        }
        Ok(Element { space, coeffs })
    }
}

/// Degree shared by every term of `v`, or an error naming two clashing terms.
pub fn homogeneous_degree<S: Field>(space: &super::space::GradedSpace, v: &Vector<S>) -> Result<Option<i64>> {
    let mut degree: Option<(i64, usize)> = None;
    for &i in v.keys() {
        let d = space.degree(i);
        match degree {
            None => degree = Some((d, i)),
            Some((d0, i0)) if d0 != d => {
                return Err(Error::NotHomogeneous(format!(
                    "{} has degree {d0} but {} has degree {d}",
                    space.name(i0),
                    space.name(i)
                )))
            }
            _ => {}
        }
    }
    Ok(degree.map(|(d, _)| d))
}

fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

fn rsplit_top_level_colon(term: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    let mut found = None;
    for (i, ch) in term.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ':' if depth == 0 => found = Some(i),
            _ => {}
        }
    }
    found.map(|i| (&term[..i], &term[i + 1..]))
}

/// Renders `v` as `name:coeff,...` (the inverse of [`Element::parse`]).
pub fn format_vector<S: Field>(space: &super::space::GradedSpace, v: &Vector<S>) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    v.iter()
        .map(|(i, c)| format!("{}:{}", space.name(*i), c.to_rational_string()))
        .collect::<Vec<_>>()
        .join(",")
}

impl<S: Field> fmt::Display for Element<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_vector(&self.space, &self.coeffs))
    }
}
