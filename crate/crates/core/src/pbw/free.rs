use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::expr::{self, Domain};
use crate::scalar::CycScalar;

/// A word in generator indices, ordered by length then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<usize>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of the free algebra on indexed generators.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FreeElement {
    terms: BTreeMap<Word, CycScalar>,
}

impl FreeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: CycScalar) -> Self {
        Self::word(Vec::new(), c)
    }

    pub fn word(w: Vec<usize>, c: CycScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Word(w), c);
        }
        FreeElement { terms }
    }

    pub fn generator(g: usize) -> Self {
        Self::word(vec![g], CycScalar::one())
    }

    pub fn terms(&self) -> &BTreeMap<Word, CycScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &[usize]) -> CycScalar {
        self.terms.get(&Word(w.to_vec())).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.0.len()).max()
    }

    pub fn leading(&self) -> Option<(&Word, &CycScalar)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, w: Word, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_default();
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        let mut out = FreeElement::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    /// Replaces every generator by an element and multiplies out.
    pub fn substitute(&self, images: &[FreeElement]) -> FreeElement {
        let mut out = FreeElement::zero();
        for (w, c) in &self.terms {
            let mut cur = FreeElement::scalar(c.clone());
            for &g in &w.0 {
                cur = &cur * &images[g];
            }
            out = &out + &cur;
        }
        out
    }

    pub fn from_expr(names: &[String], e: &expr::Expr) -> Result<Self> {
        expr::eval(&FreeDomain(names), e)
    }

    pub fn parse(names: &[String], s: &str) -> Result<Self> {
        expr::eval(&FreeDomain(names), &expr::parse(s)?)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let many = self.terms.len() > 1;
        let mut s = String::new();
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            let (neg, abs) = if c.is_negative_term() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let coef = if abs.is_simple_term() || (!many && w.0.is_empty()) {
                abs.to_string()
            } else {
                format!("({abs})")
            };
            let word = fmt_word(&w.0, names);
            if w.0.is_empty() {
                s.push_str(&coef);
            } else if abs.is_one() {
                s.push_str(&word);
            } else {
                s.push_str(&format!("{coef}*{word}"));
            }
        }
        s
    }
}

/// Writes a word with runs collapsed to powers, e.g. `v^2*u`.
pub(crate) fn fmt_word(w: &[usize], names: &[String]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let name = &names[w[i]];
        if j - i == 1 {
            parts.push(name.clone());
        } else {
            parts.push(format!("{}^{}", name, j - i));
        }
        i = j;
    }
    parts.join("*")
}

impl fmt::Debug for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..16).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.fmt_with(&names))
    }
}

impl<'a> std::ops::Add<&'a FreeElement> for &'a FreeElement {
    type Output = FreeElement;
    fn add(self, rhs: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<'a> std::ops::Sub<&'a FreeElement> for &'a FreeElement {
    type Output = FreeElement;
    fn sub(self, rhs: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Neg for &FreeElement {
    type Output = FreeElement;
    fn neg(self) -> FreeElement {
        self.scale(&CycScalar::from_int(-1))
    }
}

impl<'a> std::ops::Mul<&'a FreeElement> for &'a FreeElement {
    type Output = FreeElement;
    fn mul(self, rhs: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let mut w = a.0.clone();
                w.extend_from_slice(&b.0);
                out.add_term(Word(w), x * y);
            }
        }
        out
    }
}

struct FreeDomain<'a>(&'a [String]);

impl Domain for FreeDomain<'_> {
    type Value = FreeElement;
    fn scalar(&self, c: CycScalar) -> FreeElement {
        FreeElement::scalar(c)
    }
    fn ident(&self, name: &str) -> Option<FreeElement> {
        self.0
            .iter()
            .position(|g| g == name)
            .map(FreeElement::generator)
    }
    fn add(&self, a: FreeElement, b: FreeElement) -> Result<FreeElement> {
        Ok(&a + &b)
    }
    fn neg(&self, a: FreeElement) -> FreeElement {
        -&a
    }
    fn mul(&self, a: FreeElement, b: FreeElement) -> Result<FreeElement> {
        Ok(&a * &b)
    }
    fn as_scalar(&self, a: &FreeElement) -> Option<CycScalar> {
        match a.degree() {
            None => Some(CycScalar::zero()),
            Some(0) => Some(a.coefficient(&[])),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let names = vec!["u".to_string(), "v".to_string()];
        let e = FreeElement::parse(&names, "v*u - 2*u*v + v*v*u - 1").unwrap();
        assert_eq!(e.fmt_with(&names), "v^2*u + v*u - 2*u*v - 1");
        assert_eq!(FreeElement::parse(&names, &e.fmt_with(&names)).unwrap(), e);
        assert_eq!(e.leading().unwrap().0 .0, vec![1, 1, 0]);
    }
}
