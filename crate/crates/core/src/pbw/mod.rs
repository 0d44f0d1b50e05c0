//! Algebras given by ordered generators and quadratic straightening rules.

mod basis;
mod builders;
mod free;

pub use basis::{change_basis_free, AffineSubstitution, BasisChange};
pub use builders::*;
pub use free::{FreeElement, Word};

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::expr::{self, Domain};
use crate::scalar::CycScalar;

/// A normal monomial, stored as an exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(ngens: usize) -> Self {
        Monomial(vec![0; ngens])
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    /// Monomial of a non-decreasing word.
    pub fn from_word(ngens: usize, word: &[usize]) -> Option<Self> {
        if word.windows(2).any(|w| w[0] > w[1]) {
            return None;
        }
        let mut e = vec![0; ngens];
        for &g in word {
            e[g] += 1;
        }
        Some(Monomial(e))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn word(&self) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.degree());
        for (g, &e) in self.0.iter().enumerate() {
            for _ in 0..e {
                w.push(g);
            }
        }
        w
    }

    pub fn last_generator(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    pub(crate) fn bumped(&self, g: usize, delta: i32) -> Monomial {
        let mut e = self.0.clone();
        e[g] = (e[g] as i32 + delta) as u32;
        Monomial(e)
    }

    /// Product of two monomials when it needs no rewriting.
    pub fn concat(&self, other: &Monomial) -> Option<Monomial> {
        match (self.last_generator(), other.0.iter().position(|&e| e > 0)) {
            (Some(a), Some(b)) if a > b => None,
            _ => Some(Monomial(
                self.0.iter().zip(&other.0).map(|(x, y)| x + y).collect(),
            )),
        }
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".into();
        }
        let mut parts = Vec::new();
        for (g, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[g].clone()),
                _ => parts.push(format!("{}^{}", names[g], e)),
            }
        }
        parts.join("*")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Degree, then lexicographic comparison of the underlying words.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (da, db) = (self.degree(), other.degree());
        if da != db {
            return da.cmp(&db);
        }
        let (a, b) = (&self.0, &other.0);
        let n = a.len().min(b.len());
        let (mut i, mut j) = (0usize, 0usize);
        let (mut ra, mut rb) = (a.first().copied().unwrap_or(0), b.first().copied().unwrap_or(0));
        loop {
            while i < n && ra == 0 {
                i += 1;
                ra = if i < n { a[i] } else { 0 };
            }
            while j < n && rb == 0 {
                j += 1;
                rb = if j < n { b[j] } else { 0 };
            }
            if i >= n || j >= n {
                return (i >= n).cmp(&(j >= n)).reverse();
            }
            if i != j {
                return i.cmp(&j);
            }
            let k = ra.min(rb);
            ra -= k;
            rb -= k;
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type Terms = BTreeMap<Monomial, CycScalar>;

pub(crate) fn add_term(t: &mut Terms, m: Monomial, c: CycScalar) {
    if c.is_zero() {
        return;
    }
    match t.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn add_scaled(t: &mut Terms, src: &Terms, c: &CycScalar) {
    if c.is_zero() {
        return;
    }
    for (m, x) in src {
        add_term(t, m.clone(), if c.is_one() { x.clone() } else { x * c });
    }
}

/// x_j x_i -> q x_i x_j + tail, for j > i.
#[derive(Clone, Debug, PartialEq)]
pub struct SwapRule {
    pub q: CycScalar,
    pub tail: Terms,
}

pub struct PbwPresentation {
    name: String,
    generators: Vec<String>,
    swaps: Vec<Vec<Option<SwapRule>>>,
    powers: Vec<Option<Terms>>,
    central: Vec<bool>,
    cache: RwLock<HashMap<(Monomial, usize), Arc<Terms>>>,
}

impl fmt::Debug for PbwPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PbwPresentation({}: {})", self.name, self.describe())
    }
}

impl PartialEq for PbwPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
            && self.swaps == other.swaps
            && self.powers == other.powers
    }
}

/// Rules supplied to [`PbwPresentation::new`].
#[derive(Clone, Debug, Default)]
pub struct RuleSet {
    /// (j, i, q, tail) with j > i.
    pub swaps: Vec<(usize, usize, CycScalar, Terms)>,
    /// (i, rhs) for x_i^2 -> rhs.
    pub powers: Vec<(usize, Terms)>,
    pub central: Vec<usize>,
}

impl PbwPresentation {
    /// Validates the rules and checks that all overlaps x_a x_b x_c resolve.
    pub fn new(name: &str, generators: Vec<String>, rules: RuleSet) -> Result<Arc<Self>> {
        let n = generators.len();
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::InvalidParameter(format!("duplicate generator `{g}`")));
            }
            if expr::zeta_name(g).is_some() {
                return Err(Error::InvalidParameter(format!("`{g}` is reserved")));
            }
        }
        let mut swaps: Vec<Vec<Option<SwapRule>>> = vec![vec![None; n]; n];
        let mut powers: Vec<Option<Terms>> = vec![None; n];
        for (i, rhs) in rules.powers {
            if i >= n || powers[i].is_some() {
                return Err(Error::InvalidParameter("bad power rule".into()));
            }
            powers[i] = Some(rhs);
        }
        for (j, i, q, tail) in rules.swaps {
            if j >= n || i >= j || swaps[j][i].is_some() {
                return Err(Error::InvalidParameter(format!(
                    "bad swap rule for generators {j}, {i}"
                )));
            }
            swaps[j][i] = Some(SwapRule { q, tail });
        }
        let mut central = vec![false; n];
        for c in rules.central {
            central[c] = true;
        }
        let p = PbwPresentation {
            name: name.to_string(),
            generators,
            swaps,
            powers,
            central,
            cache: RwLock::new(HashMap::new()),
        };
        p.validate()?;
        let p = Arc::new(p);
        p.check_overlaps()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let n = self.generators.len();
        let check_rhs = |lead: usize, rhs: &Terms, what: String| -> Result<()> {
            for m in rhs.keys() {
                if m.0.len() != n || !self.is_normal(m) {
                    return Err(Error::NotStraightening(format!(
                        "{what}: right side has non-normal monomial"
                    )));
                }
                if m.degree() > 2 {
                    return Err(Error::NotStraightening(format!(
                        "{what}: right side has degree above 2"
                    )));
                }
                if m.degree() == 2 && m.0.iter().position(|&e| e > 0).unwrap() >= lead {
                    return Err(Error::NotStraightening(format!(
                        "{what}: rule does not decrease in the monomial order"
                    )));
                }
            }
            Ok(())
        };
        for j in 0..n {
            for i in 0..j {
                let Some(rule) = &self.swaps[j][i] else {
                    return Err(Error::NotStraightening(format!(
                        "no straightening rule for {}*{}",
                        self.generators[j], self.generators[i]
                    )));
                };
                check_rhs(j, &rule.tail, format!("{}*{}", self.generators[j], self.generators[i]))?;
            }
            if let Some(r) = &self.powers[j] {
                check_rhs(j, r, format!("{}^2", self.generators[j]))?;
            }
        }
        Ok(())
    }

    fn check_overlaps(self: &Arc<Self>) -> Result<()> {
        let n = self.ngens();
        let reducible = |a: usize, b: usize| a > b || (a == b && self.powers[a].is_some());
        for a in 0..n {
            for b in 0..n {
                if !reducible(a, b) {
                    continue;
                }
                for c in 0..n {
                    if !reducible(b, c) {
                        continue;
                    }
                    let x = |g| PbwElement::generator(self, g);
                    let left = &(&x(a) * &x(b)) * &x(c);
                    let right = &x(a) * &(&x(b) * &x(c));
                    if left != right {
                        return Err(Error::NotStraightening(format!(
                            "rules are not confluent on {}*{}*{}",
                            self.generators[a], self.generators[b], self.generators[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn swap_rule(&self, j: usize, i: usize) -> Option<&SwapRule> {
        self.swaps.get(j)?.get(i)?.as_ref()
    }

    pub fn power_rule(&self, i: usize) -> Option<&Terms> {
        self.powers.get(i)?.as_ref()
    }

    pub fn is_central(&self, i: usize) -> bool {
        self.central[i]
    }

    pub fn is_normal(&self, m: &Monomial) -> bool {
        m.0.iter()
            .enumerate()
            .all(|(g, &e)| e <= 1 || self.powers[g].is_none())
    }

    /// True when every rule is homogeneous of degree 2.
    pub fn is_graded(&self) -> bool {
        let hom = |t: &Terms| t.keys().all(|m| m.degree() == 2);
        self.swaps
            .iter()
            .flatten()
            .flatten()
            .all(|r| hom(&r.tail))
            && self.powers.iter().flatten().all(hom)
    }

    /// Same rules with right sides truncated to their degree-2 parts.
    pub fn associated_graded(&self) -> Result<Arc<Self>> {
        let keep2 = |t: &Terms| -> Terms {
            t.iter()
                .filter(|(m, _)| m.degree() == 2)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect()
        };
        let mut rules = RuleSet::default();
        for j in 0..self.ngens() {
            for i in 0..j {
                let r = self.swaps[j][i].as_ref().unwrap();
                rules.swaps.push((j, i, r.q.clone(), keep2(&r.tail)));
            }
            if let Some(r) = &self.powers[j] {
                rules.powers.push((j, keep2(r)));
            }
        }
        rules.central = (0..self.ngens()).filter(|&i| self.central[i]).collect();
        let name = if self.is_graded() {
            self.name.clone()
        } else {
            format!("gr({})", self.name)
        };
        PbwPresentation::new(&name, self.generators.clone(), rules)
    }

    /// The defining relations as free-algebra elements (lhs - rhs).
    pub fn relations(&self) -> Vec<FreeElement> {
        let mut out = Vec::new();
        let tail_free = |t: &Terms| -> FreeElement {
            let mut f = FreeElement::zero();
            for (m, c) in t {
                f = &f + &FreeElement::word(m.word(), c.clone());
            }
            f
        };
        for j in 0..self.ngens() {
            for i in 0..j {
                let r = self.swaps[j][i].as_ref().unwrap();
                let lhs = FreeElement::word(vec![j, i], CycScalar::one());
                let qt = FreeElement::word(vec![i, j], r.q.clone());
                out.push(&(&lhs - &qt) - &tail_free(&r.tail));
            }
            if let Some(r) = &self.powers[j] {
                out.push(&FreeElement::word(vec![j, j], CycScalar::one()) - &tail_free(r));
            }
        }
        out
    }

    pub fn describe(&self) -> String {
        let names = &self.generators;
        let rels: Vec<String> = self.relations().iter().map(|r| r.fmt_with(names)).collect();
        format!("<{} | {}>", names.join(", "), rels.join(", "))
    }

    /// Straightening rules written as `lhs -> rhs`.
    pub fn rule_strings(&self) -> Vec<String> {
        let mut out = Vec::new();
        let fmt_terms = |q: Option<(usize, usize, &CycScalar)>, t: &Terms| -> String {
            let mut e = Terms::new();
            if let Some((i, j, q)) = q {
                let m = Monomial::from_word(self.ngens(), &[i, j]).unwrap();
                add_term(&mut e, m, q.clone());
            }
            for (m, c) in t {
                add_term(&mut e, m.clone(), c.clone());
            }
            fmt_terms_with(&e, &self.generators)
        };
        for j in 0..self.ngens() {
            for i in 0..j {
                let r = self.swaps[j][i].as_ref().unwrap();
                out.push(format!(
                    "{}*{} -> {}",
                    self.generators[j],
                    self.generators[i],
                    fmt_terms(Some((i, j, &r.q)), &r.tail)
                ));
            }
            if let Some(r) = &self.powers[j] {
                out.push(format!("{}^2 -> {}", self.generators[j], fmt_terms(None, r)));
            }
        }
        out
    }

    /// Parses rules of the form `v*u -> q*u*v + 1` or `z*z -> 0`.
    pub fn from_rules(name: &str, generators: Vec<String>, rules: &[String]) -> Result<Arc<Self>> {
        let n = generators.len();
        let mut set = RuleSet::default();
        for (line, rule) in rules.iter().enumerate() {
            let (lhs, rhs) = rule.split_once("->").ok_or_else(|| {
                Error::Parse {
                    line: line + 1,
                    column: 1,
                    message: "rule needs `->`".into(),
                }
            })?;
            let lhs_e = FreeElement::parse(&generators, lhs).map_err(|e| e.at_line(line + 1))?;
            let offset = lhs.chars().count() + 2;
            let rhs_e = FreeElement::parse(&generators, rhs).map_err(|e| match e {
                Error::Parse { column, message, .. } => Error::Parse {
                    line: line + 1,
                    column: column + offset,
                    message,
                },
                other => other,
            })?;
            let w = match lhs_e.terms().iter().collect::<Vec<_>>().as_slice() {
                [(w, c)] if w.0.len() == 2 && c.is_one() => (*w).clone(),
                _ => {
                    return Err(Error::NotStraightening(format!(
                        "left side of `{rule}` must be a product of two generators"
                    )))
                }
            };
            let (j, i) = (w.0[0], w.0[1]);
            if j < i {
                return Err(Error::NotStraightening(format!(
                    "left side of `{rule}` is already normal"
                )));
            }
            let mut tail = Terms::new();
            let mut q = CycScalar::zero();
            for (word, c) in rhs_e.terms() {
                if j != i && word.0 == [i, j] {
                    q = c.clone();
                    continue;
                }
                let m = Monomial::from_word(n, &word.0).ok_or_else(|| {
                    Error::NotStraightening(format!("right side of `{rule}` is not in normal form"))
                })?;
                add_term(&mut tail, m, c.clone());
            }
            if i == j {
                set.powers.push((i, tail));
            } else {
                set.swaps.push((j, i, q, tail));
            }
        }
        PbwPresentation::new(name, generators, set)
    }

    fn mul_mono_gen(&self, m: &Monomial, g: usize) -> Arc<Terms> {
        let key = (m.clone(), g);
        let hit = self.cache.read().unwrap().get(&key).cloned();
        if let Some(t) = hit {
            return t;
        }
        let t = Arc::new(self.compute_mono_gen(m, g));
        self.cache.write().unwrap().insert(key, t.clone());
        t
    }

    fn compute_mono_gen(&self, m: &Monomial, g: usize) -> Terms {
        let mut out = Terms::new();
        match m.last_generator() {
            None => {
                out.insert(m.bumped(g, 1), CycScalar::one());
            }
            Some(l) if g > l => {
                out.insert(m.bumped(g, 1), CycScalar::one());
            }
            Some(l) if g == l => match &self.powers[g] {
                None => {
                    out.insert(m.bumped(g, 1), CycScalar::one());
                }
                Some(rhs) => {
                    let head = m.bumped(g, -1);
                    for (tm, c) in rhs {
                        add_scaled(&mut out, &self.mul_mono_mono(&head, tm), c);
                    }
                }
            },
            Some(l) => {
                let head = m.bumped(l, -1);
                let rule = self.swaps[l][g].as_ref().expect("validated rule");
                if !rule.q.is_zero() {
                    let t1 = self.mul_mono_gen(&head, g);
                    let t2 = self.mul_terms_gen(&t1, l);
                    add_scaled(&mut out, &t2, &rule.q);
                }
                for (tm, c) in &rule.tail {
                    add_scaled(&mut out, &self.mul_mono_mono(&head, tm), c);
                }
            }
        }
        out
    }

    fn mul_terms_gen(&self, t: &Terms, g: usize) -> Terms {
        let mut out = Terms::new();
        for (m, c) in t {
            add_scaled(&mut out, &self.mul_mono_gen(m, g), c);
        }
        out
    }

    fn mul_mono_mono(&self, a: &Monomial, b: &Monomial) -> Terms {
        if let Some(m) = a.concat(b) {
            if self.is_normal(&m) {
                let mut t = Terms::new();
                t.insert(m, CycScalar::one());
                return t;
            }
        }
        let mut cur = Terms::new();
        cur.insert(a.clone(), CycScalar::one());
        for g in b.word() {
            cur = self.mul_terms_gen(&cur, g);
        }
        cur
    }

    /// Normal form of a free-algebra element.
    pub fn normal_form(self: &Arc<Self>, w: &FreeElement) -> PbwElement {
        let mut out = Terms::new();
        for (word, c) in w.terms() {
            let mut cur = Terms::new();
            cur.insert(Monomial::one(self.ngens()), CycScalar::one());
            for &g in &word.0 {
                cur = self.mul_terms_gen(&cur, g);
            }
            add_scaled(&mut out, &cur, c);
        }
        PbwElement {
            pres: self.clone(),
            terms: out,
        }
    }

    /// All normal monomials of degree exactly d, in ascending order.
    pub fn monomials_of_degree(&self, d: usize) -> Vec<Monomial> {
        let n = self.ngens();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(p: &PbwPresentation, g: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if g == cur.len() {
                if left == 0 {
                    out.push(Monomial(cur.clone()));
                }
                return;
            }
            let cap = if p.powers[g].is_some() { left.min(1) } else { left };
            for e in 0..=cap {
                cur[g] = e as u32;
                rec(p, g + 1, left - e, cur, out);
            }
            cur[g] = 0;
        }
        if n == 0 {
            if d == 0 {
                out.push(Monomial(vec![]));
            }
            return out;
        }
        rec(self, 0, d, &mut cur, &mut out);
        out.sort();
        out
    }

    /// All normal monomials of degree at most d, ascending.
    pub fn monomials_up_to(&self, d: usize) -> Vec<Monomial> {
        (0..=d).flat_map(|k| self.monomials_of_degree(k)).collect()
    }

    /// Homogenized presentation with a new central generator t placed first.
    pub fn rees(&self) -> Result<Arc<Self>> {
        let n = self.ngens();
        let lift = |t: &Terms| -> Terms {
            t.iter()
                .map(|(m, c)| {
                    let mut e = vec![(2 - m.degree()) as u32];
                    e.extend_from_slice(&m.0);
                    (Monomial(e), c.clone())
                })
                .collect()
        };
        let mut rules = RuleSet::default();
        for j in 0..n {
            rules.swaps.push((j + 1, 0, CycScalar::one(), Terms::new()));
            for i in 0..j {
                let r = self.swaps[j][i].as_ref().unwrap();
                rules.swaps.push((j + 1, i + 1, r.q.clone(), lift(&r.tail)));
            }
            if let Some(r) = &self.powers[j] {
                rules.powers.push((j + 1, lift(r)));
            }
        }
        rules.central = vec![0];
        rules
            .central
            .extend((0..n).filter(|&i| self.central[i]).map(|i| i + 1));
        let mut gens = vec!["t".to_string()];
        gens.extend(self.generators.iter().cloned());
        PbwPresentation::new(&format!("rees({})", self.name), gens, rules)
    }
}

pub(crate) fn fmt_terms_with(terms: &Terms, names: &[String]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    let many = terms.len() > 1;
    for (k, (m, c)) in terms.iter().rev().enumerate() {
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
        let coef = if abs.is_simple_term() {
            abs.to_string()
        } else if many || !m.is_one() {
            format!("({abs})")
        } else {
            abs.to_string()
        };
        if m.is_one() {
            s.push_str(&coef);
        } else if abs.is_one() {
            s.push_str(&m.fmt_with(names));
        } else {
            s.push_str(&format!("{}*{}", coef, m.fmt_with(names)));
        }
    }
    s
}

/// An element in normal form.
#[derive(Clone)]
pub struct PbwElement {
    pres: Arc<PbwPresentation>,
    terms: Terms,
}

impl PbwElement {
    pub fn zero(p: &Arc<PbwPresentation>) -> Self {
        PbwElement {
            pres: p.clone(),
            terms: Terms::new(),
        }
    }

    pub fn one(p: &Arc<PbwPresentation>) -> Self {
        Self::scalar(p, CycScalar::one())
    }

    pub fn scalar(p: &Arc<PbwPresentation>, c: CycScalar) -> Self {
        let mut terms = Terms::new();
        add_term(&mut terms, Monomial::one(p.ngens()), c);
        PbwElement {
            pres: p.clone(),
            terms,
        }
    }

    pub fn generator(p: &Arc<PbwPresentation>, g: usize) -> Self {
        let mut terms = Terms::new();
        terms.insert(Monomial::one(p.ngens()).bumped(g, 1), CycScalar::one());
        PbwElement {
            pres: p.clone(),
            terms,
        }
    }

    /// Looks a generator up by name.
    pub fn gen(p: &Arc<PbwPresentation>, name: &str) -> Self {
        let g = p
            .generator_index(name)
            .unwrap_or_else(|| panic!("no generator `{name}`"));
        Self::generator(p, g)
    }

    pub fn monomial(p: &Arc<PbwPresentation>, m: Monomial, c: CycScalar) -> Self {
        assert!(p.is_normal(&m), "monomial is not normal");
        let mut terms = Terms::new();
        add_term(&mut terms, m, c);
        PbwElement {
            pres: p.clone(),
            terms,
        }
    }

    pub fn from_terms(p: &Arc<PbwPresentation>, terms: Terms) -> Self {
        let mut t = Terms::new();
        for (m, c) in terms {
            add_term(&mut t, m, c);
        }
        PbwElement {
            pres: p.clone(),
            terms: t,
        }
    }

    pub fn parse(p: &Arc<PbwPresentation>, s: &str) -> Result<Self> {
        expr::eval(&ElementDomain(p.clone()), &expr::parse(s)?)
    }

    pub fn presentation(&self) -> &Arc<PbwPresentation> {
        &self.pres
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> CycScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> CycScalar {
        self.coefficient(&Monomial::one(self.pres.ngens()))
    }

    /// Largest total degree of a term; None for zero.
    pub fn filtration_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &CycScalar)> {
        self.terms.iter().next_back()
    }

    pub fn homogeneous_part(&self, d: usize) -> PbwElement {
        PbwElement {
            pres: self.pres.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &CycScalar) -> PbwElement {
        let mut terms = Terms::new();
        add_scaled(&mut terms, &self.terms, c);
        PbwElement {
            pres: self.pres.clone(),
            terms,
        }
    }

    fn compatible(&self, other: &PbwElement) -> bool {
        Arc::ptr_eq(&self.pres, &other.pres) || *self.pres == *other.pres
    }

    pub fn try_add(&self, other: &PbwElement) -> Result<PbwElement> {
        if !self.compatible(other) {
            return Err(Error::PresentationMismatch);
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c.clone());
        }
        Ok(PbwElement {
            pres: self.pres.clone(),
            terms,
        })
    }

    pub fn try_mul(&self, other: &PbwElement) -> Result<PbwElement> {
        if !self.compatible(other) {
            return Err(Error::PresentationMismatch);
        }
        let p = &self.pres;
        let mut out = Terms::new();
        for (mb, cb) in &other.terms {
            let word = mb.word();
            let mut cur = self.terms.clone();
            for &g in &word {
                cur = p.mul_terms_gen(&cur, g);
            }
            add_scaled(&mut out, &cur, cb);
        }
        Ok(PbwElement {
            pres: p.clone(),
            terms: out,
        })
    }

    pub fn pow(&self, e: u32) -> PbwElement {
        let mut acc = PbwElement::one(&self.pres);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Re-reads the same terms in another presentation with the same generators.
    pub fn reinterpret(&self, p: &Arc<PbwPresentation>) -> Result<PbwElement> {
        if p.ngens() != self.pres.ngens() || self.terms.keys().any(|m| !p.is_normal(m)) {
            return Err(Error::PresentationMismatch);
        }
        Ok(PbwElement {
            pres: p.clone(),
            terms: self.terms.clone(),
        })
    }

    pub fn to_free(&self) -> FreeElement {
        let mut f = FreeElement::zero();
        for (m, c) in &self.terms {
            f = &f + &FreeElement::word(m.word(), c.clone());
        }
        f
    }

    /// Coordinates against a monomial index.
    pub fn to_vector(&self, index: &HashMap<Monomial, usize>, len: usize) -> Option<Vec<CycScalar>> {
        let mut v = vec![CycScalar::zero(); len];
        for (m, c) in &self.terms {
            v[*index.get(m)?] = c.clone();
        }
        Some(v)
    }

    pub fn from_vector(p: &Arc<PbwPresentation>, monos: &[Monomial], v: &[CycScalar]) -> PbwElement {
        let mut terms = Terms::new();
        for (m, c) in monos.iter().zip(v) {
            add_term(&mut terms, m.clone(), c.clone());
        }
        PbwElement {
            pres: p.clone(),
            terms,
        }
    }
}

impl PartialEq for PbwElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.compatible(other)
    }
}

impl fmt::Display for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_terms_with(&self.terms, &self.pres.generators))
    }
}

impl fmt::Debug for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<'a> std::ops::Add<&'a PbwElement> for &'a PbwElement {
    type Output = PbwElement;
    fn add(self, rhs: &PbwElement) -> PbwElement {
        self.try_add(rhs).expect("presentation mismatch")
    }
}

impl<'a> std::ops::Sub<&'a PbwElement> for &'a PbwElement {
    type Output = PbwElement;
    fn sub(self, rhs: &PbwElement) -> PbwElement {
        self.try_add(&-rhs).expect("presentation mismatch")
    }
}

impl std::ops::Neg for &PbwElement {
    type Output = PbwElement;
    fn neg(self) -> PbwElement {
        self.scale(&CycScalar::from_int(-1))
    }
}

impl<'a> std::ops::Mul<&'a PbwElement> for &'a PbwElement {
    type Output = PbwElement;
    fn mul(self, rhs: &PbwElement) -> PbwElement {
        self.try_mul(rhs).expect("presentation mismatch")
    }
}

struct ElementDomain(Arc<PbwPresentation>);

impl Domain for ElementDomain {
    type Value = PbwElement;
    fn scalar(&self, c: CycScalar) -> PbwElement {
        PbwElement::scalar(&self.0, c)
    }
    fn ident(&self, name: &str) -> Option<PbwElement> {
        self.0
            .generator_index(name)
            .map(|g| PbwElement::generator(&self.0, g))
    }
    fn add(&self, a: PbwElement, b: PbwElement) -> Result<PbwElement> {
        a.try_add(&b)
    }
    fn neg(&self, a: PbwElement) -> PbwElement {
        -&a
    }
    fn mul(&self, a: PbwElement, b: PbwElement) -> Result<PbwElement> {
        a.try_mul(&b)
    }
    fn as_scalar(&self, a: &PbwElement) -> Option<CycScalar> {
        match a.filtration_degree() {
            None => Some(CycScalar::zero()),
            Some(0) => Some(a.constant_term()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_order_is_deglex_on_words() {
        let m = |e: &[u32]| Monomial(e.to_vec());
        // words: u*v = [0,1], u^2 = [0,0], v^2 = [1,1]
        assert!(m(&[2, 0]) < m(&[1, 1]));
        assert!(m(&[1, 1]) < m(&[0, 2]));
        assert!(m(&[0, 1]) < m(&[2, 0]));
        let mut all: Vec<Monomial> = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..3 {
                    all.push(m(&[a, b, c]));
                }
            }
        }
        for x in &all {
            for y in &all {
                let wx = x.word();
                let wy = y.word();
                let expect = wx.len().cmp(&wy.len()).then(wx.cmp(&wy));
                assert_eq!(x.cmp(y), expect, "{x:?} vs {y:?}");
            }
        }
    }

    #[test]
    fn weyl_products() {
        let p = weyl(1).unwrap();
        let u = PbwElement::gen(&p, "u");
        let v = PbwElement::gen(&p, "v");
        assert_eq!((&v * &u).to_string(), "u*v + 1");
        let vvuu = &(&(&v * &v) * &u) * &u;
        assert_eq!(vvuu.to_string(), "u^2*v^2 + 4*u*v + 2");
        assert_eq!(PbwElement::parse(&p, "v*v*u*u").unwrap(), vvuu);
    }

    #[test]
    fn normal_form_of_words() {
        let p = weyl(1).unwrap();
        let w = FreeElement::word(vec![1, 1, 0, 0], CycScalar::one());
        assert_eq!(p.normal_form(&w).to_string(), "u^2*v^2 + 4*u*v + 2");
        assert_eq!(p.normal_form(&FreeElement::scalar(CycScalar::one())).to_string(), "1");
    }

    #[test]
    fn jordan_and_koszul() {
        let j = jordan_plane().unwrap();
        let u = PbwElement::gen(&j, "u");
        let v = PbwElement::gen(&j, "v");
        assert_eq!((&v * &u).to_string(), "u*v + u^2");
        let k = koszul_dual_rees(1).unwrap();
        let t = PbwElement::gen(&k, "t'");
        assert_eq!((&t * &t).to_string(), "-v'*u'");
        assert_eq!(t.pow(3).to_string(), "-v'*u'*t'");
        let k2 = koszul_dual_rees(2).unwrap();
        let t2 = PbwElement::gen(&k2, "t'");
        assert_eq!(t2.pow(5).to_string(), "2*v1'*u1'*v2'*u2'*t'");
    }

    #[test]
    fn filtration_degree_and_display() {
        let p = weyl(1).unwrap();
        let e = PbwElement::parse(&p, "u^2*v + 1").unwrap();
        assert_eq!(e.filtration_degree(), Some(3));
        assert_eq!(PbwElement::parse(&p, "7").unwrap().filtration_degree(), Some(0));
        assert_eq!(PbwElement::zero(&p).filtration_degree(), None);
        assert_eq!(PbwElement::zero(&p).to_string(), "0");
        let q = quantum_plane(CycScalar::root_of_unity(4, 1)).unwrap();
        let x = PbwElement::parse(&q, "(1 + zeta4)*u*v - zeta4*u").unwrap();
        assert_eq!(x.to_string(), "(zeta4 + 1)*u*v - zeta4*u");
        assert_eq!(PbwElement::parse(&q, &x.to_string()).unwrap(), x);
    }

    #[test]
    fn associated_graded_drops_tails() {
        let f = filtered_dim2(
            CycScalar::from_int(2),
            0,
            CycScalar::from_int(3),
            CycScalar::from_int(4),
            CycScalar::from_int(5),
        )
        .unwrap();
        let g = f.associated_graded().unwrap();
        assert_eq!(*g, *quantum_plane(CycScalar::from_int(2)).unwrap());
        let w = weyl(1).unwrap().associated_graded().unwrap();
        assert_eq!(*w, *commutative_poly(2).unwrap());
        let qp = quantum_plane(CycScalar::from_int(3)).unwrap();
        assert_eq!(*qp.associated_graded().unwrap(), *qp);
    }

    #[test]
    fn rules_round_trip_through_text() {
        let p = rees_weyl(1).unwrap();
        let rules = p.rule_strings();
        let back = PbwPresentation::from_rules("copy", p.generators().to_vec(), &rules).unwrap();
        assert_eq!(*back, *p);
    }

    #[test]
    fn rejects_bad_rules() {
        let gens = vec!["u".to_string(), "v".to_string()];
        assert!(matches!(
            PbwPresentation::from_rules("bad", gens.clone(), &["v*u -> v*v".into()]),
            Err(Error::NotStraightening(_))
        ));
        assert!(matches!(
            PbwPresentation::from_rules("bad", gens.clone(), &[]),
            Err(Error::NotStraightening(_))
        ));
        match PbwPresentation::from_rules("bad", gens, &["v*u -> u*v + w".into()]) {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 1);
                assert_eq!(column, 14);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn mismatched_presentations() {
        let a = weyl(1).unwrap();
        let b = jordan_plane().unwrap();
        let x = PbwElement::gen(&a, "u");
        let y = PbwElement::gen(&b, "u");
        assert_eq!(x.try_mul(&y), Err(Error::PresentationMismatch));
        let a2 = weyl(1).unwrap();
        assert!(x.try_mul(&PbwElement::gen(&a2, "v")).is_ok());
    }
}
