//! Finite-dimensional Hopf algebras as structure-constant tables.

mod constructors;

pub use constructors::*;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::{self, Domain};
use crate::linalg::{self, Matrix, RowSpace};
use crate::scalar::CycScalar;
use crate::verdict::Verdict;

/// Coefficient vector over the basis of a Hopf algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HopfElement(pub Vec<CycScalar>);

impl HopfElement {
    pub fn zero(dim: usize) -> Self {
        HopfElement(linalg::zero_vec(dim))
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = linalg::zero_vec(dim);
        v[i] = CycScalar::one();
        HopfElement(v)
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero_vec(&self.0)
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        HopfElement(self.0.iter().map(|x| x * c).collect())
    }

    pub fn coeffs(&self) -> &[CycScalar] {
        &self.0
    }
}

impl<'a> std::ops::Add<&'a HopfElement> for &'a HopfElement {
    type Output = HopfElement;
    fn add(self, rhs: &HopfElement) -> HopfElement {
        HopfElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> std::ops::Sub<&'a HopfElement> for &'a HopfElement {
    type Output = HopfElement;
    fn sub(self, rhs: &HopfElement) -> HopfElement {
        HopfElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl std::ops::Neg for &HopfElement {
    type Output = HopfElement;
    fn neg(self) -> HopfElement {
        HopfElement(self.0.iter().map(|a| -a).collect())
    }
}

/// Element of H (x) H keyed by basis pairs.
pub type Tensor = BTreeMap<(usize, usize), CycScalar>;

fn tensor_add(t: &mut Tensor, k: (usize, usize), c: CycScalar) {
    if c.is_zero() {
        return;
    }
    let e = t.entry(k).or_default();
    *e += &c;
    if e.is_zero() {
        t.remove(&k);
    }
}

/// Left integral data: the integral space, and a normalized integral when one exists.
#[derive(Clone, Debug)]
pub struct IntegralInfo {
    pub space: Vec<HopfElement>,
    pub normalized: Option<HopfElement>,
}

impl IntegralInfo {
    /// Some integral: the normalized one if available.
    pub fn representative(&self) -> &HopfElement {
        self.normalized.as_ref().unwrap_or(&self.space[0])
    }
}

pub struct HopfAlgebra {
    name: String,
    labels: Vec<String>,
    mult: Vec<Vec<Vec<(usize, CycScalar)>>>,
    unit: HopfElement,
    comult: Vec<Tensor>,
    counit: Vec<CycScalar>,
    antipode: Vec<HopfElement>,
    generators: Vec<usize>,
    group_table: Option<Vec<Vec<usize>>>,
    dual_of: Option<Arc<HopfAlgebra>>,
}

impl fmt::Debug for HopfAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HopfAlgebra({}, basis {:?})", self.name, self.labels)
    }
}

/// Raw structure tables; `mult[a][b]` is the product of basis elements a and b.
#[derive(Clone, Debug)]
pub struct HopfTables {
    pub labels: Vec<String>,
    pub mult: Vec<Vec<HopfElement>>,
    pub unit: HopfElement,
    pub comult: Vec<Tensor>,
    pub counit: Vec<CycScalar>,
    pub antipode: Vec<HopfElement>,
}

impl HopfAlgebra {
    /// Builds a Hopf algebra from tables. Axioms are not checked here; see
    /// [`HopfAlgebra::verify_hopf_axioms`].
    pub fn from_tables(name: &str, t: HopfTables) -> Result<Arc<Self>> {
        let d = t.labels.len();
        let shape_ok = t.mult.len() == d
            && t.mult.iter().all(|r| r.len() == d && r.iter().all(|x| x.0.len() == d))
            && t.unit.0.len() == d
            && t.comult.len() == d
            && t.counit.len() == d
            && t.antipode.len() == d
            && t.antipode.iter().all(|x| x.0.len() == d)
            && t.comult.iter().all(|c| c.keys().all(|&(a, b)| a < d && b < d));
        if !shape_ok || d == 0 {
            return Err(Error::InvalidParameter("inconsistent table sizes".into()));
        }
        for l in &t.labels {
            if expr::zeta_name(l).is_some() {
                return Err(Error::InvalidParameter(format!("`{l}` is reserved")));
            }
        }
        let mult = t
            .mult
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|x| {
                        x.0.into_iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut h = HopfAlgebra {
            name: name.to_string(),
            labels: t.labels,
            mult,
            unit: t.unit,
            comult: t.comult,
            counit: t.counit,
            antipode: t.antipode,
            generators: Vec::new(),
            group_table: None,
            dual_of: None,
        };
        h.generators = h.find_generators();
        Ok(Arc::new(h))
    }

    pub fn tables(&self) -> HopfTables {
        let d = self.dim();
        HopfTables {
            labels: self.labels.clone(),
            mult: (0..d)
                .map(|a| (0..d).map(|b| self.mul_basis(a, b)).collect())
                .collect(),
            unit: self.unit.clone(),
            comult: self.comult.clone(),
            counit: self.counit.clone(),
            antipode: self.antipode.clone(),
        }
    }

    /// Greedy algebra generators among basis elements.
    fn find_generators(&self) -> Vec<usize> {
        let d = self.dim();
        let mut gens = Vec::new();
        let mut span = self.subalgebra(&[]);
        for i in 0..d {
            if span.dim() == d {
                break;
            }
            if !span.contains(&self.basis(i).0) {
                gens.push(i);
                let seeds: Vec<HopfElement> = gens.iter().map(|&g| self.basis(g)).collect();
                span = self.subalgebra(&seeds);
            }
        }
        gens
    }

    fn subalgebra(&self, seeds: &[HopfElement]) -> RowSpace {
        let mut span = RowSpace::new();
        span.insert(&self.unit.0);
        let mut queue: Vec<HopfElement> = vec![self.unit.clone()];
        for s in seeds {
            if span.insert(&s.0) {
                queue.push(s.clone());
            }
        }
        while let Some(x) = queue.pop() {
            for s in seeds {
                let p = self.mul(&x, s);
                if span.insert(&p.0) {
                    queue.push(p);
                }
            }
        }
        span
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, l: &str) -> Option<usize> {
        self.labels.iter().position(|x| x == l)
    }

    /// Basis indices of a generating set of H as an algebra.
    pub fn algebra_generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn group_table(&self) -> Option<&Vec<Vec<usize>>> {
        self.group_table.as_ref()
    }

    pub fn dual_of(&self) -> Option<&Arc<HopfAlgebra>> {
        self.dual_of.as_ref()
    }

    pub fn basis(&self, i: usize) -> HopfElement {
        HopfElement::basis(self.dim(), i)
    }

    pub fn zero(&self) -> HopfElement {
        HopfElement::zero(self.dim())
    }

    pub fn one(&self) -> HopfElement {
        self.unit.clone()
    }

    pub fn scalar(&self, c: &CycScalar) -> HopfElement {
        self.unit.scale(c)
    }

    pub fn element(&self, label: &str) -> Option<HopfElement> {
        self.label_index(label).map(|i| self.basis(i))
    }

    pub fn parse(&self, s: &str) -> Result<HopfElement> {
        self.eval_expr(&expr::parse(s)?)
    }

    pub fn eval_expr(&self, e: &expr::Expr) -> Result<HopfElement> {
        expr::eval(&HopfDomain(self), e)
    }

    pub fn mul_basis(&self, a: usize, b: usize) -> HopfElement {
        let mut v = self.zero();
        for (k, c) in &self.mult[a][b] {
            v.0[*k] = c.clone();
        }
        v
    }

    pub fn mul(&self, x: &HopfElement, y: &HopfElement) -> HopfElement {
        let mut out = self.zero();
        for (a, xa) in x.0.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.0.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let f = xa * yb;
                for (k, c) in &self.mult[a][b] {
                    out.0[*k] += &(&f * c);
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &HopfElement, e: u32) -> HopfElement {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, x);
        }
        acc
    }

    pub fn comult_basis(&self, a: usize) -> &Tensor {
        &self.comult[a]
    }

    pub fn comult(&self, x: &HopfElement) -> Tensor {
        let mut t = Tensor::new();
        for (a, xa) in x.0.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (&k, c) in &self.comult[a] {
                tensor_add(&mut t, k, xa * c);
            }
        }
        t
    }

    pub fn counit(&self, x: &HopfElement) -> CycScalar {
        let mut acc = CycScalar::zero();
        for (a, xa) in x.0.iter().enumerate() {
            if !xa.is_zero() {
                acc += &(xa * &self.counit[a]);
            }
        }
        acc
    }

    pub fn counit_basis(&self, a: usize) -> &CycScalar {
        &self.counit[a]
    }

    pub fn antipode(&self, x: &HopfElement) -> HopfElement {
        let mut out = self.zero();
        for (a, xa) in x.0.iter().enumerate() {
            if !xa.is_zero() {
                linalg::axpy(&mut out.0, xa, &self.antipode[a].0);
            }
        }
        out
    }

    pub fn tensor_mul(&self, s: &Tensor, t: &Tensor) -> Tensor {
        let mut out = Tensor::new();
        for (&(a, b), x) in s {
            for (&(c, d), y) in t {
                let f = x * y;
                for (i, ci) in &self.mult[a][c] {
                    for (j, dj) in &self.mult[b][d] {
                        tensor_add(&mut out, (*i, *j), &f * &(ci * dj));
                    }
                }
            }
        }
        out
    }

    pub fn tensor_of(&self, x: &HopfElement, y: &HopfElement) -> Tensor {
        let mut t = Tensor::new();
        for (a, xa) in x.0.iter().enumerate() {
            for (b, yb) in y.0.iter().enumerate() {
                if !xa.is_zero() && !yb.is_zero() {
                    tensor_add(&mut t, (a, b), xa * yb);
                }
            }
        }
        t
    }

    pub fn format(&self, x: &HopfElement) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (i, c) in x.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, abs) = if c.is_negative_term() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            let body = if abs.is_one() {
                self.labels[i].clone()
            } else if abs.is_simple_term() {
                format!("{}*{}", abs, self.labels[i])
            } else {
                format!("({})*{}", abs, self.labels[i])
            };
            parts.push((neg, body));
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (neg, body)) in parts.into_iter().enumerate() {
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&body);
        }
        s
    }

    pub fn format_tensor(&self, t: &Tensor) -> String {
        if t.is_empty() {
            return "0".into();
        }
        t.iter()
            .map(|(&(a, b), c)| {
                let pre = if c.is_one() {
                    String::new()
                } else if c.is_simple_term() {
                    format!("{c}*")
                } else {
                    format!("({c})*")
                };
                format!("{}{} # {}", pre, self.labels[a], self.labels[b])
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Checks every Hopf algebra axiom on basis elements; reports the first failure.
    pub fn verify_hopf_axioms(&self) -> Verdict {
        let d = self.dim();
        let l = |i: usize| self.labels[i].clone();
        for a in 0..d {
            for b in 0..d {
                let ab = self.mul_basis(a, b);
                for c in 0..d {
                    let left = self.mul(&ab, &self.basis(c));
                    let right = self.mul(&self.basis(a), &self.mul_basis(b, c));
                    if left != right {
                        return Verdict::fail(format!(
                            "associativity fails on ({}, {}, {})",
                            l(a),
                            l(b),
                            l(c)
                        ));
                    }
                }
                // bialgebra compatibility
                let lhs = self.comult(&ab);
                let rhs = self.tensor_mul(&self.comult[a], &self.comult[b]);
                if lhs != rhs {
                    return Verdict::fail(format!(
                        "comultiplication is not multiplicative on ({}, {})",
                        l(a),
                        l(b)
                    ));
                }
                if self.counit(&ab) != &self.counit[a] * &self.counit[b] {
                    return Verdict::fail(format!(
                        "counit is not multiplicative on ({}, {})",
                        l(a),
                        l(b)
                    ));
                }
            }
            let x = self.basis(a);
            if self.mul(&self.unit, &x) != x || self.mul(&x, &self.unit) != x {
                return Verdict::fail(format!("unit axiom fails on {}", l(a)));
            }
            // coassociativity
            let mut left: BTreeMap<(usize, usize, usize), CycScalar> = BTreeMap::new();
            let mut right: BTreeMap<(usize, usize, usize), CycScalar> = BTreeMap::new();
            for (&(p, q), c) in &self.comult[a] {
                for (&(r, s), e) in &self.comult[p] {
                    let v = left.entry((r, s, q)).or_default();
                    *v += &(c * e);
                }
                for (&(r, s), e) in &self.comult[q] {
                    let v = right.entry((p, r, s)).or_default();
                    *v += &(c * e);
                }
            }
            left.retain(|_, v| !v.is_zero());
            right.retain(|_, v| !v.is_zero());
            if left != right {
                return Verdict::fail(format!("coassociativity fails on {}", l(a)));
            }
            // counit axiom
            let mut lc = self.zero();
            let mut rc = self.zero();
            for (&(p, q), c) in &self.comult[a] {
                lc.0[q] += &(c * &self.counit[p]);
                rc.0[p] += &(c * &self.counit[q]);
            }
            if lc != x || rc != x {
                return Verdict::fail(format!("counit axiom fails on {}", l(a)));
            }
            // antipode axiom
            let target = self.scalar(&self.counit[a]);
            let mut sl = self.zero();
            let mut sr = self.zero();
            for (&(p, q), c) in &self.comult[a] {
                let t1 = self.mul(&self.antipode[p], &self.basis(q));
                let t2 = self.mul(&self.basis(p), &self.antipode[q]);
                linalg::axpy(&mut sl.0, c, &t1.0);
                linalg::axpy(&mut sr.0, c, &t2.0);
            }
            if sl != target || sr != target {
                return Verdict::fail(format!("antipode axiom fails on {}", l(a)));
            }
        }
        if self.counit(&self.unit) != CycScalar::one() {
            return Verdict::fail("counit of the unit is not 1");
        }
        let one = self.comult(&self.unit);
        if one != self.tensor_of(&self.unit, &self.unit) {
            return Verdict::fail("unit is not grouplike");
        }
        Verdict::pass(format!("{} satisfies the Hopf axioms", self.name))
    }

    pub fn is_grouplike(&self, x: &HopfElement) -> bool {
        self.counit(x).is_one() && self.comult(x) == self.tensor_of(x, x)
    }

    /// Delta(x) = g (x) x + x (x) h.
    pub fn is_skew_primitive(
        &self,
        x: &HopfElement,
        g: &HopfElement,
        h: &HopfElement,
    ) -> Result<bool> {
        for (name, e) in [("g", g), ("h", h)] {
            if !self.is_grouplike(e) {
                return Err(Error::NotGrouplike(format!("{name} = {}", self.format(e))));
            }
        }
        let mut expect = self.tensor_of(g, x);
        for (k, c) in self.tensor_of(x, h) {
            tensor_add(&mut expect, k, c);
        }
        Ok(self.comult(x) == expect)
    }

    pub fn left_mult_matrix(&self, c: &HopfElement) -> Matrix {
        // column b = c * e_b
        let d = self.dim();
        let cols: Vec<HopfElement> = (0..d).map(|b| self.mul(c, &self.basis(b))).collect();
        (0..d)
            .map(|i| (0..d).map(|b| cols[b].0[i].clone()).collect())
            .collect()
    }

    pub fn inverse(&self, x: &HopfElement) -> Option<HopfElement> {
        let m = self.left_mult_matrix(x);
        let sol = linalg::solve(&m, &self.unit.0, self.dim())?;
        let y = HopfElement(sol);
        (self.mul(&y, x) == self.unit).then_some(y)
    }

    /// g^{-1} h g.
    pub fn conjugate(&self, g: &HopfElement, h: &HopfElement) -> Result<HopfElement> {
        let gi = self
            .inverse(g)
            .ok_or_else(|| Error::NotInvertibleElement(self.format(g)))?;
        Ok(self.mul(&self.mul(&gi, h), g))
    }

    pub fn left_integral(&self) -> IntegralInfo {
        let d = self.dim();
        let mut rows: Matrix = Vec::new();
        for h in 0..d {
            let mut m = self.left_mult_matrix(&self.basis(h));
            for (i, row) in m.iter_mut().enumerate() {
                row[i] -= &self.counit[h];
            }
            rows.extend(m);
        }
        let space: Vec<HopfElement> = linalg::kernel(&rows, d).into_iter().map(HopfElement).collect();
        let normalized = space.iter().find_map(|l| {
            let e = self.counit(l);
            (!e.is_zero()).then(|| l.scale(&e.inv().unwrap()))
        });
        IntegralInfo { space, normalized }
    }

    pub fn is_semisimple(&self) -> bool {
        self.left_integral().normalized.is_some()
    }

    /// Trace of left multiplication by c.
    pub fn trace_left_mult(&self, c: &HopfElement) -> CycScalar {
        let mut acc = CycScalar::zero();
        for b in 0..self.dim() {
            let p = self.mul(c, &self.basis(b));
            acc += &p.0[b];
        }
        acc
    }

    /// Smallest subspace containing 1 and the seed that is closed under
    /// multiplication and the antipode.
    pub fn hopf_closure(&self, seed: &[HopfElement]) -> Vec<HopfElement> {
        fn push(x: HopfElement, span: &mut RowSpace, elems: &mut Vec<HopfElement>, queue: &mut Vec<HopfElement>) {
            if span.insert(&x.0) {
                elems.push(x.clone());
                queue.push(x);
            }
        }
        let mut span = RowSpace::new();
        let mut elems: Vec<HopfElement> = Vec::new();
        let mut queue: Vec<HopfElement> = Vec::new();
        push(self.one(), &mut span, &mut elems, &mut queue);
        for s in seed {
            push(s.clone(), &mut span, &mut elems, &mut queue);
        }
        while let Some(x) = queue.pop() {
            let mut new = vec![self.antipode(&x)];
            for e in &elems {
                new.push(self.mul(&x, e));
                new.push(self.mul(e, &x));
            }
            for n in new {
                push(n, &mut span, &mut elems, &mut queue);
            }
        }
        elems
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|a| (0..d).all(|b| self.mult[a][b] == self.mult[b][a]))
    }

    /// Grouplike elements, where they can be enumerated: the basis of a group
    /// algebra, or the characters of the group for a dual group algebra.
    /// Otherwise only the grouplike basis elements are returned.
    pub fn grouplikes(&self) -> Vec<HopfElement> {
        if self.group_table.is_some() {
            return (0..self.dim()).map(|i| self.basis(i)).collect();
        }
        if let Some(orig) = &self.dual_of {
            if let Some(table) = &orig.group_table {
                return group_characters(table)
                    .into_iter()
                    .map(HopfElement)
                    .collect();
            }
        }
        let mut out: Vec<HopfElement> = (0..self.dim())
            .map(|i| self.basis(i))
            .filter(|x| self.is_grouplike(x))
            .collect();
        if !out.contains(&self.unit) {
            out.insert(0, self.unit.clone());
        }
        out
    }

    /// True when the grouplikes form a basis.
    pub fn has_grouplike_basis(&self) -> bool {
        let g = self.grouplikes();
        let mut rs = RowSpace::new();
        for x in &g {
            rs.insert(&x.0);
        }
        rs.dim() == self.dim()
    }

    pub fn with_antipode(&self, antipode: Vec<HopfElement>) -> Result<Arc<Self>> {
        let mut t = self.tables();
        t.antipode = antipode;
        HopfAlgebra::from_tables(&format!("{}~", self.name), t)
    }
}

/// Characters G -> k^* as value vectors indexed by group elements.
fn group_characters(table: &[Vec<usize>]) -> Vec<Vec<CycScalar>> {
    let n = table.len();
    let e = (0..n).find(|&i| (0..n).all(|j| table[i][j] == j)).unwrap();
    let order = |g: usize| {
        let mut k = 1;
        let mut x = g;
        while x != e {
            x = table[x][g];
            k += 1;
        }
        k as u64
    };
    let exponent = (0..n).map(order).fold(1u64, |a, b| num_integer::lcm(a, b));
    // greedy generators with words for every element
    let mut gens: Vec<usize> = Vec::new();
    let mut words: Vec<Option<Vec<usize>>> = vec![None; n];
    words[e] = Some(vec![]);
    loop {
        // close under right multiplication by current generators
        let mut changed = true;
        while changed {
            changed = false;
            for x in 0..n {
                if let Some(w) = words[x].clone() {
                    for (gi, &g) in gens.iter().enumerate() {
                        let y = table[x][g];
                        if words[y].is_none() {
                            let mut w2 = w.clone();
                            w2.push(gi);
                            words[y] = Some(w2);
                            changed = true;
                        }
                    }
                }
            }
        }
        match (0..n).find(|&x| words[x].is_none()) {
            Some(x) => gens.push(x),
            None => break,
        }
    }
    let roots: Vec<CycScalar> = (0..exponent as i64)
        .map(|k| CycScalar::root_of_unity(exponent, k))
        .collect();
    let mut out = Vec::new();
    let mut assign = vec![0usize; gens.len()];
    loop {
        let values: Vec<CycScalar> = (0..n)
            .map(|x| {
                let mut v = CycScalar::one();
                for &gi in words[x].as_ref().unwrap() {
                    v = &v * &roots[assign[gi]];
                }
                v
            })
            .collect();
        let hom = (0..n).all(|a| (0..n).all(|b| values[table[a][b]] == &values[a] * &values[b]));
        if hom {
            out.push(values);
        }
        // next assignment
        let mut k = 0;
        loop {
            if k == assign.len() {
                return out;
            }
            assign[k] += 1;
            if assign[k] < roots.len() {
                break;
            }
            assign[k] = 0;
            k += 1;
        }
    }
}

struct HopfDomain<'a>(&'a HopfAlgebra);

impl Domain for HopfDomain<'_> {
    type Value = HopfElement;
    fn scalar(&self, c: CycScalar) -> HopfElement {
        self.0.scalar(&c)
    }
    fn ident(&self, name: &str) -> Option<HopfElement> {
        self.0.element(name)
    }
    fn add(&self, a: HopfElement, b: HopfElement) -> Result<HopfElement> {
        Ok(&a + &b)
    }
    fn neg(&self, a: HopfElement) -> HopfElement {
        -&a
    }
    fn mul(&self, a: HopfElement, b: HopfElement) -> Result<HopfElement> {
        Ok(self.0.mul(&a, &b))
    }
    fn as_scalar(&self, a: &HopfElement) -> Option<CycScalar> {
        // scalar multiples of the unit
        let idx = self.0.unit.0.iter().position(|c| !c.is_zero())?;
        let c = &a.0[idx] / &self.0.unit.0[idx];
        (self.0.unit.scale(&c) == *a).then_some(c)
    }
}
