//! Group gradings from diagonal coactions, strong gradedness, and the
//! product formula for v^s u^s in the quantum Weyl algebra.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::action::CoactionSpec;
use crate::error::{Error, Result};
use crate::hopf::HopfElement;
use crate::linalg::{RowSpace, Vector};
use crate::pbw::{filtered_dim2, polynomial_ring, Monomial, PbwElement, PbwPresentation};
use crate::scalar::CycScalar;
use crate::verdict::Verdict;

/// A grading of a PBW algebra by the grouplikes of K, read off a diagonal coaction.
#[derive(Clone, Debug)]
pub struct Grading {
    pub algebra: Arc<PbwPresentation>,
    pub labels: Vec<String>,
    pub elements: Vec<HopfElement>,
    /// table[a][b] = index of g_a g_b
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub generator_weights: Vec<usize>,
}

impl Grading {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn inverse(&self, g: usize) -> usize {
        (0..self.order())
            .find(|&h| self.table[g][h] == self.identity)
            .expect("group table has inverses")
    }

    pub fn weight(&self, m: &Monomial) -> usize {
        m.word()
            .into_iter()
            .fold(self.identity, |acc, x| self.table[acc][self.generator_weights[x]])
    }

    /// PBW monomials of filtration degree at most n in each component.
    pub fn components(&self, n: usize) -> Vec<Vec<Monomial>> {
        let mut out = vec![Vec::new(); self.order()];
        for m in self.algebra.monomials_up_to(n) {
            out[self.weight(&m)].push(m);
        }
        out
    }

    /// dims[g][d] = dim(R_g ∩ F_d) for d = 0..=n.
    pub fn component_dims(&self, n: usize) -> Vec<Vec<usize>> {
        let mut dims = vec![vec![0; n + 1]; self.order()];
        for m in self.algebra.monomials_up_to(n) {
            let g = self.weight(&m);
            for d in m.degree()..=n {
                dims[g][d] += 1;
            }
        }
        dims
    }
}

/// The grading induced by a coaction that is diagonal on generators with grouplike entries.
pub fn graded_components(spec: &CoactionSpec) -> Result<Grading> {
    let k = spec.hopf();
    let elements = k.grouplikes();
    if elements.len() != k.dim() || !k.has_grouplike_basis() {
        return Err(Error::Unsupported(format!(
            "{} is not spanned by grouplikes",
            k.name()
        )));
    }
    let find = |x: &HopfElement| elements.iter().position(|g| g == x);
    let identity = find(&k.one()).ok_or_else(|| Error::Inconsistent("unit is not grouplike".into()))?;
    let table = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| find(&k.mul(a, b)).ok_or_else(|| Error::Inconsistent("grouplikes not closed".into())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let n = spec.algebra().ngens();
    let mut generator_weights = Vec::with_capacity(n);
    for j in 0..n {
        if !spec.f(j).is_zero() || (0..n).any(|i| i != j && !spec.e(i, j).is_zero()) {
            return Err(Error::Precondition(format!(
                "coaction is not diagonal on `{}`",
                spec.algebra().generators()[j]
            )));
        }
        let g = find(spec.e(j, j)).ok_or_else(|| {
            Error::Precondition(format!(
                "coefficient of `{}` is not grouplike",
                spec.algebra().generators()[j]
            ))
        })?;
        generator_weights.push(g);
    }
    let labels = elements
        .iter()
        .map(|g| match k.group_table() {
            Some(_) => k.format(g),
            None => format!("[{}]", k.format(g)),
        })
        .collect();
    let grading = Grading {
        algebra: spec.algebra().clone(),
        labels,
        elements,
        table,
        identity,
        generator_weights,
    };
    for r in spec.algebra().relations() {
        let mut ws = r.terms().keys().map(|w| {
            w.0.iter()
                .fold(grading.identity, |acc, &x| grading.table[acc][grading.generator_weights[x]])
        });
        let first = ws.next();
        if ws.any(|w| Some(w) != first) {
            return Err(Error::Precondition("relation is not homogeneous for the grading".into()));
        }
    }
    Ok(grading)
}

/// 1 = sum of coefficient * left * right with left in R_g, right in R_{g^-1}.
#[derive(Clone, Debug)]
pub struct Witness {
    pub component: usize,
    pub terms: Vec<(CycScalar, Monomial, Monomial)>,
}

impl Witness {
    pub fn evaluate(&self, p: &Arc<PbwPresentation>) -> PbwElement {
        let mut acc = PbwElement::zero(p);
        for (c, l, r) in &self.terms {
            let x = PbwElement::monomial(p, l.clone(), CycScalar::one());
            let y = PbwElement::monomial(p, r.clone(), CycScalar::one());
            acc = &acc + &(&x * &y).scale(c);
        }
        acc
    }

    pub fn format(&self, p: &PbwPresentation) -> String {
        let names = p.generators();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, l, r)| format!("({c})*[{}]*[{}]", l.fmt_with(names), r.fmt_with(names)))
            .collect();
        parts.join(" + ")
    }
}

#[derive(Clone, Debug)]
pub enum ComponentResult {
    Witness(Witness),
    /// No witness with both factors in F_n.
    NotFound(usize),
    /// 1 is outside a proper ideal containing R_g.
    Excluded(String),
}

#[derive(Clone, Debug)]
pub struct GaloisReport {
    pub labels: Vec<String>,
    pub bound: usize,
    pub component_dims: Vec<Vec<usize>>,
    pub total_dims: Vec<usize>,
    pub components: Vec<ComponentResult>,
    pub strongly_graded: Verdict,
    /// True when a negative verdict does not depend on the bound.
    pub unconditional: bool,
    pub product_formula_check: Option<Verdict>,
}

impl fmt::Display for GaloisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group of order {}: {}", self.labels.len(), self.labels.join(", "))?;
        writeln!(f, "dim F_n: {:?}", self.total_dims)?;
        for (l, d) in self.labels.iter().zip(&self.component_dims) {
            writeln!(f, "  R_{l}: {d:?}")?;
        }
        for (l, c) in self.labels.iter().zip(&self.components) {
            match c {
                ComponentResult::Witness(w) => writeln!(f, "  1 in R_{l} R_{l}^-1 ({} terms)", w.terms.len())?,
                ComponentResult::NotFound(n) => writeln!(f, "  1 not found in R_{l} R_{l}^-1 at bound {n}")?,
                ComponentResult::Excluded(why) => writeln!(f, "  1 not in R_{l} R_{l}^-1: {why}")?,
            }
        }
        writeln!(f, "strongly graded: {}", self.strongly_graded)?;
        if let Some(v) = &self.product_formula_check {
            writeln!(f, "product formula: {v}")?;
        }
        Ok(())
    }
}

/// A generator x such that every rewrite involving x keeps x in each term.
/// Then the monomials containing x span a proper two-sided ideal.
fn ideal_generator(p: &PbwPresentation, x: usize) -> bool {
    let keeps = |t: &crate::pbw::Terms| t.keys().all(|m| m.exponents()[x] > 0);
    let n = p.ngens();
    for j in 0..n {
        for i in 0..j {
            if i != x && j != x {
                continue;
            }
            if let Some(r) = p.swap_rule(j, i) {
                if !keeps(&r.tail) {
                    return false;
                }
            }
        }
    }
    p.power_rule(x).map(keeps).unwrap_or(true)
}

fn exclusion_certificate(g: &Grading) -> Option<(usize, String)> {
    let p = &g.algebra;
    let moving: Vec<usize> = (0..p.ngens())
        .filter(|&i| g.generator_weights[i] != g.identity)
        .collect();
    if moving.len() != 1 {
        return None;
    }
    let x = moving[0];
    ideal_generator(p, x).then(|| {
        (
            x,
            format!(
                "every element of a nontrivial component lies in the proper ideal spanned by monomials containing {}",
                p.generators()[x]
            ),
        )
    })
}

fn search(g: &Grading, comps: &[Vec<Monomial>], s: usize, bound: usize) -> ComponentResult {
    let p = &g.algebra;
    let t = g.inverse(s);
    let long = p.monomials_up_to(2 * bound);
    let len = long.len();
    let index: HashMap<Monomial, usize> = long.into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut one = vec![CycScalar::zero(); len];
    one[index[&Monomial::one(p.ngens())]] = CycScalar::one();
    let mut rs = RowSpace::tracking();
    let mut pairs: Vec<(Monomial, Monomial)> = Vec::new();
    for n in 0..=bound {
        for l in comps[s].iter().filter(|m| m.degree() <= n) {
            for r in comps[t].iter().filter(|m| m.degree() <= n) {
                if l.degree() < n && r.degree() < n {
                    continue;
                }
                let x = PbwElement::monomial(p, l.clone(), CycScalar::one());
                let y = PbwElement::monomial(p, r.clone(), CycScalar::one());
                let v: Vector = (&x * &y).to_vector(&index, len).expect("degree within bound");
                rs.insert(&v);
                pairs.push((l.clone(), r.clone()));
            }
        }
        if let Some(coords) = rs.coordinates(&one) {
            let terms = coords
                .into_iter()
                .zip(&pairs)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, (l, r))| (c, l.clone(), r.clone()))
                .collect();
            return ComponentResult::Witness(Witness { component: s, terms });
        }
    }
    ComponentResult::NotFound(bound)
}

/// Decides whether R_g R_{g^-1} contains 1 for every g, searching with both factors in F_bound.
pub fn strongly_graded_check(spec: &CoactionSpec, bound: usize) -> Result<GaloisReport> {
    let g = graded_components(spec)?;
    let comps = g.components(bound);
    let cert = exclusion_certificate(&g);
    let results: Vec<ComponentResult> = (0..g.order())
        .into_par_iter()
        .map(|s| {
            if s == g.identity {
                let one = Monomial::one(g.algebra.ngens());
                return ComponentResult::Witness(Witness {
                    component: s,
                    terms: vec![(CycScalar::one(), one.clone(), one)],
                });
            }
            match search(&g, &comps, s, bound) {
                ComponentResult::NotFound(n) => match &cert {
                    Some((_, why)) => ComponentResult::Excluded(why.clone()),
                    None => ComponentResult::NotFound(n),
                },
                other => other,
            }
        })
        .collect();
    let mut bad = Vec::new();
    for (s, r) in results.iter().enumerate() {
        match r {
            ComponentResult::Witness(w) => {
                let e = w.evaluate(&g.algebra);
                if e != PbwElement::one(&g.algebra) {
                    return Err(Error::Inconsistent(format!(
                        "witness for {} multiplies to {e}",
                        g.labels[s]
                    )));
                }
            }
            _ => bad.push(g.labels[s].clone()),
        }
    }
    let unconditional = results.iter().any(|r| matches!(r, ComponentResult::Excluded(_)));
    let strongly_graded = if bad.is_empty() {
        Verdict::pass("1 in R_g R_{g^-1} for every g, witnesses re-multiplied to 1")
    } else if unconditional {
        Verdict::fail(format!("not strongly graded: 1 not in R_g R_g^-1 for g in {{{}}}", bad.join(", ")))
    } else {
        Verdict::fail(format!(
            "no witness for {{{}}} with factors of degree at most {bound}",
            bad.join(", ")
        ))
    };
    let total_dims = (0..=bound)
        .map(|d| g.algebra.monomials_up_to(d).len())
        .collect();
    Ok(GaloisReport {
        labels: g.labels.clone(),
        bound,
        component_dims: g.component_dims(bound),
        total_dims,
        components: results,
        strongly_graded,
        unconditional,
        product_formula_check: None,
    })
}

/// Surjectivity of a -> b |-> (a ⊗ 1) rho(b), through the strongly graded criterion.
pub fn galois_beta_surjectivity(spec: &CoactionSpec, bound: usize) -> Result<(Verdict, GaloisReport)> {
    let report = strongly_graded_check(spec, bound)?;
    let v = &report.strongly_graded;
    let detail = format!(
        "K is a group algebra, so Galois iff strongly graded; {}",
        v.detail
    );
    Ok((Verdict::check(v.pass, detail), report))
}

/// v^s u^s in k<u,v>/(vu - q uv - 1), written as a polynomial in c = uv.
///
/// Computed by normal forms and compared with prod_{i=1}^s (q^i c + [i]_q).
pub fn q_product_formula(q: &CycScalar, s: u32) -> Result<PbwElement> {
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    let r = filtered_dim2(q.clone(), 0, CycScalar::zero(), CycScalar::zero(), CycScalar::from_int(-1))?;
    let u = PbwElement::gen(&r, "u");
    let v = PbwElement::gen(&r, "v");
    let lhs = &v.pow(s) * &u.pow(s);
    let c = &u * &v;
    // c^i has leading term q^(i(i-1)/2) u^i v^i; peel off from the top
    let powers: Vec<PbwElement> = (0..=s).map(|i| c.pow(i)).collect();
    let kc = polynomial_ring(&["c".to_string()])?;
    let cvar = PbwElement::gen(&kc, "c");
    let mut rest = lhs;
    let mut poly = PbwElement::zero(&kc);
    for i in (0..=s).rev() {
        let m = Monomial::from_exponents(vec![i, i]);
        let coef = &rest.coefficient(&m) * &powers[i as usize].coefficient(&m).inv()?;
        rest = &rest - &powers[i as usize].scale(&coef);
        poly = &poly + &cvar.pow(i).scale(&coef);
    }
    if !rest.is_zero() {
        return Err(Error::Inconsistent(format!("v^{s} u^{s} is not a polynomial in uv: remainder {rest}")));
    }
    let mut formula = PbwElement::one(&kc);
    for i in 1..=s as i64 {
        let factor = &cvar.scale(&q.pow(i)?) + &PbwElement::scalar(&kc, CycScalar::q_integer(q, i as u64));
        formula = &formula * &factor;
    }
    if formula != poly {
        return Err(Error::Inconsistent(format!("normal form gives {poly}, product formula gives {formula}")));
    }
    Ok(poly)
}

/// Checks the product formula for s = 1..=m-1 and reports f_{m-1}(0).
pub fn product_formula_check(q: &CycScalar, m: u32) -> Verdict {
    let mut last = None;
    for s in 1..m.max(2) {
        match q_product_formula(q, s) {
            Ok(p) => last = Some(p),
            Err(e) => return Verdict::fail(e.to_string()),
        }
    }
    let f0 = last.map(|p| p.constant_term()).unwrap_or_else(CycScalar::one);
    Verdict::check(
        !f0.is_zero(),
        format!("f_s(c) = prod (q^i c + [i]_q) for s < {}, f_{}(0) = {f0}", m.max(2), m.max(2) - 1),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::ActionSpec;
    use crate::hopf::cyclic;

    fn s(n: i64) -> CycScalar {
        CycScalar::from_int(n)
    }

    fn rho(v: &[(&str, &str)]) -> Vec<(String, String)> {
        v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    fn qweyl_graded(q: CycScalar, m: usize) -> CoactionSpec {
        let r = filtered_dim2(q, 0, s(0), s(0), s(-1)).unwrap();
        let k = cyclic(m).unwrap();
        let inv = if m == 1 { "1".to_string() } else if m == 2 { "g".into() } else { format!("g{}", m - 1) };
        let g = if m == 1 { "1" } else { "g" };
        CoactionSpec::parse(k, r, &rho(&[("u", &format!("u # {g}")), ("v", &format!("v # {inv}"))])).unwrap()
    }

    fn shift(m: usize) -> CoactionSpec {
        let r = filtered_dim2(s(1), 0, s(0), s(-1), s(0)).unwrap();
        CoactionSpec::parse(cyclic(m).unwrap(), r, &rho(&[("u", "u # 1"), ("v", "v # g")])).unwrap()
    }

    #[test]
    fn components_of_quantum_weyl() {
        let c = qweyl_graded(s(2), 3);
        let g = graded_components(&c).unwrap();
        let comps = g.components(3);
        let p = c.algebra();
        let u = Monomial::from_exponents(vec![1, 0]);
        let v2 = Monomial::from_exponents(vec![0, 2]);
        let w1 = g.generator_weights[0];
        assert!(comps[w1].contains(&u) && comps[w1].contains(&v2));
        let dims = g.component_dims(3);
        for d in 0..=3 {
            let tot: usize = dims.iter().map(|x| x[d]).sum();
            assert_eq!(tot, p.monomials_up_to(d).len());
        }
        let trivial = qweyl_graded(s(2), 1);
        let g = graded_components(&trivial).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.components(4)[0].len(), 15);
    }

    #[test]
    fn shift_components_by_v_count() {
        let c = shift(3);
        let g = graded_components(&c).unwrap();
        for (k, comp) in g.components(5).iter().enumerate() {
            for m in comp {
                let b = m.exponents()[1] as usize;
                assert_eq!(g.weight(m), k);
                assert_eq!(g.labels[k] == "1", b % 3 == 0);
            }
        }
    }

    #[test]
    fn shift_is_not_strongly_graded() {
        for m in 2..5 {
            let r = strongly_graded_check(&shift(m), 4).unwrap();
            assert!(!r.strongly_graded.pass);
            assert!(r.unconditional, "{r}");
        }
    }

    #[test]
    fn quantum_weyl_grading_is_strongly_graded() {
        for (m, bound) in [(2, 2), (3, 3)] {
            let r = strongly_graded_check(&qweyl_graded(s(2), m), bound).unwrap();
            assert!(r.strongly_graded.pass, "{r}");
        }
        let z7 = CycScalar::root_of_unity(7, 1);
        let r = strongly_graded_check(&qweyl_graded(z7, 3), 3).unwrap();
        assert!(r.strongly_graded.pass, "{r}");
        let (v, _) = galois_beta_surjectivity(&qweyl_graded(s(2), 1), 1).unwrap();
        assert!(v.pass);
    }

    #[test]
    fn jordan_with_sign_action_is_strongly_graded() {
        let r = filtered_dim2(s(1), 1, s(0), s(0), s(-1)).unwrap();
        let b = vec![("g".to_string(), vec![("u".to_string(), "-u".to_string()), ("v".to_string(), "-v".to_string())])];
        let act = ActionSpec::parse(cyclic(2).unwrap(), r, &b).unwrap();
        let rep = strongly_graded_check(&act.dualize(), 1).unwrap();
        assert!(rep.strongly_graded.pass, "{rep}");
        for c in &rep.components {
            if let ComponentResult::Witness(w) = c {
                for (_, l, r) in &w.terms {
                    assert_eq!(l.degree() % 2, r.degree() % 2);
                }
            }
        }
    }

    #[test]
    fn non_diagonal_coaction_is_rejected() {
        let r = filtered_dim2(s(-1), 0, s(0), s(0), s(-1)).unwrap();
        let c = CoactionSpec::parse(crate::hopf::sweedler4(), r, &rho(&[("u", "u # g"), ("v", "v # g + 1 # f")])).unwrap();
        assert!(graded_components(&c).is_err());
    }

    #[test]
    fn product_formula_small_cases() {
        let q = s(3);
        let kc = polynomial_ring(&["c".to_string()]).unwrap();
        let f1 = q_product_formula(&q, 1).unwrap();
        assert_eq!(f1, PbwElement::parse(&kc, "3*c + 1").unwrap());
        let f2 = q_product_formula(&q, 2).unwrap();
        assert_eq!(f2, PbwElement::parse(&kc, "(3*c + 1)*(9*c + 4)").unwrap());
        let z5 = CycScalar::root_of_unity(5, 1);
        for k in 1..5 {
            q_product_formula(&z5, k).unwrap();
        }
    }

    #[test]
    fn product_formula_against_differential_operators() {
        // u = x, v = d/dx on k[x]: v^3 u^3 x^k = (k+1)(k+2)(k+3) x^k and c x^k = k x^k
        let f3 = q_product_formula(&s(1), 3).unwrap();
        for k in 0..6i64 {
            let mut val = CycScalar::zero();
            for (m, coef) in f3.terms() {
                val += &(coef * &s(k.pow(m.exponents()[0])));
            }
            assert_eq!(val, s((k + 1) * (k + 2) * (k + 3)));
        }
    }

    #[test]
    fn small_order_q_loses_the_constant() {
        assert!(product_formula_check(&s(2), 4).pass);
        let minus = s(-1);
        assert!(!product_formula_check(&minus, 3).pass);
    }
}
