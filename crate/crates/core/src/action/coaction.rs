use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use super::{transport_matrices, ActionSpec};
use crate::error::{Error, Result};
use crate::expr::{self, Expr};
use crate::hopf::{self, HopfAlgebra, HopfElement, Tensor};
use crate::linalg::{self, Matrix};
use crate::pbw::{AffineSubstitution, BasisChange, FreeElement, Monomial, PbwElement, PbwPresentation, Word};
use crate::scalar::CycScalar;
use crate::verdict::Verdict;

/// A right coaction rho(u_j) = sum_i u_i (x) e_ij + 1 (x) f_j.
pub struct CoactionSpec {
    hopf: Arc<HopfAlgebra>,
    algebra: Arc<PbwPresentation>,
    e: Vec<Vec<HopfElement>>,
    f: Vec<HopfElement>,
    cache: RwLock<HashMap<Monomial, Arc<Vec<PbwElement>>>>,
}

impl Clone for CoactionSpec {
    fn clone(&self) -> Self {
        CoactionSpec {
            hopf: self.hopf.clone(),
            algebra: self.algebra.clone(),
            e: self.e.clone(),
            f: self.f.clone(),
            cache: RwLock::new(HashMap::new()),
        }
    }
}

impl PartialEq for CoactionSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.hopf, &other.hopf)
            && *self.algebra == *other.algebra
            && self.e == other.e
            && self.f == other.f
    }
}

impl fmt::Debug for CoactionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CoactionSpec({} on {}: {})",
            self.hopf.name(),
            self.algebra.name(),
            self.describe().join(", ")
        )
    }
}

/// Sum of pure tensors, or a plain scalar before it meets a tensor.
enum TVal {
    Scalar(CycScalar),
    Sum(Vec<(FreeElement, HopfElement)>),
}

fn has_tensor(e: &Expr) -> bool {
    match e {
        Expr::Num(_) | Expr::Ident(..) => false,
        Expr::Tensor(..) => true,
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
            has_tensor(a) || has_tensor(b)
        }
        Expr::Neg(a) | Expr::Pow(a, _, _) => has_tensor(a),
    }
}

fn scale_sum(v: Vec<(FreeElement, HopfElement)>, c: &CycScalar) -> Vec<(FreeElement, HopfElement)> {
    v.into_iter().map(|(a, b)| (a.scale(c), b)).collect()
}

fn eval_tensor(names: &[String], h: &HopfAlgebra, e: &Expr) -> Result<TVal> {
    if !has_tensor(e) {
        return Ok(TVal::Scalar(expr::eval_scalar(e)?));
    }
    let sum = |v: TVal| -> Result<Vec<(FreeElement, HopfElement)>> {
        match v {
            TVal::Sum(s) => Ok(s),
            TVal::Scalar(c) if c.is_zero() => Ok(Vec::new()),
            TVal::Scalar(_) => Err(Error::parse(0, "cannot add a scalar to a tensor")),
        }
    };
    Ok(match e {
        Expr::Tensor(a, b, _) => TVal::Sum(vec![(FreeElement::from_expr(names, a)?, h.eval_expr(b)?)]),
        Expr::Add(a, b) => {
            let mut x = sum(eval_tensor(names, h, a)?)?;
            x.extend(sum(eval_tensor(names, h, b)?)?);
            TVal::Sum(x)
        }
        Expr::Sub(a, b) => {
            let mut x = sum(eval_tensor(names, h, a)?)?;
            x.extend(scale_sum(sum(eval_tensor(names, h, b)?)?, &CycScalar::from_int(-1)));
            TVal::Sum(x)
        }
        Expr::Neg(a) => TVal::Sum(scale_sum(sum(eval_tensor(names, h, a)?)?, &CycScalar::from_int(-1))),
        Expr::Mul(a, b) => match (eval_tensor(names, h, a)?, eval_tensor(names, h, b)?) {
            (TVal::Scalar(c), TVal::Sum(s)) | (TVal::Sum(s), TVal::Scalar(c)) => TVal::Sum(scale_sum(s, &c)),
            _ => return Err(Error::parse(0, "tensors can only be multiplied by scalars")),
        },
        Expr::Div(a, b, col) => {
            if has_tensor(b) {
                return Err(Error::parse(*col, "can only divide by scalars"));
            }
            let c = expr::eval_scalar(b)?
                .inv()
                .map_err(|_| Error::parse(*col, "division by zero"))?;
            TVal::Sum(scale_sum(sum(eval_tensor(names, h, a)?)?, &c))
        }
        Expr::Pow(_, _, col) => return Err(Error::parse(*col, "powers of tensors are not allowed")),
        Expr::Num(_) | Expr::Ident(..) => unreachable!(),
    })
}

/// Splits sum_k w_k (x) h_k into the e_ij and f_j of generator j.
fn split_image(
    n: usize,
    dim: usize,
    parts: &[(FreeElement, HopfElement)],
) -> Result<(Vec<HopfElement>, HopfElement)> {
    let mut e = vec![HopfElement::zero(dim); n];
    let mut f = HopfElement::zero(dim);
    for (w, k) in parts {
        for (word, c) in w.terms() {
            let kc = k.scale(c);
            match word.0.as_slice() {
                [] => f = &f + &kc,
                [i] => e[*i] = &e[*i] + &kc,
                _ => {
                    return Err(Error::InvalidParameter(
                        "coaction images must have degree at most 1".into(),
                    ))
                }
            }
        }
    }
    Ok((e, f))
}

fn parse_rho(h: &HopfAlgebra, names: &[String], rho: &[(String, String)]) -> Result<(Vec<Vec<HopfElement>>, Vec<HopfElement>)> {
    let n = names.len();
    let mut e = vec![vec![HopfElement::zero(h.dim()); n]; n];
    let mut f = Vec::new();
    for (j, g) in names.iter().enumerate() {
        let Some((_, s)) = rho.iter().find(|(name, _)| name == g) else {
            return Err(Error::InvalidParameter(format!("rho(`{g}`) is not given")));
        };
        let parts = match eval_tensor(names, h, &expr::parse(s)?)? {
            TVal::Sum(p) => p,
            TVal::Scalar(c) if c.is_zero() => Vec::new(),
            TVal::Scalar(_) => return Err(Error::InvalidParameter(format!("rho(`{g}`) is not a tensor"))),
        };
        let (col, fj) = split_image(n, h.dim(), &parts)?;
        for (i, x) in col.into_iter().enumerate() {
            e[i][j] = x;
        }
        f.push(fj);
    }
    if let Some((extra, _)) = rho.iter().find(|(name, _)| !names.contains(name)) {
        return Err(Error::InvalidParameter(format!("unknown generator `{extra}`")));
    }
    Ok((e, f))
}

/// Per-basis component matrices on (1, u_0, ..).
fn components_of(h: &HopfAlgebra, e: &[Vec<HopfElement>], f: &[HopfElement]) -> Vec<Matrix> {
    let n = f.len();
    let one = h.one();
    (0..h.dim())
        .map(|k| {
            let mut m = vec![linalg::zero_vec(n + 1); n + 1];
            m[0][0] = one.0[k].clone();
            for j in 0..n {
                m[0][j + 1] = f[j].0[k].clone();
                for i in 0..n {
                    m[i + 1][j + 1] = e[i][j].0[k].clone();
                }
            }
            m
        })
        .collect()
}

fn parts_of(dim: usize, mats: &[Matrix]) -> (Vec<Vec<HopfElement>>, Vec<HopfElement>) {
    let n = mats[0].len() - 1;
    let entry = |i: usize, j: usize| HopfElement((0..dim).map(|k| mats[k][i][j].clone()).collect());
    let e = (0..n)
        .map(|i| (0..n).map(|j| entry(i + 1, j + 1)).collect())
        .collect();
    let f = (0..n).map(|j| entry(0, j + 1)).collect();
    (e, f)
}

/// Names of the symbols used by [`symbolic_expansion`]: e11.., then f1...
pub fn symbol_names(n: usize) -> Vec<String> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            out.push(format!("e{i}{j}"));
        }
    }
    out.extend((1..=n).map(|j| format!("f{j}")));
    out
}

/// rho(r) with generic noncommuting coefficients e_ij, f_j, keyed by words in the
/// algebra generators.
pub fn symbolic_expansion(n: usize, r: &FreeElement) -> BTreeMap<Word, FreeElement> {
    let image = |j: usize| -> Vec<(Vec<usize>, FreeElement)> {
        let mut v: Vec<(Vec<usize>, FreeElement)> = (0..n)
            .map(|i| (vec![i], FreeElement::generator(i * n + j)))
            .collect();
        v.push((vec![], FreeElement::generator(n * n + j)));
        v
    };
    let mut out: BTreeMap<Word, FreeElement> = BTreeMap::new();
    for (w, c) in r.terms() {
        let mut cur: Vec<(Vec<usize>, FreeElement)> = vec![(vec![], FreeElement::scalar(c.clone()))];
        for &g in &w.0 {
            let mut next = Vec::new();
            for (a, s) in &cur {
                for (b, t) in image(g) {
                    let mut ab = a.clone();
                    ab.extend(b);
                    next.push((ab, s * &t));
                }
            }
            cur = next;
        }
        for (word, s) in cur {
            let e = out.entry(Word(word)).or_insert_with(FreeElement::zero);
            *e = &*e + &s;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

impl CoactionSpec {
    pub fn from_parts(
        hopf: Arc<HopfAlgebra>,
        algebra: Arc<PbwPresentation>,
        e: Vec<Vec<HopfElement>>,
        f: Vec<HopfElement>,
    ) -> Result<Self> {
        let n = algebra.ngens();
        let d = hopf.dim();
        let ok = e.len() == n
            && f.len() == n
            && e.iter().all(|r| r.len() == n && r.iter().all(|x| x.0.len() == d))
            && f.iter().all(|x| x.0.len() == d);
        if !ok {
            return Err(Error::InvalidParameter("coaction data has the wrong shape".into()));
        }
        Ok(CoactionSpec {
            hopf,
            algebra,
            e,
            f,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Reads images like `rho(v) = "v # g + 1 # f"`.
    pub fn parse(hopf: Arc<HopfAlgebra>, algebra: Arc<PbwPresentation>, rho: &[(String, String)]) -> Result<Self> {
        let (e, f) = parse_rho(&hopf, algebra.generators(), rho)?;
        Self::from_parts(hopf, algebra, e, f)
    }

    /// Reads images in the source generators of a change of basis.
    pub fn parse_via(hopf: Arc<HopfAlgebra>, change: &BasisChange, rho: &[(String, String)]) -> Result<Self> {
        let (e, f) = parse_rho(&hopf, &change.source_names, rho)?;
        let mats = transport_matrices(&change.substitution, &components_of(&hopf, &e, &f))?;
        let (e, f) = parts_of(hopf.dim(), &mats);
        Self::from_parts(hopf, change.presentation.clone(), e, f)
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        &self.hopf
    }

    pub fn algebra(&self) -> &Arc<PbwPresentation> {
        &self.algebra
    }

    /// e_ij for generators i, j.
    pub fn e(&self, i: usize, j: usize) -> &HopfElement {
        &self.e[i][j]
    }

    pub fn f(&self, j: usize) -> &HopfElement {
        &self.f[j]
    }

    /// Component matrices on (1, u_0, ..), one per basis element of K.
    pub fn components(&self) -> Vec<Matrix> {
        components_of(&self.hopf, &self.e, &self.f)
    }

    /// The equivalent left action of the dual Hopf algebra.
    pub fn dualize(&self) -> ActionSpec {
        ActionSpec::from_matrices(hopf::dual(&self.hopf), self.algebra.clone(), self.components())
            .expect("components have matching shape")
    }

    fn rho_generator(&self, j: usize) -> Vec<PbwElement> {
        let p = &self.algebra;
        (0..self.hopf.dim())
            .map(|k| {
                let mut x = PbwElement::scalar(p, self.f[j].0[k].clone());
                for i in 0..p.ngens() {
                    let c = &self.e[i][j].0[k];
                    if !c.is_zero() {
                        x = &x + &PbwElement::generator(p, i).scale(c);
                    }
                }
                x
            })
            .collect()
    }

    fn rho_monomial(&self, m: &Monomial) -> Arc<Vec<PbwElement>> {
        if let Some(v) = self.cache.read().unwrap().get(m) {
            return v.clone();
        }
        let p = &self.algebra;
        let d = self.hopf.dim();
        let out = match m.last_generator() {
            None => {
                let one = self.hopf.one();
                (0..d).map(|k| PbwElement::scalar(p, one.0[k].clone())).collect()
            }
            Some(l) => {
                let head = self.rho_monomial(&m.bumped(l, -1));
                let last = self.rho_generator(l);
                let mut out = vec![PbwElement::zero(p); d];
                for (a, x) in head.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (b, y) in last.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        let xy = x * y;
                        for (c, coef) in self.hopf.mul_basis(a, b).0.iter().enumerate() {
                            if !coef.is_zero() {
                                out[c] = &out[c] + &xy.scale(coef);
                            }
                        }
                    }
                }
                out
            }
        };
        let out = Arc::new(out);
        self.cache.write().unwrap().insert(m.clone(), out.clone());
        out
    }

    /// rho(r) as its components along the basis of K.
    pub fn rho(&self, r: &PbwElement) -> Result<Vec<PbwElement>> {
        if **r.presentation() != *self.algebra {
            return Err(Error::PresentationMismatch);
        }
        let p = &self.algebra;
        let mut out = vec![PbwElement::zero(p); self.hopf.dim()];
        for (m, c) in r.terms() {
            for (k, x) in self.rho_monomial(m).iter().enumerate() {
                if !x.is_zero() {
                    out[k] = &out[k] + &x.scale(c);
                }
            }
        }
        Ok(out)
    }

    /// rho(r) written as `a # k + ...`.
    pub fn format_rho(&self, comps: &[PbwElement]) -> String {
        let parts: Vec<String> = comps
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| {
                let s = x.to_string();
                let s = if x.terms().len() > 1 { format!("({s})") } else { s };
                format!("{} # {}", s, self.hopf.labels()[k])
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Lines like `rho(v) = v # g + 1 # f`.
    pub fn describe(&self) -> Vec<String> {
        (0..self.algebra.ngens())
            .map(|j| {
                format!(
                    "rho({}) = {}",
                    self.algebra.generators()[j],
                    self.format_rho(&self.rho_generator(j))
                )
            })
            .collect()
    }

    /// rho(r) in (free algebra) (x) K, keyed by words.
    pub fn expand_relation(&self, r: &FreeElement) -> BTreeMap<Word, HopfElement> {
        let h = &self.hopf;
        let n = self.algebra.ngens();
        let image = |j: usize| -> Vec<(Vec<usize>, HopfElement)> {
            let mut v: Vec<(Vec<usize>, HopfElement)> = (0..n)
                .filter(|&i| !self.e[i][j].is_zero())
                .map(|i| (vec![i], self.e[i][j].clone()))
                .collect();
            if !self.f[j].is_zero() {
                v.push((vec![], self.f[j].clone()));
            }
            v
        };
        let mut out: BTreeMap<Word, HopfElement> = BTreeMap::new();
        for (w, c) in r.terms() {
            let mut cur: Vec<(Vec<usize>, HopfElement)> = vec![(vec![], h.scalar(c))];
            for &g in &w.0 {
                let mut next = Vec::new();
                for (a, s) in &cur {
                    for (b, t) in image(g) {
                        let mut ab = a.clone();
                        ab.extend(b);
                        next.push((ab, h.mul(s, &t)));
                    }
                }
                cur = next;
            }
            for (word, s) in cur {
                let e = out.entry(Word(word)).or_insert_with(|| h.zero());
                *e = &*e + &s;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// The expansion of rho on the first defining relation.
    pub fn expand_coaction_on_relation(&self) -> Option<BTreeMap<Word, HopfElement>> {
        self.algebra.relations().first().map(|r| self.expand_relation(r))
    }

    /// For a single relation r, the element g with rho(r) = r (x) g, if it exists.
    pub fn relation_grouplike(&self) -> Option<HopfElement> {
        let rels = self.algebra.relations();
        let [r] = rels.as_slice() else {
            return None;
        };
        let exp = self.expand_relation(r);
        let (lead, lc) = r.leading()?;
        let g = exp
            .get(lead)
            .cloned()
            .unwrap_or_else(|| self.hopf.zero())
            .scale(&lc.inv().ok()?);
        let words_ok = exp.keys().all(|w| !r.coefficient(&w.0).is_zero())
            && r.terms().iter().all(|(w, c)| {
                exp.get(w).cloned().unwrap_or_else(|| self.hopf.zero()) == g.scale(c)
            });
        words_ok.then_some(g)
    }

    /// Checks the comodule constraints on e_ij, f_j and that rho preserves the
    /// ideal of relations.
    pub fn verify_comodule_algebra(&self) -> Verdict {
        let h = &self.hopf;
        let n = self.algebra.ngens();
        let names = self.algebra.generators();
        let one = h.one();
        let add = |t: &mut Tensor, s: Tensor| {
            for (k, c) in s {
                let e = t.entry(k).or_default();
                *e += &c;
                if e.is_zero() {
                    t.remove(&k);
                }
            }
        };
        for i in 0..n {
            for j in 0..n {
                let mut expect = Tensor::new();
                for l in 0..n {
                    add(&mut expect, h.tensor_of(&self.e[i][l], &self.e[l][j]));
                }
                if h.comult(&self.e[i][j]) != expect {
                    return Verdict::fail(format!("coproduct of e_{}{} is wrong", names[i], names[j]));
                }
                let want = if i == j { CycScalar::one() } else { CycScalar::zero() };
                if h.counit(&self.e[i][j]) != want {
                    return Verdict::fail(format!("counit of e_{}{} is wrong", names[i], names[j]));
                }
            }
            let mut expect = h.tensor_of(&one, &self.f[i]);
            for l in 0..n {
                add(&mut expect, h.tensor_of(&self.f[l], &self.e[l][i]));
            }
            if h.comult(&self.f[i]) != expect {
                return Verdict::fail(format!("coproduct of f_{} is wrong", names[i]));
            }
            if !h.counit(&self.f[i]).is_zero() {
                return Verdict::fail(format!("counit of f_{} is nonzero", names[i]));
            }
        }
        let rels = self.algebra.relations();
        if rels.len() == 1 {
            return match self.relation_grouplike() {
                Some(g) if h.is_grouplike(&g) => Verdict::pass(format!(
                    "comodule algebra; rho(r) = r # {}",
                    h.format(&g)
                )),
                Some(g) => Verdict::fail(format!(
                    "rho(r) = r # {} but that element is not grouplike",
                    h.format(&g)
                )),
                None => Verdict::fail(format!(
                    "rho(r) does not factor as r # g for r = {}",
                    rels[0].fmt_with(names)
                )),
            };
        }
        for r in &rels {
            let exp = self.expand_relation(r);
            for k in 0..h.dim() {
                let mut comp = FreeElement::zero();
                for (w, x) in &exp {
                    comp = &comp + &FreeElement::word(w.0.clone(), x.0[k].clone());
                }
                if !self.algebra.normal_form(&comp).is_zero() {
                    return Verdict::fail(format!(
                        "rho({}) leaves the ideal of relations",
                        r.fmt_with(names)
                    ));
                }
            }
        }
        Verdict::pass("comodule algebra")
    }

    /// True when the coefficients e_ij, f_j generate K as a Hopf algebra.
    pub fn is_inner_faithful(&self) -> bool {
        let mut seed: Vec<HopfElement> = self.e.iter().flatten().cloned().collect();
        seed.extend(self.f.iter().cloned());
        self.hopf.hopf_closure(&seed).len() == self.hopf.dim()
    }

    /// The induced coaction on the associated graded algebra.
    pub fn induced_gr(&self) -> Result<CoactionSpec> {
        let gr = self.algebra.associated_graded()?;
        let f = vec![self.hopf.zero(); self.f.len()];
        Self::from_parts(self.hopf.clone(), gr, self.e.clone(), f)
    }

    /// The same coaction written in new generators.
    pub fn change_basis(&self, subst: &AffineSubstitution) -> Result<(BasisChange, CoactionSpec)> {
        let bc = self.algebra.change_basis(subst)?;
        let mats = transport_matrices(subst, &self.components())?;
        let (e, f) = parts_of(self.hopf.dim(), &mats);
        let spec = Self::from_parts(self.hopf.clone(), bc.presentation.clone(), e, f)?;
        Ok((bc, spec))
    }

    /// True when every generator is homogeneous: rho(u_j) = u_j (x) g_j.
    pub fn diagonal_grouplikes(&self) -> Option<Vec<HopfElement>> {
        let n = self.algebra.ngens();
        let mut out = Vec::new();
        for j in 0..n {
            let off = (0..n).any(|i| i != j && !self.e[i][j].is_zero());
            if off || !self.f[j].is_zero() || !self.hopf.is_grouplike(&self.e[j][j]) {
                return None;
            }
            out.push(self.e[j][j].clone());
        }
        Some(out)
    }
}
