//! Fixed subrings up to a filtration degree.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::action::{ActionSpec, CoactionSpec};
use crate::error::{Error, Result};
use crate::expr::{self, Domain};
use crate::linalg::{self, Matrix, RowSpace, Vector};
use crate::pbw::{Monomial, PbwElement, PbwPresentation};
use crate::scalar::CycScalar;
use crate::verdict::Verdict;

/// Monomials of F_n with their positions.
struct Basis {
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Basis {
    fn new(p: &PbwPresentation, n: usize) -> Self {
        let monos = p.monomials_up_to(n);
        let index = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Basis { monos, index }
    }

    fn vector(&self, x: &PbwElement) -> Vector {
        x.to_vector(&self.index, self.monos.len())
            .expect("element stays inside the filtration piece")
    }
}

/// Row-reduced basis with pivots at leading monomials, sorted by leading monomial.
fn canonical(rows: Vec<Vector>, len: usize) -> Vec<Vector> {
    let mut m: Matrix = rows
        .into_iter()
        .map(|mut r| {
            r.reverse();
            r
        })
        .collect();
    if m.is_empty() {
        return m;
    }
    for r in m.iter_mut() {
        r.resize(len, CycScalar::zero());
    }
    linalg::rref(&mut m);
    let mut out: Vec<Vector> = m
        .into_iter()
        .map(|mut r| {
            r.reverse();
            r
        })
        .collect();
    out.sort_by_key(|r| r.iter().rposition(|c| !c.is_zero()));
    out
}

fn leading_index(v: &[CycScalar]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero())
}

fn kernel_basis(ops: &[Matrix], basis: &Basis) -> Vec<Vector> {
    let len = basis.monos.len();
    let stacked: Matrix = ops.iter().flatten().cloned().collect();
    canonical(linalg::kernel(&stacked, len), len)
}

/// Matrix of x -> f(x) on the monomials of `basis`.
fn operator(basis: &Basis, f: impl Fn(&Monomial) -> PbwElement) -> Matrix {
    let len = basis.monos.len();
    let cols: Vec<Vector> = basis.monos.iter().map(|m| basis.vector(&f(m))).collect();
    (0..len).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

fn invariant_vectors(spec: &ActionSpec, basis: &Basis) -> Vec<Vector> {
    let h = spec.hopf();
    let p = spec.algebra();
    let ops: Vec<Matrix> = h
        .algebra_generators()
        .iter()
        .map(|&k| {
            let x = h.basis(k);
            let eps = h.counit(&x);
            operator(basis, |m| {
                let mono = PbwElement::monomial(p, m.clone(), CycScalar::one());
                &spec.act(&x, &mono).unwrap() - &mono.scale(&eps)
            })
        })
        .collect();
    kernel_basis(&ops, basis)
}

fn elements(p: &Arc<PbwPresentation>, basis: &Basis, rows: &[Vector]) -> Vec<PbwElement> {
    rows.iter()
        .map(|r| PbwElement::from_vector(p, &basis.monos, r))
        .collect()
}

/// Basis of (F_n)^H, each element reduced against the others' leading monomials.
pub fn invariant_subspace(spec: &ActionSpec, n: usize) -> Vec<PbwElement> {
    let basis = Basis::new(spec.algebra(), n);
    elements(spec.algebra(), &basis, &invariant_vectors(spec, &basis))
}

/// Basis of {x in F_n : rho(x) = x (x) 1}.
pub fn coinvariant_subspace(spec: &CoactionSpec, n: usize) -> Vec<PbwElement> {
    let p = spec.algebra();
    let basis = Basis::new(p, n);
    let one = spec.hopf().one();
    let ops: Vec<Matrix> = (0..spec.hopf().dim())
        .map(|k| {
            operator(&basis, |m| {
                let mono = PbwElement::monomial(p, m.clone(), CycScalar::one());
                let comp = spec.rho(&mono).unwrap().swap_remove(k);
                &comp - &mono.scale(&one.0[k])
            })
        })
        .collect();
    elements(p, &basis, &kernel_basis(&ops, &basis))
}

/// dim (F_d)^H for d = 0..=n.
pub fn invariant_dims(spec: &ActionSpec, n: usize) -> Vec<usize> {
    let basis = Basis::new(spec.algebra(), n);
    dims_by_degree(&basis, &invariant_vectors(spec, &basis), n)
}

fn dims_by_degree(basis: &Basis, rows: &[Vector], n: usize) -> Vec<usize> {
    let degs: Vec<usize> = rows
        .iter()
        .filter_map(|r| leading_index(r).map(|i| basis.monos[i].degree()))
        .collect();
    (0..=n).map(|d| degs.iter().filter(|&&e| e <= d).count()).collect()
}

/// Successive differences of a cumulative dimension sequence.
pub fn graded_pieces(dims: &[usize]) -> Vec<usize> {
    dims.iter()
        .enumerate()
        .map(|(i, &d)| if i == 0 { d } else { d - dims[i - 1] })
        .collect()
}

#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub degree_bound: usize,
    pub invariant_dims: Vec<usize>,
    pub generators: Vec<(PbwElement, usize)>,
    pub verified_relations: Vec<(String, Verdict)>,
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree bound: {}", self.degree_bound)?;
        let dims: Vec<String> = self.invariant_dims.iter().map(|d| d.to_string()).collect();
        writeln!(f, "invariant dims: {}", dims.join(" "))?;
        for (g, d) in &self.generators {
            writeln!(f, "generator (degree {d}): {g}")?;
        }
        for (r, v) in &self.verified_relations {
            writeln!(f, "relation {r}: {v}")?;
        }
        Ok(())
    }
}

/// Spanning sets of products of generators, grouped by weight, and their running span.
struct ProductSpan<'a> {
    basis: &'a Basis,
    by_weight: Vec<Vec<PbwElement>>,
    span: RowSpace,
}

impl<'a> ProductSpan<'a> {
    fn new(p: &Arc<PbwPresentation>, basis: &'a Basis) -> Self {
        let one = PbwElement::one(p);
        let mut span = RowSpace::new();
        span.insert(&basis.vector(&one));
        ProductSpan {
            basis,
            by_weight: vec![vec![one]],
            span,
        }
    }

    /// Adds all words of weight w in the given (element, weight) generators.
    fn extend_weight(&mut self, w: usize, gens: &[(PbwElement, usize)]) {
        let mut layer = RowSpace::new();
        let mut out = Vec::new();
        for (g, e) in gens {
            if *e == 0 || *e > w {
                continue;
            }
            for b in self.by_weight[w - e].clone() {
                let x = g * &b;
                let v = self.basis.vector(&x);
                if layer.insert(&v) {
                    self.span.insert(&v);
                    out.push(x);
                }
            }
        }
        self.by_weight.push(out);
    }

    fn add_generator(&mut self, g: &PbwElement) {
        let v = self.basis.vector(g);
        self.span.insert(&v);
        self.by_weight.last_mut().unwrap().push(g.clone());
    }
}

/// Greedy generators of R^H up to filtration degree n.
pub fn fixed_ring_generators(spec: &ActionSpec, n: usize) -> InvariantReport {
    let p = spec.algebra();
    let basis = Basis::new(p, n);
    let inv = invariant_vectors(spec, &basis);
    let invariant_dims = dims_by_degree(&basis, &inv, n);
    let mut gens: Vec<(PbwElement, usize)> = Vec::new();
    let mut prods = ProductSpan::new(p, &basis);
    for d in 1..=n {
        prods.extend_weight(d, &gens);
        for row in &inv {
            let lead = leading_index(row).unwrap();
            if basis.monos[lead].degree() != d || prods.span.contains(row) {
                continue;
            }
            let g = PbwElement::from_vector(p, &basis.monos, row);
            prods.add_generator(&g);
            gens.push((g, d));
        }
    }
    InvariantReport {
        degree_bound: n,
        invariant_dims,
        generators: gens,
        verified_relations: Vec::new(),
    }
}

struct NamedDomain<'a> {
    p: &'a Arc<PbwPresentation>,
    names: &'a [(String, PbwElement)],
}

impl Domain for NamedDomain<'_> {
    type Value = PbwElement;
    fn scalar(&self, c: CycScalar) -> PbwElement {
        PbwElement::scalar(self.p, c)
    }
    fn ident(&self, name: &str) -> Option<PbwElement> {
        self.names.iter().find(|(n, _)| n == name).map(|(_, x)| x.clone())
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

/// Evaluates an expression in named elements of the algebra.
pub fn evaluate_named(
    p: &Arc<PbwPresentation>,
    names: &[(String, PbwElement)],
    s: &str,
) -> Result<PbwElement> {
    expr::eval(&NamedDomain { p, names }, &expr::parse(s)?)
}

/// Outcome of checking a claimed presentation of the fixed ring.
#[derive(Clone, Debug)]
pub struct PresentationCheck {
    pub relations: Vec<(String, Verdict)>,
    pub span_dims: Vec<usize>,
    pub invariant_dims: Vec<usize>,
    pub verdict: Verdict,
}

/// Checks that named generators are fixed, that the relations vanish, and that
/// words in the generators fill out (F_d)^H for d up to n.
pub fn verify_presentation(
    spec: &ActionSpec,
    generators: &[(String, PbwElement)],
    relations: &[String],
    n: usize,
) -> Result<PresentationCheck> {
    let p = spec.algebra();
    let h = spec.hopf();
    for (name, g) in generators {
        for k in 0..h.dim() {
            let x = h.basis(k);
            if spec.act(&x, g)? != g.scale(&h.counit(&x)) {
                return Ok(PresentationCheck {
                    relations: Vec::new(),
                    span_dims: Vec::new(),
                    invariant_dims: Vec::new(),
                    verdict: Verdict::fail(format!("generator {name} is not fixed")),
                });
            }
        }
    }
    let mut rels = Vec::new();
    for r in relations {
        let v = evaluate_named(p, generators, r)?;
        let verdict = if v.is_zero() {
            Verdict::pass("evaluates to 0")
        } else {
            Verdict::fail(format!("evaluates to {v}"))
        };
        rels.push((r.clone(), verdict));
    }
    let top = generators
        .iter()
        .filter_map(|(_, g)| g.filtration_degree())
        .max()
        .unwrap_or(0);
    let basis = Basis::new(p, n.max(top));
    let inv = invariant_vectors(spec, &basis);
    let invariant_dims = dims_by_degree(&basis, &inv, n);
    let weighted: Vec<(PbwElement, usize)> = generators
        .iter()
        .filter_map(|(_, g)| g.filtration_degree().map(|d| (g.clone(), d)))
        .collect();
    let mut prods = ProductSpan::new(p, &basis);
    for w in 1..=n {
        prods.extend_weight(w, &weighted);
    }
    let rows: Vec<Vector> = prods.span.rows().cloned().collect();
    let span_dims = dims_by_degree(&basis, &canonical(rows, basis.monos.len()), n);
    let rel_ok = rels.iter().all(|(_, v)| v.pass);
    let verdict = if !rel_ok {
        Verdict::fail("a relation does not vanish")
    } else if span_dims != invariant_dims {
        Verdict::fail(format!(
            "words in the generators span dims {span_dims:?}, invariants have {invariant_dims:?}"
        ))
    } else {
        Verdict::pass(format!(
            "relations vanish and the generators span (F_d)^H for d <= {n}"
        ))
    };
    Ok(PresentationCheck {
        relations: rels,
        span_dims,
        invariant_dims,
        verdict,
    })
}

/// Result of applying an integral.
#[derive(Clone, Debug)]
pub struct TraceValue {
    pub value: PbwElement,
    /// False when H has no integral with eps = 1, so an unnormalized one was used.
    pub normalized: bool,
}

/// The trace a -> Lambda . a for a left integral Lambda.
pub fn trace_map(spec: &ActionSpec, r: &PbwElement) -> Result<TraceValue> {
    let info = spec.hopf().left_integral();
    if info.space.is_empty() {
        return Err(Error::Inconsistent("no left integral found".into()));
    }
    Ok(TraceValue {
        value: spec.act(info.representative(), r)?,
        normalized: info.normalized.is_some(),
    })
}

/// True when x lies in (F_n)^H for n = its filtration degree.
pub fn is_invariant(spec: &ActionSpec, x: &PbwElement) -> Result<bool> {
    let h = spec.hopf();
    for &k in h.algebra_generators() {
        let g = h.basis(k);
        if spec.act(&g, x)? != x.scale(&h.counit(&g)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Graded pieces of gr of the invariant filtration, next to the invariant pieces
/// of the induced action on the associated graded algebra.
pub fn gr_comparison(spec: &ActionSpec, n: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    let gr = spec.induced_gr_action()?;
    Ok((
        graded_pieces(&invariant_dims(spec, n)),
        graded_pieces(&invariant_dims(&gr, n)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{cyclic, kac_palyutkin8, sweedler4};
    use crate::pbw::{change_basis_free, filtered_dim2, polynomial_ring, AffineSubstitution, FreeElement};

    fn s(n: i64) -> CycScalar {
        CycScalar::from_int(n)
    }

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    fn bind(v: &[(&str, &[(&str, &str)])]) -> Vec<(String, Vec<(String, String)>)> {
        v.iter()
            .map(|(k, imgs)| {
                (
                    k.to_string(),
                    imgs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
                )
            })
            .collect()
    }

    fn line() -> ActionSpec {
        let a = polynomial_ring(&names(&["u"])).unwrap();
        ActionSpec::parse(sweedler4(), a, &bind(&[("g", &[("u", "-u")]), ("f", &[("u", "1")])])).unwrap()
    }

    fn shift(m: usize) -> ActionSpec {
        let a = filtered_dim2(s(1), 0, s(0), s(-1), s(0)).unwrap();
        let xi = format!("zeta{m}");
        ActionSpec::parse(cyclic(m).unwrap(), a, &bind(&[("g", &[("u", "u"), ("v", &format!("{xi}*v"))])])).unwrap()
    }

    #[test]
    fn line_invariants() {
        let spec = line();
        let inv = invariant_subspace(&spec, 4);
        let shown: Vec<String> = inv.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, vec!["1", "u^2", "u^4"]);
        let (a, b) = gr_comparison(&spec, 8).unwrap();
        assert_eq!(a, b);
        let t = trace_map(&spec, &PbwElement::parse(spec.algebra(), "u^3 + u").unwrap()).unwrap();
        assert!(!t.normalized);
        assert!(is_invariant(&spec, &t.value).unwrap());
    }

    #[test]
    fn trivial_group_fixes_everything() {
        let a = filtered_dim2(s(1), 0, s(0), s(1), s(0)).unwrap();
        let spec = ActionSpec::parse(cyclic(1).unwrap(), a.clone(), &[]).unwrap();
        assert_eq!(invariant_subspace(&spec, 3).len(), a.monomials_up_to(3).len());
        let rep = fixed_ring_generators(&spec, 2);
        let g: Vec<String> = rep.generators.iter().map(|(x, _)| x.to_string()).collect();
        assert_eq!(g, vec!["u", "v"]);
    }

    #[test]
    fn shift_action_invariants() {
        let spec = shift(2);
        let inv: Vec<String> = invariant_subspace(&spec, 2).iter().map(|x| x.to_string()).collect();
        assert_eq!(inv, vec!["1", "u", "u^2", "v^2"]);
        let v = PbwElement::gen(spec.algebra(), "v");
        let t = trace_map(&spec, &v).unwrap();
        assert!(t.normalized && t.value.is_zero());

        let spec = shift(3);
        let rep = fixed_ring_generators(&spec, 6);
        let g: Vec<String> = rep.generators.iter().map(|(x, _)| x.to_string()).collect();
        assert_eq!(g, vec!["u", "v^3"]);
        let gens = vec![
            ("u".to_string(), PbwElement::gen(spec.algebra(), "u")),
            ("w".to_string(), PbwElement::parse(spec.algebra(), "v^3").unwrap()),
        ];
        let chk = verify_presentation(&spec, &gens, &["w*u - (u + 3)*w".into()], 6).unwrap();
        assert!(chk.verdict.pass, "{}", chk.verdict);

        let (a, b) = gr_comparison(&spec, 6).unwrap();
        assert_eq!(a, b);
        let lift = spec.rees_lift().unwrap();
        let base = invariant_dims(&spec, 6);
        let rees = invariant_dims(&lift, 6);
        let mut acc = 0;
        for d in 0..=6 {
            acc += base[d];
            assert_eq!(rees[d], acc);
        }
    }

    #[test]
    fn trace_spans_invariants_for_semisimple() {
        let spec = shift(3);
        let a = spec.algebra().clone();
        let mut rs = RowSpace::new();
        let basis = Basis::new(&a, 4);
        for m in a.monomials_up_to(4) {
            let t = trace_map(&spec, &PbwElement::monomial(&a, m, CycScalar::one())).unwrap();
            assert!(is_invariant(&spec, &t.value).unwrap());
            rs.insert(&basis.vector(&t.value));
        }
        assert_eq!(rs.dim(), invariant_dims(&spec, 4)[4]);
    }

    #[test]
    fn dihedral_coinvariants() {
        let n = 2;
        let k = crate::hopf::dihedral(n).unwrap();
        let old = names(&["u", "v"]);
        let rel = FreeElement::parse(&old, "u^2 + v^2 - 1").unwrap();
        let subst = AffineSubstitution::parse(&old, &[("a".into(), "u + zeta4*v".into()), ("b".into(), "u - zeta4*v".into())]).unwrap();
        let bc = change_basis_free("R", &old, &[rel], &subst).unwrap();
        let rho = vec![("u".to_string(), "u # x".to_string()), ("v".to_string(), "v # y".to_string())];
        let c = CoactionSpec::parse_via(k, &bc, &rho).unwrap();
        let co = coinvariant_subspace(&c, 4);
        let act = c.dualize();
        assert_eq!(co, invariant_subspace(&act, 4));
        let u2 = bc.transport_free(&FreeElement::parse(&old, "u^2").unwrap());
        assert!(is_invariant(&act, &u2).unwrap());
        let words = |s: &str| bc.transport_free(&FreeElement::parse(&old, s).unwrap());
        let gens = vec![
            ("a".to_string(), words("u^2")),
            ("b".to_string(), words("(u*v)^2")),
            ("c".to_string(), words("(v*u)^2")),
        ];
        let chk = verify_presentation(&act, &gens, &["b*c - a^2*(1 - a)^2".into()], 4 * n + 2).unwrap();
        assert!(chk.verdict.pass, "{}", chk.verdict);
        let rep = fixed_ring_generators(&act, 4 * n + 2);
        assert_eq!(rep.generators.len(), 3);
    }

    #[test]
    fn h8_fixed_ring() {
        let h = kac_palyutkin8();
        let old = names(&["u", "v"]);
        let rel = FreeElement::parse(&old, "u^2 + v^2 - 1").unwrap();
        let subst = AffineSubstitution::parse(&old, &[("a".into(), "u + zeta4*v".into()), ("b".into(), "u - zeta4*v".into())]).unwrap();
        let bc = change_basis_free("R", &old, &[rel], &subst).unwrap();
        let spec = ActionSpec::parse_via(
            h,
            &bc,
            &bind(&[
                ("x", &[("u", "-u"), ("v", "v")]),
                ("y", &[("u", "u"), ("v", "-v")]),
                ("z", &[("u", "v"), ("v", "u")]),
            ]),
        )
        .unwrap();
        let v = spec.verify_module_algebra();
        assert!(v.pass, "{v}");
        let words = |s: &str| bc.transport_free(&FreeElement::parse(&old, s).unwrap());
        let gens = vec![
            ("a".to_string(), words("(u*v)^2 - (v*u)^2")),
            ("b".to_string(), words("u^4 - u^2 + 1/4")),
            ("c".to_string(), words("(u^2 - 1/2)*((u*v)^2 + (v*u)^2)")),
        ];
        let chk = verify_presentation(&spec, &gens, &["c^2 - b*(a^2 + 4*(b - 1/4)^2)".into()], 10).unwrap();
        assert!(chk.relations[0].1.pass, "{:?}", chk.relations);
        assert!(chk.verdict.pass, "{}", chk.verdict);
    }
}
