//! PI status of the associated graded, normal forms for two-generator filtered
//! relations, and matching of group actions against the known list.

use std::fmt;

use crate::action::ActionSpec;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::pbw::{filtered_dim2, AffineSubstitution, FreeElement, PbwPresentation};
use crate::scalar::CycScalar;
use crate::verdict::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PiStatus {
    Pi,
    NonPi,
    Commutative,
}

impl fmt::Display for PiStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PiStatus::Pi => "PI",
            PiStatus::NonPi => "non-PI",
            PiStatus::Commutative => "commutative",
        })
    }
}

/// PI status of k<u,v>/(vu - q uv - lambda u^2).
pub fn is_pi_gr(q: &CycScalar, lambda: &CycScalar) -> PiStatus {
    if q.is_one() {
        if lambda.is_zero() {
            PiStatus::Commutative
        } else {
            PiStatus::NonPi
        }
    } else if q.multiplicative_order().is_some() {
        PiStatus::Pi
    } else {
        PiStatus::NonPi
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CanonicalForm {
    /// vu - q uv - 1
    QuantumWeyl(CycScalar),
    /// vu - uv - u^2 - 1
    JordanWeyl,
    /// vu - uv - v
    Shift,
    Graded,
    Other(String),
}

impl CanonicalForm {
    /// The canonical presentation, if there is one.
    pub fn presentation(&self, graded_q: &CycScalar, graded_lambda: i64) -> Option<Result<std::sync::Arc<PbwPresentation>>> {
        let z = CycScalar::zero;
        Some(match self {
            CanonicalForm::QuantumWeyl(q) => filtered_dim2(q.clone(), 0, z(), z(), CycScalar::from_int(-1)),
            CanonicalForm::JordanWeyl => filtered_dim2(CycScalar::one(), 1, z(), z(), CycScalar::from_int(-1)),
            CanonicalForm::Shift => filtered_dim2(CycScalar::one(), 0, z(), CycScalar::from_int(-1), z()),
            CanonicalForm::Graded => filtered_dim2(graded_q.clone(), graded_lambda, z(), z(), z()),
            CanonicalForm::Other(_) => return None,
        })
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalForm::QuantumWeyl(q) => write!(f, "quantum-weyl({q}): vu - q*uv - 1"),
            CanonicalForm::JordanWeyl => write!(f, "jordan-weyl: vu - uv - u^2 - 1"),
            CanonicalForm::Shift => write!(f, "shift: vu - uv - v"),
            CanonicalForm::Graded => write!(f, "graded"),
            CanonicalForm::Other(why) => write!(f, "other ({why})"),
        }
    }
}

/// Coefficients of vu - q uv - lambda u^2 + a u + b v + c.
#[derive(Clone, Debug, PartialEq)]
pub struct Dim2Relation {
    pub q: CycScalar,
    pub lambda: CycScalar,
    pub a: CycScalar,
    pub b: CycScalar,
    pub c: CycScalar,
}

impl Dim2Relation {
    pub fn new(q: CycScalar, lambda: CycScalar, a: CycScalar, b: CycScalar, c: CycScalar) -> Self {
        Dim2Relation { q, lambda, a, b, c }
    }

    /// Reads the single relation of a two-generator presentation.
    pub fn from_presentation(p: &PbwPresentation) -> Result<Self> {
        let rels = p.relations();
        if p.ngens() != 2 || rels.len() != 1 {
            return Err(Error::Unsupported(format!(
                "`{}` is not a two-generator one-relation algebra",
                p.name()
            )));
        }
        Self::from_free(&rels[0])
    }

    pub fn from_free(r: &FreeElement) -> Result<Self> {
        let lead = r.coefficient(&[1, 0]);
        if lead.is_zero() || !r.coefficient(&[1, 1]).is_zero() {
            return Err(Error::Unsupported("relation is not of the form vu - quv - ...".into()));
        }
        let inv = lead.inv()?;
        let k = |w: &[usize]| &r.coefficient(w) * &inv;
        Ok(Dim2Relation {
            q: -k(&[0, 1]),
            lambda: -k(&[0, 0]),
            a: k(&[0]),
            b: k(&[1]),
            c: k(&[]),
        })
    }

    pub fn to_free(&self) -> FreeElement {
        let w = |v: Vec<usize>, c: &CycScalar| FreeElement::word(v, c.clone());
        let mut f = w(vec![1, 0], &CycScalar::one());
        f = &f - &w(vec![0, 1], &self.q);
        f = &f - &w(vec![0, 0], &self.lambda);
        f = &f + &w(vec![0], &self.a);
        f = &f + &w(vec![1], &self.b);
        &f + &w(vec![], &self.c)
    }

    pub fn is_graded(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }
}

impl fmt::Display for Dim2Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_free().fmt_with(&uv()))
    }
}

/// Case of the classification of non-graded group actions, with the generator's data.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyMatch {
    pub case: char,
    pub xi: CycScalar,
    pub m: u64,
    /// Substitution (from the input generators) in which sigma is diagonal.
    pub basis: AffineSubstitution,
}

#[derive(Clone, Debug)]
pub struct ClassifyReport {
    pub relation: Dim2Relation,
    pub pi_status: PiStatus,
    pub canonical_form: CanonicalForm,
    /// New generators written in the input ones.
    pub basis_witness: AffineSubstitution,
    pub witness_check: Verdict,
    pub family_case: Option<FamilyMatch>,
    pub notes: Vec<String>,
}

impl fmt::Display for ClassifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = uv();
        writeln!(f, "relation: {}", self.relation)?;
        writeln!(f, "gr: {}", self.pi_status)?;
        writeln!(f, "canonical form: {}", self.canonical_form)?;
        writeln!(f, "basis: {}", self.basis_witness.fmt_with(&names).join(", "))?;
        writeln!(f, "witness: {}", self.witness_check)?;
        if let Some(m) = &self.family_case {
            writeln!(f, "case ({}): xi = {}, m = {}", m.case, m.xi, m.m)?;
            writeln!(f, "  diagonal basis: {}", m.basis.fmt_with(&names).join(", "))?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

fn uv() -> Vec<String> {
    vec!["u".to_string(), "v".to_string()]
}

fn s(n: i64) -> CycScalar {
    CycScalar::from_int(n)
}

/// new u = mu*u + nu*v + t_u, new v = ... as rows.
fn subst(rows: [[CycScalar; 3]; 2]) -> AffineSubstitution {
    let [ru, rv] = rows;
    let [a, b, c] = ru;
    let [d, e, f] = rv;
    AffineSubstitution {
        new_names: uv(),
        matrix: vec![vec![a, b], vec![d, e]],
        translation: vec![c, f],
    }
}

fn form_and_witness(r: &Dim2Relation) -> (CanonicalForm, AffineSubstitution) {
    let z = CycScalar::zero;
    let one = CycScalar::one;
    let Dim2Relation { q, lambda, a, b, c } = r;
    if !q.is_one() {
        let d = (&one() - q).inv().expect("q != 1");
        let alpha = lambda * &d;
        let a1 = a + &(b * &alpha);
        let beta = -(b * &d);
        let gamma = -(&a1 * &d);
        let c1 = c - &(&(&a1 * b) * &d);
        // u' = u - beta, v' = v - alpha*u - gamma
        if c1.is_zero() {
            let w = subst([[one(), z(), -beta], [-alpha, one(), -gamma]]);
            return (CanonicalForm::Graded, w);
        }
        let k = -c1.inv().expect("nonzero");
        let w = subst([[k.clone(), z(), -(&k * &beta)], [-alpha, one(), -gamma]]);
        return (CanonicalForm::QuantumWeyl(q.clone()), w);
    }
    if lambda.is_zero() {
        if a.is_zero() && b.is_zero() {
            if c.is_zero() {
                return (CanonicalForm::Graded, AffineSubstitution::identity(&uv()));
            }
            let k = -c.inv().expect("nonzero");
            return (CanonicalForm::QuantumWeyl(one()), subst([[k, z(), z()], [z(), one(), z()]]));
        }
        // w = -(au + bv + c) satisfies [w, u] = -b w and [v, w] = -a w
        let vrow = [-a.clone(), -b.clone(), -c.clone()];
        let urow = if !b.is_zero() {
            [-b.inv().expect("nonzero"), z(), z()]
        } else {
            [z(), a.inv().expect("nonzero"), z()]
        };
        return (CanonicalForm::Shift, subst([urow, vrow]));
    }
    // rescale u so the u^2 coefficient is 1: u1 = lambda*u
    let (a, b, c) = (a.clone(), b * lambda, c * lambda);
    if !b.is_zero() {
        return (
            CanonicalForm::Other("jordan type with a linear v term".into()),
            AffineSubstitution::identity(&uv()),
        );
    }
    let beta = a.scale(&crate::scalar::rat(1, 2));
    let d = &c + &(&beta * &beta);
    if d.is_zero() {
        return (CanonicalForm::Graded, subst([[lambda.clone(), z(), -beta], [z(), one(), z()]]));
    }
    let Some(root) = (-&d).to_rational().map(|x| CycScalar::sqrt_rational(&x)) else {
        return (
            CanonicalForm::Other(format!("needs a square root of {}", -&d)),
            AffineSubstitution::identity(&uv()),
        );
    };
    let k = root.inv().expect("nonzero");
    let w = subst([[lambda * &k, z(), -(&beta * &k)], [z(), k, z()]]);
    (CanonicalForm::JordanWeyl, w)
}

fn graded_shape(r: &Dim2Relation) -> (CycScalar, i64) {
    if r.q.is_one() && !r.lambda.is_zero() {
        (CycScalar::one(), 1)
    } else {
        (r.q.clone(), 0)
    }
}

/// Checks that `witness` carries `r` onto the presentation of `form`.
pub fn check_witness(r: &Dim2Relation, form: &CanonicalForm, witness: &AffineSubstitution) -> Verdict {
    let (gq, gl) = graded_shape(r);
    let Some(target) = form.presentation(&gq, gl) else {
        return Verdict::fail("no canonical presentation to compare against");
    };
    let target = match target {
        Ok(t) => t,
        Err(e) => return Verdict::fail(e.to_string()),
    };
    let moved = match crate::pbw::change_basis_free("R", &uv(), &[r.to_free()], witness) {
        Ok(bc) => bc.presentation,
        Err(e) => return Verdict::fail(e.to_string()),
    };
    let got = Dim2Relation::from_presentation(&moved);
    let want = Dim2Relation::from_presentation(&target);
    match (got, want) {
        (Ok(g), Ok(w)) if g == w => Verdict::pass(format!("relation becomes {g}")),
        (Ok(g), Ok(w)) => Verdict::fail(format!("relation becomes {g}, expected {w}")),
        (Err(e), _) | (_, Err(e)) => Verdict::fail(e.to_string()),
    }
}

/// Normal form of vu - q uv - lambda u^2 + a u + b v + c under affine changes of u, v.
pub fn canonicalize_relation(r: &Dim2Relation) -> ClassifyReport {
    let (form, witness) = form_and_witness(r);
    let witness_check = if matches!(form, CanonicalForm::Other(_)) {
        Verdict::fail("no witness")
    } else {
        check_witness(r, &form, &witness)
    };
    ClassifyReport {
        relation: r.clone(),
        pi_status: is_pi_gr(&r.q, &r.lambda),
        canonical_form: form,
        basis_witness: witness,
        witness_check,
        family_case: None,
        notes: Vec::new(),
    }
}

fn group_order(table: &[Vec<usize>], g: usize) -> usize {
    let mut x = g;
    let mut n = 1;
    while x != 0 {
        x = table[x][g];
        n += 1;
    }
    n
}

/// Entries of sigma on (1, u, v): column j is the image of the j-th basis vector.
fn linear_part(m: &Matrix) -> Option<[[CycScalar; 2]; 2]> {
    if !m[1][0].is_zero() || !m[2][0].is_zero() {
        return None;
    }
    Some([[m[1][1].clone(), m[1][2].clone()], [m[2][1].clone(), m[2][2].clone()]])
}

fn translations_vanish(m: &Matrix) -> bool {
    m[0][1].is_zero() && m[0][2].is_zero()
}

fn primitive_order(xi: &CycScalar, m: usize) -> bool {
    xi.multiplicative_order() == Some(m as u64)
}

/// Matches a group action against the three non-graded families.
pub fn match_cyclic_family(spec: &ActionSpec) -> ClassifyReport {
    let rel = match Dim2Relation::from_presentation(spec.algebra()) {
        Ok(r) => r,
        Err(e) => {
            return ClassifyReport {
                relation: Dim2Relation::new(s(0), s(0), s(0), s(0), s(0)),
                pi_status: PiStatus::Commutative,
                canonical_form: CanonicalForm::Other(e.to_string()),
                basis_witness: AffineSubstitution::identity(spec.algebra().generators()),
                witness_check: Verdict::fail("not a two-generator algebra"),
                family_case: None,
                notes: vec!["out of classification".into()],
            }
        }
    };
    let mut report = canonicalize_relation(&rel);
    let out = |report: &mut ClassifyReport, why: String| {
        report.notes.push(format!("out of classification: {why}"));
    };
    let Some(table) = spec.hopf().group_table() else {
        out(&mut report, "Hopf algebra is not a group algebra".into());
        return report;
    };
    if !report.witness_check.pass {
        out(&mut report, "relation has no canonical form".into());
        return report;
    }
    let n = table.len();
    let Some(g) = (0..n).find(|&g| group_order(table, g) == n) else {
        out(&mut report, "group is not cyclic".into());
        return report;
    };
    let canon = match spec.change_basis(&report.basis_witness) {
        Ok((_, c)) => c,
        Err(e) => {
            out(&mut report, e.to_string());
            return report;
        }
    };
    let mat = canon.matrices()[g].clone();
    let Some(lin) = linear_part(&mat) else {
        out(&mut report, "action does not fix 1".into());
        return report;
    };
    let diagonal = lin[0][1].is_zero() && lin[1][0].is_zero() && translations_vanish(&mat);
    match report.canonical_form.clone() {
        CanonicalForm::QuantumWeyl(q) => {
            if q.is_one() {
                out(&mut report, "R is the Weyl algebra".into());
            } else if q.multiplicative_order().is_some() {
                out(&mut report, "q is a root of unity, so R is PI".into());
            } else {
                let xi = lin[0][0].clone();
                let ok = diagonal
                    && primitive_order(&xi, n)
                    && xi.inv().map(|x| x == lin[1][1]).unwrap_or(false);
                if ok {
                    report.family_case = Some(FamilyMatch {
                        case: 'a',
                        xi,
                        m: n as u64,
                        basis: report.basis_witness.clone(),
                    });
                } else {
                    out(&mut report, "generator is not diag(xi, xi^-1)".into());
                }
            }
        }
        CanonicalForm::Shift => {
            // sigma(u) = u + nu v, sigma(v) = xi v; u + nu/(1 - xi) v is fixed
            let xi = lin[1][1].clone();
            let shape = lin[0][0].is_one() && lin[0][1].is_zero() && translations_vanish(&mat);
            if !shape || !primitive_order(&xi, n) || xi.is_one() {
                if n == 1 && shape {
                    out(&mut report, "trivial group".into());
                } else {
                    out(&mut report, "generator does not have the shape u -> u + nu v, v -> xi v".into());
                }
                return report;
            }
            let kappa = &lin[1][0] * &(&CycScalar::one() - &xi).inv().expect("xi != 1");
            let shear = subst([
                [CycScalar::one(), kappa, CycScalar::zero()],
                [CycScalar::zero(), CycScalar::one(), CycScalar::zero()],
            ]);
            let basis = report.basis_witness.then(&shear);
            let fixed = spec
                .change_basis(&basis)
                .map(|(bc, c)| {
                    let m = &c.matrices()[g];
                    Dim2Relation::from_presentation(&bc.presentation).ok()
                        == Dim2Relation::from_presentation(&filtered_dim2(s(1), 0, s(0), s(-1), s(0)).unwrap()).ok()
                        && m[1][1].is_one()
                        && m[2][2] == xi
                        && m[1][2].is_zero()
                        && m[2][1].is_zero()
                        && translations_vanish(m)
                })
                .unwrap_or(false);
            if fixed {
                report.family_case = Some(FamilyMatch { case: 'b', xi, m: n as u64, basis });
            } else {
                out(&mut report, "shear to a fixed u failed".into());
            }
        }
        CanonicalForm::JordanWeyl => {
            let minus = s(-1);
            if n == 2 && diagonal && lin[0][0] == minus && lin[1][1] == minus {
                report.family_case = Some(FamilyMatch {
                    case: 'c',
                    xi: minus,
                    m: 2,
                    basis: report.basis_witness.clone(),
                });
            } else {
                out(&mut report, "generator is not -1 on u and v, or the group is not C2".into());
            }
        }
        CanonicalForm::Graded => out(&mut report, "relation is graded".into()),
        CanonicalForm::Other(why) => out(&mut report, why),
    }
    report
}

/// Passes iff in the new generators the relation is homogeneous and the action is graded.
pub fn graded_witness_check(spec: &ActionSpec, substitution: &AffineSubstitution) -> Result<Verdict> {
    let (bc, moved) = spec.change_basis(substitution)?;
    if !bc.presentation.is_graded() {
        return Ok(Verdict::fail(format!(
            "relations stay inhomogeneous: {}",
            bc.presentation.rule_strings().join(", ")
        )));
    }
    for (k, m) in moved.matrices().iter().enumerate() {
        let mixes = (1..m.len()).any(|j| !m[0][j].is_zero() || !m[j][0].is_zero());
        if mixes {
            return Ok(Verdict::fail(format!(
                "{} does not preserve the grading",
                spec.hopf().labels()[k]
            )));
        }
    }
    Ok(Verdict::pass(format!(
        "graded in {}",
        substitution.fmt_with(spec.algebra().generators()).join(", ")
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::Bindings;
    use crate::hopf::{cyclic, sweedler4};
    use crate::pbw::polynomial_ring;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

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

    fn rel(q: i64, l: i64, a: i64, b: i64, c: i64) -> Dim2Relation {
        Dim2Relation::new(s(q), s(l), s(a), s(b), s(c))
    }

    fn spec(q: CycScalar, l: i64, a: i64, b: i64, c: i64, m: usize, bindings: &Bindings) -> ActionSpec {
        let r = filtered_dim2(q, l, s(a), s(b), s(c)).unwrap();
        ActionSpec::parse(cyclic(m).unwrap(), r, bindings).unwrap()
    }

    #[test]
    fn pi_status() {
        let z3 = CycScalar::root_of_unity(3, 1);
        assert_eq!(is_pi_gr(&z3, &s(0)), PiStatus::Pi);
        assert_eq!(is_pi_gr(&s(1), &s(1)), PiStatus::NonPi);
        assert_eq!(is_pi_gr(&s(1), &s(0)), PiStatus::Commutative);
        assert_eq!(is_pi_gr(&s(2), &s(0)), PiStatus::NonPi);
        assert_eq!(is_pi_gr(&s(-1), &s(1)), PiStatus::Pi);
    }

    #[test]
    fn quantum_weyl_after_translations() {
        let r = canonicalize_relation(&rel(2, 0, 3, 4, 5));
        assert_eq!(r.canonical_form, CanonicalForm::QuantumWeyl(s(2)));
        assert!(r.witness_check.pass, "{}", r.witness_check);
        // c' = c - ab/(1-q) = 5 + 12 = 17
        assert_eq!(r.basis_witness.matrix[0][0], CycScalar::frac(-1, 17));
        // translated constant c + ab vanishes
        let g = canonicalize_relation(&rel(2, 0, 5, -1, 5));
        assert_eq!(g.canonical_form, CanonicalForm::Graded);
        assert!(g.witness_check.pass, "{}", g.witness_check);
    }

    #[test]
    fn shift_and_weyl_and_jordan() {
        for (a, b, c) in [(1, 0, 0), (0, 1, 3), (2, -3, 1)] {
            let r = canonicalize_relation(&rel(1, 0, a, b, c));
            assert_eq!(r.canonical_form, CanonicalForm::Shift);
            assert!(r.witness_check.pass, "{}", r.witness_check);
        }
        let w = canonicalize_relation(&rel(1, 0, 0, 0, 1));
        assert_eq!(w.canonical_form, CanonicalForm::QuantumWeyl(s(1)));
        assert!(w.witness_check.pass);
        let j = canonicalize_relation(&rel(1, 1, 2, 0, 3));
        assert_eq!(j.canonical_form, CanonicalForm::JordanWeyl);
        assert!(j.witness_check.pass, "{}", j.witness_check);
        let j = canonicalize_relation(&rel(1, 3, 0, 0, 5));
        assert_eq!(j.canonical_form, CanonicalForm::JordanWeyl);
        assert!(j.witness_check.pass, "{}", j.witness_check);
        let o = canonicalize_relation(&rel(1, 1, 0, 1, 0));
        assert!(matches!(o.canonical_form, CanonicalForm::Other(_)));
    }

    #[test]
    fn random_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut r = |lo: i64, hi: i64| -> CycScalar { CycScalar::frac(rng.gen_range(lo..=hi), rng.gen_range(1..=4)) };
        let mut count = [0usize; 3];
        for _ in 0..50 {
            let q = loop {
                let q = r(-5, 5);
                if !q.is_zero() && !q.is_one() {
                    break q;
                }
            };
            let x = Dim2Relation::new(q, r(-3, 3), r(-5, 5), r(-5, 5), r(-5, 5));
            assert!(canonicalize_relation(&x).witness_check.pass, "{x}");
            count[0] += 1;
            let (a, b) = loop {
                let (a, b) = (r(-5, 5), r(-5, 5));
                if !a.is_zero() || !b.is_zero() {
                    break (a, b);
                }
            };
            let y = Dim2Relation::new(s(1), s(0), a, b, r(-5, 5));
            let rep = canonicalize_relation(&y);
            assert_eq!(rep.canonical_form, CanonicalForm::Shift);
            assert!(rep.witness_check.pass, "{y}");
            count[1] += 1;
            let l = loop {
                let l = r(-3, 3);
                if !l.is_zero() {
                    break l;
                }
            };
            // -d = t^2 keeps the square root rational
            let (a, t) = (r(-5, 5), r(1, 5));
            let c = -(&(&t * &t) + &(&a * &a).scale(&crate::scalar::rat(1, 4))) * l.inv().unwrap();
            let z = Dim2Relation::new(s(1), l, a, s(0), c);
            let rep = canonicalize_relation(&z);
            assert!(rep.witness_check.pass, "{z}: {}", rep.canonical_form);
            count[2] += 1;
        }
        assert_eq!(count, [50, 50, 50]);
    }

    #[test]
    fn case_a() {
        for m in 2..5 {
            let xi = format!("zeta{m}");
            let xinv = format!("zeta{m}^{}", m - 1);
            let b = bind(&[("g", &[("u", &format!("{xi}*u")), ("v", &format!("{xinv}*v"))])]);
            let sp = spec(s(2), 0, 0, 0, -1, m, &b);
            assert!(sp.verify_module_algebra().pass);
            let r = match_cyclic_family(&sp);
            let c = r.family_case.expect("case a");
            assert_eq!((c.case, c.m), ('a', m as u64));
            assert_eq!(c.xi, CycScalar::root_of_unity(m as u64, 1));
        }
        // root of unity q: PI, excluded
        let b = bind(&[("g", &[("u", "-u"), ("v", "-v")])]);
        let sp = spec(s(-1), 0, 0, 0, -1, 2, &b);
        assert!(match_cyclic_family(&sp).family_case.is_none());
    }

    #[test]
    fn case_b_and_c() {
        // translated shift vu - uv - v + 2: v' = v - 2
        let b = bind(&[("g", &[("u", "u + v - 2"), ("v", "zeta3*v + 2 - 2*zeta3")])]);
        let sp = spec(s(1), 0, 0, -1, 2, 3, &b);
        assert!(sp.verify_module_algebra().pass, "{}", sp.verify_module_algebra());
        let r = match_cyclic_family(&sp);
        let c = r.family_case.clone().unwrap_or_else(|| panic!("{r}"));
        assert_eq!((c.case, c.m), ('b', 3));
        assert_eq!(c.xi, CycScalar::root_of_unity(3, 1));

        let b = bind(&[("g", &[("u", "-u"), ("v", "-v")])]);
        let sp = spec(s(1), 1, 0, 0, -1, 2, &b);
        let r = match_cyclic_family(&sp);
        assert_eq!(r.family_case.map(|c| c.case), Some('c'));

        let line = polynomial_ring(&["u".to_string()]).unwrap();
        let sw = ActionSpec::parse(sweedler4(), line, &bind(&[("g", &[("u", "-u")]), ("f", &[("u", "1")])])).unwrap();
        let r = match_cyclic_family(&sw);
        assert!(r.family_case.is_none());
        assert!(r.notes.iter().any(|n| n.contains("out of classification")));
    }

    #[test]
    fn graded_witness() {
        // vu + uv + 2u = (v + 1)u + u(v + 1)
        let b = bind(&[("g", &[("u", "-u"), ("v", "v")])]);
        let sp = spec(s(-1), 0, 2, 0, 0, 2, &b);
        let shift = AffineSubstitution::parse(
            &uv(),
            &[("u".into(), "u".into()), ("v".into(), "v + 1".into())],
        )
        .unwrap();
        assert!(graded_witness_check(&sp, &shift).unwrap().pass);
        assert!(!graded_witness_check(&sp, &AffineSubstitution::identity(&uv())).unwrap().pass);

        let p = spec(s(-1), 0, 0, 0, 0, 2, &b);
        assert!(graded_witness_check(&p, &AffineSubstitution::identity(&uv())).unwrap().pass);
        let a1 = spec(s(1), 0, 0, 0, -1, 2, &bind(&[("g", &[("u", "-u"), ("v", "-v")])]));
        assert!(!graded_witness_check(&a1, &AffineSubstitution::identity(&uv())).unwrap().pass);
    }
}
