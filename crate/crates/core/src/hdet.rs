//! Homological (co)determinants in dimension 2 and on Koszul duals of Rees rings.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use crate::action::{ActionSpec, CoactionSpec};
use crate::error::{Error, Result};
use crate::hopf::{HopfAlgebra, HopfElement};
use crate::pbw::{koszul_dual_rees, koszul_dual_rees_lift, FreeElement, Monomial, PbwElement, PbwPresentation};
use crate::scalar::CycScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HdetKind {
    Determinant,
    Codeterminant,
}

/// A determinant is reported as the character phi with h . r = phi(h) r on the
/// relation; a codeterminant as the grouplike g with rho(r) = r (x) g, or as
/// D with rho(y)^(2n+1) = D (x) y^(2n+1) in the Koszul case.
#[derive(Clone, Debug)]
pub struct HdetReport {
    pub kind: HdetKind,
    pub character: Option<Vec<CycScalar>>,
    pub grouplike: Option<HopfElement>,
    pub trivial: bool,
    /// Trace of left multiplication by D - 1, for Koszul computations.
    pub trace: Option<CycScalar>,
    pub detail: String,
}

impl fmt::Display for HdetReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            HdetKind::Determinant => "determinant (h . r = phi(h) r)",
            HdetKind::Codeterminant => "codeterminant (rho(r) = r # g; the inverse convention is g^-1)",
        };
        writeln!(f, "kind: {kind}")?;
        writeln!(f, "{}", self.detail)?;
        if let Some(t) = &self.trace {
            writeln!(f, "trace(D - 1) = {t}")?;
        }
        write!(f, "trivial: {}", self.trivial)
    }
}

fn check_dim2(p: &PbwPresentation) -> Result<()> {
    if p.ngens() != 2 || p.relations().len() != 1 {
        return Err(Error::Precondition(
            "expected two generators and one relation".into(),
        ));
    }
    Ok(())
}

/// Determinant of an action on a dimension-2 algebra, read off the graded
/// relation. Filtered input is first replaced by the induced graded action.
pub fn hdet_dim2(spec: &ActionSpec) -> Result<HdetReport> {
    check_dim2(spec.algebra())?;
    let gr;
    let spec = if spec.algebra().is_graded() {
        spec
    } else {
        gr = spec.induced_gr_action()?;
        &gr
    };
    let h = spec.hopf();
    let phi = spec
        .relation_character()
        .ok_or_else(|| Error::Inconsistent("h . r is not a multiple of r".into()))?;
    for a in 0..h.dim() {
        for b in 0..h.dim() {
            let ab = h.mul_basis(a, b);
            let mut v = CycScalar::zero();
            for (k, c) in ab.0.iter().enumerate() {
                v += &(c * &phi[k]);
            }
            if v != &phi[a] * &phi[b] {
                return Err(Error::Inconsistent("phi is not multiplicative".into()));
            }
        }
    }
    let trivial = (0..h.dim()).all(|k| &phi[k] == h.counit_basis(k));
    let table: Vec<String> = h
        .labels()
        .iter()
        .zip(&phi)
        .map(|(l, c)| format!("{l} -> {c}"))
        .collect();
    Ok(HdetReport {
        kind: HdetKind::Determinant,
        character: Some(phi),
        grouplike: None,
        trivial,
        trace: None,
        detail: format!("phi: {}", table.join(", ")),
    })
}

/// Codeterminant of a coaction on a dimension-2 algebra, on the graded relation.
pub fn cohdet_dim2(spec: &CoactionSpec) -> Result<HdetReport> {
    check_dim2(spec.algebra())?;
    let gr;
    let spec = if spec.algebra().is_graded() {
        spec
    } else {
        gr = spec.induced_gr()?;
        &gr
    };
    let h = spec.hopf();
    let g = spec
        .relation_grouplike()
        .ok_or_else(|| Error::Inconsistent("rho(r) does not factor as r # g".into()))?;
    if !h.is_grouplike(&g) {
        return Err(Error::Inconsistent(format!(
            "rho(r) = r # {} with a non-grouplike factor",
            h.format(&g)
        )));
    }
    let trivial = g == h.one();
    Ok(HdetReport {
        kind: HdetKind::Codeterminant,
        character: None,
        detail: format!("rho(r) = r # {}", h.format(&g)),
        grouplike: Some(g),
        trivial,
        trace: None,
    })
}

/// Elements of K (x) B, keyed by normal monomials of B.
pub type KTensor = BTreeMap<Monomial, HopfElement>;

fn kt_mul(k: &HopfAlgebra, p: &Arc<PbwPresentation>, a: &KTensor, b: &KTensor) -> KTensor {
    let mut out = KTensor::new();
    for (m1, x) in a {
        for (m2, y) in b {
            let prod = &PbwElement::monomial(p, m1.clone(), CycScalar::one())
                * &PbwElement::monomial(p, m2.clone(), CycScalar::one());
            if prod.is_zero() {
                continue;
            }
            let xy = k.mul(x, y);
            for (m, c) in prod.terms() {
                let e = out.entry(m.clone()).or_insert_with(|| k.zero());
                *e = &*e + &xy.scale(c);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn kt_pow(k: &HopfAlgebra, p: &Arc<PbwPresentation>, a: &KTensor, e: usize) -> KTensor {
    let mut acc = KTensor::new();
    acc.insert(Monomial::one(p.ngens()), k.one());
    for _ in 0..e {
        acc = kt_mul(k, p, &acc, a);
    }
    acc
}

/// Generator index of z_i (1-based): z_i = v_i', z_{n+i} = u_i'.
fn z_index(n: usize, i: usize) -> usize {
    if i <= n {
        2 * (i - 1)
    } else {
        2 * (i - n - 1) + 1
    }
}

fn gen_mono(p: &PbwPresentation, g: usize) -> Monomial {
    Monomial::from_word(p.ngens(), &[g]).unwrap()
}

/// 1 (x) y + sum_i c_i (x) z_i.
fn rho_y(k: &HopfAlgebra, p: &PbwPresentation, n: usize, coeffs: &[HopfElement]) -> KTensor {
    let mut t = KTensor::new();
    t.insert(gen_mono(p, 2 * n), k.one());
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            t.insert(gen_mono(p, z_index(n, i + 1)), c.clone());
        }
    }
    t
}

/// Coefficient of the top monomial v1' u1' .. vn' un' t' in (t')^(2n+1).
pub fn koszul_top_coefficient(n: usize) -> Result<CycScalar> {
    let p = koszul_dual_rees(n)?;
    let y = PbwElement::generator(&p, 2 * n);
    let top = Monomial::from_exponents(vec![1; 2 * n + 1]);
    let x = y.pow(2 * n as u32 + 1);
    if x.terms().len() != 1 {
        return Err(Error::Inconsistent(format!("(t')^{} is not a multiple of the top monomial", 2 * n + 1)));
    }
    Ok(x.coefficient(&top))
}

/// (t' + sum a_i u_i' + b_i v_i')^(2n+1).
pub fn koszul_linear_power(n: usize, a: &[CycScalar], b: &[CycScalar]) -> Result<PbwElement> {
    let p = koszul_dual_rees(n)?;
    let mut f = PbwElement::generator(&p, 2 * n);
    for i in 0..n {
        f = &f + &PbwElement::generator(&p, 2 * i + 1).scale(&a[i]);
        f = &f + &PbwElement::generator(&p, 2 * i).scale(&b[i]);
    }
    Ok(f.pow(2 * n as u32 + 1))
}

/// rho(y)^(2n+1) in K (x) B^! for rho(y) = 1 (x) y + sum c_i (x) z_i, written as
/// D (x) y^(2n+1), with the trace of D - 1.
pub fn koszul_codeterminant_rees(
    n: usize,
    k: &Arc<HopfAlgebra>,
    coeffs: &[HopfElement],
) -> Result<HdetReport> {
    if coeffs.len() != 2 * n {
        return Err(Error::InvalidParameter(format!("expected {} coefficients", 2 * n)));
    }
    let p = koszul_dual_rees(n)?;
    let x = kt_pow(k, &p, &rho_y(k, &p, n, coeffs), 2 * n + 1);
    let top = Monomial::from_exponents(vec![1; 2 * n + 1]);
    if x.keys().any(|m| *m != top) {
        return Err(Error::Inconsistent(
            "rho(y)^(2n+1) is not a multiple of the top monomial".into(),
        ));
    }
    let scale = koszul_top_coefficient(n)?.inv()?;
    let d = x.get(&top).cloned().unwrap_or_else(|| k.zero()).scale(&scale);
    let pdiff = &d - &k.one();
    let trace = k.trace_left_mult(&pdiff);
    let trivial = pdiff.is_zero();
    Ok(HdetReport {
        kind: HdetKind::Codeterminant,
        character: None,
        detail: format!("rho(y)^{} = ({}) # y^{}", 2 * n + 1, k.format(&d), 2 * n + 1),
        grouplike: Some(d),
        trivial,
        trace: Some(trace),
    })
}

/// Compares (1 (x) y + s)^(2r) with the closed form
/// sum_j C(r, j) sum_{I} (sum_sigma sgn(sigma) c_I(sigma)) (x) y^(2(r-j)) z_I
/// in K (x) Lambda[y; sigma], where y is not squared away.
pub fn skew_binomial_crosscheck(
    n: usize,
    r: usize,
    k: &Arc<HopfAlgebra>,
    coeffs: &[HopfElement],
) -> Result<bool> {
    if coeffs.len() != 2 * n {
        return Err(Error::InvalidParameter(format!("expected {} coefficients", 2 * n)));
    }
    let p = koszul_dual_rees_lift(n)?;
    let direct = kt_pow(k, &p, &rho_y(k, &p, n, coeffs), 2 * r);
    let mut closed = KTensor::new();
    let y = 2 * n;
    for j in 0..=r.min(n) {
        let binom = CycScalar::from_int(num_integer::binomial(r as i64, j as i64));
        for idx in (1..=2 * n).combinations(2 * j) {
            let mut coeff = k.zero();
            for perm in (0..2 * j).permutations(2 * j) {
                let sign = if parity(&perm) { -1 } else { 1 };
                let mut prod = k.one();
                for &q in &perm {
                    prod = k.mul(&prod, &coeffs[idx[q] - 1]);
                }
                coeff = &coeff + &prod.scale(&CycScalar::from_int(sign));
            }
            if coeff.is_zero() {
                continue;
            }
            let mut word = vec![y; 2 * (r - j)];
            word.extend(idx.iter().map(|&i| z_index(n, i)));
            let nf = p.normal_form(&FreeElement::word(word, CycScalar::one()));
            for (m, c) in nf.terms() {
                let e = closed.entry(m.clone()).or_insert_with(|| k.zero());
                *e = &*e + &coeff.scale(&(c * &binom));
            }
        }
    }
    closed.retain(|_, v| !v.is_zero());
    Ok(closed == direct)
}

/// True for odd permutations.
fn parity(perm: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                odd = !odd;
            }
        }
    }
    odd
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{cyclic, dual, sweedler4};
    use crate::pbw::{filtered_dim2, quantum_plane, weyl};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn s(n: i64) -> CycScalar {
        CycScalar::from_int(n)
    }

    fn one_binding(key: &str, imgs: &[(&str, &str)]) -> Vec<(String, Vec<(String, String)>)> {
        vec![(
            key.to_string(),
            imgs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        )]
    }

    fn rho(v: &[(&str, &str)]) -> Vec<(String, String)> {
        v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn determinants_in_dimension_two() {
        let spec = ActionSpec::parse(cyclic(2).unwrap(), weyl(1).unwrap(), &one_binding("g", &[("u", "-u"), ("v", "-v")])).unwrap();
        let rep = hdet_dim2(&spec).unwrap();
        assert!(rep.trivial, "{rep}");

        let r = filtered_dim2(s(1), 0, s(0), s(-1), s(0)).unwrap();
        let spec = ActionSpec::parse(cyclic(3).unwrap(), r, &one_binding("g", &[("u", "u"), ("v", "zeta3*v")])).unwrap();
        let rep = hdet_dim2(&spec).unwrap();
        assert!(!rep.trivial);
        assert_eq!(rep.character.as_ref().unwrap()[1], CycScalar::root_of_unity(3, 1));

        let spec = ActionSpec::parse(cyclic(1).unwrap(), quantum_plane(s(2)).unwrap(), &[]).unwrap();
        assert!(hdet_dim2(&spec).unwrap().trivial);
    }

    #[test]
    fn codeterminants_in_dimension_two() {
        let q = CycScalar::root_of_unity(5, 1);
        let c = CoactionSpec::parse(cyclic(5).unwrap(), quantum_plane(q).unwrap(), &rho(&[("u", "u # g"), ("v", "v # g4")])).unwrap();
        assert!(cohdet_dim2(&c).unwrap().trivial);

        let r = filtered_dim2(s(1), 0, s(0), s(-1), s(0)).unwrap();
        let c = CoactionSpec::parse(cyclic(3).unwrap(), r, &rho(&[("u", "u # 1"), ("v", "v # g")])).unwrap();
        let rep = cohdet_dim2(&c).unwrap();
        assert!(!rep.trivial);
        assert_eq!(rep.grouplike.unwrap(), c.hopf().element("g").unwrap());
        let dual_rep = hdet_dim2(&c.dualize()).unwrap();
        assert_eq!(dual_rep.trivial, rep.trivial);
    }

    #[test]
    fn top_power_coefficients() {
        assert_eq!(koszul_top_coefficient(1).unwrap(), s(-1));
        assert_eq!(koszul_top_coefficient(2).unwrap(), s(2));
        let top = Monomial::from_exponents(vec![1; 5]);
        let x = koszul_linear_power(2, &[s(3), s(-1)], &[CycScalar::frac(1, 2), s(7)]).unwrap();
        assert_eq!(x, PbwElement::monomial(x.presentation(), top, s(2)));
    }

    #[test]
    fn koszul_codeterminant_sweedler() {
        let k = sweedler4();
        let f = k.element("f").unwrap();
        let gf = k.element("gf").unwrap();
        let rep = koszul_codeterminant_rees(1, &k, &[f, gf]).unwrap();
        assert!(rep.trace.as_ref().unwrap().is_zero(), "{rep}");
        let zero = koszul_codeterminant_rees(1, &k, &[k.zero(), k.zero()]).unwrap();
        assert!(zero.trivial);
    }

    #[test]
    fn koszul_trace_vanishes_on_random_tuples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let ks = vec![cyclic(3).unwrap(), sweedler4(), dual(&sweedler4())];
        for k in &ks {
            for n in 1..=2 {
                let coeffs: Vec<HopfElement> = (0..2 * n)
                    .map(|_| HopfElement((0..k.dim()).map(|_| s(rng.gen_range(-3..=3))).collect()))
                    .collect();
                let rep = koszul_codeterminant_rees(n, k, &coeffs).unwrap();
                assert!(rep.trace.unwrap().is_zero());
            }
        }
    }

    #[test]
    fn closed_form_matches_direct_expansion() {
        let k = sweedler4();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let coeffs: Vec<HopfElement> = (0..4)
            .map(|_| HopfElement((0..4).map(|_| s(rng.gen_range(-2..=2))).collect()))
            .collect();
        assert!(skew_binomial_crosscheck(2, 2, &k, &coeffs).unwrap());
        assert!(skew_binomial_crosscheck(1, 1, &k, &coeffs[..2]).unwrap());
    }
}
