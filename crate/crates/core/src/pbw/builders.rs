//! Presentations of the algebra families used throughout.

use std::sync::Arc;

use super::{add_term, Monomial, PbwPresentation, RuleSet, Terms};
use crate::error::{Error, Result};
use crate::scalar::CycScalar;

fn terms(n: usize, parts: &[(&[usize], CycScalar)]) -> Terms {
    let mut t = Terms::new();
    for (w, c) in parts {
        add_term(
            &mut t,
            Monomial::from_word(n, w).expect("normal word"),
            c.clone(),
        );
    }
    t
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// k<u, v>/(vu - q uv).
pub fn quantum_plane(q: CycScalar) -> Result<Arc<PbwPresentation>> {
    if q.is_zero() {
        return Err(Error::InvalidParameter("q must be nonzero".into()));
    }
    let mut r = RuleSet::default();
    r.swaps.push((1, 0, q, Terms::new()));
    PbwPresentation::new("quantum_plane", names(&["u", "v"]), r)
}

/// k<u, v>/(vu - uv - u^2).
pub fn jordan_plane() -> Result<Arc<PbwPresentation>> {
    let mut r = RuleSet::default();
    r.swaps
        .push((1, 0, CycScalar::one(), terms(2, &[(&[0, 0], CycScalar::one())])));
    PbwPresentation::new("jordan_plane", names(&["u", "v"]), r)
}

/// k<u, v>/(vu - q uv - lambda u^2 + a u + b v + c).
pub fn filtered_dim2(
    q: CycScalar,
    lambda: i64,
    a: CycScalar,
    b: CycScalar,
    c: CycScalar,
) -> Result<Arc<PbwPresentation>> {
    if q.is_zero() {
        return Err(Error::InvalidParameter("q must be nonzero".into()));
    }
    if lambda != 0 && lambda != 1 {
        return Err(Error::InvalidParameter("lambda must be 0 or 1".into()));
    }
    let tail = terms(
        2,
        &[
            (&[0, 0], CycScalar::from_int(lambda)),
            (&[0], -a),
            (&[1], -b),
            (&[], -c),
        ],
    );
    let mut r = RuleSet::default();
    r.swaps.push((1, 0, q, tail));
    PbwPresentation::new("filtered_dim2", names(&["u", "v"]), r)
}

fn indexed(prefix: &str, n: usize, suffix: &str) -> Vec<String> {
    if n == 1 {
        vec![format!("{prefix}{suffix}")]
    } else {
        (1..=n).map(|i| format!("{prefix}{i}{suffix}")).collect()
    }
}

fn weyl_rules(n: usize, offset: usize, t: Option<usize>) -> RuleSet {
    // generators: [offset .. offset+n) are u's, [offset+n .. offset+2n) are v's
    let total = offset + 2 * n;
    let mut r = RuleSet::default();
    for j in 0..2 * n {
        for i in 0..j {
            let (gj, gi) = (offset + j, offset + i);
            let mut tail = Terms::new();
            if j >= n && i < n && j - n == i {
                let w: Vec<usize> = match t {
                    Some(t) => vec![t, t],
                    None => vec![],
                };
                add_term(
                    &mut tail,
                    Monomial::from_word(total, &w).unwrap(),
                    CycScalar::one(),
                );
            }
            r.swaps.push((gj, gi, CycScalar::one(), tail));
        }
    }
    r
}

/// The Weyl algebra A_n: [v_i, u_j] = delta_ij, generators u_1..u_n, v_1..v_n.
pub fn weyl(n: usize) -> Result<Arc<PbwPresentation>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let mut g = indexed("u", n, "");
    g.extend(indexed("v", n, ""));
    PbwPresentation::new(&format!("weyl({n})"), g, weyl_rules(n, 0, None))
}

/// Rees ring of A_n: [v_i, u_j] = delta_ij t^2 with t central and first.
pub fn rees_weyl(n: usize) -> Result<Arc<PbwPresentation>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    weyl(n)?.rees()
}

fn koszul_rules(n: usize, with_square: bool) -> (Vec<String>, RuleSet) {
    // generators: v1', u1', v2', u2', ..., t'
    let mut g = Vec::new();
    let v = indexed("v", n, "'");
    let u = indexed("u", n, "'");
    for i in 0..n {
        g.push(v[i].clone());
        g.push(u[i].clone());
    }
    g.push("t'".into());
    let total = 2 * n + 1;
    let y = 2 * n;
    let mut r = RuleSet::default();
    for j in 0..total {
        for i in 0..j {
            r.swaps.push((j, i, CycScalar::from_int(-1), Terms::new()));
        }
    }
    for i in 0..2 * n {
        r.powers.push((i, Terms::new()));
    }
    if with_square {
        let parts: Vec<(Vec<usize>, CycScalar)> = (0..n)
            .map(|i| (vec![2 * i, 2 * i + 1], CycScalar::from_int(-1)))
            .collect();
        let refs: Vec<(&[usize], CycScalar)> =
            parts.iter().map(|(w, c)| (w.as_slice(), c.clone())).collect();
        r.powers.push((y, terms(total, &refs)));
    }
    (g, r)
}

/// Koszul dual of the Rees ring of A_n: exterior generators v_i', u_i' and t' with
/// t'^2 = -sum v_i' u_i'.
pub fn koszul_dual_rees(n: usize) -> Result<Arc<PbwPresentation>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let (g, r) = koszul_rules(n, true);
    PbwPresentation::new(&format!("koszul_dual_rees({n})"), g, r)
}

/// The same generators without the rule for t'^2.
pub fn koszul_dual_rees_lift(n: usize) -> Result<Arc<PbwPresentation>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let (g, r) = koszul_rules(n, false);
    PbwPresentation::new(&format!("koszul_dual_rees_lift({n})"), g, r)
}

/// Commutative polynomial ring: u for k = 1, u, v for k = 2, else x1..xk.
pub fn commutative_poly(k: usize) -> Result<Arc<PbwPresentation>> {
    let g = match k {
        0 => return Err(Error::InvalidParameter("k must be at least 1".into())),
        1 => names(&["u"]),
        2 => names(&["u", "v"]),
        _ => (1..=k).map(|i| format!("x{i}")).collect(),
    };
    polynomial_ring(&g)
}

pub fn polynomial_ring(gens: &[String]) -> Result<Arc<PbwPresentation>> {
    let k = gens.len();
    let mut r = RuleSet::default();
    for j in 0..k {
        for i in 0..j {
            r.swaps.push((j, i, CycScalar::one(), Terms::new()));
        }
    }
    PbwPresentation::new(&format!("poly({})", gens.join(",")), gens.to_vec(), r)
}
