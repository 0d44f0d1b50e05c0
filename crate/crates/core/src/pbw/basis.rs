//! Affine changes of generators and straightening of general quadratic relations.

use std::sync::Arc;

use super::{add_term, FreeElement, Monomial, PbwElement, PbwPresentation, RuleSet, Terms, Word};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::CycScalar;

/// new_i = sum_j matrix[i][j] * old_j + translation[i].
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSubstitution {
    pub new_names: Vec<String>,
    pub matrix: Matrix,
    pub translation: Vec<CycScalar>,
}

impl AffineSubstitution {
    pub fn identity(names: &[String]) -> Self {
        AffineSubstitution {
            new_names: names.to_vec(),
            matrix: linalg::identity(names.len()),
            translation: linalg::zero_vec(names.len()),
        }
    }

    /// Reads definitions like `a = u + zeta4*v` in terms of the old generators.
    pub fn parse(old_names: &[String], defs: &[(String, String)]) -> Result<Self> {
        let n = old_names.len();
        if defs.len() != n {
            return Err(Error::InvalidParameter(format!(
                "substitution needs {n} definitions"
            )));
        }
        let mut matrix = Vec::new();
        let mut translation = Vec::new();
        let mut new_names = Vec::new();
        for (name, def) in defs {
            let e = FreeElement::parse(old_names, def)?;
            if e.degree().unwrap_or(0) > 1 {
                return Err(Error::InvalidParameter(format!(
                    "`{name} = {def}` is not affine"
                )));
            }
            matrix.push((0..n).map(|j| e.coefficient(&[j])).collect());
            translation.push(e.coefficient(&[]));
            new_names.push(name.clone());
        }
        Ok(AffineSubstitution {
            new_names,
            matrix,
            translation,
        })
    }

    /// Images of the old generators written in the new ones.
    pub fn old_in_new(&self) -> Result<Vec<FreeElement>> {
        let inv = linalg::inverse(&self.matrix).ok_or(Error::NotInvertible)?;
        let n = self.matrix.len();
        Ok((0..n)
            .map(|j| {
                let mut e = FreeElement::zero();
                for i in 0..n {
                    e = &e + &FreeElement::word(vec![i], inv[j][i].clone());
                    e = &e - &FreeElement::scalar(&inv[j][i] * &self.translation[i]);
                }
                e
            })
            .collect())
    }

    /// Images of the new generators written in the old ones.
    pub fn new_in_old(&self) -> Vec<FreeElement> {
        self.matrix
            .iter()
            .zip(&self.translation)
            .map(|(row, t)| {
                let mut e = FreeElement::scalar(t.clone());
                for (j, c) in row.iter().enumerate() {
                    e = &e + &FreeElement::word(vec![j], c.clone());
                }
                e
            })
            .collect()
    }

    /// `self` followed by `then` (whose old generators are the new ones of `self`).
    pub fn then(&self, then: &AffineSubstitution) -> AffineSubstitution {
        let matrix = linalg::mat_mul(&then.matrix, &self.matrix);
        let mut translation = linalg::mat_vec(&then.matrix, &self.translation);
        for (t, s) in translation.iter_mut().zip(&then.translation) {
            *t += s;
        }
        AffineSubstitution {
            new_names: then.new_names.clone(),
            matrix,
            translation,
        }
    }

    pub fn fmt_with(&self, old_names: &[String]) -> Vec<String> {
        self.new_in_old()
            .iter()
            .zip(&self.new_names)
            .map(|(e, n)| format!("{} = {}", n, e.fmt_with(old_names)))
            .collect()
    }
}

/// A presentation obtained by change of generators, with the map that produced it.
#[derive(Clone, Debug)]
pub struct BasisChange {
    pub substitution: AffineSubstitution,
    pub source_names: Vec<String>,
    pub presentation: Arc<PbwPresentation>,
    old_images: Vec<FreeElement>,
}

impl BasisChange {
    /// The image of an old-generator expression in the new presentation.
    pub fn transport_free(&self, x: &FreeElement) -> PbwElement {
        self.presentation.normal_form(&x.substitute(&self.old_images))
    }

    pub fn transport(&self, x: &PbwElement) -> PbwElement {
        self.transport_free(&x.to_free())
    }

    /// Old generators as elements of the new presentation.
    pub fn old_generator_images(&self) -> Vec<PbwElement> {
        self.old_images
            .iter()
            .map(|e| self.presentation.normal_form(e))
            .collect()
    }
}

/// Rewrites relations in old generators into a presentation in new ones.
pub fn change_basis_free(
    name: &str,
    old_names: &[String],
    relations: &[FreeElement],
    subst: &AffineSubstitution,
) -> Result<BasisChange> {
    if subst.matrix.len() != old_names.len() {
        return Err(Error::InvalidParameter("substitution size mismatch".into()));
    }
    let old_images = subst.old_in_new()?;
    let rels: Vec<FreeElement> = relations.iter().map(|r| r.substitute(&old_images)).collect();
    let presentation = PbwPresentation::from_relations(name, subst.new_names.clone(), &rels)?;
    Ok(BasisChange {
        substitution: subst.clone(),
        source_names: old_names.to_vec(),
        presentation,
        old_images,
    })
}

impl PbwPresentation {
    pub fn change_basis(&self, subst: &AffineSubstitution) -> Result<BasisChange> {
        change_basis_free(&self.name, &self.generators, &self.relations(), subst)
    }

    /// Straightens a list of quadratic relations by row reduction on leading words.
    ///
    /// Each reduced relation must lead with an inversion x_j x_i (j > i) or a square.
    pub fn from_relations(
        name: &str,
        generators: Vec<String>,
        relations: &[FreeElement],
    ) -> Result<Arc<Self>> {
        let n = generators.len();
        let mut words: Vec<Word> = relations
            .iter()
            .flat_map(|r| r.terms().keys().cloned())
            .collect();
        words.sort();
        words.dedup();
        words.reverse();
        let mut m: Matrix = relations
            .iter()
            .map(|r| words.iter().map(|w| r.terms().get(w).cloned().unwrap_or_default()).collect())
            .collect();
        let pivots = linalg::rref(&mut m);
        let mut set = RuleSet::default();
        for (row, &p) in m.iter().zip(&pivots) {
            let lead = &words[p];
            if lead.0.len() != 2 || lead.0[0] < lead.0[1] {
                return Err(Error::NotStraightening(format!(
                    "relation leads with `{}`",
                    super::free::fmt_word(&lead.0, &generators)
                )));
            }
            let (j, i) = (lead.0[0], lead.0[1]);
            let mut q = CycScalar::zero();
            let mut tail = Terms::new();
            for (k, c) in row.iter().enumerate() {
                if k == p || c.is_zero() {
                    continue;
                }
                let w = &words[k].0;
                if j != i && w.as_slice() == [i, j] {
                    q = -c.clone();
                    continue;
                }
                let mono = Monomial::from_word(n, w).ok_or_else(|| {
                    Error::NotStraightening(format!(
                        "tail word `{}` is not normal",
                        super::free::fmt_word(w, &generators)
                    ))
                })?;
                add_term(&mut tail, mono, -c.clone());
            }
            if i == j {
                set.powers.push((i, tail));
            } else {
                set.swaps.push((j, i, q, tail));
            }
        }
        PbwPresentation::new(name, generators, set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::filtered_dim2;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn circle_relation_straightens_in_complex_coordinates() {
        let old = names(&["u", "v"]);
        let r = FreeElement::parse(&old, "u*u + v*v - 1").unwrap();
        assert!(matches!(
            PbwPresentation::from_relations("circle", old.clone(), &[r.clone()]),
            Err(Error::NotStraightening(_))
        ));
        let sub = AffineSubstitution::parse(
            &old,
            &[
                ("a".into(), "u + zeta4*v".into()),
                ("b".into(), "u - zeta4*v".into()),
            ],
        )
        .unwrap();
        let bc = change_basis_free("circle", &old, &[r], &sub).unwrap();
        assert_eq!(bc.presentation.rule_strings(), vec!["b*a -> -a*b + 2"]);
        let a = PbwElement::gen(&bc.presentation, "a");
        let b = PbwElement::gen(&bc.presentation, "b");
        let check = &(&(&a * &b) + &(&b * &a)) - &PbwElement::scalar(&bc.presentation, CycScalar::from_int(2));
        assert!(check.is_zero());
    }

    #[test]
    fn identity_substitution_is_noop() {
        let p = filtered_dim2(
            CycScalar::from_int(3),
            0,
            CycScalar::from_int(1),
            CycScalar::from_int(2),
            CycScalar::from_int(5),
        )
        .unwrap();
        let bc = p.change_basis(&AffineSubstitution::identity(p.generators())).unwrap();
        assert_eq!(*bc.presentation, *p);
    }

    #[test]
    fn translation_removes_linear_term() {
        // vu - q uv + a u with v -> v + a/(1-q)
        let q = CycScalar::from_int(3);
        let a = CycScalar::from_int(2);
        let p = filtered_dim2(q.clone(), 0, a.clone(), CycScalar::zero(), CycScalar::zero()).unwrap();
        let shift = &a / &(&CycScalar::one() - &q);
        let sub = AffineSubstitution {
            new_names: names(&["u", "v"]),
            matrix: linalg::identity(2),
            translation: vec![CycScalar::zero(), shift],
        };
        let bc = p.change_basis(&sub).unwrap();
        assert!(bc.presentation.is_graded());
        assert_eq!(bc.presentation.rule_strings(), vec!["v*u -> 3*u*v"]);
    }

    #[test]
    fn singular_substitution_is_rejected() {
        let p = filtered_dim2(
            CycScalar::from_int(3),
            0,
            CycScalar::zero(),
            CycScalar::zero(),
            CycScalar::one(),
        )
        .unwrap();
        let sub = AffineSubstitution {
            new_names: names(&["a", "b"]),
            matrix: vec![
                vec![CycScalar::one(), CycScalar::one()],
                vec![CycScalar::from_int(2), CycScalar::from_int(2)],
            ],
            translation: linalg::zero_vec(2),
        };
        assert!(matches!(p.change_basis(&sub), Err(Error::NotInvertible)));
    }
}
