//! Hopf actions and coactions on PBW algebras, stored as matrices on F1 = k1 + U.

mod coaction;

pub use coaction::*;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::hopf::{self, HopfAlgebra, HopfElement};
use crate::linalg::{self, Matrix, RowSpace};
use crate::pbw::{AffineSubstitution, BasisChange, FreeElement, Monomial, PbwElement, PbwPresentation};
use crate::scalar::CycScalar;
use crate::verdict::Verdict;

/// A left action of a finite-dimensional Hopf algebra on F1 of a PBW algebra.
///
/// `mats[k]` acts on the basis (1, x_0, .., x_{n-1}); column j holds the image of
/// the j-th basis vector under the k-th Hopf basis element.
pub struct ActionSpec {
    hopf: Arc<HopfAlgebra>,
    algebra: Arc<PbwPresentation>,
    mats: Vec<Matrix>,
    defect: Option<String>,
    cache: RwLock<HashMap<(usize, Monomial), PbwElement>>,
}

impl Clone for ActionSpec {
    fn clone(&self) -> Self {
        ActionSpec {
            hopf: self.hopf.clone(),
            algebra: self.algebra.clone(),
            mats: self.mats.clone(),
            defect: self.defect.clone(),
            cache: RwLock::new(HashMap::new()),
        }
    }
}

impl PartialEq for ActionSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.hopf, &other.hopf)
            && *self.algebra == *other.algebra
            && self.mats == other.mats
            && self.defect == other.defect
    }
}

impl fmt::Debug for ActionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ActionSpec({} on {}: {})",
            self.hopf.name(),
            self.algebra.name(),
            self.describe().join(", ")
        )
    }
}

/// Coordinates of an element of degree at most 1 on (1, x_0, ..).
fn f1_coords(x: &FreeElement, n: usize) -> Result<Vec<CycScalar>> {
    if x.degree().unwrap_or(0) > 1 {
        return Err(Error::InvalidParameter(
            "generator images must have degree at most 1".into(),
        ));
    }
    let mut v = vec![x.coefficient(&[])];
    v.extend((0..n).map(|j| x.coefficient(&[j])));
    Ok(v)
}

/// Matrix of a generator: column 0 is eps * 1, the rest are the given images.
fn generator_matrix(eps: &CycScalar, images: &[Vec<CycScalar>]) -> Matrix {
    let n = images.len();
    let mut m = vec![linalg::zero_vec(n + 1); n + 1];
    m[0][0] = eps.clone();
    for (j, col) in images.iter().enumerate() {
        for (i, c) in col.iter().enumerate() {
            m[i][j + 1] = c.clone();
        }
    }
    m
}

/// Extends matrices given on algebra generators of H to all of H.
///
/// Returns the per-basis matrices and a description of the first product whose
/// matrix is not determined consistently, if any.
fn close_generators(
    h: &HopfAlgebra,
    size: usize,
    gens: &[(HopfElement, Matrix)],
) -> Result<(Vec<Matrix>, Option<String>)> {
    let mut span = RowSpace::tracking();
    let mut elems: Vec<(HopfElement, Matrix)> = Vec::new();
    let mut defect = None;
    span.insert(&h.one().0);
    elems.push((h.one(), linalg::identity(size)));
    let combine = |elems: &[(HopfElement, Matrix)], c: &[CycScalar]| -> Matrix {
        let mut m = vec![linalg::zero_vec(size); size];
        for (t, ct) in c.iter().enumerate() {
            if ct.is_zero() {
                continue;
            }
            for (row, src) in m.iter_mut().zip(&elems[t].1) {
                linalg::axpy(row, ct, src);
            }
        }
        m
    };
    let mut queue = vec![0];
    while let Some(idx) = queue.pop() {
        for (g, mg) in gens {
            let y = h.mul(&elems[idx].0, g);
            let my = linalg::mat_mul(&elems[idx].1, mg);
            match span.coordinates(&y.0) {
                Some(c) => {
                    if defect.is_none() && combine(&elems, &c) != my {
                        defect = Some(format!(
                            "the images do not define a module: {} acts inconsistently",
                            h.format(&y)
                        ));
                    }
                }
                None => {
                    span.insert(&y.0);
                    elems.push((y, my));
                    queue.push(elems.len() - 1);
                }
            }
        }
    }
    if span.dim() < h.dim() {
        return Err(Error::NotAModule(format!(
            "the bound elements generate a subalgebra of dimension {} < {}",
            span.dim(),
            h.dim()
        )));
    }
    let mats = (0..h.dim())
        .map(|k| combine(&elems, &span.coordinates(&h.basis(k).0).unwrap()))
        .collect();
    Ok((mats, defect))
}

/// Matrix of the affine change y_i = sum_j P[i][j] x_j + t_i on (1, x).
fn substitution_matrix(s: &AffineSubstitution) -> Matrix {
    let n = s.matrix.len();
    let mut q = vec![linalg::zero_vec(n + 1); n + 1];
    q[0][0] = CycScalar::one();
    for i in 0..n {
        q[0][i + 1] = s.translation[i].clone();
        for j in 0..n {
            q[j + 1][i + 1] = s.matrix[i][j].clone();
        }
    }
    q
}

/// Rewrites F1 matrices in the coordinates of the new generators.
pub(crate) fn transport_matrices(s: &AffineSubstitution, mats: &[Matrix]) -> Result<Vec<Matrix>> {
    let q = substitution_matrix(s);
    let qi = linalg::inverse(&q).ok_or(Error::NotInvertible)?;
    Ok(mats
        .iter()
        .map(|m| linalg::mat_mul(&qi, &linalg::mat_mul(m, &q)))
        .collect())
}

/// Bindings from Hopf expressions to generator images, as read from scenario files.
pub type Bindings = [(String, Vec<(String, String)>)];

fn bound_images(
    h: &HopfAlgebra,
    names: &[String],
    bindings: &Bindings,
) -> Result<Vec<(HopfElement, Matrix)>> {
    let n = names.len();
    let mut gens = Vec::new();
    for (key, images) in bindings {
        let x = h.parse(key)?;
        let mut cols = Vec::new();
        for g in names {
            let Some((_, img)) = images.iter().find(|(name, _)| name == g) else {
                return Err(Error::InvalidParameter(format!(
                    "the action of `{key}` on `{g}` is not given"
                )));
            };
            cols.push(f1_coords(&FreeElement::parse(names, img)?, n)?);
        }
        if let Some((extra, _)) = images.iter().find(|(name, _)| !names.contains(name)) {
            return Err(Error::InvalidParameter(format!("unknown generator `{extra}`")));
        }
        gens.push((x.clone(), generator_matrix(&h.counit(&x), &cols)));
    }
    Ok(gens)
}

impl ActionSpec {
    /// Builds a spec from one matrix per Hopf basis element. Column 0 is reset to
    /// eps(h) * 1.
    pub fn from_matrices(
        hopf: Arc<HopfAlgebra>,
        algebra: Arc<PbwPresentation>,
        mut mats: Vec<Matrix>,
    ) -> Result<Self> {
        let n = algebra.ngens();
        if mats.len() != hopf.dim() || mats.iter().any(|m| m.len() != n + 1 || m.iter().any(|r| r.len() != n + 1)) {
            return Err(Error::InvalidParameter(format!(
                "expected {} matrices of size {}",
                hopf.dim(),
                n + 1
            )));
        }
        for (k, m) in mats.iter_mut().enumerate() {
            for (i, row) in m.iter_mut().enumerate() {
                row[0] = if i == 0 {
                    hopf.counit_basis(k).clone()
                } else {
                    CycScalar::zero()
                };
            }
        }
        Ok(ActionSpec {
            hopf,
            algebra,
            mats,
            defect: None,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Builds a spec from the images of the generators under elements that
    /// generate H as an algebra.
    pub fn from_generator_images(
        hopf: Arc<HopfAlgebra>,
        algebra: Arc<PbwPresentation>,
        images: &[(HopfElement, Vec<PbwElement>)],
    ) -> Result<Self> {
        let n = algebra.ngens();
        let mut gens = Vec::new();
        for (x, imgs) in images {
            if imgs.len() != n {
                return Err(Error::InvalidParameter(format!("expected {n} images")));
            }
            let cols = imgs
                .iter()
                .map(|y| f1_coords(&y.to_free(), n))
                .collect::<Result<Vec<_>>>()?;
            gens.push((x.clone(), generator_matrix(&hopf.counit(x), &cols)));
        }
        let (mats, defect) = close_generators(&hopf, n + 1, &gens)?;
        let mut spec = Self::from_matrices(hopf, algebra, mats)?;
        spec.defect = defect;
        Ok(spec)
    }

    /// Reads bindings such as `g: { u: "-u", v: "-v" }`.
    pub fn parse(hopf: Arc<HopfAlgebra>, algebra: Arc<PbwPresentation>, bindings: &Bindings) -> Result<Self> {
        let gens = bound_images(&hopf, algebra.generators(), bindings)?;
        let (mats, defect) = close_generators(&hopf, algebra.ngens() + 1, &gens)?;
        let mut spec = Self::from_matrices(hopf, algebra, mats)?;
        spec.defect = defect;
        Ok(spec)
    }

    /// Reads bindings written in the source generators of a change of basis and
    /// transports them to its presentation.
    pub fn parse_via(hopf: Arc<HopfAlgebra>, change: &BasisChange, bindings: &Bindings) -> Result<Self> {
        let gens = bound_images(&hopf, &change.source_names, bindings)?;
        let (mats, defect) = close_generators(&hopf, change.source_names.len() + 1, &gens)?;
        let mats = transport_matrices(&change.substitution, &mats)?;
        let mut spec = Self::from_matrices(hopf, change.presentation.clone(), mats)?;
        spec.defect = defect;
        Ok(spec)
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        &self.hopf
    }

    pub fn algebra(&self) -> &Arc<PbwPresentation> {
        &self.algebra
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.mats
    }

    /// Matrix of an arbitrary element of H on F1.
    pub fn matrix_of(&self, h: &HopfElement) -> Matrix {
        let n = self.algebra.ngens() + 1;
        let mut out = vec![linalg::zero_vec(n); n];
        for (k, c) in h.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (row, src) in out.iter_mut().zip(&self.mats[k]) {
                linalg::axpy(row, c, src);
            }
        }
        out
    }

    /// Image of generator j under the k-th basis element.
    pub fn image(&self, k: usize, j: usize) -> PbwElement {
        let col: Vec<CycScalar> = self.mats[k].iter().map(|r| r[j + 1].clone()).collect();
        self.f1_element(&col)
    }

    fn f1_element(&self, col: &[CycScalar]) -> PbwElement {
        let p = &self.algebra;
        let mut x = PbwElement::scalar(p, col[0].clone());
        for (i, c) in col[1..].iter().enumerate() {
            if !c.is_zero() {
                x = &x + &PbwElement::generator(p, i).scale(c);
            }
        }
        x
    }

    fn image_free(&self, k: usize, j: usize) -> FreeElement {
        let m = &self.mats[k];
        let mut x = FreeElement::scalar(m[0][j + 1].clone());
        for i in 0..self.algebra.ngens() {
            if !m[i + 1][j + 1].is_zero() {
                x = &x + &FreeElement::word(vec![i], m[i + 1][j + 1].clone());
            }
        }
        x
    }

    fn act_basis(&self, k: usize, m: &Monomial) -> PbwElement {
        let key = (k, m.clone());
        if let Some(v) = self.cache.read().unwrap().get(&key) {
            return v.clone();
        }
        let p = &self.algebra;
        let out = match m.last_generator() {
            None => PbwElement::scalar(p, self.hopf.counit_basis(k).clone()),
            Some(l) => {
                let head = m.bumped(l, -1);
                let mut acc = PbwElement::zero(p);
                for (&(a, b), c) in self.hopf.comult_basis(k) {
                    let left = self.act_basis(a, &head);
                    if left.is_zero() {
                        continue;
                    }
                    let right = self.image(b, l);
                    if !right.is_zero() {
                        acc = &acc + &(&left * &right).scale(c);
                    }
                }
                acc
            }
        };
        self.cache.write().unwrap().insert(key, out.clone());
        out
    }

    /// h . r, extending the action on F1 through the coproduct.
    pub fn act(&self, h: &HopfElement, r: &PbwElement) -> Result<PbwElement> {
        if **r.presentation() != *self.algebra {
            return Err(Error::PresentationMismatch);
        }
        let p = &self.algebra;
        let mut out = PbwElement::zero(p);
        for (k, hk) in h.0.iter().enumerate() {
            if hk.is_zero() {
                continue;
            }
            for (m, c) in r.terms() {
                out = &out + &self.act_basis(k, m).scale(&(hk * c));
            }
        }
        Ok(out)
    }

    fn act_word(&self, k: usize, w: &[usize]) -> FreeElement {
        let Some((&last, head)) = w.split_last() else {
            return FreeElement::scalar(self.hopf.counit_basis(k).clone());
        };
        let mut acc = FreeElement::zero();
        for (&(a, b), c) in self.hopf.comult_basis(k) {
            let left = self.act_word(a, head);
            if !left.is_zero() {
                acc = &acc + &(&left * &self.image_free(b, last)).scale(c);
            }
        }
        acc
    }

    /// The k-th basis element applied to a free-algebra element word by word.
    pub fn act_free(&self, k: usize, x: &FreeElement) -> FreeElement {
        let mut acc = FreeElement::zero();
        for (w, c) in x.terms() {
            acc = &acc + &self.act_word(k, &w.0).scale(c);
        }
        acc
    }

    /// Checks the module axioms on F1 and that every h . r lies in the ideal of
    /// relations.
    pub fn verify_module_algebra(&self) -> Verdict {
        if let Some(d) = &self.defect {
            return Verdict::fail(d.clone());
        }
        let h = &self.hopf;
        let size = self.algebra.ngens() + 1;
        if self.matrix_of(&h.one()) != linalg::identity(size) {
            return Verdict::fail("the unit does not act as the identity");
        }
        for a in 0..h.dim() {
            for b in 0..h.dim() {
                let lhs = self.matrix_of(&h.mul_basis(a, b));
                if lhs != linalg::mat_mul(&self.mats[a], &self.mats[b]) {
                    return Verdict::fail(format!(
                        "not a module: ({}*{}) differs from {} after {}",
                        h.labels()[a],
                        h.labels()[b],
                        h.labels()[a],
                        h.labels()[b]
                    ));
                }
            }
        }
        let names = self.algebra.generators();
        for r in self.algebra.relations() {
            for k in 0..h.dim() {
                let hr = self.act_free(k, &r);
                if !self.algebra.normal_form(&hr).is_zero() {
                    return Verdict::fail(format!(
                        "{} . ({}) = {} is not in the ideal of relations",
                        h.labels()[k],
                        r.fmt_with(names),
                        hr.fmt_with(names)
                    ));
                }
            }
        }
        let mut detail = format!("{} is a left {}-module algebra", self.algebra.name(), h.name());
        if let Some(phi) = self.relation_character() {
            let vals: Vec<String> = phi.iter().map(|c| c.to_string()).collect();
            detail.push_str(&format!("; h . r = phi(h) r with phi = ({})", vals.join(", ")));
        }
        Verdict::pass(detail)
    }

    /// For a single relation r, the values phi(h_k) with h_k . r = phi(h_k) r, when
    /// every h_k . r is a multiple of r.
    pub fn relation_character(&self) -> Option<Vec<CycScalar>> {
        let rels = self.algebra.relations();
        let [r] = rels.as_slice() else {
            return None;
        };
        let (lead, lc) = r.leading()?;
        let mut out = Vec::new();
        for k in 0..self.hopf.dim() {
            let hr = self.act_free(k, r);
            let phi = &hr.coefficient(&lead.0) / lc;
            if hr != r.scale(&phi) {
                return None;
            }
            out.push(phi);
        }
        Some(out)
    }

    /// An H-stable complement of k1 in F1, as elements x_j + t_j, if one exists.
    pub fn is_proper(&self) -> Option<Vec<PbwElement>> {
        let n = self.algebra.ngens();
        let mut rows: Matrix = Vec::new();
        let mut rhs = Vec::new();
        for (k, m) in self.mats.iter().enumerate() {
            let eps = self.hopf.counit_basis(k);
            for j in 0..n {
                let mut row: Vec<CycScalar> = (0..n).map(|i| m[i + 1][j + 1].clone()).collect();
                row[j] -= eps;
                rows.push(row);
                rhs.push(m[0][j + 1].clone());
            }
        }
        let t = linalg::solve(&rows, &rhs, n)?;
        let p = &self.algebra;
        Some(
            (0..n)
                .map(|j| &PbwElement::generator(p, j) + &PbwElement::scalar(p, t[j].clone()))
                .collect(),
        )
    }

    /// The induced action on the associated graded algebra.
    pub fn induced_gr_action(&self) -> Result<ActionSpec> {
        let gr = self.algebra.associated_graded()?;
        let mats = self
            .mats
            .iter()
            .map(|m| {
                let mut m = m.clone();
                for c in m[0].iter_mut().skip(1) {
                    *c = CycScalar::zero();
                }
                m
            })
            .collect();
        Self::from_matrices(self.hopf.clone(), gr, mats)
    }

    /// The action on the Rees ring, with h . t = eps(h) t.
    pub fn rees_lift(&self) -> Result<ActionSpec> {
        let rees = self.algebra.rees()?;
        let n = self.algebra.ngens();
        let mats = self
            .mats
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let mut out = vec![linalg::zero_vec(n + 2); n + 2];
                out[1][1] = self.hopf.counit_basis(k).clone();
                for j in 0..n {
                    out[1][j + 2] = m[0][j + 1].clone();
                    for i in 0..n {
                        out[i + 2][j + 2] = m[i + 1][j + 1].clone();
                    }
                }
                out
            })
            .collect();
        Self::from_matrices(self.hopf.clone(), rees, mats)
    }

    /// Sets t = 1 or t = 0 in an action on a Rees ring and reads the result on
    /// `target`, which must have the remaining generators.
    pub fn specialize_t(&self, at_one: bool, target: Arc<PbwPresentation>) -> Result<ActionSpec> {
        let n = target.ngens();
        if self.algebra.ngens() != n + 1 || self.algebra.generators()[0] != "t" {
            return Err(Error::Precondition("not an action on a Rees ring over the target".into()));
        }
        let mats = self
            .mats
            .iter()
            .map(|m| {
                let mut out = vec![linalg::zero_vec(n + 1); n + 1];
                for j in 0..n {
                    let mut c = m[0][j + 2].clone();
                    if at_one {
                        c += &m[1][j + 2];
                    }
                    out[0][j + 1] = c;
                    for i in 0..n {
                        out[i + 1][j + 1] = m[i + 2][j + 2].clone();
                    }
                }
                out
            })
            .collect();
        Self::from_matrices(self.hopf.clone(), target, mats)
    }

    /// The same action written in new generators.
    pub fn change_basis(&self, subst: &AffineSubstitution) -> Result<(BasisChange, ActionSpec)> {
        let bc = self.algebra.change_basis(subst)?;
        let mats = transport_matrices(subst, &self.mats)?;
        let mut spec = Self::from_matrices(self.hopf.clone(), bc.presentation.clone(), mats)?;
        spec.defect = self.defect.clone();
        Ok((bc, spec))
    }

    /// The equivalent right coaction of the dual Hopf algebra.
    pub fn dualize(&self) -> CoactionSpec {
        let k = hopf::dual(&self.hopf);
        let n = self.algebra.ngens();
        let entry = |i: usize, j: usize| HopfElement(self.mats.iter().map(|m| m[i][j].clone()).collect());
        let e = (0..n)
            .map(|i| (0..n).map(|j| entry(i + 1, j + 1)).collect())
            .collect();
        let f = (0..n).map(|j| entry(0, j + 1)).collect();
        CoactionSpec::from_parts(k, self.algebra.clone(), e, f)
            .expect("dual coaction has matching shape")
    }

    pub fn is_inner_faithful(&self) -> bool {
        self.dualize().is_inner_faithful()
    }

    /// True when every basis element maps U into U.
    pub fn preserves_generating_space(&self) -> bool {
        self.mats.iter().all(|m| m[0].iter().skip(1).all(|c| c.is_zero()))
    }

    /// Lines like `g . u = -u` for the algebra generators of H.
    pub fn describe(&self) -> Vec<String> {
        let h = &self.hopf;
        let names = self.algebra.generators();
        let mut out = Vec::new();
        for &k in h.algebra_generators() {
            for (j, x) in names.iter().enumerate() {
                out.push(format!("{} . {} = {}", h.labels()[k], x, self.image(k, j)));
            }
        }
        out
    }

    /// Images under an arbitrary element, one per generator.
    pub fn images_of(&self, h: &HopfElement) -> Vec<PbwElement> {
        let m = self.matrix_of(h);
        (0..self.algebra.ngens())
            .map(|j| {
                let col: Vec<CycScalar> = m.iter().map(|r| r[j + 1].clone()).collect();
                self.f1_element(&col)
            })
            .collect()
    }
}
