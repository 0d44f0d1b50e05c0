//! Scenario files: an algebra, a Hopf algebra, a (co)action and the analyses to run.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::action::{ActionSpec, CoactionSpec};
use crate::classify::{canonicalize_relation, match_cyclic_family, CanonicalForm, Dim2Relation};
use crate::error::{Error, Result};
use crate::expr;
use crate::galois::{strongly_graded_check, ComponentResult};
use crate::hdet::{cohdet_dim2, hdet_dim2};
use crate::hopf::{self, HopfAlgebra};
use crate::invariants::{fixed_ring_generators, gr_comparison, verify_presentation};
use crate::pbw::{self, AffineSubstitution, BasisChange, FreeElement, PbwPresentation};
use crate::scalar::CycScalar;
use crate::verdict::Verdict;

pub const DEFAULT_INVARIANT_DEGREE: usize = 8;
pub const DEFAULT_GALOIS_DEGREE: usize = 6;

fn zero() -> String {
    "0".into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "builder", rename_all = "snake_case")]
pub enum AlgebraSpec {
    /// vu - q uv - lambda u^2 + a u + b v + c
    FilteredDim2 {
        q: String,
        #[serde(default)]
        lambda: i64,
        #[serde(default = "zero")]
        a: String,
        #[serde(default = "zero")]
        b: String,
        #[serde(default = "zero")]
        c: String,
    },
    Weyl {
        n: usize,
    },
    QuantumPlane {
        q: String,
    },
    JordanPlane,
    Polynomial {
        generators: Vec<String>,
    },
    Relations {
        generators: Vec<String>,
        relations: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "constructor", rename_all = "snake_case")]
pub enum HopfSpec {
    Cyclic { order: usize },
    Dihedral { n: usize },
    Sweedler4,
    KacPalyutkin8,
    Dual { of: Box<HopfSpec> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Analysis {
    Verify,
    Invariants(Option<usize>),
    Hdet,
    Classify,
    Galois(Option<usize>),
}

impl FromStr for Analysis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut it = s.split_whitespace();
        let head = it.next().unwrap_or("");
        let degree = match it.next() {
            Some(d) => Some(
                d.parse::<usize>()
                    .map_err(|_| Error::InvalidParameter(format!("bad degree in `{s}`")))?,
            ),
            None => None,
        };
        if it.next().is_some() {
            return Err(Error::InvalidParameter(format!("unexpected text in `{s}`")));
        }
        let plain = |a: Analysis| {
            if degree.is_some() {
                Err(Error::InvalidParameter(format!("`{head}` takes no degree")))
            } else {
                Ok(a)
            }
        };
        match head {
            "verify" => plain(Analysis::Verify),
            "hdet" => plain(Analysis::Hdet),
            "classify" => plain(Analysis::Classify),
            "invariants" => Ok(Analysis::Invariants(degree)),
            "galois" => Ok(Analysis::Galois(degree)),
            _ => Err(Error::InvalidParameter(format!("unknown analysis `{s}`"))),
        }
    }
}

impl fmt::Display for Analysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Analysis::Verify => f.write_str("verify"),
            Analysis::Hdet => f.write_str("hdet"),
            Analysis::Classify => f.write_str("classify"),
            Analysis::Invariants(None) => f.write_str("invariants"),
            Analysis::Invariants(Some(n)) => write!(f, "invariants {n}"),
            Analysis::Galois(None) => f.write_str("galois"),
            Analysis::Galois(Some(n)) => write!(f, "galois {n}"),
        }
    }
}

impl Serialize for Analysis {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Analysis {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Named generators of the fixed ring, written in the original generators, and
/// relations among them.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedRing {
    pub generators: Vec<[String; 2]>,
    #[serde(default)]
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub analyses: Vec<Analysis>,
    /// New generators written in the original ones; bindings stay in the original ones.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<[String; 2]>,
    /// Expected report values, keyed like the kv output.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expect: BTreeMap<String, String>,
    pub algebra: AlgebraSpec,
    pub hopf: HopfSpec,
    /// Hopf label -> generator -> image.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub action: BTreeMap<String, BTreeMap<String, String>>,
    /// Generator -> rho(generator), tensor factors separated by `#`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub coaction: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_ring: Option<FixedRing>,
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map(|i| i + 1).unwrap_or(0) + 1;
    (line, col)
}

/// Re-anchors a parse error in an embedded expression at the line where the text occurs.
fn anchor(src: &str, text: &str, e: Error) -> Error {
    match e {
        Error::Parse { column, message, .. } => {
            for (i, l) in src.lines().enumerate() {
                if let Some(pos) = l.find(text) {
                    return Error::Parse {
                        line: i + 1,
                        column: pos + column,
                        message,
                    };
                }
            }
            Error::Parse { line: 1, column, message }
        }
        other => other,
    }
}

fn scalar(s: &str) -> Result<CycScalar> {
    expr::eval_scalar(&expr::parse(s)?)
}

impl Scenario {
    pub fn parse(src: &str) -> Result<Self> {
        let s: Scenario = toml::from_str(src).map_err(|e| {
            let (line, column) = e.span().map(|r| line_col(src, r.start)).unwrap_or((1, 1));
            Error::Parse {
                line,
                column,
                message: e.message().to_string(),
            }
        })?;
        if !s.action.is_empty() && !s.coaction.is_empty() {
            return Err(Error::InvalidParameter("give an action or a coaction, not both".into()));
        }
        // surface expression errors with their line
        s.build().map_err(|e| s.anchor_any(src, e))?;
        Ok(s)
    }

    fn anchor_any(&self, src: &str, e: Error) -> Error {
        let mut texts: Vec<&str> = Vec::new();
        match &self.algebra {
            AlgebraSpec::FilteredDim2 { q, a, b, c, .. } => texts.extend([q.as_str(), a, b, c]),
            AlgebraSpec::QuantumPlane { q } => texts.push(q),
            AlgebraSpec::Relations { relations, .. } => texts.extend(relations.iter().map(|s| s.as_str())),
            _ => {}
        }
        texts.extend(self.basis.iter().map(|d| d[1].as_str()));
        texts.extend(self.action.values().flat_map(|m| m.values().map(|s| s.as_str())));
        texts.extend(self.coaction.values().map(|s| s.as_str()));
        if let Some(fr) = &self.fixed_ring {
            texts.extend(fr.generators.iter().map(|d| d[1].as_str()));
            texts.extend(fr.relations.iter().map(|s| s.as_str()));
        }
        if let Error::Parse { .. } = e {
            for t in texts {
                if expr::parse(t).is_err() {
                    return anchor(src, t, e);
                }
            }
        }
        e
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario serializes")
    }

    fn original_relations(&self) -> Result<(Vec<String>, Vec<FreeElement>)> {
        match &self.algebra {
            AlgebraSpec::Relations { generators, relations } => {
                let rels = relations
                    .iter()
                    .map(|r| FreeElement::parse(generators, r))
                    .collect::<Result<Vec<_>>>()?;
                Ok((generators.clone(), rels))
            }
            _ => {
                let p = self.build_algebra()?;
                Ok((p.generators().to_vec(), p.relations()))
            }
        }
    }

    fn build_algebra(&self) -> Result<Arc<PbwPresentation>> {
        match &self.algebra {
            AlgebraSpec::FilteredDim2 { q, lambda, a, b, c } => {
                pbw::filtered_dim2(scalar(q)?, *lambda, scalar(a)?, scalar(b)?, scalar(c)?)
            }
            AlgebraSpec::Weyl { n } => pbw::weyl(*n),
            AlgebraSpec::QuantumPlane { q } => pbw::quantum_plane(scalar(q)?),
            AlgebraSpec::JordanPlane => pbw::jordan_plane(),
            AlgebraSpec::Polynomial { generators } => pbw::polynomial_ring(generators),
            AlgebraSpec::Relations { generators, .. } => {
                let (_, rels) = self.original_relations()?;
                PbwPresentation::from_relations(&self.name, generators.clone(), &rels)
            }
        }
    }

    /// Builds every object the scenario names.
    pub fn build(&self) -> Result<Built> {
        // relations given in a non-straightening basis only need to straighten after the change
        let (original_names, change, algebra) = if self.basis.is_empty() {
            let p = self.build_algebra()?;
            (p.generators().to_vec(), None, p)
        } else {
            let (old, rels) = self.original_relations()?;
            let defs: Vec<(String, String)> = self.basis.iter().map(|[a, b]| (a.clone(), b.clone())).collect();
            let subst = AffineSubstitution::parse(&old, &defs)?;
            let bc = pbw::change_basis_free(&self.name, &old, &rels, &subst)?;
            let p = bc.presentation.clone();
            (old, Some(bc), p)
        };
        let hopf = build_hopf(&self.hopf)?;
        let bindings: Vec<(String, Vec<(String, String)>)> = self
            .action
            .iter()
            .map(|(k, m)| (k.clone(), m.iter().map(|(a, b)| (a.clone(), b.clone())).collect()))
            .collect();
        let rho: Vec<(String, String)> = self.coaction.iter().map(|(a, b)| (a.clone(), b.clone())).collect();
        let (action, coaction) = if !rho.is_empty() {
            let c = match &change {
                Some(bc) => CoactionSpec::parse_via(hopf, bc, &rho)?,
                None => CoactionSpec::parse(hopf, algebra.clone(), &rho)?,
            };
            (c.dualize(), Some(c))
        } else {
            let a = match &change {
                Some(bc) => ActionSpec::parse_via(hopf, bc, &bindings)?,
                None => ActionSpec::parse(hopf, algebra.clone(), &bindings)?,
            };
            (a, None)
        };
        Ok(Built {
            original_names,
            change,
            algebra,
            action,
            coaction,
        })
    }
}

pub fn build_hopf(h: &HopfSpec) -> Result<Arc<HopfAlgebra>> {
    match h {
        HopfSpec::Cyclic { order } => hopf::cyclic(*order),
        HopfSpec::Dihedral { n } => hopf::dihedral(*n),
        HopfSpec::Sweedler4 => Ok(hopf::sweedler4()),
        HopfSpec::KacPalyutkin8 => Ok(hopf::kac_palyutkin8()),
        HopfSpec::Dual { of } => Ok(hopf::dual(&build_hopf(of)?)),
    }
}

/// The objects of a scenario. `action` is always present; for a coaction it is the dual action.
#[derive(Clone, Debug)]
pub struct Built {
    /// Generator names the bindings and fixed-ring definitions are written in.
    pub original_names: Vec<String>,
    pub change: Option<BasisChange>,
    pub algebra: Arc<PbwPresentation>,
    pub action: ActionSpec,
    pub coaction: Option<CoactionSpec>,
}

impl Built {
    fn transport(&self, s: &str) -> Result<pbw::PbwElement> {
        let f = FreeElement::parse(&self.original_names, s)?;
        Ok(match &self.change {
            Some(bc) => bc.transport_free(&f),
            None => self.algebra.normal_form(&f),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Kv,
}

#[derive(Clone, Debug, Default)]
pub struct Section {
    pub name: String,
    pub items: Vec<(String, String)>,
    pub checks: Vec<(String, Verdict)>,
}

impl Section {
    pub fn new(name: &str) -> Self {
        Section {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn item(&mut self, k: &str, v: impl fmt::Display) {
        self.items.push((k.into(), v.to_string()));
    }

    pub fn check(&mut self, k: &str, v: Verdict) {
        self.checks.push((k.into(), v));
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub name: String,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.sections.iter().all(|s| s.checks.iter().all(|(_, v)| v.pass))
    }

    /// Flat (key, value) pairs, checks rendered as pass/fail.
    pub fn kv(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for s in &self.sections {
            for (k, v) in &s.items {
                out.push((format!("{}.{k}", s.name), v.clone()));
            }
            for (k, v) in &s.checks {
                out.push((format!("{}.{k}", s.name), if v.pass { "pass" } else { "fail" }.to_string()));
            }
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Kv => {
                out.push_str(&format!("scenario = {}\n", self.name));
                for (k, v) in self.kv() {
                    out.push_str(&format!("{k} = {}\n", v.replace('\n', "; ")));
                }
                out.push_str(&format!("result = {}\n", if self.passed() { "pass" } else { "fail" }));
            }
            Format::Text => {
                out.push_str(&format!("scenario {}\n", self.name));
                for s in &self.sections {
                    out.push_str(&format!("\n[{}]\n", s.name));
                    for (k, v) in &s.items {
                        out.push_str(&format!("  {k}: {v}\n"));
                    }
                    for (k, v) in &s.checks {
                        let tag = if v.pass { "PASS" } else { "FAIL" };
                        out.push_str(&format!("  {tag} {k}: {}\n", v.detail));
                    }
                }
                out.push_str(&format!("\n{}\n", if self.passed() { "all checks passed" } else { "some checks failed" }));
            }
        }
        out
    }
}

/// Degree bounds that override the scenario's own.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub degree: Option<usize>,
}

fn verify_section(b: &Built) -> Section {
    let mut s = Section::new("verify");
    match &b.coaction {
        Some(c) => {
            s.check("comodule_algebra", c.verify_comodule_algebra());
            s.item("inner_faithful", c.is_inner_faithful());
        }
        None => {
            s.check("module_algebra", b.action.verify_module_algebra());
            s.item("inner_faithful", b.action.is_inner_faithful());
        }
    }
    s.item("proper", b.action.is_proper().is_some());
    if let Ok(gr) = b.action.induced_gr_action() {
        s.item("gr_inner_faithful", gr.is_inner_faithful());
    }
    s
}

fn invariants_section(sc: &Scenario, b: &Built, n: usize) -> Result<Section> {
    let mut s = Section::new("invariants");
    let rep = fixed_ring_generators(&b.action, n);
    s.item("degree", n);
    s.item("dims", join(&rep.invariant_dims));
    let gens: Vec<String> = rep.generators.iter().map(|(g, _)| g.to_string()).collect();
    s.item("generators", gens.join(", "));
    let (a, g) = gr_comparison(&b.action, n)?;
    s.item("gr_of_invariants", join(&a));
    s.item("invariants_of_gr", join(&g));
    if let Some(fr) = &sc.fixed_ring {
        let named = fr
            .generators
            .iter()
            .map(|[name, def]| Ok((name.clone(), b.transport(def)?)))
            .collect::<Result<Vec<_>>>()?;
        let chk = verify_presentation(&b.action, &named, &fr.relations, n)?;
        for (r, v) in chk.relations {
            s.check(&format!("relation[{r}]"), v);
        }
        s.item("span_dims", join(&chk.span_dims));
        s.check("presentation", chk.verdict);
    }
    Ok(s)
}

fn hdet_section(b: &Built) -> Result<Section> {
    let mut s = Section::new("hdet");
    let rep = match &b.coaction {
        Some(c) => cohdet_dim2(c)?,
        None => hdet_dim2(&b.action)?,
    };
    s.item("kind", format!("{:?}", rep.kind).to_lowercase());
    s.item("value", &rep.detail);
    s.item("trivial", rep.trivial);
    Ok(s)
}

fn classify_section(b: &Built) -> Result<Section> {
    let mut s = Section::new("classify");
    let r = Dim2Relation::from_presentation(&b.algebra)?;
    let rep = canonicalize_relation(&r);
    s.item("relation", &rep.relation);
    s.item("gr", rep.pi_status);
    s.item("canonical_form", &rep.canonical_form);
    if !matches!(rep.canonical_form, CanonicalForm::Other(_)) {
        s.item("basis", rep.basis_witness.fmt_with(b.algebra.generators()).join(", "));
        s.check("witness", rep.witness_check.clone());
    }
    if b.action.hopf().group_table().is_some() {
        let m = match_cyclic_family(&b.action);
        match &m.family_case {
            Some(c) => {
                s.item("case", c.case);
                s.item("xi", &c.xi);
                s.item("m", c.m);
                s.item("diagonal_basis", c.basis.fmt_with(b.algebra.generators()).join(", "));
            }
            None => s.item("case", "none"),
        }
        for n in &m.notes {
            s.item("note", n);
        }
    }
    Ok(s)
}

fn galois_section(b: &Built, n: usize) -> Result<Section> {
    let mut s = Section::new("galois");
    let c = match &b.coaction {
        Some(c) => c.clone(),
        None => b.action.dualize(),
    };
    let rep = strongly_graded_check(&c, n)?;
    s.item("degree", n);
    s.item("group", rep.labels.join(", "));
    for (l, d) in rep.labels.iter().zip(&rep.component_dims) {
        s.item(&format!("dims[{l}]"), join(d));
    }
    for (l, r) in rep.labels.iter().zip(&rep.components) {
        let v = match r {
            ComponentResult::Witness(w) => w.format(&b.algebra),
            ComponentResult::NotFound(n) => format!("not found at bound {n}"),
            ComponentResult::Excluded(why) => format!("excluded: {why}"),
        };
        s.item(&format!("witness[{l}]"), v);
    }
    s.item("strongly_graded", rep.strongly_graded.pass);
    s.item("unconditional", rep.unconditional || rep.strongly_graded.pass);
    s.item("galois", rep.strongly_graded.pass);
    Ok(s)
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Runs the requested analyses, in the order verify, invariants, hdet, classify, galois.
pub fn run(sc: &Scenario, opts: RunOptions) -> Result<Report> {
    let b = sc.build()?;
    let mut report = Report {
        name: sc.name.clone(),
        sections: Vec::new(),
    };
    let rank = |a: &Analysis| match a {
        Analysis::Verify => 0,
        Analysis::Invariants(_) => 1,
        Analysis::Hdet => 2,
        Analysis::Classify => 3,
        Analysis::Galois(_) => 4,
    };
    let mut todo = sc.analyses.clone();
    todo.sort_by_key(rank);
    todo.dedup_by_key(|a| rank(a));
    for a in todo {
        let section = match a {
            Analysis::Verify => verify_section(&b),
            Analysis::Invariants(d) => invariants_section(sc, &b, opts.degree.or(d).unwrap_or(DEFAULT_INVARIANT_DEGREE))?,
            Analysis::Hdet => hdet_section(&b)?,
            Analysis::Classify => classify_section(&b)?,
            Analysis::Galois(d) => galois_section(&b, opts.degree.or(d).unwrap_or(DEFAULT_GALOIS_DEGREE))?,
        };
        report.sections.push(section);
    }
    if !sc.expect.is_empty() {
        let got: BTreeMap<String, String> = report.kv().into_iter().collect();
        let mut s = Section::new("expect");
        for (k, want) in &sc.expect {
            let v = match got.get(k) {
                Some(v) if v == want => Verdict::pass(format!("{k} = {v}")),
                Some(v) => Verdict::fail(format!("{k} = {v}, expected {want}")),
                None => Verdict::fail(format!("{k} was not reported")),
            };
            s.check(k, v);
        }
        report.sections.push(s);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SHIFT: &str = r#"
name = "shift-c3"
analyses = ["verify", "invariants 6", "hdet", "classify"]

[expect]
"hdet.trivial" = "false"
"classify.case" = "b"

[algebra]
builder = "filtered_dim2"
q = "1"
b = "-1"

[hopf]
constructor = "cyclic"
order = 3

[action.g]
u = "u"
v = "zeta3*v"

[fixed_ring]
generators = [["u", "u"], ["w", "v^3"]]
relations = ["w*u - (u + 3)*w"]
"#;

    #[test]
    fn round_trip() {
        let s = Scenario::parse(SHIFT).unwrap();
        let printed = s.to_toml();
        assert_eq!(Scenario::parse(&printed).unwrap(), s);
        let a: Analysis = "galois 4".parse().unwrap();
        assert_eq!(a.to_string(), "galois 4");
        assert!("hdet 3".parse::<Analysis>().is_err());
    }

    #[test]
    fn shift_scenario_runs() {
        let s = Scenario::parse(SHIFT).unwrap();
        let r = run(&s, RunOptions::default()).unwrap();
        assert!(r.passed(), "{}", r.render(Format::Text));
        let kv: BTreeMap<String, String> = r.kv().into_iter().collect();
        assert_eq!(kv["invariants.generators"], "u, v^3");
        assert_eq!(kv["verify.proper"], "true");
        assert_eq!(r.render(Format::Kv), run(&s, RunOptions::default()).unwrap().render(Format::Kv));
    }

    #[test]
    fn empty_analyses() {
        let src = SHIFT.replace(r#"analyses = ["verify", "invariants 6", "hdet", "classify"]"#, "")
            .replace("\"hdet.trivial\" = \"false\"\n\"classify.case\" = \"b\"\n", "");
        let s = Scenario::parse(&src).unwrap();
        let r = run(&s, RunOptions::default()).unwrap();
        assert!(r.sections.is_empty() && r.passed());
    }

    #[test]
    fn errors_carry_lines() {
        let bad = SHIFT.replace("zeta3*v", "zeta3*)v");
        match Scenario::parse(&bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 20),
            other => panic!("{other:?}"),
        }
        match Scenario::parse("name = 3\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
        let wrong = SHIFT.replace("\"hdet.trivial\" = \"false\"", "\"hdet.trivial\" = \"true\"");
        let r = run(&Scenario::parse(&wrong).unwrap(), RunOptions::default()).unwrap();
        assert!(!r.passed());
    }
}
