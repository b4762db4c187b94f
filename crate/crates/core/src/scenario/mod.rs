//! JSON scenarios: parsing, reference resolution, pipelines and the
//! bundled verification matrix.

mod matrix;
mod run;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cohomology::{ClassTermJson, CurveFactor, GradedClass, ProductSpace};
use crate::error::{Error, Result};
use crate::gaussian::{format_rational, parse_rational, Rational};
use crate::group::{scenario_builder, CurveAut, GroupKind, NamedGenerator, ProductGroupElement};

pub use matrix::{bundled, emit_verification_matrix, MatrixRow, VerificationMatrix, BUNDLED};
pub use run::{run_scenario, Report, StepReport, StepStatus, StepTiming};

/// An exact rational written as a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub Rational);

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map(Rat).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSpec {
    pub name: String,
    pub genus: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iso_class: Option<String>,
}

/// Either an explicit factor list or `{"elliptic": n}` (one isomorphism
/// class unless `distinct`).
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum SpaceSpec {
    Factors(Vec<FactorSpec>),
    Elliptic {
        elliptic: usize,
        #[serde(default)]
        name: Option<String>,
        #[serde(default)]
        distinct: bool,
    },
}

impl SpaceSpec {
    pub fn build(&self) -> ProductSpace {
        match self {
            SpaceSpec::Factors(fs) => ProductSpace::new(
                fs.iter()
                    .map(|f| {
                        let c = CurveFactor::new(f.name.clone(), f.genus);
                        match &f.iso_class {
                            Some(k) => c.with_iso_class(k.clone()),
                            None => c,
                        }
                    })
                    .collect(),
            ),
            SpaceSpec::Elliptic { elliptic, name, distinct } => {
                let name = name.as_deref().unwrap_or("E");
                if *distinct {
                    ProductSpace::new(
                        (1..=*elliptic)
                            .map(|i| CurveFactor::elliptic(format!("{name}{i}")))
                            .collect(),
                    )
                } else {
                    ProductSpace::elliptic_power(*elliptic, name)
                }
            }
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum AutSpec {
    Named(String),
    Matrix(Vec<Vec<i64>>),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub perm: Vec<usize>,
    pub auts: Vec<AutSpec>,
    #[serde(default)]
    pub note: Option<String>,
}

/// A builder (`kummer`, `enriques`, `bielliptic`, `cynk-hulek`) or explicit
/// generators on a declared space.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default)]
    pub builder: Option<String>,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub order: Option<u32>,
    #[serde(default)]
    pub space: Option<String>,
    #[serde(default)]
    pub generators: Option<Vec<GeneratorSpec>>,
    #[serde(default)]
    pub bound: Option<usize>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct LiuSpec {
    #[serde(default)]
    pub s: Option<Rat>,
    #[serde(default)]
    pub t: Option<Rat>,
    #[serde(default)]
    pub beta: Option<Rat>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ChargeSpec {
    pub w: Rat,
    pub b: Rat,
    #[serde(default)]
    pub liu: Option<LiuSpec>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct NamedClassSpec {
    pub name: String,
    pub terms: Vec<ClassTermJson>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ClassSetSpec {
    pub space: String,
    pub classes: Vec<NamedClassSpec>,
}

/// One pipeline step.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "step", rename_all = "snake_case", deny_unknown_fields)]
pub enum Step {
    /// Liu extension of `Z_k^{w,b}` against `Z_{k+1}^{w,b}`.
    Induction {
        #[serde(default)]
        space: Option<String>,
        #[serde(default)]
        ks: Option<Vec<usize>>,
        #[serde(default)]
        samples: Option<Vec<(Rat, Rat)>>,
    },
    /// `Z_k^{w,b}(pt) = −1`.
    Skyscraper {
        max_k: usize,
        #[serde(default)]
        samples: Option<Vec<(Rat, Rat)>>,
    },
    CloseGroup {
        #[serde(default)]
        expect_order: Option<usize>,
    },
    Invariance {
        #[serde(default)]
        ns: Option<Vec<usize>>,
        /// Overrides the builder's order (bielliptic) or `m` (cynk-hulek).
        #[serde(default)]
        order: Option<u32>,
        #[serde(default)]
        samples: Option<Vec<(Rat, Rat)>>,
    },
    Descend {
        #[serde(default)]
        basis: Option<String>,
        #[serde(default)]
        expect_rank: Option<usize>,
    },
    Restrict {
        space: String,
        /// 1-based factor indices collapsed to a point.
        collapsed: Vec<usize>,
        #[serde(default)]
        working: Option<String>,
        #[serde(default)]
        saturate: bool,
        #[serde(default)]
        expect_rank: Option<usize>,
    },
    /// Liu charge on `E^{k+1}` against its base on `E^k` along `E^k × {pt}`.
    Compatibility { ks: Vec<usize> },
    Euler { collapsed_max: usize },
    ReducedReduction { collapsed_max: usize },
    Support {
        basis: String,
        classes: Vec<Vec<i64>>,
        #[serde(default)]
        expect: Option<String>,
    },
    Lift {
        set: String,
        class: String,
        working: String,
        #[serde(default = "yes")]
        expect: bool,
    },
    ChTower { m: u32, depth: usize },
    Clusters {},
}

/// `kind` with its order parameter replaced.
pub fn with_order(kind: GroupKind, order: u32) -> Result<GroupKind> {
    match kind {
        GroupKind::Bielliptic { .. } => Ok(GroupKind::Bielliptic { order }),
        GroupKind::CynkHulek { .. } => Ok(GroupKind::CynkHulek { m: order }),
        other => Err(Error::Group(format!("{} has no order parameter", other.name()))),
    }
}

fn yes() -> bool {
    true
}

impl Step {
    pub fn name(&self) -> &'static str {
        match self {
            Step::Induction { .. } => "induction",
            Step::Skyscraper { .. } => "skyscraper",
            Step::CloseGroup { .. } => "close_group",
            Step::Invariance { .. } => "invariance",
            Step::Descend { .. } => "descend",
            Step::Restrict { .. } => "restrict",
            Step::Compatibility { .. } => "compatibility",
            Step::Euler { .. } => "euler",
            Step::ReducedReduction { .. } => "reduced_reduction",
            Step::Support { .. } => "support",
            Step::Lift { .. } => "lift",
            Step::ChTower { .. } => "ch_tower",
            Step::Clusters {} => "clusters",
        }
    }

    /// The statement a passing step certifies.
    pub fn anchor(&self) -> &'static str {
        match self {
            Step::Induction { .. } => "curve-product induction: Liu extension of Z_k equals Z_{k+1}",
            Step::Skyscraper { .. } => "skyscrapers are stable of phase 1",
            Step::CloseGroup { .. } => "group scenario closes under the bound",
            Step::Invariance { .. } => "charge is invariant under the group",
            Step::Descend { .. } => "induced charge on the invariant lattice",
            Step::Restrict { .. } => "restriction Z_0 = Z ∘ [i_*] with Λ_0 the image lattice",
            Step::Compatibility { .. } => "extended charge restricts to the base charge on fibers",
            Step::Euler { .. } => "i^* i_* F has the class of ⊕ C(n,k) F[k]",
            Step::ReducedReduction { .. } => "[i_* p_* E] = [E] for fiber-supported E",
            Step::Support { .. } => "support property constant on the declared classes",
            Step::Lift { .. } => "lift criterion ch(L) = 1",
            Step::ChTower { .. } => "crepant resolution tower: SL and BKR dimension conditions",
            Step::Clusters {} => "invariant Z/3-clusters: P, Q and the planar junction",
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub title: Option<String>,
    #[serde(default)]
    pub tag: Option<String>,
    #[serde(default)]
    pub description: Option<String>,
    #[serde(default)]
    pub spaces: BTreeMap<String, SpaceSpec>,
    #[serde(default)]
    pub group: Option<GroupSpec>,
    #[serde(default)]
    pub charge: Option<ChargeSpec>,
    #[serde(default)]
    pub classes: BTreeMap<String, ClassSetSpec>,
    #[serde(default)]
    pub gram: Option<Vec<Vec<Rat>>>,
    pub pipeline: Vec<Step>,
}

impl Scenario {
    /// Parses JSON; syntax and schema errors carry `origin:line:column`.
    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Scenario {
            path: format!("{origin}:{}:{}", e.line(), e.column()),
            message: e.to_string(),
        })
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Scenario {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_json(&text, &path.display().to_string())
    }
}

/// A group with its space and generators.
#[derive(Clone, Debug)]
pub struct ResolvedGroup {
    pub kind: Option<GroupKind>,
    pub space: Arc<ProductSpace>,
    pub generators: Vec<NamedGenerator>,
    pub expected_order: Option<usize>,
    pub bound: usize,
}

impl ResolvedGroup {
    pub fn elements(&self) -> Vec<ProductGroupElement> {
        self.generators.iter().map(|g| g.element.clone()).collect()
    }
}

/// Scenario with every reference resolved.
#[derive(Clone, Debug)]
pub struct Context {
    pub spaces: BTreeMap<String, Arc<ProductSpace>>,
    pub group: Option<ResolvedGroup>,
    pub w: Rational,
    pub b: Rational,
    pub liu: Option<(Option<Rational>, Option<Rational>, Option<Rational>)>,
    pub classes: BTreeMap<String, (Arc<ProductSpace>, Vec<(String, GradedClass)>)>,
    pub gram: Option<Vec<Vec<Rational>>>,
}

fn at(path: impl Into<String>, message: impl fmt::Display) -> Error {
    Error::Scenario {
        path: path.into(),
        message: message.to_string(),
    }
}

pub fn build_group(spec: &GroupSpec, spaces: &BTreeMap<String, Arc<ProductSpace>>, n_override: Option<usize>) -> Result<ResolvedGroup> {
    let bound = spec.bound.unwrap_or(1_000_000);
    if let Some(kind) = &spec.builder {
        if spec.generators.is_some() {
            return Err(at("group", "give either a builder or explicit generators"));
        }
        let kind = GroupKind::parse(kind, spec.order).map_err(|e| at("group.builder", e))?;
        let n = n_override.or(spec.n).ok_or_else(|| at("group.n", "builder needs n"))?;
        let sc = scenario_builder(kind, n).map_err(|e| at("group", e))?;
        return Ok(ResolvedGroup {
            kind: Some(kind),
            expected_order: Some(sc.expected_order),
            space: sc.space,
            generators: sc.generators,
            bound: spec.bound.unwrap_or(sc.order_bound),
        });
    }
    let gens = spec
        .generators
        .as_ref()
        .ok_or_else(|| at("group", "group needs a builder or generators"))?;
    let name = spec.space.as_ref().ok_or_else(|| at("group.space", "explicit generators need a space"))?;
    let space = spaces
        .get(name)
        .ok_or_else(|| at("group.space", format!("unknown space {name:?}")))?
        .clone();
    let mut out = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let p = format!("group.generators[{i}]");
        if g.auts.len() != space.dim() {
            return Err(at(&p, format!("{} automorphisms for {} factors", g.auts.len(), space.dim())));
        }
        let auts = g
            .auts
            .iter()
            .zip(&space.factors)
            .enumerate()
            .map(|(j, (a, f))| match a {
                AutSpec::Named(s) => CurveAut::named(s, f.genus),
                AutSpec::Matrix(m) => CurveAut::new(format!("m{}", j + 1), m.clone()),
            }
            .map_err(|e| at(format!("{p}.auts[{j}]"), e)))
            .collect::<Result<Vec<_>>>()?;
        let element = ProductGroupElement::new(&space, g.perm.clone(), auts).map_err(|e| at(&p, e))?;
        out.push(NamedGenerator {
            name: g.name.clone().unwrap_or_else(|| format!("g{}", i + 1)),
            element,
            note: g.note.clone(),
        });
    }
    Ok(ResolvedGroup {
        kind: None,
        space,
        generators: out,
        expected_order: None,
        bound,
    })
}

impl Scenario {
    /// Resolves every reference and type-checks the pipeline.
    pub fn resolve(&self) -> Result<Context> {
        let mut spaces = BTreeMap::new();
        for (name, s) in &self.spaces {
            let sp = s.build();
            if sp.dim() == 0 {
                return Err(at(format!("spaces.{name}"), "empty product"));
            }
            spaces.insert(name.clone(), sp.shared());
        }
        let group = self.group.as_ref().map(|g| build_group(g, &spaces, None)).transpose()?;
        let (w, b, liu) = match &self.charge {
            Some(c) => (
                c.w.0.clone(),
                c.b.0.clone(),
                c.liu
                    .as_ref()
                    .map(|l| (l.s.clone().map(|r| r.0), l.t.clone().map(|r| r.0), l.beta.clone().map(|r| r.0))),
            ),
            None => (Rational::from_integer(1.into()), Rational::from_integer(0.into()), None),
        };
        let mut classes = BTreeMap::new();
        for (name, set) in &self.classes {
            let space = spaces
                .get(&set.space)
                .ok_or_else(|| at(format!("classes.{name}.space"), format!("unknown space {:?}", set.space)))?
                .clone();
            let mut out = Vec::new();
            for (i, c) in set.classes.iter().enumerate() {
                let v = GradedClass::from_json(&space, &c.terms)
                    .map_err(|e| at(format!("classes.{name}.classes[{i}]"), e))?;
                out.push((c.name.clone(), v));
            }
            classes.insert(name.clone(), (space, out));
        }
        let gram = self
            .gram
            .as_ref()
            .map(|g| g.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect());
        let ctx = Context {
            spaces,
            group,
            w,
            b,
            liu,
            classes,
            gram,
        };
        for (i, step) in self.pipeline.iter().enumerate() {
            ctx.check_step(i, step)?;
        }
        Ok(ctx)
    }
}

impl Context {
    fn space(&self, path: &str, name: &str) -> Result<&Arc<ProductSpace>> {
        self.spaces
            .get(name)
            .ok_or_else(|| at(path, format!("unknown space {name:?}")))
    }

    fn set(&self, path: &str, name: &str) -> Result<&(Arc<ProductSpace>, Vec<(String, GradedClass)>)> {
        self.classes
            .get(name)
            .ok_or_else(|| at(path, format!("unknown class set {name:?}")))
    }

    fn need_group(&self, path: &str) -> Result<&ResolvedGroup> {
        self.group.as_ref().ok_or_else(|| at(path, "step needs a group"))
    }

    fn check_step(&self, i: usize, step: &Step) -> Result<()> {
        let p = |f: &str| format!("pipeline[{i}].{f}");
        match step {
            Step::Induction { space, ks, .. } => match (space, ks) {
                (Some(s), None) => {
                    let sp = self.space(&p("space"), s)?;
                    if let Some(f) = sp.factors.iter().find(|f| f.genus == 0) {
                        return Err(at(p("space"), format!("genus ≥ 1 required (factor {} has genus 0)", f.name)));
                    }
                    if sp.dim() < 2 {
                        return Err(at(p("space"), "induction needs at least two factors"));
                    }
                }
                (None, Some(_)) => {}
                _ => return Err(at(p("space"), "give exactly one of space and ks")),
            },
            Step::CloseGroup { .. } | Step::Descend { basis: None, .. } => {
                self.need_group(&p("step"))?;
            }
            Step::Invariance { ns, order, .. } => {
                let g = self.need_group(&p("step"))?;
                if (ns.is_some() || order.is_some()) && g.kind.is_none() {
                    return Err(at(p("ns"), "ns and order need a group builder"));
                }
                if let (Some(o), Some(kind)) = (order, g.kind) {
                    with_order(kind, *o).map_err(|e| at(p("order"), e))?;
                }
            }
            Step::Descend { basis: Some(b), .. } => {
                let g = self.need_group(&p("step"))?;
                let (sp, _) = self.set(&p("basis"), b)?;
                if sp.dim() != g.space.dim() {
                    return Err(at(p("basis"), "basis does not live on the group space"));
                }
            }
            Step::Restrict { space, collapsed, working, .. } => {
                let sp = self.space(&p("space"), space)?;
                if collapsed.iter().any(|&c| c == 0 || c > sp.dim()) {
                    return Err(at(p("collapsed"), "collapsed indices are 1-based factor positions"));
                }
                if let Some(wk) = working {
                    let (ws, _) = self.set(&p("working"), wk)?;
                    if ws.dim() + collapsed.len() != sp.dim() {
                        return Err(at(p("working"), "working lattice does not live on the fiber"));
                    }
                }
            }
            Step::Support { basis, classes, expect } => {
                let (_, set) = self.set(&p("basis"), basis)?;
                if let Some(c) = classes.iter().find(|c| c.len() != set.len()) {
                    return Err(at(p("classes"), format!("class {c:?} needs {} coordinates", set.len())));
                }
                if let Some(g) = &self.gram {
                    if g.len() != set.len() || g.iter().any(|r| r.len() != set.len()) {
                        return Err(at("gram", format!("gram must be {0}×{0}", set.len())));
                    }
                }
                if let Some(e) = expect {
                    if e != "infinite" {
                        parse_rational(e).map_err(|err| at(p("expect"), err))?;
                    }
                }
            }
            Step::Lift { set, class, working, .. } => {
                let (sp, items) = self.set(&p("set"), set)?;
                if !items.iter().any(|(n, _)| n == class) {
                    return Err(at(p("class"), format!("no class {class:?} in {set:?}")));
                }
                let (ws, _) = self.set(&p("working"), working)?;
                if ws != sp {
                    return Err(at(p("working"), "working lattice lives on another space"));
                }
            }
            Step::ChTower { m, depth } => {
                if *depth == 0 {
                    return Err(at(p("depth"), "depth must be at least 1"));
                }
                if !matches!(m, 2..=4) {
                    return Err(at(p("m"), format!("m must be 2 or 3, got {m}")));
                }
            }
            Step::Skyscraper { .. }
            | Step::Compatibility { .. }
            | Step::Euler { .. }
            | Step::ReducedReduction { .. }
            | Step::Clusters {} => {}
        }
        Ok(())
    }
}
