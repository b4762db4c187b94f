use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use serde_json::{json, Value};

use super::{Context, Scenario, Step};
use crate::charge::{
    compare_on_basis, exp_charge, extract_abcd, numerical_compatibility_check, verify_induction_identity, CentralCharge,
    LiuCharge,
};
use crate::cohomology::{CurveFactor, GradedClass, ProductSpace};
use crate::error::{Error, Result};
use crate::gaussian::{format_rational, int, rat, parse_rational, GaussianRational, Rational};
use crate::group::{charge_invariance_check, close_group, scenario_builder};
use crate::lattice::{
    descend_charge_to_quotient, effective_support_constant, even_point_lattice, identity_gram, lift_criterion_check,
    restrict_charge, DescentError, SupportConstant,
};
use crate::orbifold::{enumerate_z3_clusters, run_tower, TangentSignature};
use crate::riemann_roch::{euler_identity_check, reduced_reduction_check, FiberInclusionSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepStatus {
    Pass,
    Fail,
    Error,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepReport {
    pub index: usize,
    pub step: &'static str,
    pub anchor: &'static str,
    pub status: StepStatus,
    pub details: Value,
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepTiming {
    pub index: usize,
    pub step: &'static str,
    pub millis: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub scenario: String,
    pub title: Option<String>,
    pub tag: Option<String>,
    pub pass: bool,
    pub steps: Vec<StepReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<StepTiming>>,
}

impl Report {
    pub fn without_timings(mut self) -> Self {
        self.timings = None;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let title = self.title.as_deref().unwrap_or(&self.scenario);
        let _ = writeln!(out, "scenario {} ({title})", self.scenario);
        for s in &self.steps {
            let mark = match s.status {
                StepStatus::Pass => "PASS",
                StepStatus::Fail => "FAIL",
                StepStatus::Error => "ERROR",
                StepStatus::Skipped => "SKIP",
            };
            let _ = writeln!(out, "  [{mark:>5}] {:>2} {:<18} {}", s.index, s.step, s.anchor);
            if let Some(w) = &s.witness {
                let _ = writeln!(out, "          witness: {w}");
            }
            if s.status == StepStatus::Error {
                if let Some(m) = s.details.get("error") {
                    let _ = writeln!(out, "          error: {m}");
                }
            }
        }
        if let Some(t) = &self.timings {
            let total: f64 = t.iter().map(|x| x.millis).sum();
            let _ = writeln!(out, "  time {total:.1} ms");
        }
        let _ = writeln!(out, "{}", if self.pass { "ALL PASS" } else { "FAILED" });
        out
    }
}

struct Outcome {
    pass: bool,
    details: Value,
    witness: Option<Value>,
}

fn ok(pass: bool, details: Value, witness: Option<Value>) -> Result<Outcome> {
    Ok(Outcome { pass, details, witness })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn samples(given: &Option<Vec<(super::Rat, super::Rat)>>) -> Vec<(Rational, Rational)> {
    match given {
        Some(s) => s.iter().map(|(w, b)| (w.0.clone(), b.0.clone())).collect(),
        None => vec![(int(1), int(0)), (rat(1, 2), int(3)), (int(2), int(-1))],
    }
}

fn pair(w: &Rational, b: &Rational) -> Value {
    json!({"w": format_rational(w), "b": format_rational(b)})
}

/// Runs the pipeline in order, stopping at the first failing step.
pub fn run_scenario(scenario: &Scenario) -> Result<Report> {
    let ctx = scenario.resolve()?;
    let mut steps = Vec::new();
    let mut timings = Vec::new();
    let mut halted = false;
    for (index, step) in scenario.pipeline.iter().enumerate() {
        if halted {
            steps.push(StepReport {
                index,
                step: step.name(),
                anchor: step.anchor(),
                status: StepStatus::Skipped,
                details: Value::Null,
                witness: None,
            });
            continue;
        }
        let start = Instant::now();
        let (status, details, witness) = match run_step(&ctx, step) {
            Ok(o) if o.pass => (StepStatus::Pass, o.details, o.witness),
            Ok(o) => (StepStatus::Fail, o.details, o.witness),
            Err(e) => (StepStatus::Error, json!({"error": e.to_string()}), None),
        };
        timings.push(StepTiming {
            index,
            step: step.name(),
            millis: (start.elapsed().as_secs_f64() * 1e6).round() / 1e3,
        });
        halted = status != StepStatus::Pass;
        steps.push(StepReport {
            index,
            step: step.name(),
            anchor: step.anchor(),
            status,
            details,
            witness,
        });
    }
    Ok(Report {
        scenario: scenario.name.clone(),
        title: scenario.title.clone(),
        tag: scenario.tag.clone(),
        pass: steps.iter().all(|s| s.status == StepStatus::Pass),
        steps,
        timings: Some(timings),
    })
}

fn run_step(ctx: &Context, step: &Step) -> Result<Outcome> {
    match step {
        Step::Induction { space, ks, samples: s } => {
            let runs: Vec<(std::sync::Arc<ProductSpace>, Rational, Rational)> = match (space, ks) {
                (Some(name), _) => vec![(ctx.spaces[name].clone(), ctx.w.clone(), ctx.b.clone())],
                (None, Some(ks)) => ks
                    .iter()
                    .flat_map(|&k| {
                        let sp = ProductSpace::elliptic(k + 1).shared();
                        samples(s).into_iter().map(move |(w, b)| (sp.clone(), w, b))
                    })
                    .collect(),
                (None, None) => unreachable!("checked at resolve time"),
            };
            let mut rows = Vec::new();
            for (sp, w, b) in runs {
                let r = verify_induction_identity(&sp, &w, &b)?;
                let row = json!({
                    "k": r.k, "w": format_rational(&w), "b": format_rational(&b),
                    "beta_additive": format_rational(&r.beta_additive),
                    "beta_liu": format_rational(&r.beta_liu),
                    "checked": r.checked, "holds": r.holds,
                });
                if !r.holds {
                    return ok(false, json!({ "runs": rows }), Some(json!({"run": row, "monomial": to_value(&r.witness)})));
                }
                rows.push(row);
            }
            ok(true, json!({ "runs": rows }), None)
        }
        Step::Skyscraper { max_k, samples: s } => {
            let minus_one = GaussianRational::from_int(-1);
            let mut checked = 0;
            for k in 1..=*max_k {
                let sp = ProductSpace::elliptic(k).shared();
                for (w, b) in samples(s) {
                    let z = exp_charge(&sp, &w, &b)?.evaluate(&GradedClass::top(&sp))?;
                    checked += 1;
                    if z != minus_one {
                        return ok(
                            false,
                            json!({"checked": checked}),
                            Some(json!({"k": k, "sample": pair(&w, &b), "value": to_value(&z)})),
                        );
                    }
                }
            }
            ok(true, json!({"checked": checked, "value": "-1"}), None)
        }
        Step::CloseGroup { expect_order } => {
            let g = ctx.group.as_ref().expect("checked at resolve time");
            let elements = close_group(&g.space, &g.elements(), g.bound)?;
            let expected = expect_order.or(g.expected_order);
            let pass = expected.is_none_or(|e| e == elements.len());
            let details = json!({
                "kind": g.kind.map(|k| k.name()),
                "generators": g.generators.iter().map(|x| json!({"name": x.name, "note": x.note})).collect::<Vec<_>>(),
                "order": elements.len(),
                "expected": expected,
            });
            let witness = (!pass).then(|| json!({"order": elements.len(), "expected": expected}));
            ok(pass, details, witness)
        }
        Step::Invariance { ns, order, samples: s } => {
            let g = ctx.group.as_ref().expect("checked at resolve time");
            let mut groups = Vec::new();
            match ns {
                Some(ns) => {
                    let mut kind = g.kind.expect("checked at resolve time");
                    if let Some(o) = order {
                        kind = super::with_order(kind, *o)?;
                    }
                    for &n in ns {
                        let sc = scenario_builder(kind, n)?;
                        groups.push((kind.name(), n, sc.space.clone(), sc.elements()));
                    }
                }
                None => groups.push((g.kind.map_or_else(|| "explicit".into(), |k| k.name()), g.space.dim(), g.space.clone(), g.elements())),
            }
            let mut rows = Vec::new();
            for (group, n, space, gens) in groups {
                for (w, b) in samples(s) {
                    let charge = CentralCharge::Kernel(exp_charge(&space, &w, &b)?);
                    let r = charge_invariance_check(&charge, &gens, None)?;
                    let row = json!({"group": group, "n": n, "sample": pair(&w, &b), "generators": r.generators, "checked": r.checked});
                    if !r.holds {
                        return ok(false, json!({ "runs": rows }), Some(json!({"run": row, "witness": to_value(&r.witness)})));
                    }
                    rows.push(row);
                }
            }
            ok(true, json!({ "runs": rows }), None)
        }
        Step::Descend { basis, expect_rank } => {
            let g = ctx.group.as_ref().expect("checked at resolve time");
            let classes: Vec<GradedClass> = match basis {
                Some(name) => ctx.classes[name].1.iter().map(|(_, c)| c.clone()).collect(),
                None => even_point_lattice(&g.space).into_iter().map(|(_, c)| c).collect(),
            };
            let charge = CentralCharge::Kernel(exp_charge(&g.space, &ctx.w, &ctx.b)?);
            match descend_charge_to_quotient(&charge, &g.elements(), &classes) {
                Ok(d) => {
                    let rank = d.invariant.ncols();
                    let pass = expect_rank.is_none_or(|e| e == rank);
                    let details = json!({
                        "rank": rank,
                        "basis_size": classes.len(),
                        "invariant": to_value(&d.invariant),
                        "values": to_value(&d.values),
                    });
                    let witness = (!pass).then(|| json!({"rank": rank, "expected": expect_rank}));
                    ok(pass, details, witness)
                }
                Err(DescentError::NotInvariant(w)) => ok(false, json!({}), Some(to_value(&*w))),
                Err(DescentError::Other(e)) => Err(e),
            }
        }
        Step::Restrict {
            space,
            collapsed,
            working,
            saturate,
            expect_rank,
        } => {
            let sp = &ctx.spaces[space];
            let idx: Vec<usize> = collapsed.iter().map(|c| c - 1).collect();
            let spec = FiberInclusionSpec::new(sp, &idx)?;
            let working = match working {
                Some(name) => ctx.classes[name].1.clone(),
                None => even_point_lattice(&spec.base),
            };
            if let Some((_, v)) = working.first() {
                if v.space() != &spec.base {
                    return Err(Error::SpaceMismatch("working lattice does not live on the fiber".into()));
                }
            }
            let charge = CentralCharge::Kernel(exp_charge(sp, &ctx.w, &ctx.b)?);
            let r = restrict_charge(&charge, &spec, &working, *saturate)?;
            let base = exp_charge(&spec.base, &ctx.w, &ctx.b)?;
            let basis = spec.base.basis();
            let mismatch = compare_on_basis(&basis, &spec.base, |v| r.charge.evaluate(v), |v| base.evaluate(v))?;
            let rank = r.lambda0.rank();
            let rank_ok = expect_rank.is_none_or(|e| e == rank);
            let details = json!({
                "base": spec.base.factors.iter().map(|f| f.name.clone()).collect::<Vec<_>>(),
                "checked": basis.len(),
                "lambda0": to_value(&r.lambda0),
                "rank": rank,
            });
            let witness = match (&mismatch, rank_ok) {
                (Some(w), _) => Some(json!({"monomial": to_value(w)})),
                (None, false) => Some(json!({"rank": rank, "expected": expect_rank})),
                (None, true) => None,
            };
            ok(mismatch.is_none() && rank_ok, details, witness)
        }
        Step::Compatibility { ks } => {
            let mut rows = Vec::new();
            for &k in ks {
                let base = ProductSpace::elliptic(k).shared();
                let fiber = CurveFactor::elliptic(format!("E{}", k + 1));
                for (w, b) in samples(&None) {
                    let zk = exp_charge(&base, &w, &b)?;
                    let abcd = extract_abcd(&zk, &fiber)?;
                    let (s, t, beta) = match &ctx.liu {
                        Some((s, t, beta)) => (
                            s.clone().unwrap_or_else(|| w.clone()),
                            t.clone().unwrap_or_else(|| w.clone()),
                            beta.clone().unwrap_or_else(|| b.clone()),
                        ),
                        None => (w.clone(), w.clone(), b.clone()),
                    };
                    let liu = LiuCharge::new(abcd, s.clone(), t.clone(), beta.clone())?;
                    let spec = FiberInclusionSpec::new(liu.space(), &[k])?;
                    let ambient = CentralCharge::Liu(Box::new(liu));
                    let r = numerical_compatibility_check(&ambient, &CentralCharge::Kernel(zk), &spec)?;
                    let row = json!({
                        "k": k, "sample": pair(&w, &b),
                        "s": format_rational(&s), "t": format_rational(&t), "beta": format_rational(&beta),
                        "checked": r.checked,
                    });
                    if !r.holds {
                        return ok(false, json!({ "runs": rows }), Some(json!({"run": row, "witness": to_value(&r.witness)})));
                    }
                    rows.push(row);
                }
            }
            ok(true, json!({ "runs": rows }), None)
        }
        Step::Euler { collapsed_max } => {
            let mut rows = Vec::new();
            for c in 1..=*collapsed_max {
                let ambient = ProductSpace::elliptic(c + 1).shared();
                let idx: Vec<usize> = (1..=c).collect();
                let spec = FiberInclusionSpec::new(&ambient, &idx)?;
                for m in spec.base.basis() {
                    let v = GradedClass::monomial(&spec.base, m.clone(), GaussianRational::one());
                    let e = euler_identity_check(&v, &spec)?;
                    if !e.holds {
                        return ok(
                            false,
                            json!({ "runs": rows }),
                            Some(json!({"collapsed": c, "class": m.to_string(), "lhs": e.pullback_of_pushforward.to_string(), "rhs": e.alternating_sum.to_string()})),
                        );
                    }
                }
                rows.push(json!({"collapsed": c, "checked": spec.base.basis().len()}));
            }
            ok(true, json!({ "runs": rows }), None)
        }
        Step::ReducedReduction { collapsed_max } => {
            let mut rows = Vec::new();
            for c in 1..=*collapsed_max {
                let ambient = ProductSpace::elliptic(c + 1).shared();
                let idx: Vec<usize> = (1..=c).collect();
                let r = reduced_reduction_check(&FiberInclusionSpec::new(&ambient, &idx)?)?;
                if !r.holds {
                    let w = r.witness.map(|m| m.to_string());
                    return ok(false, json!({ "runs": rows }), Some(json!({"collapsed": c, "class": w})));
                }
                rows.push(json!({"collapsed": c, "checked": r.checked}));
            }
            ok(true, json!({ "runs": rows }), None)
        }
        Step::Support { basis, classes, expect } => {
            let (space, set) = &ctx.classes[basis];
            let lattice: Vec<GradedClass> = set.iter().map(|(_, c)| c.clone()).collect();
            let gram = ctx.gram.clone().unwrap_or_else(|| identity_gram(lattice.len()));
            let charge = CentralCharge::Kernel(exp_charge(space, &ctx.w, &ctx.b)?);
            let coords: Vec<Vec<BigInt>> = classes.iter().map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let r = effective_support_constant(&charge, &lattice, &gram, &coords)?;
            let pass = match (expect.as_deref(), &r.c_squared) {
                (Some("infinite"), c) => *c == SupportConstant::Infinite,
                (Some(e), SupportConstant::Finite(c)) => parse_rational(e)? == *c,
                (Some(_), SupportConstant::Infinite) => false,
                (None, c) => *c != SupportConstant::Infinite,
            };
            let details = json!({
                "basis": set.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>(),
                "report": to_value(&r),
                "expected": expect,
            });
            let witness = (!pass).then(|| json!({"c_squared": to_value(&r.c_squared), "class": r.witness}));
            ok(pass, details, witness)
        }
        Step::Lift {
            set,
            class,
            working,
            expect,
        } => {
            let ch = &ctx.classes[set].1.iter().find(|(n, _)| n == class).expect("checked at resolve time").1;
            let work: Vec<GradedClass> = ctx.classes[working].1.iter().map(|(_, c)| c.clone()).collect();
            let r = lift_criterion_check(ch, &work)?;
            let pass = r.twist_is_identity == *expect;
            let witness = (!pass).then(|| json!({"class": class, "ch": ch.to_string()}));
            ok(pass, to_value(&r), witness)
        }
        Step::ChTower { m, depth } => {
            let t = run_tower(*m, *depth)?;
            let failing = t.audits.iter().find(|a| !a.pass).map(|a| {
                json!({"from": a.from, "to": a.to, "bkr": to_value(&a.bkr),
                       "claims": a.claims.iter().filter(|c| !c.agree).map(to_value).collect::<Vec<_>>()})
            });
            let witness = match (failing, t.equality) {
                (Some(f), _) => Some(f),
                (None, Some(false)) => Some(json!({"equality": false})),
                _ => None,
            };
            ok(t.pass, to_value(&t), witness)
        }
        Step::Clusters {} => {
            let sig = TangentSignature::new(3, [1, 2]);
            let sols = enumerate_z3_clusters(&sig)?;
            let names: Vec<&str> = sols.iter().map(|s| s.name.as_str()).collect();
            let planar_regular = sols
                .iter()
                .find(|s| s.name == "planar")
                .is_some_and(|s| s.quotient_characters.as_deref() == Some(&[0, 1, 2]));
            let pass = names == ["P", "Q", "planar"] && planar_regular;
            let witness = (!pass).then(|| json!({ "names": names }));
            ok(pass, json!({"signature": to_value(&sig), "solutions": to_value(&sols)}), witness)
        }
    }
}
