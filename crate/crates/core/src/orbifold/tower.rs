use std::collections::BTreeMap;

use serde::Serialize;

use super::{classify_clusters, sl_condition, ChartFamily, ClusterFamily, StageState, Stratum, TangentSignature};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BkrBound {
    pub computed: usize,
    pub bound: usize,
    pub pass: bool,
}

/// `computed = max(n, dim + 2·fiber_dim)` against `bound = n + 1`.
pub fn bkr_dimension_bound(n: usize, strata: &[(usize, usize)]) -> BkrBound {
    let computed = strata.iter().map(|&(d, f)| d + 2 * f).fold(n, usize::max);
    BkrBound {
        computed,
        bound: n + 1,
        pass: computed <= n + 1,
    }
}

/// Fixed component `S × C^fix` of the even action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvenStratumAudit {
    pub source: Vec<String>,
    pub dim: usize,
    pub signature: TangentSignature,
    pub sl: bool,
    pub clusters: ClusterFamily,
}

/// One family of odd-fixed loci on the next stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyRecord {
    pub label: String,
    pub origin: String,
    pub dim: usize,
    pub signature: TangentSignature,
    /// The odd-action signature is computed here, not stated as a formula
    /// in the source (the `m = 2` tower).
    pub derived: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimComparison {
    pub chart: &'static str,
    pub claimed: &'static str,
    pub computed: String,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageAudit {
    pub from: usize,
    pub to: usize,
    pub even_strata: Vec<EvenStratumAudit>,
    pub bkr: BkrBound,
    pub families: Vec<FamilyRecord>,
    pub claims: Vec<ClaimComparison>,
    pub pass: bool,
}

/// Stated action and its nontrivial exponents; the trivial block may be empty.
fn claimed(f: ChartFamily) -> Option<(&'static str, &'static [u32])> {
    match f {
        ChartFamily::PInf | ChartFamily::QInf | ChartFamily::R0w => Some(("diag(1,…,1,ζ)", &[1])),
        ChartFamily::P0 | ChartFamily::RInf => Some(("diag(1,…,1,ζ²,ζ²)", &[2, 2])),
        ChartFamily::D0 | ChartFamily::D1 => None,
    }
}

fn inverse_mod(a: u32, m: u32) -> Result<u32> {
    (1..m)
        .find(|&j| (a * j) % m == 1)
        .ok_or_else(|| Error::Domain(format!("{a} is not invertible mod {m}")))
}

/// One step of the recursion `X_k → X_{k+1}` with its audit.
pub fn step(state: &StageState) -> Result<(StageState, StageAudit)> {
    state.validate()?;
    let m = state.m;
    let k = state.n;
    let n1 = k + 1;
    let e_curve = m - 1;
    let mult = (m - inverse_mod(e_curve, m)?) % m;

    let mut even_strata = Vec::new();
    let mut families = vec![FamilyRecord {
        label: "B1°".into(),
        origin: "X × C^fix".into(),
        dim: k,
        signature: TangentSignature::padded(m, n1, &[1])?,
        derived: m == 2,
    }];
    let mut claims = Vec::new();
    for s in &state.strata {
        let sig = TangentSignature::new(m, s.signature.exponents.iter().copied().chain([e_curve]));
        let sl = sl_condition(&sig);
        if !sl {
            return Err(Error::Audit(format!("stratum {:?} × C^fix violates the SL condition: {sig}", s.labels)));
        }
        let clusters = classify_clusters(&sig)?;

        let moved = TangentSignature::new(m, s.signature.exponents.iter().map(|e| e * mult).chain([0]));
        families.push(FamilyRecord {
            label: format!("B{}°", moved.codim()),
            origin: format!("{} × C", s.kind()),
            dim: s.dim + 1,
            signature: moved,
            derived: m == 2,
        });
        for p in &clusters.points {
            let weight_zero = p.action.parameters.iter().filter(|(_, w)| *w == 0).count();
            families.push(FamilyRecord {
                label: p.label.into(),
                origin: format!("{} over {} × C^fix", p.name, s.kind()),
                dim: s.dim + weight_zero,
                signature: p.action.induced.clone(),
                derived: m == 2,
            });
            if let Some((c, exps)) = claimed(p.family) {
                claims.push(ClaimComparison {
                    chart: p.name,
                    claimed: c,
                    computed: p.action.induced.diag_string(),
                    agree: p.action.induced.nonzero() == exps,
                });
            }
        }
        even_strata.push(EvenStratumAudit {
            source: s.labels.clone(),
            dim: s.dim,
            signature: sig,
            sl,
            clusters,
        });
    }

    for f in &families {
        let codim = f.signature.codim();
        if f.dim + codim != n1 {
            return Err(Error::Audit(format!(
                "family {} ({}) has dimension {} but codimension {codim} in dimension {n1}",
                f.label, f.origin, f.dim
            )));
        }
        if !f.label.starts_with(&format!("B{codim}")) {
            return Err(Error::Audit(format!(
                "family {} ({}) has codimension {codim}",
                f.label, f.origin
            )));
        }
    }

    let mut merged: BTreeMap<TangentSignature, Stratum> = BTreeMap::new();
    for f in &families {
        let e = merged.entry(f.signature.clone()).or_insert_with(|| Stratum {
            labels: Vec::new(),
            dim: n1 - f.signature.codim(),
            signature: f.signature.clone(),
            points: None,
        });
        if !e.labels.contains(&f.label) {
            e.labels.push(f.label.clone());
        }
    }
    let strata: Vec<Stratum> = merged.into_values().collect();
    let next = StageState { n: n1, m, strata };
    next.validate()?;

    let bkr = bkr_dimension_bound(n1, &even_strata.iter().map(|e| (e.dim, e.clusters.fiber_dim)).collect::<Vec<_>>());
    let pass = bkr.pass && claims.iter().all(|c| c.agree);
    Ok((
        next,
        StageAudit {
            from: k,
            to: n1,
            even_strata,
            bkr,
            families,
            claims,
            pass,
        },
    ))
}

pub fn z2_step(state: &StageState) -> Result<(StageState, StageAudit)> {
    if state.m != 2 {
        return Err(Error::Domain(format!("z2_step on a state with m = {}", state.m)));
    }
    step(state)
}

pub fn z3_step(state: &StageState) -> Result<(StageState, StageAudit)> {
    if state.m != 3 {
        return Err(Error::Domain(format!("z3_step on a state with m = {}", state.m)));
    }
    step(state)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerReport {
    pub m: u32,
    pub depth: usize,
    pub stages: Vec<StageState>,
    pub audits: Vec<StageAudit>,
    /// For `m = 3`: the BKR count equals `k + 2` at every step from `k = 2`.
    pub equality: Option<bool>,
    pub pass: bool,
}

/// Runs the recursion from `X_1` up to `X_depth`.
pub fn run_tower(m: u32, depth: usize) -> Result<TowerReport> {
    let mut state = StageState::initial(m)?;
    if depth == 0 {
        return Err(Error::Domain("tower depth must be at least 1".into()));
    }
    let mut stages = vec![state.clone()];
    let mut audits = Vec::new();
    while state.n < depth {
        let (next, audit) = step(&state)?;
        audits.push(audit);
        stages.push(next.clone());
        state = next;
    }
    let equality = (m == 3).then(|| audits.iter().filter(|a| a.from >= 2).all(|a| a.bkr.computed == a.from + 2));
    let pass = audits.iter().all(|a| a.pass) && equality.unwrap_or(true);
    Ok(TowerReport {
        m,
        depth,
        stages,
        audits,
        equality,
        pass,
    })
}
