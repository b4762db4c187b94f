use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::TangentSignature;
use crate::error::{Error, Result};

/// Standard chart of the equivariant Hilbert scheme around an invariant
/// cluster.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ChartFamily {
    PInf,
    QInf,
    P0,
    R0w,
    RInf,
    D0,
    D1,
}

impl ChartFamily {
    pub const ALL: [ChartFamily; 7] = [Self::PInf, Self::QInf, Self::P0, Self::R0w, Self::RInf, Self::D0, Self::D1];

    pub fn name(self) -> &'static str {
        match self {
            Self::PInf => "P∞",
            Self::QInf => "Q∞",
            Self::P0 => "P0",
            Self::R0w => "R0,w",
            Self::RInf => "R∞",
            Self::D0 => "D0",
            Self::D1 => "D1",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "P" | "Pinf" | "P∞" => Ok(Self::PInf),
            "Q" | "Qinf" | "Q∞" => Ok(Self::QInf),
            "P0" | "Q0" => Ok(Self::P0),
            "R0w" | "R0,w" => Ok(Self::R0w),
            "Rinf" | "R∞" => Ok(Self::RInf),
            "D0" => Ok(Self::D0),
            "D1" => Ok(Self::D1),
            _ => Err(Error::Parse(format!("unknown chart family {s:?}"))),
        }
    }

    /// Provenance label of the fixed stratum through the invariant point.
    pub fn label(self) -> &'static str {
        match self {
            Self::PInf | Self::QInf | Self::D0 | Self::D1 => "B1′",
            Self::P0 => "B2†",
            Self::R0w => "B1″",
            Self::RInf => "B2′",
        }
    }

    /// `(m, nonzero part of the even signature)` the chart lives over.
    pub fn requirement(self) -> (u32, &'static [u32]) {
        match self {
            Self::PInf | Self::QInf | Self::P0 => (3, &[1, 2]),
            Self::R0w | Self::RInf => (3, &[2, 2, 2]),
            Self::D0 | Self::D1 => (2, &[1, 1]),
        }
    }
}

/// `monic − param_name · param_monomial`, exponent vectors over the chart
/// variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub monic: Vec<u32>,
    pub param: Option<(String, Vec<u32>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub family: ChartFamily,
    pub vars: usize,
    pub generators: Vec<Generator>,
}

fn mono(e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("")
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| match &g.param {
                None => mono(&g.monic),
                Some((p, e)) => format!("{} - {p}·{}", mono(&g.monic), mono(e)),
            })
            .collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl Chart {
    /// Rename `x_a ↔ x_b`.
    pub fn swap_vars(&self, a: usize, b: usize) -> Chart {
        let sw = |e: &Vec<u32>| {
            let mut e = e.clone();
            e.swap(a, b);
            e
        };
        Chart {
            family: self.family,
            vars: self.vars,
            generators: self
                .generators
                .iter()
                .map(|g| Generator {
                    monic: sw(&g.monic),
                    param: g.param.as_ref().map(|(p, e)| (p.clone(), sw(e))),
                })
                .collect(),
        }
    }
}

fn g(monic: &[u32], param: Option<(&str, &[u32])>) -> Generator {
    Generator {
        monic: monic.to_vec(),
        param: param.map(|(p, e)| (p.to_string(), e.to_vec())),
    }
}

/// The chart as a family of ideals; variables are named so that `x_i`
/// spans the `ζ^i`-eigenspace of the even action on the cotangent space
/// (ties: normal directions of the stratum first).
pub fn chart(family: ChartFamily) -> Chart {
    use ChartFamily::*;
    let (vars, generators) = match family {
        PInf => (2, vec![g(&[3, 0], Some(("δ", &[0, 0]))), g(&[0, 1], Some(("ε", &[2, 0])))]),
        QInf => (2, vec![g(&[0, 3], Some(("δ", &[0, 0]))), g(&[1, 0], Some(("ε", &[0, 2])))]),
        P0 => (
            2,
            vec![
                g(&[2, 0], Some(("ε1", &[0, 1]))),
                g(&[0, 2], Some(("ε2", &[1, 0]))),
                g(&[1, 1], None),
            ],
        ),
        R0w => (
            3,
            vec![
                g(&[0, 1, 0], Some(("w", &[1, 0, 0]))),
                g(&[0, 0, 1], Some(("ε", &[1, 0, 0]))),
                g(&[3, 0, 0], Some(("δ", &[0, 0, 0]))),
            ],
        ),
        RInf => (
            3,
            vec![
                g(&[1, 0, 0], Some(("ε1", &[0, 0, 1]))),
                g(&[0, 1, 0], Some(("ε2", &[0, 0, 1]))),
                g(&[0, 0, 3], Some(("δ", &[0, 0, 0]))),
            ],
        ),
        D0 => (2, vec![g(&[0, 1], Some(("ε", &[1, 0]))), g(&[2, 0], Some(("δ", &[0, 0])))]),
        D1 => (2, vec![g(&[1, 0], Some(("ε", &[0, 1]))), g(&[0, 2], Some(("δ", &[0, 0])))]),
    };
    Chart {
        family,
        vars,
        generators,
    }
}

/// A cotangent coordinate of the normal slice with its even and odd weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalCoordinate {
    pub name: String,
    pub even: u32,
    pub odd: u32,
    /// `"S"` for a normal direction of the stratum, `"C"` for the curve.
    pub role: &'static str,
}

/// Coordinates of the normal slice at a point of `S × C^fix`, read from the
/// even signature whose last entry is the curve direction.
pub fn local_coordinates(sig: &TangentSignature) -> Result<Vec<LocalCoordinate>> {
    let m = sig.m;
    let nz = sig.nonzero();
    let Some((&c, normal)) = nz.split_last() else {
        return Err(Error::Domain(format!("signature {sig} has no moving directions")));
    };
    if c != m - 1 {
        return Err(Error::Domain(format!(
            "signature {sig}: curve direction must carry exponent {}",
            m - 1
        )));
    }
    let mut coords: Vec<LocalCoordinate> = normal
        .iter()
        .map(|&e| LocalCoordinate {
            name: String::new(),
            even: (m - e) % m,
            odd: 0,
            role: "S",
        })
        .collect();
    coords.push(LocalCoordinate {
        name: String::new(),
        even: (m - c) % m,
        odd: m - 1,
        role: "C",
    });
    coords.sort_by_key(|x| x.even);
    for (i, x) in coords.iter_mut().enumerate() {
        x.name = format!("x{}", i + 1);
    }
    Ok(coords)
}

fn weight(e: &[u32], w: impl Fn(usize) -> u32) -> u32 {
    e.iter().enumerate().map(|(i, &k)| k * w(i)).sum()
}

/// Monomials of degree `≤ max_deg` outside the monomial ideal.
pub fn standard_monomials(monics: &[Vec<u32>], vars: usize, max_deg: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; vars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, monics: &[Vec<u32>], out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            if !monics.iter().any(|m| m.iter().zip(cur.iter()).all(|(a, b)| a <= b)) {
                out.push(cur.clone());
            }
            return;
        }
        for k in 0..=left {
            cur[i] = k;
            rec(i + 1, left - k, cur, monics, out);
        }
        cur[i] = 0;
    }
    rec(0, max_deg, &mut cur, monics, &mut out);
    out.sort_by_key(|e| (e.iter().sum::<u32>(), std::cmp::Reverse(e.clone())));
    out
}

/// Result of substituting the odd action into a chart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartAction {
    pub family: ChartFamily,
    pub chart: String,
    /// `(parameter, exponent)`: the parameter is scaled by `ζ^exponent`.
    pub parameters: Vec<(String, u32)>,
    /// Characters of the quotient at the central (monomial) ideal.
    pub characters: Vec<u32>,
    pub induced: TangentSignature,
}

/// Substitutes `x_i ↦ ζ^{odd_i} x_i`, renormalizes every generator to its
/// monic term and reads off the scaling of each parameter.
pub fn chart_action(chart: &Chart, coords: &[LocalCoordinate], m: u32, n: usize) -> Result<ChartAction> {
    if chart.vars != coords.len() {
        return Err(Error::Domain(format!(
            "chart {} has {} variables but the normal slice has {}",
            chart.family.name(),
            chart.vars,
            coords.len()
        )));
    }
    let even = |i: usize| coords[i].even;
    let odd = |i: usize| coords[i].odd;
    let monics: Vec<Vec<u32>> = chart.generators.iter().map(|g| g.monic.clone()).collect();
    if standard_monomials(&monics, chart.vars, m).iter().any(|e| e.iter().sum::<u32>() == m) {
        return Err(Error::Audit(format!("chart {chart}: central ideal does not have colength {m}")));
    }
    let standard = standard_monomials(&monics, chart.vars, m - 1);
    let mut characters: Vec<u32> = standard.iter().map(|e| weight(e, even) % m).collect();
    characters.sort_unstable();
    if characters != (0..m).collect::<Vec<_>>() {
        return Err(Error::Audit(format!(
            "chart {chart}: quotient characters {characters:?} are not the regular representation"
        )));
    }
    let mut parameters = Vec::new();
    for gen in &chart.generators {
        let Some((p, e)) = &gen.param else { continue };
        if weight(&gen.monic, even) % m != weight(e, even) % m {
            return Err(Error::Audit(format!("chart {chart}: generator with {p} is not homogeneous")));
        }
        let w = (weight(e, odd) + m * 8 - weight(&gen.monic, odd) % m) % m;
        parameters.push((p.clone(), w));
    }
    if parameters.len() != coords.len() {
        return Err(Error::Audit(format!(
            "chart {chart}: {} parameters for a {}-dimensional slice",
            parameters.len(),
            coords.len()
        )));
    }
    let nonzero: Vec<u32> = parameters.iter().map(|(_, w)| *w).filter(|&w| w != 0).collect();
    Ok(ChartAction {
        family: chart.family,
        chart: chart.to_string(),
        parameters,
        characters,
        induced: TangentSignature::padded(m, n, &nonzero)?,
    })
}

/// Induced signature of the odd generator on the tangent space of the
/// resolution at the invariant point of `family` over a point with even
/// signature `sig`.
pub fn parameter_action(family: ChartFamily, sig: &TangentSignature, m: u32) -> Result<TangentSignature> {
    let (need_m, need) = family.requirement();
    if sig.m != m || m != need_m || sig.nonzero() != need {
        return Err(Error::Domain(format!(
            "chart {} does not live over signature {sig} with m = {m}",
            family.name()
        )));
    }
    let coords = local_coordinates(sig)?;
    Ok(chart_action(&chart(family), &coords, m, sig.n())?.induced)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantPoint {
    pub family: ChartFamily,
    pub name: &'static str,
    pub label: &'static str,
    /// The invariant points form a line rather than a single point.
    pub one_parameter: bool,
    pub action: ChartAction,
}

/// Fiber of the crepant resolution over a point with the given even
/// signature, with its odd-invariant points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClusterFamily {
    pub signature: TangentSignature,
    pub fiber: &'static str,
    pub fiber_dim: usize,
    pub points: Vec<InvariantPoint>,
}

pub fn classify_clusters(sig: &TangentSignature) -> Result<ClusterFamily> {
    use ChartFamily::*;
    let (fiber, fiber_dim, families): (&'static str, usize, &[ChartFamily]) = match (sig.m, sig.nonzero().as_slice()) {
        (2, [1, 1]) => ("ℙ¹", 1, &[D0, D1]),
        (3, [1, 2]) => ("P ∪ Q", 1, &[PInf, QInf, P0]),
        (3, [2, 2, 2]) => ("ℙ²", 2, &[R0w, RInf]),
        _ => {
            return Err(Error::Unsupported(format!(
                "no cluster classification for signature {sig} with m = {}",
                sig.m
            )))
        }
    };
    let coords = local_coordinates(sig)?;
    let points = families
        .iter()
        .map(|&f| {
            Ok(InvariantPoint {
                family: f,
                name: f.name(),
                label: f.label(),
                one_parameter: f == R0w,
                action: chart_action(&chart(f), &coords, sig.m, sig.n())?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClusterFamily {
        signature: sig.clone(),
        fiber,
        fiber_dim,
        points,
    })
}

/// A family of invariant length-3 clusters: one chosen line per character
/// space of the truncated ring, or a free `ℙ¹` of lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClusterSolution {
    pub name: String,
    /// Generator choice per character; `None` for the free character.
    pub generators: BTreeMap<u32, Option<String>>,
    pub dimension: usize,
    /// Characters of the quotient (points only).
    pub quotient_characters: Option<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Case {
    /// First coordinate zero: the line is the second basis monomial.
    FirstZero,
    /// Second coordinate zero: the line is the first basis monomial.
    SecondZero,
    Free,
}

/// Invariant colength-3 ideals by linear algebra in `C[x1,x2]/(x1,x2)^3`.
pub fn enumerate_z3_clusters(sig: &TangentSignature) -> Result<Vec<ClusterSolution>> {
    match (sig.m, sig.nonzero().as_slice()) {
        (3, [2, 2, 2]) => {
            let c = classify_clusters(sig)?;
            return Ok(vec![ClusterSolution {
                name: format!("R ≅ {}", c.fiber),
                generators: BTreeMap::new(),
                dimension: c.fiber_dim,
                quotient_characters: None,
            }]);
        }
        (3, [1, 2]) => {}
        _ => {
            return Err(Error::Unsupported(format!("cluster enumeration for signature {sig}")));
        }
    }
    let coords = local_coordinates(sig)?;
    let w = [coords[0].even, coords[1].even];
    let m = 3u32;
    let basis = standard_monomials(&[], 2, 2);
    let char_of = |e: &[u32]| (e[0] * w[0] + e[1] * w[1]) % m;
    let mut spaces: BTreeMap<u32, Vec<Vec<u32>>> = BTreeMap::new();
    for e in &basis {
        spaces.entry(char_of(e)).or_default().push(e.clone());
    }
    if spaces.len() != 3 || spaces.values().any(|v| v.len() != 2) {
        return Err(Error::Audit("truncated ring does not split into 2-dimensional character spaces".into()));
    }

    // (χ, coordinate) atoms; each condition is a disjunction of two atoms.
    type Atom = (u32, usize);
    let mut conditions: Vec<(Atom, Atom)> = Vec::new();
    for (&chi, space) in &spaces {
        for v in 0..2 {
            let target = (chi + w[v]) % m;
            let images: Vec<(usize, Vec<u32>)> = space
                .iter()
                .enumerate()
                .filter_map(|(k, e)| {
                    let mut e = e.clone();
                    e[v] += 1;
                    (e.iter().sum::<u32>() <= 2).then_some((k, e))
                })
                .collect();
            match images.as_slice() {
                [] => {}
                [(k, img)] => {
                    let pos = spaces[&target].iter().position(|e| e == img).expect("graded");
                    conditions.push(((chi, *k), (target, 1 - pos)));
                }
                _ => {
                    return Err(Error::Audit(format!(
                        "multiplication by x{} on character {chi} has rank 2",
                        v + 1
                    )))
                }
            }
        }
    }

    let chars: Vec<u32> = spaces.keys().copied().collect();
    let holds = |cases: &[Case], (chi, k): Atom| {
        let c = cases[chars.iter().position(|&x| x == chi).unwrap()];
        matches!((c, k), (Case::FirstZero, 0) | (Case::SecondZero, 1))
    };
    let all = [Case::FirstZero, Case::SecondZero, Case::Free];
    let mut valid: Vec<Vec<Case>> = Vec::new();
    for a in all {
        for b in all {
            for c in all {
                let cases = vec![a, b, c];
                if conditions.iter().all(|&(x, y)| holds(&cases, x) || holds(&cases, y)) {
                    valid.push(cases);
                }
            }
        }
    }
    let describe = |cases: &[Case]| -> BTreeMap<u32, Option<String>> {
        chars
            .iter()
            .zip(cases)
            .map(|(&chi, c)| {
                let s = &spaces[&chi];
                let gen = match c {
                    Case::FirstZero => Some(mono(&s[1])),
                    Case::SecondZero => Some(mono(&s[0])),
                    Case::Free => None,
                };
                (chi, gen)
            })
            .collect()
    };
    let families: Vec<&Vec<Case>> = valid
        .iter()
        .filter(|c| c.iter().filter(|&&x| x == Case::Free).count() == 1)
        .collect();
    let contains = |fam: &[Case], pt: &[Case]| fam.iter().zip(pt).all(|(f, p)| *f == Case::Free || f == p);
    let mut out = Vec::new();
    for fam in &families {
        let free = chars[fam.iter().position(|&c| c == Case::Free).unwrap()];
        let name = match free {
            2 => "P",
            1 => "Q",
            _ => "family",
        };
        out.push(ClusterSolution {
            name: name.into(),
            generators: describe(fam),
            dimension: 1,
            quotient_characters: None,
        });
    }
    for pt in valid.iter().filter(|c| !c.contains(&Case::Free)) {
        let owners = families.iter().filter(|f| contains(f, pt)).count();
        if owners == 1 {
            continue;
        }
        let gens: Vec<Vec<u32>> = chars
            .iter()
            .zip(pt.iter())
            .map(|(chi, c)| spaces[chi][if *c == Case::FirstZero { 1 } else { 0 }].clone())
            .collect();
        let mut q: Vec<u32> = standard_monomials(&gens, 2, 2).iter().map(|e| char_of(e)).collect();
        q.sort_unstable();
        out.push(ClusterSolution {
            name: if owners > 1 { "planar".into() } else { "isolated".into() },
            generators: describe(pt),
            dimension: 0,
            quotient_characters: Some(q),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(m: u32, n: usize, nz: &[u32]) -> TangentSignature {
        TangentSignature::padded(m, n, nz).unwrap()
    }

    #[test]
    fn classify_examples() {
        let c = classify_clusters(&sig(2, 2, &[1, 1])).unwrap();
        assert_eq!((c.fiber, c.fiber_dim), ("ℙ¹", 1));
        let c = classify_clusters(&sig(3, 3, &[1, 2])).unwrap();
        assert_eq!((c.fiber, c.fiber_dim), ("P ∪ Q", 1));
        assert_eq!(c.points.len(), 3);
        let c = classify_clusters(&sig(3, 4, &[2, 2, 2])).unwrap();
        assert_eq!((c.fiber, c.fiber_dim), ("ℙ²", 2));
        let e = classify_clusters(&sig(3, 3, &[1, 1])).unwrap_err().to_string();
        assert!(e.contains("(1,ζ,ζ)"), "{e}");
    }

    #[test]
    fn coordinates_follow_cotangent_eigenspaces() {
        let c = local_coordinates(&sig(3, 2, &[1, 2])).unwrap();
        assert_eq!((c[0].even, c[0].odd, c[0].role), (1, 2, "C"));
        assert_eq!((c[1].even, c[1].odd, c[1].role), (2, 0, "S"));
        let c = local_coordinates(&sig(3, 3, &[2, 2, 2])).unwrap();
        assert_eq!(c.iter().map(|x| x.role).collect::<Vec<_>>(), vec!["S", "S", "C"]);
        assert!(local_coordinates(&sig(3, 2, &[1, 1])).is_err());
    }

    #[test]
    fn parameter_actions() {
        let b1 = sig(3, 4, &[1, 2]);
        let b2 = sig(3, 4, &[2, 2, 2]);
        assert_eq!(parameter_action(ChartFamily::PInf, &b1, 3).unwrap(), sig(3, 4, &[1]));
        assert_eq!(parameter_action(ChartFamily::QInf, &b1, 3).unwrap(), sig(3, 4, &[1]));
        assert_eq!(parameter_action(ChartFamily::P0, &b1, 3).unwrap(), sig(3, 4, &[2, 2]));
        assert_eq!(parameter_action(ChartFamily::R0w, &b2, 3).unwrap(), sig(3, 4, &[1]));
        assert_eq!(parameter_action(ChartFamily::RInf, &b2, 3).unwrap(), sig(3, 4, &[2, 2]));
        assert!(parameter_action(ChartFamily::RInf, &b1, 3).is_err());
        assert!(parameter_action(ChartFamily::PInf, &b1, 2).is_err());
    }

    #[test]
    fn p_and_q_are_swapped_charts() {
        let coords = local_coordinates(&sig(3, 2, &[1, 2])).unwrap();
        let swapped: Vec<LocalCoordinate> = vec![coords[1].clone(), coords[0].clone()];
        let q_from_p = chart(ChartFamily::PInf).swap_vars(0, 1);
        assert_eq!(q_from_p.generators, chart(ChartFamily::QInf).generators);
        let a = chart_action(&chart(ChartFamily::PInf), &coords, 3, 2).unwrap();
        let b = chart_action(&q_from_p, &swapped, 3, 2).unwrap();
        assert_eq!(a.induced, b.induced);
        assert_eq!(a.parameters, b.parameters);
    }

    #[test]
    fn standard_monomials_of_planar_point() {
        let s = standard_monomials(&[vec![2, 0], vec![1, 1], vec![0, 2]], 2, 2);
        assert_eq!(s, vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn z3_cluster_enumeration() {
        let sols = enumerate_z3_clusters(&sig(3, 2, &[1, 2])).unwrap();
        let names: Vec<&str> = sols.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, vec!["P", "Q", "planar"]);
        assert_eq!(sols[0].generators[&0], Some("x1x2".into()));
        assert_eq!(sols[0].generators[&1], Some("x2^2".into()));
        assert_eq!(sols[0].generators[&2], None);
        assert_eq!(sols[1].generators[&2], Some("x1^2".into()));
        assert_eq!(sols[2].quotient_characters, Some(vec![0, 1, 2]));
        let r = enumerate_z3_clusters(&sig(3, 3, &[2, 2, 2])).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].dimension, 2);
    }
}
