//! Fixed strata, clusters and the crepant-resolution tower for the
//! sum-zero actions of `Z/2` and `Z/3` on powers of an elliptic curve.

mod clusters;
mod tower;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use clusters::{
    chart, chart_action, classify_clusters, enumerate_z3_clusters, local_coordinates, parameter_action,
    standard_monomials, Chart, ChartAction, ChartFamily, ClusterFamily, ClusterSolution, Generator,
    InvariantPoint, LocalCoordinate,
};
pub use tower::{
    bkr_dimension_bound, run_tower, step, z2_step, z3_step, BkrBound, ClaimComparison, EvenStratumAudit,
    FamilyRecord, StageAudit, TowerReport,
};

/// Eigenvalue exponents of a cyclic generator on a tangent space, sorted;
/// `0` stands for eigenvalue 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TangentSignature {
    pub m: u32,
    pub exponents: Vec<u32>,
}

impl TangentSignature {
    pub fn new(m: u32, exponents: impl IntoIterator<Item = u32>) -> Self {
        let mut exponents: Vec<u32> = exponents.into_iter().map(|e| e % m).collect();
        exponents.sort_unstable();
        Self { m, exponents }
    }

    /// `n − r` zeros followed by `nonzero`.
    pub fn padded(m: u32, n: usize, nonzero: &[u32]) -> Result<Self> {
        if nonzero.len() > n {
            return Err(Error::Domain(format!("{} exponents do not fit in dimension {n}", nonzero.len())));
        }
        Ok(Self::new(m, std::iter::repeat_n(0, n - nonzero.len()).chain(nonzero.iter().copied())))
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    pub fn codim(&self) -> usize {
        self.exponents.iter().filter(|&&e| e != 0).count()
    }

    pub fn nonzero(&self) -> Vec<u32> {
        self.exponents.iter().copied().filter(|&e| e != 0).collect()
    }

    pub fn sum(&self) -> u32 {
        self.exponents.iter().sum::<u32>() % self.m
    }

    fn eigenvalue(&self, e: u32) -> String {
        match (self.m, e) {
            (_, 0) => "1".into(),
            (2, 1) => "-1".into(),
            (_, 1) => "ζ".into(),
            (_, 2) => "ζ²".into(),
            (_, 3) => "ζ³".into(),
            (_, e) => format!("ζ^{e}"),
        }
    }

    /// `diag(1,…,1,ζ)` style, with the trivial block abbreviated.
    pub fn diag_string(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        if self.n() > self.codim() {
            parts.push("1,…,1".into());
        }
        parts.extend(self.nonzero().into_iter().map(|e| self.eigenvalue(e)));
        format!("diag({})", parts.join(","))
    }
}

impl fmt::Display for TangentSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(|&e| self.eigenvalue(e)).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for TangentSignature {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("TangentSignature", 4)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("exponents", &self.exponents)?;
        st.serialize_field("codim", &self.codim())?;
        st.serialize_field("diag", &self.diag_string())?;
        st.end()
    }
}

/// `det = 1`: the exponent sum vanishes mod `m`.
pub fn sl_condition(sig: &TangentSignature) -> bool {
    sig.sum() == 0
}

/// A union of fixed components sharing dimension and signature.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stratum {
    /// Provenance labels, e.g. `B1°`, `B1′`.
    pub labels: Vec<String>,
    pub dim: usize,
    pub signature: TangentSignature,
    /// Number of fixed points, tracked only where it is known.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<u64>,
}

impl Stratum {
    /// `B1` or `B2` by codimension.
    pub fn kind(&self) -> String {
        format!("B{}", self.signature.codim())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageState {
    pub n: usize,
    pub m: u32,
    pub strata: Vec<Stratum>,
}

impl StageState {
    /// `X_1 = E` with the fixed points of the order-`m` automorphism.
    pub fn initial(m: u32) -> Result<Self> {
        let points = match m {
            2 => 4,
            3 => 3,
            4 => return Err(Error::Unsupported("dimension condition of BKR fails for m = 4".into())),
            _ => return Err(Error::Unsupported(format!("towers exist only for m ∈ {{2, 3}}, got {m}"))),
        };
        Ok(Self {
            n: 1,
            m,
            strata: vec![Stratum {
                labels: vec!["B1°".into()],
                dim: 0,
                signature: TangentSignature::new(m, [1]),
                points: Some(points),
            }],
        })
    }

    pub fn validate(&self) -> Result<()> {
        for s in &self.strata {
            let sig = &s.signature;
            if sig.m != self.m || sig.n() != self.n {
                return Err(Error::Audit(format!(
                    "stratum {:?} has signature {sig} on a stage with n = {}, m = {}",
                    s.labels, self.n, self.m
                )));
            }
            if s.dim + sig.codim() != self.n {
                return Err(Error::Audit(format!(
                    "stratum {:?} of dimension {} has codimension {} in dimension {}",
                    s.labels,
                    s.dim,
                    sig.codim(),
                    self.n
                )));
            }
            let allowed: &[&[u32]] = match self.m {
                2 => &[&[1]],
                3 => &[&[1], &[2, 2]],
                _ => &[],
            };
            if !allowed.contains(&sig.nonzero().as_slice()) {
                return Err(Error::Audit(format!(
                    "illegal stratum {:?} with signature {sig} for m = {}",
                    s.labels, self.m
                )));
            }
        }
        Ok(())
    }
}
