//! Central charges on products of curves: the exponential family, the
//! `(a, b, c, d)` functionals of a curve extension, Liu charges, tilt slopes
//! and the induction identity that collapses a Liu charge back to kernel form.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cohomology::{hyperplane_class, CurveFactor, GradedClass, Monomial, ProductSpace};
use crate::error::{Error, Result};
use crate::gaussian::{format_rational, int, GaussianRational, Rational};
use crate::riemann_roch::{
    fiber_pushforward, grr_proj_pushforward, proj_pullback, twist_power, FiberInclusionSpec,
    ProjectionSpec,
};

/// `Z(v) = −∫ K·v` for a fixed kernel class `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelCharge {
    pub kernel: GradedClass,
}

impl KernelCharge {
    pub fn new(kernel: GradedClass) -> Self {
        Self { kernel }
    }

    pub fn space(&self) -> &Arc<ProductSpace> {
        self.kernel.space()
    }

    pub fn evaluate(&self, v: &GradedClass) -> Result<GaussianRational> {
        Ok(-self.kernel.pair(v)?)
    }
}

/// `Z_k^{w,b}`: kernel `exp(−(b + i·w)·H)`.
pub fn exp_charge(space: &Arc<ProductSpace>, w: &Rational, b: &Rational) -> Result<KernelCharge> {
    if !w.is_positive() {
        return Err(Error::Domain(format!("w must be positive, got {}", format_rational(w))));
    }
    let s = -GaussianRational::new(b.clone(), w.clone());
    Ok(KernelCharge::new(hyperplane_class(space).scale(&s).exp_nilpotent()?))
}

/// Values of the four functionals on one class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbcdValues {
    pub a: GaussianRational,
    pub b: GaussianRational,
    pub c: GaussianRational,
    pub d: GaussianRational,
}

impl AbcdValues {
    /// Real parts, if every value is real.
    pub fn real(&self) -> Option<[Rational; 4]> {
        let all = [&self.a, &self.b, &self.c, &self.d];
        all.iter().all(|z| z.is_real()).then(|| {
            [
                self.a.re.clone(),
                self.b.re.clone(),
                self.c.re.clone(),
                self.d.re.clone(),
            ]
        })
    }
}

/// `a, b, c, d` on `X × C`, each stored as a real kernel with
/// `f(v) = −∫ F·v`. The base charge of `p_*(E ⊗ L^n)` is
/// `(a + i c)·n + (b + i d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbcdFunctionals {
    pub space: Arc<ProductSpace>,
    pub projection: ProjectionSpec,
    pub base: KernelCharge,
    pub a: GradedClass,
    pub b: GradedClass,
    pub c: GradedClass,
    pub d: GradedClass,
}

impl AbcdFunctionals {
    pub fn values(&self, v: &GradedClass) -> Result<AbcdValues> {
        Ok(AbcdValues {
            a: -self.a.pair(v)?,
            b: -self.b.pair(v)?,
            c: -self.c.pair(v)?,
            d: -self.d.pair(v)?,
        })
    }

    /// `ℓ`, the polarization of the fiber curve.
    pub fn polarization(&self) -> GradedClass {
        GradedClass::point_on(&self.space, self.space.dim() - 1)
    }

    /// Evaluate both sides of the linear-in-`n` identity.
    pub fn check_at(&self, v: &GradedClass, n: i64) -> Result<(GaussianRational, GaussianRational)> {
        let twisted = twist_power(v, &self.polarization(), n)?;
        let lhs = self
            .base
            .evaluate(&grr_proj_pushforward(&twisted, &self.projection)?)?;
        let x = self.values(v)?;
        let nn = GaussianRational::from_int(n);
        let slope = &x.a + &(&GaussianRational::i() * &x.c);
        let constant = &x.b + &(&GaussianRational::i() * &x.d);
        Ok((lhs, &(&slope * &nn) + &constant))
    }
}

/// Extend `base` (on `X`) over a curve `C` appended as the last factor.
pub fn extract_abcd(base: &KernelCharge, fiber: &CurveFactor) -> Result<AbcdFunctionals> {
    let space = base.space().times(&ProductSpace::new(vec![fiber.clone()])).shared();
    let projection = ProjectionSpec::last(&space)?;
    let pk = proj_pullback(&base.kernel, &projection)?;
    let l = GradedClass::point_on(&space, space.dim() - 1);
    let slope = pk.wedge(&l)?;
    let td = GradedClass::unit(&space).add(&l.scale_rational(&int(1 - fiber.genus as i64)))?;
    let constant = pk.wedge(&td)?;
    let (a, c) = slope.split_re_im();
    let (b, d) = constant.split_re_im();
    Ok(AbcdFunctionals {
        space,
        projection,
        base: base.clone(),
        a,
        b,
        c,
        d,
    })
}

/// `Z^{s,t,β} = s·c + b − β·a + i(−t·a + d − β·c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiuCharge {
    pub abcd: AbcdFunctionals,
    pub s: Rational,
    pub t: Rational,
    pub beta: Rational,
}

impl LiuCharge {
    pub fn new(abcd: AbcdFunctionals, s: Rational, t: Rational, beta: Rational) -> Result<Self> {
        if !s.is_positive() || !t.is_positive() {
            return Err(Error::Domain(format!(
                "s and t must be positive, got s={}, t={}",
                format_rational(&s),
                format_rational(&t)
            )));
        }
        Ok(Self { abcd, s, t, beta })
    }

    pub fn space(&self) -> &Arc<ProductSpace> {
        &self.abcd.space
    }

    pub fn evaluate(&self, v: &GradedClass) -> Result<GaussianRational> {
        let x = self.abcd.values(v)?;
        let re = &(&x.c.scale(&self.s) + &x.b) - &x.a.scale(&self.beta);
        let im = &(&x.d - &x.a.scale(&self.t)) - &x.c.scale(&self.beta);
        Ok(&re + &(&GaussianRational::i() * &im))
    }

    /// The kernel `K` with `Z(v) = −∫ K·v`; always exists since the four
    /// functionals are kernels.
    pub fn kernel(&self) -> Result<GradedClass> {
        let f = &self.abcd;
        let i = GaussianRational::i();
        let re = f
            .c
            .scale_rational(&self.s)
            .add(&f.b)?
            .sub(&f.a.scale_rational(&self.beta))?;
        let im = f
            .d
            .sub(&f.a.scale_rational(&self.t))?
            .sub(&f.c.scale_rational(&self.beta))?;
        re.add(&im.scale(&i))
    }
}

/// Any evaluatable central charge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CentralCharge {
    Kernel(KernelCharge),
    Liu(Box<LiuCharge>),
}

impl CentralCharge {
    pub fn space(&self) -> &Arc<ProductSpace> {
        match self {
            CentralCharge::Kernel(k) => k.space(),
            CentralCharge::Liu(l) => l.space(),
        }
    }

    pub fn evaluate(&self, v: &GradedClass) -> Result<GaussianRational> {
        match self {
            CentralCharge::Kernel(k) => k.evaluate(v),
            CentralCharge::Liu(l) => l.evaluate(v),
        }
    }

    pub fn kernel(&self) -> Result<GradedClass> {
        match self {
            CentralCharge::Kernel(k) => Ok(k.kernel.clone()),
            CentralCharge::Liu(l) => l.kernel(),
        }
    }

    pub fn to_kernel(&self) -> Result<KernelCharge> {
        Ok(KernelCharge::new(self.kernel()?))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CentralCharge::Kernel(_) => "kernel",
            CentralCharge::Liu(_) => "liu",
        }
    }
}

impl From<KernelCharge> for CentralCharge {
    fn from(k: KernelCharge) -> Self {
        CentralCharge::Kernel(k)
    }
}

impl From<LiuCharge> for CentralCharge {
    fn from(l: LiuCharge) -> Self {
        CentralCharge::Liu(Box::new(l))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slope {
    Finite(Rational),
    Infinite,
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(r) => write!(f, "{}", format_rational(r)),
            Slope::Infinite => write!(f, "+inf"),
        }
    }
}

/// `ν_{t,β}(v) = (−t·a + d)/(t·c) − β`, or `+∞` when `c(v) = 0`.
pub fn tilt_slope(abcd: &AbcdFunctionals, t: &Rational, beta: &Rational, v: &GradedClass) -> Result<Slope> {
    if !t.is_positive() {
        return Err(Error::Domain("t must be positive".into()));
    }
    let [a, _, c, d] = abcd
        .values(v)?
        .real()
        .ok_or_else(|| Error::Domain("tilt slope needs a real class".into()))?;
    if c.is_zero() {
        return Ok(Slope::Infinite);
    }
    Ok(Slope::Finite((d - t * a) / (t * c) - beta))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositivityEntry {
    pub name: String,
    #[serde(serialize_with = "ser_rats")]
    pub abcd: [Rational; 4],
    pub c_nonnegative: bool,
    pub d_nonnegative_if_c_zero: bool,
    pub a_nonpositive_if_c_zero: bool,
    pub pass: bool,
}

fn ser_rats<S: serde::Serializer>(r: &[Rational; 4], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(4))?;
    for x in r {
        seq.serialize_element(&format_rational(x))?;
    }
    seq.end()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositivityReport {
    pub entries: Vec<PositivityEntry>,
    pub pass: bool,
}

/// The weak-positivity inequalities `c ≥ 0`, and `d ≥ 0`, `a ≤ 0` when `c = 0`.
pub fn weak_positivity_report(abcd: &AbcdFunctionals, classes: &[(String, GradedClass)]) -> Result<PositivityReport> {
    let mut entries = Vec::with_capacity(classes.len());
    for (name, v) in classes {
        let vals = abcd
            .values(v)?
            .real()
            .ok_or_else(|| Error::Domain(format!("class {name} is not real")))?;
        let [a, _, c, d] = &vals;
        let c_zero = c.is_zero();
        let c_ok = !c.is_negative();
        let d_ok = !c_zero || !d.is_negative();
        let a_ok = !c_zero || !a.is_positive();
        entries.push(PositivityEntry {
            name: name.clone(),
            abcd: vals.clone(),
            c_nonnegative: c_ok,
            d_nonnegative_if_c_zero: d_ok,
            a_nonpositive_if_c_zero: a_ok,
            pass: c_ok && d_ok && a_ok,
        });
    }
    let pass = entries.iter().all(|e| e.pass);
    Ok(PositivityReport { entries, pass })
}

/// A basis monomial on which two charges disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChargeWitness {
    pub monomial: Vec<String>,
    pub left: GaussianRational,
    pub right: GaussianRational,
}

/// First basis monomial (in canonical order) where `f ≠ g`.
pub fn compare_on_basis<F, G>(basis: &[Monomial], space: &Arc<ProductSpace>, f: F, g: G) -> Result<Option<ChargeWitness>>
where
    F: Fn(&GradedClass) -> Result<GaussianRational> + Sync,
    G: Fn(&GradedClass) -> Result<GaussianRational> + Sync,
{
    let found = basis
        .par_iter()
        .map(|m| -> Result<Option<ChargeWitness>> {
            let v = GradedClass::monomial(space, m.clone(), GaussianRational::one());
            let (l, r) = (f(&v)?, g(&v)?);
            Ok((l != r).then(|| ChargeWitness {
                monomial: m.symbols(),
                left: l,
                right: r,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(found.into_iter().flatten().next())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InductionReport {
    pub k: usize,
    #[serde(serialize_with = "crate::gaussian::rational_serde::serialize")]
    pub w: Rational,
    #[serde(serialize_with = "crate::gaussian::rational_serde::serialize")]
    pub b: Rational,
    /// The shift in the additive convention of the induction step,
    /// `1 − g + β = −b`.
    #[serde(serialize_with = "crate::gaussian::rational_serde::serialize")]
    pub beta_additive: Rational,
    /// The same shift in the convention of the Liu charge formula.
    #[serde(serialize_with = "crate::gaussian::rational_serde::serialize")]
    pub beta_liu: Rational,
    pub checked: usize,
    pub holds: bool,
    pub witness: Option<ChargeWitness>,
}

fn require_positive_genus(space: &ProductSpace) -> Result<()> {
    if let Some(f) = space.factors.iter().find(|f| f.genus == 0) {
        return Err(Error::Domain(format!("genus ≥ 1 required (factor {} has genus 0)", f.name)));
    }
    Ok(())
}

/// Extend `Z_k^{w,b}` over the last factor with `s = t = w` and the shift
/// forced by `1 − g + β = −b`, and compare with `Z_{k+1}^{w,b}`.
pub fn verify_induction_identity(space: &Arc<ProductSpace>, w: &Rational, b: &Rational) -> Result<InductionReport> {
    let g = space
        .factors
        .last()
        .ok_or_else(|| Error::Domain("empty product".into()))?
        .genus;
    let beta = int(g as i64 - 1) - b;
    verify_induction_identity_with_beta(space, w, b, &beta)
}

/// As [`verify_induction_identity`] with a caller-chosen additive shift.
pub fn verify_induction_identity_with_beta(
    space: &Arc<ProductSpace>,
    w: &Rational,
    b: &Rational,
    beta_additive: &Rational,
) -> Result<InductionReport> {
    if space.dim() < 2 {
        return Err(Error::Domain("induction needs at least two factors".into()));
    }
    require_positive_genus(space)?;
    let k = space.dim() - 1;
    let base_space = space.without(&[k]).shared();
    let zk = exp_charge(&base_space, w, b)?;
    let abcd = extract_abcd(&zk, &space.factors[k])?;
    let beta_liu = -beta_additive.clone();
    let liu = LiuCharge::new(abcd, w.clone(), w.clone(), beta_liu.clone())?;
    let target = exp_charge(space, w, b)?;
    let basis = space.basis();
    let witness = compare_on_basis(&basis, liu.space(), |v| liu.evaluate(v), |v| target.evaluate(v))?;
    Ok(InductionReport {
        k,
        w: w.clone(),
        b: b.clone(),
        beta_additive: beta_additive.clone(),
        beta_liu,
        checked: basis.len(),
        holds: witness.is_none(),
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatibilityReport {
    pub checked: usize,
    pub holds: bool,
    pub witness: Option<ChargeWitness>,
}

/// `Z_ambient(i_* v) = Z_base(v)` on the full basis of the fiber.
pub fn numerical_compatibility_check(
    ambient: &CentralCharge,
    base: &CentralCharge,
    spec: &FiberInclusionSpec,
) -> Result<CompatibilityReport> {
    if ambient.space() != &spec.ambient || base.space() != &spec.base {
        return Err(Error::SpaceMismatch("charges do not match the fiber inclusion".into()));
    }
    let basis = spec.base.basis();
    let witness = compare_on_basis(
        &basis,
        &spec.base,
        |v| ambient.evaluate(&fiber_pushforward(v, spec)?),
        |v| base.evaluate(v),
    )?;
    Ok(CompatibilityReport {
        checked: basis.len(),
        holds: witness.is_none(),
        witness,
    })
}

// ---------------------------------------------------------------------------
// Phases and HN polygons.

fn cross(u: &GaussianRational, v: &GaussianRational) -> Rational {
    &u.re * &v.im - &u.im * &v.re
}

/// Exact phase `turns + θ` with `θ ∈ (0, 1]` represented by a point `z` of
/// the half-open upper half-plane.
#[derive(Clone, Debug)]
pub struct Phase {
    pub turns: i64,
    pub z: GaussianRational,
}

impl Phase {
    /// Principal phase in `(−1, 1]` plus an integer shift.
    pub fn of(z: &GaussianRational, shift: i64) -> Result<Phase> {
        if z.is_zero() {
            return Err(Error::Domain("zero charge has no phase".into()));
        }
        let upper = z.im.is_positive() || (z.im.is_zero() && z.re.is_negative());
        Ok(if upper {
            Phase { turns: shift, z: z.clone() }
        } else {
            Phase {
                turns: shift - 1,
                z: -z.clone(),
            }
        })
    }
}

impl PartialEq for Phase {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other).is_eq()
    }
}

impl Eq for Phase {}

impl PartialOrd for Phase {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Phase {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.turns.cmp(&other.turns).then_with(|| {
            // θ_self > θ_other iff self is counter-clockwise of other.
            let c = cross(&other.z, &self.z);
            c.partial_cmp(&Rational::zero()).expect("total order")
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HnFactor {
    /// Position in the caller's list.
    pub index: usize,
    pub value: GaussianRational,
    pub shift: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HnPolygon {
    pub factors: Vec<HnFactor>,
    pub vertices: Vec<GaussianRational>,
    pub concave: bool,
    pub distinct_phases: usize,
    pub single_hn_factor: bool,
}

/// Partial sums `0, z_1, z_1 + z_2, …`.
pub fn chain_vertices(values: &[GaussianRational]) -> Vec<GaussianRational> {
    let mut out = Vec::with_capacity(values.len() + 1);
    let mut acc = GaussianRational::zero();
    out.push(acc.clone());
    for z in values {
        acc += z;
        out.push(acc.clone());
    }
    out
}

/// Sort by descending phase (stable) and form the polygon.
pub fn hn_polygon_from_values(values: &[(GaussianRational, i64)]) -> Result<HnPolygon> {
    let mut keyed = values
        .iter()
        .enumerate()
        .map(|(i, (z, s))| Ok((Phase::of(z, *s)?, i)))
        .collect::<Result<Vec<_>>>()?;
    keyed.sort_by(|a, b| b.0.cmp(&a.0));
    let distinct = 1 + keyed.windows(2).filter(|w| w[0].0 != w[1].0).count();
    let factors: Vec<HnFactor> = keyed
        .iter()
        .map(|(_, i)| HnFactor {
            index: *i,
            value: values[*i].0.clone(),
            shift: values[*i].1,
        })
        .collect();
    let ordered: Vec<GaussianRational> = factors.iter().map(|f| f.value.clone()).collect();
    let concave = ordered
        .windows(2)
        .all(|w| !cross(&w[0], &w[1]).is_positive());
    Ok(HnPolygon {
        vertices: chain_vertices(&ordered),
        factors,
        concave,
        distinct_phases: if values.is_empty() { 0 } else { distinct },
        single_hn_factor: !values.is_empty() && distinct == 1,
    })
}

pub fn hn_polygon(charge: &CentralCharge, factors: &[GradedClass]) -> Result<HnPolygon> {
    let values = factors
        .iter()
        .map(|v| Ok((charge.evaluate(v)?, 0)))
        .collect::<Result<Vec<_>>>()?;
    hn_polygon_from_values(&values)
}

/// Every vertex of `other` lies weakly to the right of every edge line of
/// `polygon`.
pub fn dominates(polygon: &HnPolygon, other: &[GaussianRational]) -> bool {
    polygon.vertices.windows(2).all(|e| {
        let dir = &e[1] - &e[0];
        dir.is_zero() || other.iter().all(|x| !cross(&dir, &(x - &e[0])).is_positive())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::Basis;
    use crate::gaussian::rat;

    fn g(a: i64, b: i64) -> GaussianRational {
        GaussianRational::new(int(a), int(b))
    }

    fn z1() -> KernelCharge {
        exp_charge(&ProductSpace::elliptic(1).shared(), &int(1), &int(0)).unwrap()
    }

    fn rd(space: &Arc<ProductSpace>, r: i64, d: i64) -> GradedClass {
        GradedClass::unit(space)
            .scale_rational(&int(r))
            .add(&GradedClass::point_on(space, 0).scale_rational(&int(d)))
            .unwrap()
    }

    #[test]
    fn exp_charge_base_case() {
        let z = z1();
        let s = z.space().clone();
        assert_eq!(z.evaluate(&GradedClass::unit(&s)).unwrap(), g(0, 1));
        assert_eq!(z.evaluate(&rd(&s, 0, 1)).unwrap(), g(-1, 0));
        // (−deg + b·rk) + i·w·rk
        let z = exp_charge(&s, &rat(1, 2), &int(3)).unwrap();
        assert_eq!(
            z.evaluate(&rd(&s, 2, 5)).unwrap(),
            GaussianRational::new(int(-5 + 6), int(1))
        );
    }

    #[test]
    fn exp_charge_two_factors() {
        let s = ProductSpace::elliptic(2).shared();
        let z = exp_charge(&s, &int(1), &int(0)).unwrap();
        assert_eq!(z.evaluate(&GradedClass::unit(&s)).unwrap(), g(1, 0));
        assert_eq!(z.evaluate(&GradedClass::top(&s)).unwrap(), g(-1, 0));
        let o_pt1 = GradedClass::unit(&s).add(&GradedClass::point_on(&s, 0)).unwrap();
        assert_eq!(z.evaluate(&o_pt1).unwrap(), g(1, 1));
        assert!(z.evaluate(&GradedClass::zero(&s)).unwrap().is_zero());
        assert!(exp_charge(&s, &int(0), &int(0)).is_err());
    }

    #[test]
    fn abcd_examples() {
        let z = z1();
        let f = extract_abcd(&z, &CurveFactor::elliptic("C")).unwrap();
        let s = f.space.clone();
        let vals = |v: &GradedClass| f.values(v).unwrap().real().unwrap();
        assert_eq!(vals(&GradedClass::unit(&s)), [int(0), int(0), int(1), int(0)]);
        assert_eq!(vals(&GradedClass::point_on(&s, 1)), [int(0), int(0), int(0), int(1)]);
        assert_eq!(vals(&GradedClass::top(&s)), [int(0), int(-1), int(0), int(0)]);
        for m in s.basis() {
            let v = GradedClass::monomial(&s, m, GaussianRational::one());
            for n in [0, 1, 5] {
                let (l, r) = f.check_at(&v, n).unwrap();
                assert_eq!(l, r);
            }
        }
    }

    #[test]
    fn liu_examples() {
        let f = extract_abcd(&z1(), &CurveFactor::elliptic("C")).unwrap();
        let s = f.space.clone();
        for (ss, t, beta) in [(1, 1, 0), (2, 3, -4), (5, 1, 7)] {
            let l = LiuCharge::new(f.clone(), int(ss), int(t), int(beta)).unwrap();
            assert_eq!(l.evaluate(&GradedClass::top(&s)).unwrap(), g(-1, 0));
            assert_eq!(l.evaluate(&GradedClass::point_on(&s, 1)).unwrap(), g(0, 1));
            let k = KernelCharge::new(l.kernel().unwrap());
            for m in s.basis() {
                let v = GradedClass::monomial(&s, m, GaussianRational::one());
                assert_eq!(k.evaluate(&v).unwrap(), l.evaluate(&v).unwrap());
            }
        }
        assert!(LiuCharge::new(f.clone(), int(0), int(1), int(0)).is_err());
        assert!(LiuCharge::new(f, int(1), int(-1), int(0)).is_err());
    }

    #[test]
    fn tilt_slopes() {
        let f = extract_abcd(&z1(), &CurveFactor::elliptic("C")).unwrap();
        let s = f.space.clone();
        assert_eq!(
            tilt_slope(&f, &int(1), &int(-2), &GradedClass::unit(&s)).unwrap(),
            Slope::Finite(int(2))
        );
        assert_eq!(
            tilt_slope(&f, &int(1), &int(0), &GradedClass::point_on(&s, 1)).unwrap(),
            Slope::Infinite
        );
        assert_eq!(
            tilt_slope(&f, &int(1), &int(0), &GradedClass::top(&s)).unwrap(),
            Slope::Infinite
        );
    }

    #[test]
    fn positivity() {
        let f = extract_abcd(&z1(), &CurveFactor::elliptic("C")).unwrap();
        let s = f.space.clone();
        let good = vec![
            ("O".to_string(), GradedClass::unit(&s)),
            ("i_*O_X".to_string(), GradedClass::point_on(&s, 1)),
            ("O_pt".to_string(), GradedClass::top(&s)),
        ];
        assert!(weak_positivity_report(&f, &good).unwrap().pass);
        let bad = vec![("-O".to_string(), GradedClass::unit(&s).neg())];
        let r = weak_positivity_report(&f, &bad).unwrap();
        assert!(!r.pass && !r.entries[0].c_nonnegative);
        let zero = vec![("0".to_string(), GradedClass::zero(&s))];
        assert!(weak_positivity_report(&f, &zero).unwrap().pass);
    }

    #[test]
    fn induction_examples() {
        let s = ProductSpace::elliptic(2).shared();
        assert!(verify_induction_identity(&s, &int(1), &int(0)).unwrap().holds);
        let s4 = ProductSpace::elliptic(4).shared();
        assert!(verify_induction_identity(&s4, &rat(1, 2), &int(3)).unwrap().holds);
        let r = verify_induction_identity_with_beta(&s, &int(1), &int(1), &int(0)).unwrap();
        assert!(!r.holds);
        assert!(r.witness.is_some());
    }

    #[test]
    fn induction_higher_genus() {
        let s = ProductSpace::with_genera(&[2, 1, 3]).shared();
        assert!(verify_induction_identity(&s, &rat(3, 2), &rat(-1, 3)).unwrap().holds);
        let bad = ProductSpace::with_genera(&[1, 0]).shared();
        let e = verify_induction_identity(&bad, &int(1), &int(0)).unwrap_err();
        assert!(e.to_string().contains("genus ≥ 1 required"));
    }

    #[test]
    fn compatibility_examples() {
        let s = ProductSpace::elliptic(2).shared();
        let i = FiberInclusionSpec::new(&s, &[1]).unwrap();
        let z2: CentralCharge = exp_charge(&s, &int(1), &int(0)).unwrap().into();
        let z1: CentralCharge = exp_charge(&i.base, &int(1), &int(0)).unwrap().into();
        assert!(numerical_compatibility_check(&z2, &z1, &i).unwrap().holds);
        let z1b: CentralCharge = exp_charge(&i.base, &int(1), &int(1)).unwrap().into();
        let r = numerical_compatibility_check(&z2, &z1b, &i).unwrap();
        assert!(!r.holds);

        let f = extract_abcd(&exp_charge(&i.base, &int(1), &int(0)).unwrap(), &s.factors[1]).unwrap();
        let liu: CentralCharge = LiuCharge::new(f, int(2), int(3), rat(1, 2)).unwrap().into();
        assert!(numerical_compatibility_check(&liu, &z1, &i).unwrap().holds);
    }

    #[test]
    fn phase_ordering() {
        let p = |a, b| Phase::of(&g(a, b), 0).unwrap();
        assert!(p(-1, 0) > p(0, 1));
        assert!(p(0, 1) > p(1, 1));
        assert!(p(1, 1) > p(1, 0));
        assert!(p(1, 0) > p(1, -1));
        assert_eq!(Phase::of(&g(2, 2), 0).unwrap().cmp(&p(1, 1)), std::cmp::Ordering::Equal);
        assert_eq!(Phase::of(&g(1, 0), 1).unwrap(), p(-1, 0));
        assert!(Phase::of(&g(1, 1), 1).unwrap() > p(-1, 0));
        assert!(Phase::of(&GaussianRational::zero(), 0).is_err());
    }

    #[test]
    fn hn_examples() {
        let one = hn_polygon_from_values(&[(g(1, 1), 0)]).unwrap();
        assert_eq!(one.vertices.len(), 2);
        // phases about 0.9 and 0.2, supplied in that order
        let a = g(-3, 1);
        let b = g(4, 3);
        let two = hn_polygon_from_values(&[(a.clone(), 0), (b.clone(), 0)]).unwrap();
        assert_eq!(two.factors[0].index, 0);
        assert!(two.concave);
        assert!(dominates(&two, &chain_vertices(&[b, a])));
        let same = hn_polygon_from_values(&[(g(1, 1), 0), (g(2, 2), 0), (g(3, 3), 0)]).unwrap();
        assert!(same.single_hn_factor);
        assert!(hn_polygon_from_values(&[(GaussianRational::zero(), 0)]).is_err());
    }

    #[test]
    fn hn_from_classes() {
        let z: CentralCharge = z1().into();
        let s = z.space().clone();
        let v = vec![
            GradedClass::generator(&s, 0, Basis::Point),
            GradedClass::unit(&s),
        ];
        let p = hn_polygon(&z, &v).unwrap();
        assert_eq!(p.factors[0].index, 0);
        assert_eq!(p.vertices.last().unwrap(), &g(-1, 1));
    }
}
