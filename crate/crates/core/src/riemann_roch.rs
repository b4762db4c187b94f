//! Chern-character transport along projections and point-fiber inclusions.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::cohomology::{Basis, GradedClass, Monomial, ProductSpace};
use crate::error::{Error, Result};
use crate::gaussian::{int, GaussianRational, Rational};

fn check_indices(ambient: &ProductSpace, idx: &[usize], what: &str) -> Result<Vec<usize>> {
    let mut v = idx.to_vec();
    v.sort_unstable();
    v.dedup();
    if v.len() != idx.len() {
        return Err(Error::Domain(format!("repeated {what} index in {idx:?}")));
    }
    if let Some(i) = v.iter().find(|&&i| i >= ambient.dim()) {
        return Err(Error::Domain(format!(
            "{what} index {i} out of range for {} factors",
            ambient.dim()
        )));
    }
    Ok(v)
}

/// Insert `fill` at the (sorted) ambient positions `at`.
pub(crate) fn expand_monomial(m: &Monomial, at: &[usize], fill: Basis) -> Monomial {
    let n = m.0.len() + at.len();
    let mut src = m.0.iter();
    let mut out = Vec::with_capacity(n);
    let mut k = 0;
    for pos in 0..n {
        if k < at.len() && at[k] == pos {
            out.push(fill);
            k += 1;
        } else {
            out.push(*src.next().expect("length checked"));
        }
    }
    Monomial(out)
}

/// Drop positions `at` if every one of them holds `want`.
pub(crate) fn contract_monomial(m: &Monomial, at: &[usize], want: Basis) -> Option<Monomial> {
    if at.iter().any(|&i| m.0[i] != want) {
        return None;
    }
    Some(Monomial(
        m.0.iter()
            .enumerate()
            .filter(|(i, _)| !at.contains(i))
            .map(|(_, b)| *b)
            .collect(),
    ))
}

fn check_on(v: &GradedClass, space: &Arc<ProductSpace>, role: &str) -> Result<()> {
    if v.space() != space {
        return Err(Error::SpaceMismatch(format!(
            "class lives on {} factors, {role} has {}",
            v.space().dim(),
            space.dim()
        )));
    }
    Ok(())
}

/// `p: ambient → base` forgetting the `removed` factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionSpec {
    pub ambient: Arc<ProductSpace>,
    pub removed: Vec<usize>,
    pub base: Arc<ProductSpace>,
}

impl ProjectionSpec {
    pub fn new(ambient: &Arc<ProductSpace>, removed: &[usize]) -> Result<Self> {
        let removed = check_indices(ambient, removed, "removed")?;
        if removed.len() == ambient.dim() {
            return Err(Error::Domain("a projection must keep at least one factor".into()));
        }
        Ok(Self {
            base: ambient.without(&removed).shared(),
            ambient: ambient.clone(),
            removed,
        })
    }

    /// Project away the last factor.
    pub fn last(ambient: &Arc<ProductSpace>) -> Result<Self> {
        Self::new(ambient, &[ambient.dim().saturating_sub(1)])
    }
}

/// `i: base → ambient`, the inclusion of a fiber over a point of the
/// `collapsed` factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberInclusionSpec {
    pub ambient: Arc<ProductSpace>,
    pub collapsed: Vec<usize>,
    pub base: Arc<ProductSpace>,
}

impl FiberInclusionSpec {
    pub fn new(ambient: &Arc<ProductSpace>, collapsed: &[usize]) -> Result<Self> {
        let collapsed = check_indices(ambient, collapsed, "collapsed")?;
        Ok(Self {
            base: ambient.without(&collapsed).shared(),
            ambient: ambient.clone(),
            collapsed,
        })
    }

    pub fn as_projection(&self) -> Result<ProjectionSpec> {
        ProjectionSpec::new(&self.ambient, &self.collapsed)
    }
}

/// `td(T_p) = Π_{j removed} (1 + (1 − g_j)·pt_j)`.
pub fn todd_fiber(spec: &ProjectionSpec) -> GradedClass {
    let space = &spec.ambient;
    let mut td = GradedClass::unit(space);
    for &j in &spec.removed {
        let g = space.factors[j].genus as i64;
        let factor = GradedClass::unit(space)
            .add(&GradedClass::point_on(space, j).scale_rational(&int(1 - g)))
            .expect("same space");
        td = td.wedge(&factor).expect("same space");
    }
    td
}

/// Fiber integration of `v` without the Todd correction.
pub fn integrate_fibers(v: &GradedClass, spec: &ProjectionSpec) -> Result<GradedClass> {
    check_on(v, &spec.ambient, "projection ambient")?;
    let terms = v
        .terms()
        .filter_map(|(m, c)| contract_monomial(m, &spec.removed, Basis::Point).map(|b| (b, c.clone())));
    GradedClass::from_terms(&spec.base, terms)
}

/// `ch(p_* E)` from `ch(E) = v`: fiber integral of `v·td(T_p)`.
pub fn grr_proj_pushforward(v: &GradedClass, spec: &ProjectionSpec) -> Result<GradedClass> {
    check_on(v, &spec.ambient, "projection ambient")?;
    integrate_fibers(&v.wedge(&todd_fiber(spec))?, spec)
}

/// `p^* w`: extend by the unit on the removed factors.
pub fn proj_pullback(w: &GradedClass, spec: &ProjectionSpec) -> Result<GradedClass> {
    check_on(w, &spec.base, "projection base")?;
    let terms = w
        .terms()
        .map(|(m, c)| (expand_monomial(m, &spec.removed, Basis::Unit), c.clone()));
    GradedClass::from_terms(&spec.ambient, terms)
}

/// `ch(i_* F)` from `ch(F) = v`; the normal bundle is trivial so no Todd
/// correction appears.
pub fn fiber_pushforward(v: &GradedClass, spec: &FiberInclusionSpec) -> Result<GradedClass> {
    check_on(v, &spec.base, "fiber")?;
    let terms = v
        .terms()
        .map(|(m, c)| (expand_monomial(m, &spec.collapsed, Basis::Point), c.clone()));
    GradedClass::from_terms(&spec.ambient, terms)
}

/// `i^* v`: restriction to the fiber.
pub fn fiber_pullback(v: &GradedClass, spec: &FiberInclusionSpec) -> Result<GradedClass> {
    check_on(v, &spec.ambient, "fiber ambient")?;
    let terms = v
        .terms()
        .filter_map(|(m, c)| contract_monomial(m, &spec.collapsed, Basis::Unit).map(|b| (b, c.clone())));
    GradedClass::from_terms(&spec.base, terms)
}

/// `ch(E ⊗ L) = ch(E)·exp(ℓ)` for `ℓ = c_1(L)` of pure degree two.
pub fn tensor_line_bundle(v: &GradedClass, l: &GradedClass) -> Result<GradedClass> {
    v.check_same_space(l)?;
    if l.degrees().iter().any(|&d| d != 2) {
        return Err(Error::Domain(format!(
            "line bundle class must be of pure degree 2, found degrees {:?}",
            l.degrees()
        )));
    }
    v.wedge(&l.exp_nilpotent()?)
}

/// `n`-fold twist `ch(E ⊗ L^n)`.
pub fn twist_power(v: &GradedClass, l: &GradedClass, n: i64) -> Result<GradedClass> {
    tensor_line_bundle(v, &l.scale_rational(&int(n)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerCheck {
    /// `ch(i^* i_* F)`.
    pub pullback_of_pushforward: GradedClass,
    /// `Σ_k (−1)^k C(n,k)·ch(F)`.
    pub alternating_sum: GradedClass,
    pub holds: bool,
}

/// Compare `i^* i_* v` with the K-class of `⊕_k C(n,k) F[k]`.
pub fn euler_identity_check(v: &GradedClass, spec: &FiberInclusionSpec) -> Result<EulerCheck> {
    let lhs = fiber_pullback(&fiber_pushforward(v, spec)?, spec)?;
    let n = spec.collapsed.len() as u64;
    let mut coeff = BigInt::from(0);
    let mut binom = BigInt::one();
    for k in 0..=n {
        if k % 2 == 0 {
            coeff += &binom;
        } else {
            coeff -= &binom;
        }
        binom = binom * BigInt::from(n - k) / BigInt::from(k + 1);
    }
    let rhs = v.scale(&GaussianRational::real(Rational::from_integer(coeff)));
    Ok(EulerCheck {
        holds: lhs == rhs,
        pullback_of_pushforward: lhs,
        alternating_sum: rhs,
    })
}

/// Outcome of `ch(i_* p_* v) = v` over the fiber-supported basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCheck {
    pub checked: usize,
    pub holds: bool,
    pub witness: Option<Monomial>,
}

/// `[i_* p_* E] = [E]` for every basis class supported on a fiber
/// `X × {pt}`, where `p` forgets the collapsed factors.
pub fn reduced_reduction_check(spec: &FiberInclusionSpec) -> Result<ReductionCheck> {
    let proj = spec.as_projection()?;
    let mut checked = 0;
    for m in spec.ambient.basis() {
        if spec.collapsed.iter().any(|&j| m.0[j] != Basis::Point) {
            continue;
        }
        checked += 1;
        let v = GradedClass::monomial(&spec.ambient, m.clone(), GaussianRational::one());
        if fiber_pushforward(&grr_proj_pushforward(&v, &proj)?, spec)? != v {
            return Ok(ReductionCheck {
                checked,
                holds: false,
                witness: Some(m),
            });
        }
    }
    Ok(ReductionCheck {
        checked,
        holds: true,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::int;

    fn ex() -> Arc<ProductSpace> {
        ProductSpace::elliptic(2).shared()
    }

    #[test]
    fn reduced_reduction() {
        let s = ProductSpace::with_genera(&[1, 2, 0]).shared();
        let r = reduced_reduction_check(&FiberInclusionSpec::new(&s, &[1, 2]).unwrap()).unwrap();
        assert!(r.holds);
        assert_eq!(r.checked, 4);
    }

    #[test]
    fn todd_of_fibers() {
        let s = ex();
        assert_eq!(todd_fiber(&ProjectionSpec::last(&s).unwrap()), GradedClass::unit(&s));
        let g2 = ProductSpace::with_genera(&[1, 2]).shared();
        let td = todd_fiber(&ProjectionSpec::last(&g2).unwrap());
        let expected = GradedClass::unit(&g2).sub(&GradedClass::point_on(&g2, 1)).unwrap();
        assert_eq!(td, expected);
        let both = ProductSpace::elliptic(3).shared();
        let p = ProjectionSpec::new(&both, &[1, 2]).unwrap();
        assert_eq!(todd_fiber(&p), GradedClass::unit(&both));
    }

    #[test]
    fn projection_examples() {
        let s = ex();
        let p = ProjectionSpec::last(&s).unwrap();
        let pt_c = GradedClass::point_on(&s, 1);
        assert_eq!(grr_proj_pushforward(&pt_c, &p).unwrap(), GradedClass::unit(&p.base));
        assert!(grr_proj_pushforward(&GradedClass::unit(&s), &p).unwrap().is_zero());
        let n = 7;
        let v = GradedClass::unit(&s).add(&pt_c.scale_rational(&int(n))).unwrap();
        assert_eq!(
            grr_proj_pushforward(&v, &p).unwrap(),
            GradedClass::unit(&p.base).scale_rational(&int(n))
        );
    }

    #[test]
    fn fiber_pushforward_examples() {
        let s = ex();
        let i = FiberInclusionSpec::new(&s, &[1]).unwrap();
        assert_eq!(
            fiber_pushforward(&GradedClass::unit(&i.base), &i).unwrap(),
            GradedClass::point_on(&s, 1)
        );
        assert_eq!(
            fiber_pushforward(&GradedClass::point_on(&i.base, 0), &i).unwrap(),
            GradedClass::top(&s)
        );
    }

    #[test]
    fn round_trip_on_base_basis() {
        let s = ProductSpace::with_genera(&[1, 2, 1]).shared();
        let i = FiberInclusionSpec::new(&s, &[1]).unwrap();
        let p = i.as_projection().unwrap();
        for m in i.base.basis() {
            let v = GradedClass::monomial(&i.base, m, GaussianRational::one());
            let back = grr_proj_pushforward(&fiber_pushforward(&v, &i).unwrap(), &p).unwrap();
            assert_eq!(back, v);
        }
    }

    #[test]
    fn twists() {
        let s = ex();
        let l = GradedClass::point_on(&s, 1);
        let one = GradedClass::unit(&s);
        assert_eq!(
            twist_power(&one, &l, 3).unwrap(),
            one.add(&l.scale_rational(&int(3))).unwrap()
        );
        assert_eq!(tensor_line_bundle(&l, &l).unwrap(), l);
        assert_eq!(tensor_line_bundle(&l, &GradedClass::zero(&s)).unwrap(), l);
        assert!(tensor_line_bundle(&one, &GradedClass::top(&s)).is_err());
    }

    #[test]
    fn euler_alternating_sums_vanish() {
        for collapsed in 0..=3usize {
            let s = ProductSpace::elliptic(collapsed + 1).shared();
            let idx: Vec<usize> = (1..=collapsed).collect();
            let i = FiberInclusionSpec::new(&s, &idx).unwrap();
            let v = GradedClass::unit(&i.base)
                .add(&GradedClass::point_on(&i.base, 0).scale_rational(&int(5)))
                .unwrap();
            let r = euler_identity_check(&v, &i).unwrap();
            assert!(r.holds);
            if collapsed == 0 {
                assert_eq!(r.pullback_of_pushforward, v);
            } else {
                assert!(r.alternating_sum.is_zero());
            }
        }
    }

    #[test]
    fn bad_specs_rejected() {
        let s = ex();
        assert!(ProjectionSpec::new(&s, &[0, 1]).is_err());
        assert!(ProjectionSpec::new(&s, &[2]).is_err());
        assert!(FiberInclusionSpec::new(&s, &[1, 1]).is_err());
        let p = ProjectionSpec::last(&s).unwrap();
        assert!(grr_proj_pushforward(&GradedClass::unit(&p.base), &p).is_err());
    }
}
