//! Integer lattices for descent and restriction: Hermite normal forms,
//! image and invariant lattices, restricted and descended charges, the lift
//! criterion and effective support constants.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::charge::{CentralCharge, KernelCharge};
use crate::cohomology::{Basis, GradedClass, Monomial, ProductSpace};
use crate::error::{Error, Result};
use crate::gaussian::{format_rational, GaussianRational, Rational};
use crate::group::{charge_invariance_check, invariant_sublattice, InvarianceWitness, ProductGroupElement};
use crate::riemann_roch::{contract_monomial, fiber_pushforward, FiberInclusionSpec};

/// An integer matrix between labelled bases, `matrix[row][col]`, divided
/// by `denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMap {
    pub matrix: Vec<Vec<BigInt>>,
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub denominator: BigInt,
}

impl Serialize for LatticeMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LatticeMap", 5)?;
        let m: Vec<Vec<String>> = self.matrix.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        st.serialize_field("matrix", &m)?;
        st.serialize_field("source", &self.source)?;
        st.serialize_field("target", &self.target)?;
        st.serialize_field("denominator", &self.denominator.to_string())?;
        st.serialize_field("rank", &self.rank())?;
        st.end()
    }
}

impl LatticeMap {
    pub fn new(matrix: Vec<Vec<BigInt>>, source: Vec<String>, target: Vec<String>) -> Result<Self> {
        if matrix.len() != target.len() || matrix.iter().any(|r| r.len() != source.len()) {
            return Err(Error::Lattice(format!(
                "matrix shape does not match {} target × {} source labels",
                target.len(),
                source.len()
            )));
        }
        Ok(Self {
            matrix,
            source,
            target,
            denominator: BigInt::one(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let ncols = m.first().map_or(0, |r| r.len());
        Self {
            target: (0..m.len()).map(|i| format!("r{}", i + 1)).collect(),
            source: (0..ncols).map(|j| format!("c{}", j + 1)).collect(),
            matrix: m,
            denominator: BigInt::one(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.target.len()
    }

    pub fn ncols(&self) -> usize {
        self.source.len()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.ncols())
            .map(|j| self.matrix.iter().map(|r| r[j].clone()).collect())
            .collect()
    }

    fn from_columns(cols: &[Vec<BigInt>], nrows: usize, source: Vec<String>, target: Vec<String>) -> Self {
        let matrix = (0..nrows)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        Self {
            matrix,
            source,
            target,
            denominator: BigInt::one(),
        }
    }

    pub fn rank(&self) -> usize {
        column_echelon(&self.columns(), self.nrows()).rank
    }

    /// Column Hermite normal form; same shape, zero columns last.
    pub fn hermite_normal_form(&self) -> LatticeMap {
        let e = column_echelon(&self.columns(), self.nrows());
        let mut out = Self::from_columns(&e.h, self.nrows(), self.source.clone(), self.target.clone());
        out.denominator = self.denominator.clone();
        out
    }

    /// HNF basis of the column span, optionally saturated in `Z^rows`.
    pub fn image_lattice(&self, saturate: bool) -> LatticeMap {
        let e = column_echelon(&self.columns(), self.nrows());
        let mut cols: Vec<Vec<BigInt>> = e.h[..e.rank].to_vec();
        if saturate {
            cols = saturate_columns(&cols, self.nrows());
        }
        let rank = cols.len();
        let mut out = Self::from_columns(
            &cols,
            self.nrows(),
            (1..=rank).map(|i| format!("λ{i}")).collect(),
            self.target.clone(),
        );
        out.denominator = self.denominator.clone();
        out
    }

    /// Product of the nonzero pivots of the HNF; the index of the image in
    /// its saturation up to the saturation's own pivots.
    pub fn pivots(&self) -> Vec<BigInt> {
        let e = column_echelon(&self.columns(), self.nrows());
        e.pivots.iter().map(|&(r, c)| e.h[c][r].clone()).collect()
    }
}

/// Result of column echelonization `A·U = H`.
pub struct Echelon {
    /// Columns of `H`.
    pub h: Vec<Vec<BigInt>>,
    /// Columns of the unimodular `U`.
    pub u: Vec<Vec<BigInt>>,
    /// `(row, column)` of every pivot.
    pub pivots: Vec<(usize, usize)>,
    pub rank: usize,
}

fn axpy(dst: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    if q.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

/// Column-style Hermite normal form with transformation matrix.
pub fn column_echelon(cols: &[Vec<BigInt>], nrows: usize) -> Echelon {
    let n = cols.len();
    let mut h: Vec<Vec<BigInt>> = cols.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut pc = 0;
    for r in 0..nrows {
        if pc == n {
            break;
        }
        loop {
            let best = (pc..n)
                .filter(|&j| !h[j][r].is_zero())
                .min_by(|&a, &b| h[a][r].abs().cmp(&h[b][r].abs()));
            let Some(j) = best else { break };
            h.swap(pc, j);
            u.swap(pc, j);
            let mut done = true;
            for j in pc + 1..n {
                if h[j][r].is_zero() {
                    continue;
                }
                let q = h[j][r].div_floor(&h[pc][r]);
                let (hp, hj) = pair_mut(&mut h, pc, j);
                axpy(hj, &q, hp);
                let (up, uj) = pair_mut(&mut u, pc, j);
                axpy(uj, &q, up);
                if !h[j][r].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(pc).is_none_or(|c| c[r].is_zero()) {
            continue;
        }
        if h[pc][r].is_negative() {
            for x in h[pc].iter_mut().chain(u[pc].iter_mut()) {
                *x = -x.clone();
            }
        }
        for j in 0..pc {
            let q = h[j][r].div_floor(&h[pc][r]);
            let (hj, hp) = pair_mut(&mut h, j, pc);
            axpy(hj, &q, hp);
            let (uj, up) = pair_mut(&mut u, j, pc);
            axpy(uj, &q, up);
        }
        pivots.push((r, pc));
        pc += 1;
    }
    Echelon { h, u, pivots, rank: pc }
}

/// `(&mut v[a], &mut v[b])` with the first element being index `a`.
fn pair_mut<T>(v: &mut [T], a: usize, b: usize) -> (&mut T, &mut T) {
    assert_ne!(a, b);
    if a < b {
        let (x, y) = v.split_at_mut(b);
        (&mut x[a], &mut y[0])
    } else {
        let (x, y) = v.split_at_mut(a);
        (&mut y[0], &mut x[b])
    }
}

/// Basis (as columns) of `{x ∈ Z^ncols : A x = 0}` for `A` given by rows.
/// The result is saturated.
pub fn integer_kernel(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let cols: Vec<Vec<BigInt>> = (0..ncols)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect();
    let e = column_echelon(&cols, rows.len());
    e.u[e.rank..].to_vec()
}

/// `(L ⊗ Q) ∩ Z^n` for `L` spanned by the given columns, in HNF.
pub fn saturate_columns(cols: &[Vec<BigInt>], nrows: usize) -> Vec<Vec<BigInt>> {
    // Annihilator first, then its annihilator.
    let ann = integer_kernel(cols, nrows);
    let sat = if ann.is_empty() {
        (0..nrows)
            .map(|j| (0..nrows).map(|i| BigInt::from((i == j) as i64)).collect())
            .collect()
    } else {
        integer_kernel(&ann, nrows)
    };
    let e = column_echelon(&sat, nrows);
    e.h[..e.rank].to_vec()
}

/// Incremental echelon basis of a rational span of sparse classes.
pub struct RationalSpan {
    rows: Vec<(Monomial, BTreeMap<Monomial, Rational>, Vec<Rational>)>,
    size: usize,
}

impl RationalSpan {
    /// Fails if the vectors are linearly dependent.
    pub fn new(vectors: &[BTreeMap<Monomial, Rational>]) -> Result<Self> {
        let mut span = Self {
            rows: Vec::new(),
            size: vectors.len(),
        };
        for (j, v) in vectors.iter().enumerate() {
            let mut coeffs = vec![Rational::zero(); span.size];
            coeffs[j] = Rational::one();
            let (rest, mut comb) = span.reduce(v.clone());
            for (c, x) in coeffs.iter_mut().zip(comb.iter_mut()) {
                *c -= x.clone();
            }
            let Some((pivot, _)) = rest.iter().next() else {
                return Err(Error::Lattice(format!("basis class {} is linearly dependent", j + 1)));
            };
            span.rows.push((pivot.clone(), rest, coeffs));
        }
        Ok(span)
    }

    /// Returns `(remainder, coefficients)` with `v = remainder + Σ coeff_j b_j`.
    fn reduce(&self, mut v: BTreeMap<Monomial, Rational>) -> (BTreeMap<Monomial, Rational>, Vec<Rational>) {
        let mut x = vec![Rational::zero(); self.size];
        for (p, row, coeffs) in &self.rows {
            let Some(vp) = v.get(p).cloned() else { continue };
            let alpha = vp / &row[p];
            for (m, c) in row {
                let e = v.entry(m.clone()).or_insert_with(Rational::zero);
                *e -= &alpha * c;
                if e.is_zero() {
                    v.remove(m);
                }
            }
            for (xi, ci) in x.iter_mut().zip(coeffs) {
                *xi += &alpha * ci;
            }
        }
        (v, x)
    }

    /// Coordinates of `v`, or `None` if it is outside the span.
    pub fn coordinates(&self, v: &BTreeMap<Monomial, Rational>) -> Option<Vec<Rational>> {
        let (rest, x) = self.reduce(v.clone());
        rest.is_empty().then_some(x)
    }
}

/// Real rational coefficients of a class.
pub fn real_vector(v: &GradedClass) -> Result<BTreeMap<Monomial, Rational>> {
    v.terms()
        .map(|(m, c)| {
            if c.is_real() {
                Ok((m.clone(), c.re.clone()))
            } else {
                Err(Error::Lattice(format!("class coefficient {c} at {m} is not rational")))
            }
        })
        .collect()
}

/// Integer coordinates of classes with respect to the canonical monomial
/// order of their union support.
pub fn classes_to_columns(classes: &[GradedClass]) -> Result<(Vec<Monomial>, Vec<Vec<BigInt>>)> {
    let mut support: Vec<Monomial> = classes
        .iter()
        .flat_map(|c| c.terms().map(|(m, _)| m.clone()))
        .collect();
    support.sort();
    support.dedup();
    let mut cols = Vec::with_capacity(classes.len());
    for c in classes {
        let v = real_vector(c)?;
        let col = support
            .iter()
            .map(|m| match v.get(m) {
                None => Ok(BigInt::zero()),
                Some(r) if r.is_integer() => Ok(r.to_integer()),
                Some(r) => Err(Error::Lattice(format!(
                    "non-integral coordinate {} at {m}",
                    format_rational(r)
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        cols.push(col);
    }
    Ok((support, cols))
}

/// `[i_*]` as a lattice map from the source classes into the Künneth
/// lattice of the ambient space.
pub fn pushforward_map(sources: &[(String, GradedClass)], spec: &FiberInclusionSpec) -> Result<LatticeMap> {
    let images = sources
        .iter()
        .map(|(_, v)| fiber_pushforward(v, spec))
        .collect::<Result<Vec<_>>>()?;
    let (support, cols) = classes_to_columns(&images)?;
    Ok(LatticeMap::from_columns(
        &cols,
        support.len(),
        sources.iter().map(|(n, _)| n.clone()).collect(),
        support.iter().map(|m| m.to_string()).collect(),
    ))
}

/// `Z_0 = Z ∘ [i_*]` together with `Λ_0`.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub charge: KernelCharge,
    pub lambda0: LatticeMap,
}

/// Restricted kernel: the part of `K` with unit entries on the collapsed
/// factors, with those factors dropped.
pub fn restrict_kernel(kernel: &GradedClass, spec: &FiberInclusionSpec) -> Result<GradedClass> {
    if kernel.space() != &spec.ambient {
        return Err(Error::SpaceMismatch("charge does not live on the fiber ambient".into()));
    }
    let terms = kernel
        .terms()
        .filter_map(|(m, c)| contract_monomial(m, &spec.collapsed, Basis::Unit).map(|b| (b, c.clone())));
    GradedClass::from_terms(&spec.base, terms)
}

pub fn restrict_charge(
    charge: &CentralCharge,
    spec: &FiberInclusionSpec,
    working: &[(String, GradedClass)],
    saturate: bool,
) -> Result<Restriction> {
    let kernel = restrict_kernel(&charge.kernel()?, spec)?;
    let lambda0 = pushforward_map(working, spec)?.image_lattice(saturate);
    Ok(Restriction {
        charge: KernelCharge::new(kernel),
        lambda0,
    })
}

/// Default working lattice of a product of curves: all products of unit and
/// point classes.
pub fn even_point_lattice(space: &Arc<ProductSpace>) -> Vec<(String, GradedClass)> {
    space
        .basis()
        .into_iter()
        .filter(|m| m.parity() == 0)
        .map(|m| (m.to_string(), GradedClass::monomial(space, m, GaussianRational::one())))
        .collect()
}

/// A charge restricted to the invariant sublattice of a group.
#[derive(Clone, Debug)]
pub struct DescendedCharge {
    /// Columns are invariant classes in the coordinates of `basis`.
    pub invariant: LatticeMap,
    pub basis: Vec<GradedClass>,
    pub values: Vec<GaussianRational>,
}

impl DescendedCharge {
    pub fn invariant_classes(&self) -> Vec<GradedClass> {
        self.invariant
            .columns()
            .iter()
            .map(|col| combine(&self.basis, col))
            .collect()
    }

    /// Evaluate on integer coordinates with respect to the invariant basis.
    pub fn evaluate(&self, coords: &[BigInt]) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (x, z) in coords.iter().zip(&self.values) {
            acc += &z.scale(&Rational::from_integer(x.clone()));
        }
        acc
    }
}

pub(crate) fn combine(basis: &[GradedClass], col: &[BigInt]) -> GradedClass {
    let mut acc = GradedClass::zero(basis[0].space());
    for (b, x) in basis.iter().zip(col) {
        if !x.is_zero() {
            acc = acc
                .add(&b.scale_rational(&Rational::from_integer(x.clone())))
                .expect("same space");
        }
    }
    acc
}

pub fn descend_charge_to_quotient(
    charge: &CentralCharge,
    generators: &[ProductGroupElement],
    basis: &[GradedClass],
) -> std::result::Result<DescendedCharge, DescentError> {
    let monomials: Vec<Monomial> = basis
        .iter()
        .flat_map(|b| b.terms().map(|(m, _)| m.clone()).collect::<Vec<_>>())
        .collect();
    let check = charge_invariance_check(charge, generators, Some(&monomials))?;
    if let Some(w) = check.witness {
        return Err(DescentError::NotInvariant(Box::new(w)));
    }
    let invariant = invariant_sublattice(generators, basis)?;
    let classes: Vec<GradedClass> = invariant.columns().iter().map(|c| combine(basis, c)).collect();
    let values = classes
        .iter()
        .map(|c| charge.evaluate(c))
        .collect::<Result<Vec<_>>>()?;
    Ok(DescendedCharge {
        invariant,
        basis: basis.to_vec(),
        values,
    })
}

#[derive(Debug, thiserror::Error)]
pub enum DescentError {
    #[error("charge is not invariant: generator {} moves {:?}", .0.generator, .0.monomial)]
    NotInvariant(Box<InvarianceWitness>),
    #[error(transparent)]
    Other(#[from] Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    pub ch_is_unit: bool,
    pub twist_is_identity: bool,
    pub checked: usize,
}

/// The lift criterion: `ch(L) = 1` makes `− ⊗ L` the identity on the
/// working lattice, hence any charge is invariant under the dual action.
pub fn lift_criterion_check(ch: &GradedClass, working: &[GradedClass]) -> Result<LiftReport> {
    let unit = GradedClass::unit(ch.space());
    let ch_is_unit = *ch == unit;
    let mut twist_is_identity = true;
    for v in working {
        if v.wedge(ch)? != *v {
            twist_is_identity = false;
            break;
        }
    }
    Ok(LiftReport {
        ch_is_unit,
        twist_is_identity: ch_is_unit && twist_is_identity,
        checked: working.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum SupportConstant {
    /// `C²`, exact.
    Finite(#[serde(serialize_with = "crate::gaussian::rational_serde::serialize")] Rational),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportReport {
    pub c_squared: SupportConstant,
    /// Class (integer coordinates) attaining the maximum, or lying in `ker Z`.
    pub witness: Option<Vec<String>>,
    pub gram: Vec<Vec<String>>,
    pub checked: usize,
}

/// `C² = max ‖v‖²/|Z(v)|²` over the given coordinate vectors, with
/// `‖v‖² = vᵀ G v` and `v` interpreted against `lattice_basis`.
pub fn effective_support_constant(
    charge: &CentralCharge,
    lattice_basis: &[GradedClass],
    gram: &[Vec<Rational>],
    classes: &[Vec<BigInt>],
) -> Result<SupportReport> {
    let n = lattice_basis.len();
    if gram.len() != n || gram.iter().any(|r| r.len() != n) {
        return Err(Error::Lattice(format!("gram matrix must be {n}×{n}")));
    }
    let values = lattice_basis
        .iter()
        .map(|b| charge.evaluate(b))
        .collect::<Result<Vec<_>>>()?;
    let mut best: Option<(Rational, &Vec<BigInt>)> = None;
    for v in classes {
        if v.len() != n {
            return Err(Error::Lattice(format!("class has {} coordinates, expected {n}", v.len())));
        }
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        let x: Vec<Rational> = v.iter().map(|a| Rational::from_integer(a.clone())).collect();
        let mut norm = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                norm += &x[i] * &gram[i][j] * &x[j];
            }
        }
        if !norm.is_positive() {
            return Err(Error::Lattice("gram matrix is not positive definite".into()));
        }
        let mut z = GaussianRational::zero();
        for (xi, zi) in x.iter().zip(&values) {
            z += &zi.scale(xi);
        }
        let zz = z.norm_sqr();
        if zz.is_zero() {
            return Ok(SupportReport {
                c_squared: SupportConstant::Infinite,
                witness: Some(v.iter().map(|a| a.to_string()).collect()),
                gram: fmt_gram(gram),
                checked: classes.len(),
            });
        }
        let ratio = norm / zz;
        if best.as_ref().is_none_or(|(b, _)| ratio > *b) {
            best = Some((ratio, v));
        }
    }
    Ok(SupportReport {
        c_squared: SupportConstant::Finite(best.as_ref().map_or_else(Rational::zero, |(r, _)| r.clone())),
        witness: best.map(|(_, v)| v.iter().map(|a| a.to_string()).collect()),
        gram: fmt_gram(gram),
        checked: classes.len(),
    })
}

fn fmt_gram(gram: &[Vec<Rational>]) -> Vec<Vec<String>> {
    gram.iter().map(|r| r.iter().map(format_rational).collect()).collect()
}

pub fn identity_gram(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| (0..n).map(|j| Rational::from_integer(BigInt::from((i == j) as i64))).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charge::exp_charge;
    use crate::gaussian::int;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        LatticeMap::from_i64(rows).matrix
    }

    #[test]
    fn hnf_examples() {
        let m = LatticeMap::from_i64(&[&[2, 4], &[0, 2]]);
        assert_eq!(m.hermite_normal_form().matrix, big(&[&[2, 0], &[0, 2]]));
        let id = LatticeMap::from_i64(&[&[1, 0], &[0, 1]]);
        assert_eq!(id.hermite_normal_form().matrix, id.matrix);
        let z = LatticeMap::from_i64(&[&[0, 0], &[0, 0]]);
        assert_eq!(z.hermite_normal_form().matrix, z.matrix);
        let m = LatticeMap::from_i64(&[&[3, 5, 7], &[1, 1, 1]]);
        let h = m.hermite_normal_form();
        assert_eq!(h.matrix, big(&[&[1, 0, 0], &[1, 2, 0]]));
    }

    #[test]
    fn image_keeps_index_unless_saturated() {
        let m = LatticeMap::from_i64(&[&[2], &[0]]);
        assert_eq!(m.image_lattice(false).matrix, big(&[&[2], &[0]]));
        assert_eq!(m.image_lattice(true).matrix, big(&[&[1], &[0]]));
        let surj = LatticeMap::from_i64(&[&[1, 1], &[0, 1]]);
        assert_eq!(surj.image_lattice(false).matrix, big(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn kernel_is_saturated() {
        let k = integer_kernel(&big(&[&[2, 4]]), 2);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(BigInt::from(2) * &v[0] + BigInt::from(4) * &v[1], BigInt::zero());
        assert_eq!(v[0].abs() + v[1].abs(), BigInt::from(3));
    }

    #[test]
    fn lambda0_for_elliptic_fiber() {
        let s = ProductSpace::elliptic(2).shared();
        let i = FiberInclusionSpec::new(&s, &[1]).unwrap();
        let src = vec![
            ("O".to_string(), GradedClass::unit(&i.base)),
            ("O_x".to_string(), GradedClass::point_on(&i.base, 0)),
        ];
        let l = pushforward_map(&src, &i).unwrap().image_lattice(false);
        assert_eq!(l.ncols(), 2);
        assert_eq!(l.target, vec!["pt(2)".to_string(), "pt(1)·pt(2)".to_string()]);
        assert_eq!(l.matrix, big(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn restriction_of_exp_charge() {
        let s = ProductSpace::elliptic(2).shared();
        let i = FiberInclusionSpec::new(&s, &[1]).unwrap();
        let z2: CentralCharge = exp_charge(&s, &int(1), &int(0)).unwrap().into();
        let r = restrict_charge(&z2, &i, &even_point_lattice(&i.base), false).unwrap();
        let z1 = exp_charge(&i.base, &int(1), &int(0)).unwrap();
        assert_eq!(r.charge, z1);
        assert_eq!(
            r.charge.evaluate(&GradedClass::top(&i.base)).unwrap(),
            GaussianRational::from_int(-1)
        );
    }

    #[test]
    fn support_constant_examples() {
        let s = ProductSpace::elliptic(1).shared();
        let z: CentralCharge = exp_charge(&s, &int(1), &int(0)).unwrap().into();
        let basis = vec![GradedClass::unit(&s), GradedClass::point_on(&s, 0)];
        let classes: Vec<Vec<BigInt>> = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1)]
            .iter()
            .map(|&(r, d)| vec![BigInt::from(r), BigInt::from(d)])
            .collect();
        let rep = effective_support_constant(&z, &basis, &identity_gram(2), &classes).unwrap();
        assert_eq!(rep.c_squared, SupportConstant::Finite(int(1)));
        let rep = effective_support_constant(&z, &basis, &identity_gram(2), &[]).unwrap();
        assert_eq!(rep.c_squared, SupportConstant::Finite(int(0)));
        let degenerate: CentralCharge = KernelCharge::new(GradedClass::point_on(&s, 0)).into();
        let rep = effective_support_constant(
            &degenerate,
            &basis,
            &identity_gram(2),
            &[vec![BigInt::from(0), BigInt::from(1)]],
        )
        .unwrap();
        assert_eq!(rep.c_squared, SupportConstant::Infinite);
        assert_eq!(rep.witness, Some(vec!["0".to_string(), "1".to_string()]));
    }

    #[test]
    fn lift_examples() {
        let s = ProductSpace::elliptic(2).shared();
        let work = vec![GradedClass::unit(&s), GradedClass::top(&s)];
        let r = lift_criterion_check(&GradedClass::unit(&s), &work).unwrap();
        assert!(r.ch_is_unit && r.twist_is_identity);
        let bad = GradedClass::unit(&s).add(&GradedClass::point_on(&s, 0)).unwrap();
        assert!(!lift_criterion_check(&bad, &work).unwrap().ch_is_unit);
    }

    #[test]
    fn rational_span_coordinates() {
        let s = ProductSpace::elliptic(1).shared();
        let a = real_vector(&GradedClass::unit(&s).add(&GradedClass::point_on(&s, 0)).unwrap()).unwrap();
        let b = real_vector(&GradedClass::point_on(&s, 0)).unwrap();
        let span = RationalSpan::new(&[a, b.clone()]).unwrap();
        let target = real_vector(&GradedClass::unit(&s).scale_rational(&int(3))).unwrap();
        assert_eq!(span.coordinates(&target).unwrap(), vec![int(3), int(-3)]);
        let odd = real_vector(&GradedClass::generator(&s, 0, Basis::Odd(1))).unwrap();
        assert!(span.coordinates(&odd).is_none());
        assert!(RationalSpan::new(&[b.clone(), b]).is_err());
    }
}
