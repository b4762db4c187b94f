//! The cohomology ring of a product of smooth projective curves over `Q(i)`.
//!
//! Each curve `C` of genus `g` contributes the basis `1, e_1, …, e_2g, pt`
//! with `e_{2k-1}·e_{2k} = pt = -e_{2k}·e_{2k-1}`; every other product of
//! positive-degree classes vanishes. A [`Monomial`] is a tensor of one basis
//! element per factor, always read in factor order. Signs of products are
//! computed relative to that order (Koszul rule for the odd generators).

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{rational_serde, GaussianRational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveFactor {
    pub name: String,
    pub genus: u32,
    /// Factors may only be permuted into each other when their labels agree.
    #[serde(default)]
    pub iso_class: String,
}

impl CurveFactor {
    pub fn new(name: impl Into<String>, genus: u32) -> Self {
        let name = name.into();
        Self {
            iso_class: name.clone(),
            name,
            genus,
        }
    }

    pub fn elliptic(name: impl Into<String>) -> Self {
        Self::new(name, 1)
    }

    pub fn with_iso_class(mut self, class: impl Into<String>) -> Self {
        self.iso_class = class.into();
        self
    }

    pub fn h1_rank(&self) -> usize {
        2 * self.genus as usize
    }

    /// Basis of `H*(C)` in the canonical intra-factor order.
    pub fn basis(&self) -> Vec<Basis> {
        let mut out = vec![Basis::Unit];
        out.extend((1..=self.h1_rank() as u16).map(Basis::Odd));
        out.push(Basis::Point);
        out
    }
}

/// `C_1 × … × C_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProductSpace {
    pub factors: Vec<CurveFactor>,
}

impl ProductSpace {
    pub fn new(factors: Vec<CurveFactor>) -> Self {
        Self { factors }
    }

    /// `n` elliptic curves `E1 … En`, pairwise non-isomorphic labels.
    pub fn elliptic(n: usize) -> Self {
        Self::new((1..=n).map(|i| CurveFactor::elliptic(format!("E{i}"))).collect())
    }

    /// `n` copies of one elliptic curve (one isomorphism class).
    pub fn elliptic_power(n: usize, name: &str) -> Self {
        Self::new(
            (1..=n)
                .map(|i| CurveFactor::elliptic(format!("{name}{i}")).with_iso_class(name))
                .collect(),
        )
    }

    pub fn with_genera(genera: &[u32]) -> Self {
        Self::new(
            genera
                .iter()
                .enumerate()
                .map(|(i, &g)| CurveFactor::new(format!("C{}", i + 1), g))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    pub fn shared(self) -> Arc<ProductSpace> {
        Arc::new(self)
    }

    /// All Künneth basis monomials, in canonical (factor-major) order.
    pub fn basis(&self) -> Vec<Monomial> {
        let mut out = vec![Monomial(Vec::with_capacity(self.dim()))];
        for f in &self.factors {
            let fb = f.basis();
            let mut next = Vec::with_capacity(out.len() * fb.len());
            for m in &out {
                for b in &fb {
                    let mut v = m.0.clone();
                    v.push(*b);
                    next.push(Monomial(v));
                }
            }
            out = next;
        }
        out
    }

    pub fn top_monomial(&self) -> Monomial {
        Monomial(vec![Basis::Point; self.dim()])
    }

    pub fn unit_monomial(&self) -> Monomial {
        Monomial(vec![Basis::Unit; self.dim()])
    }

    /// The space with the listed factor indices removed (order preserved).
    pub fn without(&self, removed: &[usize]) -> ProductSpace {
        ProductSpace::new(
            self.factors
                .iter()
                .enumerate()
                .filter(|(i, _)| !removed.contains(i))
                .map(|(_, f)| f.clone())
                .collect(),
        )
    }

    /// `self × other`.
    pub fn times(&self, other: &ProductSpace) -> ProductSpace {
        let mut f = self.factors.clone();
        f.extend(other.factors.iter().cloned());
        ProductSpace::new(f)
    }

    pub fn validate_monomial(&self, m: &Monomial) -> Result<()> {
        if m.0.len() != self.dim() {
            return Err(Error::SpaceMismatch(format!(
                "monomial has {} factors, space has {}",
                m.0.len(),
                self.dim()
            )));
        }
        for (b, f) in m.0.iter().zip(&self.factors) {
            if let Basis::Odd(j) = b {
                if *j == 0 || *j as usize > f.h1_rank() {
                    return Err(Error::SpaceMismatch(format!(
                        "e{j} does not exist on {} (genus {})",
                        f.name, f.genus
                    )));
                }
            }
        }
        Ok(())
    }
}

/// One basis element of `H*(C)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    Unit,
    /// `e_j`, 1-based.
    Odd(u16),
    Point,
}

impl Basis {
    pub fn degree(self) -> u32 {
        match self {
            Basis::Unit => 0,
            Basis::Odd(_) => 1,
            Basis::Point => 2,
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Basis::Odd(_))
    }

    pub fn symbol(self) -> String {
        match self {
            Basis::Unit => "1".into(),
            Basis::Odd(j) => format!("e{j}"),
            Basis::Point => "pt".into(),
        }
    }

    pub fn parse(s: &str) -> Result<Basis> {
        match s {
            "1" => Ok(Basis::Unit),
            "pt" => Ok(Basis::Point),
            _ => s
                .strip_prefix('e')
                .and_then(|j| j.parse::<u16>().ok())
                .filter(|j| *j > 0)
                .map(Basis::Odd)
                .ok_or_else(|| Error::Parse(format!("unknown basis symbol {s:?}"))),
        }
    }

    /// Product inside a single curve factor: `(coefficient, result)`.
    pub fn mul(self, rhs: Basis) -> Option<(i64, Basis)> {
        match (self, rhs) {
            (Basis::Unit, x) | (x, Basis::Unit) => Some((1, x)),
            (Basis::Odd(i), Basis::Odd(j)) => {
                let w = symplectic_form(i, j);
                (w != 0).then_some((w, Basis::Point))
            }
            _ => None,
        }
    }
}

/// Standard symplectic pairing on `e_1..e_2g`: `ω(e_{2k-1}, e_{2k}) = 1`.
pub fn symplectic_form(i: u16, j: u16) -> i64 {
    if i % 2 == 1 && j == i + 1 {
        1
    } else if j % 2 == 1 && i == j + 1 {
        -1
    } else {
        0
    }
}

/// A Künneth monomial: one basis element per factor, in factor order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<Basis>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|b| b.degree()).sum()
    }

    pub fn parity(&self) -> u32 {
        self.0.iter().filter(|b| b.is_odd()).count() as u32
    }

    pub fn factors(&self) -> &[Basis] {
        &self.0
    }

    /// `self · rhs` as `(sign · ω-coefficient, monomial)`, or `None` if zero.
    pub fn mul(&self, rhs: &Monomial) -> Option<(i64, Monomial)> {
        debug_assert_eq!(self.0.len(), rhs.0.len());
        let mut coeff = 1i64;
        let mut out = Vec::with_capacity(self.0.len());
        // Moving y_j past x_i for every i > j.
        let mut odd_rhs_before = 0u32;
        for (x, y) in self.0.iter().zip(&rhs.0) {
            if x.is_odd() && odd_rhs_before % 2 == 1 {
                coeff = -coeff;
            }
            let (c, b) = x.mul(*y)?;
            coeff *= c;
            out.push(b);
            if y.is_odd() {
                odd_rhs_before += 1;
            }
        }
        Some((coeff, Monomial(out)))
    }

    /// The unique monomial `c` with `c·self = ±top`.
    pub fn complement(&self) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|b| match b {
                    Basis::Unit => Basis::Point,
                    Basis::Point => Basis::Unit,
                    Basis::Odd(j) if j % 2 == 1 => Basis::Odd(j + 1),
                    Basis::Odd(j) => Basis::Odd(j - 1),
                })
                .collect(),
        )
    }

    pub fn symbols(&self) -> Vec<String> {
        self.0.iter().map(|b| b.symbol()).collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, b)| **b != Basis::Unit)
            .map(|(i, b)| format!("{}({})", b.symbol(), i + 1))
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("·"))
        }
    }
}

/// A sparse element of `H*(C_1 × … × C_n; Q(i))`.
///
/// Zero coefficients are never stored, so structural equality is equality
/// of classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedClass {
    space: Arc<ProductSpace>,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl GradedClass {
    pub fn zero(space: &Arc<ProductSpace>) -> Self {
        Self {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(space: &Arc<ProductSpace>) -> Self {
        Self::monomial(space, space.unit_monomial(), GaussianRational::one())
    }

    /// The class of a point, `pt(1)·…·pt(n)`.
    pub fn top(space: &Arc<ProductSpace>) -> Self {
        Self::monomial(space, space.top_monomial(), GaussianRational::one())
    }

    pub fn monomial(space: &Arc<ProductSpace>, m: Monomial, c: GaussianRational) -> Self {
        let mut out = Self::zero(space);
        out.add_term(m, &c);
        out
    }

    /// `pt` on factor `i`, unit elsewhere.
    pub fn point_on(space: &Arc<ProductSpace>, i: usize) -> Self {
        Self::generator(space, i, Basis::Point)
    }

    pub fn generator(space: &Arc<ProductSpace>, i: usize, b: Basis) -> Self {
        let mut m = space.unit_monomial();
        m.0[i] = b;
        Self::monomial(space, m, GaussianRational::one())
    }

    /// Build a class from raw, possibly repeated terms.
    pub fn from_terms<I>(space: &Arc<ProductSpace>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, GaussianRational)>,
    {
        let mut out = Self::zero(space);
        for (m, c) in terms {
            space.validate_monomial(&m)?;
            out.add_term(m, &c);
        }
        Ok(out)
    }

    /// Product of generators taken in the given order, e.g.
    /// `[(1, e1), (0, e1)]` is `e1(2)·e1(1) = −e1(1)·e1(2)`.
    pub fn from_word(space: &Arc<ProductSpace>, word: &[(usize, Basis)]) -> Result<Self> {
        let mut acc = Self::unit(space);
        for &(i, b) in word {
            if i >= space.dim() {
                return Err(Error::SpaceMismatch(format!("factor index {i} out of range")));
            }
            let g = Self::generator(space, i, b);
            space.validate_monomial(g.terms.keys().next().expect("generator is nonzero"))?;
            acc = acc.wedge(&g)?;
        }
        Ok(acc)
    }

    /// Canonical form of the same class. Idempotent.
    pub fn normalize(&self) -> Self {
        let mut out = Self::zero(&self.space);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn space(&self) -> &Arc<ProductSpace> {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn check_same_space(&self, other: &GradedClass) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch(format!(
                "{} factors vs {} factors",
                self.space.dim(),
                other.space.dim()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedClass) -> Result<GradedClass> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GradedClass) -> Result<GradedClass> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GradedClass {
        self.scale(&-GaussianRational::one())
    }

    pub fn scale(&self, c: &GaussianRational) -> GradedClass {
        if c.is_zero() {
            return Self::zero(&self.space);
        }
        GradedClass {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> GradedClass {
        self.scale(&GaussianRational::real(r.clone()))
    }

    /// Cup product.
    pub fn wedge(&self, other: &GradedClass) -> Result<GradedClass> {
        self.check_same_space(other)?;
        let mut out = Self::zero(&self.space);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((sign, m)) = a.mul(b) {
                    let c = (ca * cb).scale(&Rational::from_integer(sign.into()));
                    out.add_term(m, &c);
                }
            }
        }
        Ok(out)
    }

    /// `∫ v`: the coefficient of `pt(1)·…·pt(n)`.
    pub fn integrate(&self) -> GaussianRational {
        self.coefficient(&self.space.top_monomial())
    }

    /// `∫ self·other` without forming the product.
    pub fn pair(&self, other: &GradedClass) -> Result<GaussianRational> {
        self.check_same_space(other)?;
        let mut acc = GaussianRational::zero();
        for (m, c) in &other.terms {
            let comp = m.complement();
            if let Some(k) = self.terms.get(&comp) {
                let (sign, _) = comp.mul(m).expect("complement pairs to top");
                let t = k * c;
                if sign > 0 {
                    acc += &t;
                } else {
                    acc -= &t;
                }
            }
        }
        Ok(acc)
    }

    /// Homogeneous part of the given degree.
    pub fn degree_part(&self, d: u32) -> GradedClass {
        GradedClass {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|m| m.degree()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    /// `Σ_k v^k / k!` for a nilpotent `v` of even positive degree.
    pub fn exp_nilpotent(&self) -> Result<GradedClass> {
        if let Some(m) = self.terms.keys().find(|m| m.degree() % 2 == 1 || m.degree() == 0) {
            return Err(Error::Domain(format!(
                "exp needs even positive degree, found {m} in degree {}",
                m.degree()
            )));
        }
        let mut acc = Self::unit(&self.space);
        let mut power = Self::unit(&self.space);
        let mut k = 0i64;
        loop {
            k += 1;
            power = power
                .wedge(self)?
                .scale_rational(&Rational::new(1.into(), k.into()));
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power)?;
        }
        Ok(acc)
    }

    /// `true` if the coefficient field of every term is real.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussianRational::is_real)
    }

    /// Split into real and imaginary parts, `v = re + i·im`.
    pub fn split_re_im(&self) -> (GradedClass, GradedClass) {
        let mut re = Self::zero(&self.space);
        let mut im = Self::zero(&self.space);
        for (m, c) in &self.terms {
            re.add_term(m.clone(), &GaussianRational::real(c.re.clone()));
            im.add_term(m.clone(), &GaussianRational::real(c.im.clone()));
        }
        (re, im)
    }

    pub fn to_json(&self) -> Vec<ClassTermJson> {
        self.terms
            .iter()
            .map(|(m, c)| ClassTermJson {
                factors: m.symbols(),
                re: c.re.clone(),
                im: c.im.clone(),
            })
            .collect()
    }

    pub fn from_json(space: &Arc<ProductSpace>, terms: &[ClassTermJson]) -> Result<Self> {
        let mut parsed = Vec::with_capacity(terms.len());
        for t in terms {
            let m = Monomial(
                t.factors
                    .iter()
                    .map(|s| Basis::parse(s))
                    .collect::<Result<Vec<_>>>()?,
            );
            parsed.push((m, GaussianRational::new(t.re.clone(), t.im.clone())));
        }
        Self::from_terms(space, parsed)
    }
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c})·{m}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// One term of the JSON class form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassTermJson {
    pub factors: Vec<String>,
    #[serde(with = "rational_serde")]
    pub re: Rational,
    #[serde(with = "rational_serde")]
    pub im: Rational,
}

/// `H = Σ_i pt(i)`, the first Chern class of the exterior product of the
/// degree-one polarizations.
pub fn hyperplane_class(space: &Arc<ProductSpace>) -> GradedClass {
    let mut out = GradedClass::zero(space);
    for i in 0..space.dim() {
        let mut m = space.unit_monomial();
        m.0[i] = Basis::Point;
        out.add_term(m, &GaussianRational::one());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::int;

    fn e2() -> Arc<ProductSpace> {
        ProductSpace::elliptic(2).shared()
    }

    #[test]
    fn symplectic_pairing_on_one_factor() {
        let s = ProductSpace::elliptic(1).shared();
        let e1 = GradedClass::generator(&s, 0, Basis::Odd(1));
        let e2 = GradedClass::generator(&s, 0, Basis::Odd(2));
        assert_eq!(e1.wedge(&e2).unwrap(), GradedClass::point_on(&s, 0));
        assert_eq!(e2.wedge(&e1).unwrap(), GradedClass::point_on(&s, 0).neg());
        assert!(e1.wedge(&e1).unwrap().is_zero());
    }

    #[test]
    fn koszul_sign_across_factors() {
        let s = e2();
        let a = GradedClass::generator(&s, 0, Basis::Odd(1));
        let b = GradedClass::generator(&s, 1, Basis::Odd(1));
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        assert_eq!(ab, ba.neg());
        let word = GradedClass::from_word(&s, &[(1, Basis::Odd(1)), (0, Basis::Odd(1))]).unwrap();
        assert_eq!(word, ba);
    }

    #[test]
    fn integrate_normalization_and_degree() {
        let s = e2();
        assert_eq!(GradedClass::top(&s).integrate(), GaussianRational::one());
        let h = hyperplane_class(&s);
        assert_eq!(h.wedge(&h).unwrap().integrate(), GaussianRational::from_int(2));
        assert!(h.integrate().is_zero());
        assert!(GradedClass::unit(&s).integrate().is_zero());
    }

    #[test]
    fn exp_examples() {
        let s = e2();
        assert_eq!(GradedClass::zero(&s).exp_nilpotent().unwrap(), GradedClass::unit(&s));
        let h = hyperplane_class(&s);
        let k = h.scale(&-GaussianRational::i()).exp_nilpotent().unwrap();
        // 1 − i(pt1+pt2) − pt1·pt2
        let expected = GradedClass::unit(&s)
            .add(&h.scale(&-GaussianRational::i()))
            .unwrap()
            .add(&GradedClass::top(&s).neg())
            .unwrap();
        assert_eq!(k, expected);
        let l = GradedClass::point_on(&s, 1);
        assert_eq!(
            l.exp_nilpotent().unwrap(),
            GradedClass::unit(&s).add(&l).unwrap()
        );
    }

    #[test]
    fn exp_rejects_odd_or_constant_parts() {
        let s = e2();
        assert!(GradedClass::unit(&s).exp_nilpotent().is_err());
        assert!(GradedClass::generator(&s, 0, Basis::Odd(2)).exp_nilpotent().is_err());
    }

    #[test]
    fn hyperplane_power_is_factorial() {
        for n in 1..=5usize {
            let s = ProductSpace::elliptic(n).shared();
            let h = hyperplane_class(&s);
            let mut p = GradedClass::unit(&s);
            for _ in 0..n {
                p = p.wedge(&h).unwrap();
            }
            let fact: i64 = (1..=n as i64).product();
            assert_eq!(p.integrate(), GaussianRational::from_int(fact));
        }
    }

    #[test]
    fn genus_two_basis_and_pairing() {
        let s = ProductSpace::with_genera(&[2]).shared();
        assert_eq!(s.basis().len(), 6);
        let e3 = GradedClass::generator(&s, 0, Basis::Odd(3));
        let e4 = GradedClass::generator(&s, 0, Basis::Odd(4));
        let e1 = GradedClass::generator(&s, 0, Basis::Odd(1));
        assert_eq!(e3.wedge(&e4).unwrap().integrate(), GaussianRational::one());
        assert!(e1.wedge(&e4).unwrap().is_zero());
    }

    #[test]
    fn mismatched_spaces_are_rejected() {
        let a = GradedClass::unit(&e2());
        let b = GradedClass::unit(&ProductSpace::elliptic(3).shared());
        assert!(a.wedge(&b).is_err());
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = e2();
        let v = GradedClass::from_word(&s, &[(1, Basis::Odd(2)), (0, Basis::Odd(1))])
            .unwrap()
            .add(&GradedClass::top(&s).scale_rational(&int(3)))
            .unwrap();
        let j = serde_json::to_string(&v.to_json()).unwrap();
        let back: Vec<ClassTermJson> = serde_json::from_str(&j).unwrap();
        assert_eq!(GradedClass::from_json(&s, &back).unwrap(), v);
    }

    #[test]
    fn invalid_odd_index_rejected() {
        let s = e2();
        let m = Monomial(vec![Basis::Odd(3), Basis::Unit]);
        assert!(GradedClass::from_terms(&s, [(m, GaussianRational::one())]).is_err());
    }
}
