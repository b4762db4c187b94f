//! Finite groups acting on the cohomology of a product of curves.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::charge::CentralCharge;
use crate::cohomology::{symplectic_form, Basis, CurveFactor, GradedClass, Monomial, ProductSpace};
use crate::error::{Error, Result};
use crate::gaussian::{GaussianRational, Rational};
use crate::lattice::{column_echelon, integer_kernel, real_vector, LatticeMap, RationalSpan};

/// An automorphism of one curve, as an integral matrix on `e_1..e_{2g}`
/// (column convention: `M e_c = Σ_r M[r][c] e_r`).
#[derive(Clone, Debug)]
pub struct CurveAut {
    pub label: String,
    pub matrix: Vec<Vec<i64>>,
}

impl PartialEq for CurveAut {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for CurveAut {}

impl Hash for CurveAut {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

impl CurveAut {
    pub fn new(label: impl Into<String>, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let label = label.into();
        let n = matrix.len();
        if n % 2 != 0 || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Group(format!("{label}: matrix must be square of even size")));
        }
        for i in 0..n {
            for j in 0..n {
                let mut s = 0i64;
                for a in 0..n {
                    for b in 0..n {
                        s += matrix[a][i] * symplectic_form(a as u16 + 1, b as u16 + 1) * matrix[b][j];
                    }
                }
                if s != symplectic_form(i as u16 + 1, j as u16 + 1) {
                    return Err(Error::Group(format!("{label}: matrix does not preserve the symplectic form")));
                }
            }
        }
        let aut = Self { label, matrix };
        if aut.order(24).is_none() {
            return Err(Error::Group(format!("{}: automorphism has infinite order", aut.label)));
        }
        Ok(aut)
    }

    pub fn identity(genus: u32) -> Self {
        let n = 2 * genus as usize;
        Self {
            label: "id".into(),
            matrix: (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect(),
        }
    }

    pub fn inversion(genus: u32) -> Self {
        let n = 2 * genus as usize;
        Self {
            label: "inv".into(),
            matrix: (0..n).map(|i| (0..n).map(|j| -((i == j) as i64)).collect()).collect(),
        }
    }

    /// `ζ` on an elliptic curve with `j = 0`.
    pub fn order3() -> Self {
        Self {
            label: "zeta3".into(),
            matrix: vec![vec![0, -1], vec![1, -1]],
        }
    }

    /// `"id"`, `"inv"` or `"zeta3"` on a curve of the given genus.
    pub fn named(name: &str, genus: u32) -> Result<Self> {
        match name {
            "id" => Ok(Self::identity(genus)),
            "inv" => Ok(Self::inversion(genus)),
            "zeta3" if genus == 1 => Ok(Self::order3()),
            "zeta3" => Err(Error::Group(format!("zeta3 needs genus 1, got {genus}"))),
            "zeta3^2" | "zeta3inv" if genus == 1 => Ok(Self::order3().compose(&Self::order3())),
            _ => Err(Error::Group(format!("unknown automorphism {name:?}"))),
        }
    }

    pub fn genus(&self) -> u32 {
        (self.matrix.len() / 2) as u32
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.genus())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.matrix.len();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum()).collect())
            .collect();
        let label = if other.is_identity() {
            self.label.clone()
        } else if self.is_identity() {
            other.label.clone()
        } else {
            format!("{}∘{}", self.label, other.label)
        };
        Self { label, matrix }
    }

    pub fn order(&self, bound: u32) -> Option<u32> {
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_identity() {
                return Some(k);
            }
            p = p.compose(self);
        }
        None
    }

    pub fn image(&self, b: Basis) -> Vec<(i64, Basis)> {
        match b {
            Basis::Odd(c) => {
                let c = c as usize - 1;
                self.matrix
                    .iter()
                    .enumerate()
                    .filter(|(_, row)| row[c] != 0)
                    .map(|(r, row)| (row[c], Basis::Odd(r as u16 + 1)))
                    .collect()
            }
            other => vec![(1, other)],
        }
    }
}

/// `(identity, inversion, order3)` on an elliptic curve.
pub fn standard_auts() -> [CurveAut; 3] {
    [CurveAut::identity(1), CurveAut::inversion(1), CurveAut::order3()]
}

/// `(σ, A)`: the class `b_i` on factor `i` is sent to `A_i b_i` on factor `σ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductGroupElement {
    pub perm: Vec<usize>,
    pub auts: Vec<CurveAut>,
}

impl ProductGroupElement {
    pub fn new(space: &ProductSpace, perm: Vec<usize>, auts: Vec<CurveAut>) -> Result<Self> {
        let n = space.dim();
        if perm.len() != n || auts.len() != n {
            return Err(Error::Group(format!(
                "element has {} permutation entries and {} automorphisms on a {n}-fold product",
                perm.len(),
                auts.len()
            )));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Group(format!("{perm:?} is not a permutation")));
            }
        }
        for (i, (&p, a)) in perm.iter().zip(&auts).enumerate() {
            let (src, dst) = (&space.factors[i], &space.factors[p]);
            if a.genus() != src.genus {
                return Err(Error::Group(format!(
                    "{} has genus {} on {} of genus {}",
                    a.label,
                    a.genus(),
                    src.name,
                    src.genus
                )));
            }
            if !isomorphic(src, dst) {
                return Err(Error::Group(format!(
                    "permutation maps {} to non-isomorphic factor {}",
                    src.name, dst.name
                )));
            }
        }
        Ok(Self { perm, auts })
    }

    pub fn identity(space: &ProductSpace) -> Self {
        Self {
            perm: (0..space.dim()).collect(),
            auts: space.factors.iter().map(|f| CurveAut::identity(f.genus)).collect(),
        }
    }

    /// `aut` on factor `i`, identity elsewhere.
    pub fn on_factor(space: &ProductSpace, i: usize, aut: CurveAut) -> Result<Self> {
        let mut auts = Self::identity(space).auts;
        auts[i] = aut;
        Self::new(space, (0..space.dim()).collect(), auts)
    }

    /// Factor transposition `i ↔ j`.
    pub fn transposition(space: &ProductSpace, i: usize, j: usize) -> Result<Self> {
        let mut perm: Vec<usize> = (0..space.dim()).collect();
        perm.swap(i, j);
        Self::new(space, perm, Self::identity(space).auts)
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.auts.iter().all(CurveAut::is_identity)
    }

    /// `self ∘ other`, acting as `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let perm = other.perm.iter().map(|&t| self.perm[t]).collect();
        let auts = other
            .auts
            .iter()
            .zip(&other.perm)
            .map(|(b, &t)| self.auts[t].compose(b))
            .collect();
        Self { perm, auts }
    }

    pub fn act_monomial(&self, m: &Monomial) -> Vec<(i64, Monomial)> {
        let n = self.dim();
        let mut inversions = 0usize;
        for i in 0..n {
            if !m.0[i].is_odd() {
                continue;
            }
            for j in i + 1..n {
                if m.0[j].is_odd() && self.perm[i] > self.perm[j] {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        let mut out: Vec<(i64, Vec<Basis>)> = vec![(sign, vec![Basis::Unit; n])];
        for (i, b) in m.0.iter().enumerate() {
            let img = self.auts[i].image(*b);
            let p = self.perm[i];
            out = out
                .into_iter()
                .flat_map(|(c, v)| {
                    img.iter().map(move |&(k, nb)| {
                        let mut w = v.clone();
                        w[p] = nb;
                        (c * k, w)
                    })
                })
                .collect();
        }
        out.into_iter().map(|(c, v)| (c, Monomial(v))).collect()
    }

    pub fn act(&self, v: &GradedClass) -> Result<GradedClass> {
        if v.space().dim() != self.dim() {
            return Err(Error::SpaceMismatch(format!(
                "group element on {} factors applied to a class on {}",
                self.dim(),
                v.space().dim()
            )));
        }
        let mut terms: BTreeMap<Monomial, GaussianRational> = BTreeMap::new();
        for (m, c) in v.terms() {
            for (k, nm) in self.act_monomial(m) {
                let e = terms.entry(nm).or_insert_with(GaussianRational::zero);
                *e += &c.scale(&Rational::from_integer(k.into()));
            }
        }
        GradedClass::from_terms(v.space(), terms)
    }
}

fn isomorphic(a: &CurveFactor, b: &CurveFactor) -> bool {
    a.genus == b.genus && a.iso_class == b.iso_class
}

/// Closure of the generators under composition, identity first, in
/// breadth-first discovery order.
pub fn close_group(space: &ProductSpace, generators: &[ProductGroupElement], bound: usize) -> Result<Vec<ProductGroupElement>> {
    let id = ProductGroupElement::identity(space);
    let mut seen: HashSet<ProductGroupElement> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                if out.len() == bound {
                    return Err(Error::Group(format!("group closure exceeds the bound {bound}")));
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

/// Integral basis (saturated, HNF) of the classes in the span of `basis`
/// fixed by every generator. Columns are coordinates against `basis`.
pub fn invariant_sublattice(generators: &[ProductGroupElement], basis: &[GradedClass]) -> Result<LatticeMap> {
    let n = basis.len();
    let target: Vec<String> = basis.iter().map(|b| b.to_string()).collect();
    if n == 0 {
        return LatticeMap::new(vec![], vec![], target);
    }
    let fast: Option<HashMap<&Monomial, usize>> = basis
        .iter()
        .enumerate()
        .map(|(j, b)| {
            let mut t = b.terms();
            match (t.next(), t.next()) {
                (Some((m, c)), None) if c.is_one() => Some((m, j)),
                _ => None,
            }
        })
        .collect();
    let span = match fast {
        Some(_) => None,
        None => Some(RationalSpan::new(&basis.iter().map(real_vector).collect::<Result<Vec<_>>>()?)?),
    };

    // Sparse columns of (g − 1) for every generator.
    let mut columns: Vec<Vec<Vec<(usize, Rational)>>> = Vec::with_capacity(generators.len());
    for (gi, g) in generators.iter().enumerate() {
        let mut cols = Vec::with_capacity(n);
        for (j, b) in basis.iter().enumerate() {
            let image = g.act(b)?;
            let mut coords: BTreeMap<usize, Rational> = BTreeMap::new();
            let stable_err = || Error::Group(format!("basis is not stable under generator {}", gi + 1));
            match (&fast, &span) {
                (Some(index), _) => {
                    for (m, c) in image.terms() {
                        let &r = index.get(m).ok_or_else(stable_err)?;
                        if !c.is_real() {
                            return Err(stable_err());
                        }
                        coords.insert(r, c.re.clone());
                    }
                }
                (None, Some(span)) => {
                    let x = span.coordinates(&real_vector(&image)?).ok_or_else(stable_err)?;
                    coords.extend(x.into_iter().enumerate().filter(|(_, c)| !c.is_zero()));
                }
                (None, None) => unreachable!(),
            }
            *coords.entry(j).or_insert_with(Rational::zero) -= Rational::one();
            cols.push(coords.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        }
        columns.push(cols);
    }

    // Blocks coupled by some (g − 1).
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for cols in &columns {
        for (j, col) in cols.iter().enumerate() {
            for (r, _) in col {
                let (a, b) = (find(&mut parent, *r), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for j in 0..n {
        let r = find(&mut parent, j);
        blocks.entry(r).or_default().push(j);
    }

    let block_kernels: Vec<Vec<Vec<BigInt>>> = blocks
        .values()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|members| {
            let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(k, &j)| (j, k)).collect();
            let mut rows: Vec<Vec<Rational>> = Vec::new();
            for cols in &columns {
                let mut dense = vec![vec![Rational::zero(); members.len()]; members.len()];
                for (k, &j) in members.iter().enumerate() {
                    for (r, c) in &cols[j] {
                        dense[pos[r]][k] = c.clone();
                    }
                }
                rows.extend(dense.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
            }
            let int_rows: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
            integer_kernel(&int_rows, members.len())
                .into_iter()
                .map(|v| {
                    let mut full = vec![BigInt::zero(); n];
                    for (k, &j) in members.iter().enumerate() {
                        full[j] = v[k].clone();
                    }
                    full
                })
                .collect()
        })
        .collect();
    let kernel: Vec<Vec<BigInt>> = block_kernels.into_iter().flatten().collect();
    let e = column_echelon(&kernel, n);
    let cols = &e.h[..e.rank];
    let matrix = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    LatticeMap::new(matrix, (1..=e.rank).map(|k| format!("inv{k}")).collect(), target)
}

fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect()
}

/// A generator and basis monomial with `Z(g·v) ≠ Z(v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceWitness {
    pub generator: usize,
    pub monomial: Vec<String>,
    pub moved: GaussianRational,
    pub original: GaussianRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub generators: usize,
    pub checked: usize,
    pub holds: bool,
    pub witness: Option<InvarianceWitness>,
}

/// Checks `Z(g·v) = Z(v)` for every generator and every basis monomial
/// (default: the full Künneth basis).
pub fn charge_invariance_check(
    charge: &CentralCharge,
    generators: &[ProductGroupElement],
    basis: Option<&[Monomial]>,
) -> Result<InvarianceReport> {
    let space = charge.space().clone();
    let kernel = charge.kernel()?;
    let full;
    let basis = match basis {
        Some(b) => b,
        None => {
            full = space.basis();
            &full
        }
    };
    for g in generators {
        if g.dim() != space.dim() {
            return Err(Error::SpaceMismatch("generator and charge live on different products".into()));
        }
    }
    let eval = |m: &Monomial, c: i64| -> GaussianRational {
        let k = kernel.coefficient(&m.complement());
        if k.is_zero() {
            return GaussianRational::zero();
        }
        let (s, _) = m.complement().mul(m).expect("complement pairs to top");
        -k.scale(&Rational::from_integer((s * c).into()))
    };
    let mut witness = None;
    for (gi, g) in generators.iter().enumerate() {
        let found = basis.par_iter().find_first(|m| {
            let original = eval(m, 1);
            let mut moved = GaussianRational::zero();
            for (c, nm) in g.act_monomial(m) {
                moved += &eval(&nm, c);
            }
            moved != original
        });
        if let Some(m) = found {
            let original = eval(m, 1);
            let mut moved = GaussianRational::zero();
            for (c, nm) in g.act_monomial(m) {
                moved += &eval(&nm, c);
            }
            witness = Some(InvarianceWitness {
                generator: gi,
                monomial: m.symbols(),
                moved,
                original,
            });
            break;
        }
    }
    Ok(InvarianceReport {
        generators: generators.len(),
        checked: basis.len() * generators.len(),
        holds: witness.is_none(),
        witness,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupKind {
    Kummer,
    Enriques,
    Bielliptic { order: u32 },
    CynkHulek { m: u32 },
}

impl GroupKind {
    /// `kummer`, `enriques`, `bielliptic` (order 2 or 3), `cynk-hulek` (m).
    pub fn parse(kind: &str, order: Option<u32>) -> Result<Self> {
        match (kind, order) {
            ("kummer", _) => Ok(Self::Kummer),
            ("enriques", _) => Ok(Self::Enriques),
            ("bielliptic", Some(o)) => Ok(Self::Bielliptic { order: o }),
            ("bielliptic", None) => Ok(Self::Bielliptic { order: 2 }),
            ("cynk-hulek", Some(m)) => Ok(Self::CynkHulek { m }),
            ("cynk-hulek", None) => Err(Error::Group("cynk-hulek needs m".into())),
            _ => Err(Error::Unsupported(format!("group kind {kind:?}"))),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Self::Kummer => "kummer".into(),
            Self::Enriques => "enriques".into(),
            Self::Bielliptic { order } => format!("bielliptic({order})"),
            Self::CynkHulek { m } => format!("cynk-hulek({m})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct NamedGenerator {
    pub name: String,
    pub element: ProductGroupElement,
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct GroupScenario {
    pub kind: GroupKind,
    pub n: usize,
    pub space: Arc<ProductSpace>,
    pub generators: Vec<NamedGenerator>,
    /// Order of the image of the group in `GL(H*)`.
    pub expected_order: usize,
    pub order_bound: usize,
}

impl GroupScenario {
    pub fn elements(&self) -> Vec<ProductGroupElement> {
        self.generators.iter().map(|g| g.element.clone()).collect()
    }

    pub fn close(&self) -> Result<Vec<ProductGroupElement>> {
        close_group(&self.space, &self.elements(), self.order_bound)
    }
}

const TRANSLATION_NOTE: &str = "translation: acts as the identity on cohomology";

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Pairs of factors `(A_j, B_j)`, `j = 1..n`; all `A_j` isomorphic, all `B_j` isomorphic.
fn paired_space(n: usize) -> Arc<ProductSpace> {
    let mut factors = Vec::with_capacity(2 * n);
    for j in 1..=n {
        factors.push(CurveFactor::elliptic(format!("A{j}")).with_iso_class("A"));
        factors.push(CurveFactor::elliptic(format!("B{j}")).with_iso_class("B"));
    }
    ProductSpace::new(factors).shared()
}

fn block_swaps(space: &ProductSpace, n: usize) -> Result<Vec<NamedGenerator>> {
    (1..n)
        .map(|j| {
            let mut perm: Vec<usize> = (0..2 * n).collect();
            perm.swap(2 * (j - 1), 2 * j);
            perm.swap(2 * (j - 1) + 1, 2 * j + 1);
            Ok(NamedGenerator {
                name: format!("swap{j},{}", j + 1),
                element: ProductGroupElement::new(space, perm, ProductGroupElement::identity(space).auts)?,
                note: None,
            })
        })
        .collect()
}

fn block_element(space: &ProductSpace, j: usize, a: CurveAut, b: CurveAut) -> Result<ProductGroupElement> {
    let mut auts = ProductGroupElement::identity(space).auts;
    auts[2 * j] = a;
    auts[2 * j + 1] = b;
    ProductGroupElement::new(space, (0..space.dim()).collect(), auts)
}

pub fn scenario_builder(kind: GroupKind, n: usize) -> Result<GroupScenario> {
    if n == 0 {
        return Err(Error::Group("scenario needs n ≥ 1".into()));
    }
    let bound = 1_000_000;
    match kind {
        GroupKind::Kummer => {
            let space = paired_space(n);
            let mut gens = Vec::new();
            for j in 0..n {
                gens.push(NamedGenerator {
                    name: format!("t{}", j + 1),
                    element: ProductGroupElement::identity(&space),
                    note: Some(TRANSLATION_NOTE.into()),
                });
            }
            gens.extend(block_swaps(&space, n)?);
            Ok(GroupScenario {
                kind,
                n,
                space,
                generators: gens,
                expected_order: factorial(n),
                order_bound: bound,
            })
        }
        GroupKind::Enriques => {
            let space = paired_space(n);
            let mut gens = Vec::new();
            for j in 0..n {
                gens.push(NamedGenerator {
                    name: format!("-id{}", j + 1),
                    element: block_element(&space, j, CurveAut::inversion(1), CurveAut::inversion(1))?,
                    note: None,
                });
                gens.push(NamedGenerator {
                    name: format!("tau{}", j + 1),
                    element: block_element(&space, j, CurveAut::inversion(1), CurveAut::identity(1))?,
                    note: Some(format!("second component {TRANSLATION_NOTE}")),
                });
            }
            gens.extend(block_swaps(&space, n)?);
            Ok(GroupScenario {
                kind,
                n,
                space,
                generators: gens,
                expected_order: 4usize.pow(n as u32) * factorial(n),
                order_bound: bound,
            })
        }
        GroupKind::Bielliptic { order } => {
            let aut = match order {
                2 => CurveAut::inversion(1),
                3 => CurveAut::order3(),
                _ => {
                    return Err(Error::Unsupported(format!(
                        "bielliptic order {order}: only orders 2 and 3 have builders; supply matrices"
                    )))
                }
            };
            let space = paired_space(n);
            let mut gens = Vec::new();
            for j in 0..n {
                gens.push(NamedGenerator {
                    name: format!("g{}", j + 1),
                    element: block_element(&space, j, CurveAut::identity(1), aut.clone())?,
                    note: Some(format!("first component {TRANSLATION_NOTE}")),
                });
            }
            gens.extend(block_swaps(&space, n)?);
            Ok(GroupScenario {
                kind,
                n,
                space,
                generators: gens,
                expected_order: (order as usize).pow(n as u32) * factorial(n),
                order_bound: bound,
            })
        }
        GroupKind::CynkHulek { m } => {
            let (g, ginv) = match m {
                2 => (CurveAut::inversion(1), CurveAut::inversion(1)),
                3 => (CurveAut::order3(), CurveAut::order3().compose(&CurveAut::order3())),
                _ => return Err(Error::Unsupported(format!("cynk-hulek with m = {m}"))),
            };
            let space = ProductSpace::elliptic_power(n, "E").shared();
            let mut gens = Vec::new();
            for i in 0..n.saturating_sub(1) {
                let mut auts = ProductGroupElement::identity(&space).auts;
                auts[i] = g.clone();
                auts[i + 1] = ginv.clone();
                gens.push(NamedGenerator {
                    name: format!("d{},{}", i + 1, i + 2),
                    element: ProductGroupElement::new(&space, (0..n).collect(), auts)?,
                    note: None,
                });
            }
            Ok(GroupScenario {
                kind,
                n,
                space,
                generators: gens,
                expected_order: (m as usize).pow(n as u32 - 1),
                order_bound: bound,
            })
        }
    }
}
