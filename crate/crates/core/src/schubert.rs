//! Chow rings `CH(G/P_theta)` in the Schubert basis.
//!
//! A class is indexed by a minimal coset representative `v` in `W^theta`
//! and has codimension `l(v)`. In the maximal-representative convention
//! this is the cycle `[X_w]` with `w = w0 v` in `^theta W`, of codimension
//! `l(w0) - l(w)`. Every ring is treated as a subring of `CH(G/B)`: the
//! Chevalley formula and the Giambelli lift / `c` map are evaluated in the
//! full flag variety and the results are checked to land back in the subring.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::poly::{RationalPolynomial, WeightPolynomials};
use crate::rootsystem::{Root, Weight};
use crate::weyl::{ParabolicSubset, WeylElement, WeylGroup};

/// Data of the full flag variety `G/B` shared by all of its parabolic
/// quotients: the Weyl group, divided differences, root reflections and the
/// memoized Giambelli chain `y -> Delta_y(d/|W|)`.
pub struct FlagVariety {
    polys: Arc<WeightPolynomials>,
    /// For each element (by position), its smallest left descent `i` and the
    /// position of `s_i y`.
    left_parent: Vec<Option<(usize, usize)>>,
    by_length: Vec<Vec<usize>>,
    reflections: Vec<(Root, WeylElement)>,
    top: RationalPolynomial,
    chain: Mutex<HashMap<usize, Arc<RationalPolynomial>>>,
}

impl fmt::Debug for FlagVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FlagVariety").field("order", &self.left_parent.len()).finish()
    }
}

impl FlagVariety {
    pub fn new(group: Arc<WeylGroup>) -> Self {
        let polys = Arc::new(WeightPolynomials::new(group.clone()));
        let elements = group.elements();
        let max_len = elements.last().map_or(0, WeylElement::length);
        let mut by_length = vec![Vec::new(); max_len + 1];
        let left_parent = elements
            .iter()
            .enumerate()
            .map(|(k, y)| {
                by_length[y.length()].push(k);
                (0..group.rank()).find_map(|i| {
                    let sy = group.simple_mul(i, y);
                    (sy.length() < y.length()).then(|| (i, group.position(&sy).expect("closed under products")))
                })
            })
            .collect();
        let reflections = group
            .root_system()
            .positive_roots()
            .iter()
            .map(|b| (b.clone(), group.reflection(b).expect("positive roots are roots")))
            .collect();
        let order = BigRational::from_integer(BigInt::from(group.order()));
        let top = polys.positive_root_product().scale(&order.recip());
        let mut chain = HashMap::new();
        chain.insert(0, Arc::new(top.clone()));
        Self { polys, left_parent, by_length, reflections, top, chain: Mutex::new(chain) }
    }

    pub fn named(name: &str) -> Result<Arc<Self>> {
        Ok(Arc::new(Self::new(Arc::new(WeylGroup::named(name)?))))
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        self.polys.group()
    }

    pub fn polynomials(&self) -> &Arc<WeightPolynomials> {
        &self.polys
    }

    /// `d / |W|`.
    pub fn normalized_root_product(&self) -> &RationalPolynomial {
        &self.top
    }

    /// `Delta_y(d/|W|)`, memoized along left-descent chains.
    pub fn giambelli_chain(&self, y: &WeylElement) -> Result<Arc<RationalPolynomial>> {
        let pos = self.group().position(y).ok_or(Error::MixedSystems)?;
        let mut pending = Vec::new();
        let mut cur = pos;
        let mut value = loop {
            if let Some(v) = self.chain.lock().unwrap().get(&cur) {
                break v.clone();
            }
            let (i, parent) = self.left_parent[cur].expect("identity is cached");
            pending.push((cur, i));
            cur = parent;
        };
        while let Some((k, i)) = pending.pop() {
            value = Arc::new(self.polys.divided_difference(i, &value)?);
            self.chain.lock().unwrap().insert(k, value.clone());
        }
        Ok(value)
    }

    /// `c(u) = sum_{l(x) = deg u} Delta_x(u) [x]` over the full flag
    /// variety, returned as (element position, coefficient) pairs.
    pub fn c_map(&self, u: &RationalPolynomial) -> Result<Vec<(usize, BigRational)>> {
        if u.is_zero() {
            return Ok(Vec::new());
        }
        let k = u.homogeneous_degree().ok_or(Error::NotHomogeneous)? as usize;
        if k >= self.by_length.len() {
            return Ok(Vec::new());
        }
        let mut level: HashMap<usize, RationalPolynomial> = HashMap::from([(0, u.clone())]);
        for len in 1..=k {
            let mut next = HashMap::new();
            for &x in &self.by_length[len] {
                let (i, parent) = self.left_parent[x].expect("non-identity");
                if let Some(p) = level.get(&parent) {
                    let v = self.polys.divided_difference(i, p)?;
                    if !v.is_zero() {
                        next.insert(x, v);
                    }
                }
            }
            level = next;
        }
        let mut out: Vec<(usize, BigRational)> =
            level.into_iter().map(|(x, v)| (x, v.as_constant().expect("degree-zero result is constant"))).collect();
        out.sort_by_key(|(x, _)| *x);
        Ok(out)
    }
}

/// A basis element of a Chow ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchubertClass {
    pub index: usize,
    pub codim: usize,
    /// Minimal coset representative (Hasse-diagram vertex).
    pub min_rep: WeylElement,
    /// Maximal-length representative `w0 * min_rep` in `^theta W`.
    pub rep: WeylElement,
}

/// Integer combination of Schubert classes, keyed by basis index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ChowElement {
    terms: BTreeMap<usize, i64>,
}

impl ChowElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(index: usize) -> Self {
        Self::term(index, 1)
    }

    pub fn term(index: usize, coeff: i64) -> Self {
        let mut x = Self::zero();
        x.add_term(index, coeff);
        x
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut x = Self::zero();
        for (k, c) in terms {
            x.add_term(k, c);
        }
        x
    }

    pub fn add_term(&mut self, index: usize, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.terms.entry(index).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&index);
        }
    }

    pub fn coeff(&self, index: usize) -> i64 {
        self.terms.get(&index).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::from_terms(self.terms().map(|(k, v)| (k, v * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }
}

/// The Chow ring of `G/P_theta`.
pub struct ChowRing {
    flag: Arc<FlagVariety>,
    theta: ParabolicSubset,
    basis: Vec<SchubertClass>,
    index: HashMap<WeylElement, usize>,
    by_codim: Vec<Vec<usize>>,
    dual: Vec<usize>,
    labels: Option<Vec<String>>,
    products: Mutex<HashMap<(usize, usize), ChowElement>>,
}

impl fmt::Debug for ChowRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChowRing").field("theta", &self.theta).field("rank", &self.basis.len()).finish()
    }
}

impl ChowRing {
    pub fn new(flag: Arc<FlagVariety>, theta: ParabolicSubset) -> Result<Self> {
        let group = flag.group().clone();
        if let Some(bad) = theta.iter().find(|&i| i >= group.rank()) {
            return Err(Error::NodeOutOfRange { index: bad, rank: group.rank() });
        }
        let w0 = group.longest();
        let w_theta = group.longest_element(&theta);
        let reps = group.minimal_coset_reps(&theta);
        let dim = reps.last().map_or(0, WeylElement::length);
        let mut by_codim = vec![Vec::new(); dim + 1];
        let mut index = HashMap::new();
        let mut basis = Vec::with_capacity(reps.len());
        for (k, v) in reps.into_iter().enumerate() {
            by_codim[v.length()].push(k);
            index.insert(v.clone(), k);
            let rep = group.multiply(&w0, &v)?;
            basis.push(SchubertClass { index: k, codim: v.length(), min_rep: v, rep });
        }
        // [X_w] [X_w'] = delta_{w, w0 w' w_theta} [pt]; in minimal reps the
        // dual of v is w0 v w_theta.
        let dual = basis
            .iter()
            .map(|c| {
                let d = group.multiply(&group.multiply(&w0, &c.min_rep)?, &w_theta)?;
                index.get(&d).copied().ok_or_else(|| Error::Consistency("dual class outside W^theta".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { flag, theta, basis, index, by_codim, dual, labels: None, products: Mutex::new(HashMap::new()) })
    }

    pub fn named(name: &str, theta: ParabolicSubset) -> Result<Self> {
        Self::new(FlagVariety::named(name)?, theta)
    }

    pub fn flag(&self) -> &Arc<FlagVariety> {
        &self.flag
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        self.flag.group()
    }

    pub fn theta(&self) -> &ParabolicSubset {
        &self.theta
    }

    pub fn dim(&self) -> usize {
        self.by_codim.len() - 1
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn class(&self, index: usize) -> &SchubertClass {
        &self.basis[index]
    }

    pub fn classes(&self) -> &[SchubertClass] {
        &self.basis
    }

    pub fn index_of(&self, min_rep: &WeylElement) -> Option<usize> {
        self.index.get(min_rep).copied()
    }

    pub fn codim(&self, index: usize) -> usize {
        self.basis[index].codim
    }

    pub fn ranks_by_codim(&self) -> Vec<usize> {
        self.by_codim.iter().map(Vec::len).collect()
    }

    pub fn basis(&self, codim: usize) -> Result<&[usize]> {
        self.by_codim.get(codim).map(Vec::as_slice).ok_or(Error::CodimOutOfRange { codim, dim: self.dim() })
    }

    pub fn unit_index(&self) -> usize {
        self.by_codim[0][0]
    }

    pub fn point_index(&self) -> usize {
        self.by_codim[self.dim()][0]
    }

    pub fn unit(&self) -> ChowElement {
        ChowElement::basis(self.unit_index())
    }

    pub fn point(&self) -> ChowElement {
        ChowElement::basis(self.point_index())
    }

    /// Poincaré-dual basis index.
    pub fn dual_index(&self, index: usize) -> usize {
        self.dual[index]
    }

    /// Common codimension of all terms; `None` for zero or mixed elements.
    pub fn codim_of(&self, x: &ChowElement) -> Option<usize> {
        let mut codims = x.terms().map(|(k, _)| self.codim(k));
        let first = codims.next()?;
        codims.all(|c| c == first).then_some(first)
    }

    /// Codimension-`c` component.
    pub fn component(&self, x: &ChowElement, codim: usize) -> ChowElement {
        ChowElement::from_terms(x.terms().filter(|(k, _)| self.codim(*k) == codim))
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.rank() {
            return Err(Error::ShapeMismatch(format!("{} labels for {} classes", labels.len(), self.rank())));
        }
        self.labels = Some(labels);
        Ok(())
    }

    pub fn has_labels(&self) -> bool {
        self.labels.is_some()
    }

    /// Assigned label when assigned, otherwise the reduced word of the
    /// minimal representative.
    pub fn label(&self, index: usize) -> String {
        match &self.labels {
            Some(l) => l[index].clone(),
            None => self.group().compact_word(&self.basis[index].min_rep),
        }
    }

    /// Resolves an assigned label, `1` for the unit, or a reduced word.
    pub fn find_label(&self, label: &str) -> Option<usize> {
        let label = label.trim();
        if let Some(labels) = &self.labels {
            if let Some(k) = labels.iter().position(|l| l == label) {
                return Some(k);
            }
        }
        if label == "1" {
            return Some(self.unit_index());
        }
        self.group().parse_word(label).ok().and_then(|w| self.index_of(&w))
    }

    /// Parses `2*h2^4 + h1^4` against this ring's labels.
    pub fn parse_element(&self, text: &str) -> Result<ChowElement> {
        self.resolve(&crate::notation::parse_combination(text)?)
    }

    pub fn resolve(&self, combination: &[(i64, String)]) -> Result<ChowElement> {
        let mut out = ChowElement::zero();
        for (c, label) in combination {
            let k = self.find_label(label).ok_or_else(|| Error::Parse(format!("unknown class `{label}` in {}", self.theta)))?;
            out.add_term(k, *c);
        }
        Ok(out)
    }

    /// Same Cartan data and theta.
    pub fn same_as(&self, other: &ChowRing) -> bool {
        std::ptr::eq(self, other) || (self.group().fingerprint() == other.group().fingerprint() && self.theta == other.theta)
    }

    pub fn format(&self, x: &ChowElement) -> String {
        let mut terms: Vec<(usize, i64)> = x.terms().collect();
        terms.sort_by_key(|&(k, _)| (self.codim(k), self.label(k)));
        format_combination(terms.into_iter().map(|(k, c)| (self.label(k), c)))
    }

    /// Coefficient of the point class.
    pub fn degree(&self, x: &ChowElement) -> i64 {
        x.coeff(self.point_index())
    }

    /// Poincaré pairing from the delta formula, extended bilinearly.
    pub fn duality_pair(&self, x: &ChowElement, y: &ChowElement) -> Result<i64> {
        if x.is_zero() || y.is_zero() {
            return Ok(0);
        }
        let (cx, cy) = match (self.codim_of(x), self.codim_of(y)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::NotHomogeneous),
        };
        if cx + cy != self.dim() {
            return Err(Error::NotComplementary(cx, cy));
        }
        Ok(x.terms().map(|(k, c)| c * y.coeff(self.dual[k])).sum())
    }

    /// `[X_{w0 s_alpha}] * x` by the Chevalley formula, evaluated in `G/B`.
    pub fn chevalley_mult(&self, alpha: usize, x: &ChowElement) -> Result<ChowElement> {
        let group = self.group();
        if alpha >= group.rank() {
            return Err(Error::NodeOutOfRange { index: alpha, rank: group.rank() });
        }
        if self.theta.contains(alpha) {
            return Err(Error::ShapeMismatch(format!("node {} lies in theta; its divisor is not in the ring", alpha + 1)));
        }
        let rs = group.root_system();
        let omega = Weight::fundamental(group.rank(), alpha);
        let mut out = ChowElement::zero();
        for (k, c) in x.terms() {
            let v = &self.basis[k].min_rep;
            for (beta, s_beta) in &self.flag.reflections {
                let vs = group.multiply(v, s_beta)?;
                if vs.length() != v.length() + 1 {
                    continue;
                }
                let m = rs.coroot_pairing(beta, &omega)?;
                if m == 0 {
                    continue;
                }
                let target = self
                    .index_of(&vs)
                    .ok_or_else(|| Error::Consistency(format!("Chevalley term {} outside W^theta", group.word_string(&vs))))?;
                out.add_term(target, c * m);
            }
        }
        Ok(out)
    }

    /// Divisor class `[X_{w0 s_alpha}]` as a basis index.
    pub fn divisor_index(&self, alpha: usize) -> Result<usize> {
        let s = self.group().simple_reflection(alpha)?;
        self.index_of(s).ok_or_else(|| Error::ShapeMismatch(format!("node {} lies in theta", alpha + 1)))
    }

    /// Canonical Giambelli lift `Delta_{w^-1}(d/|W|)` of `[X_w]`, with
    /// `w^-1 = v^-1 w0` for the minimal representative `v`.
    pub fn giambelli_lift(&self, index: usize) -> Result<Arc<RationalPolynomial>> {
        let group = self.group();
        let y = group.multiply(&group.inverse(&self.basis[index].min_rep), &group.longest())?;
        self.flag.giambelli_chain(&y)
    }

    pub fn lift(&self, x: &ChowElement) -> Result<RationalPolynomial> {
        let mut out = RationalPolynomial::zero(self.group().rank());
        for (k, c) in x.terms() {
            out = &out + &self.giambelli_lift(k)?.scale(&BigRational::from_integer(c.into()));
        }
        Ok(out)
    }

    /// The `c` map restricted to this ring: coefficients on classes outside
    /// `W^theta` must vanish and all coefficients must be integers.
    pub fn c_map(&self, u: &RationalPolynomial) -> Result<ChowElement> {
        let group = self.group();
        let mut out = ChowElement::zero();
        for (x, coeff) in self.flag.c_map(u)? {
            let w = &group.elements()[x];
            let label = || group.word_string(w);
            if !coeff.is_integer() {
                return Err(Error::NotInImageLattice { class: label(), coeff: coeff.to_string() });
            }
            let c = coeff.to_integer().to_i64().ok_or_else(|| Error::Consistency("coefficient overflow".into()))?;
            let k =
                self.index_of(w).ok_or_else(|| Error::Consistency(format!("c map leaves the subring: coefficient {c} on {}", label())))?;
            out.add_term(k, c);
        }
        Ok(out)
    }

    fn basis_product(&self, a: usize, b: usize) -> Result<ChowElement> {
        let key = (a.min(b), a.max(b));
        if let Some(p) = self.products.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let product = if self.codim(a) + self.codim(b) > self.dim() {
            ChowElement::zero()
        } else {
            let u = &*self.giambelli_lift(a)? * &*self.giambelli_lift(b)?;
            self.c_map(&u)?
        };
        self.products.lock().unwrap().insert(key, product.clone());
        Ok(product)
    }

    /// `c(lift(x) * lift(y))`, bilinear over basis products (memoized).
    pub fn multiply(&self, x: &ChowElement, y: &ChowElement) -> Result<ChowElement> {
        let mut out = ChowElement::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                for (k, c) in self.basis_product(a, b)?.terms() {
                    out.add_term(k, ca * cb * c);
                }
            }
        }
        Ok(out)
    }

    pub fn power(&self, x: &ChowElement, e: u32) -> Result<ChowElement> {
        let mut acc = self.unit();
        for _ in 0..e {
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }

    /// `deg(x * y)` for basis classes, read off the duality table.
    pub fn pairing_of_classes(&self, a: usize, b: usize) -> i64 {
        i64::from(self.dual[a] == b)
    }
}

/// Renders `[(label, coeff)]` as `2*h2^4 + h1^4`, omitting unit coefficients.
pub fn format_combination(terms: impl IntoIterator<Item = (String, i64)>) -> String {
    let mut out = String::new();
    for (k, (label, c)) in terms.into_iter().enumerate() {
        let sign = if c < 0 { "-" } else { "+" };
        if k == 0 {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if c.abs() != 1 {
            out.push_str(&format!("{}*", c.abs()));
        }
        out.push_str(&label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl ChowElement {
    /// Reduction to balanced representatives modulo `m` (`m = 0` is a no-op).
    pub fn reduce_mod(&self, m: i64) -> Self {
        if m == 0 {
            return self.clone();
        }
        Self::from_terms(self.terms().map(|(k, c)| (k, balanced_mod(c, m))))
    }
}

/// Representative of `c mod m` in `(-m/2, m/2]`; `m = 0` means no reduction.
pub fn balanced_mod(c: i64, m: i64) -> i64 {
    if m == 0 {
        return c;
    }
    let r = c.rem_euclid(m);
    if 2 * r > m {
        r - m
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1() -> ChowRing {
        ChowRing::named("F4", ParabolicSubset::new([1, 2, 3])).unwrap()
    }

    #[test]
    fn f4_p1_shape() {
        let r = p1();
        assert_eq!(r.dim(), 15);
        assert_eq!(r.rank(), 24);
        assert_eq!(r.ranks_by_codim(), vec![1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1]);
        assert_eq!(r.basis(0).unwrap().len(), 1);
        assert!(r.class(r.unit_index()).min_rep.is_identity());
        assert_eq!(r.class(r.unit_index()).rep, r.group().longest());
        assert!(matches!(r.basis(16), Err(Error::CodimOutOfRange { .. })));
    }

    #[test]
    fn pairing_is_a_permutation() {
        let r = p1();
        for s in 0..=15 {
            for &a in r.basis(s).unwrap() {
                let hits: Vec<usize> = r
                    .basis(15 - s)
                    .unwrap()
                    .iter()
                    .copied()
                    .filter(|&b| r.duality_pair(&ChowElement::basis(a), &ChowElement::basis(b)).unwrap() == 1)
                    .collect();
                assert_eq!(hits, vec![r.dual_index(a)]);
            }
        }
        assert_eq!(r.duality_pair(&r.unit(), &r.point()).unwrap(), 1);
        assert!(matches!(r.duality_pair(&r.unit(), &r.unit()), Err(Error::NotComplementary(0, 0))));
    }

    #[test]
    fn chevalley_with_unit_gives_divisor() {
        let r = p1();
        let h = r.divisor_index(0).unwrap();
        assert_eq!(r.chevalley_mult(0, &r.unit()).unwrap(), ChowElement::basis(h));
        assert!(r.chevalley_mult(1, &r.unit()).is_err());
        assert!(r.chevalley_mult(0, &r.point()).unwrap().is_zero());
    }

    #[test]
    fn lift_round_trip_and_normalisation() {
        let r = ChowRing::named("B2", ParabolicSubset::empty()).unwrap();
        let top = r.giambelli_lift(r.point_index()).unwrap();
        assert_eq!(top.homogeneous_degree(), Some(4));
        assert_eq!(*r.giambelli_lift(r.unit_index()).unwrap(), RationalPolynomial::one(2));
        for k in 0..r.rank() {
            let lift = r.giambelli_lift(k).unwrap();
            assert_eq!(r.c_map(&lift).unwrap(), ChowElement::basis(k));
        }
        assert_eq!(r.c_map(&RationalPolynomial::one(2)).unwrap(), r.unit());
    }

    #[test]
    fn c_map_rejects_fractions_and_mixed_degrees() {
        let r = ChowRing::named("A2", ParabolicSubset::empty()).unwrap();
        let half = RationalPolynomial::parse("1/2*w1", 2).unwrap();
        assert!(matches!(r.c_map(&half), Err(Error::NotInImageLattice { .. })));
        let mixed = RationalPolynomial::parse("w1 + 1", 2).unwrap();
        assert_eq!(r.c_map(&mixed), Err(Error::NotHomogeneous));
    }

    #[test]
    fn balanced_representatives() {
        assert_eq!(balanced_mod(8, 3), -1);
        assert_eq!(balanced_mod(-8, 3), 1);
        assert_eq!(balanced_mod(6, 3), 0);
        assert_eq!(balanced_mod(2, 3), -1);
        assert_eq!(balanced_mod(7, 0), 7);
    }

    #[test]
    fn formatting() {
        assert_eq!(format_combination([("h2^4".to_string(), 2), ("h1^4".to_string(), 1)]), "2*h2^4 + h1^4");
        assert_eq!(format_combination([("a".to_string(), -1), ("b".to_string(), -3)]), "-a - 3*b");
        assert_eq!(format_combination(Vec::<(String, i64)>::new()), "0");
    }
}
