//! Correspondences `CH(X x Y)` in Künneth form, with composition
//!
//! `(f_b x g_b) o (f_a x g_a) = deg(g_a . f_b) (f_a x g_b)`.
//!
//! For basis classes `deg(g_a . f_b)` is 1 exactly when `f_b` is the
//! Poincaré dual of `g_a`, so composition reads the duality permutation.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::notation::parse_cross_terms;
use crate::schubert::{balanced_mod, format_combination, ChowElement, ChowRing};

#[derive(Clone)]
pub struct Correspondence {
    source: Arc<ChowRing>,
    target: Arc<ChowRing>,
    terms: BTreeMap<(usize, usize), i64>,
}

impl std::fmt::Debug for Correspondence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.format())
    }
}

impl PartialEq for Correspondence {
    fn eq(&self, other: &Self) -> bool {
        self.source.same_as(&other.source) && self.target.same_as(&other.target) && self.terms == other.terms
    }
}

impl Eq for Correspondence {}

fn check_same(a: &ChowRing, b: &ChowRing, what: &str) -> Result<()> {
    if a.same_as(b) {
        Ok(())
    } else {
        Err(Error::ShapeMismatch(format!("{what}: {} vs {}", a.theta(), b.theta())))
    }
}

impl Correspondence {
    pub fn zero(source: Arc<ChowRing>, target: Arc<ChowRing>) -> Self {
        Self { source, target, terms: BTreeMap::new() }
    }

    pub fn from_terms(source: Arc<ChowRing>, target: Arc<ChowRing>, terms: impl IntoIterator<Item = ((usize, usize), i64)>) -> Self {
        let mut out = Self::zero(source, target);
        for ((f, g), c) in terms {
            out.add_term(f, g, c);
        }
        out
    }

    /// Exterior product `f x g`.
    pub fn cross(source: Arc<ChowRing>, target: Arc<ChowRing>, f: &ChowElement, g: &ChowElement) -> Self {
        let terms: Vec<_> = f.terms().flat_map(|(a, ca)| g.terms().map(move |(b, cb)| ((a, b), ca * cb))).collect();
        Self::from_terms(source, target, terms)
    }

    /// Parses e.g. `1 x h1^15 + eps*h1^4 x (h1^11 + h2^11)`.
    pub fn parse(source: Arc<ChowRing>, target: Arc<ChowRing>, text: &str, eps: i64) -> Result<Self> {
        let mut out = Self::zero(source.clone(), target.clone());
        for t in parse_cross_terms(text)? {
            let f = source.resolve(&t.left)?;
            let g = target.resolve(&t.right)?;
            let c = t.coeff * if t.eps { eps } else { 1 };
            out = out.add(&Self::cross(source.clone(), target.clone(), &f, &g).scale(c))?;
        }
        Ok(out)
    }

    pub fn source(&self) -> &Arc<ChowRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ChowRing> {
        &self.target
    }

    pub fn add_term(&mut self, f: usize, g: usize, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry((f, g)).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&(f, g));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.terms.iter().map(|(&(f, g), &c)| (f, g, c))
    }

    pub fn coeff(&self, f: usize, g: usize) -> i64 {
        self.terms.get(&(f, g)).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        check_same(&self.source, &other.source, "source varieties differ")?;
        check_same(&self.target, &other.target, "target varieties differ")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (f, g, c) in other.terms() {
            out.add_term(f, g, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::from_terms(self.source.clone(), self.target.clone(), self.terms().map(|(f, g, v)| ((f, g), v * c)))
    }

    /// Total codimensions `codim f + codim g` occurring in the terms.
    pub fn total_codims(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.terms().map(|(f, g, _)| self.source.codim(f) + self.target.codim(g)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Every term has total codimension `dim X`.
    pub fn is_morphism_degree(&self) -> bool {
        self.terms().all(|(f, g, _)| self.source.codim(f) + self.target.codim(g) == self.source.dim())
    }

    /// `self o alpha`, where `alpha: X -> Y` and `self: Y -> Z`.
    pub fn compose(&self, alpha: &Correspondence) -> Result<Correspondence> {
        check_same(&alpha.target, &self.source, "middle varieties differ")?;
        let mut by_first: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
        for (f, g, c) in self.terms() {
            by_first.entry(f).or_default().push((g, c));
        }
        let mut out = Correspondence::zero(alpha.source.clone(), self.target.clone());
        for (fa, ga, ca) in alpha.terms() {
            if let Some(next) = by_first.get(&self.source.dual_index(ga)) {
                for &(gb, cb) in next {
                    out.add_term(fa, gb, ca * cb);
                }
            }
        }
        Ok(out)
    }

    /// Same composition with the inner degree taken from `ChowRing::multiply`.
    pub fn compose_via_products(&self, alpha: &Correspondence) -> Result<Correspondence> {
        check_same(&alpha.target, &self.source, "middle varieties differ")?;
        let mid = &self.source;
        let mut out = Correspondence::zero(alpha.source.clone(), self.target.clone());
        for (fa, ga, ca) in alpha.terms() {
            for (fb, gb, cb) in self.terms() {
                let d = mid.degree(&mid.multiply(&ChowElement::basis(ga), &ChowElement::basis(fb))?);
                out.add_term(fa, gb, ca * cb * d);
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Correspondence {
        Correspondence::from_terms(self.target.clone(), self.source.clone(), self.terms().map(|(f, g, c)| ((g, f), c)))
    }

    /// `sum_w [X_w] x [X_w]^vee`.
    pub fn diagonal(ring: &Arc<ChowRing>) -> Correspondence {
        Correspondence::from_terms(ring.clone(), ring.clone(), (0..ring.rank()).map(|k| ((k, ring.dual_index(k)), 1)))
    }

    /// `(f x g) . (f' x g') = (f f') x (g g')`, extended bilinearly.
    pub fn intersect(&self, other: &Correspondence) -> Result<Correspondence> {
        self.same_shape(other)?;
        let mut out = Correspondence::zero(self.source.clone(), self.target.clone());
        for (fa, ga, ca) in self.terms() {
            for (fb, gb, cb) in other.terms() {
                let f = self.source.multiply(&ChowElement::basis(fa), &ChowElement::basis(fb))?;
                let g = self.target.multiply(&ChowElement::basis(ga), &ChowElement::basis(gb))?;
                for (x, cx) in f.terms() {
                    for (y, cy) in g.terms() {
                        out.add_term(x, y, ca * cb * cx * cy);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Balanced representatives modulo `m`; `m = 0` leaves integers alone.
    pub fn mod_reduce(&self, m: i64) -> Correspondence {
        if m == 0 {
            return self.clone();
        }
        Correspondence::from_terms(self.source.clone(), self.target.clone(), self.terms().map(|(f, g, c)| ((f, g), balanced_mod(c, m))))
    }

    pub fn congruent(&self, other: &Correspondence, m: i64) -> Result<bool> {
        Ok(self.sub(other)?.mod_reduce(m).is_zero())
    }

    fn check_endomorphism(&self) -> Result<()> {
        check_same(&self.source, &self.target, "not a self-correspondence")?;
        if !self.is_morphism_degree() {
            return Err(Error::ShapeMismatch(format!("total codimensions {:?}, expected {}", self.total_codims(), self.source.dim())));
        }
        Ok(())
    }

    pub fn is_idempotent(&self, m: i64) -> Result<bool> {
        self.check_endomorphism()?;
        self.compose(self)?.congruent(self, m)
    }

    pub fn are_orthogonal(p: &Correspondence, q: &Correspondence, m: i64) -> Result<bool> {
        p.check_endomorphism()?;
        q.check_endomorphism()?;
        Ok(p.compose(q)?.mod_reduce(m).is_zero() && q.compose(p)?.mod_reduce(m).is_zero())
    }

    /// Pull-back action `x -> sum c deg(x . g) f` on `CH(Y) -> CH(X)`.
    /// For an idempotent `p` on `X` its image is the realization of
    /// `(X, p)`, graded by the codimensions of the first factors.
    pub fn realize(&self, x: &ChowElement) -> ChowElement {
        let mut out = ChowElement::zero();
        for (f, g, c) in self.terms() {
            out.add_term(f, c * x.coeff(self.target.dual_index(g)));
        }
        out
    }

    /// Push-forward action `x -> sum c deg(x . f) g` on `CH(X) -> CH(Y)`;
    /// equals `realize` of the transpose.
    pub fn push_forward(&self, x: &ChowElement) -> ChowElement {
        let mut out = ChowElement::zero();
        for (f, g, c) in self.terms() {
            out.add_term(g, c * x.coeff(self.source.dual_index(f)));
        }
        out
    }

    /// Rank over `Q` of the image of `realize`, per codimension of `X`.
    pub fn image_ranks(&self) -> Vec<usize> {
        let ring = &self.source;
        (0..=ring.dim())
            .map(|s| {
                let codim_s = ring.basis(s).expect("in range");
                let rows: Vec<Vec<i64>> = (0..self.target.rank())
                    .map(|k| {
                        let y = self.realize(&ChowElement::basis(k));
                        codim_s.iter().map(|&b| y.coeff(b)).collect()
                    })
                    .collect();
                linalg::rank(&rows)
            })
            .collect()
    }

    /// Coordinates in the basis of all `(f, g)` pairs, row-major in `g`.
    pub fn to_vector(&self) -> Vec<i64> {
        let n = self.target.rank();
        let mut v = vec![0; self.source.rank() * n];
        for (f, g, c) in self.terms() {
            v[f * n + g] = c;
        }
        v
    }

    /// Groups terms by first factor: `f x (a*g1 + b*g2) + ...`.
    pub fn format(&self) -> String {
        let mut groups: BTreeMap<(usize, String), Vec<(usize, i64)>> = BTreeMap::new();
        for (f, g, c) in self.terms() {
            groups.entry((self.source.codim(f), self.source.label(f))).or_default().push((g, c));
        }
        let mut out = String::new();
        for ((_, flabel), mut gs) in groups {
            gs.sort_by_key(|&(g, _)| (self.target.codim(g), self.target.label(g)));
            let right = format_combination(gs.iter().map(|&(g, c)| (self.target.label(g), c)));
            let (sign, body) = if gs.len() == 1 {
                let c = gs[0].1;
                let coeff = if c.abs() == 1 { String::new() } else { format!("{}*", c.abs()) };
                (c < 0, format!("{coeff}{flabel} x {}", self.target.label(gs[0].0)))
            } else {
                (false, format!("{flabel} x ({right})"))
            };
            if out.is_empty() {
                if sign {
                    out.push('-');
                }
            } else {
                out.push_str(if sign { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut terms: Vec<JsonTerm> =
            self.terms().map(|(f, g, c)| JsonTerm { f: self.source.label(f), g: self.target.label(g), coeff: c }).collect();
        terms.sort_by(|a, b| (a.f.len(), &a.f, a.g.len(), &a.g).cmp(&(b.f.len(), &b.f, b.g.len(), &b.g)));
        serde_json::to_value(JsonCorrespondence { source: RingSpec::of(&self.source), target: RingSpec::of(&self.target), terms })
            .expect("plain data serializes")
    }

    /// Reads the format written by `to_json`; the embedded ring specs must
    /// match the given rings.
    pub fn from_json(value: &serde_json::Value, source: Arc<ChowRing>, target: Arc<ChowRing>) -> Result<Self> {
        let parsed: JsonCorrespondence = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if parsed.source != RingSpec::of(&source) || parsed.target != RingSpec::of(&target) {
            return Err(Error::ShapeMismatch("ring specs in JSON do not match".into()));
        }
        let mut out = Self::zero(source.clone(), target.clone());
        for t in parsed.terms {
            let f = source.find_label(&t.f).ok_or_else(|| Error::Parse(format!("unknown class `{}`", t.f)))?;
            let g = target.find_label(&t.g).ok_or_else(|| Error::Parse(format!("unknown class `{}`", t.g)))?;
            out.add_term(f, g, t.coeff);
        }
        Ok(out)
    }

    /// One `f x g coeff` line per term, for diffs.
    pub fn term_lines(&self) -> String {
        let mut out = String::new();
        for (f, g, c) in self.terms() {
            writeln!(out, "{} x {} {c}", self.source.label(f), self.target.label(g)).unwrap();
        }
        out
    }
}

/// Root system type and theta (Bourbaki labels) identifying a ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    #[serde(rename = "type")]
    pub type_name: String,
    pub theta: Vec<usize>,
}

impl RingSpec {
    pub fn of(ring: &ChowRing) -> Self {
        Self { type_name: ring.group().root_system().name().unwrap_or("custom").to_string(), theta: ring.theta().labels() }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    f: String,
    g: String,
    coeff: i64,
}

#[derive(Serialize, Deserialize)]
struct JsonCorrespondence {
    source: RingSpec,
    target: RingSpec,
    terms: Vec<JsonTerm>,
}
