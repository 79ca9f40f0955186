//! Weyl group arithmetic on images of simple roots.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::rootsystem::{Root, RootSystem};

/// A Weyl group element stored as the images `w(alpha_1), .., w(alpha_n)`.
///
/// Equality and hashing are canonical; reduced words are derived data.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    system: u64,
    images: Box<[i64]>,
    length: u32,
    rank: u8,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.length as usize
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// Image of the `i`-th simple root, in the simple-root basis.
    pub fn image(&self, i: usize) -> &[i64] {
        let n = self.rank as usize;
        &self.images[i * n..(i + 1) * n]
    }
}

/// A subset of diagram nodes (zero-based indices).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParabolicSubset(BTreeSet<usize>);

impl ParabolicSubset {
    pub fn new(nodes: impl IntoIterator<Item = usize>) -> Self {
        Self(nodes.into_iter().collect())
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn full(rank: usize) -> Self {
        Self::new(0..rank)
    }

    /// All nodes except `i`: the subset of the maximal parabolic `P_{i+1}`.
    pub fn maximal(rank: usize, i: usize) -> Self {
        Self::new((0..rank).filter(|&j| j != i))
    }

    /// Parses Bourbaki labels such as `2,3,4`; an empty string is the empty set.
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "-" {
            return Ok(Self::empty());
        }
        let mut nodes = BTreeSet::new();
        for tok in text.split(',') {
            let label: usize = tok.trim().parse().map_err(|_| Error::Parse(format!("bad node label `{tok}`")))?;
            if label == 0 || label > rank {
                return Err(Error::NodeOutOfRange { index: label.wrapping_sub(1), rank });
            }
            nodes.insert(label - 1);
        }
        Ok(Self(nodes))
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for ParabolicSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.labels().iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

#[derive(Debug)]
pub struct WeylGroup {
    roots: Arc<RootSystem>,
    fingerprint: u64,
    simple: Vec<WeylElement>,
    elements: OnceLock<Vec<WeylElement>>,
    index: OnceLock<HashMap<WeylElement, usize>>,
}

impl WeylGroup {
    pub fn new(roots: Arc<RootSystem>) -> Self {
        let mut h = DefaultHasher::new();
        roots.cartan().hash(&mut h);
        let fingerprint = h.finish();
        let n = roots.rank();
        let mut group = Self { roots, fingerprint, simple: Vec::new(), elements: OnceLock::new(), index: OnceLock::new() };
        group.simple = (0..n)
            .map(|i| {
                let images: Vec<i64> = (0..n).flat_map(|j| group.roots.reflect_root(i, &Root::simple(n, j)).unwrap().0).collect();
                group.element_from_images(images.into_boxed_slice())
            })
            .collect();
        group
    }

    pub fn named(name: &str) -> Result<Self> {
        Ok(Self::new(Arc::new(RootSystem::named(name)?)))
    }

    /// Hash of the Cartan matrix; equal for groups built from equal data.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.roots
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    fn element_from_images(&self, images: Box<[i64]>) -> WeylElement {
        let mut w = WeylElement { system: self.fingerprint, images, length: 0, rank: self.rank() as u8 };
        w.length = self.roots.positive_roots().iter().filter(|b| self.act_raw(&w, &b.0).iter().all(|&c| c <= 0)).count() as u32;
        w
    }

    fn act_raw(&self, w: &WeylElement, beta: &[i64]) -> Vec<i64> {
        let n = self.rank();
        let mut out = vec![0; n];
        for (k, &c) in beta.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(&w.images[k * n..(k + 1) * n]) {
                *o += c * x;
            }
        }
        out
    }

    fn check(&self, w: &WeylElement) -> Result<()> {
        if w.system == self.fingerprint {
            Ok(())
        } else {
            Err(Error::MixedSystems)
        }
    }

    pub fn identity(&self) -> WeylElement {
        let n = self.rank();
        let images: Vec<i64> = (0..n).flat_map(|j| Root::simple(n, j).0).collect();
        WeylElement { system: self.fingerprint, images: images.into_boxed_slice(), length: 0, rank: n as u8 }
    }

    pub fn simple_reflection(&self, i: usize) -> Result<&WeylElement> {
        self.simple.get(i).ok_or(Error::NodeOutOfRange { index: i, rank: self.rank() })
    }

    /// Reflection `s_beta` in a root.
    pub fn reflection(&self, beta: &Root) -> Result<WeylElement> {
        let n = self.rank();
        let mut images = Vec::with_capacity(n * n);
        for j in 0..n {
            let alpha = Root::simple(n, j);
            let p = self.roots.root_coroot_pairing(&alpha, beta)?;
            images.extend(alpha.0.iter().zip(&beta.0).map(|(a, b)| a - p * b));
        }
        Ok(self.element_from_images(images.into_boxed_slice()))
    }

    pub fn act(&self, w: &WeylElement, beta: &Root) -> Result<Root> {
        self.check(w)?;
        Ok(Root(self.act_raw(w, &beta.0)))
    }

    pub fn multiply(&self, u: &WeylElement, v: &WeylElement) -> Result<WeylElement> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.mul(u, v))
    }

    fn mul(&self, u: &WeylElement, v: &WeylElement) -> WeylElement {
        let n = self.rank();
        let images: Vec<i64> = (0..n).flat_map(|i| self.act_raw(u, &v.images[i * n..(i + 1) * n])).collect();
        self.element_from_images(images.into_boxed_slice())
    }

    /// `w * s_i`.
    pub fn mul_simple(&self, w: &WeylElement, i: usize) -> WeylElement {
        let n = self.rank();
        let mut images = w.images.to_vec();
        // (w s_i)(alpha_j) = w(alpha_j - C[i][j] alpha_i)
        let wi = w.images[i * n..(i + 1) * n].to_vec();
        for j in 0..n {
            let c = self.roots.cartan().get(i, j);
            if c != 0 {
                for k in 0..n {
                    images[j * n + k] -= c * wi[k];
                }
            }
        }
        let length = if wi.iter().all(|&c| c <= 0) { w.length - 1 } else { w.length + 1 };
        WeylElement { system: self.fingerprint, images: images.into_boxed_slice(), length, rank: n as u8 }
    }

    /// `s_i * w`.
    pub fn simple_mul(&self, i: usize, w: &WeylElement) -> WeylElement {
        self.mul(&self.simple[i], w)
    }

    /// `l(w s_i) < l(w)`, i.e. `w(alpha_i)` is negative.
    pub fn is_right_descent(&self, w: &WeylElement, i: usize) -> bool {
        w.image(i).iter().all(|&c| c <= 0)
    }

    pub fn is_left_descent(&self, w: &WeylElement, i: usize) -> bool {
        self.simple_mul(i, w).length < w.length
    }

    /// Reduced word obtained by repeatedly stripping the smallest right
    /// descent. Letters are zero-based node indices.
    pub fn reduced_word(&self, w: &WeylElement) -> Vec<usize> {
        let mut word = Vec::with_capacity(w.length());
        let mut cur = w.clone();
        while cur.length > 0 {
            let i = (0..self.rank()).find(|&i| self.is_right_descent(&cur, i)).expect("non-identity has a descent");
            word.push(i);
            cur = self.mul_simple(&cur, i);
        }
        word.reverse();
        word
    }

    pub fn from_word(&self, word: &[usize]) -> Result<WeylElement> {
        let mut w = self.identity();
        for &i in word {
            if i >= self.rank() {
                return Err(Error::NodeOutOfRange { index: i, rank: self.rank() });
            }
            w = self.mul_simple(&w, i);
        }
        Ok(w)
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let mut word = self.reduced_word(w);
        word.reverse();
        self.from_word(&word).expect("letters of a reduced word are in range")
    }

    /// Serialized reduced word, e.g. `s3 s2 s1`; the identity is `e`.
    pub fn word_string(&self, w: &WeylElement) -> String {
        let word = self.reduced_word(w);
        if word.is_empty() {
            "e".to_string()
        } else {
            word.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join(" ")
        }
    }

    /// Reduced word without separators, e.g. `s3s2s1`; used as a class id.
    pub fn compact_word(&self, w: &WeylElement) -> String {
        self.word_string(w).replace(' ', "")
    }

    /// Accepts both `s3 s2 s1` and `s3s2s1`.
    pub fn parse_word(&self, text: &str) -> Result<WeylElement> {
        let text = text.trim();
        if text == "e" || text.is_empty() {
            return Ok(self.identity());
        }
        let compact: String = text.split_whitespace().collect();
        let letters = compact.strip_prefix('s').ok_or_else(|| Error::Parse(format!("bad word `{text}`")))?;
        let word = letters
            .split('s')
            .map(|d| d.parse::<usize>().ok().filter(|&d| d >= 1).map(|d| d - 1).ok_or_else(|| Error::Parse(format!("bad letter `s{d}`"))))
            .collect::<Result<Vec<_>>>()?;
        self.from_word(&word)
    }

    /// Longest element of the parabolic subgroup `W_theta`.
    pub fn longest_element(&self, theta: &ParabolicSubset) -> WeylElement {
        let mut w = self.identity();
        while let Some(i) = theta.iter().find(|&i| !self.is_right_descent(&w, i)) {
            w = self.mul_simple(&w, i);
        }
        w
    }

    fn in_min_quotient(&self, w: &WeylElement, theta: &ParabolicSubset) -> bool {
        theta.iter().all(|i| !self.is_right_descent(w, i))
    }

    /// `W^theta`: minimal-length representatives of `W / W_theta`, grown
    /// breadth-first from the identity by left multiplication (the set is
    /// closed under removing left descents). Ordered by length, then images.
    pub fn minimal_coset_reps(&self, theta: &ParabolicSubset) -> Vec<WeylElement> {
        let mut out = vec![self.identity()];
        let mut level = vec![self.identity()];
        while !level.is_empty() {
            let mut next: BTreeSet<WeylElement> = BTreeSet::new();
            for w in &level {
                for i in 0..self.rank() {
                    let sw = self.simple_mul(i, w);
                    if sw.length > w.length && self.in_min_quotient(&sw, theta) {
                        next.insert(sw);
                    }
                }
            }
            level = next.into_iter().collect();
            out.extend(level.iter().cloned());
        }
        out
    }

    /// `^theta W`: the minimal representatives right-multiplied by `w_theta`.
    pub fn maximal_coset_reps(&self, theta: &ParabolicSubset) -> Vec<WeylElement> {
        let w_theta = self.longest_element(theta);
        self.minimal_coset_reps(theta).iter().map(|v| self.mul(v, &w_theta)).collect()
    }

    /// All group elements in enumeration order (materialized once).
    pub fn elements(&self) -> &[WeylElement] {
        self.elements.get_or_init(|| self.minimal_coset_reps(&ParabolicSubset::empty()))
    }

    pub fn order(&self) -> usize {
        self.elements().len()
    }

    /// Position of `w` in [`WeylGroup::elements`].
    pub fn position(&self, w: &WeylElement) -> Option<usize> {
        self.index.get_or_init(|| self.elements().iter().cloned().enumerate().map(|(k, w)| (w, k)).collect()).get(w).copied()
    }

    pub fn longest(&self) -> WeylElement {
        self.longest_element(&ParabolicSubset::full(self.rank()))
    }

    /// Elements of the parabolic subgroup `W_theta`.
    pub fn parabolic_subgroup(&self, theta: &ParabolicSubset) -> Vec<WeylElement> {
        let mut seen: HashSet<WeylElement> = HashSet::from([self.identity()]);
        let mut out = vec![self.identity()];
        let mut k = 0;
        while k < out.len() {
            let w = out[k].clone();
            for i in theta.iter() {
                let ws = self.mul_simple(&w, i);
                if seen.insert(ws.clone()) {
                    out.push(ws);
                }
            }
            k += 1;
        }
        out.sort_by(|a, b| a.length.cmp(&b.length).then_with(|| a.cmp(b)));
        out
    }
}
