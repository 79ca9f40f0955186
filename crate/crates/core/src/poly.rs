//! Exact rational polynomials in the fundamental weights, with the Weyl
//! group action and divided-difference operators.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::weyl::{WeylElement, WeylGroup};

pub const MAX_VARS: usize = 8;

/// Exponent vector over `w1 .. wn`, ordered graded-lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS] };

    pub fn var(i: usize) -> Self {
        let mut m = Self::ONE;
        m.exps[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u8]) -> Self {
        let mut m = Self::ONE;
        m.exps[..exps.len()].copy_from_slice(exps);
        m
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn exponent(&self, i: usize) -> u8 {
        self.exps[i]
    }

    fn with_exponent(mut self, i: usize, e: u8) -> Self {
        self.exps[i] = e;
        self
    }

    fn times(&self, other: &Self) -> Self {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(&other.exps) {
            *a += b;
        }
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with exact rational coefficients; zero terms are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl RationalPolynomial {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::ONE, c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(i), BigRational::one());
        p
    }

    /// Linear form `sum c_j w_j`.
    pub fn linear(coeffs: &[i64]) -> Self {
        let mut p = Self::zero(coeffs.len());
        for (j, &c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(j), BigRational::from_integer(c.into()));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Degree when homogeneous; `None` for zero or mixed-degree input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Value of a constant polynomial (zero polynomial gives 0).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces variable `i` by `form`, using `powers[k] = form^k`.
    fn substitute_with(&self, i: usize, powers: &mut Vec<RationalPolynomial>, form: &RationalPolynomial) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let k = m.exponent(i) as usize;
            while powers.len() <= k {
                let next = &powers[powers.len() - 1] * form;
                powers.push(next);
            }
            let rest = m.with_exponent(i, 0);
            for (pm, pc) in &powers[k].terms {
                out.add_term(pm.times(&rest), pc * c);
            }
        }
        out
    }

    pub fn substitute(&self, i: usize, form: &RationalPolynomial) -> Self {
        let mut powers = vec![Self::one(self.nvars)];
        self.substitute_with(i, &mut powers, form)
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: Self) -> RationalPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: Self) -> RationalPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        RationalPolynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: Self) -> RationalPolynomial {
        let mut out = RationalPolynomial::zero(self.nvars.max(rhs.nvars));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for RationalPolynomial {
    /// Terms in decreasing graded-lex order, e.g. `11/6*w1^2*w4^2 - w2 + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let vars: Vec<String> = (0..self.nvars)
                .filter(|&i| m.exponent(i) > 0)
                .map(|i| match m.exponent(i) {
                    1 => format!("w{}", i + 1),
                    e => format!("w{}^{}", i + 1, e),
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl RationalPolynomial {
    /// Parses the plain-text form produced by `Display`. Variables `w1..wn`
    /// are limited by `nvars`.
    pub fn parse(text: &str, nvars: usize) -> Result<Self> {
        let err = |msg: String| Error::Parse(msg);
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(err("empty polynomial".into()));
        }
        let mut out = Self::zero(nvars);
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut negative = false;
        for (k, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && !(k > 0 && cur.ends_with('^')) {
                if !cur.is_empty() {
                    terms.push((negative, std::mem::take(&mut cur)));
                } else if k > 0 {
                    return Err(err(format!("dangling sign in `{text}`")));
                }
                negative = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(err(format!("trailing sign in `{text}`")));
        }
        terms.push((negative, cur));
        for (negative, term) in terms {
            let mut coeff = BigRational::one();
            let mut mono = Monomial::ONE;
            for factor in term.split('*') {
                if let Some(var) = factor.strip_prefix('w') {
                    let (idx, exp) = match var.split_once('^') {
                        Some((i, e)) => (i, e.parse::<u8>().map_err(|_| err(format!("bad exponent in `{factor}`")))?),
                        None => (var, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| err(format!("bad variable `{factor}`")))?;
                    if idx == 0 || idx > nvars {
                        return Err(err(format!("variable `{factor}` outside w1..w{nvars}")));
                    }
                    let e = mono.exponent(idx - 1) + exp;
                    mono = mono.with_exponent(idx - 1, e);
                } else {
                    let c = parse_rational(factor).ok_or_else(|| err(format!("bad coefficient `{factor}`")))?;
                    coeff *= c;
                }
            }
            if negative {
                coeff = -coeff;
            }
            out.add_term(mono, coeff);
        }
        Ok(out)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d = BigInt::from_str(d).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(BigInt::from_str(n).ok()?, d))
        }
        None => Some(BigRational::from_integer(BigInt::from_str(s).ok()?)),
    }
}

/// Weyl group action and divided differences on `Q[w1..wn]`.
pub struct WeightPolynomials {
    group: Arc<WeylGroup>,
    /// `alpha_i` as linear forms in the weights.
    alphas: Vec<RationalPolynomial>,
    /// `s_i(w_i) = w_i - alpha_i`.
    reflected: Vec<RationalPolynomial>,
    /// Per node: `powers[i][k] = s_i(w_i)^k`.
    powers: Mutex<Vec<Vec<RationalPolynomial>>>,
    /// Per node: `quotients[i][k] = (w_i^k - s_i(w_i)^k) / alpha_i`.
    quotients: Mutex<Vec<Vec<RationalPolynomial>>>,
}

impl fmt::Debug for WeightPolynomials {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightPolynomials").field("rank", &self.rank()).finish()
    }
}

impl WeightPolynomials {
    pub fn new(group: Arc<WeylGroup>) -> Self {
        let rs = group.root_system().clone();
        let n = rs.rank();
        let alphas: Vec<_> = (0..n).map(|i| RationalPolynomial::linear(&rs.simple_root_weight(i).0)).collect();
        let reflected: Vec<_> = (0..n).map(|i| &RationalPolynomial::var(n, i) - &alphas[i]).collect();
        let powers = (0..n).map(|_| vec![RationalPolynomial::one(n)]).collect();
        let quotients = (0..n).map(|_| vec![RationalPolynomial::zero(n)]).collect();
        Self { group, alphas, reflected, powers: Mutex::new(powers), quotients: Mutex::new(quotients) }
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.alphas.len()
    }

    pub fn simple_root(&self, i: usize) -> &RationalPolynomial {
        &self.alphas[i]
    }

    fn check_node(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { index: i, rank: self.rank() })
        }
    }

    /// Action of the simple reflection `s_i`.
    pub fn reflect(&self, i: usize, u: &RationalPolynomial) -> Result<RationalPolynomial> {
        self.check_node(i)?;
        let mut powers = self.powers.lock().unwrap();
        Ok(u.substitute_with(i, &mut powers[i], &self.reflected[i]))
    }

    /// Ring automorphism induced by `w`, composed along a reduced word.
    pub fn weyl_act(&self, w: &WeylElement, u: &RationalPolynomial) -> Result<RationalPolynomial> {
        let word = self.group.reduced_word(w);
        let mut out = u.clone();
        for &i in word.iter().rev() {
            out = self.reflect(i, &out)?;
        }
        Ok(out)
    }

    fn quotient_power(&self, i: usize, k: usize) -> RationalPolynomial {
        let mut cache = self.quotients.lock().unwrap();
        let n = self.rank();
        let x = RationalPolynomial::var(n, i);
        let y = &self.reflected[i];
        // Q_k = x Q_{k-1} + y^{k-1}, from x^k - y^k = (x - y)(x^{k-1} + .. + y^{k-1})
        while cache[i].len() <= k {
            let j = cache[i].len();
            let ypow = {
                let mut powers = self.powers.lock().unwrap();
                while powers[i].len() < j {
                    let next = &powers[i][powers[i].len() - 1] * y;
                    powers[i].push(next);
                }
                powers[i][j - 1].clone()
            };
            let next = &(&x * &cache[i][j - 1]) + &ypow;
            cache[i].push(next);
        }
        cache[i][k].clone()
    }

    /// `Delta_i(u) = (u - s_i u) / alpha_i`.
    ///
    /// Writing `u = sum a_k w_i^k` with `a_k` free of `w_i` (hence
    /// `s_i`-invariant), the quotient is `sum a_k (w_i^k - s_i(w_i)^k)/alpha_i`
    /// and each of those is an explicit geometric sum, so no division occurs.
    pub fn divided_difference(&self, i: usize, u: &RationalPolynomial) -> Result<RationalPolynomial> {
        self.check_node(i)?;
        let mut by_power: BTreeMap<u8, Vec<(Monomial, &BigRational)>> = BTreeMap::new();
        for (m, c) in u.terms() {
            if m.exponent(i) > 0 {
                by_power.entry(m.exponent(i)).or_default().push((m.with_exponent(i, 0), c));
            }
        }
        let mut out = RationalPolynomial::zero(u.nvars());
        for (k, rests) in by_power {
            let q = self.quotient_power(i, k as usize);
            for (rest, c) in rests {
                for (qm, qc) in q.terms() {
                    out.add_term(qm.times(&rest), qc * c);
                }
            }
        }
        Ok(out)
    }

    /// Exact quotient of `u` by `alpha_i` through the coordinate change
    /// `w_i = (t - sum_{j != i} a_j w_j) / a_i`; fails on a nonzero remainder.
    pub fn divide_by_simple_root(&self, i: usize, u: &RationalPolynomial) -> Result<RationalPolynomial> {
        self.check_node(i)?;
        let n = self.rank();
        let alpha = &self.alphas[i];
        let a_i = alpha.coefficient(&Monomial::var(i));
        let rest = alpha - &RationalPolynomial::var(n, i).scale(&a_i);
        let forward = (&RationalPolynomial::var(n, i) - &rest).scale(&a_i.recip());
        let in_t = u.substitute(i, &forward);
        let mut divided = RationalPolynomial::zero(n);
        for (m, c) in in_t.terms() {
            if m.exponent(i) == 0 {
                return Err(Error::Consistency(format!("nonzero remainder dividing by alpha_{}", i + 1)));
            }
            divided.add_term(m.with_exponent(i, m.exponent(i) - 1), c.clone());
        }
        Ok(divided.substitute(i, alpha))
    }

    /// `Delta_{a1} o .. o Delta_{ak}` for the word `[a1, .., ak]`.
    pub fn divided_difference_word(&self, word: &[usize], u: &RationalPolynomial) -> Result<RationalPolynomial> {
        let mut out = u.clone();
        for &i in word.iter().rev() {
            if out.is_zero() {
                break;
            }
            out = self.divided_difference(i, &out)?;
        }
        Ok(out)
    }

    pub fn divided_difference_element(&self, w: &WeylElement, u: &RationalPolynomial) -> Result<RationalPolynomial> {
        self.divided_difference_word(&self.group.reduced_word(w), u)
    }

    /// Product of all positive roots, each expanded in the weights.
    pub fn positive_root_product(&self) -> RationalPolynomial {
        let rs = self.group.root_system();
        rs.positive_roots()
            .iter()
            .fold(RationalPolynomial::one(self.rank()), |acc, beta| &acc * &RationalPolynomial::linear(&rs.root_to_weight(beta).0))
    }
}
