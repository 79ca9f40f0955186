//! Split-level verification of the motivic decomposition of the two
//! 15-dimensional F4 varieties `X1' = G/P1` and `X4' = G/P4`.
//!
//! Rings carry labels `h_i^s` (on `X1'`) and `g_i^s` (on `X4'`): subscript 2
//! exists only in codimensions 4..=11, and the 1/2 choice in each of those is
//! the unique one reproducing the hyperplane-product tables in `fixtures/`.
//! Congruences are modulo 3 with balanced representatives.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::correspondence::Correspondence;
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::RationalPolynomial;
use crate::schubert::{ChowElement, ChowRing, FlagVariety};
use crate::weyl::ParabolicSubset;

pub const PIERI_X1: &str = include_str!("../fixtures/pieri_x1.txt");
pub const PIERI_X4: &str = include_str!("../fixtures/pieri_x4.txt");
pub const SQUARES: &str = include_str!("../fixtures/squares.txt");
pub const LIFT_H1_4: &str = include_str!("../fixtures/lift_h1_4.txt");
pub const LIFT_G1_4: &str = include_str!("../fixtures/lift_g1_4.txt");
pub const CONGRUENCES: &str = include_str!("../fixtures/congruences.txt");
pub const IDEMPOTENTS: &str = include_str!("../fixtures/idempotents.txt");
pub const END_BASIS: &str = include_str!("../fixtures/end_basis.txt");
pub const LABELS_X1: &str = include_str!("../fixtures/labels_x1.txt");
pub const LABELS_X4: &str = include_str!("../fixtures/labels_x4.txt");

/// The two values of the undetermined sign in `r`.
pub const EPSILONS: [i64; 2] = [1, -1];

const MODULUS: i64 = 3;

/// Non-empty, non-comment lines.
pub fn fixture_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// `name: body` lines.
pub fn named_fixture(text: &str) -> Result<Vec<(&str, &str)>> {
    fixture_lines(text)
        .map(|l| {
            l.split_once(':').map(|(a, b)| (a.trim(), b.trim())).ok_or_else(|| Error::Parse(format!("expected `name: body` in `{l}`")))
        })
        .collect()
}

/// A product `a*b = combination` from a table fixture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductFact {
    pub left: String,
    pub right: String,
    pub product: Vec<(i64, String)>,
}

impl ProductFact {
    pub fn parse(line: &str) -> Result<Self> {
        let (lhs, rhs) = line.split_once('=').ok_or_else(|| Error::Parse(format!("missing `=` in `{line}`")))?;
        let (left, right) = lhs.split_once('*').ok_or_else(|| Error::Parse(format!("missing `*` in `{line}`")))?;
        Ok(Self { left: left.trim().into(), right: right.trim().into(), product: crate::notation::parse_combination(rhs)? })
    }

    pub fn parse_all(text: &str) -> Result<Vec<Self>> {
        fixture_lines(text).map(Self::parse).collect()
    }

    pub fn display(&self) -> String {
        let rhs = crate::schubert::format_combination(self.product.iter().map(|(c, l)| (l.clone(), *c)));
        format!("{}*{} = {rhs}", self.left, self.right)
    }
}

/// Labels `1, p1^1, .., p1^15` plus `p2^s` where the codimension has rank 2;
/// bit `k` of `mask` swaps the pair in the `k`-th rank-2 codimension.
fn candidate_labels(ring: &ChowRing, letter: char, mask: u32) -> Vec<String> {
    let mut labels = vec![String::new(); ring.rank()];
    let mut pair = 0;
    for s in 0..=ring.dim() {
        let b = ring.basis(s).expect("in range");
        match b.len() {
            1 => labels[b[0]] = if s == 0 { "1".into() } else { format!("{letter}1^{s}") },
            2 => {
                let swap = mask >> pair & 1 == 1;
                pair += 1;
                labels[b[usize::from(swap)]] = format!("{letter}1^{s}");
                labels[b[usize::from(!swap)]] = format!("{letter}2^{s}");
            }
            n => panic!("codimension {s} has rank {n}"),
        }
    }
    labels
}

fn resolve_with(labels: &[String], items: &[(i64, String)]) -> Option<ChowElement> {
    let mut out = ChowElement::zero();
    for (c, l) in items {
        out.add_term(labels.iter().position(|x| x == l)?, *c);
    }
    Some(out)
}

/// All label assignments under which every fact holds for the Chevalley
/// product with the divisor of `node`.
pub fn consistent_labelings(ring: &ChowRing, letter: char, node: usize, facts: &[ProductFact]) -> Result<Vec<Vec<String>>> {
    let pairs = ring.ranks_by_codim().iter().filter(|&&n| n == 2).count() as u32;
    let mut products: HashMap<usize, ChowElement> = HashMap::new();
    for k in 0..ring.rank() {
        products.insert(k, ring.chevalley_mult(node, &ChowElement::basis(k))?);
    }
    let divisor = ring.divisor_index(node)?;
    let mut out = Vec::new();
    for mask in 0..1u32 << pairs {
        let labels = candidate_labels(ring, letter, mask);
        let ok = facts.iter().all(|f| {
            let (Some(a), Some(b), Some(p)) =
                (labels.iter().position(|x| *x == f.left), labels.iter().position(|x| *x == f.right), resolve_with(&labels, &f.product))
            else {
                return false;
            };
            a == divisor && products[&b] == p
        });
        if ok {
            out.push(labels);
        }
    }
    Ok(out)
}

/// `label = reduced word` lines.
pub fn parse_label_fixture(text: &str) -> Result<Vec<(String, String)>> {
    fixture_lines(text)
        .map(|l| {
            l.split_once('=')
                .map(|(a, b)| (a.trim().to_string(), b.trim().to_string()))
                .ok_or_else(|| Error::Parse(format!("expected `label = word` in `{l}`")))
        })
        .collect()
}

fn build_ring(flag: &Arc<FlagVariety>, theta: ParabolicSubset, letter: char, table: &str, persisted: &str) -> Result<ChowRing> {
    let mut ring = ChowRing::new(flag.clone(), theta)?;
    let node = (0..4).find(|&i| !ring.theta().contains(i)).expect("maximal parabolic");
    let facts = ProductFact::parse_all(table)?;
    let mut solutions = consistent_labelings(&ring, letter, node, &facts)?;
    if solutions.len() != 1 {
        return Err(Error::Consistency(format!("{} labelings of {} consistent with the table", solutions.len(), ring.theta())));
    }
    let labels = solutions.pop().expect("one solution");
    for (label, word) in parse_label_fixture(persisted)? {
        let k = labels.iter().position(|l| *l == label).ok_or_else(|| Error::Parse(format!("unknown label `{label}`")))?;
        let recorded = ring.group().parse_word(&word)?;
        if ring.class(k).min_rep != recorded {
            return Err(Error::Consistency(format!(
                "{label}: solved {} but recorded {word}",
                ring.group().compact_word(&ring.class(k).min_rep)
            )));
        }
    }
    ring.set_labels(labels)?;
    Ok(ring)
}

/// `(X1', X4')` with their h and g labels. Both share one `G/B`.
pub fn build_labeled_rings() -> Result<(Arc<ChowRing>, Arc<ChowRing>)> {
    let flag = FlagVariety::named("F4")?;
    let x1 = build_ring(&flag, ParabolicSubset::new([1, 2, 3]), 'h', PIERI_X1, LABELS_X1)?;
    let x4 = build_ring(&flag, ParabolicSubset::new([0, 1, 2]), 'g', PIERI_X4, LABELS_X4)?;
    Ok((Arc::new(x1), Arc::new(x4)))
}

/// Label fixture text (`label = word`) for a labeled ring.
pub fn label_fixture_text(ring: &ChowRing) -> String {
    let mut out = String::new();
    for k in 0..ring.rank() {
        writeln!(out, "{} = {}", ring.label(k), ring.group().compact_word(&ring.class(k).min_rep)).unwrap();
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn push(&mut self, name: impl Into<String>, result: Result<(bool, String)>, elapsed: Duration) {
        let (passed, detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(CheckResult { name: name.into(), passed, detail, elapsed });
    }

    /// Deterministic: timings are excluded.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "passed": self.passed(), "checks": self.checks })
    }

    pub fn to_text(&self, with_timings: bool) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let time = if with_timings { format!(" ({:.2?})", c.elapsed) } else { String::new() };
            writeln!(out, "[{status}] {}{time}", c.name).unwrap();
            for line in c.detail.lines() {
                writeln!(out, "    {line}").unwrap();
            }
        }
        let n = self.checks.iter().filter(|c| c.passed).count();
        writeln!(out, "{n}/{} checks passed", self.checks.len()).unwrap();
        out
    }
}

/// Idempotents `p_0..p_3` on `X1'` and `q_0..q_3` on `X4'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Idempotents {
    pub p: Vec<Correspondence>,
    pub q: Vec<Correspondence>,
}

pub struct F4Pipeline {
    pub x1: Arc<ChowRing>,
    pub x4: Arc<ChowRing>,
    rho: Mutex<HashMap<(usize, i64), Correspondence>>,
}

fn diff_detail(expected: &Correspondence, got: &Correspondence, m: i64) -> String {
    let diff = got.sub(expected).map(|d| d.mod_reduce(m).format()).unwrap_or_else(|e| e.to_string());
    format!("expected {}\ncomputed {}\ndifference {}", expected.format(), got.mod_reduce(m).format(), diff)
}

impl F4Pipeline {
    pub fn new() -> Result<Self> {
        let (x1, x4) = build_labeled_rings()?;
        Ok(Self { x1, x4, rho: Mutex::new(HashMap::new()) })
    }

    fn class(ring: &ChowRing, label: &str) -> Result<ChowElement> {
        ring.parse_element(label)
    }

    pub fn parse_x1x4(&self, text: &str, eps: i64) -> Result<Correspondence> {
        Correspondence::parse(self.x1.clone(), self.x4.clone(), text, eps)
    }

    /// `r = h1^4 x 1 + eps (1 x g1^4)`.
    pub fn build_r(&self, eps: i64) -> Result<Correspondence> {
        self.parse_x1x4("h1^4 x 1 + eps*1 x g1^4", eps)
    }

    /// `r^2 . ((h1^1)^i x (g1^1)^(7-i))`.
    pub fn build_rho(&self, i: usize, eps: i64) -> Result<Correspondence> {
        if i > 7 {
            return Err(Error::ShapeMismatch(format!("rho index {i} outside 0..=7")));
        }
        if let Some(c) = self.rho.lock().unwrap().get(&(i, eps)) {
            return Ok(c.clone());
        }
        let r = self.build_r(eps)?;
        let h = self.x1.power(&Self::class(&self.x1, "h1^1")?, i as u32)?;
        let g = self.x4.power(&Self::class(&self.x4, "g1^1")?, 7 - i as u32)?;
        let rho = r.intersect(&r)?.intersect(&Correspondence::cross(self.x1.clone(), self.x4.clone(), &h, &g))?;
        self.rho.lock().unwrap().insert((i, eps), rho.clone());
        Ok(rho)
    }

    pub fn congruence_fixture(&self, name: &str, eps: i64) -> Result<Correspondence> {
        let (_, body) = named_fixture(CONGRUENCES)?
            .into_iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| Error::Parse(format!("no fixture `{name}`")))?;
        self.parse_x1x4(body, eps)
    }

    /// The eight displayed cycles, exactly as integers.
    pub fn displayed_idempotents(&self) -> Result<Idempotents> {
        let mut p = Vec::new();
        let mut q = Vec::new();
        for (name, body) in named_fixture(IDEMPOTENTS)? {
            let (ring, list) = if name.starts_with('p') { (&self.x1, &mut p) } else { (&self.x4, &mut q) };
            list.push(Correspondence::parse(ring.clone(), ring.clone(), body, 1)?);
        }
        Ok(Idempotents { p, q })
    }

    /// `rho_{7-i}^t o rho_i` and `rho_i o rho_{7-i}^t`, reduced mod 3.
    pub fn composed_idempotents(&self, eps: i64) -> Result<Idempotents> {
        let mut p = Vec::new();
        let mut q = Vec::new();
        for i in 0..4 {
            let a = self.build_rho(i, eps)?;
            let b = self.build_rho(7 - i, eps)?.transpose();
            p.push(b.compose(&a)?.mod_reduce(MODULUS));
            q.push(a.compose(&b)?.mod_reduce(MODULUS));
        }
        Ok(Idempotents { p, q })
    }

    /// `rho_0 + rho_1 + eps rho_2 + eps rho_3` reduced mod 3, on `X1' x X4'`.
    pub fn rho_combination(&self, eps: i64) -> Result<Correspondence> {
        let mut out = Correspondence::zero(self.x1.clone(), self.x4.clone());
        for (i, c) in [(0, 1), (1, 1), (2, eps), (3, eps)] {
            out = out.add(&self.build_rho(i, eps)?.scale(c))?;
        }
        Ok(out.mod_reduce(MODULUS))
    }

    pub fn end_basis(&self) -> Result<Vec<Correspondence>> {
        fixture_lines(END_BASIS).map(|l| Correspondence::parse(self.x1.clone(), self.x1.clone(), l, 1)).collect()
    }

    // ---- checks -------------------------------------------------------

    pub fn check_structure(&self) -> Result<(bool, String)> {
        let g = self.x1.group();
        let rs = g.root_system();
        let facts = [
            ("positive roots", rs.positive_roots().len(), 24),
            ("|W|", g.order(), 1152),
            ("l(w0)", g.longest().length(), 24),
            ("|W^theta| for X1'", self.x1.rank(), 24),
            ("|W^theta| for X4'", self.x4.rank(), 24),
            ("dim X1'", self.x1.dim(), 15),
            ("dim X4'", self.x4.dim(), 15),
        ];
        let expected_ranks = vec![1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1];
        let mut ok = facts.iter().all(|(_, a, b)| a == b);
        ok &= self.x1.ranks_by_codim() == expected_ranks && self.x4.ranks_by_codim() == expected_ranks;
        let mut detail: Vec<String> = facts.iter().map(|(n, a, _)| format!("{n} = {a}")).collect();
        detail.push(format!("ranks by codim {:?} / {:?}", self.x1.ranks_by_codim(), self.x4.ranks_by_codim()));
        Ok((ok, detail.join("\n")))
    }

    /// Each table product through both the Chevalley formula and Giambelli.
    pub fn check_pieri_tables(&self) -> Result<(bool, String)> {
        let mut failures = Vec::new();
        let mut count = 0;
        for (ring, table) in [(&self.x1, PIERI_X1), (&self.x4, PIERI_X4)] {
            let node = (0..4).find(|&i| !ring.theta().contains(i)).expect("maximal");
            for fact in ProductFact::parse_all(table)? {
                count += 1;
                let a = Self::class(ring, &fact.left)?;
                let b = Self::class(ring, &fact.right)?;
                let expected = ring.resolve(&fact.product)?;
                let chevalley = ring.chevalley_mult(node, &b)?;
                let giambelli = ring.multiply(&a, &b)?;
                if chevalley != expected || giambelli != expected {
                    failures.push(format!(
                        "{}: Chevalley {}, Giambelli {}",
                        fact.display(),
                        ring.format(&chevalley),
                        ring.format(&giambelli)
                    ));
                }
            }
        }
        let detail = if failures.is_empty() { format!("{count} products reproduced by both methods") } else { failures.join("\n") };
        Ok((failures.is_empty(), detail))
    }

    pub fn check_squares(&self) -> Result<(bool, String)> {
        let mut ok = true;
        let mut lines = Vec::new();
        for fact in ProductFact::parse_all(SQUARES)? {
            let ring = if fact.left.starts_with('h') { &self.x1 } else { &self.x4 };
            let got = ring.multiply(&Self::class(ring, &fact.left)?, &Self::class(ring, &fact.right)?)?;
            let expected = ring.resolve(&fact.product)?;
            ok &= got == expected;
            lines.push(format!("{}*{} = {}", fact.left, fact.right, ring.format(&got)));
        }
        Ok((ok, lines.join("\n")))
    }

    /// `c` of each transcribed lift is the class, and `c` of its square is
    /// the tabulated product.
    pub fn check_lift_polynomials(&self) -> Result<(bool, String)> {
        let squares = ProductFact::parse_all(SQUARES)?;
        let mut ok = true;
        let mut lines = Vec::new();
        for (ring, text, label) in [(&self.x1, LIFT_H1_4, "h1^4"), (&self.x4, LIFT_G1_4, "g1^4")] {
            let body: String = fixture_lines(text).collect::<Vec<_>>().join(" ");
            let u = RationalPolynomial::parse(&body, 4)?;
            let image = ring.c_map(&u)?;
            let square = ring.c_map(&(&u * &u))?;
            let fact = squares.iter().find(|f| f.left == label).ok_or_else(|| Error::Parse(format!("no square for {label}")))?;
            let good = image == Self::class(ring, label)? && square == ring.resolve(&fact.product)?;
            ok &= good;
            lines.push(format!("c(lift) = {}, c(lift^2) = {}", ring.format(&image), ring.format(&square)));
        }
        Ok((ok, lines.join("\n")))
    }

    /// `r^2` and `rho_0..rho_7` against the displayed congruences.
    pub fn check_congruences(&self, eps: i64) -> Result<(bool, String)> {
        let mut failures = Vec::new();
        let r = self.build_r(eps)?;
        let r2 = r.intersect(&r)?;
        let expected = self.congruence_fixture("r2", eps)?;
        if !r2.congruent(&expected, MODULUS)? {
            failures.push(format!("r2:\n{}", diff_detail(&expected, &r2, MODULUS)));
        }
        for i in 0..8 {
            let rho = self.build_rho(i, eps)?;
            let expected = self.congruence_fixture(&format!("rho{i}"), eps)?;
            if !rho.congruent(&expected, MODULUS)? {
                failures.push(format!("rho{i}:\n{}", diff_detail(&expected, &rho, MODULUS)));
            }
        }
        let detail = if failures.is_empty() {
            format!("r^2 = {} (mod 3) and rho_0..rho_7 match", r2.mod_reduce(MODULUS).format())
        } else {
            failures.join("\n")
        };
        Ok((failures.is_empty(), detail))
    }

    pub fn check_idempotent_congruences(&self, eps: i64) -> Result<(bool, String)> {
        let shown = self.displayed_idempotents()?;
        let composed = self.composed_idempotents(eps)?;
        let mut failures = Vec::new();
        for (name, a, b) in [("p", &shown.p, &composed.p), ("q", &shown.q, &composed.q)] {
            for i in 0..4 {
                if !b[i].congruent(&a[i], MODULUS)? {
                    failures.push(format!("{name}{i}:\n{}", diff_detail(&a[i], &b[i], MODULUS)));
                }
            }
        }
        let detail =
            if failures.is_empty() { "all eight compositions match the displayed cycles mod 3".to_string() } else { failures.join("\n") };
        Ok((failures.is_empty(), detail))
    }

    /// Composed idempotents agree term for term for both signs.
    pub fn check_eps_independence(&self) -> Result<(bool, String)> {
        let a = self.composed_idempotents(1)?;
        let b = self.composed_idempotents(-1)?;
        Ok((a == b, if a == b { "identical for eps = 1 and eps = -1".into() } else { "compositions depend on eps".into() }))
    }

    /// Exact idempotency, pairwise orthogonality of all eight, and sum = diagonal.
    pub fn check_completeness(&self) -> Result<(bool, String)> {
        let shown = self.displayed_idempotents()?;
        let mut failures = Vec::new();
        for (name, ring, list) in [("p", &self.x1, &shown.p), ("q", &self.x4, &shown.q)] {
            let mut all: Vec<(String, Correspondence)> = Vec::new();
            for (i, p) in list.iter().enumerate() {
                all.push((format!("{name}{i}"), p.clone()));
                all.push((format!("{name}{i}^t"), p.transpose()));
            }
            let mut sum = Correspondence::zero(ring.clone(), ring.clone());
            for (n, p) in &all {
                if !p.is_idempotent(0)? {
                    failures.push(format!("{n} is not idempotent"));
                }
                sum = sum.add(p)?;
            }
            for (n, p) in &all {
                for (m, q) in &all {
                    if n != m && !q.compose(p)?.is_zero() {
                        failures.push(format!("{m} o {n} = {}", q.compose(p)?.format()));
                    }
                }
            }
            let diagonal = Correspondence::diagonal(ring);
            if sum != diagonal {
                failures.push(format!("sum over {name}:\n{}", diff_detail(&diagonal, &sum, 0)));
            }
        }
        let detail = if failures.is_empty() {
            "16 idempotents, 112 vanishing compositions, both sums equal the diagonal".to_string()
        } else {
            failures.join("\n")
        };
        Ok((failures.is_empty(), detail))
    }

    /// Realization ranks by codimension of the first factor.
    pub fn check_twist_structure(&self) -> Result<(bool, String)> {
        let shown = self.displayed_idempotents()?;
        let mut ok = true;
        let mut lines = Vec::new();
        for (name, list) in [("p", &shown.p), ("q", &shown.q)] {
            let mut total = 0;
            for (i, p) in list.iter().enumerate() {
                for (suffix, c, support) in [("", p.clone(), [i, i + 4, i + 8]), ("^t", p.transpose(), [7 - i, 11 - i, 15 - i])] {
                    let ranks = c.image_ranks();
                    let expected: Vec<usize> = (0..ranks.len()).map(|s| usize::from(support.contains(&s))).collect();
                    total += ranks.iter().sum::<usize>();
                    ok &= ranks == expected;
                    let found: Vec<usize> = (0..ranks.len()).filter(|&s| ranks[s] > 0).collect();
                    lines.push(format!(
                        "{name}{i}{suffix}: support {found:?}, ranks {:?}",
                        found.iter().map(|&s| ranks[s]).collect::<Vec<_>>()
                    ));
                }
            }
            ok &= total == 24;
            lines.push(format!("total rank over {name}: {total}"));
        }
        Ok((ok, lines.join("\n")))
    }

    /// `p0 o CH^15(X1' x X1') o p0` against the three displayed generators,
    /// compared as lattices through Hermite normal forms.
    pub fn check_end_basis(&self) -> Result<(bool, String)> {
        let p0 = self.displayed_idempotents()?.p.remove(0);
        let x1 = &self.x1;
        let mut generated = Vec::new();
        for f in 0..x1.rank() {
            for g in 0..x1.rank() {
                if x1.codim(f) + x1.codim(g) == x1.dim() {
                    let e = Correspondence::from_terms(x1.clone(), x1.clone(), [((f, g), 1)]);
                    generated.push(p0.compose(&e)?.compose(&p0)?.to_vector());
                }
            }
        }
        let basis = self.end_basis()?;
        let basis_vectors: Vec<Vec<i64>> = basis.iter().map(Correspondence::to_vector).collect();
        let rank = linalg::rank(&generated);
        let same_lattice = linalg::hermite_form(&generated)? == linalg::hermite_form(&basis_vectors)?;
        let mut sum = Correspondence::zero(x1.clone(), x1.clone());
        for b in &basis {
            sum = sum.add(b)?;
        }
        let ok = rank == 3 && same_lattice && sum == p0;
        Ok((ok, format!("rank {rank}; lattice equals span of displayed basis: {same_lattice}; p0 = sum of basis: {}", sum == p0)))
    }

    /// `J = sum_{i<4} c_i (rho_i + rho_{7-i})` mod 3 with `c = (1, 1, eps, eps)`.
    /// The transposed half of the defining sum lives on `X4' x X1'`; on
    /// `X1' x X4'` its role is played by `rho_{7-i}`, the partner of `rho_i`
    /// in the idempotents `rho_{7-i}^t o rho_i`.
    pub fn build_j(&self, eps: i64) -> Result<Correspondence> {
        let mut out = Correspondence::zero(self.x1.clone(), self.x4.clone());
        for (i, c) in [(0, 1), (1, 1), (2, eps), (3, eps)] {
            out = out.add(&self.build_rho(i, eps)?.scale(c))?;
            out = out.add(&self.build_rho(7 - i, eps)?.scale(c))?;
        }
        Ok(out.mod_reduce(MODULUS))
    }

    /// Dual pairs `h_i^s x g_i^(15-s)`, one per class, coefficients +-1.
    pub fn has_delta_shape(&self, j: &Correspondence) -> bool {
        let subscript = |l: String| if l == "1" { '1' } else { l.chars().nth(1).unwrap_or('?') };
        let mut fs: Vec<usize> = j.terms().map(|t| t.0).collect();
        let mut gs: Vec<usize> = j.terms().map(|t| t.1).collect();
        fs.sort_unstable();
        fs.dedup();
        gs.sort_unstable();
        gs.dedup();
        j.len() == 24
            && fs.len() == 24
            && gs.len() == 24
            && j.terms().all(|(f, g, c)| {
                c.abs() == 1 && self.x1.codim(f) + self.x4.codim(g) == 15 && subscript(self.x1.label(f)) == subscript(self.x4.label(g))
            })
    }

    pub fn check_isomorphism(&self, eps: i64) -> Result<(bool, String)> {
        let j = self.build_j(eps)?;
        let shape = self.has_delta_shape(&j);
        let left = j.transpose().compose(&j)?.congruent(&Correspondence::diagonal(&self.x1), MODULUS)?;
        let right = j.compose(&j.transpose())?.congruent(&Correspondence::diagonal(&self.x4), MODULUS)?;
        let detail = format!(
            "J = {}\nshape +-delta: {shape}; J^t o J = diagonal(X1') mod 3: {left}; J o J^t = diagonal(X4') mod 3: {right}",
            j.format()
        );
        Ok((shape && left && right, detail))
    }

    pub fn run(&self, eps_values: &[i64]) -> VerificationReport {
        self.run_with_jobs(eps_values, 1)
    }

    /// Checks are independent; `jobs` workers pull them from a shared queue
    /// and the report keeps the fixed check order regardless of scheduling.
    pub fn run_with_jobs(&self, eps_values: &[i64], jobs: usize) -> VerificationReport {
        type Check<'a> = (String, Box<dyn Fn() -> Result<(bool, String)> + Sync + 'a>);
        let mut checks: Vec<Check<'_>> = vec![
            ("structure".into(), Box::new(|| self.check_structure())),
            ("pieri tables".into(), Box::new(|| self.check_pieri_tables())),
            ("giambelli squares".into(), Box::new(|| self.check_squares())),
            ("transcribed lift polynomials".into(), Box::new(|| self.check_lift_polynomials())),
        ];
        for &eps in eps_values {
            checks.push((format!("congruences (eps = {eps})"), Box::new(move || self.check_congruences(eps))));
            checks.push((format!("idempotent congruences (eps = {eps})"), Box::new(move || self.check_idempotent_congruences(eps))));
        }
        if eps_values.len() > 1 {
            checks.push(("eps independence".into(), Box::new(|| self.check_eps_independence())));
        }
        checks.push(("idempotents, orthogonality, completeness".into(), Box::new(|| self.check_completeness())));
        checks.push(("twist structure".into(), Box::new(|| self.check_twist_structure())));
        checks.push(("end basis".into(), Box::new(|| self.check_end_basis())));
        for &eps in eps_values {
            checks.push((format!("isomorphism J (eps = {eps})"), Box::new(move || self.check_isomorphism(eps))));
        }

        let next = AtomicUsize::new(0);
        type Slot = Mutex<Option<(Result<(bool, String)>, Duration)>>;
        let results: Vec<Slot> = checks.iter().map(|_| Mutex::new(None)).collect();
        let worker = || loop {
            let k = next.fetch_add(1, Ordering::Relaxed);
            let Some((_, f)) = checks.get(k) else { break };
            let t = Instant::now();
            let r = f();
            *results[k].lock().expect("result slot") = Some((r, t.elapsed()));
        };
        std::thread::scope(|s| {
            for _ in 1..jobs.clamp(1, checks.len()) {
                s.spawn(worker);
            }
            worker();
        });

        let mut report = VerificationReport::default();
        for ((name, _), slot) in checks.into_iter().zip(results) {
            let (r, elapsed) = slot.into_inner().expect("result slot").expect("every check ran");
            report.push(name, r, elapsed);
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fact_parsing() {
        let f = ProductFact::parse("h1^1*h1^3 = 2*h2^4 + h1^4").unwrap();
        assert_eq!(f.left, "h1^1");
        assert_eq!(f.product, vec![(2, "h2^4".to_string()), (1, "h1^4".to_string())]);
        assert_eq!(f.display(), "h1^1*h1^3 = 2*h2^4 + h1^4");
        assert_eq!(ProductFact::parse_all(PIERI_X1).unwrap().len(), 22);
        assert_eq!(ProductFact::parse_all(PIERI_X4).unwrap().len(), 22);
        assert!(ProductFact::parse("h1^1 h1^3 = h1^4").is_err());
    }

    #[test]
    fn candidate_labels_cover_the_basis() {
        let ring = ChowRing::named("F4", ParabolicSubset::new([1, 2, 3])).unwrap();
        let a = candidate_labels(&ring, 'h', 0);
        let b = candidate_labels(&ring, 'h', 0xff);
        assert_eq!(a.iter().filter(|l| l.starts_with("h2")).count(), 8);
        assert_eq!(a[ring.unit_index()], "1");
        assert_eq!(a[ring.point_index()], "h1^15");
        assert!(a.iter().zip(&b).filter(|(x, y)| x != y).count() == 16);
    }

    #[test]
    fn report_rendering() {
        let mut r = VerificationReport::default();
        r.push("a", Ok((true, "fine".into())), Duration::from_millis(5));
        r.push("b", Err(Error::NotHomogeneous), Duration::ZERO);
        assert!(!r.passed());
        let text = r.to_text(false);
        assert!(text.contains("[PASS] a\n    fine"));
        assert!(text.contains("[FAIL] b\n    error: polynomial is not homogeneous"));
        assert!(text.ends_with("1/2 checks passed\n"));
        assert_eq!(r.to_json()["checks"][0], serde_json::json!({"name": "a", "passed": true, "detail": "fine"}));
    }

    #[test]
    fn literal_rho_sum_lacks_the_delta_shape() {
        let p = F4Pipeline::new().unwrap();
        for eps in EPSILONS {
            let literal = p.rho_combination(eps).unwrap();
            assert!(!p.has_delta_shape(&literal));
            assert!(literal.terms().all(|(f, _, _)| p.x1.codim(f) <= 11));
            assert!(p.has_delta_shape(&p.build_j(eps).unwrap()));
        }
    }

    #[test]
    fn full_run_is_green_and_deterministic() {
        let p = F4Pipeline::new().unwrap();
        let a = p.run(&EPSILONS);
        assert!(a.passed(), "{}", a.to_text(false));
        let b = p.run(&EPSILONS);
        assert_eq!(a.to_json().to_string(), b.to_json().to_string());
        assert_eq!(a.to_text(false), b.to_text(false));
    }
}
