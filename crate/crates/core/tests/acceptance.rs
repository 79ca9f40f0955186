//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//!
//! Every comparison is exact (integers, exact rationals, or balanced
//! residues mod 3); there are no floating-point tolerances anywhere.

#![allow(clippy::needless_range_loop)]

use std::sync::Arc;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schubert_core::f4pipeline::{self, F4Pipeline};
use schubert_core::{
    ChowElement, ChowRing, Correspondence, FlagVariety, Monomial, ParabolicSubset, RationalPolynomial, Result, RootSystem,
    WeightPolynomials, WeylElement, WeylGroup,
};

/// Tolerance pinned for every criterion.
const EXACT: &str = "exact";
const EXACT_MOD_3: &str = "exact mod 3";
/// Seed and minimum case count for the randomized property suites.
const SEED: u64 = 0x5c4b_e27f;
const MIN_CASES: usize = 1000;

type Outcome = Result<(bool, String)>;
type Criterion<'a> = (&'static str, &'static str, Box<dyn Fn() -> Outcome + 'a>);

fn all(results: impl IntoIterator<Item = Outcome>) -> Outcome {
    let mut ok = true;
    let mut details = Vec::new();
    for r in results {
        let (p, d) = r?;
        ok &= p;
        details.push((p, d));
    }
    // On success summarize each part by its first line; on failure keep
    // only the failing parts in full.
    let parts: Vec<String> = if ok {
        details.iter().filter_map(|(_, d)| d.lines().next().map(str::to_string)).collect()
    } else {
        details.into_iter().filter(|(p, _)| !p).map(|(_, d)| d).collect()
    };
    Ok((ok, parts.join("; ")))
}

fn structure() -> Outcome {
    let rs = RootSystem::named("F4")?;
    let g = Arc::new(WeylGroup::new(Arc::new(rs)));
    let flag = Arc::new(FlagVariety::new(g.clone()));
    let mut facts = vec![
        (g.root_system().positive_roots().len() == 24, "24 positive roots".to_string()),
        (g.order() == 1152, "|W| = 1152".into()),
        (g.longest().length() == 24, "l(w0) = 24".into()),
    ];
    let expected = [1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1];
    for theta in [[1, 2, 3], [0, 1, 2]] {
        let ring = ChowRing::new(flag.clone(), ParabolicSubset::new(theta))?;
        facts.push((g.minimal_coset_reps(ring.theta()).len() == 24, format!("|W^theta| = 24 for {}", ring.theta())));
        facts.push((ring.dim() == 15, format!("dim = 15 for {}", ring.theta())));
        facts.push((ring.ranks_by_codim() == expected, format!("ranks {:?} for {}", ring.ranks_by_codim(), ring.theta())));
    }
    let failed: Vec<_> = facts.iter().filter(|(ok, _)| !ok).map(|(_, d)| d.clone()).collect();
    Ok((
        failed.is_empty(),
        if failed.is_empty() { "24 roots, |W| = 1152, l(w0) = 24, ranks 1,1,1,1,2x8,1,1,1,1".into() } else { failed.join("; ") },
    ))
}

fn squares(p: &F4Pipeline) -> Outcome {
    let cases = [(&p.x1, "h1^4", "8*h1^8 + 6*h2^8"), (&p.x4, "g1^4", "4*g1^8 + 3*g2^8")];
    let mut ok = true;
    let mut detail = Vec::new();
    for (ring, x, expected) in cases {
        let x = ring.parse_element(x)?;
        let got = ring.multiply(&x, &x)?;
        ok &= got == ring.parse_element(expected)?;
        detail.push(ring.format(&got));
    }
    Ok((ok, detail.join(", ")))
}

/// Counts cases and keeps the first failure of a randomized suite.
#[derive(Default)]
struct Tally {
    cases: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            self.first.get_or_insert_with(what);
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_deg: u8, terms: usize) -> RationalPolynomial {
    let mut p = RationalPolynomial::zero(n);
    for _ in 0..terms {
        let mut exps = vec![0u8; n];
        for _ in 0..rng.gen_range(0..=max_deg) {
            exps[rng.gen_range(0..n)] += 1;
        }
        let c = BigRational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into());
        p.add_term(Monomial::from_exponents(&exps), c);
    }
    p
}

/// A reduced word for `w` built from randomly chosen right descents.
fn random_reduced_word(rng: &mut ChaCha8Rng, g: &WeylGroup, w: &WeylElement) -> Vec<usize> {
    let mut word = Vec::new();
    let mut w = w.clone();
    while !w.is_identity() {
        let descents: Vec<usize> = (0..g.rank()).filter(|&i| g.is_right_descent(&w, i)).collect();
        let i = *descents.choose(rng).expect("nonidentity has a descent");
        w = g.mul_simple(&w, i);
        word.push(i);
    }
    word.reverse();
    word
}

fn random_element(rng: &mut ChaCha8Rng, ring: &ChowRing, support: usize) -> ChowElement {
    ChowElement::from_terms((0..support).map(|_| (rng.gen_range(0..ring.rank()), rng.gen_range(-3i64..=3))))
}

fn basis_correspondences(a: &Arc<ChowRing>, b: &Arc<ChowRing>) -> Vec<Correspondence> {
    let mut out = Vec::new();
    for f in 0..a.rank() {
        for g in 0..b.rank() {
            out.push(Correspondence::from_terms(a.clone(), b.clone(), [((f, g), 1)]));
        }
    }
    out
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut suites: Vec<(&str, Tally)> = Vec::new();

    let f4 = Arc::new(WeylGroup::named("F4")?);
    let polys = WeightPolynomials::new(f4.clone());
    let elems = f4.elements();

    let mut nil = Tally::default();
    for _ in 0..300 {
        let u = random_poly(&mut rng, 4, 5, 6);
        let i = rng.gen_range(0..4);
        let twice = polys.divided_difference(i, &polys.divided_difference(i, &u)?)?;
        nil.check(twice.is_zero(), || format!("Delta_{}^2 u != 0 for u = {u}", i + 1));
    }
    suites.push(("divided-difference nil", nil));

    let mut braid = Tally::default();
    for _ in 0..300 {
        let w = &elems[rng.gen_range(0..elems.len())];
        let (a, b) = (random_reduced_word(&mut rng, &f4, w), random_reduced_word(&mut rng, &f4, w));
        let u = random_poly(&mut rng, 4, u8::try_from(w.length().min(8)).unwrap() + 1, 4);
        let same_element = f4.from_word(&a)? == *w && f4.from_word(&b)? == *w && a.len() == w.length();
        let same_operator = polys.divided_difference_word(&a, &u)? == polys.divided_difference_word(&b, &u)?;
        braid.check(same_element && same_operator, || format!("words {a:?} and {b:?} disagree"));
    }
    suites.push(("braid / reduced-word invariance", braid));

    let mut leibniz = Tally::default();
    for _ in 0..300 {
        let (u, v) = (random_poly(&mut rng, 4, 3, 4), random_poly(&mut rng, 4, 3, 4));
        let i = rng.gen_range(0..4);
        let lhs = polys.divided_difference(i, &(&u * &v))?;
        let rhs = &(&polys.divided_difference(i, &u)? * &v) + &(&polys.reflect(i, &u)? * &polys.divided_difference(i, &v)?);
        leibniz.check(lhs == rhs, || format!("twisted Leibniz fails for node {}", i + 1));
    }
    suites.push(("twisted Leibniz", leibniz));

    let (x1, x4) = f4pipeline::build_labeled_rings()?;
    let mut ring_axioms = Tally::default();
    for _ in 0..250 {
        let ring = if rng.gen_bool(0.5) { &x1 } else { &x4 };
        let (x, y, z) = (random_element(&mut rng, ring, 3), random_element(&mut rng, ring, 3), random_element(&mut rng, ring, 3));
        let assoc = ring.multiply(&ring.multiply(&x, &y)?, &z)? == ring.multiply(&x, &ring.multiply(&y, &z)?)?;
        let comm = ring.multiply(&x, &y)? == ring.multiply(&y, &x)?;
        let dist = ring.multiply(&x, &y.add(&z))? == ring.multiply(&x, &y)?.add(&ring.multiply(&x, &z)?);
        let unit = ring.multiply(&ring.unit(), &x)? == x;
        ring_axioms.check(assoc && comm && dist && unit, || format!("ring axioms fail on {}", ring.format(&x)));
    }
    suites.push(("ring axioms", ring_axioms));

    // Every F4 maximal parabolic, sharing one flag variety.
    let flag = Arc::new(FlagVariety::new(f4.clone()));
    let maximal: Vec<ChowRing> = (0..4).map(|i| ChowRing::new(flag.clone(), ParabolicSubset::maximal(4, i))).collect::<Result<_>>()?;

    // Degrees of products are read off Giambelli lifts; the 96-class rings
    // of the middle nodes are covered by the Chevalley suite instead.
    let mut pairing = Tally::default();
    let small: Vec<Arc<ChowRing>> =
        ["A2", "B2", "B3", "G2"].iter().map(|n| ChowRing::named(n, ParabolicSubset::empty()).map(Arc::new)).collect::<Result<_>>()?;
    for ring in [&x1, &x4].into_iter().chain(&small) {
        for a in 0..ring.rank() {
            let row: Vec<i64> = (0..ring.rank()).map(|b| ring.pairing_of_classes(a, b)).collect();
            let by_product: Vec<i64> = (0..ring.rank())
                .map(|b| {
                    if ring.codim(a) + ring.codim(b) != ring.dim() {
                        return Ok(0);
                    }
                    Ok(ring.degree(&ring.multiply(&ChowElement::basis(a), &ChowElement::basis(b))?))
                })
                .collect::<Result<_>>()?;
            let permutation = row.iter().filter(|&&x| x == 1).count() == 1 && row.iter().all(|&x| x == 0 || x == 1);
            pairing.check(permutation && row == by_product, || format!("pairing row {a} of {}", ring.theta()));
        }
    }
    suites.push(("Poincare pairing permutation", pairing));

    let mut chevalley = Tally::default();
    for ring in &maximal {
        let node = (0..4).find(|&i| !ring.theta().contains(i)).expect("maximal parabolic");
        let h = ChowElement::basis(ring.divisor_index(node)?);
        for k in 0..ring.rank() {
            let x = ChowElement::basis(k);
            let ok = ring.chevalley_mult(node, &x)? == ring.multiply(&h, &x)?;
            chevalley.check(ok, || format!("class {} of {}", ring.label(k), ring.theta()));
        }
    }
    suites.push(("Chevalley vs Giambelli", chevalley));

    // Full basis of CH(A2 x A2) as correspondences: associativity on all
    // triples with a nonzero inner composition, and both unit laws.
    let a2 = Arc::new(ChowRing::named("A2", ParabolicSubset::empty())?);
    let basis = basis_correspondences(&a2, &a2);
    let delta = Correspondence::diagonal(&a2);
    let mut composition = Tally::default();
    for a in &basis {
        composition.check(delta.compose(a)? == *a && a.compose(&delta)? == *a, || format!("unit law on {}", a.format()));
        for b in &basis {
            let ba = b.compose(a)?;
            for c in &basis {
                let ok = c.compose(&ba)? == c.compose(b)?.compose(a)?;
                composition.check(ok, || format!("associativity on {}, {}, {}", a.format(), b.format(), c.format()));
            }
        }
    }
    // Random sums across the F4 pair, mixing source and target rings.
    for _ in 0..200 {
        let pick = |rng: &mut ChaCha8Rng, s: &Arc<ChowRing>, t: &Arc<ChowRing>| {
            Correspondence::from_terms(
                s.clone(),
                t.clone(),
                (0..4).map(|_| ((rng.gen_range(0..s.rank()), rng.gen_range(0..t.rank())), rng.gen_range(-3i64..=3))),
            )
        };
        let (a, b, c) = (pick(&mut rng, &x1, &x4), pick(&mut rng, &x4, &x1), pick(&mut rng, &x1, &x4));
        let assoc = c.compose(&b.compose(&a)?)? == c.compose(&b)?.compose(&a)?;
        let units = Correspondence::diagonal(&x4).compose(&a)? == a && a.compose(&Correspondence::diagonal(&x1))? == a;
        let via_products = b.compose(&a)? == b.compose_via_products(&a)?;
        composition.check(assoc && units && via_products, || format!("F4 composition on {}", a.format()));
    }
    suites.push(("composition associativity and units", composition));

    let total: usize = suites.iter().map(|(_, t)| t.cases).sum();
    let failures: usize = suites.iter().map(|(_, t)| t.failures).sum();
    let mut detail: Vec<String> = suites.iter().map(|(n, t)| format!("{n} {}/{}", t.cases - t.failures, t.cases)).collect();
    for (n, t) in &suites {
        if let Some(f) = &t.first {
            detail.push(format!("{n}: {f}"));
        }
    }
    Ok((failures == 0 && total >= MIN_CASES, format!("{total} cases, seed {SEED:#x}; {}", detail.join(", "))))
}

type Matrix = Vec<Vec<BigRational>>;

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).fold(BigRational::zero(), |acc, k| acc + &a[i][k] * &b[k][j])).collect()).collect()
}

/// Multiplication operators `M_v` on the full-flag ring derived from the
/// Chevalley operators alone: `L_i M_u = sum_w a_w M_w` over all divisors
/// `i` and classes `u` one codimension lower, solved exactly per codim.
fn operators_from_chevalley(ring: &ChowRing) -> Result<Option<Vec<Matrix>>> {
    let n = ring.rank();
    let rank = ring.group().rank();
    let chevalley: Vec<Matrix> = (0..rank)
        .map(|i| {
            let mut m = vec![vec![BigRational::zero(); n]; n];
            for w in 0..n {
                for (x, c) in ring.chevalley_mult(i, &ChowElement::basis(w))?.terms() {
                    m[x][w] = BigRational::from_integer(c.into());
                }
            }
            Ok(m)
        })
        .collect::<Result<_>>()?;
    let mut ops: Vec<Option<Matrix>> = vec![None; n];
    ops[ring.unit_index()] =
        Some((0..n).map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()).collect());
    for codim in 1..=ring.dim() {
        let unknowns = ring.basis(codim)?.to_vec();
        // Augmented rows: coefficients on the unknowns, then flattened L_i M_u.
        let mut rows: Vec<(Vec<BigRational>, Vec<BigRational>)> = Vec::new();
        for &u in ring.basis(codim - 1)? {
            let mu = ops[u].as_ref().expect("lower codims solved");
            for (i, li) in chevalley.iter().enumerate() {
                let image = ring.chevalley_mult(i, &ChowElement::basis(u))?;
                let lhs = unknowns.iter().map(|&w| BigRational::from_integer(image.coeff(w).into())).collect();
                rows.push((lhs, matmul(li, mu).into_iter().flatten().collect()));
            }
        }
        let mut pivot_row = 0;
        for col in 0..unknowns.len() {
            let Some(p) = (pivot_row..rows.len()).find(|&r| !rows[r].0[col].is_zero()) else { return Ok(None) };
            rows.swap(pivot_row, p);
            let inv = BigRational::one() / &rows[pivot_row].0[col];
            let (l, r) = &mut rows[pivot_row];
            l.iter_mut().for_each(|x| *x *= &inv);
            r.iter_mut().for_each(|x| *x *= &inv);
            let (pl, pr) = rows[pivot_row].clone();
            for (k, row) in rows.iter_mut().enumerate() {
                if k != pivot_row && !row.0[col].is_zero() {
                    let f = row.0[col].clone();
                    row.0.iter_mut().zip(&pl).for_each(|(x, y)| *x -= &f * y);
                    row.1.iter_mut().zip(&pr).for_each(|(x, y)| *x -= &f * y);
                }
            }
            pivot_row += 1;
        }
        // Redundant equations must be consistent.
        if rows[pivot_row..].iter().any(|(_, r)| r.iter().any(|x| !x.is_zero())) {
            return Ok(None);
        }
        for (k, &w) in unknowns.iter().enumerate() {
            ops[w] = Some(rows[k].1.chunks(n).map(<[BigRational]>::to_vec).collect());
        }
    }
    Ok(Some(ops.into_iter().map(|m| m.expect("every codim solved")).collect()))
}

fn small_rank_oracle() -> Outcome {
    let mut compared = 0;
    let mut mismatches = Vec::new();
    for name in ["A2", "B2"] {
        let ring = ChowRing::named(name, ParabolicSubset::empty())?;
        let Some(ops) = operators_from_chevalley(&ring)? else {
            mismatches.push(format!("{name}: Chevalley system is singular or inconsistent"));
            continue;
        };
        for v in 0..ring.rank() {
            for w in 0..ring.rank() {
                let product = ring.multiply(&ChowElement::basis(v), &ChowElement::basis(w))?;
                for x in 0..ring.rank() {
                    compared += 1;
                    if ops[v][x][w] != BigRational::from_integer(product.coeff(x).into()) {
                        mismatches.push(format!("{name}: coefficient of {} in {} * {}", ring.label(x), ring.label(v), ring.label(w)));
                    }
                }
            }
        }
    }
    let mut detail = format!("{compared} structure constants compared");
    for m in &mismatches {
        detail.push_str("; ");
        detail.push_str(m);
    }
    Ok((mismatches.is_empty(), detail))
}

fn main() {
    let started = Instant::now();
    let pipeline = F4Pipeline::new().expect("labeled F4 rings build");
    let criteria: Vec<Criterion<'_>> = vec![
        ("structure", EXACT, Box::new(structure)),
        ("pieri tables, both multiplication paths", EXACT, Box::new(|| pipeline.check_pieri_tables())),
        ("giambelli squares", EXACT, Box::new(|| squares(&pipeline))),
        ("transcribed lift polynomials under c", EXACT, Box::new(|| pipeline.check_lift_polynomials())),
        (
            "r^2 and rho_i congruences, eps = +-1",
            EXACT_MOD_3,
            Box::new(|| all(f4pipeline::EPSILONS.map(|e| pipeline.check_congruences(e)))),
        ),
        (
            "idempotent congruences and integral completeness",
            EXACT_MOD_3,
            Box::new(|| {
                let mut results: Vec<Outcome> = f4pipeline::EPSILONS.iter().map(|&e| pipeline.check_idempotent_congruences(e)).collect();
                results.push(pipeline.check_completeness());
                all(results)
            }),
        ),
        ("twist supports and End basis", EXACT, Box::new(|| all([pipeline.check_twist_structure(), pipeline.check_end_basis()]))),
        ("isomorphism J, eps = +-1", EXACT_MOD_3, Box::new(|| all(f4pipeline::EPSILONS.map(|e| pipeline.check_isomorphism(e))))),
        ("property suites", EXACT, Box::new(property_suites)),
        ("A2 and B2 Chevalley closure vs Giambelli", EXACT, Box::new(small_rank_oracle)),
    ];

    let mut failed = 0;
    for (k, (name, tolerance, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
        failed += usize::from(!ok);
        let status = if ok { "PASS" } else { "FAIL" };
        // Passing lines keep a one-line summary; failures keep everything.
        let detail = match (ok, detail.lines().next()) {
            (_, None) => String::new(),
            (true, Some(first)) => format!(" :: {}", first.chars().take(160).collect::<String>()),
            (false, Some(_)) => format!(" :: {}", detail.replace('\n', " | ")),
        };
        println!("[{status}] {:>2} {name} (tolerance: {tolerance}, {:.1?}){detail}", k + 1, t.elapsed());
    }
    println!("{}/{} criteria passed in {:.1?}", criteria.len() - failed, criteria.len(), started.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
