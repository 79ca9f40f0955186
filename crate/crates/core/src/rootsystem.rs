//! Finite root systems built from Cartan matrices.
//!
//! Node indices are zero-based throughout the API; the Bourbaki label of
//! node `i` is `i + 1`. The Cartan convention is
//! `C[i][j] = <alpha_j, alpha_i^vee>`, so the simple root `alpha_i` expands in
//! the fundamental-weight basis as column `i` of the matrix.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Default bound on root height before a matrix is declared infinite type.
pub const DEFAULT_HEIGHT_BOUND: i64 = 512;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanMatrix {
    rank: usize,
    entries: Vec<i64>,
}

impl CartanMatrix {
    /// Checks the generalized Cartan axioms. Finite type is checked
    /// separately by [`CartanMatrix::is_finite_type`] and by root closure.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let rank = rows.len();
        if rank == 0 {
            return Err(Error::InvalidCartan("empty matrix".into()));
        }
        if rows.iter().any(|r| r.len() != rank) {
            return Err(Error::InvalidCartan("matrix is not square".into()));
        }
        for i in 0..rank {
            if rows[i][i] != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry {} is not 2", i + 1)));
            }
            for j in 0..rank {
                if i == j {
                    continue;
                }
                if rows[i][j] > 0 {
                    return Err(Error::InvalidCartan(format!("off-diagonal entry ({}, {}) is positive", i + 1, j + 1)));
                }
                if (rows[i][j] == 0) != (rows[j][i] == 0) {
                    return Err(Error::InvalidCartan(format!(
                        "entries ({}, {}) and ({}, {}) disagree on zero pattern",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(Self { rank, entries: rows.into_iter().flatten().collect() })
    }

    /// Built-in Bourbaki-numbered types: `An`, `Bn`, `Cn`, `Dn`, `G2`, `F4`.
    pub fn named(name: &str) -> Result<Self> {
        let unknown = || Error::UnknownType(name.to_string());
        let name = name.trim();
        let (family, n) = name.split_at(name.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?);
        let n: usize = n.parse().map_err(|_| unknown())?;
        let mut m = vec![vec![0i64; n]; n];
        let chain = |m: &mut Vec<Vec<i64>>| {
            for i in 0..n {
                m[i][i] = 2;
                if i + 1 < n {
                    m[i][i + 1] = -1;
                    m[i + 1][i] = -1;
                }
            }
        };
        match (family.to_ascii_uppercase().as_str(), n) {
            ("A", n) if n >= 1 => chain(&mut m),
            ("B", n) if n >= 2 => {
                chain(&mut m);
                m[n - 1][n - 2] = -2;
            }
            ("C", n) if n >= 2 => {
                chain(&mut m);
                m[n - 2][n - 1] = -2;
            }
            ("D", n) if n >= 4 => {
                chain(&mut m);
                m[n - 2][n - 1] = 0;
                m[n - 1][n - 2] = 0;
                m[n - 3][n - 1] = -1;
                m[n - 1][n - 3] = -1;
            }
            ("G", 2) => m = vec![vec![2, -3], vec![-1, 2]],
            ("F", 4) => m = vec![vec![2, -1, 0, 0], vec![-1, 2, -1, 0], vec![0, -2, 2, -1], vec![0, 0, -1, 2]],
            _ => return Err(unknown()),
        }
        Self::new(m)
    }

    /// Parses rows of whitespace-separated integers. Blank lines and lines
    /// starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                l.split_whitespace().map(|t| t.parse::<i64>().map_err(|e| Error::Parse(format!("`{t}`: {e}")))).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.rank + j]
    }

    /// All leading and non-leading principal minors positive.
    pub fn is_finite_type(&self) -> bool {
        let n = self.rank;
        (1u32..(1 << n)).all(|mask| {
            let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let sub: Vec<Vec<Rational64>> =
                idx.iter().map(|&i| idx.iter().map(|&j| Rational64::from_integer(self.get(i, j))).collect()).collect();
            determinant(sub) > Rational64::zero()
        })
    }

    /// Row-wise `[[..], ..]` form, for display and serialization.
    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.rank).map(<[i64]>::to_vec).collect()
    }
}

fn determinant(mut m: Vec<Vec<Rational64>>) -> Rational64 {
    let n = m.len();
    let mut det = Rational64::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational64::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col];
        det *= p;
        for r in col + 1..n {
            let f = m[r][col] / p;
            for c in col..n {
                let v = m[col][c];
                m[r][c] -= f * v;
            }
        }
    }
    det
}

/// A root in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c < 0)
    }

    pub fn neg(&self) -> Self {
        Root(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A weight in the fundamental-weight basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan: CartanMatrix,
    positive_roots: Vec<Root>,
    root_set: HashSet<Root>,
    /// Squared lengths of the simple roots, scaled so the shortest is 1.
    sq_lengths: Vec<Rational64>,
    name: Option<String>,
}

impl RootSystem {
    pub fn build(cartan: CartanMatrix) -> Result<Self> {
        Self::build_with_height_bound(cartan, DEFAULT_HEIGHT_BOUND)
    }

    pub fn named(name: &str) -> Result<Self> {
        let mut rs = Self::build(CartanMatrix::named(name)?)?;
        rs.name = Some(name.trim().to_ascii_uppercase());
        Ok(rs)
    }

    /// Closure of the simple roots under simple reflections, ordered by
    /// height and then lexicographically.
    pub fn build_with_height_bound(cartan: CartanMatrix, height_bound: i64) -> Result<Self> {
        let n = cartan.rank();
        let mut seen: BTreeSet<Root> = BTreeSet::new();
        let mut queue: VecDeque<Root> = VecDeque::new();
        for i in 0..n {
            let r = Root::simple(n, i);
            seen.insert(r.clone());
            queue.push_back(r);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..n {
                let image = reflect_root_with(&cartan, i, &beta);
                if !image.is_positive() || seen.contains(&image) {
                    continue;
                }
                if image.height() > height_bound {
                    return Err(Error::InfiniteRootSystem(height_bound));
                }
                seen.insert(image.clone());
                queue.push_back(image);
            }
        }
        let mut positive_roots: Vec<Root> = seen.into_iter().collect();
        positive_roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
        let root_set = positive_roots.iter().flat_map(|r| [r.clone(), r.neg()]).collect();
        let sq_lengths = symmetrizer(&cartan)?;
        Ok(Self { cartan, positive_roots, root_set, sq_lengths, name: None })
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn is_root(&self, beta: &Root) -> bool {
        self.root_set.contains(beta)
    }

    pub fn highest_root(&self) -> &Root {
        self.positive_roots.last().expect("root systems are non-empty")
    }

    fn check_node(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { index: i, rank: self.rank() })
        }
    }

    /// Invariant inner product `(alpha, beta)` of two root-lattice vectors.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> Rational64 {
        let n = self.rank();
        let mut acc = Rational64::zero();
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                if b[j] == 0 {
                    continue;
                }
                let aij = Rational64::from_integer(self.cartan.get(i, j)) * self.sq_lengths[i] / 2;
                acc += aij * (a[i] * b[j]);
            }
        }
        acc
    }

    /// `<alpha, beta^vee> = 2 (alpha, beta) / (beta, beta)`.
    pub fn root_coroot_pairing(&self, alpha: &Root, beta: &Root) -> Result<i64> {
        if !self.is_root(beta) {
            return Err(Error::NotARoot(beta.0.clone()));
        }
        let v = self.inner(&alpha.0, &beta.0) * 2 / self.inner(&beta.0, &beta.0);
        debug_assert!(v.is_integer());
        Ok(v.to_integer())
    }

    /// `<beta^vee, omega>` for a root `beta` and a weight `omega`.
    pub fn coroot_pairing(&self, beta: &Root, omega: &Weight) -> Result<i64> {
        if !self.is_root(beta) {
            return Err(Error::NotARoot(beta.0.clone()));
        }
        // (alpha_j, omega_k) = delta_jk |alpha_j|^2 / 2
        let norm = self.inner(&beta.0, &beta.0);
        let mut acc = Rational64::zero();
        for j in 0..self.rank() {
            acc += self.sq_lengths[j] * (beta.0[j] * omega.0[j]);
        }
        let v = acc / norm;
        if !v.is_integer() {
            return Err(Error::Consistency(format!("non-integral coroot pairing {v}")));
        }
        Ok(v.to_integer())
    }

    /// `alpha_i` written in the fundamental-weight basis (column `i` of the
    /// Cartan matrix).
    pub fn simple_root_weight(&self, i: usize) -> Weight {
        Weight((0..self.rank()).map(|j| self.cartan.get(j, i)).collect())
    }

    pub fn root_to_weight(&self, beta: &Root) -> Weight {
        let n = self.rank();
        let mut w = vec![0; n];
        for (i, &c) in beta.0.iter().enumerate() {
            for (j, wj) in w.iter_mut().enumerate() {
                *wj += c * self.cartan.get(j, i);
            }
        }
        Weight(w)
    }

    pub fn reflect_root(&self, i: usize, beta: &Root) -> Result<Root> {
        self.check_node(i)?;
        Ok(reflect_root_with(&self.cartan, i, beta))
    }

    /// `s_i(omega) = omega - <alpha_i^vee, omega> alpha_i`.
    pub fn reflect_weight(&self, i: usize, omega: &Weight) -> Result<Weight> {
        self.check_node(i)?;
        let coeff = omega.0[i];
        let alpha = self.simple_root_weight(i);
        Ok(Weight(omega.0.iter().zip(&alpha.0).map(|(w, a)| w - coeff * a).collect()))
    }
}

fn reflect_root_with(cartan: &CartanMatrix, i: usize, beta: &Root) -> Root {
    let pairing: i64 = beta.0.iter().enumerate().map(|(j, c)| c * cartan.get(i, j)).sum();
    let mut out = beta.0.clone();
    out[i] -= pairing;
    Root(out)
}

/// Squared simple-root lengths `d_i` with `C[i][j] d_i = C[j][i] d_j`,
/// normalised so the shortest root in each component has length 1.
fn symmetrizer(cartan: &CartanMatrix) -> Result<Vec<Rational64>> {
    let n = cartan.rank();
    let mut d: Vec<Option<Rational64>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        let mut component = vec![start];
        d[start] = Some(Rational64::one());
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].unwrap();
            for j in 0..n {
                if j == i || cartan.get(i, j) == 0 {
                    continue;
                }
                let dj = di * cartan.get(i, j) / cartan.get(j, i);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        component.push(j);
                        queue.push_back(j);
                    }
                    Some(existing) if existing != dj => {
                        return Err(Error::InvalidCartan("matrix is not symmetrizable".into()));
                    }
                    Some(_) => {}
                }
            }
        }
        let min = component.iter().map(|&k| d[k].unwrap()).min().unwrap();
        for &k in &component {
            d[k] = Some(d[k].unwrap() / min);
        }
    }
    Ok(d.into_iter().map(Option::unwrap).collect())
}
