//! Generalized Cartan matrices and their realizations.
//!
//! Coordinates used throughout the crate:
//!
//! * `h` has basis `α_0∨, …, α_l∨, c_1, …, c_m` where the `c_k` complete the
//!   simple coroots to a basis. A [`Coweight`] stores coefficients in this basis.
//! * a [`Weight`] is stored by its values on that same basis, so the pairing
//!   `⟨λ, x⟩` is a plain dot product and `⟨α_i∨, λ⟩` is coordinate `i`.
//! * roots and coroots are stored as integer coefficient vectors in the simple
//!   roots (resp. simple coroots).

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{self, q, Q};

/// Finite / affine / indefinite, by the standard trichotomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraType {
    Finite,
    Affine { untwisted: bool },
    Indefinite,
}

impl AlgebraType {
    pub fn is_finite(self) -> bool {
        matches!(self, AlgebraType::Finite)
    }

    pub fn label(self) -> &'static str {
        match self {
            AlgebraType::Finite => "finite",
            AlgebraType::Affine { untwisted: true } => "affine (untwisted)",
            AlgebraType::Affine { untwisted: false } => "affine (twisted)",
            AlgebraType::Indefinite => "indefinite",
        }
    }
}

/// A symmetrizable generalized Cartan matrix `a_ij = ⟨α_i∨, α_j⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gcm {
    entries: Vec<Vec<i64>>,
    /// Positive integers `d_i` with `d_i a_ij = d_j a_ji`, primitive per component.
    symmetrizer: Vec<i64>,
    labels: Option<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct GcmFile {
    size: usize,
    matrix: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl Gcm {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::NotAGcm {
                row: 0,
                col: 0,
                reason: "matrix is empty".into(),
            });
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGcm {
                    row: i,
                    col: row.len().min(n),
                    reason: format!("row {i} has {} entries, expected {n}", row.len()),
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                let a = entries[i][j];
                let reason = if i == j && a != 2 {
                    Some(format!("diagonal entry is {a}, must be 2"))
                } else if i != j && a > 0 {
                    Some(format!("off-diagonal entry is {a}, must be <= 0"))
                } else if i != j && (a == 0) != (entries[j][i] == 0) {
                    Some(format!(
                        "a[{i}][{j}] = {a} but a[{j}][{i}] = {}; zero pattern must be symmetric",
                        entries[j][i]
                    ))
                } else {
                    None
                };
                if let Some(reason) = reason {
                    return Err(Error::NotAGcm { row: i, col: j, reason });
                }
            }
        }
        let symmetrizer = symmetrize(&entries)?;
        Ok(Self {
            entries,
            symmetrizer,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size() {
            return Err(Error::Parse(format!(
                "{} labels for a matrix of size {}",
                labels.len(),
                self.size()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Parses `{"size": n, "matrix": [[…]], "labels": […]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: GcmFile = serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
        })?;
        if file.matrix.len() != file.size {
            return Err(Error::NotAGcm {
                row: file.matrix.len().min(file.size),
                col: 0,
                reason: format!("size is {} but matrix has {} rows", file.size, file.matrix.len()),
            });
        }
        let g = Gcm::new(file.matrix)?;
        match file.labels {
            Some(l) => g.with_labels(l),
            None => Ok(g),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GcmFile {
            size: self.size(),
            matrix: self.entries.clone(),
            labels: self.labels.clone(),
        })
        .expect("GCM serialization cannot fail")
    }

    pub fn type_a(rank: usize) -> Self {
        Self::chain(rank, |_| (-1, -1))
    }

    /// `B_n`; the last node is short.
    pub fn type_b(rank: usize) -> Self {
        Self::chain(rank, |i| if i + 2 == rank { (-2, -1) } else { (-1, -1) })
    }

    pub fn type_c(rank: usize) -> Self {
        Self::chain(rank, |i| if i + 2 == rank { (-1, -2) } else { (-1, -1) })
    }

    pub fn g2() -> Self {
        Gcm::new(vec![vec![2, -1], vec![-3, 2]]).expect("G2 is a GCM")
    }

    /// Untwisted affine `A_l^(1)`; node 0 is the affine node.
    pub fn affine_a(l: usize) -> Self {
        assert!(l >= 1);
        if l == 1 {
            return Gcm::new(vec![vec![2, -2], vec![-2, 2]]).expect("A1^(1) is a GCM");
        }
        let n = l + 1;
        let mut a = vec![vec![0; n]; n];
        for i in 0..n {
            a[i][i] = 2;
            a[i][(i + 1) % n] = -1;
            a[(i + 1) % n][i] = -1;
        }
        Gcm::new(a).expect("A_l^(1) is a GCM")
    }

    fn chain(rank: usize, bond: impl Fn(usize) -> (i64, i64)) -> Self {
        assert!(rank >= 1);
        let mut a = vec![vec![0; rank]; rank];
        for i in 0..rank {
            a[i][i] = 2;
            if i + 1 < rank {
                let (x, y) = bond(i);
                a[i][i + 1] = x;
                a[i + 1][i] = y;
            }
        }
        Gcm::new(a).expect("chain matrices are GCMs")
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// `D·A`, symmetric by construction.
    pub fn symmetrized(&self) -> Vec<Vec<i64>> {
        let n = self.size();
        (0..n)
            .map(|i| (0..n).map(|j| self.symmetrizer[i] * self.entries[i][j]).collect())
            .collect()
    }

    pub fn check_symmetrizer(&self) -> bool {
        let s = self.symmetrized();
        (0..self.size()).all(|i| (0..self.size()).all(|j| s[i][j] == s[j][i]))
    }

    /// Connected components of the Dynkin graph, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![];
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(i) = queue.pop_front() {
                comp.push(i);
                for j in 0..n {
                    if !seen[j] && self.entries[i][j] != 0 {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_indecomposable(&self) -> bool {
        self.components().len() == 1
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&linalg::from_i64(&self.entries))
    }

    pub fn submatrix(&self, nodes: &[usize]) -> Gcm {
        let entries = nodes
            .iter()
            .map(|&i| nodes.iter().map(|&j| self.entries[i][j]).collect())
            .collect();
        Gcm::new(entries).expect("principal submatrix of a GCM is a GCM")
    }

    /// Type of the algebra. Decomposable matrices are finite when every
    /// component is, and otherwise reported as indefinite.
    pub fn algebra_type(&self) -> AlgebraType {
        let comps = self.components();
        if comps.len() > 1 {
            let all_finite = comps
                .iter()
                .all(|c| self.submatrix(c).algebra_type() == AlgebraType::Finite);
            return if all_finite {
                AlgebraType::Finite
            } else {
                AlgebraType::Indefinite
            };
        }
        let s = linalg::from_i64(&self.symmetrized());
        if positive_definite(&s) {
            return AlgebraType::Finite;
        }
        let n = self.size();
        let proper_finite = (0..n).all(|skip| {
            let keep: Vec<usize> = (0..n).filter(|&i| i != skip).collect();
            let sub: linalg::Matrix = keep
                .iter()
                .map(|&i| keep.iter().map(|&j| s[i][j].clone()).collect())
                .collect();
            positive_definite(&sub)
        });
        if proper_finite && linalg::det(&s).is_zero() {
            AlgebraType::Affine {
                untwisted: self.is_untwisted_affine(),
            }
        } else {
            AlgebraType::Indefinite
        }
    }

    /// Primitive positive null vector `δ` (`A δ = 0`) of an affine matrix.
    pub fn null_root(&self) -> Option<Vec<i64>> {
        let ns = linalg::nullspace(&linalg::from_i64(&self.entries), self.size());
        if ns.len() != 1 {
            return None;
        }
        let v = &ns[0];
        let den = rational::common_denominator(v);
        let mut ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return None;
        }
        for x in ints.iter_mut() {
            *x = &*x / &g;
        }
        if ints.iter().any(Signed::is_negative) {
            for x in ints.iter_mut() {
                *x = -x.clone();
            }
        }
        if ints.iter().any(|x| !x.is_positive()) {
            return None;
        }
        ints.iter().map(ToPrimitive::to_i64).collect()
    }

    /// Untwisted affine: some node `i` with `δ_i = 1` whose removal leaves a
    /// finite system with highest root `δ − α_i`.
    fn is_untwisted_affine(&self) -> bool {
        let Some(delta) = self.null_root() else {
            return false;
        };
        let n = self.size();
        (0..n).filter(|&i| delta[i] == 1).any(|i| {
            let keep: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            let sub = self.submatrix(&keep);
            let target: Vec<i64> = keep.iter().map(|&j| delta[j]).collect();
            finite_highest_root(&sub).is_some_and(|h| h == target)
        })
    }
}

fn positive_definite(s: &[Vec<Q>]) -> bool {
    (1..=s.len()).all(|k| {
        let lead: linalg::Matrix = s[..k].iter().map(|r| r[..k].to_vec()).collect();
        linalg::det(&lead).is_positive()
    })
}

/// Highest root of a finite-type (possibly decomposable) GCM; `None` for
/// decomposable or non-finite input.
fn finite_highest_root(g: &Gcm) -> Option<Vec<i64>> {
    if !g.is_indecomposable() || g.algebra_type() != AlgebraType::Finite {
        return None;
    }
    // The closure terminates because the root system is finite.
    let roots = positive_root_closure(g, usize::MAX);
    roots.into_iter().max_by_key(|r| r.iter().sum::<i64>())
}

fn symmetrize(a: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = a.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Q::one());
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                // d_i a_ij = d_j a_ji
                let want = d[i].clone().unwrap() * q(a[i][j]) / q(a[j][i]);
                match &d[j] {
                    None => {
                        d[j] = Some(want);
                        comp.push(j);
                        queue.push_back(j);
                    }
                    Some(existing) if *existing != want => {
                        return Err(Error::NotSymmetrizable(i, j));
                    }
                    Some(_) => {}
                }
            }
        }
        // Scale this component to primitive positive integers.
        let vals: Vec<Q> = comp.iter().map(|&i| d[i].clone().unwrap()).collect();
        let den = rational::common_denominator(&vals);
        let ints: Vec<BigInt> = vals
            .iter()
            .map(|x| (x * Q::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        for (&i, v) in comp.iter().zip(ints) {
            d[i] = Some(Q::from_integer(v / &g));
        }
    }
    d.into_iter()
        .map(|x| {
            x.unwrap()
                .to_integer()
                .to_i64()
                .ok_or(Error::Overflow("symmetrizer"))
        })
        .collect()
}

/// Positive real roots of height at most `max_height`, in simple-root
/// coordinates, by closure of the simple roots under simple reflections.
fn positive_root_closure(g: &Gcm, max_height: usize) -> Vec<Vec<i64>> {
    let n = g.size();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(r) = queue.pop_front() {
        for i in 0..n {
            let mut s = r.clone();
            reflect_root(g, i, &mut s);
            let h: i64 = s.iter().sum();
            if s.iter().all(|&x| x >= 0) && h > 0 && (h as u128) <= max_height as u128 && !seen.contains(&s) {
                seen.insert(s.clone());
                queue.push_back(s);
            }
        }
    }
    seen.into_iter().collect()
}

/// `s_i(β) = β − ⟨α_i∨, β⟩ α_i` in simple-root coordinates.
pub(crate) fn reflect_root(g: &Gcm, i: usize, beta: &mut [i64]) {
    let p: i64 = (0..g.size()).map(|j| g.entry(i, j) * beta[j]).sum();
    beta[i] -= p;
}

/// `s_i(β∨) = β∨ − β∨(α_i) α_i∨` in simple-coroot coordinates.
pub(crate) fn reflect_coroot(g: &Gcm, i: usize, beta: &mut [i64]) {
    let p: i64 = (0..g.size()).map(|j| g.entry(j, i) * beta[j]).sum();
    beta[i] -= p;
}

/// An element of `h*_ℚ`, stored by its values on the basis of `h`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight {
    #[serde(with = "crate::rational::vec")]
    pub coords: Vec<Q>,
}

impl Weight {
    pub fn new(coords: Vec<Q>) -> Self {
        Self { coords }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self::new(rational::q_vec(v))
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![Q::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// `⟨α_i∨, λ⟩`.
    pub fn coroot_value(&self, i: usize) -> &Q {
        &self.coords[i]
    }

    /// In `P_{+,ℚ}`: nonnegative on every simple coroot.
    pub fn is_dominant(&self, rank: usize) -> bool {
        self.coords[..rank].iter().all(rational::is_nonneg)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|x| x.is_integer())
    }

    /// Vanishes on every simple coroot, i.e. fixed by the Weyl group.
    pub fn is_w_invariant(&self, rank: usize) -> bool {
        self.coords[..rank].iter().all(Zero::is_zero)
    }

    pub fn to_ints(&self) -> Option<Vec<i64>> {
        rational::to_i64_vec(&self.coords)
    }

    pub fn pair(&self, x: &Coweight) -> Q {
        rational::dot(&self.coords, &x.coords)
    }

    pub fn scaled(&self, k: &Q) -> Weight {
        Weight::new(self.coords.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }
}

/// An element of `h_ℚ` in the basis `α_0∨, …, α_l∨, c_1, …`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coweight {
    #[serde(with = "crate::rational::vec")]
    pub coords: Vec<Q>,
}

impl Coweight {
    pub fn new(coords: Vec<Q>) -> Self {
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn add(&self, other: &Coweight) -> Coweight {
        Coweight::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }
}

/// A real root with its coroot, both in simple coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RealRoot {
    pub root: Vec<i64>,
    pub coroot: Vec<i64>,
}

impl RealRoot {
    pub fn simple(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self {
            root: e.clone(),
            coroot: e,
        }
    }

    pub fn height(&self) -> i64 {
        self.root.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.height() > 0
    }

    pub fn is_simple(&self) -> bool {
        self.root.iter().filter(|&&x| x != 0).count() == 1 && self.root.iter().any(|&x| x == 1)
    }

    pub fn negated(&self) -> Self {
        Self {
            root: self.root.iter().map(|x| -x).collect(),
            coroot: self.coroot.iter().map(|x| -x).collect(),
        }
    }

    /// `⟨β∨, β⟩`; equals 2 for every real root.
    pub fn self_pairing(&self, g: &Gcm) -> i64 {
        let n = g.size();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| self.coroot[i] * g.entry(i, j) * self.root[j])
            .sum()
    }

    /// `⟨ρ, β∨⟩` with `ρ(α_i∨) = 1`.
    pub fn rho_pairing(&self) -> i64 {
        self.coroot.iter().sum()
    }

    /// `β(x_P)` for `x_P = Σ_{j ∉ levi} x_j`.
    pub fn grade(&self, levi: &BTreeSet<usize>) -> i64 {
        self.root
            .iter()
            .enumerate()
            .filter(|(j, _)| !levi.contains(j))
            .map(|(_, c)| c)
            .sum()
    }
}

/// The real roots of height at most `height_bound` in absolute value.
#[derive(Debug, Clone)]
pub struct RealRootSet {
    pub height_bound: usize,
    roots: Vec<RealRoot>,
    index: HashMap<Vec<i64>, usize>,
}

impl RealRootSet {
    pub fn roots(&self) -> &[RealRoot] {
        &self.roots
    }

    pub fn positive(&self) -> impl Iterator<Item = &RealRoot> {
        self.roots.iter().filter(|r| r.is_positive())
    }

    pub fn get(&self, root: &[i64]) -> Option<&RealRoot> {
        self.index.get(root).map(|&i| &self.roots[i])
    }

    pub fn contains(&self, root: &[i64]) -> bool {
        self.index.contains_key(root)
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

/// A realization of a GCM with exact coordinates; see the module docs.
#[derive(Debug, Clone)]
pub struct Realization {
    gcm: Gcm,
    dim_h: usize,
    /// `α_j` as its values on the basis of `h`.
    simple_roots: Vec<Vec<i64>>,
    central: Vec<Vec<Q>>,
    coweights: Vec<Coweight>,
    algebra_type: AlgebraType,
}

impl Realization {
    pub fn new(gcm: Gcm) -> Self {
        let n = gcm.size();
        let a = gcm.entries();
        let rank = gcm.rank();
        let dim_h = 2 * n - rank;
        // Rows of Aᵀ not in the greedy independent set get a unit vector on a
        // fresh complementary coordinate, which keeps the α_j independent and
        // the extended coroot lattice saturated.
        let mut span = linalg::Span::new();
        let mut extra = 0;
        let mut simple_roots = Vec::with_capacity(n);
        for j in 0..n {
            let col: Vec<i64> = (0..n).map(|i| a[i][j]).collect();
            let mut root = col.clone();
            root.resize(dim_h, 0);
            if !span.insert(&rational::q_vec(&col)) {
                root[n + extra] = 1;
                extra += 1;
            }
            simple_roots.push(root);
        }
        debug_assert_eq!(extra, n - rank);
        let root_matrix = linalg::from_i64(&simple_roots);
        let central = linalg::nullspace(&root_matrix, dim_h);
        let coweights = (0..n)
            .map(|i| {
                let mut e = vec![Q::zero(); n];
                e[i] = Q::one();
                Coweight::new(linalg::solve(&root_matrix, &e).expect("simple roots are independent"))
            })
            .collect();
        let algebra_type = gcm.algebra_type();
        Self {
            gcm,
            dim_h,
            simple_roots,
            central,
            coweights,
            algebra_type,
        }
    }

    pub fn gcm(&self) -> &Gcm {
        &self.gcm
    }

    /// Number of simple roots, `l + 1`.
    pub fn rank(&self) -> usize {
        self.gcm.size()
    }

    pub fn dim_h(&self) -> usize {
        self.dim_h
    }

    pub fn algebra_type(&self) -> AlgebraType {
        self.algebra_type
    }

    pub fn simple_root(&self, j: usize) -> Weight {
        Weight::from_ints(&self.simple_roots[j])
    }

    pub(crate) fn simple_root_ints(&self, j: usize) -> &[i64] {
        &self.simple_roots[j]
    }

    pub fn simple_coroot(&self, i: usize) -> Coweight {
        let mut c = vec![Q::zero(); self.dim_h];
        c[i] = Q::one();
        Coweight::new(c)
    }

    pub fn complementary_basis(&self) -> Vec<Coweight> {
        (self.rank()..self.dim_h)
            .map(|k| {
                let mut c = vec![Q::zero(); self.dim_h];
                c[k] = Q::one();
                Coweight::new(c)
            })
            .collect()
    }

    /// Basis of `{x ∈ h : α_j(x) = 0 ∀j}`.
    pub fn central_subspace(&self) -> Vec<Coweight> {
        self.central.iter().cloned().map(Coweight::new).collect()
    }

    /// `x_i` with `⟨α_j, x_i⟩ = δ_ij`: leftmost pivots, free coordinates zero.
    pub fn dual_coweights(&self) -> &[Coweight] {
        &self.coweights
    }

    /// `x_P = Σ_{j ∉ levi} x_j`.
    pub fn x_parabolic(&self, levi: &BTreeSet<usize>) -> Coweight {
        let mut c = vec![Q::zero(); self.dim_h];
        for (j, x) in self.coweights.iter().enumerate() {
            if !levi.contains(&j) {
                for (a, b) in c.iter_mut().zip(&x.coords) {
                    *a += b;
                }
            }
        }
        Coweight::new(c)
    }

    pub fn rho(&self) -> Weight {
        let mut c = vec![0; self.dim_h];
        c[..self.rank()].fill(1);
        Weight::from_ints(&c)
    }

    pub fn fundamental_weights(&self) -> Vec<Weight> {
        (0..self.rank())
            .map(|i| {
                let mut c = vec![0; self.dim_h];
                c[i] = 1;
                Weight::from_ints(&c)
            })
            .collect()
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.dim() != self.dim_h {
            return Err(Error::RealizationMismatch {
                expected: self.dim_h,
                found: w.dim(),
            });
        }
        Ok(())
    }

    /// `Σ c_j α_j` as a weight.
    pub fn root_to_weight(&self, coeffs: &[i64]) -> Weight {
        let mut c = vec![0i64; self.dim_h];
        for (j, &k) in coeffs.iter().enumerate() {
            for (a, b) in c.iter_mut().zip(&self.simple_roots[j]) {
                *a += k * b;
            }
        }
        Weight::from_ints(&c)
    }

    /// Coefficients of `λ` in the simple roots, when it lies in their span.
    pub fn root_coordinates(&self, w: &Weight) -> Option<Vec<Q>> {
        // α_j are the rows of simple_roots; solve Σ c_j α_j = λ.
        let cols = linalg::transpose(&linalg::from_i64(&self.simple_roots));
        linalg::solve(&cols, &w.coords)
    }

    /// `μ − λ` lies in `⊕ ℤ α_i`.
    pub fn in_root_lattice(&self, w: &Weight) -> bool {
        self.root_coordinates(w)
            .is_some_and(|c| c.iter().all(|x| x.is_integer()))
    }

    /// Real roots with `|height| ≤ max_height`, closed under negation.
    pub fn real_roots_up_to_height(&self, max_height: usize) -> RealRootSet {
        let g = &self.gcm;
        let n = g.size();
        let mut found: BTreeSet<RealRoot> = BTreeSet::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let r = RealRoot::simple(n, i);
            found.insert(r.clone());
            queue.push_back(r);
        }
        while let Some(r) = queue.pop_front() {
            for i in 0..n {
                let mut s = r.clone();
                reflect_root(g, i, &mut s.root);
                reflect_coroot(g, i, &mut s.coroot);
                let h = s.height();
                if h > 0 && h as usize <= max_height && !found.contains(&s) {
                    found.insert(s.clone());
                    queue.push_back(s);
                }
            }
        }
        let mut roots: Vec<RealRoot> = found.iter().cloned().collect();
        roots.extend(found.iter().map(RealRoot::negated));
        roots.sort_by(|a, b| (a.height(), &a.root).cmp(&(b.height(), &b.root)));
        let index = roots.iter().enumerate().map(|(i, r)| (r.root.clone(), i)).collect();
        RealRootSet {
            height_bound: max_height,
            roots,
            index,
        }
    }

    /// Recognises `coeffs` as a real root by descending to a simple root, and
    /// returns it with its coroot together with the descent word `u`
    /// (`β = s_{u_0} ⋯ s_{u_k}(α_i)`, returned as `(root, u, i)`).
    pub fn real_root_with_descent(&self, coeffs: &[i64]) -> Result<(RealRoot, Vec<usize>, usize)> {
        let g = &self.gcm;
        let n = g.size();
        if coeffs.len() != n {
            return Err(Error::NotRealRoot(coeffs.to_vec()));
        }
        let negative = coeffs.iter().sum::<i64>() < 0;
        let mut beta: Vec<i64> = if negative {
            coeffs.iter().map(|x| -x).collect()
        } else {
            coeffs.to_vec()
        };
        if beta.iter().any(|&x| x < 0) || beta.iter().all(|&x| x == 0) {
            return Err(Error::NotRealRoot(coeffs.to_vec()));
        }
        let mut path = Vec::new();
        let simple = loop {
            if let Some(i) = (0..n).find(|&i| beta[i] == 1 && beta.iter().sum::<i64>() == 1) {
                break i;
            }
            let pairing = |i: usize, b: &[i64]| -> i64 { (0..n).map(|j| g.entry(i, j) * b[j]).sum() };
            let Some(j) = (0..n).find(|&j| pairing(j, &beta) > 0) else {
                return Err(Error::NotRealRoot(coeffs.to_vec()));
            };
            reflect_root(g, j, &mut beta);
            if beta.iter().any(|&x| x < 0) {
                return Err(Error::NotRealRoot(coeffs.to_vec()));
            }
            path.push(j);
        };
        // β = s_{path[0]} ⋯ s_{path[k-1]} (α_simple)
        let mut coroot = vec![0; n];
        coroot[simple] = 1;
        for &j in path.iter().rev() {
            reflect_coroot(g, j, &mut coroot);
        }
        let mut root = RealRoot {
            root: beta,
            coroot,
        };
        for &j in path.iter().rev() {
            reflect_root(g, j, &mut root.root);
        }
        debug_assert_eq!(root.root, if negative { coeffs.iter().map(|x| -x).collect::<Vec<_>>() } else { coeffs.to_vec() });
        if negative {
            root = root.negated();
        }
        Ok((root, path, simple))
    }

    pub fn real_root(&self, coeffs: &[i64]) -> Result<RealRoot> {
        self.real_root_with_descent(coeffs).map(|(r, _, _)| r)
    }

    /// `⟨α_i∨, β⟩` for `β` in simple-root coordinates.
    pub fn coroot_pairing(&self, i: usize, beta: &[i64]) -> i64 {
        (0..self.rank()).map(|j| self.gcm.entry(i, j) * beta[j]).sum()
    }
}
