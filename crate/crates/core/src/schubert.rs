//! Schubert calculus on `X_P = G/P` through equivariant localization.
//!
//! `ξ^w(u)` is the restriction of the equivariant Schubert class of `w` to
//! the fixed point `u`, computed by Billey's subword sum along the canonical
//! reduced word of `u`. Ordinary structure constants are the degree-zero
//! coefficients obtained by solving the GKM system triangularly.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use parking_lot::RwLock;
use serde::Serialize;

use crate::cartan::{reflect_root, Realization};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::weyl::{CosetRepSet, ParabolicType, WeylElement, WeylGroup};

/// `ξ^w(u)` for every `w ≤ u` in `W`, keyed by the canonical word of `w`.
pub fn localizations_at(weyl: &WeylGroup, u: &WeylElement) -> HashMap<Vec<usize>, Poly> {
    let n = weyl.rank();
    let g = weyl.realization().gcm();
    let word = u.word();
    let mut states: HashMap<Vec<usize>, (WeylElement, Poly)> = HashMap::new();
    states.insert(vec![], (weyl.identity(), Poly::one(n)));
    for (j, &b) in word.iter().enumerate() {
        let mut r = vec![0; n];
        r[b] = 1;
        for &a in word[..j].iter().rev() {
            reflect_root(g, a, &mut r);
        }
        let root = Poly::linear(&r);
        let mut next = states.clone();
        for (x, p) in states.values() {
            if x.has_right_descent(b) {
                continue;
            }
            let y = weyl.right_multiply(x, b).expect("letter index is valid");
            let term = p.mul(&root);
            next.entry(y.word().to_vec())
                .and_modify(|(_, q)| *q = q.add(&term))
                .or_insert((y, term));
        }
        states = next;
    }
    states
        .into_iter()
        .filter(|(_, (_, p))| !p.is_zero())
        .map(|(k, (_, p))| (k, p))
        .collect()
}

/// `ξ^w(v)`; zero unless `w ≤ v`.
pub fn billey_localize(weyl: &WeylGroup, w: &WeylElement, v: &WeylElement) -> Poly {
    localizations_at(weyl, v)
        .remove(w.word())
        .unwrap_or_else(|| Poly::zero(weyl.rank()))
}

/// The roots `s_{b_1} ⋯ s_{b_{j-1}} α_{b_j}` whose product is `ξ^u(u)`.
fn diagonal_factors(weyl: &WeylGroup, u: &WeylElement) -> Vec<Vec<i64>> {
    let n = weyl.rank();
    let g = weyl.realization().gcm();
    let word = u.word();
    (0..word.len())
        .map(|j| {
            let mut r = vec![0; n];
            r[word[j]] = 1;
            for &a in word[..j].iter().rev() {
                reflect_root(g, a, &mut r);
            }
            r
        })
        .collect()
}

/// `ξ^w(u)` for `w, u ∈ W^P` of length at most the bound.
#[derive(Debug, Clone)]
pub struct LocalizationTable {
    reps: CosetRepSet,
    /// `at[u][w] = ξ^w(u)`, indices into `reps`, nonzero entries only.
    at: Vec<HashMap<usize, Poly>>,
    diagonal: Vec<Vec<Vec<i64>>>,
}

impl LocalizationTable {
    pub fn new(weyl: &WeylGroup, parabolic: &ParabolicType, bound: usize) -> Self {
        let reps = weyl.min_coset_reps(parabolic, bound);
        let mut at = Vec::with_capacity(reps.len());
        let mut diagonal = Vec::with_capacity(reps.len());
        for u in reps.reps() {
            let all = localizations_at(weyl, u);
            let mut row = HashMap::new();
            for (word, p) in all {
                if let Some(k) = reps.reps().iter().position(|w| w.word() == word.as_slice()) {
                    row.insert(k, p);
                }
            }
            at.push(row);
            diagonal.push(diagonal_factors(weyl, u));
        }
        Self { reps, at, diagonal }
    }

    pub fn reps(&self) -> &CosetRepSet {
        &self.reps
    }

    pub fn bound(&self) -> usize {
        self.reps.length_bound
    }

    pub fn parabolic(&self) -> &ParabolicType {
        &self.reps.parabolic
    }

    fn index_of(&self, w: &WeylElement) -> Result<usize> {
        if w.length() > self.bound() {
            return Err(Error::LengthBoundExceeded {
                length: w.length(),
                bound: self.bound(),
            });
        }
        self.reps
            .position(w)
            .ok_or_else(|| Error::NotMinimalRep(w.word().to_vec()))
    }

    fn entry(&self, w: usize, u: usize) -> Option<&Poly> {
        self.at[u].get(&w)
    }

    pub fn xi(&self, w: &WeylElement, u: &WeylElement) -> Result<Poly> {
        let (wi, ui) = (self.index_of(w)?, self.index_of(u)?);
        Ok(self
            .entry(wi, ui)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.nvars())))
    }

    fn nvars(&self) -> usize {
        self.reps.parabolic.rank()
    }

    /// Equivariant expansion of `ε^{w1} · ε^{w2}` over every `u` of length at
    /// most `ℓ(w1) + ℓ(w2)`.
    pub fn product(&self, w1: &WeylElement, w2: &WeylElement) -> Result<Product> {
        let (i1, i2) = (self.index_of(w1)?, self.index_of(w2)?);
        let total = w1.length() + w2.length();
        if total > self.bound() {
            return Err(Error::LengthBoundExceeded {
                length: total,
                bound: self.bound(),
            });
        }
        let zero = Poly::zero(self.nvars());
        let mut coeffs: Vec<(usize, Poly)> = Vec::new();
        for (u, rep) in self.reps.reps().iter().enumerate() {
            if rep.length() > total {
                break;
            }
            let lhs = self
                .entry(i1, u)
                .unwrap_or(&zero)
                .mul(self.entry(i2, u).unwrap_or(&zero));
            let mut rhs = lhs;
            for (up, p) in &coeffs {
                if let Some(x) = self.entry(*up, u) {
                    rhs = rhs.sub(&p.mul(x));
                }
            }
            if rhs.is_zero() {
                continue;
            }
            let mut q = rhs;
            for f in &self.diagonal[u] {
                q = q.div_linear(f).ok_or_else(|| {
                    Error::PreconditionViolated(format!(
                        "localization system not divisible at {}",
                        self.reps.reps()[u]
                    ))
                })?;
            }
            coeffs.push((u, q));
        }
        Ok(Product {
            w1: i1,
            w2: i2,
            degree: total,
            coeffs,
        })
    }
}

/// `ε^{w1} · ε^{w2} = Σ_u p^u ε^u` in equivariant cohomology.
#[derive(Debug, Clone)]
pub struct Product {
    w1: usize,
    w2: usize,
    degree: usize,
    coeffs: Vec<(usize, Poly)>,
}

impl Product {
    /// The equivariant coefficient `p^u` (index into the table's reps).
    pub fn coefficient(&self, u: usize) -> Option<&Poly> {
        self.coeffs.iter().find(|(k, _)| *k == u).map(|(_, p)| p)
    }

    pub fn coefficients(&self) -> &[(usize, Poly)] {
        &self.coeffs
    }

    /// Nonzero ordinary structure constants `n^v`, keyed by rep index.
    pub fn cup(&self, table: &LocalizationTable) -> Vec<(usize, BigInt)> {
        self.coeffs
            .iter()
            .filter(|(u, _)| table.reps.reps()[*u].length() == self.degree)
            .map(|(u, p)| (*u, p.constant_term()))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// `Σ_{u'} p^{u'} ξ^{u'}(u) = ξ^{w1}(u) ξ^{w2}(u)` at every point of the table.
    pub fn gkm_consistent(&self, table: &LocalizationTable) -> bool {
        let zero = Poly::zero(table.nvars());
        (0..table.reps.len()).all(|u| {
            let lhs = table
                .entry(self.w1, u)
                .unwrap_or(&zero)
                .mul(table.entry(self.w2, u).unwrap_or(&zero));
            let rhs = self.coeffs.iter().fold(zero.clone(), |acc, (up, p)| match table.entry(*up, u) {
                Some(x) => acc.add(&p.mul(x)),
                None => acc,
            });
            lhs == rhs
        })
    }
}

/// The multiset of grades `γ(x_P)` behind `i ↦ d_i` or `i ↦ d^i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradingProfile {
    grades: Vec<i64>,
}

impl GradingProfile {
    pub fn new(mut grades: Vec<i64>) -> Self {
        grades.sort_unstable();
        Self { grades }
    }

    pub fn grades(&self) -> &[i64] {
        &self.grades
    }

    /// `#{g ≤ i}`.
    pub fn d(&self, i: i64) -> usize {
        self.grades.partition_point(|&g| g <= i)
    }

    /// `d_j − d_{j−1}`.
    pub fn d_bar(&self, j: i64) -> usize {
        self.grades.iter().filter(|&&g| g == j).count()
    }

    pub fn max_grade(&self) -> i64 {
        self.grades.last().copied().unwrap_or(0).max(0)
    }

    /// `(d_0, …, d_max)`.
    pub fn vector(&self, max: i64) -> Vec<usize> {
        (0..=max).map(|i| self.d(i)).collect()
    }

    fn with(mut self, g: i64) -> Self {
        let at = self.grades.partition_point(|&x| x < g);
        self.grades.insert(at, g);
        self
    }

    fn without(mut self, g: i64) -> Option<Self> {
        let at = self.grades.iter().position(|&x| x == g)?;
        self.grades.remove(at);
        Some(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Movability {
    Movable,
    NotMovable,
    /// The cup coefficient vanishes, so the condition is not evaluated.
    ZeroCup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeformedEntry {
    pub cup: i64,
    pub movability: Movability,
    pub deformed: i64,
}

/// `(w1, w2, v) ↦ (n^v_{w1,w2}, movable, deformed)` for one parabolic.
#[derive(Debug, Clone, Serialize)]
pub struct DeformedCoefficientTable {
    pub parabolic: ParabolicType,
    pub max_length: usize,
    pub entries: BTreeMap<(Vec<usize>, Vec<usize>, Vec<usize>), DeformedEntry>,
}

impl DeformedCoefficientTable {
    pub fn get(&self, w1: &[usize], w2: &[usize], v: &[usize]) -> Option<&DeformedEntry> {
        self.entries.get(&(w1.to_vec(), w2.to_vec(), v.to_vec()))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&(Vec<usize>, Vec<usize>, Vec<usize>), &DeformedEntry)> {
        self.entries.iter().filter(|(_, e)| e.cup != 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FregCase {
    /// `ℓ(s_β v) = ℓ(v) − 1`; compares `d_i`.
    Lowering,
    /// `ℓ(s_β v) = ℓ(v) + 1`; compares `d^i`.
    Raising,
}

/// Comparison of grading profiles at `v̇` and at `ẇ = s_β v̇`.
#[derive(Debug, Clone, Serialize)]
pub struct FregReport {
    pub v: WeylElement,
    pub w: WeylElement,
    pub beta: Vec<i64>,
    pub case: FregCase,
    pub beta_simple: bool,
    /// `⟨ρ, β∨⟩`.
    pub rho_coroot: i64,
    /// `(d_0, …)` at `v̇` and at `ẇ`, over a common range.
    pub at_v: Vec<usize>,
    pub at_w: Vec<usize>,
    /// `d(ẇ) ≥ d(v̇)` (lowering) or `d(ẇ) ≤ d(v̇)` (raising) everywhere.
    pub componentwise: bool,
    pub strict_index: Option<i64>,
    /// `k` and both sides of the grade-sum identity for the length-lowering
    /// pair among `{v, w}`.
    pub k: i64,
    pub identity_lhs: i64,
    pub identity_rhs: i64,
}

impl FregReport {
    pub fn holds(&self) -> bool {
        self.componentwise
            && (self.beta_simple || self.strict_index.is_some())
            && self.identity_lhs == self.identity_rhs
    }
}

/// Schubert calculus for one parabolic, with cached products.
pub struct SchubertCalculus {
    weyl: Arc<WeylGroup>,
    table: LocalizationTable,
    products: RwLock<HashMap<(usize, usize), Arc<Product>>>,
}

impl SchubertCalculus {
    pub fn new(weyl: Arc<WeylGroup>, parabolic: &ParabolicType, bound: usize) -> Self {
        let table = LocalizationTable::new(&weyl, parabolic, bound);
        Self {
            weyl,
            table,
            products: RwLock::new(HashMap::new()),
        }
    }

    pub fn weyl(&self) -> &Arc<WeylGroup> {
        &self.weyl
    }

    pub fn realization(&self) -> &Realization {
        self.weyl.realization()
    }

    pub fn table(&self) -> &LocalizationTable {
        &self.table
    }

    pub fn parabolic(&self) -> &ParabolicType {
        self.table.parabolic()
    }

    pub fn reps(&self) -> &CosetRepSet {
        self.table.reps()
    }

    pub fn product(&self, w1: &WeylElement, w2: &WeylElement) -> Result<Arc<Product>> {
        let key = (self.table.index_of(w1)?, self.table.index_of(w2)?);
        if let Some(p) = self.products.read().get(&key) {
            return Ok(p.clone());
        }
        let p = Arc::new(self.table.product(w1, w2)?);
        self.products.write().insert(key, p.clone());
        Ok(p)
    }

    fn check_lengths(w1: &WeylElement, w2: &WeylElement, v: &WeylElement) -> Result<()> {
        if v.length() != w1.length() + w2.length() {
            return Err(Error::LengthMismatch {
                v: v.length(),
                sum: w1.length() + w2.length(),
            });
        }
        Ok(())
    }

    /// `n^v_{w1,w2}`.
    pub fn cup_coefficient(&self, w1: &WeylElement, w2: &WeylElement, v: &WeylElement) -> Result<i64> {
        Self::check_lengths(w1, w2, v)?;
        let vi = self.table.index_of(v)?;
        let p = self.product(w1, w2)?;
        p.coefficient(vi)
            .map_or(Ok(0), |c| c.constant_term().to_i64().ok_or(Error::Overflow("cup coefficient")))
    }

    fn require_rep(&self, w: &WeylElement) -> Result<()> {
        if self.weyl.is_min_rep(w, self.parabolic()) {
            Ok(())
        } else {
            Err(Error::NotMinimalRep(w.word().to_vec()))
        }
    }

    /// Grades `γ(x_P)` of `Φ⁺ ∩ w⁻¹Φ⁻`, i.e. `−θ(x_P)` over `{θ ∈ Φ⁻ : wθ ∈ Φ⁺}`.
    pub fn inversion_profile(&self, w: &WeylElement) -> GradingProfile {
        let levi = self.parabolic().levi();
        GradingProfile::new(self.weyl.inversions(w).iter().map(|r| r.grade(levi)).collect())
    }

    fn grade(&self, root: &[i64]) -> i64 {
        let levi = self.parabolic().levi();
        root.iter()
            .enumerate()
            .filter(|(j, _)| !levi.contains(j))
            .map(|(_, c)| c)
            .sum()
    }

    /// Profile of `i ↦ d_i(ẇ, X_v^P)` for `w = v` or `w = s_β v` one step down.
    pub fn lower_profile(&self, w: &WeylElement, v: &WeylElement) -> Result<GradingProfile> {
        self.require_rep(v)?;
        if w == v {
            return Ok(self.inversion_profile(v));
        }
        let unsupported = || {
            Error::UnsupportedPair(format!(
                "{w} is neither {v} nor a length-lowering reflection of it in W^P"
            ))
        };
        if w.length() + 1 != v.length() || !self.weyl.is_min_rep(w, self.parabolic()) {
            return Err(unsupported());
        }
        // v = w s_γ with γ ∈ inv(v); then k = (w⁻¹β)(x_P) = γ(x_P).
        for gamma in self.weyl.inversions(v) {
            let s = self.weyl.reflection_of_root(&gamma.root)?;
            if &self.weyl.multiply(v, &s) == w {
                let k = self.grade(&gamma.root);
                return Ok(self.inversion_profile(w).with(k));
            }
        }
        Err(unsupported())
    }

    pub fn d_lower(&self, i: i64, w: &WeylElement, v: &WeylElement) -> Result<usize> {
        Ok(self.lower_profile(w, v)?.d(i))
    }

    /// `d^i(v̇, X^v_P)`.
    pub fn d_upper(&self, i: i64, v: &WeylElement) -> Result<usize> {
        self.require_rep(v)?;
        Ok(self.inversion_profile(v).d(i))
    }

    /// The `d`-identity `d_i(v̇) = d^i(ẇ1) + d^i(ẇ2)` for all `i`.
    pub fn is_levi_movable(&self, w1: &WeylElement, w2: &WeylElement, v: &WeylElement) -> Result<bool> {
        Self::check_lengths(w1, w2, v)?;
        for w in [w1, w2, v] {
            self.require_rep(w)?;
        }
        if self.cup_coefficient(w1, w2, v)? == 0 {
            return Err(Error::ZeroCupProduct);
        }
        Ok(self.d_identity(w1, w2, v))
    }

    fn d_identity(&self, w1: &WeylElement, w2: &WeylElement, v: &WeylElement) -> bool {
        let (pv, p1, p2) = (
            self.inversion_profile(v),
            self.inversion_profile(w1),
            self.inversion_profile(w2),
        );
        let top = pv.max_grade().max(p1.max_grade()).max(p2.max_grade());
        (0..=top).all(|i| pv.d(i) == p1.d(i) + p2.d(i))
    }

    pub fn deformed_coefficient(&self, w1: &WeylElement, w2: &WeylElement, v: &WeylElement) -> Result<i64> {
        let cup = self.cup_coefficient(w1, w2, v)?;
        if cup == 0 {
            return Ok(0);
        }
        Ok(if self.is_levi_movable(w1, w2, v)? { cup } else { 0 })
    }

    /// Every triple in `W^P` with `ℓ(v) = ℓ(w1) + ℓ(w2) ≤ max_length`.
    pub fn deformed_table(&self, max_length: usize) -> Result<DeformedCoefficientTable> {
        if max_length > self.table.bound() {
            return Err(Error::LengthBoundExceeded {
                length: max_length,
                bound: self.table.bound(),
            });
        }
        let reps = self.reps().reps();
        let mut entries = BTreeMap::new();
        for w1 in reps {
            for w2 in reps {
                let total = w1.length() + w2.length();
                if total > max_length {
                    continue;
                }
                let prod = self.product(w1, w2)?;
                let cups: HashMap<usize, BigInt> = prod.cup(&self.table).into_iter().collect();
                for (vi, v) in reps.iter().enumerate().filter(|(_, v)| v.length() == total) {
                    let cup = cups
                        .get(&vi)
                        .map_or(Some(0), ToPrimitive::to_i64)
                        .ok_or(Error::Overflow("cup coefficient"))?;
                    let movability = if cup == 0 {
                        Movability::ZeroCup
                    } else if self.d_identity(w1, w2, v) {
                        Movability::Movable
                    } else {
                        Movability::NotMovable
                    };
                    let deformed = if movability == Movability::Movable { cup } else { 0 };
                    entries.insert(
                        (w1.word().to_vec(), w2.word().to_vec(), v.word().to_vec()),
                        DeformedEntry {
                            cup,
                            movability,
                            deformed,
                        },
                    );
                }
            }
        }
        Ok(DeformedCoefficientTable {
            parabolic: self.parabolic().clone(),
            max_length,
            entries,
        })
    }

    /// Compares the grading profiles at `v̇` and `s_β v̇`.
    pub fn freg_profile(&self, v: &WeylElement, beta: &[i64]) -> Result<FregReport> {
        let pre = |m: String| Error::PreconditionViolated(m);
        if !self.weyl.is_min_rep(v, self.parabolic()) {
            return Err(pre(format!("{v} is not in W^P")));
        }
        let root = self.realization().real_root(beta)?;
        if !root.is_positive() {
            return Err(pre(format!("{beta:?} is not a positive root")));
        }
        let s = self.weyl.reflection_of_root(beta)?;
        let w = self.weyl.multiply(&s, v);
        if !self.weyl.is_min_rep(&w, self.parabolic()) {
            return Err(pre(format!("s_β v = {w} is not in W^P")));
        }
        let case = if w.length() + 1 == v.length() {
            FregCase::Lowering
        } else if w.length() == v.length() + 1 {
            FregCase::Raising
        } else {
            return Err(pre(format!("ℓ({w}) differs from ℓ({v}) by more than one")));
        };
        let at_v = self.inversion_profile(v);
        let at_w = match case {
            FregCase::Lowering => self
                .inversion_profile(&w)
                .with(self.grade(&w.apply_inverse_to_root(beta))),
            FregCase::Raising => {
                let m = self.grade(&v.apply_inverse_to_root(beta));
                self.inversion_profile(&w)
                    .without(m)
                    .ok_or_else(|| pre("v⁻¹β is not an inversion of s_β v".into()))?
            }
        };
        let top = at_v.max_grade().max(at_w.max_grade());
        let (vv, wv) = (at_v.vector(top), at_w.vector(top));
        let (componentwise, strict_index) = match case {
            FregCase::Lowering => (
                vv.iter().zip(&wv).all(|(a, b)| b >= a),
                (0..=top).find(|&i| wv[i as usize] > vv[i as usize]),
            ),
            FregCase::Raising => (
                vv.iter().zip(&wv).all(|(a, b)| b <= a),
                (0..=top).find(|&i| wv[i as usize] < vv[i as usize]),
            ),
        };
        let (upper, lower) = match case {
            FregCase::Lowering => (v, &w),
            FregCase::Raising => (&w, v),
        };
        let k = self.grade(&lower.apply_inverse_to_root(beta));
        let (lhs, rhs) = self.grade_sum_identity(upper, lower, k, root.rho_pairing());
        Ok(FregReport {
            v: v.clone(),
            w: w.clone(),
            beta: beta.to_vec(),
            case,
            beta_simple: root.is_simple(),
            rho_coroot: root.rho_pairing(),
            at_v: vv,
            at_w: wv,
            componentwise,
            strict_index,
            k,
            identity_lhs: lhs,
            identity_rhs: rhs,
        })
    }

    /// Both sides of
    /// `1 + Σ_{j≥2, j≠k} (j−1)(d̄_j(v̇) − d̄_j(ẇ; X_v)) + (k−1)(d̄_k(v̇) − d̄_k(ẇ; X_v) + 1) = ⟨ρ, β∨⟩ k`
    /// for `ℓ(w) = ℓ(v) − 1`.
    fn grade_sum_identity(&self, v: &WeylElement, w: &WeylElement, k: i64, rho_coroot: i64) -> (i64, i64) {
        let dv = self.inversion_profile(v);
        let dw = self.inversion_profile(w).with(k);
        let top = dv.max_grade().max(dw.max_grade());
        let bar = |p: &GradingProfile, j: i64| p.d_bar(j) as i64;
        let mut lhs = 1;
        for j in 2..=top {
            if j != k {
                lhs += (j - 1) * (bar(&dv, j) - bar(&dw, j));
            }
        }
        lhs += (k - 1) * (bar(&dv, k) - bar(&dw, k) + 1);
        (lhs, rho_coroot * k)
    }

    /// Every admissible `(v, β)` with `ℓ(v) ≤ max_length`, in both cases.
    pub fn freg_sweep(&self, max_length: usize) -> Result<Vec<FregReport>> {
        if max_length + 1 > self.table.bound() {
            return Err(Error::LengthBoundExceeded {
                length: max_length + 1,
                bound: self.table.bound(),
            });
        }
        let reps = self.reps().reps();
        let mut out = Vec::new();
        for v in reps.iter().filter(|v| v.length() <= max_length) {
            // Lowering: w = v s_γ for γ ∈ inv(v), β = −v(γ).
            for gamma in self.weyl.inversions(v) {
                let beta: Vec<i64> = v.apply_to_root(&gamma.root).iter().map(|x| -x).collect();
                let s = self.weyl.reflection_of_root(&beta)?;
                let w = self.weyl.multiply(&s, v);
                if w.length() + 1 == v.length() && self.weyl.is_min_rep(&w, self.parabolic()) {
                    out.push(self.freg_profile(v, &beta)?);
                }
            }
            // Raising: v = w s_γ for γ ∈ inv(w), β = −w(γ).
            for w in reps.iter().filter(|w| w.length() == v.length() + 1) {
                for gamma in self.weyl.inversions(w) {
                    let s = self.weyl.reflection_of_root(&gamma.root)?;
                    if &self.weyl.multiply(w, &s) == v {
                        let beta: Vec<i64> = w.apply_to_root(&gamma.root).iter().map(|x| -x).collect();
                        out.push(self.freg_profile(v, &beta)?);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `((ρ − v⁻¹ρ)(x_P), ℓ(v) + Σ_{j≥2} (j−1) d̄_j(v̇))`, computed independently.
    pub fn length_identity(&self, v: &WeylElement) -> Result<(BigInt, BigInt)> {
        self.require_rep(v)?;
        let r = self.realization();
        let rho = r.rho();
        let moved = self.weyl.act_on_weight(&self.weyl.inverse(v), &rho)?;
        let x = r.x_parabolic(self.parabolic().levi());
        let lhs = rho.sub(&moved).pair(&x);
        if !lhs.is_integer() {
            return Err(Error::PreconditionViolated("non-integral grade sum".into()));
        }
        let profile = self.inversion_profile(v);
        let rhs: i64 = v.length() as i64
            + (2..=profile.max_grade())
                .map(|j| (j - 1) * profile.d_bar(j) as i64)
                .sum::<i64>();
        Ok((lhs.to_integer(), BigInt::from(rhs)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Gcm;

    fn calc(g: Gcm, levi: &[usize], bound: usize) -> SchubertCalculus {
        let weyl = Arc::new(WeylGroup::new(Arc::new(Realization::new(g))));
        let p = ParabolicType::new(weyl.rank(), levi.iter().copied()).unwrap();
        SchubertCalculus::new(weyl, &p, bound)
    }

    #[test]
    fn identity_class_localizes_to_one() {
        let c = calc(Gcm::type_a(2), &[], 3);
        let e = c.weyl().identity();
        for u in c.reps().reps() {
            assert_eq!(c.table().xi(&e, u).unwrap(), Poly::one(2));
        }
    }

    #[test]
    fn support_and_diagonal() {
        let c = calc(Gcm::type_a(2), &[], 3);
        let w = c.weyl();
        let s1 = w.element(&[0]).unwrap();
        let s2s1 = w.element(&[1, 0]).unwrap();
        let s2 = w.element(&[1]).unwrap();
        assert!(c.table().xi(&s1, &s2).unwrap().is_zero());
        assert!(!c.table().xi(&s1, &s2s1).unwrap().is_zero());
        // ξ^{s1 s2}(s1 s2) = α_1 · s_1(α_2).
        let s1s2 = w.element(&[0, 1]).unwrap();
        assert_eq!(
            c.table().xi(&s1s2, &s1s2).unwrap(),
            Poly::linear(&[1, 0]).mul(&Poly::linear(&[1, 1]))
        );
    }

    #[test]
    fn a2_flag_products() {
        let c = calc(Gcm::type_a(2), &[], 3);
        let w = c.weyl();
        let s1 = w.element(&[0]).unwrap();
        let s2 = w.element(&[1]).unwrap();
        let s1s2 = w.element(&[0, 1]).unwrap();
        let s2s1 = w.element(&[1, 0]).unwrap();
        assert_eq!(c.cup_coefficient(&s1, &s2, &s1s2).unwrap(), 1);
        assert_eq!(c.cup_coefficient(&s1, &s2, &s2s1).unwrap(), 1);
        assert_eq!(c.cup_coefficient(&s1, &s1, &s2s1).unwrap(), 1);
        assert_eq!(c.cup_coefficient(&s1, &s1, &s1s2).unwrap(), 0);
        assert!(matches!(
            c.cup_coefficient(&s1, &s1, &s1),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn projective_plane_square() {
        let c = calc(Gcm::type_a(2), &[1], 2);
        let w = c.weyl();
        let s1 = w.element(&[0]).unwrap();
        let s2s1 = w.element(&[1, 0]).unwrap();
        assert_eq!(c.cup_coefficient(&s1, &s1, &s2s1).unwrap(), 1);
        assert!(c.is_levi_movable(&s1, &s1, &s2s1).unwrap());
        assert_eq!(c.deformed_coefficient(&s1, &s1, &s2s1).unwrap(), 1);
    }

    #[test]
    fn sl2_counts() {
        let c = calc(Gcm::type_a(1), &[], 2);
        let w = c.weyl();
        let s = w.element(&[0]).unwrap();
        let e = w.identity();
        assert_eq!(c.d_lower(0, &s, &s).unwrap(), 0);
        assert_eq!(c.d_lower(1, &s, &s).unwrap(), 1);
        assert_eq!(c.d_upper(1, &s).unwrap(), 1);
        assert_eq!(c.d_upper(3, &e).unwrap(), 0);
        assert!(c.is_levi_movable(&s, &e, &s).unwrap());
        assert_eq!(c.deformed_coefficient(&s, &e, &s).unwrap(), 1);
        assert!(c.is_levi_movable(&e, &e, &e).unwrap());
    }

    #[test]
    fn zero_cup_is_reported() {
        let c = calc(Gcm::type_a(2), &[], 3);
        let w = c.weyl();
        let s1 = w.element(&[0]).unwrap();
        let s1s2 = w.element(&[0, 1]).unwrap();
        assert_eq!(c.is_levi_movable(&s1, &s1, &s1s2), Err(Error::ZeroCupProduct));
        assert_eq!(c.deformed_coefficient(&s1, &s1, &s1s2).unwrap(), 0);
    }

    #[test]
    fn shifted_lower_count() {
        let c = calc(Gcm::type_a(2), &[], 4);
        let w = c.weyl();
        let v = w.element(&[0, 1, 0]).unwrap();
        let lower = w.element(&[0, 1]).unwrap();
        let unrelated = w.element(&[0]).unwrap();
        assert!(c.lower_profile(&lower, &v).is_ok());
        assert!(matches!(c.d_lower(1, &unrelated, &v), Err(Error::UnsupportedPair(_))));
    }

    #[test]
    fn freg_non_simple_root_in_a2() {
        let c = calc(Gcm::type_a(2), &[], 4);
        let w = c.weyl();
        // s_β = w_0 here, so s_β w_0 = e is three steps down, not one.
        let w0 = w.element(&[0, 1, 0]).unwrap();
        assert!(matches!(c.freg_profile(&w0, &[1, 1]), Err(Error::PreconditionViolated(_))));
        let v = w.element(&[0, 1]).unwrap();
        let r = c.freg_profile(&v, &[1, 1]).unwrap();
        assert_eq!(r.w.word(), &[0]);
        assert_eq!(r.case, FregCase::Lowering);
        assert!(!r.beta_simple);
        assert!(r.componentwise);
        assert!(r.strict_index.is_some());
        assert_eq!(r.identity_lhs, r.identity_rhs);
    }

    #[test]
    fn length_identity_on_b2() {
        let c = calc(Gcm::type_b(2), &[1], 5);
        for v in c.reps().reps() {
            let (a, b) = c.length_identity(v).unwrap();
            assert_eq!(a, b, "at {v}");
        }
    }
}
