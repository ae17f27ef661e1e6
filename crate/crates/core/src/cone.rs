//! The tensor cone: inequalities from deformed Schubert coefficients, their
//! faces, realizability searches and exact redundancy certificates.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_traits::{Signed, ToPrimitive, Zero};
use parking_lot::RwLock;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cartan::{Coweight, Realization, Weight};
use crate::error::{Error, Result};
use crate::linalg::{self, Span};
use crate::lp::{Constraint, LinearProgram, LpOutcome, Relation};
use crate::rational::{self, Q};
use crate::schubert::SchubertCalculus;
use crate::tensor::{MembershipVerdict, TensorEngine};
use crate::weyl::{ParabolicType, WeylElement, WeylGroup};

/// A point `(λ₁, λ₂, μ)` of `(h*)³`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Triple {
    pub lambda1: Weight,
    pub lambda2: Weight,
    pub mu: Weight,
}

impl Triple {
    pub fn new(lambda1: Weight, lambda2: Weight, mu: Weight) -> Self {
        Self { lambda1, lambda2, mu }
    }

    pub fn from_ints(l1: &[i64], l2: &[i64], mu: &[i64]) -> Self {
        Self::new(Weight::from_ints(l1), Weight::from_ints(l2), Weight::from_ints(mu))
    }

    pub fn flatten(&self) -> Vec<Q> {
        self.lambda1
            .coords
            .iter()
            .chain(&self.lambda2.coords)
            .chain(&self.mu.coords)
            .cloned()
            .collect()
    }

    pub fn from_flat(v: &[Q]) -> Self {
        let k = v.len() / 3;
        Self::new(
            Weight::new(v[..k].to_vec()),
            Weight::new(v[k..2 * k].to_vec()),
            Weight::new(v[2 * k..].to_vec()),
        )
    }

    /// `μ − λ₁ − λ₂`.
    pub fn defect(&self) -> Weight {
        self.mu.sub(&self.lambda1).sub(&self.lambda2)
    }

    pub fn is_dominant(&self, rank: usize) -> bool {
        [&self.lambda1, &self.lambda2, &self.mu].iter().all(|w| w.is_dominant(rank))
    }
}

/// `E = {(λ₁, λ₂, μ) : λ₁ + λ₂ − μ ∈ Span_ℚ Δ}`, as flat vectors.
#[derive(Debug, Clone)]
pub struct SpaceE {
    pub dim_h: usize,
    pub basis: Vec<Vec<Q>>,
}

impl SpaceE {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, t: &Triple) -> bool {
        let mut span = Span::new();
        for b in &self.basis {
            span.insert(b);
        }
        span.contains(&t.flatten())
    }

    /// `[f(b) for b in basis]` for a linear form given as a flat row.
    pub fn restrict(&self, row: &[Q]) -> Vec<Q> {
        self.basis.iter().map(|b| rational::dot(row, b)).collect()
    }
}

/// `λ₁(w₁x_j) + λ₂(w₂x_j) − μ(vx_j) ≥ 0` for a maximal parabolic with
/// `Δ ∖ Δ(P) = {α_j}`.
#[derive(Debug, Clone)]
pub struct Inequality {
    pub parabolic: usize,
    pub w1: WeylElement,
    pub w2: WeylElement,
    pub v: WeylElement,
    forms: [Coweight; 3],
}

impl Inequality {
    /// The coweights `w₁x_j, w₂x_j, vx_j`.
    pub fn forms(&self) -> &[Coweight; 3] {
        &self.forms
    }

    /// The inequality as a flat row on `(h*)³`.
    pub fn row(&self) -> Vec<Q> {
        let [a, b, c] = &self.forms;
        a.coords
            .iter()
            .chain(&b.coords)
            .cloned()
            .chain(c.coords.iter().map(|x| -x))
            .collect()
    }

    fn key(&self) -> (usize, &[usize], &[usize], &[usize]) {
        (self.parabolic, self.w1.word(), self.w2.word(), self.v.word())
    }
}

impl PartialEq for Inequality {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Inequality {}

impl Serialize for Inequality {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Inequality", 5)?;
        st.serialize_field("parabolic", &self.parabolic)?;
        st.serialize_field("w1", self.w1.word())?;
        st.serialize_field("w2", self.w2.word())?;
        st.serialize_field("v", self.v.word())?;
        st.serialize_field("coefficient", &1)?;
        st.end()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InequalitySystem {
    /// Triples with `ℓ(v) ≤ max_length` are all present.
    pub max_length: usize,
    /// Whether `max_length` already reaches `dim G/P` for every maximal `P`.
    pub exhaustive: bool,
    pub inequalities: Vec<Inequality>,
}

/// The face cut out by `I^j = 0` for every `α_j ∉ Δ(P)`.
#[derive(Debug, Clone)]
pub struct Face {
    pub parabolic: ParabolicType,
    pub w1: WeylElement,
    pub w2: WeylElement,
    pub v: WeylElement,
    /// `(j, flat row of I^j)`.
    pub equalities: Vec<(usize, Vec<Q>)>,
}

impl Face {
    /// `2 dim h + #Δ(P)`.
    pub fn expected_dimension(&self, dim_h: usize) -> usize {
        2 * dim_h + self.parabolic.levi().len()
    }

    pub fn values(&self, t: &Triple) -> Vec<Q> {
        let flat = t.flatten();
        self.equalities.iter().map(|(_, r)| rational::dot(r, &flat)).collect()
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.values(t).iter().all(Zero::is_zero)
    }
}

/// Bounds for the realizability search on a face.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FaceSearch {
    /// Bound on the coroot coordinates of `λ₁, λ₂`; the root-lattice part of
    /// `λ₁ + λ₂ − μ` has height at most `2·height`.
    pub height: usize,
    pub n_max: u64,
    pub depth: usize,
    pub max_tests: usize,
}

impl Default for FaceSearch {
    fn default() -> Self {
        Self {
            height: 3,
            n_max: 4,
            depth: 12,
            max_tests: 2000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceVerdict {
    /// `d` independent realizable points were found.
    Pass,
    /// Fewer than `d`; inconclusive rather than a counterexample.
    BudgetExhausted,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub triple: Triple,
    /// `L(Nμ) ⊂ L(Nλ₁) ⊗ L(Nλ₂)` for this `N`.
    pub n: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FaceReport {
    pub d_expected: usize,
    pub rank_found: usize,
    /// `dim(E ∩ ker)` for the equality system.
    pub kernel_dim: usize,
    pub witnesses: Vec<Witness>,
    pub candidates_examined: usize,
    pub membership_tests: usize,
    pub verdict: FaceVerdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryDegree {
    pub root: usize,
    /// 1 and 2 for `Δ⁺(w₁)`, `Δ⁺(w₂)`; 3 for `Δ⁻(v)`.
    pub slot: u8,
    #[serde(with = "crate::rational::scalar")]
    pub degree: Q,
}

#[derive(Debug, Clone, Serialize)]
pub struct RestrictionReport {
    pub degrees: Vec<BoundaryDegree>,
    pub all_nonnegative: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BoundaryKind {
    D1,
    D2,
    D3,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryClass {
    pub root: usize,
    pub slot: u8,
    pub kind: BoundaryKind,
    /// Slots 1, 2: `s_α w_i ≤ v`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reflected_below_v: Option<bool>,
    /// Slot 3: `w₁ ≤ s_α v` and `w₂ ≤ s_α v`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w1_below: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w2_below: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Certificate {
    /// A dominant point satisfying every other inequality with `I < 0`.
    Irredundant {
        #[serde(with = "crate::rational::vec")]
        point: Vec<Q>,
        #[serde(with = "crate::rational::scalar")]
        value: Q,
    },
    /// `row(I) = Σ y_k row(I_k) + s` with `y, s ≥ 0`; `s` pairs with the
    /// dominance constraints.
    Redundant {
        multipliers: Vec<(usize, String)>,
        #[serde(with = "crate::rational::vec")]
        dominance: Vec<Q>,
    },
}

impl Certificate {
    pub fn is_irredundant(&self) -> bool {
        matches!(self, Certificate::Irredundant { .. })
    }
}

pub struct TensorCone {
    weyl: Arc<WeylGroup>,
    tensor: Option<TensorEngine>,
    calculi: RwLock<HashMap<BTreeSet<usize>, Arc<SchubertCalculus>>>,
}

impl std::fmt::Debug for TensorCone {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TensorCone").field("rank", &self.weyl.rank()).finish()
    }
}

impl TensorCone {
    pub fn new(realization: Arc<Realization>) -> Self {
        let tensor = TensorEngine::new(realization.clone()).ok();
        Self {
            weyl: Arc::new(WeylGroup::new(realization)),
            tensor,
            calculi: RwLock::new(HashMap::new()),
        }
    }

    pub fn realization(&self) -> &Arc<Realization> {
        self.weyl.realization()
    }

    pub fn weyl(&self) -> &Arc<WeylGroup> {
        &self.weyl
    }

    pub fn tensor(&self) -> Result<&TensorEngine> {
        self.tensor.as_ref().ok_or_else(|| {
            Error::UnsupportedType(self.realization().algebra_type().label().into())
        })
    }

    /// A Schubert calculus for `P` whose table reaches length `bound`.
    pub fn calculus(&self, p: &ParabolicType, bound: usize) -> Arc<SchubertCalculus> {
        if let Some(c) = self.calculi.read().get(p.levi()) {
            if c.table().bound() >= bound {
                return c.clone();
            }
        }
        let c = Arc::new(SchubertCalculus::new(self.weyl.clone(), p, bound));
        self.calculi.write().insert(p.levi().clone(), c.clone());
        c
    }

    pub fn space_e(&self) -> SpaceE {
        let r = self.realization();
        let k = r.dim_h();
        let mut basis = Vec::with_capacity(2 * k + r.rank());
        for part in 0..2 {
            for i in 0..k {
                let mut v = vec![Q::zero(); 3 * k];
                v[part * k + i] = Q::from_integer(1.into());
                v[2 * k + i] = Q::from_integer(1.into());
                basis.push(v);
            }
        }
        for i in 0..r.rank() {
            let mut v = vec![Q::zero(); 3 * k];
            v[2 * k..].clone_from_slice(&r.simple_root(i).coords);
            basis.push(v);
        }
        SpaceE { dim_h: k, basis }
    }

    fn forms(&self, j: usize, w1: &WeylElement, w2: &WeylElement, v: &WeylElement) -> Result<[Coweight; 3]> {
        let x = &self.realization().dual_coweights()[j];
        Ok([
            self.weyl.act_on_coweight(w1, x)?,
            self.weyl.act_on_coweight(w2, x)?,
            self.weyl.act_on_coweight(v, x)?,
        ])
    }

    /// The inequality for `(w1, w2, v)` and `Δ ∖ Δ(P) = {α_j}`, after
    /// checking its deformed coefficient is one.
    pub fn inequality(&self, j: usize, w1: &WeylElement, w2: &WeylElement, v: &WeylElement) -> Result<Inequality> {
        let p = ParabolicType::maximal(self.weyl.rank(), j)?;
        let calc = self.calculus(&p, v.length());
        for w in [w1, w2, v] {
            if !self.weyl.is_min_rep(w, &p) {
                return Err(Error::NotMinimalRep(w.word().to_vec()));
            }
        }
        let c = calc.deformed_coefficient(w1, w2, v)?;
        if c != 1 {
            return Err(Error::NotCoefficientOne(c));
        }
        Ok(Inequality {
            parabolic: j,
            w1: w1.clone(),
            w2: w2.clone(),
            v: v.clone(),
            forms: self.forms(j, w1, w2, v)?,
        })
    }

    /// Every inequality with `ℓ(v) ≤ max_length`, ordered by `j` and then by
    /// the words of `(w1, w2, v)`.
    pub fn enumerate_inequalities(&self, max_length: usize) -> Result<InequalitySystem> {
        let n = self.weyl.rank();
        let parabolics: Vec<ParabolicType> = (0..n)
            .map(|j| ParabolicType::maximal(n, j))
            .collect::<Result<_>>()?;
        let calculi: Vec<Arc<SchubertCalculus>> =
            parabolics.iter().map(|p| self.calculus(p, max_length)).collect();
        let per_parabolic: Vec<Result<Vec<Inequality>>> = std::thread::scope(|s| {
            let handles: Vec<_> = calculi
                .iter()
                .enumerate()
                .map(|(j, calc)| {
                    s.spawn(move || -> Result<Vec<Inequality>> {
                        let table = calc.deformed_table(max_length)?;
                        let mut out = Vec::new();
                        for ((a, b, c), e) in table.nonzero() {
                            if e.deformed != 1 {
                                continue;
                            }
                            let (w1, w2, v) = (
                                self.weyl.element(a)?,
                                self.weyl.element(b)?,
                                self.weyl.element(c)?,
                            );
                            let forms = self.forms(j, &w1, &w2, &v)?;
                            out.push(Inequality {
                                parabolic: j,
                                w1,
                                w2,
                                v,
                                forms,
                            });
                        }
                        Ok(out)
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        let mut inequalities = Vec::new();
        for part in per_parabolic {
            inequalities.extend(part?);
        }
        let exhaustive = self.realization().algebra_type().is_finite()
            && parabolics.iter().all(|p| {
                self.weyl
                    .min_coset_reps(p, max_length + 1)
                    .of_length(max_length + 1)
                    .next()
                    .is_none()
            });
        Ok(InequalitySystem {
            max_length,
            exhaustive,
            inequalities,
        })
    }

    fn check_triple(&self, t: &Triple) -> Result<()> {
        let r = self.realization();
        r.check_weight(&t.lambda1)?;
        r.check_weight(&t.lambda2)?;
        r.check_weight(&t.mu)
    }

    pub fn eval_inequality(&self, ineq: &Inequality, t: &Triple) -> Result<Q> {
        self.check_triple(t)?;
        Ok(rational::dot(&ineq.row(), &t.flatten()))
    }

    pub fn face(&self, p: &ParabolicType, w1: &WeylElement, w2: &WeylElement, v: &WeylElement) -> Result<Face> {
        for w in [w1, w2, v] {
            if !self.weyl.is_min_rep(w, p) {
                return Err(Error::NotMinimalRep(w.word().to_vec()));
            }
        }
        let calc = self.calculus(p, v.length());
        let c = calc.deformed_coefficient(w1, w2, v)?;
        if c != 1 {
            return Err(Error::NotCoefficientOne(c));
        }
        let equalities = p
            .complement()
            .into_iter()
            .map(|j| {
                let f = self.forms(j, w1, w2, v)?;
                let row = Inequality {
                    parabolic: j,
                    w1: w1.clone(),
                    w2: w2.clone(),
                    v: v.clone(),
                    forms: f,
                }
                .row();
                Ok((j, row))
            })
            .collect::<Result<_>>()?;
        Ok(Face {
            parabolic: p.clone(),
            w1: w1.clone(),
            w2: w2.clone(),
            v: v.clone(),
            equalities,
        })
    }

    pub fn face_equalities(&self, face: &Face, t: &Triple) -> Result<Vec<Q>> {
        self.check_triple(t)?;
        Ok(face.values(t))
    }

    /// Rank of the equality forms restricted to `E`.
    pub fn equality_rank_on_e(&self, face: &Face) -> usize {
        let e = self.space_e();
        let rows: Vec<Vec<Q>> = face.equalities.iter().map(|(_, r)| e.restrict(r)).collect();
        linalg::rank(&rows)
    }

    fn seeds(&self) -> Vec<Triple> {
        let r = self.realization();
        let k = r.dim_h();
        let mut basic = vec![Weight::zero(k)];
        basic.extend(r.fundamental_weights());
        for c in r.rank()..k {
            for s in [1, -1] {
                let mut v = vec![0; k];
                v[c] = s;
                basic.push(Weight::from_ints(&v));
            }
        }
        let mut out = Vec::new();
        for a in &basic {
            for b in &basic {
                out.push(Triple::new(a.clone(), b.clone(), a.add(b)));
            }
        }
        let rho = r.rho();
        let two_rho = rho.add(&rho);
        for i in 0..r.rank() {
            out.push(Triple::new(rho.clone(), rho.clone(), two_rho.sub(&r.simple_root(i))));
        }
        if let Some(delta) = r.gcm().null_root() {
            let delta = r.root_to_weight(&delta);
            for a in &basic {
                for b in &basic {
                    for m in 1..=2 {
                        let shift = delta.scaled(&Q::from_integer(m.into()));
                        out.push(Triple::new(a.clone(), b.clone(), a.add(b).sub(&shift)));
                    }
                }
            }
        }
        out
    }

    /// Searches the face for realizable points and reports the rank of
    /// their span against `d = 2 dim h + #Δ(P)`.
    pub fn face_dimension(&self, face: &Face, search: &FaceSearch) -> Result<FaceReport> {
        let tensor = self.tensor()?;
        let r = self.realization();
        let (n, k) = (r.rank(), r.dim_h());
        let d = face.expected_dimension(k);
        let kernel_dim = self.space_e().dim() - self.equality_rank_on_e(face);
        let int_rows: Vec<Vec<i64>> = face
            .equalities
            .iter()
            .map(|(_, row)| {
                let den = Q::from_integer(rational::common_denominator(row));
                row.iter()
                    .map(|x| (x * &den).to_integer().to_i64().ok_or(Error::Overflow("equality row")))
                    .collect()
            })
            .collect::<Result<_>>()?;

        let mut span = Span::new();
        let mut witnesses = Vec::new();
        let mut examined = 0usize;
        let mut tests = 0usize;
        let mut try_point = |t: Triple, span: &mut Span, tests: &mut usize| -> Result<bool> {
            if !t.is_dominant(n) || !face.contains(&t) {
                return Ok(false);
            }
            let flat = t.flatten();
            if span.contains(&flat) {
                return Ok(false);
            }
            *tests += 1;
            match tensor.gamma_member(&t.lambda1, &t.lambda2, &t.mu, search.n_max, search.depth)? {
                MembershipVerdict::Member { n, .. } => {
                    span.insert(&flat);
                    witnesses.push(Witness { triple: t, n });
                    Ok(true)
                }
                _ => Ok(false),
            }
        };

        for t in self.seeds() {
            examined += 1;
            if span.dim() >= d || tests >= search.max_tests {
                break;
            }
            try_point(t, &mut span, &mut tests)?;
        }

        let weights = candidate_weights(n, k, search.height as i64);
        let gammas: Vec<Vec<i64>> = (0..=2 * search.height)
            .flat_map(|h| compositions(n, h))
            .map(|g| {
                r.root_to_weight(&g)
                    .to_ints()
                    .expect("roots are integral")
            })
            .collect();
        let (nw, ng) = (weights.len(), gammas.len());
        'levels: for level in 0..(2 * nw + ng).saturating_sub(2) {
            for a in 0..nw.min(level + 1) {
                for b in 0..nw.min(level - a + 1) {
                    let g = level - a - b;
                    if g >= ng {
                        continue;
                    }
                    if span.dim() >= d || tests >= search.max_tests {
                        break 'levels;
                    }
                    examined += 1;
                    let (l1, l2, gam) = (&weights[a], &weights[b], &gammas[g]);
                    let mu: Vec<i64> = (0..k).map(|i| l1[i] + l2[i] - gam[i]).collect();
                    if mu[..n].iter().any(|&x| x < 0) {
                        continue;
                    }
                    let on_face = int_rows.iter().all(|row| {
                        let flat = l1.iter().chain(l2).chain(&mu);
                        row.iter().zip(flat).map(|(x, y)| x * y).sum::<i64>() == 0
                    });
                    if !on_face {
                        continue;
                    }
                    try_point(Triple::from_ints(l1, l2, &mu), &mut span, &mut tests)?;
                }
            }
        }
        let rank_found = span.dim();
        Ok(FaceReport {
            d_expected: d,
            rank_found,
            kernel_dim,
            witnesses,
            candidates_examined: examined,
            membership_tests: tests,
            verdict: if rank_found >= d {
                FaceVerdict::Pass
            } else {
                FaceVerdict::BudgetExhausted
            },
        })
    }

    /// Degrees `λ₁(α∨)`, `λ₂(α∨)`, `μ(α∨)` over `Δ⁺(w₁)`, `Δ⁺(w₂)`, `Δ⁻(v)`.
    pub fn restriction_check(&self, face: &Face, t: &Triple) -> Result<RestrictionReport> {
        self.check_triple(t)?;
        if !face.contains(t) {
            return Err(Error::NotOnFace);
        }
        let mut degrees = Vec::new();
        for (slot, w, lam) in [(1u8, &face.w1, &t.lambda1), (2, &face.w2, &t.lambda2)] {
            for root in self.weyl.delta_plus(w, &face.parabolic)? {
                degrees.push(BoundaryDegree {
                    root,
                    slot,
                    degree: lam.coroot_value(root).clone(),
                });
            }
        }
        for root in self.weyl.delta_minus(&face.v) {
            degrees.push(BoundaryDegree {
                root,
                slot: 3,
                degree: t.mu.coroot_value(root).clone(),
            });
        }
        let all_nonnegative = degrees.iter().all(|d| !d.degree.is_negative());
        Ok(RestrictionReport {
            degrees,
            all_nonnegative,
        })
    }

    pub fn classify_boundary(&self, face: &Face) -> Result<Vec<BoundaryClass>> {
        let wg = &self.weyl;
        let mut out = Vec::new();
        for (slot, w) in [(1u8, &face.w1), (2, &face.w2)] {
            for root in wg.delta_plus(w, &face.parabolic)? {
                let below = wg.bruhat_leq(&wg.left_multiply(root, w)?, &face.v);
                out.push(BoundaryClass {
                    root,
                    slot,
                    kind: if below { BoundaryKind::D1 } else { BoundaryKind::D2 },
                    reflected_below_v: Some(below),
                    w1_below: None,
                    w2_below: None,
                });
            }
        }
        for root in wg.delta_minus(&face.v) {
            let sv = wg.left_multiply(root, &face.v)?;
            let (a, b) = (wg.bruhat_leq(&face.w1, &sv), wg.bruhat_leq(&face.w2, &sv));
            let kind = match (a, b) {
                (true, true) => BoundaryKind::D1,
                (false, false) => BoundaryKind::D3,
                _ => BoundaryKind::D2,
            };
            out.push(BoundaryClass {
                root,
                slot: 3,
                kind,
                reflected_below_v: None,
                w1_below: Some(a),
                w2_below: Some(b),
            });
        }
        Ok(out)
    }

    /// `μ − λ₁ − λ₂ ∈ ⊕ ℤα_i`.
    pub fn lattice_condition(&self, t: &Triple) -> Result<bool> {
        self.check_triple(t)?;
        Ok(self.realization().in_root_lattice(&t.defect()))
    }

    /// Decides whether `all[target]` is implied by the other inequalities
    /// and dominance, with a certificate checked by exact arithmetic.
    pub fn irredundancy_certificate(&self, target: usize, all: &[Inequality]) -> Result<Certificate> {
        if !self.realization().algebra_type().is_finite() {
            return Err(Error::NotFiniteType);
        }
        let rows: Vec<Vec<Q>> = all.iter().map(Inequality::row).collect();
        let goal = &rows[target];
        let nvars = goal.len();
        let one = Q::from_integer(1.into());
        // In finite type E is everything and dominance is `z ≥ 0`.
        let mut constraints: Vec<Constraint> = rows
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != target)
            .map(|(_, r)| Constraint {
                coeffs: r.clone(),
                relation: Relation::Ge,
                rhs: Q::zero(),
            })
            .collect();
        constraints.push(Constraint {
            coeffs: vec![one.clone(); nvars],
            relation: Relation::Eq,
            rhs: one,
        });
        let primal = LinearProgram {
            objective: goal.clone(),
            constraints,
        };
        let value = match primal.solve() {
            LpOutcome::Optimal { x, value } => {
                if value.is_negative() {
                    if !primal.is_feasible(&x) || rational::dot(goal, &x) != value {
                        return Err(Error::PreconditionViolated("facet witness failed to verify".into()));
                    }
                    return Ok(Certificate::Irredundant { point: x, value });
                }
                value
            }
            LpOutcome::Unbounded => return Err(Error::Unbounded),
            LpOutcome::Infeasible => Q::zero(),
        };
        debug_assert!(!value.is_negative());
        // Farkas: y ≥ 0 with Σ y_k row_k ≤ goal componentwise.
        let others: Vec<usize> = (0..rows.len()).filter(|&k| k != target).collect();
        let dual = LinearProgram {
            objective: vec![Q::zero(); others.len()],
            constraints: (0..nvars)
                .map(|c| Constraint {
                    coeffs: others.iter().map(|&k| rows[k][c].clone()).collect(),
                    relation: Relation::Le,
                    rhs: goal[c].clone(),
                })
                .collect(),
        };
        let LpOutcome::Optimal { x: y, .. } = dual.solve() else {
            return Err(Error::PreconditionViolated("no redundancy certificate found".into()));
        };
        let mut dominance = goal.clone();
        for (yk, &k) in y.iter().zip(&others) {
            for (s, a) in dominance.iter_mut().zip(&rows[k]) {
                *s -= yk * a;
            }
        }
        if y.iter().any(Signed::is_negative) || dominance.iter().any(Signed::is_negative) {
            return Err(Error::PreconditionViolated("redundancy certificate failed to verify".into()));
        }
        let multipliers = others
            .iter()
            .zip(&y)
            .filter(|(_, yk)| !yk.is_zero())
            .map(|(&k, yk)| (k, rational::format_q(yk)))
            .collect();
        Ok(Certificate::Redundant {
            multipliers,
            dominance,
        })
    }
}

/// Dominant integral weights with coroot values in `0..=h` and complementary
/// coordinates in `-1..=1`, in order of growing size.
fn candidate_weights(n: usize, k: usize, h: i64) -> Vec<Vec<i64>> {
    let c = h.min(1);
    let ranges: Vec<(i64, i64)> = (0..k).map(|i| if i < n { (0, h) } else { (-c, c) }).collect();
    let mut out = Vec::new();
    let mut cur: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        out.push(cur.clone());
        let mut i = 0;
        loop {
            if i == k {
                out.sort_by_key(|v| {
                    let m = v.iter().map(|x| x.abs()).max().unwrap_or(0);
                    let s: i64 = v.iter().map(|x| x.abs()).sum();
                    (m, s, v.clone())
                });
                return out;
            }
            if cur[i] < ranges[i].1 {
                cur[i] += 1;
                break;
            }
            cur[i] = ranges[i].0;
            i += 1;
        }
    }
}

fn compositions(n: usize, total: usize) -> Vec<Vec<i64>> {
    if n == 1 {
        return vec![vec![total as i64]];
    }
    (0..=total)
        .flat_map(|x| {
            compositions(n - 1, total - x).into_iter().map(move |mut rest| {
                rest.insert(0, x as i64);
                rest
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Gcm;
    use crate::rational::q;

    fn cone(g: Gcm) -> TensorCone {
        TensorCone::new(Arc::new(Realization::new(g)))
    }

    #[test]
    fn dimension_of_e() {
        assert_eq!(cone(Gcm::type_a(1)).space_e().dim(), 3);
        assert_eq!(cone(Gcm::type_a(2)).space_e().dim(), 6);
        assert_eq!(cone(Gcm::affine_a(1)).space_e().dim(), 8);
        for c in [cone(Gcm::type_a(2)), cone(Gcm::affine_a(1))] {
            let e = c.space_e();
            assert_eq!(linalg::rank(&e.basis), e.dim());
        }
    }

    #[test]
    fn sl2_triangle_inequalities() {
        let c = cone(Gcm::type_a(1));
        let sys = c.enumerate_inequalities(3).unwrap();
        assert!(sys.exhaustive);
        let words: Vec<_> = sys
            .inequalities
            .iter()
            .map(|i| (i.w1.word_string(), i.w2.word_string(), i.v.word_string()))
            .collect();
        let s = |a: &str, b: &str, v: &str| (a.to_string(), b.to_string(), v.to_string());
        assert_eq!(words, vec![s("e", "e", "e"), s("e", "s0", "s0"), s("s0", "e", "s0")]);
        let sem = &sys.inequalities[2];
        assert_eq!(c.eval_inequality(sem, &Triple::from_ints(&[1], &[1], &[2])).unwrap(), q(1));
        assert_eq!(
            serde_json::to_string(sem).unwrap(),
            r#"{"parabolic":0,"w1":[0],"w2":[],"v":[0],"coefficient":1}"#
        );
        let eee = &sys.inequalities[0];
        assert_eq!(c.eval_inequality(eee, &Triple::from_ints(&[3], &[5], &[8])).unwrap(), q(0));
        assert!(matches!(
            c.eval_inequality(eee, &Triple::from_ints(&[1, 0], &[1], &[2])),
            Err(Error::RealizationMismatch { .. })
        ));
    }

    #[test]
    fn a2_inequality_and_face() {
        let c = cone(Gcm::type_a(2));
        let w = c.weyl().clone();
        let (s1, s21) = (w.element(&[0]).unwrap(), w.element(&[1, 0]).unwrap());
        // Δ(P) = {α_2}, i.e. j = 0 with zero-based labels.
        let sys = c.enumerate_inequalities(2).unwrap();
        assert!(sys.inequalities.iter().any(|i| i.parabolic == 0 && i.w1 == s1 && i.w2 == s1 && i.v == s21));
        let p = ParabolicType::maximal(2, 0).unwrap();
        let f = c.face(&p, &s1, &s1, &s21).unwrap();
        assert_eq!(f.equalities.len(), 1);
        assert_eq!(c.equality_rank_on_e(&f), 1);
        assert_eq!(c.space_e().dim() - c.equality_rank_on_e(&f), 5);
        assert_eq!(f.expected_dimension(2), 5);
        let e = w.identity();
        assert!(matches!(c.face(&p, &s1, &e, &s21), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn sl2_face_search() {
        let c = cone(Gcm::type_a(1));
        let w = c.weyl().clone();
        let (e, s) = (w.identity(), w.simple(0).unwrap());
        let f = c.face(&ParabolicType::borel(1), &s, &e, &s).unwrap();
        let zero = Triple::from_ints(&[0], &[0], &[0]);
        assert_eq!(c.face_equalities(&f, &zero).unwrap(), vec![q(0)]);
        // −a + b + c on (a, b, c).
        assert_eq!(
            c.face_equalities(&f, &Triple::from_ints(&[1], &[0], &[0])).unwrap(),
            vec![rational::q_frac(-1, 2)]
        );
        let rep = c.face_dimension(&f, &FaceSearch::default()).unwrap();
        assert_eq!(rep.d_expected, 2);
        assert_eq!(rep.rank_found, 2);
        assert_eq!(rep.verdict, FaceVerdict::Pass);
        for wit in &rep.witnesses {
            assert!(f.contains(&wit.triple));
        }
    }

    #[test]
    fn restriction_degrees() {
        let c = cone(Gcm::type_a(1));
        let w = c.weyl().clone();
        let (e, s) = (w.identity(), w.simple(0).unwrap());
        let f = c.face(&ParabolicType::borel(1), &s, &e, &s).unwrap();
        let rep = c.restriction_check(&f, &Triple::from_ints(&[1], &[1], &[0])).unwrap();
        let slot3: Vec<_> = rep.degrees.iter().filter(|d| d.slot == 3).collect();
        assert_eq!(slot3.len(), 1);
        assert_eq!(slot3[0].degree, q(0));
        assert!(rep.all_nonnegative);
        assert!(matches!(
            c.restriction_check(&f, &Triple::from_ints(&[1], &[0], &[0])),
            Err(Error::NotOnFace)
        ));
    }

    #[test]
    fn boundary_partition_in_sl2() {
        let c = cone(Gcm::type_a(1));
        let w = c.weyl().clone();
        let (e, s) = (w.identity(), w.simple(0).unwrap());
        let b = ParabolicType::borel(1);
        let f = c.face(&b, &s, &e, &s).unwrap();
        let classes = c.classify_boundary(&f).unwrap();
        // Δ⁺(e) = {α} in slot 2 with s·e ≤ s; Δ⁻(s) = {α} with e ≤ e but s ≰ e.
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].kind, BoundaryKind::D1);
        assert_eq!((classes[1].slot, classes[1].kind), (3, BoundaryKind::D2));
        let f = c.face(&b, &e, &e, &e).unwrap();
        let classes = c.classify_boundary(&f).unwrap();
        assert_eq!(classes.len(), 2);
        assert!(classes.iter().all(|k| k.kind == BoundaryKind::D2));
    }

    #[test]
    fn lattice_examples() {
        let c = cone(Gcm::type_a(2));
        let r = c.realization().clone();
        let rho = r.rho();
        let lam = Weight::from_ints(&[2, 1]);
        let mu = Weight::from_ints(&[0, 3]);
        assert!(c.lattice_condition(&Triple::new(lam.clone(), mu.clone(), lam.add(&mu))).unwrap());
        let t = Triple::new(rho.clone(), rho.clone(), rho.add(&rho).sub(&r.simple_root(1)));
        assert!(c.lattice_condition(&t).unwrap());
        let sl2 = cone(Gcm::type_a(1));
        assert!(!sl2.lattice_condition(&Triple::from_ints(&[1], &[0], &[0])).unwrap());
    }

    #[test]
    fn central_shift_leaves_values_unchanged() {
        let c = cone(Gcm::affine_a(1));
        let sys = c.enumerate_inequalities(3).unwrap();
        assert!(!sys.exhaustive);
        let center = &c.realization().central_subspace()[0];
        let r = c.realization();
        let (l1, l2) = (Weight::from_ints(&[1, 2, 1]), Weight::from_ints(&[0, 1, -1]));
        let mu = l1.add(&l2).sub(&r.simple_root(0)).sub(&r.simple_root(1).scaled(&q(2)));
        let t = Triple::new(l1, l2, mu);
        assert!(c.space_e().contains(&t));
        for ineq in &sys.inequalities {
            let shifted: Vec<Coweight> = ineq.forms().iter().map(|x| x.add(center)).collect();
            let row: Vec<Q> = shifted[0]
                .coords
                .iter()
                .chain(&shifted[1].coords)
                .cloned()
                .chain(shifted[2].coords.iter().map(|x| -x))
                .collect();
            assert_eq!(rational::dot(&row, &t.flatten()), c.eval_inequality(ineq, &t).unwrap());
        }
    }

    #[test]
    fn sl2_certificates() {
        let c = cone(Gcm::type_a(1));
        let mut all = c.enumerate_inequalities(1).unwrap().inequalities;
        for k in 0..all.len() {
            let cert = c.irredundancy_certificate(k, &all).unwrap();
            assert!(cert.is_irredundant(), "{k}: {cert:?}");
        }
        all.push(all[1].clone());
        let cert = c.irredundancy_certificate(3, &all).unwrap();
        match cert {
            Certificate::Redundant { multipliers, .. } => assert_eq!(multipliers, vec![(1, "1".to_string())]),
            other => panic!("{other:?}"),
        }
        let affine = cone(Gcm::affine_a(1));
        let sys = affine.enumerate_inequalities(1).unwrap();
        assert_eq!(affine.irredundancy_certificate(0, &sys.inequalities).unwrap_err(), Error::NotFiniteType);
    }
}
