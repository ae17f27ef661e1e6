//! Weight and tensor-product multiplicities for integrable highest-weight
//! modules of finite and untwisted affine type.
//!
//! Weights below a highest weight `λ` are addressed by their depth vector
//! `c ∈ ℕ^{l+1}`, meaning `λ − Σ c_j α_j`; the depth of `c` is `Σ c_j`.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use parking_lot::RwLock;
use serde::Serialize;

use crate::cartan::{AlgebraType, Realization, Weight};
use crate::error::{Error, Result};
use crate::rational::{self, Q};

/// Multiplicities `m_λ(λ − c)` for every `c` of depth at most `depth`.
#[derive(Debug, Clone)]
pub struct WeightMultTable {
    highest: Weight,
    depth: usize,
    mults: HashMap<Vec<i64>, i64>,
}

impl WeightMultTable {
    pub fn highest(&self) -> &Weight {
        &self.highest
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `m_λ(λ − c)`, or `None` if `c` lies outside the window.
    pub fn get(&self, c: &[i64]) -> Option<i64> {
        if c.iter().any(|&x| x < 0) {
            return Some(0);
        }
        if c.iter().sum::<i64>() as usize > self.depth {
            return None;
        }
        Some(self.mults.get(c).copied().unwrap_or(0))
    }

    /// Nonzero entries as `(c, multiplicity)`, sorted by depth then `c`.
    pub fn entries(&self) -> Vec<(Vec<i64>, i64)> {
        let mut v: Vec<_> = self.mults.iter().map(|(c, m)| (c.clone(), *m)).collect();
        v.sort_by(|a, b| (a.0.iter().sum::<i64>(), &a.0).cmp(&(b.0.iter().sum::<i64>(), &b.0)));
        v
    }
}

/// Inputs for `dim Hom(L(Nμ), L(Nλ₁) ⊗ L(Nλ₂))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityQuery {
    pub lambda1: Weight,
    pub lambda2: Weight,
    pub mu: Weight,
    pub scale: u64,
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MembershipVerdict {
    /// `L(Nμ) ⊂ L(Nλ₁) ⊗ L(Nλ₂)` with the given multiplicity.
    Member { n: u64, multiplicity: i64 },
    /// No success for `N ≤ n_max · N₀`; `depth_limited` records that some
    /// scale could not be decided inside the depth window.
    NotUpTo { n_max: u64, depth_limited: bool },
    /// `λ₁ + λ₂ − μ` is not in the ℚ-span of the simple roots.
    LatticeObstruction,
}

impl MembershipVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipVerdict::Member { .. })
    }
}

/// Multiplicity computations over one realization, with cached weight tables.
pub struct TensorEngine {
    realization: Arc<Realization>,
    imaginary_mult: i64,
    null_root: Option<Vec<i64>>,
    tables: RwLock<HashMap<Vec<i64>, Arc<WeightMultTable>>>,
}

impl std::fmt::Debug for TensorEngine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TensorEngine").field("type", &self.realization.algebra_type()).finish()
    }
}

impl TensorEngine {
    pub fn new(realization: Arc<Realization>) -> Result<Self> {
        let t = realization.algebra_type();
        let (imaginary_mult, null_root) = match t {
            AlgebraType::Finite => (0, None),
            AlgebraType::Affine { untwisted: true } => {
                (realization.rank() as i64 - 1, realization.gcm().null_root())
            }
            other => return Err(Error::UnsupportedType(other.label().into())),
        };
        Ok(Self {
            realization,
            imaginary_mult,
            null_root,
            tables: RwLock::new(HashMap::new()),
        })
    }

    pub fn realization(&self) -> &Arc<Realization> {
        &self.realization
    }

    fn is_finite(&self) -> bool {
        self.null_root.is_none()
    }

    fn check_dominant_integral(&self, w: &Weight) -> Result<Vec<i64>> {
        self.realization.check_weight(w)?;
        let n = self.realization.rank();
        if !w.is_dominant(n) {
            return Err(Error::NotDominant(format!("{:?}", w.coords.iter().map(rational::format_q).collect::<Vec<_>>())));
        }
        let ints = w
            .to_ints()
            .ok_or_else(|| Error::NotIntegral(format!("{:?}", w.coords.iter().map(rational::format_q).collect::<Vec<_>>())))?;
        Ok(ints)
    }

    /// Positive roots of height at most `depth` with their multiplicities.
    fn positive_roots(&self, depth: usize) -> Vec<(Vec<i64>, i64)> {
        let mut out: Vec<(Vec<i64>, i64)> = self
            .realization
            .real_roots_up_to_height(depth.max(1))
            .positive()
            .map(|r| (r.root.clone(), 1))
            .collect();
        if let Some(delta) = &self.null_root {
            let h: i64 = delta.iter().sum();
            let mut k = 1;
            while k * h <= depth as i64 {
                out.push((delta.iter().map(|x| k * x).collect(), self.imaginary_mult));
                k += 1;
            }
        }
        out
    }

    /// Freudenthal's recursion in depth order.
    pub fn weight_multiplicities(&self, lambda: &Weight, depth: usize) -> Result<Arc<WeightMultTable>> {
        let lam = self.check_dominant_integral(lambda)?;
        let n = self.realization.rank();
        let key: Vec<i64> = lam[..n].to_vec();
        if let Some(t) = self.tables.read().get(&key) {
            if t.depth >= depth && t.highest == *lambda {
                return Ok(t.clone());
            }
        }
        let table = Arc::new(self.freudenthal(lambda, &key, depth)?);
        self.tables.write().insert(key, table.clone());
        Ok(table)
    }

    fn freudenthal(&self, lambda: &Weight, lam: &[i64], depth: usize) -> Result<WeightMultTable> {
        let n = self.realization.rank();
        let g = self.realization.gcm();
        let d = g.symmetrizer();
        let s = g.symmetrized();
        let form = |a: &[i64], b: &[i64]| -> i128 {
            let mut t = 0i128;
            for i in 0..n {
                if a[i] == 0 {
                    continue;
                }
                for j in 0..n {
                    t += a[i] as i128 * s[i][j] as i128 * b[j] as i128;
                }
            }
            t
        };
        // (λ + ρ, α_j) = d_j (λ_j + 1); (λ, α_j) = d_j λ_j.
        let lam_rho: Vec<i128> = (0..n).map(|j| d[j] as i128 * (lam[j] as i128 + 1)).collect();
        let lam_only: Vec<i128> = (0..n).map(|j| d[j] as i128 * lam[j] as i128).collect();
        let roots = self.positive_roots(depth);
        let mut mults: HashMap<Vec<i64>, i64> = HashMap::new();
        mults.insert(vec![0; n], 1);
        for level in 1..=depth {
            for c in compositions(n, level) {
                let denom: i128 = 2 * (0..n).map(|j| c[j] as i128 * lam_rho[j]).sum::<i128>() - form(&c, &c);
                let mut rhs: i128 = 0;
                for (a, mult) in &roots {
                    // μ + kα = λ − (c − k a)
                    let mut k = 1;
                    loop {
                        let cc: Vec<i64> = c.iter().zip(a).map(|(x, y)| x - k * y).collect();
                        if cc.iter().any(|&x| x < 0) {
                            break;
                        }
                        if let Some(&m) = mults.get(&cc) {
                            let pair = (0..n).map(|j| a[j] as i128 * lam_only[j]).sum::<i128>() - form(&cc, a);
                            rhs += 2 * *mult as i128 * pair * m as i128;
                        }
                        k += 1;
                    }
                }
                if denom == 0 {
                    if rhs != 0 {
                        return Err(Error::PreconditionViolated(format!(
                            "Freudenthal recursion degenerate at depth vector {c:?}"
                        )));
                    }
                    continue;
                }
                if rhs % denom != 0 {
                    return Err(Error::PreconditionViolated(format!(
                        "Freudenthal division not exact at depth vector {c:?}"
                    )));
                }
                let m = rhs / denom;
                if m != 0 {
                    mults.insert(c, m.to_i64().ok_or(Error::Overflow("weight multiplicity"))?);
                }
            }
        }
        Ok(WeightMultTable {
            highest: lambda.clone(),
            depth,
            mults,
        })
    }

    /// `λ₁ + λ₂ − μ` in simple-root coordinates when it is integral there.
    fn defect(&self, l1: &Weight, l2: &Weight, mu: &Weight) -> Option<Vec<Q>> {
        self.realization.root_coordinates(&l1.add(l2).sub(mu))
    }

    /// `dim Hom(L(Nμ), L(Nλ₁) ⊗ L(Nλ₂))` by the signed sum
    /// `Σ_w ε(w) m_{λ₁}(μ + ρ − w(λ₂ + ρ))`.
    ///
    /// Finite type enlarges the window to whatever the query needs; affine
    /// type treats `depth` as a hard cap.
    pub fn tensor_multiplicity(&self, q: &MultiplicityQuery) -> Result<i64> {
        let scale = Q::from_integer(BigInt::from(q.scale));
        let (l1, l2, mu) = (
            q.lambda1.scaled(&scale),
            q.lambda2.scaled(&scale),
            q.mu.scaled(&scale),
        );
        self.check_dominant_integral(&l1)?;
        let lam2 = self.check_dominant_integral(&l2)?;
        self.check_dominant_integral(&mu)?;
        let Some(d0) = self.defect(&l1, &l2, &mu) else {
            return Ok(0);
        };
        let Some(d0) = rational::to_i64_vec(&d0) else {
            return Ok(0);
        };
        if d0.iter().any(|&x| x < 0) {
            return Ok(0);
        }
        let needed = d0.iter().sum::<i64>() as usize;
        let depth = if self.is_finite() { needed } else { q.depth };
        if needed > depth {
            return Err(Error::DepthTooSmall {
                needed,
                available: depth,
            });
        }
        let table = self.weight_multiplicities(&l1, depth)?;
        let mut total: i64 = 0;
        for (gamma, sign) in self.shifted_orbit(&lam2, &d0) {
            let c: Vec<i64> = d0.iter().zip(&gamma).map(|(a, b)| a - b).collect();
            let m = table.get(&c).expect("orbit pruned to the window");
            total += sign * m;
        }
        Ok(total)
    }

    /// `(λ + ρ) − w(λ + ρ)` in root coordinates with `ε(w)`, over every `w`
    /// for which it stays componentwise below `cap`.
    fn shifted_orbit(&self, lam: &[i64], cap: &[i64]) -> Vec<(Vec<i64>, i64)> {
        let n = self.realization.rank();
        let g = self.realization.gcm();
        let mut seen: HashMap<Vec<i64>, i64> = HashMap::new();
        seen.insert(vec![0; n], 1);
        let mut frontier = vec![(vec![0i64; n], 1i64)];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (gamma, sign) in &frontier {
                for i in 0..n {
                    // ⟨α_i∨, w(λ+ρ)⟩; positive exactly when ℓ(s_i w) > ℓ(w).
                    let p = lam[i] + 1 - (0..n).map(|j| g.entry(i, j) * gamma[j]).sum::<i64>();
                    if p <= 0 {
                        continue;
                    }
                    let mut up = gamma.clone();
                    up[i] += p;
                    if up[i] > cap[i] || seen.contains_key(&up) {
                        continue;
                    }
                    seen.insert(up.clone(), -sign);
                    next.push((up, -sign));
                }
            }
            frontier = next;
        }
        seen.into_iter().collect()
    }

    /// Bounded search for `N` with `L(Nμ) ⊂ L(Nλ₁) ⊗ L(Nλ₂)`, over
    /// `N = k N₀`, `1 ≤ k ≤ n_max`, where `N₀` clears all denominators.
    pub fn gamma_member(
        &self,
        lambda1: &Weight,
        lambda2: &Weight,
        mu: &Weight,
        n_max: u64,
        depth: usize,
    ) -> Result<MembershipVerdict> {
        let n = self.realization.rank();
        for w in [lambda1, lambda2, mu] {
            self.realization.check_weight(w)?;
            if !w.is_dominant(n) {
                return Err(Error::NotDominant(format!("{:?}", w.coords.iter().map(rational::format_q).collect::<Vec<_>>())));
            }
        }
        let Some(defect) = self.defect(lambda1, lambda2, mu) else {
            return Ok(MembershipVerdict::LatticeObstruction);
        };
        let all: Vec<Q> = lambda1
            .coords
            .iter()
            .chain(&lambda2.coords)
            .chain(&mu.coords)
            .cloned()
            .collect();
        let n0 = rational::common_denominator(&all);
        let n0 = n0.to_u64().ok_or(Error::Overflow("scale"))?;
        if defect.iter().any(Signed::is_negative) {
            return Ok(MembershipVerdict::NotUpTo {
                n_max,
                depth_limited: false,
            });
        }
        let mut depth_limited = false;
        for k in 1..=n_max {
            let scale = k * n0;
            let s = Q::from_integer(BigInt::from(scale));
            if defect.iter().any(|x| !(x * &s).is_integer()) {
                continue;
            }
            let q = MultiplicityQuery {
                lambda1: lambda1.clone(),
                lambda2: lambda2.clone(),
                mu: mu.clone(),
                scale,
                depth,
            };
            match self.tensor_multiplicity(&q) {
                Ok(m) if m > 0 => return Ok(MembershipVerdict::Member { n: scale, multiplicity: m }),
                Ok(_) => {}
                Err(Error::DepthTooSmall { .. }) => {
                    depth_limited = true;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        Ok(MembershipVerdict::NotUpTo { n_max, depth_limited })
    }
}

/// Vectors in `ℕ^n` with coordinate sum `total`, in lex order.
fn compositions(n: usize, total: usize) -> Vec<Vec<i64>> {
    fn rec(n: usize, left: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() + 1 == n {
            cur.push(left as i64);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=left {
            cur.push(x as i64);
            rec(n, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, total, &mut Vec::with_capacity(n), &mut out);
    out
}

/// `dim L(λ)` by Weyl's dimension formula (finite type only).
pub fn weyl_dimension(realization: &Realization, lambda: &[i64]) -> Result<BigInt> {
    if !realization.algebra_type().is_finite() {
        return Err(Error::NotFiniteType);
    }
    let g = realization.gcm();
    let n = g.size();
    let d = g.symmetrizer();
    // The closure stops by itself in finite type.
    let bound = usize::MAX;
    let mut num = Q::from_integer(BigInt::from(1));
    for r in realization.real_roots_up_to_height(bound).positive() {
        let a = &r.root;
        let top: i64 = (0..n).map(|j| a[j] * d[j] * (lambda[j] + 1)).sum();
        let bottom: i64 = (0..n).map(|j| a[j] * d[j]).sum();
        num *= rational::q_frac(top, bottom);
    }
    if !num.is_integer() {
        return Err(Error::PreconditionViolated("non-integral dimension".into()));
    }
    Ok(num.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Gcm;

    fn engine(g: Gcm) -> TensorEngine {
        TensorEngine::new(Arc::new(Realization::new(g))).unwrap()
    }

    #[test]
    fn sl2_string() {
        let e = engine(Gcm::type_a(1));
        let t = e.weight_multiplicities(&Weight::from_ints(&[2]), 4).unwrap();
        assert_eq!(t.entries(), vec![(vec![0], 1), (vec![1], 1), (vec![2], 1)]);
    }

    #[test]
    fn clebsch_gordan() {
        let e = engine(Gcm::type_a(1));
        let w = |k| Weight::from_ints(&[k]);
        let q = |a, b, c| MultiplicityQuery {
            lambda1: w(a),
            lambda2: w(b),
            mu: w(c),
            scale: 1,
            depth: 0,
        };
        assert_eq!(e.tensor_multiplicity(&q(1, 1, 2)).unwrap(), 1);
        assert_eq!(e.tensor_multiplicity(&q(1, 1, 0)).unwrap(), 1);
        assert_eq!(e.tensor_multiplicity(&q(1, 1, 1)).unwrap(), 0);
        // |a − b| ≤ c ≤ a + b with a + b − c even.
        for a in 0..6 {
            for b in 0..6 {
                for c in 0..12 {
                    let expect = i64::from(c <= a + b && c >= (a - b).abs() && (a + b - c) % 2 == 0);
                    assert_eq!(e.tensor_multiplicity(&q(a, b, c)).unwrap(), expect, "{a} {b} {c}");
                }
            }
        }
    }

    #[test]
    fn affine_basic_module() {
        let e = engine(Gcm::affine_a(1));
        let t = e.weight_multiplicities(&Weight::from_ints(&[1, 0, 0]), 4).unwrap();
        assert_eq!(t.get(&[0, 0]), Some(1));
        assert_eq!(t.get(&[1, 0]), Some(1));
        assert_eq!(t.get(&[0, 1]), Some(0));
        assert_eq!(t.get(&[1, 1]), Some(1));
        assert_eq!(t.get(&[2, 2]), Some(2));
        assert_eq!(t.get(&[3, 3]), None);
    }

    #[test]
    fn membership_examples() {
        let e = engine(Gcm::type_a(1));
        let w = |k| Weight::from_ints(&[k]);
        assert_eq!(
            e.gamma_member(&w(1), &w(1), &w(3), 5, 0).unwrap(),
            MembershipVerdict::NotUpTo { n_max: 5, depth_limited: false }
        );
        let half = Weight::new(vec![rational::q_frac(1, 2)]);
        assert_eq!(
            e.gamma_member(&half, &half, &w(1), 3, 0).unwrap(),
            MembershipVerdict::Member { n: 2, multiplicity: 1 }
        );
    }

    #[test]
    fn depth_cap_in_affine_type() {
        let e = engine(Gcm::affine_a(1));
        let q = MultiplicityQuery {
            lambda1: Weight::from_ints(&[1, 0, 0]),
            lambda2: Weight::from_ints(&[1, 0, 0]),
            mu: Weight::from_ints(&[0, 2, -3]),
            scale: 1,
            depth: 2,
        };
        assert!(matches!(e.tensor_multiplicity(&q), Err(Error::DepthTooSmall { .. })));
    }

    #[test]
    fn dimensions() {
        let r = Realization::new(Gcm::type_a(2));
        assert_eq!(weyl_dimension(&r, &[1, 1]).unwrap(), BigInt::from(8));
        let g2 = Realization::new(Gcm::g2());
        assert_eq!(weyl_dimension(&g2, &[0, 1]).unwrap(), BigInt::from(7));
        assert_eq!(weyl_dimension(&g2, &[1, 0]).unwrap(), BigInt::from(14));
    }
}
