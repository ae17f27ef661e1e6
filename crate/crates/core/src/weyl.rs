//! Weyl group elements, Bruhat order and minimal coset representatives.
//!
//! Elements carry their lexicographically first reduced word and the integer
//! matrix of their action on the root lattice. The Weyl group of a Kac–Moody
//! algebra acts faithfully on its roots, so that matrix identifies the
//! element; weights and coweights are acted on by unfolding the word.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_traits::Zero;
use parking_lot::RwLock;
use serde::{Serialize, Serializer};

use crate::cartan::{reflect_coroot, reflect_root, Coweight, RealRoot, Realization, Weight};
use crate::error::{Error, Result};
use crate::rational::Q;

#[derive(Clone)]
pub struct WeylElement {
    word: Vec<usize>,
    n: usize,
    /// Column-major: column `j` is `w(α_j)` in simple-root coordinates.
    action: Vec<i64>,
    inverse_action: Vec<i64>,
}

impl WeylElement {
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// `w(α_j)` in simple-root coordinates.
    pub fn image_of_simple(&self, j: usize) -> &[i64] {
        &self.action[j * self.n..(j + 1) * self.n]
    }

    /// `w⁻¹(α_j)` in simple-root coordinates.
    pub fn inverse_image_of_simple(&self, j: usize) -> &[i64] {
        &self.inverse_action[j * self.n..(j + 1) * self.n]
    }

    /// `ℓ(s_i w) < ℓ(w)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        is_negative(self.inverse_image_of_simple(i))
    }

    /// `ℓ(w s_i) < ℓ(w)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        is_negative(self.image_of_simple(i))
    }

    /// `w(β)` for `β` in simple-root coordinates.
    pub fn apply_to_root(&self, beta: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.n];
        for (j, &c) in beta.iter().enumerate() {
            if c != 0 {
                for (o, a) in out.iter_mut().zip(self.image_of_simple(j)) {
                    *o += c * a;
                }
            }
        }
        out
    }

    /// `w⁻¹(β)` for `β` in simple-root coordinates.
    pub fn apply_inverse_to_root(&self, beta: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.n];
        for (j, &c) in beta.iter().enumerate() {
            if c != 0 {
                for (o, a) in out.iter_mut().zip(self.inverse_image_of_simple(j)) {
                    *o += c * a;
                }
            }
        }
        out
    }

    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            return "e".into();
        }
        self.word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join("")
    }
}

fn is_negative(v: &[i64]) -> bool {
    v.iter().any(|&x| x < 0)
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.action == other.action
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.action.hash(state);
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex on canonical words; agrees with equality since words are canonical.
impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.word.len(), &self.word).cmp(&(other.word.len(), &other.word))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement({})", self.word_string())
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word_string())
    }
}

impl Serialize for WeylElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.word.serialize(s)
    }
}

/// `Δ(P)`, the simple roots of the Levi factor, as node indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ParabolicType {
    rank: usize,
    levi: BTreeSet<usize>,
}

impl ParabolicType {
    pub fn new(rank: usize, levi: impl IntoIterator<Item = usize>) -> Result<Self> {
        let levi: BTreeSet<usize> = levi.into_iter().collect();
        if let Some(&bad) = levi.iter().find(|&&i| i >= rank) {
            return Err(Error::BadIndex { index: bad, rank });
        }
        Ok(Self { rank, levi })
    }

    pub fn borel(rank: usize) -> Self {
        Self {
            rank,
            levi: BTreeSet::new(),
        }
    }

    /// The maximal parabolic with `Δ∖Δ(P) = {α_j}`.
    pub fn maximal(rank: usize, j: usize) -> Result<Self> {
        if j >= rank {
            return Err(Error::BadIndex { index: j, rank });
        }
        Self::new(rank, (0..rank).filter(|&i| i != j))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn levi(&self) -> &BTreeSet<usize> {
        &self.levi
    }

    pub fn complement(&self) -> Vec<usize> {
        (0..self.rank).filter(|i| !self.levi.contains(i)).collect()
    }

    pub fn is_maximal(&self) -> bool {
        self.complement().len() == 1
    }

    /// Proper in the sense `Δ(P) ≠ Δ`.
    pub fn is_proper(&self) -> bool {
        self.levi.len() < self.rank
    }

    /// Every parabolic with `Δ(P) ≠ Δ`, Borel first.
    pub fn all_proper(rank: usize) -> Vec<Self> {
        let mut out: Vec<Self> = (0u64..(1 << rank) - 1)
            .map(|mask| Self {
                rank,
                levi: (0..rank).filter(|i| mask >> i & 1 == 1).collect(),
            })
            .collect();
        out.sort_by_key(|p| (p.levi.len(), p.levi.iter().copied().collect::<Vec<_>>()));
        out
    }
}

impl fmt::Display for ParabolicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.levi.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// `W^P ∩ {ℓ ≤ L}`, sorted by length then word.
#[derive(Debug, Clone)]
pub struct CosetRepSet {
    pub parabolic: ParabolicType,
    pub length_bound: usize,
    reps: Vec<WeylElement>,
    index: HashMap<Vec<usize>, usize>,
}

impl CosetRepSet {
    pub fn reps(&self) -> &[WeylElement] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn contains(&self, w: &WeylElement) -> bool {
        self.index.contains_key(&w.word)
    }

    pub fn position(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(&w.word).copied()
    }

    pub fn of_length(&self, l: usize) -> impl Iterator<Item = &WeylElement> {
        self.reps.iter().filter(move |w| w.length() == l)
    }
}

/// The Weyl group of a realization, with a shared Bruhat-order cache.
pub struct WeylGroup {
    realization: Arc<Realization>,
    bruhat_cache: RwLock<HashMap<(Vec<usize>, Vec<usize>), bool>>,
}

impl fmt::Debug for WeylGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeylGroup").field("rank", &self.rank()).finish()
    }
}

impl WeylGroup {
    pub fn new(realization: Arc<Realization>) -> Self {
        Self {
            realization,
            bruhat_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn realization(&self) -> &Arc<Realization> {
        &self.realization
    }

    pub fn rank(&self) -> usize {
        self.realization.rank()
    }

    pub fn identity(&self) -> WeylElement {
        let n = self.rank();
        let mut id = vec![0; n * n];
        for j in 0..n {
            id[j * n + j] = 1;
        }
        WeylElement {
            word: vec![],
            n,
            action: id.clone(),
            inverse_action: id,
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.rank() {
            return Err(Error::BadIndex {
                index: i,
                rank: self.rank(),
            });
        }
        Ok(())
    }

    pub fn simple(&self, i: usize) -> Result<WeylElement> {
        self.element(&[i])
    }

    /// The element `s_{a_1} ⋯ s_{a_k}`; the word need not be reduced.
    pub fn element(&self, word: &[usize]) -> Result<WeylElement> {
        let mut w = self.identity();
        for &i in word.iter().rev() {
            self.check_index(i)?;
            self.left_multiply_raw(i, &mut w);
        }
        Ok(self.canonicalize(w))
    }

    /// Updates the action matrices for `w ↦ s_i w`, leaving the word stale.
    fn left_multiply_raw(&self, i: usize, w: &mut WeylElement) {
        let g = self.realization.gcm();
        let n = self.rank();
        for j in 0..n {
            reflect_root(g, i, &mut w.action[j * n..(j + 1) * n]);
        }
        // (s_i w)⁻¹ = w⁻¹ s_i: column j becomes w⁻¹(s_i α_j) = w⁻¹α_j − a_ij w⁻¹α_i.
        let col_i: Vec<i64> = w.inverse_action[i * n..(i + 1) * n].to_vec();
        for j in 0..n {
            let a = g.entry(i, j);
            if a != 0 {
                for (x, c) in w.inverse_action[j * n..(j + 1) * n].iter_mut().zip(&col_i) {
                    *x -= a * c;
                }
            }
        }
    }

    /// Recomputes the lex-first reduced word from the action.
    fn canonicalize(&self, mut w: WeylElement) -> WeylElement {
        let mut probe = w.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..self.rank()).find(|&i| probe.has_left_descent(i)) {
            word.push(i);
            self.left_multiply_raw(i, &mut probe);
        }
        w.word = word;
        w
    }

    pub fn left_multiply(&self, i: usize, w: &WeylElement) -> Result<WeylElement> {
        self.check_index(i)?;
        let mut out = w.clone();
        self.left_multiply_raw(i, &mut out);
        Ok(self.canonicalize(out))
    }

    pub fn right_multiply(&self, w: &WeylElement, i: usize) -> Result<WeylElement> {
        self.check_index(i)?;
        let mut word = w.word.clone();
        word.push(i);
        self.element(&word)
    }

    pub fn multiply(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        let mut out = b.clone();
        for &i in a.word.iter().rev() {
            self.left_multiply_raw(i, &mut out);
        }
        self.canonicalize(out)
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let out = WeylElement {
            word: vec![],
            n: w.n,
            action: w.inverse_action.clone(),
            inverse_action: w.action.clone(),
        };
        self.canonicalize(out)
    }

    fn check_element(&self, w: &WeylElement) -> Result<()> {
        if w.n != self.rank() {
            return Err(Error::RealizationMismatch {
                expected: self.rank(),
                found: w.n,
            });
        }
        Ok(())
    }

    pub fn act_on_weight(&self, w: &WeylElement, lambda: &Weight) -> Result<Weight> {
        self.check_element(w)?;
        self.realization.check_weight(lambda)?;
        let mut c = lambda.coords.clone();
        for &i in w.word.iter().rev() {
            let k = c[i].clone();
            if !k.is_zero() {
                for (x, a) in c.iter_mut().zip(self.realization.simple_root_ints(i)) {
                    *x -= &k * Q::from_integer((*a).into());
                }
            }
        }
        Ok(Weight::new(c))
    }

    pub fn act_on_coweight(&self, w: &WeylElement, x: &Coweight) -> Result<Coweight> {
        self.check_element(w)?;
        if x.dim() != self.realization.dim_h() {
            return Err(Error::RealizationMismatch {
                expected: self.realization.dim_h(),
                found: x.dim(),
            });
        }
        let mut c = x.coords.clone();
        for &i in w.word.iter().rev() {
            let a: Q = self
                .realization
                .simple_root_ints(i)
                .iter()
                .zip(&c)
                .map(|(&r, y)| Q::from_integer(r.into()) * y)
                .sum();
            c[i] -= a;
        }
        Ok(Coweight::new(c))
    }

    /// `Φ⁺ ∩ w⁻¹Φ⁻`, in the order produced by unfolding the reduced word.
    pub fn inversions(&self, w: &WeylElement) -> Vec<RealRoot> {
        let g = self.realization.gcm();
        let n = self.rank();
        let word = &w.word;
        (0..word.len())
            .map(|j| {
                let mut r = RealRoot::simple(n, word[j]);
                for &a in &word[j + 1..] {
                    reflect_root(g, a, &mut r.root);
                    reflect_coroot(g, a, &mut r.coroot);
                }
                r
            })
            .collect()
    }

    /// Bruhat order, via the lifting property along `w`'s reduced word.
    pub fn bruhat_leq(&self, u: &WeylElement, w: &WeylElement) -> bool {
        if u.length() > w.length() {
            return false;
        }
        if u.length() == w.length() {
            return u == w;
        }
        if u.is_identity() {
            return true;
        }
        let key = (u.word.clone(), w.word.clone());
        if let Some(&hit) = self.bruhat_cache.read().get(&key) {
            return hit;
        }
        let mut cur = u.clone();
        for &s in &w.word {
            if cur.has_left_descent(s) {
                self.left_multiply_raw(s, &mut cur);
            }
        }
        let result = cur.action == self.identity().action;
        self.bruhat_cache.write().insert(key, result);
        result
    }

    /// `w ∈ W^P`: `w(α) > 0` for every `α ∈ Δ(P)`.
    pub fn is_min_rep(&self, w: &WeylElement, p: &ParabolicType) -> bool {
        p.levi().iter().all(|&i| !w.has_right_descent(i))
    }

    pub fn min_coset_reps(&self, p: &ParabolicType, bound: usize) -> CosetRepSet {
        let mut reps = vec![self.identity()];
        let mut seen: HashSet<Vec<usize>> = HashSet::from([vec![]]);
        let mut frontier = vec![self.identity()];
        for _ in 0..bound {
            let mut next = Vec::new();
            for w in &frontier {
                for i in 0..self.rank() {
                    if w.has_left_descent(i) {
                        continue;
                    }
                    let mut v = w.clone();
                    self.left_multiply_raw(i, &mut v);
                    if !self.is_min_rep(&v, p) {
                        continue;
                    }
                    let v = self.canonicalize(v);
                    if seen.insert(v.word.clone()) {
                        next.push(v);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort();
            reps.extend(next.iter().cloned());
            frontier = next;
        }
        let index = reps.iter().enumerate().map(|(k, w)| (w.word.clone(), k)).collect();
        CosetRepSet {
            parabolic: p.clone(),
            length_bound: bound,
            reps,
            index,
        }
    }

    /// `Δ⁻(w)`: simple roots with `ℓ(s_α w) = ℓ(w) − 1`.
    pub fn delta_minus(&self, w: &WeylElement) -> Vec<usize> {
        (0..self.rank()).filter(|&i| w.has_left_descent(i)).collect()
    }

    /// `Δ⁺(w)`: simple roots with `ℓ(s_α w) = ℓ(w) + 1` and `s_α w ∈ W^P`.
    pub fn delta_plus(&self, w: &WeylElement, p: &ParabolicType) -> Result<Vec<usize>> {
        if !self.is_min_rep(w, p) {
            return Err(Error::NotMinimalRep(w.word.clone()));
        }
        Ok((0..self.rank())
            .filter(|&i| !w.has_left_descent(i))
            .filter(|&i| {
                let mut v = w.clone();
                self.left_multiply_raw(i, &mut v);
                self.is_min_rep(&v, p)
            })
            .collect())
    }

    /// `s_β = u s_i u⁻¹` where `β = ±u(α_i)`.
    pub fn reflection_of_root(&self, beta: &[i64]) -> Result<WeylElement> {
        let (_, path, simple) = self.realization.real_root_with_descent(beta)?;
        let mut word = path.clone();
        word.push(simple);
        word.extend(path.iter().rev());
        self.element(&word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Gcm;
    use crate::rational::q;

    fn group(g: Gcm) -> WeylGroup {
        WeylGroup::new(Arc::new(Realization::new(g)))
    }

    #[test]
    fn canonical_words() {
        let w = group(Gcm::type_a(2));
        let a = w.element(&[1, 0, 1]).unwrap();
        assert_eq!(a.word(), &[0, 1, 0]);
        assert!(w.element(&[0, 0]).unwrap().is_identity());
        assert_eq!(w.inverse(&w.element(&[0, 1]).unwrap()).word(), &[1, 0]);
    }

    #[test]
    fn weight_action_in_a2() {
        let w = group(Gcm::type_a(2));
        let r = w.realization().clone();
        let pi1 = r.fundamental_weights()[0].clone();
        // Words compose as maps: s_1 s_2 applies s_2 first.
        let s2s1 = w.element(&[1, 0]).unwrap();
        let got = w.act_on_weight(&s2s1, &pi1).unwrap();
        assert_eq!(got, pi1.sub(&r.root_to_weight(&[1, 1])));
        let s1s2 = w.element(&[0, 1]).unwrap();
        let got = w.act_on_weight(&s1s2, &pi1).unwrap();
        assert_eq!(got, pi1.sub(&r.root_to_weight(&[1, 0])));
    }

    #[test]
    fn coweight_action_in_sl2() {
        let w = group(Gcm::type_a(1));
        let x = w.realization().dual_coweights()[0].clone();
        let s = w.simple(0).unwrap();
        let got = w.act_on_coweight(&s, &x).unwrap();
        assert_eq!(got.coords, vec![x.coords[0].clone() - q(1)]);
    }

    #[test]
    fn inversion_sets() {
        let w = group(Gcm::type_a(2));
        let inv: BTreeSet<Vec<i64>> = w
            .inversions(&w.element(&[0, 1]).unwrap())
            .into_iter()
            .map(|r| r.root)
            .collect();
        assert_eq!(inv, BTreeSet::from([vec![0, 1], vec![1, 1]]));
        let aff = group(Gcm::affine_a(1));
        assert_eq!(aff.inversions(&aff.element(&[0, 1, 0]).unwrap()).len(), 3);
    }

    #[test]
    fn bruhat_examples() {
        let w = group(Gcm::type_a(2));
        let s1 = w.element(&[0]).unwrap();
        let s2 = w.element(&[1]).unwrap();
        let s1s2 = w.element(&[0, 1]).unwrap();
        let s2s1 = w.element(&[1, 0]).unwrap();
        assert!(w.bruhat_leq(&s1, &s1s2));
        assert!(w.bruhat_leq(&s2, &s1s2));
        assert!(!w.bruhat_leq(&s1s2, &s2s1));
        assert!(w.bruhat_leq(&w.identity(), &s2s1));
    }

    #[test]
    fn coset_reps_examples() {
        let w = group(Gcm::type_a(2));
        let p = ParabolicType::new(2, [1]).unwrap();
        let reps: Vec<Vec<usize>> = w.min_coset_reps(&p, 3).reps().iter().map(|r| r.word().to_vec()).collect();
        assert_eq!(reps, vec![vec![], vec![0], vec![1, 0]]);
        assert_eq!(w.min_coset_reps(&p, 0).len(), 1);
        let aff = group(Gcm::affine_a(1));
        assert_eq!(aff.min_coset_reps(&ParabolicType::borel(2), 3).len(), 7);
    }

    #[test]
    fn boundary_sets() {
        let w = group(Gcm::type_a(2));
        let p = ParabolicType::new(2, [1]).unwrap();
        let s1 = w.element(&[0]).unwrap();
        assert_eq!(w.delta_plus(&s1, &p).unwrap(), vec![1]);
        assert_eq!(w.delta_minus(&s1), vec![0]);
        assert!(w.delta_minus(&w.identity()).is_empty());
        let s2 = w.element(&[1]).unwrap();
        assert!(matches!(w.delta_plus(&s2, &p), Err(Error::NotMinimalRep(_))));
        let aff = group(Gcm::affine_a(1));
        let s0 = aff.element(&[0]).unwrap();
        assert_eq!(aff.delta_plus(&s0, &ParabolicType::borel(2)).unwrap(), vec![1]);
    }

    #[test]
    fn reflections() {
        let w = group(Gcm::type_a(2));
        assert_eq!(w.reflection_of_root(&[1, 1]).unwrap().word(), &[0, 1, 0]);
        assert_eq!(w.reflection_of_root(&[0, 1]).unwrap().word(), &[1]);
        let aff = group(Gcm::affine_a(1));
        let s = aff.reflection_of_root(&[2, 3]).unwrap();
        assert!(aff.multiply(&s, &s).is_identity());
        assert!(aff.reflection_of_root(&[1, 1]).is_err());
    }

    #[test]
    fn mismatched_weight_is_rejected() {
        let w = group(Gcm::type_a(2));
        let e = w.act_on_weight(&w.identity(), &Weight::from_ints(&[1, 2, 3])).unwrap_err();
        assert_eq!(e, Error::RealizationMismatch { expected: 2, found: 3 });
    }
}
