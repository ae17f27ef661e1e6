//! Cross-checks against independent classical formulas.

use std::collections::HashSet;
use std::sync::Arc;

use kmfaces::{
    Gcm, MultiplicityQuery, ParabolicType, Realization, SchubertCalculus, TensorEngine, Weight,
    WeylElement, WeylGroup,
};

fn group(g: Gcm) -> Arc<WeylGroup> {
    Arc::new(WeylGroup::new(Arc::new(Realization::new(g))))
}

// ---------- Littlewood–Richardson by counting tableaux ----------

/// `c^ν_{λμ}`: semistandard fillings of `ν/λ` with content `μ` whose
/// right-to-left, top-to-bottom reading word is a lattice word.
fn lr(lambda: &[usize], mu: &[usize], nu: &[usize]) -> u64 {
    let rows = nu.len().max(lambda.len());
    let lam = |i: usize| lambda.get(i).copied().unwrap_or(0);
    if (0..rows).any(|i| lam(i) > nu.get(i).copied().unwrap_or(0)) {
        return 0;
    }
    if lambda.iter().sum::<usize>() + mu.iter().sum::<usize>() != nu.iter().sum::<usize>() {
        return 0;
    }
    // Cells in reading order.
    let cells: Vec<(usize, usize)> = (0..nu.len())
        .flat_map(|r| (lam(r)..nu[r]).rev().map(move |c| (r, c)))
        .collect();
    let mut grid = vec![vec![0usize; nu.first().copied().unwrap_or(0)]; nu.len()];
    let mut used = vec![0usize; mu.len()];
    fn rec(
        k: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        used: &mut Vec<usize>,
        mu: &[usize],
        lam: &dyn Fn(usize) -> usize,
    ) -> u64 {
        if k == cells.len() {
            return u64::from(used.iter().zip(mu).all(|(a, b)| a == b));
        }
        let (r, c) = cells[k];
        let mut total = 0;
        for x in 1..=mu.len() {
            if used[x - 1] == mu[x - 1] {
                continue;
            }
            // Lattice: after placing x, count(x) ≤ count(x − 1).
            if x > 1 && used[x - 1] + 1 > used[x - 2] {
                continue;
            }
            // Rows weakly increase left to right; the cell to the right is filled already.
            if c + 1 < grid[r].len() && grid[r][c + 1] != 0 && grid[r][c + 1] < x {
                continue;
            }
            // Columns strictly increase downwards; the cell above is filled or part of λ.
            if r > 0 && c >= lam(r - 1) && grid[r - 1][c] >= x {
                continue;
            }
            grid[r][c] = x;
            used[x - 1] += 1;
            total += rec(k + 1, cells, grid, used, mu, lam);
            used[x - 1] -= 1;
            grid[r][c] = 0;
        }
        total
    }
    rec(0, &cells, &mut grid, &mut used, mu, &lam)
}

#[test]
fn lr_rule_small_cases() {
    assert_eq!(lr(&[1], &[1], &[2]), 1);
    assert_eq!(lr(&[1], &[1], &[1, 1]), 1);
    assert_eq!(lr(&[2, 1], &[2, 1], &[3, 2, 1]), 2);
    assert_eq!(lr(&[2, 1], &[1], &[2, 2]), 1);
    assert_eq!(lr(&[2], &[2], &[2, 2]), 1);
    assert_eq!(lr(&[2], &[1, 1], &[2, 2]), 0);
}

// ---------- Grassmannian cup products ----------

/// One-line notation of `w` on `{0, …, n}`, where `s_i` swaps `i` and `i + 1`.
fn permutation(w: &WeylElement, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..=n).collect();
    for &i in w.word().iter().rev() {
        for x in p.iter_mut() {
            if *x == i {
                *x = i + 1;
            } else if *x == i + 1 {
                *x = i;
            }
        }
    }
    p
}

/// The partition of `w ∈ W^P` for `Gr(k, n + 1)` with `k = j + 1`.
fn partition(w: &WeylElement, n: usize, k: usize) -> Vec<usize> {
    let p = permutation(w, n);
    let mut a: Vec<usize> = p[..k].to_vec();
    a.sort_unstable();
    let mut lam: Vec<usize> = a.iter().enumerate().map(|(i, x)| x - i).collect();
    lam.reverse();
    while lam.last() == Some(&0) {
        lam.pop();
    }
    lam
}

#[test]
fn grassmannian_products_match_lr() {
    for (n, j) in [(3usize, 1usize), (4, 1), (4, 0), (4, 2)] {
        let wg = group(Gcm::type_a(n));
        let p = ParabolicType::maximal(n, j).unwrap();
        let k = j + 1;
        let top = k * (n + 1 - k);
        let calc = SchubertCalculus::new(wg.clone(), &p, top);
        let reps = calc.reps().reps().to_vec();
        assert_eq!(reps.len(), binomial(n + 1, k));
        let parts: Vec<Vec<usize>> = reps.iter().map(|w| partition(w, n, k)).collect();
        let distinct: HashSet<_> = parts.iter().cloned().collect();
        assert_eq!(distinct.len(), reps.len());
        for (a, w1) in reps.iter().enumerate() {
            for (b, w2) in reps.iter().enumerate() {
                for (c, v) in reps.iter().enumerate() {
                    if v.length() != w1.length() + w2.length() {
                        continue;
                    }
                    let ours = calc.cup_coefficient(w1, w2, v).unwrap();
                    let theirs = lr(&parts[a], &parts[b], &parts[c]);
                    assert_eq!(ours as u64, theirs, "Gr({k},{}) {w1} {w2} {v}", n + 1);
                }
            }
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

// ---------- Chevalley's formula on G/B ----------

/// `σ_{s_i} σ_w = Σ ⟨ϖ_i, β∨⟩ σ_{w s_β}` over `β > 0` with `ℓ(w s_β) = ℓ(w) + 1`.
fn chevalley(g: Gcm, bound: usize, root_height: usize) {
    let wg = group(g);
    let r = wg.realization().clone();
    let n = wg.rank();
    let calc = SchubertCalculus::new(wg.clone(), &ParabolicType::borel(n), bound);
    let roots = r.real_roots_up_to_height(root_height);
    let reflections: Vec<(WeylElement, Vec<i64>)> = roots
        .positive()
        .map(|b| (wg.reflection_of_root(&b.root).unwrap(), b.coroot.clone()))
        .collect();
    for w in calc.reps().reps().iter().filter(|w| w.length() < bound) {
        for i in 0..n {
            let si = wg.simple(i).unwrap();
            for v in calc.reps().of_length(w.length() + 1) {
                let expected: i64 = reflections
                    .iter()
                    .filter(|(s, _)| &wg.multiply(w, s) == v)
                    .map(|(_, co)| co[i])
                    .sum();
                assert_eq!(calc.cup_coefficient(&si, w, v).unwrap(), expected, "s{i} · {w} at {v}");
            }
        }
    }
}

#[test]
fn chevalley_formula_finite() {
    chevalley(Gcm::type_a(3), 6, 6);
    chevalley(Gcm::type_b(2), 4, 6);
    chevalley(Gcm::g2(), 6, 12);
}

#[test]
fn chevalley_formula_affine() {
    // A Bruhat cover w < w s_β of length ≤ 5 only involves roots of small height.
    chevalley(Gcm::affine_a(1), 5, 12);
    chevalley(Gcm::affine_a(2), 4, 10);
}

// ---------- Bruhat order by the subword property ----------

fn subword_leq(wg: &WeylGroup, u: &WeylElement, w: &WeylElement) -> bool {
    let word = w.word();
    (0u32..1 << word.len()).any(|mask| {
        let sub: Vec<usize> = (0..word.len()).filter(|k| mask >> k & 1 == 1).map(|k| word[k]).collect();
        sub.len() == u.length() && &wg.element(&sub).unwrap() == u
    })
}

#[test]
fn bruhat_matches_subwords() {
    for (g, bound) in [(Gcm::type_a(3), 6), (Gcm::type_b(2), 4), (Gcm::affine_a(1), 5)] {
        let wg = group(g);
        let n = wg.rank();
        let all = wg.min_coset_reps(&ParabolicType::borel(n), bound);
        for u in all.reps() {
            for w in all.reps() {
                assert_eq!(wg.bruhat_leq(u, w), subword_leq(&wg, u, w), "{u} ≤ {w}");
            }
        }
    }
}

// ---------- Weight multiplicities ----------

fn partitions(n: usize) -> i64 {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for m in part..=n {
            p[m] += p[m - part];
        }
    }
    p[n]
}

#[test]
fn basic_module_delta_string() {
    let e = TensorEngine::new(Arc::new(Realization::new(Gcm::affine_a(1)))).unwrap();
    let t = e.weight_multiplicities(&Weight::from_ints(&[1, 0, 0]), 20).unwrap();
    for k in 0..=10 {
        assert_eq!(t.get(&[k, k]), Some(partitions(k as usize)), "Λ0 − {k}δ");
    }
}

#[test]
fn characters_have_weyl_dimension() {
    for g in [Gcm::type_a(2), Gcm::type_b(2), Gcm::g2()] {
        let r = Arc::new(Realization::new(g));
        let e = TensorEngine::new(r.clone()).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let t = e.weight_multiplicities(&Weight::from_ints(&[a, b]), 60).unwrap();
                let total: i64 = t.entries().iter().map(|(_, m)| m).sum();
                let dim = kmfaces::tensor::weyl_dimension(&r, &[a, b]).unwrap();
                assert_eq!(num_bigint::BigInt::from(total), dim, "({a}, {b})");
            }
        }
    }
}

#[test]
fn sl3_tensor_products_match_lr() {
    let e = TensorEngine::new(Arc::new(Realization::new(Gcm::type_a(2)))).unwrap();
    let part = |a: i64, b: i64| -> Vec<usize> {
        let mut p = vec![(a + b) as usize, b as usize];
        while p.last() == Some(&0) {
            p.pop();
        }
        p
    };
    for a1 in 0..4 {
        for b1 in 0..4 {
            for a2 in 0..3 {
                for b2 in 0..3 {
                    for a3 in 0..7 {
                        for b3 in 0..7 {
                            let size = (a1 + 2 * b1 + a2 + 2 * b2) - (a3 + 2 * b3);
                            let expect = if size >= 0 && size % 3 == 0 {
                                let k = (size / 3) as usize;
                                let nu: Vec<usize> =
                                    [(a3 + b3) as usize + k, b3 as usize + k, k].into_iter().filter(|&x| x > 0).collect();
                                lr(&part(a1, b1), &part(a2, b2), &nu) as i64
                            } else {
                                0
                            };
                            let q = MultiplicityQuery {
                                lambda1: Weight::from_ints(&[a1, b1]),
                                lambda2: Weight::from_ints(&[a2, b2]),
                                mu: Weight::from_ints(&[a3, b3]),
                                scale: 1,
                                depth: 0,
                            };
                            assert_eq!(e.tensor_multiplicity(&q).unwrap(), expect);
                        }
                    }
                }
            }
        }
    }
}
