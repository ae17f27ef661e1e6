//! The acceptance battery. Each criterion is a plain function so the test
//! suite can run them one at a time.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::{Duration, Instant};

use kmfaces::rational::{format_q, q};
use kmfaces::{
    FaceSearch, FaceVerdict, Gcm, MembershipVerdict, MultiplicityQuery, ParabolicType, Realization,
    SchubertCalculus, TensorCone, Triple, Weight, WeylGroup,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::commands::{self, certificates, Context, Outcome, Report};
use crate::config::RunConfig;
use crate::{bundled, CliError};

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub status: Outcome,
    pub detail: String,
    /// Wall time; kept out of the JSON so reports stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let tag = match self.status {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Inconclusive => "INCONCLUSIVE",
        };
        format!(
            "criterion {} [{}] {tag}: {} ({:.2}s)",
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

fn timed(id: u8, name: &'static str, f: impl FnOnce() -> Result<(Outcome, String), kmfaces::Error>) -> CriterionResult {
    let start = Instant::now();
    let (status, detail) = match f() {
        Ok(r) => r,
        Err(e) => (Outcome::Fail, format!("error: {e}")),
    };
    CriterionResult {
        id,
        name,
        status,
        detail,
        elapsed: start.elapsed(),
    }
}

fn pass_if(ok: bool, detail: String) -> (Outcome, String) {
    (if ok { Outcome::Pass } else { Outcome::Fail }, detail)
}

fn cone(g: Gcm) -> TensorCone {
    TensorCone::new(Arc::new(Realization::new(g)))
}

fn weyl(g: Gcm) -> Arc<WeylGroup> {
    Arc::new(WeylGroup::new(Arc::new(Realization::new(g))))
}

fn sweep_algebras() -> Vec<(&'static str, Gcm)> {
    vec![
        ("A2", Gcm::type_a(2)),
        ("B2", Gcm::type_b(2)),
        ("G2", Gcm::g2()),
        ("affine A1", Gcm::affine_a(1)),
    ]
}

/// Maps `f` over `items` on all cores, keeping order.
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let chunk = items.len().div_ceil(threads).max(1);
    std::thread::scope(|s| {
        let f = &f;
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(f).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn screen(cone: &TensorCone, ineqs: &[kmfaces::Inequality], t: &Triple) -> Result<bool, kmfaces::Error> {
    for i in ineqs {
        if cone.eval_inequality(i, t)? < q(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// sl2: the triangle inequalities, each a facet, against Clebsch–Gordan.
pub fn criterion1() -> CriterionResult {
    timed(1, "sl2 triangle inequalities", || {
        let c = cone(Gcm::type_a(1));
        let sys = c.enumerate_inequalities(3)?;
        let p = ParabolicType::maximal(1, 0)?;
        let calc = c.calculus(&p, 3);
        for i in &sys.inequalities {
            if calc.deformed_coefficient(&i.w1, &i.w2, &i.v)? != 1 {
                return Ok((Outcome::Fail, format!("coefficient of {} {} {} is not 1", i.w1, i.w2, i.v)));
            }
        }
        let certs = certificates(&c, &sys.inequalities)?;
        let facets = certs.iter().filter(|x| x.is_irredundant()).count();
        // L(c) ⊂ L(a) ⊗ L(b) iff |a − b| ≤ c ≤ a + b with a + b + c even.
        let cg = |a: i64, b: i64, cc: i64| (a - b).abs() <= cc && cc <= a + b && (a + b + cc) % 2 == 0;
        let mut mismatches = 0;
        for a in 0..=8 {
            for b in 0..=8 {
                for cc in 0..=8 {
                    let t = Triple::from_ints(&[a], &[b], &[cc]);
                    let oracle = (1..=2).any(|n| cg(n * a, n * b, n * cc));
                    if screen(&c, &sys.inequalities, &t)? != oracle {
                        mismatches += 1;
                    }
                }
            }
        }
        Ok(pass_if(
            sys.inequalities.len() == 3 && sys.exhaustive && facets == 3 && mismatches == 0,
            format!(
                "{} inequalities, {facets} facets, {mismatches} Clebsch-Gordan mismatches",
                sys.inequalities.len()
            ),
        ))
    })
}

/// A2: screen membership agrees with the bounded search on a box.
pub fn criterion2() -> CriterionResult {
    timed(2, "A2 screen vs search", || {
        let c = cone(Gcm::type_a(2));
        let sys = c.enumerate_inequalities(3)?;
        let mut triples = Vec::new();
        let range = 0..=5i64;
        for a in range.clone() {
            for b in range.clone() {
                for x in range.clone() {
                    for y in range.clone() {
                        for m in range.clone() {
                            for n in range.clone() {
                                let t = Triple::from_ints(&[a, b], &[x, y], &[m, n]);
                                if c.lattice_condition(&t)? {
                                    triples.push(t);
                                }
                            }
                        }
                    }
                }
            }
        }
        let engine = c.tensor()?;
        let results = par_map(&triples, |t| -> Result<(bool, bool), kmfaces::Error> {
            let s = screen(&c, &sys.inequalities, t)?;
            let m = engine.gamma_member(&t.lambda1, &t.lambda2, &t.mu, 3, 6)?.is_member();
            Ok((s, m))
        });
        let mut members = 0;
        let mut disagreements = 0;
        for r in results {
            let (s, m) = r?;
            members += m as usize;
            disagreements += (s != m) as usize;
        }
        Ok(pass_if(
            sys.exhaustive && disagreements == 0,
            format!("{} triples, {members} members, {disagreements} disagreements", triples.len()),
        ))
    })
}

/// Grading profiles along Bruhat edges, for every proper parabolic.
pub fn criterion3() -> CriterionResult {
    timed(3, "grading profile sweep", || {
        let mut jobs = Vec::new();
        for (name, g) in sweep_algebras() {
            let wg = weyl(g);
            for p in ParabolicType::all_proper(wg.rank()) {
                jobs.push((name, wg.clone(), p));
            }
        }
        let results = par_map(&jobs, |(name, wg, p)| -> Result<(usize, Vec<String>), kmfaces::Error> {
            let calc = SchubertCalculus::new(wg.clone(), p, 9);
            let reports = calc.freg_sweep(8)?;
            let bad = reports
                .iter()
                .filter(|r| !r.holds())
                .map(|r| format!("{name} P={p} v={} beta={:?}", r.v, r.beta))
                .collect();
            Ok((reports.len(), bad))
        });
        let mut total = 0;
        let mut bad = Vec::new();
        for r in results {
            let (n, b) = r?;
            total += n;
            bad.extend(b);
        }
        let mut detail = format!("{total} pairs over {} parabolics, {} violations", jobs.len(), bad.len());
        if let Some(first) = bad.first() {
            let _ = write!(detail, "; first: {first}");
        }
        Ok(pass_if(bad.is_empty() && total > 0, detail))
    })
}

/// `(ρ − v⁻¹ρ)(x_P) = ℓ(v) + Σ (j−1) d̄_j` on maximal parabolics.
pub fn criterion4() -> CriterionResult {
    timed(4, "length identity", || {
        let mut checked = 0;
        let mut bad = Vec::new();
        for (name, g) in sweep_algebras() {
            let wg = weyl(g);
            for j in 0..wg.rank() {
                let p = ParabolicType::maximal(wg.rank(), j)?;
                let calc = SchubertCalculus::new(wg.clone(), &p, 8);
                for v in calc.reps().reps() {
                    let (a, b) = calc.length_identity(v)?;
                    checked += 1;
                    if a != b {
                        bad.push(format!("{name} j={j} v={v}: {a} != {b}"));
                    }
                }
            }
        }
        let mut detail = format!("{checked} representatives, {} violations", bad.len());
        if let Some(first) = bad.first() {
            let _ = write!(detail, "; first: {first}");
        }
        Ok(pass_if(bad.is_empty(), detail))
    })
}

fn deformed(t: &kmfaces::DeformedCoefficientTable, a: &[usize], b: &[usize], v: &[usize]) -> i64 {
    t.get(a, b, v).map_or(0, |e| e.deformed)
}

/// Localization identities, and commutativity/associativity of the
/// deformed product.
pub fn criterion5() -> CriterionResult {
    timed(5, "GKM and deformed product", || {
        const BOUND: usize = 4;
        let mut products = 0;
        let mut bad = Vec::new();
        for (name, g) in sweep_algebras() {
            let wg = weyl(g);
            for p in ParabolicType::all_proper(wg.rank()) {
                let calc = SchubertCalculus::new(wg.clone(), &p, BOUND);
                let reps = calc.reps().reps().to_vec();
                let table = calc.deformed_table(BOUND)?;
                for a in &reps {
                    for b in &reps {
                        if a.length() + b.length() > BOUND {
                            continue;
                        }
                        let ab = calc.product(a, b)?;
                        products += 1;
                        if !ab.gkm_consistent(calc.table()) {
                            bad.push(format!("{name} P={p}: GKM fails for {a} * {b}"));
                        }
                        for v in reps.iter().filter(|v| v.length() == a.length() + b.length()) {
                            if deformed(&table, a.word(), b.word(), v.word())
                                != deformed(&table, b.word(), a.word(), v.word())
                            {
                                bad.push(format!("{name} P={p}: not commutative at {a} {b} {v}"));
                            }
                        }
                    }
                }
            }
        }
        let mut triples = 0;
        for (name, g) in [("A2", Gcm::type_a(2)), ("B2", Gcm::type_b(2))] {
            let wg = weyl(g);
            let calc = SchubertCalculus::new(wg.clone(), &ParabolicType::borel(wg.rank()), BOUND);
            let reps = calc.reps().reps().to_vec();
            let t = calc.deformed_table(BOUND)?;
            let of_len = |l: usize| reps.iter().filter(move |u| u.length() == l);
            for a in &reps {
                for b in &reps {
                    for c in &reps {
                        let total = a.length() + b.length() + c.length();
                        if total > BOUND {
                            continue;
                        }
                        for v in of_len(total) {
                            triples += 1;
                            let left: i64 = of_len(a.length() + b.length())
                                .map(|u| deformed(&t, a.word(), b.word(), u.word()) * deformed(&t, u.word(), c.word(), v.word()))
                                .sum();
                            let right: i64 = of_len(b.length() + c.length())
                                .map(|u| deformed(&t, b.word(), c.word(), u.word()) * deformed(&t, a.word(), u.word(), v.word()))
                                .sum();
                            if left != right {
                                bad.push(format!("{name}: not associative at {a} {b} {c} -> {v}"));
                            }
                        }
                    }
                }
            }
        }
        let mut detail = format!("{products} products, {triples} associativity checks, {} violations", bad.len());
        if let Some(first) = bad.first() {
            let _ = write!(detail, "; first: {first}");
        }
        Ok(pass_if(bad.is_empty(), detail))
    })
}

/// Every coefficient-one face of A2 and B2 reaches the expected dimension.
pub fn criterion6() -> CriterionResult {
    timed(6, "finite faces", || {
        let mut faces = 0;
        let mut bad = Vec::new();
        for (name, g, len) in [("A2", Gcm::type_a(2), 3), ("B2", Gcm::type_b(2), 4)] {
            let c = cone(g);
            let n = c.weyl().rank();
            let sys = c.enumerate_inequalities(len)?;
            let results = par_map(&sys.inequalities, |i| -> Result<Option<String>, kmfaces::Error> {
                let p = ParabolicType::maximal(n, i.parabolic)?;
                let face = c.face(&p, &i.w1, &i.w2, &i.v)?;
                let r = c.face_dimension(&face, &FaceSearch::default())?;
                let rank_e = c.equality_rank_on_e(&face);
                let ok = r.verdict == FaceVerdict::Pass && r.rank_found == r.d_expected && rank_e == 1;
                Ok((!ok).then(|| {
                    format!(
                        "{name} j={} {} {} {}: rank {} of {}, rank on E {rank_e}",
                        i.parabolic, i.w1, i.w2, i.v, r.rank_found, r.d_expected
                    )
                }))
            });
            for r in results {
                faces += 1;
                bad.extend(r?);
            }
        }
        let mut detail = format!("{faces} faces, {} short", bad.len());
        if let Some(first) = bad.first() {
            let _ = write!(detail, "; first: {first}");
        }
        Ok(pass_if(bad.is_empty() && faces > 0, detail))
    })
}

/// Search bounds for the affine face probe; config values win.
pub fn affine_probe_search(cfg: &RunConfig) -> FaceSearch {
    FaceSearch {
        height: cfg.height.unwrap_or(6),
        n_max: cfg.nmax.unwrap_or(3),
        depth: cfg.depth.unwrap_or(6),
        max_tests: cfg.max_tests.unwrap_or(5000),
    }
}

/// Affine A1: some coefficient-one face with `ℓ(v) ≤ 4` reaches dimension 7.
pub fn criterion7(search: FaceSearch) -> CriterionResult {
    timed(7, "affine face probe", || {
        let c = cone(Gcm::affine_a(1));
        let engine = c.tensor()?;
        let sys = c.enumerate_inequalities(4)?.inequalities;
        // (rank found, longest v among full faces, witnesses verified)
        let results = par_map(&sys, |i| -> Result<(usize, Option<usize>, bool), kmfaces::Error> {
            let p = ParabolicType::maximal(2, i.parabolic)?;
            let face = c.face(&p, &i.w1, &i.w2, &i.v)?;
            let r = c.face_dimension(&face, &search)?;
            if r.verdict != FaceVerdict::Pass {
                return Ok((r.rank_found, None, true));
            }
            let mut verified = true;
            for w in &r.witnesses {
                let t = &w.triple;
                let m = engine.tensor_multiplicity(&MultiplicityQuery {
                    lambda1: t.lambda1.clone(),
                    lambda2: t.lambda2.clone(),
                    mu: t.mu.clone(),
                    scale: w.n,
                    depth: search.depth,
                })?;
                verified &= m > 0 && face.contains(t) && t.is_dominant(2);
            }
            Ok((r.rank_found, Some(i.v.length()), verified))
        });
        let mut full = 0;
        let mut longest = None;
        let mut best = 0;
        let mut unverified = 0;
        for r in results {
            let (rank, len, ok) = r?;
            best = best.max(rank);
            unverified += (!ok) as usize;
            if let Some(l) = len {
                full += 1;
                longest = longest.max(Some(l));
            }
        }
        let detail = format!(
            "{full} of {} faces reach rank 7 (longest l(v) = {}), best rank {best}, {unverified} unverified witness sets",
            sys.len(),
            longest.map_or("-".into(), |l| l.to_string())
        );
        let status = if unverified > 0 {
            Outcome::Fail
        } else if full > 0 {
            Outcome::Pass
        } else {
            Outcome::Inconclusive
        };
        Ok((status, detail))
    })
}

fn random_dominant(rng: &mut ChaCha8Rng, r: &Realization) -> Weight {
    let mut c: Vec<i64> = (0..r.rank()).map(|_| rng.random_range(0..=3)).collect();
    c.extend((r.rank()..r.dim_h()).map(|_| rng.random_range(-2..=2)));
    Weight::from_ints(&c)
}

/// `(λ, μ, λ + μ)` and `(ρ, ρ, 2ρ − α_i)` occur already at `N = 1`.
pub fn criterion8(seed: u64) -> CriterionResult {
    timed(8, "witness triples", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut checked = 0;
        let mut bad = Vec::new();
        for (name, g) in [("A2", Gcm::type_a(2)), ("affine A1", Gcm::affine_a(1))] {
            let c = cone(g);
            let r = c.realization().clone();
            let engine = c.tensor()?;
            let mut cases = Vec::new();
            for _ in 0..20 {
                let (l, m) = (random_dominant(&mut rng, &r), random_dominant(&mut rng, &r));
                let sum = l.add(&m);
                cases.push((l, m, sum));
            }
            let rho = r.rho();
            for i in 0..r.rank() {
                cases.push((rho.clone(), rho.clone(), rho.scaled(&q(2)).sub(&r.simple_root(i))));
            }
            for (l, m, mu) in cases {
                checked += 1;
                let v = engine.gamma_member(&l, &m, &mu, 1, 6)?;
                if !matches!(v, MembershipVerdict::Member { n: 1, .. }) {
                    bad.push(format!("{name} ({l:?}, {m:?}, {mu:?}): {v:?}"));
                }
            }
        }
        let mut detail = format!("{checked} triples, {} not members at N = 1", bad.len());
        if let Some(first) = bad.first() {
            let _ = write!(detail, "; first: {first}");
        }
        Ok(pass_if(bad.is_empty(), detail))
    })
}

/// Affine A1: members found by the search satisfy every emitted inequality.
pub fn criterion9(seed: u64) -> CriterionResult {
    timed(9, "affine necessity", || {
        let c = cone(Gcm::affine_a(1));
        let r = c.realization().clone();
        let engine = c.tensor()?;
        let sys = c.enumerate_inequalities(4)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
        let mut triples = Vec::new();
        while triples.len() < 200 {
            let l1 = random_dominant(&mut rng, &r);
            let l2 = random_dominant(&mut rng, &r);
            if l1.is_w_invariant(2) || l2.is_w_invariant(2) {
                continue;
            }
            let gamma = [rng.random_range(0..=3), rng.random_range(0..=3)];
            let mu = l1.add(&l2).sub(&r.root_to_weight(&gamma));
            if mu.is_dominant(2) {
                triples.push(Triple::new(l1, l2, mu));
            }
        }
        let results = par_map(&triples, |t| -> Result<Option<(bool, Vec<String>)>, kmfaces::Error> {
            let v = engine.gamma_member(&t.lambda1, &t.lambda2, &t.mu, 3, 6)?;
            if !v.is_member() {
                return Ok(None);
            }
            let mut violated = Vec::new();
            for i in &sys.inequalities {
                let x = c.eval_inequality(i, t)?;
                if x < q(0) {
                    violated.push(format!("{t:?} violates j={} {} {} {} ({})", i.parabolic, i.w1, i.w2, i.v, format_q(&x)));
                }
            }
            Ok(Some((true, violated)))
        });
        let mut members = 0;
        let mut bad = Vec::new();
        for res in results {
            if let Some((_, v)) = res? {
                members += 1;
                bad.extend(v);
            }
        }
        let mut detail = format!(
            "{} samples, {members} members, {} inequalities, {} violations",
            triples.len(),
            sys.inequalities.len(),
            bad.len()
        );
        if let Some(first) = bad.first() {
            let _ = write!(detail, "; first: {first}");
        }
        let status = if !bad.is_empty() {
            Outcome::Fail
        } else if members == 0 {
            Outcome::Inconclusive
        } else {
            Outcome::Pass
        };
        Ok((status, detail))
    })
}

pub fn all_criteria(cfg: &RunConfig) -> Vec<CriterionResult> {
    vec![
        criterion1(),
        criterion2(),
        criterion3(),
        criterion4(),
        criterion5(),
        criterion6(),
        criterion7(affine_probe_search(cfg)),
        criterion8(cfg.seed),
        criterion9(cfg.seed),
    ]
}

/// Regenerates the output a golden file records, with default bounds.
pub fn golden_output(g: &bundled::Golden) -> Result<String, CliError> {
    let cfg = RunConfig {
        gcm: Some(g.gcm.into()),
        levi: g.levi.map(Into::into),
        ..RunConfig::default()
    };
    let ctx = Context::load(&cfg)?;
    let report: Report = match g.face {
        None => commands::inequalities(&ctx)?,
        Some(words) => commands::face(&ctx, words)?,
    };
    Ok(report.render(crate::Format::Json))
}

#[derive(Debug, Clone, Serialize)]
pub struct GoldenResult {
    pub file: &'static str,
    pub status: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diff: Option<String>,
}

/// First differing line, or a length note.
fn first_difference(expected: &str, found: &str) -> Option<String> {
    if expected == found {
        return None;
    }
    let (e, f): (Vec<_>, Vec<_>) = (expected.lines().collect(), found.lines().collect());
    for (k, (a, b)) in e.iter().zip(&f).enumerate() {
        if a != b {
            return Some(format!("line {}: expected {a:?}, found {b:?}", k + 1));
        }
    }
    Some(format!("expected {} lines, found {}", e.len(), f.len()))
}

pub fn check_goldens(cfg: &RunConfig) -> Result<Vec<GoldenResult>, CliError> {
    let mut out = Vec::new();
    for g in bundled::GOLDEN {
        let expected = match &cfg.golden {
            Some(dir) => {
                let path = dir.join(g.file);
                std::fs::read_to_string(&path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
            }
            None => g.contents.to_string(),
        };
        let found = golden_output(g)?;
        let diff = first_difference(&expected, &found);
        out.push(GoldenResult {
            file: g.file,
            status: if diff.is_none() { Outcome::Pass } else { Outcome::Fail },
            diff,
        });
    }
    Ok(out)
}

pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    let goldens = check_goldens(cfg)?;
    let criteria = all_criteria(cfg);
    let outcome = criteria
        .iter()
        .map(|c| c.status)
        .chain(goldens.iter().map(|g| g.status))
        .fold(Outcome::Pass, Outcome::combine);
    let mut t = String::new();
    for c in &criteria {
        let _ = writeln!(t, "{}", c.line());
    }
    for g in &goldens {
        let _ = writeln!(
            t,
            "golden {}: {}",
            g.file,
            g.diff.as_deref().unwrap_or("identical")
        );
    }
    let counts: BTreeMap<&str, usize> = criteria.iter().fold(BTreeMap::new(), |mut m, c| {
        *m.entry(match c.status {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Inconclusive => "inconclusive",
        })
        .or_default() += 1;
        m
    });
    Ok(Report {
        json: json!({
            "criteria": criteria,
            "golden": goldens,
            "counts": counts,
            "outcome": outcome,
        }),
        table: t,
        outcome,
    })
}
