use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use kmfaces::rational::format_q;
use kmfaces::{
    Certificate, Face, FaceSearch, FaceVerdict, Gcm, Inequality, MembershipVerdict, ParabolicType, Realization,
    TensorCone, Triple, WeylElement, Q,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Format, RunConfig};
use crate::{bundled, input, CliError};

pub const DEFAULT_MAX_LENGTH: usize = 3;
pub const DEFAULT_DEPTH: usize = 6;
pub const DEFAULT_NMAX: u64 = 3;
pub const DEFAULT_HEIGHT: usize = 3;
pub const DEFAULT_MAX_TESTS: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Inconclusive => 2,
        }
    }

    /// Fail beats inconclusive beats pass.
    pub fn combine(self, other: Outcome) -> Outcome {
        use Outcome::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }
}

/// What a command produced, in both output formats.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub table: String,
    pub outcome: Outcome,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Table => self.table.clone(),
        }
    }
}

/// The loaded algebra plus resolved bounds.
pub struct Context {
    pub gcm_name: String,
    pub cone: TensorCone,
    pub parabolic: ParabolicType,
    pub max_length: usize,
    pub search: FaceSearch,
    pub seed: u64,
}

impl Context {
    pub fn load(cfg: &RunConfig) -> Result<Self, CliError> {
        let name = cfg
            .gcm
            .as_deref()
            .ok_or_else(|| CliError::Usage("--gcm is required (a file or one of a1, a2, b2, g2, affine_a1, hyperbolic)".into()))?;
        let gcm = load_gcm(name)?;
        Self::new(name, gcm, cfg)
    }

    pub fn new(name: &str, gcm: Gcm, cfg: &RunConfig) -> Result<Self, CliError> {
        let realization = Arc::new(Realization::new(gcm));
        let parabolic = cfg.parabolic(realization.rank())?;
        Ok(Self {
            gcm_name: name.to_string(),
            cone: TensorCone::new(realization),
            parabolic,
            max_length: cfg.max_length.unwrap_or(DEFAULT_MAX_LENGTH),
            search: FaceSearch {
                height: cfg.height.unwrap_or(DEFAULT_HEIGHT),
                n_max: cfg.nmax.unwrap_or(DEFAULT_NMAX),
                depth: cfg.depth.unwrap_or(DEFAULT_DEPTH),
                max_tests: cfg.max_tests.unwrap_or(DEFAULT_MAX_TESTS),
            },
            seed: cfg.seed,
        })
    }

    pub fn realization(&self) -> &Arc<Realization> {
        self.cone.realization()
    }
}

/// A path to a GCM file, or the name of a bundled one.
pub fn load_gcm(name: &str) -> Result<Gcm, CliError> {
    let path = Path::new(name);
    let text = if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {name}: {e}")))?
    } else if let Some(t) = bundled::gcm(name) {
        t.to_string()
    } else {
        return Err(CliError::Usage(format!("{name:?} is neither a file nor a bundled GCM")));
    };
    Ok(Gcm::from_json(&text)?)
}

/// Integers as JSON numbers, everything else as `"p/q"`.
fn qv(x: &Q) -> Value {
    match kmfaces::rational::to_i64(x) {
        Some(n) => n.into(),
        None => format_q(x).into(),
    }
}

fn qs(v: &[Q]) -> Vec<Value> {
    v.iter().map(qv).collect()
}

fn qs_join(v: &[Q]) -> String {
    v.iter().map(format_q).collect::<Vec<_>>().join(",")
}

fn triple_json(t: &Triple) -> Value {
    json!({
        "lambda1": qs(&t.lambda1.coords),
        "lambda2": qs(&t.lambda2.coords),
        "mu": qs(&t.mu.coords),
    })
}

fn triple_text(t: &Triple) -> String {
    format!(
        "({}; {}; {})",
        qs_join(&t.lambda1.coords),
        qs_join(&t.lambda2.coords),
        qs_join(&t.mu.coords)
    )
}

fn completeness(max_length: usize, exhaustive: bool) -> String {
    if exhaustive {
        "complete".into()
    } else {
        format!("complete up to l(v) <= {max_length}")
    }
}

pub fn algebra(ctx: &Context) -> Report {
    let r = ctx.realization();
    let g = r.gcm();
    let dim_e = ctx.cone.space_e().dim();
    let json = json!({
        "gcm": ctx.gcm_name,
        "matrix": g.entries(),
        "labels": g.labels(),
        "type": r.algebra_type().label(),
        "rank": r.rank(),
        "dim_h": r.dim_h(),
        "dim_e": dim_e,
        "symmetrizer": g.symmetrizer(),
        "rho": qs(&r.rho().coords),
        "simple_roots": (0..r.rank()).map(|j| qs(&r.simple_root(j).coords)).collect::<Vec<_>>(),
        "x": r.dual_coweights().iter().map(|x| qs(&x.coords)).collect::<Vec<_>>(),
    });
    let mut t = String::new();
    let kind = match r.algebra_type() {
        kmfaces::AlgebraType::Finite => "finite",
        kmfaces::AlgebraType::Affine { .. } => "affine",
        kmfaces::AlgebraType::Indefinite => "indefinite",
    };
    let _ = writeln!(t, "{kind}, dim h = {}, dim E = {dim_e}", r.dim_h());
    let _ = writeln!(t, "type {}", r.algebra_type().label());
    let _ = writeln!(t, "rank {}, symmetrizer {:?}", r.rank(), g.symmetrizer());
    for (j, row) in g.entries().iter().enumerate() {
        let _ = writeln!(t, "a[{j}] = {row:?}");
    }
    let _ = writeln!(t, "rho = ({})", qs_join(&r.rho().coords));
    for j in 0..r.rank() {
        let _ = writeln!(t, "alpha_{j} = ({})", qs_join(&r.simple_root(j).coords));
    }
    for (j, x) in r.dual_coweights().iter().enumerate() {
        let _ = writeln!(t, "x_{j} = ({})", qs_join(&x.coords));
    }
    Report {
        json,
        table: t,
        outcome: Outcome::Pass,
    }
}

fn inequality_text(i: &Inequality) -> String {
    format!("j={}  w1={}  w2={}  v={}", i.parabolic, i.w1, i.w2, i.v)
}

pub fn inequalities(ctx: &Context) -> Result<Report, CliError> {
    let sys = ctx.cone.enumerate_inequalities(ctx.max_length)?;
    let status = completeness(sys.max_length, sys.exhaustive);
    let json = json!({
        "gcm": ctx.gcm_name,
        "type": ctx.realization().algebra_type().label(),
        "max_length": sys.max_length,
        "exhaustive": sys.exhaustive,
        "status": status,
        "count": sys.inequalities.len(),
        "inequalities": sys.inequalities,
    });
    let mut t = format!("{} inequalities, {status}\n", sys.inequalities.len());
    for i in &sys.inequalities {
        t.push_str(&inequality_text(i));
        t.push('\n');
    }
    Ok(Report {
        json,
        table: t,
        outcome: Outcome::Pass,
    })
}

pub fn member(ctx: &Context, args: [&str; 3]) -> Result<Report, CliError> {
    let r = ctx.realization();
    let [l1, l2, mu] = args.map(|a| input::weight(a, r));
    let t = Triple::new(l1?, l2?, mu?);
    if !t.is_dominant(r.rank()) {
        return Err(kmfaces::Error::NotDominant(triple_text(&t)).into());
    }
    let lattice = ctx.cone.lattice_condition(&t)?;
    let sys = ctx.cone.enumerate_inequalities(ctx.max_length)?;
    let mut violations = Vec::new();
    for ineq in &sys.inequalities {
        let value = ctx.cone.eval_inequality(ineq, &t)?;
        if value < Q::from_integer(0.into()) {
            violations.push((ineq, value));
        }
    }
    let screen = lattice && violations.is_empty();
    let verdict = ctx
        .cone
        .tensor()?
        .gamma_member(&t.lambda1, &t.lambda2, &t.mu, ctx.search.n_max, ctx.search.depth)?;
    let invariant = t.lambda1.is_w_invariant(r.rank()) || t.lambda2.is_w_invariant(r.rank());
    // A member always passes a sound screen; only "satisfied but not found"
    // leaves room for doubt.
    let (agreement, outcome) = match (&verdict, screen) {
        (MembershipVerdict::Member { .. }, true) => ("agree", Outcome::Pass),
        (MembershipVerdict::Member { .. }, false) if invariant => ("inconclusive", Outcome::Inconclusive),
        (MembershipVerdict::Member { .. }, false) => ("disagree", Outcome::Fail),
        (MembershipVerdict::LatticeObstruction, _) | (MembershipVerdict::NotUpTo { .. }, false) => {
            ("agree", Outcome::Pass)
        }
        (MembershipVerdict::NotUpTo { .. }, true) => ("inconclusive", Outcome::Inconclusive),
    };
    let json = json!({
        "triple": triple_json(&t),
        "lattice_condition": lattice,
        "screen": {
            "max_length": sys.max_length,
            "status": completeness(sys.max_length, sys.exhaustive),
            "inequalities": sys.inequalities.len(),
            "satisfied": screen,
            "violations": violations.iter().map(|(i, v)| json!({
                "inequality": i,
                "value": qv(v),
            })).collect::<Vec<_>>(),
        },
        "search": verdict,
        "w_invariant_input": invariant,
        "agreement": agreement,
    });
    let mut text = format!("triple {}\n", triple_text(&t));
    let _ = writeln!(text, "lattice condition: {lattice}");
    let _ = writeln!(
        text,
        "screen: {} of {} inequalities violated ({})",
        violations.len(),
        sys.inequalities.len(),
        completeness(sys.max_length, sys.exhaustive)
    );
    for (i, v) in &violations {
        let _ = writeln!(text, "  {}  value {}", inequality_text(i), format_q(v));
    }
    let search = match &verdict {
        MembershipVerdict::Member { n, multiplicity } => format!("member at N = {n} (multiplicity {multiplicity})"),
        MembershipVerdict::NotUpTo { n_max, depth_limited } => {
            format!("not found up to k = {n_max}{}", if *depth_limited { " (depth limited)" } else { "" })
        }
        MembershipVerdict::LatticeObstruction => "lattice obstruction".into(),
    };
    let _ = writeln!(text, "search: {search}");
    if invariant {
        let _ = writeln!(text, "note: lambda1 or lambda2 is W-invariant");
    }
    let _ = writeln!(text, "agreement: {agreement}");
    Ok(Report {
        json,
        table: text,
        outcome,
    })
}

fn face_json(face: &Face) -> Value {
    json!({
        "parabolic": face.parabolic.levi(),
        "w1": face.w1.word(),
        "w2": face.w2.word(),
        "v": face.v.word(),
        "equalities": face.equalities.iter().map(|(j, row)| json!({"j": j, "row": qs(row)})).collect::<Vec<_>>(),
    })
}

pub fn face_elements(ctx: &Context, words: [&str; 3]) -> Result<[WeylElement; 3], CliError> {
    let wg = ctx.cone.weyl();
    Ok([input::element(words[0], wg)?, input::element(words[1], wg)?, input::element(words[2], wg)?])
}

pub fn face(ctx: &Context, words: [&str; 3]) -> Result<Report, CliError> {
    let [w1, w2, v] = face_elements(ctx, words)?;
    let face = ctx.cone.face(&ctx.parabolic, &w1, &w2, &v)?;
    let rank_on_e = ctx.cone.equality_rank_on_e(&face);
    let report = ctx.cone.face_dimension(&face, &ctx.search)?;
    let boundary = ctx.cone.classify_boundary(&face)?;
    let restrictions = report
        .witnesses
        .iter()
        .map(|w| ctx.cone.restriction_check(&face, &w.triple))
        .collect::<Result<Vec<_>, _>>()?;
    let outcome = match report.verdict {
        FaceVerdict::Pass => Outcome::Pass,
        FaceVerdict::BudgetExhausted => Outcome::Inconclusive,
    };
    let json = json!({
        "gcm": ctx.gcm_name,
        "face": face_json(&face),
        "search": ctx.search,
        "equality_rank_on_e": rank_on_e,
        "report": report,
        "boundary": boundary,
        "restriction": restrictions,
    });
    let mut t = format!(
        "face P = {}  w1={}  w2={}  v={}\n",
        face.parabolic, face.w1, face.w2, face.v
    );
    let _ = writeln!(
        t,
        "expected dimension {}, rank found {}, kernel dimension {}, equality rank on E {}",
        report.d_expected, report.rank_found, report.kernel_dim, rank_on_e
    );
    let _ = writeln!(
        t,
        "candidates {}, membership tests {}, verdict {:?}",
        report.candidates_examined, report.membership_tests, report.verdict
    );
    for (w, rest) in report.witnesses.iter().zip(&restrictions) {
        let _ = writeln!(
            t,
            "  N={} {}  degrees nonnegative: {}",
            w.n,
            triple_text(&w.triple),
            rest.all_nonnegative
        );
    }
    for b in &boundary {
        let _ = writeln!(t, "  root {} slot {}: {:?}", b.root, b.slot, b.kind);
    }
    Ok(Report {
        json,
        table: t,
        outcome,
    })
}

/// Certificates for every inequality, split across threads.
pub fn certificates(cone: &TensorCone, all: &[Inequality]) -> Result<Vec<Certificate>, kmfaces::Error> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(all.len().max(1));
    let chunk = all.len().div_ceil(threads).max(1);
    let idx: Vec<usize> = (0..all.len()).collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = idx
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || {
                    part.iter()
                        .map(|&k| cone.irredundancy_certificate(k, all))
                        .collect::<Result<Vec<_>, _>>()
                })
            })
            .collect();
        let mut out = Vec::with_capacity(all.len());
        for h in handles {
            out.extend(h.join().expect("certificate worker panicked")?);
        }
        Ok(out)
    })
}

pub fn irredundant(ctx: &Context) -> Result<Report, CliError> {
    let sys = ctx.cone.enumerate_inequalities(ctx.max_length)?;
    let certs = certificates(&ctx.cone, &sys.inequalities)?;
    let redundant = certs.iter().filter(|c| !c.is_irredundant()).count();
    let json = json!({
        "gcm": ctx.gcm_name,
        "max_length": sys.max_length,
        "status": completeness(sys.max_length, sys.exhaustive),
        "redundant": redundant,
        "certificates": sys.inequalities.iter().zip(&certs).map(|(i, c)| json!({
            "inequality": i,
            "certificate": c,
        })).collect::<Vec<_>>(),
    });
    let mut t = format!(
        "{} inequalities, {} redundant ({})\n",
        certs.len(),
        redundant,
        completeness(sys.max_length, sys.exhaustive)
    );
    for (i, c) in sys.inequalities.iter().zip(&certs) {
        let detail = match c {
            Certificate::Irredundant { point, value } => {
                format!("irredundant, value {} at ({})", format_q(value), qs_join(point))
            }
            Certificate::Redundant { multipliers, .. } => {
                let m: Vec<String> = multipliers.iter().map(|(k, y)| format!("{y}*I{k}")).collect();
                format!("redundant: {}", m.join(" + "))
            }
        };
        let _ = writeln!(t, "{}  {detail}", inequality_text(i));
    }
    Ok(Report {
        json,
        table: t,
        outcome: if redundant == 0 { Outcome::Pass } else { Outcome::Fail },
    })
}
