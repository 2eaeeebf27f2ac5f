//! Seeded checkers shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use zariski::groups::sample::random_element;
use zariski::groups::{d_infinity, random_prefix_map, CircleMap, ElementKind, GroupElement, OrbitPoint, PlMap, PrefixMap};
use zariski::numbers::{CirclePoint, Rational};
use zariski::seeds::derive_seed;
use zariski::separation::{separate, GadgetCache};
use zariski::solver::line::LineContext;
use zariski::solver::random::{random_line_system, random_prefix_system, SystemShape};
use zariski::solver::{brute_force_witness, intersect_witness, solve, CantorContext};
use zariski::words::{system_member, InequationSystem, SetDescriptor};

pub const KINDS: [ElementKind; 3] = [ElementKind::Interval, ElementKind::Circle, ElementKind::Prefix(2)];
pub const LEAVES: usize = 12;
pub const CONES: usize = 8;

pub fn rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, index))
}

pub fn element<R: Rng>(rng: &mut R, kind: ElementKind) -> GroupElement {
    let size = if matches!(kind, ElementKind::Prefix(_)) { CONES } else { LEAVES };
    random_element(rng, kind, 2, size)
}

/// Outcome of one named check run over many cases.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Tally {
    pub cases: usize,
    pub failed: usize,
    /// The first few failures.
    pub examples: Vec<String>,
}

impl Tally {
    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.examples.len() < 3 {
                self.examples.push(what());
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

fn kind_name(kind: ElementKind) -> &'static str {
    match kind {
        ElementKind::Interval => "F2",
        ElementKind::Circle => "T2",
        ElementKind::Prefix(_) => "V2",
    }
}

/// Points at which the actions are compared: dyadic points of the interval
/// or circle, or the first orbit points of the Cantor space.
enum Probe {
    Line(Rational),
    Orbit(OrbitPoint),
}

fn probes(kind: ElementKind) -> Vec<Probe> {
    match kind {
        ElementKind::Prefix(n) => OrbitPoint::enumerate(n).take(48).map(Probe::Orbit).collect(),
        _ => (0..64).map(|i| Probe::Line(Rational::ratio(2 * i + 1, 128))).collect(),
    }
}

fn act(g: &GroupElement, p: &Probe) -> Probe {
    match (g, p) {
        (GroupElement::Pl(f), Probe::Line(x)) => Probe::Line(f.evaluate(x).unwrap()),
        (GroupElement::Circle(f), Probe::Line(x)) => {
            Probe::Line(f.evaluate(&CirclePoint::new(x.clone()).unwrap()).value().clone())
        }
        (GroupElement::Prefix(f), Probe::Orbit(x)) => Probe::Orbit(f.apply(x).unwrap()),
        _ => unreachable!("probe kind matches element kind"),
    }
}

fn same(a: &Probe, b: &Probe) -> bool {
    match (a, b) {
        (Probe::Line(x), Probe::Line(y)) => x == y,
        (Probe::Orbit(x), Probe::Orbit(y)) => x == y,
        _ => false,
    }
}

/// The same element rebuilt from a redundant description.
fn redundant_copy<R: Rng>(rng: &mut R, g: &GroupElement) -> GroupElement {
    match g {
        GroupElement::Pl(f) => {
            let mut knots = f.breakpoints().to_vec();
            let i = rng.gen_range(0..knots.len() - 1);
            let x = (&knots[i].0 + &knots[i + 1].0) / Rational::integer(2);
            let y = f.evaluate(&x).unwrap();
            knots.insert(i + 1, (x, y));
            PlMap::from_breakpoints(knots).unwrap().into()
        }
        GroupElement::Circle(f) => {
            let mut knots = f.lift_knots().to_vec();
            let i = rng.gen_range(0..knots.len() - 1);
            let x = (&knots[i].0 + &knots[i + 1].0) / Rational::integer(2);
            let y = f.lift_eval(&x);
            knots.insert(i + 1, (x, y));
            CircleMap::from_lift(f.base_image().clone(), knots).unwrap().into()
        }
        GroupElement::Prefix(f) => {
            // split one cone into its n children
            let n = f.alphabet_size();
            let mut pairs = f.pairs().to_vec();
            let i = rng.gen_range(0..pairs.len());
            let (u, v) = pairs.remove(i);
            for a in 0..n as u8 {
                let (mut uu, mut vv) = (u.clone(), v.clone());
                uu.push(a);
                vv.push(a);
                pairs.push((uu, vv));
            }
            PrefixMap::new(n, pairs).unwrap().into()
        }
    }
}

/// Associativity, inverses, canonical forms, supports of conjugates, the
/// metric axioms and left invariance of the metric, `cases` times each per
/// element kind. Metric checks are skipped for prefix maps, which carry no
/// metric.
pub fn group_core_suite(cases: usize, seed: u64) -> Vec<(String, Tally)> {
    let mut out = Vec::new();
    for (ki, kind) in KINDS.into_iter().enumerate() {
        let name = kind_name(kind);
        let mut assoc = Tally::default();
        let mut inverses = Tally::default();
        let mut canonical = Tally::default();
        let mut support = Tally::default();
        let mut metric = Tally::default();
        let mut invariance = Tally::default();
        let points = probes(kind);
        let id = GroupElement::identity(kind);
        for c in 0..cases {
            let mut r = rng(seed, (ki * cases + c) as u64);
            let (f, g, h) = (element(&mut r, kind), element(&mut r, kind), element(&mut r, kind));
            let fg_h = f.compose(&g).unwrap().compose(&h).unwrap();
            let f_gh = f.compose(&g.compose(&h).unwrap()).unwrap();
            assoc.record(fg_h == f_gh, || format!("{f:?} {g:?} {h:?}"));

            let fi = f.inverse();
            inverses.record(
                f.compose(&fi).unwrap().is_identity() && fi.compose(&f).unwrap().is_identity() && fi.inverse() == f,
                || format!("{f:?}"),
            );

            let json = serde_json::to_string(&f).unwrap();
            let back: GroupElement = serde_json::from_str(&json).unwrap();
            let copy = redundant_copy(&mut r, &f);
            canonical.record(back == f && copy == f && serde_json::to_string(&copy).unwrap() == json, || json.clone());

            // (x)f != x  iff  ((x)g) (g^-1 f g) != (x)g
            let conj = f.conjugate(&g).unwrap();
            let ok = points.iter().all(|x| {
                let moved = !same(&act(&f, x), x);
                let xg = act(&g, x);
                moved == !same(&act(&conj, &xg), &xg)
            });
            support.record(ok, || format!("{f:?} {g:?}"));

            if !matches!(kind, ElementKind::Prefix(_)) {
                let d = |a: &GroupElement, b: &GroupElement| d_infinity(a, b).unwrap();
                let (dfg, dgh, dfh) = (d(&f, &g), d(&g, &h), d(&f, &h));
                let ok = d(&f, &f).is_zero()
                    && dfg == d(&g, &f)
                    && (f == g) == dfg.is_zero()
                    && dfh <= &dfg + &dgh
                    && !dfg.is_negative()
                    && d(&f, &id) <= Rational::one();
                metric.record(ok, || format!("{f:?} {g:?} {h:?}"));
                let hf = h.compose(&f).unwrap();
                let hg = h.compose(&g).unwrap();
                invariance.record(d(&hf, &hg) == dfg, || format!("{f:?} {g:?} {h:?}"));
            }
        }
        out.push((format!("{name} associativity"), assoc));
        out.push((format!("{name} inverses"), inverses));
        out.push((format!("{name} canonical forms"), canonical));
        out.push((format!("{name} support of conjugate"), support));
        if !matches!(kind, ElementKind::Prefix(_)) {
            out.push((format!("{name} metric axioms"), metric));
            out.push((format!("{name} left invariance"), invariance));
        }
    }
    out
}

/// One solved random system, in a form that is compared across reruns.
#[derive(Clone, Debug, Serialize)]
pub struct SolvedRecord {
    pub index: u64,
    pub system: zariski::words::SystemSpec,
    pub witness: GroupElement,
    pub steps: usize,
    pub oracle_samples: Option<usize>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SolverRun {
    pub systems: usize,
    pub degenerate: usize,
    pub verified: usize,
    pub oracle_found: usize,
    pub oracle_verified: usize,
    pub contradictions: usize,
    pub failures: Vec<String>,
    pub records: Vec<SolvedRecord>,
}

/// Draws random normalized systems over `V_2` until `count` of them are
/// basic, solves each and verifies the witness exactly. With a budget, also
/// runs the random search on every system.
pub fn solver_soundness(count: usize, seed: u64, budget: Option<usize>) -> SolverRun {
    let ctx = CantorContext::new(2).unwrap();
    let mut run = SolverRun::default();
    let mut index = 0u64;
    while run.systems < count {
        let mut r = rng(seed, index);
        let spec = random_prefix_system(&mut r, 2, SystemShape::default(), "c");
        index += 1;
        let system = match spec.compile() {
            Ok(SetDescriptor::Basic(s)) => s,
            Ok(_) => {
                run.degenerate += 1;
                continue;
            }
            Err(e) => {
                run.failures.push(format!("system {index}: {e}"));
                run.systems += 1;
                continue;
            }
        };
        run.systems += 1;
        let solved = solve(&system, &ctx, derive_seed(seed, index));
        let solver_ok = match &solved {
            Ok(sol) => match system_member(&system, &sol.witness) {
                Ok(true) => {
                    run.verified += 1;
                    true
                }
                Ok(false) => {
                    run.failures.push(format!("system {index}: witness fails"));
                    false
                }
                Err(e) => {
                    run.failures.push(format!("system {index}: {e}"));
                    false
                }
            },
            Err(e) => {
                run.failures.push(format!("system {index}: {e}"));
                false
            }
        };
        let mut oracle_samples = None;
        if let Some(budget) = budget {
            let mut sr = rng(seed ^ 0x5eed, index);
            let found = brute_force_witness(&system, || random_prefix_map(&mut sr, 2, CONES).into(), budget).unwrap();
            if let Some((w, t)) = found {
                run.oracle_found += 1;
                oracle_samples = Some(t);
                if system_member(&system, &w).unwrap() {
                    run.oracle_verified += 1;
                }
                if !solver_ok {
                    run.contradictions += 1;
                }
            }
        }
        if let Ok(sol) = solved {
            let steps = sol.steps();
            run.records.push(SolvedRecord { index, system: spec, witness: sol.witness, steps, oracle_samples });
        }
    }
    run
}

impl SolverRun {
    pub fn sound(&self) -> bool {
        self.failures.is_empty() && self.verified == self.systems
    }
}

/// Common witnesses for `count` pairs of random basic systems.
pub fn irreducibility(count: usize, seed: u64) -> (Tally, String) {
    let ctx = CantorContext::new(2).unwrap();
    let mut tally = Tally::default();
    let mut records = Vec::new();
    let mut index = 0u64;
    while tally.cases < count {
        let mut r = rng(seed, index);
        index += 1;
        let a = random_prefix_system(&mut r, 2, SystemShape::default(), "a");
        let b = random_prefix_system(&mut r, 2, SystemShape::default(), "b");
        let (Ok(SetDescriptor::Basic(sa)), Ok(SetDescriptor::Basic(sb))) = (a.compile(), b.compile()) else {
            continue;
        };
        match intersect_witness(&sa, &sb, &ctx, derive_seed(seed, index)) {
            Ok(sol) => {
                let ok = system_member(&sa, &sol.witness).unwrap() && system_member(&sb, &sol.witness).unwrap();
                tally.record(ok, || format!("pair {index}: witness fails"));
                records.push(sol.witness);
            }
            Err(e) => tally.record(false, || format!("pair {index}: {e}")),
        }
    }
    (tally, serde_json::to_string(&records).unwrap())
}

/// The solver against the integer-line action.
pub fn line_double(count: usize, seed: u64) -> (Tally, String) {
    let mut tally = Tally::default();
    let mut steps = Vec::new();
    for i in 0..count as u64 {
        let mut r = rng(seed, i);
        let system: InequationSystem<_> = random_line_system(&mut r, SystemShape::default());
        match solve(&system, &LineContext, derive_seed(seed, i)) {
            Ok(sol) => {
                tally.record(system_member(&system, &sol.witness).unwrap(), || format!("system {i}: witness fails"));
                steps.push((sol.steps(), format!("{:?}", sol.witness)));
            }
            Err(e) => tally.record(false, || format!("system {i}: {e}")),
        }
    }
    (tally, serde_json::to_string(&steps).unwrap())
}

/// Separates `count` random pairs of distinct elements of the given kind.
pub fn separation_run(kind: ElementKind, count: usize, seed: u64, cache: &GadgetCache) -> (Tally, String) {
    let mut tally = Tally::default();
    let mut reports = Vec::new();
    let mut index = 0u64;
    while tally.cases < count {
        let mut r = rng(seed, index);
        index += 1;
        let (f, g) = (element(&mut r, kind), element(&mut r, kind));
        if f == g {
            continue;
        }
        match separate(&f, &g, 2, cache) {
            Ok(s) => {
                tally.record(s.separates(), || format!("pair {index}: {s:?}"));
                reports.push(serde_json::to_value(&s).unwrap());
            }
            Err(e) => tally.record(false, || format!("pair {index}: {e}")),
        }
    }
    (tally, serde_json::to_string(&reports).unwrap())
}
