//! Command implementations behind the `zariski` binary. Each returns a
//! serializable report; nothing here reads the clock, so reruns with the
//! same parameters give byte-identical JSON.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{ElementKind, GroupElement};
use crate::numbers::Rational;
use crate::separation::{separate, AuditReport, GadgetCache, GadgetMode, Separation, SeparationGadget};
use crate::solver::{intersect_witness, solve, CantorContext};
use crate::words::{evaluate_word, parse_word, SetDescriptor, SystemSpec};

pub type ElementStore = BTreeMap<String, GroupElement>;

/// Parameters echoed into every report so that a run can be rebuilt.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ExperimentConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<GadgetMode>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub inputs: Vec<String>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn load_store(path: &Path) -> Result<ElementStore> {
    let store: ElementStore = read_json(path)?;
    for name in store.keys() {
        if !crate::words::is_valid_name(name) {
            return Err(Error::InvalidInput(format!("{name:?} is not a valid element name")));
        }
    }
    Ok(store)
}

pub fn load_system(path: &Path) -> Result<SystemSpec> {
    read_json(path)
}

fn lookup<'a>(store: &'a ElementStore, name: &str) -> Result<&'a GroupElement> {
    store.get(name).ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// `w(x)` with `x` taken from the store by name.
pub fn eval_command(store: &ElementStore, word: &str, x_name: &str) -> Result<GroupElement> {
    let w = parse_word(word, store)?;
    evaluate_word(&w, lookup(store, x_name)?)
}

/// Alphabet size of a system: read off its elements, or `default_n` when
/// it mentions none. Only `V_n` systems can be solved.
fn solver_alphabet(kinds: &[Option<ElementKind>], default_n: u32) -> Result<u32> {
    let mut n = None;
    for k in kinds.iter().flatten() {
        match k {
            ElementKind::Prefix(m) => {
                if n.is_some_and(|n| n != *m) {
                    return Err(Error::kind_mismatch(format!("prefix(n={})", n.unwrap()), k.to_string()));
                }
                n = Some(*m);
            }
            other => {
                return Err(Error::InvalidInput(format!(
                    "the solver works over prefix maps; found a {other} element"
                )))
            }
        }
    }
    Ok(n.unwrap_or(default_n))
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub config: ExperimentConfig,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub system: Vec<SystemSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<GroupElement>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    pub seed: u64,
}

/// Outcome of the independent random search run alongside the solver.
#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub budget: usize,
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<GroupElement>,
}

/// Cone bound of the prefix maps drawn by the random search.
pub const ORACLE_CONES: usize = 8;

/// Draws up to `budget` random prefix maps with a seed derived from `seed`
/// and reports the first one lying in the set.
pub fn oracle_search(set: &SetDescriptor<GroupElement>, n: u32, budget: usize, seed: u64) -> Result<OracleReport> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(crate::seeds::derive_seed(seed, u64::MAX));
    let mut sampler = || GroupElement::from(crate::groups::random_prefix_map(&mut rng, n, ORACLE_CONES));
    let found = match set {
        SetDescriptor::Empty => None,
        SetDescriptor::Full => Some((sampler(), 1)),
        SetDescriptor::Basic(s) => crate::solver::brute_force_witness(s, &mut sampler, budget)?,
    };
    Ok(OracleReport {
        budget,
        found: found.is_some(),
        samples: found.as_ref().map(|(_, t)| *t),
        witness: found.map(|(w, _)| w),
    })
}

fn verdict_report(config: ExperimentConfig, verdict: &'static str, system: Vec<SystemSpec>, seed: u64) -> WitnessReport {
    WitnessReport { config, verdict, system, witness: None, steps: None, verified: false, oracle: None, seed }
}

/// Solves one system; with a `budget`, also runs the random search as an
/// independent check.
pub fn solve_command(spec: &SystemSpec, seed: u64, default_n: u32, budget: Option<usize>) -> Result<WitnessReport> {
    let n = solver_alphabet(&[spec.kind()?], default_n)?;
    let config = ExperimentConfig {
        command: "solve".into(),
        seed: Some(seed),
        budget,
        n: Some(n),
        ..Default::default()
    };
    let set = spec.compile()?;
    let system = match &set {
        SetDescriptor::Empty | SetDescriptor::Full => {
            return Ok(verdict_report(config, set.verdict(), vec![spec.clone()], seed))
        }
        SetDescriptor::Basic(s) => s,
    };
    let ctx = CantorContext::new(n)?;
    let sol = solve(system, &ctx, seed)?;
    let verified = set.member(&sol.witness)?;
    let oracle = budget.map(|b| oracle_search(&set, n, b, seed)).transpose()?;
    Ok(WitnessReport {
        config,
        verdict: "basic",
        system: vec![spec.clone()],
        steps: Some(sol.steps()),
        witness: Some(sol.witness),
        verified,
        oracle,
        seed,
    })
}

pub fn intersect_command(a: &SystemSpec, b: &SystemSpec, seed: u64, default_n: u32) -> Result<WitnessReport> {
    let n = solver_alphabet(&[a.kind()?, b.kind()?], default_n)?;
    let config = ExperimentConfig { command: "intersect".into(), seed: Some(seed), n: Some(n), ..Default::default() };
    let (sa, sb) = (a.compile()?, b.compile()?);
    let specs = vec![a.clone(), b.clone()];
    if matches!(sa, SetDescriptor::Empty) || matches!(sb, SetDescriptor::Empty) {
        return Ok(verdict_report(config, "empty", specs, seed));
    }
    if matches!((&sa, &sb), (SetDescriptor::Full, SetDescriptor::Full)) {
        return Ok(verdict_report(config, "full", specs, seed));
    }
    let ctx = CantorContext::new(n)?;
    let sol = intersect_witness(&sa.system()?, &sb.system()?, &ctx, seed)?;
    let verified = sa.member(&sol.witness)? && sb.member(&sol.witness)?;
    Ok(WitnessReport {
        config,
        verdict: "basic",
        system: specs,
        steps: Some(sol.steps()),
        witness: Some(sol.witness),
        verified,
        oracle: None,
        seed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GadgetReport {
    pub config: ExperimentConfig,
    pub passed: bool,
    pub audit: AuditReport,
}

pub fn gadget_command(
    epsilon: &Rational,
    n: u32,
    mode: GadgetMode,
    trials: usize,
    seed: u64,
    parallel: bool,
) -> Result<GadgetReport> {
    let config = ExperimentConfig {
        command: "gadget".into(),
        seed: Some(seed),
        trials: Some(trials),
        epsilon: Some(epsilon.clone()),
        n: Some(n),
        mode: Some(mode),
        ..Default::default()
    };
    let gadget = SeparationGadget::build(epsilon, n, mode)?;
    let audit = gadget.audit(trials, seed, parallel)?;
    Ok(GadgetReport { config, passed: audit.passed(), audit })
}

#[derive(Clone, Debug, Serialize)]
pub struct SeparationReport {
    pub config: ExperimentConfig,
    pub f: String,
    pub g: String,
    pub separated: bool,
    #[serde(flatten)]
    pub separation: Separation,
}

pub fn separate_command(store: &ElementStore, f_name: &str, g_name: &str, n: u32) -> Result<SeparationReport> {
    let (f, g) = (lookup(store, f_name)?, lookup(store, g_name)?);
    let config = ExperimentConfig {
        command: "separate".into(),
        n: Some(n),
        inputs: vec![f_name.to_string(), g_name.to_string()],
        ..Default::default()
    };
    let separation = separate(f, g, n, &GadgetCache::new())?;
    Ok(SeparationReport {
        config,
        f: f_name.to_string(),
        g: g_name.to_string(),
        separated: separation.separates(),
        separation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_bump, PlMap, PrefixMap};

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn store() -> ElementStore {
        let mut s = ElementStore::new();
        s.insert("id".into(), PlMap::identity().into());
        s.insert("a".into(), make_bump(&q("1/4"), &q("3/4"), 2).unwrap().into());
        s.insert("A".into(), make_bump(&q("1/4"), &q("3/4"), 2).unwrap().inverse().into());
        s.insert("b".into(), make_bump(&q("0"), &q("1/2"), 2).unwrap().into());
        s
    }

    #[test]
    fn eval_examples() {
        let s = store();
        assert!(eval_command(&s, "x", "id").unwrap().is_identity());
        let conj = eval_command(&s, "a x A", "b").unwrap();
        let expected = s["a"].compose(&s["b"]).unwrap().compose(&s["A"]).unwrap();
        assert_eq!(conj, expected);
        assert_eq!(eval_command(&s, "x c", "id").unwrap_err().exit_code(), 2);
        assert_eq!(eval_command(&s, "x", "nope").unwrap_err().exit_code(), 2);
    }

    #[test]
    fn solve_reports() {
        let spec = SystemSpec::from_text(ElementStore::new(), &["x"]);
        let r = solve_command(&spec, 9, 2, None).unwrap();
        assert!(r.verified);
        assert!(!r.witness.as_ref().unwrap().is_identity());
        let again = solve_command(&spec, 9, 2, None).unwrap();
        let checked = solve_command(&spec, 9, 2, Some(100)).unwrap();
        assert!(checked.oracle.unwrap().found);
        assert_eq!(serde_json::to_string(&r).unwrap(), serde_json::to_string(&again).unwrap());

        let empty = SystemSpec::from_text(ElementStore::new(), &["x x^-1"]);
        let r = solve_command(&empty, 9, 2, None).unwrap();
        assert_eq!(r.verdict, "empty");
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["verdict"], "empty");

        let pl = SystemSpec::from_text(store(), &["x a"]);
        assert_eq!(solve_command(&pl, 1, 2, None).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn intersect_reports() {
        let mut el = ElementStore::new();
        el.insert("c".into(), PrefixMap::parse(2, &[("0", "1"), ("1", "0")]).unwrap().into());
        let spec = SystemSpec::from_text(el, &["x c"]);
        let r = intersect_command(&spec, &spec, 4, 2).unwrap();
        assert!(r.verified);
        let empty = SystemSpec::from_text(ElementStore::new(), &["x^0"]);
        assert_eq!(intersect_command(&spec, &empty, 4, 2).unwrap().verdict, "empty");
    }

    #[test]
    fn gadget_with_no_trials_checks_injected_members() {
        let r = gadget_command(&q("1/10"), 2, GadgetMode::Interval, 0, 1, false).unwrap();
        assert!(r.passed);
        assert!(r.audit.snapped);
        assert_eq!(r.audit.epsilon, q("63/4096"));
        assert_eq!(r.audit.violations.len(), 0);
        assert_eq!(r.audit.witness_members.len(), 3);
    }

    #[test]
    fn separate_reports() {
        let mut s = ElementStore::new();
        s.insert("id".into(), PlMap::identity().into());
        s.insert(
            "x0".into(),
            PlMap::from_breakpoints(vec![(q("0"), q("0")), (q("1/2"), q("1/4")), (q("3/4"), q("1/2")), (q("1"), q("1"))])
                .unwrap()
                .into(),
        );
        let r = separate_command(&s, "id", "x0", 2).unwrap();
        assert!(r.separated);
        let m = separate_command(&s, "x0", "id", 2).unwrap();
        assert!(m.separated);
        assert_eq!(m.separation.around_f.shift(), r.separation.around_g.shift());
        assert_eq!(separate_command(&s, "id", "id", 2).unwrap_err().exit_code(), 3);
    }
}
