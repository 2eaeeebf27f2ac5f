use std::collections::BTreeSet;

use super::{ActionContext, PartialInjection};
use crate::error::{Error, Result};
use crate::groups::GroupOps;
use crate::words::{word_trace, InequationSystem, SetDescriptor};

/// A finite partial permutation together with the per-word bookkeeping of
/// the inductive construction: depth `d_i` and frontier point `(p_i) f_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverState<P: Ord> {
    sigma: PartialInjection<P>,
    base_points: Vec<P>,
    depths: Vec<usize>,
    frontiers: Vec<P>,
    chains: Vec<(usize, Vec<P>)>,
}

impl<P: Ord + Clone + std::fmt::Debug> SolverState<P> {
    pub fn sigma(&self) -> &PartialInjection<P> {
        &self.sigma
    }

    pub fn base_points(&self) -> &[P] {
        &self.base_points
    }

    pub fn depths(&self) -> &[usize] {
        &self.depths
    }

    pub fn frontiers(&self) -> &[P] {
        &self.frontiers
    }

    /// Every chain added so far, with the index of the word it served.
    pub fn chains(&self) -> &[(usize, Vec<P>)] {
        &self.chains
    }

    pub fn steps(&self) -> usize {
        self.chains.len()
    }

    /// `B`: domain and image of sigma, the base points, and the frontiers.
    pub fn closure(&self) -> BTreeSet<P> {
        let mut b = self.sigma.support_points();
        b.extend(self.base_points.iter().cloned());
        b.extend(self.frontiers.iter().cloned());
        b
    }

    pub fn is_complete<E: GroupOps>(&self, s: &InequationSystem<E>) -> bool {
        s.words().iter().zip(&self.depths).all(|(w, d)| *d == w.len())
    }

    /// Conditions (a), (b), (c) of the induction, checked exactly.
    pub fn check_invariants<E: GroupOps>(&self, s: &InequationSystem<E>) -> Result<()> {
        let fresh: BTreeSet<&P> = self.frontiers.iter().collect();
        if fresh.len() != self.frontiers.len() {
            return Err(Error::InvariantBreach(format!("frontiers collide: {:?}", self.frontiers)));
        }
        for (i, w) in s.words().iter().enumerate() {
            if self.depths[i] != w.len() && self.sigma.touches(&self.frontiers[i]) {
                return Err(Error::InvariantBreach(format!(
                    "frontier {:?} of word {i} already lies in the partial permutation",
                    self.frontiers[i]
                )));
            }
            if self.depths[i] != 0 && self.frontiers[i] == self.base_points[i] {
                return Err(Error::InvariantBreach(format!("word {i} returned to its base point")));
            }
        }
        Ok(())
    }

    fn retrace<C>(&mut self, s: &InequationSystem<C::Element>, ctx: &C) -> Result<()>
    where
        C: ActionContext<Point = P>,
    {
        for (i, w) in s.words().iter().enumerate() {
            let (d, f) = word_trace(w, &self.sigma, &self.base_points[i], |a, p| ctx.apply(a, p))?;
            self.depths[i] = d;
            self.frontiers[i] = f;
        }
        Ok(())
    }

    /// Extends sigma by one chain so that word `i` advances by exactly one
    /// factor.
    pub fn step<C>(&self, s: &InequationSystem<C::Element>, i: usize, ctx: &C) -> Result<Self>
    where
        C: ActionContext<Point = P>,
    {
        let w = s
            .words()
            .get(i)
            .ok_or_else(|| Error::Precondition(format!("no word with index {i}")))?;
        let d = self.depths[i];
        if d >= w.len() {
            return Err(Error::Precondition(format!("word {i} is already fully traced")));
        }
        let k = w.power(d);
        let last = d + 1 == w.len();
        let frontier = self.frontiers[i].clone();

        // C: B together with the interior chain points and the frontier
        let mut avoid = self.closure();
        let mut interior = Vec::new();
        for _ in 1..k.unsigned_abs() {
            let c = ctx.fresh_point(&avoid);
            avoid.insert(c.clone());
            interior.push(c);
        }
        let chosen = match w.coeff_after(d) {
            Some(a) => ctx.moved_point(a, &avoid, !last)?.0,
            None if last => ctx.fresh_point(&avoid),
            None => return Err(Error::Hypothesis(format!("word {i} has an identity interior coefficient"))),
        };
        let chain: Vec<P> = if k > 0 {
            std::iter::once(frontier).chain(interior).chain(std::iter::once(chosen)).collect()
        } else {
            std::iter::once(chosen).chain(interior).chain(std::iter::once(frontier)).collect()
        };

        let mut next = self.clone();
        for pair in chain.windows(2) {
            next.sigma
                .insert(pair[0].clone(), pair[1].clone())
                .map_err(|e| Error::InvariantBreach(format!("chain collides with sigma: {e}")))?;
        }
        next.chains.push((i, chain));
        next.retrace(s, ctx)?;

        for (j, (old, new)) in self.depths.iter().zip(&next.depths).enumerate() {
            let expected = if j == i { old + 1 } else { *old };
            if *new != expected || (j != i && self.frontiers[j] != next.frontiers[j]) {
                return Err(Error::InvariantBreach(format!("step on word {i} disturbed word {j}")));
            }
        }
        next.check_invariants(s)?;
        Ok(next)
    }
}

/// Starting state: sigma empty, every depth zero, frontiers at the base
/// points.
pub fn init_state<C: ActionContext>(
    s: &InequationSystem<C::Element>,
    ctx: &C,
    seed: u64,
) -> Result<SolverState<C::Point>> {
    let base_points = ctx.base_points(s.len(), seed);
    let distinct: BTreeSet<&C::Point> = base_points.iter().collect();
    if base_points.len() != s.len() || distinct.len() != s.len() {
        return Err(Error::InvariantBreach("context returned too few distinct base points".into()));
    }
    Ok(SolverState {
        sigma: PartialInjection::new(),
        depths: vec![0; s.len()],
        frontiers: base_points.clone(),
        base_points,
        chains: Vec::new(),
    })
}

#[derive(Clone, Debug)]
pub struct Solution<E, P: Ord> {
    pub witness: E,
    pub state: SolverState<P>,
}

impl<E, P: Ord + Clone + std::fmt::Debug> Solution<E, P> {
    pub fn steps(&self) -> usize {
        self.state.steps()
    }
}

/// Runs the construction to completion, one step per unfinished word per
/// round in increasing index order, then extends sigma and verifies the
/// result exactly.
pub fn solve<C: ActionContext>(
    s: &InequationSystem<C::Element>,
    ctx: &C,
    seed: u64,
) -> Result<Solution<C::Element, C::Point>> {
    let mut state = init_state(s, ctx, seed)?;
    state.check_invariants(s)?;
    loop {
        let mut progressed = false;
        for (i, w) in s.words().iter().enumerate() {
            if state.depths[i] < w.len() {
                state = state.step(s, i, ctx)?;
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }
    let expected: usize = s.words().iter().map(|w| w.len()).sum();
    if state.steps() != expected {
        return Err(Error::InvariantBreach(format!("took {} steps, expected {expected}", state.steps())));
    }
    let witness = ctx.extend(&state.sigma)?;
    for (a, b) in state.sigma.pairs() {
        if &ctx.apply(&witness, a)? != b {
            return Err(Error::InvariantBreach(format!("extension disagrees with sigma at {a:?}")));
        }
    }
    if !s.member(&witness)? {
        return Err(Error::InvariantBreach("the extended witness fails the system".into()));
    }
    Ok(Solution { witness, state })
}

/// `solve` on a set descriptor; the empty set has no witness.
pub fn solve_set<C: ActionContext>(
    set: &SetDescriptor<C::Element>,
    ctx: &C,
    seed: u64,
) -> Result<Solution<C::Element, C::Point>> {
    solve(&set.system()?, ctx, seed)
}

/// A witness for both systems at once, verified against each separately.
pub fn intersect_witness<C: ActionContext>(
    s1: &InequationSystem<C::Element>,
    s2: &InequationSystem<C::Element>,
    ctx: &C,
    seed: u64,
) -> Result<Solution<C::Element, C::Point>> {
    let sol = solve(&s1.concat(s2), ctx, seed)?;
    if !s1.member(&sol.witness)? || !s2.member(&sol.witness)? {
        return Err(Error::InvariantBreach("common witness fails one of the systems".into()));
    }
    Ok(sol)
}

/// Random search: the first of `budget` sampled elements lying in the set,
/// with the number of samples drawn.
pub fn brute_force_witness<E, F>(s: &InequationSystem<E>, mut sampler: F, budget: usize) -> Result<Option<(E, usize)>>
where
    E: GroupOps,
    F: FnMut() -> E,
{
    for t in 1..=budget {
        let x = sampler();
        if s.member(&x)? {
            return Ok(Some((x, t)));
        }
    }
    Ok(None)
}
