//! One round of layered tree search.
//!
//! Layer `l` of the tree decides the `l`-th variable of the round's
//! [`RoundContext`] (shape variables first, then sizing variables). Starting
//! from the root, each layer runs its simulation budget and then commits to
//! the child with the largest state value; the committed child's subtree is
//! kept and the search continues from it until a terminal design is reached.

use std::collections::HashMap;

use rand::Rng;

use crate::design_space::{RoundContext, VarRef};
use crate::model::DesignVector;
use crate::optimizer::{RewardFn, RewardMode};

/// Outcome of evaluating a complete design.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    /// kg; infinite when the geometry is degenerate.
    pub weight: f64,
    pub feasible: bool,
    /// Largest constraint ratio; infinite when the analysis failed.
    pub max_ratio: f64,
}

/// Anything that can score a complete design.
pub trait DesignEvaluator {
    fn evaluate(&mut self, design: &DesignVector) -> Evaluation;
}

impl<F: FnMut(&DesignVector) -> Evaluation> DesignEvaluator for F {
    fn evaluate(&mut self, design: &DesignVector) -> Evaluation {
        self(design)
    }
}

pub type NodeId = u32;

pub const ROOT: NodeId = 0;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchNode {
    /// State value (best or mean simulated reward through this node).
    pub value: f64,
    pub visits: u32,
    /// Number of variables fixed at this node.
    pub layer: u16,
    /// Action index chosen at the parent to reach this node.
    pub action: u16,
    /// Expanded children; `children[k]` took action `k`.
    pub children: Vec<NodeId>,
}

/// Arena-allocated search tree over a fixed layer plan.
#[derive(Debug, Clone)]
pub struct SearchTree {
    nodes: Vec<SearchNode>,
    actions: Vec<usize>,
}

/// Upper confidence bound of a child; unvisited children come first.
pub fn ucb(value: f64, visits: u32, parent_visits: u32, c: f64) -> f64 {
    if visits == 0 {
        return f64::INFINITY;
    }
    value + c * ((parent_visits.max(1) as f64).ln() / visits as f64).sqrt()
}

impl SearchTree {
    /// `actions[l]` is the action-space size of layer `l`.
    pub fn new(actions: Vec<usize>) -> Self {
        assert!(actions.iter().all(|&a| a >= 1 && a <= u16::MAX as usize));
        let root = SearchNode { value: 0.0, visits: 0, layer: 0, action: 0, children: Vec::new() };
        Self { nodes: vec![root], actions }
    }

    pub fn depth(&self) -> usize {
        self.actions.len()
    }

    pub fn node(&self, id: NodeId) -> &SearchNode {
        &self.nodes[id as usize]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn is_terminal(&self, id: NodeId) -> bool {
        self.node(id).layer as usize == self.depth()
    }

    fn fully_expanded(&self, id: NodeId) -> bool {
        let n = self.node(id);
        n.children.len() >= self.actions[n.layer as usize]
    }

    /// Descends from `from` by maximal UCB (lowest action index on ties) and
    /// expands the next unexpanded child of the first node that has one.
    /// Returns the path `from → leaf`; the leaf is either new or terminal.
    pub fn select_and_expand(&mut self, from: NodeId, c: f64) -> Vec<NodeId> {
        let mut path = vec![from];
        let mut id = from;
        loop {
            if self.is_terminal(id) {
                return path;
            }
            if !self.fully_expanded(id) {
                let parent = self.node(id);
                let child = SearchNode {
                    value: 0.0,
                    visits: 0,
                    layer: parent.layer + 1,
                    action: parent.children.len() as u16,
                    children: Vec::new(),
                };
                let cid = self.nodes.len() as NodeId;
                self.nodes.push(child);
                self.nodes[id as usize].children.push(cid);
                path.push(cid);
                return path;
            }
            let parent = self.node(id);
            let mut best = parent.children[0];
            let mut best_u = f64::NEG_INFINITY;
            for &ch in &parent.children {
                let n = self.node(ch);
                let u = ucb(n.value, n.visits, parent.visits, c);
                if u > best_u {
                    best_u = u;
                    best = ch;
                }
            }
            path.push(best);
            id = best;
        }
    }

    /// Updates visit counts and state values along `path`.
    pub fn backpropagate(&mut self, path: &[NodeId], g: f64, mode: RewardMode) {
        for &id in path {
            let n = &mut self.nodes[id as usize];
            n.visits += 1;
            n.value = mode.update(n.value, n.visits, g);
        }
    }

    /// Expanded child with the largest state value (lowest action on ties).
    pub fn best_child(&self, id: NodeId) -> Option<NodeId> {
        let mut best: Option<NodeId> = None;
        for &ch in &self.node(id).children {
            if best.map_or(true, |b| self.node(ch).value > self.node(b).value) {
                best = Some(ch);
            }
        }
        best
    }

    /// Actions taken from the root to `id`.
    pub fn actions_to(&self, id: NodeId, parent_of: &HashMap<NodeId, NodeId>) -> Vec<u16> {
        let mut out = Vec::new();
        let mut cur = id;
        while cur != ROOT {
            out.push(self.node(cur).action);
            cur = parent_of[&cur];
        }
        out.reverse();
        out
    }
}

/// Simulation budget for the node at `layer`: `j_mvs · ⌈Σ log10 width⌉` over the
/// variables still undecided at that layer.
pub fn iteration_budget(layer: usize, ctx: &RoundContext, j_mvs: usize) -> usize {
    let exponent: f64 = ctx.layers[layer..].iter().map(|l| (l.width as f64).log10()).sum();
    let rounded = (exponent - 1e-9).ceil().max(1.0);
    j_mvs * rounded as usize
}

/// Search parameters for a round.
#[derive(Debug, Clone, Copy)]
pub struct RoundSettings {
    /// UCB exploration constant.
    pub exploration: f64,
    pub j_mvs: usize,
    pub mode: RewardMode,
    pub reward: RewardFn,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundOutcome {
    /// Terminal design of the policy-improvement path (all variables determined).
    pub design: DesignVector,
    pub evaluation: Evaluation,
    pub reward: f64,
    pub simulations: u64,
    pub evaluations: u64,
    pub tree_nodes: usize,
}

const CACHE_LIMIT: usize = 1 << 18;

/// Mutable state of one round: evaluator, terminal cache and counters.
pub struct RoundSearch<'a, E: DesignEvaluator> {
    ctx: &'a RoundContext,
    base: &'a DesignVector,
    evaluator: &'a mut E,
    settings: RoundSettings,
    cache: HashMap<Vec<u16>, Evaluation>,
    evaluations: u64,
    scratch: DesignVector,
}

impl<'a, E: DesignEvaluator> RoundSearch<'a, E> {
    pub fn new(ctx: &'a RoundContext, base: &'a DesignVector, evaluator: &'a mut E, settings: RoundSettings) -> Self {
        Self {
            ctx,
            base,
            evaluator,
            settings,
            cache: HashMap::new(),
            evaluations: 0,
            scratch: base.clone(),
        }
    }

    /// Design obtained by applying `actions` to the round's starting design.
    pub fn design_for(&self, actions: &[u16]) -> DesignVector {
        let mut d = self.base.clone();
        apply_actions(self.ctx, actions, &mut d);
        d
    }

    /// Evaluates the terminal design reached by `actions` (memoised).
    pub fn evaluate(&mut self, actions: &[u16]) -> Evaluation {
        debug_assert_eq!(actions.len(), self.ctx.layers.len());
        if let Some(e) = self.cache.get(actions) {
            return *e;
        }
        self.scratch.clone_from(self.base);
        apply_actions(self.ctx, actions, &mut self.scratch);
        let e = self.evaluator.evaluate(&self.scratch);
        self.evaluations += 1;
        if self.cache.len() < CACHE_LIMIT {
            self.cache.insert(actions.to_vec(), e);
        }
        e
    }

    /// Completes `prefix` with uniformly random actions and returns the terminal reward.
    pub fn rollout<R: Rng + ?Sized>(&mut self, prefix: &[u16], rng: &mut R) -> f64 {
        let mut actions = prefix.to_vec();
        for layer in &self.ctx.layers[prefix.len()..] {
            actions.push(rng.gen_range(0..layer.candidates.len()) as u16);
        }
        let e = self.evaluate(&actions);
        self.settings.reward.reward(&e)
    }
}

fn apply_actions(ctx: &RoundContext, actions: &[u16], design: &mut DesignVector) {
    for (layer, &a) in ctx.layers.iter().zip(actions) {
        let v = layer.candidates[a as usize];
        match layer.var {
            VarRef::Sizing(i) => {
                design.sizing[i] = v;
                design.sizing_pending[i] = false;
            }
            VarRef::Shape(i) => {
                design.shape[i] = v;
                design.shape_pending[i] = false;
            }
        }
    }
}

/// Runs one round: per layer, spend the iteration budget from the current
/// node, then move to its best child. Returns the terminal design reached.
pub fn run_round<E: DesignEvaluator, R: Rng + ?Sized>(
    ctx: &RoundContext,
    start: &DesignVector,
    evaluator: &mut E,
    settings: RoundSettings,
    rng: &mut R,
) -> RoundOutcome {
    let counts: Vec<usize> = ctx.layers.iter().map(|l| l.candidates.len()).collect();
    let mut tree = SearchTree::new(counts);
    let mut search = RoundSearch::new(ctx, start, evaluator, settings);
    let mut current = ROOT;
    let mut committed: Vec<u16> = Vec::with_capacity(ctx.layers.len());
    let mut simulations = 0u64;
    let mut prefix: Vec<u16> = Vec::with_capacity(ctx.layers.len());

    for layer in 0..ctx.layers.len() {
        let budget = iteration_budget(layer, ctx, settings.j_mvs);
        for _ in 0..budget {
            let path = tree.select_and_expand(current, settings.exploration);
            prefix.clear();
            prefix.extend_from_slice(&committed);
            prefix.extend(path[1..].iter().map(|&id| tree.node(id).action));
            let g = search.rollout(&prefix, rng);
            tree.backpropagate(&path, g, settings.mode);
            simulations += 1;
        }
        let next = tree.best_child(current).expect("budget expands at least one child");
        committed.push(tree.node(next).action);
        current = next;
    }

    let evaluation = search.evaluate(&committed);
    let design = search.design_for(&committed);
    RoundOutcome {
        design,
        evaluation,
        reward: settings.reward.reward(&evaluation),
        simulations,
        evaluations: search.evaluations,
        tree_nodes: tree.len(),
    }
}
