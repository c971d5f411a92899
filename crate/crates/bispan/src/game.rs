//! Alice flips an edge, Bob repairs the two trees. Alice wins once every color is inverted.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bispanning::{Color, TreePair};
use crate::exchange::PairView;
use crate::graph::{bit, bits, EdgeSet, MultiGraph};
use crate::ordering::{path_to_inverse, MAX_UECBO_HALF_EDGES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("starting coloring is not a pair of disjoint spanning trees")]
    NotBispanning,
    #[error("move not allowed in phase {0:?}")]
    WrongPhase(Phase),
    #[error("no edge {0}")]
    UnknownEdge(usize),
    #[error("edge {0} does not repair both trees")]
    IllegalFix(usize),
    #[error("nothing to undo")]
    EmptyHistory,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Phase {
    AliceTurn,
    BobMustFix,
    Won,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Policy {
    /// Pick the repair that restores the most initial colors.
    #[default]
    Adversarial,
    Random {
        seed: u64,
    },
    Manual,
}

/// Alice's flip awaiting Bob's repair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pending {
    pub edge: usize,
    /// Cycle closed by the flipped edge in its new color.
    pub cycle: EdgeSet,
    /// Cut left behind in its old color.
    pub cut: EdgeSet,
    pub candidates: EdgeSet,
}

impl Pending {
    pub fn forced(&self) -> bool {
        self.candidates.count_ones() == 1
    }
}

#[derive(Clone, Debug)]
pub struct GameState {
    pub graph: Arc<MultiGraph>,
    pub initial: TreePair,
    /// Last valid pair; Alice's pending flip is not applied here.
    pub pair: TreePair,
    pub phase: Phase,
    pub pending: Option<Pending>,
    pub history: Vec<(usize, usize)>,
    pub policy: Policy,
}

pub fn new_game(g: &MultiGraph, tp: TreePair, policy: Policy) -> Result<GameState, GameError> {
    if !tp.is_valid(g) {
        return Err(GameError::NotBispanning);
    }
    Ok(GameState {
        graph: Arc::new(g.clone()),
        initial: tp,
        pair: tp,
        phase: if g.m() == 0 { Phase::Won } else { Phase::AliceTurn },
        pending: None,
        history: Vec::new(),
        policy,
    })
}

impl GameState {
    pub fn target(&self) -> TreePair {
        self.initial.swapped()
    }

    pub fn moves(&self) -> usize {
        self.history.len()
    }

    /// Edges still showing their initial color, not counting a pending flip.
    pub fn target_distance(&self) -> usize {
        (self.pair.s & self.initial.s).count_ones() as usize
    }

    pub fn coloring(&self) -> Vec<Color> {
        let mut c = self.pair.coloring(self.graph.m());
        if let Some(p) = self.pending {
            c[p.edge] = c[p.edge].flipped();
        }
        c
    }

    fn expect(&self, phase: Phase) -> Result<(), GameError> {
        if self.phase == phase {
            Ok(())
        } else {
            Err(GameError::WrongPhase(self.phase))
        }
    }

    pub fn alice_flip(&self, e: usize) -> Result<GameState, GameError> {
        self.expect(Phase::AliceTurn)?;
        if e >= self.graph.m() {
            return Err(GameError::UnknownEdge(e));
        }
        let view = PairView::new(&self.graph, self.pair);
        let cycle = view.cycle(e);
        let cut = view.cut(e);
        let pending = Pending { edge: e, cycle, cut, candidates: cycle & cut & !bit(e) };
        Ok(GameState { phase: Phase::BobMustFix, pending: Some(pending), ..self.clone() })
    }

    pub fn bob_fix(&self, f: usize) -> Result<GameState, GameError> {
        self.expect(Phase::BobMustFix)?;
        let p = self.pending.expect("pending flip in bob phase");
        if f >= self.graph.m() {
            return Err(GameError::UnknownEdge(f));
        }
        if p.candidates & bit(f) == 0 {
            return Err(GameError::IllegalFix(f));
        }
        let flip = bit(p.edge) | bit(f);
        let pair = TreePair { s: self.pair.s ^ flip, t: self.pair.t ^ flip };
        let mut history = self.history.clone();
        history.push((p.edge, f));
        let phase = if pair == self.target() { Phase::Won } else { Phase::AliceTurn };
        Ok(GameState { pair, phase, pending: None, history, ..self.clone() })
    }

    /// Bob's choice under the session policy; manual play falls back to adversarial.
    pub fn bob_choice(&self) -> Result<usize, GameError> {
        self.expect(Phase::BobMustFix)?;
        let p = self.pending.expect("pending flip in bob phase");
        let cands: Vec<usize> = bits(p.candidates).collect();
        if let (Policy::Random { seed }, true) = (self.policy, cands.len() > 1) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (self.history.len() as u64).rotate_left(32));
            return Ok(cands[rng.gen_range(0..cands.len())]);
        }
        let keep = |f: &usize| {
            let s = self.pair.s ^ bit(p.edge) ^ bit(*f);
            let t = self.pair.t ^ bit(p.edge) ^ bit(*f);
            (s & self.initial.s).count_ones() + (t & self.initial.t).count_ones()
        };
        // max_by_key keeps the last maximum, so scan from the highest id down.
        Ok(*cands.iter().rev().max_by_key(|f| keep(f)).expect("at least one candidate"))
    }

    pub fn bob_auto(&self) -> Result<(usize, GameState), GameError> {
        let f = self.bob_choice()?;
        Ok((f, self.bob_fix(f)?))
    }

    /// A forced flip that still allows winning in the remaining number of rounds.
    pub fn hint(&self) -> Option<usize> {
        if self.phase != Phase::AliceTurn || self.graph.m() / 2 > MAX_UECBO_HALF_EDGES {
            return None;
        }
        path_to_inverse(&self.graph, self.initial.s, self.pair)?.first().map(|&(e, _)| e)
    }

    pub fn undo(&self) -> Result<GameState, GameError> {
        if self.pending.is_some() {
            return Ok(GameState { phase: Phase::AliceTurn, pending: None, ..self.clone() });
        }
        let mut history = self.history.clone();
        let (e, f) = history.pop().ok_or(GameError::EmptyHistory)?;
        let flip = bit(e) | bit(f);
        let pair = TreePair { s: self.pair.s ^ flip, t: self.pair.t ^ flip };
        Ok(GameState { pair, phase: Phase::AliceTurn, pending: None, history, ..self.clone() })
    }

    pub fn view(&self) -> GameView {
        let colors = self.coloring();
        GameView {
            n: self.graph.n(),
            edges: self
                .graph
                .edges()
                .iter()
                .enumerate()
                .map(|(id, &(u, v))| EdgeView { id, u, v, color: colors[id] })
                .collect(),
            phase: self.phase,
            pending: self.pending.map(|p| PendingView {
                edge: p.edge,
                cycle: bits(p.cycle).collect(),
                cut: bits(p.cut).collect(),
                candidates: bits(p.candidates).collect(),
                forced: p.forced(),
            }),
            history: self.history.iter().map(|&(a, b)| [a, b]).collect(),
            won: self.phase == Phase::Won,
            target_distance: self.target_distance(),
            policy: self.policy,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeView {
    pub id: usize,
    pub u: usize,
    pub v: usize,
    pub color: Color,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PendingView {
    pub edge: usize,
    pub cycle: Vec<usize>,
    pub cut: Vec<usize>,
    pub candidates: Vec<usize>,
    pub forced: bool,
}

/// Wire form of a game.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameView {
    pub n: usize,
    pub edges: Vec<EdgeView>,
    pub phase: Phase,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pending: Option<PendingView>,
    pub history: Vec<[usize; 2]>,
    pub won: bool,
    pub target_distance: usize,
    pub policy: Policy,
}
