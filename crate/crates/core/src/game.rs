//! Finite two-player games of infinite duration.
//!
//! Parity games are solved by Zielonka's recursion with positional
//! strategies for both players. Muller games are reduced to parity games by
//! composing the arena with the Zielonka-tree monitor of the condition.

use std::collections::HashMap;

use crate::alt::AltMullerAutomaton;
use crate::det::MullerFamily;
use crate::error::{Error, Result};
use crate::expr::TransitionExpr;
use crate::lasso::LassoWord;
use crate::scc;
use crate::ztree::{ZtMonitor, NEUTRAL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    Exists,
    Forall,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Exists => Player::Forall,
            Player::Forall => Player::Exists,
        }
    }
}

impl std::fmt::Display for Player {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Player::Exists => "E",
            Player::Forall => "A",
        })
    }
}

/// Winning condition of an arena.
#[derive(Debug, Clone)]
pub enum Condition {
    /// Max-parity on positions: the existential player wins a play iff the
    /// maximum priority visited infinitely often is even.
    Parity(Vec<u32>),
    /// Muller condition over labels carried by designated relevant
    /// positions. A play's label inf-set must be in the family; plays whose
    /// label inf-set is empty are won by the player given by `accept_empty`.
    Muller {
        /// `relevant[pos]` is the label of `pos`, if any.
        relevant: Vec<Option<usize>>,
        n_labels: usize,
        family: MullerFamily,
        accept_empty: bool,
    },
}

#[derive(Debug, Clone)]
pub struct Arena {
    pub n_positions: usize,
    pub owner: Vec<Player>,
    /// Nonempty successor lists.
    pub edges: Vec<Vec<usize>>,
    pub initial: usize,
    pub condition: Condition,
}

impl Arena {
    pub fn validate(&self) -> Result<()> {
        if self.owner.len() != self.n_positions || self.edges.len() != self.n_positions {
            return Err(Error::Other("arena vectors of inconsistent length".into()));
        }
        if self.initial >= self.n_positions {
            return Err(Error::Other("arena initial out of range".into()));
        }
        for (v, es) in self.edges.iter().enumerate() {
            if es.is_empty() {
                return Err(Error::Other(format!("position {v} has no outgoing edge")));
            }
            if es.iter().any(|&w| w >= self.n_positions) {
                return Err(Error::Other(format!("edge out of range at {v}")));
            }
        }
        match &self.condition {
            Condition::Parity(p) => {
                if p.len() != self.n_positions {
                    return Err(Error::Other("priority vector length mismatch".into()));
                }
            }
            Condition::Muller { relevant, n_labels, family, .. } => {
                if relevant.len() != self.n_positions {
                    return Err(Error::Other("relevant vector length mismatch".into()));
                }
                if relevant.iter().flatten().any(|&l| l >= *n_labels) {
                    return Err(Error::Other("relevant label out of range".into()));
                }
                for s in family.iter() {
                    if s.iter().any(|&l| l >= *n_labels) {
                        return Err(Error::Other("family label out of range".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Owner-swapped, condition-complemented arena: winning regions swap.
    pub fn dual(&self) -> Arena {
        let condition = match &self.condition {
            Condition::Parity(p) => Condition::Parity(p.iter().map(|&x| x + 1).collect()),
            Condition::Muller { relevant, n_labels, family, accept_empty } => Condition::Muller {
                relevant: relevant.clone(),
                n_labels: *n_labels,
                family: family.complement_within(*n_labels),
                accept_empty: !accept_empty,
            },
        };
        Arena {
            n_positions: self.n_positions,
            owner: self.owner.iter().map(|o| o.opponent()).collect(),
            edges: self.edges.clone(),
            initial: self.initial,
            condition,
        }
    }
}

/// Finite-memory strategy. The memory absorbs every position as it is
/// entered: on entering `pos` with memory `m`, the memory becomes
/// `update[(m, pos)]`, and if `pos` belongs to the strategy's player the
/// next position is `choice[(m', pos)]` for the updated `m'`.
#[derive(Debug, Clone)]
pub struct Strategy {
    pub n_memory: usize,
    pub initial_memory: usize,
    pub update: HashMap<(usize, usize), usize>,
    pub choice: HashMap<(usize, usize), usize>,
}

impl Strategy {
    /// Positional strategy (one memory state).
    pub fn positional(choice_per_pos: HashMap<usize, usize>) -> Strategy {
        Strategy {
            n_memory: 1,
            initial_memory: 0,
            update: HashMap::new(),
            choice: choice_per_pos.into_iter().map(|(p, s)| ((0, p), s)).collect(),
        }
    }

    pub fn absorb(&self, mem: usize, pos: usize) -> usize {
        *self.update.get(&(mem, pos)).unwrap_or(&mem)
    }

    pub fn choose(&self, mem: usize, pos: usize) -> Option<usize> {
        self.choice.get(&(mem, pos)).copied()
    }
}

/// Result of solving a parity arena.
#[derive(Debug, Clone)]
pub struct SolvedParity {
    pub winner: Vec<Player>,
    pub exists_strategy: Strategy,
    pub forall_strategy: Strategy,
}

impl SolvedParity {
    pub fn exists_wins_initial_of(&self, arena: &Arena) -> bool {
        self.winner[arena.initial] == Player::Exists
    }
}

/// Zielonka's recursive algorithm; positional strategies for both players.
pub fn solve_parity(arena: &Arena) -> Result<SolvedParity> {
    arena.validate()?;
    let prio = match &arena.condition {
        Condition::Parity(p) => p.clone(),
        _ => return Err(Error::Other("solve_parity needs a parity condition".into())),
    };
    let n = arena.n_positions;
    let mut in_sub = vec![true; n];
    let mut winner = vec![Player::Exists; n];
    let mut strat: [HashMap<usize, usize>; 2] = [HashMap::new(), HashMap::new()];
    zielonka(arena, &prio, &mut in_sub, &mut winner, &mut strat);
    Ok(SolvedParity {
        winner,
        exists_strategy: Strategy::positional(strat[0].clone()),
        forall_strategy: Strategy::positional(strat[1].clone()),
    })
}

fn pidx(p: Player) -> usize {
    match p {
        Player::Exists => 0,
        Player::Forall => 1,
    }
}

/// Attractor of `targets` for `player` within `sub`; records the attractor
/// strategy (for positions strictly pulled in) into `strat`.
fn attractor(
    arena: &Arena,
    sub: &[bool],
    player: Player,
    targets: &[usize],
    strat: &mut HashMap<usize, usize>,
) -> Vec<bool> {
    let n = arena.n_positions;
    let mut attr = vec![false; n];
    let mut out_deg = vec![0usize; n];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        if !sub[v] {
            continue;
        }
        for &w in &arena.edges[v] {
            if sub[w] {
                out_deg[v] += 1;
                preds[w].push(v);
            }
        }
    }
    let mut queue: Vec<usize> = Vec::new();
    for &t in targets {
        if sub[t] && !attr[t] {
            attr[t] = true;
            queue.push(t);
        }
    }
    while let Some(w) = queue.pop() {
        for &v in &preds[w] {
            if attr[v] {
                continue;
            }
            if arena.owner[v] == player {
                attr[v] = true;
                strat.insert(v, w);
                queue.push(v);
            } else {
                out_deg[v] -= 1;
                if out_deg[v] == 0 {
                    attr[v] = true;
                    queue.push(v);
                }
            }
        }
    }
    attr
}

fn zielonka(
    arena: &Arena,
    prio: &[u32],
    sub: &mut Vec<bool>,
    winner: &mut Vec<Player>,
    strat: &mut [HashMap<usize, usize>; 2],
) {
    let live: Vec<usize> = (0..arena.n_positions).filter(|&v| sub[v]).collect();
    if live.is_empty() {
        return;
    }
    let p = live.iter().map(|&v| prio[v]).max().unwrap();
    let we = if p % 2 == 0 { Player::Exists } else { Player::Forall };
    let targets: Vec<usize> = live.iter().copied().filter(|&v| prio[v] == p).collect();
    let mut astrat = HashMap::new();
    let attr = attractor(arena, sub, we, &targets, &mut astrat);
    let mut inner = sub.clone();
    for v in 0..arena.n_positions {
        if attr[v] {
            inner[v] = false;
        }
    }
    let mut inner_winner = winner.clone();
    let mut inner_strat: [HashMap<usize, usize>; 2] = [HashMap::new(), HashMap::new()];
    {
        let mut inner_sub = inner.clone();
        zielonka(arena, prio, &mut inner_sub, &mut inner_winner, &mut inner_strat);
    }
    let opp = we.opponent();
    let opp_region: Vec<usize> = (0..arena.n_positions)
        .filter(|&v| inner[v] && inner_winner[v] == opp)
        .collect();
    if opp_region.is_empty() {
        // `we` wins everywhere in sub
        for &v in &live {
            winner[v] = we;
        }
        let my = &mut strat[pidx(we)];
        for (v, w) in astrat {
            my.insert(v, w);
        }
        for (&v, &w) in &inner_strat[pidx(we)] {
            my.insert(v, w);
        }
        // top-priority positions owned by `we`: any edge staying in sub
        for &t in &targets {
            if arena.owner[t] == we && !my.contains_key(&t) {
                let w = arena.edges[t].iter().copied().find(|&w| sub[w]).unwrap();
                my.insert(t, w);
            }
        }
        // opponent strategy on this region is irrelevant
        for v in 0..arena.n_positions {
            sub[v] = false;
        }
    } else {
        let mut bstrat = HashMap::new();
        let battr = attractor(arena, sub, opp, &opp_region, &mut bstrat);
        // opponent wins battr with: attractor strategy + inner strategy
        for v in 0..arena.n_positions {
            if battr[v] {
                winner[v] = opp;
            }
        }
        let os = &mut strat[pidx(opp)];
        for (v, w) in bstrat {
            os.insert(v, w);
        }
        for (&v, &w) in &inner_strat[pidx(opp)] {
            if battr[v] {
                os.insert(v, w);
            }
        }
        let mut rest = sub.clone();
        for v in 0..arena.n_positions {
            if battr[v] {
                rest[v] = false;
            }
        }
        zielonka(arena, prio, &mut rest, winner, strat);
        for v in 0..arena.n_positions {
            sub[v] = false;
        }
    }
}

/// Product of a Muller arena with the Zielonka-tree monitor of its family.
struct MullerReduction {
    parity: Arena,
    /// product node -> (arena position, memory id)
    back: Vec<(usize, usize)>,
    /// arena position -> product start node (fresh memory)
    start_of: Vec<usize>,
    n_memory: usize,
    monitor: ZtMonitor,
    neutral: u32,
}

fn reduce_muller(arena: &Arena) -> Result<MullerReduction> {
    let (relevant, n_labels, family, accept_empty) = match &arena.condition {
        Condition::Muller { relevant, n_labels, family, accept_empty } => {
            (relevant.clone(), *n_labels, family.clone(), *accept_empty)
        }
        _ => return Err(Error::Other("not a Muller arena".into())),
    };
    let monitor = ZtMonitor::new(n_labels, &family);
    let neutral = if accept_empty { NEUTRAL + 1 } else { NEUTRAL };
    let n_prio = (monitor.max_priority() + 2) as usize;
    let mem_of = |mon: usize, pr: u32| mon * n_prio + pr as usize;
    let n_memory = monitor.n_states() * n_prio;
    // feed a position into the monitor memory
    let feed = |mon: usize, pos: usize| -> (usize, u32) {
        match relevant[pos] {
            Some(label) => monitor.step(mon, label),
            None => (mon, neutral),
        }
    };
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut back: Vec<(usize, usize)> = Vec::new();
    let mut intern = |mon: usize, pr: u32, pos: usize, back: &mut Vec<(usize, usize)>| -> usize {
        let mem = mem_of(mon, pr);
        if let Some(&id) = ids.get(&(pos, mem)) {
            id
        } else {
            let id = back.len();
            ids.insert((pos, mem), id);
            back.push((pos, mem));
            id
        }
    };
    // start nodes: every arena position entered with fresh memory
    let mut start_of = Vec::with_capacity(arena.n_positions);
    for v in 0..arena.n_positions {
        let (m, p) = feed(monitor.initial(), v);
        start_of.push(intern(m, p, v, &mut back));
    }
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut processed = 0;
    while processed < back.len() {
        // edges filled in discovery order
        let (pos, mem) = back[processed];
        let mon = mem / n_prio;
        let mut out = Vec::new();
        for &w in &arena.edges[pos] {
            let (m2, p2) = feed(mon, w);
            out.push(intern(m2, p2, w, &mut back));
        }
        edges.push(out);
        processed += 1;
    }
    let n = back.len();
    let owner: Vec<Player> = back.iter().map(|&(pos, _)| arena.owner[pos]).collect();
    let priority: Vec<u32> = back.iter().map(|&(_, mem)| (mem % n_prio) as u32).collect();
    let parity = Arena {
        n_positions: n,
        owner,
        edges,
        initial: start_of[arena.initial],
        condition: Condition::Parity(priority),
    };
    Ok(MullerReduction { parity, back, start_of, n_memory, monitor, neutral })
}

/// Result of solving a Muller arena.
#[derive(Debug, Clone)]
pub struct SolvedMuller {
    /// Winner per arena position, playing from fresh memory.
    pub winner: Vec<Player>,
    pub exists_strategy: Strategy,
    pub forall_strategy: Strategy,
    initial: usize,
}

impl SolvedMuller {
    pub fn exists_wins_initial(&self) -> bool {
        self.winner[self.initial] == Player::Exists
    }
}

/// Solves a Muller arena via the parity reduction; strategies carry the
/// monitor as memory.
pub fn solve_muller(arena: &Arena) -> Result<SolvedMuller> {
    arena.validate()?;
    let red = reduce_muller(arena)?;
    let solved = solve_parity(&red.parity)?;
    let winner: Vec<Player> = red.start_of.iter().map(|&s| solved.winner[s]).collect();
    let monitor = &red.monitor;
    let n_prio = red.n_memory / monitor.n_states();
    let relevant = match &arena.condition {
        Condition::Muller { relevant, .. } => relevant.clone(),
        _ => unreachable!(),
    };
    let make = |positional: &Strategy| -> Strategy {
        let mut update = HashMap::new();
        let mut choice = HashMap::new();
        for mem in 0..red.n_memory {
            let mon = mem / n_prio;
            for pos in 0..arena.n_positions {
                let (m2, p2) = match relevant[pos] {
                    Some(label) => monitor.step(mon, label),
                    None => (mon, red.neutral),
                };
                let mem2 = m2 * n_prio + p2 as usize;
                update.insert((mem, pos), mem2);
            }
        }
        for (node, &(pos, mem)) in red.back.iter().enumerate() {
            if let Some(target) = positional.choose(0, node) {
                let (tpos, _) = red.back[target];
                choice.insert((mem, pos), tpos);
            }
        }
        Strategy {
            n_memory: red.n_memory,
            initial_memory: monitor.initial() * n_prio + red.neutral as usize,
            update,
            choice,
        }
    };
    Ok(SolvedMuller {
        winner,
        exists_strategy: make(&solved.exists_strategy),
        forall_strategy: make(&solved.forall_strategy),
        initial: arena.initial,
    })
}

/// Exact strategy check: builds the strategy-restricted product graph and
/// verifies that every reachable cycle satisfies (for the existential
/// player) or violates (for the universal player) the condition. `steps`
/// bounds the size of the constructed product.
pub fn check_strategy(
    arena: &Arena,
    strategy: &Strategy,
    player: Player,
    steps: usize,
) -> Result<bool> {
    arena.validate()?;
    // product of arena and strategy memory, restricted by the strategy
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut back: Vec<(usize, usize)> = Vec::new();
    let m0 = strategy.absorb(strategy.initial_memory, arena.initial);
    ids.insert((arena.initial, m0), 0);
    back.push((arena.initial, m0));
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < back.len() {
        let (pos, mem) = back[i];
        let succs: Vec<usize> = if arena.owner[pos] == player {
            let t = strategy
                .choose(mem, pos)
                .ok_or(Error::IllegalStrategyEdge(pos))?;
            if !arena.edges[pos].contains(&t) {
                return Err(Error::IllegalStrategyEdge(pos));
            }
            vec![t]
        } else {
            arena.edges[pos].clone()
        };
        let mut out = Vec::new();
        for w in succs {
            let m2 = strategy.absorb(mem, w);
            let id = *ids.entry((w, m2)).or_insert_with(|| {
                back.push((w, m2));
                back.len() - 1
            });
            out.push(id);
        }
        if back.len() > steps {
            return Err(Error::BudgetExceeded { budget: steps });
        }
        edges.push(out);
        i += 1;
    }
    // annotate with parity: either the arena's own priorities or the
    // Zielonka-tree monitor of the Muller condition
    let (graph_n, graph_edges, prio): (usize, Vec<Vec<usize>>, Vec<u32>) = match &arena.condition {
        Condition::Parity(p) => {
            let prio = back.iter().map(|&(pos, _)| p[pos]).collect();
            (back.len(), edges, prio)
        }
        Condition::Muller { relevant, n_labels, family, accept_empty } => {
            let monitor = ZtMonitor::new(*n_labels, family);
            let neutral = if *accept_empty { NEUTRAL + 1 } else { NEUTRAL };
            let mut ids2: HashMap<(usize, usize, u32), usize> = HashMap::new();
            let mut back2: Vec<(usize, usize, u32)> = Vec::new();
            let feed = |mon: usize, node: usize| -> (usize, u32) {
                let (pos, _) = back[node];
                match relevant[pos] {
                    Some(l) => monitor.step(mon, l),
                    None => (mon, neutral),
                }
            };
            let (m0, p0) = feed(monitor.initial(), 0);
            ids2.insert((0, m0, p0), 0);
            back2.push((0, m0, p0));
            let mut e2: Vec<Vec<usize>> = Vec::new();
            let mut i = 0;
            while i < back2.len() {
                let (node, mon, _) = back2[i];
                let mut out = Vec::new();
                for &w in &edges[node] {
                    let (m2, p2) = feed(mon, w);
                    let id = *ids2.entry((w, m2, p2)).or_insert_with(|| {
                        back2.push((w, m2, p2));
                        back2.len() - 1
                    });
                    out.push(id);
                }
                if back2.len() > steps.saturating_mul(4).max(steps) {
                    return Err(Error::BudgetExceeded { budget: steps });
                }
                e2.push(out);
                i += 1;
            }
            let prio = back2.iter().map(|&(_, _, p)| p).collect();
            (back2.len(), e2, prio)
        }
    };
    // for the existential player no reachable cycle may have odd maximum;
    // for the universal player none may have an even maximum
    let bad_parity = match player {
        Player::Exists => 1,
        Player::Forall => 0,
    };
    let priorities: std::collections::BTreeSet<u32> = prio.iter().copied().collect();
    for &p in priorities.iter().filter(|&&p| p % 2 == bad_parity) {
        // subgraph with priorities <= p
        let allowed: Vec<bool> = prio.iter().map(|&q| q <= p).collect();
        let succ = |v: usize| -> Vec<usize> {
            if !allowed[v] {
                return Vec::new();
            }
            graph_edges[v].iter().copied().filter(|&w| allowed[w]).collect()
        };
        for comp in scc::tarjan_scc(graph_n, &succ) {
            if !comp.iter().any(|&v| allowed[v] && prio[v] == p) {
                continue;
            }
            if comp.iter().all(|&v| allowed[v])
                && (comp.len() > 1 || succ(comp[0]).contains(&comp[0]))
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Index of positions in the acceptance arena of an alternating word
/// automaton on a lasso.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WordPos {
    /// Token at an automaton state before reading position `n`.
    State(usize, usize),
    /// Resolving a sub-expression of `delta(q, w[n])`; the path picks out
    /// the sub-node.
    Expr(usize, usize, Vec<usize>),
}

/// Acceptance arena together with the meaning of each position.
#[derive(Debug, Clone)]
pub struct WordAcceptanceArena {
    pub arena: Arena,
    pub positions: Vec<WordPos>,
}

impl WordAcceptanceArena {
    pub fn find(&self, p: &WordPos) -> Option<usize> {
        self.positions.iter().position(|x| x == p)
    }
}

/// The acceptance game of an alternating Muller word automaton on `u v^ω`,
/// as a finite Muller arena. Disjunctions belong to the existential player,
/// conjunctions to the universal one; the Muller condition is the
/// automaton's family lifted through the state labels.
pub fn acceptance_arena_word(a: &AltMullerAutomaton, w: &LassoWord) -> Result<WordAcceptanceArena> {
    w.check_alphabet(&a.alphabet)?;
    let mut ids: HashMap<WordPos, usize> = HashMap::new();
    let mut back: Vec<WordPos> = Vec::new();
    let mut intern = |p: WordPos, back: &mut Vec<WordPos>| -> usize {
        if let Some(&id) = ids.get(&p) {
            id
        } else {
            let id = back.len();
            ids.insert(p.clone(), id);
            back.push(p);
            id
        }
    };
    let start = intern(WordPos::State(0, a.initial), &mut back);
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut owner: Vec<Player> = Vec::new();
    let mut relevant: Vec<Option<usize>> = Vec::new();
    let mut i = 0;
    while i < back.len() {
        let pos = back[i].clone();
        let (own, rel, succs) = match &pos {
            WordPos::State(n, q) => {
                let e = intern(WordPos::Expr(*n, *q, Vec::new()), &mut back);
                (Player::Exists, Some(*q), vec![e])
            }
            WordPos::Expr(n, q, path) => {
                let mut node = a.expr(*q, w.at(*n));
                for &k in path {
                    node = match node {
                        TransitionExpr::And(cs) | TransitionExpr::Or(cs) => &cs[k],
                        TransitionExpr::Atom(_) => unreachable!(),
                    };
                }
                match node {
                    TransitionExpr::Atom(q2) => {
                        let t = intern(WordPos::State(w.advance(*n), *q2), &mut back);
                        (Player::Exists, None, vec![t])
                    }
                    TransitionExpr::Or(cs) => {
                        let ts = (0..cs.len())
                            .map(|k| {
                                let mut p2 = path.clone();
                                p2.push(k);
                                intern(WordPos::Expr(*n, *q, p2), &mut back)
                            })
                            .collect();
                        (Player::Exists, None, ts)
                    }
                    TransitionExpr::And(cs) => {
                        let ts = (0..cs.len())
                            .map(|k| {
                                let mut p2 = path.clone();
                                p2.push(k);
                                intern(WordPos::Expr(*n, *q, p2), &mut back)
                            })
                            .collect();
                        (Player::Forall, None, ts)
                    }
                }
            }
        };
        owner.push(own);
        relevant.push(rel);
        edges.push(succs);
        i += 1;
    }
    let arena = Arena {
        n_positions: back.len(),
        owner,
        edges,
        initial: start,
        condition: Condition::Muller {
            relevant,
            n_labels: a.n_states,
            family: a.muller.clone(),
            accept_empty: false,
        },
    };
    arena.validate()?;
    Ok(WordAcceptanceArena { arena, positions: back })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::det::StateSet;

    fn parity_arena(
        owner: Vec<Player>,
        edges: Vec<Vec<usize>>,
        prio: Vec<u32>,
        initial: usize,
    ) -> Arena {
        Arena {
            n_positions: owner.len(),
            owner,
            edges,
            initial,
            condition: Condition::Parity(prio),
        }
    }

    #[test]
    fn self_loop_priorities() {
        for owner in [Player::Exists, Player::Forall] {
            let a = parity_arena(vec![owner], vec![vec![0]], vec![2], 0);
            let s = solve_parity(&a).unwrap();
            assert_eq!(s.winner[0], Player::Exists);
            let a = parity_arena(vec![owner], vec![vec![0]], vec![1], 0);
            let s = solve_parity(&a).unwrap();
            assert_eq!(s.winner[0], Player::Forall);
        }
    }

    #[test]
    fn exists_prefers_even_loop() {
        // two positions, priorities (1, 2); exists owns both and may stay at 2
        let a = parity_arena(
            vec![Player::Exists, Player::Exists],
            vec![vec![1], vec![1, 0]],
            vec![1, 2],
            0,
        );
        let s = solve_parity(&a).unwrap();
        assert_eq!(s.winner[0], Player::Exists);
        assert_eq!(s.winner[1], Player::Exists);
        assert!(check_strategy(&a, &s.exists_strategy, Player::Exists, 1 << 16).unwrap());
    }

    /// Brute force for tiny parity arenas: try all positional strategies of
    /// the candidate winner and check every reachable cycle.
    pub fn brute_parity_winner(arena: &Arena, from: usize) -> Player {
        let prio = match &arena.condition {
            Condition::Parity(p) => p.clone(),
            _ => panic!(),
        };
        for cand in [Player::Exists, Player::Forall] {
            let owned: Vec<usize> = (0..arena.n_positions)
                .filter(|&v| arena.owner[v] == cand)
                .collect();
            let mut pick = vec![0usize; owned.len()];
            'outer: loop {
                let mut choice = HashMap::new();
                for (i, &v) in owned.iter().enumerate() {
                    choice.insert(v, arena.edges[v][pick[i]]);
                }
                let strat = Strategy::positional(choice);
                let mut test = arena.clone();
                test.initial = from;
                let mut a2 = test.clone();
                a2.condition = Condition::Parity(prio.clone());
                if check_strategy(&a2, &strat, cand, 1 << 16).unwrap() {
                    return cand;
                }
                // next strategy vector
                for i in 0..owned.len() {
                    pick[i] += 1;
                    if pick[i] < arena.edges[owned[i]].len() {
                        continue 'outer;
                    }
                    pick[i] = 0;
                }
                break;
            }
        }
        // determinacy: someone must win with a positional strategy
        panic!("no positional winner found");
    }

    #[test]
    fn random_parity_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for round in 0..80 {
            let n = rng.gen_range(1..=5usize);
            let owner: Vec<Player> = (0..n)
                .map(|_| if rng.gen_bool(0.5) { Player::Exists } else { Player::Forall })
                .collect();
            let edges: Vec<Vec<usize>> = (0..n)
                .map(|_| {
                    let k = rng.gen_range(1..=2usize);
                    (0..k).map(|_| rng.gen_range(0..n)).collect()
                })
                .collect();
            let prio: Vec<u32> = (0..n).map(|_| rng.gen_range(0..4)).collect();
            let arena = parity_arena(owner, edges, prio, 0);
            let solved = solve_parity(&arena).unwrap();
            for v in 0..n {
                assert_eq!(
                    solved.winner[v],
                    brute_parity_winner(&arena, v),
                    "round {round} position {v} arena {arena:?}"
                );
            }
        }
    }

    #[test]
    fn solver_strategies_pass_checker() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(1..=8usize);
            let owner: Vec<Player> = (0..n)
                .map(|_| if rng.gen_bool(0.5) { Player::Exists } else { Player::Forall })
                .collect();
            let edges: Vec<Vec<usize>> = (0..n)
                .map(|_| {
                    let k = rng.gen_range(1..=3usize);
                    (0..k).map(|_| rng.gen_range(0..n)).collect()
                })
                .collect();
            let prio: Vec<u32> = (0..n).map(|_| rng.gen_range(0..5)).collect();
            let arena = parity_arena(owner, edges, prio, 0);
            let solved = solve_parity(&arena).unwrap();
            for v in 0..n {
                let mut from = arena.clone();
                from.initial = v;
                let (strat, player) = match solved.winner[v] {
                    Player::Exists => (&solved.exists_strategy, Player::Exists),
                    Player::Forall => (&solved.forall_strategy, Player::Forall),
                };
                assert!(
                    check_strategy(&from, strat, player, 1 << 16).unwrap(),
                    "winner strategy fails from {v} in {arena:?}"
                );
            }
        }
    }

    #[test]
    fn muller_self_loop() {
        let fam = MullerFamily::new([[0].into_iter().collect::<StateSet>()]);
        let arena = Arena {
            n_positions: 1,
            owner: vec![Player::Forall],
            edges: vec![vec![0]],
            initial: 0,
            condition: Condition::Muller {
                relevant: vec![Some(0)],
                n_labels: 1,
                family: fam,
                accept_empty: false,
            },
        };
        let s = solve_muller(&arena).unwrap();
        assert!(s.exists_wins_initial());
        let arena2 = Arena {
            condition: Condition::Muller {
                relevant: vec![Some(0)],
                n_labels: 1,
                family: MullerFamily::empty(),
                accept_empty: false,
            },
            ..arena
        };
        let s = solve_muller(&arena2).unwrap();
        assert!(!s.exists_wins_initial());
    }

    #[test]
    fn muller_forces_both_labels() {
        // positions 0 (label a) and 1 (label b); exists owns both and must
        // alternate to realize inf-set {a, b}
        let fam = MullerFamily::new([[0, 1].into_iter().collect::<StateSet>()]);
        let arena = Arena {
            n_positions: 3,
            owner: vec![Player::Exists; 3],
            edges: vec![vec![2], vec![2], vec![0, 1]],
            initial: 2,
            condition: Condition::Muller {
                relevant: vec![Some(0), Some(1), None],
                n_labels: 2,
                family: fam,
                accept_empty: false,
            },
        };
        let s = solve_muller(&arena).unwrap();
        assert!(s.exists_wins_initial());
        assert!(check_strategy(&arena, &s.exists_strategy, Player::Exists, 1 << 16).unwrap());
        // losing strategy: always go to 0
        let mut choice = HashMap::new();
        choice.insert(0, 2);
        choice.insert(1, 2);
        choice.insert(2, 0);
        let bad = Strategy::positional(choice);
        assert!(!check_strategy(&arena, &bad, Player::Exists, 1 << 16).unwrap());
    }

    #[test]
    fn hand_built_two_memory_strategy() {
        // same arena as above; alternate targets with two memory states
        let fam = MullerFamily::new([[0, 1].into_iter().collect::<StateSet>()]);
        let arena = Arena {
            n_positions: 3,
            owner: vec![Player::Exists; 3],
            edges: vec![vec![2], vec![2], vec![0, 1]],
            initial: 2,
            condition: Condition::Muller {
                relevant: vec![Some(0), Some(1), None],
                n_labels: 2,
                family: fam,
                accept_empty: false,
            },
        };
        let mut update = HashMap::new();
        let mut choice = HashMap::new();
        for m in 0..2usize {
            update.insert((m, 0), 1usize);
            update.insert((m, 1), 0);
            update.insert((m, 2), m);
            // memory 0: we last visited 1 (or start); go to 0 next
            choice.insert((m, 2), m);
            choice.insert((m, 0), 2);
            choice.insert((m, 1), 2);
        }
        let s = Strategy { n_memory: 2, initial_memory: 0, update, choice };
        assert!(check_strategy(&arena, &s, Player::Exists, 1 << 16).unwrap());
    }

    #[test]
    fn duality_swaps_winners() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..40 {
            let n = rng.gen_range(1..=6usize);
            let owner: Vec<Player> = (0..n)
                .map(|_| if rng.gen_bool(0.5) { Player::Exists } else { Player::Forall })
                .collect();
            let edges: Vec<Vec<usize>> = (0..n)
                .map(|_| {
                    let k = rng.gen_range(1..=2usize);
                    (0..k).map(|_| rng.gen_range(0..n)).collect()
                })
                .collect();
            let prio: Vec<u32> = (0..n).map(|_| rng.gen_range(0..4)).collect();
            let arena = parity_arena(owner, edges, prio, 0);
            let dual = arena.dual();
            let s = solve_parity(&arena).unwrap();
            let sd = solve_parity(&dual).unwrap();
            for v in 0..n {
                assert_eq!(s.winner[v], sd.winner[v].opponent());
            }
        }
    }

    #[test]
    fn acceptance_arena_deterministic_matches_run() {
        use crate::det::{DetMullerAutomaton, MullerFamily};
        // embed a deterministic automaton as alternating and compare
        let det = DetMullerAutomaton::new(
            Alphabet::binary(),
            0,
            vec![vec![0, 1], vec![0, 1]],
            MullerFamily::new([
                [1].into_iter().collect::<StateSet>(),
                [0, 1].into_iter().collect(),
            ]),
        )
        .unwrap();
        let alt = AltMullerAutomaton::new(
            det.alphabet.clone(),
            det.initial,
            det.delta
                .iter()
                .map(|row| row.iter().map(|&t| TransitionExpr::Atom(t)).collect())
                .collect(),
            det.muller.clone(),
        )
        .unwrap();
        for w in LassoWord::enumerate(2, 5) {
            assert_eq!(
                alt.accepts_lasso(&w).unwrap(),
                det.accepts_lasso(&w).unwrap(),
                "lasso {w:?}"
            );
        }
    }

    #[test]
    fn top_level_or_and_sinks() {
        // state 0: Or(1, 2) on every letter; 1 accepting sink, 2 rejecting sink
        let alphabet = Alphabet::binary();
        let fam = MullerFamily::new([[1].into_iter().collect::<StateSet>()]);
        let or = AltMullerAutomaton::new(
            alphabet.clone(),
            0,
            vec![
                vec![
                    TransitionExpr::or(vec![TransitionExpr::Atom(1), TransitionExpr::Atom(2)]),
                    TransitionExpr::or(vec![TransitionExpr::Atom(1), TransitionExpr::Atom(2)]),
                ],
                vec![TransitionExpr::Atom(1), TransitionExpr::Atom(1)],
                vec![TransitionExpr::Atom(2), TransitionExpr::Atom(2)],
            ],
            fam.clone(),
        )
        .unwrap();
        let w = LassoWord::new(vec![], vec![0]);
        assert!(or.accepts_lasso(&w).unwrap());
        let and = AltMullerAutomaton::new(
            alphabet,
            0,
            vec![
                vec![
                    TransitionExpr::and(vec![TransitionExpr::Atom(1), TransitionExpr::Atom(2)]),
                    TransitionExpr::and(vec![TransitionExpr::Atom(1), TransitionExpr::Atom(2)]),
                ],
                vec![TransitionExpr::Atom(1), TransitionExpr::Atom(1)],
                vec![TransitionExpr::Atom(2), TransitionExpr::Atom(2)],
            ],
            fam,
        )
        .unwrap();
        assert!(!and.accepts_lasso(&w).unwrap());
    }
}
