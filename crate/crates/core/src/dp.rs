//! Dynamic programs over a nice tree decomposition that find a minimum-cost
//! d-cycle homologous to a given one.
//!
//! Each node `t` keeps a sparse table keyed by a bitmask over the node's
//! *scope*: for every feasible pair `(Q, P)` (the (d+1)-chain and the cycle
//! restricted to the scope) it stores the cheapest cost of the cycle on the
//! simplices already forgotten below `t`. Absent keys are infeasible.
//!
//! * The connectivity-graph program works on a decomposition of the connectivity graph
//!   `Con_{d+1}(K)`; its scope is the bag plus every d-face of the bag.
//! * The Hasse-level program works on a decomposition of the Hasse level
//!   `Hasse_{d+1}(K)`; its scope is the bag itself.
//!
//! Both share the leaf and join rules. Nodes are processed iteratively in
//! post-order; ties between equal costs keep the smaller child key so the
//! witness is deterministic.

use std::time::{Duration, Instant};

use rustc_hash::FxHashMap;

use crate::complex::{Chain, Level, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graphs::{connectivity_graph, hasse_level, DerivedGraph, GraphKind};
use crate::treewidth::{best_td, make_nice, NiceKind, NiceTreeDecomposition};

pub type Mask = u128;

/// Widest scope a table key can hold.
pub const MAX_SCOPE: usize = 127;

/// Per-node entry cap used by the CLI and bench runner when none is given;
/// a table this size takes a few hundred MB.
pub const DEFAULT_MAX_ENTRIES: usize = 1 << 22;

/// With a per-node cap `c`, all tables together may hold `16 c` entries.
pub const RETAINED_PER_CAP: usize = 16;

/// A scope element: an index into [`Level::upper`] ((d+1)-simplices, the
/// chain `W`) or [`Level::lower`] (d-simplices, the cycle `U`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Item {
    Upper(u32),
    Lower(u32),
}

/// Child keys an entry was derived from; `(0, 0)` at leaves.
pub type Back = (Mask, Mask);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Entry {
    pub cost: f64,
    pub back: Back,
}

/// One node's table. Bit `i` of a key refers to `scope[i]`.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub scope: Vec<Item>,
    pub entries: FxHashMap<Mask, Entry>,
}

impl Table {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn position(&self, item: Item) -> Option<usize> {
        self.scope.binary_search(&item).ok()
    }

    /// Key for the given members of the scope.
    pub fn key_of(&self, members: &[Item]) -> Mask {
        members
            .iter()
            .map(|it| 1u128 << self.position(*it).expect("item in scope"))
            .fold(0, |a, b| a | b)
    }

    pub fn cost(&self, members: &[Item]) -> Option<f64> {
        self.entries.get(&self.key_of(members)).map(|e| e.cost)
    }

    fn offer(&mut self, key: Mask, cost: f64, back: Back) {
        use std::collections::hash_map::Entry as Slot;
        match self.entries.entry(key) {
            Slot::Vacant(v) => {
                v.insert(Entry { cost, back });
            }
            Slot::Occupied(mut o) => {
                let e = o.get_mut();
                if cost < e.cost || (cost == e.cost && back < e.back) {
                    *e = Entry { cost, back };
                }
            }
        }
    }

    fn with_scope(scope: Vec<Item>) -> Result<Table> {
        if scope.len() > MAX_SCOPE {
            return Err(Error::ScopeTooLarge(scope.len()));
        }
        Ok(Table { scope, entries: FxHashMap::default() })
    }

    fn mask_where(&self, pred: impl Fn(Item) -> bool) -> Mask {
        self.scope
            .iter()
            .enumerate()
            .filter(|(_, it)| pred(**it))
            .fold(0, |m, (i, _)| m | (1u128 << i))
    }

    /// For each scope position, its position in `other` (or `None`).
    fn positions_in(&self, other: &[Item]) -> Vec<Option<u8>> {
        self.scope
            .iter()
            .map(|it| other.binary_search(it).ok().map(|p| p as u8))
            .collect()
    }
}

/// Resource limits checked between (and inside) node computations.
#[derive(Clone, Copy, Debug, Default)]
pub struct Limits {
    pub deadline: Option<Instant>,
    /// Largest number of entries any single table may hold.
    pub max_entries: Option<usize>,
    /// Bound on entries summed over all tables, whose backpointers are kept
    /// until the witness is rebuilt.
    pub max_retained: Option<usize>,
}

impl Limits {
    pub fn none() -> Self {
        Limits::default()
    }

    pub fn new(time_limit: Option<Duration>, max_entries: Option<usize>) -> Self {
        Limits {
            deadline: time_limit.map(|d| Instant::now() + d),
            max_entries,
            max_retained: max_entries.map(|c| c.saturating_mul(RETAINED_PER_CAP)),
        }
    }

    fn check_retained(&self, total: usize) -> Result<()> {
        match self.max_retained {
            Some(cap) if total > cap => Err(Error::MemoryCap(cap)),
            _ => Ok(()),
        }
    }

    fn check(&self, table: &Table) -> Result<()> {
        if let Some(cap) = self.max_entries {
            if table.len() > cap {
                return Err(Error::MemoryCap(cap));
            }
        }
        self.check_time()
    }

    fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::Timeout),
            _ => Ok(()),
        }
    }
}

fn low_bits(p: usize) -> Mask {
    if p >= 128 {
        Mask::MAX
    } else {
        (1u128 << p) - 1
    }
}

fn insert_bit(m: Mask, p: usize, bit: bool) -> Mask {
    let high = (m >> p).checked_shl(p as u32 + 1).unwrap_or(0);
    high | (m & low_bits(p)) | ((bit as Mask) << p)
}

fn remove_bit(m: Mask, p: usize) -> Mask {
    ((m >> (p + 1)).checked_shl(p as u32).unwrap_or(0)) | (m & low_bits(p))
}

fn remap(mut m: Mask, to: &[Option<u8>]) -> Mask {
    let mut out = 0;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        if let Some(p) = to[i] {
            out |= 1u128 << p;
        }
    }
    out
}

fn sorted_insert(scope: &[Item], item: Item) -> (Vec<Item>, usize) {
    let mut out = scope.to_vec();
    let p = out.binary_search(&item).expect_err("introduced item already in scope");
    out.insert(p, item);
    (out, p)
}

/// Leaf rule: only the empty restriction, at cost zero.
pub fn leaf_table() -> Table {
    let mut t = Table::default();
    t.entries.insert(0, Entry { cost: 0.0, back: (0, 0) });
    t
}

/// Connectivity-graph introduce of the (d+1)-simplex `sigma`. The d-faces
/// of `sigma` new to the scope (`N_t`) can only be touched by `sigma`, so
/// their cycle bits are forced to `V`, or `V + ∂sigma` when `sigma` is in `Q`.
pub fn conn_introduce(child: &Table, sigma: u32, level: &Level, v: &[bool], limits: &Limits) -> Result<Table> {
    let mut scope = child.scope.clone();
    scope.push(Item::Upper(sigma));
    let fresh: Vec<u32> = level.boundary[sigma as usize]
        .iter()
        .copied()
        .filter(|&l| child.scope.binary_search(&Item::Lower(l)).is_err())
        .collect();
    scope.extend(fresh.iter().map(|&l| Item::Lower(l)));
    scope.sort_unstable();
    let mut out = Table::with_scope(scope)?;
    let to = child.positions_in(&out.scope);
    let forced_v = out.mask_where(|it| matches!(it, Item::Lower(l) if fresh.contains(&l) && v[l as usize]));
    let faces = out.mask_where(|it| matches!(it, Item::Lower(l) if level.boundary[sigma as usize].contains(&l)));
    let sigma_bit = out.key_of(&[Item::Upper(sigma)]);
    for (&m, e) in &child.entries {
        let base = remap(m, &to) | forced_v;
        out.offer(base, e.cost, (m, 0));
        out.offer((base ^ faces) | sigma_bit, e.cost, (m, 0));
    }
    limits.check(&out)?;
    Ok(out)
}

/// Connectivity-graph forget of `sigma`. Faces of `sigma` that leave the
/// scope (`O_t`) are now fully determined and their weight is paid.
pub fn conn_forget(child: &Table, sigma: u32, level: &Level, limits: &Limits) -> Result<Table> {
    let old: Vec<u32> = level.boundary[sigma as usize]
        .iter()
        .copied()
        .filter(|&l| {
            !level.cofaces[l as usize]
                .iter()
                .any(|&u| u != sigma && child.scope.binary_search(&Item::Upper(u)).is_ok())
        })
        .collect();
    let scope: Vec<Item> = child
        .scope
        .iter()
        .copied()
        .filter(|it| match *it {
            Item::Upper(u) => u != sigma,
            Item::Lower(l) => !old.contains(&l),
        })
        .collect();
    let mut out = Table::with_scope(scope)?;
    let to = child.positions_in(&out.scope);
    let mut paid: Vec<(Mask, f64)> = old
        .iter()
        .map(|&l| (1u128 << child.position(Item::Lower(l)).expect("face in scope"), level.lower_weight[l as usize]))
        .collect();
    paid.sort_by_key(|(bit, _)| *bit);
    for (&m, e) in &child.entries {
        let mut cost = e.cost;
        for &(bit, w) in &paid {
            if m & bit != 0 {
                cost += w;
            }
        }
        out.offer(remap(m, &to), cost, (m, 0));
    }
    limits.check(&out)?;
    Ok(out)
}

/// Hasse-level introduce of a (d+1)-simplex or a d-simplex.
pub fn hasse_introduce(child: &Table, item: Item, level: &Level, v: &[bool], limits: &Limits) -> Result<Table> {
    let (scope, p) = sorted_insert(&child.scope, item);
    let mut out = Table::with_scope(scope)?;
    match item {
        Item::Upper(sigma) => {
            let faces = out.mask_where(|it| matches!(it, Item::Lower(l) if level.boundary[sigma as usize].contains(&l)));
            for (&m, e) in &child.entries {
                out.offer(insert_bit(m, p, false), e.cost, (m, 0));
                out.offer(insert_bit(m, p, true) ^ faces, e.cost, (m, 0));
            }
        }
        Item::Lower(rho) => {
            // Every coface of rho already processed is still in the bag, so
            // its cycle bit is V(rho) plus the parity of those in Q.
            let cofaces = child.mask_where(|it| matches!(it, Item::Upper(u) if level.cofaces[rho as usize].contains(&u)));
            for (&m, e) in &child.entries {
                let bit = v[rho as usize] ^ ((m & cofaces).count_ones() & 1 == 1);
                out.offer(insert_bit(m, p, bit), e.cost, (m, 0));
            }
        }
    }
    limits.check(&out)?;
    Ok(out)
}

/// Hasse-level forget; forgetting a d-simplex in `P` pays its weight.
pub fn hasse_forget(child: &Table, item: Item, level: &Level, limits: &Limits) -> Result<Table> {
    let p = child.position(item).expect("forgotten item in scope");
    let mut scope = child.scope.clone();
    scope.remove(p);
    let mut out = Table::with_scope(scope)?;
    let weight = match item {
        Item::Lower(l) => level.lower_weight[l as usize],
        Item::Upper(_) => 0.0,
    };
    for (&m, e) in &child.entries {
        let cost = if m & (1u128 << p) != 0 { e.cost + weight } else { e.cost };
        out.offer(remove_bit(m, p), cost, (m, 0));
    }
    limits.check(&out)?;
    Ok(out)
}

/// Join rule shared by both algorithms: children agree on `Q`, and the
/// cycle on the scope is `P_s + P_s' + ∂Q + V` restricted to the scope.
fn join_tables(left: &Table, right: &Table, level: &Level, v: &[bool], limits: &Limits) -> Result<Table> {
    if left.scope != right.scope {
        return Err(Error::InvalidDecomposition("join children have different scopes".into()));
    }
    let mut out = Table::with_scope(left.scope.clone())?;
    let q_mask = out.mask_where(|it| matches!(it, Item::Upper(_)));
    let p_mask = !q_mask & low_bits(out.scope.len());
    let v_mask = out.mask_where(|it| matches!(it, Item::Lower(l) if v[l as usize]));
    let face_masks: Vec<Mask> = out
        .scope
        .iter()
        .map(|it| match *it {
            Item::Upper(u) => out.mask_where(|x| matches!(x, Item::Lower(l) if level.boundary[u as usize].contains(&l))),
            Item::Lower(_) => 0,
        })
        .collect();
    let offset = |q: Mask| {
        let mut c = v_mask;
        let mut rest = q;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            c ^= face_masks[i];
        }
        c
    };
    let mut by_q: FxHashMap<Mask, Vec<(Mask, f64)>> = FxHashMap::default();
    for (&m, e) in &right.entries {
        by_q.entry(m & q_mask).or_default().push((m, e.cost));
    }
    let mut offsets: FxHashMap<Mask, Mask> = FxHashMap::default();
    for (n, (&ml, el)) in left.entries.iter().enumerate() {
        let q = ml & q_mask;
        let Some(group) = by_q.get(&q) else { continue };
        let c = *offsets.entry(q).or_insert_with(|| offset(q));
        for &(mr, cr) in group {
            let key = q | ((ml ^ mr ^ c) & p_mask);
            out.offer(key, el.cost + cr, (ml, mr));
        }
        if n % 1024 == 1023 {
            limits.check(&out)?;
        }
    }
    limits.check(&out)?;
    Ok(out)
}

pub fn conn_join(left: &Table, right: &Table, level: &Level, v: &[bool], limits: &Limits) -> Result<Table> {
    join_tables(left, right, level, v, limits)
}

pub fn hasse_join(left: &Table, right: &Table, level: &Level, v: &[bool], limits: &Limits) -> Result<Table> {
    join_tables(left, right, level, v, limits)
}

/// Adds the weight of cycle simplices with no (d+1)-coface, which never
/// enter a connectivity-graph bag.
pub fn finalize_unprocessed(level: &Level, v: &[bool], root: &Table) -> Result<f64> {
    let base = root.entries.get(&0).ok_or(Error::Infeasible)?.cost;
    Ok(base
        + (0..level.lower.len())
            .filter(|&l| v[l] && level.cofaces[l].is_empty())
            .fold(0.0, |acc, l| acc + level.lower_weight[l]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    /// Connectivity-graph program.
    Conn,
    /// Hasse-level program.
    Hasse,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    /// Weight of `cycle`, summed in canonical order.
    pub cost: f64,
    /// The optimal cycle `U = V + ∂W`.
    pub cycle: Chain,
    /// The (d+1)-chain `W`.
    pub chain: Chain,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SolveStats {
    /// Optimum as accumulated by the table recurrences.
    pub table_cost: f64,
    pub peak_entries: usize,
    pub total_entries: usize,
    pub nodes: usize,
    pub width: isize,
}

/// Marks a forget node's backpointer when the forgotten item is a
/// (d+1)-simplex that the chosen child entry puts in `W`.
const IN_W: u32 = 1 << 31;

/// Backpointers retained for witness reconstruction, as indices into the
/// children's sorted keys. Keys are dropped once the parent is frozen.
struct Frozen {
    keys: Option<Vec<Mask>>,
    backs: Vec<[u32; 2]>,
}

fn index_in(keys: &[Mask], key: Mask) -> u32 {
    keys.binary_search(&key).expect("backpointer target exists") as u32
}

fn freeze(table: Table, children: &[usize], w_bit: Option<usize>, frozen: &mut [Option<Frozen>]) -> Frozen {
    let mut entries: Vec<(Mask, Back)> = table.entries.into_iter().map(|(k, e)| (k, e.back)).collect();
    entries.sort_unstable_by_key(|(k, _)| *k);
    let backs = entries
        .iter()
        .map(|&(_, (a, b))| {
            let mut out = [0u32; 2];
            for (slot, (&c, key)) in children.iter().zip([a, b]).enumerate() {
                let keys = frozen[c].as_ref().and_then(|f| f.keys.as_deref()).expect("child frozen");
                out[slot] = index_in(keys, key);
            }
            if w_bit.is_some_and(|p| a & (1u128 << p) != 0) {
                out[0] |= IN_W;
            }
            out
        })
        .collect();
    for &c in children {
        frozen[c].as_mut().expect("child frozen").keys = None;
    }
    Frozen { keys: Some(entries.into_iter().map(|(k, _)| k).collect()), backs }
}

struct Problem<'a> {
    level: Level,
    v: Vec<bool>,
    items: Vec<Item>,
    ntd: &'a NiceTreeDecomposition,
    algorithm: Algorithm,
}

impl<'a> Problem<'a> {
    fn new(
        k: &SimplicialComplex,
        v: &Chain,
        graph: &DerivedGraph,
        ntd: &'a NiceTreeDecomposition,
        algorithm: Algorithm,
    ) -> Result<Self> {
        let d = v.dim();
        let expected = match algorithm {
            Algorithm::Conn => GraphKind::Connectivity(d + 1),
            Algorithm::Hasse => GraphKind::HasseLevel(d + 1),
        };
        if graph.kind != expected {
            return Err(Error::GraphMismatch(format!("{algorithm:?} needs {expected:?}, got {:?}", graph.kind)));
        }
        if !v.is_cycle() {
            return Err(Error::NotACycle);
        }
        let level = Level::new(k, d);
        let v_bits = level.lower_indicator(v)?;
        let expected_vertices = match algorithm {
            Algorithm::Conn => level.upper.len(),
            Algorithm::Hasse => level.upper.len() + level.lower.len(),
        };
        if graph.vertex_count() != expected_vertices {
            return Err(Error::GraphMismatch("graph was built from a different complex".into()));
        }
        let items = graph
            .vertices()
            .iter()
            .map(|s| {
                if s.dim() == d + 1 {
                    level.upper_index(s).map(|i| Item::Upper(i as u32))
                } else {
                    level.lower_index(s).map(|i| Item::Lower(i as u32))
                }
                .ok_or_else(|| Error::GraphMismatch(format!("{s} not in complex")))
            })
            .collect::<Result<_>>()?;
        ntd.validate(graph)?;
        Ok(Problem { level, v: v_bits, items, ntd, algorithm })
    }

    fn node_table(&self, t: usize, tables: &[Option<Table>], limits: &Limits) -> Result<Table> {
        let node = &self.ntd.nodes[t];
        let child = |i: usize| tables[node.children[i]].as_ref().expect("child computed");
        let (level, v) = (&self.level, self.v.as_slice());
        match (node.kind, self.algorithm) {
            (NiceKind::Leaf, _) => Ok(leaf_table()),
            (NiceKind::Join, _) => join_tables(child(0), child(1), level, v, limits),
            (NiceKind::Introduce(x), Algorithm::Hasse) => hasse_introduce(child(0), self.items[x], level, v, limits),
            (NiceKind::Forget(x), Algorithm::Hasse) => hasse_forget(child(0), self.items[x], level, limits),
            (NiceKind::Introduce(x), Algorithm::Conn) => match self.items[x] {
                Item::Upper(s) => conn_introduce(child(0), s, level, v, limits),
                Item::Lower(_) => unreachable!("connectivity graph holds only (d+1)-simplices"),
            },
            (NiceKind::Forget(x), Algorithm::Conn) => match self.items[x] {
                Item::Upper(s) => conn_forget(child(0), s, level, limits),
                Item::Lower(_) => unreachable!("connectivity graph holds only (d+1)-simplices"),
            },
        }
    }

    fn run(&self, limits: &Limits) -> Result<(Solution, SolveStats)> {
        let n = self.ntd.nodes.len();
        let mut tables: Vec<Option<Table>> = (0..n).map(|_| None).collect();
        let mut frozen: Vec<Option<Frozen>> = (0..n).map(|_| None).collect();
        // Child-scope position of the (d+1)-simplex a forget node drops.
        let mut w_bit: Vec<Option<usize>> = vec![None; n];
        let mut stats = SolveStats { nodes: n, width: self.ntd.width(), ..Default::default() };
        for t in self.ntd.post_order() {
            limits.check_time()?;
            let table = self.node_table(t, &tables, limits)?;
            stats.peak_entries = stats.peak_entries.max(table.len());
            stats.total_entries += table.len();
            limits.check_retained(stats.total_entries)?;
            let node = &self.ntd.nodes[t];
            if let NiceKind::Forget(x) = node.kind {
                if let Item::Upper(_) = self.items[x] {
                    w_bit[t] = tables[node.children[0]].as_ref().and_then(|c| c.position(self.items[x]));
                }
            }
            for &c in &node.children {
                let done = tables[c].take().expect("child computed");
                frozen[c] = Some(freeze(done, &self.ntd.nodes[c].children, w_bit[c], &mut frozen));
            }
            tables[t] = Some(table);
        }
        let root = self.ntd.root;
        let root_table = tables[root].take().expect("root computed");
        let root_cost = match self.algorithm {
            Algorithm::Conn => finalize_unprocessed(&self.level, &self.v, &root_table)?,
            Algorithm::Hasse => root_table.entries.get(&0).ok_or(Error::Infeasible)?.cost,
        };
        stats.table_cost = root_cost;
        frozen[root] = Some(freeze(root_table, &self.ntd.nodes[root].children, w_bit[root], &mut frozen));

        let mut w = Vec::new();
        let root_keys = frozen[root].as_ref().and_then(|f| f.keys.as_deref()).expect("root frozen");
        let mut stack = vec![(root, index_in(root_keys, 0))];
        while let Some((t, idx)) = stack.pop() {
            let back = frozen[t].as_ref().expect("node frozen").backs[idx as usize];
            let node = &self.ntd.nodes[t];
            if back[0] & IN_W != 0 {
                if let NiceKind::Forget(x) = node.kind {
                    if let Item::Upper(u) = self.items[x] {
                        w.push(u as usize);
                    }
                }
            }
            for (slot, &c) in node.children.iter().enumerate() {
                stack.push((c, back[slot] & !IN_W));
            }
        }
        w.sort_unstable();
        w.dedup();
        let u_bits = self.level.add_boundary(&self.v, w.iter().copied());
        let cycle = self.level.lower_chain(&u_bits);
        let chain = self.level.upper_chain(w);
        let cost = u_bits
            .iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .fold(0.0, |acc, (i, _)| acc + self.level.lower_weight[i]);
        Ok((Solution { cost, cycle, chain }, stats))
    }

    fn all_tables(&self) -> Result<Vec<Table>> {
        let n = self.ntd.nodes.len();
        let mut tables: Vec<Option<Table>> = (0..n).map(|_| None).collect();
        for t in self.ntd.post_order() {
            tables[t] = Some(self.node_table(t, &tables, &Limits::none())?);
        }
        Ok(tables.into_iter().map(|t| t.expect("every node reached")).collect())
    }
}

/// Connectivity-graph program: `ntd` must be a nice decomposition of `Con_{d+1}(K)`, with
/// `graph` that connectivity graph and `d = v.dim()`.
pub fn solve_conn(
    k: &SimplicialComplex,
    v: &Chain,
    graph: &DerivedGraph,
    ntd: &NiceTreeDecomposition,
    limits: &Limits,
) -> Result<(Solution, SolveStats)> {
    Problem::new(k, v, graph, ntd, Algorithm::Conn)?.run(limits)
}

/// Hasse-level program: `ntd` must be a nice decomposition of `Hasse_{d+1}(K)`.
pub fn solve_hasse(
    k: &SimplicialComplex,
    v: &Chain,
    graph: &DerivedGraph,
    ntd: &NiceTreeDecomposition,
    limits: &Limits,
) -> Result<(Solution, SolveStats)> {
    Problem::new(k, v, graph, ntd, Algorithm::Hasse)?.run(limits)
}

/// Every node's table with costs, indexed by node. For inspecting small
/// instances; retains all tables in memory.
pub fn trace_tables(
    k: &SimplicialComplex,
    v: &Chain,
    graph: &DerivedGraph,
    ntd: &NiceTreeDecomposition,
    algorithm: Algorithm,
) -> Result<Vec<Table>> {
    Problem::new(k, v, graph, ntd, algorithm)?.all_tables()
}

/// Graph the given algorithm runs on for `d`-cycles.
pub fn derived_graph(k: &SimplicialComplex, d: usize, algorithm: Algorithm) -> DerivedGraph {
    match algorithm {
        Algorithm::Conn => connectivity_graph(k, d + 1),
        Algorithm::Hasse => hasse_level(k, d + 1),
    }
}

/// Solves with the better of the min-degree and min-fill decompositions.
pub fn solve(k: &SimplicialComplex, v: &Chain, algorithm: Algorithm, limits: &Limits) -> Result<(Solution, SolveStats)> {
    let graph = derived_graph(k, v.dim(), algorithm);
    let ntd = make_nice(&best_td(&graph), None)?;
    match algorithm {
        Algorithm::Conn => solve_conn(k, v, &graph, &ntd, limits),
        Algorithm::Hasse => solve_hasse(k, v, &graph, &ntd, limits),
    }
}
