//! Tree decompositions of derived graphs: elimination-ordering heuristics,
//! validation, conversion to nice form, and two constructions that transport
//! a decomposition between graphs (connectivity graph to Hasse level, and
//! a complex to its suspension).

use std::collections::{BTreeSet, VecDeque};

use crate::complex::{Simplex, Vertex};
use crate::error::{Error, Result};
use crate::graphs::{DerivedGraph, GraphKind};

/// Bags of graph-vertex indices on an unrooted tree. Bags are kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { bags, edges }
    }

    /// Largest bag size minus one; -1 when there are no nonempty bags.
    pub fn width(&self) -> isize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0) as isize - 1
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        adj
    }

    /// Checks the bag tree is a tree and every vertex occupies a connected
    /// set of bags. Coverage needs the graph; see [`validate_td`].
    fn structural_violations(&self, out: &mut Vec<Violation>) {
        let n = self.bags.len();
        if n == 0 {
            if !self.edges.is_empty() {
                out.push(Violation::NotATree("edges without bags".into()));
            }
            return;
        }
        if let Some(&(a, b)) = self.edges.iter().find(|(a, b)| *a >= n || *b >= n || a == b) {
            out.push(Violation::NotATree(format!("bad tree edge ({a}, {b})")));
            return;
        }
        if self.edges.len() != n - 1 {
            out.push(Violation::NotATree(format!("{} nodes but {} edges", n, self.edges.len())));
            return;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(t) = stack.pop() {
            for &u in &adj[t] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        if count != n {
            out.push(Violation::NotATree("bag tree is disconnected".into()));
            return;
        }
        // Each vertex: bags holding it minus tree edges inside that set must be 1.
        let mut occurrences: rustc_hash::FxHashMap<usize, usize> = Default::default();
        for bag in &self.bags {
            for &v in bag {
                *occurrences.entry(v).or_default() += 1;
            }
        }
        let mut inner_edges: rustc_hash::FxHashMap<usize, usize> = Default::default();
        for &(a, b) in &self.edges {
            let (x, y) = (&self.bags[a], &self.bags[b]);
            for v in x {
                if y.binary_search(v).is_ok() {
                    *inner_edges.entry(*v).or_default() += 1;
                }
            }
        }
        let mut broken: Vec<usize> = occurrences
            .iter()
            .filter(|(v, &c)| c != inner_edges.get(v).copied().unwrap_or(0) + 1)
            .map(|(v, _)| *v)
            .collect();
        broken.sort_unstable();
        out.extend(broken.into_iter().map(Violation::Disconnected));
    }

    /// Contracts tree edges whose one side's bag is a subset of the other.
    pub fn compressed(&self) -> TreeDecomposition {
        let n = self.bags.len();
        if n <= 1 {
            return self.clone();
        }
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &(a, b) in &self.edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        let mut alive = vec![true; n];
        let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.binary_search(x).is_ok());
        let mut changed = true;
        while changed {
            changed = false;
            for a in 0..n {
                if !alive[a] {
                    continue;
                }
                let target = adj[a].iter().copied().find(|&b| subset(&self.bags[a], &self.bags[b]));
                if let Some(b) = target {
                    let others: Vec<usize> = adj[a].iter().copied().filter(|&x| x != b).collect();
                    for x in others {
                        adj[x].remove(&a);
                        adj[x].insert(b);
                        adj[b].insert(x);
                    }
                    adj[b].remove(&a);
                    adj[a].clear();
                    alive[a] = false;
                    changed = true;
                }
            }
        }
        let mut remap = vec![usize::MAX; n];
        let mut bags = Vec::new();
        for a in 0..n {
            if alive[a] {
                remap[a] = bags.len();
                bags.push(self.bags[a].clone());
            }
        }
        let mut edges = Vec::new();
        for a in 0..n {
            for &b in &adj[a] {
                if alive[a] && a < b {
                    edges.push((remap[a], remap[b]));
                }
            }
        }
        TreeDecomposition { bags, edges }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotATree(String),
    UnknownVertex(usize),
    UncoveredVertex(usize),
    UncoveredEdge(usize, usize),
    /// The bags containing this vertex do not form a subtree.
    Disconnected(usize),
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NotATree(msg) => write!(f, "tree: {msg}"),
            Violation::UnknownVertex(v) => write!(f, "vertex: {v} is not a graph vertex"),
            Violation::UncoveredVertex(v) => write!(f, "vertex coverage: {v} is in no bag"),
            Violation::UncoveredEdge(a, b) => write!(f, "edge coverage: ({a}, {b}) is in no bag"),
            Violation::Disconnected(v) => write!(f, "connectivity: bags holding {v} are not connected"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TdReport {
    pub violations: Vec<Violation>,
}

impl TdReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn into_result(self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidDecomposition(v.to_string())),
        }
    }
}

/// Checks the three tree-decomposition conditions plus that the bags form a tree.
pub fn validate_td(g: &DerivedGraph, td: &TreeDecomposition) -> TdReport {
    let mut violations = Vec::new();
    td.structural_violations(&mut violations);
    let n = g.vertex_count();
    let mut covered = vec![false; n];
    for bag in &td.bags {
        for &v in bag {
            if v >= n {
                violations.push(Violation::UnknownVertex(v));
            } else {
                covered[v] = true;
            }
        }
    }
    violations.extend((0..n).filter(|&v| !covered[v]).map(Violation::UncoveredVertex));
    if covered.iter().all(|&c| c) {
        // Map each vertex to one bag holding it, then check edges by scanning its bags.
        let mut bags_of: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (t, bag) in td.bags.iter().enumerate() {
            for &v in bag {
                if v < n {
                    bags_of[v].push(t);
                }
            }
        }
        for (a, b) in g.edges() {
            let together = bags_of[a].iter().any(|&t| td.bags[t].binary_search(&b).is_ok());
            if !together {
                violations.push(Violation::UncoveredEdge(a, b));
            }
        }
    }
    TdReport { violations }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Heuristic {
    MinDegree,
    MinFill,
}

fn fill_in(adj: &[BTreeSet<usize>], v: usize) -> usize {
    let ns: Vec<usize> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in ns.iter().enumerate() {
        for &b in &ns[i + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

/// Greedy elimination ordering; ties go to the smallest vertex index
/// (canonical simplex order).
pub fn elimination_order(g: &DerivedGraph, heuristic: Heuristic) -> Vec<usize> {
    let n = g.vertex_count();
    let mut adj: Vec<BTreeSet<usize>> =
        (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut score: Vec<usize> = match heuristic {
        Heuristic::MinDegree => (0..n).map(|v| adj[v].len()).collect(),
        Heuristic::MinFill => (0..n).map(|v| fill_in(&adj, v)).collect(),
    };
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (score[v], v))
            .expect("vertex left to eliminate");
        alive[v] = false;
        order.push(v);
        let ns: Vec<usize> = adj[v].iter().copied().collect();
        for &a in &ns {
            adj[a].remove(&v);
        }
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        adj[v].clear();
        match heuristic {
            Heuristic::MinDegree => {
                for &a in &ns {
                    score[a] = adj[a].len();
                }
            }
            Heuristic::MinFill => {
                let mut touched: BTreeSet<usize> = ns.iter().copied().collect();
                for &a in &ns {
                    touched.extend(adj[a].iter().copied());
                }
                for a in touched {
                    score[a] = fill_in(&adj, a);
                }
            }
        }
    }
    order
}

/// Tree decomposition from an elimination ordering: each vertex's bag is the
/// vertex with its later neighbors, hung below the bag of the earliest of
/// those neighbors. Component roots are chained together.
pub fn td_from_order(g: &DerivedGraph, order: &[usize]) -> TreeDecomposition {
    let n = g.vertex_count();
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<BTreeSet<usize>> =
        (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut parent_vertex: Vec<Option<usize>> = Vec::with_capacity(n);
    for &v in order {
        let later: Vec<usize> = adj[v].iter().copied().filter(|&u| pos[u] > pos[v]).collect();
        for (i, &a) in later.iter().enumerate() {
            for &b in &later[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        parent_vertex.push(later.iter().copied().min_by_key(|&u| pos[u]));
        let mut bag = later;
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
    }
    let mut edges = Vec::new();
    let mut last_root: Option<usize> = None;
    for (i, p) in parent_vertex.iter().enumerate() {
        match p {
            Some(u) => edges.push((i, pos[*u])),
            None => {
                if let Some(r) = last_root {
                    edges.push((r, i));
                }
                last_root = Some(i);
            }
        }
    }
    TreeDecomposition { bags, edges }.compressed()
}

pub fn heuristic_td(g: &DerivedGraph, heuristic: Heuristic) -> TreeDecomposition {
    td_from_order(g, &elimination_order(g, heuristic))
}

/// Runs both heuristics and keeps the narrower result; ties keep min-degree.
pub fn best_td(g: &DerivedGraph) -> TreeDecomposition {
    let deg = heuristic_td(g, Heuristic::MinDegree);
    let fill = heuristic_td(g, Heuristic::MinFill);
    if fill.width() < deg.width() {
        fill
    } else {
        deg
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub bag: Vec<usize>,
    pub kind: NiceKind,
    pub children: Vec<usize>,
}

/// Rooted decomposition where every node is a leaf, introduce, forget or
/// binary join node, and leaf and root bags are empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
    pub root: usize,
}

impl NiceTreeDecomposition {
    pub fn width(&self) -> isize {
        self.nodes.iter().map(|n| n.bag.len()).max().unwrap_or(0) as isize - 1
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Children before parents, from a depth-first search at the root.
    pub fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, 0usize)];
        while let Some(&mut (t, ref mut next)) = stack.last_mut() {
            if let Some(&c) = self.nodes[t].children.get(*next) {
                *next += 1;
                stack.push((c, 0));
            } else {
                out.push(t);
                stack.pop();
            }
        }
        out
    }

    /// Node-kind rules only (not graph coverage).
    pub fn check_shape(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidDecomposition(msg));
        if self.nodes.get(self.root).is_none_or(|r| !r.bag.is_empty()) {
            return bad("root bag must be empty".into());
        }
        let order = self.post_order();
        if order.len() != self.nodes.len() {
            return bad("nodes unreachable from the root".into());
        }
        for (t, node) in self.nodes.iter().enumerate() {
            let child_bag = |i: usize| &self.nodes[node.children[i]].bag;
            let ok = match node.kind {
                NiceKind::Leaf => node.children.is_empty() && node.bag.is_empty(),
                NiceKind::Introduce(v) => {
                    node.children.len() == 1 && {
                        let c = child_bag(0);
                        c.binary_search(&v).is_err()
                            && node.bag.len() == c.len() + 1
                            && node.bag.binary_search(&v).is_ok()
                            && c.iter().all(|x| node.bag.binary_search(x).is_ok())
                    }
                }
                NiceKind::Forget(v) => {
                    node.children.len() == 1 && {
                        let c = child_bag(0);
                        node.bag.binary_search(&v).is_err()
                            && c.len() == node.bag.len() + 1
                            && c.binary_search(&v).is_ok()
                            && node.bag.iter().all(|x| c.binary_search(x).is_ok())
                    }
                }
                NiceKind::Join => {
                    node.children.len() == 2 && child_bag(0) == &node.bag && child_bag(1) == &node.bag
                }
            };
            if !ok {
                return bad(format!("node {t} violates the {:?} rule", node.kind));
            }
        }
        Ok(())
    }

    pub fn to_td(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|n| n.bag.clone()).collect();
        let edges = self
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(t, n)| n.children.iter().map(move |&c| (t, c)))
            .collect();
        TreeDecomposition { bags, edges }
    }

    /// Shape rules plus validity as a decomposition of `g`.
    pub fn validate(&self, g: &DerivedGraph) -> Result<()> {
        self.check_shape()?;
        validate_td(g, &self.to_td()).into_result()
    }
}

struct NiceBuilder {
    nodes: Vec<NiceNode>,
}

impl NiceBuilder {
    fn push(&mut self, bag: Vec<usize>, kind: NiceKind, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { bag, kind, children });
        self.nodes.len() - 1
    }

    /// Forgets what `target` lacks, then introduces what it adds, one
    /// vertex at a time in ascending order.
    fn morph(&mut self, mut top: usize, target: &[usize]) -> usize {
        let current = self.nodes[top].bag.clone();
        let mut bag = current.clone();
        for &v in current.iter().filter(|v| target.binary_search(v).is_err()) {
            bag.retain(|&x| x != v);
            top = self.push(bag.clone(), NiceKind::Forget(v), vec![top]);
        }
        for &v in target.iter().filter(|v| current.binary_search(v).is_err()) {
            let at = bag.binary_search(&v).unwrap_err();
            bag.insert(at, v);
            top = self.push(bag.clone(), NiceKind::Introduce(v), vec![top]);
        }
        top
    }
}

/// Converts a valid decomposition into nice form rooted at bag `root`
/// (default: bag 0). Width is preserved exactly.
pub fn make_nice(td: &TreeDecomposition, root: Option<usize>) -> Result<NiceTreeDecomposition> {
    let mut violations = Vec::new();
    td.structural_violations(&mut violations);
    TdReport { violations }.into_result()?;
    let mut b = NiceBuilder { nodes: Vec::new() };
    if td.bags.is_empty() {
        let leaf = b.push(Vec::new(), NiceKind::Leaf, Vec::new());
        return Ok(NiceTreeDecomposition { nodes: b.nodes, root: leaf });
    }
    let root = root.unwrap_or(0);
    if root >= td.bags.len() {
        return Err(Error::InvalidDecomposition(format!("root {root} out of range")));
    }
    let adj = td.adjacency();
    let n = td.bags.len();
    // BFS order from the root gives parents; reverse it for bottom-up work.
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([root]);
    parent[root] = root;
    while let Some(t) = queue.pop_front() {
        order.push(t);
        for &u in &adj[t] {
            if parent[u] == usize::MAX {
                parent[u] = t;
                queue.push_back(u);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &t in order.iter().rev() {
        if t != root {
            size[parent[t]] += size[t];
        }
    }
    let mut top = vec![usize::MAX; n];
    for &t in order.iter().rev() {
        let mut children: Vec<usize> = adj[t].iter().copied().filter(|&u| u != parent[t]).collect();
        children.sort_by_key(|&c| (std::cmp::Reverse(size[c]), c));
        let target = &td.bags[t];
        let mut parts: Vec<usize> = children.iter().map(|&c| b.morph(top[c], target)).collect();
        if parts.is_empty() {
            let leaf = b.push(Vec::new(), NiceKind::Leaf, Vec::new());
            parts.push(b.morph(leaf, target));
        }
        let mut acc = parts[0];
        for &p in &parts[1..] {
            acc = b.push(target.clone(), NiceKind::Join, vec![acc, p]);
        }
        top[t] = acc;
    }
    let root_node = b.morph(top[root], &[]);
    Ok(NiceTreeDecomposition { nodes: b.nodes, root: root_node })
}

/// Builds a decomposition of `Hasse_d(K)` from one of `Con_d(K)`: for each
/// (d-1)-simplex with cofaces, copy a bag holding all of them (they form a
/// clique), add the face to the copy and hang the copy off the original.
/// Cofaceless faces get singleton bags. Width grows by at most one.
pub fn hasse_td_from_conn_td(
    conn: &DerivedGraph,
    td: &TreeDecomposition,
    hasse: &DerivedGraph,
) -> Result<TreeDecomposition> {
    let d = match (conn.kind, hasse.kind) {
        (GraphKind::Connectivity(a), GraphKind::HasseLevel(b)) if a == b => a,
        _ => return Err(Error::GraphMismatch("expected Con_d and Hasse_d of the same level".into())),
    };
    validate_td(conn, td).into_result()?;
    let to_hasse: Vec<usize> = conn
        .vertices()
        .iter()
        .map(|s| hasse.index_of(s).ok_or_else(|| Error::GraphMismatch(format!("{s} missing from Hasse graph"))))
        .collect::<Result<_>>()?;
    let mut bags: Vec<Vec<usize>> = td
        .bags
        .iter()
        .map(|bag| {
            let mut b: Vec<usize> = bag.iter().map(|&v| to_hasse[v]).collect();
            b.sort_unstable();
            b
        })
        .collect();
    let mut edges = td.edges.clone();
    let mut bags_of: Vec<Vec<usize>> = vec![Vec::new(); conn.vertex_count()];
    for (t, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            bags_of[v].push(t);
        }
    }
    let original = td.bags.len();
    for rho in 0..hasse.vertex_count() {
        if hasse.simplex(rho).dim() != d - 1 {
            continue;
        }
        let cofaces: Vec<usize> = hasse
            .neighbors(rho)
            .iter()
            .map(|&h| conn.index_of(hasse.simplex(h)).expect("coface is a Con_d vertex"))
            .collect();
        let fresh = bags.len();
        match cofaces.first() {
            None => {
                bags.push(vec![rho]);
                if fresh > 0 {
                    edges.push((0, fresh));
                }
            }
            Some(&first) => {
                let host = bags_of[first]
                    .iter()
                    .copied()
                    .find(|&t| t < original && cofaces.iter().all(|c| td.bags[t].binary_search(c).is_ok()))
                    .ok_or_else(|| Error::InvalidDecomposition("coface clique not contained in any bag".into()))?;
                let mut copy = bags[host].clone();
                let at = copy.binary_search(&rho).unwrap_err();
                copy.insert(at, rho);
                bags.push(copy);
                edges.push((host, fresh));
            }
        }
    }
    Ok(TreeDecomposition { bags, edges })
}

/// Transports a decomposition of `Con_{d+1}(K)` or `Hasse_{d+1}(K)` to the
/// same-kind graph one level up on the suspension `S(K)`: each bag vertex σ
/// becomes the pair `σ ∪ {plus}`, `σ ∪ {minus}`. For a Hasse level the plain
/// (d+1)-simplices of `K` are also vertices of the target graph (their only
/// cofaces are the two cones); each gets a three-element leaf bag.
pub fn suspend_td(
    source: &DerivedGraph,
    td: &TreeDecomposition,
    target: &DerivedGraph,
    plus: Vertex,
    minus: Vertex,
) -> Result<TreeDecomposition> {
    let level = source.kind.level();
    let same_kind = matches!(
        (source.kind, target.kind),
        (GraphKind::Connectivity(_), GraphKind::Connectivity(_)) | (GraphKind::HasseLevel(_), GraphKind::HasseLevel(_))
    );
    if !same_kind || target.kind.level() != level + 1 {
        return Err(Error::GraphMismatch("target must be the same graph kind one level up".into()));
    }
    let lookup = |s: Simplex| {
        target.index_of(&s).ok_or_else(|| Error::GraphMismatch(format!("{s} missing from target graph")))
    };
    let cones: Vec<(usize, usize)> = source
        .vertices()
        .iter()
        .map(|s| Ok((lookup(s.with_vertex(plus)?)?, lookup(s.with_vertex(minus)?)?)))
        .collect::<Result<_>>()?;
    let mut bags: Vec<Vec<usize>> = td
        .bags
        .iter()
        .map(|bag| {
            let mut b: Vec<usize> = bag.iter().flat_map(|&v| [cones[v].0, cones[v].1]).collect();
            b.sort_unstable();
            b
        })
        .collect();
    let mut edges = td.edges.clone();
    if let GraphKind::HasseLevel(_) = source.kind {
        let mut home = vec![usize::MAX; source.vertex_count()];
        for (t, bag) in td.bags.iter().enumerate() {
            for &v in bag {
                if home[v] == usize::MAX {
                    home[v] = t;
                }
            }
        }
        for (v, s) in source.vertices().iter().enumerate() {
            if s.dim() != level || home[v] == usize::MAX {
                continue;
            }
            let plain = lookup(s.clone())?;
            let mut bag = vec![plain, cones[v].0, cones[v].1];
            bag.sort_unstable();
            bags.push(bag);
            edges.push((home[v], bags.len() - 1));
        }
    }
    Ok(TreeDecomposition { bags, edges })
}
