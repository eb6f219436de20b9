//! The closure operator of a dataset and the lattice of (frequent) closed
//! itemsets, with supports, Hasse covers, and minimal generators.

use crate::bits::Bits;
use crate::dataset::Dataset;
use crate::itemset::ItemSet;

/// Precomputed per-item transaction bitmaps. Built once per mining call.
pub struct SupportIndex {
    n_transactions: usize,
    universe_len: usize,
    item_tids: Vec<Bits>,
    tx_masks: Vec<Bits>,
}

impl SupportIndex {
    pub fn new(d: &Dataset) -> SupportIndex {
        let n = d.transactions().len();
        let u = d.universe_len() as usize;
        let mut item_tids = vec![Bits::zeros(n); u];
        let mut tx_masks = Vec::with_capacity(n);
        for (tid, t) in d.transactions().iter().enumerate() {
            for id in t.iter() {
                item_tids[id as usize].set(tid);
            }
            tx_masks.push(Bits::from_itemset(t, u));
        }
        SupportIndex { n_transactions: n, universe_len: u, item_tids, tx_masks }
    }

    fn tidset(&self, x: &ItemSet) -> Bits {
        let mut t = Bits::ones(self.n_transactions);
        for id in x.iter() {
            t.and_assign(&self.item_tids[id as usize]);
        }
        t
    }

    pub fn support(&self, x: &ItemSet) -> u64 {
        self.tidset(x).count()
    }

    /// Intersection of the transactions listed in `tids`; the full universe
    /// when `tids` is empty (closure of an unsupported set).
    fn close_tidset(&self, tids: &Bits) -> Bits {
        let mut acc: Option<Bits> = None;
        for tid in tids.iter_ones() {
            match &mut acc {
                None => acc = Some(self.tx_masks[tid].clone()),
                Some(a) => {
                    a.and_assign(&self.tx_masks[tid]);
                    if a.is_zero() {
                        break;
                    }
                }
            }
        }
        acc.unwrap_or_else(|| Bits::ones(self.universe_len))
    }

    pub fn close(&self, x: &ItemSet) -> ItemSet {
        self.close_tidset(&self.tidset(x)).to_itemset()
    }
}

/// Intersection of all transactions containing `x`; the full universe when
/// nothing contains `x`. Extensive, idempotent, and monotone.
pub fn close(d: &Dataset, x: &ItemSet) -> ItemSet {
    SupportIndex::new(d).close(x)
}

/// One closed itemset together with its support, covering edges, and
/// minimal generators.
#[derive(Clone, Debug)]
pub struct ClosedNode {
    pub itemset: ItemSet,
    pub support: u64,
    /// Indices of maximal closed proper subsets.
    pub lower_covers: Vec<usize>,
    /// Indices of minimal closed proper supersets stored in the lattice.
    pub upper_covers: Vec<usize>,
    /// Inclusion-minimal sets whose closure is this node, sorted.
    pub min_generators: Vec<ItemSet>,
}

/// All closed itemsets of support at least `support_floor`, in lexicographic
/// order of their item sequences.
///
/// With floor 0 the family is closed under intersection; with a positive
/// floor it is the downward-support filter of that family.
#[derive(Clone, Debug)]
pub struct ClosureLattice {
    support_floor: u64,
    universe_len: u32,
    nodes: Vec<ClosedNode>,
}

impl ClosureLattice {
    pub fn support_floor(&self) -> u64 {
        self.support_floor
    }

    pub fn universe_len(&self) -> u32 {
        self.universe_len
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[ClosedNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &ClosedNode {
        &self.nodes[i]
    }

    pub fn find(&self, itemset: &ItemSet) -> Option<usize> {
        self.nodes.binary_search_by(|n| n.itemset.cmp(itemset)).ok()
    }

    /// Covering edges as `(parent, child)` index pairs, sorted.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for (child, node) in self.nodes.iter().enumerate() {
            for &parent in &node.upper_covers {
                edges.push((parent, child));
            }
        }
        edges.sort_unstable();
        edges
    }

    /// Line-oriented export: one `items | support` line per node, then one
    /// `parent child` line per Hasse edge.
    pub fn export_text(&self, names: &[String]) -> String {
        let mut out = String::new();
        out.push_str(&format!("# nodes {}\n", self.nodes.len()));
        for node in &self.nodes {
            out.push_str(&format!(
                "{} | {}\n",
                node.itemset.display_with(names),
                node.support
            ));
        }
        let edges = self.hasse();
        out.push_str(&format!("# edges {}\n", edges.len()));
        for (p, c) in edges {
            out.push_str(&format!("{p} {c}\n"));
        }
        out
    }
}

/// Enumerates every closed itemset with support at least `support_floor`
/// (floor 0 includes the closure of unsupported sets, which is the full
/// universe). Canonical-extension depth-first search; output is deterministic.
pub fn enumerate_closures(d: &Dataset, support_floor: u64) -> ClosureLattice {
    let u = d.universe_len() as usize;
    let idx = SupportIndex::new(d);

    let mut miner = Miner { idx: &idx, universe: u, floor: support_floor, found: Vec::new() };
    if d.is_empty() {
        if support_floor == 0 {
            miner.found.push((Bits::ones(u), 0));
        }
    } else {
        let all_tids = Bits::ones(d.transactions().len());
        let bottom = idx.close_tidset(&all_tids);
        let n = d.len();
        if n >= support_floor {
            miner.expand(bottom, all_tids, n, 0);
        }
    }
    let found = miner.found;

    let mut nodes: Vec<ClosedNode> = found
        .into_iter()
        .map(|(bits, support)| ClosedNode {
            itemset: bits.to_itemset(),
            support,
            lower_covers: Vec::new(),
            upper_covers: Vec::new(),
            min_generators: Vec::new(),
        })
        .collect();
    nodes.sort_by(|a, b| a.itemset.cmp(&b.itemset));

    link_covers(&mut nodes, u);
    compute_generators(&mut nodes);

    ClosureLattice { support_floor, universe_len: u as u32, nodes }
}

struct Miner<'a> {
    idx: &'a SupportIndex,
    universe: usize,
    floor: u64,
    found: Vec<(Bits, u64)>,
}

impl Miner<'_> {
    fn expand(&mut self, closure: Bits, tids: Bits, support: u64, start: usize) {
        self.found.push((closure.clone(), support));
        for j in start..self.universe {
            if closure.get(j) {
                continue;
            }
            let mut t = tids.clone();
            t.and_assign(&self.idx.item_tids[j]);
            let supp = t.count();
            if supp < self.floor {
                continue;
            }
            let ext = self.idx.close_tidset(&t);
            // canonical extension: nothing below j may have been added
            if prefix_eq(&ext, &closure, j) {
                self.expand(ext, t, supp, j + 1);
            }
        }
    }
}

fn prefix_eq(a: &Bits, b: &Bits, upto: usize) -> bool {
    for i in 0..upto {
        if a.get(i) != b.get(i) {
            return false;
        }
    }
    true
}

fn link_covers(nodes: &mut [ClosedNode], u: usize) {
    let masks: Vec<Bits> = nodes.iter().map(|n| Bits::from_itemset(&n.itemset, u)).collect();
    let mut by_len: Vec<usize> = (0..nodes.len()).collect();
    by_len.sort_by_key(|&i| (nodes[i].itemset.len(), i));

    for (pos, &i) in by_len.iter().enumerate() {
        let mut covers: Vec<usize> = Vec::new();
        for &j in &by_len[pos + 1..] {
            if nodes[j].itemset.len() == nodes[i].itemset.len() || !masks[i].is_subset(&masks[j]) {
                continue;
            }
            if covers.iter().all(|&c| !masks[c].is_subset(&masks[j])) {
                covers.push(j);
            }
        }
        covers.sort_unstable();
        for &j in &covers {
            nodes[j].lower_covers.push(i);
        }
        nodes[i].upper_covers = covers;
    }
    for n in nodes.iter_mut() {
        n.lower_covers.sort_unstable();
    }
}

fn compute_generators(nodes: &mut [ClosedNode]) {
    let sets: Vec<ItemSet> = nodes.iter().map(|n| n.itemset.clone()).collect();
    for (i, node) in nodes.iter_mut().enumerate() {
        // A subset of this node generates it exactly when it is contained in
        // no maximal closed proper subset, i.e. it hits every face
        // `node - cover`.
        let faces: Vec<ItemSet> = node
            .lower_covers
            .iter()
            .map(|&c| sets[i].difference(&sets[c]))
            .collect();
        let mut gens = minimal_transversals(&faces);
        gens.sort();
        node.min_generators = gens;
    }
}

/// Inclusion-minimal sets hitting every face. For zero faces the unique
/// answer is the empty set.
fn minimal_transversals(faces: &[ItemSet]) -> Vec<ItemSet> {
    let mut result: Vec<ItemSet> = Vec::new();
    let mut partial: Vec<u32> = Vec::new();
    branch(faces, &mut partial, 0, &mut result);
    result.sort();
    result.dedup();
    result
}

fn branch(faces: &[ItemSet], partial: &mut Vec<u32>, from_face: usize, out: &mut Vec<ItemSet>) {
    let hit = |items: &[u32], f: &ItemSet| items.iter().any(|&e| f.contains(e));
    match faces[from_face..].iter().position(|f| !hit(partial, f)) {
        None => {
            // minimal iff every chosen element is the sole hitter of some face
            let minimal = partial.iter().all(|&e| {
                faces.iter().any(|f| {
                    f.contains(e) && !partial.iter().any(|&o| o != e && f.contains(o))
                })
            });
            if minimal {
                out.push(ItemSet::from_items(partial.iter().copied()));
            }
        }
        Some(off) => {
            let face_idx = from_face + off;
            for e in faces[face_idx].iter() {
                partial.push(e);
                branch(faces, partial, face_idx + 1, out);
                partial.pop();
            }
        }
    }
}

/// All inclusion-minimal sets whose closure is the given node's itemset.
pub fn minimal_generators(lattice: &ClosureLattice, node: usize) -> &[ItemSet] {
    &lattice.node(node).min_generators
}
