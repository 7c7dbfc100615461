//! The weak order graph on orbit indices and the atoms read off its paths.
//!
//! Edges point away from the dense orbit, so the dense index is the unique
//! source. Each edge `β → γ` labelled by a simple generator `s` satisfies
//! `ψ(β) ≠ Θ(s) ∘ ψ(β) ∘ s = ψ(γ)`, and some edges are doubled. Walking from the
//! dense orbit and multiplying generators on the left produces the atom set of
//! every orbit together with the count of doubled edges used.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::clans::{
    dense_clan, dense_image, enumerate_clans, in_rs_image, rs_map_unchecked, Clan, OrbitIndex, SymSpace,
};
use crate::coxeter::{conjugate_cases, generator_value, t0_left, GeneratorIndex, WeylElement, WeylKind};
use crate::error::{Error, Result};

/// The nontrivial cycles of a simple generator, each as a sorted pair.
pub fn generator_cycles(kind: WeylKind, s: GeneratorIndex) -> Vec<(i32, i32)> {
    match (kind, s) {
        (WeylKind::A(_), i) => vec![(i, i + 1)],
        (_, 0) => vec![(-1, 1)],
        (_, -1) => vec![(-2, 1), (-1, 2)],
        (_, i) => vec![(-i - 1, -i), (i, i + 1)],
    }
}

/// The nontrivial cycles of a permutation of `values`, each sorted, in sorted order.
pub fn nontrivial_cycles(w: &WeylElement, values: &[i32]) -> Vec<Vec<i32>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &a in values {
        if seen.contains(&a) {
            continue;
        }
        let mut cycle = vec![a];
        seen.insert(a);
        let mut b = w.apply(a);
        while b != a {
            cycle.push(b);
            seen.insert(b);
            b = w.apply(b);
        }
        if cycle.len() > 1 {
            cycle.sort_unstable();
            out.push(cycle);
        }
    }
    out.sort();
    out
}

/// The matching `C̄(z)` and the point set `S(z)` attached to an element of the image.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaSets {
    /// Two-element blocks, each sorted, in sorted order.
    pub cbar: Vec<(i32, i32)>,
    /// Isolated points, sorted. Contains `0` in type BI.
    pub sset: Vec<i32>,
}

/// The involution whose 2-cycles give `C̄(z)` and whose fixed points give `S(z)`.
fn reflected(space: SymSpace, z: &WeylElement) -> WeylElement {
    let kind = space.kind();
    match space {
        SymSpace::AI { .. } | SymSpace::AII { .. } | SymSpace::AIII { .. } => {
            let m = kind.degree() as i32;
            WeylElement::from_raw(kind, z.oneline().iter().map(|&x| m + 1 - x).collect())
        }
        SymSpace::DII { .. } | SymSpace::DIV { .. } => WeylElement::from_raw(
            WeylKind::BC(kind.rank()),
            t0_left(z.oneline()).iter().map(|x| -x).collect(),
        ),
        _ => WeylElement::from_raw(WeylKind::BC(kind.rank()), z.oneline().iter().map(|x| -x).collect()),
    }
}

fn theta_sets_unchecked(space: SymSpace, z: &WeylElement) -> ThetaSets {
    let y = reflected(space, z);
    let values: Vec<i32> = match space {
        SymSpace::AI { .. } | SymSpace::AII { .. } | SymSpace::AIII { .. } => {
            (1..=space.kind().degree() as i32).collect()
        }
        _ => {
            let n = space.rank() as i32;
            (-n..=n).filter(|&x| x != 0).collect()
        }
    };
    let cbar = nontrivial_cycles(&y, &values)
        .into_iter()
        .map(|c| {
            debug_assert_eq!(c.len(), 2);
            (c[0], c[1])
        })
        .collect();
    let mut sset: Vec<i32> = values.into_iter().filter(|&a| y.apply(a) == a).collect();
    if matches!(space, SymSpace::BI { .. }) {
        sset.push(0);
        sset.sort_unstable();
    }
    ThetaSets { cbar, sset }
}

/// Computes `C̄(z)` and `S(z)` for `z` in the image of the space.
pub fn theta_sets(space: SymSpace, z: &WeylElement) -> Result<ThetaSets> {
    let space = space.validate()?;
    if !in_rs_image(space, z) {
        return Err(Error::NotInImage(z.to_string(), space.to_string()));
    }
    Ok(theta_sets_unchecked(space, z))
}

/// One edge `source → target` of the weak order graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphEdge {
    /// Vertex index of `β`.
    pub source: usize,
    /// The simple generator labelling the edge.
    pub generator: GeneratorIndex,
    /// Vertex index of `γ`.
    pub target: usize,
    /// Whether the edge has degree two.
    pub doubled: bool,
}

/// The weak order graph of a symmetric space.
#[derive(Debug, Clone)]
pub struct OrbitGraph {
    space: SymSpace,
    vertices: Vec<OrbitIndex>,
    images: Vec<WeylElement>,
    index: HashMap<OrbitIndex, usize>,
    edges: Vec<GraphEdge>,
    incoming: HashMap<(usize, GeneratorIndex), Vec<usize>>,
    dense: usize,
    levels: Vec<Option<usize>>,
}

/// Whether `s` carries `from` onto `to`, preserving order.
///
/// The generator `t_{-1}` sends `±1` to `∓2` and so reverses the order of any
/// symmetric pair it moves; for it only the set equality is required.
fn order_preserving_image(from: &[i32], to: &[i32], s: GeneratorIndex) -> bool {
    if from.len() != to.len() {
        return false;
    }
    let mapped: Vec<i32> = from.iter().map(|&x| generator_value(s, x)).collect();
    (s == -1 || mapped.windows(2).all(|p| p[0] < p[1])) && {
        let mut sorted = mapped;
        sorted.sort_unstable();
        sorted == to
    }
}

/// Conditions (b) and (c) of the edge criterion for clan-indexed spaces.
fn clan_edge_condition(space: SymSpace, beta: &Clan, s: GeneratorIndex, gamma: &Clan) -> bool {
    let cs = generator_cycles(space.kind(), s);
    let mb = beta.matching();
    if !cs.iter().all(|c| mb.contains(c)) {
        return order_preserving_image(beta.plus(), gamma.plus(), s)
            && order_preserving_image(beta.minus(), gamma.minus(), s);
    }
    let expected: Vec<(i32, i32)> = mb.iter().filter(|c| !cs.contains(c)).copied().collect();
    if gamma.matching() != expected.as_slice() {
        return false;
    }
    let skip_zero = matches!(space, SymSpace::BI { .. }) && s == 0;
    let within = |xs: &[i32], plus: bool| {
        xs.iter().all(|&x| {
            let flip = skip_zero && x == 0;
            if plus != flip {
                gamma.is_plus(x)
            } else {
                gamma.is_minus(x)
            }
        })
    };
    if !within(beta.plus(), true) || !within(beta.minus(), false) {
        return false;
    }
    let (a, b) = match (space.kind(), s) {
        (WeylKind::A(_), i) => (i, i + 1),
        (_, i) => (i, i.abs() + 1),
    };
    !(gamma.is_plus(a) && gamma.is_plus(b)) && !(gamma.is_minus(a) && gamma.is_minus(b))
}

fn is_doubled(space: SymSpace, z: &WeylElement, s: GeneratorIndex) -> bool {
    let fixed = |w: &[i32], x: i32| w[x as usize - 1] == x;
    let z1 = z.oneline();
    match space {
        SymSpace::AI { .. } | SymSpace::CI { .. } | SymSpace::DI { .. } if s != 0 => {
            fixed(z1, s.abs()) && fixed(z1, s.abs() + 1)
        }
        SymSpace::BI { .. } if s != 0 => fixed(z1, s) && fixed(z1, s + 1),
        SymSpace::BI { .. } => fixed(z1, 1),
        SymSpace::DII { .. } => {
            let t = t0_left(z1);
            fixed(&t, s.abs()) && fixed(&t, s.abs() + 1)
        }
        _ => false,
    }
}

/// Builds the weak order graph of `space`.
pub fn build_graph(space: SymSpace) -> Result<OrbitGraph> {
    let space = space.validate()?;
    let vertices = enumerate_clans(space)?;
    let kind = space.kind();
    let theta = space.theta().resolve(kind);
    let images: Vec<WeylElement> = vertices.iter().map(|v| rs_map_unchecked(space, v)).collect();
    let index: HashMap<OrbitIndex, usize> = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let mut fibers: HashMap<&WeylElement, Vec<usize>> = HashMap::new();
    for (i, z) in images.iter().enumerate() {
        fibers.entry(z).or_default().push(i);
    }
    let generators = kind.generators();
    let edges: Vec<GraphEdge> = (0..vertices.len())
        .into_par_iter()
        .flat_map_iter(|b| {
            let z = &images[b];
            let mut local = Vec::new();
            for &s in &generators {
                let next = conjugate_cases(theta, z, s);
                if &next == z {
                    continue;
                }
                let doubled = is_doubled(space, z, s);
                for &g in fibers.get(&next).map(Vec::as_slice).unwrap_or(&[]) {
                    let ok = match (&vertices[b], &vertices[g]) {
                        (OrbitIndex::Clan(beta), OrbitIndex::Clan(gamma)) => clan_edge_condition(space, beta, s, gamma),
                        _ => true,
                    };
                    if ok {
                        local.push(GraphEdge {
                            source: b,
                            generator: s,
                            target: g,
                            doubled,
                        });
                    }
                }
            }
            local
        })
        .collect();
    let mut incoming: HashMap<(usize, GeneratorIndex), Vec<usize>> = HashMap::new();
    for (e, edge) in edges.iter().enumerate() {
        incoming.entry((edge.target, edge.generator)).or_default().push(e);
    }
    let dense = index[&dense_clan(space)?];
    let mut levels = vec![None; vertices.len()];
    levels[dense] = Some(0);
    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for (e, edge) in edges.iter().enumerate() {
        outgoing[edge.source].push(e);
    }
    let mut queue = VecDeque::from([dense]);
    while let Some(v) = queue.pop_front() {
        let next_level = levels[v].map(|l| l + 1);
        for &e in &outgoing[v] {
            let t = edges[e].target;
            if levels[t].is_none() {
                levels[t] = next_level;
                queue.push_back(t);
            }
        }
    }
    Ok(OrbitGraph {
        space,
        vertices,
        images,
        index,
        edges,
        incoming,
        dense,
        levels,
    })
}

impl OrbitGraph {
    /// The space the graph belongs to.
    pub fn space(&self) -> SymSpace {
        self.space
    }

    /// Vertices in canonical order.
    pub fn vertices(&self) -> &[OrbitIndex] {
        &self.vertices
    }

    /// The image `ψ(γ)` of each vertex.
    pub fn images(&self) -> &[WeylElement] {
        &self.images
    }

    /// All edges.
    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    /// Vertex index of the dense orbit.
    pub fn dense(&self) -> usize {
        self.dense
    }

    /// Position of a vertex, if present.
    pub fn index_of(&self, v: &OrbitIndex) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Distance from the dense vertex, or `None` if unreachable.
    pub fn level(&self, v: usize) -> Option<usize> {
        self.levels[v]
    }

    /// Edges entering `target` with label `s`.
    pub fn incoming(&self, target: usize, s: GeneratorIndex) -> Vec<GraphEdge> {
        self.incoming
            .get(&(target, s))
            .map(|es| es.iter().map(|&e| self.edges[e]).collect())
            .unwrap_or_default()
    }

    /// Whether every `(γ, s)` has at most one incoming edge.
    pub fn has_unique_sources(&self) -> bool {
        self.incoming.values().all(|es| es.len() <= 1)
    }

    /// Vertices whose level is defined, sorted by level.
    fn by_level(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.vertices.len()).filter(|&v| self.levels[v].is_some()).collect();
        order.sort_by_key(|&v| (self.levels[v], v));
        order
    }

    /// The monoid action `s · γ`: the source of the `s`-edge into `γ`, or `γ` itself.
    pub fn monoid_act(&self, s: GeneratorIndex, gamma: usize) -> usize {
        self.incoming
            .get(&(gamma, s))
            .and_then(|es| es.first())
            .map_or(gamma, |&e| self.edges[e].source)
    }

    /// Walks backwards from `gamma` along `word = (s_1, ..., s_m)` to the dense vertex.
    ///
    /// Returns the lifted path when every step is an edge and the walk ends at the
    /// dense orbit.
    pub fn lift(&self, word: &[GeneratorIndex], gamma: usize) -> Option<PathRecord> {
        let mut clans = vec![gamma];
        let mut doubled_count = 0;
        let mut current = gamma;
        for &s in word.iter().rev() {
            let edge = *self.incoming.get(&(current, s))?.first()?;
            let edge = self.edges[edge];
            doubled_count += usize::from(edge.doubled);
            current = edge.source;
            clans.push(current);
        }
        if current != self.dense {
            return None;
        }
        clans.reverse();
        Some(PathRecord {
            word: word.to_vec(),
            z_sequence: clans.iter().map(|&v| self.images[v].clone()).collect(),
            clans: clans.into_iter().map(|v| self.vertices[v].clone()).collect(),
            doubled_count,
        })
    }

    /// Computes the atom set and doubled-edge counts of every vertex.
    pub fn atoms_bfs(&self) -> AtomTable {
        let kind = self.space.kind();
        let mut atoms: Vec<BTreeMap<WeylElement, usize>> = vec![BTreeMap::new(); self.vertices.len()];
        atoms[self.dense].insert(WeylElement::identity(kind), 0);
        let mut conflicts = Vec::new();
        let mut nonreduced = Vec::new();
        let mut outgoing: Vec<Vec<&GraphEdge>> = vec![Vec::new(); self.vertices.len()];
        for edge in &self.edges {
            outgoing[edge.source].push(edge);
        }
        for v in self.by_level() {
            let current = std::mem::take(&mut atoms[v]);
            for edge in &outgoing[v] {
                for (w, &d) in &current {
                    let next = w.mul_simple_left(edge.generator);
                    if next.length() != w.length() + 1 {
                        nonreduced.push((edge.target, next.clone()));
                    }
                    let d_next = d + usize::from(edge.doubled);
                    match atoms[edge.target].get(&next) {
                        Some(&old) if old != d_next => conflicts.push((edge.target, next)),
                        Some(_) => {}
                        None => {
                            atoms[edge.target].insert(next, d_next);
                        }
                    }
                }
            }
            atoms[v] = current;
        }
        AtomTable {
            atoms,
            conflicts,
            nonreduced,
        }
    }

    /// Graphviz rendering with canonical clan labels; doubled edges are bold with label 2.
    pub fn to_dot(&self) -> String {
        let mut out = format!("digraph \"{}\" {{\n", self.space);
        for (i, v) in self.vertices.iter().enumerate() {
            out.push_str(&format!("  v{i} [label=\"{v}\"];\n"));
        }
        for e in &self.edges {
            let style = if e.doubled { ",style=bold,label=2" } else { "" };
            out.push_str(&format!(
                "  v{} -> v{} [xlabel=\"t{}\"{}];\n",
                e.source, e.target, e.generator, style
            ));
        }
        out.push_str("}\n");
        out
    }

    /// JSON rendering of vertices and edges.
    pub fn to_json(&self) -> Value {
        json!({
            "space": self.space.to_string(),
            "dense": self.dense,
            "vertices": self.vertices.iter().enumerate().map(|(i, v)| json!({
                "id": i,
                "label": v.to_string(),
                "image": self.images[i].to_string(),
                "level": self.levels[i],
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!({
                "source": e.source,
                "target": e.target,
                "generator": e.generator,
                "doubled": e.doubled,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Atom sets `W(γ)` with doubled-edge counts `d_γ`, indexed by vertex.
#[derive(Debug, Clone)]
pub struct AtomTable {
    atoms: Vec<BTreeMap<WeylElement, usize>>,
    conflicts: Vec<(usize, WeylElement)>,
    nonreduced: Vec<(usize, WeylElement)>,
}

impl AtomTable {
    /// The atoms of vertex `v` with their doubled-edge counts.
    pub fn atoms(&self, v: usize) -> &BTreeMap<WeylElement, usize> {
        &self.atoms[v]
    }

    /// Atoms reached by two paths with different doubled-edge counts.
    pub fn conflicts(&self) -> &[(usize, WeylElement)] {
        &self.conflicts
    }

    /// Atoms produced by a left multiplication that did not increase length.
    pub fn nonreduced(&self) -> &[(usize, WeylElement)] {
        &self.nonreduced
    }

    /// JSON rendering of the full atom map.
    pub fn to_json(&self, graph: &OrbitGraph) -> Value {
        Value::Array(
            self.atoms
                .iter()
                .enumerate()
                .map(|(v, map)| {
                    json!({
                        "orbit": graph.vertices()[v].to_string(),
                        "atoms": map.iter().map(|(w, d)| json!({"w": w.to_string(), "d": d})).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }
}

/// A path `z_dense = z^0 → z^1 → ... → z^m` with optional lifted orbit indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathRecord {
    /// The generators `(s_1, ..., s_m)`.
    pub word: Vec<GeneratorIndex>,
    /// Lifted vertices `γ^0, ..., γ^m`, empty when the path has not been lifted.
    pub clans: Vec<OrbitIndex>,
    /// Number of doubled edges along the lift, zero when not lifted.
    pub doubled_count: usize,
    /// The twisted involutions `z^0, ..., z^m`.
    pub z_sequence: Vec<WeylElement>,
}

impl PathRecord {
    /// Follows `word` from the dense image, requiring every step to move.
    pub fn from_word(space: SymSpace, word: &[GeneratorIndex]) -> Result<Self> {
        let space = space.validate()?;
        let kind = space.kind();
        let theta = space.theta().resolve(kind);
        let mut z = dense_image(space)?;
        let mut z_sequence = vec![z.clone()];
        for &s in word {
            if !kind.is_generator(s) {
                return Err(Error::GeneratorRange {
                    index: s,
                    kind: kind.to_string(),
                });
            }
            let next = conjugate_cases(theta, &z, s);
            if next == z {
                return Err(Error::Malformed(format!("generator t{s} fixes {z}")));
            }
            z = next;
            z_sequence.push(z.clone());
        }
        Ok(PathRecord {
            word: word.to_vec(),
            clans: Vec::new(),
            doubled_count: 0,
            z_sequence,
        })
    }

    /// The last twisted involution of the path.
    pub fn endpoint(&self) -> &WeylElement {
        self.z_sequence.last().expect("paths start at the dense image")
    }

    /// The product `s_m ⋯ s_1`.
    pub fn element(&self) -> WeylElement {
        let kind = self.endpoint().kind();
        self.word
            .iter()
            .fold(WeylElement::identity(kind), |w, &s| w.mul_simple_left(s))
    }
}

/// The set partition `Λ(P)` attached to a path, as sorted blocks in sorted order.
pub fn lambda_partition(space: SymSpace, path: &PathRecord) -> Result<Vec<Vec<i32>>> {
    let space = space.validate()?;
    if path.z_sequence.first() != Some(&dense_image(space)?) {
        return Err(Error::Malformed("path does not start at the dense image".into()));
    }
    if path.z_sequence.len() != path.word.len() + 1 {
        return Err(Error::Malformed("path word and element sequence disagree".into()));
    }
    let kind = space.kind();
    let m = path.word.len();
    let mut blocks: Vec<Vec<i32>> = Vec::new();
    for i in 0..m {
        let s = path.word[i];
        let cs = generator_cycles(kind, s);
        let cbar = theta_sets_unchecked(space, &path.z_sequence[i]).cbar;
        if !cs.iter().all(|c| cbar.contains(c)) {
            continue;
        }
        let apply_rest = |mut x: i32| {
            for &t in &path.word[i + 1..] {
                x = generator_value(t, x);
            }
            x
        };
        for (a, b) in cs {
            let mut block = vec![apply_rest(a), apply_rest(b)];
            block.sort_unstable();
            blocks.push(block);
        }
    }
    if matches!(space, SymSpace::BI { .. }) {
        let (trivial, mut rest): (Vec<Vec<i32>>, Vec<Vec<i32>>) = blocks.into_iter().partition(|b| b[0] == -b[1]);
        let mut merged: Vec<i32> = trivial.into_iter().flatten().collect();
        merged.push(0);
        merged.sort_unstable();
        rest.push(merged);
        blocks = rest;
    }
    blocks.sort();
    Ok(blocks)
}

/// Whether `gamma` satisfies the alternation condition on the blocks of `Λ(P)`.
///
/// For consecutive elements `a < b` of each block, exactly one must lie in `S₊(γ)`
/// and exactly one in `S₋(γ)`.
pub fn lift_check(space: SymSpace, path: &PathRecord, gamma: &OrbitIndex) -> Result<bool> {
    let space = space.validate()?;
    let z = rs_map_unchecked(space, gamma);
    if &z != path.endpoint() {
        return Err(Error::Malformed(format!(
            "ψ({gamma}) = {z} is not the endpoint {} of the path",
            path.endpoint()
        )));
    }
    let Some(clan) = gamma.as_clan() else {
        return Ok(true);
    };
    let blocks = lambda_partition(space, path)?;
    Ok(blocks.iter().all(|block| {
        block.windows(2).all(|p| {
            let plus = usize::from(clan.is_plus(p[0])) + usize::from(clan.is_plus(p[1]));
            let minus = usize::from(clan.is_minus(p[0])) + usize::from(clan.is_minus(p[1]));
            plus == 1 && minus == 1
        })
    }))
}
