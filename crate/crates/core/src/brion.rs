//! Closed-form descriptions of atom sets.
//!
//! For each symmetric space this module computes the extended atom sets
//! `E(z)` as minimal-length twisted conjugators, the matchings indexing the
//! cells of `E(z)`, the shape of an atom, the generator `⊥(z, M)` of each cell,
//! and the value `d_z(w)`. An orbit's atom set is then the union of the cells
//! indexed by its aligned matchings, each cell being the up-set of its
//! generator under the word order of the space.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::clans::{dense_image, in_rs_image, rs_map, Clan, OrbitIndex, SymSpace};
use crate::coxeter::{
    conjugate_cases, demazure_conjugate_generic, enumerate_group, es_normalize, is_twisted_involution, negate_set,
    reduced_factorization, t0_left, twist_set, Automorphism, WeylElement, WeylKind,
};
use crate::error::{Error, Result};
use crate::matchings::{enumerate_ncsp, is_gamma_aligned, SignedMatching, TrivConstraint};
use crate::words::{assemble, cyc_sets, nested_descents, pdes_rank, rank_d, up_set, AssembleMode, Word, WordOrder};

fn check_twisted(theta: Automorphism, w: &WeylElement) -> Result<()> {
    if !is_twisted_involution(theta, w)? {
        return Err(Error::NotTwistedInvolution(w.to_tagged_string()));
    }
    Ok(())
}

/// Every `E_Θ(y, z)` reachable from `y`, keyed by `z`.
///
/// Starting from `y`, each non-fixing step `z' → Θ(s) ∘ z' ∘ s` raises the twisted
/// length by one, and the conjugator is multiplied by `s` on the left.
pub fn e_theta_table(theta: Automorphism, y: &WeylElement) -> Result<BTreeMap<WeylElement, BTreeSet<WeylElement>>> {
    check_twisted(theta, y)?;
    let kind = y.kind();
    let resolved = theta.resolve(kind);
    let mut table = BTreeMap::new();
    let mut frontier: BTreeMap<WeylElement, BTreeSet<WeylElement>> =
        BTreeMap::from([(y.clone(), BTreeSet::from([WeylElement::identity(kind)]))]);
    while !frontier.is_empty() {
        let mut next: BTreeMap<WeylElement, BTreeSet<WeylElement>> = BTreeMap::new();
        for (z, ws) in &frontier {
            for s in kind.generators() {
                let target = conjugate_cases(resolved, z, s);
                if &target == z {
                    continue;
                }
                next.entry(target)
                    .or_default()
                    .extend(ws.iter().map(|w| w.mul_simple_left(s)));
            }
        }
        table.extend(std::mem::replace(&mut frontier, next));
    }
    Ok(table)
}

/// The set `E_Θ(y, z)` of minimal-length conjugators carrying `y` to `z`.
pub fn e_theta(theta: Automorphism, y: &WeylElement, z: &WeylElement) -> Result<BTreeSet<WeylElement>> {
    check_twisted(theta, z)?;
    Ok(e_theta_table(theta, y)?.remove(z).unwrap_or_default())
}

/// Full-scan version of [`e_theta`] built on the generic Demazure product.
///
/// Every group element is tested by acting on `y` along one reduced word and
/// requiring each step to move.
pub fn e_theta_oracle(theta: Automorphism, y: &WeylElement, z: &WeylElement) -> Result<BTreeSet<WeylElement>> {
    check_twisted(theta, y)?;
    check_twisted(theta, z)?;
    let mut out = BTreeSet::new();
    'outer: for w in enumerate_group(y.kind())? {
        let mut cur = y.clone();
        for s in reduced_factorization(&w).into_iter().rev() {
            let next = demazure_conjugate_generic(theta, &cur, s)?;
            if next == cur {
                continue 'outer;
            }
            cur = next;
        }
        if &cur == z {
            out.insert(w);
        }
    }
    Ok(out)
}

/// The extended atom set `E(z)` of the space, computed from its dense element.
pub fn extended_atoms(space: SymSpace, z: &WeylElement) -> Result<BTreeSet<WeylElement>> {
    check_image(space, z)?;
    e_theta(space.theta(), &dense_image(space)?, z)
}

/// Every extended atom set of the space, keyed by the element of the image.
pub fn extended_atom_table(space: SymSpace) -> Result<BTreeMap<WeylElement, BTreeSet<WeylElement>>> {
    let table = e_theta_table(space.theta(), &dense_image(space)?)?;
    Ok(table.into_iter().filter(|(z, _)| in_rs_image(space, z)).collect())
}

fn check_image(space: SymSpace, z: &WeylElement) -> Result<()> {
    if !in_rs_image(space.validate()?, z) {
        return Err(Error::NotInImage(z.to_tagged_string(), space.to_string()));
    }
    Ok(())
}

/// Whether the space works with `t_0 z` in place of `z`.
fn twisted_by_t0(space: SymSpace) -> bool {
    matches!(space, SymSpace::DII { .. } | SymSpace::DIV { .. })
}

/// The involution whose cycles and negated points define the matchings of `z`.
///
/// This is `t_0 z`, viewed in `W_n`, for DII and DIV, and `z` itself otherwise.
fn base_involution(space: SymSpace, z: &WeylElement) -> Result<WeylElement> {
    if twisted_by_t0(space) {
        WeylElement::from_oneline(WeylKind::BC(z.kind().rank()), t0_left(z.oneline()))
    } else {
        Ok(z.clone())
    }
}

/// The support `X` of the matchings attached to `z`.
fn matching_support(space: SymSpace, z: &WeylElement) -> Result<Vec<i32>> {
    Ok(match space {
        SymSpace::AI { .. } | SymSpace::AII { .. } => Vec::new(),
        SymSpace::AIII { .. } => twist_set(z),
        _ => negate_set(&base_involution(space, z)?),
    })
}

/// The set `Matchings(z)` indexing the cells of `E(z)`, in canonical order.
pub fn matchings_for(space: SymSpace, z: &WeylElement) -> Result<Vec<SignedMatching>> {
    check_image(space, z)?;
    let x = matching_support(space, z)?;
    let k = space.k();
    Ok(match space {
        SymSpace::AI { .. } | SymSpace::AII { .. } => vec![SignedMatching::empty()],
        SymSpace::AIII { .. } | SymSpace::CII { .. } | SymSpace::DI { .. } | SymSpace::DII { .. } => {
            enumerate_ncsp(&x, TrivConstraint::Exactly(k))
        }
        SymSpace::BI { .. } => enumerate_ncsp(&x, TrivConstraint::AtLeast(k)),
        SymSpace::CI { .. } => enumerate_ncsp(&x, TrivConstraint::Any),
        SymSpace::DIII { .. } => {
            let target = z.ell0() % 4;
            enumerate_ncsp(&x, TrivConstraint::Any)
                .into_iter()
                .filter(|m| m.triv() % 4 == target)
                .collect()
        }
        SymSpace::DIV { .. } => enumerate_ncsp(&x, TrivConstraint::Any)
            .into_iter()
            .filter(|m| m.triv() % 2 == 1)
            .collect(),
    })
}

/// The word order whose up-sets form the cells of the space.
pub fn space_order(space: SymSpace) -> WordOrder {
    let k = space.k();
    match space {
        SymSpace::AI { .. } | SymSpace::CI { .. } => WordOrder::PrecSim(0),
        SymSpace::AII { .. } | SymSpace::DIII { .. } => WordOrder::PrecApprox(0),
        SymSpace::AIII { .. } => WordOrder::PrecAiii(k),
        SymSpace::BI { .. } => WordOrder::PrecSim(k),
        SymSpace::CII { .. } => WordOrder::PrecApprox(k),
        SymSpace::DI { .. } | SymSpace::DII { .. } => WordOrder::PrecSimDi(k),
        SymSpace::DIV { .. } => WordOrder::PrecApprox(1),
    }
}

/// The rank function grading the word order of the space.
pub fn declared_rank(space: SymSpace, w: &[i32]) -> Result<i64> {
    let k = space.k();
    let inv_at = |letters: Vec<i32>| crate::words::inv(&letters) as i64;
    match space_order(space) {
        WordOrder::PrecSim(k) => pdes_rank(&w[k.min(w.len())..]),
        WordOrder::PrecApprox(k) => Ok(inv_at(w.iter().skip(k + 1).step_by(2).copied().collect())),
        WordOrder::PrecAiii(_) => {
            let j = (w.len() - k) / 2;
            Ok(inv_at(w[..j].to_vec()))
        }
        WordOrder::PrecSimDi(k) => rank_d(w, k),
        WordOrder::PrecSimD => rank_d(w, 0),
        WordOrder::LlD => rank_d(w, 0),
    }
}

fn signed_matching(blocks: Vec<(i32, i32)>) -> Result<SignedMatching> {
    let support: Vec<i32> = blocks.iter().flat_map(|&(a, b)| [a.abs(), b.abs()]).collect();
    SignedMatching::new(support, blocks)
}

/// The shape of an atom: the matching recorded by its one-line representation.
pub fn shape(space: SymSpace, w: &WeylElement) -> Result<SignedMatching> {
    let space = space.validate()?;
    if w.kind() != space.kind() {
        return Err(Error::KindMismatch(w.kind().to_string(), space.kind().to_string()));
    }
    let word = w.oneline();
    let n = word.len();
    let k = space.k();
    let malformed = |what: &str| Error::Malformed(format!("{} cannot be split {what}", w.to_tagged_string()));
    let mut blocks = Vec::new();
    match space {
        SymSpace::AI { .. } | SymSpace::AII { .. } => {}
        SymSpace::AIII { .. } => {
            if k > n || (n - k) % 2 == 1 {
                return Err(malformed("into b, c and reversed a blocks"));
            }
            let j = (n - k) / 2;
            for i in 0..j {
                let (b, a) = (word[i], word[n - 1 - i]);
                if a < b {
                    blocks.push((a, b));
                }
            }
            blocks.extend(word[j..j + k].iter().map(|&c| (-c, c)));
        }
        SymSpace::BI { .. } | SymSpace::CI { .. } => {
            blocks.extend(word[..k].iter().map(|&a| (-a.abs(), a.abs())));
            let nd = nested_descents(&word[k..])?;
            for &(a, b) in &nd.ndes {
                if 0 < a && a < -b {
                    blocks.push((a, -b));
                }
            }
            blocks.extend(nd.nres.iter().filter(|&&a| a < 0).map(|&a| (a, -a)));
        }
        SymSpace::CII { .. } => {
            if k > n || (n - k) % 2 == 1 {
                return Err(malformed("into a prefix and letter pairs"));
            }
            blocks.extend(word[..k].iter().map(|&a| (-a.abs(), a.abs())));
            for pair in word[k..].chunks(2) {
                let (b, c) = (pair[0], pair[1]);
                if 0 < c && c < -b {
                    blocks.push((c, -b));
                }
            }
        }
        SymSpace::DI { .. } | SymSpace::DII { .. } => {
            blocks.extend(word[..k].iter().map(|&a| (-a.abs(), a.abs())));
            let nd = nested_descents(&word[k..])?;
            for &(a, b) in &nd.ndes {
                if a.abs() < -b {
                    blocks.push((a.abs(), -b));
                }
            }
        }
        SymSpace::DIII { .. } | SymSpace::DIV { .. } => {
            let start = n % 2;
            if start == 1 {
                blocks.push((-word[0].abs(), word[0].abs()));
            }
            for pair in word[start..].chunks(2) {
                let (b, c) = (pair[0], pair[1]);
                if b < 0 && 0 < c && c < -b {
                    blocks.push((c, -b));
                } else if b < c && c < 0 {
                    blocks.push((b, -b));
                    blocks.push((c, -c));
                }
            }
        }
    }
    signed_matching(blocks)
}

fn twisted_cycles(z: &WeylElement, m: &SignedMatching) -> Vec<(i32, i32)> {
    let degree = z.kind().degree() as i32;
    let mut pairs = m.arcs();
    for a in 1..=degree {
        let b = degree + 1 - z.apply(a);
        if a > b {
            pairs.push((a, b));
        }
    }
    pairs.sort_by_key(|&(a, b)| (b, a));
    pairs
}

/// The generator `⊥(z, M)` of the cell of `E(z)` indexed by `M`.
pub fn generator_bot(space: SymSpace, z: &WeylElement, m: &SignedMatching) -> Result<WeylElement> {
    if !matchings_for(space, z)?.contains(m) {
        return Err(Error::Matching(format!(
            "{m} is not in the matchings of {} for {space}",
            z.to_tagged_string()
        )));
    }
    let k = space.k();
    let base = base_involution(space, z)?;
    let cyc = |mode: AssembleMode| -> Result<Word> { Ok(assemble(&cyc_sets(&base, Some(m))?, mode)) };
    let mut triv = m.triv_set();
    triv.sort_unstable();
    let word: Word = match space {
        SymSpace::AI { .. } => assemble(&cyc_sets(z, None)?, AssembleMode::Des),
        SymSpace::AII { .. } => assemble(&cyc_sets(z, None)?, AssembleMode::Asc),
        SymSpace::AIII { .. } => {
            let pairs = twisted_cycles(z, m);
            let mut w: Word = pairs.iter().map(|&(_, b)| b).collect();
            w.extend(&triv);
            w.extend(pairs.iter().rev().map(|&(a, _)| a));
            w
        }
        SymSpace::BI { .. } => {
            let desc: Vec<i32> = triv.iter().rev().copied().collect();
            let mut w: Word = desc[..k].iter().rev().copied().collect();
            w.extend(desc[k..].iter().map(|c| -c));
            w.extend(cyc(AssembleMode::Des)?);
            w
        }
        SymSpace::CI { .. } => {
            let mut w: Word = triv.iter().rev().map(|c| -c).collect();
            w.extend(cyc(AssembleMode::Des)?);
            w
        }
        SymSpace::CII { .. } => {
            let mut w = triv.clone();
            w.extend(cyc(AssembleMode::Asc)?);
            w
        }
        SymSpace::DI { .. } | SymSpace::DII { .. } => {
            let mut w = triv.clone();
            w.extend(cyc(AssembleMode::Des)?);
            es_normalize(&w)?
        }
        SymSpace::DIII { .. } | SymSpace::DIV { .. } => {
            let mut w: Word = triv.iter().rev().map(|c| -c).collect();
            w.extend(cyc(AssembleMode::Asc)?);
            if twisted_by_t0(space) {
                es_normalize(&w)?
            } else {
                w
            }
        }
    };
    WeylElement::from_oneline(space.kind(), word)
}

/// The members of `Matchings(ψ(γ))` aligned with the orbit index `γ`.
pub fn aligned_matchings(space: SymSpace, index: &OrbitIndex) -> Result<Vec<SignedMatching>> {
    let z = rs_map(space, index)?;
    let all = matchings_for(space, &z)?;
    let Some(gamma) = index.as_clan() else {
        return Ok(all);
    };
    let mut out = Vec::new();
    for m in all {
        if is_gamma_aligned(&m, gamma)? && extra_alignment(space, gamma, &m) {
            out.push(m);
        }
    }
    Ok(out)
}

fn extra_alignment(space: SymSpace, gamma: &Clan, m: &SignedMatching) -> bool {
    let mut triv = m.triv_set();
    triv.sort_unstable();
    match space {
        SymSpace::BI { .. } => {
            let take = triv.len() - space.k();
            let mut signs = vec![gamma.is_plus(0)];
            signs.extend(triv[..take].iter().map(|&i| gamma.is_plus(i)));
            signs.windows(2).all(|p| p[0] != p[1])
        }
        SymSpace::DIII { .. } | SymSpace::DIV { .. } => {
            triv.chunks_exact(2).all(|p| gamma.is_plus(p[0]) == gamma.is_plus(p[1]))
        }
        _ => true,
    }
}

/// The value `d_z(w)` for an atom `w` of `E(z)`, without membership checks.
pub fn d_z_unchecked(space: SymSpace, z: &WeylElement, w: &WeylElement) -> Result<usize> {
    let n = z.kind().degree() as i32;
    let base = base_involution(space, z)?;
    let below = |range: &mut dyn Iterator<Item = i32>, pred: &dyn Fn(i32, i32) -> bool| -> i64 {
        range.filter(|&i| pred(i, base.apply(i))).count() as i64
    };
    let ell0 = w.ell0() as i64;
    let value = match space {
        SymSpace::AI { .. } => below(&mut (1..=n), &|i, zi| zi < i),
        SymSpace::BI { .. } => below(&mut (1..=n), &|i, zi| 0 < zi && zi < i) + ell0,
        SymSpace::CI { .. } => below(&mut (1..=n), &|i, zi| zi < i) - ell0,
        SymSpace::DI { .. } | SymSpace::DII { .. } => {
            let twice = below(&mut (-n..=n).filter(|&i| i != 0), &|i, zi| zi < i) - space.k() as i64;
            if twice % 2 != 0 {
                return Err(Error::Malformed(format!(
                    "d_z is not integral at {}",
                    z.to_tagged_string()
                )));
            }
            twice / 2
        }
        _ => 0,
    };
    usize::try_from(value).map_err(|_| {
        Error::Malformed(format!(
            "d_z is negative at {} for {}",
            z.to_tagged_string(),
            w.to_tagged_string()
        ))
    })
}

/// The value `d_z(w)`; fails when `w` is not an extended atom of `z`.
pub fn d_z(space: SymSpace, z: &WeylElement, w: &WeylElement) -> Result<usize> {
    if !extended_atoms(space, z)?.contains(w) {
        return Err(Error::InvalidElement(format!(
            "{} is not an atom of {}",
            w.to_tagged_string(),
            z.to_tagged_string()
        )));
    }
    d_z_unchecked(space, z, w)
}

/// One-line words of every element of a group.
pub fn group_words(kind: WeylKind) -> Result<HashSet<Word>> {
    Ok(enumerate_group(kind)?
        .into_iter()
        .map(WeylElement::into_oneline)
        .collect())
}

/// The closed-form atom set of one orbit, split into cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomDecomposition {
    /// The element `ψ(γ)` of the image.
    pub z: WeylElement,
    /// Cells `E(z, M)` keyed by their matching.
    pub cells: BTreeMap<SignedMatching, BTreeSet<WeylElement>>,
    /// The generator `⊥(z, M)` of each cell.
    pub generators: BTreeMap<SignedMatching, WeylElement>,
    /// The value `d_z(w)` of each atom.
    pub dz: BTreeMap<WeylElement, usize>,
}

impl AtomDecomposition {
    /// Every atom of every cell.
    pub fn atoms(&self) -> BTreeSet<WeylElement> {
        self.cells.values().flatten().cloned().collect()
    }
}

/// The cell `E(z, M)`: the up-set of `⊥(z, M)` inside the group.
pub fn cell(
    space: SymSpace,
    z: &WeylElement,
    m: &SignedMatching,
    universe: &HashSet<Word>,
) -> Result<BTreeSet<WeylElement>> {
    let bottom = generator_bot(space, z, m)?;
    up_set(space_order(space), bottom.oneline(), Some(universe))
        .into_iter()
        .map(|w| WeylElement::from_oneline(space.kind(), w))
        .collect()
}

/// The closed-form decomposition of the atoms of one orbit.
pub fn atoms_closed(space: SymSpace, index: &OrbitIndex) -> Result<AtomDecomposition> {
    atoms_closed_in(space, index, &group_words(space.kind())?)
}

/// [`atoms_closed`] with a precomputed group universe from [`group_words`].
pub fn atoms_closed_in(space: SymSpace, index: &OrbitIndex, universe: &HashSet<Word>) -> Result<AtomDecomposition> {
    let z = rs_map(space, index)?;
    let mut cells = BTreeMap::new();
    let mut generators = BTreeMap::new();
    let mut dz = BTreeMap::new();
    for m in aligned_matchings(space, index)? {
        let set = cell(space, &z, &m, universe)?;
        for w in &set {
            dz.insert(w.clone(), d_z_unchecked(space, &z, w)?);
        }
        generators.insert(m.clone(), generator_bot(space, &z, &m)?);
        cells.insert(m, set);
    }
    Ok(AtomDecomposition {
        z,
        cells,
        generators,
        dz,
    })
}

/// The injections relating atom sets of different type-D spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Embedding {
    /// `W⁺_n → W⁺_n`, negating alternate letters among the first `k`.
    Di { k: usize },
    /// `W⁺_n → W⁺_{n+1}`, inserting `n+1` after the first `k` letters.
    Dii { k: usize },
    /// `W⁺_n → W⁺_n` for even `n`, swapping the letters in each consecutive pair.
    Diii,
    /// `W⁺_n → W⁺_{n+1}` for odd `n`, prefixing `-(n+1)` and negating the old first letter.
    Div,
}

/// Applies an embedding to an even-signed permutation.
pub fn embed(variant: Embedding, w: &WeylElement) -> Result<WeylElement> {
    let WeylKind::D(n) = w.kind() else {
        return Err(Error::KindMismatch(w.kind().to_string(), "an even-signed group".into()));
    };
    let word = w.oneline();
    let top = n as i32 + 1;
    let (kind, out) = match variant {
        Embedding::Di { k } => {
            if k > n {
                return Err(Error::Parameter(format!("k = {k} exceeds n = {n}")));
            }
            let mut v = word.to_vec();
            for i in (2..=k).filter(|i| (k - i) % 2 == 0) {
                v[i - 1] = -v[i - 1];
            }
            if k % 4 >= 2 {
                v[0] = -v[0];
            }
            (WeylKind::D(n), v)
        }
        Embedding::Dii { k } => {
            if k > n {
                return Err(Error::Parameter(format!("k = {k} exceeds n = {n}")));
            }
            let mut v = word[..k].to_vec();
            v.push(top);
            v.extend(&word[k..]);
            (WeylKind::D(n + 1), v)
        }
        Embedding::Diii => {
            if n % 2 == 1 {
                return Err(Error::Parameter(format!("the pair swap needs n even, got {n}")));
            }
            let v = word.chunks(2).flat_map(|p| [p[1], p[0]]).collect();
            (WeylKind::D(n), v)
        }
        Embedding::Div => {
            if n % 2 == 0 {
                return Err(Error::Parameter(format!("the prefix map needs n odd, got {n}")));
            }
            let mut v = vec![-top];
            v.extend(word.iter().enumerate().map(|(i, &x)| if i == 0 { -x } else { x }));
            (WeylKind::D(n + 1), v)
        }
    };
    WeylElement::from_oneline(kind, out)
}

/// The element `y^∨ ∈ W⁺_{n+1}`: values `±1` negated and `n+1 ↦ -(n+1)`.
pub fn vee(y: &WeylElement) -> Result<WeylElement> {
    let WeylKind::D(n) = y.kind() else {
        return Err(Error::KindMismatch(y.kind().to_string(), "an even-signed group".into()));
    };
    let mut v = t0_left(y.oneline());
    v.push(-(n as i32) - 1);
    WeylElement::from_oneline(WeylKind::D(n + 1), v)
}

/// The clan `γ^∨` of rank `n+1` with `±(n+1)` added as signed points, and its space.
///
/// For DII both new points take the majority sign and the result lies in DI; for
/// DIV the point `n+1` is negative, `-(n+1)` is positive, and the result lies in DIII.
pub fn clan_vee(space: SymSpace, gamma: &Clan) -> Result<(SymSpace, Clan)> {
    let top = space.rank() as i32 + 1;
    let base = crate::clans::signed_base(space.rank() + 1, false);
    let (mut plus, mut minus) = (gamma.plus().to_vec(), gamma.minus().to_vec());
    let target = match space {
        SymSpace::DII { p, q } => {
            if p >= q {
                plus.extend([-top, top]);
                SymSpace::DI { p: p + 2, q }
            } else {
                minus.extend([-top, top]);
                SymSpace::DI { p, q: q + 2 }
            }
        }
        SymSpace::DIV { n } => {
            plus.push(-top);
            minus.push(top);
            SymSpace::DIII { n: n + 1 }
        }
        _ => return Err(Error::Parameter(format!("no vee construction for {space}"))),
    };
    Ok((
        target.validate()?,
        Clan::new(base, plus, minus, gamma.matching().to_vec())?,
    ))
}

/// Closed-form classification of an orbit index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    /// Whether `d_γ` vanishes on every atom.
    pub multiplicity_free: bool,
    /// Whether `Matchings(ψ(γ))` has exactly one member.
    pub uniform: bool,
    /// Whether the signs of consecutive nonnegative points alternate.
    pub alternating: bool,
}

/// Whether `d_z` vanishes on `E(z)`, decided from `z` alone.
pub fn dz_vanishes(space: SymSpace, z: &WeylElement) -> Result<bool> {
    check_image(space, z)?;
    let n = z.kind().rank() as i32;
    let absolute = (1..=n).all(|i| z.apply(i).abs() == i);
    let neg = |w: &WeylElement| negate_set(w).len();
    Ok(match space {
        SymSpace::AI { .. } => z.is_identity(),
        SymSpace::BI { .. } | SymSpace::DI { .. } => neg(z) == space.k() && absolute,
        SymSpace::CI { .. } => neg(z) <= 1 && absolute,
        SymSpace::DII { .. } => neg(&base_involution(space, z)?) == space.k() && absolute,
        _ => true,
    })
}

/// Classifies an orbit index as multiplicity-free, uniform, and alternating.
pub fn classify(space: SymSpace, index: &OrbitIndex) -> Result<Classification> {
    let z = rs_map(space, index)?;
    let Some(gamma) = index.as_clan() else {
        return Ok(Classification {
            multiplicity_free: dz_vanishes(space, &z)?,
            uniform: true,
            alternating: true,
        });
    };
    let points = gamma.points();
    let count = points.len();
    let k = space.k();
    let positive = points.iter().filter(|&&x| x > 0).count();
    let uniform = match space {
        SymSpace::AIII { .. } => count == k || (k == 0 && count == 2),
        SymSpace::BI { .. } => positive == k || positive == k + 1,
        SymSpace::CII { .. } | SymSpace::DI { .. } | SymSpace::DII { .. } => positive == k || (k == 0 && positive == 2),
        SymSpace::CI { .. } => count == 0 || count == 2,
        SymSpace::DIII { .. } => count == 0 || count == 4,
        SymSpace::DIV { .. } => count == 2,
        SymSpace::AI { .. } | SymSpace::AII { .. } => true,
    };
    let alternating = match space {
        SymSpace::DIII { .. } | SymSpace::DIV { .. } => count <= 2,
        _ => {
            let nonneg: Vec<i32> = points.into_iter().filter(|&x| x >= 0).collect();
            nonneg.windows(2).all(|p| gamma.is_plus(p[0]) != gamma.is_plus(p[1]))
        }
    };
    let multiplicity_free = match space {
        SymSpace::CI { .. } => {
            let one_sided = gamma.plus().iter().all(|&x| x > 0) || gamma.minus().iter().all(|&x| x > 0);
            one_sided && gamma.matching().iter().all(|&(a, b)| a + b == 0)
        }
        _ => dz_vanishes(space, &z)?,
    };
    Ok(Classification {
        multiplicity_free,
        uniform,
        alternating,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clans::{enumerate_clans, parse_symbols, SPACE_NAMES};
    use crate::coxeter::{twisted_involutions, NamedElement};
    use crate::weak_order::build_graph;

    fn el(kind: WeylKind, v: &[i32]) -> WeylElement {
        WeylElement::from_oneline(kind, v.to_vec()).unwrap()
    }

    fn spaces_up_to(n: usize) -> Vec<SymSpace> {
        (1..=n)
            .flat_map(|r| {
                SPACE_NAMES
                    .iter()
                    .flat_map(move |name| SymSpace::all_with_rank(name, r))
            })
            .collect()
    }

    #[test]
    fn e_theta_examples() {
        let a1 = WeylKind::A(1);
        let id = WeylElement::identity(a1);
        let t1 = el(a1, &[2, 1]);
        assert_eq!(
            e_theta(Automorphism::Identity, &id, &id).unwrap(),
            BTreeSet::from([id.clone()])
        );
        assert_eq!(e_theta(Automorphism::Identity, &id, &t1).unwrap(), BTreeSet::from([t1]));
        let a2 = WeylKind::A(2);
        let w0 = el(a2, &[3, 2, 1]);
        assert_eq!(
            e_theta(Automorphism::Identity, &WeylElement::identity(a2), &w0)
                .unwrap()
                .len(),
            2
        );
        let bad = el(a2, &[2, 3, 1]);
        assert!(e_theta(Automorphism::Identity, &WeylElement::identity(a2), &bad).is_err());
    }

    #[test]
    fn e_theta_matches_full_scan() {
        for space in spaces_up_to(3) {
            let y = dense_image(space).unwrap();
            let table = e_theta_table(space.theta(), &y).unwrap();
            for z in twisted_involutions(space.kind(), space.theta()).unwrap() {
                let oracle = e_theta_oracle(space.theta(), &y, &z).unwrap();
                assert_eq!(table.get(&z).cloned().unwrap_or_default(), oracle, "{space} {z}");
            }
        }
    }

    #[test]
    fn extended_atoms_of_identity() {
        let space = SymSpace::AI { n: 2 };
        let id = WeylElement::identity(space.kind());
        assert_eq!(extended_atoms(space, &id).unwrap(), BTreeSet::from([id]));
    }

    #[test]
    fn shape_examples() {
        let ci = SymSpace::CI { n: 2 };
        let m = shape(ci, &el(ci.kind(), &[-2, -1])).unwrap();
        assert_eq!(m, SignedMatching::new(vec![1, 2], vec![(-1, 1), (-2, 2)]).unwrap());
        let ai = SymSpace::AI { n: 2 };
        assert_eq!(shape(ai, &el(ai.kind(), &[3, 1, 2])).unwrap(), SignedMatching::empty());
    }

    #[test]
    fn generator_examples() {
        let ai = SymSpace::AI { n: 4 };
        let z = el(ai.kind(), &[5, 2, 4, 3, 1]);
        let bot = generator_bot(ai, &z, &SignedMatching::empty()).unwrap();
        assert_eq!(bot.oneline(), &[2, 4, 3, 5, 1]);
        let aii = SymSpace::AII { n: 3 };
        let z = el(aii.kind(), &[2, 1, 4, 3]);
        assert!(generator_bot(aii, &z, &SignedMatching::empty()).unwrap().is_identity());
        let ci = SymSpace::CI { n: 2 };
        let z = el(ci.kind(), &[-1, -2]);
        let m = SignedMatching::all_trivial(&[1, 2]).unwrap();
        assert_eq!(generator_bot(ci, &z, &m).unwrap().oneline(), &[-2, -1]);
        let other = SignedMatching::new(vec![1, 2], vec![(1, 2)]).unwrap();
        assert_eq!(generator_bot(ci, &z, &other).unwrap().oneline(), &[1, -2]);
        let not_admissible = SignedMatching::all_trivial(&[1]).unwrap();
        assert!(generator_bot(ci, &z, &not_admissible).is_err());
    }

    #[test]
    fn matching_families() {
        let ai = SymSpace::AI { n: 2 };
        let id = WeylElement::identity(ai.kind());
        assert_eq!(matchings_for(ai, &id).unwrap(), vec![SignedMatching::empty()]);
        for space in [SymSpace::DIV { n: 3 }, SymSpace::DIII { n: 4 }] {
            for z in crate::clans::rs_image(space).unwrap() {
                for m in matchings_for(space, &z).unwrap() {
                    match space {
                        SymSpace::DIV { .. } => assert_eq!(m.triv() % 2, 1),
                        _ => assert_eq!(m.triv() % 4, z.ell0() % 4),
                    }
                }
            }
        }
    }

    #[test]
    fn d_z_examples() {
        let ai = SymSpace::AI { n: 2 };
        let z = el(ai.kind(), &[3, 2, 1]);
        for w in extended_atoms(ai, &z).unwrap() {
            assert_eq!(d_z(ai, &z, &w).unwrap(), 1);
        }
        assert!(d_z(ai, &z, &WeylElement::identity(ai.kind())).is_err());
        let aii = SymSpace::AII { n: 3 };
        for z in crate::clans::rs_image(aii).unwrap() {
            for w in extended_atoms(aii, &z).unwrap() {
                assert_eq!(d_z(aii, &z, &w).unwrap(), 0);
            }
        }
    }

    #[test]
    fn closed_form_matches_bfs() {
        for space in spaces_up_to(3) {
            let graph = build_graph(space).unwrap();
            let table = graph.atoms_bfs();
            let universe = group_words(space.kind()).unwrap();
            for (v, index) in graph.vertices().iter().enumerate() {
                let closed = atoms_closed_in(space, index, &universe).unwrap();
                assert!(!closed.cells.is_empty(), "{space} {index} has no aligned matching");
                assert_eq!(&closed.dz, table.atoms(v), "{space} {index}");
            }
        }
    }

    #[test]
    fn dense_orbit_is_one_cell_with_identity() {
        for space in spaces_up_to(3) {
            let dense = crate::clans::dense_clan(space).unwrap();
            let closed = atoms_closed(space, &dense).unwrap();
            assert_eq!(closed.cells.len(), 1, "{space}");
            assert!(closed.atoms().contains(&WeylElement::identity(space.kind())), "{space}");
        }
    }

    #[test]
    fn cells_partition_extended_atoms() {
        for space in spaces_up_to(3) {
            let universe = group_words(space.kind()).unwrap();
            for (z, atoms) in extended_atom_table(space).unwrap() {
                let mut union = BTreeSet::new();
                let mut total = 0;
                for m in matchings_for(space, &z).unwrap() {
                    let c = cell(space, &z, &m, &universe).unwrap();
                    for w in &c {
                        assert_eq!(shape(space, w).unwrap(), m, "{space} {z} {w}");
                    }
                    total += c.len();
                    union.extend(c);
                }
                assert_eq!(total, union.len(), "{space} {z}: cells overlap");
                assert_eq!(union, atoms, "{space} {z}");
            }
        }
    }

    #[test]
    fn cells_are_graded() {
        for space in spaces_up_to(3) {
            let universe = group_words(space.kind()).unwrap();
            let order = space_order(space);
            for z in crate::clans::rs_image(space).unwrap() {
                for m in matchings_for(space, &z).unwrap() {
                    for w in cell(space, &z, &m, &universe).unwrap() {
                        let r = declared_rank(space, w.oneline()).unwrap();
                        for up in order.covers(w.oneline()).into_iter().filter(|u| universe.contains(u)) {
                            assert_eq!(declared_rank(space, &up).unwrap(), r + 1, "{space} {w} -> {up:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn embedding_examples() {
        let w = el(WeylKind::D(2), &[1, 2]);
        assert_eq!(embed(Embedding::Diii, &w).unwrap().oneline(), &[2, 1]);
        let y = el(WeylKind::D(3), &[1, -3, -2]);
        let v = vee(&y).unwrap();
        assert_eq!(v.oneline(), &[-1, -3, -2, -4]);
        assert!(embed(Embedding::Div, &w).is_err());
        assert!(embed(Embedding::Di { k: 3 }, &w).is_err());
    }

    #[test]
    fn embed_di_image_characterization() {
        for n in 2..=4 {
            let kind = WeylKind::D(n);
            let id = WeylElement::identity(kind);
            let full = e_theta_table(Automorphism::Identity, &id).unwrap();
            for k in 0..=n {
                let y = named_element_d(kind, k);
                let part = e_theta_table(Automorphism::Identity, &y).unwrap();
                for (z, atoms) in &full {
                    let chain: BTreeSet<WeylElement> =
                        atoms.iter().filter(|w| di_chain(w.oneline(), k)).cloned().collect();
                    let image: BTreeSet<WeylElement> = part
                        .get(z)
                        .map(|s| s.iter().map(|w| embed(Embedding::Di { k }, w).unwrap()).collect())
                        .unwrap_or_default();
                    assert_eq!(image, chain, "n={n} k={k} z={z}");
                }
            }
        }
    }

    fn named_element_d(kind: WeylKind, k: usize) -> WeylElement {
        crate::coxeter::named_element(kind, NamedElement::SigmaHat(k)).unwrap()
    }

    fn di_chain(w: &[i32], k: usize) -> bool {
        if k < 2 {
            return true;
        }
        let mut seq = vec![w[0].abs()];
        for i in 2..=k {
            let sign = if (k + i - 1).is_multiple_of(2) { 1 } else { -1 };
            seq.push(sign * w[i - 1]);
        }
        seq.windows(2).all(|p| p[0] < p[1])
    }

    #[test]
    fn embed_dii_and_div_transport_orbits() {
        let cases = [
            SymSpace::DII { p: 1, q: 3 },
            SymSpace::DII { p: 3, q: 1 },
            SymSpace::DIV { n: 3 },
        ];
        for space in cases {
            let graph = build_graph(space).unwrap();
            let table = graph.atoms_bfs();
            for (v, index) in graph.vertices().iter().enumerate() {
                let gamma = index.as_clan().unwrap();
                let (target, up) = clan_vee(space, gamma).unwrap();
                let z = rs_map(space, index).unwrap();
                assert_eq!(rs_map(target, &OrbitIndex::Clan(up.clone())).unwrap(), vee(&z).unwrap());
                let variant = match space {
                    SymSpace::DII { .. } => Embedding::Dii { k: space.k() },
                    _ => Embedding::Div,
                };
                let lifted = atoms_closed(target, &OrbitIndex::Clan(up)).unwrap().atoms();
                let image: BTreeSet<WeylElement> = table.atoms(v).keys().map(|w| embed(variant, w).unwrap()).collect();
                let marker = |w: &WeylElement| match variant {
                    Embedding::Dii { k } => w.oneline()[k] == target.rank() as i32,
                    _ => w.oneline()[0] == -(target.rank() as i32),
                };
                let expected: BTreeSet<WeylElement> = lifted.into_iter().filter(marker).collect();
                assert_eq!(image, expected, "{space} {index}");
            }
        }
    }

    #[test]
    fn embed_diii_matches_descent_condition() {
        for n in [2, 4] {
            let kind = WeylKind::D(n);
            let id = WeylElement::identity(kind);
            let fpf = dense_image(SymSpace::DIII { n }).unwrap();
            let full = e_theta_table(Automorphism::Identity, &id).unwrap();
            let part = e_theta_table(Automorphism::Identity, &fpf).unwrap();
            for (z, atoms) in &part {
                let image: BTreeSet<WeylElement> = atoms.iter().map(|w| embed(Embedding::Diii, w).unwrap()).collect();
                let expected: BTreeSet<WeylElement> = full[z]
                    .iter()
                    .filter(|w| w.oneline().chunks(2).all(|p| p[0] > p[1]))
                    .cloned()
                    .collect();
                assert_eq!(image, expected, "n={n} z={z}");
            }
        }
    }

    #[test]
    fn classification_examples() {
        let ci = SymSpace::CI { n: 3 };
        assert!(dz_vanishes(ci, &el(ci.kind(), &[-1, 2, 3])).unwrap());
        assert!(!dz_vanishes(ci, &el(ci.kind(), &[-1, -2, 3])).unwrap());
        let aiii = SymSpace::AIII { p: 3, q: 1 };
        for index in enumerate_clans(aiii).unwrap() {
            let c = classify(aiii, &index).unwrap();
            assert_eq!(c.uniform, index.as_clan().unwrap().points().len() == 2);
        }
        let gamma = Clan::from_one_line(&[1, 2, 3, 4], &parse_symbols("(+,-,+,-)").unwrap()).unwrap();
        let c = classify(SymSpace::AIII { p: 2, q: 2 }, &OrbitIndex::Clan(gamma)).unwrap();
        assert!(c.alternating && !c.uniform);
    }

    #[test]
    fn classification_matches_brute_force() {
        for space in spaces_up_to(3) {
            let graph = build_graph(space).unwrap();
            let table = graph.atoms_bfs();
            let full = extended_atom_table(space).unwrap();
            for (v, index) in graph.vertices().iter().enumerate() {
                let c = classify(space, index).unwrap();
                let z = rs_map(space, index).unwrap();
                let atoms: BTreeSet<WeylElement> = table.atoms(v).keys().cloned().collect();
                assert_eq!(
                    c.multiplicity_free,
                    table.atoms(v).values().all(|&d| d == 0),
                    "{space} {index}"
                );
                assert_eq!(
                    c.uniform,
                    matchings_for(space, &z).unwrap().len() == 1,
                    "{space} {index}"
                );
                assert_eq!(c.uniform || c.alternating, atoms == full[&z], "{space} {index}");
            }
        }
    }
}
