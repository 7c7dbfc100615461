//! Word-level calculus on finite integer sequences.
//!
//! Words are plain `Vec<i32>` values. This module provides deduplication,
//! cycle-set assembly, nested descents, the word orders used to generate atom
//! sets, well-nestedness tests, and the rank functions that grade those orders.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::coxeter::{WeylElement, WeylKind};
use crate::error::{Error, Result};
use crate::matchings::SignedMatching;

/// A finite sequence of integers.
pub type Word = Vec<i32>;

/// A set of ordered integer pairs, kept as a sorted vector.
pub type PairSet = Vec<(i32, i32)>;

/// Removes every repeated letter, keeping first occurrences from left to right.
pub fn dedup(w: &[i32]) -> Word {
    let mut seen = HashSet::new();
    w.iter().copied().filter(|x| seen.insert(*x)).collect()
}

/// How the pairs of a [`PairSet`] are interleaved by [`assemble`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AssembleMode {
    /// Each pair `(a, b)` contributes `b a`.
    Des,
    /// Each pair `(a, b)` contributes `a b`.
    Asc,
}

/// Sorts the pairs `(a, b)` by `b` then `a`, interleaves them, and deduplicates.
pub fn assemble(pairs: &[(i32, i32)], mode: AssembleMode) -> Word {
    let mut sorted = pairs.to_vec();
    sorted.sort_by_key(|&(a, b)| (b, a));
    let mut letters = Vec::with_capacity(2 * sorted.len());
    for (a, b) in sorted {
        match mode {
            AssembleMode::Des => letters.extend([b, a]),
            AssembleMode::Asc => letters.extend([a, b]),
        }
    }
    dedup(&letters)
}

/// Cycle pairs of an involution, optionally extended by the arcs of a matching.
///
/// For type A this is `{(a, b) : a <= b = z(a)}`. For signed kinds it is the set of
/// `(a, b)` with `|a| < z(a) = b` together with `(c, c)` for fixed points `c > 0`.
/// Each arc `{a < b}` of `matching` adds the pair `(-b, a)`.
pub fn cyc_sets(z: &WeylElement, matching: Option<&SignedMatching>) -> Result<PairSet> {
    if !z.is_involution() {
        return Err(Error::InvalidElement(format!("{z} is not an involution")));
    }
    let n = z.kind().degree() as i32;
    let mut out = Vec::new();
    if z.kind().is_signed() {
        for a in (-n..=n).filter(|&a| a != 0) {
            let b = z.apply(a);
            if a.abs() < b || (a > 0 && a == b) {
                out.push((a, b));
            }
        }
        if let Some(m) = matching {
            let negate: BTreeSet<i32> = (1..=n).filter(|&i| z.apply(i) == -i).collect();
            if !m.support().iter().all(|x| negate.contains(x)) {
                return Err(Error::Matching(format!(
                    "support of the matching is not contained in the negated points of {z}"
                )));
            }
            out.extend(m.arcs().iter().map(|&(a, b)| (-b, a)));
        }
    } else {
        if matching.is_some_and(|m| !m.blocks().is_empty()) {
            return Err(Error::Matching("type A cycle sets take no matching".into()));
        }
        for a in 1..=n {
            let b = z.apply(a);
            if a <= b {
                out.push((a, b));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn check_distinct(w: &[i32]) -> Result<()> {
    let set: HashSet<i32> = w.iter().copied().collect();
    if set.len() != w.len() {
        return Err(Error::RepeatedLetter(format_word_letters(w)));
    }
    Ok(())
}

/// Formats a word as a bracketed list such as `[2,-1,3]`.
pub fn format_word_letters(w: &[i32]) -> String {
    let body: Vec<String> = w.iter().map(|x| x.to_string()).collect();
    format!("[{}]", body.join(","))
}

/// Nested descents and nested residue of a partial permutation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestedDescents {
    /// Removed descent pairs `(w_i, w_{i+1})`, sorted.
    pub ndes: PairSet,
    /// Letters left once no descent remains, sorted.
    pub nres: Vec<i32>,
}

/// Computes `NDes(w)` and `NRes(w)` by repeatedly removing the first descent.
pub fn nested_descents(w: &[i32]) -> Result<NestedDescents> {
    check_distinct(w)?;
    Ok(nested_descents_with(w, |word| {
        word.windows(2).position(|p| p[0] > p[1])
    }))
}

/// Computes nested descents while letting `choose` pick which descent to remove.
///
/// `choose` receives the current word and returns the position of a descent, or
/// `None` to stop. This is used to test that the result is independent of the order
/// of removal inside well-nested families.
pub fn nested_descents_with<F>(w: &[i32], mut choose: F) -> NestedDescents
where
    F: FnMut(&[i32]) -> Option<usize>,
{
    let mut word = w.to_vec();
    let mut ndes = Vec::new();
    while let Some(i) = choose(&word) {
        debug_assert!(word[i] > word[i + 1]);
        ndes.push((word[i], word[i + 1]));
        word.drain(i..i + 2);
    }
    ndes.sort_unstable();
    word.sort_unstable();
    NestedDescents { ndes, nres: word }
}

/// Signed nested descents `NDes^±(w)`.
///
/// Starts from `NDes(w)`, pairs the negative residues `a_1 < a_2 < ...` as
/// `(a_1, a_2), (a_3, a_4), ...`, and when their count `p` is odd also adds
/// `(a_p, b_1)` if a positive residue `b_1` exists with `|a_p| > b_1`.
pub fn ndes_pm(w: &[i32]) -> Result<PairSet> {
    let NestedDescents { mut ndes, nres } = nested_descents(w)?;
    let neg: Vec<i32> = nres.iter().copied().filter(|&x| x < 0).collect();
    let pos: Vec<i32> = nres.iter().copied().filter(|&x| x > 0).collect();
    for pair in neg.chunks_exact(2) {
        ndes.push((pair[0], pair[1]));
    }
    if neg.len() % 2 == 1 {
        let last = *neg.last().expect("odd length is nonzero");
        if let Some(&b1) = pos.first() {
            if last.abs() > b1 {
                ndes.push((last, b1));
            }
        }
    }
    ndes.sort_unstable();
    Ok(ndes)
}

/// Counts pairs `i < j` with `w_i > w_j`.
pub fn inv(w: &[i32]) -> usize {
    let mut count = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                count += 1;
            }
        }
    }
    count
}

/// Counts negative letters.
pub fn ell0(w: &[i32]) -> usize {
    w.iter().filter(|&&x| x < 0).count()
}

/// Splits a partial permutation into `w_R` (second letters of `NDes(w)`) and `w_L`.
pub fn split_right_left(w: &[i32]) -> Result<(Word, Word)> {
    let nd = nested_descents(w)?;
    let right: HashSet<i32> = nd.ndes.iter().map(|&(_, a)| a).collect();
    Ok(w.iter().copied().partition(|x| right.contains(x)))
}

/// Rank of `w` inside its well-nested family: `inv(w_L) - inv(w_R)`.
pub fn pdes_rank(w: &[i32]) -> Result<i64> {
    let (r, l) = split_right_left(w)?;
    Ok(inv(&l) as i64 - inv(&r) as i64)
}

/// Minimal element below `w` in a well-nested family.
///
/// This assembles `{(a, b) : (b, a) in NDes(w)}` and `{(c, c) : c in NRes(w)}` in
/// descending mode.
pub fn pdes_bottom(w: &[i32]) -> Result<Word> {
    let nd = nested_descents(w)?;
    let mut pairs: PairSet = nd.ndes.iter().map(|&(b, a)| (a, b)).collect();
    pairs.extend(nd.nres.iter().map(|&c| (c, c)));
    Ok(assemble(&pairs, AssembleMode::Des))
}

/// The even-signed rank function `rank_D^k`.
///
/// For `k = 0` this is `(inv(w_L^±) - ell0(w)) / 2 - inv(w_R)`, where `w_R` keeps the
/// second letters of `NDes^±(w)` and `w_L^±` is the mirrored complement. The
/// bracket can be odd when `w` has odd length; the half is then rounded down,
/// which shifts every rank of such a family by the same amount. For `k > 0` it is
/// `rank_D(w_{k+1}...w_n) + ell0(w_{k+1}...w_n)`.
pub fn rank_d(w: &[i32], k: usize) -> Result<i64> {
    let abs: HashSet<i32> = w.iter().map(|x| x.abs()).collect();
    if abs.len() != w.len() || abs.contains(&0) {
        return Err(Error::Malformed(format!(
            "{} does not have distinct nonzero absolute values",
            format_word_letters(w)
        )));
    }
    if k > w.len() {
        return Err(Error::Malformed(format!(
            "prefix length {k} exceeds the word {}",
            format_word_letters(w)
        )));
    }
    if k > 0 {
        let tail = &w[k..];
        return Ok(rank_d(tail, 0)? + ell0(tail) as i64);
    }
    let right: HashSet<i32> = ndes_pm(w)?.iter().map(|&(_, a)| a).collect();
    let w_r: Word = w.iter().copied().filter(|x| right.contains(x)).collect();
    let left: Word = w.iter().copied().filter(|x| !right.contains(x)).collect();
    let mut w_l: Word = left.iter().rev().map(|x| -x).collect();
    w_l.extend(left.iter().copied());
    let twice = inv(&w_l) as i64 - ell0(w) as i64;
    Ok(twice.div_euclid(2) - inv(&w_r) as i64)
}

/// Standardization: the permutation of `[n]` order-isomorphic to `w`.
pub fn standardize(w: &[i32]) -> Result<WeylElement> {
    check_distinct(w)?;
    let mut sorted = w.to_vec();
    sorted.sort_unstable();
    let oneline = w
        .iter()
        .map(|x| sorted.binary_search(x).expect("letter present") as i32 + 1)
        .collect();
    if w.is_empty() {
        return Err(Error::Malformed("cannot standardize the empty word".into()));
    }
    WeylElement::from_oneline(WeylKind::A(w.len() - 1), oneline)
}

/// Whether `w_i > w_{i+1} > w_{i+2}` for some `i`.
pub fn has_consecutive_321(w: &[i32]) -> bool {
    w.windows(3).any(|t| t[0] > t[1] && t[1] > t[2])
}

/// The word orders used to describe atom sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WordOrder {
    /// `u B C A v -> u C A B v` with `A < B < C` and `len(u) >= k`.
    PrecSim(usize),
    /// `u B C A D v -> u A D B C v` with `A < B < C < D` and `len(u)` in `k + 2N`.
    PrecApprox(usize),
    /// `PrecSim(0)` together with `-B C A v -> -C A B v` at the start of the word.
    PrecSimD,
    /// `PrecSimD` together with `u A -B v C -D w -> u A -D v B -C w` for
    /// `0 < |A| < B < C < D` when every letter of `u` and `v` is smaller than `B`
    /// in absolute value.
    LlD,
    /// `u1 B1 B2 v A2 A1 u2 -> u1 B2 B1 v A1 A2 u2` with `A1 < A2`, `B1 < B2`,
    /// `len(u1) = len(u2)`, and `len(v) >= k`.
    PrecAiii(usize),
    /// For `k = 0` this is `PrecSimD`. For `k > 0` it is `PrecSim(k)` together with
    /// negating both `w_1` and `w_{k+1}` whenever `0 < w_{k+1} < |w_1|`.
    PrecSimDi(usize),
}

impl WordOrder {
    /// All words reachable from `w` by a single covering move.
    pub fn covers(&self, w: &[i32]) -> Vec<Word> {
        let mut out = Vec::new();
        match *self {
            WordOrder::PrecSim(k) => precsim_moves(w, k, &mut out),
            WordOrder::PrecApprox(k) => {
                let mut start = k;
                while start + 4 <= w.len() {
                    let (b, c, a, d) = (w[start], w[start + 1], w[start + 2], w[start + 3]);
                    if a < b && b < c && c < d {
                        let mut v = w.to_vec();
                        v[start..start + 4].copy_from_slice(&[a, d, b, c]);
                        out.push(v);
                    }
                    start += 2;
                }
            }
            WordOrder::PrecSimD => precsim_d_moves(w, &mut out),
            WordOrder::LlD => {
                precsim_d_moves(w, &mut out);
                lld_moves(w, &mut out);
            }
            WordOrder::PrecAiii(k) => {
                let m = w.len();
                let mut i = 0;
                while 2 * i + 4 + k <= m {
                    let j = m - i - 2;
                    if j < i + 2 + k {
                        break;
                    }
                    let (b1, b2, a2, a1) = (w[i], w[i + 1], w[j], w[j + 1]);
                    if b1 < b2 && a1 < a2 {
                        let mut v = w.to_vec();
                        v[i] = b2;
                        v[i + 1] = b1;
                        v[j] = a1;
                        v[j + 1] = a2;
                        out.push(v);
                    }
                    i += 1;
                }
            }
            WordOrder::PrecSimDi(0) => precsim_d_moves(w, &mut out),
            WordOrder::PrecSimDi(k) => {
                precsim_moves(w, k, &mut out);
                if w.len() > k && 0 < w[k] && w[k] < w[0].abs() {
                    let mut v = w.to_vec();
                    v[0] = -v[0];
                    v[k] = -v[k];
                    out.push(v);
                }
            }
        }
        out
    }
}

fn precsim_moves(w: &[i32], k: usize, out: &mut Vec<Word>) {
    for start in k..w.len().saturating_sub(2) {
        let (b, c, a) = (w[start], w[start + 1], w[start + 2]);
        if a < b && b < c {
            let mut v = w.to_vec();
            v[start..start + 3].copy_from_slice(&[c, a, b]);
            out.push(v);
        }
    }
}

fn precsim_d_moves(w: &[i32], out: &mut Vec<Word>) {
    precsim_moves(w, 0, out);
    if w.len() >= 3 {
        let (b, c, a) = (-w[0], w[1], w[2]);
        if a < b && b < c {
            let mut v = w.to_vec();
            v[..3].copy_from_slice(&[-c, a, b]);
            out.push(v);
        }
    }
}

fn lld_moves(w: &[i32], out: &mut Vec<Word>) {
    let m = w.len();
    for i in 0..m.saturating_sub(3) {
        let a = w[i];
        let b = -w[i + 1];
        if a.abs() >= b || w[..i].iter().any(|x| x.abs() >= b) {
            continue;
        }
        for j in i + 2..m - 1 {
            let (c, d) = (w[j], -w[j + 1]);
            if b < c && c < d {
                let mut v = w.to_vec();
                v[i + 1] = -d;
                v[j] = b;
                v[j + 1] = -c;
                out.push(v);
            }
            if w[j].abs() >= b {
                break;
            }
        }
    }
}

/// Whether `v` is reachable from `u` by covering moves of `order`.
pub fn order_leq(order: WordOrder, u: &[i32], v: &[i32]) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch(u.len(), v.len()));
    }
    let mut seen: HashSet<Word> = HashSet::from([u.to_vec()]);
    let mut queue = VecDeque::from([u.to_vec()]);
    while let Some(w) = queue.pop_front() {
        if w == v {
            return Ok(true);
        }
        for next in order.covers(&w) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

/// Every word of `universe` reachable from `u` through words of `universe`.
///
/// When `universe` is `None` the search is unrestricted.
pub fn up_set(order: WordOrder, u: &[i32], universe: Option<&HashSet<Word>>) -> BTreeSet<Word> {
    let allowed = |w: &Word| universe.is_none_or(|set| set.contains(w));
    let mut seen = BTreeSet::new();
    if !allowed(&u.to_vec()) {
        return seen;
    }
    seen.insert(u.to_vec());
    let mut queue = VecDeque::from([u.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for next in order.covers(&w) {
            if allowed(&next) && !seen.contains(&next) {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    seen
}

/// Whether `family` contains every single-move successor of its members.
pub fn is_upward_closed(order: WordOrder, family: &HashSet<Word>) -> bool {
    family
        .iter()
        .all(|w| order.covers(w).iter().all(|v| family.contains(v)))
}

fn precsim_lower_covers(w: &[i32]) -> Vec<Word> {
    let mut out = Vec::new();
    for start in 0..w.len().saturating_sub(2) {
        let (c, a, b) = (w[start], w[start + 1], w[start + 2]);
        if a < b && b < c {
            let mut v = w.to_vec();
            v[start..start + 3].copy_from_slice(&[b, c, a]);
            out.push(v);
        }
    }
    out
}

/// Whether `family` is a well-nested family of partial permutations.
///
/// Every member must have distinct letters and no consecutive 321 pattern,
/// and the family must be closed under `PrecSim(0)` in both directions.
pub fn well_nested_check(family: &HashSet<Word>) -> bool {
    family
        .iter()
        .all(|w| check_distinct(w).is_ok() && !has_consecutive_321(w))
        && is_upward_closed(WordOrder::PrecSim(0), family)
        && family
            .iter()
            .all(|w| precsim_lower_covers(w).iter().all(|v| family.contains(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn digits(s: &str) -> Word {
        s.chars().map(|c| c.to_digit(10).unwrap() as i32).collect()
    }

    fn family_e() -> HashSet<Word> {
        ["45362", "45623", "46253", "53462", "53624", "56234", "62453", "62534"]
            .iter()
            .map(|s| digits(s))
            .collect()
    }

    #[test]
    fn dedup_examples() {
        assert_eq!(dedup(&[2, -1, 3, 3, 5, 4, 2, 5, 3, 4]), vec![2, -1, 3, 5, 4]);
        assert_eq!(dedup(&[1, 1, 1]), vec![1]);
        assert_eq!(dedup(&[3, 1, 2]), vec![3, 1, 2]);
    }

    #[test]
    fn assemble_and_cycles() {
        let z = WeylElement::from_oneline(WeylKind::A(4), digits("52431")).unwrap();
        let cyc = cyc_sets(&z, None).unwrap();
        assert_eq!(cyc, vec![(1, 5), (2, 2), (3, 4)]);
        assert_eq!(assemble(&cyc, AssembleMode::Des), digits("24351"));
        assert_eq!(assemble(&cyc, AssembleMode::Asc), digits("23415"));
        assert_eq!(assemble(&[(7, 7)], AssembleMode::Des), vec![7]);

        let z = WeylElement::from_oneline(WeylKind::BC(6), vec![1, -2, 6, -5, -4, 3]).unwrap();
        assert_eq!(cyc_sets(&z, None).unwrap(), vec![(-4, 5), (1, 1), (3, 6)]);
        let id = WeylElement::identity(WeylKind::A(2));
        assert_eq!(cyc_sets(&id, None).unwrap(), vec![(1, 1), (2, 2), (3, 3)]);

        let z = WeylElement::from_oneline(WeylKind::BC(3), vec![-1, -2, 3]).unwrap();
        let m = SignedMatching::new(vec![1, 2], vec![(1, 2)]).unwrap();
        assert_eq!(cyc_sets(&z, Some(&m)).unwrap(), vec![(-2, 1), (3, 3)]);
        let bad = SignedMatching::new(vec![2, 3], vec![(2, 3)]).unwrap();
        assert!(cyc_sets(&z, Some(&bad)).is_err());
    }

    #[test]
    fn nested_descent_examples() {
        let nd = nested_descents(&digits("45362")).unwrap();
        assert_eq!(nd.ndes, vec![(5, 3), (6, 2)]);
        assert_eq!(nd.nres, vec![4]);
        let (r, l) = split_right_left(&digits("45362")).unwrap();
        assert_eq!((r, l), (vec![3, 2], vec![4, 5, 6]));

        let v = vec![1, 6, -5, -2, 3, 4, 8, 7];
        let nd = nested_descents(&v).unwrap();
        assert_eq!(nd.nres, vec![3, 4]);
        assert_eq!(nd.ndes, vec![(1, -2), (6, -5), (8, 7)]);
        assert_eq!(ndes_pm(&v).unwrap(), vec![(1, -2), (6, -5), (8, 7)]);

        let w = vec![-6, -5, -1, -2, 3, 4, 8, 7];
        let nd = nested_descents(&w).unwrap();
        assert_eq!(nd.nres, vec![-6, -5, 3, 4]);
        assert_eq!(nd.ndes, vec![(-1, -2), (8, 7)]);
        assert_eq!(ndes_pm(&w).unwrap(), vec![(-6, -5), (-1, -2), (8, 7)]);
        assert!(nested_descents(&[1, 2, 1]).is_err());
    }

    #[test]
    fn rank_d_examples() {
        assert_eq!(rank_d(&[1, 6, -5, -2, 3, 4, 8, 7], 0).unwrap(), 1);
        assert_eq!(rank_d(&[-6, -5, -1, -2, 3, 4, 8, 7], 0).unwrap(), 2);
        assert_eq!(rank_d(&[1, 2, 3, 4], 0).unwrap(), 0);
        assert!(rank_d(&[1, -1], 0).is_err());
        assert_eq!(rank_d(&[9, 1, 6, -5, -2, 3, 4, 8, 7], 1).unwrap(), 1 + 2);
    }

    #[test]
    fn order_examples() {
        assert!(order_leq(WordOrder::PrecSim(0), &[2, 3, 1], &[3, 1, 2]).unwrap());
        assert!(!order_leq(WordOrder::PrecSim(1), &[2, 3, 1], &[3, 1, 2]).unwrap());
        assert!(order_leq(WordOrder::PrecApprox(0), &[2, 3, 1, 4], &[1, 4, 2, 3]).unwrap());
        assert!(!order_leq(WordOrder::PrecApprox(1), &[2, 3, 1, 4], &[1, 4, 2, 3]).unwrap());
        assert!(order_leq(WordOrder::PrecSimD, &[-2, 3, 1], &[-3, 1, 2]).unwrap());
        assert!(order_leq(WordOrder::LlD, &[1, -2, 3, -4], &[1, -4, 2, -3]).unwrap());
        assert!(order_leq(WordOrder::PrecAiii(0), &[1, 2, 4, 3], &[2, 1, 3, 4]).unwrap());
        assert!(!order_leq(WordOrder::PrecAiii(1), &[1, 2, 4, 3], &[2, 1, 3, 4]).unwrap());
        assert!(order_leq(WordOrder::PrecAiii(1), &[1, 2, 5, 4, 3], &[2, 1, 5, 3, 4]).unwrap());
        assert!(order_leq(WordOrder::PrecSimDi(1), &[3, 1, 2], &[-3, -1, 2]).unwrap());
        assert!(order_leq(WordOrder::PrecSim(0), &[1], &[1]).unwrap());
        assert!(order_leq(WordOrder::PrecSim(0), &[1], &[1, 2]).is_err());
    }

    #[test]
    fn well_nested_examples() {
        let e = family_e();
        assert!(well_nested_check(&e));
        let mut missing = e.clone();
        missing.remove(&digits("56234"));
        assert!(!well_nested_check(&missing));
        assert!(!well_nested_check(&HashSet::from([digits("321")])));
        assert!(well_nested_check(&HashSet::from([digits("1234")])));
        assert!(has_consecutive_321(&digits("14321")));
        assert!(!has_consecutive_321(&digits("3142")));
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(standardize(&[5, 2, 9]).unwrap().oneline(), &[2, 1, 3]);
        assert_eq!(standardize(&[3, 1, 2]).unwrap().oneline(), &[3, 1, 2]);
        assert!(standardize(&[1, 1]).is_err());
    }

    #[test]
    fn family_e_is_graded_with_unique_bottom() {
        let e = family_e();
        let bottoms: HashSet<Word> = e.iter().map(|w| pdes_bottom(w).unwrap()).collect();
        assert_eq!(bottoms.len(), 1);
        let bottom = bottoms.into_iter().next().unwrap();
        assert!(e.contains(&bottom));
        for w in &e {
            for v in WordOrder::PrecSim(0).covers(w) {
                assert_eq!(pdes_rank(&v).unwrap(), pdes_rank(w).unwrap() + 1);
            }
            assert!(order_leq(WordOrder::PrecSim(0), &bottom, w).unwrap());
        }
    }

    #[test]
    fn precapprox_rank_is_graded() {
        let rank = |w: &[i32], k: usize| {
            let sub: Word = w.iter().skip(k + 1).step_by(2).copied().collect();
            inv(&sub)
        };
        for k in 0..3 {
            for w in itertools::Itertools::permutations(1..=6, 6) {
                for v in WordOrder::PrecApprox(k).covers(&w) {
                    assert_eq!(rank(&v, k), rank(&w, k) + 1);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn precsim_moves_increase_lex(w in Just((1..=7).collect::<Vec<i32>>()).prop_shuffle(), k in 0usize..3) {
            for v in WordOrder::PrecSim(k).covers(&w) {
                prop_assert!(v > w);
            }
            for v in WordOrder::PrecApprox(k).covers(&w) {
                prop_assert!(v.iter().rev().collect::<Vec<_>>() < w.iter().rev().collect::<Vec<_>>());
            }
        }

        #[test]
        fn dedup_is_idempotent(w in proptest::collection::vec(-5i32..5, 0..12)) {
            let d = dedup(&w);
            prop_assert_eq!(dedup(&d), d.clone());
            let set: HashSet<i32> = w.iter().copied().collect();
            prop_assert_eq!(d.len(), set.len());
        }

        #[test]
        fn standardize_preserves_order(w in proptest::collection::hash_set(-50i32..50, 1..8)) {
            let w: Vec<i32> = w.into_iter().collect();
            let s = standardize(&w).unwrap();
            for i in 0..w.len() {
                for j in 0..w.len() {
                    prop_assert_eq!(w[i] < w[j], s.oneline()[i] < s.oneline()[j]);
                }
            }
        }
    }
}
