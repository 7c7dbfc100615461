//! Noncrossing symmetric perfect matchings on `X ⊔ -X`, their constrained
//! families, the minimal matchings `M_min(X:k)`, the covering relation `⋖`
//! and alignment with clans.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::clans::Clan;
use crate::error::{Error, Result};

/// A noncrossing symmetric perfect matching on `X ⊔ -X` for a set `X` of positive integers.
///
/// Each symmetric pair of blocks is stored once: a nontrivial pair `±{a, b}` as
/// `(a, b)` with `0 < a < b`, and a trivial block `{±i}` as `(-i, i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedMatching {
    support: Vec<i32>,
    blocks: Vec<(i32, i32)>,
}

/// Constraint on the number of trivial blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrivConstraint {
    /// Every matching.
    Any,
    /// Exactly `k` trivial blocks.
    Exactly(usize),
    /// At least `k` trivial blocks.
    AtLeast(usize),
}

impl TrivConstraint {
    fn accepts(self, t: usize) -> bool {
        match self {
            TrivConstraint::Any => true,
            TrivConstraint::Exactly(k) => t == k,
            TrivConstraint::AtLeast(k) => t >= k,
        }
    }
}

impl SignedMatching {
    /// Builds a matching from its support and its blocks (each symmetric pair listed once).
    pub fn new(support: Vec<i32>, blocks: Vec<(i32, i32)>) -> Result<Self> {
        let mut support = support;
        support.sort_unstable();
        support.dedup();
        if support.iter().any(|&x| x <= 0) {
            return Err(Error::Matching(format!("support {support:?} must be positive")));
        }
        let mut norm = Vec::with_capacity(blocks.len());
        for (a, b) in blocks {
            let (a, b) = (a.min(b), a.max(b));
            if (a == -b && a < 0) || a > 0 {
                norm.push((a, b));
            } else if b < 0 {
                norm.push((-b, -a));
            } else {
                return Err(Error::Matching(format!(
                    "block {{{a},{b}}} is neither trivial nor one-signed"
                )));
            }
        }
        norm.sort_unstable();
        let mut covered: Vec<i32> = norm
            .iter()
            .flat_map(|&(a, b)| if a < 0 { vec![b] } else { vec![a, b] })
            .collect();
        covered.sort_unstable();
        if covered != support {
            return Err(Error::Matching("blocks do not cover the support exactly once".into()));
        }
        let m = SignedMatching { support, blocks: norm };
        if m.has_crossing() {
            return Err(Error::Matching(format!("{m} is crossing")));
        }
        Ok(m)
    }

    /// The empty matching.
    pub fn empty() -> Self {
        SignedMatching {
            support: Vec::new(),
            blocks: Vec::new(),
        }
    }

    /// The matching whose blocks are all trivial.
    pub fn all_trivial(support: &[i32]) -> Result<Self> {
        SignedMatching::new(support.to_vec(), support.iter().map(|&x| (-x, x)).collect())
    }

    /// The support `X`.
    pub fn support(&self) -> &[i32] {
        &self.support
    }

    /// Stored blocks: nontrivial pairs `(a, b)` with `0 < a < b` and trivial blocks `(-i, i)`.
    pub fn blocks(&self) -> &[(i32, i32)] {
        &self.blocks
    }

    /// Nontrivial positive blocks `(a, b)` with `0 < a < b`.
    pub fn arcs(&self) -> Vec<(i32, i32)> {
        self.blocks.iter().copied().filter(|&(a, _)| a > 0).collect()
    }

    /// Every block on `X ⊔ -X`, including negated copies, sorted.
    pub fn all_blocks(&self) -> Vec<(i32, i32)> {
        let mut v = Vec::new();
        for &(a, b) in &self.blocks {
            v.push((a, b));
            if a > 0 {
                v.push((-b, -a));
            }
        }
        v.sort_unstable();
        v
    }

    /// `Triv(M)` in increasing order.
    pub fn triv_set(&self) -> Vec<i32> {
        self.blocks.iter().filter(|&&(a, _)| a < 0).map(|&(_, b)| b).collect()
    }

    /// `triv(M)`.
    pub fn triv(&self) -> usize {
        self.blocks.iter().filter(|&&(a, _)| a < 0).count()
    }

    /// The partner of `x` on `X ⊔ -X`.
    pub fn partner(&self, x: i32) -> Option<i32> {
        self.all_blocks().into_iter().find_map(|(a, b)| {
            if a == x {
                Some(b)
            } else if b == x {
                Some(a)
            } else {
                None
            }
        })
    }

    fn has_crossing(&self) -> bool {
        let all = self.all_blocks();
        all.iter()
            .any(|&(a, c)| all.iter().any(|&(b, d)| a < b && b < c && c < d))
    }

    /// The statistic `nb(M)`: nested pairs of positive arcs plus pairs of a
    /// trivial block `{±a}` and an arc `{b, c}` with `a < b`.
    pub fn nb(&self) -> usize {
        let arcs = self.arcs();
        let nested = arcs
            .iter()
            .flat_map(|&(a, d)| arcs.iter().map(move |&(b, c)| (a, b, c, d)))
            .filter(|&(a, b, c, d)| a < b && b < c && c < d)
            .count();
        let left = self
            .triv_set()
            .iter()
            .map(|&a| arcs.iter().filter(|&&(b, _)| a < b).count())
            .sum::<usize>();
        nested + left
    }
}

impl fmt::Display for SignedMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|(a, b)| format!("[{a},{b}]")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Every matching of `NCSP(X)` obeying the constraint, in canonical order.
pub fn enumerate_ncsp(x: &[i32], constraint: TrivConstraint) -> Vec<SignedMatching> {
    let mut xs = x.to_vec();
    xs.sort_unstable();
    xs.dedup();
    let mut out = Vec::new();
    let mut blocks = Vec::new();
    let mut stack = Vec::new();
    ncsp_rec(&xs, 0, &mut stack, &mut blocks, constraint, &mut out);
    out.sort();
    out
}

fn ncsp_rec(
    xs: &[i32],
    i: usize,
    stack: &mut Vec<i32>,
    blocks: &mut Vec<(i32, i32)>,
    constraint: TrivConstraint,
    out: &mut Vec<SignedMatching>,
) {
    if i == xs.len() {
        if stack.is_empty() {
            let mut b = blocks.clone();
            b.sort_unstable();
            let m = SignedMatching {
                support: xs.to_vec(),
                blocks: b,
            };
            if constraint.accepts(m.triv()) {
                out.push(m);
            }
        }
        return;
    }
    if stack.len() > xs.len() - i {
        return;
    }
    let x = xs[i];
    if stack.is_empty() {
        blocks.push((-x, x));
        ncsp_rec(xs, i + 1, stack, blocks, constraint, out);
        blocks.pop();
    }
    stack.push(x);
    ncsp_rec(xs, i + 1, stack, blocks, constraint, out);
    stack.pop();
    if let Some(a) = stack.pop() {
        blocks.push((a, x));
        ncsp_rec(xs, i + 1, stack, blocks, constraint, out);
        blocks.pop();
        stack.push(a);
    }
}

/// `M_min(X:k)`: consecutive smallest elements paired, the `k` largest left trivial.
pub fn m_min(x: &[i32], k: usize) -> Result<SignedMatching> {
    let mut xs = x.to_vec();
    xs.sort_unstable();
    xs.dedup();
    let m = xs.len();
    if k > m || (m - k) % 2 == 1 {
        return Err(Error::Parameter(format!(
            "M_min needs |X| - k even with k ≤ |X|, got |X| = {m}, k = {k}"
        )));
    }
    let mut blocks: Vec<(i32, i32)> = xs[..m - k].chunks(2).map(|c| (c[0], c[1])).collect();
    blocks.extend(xs[m - k..].iter().map(|&c| (-c, c)));
    SignedMatching::new(xs, blocks)
}

/// All `M` with `M ⋖ N`.
pub fn lessdot_covers(n: &SignedMatching) -> Vec<SignedMatching> {
    let xs = n.support();
    let m = xs.len();
    let pos = |v: i32| xs.binary_search(&v).ok();
    let partner_idx = |i: usize| -> Option<usize> { n.partner(xs[i]).and_then(|p| if p > 0 { pos(p) } else { None }) };
    let trivial = |i: usize| n.partner(xs[i]) == Some(-xs[i]);
    let nested_under = |i: usize| n.arcs().iter().any(|&(a, b)| a < xs[i] && xs[i] < b);
    let mut out = BTreeSet::new();
    for i in 0..m.saturating_sub(1) {
        let Some(p) = partner_idx(i + 1) else { continue };
        if p <= i + 1 {
            continue;
        }
        let replace = |remove: &[(i32, i32)], add: &[(i32, i32)]| -> SignedMatching {
            let mut blocks: Vec<(i32, i32)> = n.blocks().iter().copied().filter(|b| !remove.contains(b)).collect();
            blocks.extend_from_slice(add);
            SignedMatching::new(xs.to_vec(), blocks).expect("covering moves preserve NCSP")
        };
        if trivial(i) {
            out.insert(replace(
                &[(-xs[i], xs[i]), (xs[i + 1], xs[p])],
                &[(xs[i], xs[i + 1]), (-xs[p], xs[p])],
            ));
        }
        if let Some(q) = partner_idx(i) {
            if q > p && !nested_under(i) {
                out.insert(replace(
                    &[(xs[i], xs[q]), (xs[i + 1], xs[p])],
                    &[(xs[i], xs[i + 1]), (xs[p], xs[q])],
                ));
            }
        }
    }
    out.into_iter().collect()
}

/// Every matching reachable from `n` by repeated downward `⋖` steps, including `n`.
pub fn lessdot_down_closure(n: &SignedMatching) -> BTreeSet<SignedMatching> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([n.clone()]);
    while let Some(m) = queue.pop_front() {
        if seen.insert(m.clone()) {
            queue.extend(lessdot_covers(&m));
        }
    }
    seen
}

/// Whether no nontrivial block lies inside `S₊(γ)` or inside `S₋(γ)`.
///
/// Fails when the support of `m` is not contained in the signed points of `γ`.
pub fn is_gamma_aligned(m: &SignedMatching, gamma: &Clan) -> Result<bool> {
    if let Some(x) = m.support().iter().find(|&&x| !gamma.is_plus(x) && !gamma.is_minus(x)) {
        return Err(Error::Matching(format!(
            "support point {x} is not a signed point of {gamma}"
        )));
    }
    Ok(m.arcs()
        .iter()
        .all(|&(a, b)| !((gamma.is_plus(a) && gamma.is_plus(b)) || (gamma.is_minus(a) && gamma.is_minus(b)))))
}

/// Central binomial coefficient `C(m, ⌊m/2⌋)`.
pub fn central_binomial(m: usize) -> u64 {
    let k = m / 2;
    (0..k).fold(1u64, |acc, i| acc * (m - i) as u64 / (i + 1) as u64)
}
