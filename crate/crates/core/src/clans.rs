//! Clans, the ten classical symmetric spaces, their orbit indexing sets and
//! the Richardson-Springer map onto twisted involutions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coxeter::{
    self, named_element, t0_left, twisted_involutions, Automorphism, NamedElement, WeylElement, WeylKind,
};
use crate::error::{Error, Result};

/// One symbol of a clan's one-line representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClanSymbol {
    /// A point of `S₊`.
    Plus,
    /// A point of `S₋`.
    Minus,
    /// A matched point; equal labels mark the two ends of a block.
    Label(u32),
}

impl fmt::Display for ClanSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClanSymbol::Plus => write!(f, "+"),
            ClanSymbol::Minus => write!(f, "-"),
            ClanSymbol::Label(c) => write!(f, "{c}"),
        }
    }
}

/// A clan `(S₊, S₋, M)` on an explicit base set.
///
/// All components are stored sorted, so structural equality is equality of clans.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Clan {
    base: Vec<i32>,
    plus: Vec<i32>,
    minus: Vec<i32>,
    matching: Vec<(i32, i32)>,
}

/// Symmetry constraint applied while generating clans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClanSymmetry {
    /// No constraint.
    Free,
    /// Fixed by reversal of the base set.
    Symmetric,
    /// Fixed by reversal followed by conjugation.
    SkewSymmetric,
}

impl Clan {
    /// Builds a clan from its components, validating that they partition the base set.
    pub fn new(base: Vec<i32>, plus: Vec<i32>, minus: Vec<i32>, matching: Vec<(i32, i32)>) -> Result<Self> {
        let mut base = base;
        base.sort_unstable();
        if base.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidClan(format!("base set {base:?} repeats a point")));
        }
        let mut plus = plus;
        let mut minus = minus;
        plus.sort_unstable();
        minus.sort_unstable();
        let mut matching: Vec<(i32, i32)> = matching.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        matching.sort_unstable();
        let mut seen = BTreeSet::new();
        let points = plus
            .iter()
            .chain(&minus)
            .copied()
            .chain(matching.iter().flat_map(|&(a, b)| [a, b]));
        for x in points {
            if !seen.insert(x) {
                return Err(Error::InvalidClan(format!("point {x} is used twice")));
            }
        }
        if matching.iter().any(|&(a, b)| a == b) {
            return Err(Error::InvalidClan("a block of M has a repeated point".into()));
        }
        if seen.into_iter().collect::<Vec<_>>() != base {
            return Err(Error::InvalidClan("components do not partition the base set".into()));
        }
        Ok(Clan {
            base,
            plus,
            minus,
            matching,
        })
    }

    /// Reads a clan from a one-line representation over `base` (listed in any order).
    pub fn from_one_line(base: &[i32], symbols: &[ClanSymbol]) -> Result<Self> {
        let mut sorted = base.to_vec();
        sorted.sort_unstable();
        if sorted.len() != symbols.len() {
            return Err(Error::InvalidClan(format!(
                "{} symbols for a base set of size {}",
                symbols.len(),
                sorted.len()
            )));
        }
        let (mut plus, mut minus) = (Vec::new(), Vec::new());
        let mut groups: BTreeMap<u32, Vec<i32>> = BTreeMap::new();
        for (&x, s) in sorted.iter().zip(symbols) {
            match s {
                ClanSymbol::Plus => plus.push(x),
                ClanSymbol::Minus => minus.push(x),
                ClanSymbol::Label(c) => groups.entry(*c).or_default().push(x),
            }
        }
        let mut matching = Vec::new();
        for (c, pts) in groups {
            if pts.len() != 2 {
                return Err(Error::InvalidClan(format!("label {c} occurs {} times", pts.len())));
            }
            matching.push((pts[0], pts[1]));
        }
        Clan::new(sorted, plus, minus, matching)
    }

    /// Parses text such as `(1,+,1)` over the given base set.
    pub fn parse_one_line(base: &[i32], text: &str) -> Result<Self> {
        Clan::from_one_line(base, &parse_symbols(text)?)
    }

    /// Canonical one-line representation; blocks are numbered by first occurrence.
    pub fn one_line(&self) -> Vec<ClanSymbol> {
        let mut labels: BTreeMap<i32, u32> = BTreeMap::new();
        let partner: BTreeMap<i32, i32> = self.matching.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
        let mut next = 1;
        self.base
            .iter()
            .map(|x| {
                if self.plus.binary_search(x).is_ok() {
                    ClanSymbol::Plus
                } else if self.minus.binary_search(x).is_ok() {
                    ClanSymbol::Minus
                } else if let Some(&c) = labels.get(x) {
                    ClanSymbol::Label(c)
                } else {
                    labels.insert(partner[x], next);
                    next += 1;
                    ClanSymbol::Label(next - 1)
                }
            })
            .collect()
    }

    /// The base set in increasing order.
    pub fn base(&self) -> &[i32] {
        &self.base
    }

    /// `S₊` in increasing order.
    pub fn plus(&self) -> &[i32] {
        &self.plus
    }

    /// `S₋` in increasing order.
    pub fn minus(&self) -> &[i32] {
        &self.minus
    }

    /// The blocks of `M` as sorted pairs.
    pub fn matching(&self) -> &[(i32, i32)] {
        &self.matching
    }

    /// `|S₊| - |S₋|`.
    pub fn clan_type(&self) -> i64 {
        self.plus.len() as i64 - self.minus.len() as i64
    }

    /// The isolated points `S₊ ⊔ S₋` in increasing order.
    pub fn points(&self) -> Vec<i32> {
        let mut v: Vec<i32> = self.plus.iter().chain(&self.minus).copied().collect();
        v.sort_unstable();
        v
    }

    /// Whether `x ∈ S₊`.
    pub fn is_plus(&self, x: i32) -> bool {
        self.plus.binary_search(&x).is_ok()
    }

    /// Whether `x ∈ S₋`.
    pub fn is_minus(&self, x: i32) -> bool {
        self.minus.binary_search(&x).is_ok()
    }

    /// The matched partner of `x`, if any.
    pub fn partner(&self, x: i32) -> Option<i32> {
        self.matching.iter().find_map(|&(a, b)| {
            if a == x {
                Some(b)
            } else if b == x {
                Some(a)
            } else {
                None
            }
        })
    }

    fn rev_point(&self, x: i32) -> i32 {
        let i = self.base.binary_search(&x).expect("point of base set");
        self.base[self.base.len() - 1 - i]
    }

    /// The clan obtained by the order-reversing bijection of the base set.
    pub fn reversal(&self) -> Clan {
        let r = |v: &[i32]| v.iter().map(|&x| self.rev_point(x)).collect::<Vec<_>>();
        let m = self
            .matching
            .iter()
            .map(|&(a, b)| (self.rev_point(a), self.rev_point(b)))
            .collect();
        Clan::new(self.base.clone(), r(&self.plus), r(&self.minus), m).expect("reversal preserves validity")
    }

    /// The clan with `S₊` and `S₋` exchanged.
    pub fn conjugate(&self) -> Clan {
        Clan {
            base: self.base.clone(),
            plus: self.minus.clone(),
            minus: self.plus.clone(),
            matching: self.matching.clone(),
        }
    }

    /// `γ ⊖ Y`: toggles the sign of every isolated point lying in `Y`.
    pub fn toggle(&self, y: &[i32]) -> Result<Clan> {
        if let Some(x) = y.iter().find(|x| self.base.binary_search(x).is_err()) {
            return Err(Error::InvalidClan(format!("{x} is not in the base set")));
        }
        let (mut plus, mut minus) = (Vec::new(), Vec::new());
        for &x in &self.plus {
            if y.contains(&x) {
                minus.push(x)
            } else {
                plus.push(x)
            }
        }
        for &x in &self.minus {
            if y.contains(&x) {
                plus.push(x)
            } else {
                minus.push(x)
            }
        }
        Clan::new(self.base.clone(), plus, minus, self.matching.clone())
    }

    /// Whether `S₊(self) ⊆ S₊(other)` and `S₋(self) ⊆ S₋(other)`.
    pub fn signs_within(&self, other: &Clan) -> bool {
        self.plus.iter().all(|x| other.is_plus(*x)) && self.minus.iter().all(|x| other.is_minus(*x))
    }

    /// Whether the signed points of both clans form order-isomorphic sign words.
    pub fn equivalent(&self, other: &Clan) -> bool {
        let word = |c: &Clan| -> Vec<bool> { c.points().into_iter().map(|x| c.is_plus(x)).collect() };
        self.base == other.base && word(self) == word(other)
    }

    /// Whether the clan is fixed by reversal.
    pub fn is_symmetric(&self) -> bool {
        *self == self.reversal()
    }

    /// Whether the clan is fixed by reversal followed by conjugation.
    pub fn is_skew_symmetric(&self) -> bool {
        *self == self.reversal().conjugate()
    }

    /// Whether no block of `M` has the form `{i, -i}`.
    pub fn is_strict(&self) -> bool {
        self.matching.iter().all(|&(a, b)| a + b != 0)
    }

    /// `|S₊ ∩ [n]| + |M ∩ binom([n], 2)|`.
    pub fn h(&self) -> usize {
        self.plus.iter().filter(|&&x| x > 0).count() + self.matching.iter().filter(|&&(a, _)| a > 0).count()
    }

    /// Whether the clan is strict with `h` even.
    pub fn is_even_strict(&self) -> bool {
        self.is_strict() && self.h().is_multiple_of(2)
    }

    /// Summary of the clan's predicates.
    pub fn predicates(&self) -> ClanPredicates {
        ClanPredicates {
            clan_type: self.clan_type(),
            is_symmetric: self.is_symmetric(),
            is_skew_symmetric: self.is_skew_symmetric(),
            is_strict: self.is_strict(),
            is_even_strict: self.is_even_strict(),
            h: self.h(),
        }
    }

    /// The involution `σ_γ` of `W_n` for a clan on `[±n]` or `[±n] ⊔ {0}`.
    pub fn sigma(&self) -> Result<WeylElement> {
        let n = self.base.iter().filter(|&&x| x > 0).count();
        let expected = signed_base(n, self.base.contains(&0));
        if self.base != expected {
            return Err(Error::InvalidClan(format!(
                "base {:?} is not of the form [±n]",
                self.base
            )));
        }
        let oneline = (1..=n as i32).map(|i| self.partner(i).unwrap_or(i)).collect();
        WeylElement::from_oneline(WeylKind::BC(n), oneline)
            .map_err(|_| Error::InvalidClan("σ_γ is not a signed permutation".into()))
    }

    /// The involution `π_γ` of `S_{p+q}` for a clan on `[p+q]`.
    pub fn pi(&self) -> Result<WeylElement> {
        let m = self.base.len();
        if self.base != (1..=m as i32).collect::<Vec<_>>() || m == 0 {
            return Err(Error::InvalidClan(format!(
                "base {:?} is not of the form [m]",
                self.base
            )));
        }
        let oneline = (1..=m as i32).map(|i| self.partner(i).unwrap_or(i)).collect();
        WeylElement::from_oneline(WeylKind::A(m - 1), oneline)
    }

    /// Canonical text form, e.g. `(1,+,1)`.
    pub fn one_line_string(&self) -> String {
        let parts: Vec<String> = self.one_line().iter().map(|s| s.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

impl fmt::Display for Clan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.one_line_string())
    }
}

/// Predicates and statistics of a clan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClanPredicates {
    /// `|S₊| - |S₋|`.
    pub clan_type: i64,
    /// Fixed by reversal.
    pub is_symmetric: bool,
    /// Fixed by reversal and conjugation.
    pub is_skew_symmetric: bool,
    /// No block `{i, -i}`.
    pub is_strict: bool,
    /// Strict with even `h`.
    pub is_even_strict: bool,
    /// The statistic `h`.
    pub h: usize,
}

/// `S₊(γ)` contains `S₊(δ)` and `S₋(γ)` contains `S₋(δ)`.
pub fn contains(gamma: &Clan, delta: &Clan) -> bool {
    delta.signs_within(gamma)
}

/// Parses a parenthesized one-line clan such as `(1,+,-,1)`.
pub fn parse_symbols(text: &str) -> Result<Vec<ClanSymbol>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected a parenthesized clan, got {text:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|p| match p.trim() {
            "+" => Ok(ClanSymbol::Plus),
            "-" | "−" => Ok(ClanSymbol::Minus),
            other => other
                .parse::<u32>()
                .map(ClanSymbol::Label)
                .map_err(|e| Error::Parse(format!("clan symbol {other:?}: {e}"))),
        })
        .collect()
}

/// The base set `[±n]`, with `0` adjoined when requested.
pub fn signed_base(n: usize, with_zero: bool) -> Vec<i32> {
    let n = n as i32;
    (-n..=n).filter(|&x| x != 0 || with_zero).collect()
}

/// Every clan on `base` satisfying the symmetry constraint, in canonical order.
pub fn all_clans(base: &[i32], symmetry: ClanSymmetry) -> Vec<Clan> {
    let mut sorted = base.to_vec();
    sorted.sort_unstable();
    let len = sorted.len();
    let mut state = vec![Slot::Free; len];
    let mut out = Vec::new();
    generate(&sorted, symmetry, &mut state, &mut out);
    let _ = len;
    out.sort();
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Slot {
    Free,
    Plus,
    Minus,
    Matched(usize),
}

fn generate(base: &[i32], sym: ClanSymmetry, state: &mut Vec<Slot>, out: &mut Vec<Clan>) {
    let len = base.len();
    let Some(i) = state.iter().position(|s| *s == Slot::Free) else {
        let (mut plus, mut minus, mut m) = (Vec::new(), Vec::new(), Vec::new());
        for (p, s) in state.iter().enumerate() {
            match *s {
                Slot::Plus => plus.push(base[p]),
                Slot::Minus => minus.push(base[p]),
                Slot::Matched(q) if q > p => m.push((base[p], base[q])),
                _ => {}
            }
        }
        out.push(Clan::new(base.to_vec(), plus, minus, m).expect("generated clans are valid"));
        return;
    };
    let rev = |p: usize| len - 1 - p;
    for sign in [Slot::Plus, Slot::Minus] {
        let r = rev(i);
        let mirror = match (sym, sign) {
            (ClanSymmetry::Free, _) => None,
            (ClanSymmetry::Symmetric, s) => Some(s),
            (ClanSymmetry::SkewSymmetric, Slot::Plus) => Some(Slot::Minus),
            (ClanSymmetry::SkewSymmetric, _) => Some(Slot::Plus),
        };
        match mirror {
            None => {
                state[i] = sign;
                generate(base, sym, state, out);
                state[i] = Slot::Free;
            }
            Some(ms) => {
                if r == i {
                    if ms == sign {
                        state[i] = sign;
                        generate(base, sym, state, out);
                        state[i] = Slot::Free;
                    }
                } else if state[r] == Slot::Free {
                    state[i] = sign;
                    state[r] = ms;
                    generate(base, sym, state, out);
                    state[i] = Slot::Free;
                    state[r] = Slot::Free;
                }
            }
        }
    }
    for j in i + 1..len {
        if state[j] != Slot::Free {
            continue;
        }
        if sym == ClanSymmetry::Free {
            state[i] = Slot::Matched(j);
            state[j] = Slot::Matched(i);
            generate(base, sym, state, out);
            state[i] = Slot::Free;
            state[j] = Slot::Free;
            continue;
        }
        let (ri, rj) = (rev(i), rev(j));
        if ri == j {
            state[i] = Slot::Matched(j);
            state[j] = Slot::Matched(i);
            generate(base, sym, state, out);
            state[i] = Slot::Free;
            state[j] = Slot::Free;
        } else if ri != i && rj != j && rj != i && state[ri] == Slot::Free && state[rj] == Slot::Free {
            state[i] = Slot::Matched(j);
            state[j] = Slot::Matched(i);
            state[ri] = Slot::Matched(rj);
            state[rj] = Slot::Matched(ri);
            generate(base, sym, state, out);
            for p in [i, j, ri, rj] {
                state[p] = Slot::Free;
            }
        }
    }
}

/// The ten classical symmetric spaces with their parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SymSpace {
    /// `GL(n+1) / O(n+1)`.
    AI { n: usize },
    /// `GL(n+1) / Sp(n+1)` with `n` odd.
    AII { n: usize },
    /// `GL(p+q) / GL(p) × GL(q)`.
    AIII { p: usize, q: usize },
    /// `SO(p+q) / S(O(p) × O(q))` with `p + q` odd.
    BI { p: usize, q: usize },
    /// `Sp(2n) / GL(n)`.
    CI { n: usize },
    /// `Sp(p+q) / Sp(p) × Sp(q)` with `p`, `q` even.
    CII { p: usize, q: usize },
    /// `SO(p+q) / S(O(p) × O(q))` with `p + q = 2n` and `p + n` even.
    DI { p: usize, q: usize },
    /// `SO(p+q) / S(O(p) × O(q))` with `p + q = 2n` and `p + n` odd.
    DII { p: usize, q: usize },
    /// `SO(2n) / GL(n)` with `n` even.
    DIII { n: usize },
    /// `SO(2n) / GL(n)` with `n` odd.
    DIV { n: usize },
}

/// Names of the ten spaces in canonical order.
pub const SPACE_NAMES: [&str; 10] = ["AI", "AII", "AIII", "BI", "CI", "CII", "DI", "DII", "DIII", "DIV"];

impl SymSpace {
    /// Validates the parameter constraints of the space.
    pub fn validate(self) -> Result<Self> {
        let bad = |msg: &str| Err(Error::Parameter(format!("{}: {msg}", self.name())));
        match self {
            SymSpace::AI { n } if n < 1 => bad("n must be positive"),
            SymSpace::AII { n } if n < 1 || n % 2 == 0 => bad("n must be odd"),
            SymSpace::AIII { p, q } if p + q < 2 => bad("p + q must be at least 2"),
            SymSpace::BI { p, q } if p + q < 3 || (p + q) % 2 == 0 => bad("p + q must be odd and at least 3"),
            SymSpace::CI { n } if n < 1 => bad("n must be positive"),
            SymSpace::CII { p, q } if p % 2 == 1 || q % 2 == 1 || p + q < 2 => {
                bad("p and q must be even with p + q ≥ 2")
            }
            SymSpace::DI { p, q } | SymSpace::DII { p, q } if p + q < 2 || (p + q) % 2 == 1 => {
                bad("p + q must be even and at least 2")
            }
            SymSpace::DI { p, q } if (p + (p + q) / 2) % 2 == 1 => bad("p + n must be even"),
            SymSpace::DII { p, q } if (p + (p + q) / 2) % 2 == 0 => bad("p + n must be odd"),
            SymSpace::DIII { n } if n < 2 || n % 2 == 1 => bad("n must be even and positive"),
            SymSpace::DIV { n } if n % 2 == 0 => bad("n must be odd"),
            _ => Ok(self),
        }
    }

    /// Builds a space from its name and parameters; `n` or `(p, q)` is required as appropriate.
    pub fn from_parts(name: &str, n: Option<usize>, p: Option<usize>, q: Option<usize>) -> Result<Self> {
        let need_n = || n.ok_or_else(|| Error::Parameter(format!("{name} needs --n")));
        let need_pq = || match (p, q, n) {
            (Some(p), Some(q), _) => Ok((p, q)),
            _ => Err(Error::Parameter(format!("{name} needs --p and --q"))),
        };
        let space = match name.to_ascii_uppercase().as_str() {
            "AI" => SymSpace::AI { n: need_n()? },
            "AII" => SymSpace::AII { n: need_n()? },
            "AIII" => {
                let (p, q) = need_pq()?;
                SymSpace::AIII { p, q }
            }
            "BI" => {
                let (p, q) = need_pq()?;
                SymSpace::BI { p, q }
            }
            "CI" => SymSpace::CI { n: need_n()? },
            "CII" => {
                let (p, q) = need_pq()?;
                SymSpace::CII { p, q }
            }
            "DI" => {
                let (p, q) = need_pq()?;
                SymSpace::DI { p, q }
            }
            "DII" => {
                let (p, q) = need_pq()?;
                SymSpace::DII { p, q }
            }
            "DIII" => SymSpace::DIII { n: need_n()? },
            "DIV" => SymSpace::DIV { n: need_n()? },
            other => return Err(Error::Parameter(format!("unknown space {other:?}"))),
        };
        space.validate()
    }

    /// Short name such as `"BI"`.
    pub fn name(self) -> &'static str {
        match self {
            SymSpace::AI { .. } => "AI",
            SymSpace::AII { .. } => "AII",
            SymSpace::AIII { .. } => "AIII",
            SymSpace::BI { .. } => "BI",
            SymSpace::CI { .. } => "CI",
            SymSpace::CII { .. } => "CII",
            SymSpace::DI { .. } => "DI",
            SymSpace::DII { .. } => "DII",
            SymSpace::DIII { .. } => "DIII",
            SymSpace::DIV { .. } => "DIV",
        }
    }

    /// The `(p, q)` parameters, with `p = q = n` for the single-parameter C and D cases.
    pub fn pq(self) -> Option<(usize, usize)> {
        match self {
            SymSpace::AIII { p, q }
            | SymSpace::BI { p, q }
            | SymSpace::CII { p, q }
            | SymSpace::DI { p, q }
            | SymSpace::DII { p, q } => Some((p, q)),
            SymSpace::CI { n } | SymSpace::DIII { n } | SymSpace::DIV { n } => Some((n, n)),
            SymSpace::AI { .. } | SymSpace::AII { .. } => None,
        }
    }

    /// Rank of the Weyl group.
    pub fn rank(self) -> usize {
        match self {
            SymSpace::AI { n } | SymSpace::AII { n } => n,
            SymSpace::AIII { p, q } => p + q - 1,
            SymSpace::BI { p, q } => (p + q - 1) / 2,
            SymSpace::CII { p, q } | SymSpace::DI { p, q } | SymSpace::DII { p, q } => (p + q) / 2,
            SymSpace::CI { n } | SymSpace::DIII { n } | SymSpace::DIV { n } => n,
        }
    }

    /// The Weyl group of the space.
    pub fn kind(self) -> WeylKind {
        let n = self.rank();
        match self {
            SymSpace::AI { .. } | SymSpace::AII { .. } | SymSpace::AIII { .. } => WeylKind::A(n),
            SymSpace::BI { .. } | SymSpace::CI { .. } | SymSpace::CII { .. } => WeylKind::BC(n),
            _ => WeylKind::D(n),
        }
    }

    /// The twisting automorphism `Θ`.
    pub fn theta(self) -> Automorphism {
        match self {
            SymSpace::AIII { .. } if self.rank() >= 1 => Automorphism::Star,
            SymSpace::DII { .. } | SymSpace::DIV { .. } => Automorphism::Diamond,
            _ => Automorphism::Identity,
        }
    }

    /// The integer `k` attached to the space (zero where none is defined).
    pub fn k(self) -> usize {
        match self {
            SymSpace::AIII { p, q } => p.abs_diff(q),
            SymSpace::BI { p, q } => (p.abs_diff(q) - 1) / 2,
            SymSpace::CII { p, q } | SymSpace::DI { p, q } | SymSpace::DII { p, q } => p.abs_diff(q) / 2,
            _ => 0,
        }
    }

    /// Whether orbit indices are clans rather than involutions.
    pub fn uses_clans(self) -> bool {
        !matches!(self, SymSpace::AI { .. } | SymSpace::AII { .. })
    }

    /// The base set of the clans indexing the orbits.
    pub fn base_set(self) -> Vec<i32> {
        match self {
            SymSpace::AI { n } | SymSpace::AII { n } => (1..=n as i32 + 1).collect(),
            SymSpace::AIII { p, q } => (1..=(p + q) as i32).collect(),
            SymSpace::BI { .. } => signed_base(self.rank(), true),
            _ => signed_base(self.rank(), false),
        }
    }

    /// Every space with the given name and rank `n`, in increasing `p`.
    pub fn all_with_rank(name: &str, n: usize) -> Vec<SymSpace> {
        let mut out = Vec::new();
        let mut push = |s: SymSpace| {
            if let Ok(s) = s.validate() {
                out.push(s);
            }
        };
        match name {
            "AI" => push(SymSpace::AI { n }),
            "AII" => push(SymSpace::AII { n }),
            "AIII" => (0..=n + 1).for_each(|p| push(SymSpace::AIII { p, q: n + 1 - p })),
            "BI" => (0..=2 * n + 1).for_each(|p| push(SymSpace::BI { p, q: 2 * n + 1 - p })),
            "CI" => push(SymSpace::CI { n }),
            "CII" => (0..=2 * n).for_each(|p| push(SymSpace::CII { p, q: 2 * n - p })),
            "DI" => (0..=2 * n).for_each(|p| push(SymSpace::DI { p, q: 2 * n - p })),
            "DII" => (0..=2 * n).for_each(|p| push(SymSpace::DII { p, q: 2 * n - p })),
            "DIII" => push(SymSpace::DIII { n }),
            "DIV" => push(SymSpace::DIV { n }),
            _ => {}
        }
        out
    }
}

impl fmt::Display for SymSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymSpace::AI { n }
            | SymSpace::AII { n }
            | SymSpace::CI { n }
            | SymSpace::DIII { n }
            | SymSpace::DIV { n } => {
                write!(f, "{}(n={n})", self.name())
            }
            SymSpace::AIII { p, q }
            | SymSpace::BI { p, q }
            | SymSpace::CII { p, q }
            | SymSpace::DI { p, q }
            | SymSpace::DII { p, q } => write!(f, "{}(p={p},q={q})", self.name()),
        }
    }
}

/// An orbit index: an involution in types AI and AII, a clan otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OrbitIndex {
    /// An involution of `S_{n+1}` used directly as an index.
    Involution(WeylElement),
    /// A clan.
    Clan(Clan),
}

impl OrbitIndex {
    /// The clan, if this index is one.
    pub fn as_clan(&self) -> Option<&Clan> {
        match self {
            OrbitIndex::Clan(c) => Some(c),
            OrbitIndex::Involution(_) => None,
        }
    }
}

impl fmt::Display for OrbitIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitIndex::Involution(w) => write!(f, "{w}"),
            OrbitIndex::Clan(c) => write!(f, "{c}"),
        }
    }
}

/// Whether `index` lies in the indexing set of `space`.
pub fn in_indexing_set(space: SymSpace, index: &OrbitIndex) -> bool {
    let kind = space.kind();
    match (space, index) {
        (SymSpace::AI { .. }, OrbitIndex::Involution(w)) => w.kind() == kind && w.is_involution(),
        (SymSpace::AII { .. }, OrbitIndex::Involution(w)) => {
            w.kind() == kind && w.is_involution() && (1..=kind.degree() as i32).all(|i| w.apply(i) != i)
        }
        (_, OrbitIndex::Clan(c)) if space.uses_clans() => {
            if c.base() != space.base_set() {
                return false;
            }
            let (p, q) = space.pq().expect("clan spaces have (p, q)");
            if c.clan_type() != p as i64 - q as i64 {
                return false;
            }
            match space {
                SymSpace::AIII { .. } => true,
                SymSpace::BI { .. } | SymSpace::DI { .. } | SymSpace::DII { .. } => c.is_symmetric(),
                SymSpace::CII { .. } => c.is_symmetric() && c.is_strict(),
                SymSpace::CI { .. } => c.is_skew_symmetric(),
                SymSpace::DIII { .. } | SymSpace::DIV { .. } => c.is_skew_symmetric() && c.is_even_strict(),
                _ => false,
            }
        }
        _ => false,
    }
}

/// Rank bound for enumeration of indexing sets.
pub const MAX_CLAN_RANK: usize = 6;

/// The indexing set `Γ` of the space in canonical order.
pub fn enumerate_clans(space: SymSpace) -> Result<Vec<OrbitIndex>> {
    let space = space.validate()?;
    if space.rank() > MAX_CLAN_RANK {
        return Err(Error::RankBound(format!("{space} exceeds rank {MAX_CLAN_RANK}")));
    }
    let kind = space.kind();
    let out = match space {
        SymSpace::AI { .. } | SymSpace::AII { .. } => coxeter::enumerate_group(kind)?
            .into_iter()
            .map(OrbitIndex::Involution)
            .filter(|x| in_indexing_set(space, x))
            .collect(),
        _ => {
            let sym = match space {
                SymSpace::AIII { .. } => ClanSymmetry::Free,
                SymSpace::CI { .. } | SymSpace::DIII { .. } | SymSpace::DIV { .. } => ClanSymmetry::SkewSymmetric,
                _ => ClanSymmetry::Symmetric,
            };
            all_clans(&space.base_set(), sym)
                .into_iter()
                .map(OrbitIndex::Clan)
                .filter(|x| in_indexing_set(space, x))
                .collect()
        }
    };
    Ok(out)
}

fn dense_labels(m: usize, signs: usize, plus: bool, paired: bool) -> Vec<ClanSymbol> {
    let sign = if plus { ClanSymbol::Plus } else { ClanSymbol::Minus };
    let mut v: Vec<ClanSymbol> = (1..=m as u32).map(ClanSymbol::Label).collect();
    v.extend(std::iter::repeat_n(sign, signs));
    if paired {
        let mut j = m as u32;
        while j >= 2 {
            v.push(ClanSymbol::Label(j - 1));
            v.push(ClanSymbol::Label(j));
            j -= 2;
        }
    } else {
        v.extend((1..=m as u32).rev().map(ClanSymbol::Label));
    }
    v
}

/// The index of the dense orbit.
pub fn dense_clan(space: SymSpace) -> Result<OrbitIndex> {
    let space = space.validate()?;
    let kind = space.kind();
    let clan = |syms: Vec<ClanSymbol>| Clan::from_one_line(&space.base_set(), &syms).map(OrbitIndex::Clan);
    match space {
        SymSpace::AI { .. } => Ok(OrbitIndex::Involution(WeylElement::identity(kind))),
        SymSpace::AII { n } => {
            let v: Vec<i32> = (1..=n as i32 + 1)
                .map(|i| if i % 2 == 1 { i + 1 } else { i - 1 })
                .collect();
            Ok(OrbitIndex::Involution(WeylElement::from_oneline(kind, v)?))
        }
        SymSpace::DIV { n } => {
            let mut v: Vec<ClanSymbol> = (1..n as u32).map(ClanSymbol::Label).collect();
            v.push(ClanSymbol::Plus);
            v.push(ClanSymbol::Minus);
            let mut j = n as u32 - 1;
            while j >= 2 {
                v.push(ClanSymbol::Label(j - 1));
                v.push(ClanSymbol::Label(j));
                j -= 2;
            }
            clan(v)
        }
        _ => {
            let (p, q) = space.pq().expect("clan spaces have (p, q)");
            let m = (p + q - p.abs_diff(q)) / 2;
            let paired = matches!(space, SymSpace::CII { .. } | SymSpace::DIII { .. });
            clan(dense_labels(m, p.abs_diff(q), p >= q, paired))
        }
    }
}

/// The Richardson-Springer map `ψ` of the space.
pub fn rs_map(space: SymSpace, index: &OrbitIndex) -> Result<WeylElement> {
    if !in_indexing_set(space, index) {
        return Err(Error::NotInIndexingSet(index.to_string(), space.to_string()));
    }
    Ok(rs_map_unchecked(space, index))
}

/// `ψ` without membership validation; the index must lie in the indexing set.
pub fn rs_map_unchecked(space: SymSpace, index: &OrbitIndex) -> WeylElement {
    let kind = space.kind();
    match index {
        OrbitIndex::Involution(w) => w.clone(),
        OrbitIndex::Clan(c) => match space {
            SymSpace::AIII { .. } => {
                let pi = c.pi().expect("AIII clans live on [p+q]");
                let m = kind.degree() as i32;
                let v = pi.oneline().iter().map(|&x| m + 1 - x).collect();
                WeylElement::from_raw(kind, v)
            }
            _ => {
                let sigma = c.sigma().expect("signed clans live on [±n]");
                let mut v: Vec<i32> = sigma.oneline().iter().map(|&x| -x).collect();
                if matches!(space, SymSpace::DII { .. } | SymSpace::DIV { .. }) {
                    v = t0_left(&v);
                }
                WeylElement::from_raw(kind, v)
            }
        },
    }
}

/// Whether `z` lies in the closed-form image `I^G_K` of the space.
pub fn in_rs_image(space: SymSpace, z: &WeylElement) -> bool {
    let kind = space.kind();
    if z.kind() != kind {
        return false;
    }
    let theta = space.theta();
    if coxeter::apply_automorphism(theta, z)
        .map(|t| t != z.inverse())
        .unwrap_or(true)
    {
        return false;
    }
    let fpf = |w: &[i32]| w.iter().enumerate().all(|(i, &x)| x != i as i32 + 1);
    let neg = |w: &[i32]| w.iter().enumerate().filter(|(i, &x)| x == -(*i as i32) - 1).count();
    let k = space.k();
    let z1 = z.oneline();
    match space {
        SymSpace::AI { .. } | SymSpace::CI { .. } => true,
        SymSpace::AII { .. } => fpf(z1),
        SymSpace::AIII { .. } => coxeter::twist_set(z).len() >= k,
        SymSpace::BI { .. } | SymSpace::DI { .. } => neg(z1) >= k,
        SymSpace::CII { .. } => fpf(z1) && neg(z1) >= k,
        SymSpace::DII { .. } => neg(&t0_left(z1)) >= k,
        SymSpace::DIII { .. } => fpf(z1) && (neg(z1) > 0 || z.ell0().is_multiple_of(4)),
        SymSpace::DIV { .. } => {
            let t = t0_left(z1);
            fpf(&t)
                && WeylElement::from_oneline(WeylKind::BC(kind.rank()), t)
                    .map(|w| w.is_involution())
                    .unwrap_or(false)
        }
    }
}

/// The closed-form image `I^G_K` in canonical order.
pub fn rs_image(space: SymSpace) -> Result<Vec<WeylElement>> {
    let space = space.validate()?;
    let all = match space {
        SymSpace::DIV { .. } => coxeter::enumerate_group(space.kind())?,
        _ => twisted_involutions(space.kind(), space.theta())?,
    };
    Ok(all.into_iter().filter(|z| in_rs_image(space, z)).collect())
}

/// The element of the image attached to the dense orbit, built from named elements.
pub fn dense_image(space: SymSpace) -> Result<WeylElement> {
    let space = space.validate()?;
    let kind = space.kind();
    let k = space.k();
    let alternating = |start: i32| -> Result<WeylElement> {
        let m = kind.degree() as i32;
        let mut v: Vec<i32> = (1..=m).collect();
        let mut i = start;
        while i < m {
            v.swap(i as usize - 1, i as usize);
            i += 2;
        }
        WeylElement::from_oneline(kind, v)
    };
    match space {
        SymSpace::AI { .. } | SymSpace::CI { .. } => Ok(WeylElement::identity(kind)),
        SymSpace::AII { .. } | SymSpace::DIII { .. } => alternating(1),
        SymSpace::DIV { .. } => alternating(2),
        SymSpace::AIII { .. } => named_element(kind, NamedElement::Omega(k)),
        SymSpace::BI { .. } => named_element(kind, NamedElement::Sigma(k)),
        SymSpace::CII { .. } => named_element(kind, NamedElement::SigmaFpf(k)),
        SymSpace::DI { .. } | SymSpace::DII { .. } => named_element(kind, NamedElement::SigmaHat(k)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syms(s: &str) -> Vec<ClanSymbol> {
        parse_symbols(s).unwrap()
    }

    #[test]
    fn fourteen_clans() {
        assert_eq!(all_clans(&[1, 2, 3], ClanSymmetry::Free).len(), 14);
    }

    #[test]
    fn one_line_round_trip() {
        let c = Clan::from_one_line(&[1, 2, 3], &syms("(1,+,1)")).unwrap();
        assert_eq!(c.plus(), &[2]);
        assert_eq!(c.matching(), &[(1, 3)]);
        assert_eq!(c.one_line_string(), "(1,+,1)");
        let d = Clan::from_one_line(&[1, 2], &syms("(+,-)")).unwrap();
        assert_eq!((d.plus(), d.minus()), (&[1][..], &[2][..]));
        let e = Clan::from_one_line(&[-2, -1, 1, 2], &syms("(1,2,2,1)")).unwrap();
        assert_eq!(e.matching(), &[(-2, 2), (-1, 1)]);
        assert!(Clan::from_one_line(&[1, 2, 3], &syms("(1,+,2)")).is_err());
        assert!(Clan::from_one_line(&[1, 2, 3], &syms("(1,1,1)")).is_err());
        assert!(Clan::from_one_line(&[1, 2], &syms("(1,1,+)")).is_err());
        for c in all_clans(&[-2, -1, 1, 2], ClanSymmetry::Free) {
            assert_eq!(Clan::from_one_line(c.base(), &c.one_line()).unwrap(), c);
        }
    }

    #[test]
    fn predicates() {
        let dense = dense_clan(SymSpace::CI { n: 3 }).unwrap();
        let c = dense.as_clan().unwrap();
        assert!(c.is_symmetric() && c.is_skew_symmetric());
        assert_eq!(c.clan_type(), 0);
        for n in [3, 5] {
            let e = dense_clan(SymSpace::DIV { n }).unwrap();
            assert!(e.as_clan().unwrap().is_even_strict());
        }
        let pm = Clan::from_one_line(&[-1, 1], &syms("(+,-)")).unwrap();
        assert!(!pm.is_symmetric());
        assert!(pm.is_skew_symmetric());
    }

    #[test]
    fn toggles_and_equivalence() {
        let c = Clan::from_one_line(&[1, 2, 3], &syms("(+,-,+)")).unwrap();
        assert_eq!(c.conjugate().one_line_string(), "(-,+,-)");
        assert_eq!(c.toggle(&[2]).unwrap().one_line_string(), "(+,+,+)");
        let a = Clan::from_one_line(&[1, 2, 3, 4], &syms("(+,1,1,-)")).unwrap();
        let b = Clan::from_one_line(&[1, 2, 3, 4], &syms("(+,2,2,-)")).unwrap();
        assert!(a.equivalent(&b));
        assert!(contains(
            &c.toggle(&[]).unwrap(),
            &Clan::from_one_line(&[1, 2, 3], &syms("(+,1,1)")).unwrap()
        ));
    }

    #[test]
    fn indexing_sets() {
        assert_eq!(enumerate_clans(SymSpace::AII { n: 1 }).unwrap().len(), 1);
        let ci = enumerate_clans(SymSpace::CI { n: 2 }).unwrap();
        let brute = all_clans(&[-2, -1, 1, 2], ClanSymmetry::Free)
            .into_iter()
            .filter(|c| c.is_skew_symmetric() && c.clan_type() == 0)
            .count();
        assert_eq!(ci.len(), brute);
        assert_eq!(enumerate_clans(SymSpace::AI { n: 2 }).unwrap().len(), 4);
    }

    #[test]
    fn dense_clans() {
        assert_eq!(
            dense_clan(SymSpace::AIII { p: 2, q: 1 }).unwrap().to_string(),
            "(1,+,1)"
        );
        assert_eq!(dense_clan(SymSpace::DIV { n: 3 }).unwrap().to_string(), "(1,2,+,-,1,2)");
        assert_eq!(dense_clan(SymSpace::BI { p: 1, q: 2 }).unwrap().to_string(), "(1,-,1)");
    }

    #[test]
    fn richardson_springer() {
        let space = SymSpace::AIII { p: 2, q: 1 };
        let c = OrbitIndex::Clan(Clan::parse_one_line(&[1, 2, 3], "(1,1,+)").unwrap());
        assert_eq!(rs_map(space, &c).unwrap().oneline(), &[2, 3, 1]);
        let bi = SymSpace::BI { p: 4, q: 1 };
        let d = dense_clan(bi).unwrap();
        assert_eq!(
            rs_map(bi, &d).unwrap(),
            named_element(bi.kind(), NamedElement::Sigma(1)).unwrap()
        );
        let div = SymSpace::DIV { n: 3 };
        assert_eq!(rs_map(div, &dense_clan(div).unwrap()).unwrap().oneline(), &[1, 3, 2]);
        assert!(rs_map(SymSpace::AIII { p: 1, q: 2 }, &c).is_err());
    }

    #[test]
    fn images() {
        assert_eq!(rs_image(SymSpace::AI { n: 2 }).unwrap().len(), 4);
        assert_eq!(rs_image(SymSpace::CI { n: 2 }).unwrap().len(), 6);
    }

    #[test]
    fn parameter_validation() {
        assert!(SymSpace::DII { p: 3, q: 3 }.validate().is_err());
        assert!(SymSpace::DII { p: 4, q: 2 }.validate().is_ok());
        assert!(SymSpace::DI { p: 3, q: 3 }.validate().is_ok());
        assert!(SymSpace::AII { n: 2 }.validate().is_err());
        assert!(SymSpace::CII { p: 3, q: 1 }.validate().is_err());
        assert!(SymSpace::from_parts("bi", None, Some(5), Some(4)).is_ok());
        assert!(SymSpace::from_parts("XX", Some(1), None, None).is_err());
    }

    #[test]
    fn image_identity_and_dense_images() {
        for name in SPACE_NAMES {
            for n in 1..=5 {
                for space in SymSpace::all_with_rank(name, n) {
                    let dense = dense_clan(space).unwrap();
                    assert_eq!(rs_map(space, &dense).unwrap(), dense_image(space).unwrap(), "{space}");
                    if n > 4 {
                        continue;
                    }
                    let mut image: Vec<_> = enumerate_clans(space)
                        .unwrap()
                        .iter()
                        .map(|g| rs_map(space, g).unwrap())
                        .collect();
                    image.sort();
                    image.dedup();
                    assert_eq!(image, rs_image(space).unwrap(), "{space}");
                }
            }
        }
    }

    #[test]
    fn strictness_matches_fixed_points() {
        for n in 1..=4 {
            for c in all_clans(&signed_base(n, false), ClanSymmetry::SkewSymmetric) {
                let bar: Vec<i32> = c.sigma().unwrap().oneline().iter().map(|&x| -x).collect();
                let no_fixed = bar.iter().enumerate().all(|(i, &x)| x != i as i32 + 1);
                assert_eq!(c.is_strict(), no_fixed, "{c}");
            }
        }
    }

    #[test]
    fn generator_matches_filter() {
        for n in 1..=3 {
            for zero in [false, true] {
                let base = signed_base(n, zero);
                let all = all_clans(&base, ClanSymmetry::Free);
                let sym: Vec<_> = all.iter().filter(|c| c.is_symmetric()).cloned().collect();
                assert_eq!(sym, all_clans(&base, ClanSymmetry::Symmetric));
                let skew: Vec<_> = all.iter().filter(|c| c.is_skew_symmetric()).cloned().collect();
                assert_eq!(skew, all_clans(&base, ClanSymmetry::SkewSymmetric));
            }
        }
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn reversal_and_conjugate_are_involutions(n in 1usize..=3, zero in any::<bool>(), idx in any::<prop::sample::Index>()) {
            let all = all_clans(&signed_base(n, zero), ClanSymmetry::Free);
            let c = idx.get(&all);
            prop_assert_eq!(&c.reversal().reversal(), c);
            prop_assert_eq!(&c.conjugate().conjugate(), c);
            prop_assert_eq!(c.is_symmetric(), *c == c.reversal());
            prop_assert_eq!(c.is_skew_symmetric(), *c == c.reversal().conjugate());
        }
    }
}
