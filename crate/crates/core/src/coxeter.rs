//! Exact arithmetic in the classical Weyl groups `S_{n+1}`, `W_n` and `W⁺_n`.
//!
//! Elements are stored in one-line form. For the signed kinds the entry at
//! position `i` is `w(i)` and the convention `w(-i) = -w(i)` extends the map
//! to `[±n]`. Products compose as functions, so `(u·v)(i) = u(v(i))`.
//!
//! Reduced words are recorded right to left: the word `(i_1, …, i_m)`
//! denotes `t_{i_m} ⋯ t_{i_1}`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank for which whole groups may be enumerated.
pub const MAX_ENUMERATION_RANK: usize = 6;

/// The three classical families of Weyl groups, tagged with their rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WeylKind {
    /// The symmetric group `S_{n+1}` of rank `n`.
    A(usize),
    /// The hyperoctahedral group `W_n` of rank `n`.
    BC(usize),
    /// The even-signed permutation group `W⁺_n` of rank `n`.
    D(usize),
}

impl WeylKind {
    /// Rank of the group.
    pub fn rank(self) -> usize {
        match self {
            WeylKind::A(n) | WeylKind::BC(n) | WeylKind::D(n) => n,
        }
    }

    /// Number of entries in a one-line representation.
    pub fn degree(self) -> usize {
        match self {
            WeylKind::A(n) => n + 1,
            WeylKind::BC(n) | WeylKind::D(n) => n,
        }
    }

    /// Whether elements act on `[±n]` rather than on `[n+1]`.
    pub fn is_signed(self) -> bool {
        !matches!(self, WeylKind::A(_))
    }

    /// The simple generator indices of the group in increasing order.
    pub fn generators(self) -> Vec<i32> {
        match self {
            WeylKind::A(n) => (1..=n as i32).collect(),
            WeylKind::BC(n) => (0..n as i32).collect(),
            WeylKind::D(n) => {
                if n < 2 {
                    Vec::new()
                } else {
                    std::iter::once(-1).chain(1..n as i32).collect()
                }
            }
        }
    }

    /// Whether `i` indexes a simple generator of the group.
    pub fn is_generator(self, i: i32) -> bool {
        match self {
            WeylKind::A(n) => i >= 1 && i <= n as i32,
            WeylKind::BC(n) => i >= 0 && i < n as i32,
            WeylKind::D(n) => n >= 2 && (i == -1 || (i >= 1 && i < n as i32)),
        }
    }

    /// Tag used in the serialized one-line format.
    pub fn tag(self) -> &'static str {
        match self {
            WeylKind::A(_) => "A",
            WeylKind::BC(_) => "BC",
            WeylKind::D(_) => "D",
        }
    }

    /// Number of elements of the group.
    pub fn order(self) -> u64 {
        let fact = |m: usize| (1..=m as u64).product::<u64>();
        match self {
            WeylKind::A(n) => fact(n + 1),
            WeylKind::BC(n) => fact(n) << n,
            WeylKind::D(n) => (fact(n) << n) / 2,
        }
    }
}

impl fmt::Display for WeylKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.tag(), self.rank())
    }
}

/// Index of a simple generator `t_i`.
pub type GeneratorIndex = i32;

/// An element of a classical Weyl group in one-line form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylElement {
    kind: WeylKind,
    oneline: Vec<i32>,
}

impl WeylElement {
    /// The identity element.
    pub fn identity(kind: WeylKind) -> Self {
        WeylElement {
            kind,
            oneline: (1..=kind.degree() as i32).collect(),
        }
    }

    /// Builds an element from its one-line representation, validating it.
    pub fn from_oneline(kind: WeylKind, oneline: Vec<i32>) -> Result<Self> {
        let m = kind.degree();
        if oneline.len() != m {
            return Err(Error::InvalidElement(format!(
                "{:?} has {} entries but {} needs {}",
                oneline,
                oneline.len(),
                kind,
                m
            )));
        }
        let mut seen = vec![false; m + 1];
        for &x in &oneline {
            let a = x.unsigned_abs() as usize;
            if x == 0 || a > m || seen[a] {
                return Err(Error::InvalidElement(format!("{oneline:?} is not a permutation")));
            }
            seen[a] = true;
            if !kind.is_signed() && x < 0 {
                return Err(Error::InvalidElement(format!("{oneline:?} has a negative entry")));
            }
        }
        if let WeylKind::D(_) = kind {
            if oneline.iter().filter(|&&x| x < 0).count() % 2 == 1 {
                return Err(Error::InvalidElement(format!(
                    "{oneline:?} has an odd number of negative entries"
                )));
            }
        }
        Ok(WeylElement { kind, oneline })
    }

    /// Builds an element without validation; callers guarantee the invariants.
    pub(crate) fn from_raw(kind: WeylKind, oneline: Vec<i32>) -> Self {
        debug_assert!(Self::from_oneline(kind, oneline.clone()).is_ok(), "{kind} {oneline:?}");
        WeylElement { kind, oneline }
    }

    /// The group this element lives in.
    pub fn kind(&self) -> WeylKind {
        self.kind
    }

    /// The one-line entries `w(1), w(2), …`.
    pub fn oneline(&self) -> &[i32] {
        &self.oneline
    }

    /// Consumes the element and returns its one-line entries.
    pub fn into_oneline(self) -> Vec<i32> {
        self.oneline
    }

    /// Evaluates `w(i)`, using `w(-i) = -w(i)` and `w(0) = 0` for signed kinds.
    pub fn apply(&self, i: i32) -> i32 {
        match i.cmp(&0) {
            std::cmp::Ordering::Greater => self.oneline[i as usize - 1],
            std::cmp::Ordering::Less => -self.oneline[(-i) as usize - 1],
            std::cmp::Ordering::Equal => 0,
        }
    }

    /// Whether this is the identity element.
    pub fn is_identity(&self) -> bool {
        self.oneline.iter().enumerate().all(|(i, &x)| x == i as i32 + 1)
    }

    fn check_same_kind(&self, other: &Self) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::KindMismatch(self.kind.to_string(), other.kind.to_string()));
        }
        Ok(())
    }

    /// The product `self · other`, that is `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same_kind(other)?;
        Ok(self.mul(other))
    }

    /// Unchecked product; both operands must share a kind.
    pub(crate) fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.kind, other.kind);
        let oneline = other.oneline.iter().map(|&v| self.apply(v)).collect();
        WeylElement {
            kind: self.kind,
            oneline,
        }
    }

    /// The group inverse.
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.oneline.len()];
        for (i, &x) in self.oneline.iter().enumerate() {
            inv[x.unsigned_abs() as usize - 1] = x.signum() * (i as i32 + 1);
        }
        WeylElement {
            kind: self.kind,
            oneline: inv,
        }
    }

    /// Whether the element squares to the identity.
    pub fn is_involution(&self) -> bool {
        self.oneline
            .iter()
            .enumerate()
            .all(|(i, &x)| self.apply(x) == i as i32 + 1)
    }

    /// Number of inversions of the one-line word.
    pub fn inv(&self) -> usize {
        inversions(&self.oneline)
    }

    /// Number of inversions of the word `w(-n) ⋯ w(-1) w(1) ⋯ w(n)`.
    pub fn inv_pm(&self) -> usize {
        let full: Vec<i32> = self
            .oneline
            .iter()
            .rev()
            .map(|&x| -x)
            .chain(self.oneline.iter().copied())
            .collect();
        inversions(&full)
    }

    /// Number of negative entries.
    pub fn ell0(&self) -> usize {
        self.oneline.iter().filter(|&&x| x < 0).count()
    }

    /// Coxeter length.
    pub fn length(&self) -> usize {
        match self.kind {
            WeylKind::A(_) => self.inv(),
            WeylKind::BC(_) => (self.inv_pm() + self.ell0()) / 2,
            WeylKind::D(_) => (self.inv_pm() - self.ell0()) / 2,
        }
    }

    /// Whether `ℓ(w t_i) < ℓ(w)`.
    ///
    /// # Panics
    /// Panics if `i` is not a generator index of the group.
    pub fn has_right_descent(&self, i: GeneratorIndex) -> bool {
        assert!(self.kind.is_generator(i), "t_{i} is not a generator of {}", self.kind);
        match i {
            -1 => self.oneline[0] + self.oneline[1] < 0,
            0 => self.oneline[0] < 0,
            _ => self.oneline[i as usize - 1] > self.oneline[i as usize],
        }
    }

    /// Whether `ℓ(t_i w) < ℓ(w)`.
    pub fn has_left_descent(&self, i: GeneratorIndex) -> bool {
        self.inverse().has_right_descent(i)
    }

    /// All right descents in generator order.
    pub fn right_descents(&self) -> Vec<GeneratorIndex> {
        self.kind
            .generators()
            .into_iter()
            .filter(|&i| self.has_right_descent(i))
            .collect()
    }

    /// The product `w · t_i`.
    ///
    /// # Panics
    /// Panics if `i` is not a generator index of the group.
    pub fn mul_simple_right(&self, i: GeneratorIndex) -> Self {
        assert!(self.kind.is_generator(i), "t_{i} is not a generator of {}", self.kind);
        let mut w = self.oneline.clone();
        match i {
            -1 => {
                let (a, b) = (w[0], w[1]);
                w[0] = -b;
                w[1] = -a;
            }
            0 => w[0] = -w[0],
            _ => w.swap(i as usize - 1, i as usize),
        }
        WeylElement {
            kind: self.kind,
            oneline: w,
        }
    }

    /// The product `t_i · w`.
    ///
    /// # Panics
    /// Panics if `i` is not a generator index of the group.
    pub fn mul_simple_left(&self, i: GeneratorIndex) -> Self {
        assert!(self.kind.is_generator(i), "t_{i} is not a generator of {}", self.kind);
        let oneline = self.oneline.iter().map(|&v| generator_value(i, v)).collect();
        WeylElement {
            kind: self.kind,
            oneline,
        }
    }

    /// Statistics of the element; see [`PermStats`].
    pub fn stats(&self) -> PermStats {
        perm_stats(self)
    }

    /// Serialized form with kind prefix, e.g. `BC:[-2,1,3]`.
    pub fn to_tagged_string(&self) -> String {
        format!("{}:{}", self.kind.tag(), self)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_word(&self.oneline))
    }
}

impl FromStr for WeylElement {
    type Err = Error;

    /// Parses the tagged format `A:[…]`, `BC:[…]` or `D:[…]`.
    fn from_str(s: &str) -> Result<Self> {
        let (tag, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing kind prefix in {s:?}")))?;
        let word = parse_word(rest)?;
        let kind = match tag.trim() {
            "A" => WeylKind::A(word.len().saturating_sub(1)),
            "BC" => WeylKind::BC(word.len()),
            "D" => WeylKind::D(word.len()),
            other => return Err(Error::Parse(format!("unknown kind prefix {other:?}"))),
        };
        WeylElement::from_oneline(kind, word)
    }
}

/// Formats an integer word as `[a,b,c]`.
pub fn format_word(word: &[i32]) -> String {
    let parts: Vec<String> = word.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Parses a bracketed, comma-separated integer word such as `[-2,1,3]`.
pub fn parse_word(s: &str) -> Result<Vec<i32>> {
    let t = s.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected a bracketed list, got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|p| p.trim().parse::<i32>().map_err(|e| Error::Parse(format!("{p:?}: {e}"))))
        .collect()
}

/// Number of pairs `i < j` with `word[i] > word[j]`.
pub fn inversions(word: &[i32]) -> usize {
    let mut count = 0;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                count += 1;
            }
        }
    }
    count
}

/// Image of the integer `v` under the simple generator `t_i` acting on `[±n]` (or `[n+1]`).
pub fn generator_value(i: GeneratorIndex, v: i32) -> i32 {
    let (a, s) = (v.abs(), v.signum());
    match i {
        -1 => match a {
            1 => -2 * s,
            2 => -s,
            _ => v,
        },
        0 => {
            if a == 1 {
                -v
            } else {
                v
            }
        }
        _ => {
            if a == i {
                s * (i + 1)
            } else if a == i + 1 {
                s * i
            } else {
                v
            }
        }
    }
}

/// The simple generator `t_i` as a group element.
pub fn simple(kind: WeylKind, i: GeneratorIndex) -> Result<WeylElement> {
    if !kind.is_generator(i) {
        return Err(Error::GeneratorRange {
            index: i,
            kind: kind.to_string(),
        });
    }
    Ok(WeylElement::identity(kind).mul_simple_right(i))
}

/// The element `t_0` of `W_n`, used for type-D twists; `n` must be positive.
pub fn t0_signed(n: usize) -> Vec<i32> {
    let mut v: Vec<i32> = (1..=n as i32).collect();
    if n > 0 {
        v[0] = -1;
    }
    v
}

/// Left multiplication by `t_0` on a one-line word, i.e. negating the value `±1`.
pub fn t0_left(word: &[i32]) -> Vec<i32> {
    word.iter().map(|&v| if v.abs() == 1 { -v } else { v }).collect()
}

/// A reduced expression `w = s_1 s_2 ⋯ s_m` listed as products read left to right.
pub fn reduced_factorization(w: &WeylElement) -> Vec<GeneratorIndex> {
    let mut rev = Vec::new();
    let mut cur = w.clone();
    let gens = w.kind.generators();
    'outer: loop {
        for &i in &gens {
            if cur.has_right_descent(i) {
                rev.push(i);
                cur = cur.mul_simple_right(i);
                continue 'outer;
            }
        }
        break;
    }
    rev.reverse();
    rev
}

/// The product `w ∘ t_i` of the Demazure monoid.
pub fn demazure_simple_right(w: &WeylElement, i: GeneratorIndex) -> WeylElement {
    if w.has_right_descent(i) {
        w.clone()
    } else {
        w.mul_simple_right(i)
    }
}

/// The product `t_i ∘ w` of the Demazure monoid.
pub fn demazure_simple_left(i: GeneratorIndex, w: &WeylElement) -> WeylElement {
    if w.has_left_descent(i) {
        w.clone()
    } else {
        w.mul_simple_left(i)
    }
}

/// The Demazure product `u ∘ v`.
pub fn demazure(u: &WeylElement, v: &WeylElement) -> Result<WeylElement> {
    u.check_same_kind(v)?;
    let mut acc = u.clone();
    for i in reduced_factorization(v) {
        acc = demazure_simple_right(&acc, i);
    }
    Ok(acc)
}

/// Diagram automorphisms used as the twisting map `Θ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Automorphism {
    /// The identity map.
    Identity,
    /// The type-A flip `t_i ↦ t_{n+1-i}`, equal to conjugation by `w_0`.
    Star,
    /// The type-D flip `t_{±1} ↦ t_{∓1}`, equal to conjugation by `t_0`.
    Diamond,
    /// Conjugation by the longest element, available in every kind.
    AdjointW0,
}

impl Automorphism {
    /// Resolves [`Automorphism::AdjointW0`] into one of the three basic maps.
    pub fn resolve(self, kind: WeylKind) -> Automorphism {
        match (self, kind) {
            (Automorphism::AdjointW0, WeylKind::A(n)) => {
                if n == 0 {
                    Automorphism::Identity
                } else {
                    Automorphism::Star
                }
            }
            (Automorphism::AdjointW0, WeylKind::D(n)) if n % 2 == 1 => Automorphism::Diamond,
            (Automorphism::AdjointW0, _) => Automorphism::Identity,
            (other, _) => other,
        }
    }

    fn check(self, kind: WeylKind) -> Result<()> {
        match (self, kind) {
            (Automorphism::Star, WeylKind::A(_)) | (Automorphism::Diamond, WeylKind::D(_)) => Ok(()),
            (Automorphism::Star, _) | (Automorphism::Diamond, _) => {
                Err(Error::InvalidAutomorphism(format!("{self:?}"), kind.to_string()))
            }
            _ => Ok(()),
        }
    }

    /// The generator index `j` with `Θ(t_i) = t_j`.
    pub fn on_generator(self, kind: WeylKind, i: GeneratorIndex) -> Result<GeneratorIndex> {
        self.check(kind)?;
        if !kind.is_generator(i) {
            return Err(Error::GeneratorRange {
                index: i,
                kind: kind.to_string(),
            });
        }
        Ok(match self.resolve(kind) {
            Automorphism::Star => kind.rank() as i32 + 1 - i,
            Automorphism::Diamond => match i {
                1 => -1,
                -1 => 1,
                _ => i,
            },
            _ => i,
        })
    }
}

/// Applies the automorphism `Θ` to `w`.
pub fn apply_automorphism(theta: Automorphism, w: &WeylElement) -> Result<WeylElement> {
    theta.check(w.kind)?;
    Ok(match theta.resolve(w.kind) {
        Automorphism::Star => {
            let m = w.oneline.len() as i32;
            let oneline = (1..=m).map(|i| m + 1 - w.apply(m + 1 - i)).collect();
            WeylElement { kind: w.kind, oneline }
        }
        Automorphism::Diamond => {
            let mut v = t0_left(&w.oneline);
            if !v.is_empty() {
                v[0] = -v[0];
            }
            WeylElement {
                kind: w.kind,
                oneline: v,
            }
        }
        _ => w.clone(),
    })
}

/// Whether `Θ(z) = z⁻¹`.
pub fn is_twisted_involution(theta: Automorphism, z: &WeylElement) -> Result<bool> {
    Ok(apply_automorphism(theta, z)? == z.inverse())
}

/// `Θ(t_i) ∘ z ∘ t_i` evaluated with the explicit case tables for each kind.
pub fn demazure_conjugate(theta: Automorphism, z: &WeylElement, i: GeneratorIndex) -> Result<WeylElement> {
    if !is_twisted_involution(theta, z)? {
        return Err(Error::NotTwistedInvolution(z.to_tagged_string()));
    }
    if !z.kind.is_generator(i) {
        return Err(Error::GeneratorRange {
            index: i,
            kind: z.kind.to_string(),
        });
    }
    Ok(conjugate_cases(theta.resolve(z.kind), z, i))
}

/// Case-table evaluation without input validation.
pub(crate) fn conjugate_cases(theta: Automorphism, z: &WeylElement, i: GeneratorIndex) -> WeylElement {
    let kind = z.kind;
    let zi = |j: i32| z.apply(j);
    let times = |w: &WeylElement, seq: &[i32]| -> WeylElement {
        // Products with t_0 leave W⁺_n, so they are carried out on raw words.
        let mut v = w.oneline.clone();
        for &g in seq {
            v = right_mul_raw(&v, g);
        }
        WeylElement { kind, oneline: v }
    };
    let left = |seq: &[i32], w: &WeylElement| -> WeylElement {
        let mut v = w.oneline.clone();
        for &g in seq.iter().rev() {
            v = v.iter().map(|&x| generator_value(g, x)).collect();
        }
        WeylElement { kind, oneline: v }
    };
    match (kind, theta) {
        (WeylKind::A(n), Automorphism::Star) => {
            let m = n as i32 + 1;
            if zi(i) == m - i && zi(i + 1) == m + 1 - i {
                z.mul_simple_right(i)
            } else if zi(i) > zi(i + 1) {
                z.clone()
            } else {
                z.mul_simple_right(i).mul_simple_left(m - i)
            }
        }
        (WeylKind::D(_), Automorphism::Identity) if i == -1 => {
            let (a, b) = (zi(1), zi(2));
            if (a == 1 && b == 2) || (a == 2 && b == 1) {
                times(z, &[0, 1, 0])
            } else if a == -1 && b == 2 {
                times(z, &[0, 1, 0, 1])
            } else if a + b < 0 {
                z.clone()
            } else {
                left(&[0, 1, 0], &times(z, &[0, 1, 0]))
            }
        }
        (WeylKind::D(_), Automorphism::Diamond) if i == 1 => {
            let (a, b) = (zi(1), zi(2));
            if (a == -1 && b == 2) || (a == -2 && b == 1) {
                times(z, &[1])
            } else if a == 1 && b == 2 {
                times(z, &[0, 1, 0, 1])
            } else if a > b {
                z.clone()
            } else {
                left(&[0, 1, 0], &times(z, &[1]))
            }
        }
        (WeylKind::D(_), Automorphism::Diamond) if i == -1 => {
            let (a, b) = (zi(1), zi(2));
            if (a == -1 && b == 2) || (a == 2 && b == -1) {
                times(z, &[0, 1, 0])
            } else if a == 1 && b == 2 {
                times(z, &[0, 1, 0, 1])
            } else if a + b < 0 {
                z.clone()
            } else {
                left(&[1], &times(z, &[0, 1, 0]))
            }
        }
        _ => {
            // Types A, B, C with Θ = id, and type D away from t_{±1}.
            let zz = |j: i32| if j == 0 { 0 } else { zi(j) };
            if (zz(i) == i && zz(i + 1) == i + 1) || (i > 0 && zz(i) == -i - 1 && zz(i + 1) == -i) {
                z.mul_simple_right(i)
            } else if zz(i) > zz(i + 1) {
                z.clone()
            } else {
                z.mul_simple_right(i).mul_simple_left(i)
            }
        }
    }
}

fn right_mul_raw(v: &[i32], g: i32) -> Vec<i32> {
    let mut w = v.to_vec();
    match g {
        -1 => {
            let (a, b) = (w[0], w[1]);
            w[0] = -b;
            w[1] = -a;
        }
        0 => w[0] = -w[0],
        _ => w.swap(g as usize - 1, g as usize),
    }
    w
}

/// `Θ(t_i) ∘ z ∘ t_i` computed from the generic Demazure product.
pub fn demazure_conjugate_generic(theta: Automorphism, z: &WeylElement, i: GeneratorIndex) -> Result<WeylElement> {
    let j = theta.on_generator(z.kind, i)?;
    let zs = demazure_simple_right(z, i);
    Ok(demazure_simple_left(j, &zs))
}

/// Elements with a name attached, as used for dense orbits and conjectures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NamedElement {
    /// The longest element (for `W⁺_n` with `n` odd, the maximal-length element `1 -2 ⋯ -n`).
    W0,
    /// `ω_k` in a symmetric group; needs the degree minus `k` to be even.
    Omega(usize),
    /// `σ_k = -1 ⋯ -k (k+1) ⋯ n`.
    Sigma(usize),
    /// `σ̂_k`, equal to `σ_k` for even `k` and `t_0 σ_k` for odd `k`.
    SigmaHat(usize),
    /// `σ_{k×fpf} = -1 ⋯ -k (k+2)(k+1) ⋯ n(n-1)`; needs `n - k` even.
    SigmaFpf(usize),
    /// The maximal-length fixed-point-free involution `υ₀` of `W_n`.
    Upsilon0,
    /// The maximal-length element `υ₀⁺` of `W⁺_n` used in type-D conjectures.
    Upsilon0Plus,
}

/// Builds a named element of the given group.
pub fn named_element(kind: WeylKind, name: NamedElement) -> Result<WeylElement> {
    let m = kind.degree();
    let param = |msg: String| Err(Error::Parameter(msg));
    let word: Vec<i32> = match name {
        NamedElement::W0 => match kind {
            WeylKind::A(_) => (1..=m as i32).rev().collect(),
            WeylKind::BC(_) => (1..=m as i32).map(|i| -i).collect(),
            WeylKind::D(n) => (1..=m as i32)
                .map(|i| if n % 2 == 1 && i == 1 { 1 } else { -i })
                .collect(),
        },
        NamedElement::Omega(k) => {
            if !matches!(kind, WeylKind::A(_)) {
                return param(format!("ω_k lives in a symmetric group, not {kind}"));
            }
            if k > m || (m - k) % 2 == 1 {
                return param(format!("ω_{k} needs {m} - {k} even and k ≤ {m}"));
            }
            let i = (m - k) / 2;
            let j = (m + k) / 2 + 1;
            let mut w: Vec<i32> = (1..=m as i32).collect();
            let mut t = 1;
            while i + t < j - t {
                w.swap(i + t - 1, j - t - 1);
                t += 1;
            }
            w
        }
        NamedElement::Sigma(k) | NamedElement::SigmaHat(k) => {
            if !kind.is_signed() || k > m {
                return param(format!("σ_{k} is not defined in {kind}"));
            }
            let mut w: Vec<i32> = (1..=m as i32).map(|i| if i as usize <= k { -i } else { i }).collect();
            if matches!(name, NamedElement::SigmaHat(_)) && k % 2 == 1 {
                w = t0_left(&w);
            }
            w
        }
        NamedElement::SigmaFpf(k) => {
            if !kind.is_signed() || k > m || (m - k) % 2 == 1 {
                return param(format!("σ_{{{k}×fpf}} needs n - k even in {kind}"));
            }
            let mut w: Vec<i32> = (1..=m as i32).map(|i| if i as usize <= k { -i } else { i }).collect();
            let mut p = k;
            while p + 1 < m {
                w.swap(p, p + 1);
                p += 2;
            }
            w
        }
        NamedElement::Upsilon0 => {
            if !matches!(kind, WeylKind::BC(_)) {
                return param(format!("υ₀ lives in W_n, not {kind}"));
            }
            upsilon_pairs(m)
        }
        NamedElement::Upsilon0Plus => {
            if !matches!(kind, WeylKind::D(_)) {
                return param(format!("υ₀⁺ lives in W⁺_n, not {kind}"));
            }
            let mut w = upsilon_pairs(m);
            if m % 2 == 1 {
                w = t0_left(&w);
            } else if m % 4 == 2 {
                w[0] = 2;
                w[1] = 1;
            }
            w
        }
    };
    WeylElement::from_oneline(kind, word)
}

/// The word `-2 -1 -4 -3 ⋯` with a trailing `-n` when `n` is odd.
fn upsilon_pairs(n: usize) -> Vec<i32> {
    let mut w = Vec::with_capacity(n);
    let mut i = 1;
    while i < n {
        w.push(-(i as i32 + 1));
        w.push(-(i as i32));
        i += 2;
    }
    if n % 2 == 1 {
        w.push(-(n as i32));
    }
    w
}

/// Permutation statistics of a Weyl group element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermStats {
    /// `{i : w(i) + i = n + 2}` for `w ∈ S_{n+1}`; empty for signed kinds.
    pub twist_set: Vec<i32>,
    /// Size of `twist_set`.
    pub twist: usize,
    /// Fixed points in `[n]` (or `[n+1]` for type A).
    pub fix_set: Vec<i32>,
    /// `{i ∈ [n] : w(i) = -i}`.
    pub negate_set: Vec<i32>,
    /// Size of `negate_set`.
    pub neg: usize,
    /// Number of negative one-line entries.
    pub ell0: usize,
    /// Inversions of the one-line word.
    pub inv: usize,
    /// Inversions of the word over `[±n]`.
    pub inv_pm: usize,
}

/// Computes the statistics record of `w`.
pub fn perm_stats(w: &WeylElement) -> PermStats {
    let m = w.oneline.len() as i32;
    let twist_set: Vec<i32> = if w.kind.is_signed() {
        Vec::new()
    } else {
        (1..=m).filter(|&i| w.apply(i) + i == m + 1).collect()
    };
    let negate_set: Vec<i32> = if w.kind.is_signed() {
        (1..=m).filter(|&i| w.apply(i) == -i).collect()
    } else {
        Vec::new()
    };
    PermStats {
        twist: twist_set.len(),
        twist_set,
        fix_set: (1..=m).filter(|&i| w.apply(i) == i).collect(),
        neg: negate_set.len(),
        negate_set,
        ell0: w.ell0(),
        inv: w.inv(),
        inv_pm: if w.kind.is_signed() { w.inv_pm() } else { 0 },
    }
}

/// The set `{i ∈ [n] : w(i) = -i}`.
pub fn negate_set(w: &WeylElement) -> Vec<i32> {
    (1..=w.oneline.len() as i32).filter(|&i| w.apply(i) == -i).collect()
}

/// The set `{i : w(i) + i = n + 2}` of a permutation in `S_{n+1}`.
pub fn twist_set(w: &WeylElement) -> Vec<i32> {
    let m = w.oneline.len() as i32;
    (1..=m).filter(|&i| w.apply(i) + i == m + 1).collect()
}

/// The element `i ↦ -w(i)`; it stays in `W⁺_n` only when `n` is even.
pub fn bar_negate(w: &WeylElement) -> Result<WeylElement> {
    if !w.kind.is_signed() {
        return Err(Error::InvalidElement(format!("{} is unsigned", w.to_tagged_string())));
    }
    WeylElement::from_oneline(w.kind, w.oneline.iter().map(|&x| -x).collect())
}

/// Returns whichever of `a` and `a` with its first letter negated has evenly many negative letters.
pub fn es_normalize(word: &[i32]) -> Result<Vec<i32>> {
    match word.first() {
        None => Ok(Vec::new()),
        Some(0) => Err(Error::Malformed("first letter is zero".into())),
        Some(_) => {
            let mut a = word.to_vec();
            if a.iter().filter(|&&x| x < 0).count() % 2 == 1 {
                a[0] = -a[0];
            }
            Ok(a)
        }
    }
}

/// Reduced words of `w`, each listed right to left, sorted lexicographically.
///
/// With `limit = Some(m)` at most `m` words are returned.
pub fn reduced_words(w: &WeylElement, limit: Option<usize>) -> Vec<Vec<GeneratorIndex>> {
    let mut memo = HashMap::new();
    let mut all = reduced_words_memo(w, &mut memo);
    all.sort();
    if let Some(m) = limit {
        all.truncate(m);
    }
    all
}

fn reduced_words_memo(w: &WeylElement, memo: &mut HashMap<WeylElement, Vec<Vec<i32>>>) -> Vec<Vec<i32>> {
    if let Some(v) = memo.get(w) {
        return v.clone();
    }
    let mut out = Vec::new();
    let desc = w.right_descents();
    if desc.is_empty() {
        out.push(Vec::new());
    }
    for s in desc {
        let rest = reduced_words_memo(&w.mul_simple_right(s), memo);
        for r in rest {
            let mut word = Vec::with_capacity(r.len() + 1);
            word.push(s);
            word.extend(r);
            out.push(word);
        }
    }
    memo.insert(w.clone(), out.clone());
    out
}

/// Evaluates a right-to-left word `(i_1, …, i_m)` as `t_{i_m} ⋯ t_{i_1}`.
pub fn word_product(kind: WeylKind, word: &[GeneratorIndex]) -> Result<WeylElement> {
    let mut w = WeylElement::identity(kind);
    for &i in word {
        if !kind.is_generator(i) {
            return Err(Error::GeneratorRange {
                index: i,
                kind: kind.to_string(),
            });
        }
        w = w.mul_simple_left(i);
    }
    Ok(w)
}

/// Every element of the group, sorted; gated at rank [`MAX_ENUMERATION_RANK`].
pub fn enumerate_group(kind: WeylKind) -> Result<Vec<WeylElement>> {
    if kind.rank() > MAX_ENUMERATION_RANK {
        return Err(Error::RankBound(format!("{kind} exceeds rank {MAX_ENUMERATION_RANK}")));
    }
    let m = kind.degree();
    let mut out = Vec::with_capacity(kind.order() as usize);
    let base: Vec<i32> = (1..=m as i32).collect();
    for perm in itertools::Itertools::permutations(base.into_iter(), m) {
        if !kind.is_signed() {
            out.push(WeylElement { kind, oneline: perm });
            continue;
        }
        for mask in 0u32..(1 << m) {
            if matches!(kind, WeylKind::D(_)) && mask.count_ones() % 2 == 1 {
                continue;
            }
            let oneline = perm
                .iter()
                .enumerate()
                .map(|(i, &x)| if mask >> i & 1 == 1 { -x } else { x })
                .collect();
            out.push(WeylElement { kind, oneline });
        }
    }
    out.sort();
    Ok(out)
}

/// All `z` with `Θ(z) = z⁻¹`, sorted.
pub fn twisted_involutions(kind: WeylKind, theta: Automorphism) -> Result<Vec<WeylElement>> {
    theta.check(kind)?;
    let mut out = Vec::new();
    for w in enumerate_group(kind)? {
        if apply_automorphism(theta, &w)? == w.inverse() {
            out.push(w);
        }
    }
    Ok(out)
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn element(kind: WeylKind) -> impl Strategy<Value = WeylElement> {
        let m = kind.degree();
        (
            Just((1..=m as i32).collect::<Vec<_>>()).prop_shuffle(),
            proptest::collection::vec(any::<bool>(), m),
        )
            .prop_map(move |(perm, signs)| {
                let mut v: Vec<i32> = perm
                    .iter()
                    .zip(&signs)
                    .map(|(&x, &s)| if s && kind.is_signed() { -x } else { x })
                    .collect();
                if matches!(kind, WeylKind::D(_)) && v.iter().filter(|&&x| x < 0).count() % 2 == 1 {
                    v[0] = -v[0];
                }
                WeylElement::from_oneline(kind, v).unwrap()
            })
    }

    fn triple() -> impl Strategy<Value = (WeylElement, WeylElement, WeylElement)> {
        prop_oneof![
            Just(WeylKind::A(4)),
            Just(WeylKind::BC(4)),
            Just(WeylKind::D(4)),
            Just(WeylKind::A(5)),
            Just(WeylKind::D(5))
        ]
        .prop_flat_map(|k| (element(k), element(k), element(k)))
    }

    proptest! {
        #[test]
        fn demazure_is_associative((u, v, w) in triple()) {
            let left = demazure(&demazure(&u, &v).unwrap(), &w).unwrap();
            let right = demazure(&u, &demazure(&v, &w).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn demazure_inverse_and_automorphism((u, v, _w) in triple()) {
            let uv = demazure(&u, &v).unwrap();
            prop_assert_eq!(uv.inverse(), demazure(&v.inverse(), &u.inverse()).unwrap());
            prop_assert!(uv.length() <= u.length() + v.length());
            prop_assert_eq!(uv.length() == u.length() + v.length(), uv == u.mul(&v));
            let theta = match u.kind() {
                WeylKind::A(_) => Automorphism::Star,
                WeylKind::D(_) => Automorphism::Diamond,
                WeylKind::BC(_) => Automorphism::AdjointW0,
            };
            let t = |x: &WeylElement| apply_automorphism(theta, x).unwrap();
            prop_assert_eq!(t(&uv), demazure(&t(&u), &t(&v)).unwrap());
        }

        #[test]
        fn inverse_is_two_sided((u, v, _w) in triple()) {
            prop_assert!(u.mul(&u.inverse()).is_identity());
            prop_assert_eq!(u.mul(&v).inverse(), v.inverse().mul(&u.inverse()));
        }
    }
}
