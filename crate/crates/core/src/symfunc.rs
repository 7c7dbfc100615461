//! Exact polynomials and the symmetric functions attached to involutions.
//!
//! The module provides a sparse integer polynomial type, truncated Schur
//! `Q`, `P` and `S` functions, Stanley symmetric functions of the four
//! classical types, type-A Schubert polynomials, and the involution Schubert
//! and Stanley functions obtained by summing over inverse atoms. Conjectural
//! identities can be evaluated as reports.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::brion::e_theta;
use crate::coxeter::{
    is_twisted_involution, named_element, t0_left, Automorphism, GeneratorIndex, NamedElement, WeylElement, WeylKind,
};
use crate::error::{Error, Result};

/// Coefficient type of [`IntPolynomial`].
pub type Coeff = i128;

/// Default bound on the Coxeter length accepted by Stanley computations.
pub const DEFAULT_LENGTH_CAP: usize = 16;

/// A sparse polynomial in `x_1, …, x_m` with exact integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Coeff>,
}

impl IntPolynomial {
    /// The zero polynomial in `nvars` variables.
    pub fn zero(nvars: usize) -> Self {
        IntPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial `1` in `nvars` variables.
    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    /// The constant polynomial `c`.
    pub fn constant(nvars: usize, c: Coeff) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The variable `x_i`, with `i` counted from one.
    ///
    /// # Panics
    /// Panics if `i` is zero or exceeds `nvars`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= nvars, "x{i} is not among {nvars} variables");
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        Self::monomial(nvars, e, 1)
    }

    /// The single term `c · x^exponents`.
    ///
    /// # Panics
    /// Panics if the exponent vector does not have `nvars` entries.
    pub fn monomial(nvars: usize, exponents: Vec<u32>, c: Coeff) -> Self {
        assert_eq!(
            exponents.len(),
            nvars,
            "exponent vector length must equal the variable count"
        );
        let mut p = Self::zero(nvars);
        p.add_term(exponents, c);
        p
    }

    /// Number of variables.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// The nonzero terms, keyed by exponent vector in increasing order.
    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Coeff> {
        &self.terms
    }

    /// The coefficient of `x^exponents`.
    pub fn coefficient(&self, exponents: &[u32]) -> Coeff {
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    /// Whether every coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&c| c > 0)
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Adds `c · x^exponents` in place.
    pub fn add_term(&mut self, exponents: Vec<u32>, c: Coeff) {
        if c == 0 {
            return;
        }
        match self.terms.entry(exponents) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if *slot.get() == 0 {
                    slot.remove();
                }
            }
        }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: Coeff) -> Self {
        if c == 0 {
            return Self::zero(self.nvars);
        }
        IntPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, &v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Divides every coefficient by `d`, failing unless each division is exact.
    pub fn div_exact(&self, d: Coeff) -> Result<Self> {
        if d == 0 {
            return Err(Error::NonExactDivision("division by zero".into()));
        }
        let mut terms = BTreeMap::new();
        for (e, &v) in &self.terms {
            if v % d != 0 {
                return Err(Error::NonExactDivision(format!(
                    "coefficient {v} is not divisible by {d}"
                )));
            }
            terms.insert(e.clone(), v / d);
        }
        Ok(IntPolynomial {
            nvars: self.nvars,
            terms,
        })
    }

    /// Whether the polynomial is invariant under every permutation of the variables.
    pub fn is_symmetric(&self) -> bool {
        (1..self.nvars).all(|i| {
            self.terms.iter().all(|(e, &v)| {
                let mut f = e.clone();
                f.swap(i - 1, i);
                self.coefficient(&f) == v
            })
        })
    }

    /// Sets `x_{k+1}, …, x_m` to zero and drops them, giving a polynomial in `k` variables.
    pub fn truncate(&self, k: usize) -> Self {
        let k = k.min(self.nvars);
        let mut out = Self::zero(k);
        for (e, &v) in &self.terms {
            if e[k..].iter().all(|&a| a == 0) {
                out.add_term(e[..k].to_vec(), v);
            }
        }
        out
    }

    /// Reinterprets the polynomial in `k ≥ nvars` variables.
    pub fn extend(&self, k: usize) -> Self {
        assert!(k >= self.nvars, "cannot extend {} variables to {k}", self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(e, &v)| {
                let mut f = e.clone();
                f.resize(k, 0);
                (f, v)
            })
            .collect();
        IntPolynomial { nvars: k, terms }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "polynomials in different numbers of variables");
    }

    /// JSON form: `{"nvars": m, "terms": [{"coeff": c, "exponents": [...]}, ...]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, &c)| {
                let coeff = i64::try_from(c)
                    .map(Value::from)
                    .unwrap_or_else(|_| Value::from(c.to_string()));
                json!({ "coeff": coeff, "exponents": e })
            })
            .collect();
        json!({ "nvars": self.nvars, "terms": terms })
    }

    /// Parses the JSON form produced by [`IntPolynomial::to_json`].
    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("polynomial JSON: {msg}"));
        let nvars = value
            .get("nvars")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing nvars"))? as usize;
        let mut p = Self::zero(nvars);
        for t in value
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing terms"))?
        {
            let c = match t.get("coeff") {
                Some(Value::Number(n)) => n.as_i64().ok_or_else(|| bad("coefficient out of range"))? as Coeff,
                Some(Value::String(s)) => s.parse().map_err(|_| bad("coefficient"))?,
                _ => return Err(bad("missing coefficient")),
            };
            let e: Vec<u32> = serde_json::from_value(t.get("exponents").cloned().unwrap_or(Value::Null))
                .map_err(|_| bad("exponents"))?;
            if e.len() != nvars {
                return Err(bad("exponent vector length"));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl fmt::Display for IntPolynomial {
    /// Terms `c * x1^a1 ... xm^am` in increasing exponent order joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, &c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c} *")?;
            if self.nvars == 0 {
                write!(f, " 1")?;
            }
            for (i, a) in e.iter().enumerate() {
                write!(f, " x{}^{}", i + 1, a)?;
            }
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    /// Parses the text form written by `Display`; the variable count is the
    /// largest index mentioned, so use [`IntPolynomial::extend`] when needed.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero(0));
        }
        let mut parsed = Vec::new();
        let mut nvars = 0;
        for term in s.split(" + ") {
            let (c, rest) = term
                .split_once(" *")
                .ok_or_else(|| Error::Parse(format!("term {term:?}")))?;
            let c: Coeff = c
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("coefficient in {term:?}")))?;
            let mut e = Vec::new();
            for factor in rest.split_whitespace().filter(|f| *f != "1") {
                let (v, a) = factor
                    .strip_prefix('x')
                    .and_then(|x| x.split_once('^'))
                    .ok_or_else(|| Error::Parse(format!("factor {factor:?}")))?;
                let v: usize = v.parse().map_err(|_| Error::Parse(format!("factor {factor:?}")))?;
                let a: u32 = a.parse().map_err(|_| Error::Parse(format!("factor {factor:?}")))?;
                if v == 0 {
                    return Err(Error::Parse(format!("variable index in {factor:?}")));
                }
                nvars = nvars.max(v);
                e.push((v, a));
            }
            parsed.push((c, e));
        }
        let mut p = Self::zero(nvars);
        for (c, e) in parsed {
            let mut v = vec![0; nvars];
            for (i, a) in e {
                v[i - 1] += a;
            }
            p.add_term(v, c);
        }
        Ok(p)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        self.check_same(rhs);
        let mut out = self.clone();
        for (e, &v) in &rhs.terms {
            out.add_term(e.clone(), v);
        }
        out
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        self.scale(-1)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        self.check_same(rhs);
        let mut acc: BTreeMap<Vec<u32>, Coeff> = BTreeMap::new();
        for (a, &u) in &self.terms {
            for (b, &v) in &rhs.terms {
                let e: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_insert(0) += u * v;
            }
        }
        acc.retain(|_, v| *v != 0);
        IntPolynomial {
            nvars: self.nvars,
            terms: acc,
        }
    }
}

/// A strict partition `λ_1 > λ_2 > … > λ_l > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StrictPartition {
    parts: Vec<u32>,
}

impl StrictPartition {
    /// Validates and wraps the parts.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Parameter(format!("{parts:?} is not a strict partition")));
        }
        Ok(StrictPartition { parts })
    }

    /// The empty partition.
    pub fn empty() -> Self {
        StrictPartition { parts: Vec::new() }
    }

    /// The staircase `(n, n-1, …, 1)`.
    pub fn staircase(n: u32) -> Self {
        StrictPartition {
            parts: (1..=n).rev().collect(),
        }
    }

    /// The partition `(n, n-2, n-4, …)` with positive parts.
    pub fn step_two(n: u32) -> Self {
        StrictPartition {
            parts: (1..=n).rev().filter(|p| (n - p).is_multiple_of(2)).collect(),
        }
    }

    /// The parts in decreasing order.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// Whether there are no parts.
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The size `|λ|`.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `λ ⊖ a`: the partition with the part `a` removed.
    pub fn remove_part(&self, a: u32) -> Result<Self> {
        let pos = self
            .parts
            .iter()
            .position(|&p| p == a)
            .ok_or_else(|| Error::Parameter(format!("{a} is not a part of {self}")))?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Ok(StrictPartition { parts })
    }

    /// `λ + δ` with `δ = (ℓ, ℓ-1, …, 1)` for `ℓ = ℓ(λ)`.
    pub fn plus_staircase(&self) -> Self {
        let l = self.len() as u32;
        StrictPartition {
            parts: self.parts.iter().enumerate().map(|(i, p)| p + l - i as u32).collect(),
        }
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for StrictPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        if inner.trim().is_empty() {
            return Ok(Self::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("partition {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

/// Which Schur-type function to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SchurKind {
    /// Schur `Q`-function.
    Q,
    /// Schur `P`-function, `2^{-ℓ(λ)} Q_λ`.
    P,
    /// `S_λ = Q_{(λ+δ)/δ}`.
    S,
}

impl FromStr for SchurKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Q" | "q" => Ok(SchurKind::Q),
            "P" | "p" => Ok(SchurKind::P),
            "S" | "s" => Ok(SchurKind::S),
            _ => Err(Error::Parse(format!("unknown Schur kind {s:?}"))),
        }
    }
}

/// Truncation to `m` variables of `Q_{λ/μ}`, `P_{λ/μ}` or `S_λ`.
///
/// A skew shape is only accepted for `Q` and `P`; for `P` the result is
/// `2^{ℓ(μ)-ℓ(λ)} Q_{λ/μ}` and the division must be exact.
pub fn schur_qps(
    kind: SchurKind,
    lambda: &StrictPartition,
    mu: Option<&StrictPartition>,
    m: usize,
) -> Result<IntPolynomial> {
    let empty = StrictPartition::empty();
    let mu = mu.unwrap_or(&empty);
    match kind {
        SchurKind::Q => q_skew(lambda, mu, m),
        SchurKind::P => {
            let q = q_skew(lambda, mu, m)?;
            let drop = lambda.len().saturating_sub(mu.len()) as u32;
            q.div_exact(1 << drop)
        }
        SchurKind::S => {
            if !mu.is_empty() {
                return Err(Error::Parameter("S_λ takes no inner shape".into()));
            }
            let delta = StrictPartition::staircase(lambda.len() as u32);
            q_skew(&lambda.plus_staircase(), &delta, m)
        }
    }
}

/// Cells of the shifted diagram of `λ`, as `(row, column)` with row `r` starting at column `r`.
fn shifted_row_cells(r: usize, from: u32, to: u32) -> impl Iterator<Item = (usize, usize)> {
    (from..to).map(move |c| (r, r + c as usize))
}

/// Number of connected components of a skew shifted shape that one letter can fill, or `None`.
///
/// A cell with a neighbour of the strip on its left must hold `k` and a cell
/// with a neighbour below must hold `k'`, so no cell may have both; then each
/// component has a single free cell at its lower-left end.
fn strip_components(inner: &[u32], outer: &[u32]) -> Option<u32> {
    let cells: Vec<(usize, usize)> = (0..outer.len())
        .flat_map(|r| shifted_row_cells(r, inner[r], outer[r]))
        .collect();
    let set: std::collections::HashSet<(usize, usize)> = cells.iter().copied().collect();
    for &(r, c) in &cells {
        let left = c > 0 && set.contains(&(r, c - 1));
        if left && set.contains(&(r + 1, c)) {
            return None;
        }
    }
    let mut seen = std::collections::HashSet::new();
    let mut comps = 0;
    for &start in &cells {
        if !seen.insert(start) {
            continue;
        }
        comps += 1;
        let mut stack = vec![start];
        while let Some((r, c)) = stack.pop() {
            let nbrs = [(r + 1, c), (r, c + 1), (r.wrapping_sub(1), c), (r, c.wrapping_sub(1))];
            for nb in nbrs {
                if set.contains(&nb) && seen.insert(nb) {
                    stack.push(nb);
                }
            }
        }
    }
    Some(comps)
}

fn is_shifted_shape(rows: &[u32]) -> bool {
    rows.windows(2).all(|w| w[1] == 0 || w[0] > w[1])
}

/// All shapes `ν` with `inner ⊆ ν ⊆ outer`, row by row.
fn intermediate_shapes(inner: &[u32], outer: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for r in 0..outer.len() {
        let mut next = Vec::new();
        for prefix in &out {
            for v in inner[r]..=outer[r] {
                let mut p: Vec<u32> = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out.retain(|v| is_shifted_shape(v));
    out
}

/// `Q_{λ/μ}(x_1, …, x_m)` by the marked shifted tableaux rule, one letter at a time.
///
/// The entries in `{k', k}` of a marked shifted tableau fill a skew shape in
/// which each connected piece admits exactly two fillings.
fn q_skew(lambda: &StrictPartition, mu: &StrictPartition, m: usize) -> Result<IntPolynomial> {
    let rows = lambda.len();
    if mu.len() > rows {
        return Ok(IntPolynomial::zero(m));
    }
    let outer = lambda.parts.clone();
    let mut inner = mu.parts.clone();
    inner.resize(rows, 0);
    if inner.iter().zip(&outer).any(|(a, b)| a > b) {
        return Ok(IntPolynomial::zero(m));
    }
    let mut layer: HashMap<Vec<u32>, IntPolynomial> = HashMap::new();
    layer.insert(inner.clone(), IntPolynomial::one(m));
    for j in 0..m {
        let mut next: HashMap<Vec<u32>, IntPolynomial> = HashMap::new();
        for (nu, poly) in &layer {
            for nu2 in intermediate_shapes(nu, &outer) {
                let Some(comps) = strip_components(nu, &nu2) else {
                    continue;
                };
                let size: u32 = nu2.iter().zip(nu.iter()).map(|(a, b)| a - b).sum();
                let mut e = vec![0; m];
                e[j] = size;
                let factor = IntPolynomial::monomial(m, e, 1 << comps);
                let term = poly * &factor;
                let slot = next.entry(nu2).or_insert_with(|| IntPolynomial::zero(m));
                *slot = &*slot + &term;
            }
        }
        layer = next;
    }
    Ok(layer.remove(&outer).unwrap_or_else(|| IntPolynomial::zero(m)))
}

/// Independent computation of a straight `Q_λ(x_1, …, x_m)` through Schur's Pfaffian.
///
/// One-row functions come from the generating function `∏ (1 + x_i t)/(1 - x_i t)`
/// and two-row functions from the usual quadratic relation.
pub fn q_pfaffian_oracle(lambda: &StrictPartition, m: usize) -> IntPolynomial {
    let top = lambda.parts.first().copied().unwrap_or(0) as usize * 2 + 2;
    let one_row = q_one_row_table(top, m);
    let q2 = |a: usize, b: usize| -> IntPolynomial {
        let mut acc = &one_row[a] * &one_row[b];
        for k in 1..=b {
            let t = (&one_row[a + k] * &one_row[b - k]).scale(if k % 2 == 0 { 2 } else { -2 });
            acc = &acc + &t;
        }
        acc
    };
    let mut parts: Vec<usize> = lambda.parts.iter().map(|&p| p as usize).collect();
    if parts.len() % 2 == 1 {
        parts.push(0);
    }
    fn pf(idx: &[usize], parts: &[usize], q2: &dyn Fn(usize, usize) -> IntPolynomial, m: usize) -> IntPolynomial {
        if idx.is_empty() {
            return IntPolynomial::one(m);
        }
        let mut acc = IntPolynomial::zero(m);
        for j in 1..idx.len() {
            let rest: Vec<usize> = idx
                .iter()
                .enumerate()
                .filter(|&(t, _)| t != 0 && t != j)
                .map(|(_, &v)| v)
                .collect();
            let term = &q2(parts[idx[0]], parts[idx[j]]) * &pf(&rest, parts, q2, m);
            acc = if j % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        acc
    }
    let idx: Vec<usize> = (0..parts.len()).collect();
    pf(&idx, &parts, &q2, m)
}

/// `Q_r(x_1, …, x_m)` for `0 ≤ r < len`.
fn q_one_row_table(len: usize, m: usize) -> Vec<IntPolynomial> {
    let mut series: Vec<IntPolynomial> = (0..len)
        .map(|r| {
            if r == 0 {
                IntPolynomial::one(m)
            } else {
                IntPolynomial::zero(m)
            }
        })
        .collect();
    for i in 1..=m {
        let x = IntPolynomial::var(m, i);
        let mut factor = vec![IntPolynomial::one(m)];
        let mut pow = IntPolynomial::one(m);
        for _ in 1..len {
            pow = &pow * &x;
            factor.push(pow.scale(2));
        }
        let mut next = vec![IntPolynomial::zero(m); len];
        for (a, sa) in series.iter().enumerate() {
            for (b, fb) in factor.iter().enumerate().take(len - a) {
                next[a + b] = &next[a + b] + &(sa * fb);
            }
        }
        series = next;
    }
    series
}

/// The classical type of a Stanley symmetric function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StanleyType {
    /// Type A, on a symmetric group.
    A,
    /// Type B, on `W_n`.
    B,
    /// Type C, on `W_n`.
    C,
    /// Type D, on `W⁺_n`.
    D,
}

impl FromStr for StanleyType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(StanleyType::A),
            "B" => Ok(StanleyType::B),
            "C" => Ok(StanleyType::C),
            "D" => Ok(StanleyType::D),
            _ => Err(Error::Parse(format!("unknown Stanley type {s:?}"))),
        }
    }
}

fn stanley_kind_ok(ty: StanleyType, kind: WeylKind) -> bool {
    matches!(
        (ty, kind),
        (StanleyType::A, WeylKind::A(_))
            | (StanleyType::B, WeylKind::BC(_))
            | (StanleyType::C, WeylKind::BC(_))
            | (StanleyType::D, WeylKind::D(_))
    )
}

/// Memoized evaluator of truncated Stanley symmetric functions.
///
/// A reduced word is cut into `m` consecutive factors, each factor being
/// decreasing (type A) or unimodal (types C and D, the latter after reading
/// `t_{-1}` as `t_1`). Grouping words by the elements their factors spell,
/// the sum becomes a recursion over length-additive factorizations
/// `w = u_1 ⋯ u_b` into elements with such a word. The quasisymmetric
/// expansion is memoized per element and only compositions with at most `m`
/// parts are kept.
pub struct StanleyEngine {
    ty: StanleyType,
    kind: WeylKind,
    m: usize,
    cap: usize,
    /// `(u⁻¹, ℓ(u), 2 · weight)` for every element with a factor word.
    blocks: Vec<(WeylElement, usize, Coeff)>,
    memo: HashMap<WeylElement, HashMap<Vec<u8>, Coeff>>,
}

impl StanleyEngine {
    /// An engine for `ty` on `kind`, truncated to `m` variables, with the default length cap.
    pub fn new(ty: StanleyType, kind: WeylKind, m: usize) -> Result<Self> {
        Self::with_cap(ty, kind, m, DEFAULT_LENGTH_CAP)
    }

    /// An engine with an explicit bound on `ℓ(w)`.
    pub fn with_cap(ty: StanleyType, kind: WeylKind, m: usize, cap: usize) -> Result<Self> {
        if !stanley_kind_ok(ty, kind) {
            return Err(Error::KindMismatch(
                format!("type {ty:?} Stanley function"),
                kind.to_string(),
            ));
        }
        let blocks = factor_blocks(ty, kind);
        Ok(StanleyEngine {
            ty,
            kind,
            m,
            cap,
            blocks,
            memo: HashMap::new(),
        })
    }

    /// Number of variables of the truncation.
    pub fn nvars(&self) -> usize {
        self.m
    }

    /// The truncated Stanley symmetric function of `w`.
    pub fn eval(&mut self, w: &WeylElement) -> Result<IntPolynomial> {
        if w.kind() != self.kind {
            return Err(Error::KindMismatch(w.kind().to_string(), self.kind.to_string()));
        }
        if w.length() > self.cap {
            return Err(Error::RankBound(format!(
                "ℓ({w:?}) = {} exceeds the cap {}",
                w.length(),
                self.cap
            )));
        }
        let expansion = self.expansion(w);
        let mut out = IntPolynomial::zero(self.m);
        // Every composition carries the factor 2^{#parts}; group by part count.
        let mut by_parts: BTreeMap<usize, IntPolynomial> = BTreeMap::new();
        for (alpha, &c) in &expansion {
            let slot = by_parts
                .entry(alpha.len())
                .or_insert_with(|| IntPolynomial::zero(self.m));
            *slot = &*slot + &monomial_quasisym(alpha, self.m).scale(c);
        }
        for (parts, poly) in by_parts {
            out = &out + &poly.div_exact(1 << parts)?;
        }
        if self.ty == StanleyType::B {
            out = out.div_exact(1 << w.ell0())?;
        }
        Ok(out)
    }

    fn expansion(&mut self, w: &WeylElement) -> HashMap<Vec<u8>, Coeff> {
        if let Some(e) = self.memo.get(w) {
            return e.clone();
        }
        let mut out: HashMap<Vec<u8>, Coeff> = HashMap::new();
        if w.is_identity() {
            out.insert(Vec::new(), 1);
        } else {
            let lw = w.length();
            let candidates: Vec<(WeylElement, usize, Coeff)> = self
                .blocks
                .iter()
                .filter(|(_, l, _)| *l <= lw)
                .filter_map(|(uinv, l, c)| {
                    let v = w.compose(uinv).ok()?;
                    (v.length() + l == lw).then_some((v, *l, *c))
                })
                .collect();
            for (v, l, c) in candidates {
                let sub = self.expansion(&v);
                for (alpha, coef) in sub {
                    if alpha.len() >= self.m {
                        continue;
                    }
                    let mut a = alpha;
                    a.push(l as u8);
                    *out.entry(a).or_insert(0) += coef * c;
                }
            }
            out.retain(|_, v| *v != 0);
        }
        self.memo.insert(w.clone(), out.clone());
        out
    }
}

/// `M_α(x_1, …, x_m) = Σ_{j_1 < ⋯ < j_b} x_{j_1}^{α_1} ⋯ x_{j_b}^{α_b}`.
fn monomial_quasisym(alpha: &[u8], m: usize) -> IntPolynomial {
    let mut out = IntPolynomial::zero(m);
    if alpha.len() > m {
        return out;
    }
    for idx in itertools::Itertools::combinations(0..m, alpha.len()) {
        let mut e = vec![0; m];
        for (j, &a) in idx.iter().zip(alpha) {
            e[*j] = a as u32;
        }
        out.add_term(e, 1);
    }
    out
}

/// The product `t_{a_1} t_{a_2} ⋯ t_{a_r}` as a group element.
fn word_element(kind: WeylKind, word: &[GeneratorIndex]) -> WeylElement {
    word.iter()
        .rev()
        .fold(WeylElement::identity(kind), |acc, &a| acc.mul_simple_left(a))
}

/// Every factor word for the type, grouped by element, with doubled weights.
fn factor_blocks(ty: StanleyType, kind: WeylKind) -> Vec<(WeylElement, usize, Coeff)> {
    let gens = kind.generators();
    let mut words: Vec<(Vec<GeneratorIndex>, Coeff)> = Vec::new();
    let subsets = |pool: &[i32]| -> Vec<Vec<i32>> {
        (0..1usize << pool.len())
            .map(|mask| {
                pool.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &g)| g)
                    .collect()
            })
            .collect()
    };
    match ty {
        StanleyType::A => {
            for mut s in subsets(&gens) {
                if s.is_empty() {
                    continue;
                }
                s.reverse();
                words.push((s, 2));
            }
        }
        StanleyType::B | StanleyType::C | StanleyType::D => {
            let flat = |g: i32| if g == -1 { 1 } else { g };
            let valleys: Vec<Vec<i32>> = if ty == StanleyType::D {
                let mut v: Vec<Vec<i32>> = gens.iter().filter(|&&g| g != -1).map(|&g| vec![g]).collect();
                if gens.contains(&-1) {
                    v.extend([vec![-1], vec![1, -1], vec![-1, 1]]);
                }
                v
            } else {
                gens.iter().map(|&g| vec![g]).collect()
            };
            for valley in valleys {
                let bottom = flat(valley[0]);
                let above: Vec<i32> = gens.iter().copied().filter(|&g| flat(g) > bottom).collect();
                for down in subsets(&above) {
                    for up in subsets(&above) {
                        let word: Vec<i32> = down
                            .iter()
                            .rev()
                            .copied()
                            .chain(valley.iter().copied())
                            .chain(up.iter().copied())
                            .collect();
                        let weight = if ty == StanleyType::D {
                            let o = word.iter().filter(|&&g| g == 1 || g == -1).count() as u32;
                            1 << (2 - o)
                        } else {
                            4
                        };
                        words.push((word, weight));
                    }
                }
            }
        }
    }
    let mut grouped: BTreeMap<WeylElement, (usize, Coeff)> = BTreeMap::new();
    for (word, weight) in words {
        let u = word_element(kind, &word);
        if u.length() != word.len() {
            continue;
        }
        grouped.entry(u).or_insert((word.len(), 0)).1 += weight;
    }
    grouped.into_iter().map(|(u, (l, c))| (u.inverse(), l, c)).collect()
}

/// The Stanley symmetric function of `w` truncated to `m` variables.
pub fn stanley(ty: StanleyType, w: &WeylElement, m: usize) -> Result<IntPolynomial> {
    StanleyEngine::new(ty, w.kind(), m)?.eval(w)
}

/// The type-A Schubert polynomial `𝔖_w` in `x_1, …, x_n` for `w ∈ S_{n+1}`.
pub fn schubert_a(w: &WeylElement) -> Result<IntPolynomial> {
    SchubertEngine::new(w.kind())?.eval(w)
}

/// Memoized divided-difference evaluator for type-A Schubert polynomials.
pub struct SchubertEngine {
    kind: WeylKind,
    memo: HashMap<WeylElement, IntPolynomial>,
}

impl SchubertEngine {
    /// An engine for the symmetric group `kind`.
    pub fn new(kind: WeylKind) -> Result<Self> {
        if !matches!(kind, WeylKind::A(_)) {
            return Err(Error::KindMismatch(
                "type A Schubert polynomial".into(),
                kind.to_string(),
            ));
        }
        Ok(SchubertEngine {
            kind,
            memo: HashMap::new(),
        })
    }

    /// `𝔖_w`, computed from the staircase monomial of the longest element.
    ///
    /// Intermediate results carry `x_{n+1}`, which never survives.
    pub fn eval(&mut self, w: &WeylElement) -> Result<IntPolynomial> {
        if w.kind() != self.kind {
            return Err(Error::KindMismatch(w.kind().to_string(), self.kind.to_string()));
        }
        Ok(self.get(w).truncate(self.kind.rank()))
    }

    fn get(&mut self, w: &WeylElement) -> IntPolynomial {
        if let Some(p) = self.memo.get(w) {
            return p.clone();
        }
        let n = self.kind.rank();
        let ascent = (1..=n as i32).find(|&i| !w.has_right_descent(i));
        let p = match ascent {
            None => IntPolynomial::monomial(n + 1, (0..=n as u32).rev().collect(), 1),
            Some(i) => divided_difference(&self.get(&w.mul_simple_right(i)), i as usize),
        };
        self.memo.insert(w.clone(), p.clone());
        p
    }
}

/// `∂_i f = (f - s_i f) / (x_i - x_{i+1})`, computed term by term.
fn divided_difference(f: &IntPolynomial, i: usize) -> IntPolynomial {
    let mut out = IntPolynomial::zero(f.nvars());
    let (p, q) = (i - 1, i);
    for (e, &c) in f.terms() {
        let (a, b) = (e[p], e[q]);
        let (hi, lo, sign) = if a >= b { (a, b, 1) } else { (b, a, -1) };
        for k in 0..hi - lo {
            let mut g = e.clone();
            g[p] = hi - 1 - k;
            g[q] = lo + k;
            out.add_term(g, sign * c);
        }
    }
    out
}

/// Involution statistics of an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvStats {
    /// `κ(z) = |{i > 0 : z(i) < i}|`.
    pub kappa: usize,
    /// `ν(z) = |{i > 0 : 0 < z(i) < i}|`.
    pub nu: usize,
    /// `δ(z) = ½|{i ∈ ±[n] : z(i) < i}|`, for elements of `W⁺_n` where it is integral.
    pub delta: Option<usize>,
    /// `δ_◇(z) = ½|{i ∈ ±[n] : t_0 z(i) < i}| - ½`, for elements of `W⁺_n` where it is integral.
    pub delta_diamond: Option<usize>,
}

fn signed_descent_count(oneline: &[i32]) -> usize {
    oneline
        .iter()
        .enumerate()
        .map(|(i, &v)| usize::from(v != i as i32 + 1))
        .sum()
}

/// The statistics κ, ν, δ and δ_◇ of `z`.
pub fn inv_stats(z: &WeylElement) -> InvStats {
    let w = z.oneline();
    let kappa = w.iter().enumerate().filter(|&(i, &v)| v < i as i32 + 1).count();
    let nu = w
        .iter()
        .enumerate()
        .filter(|&(i, &v)| v > 0 && v < i as i32 + 1)
        .count();
    let (delta, delta_diamond) = match z.kind() {
        WeylKind::D(_) => {
            let d = signed_descent_count(w);
            let dd = signed_descent_count(&t0_left(w));
            let delta = d.is_multiple_of(2).then_some(d / 2);
            let delta_diamond = (dd % 2 == 1).then_some((dd - 1) / 2);
            (delta, delta_diamond)
        }
        _ => (None, None),
    };
    InvStats {
        kappa,
        nu,
        delta,
        delta_diamond,
    }
}

/// The families of involution Schubert and Stanley functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[allow(missing_docs)]
pub enum InvFlavor {
    AI,
    AII,
    AIII,
    BI,
    CI,
    CII,
    DI,
    DII,
    DIII,
}

impl InvFlavor {
    /// Every flavor in a fixed order.
    pub const ALL: [InvFlavor; 9] = [
        InvFlavor::AI,
        InvFlavor::AII,
        InvFlavor::AIII,
        InvFlavor::BI,
        InvFlavor::CI,
        InvFlavor::CII,
        InvFlavor::DI,
        InvFlavor::DII,
        InvFlavor::DIII,
    ];

    /// The group of rank `n` the flavor lives on.
    pub fn kind(self, n: usize) -> WeylKind {
        match self {
            InvFlavor::AI | InvFlavor::AII | InvFlavor::AIII => WeylKind::A(n),
            InvFlavor::BI | InvFlavor::CI | InvFlavor::CII => WeylKind::BC(n),
            InvFlavor::DI | InvFlavor::DII | InvFlavor::DIII => WeylKind::D(n),
        }
    }

    /// The type of the Stanley functions being summed.
    pub fn stanley_type(self) -> StanleyType {
        match self {
            InvFlavor::AI | InvFlavor::AII | InvFlavor::AIII => StanleyType::A,
            InvFlavor::BI | InvFlavor::CII => StanleyType::C,
            InvFlavor::CI => StanleyType::B,
            InvFlavor::DI | InvFlavor::DII | InvFlavor::DIII => StanleyType::D,
        }
    }
}

impl fmt::Display for InvFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for InvFlavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        InvFlavor::ALL
            .into_iter()
            .find(|f| f.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown flavor {s:?}")))
    }
}

/// Whether [`inv_schubert_stanley`] sums Schubert polynomials or Stanley functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymLevel {
    /// Type-A Schubert polynomials; only for the A flavors.
    Schubert,
    /// Stanley symmetric functions truncated to the requested variables.
    Stanley,
}

/// The starting element, automorphism and weight exponent of the atom set of `z`.
fn flavor_data(flavor: InvFlavor, z: &WeylElement) -> Result<(Automorphism, WeylElement, usize)> {
    let kind = z.kind();
    let n = kind.rank();
    if flavor.kind(n) != kind {
        return Err(Error::KindMismatch(format!("flavor {flavor}"), kind.to_string()));
    }
    let m = kind.degree();
    let pairs_from = |start: usize| -> Result<WeylElement> {
        let mut v: Vec<i32> = (1..=m as i32).collect();
        let mut i = start;
        while i < m {
            v.swap(i - 1, i);
            i += 2;
        }
        WeylElement::from_oneline(kind, v)
    };
    let domain = |msg: &str| Error::Parameter(format!("{z:?} is outside the {flavor} domain: {msg}"));
    let stats = inv_stats(z);
    let id = WeylElement::identity(kind);
    Ok(match flavor {
        InvFlavor::AI => (Automorphism::Identity, id, stats.kappa),
        InvFlavor::AII => {
            if m % 2 == 1 {
                return Err(domain("fixed-point-free involutions need even degree"));
            }
            (Automorphism::Identity, pairs_from(1)?, 0)
        }
        InvFlavor::AIII => (Automorphism::Star, named_element(kind, NamedElement::Omega(m % 2))?, 0),
        InvFlavor::BI => (Automorphism::Identity, id, stats.nu),
        InvFlavor::CI => (Automorphism::Identity, id, stats.kappa),
        InvFlavor::CII => (
            Automorphism::Identity,
            named_element(kind, NamedElement::SigmaFpf(n % 2))?,
            0,
        ),
        InvFlavor::DI => (
            Automorphism::Identity,
            id,
            stats.delta.ok_or_else(|| domain("δ is not integral"))?,
        ),
        InvFlavor::DII => (
            Automorphism::Diamond,
            id,
            stats.delta_diamond.ok_or_else(|| domain("δ_◇ is not integral"))?,
        ),
        InvFlavor::DIII => {
            if n.is_multiple_of(2) {
                (Automorphism::Identity, pairs_from(1)?, 0)
            } else {
                (Automorphism::Diamond, pairs_from(2)?, 0)
            }
        }
    })
}

/// The atom set whose inverses index the involution function of `z`, with its 2-power weight.
pub fn inv_atoms(flavor: InvFlavor, z: &WeylElement) -> Result<(Vec<WeylElement>, usize)> {
    let (theta, y, weight) = flavor_data(flavor, z)?;
    if !is_twisted_involution(theta, z)? {
        return Err(Error::NotTwistedInvolution(format!("{z:?}")));
    }
    let atoms: Vec<WeylElement> = e_theta(theta, &y, z)?.into_iter().collect();
    if atoms.is_empty() {
        return Err(Error::Parameter(format!(
            "{z:?} is outside the {flavor} domain: no atoms"
        )));
    }
    Ok((atoms, weight))
}

/// The involution Schubert polynomial or involution Stanley function of `z`.
///
/// The result is `2^e Σ f_w` over `w` with `w⁻¹` an atom, where `f` is a
/// type-A Schubert polynomial (in `n` variables, ignoring `m`) or a Stanley
/// function of the flavor's type truncated to `m` variables.
pub fn inv_schubert_stanley(flavor: InvFlavor, z: &WeylElement, m: usize, level: SymLevel) -> Result<IntPolynomial> {
    let (atoms, weight) = inv_atoms(flavor, z)?;
    let total = match level {
        SymLevel::Schubert => {
            if flavor.stanley_type() != StanleyType::A {
                return Err(Error::Parameter(format!(
                    "Schubert level is only available for type A flavors, not {flavor}"
                )));
            }
            let mut engine = SchubertEngine::new(z.kind())?;
            let mut acc = IntPolynomial::zero(z.kind().rank());
            for a in &atoms {
                acc = &acc + &engine.eval(&a.inverse())?;
            }
            acc
        }
        SymLevel::Stanley => {
            let mut engine = StanleyEngine::new(flavor.stanley_type(), z.kind(), m)?;
            let mut acc = IntPolynomial::zero(m);
            for a in &atoms {
                acc = &acc + &engine.eval(&a.inverse())?;
            }
            acc
        }
    };
    Ok(total.scale(1 << weight))
}

/// Identifiers of the conjectural identities that can be reported on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConjectureId {
    /// `F̂^CII_{w_0} = S_{δ⊖⌈n/2⌉}` in `W_n`.
    CiiW0,
    /// `F̂^DI_{w_0} = S_{δ⊖⌈n/2⌉}` in `W⁺_n`.
    DiW0,
    /// `F̂^DII_{w_0} = S_{δ⊖⌈(n+1)/2⌉}` in `W⁺_n`.
    DiiW0,
    /// `F̂^DI_{υ₀⁺} = S_δ` in `W⁺_n`, `n` even.
    DiUps,
    /// `F̂^DII_{υ₀⁺} = S_δ` in `W⁺_n`, `n` odd.
    DiiUps,
    /// `F̂^DIII_{υ₀⁺} = 2^{-⌊n/2⌋} S_{δ⊖⌈n/2⌉}` in `W⁺_{n+1}`.
    DiiiUps,
    /// `F̂^BI_{υ₀} = S_{δ⊖⌊n/2⌋}` in `W_n`.
    BiUps,
    /// `F̂^CII_{υ₀} = S_δ` in `W_{n+1}`.
    CiiUps,
}

impl ConjectureId {
    /// Every identifier in a fixed order.
    pub const ALL: [ConjectureId; 8] = [
        ConjectureId::CiiW0,
        ConjectureId::DiW0,
        ConjectureId::DiiW0,
        ConjectureId::DiUps,
        ConjectureId::DiiUps,
        ConjectureId::DiiiUps,
        ConjectureId::BiUps,
        ConjectureId::CiiUps,
    ];

    /// The command-line name, such as `CII-w0`.
    pub fn name(self) -> &'static str {
        match self {
            ConjectureId::CiiW0 => "CII-w0",
            ConjectureId::DiW0 => "DI-w0",
            ConjectureId::DiiW0 => "DII-w0",
            ConjectureId::DiUps => "DI-ups",
            ConjectureId::DiiUps => "DII-ups",
            ConjectureId::DiiiUps => "DIII-ups",
            ConjectureId::BiUps => "BI-ups",
            ConjectureId::CiiUps => "CII-ups",
        }
    }
}

impl fmt::Display for ConjectureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConjectureId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ConjectureId::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown conjecture {s:?}")))
    }
}

/// Largest `n` accepted by [`conjecture_report`].
pub const CONJECTURE_MAX_N: usize = 6;

/// Outcome of evaluating a conjectural identity at one rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    /// Which identity.
    pub id: ConjectureId,
    /// The parameter `n` of the statement.
    pub n: usize,
    /// Number of variables.
    pub m: usize,
    /// Why the identity was not evaluated, if it was not.
    pub not_applicable: Option<String>,
    /// The involution Stanley side.
    pub lhs: Option<IntPolynomial>,
    /// The Schur side, after any 2-power scaling.
    pub rhs: Option<IntPolynomial>,
    /// Whether both sides agree.
    pub equal: Option<bool>,
    /// A companion identity checked alongside, if any.
    pub remark: Option<String>,
    /// Whether the companion identity holds.
    pub remark_equal: Option<bool>,
}

impl ConjectureReport {
    fn skipped(id: ConjectureId, n: usize, m: usize, reason: String) -> Self {
        ConjectureReport {
            id,
            n,
            m,
            not_applicable: Some(reason),
            lhs: None,
            rhs: None,
            equal: None,
            remark: None,
            remark_equal: None,
        }
    }

    /// JSON form of the report.
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id.name(),
            "n": self.n,
            "m": self.m,
            "not_applicable": self.not_applicable,
            "lhs": self.lhs.as_ref().map(|p| p.to_string()),
            "rhs": self.rhs.as_ref().map(|p| p.to_string()),
            "equal": self.equal,
            "remark": self.remark,
            "remark_equal": self.remark_equal,
        })
    }
}

/// Evaluates a conjectural identity with both sides truncated to `m` variables.
///
/// Ranks below the range of the statement, or elements outside the domain of
/// the involution function, produce a report with `not_applicable` set.
pub fn conjecture_report(id: ConjectureId, n: usize, m: usize) -> Result<ConjectureReport> {
    if n > CONJECTURE_MAX_N {
        return Err(Error::RankBound(format!("n = {n} exceeds {CONJECTURE_MAX_N}")));
    }
    let skip = |reason: &str| Ok(ConjectureReport::skipped(id, n, m, reason.to_string()));
    let nn = n as u32;
    let delta = StrictPartition::staircase(nn);
    let (flavor, kind, name, shape, scale_log) = match id {
        ConjectureId::CiiW0 | ConjectureId::DiW0 | ConjectureId::DiiW0 => {
            let (flavor, kind, a) = match id {
                ConjectureId::CiiW0 => (InvFlavor::CII, WeylKind::BC(n), nn.div_ceil(2)),
                ConjectureId::DiW0 => (InvFlavor::DI, WeylKind::D(n), nn.div_ceil(2)),
                _ => (InvFlavor::DII, WeylKind::D(n), (nn + 1).div_ceil(2)),
            };
            let min = if matches!(kind, WeylKind::D(_)) { 2 } else { 1 };
            if n < min {
                return skip("rank below the range of the statement");
            }
            (flavor, kind, NamedElement::W0, delta.remove_part(a)?, 0)
        }
        ConjectureId::DiUps => {
            if n < 2 || n % 2 == 1 {
                return skip("needs n even and at least 2");
            }
            (InvFlavor::DI, WeylKind::D(n), NamedElement::Upsilon0Plus, delta, 0)
        }
        ConjectureId::DiiUps => {
            if n < 3 || n.is_multiple_of(2) {
                return skip("needs n odd and at least 3");
            }
            (InvFlavor::DII, WeylKind::D(n), NamedElement::Upsilon0Plus, delta, 0)
        }
        ConjectureId::DiiiUps => {
            if n < 1 {
                return skip("needs n at least 1");
            }
            let shape = delta.remove_part(nn.div_ceil(2))?;
            (
                InvFlavor::DIII,
                WeylKind::D(n + 1),
                NamedElement::Upsilon0Plus,
                shape,
                n / 2,
            )
        }
        ConjectureId::BiUps => {
            if n < 2 {
                return skip("needs n at least 2");
            }
            (
                InvFlavor::BI,
                WeylKind::BC(n),
                NamedElement::Upsilon0,
                delta.remove_part(nn / 2)?,
                0,
            )
        }
        ConjectureId::CiiUps => {
            if n < 1 {
                return skip("needs n at least 1");
            }
            (InvFlavor::CII, WeylKind::BC(n + 1), NamedElement::Upsilon0, delta, 0)
        }
    };
    let z = named_element(kind, name)?;
    let lhs = match inv_schubert_stanley(flavor, &z, m, SymLevel::Stanley) {
        Ok(p) => p,
        Err(e @ Error::RankBound(_)) => return Err(e),
        Err(e) => return skip(&format!("{z:?} is not in the {flavor} domain: {e}")),
    };
    let s = schur_qps(SchurKind::S, &shape, None, m)?;
    let (rhs, equal) = match s.div_exact(1 << scale_log) {
        Ok(r) => {
            let eq = r == lhs;
            (Some(r), Some(eq))
        }
        Err(_) => (None, Some(false)),
    };
    let (remark, remark_equal) = match id {
        ConjectureId::BiUps => {
            let ci = inv_schubert_stanley(InvFlavor::CI, &z, m, SymLevel::Stanley)?;
            (
                Some("2^{⌊n/2⌋} F̂^BI_{υ₀} = F̂^CI_{υ₀}".to_string()),
                Some(lhs.scale(1 << (n / 2)) == ci),
            )
        }
        ConjectureId::DiUps | ConjectureId::DiiUps => {
            let shorter = schur_qps(SchurKind::S, &StrictPartition::staircase(nn - 1), None, m)?;
            (
                Some("same left side against S_{(n-1,…,1)}".to_string()),
                Some(shorter == lhs),
            )
        }
        _ => (None, None),
    };
    Ok(ConjectureReport {
        id,
        n,
        m,
        not_applicable: None,
        lhs: Some(lhs),
        rhs,
        equal,
        remark,
        remark_equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{enumerate_group, twisted_involutions};

    fn part(p: &[u32]) -> StrictPartition {
        StrictPartition::new(p.to_vec()).unwrap()
    }

    fn el(kind: WeylKind, w: &[i32]) -> WeylElement {
        WeylElement::from_oneline(kind, w.to_vec()).unwrap()
    }

    #[test]
    fn polynomial_text_round_trip() {
        let p = &IntPolynomial::var(2, 1).scale(2) + &IntPolynomial::var(2, 2).scale(2);
        assert_eq!(p.to_string(), "2 * x1^0 x2^1 + 2 * x1^1 x2^0");
        assert_eq!(p.to_string().parse::<IntPolynomial>().unwrap(), p);
        assert_eq!(IntPolynomial::from_json(&p.to_json()).unwrap(), p);
        assert_eq!(IntPolynomial::one(2).to_string(), "1 * x1^0 x2^0");
    }

    #[test]
    fn polynomial_cancellation_removes_terms() {
        let x = IntPolynomial::var(2, 1);
        assert!((&x - &x).is_zero());
        assert!((&x - &x).terms().is_empty());
    }

    #[test]
    fn schur_examples() {
        assert_eq!(
            schur_qps(SchurKind::Q, &StrictPartition::empty(), None, 3).unwrap(),
            IntPolynomial::one(3)
        );
        let q1 = &IntPolynomial::var(2, 1).scale(2) + &IntPolynomial::var(2, 2).scale(2);
        assert_eq!(schur_qps(SchurKind::Q, &part(&[1]), None, 2).unwrap(), q1);
        for lam in [part(&[1]), part(&[2, 1]), part(&[3, 1]), part(&[3, 2, 1])] {
            let q = schur_qps(SchurKind::Q, &lam, None, 4).unwrap();
            let p = schur_qps(SchurKind::P, &lam, None, 4).unwrap();
            assert_eq!(p.scale(1 << lam.len()), q);
        }
    }

    #[test]
    fn q_matches_pfaffian_oracle() {
        let mut shapes = vec![StrictPartition::empty()];
        for size in 1..=6u32 {
            for mask in 1u32..(1 << size) {
                let parts: Vec<u32> = (1..=size).rev().filter(|i| mask >> (i - 1) & 1 == 1).collect();
                if parts.iter().sum::<u32>() == size {
                    shapes.push(StrictPartition::new(parts).unwrap());
                }
            }
        }
        for lam in &shapes {
            for m in 1..=4 {
                assert_eq!(
                    schur_qps(SchurKind::Q, lam, None, m).unwrap(),
                    q_pfaffian_oracle(lam, m),
                    "Q{lam} in {m} variables"
                );
            }
        }
    }

    #[test]
    fn skew_q_is_symmetric_and_stable() {
        let lam = part(&[5, 3, 1]);
        let mu = part(&[2, 1]);
        let q4 = schur_qps(SchurKind::Q, &lam, Some(&mu), 4).unwrap();
        let q3 = schur_qps(SchurKind::Q, &lam, Some(&mu), 3).unwrap();
        assert!(q4.is_symmetric());
        assert_eq!(q4.truncate(3), q3);
    }

    #[test]
    fn stanley_examples() {
        let x = |m: usize| (1..=m).fold(IntPolynomial::zero(m), |acc, i| &acc + &IntPolynomial::var(m, i));
        assert_eq!(
            stanley(StanleyType::A, &el(WeylKind::A(2), &[2, 1, 3]), 3).unwrap(),
            x(3)
        );
        for (ty, kind) in [
            (StanleyType::A, WeylKind::A(2)),
            (StanleyType::B, WeylKind::BC(2)),
            (StanleyType::C, WeylKind::BC(2)),
            (StanleyType::D, WeylKind::D(3)),
        ] {
            assert_eq!(
                stanley(ty, &WeylElement::identity(kind), 3).unwrap(),
                IntPolynomial::one(3)
            );
        }
        // t_0 and t_{-1}, t_1 give P_1 in their types; t_2 in type D gives Q_1.
        assert_eq!(
            stanley(StanleyType::B, &el(WeylKind::BC(2), &[-1, 2]), 3).unwrap(),
            x(3)
        );
        assert_eq!(
            stanley(StanleyType::C, &el(WeylKind::BC(2), &[-1, 2]), 3).unwrap(),
            x(3).scale(2)
        );
        assert_eq!(
            stanley(StanleyType::D, &el(WeylKind::D(3), &[2, 1, 3]), 3).unwrap(),
            x(3)
        );
        assert_eq!(
            stanley(StanleyType::D, &el(WeylKind::D(3), &[-2, -1, 3]), 3).unwrap(),
            x(3)
        );
        assert_eq!(
            stanley(StanleyType::D, &el(WeylKind::D(3), &[1, 3, 2]), 3).unwrap(),
            x(3).scale(2)
        );
        // Commuting generators multiply.
        let p1 = x(3);
        assert_eq!(
            stanley(StanleyType::D, &el(WeylKind::D(2), &[-1, -2]), 3).unwrap(),
            &p1 * &p1
        );
    }

    #[test]
    fn fc_is_two_power_times_fb() {
        for n in 1..=3 {
            let kind = WeylKind::BC(n);
            let mut c = StanleyEngine::new(StanleyType::C, kind, 3).unwrap();
            let mut b = StanleyEngine::new(StanleyType::B, kind, 3).unwrap();
            for w in enumerate_group(kind).unwrap() {
                assert_eq!(c.eval(&w).unwrap(), b.eval(&w).unwrap().scale(1 << w.ell0()), "{w:?}");
            }
        }
    }

    #[test]
    fn stanley_functions_are_symmetric_and_stable() {
        for (ty, kind) in [
            (StanleyType::A, WeylKind::A(3)),
            (StanleyType::B, WeylKind::BC(3)),
            (StanleyType::C, WeylKind::BC(3)),
            (StanleyType::D, WeylKind::D(3)),
            (StanleyType::D, WeylKind::D(4)),
        ] {
            let mut e3 = StanleyEngine::new(ty, kind, 3).unwrap();
            let mut e4 = StanleyEngine::new(ty, kind, 4).unwrap();
            for w in enumerate_group(kind).unwrap() {
                let f4 = e4.eval(&w).unwrap();
                assert!(f4.is_symmetric(), "{ty:?} {w:?}");
                assert_eq!(f4.truncate(3), e3.eval(&w).unwrap(), "{ty:?} {w:?}");
            }
        }
    }

    #[test]
    fn length_cap_is_enforced() {
        let w0 = named_element(WeylKind::BC(3), NamedElement::W0).unwrap();
        let mut e = StanleyEngine::with_cap(StanleyType::C, WeylKind::BC(3), 2, 5).unwrap();
        assert!(matches!(e.eval(&w0), Err(Error::RankBound(_))));
    }

    #[test]
    fn schubert_examples() {
        let k = WeylKind::A(2);
        assert_eq!(schubert_a(&WeylElement::identity(k)).unwrap(), IntPolynomial::one(2));
        assert_eq!(
            schubert_a(&el(k, &[3, 2, 1])).unwrap(),
            IntPolynomial::monomial(2, vec![2, 1], 1)
        );
        assert_eq!(schubert_a(&el(k, &[2, 1, 3])).unwrap(), IntPolynomial::var(2, 1));
        assert_eq!(
            schubert_a(&el(k, &[1, 3, 2])).unwrap(),
            &IntPolynomial::var(2, 1) + &IntPolynomial::var(2, 2)
        );
    }

    #[test]
    fn schubert_positivity_in_s4() {
        let mut e = SchubertEngine::new(WeylKind::A(3)).unwrap();
        for w in enumerate_group(WeylKind::A(3)).unwrap() {
            let p = e.eval(&w).unwrap();
            assert!(p.is_nonnegative() && !p.is_zero(), "{w:?}");
            assert_eq!(p.degree(), Some(w.length() as u32));
        }
    }

    #[test]
    fn stats_examples() {
        assert_eq!(inv_stats(&WeylElement::identity(WeylKind::A(2))).kappa, 0);
        assert_eq!(inv_stats(&el(WeylKind::A(2), &[3, 2, 1])).kappa, 1);
        for n in 2..=4 {
            for z in twisted_involutions(WeylKind::D(n), Automorphism::Diamond).unwrap() {
                assert!(inv_stats(&z).delta_diamond.is_some(), "{z:?}");
            }
            for z in twisted_involutions(WeylKind::D(n), Automorphism::Identity).unwrap() {
                assert!(inv_stats(&z).delta.is_some(), "{z:?}");
            }
        }
    }

    fn w0(kind: WeylKind) -> WeylElement {
        named_element(kind, NamedElement::W0).unwrap()
    }

    #[test]
    fn theorem_type_a_parts() {
        for n in 1..=4usize {
            let z = w0(WeylKind::A(n));
            for m in 1..=5 {
                let ai = inv_schubert_stanley(InvFlavor::AI, &z, m, SymLevel::Stanley).unwrap();
                let q = schur_qps(SchurKind::Q, &StrictPartition::step_two(n as u32), None, m).unwrap();
                assert_eq!(ai, q, "AI n={n} m={m}");
                let aiii = inv_schubert_stanley(InvFlavor::AIII, &z, m, SymLevel::Stanley).unwrap();
                let p = schur_qps(SchurKind::P, &StrictPartition::step_two(n as u32), None, m).unwrap();
                assert_eq!(aiii, p, "AIII n={n} m={m}");
                if n % 2 == 1 {
                    let aii = inv_schubert_stanley(InvFlavor::AII, &z, m, SymLevel::Stanley).unwrap();
                    let shape = StrictPartition::step_two(n as u32 - 1);
                    assert_eq!(
                        aii,
                        schur_qps(SchurKind::P, &shape, None, m).unwrap(),
                        "AII n={n} m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn theorem_type_b_part() {
        for n in 1..=3usize {
            let z = w0(WeylKind::BC(n));
            for m in 1..=5 {
                let bi = inv_schubert_stanley(InvFlavor::BI, &z, m, SymLevel::Stanley).unwrap();
                let s = schur_qps(SchurKind::S, &StrictPartition::staircase(n as u32), None, m).unwrap();
                assert_eq!(bi, s, "BI n={n} m={m}");
            }
        }
    }

    #[test]
    fn involution_schubert_is_positive_and_symmetric_stanley_matches_degree() {
        for z in twisted_involutions(WeylKind::A(3), Automorphism::Identity).unwrap() {
            let s = inv_schubert_stanley(InvFlavor::AI, &z, 3, SymLevel::Schubert).unwrap();
            assert!(s.is_nonnegative());
            let f = inv_schubert_stanley(InvFlavor::AI, &z, 3, SymLevel::Stanley).unwrap();
            assert!(f.is_symmetric());
        }
    }

    #[test]
    fn single_atom_reduces_to_one_function() {
        let z = el(WeylKind::A(3), &[2, 1, 4, 3]);
        let (atoms, weight) = inv_atoms(InvFlavor::AII, &z).unwrap();
        assert_eq!((atoms.len(), weight), (1, 0));
        let f = inv_schubert_stanley(InvFlavor::AII, &z, 3, SymLevel::Stanley).unwrap();
        assert_eq!(f, IntPolynomial::one(3));
    }

    #[test]
    fn flavor_domain_errors() {
        let z = el(WeylKind::A(2), &[3, 2, 1]);
        assert!(inv_schubert_stanley(InvFlavor::AII, &z, 2, SymLevel::Stanley).is_err());
        assert!(inv_schubert_stanley(InvFlavor::BI, &z, 2, SymLevel::Stanley).is_err());
        let y = w0(WeylKind::BC(2));
        assert!(inv_schubert_stanley(InvFlavor::BI, &y, 2, SymLevel::Schubert).is_err());
    }

    #[test]
    fn conjecture_reports_small() {
        let r = conjecture_report(ConjectureId::BiUps, 2, 3).unwrap();
        assert!(r.not_applicable.is_none());
        assert!(r.equal.is_some());
        let r = conjecture_report(ConjectureId::DiUps, 1, 3).unwrap();
        assert!(r.not_applicable.is_some());
        let r = conjecture_report(ConjectureId::DiiiUps, 2, 3).unwrap();
        assert!(r.equal.is_some());
        assert!(conjecture_report(ConjectureId::CiiW0, CONJECTURE_MAX_N + 1, 2).is_err());
    }
}
