//! Finite groups as explicit multiplication tables, together with finite
//! group actions. Everything here is exhaustively checkable: associativity,
//! identity and inverse laws are verified table-wide on construction for
//! small orders.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is not square ({0} entries for order {1})")]
    MalformedTable(usize, usize),
    #[error("table entry {0} out of range for order {1}")]
    EntryOutOfRange(usize, usize),
    #[error("no identity element found")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("action table is not {order} x {set_size}")]
    MalformedAction { order: usize, set_size: usize },
    #[error("identity does not act as the identity map")]
    ActionIdentity,
    #[error("action is not compatible with multiplication at g={0}, h={1}, x={2}")]
    ActionCompat(usize, usize, usize),
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("wreath elements/points have mismatched sizes")]
    WreathMismatch,
    #[error("cannot parse group spec: {0}")]
    ParseError(String),
}

/// A finite group given by its multiplication table.
/// Elements are indices `0..order`; `table[g * order + h] = g * h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a raw table, verifying all group laws
    /// (exhaustive over all triples).
    pub fn from_table(table: Vec<usize>) -> Result<Self, GroupError> {
        let order = (table.len() as f64).sqrt().round() as usize;
        if order * order != table.len() || order == 0 {
            return Err(GroupError::MalformedTable(table.len(), order));
        }
        for &e in &table {
            if e >= order {
                return Err(GroupError::EntryOutOfRange(e, order));
            }
        }
        let mul = |g: usize, h: usize| table[g * order + h];
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| mul(e, g) == g && mul(g, e) == g))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = vec![0usize; order];
        for g in 0..order {
            inverse[g] = (0..order)
                .find(|&h| mul(g, h) == identity && mul(h, g) == identity)
                .ok_or(GroupError::NoInverse(g))?;
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order,
            table,
            identity,
            inverse,
        })
    }

    pub fn trivial() -> Self {
        FiniteGroup::from_table(vec![0]).unwrap()
    }

    /// Cyclic group Z/k.
    pub fn cyclic(k: usize) -> Self {
        assert!(k >= 1);
        let mut table = vec![0usize; k * k];
        for a in 0..k {
            for b in 0..k {
                table[a * k + b] = (a + b) % k;
            }
        }
        FiniteGroup::from_table(table).unwrap()
    }

    /// Symmetric group S_k as a table over the k! permutations in
    /// lexicographic order.
    pub fn symmetric(k: usize) -> Self {
        let perms = all_permutations(k);
        let n = perms.len();
        let index_of = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let mut table = vec![0usize; n * n];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                // (pa * pb)(i) = pb(pa(i)): left-to-right composition,
                // matching the wreath multiplication convention.
                let prod: Vec<usize> = (0..k).map(|i| pb[pa[i]]).collect();
                table[a * n + b] = index_of(&prod);
            }
        }
        FiniteGroup::from_table(table).unwrap()
    }

    /// Direct product G x H with index pairing `g * #H + h`.
    pub fn product(&self, other: &FiniteGroup) -> Self {
        let n = self.order * other.order;
        let mut table = vec![0usize; n * n];
        for g1 in 0..self.order {
            for h1 in 0..other.order {
                for g2 in 0..self.order {
                    for h2 in 0..other.order {
                        let a = g1 * other.order + h1;
                        let b = g2 * other.order + h2;
                        table[a * n + b] =
                            self.mul(g1, g2) * other.order + other.mul(h1, h2);
                    }
                }
            }
        }
        FiniteGroup::from_table(table).unwrap()
    }

    /// Parses `trivial`, `cyclic:k`, `sym:k` or `product:(spec,spec,...)`.
    pub fn parse(spec: &str) -> Result<Self, GroupError> {
        let spec = spec.trim();
        if spec == "trivial" {
            return Ok(FiniteGroup::trivial());
        }
        if let Some(k) = spec.strip_prefix("cyclic:") {
            let k: usize = k
                .trim()
                .parse()
                .map_err(|e| GroupError::ParseError(format!("cyclic order: {e}")))?;
            if k == 0 {
                return Err(GroupError::ParseError("cyclic order must be >= 1".into()));
            }
            return Ok(FiniteGroup::cyclic(k));
        }
        if let Some(k) = spec.strip_prefix("sym:") {
            let k: usize = k
                .trim()
                .parse()
                .map_err(|e| GroupError::ParseError(format!("symmetric degree: {e}")))?;
            if k == 0 || factorial_usize(k) > 5040 {
                return Err(GroupError::ParseError(
                    "symmetric degree out of range (1..=7)".into(),
                ));
            }
            return Ok(FiniteGroup::symmetric(k));
        }
        if let Some(inner) = spec.strip_prefix("product:") {
            let inner = inner
                .trim()
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| GroupError::ParseError("product needs (a,b,...)".into()))?;
            let mut acc: Option<FiniteGroup> = None;
            for part in split_top_level(inner) {
                let g = FiniteGroup::parse(&part)?;
                acc = Some(match acc {
                    None => g,
                    Some(prev) => prev.product(&g),
                });
            }
            return acc.ok_or_else(|| GroupError::ParseError("empty product".into()));
        }
        Err(GroupError::ParseError(format!("unknown spec {spec:?}")))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order + h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    /// Conjugacy classes as sorted element lists.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for g in 0..self.order {
            if seen[g] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order)
                .map(|h| self.mul(self.mul(h, g), self.inv(h)))
                .collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                seen[x] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Centralizer of `g`.
    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        (0..self.order)
            .filter(|&h| self.mul(g, h) == self.mul(h, g))
            .collect()
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order={})", self.order)
    }
}

fn factorial_usize(k: usize) -> usize {
    (1..=k).product()
}

/// Splits `a,b,product:(c,d),e` on top-level commas only.
fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// All permutations of {0..k} in lexicographic order, as images `p[i]`.
pub fn all_permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // next_permutation
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..k).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// A finite group acting on a finite set `{0..set_size}`.
/// `act[g * set_size + x]` is the image of `x` under `g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteAction {
    pub group: FiniteGroup,
    set_size: usize,
    act: Vec<usize>,
}

impl FiniteAction {
    /// Verifies identity and compatibility laws on all pairs/points.
    /// Compatibility convention: `act(gh, x) = act(g, act(h, x))`,
    /// matching the left-to-right multiplication of the tables.
    pub fn new(group: FiniteGroup, set_size: usize, act: Vec<usize>) -> Result<Self, GroupError> {
        if act.len() != group.order() * set_size {
            return Err(GroupError::MalformedAction {
                order: group.order(),
                set_size,
            });
        }
        for &y in &act {
            if y >= set_size {
                return Err(GroupError::MalformedAction {
                    order: group.order(),
                    set_size,
                });
            }
        }
        let a = |g: usize, x: usize| act[g * set_size + x];
        let e = group.identity();
        if (0..set_size).any(|x| a(e, x) != x) {
            return Err(GroupError::ActionIdentity);
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                for x in 0..set_size {
                    if a(gh, x) != a(g, a(h, x)) {
                        return Err(GroupError::ActionCompat(g, h, x));
                    }
                }
            }
        }
        Ok(FiniteAction {
            group,
            set_size,
            act,
        })
    }

    /// Trivial action on `k` points.
    pub fn trivial(group: FiniteGroup, k: usize) -> Self {
        let act: Vec<usize> = group
            .elements()
            .flat_map(|_| 0..k)
            .collect();
        FiniteAction::new(group, k, act).unwrap()
    }

    /// Z/k acting on k points by cyclic rotation.
    pub fn regular_cyclic(k: usize) -> Self {
        let group = FiniteGroup::cyclic(k);
        let mut act = vec![0usize; k * k];
        for g in 0..k {
            for x in 0..k {
                act[g * k + x] = (x + g) % k;
            }
        }
        FiniteAction::new(group, k, act).unwrap()
    }

    pub fn set_size(&self) -> usize {
        self.set_size
    }

    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.act[g * self.set_size + x]
    }

    pub fn fixed_points(&self, g: usize) -> Vec<usize> {
        (0..self.set_size).filter(|&x| self.apply(g, x) == x).collect()
    }
}
