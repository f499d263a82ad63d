//! Wreath products G^n ⋊ S_n, their action on X^n, and the two forms of the
//! string-theoretic Euler characteristic of a finite group action:
//!
//!   chi_string = (1/#G) · Σ_{gh=hg} #{x : gx = x, hx = x}
//!              = Σ_{[g]} #(orbits of C(g) on X^g)
//!
//! together with the generating-function identity tying the wreath actions on
//! X^n to `prod (1-q^l)^{-chi_string(X,G)}`.

use num::One;
use serde::Serialize;

use crate::group::{all_permutations, FiniteAction, FiniteGroup, GroupError};
use crate::rational::{rat_int, Rational};
use crate::series::sym_euler_series;

/// Element (g_1, ..., g_n; sigma) of G^n ⋊ S_n. `perm[i]` is the image of
/// coordinate `i` under sigma (zero-indexed).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WreathElement {
    pub components: Vec<usize>,
    pub perm: Vec<usize>,
}

impl WreathElement {
    pub fn new(components: Vec<usize>, perm: Vec<usize>) -> Result<Self, GroupError> {
        if components.len() != perm.len() {
            return Err(GroupError::WreathMismatch);
        }
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(GroupError::WreathMismatch);
            }
            seen[p] = true;
        }
        Ok(WreathElement { components, perm })
    }

    pub fn identity(group: &FiniteGroup, n: usize) -> Self {
        WreathElement {
            components: vec![group.identity(); n],
            perm: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }
}

/// Product (g; sigma)(h; tau) = (g_1 h_{sigma(1)}, ..., g_n h_{sigma(n)}; sigma tau),
/// with permutations composed left-to-right: (sigma tau)(i) = tau(sigma(i)).
pub fn wreath_multiply(
    u: &WreathElement,
    v: &WreathElement,
    group: &FiniteGroup,
) -> Result<WreathElement, GroupError> {
    let n = u.n();
    if v.n() != n {
        return Err(GroupError::WreathMismatch);
    }
    let components: Vec<usize> = (0..n)
        .map(|i| group.mul(u.components[i], v.components[u.perm[i]]))
        .collect();
    let perm: Vec<usize> = (0..n).map(|i| v.perm[u.perm[i]]).collect();
    Ok(WreathElement { components, perm })
}

/// Left action of G^n ⋊ S_n on X^n: (w·x)_i = g_i · x_{sigma(i)}, where the
/// coordinate relabeling is written so that
/// `wreath_act(uv, x) = wreath_act(u, wreath_act(v, x))` holds exactly for
/// `wreath_multiply` (the compatibility test below pins the convention).
pub fn wreath_act(
    w: &WreathElement,
    x: &[usize],
    action: &FiniteAction,
) -> Result<Vec<usize>, GroupError> {
    let n = w.n();
    if x.len() != n {
        return Err(GroupError::WreathMismatch);
    }
    Ok((0..n)
        .map(|i| action.apply(w.components[i], x[w.perm[i]]))
        .collect())
}

/// Materializes G^n ⋊ S_n as a multiplication table, re-verifying all group
/// laws. Returns the group and the element list realizing the index bijection
/// (element `i` of the table is `elements[i]`).
pub fn build_wreath_group(
    group: &FiniteGroup,
    n: usize,
) -> Result<(FiniteGroup, Vec<WreathElement>), GroupError> {
    let k = group.order();
    let mut total: usize = 1;
    for _ in 0..n {
        total = total
            .checked_mul(k)
            .ok_or_else(|| GroupError::SizeGuard("wreath order overflow".into()))?;
    }
    for f in 1..=n {
        total = total
            .checked_mul(f)
            .ok_or_else(|| GroupError::SizeGuard("wreath order overflow".into()))?;
    }
    if total > 5000 {
        return Err(GroupError::SizeGuard(format!(
            "wreath order {total} exceeds 5000"
        )));
    }

    let perms = all_permutations(n);
    let mut elements = Vec::with_capacity(total);
    for perm in &perms {
        let mut comp = vec![0usize; n];
        loop {
            elements.push(WreathElement {
                components: comp.clone(),
                perm: perm.clone(),
            });
            // mixed-radix increment of the component tuple
            let mut i = 0;
            loop {
                if i == n {
                    break;
                }
                comp[i] += 1;
                if comp[i] < k {
                    break;
                }
                comp[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        if n == 0 {
            break;
        }
    }
    debug_assert_eq!(elements.len(), total);

    let index_of = |w: &WreathElement| -> usize {
        let p = perms.iter().position(|q| q == &w.perm).unwrap();
        let mut c = 0usize;
        for i in (0..n).rev() {
            c = c * k + w.components[i];
        }
        p * k.pow(n as u32) + c
    };

    let mut table = vec![0usize; total * total];
    for (a, u) in elements.iter().enumerate() {
        for (b, v) in elements.iter().enumerate() {
            let w = wreath_multiply(u, v, group)?;
            table[a * total + b] = index_of(&w);
        }
    }
    let wreath = FiniteGroup::from_table(table)?;
    Ok((wreath, elements))
}

/// The induced action of G^n ⋊ S_n on X^n, as a verified `FiniteAction`.
/// Points of X^n are encoded mixed-radix: `x = Σ x_i · (#X)^i`.
pub fn build_wreath_action(
    action: &FiniteAction,
    n: usize,
) -> Result<(FiniteAction, Vec<WreathElement>), GroupError> {
    let (wreath, elements) = build_wreath_group(&action.group, n)?;
    let m = action.set_size();
    let set_size = m
        .checked_pow(n as u32)
        .ok_or_else(|| GroupError::SizeGuard("point set overflow".into()))?;
    if wreath.order().saturating_mul(set_size) > 2_000_000 {
        return Err(GroupError::SizeGuard("action table too large".into()));
    }
    let decode = |mut x: usize| -> Vec<usize> {
        (0..n)
            .map(|_| {
                let r = x % m;
                x /= m;
                r
            })
            .collect()
    };
    let encode = |xs: &[usize]| xs.iter().rev().fold(0usize, |acc, &x| acc * m + x);
    let mut act = vec![0usize; wreath.order() * set_size];
    for (g, w) in elements.iter().enumerate() {
        for x in 0..set_size {
            let image = wreath_act(w, &decode(x), action)?;
            act[g * set_size + x] = encode(&image);
        }
    }
    let wa = FiniteAction::new(wreath, set_size, act)?;
    Ok((wa, elements))
}

/// (1/#G) · Σ over commuting pairs (g, h) of the number of common fixed
/// points — the commuting-pair form of the string-theoretic Euler
/// characteristic of a finite G-set.
pub fn string_euler_direct(action: &FiniteAction) -> Result<Rational, GroupError> {
    let order = action.group.order();
    if order.saturating_mul(order) > 10_000_000 {
        return Err(GroupError::SizeGuard(format!(
            "{order}^2 commuting-pair enumeration exceeds 10^7"
        )));
    }
    let mut total: u64 = 0;
    for g in action.group.elements() {
        for h in action.group.elements() {
            if action.group.mul(g, h) != action.group.mul(h, g) {
                continue;
            }
            total += (0..action.set_size())
                .filter(|&x| action.apply(g, x) == x && action.apply(h, x) == x)
                .count() as u64;
        }
    }
    Ok(rat_int(total as i64) / rat_int(order as i64))
}

/// Σ over conjugacy classes [g] of the number of C(g)-orbits on the fixed
/// set X^g, orbits counted by Burnside's lemma.
pub fn string_euler_centralizer(action: &FiniteAction) -> Result<Rational, GroupError> {
    let order = action.group.order();
    if order.saturating_mul(order) > 10_000_000 {
        return Err(GroupError::SizeGuard(format!(
            "{order}^2 centralizer enumeration exceeds 10^7"
        )));
    }
    let mut total = rat_int(0);
    for class in action.group.conjugacy_classes() {
        let g = class[0];
        let fixed = action.fixed_points(g);
        let cent = action.group.centralizer(g);
        let mut fix_sum: u64 = 0;
        for &h in &cent {
            fix_sum += fixed
                .iter()
                .filter(|&&x| action.apply(h, x) == x)
                .count() as u64;
        }
        total += rat_int(fix_sum as i64) / rat_int(cent.len() as i64);
    }
    Ok(total)
}

#[derive(Debug, Clone, Serialize)]
pub struct SymIdentityEntry {
    pub n: usize,
    pub direct: Rational,
    pub series_coeff: Rational,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymIdentityReport {
    pub base_chi: Rational,
    pub entries: Vec<SymIdentityEntry>,
    pub all_match: bool,
}

/// For each n ≤ n_max, compares the commuting-pair Euler characteristic of
/// the wreath action on X^n against coefficient n of
/// `prod (1-q^l)^{-chi_string(X,G)}`.
pub fn verify_sym_identity(
    action: &FiniteAction,
    n_max: usize,
) -> Result<SymIdentityReport, GroupError> {
    let base = string_euler_direct(action)?;
    assert!(
        base.denom().is_one(),
        "string Euler characteristic of a finite set must be an integer"
    );
    let chi = i64::try_from(base.numer())
        .map_err(|_| GroupError::SizeGuard("base Euler characteristic overflow".into()))?;
    let series = sym_euler_series(chi, n_max);
    let mut entries = Vec::new();
    let mut all_match = true;
    for n in 1..=n_max {
        let (wa, _) = build_wreath_action(action, n)?;
        let direct = string_euler_direct(&wa)?;
        let series_coeff = series.coeff(n);
        let matches = direct == series_coeff;
        all_match &= matches;
        entries.push(SymIdentityEntry {
            n,
            direct,
            series_coeff,
            matches,
        });
    }
    Ok(SymIdentityReport {
        base_chi: base,
        entries,
        all_match,
    })
}
