//! Generating-set analysis: generation, minimality, semiminimality, and the
//! degree-based chromatic bounds that follow from them.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::validate_connection_set;
use crate::group::{Elem, FiniteGroup, Subgroup};

/// Largest connection set for the any-order semiminimality search.
pub const PERMUTATION_SEARCH_LIMIT: usize = 10;
/// Largest group order for minimal generating set enumeration.
pub const ENUMERATION_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSetReport {
    pub generates: bool,
    /// Generates, and no proper subset does.
    pub minimal: bool,
    /// No element lies in the subgroup generated by its predecessors.
    pub semiminimal_in_given_order: bool,
    pub semiminimal_some_order: bool,
    /// An order (as indices into the input) witnessing semiminimality.
    pub witness_order: Option<Vec<usize>>,
}

pub fn analyze_genset(g: &FiniteGroup, c: &[Elem]) -> Result<GenSetReport> {
    validate_connection_set(g, c)?;
    if c.len() > PERMUTATION_SEARCH_LIMIT {
        return Err(Error::Guard {
            what: "connection set size for order search",
            limit: PERMUTATION_SEARCH_LIMIT,
            got: c.len(),
        });
    }
    let generates = Subgroup::closure(g, c).is_full();
    let minimal = generates && is_irredundant(g, c);
    let semiminimal_in_given_order = (0..c.len()).all(|i| !Subgroup::closure(g, &c[..i]).contains(c[i]));
    let witness_order = if semiminimal_in_given_order {
        Some((0..c.len()).collect())
    } else {
        semiminimal_order(g, c)
    };
    Ok(GenSetReport {
        generates,
        minimal,
        semiminimal_in_given_order,
        semiminimal_some_order: witness_order.is_some(),
        witness_order,
    })
}

/// No element of `c` is generated by the others.
fn is_irredundant(g: &FiniteGroup, c: &[Elem]) -> bool {
    (0..c.len()).all(|i| {
        let rest: Vec<Elem> = c.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
        !Subgroup::closure(g, &rest).contains(c[i])
    })
}

/// Exhaustive search over orderings. The closure of a prefix depends only on
/// the set of elements used, so states are memoized by bitmask.
fn semiminimal_order(g: &FiniteGroup, c: &[Elem]) -> Option<Vec<usize>> {
    fn go(
        g: &FiniteGroup,
        c: &[Elem],
        used: u32,
        order: &mut Vec<usize>,
        closures: &mut HashMap<u32, Subgroup>,
        dead: &mut Vec<bool>,
    ) -> bool {
        if order.len() == c.len() {
            return true;
        }
        if dead[used as usize] {
            return false;
        }
        let closure = closures
            .entry(used)
            .or_insert_with(|| {
                let elems: Vec<Elem> = (0..c.len()).filter(|&i| used >> i & 1 == 1).map(|i| c[i]).collect();
                Subgroup::closure(g, &elems)
            })
            .clone();
        for i in 0..c.len() {
            if used >> i & 1 == 1 || closure.contains(c[i]) {
                continue;
            }
            order.push(i);
            if go(g, c, used | 1 << i, order, closures, dead) {
                return true;
            }
            order.pop();
        }
        dead[used as usize] = true;
        false
    }
    let mut order = Vec::new();
    let mut closures = HashMap::new();
    let mut dead = vec![false; 1 << c.len()];
    go(g, c, 0, &mut order, &mut closures, &mut dead).then_some(order)
}

/// All inclusion-minimal generating sets of size at most `max_size`, each
/// sorted by element id, in lexicographic order.
///
/// A minimal generating set is semiminimal in every order, so its size is
/// at most `log2 |G|`; larger caps are clamped to that.
pub fn enumerate_minimal_generating_sets(g: &FiniteGroup, max_size: usize) -> Result<Vec<Vec<Elem>>> {
    if g.order() > ENUMERATION_LIMIT {
        return Err(Error::Guard {
            what: "group order for generating set enumeration",
            limit: ENUMERATION_LIMIT,
            got: g.order(),
        });
    }
    if g.is_trivial() {
        return Ok(vec![Vec::new()]);
    }
    let cap = max_size.min(g.order().ilog2() as usize);
    let mut out = Vec::new();
    let mut current = Vec::new();
    extend_sets(g, cap, 1, &Subgroup::trivial(g), &mut current, &mut out);
    Ok(out)
}

fn extend_sets(
    g: &FiniteGroup,
    cap: usize,
    next: Elem,
    closure: &Subgroup,
    current: &mut Vec<Elem>,
    out: &mut Vec<Vec<Elem>>,
) {
    if current.len() == cap {
        return;
    }
    for x in next..g.order() {
        // an element already generated would be redundant in every superset
        if closure.contains(x) {
            continue;
        }
        current.push(x);
        let grown = closure.join(g, &[x]);
        if grown.is_full() {
            if is_irredundant(g, current) {
                out.push(current.clone());
            }
        } else {
            extend_sets(g, cap, x + 1, &grown, current, out);
        }
        current.pop();
    }
}

/// The unique `w > 0` with `w * 2^w = n`, for `n >= 2`.
pub fn binary_lambert_w(n: f64) -> Result<f64> {
    if n.is_nan() || n < 2.0 || !n.is_finite() {
        return Err(Error::invalid(format!("binary Lambert W needs n >= 2, got {n}")));
    }
    let f = |w: f64| w * w.exp2() - n;
    // f(1) <= 0 and f(log2 n) >= 0 for n >= 2
    let (mut lo, mut hi) = (1.0f64, n.log2().max(1.0));
    let mut w = 0.5 * (lo + hi);
    for _ in 0..200 {
        let fw = f(w);
        if fw == 0.0 {
            return Ok(w);
        }
        if fw < 0.0 {
            lo = w;
        } else {
            hi = w;
        }
        let slope = w.exp2() * (1.0 + w * std::f64::consts::LN_2);
        let newton = w - fw / slope;
        w = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo < 1e-15 || (f(w).abs() < 1e-12 * n) {
            break;
        }
    }
    Ok(w)
}

/// `log2 n - log2 log2 (n / log2 n)`, when it is defined.
pub fn lambert_w_upper_estimate(n: f64) -> Option<f64> {
    if n <= 1.0 {
        return None;
    }
    let inner = (n / n.log2()).log2();
    (inner > 0.0).then(|| n.log2() - inner.log2())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundBasis {
    Minimal,
    Semiminimal,
    /// No valid order exists; the bound is `+inf`.
    NotSemiminimal,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChromaticBound {
    pub value: f64,
    pub basis: BoundBasis,
}

/// `2 W_b(n)` for minimal sets, `2 log2 n` for semiminimal ones.
pub fn chromatic_bound(g: &FiniteGroup, c: &[Elem]) -> Result<ChromaticBound> {
    let report = analyze_genset(g, c)?;
    if !report.generates {
        return Err(Error::NotGenerating);
    }
    let n = g.order() as f64;
    let bound = if report.minimal {
        let value = if g.order() >= 2 { 2.0 * binary_lambert_w(n)? } else { 1.0 };
        ChromaticBound {
            value,
            basis: BoundBasis::Minimal,
        }
    } else if report.semiminimal_some_order {
        ChromaticBound {
            value: 2.0 * n.log2(),
            basis: BoundBasis::Semiminimal,
        }
    } else {
        ChromaticBound {
            value: f64::INFINITY,
            basis: BoundBasis::NotSemiminimal,
        }
    };
    Ok(bound)
}
