//! Finite groups materialized as full multiplication tables.
//!
//! Every constructor reduces to a table over element ids `0..order`, with id
//! `0` the identity. The [`Structure`] attached to a group remembers the
//! coordinate system the constructor used, so elements can be named and
//! parsed as tuples like `(1,0)` or permutations like `(1 2 3)`.

mod catalogue;
mod spec;
mod subgroup;

pub use catalogue::{catalogue, CatalogueEntry};
pub use spec::{
    cyclic, dicyclic, direct_product, generalized_dihedral, make_group, semidirect_cyclic, symmetric,
    GroupExpr, MAX_ORDER, MAX_SYMMETRIC_DEGREE,
};
pub use subgroup::{
    all_subgroups, classify_group, commutator_subgroup, frattini_subgroup, has_index_two_subgroup,
    is_normal, left_cosets, lower_central_series, quotient, Cosets, GroupClass, Quotient,
    Subgroup, SUBGROUP_ENUMERATION_LIMIT,
};

use crate::error::{Error, Result};

/// Element identifier. The identity is always `0`.
pub type Elem = usize;

/// Coordinate system of a constructed group, used for naming and parsing
/// elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    /// No coordinates; elements are addressed by id only.
    Opaque,
    /// `Z_n`, element `i` is the residue `i`.
    Cyclic(usize),
    /// `S_n` on points `1..=n`, permutations in lexicographic order.
    Symmetric(usize),
    /// Pairs `(x, y)` with id `x + first_order * y`.
    Pair(Box<Structure>, Box<Structure>, usize),
}

impl Structure {
    fn format(&self, e: Elem) -> String {
        match self {
            Structure::Opaque | Structure::Cyclic(_) => e.to_string(),
            Structure::Symmetric(n) => cycle_notation(&unrank_permutation(*n, e)),
            Structure::Pair(a, b, first) => {
                format!("({},{})", a.format(e % first), b.format(e / first))
            }
        }
    }

    /// Resolves a parsed element expression to an id, or `None` when the
    /// expression does not fit this coordinate system.
    fn resolve(&self, expr: &ElemExpr, order: usize) -> Option<Elem> {
        match (self, expr) {
            (_, ElemExpr::Index(i)) => (*i < order).then_some(*i),
            (Structure::Pair(a, b, first), ElemExpr::Tuple(parts)) if parts.len() == 2 => {
                let x = a.resolve(&parts[0], *first)?;
                let y = b.resolve(&parts[1], order / first)?;
                Some(x + first * y)
            }
            (Structure::Symmetric(n), ElemExpr::Cycles(cycles)) => {
                let mut perm: Vec<usize> = (0..*n).collect();
                // cycles are composed left to right, matching the group product
                for cycle in cycles {
                    if cycle.iter().any(|&p| p == 0 || p > *n) {
                        return None;
                    }
                    let mut single: Vec<usize> = (0..*n).collect();
                    for (i, &p) in cycle.iter().enumerate() {
                        single[p - 1] = cycle[(i + 1) % cycle.len()] - 1;
                    }
                    perm = perm.iter().map(|&x| single[x]).collect();
                }
                Some(rank_permutation(&perm))
            }
            (Structure::Symmetric(n), ElemExpr::Tuple(parts)) if parts.len() == 1 => {
                // `(3)` is a one-cycle, i.e. the identity
                if let ElemExpr::Index(p) = parts[0] {
                    (p >= 1 && p <= *n).then_some(0)
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u16>,
    inverses: Vec<u16>,
    structure: Structure,
    names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Builds a group from a product function, validating the result.
    pub fn from_fn(
        order: usize,
        structure: Structure,
        mul: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("group order must be positive"));
        }
        if order > MAX_ORDER {
            return Err(Error::Guard {
                what: "group order",
                limit: MAX_ORDER,
                got: order,
            });
        }
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let p = mul(a, b);
                if p >= order {
                    return Err(Error::invalid(format!(
                        "product of {a} and {b} is {p}, outside 0..{order}"
                    )));
                }
                table.push(p as u16);
            }
        }
        Self::from_flat_table(order, table, structure)
    }

    /// Builds a group from table rows, as read from a table file.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::invalid("empty multiplication table"));
        }
        if order > MAX_ORDER {
            return Err(Error::Guard {
                what: "group order",
                limit: MAX_ORDER,
                got: order,
            });
        }
        let mut table = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::invalid(format!(
                    "row {i} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for &p in row {
                if p >= order {
                    return Err(Error::invalid(format!(
                        "row {i} contains {p}, outside 0..{order}"
                    )));
                }
                table.push(p as u16);
            }
        }
        Self::from_flat_table(order, table, Structure::Opaque)
    }

    fn from_flat_table(order: usize, table: Vec<u16>, structure: Structure) -> Result<Self> {
        let at = |a: usize, b: usize| table[a * order + b] as usize;
        for x in 0..order {
            if at(0, x) != x || at(x, 0) != x {
                return Err(Error::invalid(format!("element 0 is not an identity for {x}")));
            }
        }
        // latin square: rows and columns are permutations
        let mut seen = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                let p = at(a, b);
                if seen[p] == a {
                    return Err(Error::invalid(format!("row {a} repeats {p}")));
                }
                seen[p] = a;
            }
        }
        let mut seen = vec![usize::MAX; order];
        for b in 0..order {
            for a in 0..order {
                let p = at(a, b);
                if seen[p] == b {
                    return Err(Error::invalid(format!("column {b} repeats {p}")));
                }
                seen[p] = b;
            }
        }
        let inverses: Vec<u16> = (0..order)
            .map(|a| (0..order).find(|&b| at(a, b) == 0).expect("latin row") as u16)
            .collect();
        check_associative(order, &at)?;
        Ok(FiniteGroup {
            order,
            table,
            inverses,
            structure,
            names: None,
        })
    }

    /// Re-materializes a subgroup as a group in its own right. Ids follow
    /// the sorted order of the subgroup elements.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> Result<FiniteGroup> {
        let elems = h.elements();
        let mut index = vec![usize::MAX; self.order];
        for (i, &e) in elems.iter().enumerate() {
            index[e] = i;
        }
        let mut g = FiniteGroup::from_fn(elems.len(), Structure::Opaque, |a, b| {
            index[self.mul(elems[a], elems[b])]
        })?;
        g.names = Some(elems.iter().map(|&e| self.name(e)).collect());
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a] as usize
    }

    pub fn pow(&self, a: Elem, k: usize) -> Elem {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `a b a^-1 b^-1`
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.order {
            return Err(Error::invalid("one name per element is required"));
        }
        self.names = Some(names);
        Ok(self)
    }

    /// Display name of an element in the constructor's coordinates.
    pub fn name(&self, e: Elem) -> String {
        match &self.names {
            Some(names) => names[e].clone(),
            None => self.structure.format(e),
        }
    }

    /// Parses one element: a raw id, a coordinate tuple such as `(1,0)`, or
    /// cycle notation such as `(1 2)(3 4)` for symmetric groups.
    pub fn parse_element(&self, text: &str) -> Result<Elem> {
        let expr = ElemExpr::parse(text)?;
        self.structure
            .resolve(&expr, self.order)
            // a bare index is always accepted
            .or(match expr {
                ElemExpr::Index(i) if i < self.order => Some(i),
                _ => None,
            })
            .ok_or_else(|| Error::invalid(format!("`{}` is not an element of this group", text.trim())))
    }

    /// Parses a comma-separated element list, splitting only at top-level
    /// commas so that tuples stay intact.
    pub fn parse_elements(&self, text: &str) -> Result<Vec<Elem>> {
        split_top_level(text)?
            .into_iter()
            .map(|part| self.parse_element(part))
            .collect()
    }
}

/// Light's associativity test: the elements `g` with `(x g) y = x (g y)` for
/// all `x, y` form a submagma containing the identity, so checking a
/// generating set suffices.
fn check_associative(order: usize, at: &impl Fn(usize, usize) -> usize) -> Result<()> {
    let mut reached = vec![false; order];
    reached[0] = true;
    let mut gens = Vec::new();
    let mut count = 1;
    while count < order {
        let g = (0..order).find(|&x| !reached[x]).expect("unreached element");
        gens.push(g);
        let mut stack: Vec<usize> = (0..order).filter(|&x| reached[x]).collect();
        while let Some(x) = stack.pop() {
            for &h in &gens {
                let y = at(x, h);
                if !reached[y] {
                    reached[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
    }
    for &g in &gens {
        for x in 0..order {
            let xg = at(x, g);
            for y in 0..order {
                if at(xg, y) != at(x, at(g, y)) {
                    return Err(Error::invalid(format!(
                        "operation is not associative: ({x}*{g})*{y} != {x}*({g}*{y})"
                    )));
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum ElemExpr {
    Index(usize),
    Tuple(Vec<ElemExpr>),
    Cycles(Vec<Vec<usize>>),
}

impl ElemExpr {
    fn parse(text: &str) -> Result<ElemExpr> {
        let t = text.trim();
        if t.is_empty() {
            return Err(Error::Parse {
                pos: 0,
                msg: "empty element".into(),
            });
        }
        if let Ok(i) = t.parse::<usize>() {
            return Ok(ElemExpr::Index(i));
        }
        if t == "()" || t == "e" || t == "id" {
            return Ok(ElemExpr::Index(0));
        }
        if !t.starts_with('(') || !t.ends_with(')') {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("expected an index or a parenthesized element, got `{t}`"),
            });
        }
        // cycle notation: groups of whitespace-separated points, no commas
        if !t.contains(',') && t.contains(' ') || t.contains(")(") && !t.contains(',') {
            let mut cycles = Vec::new();
            for chunk in t.split(')') {
                let chunk = chunk.trim();
                if chunk.is_empty() {
                    continue;
                }
                let body = chunk.strip_prefix('(').ok_or_else(|| Error::Parse {
                    pos: 0,
                    msg: format!("malformed cycle `{chunk}`"),
                })?;
                let points = body
                    .split_whitespace()
                    .map(|p| {
                        p.parse::<usize>().map_err(|_| Error::Parse {
                            pos: 0,
                            msg: format!("bad point `{p}` in cycle"),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let mut sorted = points.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != points.len() {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: format!("repeated point in cycle `{chunk})`"),
                    });
                }
                cycles.push(points);
            }
            return Ok(ElemExpr::Cycles(cycles));
        }
        let inner = &t[1..t.len() - 1];
        let parts = split_top_level(inner)?
            .into_iter()
            .map(ElemExpr::parse)
            .collect::<Result<Vec<_>>>()?;
        Ok(ElemExpr::Tuple(parts))
    }
}

fn split_top_level(text: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse {
                        pos: i,
                        msg: "unbalanced `)`".into(),
                    });
                }
            }
            ',' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse {
            pos: text.len(),
            msg: "unbalanced `(`".into(),
        });
    }
    let last = &text[start..];
    if !last.trim().is_empty() || !parts.is_empty() {
        parts.push(last);
    }
    Ok(parts.into_iter().filter(|p| !p.trim().is_empty()).collect())
}

pub(crate) fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Lexicographic rank of a permutation of `0..n`.
pub(crate) fn rank_permutation(perm: &[usize]) -> usize {
    let n = perm.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = perm[i + 1..].iter().filter(|&&x| x < perm[i]).count();
        rank += smaller * factorial(n - 1 - i);
    }
    rank
}

pub(crate) fn unrank_permutation(n: usize, mut rank: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut perm = Vec::with_capacity(n);
    for i in 0..n {
        let f = factorial(n - 1 - i);
        perm.push(pool.remove(rank / f));
        rank %= f;
    }
    perm
}

fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(x + 1).to_string());
            first = false;
            x = perm[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_rank_round_trip() {
        for r in 0..factorial(5) {
            assert_eq!(rank_permutation(&unrank_permutation(5, r)), r);
        }
        assert_eq!(unrank_permutation(4, 0), vec![0, 1, 2, 3]);
    }

    #[test]
    fn rejects_non_latin_table() {
        let rows = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteGroup::from_rows(&rows).is_err());
    }

    #[test]
    fn rejects_non_associative_loop() {
        // a latin square with identity 0 that is not a group (order-5 loop)
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_rows(&rows).unwrap_err();
        assert!(err.to_string().contains("associative"), "{err}");
    }

    #[test]
    fn splits_nested_tuples() {
        assert_eq!(
            split_top_level("(1,0), (0,1),3").unwrap(),
            vec!["(1,0)", " (0,1)", "3"]
        );
        assert!(split_top_level("(1,0").is_err());
    }

    #[test]
    fn names_and_parses_coordinates() {
        let g = make_group("sdp:7,3,2").unwrap();
        let x = g.parse_element("(1,0)").unwrap();
        let t = g.parse_element("(0,1)").unwrap();
        assert_eq!((x, t), (1, 7));
        assert_eq!(g.name(8), "(1,1)");
        assert_eq!(g.parse_elements("(1,0),(0,1)").unwrap(), vec![1, 7]);
        assert_eq!(g.parse_element("8").unwrap(), 8);
        assert!(g.parse_element("(7,0)").is_err());
    }

    #[test]
    fn parses_cycle_notation() {
        let s3 = make_group("sym:3").unwrap();
        let t = s3.parse_element("(1 2)").unwrap();
        assert_eq!(s3.name(t), "(1 2)");
        assert_eq!(s3.mul(t, t), 0);
        let c = s3.parse_element("(1 2 3)").unwrap();
        assert_eq!(s3.element_order(c), 3);
        assert_eq!(s3.parse_element("(1 2)(2 3)").unwrap(), s3.mul(t, s3.parse_element("(2 3)").unwrap()));
    }
}
