//! The group spec mini-language.
//!
//! ```text
//! spec := "cyclic:" N | "sym:" N | "dicyclic:" N
//!       | "gdih:(" spec ")"
//!       | "sdp:" M "," N "," K
//!       | "prod:(" spec ")x(" spec ")"
//!       | "table:" PATH
//! ```

use std::path::PathBuf;

use super::{factorial, rank_permutation, unrank_permutation, FiniteGroup, Structure};
use crate::error::{Error, Result};

/// Largest group order any constructor will materialize.
pub const MAX_ORDER: usize = 20160;
/// Largest degree accepted by `sym:<n>` (the order guard applies as well).
pub const MAX_SYMMETRIC_DEGREE: usize = 8;

/// Parsed group spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupExpr {
    Cyclic(usize),
    Symmetric(usize),
    Dicyclic(usize),
    GeneralizedDihedral(Box<GroupExpr>),
    SemidirectCyclic { m: usize, n: usize, k: usize },
    Product(Box<GroupExpr>, Box<GroupExpr>),
    Table(PathBuf),
}

/// Parses and builds a group from its spec string.
pub fn make_group(spec: &str) -> Result<FiniteGroup> {
    GroupExpr::parse(spec)?.build()
}

impl GroupExpr {
    pub fn parse(spec: &str) -> Result<GroupExpr> {
        let mut p = Parser { src: spec, pos: 0 };
        p.skip_ws();
        let expr = p.expr()?;
        p.skip_ws();
        if p.pos != spec.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(expr)
    }

    /// Order of the group this expression denotes, without building it.
    /// Table files are read to find their order.
    pub fn order(&self) -> Result<usize> {
        Ok(match self {
            GroupExpr::Cyclic(n) | GroupExpr::Dicyclic(n) => *n,
            GroupExpr::Symmetric(n) => factorial(*n),
            GroupExpr::GeneralizedDihedral(inner) => inner.order()?.saturating_mul(2),
            GroupExpr::SemidirectCyclic { m, n, .. } => m.saturating_mul(*n),
            GroupExpr::Product(a, b) => a.order()?.saturating_mul(b.order()?),
            GroupExpr::Table(path) => read_table_rows(path)?.len(),
        })
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        let order = self.order()?;
        if order > MAX_ORDER {
            return Err(Error::Guard {
                what: "group order",
                limit: MAX_ORDER,
                got: order,
            });
        }
        match self {
            GroupExpr::Cyclic(n) => cyclic(*n),
            GroupExpr::Symmetric(n) => symmetric(*n),
            GroupExpr::Dicyclic(n) => dicyclic(*n),
            GroupExpr::GeneralizedDihedral(inner) => generalized_dihedral(&inner.build()?),
            GroupExpr::SemidirectCyclic { m, n, k } => semidirect_cyclic(*m, *n, *k),
            GroupExpr::Product(a, b) => direct_product(&a.build()?, &b.build()?),
            GroupExpr::Table(path) => {
                let rows = read_table_rows(path)?;
                FiniteGroup::from_rows(&rows).map_err(|e| Error::Table {
                    path: path.clone(),
                    msg: e.to_string(),
                })
            }
        }
    }
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::invalid("cyclic group order must be positive"));
    }
    FiniteGroup::from_fn(n, Structure::Cyclic(n), |a, b| (a + b) % n)
}

/// `S_n` acting on `1..=n`; `p * q` applies `p` first.
pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::invalid("symmetric degree must be positive"));
    }
    if n > MAX_SYMMETRIC_DEGREE {
        return Err(Error::Guard {
            what: "symmetric degree",
            limit: MAX_SYMMETRIC_DEGREE,
            got: n,
        });
    }
    let order = factorial(n);
    let perms: Vec<Vec<usize>> = (0..order).map(|r| unrank_permutation(n, r)).collect();
    FiniteGroup::from_fn(order, Structure::Symmetric(n), |a, b| {
        let composed: Vec<usize> = perms[a].iter().map(|&x| perms[b][x]).collect();
        rank_permutation(&composed)
    })
}

/// Dicyclic group of order `n` (`n % 4 == 0`): pairs `(i, j)` standing for
/// `a^i b^j` with `a` of order `n/2`, `b^2 = a^(n/4)` and `b^-1 a b = a^-1`.
pub fn dicyclic(n: usize) -> Result<FiniteGroup> {
    if n < 4 || !n.is_multiple_of(4) {
        return Err(Error::invalid(format!(
            "dicyclic order must be a positive multiple of 4, got {n}"
        )));
    }
    let half = n / 2;
    let quarter = n / 4;
    let structure = Structure::Pair(
        Box::new(Structure::Cyclic(half)),
        Box::new(Structure::Cyclic(2)),
        half,
    );
    FiniteGroup::from_fn(n, structure, |a, b| {
        let (i, j) = (a % half, a / half);
        let (i2, j2) = (b % half, b / half);
        let (ri, rj) = match (j, j2) {
            (0, _) => ((i + i2) % half, j2),
            (1, 0) => ((i + half - i2) % half, 1),
            _ => ((i + half - i2 + quarter) % half, 0),
        };
        ri + half * rj
    })
}

/// `Dih(A) = A ⋊ Z_2` with `Z_2` acting by inversion; `A` must be abelian.
pub fn generalized_dihedral(base: &FiniteGroup) -> Result<FiniteGroup> {
    if !base.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let m = base.order();
    let structure = Structure::Pair(
        Box::new(base.structure().clone()),
        Box::new(Structure::Cyclic(2)),
        m,
    );
    let g = FiniteGroup::from_fn(2 * m, structure, |a, b| {
        let (g1, t1) = (a % m, a / m);
        let (g2, t2) = (b % m, b / m);
        if t1 == 0 {
            base.mul(g1, g2) + m * t2
        } else {
            base.mul(g1, base.inv(g2)) + m * ((1 + t2) % 2)
        }
    })?;
    carry_pair_names(g, base, m, |t| t.to_string())
}

/// `Z_m ⋊ Z_n` with `(x,t)(x',t') = (x + k^t x', t + t')`.
pub fn semidirect_cyclic(m: usize, n: usize, k: usize) -> Result<FiniteGroup> {
    if m == 0 || n == 0 {
        return Err(Error::invalid("sdp factors must have positive order"));
    }
    let powers: Vec<usize> = std::iter::successors(Some(1 % m), |p| Some(p * k % m))
        .take(n + 1)
        .collect();
    if powers[n] != 1 % m {
        return Err(Error::invalid(format!(
            "sdp:{m},{n},{k} is not a valid action: {k}^{n} is not 1 mod {m}"
        )));
    }
    let structure = Structure::Pair(
        Box::new(Structure::Cyclic(m)),
        Box::new(Structure::Cyclic(n)),
        m,
    );
    FiniteGroup::from_fn(m * n, structure, |a, b| {
        let (x, t) = (a % m, a / m);
        let (x2, t2) = (b % m, b / m);
        (x + powers[t] * x2) % m + m * ((t + t2) % n)
    })
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let (p, q) = (a.order(), b.order());
    let structure = Structure::Pair(
        Box::new(a.structure().clone()),
        Box::new(b.structure().clone()),
        p,
    );
    let g = FiniteGroup::from_fn(p * q, structure, |x, y| {
        a.mul(x % p, y % p) + p * b.mul(x / p, y / p)
    })?;
    if a.names.is_some() || b.names.is_some() {
        let names = (0..p * q)
            .map(|e| format!("({},{})", a.name(e % p), b.name(e / p)))
            .collect();
        return g.with_names(names);
    }
    Ok(g)
}

// Table-backed bases carry explicit names that the pair structure cannot
// reproduce; rebuild them.
fn carry_pair_names(
    g: FiniteGroup,
    base: &FiniteGroup,
    m: usize,
    second: impl Fn(usize) -> String,
) -> Result<FiniteGroup> {
    if base.names.is_none() {
        return Ok(g);
    }
    let names = (0..g.order())
        .map(|e| format!("({},{})", base.name(e % m), second(e / m)))
        .collect();
    g.with_names(names)
}

fn read_table_rows(path: &PathBuf) -> Result<Vec<Vec<usize>>> {
    let text = std::fs::read_to_string(path)?;
    let table_err = |msg: String| Error::Table {
        path: path.clone(),
        msg,
    };
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, first) = lines
        .next()
        .ok_or_else(|| table_err("file is empty".into()))?;
    let n: usize = first
        .trim()
        .parse()
        .map_err(|_| table_err(format!("line 1: expected the order, got `{}`", first.trim())))?;
    if n == 0 {
        return Err(table_err("order must be positive".into()));
    }
    if n > MAX_ORDER {
        return Err(Error::Guard {
            what: "group order",
            limit: MAX_ORDER,
            got: n,
        });
    }
    let mut rows = Vec::with_capacity(n);
    for (lineno, line) in lines {
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| {
                    table_err(format!("line {}: `{tok}` is not an integer", lineno + 1))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(table_err(format!(
                "line {}: expected {n} entries, found {}",
                lineno + 1,
                row.len()
            )));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(table_err(format!("expected {n} rows, found {}", rows.len())));
    }
    Ok(rows)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected a number"));
        }
        let value = self.rest()[..digits]
            .parse()
            .map_err(|_| self.error("number too large"))?;
        self.pos += digits;
        Ok(value)
    }

    fn parenthesized(&mut self) -> Result<GroupExpr> {
        self.expect("(")?;
        self.skip_ws();
        let inner = self.expr()?;
        self.skip_ws();
        self.expect(")")?;
        Ok(inner)
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        let start = self.pos;
        if self.eat("cyclic:") {
            let n = self.number()?;
            if n == 0 {
                self.pos = start;
                return Err(self.error("cyclic order must be positive"));
            }
            Ok(GroupExpr::Cyclic(n))
        } else if self.eat("sym:") {
            let n = self.number()?;
            if n == 0 {
                self.pos = start;
                return Err(self.error("symmetric degree must be positive"));
            }
            if n > MAX_SYMMETRIC_DEGREE {
                self.pos = start;
                return Err(Error::Guard {
                    what: "symmetric degree",
                    limit: MAX_SYMMETRIC_DEGREE,
                    got: n,
                });
            }
            Ok(GroupExpr::Symmetric(n))
        } else if self.eat("dicyclic:") {
            let n = self.number()?;
            if n < 4 || n % 4 != 0 {
                self.pos = start;
                return Err(self.error(format!("dicyclic order must be a positive multiple of 4, got {n}")));
            }
            Ok(GroupExpr::Dicyclic(n))
        } else if self.eat("gdih:") {
            Ok(GroupExpr::GeneralizedDihedral(Box::new(self.parenthesized()?)))
        } else if self.eat("sdp:") {
            let m = self.number()?;
            self.expect(",")?;
            let n = self.number()?;
            self.expect(",")?;
            let k = self.number()?;
            Ok(GroupExpr::SemidirectCyclic { m, n, k })
        } else if self.eat("prod:") {
            let a = self.parenthesized()?;
            self.expect("x")?;
            let b = self.parenthesized()?;
            Ok(GroupExpr::Product(Box::new(a), Box::new(b)))
        } else if self.eat("table:") {
            // the path runs to the end of input or to an unbalanced `)`
            let mut depth = 0i32;
            let mut len = self.rest().len();
            for (i, ch) in self.rest().char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' if depth == 0 => {
                        len = i;
                        break;
                    }
                    ')' => depth -= 1,
                    _ => {}
                }
            }
            let path = self.rest()[..len].trim();
            if path.is_empty() {
                return Err(self.error("expected a table path"));
            }
            self.pos += len;
            Ok(GroupExpr::Table(PathBuf::from(path)))
        } else {
            Err(self.error(
                "expected one of cyclic:, sym:, dicyclic:, gdih:, sdp:, prod:, table:",
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn noncommuting_pair(g: &FiniteGroup) -> Option<(usize, usize)> {
        g.elements()
            .flat_map(|a| g.elements().map(move |b| (a, b)))
            .find(|&(a, b)| g.mul(a, b) != g.mul(b, a))
    }

    fn assert_group_axioms(g: &FiniteGroup) {
        let n = g.order();
        for a in 0..n {
            assert_eq!(g.mul(0, a), a);
            assert_eq!(g.mul(a, 0), a);
            assert_eq!(g.mul(a, g.inv(a)), 0);
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn cyclic_four() {
        let g = make_group("cyclic:4").unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.mul(1, 3), 0);
    }

    #[test]
    fn order_21_is_nonabelian() {
        let g = make_group("sdp:7,3,2").unwrap();
        assert_eq!(g.order(), 21);
        let (a, b) = noncommuting_pair(&g).expect("nonabelian");
        assert_ne!(g.commutator(a, b), 0);
    }

    #[test]
    fn dicyclic_32_has_unique_central_involution() {
        let g = make_group("dicyclic:32").unwrap();
        assert_eq!(g.order(), 32);
        let involutions: Vec<_> = g.elements().filter(|&x| x != 0 && g.mul(x, x) == 0).collect();
        let a8 = g.parse_element("(8,0)").unwrap();
        assert_eq!(involutions, vec![a8]);
        assert!(g.elements().all(|x| g.mul(x, a8) == g.mul(a8, x)));
        // defining relations a^16 = b^4 = 1, a^8 = b^2, aba = b
        let a = g.parse_element("(1,0)").unwrap();
        let b = g.parse_element("(0,1)").unwrap();
        assert_eq!(g.element_order(a), 16);
        assert_eq!(g.element_order(b), 4);
        assert_eq!(g.pow(a, 8), g.pow(b, 2));
        assert_eq!(g.mul(g.mul(a, b), a), b);
    }

    #[test]
    fn all_constructors_satisfy_axioms() {
        for spec in [
            "cyclic:1",
            "cyclic:12",
            "sym:3",
            "sym:4",
            "dicyclic:8",
            "dicyclic:12",
            "gdih:(cyclic:5)",
            "gdih:(prod:(cyclic:2)x(cyclic:4))",
            "sdp:7,3,2",
            "sdp:9,3,4",
            "prod:(cyclic:2)x(sym:3)",
        ] {
            let g = make_group(spec).unwrap();
            assert!(g.order() <= 64);
            assert_group_axioms(&g);
        }
    }

    #[test]
    fn gdih_of_cyclic3_is_nonabelian_of_order_6() {
        let g = make_group("gdih:(cyclic:3)").unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        let r = g.parse_element("(0,1)").unwrap();
        let x = g.parse_element("(1,0)").unwrap();
        // reflection inverts the rotation
        assert_eq!(g.mul(g.mul(r, x), r), g.inv(x));
    }

    #[test]
    fn rejections() {
        assert!(matches!(make_group("gdih:(sym:3)"), Err(Error::NotAbelian)));
        assert!(make_group("sdp:7,3,3").is_err());
        assert!(matches!(make_group("sym:9"), Err(Error::Guard { .. })));
        assert!(matches!(make_group("sym:8"), Err(Error::Guard { .. })));
        assert!(matches!(make_group("cyclic:20161"), Err(Error::Guard { .. })));
        assert!(matches!(
            make_group("prod:(cyclic:200)x(cyclic:200)"),
            Err(Error::Guard { .. })
        ));
        assert!(make_group("dicyclic:6").is_err());
    }

    #[test]
    fn parse_errors_carry_positions() {
        match GroupExpr::parse("prod:(cyclic:2)y(cyclic:2)") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 15),
            other => panic!("unexpected {other:?}"),
        }
        match GroupExpr::parse("cyclic:") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(GroupExpr::parse("cyclic:3 extra"), Err(Error::Parse { pos: 9, .. })));
        assert!(matches!(GroupExpr::parse("dih:3"), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn table_file_round_trip() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "3\n0 1 2\n1 2 0\n2 0 1").unwrap();
        let spec = format!("table:{}", f.path().display());
        let g = make_group(&spec).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.inv(1), 2);
        let nested = make_group(&format!("prod:({spec})x(cyclic:2)")).unwrap();
        assert_eq!(nested.order(), 6);
    }

    #[test]
    fn malformed_table_files() {
        let cases = ["", "2\n0 1\n1", "2\n0 1\n1 x", "2\n1 0\n0 1", "3\n0 1 2\n1 0 2\n2 1 0"];
        for body in cases {
            let mut f = tempfile::NamedTempFile::new().unwrap();
            write!(f, "{body}").unwrap();
            let spec = format!("table:{}", f.path().display());
            let err = make_group(&spec).unwrap_err();
            assert!(matches!(err, Error::Table { .. }), "{body:?}: {err}");
        }
    }
}
