//! Constructive colorings of minimal Cayley graphs.
//!
//! Everything here rests on one observation. For a minimal generating set
//! `C` and `c ∈ C`, let `H_c = ⟨C − c⟩`. Moving along a `c'`-edge keeps the
//! left coset of `H_c` fixed unless `c' = c`. So the map sending `x` to its
//! tuple of cosets is a homomorphism into the Cartesian product of the
//! Schreier graphs `Sch(G, H_c, c)`, and summing proper factor colorings
//! modulo a common `k` gives a proper coloring of `Cay(G, C)`.

use crate::chromatic::{chromatic_number, verify_vertex_coloring, SolveBudget, VertexColoring};
use crate::error::{Error, Result};
use crate::genset::analyze_genset;
use crate::graph::{cayley_graph, schreier_graph, Graph};
use crate::group::{
    all_subgroups, commutator_subgroup, frattini_subgroup, generalized_dihedral, is_normal,
    left_cosets, quotient, Elem, FiniteGroup, Subgroup,
};

/// One factor of the Schreier product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub generator: Elem,
    /// Number of cosets of `⟨C − generator⟩`.
    pub cosets: usize,
    pub chi: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductColoring {
    pub coloring: VertexColoring,
    pub factors: Vec<Factor>,
    /// Modulus of the combination, the largest factor χ.
    pub modulus: usize,
}

/// Colors `G` by `col_quot ∘ proj`. The result is proper on `Cay(G, C·N)`
/// and on every Cayley graph of `G` whose connection set lies in `C·N`.
pub fn lift_coloring(
    g: &FiniteGroup,
    n: &Subgroup,
    c_quot: &[Elem],
    col_quot: &VertexColoring,
) -> Result<VertexColoring> {
    let q = quotient(g, n)?;
    let target = cayley_graph(&q.group, c_quot)?;
    if let Some((u, v)) = verify_vertex_coloring(&target, col_quot.colors())? {
        return Err(Error::ImproperColoring(u, v));
    }
    Ok(VertexColoring::new(
        q.projection.iter().map(|&b| col_quot.color(b)).collect(),
    ))
}

fn is_dedekind(g: &FiniteGroup) -> Result<bool> {
    Ok(g.is_abelian() || all_subgroups(g)?.iter().all(|h| is_normal(g, h)))
}

fn require_minimal(g: &FiniteGroup, c: &[Elem]) -> Result<()> {
    if analyze_genset(g, c)?.minimal {
        Ok(())
    } else {
        Err(Error::NotMinimal)
    }
}

/// Coset map and Schreier graph of each `H_c = ⟨C − c⟩`.
fn schreier_factors(g: &FiniteGroup, c: &[Elem]) -> Result<Vec<(Vec<usize>, Graph)>> {
    (0..c.len())
        .map(|i| {
            let rest: Vec<Elem> = c.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
            let h = Subgroup::closure(g, &rest);
            let cosets = left_cosets(g, &h)?;
            let graph = schreier_graph(g, &h, c[i])?;
            Ok((cosets.coset_of, graph))
        })
        .collect()
}

/// `x ↦ Σ_i colors_i(coset_i(x)) mod k`.
fn combine(order: usize, coset_maps: &[&[usize]], colors: &[&[usize]], k: usize) -> Vec<usize> {
    (0..order)
        .map(|x| {
            coset_maps
                .iter()
                .zip(colors)
                .map(|(map, col)| col[map[x]])
                .sum::<usize>()
                % k.max(1)
        })
        .collect()
}

fn checked(g: &FiniteGroup, c: &[Elem], colors: Vec<usize>) -> Result<VertexColoring> {
    let coloring = VertexColoring::new(colors);
    let graph = cayley_graph(g, c)?;
    if let Some((u, v)) = verify_vertex_coloring(&graph, coloring.colors())? {
        return Err(Error::ImproperColoring(u, v));
    }
    Ok(coloring)
}

/// Colors every Schreier factor exactly and combines them modulo the
/// largest factor χ.
pub fn schreier_product_coloring(g: &FiniteGroup, c: &[Elem]) -> Result<ProductColoring> {
    require_minimal(g, c)?;
    let factors = schreier_factors(g, c)?;
    let mut factor_colors = Vec::with_capacity(factors.len());
    for (_, graph) in &factors {
        factor_colors.push(chromatic_number(graph, SolveBudget::default())?);
    }
    let modulus = factor_colors.iter().map(|(chi, _)| *chi).max().unwrap_or(1);
    let maps: Vec<&[usize]> = factors.iter().map(|(m, _)| m.as_slice()).collect();
    let cols: Vec<&[usize]> = factor_colors.iter().map(|(_, col)| col.colors()).collect();
    let coloring = checked(g, c, combine(g.order(), &maps, &cols, modulus))?;
    Ok(ProductColoring {
        coloring,
        factors: c
            .iter()
            .zip(&factors)
            .zip(&factor_colors)
            .map(|((&generator, (_, graph)), (chi, _))| Factor {
                generator,
                cosets: graph.n(),
                chi: *chi,
            })
            .collect(),
        modulus,
    })
}

/// 3-coloring of a cycle or single edge: even cycles alternate from coset 0,
/// odd cycles put color 2 on the largest coset id and alternate from its
/// smaller neighbor.
fn color_cycle_factor(graph: &Graph) -> Result<Vec<usize>> {
    let n = graph.n();
    if n == 2 && graph.edge_count() == 1 {
        return Ok(vec![0, 1]);
    }
    if n < 3 || !graph.is_connected() || (0..n).any(|v| graph.degree(v) != 2) {
        return Err(Error::Inconsistency(format!(
            "Schreier factor with {n} cosets and {} edges is not a cycle",
            graph.edge_count()
        )));
    }
    let (start, avoid, first_color) = if n.is_multiple_of(2) {
        (0, None, 0)
    } else {
        let top = n - 1;
        let nb = graph.neighbors(top);
        (nb[0].min(nb[1]), Some(top), 0)
    };
    let mut colors = vec![usize::MAX; n];
    if let Some(top) = avoid {
        colors[top] = 2;
    }
    let (mut prev, mut cur, mut col) = (avoid.unwrap_or(usize::MAX), start, first_color);
    loop {
        colors[cur] = col;
        col ^= 1;
        let next = graph
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| w != prev && colors[w] == usize::MAX);
        match next {
            Some(w) => {
                prev = cur;
                cur = w;
            }
            None => break,
        }
    }
    Ok(colors)
}

/// The 3-coloring for minimal Cayley graphs of Dedekind groups: every
/// Schreier factor is a cycle (or an edge), 3-colored explicitly.
pub fn dedekind_three_coloring(g: &FiniteGroup, c: &[Elem]) -> Result<ProductColoring> {
    if !is_dedekind(g)? {
        return Err(Error::NotDedekind);
    }
    require_minimal(g, c)?;
    dedekind_unchecked(g, c)
}

fn dedekind_unchecked(g: &FiniteGroup, c: &[Elem]) -> Result<ProductColoring> {
    let factors = schreier_factors(g, c)?;
    let factor_colors = factors
        .iter()
        .map(|(_, graph)| color_cycle_factor(graph))
        .collect::<Result<Vec<_>>>()?;
    let chis: Vec<usize> = factor_colors.iter().map(|col| col.iter().max().map_or(1, |m| m + 1)).collect();
    let modulus = chis.iter().copied().max().unwrap_or(1);
    let maps: Vec<&[usize]> = factors.iter().map(|(m, _)| m.as_slice()).collect();
    let cols: Vec<&[usize]> = factor_colors.iter().map(Vec::as_slice).collect();
    let coloring = checked(g, c, combine(g.order(), &maps, &cols, modulus))?;
    Ok(ProductColoring {
        coloring,
        factors: c
            .iter()
            .zip(&factors)
            .zip(chis)
            .map(|((&generator, (_, graph)), chi)| Factor {
                generator,
                cosets: graph.n(),
                chi,
            })
            .collect(),
        modulus,
    })
}

/// Checks Dedekind-ness once for repeated colorings of the same group.
pub struct DedekindColorer<'a> {
    group: &'a FiniteGroup,
}

impl<'a> DedekindColorer<'a> {
    pub fn new(group: &'a FiniteGroup) -> Result<Self> {
        if !is_dedekind(group)? {
            return Err(Error::NotDedekind);
        }
        Ok(DedekindColorer { group })
    }

    pub fn color(&self, c: &[Elem]) -> Result<ProductColoring> {
        require_minimal(self.group, c)?;
        dedekind_unchecked(self.group, c)
    }
}

/// A generalized dihedral group `Dih(Γ)` with a connection set split by the
/// second coordinate.
#[derive(Clone, Debug)]
pub struct DihedralContext {
    pub base: FiniteGroup,
    pub group: FiniteGroup,
    pub connection: Vec<Elem>,
    /// Elements of the form `(g, 0)`.
    pub c0: Vec<Elem>,
    /// Elements of the form `(g, 1)`.
    pub c1: Vec<Elem>,
    /// `(Γ × {0}) ∩ ⟨C1⟩`, as a subgroup of `Dih(Γ)`.
    pub h: Subgroup,
    /// Lowest-id element of `C1`.
    pub y: Elem,
}

impl DihedralContext {
    pub fn new(base: &FiniteGroup, c: &[Elem]) -> Result<Self> {
        let group = generalized_dihedral(base)?;
        crate::graph::validate_connection_set(&group, c)?;
        let m = base.order();
        let (c1, c0): (Vec<Elem>, Vec<Elem>) = c.iter().partition(|&&x| x >= m);
        let Some(&y) = c1.iter().min() else {
            return Err(Error::invalid(
                "no element of the connection set has second coordinate 1; it cannot generate Dih",
            ));
        };
        let reflections = Subgroup::closure(&group, &c1);
        let rotations: Vec<Elem> = reflections.elements().iter().copied().filter(|&x| x < m).collect();
        let h = Subgroup::from_elements(&group, &rotations)?;
        Ok(DihedralContext {
            base: base.clone(),
            group,
            connection: c.to_vec(),
            c0,
            c1,
            h,
            y,
        })
    }
}

/// The 3-coloring for minimal Cayley graphs of generalized dihedral groups.
///
/// `f` is a Dedekind coloring of `Γ/H` pulled back to `Γ`; then
/// `(g,0) ↦ f(g)` and `(g,1) ↦ f(g − y) + 1 mod 3`.
pub fn generalized_dihedral_three_coloring(ctx: &DihedralContext) -> Result<VertexColoring> {
    let (base, group) = (&ctx.base, &ctx.group);
    let m = base.order();
    require_minimal(group, &ctx.connection)?;
    let graph = cayley_graph(group, &ctx.connection)?;

    // (a) H × {0} is an independent set
    let hs = ctx.h.elements();
    for (i, &u) in hs.iter().enumerate() {
        if let Some(&v) = hs[i + 1..].iter().find(|&&v| graph.has_edge(u, v)) {
            return Err(Error::Inconsistency(format!(
                "H is not independent: {} ~ {}",
                group.name(u),
                group.name(v)
            )));
        }
    }

    // (b) the images of C0 minimally generate Γ/H
    let h_base = Subgroup::from_elements(base, hs)?;
    let q = quotient(base, &h_base)?;
    let mut images: Vec<Elem> = ctx.c0.iter().map(|&x| q.projection[x]).collect();
    images.sort_unstable();
    images.dedup();
    let images_ok = images.len() == ctx.c0.len()
        && !images.contains(&0)
        && analyze_genset(&q.group, &images)?.minimal;
    if !images_ok {
        return Err(Error::Inconsistency(
            "C0 does not minimally generate the quotient by H".into(),
        ));
    }

    let f_quot = dedekind_unchecked(&q.group, &images)?.coloring;
    let f = |g: Elem| f_quot.color(q.projection[g]);
    let y = ctx.y - m;
    let colors = (0..group.order())
        .map(|x| {
            if x < m {
                f(x)
            } else {
                (f(base.mul(x - m, base.inv(y))) + 1) % 3
            }
        })
        .collect();
    checked(group, &ctx.connection, colors)
}

/// The 3-coloring for groups whose commutator subgroup lies in the Frattini
/// subgroup (all finite nilpotent groups among them): color `G/Φ(G)` as an
/// abelian group and lift.
pub fn frattini_three_coloring(g: &FiniteGroup, c: &[Elem]) -> Result<VertexColoring> {
    let phi = frattini_subgroup(g)?;
    if !commutator_subgroup(g).is_subset_of(&phi) {
        return Err(Error::CommutatorNotInFrattini);
    }
    require_minimal(g, c)?;
    if let Some(&x) = c.iter().find(|&&x| phi.contains(x)) {
        return Err(Error::Inconsistency(format!(
            "{} lies in the Frattini subgroup",
            g.name(x)
        )));
    }
    let q = quotient(g, &phi)?;
    let mut images: Vec<Elem> = c.iter().map(|&x| q.projection[x]).collect();
    images.sort_unstable();
    images.dedup();
    if images.len() != c.len() || !analyze_genset(&q.group, &images)?.minimal {
        return Err(Error::Inconsistency(
            "the image of C is not a minimal generating set of G/Φ(G)".into(),
        ));
    }
    let quot_coloring = dedekind_unchecked(&q.group, &images)?.coloring;
    let lifted = lift_coloring(g, &phi, &images, &quot_coloring)?;
    checked(g, c, lifted.colors().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chromatic::chromatic_number;
    use crate::genset::enumerate_minimal_generating_sets;
    use crate::graph::{graph_product, ProductKind};
    use crate::group::{catalogue, make_group};
    use proptest::prelude::*;

    fn gens(g: &FiniteGroup, s: &str) -> Vec<Elem> {
        g.parse_elements(s).unwrap()
    }

    fn proper_on(g: &FiniteGroup, c: &[Elem], col: &VertexColoring) -> bool {
        verify_vertex_coloring(&cayley_graph(g, c).unwrap(), col.colors()).unwrap().is_none()
    }

    #[test]
    fn lift_through_trivial_subgroup_is_identity() {
        let z5 = make_group("cyclic:5").unwrap();
        let col = VertexColoring::new(vec![0, 1, 0, 1, 2]);
        let out = lift_coloring(&z5, &Subgroup::trivial(&z5), &[1], &col).unwrap();
        assert_eq!(out, col);
    }

    #[test]
    fn lift_parity_on_z4() {
        let z4 = make_group("cyclic:4").unwrap();
        let n = Subgroup::closure(&z4, &[2]);
        let col = VertexColoring::new(vec![0, 1]);
        let out = lift_coloring(&z4, &n, &[1], &col).unwrap();
        assert_eq!(out.colors(), &[0, 1, 0, 1]);
        assert!(proper_on(&z4, &[1, 3], &out));
    }

    #[test]
    fn lift_rejects_bad_input() {
        let s3 = make_group("sym:3").unwrap();
        let not_normal = Subgroup::closure(&s3, &gens(&s3, "(1 2)"));
        let col = VertexColoring::new(vec![0, 1, 2]);
        assert!(matches!(lift_coloring(&s3, &not_normal, &[1], &col), Err(Error::NotNormal)));
        let z4 = make_group("cyclic:4").unwrap();
        let n = Subgroup::closure(&z4, &[2]);
        let same = VertexColoring::new(vec![0, 0]);
        assert!(matches!(
            lift_coloring(&z4, &n, &[1], &same),
            Err(Error::ImproperColoring(..))
        ));
    }

    #[test]
    fn lift_is_constant_on_cosets_for_q32() {
        let q32 = make_group("dicyclic:32").unwrap();
        let phi = frattini_subgroup(&q32).unwrap();
        let q = quotient(&q32, &phi).unwrap();
        assert_eq!(q.group.order(), 4);
        let qc: Vec<Elem> = vec![1, 2];
        let (_, col) = chromatic_number(&cayley_graph(&q.group, &qc).unwrap(), SolveBudget::default()).unwrap();
        let lifted = lift_coloring(&q32, &phi, &qc, &col).unwrap();
        for block in &q.cosets.blocks {
            assert!(block.iter().all(|&x| lifted.color(x) == lifted.color(block[0])));
        }
        // any connection set whose image lies in the quotient set is properly colored
        let c = gens(&q32, "(1,0),(0,1)");
        let img: Vec<Elem> = c.iter().map(|&x| q.projection[x]).collect();
        let (_, col) = chromatic_number(&cayley_graph(&q.group, &img).unwrap(), SolveBudget::default()).unwrap();
        let lifted = lift_coloring(&q32, &phi, &img, &col).unwrap();
        assert!(proper_on(&q32, &c, &lifted));
    }

    #[test]
    fn schreier_examples() {
        let v4 = make_group("prod:(cyclic:2)x(cyclic:2)").unwrap();
        let out = schreier_product_coloring(&v4, &gens(&v4, "(1,0),(0,1)")).unwrap();
        assert_eq!(out.coloring.num_colors(), 2);
        let z9 = make_group("cyclic:9").unwrap();
        let out = schreier_product_coloring(&z9, &[1]).unwrap();
        assert_eq!(out.coloring.num_colors(), 3);
        assert_eq!(out.factors[0].cosets, 9);

        let g21 = make_group("sdp:7,3,2").unwrap();
        let c = gens(&g21, "(1,0),(0,1)");
        let out = schreier_product_coloring(&g21, &c).unwrap();
        assert!(proper_on(&g21, &c, &out.coloring));
        let max = out.factors.iter().map(|f| f.chi).max().unwrap();
        assert_eq!(out.modulus, max);
        assert!(out.coloring.num_colors() <= max);

        assert!(matches!(schreier_product_coloring(&z9, &[1, 2]), Err(Error::NotMinimal)));
    }

    #[test]
    fn dedekind_examples() {
        let v4 = make_group("prod:(cyclic:2)x(cyclic:2)").unwrap();
        let out = dedekind_three_coloring(&v4, &gens(&v4, "(1,0),(0,1)")).unwrap();
        assert_eq!(out.coloring.num_colors(), 2);
        let z9 = make_group("cyclic:9").unwrap();
        let out = dedekind_three_coloring(&z9, &[1]).unwrap();
        assert_eq!(out.coloring.num_colors(), 3);
        // color 2 sits on the largest coset id
        assert_eq!(out.coloring.color(8), 2);
        let z33 = make_group("prod:(cyclic:3)x(cyclic:3)").unwrap();
        let c = gens(&z33, "(1,0),(0,1)");
        let out = dedekind_three_coloring(&z33, &c).unwrap();
        assert!(out.coloring.num_colors() <= 3 && proper_on(&z33, &c, &out.coloring));
        let q8 = make_group("dicyclic:8").unwrap();
        assert!(dedekind_three_coloring(&q8, &gens(&q8, "(1,0),(0,1)")).is_ok());
        let s3 = make_group("sym:3").unwrap();
        assert!(matches!(
            dedekind_three_coloring(&s3, &gens(&s3, "(1 2),(1 2 3)")),
            Err(Error::NotDedekind)
        ));
        let trivial = make_group("cyclic:1").unwrap();
        assert_eq!(dedekind_three_coloring(&trivial, &[]).unwrap().coloring.num_colors(), 1);
    }

    #[test]
    fn dedekind_factors_are_cycles_on_catalogue() {
        for entry in catalogue() {
            let g = &entry.group;
            if g.order() > 16 || !is_dedekind(g).unwrap() {
                continue;
            }
            for c in enumerate_minimal_generating_sets(g, 4).unwrap() {
                for (_, graph) in schreier_factors(g, &c).unwrap() {
                    let n = graph.n();
                    let cycle_like = (n == 2 && graph.edge_count() == 1)
                        || (n >= 3 && graph.is_connected() && (0..n).all(|v| graph.degree(v) == 2));
                    assert!(cycle_like, "{} {:?}", entry.name, c);
                }
            }
        }
    }

    #[test]
    fn dihedral_examples() {
        let z5 = make_group("cyclic:5").unwrap();
        let z3 = make_group("cyclic:3").unwrap();
        for (base, spec) in [(&z5, "(1,0),(0,1)"), (&z5, "(0,1),(1,1)"), (&z3, "(1,0),(0,1)")] {
            let dih = generalized_dihedral(base).unwrap();
            let c = gens(&dih, spec);
            let ctx = DihedralContext::new(base, &c).unwrap();
            let col = generalized_dihedral_three_coloring(&ctx).unwrap();
            assert!(col.num_colors() <= 3);
            assert!(proper_on(&ctx.group, &c, &col));
        }
        let dih = generalized_dihedral(&z5).unwrap();
        let ctx = DihedralContext::new(&z5, &gens(&dih, "(0,1),(1,1)")).unwrap();
        assert_eq!(ctx.h.len(), 5);
        let ctx = DihedralContext::new(&z5, &gens(&dih, "(1,0),(0,1)")).unwrap();
        assert!(ctx.h.is_trivial());
        assert!(DihedralContext::new(&z5, &gens(&dih, "(1,0)")).is_err());
        let z3dih = generalized_dihedral(&z3).unwrap();
        let prism = cayley_graph(&z3dih, &gens(&z3dih, "(1,0),(0,1)")).unwrap();
        assert_eq!(chromatic_number(&prism, SolveBudget::default()).unwrap().0, 3);
    }

    #[test]
    fn frattini_examples() {
        let q32 = make_group("dicyclic:32").unwrap();
        let c = gens(&q32, "(1,0),(0,1)");
        let col = frattini_three_coloring(&q32, &c).unwrap();
        assert!(col.num_colors() <= 3 && proper_on(&q32, &c, &col));
        let z8 = make_group("cyclic:8").unwrap();
        assert_eq!(frattini_three_coloring(&z8, &[1]).unwrap().num_colors(), 2);
        let q8 = make_group("dicyclic:8").unwrap();
        let c = gens(&q8, "(1,0),(0,1)");
        assert!(proper_on(&q8, &c, &frattini_three_coloring(&q8, &c).unwrap()));
        let s3 = make_group("sym:3").unwrap();
        assert!(matches!(
            frattini_three_coloring(&s3, &gens(&s3, "(1 2),(1 2 3)")),
            Err(Error::CommutatorNotInFrattini)
        ));
        assert!(matches!(frattini_three_coloring(&q32, &gens(&q32, "(1,0),(0,1),(2,0)")), Err(Error::NotMinimal)));
    }

    #[test]
    fn frattini_on_nilpotent_catalogue_groups() {
        for entry in catalogue().into_iter().filter(|e| e.group.order() <= 16) {
            let g = &entry.group;
            let phi = frattini_subgroup(g).unwrap();
            if !commutator_subgroup(g).is_subset_of(&phi) {
                continue;
            }
            for c in enumerate_minimal_generating_sets(g, 4).unwrap().iter().take(20) {
                let col = frattini_three_coloring(g, c).unwrap();
                assert!(col.num_colors() <= 3 && proper_on(g, c, &col), "{}", entry.name);
            }
        }
    }

    proptest! {
        #[test]
        fn sum_mod_k_is_proper_on_products(
            a in 2usize..7, b in 2usize..7, k in 3usize..5,
            shift1 in 0usize..5, shift2 in 0usize..5,
        ) {
            // proper colorings of two cycles with values in 0..k, combined
            let col = |n: usize, shift: usize| -> Vec<usize> {
                let g = Graph::cycle(n.max(3));
                let (_, c) = chromatic_number(&g, SolveBudget::default()).unwrap();
                c.colors().iter().map(|&x| (x + shift) % k).collect()
            };
            let (c1, c2) = (col(a, shift1), col(b, shift2));
            let (n1, n2) = (c1.len(), c2.len());
            let product = graph_product(&Graph::cycle(n1), &Graph::cycle(n2), ProductKind::Cartesian);
            let m1: Vec<usize> = (0..n1 * n2).map(|x| x / n2).collect();
            let m2: Vec<usize> = (0..n1 * n2).map(|x| x % n2).collect();
            let combined = combine(n1 * n2, &[&m1, &m2], &[&c1, &c2], k);
            prop_assert!(verify_vertex_coloring(&product, &combined).unwrap().is_none());
        }
    }
}
