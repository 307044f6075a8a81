//! A fixed list of small groups used by the property suites and `repro`.

use super::{make_group, FiniteGroup, Subgroup};

pub struct CatalogueEntry {
    pub name: String,
    pub group: FiniteGroup,
}

const SPECS: &[&str] = &[
    // abelian, non-cyclic
    "prod:(cyclic:2)x(cyclic:2)",
    "prod:(cyclic:2)x(cyclic:4)",
    "prod:(cyclic:2)x(prod:(cyclic:2)x(cyclic:2))",
    "prod:(cyclic:3)x(cyclic:3)",
    "prod:(cyclic:2)x(cyclic:6)",
    "prod:(cyclic:4)x(cyclic:4)",
    "prod:(cyclic:2)x(cyclic:8)",
    "prod:(cyclic:2)x(prod:(cyclic:2)x(cyclic:4))",
    "prod:(prod:(cyclic:2)x(cyclic:2))x(prod:(cyclic:2)x(cyclic:2))",
    "prod:(cyclic:3)x(cyclic:6)",
    "prod:(cyclic:2)x(cyclic:10)",
    "prod:(cyclic:5)x(cyclic:5)",
    "prod:(cyclic:2)x(cyclic:12)",
    "prod:(cyclic:2)x(prod:(cyclic:2)x(cyclic:6))",
    "prod:(cyclic:3)x(cyclic:9)",
    "prod:(cyclic:2)x(cyclic:14)",
    "prod:(cyclic:2)x(cyclic:16)",
    "prod:(cyclic:4)x(cyclic:8)",
    "prod:(cyclic:2)x(prod:(cyclic:4)x(cyclic:4))",
    "prod:(prod:(cyclic:2)x(cyclic:2))x(cyclic:8)",
    "prod:(prod:(cyclic:2)x(cyclic:2))x(prod:(cyclic:2)x(cyclic:4))",
    "prod:(cyclic:2)x(prod:(prod:(cyclic:2)x(cyclic:2))x(prod:(cyclic:2)x(cyclic:2)))",
    // nonabelian
    "sym:3",
    "sym:4",
    "dicyclic:8",
    "dicyclic:12",
    "dicyclic:16",
    "dicyclic:20",
    "dicyclic:24",
    "dicyclic:28",
    "dicyclic:32",
    "gdih:(prod:(cyclic:2)x(cyclic:4))",
    "gdih:(prod:(cyclic:3)x(cyclic:3))",
    "gdih:(prod:(cyclic:2)x(cyclic:6))",
    "sdp:7,3,2",
    "sdp:5,4,2",
    "sdp:9,3,4",
    "prod:(sym:3)x(cyclic:2)",
    "prod:(sym:3)x(cyclic:3)",
    "prod:(dicyclic:8)x(cyclic:2)",
    "prod:(dicyclic:8)x(cyclic:4)",
    "prod:(dicyclic:8)x(prod:(cyclic:2)x(cyclic:2))",
];

/// Cyclic groups of order 1 to 32, generalized dihedral groups over `Z_3` to
/// `Z_16`, the alternating group `A_4`, and a selection of abelian and
/// nonabelian products, all of order at most 32.
pub fn catalogue() -> Vec<CatalogueEntry> {
    let mut specs: Vec<String> = (1..=32).map(|n| format!("cyclic:{n}")).collect();
    specs.extend((3..=16).map(|n| format!("gdih:(cyclic:{n})")));
    specs.extend(SPECS.iter().map(|s| s.to_string()));
    let mut out: Vec<CatalogueEntry> = specs
        .into_iter()
        .map(|spec| CatalogueEntry {
            group: make_group(&spec).expect("catalogue spec is valid"),
            name: spec,
        })
        .collect();
    out.push(CatalogueEntry {
        name: "alt:4".into(),
        group: alternating_four(),
    });
    out
}

fn alternating_four() -> FiniteGroup {
    let s4 = make_group("sym:4").expect("sym:4");
    let gens = s4.parse_elements("(1 2 3),(2 3 4)").expect("3-cycles");
    s4.subgroup_as_group(&Subgroup::closure(&s4, &gens))
        .expect("A4 is a group")
}
