//! Small defining graphs used throughout the tests and the demo.

use crate::defgraph::DefiningGraph;

macro_rules! fixture {
    ($($name:ident => $file:literal),* $(,)?) => {
        $(
            pub fn $name() -> DefiningGraph {
                DefiningGraph::parse(include_str!(concat!("../fixtures/", $file)))
                    .expect(concat!("fixture ", $file))
            }
        )*

        /// Every fixture by file stem.
        pub fn all() -> Vec<(&'static str, DefiningGraph)> {
            vec![$((stringify!($name), $name())),*]
        }

        /// Raw text of a fixture file.
        pub fn text(name: &str) -> Option<&'static str> {
            match name {
                $(stringify!($name) => Some(include_str!(concat!("../fixtures/", $file))),)*
                _ => None,
            }
        }
    };
}

fixture! {
    k2 => "k2.graph",
    p3 => "p3.graph",
    p4 => "p4.graph",
    delta => "delta.graph",
    c4 => "c4.graph",
    c5 => "c5.graph",
    k4_minus_edge => "k4_minus_edge.graph",
    triangle_pendant => "triangle_pendant.graph",
    one_ended => "one_ended.graph",
    dihedral3 => "dihedral3.graph",
    free2 => "free2.graph",
    tree7 => "tree7.graph",
    triangle_mixed => "triangle_mixed.graph",
}
