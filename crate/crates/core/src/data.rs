//! Triangulations bundled with the crate.

use crate::catalog::CatalogEntry;
use crate::complex::SurfaceComplex;
use crate::construct::{certify_punctured, SupportingPunctured};
use crate::format::parse_tri;

/// Minimal triangulations of the torus with 7 to 10 vertices, by name.
pub const CATALOG_FILES: &[(&str, &str)] = &[
    (
        "torus-n07-01",
        include_str!("../data/catalog/torus-n07-01.tri"),
    ),
    (
        "torus-n08-01",
        include_str!("../data/catalog/torus-n08-01.tri"),
    ),
    (
        "torus-n08-02",
        include_str!("../data/catalog/torus-n08-02.tri"),
    ),
    (
        "torus-n08-03",
        include_str!("../data/catalog/torus-n08-03.tri"),
    ),
    (
        "torus-n08-04",
        include_str!("../data/catalog/torus-n08-04.tri"),
    ),
    (
        "torus-n09-01",
        include_str!("../data/catalog/torus-n09-01.tri"),
    ),
    (
        "torus-n09-02",
        include_str!("../data/catalog/torus-n09-02.tri"),
    ),
    (
        "torus-n09-03",
        include_str!("../data/catalog/torus-n09-03.tri"),
    ),
    (
        "torus-n09-04",
        include_str!("../data/catalog/torus-n09-04.tri"),
    ),
    (
        "torus-n09-05",
        include_str!("../data/catalog/torus-n09-05.tri"),
    ),
    (
        "torus-n09-06",
        include_str!("../data/catalog/torus-n09-06.tri"),
    ),
    (
        "torus-n09-07",
        include_str!("../data/catalog/torus-n09-07.tri"),
    ),
    (
        "torus-n09-08",
        include_str!("../data/catalog/torus-n09-08.tri"),
    ),
    (
        "torus-n09-09",
        include_str!("../data/catalog/torus-n09-09.tri"),
    ),
    (
        "torus-n09-10",
        include_str!("../data/catalog/torus-n09-10.tri"),
    ),
    (
        "torus-n09-11",
        include_str!("../data/catalog/torus-n09-11.tri"),
    ),
    (
        "torus-n09-12",
        include_str!("../data/catalog/torus-n09-12.tri"),
    ),
    (
        "torus-n09-13",
        include_str!("../data/catalog/torus-n09-13.tri"),
    ),
    (
        "torus-n09-14",
        include_str!("../data/catalog/torus-n09-14.tri"),
    ),
    (
        "torus-n09-15",
        include_str!("../data/catalog/torus-n09-15.tri"),
    ),
    (
        "torus-n10-01",
        include_str!("../data/catalog/torus-n10-01.tri"),
    ),
];

pub const CONNECTOR_TORUS: &str = include_str!("../data/complexes/connector-torus.tri");
pub const CONNECTOR_PUNCTURED: &str = include_str!("../data/complexes/connector-punctured.tri");
pub const ONE_HOLE_TORUS: &str = include_str!("../data/complexes/one-hole-torus.tri");

fn parse_bundled(name: &str, text: &str) -> SurfaceComplex {
    parse_tri(text).unwrap_or_else(|e| panic!("bundled file {name} is invalid: {e}"))
}

/// The bundled catalog, in name order.
pub fn catalog() -> Vec<CatalogEntry> {
    CATALOG_FILES
        .iter()
        .map(|&(name, text)| CatalogEntry {
            name: name.to_string(),
            complex: parse_bundled(name, text),
            source: format!("bundled:{name}"),
        })
        .collect()
}

pub fn catalog_entry(name: &str) -> Option<SurfaceComplex> {
    CATALOG_FILES
        .iter()
        .find(|&&(n, _)| n == name)
        .map(|&(n, text)| parse_bundled(n, text))
}

/// The closed 8-vertex torus behind the default connector, with labels
/// `u, v, w, ut, vt, wt, x` and its two expandable cycles marked.
pub fn connector_torus() -> SurfaceComplex {
    parse_bundled("connector-torus", CONNECTOR_TORUS)
}

/// The default connector: [`connector_torus`] with faces `{u,v,w}` and
/// `{ut,vt,wt}` removed, certified.
pub fn default_connector() -> SupportingPunctured {
    certify_punctured(parse_bundled("connector-punctured", CONNECTOR_PUNCTURED))
        .expect("bundled connector has a unique satisfying pair")
}

/// An 8-vertex torus with one hole; its satisfying states have energies
/// -8 and -6.
pub fn one_hole_torus() -> SurfaceComplex {
    parse_bundled("one-hole-torus", ONE_HOLE_TORUS)
}
