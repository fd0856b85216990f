#![allow(dead_code)]

use curveinv::{BiPoly, GaussianRational as Gr};
use proptest::prelude::*;

pub fn coeff() -> impl Strategy<Value = Gr> {
    prop_oneof![
        4 => (-3i64..=3).prop_filter("nonzero", |c| *c != 0).prop_map(Gr::from_int),
        1 => (-2i64..=2, 1i64..=3).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| Gr::from_ratio(n, d)),
        1 => Just(Gr::i()),
    ]
}

/// `a x^p + b y^q` plus up to three mixed terms, so no sample contains an axis.
pub fn germ() -> impl Strategy<Value = BiPoly> {
    (
        (coeff(), 1u32..=4),
        (coeff(), 1u32..=4),
        prop::collection::vec((coeff(), 1u32..=2, 1u32..=2), 0..=3),
    )
        .prop_map(|((a, p), (b, q), mixed)| {
            mixed.into_iter().fold(
                &BiPoly::monomial(a, p, 0) + &BiPoly::monomial(b, 0, q),
                |acc, (c, i, j)| &acc + &BiPoly::monomial(c, i, j),
            )
        })
}

pub fn any_small() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((coeff(), 0u32..=2, 0u32..=2), 1..=3).prop_map(|ts| {
        ts.into_iter()
            .fold(BiPoly::zero(), |acc, (c, i, j)| &acc + &BiPoly::monomial(c, i, j))
    })
}

pub fn one_plus_x() -> BiPoly {
    BiPoly::from_int_terms(&[(1, 0, 0), (1, 1, 0)])
}
