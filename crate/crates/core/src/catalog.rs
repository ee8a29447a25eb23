//! Named example arrangements.

use serde::Serialize;

use crate::algebra::rat;
use crate::arrangement::{make_arrangement, Arrangement, Hyperplane};
use crate::error::{Error, Result};

/// Expected classification of a catalog entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expectation {
    pub verdict: &'static str,
    pub exponents: Vec<u32>,
    pub level: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    /// Parameter accepted by the entry (`None` for fixed examples).
    pub param: Option<&'static str>,
    pub description: &'static str,
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "boolean",
        param: Some("l (default 3)"),
        description: "coordinate hyperplanes x_1 ... x_l",
    },
    CatalogEntry {
        name: "tangent",
        param: None,
        description: "xyz(x+y+z)",
    },
    CatalogEntry {
        name: "factor",
        param: None,
        description: "xyz(y-z)(x^2-y^2)(x^2-4y^2)",
    },
    CatalogEntry {
        name: "b3",
        param: None,
        description: "xyz(x^2-y^2)(x^2-z^2)(y^2-z^2)((y-x)^2-z^2)((y+x)^2-z^2)",
    },
    CatalogEntry {
        name: "addnot",
        param: None,
        description: "xyzw(x-y)(y-z)(z-w)(x+w)",
    },
    CatalogEntry {
        name: "shi-b",
        param: Some("l in 1..=3 (default 2)"),
        description: "cone of the Shi arrangement of type B_l, in variables x_1..x_l, z",
    },
];

fn forms(nvars: usize, rows: &[Vec<i64>]) -> Result<Arrangement> {
    make_arrangement(
        nvars,
        rows.iter()
            .map(|r| r.iter().map(|&c| rat(c)).collect())
            .collect(),
    )
}

pub fn boolean(l: usize) -> Result<Arrangement> {
    if l == 0 {
        return Err(Error::NotApplicable("boolean needs l >= 1".into()));
    }
    let rows: Vec<Vec<i64>> = (0..l)
        .map(|i| (0..l).map(|j| i64::from(i == j)).collect())
        .collect();
    forms(l, &rows)
}

pub fn tangent() -> Arrangement {
    forms(
        3,
        &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]],
    )
    .expect("valid")
}

pub fn factor() -> Arrangement {
    forms(
        3,
        &[
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![0, 1, -1],
            vec![1, -1, 0],
            vec![1, 1, 0],
            vec![1, -2, 0],
            vec![1, 2, 0],
        ],
    )
    .expect("valid")
}

pub fn b3() -> Arrangement {
    forms(
        3,
        &[
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, -1, 0],
            vec![1, 1, 0],
            vec![1, 0, -1],
            vec![1, 0, 1],
            vec![0, 1, -1],
            vec![0, 1, 1],
            vec![1, -1, 1],
            vec![1, -1, -1],
            vec![1, 1, -1],
            vec![1, 1, 1],
        ],
    )
    .expect("valid")
}

/// The plane `x + 7y + 53z`, which meets no rank-2 flat of [`b3`].
pub fn b3_generic_plane() -> Hyperplane {
    Hyperplane::from_i64(&[1, 7, 53]).expect("nonzero")
}

pub fn addnot() -> Arrangement {
    forms(
        4,
        &[
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![1, -1, 0, 0],
            vec![0, 1, -1, 0],
            vec![0, 0, 1, -1],
            vec![1, 0, 0, 1],
        ],
    )
    .expect("valid")
}

/// Coned Shi arrangement of type `B_l` in `x_1, …, x_l, z`; `z = 0` is
/// hyperplane 0.
pub fn shi_b(l: usize) -> Result<Arrangement> {
    if l == 0 || l > 3 {
        return Err(Error::NotApplicable(
            "shi-b is limited to 1 <= l <= 3".into(),
        ));
    }
    let n = l + 1;
    let z = l;
    let unit = |i: usize| -> Vec<i64> { (0..n).map(|j| i64::from(i == j)).collect() };
    let combo = |terms: &[(usize, i64)]| -> Vec<i64> {
        let mut v = vec![0; n];
        for &(i, c) in terms {
            v[i] += c;
        }
        v
    };
    let pairs: Vec<(usize, usize)> = (0..l)
        .flat_map(|i| (i + 1..l).map(move |j| (i, j)))
        .collect();
    let mut rows = vec![unit(z)];
    rows.extend((0..l).map(unit));
    rows.extend((0..l).map(|i| combo(&[(i, 1), (z, -1)])));
    for &(i, j) in &pairs {
        rows.push(combo(&[(i, 1), (j, -1)]));
        rows.push(combo(&[(i, 1), (j, 1)]));
    }
    rows.extend(
        pairs
            .iter()
            .map(|&(i, j)| combo(&[(i, 1), (j, -1), (z, -1)])),
    );
    rows.extend(
        pairs
            .iter()
            .map(|&(i, j)| combo(&[(i, 1), (j, 1), (z, -1)])),
    );
    forms(n, &rows)
}

/// Look up `name` or `name:param`.
pub fn catalog(spec: &str) -> Result<Arrangement> {
    let (name, param) = match spec.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => (spec, None),
    };
    let int_param = |default: usize| -> Result<usize> {
        match param {
            None => Ok(default),
            Some(p) => p
                .parse()
                .map_err(|_| Error::UnknownCatalog(spec.to_string())),
        }
    };
    let fixed = |a: Arrangement| -> Result<Arrangement> {
        if param.is_some() {
            Err(Error::UnknownCatalog(spec.to_string()))
        } else {
            Ok(a)
        }
    };
    match name {
        "boolean" => boolean(int_param(3)?),
        "tangent" => fixed(tangent()),
        "factor" => fixed(factor()),
        "b3" => fixed(b3()),
        "addnot" => fixed(addnot()),
        "shi-b" => shi_b(int_param(2)?),
        _ => Err(Error::UnknownCatalog(spec.to_string())),
    }
}

/// Expected classifications of catalog entries, for regression runs.
pub fn expectations() -> Vec<(&'static str, Expectation)> {
    let e = |verdict, exponents: &[u32], level| Expectation {
        verdict,
        exponents: exponents.to_vec(),
        level,
    };
    vec![
        ("boolean:3", e("Free", &[1, 1, 1], None)),
        ("tangent", e("StrictPOG", &[1, 2, 2], Some(2))),
        ("factor", e("Free", &[1, 2, 5], None)),
        ("b3", e("Free", &[1, 5, 7], None)),
        ("addnot", e("NeitherAtBound", &[], None)),
        ("shi-b:1", e("Free", &[1, 2], None)),
        ("shi-b:2", e("Free", &[1, 4, 4], None)),
    ]
}

/// Free catalog arrangements used for sweeps, with their exponents.
pub fn free_catalog() -> Vec<(&'static str, Arrangement, Vec<u32>)> {
    vec![
        ("boolean:3", boolean(3).expect("valid"), vec![1, 1, 1]),
        ("boolean:4", boolean(4).expect("valid"), vec![1, 1, 1, 1]),
        ("factor", factor(), vec![1, 2, 5]),
        ("b3", b3(), vec![1, 5, 7]),
        ("shi-b:2", shi_b(2).expect("valid"), vec![1, 4, 4]),
    ]
}
