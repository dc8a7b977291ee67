//! `r`-torsion of the tropical jacobian as the divisibility locus in
//! `H1 / r·H1`.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{Cycle, DecoratedGraph};
use crate::monoid::{build_gamma_over_r, ExtendedMonoid};

#[derive(Clone, Debug)]
pub struct TorsionClass {
    pub residues: Vec<i64>,
    pub divisible: bool,
    pub chart: ExtendedMonoid,
}

impl TorsionClass {
    pub fn to_json(&self) -> Value {
        json!({
            "residues": self.residues,
            "divisible": self.divisible,
            "chart": self.chart.to_json(),
        })
    }
}

/// All residue tuples in `[0, r)^h`, lexicographic.
pub fn residue_tuples(h: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..h {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..r).map(move |a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
    }
    out
}

/// Every class of `H1 / r·H1`, with lengths read in units of `1/rho` of the
/// base generators.
pub fn torsion_points(g: &DecoratedGraph, r: i64, rho: i64) -> Result<Vec<TorsionClass>> {
    if r < 1 {
        return Err(Error::input("r", "must be positive"));
    }
    if rho != 1 && rho != r {
        return Err(Error::input("root_index", "must be 1 or r"));
    }
    let g = g.with_root_index(rho)?;
    let basis = g.homology_basis()?;
    let tuples = residue_tuples(basis.len(), r);
    tuples
        .into_par_iter()
        .map(|a| {
            let gamma = Cycle::combine(&basis, &a, g.n_edges());
            let mut divisible = true;
            for b in &basis {
                if g.pairing_chart(&gamma, b)?.iter().any(|x| x % r != 0) {
                    divisible = false;
                }
            }
            Ok(TorsionClass {
                residues: a,
                divisible,
                chart: build_gamma_over_r(&g, &gamma, r)?,
            })
        })
        .collect()
}

pub fn compact_type(g: &DecoratedGraph) -> bool {
    g.h1() == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::samples::*;
    use crate::graph::Q;

    #[test]
    fn loop_torsion_matches_multiplication_chart() {
        let g = single_loop();
        for r in [2, 3, 5] {
            let pts = torsion_points(&g, r, 1).unwrap();
            assert_eq!(pts.len(), r as usize);
            for p in &pts {
                assert_eq!(p.divisible, p.residues == vec![0]);
                if p.divisible {
                    assert!(p.chart.is_trivial());
                } else {
                    assert_eq!(p.chart.hilbert_basis, vec![vec![Q::new(1, r)]]);
                }
            }
        }
    }

    #[test]
    fn roots_adjoined_make_everything_divisible() {
        let pts = torsion_points(&single_loop(), 3, 3).unwrap();
        assert!(pts.iter().all(|p| p.divisible));
    }

    #[test]
    fn tree_and_compact_type() {
        let pts = torsion_points(&path(3), 4, 1).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].divisible);
        assert!(compact_type(&path(3)));
        assert!(!compact_type(&single_loop()));
        assert!(!compact_type(&theta()));
    }
}
