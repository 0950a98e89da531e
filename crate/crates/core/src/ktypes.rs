//! K-type lattices, admissibility and neighbor enumeration.
//!
//! Depending on the family, a K-type is a triple (mu1, mu2, l) or a pair
//! (m, l); the sp lattice represents weights (2m, 2l) by (m, l). Transition
//! candidates shift each weight coordinate by +-1 and the line parameter by
//! +-1; only candidates that land on the lattice survive.

use std::fmt;

use serde_json::{json, Value};

use crate::catalog::{GroupDatum, LatticeKind};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KType {
    RankTwo { mu1: i64, mu2: i64, l: i64 },
    RankOne { m: i64, l: i64 },
    /// Stored as (m, l); the concrete weights are (2m, 2l).
    SpDoubled { m: i64, l: i64 },
}

impl KType {
    pub fn line_parameter(&self) -> i64 {
        match *self {
            KType::RankTwo { l, .. } | KType::RankOne { l, .. } | KType::SpDoubled { l, .. } => l,
        }
    }

    /// Largest weight coordinate, used for truncation bounds.
    pub fn magnitude(&self) -> i64 {
        match *self {
            KType::RankTwo { mu1, mu2, l } => mu1.max(mu2).max(l.abs()),
            KType::RankOne { m, l } | KType::SpDoubled { m, l } => m.max(l.abs()),
        }
    }

    pub fn to_json(&self) -> Value {
        match *self {
            KType::RankTwo { mu1, mu2, l } => json!({"mu": [mu1, mu2], "l": l}),
            KType::RankOne { m, l } => json!({"m": m, "l": l}),
            KType::SpDoubled { m, l } => json!({"m": m, "l": l, "weights": [2 * m, 2 * l]}),
        }
    }
}

impl fmt::Display for KType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            KType::RankTwo { mu1, mu2, l } => write!(f, "({mu1},{mu2};{l})"),
            KType::RankOne { m, l } => write!(f, "({m};{l})"),
            KType::SpDoubled { m, l } => write!(f, "({m};{l})x2"),
        }
    }
}

/// One candidate transition between neighboring K-types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub source: KType,
    pub target: KType,
    /// Sign pattern; `sigma[1]` is unused (0) for the rank-one lattices.
    pub sigma: [i8; 2],
    pub lshift: i8,
}

impl Edge {
    /// The same edge traversed backwards.
    pub fn reversed(&self) -> Edge {
        Edge {
            source: self.target,
            target: self.source,
            sigma: [-self.sigma[0], -self.sigma[1]],
            lshift: -self.lshift,
        }
    }

    pub fn sigma_label(&self) -> String {
        let c = |s: i8| if s >= 0 { '+' } else { '-' };
        if self.sigma[1] == 0 {
            c(self.sigma[0]).to_string()
        } else {
            format!("{}{}", c(self.sigma[0]), c(self.sigma[1]))
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {} [{}, l{}]",
            self.source,
            self.target,
            self.sigma_label(),
            if self.lshift >= 0 { "+1" } else { "-1" }
        )
    }
}

fn kind_of(t: &KType) -> &'static str {
    match t {
        KType::RankTwo { .. } => "rank-two",
        KType::RankOne { .. } => "rank-one",
        KType::SpDoubled { .. } => "sp-doubled",
    }
}

/// Does the K-type kind match the group's lattice kind?
pub fn kind_matches(g: &GroupDatum, t: &KType) -> bool {
    matches!(
        (g.lattice, t),
        (LatticeKind::Generic2, KType::RankTwo { .. })
            | (LatticeKind::ProductSU, KType::RankTwo { .. })
            | (LatticeKind::RankOne, KType::RankOne { .. })
            | (LatticeKind::SpDoubled, KType::SpDoubled { .. })
    )
}

/// Lattice membership test.
pub fn is_admissible(g: &GroupDatum, t: &KType) -> Result<bool> {
    if !kind_matches(g, t) {
        return Err(Error::KindMismatch(format!(
            "{} K-type for a {} lattice",
            kind_of(t),
            g.lattice
        )));
    }
    Ok(match (*t, g.lattice) {
        (KType::RankTwo { mu1, mu2, l }, LatticeKind::Generic2) => {
            mu1 >= mu2 && mu2 >= l.abs() && same_parity(mu1, mu2) && same_parity(mu2, l)
        }
        (KType::RankTwo { mu1, mu2, l }, LatticeKind::ProductSU) => {
            mu1 >= l.abs() && mu2 >= l.abs() && same_parity(mu1, mu2) && same_parity(mu2, l)
        }
        (KType::RankOne { m, l }, _) => m >= l.abs() && same_parity(m, l),
        (KType::SpDoubled { m, l }, _) => m >= l.abs(),
        _ => unreachable!(),
    })
}

fn same_parity(a: i64, b: i64) -> bool {
    (a - b) % 2 == 0
}

/// The spherical K-type (all indices zero).
pub fn spherical(g: &GroupDatum) -> KType {
    match g.lattice {
        LatticeKind::Generic2 | LatticeKind::ProductSU => KType::RankTwo { mu1: 0, mu2: 0, l: 0 },
        LatticeKind::RankOne => KType::RankOne { m: 0, l: 0 },
        LatticeKind::SpDoubled => KType::SpDoubled { m: 0, l: 0 },
    }
}

fn shifted(t: &KType, sigma: [i8; 2], lshift: i8) -> KType {
    match *t {
        KType::RankTwo { mu1, mu2, l } => KType::RankTwo {
            mu1: mu1 + sigma[0] as i64,
            mu2: mu2 + sigma[1] as i64,
            l: l + lshift as i64,
        },
        KType::RankOne { m, l } => KType::RankOne {
            m: m + sigma[0] as i64,
            l: l + lshift as i64,
        },
        KType::SpDoubled { m, l } => KType::SpDoubled {
            m: m + sigma[0] as i64,
            l: l + lshift as i64,
        },
    }
}

/// All sign/line-shift candidates of the lattice, in the deterministic
/// order (sigma1, sigma2, lshift) with +1 before -1.
pub fn candidates(g: &GroupDatum) -> Vec<([i8; 2], i8)> {
    let mut out = Vec::new();
    match g.lattice {
        LatticeKind::Generic2 | LatticeKind::ProductSU => {
            for s1 in [1i8, -1] {
                for s2 in [1i8, -1] {
                    for ls in [1i8, -1] {
                        out.push(([s1, s2], ls));
                    }
                }
            }
        }
        LatticeKind::RankOne | LatticeKind::SpDoubled => {
            for s in [1i8, -1] {
                for ls in [1i8, -1] {
                    out.push(([s, 0], ls));
                }
            }
        }
    }
    out
}

/// Admissible transitions out of `s`.
pub fn neighbors(g: &GroupDatum, s: &KType) -> Result<Vec<Edge>> {
    if !is_admissible(g, s)? {
        return Err(Error::InadmissibleTarget(format!("source {s} not on the lattice")));
    }
    let mut out = Vec::new();
    for (sigma, lshift) in candidates(g) {
        let target = shifted(s, sigma, lshift);
        if is_admissible(g, &target)? {
            out.push(Edge {
                source: *s,
                target,
                sigma,
                lshift,
            });
        }
    }
    Ok(out)
}

/// All admissible K-types with every weight coordinate and |l| bounded by
/// `bound`, in lexicographic order.
pub fn enumerate(g: &GroupDatum, bound: i64) -> Vec<KType> {
    let mut out = Vec::new();
    match g.lattice {
        LatticeKind::Generic2 | LatticeKind::ProductSU => {
            for mu1 in 0..=bound {
                for mu2 in 0..=bound {
                    for l in -bound..=bound {
                        let t = KType::RankTwo { mu1, mu2, l };
                        if is_admissible(g, &t).unwrap() {
                            out.push(t);
                        }
                    }
                }
            }
        }
        LatticeKind::RankOne => {
            for m in 0..=bound {
                for l in -m..=m {
                    let t = KType::RankOne { m, l };
                    if is_admissible(g, &t).unwrap() {
                        out.push(t);
                    }
                }
            }
        }
        LatticeKind::SpDoubled => {
            for m in 0..=bound {
                for l in -m..=m {
                    out.push(KType::SpDoubled { m, l });
                }
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Family;

    fn datum(f: Family) -> GroupDatum {
        GroupDatum::new(f).unwrap()
    }

    #[test]
    fn admissibility_per_lattice() {
        let iv6 = datum(Family::TypeIV { n: 6 });
        assert!(is_admissible(&iv6, &KType::RankTwo { mu1: 3, mu2: 1, l: 1 }).unwrap());
        // parity violation
        assert!(!is_admissible(&iv6, &KType::RankTwo { mu1: 3, mu2: 2, l: 1 }).unwrap());
        // ordering required for the irreducible rank-two lattice...
        assert!(!is_admissible(&iv6, &KType::RankTwo { mu1: 1, mu2: 3, l: 1 }).unwrap());
        // ...but not for the product lattice
        let i21 = datum(Family::TypeI { r: 2, b: 1 });
        assert!(is_admissible(&i21, &KType::RankTwo { mu1: 1, mu2: 3, l: 1 }).unwrap());
        // kind mismatch is an error, not false
        assert!(is_admissible(&iv6, &KType::RankOne { m: 1, l: 1 }).is_err());
    }

    #[test]
    fn neighbors_of_spherical() {
        let iv6 = datum(Family::TypeIV { n: 6 });
        let edges = neighbors(&iv6, &spherical(&iv6)).unwrap();
        let targets: Vec<_> = edges.iter().map(|e| e.target).collect();
        assert_eq!(
            targets,
            vec![
                KType::RankTwo { mu1: 1, mu2: 1, l: 1 },
                KType::RankTwo { mu1: 1, mu2: 1, l: -1 },
            ]
        );
        assert!(edges.iter().all(|e| e.sigma == [1, 1]));
    }

    #[test]
    fn neighbors_rank_one() {
        let su3 = datum(Family::TypeI1 { d: 3 });
        let edges = neighbors(&su3, &KType::RankOne { m: 0, l: 0 }).unwrap();
        let targets: Vec<_> = edges.iter().map(|e| e.target).collect();
        assert_eq!(
            targets,
            vec![KType::RankOne { m: 1, l: 1 }, KType::RankOne { m: 1, l: -1 }]
        );
    }

    #[test]
    fn neighbors_sp() {
        let sp2 = datum(Family::TypeIII { r: 2 });
        let edges = neighbors(&sp2, &KType::SpDoubled { m: 1, l: 1 }).unwrap();
        let targets: Vec<_> = edges.iter().map(|e| e.target).collect();
        assert_eq!(
            targets,
            vec![
                KType::SpDoubled { m: 2, l: 2 },
                KType::SpDoubled { m: 2, l: 0 },
                KType::SpDoubled { m: 0, l: 0 },
            ]
        );
        // (0, 2) is excluded because m >= |l| fails.
        assert!(!targets.contains(&KType::SpDoubled { m: 0, l: 2 }));
    }

    #[test]
    fn enumerate_small_bounds() {
        let iv6 = datum(Family::TypeIV { n: 6 });
        assert_eq!(
            enumerate(&iv6, 1),
            vec![
                KType::RankTwo { mu1: 0, mu2: 0, l: 0 },
                KType::RankTwo { mu1: 1, mu2: 1, l: -1 },
                KType::RankTwo { mu1: 1, mu2: 1, l: 1 },
            ]
        );
        for g in [
            datum(Family::TypeI { r: 2, b: 0 }),
            datum(Family::TypeI1 { d: 4 }),
            datum(Family::TypeIII { r: 3 }),
        ] {
            assert_eq!(enumerate(&g, 0), vec![spherical(&g)]);
        }
        let i20 = datum(Family::TypeI { r: 2, b: 0 });
        let ts = enumerate(&i20, 1);
        assert!(ts.contains(&KType::RankTwo { mu1: 1, mu2: 1, l: 1 }));
        assert!(ts.contains(&KType::RankTwo { mu1: 1, mu2: 1, l: -1 }));
        assert!(!ts.contains(&KType::RankTwo { mu1: 1, mu2: 0, l: 0 }));
    }

    #[test]
    fn raising_edge_always_admissible() {
        // The (+,+)/l+1 target of an admissible K-type is always admissible,
        // so the identity-sum expansion is never vacuous.
        for f in [
            Family::TypeIV { n: 6 },
            Family::TypeV,
            Family::TypeI { r: 3, b: 2 },
        ] {
            let g = datum(f);
            for t in enumerate(&g, 6) {
                let edges = neighbors(&g, &t).unwrap();
                assert!(
                    edges.iter().any(|e| e.sigma == [1, 1] && e.lshift == 1),
                    "{f:?} {t}"
                );
            }
        }
        for f in [Family::TypeI1 { d: 3 }, Family::TypeIII { r: 2 }] {
            let g = datum(f);
            for t in enumerate(&g, 6) {
                let edges = neighbors(&g, &t).unwrap();
                assert!(edges.iter().any(|e| e.sigma[0] == 1 && e.lshift == 1));
            }
        }
    }

    #[test]
    fn neighbor_relation_is_symmetric() {
        for f in [
            Family::TypeIV { n: 7 },
            Family::TypeI { r: 2, b: 1 },
            Family::TypeI1 { d: 3 },
            Family::TypeIII { r: 3 },
        ] {
            let g = datum(f);
            for t in enumerate(&g, 5) {
                for e in neighbors(&g, &t).unwrap() {
                    let back = neighbors(&g, &e.target).unwrap();
                    assert!(back.contains(&e.reversed()), "{f:?}: {e}");
                }
            }
        }
    }

    #[test]
    fn enumeration_is_edge_closed() {
        let g = datum(Family::TypeVI);
        let bound = 6;
        let nodes = enumerate(&g, bound);
        for t in &nodes {
            if t.magnitude() <= bound - 1 {
                for e in neighbors(&g, t).unwrap() {
                    assert!(nodes.contains(&e.target), "{e}");
                }
            }
        }
    }
}
