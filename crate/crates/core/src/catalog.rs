//! The seven families of irreducible Hermitian Lie groups, with every
//! derived invariant computed from the Jordan characteristics rather than
//! typed in from tables. The tables then become tests of this module.

use std::fmt;

use serde_json::{json, Value};

use crate::scalars::{rat_int, rational_string, Rational};
use crate::{Error, Result};

/// Group family selector with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// su(r+b, r), r >= 2.
    TypeI { r: u32, b: u32 },
    /// su(d, 1), d >= 2.
    TypeI1 { d: u32 },
    /// so*(2k), k >= 4.
    TypeII { k: u32 },
    /// sp(r, R), r >= 2.
    TypeIII { r: u32 },
    /// so(n, 2), n > 4.
    TypeIV { n: u32 },
    /// e6(-14).
    TypeV,
    /// e7(-25).
    TypeVI,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::TypeI { r, b } => write!(f, "I {r} {b}"),
            Family::TypeI1 { d } => write!(f, "I1 {d}"),
            Family::TypeII { k } => write!(f, "II {k}"),
            Family::TypeIII { r } => write!(f, "III {r}"),
            Family::TypeIV { n } => write!(f, "IV {n}"),
            Family::TypeV => write!(f, "V"),
            Family::TypeVI => write!(f, "VI"),
        }
    }
}

/// Shape of the K-type lattice attached to a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LatticeKind {
    /// Rank-two irreducible projectivized orbit: mu1 >= mu2 >= |l|, equal parity.
    Generic2,
    /// Product of two projective spaces (type I): mu1, mu2 >= |l|, equal parity.
    ProductSU,
    /// Complex projective space, su(d,1): m >= |l|, equal parity.
    RankOne,
    /// sp(r,R): weights (2m, 2l) stored as (m, l), m >= |l|.
    SpDoubled,
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LatticeKind::Generic2 => "generic2",
            LatticeKind::ProductSU => "product-su",
            LatticeKind::RankOne => "rank-one",
            LatticeKind::SpDoubled => "sp-doubled",
        };
        write!(f, "{s}")
    }
}

/// Jordan data of the projectivized orbit. For the rank-two cases this is a
/// single pair (a1, b1); for type I it is the pair of projective factors,
/// each a rank-one space recorded by its dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Vmrt {
    RankTwo { a1: i64, b1: i64 },
    ProductOfLines { dim1: i64, dim2: i64 },
    SingleLine { dim: i64 },
}

/// One catalog entry with every derived numeric invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDatum {
    pub family: Family,
    /// Real rank r of the domain.
    pub rank: i64,
    /// Jordan characteristic (a, b) of the domain.
    pub jordan_a: i64,
    pub jordan_b: i64,
    /// Complex dimension d = r + (a/2) r(r-1) + r b.
    pub dim: i64,
    /// Genus p = 2 + a(r-1) + b.
    pub genus: i64,
    /// Jordan data of the projectivized orbit.
    pub vmrt: Vmrt,
    /// dim V1 = (r-1)a + b.
    pub dim_v1: i64,
    /// Half sum of restricted roots for the ambient group: 1 + (r-1)a + b.
    pub rho_g: i64,
    /// Half sums for the projectivized orbit; rho_g = 1 + rho1 + rho2 holds
    /// in every family (rho2 = 0 for the rank-one lattices).
    pub rho1: i64,
    pub rho2: i64,
    pub lattice: LatticeKind,
}

impl GroupDatum {
    /// Build the catalog entry for a family, checking parameter legality.
    pub fn new(family: Family) -> Result<GroupDatum> {
        let (r, a, b) = match family {
            Family::TypeI { r, b } => {
                if r < 2 {
                    return Err(Error::IllegalParameters(format!(
                        "type I needs r >= 2, got r={r}"
                    )));
                }
                (r as i64, 2, b as i64)
            }
            Family::TypeI1 { d } => {
                if d < 2 {
                    return Err(Error::IllegalParameters(format!(
                        "su(d,1) needs d >= 2, got d={d}"
                    )));
                }
                (1, 2, d as i64 - 1)
            }
            Family::TypeII { k } => {
                if k < 4 {
                    return Err(Error::IllegalParameters(format!(
                        "so*(2k) needs k >= 4, got k={k}"
                    )));
                }
                ((k / 2) as i64, 4, if k % 2 == 0 { 0 } else { 2 })
            }
            Family::TypeIII { r } => {
                if r < 2 {
                    return Err(Error::IllegalParameters(format!(
                        "sp(r,R) needs r >= 2, got r={r}"
                    )));
                }
                (r as i64, 1, 0)
            }
            Family::TypeIV { n } => {
                if n <= 4 {
                    return Err(Error::IllegalParameters(format!(
                        "so(n,2) needs n > 4, got n={n}"
                    )));
                }
                (2, n as i64 - 2, 0)
            }
            Family::TypeV => (2, 6, 4),
            Family::TypeVI => (3, 8, 0),
        };

        let dim = r + a * r * (r - 1) / 2 + r * b;
        let genus = 2 + a * (r - 1) + b;
        let dim_v1 = (r - 1) * a + b;
        let rho_g = 1 + dim_v1;

        let (vmrt, rho1, rho2, lattice) = match family {
            Family::TypeI { r, b } => {
                let (r, b) = (r as i64, b as i64);
                (
                    Vmrt::ProductOfLines {
                        dim1: r + b - 1,
                        dim2: r - 1,
                    },
                    r + b - 1,
                    r - 1,
                    LatticeKind::ProductSU,
                )
            }
            Family::TypeI1 { d } => (
                Vmrt::SingleLine { dim: d as i64 - 1 },
                d as i64 - 1,
                0,
                LatticeKind::RankOne,
            ),
            Family::TypeII { k } => {
                let a1 = 2;
                let b1 = k as i64 - 4;
                (Vmrt::RankTwo { a1, b1 }, 1 + a1 + b1, 1 + b1, LatticeKind::Generic2)
            }
            Family::TypeIII { r } => (
                Vmrt::SingleLine { dim: r as i64 - 1 },
                r as i64 - 1,
                0,
                LatticeKind::SpDoubled,
            ),
            Family::TypeIV { n } => {
                let a1 = n as i64 - 4;
                let b1 = 0;
                (Vmrt::RankTwo { a1, b1 }, 1 + a1 + b1, 1 + b1, LatticeKind::Generic2)
            }
            Family::TypeV => (
                Vmrt::RankTwo { a1: 4, b1: 2 },
                7,
                3,
                LatticeKind::Generic2,
            ),
            Family::TypeVI => (
                Vmrt::RankTwo { a1: 6, b1: 4 },
                11,
                5,
                LatticeKind::Generic2,
            ),
        };

        let datum = GroupDatum {
            family,
            rank: r,
            jordan_a: a,
            jordan_b: b,
            dim,
            genus,
            vmrt,
            dim_v1,
            rho_g,
            rho1,
            rho2,
            lattice,
        };
        debug_assert_eq!(datum.rho_g, 1 + datum.rho1 + datum.rho2);
        Ok(datum)
    }

    /// (a1, b1) of the projectivized orbit; only for the rank-two lattices.
    pub fn vmrt_pair(&self) -> Option<(i64, i64)> {
        match self.vmrt {
            Vmrt::RankTwo { a1, b1 } => Some((a1, b1)),
            _ => None,
        }
    }

    /// Dimension/genus of the dual pair attached to the projectivized orbit.
    fn vmrt_dim_genus(&self) -> Vec<(i64, i64)> {
        match &self.vmrt {
            // Rank-two factor with characteristic (2, a1, b1):
            // dim = 2 + a1 + 2 b1, genus = 2 + a1 + b1.
            Vmrt::RankTwo { a1, b1 } => vec![(2 + a1 + 2 * b1, 2 + a1 + b1)],
            // Projective space P^m: dim m, genus m+1.
            Vmrt::ProductOfLines { dim1, dim2 } => vec![(*dim1, dim1 + 1), (*dim2, dim2 + 1)],
            Vmrt::SingleLine { dim } => vec![(*dim, dim + 1)],
        }
    }

    /// Exact evaluation of the dimension/genus duality sum, which must be 2.
    ///
    /// The summands: p/d for the domain, plus d_i/p_i for each projective
    /// factor (doubled for sp, whose orbit is a real projective space).
    pub fn duality_check(&self) -> DualityReport {
        let mut sum = Rational::new(self.genus.into(), self.dim.into());
        let mut parts = vec![sum.clone()];
        let weight = match self.family {
            Family::TypeIII { .. } => 2,
            _ => 1,
        };
        for (d1, p1) in self.vmrt_dim_genus() {
            let term = Rational::new((weight * d1).into(), p1.into());
            parts.push(term.clone());
            sum += term;
        }
        DualityReport {
            family: self.family,
            parts,
            holds: sum == rat_int(2),
            sum,
        }
    }

    /// The tabulated half-width of the complementary-series window, when the
    /// family has one.
    pub fn complementary_table_value(&self) -> Option<Rational> {
        match self.family {
            Family::TypeI { b, .. } => Some(rat_int(1 + b as i64)),
            Family::TypeI1 { d } => Some(rat_int(d as i64)),
            Family::TypeII { .. } => Some(rat_int(3)),
            Family::TypeIII { r } => {
                if r == 2 {
                    None
                } else {
                    Some(rat_int(r as i64 - 2))
                }
            }
            Family::TypeIV { n } => Some(rat_int(n as i64 - 3)),
            Family::TypeV => Some(rat_int(3)),
            Family::TypeVI => Some(rat_int(5)),
        }
    }

    pub fn to_json(&self) -> Value {
        let vmrt = match &self.vmrt {
            Vmrt::RankTwo { a1, b1 } => json!({"a1": a1, "b1": b1}),
            Vmrt::ProductOfLines { dim1, dim2 } => json!({"factors": [dim1, dim2]}),
            Vmrt::SingleLine { dim } => json!({"factor": dim}),
        };
        json!({
            "family": self.family.to_string(),
            "rank": self.rank,
            "jordan": [self.jordan_a, self.jordan_b],
            "dim": self.dim,
            "genus": self.genus,
            "vmrt": vmrt,
            "dim_v1": self.dim_v1,
            "rho_g": self.rho_g,
            "rho1": self.rho1,
            "rho2": self.rho2,
            "lattice": self.lattice.to_string(),
            "complementary_table": self
                .complementary_table_value()
                .map(|v| rational_string(&v)),
        })
    }
}

/// Outcome of one duality evaluation.
#[derive(Debug, Clone)]
pub struct DualityReport {
    pub family: Family,
    /// The exact summands, domain term first.
    pub parts: Vec<Rational>,
    pub sum: Rational,
    pub holds: bool,
}

/// Parse the CLI group-spec grammar:
/// `I <r> <b>`, `I1 <d>`, `II <k>`, `III <r>`, `IV <n>`, `V`, `VI`.
pub fn parse_group_spec(words: &[String]) -> Result<GroupDatum> {
    let usage = "expected one of: I <r> <b> | I1 <d> | II <k> | III <r> | IV <n> | V | VI";
    let head = words
        .first()
        .ok_or_else(|| Error::Parse(usage.to_string()))?
        .as_str();
    let arg = |i: usize| -> Result<u32> {
        words
            .get(i)
            .ok_or_else(|| Error::Parse(format!("missing parameter; {usage}")))?
            .parse::<u32>()
            .map_err(|_| Error::Parse(format!("bad parameter `{}`", words[i])))
    };
    let expect_len = |n: usize| -> Result<()> {
        if words.len() == n {
            Ok(())
        } else {
            Err(Error::Parse(format!("wrong parameter count; {usage}")))
        }
    };
    let family = match head {
        "I" => {
            expect_len(3)?;
            Family::TypeI {
                r: arg(1)?,
                b: arg(2)?,
            }
        }
        "I1" => {
            expect_len(2)?;
            Family::TypeI1 { d: arg(1)? }
        }
        "II" => {
            expect_len(2)?;
            Family::TypeII { k: arg(1)? }
        }
        "III" => {
            expect_len(2)?;
            Family::TypeIII { r: arg(1)? }
        }
        "IV" => {
            expect_len(2)?;
            Family::TypeIV { n: arg(1)? }
        }
        "V" => {
            expect_len(1)?;
            Family::TypeV
        }
        "VI" => {
            expect_len(1)?;
            Family::TypeVI
        }
        other => return Err(Error::Parse(format!("unknown family `{other}`; {usage}"))),
    };
    GroupDatum::new(family)
}

/// Every legal family instance with all parameters bounded by `max`.
pub fn all_instances(max: u32) -> Vec<GroupDatum> {
    let mut out = Vec::new();
    for r in 2..=max {
        for b in 0..=max {
            out.push(GroupDatum::new(Family::TypeI { r, b }).unwrap());
        }
    }
    for d in 2..=max {
        out.push(GroupDatum::new(Family::TypeI1 { d }).unwrap());
    }
    for k in 4..=max {
        out.push(GroupDatum::new(Family::TypeII { k }).unwrap());
    }
    for r in 2..=max {
        out.push(GroupDatum::new(Family::TypeIII { r }).unwrap());
    }
    for n in 5..=max {
        out.push(GroupDatum::new(Family::TypeIV { n }).unwrap());
    }
    out.push(GroupDatum::new(Family::TypeV).unwrap());
    out.push(GroupDatum::new(Family::TypeVI).unwrap());
    out
}
