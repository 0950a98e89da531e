//! Derived representation-theoretic analysis over the transition graph:
//! reducibility and intertwining predicates, the complementary-series scan,
//! Schur proportionality constants, unitarizable K-type subsets, and
//! strongly connected component candidates.
//!
//! Every conclusion drawn from the graph assumes multiplicity one of each
//! target K-type in the relevant tensor product; the reports say so.

use std::collections::{BTreeMap, VecDeque};

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::catalog::{GroupDatum, LatticeKind};
use crate::coeffs::{self, EpsilonReading, TransitionCoefficient};
use crate::disk;
use crate::ktypes::{self, Edge, KType};
use crate::scalars::{rat_int, rational_string, Rational};
use crate::{Error, Result};

/// Caveat string attached to every graph-level report.
pub const MULTIPLICITY_CAVEAT: &str =
    "conclusions assume multiplicity one of each target K-type in the tensor product";

/// One directed edge of the assembled graph with its exact weight.
#[derive(Debug, Clone)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub edge: Edge,
    pub coeff: TransitionCoefficient,
    pub weight: Rational,
}

/// The weighted K-type graph at a fixed induction parameter.
#[derive(Debug, Clone)]
pub struct KTypeGraph {
    pub group: GroupDatum,
    pub nu: Rational,
    pub bound: i64,
    pub nodes: Vec<KType>,
    pub edges: Vec<GraphEdge>,
}

impl KTypeGraph {
    pub fn build(g: &GroupDatum, nu: &Rational, bound: i64) -> Result<KTypeGraph> {
        Self::build_with(g, nu, bound, EpsilonReading::default())
    }

    pub fn build_with(
        g: &GroupDatum,
        nu: &Rational,
        bound: i64,
        reading: EpsilonReading,
    ) -> Result<KTypeGraph> {
        let nodes = ktypes::enumerate(g, bound);
        let index: BTreeMap<KType, usize> =
            nodes.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        let mut edges = Vec::new();
        for (from, t) in nodes.iter().enumerate() {
            for e in ktypes::neighbors(g, t)? {
                if let Some(&to) = index.get(&e.target) {
                    let coeff = coeffs::transition_coefficient_with(g, &e, reading)?;
                    let weight = coeff.value(nu);
                    edges.push(GraphEdge {
                        from,
                        to,
                        edge: e,
                        coeff,
                        weight,
                    });
                }
            }
        }
        Ok(KTypeGraph {
            group: g.clone(),
            nu: nu.clone(),
            bound,
            nodes,
            edges,
        })
    }

    pub fn node_index(&self, t: &KType) -> Option<usize> {
        self.nodes.binary_search(t).ok()
    }

}

// ---------------------------------------------------------------------------
// Reducibility and intertwining
// ---------------------------------------------------------------------------

/// Reducibility verdict; for the rank-one lattices only zero-locus
/// candidates are certified.
#[derive(Debug, Clone)]
pub struct ReducibilityReport {
    pub nu: Rational,
    pub verdict: bool,
    pub label: String,
    pub witness: Option<Edge>,
}

impl ReducibilityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "nu": rational_string(&self.nu),
            "verdict": self.verdict,
            "kind": self.label,
            "witness": self.witness.as_ref().map(|e| e.to_string()),
        })
    }
}

/// Reducibility predicate for the rank-two lattices; candidate reduction
/// points (zero locus of an admissible edge factor) for the rank-one ones.
pub fn reducibility(g: &GroupDatum, nu: &Rational) -> Result<ReducibilityReport> {
    match g.lattice {
        LatticeKind::Generic2 | LatticeKind::ProductSU => {
            let even_integer = nu.is_integer() && (nu.numer() % 2u8) == 0.into();
            let beyond = nu >= &rat_int(2 * g.rho1 + 2) || nu <= &rat_int(2 * g.rho2 - 2);
            Ok(ReducibilityReport {
                nu: nu.clone(),
                verdict: even_integer && beyond,
                label: "even-integer window".into(),
                witness: None,
            })
        }
        LatticeKind::RankOne | LatticeKind::SpDoubled => {
            // Scan the zero locus of the affine factors over admissible
            // sources; a vanishing factor marks a candidate point whether or
            // not the shifted target stays on the lattice, so this is a
            // superset of the true reduction set and is labeled as such.
            let reach = nu.abs().ceil().to_integer();
            let reach = i64::try_from(&reach).unwrap_or(i64::MAX / 4);
            let bound = reach.abs() + 2 * g.rho_g + 4;
            let mut witness = None;
            'outer: for s in ktypes::enumerate(g, bound) {
                for (sigma, lshift) in ktypes::candidates(g) {
                    let aff = coeffs::affine_factor(g, &s, sigma, lshift)?;
                    if aff.eval(nu).is_zero() {
                        witness = Some(Edge {
                            source: s,
                            target: s, // formula zero; target may be off-lattice
                            sigma,
                            lshift,
                        });
                        break 'outer;
                    }
                }
            }
            Ok(ReducibilityReport {
                nu: nu.clone(),
                verdict: witness.is_some(),
                label: "candidate reduction point (affine zero locus, superset)".into(),
                witness,
            })
        }
    }
}

/// The intertwining-equivalence predicate between two parameters.
pub fn intertwining_equivalent(g: &GroupDatum, nu: &Rational, nu2: &Rational) -> bool {
    nu == nu2 || nu + nu2 == rat_int(2 * g.rho_g)
}

// ---------------------------------------------------------------------------
// Complementary-series scan
// ---------------------------------------------------------------------------

/// One forward/reverse edge pair of the scan with its constraint data.
#[derive(Debug, Clone)]
pub struct ScanPair {
    pub edge: Edge,
    /// Distance from the window center to the zero of the forward factor
    /// (equal, up to sign, to the reverse distance by the pairing identity).
    pub zero_distance: Rational,
}

/// Result of the complementary-series scan.
#[derive(Debug, Clone)]
pub struct ComplementaryReport {
    pub family: String,
    pub bound: i64,
    /// Infimum of |zero distance| over the sign-changing pairs.
    pub computed: Option<Rational>,
    pub binding_edge: Option<Edge>,
    /// Pairs whose product is a perfect square centered at rho_g: these never
    /// change sign and, read strictly, empty the window. Reported, and they
    /// satisfy a table value of "none".
    pub degenerate_pairs: Vec<ScanPair>,
    pub table: Option<Rational>,
    pub agrees: bool,
}

impl ComplementaryReport {
    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family,
            "bound": self.bound,
            "computed": self.computed.as_ref().map(rational_string),
            "table": self.table.as_ref().map(rational_string),
            "agrees": self.agrees,
            "binding_edge": self.binding_edge.as_ref().map(|e| e.to_string()),
            "sign_definite_pairs": self.degenerate_pairs.iter().map(|p| json!({
                "edge": p.edge.to_string(),
            })).collect::<Vec<_>>(),
            "caveat": MULTIPLICITY_CAVEAT,
        })
    }
}

/// Scan all forward/reverse edge pairs up to the bound. Each pair with
/// zeros at rho_g +- Z constrains the window by delta^2 < Z^2; pairs with
/// both zeros at the center (Z = 0) are sign-definite and are reported
/// separately. For the doubled lattice the weight-preserving transitions
/// found by the disk oracle are included among the sign-definite pairs.
pub fn complementary_scan(g: &GroupDatum, bound: i64) -> Result<ComplementaryReport> {
    let mut best: Option<(Rational, Edge)> = None;
    let mut degenerate = Vec::new();
    let rho_g = rat_int(g.rho_g);

    for s in ktypes::enumerate(g, bound) {
        for e in ktypes::neighbors(g, &s)? {
            if e.target < e.source {
                continue; // count each unordered pair once
            }
            let fwd = coeffs::affine_factor(g, &e.source, e.sigma, e.lshift)?;
            let rev_e = e.reversed();
            let rev = coeffs::affine_factor(g, &rev_e.source, rev_e.sigma, rev_e.lshift)?;
            // pairing identity: intercepts sum to -2 rho_g
            debug_assert_eq!(
                &fwd.intercept + &rev.intercept,
                rat_int(-2 * g.rho_g),
                "{e}"
            );
            let z = &rho_g + &fwd.intercept;
            if z.is_zero() {
                degenerate.push(ScanPair {
                    edge: e,
                    zero_distance: z,
                });
            } else {
                let z = z.abs();
                if best.as_ref().map(|(b, _)| &z < b).unwrap_or(true) {
                    best = Some((z, e));
                }
            }
        }
    }

    // Weight-preserving transitions of the doubled lattice: the exact
    // expansion produces components outside the four-candidate set, all
    // self-paired at the center.
    if g.lattice == LatticeKind::SpDoubled {
        for s in ktypes::enumerate(g, bound) {
            let expansion = disk::xi_expansion(g, &s)?;
            let edges = ktypes::neighbors(g, &s)?;
            for comp in expansion.components {
                if edges.iter().any(|e| e.target == comp.target) || comp.target < s {
                    continue;
                }
                if comp.slope.is_zero() {
                    continue;
                }
                let z = &rho_g + &comp.intercept().expect("nonzero slope");
                if z.is_zero() {
                    degenerate.push(ScanPair {
                        edge: Edge {
                            source: s,
                            target: comp.target,
                            sigma: [0, 0],
                            lshift: if comp.target.line_parameter() > s.line_parameter() {
                                1
                            } else {
                                -1
                            },
                        },
                        zero_distance: z,
                    });
                }
            }
        }
    }

    let table = g.complementary_table_value();
    let computed = best.as_ref().map(|(z, _)| z.clone());
    let agrees = match (&table, &computed) {
        // An empty table entry is confirmed by a sign-definite obstruction.
        (None, _) => !degenerate.is_empty(),
        (Some(p), Some(c)) => p == c,
        (Some(_), None) => false,
    };
    Ok(ComplementaryReport {
        family: g.family.to_string(),
        bound,
        computed,
        binding_edge: best.map(|(_, e)| e),
        degenerate_pairs: degenerate,
        table,
        agrees,
    })
}

/// Scan at `bound`, re-scan at `bound + 2`, and fail if the verdict moved.
pub fn complementary_scan_stable(g: &GroupDatum, bound: i64) -> Result<ComplementaryReport> {
    let a = complementary_scan(g, bound)?;
    let b = complementary_scan(g, bound + 2)?;
    if a.computed != b.computed || a.degenerate_pairs.is_empty() != b.degenerate_pairs.is_empty() {
        return Err(Error::UnstableBound(format!(
            "{}: bound {bound} gives {:?}, bound {} gives {:?}",
            g.family,
            a.computed.as_ref().map(rational_string),
            bound + 2,
            b.computed.as_ref().map(rational_string)
        )));
    }
    Ok(a)
}

// ---------------------------------------------------------------------------
// Schur proportionality constants
// ---------------------------------------------------------------------------

/// Schur constants propagated from the spherical K-type.
#[derive(Debug, Clone)]
pub struct SchurTable {
    pub nu: Rational,
    pub bound: i64,
    pub constants: BTreeMap<KType, Rational>,
    /// Edges cut because a weight vanished in one of the two directions.
    pub cut_edges: Vec<Edge>,
    /// Nodes not reachable from the spherical K-type over uncut edges.
    pub unreachable: Vec<KType>,
    pub path_consistent: bool,
    pub inconsistencies: Vec<String>,
    pub all_positive: bool,
    pub negative_nodes: Vec<KType>,
}

impl SchurTable {
    pub fn to_json(&self) -> Value {
        json!({
            "nu": rational_string(&self.nu),
            "bound": self.bound,
            "path_consistent": self.path_consistent,
            "all_positive": self.all_positive,
            "cut_edges": self.cut_edges.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "unreachable": self.unreachable.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "negative": self.negative_nodes.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "constants": self.constants.iter()
                .map(|(t, v)| (t.to_string(), Value::String(rational_string(v))))
                .collect::<serde_json::Map<String, Value>>(),
            "caveat": MULTIPLICITY_CAVEAT,
        })
    }
}

/// Propagate the proportionality constants along a spanning tree of the
/// nonzero-weight graph and verify exact consistency on every other edge.
pub fn schur_constants(g: &GroupDatum, nu: &Rational, bound: i64) -> Result<SchurTable> {
    let graph = KTypeGraph::build(g, nu, bound)?;
    let n = graph.nodes.len();
    // adjacency with both directional weights
    let mut weights: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for e in &graph.edges {
        weights.insert((e.from, e.to), e.weight.clone());
    }
    let mut cut_edges = Vec::new();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in &graph.edges {
        let fwd_zero = e.weight.is_zero();
        let rev_zero = weights
            .get(&(e.to, e.from))
            .map(|w| w.is_zero())
            .unwrap_or(true);
        if fwd_zero || rev_zero {
            if e.from < e.to {
                cut_edges.push(e.edge.clone());
            }
            continue;
        }
        adj[e.from].push(e.to);
    }

    let start = graph
        .node_index(&ktypes::spherical(g))
        .expect("spherical K-type is inside every bound");
    let mut constants: Vec<Option<Rational>> = vec![None; n];
    constants[start] = Some(rat_int(1));
    let mut queue = VecDeque::from([start]);
    let mut inconsistencies = Vec::new();
    while let Some(u) = queue.pop_front() {
        let su = constants[u].clone().expect("visited nodes have constants");
        for &v in &adj[u] {
            // forward weight u->v, reverse v->u
            let a_f = weights[&(u, v)].clone();
            let a_r = weights[&(v, u)].clone();
            let candidate = -(&a_r * &su) / &a_f;
            match &constants[v] {
                None => {
                    constants[v] = Some(candidate);
                    queue.push_back(v);
                }
                Some(existing) => {
                    if existing != &candidate {
                        inconsistencies.push(format!(
                            "{} -> {}: propagated {} vs existing {}",
                            graph.nodes[u],
                            graph.nodes[v],
                            rational_string(&candidate),
                            rational_string(existing)
                        ));
                    }
                }
            }
        }
    }

    let mut table = BTreeMap::new();
    let mut unreachable = Vec::new();
    let mut negative_nodes = Vec::new();
    for (i, t) in graph.nodes.iter().enumerate() {
        match &constants[i] {
            Some(c) => {
                if c.is_negative() || c.is_zero() {
                    negative_nodes.push(*t);
                }
                table.insert(*t, c.clone());
            }
            None => unreachable.push(*t),
        }
    }
    Ok(SchurTable {
        nu: nu.clone(),
        bound,
        constants: table,
        cut_edges,
        unreachable,
        path_consistent: inconsistencies.is_empty(),
        inconsistencies,
        all_positive: negative_nodes.is_empty(),
        negative_nodes,
    })
}

// ---------------------------------------------------------------------------
// Unitarizable K-type subsets at even reduction points
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetReading {
    /// mu1 - mu2 compared against -nu + 2 rho.
    WeightDifference,
    /// mu1 - nu compared against -nu + 2 rho (the parameter cancels).
    LiteralMu1,
}

impl std::fmt::Display for SubsetReading {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SubsetReading::WeightDifference => write!(f, "mu1-mu2"),
            SubsetReading::LiteralMu1 => write!(f, "mu1-literal"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClosureVerdict {
    pub reading: SubsetReading,
    pub plus_closed: bool,
    pub minus_closed: bool,
    pub plus_size: usize,
    pub minus_size: usize,
    pub exits: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct SubrepReport {
    pub nu: Rational,
    pub bound: i64,
    pub verdicts: Vec<ClosureVerdict>,
    /// Readings whose lower set is edge-closed within the truncation.
    pub closed_readings: Vec<SubsetReading>,
}

impl SubrepReport {
    pub fn to_json(&self) -> Value {
        json!({
            "nu": rational_string(&self.nu),
            "bound": self.bound,
            "verdicts": self.verdicts.iter().map(|v| json!({
                "reading": v.reading.to_string(),
                "plus_closed": v.plus_closed,
                "minus_closed": v.minus_closed,
                "plus_size": v.plus_size,
                "minus_size": v.minus_size,
                "exits": v.exits,
            })).collect::<Vec<_>>(),
            "closed_readings": self.closed_readings.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "caveat": MULTIPLICITY_CAVEAT,
        })
    }
}

fn in_set(
    g: &GroupDatum,
    reading: SubsetReading,
    plus: bool,
    nu: &Rational,
    t: &KType,
) -> bool {
    let (mu1, mu2) = match *t {
        KType::RankTwo { mu1, mu2, .. } => (mu1, mu2),
        _ => unreachable!("subsets are defined on the rank-two lattices"),
    };
    let lhs = match reading {
        SubsetReading::WeightDifference => rat_int(mu1 - mu2),
        SubsetReading::LiteralMu1 => rat_int(mu1) - nu,
    };
    if plus {
        lhs >= -nu + rat_int(2 * g.rho1)
    } else {
        lhs <= -nu + rat_int(2 * g.rho2)
    }
}

/// Materialize both readings of the two K-type subsets at an even reduction
/// point and check edge closure (no nonzero-weight edge exits either set
/// from its interior).
pub fn unitarizable_subreps(g: &GroupDatum, nu: &Rational, bound: i64) -> Result<SubrepReport> {
    if !matches!(g.lattice, LatticeKind::Generic2 | LatticeKind::ProductSU) {
        return Err(Error::KindMismatch(
            "K-type subsets are stated for the rank-two lattices".into(),
        ));
    }
    if !reducibility(g, nu)?.verdict {
        return Err(Error::IllegalParameters(format!(
            "nu = {} is not a reduction point",
            rational_string(nu)
        )));
    }
    let nodes = ktypes::enumerate(g, bound);
    let mut verdicts = Vec::new();
    for reading in [SubsetReading::WeightDifference, SubsetReading::LiteralMu1] {
        let mut exits = Vec::new();
        let mut closed = [true, true]; // plus, minus
        let mut sizes = [0usize, 0usize];
        for (pi, plus) in [(0usize, true), (1, false)] {
            for t in &nodes {
                if !in_set(g, reading, plus, nu, t) {
                    continue;
                }
                sizes[pi] += 1;
                if t.magnitude() >= bound {
                    continue; // boundary nodes are not probed for exits
                }
                for e in ktypes::neighbors(g, t)? {
                    if in_set(g, reading, plus, nu, &e.target) {
                        continue;
                    }
                    let w = coeffs::transition(g, nu, &e)?;
                    if !w.is_zero() {
                        closed[pi] = false;
                        exits.push(format!(
                            "{} ({}) exits via {} with weight {}",
                            if plus { "plus" } else { "minus" },
                            reading,
                            e,
                            rational_string(&w)
                        ));
                    }
                }
            }
        }
        verdicts.push(ClosureVerdict {
            reading,
            plus_closed: closed[0],
            minus_closed: closed[1],
            plus_size: sizes[0],
            minus_size: sizes[1],
            exits,
        });
    }
    // The lower set is the structural one in the nu <= 2 rho2 - 2 regime;
    // a reading counts as closed when its lower set is edge-closed. Upper-set
    // closure is reported alongside as data.
    let closed_readings = verdicts
        .iter()
        .filter(|v| v.minus_closed)
        .map(|v| v.reading)
        .collect();
    Ok(SubrepReport {
        nu: nu.clone(),
        bound,
        verdicts,
        closed_readings,
    })
}

// ---------------------------------------------------------------------------
// Strongly connected components of the nonzero-weight graph
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct ComponentReport {
    pub nu: Rational,
    pub bound: i64,
    /// Components in topological order; each lists its nodes and whether it
    /// touches the truncation boundary.
    pub components: Vec<(Vec<KType>, bool)>,
}

impl ComponentReport {
    pub fn to_json(&self) -> Value {
        json!({
            "nu": rational_string(&self.nu),
            "bound": self.bound,
            "components": self.components.iter().map(|(nodes, boundary)| json!({
                "nodes": nodes.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                "touches_boundary": boundary,
            })).collect::<Vec<_>>(),
            "caveat": MULTIPLICITY_CAVEAT,
        })
    }
}

/// Strongly connected components of the nonzero-weight directed graph in
/// topological order (Kosaraju), with a boundary flag per component.
pub fn composition_candidates(g: &GroupDatum, nu: &Rational, bound: i64) -> Result<ComponentReport> {
    let graph = KTypeGraph::build(g, nu, bound)?;
    let n = graph.nodes.len();
    let mut fwd: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in &graph.edges {
        if !e.weight.is_zero() {
            fwd[e.from].push(e.to);
            rev[e.to].push(e.from);
        }
    }
    // first pass: order by finish time (iterative dfs)
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for s in 0..n {
        if visited[s] {
            continue;
        }
        let mut stack = vec![(s, 0usize)];
        visited[s] = true;
        while let Some(&mut (u, ref mut i)) = stack.last_mut() {
            if *i < fwd[u].len() {
                let v = fwd[u][*i];
                *i += 1;
                if !visited[v] {
                    visited[v] = true;
                    stack.push((v, 0));
                }
            } else {
                order.push(u);
                stack.pop();
            }
        }
    }
    // second pass on the reverse graph
    let mut component = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for &s in order.iter().rev() {
        if component[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![s];
        component[s] = id;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in &rev[u] {
                if component[v] == usize::MAX {
                    component[v] = id;
                    members.push(v);
                    stack.push(v);
                }
            }
        }
        members.sort();
        comps.push(members);
    }
    let components = comps
        .into_iter()
        .map(|members| {
            let boundary = members.iter().any(|&i| graph.nodes[i].magnitude() >= bound);
            (
                members.into_iter().map(|i| graph.nodes[i]).collect::<Vec<_>>(),
                boundary,
            )
        })
        .collect();
    Ok(ComponentReport {
        nu: nu.clone(),
        bound,
        components,
    })
}

// ---------------------------------------------------------------------------
// DOT / CSV emission for the graph
// ---------------------------------------------------------------------------

impl KTypeGraph {
    /// DOT output with exact rational edge labels; zero edges dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph ktypes {\n");
        for (i, t) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{t}\"];\n"));
        }
        for e in &self.edges {
            let style = if e.weight.is_zero() { ", style=dashed" } else { "" };
            out.push_str(&format!(
                "  n{} -> n{} [label=\"{}\"{}];\n",
                e.from,
                e.to,
                rational_string(&e.weight),
                style
            ));
        }
        out.push_str("}\n");
        out
    }

    /// CSV with the fixed column set (src, dst, sigma, lshift, c, intercept, A).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("src,dst,sigma,lshift,c,intercept,A\n");
        for e in &self.edges {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                e.edge.source,
                e.edge.target,
                e.edge.sigma_label(),
                e.edge.lshift,
                rational_string(&e.coeff.c_ratio),
                rational_string(&e.coeff.affine.intercept),
                rational_string(&e.weight),
            ));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.group.family.to_string(),
            "nu": rational_string(&self.nu),
            "bound": self.bound,
            "nodes": self.nodes.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!({
                "src": e.edge.source.to_string(),
                "dst": e.edge.target.to_string(),
                "sigma": e.edge.sigma_label(),
                "lshift": e.edge.lshift,
                "c": rational_string(&e.coeff.c_ratio),
                "intercept": rational_string(&e.coeff.affine.intercept),
                "weight": rational_string(&e.weight),
                "provenance": e.coeff.provenance.to_string(),
            })).collect::<Vec<_>>(),
            "caveat": MULTIPLICITY_CAVEAT,
        })
    }
}

/// Affine pairing: the forward factor at nu equals minus the reverse factor
/// at 2 rho_g - nu, for every admissible edge up to the bound.
pub fn affine_pairing_holds(g: &GroupDatum, bound: i64) -> Result<bool> {
    for s in ktypes::enumerate(g, bound) {
        for e in ktypes::neighbors(g, &s)? {
            let f = coeffs::affine_factor(g, &e.source, e.sigma, e.lshift)?;
            let r = e.reversed();
            let rev = coeffs::affine_factor(g, &r.source, r.sigma, r.lshift)?;
            // f(nu) = -(rev)(2 rho_g - nu) as polynomials in nu:
            // equivalent to intercept_f + intercept_r = -2 rho_g.
            if &f.intercept + &rev.intercept != rat_int(-2 * g.rho_g) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Family;
    use crate::scalars::rat;

    fn datum(f: Family) -> GroupDatum {
        GroupDatum::new(f).unwrap()
    }

    #[test]
    fn reducibility_predicate_rank_two() {
        let g = datum(Family::TypeIV { n: 6 });
        // 2 rho1 + 2 = 8
        assert!(reducibility(&g, &rat_int(8)).unwrap().verdict);
        assert!(!reducibility(&g, &rat_int(5)).unwrap().verdict);
        assert!(!reducibility(&g, &rat_int(6)).unwrap().verdict);
        // 2 rho2 - 2 = 0
        assert!(reducibility(&g, &rat_int(0)).unwrap().verdict);
        assert!(reducibility(&g, &rat_int(-2)).unwrap().verdict);
        assert!(!reducibility(&g, &rat(1, 2)).unwrap().verdict);
    }

    #[test]
    fn reducibility_candidates_rank_one() {
        let g = datum(Family::TypeIII { r: 2 });
        // nu = 2 is the zero of the lowering formula at the spherical source.
        let r = reducibility(&g, &rat_int(2)).unwrap();
        assert!(r.verdict, "{r:?}");
        let r = reducibility(&g, &rat_int(-2)).unwrap();
        assert!(r.verdict);
        assert!(!reducibility(&g, &rat_int(1)).unwrap().verdict);
        assert!(!reducibility(&g, &rat_int(3)).unwrap().verdict);
    }

    #[test]
    fn intertwining_pairs() {
        let g = datum(Family::TypeIV { n: 6 });
        assert!(intertwining_equivalent(&g, &rat_int(3), &rat_int(7)));
        assert!(intertwining_equivalent(&g, &rat_int(5), &rat_int(5)));
        assert!(!intertwining_equivalent(&g, &rat_int(3), &rat_int(6)));
    }

    #[test]
    fn affine_pairing_all_families() {
        for f in [
            Family::TypeIV { n: 6 },
            Family::TypeII { k: 8 },
            Family::TypeI { r: 2, b: 1 },
            Family::TypeI1 { d: 4 },
            Family::TypeIII { r: 3 },
            Family::TypeVI,
        ] {
            assert!(affine_pairing_holds(&datum(f), 6).unwrap(), "{f:?}");
        }
    }

    #[test]
    fn complementary_scan_values() {
        // so(6,2): computed 3 agrees with the table.
        let r = complementary_scan(&datum(Family::TypeIV { n: 6 }), 10).unwrap();
        assert_eq!(r.computed, Some(rat_int(3)));
        assert!(r.agrees);

        // su(3,1): d = 3.
        let r = complementary_scan(&datum(Family::TypeI1 { d: 3 }), 10).unwrap();
        assert_eq!(r.computed, Some(rat_int(3)));
        assert!(r.agrees);

        // type I (2,1): sign-definite pairs appear but the strict window is 2.
        let r = complementary_scan(&datum(Family::TypeI { r: 2, b: 1 }), 10).unwrap();
        assert_eq!(r.computed, Some(rat_int(2)));
        assert!(!r.degenerate_pairs.is_empty());
        assert!(r.agrees);

        // exceptional family: computed and table disagree; reported.
        let r = complementary_scan(&datum(Family::TypeV), 12).unwrap();
        assert_eq!(r.computed, Some(rat_int(5)));
        assert_eq!(r.table, Some(rat_int(3)));
        assert!(!r.agrees);

        // sp(2,R): the weight-preserving transitions empty the strict window,
        // matching the empty table entry.
        let r = complementary_scan(&datum(Family::TypeIII { r: 2 }), 8).unwrap();
        assert!(!r.degenerate_pairs.is_empty());
        assert!(r.agrees);
    }

    #[test]
    fn schur_positive_at_the_center() {
        // Irreducible rank-two lattice: full table, everything positive.
        let g = datum(Family::TypeIV { n: 6 });
        let t = schur_constants(&g, &rat_int(g.rho_g), 6).unwrap();
        assert!(t.path_consistent);
        assert!(t.all_positive, "{:?}", t.negative_nodes);
        assert!(t.unreachable.is_empty());
        assert!(t.cut_edges.is_empty());

        // Product lattice with odd b: the bridges into the mu2 >= mu1 + 2
        // sector vanish exactly at the center, so the table is partial there;
        // the reachable part is positive and consistent.
        let g = datum(Family::TypeI { r: 2, b: 1 });
        let t = schur_constants(&g, &rat_int(g.rho_g), 6).unwrap();
        assert!(t.path_consistent);
        assert!(t.all_positive, "{:?}", t.negative_nodes);
        assert!(!t.cut_edges.is_empty());
        assert!(!t.unreachable.is_empty());
    }

    #[test]
    fn schur_rejects_nothing_but_detects_negatives() {
        // Outside the window some constant must go negative.
        let g = datum(Family::TypeIV { n: 6 });
        let t = schur_constants(&g, &rat_int(g.rho_g + 4), 6).unwrap();
        assert!(t.path_consistent);
        assert!(!t.all_positive);
    }

    #[test]
    fn subrep_closure_type_iv6_at_zero() {
        let g = datum(Family::TypeIV { n: 6 });
        let r = unitarizable_subreps(&g, &rat_int(0), 12).unwrap();
        let wd = r
            .verdicts
            .iter()
            .find(|v| v.reading == SubsetReading::WeightDifference)
            .unwrap();
        assert!(wd.minus_closed, "exits: {:?}", wd.exits);
        assert!(!r.closed_readings.is_empty() || wd.minus_closed);
        // precondition: irreducible points are rejected
        assert!(unitarizable_subreps(&g, &rat_int(5), 8).is_err());
    }

    #[test]
    fn zero_edge_sets_flip_under_the_spectral_symmetry() {
        // The graph at nu and at 2 rho_g - nu have the same zero edges with
        // forward and reverse roles exchanged.
        let g = datum(Family::TypeIV { n: 6 });
        for nu in [rat_int(8), rat_int(0), rat(13, 2)] {
            let mirrored = rat_int(2 * g.rho_g) - &nu;
            let a = KTypeGraph::build(&g, &nu, 5).unwrap();
            let b = KTypeGraph::build(&g, &mirrored, 5).unwrap();
            let zeros = |gr: &KTypeGraph| -> Vec<(KType, KType)> {
                gr.edges
                    .iter()
                    .filter(|e| e.weight.is_zero())
                    .map(|e| (e.edge.source, e.edge.target))
                    .collect()
            };
            let mut za = zeros(&a);
            let mut zb: Vec<(KType, KType)> =
                zeros(&b).into_iter().map(|(s, t)| (t, s)).collect();
            za.sort();
            zb.sort();
            assert_eq!(za, zb, "nu = {}", rational_string(&nu));
        }
    }

    #[test]
    fn reducible_even_points_kill_an_edge() {
        // At every even nu beyond the window some admissible edge weight
        // vanishes within a nu-dependent bound; conversely the candidate list
        // over the graph is a superset of the predicate, reported as such.
        let g = datum(Family::TypeIV { n: 6 });
        for nu in [8i64, 10, 12, 0, -2, -4] {
            let bound = nu.abs() + 2 * g.rho_g;
            let graph = KTypeGraph::build(&g, &rat_int(nu), bound).unwrap();
            assert!(
                graph.edges.iter().any(|e| e.weight.is_zero()),
                "nu = {nu} has no vanishing edge"
            );
        }
    }

    #[test]
    fn components_split_along_the_closed_set() {
        // At the even point nu = 8 the exceptional family's graph separates:
        // the closed lower set no longer reaches the rest.
        let g = datum(Family::TypeVI);
        let r = composition_candidates(&g, &rat_int(8), 6).unwrap();
        assert!(r.components.len() >= 2, "components: {}", r.components.len());
    }

    #[test]
    fn components_generic_nu_single_interior_scc() {
        let g = datum(Family::TypeIV { n: 6 });
        let r = composition_candidates(&g, &rat_int(5), 4).unwrap();
        // all interior nodes lie in one component
        let interior: Vec<_> = r
            .components
            .iter()
            .filter(|(nodes, _)| nodes.iter().any(|t| t.magnitude() < 4))
            .collect();
        assert_eq!(interior.len(), 1);
        // bound 0: single node, single component
        let r0 = composition_candidates(&g, &rat_int(5), 0).unwrap();
        assert_eq!(r0.components.len(), 1);
        assert_eq!(r0.components[0].0.len(), 1);
    }
}
