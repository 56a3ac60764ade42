//! Combinatorial admissibility by exact rational feasibility.
//!
//! A graph is admissible when edge lengths exist making every standard cycle
//! the same length and every other simple cycle strictly longer. Strictness
//! is compiled into a margin: with the systole normalised to 1, maximise `t`
//! subject to
//!
//! * `sum of lengths = 1` over each standard cycle (circles contribute the
//!   single equation `length = 1`),
//! * `sum of lengths >= 1 + t` over each non-standard simple cycle,
//! * `length >= t` for every edge,
//!
//! with `t` free. The graph is admissible exactly when the optimum `t*` is
//! positive, and any optimal assignment is then a strict witness. All of
//! this is exact rational arithmetic; a sign flip here would flip the
//! verdict.
//!
//! The full constraint set has one row per simple cycle, which can run to
//! thousands on the larger families, so the solver works lazily: solve with
//! a working subset, scan every enumerated non-standard cycle for
//! violations, add the worst offenders, and repeat. The final optimum
//! satisfies every constraint, and since each relaxation only over-estimates
//! the margin, the fixed point is the exact optimum of the full program.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use crate::cycles::{enumerate_simple_cycles, CycleClass, SimpleCycle};
use crate::exec;
use crate::fatgraph::{FatGraph, StandardCycle};
use crate::simplex::{self, Constraint, Program, Relation};
use crate::{Error, Rational};

/// How many violated cycle constraints to add per lazy iteration.
const BATCH: usize = 16;

/// A positive rational length for every edge and circle, keyed by display
/// name. A bare pair name like `a-b` addresses every parallel edge between
/// `a` and `b`; `a-b#2` addresses the second such edge; `a.3` addresses the
/// edge through a half-edge; a circle is addressed by its name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MetricAssignment {
    entries: BTreeMap<String, Rational>,
}

impl MetricAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, target: &str, value: Rational) -> Result<(), Error> {
        if !value.is_positive() {
            return Err(Error::NonPositiveLength(target.to_string()));
        }
        self.entries.insert(target.to_string(), value);
        Ok(())
    }

    pub fn get(&self, target: &str) -> Option<&Rational> {
        self.entries.get(target)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &Rational)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The same length on every edge and circle of `graph`.
    pub fn uniform(graph: &FatGraph, value: Rational) -> Result<Self, Error> {
        let mut m = Self::new();
        for e in graph.edge_ids() {
            m.set(&graph.edge_name(e), value.clone())?;
        }
        for c in graph.circle_ids() {
            m.set(graph.circle_name(c), value.clone())?;
        }
        Ok(m)
    }

    /// Multiply every length by a positive rational.
    pub fn scaled(&self, factor: &Rational) -> Result<Self, Error> {
        if !factor.is_positive() {
            return Err(Error::NonPositiveLength("scale factor".into()));
        }
        let mut out = Self::new();
        for (k, v) in &self.entries {
            out.entries.insert(k.clone(), v * factor);
        }
        Ok(out)
    }

    /// Resolve names against a graph: per-edge and per-circle lengths.
    /// Specific `#k` and half-edge entries override a bare pair entry.
    pub fn resolve(&self, graph: &FatGraph) -> Result<ResolvedMetric, Error> {
        let lookup = graph.edge_lookup();
        let mut edge_len: Vec<Option<Rational>> = vec![None; graph.edge_count()];
        let mut circle_len: Vec<Option<Rational>> = vec![None; graph.circle_count()];
        // Bare pair entries first, then specific ones on top.
        for (name, value) in &self.entries {
            if let Some(edges) = lookup.by_pair.get(name) {
                for &e in edges {
                    edge_len[e.0] = Some(value.clone());
                }
            }
        }
        for (name, value) in &self.entries {
            if lookup.by_pair.contains_key(name) {
                continue;
            }
            if let Some(&e) = lookup.by_half_edge.get(name) {
                edge_len[e.0] = Some(value.clone());
            } else if let Some((bare, k)) = split_parallel_name(name) {
                let edges = lookup
                    .by_pair
                    .get(&bare)
                    .ok_or_else(|| Error::UnknownMetricTarget(name.clone()))?;
                if k == 0 || k > edges.len() {
                    return Err(Error::UnknownMetricTarget(name.clone()));
                }
                edge_len[edges[k - 1].0] = Some(value.clone());
            } else if let Some(&c) = lookup.by_circle.get(name) {
                circle_len[c.0] = Some(value.clone());
            } else {
                return Err(Error::UnknownMetricTarget(name.clone()));
            }
        }
        let mut edges = Vec::with_capacity(edge_len.len());
        for (i, v) in edge_len.into_iter().enumerate() {
            match v {
                Some(r) => edges.push(r),
                None => {
                    return Err(Error::MissingLength(
                        graph.edge_name(crate::fatgraph::EdgeId(i)),
                    ))
                }
            }
        }
        let mut circles = Vec::with_capacity(circle_len.len());
        for (i, v) in circle_len.into_iter().enumerate() {
            match v {
                Some(r) => circles.push(r),
                None => {
                    return Err(Error::MissingLength(
                        graph.circle_name(crate::fatgraph::CircleId(i)).to_string(),
                    ))
                }
            }
        }
        Ok(ResolvedMetric { edges, circles })
    }
}

fn split_parallel_name(name: &str) -> Option<(String, usize)> {
    let (bare, k) = name.rsplit_once('#')?;
    let k: usize = k.parse().ok()?;
    Some((bare.to_string(), k))
}

/// Per-edge and per-circle lengths in graph index order.
#[derive(Debug, Clone)]
pub struct ResolvedMetric {
    pub edges: Vec<Rational>,
    pub circles: Vec<Rational>,
}

impl ResolvedMetric {
    fn cycle_sum(&self, cycle: &StandardCycle) -> Rational {
        match cycle.circle {
            Some(c) => self.circles[c.0].clone(),
            None => cycle
                .edges
                .iter()
                .map(|e| self.edges[e.0].clone())
                .fold(Rational::zero(), |a, b| a + b),
        }
    }

    fn simple_cycle_sum(&self, cycle: &SimpleCycle) -> Rational {
        match cycle.circle {
            Some(c) => self.circles[c.0].clone(),
            None => cycle
                .key
                .iter()
                .map(|e| self.edges[e.0].clone())
                .fold(Rational::zero(), |a, b| a + b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdmissibilityStatus {
    Admissible,
    NotAdmissible,
}

/// Verdict of the margin program.
#[derive(Debug, Clone)]
pub struct AdmissibilityVerdict {
    pub status: AdmissibilityStatus,
    /// Optimal strictness slack `t*`; admissible iff positive.
    pub margin: Rational,
    /// Optimal assignment, present exactly when admissible.
    pub witness: Option<MetricAssignment>,
    pub standard_count: usize,
    pub non_standard_count: usize,
    pub edge_count: usize,
}

impl AdmissibilityVerdict {
    pub fn is_admissible(&self) -> bool {
        self.status == AdmissibilityStatus::Admissible
    }
}

/// One linear constraint handed to [`solve_feasibility`]; the margin enters
/// according to the constraint class.
#[derive(Debug, Clone)]
pub struct LinearCombo {
    pub terms: Vec<(usize, Rational)>,
    pub rhs: Rational,
}

/// Maximise the margin `t` subject to `combo = rhs` for each equality,
/// `combo >= rhs + t` for each inequality, and `x_i >= t` for each variable
/// flagged in `bounded` (unflagged variables are free). Returns the optimal
/// margin and one optimal assignment.
pub fn solve_feasibility(
    num_vars: usize,
    equalities: &[LinearCombo],
    inequalities: &[LinearCombo],
    bounded: &[bool],
) -> Result<(Rational, Vec<Rational>), Error> {
    assert_eq!(bounded.len(), num_vars);
    // Substitute y_i = x_i - t for bounded variables, split free ones.
    let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(num_vars);
    let mut next = 0usize;
    for &b in bounded {
        if b {
            col_of.push((next, None));
            next += 1;
        } else {
            col_of.push((next, Some(next + 1)));
            next += 2;
        }
    }
    let t_pos = next;
    let t_neg = next + 1;
    let total = next + 2;

    let build_row = |combo: &LinearCombo, extra_t: Rational| -> Constraint {
        let mut t_coeff = extra_t;
        let mut coeffs: Vec<(usize, Rational)> = Vec::new();
        for (v, c) in &combo.terms {
            let (pos, neg) = col_of[*v];
            coeffs.push((pos, c.clone()));
            match neg {
                Some(n) => coeffs.push((n, -c.clone())),
                None => t_coeff += c,
            }
        }
        if !t_coeff.is_zero() {
            coeffs.push((t_pos, t_coeff.clone()));
            coeffs.push((t_neg, -t_coeff));
        }
        Constraint {
            coeffs,
            relation: Relation::Eq,
            rhs: combo.rhs.clone(),
        }
    };

    let mut constraints = Vec::new();
    for eq in equalities {
        constraints.push(build_row(eq, Rational::zero()));
    }
    for ineq in inequalities {
        let mut row = build_row(ineq, -Rational::from_integer(1.into()));
        row.relation = Relation::Ge;
        constraints.push(row);
    }
    let program = Program {
        num_vars: total,
        objective: vec![
            (t_pos, Rational::from_integer(1.into())),
            (t_neg, Rational::from_integer((-1).into())),
        ],
        constraints,
    };
    match simplex::solve_max(&program) {
        simplex::Outcome::Optimal { value, point } => {
            let t = value;
            let mut xs = Vec::with_capacity(num_vars);
            for (i, &(pos, neg)) in col_of.iter().enumerate() {
                let _ = i;
                let x = match neg {
                    Some(n) => &point[pos] - &point[n],
                    None => &point[pos] + &t,
                };
                xs.push(x);
            }
            Ok((t, xs))
        }
        simplex::Outcome::Infeasible => Err(Error::InconsistentEqualities),
        simplex::Outcome::Unbounded => Err(Error::Internal(
            "margin program unbounded; no standard cycle bounds the margin".into(),
        )),
    }
}

/// Variable layout shared by the admissibility routines: one variable per
/// edge, then one per circle.
fn margin_system(
    graph: &FatGraph,
    standard: &[StandardCycle],
) -> (usize, Vec<LinearCombo>, Vec<bool>) {
    let e = graph.edge_count();
    let num_vars = e + graph.circle_count();
    let one = Rational::from_integer(1.into());
    let mut equalities = Vec::new();
    for cycle in standard {
        let terms: Vec<(usize, Rational)> = match cycle.circle {
            Some(c) => vec![(e + c.0, one.clone())],
            None => cycle.edges.iter().map(|ed| (ed.0, one.clone())).collect(),
        };
        equalities.push(LinearCombo {
            terms,
            rhs: one.clone(),
        });
    }
    // Edge variables are bounded below by the margin; circle variables are
    // pinned to 1 by their equality, which subsumes the bound.
    let bounded = vec![true; num_vars];
    (num_vars, equalities, bounded)
}

fn cycle_combo(cycle: &SimpleCycle, circle_base: usize) -> LinearCombo {
    let one = Rational::from_integer(1.into());
    let terms = match cycle.circle {
        Some(c) => vec![(circle_base + c.0, one.clone())],
        None => cycle.key.iter().map(|e| (e.0, one.clone())).collect(),
    };
    LinearCombo {
        terms,
        rhs: one.clone(),
    }
}

/// Decide combinatorial admissibility. `cap` bounds the simple-cycle
/// enumeration (see [`crate::cycles::DEFAULT_CYCLE_CAP`]).
pub fn check_admissibility(graph: &FatGraph, cap: usize) -> Result<AdmissibilityVerdict, Error> {
    graph.require_valid()?;
    if graph.edge_count() == 0 && graph.circle_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let standard = graph.standard_cycles()?;
    let all = enumerate_simple_cycles(graph, cap)?;
    let nonstandard: Vec<&SimpleCycle> = all
        .iter()
        .filter(|c| c.classification == CycleClass::NonStandard)
        .collect();

    let e = graph.edge_count();
    let (num_vars, equalities, bounded) = margin_system(graph, &standard);

    let mut working: BTreeSet<usize> = BTreeSet::new();
    let one = Rational::from_integer(1.into());
    loop {
        let inequalities: Vec<LinearCombo> = working
            .iter()
            .map(|&i| cycle_combo(nonstandard[i], e))
            .collect();
        let (t, xs) = solve_feasibility(num_vars, &equalities, &inequalities, &bounded)?;
        let threshold = &one + &t;
        let mut violated: Vec<(Rational, usize)> = Vec::new();
        for (i, cycle) in nonstandard.iter().enumerate() {
            if working.contains(&i) {
                continue;
            }
            let sum: Rational = match cycle.circle {
                Some(c) => xs[e + c.0].clone(),
                None => cycle
                    .key
                    .iter()
                    .map(|ed| xs[ed.0].clone())
                    .fold(Rational::zero(), |a, b| a + b),
            };
            if sum < threshold {
                violated.push((sum, i));
            }
        }
        if violated.is_empty() {
            let status = if t.is_positive() {
                AdmissibilityStatus::Admissible
            } else {
                AdmissibilityStatus::NotAdmissible
            };
            let witness = if t.is_positive() {
                let mut m = MetricAssignment::new();
                for ed in graph.edge_ids() {
                    m.set(&graph.edge_name(ed), xs[ed.0].clone())?;
                }
                for c in graph.circle_ids() {
                    m.set(graph.circle_name(c), xs[e + c.0].clone())?;
                }
                Some(m)
            } else {
                None
            };
            return Ok(AdmissibilityVerdict {
                status,
                margin: t,
                witness,
                standard_count: standard.len(),
                non_standard_count: nonstandard.len(),
                edge_count: e,
            });
        }
        violated.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        for (_, i) in violated.into_iter().take(BATCH) {
            working.insert(i);
        }
    }
}

/// Exact verification of a metric against every cycle constraint.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    /// Cycle id and exact sum, for every standard cycle in canonical order.
    pub standard_sums: Vec<(usize, Rational)>,
    /// The shared standard length, when all standard sums agree.
    pub common_value: Option<Rational>,
    /// Sum minus the reference value (the first standard sum) per cycle.
    pub deviations: Vec<(usize, Rational)>,
    pub non_standard_count: usize,
    /// Smallest non-standard sum minus the reference value.
    pub min_non_standard_slack: Option<Rational>,
    /// Human-readable violations; empty iff `pass`.
    pub violations: Vec<String>,
    pub pass: bool,
}

/// Evaluate every standard-cycle sum (they must all agree) and every
/// non-standard simple-cycle sum (each must strictly exceed the shared
/// value). No floating point is involved.
pub fn verify_metric(
    graph: &FatGraph,
    metric: &MetricAssignment,
    cap: usize,
) -> Result<VerificationReport, Error> {
    graph.require_valid()?;
    if graph.edge_count() == 0 && graph.circle_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let resolved = metric.resolve(graph)?;
    for (i, v) in resolved.edges.iter().enumerate() {
        if !v.is_positive() {
            return Err(Error::NonPositiveLength(
                graph.edge_name(crate::fatgraph::EdgeId(i)),
            ));
        }
    }
    for (i, v) in resolved.circles.iter().enumerate() {
        if !v.is_positive() {
            return Err(Error::NonPositiveLength(
                graph.circle_name(crate::fatgraph::CircleId(i)).to_string(),
            ));
        }
    }
    let standard = graph.standard_cycles()?;
    let all = enumerate_simple_cycles(graph, cap)?;

    let standard_sums: Vec<(usize, Rational)> = standard
        .iter()
        .map(|c| (c.id, resolved.cycle_sum(c)))
        .collect();
    let reference = standard_sums[0].1.clone();
    let deviations: Vec<(usize, Rational)> = standard_sums
        .iter()
        .map(|(id, s)| (*id, s - &reference))
        .collect();
    let mut violations = Vec::new();
    let all_equal = deviations.iter().all(|(_, d)| d.is_zero());
    if !all_equal {
        for (id, d) in &deviations {
            if !d.is_zero() {
                violations.push(format!(
                    "standard cycle {id} deviates from the reference sum by {d}"
                ));
            }
        }
    }

    let mut min_slack: Option<Rational> = None;
    let mut non_standard_count = 0usize;
    for cycle in all.iter().filter(|c| c.classification == CycleClass::NonStandard) {
        non_standard_count += 1;
        let slack = resolved.simple_cycle_sum(cycle) - &reference;
        if !slack.is_positive() {
            violations.push(format!(
                "non-standard cycle through {} edge(s) has slack {slack} (must be positive)",
                cycle.edge_count()
            ));
        }
        if min_slack.as_ref().is_none_or(|m| slack < *m) {
            min_slack = Some(slack);
        }
    }

    let pass = violations.is_empty();
    Ok(VerificationReport {
        standard_sums,
        common_value: if all_equal { Some(reference) } else { None },
        deviations,
        non_standard_count,
        min_non_standard_slack: min_slack,
        violations,
        pass,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimalityClass {
    Admissible,
    MinimalNonAdmissible,
    NonAdmissibleNonMinimal,
}

#[derive(Debug, Clone)]
pub struct DeletionOutcome {
    pub cycle_id: usize,
    /// Display names of the deleted cycle's edges (or the circle name).
    pub description: String,
    pub verdict: AdmissibilityVerdict,
}

#[derive(Debug, Clone)]
pub struct MinimalityReport {
    pub full: AdmissibilityVerdict,
    pub deletions: Vec<DeletionOutcome>,
    pub classification: MinimalityClass,
}

/// Decide minimal non-admissibility: the graph itself must be
/// non-admissible while every single-standard-cycle deletion is admissible.
/// Single deletions suffice because admissibility is monotone under taking
/// unions of standard cycles (a witness restricts, with lengths adding
/// across smoothed nodes).
pub fn check_minimality(graph: &FatGraph, cap: usize) -> Result<MinimalityReport, Error> {
    let full = check_admissibility(graph, cap)?;
    let cycles = graph.standard_cycles()?;
    let deletions: Vec<DeletionOutcome> = if cycles.len() >= 2 {
        let ids: Vec<usize> = cycles.iter().map(|c| c.id).collect();
        let results: Vec<Result<DeletionOutcome, Error>> = exec::map_slice(&ids, |&id| {
            let rest = graph.delete_standard_cycles(&BTreeSet::from([id]))?;
            let verdict = check_admissibility(&rest, cap)?;
            let cycle = &cycles[id];
            let description = match cycle.circle {
                Some(c) => graph.circle_name(c).to_string(),
                None => cycle
                    .edges
                    .iter()
                    .map(|&e| graph.edge_name(e))
                    .collect::<Vec<_>>()
                    .join(" "),
            };
            Ok(DeletionOutcome {
                cycle_id: id,
                description,
                verdict,
            })
        });
        results.into_iter().collect::<Result<Vec<_>, _>>()?
    } else {
        Vec::new()
    };
    let classification = if full.is_admissible() {
        MinimalityClass::Admissible
    } else if !deletions.is_empty() && deletions.iter().all(|d| d.verdict.is_admissible()) {
        MinimalityClass::MinimalNonAdmissible
    } else {
        MinimalityClass::NonAdmissibleNonMinimal
    };
    Ok(MinimalityReport {
        full,
        deletions,
        classification,
    })
}
