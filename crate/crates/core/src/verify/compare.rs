//! Empirical KL cells on a ball against the conjectural labels.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cells::{CellLabel, ConjecturalPartition, OneSidedCells};
use crate::coxeter::Side;
use crate::kl::{two_sided_cells, KlTable, Partition, WGraph};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ElementComparison {
    pub element: String,
    pub length: usize,
    pub empirical_cell: u32,
    pub conjectural: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Disagreement {
    pub element: String,
    pub length: usize,
    pub empirical_cell: u32,
    pub conjectural: String,
    /// Majority conjectural label of the element's empirical cell.
    pub cell_majority: String,
}

/// One-sided specs at one level against empirical right and left cells.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OneSidedComparison {
    pub level: usize,
    pub specs: usize,
    pub trusted_elements: usize,
    /// Trusted elements of the level not in any spec.
    pub uncovered: usize,
    /// Specs whose trusted elements form exactly one empirical right cell's trusted part.
    pub matching_right_cells: usize,
    pub matching_left_cells: usize,
    /// Specs with at least one trusted element.
    pub nonempty_specs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub group: String,
    pub radius: usize,
    pub trust_margin: usize,
    pub trusted_length: usize,
    pub k: usize,
    pub empirical_cells: usize,
    pub trusted: usize,
    pub agreeing: usize,
    pub agreement: f64,
    pub elements: Vec<ElementComparison>,
    pub disagreements: Vec<Disagreement>,
    /// Elements beyond the trusted length whose labels disagree with their cell.
    pub boundary_flagged: Vec<String>,
    pub one_sided: Vec<OneSidedComparison>,
}

impl ComparisonReport {
    pub fn all_agree(&self) -> bool {
        self.disagreements.is_empty()
    }
}

fn majority(counts: &BTreeMap<CellLabel, usize>) -> Option<CellLabel> {
    let mut best: Option<(CellLabel, usize)> = None;
    for (&l, &c) in counts {
        if best.is_none_or(|(_, b)| c > b) {
            best = Some((l, c));
        }
    }
    best.map(|(l, _)| l)
}

fn matching_cells(
    specs_of: &[Option<usize>],
    trusted: &[usize],
    cells: &Partition,
    nspecs: usize,
) -> usize {
    let mut by_spec: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut by_cell: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (&x, s) in trusted.iter().zip(specs_of) {
        if let Some(s) = s {
            by_spec.entry(*s).or_default().push(x);
        }
        by_cell.entry(cells.label(x)).or_default().push(x);
    }
    (0..nspecs)
        .filter(|s| {
            let Some(xs) = by_spec.get(s) else {
                return false;
            };
            let c = cells.label(xs[0]);
            xs.iter().all(|&x| cells.label(x) == c) && by_cell[&c].len() == xs.len()
        })
        .count()
}

/// Aligns the two-sided cells of the W-graphs of `table` with the labels of
/// `partition` on elements of length ≤ radius − trust_margin.
pub fn empirical_vs_conjectural(
    table: &KlTable,
    partition: &ConjecturalPartition,
    trust_margin: usize,
    one_sided: &[OneSidedCells],
) -> ComparisonReport {
    let ball = table.ball();
    let g = ball.group();
    let trusted_length = ball.radius().saturating_sub(trust_margin);
    let left = WGraph::new(table, Side::Left).cells();
    let right = WGraph::new(table, Side::Right).cells();
    let two = two_sided_cells(&left, &right);
    let labels = partition.labels_on_ball(ball);
    let is_trusted = |i: usize| ball.element(i).length() <= trusted_length;

    let mut per_cell: BTreeMap<u32, BTreeMap<CellLabel, usize>> = BTreeMap::new();
    let mut per_label: BTreeMap<CellLabel, BTreeMap<u32, usize>> = BTreeMap::new();
    for i in (0..ball.len()).filter(|&i| is_trusted(i)) {
        *per_cell
            .entry(two.label(i))
            .or_default()
            .entry(labels[i])
            .or_default() += 1;
        *per_label
            .entry(labels[i])
            .or_default()
            .entry(two.label(i))
            .or_default() += 1;
    }
    let cell_label: BTreeMap<u32, CellLabel> = per_cell
        .iter()
        .map(|(&c, m)| (c, majority(m).unwrap()))
        .collect();
    let home: BTreeMap<CellLabel, u32> = per_label
        .iter()
        .map(|(&l, m)| {
            let best = m
                .iter()
                .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
                .unwrap();
            (l, *best.0)
        })
        .collect();

    let mut elements = Vec::new();
    let mut disagreements = Vec::new();
    let mut boundary_flagged = Vec::new();
    for i in 0..ball.len() {
        let w = ball.element(i);
        let c = two.label(i);
        let name = g.format(&w.word);
        if !is_trusted(i) {
            if cell_label.get(&c).is_some_and(|&l| l != labels[i]) {
                boundary_flagged.push(name);
            }
            continue;
        }
        let majority = cell_label[&c];
        if majority != labels[i] || home[&labels[i]] != c {
            disagreements.push(Disagreement {
                element: name.clone(),
                length: w.length(),
                empirical_cell: c,
                conjectural: labels[i].name(),
                cell_majority: majority.name(),
            });
        }
        elements.push(ElementComparison {
            element: name,
            length: w.length(),
            empirical_cell: c,
            conjectural: labels[i].name(),
        });
    }
    let trusted = elements.len();
    let agreeing = trusted - disagreements.len();

    let one_sided = one_sided
        .iter()
        .map(|os| {
            let members: Vec<usize> = (0..ball.len())
                .filter(|&i| is_trusted(i) && labels[i] == CellLabel::Level(os.level))
                .collect();
            let specs_of: Vec<Option<usize>> = members
                .iter()
                .map(|&i| os.locate(ball.element(i)))
                .collect();
            let nspecs = os.minimal.len();
            let mut nonempty = vec![false; nspecs];
            for s in specs_of.iter().flatten() {
                nonempty[*s] = true;
            }
            OneSidedComparison {
                level: os.level,
                specs: nspecs,
                trusted_elements: members.len(),
                uncovered: specs_of.iter().filter(|s| s.is_none()).count(),
                matching_right_cells: matching_cells(&specs_of, &members, &right, nspecs),
                matching_left_cells: matching_cells(&specs_of, &members, &left, nspecs),
                nonempty_specs: nonempty.iter().filter(|&&b| b).count(),
            }
        })
        .collect();

    ComparisonReport {
        group: g.presentation().name().to_string(),
        radius: ball.radius(),
        trust_margin,
        trusted_length,
        k: partition.k(),
        empirical_cells: two.blocks().len(),
        trusted,
        agreeing,
        agreement: if trusted == 0 {
            1.0
        } else {
            agreeing as f64 / trusted as f64
        },
        elements,
        disagreements,
        boundary_flagged,
        one_sided,
    }
}
