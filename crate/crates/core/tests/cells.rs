mod common;

use std::collections::BTreeSet;

use polycell::automata::Languages;
use polycell::cells::{CellLabel, ConjecturalPartition, OneSidedCells};
use polycell::kl::{two_sided_cells, KlTable, WGraph};
use polycell::render::{Coloring, PolygonRealization, Scene, SceneConfig};
use polycell::verify::empirical_vs_conjectural;
use polycell::{ElementBall, Side};

use common::{w2224, w237};

#[test]
fn left_cells_are_inverses_of_right_cells() {
    let g = w237();
    let ball = ElementBall::new(&g, 10, None).unwrap();
    let table = KlTable::new(&ball, None).unwrap();
    let left = WGraph::new(&table, Side::Left).cells();
    let right = WGraph::new(&table, Side::Right).cells();
    let inv: Vec<usize> = ball
        .elements()
        .iter()
        .map(|w| ball.index_of(&g.inverse(w).word).unwrap())
        .collect();
    let blocks = |p: &polycell::kl::Partition, map: &dyn Fn(usize) -> usize| {
        p.blocks()
            .iter()
            .map(|b| b.iter().map(|&v| map(v as usize)).collect::<BTreeSet<_>>())
            .collect::<BTreeSet<_>>()
    };
    assert_eq!(blocks(&left, &|v| inv[v]), blocks(&right, &|v| v));
    let two = two_sided_cells(&left, &right);
    assert!(left.refines(&two) && right.refines(&two));
}

#[test]
fn w2224_small_ball_agrees() {
    let g = w2224();
    let mut langs = Languages::new(&g);
    langs.set_validated_k(4);
    let part = ConjecturalPartition::new(&langs, 4).unwrap();
    let ball = ElementBall::new(&g, 8, None).unwrap();
    let table = KlTable::new(&ball, None).unwrap();
    let r = empirical_vs_conjectural(&table, &part, 4, &[]);
    assert_eq!(r.trusted_length, 4);
    assert!(r.all_agree(), "{:?}", r.disagreements);
}

#[test]
fn one_sided_specs_are_right_cells() {
    let g = w237();
    let mut langs = Languages::new(&g);
    langs.set_validated_k(6);
    let part = ConjecturalPartition::new(&langs, 6).unwrap();
    let ball = ElementBall::new(&g, 12, None).unwrap();
    let cells: Vec<OneSidedCells> = (1..=3)
        .map(|l| OneSidedCells::new(&langs, &part, &ball, l, 12, 6).unwrap())
        .collect();
    for c in &cells {
        assert!(c.nested_or_disjoint().unwrap());
        assert_eq!(c.cross_pair_containments, 0);
    }
    let table = KlTable::new(&ball, None).unwrap();
    let r = empirical_vs_conjectural(&table, &part, 4, &cells);
    for o in &r.one_sided {
        assert_eq!(o.uncovered, 0, "level {}", o.level);
        assert_eq!(
            o.matching_right_cells, o.nonempty_specs,
            "level {}",
            o.level
        );
    }
    // The identity translate is U^T itself.
    let top = &cells[2];
    let first = top.specs().next().unwrap();
    assert!(first.translator.is_identity());
    assert!(
        polycell::automata::are_equivalent(&first.fsa, top.region(first.pair).unwrap()).unwrap()
    );
    let level1 = cells[0].coverage(&part, 12).unwrap();
    assert!(level1.equal);
}

#[test]
fn tiles_are_distinct() {
    let g = w237();
    let ball = ElementBall::new(&g, 8, None).unwrap();
    let r = PolygonRealization::new(g.presentation()).unwrap();
    let scene = Scene::new(&ball, &r, &Coloring::Plain, SceneConfig::default());
    assert_eq!(scene.tiles.len(), ball.len());
    assert!(scene.min_center_distance(&r.center()) > 1e-6);
    for (_, m) in &scene.tiles {
        assert!(polycell::render::lorentz_residual(m) < 1e-9);
    }
}

#[test]
fn zero_cell_of_w237_is_the_census() {
    let g = w237();
    let mut langs = Languages::new(&g);
    langs.set_validated_k(6);
    let part = ConjecturalPartition::new(&langs, 6).unwrap();
    let zero = part.label_fsa(CellLabel::Zero).unwrap();
    let a = polycell::automata::analyze(zero, 20).unwrap();
    let total: u64 = a.counts.iter().map(|c| u64::try_from(c).unwrap()).sum();
    assert_eq!(total, 27);
}
