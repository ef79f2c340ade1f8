mod common;

use std::sync::OnceLock;

use polycell::automata::{difference, intersection, union, Languages};
use polycell::cells::ConjecturalPartition;
use polycell::kl::{HeckeAlgebra, KlTable};
use polycell::{CoxeterGroup, ElementBall, Word};
use proptest::prelude::*;

use common::{w2224, w237, Tits};

struct Fixture {
    g: CoxeterGroup,
    tits: Tits,
    part: ConjecturalPartition,
}

fn fixture(which: usize) -> &'static Fixture {
    static F: [OnceLock<Fixture>; 2] = [OnceLock::new(), OnceLock::new()];
    F[which].get_or_init(|| {
        let (g, k) = if which == 0 {
            (w237(), 6)
        } else {
            (w2224(), 4)
        };
        let mut langs = Languages::new(&g);
        langs.set_validated_k(k);
        let part = ConjecturalPartition::new(&langs, k).unwrap();
        Fixture {
            tits: Tits::new(g.presentation()),
            g,
            part,
        }
    })
}

fn hecke_table() -> &'static KlTable {
    static T: OnceLock<KlTable> = OnceLock::new();
    T.get_or_init(|| {
        let ball = ElementBall::new(&w237(), 8, None).unwrap();
        KlTable::new(&ball, None).unwrap()
    })
}

fn word(rank: usize, max: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0..rank as u8, 0..=max)
}

fn group_and_words() -> impl Strategy<Value = (usize, Vec<u8>, Vec<u8>)> {
    (0..2usize).prop_flat_map(|i| {
        let r = if i == 0 { 3 } else { 4 };
        (Just(i), word(r, 12), word(r, 12))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn word_problem_matches_matrices((i, a, b) in group_and_words()) {
        let f = fixture(i);
        let (wa, wb) = (Word::new(a.clone()), Word::new(b.clone()));
        prop_assert_eq!(f.g.equal(&wa, &wb), f.tits.word(&a) == f.tits.word(&b));
        let na = f.g.normal_form(&wa);
        prop_assert_eq!(f.tits.word(na.word.letters()), f.tits.word(&a));
        prop_assert!(f.tits.is_reduced(na.word.letters()));
        prop_assert_eq!(f.g.is_reduced(&wa), f.tits.is_reduced(&a));
        prop_assert_eq!(f.g.normal_form(&na.word), na.clone());
    }

    #[test]
    fn group_axioms((i, a, b) in group_and_words()) {
        let f = fixture(i);
        let x = f.g.normal_form(&Word::new(a));
        let y = f.g.normal_form(&Word::new(b));
        prop_assert!(f.g.multiply(&x, &f.g.inverse(&x)).is_identity());
        let xy = f.g.multiply(&x, &y);
        prop_assert_eq!(f.g.inverse(&xy), f.g.multiply(&f.g.inverse(&y), &f.g.inverse(&x)));
        prop_assert!(xy.length() <= x.length() + y.length());
        for s in 0..f.g.rank() {
            let xs = f.g.right_mul(&x, s);
            prop_assert_eq!(x.right.contains(s), xs.length() < x.length());
            prop_assert_eq!(f.tits.ascends(&f.tits.word(x.word.letters()), s), xs.length() > x.length());
        }
    }

    /// The label does not depend on which reduced expression is read.
    #[test]
    fn label_is_a_property_of_the_element((i, a, _b) in group_and_words()) {
        let f = fixture(i);
        let x = f.g.normal_form(&Word::new(a));
        let label = f.part.classify_element(&x);
        // Another reduced expression: the reversal of the normal form of the inverse.
        let other = f.g.inverse(&x).word.reversed();
        prop_assert_eq!(f.part.classify_word(&other), label);
        let accepted: Vec<_> = f.part.label_fsas().iter().filter(|(_, fsa)| Languages::accepts(fsa, &other)).map(|(l, _)| *l).collect();
        prop_assert_eq!(accepted, vec![label]);
    }

    #[test]
    fn boolean_operations_are_pointwise(a in word(3, 10)) {
        let f = fixture(0);
        let w = Word::new(a);
        let c1 = f.part.label_fsa("C1".parse().unwrap()).unwrap();
        let x3 = f.part.level_fsa(3).unwrap();
        let (m1, m3) = (Languages::accepts(c1, &w), Languages::accepts(x3, &w));
        prop_assert_eq!(Languages::accepts(&union(c1, x3).unwrap(), &w), m1 || m3);
        prop_assert_eq!(Languages::accepts(&intersection(c1, x3).unwrap(), &w), m1 && m3);
        prop_assert_eq!(Languages::accepts(&difference(c1, x3).unwrap(), &w), m1 && !m3);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn hecke_products(x in 0usize..25, y in 0usize..25, z in 0usize..25) {
        let table = hecke_table();
        let ball = table.ball();
        let short: Vec<usize> = (0..ball.len()).filter(|&i| ball.element(i).length() <= 4).collect();
        let (x, y, z) = (short[x % short.len()], short[y % short.len()], short[z % short.len()]);
        let h = HeckeAlgebra::with_ball(ball);
        let (tx, ty, tz) = (h.t(ball.element(x)), h.t(ball.element(y)), h.t(ball.element(z)));
        prop_assert_eq!(
            h.multiply(&h.multiply(&tx, &ty), &tz),
            h.multiply(&tx, &h.multiply(&ty, &tz))
        );
        let coords = h.h_constants(x, y, table).unwrap();
        prop_assert_eq!(
            h.from_c_coordinates(&coords, table).unwrap(),
            h.multiply(&h.c_basis(x, table), &h.c_basis(y, table))
        );
    }
}
