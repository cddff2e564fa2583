use std::collections::BTreeSet;

use ldiag::{
    codes_up_to, counit, quantum_shuffle, shifted_concat_all, twist_product, zeta_eval, CoeffPoly,
    DeformParams, DeformedAlgebra, DiagElement, DiagramCode, Hopf, LabeledDiagram, Monomial,
    MonomialWord, WordElement, ZetaWord,
};
use proptest::prelude::*;

fn monomial(max_var: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec((1..=max_var, 1u32..=3), 1..=3).prop_map(|f| Monomial::new(f).unwrap())
}

fn word(max_var: u32, max_len: usize) -> impl Strategy<Value = MonomialWord> {
    prop::collection::vec(monomial(max_var), 0..=max_len).prop_map(MonomialWord::new)
}

fn small_code() -> impl Strategy<Value = DiagramCode> {
    word(5, 4).prop_map(|w| w.compact())
}

fn matrix() -> impl Strategy<Value = LabeledDiagram> {
    small_code().prop_map(|c| LabeledDiagram::from_code(&c))
}

fn shuffled(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn compact_is_idempotent(w in word(12, 5)) {
        let c = w.compact();
        prop_assert_eq!(c.word().compact(), c.clone());
        prop_assert!(c.is_compact());
    }

    #[test]
    fn compact_ignores_translation(w in word(8, 5), n in 0u32..20) {
        prop_assert_eq!(w.translate(n).compact(), w.compact());
    }

    #[test]
    fn compact_commutes_with_shifted_concat(u in word(8, 4), v in word(8, 4)) {
        let lhs = u.shifted_concat(&v).compact();
        let rhs = u.compact().shifted_concat(&v.compact());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn compact_prefix_of_compact_concat(u in word(6, 3), v in word(6, 3)) {
        if u.shifted_concat(&v).is_compact() {
            prop_assert!(u.is_compact());
        }
    }

    #[test]
    fn factorization_round_trip(c in small_code()) {
        let factors = c.factorize();
        prop_assert_eq!(shifted_concat_all(&factors), c.clone());
        for f in &factors {
            prop_assert!(f.is_irreducible());
            prop_assert_eq!(f.factorize(), vec![f.clone()]);
        }
        let cuts: Vec<usize> = (1..c.len()).filter(|&t| c.overlap_gauge(t).unwrap() == 0).collect();
        prop_assert_eq!(cuts.len() + 1, factors.len().max(1));
    }

    #[test]
    fn word_text_round_trip(w in word(12, 5)) {
        prop_assert_eq!(w.to_string().parse::<MonomialWord>().unwrap(), w);
    }

    #[test]
    fn code_and_matrix_are_inverse(c in small_code()) {
        let d = LabeledDiagram::from_code(&c);
        prop_assert_eq!(d.code(), c.clone());
        prop_assert_eq!(d.lines(), c.weight());
    }

    #[test]
    fn row_restriction_matches_subword(c in small_code(), mask in 0u32..16) {
        let rows: Vec<usize> = (0..c.len()).filter(|i| mask >> i & 1 == 1).collect();
        let d = LabeledDiagram::from_code(&c).restrict_rows(&rows).unwrap();
        let positions: BTreeSet<usize> = rows.iter().copied().collect();
        prop_assert_eq!(d.code(), c.subword(&positions).unwrap().compact());
    }

    #[test]
    fn canonical_form_is_a_class_invariant(
        (d, rp, cp) in matrix().prop_flat_map(|d| {
            let (r, c) = (d.rows(), d.cols());
            (Just(d), shuffled(r), shuffled(c))
        })
    ) {
        let p = d.permute(&rp, &cp);
        prop_assert_eq!(p.forget_labels(), d.forget_labels());
        prop_assert_eq!(d.forget_labels().matrix().spot_types(), d.spot_types());
    }

    #[test]
    fn twisted_law_is_graded(u in word(3, 3), v in word(3, 3)) {
        let p = twist_product(&u, &v);
        for (w, _) in &p {
            prop_assert_eq!(w.weight(), u.weight() + v.weight());
        }
    }

    #[test]
    fn qs_zero_gives_quantum_shuffle(u in word(3, 3), v in word(3, 3)) {
        let p: WordElement = twist_product(&u, &v)
            .map_coeffs(|c| c.substitute(&CoeffPoly::qc(), &CoeffPoly::zero()));
        prop_assert_eq!(p, quantum_shuffle(&u, &v));
    }

    #[test]
    fn zeta_truncation_is_monotone(
        s in prop::collection::vec(1u32..4, 1..3).prop_map(|mut s| { s[0] += 1; s }),
        n in 10usize..200,
    ) {
        let zw = ZetaWord::positive(s).unwrap();
        let a = zeta_eval(&zw, n).unwrap();
        let b = zeta_eval(&zw, n + 1).unwrap();
        let c = zeta_eval(&zw, 2 * n).unwrap();
        prop_assert!(a.value <= b.value);
        prop_assert!(a.value <= c.value + c.tail_bound);
        prop_assert!(c.value - a.value <= a.tail_bound);
    }
}

#[test]
fn shifted_concat_is_associative_on_small_words() {
    let words: Vec<MonomialWord> = codes_up_to(4)
        .into_iter()
        .map(DiagramCode::into_word)
        .collect();
    let words: Vec<&MonomialWord> = words.iter().filter(|w| w.weight() <= 2).collect();
    for a in &words {
        assert_eq!(MonomialWord::empty().shifted_concat(a), **a);
        assert_eq!(a.shifted_concat(&MonomialWord::empty()), **a);
        for b in &words {
            for c in &words {
                assert_eq!(
                    a.shifted_concat(b).shifted_concat(c),
                    a.shifted_concat(&b.shifted_concat(c))
                );
            }
        }
    }
}

#[test]
fn basis_elements_multiply() {
    let alg = DeformedAlgebra::new(DeformParams::symbolic(0).unwrap());
    let irreducible: Vec<DiagramCode> = codes_up_to(3)
        .into_iter()
        .filter(DiagramCode::is_irreducible)
        .collect();
    for a in &irreducible {
        for b in &irreducible {
            let lhs = alg.product(&alg.basis_element(a), &alg.basis_element(b));
            assert_eq!(lhs, alg.basis_element(&a.shifted_concat(b)), "{a} {b}");
        }
    }
}

#[test]
fn one_one_products_are_multiplicity_free() {
    let alg = DeformedAlgebra::new(DeformParams::numeric(1, 1, 1).unwrap());
    let codes = codes_up_to(3);
    for a in &codes {
        for b in &codes {
            for (_, c) in alg.product_codes(a, b).iter() {
                assert!(c.is_one(), "{a} * {b}");
            }
        }
    }
}

#[test]
fn counit_of_coproduct_terms() {
    let h = Hopf::new(DeformParams::numeric(0, 0, 0).unwrap());
    let w: DiagramCode = "[x1, x2*x3]".parse().unwrap();
    let d = h.coproduct(&w);
    let left: DiagElement = d
        .iter()
        .map(|((a, b), c)| (b.clone(), &counit(&DiagElement::basis(a.clone())) * c))
        .collect();
    assert_eq!(left, DiagElement::basis(w));
}
