use std::sync::Arc;

use proptest::prelude::*;

use linfty::graded::{format_scalar, parse_scalar, ratio, GradedSpace};
use linfty::io::random::{random_family, rng};
use linfty::io::{random_instance, Model, RandomKind, RandomParams};
use linfty::linfty::{check_jacobi, check_square_zero, decalage, inverse_decalage, SkewBrackets};
use linfty::sym::{
    coassociativity_defect, cocommutativity_defect, monomials_up_to, normalize, rn_bracket, Coderivation,
};
use linfty::Bounds;

fn space(degrees: &[i32]) -> Arc<GradedSpace> {
    Arc::new(GradedSpace::new(degrees.iter().enumerate().map(|(i, &d)| (format!("x{i}"), d))).unwrap())
}

fn degrees() -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec(-3..=3i32, 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coproduct_is_coassociative_and_cocommutative(d in degrees()) {
        let s = space(&d);
        for x in monomials_up_to(&s, 4) {
            prop_assert!(coassociativity_defect(&s, &x).is_zero());
            prop_assert!(cocommutativity_defect(&s, &x).is_zero());
        }
    }

    #[test]
    fn every_family_extends_to_a_coderivation(d in degrees(), degree in -1..=1i32, seed in any::<u64>()) {
        let s = space(&d);
        let q = random_family(&mut rng(seed), &s, &s, degree, 3, 0.5, |_| true);
        let coder = Coderivation::from_family(q.clone()).unwrap();
        for x in monomials_up_to(&s, 4) {
            prop_assert!(coder.law_defect(&x).is_zero());
            prop_assert_eq!(coder.eval_monomial(&x).weight_component(1), q.eval_monomial(&x));
        }
    }

    #[test]
    fn jacobi_paths_agree_on_arbitrary_brackets(d in degrees(), seed in any::<u64>()) {
        let s = space(&d);
        let l = random_family(&mut rng(seed), &s, &s, 1, 3, 0.3, |_| true);
        let b = Bounds::new(4, 4).unwrap();
        let fast = check_jacobi(&l, b).unwrap();
        let slow = check_square_zero(&l, b).unwrap();
        prop_assert_eq!(fast.pass, slow.pass);
        prop_assert_eq!(fast.witness.map(|w| w.weight), slow.witness.map(|w| w.weight));
    }

    #[test]
    fn rn_bracket_is_graded_antisymmetric(d in degrees(), df in -1..=1i32, dg in -1..=1i32, seed in any::<u64>()) {
        let s = space(&d);
        let mut r = rng(seed);
        let f = random_family(&mut r, &s, &s, df, 2, 0.4, |_| true);
        let g = random_family(&mut r, &s, &s, dg, 2, 0.4, |_| true);
        let fg = rn_bracket(&f, &g, 4).unwrap();
        let gf = rn_bracket(&g, &f, 4).unwrap();
        let c = if (df * dg).rem_euclid(2) == 1 { 1 } else { -1 };
        let mut total = fg.clone();
        total.add_scaled(&gf, &ratio(-c, 1)).unwrap();
        prop_assert!(total.is_zero(), "{}", total.display());
    }

    #[test]
    fn decalage_roundtrips(d in prop::collection::vec(-1..=2i32, 1..=3), seed in any::<u64>()) {
        let s = space(&d);
        let mut sk = SkewBrackets::new(s.clone());
        let mut r = rng(seed);
        for w in monomials_up_to(&s, 2).into_iter().filter(|m| m.weight() == 2) {
            let word: Vec<usize> = w.letters().iter().map(|&l| l as usize).collect();
            let want: i32 = word.iter().map(|&l| s.degree(l)).sum();
            for o in 0..s.dim() {
                if s.degree(o) == want && rand::Rng::gen_bool(&mut r, 0.5) {
                    let _ = sk.add(&word, o, ratio(rand::Rng::gen_range(&mut r, -2..=2), 1));
                }
            }
        }
        let l = decalage(&sk).unwrap();
        let back = inverse_decalage(&l).unwrap();
        prop_assert_eq!(decalage(&back).unwrap(), l);
    }

    #[test]
    fn sorting_sign_is_a_homomorphism(d in degrees(), word in prop::collection::vec(0..3u16, 0..6)) {
        // sorting w directly and sorting its reversal then reversing back agree
        let s = space(&d);
        let word: Vec<u16> = word.into_iter().filter(|&l| (l as usize) < s.dim()).collect();
        let direct = normalize(&s, &word);
        let rev: Vec<u16> = word.iter().rev().copied().collect();
        let via = normalize(&s, &rev);
        let odd: Vec<bool> = word.iter().map(|&l| s.degree(l as usize).rem_euclid(2) == 1).collect();
        let k = odd.iter().filter(|&&o| o).count();
        let reversal = (k * k.saturating_sub(1) / 2) % 2 == 1;
        match (direct, via) {
            (None, None) => {}
            (Some((m1, n1)), Some((m2, n2))) => {
                prop_assert_eq!(m1, m2);
                prop_assert_eq!(n1, n2 ^ reversal);
            }
            _ => prop_assert!(false, "zero on one side only"),
        }
    }

    #[test]
    fn scalars_print_and_parse_back(p in -1000i64..1000, q in 1i64..1000) {
        let c = ratio(p, q);
        prop_assert_eq!(parse_scalar(&format_scalar(&c)).unwrap(), c);
    }

    #[test]
    fn random_files_roundtrip_byte_for_byte(seed in 0u64..1000, dim in 1usize..=4, kind in 0usize..5) {
        let kind = [
            RandomKind::GradedSpace,
            RandomKind::Family,
            RandomKind::Lie2Algebra,
            RandomKind::RepresentationFromModule,
            RandomKind::Perturbation,
        ][kind];
        let params = RandomParams { dim, ..RandomParams::default() };
        let text = random_instance(kind, seed, params).unwrap().to_text();
        prop_assert_eq!(&random_instance(kind, seed, params).unwrap().to_text(), &text);
        let model = Model::from_text(&text).unwrap();
        prop_assert_eq!(model.save(), text);
    }
}
