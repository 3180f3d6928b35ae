use equimatch::conventions::LabelConvention;
use equimatch::ktheory::{
    compute_k_matching, first_order_check_two_points, freeness_probe_k, k_restrictions,
    longest_element_relabeling_inverts_q,
};

#[test]
fn three_points_ratio_is_cyclotomic_with_laurent_entries() {
    let k = compute_k_matching(3, LabelConvention::default()).unwrap();
    assert!(k.ratio.is_fully_cyclotomic());
    assert_eq!(k.observed_indices(), vec![1, 2, 4]);
    assert!(k.a_laurent.is_some());
    assert!(k.integral);
    assert!(k.within_spin_bound());
    assert!(!k.within_rotation_bound());
    assert!(k.q_inversion_symmetric);
}

#[test]
fn longest_element_relabeling_inverts_q_up_to_four_points() {
    for n in 2..=4 {
        assert!(longest_element_relabeling_inverts_q(&k_restrictions(n, LabelConvention::default()).unwrap()));
    }
}

#[test]
fn freeness_and_first_order() {
    for n in 2..=3 {
        assert!(freeness_probe_k(n).unwrap().passed(), "n={n}");
    }
    let f = first_order_check_two_points().unwrap();
    assert!(f.conf_matches && f.flag_matches && f.matching_matches);
}
