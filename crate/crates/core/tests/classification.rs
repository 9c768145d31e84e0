//! The classification tables of the three shipped archetype systems, pinned
//! class by class: six weak factorization systems and nine model structures
//! on sets, six and seven on pointed sets, four and five on vector spaces.

use modelcat::archetypes::{
    class_label, enumerate_model_structures, enumerate_wfs, homotopy_table_label, named_classes,
    pointed_system, set_system, vect_system, wfs_hasse, ArchRejectionReason, ArchWfs,
    ArchetypeClass, ArchetypeSystem,
};

fn class(sys: &ArchetypeSystem, names: &[&str]) -> ArchetypeClass {
    sys.class_of_names(names).expect("known archetype names")
}

fn wfs_set(sys: &ArchetypeSystem, pairs: &[(&[&str], &[&str])]) -> Vec<ArchWfs> {
    let mut out: Vec<ArchWfs> = pairs
        .iter()
        .map(|(l, r)| ArchWfs { left: class(sys, l), right: class(sys, r) })
        .collect();
    out.sort();
    out
}

const SET_ANY: &[&str] = &["iso_empty", "iso", "mono_empty", "mono", "epi", "gen"];
const SET_BIJ: &[&str] = &["iso_empty", "iso"];
const SET_INJ: &[&str] = &["iso_empty", "iso", "mono_empty", "mono"];
const SET_SURJ: &[&str] = &["iso_empty", "iso", "epi"];
const SET_SURJ_OR_EMPTY: &[&str] = &["iso_empty", "iso", "mono_empty", "epi"];
const SET_BIJ_OR_EMPTY: &[&str] = &["iso_empty", "iso", "mono_empty"];
const SET_INJ_NONEMPTY: &[&str] = &["iso_empty", "iso", "mono"];
const SET_ANY_NONEMPTY: &[&str] = &["iso_empty", "iso", "mono", "epi", "gen"];

#[test]
fn six_wfs_on_sets() {
    let sys = set_system().unwrap();
    let expected = wfs_set(
        &sys,
        &[
            (SET_BIJ, SET_ANY),
            (SET_INJ, SET_SURJ),
            (SET_INJ_NONEMPTY, SET_SURJ_OR_EMPTY),
            (SET_SURJ, SET_INJ),
            (SET_ANY_NONEMPTY, SET_BIJ_OR_EMPTY),
            (SET_ANY, SET_BIJ),
        ],
    );
    assert_eq!(enumerate_wfs(&sys), expected);
}

#[test]
fn set_wfs_hasse_diagram_shape() {
    let sys = set_system().unwrap();
    let wfs = enumerate_wfs(&sys);
    let edges = wfs_hasse(&wfs);
    assert_eq!(wfs.len(), 6);
    assert_eq!(edges.len(), 7);
    let label = |i: usize| class_label(&sys, &wfs[i].left);
    let named: Vec<(String, String)> =
        edges.iter().map(|&(a, b)| (label(a), label(b))).collect();
    for expected in [
        ("bij", "inj_{≠∅}∪{id_∅}"),
        ("bij", "surj"),
        ("inj_{≠∅}∪{id_∅}", "inj"),
        ("inj_{≠∅}∪{id_∅}", "any_{≠∅}∪{id_∅}"),
        ("surj", "any_{≠∅}∪{id_∅}"),
        ("inj", "any"),
        ("any_{≠∅}∪{id_∅}", "any"),
    ] {
        assert!(
            named.contains(&(expected.0.to_string(), expected.1.to_string())),
            "missing cover edge {expected:?} in {named:?}"
        );
    }
}

#[test]
fn nine_model_structures_on_sets() {
    let sys = set_system().unwrap();
    let (structures, _) = enumerate_model_structures(&sys);
    let rows: Vec<(ArchetypeClass, ArchetypeClass, ArchetypeClass)> = structures
        .iter()
        .map(|m| (m.cofibrations, m.fibrations, m.weak_equivalences))
        .collect();
    let mut expected: Vec<(ArchetypeClass, ArchetypeClass, ArchetypeClass)> = [
        (SET_BIJ, SET_ANY, SET_ANY),
        (SET_SURJ, SET_INJ, SET_ANY),
        (SET_INJ_NONEMPTY, SET_SURJ_OR_EMPTY, SET_ANY),
        (SET_ANY_NONEMPTY, SET_BIJ_OR_EMPTY, SET_ANY),
        (SET_INJ, SET_SURJ, SET_ANY),
        (SET_ANY, SET_BIJ, SET_ANY),
        (SET_INJ, SET_SURJ_OR_EMPTY, SET_ANY_NONEMPTY),
        (SET_ANY, SET_BIJ_OR_EMPTY, SET_ANY_NONEMPTY),
        (SET_ANY, SET_ANY, SET_BIJ),
    ]
    .iter()
    .map(|(c, f, w)| (class(&sys, c), class(&sys, f), class(&sys, w)))
    .collect();
    expected.sort();
    assert_eq!(rows, expected);
}

#[test]
fn set_homotopy_labels() {
    let sys = set_system().unwrap();
    let (structures, _) = enumerate_model_structures(&sys);
    let mut labels: Vec<&str> = structures
        .iter()
        .map(|m| homotopy_table_label(&sys, &m.weak_equivalences).expect("classified"))
        .collect();
    labels.sort();
    assert_eq!(
        labels,
        vec![
            "(-1)-types",
            "(-1)-types",
            "(-2)-types",
            "(-2)-types",
            "(-2)-types",
            "(-2)-types",
            "(-2)-types",
            "(-2)-types",
            "0-types",
        ]
    );
}

#[test]
fn set_rejection_log_carries_the_near_misses() {
    let sys = set_system().unwrap();
    let (_, rejections) = enumerate_model_structures(&sys);
    assert_eq!(rejections.len(), 9);
    for r in &rejections {
        assert!(matches!(r.reason, ArchRejectionReason::TwoOfThree(_)));
    }

    // The two incomparable middle-layer pairs. The first computes weak
    // equivalences surj∪inj_∅.
    let lower_c1 = ArchWfs { left: class(&sys, SET_SURJ), right: class(&sys, SET_INJ) };
    let upper_mid =
        ArchWfs { left: class(&sys, SET_ANY_NONEMPTY), right: class(&sys, SET_BIJ_OR_EMPTY) };
    let c1 = rejections
        .iter()
        .find(|r| r.lower == lower_c1 && r.upper == upper_mid)
        .expect("first middle-layer candidate is rejected");
    assert_eq!(c1.computed_w, class(&sys, SET_SURJ_OR_EMPTY));

    // The second computes all injections: the empty identity composed with
    // an empty inclusion realizes every map out of the empty set.
    let lower_c2 =
        ArchWfs { left: class(&sys, SET_INJ_NONEMPTY), right: class(&sys, SET_SURJ_OR_EMPTY) };
    let c2 = rejections
        .iter()
        .find(|r| r.lower == lower_c2 && r.upper == upper_mid)
        .expect("second middle-layer candidate is rejected");
    assert_eq!(c2.computed_w, class(&sys, SET_INJ));

    // The class inj_{≠∅}∪{id_∅} also shows up as a computed weak
    // equivalence class, for the pair below the discrete structure.
    let top = ArchWfs { left: class(&sys, SET_ANY), right: class(&sys, SET_BIJ) };
    let below_top = rejections
        .iter()
        .find(|r| r.lower == lower_c2 && r.upper == top)
        .expect("candidate below the discrete structure is rejected");
    assert_eq!(below_top.computed_w, class(&sys, SET_INJ_NONEMPTY));

    // Every rejected candidate here fails two-of-three with a concrete
    // realizable triple; the classic witness is a split injection.
    for r in [c1, c2, below_top] {
        let ArchRejectionReason::TwoOfThree(triple) = r.reason else {
            panic!("expected a two-of-three witness");
        };
        let members = [triple.first, triple.second, triple.composite]
            .iter()
            .filter(|&&t| r.computed_w.contains(t))
            .count();
        assert_eq!(members, 2);
        assert!(sys.composites(triple.first, triple.second).contains(triple.composite));
    }

    // The first near-miss is witnessed by mono-then-epi composing to an iso.
    let ArchRejectionReason::TwoOfThree(triple) = c1.reason else { unreachable!() };
    assert_eq!(sys.archetype(triple.first).name, "mono");
    assert_eq!(sys.archetype(triple.second).name, "epi");
    assert_eq!(sys.archetype(triple.composite).name, "iso");
}

const PT_ANY: &[&str] =
    &["iso", "epi_off", "epi_base", "epi_both", "mono", "gen_off", "gen_base", "gen_both"];
const PT_BIJ: &[&str] = &["iso"];
const PT_INJ: &[&str] = &["iso", "mono"];
const PT_SURJ: &[&str] = &["iso", "epi_off", "epi_base", "epi_both"];
const PT_FIBER_TRIVIAL: &[&str] = &["iso", "epi_off", "mono", "gen_off"];
const PT_INJ_OFF: &[&str] = &["iso", "epi_base", "mono", "gen_base"];
const PT_SURJ_FIBER_TRIVIAL: &[&str] = &["iso", "epi_off"];
const PT_SURJ_INJ_OFF: &[&str] = &["iso", "epi_base"];

#[test]
fn six_wfs_on_pointed_sets() {
    let sys = pointed_system().unwrap();
    let expected = wfs_set(
        &sys,
        &[
            (PT_BIJ, PT_ANY),
            (PT_INJ, PT_SURJ),
            (PT_SURJ_INJ_OFF, PT_FIBER_TRIVIAL),
            (PT_SURJ, PT_INJ),
            (PT_INJ_OFF, PT_SURJ_FIBER_TRIVIAL),
            (PT_ANY, PT_BIJ),
        ],
    );
    assert_eq!(enumerate_wfs(&sys), expected);
    let edges = wfs_hasse(&enumerate_wfs(&sys));
    assert_eq!(edges.len(), 7);
}

#[test]
fn seven_model_structures_on_pointed_sets() {
    let sys = pointed_system().unwrap();
    let (structures, _) = enumerate_model_structures(&sys);
    let mut expected: Vec<_> = [
        (PT_ANY, PT_ANY, PT_BIJ),
        (PT_ANY, PT_BIJ, PT_ANY),
        (PT_BIJ, PT_ANY, PT_ANY),
        (PT_INJ, PT_SURJ, PT_ANY),
        (PT_SURJ, PT_INJ, PT_ANY),
        (PT_SURJ_INJ_OFF, PT_FIBER_TRIVIAL, PT_ANY),
        (PT_INJ_OFF, PT_SURJ_FIBER_TRIVIAL, PT_ANY),
    ]
    .iter()
    .map(|(c, f, w)| (class(&sys, c), class(&sys, f), class(&sys, w)))
    .collect();
    expected.sort();
    let rows: Vec<_> = structures
        .iter()
        .map(|m| (m.cofibrations, m.fibrations, m.weak_equivalences))
        .collect();
    assert_eq!(rows, expected);
    let labels: Vec<_> = structures
        .iter()
        .map(|m| homotopy_table_label(&sys, &m.weak_equivalences).expect("classified"))
        .collect();
    assert_eq!(labels.iter().filter(|l| **l == "(-2)-types").count(), 6);
    assert_eq!(labels.iter().filter(|l| **l == "pointed 0-types").count(), 1);
}

const VECT_HOM: &[&str] = &["iso", "mono", "epi", "gen"];
const VECT_ISO: &[&str] = &["iso"];
const VECT_MON: &[&str] = &["iso", "mono"];
const VECT_EPI: &[&str] = &["iso", "epi"];

#[test]
fn four_wfs_on_vector_spaces() {
    let sys = vect_system().unwrap();
    let expected = wfs_set(
        &sys,
        &[
            (VECT_ISO, VECT_HOM),
            (VECT_MON, VECT_EPI),
            (VECT_EPI, VECT_MON),
            (VECT_HOM, VECT_ISO),
        ],
    );
    assert_eq!(enumerate_wfs(&sys), expected);
    // The diamond: four cover edges.
    assert_eq!(wfs_hasse(&enumerate_wfs(&sys)).len(), 4);
}

#[test]
fn five_model_structures_on_vector_spaces() {
    let sys = vect_system().unwrap();
    let (structures, _) = enumerate_model_structures(&sys);
    let mut expected: Vec<_> = [
        (VECT_HOM, VECT_HOM, VECT_ISO),
        (VECT_HOM, VECT_ISO, VECT_HOM),
        (VECT_ISO, VECT_HOM, VECT_HOM),
        (VECT_MON, VECT_EPI, VECT_HOM),
        (VECT_EPI, VECT_MON, VECT_HOM),
    ]
    .iter()
    .map(|(c, f, w)| (class(&sys, c), class(&sys, f), class(&sys, w)))
    .collect();
    expected.sort();
    let rows: Vec<_> = structures
        .iter()
        .map(|m| (m.cofibrations, m.fibrations, m.weak_equivalences))
        .collect();
    assert_eq!(rows, expected);
}

#[test]
fn named_orthogonals_of_single_archetypes() {
    let sys = set_system().unwrap();
    let single = |name: &str| class(&sys, &[name]);
    let (_, right) = sys.orthogonals(&single("mono_empty"));
    assert_eq!(right, class(&sys, SET_SURJ));
    let (_, right) = sys.orthogonals(&single("mono"));
    assert_eq!(right, class(&sys, SET_SURJ_OR_EMPTY));
    let (_, right) = sys.orthogonals(&single("gen"));
    assert_eq!(right, class(&sys, SET_BIJ_OR_EMPTY));
}

#[test]
fn two_of_three_verdicts_on_named_classes() {
    let sys = set_system().unwrap();
    assert!(sys.two_of_three(&sys.full_class()).is_ok());
    assert!(sys.two_of_three(&class(&sys, SET_ANY_NONEMPTY)).is_ok());
    let err = sys.two_of_three(&class(&sys, SET_SURJ_OR_EMPTY)).unwrap_err();
    assert_eq!(sys.archetype(err.first).name, "mono");
    assert_eq!(sys.archetype(err.second).name, "epi");
    assert_eq!(sys.archetype(err.composite).name, "iso");
}

#[test]
fn pointed_injectivity_splits_at_the_basepoint_fiber() {
    let sys = pointed_system().unwrap();
    let inj = class(&sys, PT_INJ);
    assert_eq!(inj, class(&sys, PT_FIBER_TRIVIAL).intersection(&class(&sys, PT_INJ_OFF)));
}

#[test]
fn vect_lifting_is_symmetric_in_monos_and_epis() {
    let sys = vect_system().unwrap();
    let mono = sys.index_of_name("mono").unwrap();
    let epi = sys.index_of_name("epi").unwrap();
    assert!(sys.lifts(mono, epi));
    assert!(sys.lifts(epi, mono));
    assert!(!sys.lifts(mono, mono));
    assert!(!sys.lifts(epi, epi));
}

#[test]
fn class_labels_cover_the_named_classes() {
    for sys in [set_system().unwrap(), pointed_system().unwrap(), vect_system().unwrap()] {
        for (cls, label) in named_classes(&sys) {
            assert_eq!(class_label(&sys, &cls), label);
        }
    }
}
