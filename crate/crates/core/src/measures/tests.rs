use super::*;
use crate::distribution::{ExclusionKind, Joint2, Joint3};
use crate::mass::{ratio, Rational};

const TOL: f64 = 1e-12;
const BITS: LogBase = LogBase::BITS;

fn grid(rows: &[&[(i64, i64)]]) -> Joint2<Rational> {
    Joint2::from_grid(
        rows.iter()
            .map(|r| r.iter().map(|&(n, d)| ratio(n, d)).collect())
            .collect(),
    )
    .unwrap()
}

fn uniform() -> Joint2<Rational> {
    grid(&[&[(1, 4), (1, 4)], &[(1, 4), (1, 4)]])
}

fn worked_xy() -> Joint2<Rational> {
    grid(&[&[(1, 4), (1, 4)], &[(1, 8), (3, 8)]])
}

fn worked_xz() -> Joint2<Rational> {
    grid(&[&[(1, 2), (0, 1)], &[(1, 4), (1, 4)]])
}

fn misinforming() -> Joint2<Rational> {
    grid(&[&[(1, 4), (1, 4)], &[(1, 2), (0, 1)]])
}

fn bits3(f: impl Fn(usize, usize, usize) -> Rational) -> Joint3<Rational> {
    Joint3::from_grid(
        (0..2)
            .map(|x| (0..2).map(|y| (0..2).map(|z| f(x, y, z)).collect()).collect())
            .collect(),
    )
    .unwrap()
}

fn independent_bits() -> Joint3<Rational> {
    bits3(|_, _, _| ratio(1, 8))
}

fn copied_bit() -> Joint3<Rational> {
    bits3(|x, y, z| if x == y && y == z { ratio(1, 2) } else { ratio(0, 1) })
}

/// A fixed 2×2×2 rational distribution with no symmetry.
fn lopsided() -> Joint3<Rational> {
    let n = [[[3, 1], [4, 1]], [[5, 9], [2, 6]]];
    bits3(|x, y, z| ratio(n[x][y][z], 31))
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOL || a == b
}

#[test]
fn pointwise_entropy_examples() {
    assert_eq!(pointwise_entropy(&ratio(1, 1), BITS).unwrap().value(), 0.0);
    let h = pointwise_entropy(&ratio(3, 8), BITS).unwrap().value();
    assert!(close(h, (8.0f64 / 3.0).log2()));
    assert!((h - 1.415).abs() < 1e-3);
    assert_eq!(pointwise_entropy(&0.0, BITS).unwrap().value(), f64::INFINITY);
    assert!(pointwise_entropy(&1.5, BITS).is_err());
    assert!(pointwise_entropy(&-0.1, BITS).is_err());
    let nats = pointwise_entropy(&0.5, LogBase::NATS).unwrap().value();
    assert!(close(nats, std::f64::consts::LN_2));
}

#[test]
fn pmi_examples() {
    assert_eq!(pmi(&uniform(), 0, 0, BITS).unwrap().value(), 0.0);
    assert!(close(pmi(&worked_xy(), 0, 0, BITS).unwrap().value(), (4.0f64 / 3.0).log2()));
    let neg = pmi(&misinforming(), 0, 0, BITS).unwrap().value();
    assert!(close(neg, (2.0f64 / 3.0).log2()));
    assert!((neg + 0.585).abs() < 1e-3);

    let empty_row = grid(&[&[(0, 1), (0, 1)], &[(1, 2), (1, 2)]]);
    assert_eq!(pmi(&empty_row, 0, 0, BITS), Err(Error::ZeroMarginal("x1".into())));
    let empty_col = grid(&[&[(0, 1), (1, 2)], &[(0, 1), (1, 2)]]);
    assert_eq!(pmi(&empty_col, 0, 0, BITS), Err(Error::ZeroMarginal("y1".into())));
    let zero_cell = grid(&[&[(0, 1), (1, 2)], &[(1, 4), (1, 4)]]);
    assert_eq!(pmi(&zero_cell, 0, 0, BITS).unwrap().value(), f64::NEG_INFINITY);
}

#[test]
fn decompose_worked_example() {
    let d = decompose(&worked_xy(), 0, 0, BITS).unwrap();
    assert!(close(d.i_plus_value(), (8.0f64 / 3.0).log2()));
    assert!(close(d.i_minus_value(), 1.0));
    assert!(close(d.pmi_value(), (4.0f64 / 3.0).log2()));
    assert_eq!(d.split.informative, ratio(3, 8));
    assert_eq!(d.split.misinformative, ratio(1, 4));
    assert_eq!(d.split.kind, ExclusionKind::Mixed);

    let d = decompose(&worked_xz(), 0, 0, BITS).unwrap();
    assert!(close(d.i_plus_value(), (4.0f64 / 3.0).log2()));
    assert_eq!(d.i_minus_value(), 0.0);
    assert!(close(d.pmi_value(), (4.0f64 / 3.0).log2()));
    assert_eq!(d.split.kind, ExclusionKind::PurelyInformative);

    let d = decompose(&uniform(), 0, 0, BITS).unwrap();
    assert_eq!((d.i_plus_value(), d.i_minus_value(), d.pmi_value()), (1.0, 1.0, 0.0));
}

#[test]
fn decompose_split_matches_cell_sums() {
    let j = worked_xy();
    for x in 0..2 {
        for y in 0..2 {
            assert_eq!(decompose(&j, x, y, BITS).unwrap().split, j.exclusion_split_at(x, y));
        }
    }
}

#[test]
fn zero_joint_mass_gives_extended_values() {
    let j = grid(&[&[(0, 1), (1, 2)], &[(1, 4), (1, 4)]]);
    let d = decompose(&j, 0, 0, BITS).unwrap();
    assert_eq!(d.pmi_value(), f64::NEG_INFINITY);
    assert_eq!(d.i_minus_value(), f64::INFINITY);
    assert!(d.i_plus_value().is_finite());
    assert!(d.pmi.agrees(&(&d.i_plus - &d.i_minus), 0.0));
}

#[test]
fn decompose_serializes_extended_values() {
    let j = grid(&[&[(0, 1), (1, 2)], &[(1, 4), (1, 4)]]);
    let json = serde_json::to_value(decompose(&j, 0, 0, BITS).unwrap()).unwrap();
    assert_eq!(json["pmi"], "-inf");
    assert_eq!(json["i_minus"], "inf");
    assert_eq!(json["split"]["misinformative"], "1/2");
    assert_eq!(json["split"]["informative"], "1/4");
    assert_eq!(json["split"]["kind"], "Mixed");
}

#[test]
fn exclusion_forms() {
    let s = |i, m| ExclusionSplit::new(i, m);
    assert_eq!(i_plus_from_exclusions(&s(ratio(0, 1), ratio(0, 1)), BITS).unwrap().value(), 0.0);
    assert_eq!(i_plus_from_exclusions(&s(ratio(1, 4), ratio(1, 4)), BITS).unwrap().value(), 1.0);
    let v = i_plus_from_exclusions(&s(ratio(3, 8), ratio(1, 4)), BITS).unwrap().value();
    assert!(close(v, (8.0f64 / 3.0).log2()));
    assert_eq!(
        i_plus_from_exclusions(&s(ratio(1, 2), ratio(1, 2)), BITS),
        Err(Error::DegenerateTotalExclusion)
    );

    let m = |mis, p_x| i_minus_from_exclusions(&s(ratio(0, 1), mis), &p_x, BITS);
    assert_eq!(m(ratio(0, 1), ratio(1, 3)).unwrap().value(), 0.0);
    assert_eq!(m(ratio(1, 4), ratio(1, 2)).unwrap().value(), 1.0);
    assert_eq!(m(ratio(1, 2), ratio(1, 2)).unwrap().value(), f64::INFINITY);
    assert!(matches!(m(ratio(0, 1), ratio(0, 1)), Err(Error::ZeroMarginal(_))));
}

#[test]
fn purely_informative_closed_form() {
    assert_eq!(pmi_purely_informative(&ratio(0, 1), BITS).unwrap().value(), 0.0);
    assert_eq!(pmi_purely_informative(&ratio(1, 2), BITS).unwrap().value(), 1.0);
    let diag = grid(&[&[(1, 2), (0, 1)], &[(0, 1), (1, 2)]]);
    assert_eq!(decompose(&diag, 0, 0, BITS).unwrap().pmi_value(), 1.0);
    let v = pmi_purely_informative(&ratio(1, 4), BITS).unwrap();
    assert!(v.agrees(&decompose(&worked_xz(), 0, 0, BITS).unwrap().pmi, 0.0));
    assert_eq!(
        pmi_purely_informative(&ratio(1, 1), BITS),
        Err(Error::DegenerateTotalExclusion)
    );
}

#[test]
fn purely_misinformative_closed_form() {
    assert_eq!(
        pmi_purely_misinformative(&ratio(0, 1), &ratio(2, 5), BITS).unwrap().value(),
        0.0
    );
    let v = pmi_purely_misinformative(&ratio(1, 4), &ratio(1, 2), BITS).unwrap();
    assert!(close(v.value(), (2.0f64 / 3.0).log2()));
    assert!(v.agrees(&pmi(&misinforming(), 0, 0, BITS).unwrap(), 0.0));
    assert_eq!(
        pmi_purely_misinformative(&ratio(1, 4), &ratio(1, 1), BITS).unwrap().value(),
        0.0
    );
    assert_eq!(
        pmi_purely_misinformative(&ratio(1, 2), &ratio(1, 2), BITS).unwrap().value(),
        f64::NEG_INFINITY
    );
    assert!(matches!(
        pmi_purely_misinformative(&ratio(3, 4), &ratio(1, 2), BITS),
        Err(Error::MisinformativeExceedsEvent { .. })
    ));
    assert!(matches!(
        pmi_purely_misinformative(&ratio(0, 1), &ratio(0, 1), BITS),
        Err(Error::ZeroMarginal(_))
    ));
}

#[test]
fn conditional_on_a_sure_event_matches_plain() {
    let j2 = worked_xy();
    let j3 = j2.embed();
    for x in 0..2 {
        for y in 0..2 {
            let c = decompose_conditional(&j3, Ev::y(y), Ev::x(x), Ev::z(0), BITS).unwrap();
            let p = decompose(&j2, x, y, BITS).unwrap();
            assert!(c.i_plus.agrees(&p.i_plus, 0.0));
            assert!(c.i_minus.agrees(&p.i_minus, 0.0));
            assert!(c.pmi.agrees(&p.pmi, 0.0));
            assert_eq!(c.split, p.split);
        }
    }
}

#[test]
fn three_variable_forms_on_independent_and_copied_bits() {
    let u = independent_bits();
    let c = decompose_conditional(&u, Ev::y(0), Ev::x(0), Ev::z(0), BITS).unwrap();
    assert_eq!((c.i_plus_value(), c.i_minus_value(), c.pmi_value()), (1.0, 1.0, 0.0));
    let s = decompose_joint_source(&u, Ev::y(0), Ev::z(0), Ev::x(0), BITS).unwrap();
    assert_eq!((s.i_plus_value(), s.i_minus_value(), s.pmi_value()), (2.0, 2.0, 0.0));
    let t = decompose_joint_target(&u, Ev::y(0), Ev::x(0), Ev::z(0), BITS).unwrap();
    assert_eq!((t.i_plus_value(), t.i_minus_value(), t.pmi_value()), (1.0, 1.0, 0.0));

    let c3 = copied_bit();
    let s = decompose_joint_source(&c3, Ev::y(0), Ev::z(0), Ev::x(0), BITS).unwrap();
    assert_eq!((s.i_plus_value(), s.i_minus_value(), s.pmi_value()), (1.0, 0.0, 1.0));
    let t = decompose_joint_target(&c3, Ev::y(0), Ev::x(0), Ev::z(0), BITS).unwrap();
    assert_eq!((t.i_plus_value(), t.i_minus_value(), t.pmi_value()), (1.0, 0.0, 1.0));
}

/// Oracle: the three-variable forms evaluated straight from hand-summed
/// cell masses of `lopsided()` (numerators over 31).
#[test]
fn three_variable_forms_against_hand_sums() {
    let j = lopsided();
    // x1 = [[3,1],[4,1]], x2 = [[5,9],[2,6]]
    let p_y1 = ratio(3 + 1 + 5 + 9, 31);
    let p_z1 = ratio(3 + 4 + 5 + 2, 31);
    let p_x1 = ratio(3 + 1 + 4 + 1, 31);
    let p_y1z1 = ratio(3 + 5, 31);
    let p_x1z1 = ratio(3 + 4, 31);
    let p_x1y1z1 = ratio(3, 31);
    let p_x1y1 = ratio(3 + 1, 31);

    let c = decompose_conditional(&j, Ev::y(0), Ev::x(0), Ev::z(0), BITS).unwrap();
    assert!(c.i_plus.agrees(&Info::surprisal(p_y1z1.clone() / p_z1.clone(), BITS), 0.0));
    assert!(c.i_minus.agrees(&Info::surprisal(p_x1y1z1.clone() / p_x1z1.clone(), BITS), 0.0));
    assert!(close(
        c.pmi_value(),
        (p_x1y1z1.to_f64() * p_z1.to_f64() / (p_x1z1.to_f64() * p_y1z1.to_f64())).log2()
    ));

    let s = decompose_joint_source(&j, Ev::y(0), Ev::z(0), Ev::x(0), BITS).unwrap();
    assert!(s.i_plus.agrees(&Info::surprisal(p_y1z1.clone(), BITS), 0.0));
    assert!(s.i_minus.agrees(&Info::surprisal(p_x1y1z1.clone() / p_x1.clone(), BITS), 0.0));

    let t = decompose_joint_target(&j, Ev::y(0), Ev::x(0), Ev::z(0), BITS).unwrap();
    assert!(t.i_plus.agrees(&Info::surprisal(p_y1.clone(), BITS), 0.0));
    assert!(t.i_minus.agrees(&Info::surprisal(p_x1y1z1.clone() / p_x1z1.clone(), BITS), 0.0));

    // and the x1y1 cell sum drives the plain XY decomposition
    let plain = decompose(&j.pair(Var::X, Var::Y), 0, 0, BITS).unwrap();
    assert!(plain.i_minus.agrees(&Info::surprisal(p_x1y1 / p_x1, BITS), 0.0));
}

#[test]
fn conditional_errors() {
    let j = bits3(|_, _, z| if z == 1 { ratio(0, 1) } else { ratio(1, 4) });
    assert_eq!(
        decompose_conditional(&j, Ev::y(0), Ev::x(0), Ev::z(1), BITS),
        Err(Error::ZeroConditioningEvent("z2".into()))
    );
    assert!(matches!(
        decompose_conditional(&j, Ev::y(0), Ev::y(1), Ev::z(0), BITS),
        Err(Error::InvalidEvents(_))
    ));
    assert!(matches!(
        decompose_events(&j, &[], &[Ev::x(0)], &[], BITS),
        Err(Error::InvalidEvents(_))
    ));
    let c = copied_bit();
    assert_eq!(
        decompose_conditional(&c, Ev::y(1), Ev::x(0), Ev::z(0), BITS),
        Err(Error::ZeroMarginal("y2".into()))
    );
}

#[test]
fn average_information() {
    assert_eq!(average_info_to_target(&uniform(), 0, BITS).unwrap(), 0.0);
    let v = average_info_to_target(&worked_xy(), 0, BITS).unwrap();
    // KL(P(X|y1) ‖ P(X)) with P(X|y1) = (2/3, 1/3), P(X) = (1/2, 1/2)
    let kl = (2.0 / 3.0) * ((2.0 / 3.0) / 0.5f64).log2() + (1.0 / 3.0) * ((1.0 / 3.0) / 0.5f64).log2();
    assert!(close(v, kl));
    assert!(v > 0.0);
    let empty_col = grid(&[&[(0, 1), (1, 2)], &[(0, 1), (1, 2)]]);
    assert!(matches!(
        average_info_to_target(&empty_col, 0, BITS),
        Err(Error::ZeroMarginal(_))
    ));
}

use crate::distribution::Var;

mod properties {
    use super::*;
    use proptest::prelude::*;

    fn joint2() -> impl Strategy<Value = Joint2<f64>> {
        (1usize..4, 1usize..4)
            .prop_flat_map(|(nx, ny)| proptest::collection::vec(0.01f64..1.0, nx * ny).prop_map(move |w| (nx, ny, w)))
            .prop_map(|(_, ny, w)| {
                let total: f64 = w.iter().sum();
                let rows = w.chunks(ny).map(|r| r.iter().map(|v| v / total).collect()).collect();
                Joint2::from_grid(rows).unwrap()
            })
    }

    proptest! {
        #[test]
        fn decomposition_identity(j in joint2()) {
            let (nx, ny) = j.shape();
            for x in 0..nx {
                for y in 0..ny {
                    let d = decompose(&j, x, y, BITS).unwrap();
                    let direct = pmi(&j, x, y, BITS).unwrap().value();
                    prop_assert!(d.i_plus_value() >= -1e-12 && d.i_minus_value() >= -1e-12);
                    prop_assert!((direct - (d.i_plus_value() - d.i_minus_value())).abs() <= 1e-9);
                    let from_exc = i_plus_from_exclusions(&d.split, BITS).unwrap().value();
                    prop_assert!((from_exc - d.i_plus_value()).abs() <= 1e-9);
                    let from_exc = i_minus_from_exclusions(&d.split, &j.p_x(x), BITS).unwrap().value();
                    prop_assert!((from_exc - d.i_minus_value()).abs() <= 1e-9);
                }
            }
        }

        #[test]
        fn specificity_ignores_the_target(j in joint2()) {
            let (nx, ny) = j.shape();
            for y in 0..ny {
                let first = decompose(&j, 0, y, BITS).unwrap().i_plus_value();
                for x in 1..nx {
                    prop_assert_eq!(decompose(&j, x, y, BITS).unwrap().i_plus_value(), first);
                }
            }
        }

        #[test]
        fn sign_follows_posterior_shift(j in joint2()) {
            let (nx, ny) = j.shape();
            for x in 0..nx {
                for y in 0..ny {
                    let v = pmi(&j, x, y, BITS).unwrap().value();
                    let posterior = j.condition(y).unwrap().masses()[x];
                    let prior = j.p_x(x);
                    if posterior > prior + 1e-12 { prop_assert!(v > 0.0); }
                    if posterior < prior - 1e-12 { prop_assert!(v < 0.0); }
                }
            }
        }

        #[test]
        fn average_information_is_non_negative(j in joint2()) {
            for y in 0..j.shape().1 {
                prop_assert!(average_info_to_target(&j, y, BITS).unwrap() >= -1e-12);
            }
        }
    }
}
