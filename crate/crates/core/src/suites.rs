//! Named verification suites assembled from the module-level checks, shared
//! by the command-line front end and the acceptance tests.

use crate::lattice::{
    anticanonical, automorphism, basis_change_final, cartan_matrix, conjugation_identity_check,
    intersect, recurrence_lattice_action, recurrence_roots, reflection_map, standard_roots,
    standard_translation_map, surface_root_label_map, translation_vector, weyl_generator,
    preliminary_symmetry_roots, Basis, DivisorClass, ANTICANONICAL_MULTIPLICITIES,
};
use crate::orthopoly::{self, OpError, WeightParams};
use crate::painleve::base_points::{verify_base_points, BasePointParams, Surface};
use crate::painleve::{self, std_step_forward, StdOrbitState};
use crate::report::{CheckItem, VerificationReport};
use crate::weyl::{
    self, apply_generator, composed_recurrence_step, composed_standard_step, Generator,
    ParamPointState, WeylError,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::Rational;

/// Every exact lattice identity: root data, anticanonical decomposition,
/// reflection properties, the induced dynamics, the translation words, the
/// basis changes, and the conjugation identities.
pub fn lattice_suite() -> VerificationReport {
    let mut report = VerificationReport::new("lattice");

    let a3_cartan: [[i64; 4]; 4] = [
        [2, -1, 0, -1],
        [-1, 2, -1, 0],
        [0, -1, 2, -1],
        [-1, 0, -1, 2],
    ];
    let d5_edges = [(0usize, 2usize), (1, 2), (2, 3), (3, 4), (3, 5)];

    for roots in [standard_roots(), recurrence_roots()] {
        let tag = match roots.basis {
            Basis::FG => "standard",
            Basis::XY => "recurrence",
        };
        let delta = anticanonical(roots.basis);

        let all_minus_two = roots
            .surface_roots
            .iter()
            .chain(roots.symmetry_roots.iter())
            .all(|r| r.self_intersection() == -2);
        report.push(CheckItem::exact(format!("{tag}: all roots have self-intersection -2"), all_minus_two));

        let mut adjacency_ok = true;
        for i in 0..6 {
            for j in (i + 1)..6 {
                let ip = intersect(&roots.surface_roots[i], &roots.surface_roots[j]).expect("same basis");
                let expect = i64::from(d5_edges.contains(&(i, j)));
                adjacency_ok &= ip == expect;
            }
        }
        report.push(CheckItem::exact(format!("{tag}: surface roots realize the D5 affine diagram"), adjacency_ok));

        let cartan = cartan_matrix(&roots.symmetry_roots);
        let cartan_ok = (0..4).all(|i| cartan[i] == a3_cartan[i]);
        report.push(CheckItem::exact(format!("{tag}: symmetry-root Cartan matrix is affine A3"), cartan_ok));

        let mut sum = DivisorClass::zero(roots.basis);
        for (d, m) in roots.surface_roots.iter().zip(ANTICANONICAL_MULTIPLICITIES) {
            sum = sum.add(&d.scale(m)).expect("same basis");
        }
        report.push(CheckItem::exact(format!("{tag}: weighted surface roots sum to the anticanonical class"), sum == delta));
        let mut asum = DivisorClass::zero(roots.basis);
        for a in &roots.symmetry_roots {
            asum = asum.add(a).expect("same basis");
        }
        report.push(CheckItem::exact(format!("{tag}: symmetry roots sum to the anticanonical class"), asum == delta));
        report.push(CheckItem::exact(
            format!("{tag}: anticanonical class is null and orthogonal to the surface roots"),
            delta.self_intersection() == 0
                && roots
                    .surface_roots
                    .iter()
                    .all(|d| intersect(&delta, d).expect("same basis") == 0),
        ));

        let refl_ok = roots
            .surface_roots
            .iter()
            .chain(roots.symmetry_roots.iter())
            .all(|r| {
                let m = reflection_map(r).expect("-2 class");
                m.is_isometry()
                    && m.compose(&m).expect("same basis").is_identity()
                    && m.fixes(&delta)
            });
        report.push(CheckItem::exact(format!("{tag}: reflections are involutive isometries fixing delta"), refl_ok));
    }

    for j in 1..=3 {
        let s = automorphism(j);
        report.push(CheckItem::exact(
            format!("sigma_{j} is an involutive isometry fixing delta"),
            s.is_isometry()
                && s.compose(&s).expect("same basis").is_identity()
                && s.fixes(&anticanonical(Basis::FG)),
        ));
    }

    let phi = recurrence_lattice_action();
    report.push(CheckItem::exact(
        "induced recurrence action is an isometry fixing delta",
        phi.is_isometry() && phi.fixes(&anticanonical(Basis::XY)),
    ));
    report.push(CheckItem::exact(
        "induced action translates the preliminary symmetry roots by <0,-1,0,1> delta",
        translation_vector(&phi, &preliminary_symmetry_roots()) == Some(vec![0, -1, 0, 1]),
    ));
    report.push(CheckItem::exact(
        "induced action translates the final symmetry roots by <-1,1,-1,1> delta",
        translation_vector(&phi, &recurrence_roots().symmetry_roots) == Some(vec![-1, 1, -1, 1]),
    ));

    let std_word = standard_translation_map();
    report.push(CheckItem::exact(
        "standard word is an isometry fixing delta",
        std_word.is_isometry() && std_word.fixes(&anticanonical(Basis::FG)),
    ));
    report.push(CheckItem::exact(
        "standard word translates the symmetry roots by <-1,1,-1,1> delta",
        translation_vector(&std_word, &standard_roots().symmetry_roots) == Some(vec![-1, 1, -1, 1]),
    ));

    let (to_fg, to_xy) = basis_change_final();
    report.push(CheckItem::exact(
        "final basis changes are mutually inverse isometries",
        to_fg.is_isometry()
            && to_xy.is_isometry()
            && to_fg.compose(&to_xy).expect("composable").is_identity()
            && to_xy.compose(&to_fg).expect("composable").is_identity(),
    ));
    let perm = surface_root_label_map();
    report.push(
        CheckItem::exact(
            "final basis change matches the surface roots label-by-label",
            perm == Some([0, 1, 2, 3, 4, 5]),
        )
        .note(format!("induced permutation: {perm:?}")),
    );

    let w4_ok = (0..4).all(|j| {
        let w = weyl_generator(j);
        w.is_isometry() && w.compose(&w).expect("same basis").is_identity()
    });
    report.push(CheckItem::exact("w0..w3 are involutive isometries", w4_ok));

    for item in conjugation_identity_check().details {
        report.push(item);
    }
    report
}

/// Relation checks plus agreement of the translation words with the direct
/// step, each exact at `trials` random rational states.
pub fn weyl_suite(seed: u64, trials: u64) -> Result<VerificationReport, WeylError> {
    let mut report = weyl::check_relations(seed, trials)?;
    report.check = "weyl".to_owned();

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0001);
    let cap = trials * 100;

    // standard word vs direct step
    let mut done = 0;
    let mut rejected = 0;
    let mut ok = true;
    while done < trials {
        if rejected >= cap {
            return Err(WeylError::SamplingExhausted { attempts: rejected });
        }
        let ws = weyl::random_normalized_state(&mut rng);
        let orbit = StdOrbitState {
            a: ws.a.clone(),
            t: ws.t.clone(),
            f: ws.f.clone(),
            g: ws.g.clone(),
            step_index: 0,
        };
        let (direct, word) = match (std_step_forward(&orbit), composed_standard_step(&ws)) {
            (Ok(d), Ok(w)) => (d, w),
            _ => {
                rejected += 1;
                continue;
            }
        };
        let expect = ParamPointState::new(direct.a, direct.t, direct.f, direct.g);
        if word != expect {
            ok = false;
            break;
        }
        done += 1;
    }
    report.push(CheckItem::exact("standard word equals the direct step", ok).note(format!("{done} states")));

    // recurrence word vs w1-conjugated direct step, and its parameter shift
    let mut done = 0;
    let mut rejected = 0;
    let mut ok = true;
    while done < trials {
        if rejected >= cap {
            return Err(WeylError::SamplingExhausted { attempts: rejected });
        }
        let ws = weyl::random_normalized_state(&mut rng);
        let lhs = match composed_recurrence_step(&ws) {
            Ok(v) => v,
            Err(_) => {
                rejected += 1;
                continue;
            }
        };
        let rhs = apply_generator(Generator::W1, &ws)
            .and_then(|s| composed_standard_step(&s))
            .and_then(|s| apply_generator(Generator::W1, &s));
        let rhs = match rhs {
            Ok(v) => v,
            Err(_) => {
                rejected += 1;
                continue;
            }
        };
        if lhs != rhs || !lhs.is_normalized() || lhs.t != ws.t {
            ok = false;
            break;
        }
        for (j, shift) in [0i64, 1, 0, -1].into_iter().enumerate() {
            if lhs.a[j] != ws.a[j].clone() + Rational::from(shift) {
                ok = false;
            }
        }
        done += 1;
    }
    report.push(
        CheckItem::exact("recurrence word equals the w1-conjugated step, shifting a by (0,1,0,-1)", ok)
            .note(format!("{done} states")),
    );
    Ok(report)
}

/// Ladder-identity suite: string equations over the full index range, the
/// compatibility conditions at a spread of indices, and the recurrence lines
/// on the transformed sequence.
pub fn ladder_suite(params: &WeightParams, n_max: usize) -> Result<Vec<VerificationReport>, OpError> {
    if n_max < 3 {
        return Err(OpError::IndexRange("ladder suite needs n_max >= 3".into()));
    }
    let (rec, ladder) = orthopoly::ladder_quantities(params, n_max)?;
    let mut reports = vec![orthopoly::string_equation_report(params, &ladder)?];

    let xs = [Rational::from(-1), Rational::from((1, 2)), Rational::from(2)];
    let mut indices = vec![1, 3, n_max / 2, n_max - 1];
    indices.sort_unstable();
    indices.dedup();
    for n in indices {
        reports.push(orthopoly::compatibility_report(params, &rec, &ladder, n, &xs)?);
    }

    let (_, xy_report) = orthopoly::xy_sequence_from(params, &ladder)?;
    reports.push(xy_report);
    Ok(reports)
}

/// Equivalence suite: the mapped-orbit checks plus exact round-trip of the
/// coordinate change at random rational points.
pub fn equivalence_suite(
    params: &WeightParams,
    n_max: usize,
    seed: u64,
    trials: u64,
) -> Result<VerificationReport, OpError> {
    let mut report = painleve::verify_equivalence(params, n_max)?;
    report.seed = Some(seed);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    let mut attempts = 0;
    let mut ok = true;
    while done < trials && attempts < trials * 100 {
        attempts += 1;
        let x = Rational::from((rng.gen_range(-1000i64..=1000), rng.gen_range(1i64..=1000)));
        let y = Rational::from((rng.gen_range(-1000i64..=1000), rng.gen_range(1i64..=1000)));
        let s = Rational::from((rng.gen_range(1i64..=1000), rng.gen_range(1i64..=1000)));
        let n = rng.gen_range(1i64..=12);
        if x == 0 {
            continue;
        }
        let (f, g, t) = match painleve::to_fg(&x, &y, n, &s) {
            Ok(v) => v,
            Err(_) => continue,
        };
        match painleve::to_xy(&f, &g, n, &t) {
            Ok((x2, y2, s2)) => {
                if x2 != x || y2 != y || s2 != s {
                    ok = false;
                    break;
                }
            }
            Err(_) => continue,
        }
        done += 1;
    }
    report.push(
        CheckItem::exact("coordinate change round-trips exactly on random rational points", ok && done == trials)
            .note(format!("{done} exact round-trips")),
    );
    Ok(report)
}

/// Base-point suite for both surfaces at one parameter set.
pub fn basepoint_suite(params: &BasePointParams) -> Vec<VerificationReport> {
    vec![
        verify_base_points(Surface::Standard, params),
        verify_base_points(Surface::Recurrence, params),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_suite_all_pass() {
        let report = lattice_suite();
        assert!(report.passed, "{}", report.render_text());
    }

    #[test]
    fn weyl_suite_small() {
        let report = weyl_suite(42, 10).unwrap();
        assert!(report.passed, "{}", report.render_text());
    }

    #[test]
    fn ladder_suite_small() {
        let params = WeightParams::new(
            Rational::from((3, 2)),
            Rational::from((1, 2)),
            Rational::from(1),
            40,
        )
        .unwrap();
        for report in ladder_suite(&params, 5).unwrap() {
            assert!(report.passed, "{}", report.render_text());
        }
    }

    #[test]
    fn basepoint_suite_generic() {
        for report in basepoint_suite(&BasePointParams::generic()) {
            assert!(report.passed, "{}", report.render_text());
        }
    }
}
