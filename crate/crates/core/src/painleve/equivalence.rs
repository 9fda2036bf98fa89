//! End-to-end equivalence check: drive the orthogonal-polynomial orbit
//! through the coordinate change and verify that it satisfies the standard
//! difference equation with the tabulated root variables, by direct residuals
//! and again through the group-word machinery (two routes, one truth).

use super::{root_variables, to_fg};
use crate::orthopoly::{self, rel_residual, residual_item, OpError, WeightParams};
use crate::report::{CheckItem, VerificationReport};
use crate::weyl::{apply_generator, Generator, GeneratorWord, ParamPointState};
use rug::Float;

/// Verify the equivalence on the orbit generated by the weight parameters:
/// root variables a = (n+beta, -n, n+alpha, 1-n-alpha-beta), t = -s,
/// both lines of the standard equation, plus the translation-word routes.
pub fn verify_equivalence(params: &WeightParams, n_max: usize) -> Result<VerificationReport, OpError> {
    if n_max < 2 {
        return Err(OpError::IndexRange("equivalence check needs n_max >= 2".into()));
    }
    let (_, ladder) = orthopoly::ladder_quantities(params, n_max)?;
    let (seq, xy_report) = orthopoly::xy_sequence_from(params, &ladder)?;

    let prec = params.prec();
    let tol = params.tolerance();
    let alpha = params.alpha_f();
    let beta = params.beta_f();
    let s = params.s_f();
    let t = Float::with_val(prec, -&s);
    let one = Float::with_val(prec, 1);

    let mut report = VerificationReport::new("equivalence");
    report.samples = n_max as u64;

    // orbit in standard coordinates
    let mut f = Vec::with_capacity(n_max + 1);
    let mut g = Vec::with_capacity(n_max + 1);
    for n in 1..=n_max {
        let (fn_, gn, tn) = to_fg(seq.x(n), seq.y(n), n as i64, &s).map_err(|e| {
            OpError::Domain(format!("coordinate change failed at n = {n}: {e}"))
        })?;
        debug_assert_eq!(tn, t);
        f.push(fn_);
        g.push(gn);
    }
    let fg = |n: usize| (&f[n - 1], &g[n - 1]);

    // root variables sum to one at every index
    let mut worst = Float::with_val(prec, 0);
    for n in 1..=n_max {
        let a = root_variables(n as i64, &alpha, &beta);
        let sum = Float::with_val(prec, &a[0] + &a[1]) + Float::with_val(prec, &a[2] + &a[3]);
        let r = rel_residual(&sum, &one);
        if r > worst {
            worst = r;
        }
    }
    report.push_residual_item(residual_item("root variables sum to 1 (all n)", &worst, &tol));

    // line 1 at index n: f_{n+1} + f_n = 1 - a2/g_n - a0/(g_n + t)
    for n in 1..n_max {
        let a = root_variables(n as i64, &alpha, &beta);
        let (fn_, gn) = fg(n);
        let (fn1, _) = fg(n + 1);
        let lhs = Float::with_val(prec, fn1 + fn_);
        let rhs = Float::with_val(prec, &one - &Float::with_val(prec, &a[2] / gn))
            - Float::with_val(prec, &a[0] / &Float::with_val(prec, gn + &t));
        let res = rel_residual(&lhs, &rhs);
        report.push_residual_item(residual_item(format!("standard line 1 n={n}"), &res, &tol));
    }

    // line 2 at index n: g_n + g_{n-1} = -t + a1/f_n + a3/(f_n - 1)
    for n in 2..=n_max {
        let a = root_variables(n as i64, &alpha, &beta);
        let (fn_, gn) = fg(n);
        let (_, gnm1) = fg(n - 1);
        let lhs = Float::with_val(prec, gn + gnm1);
        let rhs = Float::with_val(prec, -&t)
            + Float::with_val(prec, &a[1] / fn_)
            + Float::with_val(prec, &a[3] / &Float::with_val(prec, fn_ - &one));
        let res = rel_residual(&lhs, &rhs);
        report.push_residual_item(residual_item(format!("standard line 2 n={n}"), &res, &tol));
    }

    // word route: the standard translation word maps the state at n to the
    // state at n+1
    let std_word = GeneratorWord::standard_translation();
    let rec_word = GeneratorWord::recurrence_translation();
    for n in 1..n_max {
        let st = state_at(&seq_state(n, &alpha, &beta, &t, fg(n)));
        let next = state_at(&seq_state(n + 1, &alpha, &beta, &t, fg(n + 1)));
        let img = std_word
            .apply(&st)
            .map_err(|e| OpError::Domain(format!("standard word indeterminate at n = {n}: {e}")))?;
        let res = state_residual(&img, &next);
        report.push_residual_item(residual_item(format!("standard word route n={n}"), &res, &tol));

        // conjugated route: the recurrence word intertwines the w1-images
        let w1_st = apply_generator(Generator::W1, &st)
            .map_err(|e| OpError::Domain(format!("w1 indeterminate at n = {n}: {e}")))?;
        let w1_next = apply_generator(Generator::W1, &next)
            .map_err(|e| OpError::Domain(format!("w1 indeterminate at n = {n}: {e}")))?;
        let img = rec_word
            .apply(&w1_st)
            .map_err(|e| OpError::Domain(format!("recurrence word indeterminate at n = {n}: {e}")))?;
        let res = state_residual(&img, &w1_next);
        report.push_residual_item(residual_item(format!("recurrence word route n={n}"), &res, &tol));
    }

    // the same orbit satisfies its own recurrence lines
    for item in xy_report.details {
        report.push_residual_item(CheckItem {
            name: format!("orbit {}", item.name),
            ..item
        });
    }
    Ok(report)
}

struct RawState<'a> {
    a: [Float; 4],
    t: Float,
    f: &'a Float,
    g: &'a Float,
}

fn seq_state<'a>(
    n: usize,
    alpha: &Float,
    beta: &Float,
    t: &Float,
    fg: (&'a Float, &'a Float),
) -> RawState<'a> {
    RawState {
        a: root_variables(n as i64, alpha, beta),
        t: t.clone(),
        f: fg.0,
        g: fg.1,
    }
}

fn state_at(raw: &RawState<'_>) -> ParamPointState<Float> {
    ParamPointState::new(raw.a.clone(), raw.t.clone(), raw.f.clone(), raw.g.clone())
}

/// Worst relative component difference between two states.
fn state_residual(lhs: &ParamPointState<Float>, rhs: &ParamPointState<Float>) -> Float {
    let mut worst = rel_residual(&lhs.t, &rhs.t);
    for (x, y) in lhs.a.iter().zip(rhs.a.iter()) {
        let r = rel_residual(x, y);
        if r > worst {
            worst = r;
        }
    }
    for (x, y) in [(&lhs.f, &rhs.f), (&lhs.g, &rhs.g)] {
        let r = rel_residual(x, y);
        if r > worst {
            worst = r;
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    #[test]
    fn equivalence_small_orbit() {
        let params = WeightParams::new(
            Rational::from((3, 2)),
            Rational::from((1, 2)),
            Rational::from(1),
            45,
        )
        .unwrap();
        let report = verify_equivalence(&params, 6).unwrap();
        assert!(report.passed, "{}", report.render_text());
    }

    #[test]
    fn equivalence_needs_two_steps() {
        let params = WeightParams::new(
            Rational::from((3, 2)),
            Rational::from((1, 2)),
            Rational::from(1),
            40,
        )
        .unwrap();
        assert!(matches!(
            verify_equivalence(&params, 1),
            Err(OpError::IndexRange(_))
        ));
    }
}
