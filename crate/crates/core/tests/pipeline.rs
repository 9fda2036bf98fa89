//! Cross-module consistency: the orbit engines must reproduce the sequences
//! computed by the orthogonal-polynomial pipeline.

use dp5_core::orthopoly::{self, WeightParams};
use dp5_core::painleve::{self, to_fg, RecOrbitState, StdOrbitState};
use dp5_core::rug::{Float, Rational};

fn params() -> WeightParams {
    WeightParams::new(
        Rational::from((3, 2)),
        Rational::from((1, 2)),
        Rational::from(1),
        60,
    )
    .unwrap()
}

fn assert_within(label: &str, lhs: &Float, rhs: &Float, tol: &Float) {
    let res = orthopoly::rel_residual(lhs, rhs);
    assert!(res <= *tol, "{label}: {lhs} vs {rhs} (residual {res})");
}

#[test]
fn recurrence_step_reproduces_the_pipeline_sequence() {
    let p = params();
    let n_max = 6;
    let (seq, report) = orthopoly::xy_sequence(&p, n_max).unwrap();
    assert!(report.passed, "{}", report.render_text());

    let tol = p.tolerance();
    let mut state = RecOrbitState {
        alpha: p.alpha_f(),
        beta: p.beta_f(),
        s: p.s_f(),
        n: 1,
        x: seq.x(1).clone(),
        y: seq.y(1).clone(),
    };
    for n in 2..=n_max {
        state = painleve::rec_step_forward(&state).unwrap();
        assert_eq!(state.n, n as i64);
        assert_within(&format!("x_{n}"), &state.x, seq.x(n), &tol);
        assert_within(&format!("y_{n}"), &state.y, seq.y(n), &tol);
    }
}

#[test]
fn stepped_orbit_satisfies_both_recurrence_lines_directly() {
    // generate the orbit purely by stepping, then evaluate the two lines as
    // residuals without reference to the stepping code path
    let p = params();
    let (seq, _) = orthopoly::xy_sequence(&p, 2).unwrap();
    let prec = p.prec();
    let tol = p.tolerance();
    let (alpha, beta, s) = (p.alpha_f(), p.beta_f(), p.s_f());

    let mut states = vec![RecOrbitState {
        alpha: alpha.clone(),
        beta: beta.clone(),
        s: s.clone(),
        n: 1,
        x: seq.x(1).clone(),
        y: seq.y(1).clone(),
    }];
    for _ in 1..8 {
        states.push(painleve::rec_step_forward(states.last().unwrap()).unwrap());
    }

    for w in states.windows(2) {
        let (cur, next) = (&w[0], &w[1]);
        let n = cur.n;
        let nf = Float::with_val(prec, n);
        // line 1 at n: x_n x_{n+1} (s^2 (y^2 + alpha y)) = y^2 - (2n+beta) y + n(n+beta)
        let y = &cur.y;
        let lhs = Float::with_val(prec, &cur.x * &next.x)
            * Float::with_val(prec, &s * &s)
            * (Float::with_val(prec, y * y) + Float::with_val(prec, &alpha * y));
        let rhs = Float::with_val(prec, y * y)
            - Float::with_val(prec, Float::with_val(prec, 2 * n) + &beta) * y
            + Float::with_val(prec, &nf * &Float::with_val(prec, &nf + &beta));
        let res = orthopoly::rel_residual(&lhs, &rhs);
        assert!(res <= tol, "line 1 at n={n}: residual {res}");

        // line 2 at n+1: (y_{n+1} + y_n)(1 - s x_{n+1})^2 = -P_{n+1}(x_{n+1})
        let m = next.n;
        let xm = &next.x;
        let omsx = Float::with_val(prec, 1u32) - Float::with_val(prec, &s * xm);
        let lhs = Float::with_val(prec, &next.y + &cur.y) * Float::with_val(prec, &omsx * &omsx);
        let coeff = Float::with_val(prec, 2 * m - 1) - &alpha + &beta + &s;
        let pm = Float::with_val(prec, &alpha * &Float::with_val(prec, &s * &s))
            * Float::with_val(prec, xm * xm)
            + Float::with_val(prec, &s * &coeff) * xm
            - Float::with_val(prec, 2 * m)
            - &beta
            + Float::with_val(prec, 1u32);
        let rhs = -pm;
        let res = orthopoly::rel_residual(&lhs, &rhs);
        assert!(res <= tol, "line 2 at n={m}: residual {res}");
    }
}

#[test]
fn standard_step_tracks_the_mapped_orbit() {
    let p = params();
    let n_max = 6;
    let (seq, _) = orthopoly::xy_sequence(&p, n_max).unwrap();
    let s = p.s_f();
    let tol = p.tolerance();

    let mapped: Vec<(Float, Float)> = (1..=n_max)
        .map(|n| {
            let (f, g, _) = to_fg(seq.x(n), seq.y(n), n as i64, &s).unwrap();
            (f, g)
        })
        .collect();

    let (f1, g1) = mapped[0].clone();
    let mut state = StdOrbitState {
        a: painleve::root_variables(1, &p.alpha_f(), &p.beta_f()),
        t: Float::with_val(p.prec(), -&s),
        f: f1,
        g: g1,
        step_index: 1,
    };
    for n in 2..=n_max {
        state = painleve::std_step_forward(&state).unwrap();
        let (f_n, g_n) = &mapped[n - 1];
        assert_within(&format!("f_{n}"), &state.f, f_n, &tol);
        assert_within(&format!("g_{n}"), &state.g, g_n, &tol);
        // the forward step reproduces the tabulated root variables
        let expect = painleve::root_variables(n as i64, &p.alpha_f(), &p.beta_f());
        for (got, want) in state.a.iter().zip(expect.iter()) {
            assert_within(&format!("a at n={n}"), got, want, &tol);
        }
    }
}

#[test]
fn backward_step_retraces_the_mapped_orbit() {
    let p = params();
    let (seq, _) = orthopoly::xy_sequence(&p, 5).unwrap();
    let s = p.s_f();
    let tol = p.tolerance();
    let (f3, g3, t) = to_fg(seq.x(3), seq.y(3), 3, &s).unwrap();
    let (f2, g2, _) = to_fg(seq.x(2), seq.y(2), 2, &s).unwrap();
    let state = StdOrbitState {
        a: painleve::root_variables(3, &p.alpha_f(), &p.beta_f()),
        t,
        f: f3,
        g: g3,
        step_index: 3,
    };
    let back = painleve::std_step_backward(&state).unwrap();
    assert_within("f_2", &back.f, &f2, &tol);
    assert_within("g_2", &back.g, &g2, &tol);
}
