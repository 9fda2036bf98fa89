//! Exact-rational birational representation of the extended affine Weyl
//! group of the square diagram on (a0..a3; t; f, g), with randomized
//! identity testing of the presentation relations and of the two
//! translation words.

use crate::lattice::ApplyOrder;
use crate::report::{CheckItem, VerificationReport};
use crate::scalar::Scalar;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::Rational;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    W0,
    W1,
    W2,
    W3,
    S1,
    S2,
    S3,
}

impl Generator {
    pub const ALL: [Generator; 7] = [
        Generator::W0,
        Generator::W1,
        Generator::W2,
        Generator::W3,
        Generator::S1,
        Generator::S2,
        Generator::S3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::W0 => "w0",
            Generator::W1 => "w1",
            Generator::W2 => "w2",
            Generator::W3 => "w3",
            Generator::S1 => "s1",
            Generator::S2 => "s2",
            Generator::S3 => "s3",
        }
    }

    pub fn parse(s: &str) -> Option<Generator> {
        Generator::ALL.into_iter().find(|g| g.name() == s)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeylError {
    #[error("indeterminate point: generator {generator} needs nonzero {denominator} (position {position} in the word)")]
    IndeterminatePoint {
        generator: &'static str,
        denominator: &'static str,
        position: usize,
    },
    #[error("a generator word must be nonempty")]
    EmptyWord,
    #[error("could not sample a non-degenerate state after {attempts} attempts")]
    SamplingExhausted { attempts: u64 },
}

/// Group parameters plus surface point, transformed together.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamPointState<T: Scalar> {
    pub a: [T; 4],
    pub t: T,
    pub f: T,
    pub g: T,
}

impl<T: Scalar> ParamPointState<T> {
    pub fn new(a: [T; 4], t: T, f: T, g: T) -> Self {
        ParamPointState { a, t, f, g }
    }

    /// a0 + a1 + a2 + a3 == 1, exactly (meaningful for rational scalars).
    pub fn is_normalized(&self) -> bool {
        let sum = self.a[0].add(&self.a[1]).add(&self.a[2]).add(&self.a[3]);
        sum == self.a[0].one_like()
    }
}

/// One generator application. Denominator guards return the indeterminate
/// point by name; position is filled in by word application.
pub fn apply_generator<T: Scalar>(
    gen: Generator,
    st: &ParamPointState<T>,
) -> Result<ParamPointState<T>, WeylError> {
    let [a0, a1, a2, a3] = &st.a;
    let (t, f, g) = (&st.t, &st.f, &st.g);
    let bad = |den: &'static str| WeylError::IndeterminatePoint {
        generator: gen.name(),
        denominator: den,
        position: 0,
    };
    Ok(match gen {
        Generator::W0 => {
            let gt = g.add(t);
            if gt.is_zero() {
                return Err(bad("g + t"));
            }
            ParamPointState {
                a: [a0.neg(), a0.add(a1), a2.clone(), a0.add(a3)],
                t: t.clone(),
                f: f.add(&a0.div(&gt)),
                g: g.clone(),
            }
        }
        Generator::W1 => {
            if f.is_zero() {
                return Err(bad("f"));
            }
            ParamPointState {
                a: [a0.add(a1), a1.neg(), a1.add(a2), a3.clone()],
                t: t.clone(),
                f: f.clone(),
                g: g.sub(&a1.div(f)),
            }
        }
        Generator::W2 => {
            if g.is_zero() {
                return Err(bad("g"));
            }
            ParamPointState {
                a: [a0.clone(), a1.add(a2), a2.neg(), a2.add(a3)],
                t: t.clone(),
                f: f.add(&a2.div(g)),
                g: g.clone(),
            }
        }
        Generator::W3 => {
            let fm1 = f.sub(&f.one_like());
            if fm1.is_zero() {
                return Err(bad("f - 1"));
            }
            ParamPointState {
                a: [a0.add(a3), a1.clone(), a2.add(a3), a3.neg()],
                t: t.clone(),
                f: f.clone(),
                g: g.sub(&a3.div(&fm1)),
            }
        }
        Generator::S1 => {
            if t.is_zero() {
                return Err(bad("t"));
            }
            ParamPointState {
                a: [a3.clone(), a2.clone(), a1.clone(), a0.clone()],
                t: t.neg(),
                f: g.neg().div(t),
                g: f.mul(t),
            }
        }
        Generator::S2 => ParamPointState {
            a: [a2.clone(), a1.clone(), a0.clone(), a3.clone()],
            t: t.neg(),
            f: f.clone(),
            g: g.add(t),
        },
        Generator::S3 => ParamPointState {
            a: [a0.clone(), a3.clone(), a2.clone(), a1.clone()],
            t: t.neg(),
            f: f.one_like().sub(f),
            g: g.neg(),
        },
    })
}

/// A nonempty word in the generators with an explicit application order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorWord {
    gens: Vec<Generator>,
    pub order: ApplyOrder,
}

impl GeneratorWord {
    pub fn new(gens: Vec<Generator>, order: ApplyOrder) -> Result<Self, WeylError> {
        if gens.is_empty() {
            return Err(WeylError::EmptyWord);
        }
        Ok(GeneratorWord { gens, order })
    }

    pub fn parse(names: &[&str], order: ApplyOrder) -> Result<Self, WeylError> {
        let gens = names
            .iter()
            .map(|n| Generator::parse(n).ok_or(WeylError::EmptyWord))
            .collect::<Result<Vec<_>, _>>()?;
        GeneratorWord::new(gens, order)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    /// The standard translation word s3 s2 w3 w1 w2 w0 (rightmost acts first).
    pub fn standard_translation() -> Self {
        GeneratorWord::new(
            vec![
                Generator::S3,
                Generator::S2,
                Generator::W3,
                Generator::W1,
                Generator::W2,
                Generator::W0,
            ],
            ApplyOrder::RightmostFirst,
        )
        .expect("nonempty")
    }

    /// The recurrence translation word s3 s2 w1 w2 w0 w1.
    pub fn recurrence_translation() -> Self {
        GeneratorWord::new(
            vec![
                Generator::S3,
                Generator::S2,
                Generator::W1,
                Generator::W2,
                Generator::W0,
                Generator::W1,
            ],
            ApplyOrder::RightmostFirst,
        )
        .expect("nonempty")
    }

    pub fn apply<T: Scalar>(
        &self,
        st: &ParamPointState<T>,
    ) -> Result<ParamPointState<T>, WeylError> {
        let seq: Vec<Generator> = match self.order {
            ApplyOrder::RightmostFirst => self.gens.iter().rev().copied().collect(),
            ApplyOrder::LeftmostFirst => self.gens.clone(),
        };
        let mut cur = st.clone();
        for (pos, gen) in seq.into_iter().enumerate() {
            cur = apply_generator(gen, &cur).map_err(|e| match e {
                WeylError::IndeterminatePoint { generator, denominator, .. } => {
                    WeylError::IndeterminatePoint { generator, denominator, position: pos }
                }
                other => other,
            })?;
        }
        Ok(cur)
    }
}

/// Image of a state under the standard translation word.
pub fn composed_standard_step(
    st: &ParamPointState<Rational>,
) -> Result<ParamPointState<Rational>, WeylError> {
    GeneratorWord::standard_translation().apply(st)
}

/// Image of a state under the recurrence translation word
/// (equals w1 . standard . w1 wherever both are defined).
pub fn composed_recurrence_step(
    st: &ParamPointState<Rational>,
) -> Result<ParamPointState<Rational>, WeylError> {
    GeneratorWord::recurrence_translation().apply(st)
}

fn rand_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.gen_range(-1000..=1000);
    let mut den: i64 = 0;
    while den == 0 {
        den = rng.gen_range(-1000..=1000);
    }
    Rational::from((num, den))
}

/// Random state with a0+a1+a2+a3 = 1.
pub fn random_normalized_state(rng: &mut ChaCha8Rng) -> ParamPointState<Rational> {
    let a0 = rand_rational(rng);
    let a1 = rand_rational(rng);
    let a2 = rand_rational(rng);
    let a3 = Rational::from(1) - &a0 - &a1 - &a2;
    ParamPointState::new([a0, a1, a2, a3], rand_rational(rng), rand_rational(rng), rand_rational(rng))
}

type Relation = (&'static str, &'static [&'static str], &'static [&'static str]);

/// The presentation relations checked at random states: involutions,
/// braid/commutation per the square diagram, the dihedral relations among
/// the diagram automorphisms, and the mixed relation w1 s3 s2 = s3 s2 w3.
pub const RELATIONS: &[Relation] = &[
    ("w0^2 = e", &["w0", "w0"], &[]),
    ("w1^2 = e", &["w1", "w1"], &[]),
    ("w2^2 = e", &["w2", "w2"], &[]),
    ("w3^2 = e", &["w3", "w3"], &[]),
    ("braid w0 w1", &["w0", "w1", "w0"], &["w1", "w0", "w1"]),
    ("braid w1 w2", &["w1", "w2", "w1"], &["w2", "w1", "w2"]),
    ("braid w2 w3", &["w2", "w3", "w2"], &["w3", "w2", "w3"]),
    ("braid w3 w0", &["w3", "w0", "w3"], &["w0", "w3", "w0"]),
    ("w0 w2 = w2 w0", &["w0", "w2"], &["w2", "w0"]),
    ("w1 w3 = w3 w1", &["w1", "w3"], &["w3", "w1"]),
    ("s1^2 = e", &["s1", "s1"], &[]),
    ("s2^2 = e", &["s2", "s2"], &[]),
    ("s3^2 = e", &["s3", "s3"], &[]),
    ("s2 s3 = s3 s2", &["s2", "s3"], &["s3", "s2"]),
    ("(s1 s2)^4 = e", &["s1", "s2", "s1", "s2", "s1", "s2", "s1", "s2"], &[]),
    ("(s1 s3)^4 = e", &["s1", "s3", "s1", "s3", "s1", "s3", "s1", "s3"], &[]),
    ("s1 s2 s1 = s3", &["s1", "s2", "s1"], &["s3"]),
    ("w1 s3 s2 = s3 s2 w3", &["w1", "s3", "s2"], &["s3", "s2", "w3"]),
];

/// Check all presentation relations at `trials` random rational states each.
/// Exact equality; any failure is a hard failure. States on which a word is
/// indeterminate are resampled (counted, capped).
pub fn check_relations(seed: u64, trials: u64) -> Result<VerificationReport, WeylError> {
    assert!(trials >= 1, "trials must be >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerificationReport::new("weyl-relations").with_seed(seed);
    report.samples = trials;
    let cap = trials * 100;
    let mut worst_rejections: u64 = 0;

    for (name, lhs, rhs) in RELATIONS {
        let lhs_word = GeneratorWord::parse(lhs, ApplyOrder::RightmostFirst).expect("valid");
        let rhs_word = if rhs.is_empty() {
            None
        } else {
            Some(GeneratorWord::parse(rhs, ApplyOrder::RightmostFirst).expect("valid"))
        };
        let mut done = 0;
        let mut rejections = 0;
        let mut ok = true;
        while done < trials {
            if rejections >= cap {
                return Err(WeylError::SamplingExhausted { attempts: rejections });
            }
            let st = random_normalized_state(&mut rng);
            let left = match lhs_word.apply(&st) {
                Ok(v) => v,
                Err(_) => {
                    rejections += 1;
                    continue;
                }
            };
            let right = match &rhs_word {
                Some(w) => match w.apply(&st) {
                    Ok(v) => v,
                    Err(_) => {
                        rejections += 1;
                        continue;
                    }
                },
                None => st.clone(),
            };
            if left != right {
                ok = false;
                break;
            }
            if !left.is_normalized() {
                ok = false;
                break;
            }
            done += 1;
        }
        worst_rejections = worst_rejections.max(rejections);
        report.push(
            CheckItem::exact(*name, ok)
                .note(format!("{done} states, {rejections} resampled")),
        );
    }
    report.push(
        CheckItem::exact("sampling within rejection cap", true)
            .note(format!("worst-case denominator rejections: {worst_rejections}")),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn sample_state() -> ParamPointState<Rational> {
        ParamPointState::new([q(1, 4), q(1, 4), q(1, 4), q(1, 4)], q(1, 1), q(2, 1), q(3, 1))
    }

    #[test]
    fn w1_hand_example() {
        let st = sample_state();
        let img = apply_generator(Generator::W1, &st).unwrap();
        assert_eq!(img.a, [q(1, 2), q(-1, 4), q(1, 2), q(1, 4)]);
        assert_eq!(img.t, q(1, 1));
        assert_eq!(img.f, q(2, 1));
        assert_eq!(img.g, q(23, 8));
    }

    #[test]
    fn sigma2_action() {
        let st = sample_state();
        let img = apply_generator(Generator::S2, &st).unwrap();
        assert_eq!(img.a, [q(1, 4), q(1, 4), q(1, 4), q(1, 4)]);
        assert_eq!(img.t, q(-1, 1));
        assert_eq!(img.f, st.f);
        assert_eq!(img.g, q(4, 1));
    }

    #[test]
    fn w1_fixed_point_when_a1_zero() {
        let st = ParamPointState::new([q(1, 2), q(0, 1), q(1, 4), q(1, 4)], q(1, 1), q(2, 1), q(3, 1));
        let img = apply_generator(Generator::W1, &st).unwrap();
        assert_eq!(img.g, st.g);
        assert_eq!(img.f, st.f);
        assert_eq!(img.a, [q(1, 2), q(0, 1), q(1, 4), q(1, 4)]);
    }

    #[test]
    fn indeterminate_points_are_reported() {
        let st = ParamPointState::new([q(1, 4), q(1, 4), q(1, 4), q(1, 4)], q(1, 1), q(0, 1), q(3, 1));
        let err = apply_generator(Generator::W1, &st).unwrap_err();
        assert!(matches!(err, WeylError::IndeterminatePoint { denominator: "f", .. }));
        let st = ParamPointState::new([q(1, 4), q(1, 4), q(1, 4), q(1, 4)], q(2, 1), q(1, 2), q(-2, 1));
        let err = apply_generator(Generator::W0, &st).unwrap_err();
        assert!(matches!(err, WeylError::IndeterminatePoint { denominator: "g + t", .. }));
        // the failing prefix position is propagated by words
        let w = GeneratorWord::parse(&["w2", "w1"], ApplyOrder::RightmostFirst).unwrap();
        let st = ParamPointState::new([q(1, 4), q(1, 4), q(1, 4), q(1, 4)], q(1, 1), q(0, 1), q(1, 1));
        let err = w.apply(&st).unwrap_err();
        assert_eq!(
            err,
            WeylError::IndeterminatePoint { generator: "w1", denominator: "f", position: 0 }
        );
    }

    #[test]
    fn empty_word_rejected() {
        assert_eq!(
            GeneratorWord::new(vec![], ApplyOrder::RightmostFirst).unwrap_err(),
            WeylError::EmptyWord
        );
    }

    #[test]
    fn relations_pass_at_random_states() {
        let report = check_relations(7, 25).unwrap();
        assert!(report.passed, "{}", report.render_text());
    }

    #[test]
    fn corrupted_generator_breaks_braid() {
        // flip the sign in w2's f-update and watch braid w1 w2 fail
        fn w2_corrupt(st: &ParamPointState<Rational>) -> Option<ParamPointState<Rational>> {
            let [a0, a1, a2, a3] = st.a.clone();
            if st.g == 0 {
                return None;
            }
            Some(ParamPointState {
                a: [a0, a1.clone() + &a2, -a2.clone(), a2 + &a3],
                t: st.t.clone(),
                f: st.f.clone() - Rational::from(&st.a[2] / &st.g),
                g: st.g.clone(),
            })
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let st = random_normalized_state(&mut rng);
        let lhs = w2_corrupt(&apply_generator(Generator::W1, &w2_corrupt(&st).unwrap()).unwrap()).unwrap();
        let rhs = apply_generator(
            Generator::W1,
            &w2_corrupt(&apply_generator(Generator::W1, &st).unwrap()).unwrap(),
        )
        .unwrap();
        assert_ne!(lhs, rhs, "sign-flipped w2 must break the braid relation");
    }

    #[test]
    fn standard_step_parameter_translation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let st = random_normalized_state(&mut rng);
            let img = match composed_standard_step(&st) {
                Ok(v) => v,
                Err(_) => continue,
            };
            for (j, shift) in [1i64, -1, 1, -1].into_iter().enumerate() {
                assert_eq!(img.a[j], st.a[j].clone() + Rational::from(shift));
            }
            assert_eq!(img.t, st.t);
            assert!(img.is_normalized());
        }
    }

    #[test]
    fn recurrence_step_is_w1_conjugate() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut checked = 0;
        while checked < 20 {
            let st = random_normalized_state(&mut rng);
            let lhs = match composed_recurrence_step(&st) {
                Ok(v) => v,
                Err(_) => continue,
            };
            let conj = apply_generator(Generator::W1, &st)
                .and_then(|s| composed_standard_step(&s))
                .and_then(|s| apply_generator(Generator::W1, &s));
            let rhs = match conj {
                Ok(v) => v,
                Err(_) => continue,
            };
            assert_eq!(lhs, rhs);
            // parameter translation (0, +1, 0, -1)
            for (j, shift) in [0i64, 1, 0, -1].into_iter().enumerate() {
                assert_eq!(lhs.a[j], st.a[j].clone() + Rational::from(shift));
            }
            assert!(lhs.is_normalized());
            checked += 1;
        }
    }
}
