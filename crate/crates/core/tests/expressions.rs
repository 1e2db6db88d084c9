use cwasp::dp::{has_answer_set_dp, has_model_dp};
use cwasp::expr::{compact_labels, heuristic_expression, trivial_expression, validate_against, CwdExpression};
use cwasp::gen::{gen_random_program, PartProbabilities};
use cwasp::program::Program;

fn programs() -> impl Iterator<Item = Program> {
    (0..200u64).map(|seed| {
        let n = 1 + seed as usize % 9;
        gen_random_program(n, 1 + (seed as usize / 9) % 8, PartProbabilities::default(), seed)
    })
}

#[test]
fn constructed_expressions_validate() {
    for p in programs() {
        let t = trivial_expression(&p).unwrap();
        let h = heuristic_expression(&p).unwrap();
        assert!(validate_against(&t, &p).is_ok(), "{p}");
        assert!(validate_against(&h, &p).is_ok(), "{p}");
        assert!(h.width() <= t.width());
    }
}

#[test]
fn text_and_arena_round_trip() {
    for p in programs() {
        let e = heuristic_expression(&p).unwrap();
        let again = CwdExpression::parse(&e.to_string()).unwrap();
        assert_eq!(again, e);
        assert_eq!(again.to_string(), e.to_string());
    }
}

#[test]
fn decisions_do_not_depend_on_the_expression() {
    for p in programs().take(80) {
        let t = trivial_expression(&p).unwrap();
        let h = heuristic_expression(&p).unwrap();
        let c = compact_labels(&t);
        let models = has_model_dp(&t).unwrap();
        let answer_sets = has_answer_set_dp(&t).unwrap();
        for e in [&h, &c] {
            assert_eq!(has_model_dp(e).unwrap(), models, "{p}");
            assert_eq!(has_answer_set_dp(e).unwrap(), answer_sets, "{p}");
        }
    }
}

#[test]
fn compaction_keeps_the_graph() {
    for p in programs() {
        let e = trivial_expression(&p).unwrap();
        let c = compact_labels(&e);
        assert!(validate_against(&c, &p).is_ok());
        assert_eq!(c.width(), e.width());
        assert_eq!(c.labels().into_iter().collect::<Vec<_>>(), (1..=e.width() as u32).collect::<Vec<_>>());
    }
}
