use zsc_core::op::{validate_op_schedule, validate_with, OpSchedule};
use zsc_core::sizing::TABLE_WIDTHS;
use zsc_core::{BitWord, OpCodec, SpCodec};

#[test]
fn dumps_match_golden_fixtures() {
    let cases = [
        ((8, 0), include_str!("fixtures/op_8_0.schedule")),
        ((8, 1), include_str!("fixtures/op_8_1.schedule")),
        ((16, 1), include_str!("fixtures/op_16_1.schedule")),
    ];
    for ((n, d), golden) in cases {
        assert_eq!(OpSchedule::build(n, d).unwrap().dump(), golden, "n={n} d={d}");
    }
}

#[test]
fn canonical_schedules_validate_exhaustively() {
    for n in (2..=16).step_by(2) {
        for d in 0..3 {
            let r = validate_op_schedule(&OpSchedule::build(n, d).unwrap());
            assert!(r.is_ok(), "n={n} d={d}: {r}");
            assert_eq!(r.inputs_checked, 1 << n);
        }
    }
}

#[test]
fn table_widths_validate_on_samples() {
    for &n in TABLE_WIDTHS.iter().filter(|&&n| n > 16 && n <= 64) {
        for d in 0..3 {
            let s = OpSchedule::build(n, d).unwrap();
            let r = validate_with(&s, 20_000, n as u64);
            assert!(r.is_ok(), "n={n} d={d}: {r}");
        }
    }
}

#[test]
fn walk_disparity_hits_zero_for_every_input() {
    for n in (2..=16).step_by(2) {
        for d in 0..3 {
            let s = OpSchedule::build(n, d).unwrap();
            for v in 0..1u64 << n {
                let w = BitWord::new(v, n).unwrap();
                let dw = s.walk_disparities(w);
                assert!(dw.windows(2).all(|p| (p[1] - p[0]).abs() == 2));
                assert!(dw.contains(&0), "n={n} d={d} {w}");
            }
        }
    }
}

#[test]
fn op_never_longer_than_sp() {
    for n in (2..=64).step_by(2) {
        for d in 0..3 {
            let op = OpCodec::build(n, d).unwrap();
            let sp = SpCodec::new(n, d).unwrap();
            assert!(op.m() <= sp.m(), "n={n} d={d}");
        }
    }
}

#[test]
fn op_16_1_is_the_simple_parallel_code() {
    let op = OpCodec::build(16, 1).unwrap();
    let sp = SpCodec::new(16, 1).unwrap();
    for v in 0..1u64 << 16 {
        let w = BitWord::new(v, 16).unwrap();
        assert_eq!(op.encode(w).unwrap(), sp.encode(w).unwrap());
    }
}
