use std::fs;
use std::process::{Command, Output};

fn zsc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zsc"))
        .args(args)
        .output()
        .expect("spawn zsc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn tables_csv_is_byte_stable() {
    let o = zsc(&["tables", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), include_str!("fixtures/table1.csv"));
}

#[test]
fn tables_subset() {
    let o = zsc(&["tables", "--format", "csv", "--n", "8,32"]);
    let lines: Vec<_> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines[1], "8,8,16,12,10,10,14,12,10,12,10,10");
    assert_eq!(lines[2], "32,32,64,36,34,34,40,38,38,38,36,36");
}

#[test]
fn verify_exhaustive_sp_8() {
    let o = zsc(&["verify", "--scheme", "sp", "--n", "8", "--disparity", "0", "--exhaustive"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "256/256 ok\n");
}

#[test]
fn verify_sampled_is_deterministic() {
    let args = ["verify", "--scheme", "op", "--n", "40", "--disparity", "2", "--samples", "5000", "--seed", "11"];
    let a = zsc(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), "5004/5004 ok\n");
    assert_eq!(stdout(&zsc(&args)), stdout(&a));
}

#[test]
fn exhaustive_refuses_wide_words() {
    let o = zsc(&["verify", "--scheme", "sp", "--n", "32", "--disparity", "0", "--exhaustive"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("--samples"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "--scheme", "sp", "--n", "8", "--disparity", "3"][..],
        &["verify", "--scheme", "xx", "--n", "8", "--disparity", "0"],
        &["encode", "--scheme", "sp", "--n", "7", "--disparity", "0"],
        &["resources", "--arch", "serial", "--scheme", "sp", "--n", "8", "--disparity", "0"],
    ] {
        assert_eq!(zsc(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn encode_decode_file_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.bin");
    let framed = dir.path().join("out.zsc");
    let back = dir.path().join("back.bin");
    let data: Vec<u8> = (0..960u32).map(|i| (i * 73 + 41) as u8).collect();
    fs::write(&input, &data).unwrap();
    for (scheme, n, disp) in [("sp", "8", "0"), ("op", "16", "2"), ("op", "48", "4"), ("sp", "24", "4")] {
        let enc = zsc(&[
            "encode", "--scheme", scheme, "--n", n, "--disparity", disp,
            "--in", input.to_str().unwrap(), "--out", framed.to_str().unwrap(),
        ]);
        assert!(enc.status.success(), "{}", String::from_utf8_lossy(&enc.stderr));
        let dec = zsc(&["decode", "--in", framed.to_str().unwrap(), "--out", back.to_str().unwrap()]);
        assert!(dec.status.success(), "{}", String::from_utf8_lossy(&dec.stderr));
        assert_eq!(fs::read(&back).unwrap(), data, "{scheme} {n} {disp}");

        let a = zsc(&["analyze", "--in", framed.to_str().unwrap()]);
        assert!(a.status.success());
        if disp == "0" {
            assert!(stdout(&a).contains("rds max |.|: 0"));
        }
    }
}

#[test]
fn decode_rejects_mismatched_flags_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.bin");
    let framed = dir.path().join("out.zsc");
    fs::write(&input, [0xA5u8; 32]).unwrap();
    let f = framed.to_str().unwrap();
    let enc = zsc(&["encode", "--scheme", "sp", "--n", "16", "--disparity", "0", "--in", input.to_str().unwrap(), "--out", f]);
    assert!(enc.status.success());
    assert_eq!(zsc(&["decode", "--in", f, "--scheme", "op"]).status.code(), Some(2));
    assert!(zsc(&["decode", "--in", f, "--scheme", "sp", "--n", "16", "--disparity", "0"]).status.success());

    let mut bytes = fs::read(&framed).unwrap();
    bytes[19] ^= 0x80;
    fs::write(&framed, &bytes).unwrap();
    let o = zsc(&["decode", "--in", f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}

#[test]
fn resources_and_dumps() {
    let o = zsc(&["resources", "--arch", "parallel", "--scheme", "sp", "--n", "32", "--disparity", "0"]);
    let s = stdout(&o);
    assert!(s.contains("balance calculators: 31"));
    assert!(s.contains("calculator latency (stages): 6"));
    assert_eq!(stdout(&zsc(&["dump-table", "--n", "8", "--disparity", "2"])), "1 0011\n4 0101\n7 0110\n");
    let o = zsc(&["dump-schedule", "--n", "8", "--disparity", "0"]);
    assert_eq!(stdout(&o), include_str!("../../core/tests/fixtures/op_8_0.schedule"));
}
