//! End-to-end runs of the `dexor` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn dexor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dexor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_raw(p: &Path, values: &[f64]) {
    let bytes: Vec<u8> = values.iter().flat_map(|v| v.to_le_bytes()).collect();
    std::fs::write(p, bytes).unwrap();
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn field<'a>(line: &'a str, key: &str) -> &'a str {
    line.split_whitespace()
        .find_map(|kv| kv.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("{key} missing from {line}"))
}

#[test]
fn exception_only_report_counts_bootstrap_and_records() {
    let dir = TempDir::new().unwrap();
    let (input, out) = (path(&dir, "in.bin"), path(&dir, "out.dxor"));
    // Exponents 1026, 1029, 1030, 1031.
    let values = [
        f64::from_bits(1026 << 52 | 0x1234),
        f64::from_bits(1029 << 52 | 0x5_5555_5555),
        f64::from_bits(1030 << 52 | 1),
        f64::from_bits(1031 << 52 | 0xf_ffff_ffff_ffff),
    ];
    write_raw(&input, &values);
    let o = dexor(&[
        "compress",
        s(&input),
        s(&out),
        "--mode",
        "exception-only",
        "--report",
        "flat",
    ]);
    assert!(o.status.success(), "{o:?}");
    let report = stdout(&o);
    assert_eq!(field(&report, "payload_bits"), "239");
    assert_eq!(field(&report, "scheme"), "dexor-exception-only");
    assert_eq!(field(&report, "case11"), "3");
}

#[test]
fn empty_input_warns() {
    let dir = TempDir::new().unwrap();
    let (input, out) = (path(&dir, "in.bin"), path(&dir, "out.dxor"));
    std::fs::write(&input, b"").unwrap();
    let o = dexor(&["compress", s(&input), s(&out), "--report", "flat"]);
    assert!(o.status.success());
    assert_eq!(field(&stdout(&o), "values"), "0");
    assert_eq!(field(&stdout(&o), "acb"), "undefined");
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert_eq!(std::fs::read(&out).unwrap().len(), 22);
}

#[test]
fn csv_and_raw_inputs_compress_identically() {
    let dir = TempDir::new().unwrap();
    let (csv, raw) = (path(&dir, "in.csv"), path(&dir, "in.bin"));
    std::fs::write(&csv, "time,value\n0,88.1537\n1,88.1479\n").unwrap();
    write_raw(&raw, &[88.1537, 88.1479]);
    let (a, b) = (path(&dir, "a.dxor"), path(&dir, "b.dxor"));
    let o = dexor(&[
        "compress",
        s(&csv),
        s(&a),
        "--format",
        "csv",
        "--column",
        "value",
    ]);
    assert!(o.status.success(), "{o:?}");
    assert!(dexor(&["compress", s(&raw), s(&b)]).status.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn raw_round_trip_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let (input, packed, back) = (path(&dir, "in"), path(&dir, "packed"), path(&dir, "back"));
    let values: Vec<f64> = (0..500)
        .map(|i| match i % 50 {
            7 => f64::NAN,
            13 => -0.0,
            29 => 1.0 / 3.0,
            _ => 20.0 + (i as f64 * 0.37).sin().round() * 0.01 + i as f64 * 0.001,
        })
        .collect();
    write_raw(&input, &values);
    assert!(dexor(&[
        "compress",
        s(&input),
        s(&packed),
        "--tolerance",
        "1e-8",
        "--rho",
        "3"
    ])
    .status
    .success());
    assert!(dexor(&["decompress", s(&packed), s(&back)])
        .status
        .success());
    assert_eq!(
        std::fs::read(&input).unwrap(),
        std::fs::read(&back).unwrap()
    );
}

#[test]
fn text_output_round_trips_values() {
    let dir = TempDir::new().unwrap();
    let (input, packed, back) = (path(&dir, "in.txt"), path(&dir, "p"), path(&dir, "out.txt"));
    std::fs::write(&input, "88.1537\n88.1479\n\n0.1\n-1e-7\n").unwrap();
    assert!(
        dexor(&["compress", s(&input), s(&packed), "--format", "text"])
            .status
            .success()
    );
    assert!(
        dexor(&["decompress", s(&packed), s(&back), "--format", "text"])
            .status
            .success()
    );
    assert_eq!(
        std::fs::read_to_string(&back).unwrap(),
        "88.1537\n88.1479\n0.1\n-1e-7\n"
    );
}

#[test]
fn gorilla_container_decodes_by_mode_byte() {
    let dir = TempDir::new().unwrap();
    let (packed, back) = (path(&dir, "g.dxor"), path(&dir, "back"));
    let values: Vec<u64> = [1.5f64, 1.5, 2.75, -3.0]
        .iter()
        .map(|v| v.to_bits())
        .collect();
    std::fs::write(&packed, dexor::gorilla::compress_stream(&values)).unwrap();
    assert!(dexor(&["decompress", s(&packed), s(&back)])
        .status
        .success());
    let got: Vec<u64> = std::fs::read(&back)
        .unwrap()
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    assert_eq!(got, values);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let (input, packed, back) = (path(&dir, "in"), path(&dir, "p"), path(&dir, "b"));
    write_raw(&input, &[1.25, 2.5, 3.75, 5.0]);
    assert!(dexor(&["compress", s(&input), s(&packed)]).status.success());

    let mut bytes = std::fs::read(&packed).unwrap();
    bytes.pop();
    std::fs::write(&packed, &bytes).unwrap();
    let o = dexor(&["decompress", s(&packed), s(&back)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("byte offset"));

    std::fs::write(&input, "1.0\nnope\n").unwrap();
    let o = dexor(&["compress", s(&input), s(&packed), "--format", "text"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    std::fs::write(&input, [0u8; 12]).unwrap();
    assert_eq!(
        dexor(&["compress", s(&input), s(&packed)]).status.code(),
        Some(2)
    );
    let o = dexor(&["compress", s(&input), s(&packed), "--tolerance", "0.7"]);
    assert_eq!(o.status.code(), Some(2));

    let missing = path(&dir, "missing");
    assert_eq!(
        dexor(&["compress", s(&missing), s(&packed)]).status.code(),
        Some(1)
    );
}

#[test]
fn bench_compares_schemes() {
    let dir = TempDir::new().unwrap();
    let input = path(&dir, "walk.txt");
    let mut text = String::new();
    let mut x = 5000i64;
    for i in 0..5000i64 {
        x += (i * 7919 % 11) - 5;
        text.push_str(&format!("{}\n", x as f64 / 1e4 * 10.0));
    }
    std::fs::write(&input, text).unwrap();
    let o = dexor(&["bench", s(&input), "--format", "text", "--report", "flat"]);
    assert!(o.status.success(), "{o:?}");
    let report = stdout(&o);
    let lines: Vec<&str> = report.lines().collect();
    assert_eq!(lines.len(), 3);
    let acb = |i: usize| field(lines[i], "acb").parse::<f64>().unwrap();
    assert!(lines.iter().all(|l| field(l, "round_trip") == "pass"));
    assert!(acb(0) < acb(2), "{report}");

    let o = dexor(&[
        "bench",
        s(&input),
        "--format",
        "text",
        "--limit",
        "10",
        "--schemes",
        "gorilla",
    ]);
    assert!(o.status.success());
    let table = stdout(&o);
    assert!(table.starts_with("scheme"), "{table}");
    assert!(table.contains("gorilla") && !table.contains("dexor"));
}

#[test]
fn bench_on_full_precision_doubles() {
    let dir = TempDir::new().unwrap();
    let input = path(&dir, "noise.bin");
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    let values: Vec<f64> = (0..4000)
        .map(|_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            f64::from_bits(1029 << 52 | state >> 12)
        })
        .collect();
    write_raw(&input, &values);
    let o = dexor(&["bench", s(&input), "--report", "flat"]);
    assert!(o.status.success(), "{o:?}");
    let report = stdout(&o);
    let lines: Vec<&str> = report.lines().collect();
    let acb = |i: usize| field(lines[i], "acb").parse::<f64>().unwrap();
    assert!(acb(0) <= 78.0, "{report}");
    assert!(acb(1) <= acb(0), "{report}");
}
