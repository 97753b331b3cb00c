use std::process::{Command, Output};

fn nestsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nestsum")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_fibonacci_instance() {
    let o = nestsum(&["verify", "--identity", "F3", "--n", "2", "--an", "3", "--c", "1", "--r", "1", "--s", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("equal: true, value 7/1"), "{}", stdout(&o));
}

#[test]
fn verify_rational_params_as_json() {
    let o = nestsum(&[
        "verify",
        "--identity",
        "F3",
        "--a",
        "2",
        "--b",
        "5",
        "--p",
        "1",
        "--q",
        "3",
        "--n",
        "2",
        "--an",
        "4",
        "--c",
        "0",
        "--r",
        "2",
        "--s",
        "1",
        "--format",
        "jsonl",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["lhs"], "1056/25");
    assert_eq!(v["class"], "equal");
}

#[test]
fn verify_vanishing_v_r_is_a_skip() {
    let o = nestsum(&["verify", "--identity", "F3", "--p", "2", "--q", "2", "--n", "2", "--an", "3", "--r", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("V_r = 0"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(nestsum(&["verify", "--identity", "F3", "--n", "x", "--an", "1"]).status.code(), Some(2));
    assert_eq!(nestsum(&["verify", "--identity", "F99", "--n", "1", "--an", "1"]).status.code(), Some(2));
    assert_eq!(nestsum(&["sweep", "--n", "1..x"]).status.code(), Some(2));
    assert_eq!(nestsum(&["sweep", "--family", "nope"]).status.code(), Some(2));
    assert_eq!(nestsum(&["bench", "--naive-cap", "0"]).status.code(), Some(2));
}

#[test]
fn sweep_default_f1a_all_equal() {
    let o = nestsum(&["sweep", "--identity", "F1a", "--format", "jsonl"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let last: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    let s = &last["summary"];
    assert!(s["total"].as_u64().unwrap() > 0);
    assert_eq!(s["equal"], s["total"]);
    let keys = ["identity", "params", "n", "a_n", "c", "r", "s", "d", "lhs", "rhs", "equal", "class"];
    for line in text.lines().take(5) {
        let pos: Vec<usize> = keys.iter().map(|k| line.find(&format!("\"{k}\":")).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{line}");
    }
}

#[test]
fn sweep_empty_grid() {
    let o = nestsum(&["sweep", "--identity", "F3", "--n", "2..1", "--format", "jsonl"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        r#"{"summary":{"total":0,"equal":0,"mismatch":0,"outside_equal":0,"outside_mismatch":0,"skipped":0,"error":0}}"#
    );
}

#[test]
fn sweep_csv_header() {
    let o = nestsum(&[
        "sweep",
        "--identity",
        "F4",
        "--family",
        "negdisc",
        "--n",
        "2",
        "--r",
        "1",
        "--s",
        "0",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("identity,a,b,p,q,n,a_n,c,r,s,d,lhs,rhs,equal,class"));
    assert!(text.lines().skip(1).all(|l| l.split(',').count() == 15));
}

#[test]
fn sweep_output_is_reproducible() {
    let args = ["sweep", "--identity", "F5,F7_G", "--sample", "60", "--seed", "11", "--format", "jsonl"];
    let a = nestsum(&args);
    let b = nestsum(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 121);
}

#[test]
fn sweep_writes_to_file() {
    let dir = std::env::temp_dir().join(format!("nestsum-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.jsonl");
    let o = nestsum(&["sweep", "--identity", "H", "--n", "1..2", "--format", "jsonl", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().last().unwrap().starts_with(r#"{"summary""#));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn table_double_sum() {
    let o = nestsum(&["table", "--n", "2", "--an", "1..10", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let fib = |k: usize| {
        let (mut a, mut b) = (0i64, 1i64);
        for _ in 0..k {
            (a, b) = (b, a + b);
        }
        a
    };
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("a_n,lhs,rhs"));
    for (m, line) in (1..=10).zip(lines) {
        let want = fib(m + 4) - fib(4) - m as i64;
        assert_eq!(line, format!("{m},{want}/1,{want}/1"));
    }
}

#[test]
fn table_empty_range() {
    let o = nestsum(&["table", "--an", "3..2", "--format", "csv"]);
    assert_eq!(stdout(&o), "a_n,lhs,rhs\n");
}

#[test]
fn bench_csv_counts() {
    let o = nestsum(&["bench", "--n", "3", "--range", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(text.lines().next(), Some("instance_id,method,n,range,summand_evals,wall_ns"));
    assert_eq!(rows[0][..5], ["ones", "closed", "3", "4", "1"]);
    assert_eq!(rows[1][..5], ["ones", "dp", "3", "4", "15"]);
    // binom(4 + 3, 3)
    assert_eq!(rows[2][..5], ["ones", "naive", "3", "4", "35"]);

    let o = nestsum(&["bench", "--identity", "F3", "--n", "4", "--range", "2"]);
    let closed = stdout(&o).lines().nth(1).unwrap().to_string();
    assert!(closed.starts_with("F3,closed,4,2,9,"), "{closed}");
}

#[test]
fn lemmas_pass_and_report_skip() {
    let o = nestsum(&["lemmas"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.contains(" pass: ")).count(), 3);
    assert!(text.contains("skipped (p, q) = (2, 1)"));
}
