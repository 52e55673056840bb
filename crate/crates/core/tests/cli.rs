use std::process::{Command, Output};

fn degenpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_degenpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = degenpoly(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn cosine_table_member() {
    assert_eq!(
        stdout(&["table", "--family", "deg-cosine", "--n", "2"]),
        "x^2 - l*x - y^2\n"
    );
}

#[test]
fn sine_of_degree_zero_is_zero() {
    assert_eq!(
        stdout(&["table", "--family", "deg-sine", "--n", "0"]),
        "0\n"
    );
}

#[test]
fn table_rows_and_closed_route_agree() {
    let series = stdout(&[
        "table",
        "--family",
        "deg-sin-euler",
        "--n-max",
        "5",
        "--order",
        "6",
    ]);
    let closed = stdout(&[
        "table",
        "--family",
        "deg-sin-euler",
        "--n-max",
        "5",
        "--order",
        "6",
        "--closed",
    ]);
    assert_eq!(series, closed);
    assert_eq!(series.lines().count(), 6);
    assert!(series.starts_with("0: 0\n1: y\n"));
}

#[test]
fn table_json_rows() {
    let out = stdout(&[
        "table",
        "--family",
        "deg-bernoulli-num",
        "--n",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(
        out,
        "{\"family\":\"deg-bernoulli-num\",\"n\":2,\"value\":\"-1/6*l^2 + 1/6\"}\n"
    );
}

#[test]
fn evaluation_at_classical_point() {
    // odd classical Euler polynomials vanish at 1/2
    assert_eq!(
        stdout(&[
            "table",
            "--family",
            "deg-bernoulli-num",
            "--n",
            "12",
            "--l",
            "0"
        ]),
        "-691/2730\n"
    );
    assert_eq!(
        stdout(&[
            "table",
            "--family",
            "deg-euler",
            "--n",
            "3",
            "--l",
            "0",
            "--x",
            "1/2"
        ]),
        "0\n"
    );
}

#[test]
fn stirling_csv() {
    let out = stdout(&["stirling", "--kind", "degenerate-second", "--n-max", "3"]);
    assert_eq!(
        out,
        "n,k,value\n0,0,1\n1,0,0\n1,1,1\n2,0,0\n2,1,-l + 1\n2,2,1\n\
         3,0,0\n3,1,2*l^2 - 3*l + 1\n3,2,-3*l + 3\n3,3,1\n"
    );
    let classical = stdout(&["stirling", "--kind", "second", "--n-max", "4"]);
    assert!(classical.contains("\n4,2,7\n"));
}

#[test]
fn series_coefficients() {
    assert_eq!(
        stdout(&["series", "--kernel", "exp", "--n-max", "2"]),
        "0: 1\n1: x\n2: x^2 - l*x\n"
    );
    assert_eq!(
        stdout(&["series", "--kernel", "cos", "--n-max", "2", "--format", "json"]),
        "{\"series\":\"cos\",\"n\":0,\"coeff\":\"1\"}\n\
         {\"series\":\"cos\",\"n\":1,\"coeff\":\"0\"}\n\
         {\"series\":\"cos\",\"n\":2,\"coeff\":\"-y^2\"}\n"
    );
}

#[test]
fn verify_json_report_and_summary() {
    let out = stdout(&[
        "verify",
        "--identity",
        "T6_reflect_cos",
        "--n-max",
        "1",
        "--order",
        "2",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(
        lines[0],
        "{\"id\":\"T6_reflect_cos\",\"n\":0,\"part\":\"\",\"verdict\":\"holds\",\"residual\":\"0\",\
         \"citation\":\"Ec_{n,l}(1-x,y) = (-1)^n Ec_{n,-l}(x,y)\"}"
    );
    assert_eq!(
        lines[2],
        "{\"summary\":{\"n_max\":1,\"order\":2,\"checks\":2,\"holds\":2,\"holds_variant\":0,\
         \"fails\":0,\"variant_tags\":[],\"success\":true}}"
    );
}

#[test]
fn verify_text_flags_variant() {
    let out = stdout(&[
        "verify",
        "--identity",
        "T7_stirling_euler_cos",
        "--n-max",
        "3",
        "--order",
        "4",
        "--format",
        "text",
    ]);
    assert!(out.contains("T7_stirling_euler_cos n=2 holds_variant\n"));
    assert!(out.contains("surviving variant binom(n,k)"));
    assert!(out
        .ends_with("checks 4 holds 0 holds_variant 4 fails 0 (variants: T7_stirling_euler_cos)\n"));
}

#[test]
fn errors_are_one_line_with_nonzero_exit() {
    for args in [
        &["table", "--family", "deg-nothing", "--n", "1"][..],
        &["table", "--family", "deg-euler", "--n", "20"],
        &["table", "--family", "deg-euler", "--n", "2", "--l", "1"],
        &["verify", "--identity", "T99", "--n-max", "1"],
        &["verify", "--n-max", "12", "--order", "12"],
        &[
            "stirling", "--kind", "first", "--format", "json", "--n-max", "40",
        ],
        &["series", "--kernel", "bernoulli", "--format", "csv"],
        &["table", "--family", "deg-euler"],
    ] {
        let out = degenpoly(args);
        assert!(!out.status.success(), "{args:?}");
        assert_ne!(
            out.status.code(),
            Some(1),
            "{args:?}: reserved for failed checks"
        );
        assert!(out.stdout.is_empty(), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
    }
}

#[test]
fn unbound_variable_is_named() {
    let out = degenpoly(&["table", "--family", "deg-cosine", "--n", "2", "--x", "1"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err, "error: variable l is unbound\n");
}

#[test]
fn negative_binding_values_parse() {
    // E_3(x) = x^3 - 3/2 x^2 + 1/4 at x = -1/2
    assert_eq!(
        stdout(&[
            "table",
            "--family",
            "deg-euler",
            "--n",
            "3",
            "--l",
            "0",
            "--x",
            "-1/2"
        ]),
        "-1/4\n"
    );
}
