use std::io::Write;
use std::process::{Command, Output};

fn ordalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordalg"))
        .args(args)
        .env_remove("ORDALG_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn machine(o: &Output) -> String {
    stdout(o).lines().find(|l| l.starts_with("#!")).unwrap_or_default().to_string()
}

const C3: &str = "pea n=3 zero=0 one=2\nname 1 a\nadd 0 0 0\nadd 0 1 1\nadd 1 0 1\nadd 0 2 2\nadd 2 0 2\nadd 1 1 2\n";

fn file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn axioms_pass_and_fail() {
    let f = file(C3);
    let o = ordalg(&["check-axioms", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(machine(&o), "#! verdict=pass size=3 commutative=true");

    let bad = file(&C3.replace("add 1 1 2", "add 1 1 1"));
    let o = ordalg(&["check-axioms", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(machine(&o), "#! verdict=fail axiom=PE2 witness=a");
}

#[test]
fn parse_errors_carry_positions() {
    let f = file("pea n=3 zero=0 one=2\nadd 0 b 1\n");
    let o = ordalg(&["check-axioms", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2, column 7"), "{err}");

    let o = ordalg(&["interpolate", "--group", "lex(Z^2, Z)", "--a1", "1", "--a2", "1", "--b1", "1", "--b2", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("lex head must be linearly ordered"));
}

#[test]
fn rdp_table_layout() {
    let o = ordalg(&[
        "check-rdp", "--group", "lex(Z, Z)", "--a1", "(3, 7)", "--a2", "(0, 4)", "--b1", "(1, 2)", "--b2", "(2, 9)",
        "--oracle",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("(3, 7) | (1, 2) (2, 5)"), "{out}");
    assert!(out.contains("(0, 4) | (0, 0) (0, 4)"), "{out}");
    assert!(machine(&o).contains("c12=(2,5)"));

    let o = ordalg(&[
        "check-rdp", "--group", "lex(Z, Z)", "--a1", "(3, 7)", "--a2", "(0, 4)", "--b1", "(1, 2)", "--b2", "(2, 9)",
        "--table", "(1, 2)", "(2, 4)", "(0, 0)", "(0, 4)",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("invalid (row 1 sum)"));
}

#[test]
fn negative_coordinates_are_values() {
    let o = ordalg(&[
        "interpolate", "--group", "lex(Q, Z)", "--a1", "(0, 5)", "--a2", "(0, 7)", "--b1", "(1, -3)", "--b2", "(1, -9)",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(machine(&o), "#! verdict=pass c=(1/2,0)");
}

#[test]
fn classification_flags() {
    let o = ordalg(&["classify-perfect", "--pea", "gamma(lex(Q, Z), (1, 1))", "--H", "Q"]);
    assert!(machine(&o).contains("strong_divisibility_fails_at=2"), "{}", stdout(&o));
    let o = ordalg(&["classify-perfect", "--pea", "gamma(lex(Q, Z^2), (1, (0, 0)))", "--H", "Q"]);
    assert!(machine(&o).contains("strong_perfect=true"));
    let o = ordalg(&["classify-perfect", "--pea", "chain(2)", "--H", "Z/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("torsion free: not determinable"));
}

#[test]
fn representation_is_deterministic() {
    let args = ["represent", "--H", "Z/4", "--G", "Z", "--samples", "100", "--seed", "9"];
    let a = ordalg(&args);
    let b = ordalg(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_ordalg"))
        .args(&args[..7])
        .env("ORDALG_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);

    let mut bad = args.to_vec();
    bad.push("--corrupt");
    assert_eq!(ordalg(&bad).status.code(), Some(1));
}

#[test]
fn functor_separates_doubling() {
    let o = ordalg(&["functor", "--hom", "scale(2) : Z -> Z", "--against", "id : Z -> Z", "--samples", "50"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(machine(&o).ends_with("witness=(0,1)"), "{}", machine(&o));
}

#[test]
fn finite_reports() {
    let f = file(C3);
    let p = f.path().to_str().unwrap();
    let o = ordalg(&["states", p]);
    assert!(stdout(&o).contains("s0: 0=0 a=1/2 2=1"));
    let o = ordalg(&["ideals", p]);
    assert!(stdout(&o).contains("infinitesimals: {0}"));
    let o = ordalg(&["decompose", "--pea", p, "--H", "Z/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("E_1/2 = {a}"));
    let o = ordalg(&["oracle-rdp", "--group", "Z^2", "--a1", "(1,0)", "--a2", "(0,1)", "--b1", "(0,1)", "--b2", "(1,0)"]);
    assert!(machine(&o).contains("c11=(0,0)"));
}

#[test]
fn help_documents_grammar() {
    let o = ordalg(&["--help"]);
    let out = stdout(&o);
    assert!(out.contains("lex(A, B)") && out.contains("pea n=<size>"), "{out}");
}
