use std::process::{Command, Output};

fn sudler(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sudler"))
        .args(args)
        .env_remove("SUDLER_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn series_to_file() {
    let dir = std::env::temp_dir().join(format!("sudler-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("phi.csv");
    let o = sudler(&["series", "--alpha", "phi", "--nmax", "250", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 252);
    assert!(text.starts_with("# sudler "));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_2() {
    let o = sudler(&["series", "--alpha", "[0;1,(2"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("column"), "{err}");
    assert_eq!(sudler(&["series", "--alpha", "[0;2,3]"]).status.code(), Some(2));
    assert_eq!(sudler(&["threshold", "-3"]).status.code(), Some(2));
    assert_eq!(sudler(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn precision_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_sudler"))
        .args(["series", "--nmax", "2"])
        .env("SUDLER_PRECISION", "320")
        .output()
        .unwrap();
    assert!(stdout(&o).lines().next().unwrap().contains("precision=320"));
    let o = Command::new(env!("CARGO_BIN_EXE_sudler"))
        .args(["series", "--nmax", "2"])
        .env("SUDLER_PRECISION", "16")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn table_row_for_six() {
    let o = sudler(&["minmax", "--alpha", "[0;(6)]", "--nmax", "50000"]);
    let ns: Vec<String> = stdout(&o)
        .lines()
        .skip(2)
        .map(|l| l.split(',').next().unwrap().to_string())
        .collect();
    assert_eq!(ns, ["1", "7", "44", "272", "1677", "10335"]);
}

#[test]
fn threshold_outputs() {
    assert_eq!(stdout(&sudler(&["threshold", "1e4"])), "none\n");
    let k = stdout(&sudler(&["threshold", "exp(900)"]));
    assert!(k.trim().chars().all(|c| c.is_ascii_digit()));
    assert!(k.trim().len() > 340);
}

#[test]
fn overlay_marks_fibonacci() {
    let dir = std::env::temp_dir().join(format!("sudler-overlay-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("overlay.csv");
    let o = sudler(&["minmax", "--kind", "max", "--nmax", "100", "--overlay", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let row = |n: usize| text.lines().nth(n + 1).unwrap().to_string();
    assert!(row(89).ends_with(",F"));
    assert!(row(88).ends_with(",F-1"));
    assert!(row(50).ends_with(','));
    std::fs::remove_dir_all(&dir).unwrap();
}
