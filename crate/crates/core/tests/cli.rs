use std::fs;
use std::path::Path;

use stable_jacobi::cli::run;

fn run_in(dir: &Path, args: &[&str]) -> i32 {
    let mut argv = vec!["stable-jacobi".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    argv.extend(["--out".to_string(), dir.to_str().unwrap().to_string(), "--quiet".to_string()]);
    run(argv)
}

fn report(dir: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

#[test]
fn prange_values() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run_in(dir.path(), &["prange", "--zeta", "0", "--eta", "0"]), 0);
    let r = report(dir.path());
    assert!((r["report"]["lower"].as_f64().unwrap() - 4.0 / 3.0).abs() < 1e-12);
    assert_eq!(r["report"]["upper"].as_f64().unwrap(), 4.0);
    assert!(dir.path().join("config.echo").exists());
    assert!(dir.path().join("report.csv").exists());
}

#[test]
fn polynomial_converge_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let code = run_in(
        dir.path(),
        &["converge", "--g", "poly:1,0,2", "--zeta", "0", "--eta", "0", "--chi", "1.5", "--p", "2", "--a", "-0.5", "--b", "0.5", "--paths", "2000", "--steps", "1024", "--seed", "7"],
    );
    assert_eq!(code, 0);
    let csv = fs::read_to_string(dir.path().join("report.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "u,eps,m,p_hat,se,bound,verdict");
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[3], "0", "{line}");
        assert_eq!(cols[6], "pass");
    }
    let coeffs = fs::read_to_string(dir.path().join("coefficients.csv")).unwrap();
    assert!(coeffs.starts_with("m,c_m\n"));
    assert_eq!(coeffs.lines().count(), 130);
}

#[test]
fn hypothesis_violation_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run_in(dir.path(), &["converge", "--p", "5", "--zeta", "0", "--eta", "0"]), 2);
    assert!(!dir.path().join("report.json").exists());
    // the weight (1+u)^1 exceeds one right of zero
    assert_eq!(run_in(dir.path(), &["tailcheck", "--eta", "1", "--paths", "10"]), 2);
    assert_eq!(run_in(dir.path(), &["converge", "--g", "bogus:1"]), 2);
    assert_eq!(run_in(dir.path(), &["cfcheck", "--unknown-flag", "1"]), 2);
}

#[test]
fn expect_failure_runs_and_inverts() {
    let dir = tempfile::tempdir().unwrap();
    let code = run_in(
        dir.path(),
        &["converge", "--p", "5", "--expect-failure", "--paths", "300", "--steps", "256", "--m-max", "8", "--m-ref", "32"],
    );
    // cos:1 still converges, so the inverted verdict fails
    assert_eq!(code, 1);
    let r = report(dir.path());
    assert!(r["report"]["hypothesis_violations"][0].as_str().unwrap().contains("p outside"));
}

#[test]
fn cfcheck_constant_against_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let code = run_in(
        dir.path(),
        &["cfcheck", "--g", "const:1", "--chi", "2", "--a", "0", "--b", "0.5", "--x", "1", "--paths", "100000", "--steps", "64", "--seed", "7"],
    );
    assert_eq!(code, 0);
    let row = &report(dir.path())["report"]["rows"][0];
    assert!((row["theoretical"].as_f64().unwrap() - (-0.5f64).exp()).abs() < 1e-12);
    assert!(row["deviation"].as_f64().unwrap() <= 0.0204);
}

#[test]
fn config_echo_reproduces_the_run() {
    let first = tempfile::tempdir().unwrap();
    let args = ["exists", "--g", "step:0.2", "--zeta", "0.5", "--eta", "0.5", "--degrees", "4,8", "--paths", "200", "--steps", "128", "--seed", "3", "--eps", "0.2,0.4"];
    run_in(first.path(), &args);
    let echo = first.path().join("config.echo");
    let second = tempfile::tempdir().unwrap();
    run_in(second.path(), &["exists", "--config", echo.to_str().unwrap()]);
    for f in ["report.json", "report.csv", "config.echo"] {
        assert_eq!(fs::read(first.path().join(f)).unwrap(), fs::read(second.path().join(f)).unwrap(), "{f}");
    }
    // flags override the file
    let third = tempfile::tempdir().unwrap();
    run_in(third.path(), &["exists", "--config", echo.to_str().unwrap(), "--seed", "4"]);
    assert!(fs::read_to_string(third.path().join("config.echo")).unwrap().contains("seed = 4"));
}

#[test]
fn samplepaths_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run_in(dir.path(), &["samplepaths", "--paths", "2", "--steps", "16"]), 0);
    let x = fs::read_to_string(dir.path().join("x_0001.csv")).unwrap();
    assert!(x.starts_with("v,value\n-0.5,0\n"));
    assert_eq!(x.lines().count(), 18);
    assert!(dir.path().join("y_0001.csv").exists());
}

#[test]
fn orthocheck_passes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run_in(dir.path(), &["orthocheck", "--zeta", "2", "--eta", "0.5"]), 0);
}

#[test]
fn thread_count_does_not_change_reports() {
    let args = ["converge", "--g", "step:0", "--paths", "300", "--steps", "256", "--m-max", "8", "--m-ref", "32", "--seed", "1"];
    let dirs: Vec<_> = ["1", "3"]
        .iter()
        .map(|t| {
            let d = tempfile::tempdir().unwrap();
            let mut a = args.to_vec();
            a.extend(["--threads", t]);
            run_in(d.path(), &a);
            d
        })
        .collect();
    for f in ["report.json", "report.csv", "config.echo", "coefficients.csv"] {
        assert_eq!(fs::read(dirs[0].path().join(f)).unwrap(), fs::read(dirs[1].path().join(f)).unwrap());
    }
}
