use std::path::Path;
use std::process::{Command, Output};

fn chwave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chwave")).args(args).output().unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn csv_column(text: &str, col: usize) -> Vec<f64> {
    text.lines().skip(1).map(|l| l.split(',').nth(col).unwrap().parse().unwrap()).collect()
}

#[test]
fn classify_examples() {
    let o = chwave(&["classify", "--c", "1", "--kappa", "0", "--r", "0.1", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["regime"], "unimodal_max");
    assert_eq!(v["window"]["r2"], 0.5);
    assert_eq!(chwave(&["classify", "--c", "1", "--kappa", "-1", "--r", "0"]).status.code(), Some(2));
    let v = json(&chwave(&["classify", "--c", "1", "--kappa", "0", "--r", "0.6", "--format", "json"]));
    assert_eq!(v["regime"], "none");
}

#[test]
fn period_scan_signs_and_sidecar() {
    let dir = tempdir();
    for (theta, changes, sign) in [("0.1", 1, 0.0), ("0.2", 0, 1.0), ("0.05", 0, -1.0)] {
        let out = dir.join(format!("scan_{theta}.csv"));
        let o = chwave(&["period-scan", "--theta", theta, "--n", "200", "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let text = std::fs::read_to_string(&out).unwrap();
        assert!(text.starts_with("h,a,T,Tprime\n") && !text.contains('\r'));
        let tp = csv_column(&text, 3);
        assert_eq!(tp.len(), 200);
        let n = tp.windows(2).filter(|w| (w[0] > 0.0) != (w[1] > 0.0)).count();
        assert_eq!(n, changes, "theta {theta}");
        if sign != 0.0 {
            assert!(tp.iter().all(|&d| d * sign > 0.0));
        }
        let side: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(format!("{}.json", out.display())).unwrap()).unwrap();
        assert!(side["T0"].as_f64().unwrap() > 0.0);
        assert_eq!(side["critical_period"].is_null(), changes == 0);
    }
    assert_eq!(chwave(&["period-scan", "--theta", "0.1", "--n", "1"]).status.code(), Some(2));
    assert_eq!(chwave(&["period-scan", "--theta", "-1"]).status.code(), Some(2));
}

#[test]
fn csv_is_byte_identical_across_runs() {
    let a = chwave(&["lambda-scan", "--c", "1", "--kappa", "0", "--r", "0.3", "--n", "100"]);
    let b = chwave(&["lambda-scan", "--c", "1", "--kappa", "0", "--r", "0.3", "--n", "100"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("a,lambda\n"));
    // 17 significant digits in every cell
    let cell = text.lines().nth(1).unwrap().split(',').next().unwrap();
    assert_eq!(cell.split('e').next().unwrap().replace(['.', '-'], "").len(), 17);
}

#[test]
fn lambda_scan_shapes() {
    for (r, dir) in [("-0.1", 1.0), ("0.3", -1.0)] {
        let o = chwave(&["lambda-scan", "--c", "1", "--kappa", "0", "--r", r, "--n", "100"]);
        let lam = csv_column(&String::from_utf8(o.stdout).unwrap(), 1);
        assert!(lam.windows(2).all(|w| (w[1] - w[0]) * dir > 0.0), "r = {r}");
    }
    assert_eq!(chwave(&["lambda-scan", "--c", "1", "--kappa", "0", "--r", "0.6"]).status.code(), Some(2));
}

#[test]
fn certify_reports() {
    let v = json(&chwave(&["certify", "--theta", "1/8", "--format", "json"]));
    assert_eq!((v["Z"].as_u64(), v["bound"].as_u64()), (Some(2), Some(2)));
    assert_eq!(v["regime"], "unimodal_max");
    assert_eq!(v["theta"], "1/8");
    assert!(v["identity_checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    let v = json(&chwave(&["certify", "--theta", "1/32", "--format", "json"]));
    assert_eq!((v["Z"].as_u64(), v["regime"].as_str()), (Some(0), Some("decreasing")));
    let v = json(&chwave(&["certify", "--theta", "1/5", "--format", "json"]));
    assert_eq!((v["case"].as_str(), v["regime"].as_str()), (Some("ell1_regime"), Some("increasing")));
    assert_eq!(chwave(&["certify", "--theta", "0"]).status.code(), Some(2));
    assert_eq!(chwave(&["certify", "--theta", "x/y"]).status.code(), Some(2));
}

#[test]
fn profile_output() {
    let dir = tempdir();
    let out = dir.join("phi.csv");
    // a_max = 0.5527864045 at (1, 0, 0.1)
    let a = 0.5 * 0.552_786_404_500_042_3;
    let o = chwave(&["profile", "--c", "1", "--kappa", "0", "--r", "0.1", "--a", &a.to_string(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("s,phi\n"));
    assert_eq!(text.lines().count(), 1025);
    let side: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("phi.csv.json")).unwrap()).unwrap();
    assert!(side["residual"].as_f64().unwrap() < 1e-6);
    assert!((side["wave_height"].as_f64().unwrap() - a).abs() < 1e-8);
    assert!(side["wave_length"].as_f64().unwrap() > 0.0);
    assert_eq!(chwave(&["profile", "--c", "1", "--kappa", "0", "--r", "0.1", "--a", "0"]).status.code(), Some(2));
}

#[test]
fn threads_and_tolerance_are_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_chwave"))
        .args(["classify", "--c", "1", "--kappa", "0", "--r", "0.1"])
        .env("CHWAVE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_chwave"))
        .args(["period-scan", "--theta", "0.1", "--n", "20"])
        .env("CHWAVE_THREADS", "2")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(chwave(&["period-scan", "--theta", "0.1", "--tol", "-1"]).status.code(), Some(2));
}

fn tempdir() -> std::path::PathBuf {
    let d = Path::new(env!("CARGO_TARGET_TMPDIR")).join(format!("cli-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
