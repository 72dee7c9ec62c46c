use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_resconv"))
}

fn scenario(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(format!("{name}.toml"))
}

#[test]
fn verify_identity_exits_zero() {
    let out = bin().arg("verify").arg(scenario("identity")).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.lines().all(|l| l.starts_with("PASS")), "{stdout}");
}

#[test]
fn verify_broken_bound_names_relbound() {
    let out = bin().arg("verify").arg(scenario("broken_relbound")).output().unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("relbound"), "{stderr}");
}

#[test]
fn verify_reference_within_a_minute() {
    let t = Instant::now();
    let out = bin().arg("verify").arg(scenario("reference_slnrc")).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(t.elapsed().as_secs_f64() < 60.0);
}

#[test]
fn run_writes_outputs_and_seed_override() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args(["run"])
        .arg(scenario("broken_relbound"))
        .arg("--out")
        .arg(dir.path())
        .args(["--threads", "2", "--seed", "17"])
        .status()
        .unwrap();
    assert!(status.success());
    let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert!(csv.contains("# seed: 17"));
    assert!(csv.lines().any(|l| l.starts_with("n,dim,")));
    assert!(dir.path().join("verdicts.txt").exists());
    assert!(dir.path().join("nrc_i.dat").exists());
}

#[test]
fn spectrum_lists_member_eigenvalues() {
    let out = bin().arg("spectrum").arg(scenario("broken_relbound")).args(["--n", "2"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# n = 2, dim = 40"));
    let vals: Vec<f64> = lines.map(|l| l.parse().unwrap()).collect();
    assert_eq!(vals.len(), 40);
    assert!(vals.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn bad_config_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "name = \"x\"\nkind = \"slnrc\"\ninterval = [0, 1]\nm = 4\nns = [1]\n").unwrap();
    let out = bin().arg("verify").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("m"));
}
