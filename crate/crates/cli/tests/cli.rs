use std::path::Path;
use std::process::{Command, Output};

fn cnnw(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cnnw"))
        .args(args)
        .current_dir(dir)
        .env_remove("CNNW_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn lines(path: &Path) -> Vec<String> {
    std::fs::read_to_string(path)
        .unwrap_or_else(|e| panic!("{}: {e}", path.display()))
        .lines()
        .map(String::from)
        .collect()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const SOD: &str = "[case]\nname = \"sod\"\n[scheme]\nkind = \"HCCS(1,1,1,1)\"\n";

#[test]
fn sod_field_dump() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "sod.toml", SOD);
    let o = cnnw(&["--reference", "run", "--config", &cfg, "--output-dir", "out"], tmp.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let out = tmp.path().join("out");
    let field = lines(&out.join("field.csv"));
    assert_eq!(field[0], "x,cell,node,rho,u,p,scheme");
    assert_eq!(field.len(), 201);
    let last: Vec<&str> = field[200].split(',').collect();
    assert_eq!(last[1..3], ["39", "4"]);
    assert!(last[6] == "0" || last[6] == "1" || last[6] == "2" || last[6] == "3");
    let norms = lines(&out.join("norms.csv"));
    assert_eq!(norms[0], "l1,l2,linf");
    let l1: f64 = norms[1].split(',').next().unwrap().parse().unwrap();
    assert!(l1 > 0.0 && l1 < 0.02, "{l1}");
    assert!(lines(&out.join("troubled.csv")).len() > 1);
    // the shock tube has inflow boundaries, so no conservation report
    assert!(!out.join("conservation.csv").exists());
}

#[test]
fn numbers_have_seventeen_digits() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "sod.toml", SOD);
    let o = cnnw(&["--reference", "run", "--config", &cfg, "--output-dir", "out"], tmp.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let field = lines(&tmp.path().join("out/field.csv"));
    for cell in field[1].split(',').filter(|s| s.contains('e')) {
        let mantissa = cell.split('e').next().unwrap();
        assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17, "{cell}");
    }
}

#[test]
fn effective_config_reproduces_the_run() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(
        tmp.path(),
        "vortex.toml",
        "[case]\nname = \"vortex\"\n[grid]\nmx = 6\nmy = 6\n[scheme]\nkind = \"HCCS(1,1,1,1)\"\na = 0.005\n\
         [time]\nt_end = 0.2\n[output]\ncadence = 0.05\n",
    );
    let a = cnnw(&["--reference", "run", "--config", &cfg, "--output-dir", "a"], tmp.path());
    assert!(a.status.success(), "{}", stderr(&a));
    let eff = tmp.path().join("a/effective.toml").to_string_lossy().into_owned();
    let b = cnnw(&["--reference", "run", "--config", &eff, "--output-dir", "b"], tmp.path());
    assert!(b.status.success(), "{}", stderr(&b));
    for f in ["field.csv", "norms.csv", "conservation.csv", "troubled.csv", "effective.toml"] {
        let x = std::fs::read(tmp.path().join("a").join(f)).unwrap();
        let y = std::fs::read(tmp.path().join("b").join(f)).unwrap();
        assert!(x == y, "{f} differs");
    }
    assert_eq!(lines(&tmp.path().join("a/conservation.csv")).len(), 6);
}

#[test]
fn output_dir_precedence() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(
        tmp.path(),
        "sod.toml",
        "[case]\nname = \"sod\"\n[grid]\nmx = 8\n[output]\ndirectory = \"from_config\"\ndump = [\"norms\"]\n",
    );
    let o = cnnw(&["--reference", "run", "--config", &cfg], tmp.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(tmp.path().join("from_config/norms.csv").exists());
    assert!(!tmp.path().join("from_config/field.csv").exists());

    let o = Command::new(env!("CARGO_BIN_EXE_cnnw"))
        .args(["--reference", "run", "--config", &cfg])
        .current_dir(tmp.path())
        .env("CNNW_OUTPUT_DIR", "from_env")
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(tmp.path().join("from_env/norms.csv").exists());
}

#[test]
fn missing_case_is_a_usage_error() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "bad.toml", "[grid]\nmx = 10\n");
    let o = cnnw(&["run", "--config", &cfg], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("case"), "{}", stderr(&o));
}

#[test]
fn unknown_key_is_a_usage_error() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "bad.toml", "[case]\nname = \"sod\"\n[time]\nsteps = 10\n");
    let o = cnnw(&["run", "--config", &cfg], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    let cfg = write(tmp.path(), "bad2.toml", "[case]\nname = \"nowhere\"\n");
    assert_eq!(cnnw(&["run", "--config", &cfg], tmp.path()).status.code(), Some(2));
}

#[test]
fn positivity_abort_reports_cell_and_time() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(
        tmp.path(),
        "strong.toml",
        "[case]\nname = \"riemann_mach\"\nmach = 20.0\n[scheme]\nkind = \"C5NNW5\"\n[variables]\nset = \"primitive\"\n",
    );
    let o = cnnw(&["--reference", "run", "--config", &cfg, "--output-dir", "out"], tmp.path());
    assert_eq!(o.status.code(), Some(1));
    let msg = stderr(&o);
    assert!(msg.contains("positivity violation in cell") && msg.contains("t = "), "{msg}");
}

#[test]
fn spectra_export_has_one_row_per_group_and_sample() {
    let tmp = tempfile::tempdir().unwrap();
    let o = cnnw(&["spectra", "--scheme", "C5NNW5", "--cells", "40", "--output-dir", "s"], tmp.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = lines(&tmp.path().join("s/spectra.csv"));
    assert_eq!(rows[0], "group,phi,re,im,exact_im");
    assert_eq!(rows.len(), 1 + 5 * 41);
    assert!(rows[1].starts_with("1,0.0000000000000000e0,"));
}

#[test]
fn convergence_table() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(
        tmp.path(),
        "adv.toml",
        "[case]\nname = \"advection\"\n[scheme]\nkind = \"C5NNW5\"\n[weights]\nkind = \"linear\"\n[time]\ndt = 1e-3\n",
    );
    let o = cnnw(&["--reference", "convergence", "--config", &cfg, "--cells", "3,6", "--output-dir", "c"], tmp.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = lines(&tmp.path().join("c/convergence.csv"));
    assert_eq!(rows.len(), 3);
    let first: Vec<&str> = rows[1].split(',').collect();
    assert_eq!(first[0], "15");
    assert_eq!(first[3], "");
    let order: f64 = rows[2].split(',').nth(3).unwrap().parse().unwrap();
    assert!((order - 5.0).abs() < 0.3, "{order}");

    let one = cnnw(&["convergence", "--config", &cfg, "--cells", "3", "--output-dir", "d"], tmp.path());
    assert!(one.status.success());
    assert_eq!(lines(&tmp.path().join("d/convergence.csv"))[1].split(',').nth(4), Some(""));

    let dmr = write(tmp.path(), "dmr.toml", "[case]\nname = \"double_mach\"\n");
    let o = cnnw(&["convergence", "--config", &dmr, "--cells", "4,8"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn audit_subcommand() {
    let tmp = tempfile::tempdir().unwrap();
    let o = cnnw(&["audit", "--scheme", "WCNS3", "--k", "2", "--cells", "40", "--dense"], tmp.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("sg_equals_sh = true"), "{text}");
}
