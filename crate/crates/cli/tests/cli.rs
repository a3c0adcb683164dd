use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cornerkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn generated_instance_feeds_verify() {
    let path = std::env::temp_dir().join(format!("cornerkit-sharp-{}.json", std::process::id()));
    let path_s = path.to_str().unwrap();
    let gen = run(&["gen", "sharpness", "--s", "3", "--t", "100", "--out", path_s]);
    assert_eq!(gen.status.code(), Some(0));

    let v = run(&["verify", "thm3", "--instance", path_s, "--format", "csv"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(v.status.code(), Some(0));
    let out = stdout(&v);
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("instance_id,theorem,r,d,delta_num,delta_den,rhs_num,rhs_den,holds,tight")
    );
    assert_eq!(lines.next(), Some("sharpness-s3-t100,thm3,2,0,803,4,402,1,true,false"));
}

#[test]
fn one_based_indices_on_output() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["verify", "thm1", "--instance", "paper2x4"]))).unwrap();
    assert_eq!(v[0]["gamma"], serde_json::json!([1, 2]));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "thm3", "--instance", "paper2x4"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "thm1", "--instance", "/nonexistent/instance.json"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["verify", "thm1", "--instance", "paper2x4", "--quiet"])
            .status
            .code(),
        Some(0)
    );
}
