use std::path::PathBuf;
use std::process::{Command, Output};

fn cert_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data/erdos-pentagon.cert.json")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagcert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("flagcert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn enumerate_lists_fourteen_hosts() {
    let o = run(&["enumerate", "--order", "5", "--forbid", "k3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 14);
    assert!(out.lines().any(|l| l == "DLo"));
}

#[test]
fn verify_shipped_certificate() {
    let cert = cert_path();
    let o = run(&["verify", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("@bound\t24/625\n"));
    assert_eq!(out.lines().filter(|l| l.starts_with("@host\t")).count(), 14);
    let again = run(&["verify", cert.to_str().unwrap()]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn verify_json_is_pure_json() {
    let cert = cert_path();
    let o = run(&["verify", "--json", cert.to_str().unwrap()]);
    let out = stdout(&o);
    assert!(out.trim_start().starts_with('{') && out.trim_end().ends_with('}'));
    assert!(out.contains("\"bound\": \"24/625\""));
}

#[test]
fn erdos_check_petersen() {
    let o = run(&["erdos-check", "--graph", "petersen"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "12 ≤ 32: below\n");
    let o = run(&["erdos-check", "--graph", "k3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--order", "5", "--forbid", "zz"]).status.code(), Some(2));
}

#[test]
fn flags_bound_trend_blowup() {
    let o = run(&["flags", "--type", "sigma0", "--m", "4"]);
    assert_eq!(stdout(&o).lines().count(), 8);
    let o = run(&["bound", "--order", "5", "--target", "c5"]);
    assert!(stdout(&o).contains("@bound\t1\n"));
    let o = run(&["trend", "--base", "c5", "--max", "3"]);
    let lines: Vec<String> = stdout(&o).lines().map(|l| l.split('\t').nth(1).unwrap().to_string()).collect();
    assert_eq!(lines, ["1", "8/63", "81/1001"]);
    let o = run(&["blowup", "--base", "c5", "--factors", "1,1,1,1,1"]);
    assert_eq!(stdout(&o), "Dhc\n");
}

#[test]
fn tables_and_expressions() {
    let o = run(&["tables", "--type", "sigma1", "--m", "4", "--order", "5"]);
    assert!(stdout(&o).contains("@t\t2\t1\t1\t1/10\n"));
    let cert = cert_path();
    let o = run(&["expressions", cert.to_str().unwrap()]);
    assert!(stdout(&o).contains(": (20q56 + 20r24 + 120)/120\n"));
}

#[test]
fn emit_and_round_trip() {
    let cert = cert_path();
    let exact = scratch("p.exact");
    let o = run(&["emit-sdp", cert.to_str().unwrap(), "--exact", exact.to_str().unwrap()]);
    assert!(o.status.success());
    let body: Vec<String> = stdout(&o).lines().filter(|l| !l.starts_with('"')).map(String::from).collect();
    assert_eq!(body[0], "14");
    assert_eq!(body[2], "8 6 5 -14 -1 -1");
    let sidecar = std::fs::read_to_string(&exact).unwrap();
    assert_eq!(sidecar.lines().filter(|l| l.starts_with("c ")).count(), 14);
    assert!(sidecar.lines().any(|l| l.starts_with("c ") && l.ends_with(" -1")));

    let text = std::fs::read_to_string(&cert).unwrap();
    let parsed: serde_like::Cert = serde_like::parse(&text);
    let matrices = scratch("m.txt");
    std::fs::write(&matrices, parsed.float_blocks()).unwrap();
    let out = scratch("rounded.json");
    let o = run(&[
        "round",
        cert.to_str().unwrap(),
        matrices.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["verify", out.to_str().unwrap()]);
    assert!(stdout(&o).contains("@verdict\tpass"));

    std::fs::write(&matrices, parsed.float_blocks().replace("0.0384", "-0.0384")).unwrap();
    let o = run(&["round", cert.to_str().unwrap(), matrices.to_str().unwrap(), "--denominators", "625"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("@witness\t"));
}

/// Reads matrices out of the certificate text without the library.
mod serde_like {
    pub struct Cert {
        blocks: Vec<Vec<Vec<f64>>>,
    }

    pub fn parse(text: &str) -> Cert {
        let mut blocks = vec![];
        for part in text.split("\"matrix\": [").skip(1) {
            let body = &part[..part.find("]\n    }").unwrap()];
            let rows = body
                .split('[')
                .skip(1)
                .map(|r| {
                    r[..r.find(']').unwrap()]
                        .split(',')
                        .map(|c| {
                            let c = c.trim().trim_matches('"');
                            match c.split_once('/') {
                                Some((n, d)) => n.parse::<f64>().unwrap() / d.parse::<f64>().unwrap(),
                                None => c.parse().unwrap(),
                            }
                        })
                        .collect()
                })
                .collect();
            blocks.push(rows);
        }
        Cert { blocks }
    }

    impl Cert {
        pub fn float_blocks(&self) -> String {
            let mut s = String::new();
            for b in &self.blocks {
                for r in b {
                    let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                    s.push_str(&cells.join(" "));
                    s.push('\n');
                }
                s.push('\n');
            }
            s
        }
    }
}
