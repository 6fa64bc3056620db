#![allow(dead_code)]

use hamdecomp::cli::run;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI in-process with `stdin` as input.
pub fn hd(args: &[&str], stdin: &str) -> Run {
    let argv = std::iter::once("hamdecomp").chain(args.iter().copied());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

pub fn json(r: &Run) -> serde_json::Value {
    serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {}", r.stdout))
}

/// Edge list of two disjoint complete digraphs on 5 vertices.
pub fn two_cliques() -> String {
    let arcs: Vec<(usize, usize)> = [0, 5]
        .iter()
        .flat_map(|&o| {
            (0..5).flat_map(move |a| (0..5).filter(move |&b| b != a).map(move |b| (a + o, b + o)))
        })
        .collect();
    let mut s = format!("10 {} directed\n", arcs.len());
    for (u, v) in arcs {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// `gen` output for the given model arguments.
pub fn generated(args: &[&str]) -> String {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let r = hd(&full, "");
    assert_eq!(r.code, 0, "{}", r.stderr);
    r.stdout
}
