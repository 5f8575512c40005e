//! Compiles a small C client against the generated header and, when the
//! static library is available, links and runs it.

use std::path::{Path, PathBuf};
use std::process::Command;

const CLIENT: &str = r#"
#include <stdio.h>
#include "inscribed_tri.h"

int main(void) {
    ItCurve *curve = NULL;
    if (it_curve_parse("gen:circle", &curve) != IT_STATUS_OK) {
        fprintf(stderr, "%s\n", it_last_error_message());
        return 1;
    }
    ItShape shape = {60.0, 60.0, 60.0};
    ItOptions opts = it_options_default();
    ItTriangleList *list = NULL;
    if (it_solve_similar(curve, &shape, 0.0, &opts, &list) != IT_STATUS_OK) {
        fprintf(stderr, "%s\n", it_last_error_message());
        return 1;
    }
    ItTriangle t;
    it_triangles_get(list, 0, &t);
    printf("%zu %.6f %.6f\n", it_triangles_len(list), t.t_p < t.t_q ? t.t_p : t.t_q, t.t_p < t.t_q ? t.t_q : t.t_p);
    it_triangles_free(list);
    it_curve_free(curve);
    return 0;
}
"#;

fn include_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include")
}

fn compiler() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc).arg("--version").output().ok().map(|_| cc)
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("client.c");
    std::fs::write(&src, CLIENT).unwrap();
    let out = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(include_dir())
        .arg(&src)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = Command::new(&cc)
        .args(["-x", "c++", "-fsyntax-only", "-I"])
        .arg(include_dir())
        .arg(&src)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn c_client_links_and_runs() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    // target/<profile>/deps/<this test> → target/<profile>/libinscribed_tri_ffi.a
    let exe = std::env::current_exe().unwrap();
    let lib = exe.parent().and_then(Path::parent).map(|d| d.join("libinscribed_tri_ffi.a"));
    let Some(lib) = lib.filter(|l| l.exists()) else {
        eprintln!("static library not found next to the test binary; skipping link test");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("client.c");
    let bin = dir.path().join("client");
    std::fs::write(&src, CLIENT).unwrap();
    let out = Command::new(&cc)
        .arg("-I")
        .arg(include_dir())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "1 0.333333 0.666667");
}
