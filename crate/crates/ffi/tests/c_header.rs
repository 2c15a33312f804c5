//! Compiles a small C program against the generated header and, when the
//! static library is available next to the test binary, links and runs it.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include "pvarlab.h"
#include <math.h>
#include <stdio.h>
int main(void) {
    double samples[8] = {0, 0.125, 0.25, 0.375, 0.5, 0.375, 0.25, 0.125};
    PvlGrid1 *g = NULL;
    if (pvl_grid1_new(samples, 8, &g) != PVL_STATUS_OK) return 1;
    double v = 0;
    if (pvl_pvar(g, 1.0, &v) != PVL_STATUS_OK) return 2;
    pvl_grid1_free(g);
    if (fabs(v - 1.0) > 1e-12) return 3;
    if (pvl_pvar(NULL, 1.0, &v) != PVL_STATUS_NULL_POINTER) return 4;
    printf("%s\n", pvl_status_message(PVL_STATUS_P_MUST_EXCEED_ONE));
    return 0;
}
"#;

fn cc() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc).arg("--version").output().ok().map(|_| cc)
}

fn static_lib() -> Option<PathBuf> {
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().ok()?;
    let profile_dir = exe.parent()?.parent()?;
    let lib = profile_dir.join("libpvarlab_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn header_compiles_and_links() {
    let Some(cc) = cc() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    assert!(
        include.join("pvarlab.h").exists(),
        "header was not generated"
    );
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success(), "header does not compile as C99");
    let Some(lib) = static_lib() else {
        eprintln!("static library not found; link step skipped");
        return;
    };
    let exe = dir.path().join("main");
    let status = Command::new(&cc)
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "link failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "program exited with {:?}", out.status);
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        "p must exceed 1"
    );
}
