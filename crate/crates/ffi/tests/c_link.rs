use std::path::{Path, PathBuf};
use std::process::Command;

fn target_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_static_library() {
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let crate_dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libqverify_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let out = std::env::temp_dir().join(format!("qverify-c-smoke-{}", std::process::id()));
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(crate_dir.join("tests/c_smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    std::fs::remove_file(&out).ok();
    let text = String::from_utf8_lossy(&run.stdout);
    assert!(run.status.success(), "exit {:?}: {text}", run.status.code());
    assert!(text.contains(concat!("ok ", env!("CARGO_PKG_VERSION"))));
}
