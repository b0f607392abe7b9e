#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::OnceLock;

use gowers_core::sat::SOLVER_ENV;

const SOLVER_BIN: &str = "gowers-sat";

fn exe_name() -> String {
    format!("{SOLVER_BIN}{}", std::env::consts::EXE_SUFFIX)
}

fn profile_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().expect("test binary path");
    exe.parent()
        .and_then(Path::parent)
        .expect("test binary lives in target/<profile>/deps")
        .to_path_buf()
}

fn build_shim() -> PathBuf {
    let target = profile_dir()
        .parent()
        .expect("target directory")
        .join("solver-shim");
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let status = Command::new(cargo)
        .args(["build", "--quiet", "-p", "gowers-sat-shim", "--target-dir"])
        .arg(&target)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .status()
        .expect("running cargo to build the solver shim");
    assert!(status.success(), "building the solver shim failed");
    target.join("debug").join(exe_name())
}

/// Command line of the SAT solver used by the tests.
pub fn solver_command() -> String {
    static SOLVER: OnceLock<String> = OnceLock::new();
    SOLVER
        .get_or_init(|| {
            if let Ok(cmd) = std::env::var(SOLVER_ENV) {
                if !cmd.trim().is_empty() {
                    return cmd;
                }
            }
            let sibling = profile_dir().join(exe_name());
            let path = if sibling.is_file() {
                sibling
            } else {
                build_shim()
            };
            path.to_string_lossy().into_owned()
        })
        .clone()
}
