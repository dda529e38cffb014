#![allow(dead_code)]

use std::path::Path;
use std::process::Command;

use num_complex::Complex64;
use serde_json::Value;

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_permsym"))
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| {
            panic!(
                "stdout is not JSON ({e}):\n{}\nstderr:\n{}",
                self.stdout, self.stderr
            )
        })
    }
}

pub fn run(args: &[&str]) -> Run {
    let out = bin().args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

/// Runs a command expected to succeed and returns its JSON document.
pub fn ok(args: &[&str]) -> Value {
    let r = run(args);
    assert_eq!(r.code, 0, "{args:?} failed:\n{}\n{}", r.stdout, r.stderr);
    let doc = r.json();
    assert_eq!(doc["status"], "ok");
    doc
}

/// Runs a state-producing command and writes its output to `path`.
pub fn save(args: &[&str], path: &Path) -> Value {
    let doc = ok(args);
    std::fs::write(path, serde_json::to_string(&doc).unwrap()).unwrap();
    doc
}

pub fn write_state(path: &Path, n: usize, amps: &[Complex64]) {
    let doc = serde_json::json!({
        "n": n,
        "convention": "bigendian-q1msb",
        "amplitudes": amps.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
    });
    std::fs::write(path, doc.to_string()).unwrap();
}

pub fn amplitudes(doc: &Value) -> Vec<Complex64> {
    doc["amplitudes"]
        .as_array()
        .expect("amplitudes")
        .iter()
        .map(|p| Complex64::new(p[0].as_f64().unwrap(), p[1].as_f64().unwrap()))
        .collect()
}

pub fn complex(v: &Value) -> Complex64 {
    Complex64::new(v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn omega() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0)
}

/// Images (one-based) of a permutation written in cycle notation.
pub fn cycle_images(text: &str, n: usize) -> Vec<usize> {
    let mut images: Vec<usize> = (1..=n).collect();
    if text == "e" {
        return images;
    }
    for cycle in text.trim_matches(|c| c == '(' || c == ')').split(")(") {
        let pts: Vec<usize> = cycle.split(',').map(|p| p.parse().unwrap()).collect();
        for (i, &p) in pts.iter().enumerate() {
            images[p - 1] = pts[(i + 1) % pts.len()];
        }
    }
    images
}

/// Moves the bit at position `j` (one-based, position 1 most significant)
/// to position `images[j-1]`.
pub fn permute_amplitudes(amps: &[Complex64], images: &[usize]) -> Vec<Complex64> {
    let n = images.len();
    let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
    for (index, a) in amps.iter().enumerate() {
        let mut target = 0usize;
        for (j, &img) in images.iter().enumerate() {
            if index >> (n - 1 - j) & 1 == 1 {
                target |= 1 << (n - img);
            }
        }
        out[target] = *a;
    }
    out
}
