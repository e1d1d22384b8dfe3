#![allow(dead_code)]

use std::path::PathBuf;

use derivkit::derivop::{AffineData, Automorphism, Derivation, ShamsuddinForm};
use derivkit::exactalg::{rat, MultiPoly, Rational, Ring, UniPoly, VarId};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).expect("fixture exists")
}

pub fn all_fixtures(ext: &str) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(fixture(""))
        .expect("fixtures directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == ext))
        .collect();
    v.sort();
    v
}

/// Runs the CLI in-process; returns (exit code, stdout, stderr).
pub fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = derivkit::cli::run(std::iter::once("derivkit").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).expect("utf-8"), String::from_utf8(err).expect("utf-8"))
}

/// A file in the temp directory that is removed on drop.
pub struct TempFile(pub PathBuf);

impl TempFile {
    pub fn new(tag: &str, contents: &str) -> Self {
        let path = std::env::temp_dir().join(format!("derivkit-{}-{tag}", std::process::id()));
        std::fs::write(&path, contents).expect("temp file");
        TempFile(path)
    }

    pub fn path(&self) -> &str {
        self.0.to_str().expect("utf-8 path")
    }
}

impl Drop for TempFile {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.0);
    }
}

/// Integer coefficients in `[lo, hi]`, degree at most `max_deg`.
pub fn random_uni(rng: &mut ChaCha8Rng, max_deg: usize, lo: i64, hi: i64) -> UniPoly {
    let deg = rng.gen_range(0..=max_deg);
    UniPoly::from_coeffs((0..=deg).map(|_| rat(rng.gen_range(lo..=hi))).collect())
}

pub fn random_nonzero_uni(rng: &mut ChaCha8Rng, max_deg: usize, lo: i64, hi: i64) -> UniPoly {
    loop {
        let p = random_uni(rng, max_deg, lo, hi);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A Shamsuddin form with `s ≤ max_s` components, `r_i ≤ max_r` and
/// `deg a_i ≤ max_deg_a`.
pub fn random_form(rng: &mut ChaCha8Rng, max_s: usize, max_r: usize, max_deg_a: usize) -> ShamsuddinForm {
    loop {
        let s = rng.gen_range(1..=max_s);
        let mut parts: Vec<(UniPoly, Vec<UniPoly>)> = Vec::new();
        for _ in 0..s {
            let a = random_nonzero_uni(rng, max_deg_a, -3, 3);
            if parts.iter().any(|(b, _)| *b == a) {
                continue;
            }
            let r = rng.gen_range(1..=max_r);
            let bs = (0..r).map(|_| random_uni(rng, 3, -3, 3)).collect();
            parts.push((a, bs));
        }
        if let Ok(form) = ShamsuddinForm::from_parts(parts) {
            return form;
        }
    }
}

/// `h_0 … h_n` with `h_k ∈ Z[X]`, `deg h_k ≤ max_deg`, `h_n ≠ 0`.
pub fn random_h(rng: &mut ChaCha8Rng, n: usize, max_deg: usize) -> Vec<UniPoly> {
    let mut h: Vec<UniPoly> = (0..n).map(|_| random_uni(rng, max_deg, -3, 3)).collect();
    h.push(random_nonzero_uni(rng, max_deg, -3, 3));
    h
}

/// A random polynomial in all variables of `ring`, small total degree.
pub fn random_multi(rng: &mut ChaCha8Rng, nvars: usize, max_terms: usize, max_deg: u32) -> MultiPoly {
    let terms = (0..rng.gen_range(0..=max_terms)).map(|_| {
        let exps: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=max_deg)).collect();
        let num = rng.gen_range(-5i64..=5);
        let den = rng.gen_range(1i64..=3);
        (exps, Rational::new(num.into(), den.into()))
    });
    MultiPoly::from_terms(nvars, terms)
}

pub fn random_derivation(rng: &mut ChaCha8Rng) -> Derivation {
    let n = rng.gen_range(1..=3);
    let names = ["X", "Y", "Z"];
    let ring = Ring::new(names[..n].iter().copied()).expect("distinct");
    let images = (0..n).map(|_| random_multi(rng, n, 4, 2)).collect();
    Derivation::new(ring, images).expect("one image per variable")
}

/// An invertible affine automorphism of `ring`.
pub fn random_affine(rng: &mut ChaCha8Rng, ring: &Ring) -> Automorphism {
    let m = ring.len() - 1;
    loop {
        let data = AffineData {
            alpha: rat(rng.gen_range(-2..=2)),
            matrix: (0..m).map(|_| (0..m).map(|_| rat(rng.gen_range(-2..=2))).collect()).collect(),
            translations: (0..m).map(|_| random_uni(rng, 2, -2, 2)).collect(),
        };
        if let Ok(rho) = Automorphism::affine(ring.clone(), &data) {
            return rho;
        }
    }
}

pub fn var(n: usize, i: usize) -> MultiPoly {
    MultiPoly::var(n, VarId(i))
}
