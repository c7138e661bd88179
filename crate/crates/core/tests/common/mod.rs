#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tencode_core::json::{parse_code_doc, CodeDoc};
use tencode_core::{Field, Shape, Tensor, TensorCode};

pub fn fixture_text(name: &str) -> String {
    let path = format!("{}/../cli/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn fixture_doc(name: &str) -> CodeDoc {
    parse_code_doc(&fixture_text(name)).unwrap()
}

pub fn fixture(name: &str) -> TensorCode {
    fixture_doc(name).build().unwrap()
}

/// Generators in file order, unreduced.
pub fn generators(name: &str) -> Vec<Tensor> {
    let doc = fixture_doc(name);
    let field = doc.field.build().unwrap();
    doc.basis
        .iter()
        .map(|t| t.build(&field, Some(&doc.dims)).unwrap())
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vector(rng: &mut impl Rng, q: usize, n: usize) -> Vec<u8> {
    (0..n).map(|_| rng.gen_range(0..q) as u8).collect()
}

/// A random code of dimension at most `k`.
pub fn random_code(rng: &mut impl Rng, shape: &Shape, k: usize) -> TensorCode {
    let rows: Vec<Vec<u8>> = (0..k)
        .map(|_| random_vector(rng, shape.q(), shape.n()))
        .collect();
    TensorCode::from_rows(shape, &rows).unwrap()
}

/// The ambient spaces of the property sweeps.
pub fn sweep_shapes() -> Vec<Shape> {
    let mut out = Vec::new();
    for p in [2, 3] {
        let f = Field::prime(p).unwrap();
        for dims in [&[2, 2][..], &[2, 3], &[2, 2, 2]] {
            out.push(Shape::new(&f, dims).unwrap());
        }
    }
    out
}

/// Largest code dimension drawn by the sweeps; subcode enumeration for the
/// direct weight distribution grows like `q^(k^2/4)`.
pub const SWEEP_MAX_K: usize = 4;

/// `count` nonzero random codes per ambient space, seeded by `seed`.
pub fn sweep_codes(seed: u64, count: usize) -> Vec<TensorCode> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    for shape in sweep_shapes() {
        let mut made = 0;
        while made < count {
            let k = r.gen_range(1..shape.n().min(SWEEP_MAX_K + 1));
            let c = random_code(&mut r, &shape, k);
            if c.k() > 0 {
                out.push(c);
                made += 1;
            }
        }
    }
    out
}
