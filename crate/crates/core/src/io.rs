//! JSON file formats. Indices are 0-based, omitted entries are zero and
//! scalars are exact rational strings such as `"-3/4"`.
//!
//! * algebra: `{"dim": n, "basis": [...], "products": [[i, j, k, "c"], ...]}`
//! * tensor2: `{"dim": n, "entries": [[i, j, "c"], ...]}`
//! * tensor3: `{"dim": n, "entries": [[i, j, k, "c"], ...]}`
//! * comultiplication: `{"dim": n, "entries": [[a, j, k, "c"], ...]}` meaning `Δ(e_a) += c e_j⊗e_k`
//! * form: `{"subalgebra": [i, ...], "gram": [["c", ...], ...]}`

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::bialgebra::Comultiplication;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Rational;
use crate::tensor::{Tensor2, Tensor3};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    dim: usize,
    #[serde(default)]
    basis: Option<Vec<String>>,
    #[serde(default)]
    products: Vec<(usize, usize, usize, Rational)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Tensor2File {
    dim: usize,
    #[serde(default)]
    entries: Vec<(usize, usize, Rational)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entries3File {
    dim: usize,
    #[serde(default)]
    entries: Vec<(usize, usize, usize, Rational)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormFile {
    subalgebra: Vec<usize>,
    gram: Vec<Vec<Rational>>,
}

/// A symplectic-form input: subalgebra basis indices and a Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct FormInput {
    pub subalgebra: Vec<usize>,
    pub gram: Matrix,
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn parse_algebra(text: &str) -> Result<Algebra> {
    let f: AlgebraFile = parse_json(text, "algebra")?;
    let labels = match f.basis {
        Some(b) if b.len() != f.dim => {
            return Err(Error::Parse(format!(
                "basis has {} labels but dim is {}",
                b.len(),
                f.dim
            )))
        }
        Some(b) => b,
        None => crate::random::default_labels(f.dim),
    };
    Algebra::from_products(labels, &f.products)
}

pub fn algebra_to_json(alg: &Algebra) -> String {
    let n = alg.dim();
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, c) in alg.product_terms(i, j) {
                products.push((i, j, *k, c.clone()));
            }
        }
    }
    let f = AlgebraFile {
        dim: n,
        basis: Some(alg.labels().to_vec()),
        products,
    };
    serde_json::to_string_pretty(&f).expect("serializable")
}

pub fn parse_tensor2(text: &str) -> Result<Tensor2> {
    let f: Tensor2File = parse_json(text, "tensor")?;
    Tensor2::from_entries(f.dim, &f.entries)
}

pub fn tensor2_to_json(t: &Tensor2) -> String {
    let f = Tensor2File {
        dim: t.dim(),
        entries: t.nonzero_entries(),
    };
    serde_json::to_string_pretty(&f).expect("serializable")
}

pub fn parse_tensor3(text: &str) -> Result<Tensor3> {
    let f: Entries3File = parse_json(text, "tensor")?;
    Tensor3::from_entries(f.dim, &f.entries)
}

pub fn tensor3_to_json(t: &Tensor3) -> String {
    let f = Entries3File {
        dim: t.dim(),
        entries: t
            .nonzero_entries()
            .into_iter()
            .map(|e| (e.index[0], e.index[1], e.index[2], e.value))
            .collect(),
    };
    serde_json::to_string_pretty(&f).expect("serializable")
}

pub fn parse_comultiplication(text: &str) -> Result<Comultiplication> {
    let f: Entries3File = parse_json(text, "comultiplication")?;
    Comultiplication::from_entries(f.dim, &f.entries)
}

pub fn comultiplication_to_json(d: &Comultiplication) -> String {
    let f = Entries3File {
        dim: d.dim(),
        entries: d.nonzero_entries(),
    };
    serde_json::to_string_pretty(&f).expect("serializable")
}

pub fn parse_form(text: &str) -> Result<FormInput> {
    let f: FormFile = parse_json(text, "form")?;
    let gram = Matrix::from_rows(&f.gram).map_err(|e| Error::Parse(format!("form: {e}")))?;
    if !gram.is_square() || gram.rows() != f.subalgebra.len() {
        return Err(Error::Parse(format!(
            "form: Gram matrix is {}x{} for {} basis vectors",
            gram.rows(),
            gram.cols(),
            f.subalgebra.len()
        )));
    }
    Ok(FormInput {
        subalgebra: f.subalgebra,
        gram,
    })
}

pub fn read_algebra(path: &Path) -> Result<Algebra> {
    with_path(path, parse_algebra(&read(path)?))
}

pub fn read_tensor2(path: &Path) -> Result<Tensor2> {
    with_path(path, parse_tensor2(&read(path)?))
}

pub fn read_comultiplication(path: &Path) -> Result<Comultiplication> {
    with_path(path, parse_comultiplication(&read(path)?))
}

pub fn read_form(path: &Path) -> Result<FormInput> {
    with_path(path, parse_form(&read(path)?))
}
