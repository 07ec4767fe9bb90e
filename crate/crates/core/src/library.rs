//! A fixed set of small factorizations used by tests, benchmarks and the CLI.

use std::sync::Arc;

use crate::functors::{koszul_brane, tensor_product, KoszulData};
use crate::mfcore::{make_mf, MatrixFactorization, ShiftList};
use crate::ring::{GradeVector, GradedRing, Polynomial};

#[derive(Clone, Debug)]
pub struct LibraryEntry {
    pub name: String,
    pub mf: MatrixFactorization,
}

fn sl(v: &[i64]) -> ShiftList {
    ShiftList::new(v.iter().map(|&x| GradeVector::new(vec![x])).collect())
}

fn poly(r: &Arc<GradedRing>, s: &str) -> Polynomial {
    Polynomial::parse(r, s).expect("library polynomial")
}

/// `(x^a, x^b)` over `x^{a+b}` in one variable.
pub fn power_brane(r: &Arc<GradedRing>, var: &str, a: u32, b: u32) -> MatrixFactorization {
    let p = |s: &str| poly(r, s);
    make_mf(
        r,
        &p(&format!("{var}^{}", a + b)),
        sl(&[0]),
        sl(&[a as i64]),
        vec![vec![p(&format!("{var}^{a}"))]],
        vec![vec![p(&format!("{var}^{b}"))]],
    )
    .expect("power brane")
}

pub fn xy_brane() -> MatrixFactorization {
    let r = GradedRing::standard(&["x", "y"]);
    let data = KoszulData::new(&r, vec![poly(&r, "y")], vec![poly(&r, "x")], &poly(&r, "x*y")).expect("xy data");
    koszul_brane(&data).expect("xy brane")
}

/// `(x,x) ⊗ (y,y) ⊗ ...` over the sum of squares of `vars`.
pub fn sum_of_squares(vars: &[&str]) -> MatrixFactorization {
    let r = GradedRing::standard(vars);
    let mut acc: Option<MatrixFactorization> = None;
    for v in vars {
        let b = power_brane(&r, v, 1, 1);
        acc = Some(match acc {
            None => b,
            Some(a) => tensor_product(&a, &b).expect("tensor"),
        });
    }
    acc.expect("at least one variable")
}

/// The rank-one Koszul brane of `p (x^3 + y^3 + z^3)` with `s_Y = p`.
pub fn cubic_brane() -> MatrixFactorization {
    let r = GradedRing::standard(&["x", "y", "z", "p"]);
    let data = KoszulData::new(
        &r,
        vec![poly(&r, "x^3+y^3+z^3")],
        vec![poly(&r, "p")],
        &poly(&r, "p*(x^3+y^3+z^3)"),
    )
    .expect("cubic data");
    koszul_brane(&data).expect("cubic brane")
}

/// The rank-two Koszul brane of `u x + v y`.
pub fn rank_two_koszul() -> MatrixFactorization {
    let r = GradedRing::standard(&["x", "y", "u", "v"]);
    let data = KoszulData::new(
        &r,
        vec![poly(&r, "x"), poly(&r, "y")],
        vec![poly(&r, "u"), poly(&r, "v")],
        &poly(&r, "u*x+v*y"),
    )
    .expect("rank two data");
    koszul_brane(&data).expect("rank two brane")
}

pub fn sample_library() -> Vec<LibraryEntry> {
    let mut out = Vec::new();
    let rx = GradedRing::standard(&["x"]);
    for n in 1..=4 {
        let second = if n == 1 { "x".to_string() } else { format!("x^{n}") };
        out.push(LibraryEntry {
            name: format!("(x, {second}) / x^{}", n + 1),
            mf: power_brane(&rx, "x", 1, n),
        });
    }
    out.push(LibraryEntry {
        name: "(x^2, x^2) / x^4".into(),
        mf: power_brane(&rx, "x", 2, 2),
    });
    out.push(LibraryEntry {
        name: "(x^2, x^3) / x^5".into(),
        mf: power_brane(&rx, "x", 2, 3),
    });
    out.push(LibraryEntry {
        name: "(x, y) / xy".into(),
        mf: xy_brane(),
    });
    out.push(LibraryEntry {
        name: "x^2 + y^2".into(),
        mf: sum_of_squares(&["x", "y"]),
    });
    out.push(LibraryEntry {
        name: "x^2 + y^2 + z^2".into(),
        mf: sum_of_squares(&["x", "y", "z"]),
    });
    out.push(LibraryEntry {
        name: "p(x^3 + y^3 + z^3)".into(),
        mf: cubic_brane(),
    });
    out.push(LibraryEntry {
        name: "ux + vy".into(),
        mf: rank_two_koszul(),
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_is_verified() {
        let lib = sample_library();
        assert!(lib.len() >= 10);
        for e in &lib {
            e.mf.verify().unwrap_or_else(|err| panic!("{}: {err}", e.name));
        }
        assert_eq!(lib.iter().find(|e| e.name == "ux + vy").unwrap().mf.rank(), (2, 2));
        assert_eq!(lib.iter().find(|e| e.name == "x^2 + y^2 + z^2").unwrap().mf.rank(), (4, 4));
    }
}
