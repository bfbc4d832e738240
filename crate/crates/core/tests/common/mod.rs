//! Worked example in R^(2,3): the map T_E, its two factorizations and the basis W.
#![allow(dead_code)]

use cartan_core::{Matrix, NumberMode, OrthogonalBasis, Scalar, Signature, Vector};

pub fn q(text: &str) -> Scalar {
    Scalar::parse(text, NumberMode::Exact).unwrap()
}

pub fn vector(coords: &[&str]) -> Vector {
    Vector::new(coords.iter().map(|c| q(c)).collect())
}

pub fn matrix(rows: &[&[&str]]) -> Matrix {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|c| q(c)).collect()).collect()).unwrap()
}

pub fn sig() -> Signature {
    Signature::new(2, 3).unwrap()
}

pub fn t_e() -> Matrix {
    Matrix::from_i64_rows(&[
        &[1, 5, 4, 3, 0],
        &[-5, 1, 3, -4, 0],
        &[4, 3, 1, 5, 0],
        &[3, -4, -5, 1, 0],
        &[0, 0, 0, 0, -1],
    ])
}

/// The same map over `w_basis()`.
pub fn t_w() -> Matrix {
    matrix(&[
        &["1/3", "2", "4/3", "-10/3", "8/3"],
        &["3", "1", "3", "4", "-5"],
        &["2/3", "1", "-1/3", "-5/3", "4/3"],
        &["5", "4", "5", "1", "-3"],
        &["4", "5", "4", "-3", "1"],
    ])
}

pub fn w_basis() -> OrthogonalBasis {
    let rows: [[i64; 5]; 5] = [
        [0, 0, 1, 1, -1],
        [1, 1, 0, 0, 0],
        [0, 0, 1, 1, 2],
        [0, 0, 1, -1, 0],
        [1, -1, 0, 0, 0],
    ];
    OrthogonalBasis::from_vectors(rows.iter().map(|r| Vector::from_i64(r)).collect(), sig()).unwrap()
}

/// Reflectors of the canonical-basis factorization.
pub fn c_vectors() -> Vec<Vector> {
    vec![
        vector(&["0", "0", "0", "0", "1"]),
        vector(&["2", "-5", "4", "3", "0"]),
        vector(&["1", "0", "0", "0", "0"]),
        vector(&["0", "25/2", "-7", "-23/2", "0"]),
        vector(&["0", "0", "-18/25", "24/25", "0"]),
    ]
}

/// Reflectors of the factorization over W.
pub fn d_vectors() -> Vec<Vector> {
    vec![
        Vector::from_i64(&[7, -1, 5, -5, 2]),
        Vector::from_i64(&[26, -8, 22, -16, 6]),
        Vector::from_i64(&[-5, 5, -7, 1, -6]),
    ]
}

/// Householder matrices of `c_vectors()` over the canonical basis.
pub fn a_matrices() -> Vec<Matrix> {
    let mut a1 = Matrix::identity(5);
    a1[(4, 4)] = q("-1");
    let mut a3 = Matrix::identity(5);
    a3[(0, 0)] = q("-1");
    vec![
        a1,
        matrix(&[
            &["-1", "5", "4", "3", "0"],
            &["5", "-23/2", "-10", "-15/2", "0"],
            &["-4", "10", "9", "6", "0"],
            &["-3", "15/2", "6", "11/2", "0"],
            &["0", "0", "0", "0", "1"],
        ]),
        a3,
        matrix(&[
            &["1", "0", "0", "0", "0"],
            &["0", "27/2", "7", "23/2", "0"],
            &["0", "-7", "-73/25", "-161/25", "0"],
            &["0", "-23/2", "-161/25", "-479/50", "0"],
            &["0", "0", "0", "0", "1"],
        ]),
        matrix(&[
            &["1", "0", "0", "0", "0"],
            &["0", "1", "0", "0", "0"],
            &["0", "0", "7/25", "24/25", "0"],
            &["0", "0", "24/25", "-7/25", "0"],
            &["0", "0", "0", "0", "1"],
        ]),
    ]
}

/// Householder matrices of `d_vectors()` over the canonical basis.
pub fn b_matrices() -> Vec<Matrix> {
    vec![
        matrix(&[
            &["51/2", "-7/2", "-35/2", "35/2", "-7"],
            &["-7/2", "3/2", "5/2", "-5/2", "1"],
            &["35/2", "-5/2", "-23/2", "25/2", "-5"],
            &["-35/2", "5/2", "25/2", "-23/2", "5"],
            &["7", "-1", "-5", "5", "-1"],
        ]),
        matrix(&[
            &["347/9", "-104/9", "-286/9", "208/9", "-26/3"],
            &["-104/9", "41/9", "88/9", "-64/9", "8/3"],
            &["286/9", "-88/9", "-233/9", "176/9", "-22/3"],
            &["-208/9", "64/9", "176/9", "-119/9", "16/3"],
            &["26/3", "-8/3", "-22/3", "16/3", "-1"],
        ]),
        matrix(&[
            &["43/18", "-25/18", "-35/18", "5/18", "-5/3"],
            &["-25/18", "43/18", "35/18", "-5/18", "5/3"],
            &["35/18", "-35/18", "-31/18", "7/18", "-7/3"],
            &["-5/18", "5/18", "7/18", "17/18", "1/3"],
            &["5/3", "-5/3", "-7/3", "1/3", "-1"],
        ]),
    ]
}

/// Householder matrices of `d_vectors()` over W.
pub fn c_matrices() -> Vec<Matrix> {
    vec![
        matrix(&[
            &["1/3", "-2", "4/3", "10/3", "-8/3"],
            &["3", "10", "-6", "-15", "12"],
            &["2/3", "2", "-1/3", "-10/3", "8/3"],
            &["5", "15", "-10", "-24", "20"],
            &["4", "12", "-8", "-20", "17"],
        ]),
        matrix(&[
            &["1", "0", "0", "0", "0"],
            &["0", "10", "-9", "-19", "17"],
            &["0", "3", "-2", "-19/3", "17/3"],
            &["0", "19", "-19", "-352/9", "323/9"],
            &["0", "17", "-17", "-323/9", "298/9"],
        ]),
        matrix(&[
            &["1", "0", "0", "0", "0"],
            &["0", "1", "0", "0", "0"],
            &["0", "0", "-2", "-4/3", "5/3"],
            &["0", "0", "-4", "-7/9", "20/9"],
            &["0", "0", "-5", "-20/9", "34/9"],
        ]),
    ]
}

pub fn product(ms: &[Matrix]) -> Matrix {
    ms.iter().fold(Matrix::identity(ms[0].rows()), |acc, m| acc.try_mul(m).unwrap())
}
