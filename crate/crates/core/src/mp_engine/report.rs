//! JSON form of a profile report over `F_p`.

use serde::{Deserialize, Serialize};

use super::matrix::PolyMatrix;
use super::run::ProfileReport;
use crate::coeff_poly::{Fp, Poly, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileJson {
    pub field: u32,
    pub epsilon: u32,
    pub lc: Vec<usize>,
    pub deltas: Vec<u32>,
    pub exponents: Vec<i64>,
    pub jumps: Vec<usize>,
    pub mu: String,
    pub mu_prime: String,
    pub minpoly: String,
    pub nabla: u32,
    pub matrix: [[String; 2]; 2],
}

impl ProfileJson {
    pub fn from_report(report: &ProfileReport<Fp>) -> Self {
        let m = &report.final_matrix;
        ProfileJson {
            field: report.ring.modulus(),
            epsilon: report.epsilon,
            lc: report.lc.clone(),
            deltas: report.deltas.clone(),
            exponents: report.exponents.clone(),
            jumps: report.jumps.clone(),
            mu: m.get(0, 0).to_string(),
            mu_prime: m.get(1, 0).to_string(),
            minpoly: report.minpoly.to_string(),
            nabla: report.nabla,
            matrix: [
                [m.get(0, 0).to_string(), m.get(0, 1).to_string()],
                [m.get(1, 0).to_string(), m.get(1, 1).to_string()],
            ],
        }
    }

    pub fn to_report(&self) -> Result<ProfileReport<Fp>> {
        let field = Fp::new(self.field as u64)?;
        let check = |v: u32| -> Result<u32> { field.parse_elem(&v.to_string()) };
        let poly = |s: &str| Poly::parse(field, s);
        let matrix = PolyMatrix::new(
            poly(&self.matrix[0][0])?,
            poly(&self.matrix[0][1])?,
            poly(&self.matrix[1][0])?,
            poly(&self.matrix[1][1])?,
        );
        if poly(&self.mu)? != *matrix.get(0, 0) || poly(&self.mu_prime)? != *matrix.get(1, 0) {
            return Err(Error::Parse("mu/mu_prime disagree with matrix".into()));
        }
        Ok(ProfileReport {
            ring: field,
            epsilon: check(self.epsilon)?,
            lc: self.lc.clone(),
            deltas: self
                .deltas
                .iter()
                .map(|&d| check(d))
                .collect::<Result<_>>()?,
            exponents: self.exponents.clone(),
            jumps: self.jumps.clone(),
            final_matrix: matrix,
            minpoly: poly(&self.minpoly)?,
            nabla: check(self.nabla)?,
        })
    }
}
