//! Integer relation matrices of the abelianized lifted groups.
//!
//! For a signature `(g; k₁, …, k_l, ∞, …, ∞)` with `r` cone points and
//! cusps, the preimage of the Fuchsian group in the universal cover is
//! presented by
//!
//! ```text
//! q₁^{k₁} z, …, q_l^{k_l} z, q₁⋯q_r [a₁,b₁]⋯[a_g,b_g] z^{2g−2+r}
//! ```
//!
//! and its preimage in SL(2,ℝ) by
//!
//! ```text
//! h², q₁^{k₁} h, …, q_l^{k_l} h, q₁⋯q_r [a₁,b₁]⋯[a_g,b_g] h^r.
//! ```
//!
//! After abelianizing, the handle generators drop out and each relation
//! becomes an integer column. The order of `z` (or `h`) in the cokernel is
//! read off the Smith normal form.

mod intmat;
mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::{Error, Result, Signature};

pub use intmat::IntMatrix;
pub use snf::{smith_normal_form, SnfResult};

/// Relation columns over the abelianized generators `q₁, …, q_r` and a
/// central generator stored in the last row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationMatrix {
    pub entries: IntMatrix,
    pub row_labels: Vec<String>,
    pub central_row: usize,
}

/// Order of an element of a finitely generated abelian group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Order {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Order::Finite(n) => intmat::serialize_int(n, s),
            Order::Infinite => s.serialize_str("infinite"),
        }
    }
}

fn require_valid(sig: &Signature) -> Result<()> {
    if sig.is_valid() {
        Ok(())
    } else {
        Err(Error::InvalidSignature(format!(
            "{sig} has non-positive coarea"
        )))
    }
}

fn labels(sig: &Signature, central: &str) -> Vec<String> {
    let r = sig.r() as usize;
    (1..=r)
        .map(|i| format!("q{i}"))
        .chain([central.to_string()])
        .collect()
}

/// Column for `qᵢ^{kᵢ}·c` (one per finite period).
fn period_columns(sig: &Signature) -> Vec<Vec<i64>> {
    let r = sig.r() as usize;
    sig.periods()
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            let mut col = vec![0; r + 1];
            col[i] = k as i64;
            col[r] = 1;
            col
        })
        .collect()
}

fn long_column(sig: &Signature, central_exponent: i64) -> Vec<i64> {
    let r = sig.r() as usize;
    let mut col = vec![1; r + 1];
    col[r] = central_exponent;
    col
}

/// Relation matrix of the preimage in the universal cover (central generator `z`).
pub fn relation_matrix_z(sig: &Signature) -> Result<RelationMatrix> {
    require_valid(sig)?;
    let mut cols = period_columns(sig);
    cols.push(long_column(
        sig,
        2 * sig.genus() as i64 - 2 + sig.r() as i64,
    ));
    Ok(RelationMatrix {
        entries: IntMatrix::from_columns(sig.r() as usize + 1, &cols),
        row_labels: labels(sig, "z"),
        central_row: sig.r() as usize,
    })
}

/// Relation matrix of the preimage in SL(2,ℝ) (central generator `h = −I`).
pub fn relation_matrix_h(sig: &Signature) -> Result<RelationMatrix> {
    require_valid(sig)?;
    let r = sig.r() as usize;
    let mut h2 = vec![0; r + 1];
    h2[r] = 2;
    let mut cols = vec![h2];
    cols.extend(period_columns(sig));
    cols.push(long_column(sig, r as i64));
    Ok(RelationMatrix {
        entries: IntMatrix::from_columns(r + 1, &cols),
        row_labels: labels(sig, "h"),
        central_row: r,
    })
}

/// Least `N > 0` with `N·e_row` in the column lattice of `m`.
pub fn order_in_cokernel(m: &IntMatrix, row: usize) -> Order {
    assert!(row < m.rows(), "row {row} out of range");
    let snf = smith_normal_form(m);
    let diag = snf.diagonal();
    let mut n = BigInt::one();
    for i in 0..m.rows() {
        let y = &snf.u[(i, row)];
        if y.is_zero() {
            continue;
        }
        match diag.get(i) {
            Some(d) if !d.is_zero() => n = n.lcm(&(d / d.gcd(y))),
            _ => return Order::Infinite,
        }
    }
    Order::Finite(n)
}

impl RelationMatrix {
    pub fn central_order(&self) -> Order {
        order_in_cokernel(&self.entries, self.central_row)
    }
}

/// Order of `z` in the abelianized lifted group; 0 for cusped groups.
pub fn oracle_e(sig: &Signature) -> Result<BigInt> {
    Ok(match relation_matrix_z(sig)?.central_order() {
        Order::Finite(n) => n,
        Order::Infinite => BigInt::zero(),
    })
}

/// Whether `h = −I` dies in the abelianization of the SL(2,ℝ) preimage.
pub fn oracle_h_trivial(sig: &Signature) -> Result<bool> {
    Ok(relation_matrix_h(sig)?.central_order() == Order::Finite(BigInt::one()))
}
