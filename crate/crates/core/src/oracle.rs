//! Link invariants used to cross-check everything else: the reduced Burau
//! representation, and the Alexander polynomial computed from a braid
//! closure and, independently, from a diagram via Fox calculus.

use crate::diagram::Diagram;
use crate::error::Error;
use crate::poly::{Laurent, Matrix};
use crate::word::{ArtinWord, Word};

/// Reduced Burau matrix of one letter `σ_i^{±1}` on `n` strands.
fn generator_matrix(n: usize, letter: i32) -> Matrix {
    let m = n - 1;
    let i = letter.unsigned_abs() as usize;
    let t = Laurent::t();
    let ti = Laurent::monomial(1, -1);
    let one = Laurent::one;
    // Generic 3x3 block on rows/cols i-2, i-1, i (0-based), clipped at the
    // edges of the (n-1)x(n-1) matrix.
    let block: [[Laurent; 3]; 3] = if letter > 0 {
        [
            [one(), Laurent::zero(), Laurent::zero()],
            [t.clone(), -t.clone(), one()],
            [Laurent::zero(), Laurent::zero(), one()],
        ]
    } else {
        [
            [one(), Laurent::zero(), Laurent::zero()],
            [one(), -ti.clone(), ti.clone()],
            [Laurent::zero(), Laurent::zero(), one()],
        ]
    };
    let mut out = Matrix::identity(m);
    let base = i as i64 - 2;
    for (a, row) in block.iter().enumerate() {
        let r = base + a as i64;
        if r < 0 || r >= m as i64 {
            continue;
        }
        for (b, v) in row.iter().enumerate() {
            let c = base + b as i64;
            if c < 0 || c >= m as i64 {
                continue;
            }
            out.set(r as usize, c as usize, v.clone());
        }
    }
    out
}

/// Product of the reduced Burau matrices of the letters, in word order.
pub fn burau_reduced(w: &ArtinWord) -> Matrix {
    let n = w.strands();
    let mut acc = Matrix::identity(n.saturating_sub(1));
    if n < 2 {
        return acc;
    }
    for &l in w.letters() {
        acc = acc.mul(&generator_matrix(n, l));
    }
    acc
}

/// `det(I - B(w)) · (1 - t) / (1 - t^n)`, normalized.
pub fn alexander_from_braid(w: &Word) -> Result<Laurent, Error> {
    let a = w.to_artin();
    let n = a.strands();
    let d = burau_reduced(&a).identity_minus().det();
    let num = &d * &Laurent::from_i64s(0, &[1, -1]);
    let mut den = vec![0i64; n + 1];
    den[0] = 1;
    den[n] = -1;
    let q = num
        .div_exact(&Laurent::from_i64s(0, &den))
        .ok_or_else(|| Error::internal("Burau determinant not divisible by the closure factor"))?;
    Ok(q.normalized())
}

/// Alexander polynomial of a diagram: Wirtinger arcs, one Fox-calculus row
/// per crossing, delete one row and one column, take the determinant.
pub fn alexander_from_diagram(d: &Diagram) -> Result<Laurent, Error> {
    let info = d.analyze()?;
    if d.crossings().is_empty() {
        return Ok(if d.unknots() <= 1 { Laurent::one() } else { Laurent::zero() });
    }
    if d.unknots() > 0 || info.diagram_components() > 1 {
        // Split diagrams have vanishing Alexander polynomial.
        return Ok(Laurent::zero());
    }
    let c = d.crossings().len();
    // Over-arcs: union the two edges passing over each crossing.
    let edges = 2 * c;
    let mut uf = crate::graph::UnionFind::new(edges + 1);
    for x in d.crossings() {
        uf.union(x[1], x[3]);
    }
    let mut arc_of = vec![usize::MAX; edges + 1];
    let mut arcs = 0;
    for e in 1..=edges {
        let r = uf.find(e);
        if arc_of[r] == usize::MAX {
            arc_of[r] = arcs;
            arcs += 1;
        }
        arc_of[e] = arc_of[r];
    }
    if arcs != c {
        return Err(Error::internal(format!("expected {c} Wirtinger arcs, found {arcs}")));
    }
    let t = Laurent::t();
    let one = Laurent::one();
    let mut m = Matrix::zeros(c);
    for (row, x) in d.crossings().iter().enumerate() {
        let over = arc_of[x[1]];
        let inc = arc_of[x[0]];
        let out = arc_of[x[2]];
        // Relation x_out = x_over^s x_in x_over^-s, with s the crossing sign.
        let (a_over, a_in, a_out) = if info.signs[row] > 0 {
            (&one - &t, t.clone(), -one.clone())
        } else {
            (&t - &one, one.clone(), -t.clone())
        };
        for (col, v) in [(over, a_over), (inc, a_in), (out, a_out)] {
            let cur = m.get(row, col) + &v;
            m.set(row, col, cur);
        }
    }
    Ok(m.minor(c - 1, c - 1).det().normalized())
}

/// Number of components of the closure of a braid word.
pub fn components_of_word(w: &Word) -> usize {
    w.permutation().cycle_count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    fn alex(s: &str, n: usize) -> String {
        alexander_from_braid(&parse_word(s, Some(n)).unwrap()).unwrap().to_string()
    }

    #[test]
    fn closures() {
        assert_eq!(alex("s1", 2), "1");
        assert_eq!(alex("s1^3", 2), "t^2 - t + 1");
        assert_eq!(alex("s1 s2^-1 s1 s2^-1", 3), "t^2 - 3*t + 1");
        assert_eq!(alex("s1^2", 2), "t - 1");
        assert_eq!(alex("e", 1), "1");
        assert_eq!(alex("e", 2), "0");
    }

    #[test]
    fn burau_braid_relation() {
        let a = burau_reduced(&crate::word::parse_artin("s1 s2 s1", Some(3)).unwrap());
        let b = burau_reduced(&crate::word::parse_artin("s2 s1 s2", Some(3)).unwrap());
        assert_eq!(a, b);
        let id = burau_reduced(&crate::word::parse_artin("s2 s2^-1", Some(4)).unwrap());
        assert_eq!(id, Matrix::identity(3));
    }
}
