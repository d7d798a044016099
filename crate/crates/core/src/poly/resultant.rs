use alloc::string::String;
use alloc::vec::Vec;

use super::{MultiPoly, PolyMap};
use crate::error::{Error, Result};

/// Sylvester matrix of `f` and `g` in `var`: `deg g` rows of `f`'s
/// coefficients (leading first, shifted right one column per row) above
/// `deg f` rows of `g`'s coefficients.
pub fn sylvester_matrix(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<Vec<Vec<MultiPoly>>> {
    if f.field() != g.field() {
        return Err(Error::DescriptorMismatch(alloc::format!("{} vs {}", f.field(), g.field())));
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let vars: Vec<String> = f.merged_vars(g).into_iter().filter(|v| v != var).collect();
    let fc: Vec<MultiPoly> =
        f.coefficients_in(var).iter().map(|c| c.with_vars(&vars)).collect::<Result<_>>()?;
    let gc: Vec<MultiPoly> =
        g.coefficients_in(var).iter().map(|c| c.with_vars(&vars)).collect::<Result<_>>()?;
    let (n, m) = (fc.len() - 1, gc.len() - 1);
    if n == 0 && m == 0 {
        return Err(Error::BothConstant);
    }
    let size = n + m;
    let zero = MultiPoly::zero(f.field(), &vars);
    let mut rows = Vec::with_capacity(size);
    for (coeffs, count) in [(&fc, m), (&gc, n)] {
        for shift in 0..count {
            let mut row = alloc::vec![zero.clone(); size];
            for (k, c) in coeffs.iter().rev().enumerate() {
                row[shift + k] = c.clone();
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// `Res_var(f, g)` as the determinant of [`sylvester_matrix`], in the remaining variables.
pub fn sylvester_resultant(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<MultiPoly> {
    let m = sylvester_matrix(f, g, var)?;
    determinant(&m)
}

fn common_vars(m: &[Vec<MultiPoly>]) -> Result<(crate::field::FieldDescriptor, Vec<String>)> {
    let first = m.first().and_then(|r| r.first()).ok_or(Error::NotSquare { rows: 0, cols: 0 })?;
    let mut vars: Vec<String> = first.vars().to_vec();
    for row in m {
        for e in row {
            if e.field() != first.field() {
                return Err(Error::DescriptorMismatch("matrix entries over different fields".into()));
            }
            for v in e.vars() {
                if !vars.contains(v) {
                    vars.push(v.clone());
                }
            }
        }
    }
    Ok((first.field().clone(), vars))
}

fn check_square(m: &[Vec<MultiPoly>]) -> Result<()> {
    let rows = m.len();
    match m.iter().find(|r| r.len() != rows) {
        Some(r) => Err(Error::NotSquare { rows, cols: r.len() }),
        None => Ok(()),
    }
}

/// Fraction-free (Bareiss) determinant of a square polynomial matrix.
pub fn determinant(m: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    check_square(m)?;
    let n = m.len();
    if n == 0 {
        return Err(Error::NotSquare { rows: 0, cols: 0 });
    }
    let (field, vars) = common_vars(m)?;
    let mut a: Vec<Vec<MultiPoly>> =
        m.iter().map(|row| row.iter().map(|e| e.with_vars(&vars)).collect::<Result<_>>()).collect::<Result<_>>()?;
    let mut negate = false;
    let mut prev = MultiPoly::one(&field, &vars);
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(MultiPoly::zero(&field, &vars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev)?.expect("Bareiss quotients are exact");
            }
            a[i][k] = MultiPoly::zero(&field, &vars);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -&det } else { det })
}

/// Laplace expansion along the first row; exponential, meant for small matrices.
pub fn determinant_cofactor(m: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    check_square(m)?;
    let (field, vars) = common_vars(m)?;
    let a: Vec<Vec<MultiPoly>> =
        m.iter().map(|row| row.iter().map(|e| e.with_vars(&vars)).collect::<Result<_>>()).collect::<Result<_>>()?;
    fn rec(a: &[Vec<MultiPoly>]) -> MultiPoly {
        let n = a.len();
        if n == 1 {
            return a[0][0].clone();
        }
        let mut acc = MultiPoly::zero(a[0][0].field(), a[0][0].vars());
        for j in 0..n {
            if a[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<MultiPoly>> = a[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, e)| e.clone()).collect())
                .collect();
            let term = &a[0][j] * &rec(&minor);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }
    let _ = field;
    Ok(rec(&a))
}

/// Matrix of partial derivatives, one row per output, one column per input.
pub fn jacobian_matrix(map: &PolyMap) -> Vec<Vec<MultiPoly>> {
    map.outputs()
        .iter()
        .map(|out| map.inputs().iter().map(|v| out.derivative(v)).collect())
        .collect()
}

/// Determinant of the Jacobian of a square polynomial map.
pub fn jacobian_det(map: &PolyMap) -> Result<MultiPoly> {
    let (rows, cols) = (map.outputs().len(), map.inputs().len());
    if rows != cols || rows == 0 {
        return Err(Error::NotSquare { rows, cols });
    }
    determinant(&jacobian_matrix(map))
}
