use super::MPoly;

/// `(df/dx_1, ..., df/dx_n)`.
pub fn partials(f: &MPoly, n: usize) -> Vec<MPoly> {
    (0..n).map(|k| f.diff_x(k)).collect()
}

fn det(m: &[Vec<MPoly>]) -> MPoly {
    match m.len() {
        0 => MPoly::one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = MPoly::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<MPoly>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect()).collect();
                let t = &m[0][j] * &det(&minor);
                if j % 2 == 0 {
                    acc += &t;
                } else {
                    acc -= &t;
                }
            }
            acc
        }
    }
}

/// Determinant of the matrix of second derivatives, by cofactor expansion.
pub fn hessian(f: &MPoly, n: usize) -> MPoly {
    let d = partials(f, n);
    let m: Vec<Vec<MPoly>> = (0..n).map(|i| (0..n).map(|j| d[i].diff_x(j)).collect()).collect();
    det(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, Names};

    #[test]
    fn partials_and_hessians() {
        let n = Names::standard(2, 0);
        let p = |t: &str| parse_poly(t, &n).unwrap();
        let f = p("x1^3 + x1*x2^3");
        assert_eq!(partials(&f, 2), vec![p("3*x1^2 + x2^3"), p("3*x1*x2^2")]);
        assert_eq!(partials(&p("7"), 2), vec![MPoly::zero(), MPoly::zero()]);
        // oracle: det [[6x1, 3x2^2], [3x2^2, 6x1x2]]
        assert_eq!(hessian(&f, 2), p("36*x1^2*x2 - 9*x2^4"));
        let n1 = Names::standard(1, 0);
        assert_eq!(hessian(&parse_poly("(1/3)*x1^3", &n1).unwrap(), 1), parse_poly("2*x1", &n1).unwrap());
        assert_eq!(hessian(&parse_poly("x1^2", &n1).unwrap(), 1), MPoly::constant(crate::polyring::qi(2)));
    }
}
