//! Bivariate gcd by primitive pseudo-remainder sequences in Q(i)(x)[y].

use super::{BiPoly, UniPoly, Var};

type YPoly = Vec<UniPoly>;

fn trim(mut p: YPoly) -> YPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn content(p: &YPoly) -> UniPoly {
    p.iter().fold(UniPoly::zero(), |acc, c| acc.gcd(c))
}

fn divide_rows(p: &YPoly, c: &UniPoly) -> YPoly {
    p.iter()
        .map(|row| row.exact_div(c).expect("content divides every coefficient"))
        .collect()
}

fn primitive_part(p: &YPoly) -> YPoly {
    let c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    divide_rows(p, &c)
}

/// `lc(b)^k * a mod b` as polynomials in y.
fn pseudo_rem(a: &YPoly, b: &YPoly) -> YPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for row in r.iter_mut() {
            *row = row.mul(lb);
        }
        for (j, bj) in b.iter().enumerate() {
            let t = bj.mul(&lr);
            r[j + shift] = r[j + shift].sub(&t);
        }
        r = trim(r);
    }
    r
}

/// Greatest common divisor over Q(i)[x, y], scaled so its grlex-leading coefficient is 1.
/// `gcd(0, 0)` is zero.
pub fn poly_gcd(f: &BiPoly, g: &BiPoly) -> BiPoly {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    let a = f.to_y_rows();
    let b = g.to_y_rows();
    let ca = content(&a);
    let cb = content(&b);
    let c = ca.gcd(&cb);
    let mut a = divide_rows(&a, &ca);
    let mut b = divide_rows(&b, &cb);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while b.len() > 1 {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive_part(&r);
    }
    let pp = if b.len() == 1 { vec![UniPoly::one()] } else { a };
    let rows: YPoly = pp.iter().map(|row| row.mul(&c)).collect();
    BiPoly::from_y_rows(&rows).monic()
}

/// True when `f` has no repeated factor.
pub fn is_squarefree(f: &BiPoly) -> bool {
    let g = poly_gcd(&poly_gcd(f, &f.dx()), &f.dy());
    g.is_constant()
}

/// The part of `f` made of repeated factors, `gcd(f, f_x, f_y)`.
pub fn repeated_part(f: &BiPoly) -> BiPoly {
    poly_gcd(&poly_gcd(f, &f.partial(Var::X)), &f.partial(Var::Y))
}

/// True when no repeated factor of `f` passes through the origin.
pub fn is_locally_reduced(f: &BiPoly) -> bool {
    let r = repeated_part(f);
    !r.vanishes_at_origin() || r.is_constant()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[(i64, u32, u32)]) -> BiPoly {
        BiPoly::from_int_terms(v)
    }

    #[test]
    fn small_gcds() {
        let xy = p(&[(1, 1, 1)]);
        let x = BiPoly::x();
        assert_eq!(poly_gcd(&xy, &x), x);
        let cusp = p(&[(1, 0, 2), (-1, 3, 0)]);
        assert_eq!(poly_gcd(&cusp, &x), BiPoly::one());
        let l = p(&[(1, 0, 1), (-1, 2, 0)]);
        let sq = l.pow(2);
        assert_eq!(
            poly_gcd(&sq, &l.scale(&crate::arith::GaussianRational::from_int(2))),
            p(&[(-1, 2, 0), (1, 0, 1)]).monic()
        );
    }

    #[test]
    fn gcd_of_products_recovers_factor() {
        let a = p(&[(1, 1, 0), (2, 0, 2), (-1, 3, 1)]);
        let b = p(&[(1, 0, 1), (1, 2, 0), (3, 0, 0)]);
        let c = p(&[(5, 0, 3), (-1, 1, 0), (1, 1, 1)]);
        let g = poly_gcd(&(&a * &c), &(&b * &c));
        assert_eq!(g, c.monic());
    }

    #[test]
    fn reducedness() {
        assert!(is_squarefree(&p(&[(1, 0, 2), (-1, 3, 0)])));
        assert!(!is_squarefree(&p(&[(1, 0, 1), (-1, 2, 0)]).pow(2)));
        assert!(is_squarefree(&p(&[(1, 1, 1)])));
        let away = &p(&[(1, 0, 0), (1, 1, 0)]).pow(2) * &p(&[(1, 0, 2), (-1, 3, 0)]);
        assert!(!is_squarefree(&away));
        assert!(is_locally_reduced(&away));
    }
}
