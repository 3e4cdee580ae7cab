//! Univariate polynomial arithmetic over `F_p`, just enough to test
//! irreducibility of minimal polynomials (Rabin's criterion).
//!
//! Polynomials are coefficient vectors in ascending degree with no trailing
//! zeros; the zero polynomial is the empty vector.

use crate::fp::FieldSpec;

pub type Poly = Vec<u64>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &Poly) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn mul(f: FieldSpec, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Remainder of `a` modulo `m` (`m` nonzero).
pub fn rem(f: FieldSpec, a: &Poly, m: &Poly) -> Poly {
    let dm = degree(m).expect("modulus must be nonzero");
    let lead_inv = f.inv(m[dm]);
    let mut r = a.clone();
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let coeff = f.mul(r[dr], lead_inv);
        let shift = dr - dm;
        for (j, &mj) in m.iter().enumerate() {
            r[shift + j] = f.sub(r[shift + j], f.mul(coeff, mj));
        }
        r = trim(r);
    }
    r
}

pub fn monic(f: FieldSpec, a: &Poly) -> Poly {
    match a.last() {
        None | Some(&1) => a.clone(),
        Some(&lead) => {
            let inv = f.inv(lead);
            a.iter().map(|&x| f.mul(x, inv)).collect()
        }
    }
}

pub fn gcd(f: FieldSpec, a: &Poly, b: &Poly) -> Poly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn derivative(f: FieldSpec, a: &Poly) -> Poly {
    if a.len() <= 1 {
        return Vec::new();
    }
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, (i as u64) % f.p))
            .collect(),
    )
}

/// `base^exp` in `F_p[x]/(m)`.
pub fn powmod(f: FieldSpec, base: &Poly, mut exp: u64, m: &Poly) -> Poly {
    let mut acc = vec![1u64];
    let mut b = rem(f, base, m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &b), m);
        }
        b = rem(f, &mul(f, &b, &b), m);
        exp >>= 1;
    }
    acc
}

/// `x^(p^k) mod m`, by iterating the Frobenius power.
fn x_frobenius_power(f: FieldSpec, k: usize, m: &Poly) -> Poly {
    let mut g = rem(f, &vec![0, 1], m);
    for _ in 0..k {
        g = powmod(f, &g, f.p, m);
    }
    g
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn poly_sub(f: FieldSpec, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = f.sub(x, y);
    }
    trim(out)
}

/// Rabin irreducibility test for a monic polynomial of degree >= 1.
pub fn is_irreducible(f: FieldSpec, a: &Poly) -> bool {
    let a = monic(f, a);
    let m = match degree(&a) {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(m) => m,
    };
    // Repeated factors disqualify immediately.
    let d = derivative(f, &a);
    if d.is_empty() || degree(&gcd(f, &a, &d)) != Some(0) {
        return false;
    }
    let x = vec![0u64, 1];
    for q in prime_divisors(m) {
        let g = x_frobenius_power(f, m / q, &a);
        let h = poly_sub(f, &g, &rem(f, &x, &a));
        if degree(&gcd(f, &a, &h)) != Some(0) {
            return false;
        }
    }
    let g = x_frobenius_power(f, m, &a);
    poly_sub(f, &g, &rem(f, &x, &a)).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> FieldSpec {
        FieldSpec::new(7).unwrap()
    }

    #[test]
    fn remainder_and_gcd() {
        // (x^2 - 1) and (x - 1) share the factor x - 1.
        let a = vec![6, 0, 1];
        let b = vec![6, 1];
        assert_eq!(gcd(f(), &a, &b), vec![6, 1]);
        assert!(rem(f(), &a, &b).is_empty());
    }

    #[test]
    fn irreducibility_small_cases() {
        // x^2 + 1 over F_7: -1 is not a square mod 7, irreducible.
        assert!(is_irreducible(f(), &vec![1, 0, 1]));
        // x^2 - 1 = (x-1)(x+1).
        assert!(!is_irreducible(f(), &vec![6, 0, 1]));
        // x^2 - 2 over F_7: 2 = 3^2 + ... 3^2 = 2 mod 7, so reducible.
        assert!(!is_irreducible(f(), &vec![5, 0, 1]));
        // (x-1)^2 has a repeated factor.
        assert!(!is_irreducible(f(), &vec![1, 5, 1]));
        // linear polynomials are irreducible.
        assert!(is_irreducible(f(), &vec![3, 1]));
        // constants are not.
        assert!(!is_irreducible(f(), &vec![4]));
    }

    #[test]
    fn irreducible_cubic_over_f2() {
        let f2 = FieldSpec::new(2).unwrap();
        // x^3 + x + 1 is irreducible over F_2.
        assert!(is_irreducible(f2, &vec![1, 1, 0, 1]));
        // x^3 + 1 = (x + 1)(x^2 + x + 1).
        assert!(!is_irreducible(f2, &vec![1, 0, 0, 1]));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn poly_strategy() -> impl Strategy<Value = Poly> {
            proptest::collection::vec(0u64..7, 1..6).prop_map(trim)
        }

        proptest! {
            #[test]
            fn gcd_divides_both(a in poly_strategy(), b in poly_strategy()) {
                let g = gcd(f(), &a, &b);
                if !g.is_empty() {
                    if !a.is_empty() {
                        prop_assert!(rem(f(), &a, &g).is_empty());
                    }
                    if !b.is_empty() {
                        prop_assert!(rem(f(), &b, &g).is_empty());
                    }
                }
            }

            #[test]
            fn products_of_nonconstants_are_reducible(a in poly_strategy(), b in poly_strategy()) {
                prop_assume!(degree(&a).unwrap_or(0) >= 1 && degree(&b).unwrap_or(0) >= 1);
                prop_assert!(!is_irreducible(f(), &mul(f(), &a, &b)));
            }

            #[test]
            fn linear_polynomials_are_irreducible(c in 0u64..7) {
                prop_assert!(is_irreducible(f(), &vec![c, 1]));
            }
        }
    }
}
