#![allow(dead_code)]

use fischerlab::{ExactMatrix, Field, Poly, QuadricDomain, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

pub fn vars(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

pub fn random_rational<R: Rng>(rng: &mut R, field: Field) -> Scalar {
    let num = loop {
        let n: i64 = rng.gen_range(-9..=9);
        if n != 0 {
            break n;
        }
    };
    let den: i64 = rng.gen_range(1..=4);
    let re = Scalar::ratio(Field::Q, num, den);
    match field {
        Field::Q => re,
        Field::Qi => {
            let im: i64 = rng.gen_range(-3..=3);
            let re = re.re().clone();
            Scalar::gaussian(re, Scalar::ratio(Field::Q, im, rng.gen_range(1..=3)).re().clone())
        }
    }
}

/// Up to `max_terms` random terms of total degree at most `max_degree`.
pub fn random_poly<R: Rng>(rng: &mut R, arity: usize, field: Field, max_degree: u32, max_terms: usize) -> Poly {
    let n = rng.gen_range(1..=max_terms);
    let terms = (0..n).map(|_| {
        let deg = rng.gen_range(0..=max_degree);
        let mut exps = vec![0u32; arity];
        for _ in 0..deg {
            exps[rng.gen_range(0..arity)] += 1;
        }
        (exps, random_rational(rng, field))
    });
    Poly::from_terms(arity, field, terms.collect::<Vec<_>>()).unwrap()
}

/// Random polynomial whose degree is exactly `degree`.
pub fn random_poly_of_degree<R: Rng>(rng: &mut R, arity: usize, degree: u32, max_terms: usize) -> Poly {
    loop {
        let mut p = random_poly(rng, arity, Field::Q, degree, max_terms);
        let mut lead = vec![0u32; arity];
        for _ in 0..degree {
            lead[rng.gen_range(0..arity)] += 1;
        }
        let extra = Poly::from_terms(arity, Field::Q, vec![(lead, random_rational(rng, Field::Q))]).unwrap();
        p = &p + &extra;
        if p.degree().finite() == Some(degree) {
            return p;
        }
    }
}

/// Semi-axes `p/q` with `p` in 1..=5 and `q` in 1..=3.
pub fn random_semi_axes<R: Rng>(rng: &mut R, d: usize) -> Vec<Scalar> {
    (0..d).map(|_| Scalar::ratio(Field::Q, rng.gen_range(1..=5), rng.gen_range(1..=3))).collect()
}

pub fn random_ellipsoid<R: Rng>(rng: &mut R, d: usize) -> QuadricDomain {
    QuadricDomain::ellipsoid(&random_semi_axes(rng, d)).unwrap()
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, field: Field) -> ExactMatrix {
    let data = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| match field {
                    Field::Q => Scalar::from_i64(Field::Q, rng.gen_range(-9..=9)),
                    Field::Qi => Scalar::gaussian(
                        Scalar::from_i64(Field::Q, rng.gen_range(-9..=9)).re().clone(),
                        Scalar::from_i64(Field::Q, rng.gen_range(-2..=2)).re().clone(),
                    ),
                })
                .collect()
        })
        .collect();
    ExactMatrix::from_rows(field, cols, data).unwrap()
}

/// Random matrix of rank at most `r`, built as a product of two random factors.
pub fn random_low_rank<R: Rng>(rng: &mut R, rows: usize, cols: usize, r: usize) -> ExactMatrix {
    let left = random_matrix(rng, rows, r, Field::Q);
    let right = random_matrix(rng, r, cols, Field::Q);
    left.mul(&right).unwrap()
}

// Rank modulo a prime, computed with machine integers. A full rank mod p
// implies full rank over Q, so this is an independent certificate for
// nonsingularity that shares no code with the rational elimination.
pub const PRIME: u64 = 2_147_483_647;

fn mod_p(x: &BigInt) -> u64 {
    let p = BigInt::from(PRIME);
    x.mod_floor(&p).to_u64().unwrap()
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, PRIME - 2)
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    a %= PRIME;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % PRIME;
        }
        a = a * a % PRIME;
        e >>= 1;
    }
    acc
}

/// `None` if some denominator vanishes mod p (not expected for the data used here).
pub fn scalar_mod_p(s: &Scalar) -> Option<u64> {
    assert!(s.is_real(), "modular oracle is for rational matrices");
    let r = s.re();
    let den = mod_p(r.denom());
    if den == 0 {
        return None;
    }
    let num = mod_p(r.numer());
    Some(num * inv_mod(den) % PRIME)
}

pub fn rank_mod_p(m: &ExactMatrix) -> Option<usize> {
    let mut a: Vec<Vec<u64>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(scalar_mod_p).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, p);
        let inv = inv_mod(a[rank][c]);
        for k in c..cols {
            a[rank][k] = a[rank][k] * inv % PRIME;
        }
        for i in 0..rows {
            if i != rank && a[i][c] != 0 {
                let f = a[i][c];
                for k in c..cols {
                    a[i][k] = (a[i][k] + PRIME - f * a[rank][k] % PRIME) % PRIME;
                }
            }
        }
        rank += 1;
    }
    Some(rank)
}

/// Five-point-stencil Laplacian of a float function at `x`.
pub fn fd_laplacian(f: impl Fn(&[f64]) -> f64, x: &[f64], step: f64) -> f64 {
    let mut total = 0.0;
    let f0 = f(x);
    for axis in 0..x.len() {
        let mut plus = x.to_vec();
        let mut minus = x.to_vec();
        plus[axis] += step;
        minus[axis] -= step;
        total += (f(&plus) - 2.0 * f0 + f(&minus)) / (step * step);
    }
    total
}
