//! Binomial transforms, their inverse, and exact interpolation.

use polybinom::{binomial_transform, interpolate, inverse_transform, IntPolynomial, Start};

fn main() -> polybinom::Result<()> {
    // n^4 has the Eulerian numbers as its start-0 transform
    let quartic = IntPolynomial::from_integers([0, 0, 0, 0, 1]);
    let v = binomial_transform(&quartic, 4, Start::Zero)?;
    println!("transform of {quartic}: {v}");
    println!("inverse: {}", inverse_transform(&v));

    // the same counts seen from n = 1 with a shifted basis
    let flows = IntPolynomial::from_integers([2, -3, 1]);
    println!("start-1 transform of {flows}: {}", binomial_transform(&flows, 2, Start::One)?);

    // C(n, 3) from its values at n = 0..=3; the coefficients are not integers
    let p = interpolate(&[(0, 0), (1, 0), (2, 0), (3, 1)], 3)?;
    println!("interpolated: {p}, value at 10: {}", p.evaluate(10));
    Ok(())
}
