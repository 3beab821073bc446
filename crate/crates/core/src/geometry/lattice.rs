use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::hull::{hull_decompose, Location};
use super::point::Point;
use super::pointset::PointSet;
use super::GeometryError;
use crate::rat::Rat;

/// The additive group generated by `A - A`, in canonical form.
///
/// Rank 2: `basis = [(p, q), (0, r)]` with `p, r > 0` and `0 <= q < r`.
/// Rank 1: a single generator with positive first nonzero coordinate.
/// Rank 0: empty basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Lattice2 {
    pub basis: Vec<Point>,
    pub rank: u8,
}

/// `(g, s, t)` with `g = gcd(a, b) >= 0` and `s*a + t*b = g`.
fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

pub fn lattice_of(a: &PointSet) -> Lattice2 {
    let base = a.get(0);
    let diffs: Vec<Point> = a.iter().skip(1).map(|p| p - base).collect();
    let mut scale = BigInt::one();
    for d in &diffs {
        scale = scale.lcm(&d.x.denom()).lcm(&d.y.denom());
    }
    let s = Rat::from_bigint(scale.clone());
    let ints: Vec<(BigInt, BigInt)> = diffs
        .iter()
        .map(|d| {
            let x = &d.x * &s;
            let y = &d.y * &s;
            (x.numer(), y.numer())
        })
        .collect();

    // w is a lattice vector whose x-coordinate generates all x-coordinates.
    let mut wx = BigInt::zero();
    let mut wy = BigInt::zero();
    for (x, y) in &ints {
        if x.is_zero() {
            continue;
        }
        let (g, c1, c2) = ext_gcd(&wx, x);
        if g != wx {
            let ny = &c1 * &wy + &c2 * y;
            wx = g;
            wy = ny;
        }
    }
    if wx.is_negative() {
        wx = -wx;
        wy = -wy;
    }
    // The x = 0 sublattice is generated by v - (v.x / wx) w.
    let mut r = BigInt::zero();
    for (x, y) in &ints {
        let yk = if wx.is_zero() { y.clone() } else { y - (x / &wx) * &wy };
        r = r.gcd(&yk);
    }
    let back = |v: BigInt| Rat::from_big_frac(v, scale.clone());
    match (wx.is_zero(), r.is_zero()) {
        (true, true) => Lattice2 { basis: vec![], rank: 0 },
        (true, false) => Lattice2 { basis: vec![Point::new(Rat::zero(), back(r))], rank: 1 },
        (false, true) => Lattice2 { basis: vec![Point::new(back(wx), back(wy))], rank: 1 },
        (false, false) => {
            let q = wy.mod_floor(&r);
            Lattice2 { basis: vec![Point::new(back(wx), back(q)), Point::new(Rat::zero(), back(r))], rank: 2 }
        }
    }
}

/// `A = [A] ∩ (a0 + Λ(A))`, decided by enumerating lattice points in the hull's bounding box.
pub fn is_saturated(a: &PointSet) -> Result<bool, GeometryError> {
    let hull = hull_decompose(a)?;
    let lat = lattice_of(a);
    let (b1, b2) = (&lat.basis[0], &lat.basis[1]);
    let origin = a.get(0);
    let xs = hull.vertices.iter().map(|v| &v.x);
    let ys = hull.vertices.iter().map(|v| &v.y);
    let xmin = xs.clone().min().expect("nonempty").clone();
    let xmax = xs.max().expect("nonempty").clone();
    let ymin = ys.clone().min().expect("nonempty").clone();
    let ymax = ys.max().expect("nonempty").clone();
    let to_i64 = |v: BigInt| v.to_i64().expect("lattice index range fits in i64");
    let i_lo = to_i64(((&xmin - &origin.x) / &b1.x).ceil());
    let i_hi = to_i64(((&xmax - &origin.x) / &b1.x).floor());
    let mut count = 0usize;
    for i in i_lo..=i_hi {
        let row = origin + &b1.scale(&Rat::from_int(i));
        let j_lo = to_i64(((&ymin - &row.y) / &b2.y).ceil());
        let j_hi = to_i64(((&ymax - &row.y) / &b2.y).floor());
        for j in j_lo..=j_hi {
            let p = &row + &b2.scale(&Rat::from_int(j));
            if hull.locate(&p) != Location::Exterior {
                count += 1;
                if count > a.len() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(count == a.len())
}
