//! JSON conventions for complex scalars: every complex number is written as
//! a two-element array `[re, im]`.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// `serde(with = "...")` adapter for a single `Complex64` as `[re, im]`.
pub mod pair {
    use super::*;

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

/// `serde(with = "...")` adapter for `Vec<Complex64>` as `[[re, im], ...]`.
pub mod pair_vec {
    use super::*;

    pub fn serialize<S: Serializer>(zs: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = zs.iter().map(|z| [z.re, z.im]).collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        Ok(pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect())
    }
}

/// Flat coordinate encoding `[re_1, im_1, re_2, im_2, ...]` used for points.
pub fn to_flat(coords: &[Complex64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * coords.len());
    for z in coords {
        out.push(z.re);
        out.push(z.im);
    }
    out
}

/// Inverse of [`to_flat`]; fails on odd-length input.
pub fn from_flat(flat: &[f64]) -> Result<Vec<Complex64>, String> {
    if flat.len() % 2 != 0 {
        return Err(format!("flat coordinate list has odd length {}", flat.len()));
    }
    Ok(flat
        .chunks_exact(2)
        .map(|c| Complex64::new(c[0], c[1]))
        .collect())
}

/// Helper for deserializers that need flat coordinates.
pub fn from_flat_de<'de, D: Deserializer<'de>>(flat: &[f64]) -> Result<Vec<Complex64>, D::Error> {
    from_flat(flat).map_err(D::Error::custom)
}
