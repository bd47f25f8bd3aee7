//! Serde adapters for complex matrices: row-major nested arrays of `[re, im]`.

use nalgebra::{Matrix2, Matrix3};
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

fn rows_of<const N: usize>(get: impl Fn(usize, usize) -> Complex64) -> Vec<Vec<Complex64>> {
    (0..N).map(|i| (0..N).map(|j| get(i, j)).collect()).collect()
}

fn read_rows<'de, D: Deserializer<'de>, const N: usize>(d: D) -> Result<[[Complex64; N]; N], D::Error> {
    let rows = Vec::<Vec<Complex64>>::deserialize(d)?;
    if rows.len() != N || rows.iter().any(|r| r.len() != N) {
        return Err(D::Error::custom(format!("expected a {N}x{N} matrix")));
    }
    let mut out = [[Complex64::new(0.0, 0.0); N]; N];
    for (i, r) in rows.iter().enumerate() {
        out[i].copy_from_slice(r);
    }
    Ok(out)
}

pub mod mat2 {
    use super::*;

    pub fn serialize<S: Serializer>(m: &Matrix2<Complex64>, s: S) -> Result<S::Ok, S::Error> {
        rows_of::<2>(|i, j| m[(i, j)]).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Matrix2<Complex64>, D::Error> {
        let r = read_rows::<D, 2>(d)?;
        Ok(Matrix2::new(r[0][0], r[0][1], r[1][0], r[1][1]))
    }
}

pub mod mat3 {
    use super::*;

    pub fn serialize<S: Serializer>(m: &Matrix3<Complex64>, s: S) -> Result<S::Ok, S::Error> {
        rows_of::<3>(|i, j| m[(i, j)]).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Matrix3<Complex64>, D::Error> {
        let r = read_rows::<D, 3>(d)?;
        Ok(Matrix3::from_fn(|i, j| r[i][j]))
    }
}

pub mod vec3 {
    use nalgebra::Vector3;

    use super::*;

    pub fn serialize<S: Serializer>(v: &Vector3<Complex64>, s: S) -> Result<S::Ok, S::Error> {
        [v[0], v[1], v[2]].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vector3<Complex64>, D::Error> {
        let a = <[Complex64; 3]>::deserialize(d)?;
        Ok(Vector3::new(a[0], a[1], a[2]))
    }
}

pub mod opt_vec3 {
    use nalgebra::Vector3;

    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Vector3<Complex64>>, s: S) -> Result<S::Ok, S::Error> {
        v.map(|v| [v[0], v[1], v[2]]).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vector3<Complex64>>, D::Error> {
        Ok(Option::<[Complex64; 3]>::deserialize(d)?.map(|a| Vector3::new(a[0], a[1], a[2])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Wrap {
        #[serde(with = "mat2")]
        a: Matrix2<Complex64>,
        #[serde(with = "mat3")]
        b: Matrix3<Complex64>,
    }

    #[test]
    fn row_major_round_trip() {
        let c = |re, im| Complex64::new(re, im);
        let w = Wrap {
            a: Matrix2::new(c(1.0, 0.0), c(2.0, 0.5), c(3.0, 0.0), c(4.0, -1.0)),
            b: Matrix3::from_fn(|i, j| c(i as f64, j as f64)),
        };
        let s = serde_json::to_string(&w).unwrap();
        assert!(s.starts_with(r#"{"a":[[[1.0,0.0],[2.0,0.5]],[[3.0,0.0],[4.0,-1.0]]]"#));
        assert_eq!(serde_json::from_str::<Wrap>(&s).unwrap(), w);
        assert!(serde_json::from_str::<Wrap>(r#"{"a":[[[1,0]]],"b":[]}"#).is_err());
    }
}
