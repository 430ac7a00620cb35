use crate::error::{Error, Result};

/// Pair shifts `U_ij = D (1 - 3 cos²θ_ij) / |R_i - R_j|³` for every pair
/// `i < j`, in lexicographic order. `θ_ij` is the angle between the
/// separation vector and `dipole_axis`.
pub fn rydberg_u_from_geometry(d_coeff: f64, positions: &[[f64; 3]], dipole_axis: [f64; 3]) -> Result<Vec<f64>> {
    let axis_norm = dipole_axis.iter().map(|x| x * x).sum::<f64>().sqrt();
    if axis_norm == 0.0 {
        return Err(Error::InvalidParameter("dipole axis must be nonzero".into()));
    }
    let mut out = Vec::new();
    for i in 0..positions.len() {
        for j in i + 1..positions.len() {
            let d: Vec<f64> = (0..3).map(|k| positions[i][k] - positions[j][k]).collect();
            let r = d.iter().map(|x| x * x).sum::<f64>().sqrt();
            if r == 0.0 {
                return Err(Error::InvalidParameter(format!("atoms {} and {} coincide", i + 1, j + 1)));
            }
            let cos = d.iter().zip(&dipole_axis).map(|(a, b)| a * b).sum::<f64>() / (r * axis_norm);
            out.push(d_coeff * (1.0 - 3.0 * cos * cos) / r.powi(3));
        }
    }
    Ok(out)
}
