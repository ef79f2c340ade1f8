//! Hyperboloid model computations and the realization of the fundamental polygon.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};

use super::RenderError;
use crate::coxeter::{AngleDenominator, CoxeterPresentation};

pub type Isometry = Matrix3<f64>;

/// Lorentz form diag(1, 1, −1).
pub fn lorentz(a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    a.x * b.x + a.y * b.y - a.z * b.z
}

fn j() -> Matrix3<f64> {
    Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -1.0))
}

/// A vector Lorentz-orthogonal to both `a` and `b`.
fn lorentz_cross(a: &Vector3<f64>, b: &Vector3<f64>) -> Vector3<f64> {
    j() * a.cross(b)
}

/// Reflection in the plane Lorentz-orthogonal to the unit spacelike `e`.
pub fn reflection(e: &Vector3<f64>) -> Isometry {
    Matrix3::identity() - 2.0 * e * (j() * e).transpose()
}

/// `max |MᵀJM − J|`.
pub fn lorentz_residual(m: &Isometry) -> f64 {
    (m.transpose() * j() * m - j()).abs().max()
}

/// Point on the upper sheet at distance `rho` from (0,0,1) in direction `phi`.
fn polar(rho: f64, phi: f64) -> Vector3<f64> {
    Vector3::new(rho.sinh() * phi.cos(), rho.sinh() * phi.sin(), rho.cosh())
}

fn ideal(phi: f64) -> Vector3<f64> {
    Vector3::new(phi.cos(), phi.sin(), 1.0)
}

fn is_ideal(v: &Vector3<f64>) -> bool {
    lorentz(v, v).abs() < 1e-9 * v.z * v.z
}

/// Interior angle at `v` (timelike, unit) of the geodesics towards `a` and `b`.
fn angle_at(v: &Vector3<f64>, a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    let ta = a + lorentz(a, v) * v;
    let tb = b + lorentz(b, v) * v;
    let c = lorentz(&ta, &tb) / (lorentz(&ta, &ta) * lorentz(&tb, &tb)).sqrt();
    c.clamp(-1.0, 1.0).acos()
}

/// Area of the triangle with hyperboloid or light-cone vertices.
pub fn triangle_area(a: &Vector3<f64>, b: &Vector3<f64>, c: &Vector3<f64>) -> f64 {
    let n = |x: &Vector3<f64>| {
        if is_ideal(x) {
            0.0
        } else {
            (-lorentz(x, x)).sqrt()
        }
    };
    let det = Matrix3::from_columns(&[*a, *b, *c]).determinant().abs();
    let den =
        n(a) * n(b) * n(c) - n(c) * lorentz(a, b) - n(a) * lorentz(b, c) - n(b) * lorentz(c, a);
    2.0 * det.atan2(den)
}

/// The fundamental polygon: vertex `i` joins sides `i` and `i+1` and has angle `π/aᵢ`.
#[derive(Debug, Clone)]
pub struct PolygonRealization {
    /// Hyperboloid points, or light-cone points with z = 1 for ideal vertices.
    pub vertices: Vec<Vector3<f64>>,
    /// Unit spacelike side normals, pointing away from the polygon.
    pub normals: Vec<Vector3<f64>>,
    pub reflections: Vec<Isometry>,
    /// Realized minus prescribed angle at each vertex.
    pub angle_residuals: Vec<f64>,
}

fn target_angle(a: AngleDenominator) -> f64 {
    match a {
        AngleDenominator::Finite(m) => PI / m as f64,
        AngleDenominator::Ideal => 0.0,
    }
}

impl PolygonRealization {
    pub fn new(p: &CoxeterPresentation) -> Result<Self, RenderError> {
        let vertices = if p.rank() == 3 { triangle(p)? } else { fan(p)? };
        Ok(Self::from_vertices(p, vertices))
    }

    fn from_vertices(p: &CoxeterPresentation, vertices: Vec<Vector3<f64>>) -> Self {
        let n = vertices.len();
        let inside = {
            let s: Vector3<f64> = vertices.iter().map(|v| v / v.z).sum();
            s / (-lorentz(&s, &s)).sqrt()
        };
        let normals: Vec<Vector3<f64>> = (0..n)
            .map(|i| {
                let e = lorentz_cross(&vertices[(i + n - 1) % n], &vertices[i]);
                let e = e / lorentz(&e, &e).sqrt();
                if lorentz(&inside, &e) > 0.0 {
                    -e
                } else {
                    e
                }
            })
            .collect();
        let reflections = normals.iter().map(reflection).collect();
        let angle_residuals = (0..n)
            .map(|i| {
                let v = &vertices[i];
                let realized = if is_ideal(v) {
                    0.0
                } else {
                    angle_at(v, &vertices[(i + n - 1) % n], &vertices[(i + 1) % n])
                };
                realized - target_angle(p.angles()[i])
            })
            .collect();
        PolygonRealization {
            vertices,
            normals,
            reflections,
            angle_residuals,
        }
    }

    /// Area by fanning triangles from an interior point.
    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        let s: Vector3<f64> = self.vertices.iter().map(|v| v / v.z).sum();
        let c = s / (-lorentz(&s, &s)).sqrt();
        (0..n)
            .map(|i| triangle_area(&c, &self.vertices[i], &self.vertices[(i + 1) % n]))
            .sum()
    }

    /// `(n − 2)π − Σ angles`.
    pub fn gauss_bonnet(p: &CoxeterPresentation) -> f64 {
        (p.rank() as f64 - 2.0) * PI - p.angles().iter().map(|&a| target_angle(a)).sum::<f64>()
    }

    pub fn max_angle_residual(&self) -> f64 {
        self.angle_residuals.iter().fold(0.0, |m, r| m.max(r.abs()))
    }

    /// Some interior point.
    pub fn center(&self) -> Vector3<f64> {
        let s: Vector3<f64> = self.vertices.iter().map(|v| v / v.z).sum();
        s / (-lorentz(&s, &s)).sqrt()
    }
}

/// Triangle from the Gram matrix of its side normals.
fn triangle(p: &CoxeterPresentation) -> Result<Vec<Vector3<f64>>, RenderError> {
    let mut g = Matrix3::identity();
    for i in 0..3 {
        let c = -target_angle(p.angles()[i]).cos();
        let (a, b) = (i, (i + 1) % 3);
        g[(a, b)] = c;
        g[(b, a)] = c;
    }
    let eig = g.symmetric_eigen();
    let mut order: Vec<usize> = (0..3).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let lam: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    if !(lam[1] > 0.0 && lam[2] < 0.0) {
        return Err(RenderError::NotHyperbolic);
    }
    let normals: Vec<Vector3<f64>> = (0..3)
        .map(|i| Vector3::from_fn(|k, _| eig.eigenvectors[(i, order[k])] * lam[k].abs().sqrt()))
        .collect();
    let vertices = (0..3)
        .map(|i| {
            let mut v = lorentz_cross(&normals[i], &normals[(i + 1) % 3]);
            if v.z < 0.0 {
                v = -v;
            }
            match p.angles()[i] {
                AngleDenominator::Ideal => ideal(v.y.atan2(v.x)),
                AngleDenominator::Finite(_) => v / (-lorentz(&v, &v)).sqrt(),
            }
        })
        .collect();
    Ok(vertices)
}

const NEWTON_STEPS: usize = 200;
const NEWTON_TOL: f64 = 1e-13;

/// Polygon with vertex `i` on the ray at angle `2πi/n` from (0,0,1), radii
/// chosen by damped Newton iteration so that the angles hit their targets.
fn fan(p: &CoxeterPresentation) -> Result<Vec<Vector3<f64>>, RenderError> {
    let n = p.rank();
    let angles: Vec<f64> = p.angles().iter().map(|&a| target_angle(a)).collect();
    let finite: Vec<usize> = (0..n).filter(|&i| angles[i] > 0.0).collect();
    let phi = |i: usize| 2.0 * PI * i as f64 / n as f64;
    let build = |rho: &[f64]| -> Vec<Vector3<f64>> {
        let mut v: Vec<Vector3<f64>> = (0..n).map(|i| ideal(phi(i))).collect();
        for (k, &i) in finite.iter().enumerate() {
            v[i] = polar(rho[k], phi(i));
        }
        v
    };
    let residual = |rho: &[f64]| -> Vec<f64> {
        let v = build(rho);
        finite
            .iter()
            .map(|&i| angle_at(&v[i], &v[(i + n - 1) % n], &v[(i + 1) % n]) - angles[i])
            .collect()
    };
    let norm = |r: &[f64]| r.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mean = finite.iter().map(|&i| angles[i]).sum::<f64>() / finite.len().max(1) as f64;
    let seed = ((PI / n as f64).tan().recip() * (mean / 2.0).tan().recip())
        .max(1.5)
        .acosh();
    let mut rho = vec![seed; finite.len()];
    let mut r = residual(&rho);
    for _ in 0..NEWTON_STEPS {
        if norm(&r) < NEWTON_TOL {
            break;
        }
        let m = rho.len();
        let h = 1e-7;
        let mut jac = nalgebra::DMatrix::<f64>::zeros(m, m);
        for c in 0..m {
            let mut x = rho.clone();
            x[c] += h;
            let rc = residual(&x);
            for row in 0..m {
                jac[(row, c)] = (rc[row] - r[row]) / h;
            }
        }
        let Some(step) = jac.lu().solve(&nalgebra::DVector::from_vec(r.clone())) else {
            return Err(RenderError::SolverDiverged { residual: norm(&r) });
        };
        let mut t = 1.0;
        loop {
            let x: Vec<f64> = rho
                .iter()
                .zip(step.iter())
                .map(|(a, d)| (a - t * d).max(1e-6))
                .collect();
            let rx = residual(&x);
            if norm(&rx) < norm(&r) {
                rho = x;
                r = rx;
                break;
            }
            t /= 2.0;
            if t < 1e-10 {
                return Err(RenderError::SolverDiverged { residual: norm(&r) });
            }
        }
    }
    if norm(&r) > 1e-10 {
        return Err(RenderError::SolverDiverged { residual: norm(&r) });
    }
    Ok(build(&rho))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w237_triangle() {
        let p = CoxeterPresentation::from_angles("W237", &[3, 7, 2]).unwrap();
        let r = PolygonRealization::new(&p).unwrap();
        assert!(r.max_angle_residual() < 1e-8);
        assert!((r.area() - PI / 42.0).abs() < 1e-8, "{}", r.area());
        for m in &r.reflections {
            assert!((m * m - Isometry::identity()).abs().max() < 1e-9);
            assert!(lorentz_residual(m) < 1e-9);
        }
    }

    #[test]
    fn w2224_quadrilateral() {
        let p = CoxeterPresentation::from_angles("W2224", &[2, 2, 2, 4]).unwrap();
        let r = PolygonRealization::new(&p).unwrap();
        assert!(r.max_angle_residual() < 1e-8, "{:?}", r.angle_residuals);
        assert!((r.area() - PI / 4.0).abs() < 1e-8, "{}", r.area());
    }

    #[test]
    fn ideal_triangle_area_is_pi() {
        let i = AngleDenominator::Ideal;
        let p = CoxeterPresentation::polygon("ideal", &[i, i, i]).unwrap();
        let r = PolygonRealization::new(&p).unwrap();
        assert!((r.area() - PI).abs() < 1e-8, "{}", r.area());
    }

    #[test]
    fn relations_hold() {
        let p = CoxeterPresentation::from_angles("W2224", &[2, 2, 2, 4]).unwrap();
        let r = PolygonRealization::new(&p).unwrap();
        for (i, a) in p.angles().iter().enumerate() {
            let AngleDenominator::Finite(m) = *a else {
                continue;
            };
            let st = r.reflections[i] * r.reflections[(i + 1) % 4];
            assert!((st.pow(m) - Isometry::identity()).abs().max() < 1e-9);
        }
    }
}
