//! Scenes and their SVG rendering.

use std::fmt::Write;

use nalgebra::{Vector2, Vector3};
use rayon::prelude::*;

use super::geometry::{lorentz, Isometry, PolygonRealization};
use crate::cells::CellLabel;
use crate::coxeter::{Element, ElementBall};

/// Fill for a two-sided label: white, yellow, blue, green, red, then hashed.
pub fn label_color(label: CellLabel) -> String {
    match label {
        CellLabel::Id => "#ffffff".into(),
        CellLabel::Zero => "#f5d300".into(),
        CellLabel::Level(1) => "#2f6fdf".into(),
        CellLabel::Level(2) => "#2ea043".into(),
        CellLabel::Level(3) => "#d1242f".into(),
        CellLabel::Level(i) => hash_color(i as u64 + 1000),
    }
}

/// Deterministic color from an integer key.
pub fn hash_color(key: u64) -> String {
    let mut x = key.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^= x >> 31;
    let hue = (x % 360) as f64;
    let (s, l) = (0.65, 0.55);
    let c = (1.0 - (2.0 * l - 1.0f64).abs()) * s;
    let h = hue / 60.0;
    let xx = c * (1.0 - (h % 2.0 - 1.0).abs());
    let (r, g, b) = match h as u32 {
        0 => (c, xx, 0.0),
        1 => (xx, c, 0.0),
        2 => (0.0, c, xx),
        3 => (0.0, xx, c),
        4 => (xx, 0.0, c),
        _ => (c, 0.0, xx),
    };
    let m = l - c / 2.0;
    let to = |v: f64| ((v + m) * 255.0).round() as u8;
    format!("#{:02x}{:02x}{:02x}", to(r), to(g), to(b))
}

#[derive(Debug, Clone)]
pub enum Coloring {
    Plain,
    /// One label per ball element.
    TwoSided(Vec<CellLabel>),
    /// Spec index per ball element, `None` outside the level.
    OneSided(Vec<Option<usize>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SceneConfig {
    /// Output width and height in pixels.
    pub size: u32,
    /// Points are pulled inside this Euclidean radius of the disk.
    pub cutoff: f64,
    pub stroke_width: f64,
}

impl Default for SceneConfig {
    fn default() -> Self {
        SceneConfig {
            size: 800,
            cutoff: 0.9995,
            stroke_width: 0.4,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Scene {
    pub tiles: Vec<(Element, Isometry)>,
    pub fills: Vec<String>,
    /// The fundamental polygon's vertices.
    pub polygon: Vec<Vector3<f64>>,
    pub config: SceneConfig,
}

impl Scene {
    pub fn empty(config: SceneConfig) -> Self {
        Scene {
            tiles: Vec::new(),
            fills: Vec::new(),
            polygon: Vec::new(),
            config,
        }
    }

    /// One tile `w·Δ` per ball element, `w` acting by the product of the side
    /// reflections along its normal form.
    pub fn new(
        ball: &ElementBall,
        r: &PolygonRealization,
        coloring: &Coloring,
        config: SceneConfig,
    ) -> Self {
        let tiles: Vec<(Element, Isometry)> = ball
            .elements()
            .par_iter()
            .map(|w| {
                let m = w
                    .word
                    .letters()
                    .iter()
                    .fold(Isometry::identity(), |m, &s| m * r.reflections[s as usize]);
                (w.clone(), m)
            })
            .collect();
        let fills = (0..tiles.len())
            .map(|i| match coloring {
                Coloring::Plain => "#ffffff".to_string(),
                Coloring::TwoSided(l) => label_color(l[i]),
                Coloring::OneSided(s) => match s[i] {
                    Some(k) => hash_color(k as u64),
                    None => "#e8e8e8".to_string(),
                },
            })
            .collect();
        Scene {
            tiles,
            fills,
            polygon: r.vertices.clone(),
            config,
        }
    }

    pub fn distinct_fills(&self) -> Vec<String> {
        let mut v = self.fills.clone();
        v.sort();
        v.dedup();
        v
    }

    /// Hyperbolic distance between two tile images of `center`, minimised over pairs.
    pub fn min_center_distance(&self, center: &Vector3<f64>) -> f64 {
        let cs: Vec<Vector3<f64>> = self.tiles.iter().map(|(_, m)| m * center).collect();
        let mut best = f64::INFINITY;
        for i in 0..cs.len() {
            for j in i + 1..cs.len() {
                best = best.min((-lorentz(&cs[i], &cs[j])).max(1.0).acosh());
            }
        }
        best
    }
}

fn to_disk(v: &Vector3<f64>, cutoff: f64) -> Vector2<f64> {
    let q = -lorentz(v, v);
    let p = if q > 1e-12 * v.z * v.z {
        let u = v / q.sqrt();
        Vector2::new(u.x / (1.0 + u.z), u.y / (1.0 + u.z))
    } else {
        Vector2::new(v.x / v.z, v.y / v.z)
    };
    let n = p.norm();
    if n > cutoff {
        p * (cutoff / n)
    } else {
        p
    }
}

/// Path command for the geodesic from `p` to `q` in pixel space `scale`.
fn geodesic(out: &mut String, p: Vector2<f64>, q: Vector2<f64>, scale: f64) {
    let cross = p.x * q.y - p.y * q.x;
    let (x, y) = (scale * (1.0 + q.x), scale * (1.0 - q.y));
    if cross.abs() < 1e-9 {
        let _ = write!(out, " L{x:.3} {y:.3}");
        return;
    }
    // Circle through p and q orthogonal to the unit circle: |c|² = r² + 1.
    let a = 2.0 * nalgebra::Matrix2::new(p.x, p.y, q.x, q.y);
    let b = Vector2::new(p.norm_squared() + 1.0, q.norm_squared() + 1.0);
    let c = a.lu().solve(&b).unwrap();
    let r = (c.norm_squared() - 1.0).max(0.0).sqrt() * scale;
    let sweep = u8::from(cross < 0.0);
    let _ = write!(out, " A{r:.3} {r:.3} 0 0 {sweep} {x:.3} {y:.3}");
}

/// Deterministic SVG of the scene.
pub fn render_svg(scene: &Scene) -> Vec<u8> {
    let size = scene.config.size as f64;
    let scale = size / 2.0;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        scene.config.size
    );
    let _ = writeln!(
        out,
        r##"<circle cx="{scale:.3}" cy="{scale:.3}" r="{scale:.3}" fill="#f4f4f4" stroke="#000000" stroke-width="1"/>"##
    );
    let _ = writeln!(
        out,
        r##"<g stroke="#222222" stroke-width="{}" stroke-linejoin="round">"##,
        scene.config.stroke_width
    );
    for ((_, m), fill) in scene.tiles.iter().zip(&scene.fills) {
        let pts: Vec<Vector2<f64>> = scene
            .polygon
            .iter()
            .map(|v| to_disk(&(m * v), scene.config.cutoff))
            .collect();
        let mut d = String::new();
        let _ = write!(
            d,
            "M{:.3} {:.3}",
            scale * (1.0 + pts[0].x),
            scale * (1.0 - pts[0].y)
        );
        for i in 0..pts.len() {
            geodesic(&mut d, pts[i], pts[(i + 1) % pts.len()], scale);
        }
        let _ = writeln!(out, r#"<path d="{d} Z" fill="{fill}"/>"#);
    }
    out.push_str("</g>\n</svg>\n");
    out.into_bytes()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_scene_has_only_the_disk() {
        let svg = String::from_utf8(render_svg(&Scene::empty(SceneConfig::default()))).unwrap();
        assert_eq!(svg.matches("<circle").count(), 1);
        assert_eq!(svg.matches("<path").count(), 0);
    }

    #[test]
    fn hash_colors_are_stable() {
        assert_eq!(hash_color(7), hash_color(7));
        assert_ne!(hash_color(7), hash_color(8));
        assert_eq!(hash_color(3).len(), 7);
    }
}
