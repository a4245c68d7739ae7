//! Fate images of dynamical and parameter planes, and PPM encoding.

use crate::dynamics::{classify_point, Budget, Fate};
use crate::maps::{critical_points, u_for_period2, MapSpec};
use crate::quadlike::param_fate_e;
use crate::sphere::SpherePoint;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Window {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Self {
        Window { re_min, re_max, im_min, im_max }
    }

    pub fn is_valid(&self) -> bool {
        self.re_max > self.re_min && self.im_max > self.im_min
    }

    /// Center of pixel (col, row); row 0 is the top (largest imaginary part).
    pub fn pixel_center(&self, col: usize, row: usize, width: usize, height: usize) -> Complex64 {
        let x = self.re_min + (self.re_max - self.re_min) * (col as f64 + 0.5) / width as f64;
        let y = self.im_max - (self.im_max - self.im_min) * (row as f64 + 0.5) / height as f64;
        Complex64::new(x, y)
    }
}

pub type Rgb = [u8; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Palette {
    pub ring: Rgb,
    pub ring_preimage: Rgb,
    pub attracted: Rgb,
    pub escape_rational: Rgb,
    pub escape_transcendental: Rgb,
    pub undecided: Rgb,
    /// Selects which escape color applies.
    pub transcendental: bool,
}

pub const GREEN: Rgb = [0, 160, 0];
pub const DARK_YELLOW: Rgb = [184, 134, 11];
pub const WHITE: Rgb = [255, 255, 255];
pub const LIGHT_GRAY: Rgb = [200, 200, 200];
pub const BLACK: Rgb = [0, 0, 0];

impl Palette {
    pub fn for_map(map: &MapSpec) -> Self {
        Palette {
            ring: GREEN,
            ring_preimage: DARK_YELLOW,
            attracted: WHITE,
            escape_rational: WHITE,
            escape_transcendental: LIGHT_GRAY,
            undecided: BLACK,
            transcendental: map.is_transcendental(),
        }
    }

    pub fn color(&self, fate: &Fate) -> Rgb {
        match fate {
            Fate::RotationDomain { entry_steps: 0 } => self.ring,
            Fate::RotationDomain { .. } => self.ring_preimage,
            Fate::AttractedToCycle { .. } => self.attracted,
            Fate::EscapeToInfinity if self.transcendental => self.escape_transcendental,
            Fate::EscapeToInfinity => self.escape_rational,
            Fate::Undecided => self.undecided,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FateImage {
    pub width: usize,
    pub height: usize,
    pub window: Window,
    pub fates: Vec<Fate>,
    pub palette: Palette,
}

impl FateImage {
    pub fn fate(&self, col: usize, row: usize) -> &Fate {
        &self.fates[row * self.width + col]
    }

    pub fn color_counts(&self) -> std::collections::BTreeMap<Rgb, usize> {
        let mut m = std::collections::BTreeMap::new();
        for f in &self.fates {
            *m.entry(self.palette.color(f)).or_insert(0) += 1;
        }
        m
    }

    pub fn count(&self, color: Rgb) -> usize {
        self.fates.iter().filter(|f| self.palette.color(f) == color).count()
    }
}

fn render_grid<F>(window: Window, width: usize, height: usize, palette: Palette, fate_at: F) -> FateImage
where
    F: Fn(Complex64) -> Fate + Sync,
{
    let rows: Vec<Vec<Fate>> = (0..height)
        .into_par_iter()
        .map(|row| {
            (0..width)
                .map(|col| fate_at(window.pixel_center(col, row, width, height)))
                .collect()
        })
        .collect();
    FateImage {
        width,
        height,
        window,
        fates: rows.into_iter().flatten().collect(),
        palette,
    }
}

pub fn render_dynamical(map: &MapSpec, window: Window, width: usize, height: usize, budget: &Budget) -> FateImage {
    render_grid(window, width, height, Palette::for_map(map), |z| {
        classify_point(map, SpherePoint::Finite(z), budget)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "slice")]
pub enum ParamSlice2D {
    /// λ ↦ orbit of −2 under λz²e^z.
    EntireZ2Exp,
    /// b ↦ orbit of the larger free critical point of f_{a,b} with u = u_for_period2(a, b).
    CubicRatB { a: Complex64 },
    /// Every pixel uses the same map and starting point.
    Constant { map: MapSpec, start: SpherePoint },
}

impl ParamSlice2D {
    fn fate(&self, c: Complex64, budget: &Budget) -> Fate {
        match *self {
            ParamSlice2D::EntireZ2Exp => {
                if c.norm() == 0.0 {
                    return Fate::Undecided;
                }
                param_fate_e(c, budget)
            }
            ParamSlice2D::CubicRatB { a } => {
                let u = match u_for_period2(a, c) {
                    Ok(u) => u,
                    Err(_) => return Fate::Undecided,
                };
                let map = MapSpec::CubicRat { a, b: c, u };
                let start = critical_points(&map)
                    .into_iter()
                    .filter_map(|(p, _)| p.finite())
                    .max_by(|x, y| x.norm().total_cmp(&y.norm()))
                    .map(SpherePoint::Finite)
                    .unwrap_or(SpherePoint::Infinity);
                classify_point(&map, start, &budget.with_period(2))
            }
            ParamSlice2D::Constant { map, start } => classify_point(&map, start, budget),
        }
    }

    fn palette(&self) -> Palette {
        match self {
            ParamSlice2D::EntireZ2Exp => Palette::for_map(&MapSpec::EntireZ2Exp { lambda: Complex64::new(1.0, 0.0) }),
            ParamSlice2D::CubicRatB { a } => Palette::for_map(&MapSpec::CubicRat { a: *a, b: *a, u: *a }),
            ParamSlice2D::Constant { map, .. } => Palette::for_map(map),
        }
    }
}

pub fn render_parameter(slice: &ParamSlice2D, window: Window, width: usize, height: usize, budget: &Budget) -> FateImage {
    render_grid(window, width, height, slice.palette(), |c| slice.fate(c, budget))
}

pub fn encode_ppm(image: &FateImage) -> Vec<u8> {
    let header = format!("P6\n{} {}\n255\n", image.width, image.height);
    let mut out = Vec::with_capacity(header.len() + 3 * image.fates.len());
    out.extend_from_slice(header.as_bytes());
    for f in &image.fates {
        out.extend_from_slice(&image.palette.color(f));
    }
    out
}

/// Size of the 4-connected component of pixels satisfying `keep` that contains (col, row).
pub fn component_size<F: Fn(&Fate) -> bool>(image: &FateImage, col: usize, row: usize, keep: F) -> usize {
    let (w, h) = (image.width, image.height);
    if col >= w || row >= h || !keep(image.fate(col, row)) {
        return 0;
    }
    let mut seen = vec![false; w * h];
    let mut stack = vec![(col, row)];
    seen[row * w + col] = true;
    let mut size = 0;
    while let Some((c, r)) = stack.pop() {
        size += 1;
        let mut push = |c2: usize, r2: usize| {
            let idx = r2 * w + c2;
            if !seen[idx] && keep(&image.fates[idx]) {
                seen[idx] = true;
                stack.push((c2, r2));
            }
        };
        if c > 0 {
            push(c - 1, r);
        }
        if c + 1 < w {
            push(c + 1, r);
        }
        if r > 0 {
            push(c, r - 1);
        }
        if r + 1 < h {
            push(c, r + 1);
        }
    }
    size
}
