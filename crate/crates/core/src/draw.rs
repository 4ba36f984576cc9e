//! Drawing a graphical map in the plane.
//!
//! One point per vertex orbit, with one edge-end (stub) per corner fanned
//! out clockwise in the order of the orbit. Each corner's label sits just
//! clockwise of its stub. Every `π`-pair of corners is joined by a cubic
//! curve leaving along the two stub directions, so the angular order of
//! curves at each vertex reproduces the vertex rotation.
//!
//! All angles are in screen coordinates, where `y` grows downward; an
//! increasing angle therefore turns clockwise on screen.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::knot::{Color, Knot};
use crate::map::CombMap;
use crate::perm::Corner;

#[derive(Debug, Clone, PartialEq)]
pub struct LayoutConfig {
    pub canvas_width: f64,
    pub canvas_height: f64,
    pub vertex_radius: f64,
    pub stub_length: f64,
    /// Radius of the placement circle as a fraction of the smaller canvas side.
    pub circle_fraction: f64,
    pub start_angle_degrees: f64,
    pub label_offset: f64,
    /// Decimal places for emitted coordinates.
    pub precision: usize,
}

impl Default for LayoutConfig {
    fn default() -> Self {
        LayoutConfig {
            canvas_width: 800.0,
            canvas_height: 600.0,
            vertex_radius: 4.0,
            stub_length: 30.0,
            circle_fraction: 1.0 / 3.0,
            start_angle_degrees: -90.0,
            label_offset: 10.0,
            precision: 2,
        }
    }
}

impl LayoutConfig {
    pub fn validate(&self) -> Result<()> {
        let lengths = [
            ("canvas width", self.canvas_width),
            ("canvas height", self.canvas_height),
            ("vertex radius", self.vertex_radius),
            ("stub length", self.stub_length),
            ("circle fraction", self.circle_fraction),
            ("label offset", self.label_offset),
        ];
        for (name, value) in lengths {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidLayout(format!(
                    "{name} must be positive, got {value}"
                )));
            }
        }
        if !self.start_angle_degrees.is_finite() {
            return Err(Error::InvalidLayout("start angle must be finite".into()));
        }
        Ok(())
    }

    // control distance for curves between distinct vertices
    fn link_control(&self, from: Point, to: Point) -> f64 {
        f64::max(40.0, 0.3 * from.distance(to))
    }

    fn loop_control(&self) -> f64 {
        2.5 * self.stub_length
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Point {
        Point { x, y }
    }

    fn along(self, angle_degrees: f64, distance: f64) -> Point {
        let t = angle_degrees.to_radians();
        Point::new(self.x + distance * t.cos(), self.y + distance * t.sin())
    }

    fn offset(self, dx: f64, dy: f64) -> Point {
        Point::new(self.x + dx, self.y + dy)
    }

    fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DrawnVertex {
    pub orbit: Vec<Corner>,
    pub position: Point,
}

/// The edge-end of one corner.
#[derive(Debug, Clone, PartialEq)]
pub struct Stub {
    pub corner: Corner,
    pub vertex: usize,
    pub angle_degrees: f64,
    pub tip: Point,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelColor {
    Plain,
    Green,
    Red,
}

impl LabelColor {
    fn svg(self) -> &'static str {
        match self {
            LabelColor::Plain => "#333333",
            LabelColor::Green => "green",
            LabelColor::Red => "red",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Label {
    pub corner: Corner,
    pub anchor: Point,
    pub color: LabelColor,
}

/// A cubic curve joining the stub tips of `a` and `c = a^π`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgePath {
    pub a: Corner,
    pub c: Corner,
    pub vertex1: usize,
    pub vertex2: usize,
    /// Start, two inner control points, end.
    pub controls: [Point; 4],
    pub is_loop: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Drawing {
    pub config: LayoutConfig,
    pub vertices: Vec<DrawnVertex>,
    /// Indexed by `corner - 1`.
    pub stubs: Vec<Stub>,
    pub edge_paths: Vec<EdgePath>,
    /// Indexed by `corner - 1`.
    pub labels: Vec<Label>,
    pub p_text: String,
    pub q_text: String,
}

pub fn layout_map(map: &CombMap, config: &LayoutConfig) -> Result<Drawing> {
    config.validate()?;
    let edges = map.edges()?;
    let orbits = map.vertices();
    let m = map.degree();

    let center = Point::new(config.canvas_width / 2.0, config.canvas_height / 2.0);
    let radius = config.circle_fraction * config.canvas_width.min(config.canvas_height);
    let step = 360.0 / orbits.len().max(1) as f64;

    let mut vertices = Vec::with_capacity(orbits.len());
    let mut stubs = vec![None; m];
    let mut labels = vec![None; m];
    for (v, orbit) in orbits.into_iter().enumerate() {
        let position = center.along(config.start_angle_degrees + v as f64 * step, radius);
        let fan = 360.0 / orbit.len() as f64;
        for (k, &corner) in orbit.iter().enumerate() {
            let angle = config.start_angle_degrees + k as f64 * fan;
            stubs[corner - 1] = Some(Stub {
                corner,
                vertex: v,
                angle_degrees: angle,
                tip: position.along(angle, config.stub_length),
            });
            labels[corner - 1] = Some(Label {
                corner,
                anchor: position.along(angle + fan / 2.0, config.vertex_radius + config.label_offset),
                color: LabelColor::Plain,
            });
        }
        vertices.push(DrawnVertex { orbit, position });
    }
    let stubs: Vec<Stub> = stubs
        .into_iter()
        .map(|s| s.expect("every corner is on a vertex"))
        .collect();
    let labels: Vec<Label> = labels
        .into_iter()
        .map(|l| l.expect("every corner is on a vertex"))
        .collect();

    let edge_paths = edges.iter().map(|e| route(config, &stubs, e.a, e.c)).collect();
    Ok(Drawing {
        config: config.clone(),
        vertices,
        stubs,
        edge_paths,
        labels,
        p_text: map.p().to_string(),
        q_text: map.q().to_string(),
    })
}

fn route(config: &LayoutConfig, stubs: &[Stub], a: Corner, c: Corner) -> EdgePath {
    let (from, to) = (&stubs[a - 1], &stubs[c - 1]);
    let is_loop = from.vertex == to.vertex;
    let reach = if is_loop {
        config.loop_control()
    } else {
        config.link_control(from.tip, to.tip)
    };
    EdgePath {
        a,
        c,
        vertex1: from.vertex,
        vertex2: to.vertex,
        controls: [
            from.tip,
            from.tip.along(from.angle_degrees, reach),
            to.tip.along(to.angle_degrees, reach),
            to.tip,
        ],
        is_loop,
    }
}

/// Moves one vertex, carrying its stubs and labels along, and reroutes only
/// the curves that touch it. Stub angles are kept.
pub fn move_vertex(drawing: &Drawing, vertex: usize, position: Point) -> Result<Drawing> {
    let Some(old) = drawing.vertices.get(vertex) else {
        return Err(Error::NoSuchVertex {
            index: vertex,
            count: drawing.vertices.len(),
        });
    };
    let (dx, dy) = (position.x - old.position.x, position.y - old.position.y);
    let mut moved = drawing.clone();
    moved.vertices[vertex].position = position;
    for &corner in &drawing.vertices[vertex].orbit {
        let stub = &mut moved.stubs[corner - 1];
        stub.tip = stub.tip.offset(dx, dy);
        let label = &mut moved.labels[corner - 1];
        label.anchor = label.anchor.offset(dx, dy);
    }
    for path in moved.edge_paths.iter_mut() {
        if path.vertex1 == vertex || path.vertex2 == vertex {
            *path = route(&moved.config, &moved.stubs, path.a, path.c);
        }
    }
    Ok(moved)
}

/// Renders a standalone SVG document. With a knot, `C1` labels are green and
/// `C2` labels red.
pub fn render_svg(drawing: &Drawing, knot: Option<&Knot>, config: &LayoutConfig) -> Result<String> {
    if let Some(knot) = knot {
        if knot.degree() != drawing.stubs.len() {
            return Err(Error::DegreeMismatch {
                left: knot.degree(),
                right: drawing.stubs.len(),
            });
        }
    }
    let num = |v: f64| format_number(v, config.precision);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let (w, h) = (num(config.canvas_width), num(config.canvas_height));
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    let _ = writeln!(out, "<!-- P = {} Q = {} -->", drawing.p_text, drawing.q_text);

    out.push_str("<g class=\"edges\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\">\n");
    for path in &drawing.edge_paths {
        let [p0, p1, p2, p3] = path.controls;
        let class = if path.is_loop { "edge loop" } else { "edge" };
        let _ = writeln!(
            out,
            "<path class=\"{class}\" data-corners=\"{} {}\" d=\"M {} {} C {} {} {} {} {} {}\"/>",
            path.a,
            path.c,
            num(p0.x),
            num(p0.y),
            num(p1.x),
            num(p1.y),
            num(p2.x),
            num(p2.y),
            num(p3.x),
            num(p3.y),
        );
    }
    out.push_str("</g>\n");

    out.push_str("<g class=\"vertices\" fill=\"black\">\n");
    for vertex in &drawing.vertices {
        let _ = writeln!(
            out,
            "<circle class=\"vertex\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
            num(vertex.position.x),
            num(vertex.position.y),
            num(config.vertex_radius),
        );
    }
    out.push_str("</g>\n");

    out.push_str(
        "<g class=\"labels\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\" dominant-baseline=\"central\">\n",
    );
    for label in &drawing.labels {
        let color = match knot.map(|k| k.color(label.corner)) {
            Some(Color::C1) => LabelColor::Green,
            Some(Color::C2) => LabelColor::Red,
            None => label.color,
        };
        let _ = writeln!(
            out,
            "<text class=\"corner\" x=\"{}\" y=\"{}\" fill=\"{}\">{}</text>",
            num(label.anchor.x),
            num(label.anchor.y),
            color.svg(),
            label.corner,
        );
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

/// Fixed-point decimal without exponent; negative zero prints as zero.
fn format_number(value: f64, precision: usize) -> String {
    let text = format!("{value:.precision$}");
    match text.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => text,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn fig4() -> CombMap {
        CombMap::from_vertex_rotation(Perm::parse_cycles("(1 8 7 5 3)(2 6 4)", Some(8)).unwrap()).unwrap()
    }

    #[test]
    fn layout_counts() {
        let d = layout_map(&fig4(), &LayoutConfig::default()).unwrap();
        assert_eq!(d.vertices.len(), 2);
        assert_eq!(d.stubs.len(), 8);
        assert_eq!(d.edge_paths.len(), 4);
        assert_eq!(d.edge_paths.iter().filter(|p| p.is_loop).count(), 1);

        let empty = CombMap::from_vertex_rotation(Perm::identity(0)).unwrap();
        let d = layout_map(&empty, &LayoutConfig::default()).unwrap();
        assert!(d.vertices.is_empty() && d.stubs.is_empty() && d.edge_paths.is_empty());

        let single = CombMap::from_vertex_rotation(Perm::identity(2)).unwrap();
        let d = layout_map(&single, &LayoutConfig::default()).unwrap();
        assert_eq!((d.vertices.len(), d.stubs.len(), d.edge_paths.len()), (2, 2, 1));
    }

    #[test]
    fn layout_rejects_partial_maps_and_bad_config() {
        let torus = CombMap::new(
            Perm::parse_cycles("(1 5)(2 6)(3 7)(4 8)", Some(8)).unwrap(),
            Perm::parse_cycles("(1 7 4 5 2 8 3 6)", Some(8)).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            layout_map(&torus, &LayoutConfig::default()),
            Err(Error::NotGraphical { .. })
        ));
        let bad = LayoutConfig {
            stub_length: 0.0,
            ..LayoutConfig::default()
        };
        assert!(matches!(layout_map(&fig4(), &bad), Err(Error::InvalidLayout(_))));
    }

    #[test]
    fn stubs_follow_rotation_clockwise() {
        let d = layout_map(&fig4(), &LayoutConfig::default()).unwrap();
        let first = &d.vertices[0];
        assert_eq!(first.orbit, vec![1, 8, 7, 5, 3]);
        let angles: Vec<f64> = first
            .orbit
            .iter()
            .map(|&c| d.stubs[c - 1].angle_degrees)
            .collect();
        assert!(angles.windows(2).all(|w| w[1] > w[0]));
        // first vertex at the top of the placement circle
        assert!((first.position.x - 400.0).abs() < 1e-9);
        assert!((first.position.y - 100.0).abs() < 1e-9);
    }

    #[test]
    fn paths_end_at_stub_tips() {
        let d = layout_map(&fig4(), &LayoutConfig::default()).unwrap();
        for path in &d.edge_paths {
            assert_eq!(path.controls[0], d.stubs[path.a - 1].tip);
            assert_eq!(path.controls[3], d.stubs[path.c - 1].tip);
        }
        let looped = d.edge_paths.iter().find(|p| p.is_loop).unwrap();
        let reach = looped.controls[0].distance(looped.controls[1]);
        assert!((reach - 75.0).abs() < 1e-9);
    }

    #[test]
    fn move_vertex_cases() {
        let d = layout_map(&fig4(), &LayoutConfig::default()).unwrap();
        let here = d.vertices[1].position;
        assert_eq!(move_vertex(&d, 1, here).unwrap(), d);

        let moved = move_vertex(&d, 1, Point::new(120.0, 80.0)).unwrap();
        let changed: Vec<bool> = d
            .edge_paths
            .iter()
            .zip(&moved.edge_paths)
            .map(|(a, b)| a != b)
            .collect();
        assert_eq!(changed, vec![true, true, true, false]);
        assert_eq!(moved.vertices[0], d.vertices[0]);
        for (old, new) in d.stubs.iter().zip(&moved.stubs) {
            assert_eq!(old.angle_degrees, new.angle_degrees);
        }

        assert_eq!(
            move_vertex(&d, 99, Point::new(0.0, 0.0)),
            Err(Error::NoSuchVertex { index: 99, count: 2 })
        );
    }

    #[test]
    fn svg_structure() {
        let config = LayoutConfig::default();
        let d = layout_map(&fig4(), &config).unwrap();
        let svg = render_svg(&d, None, &config).unwrap();
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg.matches("<path").count(), 4);
        assert_eq!(svg.matches("<text").count(), 8);
        assert!(svg.contains("<!-- P = (1 8 7 5 3)(2 6 4) Q = (1 7 6 3 2 5 4) -->"));
        assert_eq!(svg, render_svg(&d, None, &config).unwrap());

        let knot = Knot::zigzag(&fig4()).unwrap();
        let svg = render_svg(&d, Some(&knot), &config).unwrap();
        assert_eq!(svg.matches("fill=\"green\"").count(), 4);
        assert_eq!(svg.matches("fill=\"red\"").count(), 4);
        for c in [1, 3, 5, 7] {
            assert!(svg.contains(&format!("fill=\"green\">{c}</text>")));
        }

        let other = Knot::zigzag(&CombMap::from_vertex_rotation(Perm::identity(2)).unwrap()).unwrap();
        assert!(matches!(
            render_svg(&d, Some(&other), &config),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn number_format() {
        assert_eq!(format_number(1.005, 0), "1");
        assert_eq!(format_number(-0.001, 2), "0.00");
        assert_eq!(format_number(-1.5, 1), "-1.5");
        assert_eq!(format_number(1e21, 2), "1000000000000000000000.00");
    }
}
