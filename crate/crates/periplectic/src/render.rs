//! Text and SVG emitters for cap and arrow diagrams.
//!
//! The text renderer draws a ruler, a ball row and nested arcs whose height
//! follows the nesting depth, mirroring the usual way these diagrams are
//! drawn. The SVG emitter is dependency-free and produces a small subset of
//! SVG 1.1 (circle, path, line, text).

use crate::cap::{arrows, maximal_arrows, Arrow, CapDiagram};
use serde::{Deserialize, Serialize};

/// What to draw above the ball row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagramStyle {
    Caps,
    Arrows,
    Balls,
}

/// Glyph set for the text renderer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Charset {
    Unicode,
    Ascii,
}

struct Glyphs {
    ball: char,
    empty: char,
    corner_l: char,
    corner_r: char,
    bar: char,
    pipe: char,
    head: char,
}

impl Charset {
    fn glyphs(self) -> Glyphs {
        match self {
            Charset::Unicode => Glyphs {
                ball: '●',
                empty: '○',
                corner_l: '╭',
                corner_r: '╮',
                bar: '─',
                pipe: '│',
                head: '<',
            },
            Charset::Ascii => Glyphs {
                ball: '*',
                empty: 'o',
                corner_l: '+',
                corner_r: '+',
                bar: '-',
                pipe: '|',
                head: '<',
            },
        }
    }
}

/// Renders the diagram as fixed-width text: arcs (or arrows), the ball row,
/// and a position ruler.
#[allow(clippy::needless_range_loop)] // 2D grid painting reads best indexed
pub fn render_ascii(cd: &CapDiagram, style: DiagramStyle, charset: Charset) -> String {
    let d = cd.base();
    if d.rank() == 0 {
        return String::from("(empty diagram)\n");
    }
    let g = charset.glyphs();
    let max_pos = d.max_position().unwrap();
    let min_ball = d.min_position().unwrap();

    let all_arrows = arrows(d);
    let (lo, spans): (i64, Vec<(i64, i64, usize)>) = match style {
        DiagramStyle::Caps => {
            let heights = cd.heights();
            let spans: Vec<(i64, i64, usize)> = cd
                .caps()
                .iter()
                .zip(&heights)
                .map(|(c, &h)| (c.left, c.right, h))
                .collect();
            let lo = spans.iter().map(|s| s.0).min().unwrap_or(min_ball);
            (lo, spans)
        }
        DiagramStyle::Arrows => {
            let heights = arrow_heights(&all_arrows);
            let spans: Vec<(i64, i64, usize)> = all_arrows
                .iter()
                .zip(&heights)
                .map(|(a, &h)| (a.dst, a.src, h))
                .collect();
            let lo = spans.iter().map(|s| s.0).min().unwrap_or(min_ball);
            (lo.min(min_ball), spans)
        }
        DiagramStyle::Balls => (min_ball, Vec::new()),
    };

    let height = spans.iter().map(|s| s.2).max().unwrap_or(0);
    let labels: Vec<String> = (lo..=max_pos).map(|p| p.to_string()).collect();
    let cell = labels.iter().map(|l| l.len()).max().unwrap() + 1;
    let width = labels.len() * cell;
    let col = |p: i64| ((p - lo) as usize) * cell;

    let mut grid = vec![vec![' '; width]; height];
    for &(left, right, h) in &spans {
        let row = height - h;
        let (cl, cr) = (col(left), col(right));
        for x in cl + 1..cr {
            grid[row][x] = g.bar;
        }
        match style {
            DiagramStyle::Caps => {
                grid[row][cl] = g.corner_l;
                grid[row][cr] = g.corner_r;
                for r in row + 1..height {
                    grid[r][cl] = g.pipe;
                    grid[r][cr] = g.pipe;
                }
            }
            DiagramStyle::Arrows => {
                grid[row][cl] = g.head;
                grid[row][cr] = g.corner_r;
                for r in row + 1..height {
                    grid[r][cr] = g.pipe;
                }
            }
            DiagramStyle::Balls => unreachable!(),
        }
    }

    let mut ball_row = vec![' '; width];
    for p in lo..=max_pos {
        ball_row[col(p)] = if d.ball(p) { g.ball } else { g.empty };
    }

    let mut ruler = vec![' '; width];
    for (p, label) in (lo..=max_pos).zip(&labels) {
        for (k, ch) in label.chars().enumerate() {
            ruler[col(p) + k] = ch;
        }
    }

    let mut out = String::new();
    for row in grid {
        out.push_str(String::from_iter(row).trim_end());
        out.push('\n');
    }
    out.push_str(String::from_iter(ball_row).trim_end());
    out.push('\n');
    out.push_str(String::from_iter(ruler).trim_end());
    out.push('\n');
    out
}

/// Arrow arcs nest like caps; height is one more than the tallest arrow
/// strictly inside.
fn arrow_heights(all: &[Arrow]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..all.len()).collect();
    order.sort_by_key(|&i| all[i].src - all[i].dst);
    let mut heights = vec![1usize; all.len()];
    for &i in &order {
        for (j, other) in all.iter().enumerate() {
            if j != i && all[i].dst <= other.dst && other.src <= all[i].src {
                heights[i] = heights[i].max(heights[j] + 1);
            }
        }
    }
    heights
}

/// Options for the SVG emitter.
#[derive(Debug, Clone)]
pub struct SvgOptions {
    /// Horizontal pixels per integer position.
    pub pitch: f64,
    /// Vertical pixels per nesting level.
    pub unit: f64,
    pub style: DiagramStyle,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            pitch: 24.0,
            unit: 12.0,
            style: DiagramStyle::Caps,
        }
    }
}

/// Emits a standalone SVG document for the diagram.
pub fn render_svg(cd: &CapDiagram, opts: &SvgOptions) -> String {
    let d = cd.base();
    let mut body = String::new();
    let all_arrows = arrows(d);

    let (lo, hi) = match (d.min_position(), d.max_position()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => (0, 0),
    };
    let lo = match opts.style {
        DiagramStyle::Caps => cd.caps().iter().map(|c| c.left).min().unwrap_or(lo),
        DiagramStyle::Arrows => all_arrows.iter().map(|a| a.dst).min().unwrap_or(lo),
        DiagramStyle::Balls => lo,
    };

    let max_height = match opts.style {
        DiagramStyle::Caps => cd.heights().into_iter().max().unwrap_or(0),
        DiagramStyle::Arrows => arrow_heights(&all_arrows).into_iter().max().unwrap_or(0),
        DiagramStyle::Balls => 0,
    };
    let y0 = opts.unit * (max_height as f64 + 1.0);

    match opts.style {
        DiagramStyle::Caps => {
            for (c, h) in cd.caps().iter().zip(cd.heights()) {
                let x1 = opts.pitch * c.left as f64;
                let x2 = opts.pitch * c.right as f64;
                let ry = opts.unit * h as f64;
                let rx = (x2 - x1) / 2.0;
                body.push_str(&format!(
                    "  <path d=\"M {x1} {y0} A {rx} {ry} 0 0 1 {x2} {y0}\" fill=\"none\" stroke=\"black\"/>\n"
                ));
            }
        }
        DiagramStyle::Arrows => {
            let heights = arrow_heights(&all_arrows);
            let maximal = maximal_arrows(&all_arrows);
            for (a, h) in all_arrows.iter().zip(heights) {
                let x1 = opts.pitch * a.dst as f64;
                let x2 = opts.pitch * a.src as f64;
                let ry = opts.unit * h as f64;
                let rx = (x2 - x1) / 2.0;
                let width = if maximal.contains(a) { 2.0 } else { 1.0 };
                body.push_str(&format!(
                    "  <path d=\"M {x2} {y0} A {rx} {ry} 0 0 0 {x1} {y0}\" fill=\"none\" stroke=\"black\" stroke-width=\"{width}\"/>\n"
                ));
                // Arrowhead at the destination.
                body.push_str(&format!(
                    "  <path d=\"M {x1} {y0} l 5 -7 l 2 4 z\" fill=\"black\"/>\n"
                ));
            }
        }
        DiagramStyle::Balls => {}
    }

    for p in lo..=hi {
        let x = opts.pitch * p as f64;
        if d.ball(p) {
            body.push_str(&format!(
                "  <circle cx=\"{x}\" cy=\"{y0}\" r=\"5\" fill=\"black\"/>\n"
            ));
        } else {
            let y1 = y0 - 2.0;
            let y2 = y0 + 2.0;
            body.push_str(&format!(
                "  <line x1=\"{x}\" y1=\"{y1}\" x2=\"{x}\" y2=\"{y2}\" stroke=\"gray\"/>\n"
            ));
        }
        let ty = y0 + 16.0;
        body.push_str(&format!(
            "  <text x=\"{x}\" y=\"{ty}\" font-size=\"9\" text-anchor=\"middle\">{p}</text>\n"
        ));
    }

    let min_x = opts.pitch * lo as f64 - opts.pitch / 2.0;
    let width = opts.pitch * (hi - lo) as f64 + opts.pitch;
    let height = y0 + 24.0;
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{min_x} 0 {width} {height}\">\n{body}</svg>\n"
    )
}
