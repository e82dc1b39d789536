//! ASCII drawing of a diagram, input row at the top.
//!
//! Vertical strands are `|`, an arc joining two input points hangs down as
//! `\_/`, an arc joining two output points rises as `/‾\`, decorations are
//! `•label` beside the strand they sit on, and strands crossing each other
//! meet in a `×`. Loops and the scalar are listed underneath.

use super::{DecoratedDiagram, Side, Strand};

struct Canvas {
    rows: Vec<Vec<char>>,
}

impl Canvas {
    fn new(height: usize, width: usize) -> Self {
        Canvas {
            rows: vec![vec![' '; width]; height],
        }
    }

    fn line(&mut self, r: usize, c: usize, ch: char) {
        let cell = &mut self.rows[r][c];
        *cell = match *cell {
            ' ' => ch,
            '|' | '\\' | '/' | '_' | '‾' | '×' if ch != *cell => '×',
            _ => ch,
        };
    }

    fn text(&mut self, r: usize, c: usize, s: &str) {
        for (k, ch) in s.chars().enumerate() {
            if let Some(cell) = self.rows[r].get_mut(c + k) {
                *cell = ch;
            }
        }
    }

    fn finish(self) -> String {
        self.rows
            .into_iter()
            .map(|row| row.into_iter().collect::<String>().trim_end().to_string())
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn labels(s: &Strand) -> Vec<String> {
    s.decorations().iter().map(|x| format!("•{x}")).collect()
}

pub fn render(diag: &DecoratedDiagram) -> String {
    let mut out = if diag.top() + diag.bottom() == 0 {
        "(closed)".to_string()
    } else {
        draw(diag)
    };
    for cycle in diag.loops() {
        let body: Vec<String> = cycle.iter().map(|x| format!("•{x}")).collect();
        out.push_str(&format!("\nloop: tr({})", body.join(" ")));
    }
    out.push_str(&format!("\nscalar: {}", diag.scalar()));
    out
}

fn draw(diag: &DecoratedDiagram) -> String {
    let widest_label = diag
        .strands()
        .iter()
        .flat_map(labels)
        .map(|l| l.chars().count())
        .max()
        .unwrap_or(0);
    let mut spacing = (widest_label + 2).max(4);
    if spacing % 2 == 1 {
        spacing += 1;
    }
    let columns = diag.top().max(diag.bottom()).max(1);
    let x = |k: usize| 1 + k * spacing;
    let width = x(columns - 1) + spacing + 2;

    let top_arcs: Vec<&Strand> = {
        let mut v: Vec<&Strand> = diag.strands().iter().filter(|s| s.end().side == Side::Top).collect();
        v.sort_by_key(|s| s.end().index - s.start().index);
        v
    };
    let bottom_arcs: Vec<&Strand> = {
        let mut v: Vec<&Strand> = diag
            .strands()
            .iter()
            .filter(|s| s.start().side == Side::Bottom)
            .collect();
        v.sort_by_key(|s| std::cmp::Reverse(s.end().index - s.start().index));
        v
    };
    let through: Vec<&Strand> = diag.strands().iter().filter(|s| s.is_through()).collect();

    let top_decor = top_arcs
        .iter()
        .chain(&through)
        .map(|s| s.decorations().len())
        .max()
        .unwrap_or(0);
    let bottom_decor = bottom_arcs.iter().map(|s| s.decorations().len()).max().unwrap_or(0);
    let shift = through
        .iter()
        .map(|s| x(s.start().index).abs_diff(x(s.end().index)))
        .max()
        .unwrap_or(0);
    // shifts are multiples of an even spacing, so swapping strands share the middle row
    let route = shift + 1;

    // row layout, top to bottom
    let r_top_label = 0;
    let r_top_decor = 1;
    let r_top_arcs = r_top_decor + top_decor.max(1);
    let r_route = r_top_arcs + top_arcs.len();
    let r_bottom_arcs = r_route + route;
    let r_bottom_decor = r_bottom_arcs + bottom_arcs.len();
    let r_bottom_label = r_bottom_decor + bottom_decor.max(1);
    let mut canvas = Canvas::new(r_bottom_label + 1, width);

    for k in 0..diag.top() {
        canvas.text(r_top_label, x(k), &format!("T{k}"));
    }
    for k in 0..diag.bottom() {
        canvas.text(r_bottom_label, x(k), &format!("B{k}"));
    }

    // top region: every top point runs down until its arc row or the routing band
    for (level, s) in top_arcs.iter().enumerate() {
        let row = r_top_arcs + level;
        let (a, b) = (x(s.start().index), x(s.end().index));
        for r in r_top_decor..row {
            canvas.line(r, a, '|');
            canvas.line(r, b, '|');
        }
        canvas.line(row, a, '\\');
        for c in a + 1..b {
            canvas.line(row, c, '_');
        }
        canvas.line(row, b, '/');
        for (k, l) in labels(s).iter().enumerate() {
            canvas.text(r_top_decor + k, a + 1, l);
        }
    }
    for s in &through {
        let (a, b) = (x(s.start().index), x(s.end().index));
        for r in r_top_decor..r_route {
            canvas.line(r, a, '|');
        }
        for (k, l) in labels(s).iter().enumerate() {
            canvas.text(r_top_decor + k, a + 1, l);
        }
        // straight line from (r_route, a) to (r_bottom_arcs, b)
        for step in 0..route {
            let r = r_route + step;
            let t = if route == 1 {
                0.0
            } else {
                step as f64 / (route - 1) as f64
            };
            let c = (a as f64 + (b as f64 - a as f64) * t).round() as usize;
            let ch = match a.cmp(&b) {
                std::cmp::Ordering::Equal => '|',
                std::cmp::Ordering::Less => '\\',
                std::cmp::Ordering::Greater => '/',
            };
            canvas.line(r, c, ch);
        }
        for r in r_bottom_arcs..r_bottom_label {
            canvas.line(r, b, '|');
        }
    }
    for (level, s) in bottom_arcs.iter().enumerate() {
        let row = r_bottom_arcs + level;
        let (a, b) = (x(s.start().index), x(s.end().index));
        canvas.line(row, a, '/');
        for c in a + 1..b {
            canvas.line(row, c, '‾');
        }
        canvas.line(row, b, '\\');
        for r in row + 1..r_bottom_label {
            canvas.line(r, a, '|');
            canvas.line(r, b, '|');
        }
        for (k, l) in labels(s).iter().enumerate() {
            canvas.text(r_bottom_decor + k, a + 1, l);
        }
    }

    canvas.finish()
}
