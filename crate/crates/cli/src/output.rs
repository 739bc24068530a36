use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use korovkin_core::report::{Cell, ReportTable};
use serde_json::Value;

/// Twelve significant digits, shortest form, `.` as the decimal point.
pub fn format_real(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let e = v.abs().log10().floor() as i32;
    if (-5..12).contains(&e) {
        trim_fraction(format!("{:.*}", (11 - e).max(0) as usize, v))
    } else {
        let s = format!("{:.11e}", v);
        let (mantissa, exp) = s.split_once('e').unwrap();
        format!("{}e{}", trim_fraction(mantissa.to_string()), exp)
    }
}

fn trim_fraction(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_string()
}

pub fn format_cell(c: &Cell) -> String {
    match c {
        Cell::Int(i) => i.to_string(),
        Cell::Real(r) => format_real(*r),
        Cell::Text(t) => t.clone(),
    }
}

/// Header `name` or `name [unit]`.
pub fn header(table: &ReportTable) -> Vec<String> {
    table
        .columns()
        .iter()
        .map(|c| {
            if c.unit.is_empty() {
                c.header.clone()
            } else {
                format!("{} [{}]", c.header, c.unit)
            }
        })
        .collect()
}

pub fn csv_string(table: &ReportTable) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header(table))?;
    for row in table.rows() {
        w.write_record(row.iter().map(format_cell))?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))?)?)
}

pub fn write_csv(table: &ReportTable, dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(format!("{}.csv", table.name()));
    fs::write(&path, csv_string(table)?).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

/// Line plot of every positive numeric column against the first column,
/// on a log-scale y axis.
pub fn svg_string(table: &ReportTable) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const PAD: f64 = 60.0;
    const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

    let xs: Vec<f64> = table
        .rows()
        .iter()
        .map(|r| r.first().and_then(Cell::as_f64).unwrap_or(f64::NAN))
        .collect();
    let mut series = Vec::new();
    for (ci, col) in table.columns().iter().enumerate().skip(1) {
        let pts: Vec<(f64, f64)> = table
            .rows()
            .iter()
            .zip(&xs)
            .filter_map(|(r, &x)| {
                let y = r.get(ci)?.as_f64()?;
                (x.is_finite() && y > 0.0 && y.is_finite()).then_some((x, y.log10()))
            })
            .collect();
        if !pts.is_empty() {
            series.push((col.header.clone(), pts));
        }
    }
    let all = series.iter().flat_map(|s| s.1.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    let (y0, y1) = (y0.floor(), y1.ceil().max(y0.floor() + 1.0));
    let x1 = if x1 > x0 { x1 } else { x0 + 1.0 };
    let sx = |x: f64| PAD + (x - x0) / (x1 - x0) * (W - 2.0 * PAD);
    let sy = |y: f64| H - PAD - (y - y0) / (y1 - y0) * (H - 2.0 * PAD);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<text x="{}" y="20" text-anchor="middle">{}</text>"#, W / 2.0, table.name());
    let _ = writeln!(
        s,
        r#"<path d="M{p} {t} V{b} H{r}" fill="none" stroke="black"/>"#,
        p = PAD,
        t = PAD,
        b = H - PAD,
        r = W - PAD
    );
    for d in (y0 as i32)..=(y1 as i32) {
        let y = sy(d as f64);
        let _ = writeln!(
            s,
            r##"<line x1="{a}" y1="{y:.1}" x2="{b}" y2="{y:.1}" stroke="#ddd"/><text x="{c}" y="{ty:.1}" text-anchor="end">1e{d}</text>"##,
            a = PAD,
            b = W - PAD,
            c = PAD - 4.0,
            ty = y + 4.0
        );
    }
    for (i, x) in [x0, 0.5 * (x0 + x1), x1].iter().enumerate() {
        let anchor = ["start", "middle", "end"][i];
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{}" text-anchor="{anchor}">{}</text>"#,
            sx(*x),
            H - PAD + 16.0,
            format_real((x * 1e6).round() / 1e6)
        );
    }
    for (i, (name, pts)) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let path: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            path.join(" ")
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" fill="{color}">{name}</text>"#,
            W - PAD + 4.0,
            PAD + 14.0 * i as f64
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn write_svg(table: &ReportTable, dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(format!("{}.svg", table.name()));
    fs::write(&path, svg_string(table)).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

/// Writes one JSON object per line.
pub fn write_manifest(entries: &[Value], path: &Path) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut f = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    for e in entries {
        writeln!(f, "{}", serde_json::to_string(e)?)?;
    }
    Ok(())
}
