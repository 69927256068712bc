//! Bare line plot of a sweep: axes plus one polyline per column.

use std::fmt::Write;

use misgame::formats::SweepRecord;

const W: f64 = 640.0;
const H: f64 = 400.0;
const PAD: f64 = 40.0;

type Column = (&'static str, &'static str, fn(&SweepRecord) -> Option<f64>);

const COLUMNS: [Column; 4] = [
    ("p_mis_theory", "#1f77b4", |r| r.p_mis_theory),
    ("p_inv_theory", "#d62728", |r| r.p_inv_theory),
    ("freq_mis", "#aec7e8", |r| r.freq_mis),
    ("freq_inv", "#ff9896", |r| r.freq_inv),
];

/// Probabilities on a fixed [0, 1] y axis against `d`.
pub fn sweep_plot(rows: &[SweepRecord]) -> String {
    let d_max = rows.iter().map(|r| r.d).fold(0.0, f64::max).max(1e-12);
    let sx = |d: f64| PAD + d / d_max * (W - 2.0 * PAD);
    let sy = |p: f64| H - PAD - p * (H - 2.0 * PAD);
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}">"#).unwrap();
    writeln!(
        s,
        r#"<path d="M{PAD},{PAD} V{} H{}" fill="none" stroke="black"/>"#,
        H - PAD,
        W - PAD
    )
    .unwrap();
    writeln!(s, r#"<text x="{}" y="{}" font-size="12">d = {d_max}</text>"#, W - PAD - 60.0, H - PAD + 20.0).unwrap();
    writeln!(s, r#"<text x="4" y="{}" font-size="12">1</text>"#, PAD + 4.0).unwrap();
    for (k, (name, color, get)) in COLUMNS.iter().enumerate() {
        let pts: Vec<String> = rows
            .iter()
            .filter_map(|r| get(r).map(|p| format!("{:.2},{:.2}", sx(r.d), sy(p))))
            .collect();
        if pts.is_empty() {
            continue;
        }
        writeln!(s, r#"<polyline points="{}" fill="none" stroke="{color}"/>"#, pts.join(" ")).unwrap();
        writeln!(s, r#"<text x="{}" y="{}" font-size="12" fill="{color}">{name}</text>"#, W - 150.0, PAD + 15.0 * k as f64)
            .unwrap();
    }
    s.push_str("</svg>\n");
    s
}
