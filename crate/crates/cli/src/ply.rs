//! Minimal ASCII PLY painting: appends a uniform per-vertex RGB color to an
//! existing colorless mesh. Only the ASCII 1.0 format is supported; faces
//! and any non-vertex elements pass through untouched.

/// Colormap endpoints: light gray at score 0, dark red at score 1, so
/// higher influence paints darker.
pub const LOW_COLOR: [u8; 3] = [247, 247, 247];
pub const HIGH_COLOR: [u8; 3] = [103, 0, 13];

/// Linear interpolation between the colormap endpoints, rounded per channel.
pub fn score_color(score: f64) -> [u8; 3] {
    let s = score.clamp(0.0, 1.0);
    std::array::from_fn(|i| {
        let lo = f64::from(LOW_COLOR[i]);
        let hi = f64::from(HIGH_COLOR[i]);
        (lo + (hi - lo) * s).round() as u8
    })
}

/// Returns a copy of `text` with `red`, `green`, `blue` uchar properties
/// added to the vertex element and the color appended to every vertex line.
///
/// Errors (as human-readable strings) on anything that is not a colorless
/// ASCII PLY with a vertex element.
pub fn paint_ascii_ply(text: &str, rgb: [u8; 3]) -> Result<String, String> {
    let mut lines = text.lines();
    if lines.next() != Some("ply") {
        return Err("not a PLY file (missing 'ply' magic)".to_string());
    }

    let mut header = vec!["ply".to_string()];
    let mut vertex_count: Option<usize> = None;
    let mut in_vertex_element = false;
    let mut saw_ascii_format = false;

    for line in lines.by_ref() {
        if line.starts_with("property uchar red") {
            return Err("mesh already has color properties".to_string());
        }
        if line.starts_with("format ") {
            if line != "format ascii 1.0" {
                return Err(format!("unsupported PLY format '{line}'"));
            }
            saw_ascii_format = true;
        }
        if let Some(rest) = line.strip_prefix("element ") {
            // Close out the vertex element before a following element opens.
            if in_vertex_element {
                push_color_properties(&mut header);
                in_vertex_element = false;
            }
            let mut fields = rest.split_whitespace();
            let name = fields.next().unwrap_or("");
            if name == "vertex" {
                let count = fields
                    .next()
                    .and_then(|c| c.parse::<usize>().ok())
                    .ok_or_else(|| "vertex element without a count".to_string())?;
                vertex_count = Some(count);
                in_vertex_element = true;
            }
        }
        if line == "end_header" {
            if in_vertex_element {
                push_color_properties(&mut header);
            }
            header.push(line.to_string());
            let vertex_count =
                vertex_count.ok_or_else(|| "PLY header has no vertex element".to_string())?;
            if !saw_ascii_format {
                return Err("PLY header has no format line".to_string());
            }
            return paint_body(lines, header, vertex_count, rgb);
        }
        header.push(line.to_string());
    }
    Err("PLY header missing end_header".to_string())
}

fn push_color_properties(header: &mut Vec<String>) {
    for channel in ["red", "green", "blue"] {
        header.push(format!("property uchar {channel}"));
    }
}

fn paint_body<'t>(
    body: impl Iterator<Item = &'t str>,
    header: Vec<String>,
    vertex_count: usize,
    rgb: [u8; 3],
) -> Result<String, String> {
    let mut out = header.join("\n");
    out.push('\n');
    let mut painted = 0usize;
    for line in body {
        if painted < vertex_count {
            if line.trim().is_empty() {
                return Err("blank line inside vertex data".to_string());
            }
            out.push_str(&format!("{line} {} {} {}\n", rgb[0], rgb[1], rgb[2]));
            painted += 1;
        } else {
            out.push_str(line);
            out.push('\n');
        }
    }
    if painted < vertex_count {
        return Err(format!(
            "vertex element declares {vertex_count} vertices but only {painted} data lines follow"
        ));
    }
    Ok(out)
}
