//! Search results kept as line records under `$M12_CACHE_DIR`.

use std::path::PathBuf;

use m12_core::error::Result;
use m12_core::specsets::{self, SpecPoint, Triple};

pub const ENV: &str = "M12_CACHE_DIR";

fn header(t: Triple, s: &[u64], h: u128) -> String {
    let s: Vec<String> = s.iter().map(u64::to_string).collect();
    format!("# m12 search triple={t} S={} H={h}", s.join(","))
}

/// The cache file body, which is also what `search` prints.
pub fn render(t: Triple, s: &[u64], h: u128, points: &[SpecPoint]) -> String {
    let mut out = header(t, s, h);
    out.push('\n');
    for p in points {
        out.push_str(&p.to_line());
        out.push('\n');
    }
    out
}

fn parse(text: &str, t: Triple, s: &[u64], h: u128) -> Option<Vec<SpecPoint>> {
    let mut lines = text.lines();
    if lines.next()? != header(t, s, h) {
        return None;
    }
    let mut out = Vec::new();
    for line in lines {
        let p = SpecPoint::from_line(line).ok()?;
        if p.triple != t || p.s != s {
            return None;
        }
        out.push(p);
    }
    Some(out)
}

fn path(t: Triple, s: &[u64], h: u128) -> Option<PathBuf> {
    let dir = std::env::var_os(ENV)?;
    let s: Vec<String> = s.iter().map(u64::to_string).collect();
    let [a, b, c] = t.0;
    Some(PathBuf::from(dir).join(format!("search-{a}-{b}-{c}-S{}-H{h}.txt", s.join("."))))
}

/// Search results, from the cache when a valid file exists. A file that
/// does not parse is rebuilt; the second value is then a warning.
pub fn search_cached(t: Triple, s: &[u64], h: u128) -> Result<(Vec<SpecPoint>, Option<String>)> {
    let Some(file) = path(t, s, h) else {
        return Ok((specsets::search(t, s, h)?, None));
    };
    let mut warning = None;
    if let Ok(text) = std::fs::read_to_string(&file) {
        match parse(&text, t, s, h) {
            Some(points) => return Ok((points, None)),
            None => {
                warning = Some(format!(
                    "cache file {} is corrupt; rebuilding",
                    file.display()
                ))
            }
        }
    }
    let points = specsets::search(t, s, h)?;
    let written = std::fs::create_dir_all(file.parent().expect("cache file has a parent"))
        .and_then(|_| std::fs::write(&file, render(t, s, h, &points)));
    if let Err(e) = written {
        let msg = format!("cannot write cache file {}: {e}", file.display());
        warning = Some(warning.map_or(msg.clone(), |w| format!("{w}; {msg}")));
    }
    Ok((points, warning))
}
