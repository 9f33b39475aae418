//! Table renderings of search results.

use sl2chain::chainspec::SlotIndex;
use sl2chain::jacobi::ChainVerdict;
use sl2chain::rational;

pub struct Row {
    pub entries: Vec<i64>,
    pub modules: String,
    pub alpha: String,
    pub condition: String,
}

fn product(s: &[SlotIndex; 2]) -> String {
    format!("α{}·α{}", s[0], s[1])
}

pub fn row(v: &ChainVerdict) -> Row {
    let modules = v
        .layout
        .as_ref()
        .map(|l| l.degrees().iter().map(|d| format!("V{d}")).collect::<Vec<_>>().join(" ⊕ "))
        .unwrap_or_default();
    let alpha = match v.alpha_ratio() {
        Some(r) => rational::format(&r),
        None => "-".into(),
    };
    let mut parts = Vec::new();
    if let Some(c) = v.constraints() {
        for r in &c.ratios {
            parts.push(format!(
                "{} = {}·{}",
                product(&r.numerator),
                rational::format(&r.value),
                product(&r.denominator)
            ));
        }
        let forced: Vec<SlotIndex> = v
            .layout
            .as_ref()
            .map(|l| {
                sl2chain::chainspec::alpha_skeleton(l)
                    .iter()
                    .filter(|s| s.is_forced_zero())
                    .map(|s| s.index)
                    .collect()
            })
            .unwrap_or_default();
        for z in c.zeros.iter().filter(|z| !forced.contains(z)) {
            parts.push(format!("α{z} = 0"));
        }
        if !c.free.is_empty() {
            let free: Vec<String> = c.free.iter().map(|s| format!("α{s}")).collect();
            parts.push(format!("free {}", free.join(" ")));
        }
    }
    Row {
        entries: v.tuple.entries().to_vec(),
        modules,
        alpha,
        condition: if parts.is_empty() { "-".into() } else { parts.join("; ") },
    }
}

fn header(t: usize) -> Vec<String> {
    let mut h: Vec<String> = (1..=t).map(|i| format!("n{i}")).collect();
    h.extend(["modules", "alpha", "condition"].map(String::from));
    h
}

fn cells(r: &Row) -> Vec<String> {
    let mut c: Vec<String> = r.entries.iter().map(ToString::to_string).collect();
    c.extend([r.modules.clone(), r.alpha.clone(), r.condition.clone()]);
    c
}

pub fn markdown(t: usize, rows: &[Row]) -> String {
    let h = header(t);
    let mut out = format!("| {} |\n", h.join(" | "));
    out.push_str(&format!("|{}\n", "---|".repeat(h.len())));
    for r in rows {
        out.push_str(&format!("| {} |\n", cells(r).join(" | ")));
    }
    out
}

pub fn csv(t: usize, rows: &[Row]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header(t))?;
    for r in rows {
        w.write_record(cells(r))?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
