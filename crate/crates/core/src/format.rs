//! Plain-text system format: one `a mod n` per line, `#` comments and blank
//! lines ignored. Line order gives the class indices.

use crate::error::{CoverError, Result};
use crate::system::{CoverSystem, ResidueClass};

pub fn parse_system(text: &str) -> Result<CoverSystem> {
    let mut system = CoverSystem::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        system.push(parse_line(line).map_err(|message| CoverError::Parse { line: i + 1, message })?);
    }
    Ok(system)
}

fn parse_line(line: &str) -> std::result::Result<ResidueClass, String> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    let [a, kw, n] = parts[..] else {
        return Err(format!("expected `a mod n`, found `{line}`"));
    };
    if kw != "mod" {
        return Err(format!("expected `mod`, found `{kw}`"));
    }
    let a: i64 = a.parse().map_err(|_| format!("bad residue `{a}`"))?;
    let n: i128 = n.parse().map_err(|_| format!("bad modulus `{n}`"))?;
    if n <= 0 || n > u64::MAX as i128 {
        return Err(format!("invalid modulus {n}: moduli must be positive"));
    }
    ResidueClass::new(a, n as u64).map_err(|e| e.to_string())
}

pub fn write_system(system: &CoverSystem) -> String {
    system
        .classes()
        .iter()
        .map(|c| format!("{} mod {}\n", c.residue(), c.modulus()))
        .collect()
}
