pub mod blocks;
pub mod census;
pub mod coverage;
pub mod duality;
pub mod orbital;
pub mod perm_action;
pub mod psl;
pub mod remark_b;
pub mod search;

/// Renders a generator path as a compact word such as `ab^2a`.
pub fn path_word(path: &[u8], names: &[char]) -> String {
    let word: Vec<(usize, i64)> = path.iter().map(|&g| (g as usize, 1)).collect();
    let mut merged: Vec<(usize, i64)> = Vec::new();
    for (g, e) in word {
        match merged.last_mut() {
            Some(last) if last.0 == g => last.1 += e,
            _ => merged.push((g, e)),
        }
    }
    crate::matrix::GroupWord(merged).render(names)
}
