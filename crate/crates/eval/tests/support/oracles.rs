//! Brute-force reference implementations of the ranking measures. These
//! share no code with the library.

/// Max precision over every rank whose recall reaches `level / 10`.
pub fn interpolated_oracle(flags: &[bool], total_relevant: usize) -> [f64; 11] {
    let mut out = [0.0; 11];
    for (level, slot) in out.iter_mut().enumerate() {
        let mut best = 0.0f64;
        for cut in 1..=flags.len() {
            let hits = flags[..cut].iter().filter(|&&r| r).count();
            if hits * 10 >= level * total_relevant {
                best = best.max(hits as f64 / cut as f64);
            }
        }
        *slot = best;
    }
    out
}

/// One minus the area between the ideal and actual recall step curves,
/// scaled by the largest possible area.
pub fn normalized_recall_oracle(flags: &[bool], universe: usize) -> f64 {
    let r = flags.iter().filter(|&&x| x).count();
    let mut area = 0.0;
    let mut hits = 0usize;
    for i in 1..=universe {
        if flags.get(i - 1).copied().unwrap_or(false) {
            hits += 1;
        }
        let ideal = i.min(r) as f64 / r as f64;
        let actual = hits as f64 / r as f64;
        area += ideal - actual;
    }
    1.0 - area / (universe - r) as f64
}

/// Every relevance pattern of length 1..=`max_len` with 1..=`max_rel`
/// relevant entries.
pub fn all_rankings(max_len: usize, max_rel: u32) -> Vec<Vec<bool>> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for mask in 0u32..(1 << len) {
            let ones = mask.count_ones();
            if (1..=max_rel).contains(&ones) {
                out.push((0..len).map(|i| mask & (1 << i) != 0).collect());
            }
        }
    }
    out
}
