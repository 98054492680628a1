use crate::field::Gf;

/// Writes `target` as a sum of elements of `basis`, viewing field elements
/// as vectors over GF(2). Returns the indices used, or `None` if `target`
/// is outside the span. `basis` may be dependent; at most 64 entries.
pub fn gf2_solve(basis: &[Gf], target: Gf) -> Option<Vec<usize>> {
    assert!(basis.len() <= 64);
    // echelon rows: (vector, combination mask), keyed by leading bit
    let mut rows: Vec<(u16, u64)> = Vec::new();
    for (i, &b) in basis.iter().enumerate() {
        let (mut v, mut mask) = (b.0, 1u64 << i);
        for &(r, rm) in &rows {
            if v ^ r < v {
                v ^= r;
                mask ^= rm;
            }
        }
        if v != 0 {
            rows.push((v, mask));
            rows.sort_by(|a, b| b.0.cmp(&a.0));
        }
    }
    let (mut v, mut mask) = (target.0, 0u64);
    for &(r, rm) in &rows {
        if v ^ r < v {
            v ^= r;
            mask ^= rm;
        }
    }
    (v == 0).then(|| (0..basis.len()).filter(|i| mask >> i & 1 == 1).collect())
}

/// Rank over GF(2) of field elements viewed as bit vectors.
pub fn gf2_rank(vs: &[Gf]) -> usize {
    let mut rows: Vec<u16> = Vec::new();
    for &v in vs {
        let mut v = v.0;
        for &r in &rows {
            v = v.min(v ^ r);
        }
        if v != 0 {
            rows.push(v);
            rows.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    rows.len()
}
