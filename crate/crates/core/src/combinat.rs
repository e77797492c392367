//! Small enumeration helpers.

/// Partitions of `n` into parts of size at most `max_part`, each given as a
/// multiplicity vector `m` with `m[i]` copies of part `i + 1`.
pub fn partitions(n: u32, max_part: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; max_part as usize];
    fn rec(rest: u32, part: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if part == 0 {
            return;
        }
        for k in (0..=rest / part).rev() {
            cur[part as usize - 1] = k;
            rec(rest - k * part, part - 1, cur, out);
        }
        cur[part as usize - 1] = 0;
    }
    if max_part == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, max_part, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(0, 8).len(), 1);
        assert_eq!(partitions(5, 8).len(), 7);
        assert_eq!(partitions(16, 8).len(), 186);
        assert_eq!(partitions(10, 3).len(), 14);
    }
}
