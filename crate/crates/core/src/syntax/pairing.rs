//! The Cantor pairing bijection ℕ² ↔ ℕ.

/// `(n+m)(n+m+1)/2 + m`.
pub fn cantor_pair(n: u64, m: u64) -> u64 {
    let s = n + m;
    s * (s + 1) / 2 + m
}

/// Inverse of [`cantor_pair`].
pub fn cantor_unpair(code: u64) -> (u64, u64) {
    // Largest diagonal s with s(s+1)/2 <= code. The float estimate can be off
    // by one in either direction, so correct it.
    let mut s = (((8.0 * code as f64 + 1.0).sqrt() - 1.0) / 2.0) as u64;
    while s * (s + 1) / 2 > code {
        s -= 1;
    }
    while (s + 1) * (s + 2) / 2 <= code {
        s += 1;
    }
    let m = code - s * (s + 1) / 2;
    (s - m, m)
}
