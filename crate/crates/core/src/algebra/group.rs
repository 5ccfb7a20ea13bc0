//! Multiplication tables of small finite groups.

use super::AlgebraError;

/// Checks closure, associativity, identity and inverses; returns the
/// index of the identity.
pub fn validate_group(table: &[Vec<usize>]) -> Result<usize, AlgebraError> {
    let n = table.len();
    if n == 0 {
        return Err(AlgebraError::NotAGroup("empty table".into()));
    }
    for (g, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(AlgebraError::NotAGroup(format!("row {g} has length {}", row.len())));
        }
        if let Some(&bad) = row.iter().find(|&&h| h >= n) {
            return Err(AlgebraError::NotAGroup(format!("entry {bad} out of range")));
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
        .ok_or_else(|| AlgebraError::NotAGroup("no identity".into()))?;
    #[allow(clippy::needless_range_loop)]
    for g in 0..n {
        if !(0..n).any(|h| table[g][h] == identity && table[h][g] == identity) {
            return Err(AlgebraError::NotAGroup(format!("element {g} has no inverse")));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(AlgebraError::NotAGroup(format!("not associative at ({a}, {b}, {c})")));
                }
            }
        }
    }
    Ok(identity)
}

pub fn cyclic(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

/// `Z/2 x Z/2` with elements `e, a, b, ab`.
pub fn klein_four() -> Vec<Vec<usize>> {
    (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect()
}

/// Elementary abelian group `(Z/p)^r`, elements in base-`p` digits.
pub fn elementary_abelian(p: usize, rank: usize) -> Vec<Vec<usize>> {
    let n = p.pow(rank as u32);
    let add = |mut a: usize, mut b: usize| {
        let (mut out, mut place) = (0, 1);
        for _ in 0..rank {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    };
    (0..n).map(|a| (0..n).map(|b| add(a, b)).collect()).collect()
}

/// Dihedral group of order `2n`: `r^i` is `i`, `s r^i` is `n + i`.
pub fn dihedral(n: usize) -> Vec<Vec<usize>> {
    let decode = |x: usize| (x / n, x % n);
    let encode = |s: usize, r: usize| s * n + r;
    (0..2 * n)
        .map(|a| {
            (0..2 * n)
                .map(|b| {
                    let (s1, r1) = decode(a);
                    let (s2, r2) = decode(b);
                    // s^s1 r^r1 s^s2 r^r2, with r s = s r^{-1}
                    let r = if s2 == 0 { r1 + r2 } else { n - r1 % n + r2 };
                    encode((s1 + s2) % 2, r % n)
                })
                .collect()
        })
        .collect()
}

/// Symmetric group on `n` letters with labels in one-line notation.
/// Multiplication is composition `(gh)(i) = g(h(i))`.
pub fn symmetric(n: usize) -> (Vec<Vec<usize>>, Vec<String>) {
    let perms = permutations(n);
    let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed");
    let table = perms
        .iter()
        .map(|g| {
            perms
                .iter()
                .map(|h| index(&h.iter().map(|&i| g[i]).collect()))
                .collect()
        })
        .collect();
    let labels = perms
        .iter()
        .map(|p| p.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(""))
        .collect();
    (table, labels)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}
