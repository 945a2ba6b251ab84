//! Raw dense polynomials over a prime field, coefficients as `u32` residues
//! stored low degree first. Only used to build extension fields.

pub(crate) fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a, p as u64 - 2, p)
}

pub(crate) fn pow_mod(a: u32, mut e: u64, p: u32) -> u32 {
    let p64 = p as u64;
    let mut base = a as u64 % p64;
    let mut acc = 1u64 % p64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p64;
        }
        base = base * base % p64;
        e >>= 1;
    }
    acc as u32
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p64;
        }
    }
    let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let len = a.len().max(b.len());
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out.push((x + p - y) % p);
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `m`.
pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p) as u64;
    let p64 = p as u64;
    while r.len() > dm {
        let top = r.len() - 1;
        let factor = r[top] as u64 * lead_inv % p64;
        let shift = top - dm;
        for (i, &c) in m.iter().enumerate() {
            let sub = factor * c as u64 % p64;
            r[shift + i] = ((r[shift + i] as u64 + p64 - sub) % p64) as u32;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Ben-Or style irreducibility test for a polynomial of degree >= 1.
pub(crate) fn is_irreducible(m: &[u32], p: u32) -> bool {
    let mut m = m.to_vec();
    trim(&mut m);
    if m.len() < 2 {
        return false;
    }
    let k = m.len() - 1;
    if k == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut power = x.clone();
    for _ in 1..=k / 2 {
        // power <- power^p mod m
        let mut acc = vec![1u32];
        let mut base = power.clone();
        let mut e = p as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, &m, p);
            }
            base = mulmod(&base, &base, &m, p);
            e >>= 1;
        }
        power = acc;
        let diff = sub(&power, &x, p);
        let g = gcd(&m, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_small_cases() {
        // t^2 + 1 over F_3 is irreducible, over F_5 it splits.
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[1, 0, 1], 5));
        // (t^2+1)^2 over F_3 has no linear factor but is reducible.
        let sq = mul(&[1, 0, 1], &[1, 0, 1], 3);
        assert!(!is_irreducible(&sq, 3));
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
    }
}
