//! Suffix arrays (SA-IS) and BWTs over integer strings.
//!
//! Inputs are strings over codes `>= 1`; construction appends the terminator
//! `0`, which is strictly smaller than every code.

/// Suffix array of `s·0`: 1-based starting positions in increasing suffix order,
/// so `sa[0] == s.len() + 1` (the terminator).
pub fn suffix_array<T: Copy + Into<u64>>(s: &[T]) -> Vec<usize> {
    let mut input: Vec<u32> = Vec::with_capacity(s.len() + 1);
    let mut max = 0u32;
    for &c in s {
        let c: u64 = c.into();
        debug_assert!(c >= 1 && c < u32::MAX as u64);
        let c = c as u32;
        max = max.max(c);
        input.push(c);
    }
    input.push(0);
    let mut sa = vec![0usize; input.len()];
    sais(&input, max as usize + 1, &mut sa);
    sa.iter_mut().for_each(|p| *p += 1);
    sa
}

/// The BWT of `s·0`. Exactly one entry is `0`.
pub fn bwt<T: Copy + Into<u64>>(s: &[T]) -> Vec<u32> {
    let sa = suffix_array(s);
    bwt_from_sa(s, &sa)
}

pub fn bwt_from_sa<T: Copy + Into<u64>>(s: &[T], sa: &[usize]) -> Vec<u32> {
    sa.iter()
        .map(|&p| if p == 1 { 0 } else { s[p - 2].into() as u32 })
        .collect()
}

/// Reconstructs `s` from its BWT by walking LF from the terminator row.
pub fn invert_bwt(bwt: &[u32]) -> Vec<u32> {
    let sigma = bwt.iter().copied().max().unwrap_or(0) as usize + 1;
    let mut c = vec![0usize; sigma + 1];
    for &x in bwt {
        c[x as usize + 1] += 1;
    }
    for i in 1..=sigma {
        c[i] += c[i - 1];
    }
    let mut seen = vec![0usize; sigma];
    let lf: Vec<usize> = bwt
        .iter()
        .map(|&x| {
            let r = c[x as usize] + seen[x as usize];
            seen[x as usize] += 1;
            r
        })
        .collect();
    // row 0 is the terminator suffix; its BWT symbol is the last text character
    let mut out = vec![0u32; bwt.len() - 1];
    let mut row = 0;
    for slot in out.iter_mut().rev() {
        *slot = bwt[row];
        row = lf[row];
    }
    out
}

const EMPTY: usize = usize::MAX;

// Induced sorting; `s` ends with a unique 0 and all symbols are < k.
fn sais(s: &[u32], k: usize, sa: &mut [usize]) {
    let n = s.len();
    match n {
        0 => return,
        1 => {
            sa[0] = 0;
            return;
        }
        _ => {}
    }
    // true = S type
    let mut stype = vec![false; n];
    stype[n - 1] = true;
    for i in (0..n - 1).rev() {
        stype[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && stype[i + 1]);
    }
    let is_lms = |i: usize| i > 0 && stype[i] && !stype[i - 1];

    let mut counts = vec![0usize; k];
    for &c in s {
        counts[c as usize] += 1;
    }
    let bucket_heads = |counts: &[usize]| {
        let mut b = vec![0usize; counts.len()];
        let mut acc = 0;
        for (i, &c) in counts.iter().enumerate() {
            b[i] = acc;
            acc += c;
        }
        b
    };
    let bucket_tails = |counts: &[usize]| {
        let mut b = vec![0usize; counts.len()];
        let mut acc = 0;
        for (i, &c) in counts.iter().enumerate() {
            acc += c;
            b[i] = acc;
        }
        b
    };

    let induce = |sa: &mut [usize], lms_order: &[usize]| {
        sa.iter_mut().for_each(|x| *x = EMPTY);
        let mut tails = bucket_tails(&counts);
        for &p in lms_order.iter().rev() {
            let c = s[p] as usize;
            tails[c] -= 1;
            sa[tails[c]] = p;
        }
        let mut heads = bucket_heads(&counts);
        for i in 0..n {
            let p = sa[i];
            if p != EMPTY && p > 0 && !stype[p - 1] {
                let c = s[p - 1] as usize;
                sa[heads[c]] = p - 1;
                heads[c] += 1;
            }
        }
        let mut tails = bucket_tails(&counts);
        for i in (0..n).rev() {
            let p = sa[i];
            if p != EMPTY && p > 0 && stype[p - 1] {
                let c = s[p - 1] as usize;
                tails[c] -= 1;
                sa[tails[c]] = p - 1;
            }
        }
    };

    let lms: Vec<usize> = (1..n).filter(|&i| is_lms(i)).collect();
    induce(sa, &lms);

    // name the sorted LMS substrings
    let sorted_lms: Vec<usize> = sa.iter().copied().filter(|&p| is_lms(p)).collect();
    let mut names = vec![EMPTY; n];
    let mut name = 0usize;
    let mut prev: Option<usize> = None;
    for &p in &sorted_lms {
        if let Some(q) = prev {
            if !lms_substrings_equal(s, &stype, p, q, &is_lms) {
                name += 1;
            }
        }
        names[p] = name;
        prev = Some(p);
    }
    let reduced: Vec<u32> = lms.iter().map(|&p| names[p] as u32).collect();
    let distinct = name + 1;

    let order: Vec<usize> = if distinct == reduced.len() {
        let mut order = vec![0; reduced.len()];
        for (i, &r) in reduced.iter().enumerate() {
            order[r as usize] = lms[i];
        }
        order
    } else {
        let mut sub_sa = vec![0usize; reduced.len()];
        sais(&reduced, distinct, &mut sub_sa);
        sub_sa.iter().map(|&i| lms[i]).collect()
    };
    induce(sa, &order);
}

fn lms_substrings_equal(
    s: &[u32],
    stype: &[bool],
    a: usize,
    b: usize,
    is_lms: &impl Fn(usize) -> bool,
) -> bool {
    let n = s.len();
    if a == n - 1 || b == n - 1 {
        return a == b;
    }
    let mut i = 0;
    loop {
        let (x, y) = (a + i, b + i);
        if s[x] != s[y] || stype[x] != stype[y] {
            return false;
        }
        if i > 0 && (is_lms(x) || is_lms(y)) {
            return is_lms(x) && is_lms(y);
        }
        i += 1;
    }
}
