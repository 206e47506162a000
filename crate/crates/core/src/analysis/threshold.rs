use astro_float::{BigFloat, Consts, RoundingMode, Sign, Word, WORD_BIT_SIZE};
use num_bigint::BigUint;
use num_traits::{One, Zero};

/// The constant `802 = 800 + 2` in `802 + 151 log M / K - log K`.
pub const THRESHOLD_CONSTANT: u64 = 802;
const SECOND_TERM: u64 = 151;
const RM: RoundingMode = RoundingMode::ToEven;
/// Extra bits beyond the size of `K`, so that `log K` resolves steps of 1.
const GUARD_BITS: usize = 256;

fn to_bigfloat(k: &BigUint, p: usize) -> BigFloat {
    if k.is_zero() {
        return BigFloat::from_word(0, p);
    }
    let bytes = k.to_bytes_le();
    let words: Vec<Word> = bytes
        .chunks(WORD_BIT_SIZE / 8)
        .map(|c| c.iter().rev().fold(0, |w, &b| (w << 8) | b as Word))
        .collect();
    let e = (WORD_BIT_SIZE * words.len()) as i32;
    BigFloat::from_words(&words, Sign::Pos, e).round(p, RM)
}

/// `floor(x)` for finite `x >= 0`.
fn floor_to_biguint(x: &BigFloat) -> BigUint {
    let Some((words, _, _, e, _)) = x.as_raw_parts() else {
        return BigUint::zero();
    };
    let bytes: Vec<u8> = words.iter().flat_map(|w| w.to_le_bytes()).collect();
    let m = BigUint::from_bytes_le(&bytes);
    let shift = e as i64 - (WORD_BIT_SIZE * words.len()) as i64;
    if shift >= 0 {
        m << shift as usize
    } else {
        m >> (-shift) as usize
    }
}

fn precision_for(k_bits: u64) -> usize {
    let p = k_bits as usize + GUARD_BITS;
    p.div_ceil(64) * 64
}

/// `802 + 151 L / K - log K`, with `L = log M`.
fn expression(k: &BigUint, log_m: f64, p: usize, cc: &mut Consts) -> BigFloat {
    let kf = to_bigfloat(k, p);
    let l = BigFloat::from_f64(log_m, p);
    let middle = BigFloat::from_u64(SECOND_TERM, p).mul(&l, p, RM).div(&kf, p, RM);
    BigFloat::from_u64(THRESHOLD_CONSTANT, p)
        .add(&middle, p, RM)
        .sub(&kf.ln(p, RM, cc), p, RM)
}

/// Whether `802 + 151 log M / K - log K < 0`, evaluated in big-float
/// arithmetic so that `K` near `e^802` is resolved to the integer.
pub fn threshold_predicate(k: &BigUint, log_m: f64) -> bool {
    if k.is_zero() {
        return false;
    }
    let mut cc = Consts::new().expect("constants cache");
    let p = precision_for(k.bits());
    expression(k, log_m, p, &mut cc).is_negative()
}

/// Smallest integer `K <= M` with `802 + 151 log M / K - log K < 0`, for
/// `M` given through `log M`. The expression decreases in `K`, so `K` is
/// the crossing point; there is none when `log M <= 802`.
pub fn threshold_k(log_m: f64) -> Option<BigUint> {
    if !log_m.is_finite() || log_m <= THRESHOLD_CONSTANT as f64 {
        return None;
    }
    let mut cc = Consts::new().expect("constants cache");
    // K solves K = exp(802 + 151 L / K); the map contracts by 151 L / K,
    // which is below e^-80 for any finite f64 L.
    let mut p = precision_for(1200);
    let c = BigFloat::from_u64(THRESHOLD_CONSTANT, p);
    let scaled = BigFloat::from_u64(SECOND_TERM, p).mul(&BigFloat::from_f64(log_m, p), p, RM);
    let mut x = c.exp(p, RM, &mut cc);
    for _ in 0..8 {
        p = p.max(precision_for(floor_to_biguint(&x).bits()));
        let next = c.add(&scaled.div(&x, p, RM), p, RM).exp(p, RM, &mut cc);
        if next == x {
            break;
        }
        x = next;
    }

    let mut k = floor_to_biguint(&x) + 1u32;
    let holds = |k: &BigUint, cc: &mut Consts| {
        expression(k, log_m, precision_for(k.bits()), cc).is_negative()
    };
    while k > BigUint::one() && holds(&(&k - 1u32), &mut cc) {
        k -= 1u32;
    }
    while !holds(&k, &mut cc) {
        k += 1u32;
    }

    let p = precision_for(k.bits());
    let ln_k = to_bigfloat(&k, p).ln(p, RM, &mut cc);
    if ln_k > BigFloat::from_f64(log_m, p) {
        return None;
    }
    Some(k)
}

/// `floor(e^x)` for `0 <= x < 2^20`, as an exact integer.
pub fn floor_exp(x: f64) -> BigUint {
    let mut cc = Consts::new().expect("constants cache");
    let p = precision_for((x.max(0.0) * std::f64::consts::LOG2_E) as u64 + 2);
    floor_to_biguint(&BigFloat::from_f64(x, p).exp(p, RM, &mut cc))
}

/// [`threshold_k`] for `M` given directly; `None` for `M < 1`.
pub fn threshold_k_of(m: f64) -> Option<BigUint> {
    if !(m >= 1.0) {
        return None;
    }
    threshold_k(m.ln())
}
