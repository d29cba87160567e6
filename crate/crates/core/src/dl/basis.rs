//! Enumeration of the canonical monomial basis per (degree, component).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

use super::{AdmissibleWord, DLGenerator, DLMonomial};

/// Default truncation degree. The boundary systems behind the spectral
/// sequence checks need degree 5; 6 leaves headroom without blowing up the
/// basis sizes.
pub const DEFAULT_CAP: u32 = 6;

/// Memoized bases keyed by (degree, component); writes are idempotent.
type BasisCache = Mutex<HashMap<(u32, i64), Arc<Vec<DLMonomial>>>>;

fn cache() -> &'static BasisCache {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All admissible words with entry sum <= budget, built by prepending.
fn admissible_words_up_to(budget: u32) -> Vec<Vec<u32>> {
    fn grow(word: &mut Vec<u32>, sum: u32, budget: u32, out: &mut Vec<Vec<u32>>) {
        out.push(word.clone());
        let cap_next = (2 * word[0]).min(budget - sum);
        for s0 in 1..=cap_next {
            word.insert(0, s0);
            grow(word, sum + s0, budget, out);
            word.remove(0);
        }
    }
    let mut out = Vec::new();
    for last in 1..=budget {
        let mut word = vec![last];
        grow(&mut word, last, budget, &mut out);
    }
    out
}

/// All polynomial generators of degree <= d, in the canonical order.
pub fn generators_up_to(d: u32) -> Vec<DLGenerator> {
    let mut out = Vec::new();
    let mut j = 0;
    while 2 * j <= d {
        if j >= 1 {
            out.push(DLGenerator::new(AdmissibleWord::empty(), j).expect("bare a_j"));
        }
        if d > 2 * j {
            for entries in admissible_words_up_to(d - 2 * j) {
                if let Ok(g) = DLGenerator::from_parts(&entries, j) {
                    out.push(g);
                }
            }
        }
        j += 1;
    }
    out.sort();
    out
}

/// All canonical monomials of the given degree, translated into the given
/// component; ascending in the monomial order. Degrees above `cap` are
/// rejected.
pub fn enumerate_basis(degree: u32, component: i64, cap: u32) -> Result<Vec<DLMonomial>> {
    if degree > cap {
        return Err(Error::DegreeAboveCap { degree, cap });
    }
    if let Some(hit) = cache().lock().unwrap().get(&(degree, component)) {
        return Ok(hit.as_ref().clone());
    }

    let gens = generators_up_to(degree);
    let mut out = Vec::new();
    let mut stack: Vec<DLGenerator> = Vec::new();
    multisets(&gens, 0, degree, &mut stack, &mut |factors| {
        let raw = DLMonomial::from_factors(factors.to_vec(), 0);
        out.push(raw.translated(component - raw.component()));
    });
    out.sort();

    cache()
        .lock()
        .unwrap()
        .insert((degree, component), Arc::new(out.clone()));
    Ok(out)
}

fn multisets(
    gens: &[DLGenerator],
    idx: usize,
    remaining: u32,
    stack: &mut Vec<DLGenerator>,
    emit: &mut impl FnMut(&[DLGenerator]),
) {
    if remaining == 0 {
        emit(stack);
        return;
    }
    if idx == gens.len() {
        return;
    }
    // Without gens[idx].
    multisets(gens, idx + 1, remaining, stack, emit);
    // With one more copy of gens[idx].
    let d = gens[idx].degree();
    if d <= remaining {
        stack.push(gens[idx].clone());
        multisets(gens, idx, remaining - d, stack, emit);
        stack.pop();
    }
}
