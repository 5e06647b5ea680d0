//! Grid runs over `(p, l, n)`.

use rayon::prelude::*;
use serde_json::json;

use super::{run_verification, Check, Record, Report, ScanConfig, VerificationConfig};
use crate::arith::is_prime;
use crate::error::Error;

struct Case {
    config: VerificationConfig,
}

/// All-ones monodromy vector of length `n + 1`, with the last entry raised
/// to 2 when the sum would vanish mod `l`.
pub(crate) fn scan_kvec(n: usize, l: u64) -> Vec<u64> {
    let mut k = vec![1; n + 1];
    if (n as u64 + 1) % l == 0 {
        k[n] = 2;
    }
    k
}

fn cases(sc: &ScanConfig) -> Vec<Case> {
    let primes: Vec<u64> = (3..=sc.p_max.max(sc.l_max)).filter(|&x| is_prime(x)).collect();
    let mut out = Vec::new();
    for &p in primes.iter().filter(|&&p| p <= sc.p_max) {
        for &l in primes.iter().filter(|&&l| l <= sc.l_max && l != p) {
            for n in 2..=sc.n_max.max(2) {
                // pair-level checks once per pair
                let checks: Vec<Check> = sc
                    .checks
                    .iter()
                    .copied()
                    .filter(|&c| n == 2 || c != Check::Splitting)
                    .collect();
                if checks.is_empty() {
                    continue;
                }
                out.push(Case {
                    config: VerificationConfig {
                        p,
                        l,
                        kvec: scan_kvec(n, l),
                        checks,
                        seed: sc.seed,
                        order_cap: sc.order_cap.clone(),
                        timings: sc.timings,
                        ..VerificationConfig::default()
                    },
                });
            }
        }
    }
    out
}

/// Runs every case of the grid on the rayon pool. Records come back in case
/// order; an error in one case becomes that case's record.
pub fn scan(sc: &ScanConfig) -> Report {
    let records: Vec<Vec<Record>> = cases(sc)
        .par_iter()
        .map(|case| match run_verification(&case.config) {
            Ok(r) => r.records,
            Err(e) => vec![case_error(&case.config, &e)],
        })
        .collect();
    Report {
        records: records.into_iter().flatten().collect(),
    }
}

fn case_error(c: &VerificationConfig, e: &Error) -> Record {
    Record::error(
        "case",
        json!({ "p": c.p, "l": c.l, "k": c.kvec, "seed": c.seed.to_string() }),
        e,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Status;

    #[test]
    fn kvec_avoids_zero_sum() {
        assert_eq!(scan_kvec(2, 3), vec![1, 1, 2]);
        assert_eq!(scan_kvec(3, 3), vec![1, 1, 1, 1]);
        assert_eq!(scan_kvec(4, 5), vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn splitting_scan_one_record_per_pair() {
        let sc = ScanConfig {
            checks: vec![Check::Splitting],
            timings: false,
            ..ScanConfig::default()
        };
        let r = scan(&sc);
        // odd primes below 20: 3 5 7 11 13 17 19
        assert_eq!(r.records.len(), 7 * 6);
        assert!(r.records.iter().all(|x| x.matched));
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn small_image_scan_contains_5_3() {
        let sc = ScanConfig {
            p_max: 5,
            l_max: 3,
            n_max: 3,
            checks: vec![Check::Image],
            timings: false,
            ..ScanConfig::default()
        };
        let r = scan(&sc);
        let hit = r
            .records
            .iter()
            .find(|x| x.parameters["p"] == json!(5) && x.parameters["k"] == json!([1, 1, 1, 1]))
            .expect("record present");
        assert!(hit.matched, "{hit:?}");
        assert!(r.records.iter().all(|x| x.status() != Status::Mismatch));
    }
}
