#include "plie/series.hpp"

namespace plie {

namespace {

long vp_long(std::uint64_t p, long k) {
    long v = 0;
    while (k % static_cast<long>(p) == 0) {
        k /= static_cast<long>(p);
        ++v;
    }
    return v;
}

long unit_part(std::uint64_t p, long k) {
    while (k % static_cast<long>(p) == 0) k /= static_cast<long>(p);
    return k;
}

// Separate matrix product for the oracle path, independent of the chart
// group's implementation.
std::vector<ZpInt> oracle_mat_mul(const std::vector<ZpInt>& a, const std::vector<ZpInt>& b, int m) {
    const std::uint64_t p = a.front().prime();
    const int prec = std::min(a.front().precision(), b.front().precision());
    std::vector<ZpInt> out(static_cast<std::size_t>(m * m), ZpInt::zero(p, prec));
    for (int i = 0; i < m; ++i) {
        for (int k = 0; k < m; ++k) {
            for (int j = 0; j < m; ++j) {
                out[static_cast<std::size_t>(i * m + j)] =
                    zp_add(out[static_cast<std::size_t>(i * m + j)],
                           zp_mul(a[static_cast<std::size_t>(i * m + k)],
                                  b[static_cast<std::size_t>(k * m + j)]));
            }
        }
    }
    return out;
}

}  // namespace

ZpInt log_series(const ZpInt& x, int target_prec) {
    const std::uint64_t p = x.prime();
    if (x.precision() < target_prec) throw UsageError("log_series: input precision below target");
    ZpInt acc = ZpInt::zero(p, x.precision());
    ZpInt xp = x;  // x^k
    for (long k = 1;; ++k) {
        const long v = vp_long(p, k);
        if (k - v >= target_prec) break;  // tail is O(p^target)
        ZpInt term = div_pow_p(xp, static_cast<int>(v));
        term = zp_mul(term, zp_inv(ZpInt::from_long(p, term.precision(), unit_part(p, k))));
        acc = (k % 2 == 1) ? zp_add(acc, term) : zp_sub(acc, term);
        xp = zp_mul(xp, x);
    }
    return truncate(acc, target_prec);
}

ZpInt exp_series(const ZpInt& v, int target_prec) {
    const std::uint64_t p = v.prime();
    if (v.precision() < target_prec) throw UsageError("exp_series: input precision below target");
    ZpInt acc = ZpInt::zero(p, v.precision());
    ZpInt vp = v;          // v^k
    long fact_val = 0;     // v_p(k!)
    ZpInt fact_unit = ZpInt::one(p, v.precision());  // unit part of k! mod p^N
    for (long k = 1;; ++k) {
        fact_val += vp_long(p, k);
        fact_unit = zp_mul(fact_unit, ZpInt::from_long(p, fact_unit.precision(), unit_part(p, k)));
        if (k - fact_val >= target_prec) break;
        ZpInt term = div_pow_p(vp, static_cast<int>(fact_val));
        term = zp_mul(term, zp_inv(truncate(fact_unit, term.precision())));
        acc = zp_add(acc, term);
        vp = zp_mul(vp, v);
    }
    return truncate(acc, target_prec);
}

ZpInt pth_root_series(const ZpInt& c, int target_prec) {
    const std::uint64_t p = c.prime();
    const int n = c.precision();
    // Largest term index that can still touch the target digits, and the
    // precision cost of dividing it by p^(k + v_p(k!)).
    long k_stop = 1, worst_divisor = 0, fv = 0;
    for (long k = 1;; ++k) {
        fv += vp_long(p, k);
        if (k - fv >= target_prec) {
            k_stop = k;
            break;
        }
        worst_divisor = std::max(worst_divisor, k + fv);
    }
    if (n - worst_divisor < target_prec) {
        throw UsageError("pth_root_series: target " + std::to_string(target_prec) +
                         " unreachable at precision " + std::to_string(n) + " for p = " +
                         std::to_string(p));
    }

    ZpInt acc = ZpInt::zero(p, n);
    ZpInt ck = c;                       // c^k
    ZpInt num_unit = ZpInt::one(p, n);  // prod_{i=0}^{k-1} (1 - i p), a unit
    long fact_val = 0;
    ZpInt fact_unit = ZpInt::one(p, n);
    for (long k = 1; k < k_stop; ++k) {
        fact_val += vp_long(p, k);
        fact_unit = zp_mul(fact_unit, ZpInt::from_long(p, n, unit_part(p, k)));
        // C(1/p, k) c^k = c^k prod(1 - i p) / (p^k k!)
        ZpInt term = div_pow_p(ck, static_cast<int>(k + fact_val));
        term = zp_mul(term, truncate(num_unit, term.precision()));
        term = zp_mul(term, zp_inv(truncate(fact_unit, term.precision())));
        acc = zp_add(acc, term);
        ck = zp_mul(ck, c);
        num_unit = zp_mul(num_unit, ZpInt::from_long(p, n, 1 - static_cast<long>(p) * k));
    }
    return truncate(acc, target_prec);
}

std::vector<ZpInt> log_series_mat(const std::vector<ZpInt>& a, int m, int target_prec) {
    const std::uint64_t p = a.front().prime();
    const int n = a.front().precision();
    std::vector<ZpInt> acc(a.size(), ZpInt::zero(p, n));
    std::vector<ZpInt> ak = a;
    for (long k = 1;; ++k) {
        const long v = vp_long(p, k);
        if (k - v >= target_prec) break;
        const ZpInt kinv = zp_inv(ZpInt::from_long(p, n - static_cast<int>(v), unit_part(p, k)));
        for (std::size_t i = 0; i < acc.size(); ++i) {
            ZpInt term = zp_mul(div_pow_p(ak[i], static_cast<int>(v)), kinv);
            acc[i] = (k % 2 == 1) ? zp_add(acc[i], term) : zp_sub(acc[i], term);
        }
        ak = oracle_mat_mul(ak, a, m);
    }
    for (auto& c : acc) c = truncate(c, target_prec);
    return acc;
}

std::vector<ZpInt> exp_series_mat(const std::vector<ZpInt>& a, int m, int target_prec) {
    const std::uint64_t p = a.front().prime();
    const int n = a.front().precision();
    std::vector<ZpInt> acc(a.size(), ZpInt::zero(p, n));
    std::vector<ZpInt> ak = a;
    long fact_val = 0;
    ZpInt fact_unit = ZpInt::one(p, n);
    for (long k = 1;; ++k) {
        fact_val += vp_long(p, k);
        fact_unit = zp_mul(fact_unit, ZpInt::from_long(p, n, unit_part(p, k)));
        if (k - fact_val >= target_prec) break;
        const ZpInt finv = zp_inv(truncate(fact_unit, n - static_cast<int>(fact_val)));
        for (std::size_t i = 0; i < acc.size(); ++i) {
            acc[i] = zp_add(acc[i], zp_mul(div_pow_p(ak[i], static_cast<int>(fact_val)), finv));
        }
        ak = oracle_mat_mul(ak, a, m);
    }
    for (auto& c : acc) c = truncate(c, target_prec);
    return acc;
}

}  // namespace plie
