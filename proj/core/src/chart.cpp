#include "plie/chart.hpp"

#include <algorithm>

namespace plie {

ChartVector::ChartVector(std::uint64_t prime, int precision, std::vector<ZpInt> coords)
    : prime_(prime), precision_(precision), coords_(std::move(coords)) {
    if (coords_.empty()) throw UsageError("ChartVector: dimension must be >= 1");
    for (auto& c : coords_) {
        if (c.prime() != prime_) throw UsageError("ChartVector: coordinate prime mismatch");
        if (c.precision() != precision_) {
            throw UsageError("ChartVector: coordinates must share one precision");
        }
    }
}

ChartVector ChartVector::zero(std::uint64_t prime, int precision, int dim) {
    return ChartVector(prime, precision,
                       std::vector<ZpInt>(static_cast<std::size_t>(dim), ZpInt::zero(prime, precision)));
}

bool ChartVector::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const ZpInt& c) { return c.is_zero(); });
}

bool ChartVector::in_ball() const {
    for (const auto& c : coords_) {
        if (c.is_zero()) continue;
        if (!mpz_divisible_ui_p(c.residue().get_mpz_t(), static_cast<unsigned long>(prime_))) {
            return false;
        }
    }
    return true;
}

namespace {

std::vector<ZpInt> zip(const ChartVector& a, const ChartVector& b,
                       ZpInt (*op)(const ZpInt&, const ZpInt&)) {
    if (a.prime() != b.prime()) throw UsageError("ChartVector: prime mismatch");
    if (a.dim() != b.dim()) throw UsageError("ChartVector: dimension mismatch");
    std::vector<ZpInt> out;
    out.reserve(static_cast<std::size_t>(a.dim()));
    for (int i = 0; i < a.dim(); ++i) out.push_back(op(a.coord(i), b.coord(i)));
    return out;
}

ChartVector wrap(std::uint64_t p, std::vector<ZpInt> coords) {
    const int prec = coords.front().precision();
    return ChartVector(p, prec, std::move(coords));
}

}  // namespace

ChartVector cv_add(const ChartVector& a, const ChartVector& b) {
    return wrap(a.prime(), zip(a, b, &zp_add));
}

ChartVector cv_sub(const ChartVector& a, const ChartVector& b) {
    return wrap(a.prime(), zip(a, b, &zp_sub));
}

ChartVector cv_neg(const ChartVector& a) {
    std::vector<ZpInt> out;
    out.reserve(static_cast<std::size_t>(a.dim()));
    for (const auto& c : a.coords()) out.push_back(zp_neg(c));
    return wrap(a.prime(), std::move(out));
}

ChartVector cv_scale(const ZpInt& c, const ChartVector& a) {
    std::vector<ZpInt> out;
    out.reserve(static_cast<std::size_t>(a.dim()));
    for (const auto& x : a.coords()) out.push_back(zp_mul(c, x));
    return wrap(a.prime(), std::move(out));
}

ChartVector cv_scale_long(long c, const ChartVector& a) {
    return cv_scale(ZpInt::from_long(a.prime(), a.precision(), c), a);
}

ChartVector cv_mul_pow_p(const ChartVector& a, int k) {
    std::vector<ZpInt> out;
    out.reserve(static_cast<std::size_t>(a.dim()));
    for (const auto& x : a.coords()) out.push_back(mul_pow_p(x, k));
    return wrap(a.prime(), std::move(out));
}

ChartVector cv_div_pow_p(const ChartVector& a, int k) {
    std::vector<ZpInt> out;
    out.reserve(static_cast<std::size_t>(a.dim()));
    for (const auto& x : a.coords()) out.push_back(div_pow_p(x, k));
    return wrap(a.prime(), std::move(out));
}

ChartVector cv_truncate(const ChartVector& a, int precision) {
    std::vector<ZpInt> out;
    out.reserve(static_cast<std::size_t>(a.dim()));
    for (const auto& x : a.coords()) out.push_back(truncate(x, precision));
    return wrap(a.prime(), std::move(out));
}

ChartVector cv_lift(const ChartVector& a, int precision) {
    if (precision < a.precision()) return cv_truncate(a, precision);
    std::vector<ZpInt> out;
    out.reserve(static_cast<std::size_t>(a.dim()));
    for (const auto& x : a.coords()) out.emplace_back(a.prime(), precision, x.residue());
    return wrap(a.prime(), std::move(out));
}

NormExp norm_exp(const ChartVector& a) {
    NormExp e = NormExp::zero_at(a.precision());
    for (const auto& c : a.coords()) e = min(e, val(c));
    return e;
}

NormExp dist_exp(const ChartVector& a, const ChartVector& b) { return norm_exp(cv_sub(a, b)); }

bool operator==(const ChartVector& a, const ChartVector& b) {
    if (a.prime() != b.prime() || a.dim() != b.dim() || a.precision() != b.precision()) return false;
    for (int i = 0; i < a.dim(); ++i) {
        if (!(a.coord(i) == b.coord(i))) return false;
    }
    return true;
}

bool eq_mod(const ChartVector& a, const ChartVector& b, int prec) {
    if (a.precision() < prec || b.precision() < prec) {
        throw UsageError("eq_mod: operands carry fewer digits than the comparison precision");
    }
    return cv_truncate(a, prec) == cv_truncate(b, prec);
}

ChartGroup ChartGroup::multiplicative(std::uint64_t p) {
    return ChartGroup(Kind::Multiplicative, p, 1, 0);
}

ChartGroup ChartGroup::gl_congruence(std::uint64_t p, int m) {
    if (m < 1) throw UsageError("ChartGroup: matrix size must be >= 1");
    return ChartGroup(Kind::GLCongruence, p, m * m, m);
}

ChartGroup ChartGroup::heisenberg(std::uint64_t p) { return ChartGroup(Kind::Heisenberg, p, 3, 0); }

ChartGroup ChartGroup::parse(const std::string& name, std::uint64_t p) {
    if (name == "mult") return multiplicative(p);
    if (name == "heis") return heisenberg(p);
    if (name.rfind("gl:", 0) == 0) {
        try {
            std::size_t used = 0;
            const int m = std::stoi(name.substr(3), &used);
            if (used == name.size() - 3) return gl_congruence(p, m);
        } catch (const std::exception&) {
        }
    }
    throw UsageError("ChartGroup: unknown group '" + name + "' (expected mult, gl:<m>, heis)");
}

std::string ChartGroup::name() const {
    switch (kind_) {
        case Kind::Multiplicative: return "mult";
        case Kind::GLCongruence: return "gl:" + std::to_string(msize_);
        case Kind::Heisenberg: return "heis";
    }
    return "?";
}

ChartVector ChartGroup::zero(int precision) const {
    return ChartVector::zero(prime_, precision, dim_);
}

void ChartGroup::require_member(const ChartVector& x) const {
    if (x.prime() != prime_) throw UsageError("ChartGroup: prime mismatch");
    if (x.dim() != dim_) throw UsageError("ChartGroup: dimension mismatch");
    if (!x.in_ball()) {
        throw OutOfChart("ChartGroup: vector lies outside the chart ball (a coordinate is a unit)");
    }
}

namespace {

// Row-major m x m matrix product over ZpInt.
std::vector<ZpInt> mat_mul(const std::vector<ZpInt>& a, const std::vector<ZpInt>& b, int m) {
    const std::uint64_t p = a.front().prime();
    const int prec = std::min(a.front().precision(), b.front().precision());
    std::vector<ZpInt> out(static_cast<std::size_t>(m * m), ZpInt::zero(p, prec));
    for (int i = 0; i < m; ++i) {
        for (int k = 0; k < m; ++k) {
            const ZpInt& aik = a[static_cast<std::size_t>(i * m + k)];
            if (aik.is_zero()) continue;
            for (int j = 0; j < m; ++j) {
                auto& cell = out[static_cast<std::size_t>(i * m + j)];
                cell = zp_add(cell, zp_mul(aik, b[static_cast<std::size_t>(k * m + j)]));
            }
        }
    }
    return out;
}

}  // namespace

ChartVector ChartGroup::mul(const ChartVector& x, const ChartVector& y) const {
    require_member(x);
    require_member(y);
    switch (kind_) {
        case Kind::Multiplicative: {
            const ZpInt& a = x.coord(0);
            const ZpInt& b = y.coord(0);
            return ChartVector(prime_, std::min(x.precision(), y.precision()),
                               {zp_add(zp_add(a, b), zp_mul(a, b))});
        }
        case Kind::GLCongruence: {
            auto prod = mat_mul(x.coords(), y.coords(), msize_);
            std::vector<ZpInt> out;
            out.reserve(prod.size());
            for (int i = 0; i < dim_; ++i) {
                out.push_back(zp_add(zp_add(x.coord(i), y.coord(i)), prod[static_cast<std::size_t>(i)]));
            }
            return wrap(prime_, std::move(out));
        }
        case Kind::Heisenberg: {
            ZpInt a = zp_add(x.coord(0), y.coord(0));
            ZpInt b = zp_add(x.coord(1), y.coord(1));
            ZpInt c = zp_add(zp_add(x.coord(2), y.coord(2)), zp_mul(x.coord(0), y.coord(1)));
            return wrap(prime_, {std::move(a), std::move(b), std::move(c)});
        }
    }
    throw UsageError("ChartGroup: unreachable kind");
}

ChartVector ChartGroup::inv(const ChartVector& x) const {
    require_member(x);
    switch (kind_) {
        case Kind::Multiplicative: {
            // x + i(x) + x i(x) = 0, so i(x) = -x (1+x)^-1.
            const ZpInt& a = x.coord(0);
            ZpInt denom = zp_inv(zp_add(ZpInt::one(prime_, a.precision()), a));
            return ChartVector(prime_, x.precision(), {zp_neg(zp_mul(a, denom))});
        }
        case Kind::GLCongruence: {
            // (I+X)^-1 = I + sum_{k>=1} (-X)^k; X^k vanishes mod p^N for k >= N.
            std::vector<ZpInt> acc(x.coords());
            for (auto& c : acc) c = zp_neg(c);
            std::vector<ZpInt> term = acc;
            for (int k = 2; k < x.precision(); ++k) {
                term = mat_mul(term, x.coords(), msize_);
                for (auto& c : term) c = zp_neg(c);
                bool all_zero = true;
                for (int i = 0; i < dim_; ++i) {
                    acc[static_cast<std::size_t>(i)] =
                        zp_add(acc[static_cast<std::size_t>(i)], term[static_cast<std::size_t>(i)]);
                    all_zero = all_zero && term[static_cast<std::size_t>(i)].is_zero();
                }
                if (all_zero) break;
            }
            return wrap(prime_, std::move(acc));
        }
        case Kind::Heisenberg: {
            ZpInt a = zp_neg(x.coord(0));
            ZpInt b = zp_neg(x.coord(1));
            ZpInt c = zp_add(zp_neg(x.coord(2)), zp_mul(x.coord(0), x.coord(1)));
            return wrap(prime_, {std::move(a), std::move(b), std::move(c)});
        }
    }
    throw UsageError("ChartGroup: unreachable kind");
}

ChartVector ChartGroup::commutator(const ChartVector& x, const ChartVector& y) const {
    return mul(mul(mul(x, y), inv(x)), inv(y));
}

ChartVector ChartGroup::power_int(const ChartVector& x, long n) const {
    require_member(x);
    if (n == 0) return zero(x.precision());
    ChartVector base = n < 0 ? inv(x) : x;
    unsigned long e = n < 0 ? 0ul - static_cast<unsigned long>(n) : static_cast<unsigned long>(n);
    ChartVector acc = zero(x.precision());
    while (e > 0) {
        if (e & 1ul) acc = mul(acc, base);
        e >>= 1;
        if (e > 0) base = mul(base, base);
    }
    return acc;
}

ChartVector ChartGroup::random(int precision, Rng& rng, int min_exp) const {
    std::vector<ZpInt> coords;
    coords.reserve(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i) coords.push_back(zp_random(prime_, precision, rng, min_exp));
    return ChartVector(prime_, precision, std::move(coords));
}

ChartVector ChartGroup::random_exact(int precision, Rng& rng, int want_exp) const {
    if (want_exp >= precision) throw UsageError("random_exact: exponent at or above precision");
    for (;;) {
        ChartVector v = random(precision, rng, want_exp);
        NormExp e = norm_exp(v);
        if (e.is_finite() && e.exponent() == want_exp) return v;
    }
}

}  // namespace plie
