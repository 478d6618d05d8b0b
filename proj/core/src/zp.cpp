#include "plie/zp.hpp"

#include <map>
#include <vector>

namespace plie {

const mpz_class& prime_pow(std::uint64_t p, int e) {
    thread_local std::map<std::uint64_t, std::vector<mpz_class>> cache;
    auto& powers = cache[p];
    if (powers.empty()) powers.emplace_back(1);
    while (static_cast<int>(powers.size()) <= e) {
        powers.push_back(powers.back() * static_cast<unsigned long>(p));
    }
    return powers[static_cast<std::size_t>(e)];
}

bool is_supported_prime(std::uint64_t p) {
    if (p < 3 || p % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= p; d += 2) {
        if (p % d == 0) return false;
    }
    return true;
}

long NormExp::exponent() const {
    if (infinite_) throw UsageError("NormExp: exponent() on an infinite norm exponent");
    return exp_;
}

long NormExp::floor() const {
    if (!infinite_) throw UsageError("NormExp: floor() on a finite norm exponent");
    return floor_;
}

CheckOutcome check_geq(const NormExp& lhs, const NormExp& rhs) {
    if (lhs.at_floor()) {
        // lhs vanished; only a lower bound is known. If even the bound covers
        // rhs this is a clean pass, otherwise pass-with-floor-annotation.
        if (!rhs.is_finite()) return CheckOutcome::PassAtFloor;
        return lhs.floor() >= rhs.exponent() ? CheckOutcome::Pass : CheckOutcome::PassAtFloor;
    }
    if (!rhs.is_finite()) return CheckOutcome::Fail;
    return lhs.exponent() >= rhs.exponent() ? CheckOutcome::Pass : CheckOutcome::Fail;
}

NormExp min(const NormExp& a, const NormExp& b) {
    if (a.at_floor() && b.at_floor()) return NormExp::zero_at(std::min(a.floor(), b.floor()));
    if (a.at_floor()) return b;
    if (b.at_floor()) return a;
    return NormExp::of(std::min(a.exponent(), b.exponent()));
}

NormExp operator+(const NormExp& a, const NormExp& b) {
    if (a.at_floor() || b.at_floor()) {
        return NormExp::zero_at(a.bound() + b.bound());
    }
    return NormExp::of(a.exponent() + b.exponent());
}

namespace {

void require_same_prime(const ZpInt& a, const ZpInt& b) {
    if (a.prime() != b.prime()) {
        throw UsageError("ZpInt: prime mismatch (" + std::to_string(a.prime()) + " vs " +
                         std::to_string(b.prime()) + ")");
    }
}

int out_precision(const ZpInt& a, const ZpInt& b) {
    return std::min(a.precision(), b.precision());
}

}  // namespace

ZpInt::ZpInt(std::uint64_t prime, int precision, mpz_class residue)
    : prime_(prime), precision_(precision), residue_(std::move(residue)) {
    if (!is_supported_prime(prime_)) {
        throw UsageError("ZpInt: prime must be an odd prime >= 3, got " + std::to_string(prime_));
    }
    if (precision_ < 1) {
        throw UsageError("ZpInt: precision must be >= 1, got " + std::to_string(precision_));
    }
    const mpz_class& mod = prime_pow(prime_, precision_);
    mpz_fdiv_r(residue_.get_mpz_t(), residue_.get_mpz_t(), mod.get_mpz_t());
}

ZpInt ZpInt::zero(std::uint64_t p, int precision) { return ZpInt(p, precision, 0); }

ZpInt ZpInt::one(std::uint64_t p, int precision) { return ZpInt(p, precision, 1); }

ZpInt ZpInt::from_long(std::uint64_t p, int precision, long value) {
    return ZpInt(p, precision, mpz_class(value));
}

ZpInt zp_add(const ZpInt& a, const ZpInt& b) {
    require_same_prime(a, b);
    return ZpInt(a.prime(), out_precision(a, b), a.residue() + b.residue());
}

ZpInt zp_sub(const ZpInt& a, const ZpInt& b) {
    require_same_prime(a, b);
    return ZpInt(a.prime(), out_precision(a, b), a.residue() - b.residue());
}

ZpInt zp_neg(const ZpInt& a) { return ZpInt(a.prime(), a.precision(), -a.residue()); }

ZpInt zp_mul(const ZpInt& a, const ZpInt& b) {
    require_same_prime(a, b);
    return ZpInt(a.prime(), out_precision(a, b), a.residue() * b.residue());
}

ZpInt zp_inv(const ZpInt& a) {
    if (mpz_divisible_ui_p(a.residue().get_mpz_t(), static_cast<unsigned long>(a.prime()))) {
        throw NotAUnit("zp_inv: residue " + a.residue_string() + " is divisible by " +
                       std::to_string(a.prime()));
    }
    const mpz_class& mod = prime_pow(a.prime(), a.precision());
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), a.residue().get_mpz_t(), mod.get_mpz_t());
    return ZpInt(a.prime(), a.precision(), std::move(inv));
}

NormExp val(const ZpInt& a) {
    if (a.is_zero()) return NormExp::zero_at(a.precision());
    mpz_class rest, prime(static_cast<unsigned long>(a.prime()));
    const mp_bitcnt_t e = mpz_remove(rest.get_mpz_t(), a.residue().get_mpz_t(), prime.get_mpz_t());
    return NormExp::of(static_cast<long>(e));
}

ZpInt div_pow_p(const ZpInt& a, int k) {
    if (k < 0) throw UsageError("div_pow_p: negative exponent");
    if (k == 0) return a;
    if (k >= a.precision()) {
        throw PrecisionExhausted("div_pow_p: dividing a precision-" + std::to_string(a.precision()) +
                                 " value by p^" + std::to_string(k) + " leaves no digits");
    }
    const mpz_class& pk = prime_pow(a.prime(), k);
    if (!mpz_divisible_p(a.residue().get_mpz_t(), pk.get_mpz_t())) {
        throw NotDivisible("div_pow_p: residue " + a.residue_string() + " not divisible by p^" +
                           std::to_string(k));
    }
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), a.residue().get_mpz_t(), pk.get_mpz_t());
    return ZpInt(a.prime(), a.precision() - k, std::move(q));
}

ZpInt mul_pow_p(const ZpInt& a, int k) {
    if (k < 0) throw UsageError("mul_pow_p: negative exponent");
    if (k == 0) return a;
    return ZpInt(a.prime(), a.precision(), a.residue() * prime_pow(a.prime(), k));
}

ZpInt truncate(const ZpInt& a, int precision) {
    if (precision > a.precision()) {
        throw UsageError("truncate: cannot extend precision " + std::to_string(a.precision()) +
                         " to " + std::to_string(precision));
    }
    if (precision == a.precision()) return a;
    return ZpInt(a.prime(), precision, a.residue());
}

ZpInt zp_random(std::uint64_t p, int precision, Rng& rng, int min_valuation) {
    if (min_valuation < 0 || min_valuation > precision) {
        throw UsageError("zp_random: min_valuation must lie in [0, precision]");
    }
    if (min_valuation == precision) return ZpInt::zero(p, precision);
    mpz_class r = 0;
    for (int i = precision - min_valuation - 1; i >= 0; --i) {
        r = r * static_cast<unsigned long>(p) + static_cast<unsigned long>(rng.below(p));
    }
    return ZpInt(p, precision, r * prime_pow(p, min_valuation));
}

bool operator==(const ZpInt& a, const ZpInt& b) {
    return a.prime() == b.prime() && a.precision() == b.precision() && a.residue() == b.residue();
}

QpScalar QpScalar::zero(std::uint64_t p) { return QpScalar(p); }

QpScalar QpScalar::from_unit(long valuation, ZpInt unit) {
    if (mpz_divisible_ui_p(unit.residue().get_mpz_t(), static_cast<unsigned long>(unit.prime()))) {
        throw UsageError("QpScalar: unit part must be coprime to p");
    }
    return QpScalar(valuation, std::move(unit));
}

QpScalar QpScalar::from_zp(const ZpInt& a) {
    if (a.is_zero()) return QpScalar::zero(a.prime());
    const long v = val(a).exponent();
    return QpScalar(v, div_pow_p(a, static_cast<int>(v)));
}

QpScalar QpScalar::p_power(std::uint64_t p, long k, int rel_precision) {
    return QpScalar(k, ZpInt::one(p, rel_precision));
}

long QpScalar::valuation() const {
    if (zero_) throw UsageError("QpScalar: valuation of zero is infinite");
    return valuation_;
}

const ZpInt& QpScalar::unit() const {
    if (zero_) throw UsageError("QpScalar: zero has no unit part");
    return unit_;
}

QpScalar QpScalar::inverse() const {
    if (zero_) throw DomainError("QpScalar: zero is not invertible");
    return QpScalar(-valuation_, zp_inv(unit_));
}

ZpInt qp_mul(const QpScalar& t, const ZpInt& a) {
    if (t.prime() != a.prime()) throw UsageError("qp_mul: prime mismatch");
    if (t.is_zero()) return ZpInt::zero(a.prime(), a.precision());
    ZpInt scaled = zp_mul(truncate(t.unit(), std::min(t.rel_precision(), a.precision())), a);
    const long v = t.valuation();
    if (v >= 0) return mul_pow_p(scaled, static_cast<int>(v));
    return div_pow_p(scaled, static_cast<int>(-v));
}

ZpInt qp_div(const ZpInt& a, const QpScalar& t) {
    if (t.is_zero()) throw UsageError("qp_div: division by the zero scalar");
    return qp_mul(t.inverse(), a);
}

}  // namespace plie
