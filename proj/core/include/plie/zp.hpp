#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "plie/errors.hpp"
#include "plie/rng.hpp"

namespace plie {

// Cached p^e as an arbitrary-precision natural.
const mpz_class& prime_pow(std::uint64_t p, int e);

// True for the primes this library accepts: odd primes p >= 3. The chart
// radius r = p^-1 lies inside the exp/log convergence domain only for odd p.
bool is_supported_prime(std::uint64_t p);

// Norm of an element, stored as the integer exponent e with ||x|| = p^-e.
// All norms here lie in p^Z, so no floating point is ever involved. The
// infinite value means "zero at the current precision": the exponent is only
// known to be >= floor(), which is the at-precision-floor annotation.
class NormExp {
public:
    static NormExp of(long e) { return NormExp(e, false, 0); }
    static NormExp zero_at(long floor) { return NormExp(0, true, floor); }

    bool is_finite() const { return !infinite_; }
    bool at_floor() const { return infinite_; }

    // Exponent when finite; when infinite this returns the floor, i.e. the
    // best available lower bound.
    long bound() const { return infinite_ ? floor_ : exp_; }
    long exponent() const;
    long floor() const;

    friend bool operator==(const NormExp& a, const NormExp& b) {
        return a.infinite_ == b.infinite_ &&
               (a.infinite_ ? a.floor_ == b.floor_ : a.exp_ == b.exp_);
    }

private:
    NormExp(long e, bool inf, long floor) : exp_(e), infinite_(inf), floor_(floor) {}
    long exp_;
    bool infinite_;
    long floor_;
};

// Outcome of an exact ultrametric inequality check at finite precision. A
// difference that vanished at the precision floor cannot be distinguished
// from zero, so it passes with an annotation instead of a boolean.
enum class CheckOutcome { Pass, PassAtFloor, Fail };

// Checks lhs >= rhs where lhs/rhs are norm exponents of computed values.
CheckOutcome check_geq(const NormExp& lhs, const NormExp& rhs);

NormExp min(const NormExp& a, const NormExp& b);
NormExp operator+(const NormExp& a, const NormExp& b);

// An element of Z_p known to absolute precision N: the value is
// residue + O(p^N). Values are immutable once constructed and may be shared
// freely between threads. Arithmetic never upgrades precision: combining two
// values yields min(Na, Nb), and division by p gives up digits explicitly.
class ZpInt {
public:
    ZpInt(std::uint64_t prime, int precision, mpz_class residue);

    static ZpInt zero(std::uint64_t p, int precision);
    static ZpInt one(std::uint64_t p, int precision);
    static ZpInt from_long(std::uint64_t p, int precision, long value);

    std::uint64_t prime() const { return prime_; }
    int precision() const { return precision_; }
    const mpz_class& residue() const { return residue_; }

    bool is_zero() const { return residue_ == 0; }
    std::string residue_string() const { return residue_.get_str(10); }

private:
    std::uint64_t prime_;
    int precision_;
    mpz_class residue_;
};

ZpInt zp_add(const ZpInt& a, const ZpInt& b);
ZpInt zp_sub(const ZpInt& a, const ZpInt& b);
ZpInt zp_neg(const ZpInt& a);
ZpInt zp_mul(const ZpInt& a, const ZpInt& b);

// Multiplicative inverse mod p^N. Throws NotAUnit when p divides the residue.
ZpInt zp_inv(const ZpInt& a);

// Largest e <= N with p^e dividing the residue; +infinity with the
// at-precision-floor flag when the residue is 0 (val >= N, possibly zero).
NormExp val(const ZpInt& a);

// Exact division by p^k. The quotient is known to k fewer digits.
// Throws PrecisionExhausted when no digits would remain, NotDivisible when
// the residue is not a multiple of p^k.
ZpInt div_pow_p(const ZpInt& a, int k);

// Multiplication by p^k, k >= 0. Stays at the same absolute precision.
ZpInt mul_pow_p(const ZpInt& a, int k);

// Truncate to a smaller absolute precision.
ZpInt truncate(const ZpInt& a, int precision);

// Uniform draw from the residues of valuation >= min_valuation, deterministic
// in the rng state.
ZpInt zp_random(std::uint64_t p, int precision, Rng& rng, int min_valuation);

bool operator==(const ZpInt& a, const ZpInt& b);

// A scalar of Q_p as (valuation, unit part): |x|_p = p^-valuation exactly,
// independent of how many unit digits are known (rel_precision = the unit's
// precision). The zero scalar has infinite valuation and no unit part.
class QpScalar {
public:
    static QpScalar zero(std::uint64_t p);
    static QpScalar from_unit(long valuation, ZpInt unit);
    // Factor a nonzero ZpInt into p^v * unit; zero input gives zero().
    static QpScalar from_zp(const ZpInt& a);
    static QpScalar p_power(std::uint64_t p, long k, int rel_precision);

    std::uint64_t prime() const { return prime_; }
    bool is_zero() const { return zero_; }
    long valuation() const;
    const ZpInt& unit() const;
    int rel_precision() const { return zero_ ? 0 : unit_.precision(); }
    NormExp abs_exponent() const {
        return zero_ ? NormExp::zero_at(0) : NormExp::of(valuation_);
    }

    QpScalar inverse() const;

private:
    QpScalar(std::uint64_t p) : prime_(p), zero_(true), valuation_(0), unit_(ZpInt::one(p, 1)) {}
    QpScalar(long v, ZpInt u) : prime_(u.prime()), zero_(false), valuation_(v), unit_(std::move(u)) {}
    std::uint64_t prime_;
    bool zero_;
    long valuation_;
    ZpInt unit_;
};

// t * a for t in Q_p. Negative valuation divides exactly and costs digits.
ZpInt qp_mul(const QpScalar& t, const ZpInt& a);
// a / t. Division by t costs val(t) digits when val(t) > 0.
ZpInt qp_div(const ZpInt& a, const QpScalar& t);

}  // namespace plie
