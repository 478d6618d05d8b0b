#pragma once

#include <string>
#include <vector>

#include "plie/zp.hpp"

namespace plie {

// An element of Q_p^d in chart coordinates, with the ultrametric max-norm
// ||x|| = max_i |x_i|_p kept as an integer exponent. Vectors in the chart
// ball have every coordinate divisible by p (norm_exp >= 1); group
// operations reject anything else. Differences, scaled vectors and probe
// outputs may legitimately live outside the ball, so the type itself only
// requires a common prime and precision.
class ChartVector {
public:
    ChartVector(std::uint64_t prime, int precision, std::vector<ZpInt> coords);

    static ChartVector zero(std::uint64_t prime, int precision, int dim);

    std::uint64_t prime() const { return prime_; }
    int precision() const { return precision_; }
    int dim() const { return static_cast<int>(coords_.size()); }
    const ZpInt& coord(int i) const { return coords_[static_cast<std::size_t>(i)]; }
    const std::vector<ZpInt>& coords() const { return coords_; }

    bool is_zero() const;
    // Membership in the closed ball of radius p^-1 (every coordinate
    // divisible by p).
    bool in_ball() const;

private:
    std::uint64_t prime_;
    int precision_;
    std::vector<ZpInt> coords_;
};

// Coordinatewise vector-space operations (the additive side of the chart).
ChartVector cv_add(const ChartVector& a, const ChartVector& b);
ChartVector cv_sub(const ChartVector& a, const ChartVector& b);
ChartVector cv_neg(const ChartVector& a);
ChartVector cv_scale(const ZpInt& c, const ChartVector& a);
ChartVector cv_scale_long(long c, const ChartVector& a);
ChartVector cv_mul_pow_p(const ChartVector& a, int k);
ChartVector cv_div_pow_p(const ChartVector& a, int k);
ChartVector cv_truncate(const ChartVector& a, int precision);
// Canonical lift to a higher precision (new digits zero). An explicit,
// named precision upgrade: the lifted value represents the same residue class
// and differs from any true lift by O(p^a.precision()).
ChartVector cv_lift(const ChartVector& a, int precision);

// Max-norm exponent: min over coordinate valuations; infinite for the zero
// vector at the current precision.
NormExp norm_exp(const ChartVector& a);
// Norm exponent of a - b, the ultrametric distance between a and b compared
// at their shared precision.
NormExp dist_exp(const ChartVector& a, const ChartVector& b);

bool operator==(const ChartVector& a, const ChartVector& b);

// Equality of the chart vectors modulo p^prec.
bool eq_mod(const ChartVector& a, const ChartVector& b, int prec);

// A group model on the chart ball: the local multiplication mu(x,y) = x*y
// transported from a p-adic Lie group so that 0 is the identity. Three
// concrete models:
//
//   Multiplicative   d = 1      x*y = x + y + xy            (chart of 1+x in Z_p^x)
//   GLCongruence(m)  d = m^2    X*Y = X + Y + XY            (chart of I+X, matrix product)
//   Heisenberg       d = 3      (a,b,c)*(a',b',c')
//                               = (a+a', b+b', c+c'+a b')   (polynomial model)
//
// Together they exercise the abelian, matrix-noncommutative and nilpotent
// cases. The chart radius is fixed at r = p^-1 (radius_exponent 1).
class ChartGroup {
public:
    enum class Kind { Multiplicative, GLCongruence, Heisenberg };

    static ChartGroup multiplicative(std::uint64_t p);
    static ChartGroup gl_congruence(std::uint64_t p, int m);
    static ChartGroup heisenberg(std::uint64_t p);
    // Parses "mult", "gl:<m>", "heis".
    static ChartGroup parse(const std::string& name, std::uint64_t p);

    Kind kind() const { return kind_; }
    std::uint64_t prime() const { return prime_; }
    int dim() const { return dim_; }
    int matrix_size() const { return msize_; }
    int radius_exponent() const { return 1; }
    std::string name() const;

    ChartVector zero(int precision) const;

    ChartVector mul(const ChartVector& x, const ChartVector& y) const;
    ChartVector inv(const ChartVector& x) const;
    ChartVector commutator(const ChartVector& x, const ChartVector& y) const;
    // n-fold product by square-and-multiply; negative n through inv.
    ChartVector power_int(const ChartVector& x, long n) const;

    // Uniform sample from the ball of norm exponent >= min_exp.
    ChartVector random(int precision, Rng& rng, int min_exp) const;
    // Sample with norm exponent exactly want_exp.
    ChartVector random_exact(int precision, Rng& rng, int want_exp) const;

private:
    ChartGroup(Kind k, std::uint64_t p, int dim, int msize)
        : kind_(k), prime_(p), dim_(dim), msize_(msize) {}
    void require_member(const ChartVector& x) const;

    Kind kind_;
    std::uint64_t prime_;
    int dim_;
    int msize_;
};

}  // namespace plie
