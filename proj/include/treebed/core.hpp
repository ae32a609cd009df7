#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "treebed/error.hpp"

namespace treebed {

using Rational = mpq_class;
using RationalVec = std::vector<Rational>;

/// Construction parameters. Only `validate_params` creates these, so every
/// instance satisfies
///   a = 1 - 2/p,   1/(p-1) + 1/p < 1/(n+1),   H(eta0) = eta0.
class Params {
public:
    int n() const { return n_; }
    int p() const { return p_; }
    /// Number of colors, |C| = n + 1.
    int colors() const { return n_ + 1; }

    const Rational& a() const { return a_; }
    const Rational& lambda() const { return lambda_; }
    const RationalVec& nu() const { return nu_; }
    const RationalVec& eta0() const { return eta0_; }
    double sigma() const { return sigma_; }

    // All the vectors are multiples of theta = (1, ..., 1); these are the
    // common coordinates.
    const Rational& nu_coord() const { return nu_[0]; }
    const Rational& eta_coord() const { return eta_; }
    const Rational& eta0_coord() const { return eta0_[0]; }

    /// Whether (n+1) divides (p-1). Without it the level-k cells of colors
    /// c != 0 do not line up with the level-0 cube faces and the separation
    /// property fails for those colors.
    bool colors_aligned() const { return (p_ - 1) % (n_ + 1) == 0; }

    /// H(x) = p (x - eta) on one coordinate.
    Rational expand(const Rational& x) const { return p_ * (x - eta_); }

    friend Params validate_params(int n, int p);

private:
    Params() = default;

    int n_ = 0;
    int p_ = 0;
    Rational a_, lambda_, eta_;
    RationalVec nu_, eta0_;
    double sigma_ = 0.0;
};

Params validate_params(int n, int p);

/// num/den in canonical form.
Rational make_rational(long num, long den);

/// p^e as an exact rational, e of either sign.
Rational pow_p(const Params& P, int e);

mpz_class floor_rational(const Rational& q);

/// Narrow to int64 or throw Overflow.
std::int64_t to_int64(const mpz_class& z);

/// Closed axis-aligned box with exact rational corners.
struct RationalBox {
    RationalVec lo;
    RationalVec hi;

    std::size_t dim() const { return lo.size(); }
    bool contains(const RationalVec& x) const;
    bool contains(const RationalBox& inner) const;
    RationalVec center() const;
};

/// Exact squared Euclidean distance between two closed boxes; zero iff they
/// intersect.
Rational box_gap_sq(const RationalBox& b1, const RationalBox& b2);

/// Distance from `inner` to the boundary of `outer` when inner is contained
/// in outer, otherwise nullopt.
std::optional<Rational> boundary_margin(const RationalBox& outer, const RationalBox& inner);

std::string to_string(const Rational& q);

}  // namespace treebed
