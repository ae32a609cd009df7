#include "treebed/core.hpp"

#include <cmath>

namespace treebed {

Params validate_params(int n, int p) {
    if (n < 1) throw InvalidParams("n >= 1 required, got n = " + std::to_string(n));
    if (p < 2) throw InvalidParams("p >= 2 required, got p = " + std::to_string(p));

    const Rational lhs = make_rational(1, p - 1) + make_rational(1, p);
    const Rational rhs(1, n + 1);
    if (!(lhs < rhs)) {
        throw InvalidParams("1/(p-1) + 1/p < 1/(n+1) fails for n = " + std::to_string(n) +
                            ", p = " + std::to_string(p) + ": " + to_string(lhs) +
                            " >= " + to_string(rhs));
    }

    Params P;
    P.n_ = n;
    P.p_ = p;
    P.a_ = 1 - make_rational(2, p);
    P.lambda_ = make_rational(1, p);
    P.eta_ = make_rational(1, p);
    P.nu_.assign(n, make_rational(1, n + 1));
    P.eta0_.assign(n, make_rational(1, p - 1));
    P.sigma_ = std::log(static_cast<double>(p));
    return P;
}

Rational make_rational(long num, long den) {
    Rational q{mpz_class(num), mpz_class(den)};
    q.canonicalize();
    return q;
}

Rational pow_p(const Params& P, int e) {
    mpz_class z;
    mpz_ui_pow_ui(z.get_mpz_t(), static_cast<unsigned long>(P.p()),
                  static_cast<unsigned long>(e < 0 ? -static_cast<long>(e) : e));
    if (e >= 0) return Rational(z);
    Rational q(1, 1);
    q.get_den() = z;
    return q;
}

mpz_class floor_rational(const Rational& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

std::int64_t to_int64(const mpz_class& z) {
    if (!z.fits_slong_p()) throw Overflow("lattice coordinate exceeds 64 bits: " + z.get_str());
    return z.get_si();
}

bool RationalBox::contains(const RationalVec& x) const {
    if (x.size() != dim()) throw DimensionMismatch(dim(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
}

bool RationalBox::contains(const RationalBox& inner) const {
    if (inner.dim() != dim()) throw DimensionMismatch(dim(), inner.dim());
    for (std::size_t i = 0; i < dim(); ++i)
        if (inner.lo[i] < lo[i] || inner.hi[i] > hi[i]) return false;
    return true;
}

RationalVec RationalBox::center() const {
    RationalVec c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = (lo[i] + hi[i]) / 2;
    return c;
}

Rational box_gap_sq(const RationalBox& b1, const RationalBox& b2) {
    if (b1.dim() != b2.dim()) throw DimensionMismatch(b1.dim(), b2.dim());
    Rational sum = 0;
    for (std::size_t i = 0; i < b1.dim(); ++i) {
        Rational gap = 0;
        if (b2.lo[i] > b1.hi[i])
            gap = b2.lo[i] - b1.hi[i];
        else if (b1.lo[i] > b2.hi[i])
            gap = b1.lo[i] - b2.hi[i];
        sum += gap * gap;
    }
    return sum;
}

std::optional<Rational> boundary_margin(const RationalBox& outer, const RationalBox& inner) {
    if (outer.dim() != inner.dim()) throw DimensionMismatch(outer.dim(), inner.dim());
    if (!outer.contains(inner)) return std::nullopt;
    std::optional<Rational> margin;
    for (std::size_t i = 0; i < outer.dim(); ++i) {
        Rational m = inner.lo[i] - outer.lo[i];
        Rational r = outer.hi[i] - inner.hi[i];
        if (r < m) m = r;
        if (!margin || m < *margin) margin = m;
    }
    return margin;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace treebed
