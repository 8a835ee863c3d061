#ifndef TESTS_SUPPORT_HPP
#define TESTS_SUPPORT_HPP

#include <random>
#include <string>
#include <vector>

#include <jacobi_mv.hpp>

namespace support
{

inline jacobi_mv::Rational q(const std::string& s) { return jacobi_mv::parse_rational(s); }

/// Rational with numerator in [lo, hi] and denominator in [1, max_den].
inline jacobi_mv::Rational random_rational(std::mt19937& rng, int lo, int hi, int max_den)
{
    std::uniform_int_distribution<int> num(lo, hi);
    std::uniform_int_distribution<int> den(1, max_den);
    return jacobi_mv::ratio(num(rng), den(rng));
}

/// Test functionals used by the property tests.
struct NamedFunctional {
    std::string name;
    jacobi_mv::MomentFunctional f;
};

inline std::vector<NamedFunctional> test_functionals()
{
    using jacobi_mv::Atom;
    using jacobi_mv::MomentFunctional;
    using jacobi_mv::Rational;
    return {
        {"gaussian d=1", MomentFunctional::gaussian_product(1)},
        {"gaussian d=2", MomentFunctional::gaussian_product(2)},
        {"gamma (0,1/2)", MomentFunctional::gamma_product({0, q("1/2")})},
        {"beta (0,0)", MomentFunctional::beta_product({0, 0}, {0, 0})},
        {"beta (1/2,-1/2)", MomentFunctional::beta_product({q("1/2"), q("-1/2")}, {q("-1/2"), 1})},
        {"two atoms", MomentFunctional::atomic(2, {Atom{{0, 0}, q("1/2")}, Atom{{1, 1}, q("1/2")}})},
        {"three atoms", MomentFunctional::atomic(2, {Atom{{0, 0}, q("1/3")}, Atom{{1, 0}, q("1/6")},
                                                     Atom{{q("1/2"), 2}, q("1/2")}})},
    };
}

} // namespace support

#endif
