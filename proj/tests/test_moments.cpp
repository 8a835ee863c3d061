#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles/quadrature.hpp"
#include "support.hpp"

using namespace jacobi_mv;
using support::q;

namespace
{

const oracle::real tolerance("1e-30");

MultiIndex random_beta(std::mt19937& rng, std::size_t d, int max_entry)
{
    std::uniform_int_distribution<int> e(0, max_entry);
    std::vector<int> v(d);
    for (auto& x : v) {
        x = e(rng);
    }
    return MultiIndex(v);
}

} // namespace

TEST_CASE("moment examples")
{
    CHECK(MomentFunctional::gaussian_product(1).moment(MultiIndex{2}) == q("1/2"));
    CHECK(MomentFunctional::gaussian_product(2).moment(MultiIndex{1, 3}) == 0);
    CHECK(MomentFunctional::gamma_product({0}).moment(MultiIndex{3}) == 6);
    CHECK(MomentFunctional::atomic(2, {Atom{{1, 2}, 1}}).moment(MultiIndex{2, 1}) == 2);
    for (const auto& nf : support::test_functionals()) {
        CHECK(nf.f.moment(MultiIndex(nf.f.dim())) == 1);
    }
}

TEST_CASE("inner products")
{
    const auto f = MomentFunctional::gaussian_product(1);
    const auto x = Polynomial<Rational>::variable(1, 0);
    const auto one = Polynomial<Rational>::constant(1, 1);
    CHECK(f.inner_product(x, x) == q("1/2"));
    CHECK(f.inner_product(one, one) == 1);
    CHECK(f.inner_product(one, x) == 0);
}

TEST_CASE("product moments against high-precision quadrature")
{
    std::mt19937 rng(2024);
    SECTION("gaussian")
    {
        const auto f = MomentFunctional::gaussian_product(2);
        const oracle::real mass = oracle::gaussian_integral(0);
        for (int t = 0; t < 20; ++t) {
            const auto beta = random_beta(rng, 2, 6);
            const oracle::real expect =
                oracle::gaussian_integral(beta[0]) * oracle::gaussian_integral(beta[1]) / (mass * mass);
            CHECK(oracle::close(oracle::to_real(f.moment(beta)), expect, tolerance));
        }
        CHECK(oracle::close(oracle::real(f.mass_factor().to_double()), mass * mass, oracle::real("1e-14")));
    }
    SECTION("gamma")
    {
        const std::vector<Rational> alpha{q("1/2"), q("-1/3")};
        const auto f = MomentFunctional::gamma_product(alpha);
        for (int t = 0; t < 20; ++t) {
            const auto beta = random_beta(rng, 2, 5);
            oracle::real expect = 1;
            for (std::size_t i = 0; i < 2; ++i) {
                expect *= oracle::gamma_integral(alpha[i], beta[i]) / oracle::gamma_integral(alpha[i], 0);
            }
            CHECK(oracle::close(oracle::to_real(f.moment(beta)), expect, tolerance));
        }
        const oracle::real mass = oracle::gamma_integral(alpha[0], 0) * oracle::gamma_integral(alpha[1], 0);
        CHECK(oracle::close(oracle::real(f.mass_factor().to_double()), mass, oracle::real("1e-14")));
    }
    SECTION("beta")
    {
        const std::vector<Rational> a{q("1/2"), 0};
        const std::vector<Rational> b{q("-1/2"), q("2/3")};
        const auto f = MomentFunctional::beta_product(a, b);
        for (int t = 0; t < 20; ++t) {
            const auto beta = random_beta(rng, 2, 6);
            oracle::real expect = 1;
            for (std::size_t i = 0; i < 2; ++i) {
                expect *= oracle::beta_integral(a[i], b[i], beta[i]) / oracle::beta_integral(a[i], b[i], 0);
            }
            CHECK(oracle::close(oracle::to_real(f.moment(beta)), expect, oracle::real("1e-25")));
        }
        const oracle::real mass = oracle::beta_integral(a[0], b[0], 0) * oracle::beta_integral(a[1], b[1], 0);
        CHECK(oracle::close(oracle::real(f.mass_factor().to_double()), mass, oracle::real("1e-14")));
    }
}

TEST_CASE("mass factor examples")
{
    CHECK(MomentFunctional::gaussian_product(2).mass_factor() == SymbolicReal::pi_power(1));
    CHECK(MomentFunctional::gamma_product({0, 0}).mass_factor() == SymbolicReal(1));
    CHECK(MomentFunctional::beta_product({0}, {0}).mass_factor() == SymbolicReal(2));
    try {
        (void)MomentFunctional::atomic(1, {Atom{{0}, 1}}).mass_factor();
        FAIL("expected no_mass_factor");
    } catch (const error& e) {
        CHECK(e.code() == errc::no_mass_factor);
    }
}

TEST_CASE("beta moments satisfy their recurrence")
{
    const Rational a = q("2/5");
    const Rational b = q("-3/4");
    const auto m = beta_moments_1d(a, b, 10);
    for (int k = 1; k < 10; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        CHECK((a + b + 2 + k) * m[ks + 1] == (b - a) * m[ks] + k * m[ks - 1]);
    }
}

TEST_CASE("atomic moments are weighted point evaluations")
{
    const auto f = MomentFunctional::atomic(2, {Atom{{q("1/2"), -1}, q("1/4")}, Atom{{3, 2}, q("3/4")}});
    CHECK(f.moment(MultiIndex{2, 1}) == q("1/4") * q("1/4") * -1 + q("3/4") * 9 * 2);
}

TEST_CASE("functional validation")
{
    auto code_of = [](auto&& fn) {
        try {
            fn();
        } catch (const error& e) {
            return e.code();
        }
        return errc::invalid_input;
    };
    CHECK(code_of([] { (void)MomentFunctional::gamma_product({-1}); }) == errc::parameter_out_of_range);
    CHECK(code_of([] { (void)MomentFunctional::beta_product({0}, {0, 0}); }) == errc::dimension_mismatch);
    CHECK_THROWS_AS(MomentFunctional::atomic(1, {Atom{{0}, q("1/2")}}), error);
    CHECK_THROWS_AS(MomentFunctional::atomic(1, {Atom{{0}, q("1/2")}, Atom{{0}, q("1/2")}}), error);

    MomentTable t;
    t.max_degree = 2;
    t.values.emplace(MultiIndex{0}, 1);
    t.values.emplace(MultiIndex{1}, 0);
    const auto f = MomentFunctional::table(1, t);
    CHECK(code_of([&] { (void)f.moment(MultiIndex{2}); }) == errc::insufficient_moments);
    CHECK(code_of([&] { (void)f.moment(MultiIndex{3}); }) == errc::insufficient_moments);
    t.values[MultiIndex{0}] = 2;
    CHECK(code_of([&] { (void)MomentFunctional::table(1, t); }) == errc::not_a_state);
}
