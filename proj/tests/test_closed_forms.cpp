#include <catch2/catch_amalgamated.hpp>

#include "oracles/stieltjes.hpp"
#include "support.hpp"

using namespace jacobi_mv;
using support::q;

namespace
{

std::vector<FamilySpec> one_dimensional_specs()
{
    return {FamilySpec::hermite(1),
            FamilySpec::laguerre({0}),
            FamilySpec::laguerre({q("3/2")}),
            FamilySpec::jacobi({0}, {0}),
            FamilySpec::jacobi({q("1/2")}, {q("-1/2")}),
            FamilySpec::jacobi({2}, {q("-2/3")}),
            FamilySpec::gegenbauer({q("3/4")}),
            FamilySpec::chebyshev1(1),
            FamilySpec::chebyshev2(1),
            FamilySpec::legendre(1)};
}

Polynomial<Rational> x_poly(std::initializer_list<const char*> coeffs)
{
    Polynomial<Rational> p(1);
    int k = 0;
    for (const char* c : coeffs) {
        p.add_term(MultiIndex{k++}, q(c));
    }
    return p;
}

} // namespace

TEST_CASE("family polynomial examples")
{
    CHECK(family_polynomial(FamilySpec::hermite(1), MultiIndex{2}) == x_poly({"-2", "0", "4"}));
    CHECK(family_polynomial(FamilySpec::laguerre({0}), MultiIndex{1}) == x_poly({"1", "-1"}));
    for (const auto& spec : one_dimensional_specs()) {
        CHECK(family_polynomial(spec, MultiIndex{0}) == Polynomial<Rational>::constant(1, 1));
    }
    const auto h = family_polynomial(FamilySpec::hermite(2), MultiIndex{1, 2});
    CHECK(h.coefficient(MultiIndex{1, 2}) == 8);
    CHECK(h.coefficient(MultiIndex{1, 0}) == -4);
}

TEST_CASE("norm examples")
{
    CHECK(family_norm_squared(FamilySpec::hermite(2), MultiIndex{1, 1}) ==
          SymbolicReal(4) * SymbolicReal::pi_power(1));
    CHECK(family_norm_squared(FamilySpec::laguerre({0}), MultiIndex{3}) == SymbolicReal(1));
    CHECK(family_norm_squared(FamilySpec::jacobi({0}, {0}), MultiIndex{0}) == SymbolicReal(2));
    CHECK(family_norm_squared(FamilySpec::hermite(1), MultiIndex{2}) ==
          SymbolicReal(8) * SymbolicReal::pi_power(q("1/2")));
}

TEST_CASE("creation power examples")
{
    CHECK(creation_power(FamilySpec::hermite(1), MultiIndex{4}, 0, 3).factor == q("1/8"));
    CHECK(creation_power(FamilySpec::hermite(2), MultiIndex{0, 1}, 1, 3).result == MultiIndex{0, 4});
    CHECK(creation_power(FamilySpec::laguerre({0}), MultiIndex{0}, 0, 2).factor == 2);
    CHECK(creation_power(FamilySpec::jacobi({0}, {0}), MultiIndex{0}, 0, 1).factor == 1);
    CHECK_THROWS_AS(creation_power(FamilySpec::hermite(1), MultiIndex{0}, 0, 0), error);
    CHECK_THROWS_AS(creation_power(FamilySpec::hermite(1), MultiIndex{0}, 1, 1), error);
}

TEST_CASE("creation powers satisfy the m to m+1 step")
{
    for (const auto& spec : one_dimensional_specs()) {
        INFO(spec.describe());
        for (int k = 0; k <= 3; ++k) {
            for (int m = 1; m <= 3; ++m) {
                const auto pm = creation_power(spec, MultiIndex{k}, 0, m);
                const auto one = creation_power(spec, pm.result, 0, 1);
                const auto next = creation_power(spec, MultiIndex{k}, 0, m + 1);
                CHECK(next.factor == pm.factor * one.factor);
                CHECK(next.result == MultiIndex{k + m + 1});
            }
        }
    }
}

TEST_CASE("closed form examples")
{
    const auto h = closed_form_entries(FamilySpec::hermite(2), 2);
    REQUIRE(h.size() == 3);
    const SymbolicReal pi = SymbolicReal::pi_power(1);
    CHECK(h[0].omega == SymbolicReal(q("1/2")) * pi);
    CHECK(h[1].omega == SymbolicReal(q("1/4")) * pi);
    CHECK(h[2].omega == SymbolicReal(q("1/2")) * pi);
    CHECK(closed_form_alpha(FamilySpec::hermite(2), 3, 1).is_zero());

    const auto lag = FamilySpec::laguerre({0, 0});
    CHECK(closed_form_omega(lag, 1) == Matrix<Rational>::identity(2));
    const auto a = closed_form_alpha(lag, 1, 0);
    CHECK(a(0, 0) == 3);
    CHECK(a(1, 1) == 1);

    CHECK(closed_form_omega(FamilySpec::legendre(1), 1)(0, 0) == q("1/3"));
    CHECK(closed_form_alpha(FamilySpec::jacobi({q("1/3"), 2}, {q("1/3"), 2}), 2, 1).is_zero());
    CHECK(closed_form_alpha(FamilySpec::gegenbauer({q("1/4")}), 2, 0).is_zero());
}

TEST_CASE("family polynomials are the monic Stieltjes polynomials up to scale")
{
    for (const auto& spec : one_dimensional_specs()) {
        INFO(spec.describe());
        const auto f = spec.functional();
        const auto rec = oracle::stieltjes([&](int k) { return f.moment(MultiIndex{k}); }, 5);
        std::vector<Polynomial<Rational>> monic{Polynomial<Rational>::constant(1, 1)};
        monic.push_back(x_poly({"0", "1"}) - Polynomial<Rational>::constant(1, rec.b[0]));
        for (std::size_t k = 1; k < 5; ++k) {
            monic.push_back(mul_by_variable(monic[k], 0) - monic[k] * rec.b[k] -
                            monic[k - 1] * Rational(rec.h[k] / rec.h[k - 1]));
        }
        for (int k = 0; k <= 5; ++k) {
            const auto p = family_polynomial(spec, MultiIndex{k});
            const Rational lead = p.coefficient(MultiIndex{k});
            REQUIRE(lead != 0);
            CHECK(p * Rational(1 / lead) == monic[static_cast<std::size_t>(k)]);
        }
    }
}

TEST_CASE("norms agree with the moment functional times the mass")
{
    auto specs = one_dimensional_specs();
    specs.push_back(FamilySpec::hermite(2));
    specs.push_back(FamilySpec::laguerre({q("1/2"), 0}));
    specs.push_back(FamilySpec::jacobi({0, 1}, {1, 0}));
    for (const auto& spec : specs) {
        INFO(spec.describe());
        const auto f = spec.functional();
        for (int n = 0; n <= 3; ++n) {
            for (const auto& beta : degree_slice(spec.d, n)) {
                const auto p = family_polynomial(spec, beta);
                const SymbolicReal lhs = SymbolicReal(f.inner_product(p, p)) * spec.mass_factor();
                CHECK(lhs == family_norm_squared(spec, beta));
            }
        }
    }
}

TEST_CASE("closed forms match the pipeline")
{
    std::vector<FamilySpec> specs{FamilySpec::hermite(2),
                                  FamilySpec::laguerre({q("1/2"), q("3/2")}),
                                  FamilySpec::jacobi({0, q("1/2")}, {1, 0}),
                                  FamilySpec::gegenbauer({q("3/2")}),
                                  FamilySpec::chebyshev1(2),
                                  FamilySpec::chebyshev2(1),
                                  FamilySpec::legendre(2)};
    for (const auto& spec : specs) {
        INFO(spec.describe());
        const auto r = verify_family(spec, 3);
        INFO(r.witness);
        CHECK(r.passed);
        CHECK(r.diagonal);
        CHECK_FALSE(r.creation.empty());
    }
}

TEST_CASE("stated specialized formulas")
{
    SECTION("Gegenbauer and Chebyshev second kind agree with the master formula")
    {
        for (const auto& spec : {FamilySpec::gegenbauer({q("3/4"), 2}), FamilySpec::chebyshev2(2)}) {
            for (int n = 0; n <= 3; ++n) {
                for (const auto& nbar : degree_slice(2, n)) {
                    const auto sv = specialized_omega_value(spec, nbar);
                    REQUIRE(sv);
                    CHECK(*sv == closed_form_omega_value(spec, nbar));
                }
            }
            CHECK(verify_family(spec, 3).specialized_discrepancies.empty());
        }
    }
    SECTION("Legendre differs from level 2 on")
    {
        const auto spec = FamilySpec::legendre(1);
        CHECK(*specialized_omega_value(spec, MultiIndex{1}) == closed_form_omega_value(spec, MultiIndex{1}));
        const auto stated = *specialized_omega_value(spec, MultiIndex{2}) / spec.mass_factor();
        CHECK(stated.to_rational() == q("16/45"));
        CHECK(closed_form_omega(spec, 2)(0, 0) == q("4/45"));
        const auto r = verify_family(spec, 3);
        CHECK(r.passed);
        CHECK(r.specialized_discrepancies.size() == 2);
    }
    SECTION("Chebyshev first kind is undefined at zero occupation")
    {
        const auto spec = FamilySpec::chebyshev1(1);
        CHECK_FALSE(specialized_omega_value(spec, MultiIndex{0}));
        for (int k = 1; k <= 3; ++k) {
            const auto stated = *specialized_omega_value(spec, MultiIndex{k});
            CHECK(stated * SymbolicReal(4) == closed_form_omega_value(spec, MultiIndex{k}));
        }
        CHECK(verify_family(spec, 3).passed);
    }
}

TEST_CASE("closed form parameter validation")
{
    CHECK_THROWS_AS(closed_form_omega(FamilySpec::laguerre({-1}), 1), error);
    CHECK_THROWS_AS(closed_form_omega(FamilySpec::gegenbauer({q("-1/2")}), 1), error);
    CHECK_THROWS_AS(family_polynomial(FamilySpec::jacobi({0}, {q("-3/2")}), MultiIndex{1}), error);
    try {
        (void)family_from_string("bessel");
        FAIL("expected unsupported_parameter");
    } catch (const error& e) {
        CHECK(e.code() == errc::unsupported_parameter);
    }
    for (const auto f : {family::hermite, family::laguerre, family::jacobi, family::gegenbauer, family::chebyshev1,
                         family::chebyshev2, family::legendre}) {
        CHECK(family_from_string(to_string(f)) == f);
    }
    // Removable singularity at a + b = -1.
    const auto spec = FamilySpec::jacobi({q("-1/2")}, {q("-1/2")});
    CHECK_NOTHROW(closed_form_alpha(spec, 0, 0));
    CHECK(verify_family(FamilySpec::jacobi({q("-1/3")}, {q("-2/3")}), 3).passed);
}
