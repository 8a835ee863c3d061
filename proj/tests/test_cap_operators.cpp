#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace jacobi_mv;
using support::q;

TEST_CASE("operator examples")
{
    const auto g = build_cap_operators(decompose<Rational>(MomentFunctional::gaussian_product(1), 5));
    for (int n = 0; n <= g.top_level(); ++n) {
        CHECK(g.zero(0, n).is_zero());
    }
    CHECK(g.minus(0, 1)(0, 0) == q("1/2"));
    CHECK(g.minus(0, 0).is_zero());

    const auto l = build_cap_operators(decompose<Rational>(MomentFunctional::gamma_product({0}), 2));
    CHECK(l.zero(0, 0)(0, 0) == 1);
}

TEST_CASE("block shapes and depth limits")
{
    const auto ops = build_cap_operators(decompose<Rational>(MomentFunctional::gaussian_product(3), 3));
    CHECK(ops.top_level() == 2);
    for (std::size_t j = 0; j < 3; ++j) {
        for (int n = 0; n <= 2; ++n) {
            CHECK(ops.plus(j, n).rows() == slice_dimension(3, n + 1));
            CHECK(ops.plus(j, n).cols() == slice_dimension(3, n));
            CHECK(ops.zero(j, n).rows() == slice_dimension(3, n));
        }
    }
    try {
        (void)ops.plus(0, 3);
        FAIL("expected insufficient_depth");
    } catch (const error& e) {
        CHECK(e.code() == errc::insufficient_depth);
    }
    CHECK_THROWS_AS(ops.plus(3, 0), error);
    CHECK_THROWS_AS(build_cap_operators(decompose<Rational>(MomentFunctional::gaussian_product(1), 0)), error);
}

TEST_CASE("quantum decomposition and adjoint identities for every test functional")
{
    for (const auto& nf : support::test_functionals()) {
        INFO(nf.name);
        const auto ops = build_cap_operators(decompose<Rational>(nf.f, 5));
        const auto qd = verify_quantum_decomposition(ops);
        CHECK(qd.passed);
        CHECK(qd.checks > 0);
        const auto adj = verify_adjoints(ops);
        CHECK(adj.passed);
        INFO(adj.witness);
    }
}

TEST_CASE("a mutated operator fails the quantum decomposition check")
{
    const auto ops = build_cap_operators(decompose<Rational>(MomentFunctional::gaussian_product(2), 3));
    const auto bad = ops.with_entry(cap_kind::minus, 1, 2, 0, 1, q("7/3"));
    const auto r = verify_quantum_decomposition(bad);
    CHECK_FALSE(r.passed);
    CHECK_FALSE(r.witness.empty());
    CHECK_FALSE(verify_adjoints(ops.with_entry(cap_kind::plus, 0, 0, 1, 0, q("1/2"))).passed);
}

TEST_CASE("preservation vanishes for symmetric weights")
{
    for (const auto& f : {MomentFunctional::gaussian_product(2), MomentFunctional::beta_product({0, q("1/2")}, {0, q("1/2")}),
                          MomentFunctional::beta_product({q("-1/2")}, {q("-1/2")})}) {
        const auto ops = build_cap_operators(decompose<Rational>(f, 4));
        for (std::size_t j = 0; j < f.dim(); ++j) {
            for (int n = 0; n <= ops.top_level(); ++n) {
                CHECK(ops.zero(j, n).is_zero());
            }
        }
    }
}

TEST_CASE("creators act as index shifts on the monic basis")
{
    const auto ops = build_cap_operators(decompose<Rational>(MomentFunctional::gamma_product({1, q("1/2")}), 3));
    for (int n = 0; n <= 2; ++n) {
        const ClassBasis from(2, n);
        const ClassBasis to(2, n + 1);
        for (std::size_t j = 0; j < 2; ++j) {
            for (std::size_t c = 0; c < from.size(); ++c) {
                for (std::size_t r = 0; r < to.size(); ++r) {
                    CHECK(ops.plus(j, n)(r, c) == (to[r] == from[c].raised(j) ? 1 : 0));
                }
            }
        }
    }
}

TEST_CASE("degenerate functionals keep exact identities on the non-null part")
{
    const auto f = MomentFunctional::atomic(2, {Atom{{0, 0}, q("1/2")}, Atom{{1, 1}, q("1/2")}});
    const auto ops = build_cap_operators(decompose<Rational>(f, 4));
    CHECK(verify_quantum_decomposition(ops).passed);
    CHECK(verify_adjoints(ops).passed);
}

TEST_CASE("thread budget does not change results")
{
    const auto b = decompose<Rational>(MomentFunctional::beta_product({0, 1, q("1/2")}, {1, 0, 0}), 3);
    setenv("JACOBI_MV_THREADS", "1", 1);
    const auto serial = build_cap_operators(b);
    setenv("JACOBI_MV_THREADS", "3", 1);
    const auto threaded = build_cap_operators(b);
    unsetenv("JACOBI_MV_THREADS");
    for (std::size_t j = 0; j < 3; ++j) {
        for (int n = 0; n <= 2; ++n) {
            CHECK(serial.zero(j, n) == threaded.zero(j, n));
            CHECK(serial.minus(j, n) == threaded.minus(j, n));
        }
    }
}
