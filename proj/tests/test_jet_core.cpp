#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace varcalc;
using namespace varcalc::testing;

TEST_CASE("multi-index arithmetic and binomials") {
    MultiIndex k({2, 1}), l({1, 1});
    CHECK(k.order() == 3);
    CHECK(l.leq(k));
    CHECK_FALSE(k.leq(l));
    CHECK(multi_binomial(k, l) == 2); // (2 choose 1)(1 choose 1)
    CHECK(multi_binomial(l, k) == 0);
    CHECK((k + l) == MultiIndex({3, 2}));
    CHECK((k - l) == MultiIndex({1, 0}));
    CHECK(k.min(MultiIndex({1, 5})) == MultiIndex({1, 1}));

    int count = 0;
    for_each_leq(k, [&](const MultiIndex&) { ++count; });
    CHECK(count == 6); // (2+1)(1+1)
}

TEST_CASE("total derivative: product rule and identity") {
    auto spec = kdv_spec();
    DiffPoly u = u_jet(spec, 0), ux = u_jet(spec, 1), uxx = u_jet(spec, 2);

    CHECK(total_derivative(u * ux, 0) == ux * ux + u * uxx);
    CHECK(total_derivative(u * ux, mi1(0)) == u * ux);
}

TEST_CASE("mixed total derivatives commute (2 dims, oracle = both orders)") {
    auto spec = make_spec({"x", "y"}, {"u", "v"});
    Rng rng;
    for (int i = 0; i < 50; ++i) {
        DiffPoly p = rand_poly(spec, rng, 3, 3, 2);
        DiffPoly xy = total_derivative(total_derivative(p, 0), 1);
        DiffPoly yx = total_derivative(total_derivative(p, 1), 0);
        CHECK(xy == yx);
        CHECK(total_derivative(p, MultiIndex({1, 1})) == xy);
    }
}

TEST_CASE("total derivatives commute in 3 dims") {
    auto spec = make_spec({"x", "y", "z"}, {"u"});
    Rng rng(kSeed + 1);
    for (int i = 0; i < 20; ++i) {
        DiffPoly p = rand_poly(spec, rng, 2, 2, 2);
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = a + 1; b < 3; ++b)
                CHECK(total_derivative(total_derivative(p, a), b) ==
                      total_derivative(total_derivative(p, b), a));
    }
}

TEST_CASE("dimension mismatch is rejected") {
    auto spec = kdv_spec();
    CHECK_THROWS_AS(total_derivative(u_jet(spec, 0), MultiIndex({1, 0})), SpecMismatchError);
}

TEST_CASE("partial derivatives") {
    auto spec = kdv_spec();
    DiffPoly u = u_jet(spec, 0), ux = u_jet(spec, 1);
    JetVar vx{0, mi1(1)};

    CHECK(partial_jet(u * ux, vx) == u);
    CHECK(partial_jet(u * u, vx).is_zero());

    Rng rng(kSeed + 2);
    auto spec2 = make_spec({"x", "y"}, {"u", "v"});
    for (int i = 0; i < 50; ++i) {
        DiffPoly p = rand_poly(spec2, rng), q = rand_poly(spec2, rng);
        JetVar v{rng.range(0, 1), rand_multi(rng, 2, 2)};
        CHECK(partial_jet(p * q, v) == partial_jet(p, v) * q + p * partial_jet(q, v));
    }
}

TEST_CASE("frechet derivative: chain rule with a fresh field") {
    auto spec = extend_spec(kdv_spec(), {"eta"});
    DiffPoly u = u_jet(spec, 0), uxx = u_jet(spec, 2);
    DiffPoly eta = DiffPoly::var(spec, 1, mi1(0));
    std::vector<DiffPoly> dir{eta, DiffPoly::zero(spec)};

    CHECK(frechet(u * uxx, dir) == uxx * eta + u * total_derivative(eta, mi1(2)));
    CHECK(frechet(DiffPoly::constant(spec, rat(5)), dir).is_zero());
    CHECK_THROWS_AS(frechet(u, std::vector<DiffPoly>{eta}), SpecMismatchError);
}

TEST_CASE("frechet is a derivation and is linear in the direction") {
    auto spec = make_spec({"x"}, {"u", "v"});
    Rng rng(kSeed + 3);
    for (int i = 0; i < 50; ++i) {
        DiffPoly p = rand_poly(spec, rng), q = rand_poly(spec, rng);
        std::vector<DiffPoly> dir{rand_poly(spec, rng), rand_poly(spec, rng)};
        CHECK(frechet(p * q, dir) == frechet(p, dir) * q + p * frechet(q, dir));

        std::vector<DiffPoly> dir2{rand_poly(spec, rng), rand_poly(spec, rng)};
        Rational c = rng.rational();
        std::vector<DiffPoly> combo{dir[0] * c + dir2[0], dir[1] * c + dir2[1]};
        CHECK(frechet(p, combo) == frechet(p, dir) * c + frechet(p, dir2));
    }
}

TEST_CASE("higher Eulerian operators on u*u_xx") {
    auto spec = kdv_spec();
    DiffPoly u = u_jet(spec, 0), ux = u_jet(spec, 1), uxx = u_jet(spec, 2);
    DiffPoly f = u * uxx;

    CHECK(higher_euler(f, 0, mi1(0)) == uxx * rat(2));
    CHECK(higher_euler(f, 0, mi1(1)) == ux * rat(-2));
    CHECK(higher_euler(f, 0, mi1(2)) == u);
    CHECK(higher_euler(f, 0, mi1(3)).is_zero());

    CHECK(higher_euler(u, 0, mi1(0)) == DiffPoly::constant(spec, rat(1)));
    CHECK(higher_euler(u, 0, mi1(1)).is_zero());
}

TEST_CASE("classical Euler operator annihilates total derivatives") {
    auto spec = kdv_spec();
    Rng rng(kSeed + 4);
    for (int i = 0; i < 50; ++i) {
        DiffPoly g = rand_poly(spec, rng, 3, 3, 2);
        CHECK(higher_euler(total_derivative(g, 0), 0, mi1(0)).is_zero());
    }
}

TEST_CASE("defining identity: sum_K D_K(E^K_A(f) eta_A) = f'(eta)") {
    auto base = make_spec({"x"}, {"u", "v"});
    auto spec = extend_spec(base, {"etau", "etav"});
    Rng rng(kSeed + 5);
    std::vector<DiffPoly> eta{DiffPoly::var(spec, 2, mi1(0)), DiffPoly::var(spec, 3, mi1(0)),
                              DiffPoly::zero(spec), DiffPoly::zero(spec)};
    for (int i = 0; i < 40; ++i) {
        DiffPoly f = lift(rand_poly(base, rng, 3, 3, 3), spec);
        DiffPoly lhs(spec);
        for (int a = 0; a < 2; ++a) {
            for_each_leq(f.max_deriv(a), [&](const MultiIndex& k) {
                lhs = lhs + total_derivative(higher_euler(f, a, k) * eta[a], k);
            });
        }
        CHECK(lhs == frechet(f, eta));
    }
}

TEST_CASE("ring laws on random triples") {
    auto spec = make_spec({"x", "y"}, {"u", "v"});
    Rng rng(kSeed + 6);
    for (int i = 0; i < 30; ++i) {
        DiffPoly p = rand_poly(spec, rng), q = rand_poly(spec, rng), r = rand_poly(spec, rng);
        CHECK(p + q == q + p);
        CHECK((p + q) + r == p + (q + r));
        CHECK(p * q == q * p);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
        CHECK((p - p).is_zero());
    }
}

TEST_CASE("zero propagates through all operations") {
    auto spec = kdv_spec();
    DiffPoly z = DiffPoly::zero(spec);
    CHECK(total_derivative(z, 0).is_zero());
    CHECK(partial_jet(z, JetVar{0, mi1(0)}).is_zero());
    CHECK(higher_euler(z, 0, mi1(0)).is_zero());
    CHECK((z * u_jet(spec, 0)).is_zero());
}
