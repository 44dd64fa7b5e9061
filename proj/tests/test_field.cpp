#include "doctest.h"
#include "golden.hpp"
#include "oracle.hpp"

using namespace cmq;

TEST_CASE("(6,1) is biquadratic with three quadratic subfields") {
    FieldPtr k = CMField::make(6, 1);
    CHECK(k->galois_type() == GaloisType::Biquadratic);
    CHECK(k->roots({1, 0, 6, 0, 1}).size() == 4);
    // i, sqrt 2 and sqrt -2 all lie in K
    for (long d : {-1L, 2L, -2L}) CHECK(k->sqrt(k->rat(d)).has_value());
    CHECK_FALSE(k->sqrt(k->rat(3)).has_value());
}

TEST_CASE("invalid defining polynomials are rejected") {
    CHECK_THROWS_AS(CMField::make(4, 3), std::invalid_argument);
    CHECK_THROWS_AS(CMField::make(-1, 3), std::invalid_argument);
    CHECK_THROWS_AS(CMField::make(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(CMField::make(13, 4, 2), std::invalid_argument);
}

TEST_CASE("galois types") {
    CHECK(CMField::make(5, 5)->is_cyclic());
    CHECK(CMField::make(4, 2)->is_cyclic());
    CHECK(CMField::make(6, 7)->galois_type() == GaloisType::NonGalois);
    for (const auto& rows : {table1(), table2()})
        for (const auto& r : rows) CHECK(field_of(r)->is_cyclic());
}

TEST_CASE("sigma squared is complex conjugation on Q(zeta5)") {
    FieldPtr k = CMField::make(5, 5);
    std::mt19937_64 rng(31);
    for (int t = 0; t < 100; ++t) {
        Elem x = oracle::random_elem(*k, rng);
        Elem y = oracle::random_elem(*k, rng);
        CHECK(k->sigma(k->sigma(x)) == x.conj());
        CHECK(k->sigma(x, 4) == x);
        CHECK(k->sigma(x * y) == k->sigma(x) * k->sigma(y));
    }
    // sigma(alpha) is a root of the defining polynomial
    CHECK(eval_poly({5, 0, 5, 0, 1}, k->sigma_alpha()).is_zero());
}

TEST_CASE("norm is multiplicative and equals the determinant of multiplication") {
    std::mt19937_64 rng(32);
    for (auto [a, b] : std::vector<std::pair<long, long>>{{5, 5}, {4, 2}, {6, 7}, {30, 50}}) {
        FieldPtr k = CMField::make(a, b);
        for (int t = 0; t < 25; ++t) {
            Elem x = oracle::random_elem(*k, rng), y = oracle::random_elem(*k, rng);
            CHECK(k->norm(x * y) == k->norm(x) * k->norm(y));
            CHECK(k->norm(x) == oracle::rat_det(k->mult_matrix(x)));
            CHECK(k->norm(x) > 0);
            CHECK(x * x.inverse() == k->one());
            CHECK(k->trace(x + y) == k->trace(x) + k->trace(y));
        }
    }
}

TEST_CASE("fundamental units of real quadratic orders are minimal") {
    for (long d : {2L, 3L, 5L, 6L, 7L, 13L, 17L, 29L, 37L, 53L, 61L}) {
        auto [x, y] = quadratic_fundamental_unit(d);
        // omega0 = sqrt d or (1 + sqrt d)/2
        const bool half = d % 4 == 1;
        auto norm = [&](const Int& a, const Int& b) -> Int {
            return half ? Int(a * a + a * b - b * b * (d - 1) / 4) : Int(a * a - d * b * b);
        };
        CHECK(abs(norm(x, y)) == 1);
        CHECK(y > 0);
        for (long b = 1; b < y; ++b)
            for (long a = -4 * b * d; a <= 4 * b * d; ++a) CHECK(abs(norm(a, b)) != 1);
    }
}

TEST_CASE("roots of unity") {
    CHECK(CMField::make(5, 5)->units().w == 10);
    CHECK(CMField::make(10, 5)->units().w == 10);
    CHECK(CMField::make(4, 2)->units().w == 2);
    CHECK(CMField::make(13, 13)->units().w == 2);
    FieldPtr k = CMField::make(5, 5);
    const UnitData& u = k->units();
    CHECK(u.zeta.pow(10) == k->one());
    CHECK(u.zeta.pow(5) != k->one());
    CHECK(k->is_totally_positive(u.eta0));
    CHECK(u.n0 == u.epsK * u.epsK.conj());
}

TEST_CASE("table polynomials have roots in their fields") {
    for (const auto& r : table1()) {
        if (!r.has_chi()) continue;
        FieldPtr k = field_of(r);
        auto roots = k->roots(r.chi);
        CHECK(!roots.empty());
        for (const auto& x : roots) CHECK(eval_poly(r.chi, x).is_zero());
        auto nf = cm_normal_form(r.chi);
        if (r.chi[1] == 0 && r.chi[3] == 0) {
            REQUIRE(nf);
            CHECK(nf->first == r.A);
            CHECK(nf->second == r.B);
        }
        if (nf) CHECK(!CMField::make(nf->first, nf->second)->roots(r.chi).empty());
    }
}

TEST_CASE("embeddings are consistent with exact signs") {
    FieldPtr k = CMField::make(4, 2);
    std::mt19937_64 rng(33);
    for (int t = 0; t < 40; ++t) {
        Elem x = oracle::random_elem(*k, rng);
        Elem r = x * x.conj();
        for (int e = 0; e < 2; ++e) {
            CHECK(k->real_sign(r, e) == 1);
            CHECK(std::abs(std::norm(k->embed(x, e)) - k->real_embed(r, e)) < 1e-6L * (1 + k->real_embed(r, e)));
        }
    }
}
