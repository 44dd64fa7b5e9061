#include "doctest.h"
#include "golden.hpp"
#include "oracle.hpp"

using namespace cmq;

namespace {

// element orders of Z^n / M Z^n by walking the coset box of the HNF
std::map<long, long> quotient_profile(const IntMat& rel) {
    const std::size_t n = rel.rows();
    IntMat h = oracle::hnf(rel);
    Lattice l = Lattice::from_basis(to_rat(rel));
    std::map<long, long> prof;
    std::vector<long> x(n, 0);
    for (;;) {
        std::vector<Rat> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = x[i];
        long k = 1;
        std::vector<Rat> y = v;
        while (!l.contains(y)) {
            for (std::size_t i = 0; i < n; ++i) y[i] += v[i];
            ++k;
        }
        ++prof[k];
        std::size_t i = 0;
        while (i < n && ++x[i] >= h(i, i).get_si()) {
            x[i] = 0;
            ++i;
        }
        if (i == n) break;
    }
    return prof;
}

}  // namespace

TEST_CASE("units mod 8 from generators 3 and 5") {
    std::function<long(const long&, const long&)> mul = [](const long& a, const long& b) { return a * b % 8; };
    std::function<bool(const long&)> is_one = [](const long& a) { return a == 1; };
    auto gs = group_structure<long>({3, 5}, 1, mul, is_one);
    CHECK(to_string(gs.group) == "[2,2]");
    const auto& e = golden("elementary")["units_mod_8"];
    CHECK(gs.group.order() == e["order"].get<long>());
    CHECK(gs.group.exponent() == e["max_element_order"].get<long>());
    CHECK(gs.elements.size() == e["generated_by_3_5"].get<std::size_t>());
    for (long x : {1L, 3L, 5L, 7L}) {
        auto d = gs.dlog(x);
        REQUIRE(d);
    }
}

TEST_CASE("units mod n match brute-force element orders") {
    for (long n = 3; n <= 60; ++n) {
        std::vector<long> gens;
        for (long a = 2; a < n; ++a)
            if (std::gcd(a, n) == 1) gens.push_back(a);
        std::function<long(const long&, const long&)> mul = [n](const long& a, const long& b) { return a * b % n; };
        std::function<long(const long&)> key = [](const long& a) { return a; };
        auto gs = group_structure_hashed<long, long>(gens, 1, mul, key);
        CHECK(oracle::abelian_order_profile(gs.group) == oracle::unit_order_profile(n));
    }
}

TEST_CASE("presentations match brute-force quotients") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 150; ++t) {
        const std::size_t n = 1 + t % 3;
        IntMat rel = oracle::random_matrix(rng, n, n, -6, 6);
        Int d = oracle::det(rel);
        if (d == 0 || abs(d) > 400) continue;
        Presentation p = present(rel);
        CHECK(p.group.order() == abs(d));
        CHECK(oracle::abelian_order_profile(p.group) == quotient_profile(rel));
        for (std::size_t i = 0; i + 1 < p.group.rank(); ++i) CHECK(p.group.invariants[i + 1] % p.group.invariants[i] == 0);
    }
}

TEST_CASE("subgroups, quotients and kernels against enumeration") {
    std::mt19937_64 rng(22);
    std::uniform_int_distribution<long> c(0, 11);
    AbelianGroup g{{Int(2), Int(6), Int(12)}};
    auto all = g.elements();
    REQUIRE(all.size() == 144);
    for (int t = 0; t < 40; ++t) {
        std::vector<IVec> gens;
        for (int j = 0; j < 1 + t % 3; ++j) gens.push_back(g.reduce({c(rng), c(rng), c(rng)}));
        std::set<IVec> span{g.reduce({0, 0, 0})};
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& x : std::vector<IVec>(span.begin(), span.end()))
                for (const auto& y : gens) grew |= span.insert(g.add(x, y)).second;
        }
        CHECK(subgroup_order(g, gens) == Int(span.size()));
        CHECK(quotient(g, gens).group.order() * Int(span.size()) == g.order());
        for (const auto& x : all) CHECK(subgroup_contains(g, gens, x) == (span.count(g.reduce(x)) > 0));
        // hom to Z/12 sending generator j to a random class
        AbelianGroup h{{Int(12)}};
        IntMat m(1, 3);
        for (std::size_t j = 0; j < 3; ++j) m(0, j) = (j == 0 ? 6 * c(rng) : j == 1 ? 2 * c(rng) : c(rng));
        long ker = 0;
        for (const auto& x : all) {
            Int s = 0;
            for (std::size_t j = 0; j < 3; ++j) s += m(0, j) * x[j];
            if (s % 12 == 0) ++ker;
        }
        CHECK(hom_kernel(g, h, m).order() == ker);
        CHECK(hom_image_order(g, h, m) * ker == 144);
    }
}
