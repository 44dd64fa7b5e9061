#include "doctest.h"
#include "golden.hpp"
#include "oracle.hpp"

using namespace cmq;

namespace {

bool hnf_shape(const IntMat& h, std::size_t rank) {
    const std::size_t n = h.rows(), k = h.cols();
    for (std::size_t j = 0; j + rank < k; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (h(i, j) != 0) return false;
    return true;
}

IntMat unimodular(std::mt19937_64& rng, std::size_t n) {
    IntMat u = IntMat::identity(n);
    std::uniform_int_distribution<long> d(-3, 3);
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    for (int s = 0; s < 12; ++s) {
        std::size_t a = idx(rng), b = idx(rng);
        if (a == b) continue;
        long q = d(rng);
        for (std::size_t i = 0; i < n; ++i) u(i, a) += q * u(i, b);
    }
    return u;
}

}  // namespace

TEST_CASE("hnf agrees with the Euclid oracle on random matrices") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    for (int t = 0; t < 300; ++t) {
        IntMat m = oracle::random_matrix(rng, dim(rng), dim(rng) + 1, -9, 9);
        auto r = hnf(m, true);
        CHECK(r.h == oracle::hnf(m));
        CHECK(m * r.u == r.h);
        CHECK(abs(oracle::det(r.u)) == 1);
        CHECK(hnf_shape(r.h, r.rank));
    }
}

TEST_CASE("hnf of a determinant 6 matrix has pivot product 6") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        IntMat d = IntMat::identity(4);
        d(2, 2) = 2;
        d(3, 3) = t % 2 ? -3 : 3;
        IntMat m = unimodular(rng, 4) * d * unimodular(rng, 4);
        REQUIRE(abs(oracle::det(m)) == 6);
        IntMat h = hnf(m).h;
        Int prod = 1;
        for (std::size_t i = 0; i < 4; ++i) prod *= h(i, i);
        CHECK(prod == 6);
        CHECK(h == oracle::hnf(m));
    }
}

TEST_CASE("snf agrees with the determinantal divisor oracle") {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    for (int t = 0; t < 300; ++t) {
        IntMat m = oracle::random_matrix(rng, dim(rng), dim(rng), -6, 6);
        auto s = snf(m, true);
        std::vector<Int> diag;
        for (const auto& x : s.diag) diag.push_back(abs(x));
        CHECK(diag == oracle::snf_diag(m));
        CHECK(s.u * m * s.v == s.d);
    }
    IntMat m(2, 2);
    m(0, 0) = 2;
    m(1, 1) = 3;
    std::vector<long> want = golden("elementary")["snf_diag_2_3"].get<std::vector<long>>();
    auto s = snf(m);
    REQUIRE(s.diag.size() == 2);
    CHECK(s.diag[0] == want[0]);
    CHECK(s.diag[1] == want[1]);
}

TEST_CASE("lll output is reduced and near the brute-force minimum") {
    std::mt19937_64 rng(13);
    int tested = 0;
    for (int t = 0; t < 150; ++t) {
        const std::size_t n = 2 + t % 3;
        IntMat b = oracle::random_matrix(rng, n, n, -7, 7);
        if (abs(oracle::det(b)) < 20) continue;
        RatMat g = to_rat(b.transpose() * b);
        IntMat tr = lll_gram(g);
        CHECK(abs(oracle::det(tr)) == 1);
        RatMat gr = to_rat(tr.transpose()) * g * to_rat(tr);
        CHECK(oracle::lll_reduced(gr, Rat(99, 100)));
        CHECK(is_lll_reduced(gr));
        // |b1|^2 <= (1/(delta - 1/4))^(n-1) lambda_1^2
        Rat factor = 1;
        for (std::size_t i = 1; i < n; ++i) factor *= Rat(100, 74);
        Rat lambda;
        try {
            lambda = oracle::shortest_length(g);
        } catch (const std::runtime_error&) {
            continue;
        }
        CHECK(gr(0, 0) <= factor * lambda);
        ++tested;
    }
    CHECK(tested >= 80);
}

TEST_CASE("lll finds the unit vector in a skewed plane basis") {
    IntMat b(2, 2);
    b(0, 0) = 1;
    b(0, 1) = 100;
    b(1, 1) = 1;
    auto r = lll_reduce(b, RatMat::identity(2));
    Rat best = -1;
    for (std::size_t j = 0; j < 2; ++j) {
        Rat len = 0;
        for (std::size_t i = 0; i < 2; ++i) len += Rat(r.basis(i, j) * r.basis(i, j));
        if (best < 0 || len < best) best = len;
    }
    CHECK(best == 1);
    // every combination with coefficients in [-200, 200]
    Rat brute = -1;
    for (long x = -200; x <= 200; ++x)
        for (long y = -200; y <= 200; ++y) {
            if (!x && !y) continue;
            long u = x + 100 * y, v = y;
            Rat len(u * u + v * v);
            if (brute < 0 || len < brute) brute = len;
        }
    CHECK(brute == best);
}

TEST_CASE("short vector enumeration matches the coordinate box") {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 1 + t % 4;
        IntMat b = oracle::random_matrix(rng, n, n, -4, 4);
        if (oracle::det(b) == 0) continue;
        RatMat g = to_rat(b.transpose() * b);
        Rat bound = g(0, 0) + Rat(t % 7);
        std::set<std::vector<Int>> lib, par;
        for (const auto& v : short_vectors(g, bound)) lib.insert(oracle::canonical_sign(v));
        for (const auto& v : short_vectors_parallel(g, bound)) par.insert(oracle::canonical_sign(v));
        auto brute = oracle::short_vectors(g, bound);
        CHECK(lib == brute);
        CHECK(par == brute);
    }
}

TEST_CASE("shortest vector of an ideal lattice of Z[zeta5]") {
    FieldPtr k = zeta5_field();
    Order ok = Order::maximal(k);
    auto primes = primes_above(ok, 11);
    REQUIRE(!primes.empty());
    std::vector<Elem> b = primes.front().ideal.basis();
    RatMat g = oracle::trace_gram(*k, b);
    Rat lib = -1;
    for (const auto& v : short_vectors(g, oracle::shortest_length(g)))
        if (Rat q = oracle::quad(g, v); lib < 0 || q < lib) lib = q;
    CHECK(lib == oracle::shortest_length(g));
    // a generator of norm 11 has T2 = 2 Tr_{K0}(x xbar) >= 4 sqrt(11)
    CHECK(lib.get_d() >= 4 * std::sqrt(11.0) - 1e-9);
}

TEST_CASE("lattice index of sum and intersection") {
    std::mt19937_64 rng(15);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 2 + t % 3;
        IntMat a = oracle::random_matrix(rng, n, n, -6, 6), b = oracle::random_matrix(rng, n, n, -6, 6);
        if (oracle::det(a) == 0 || oracle::det(b) == 0) continue;
        Lattice l1 = Lattice::from_basis(to_rat(a)), l2 = Lattice::from_basis(to_rat(b));
        Lattice s = l1 + l2, i = l1.intersect(l2);
        CHECK(lattice_index(s, i) == lattice_index(l1, i) * lattice_index(l2, i));
        CHECK(lattice_index(Lattice::standard(n), l1) == Rat(abs(oracle::det(a))));
        CHECK(s.contains(l1));
        CHECK(l2.contains(i));
        CHECK(l1.dual().dual() == l1);
    }
}

TEST_CASE("integer kernel, determinant and solve") {
    std::mt19937_64 rng(16);
    for (int t = 0; t < 60; ++t) {
        IntMat m = oracle::random_matrix(rng, 2 + t % 2, 4, -5, 5);
        IntMat k = integer_kernel(m);
        IntMat z = m * k;
        for (std::size_t i = 0; i < z.rows(); ++i)
            for (std::size_t j = 0; j < z.cols(); ++j) CHECK(z(i, j) == 0);
        CHECK(k.cols() + hnf(m).rank == 4);
        IntMat sq = oracle::random_matrix(rng, 3, 3, -5, 5);
        CHECK(det(sq) == oracle::det(sq));
        if (oracle::det(sq) != 0) {
            std::vector<Rat> rhs{1, 2, 3};
            auto x = solve(to_rat(sq), rhs);
            for (std::size_t i = 0; i < 3; ++i) {
                Rat s = 0;
                for (std::size_t j = 0; j < 3; ++j) s += Rat(sq(i, j)) * x[j];
                CHECK(s == rhs[i]);
            }
        }
    }
}
