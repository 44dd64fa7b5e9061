#include "doctest.h"
#include "golden.hpp"
#include "oracle.hpp"

#include <cmath>

using namespace cmq;

namespace {

const std::vector<Order>& zeta5_orders() {
    static const std::vector<Order> os = enumerate_s_full_orders(zeta5_field(), 60, false);
    return os;
}

const nlohmann::json& zeta5_golden(const Order& o) {
    for (const auto& g : golden("derived")["zeta5_orders"])
        if (g["key"].get<std::string>() == o.key()) return g;
    throw std::runtime_error("no golden entry for " + o.key());
}

}  // namespace

TEST_CASE("class groups of Z[zeta5] and Z[sqrt(-2+sqrt2)] are trivial") {
    for (auto [A, B] : std::vector<std::pair<long, long>>{{5, 5}, {4, 2}}) {
        Order ok = Order::maximal(CMField::make(A, B));
        PicardGroup pic(ok, 1);
        CHECK(pic.size() == 1);
        PolarisedClassGroup pc(ok, 1);
        CHECK(pc.size() == 1);
        CHECK(ppav_classes(ok).size() == 1);
    }
}

TEST_CASE("Minkowski bounds") {
    const auto& e = golden("elementary");
    CHECK(std::abs(minkowski_bound(Order::maximal(zeta5_field())).get_d() - e["minkowski_zeta5"].get<double>()) < 1e-3);
    CHECK(std::abs(minkowski_bound(Order::maximal(CMField::make(4, 2))).get_d() - e["minkowski_8_4_2"].get<double>()) < 1e-3);
}

TEST_CASE("zeta5 orders: units, Picard and polarised class groups") {
    REQUIRE(zeta5_orders().size() == golden("derived")["zeta5_orders"].size());
    for (const auto& o : zeta5_orders()) {
        const auto& g = zeta5_golden(o);
        const Int idx = o.index_in(Order::maximal(o.field()));
        CHECK(idx == g["index"].get<long>());
        OrderUnits u = order_units(o);
        CHECK(u.w == g["roots_of_unity"].get<long>());
        CHECK(u.w_k / u.w * u.eps_k_step == g["unit_index"].get<long>());
        PicardGroup pic(o, idx);
        CHECK(pic.size() == g["picard"].get<long>());
        CHECK(pic.count() == pic.size());
        PolarisedClassGroup pc(o, idx);
        CHECK(pc.size() == g["polarised"].get<long>());
        for (std::size_t i = 0; i < pc.count(); ++i) CHECK(pc.rep(i).valid());
        auto pp = ppav_classes(o);
        CHECK(pp.size() == g["ppav"].get<std::size_t>());
        // principally polarised classes form a torsor under the polarised class group or are empty
        CHECK((pp.empty() || Int(pp.size()) == pc.size()));
        for (const auto& c : pp) CHECK(c.valid());
        for (std::size_t i = 0; i < pp.size(); ++i)
            for (std::size_t j = i + 1; j < pp.size(); ++j) CHECK_FALSE(ppav_equivalent(pp[i], pp[j]));
    }
}

TEST_CASE("polarised class counts agree with the enumeration oracle") {
    for (const auto& o : zeta5_orders()) {
        const Int idx = o.index_in(Order::maximal(o.field()));
        if (idx > 9) continue;
        CHECK(Int(oracle::polarised_count(o, idx, 30).classes) == PolarisedClassGroup(o, idx).size());
        CHECK(oracle::picard_order(o, idx, 1) == PicardGroup(o, idx).size());
    }
}

TEST_CASE("Picard order of suborders of (4,2) matches the unit formula") {
    FieldPtr k = CMField::make(4, 2);
    for (const auto& o : orders_with_conductor_dividing(k, 6)) {
        if (!o.is_cc_stable()) continue;
        CHECK(oracle::unit_index(o) == order_units(o).w_k / order_units(o).w * order_units(o).eps_k_step);
        CHECK(PicardGroup(o, 6).size() == oracle::picard_order(o, 6, 1));
    }
}

TEST_CASE("Picard group multiplication") {
    const Order* o9 = nullptr;
    for (const auto& o : zeta5_orders())
        if (o.index_in(Order::maximal(o.field())) == 9) o9 = &o;
    REQUIRE(o9);
    PicardGroup pic(*o9, 3);
    const AbelianGroup& g = pic.group();
    for (std::size_t i = 0; i < pic.count(); ++i)
        for (std::size_t j = 0; j < pic.count(); ++j) {
            auto [m, x] = pic.multiply(i, j);
            CHECK(pic.rep(i) * pic.rep(j) == pic.rep(m) * x);
            CHECK(pic.coords(m) == g.add(pic.coords(i), pic.coords(j)));
            auto [l, y] = pic.locate(pic.rep(i) * pic.rep(j));
            CHECK(l == m);
            CHECK(pic.rep(i) * pic.rep(j) == pic.rep(l) * y);
        }
}

TEST_CASE("principal ideals") {
    FieldPtr k = zeta5_field();
    Order ok = Order::maximal(k);
    for (const auto& p : primes_above(ok, 11)) {
        auto x = is_principal(p.ideal);
        REQUIRE(x);
        CHECK(FracIdeal::principal(ok, *x) == p.ideal);
        CHECK(abs(k->norm(*x)) == 11);
    }
    std::mt19937_64 rng(61);
    for (auto [A, B] : std::vector<std::pair<long, long>>{{5, 5}, {4, 2}, {13, 13}, {26, 52}}) {
        FieldPtr f = CMField::make(A, B);
        Order o = Order::maximal(f);
        for (int t = 0; t < 10; ++t) {
            Elem x = oracle::random_elem(o, rng, 4);
            auto y = is_principal(FracIdeal::principal(o, x));
            REQUIRE(y);
            Elem u = *y / x;
            CHECK(o.contains(u));
            CHECK(abs(f->norm(u)) == 1);
        }
    }
}

TEST_CASE("a non-principal class is detected") {
    FieldPtr k = CMField::make(17, 68);
    Order ok = Order::maximal(k);
    PicardGroup pic(ok, 1);
    CHECK(pic.size() == 4);
    for (const auto& g : pic.snf_generators()) CHECK_FALSE(is_principal(g));
    CHECK(PicardGroup(ok, 6).size() == pic.size());
}

TEST_CASE("isogenies between principally polarised classes") {
    auto pp = ppav_classes(Order::maximal(zeta5_field()));
    REQUIRE(pp.size() == 1);
    auto mu = isogeny_test(pp[0], pp[0], 1);
    REQUIRE(mu);
    CHECK(check_isogeny(pp[0], pp[0], 1, *mu));
    auto other = ppav_classes(Order::maximal(CMField::make(4, 2)));
    REQUIRE(!other.empty());
    CHECK_THROWS(isogeny_test(pp[0], other[0], 2));
}

TEST_CASE("morphism kernels are trivial from an order to itself") {
    for (const auto& o : zeta5_orders()) {
        const Int idx = o.index_in(Order::maximal(o.field()));
        if (idx > 9) continue;
        MorphismKernel mk = morphism_kernel(o, o, idx);
        CHECK(mk.kernel_size == 1);
        CHECK(mk.domain_size == PolarisedClassGroup(o, idx).size());
    }
}
