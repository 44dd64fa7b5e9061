// Regenerates tests/golden/derived.json from the brute-force oracles.
//   derive_golden > tests/golden/derived.json

#include "../oracle.hpp"

#include <iostream>

using namespace cmq;

namespace {

Json jnum(const Int& x) { return x.fits_slong_p() ? Json(x.get_si()) : Json(x.get_str()); }

Int isqrt_exact(const Rat& r) {
    if (r.get_den() != 1 || !is_square(r.get_num())) throw std::logic_error("derive_golden: not a square");
    return isqrt(r.get_num());
}

Json field_entry(const TableRow& row) {
    FieldPtr k = field_of(row);
    Order ok = Order::maximal(k);
    Rat disc = oracle::discriminant(ok);
    Rat rel = abs(disc) / Rat(k->D() * k->D());
    Json e{{"disc", jnum(disc.get_num())}, {"rel_disc_norm", jnum(rel.get_num())}};
    if (k->is_zeta5()) return e;
    Json m = Json::object();
    for (long p : {2L, 3L, 5L, 7L}) {
        if (Int(6) * rel.get_num() % p != 0) continue;
        auto o = oracle::minimal_s_full(k, p);
        if (!o) throw std::runtime_error("derive_golden: no minimal s-full order");
        m[std::to_string(p)] = jnum(isqrt_exact(oracle::discriminant(*o) / disc));
    }
    e["omin_index"] = m;
    return e;
}

}  // namespace

int main() {
    Json out;
    Json fields = Json::object();
    for (const auto& rows : {table1(), table2()})
        for (const auto& row : rows) fields[row.label()] = field_entry(row);
    out["fields"] = fields;

    FieldPtr z = zeta5_field();
    Order ok = Order::maximal(z);
    Json zo = Json::array();
    auto [t4, t5] = theorem13_orders();
    for (const auto& o : enumerate_s_full_orders(z, 60, false)) {
        Int idx = isqrt_exact(oracle::discriminant(o) / oracle::discriminant(ok));
        auto pc = oracle::polarised_count(o, idx, 30);
        zo.push_back(Json{{"key", o.key()},
                          {"index", jnum(idx)},
                          {"roots_of_unity", oracle::roots_of_unity_in(o)},
                          {"unit_index", oracle::unit_index(o)},
                          {"picard", oracle::picard_order(o, idx, 1)},
                          {"polarised", pc.classes},
                          {"ppav", ppav_classes(o).size()},
                          {"theorem13", o == t4 ? "index4" : o == t5 ? "index5" : ""}});
    }
    std::sort(zo.begin(), zo.end(), [](const Json& a, const Json& b) { return a["index"].get<long>() < b["index"].get<long>(); });
    out["zeta5_orders"] = zo;

    Json ex53 = Json::object();
    for (long F : {3L, 5L, 7L}) {
        auto [o, op] = example53_orders(F);
        ex53[std::to_string(F)] = Json{{"units_O", oracle::residue_unit_count(o, F * F)},
                                       {"units_O_prime", oracle::residue_unit_count(op, F * F)}};
    }
    out["example53"] = ex53;

    Order e52 = example52_order();
    Order ok52 = Order::maximal(e52.field());
    out["example52"] = Json{{"index", jnum(isqrt_exact(oracle::discriminant(e52) / oracle::discriminant(ok52)))},
                            {"rel_disc_norm", jnum(Rat(abs(oracle::discriminant(ok52)) / Rat(784)).get_num())}};

    Json ray = Json::object();
    for (auto [label, A, B, f] : std::vector<std::tuple<std::string, long, long, long>>{
             {"[5,5,5]", 5, 5, 2}, {"[5,5,5]", 5, 5, 3}, {"[5,15,45]", 15, 45, 2}, {"[8,4,2]", 4, 2, 2}, {"[8,4,2]", 4, 2, 3}}) {
        FieldPtr k = CMField::make(A, B);
        ray[label + " f=" + std::to_string(f)] = Json{{"residue_units", oracle::residue_unit_count(Order::maximal(k), f)},
                                                      {"unit_image", oracle::unit_image_count(k, f)}};
    }
    out["ray"] = ray;
    std::cout << out.dump(2) << "\n";
}
