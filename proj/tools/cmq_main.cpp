#include "cmq/workbench.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <sstream>

using namespace cmq;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string field, poly;
    long f = 1;
    bool json = false;
    std::vector<std::string> gen, gen2;
    long order_f = 0, order2_f = 0;
    bool all = false;
    std::string row;
    long l = 2;
    std::size_t c1 = 0, c2 = 0;
    bool sweep = false;
    bool example = false;
    std::optional<long> bound;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

FieldPtr parse_field(const Options& o) {
    if (!o.field.empty() && !o.poly.empty()) throw UsageError("give only one of --field and --poly");
    if (!o.field.empty()) {
        auto p = split(o.field, ',');
        if (p.size() != 3) throw UsageError("--field expects D,A,B");
        return CMField::make(Int(p[0]), Int(p[1]), Int(p[2]));
    }
    if (!o.poly.empty()) {
        auto p = split(o.poly, ',');
        if (p.size() != 2) throw UsageError("--poly expects A,B");
        return CMField::make(Int(p[0]), Int(p[1]));
    }
    throw UsageError("a field is required (--field D,A,B or --poly A,B)");
}

Elem parse_elem(const FieldPtr& k, const std::string& s) {
    auto p = split(s, ',');
    if (p.size() != 4) throw UsageError("element coordinates expect c0,c1,c2,c3");
    std::vector<Rat> c;
    for (const auto& x : p) {
        Rat q(x);
        q.canonicalize();
        c.push_back(q);
    }
    return k->make_elem(c);
}

std::optional<Order> parse_order(const FieldPtr& k, const std::vector<std::string>& gens, long f) {
    if (gens.empty() && f == 0) return std::nullopt;
    std::vector<Elem> g;
    for (const auto& s : gens) g.push_back(parse_elem(k, s));
    Order ok = Order::maximal(k);
    if (f > 0) return Order::generated(k, g, scaled_lattice(ok, f));
    return Order::generated(k, g);
}

Order order_or_max(const FieldPtr& k, const std::vector<std::string>& gens, long f) {
    auto o = parse_order(k, gens, f);
    return o ? *o : Order::maximal(k);
}

std::vector<Order> cc_orders(const FieldPtr& k, long f) {
    std::vector<Order> out;
    for (const auto& o : orders_with_conductor_dividing(k, f))
        if (o.is_cc_stable()) out.push_back(o);
    return out;
}

Json group_json(const AbelianGroup& g) {
    Json a = Json::array();
    for (const auto& d : g.invariants) a.push_back(d.get_str());
    return a;
}

class Printer {
public:
    explicit Printer(bool json) : json_(json) {}
    void report(const Report& r) {
        ok_ = ok_ && r.pass;
        if (json_) std::cout << r.to_json().dump() << "\n";
        else std::cout << (r.pass ? "PASS " : "FAIL ") << r.claim << " " << r.inputs.dump() << "\n  " << r.computed.dump() << "\n";
    }
    void doc(const Json& j) {
        if (json_) std::cout << j.dump() << "\n";
        else std::cout << j.dump(2) << "\n";
    }
    void note(const std::string& s) {
        if (!json_) std::cout << s << "\n";
    }
    int code() const { return ok_ ? 0 : 1; }

private:
    bool json_;
    bool ok_ = true;
};

void add_common(CLI::App* app, Options& o, bool two_orders = false) {
    app->add_option("--field", o.field, "real discriminant and coefficients D,A,B");
    app->add_option("--poly", o.poly, "coefficients A,B of x^4 + A x^2 + B");
    app->add_option("--f", o.f, "modulus f")->check(CLI::PositiveNumber);
    app->add_flag("--json", o.json, "one JSON document per result");
    app->add_option("--gen", o.gen, "generator c0,c1,c2,c3 of the order (power basis)");
    app->add_option("--order-f", o.order_f, "include f O_K in the order");
    if (two_orders) {
        app->add_option("--gen2", o.gen2, "generator of the second order");
        app->add_option("--order2-f", o.order2_f, "include f O_K in the second order");
    }
}

int run(int argc, char** argv) {
    CLI::App app{"cmq: orders, class groups and CM types in quartic CM fields"};
    app.require_subcommand(1);
    Options o;

    auto* field = app.add_subcommand("field", "field data");
    auto* field_info_cmd = field->add_subcommand("info", "invariants of the field");
    field->require_subcommand(1);
    add_common(field_info_cmd, o);

    auto* order = app.add_subcommand("order", "orders of the field");
    order->require_subcommand(1);
    auto* order_max = order->add_subcommand("maximal", "the maximal order");
    auto* order_eq = order->add_subcommand("equation", "the equation order Z[x]");
    auto* order_gen = order->add_subcommand("generated", "order generated by --gen and --order-f");
    auto* order_list = order->add_subcommand("list", "cc-stable orders containing f O_K");
    auto* order_sfull = order->add_subcommand("sfull", "cc-stable s-full orders containing f O_K");
    for (auto* c : {order_max, order_eq, order_gen, order_list, order_sfull}) add_common(c, o);

    auto* cg = app.add_subcommand("classgroup", "Picard group of an order, ideals prime to f");
    add_common(cg, o);
    auto* pol = app.add_subcommand("polarised", "polarised class group");
    add_common(pol, o);
    auto* ppav = app.add_subcommand("ppav", "principally polarised ideal classes");
    add_common(ppav, o);
    auto* psi_cmd = app.add_subcommand("psi", "relative norm map on residue units for O and O'");
    add_common(psi_cmd, o, true);
    auto* omin_cmd = app.add_subcommand("omin", "the minimal order O_min,f");
    add_common(omin_cmd, o);

    auto* verify = app.add_subcommand("verify", "verification pipelines");
    verify->require_subcommand(1);
    auto* v_thm1 = verify->add_subcommand("thm1", "index quotient divides 2^10 3^4 under S containment");
    add_common(v_thm1, o, true);
    auto* v_thm2 = verify->add_subcommand("thm2", "[O_K:O']^2 divides 2^40 3^16 rel_disc_norm");
    add_common(v_thm2, o);
    auto* v_l51 = verify->add_subcommand("lemma51", "relative index divisibility");
    add_common(v_l51, o);
    v_l51->add_flag("--example", o.example, "use the square root of 7 example order");
    auto* v_t1 = verify->add_subcommand("table1", "indices i1, i2, i3 of the first table");
    add_common(v_t1, o);
    v_t1->add_flag("--all", o.all, "every row");
    v_t1->add_option("--row", o.row, "a single row D,A,B");
    auto* v_t2 = verify->add_subcommand("table2", "O_min stabilisation for the second table");
    add_common(v_t2, o);
    v_t2->add_flag("--all", o.all, "include the non-zeta5 fields of the first table");
    auto* v_z5 = verify->add_subcommand("zeta5", "s-full orders of Q(zeta5)");
    add_common(v_z5, o);
    v_z5->add_option("--bound", o.bound, "conductor bound (default: per-prime stabilisation)");
    for (auto* c : {v_thm1, v_thm2, v_l51}) c->add_flag("--sweep", o.sweep, "all cc-stable orders containing f O_K");

    auto* iso = app.add_subcommand("isogeny", "(l,l)-isogeny test between PPAV classes");
    add_common(iso, o, true);
    iso->add_option("--l", o.l, "l (prime, or 1 for isomorphism)");
    iso->add_option("--c1", o.c1, "class index for the first order");
    iso->add_option("--c2", o.c2, "class index for the second order");
    auto* filt = app.add_subcommand("filter", "prime support of the endomorphism ring filter");
    add_common(filt, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Printer out(o.json);

    if (field_info_cmd->parsed()) {
        out.doc(field_info(parse_field(o)));
    } else if (order->parsed()) {
        FieldPtr k = parse_field(o);
        Order ok = Order::maximal(k);
        auto one = [&](const Order& x) {
            Json j = order_json(x);
            j["index"] = x.index_in(ok).get_str();
            j["cc_stable"] = x.is_cc_stable();
            j["real_index"] = real_suborder(x).index_in(real_suborder(ok)).get_str();
            return j;
        };
        if (order_max->parsed()) out.doc(one(ok));
        else if (order_eq->parsed()) out.doc(one(Order::equation_order(k)));
        else if (order_gen->parsed()) out.doc(one(order_or_max(k, o.gen, o.order_f)));
        else if (order_list->parsed()) {
            for (const auto& x : cc_orders(k, o.f)) out.doc(one(x));
        } else {
            for (const auto& x : enumerate_s_full_orders(k, o.f)) out.doc(one(x));
        }
    } else if (cg->parsed()) {
        FieldPtr k = parse_field(o);
        PicardGroup p(order_or_max(k, o.gen, o.order_f), o.f);
        Json reps = Json::array();
        for (std::size_t i = 0; i < p.count(); ++i) reps.push_back(ideal_json(p.rep(i)));
        out.doc(Json{{"order", order_json(p.order())}, {"f", o.f}, {"invariant_factors", group_json(p.group())}, {"representatives", reps}});
    } else if (pol->parsed()) {
        FieldPtr k = parse_field(o);
        PolarisedClassGroup c(order_or_max(k, o.gen, o.order_f), o.f);
        Json reps = Json::array();
        for (std::size_t i = 0; i < c.count(); ++i) reps.push_back(Json{{"ideal", ideal_json(c.rep(i).a)}, {"alpha", elem_json(c.rep(i).alpha)}});
        out.doc(Json{{"order", order_json(c.order())}, {"f", o.f}, {"invariant_factors", group_json(c.group())}, {"representatives", reps}});
    } else if (ppav->parsed()) {
        FieldPtr k = parse_field(o);
        Order x = order_or_max(k, o.gen, o.order_f);
        Json reps = Json::array();
        for (const auto& c : ppav_classes(x, o.f)) reps.push_back(Json{{"ideal", ideal_json(c.a)}, {"xi", elem_json(c.xi)}});
        out.doc(Json{{"order", order_json(x)}, {"f", o.f}, {"count", reps.size()}, {"representatives", reps}});
    } else if (psi_cmd->parsed()) {
        FieldPtr k = parse_field(o);
        Order a = order_or_max(k, o.gen, o.order_f);
        Order b = order_or_max(k, o.gen2, o.order2_f);
        PsiData d = psi(a, b, o.f);
        out.doc(Json{{"f", o.f},
                     {"domain_factors", group_json(d.domain)},
                     {"codomain_factors", group_json(d.codomain)},
                     {"kernel_factors", group_json(d.kernel.structure)},
                     {"kernel_exponent", d.kernel_exponent().get_str()}});
    } else if (omin_cmd->parsed()) {
        FieldPtr k = parse_field(o);
        Json fj = Json::array({k->D().get_str(), k->A().get_str(), k->B().get_str()});
        if (k->is_zeta5()) {
            Json mins = Json::array();
            for (const auto& m : omin_zeta5(k, o.f)) mins.push_back(order_json(m));
            out.doc(Json{{"field", fj}, {"f", o.f}, {"minimal_orders", mins}});
        } else {
            OminData d = omin_data(k, o.f, standard_type(k));
            Json gens = Json::array(), mus = Json::array();
            for (const auto& a : d.rays.ideals) gens.push_back(ideal_json(a));
            for (const auto& m : d.mu) mus.push_back(elem_json(m));
            Json stable = nullptr;
            auto pf = prime_factors(Int(o.f));
            if (pf.size() == 1) stable = omin_stabilize(k, pf[0], standard_type(k)).first;
            out.doc(Json{{"field", fj}, {"f", o.f}, {"generators", gens}, {"mu", mus}, {"omin", order_json(d.order)}, {"stable_k", stable}});
        }
    } else if (v_thm1->parsed()) {
        FieldPtr k = parse_field(o);
        if (o.sweep) {
            SOracle so(k, o.f);
            Order ok = Order::maximal(k);
            auto os = cc_orders(k, o.f);
            for (const auto& a : os)
                for (const auto& b : os)
                    if (!(k->is_zeta5() && a == ok)) out.report(verify_thm_general(a, b, o.f, &so));
        } else {
            auto a = parse_order(k, o.gen, o.order_f);
            auto b = parse_order(k, o.gen2, o.order2_f);
            if (!a || !b) throw UsageError("verify thm1 needs two orders (--gen/--order-f and --gen2/--order2-f) or --sweep");
            out.report(verify_thm_general(*a, *b, o.f));
        }
    } else if (v_thm2->parsed()) {
        FieldPtr k = parse_field(o);
        if (o.sweep) {
            SOracle so(k, o.f);
            for (const auto& b : cc_orders(k, o.f)) out.report(verify_thm_maximal(b, o.f, &so));
        } else {
            auto b = parse_order(k, o.gen, o.order_f);
            if (!b) throw UsageError("verify thm2 needs an order (--gen/--order-f) or --sweep");
            out.report(verify_thm_maximal(*b, o.f));
        }
    } else if (v_l51->parsed()) {
        if (o.example) out.report(example52_report());
        else {
            FieldPtr k = parse_field(o);
            if (o.sweep) {
                for (const auto& b : cc_orders(k, o.f)) out.report(verify_lemma_relindex(b));
            } else {
                auto b = parse_order(k, o.gen, o.order_f);
                if (!b) throw UsageError("verify lemma51 needs an order, --sweep or --example");
                out.report(verify_lemma_relindex(*b));
            }
        }
    } else if (v_t1->parsed()) {
        std::size_t done = 0;
        for (const auto& r : table1()) {
            if (!o.row.empty() && o.row != r.label().substr(1, r.label().size() - 2)) continue;
            if (!r.has_chi()) {
                out.note("skip " + r.label() + " (blank row)");
                continue;
            }
            out.report(table1_pipeline(r));
            ++done;
        }
        if (!o.row.empty() && done == 0) throw UsageError("no table row " + o.row + " with chi");
    } else if (v_t2->parsed()) {
        std::vector<TableRow> rows = table2();
        if (o.all)
            for (const auto& r : table1())
                if (r.has_chi()) rows.push_back(r);
        for (const auto& r : rows) out.report(omin_report(field_of(r)));
    } else if (v_z5->parsed()) {
        std::optional<Int> b;
        if (o.bound) b = Int(*o.bound);
        Report r = verify_zeta5(b);
        out.note(std::to_string(r.computed["count"].get<std::size_t>()) + " orders");
        out.report(r);
        out.report(verify_zeta5_isogenies());
    } else if (iso->parsed()) {
        FieldPtr k = parse_field(o);
        auto a = ppav_classes(order_or_max(k, o.gen, o.order_f));
        auto b = ppav_classes(order_or_max(k, o.gen2, o.order2_f));
        if (o.c1 >= a.size() || o.c2 >= b.size()) throw UsageError("class index out of range");
        auto mu = isogeny_test(a[o.c1], b[o.c2], o.l);
        Report r;
        r.claim = "isogeny";
        r.inputs = Json{{"field", k->label()}, {"l", o.l}, {"c1", o.c1}, {"c2", o.c2}};
        r.computed = Json{{"related", mu.has_value()}};
        if (mu) r.witnesses.push_back(Json{{"mu", elem_json(*mu)}, {"verified", check_isogeny(a[o.c1], b[o.c2], o.l, *mu)}});
        r.pass = true;
        out.report(r);
    } else if (filt->parsed()) {
        out.report(filter_report(parse_field(o), o.f));
    }
    return out.code();
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
