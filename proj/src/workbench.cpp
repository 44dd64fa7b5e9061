#include "cmq/workbench.hpp"

#include "cmq/residue.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

namespace cmq {

namespace {

Json jint(const Int& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

Json jrat(const Rat& x) {
    if (x.get_den() == 1) return jint(x.get_num());
    return x.get_str();
}

Json jints(const std::vector<Int>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(jint(x));
    return a;
}

Int ipow(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

long valuation(Int n, const Int& p) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

bool divides(const Int& a, const Int& b) { return b % a == 0; }

Int sub_order(const AbelianGroup& g, const std::vector<IVec>& v) {
    if (g.rank() == 0 || v.empty()) return 1;
    return subgroup_order(g, v);
}

void require_not_biquadratic(const CMField& k) {
    if (k.galois_type() == GaloisType::Biquadratic) throw std::invalid_argument("field is biquadratic");
}

void require_contains_f(const Order& o, const Int& f) {
    if (!o.lattice().contains(scaled_lattice(Order::maximal(o.field()), f)))
        throw std::invalid_argument("f O_K is not contained in the order");
}

Elem zeta5(const CMField& k) { return k.units().zeta.pow(6); }

std::set<std::string> keys(const std::vector<Order>& os) {
    std::set<std::string> s;
    for (const auto& o : os) s.insert(o.key());
    return s;
}

std::vector<Elem> residue_generators(const Order& o, const Int& f) {
    if (f == 1) return {};
    UnitGroup ug(ResidueRing::of_order(o, f));
    std::vector<Elem> out;
    for (const auto& g : ug.generators()) out.push_back(ug.ring().to_elem(g));
    return out;
}

}  // namespace

// ------------------------------------------------------------------ tables

std::string TableRow::label() const { return "[" + D.get_str() + "," + A.get_str() + "," + B.get_str() + "]"; }

std::vector<Int> parse_poly(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("parse_poly: empty polynomial");
    std::vector<Int> c;
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        Int coef = j > i ? Int(s.substr(i, j - i)) : Int(1);
        std::size_t deg = 0;
        const std::size_t start = i;
        i = j;
        if (i < s.size() && s[i] == '*') ++i;
        if (i < s.size() && s[i] == 'x') {
            ++i;
            deg = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::size_t k = i;
                while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
                if (k == i) throw std::invalid_argument("parse_poly: bad exponent in " + text);
                deg = std::stoul(s.substr(i, k - i));
                i = k;
            }
        } else if (start == i) {
            throw std::invalid_argument("parse_poly: bad term in " + text);
        }
        if (i < s.size() && s[i] != '+' && s[i] != '-') throw std::invalid_argument("parse_poly: bad term in " + text);
        if (c.size() <= deg) c.resize(deg + 1, Int(0));
        c[deg] += sign * coef;
    }
    while (c.size() > 1 && c.back() == 0) c.pop_back();
    return c;
}

std::vector<TableRow> load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j = Json::parse(in);
    std::vector<TableRow> rows;
    for (const auto& r : j.at("rows")) {
        TableRow t;
        t.D = r.at("D").get<long>();
        t.A = r.at("A").get<long>();
        t.B = r.at("B").get<long>();
        if (r.contains("n") && !r["n"].is_null()) t.n = r["n"].get<long>();
        if (r.contains("chi") && !r["chi"].is_null()) {
            t.chi_text = r["chi"].get<std::string>();
            t.chi = parse_poly(t.chi_text);
        }
        auto opt = [&](const char* key) -> std::optional<long> {
            if (r.contains(key) && !r[key].is_null()) return r[key].get<long>();
            return std::nullopt;
        };
        t.i1 = opt("i1");
        t.i2 = opt("i2");
        t.i3 = opt("i3");
        rows.push_back(std::move(t));
    }
    return rows;
}

std::string data_dir() {
    if (const char* d = std::getenv("CMQ_DATA_DIR")) return d;
#ifdef CMQ_DATA_DIR
    return CMQ_DATA_DIR;
#else
    return "data";
#endif
}

std::vector<TableRow> table1() { return load_table(data_dir() + "/table1.json"); }
std::vector<TableRow> table2() { return load_table(data_dir() + "/table2.json"); }

FieldPtr field_of(const TableRow& row) { return CMField::make(row.D, row.A, row.B); }

Json Report::to_json() const {
    return Json{{"claim", claim},
                {"inputs", inputs},
                {"computed", computed},
                {"expected", expected},
                {"verdict", pass ? "pass" : "fail"},
                {"witnesses", witnesses}};
}

// --------------------------------------------------------------- utilities

Int rel_disc_norm(const FieldPtr& k) {
    Rat r = Order::maximal(k).disc() / Rat(k->D() * k->D());
    if (r.get_den() != 1) throw std::logic_error("rel_disc_norm: not an integer");
    return abs(r.get_num());
}

Json order_json(const Order& o) {
    const Lattice& l = o.lattice();
    Json h = Json::array();
    for (std::size_t i = 0; i < l.hnf().rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < l.hnf().cols(); ++j) row.push_back(jint(l.hnf()(i, j)));
        h.push_back(row);
    }
    return Json{{"denom", jint(l.denom())}, {"hnf", h}};
}

Json elem_json(const Elem& x) {
    Json a = Json::array();
    for (const auto& c : x.coords()) a.push_back(jrat(c));
    return a;
}

Json ideal_json(const FracIdeal& a) {
    Json j = order_json(Order(a.order().field(), a.lattice(), false));
    j["norm"] = jrat(a.norm());
    return j;
}

Json field_info(const FieldPtr& k) {
    Order ok = Order::maximal(k);
    Json j{{"D", jint(k->D())},
           {"A", jint(k->A())},
           {"B", jint(k->B())},
           {"galois", k->is_cyclic() ? "cyclic" : k->galois_type() == GaloisType::Biquadratic ? "biquadratic" : "non-galois"},
           {"disc", jrat(ok.disc())},
           {"rel_disc_norm", jint(rel_disc_norm(k))},
           {"roots_of_unity", k->units().w},
           {"eps0", elem_json(k->units().eps0)},
           {"maximal_order", order_json(ok)},
           {"equation_order_index", jint(Order::equation_order(k).index_in(ok))}};
    if (k->is_cyclic()) j["sigma_alpha"] = elem_json(k->sigma_alpha());
    return j;
}

// ------------------------------------------------------------------ Table 1

Report table1_pipeline(const TableRow& row) {
    Report r;
    r.claim = "table1 indices";
    r.inputs = Json{{"field", row.label()}, {"chi", row.chi_text}};
    if (!row.has_chi() || !row.i1 || !row.i2 || !row.i3) throw std::invalid_argument("table1_pipeline: blank row " + row.label());
    FieldPtr k = field_of(row);
    Order ok = Order::maximal(k);
    auto roots = k->roots(row.chi);
    if (roots.empty()) throw std::runtime_error("table1_pipeline: chi has no root in K");
    Order o1 = Order::generated(k, {roots.front()});
    Order o2 = o1 + o1.conj();
    Int i2 = o2.index_in(ok);
    Order o3 = o2 + omin(k, i2);
    Int i1 = o1.index_in(ok), i3 = o3.index_in(ok);
    r.computed = Json{{"i1", jint(i1)}, {"i2", jint(i2)}, {"i3", jint(i3)}, {"O3", order_json(o3)}};
    r.expected = Json{{"i1", *row.i1}, {"i2", *row.i2}, {"i3", *row.i3}};
    r.pass = i1 == *row.i1 && i2 == *row.i2 && i3 == *row.i3;
    if (!r.pass) r.witnesses.push_back(Json{{"mismatch", r.computed}});
    if (i3 != 1) {
        UniquenessResult u = isogeny_uniqueness(o3, 2);
        r.computed["O3_classes"] = u.classes;
        r.computed["O3_classes_linked_to_maximal"] = u.holds();
        r.expected["O3_classes_linked_to_maximal"] = true;
        r.pass = r.pass && u.holds();
    }
    return r;
}

// ------------------------------------------------------------------ O_min

std::vector<Int> omin_primes(const FieldPtr& k) { return prime_factors(Int(6) * rel_disc_norm(k)); }

std::vector<OminStep> omin_profile(const FieldPtr& k) {
    Order ok = Order::maximal(k);
    CMType phi = standard_type(k);
    std::vector<OminStep> out;
    for (const auto& p : omin_primes(k)) {
        auto [j, o] = omin_stabilize(k, p, phi);
        out.push_back(OminStep{p, j, o.index_in(ok)});
    }
    return out;
}

Report omin_report(const FieldPtr& k) {
    Report r;
    r.claim = "omin stabilisation";
    r.inputs = Json{{"field", k->label()}};
    r.pass = true;
    Json steps = Json::array();
    for (const auto& s : omin_profile(k)) {
        steps.push_back(Json{{"p", jint(s.p)}, {"k", s.k}, {"index", jint(s.index)}});
        bool ok = s.p == 2 ? (s.index == 1 || s.index == 2 || s.index == 4) : (s.k == 0 && s.index == 1);
        if (!ok) {
            r.pass = false;
            r.witnesses.push_back(steps.back());
        }
    }
    r.computed = Json{{"steps", steps}};
    r.expected = Json{{"odd_p", "k = 0, index 1"}, {"p = 2", "index in {1, 2, 4}"}};
    return r;
}

// ------------------------------------------------------------ S containment

SOracle::SOracle(FieldPtr k, const Int& f) : k_(std::move(k)), f_(f), phi_(standard_type(k_)) {
    rg_ = ray_class_generators(k_, f_);
    if (!rg_.certified()) throw std::runtime_error("SOracle: ray class generators not certified");
}

const SImage& SOracle::image(const Order& o) {
    auto it = cache_.find(o.key());
    if (it != cache_.end()) return it->second;
    require_contains_f(o, f_);
    PolarisedClassGroup c(o, f_);
    SImage im{c.group(), {}};
    for (const auto& a : rg_.ideals)
        im.images.push_back(c.dlog(PolarisedPair{reflex_type_norm(a, phi_).contract(o), k_->rat(a.norm())}));
    return cache_.emplace(o.key(), std::move(im)).first->second;
}

bool SOracle::contained(const Order& o, const Order& o_prime) {
    const SImage& x = image(o);
    const SImage& y = image(o_prime);
    const std::size_t r1 = x.group.rank(), r2 = y.group.rank();
    if (r2 == 0) return true;
    IntMat rel(r1 + r2, r1 + r2);
    for (std::size_t i = 0; i < r1; ++i) rel(i, i) = x.group.invariants[i];
    for (std::size_t i = 0; i < r2; ++i) rel(r1 + i, r1 + i) = y.group.invariants[i];
    Presentation p = present(rel);
    std::vector<IVec> joint;
    for (std::size_t i = 0; i < x.images.size(); ++i) {
        IVec v = x.images[i];
        v.insert(v.end(), y.images[i].begin(), y.images[i].end());
        joint.push_back(p.map(v));
    }
    return sub_order(x.group, x.images) == sub_order(p.group, joint);
}

bool s_contained(const Order& o, const Order& o_prime, const Int& f) {
    SOracle s(o.field(), f);
    return s.contained(o, o_prime);
}

// ---------------------------------------------------------------- theorems

Report verify_thm_general(const Order& o, const Order& o_prime, const Int& f, SOracle* oracle) {
    const FieldPtr& k = o.field();
    require_not_biquadratic(*k);
    Order ok = Order::maximal(k);
    if (k->is_zeta5() && o == ok) throw std::invalid_argument("verify_thm_general: O is Z[zeta5]");
    Order osub = o.intersect(o_prime);
    require_contains_f(osub, f);
    Report r;
    r.claim = "thm_general";
    r.inputs = Json{{"field", k->label()}, {"O", order_json(o)}, {"O_prime", order_json(o_prime)}, {"f", jint(f)}};
    Int a = osub.index_in(o);
    Int b = real_suborder(osub).index_in(real_suborder(o));
    Rat q(a, b);
    q.canonicalize();
    PsiData ps = psi_sub(o, osub, f);
    bool s_holds;
    std::string oracle_name;
    if (k->is_cyclic()) {
        s_holds = oracle ? oracle->contained(o, o_prime) : s_contained(o, o_prime, f);
        oracle_name = "s_member";
    } else {
        s_holds = ps.kernel_exponent() <= 2;
        oracle_name = "psi_kernel_exponent";
    }
    const Int bound = Int(1024) * 81;
    bool q_ok = q.get_den() == 1 && divides(q.get_num(), bound);
    r.computed = Json{{"index", jint(a)},
                      {"real_index", jint(b)},
                      {"q", jrat(q)},
                      {"s_condition", s_holds},
                      {"oracle", oracle_name},
                      {"psi_kernel_exponent", jint(ps.kernel_exponent())}};
    r.expected = Json{{"q", "integer dividing 2^10 3^4 when the S-condition holds"}};
    if (k->is_cyclic() && ps.kernel_exponent() <= 2 && !s_holds)
        r.witnesses.push_back(Json{{"note", "psi kernel exponent <= 2 but S_O not contained in S_O'"}});
    if (k->is_cyclic() && s_holds && ps.kernel_exponent() > 2)
        r.witnesses.push_back(Json{{"psi_kernel_exponent", jint(ps.kernel_exponent())}, {"note", "S contained but psi kernel exponent > 2"}});
    r.pass = !s_holds || q_ok;
    if (k->is_cyclic() && s_holds && ps.kernel_exponent() > 2) r.pass = false;
    if (s_holds && !q_ok) r.witnesses.push_back(Json{{"q", jrat(q)}});
    return r;
}

Report verify_thm_maximal(const Order& o_prime, const Int& f, SOracle* oracle) {
    const FieldPtr& k = o_prime.field();
    require_not_biquadratic(*k);
    if (k->is_zeta5()) throw std::invalid_argument("verify_thm_maximal: field is Q(zeta5)");
    Order ok = Order::maximal(k);
    Report r;
    r.claim = "thm_maximal";
    r.inputs = Json{{"field", k->label()}, {"O_prime", order_json(o_prime)}, {"f", jint(f)}};
    bool s_holds = k->is_cyclic() ? (oracle ? oracle->contained(ok, o_prime) : s_contained(ok, o_prime, f)) : psi_sub(ok, o_prime, f).kernel_exponent() <= 2;
    Int idx = o_prime.index_in(ok);
    Int rhs = ipow(2, 40) * ipow(3, 16) * rel_disc_norm(k);
    bool div = divides(idx * idx, rhs);
    r.computed = Json{{"index", jint(idx)}, {"rel_disc_norm", jint(rel_disc_norm(k))}, {"s_condition", s_holds}, {"divides", div}};
    r.expected = Json{{"divides", "[O_K:O']^2 | 2^40 3^16 rel_disc_norm when the S-condition holds"}};
    r.pass = !s_holds || div;
    if (s_holds && !div) r.witnesses.push_back(Json{{"index", jint(idx)}});
    return r;
}

Report verify_lemma_relindex(const Order& osub) {
    const FieldPtr& k = osub.field();
    Order ok = Order::maximal(k);
    if (!osub.is_cc_stable()) throw std::invalid_argument("verify_lemma_relindex: order is not cc-stable");
    Report r;
    r.claim = "lemma_relindex";
    r.inputs = Json{{"field", k->label()}, {"O", order_json(osub)}};
    Int idx = osub.index_in(ok);
    Int c = real_suborder(osub).index_in(real_suborder(ok));
    Int lhs = ipow(c, 4);
    Int rhs = rel_disc_norm(k) * idx * idx;
    bool div = divides(lhs, rhs);
    r.computed = Json{{"index", jint(idx)},
                      {"real_index", jint(c)},
                      {"rel_disc_norm", jint(rel_disc_norm(k))},
                      {"lhs", jint(lhs)},
                      {"rhs", jint(rhs)},
                      {"without_disc", divides(lhs, idx * idx)}};
    r.expected = Json{{"divides", true}};
    r.pass = div;
    if (div) r.witnesses.push_back(Json{{"cofactor", jint(rhs / lhs)}});
    return r;
}

// ---------------------------------------------------------------- examples

FieldPtr example52_field() {
    static const FieldPtr k = CMField::make(28, 30, 50);
    return k;
}

Order example52_order() {
    FieldPtr k = example52_field();
    Elem b = k->alpha();
    Elem s7 = (k->omega() + k->rat(15)) * Rat(1, 5);
    return Order(k, span({k->one(), s7 * Rat(5), b, b * s7}));
}

Report example52_report() {
    Report r = verify_lemma_relindex(example52_order());
    r.claim = "example_relindex";
    r.expected = Json{{"index", 5}, {"real_index", 5}, {"without_disc", false}, {"divides", true}};
    r.pass = r.pass && r.computed["index"] == 5 && r.computed["real_index"] == 5 && r.computed["without_disc"] == false;
    return r;
}

FieldPtr example53_field() {
    static const FieldPtr k = CMField::make(8, 6, 7);
    return k;
}

std::pair<Order, Order> example53_orders(long F) {
    if (F <= 0 || F % 2 == 0) throw std::invalid_argument("example53_orders: F must be odd and positive");
    FieldPtr k = example53_field();
    Elem b = k->alpha();
    Rat F2(F * F);
    Order o(k, span({k->one(), b * F2, b * b * F2, b * b * b * F2}));
    Order op(k, span({k->one(), b * F2, b * b * Rat(F), b * b * b * F2}));
    return {o, op};
}

Report example53_report(long F) {
    auto [o, op] = example53_orders(F);
    Int f = F * F;
    Report r;
    r.claim = "example_real_index";
    r.inputs = Json{{"F", F}};
    Int u = residue_units(o, f).units->order();
    Int up = residue_units(op, f).units->order();
    PsiData ps = psi(op, o, f);
    Int Fi = F;
    r.computed = Json{{"units_O", jint(u)}, {"units_O_prime", jint(up)}, {"psi_kernel", jint(ps.kernel_order())}};
    r.expected = Json{{"units_O", jint((Fi - 1) * Fi * Fi * Fi)}, {"units_O_prime", jint((Fi - 1) * Fi)}, {"psi_kernel", 1}};
    r.pass = u == (Fi - 1) * Fi * Fi * Fi && up == (Fi - 1) * Fi && ps.kernel_order() == 1;
    return r;
}

// ------------------------------------------------------------------- zeta5

FieldPtr zeta5_field() {
    static const FieldPtr k = CMField::make(5, 5, 5);
    return k;
}

std::pair<Order, Order> theorem13_orders() {
    FieldPtr k = zeta5_field();
    Elem z = zeta5(*k);
    Elem z2 = z * z, z3 = z2 * z;
    Order a(k, span({k->one(), z * Rat(2), z2 + z3, z3 * Rat(2)}));
    Order b(k, span({k->one(), z + z3 * Rat(3), z2 + z3, z3 * Rat(5)}));
    return {a, b};
}

Int zeta5_default_bound() {
    FieldPtr k = zeta5_field();
    Order ok = Order::maximal(k);
    Int bound = 1;
    for (const auto& p : omin_primes(k)) {
        Int q = p;
        auto prev = keys(omin_zeta5(k, q));
        for (int j = 0;; ++j) {
            if (j > 8) throw std::runtime_error("zeta5_default_bound: no stabilisation");
            auto next = keys(omin_zeta5(k, q * p));
            if (next == prev) break;
            prev = next;
            q *= p;
        }
        bound *= q;
    }
    for (const auto& m : omin_zeta5(k, bound)) require_contains_f(m, bound);
    return bound;
}

Report verify_zeta5(std::optional<Int> bound) {
    FieldPtr k = zeta5_field();
    Order ok = Order::maximal(k);
    Int f = bound ? *bound : zeta5_default_bound();
    auto orders = enumerate_s_full_orders(k, f, true);
    auto [t4, t5] = theorem13_orders();
    Report r;
    r.claim = "zeta5_enumeration";
    r.inputs = Json{{"field", k->label()}, {"bound", jint(f)}};
    Json idx = Json::array(), list = Json::array();
    bool indices_ok = true, has4 = false, has5 = false;
    for (const auto& o : orders) {
        Int i = o.index_in(ok);
        idx.push_back(jint(i));
        list.push_back(order_json(o));
        if (!(divides(i, 16) || divides(i, 9) || divides(i, 25))) indices_ok = false;
        has4 = has4 || o == t4;
        has5 = has5 || o == t5;
    }
    r.computed = Json{{"count", orders.size()}, {"indices", idx}, {"orders", list}, {"theorem_orders_found", has4 && has5}};
    r.expected = Json{{"count", 7}, {"indices", "dividing 2^4, 3^2 or 5^2"}, {"theorem_orders_found", true}};
    r.pass = orders.size() == 7 && indices_ok && has4 && has5;
    return r;
}

Report verify_zeta5_isogenies() {
    FieldPtr k = zeta5_field();
    Order ok = Order::maximal(k);
    auto [t4, t5] = theorem13_orders();
    auto cmax = ppav_classes(ok);
    Report r;
    r.claim = "zeta5_isogenies";
    r.inputs = Json{{"field", k->label()}};
    if (cmax.size() != 1) throw std::logic_error("verify_zeta5_isogenies: expected one maximal class");
    const PPAVClass& m = cmax.front();
    bool ok5 = true;
    Json w5 = Json::array();
    for (const auto& c : ppav_classes(t5)) {
        auto mu = isogeny_test(c, m, 5);
        bool good = mu && check_isogeny(c, m, 5, *mu);
        ok5 = ok5 && good;
        w5.push_back(mu ? elem_json(*mu) : Json(nullptr));
    }
    bool ok4 = true;
    Json w4 = Json::array();
    std::vector<PPAVClass> mids;
    for (const auto& o : intermediate_orders(t4, ok))
        if (o != t4 && o != ok && o.is_cc_stable())
            for (const auto& c : ppav_classes(o)) mids.push_back(c);
    for (const auto& c : ppav_classes(t4)) {
        if (auto mu = isogeny_test(c, m, 2); mu && check_isogeny(c, m, 2, *mu)) {
            w4.push_back(Json{{"steps", 1}, {"mu", Json::array({elem_json(*mu)})}});
            continue;
        }
        bool found = false;
        for (const auto& mid : mids) {
            auto mu1 = isogeny_test(c, mid, 2);
            if (!mu1 || !check_isogeny(c, mid, 2, *mu1)) continue;
            auto mu2 = isogeny_test(mid, m, 2);
            if (!mu2 || !check_isogeny(mid, m, 2, *mu2)) continue;
            w4.push_back(Json{{"steps", 2}, {"mu", Json::array({elem_json(*mu1), elem_json(*mu2)})}});
            found = true;
            break;
        }
        if (!found) {
            ok4 = false;
            w4.push_back(nullptr);
        }
    }
    r.computed = Json{{"index5_related", ok5}, {"index4_related", ok4}};
    r.expected = Json{{"index5_related", true}, {"index4_related", true}};
    r.witnesses = Json{{"index5", w5}, {"index4", w4}};
    r.pass = ok5 && ok4;
    return r;
}

// ------------------------------------------------------------------ filter

FilterResult annoying_prime_filter(const FieldPtr& k, const Int& f, std::size_t cap) {
    if (!k->is_cyclic()) throw std::invalid_argument("annoying_prime_filter: field is not cyclic");
    Order ok = Order::maximal(k);
    CMType phi = standard_type(k);
    std::vector<Order> orders;
    for (const auto& o : orders_with_conductor_dividing(k, f))
        if (o.is_cc_stable()) orders.push_back(o);
    if (orders.size() > cap) throw std::runtime_error("annoying_prime_filter: enumeration cap exceeded");
    const std::size_t n = orders.size();
    std::vector<OrderUnits> units;
    std::vector<std::vector<FracIdeal>> images(n);
    for (std::size_t i = 0; i < n; ++i) {
        units.push_back(order_units(orders[i]));
        for (const auto& t : residue_generators(orders[i], f)) images[i].push_back(FracIdeal::principal(ok, type_norm(t, phi)));
    }
    // cond[i][j]: N_Phi(p_{O_i}) ⊆ S_{O_j}
    std::vector<std::vector<char>> cond(n, std::vector<char>(n, 1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& a : images[i])
                if (!s_member(a, orders[j], units[j], phi)) {
                    cond[i][j] = 0;
                    break;
                }
    FilterResult res;
    res.orders = n;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            ++res.pairs;
            if (!cond[i][j] || !cond[j][i]) continue;
            ++res.passing;
            Order sum = orders[i] + orders[j];
            Order meet = orders[i].intersect(orders[j]);
            res.lcm = lcm(res.lcm, meet.index_in(sum));
            for (const Order* o : {&orders[i], &orders[j]}) {
                Int a = meet.index_in(*o);
                Int b = real_suborder(meet).index_in(real_suborder(*o));
                const long limit = (k->is_zeta5() && *o == ok) ? 41 : 7;
                for (const auto& p : prime_factors(a * b))
                    if (p > limit && valuation(a, p) != valuation(b, p)) res.corollary = false;
            }
        }
    res.primes = res.lcm == 1 ? std::vector<Int>{} : prime_factors(res.lcm);
    return res;
}

Report filter_report(const FieldPtr& k, const Int& f) {
    FilterResult fr = annoying_prime_filter(k, f);
    Report r;
    r.claim = "annoying_primes";
    r.inputs = Json{{"field", k->label()}, {"f", jint(f)}};
    r.computed = Json{{"orders", fr.orders}, {"pairs", fr.pairs}, {"passing", fr.passing}, {"lcm", jint(fr.lcm)}, {"primes", jints(fr.primes)}, {"corollary", fr.corollary}};
    r.expected = Json{{"corollary", true}, {"primes", "dividing f"}};
    bool sub = std::all_of(fr.primes.begin(), fr.primes.end(), [&](const Int& p) { return divides(p, f); });
    r.pass = fr.corollary && sub;
    return r;
}

bool sandwich_check(const Order& o, const Int& f) {
    const FieldPtr& k = o.field();
    Order ok = Order::maximal(k);
    require_contains_f(o, f);
    CMType phi = standard_type(k);
    OrderUnits u = order_units(o);
    for (const auto& t : residue_generators(o, f))
        if (!s_member(FracIdeal::principal(ok, type_norm(t, phi)), o, u, phi)) return false;
    PolarisedClassGroup c(o, f);
    for (std::size_t i = 0; i < c.count(); ++i) {
        const PolarisedPair& p = c.rep(i);
        FracIdeal b = type_norm(p.a.extend(ok), phi);
        if (!s_member(b, o, u, phi)) continue;
        if (!PolarisedClassGroup::is_trivial(PolarisedPair{p.a.pow(2), p.alpha * p.alpha}, u)) return false;
        auto x = is_principal(p.a.pow(2), u);
        if (!x) return false;
        if (b.pow(2) != FracIdeal::principal(ok, type_norm(*x, phi))) return false;
    }
    return true;
}

bool UniquenessResult::holds() const {
    return std::all_of(matches.begin(), matches.end(), [](std::size_t m) { return m == 1; });
}

UniquenessResult isogeny_uniqueness(const Order& o, long l) {
    Order ok = Order::maximal(o.field());
    auto cmax = ppav_classes(ok);
    UniquenessResult res;
    for (const auto& c : ppav_classes(o)) {
        ++res.classes;
        std::size_t m = 0;
        for (const auto& d : cmax)
            if (auto mu = isogeny_test(c, d, l); mu && check_isogeny(c, d, l, *mu)) ++m;
        res.matches.push_back(m);
    }
    return res;
}

}  // namespace cmq
