#pragma once

#include "cmq/cmtypes.hpp"
#include "cmq/unitquot.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cmq {

using Json = nlohmann::json;

struct TableRow {
    Int D, A, B;
    std::optional<long> n;
    std::string chi_text;  // empty for blank rows
    std::vector<Int> chi;  // low to high
    std::optional<long> i1, i2, i3;
    bool has_chi() const { return !chi.empty(); }
    std::string label() const;
};

// "x^4 - x^3 + 2x^2 + 4x + 3" -> {3, 4, 2, -1, 1}
std::vector<Int> parse_poly(const std::string& text);
std::vector<TableRow> load_table(const std::string& path);
std::string data_dir();
std::vector<TableRow> table1();
std::vector<TableRow> table2();
FieldPtr field_of(const TableRow& row);

struct Report {
    std::string claim;
    Json inputs = Json::object();
    Json computed = Json::object();
    Json expected = Json::object();
    Json witnesses = Json::array();
    bool pass = false;
    Json to_json() const;
};

// N_{K0/Q}(Delta_{K/K0}) = disc(O_K) / D^2
Int rel_disc_norm(const FieldPtr& k);
Json order_json(const Order& o);
Json elem_json(const Elem& x);
Json ideal_json(const FracIdeal& a);
Json field_info(const FieldPtr& k);

Report table1_pipeline(const TableRow& row);

struct OminStep {
    Int p;
    int k = 0;  // stabilises at p^k
    Int index;  // [O_K : O_min,p^k]
};
std::vector<Int> omin_primes(const FieldPtr& k);  // primes of 2 * 3 * rel_disc_norm
std::vector<OminStep> omin_profile(const FieldPtr& k);
Report omin_report(const FieldPtr& k);

// Image of the ray class generators mod f in the polarised class group of O.
struct SImage {
    AbelianGroup group;
    std::vector<IVec> images;
};

// S_O ⊆ S_O' comparisons for a fixed field and f, cached per order.
class SOracle {
public:
    SOracle(FieldPtr k, const Int& f);
    const Int& f() const { return f_; }
    const RayClassGenerators& rays() const { return rg_; }
    const SImage& image(const Order& o);
    bool contained(const Order& o, const Order& o_prime);

private:
    FieldPtr k_;
    Int f_;
    CMType phi_;
    RayClassGenerators rg_;
    std::map<std::string, SImage> cache_;
};

// S_O ⊆ S_O' for orders containing f O_K
bool s_contained(const Order& o, const Order& o_prime, const Int& f);

Report verify_thm_general(const Order& o, const Order& o_prime, const Int& f, SOracle* oracle = nullptr);
Report verify_thm_maximal(const Order& o_prime, const Int& f, SOracle* oracle = nullptr);
Report verify_lemma_relindex(const Order& osub);

// Q(sqrt(5(-3+sqrt 7))) and O° = Z[5 sqrt 7] + sqrt(5(-3+sqrt 7)) Z[sqrt 7]
FieldPtr example52_field();
Order example52_order();
Report example52_report();
// Q(sqrt(-3+sqrt 2)) with O_K = Z[beta] and the pair (O, O') of conductor F^2
FieldPtr example53_field();
std::pair<Order, Order> example53_orders(long F);
Report example53_report(long F);

FieldPtr zeta5_field();
// Z + 2z Z + (z^2+z^3) Z + 2z^3 Z and Z + (z+3z^3) Z + (z^2+z^3) Z + 5z^3 Z
std::pair<Order, Order> theorem13_orders();
// smallest f = prod p^k with the candidate minimal orders stable at every p | 30
Int zeta5_default_bound();
Report verify_zeta5(std::optional<Int> bound = std::nullopt);
Report verify_zeta5_isogenies();

// primes of the lcm of [O + O' : O ∩ O'] over pairs with N_Phi(p_O) ⊆ S_O' and N_Phi(p_O') ⊆ S_O
struct FilterResult {
    Int lcm = 1;
    std::vector<Int> primes;
    std::size_t orders = 0;
    std::size_t pairs = 0;
    std::size_t passing = 0;
    bool corollary = true;  // valuation agreement above 41 (7 away from Z[zeta5])
};
FilterResult annoying_prime_filter(const FieldPtr& k, const Int& f, std::size_t cap = 64);
Report filter_report(const FieldPtr& k, const Int& f);

// N_Phi(p_O) ⊆ S_O and (S_O ∩ N_Phi(I_O))^2 ⊆ N_Phi(p_O) on generators
bool sandwich_check(const Order& o, const Int& f);

// each polarised class of o is (l,l)-isogenous to exactly one class of O_K
struct UniquenessResult {
    std::size_t classes = 0;
    std::vector<std::size_t> matches;  // per class of o
    bool holds() const;
};
UniquenessResult isogeny_uniqueness(const Order& o, long l = 2);

}  // namespace cmq
