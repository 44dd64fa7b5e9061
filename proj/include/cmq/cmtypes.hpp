#pragma once

#include "cmq/classgroup.hpp"

#include <optional>
#include <vector>

namespace cmq {

// CM type {id, sigma} (or {id, sigma^3} when flipped) of a cyclic quartic field.
struct CMType {
    FieldPtr k;
    bool flipped = false;
    int s() const { return flipped ? 3 : 1; }
};
CMType standard_type(const FieldPtr& k);

Elem type_norm(const Elem& x, const CMType& phi);
Elem reflex_type_norm(const Elem& y, const CMType& phi);
FracIdeal type_norm(const FracIdeal& a, const CMType& phi);
FracIdeal reflex_type_norm(const FracIdeal& b, const CMType& phi);
// N_{Phi^r}(N_Phi(a)) == a^2 (a abar)^sigma
bool composite_identity(const FracIdeal& a, const CMType& phi);

struct RayClassGenerators {
    Int f;
    std::vector<FracIdeal> ideals;            // prime to f
    std::vector<std::optional<Elem>> gens;    // t with ideal = (t), when known
    Int class_number;
    Int residue_units;   // |(O_K/f)^x|
    Int unit_image;      // |image of O_K^x|
    Int ray_class_order;
    Int generated_order;
    bool certified() const { return generated_order == ray_class_order; }
};
RayClassGenerators ray_class_generators(const FieldPtr& k, const Int& f);

// mu with mu O_K = N_{Phi^r}(a) and mu mubar = N(a)
std::optional<Elem> reflex_generator(const FracIdeal& a, const CMType& phi);

bool s_member(const FracIdeal& a, const Order& o, const CMType& phi);
bool s_member(const FracIdeal& a, const Order& o, const OrderUnits& u, const CMType& phi);
bool is_s_full(const Order& o, const RayClassGenerators& rg, const CMType& phi);
bool is_s_full(const Order& o, const Int& f);

struct OminData {
    Order order;
    std::vector<Elem> mu;
    RayClassGenerators rays;
};
OminData omin_data(const FieldPtr& k, const Int& f, const CMType& phi);
Order omin(const FieldPtr& k, const Int& f, const CMType& phi);
Order omin(const FieldPtr& k, const Int& f);
// smallest k with A_{k+1} = A_k for A_k = O_min,p^k
std::pair<int, Order> omin_stabilize(const FieldPtr& k, const Int& p, const CMType& phi);

// inclusion-minimal orders Z[zeta^e_i mu_i] + f O_K
std::vector<Order> omin_zeta5(const FieldPtr& k, const Int& f);
// cc-stable orders containing f O_K with S_O = I_{K^r}
std::vector<Order> enumerate_s_full_orders(const FieldPtr& k, const Int& f, bool verify = true);

}  // namespace cmq
