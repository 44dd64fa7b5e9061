#pragma once

#include "cmq/field.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cmq {

// Rank-4 subring of K containing 1, stored as its lattice in the power basis.
class Order {
public:
    Order() = default;
    Order(FieldPtr k, Lattice lat, bool check = true);

    static Order equation_order(const FieldPtr& k);
    static Order maximal(const FieldPtr& k);
    // Smallest order containing the lattice spanned by 1, gens and `base` (if given).
    static Order generated(const FieldPtr& k, const std::vector<Elem>& gens,
                           const std::optional<Lattice>& base = std::nullopt);

    const FieldPtr& field() const { return k_; }
    const CMField& K() const { return *k_; }
    const Lattice& lattice() const { return lat_; }
    std::vector<Elem> basis() const;
    Elem basis_elem(std::size_t i) const;

    bool contains(const Elem& x) const { return lat_.contains(x.vec()); }
    bool contains(const Order& o) const { return lat_.contains(o.lat_); }
    std::vector<Rat> coords(const Elem& x) const { return lat_.coordinates(x.vec()); }
    Elem from_coords(const std::vector<Rat>& c) const;
    Elem from_coords(const std::vector<Int>& c) const;

    bool operator==(const Order& o) const { return lat_ == o.lat_; }
    bool operator!=(const Order& o) const { return !(*this == o); }
    std::string key() const { return lat_.key(); }

    Int index_in(const Order& big) const;  // [big : *this]
    Rat disc() const;
    Order conj() const;
    bool is_cc_stable() const { return conj() == *this; }
    bool is_maximal() const;
    // structure constants: basis_i * basis_j = sum_k t[i][j][k] basis_k
    std::vector<std::vector<std::vector<Int>>> mult_table() const;

    Lattice trace_dual() const;
    Order operator+(const Order& o) const;  // ring generated by both
    Order intersect(const Order& o) const;

private:
    FieldPtr k_;
    Lattice lat_;
};

// Order O ∩ K0 as a lattice in the coordinates (1, omega).
struct RealOrder {
    FieldPtr k;
    Lattice lat;  // dim 2
    bool contains(const Elem& x) const;
    Int index_in(const RealOrder& big) const;
    std::vector<Elem> basis() const;
    bool operator==(const RealOrder& o) const { return lat == o.lat; }
};
RealOrder real_suborder(const Order& o);

// Lattice of a Z-span of elements (full rank required).
Lattice span(const std::vector<Elem>& xs);
Lattice scaled_lattice(const Order& o, const Int& f);  // f*O
Lattice colon(const Lattice& a, const Lattice& b, const CMField& k);  // {x : x b ⊆ a}
Lattice lattice_product(const Lattice& a, const Lattice& b, const CMField& k);
Lattice lattice_conj(const Lattice& a);
std::vector<Elem> lattice_elems(const Lattice& a, const CMField& k);

// Round 2 at a single prime: returns a p-maximal order containing o.
Order p_maximal(const Order& o, const Int& p);
std::vector<Int> prime_factors(Int n);
Int p_radical_exponent(const Int& p);  // smallest j with p^j >= 4

// F_p kernel of an integer matrix (entries reduced mod p), as integer vectors in [0, p).
std::vector<std::vector<Int>> kernel_mod_p(const IntMat& m, const Int& p);

// All orders O with base ⊆ O ⊆ top.
std::vector<Order> intermediate_orders(const Order& base, const Order& top, std::size_t cap = 200000);
// Orders containing f*O_K.
std::vector<Order> orders_with_conductor_dividing(const FieldPtr& k, const Int& f);

// number of roots of unity in O
long roots_of_unity_count(const Order& o);

}  // namespace cmq
