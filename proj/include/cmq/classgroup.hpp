#pragma once

#include "cmq/abelian.hpp"
#include "cmq/ideal.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace cmq {

// Unit data of an order O, as exponents of the fundamental units of K0.
struct OrderUnits {
    long eps_step = 1;   // eps0^eps_step generates the real units of O up to sign
    long eta_step = 1;   // eta0^eta_step generates the totally positive units of O_0
    long norm_step = 1;  // eta0^norm_step generates N(O^x)
    long w = 2;          // roots of unity in O
    long eps_k_step = 1;  // least j with zeta^i epsK^j in O for some i
    long w_k = 2;         // roots of unity in O_K
    long double unit_size = 1;  // |rho_1(eps0^eps_step)|
    long double unit_size_k = 1;  // |rho_1(eps0)|
    // [totally positive units of O_0 : N(O^x)]
    long norm_index() const { return norm_step / eta_step; }
};
OrderUnits order_units(const Order& o);

// m with x = eta0^m, for a totally positive unit x of O_K0
std::optional<long> eta_log(const CMField& k, const Elem& x);

// Elements of the sublattice of L with vanishing odd (real = true) or even coordinates.
std::vector<Elem> real_part_basis(const Lattice& l, const CMField& k);
std::vector<Elem> imaginary_part_basis(const Lattice& l, const CMField& k);
RatMat t2_gram(const CMField& k, const std::vector<Elem>& basis);

// Elements x of the Z-span of basis with |N_{K/Q}(x)| = n, up to multiplication by
// units of absolute size unit_size. Enumeration stops when accept returns true.
std::optional<Elem> search_norm(const CMField& k, const std::vector<Elem>& basis, const Rat& n,
                                long double unit_size, const std::function<bool(const Elem&)>& accept);

std::optional<Elem> is_principal(const FracIdeal& a);
std::optional<Elem> is_principal(const FracIdeal& a, const OrderUnits& u);
// totally positive generator of a conjugation stable ideal, if one exists
std::optional<Elem> totally_positive_generator(const FracIdeal& a, const OrderUnits& u);

Rat minkowski_bound(const Order& ok);

// Invertible ideal classes of O prime to f.
class PicardGroup {
public:
    PicardGroup(const Order& o, const Int& f);

    const Order& order() const { return o_; }
    const Int& f() const { return f_; }
    const OrderUnits& units() const { return units_; }
    const AbelianGroup& group() const { return gs_.group; }
    Int size() const { return group().order(); }
    // every class once, with a representative ideal
    std::size_t count() const { return gs_.elements.size(); }
    const FracIdeal& rep(std::size_t i) const { return reps_[i]; }
    IVec coords(std::size_t i) const;  // SNF coordinates of class i
    std::size_t index_of(const IVec& snf) const;
    // class index of an invertible ideal prime to f, and x with a = x * rep
    std::pair<std::size_t, Elem> locate(const FracIdeal& a) const;
    // class of rep(i) * rep(j), and x with rep(i) rep(j) = x rep(m)
    std::pair<std::size_t, Elem> multiply(std::size_t i, std::size_t j) const;
    const std::vector<FracIdeal>& generator_ideals() const { return gens_; }
    // representative ideals of the SNF generators
    std::vector<FracIdeal> snf_generators() const;

private:
    FracIdeal ideal_of(const IVec& raw) const;

    Order o_;
    Int f_;
    OrderUnits units_;
    std::vector<FracIdeal> gens_;
    GroupStructure<IVec> gs_;
    std::vector<FracIdeal> reps_;
    std::map<IVec, std::size_t> snf_index_;
};

struct PolarisedPair {
    FracIdeal a;
    Elem alpha;
    bool valid() const;  // a abar = alpha O, alpha totally positive
};

// The polarised class group of O with ideals prime to f.
class PolarisedClassGroup {
public:
    PolarisedClassGroup(const Order& o, const Int& f);

    const Order& order() const { return pic_->order(); }
    const PicardGroup& picard() const { return *pic_; }
    const AbelianGroup& group() const { return gs_.group; }
    Int size() const { return group().order(); }
    std::size_t count() const { return reps_.size(); }
    const PolarisedPair& rep(std::size_t i) const { return reps_[i]; }
    IVec dlog(const PolarisedPair& p) const;
    bool is_identity(const PolarisedPair& p) const;

    // (a, alpha) in P_O
    static bool is_trivial(const PolarisedPair& p, const OrderUnits& u);

private:
    using Key = std::pair<std::size_t, long>;  // picard class, unit exponent
    struct KeyHash {
        std::size_t operator()(const Key& k) const { return k.first * 1000003u + static_cast<std::size_t>(k.second); }
    };
    Key normalise(const PolarisedPair& p) const;

    std::shared_ptr<PicardGroup> pic_;
    std::vector<std::optional<Elem>> alpha_;  // per picard class
    long t_ = 1;
    GroupStructure<Key> gs_;
    std::vector<PolarisedPair> reps_;
};

// Kernel of the extension map from the polarised class group of osub to that of o.
struct MorphismKernel {
    Int domain_size;
    Int kernel_size;
    std::vector<PolarisedPair> kernel;
};
MorphismKernel morphism_kernel(const Order& osub, const Order& o, const Int& f);

struct PPAVClass {
    FracIdeal a;
    Elem xi;
    bool valid() const;
};
// principally polarised classes (a, xi) with a invertible, for the CM type of the
// embeddings with Im(alpha) > 0
std::vector<PPAVClass> ppav_classes(const Order& o, const Int& f = 1);
bool ppav_equivalent(const PPAVClass& x, const PPAVClass& y);

// mu with mu a1 ⊆ a2 and xi2 mu mubar = l xi1
std::optional<Elem> isogeny_test(const PPAVClass& c1, const PPAVClass& c2, long l);
bool check_isogeny(const PPAVClass& c1, const PPAVClass& c2, long l, const Elem& mu);

}  // namespace cmq
