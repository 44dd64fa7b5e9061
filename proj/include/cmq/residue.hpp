#pragma once

#include "cmq/abelian.hpp"
#include "cmq/fpalgebra.hpp"
#include "cmq/order.hpp"

#include <array>
#include <unordered_map>
#include <memory>
#include <vector>

namespace cmq {

using RVec = std::array<long, 4>;

struct RVecHash {
    std::size_t operator()(const RVec& v) const {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
        return h;
    }
};

// Finite ring L / M where L is a ring lattice of rank n in {2, 4} given by a
// basis of elements and M is an ideal of L. Rank 2 uses the coordinates
// (c0, c2) of real elements.
class ResidueRing {
public:
    ResidueRing(FieldPtr k, std::vector<Elem> ring_basis, const std::vector<Elem>& modulus_gens);

    // O / f O_K
    static ResidueRing of_order(const Order& o, const Int& f);
    // O_0 / f O_K0 for O_0 = O ∩ K0
    static ResidueRing of_real_order(const Order& o, const Int& f);

    std::size_t rank() const { return n_; }
    const FieldPtr& field() const { return k_; }
    const std::vector<Elem>& ring_basis() const { return basis_; }
    const std::vector<Elem>& modulus_gens() const { return mod_gens_; }
    long size() const { return size_; }
    const std::vector<long>& primes() const { return primes_; }
    const std::vector<long>& diag() const { return diag_; }
    RVec modulus_column(std::size_t i) const;

    bool contains(const Elem& x) const;  // x in L
    RVec from_elem(const Elem& x) const;  // x in L, or x in L localised at primes of size()
    Elem to_elem(const RVec& v) const;
    RVec reduce(std::array<__int128, 4> v) const;

    RVec zero() const { return RVec{0, 0, 0, 0}; }
    RVec one() const { return one_; }
    RVec add(const RVec& a, const RVec& b) const;
    RVec sub(const RVec& a, const RVec& b) const;
    RVec mul(const RVec& a, const RVec& b) const;
    RVec mul_int(const RVec& a, long c) const;
    RVec pow(RVec a, Int e) const;
    bool is_unit(const RVec& a) const;
    long norm_mod(const RVec& a, long p) const;

    // a sub-quotient with a larger modulus
    ResidueRing with_extra_modulus(const std::vector<Elem>& gens) const;
    // every element, in lexicographic coordinate order
    std::vector<RVec> elements() const;

    // F_p-algebra L/pL with identity coordinates
    FpAlgebra fp_algebra(long p) const;
    FVec fp_coords(const RVec& v, long p) const;

private:
    FieldPtr k_;
    std::size_t n_ = 4;
    std::vector<std::size_t> cidx_;
    std::vector<Elem> basis_;
    std::vector<Elem> mod_gens_;
    RatMat binv_;
    std::vector<std::vector<std::vector<Int>>> t_;  // exact structure constants
    std::vector<std::vector<RVec>> red_;            // reduced products of basis elements
    std::array<std::array<long, 4>, 4> h_{};   // modulus HNF in ring coordinates
    std::vector<long> diag_;
    long size_ = 1;
    std::vector<long> primes_;
    RVec one_{};
};

long count_units_serial(const ResidueRing& r);
long count_units_parallel(const ResidueRing& r);
// unit test through xL + M = L, lattice arithmetic only
bool is_unit_by_ideal(const ResidueRing& r, const RVec& x);

// Unit group of a residue ring with discrete logarithms.
class UnitGroup {
public:
    explicit UnitGroup(const ResidueRing& r);

    const ResidueRing& ring() const { return *r_; }
    const AbelianGroup& group() const { return group_; }
    const std::vector<RVec>& generators() const { return gens_; }
    Int order() const { return group_.order(); }
    IVec dlog(const RVec& x) const;
    RVec exp(const IVec& v) const;
    RVec inverse(const RVec& x) const;

private:
    struct Field {
        FVec idem;          // in S coordinates
        long q = 0;    // field size
        FVec gamma;         // generator image in S
        std::unordered_map<RVec, long, RVecHash> baby;
        long giant_step = 0;
        FVec gamma_inv_m;   // gamma^{-giant_step}
    };
    struct Local {
        long p = 0;
        std::shared_ptr<ResidueRing> ring;
        FpAlgebra a;        // L/pL
        Subspace kill;      // kernel of L/pL -> S
        FpQuotient s;       // S = semisimple quotient
        std::vector<Field> fields;
        std::vector<RVec> teich;  // one per field, in L-coordinates
        Int m;              // |S^x|
        Int q;              // |1+J|
        std::shared_ptr<GroupStructure<RVec>> onej;
        long crt = 0;  // CRT idempotent coefficient
    };

    IVec raw_log(const RVec& x) const;
    long field_log(const Local& loc, const Field& fd, const FVec& s) const;

    std::shared_ptr<const ResidueRing> r_;
    std::vector<Local> locals_;
    std::vector<RVec> raw_gens_;
    std::vector<Int> raw_orders_;
    Presentation pres_;
    AbelianGroup group_;
    std::vector<RVec> gens_;
};

}  // namespace cmq
