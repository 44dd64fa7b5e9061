#pragma once

#include "cmq/ideal.hpp"
#include "cmq/residue.hpp"

#include <memory>
#include <vector>

namespace cmq {

struct ResidueUnits {
    struct Part {
        Int p;
        Int norm;      // N(q)
        Int residue;   // |(O/q)^x|
        Int one_plus;  // |(1+q)/(1+(fO_K)_(q))|
    };
    Int f;
    std::shared_ptr<UnitGroup> units;
    std::vector<Part> parts;
    Int parts_product() const;
};

// (O / f O_K)^x with its decomposition over the primes of O dividing f.
ResidueUnits residue_units(const Order& o, const Int& f);

struct PsiData {
    AbelianGroup domain;    // (O/fO_K)^x / ((O°/fO_K)^x mu_O)
    AbelianGroup codomain;  // (O_0/fO_K0)^x / (O°_0/fO_K0)^x
    IntMat matrix;          // images of domain generators
    Subgroup kernel;
    Int kernel_exponent() const { return kernel.exponent(); }
    Int kernel_order() const { return kernel.order(); }
};

// Relative norm map for O° = O ∩ O'.
PsiData psi(const Order& o, const Order& o_prime, const Int& f);
// Same with O° given directly (O° ⊆ O).
PsiData psi_sub(const Order& o, const Order& osub, const Int& f);

struct Prop41 {
    Rat lower, actual, upper;
    bool holds() const { return lower <= actual && actual <= upper; }
};
// bounds on |(O/fO)^x / (O°/fO)^x| in degree n (4 for K, 2 for K0)
Prop41 prop41_bounds(const Order& o, const Order& osub, const Int& f);
Prop41 prop41_bounds_real(const Order& o, const Order& osub, const Int& f);

bool lemma42_holds(const Int& p, long v, long mu_order);

}  // namespace cmq
