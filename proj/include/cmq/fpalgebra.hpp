#pragma once

#include "cmq/linalg.hpp"

#include <vector>

namespace cmq {

using FVec = std::vector<Int>;

// Subspace of F_p^n in reduced row echelon form.
struct Subspace {
    Int p;
    std::size_t n = 0;
    std::vector<FVec> rows;
    std::vector<std::size_t> pivots;

    static Subspace span(const Int& p, std::size_t n, const std::vector<FVec>& vs);
    std::size_t dim() const { return rows.size(); }
    FVec reduce(FVec v) const;
    bool contains(const FVec& v) const;
    std::vector<std::size_t> free_columns() const;
};

// Commutative F_p-algebra with structure constants.
struct FpAlgebra {
    Int p;
    std::size_t n = 0;
    std::vector<std::vector<FVec>> t;  // t[i][j] = e_i * e_j
    FVec one;

    FVec mul(const FVec& a, const FVec& b) const;
    FVec pow(FVec a, Int e) const;
    FVec add(const FVec& a, const FVec& b) const;
    FVec sub(const FVec& a, const FVec& b) const;
    FVec scale(const FVec& a, const Int& c) const;
    FVec zero() const { return FVec(n, 0); }
    bool is_zero(const FVec& a) const;
    FVec basis(std::size_t i) const;
    Int mod(const Int& x) const;
};

struct FpQuotient {
    FpAlgebra alg;
    Subspace ideal;
    std::vector<std::size_t> cols;  // ambient coordinates kept
    FVec project(const FVec& x) const;
    FVec lift(const FVec& y) const;
};
FpQuotient fp_quotient(const FpAlgebra& a, const Subspace& ideal);

// Nilradical as kernel of Frobenius^j with p^j >= n.
Subspace fp_radical(const FpAlgebra& a);
// Primitive idempotents of a reduced algebra (a product of finite fields).
std::vector<FVec> fp_idempotents(const FpAlgebra& s);
// Minimal polynomial of an element (monic, low to high).
FVec fp_minpoly(const FpAlgebra& a, const FVec& x);
// Minimal polynomial inside the ideal with identity `unit`.
FVec fp_minpoly(const FpAlgebra& a, const FVec& x, const FVec& unit);
// Kernel of an integer matrix over F_p.
std::vector<FVec> kernel_mod(const IntMat& m, const Int& p);

}  // namespace cmq
