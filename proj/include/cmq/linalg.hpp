#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cmq {

using Int = mpz_class;
using Rat = mpq_class;

template <class T>
class Mat {
public:
    Mat() = default;
    Mat(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    std::vector<T> col(std::size_t j) const {
        std::vector<T> v(r_);
        for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void set_col(std::size_t j, const std::vector<T>& v) {
        for (std::size_t i = 0; i < r_; ++i) (*this)(i, j) = v[i];
    }

    Mat transpose() const {
        Mat t(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Mat operator*(const Mat& x, const Mat& y) {
        Mat z(x.r_, y.c_);
        for (std::size_t i = 0; i < x.r_; ++i)
            for (std::size_t k = 0; k < x.c_; ++k) {
                if (x(i, k) == 0) continue;
                for (std::size_t j = 0; j < y.c_; ++j) z(i, j) += x(i, k) * y(k, j);
            }
        return z;
    }

    bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;

RatMat to_rat(const IntMat& m);
// canonical n/d
Rat ratio(const Int& n, const Int& d);
Int floor_div(const Int& a, const Int& b);
Int floor_rat(const Rat& q);
Int isqrt(const Int& n);
bool is_square(const Int& n);
Int gcd_vec(const std::vector<Int>& v);

// Column Hermite normal form: H = M*U, U unimodular. The nonzero columns of H
// sit at the right and form an upper triangular echelon block with positive
// pivots; entries to the right of a pivot are reduced into [0, pivot).
struct HnfResult {
    IntMat h;
    IntMat u;
    std::size_t rank = 0;
};
HnfResult hnf(const IntMat& m, bool with_transform = false);

// Nonzero HNF columns only (rows x rank).
IntMat hnf_basis(const IntMat& m);

// U*M*V = D, diagonal with d_i | d_{i+1}.
struct SnfResult {
    IntMat d;
    IntMat u;
    IntMat v;
    std::vector<Int> diag;
};
SnfResult snf(const IntMat& m, bool with_transforms = false);

// Z-basis (columns) of {x in Z^cols : M x = 0}.
IntMat integer_kernel(const IntMat& m);

Int det(const IntMat& m);
Rat det(const RatMat& m);
RatMat inverse(const RatMat& m);
// Solve M x = b exactly; M square nonsingular.
std::vector<Rat> solve(const RatMat& m, const std::vector<Rat>& b);

// LLL on a positive definite Gram matrix. Returns T with columns giving the
// reduced basis in terms of the input basis.
IntMat lll_gram(const RatMat& gram, const Rat& delta = Rat(99, 100));
struct LllResult {
    IntMat basis;
    IntMat transform;
};
// Columns of `basis` are vectors of the ambient space carrying the form `gram`.
LllResult lll_reduce(const IntMat& basis, const RatMat& gram, const Rat& delta = Rat(99, 100));
bool is_lll_reduced(const RatMat& gram, const Rat& delta = Rat(99, 100));

// All nonzero x with x^T G x <= bound, one of each pair +-x. The callback
// returns false to stop.
using ShortVecFn = std::function<bool(const std::vector<Int>&, const Rat&)>;
void enumerate_short(const RatMat& gram, const Rat& bound, const ShortVecFn& fn);
std::vector<std::vector<Int>> short_vectors(const RatMat& gram, const Rat& bound);
std::vector<std::vector<Int>> short_vectors_parallel(const RatMat& gram, const Rat& bound);

// Full-rank lattice (1/denom) * H Z^n with H in HNF and gcd(denom, H) = 1.
class Lattice {
public:
    Lattice() = default;
    static Lattice from_generators(std::size_t n, const std::vector<std::vector<Rat>>& gens);
    static Lattice from_basis(const RatMat& cols);
    static Lattice standard(std::size_t n);

    std::size_t dim() const { return h_.rows(); }
    const Int& denom() const { return d_; }
    const IntMat& hnf() const { return h_; }
    RatMat basis() const;
    std::vector<Rat> basis_vector(std::size_t j) const;
    std::vector<std::vector<Rat>> basis_vectors() const;

    Rat covolume() const;
    bool contains(const std::vector<Rat>& x) const;
    bool contains(const Lattice& o) const;
    std::vector<Rat> coordinates(const std::vector<Rat>& x) const;

    Lattice operator+(const Lattice& o) const;
    Lattice intersect(const Lattice& o) const;
    Lattice dual() const;
    Lattice scaled(const Rat& c) const;

    bool operator==(const Lattice& o) const { return d_ == o.d_ && h_ == o.h_; }
    bool operator!=(const Lattice& o) const { return !(*this == o); }
    bool operator<(const Lattice& o) const { return key() < o.key(); }
    std::string key() const;

private:
    Int d_ = 1;
    IntMat h_;
};

// [big : small] for small contained in big.
Rat lattice_index(const Lattice& big, const Lattice& small);

}  // namespace cmq
