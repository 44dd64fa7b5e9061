#pragma once

#include "cmq/linalg.hpp"

#include <array>
#include <complex>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace cmq {

class CMField;
using Complex = std::complex<long double>;

enum class GaloisType { Cyclic, Biquadratic, NonGalois };
std::string to_string(GaloisType t);

// Element of K = Q[x]/(x^4 + A x^2 + B) in the power basis 1, a, a^2, a^3.
class Elem {
public:
    Elem() = default;
    Elem(const CMField* k, std::array<Rat, 4> c) : k_(k), c_(std::move(c)) {}

    const CMField* field() const { return k_; }
    const std::array<Rat, 4>& coords() const { return c_; }
    const Rat& operator[](std::size_t i) const { return c_[i]; }
    std::vector<Rat> vec() const { return {c_[0], c_[1], c_[2], c_[3]}; }

    bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
    bool is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
    bool is_real() const { return c_[1] == 0 && c_[3] == 0; }

    Elem operator+(const Elem& o) const;
    Elem operator-(const Elem& o) const;
    Elem operator-() const;
    Elem operator*(const Elem& o) const;
    Elem operator*(const Rat& q) const;
    Elem operator/(const Elem& o) const;
    Elem pow(long e) const;
    Elem inverse() const;
    Elem conj() const;

    bool operator==(const Elem& o) const { return c_ == o.c_; }
    bool operator!=(const Elem& o) const { return !(*this == o); }
    std::string str() const;

private:
    const CMField* k_ = nullptr;
    std::array<Rat, 4> c_;
};

struct UnitData {
    Elem eps0;        // fundamental unit of K0, > 1 under the first real embedding
    Elem epsK;        // generator of O_K^x modulo roots of unity
    Elem zeta;        // generator of mu_K
    long w = 2;       // #mu_K
    Elem n0;          // epsK * conj(epsK), generates N(O_K^x)
    Elem eta0;        // generator of totally positive units of O_K0
    bool eps_half = false;  // epsK^2 = root of unity * eps0
};

class CMField : public std::enable_shared_from_this<CMField> {
public:
    // x^4 + A x^2 + B with A, B > 0 and A^2 - 4B > 0 not a square.
    static std::shared_ptr<const CMField> make(const Int& A, const Int& B);
    // Also checks that D is the discriminant of the real quadratic subfield.
    static std::shared_ptr<const CMField> make(const Int& D, const Int& A, const Int& B);

    const Int& A() const { return A_; }
    const Int& B() const { return B_; }
    const Int& D() const { return D_; }
    const Int& d() const { return d_; }  // squarefree part of A^2 - 4B
    const Int& m() const { return m_; }  // A^2 - 4B = m^2 d
    Int poly_disc() const;               // 16 B (A^2 - 4B)^2
    GaloisType galois_type() const { return type_; }
    bool is_cyclic() const { return type_ == GaloisType::Cyclic; }
    std::string label() const;

    Elem zero() const;
    Elem one() const;
    Elem rat(const Rat& q) const;
    Elem alpha() const;
    Elem omega() const { return alpha() * alpha(); }
    Elem sqrt_d() const;  // sqrt(d) in K0
    Elem omega0() const;  // O_K0 = Z[omega0]
    Elem make_elem(const std::vector<Rat>& c) const;

    Rat trace(const Elem& x) const;
    Rat norm(const Elem& x) const;
    Elem rel_norm(const Elem& x) const { return x * x.conj(); }
    Rat real_norm(const Elem& x) const;  // N_{K0/Q}, x real
    Rat real_trace(const Elem& x) const;
    RatMat trace_form() const;           // tr(a^{i+j})
    RatMat mult_matrix(const Elem& x) const;
    std::vector<Rat> char_poly(const Elem& x) const;  // monic, low to high

    // sigma with phi1 o sigma = phi2; cyclic fields only
    Elem sigma(const Elem& x, int k = 1) const;
    const Elem& sigma_alpha() const;

    // exact sign of a real element under rho_k: omega -> (-A +- sqrt(A^2-4B))/2, k = 0 takes +
    int real_sign(const Elem& x, int k) const;
    bool is_totally_positive(const Elem& x) const;

    // numerics: phi_k(alpha) = i * sqrt(-omega_k)
    Complex embed(const Elem& x, int k) const;
    long double real_embed(const Elem& x, int k) const;

    // roots in K of a monic polynomial with integer coefficients (low to high)
    std::vector<Elem> roots(const std::vector<Int>& poly) const;
    std::optional<Elem> sqrt(const Elem& x) const;

    const UnitData& units() const;
    bool is_zeta5() const { return units().w == 10; }

private:
    CMField() = default;
    void init_sigma();
    Elem reconstruct(const Complex& z1, const Complex& z2, const Int& den) const;

    Int A_, B_, D_, d_, m_;
    GaloisType type_ = GaloisType::NonGalois;
    std::optional<Elem> sigma_alpha_;
    mutable std::once_flag units_once_;
    mutable std::unique_ptr<UnitData> units_;
};

using FieldPtr = std::shared_ptr<const CMField>;

// Fundamental unit of the real quadratic order Z[omega0] via continued fractions,
// returned as (x, y) meaning x + y*omega0, normalised to exceed 1.
std::pair<Int, Int> quadratic_fundamental_unit(const Int& d);

// Monic integer polynomial evaluated at x (coefficients low to high).
Elem eval_poly(const std::vector<Int>& poly, const Elem& x);

// Search a root b of a monic quartic chi with small Z-coordinates in the
// power basis of chi such that the characteristic polynomial of b is
// x^4 + A x^2 + B. Returns (A, B).
std::optional<std::pair<Int, Int>> cm_normal_form(const std::vector<Int>& chi, int box = 2);

// Complex roots of a monic polynomial with integer coefficients.
std::vector<Complex> complex_roots(const std::vector<Int>& poly);

}  // namespace cmq
