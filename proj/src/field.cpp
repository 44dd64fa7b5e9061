#include "cmq/field.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cmq {

std::string to_string(GaloisType t) {
    switch (t) {
        case GaloisType::Cyclic: return "cyclic";
        case GaloisType::Biquadratic: return "biquadratic";
        default: return "non-galois";
    }
}

// ------------------------------------------------------------------ Elem

Elem Elem::operator+(const Elem& o) const {
    Elem r = *this;
    for (int i = 0; i < 4; ++i) r.c_[i] += o.c_[i];
    if (!r.k_) r.k_ = o.k_;
    return r;
}

Elem Elem::operator-(const Elem& o) const {
    Elem r = *this;
    for (int i = 0; i < 4; ++i) r.c_[i] -= o.c_[i];
    if (!r.k_) r.k_ = o.k_;
    return r;
}

Elem Elem::operator-() const {
    Elem r = *this;
    for (int i = 0; i < 4; ++i) r.c_[i] = -r.c_[i];
    return r;
}

Elem Elem::operator*(const Elem& o) const {
    const CMField* k = k_ ? k_ : o.k_;
    Rat p[7];
    for (int i = 0; i < 4; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < 4; ++j)
            if (o.c_[j] != 0) p[i + j] += c_[i] * o.c_[j];
    }
    const Rat A = k->A(), B = k->B();
    std::array<Rat, 4> r;
    r[0] = p[0] - B * p[4] + A * B * p[6];
    r[1] = p[1] - B * p[5];
    r[2] = p[2] - A * p[4] + (A * A - B) * p[6];
    r[3] = p[3] - A * p[5];
    return Elem(k, r);
}

Elem Elem::operator*(const Rat& q) const {
    Elem r = *this;
    for (int i = 0; i < 4; ++i) r.c_[i] *= q;
    return r;
}

Elem Elem::conj() const {
    Elem r = *this;
    r.c_[1] = -r.c_[1];
    r.c_[3] = -r.c_[3];
    return r;
}

Elem Elem::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    Elem rr = *this * conj();
    const Rat a = rr.c_[0], b = rr.c_[2];
    const Rat A = k_->A(), B = k_->B();
    Rat n0 = a * a - A * a * b + B * b * b;
    Elem ri(k_, {(a - A * b) / n0, Rat(0), -b / n0, Rat(0)});
    return conj() * ri;
}

Elem Elem::operator/(const Elem& o) const { return *this * o.inverse(); }

Elem Elem::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Elem r = k_->one();
    Elem b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

std::string Elem::str() const {
    std::ostringstream os;
    os << '[' << c_[0].get_str() << ',' << c_[1].get_str() << ',' << c_[2].get_str() << ','
       << c_[3].get_str() << ']';
    return os.str();
}

// --------------------------------------------------------------- CMField

namespace {

Int squarefree_part(Int n, Int& sq) {
    sq = 1;
    Int p = 2;
    Int r = n;
    Int out = 1;
    while (p * p <= r) {
        int e = 0;
        while (r % p == 0) {
            r /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) sq *= p;
        if (e % 2) out *= p;
        p += (p == 2 ? 1 : 2);
    }
    out *= r;
    return out;
}

}  // namespace

std::shared_ptr<const CMField> CMField::make(const Int& A, const Int& B) {
    if (A <= 0 || B <= 0) throw std::invalid_argument("CM field needs A > 0 and B > 0");
    Int delta = A * A - 4 * B;
    if (delta <= 0) throw std::invalid_argument("CM field needs A^2 - 4B > 0");
    if (is_square(delta)) throw std::invalid_argument("x^4 + A x^2 + B is reducible (A^2 - 4B is a square)");
    std::shared_ptr<CMField> k(new CMField());
    k->A_ = A;
    k->B_ = B;
    k->d_ = squarefree_part(delta, k->m_);
    k->D_ = (k->d_ % 4 == 1) ? k->d_ : 4 * k->d_;
    if (is_square(B))
        k->type_ = GaloisType::Biquadratic;
    else if (is_square(B * delta))
        k->type_ = GaloisType::Cyclic;
    else
        k->type_ = GaloisType::NonGalois;
    if (k->type_ == GaloisType::Cyclic) k->init_sigma();
    return k;
}

std::shared_ptr<const CMField> CMField::make(const Int& D, const Int& A, const Int& B) {
    auto k = make(A, B);
    if (k->D() != D)
        throw std::invalid_argument("field triple: D = " + D.get_str() + " does not match A, B (expected " +
                                    k->D().get_str() + ")");
    return k;
}

Int CMField::poly_disc() const {
    Int delta = A_ * A_ - 4 * B_;
    return 16 * B_ * delta * delta;
}

std::string CMField::label() const {
    return "[" + D_.get_str() + "," + A_.get_str() + "," + B_.get_str() + "]";
}

Elem CMField::zero() const { return Elem(this, {Rat(0), Rat(0), Rat(0), Rat(0)}); }
Elem CMField::one() const { return Elem(this, {Rat(1), Rat(0), Rat(0), Rat(0)}); }
Elem CMField::rat(const Rat& q) const { return Elem(this, {q, Rat(0), Rat(0), Rat(0)}); }
Elem CMField::alpha() const { return Elem(this, {Rat(0), Rat(1), Rat(0), Rat(0)}); }

Elem CMField::make_elem(const std::vector<Rat>& c) const {
    if (c.size() != 4) throw std::invalid_argument("element needs 4 coordinates");
    return Elem(this, {c[0], c[1], c[2], c[3]});
}

Elem CMField::sqrt_d() const {
    // sqrt(d) = (2 omega + A) / m
    return Elem(this, {ratio(A_, m_), Rat(0), ratio(2, m_), Rat(0)});
}

Elem CMField::omega0() const {
    if (d_ % 4 == 1) return (one() + sqrt_d()) * Rat(1, 2);
    return sqrt_d();
}

Rat CMField::trace(const Elem& x) const { return 4 * x[0] - 2 * Rat(A_) * x[2]; }

Rat CMField::real_norm(const Elem& x) const {
    const Rat a = x[0], b = x[2];
    return a * a - Rat(A_) * a * b + Rat(B_) * b * b;
}

Rat CMField::real_trace(const Elem& x) const { return 2 * x[0] - Rat(A_) * x[2]; }

Rat CMField::norm(const Elem& x) const { return real_norm(x * x.conj()); }

RatMat CMField::trace_form() const {
    Rat t[7];
    t[0] = 4;
    t[2] = -2 * Rat(A_);
    t[4] = 2 * Rat(A_ * A_ - 2 * B_);
    t[6] = 2 * Rat(-A_ * A_ * A_ + 3 * A_ * B_);
    RatMat m(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = t[i + j];
    return m;
}

RatMat CMField::mult_matrix(const Elem& x) const {
    RatMat m(4, 4);
    Elem p = x;
    for (int j = 0; j < 4; ++j) {
        for (int i = 0; i < 4; ++i) m(i, j) = p[i];
        p = p * alpha();
    }
    return m;
}

static std::vector<Rat> faddeev(const RatMat& m) {
    const std::size_t n = m.rows();
    std::vector<Rat> c(n + 1);
    c[n] = 1;
    RatMat mk(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        RatMat t = m * mk;
        for (std::size_t i = 0; i < n; ++i) t(i, i) += c[n - k + 1];
        mk = t;
        RatMat mm = m * mk;
        Rat tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += mm(i, i);
        c[n - k] = -tr / Rat(static_cast<long>(k));
    }
    return c;
}

std::vector<Rat> CMField::char_poly(const Elem& x) const { return faddeev(mult_matrix(x)); }

void CMField::init_sigma() {
    Int delta = A_ * A_ - 4 * B_;
    Int r = isqrt(B_ * delta);
    for (int attempt = 0; attempt < 2; ++attempt) {
        Rat c3 = ratio(A_, r);
        Rat c1 = ratio((A_ * A_ - 2 * B_) * r, B_ * delta);
        Elem s(this, {Rat(0), c1, Rat(0), c3});
        Elem t(this, {c1, Rat(0), c3, Rat(0)});
        if (s * s != rat(Rat(-A_)) - omega()) throw std::logic_error("sigma: closed form failed");
        if (real_sign(t, 0) > 0) {
            sigma_alpha_ = s;
            return;
        }
        r = -r;
    }
    throw std::logic_error("sigma: no sign matches the CM type");
}

const Elem& CMField::sigma_alpha() const {
    if (!sigma_alpha_) throw std::domain_error("sigma is only defined for cyclic fields");
    return *sigma_alpha_;
}

Elem CMField::sigma(const Elem& x, int k) const {
    const Elem& s = sigma_alpha();
    k = ((k % 4) + 4) % 4;
    Elem r = x;
    for (int step = 0; step < k; ++step) {
        Elem acc = rat(r[0]);
        Elem p = s;
        for (int i = 1; i < 4; ++i) {
            acc = acc + p * r[i];
            if (i < 3) p = p * s;
        }
        r = acc;
    }
    return r;
}

int CMField::real_sign(const Elem& x, int k) const {
    if (!x.is_real()) throw std::domain_error("real_sign: element is not real");
    // a + b omega_k = (2a - A b +- b s)/2
    const Rat a = x[0], b = x[2];
    Rat p = 2 * a - Rat(A_) * b;
    Rat q = (k == 0) ? b : Rat(-b);
    Rat delta = Rat(A_ * A_ - 4 * B_);
    auto sg = [](const Rat& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
    if (q == 0) return sg(p);
    if (p == 0) return sg(q);
    if (sg(p) == sg(q)) return sg(p);
    return (p * p > q * q * delta) ? sg(p) : sg(q);
}

bool CMField::is_totally_positive(const Elem& x) const { return real_sign(x, 0) > 0 && real_sign(x, 1) > 0; }

namespace {

long double to_ld(const Rat& q) {
    // enough for diagnostics and root reconstruction
    return static_cast<long double>(q.get_num().get_d()) / static_cast<long double>(q.get_den().get_d());
}

}  // namespace

Complex CMField::embed(const Elem& x, int k) const {
    long double A = A_.get_d(), B = B_.get_d();
    long double s = std::sqrt(A * A - 4 * B);
    long double w = (k == 0) ? -2 * B / (A + s) : -(A + s) / 2;
    Complex a(0, std::sqrt(-w));
    Complex r = 0, p = 1;
    for (int i = 0; i < 4; ++i) {
        r += p * to_ld(x[i]);
        p *= a;
    }
    return r;
}

long double CMField::real_embed(const Elem& x, int k) const { return embed(x, k).real(); }

Elem CMField::reconstruct(const Complex& z1, const Complex& z2, const Int& den) const {
    long double A = A_.get_d(), B = B_.get_d();
    long double s = std::sqrt(A * A - 4 * B);
    long double u1 = 2 * B / (A + s), u2 = (A + s) / 2;  // a1^2, a2^2
    long double a1 = std::sqrt(u1), a2 = std::sqrt(u2);
    long double c2 = (z1.real() - z2.real()) / (u2 - u1);
    long double c0 = z1.real() + c2 * u1;
    long double y1 = z1.imag() / a1, y2 = z2.imag() / a2;
    long double c3 = (y1 - y2) / (u2 - u1);
    long double c1 = y1 + c3 * u1;
    long double dd = den.get_d();
    std::array<Rat, 4> c;
    long double v[4] = {c0, c1, c2, c3};
    for (int i = 0; i < 4; ++i) {
        long double t = std::round(v[i] * dd);
        if (!std::isfinite(t) || std::fabs(t) > 9e15L) return zero();
        c[i] = ratio(Int(static_cast<double>(t)), den);
    }
    return Elem(this, c);
}

Elem eval_poly(const std::vector<Int>& poly, const Elem& x) {
    Elem r = x.field()->zero();
    for (std::size_t i = poly.size(); i-- > 0;) r = r * x + x.field()->rat(Rat(poly[i]));
    return r;
}

std::vector<Complex> complex_roots(const std::vector<Int>& poly) {
    const std::size_t n = poly.size() - 1;
    std::vector<long double> c(poly.size());
    for (std::size_t i = 0; i <= n; ++i) c[i] = poly[i].get_d();
    long double rad = 1;
    for (std::size_t i = 0; i < n; ++i) rad = std::max(rad, 1 + std::fabs(c[i]));
    auto ev = [&](const Complex& z) {
        Complex r = 0;
        for (std::size_t i = n + 1; i-- > 0;) r = r * z + c[i];
        return r;
    };
    auto dev = [&](const Complex& z) {
        Complex r = 0;
        for (std::size_t i = n; i >= 1; --i) r = r * z + c[i] * static_cast<long double>(i);
        return r;
    };
    std::vector<Complex> z(n);
    for (std::size_t k = 0; k < n; ++k) z[k] = std::polar(rad, 0.4L + 6.283185307179586L * k / n);
    for (int it = 0; it < 2000; ++it) {
        long double delta = 0;
        for (std::size_t k = 0; k < n; ++k) {
            Complex den = 1;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) den *= (z[k] - z[j]);
            Complex step = ev(z[k]) / den;
            z[k] -= step;
            delta = std::max(delta, std::abs(step));
        }
        if (delta < 1e-18L) break;
    }
    for (auto& r : z)
        for (int it = 0; it < 5; ++it) {
            Complex d = dev(r);
            if (std::abs(d) == 0) break;
            r -= ev(r) / d;
        }
    return z;
}

static Int index_bound(const Int& disc) {
    // largest den with den^2 | disc
    Int n = abs(disc), den = 1, p = 2;
    while (p * p <= n) {
        while (n % (p * p) == 0) {
            n /= p * p;
            den *= p;
        }
        while (n % p == 0) n /= p;
        p += (p == 2 ? 1 : 2);
    }
    return den;
}

std::vector<Elem> CMField::roots(const std::vector<Int>& poly) const {
    std::vector<Elem> out;
    auto zs = complex_roots(poly);
    Int den = index_bound(poly_disc());
    for (const auto& z1 : zs)
        for (const auto& z2 : zs) {
            Elem r = reconstruct(z1, z2, den);
            if (!eval_poly(poly, r).is_zero()) continue;
            bool seen = false;
            for (const auto& o : out) seen = seen || o == r;
            if (!seen) out.push_back(r);
        }
    return out;
}

std::optional<Elem> CMField::sqrt(const Elem& x) const {
    if (x.is_zero()) return x;
    Int t = 1;
    for (int i = 0; i < 4; ++i) t = lcm(t, Int(x[i].get_den()));
    Elem xs = x * Rat(t * t);
    Int den = index_bound(poly_disc());
    Complex w1 = std::sqrt(embed(xs, 0)), w2 = std::sqrt(embed(xs, 1));
    for (int s = 0; s < 2; ++s) {
        Elem r = reconstruct(w1, s ? -w2 : w2, den);
        if (r * r == xs) return r * ratio(1, t);
    }
    return std::nullopt;
}

std::pair<Int, Int> quadratic_fundamental_unit(const Int& d) {
    const bool one_mod_4 = (d % 4 == 1);
    Int P = one_mod_4 ? 1 : 0, Q = one_mod_4 ? 2 : 1;
    const Int tr = one_mod_4 ? 1 : 0;
    const Int nm = one_mod_4 ? Int((1 - d) / 4) : Int(-d);
    const Int sd = isqrt(d);
    Int p1 = 1, p2 = 0, q1 = 0, q2 = 1;
    for (int it = 0; it < 100000; ++it) {
        Int a = floor_div(P + sd, Q);
        Int p = a * p1 + p2, q = a * q1 + q2;
        p2 = p1;
        p1 = p;
        q2 = q1;
        q1 = q;
        Int n = p * p - p * q * tr + q * q * nm;
        if (n == 1 || n == -1) {
            // conjugate of p - q*omega0 has absolute value > 1
            Int x = p - q * tr, y = q;
            long double w0 = one_mod_4 ? (1 + std::sqrt((long double)d.get_d())) / 2 : std::sqrt((long double)d.get_d());
            if (x.get_d() + y.get_d() * w0 < 0) {
                x = -x;
                y = -y;
            }
            return {x, y};
        }
        P = a * Q - P;
        Q = (d - P * P) / Q;
    }
    throw std::runtime_error("fundamental unit: continued fraction did not terminate");
}

const UnitData& CMField::units() const {
    std::call_once(units_once_, [this] {
        auto u = std::make_unique<UnitData>();
        auto [x, y] = quadratic_fundamental_unit(d_);
        u->eps0 = rat(Rat(x)) + omega0() * Rat(y);
        const std::vector<std::pair<long, std::vector<Int>>> cyclo = {
            {12, {1, 0, -1, 0, 1}}, {10, {1, -1, 1, -1, 1}}, {8, {1, 0, 0, 0, 1}}, {6, {1, -1, 1}}, {4, {1, 0, 1}}};
        u->w = 2;
        u->zeta = rat(Rat(-1));
        for (const auto& [n, poly] : cyclo) {
            auto rs = roots(poly);
            if (!rs.empty()) {
                u->w = n;
                u->zeta = rs.front();
                break;
            }
        }
        u->epsK = u->eps0;
        Elem z = one();
        for (long j = 0; j < u->w; ++j) {
            if (auto r = sqrt(z * u->eps0)) {
                u->epsK = *r;
                u->eps_half = true;
                break;
            }
            z = z * u->zeta;
        }
        u->n0 = u->epsK * u->epsK.conj();
        u->eta0 = (real_norm(u->eps0) == 1) ? u->eps0 : u->eps0 * u->eps0;
        units_ = std::move(u);
    });
    return *units_;
}

std::optional<std::pair<Int, Int>> cm_normal_form(const std::vector<Int>& chi, int box) {
    if (chi.size() != 5 || chi[4] != 1) throw std::invalid_argument("cm_normal_form: monic quartic expected");
    RatMat comp(4, 4);
    for (int i = 1; i < 4; ++i) comp(i, i - 1) = 1;
    for (int i = 0; i < 4; ++i) comp(i, 3) = -Rat(chi[i]);
    RatMat pw[4] = {RatMat::identity(4), comp, comp * comp, comp * comp * comp};
    std::optional<std::pair<Int, Int>> best;
    for (int c0 = -box; c0 <= box; ++c0)
        for (int c1 = -box; c1 <= box; ++c1)
            for (int c2 = -box; c2 <= box; ++c2)
                for (int c3 = -box; c3 <= box; ++c3) {
                    if (c1 == 0 && c2 == 0 && c3 == 0) continue;
                    RatMat m(4, 4);
                    int cs[4] = {c0, c1, c2, c3};
                    for (int k = 0; k < 4; ++k)
                        for (int i = 0; i < 4; ++i)
                            for (int j = 0; j < 4; ++j) m(i, j) += Rat(cs[k]) * pw[k](i, j);
                    auto cp = faddeev(m);
                    if (cp[1] != 0 || cp[3] != 0) continue;
                    Int a = cp[2].get_num(), b = cp[0].get_num();
                    if (a <= 0 || b <= 0) continue;
                    Int delta = a * a - 4 * b;
                    if (delta <= 0 || is_square(delta)) continue;
                    if (!best || a < best->first || (a == best->first && b < best->second)) best = {{a, b}};
                }
    return best;
}

}  // namespace cmq
