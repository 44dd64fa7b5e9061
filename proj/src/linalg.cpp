#include "cmq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cmq {

RatMat to_rat(const IntMat& m) {
    RatMat r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

Rat ratio(const Int& n, const Int& d) {
    Rat q(n, d);
    q.canonicalize();
    return q;
}

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int floor_rat(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

static Int round_rat(const Rat& q) { return floor_rat(q + Rat(1, 2)); }

Int isqrt(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt of negative");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const Int& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

Int gcd_vec(const std::vector<Int>& v) {
    Int g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return g;
}

namespace {

template <class T>
void swap_cols(Mat<T>& a, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
}

template <class T>
void swap_rows(Mat<T>& a, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
}

// col_j <- x*col_j + y*col_c ; col_c <- z*col_c + w*col_j (simultaneously)
void col_combine(IntMat& a, std::size_t j, std::size_t c, const Int& x, const Int& y, const Int& z,
                 const Int& w) {
    for (std::size_t r = 0; r < a.rows(); ++r) {
        Int aj = a(r, j), ac = a(r, c);
        a(r, j) = x * aj + y * ac;
        a(r, c) = z * ac + w * aj;
    }
}

void col_addmul(IntMat& a, std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < a.rows(); ++r) a(r, dst) += q * a(r, src);
}

void row_addmul(IntMat& a, std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < a.cols(); ++c) a(dst, c) += q * a(src, c);
}

}  // namespace

HnfResult hnf(const IntMat& m, bool with_transform) {
    HnfResult res;
    IntMat a = m;
    const long n = static_cast<long>(m.rows());
    const long k = static_cast<long>(m.cols());
    IntMat u = with_transform ? IntMat::identity(m.cols()) : IntMat();
    long j = k - 1;
    for (long i = n - 1; i >= 0 && j >= 0; --i) {
        for (long c = 0; c < j; ++c) {
            if (a(i, c) == 0) continue;
            if (a(i, j) == 0) {
                swap_cols(a, c, j);
                if (with_transform) swap_cols(u, c, j);
                continue;
            }
            Int g, s, t;
            Int aj = a(i, j), ac = a(i, c);
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), aj.get_mpz_t(), ac.get_mpz_t());
            Int p = aj / g, q = ac / g;
            col_combine(a, j, c, s, t, p, -q);
            if (with_transform) col_combine(u, j, c, s, t, p, -q);
        }
        if (a(i, j) == 0) continue;
        if (a(i, j) < 0) {
            for (long r = 0; r < n; ++r) a(r, j) = -a(r, j);
            if (with_transform)
                for (long r = 0; r < k; ++r) u(r, j) = -u(r, j);
        }
        for (long c = j + 1; c < k; ++c) {
            Int q = floor_div(a(i, c), a(i, j));
            if (q != 0) {
                col_addmul(a, c, j, -q);
                if (with_transform) col_addmul(u, c, j, -q);
            }
        }
        --j;
    }
    res.h = std::move(a);
    res.u = std::move(u);
    res.rank = static_cast<std::size_t>(k - 1 - j);
    return res;
}

IntMat hnf_basis(const IntMat& m) {
    auto r = hnf(m, false);
    IntMat b(m.rows(), r.rank);
    const std::size_t off = m.cols() - r.rank;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < r.rank; ++j) b(i, j) = r.h(i, off + j);
    return b;
}

SnfResult snf(const IntMat& m, bool with_transforms) {
    SnfResult res;
    IntMat a = m;
    const std::size_t r = m.rows(), c = m.cols();
    IntMat u = with_transforms ? IntMat::identity(r) : IntMat();
    IntMat v = with_transforms ? IntMat::identity(c) : IntMat();
    const std::size_t lim = std::min(r, c);
    for (std::size_t t = 0; t < lim; ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block to (t,t)
            std::size_t bi = r, bj = c;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j)
                    if (a(i, j) != 0 && (bi == r || abs(a(i, j)) < abs(a(bi, bj)))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == r) break;
            swap_rows(a, t, bi);
            if (with_transforms) swap_rows(u, t, bi);
            swap_cols(a, t, bj);
            if (with_transforms) swap_cols(v, t, bj);
            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (a(i, t) == 0) continue;
                Int q = floor_div(a(i, t), a(t, t));
                row_addmul(a, i, t, -q);
                if (with_transforms) row_addmul(u, i, t, -q);
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (a(t, j) == 0) continue;
                Int q = floor_div(a(t, j), a(t, t));
                col_addmul(a, j, t, -q);
                if (with_transforms) col_addmul(v, j, t, -q);
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            bool divides = true;
            for (std::size_t i = t + 1; i < r && divides; ++i)
                for (std::size_t j = t + 1; j < c; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        row_addmul(a, t, i, 1);
                        if (with_transforms) row_addmul(u, t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (a(t, t) < 0) {
            for (std::size_t j = 0; j < c; ++j) a(t, j) = -a(t, j);
            if (with_transforms)
                for (std::size_t j = 0; j < r; ++j) u(t, j) = -u(t, j);
        }
    }
    for (std::size_t t = 0; t < lim; ++t) res.diag.push_back(a(t, t));
    res.d = std::move(a);
    res.u = std::move(u);
    res.v = std::move(v);
    return res;
}

IntMat integer_kernel(const IntMat& m) {
    auto r = hnf(m, true);
    const std::size_t nk = m.cols() - r.rank;
    IntMat k(m.cols(), nk);
    for (std::size_t i = 0; i < m.cols(); ++i)
        for (std::size_t j = 0; j < nk; ++j) k(i, j) = r.u(i, j);
    return k;
}

Rat det(const RatMat& m0) {
    if (m0.rows() != m0.cols()) throw std::invalid_argument("det: not square");
    RatMat m = m0;
    const std::size_t n = m.rows();
    Rat d = 1;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t p = i;
        while (p < n && m(p, i) == 0) ++p;
        if (p == n) return 0;
        if (p != i) {
            swap_rows(m, i, p);
            d = -d;
        }
        d *= m(i, i);
        for (std::size_t r = i + 1; r < n; ++r) {
            if (m(r, i) == 0) continue;
            Rat f = m(r, i) / m(i, i);
            for (std::size_t c = i; c < n; ++c) m(r, c) -= f * m(i, c);
        }
    }
    return d;
}

Int det(const IntMat& m) {
    Rat d = det(to_rat(m));
    return d.get_num();
}

RatMat inverse(const RatMat& m0) {
    const std::size_t n = m0.rows();
    if (n != m0.cols()) throw std::invalid_argument("inverse: not square");
    RatMat m = m0;
    RatMat inv = RatMat::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t p = i;
        while (p < n && m(p, i) == 0) ++p;
        if (p == n) throw std::domain_error("inverse: singular matrix");
        swap_rows(m, i, p);
        swap_rows(inv, i, p);
        Rat piv = m(i, i);
        for (std::size_t c = 0; c < n; ++c) {
            m(i, c) /= piv;
            inv(i, c) /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == i || m(r, i) == 0) continue;
            Rat f = m(r, i);
            for (std::size_t c = 0; c < n; ++c) {
                m(r, c) -= f * m(i, c);
                inv(r, c) -= f * inv(i, c);
            }
        }
    }
    return inv;
}

std::vector<Rat> solve(const RatMat& m, const std::vector<Rat>& b) {
    RatMat inv = inverse(m);
    std::vector<Rat> x(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) x[i] += inv(i, j) * b[j];
    return x;
}

namespace {

struct GS {
    RatMat mu;
    std::vector<Rat> b;
};

GS gram_schmidt(const RatMat& g) {
    const std::size_t n = g.rows();
    GS gs{RatMat(n, n), std::vector<Rat>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            Rat s = g(i, j);
            for (std::size_t l = 0; l < j; ++l) s -= gs.mu(j, l) * gs.mu(i, l) * gs.b[l];
            gs.mu(i, j) = s / gs.b[j];
        }
        Rat s = g(i, i);
        for (std::size_t l = 0; l < i; ++l) s -= gs.mu(i, l) * gs.mu(i, l) * gs.b[l];
        if (s <= 0) throw std::domain_error("lll: form is not positive definite");
        gs.b[i] = s;
    }
    return gs;
}

RatMat congruent(const RatMat& g, const IntMat& t) {
    RatMat tr = to_rat(t);
    return tr.transpose() * g * tr;
}

}  // namespace

IntMat lll_gram(const RatMat& gram, const Rat& delta) {
    const std::size_t n = gram.rows();
    IntMat t = IntMat::identity(n);
    if (n <= 1) return t;
    RatMat g = gram;
    std::size_t k = 1;
    while (k < n) {
        GS gs = gram_schmidt(g);
        bool changed = false;
        for (std::size_t jj = k; jj-- > 0;) {
            Int q = round_rat(gs.mu(k, jj));
            if (q == 0) continue;
            col_addmul(t, k, jj, -q);
            for (std::size_t l = 0; l <= jj; ++l) {
                if (l == jj)
                    gs.mu(k, l) -= Rat(q);
                else
                    gs.mu(k, l) -= Rat(q) * gs.mu(jj, l);
            }
            changed = true;
        }
        if (changed) g = congruent(gram, t);
        const Rat& m = gs.mu(k, k - 1);
        if (gs.b[k] >= (delta - m * m) * gs.b[k - 1]) {
            ++k;
        } else {
            swap_cols(t, k, k - 1);
            g = congruent(gram, t);
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
    return t;
}

LllResult lll_reduce(const IntMat& basis, const RatMat& gram, const Rat& delta) {
    RatMat b = to_rat(basis);
    RatMat cg = b.transpose() * gram * b;
    IntMat t = lll_gram(cg, delta);
    return {basis * t, t};
}

bool is_lll_reduced(const RatMat& gram, const Rat& delta) {
    GS gs = gram_schmidt(gram);
    const std::size_t n = gram.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (abs(gs.mu(i, j)) > Rat(1, 2)) return false;
    for (std::size_t k = 1; k < n; ++k) {
        const Rat& m = gs.mu(k, k - 1);
        if (gs.b[k] < (delta - m * m) * gs.b[k - 1]) return false;
    }
    return true;
}

namespace {

struct Enumerator {
    std::size_t n;
    RatMat q;  // q(i,i) diagonal, q(i,j) j>i coefficients
    Rat bound;
    IntMat t;
    std::vector<Int> y;

    explicit Enumerator(const RatMat& gram, const Rat& b) : n(gram.rows()), bound(b) {
        t = lll_gram(gram);
        RatMat g = congruent(gram, t);
        q = g;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                q(j, i) = q(i, j);
                q(i, j) = q(i, j) / q(i, i);
            }
            for (std::size_t k = i + 1; k < n; ++k)
                for (std::size_t l = k; l < n; ++l) q(k, l) -= q(k, i) * q(i, l);
        }
        y.assign(n, 0);
    }

    // integer range of x with q_ii (x - c)^2 <= rem
    bool range(std::size_t i, const Rat& c, const Rat& rem, Int& lo, Int& hi) const {
        if (rem < 0) return false;
        const Rat& qi = q(i, i);
        auto ok = [&](const Int& x) {
            Rat d = Rat(x) - c;
            return qi * d * d <= rem;
        };
        long double cd = c.get_d();
        long double rd = std::sqrt(static_cast<long double>(Rat(rem / qi).get_d()));
        lo = Int(static_cast<double>(std::ceil(cd - rd)));
        hi = Int(static_cast<double>(std::floor(cd + rd)));
        while (ok(lo - 1)) lo -= 1;
        while (lo <= hi && !ok(lo)) lo += 1;
        while (ok(hi + 1)) hi += 1;
        while (hi >= lo && !ok(hi)) hi -= 1;
        return lo <= hi;
    }

    Rat center(std::size_t i) const {
        Rat c = 0;
        for (std::size_t j = i + 1; j < n; ++j) c -= q(i, j) * Rat(y[j]);
        return c;
    }

    // returns false if stopped
    bool rec(std::size_t i, const Rat& rem, bool upper_zero, const ShortVecFn& fn) {
        Rat c = center(i);
        Int lo, hi;
        if (!range(i, c, rem, lo, hi)) return true;
        if (upper_zero && lo < 0) lo = 0;
        for (Int x = lo; x <= hi; ++x) {
            y[i] = x;
            Rat d = Rat(x) - c;
            Rat r2 = rem - q(i, i) * d * d;
            if (i == 0) {
                if (upper_zero && x == 0) continue;
                std::vector<Int> out(n, 0);
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t b = 0; b < n; ++b) out[a] += t(a, b) * y[b];
                if (!fn(out, bound - r2)) return false;
            } else if (!rec(i - 1, r2, upper_zero && x == 0, fn)) {
                return false;
            }
        }
        y[i] = 0;
        return true;
    }
};

}  // namespace

void enumerate_short(const RatMat& gram, const Rat& bound, const ShortVecFn& fn) {
    if (gram.rows() == 0) return;
    Enumerator e(gram, bound);
    e.rec(e.n - 1, bound, true, fn);
}

std::vector<std::vector<Int>> short_vectors(const RatMat& gram, const Rat& bound) {
    std::vector<std::vector<Int>> out;
    enumerate_short(gram, bound, [&](const std::vector<Int>& v, const Rat&) {
        out.push_back(v);
        return true;
    });
    return out;
}

std::vector<std::vector<Int>> short_vectors_parallel(const RatMat& gram, const Rat& bound) {
    if (gram.rows() == 0) return {};
    Enumerator proto(gram, bound);
    const std::size_t top = proto.n - 1;
    Int lo, hi;
    if (!proto.range(top, Rat(0), bound, lo, hi)) return {};
    if (lo < 0) lo = 0;
    const long cnt = Int(hi - lo + 1).get_si();
    std::vector<std::vector<std::vector<Int>>> buckets(cnt);
#pragma omp parallel for schedule(dynamic)
    for (long s = 0; s < cnt; ++s) {
        Enumerator e = proto;
        Int x = lo + s;
        e.y[top] = x;
        Rat r2 = bound - e.q(top, top) * Rat(x) * Rat(x);
        auto emit = [&](const std::vector<Int>& v, const Rat&) {
            buckets[s].push_back(v);
            return true;
        };
        if (top == 0) {
            if (x != 0) {
                std::vector<Int> v(1, e.t(0, 0) * x);
                buckets[s].push_back(v);
            }
        } else {
            e.rec(top - 1, r2, x == 0, emit);
        }
    }
    std::vector<std::vector<Int>> out;
    for (auto& b : buckets)
        for (auto& v : b) out.push_back(std::move(v));
    return out;
}

// ---------------------------------------------------------------- Lattice

Lattice Lattice::standard(std::size_t n) {
    Lattice l;
    l.h_ = IntMat::identity(n);
    l.d_ = 1;
    return l;
}

Lattice Lattice::from_generators(std::size_t n, const std::vector<std::vector<Rat>>& gens) {
    Int d = 1;
    for (const auto& g : gens)
        for (const auto& x : g) d = lcm(d, Int(x.get_den()));
    IntMat m(n, gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) {
            Rat v = gens[j][i] * Rat(d);
            m(i, j) = v.get_num();
        }
    IntMat b = hnf_basis(m);
    if (b.cols() != n) throw std::domain_error("lattice: generators do not have full rank");
    Int g = d;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g = gcd(g, b(i, j));
    Lattice l;
    l.d_ = d / g;
    l.h_ = IntMat(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) l.h_(i, j) = b(i, j) / g;
    return l;
}

Lattice Lattice::from_basis(const RatMat& cols) {
    std::vector<std::vector<Rat>> g;
    for (std::size_t j = 0; j < cols.cols(); ++j) g.push_back(cols.col(j));
    return from_generators(cols.rows(), g);
}

RatMat Lattice::basis() const {
    RatMat b = to_rat(h_);
    Rat inv = Rat(1) / Rat(d_);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) *= inv;
    return b;
}

std::vector<Rat> Lattice::basis_vector(std::size_t j) const {
    std::vector<Rat> v(dim());
    for (std::size_t i = 0; i < dim(); ++i) v[i] = Rat(h_(i, j)) / Rat(d_);
    return v;
}

std::vector<std::vector<Rat>> Lattice::basis_vectors() const {
    std::vector<std::vector<Rat>> out;
    for (std::size_t j = 0; j < dim(); ++j) out.push_back(basis_vector(j));
    return out;
}

Rat Lattice::covolume() const {
    Int p = 1;
    for (std::size_t i = 0; i < dim(); ++i) p *= h_(i, i);
    Int dn;
    mpz_pow_ui(dn.get_mpz_t(), d_.get_mpz_t(), dim());
    return ratio(p, dn);
}

std::vector<Rat> Lattice::coordinates(const std::vector<Rat>& x) const {
    const std::size_t n = dim();
    std::vector<Rat> c(n);
    for (std::size_t ii = n; ii-- > 0;) {
        Rat s = x[ii] * Rat(d_);
        for (std::size_t j = ii + 1; j < n; ++j) s -= Rat(h_(ii, j)) * c[j];
        c[ii] = s / Rat(h_(ii, ii));
    }
    return c;
}

bool Lattice::contains(const std::vector<Rat>& x) const {
    for (const auto& c : coordinates(x))
        if (c.get_den() != 1) return false;
    return true;
}

bool Lattice::contains(const Lattice& o) const {
    for (std::size_t j = 0; j < o.dim(); ++j)
        if (!contains(o.basis_vector(j))) return false;
    return true;
}

Lattice Lattice::operator+(const Lattice& o) const {
    auto g = basis_vectors();
    auto h = o.basis_vectors();
    g.insert(g.end(), h.begin(), h.end());
    return from_generators(dim(), g);
}

Lattice Lattice::dual() const {
    RatMat inv = inverse(basis());
    return from_basis(inv.transpose());
}

Lattice Lattice::intersect(const Lattice& o) const { return (dual() + o.dual()).dual(); }

Lattice Lattice::scaled(const Rat& c) const {
    if (c == 0) throw std::domain_error("lattice: zero scale");
    RatMat b = basis();
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) *= c;
    return from_basis(b);
}

std::string Lattice::key() const {
    std::ostringstream os;
    os << d_.get_str() << '|';
    for (std::size_t i = 0; i < h_.rows(); ++i)
        for (std::size_t j = i; j < h_.cols(); ++j) os << h_(i, j).get_str() << ',';
    return os.str();
}

Rat lattice_index(const Lattice& big, const Lattice& small) { return small.covolume() / big.covolume(); }

}  // namespace cmq
