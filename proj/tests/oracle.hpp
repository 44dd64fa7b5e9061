#pragma once

// Brute-force reference computations used to cross-check the library.

#include "cmq/workbench.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using cmq::AbelianGroup;
using cmq::CMField;
using cmq::Elem;
using cmq::FracIdeal;
using cmq::Int;
using cmq::IntMat;
using cmq::Lattice;
using cmq::Order;
using cmq::Rat;
using cmq::RatMat;
using cmq::UnitData;

inline IntMat random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    IntMat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
}

// Column HNF by repeated least-remainder Euclid on each row, bottom up.
inline IntMat hnf(IntMat a) {
    const long n = static_cast<long>(a.rows()), k = static_cast<long>(a.cols());
    auto addmul = [&](long dst, long src, const Int& q) {
        for (long r = 0; r < n; ++r) a(r, dst) += q * a(r, src);
    };
    long j = k - 1;
    for (long i = n - 1; i >= 0 && j >= 0; --i) {
        for (;;) {
            long best = -1;
            for (long c = 0; c <= j; ++c)
                if (a(i, c) != 0 && (best < 0 || abs(a(i, c)) < abs(a(i, best)))) best = c;
            if (best < 0) break;
            if (best != j)
                for (long r = 0; r < n; ++r) std::swap(a(r, best), a(r, j));
            bool done = true;
            for (long c = 0; c < j; ++c) {
                if (a(i, c) == 0) continue;
                Int q = a(i, c) / a(i, j);  // truncating
                addmul(c, j, -q);
                if (a(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (a(i, j) == 0) continue;
        if (a(i, j) < 0)
            for (long r = 0; r < n; ++r) a(r, j) = -a(r, j);
        for (long c = j + 1; c < k; ++c) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(i, j).get_mpz_t());
            addmul(c, j, -q);
        }
        --j;
    }
    return a;
}

// Determinant by cofactor expansion.
inline Int det(const IntMat& m) {
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m(0, 0);
    Int s = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m(0, j) == 0) continue;
        IntMat sub(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t c = 0, cc = 0; c < n; ++c)
                if (c != j) sub(i - 1, cc++) = m(i, c);
        Int t = m(0, j) * oracle::det(sub);
        s += (j % 2 == 0) ? t : Int(-t);
    }
    return s;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// Invariant factors from the gcds of all k x k minors; zeros for rank defects.
inline std::vector<Int> snf_diag(const IntMat& m) {
    const std::size_t lim = std::min(m.rows(), m.cols());
    std::vector<Int> dk{1}, out;
    for (std::size_t k = 1; k <= lim; ++k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        std::vector<std::size_t> cur;
        subsets(m.rows(), k, 0, cur, rs);
        subsets(m.cols(), k, 0, cur, cs);
        Int g = 0;
        for (const auto& r : rs)
            for (const auto& c : cs) {
                IntMat s(k, k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) s(i, j) = m(r[i], c[j]);
                Int d = oracle::det(s);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
            }
        dk.push_back(g);
        out.push_back(dk[k - 1] == 0 ? Int(0) : Int(g / dk[k - 1]));
    }
    return out;
}

inline RatMat rat_inverse(RatMat a) {
    const std::size_t n = a.rows();
    RatMat inv = RatMat::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (a(p, c) == 0) ++p;
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(a(c, j), a(p, j));
            std::swap(inv(c, j), inv(p, j));
        }
        Rat piv = a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0) continue;
            Rat f = a(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

inline Rat quad(const RatMat& g, const std::vector<Int>& x) {
    Rat s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) s += g(i, j) * Rat(x[i]) * Rat(x[j]);
    return s;
}

// x with first nonzero coordinate positive
inline std::vector<Int> canonical_sign(std::vector<Int> x) {
    for (const auto& c : x)
        if (c != 0) {
            if (c < 0)
                for (auto& y : x) y = -y;
            break;
        }
    return x;
}

// Every nonzero x with x^T G x <= bound up to sign, by a coordinate box from G^{-1}.
inline std::set<std::vector<Int>> short_vectors(const RatMat& g, const Rat& bound, long cap = 2000000) {
    const std::size_t n = g.rows();
    RatMat gi = rat_inverse(g);
    std::vector<long> lim(n);
    long total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Rat b = bound * gi(i, i);
        lim[i] = static_cast<long>(std::floor(std::sqrt(b.get_d()))) + 1;
        total *= 2 * lim[i] + 1;
        if (total > cap) throw std::runtime_error("oracle::short_vectors: box too large");
    }
    std::set<std::vector<Int>> out;
    std::vector<long> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = -lim[i];
    for (;;) {
        std::vector<Int> x(n);
        bool zero = true;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = c[i];
            zero = zero && c[i] == 0;
        }
        if (!zero && quad(g, x) <= bound) out.insert(canonical_sign(x));
        std::size_t i = 0;
        while (i < n && ++c[i] > lim[i]) {
            c[i] = -lim[i];
            ++i;
        }
        if (i == n) break;
    }
    return out;
}

inline Rat shortest_length(const RatMat& g) {
    // the diagonal bounds the minimum
    Rat b = g(0, 0);
    for (std::size_t i = 1; i < g.rows(); ++i) b = std::min(b, g(i, i));
    Rat best = b;
    for (const auto& v : oracle::short_vectors(g, b)) best = std::min(best, quad(g, v));
    return best;
}

// Size reduction and the Lovasz condition from exact Gram-Schmidt data.
inline bool lll_reduced(const RatMat& g, const Rat& delta) {
    const std::size_t n = g.rows();
    std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n));
    std::vector<Rat> b(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            Rat s = g(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= mu[i][k] * mu[j][k] * b[k];
            mu[i][j] = s / b[j];
            if (abs(mu[i][j]) > Rat(1, 2)) return false;
        }
        Rat s = g(i, i);
        for (std::size_t k = 0; k < i; ++k) s -= mu[i][k] * mu[i][k] * b[k];
        b[i] = s;
        if (i > 0 && delta * b[i - 1] > b[i] + mu[i][i - 1] * mu[i][i - 1] * b[i - 1]) return false;
    }
    return true;
}

inline Int gcd(Int a, const Int& b) {
    mpz_gcd(a.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return a;
}

// Basis of L in terms of which M has coordinates c_j, with M = H Z^4 for H upper triangular.
struct Cosets {
    std::vector<Elem> basis;   // of the big lattice
    std::vector<long> diag;    // coset box
};

inline Cosets cosets(const Order& big, const Lattice& small) {
    Cosets c;
    c.basis = big.basis();
    IntMat m(4, 4);
    auto lat = small.basis_vectors();
    for (std::size_t j = 0; j < 4; ++j) {
        auto co = big.coords(big.K().make_elem(lat[j]));
        for (std::size_t i = 0; i < 4; ++i) {
            if (co[i].get_den() != 1) throw std::logic_error("oracle::cosets: not a sublattice");
            m(i, j) = co[i].get_num();
        }
    }
    IntMat h = oracle::hnf(m);
    for (std::size_t i = 0; i < 4; ++i) c.diag.push_back(h(i, i).get_si());
    return c;
}

template <class Fn>
void for_each_coset(const Cosets& c, const CMField& k, Fn fn) {
    std::vector<long> x(4, 0);
    for (;;) {
        Elem e = k.zero();
        for (std::size_t i = 0; i < 4; ++i) e = e + c.basis[i] * Rat(x[i]);
        fn(e);
        std::size_t i = 0;
        while (i < 4 && ++x[i] >= c.diag[i]) {
            x[i] = 0;
            ++i;
        }
        if (i == 4) break;
    }
}

// |(O / f O_K)^x|: x is a unit there iff its norm is prime to f.
inline long residue_unit_count(const Order& o, const Int& f) {
    Order ok = Order::maximal(o.field());
    Cosets c = cosets(o, cmq::scaled_lattice(ok, f));
    long n = 0;
    for_each_coset(c, o.K(), [&](const Elem& x) {
        Rat nx = o.K().norm(x);
        if (gcd(nx.get_num(), f) == 1) ++n;
    });
    return n;
}

inline long roots_of_unity_in(const Order& o) {
    const UnitData& u = o.K().units();
    long n = 0;
    Elem z = o.K().one();
    for (long i = 0; i < u.w; ++i) {
        if (o.contains(z)) ++n;
        z = z * u.zeta;
    }
    return n;
}

// [O_K^x : O^x] = (w_K / w_O) * least j > 0 with zeta^i epsK^j in O for some i
inline long unit_index(const Order& o) {
    const UnitData& u = o.K().units();
    Elem e = o.K().one();
    for (long j = 1; j < 10000; ++j) {
        e = e * u.epsK;
        Elem z = e;
        for (long i = 0; i < u.w; ++i) {
            if (o.contains(z)) return u.w / roots_of_unity_in(o) * j;
            z = z * u.zeta;
        }
    }
    throw std::runtime_error("oracle::unit_index: no unit found");
}

// |Pic(O)| = h_K |(O_K/f)^x| / (|(O/f)^x| [O_K^x : O^x]) for f O_K ⊆ O
inline long picard_order(const Order& o, const Int& f, long h_k) {
    Order ok = Order::maximal(o.field());
    long num = h_k * residue_unit_count(ok, f);
    long den = residue_unit_count(o, f) * unit_index(o);
    if (num % den != 0) throw std::logic_error("oracle::picard_order: not an integer");
    return num / den;
}

// Integral ideals of O with norm n <= nmax, gcd(n, f) = 1, by HNF enumeration in O-coordinates.
inline std::vector<FracIdeal> ideals_up_to(const Order& o, long nmax, const Int& f) {
    std::vector<FracIdeal> out;
    const auto b = o.basis();
    const CMField& k = o.K();
    long t[4][4][4];
    auto mt = o.mult_table();
    for (int a = 0; a < 4; ++a)
        for (int i = 0; i < 4; ++i)
            for (int c = 0; c < 4; ++c) t[a][i][c] = mt[a][i][c].get_si();
    std::vector<std::pair<int, int>> slots;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < j; ++i) slots.push_back({i, j});
    for (long n = 1; n <= nmax; ++n) {
        if (gcd(Int(n), f) != 1) continue;
        for (long d0 = 1; d0 <= n; ++d0) {
            if (n % d0) continue;
            for (long d1 = 1; d1 <= n / d0; ++d1) {
                if ((n / d0) % d1) continue;
                for (long d2 = 1; d2 <= n / d0 / d1; ++d2) {
                    if ((n / d0 / d1) % d2) continue;
                    const long d[4] = {d0, d1, d2, n / d0 / d1 / d2};
                    std::vector<long> v(slots.size(), 0);
                    for (;;) {
                        long h[4][4] = {};
                        for (int i = 0; i < 4; ++i) h[i][i] = d[i];
                        for (std::size_t s = 0; s < slots.size(); ++s) h[slots[s].first][slots[s].second] = v[s];
                        // b_a * column j must lie in H Z^4 (back substitution on the triangular H)
                        bool ideal = true;
                        for (int a = 0; a < 4 && ideal; ++a)
                            for (int j = 0; j < 4 && ideal; ++j) {
                                long y[4] = {};
                                for (int i = 0; i <= j; ++i)
                                    for (int c = 0; c < 4; ++c) y[c] += h[i][j] * t[a][i][c];
                                for (int r = 3; r >= 0 && ideal; --r) {
                                    if (y[r] % h[r][r] != 0) {
                                        ideal = false;
                                        break;
                                    }
                                    long q = y[r] / h[r][r];
                                    for (int i = 0; i <= r; ++i) y[i] -= q * h[i][r];
                                }
                            }
                        if (ideal) {
                            std::vector<Elem> cols;
                            for (int j = 0; j < 4; ++j) {
                                Elem e = k.zero();
                                for (int i = 0; i <= j; ++i) e = e + b[i] * Rat(h[i][j]);
                                cols.push_back(e);
                            }
                            out.emplace_back(o, cmq::span(cols));
                        }
                        std::size_t s = 0;
                        while (s < slots.size() && ++v[s] >= d[slots[s].first]) {
                            v[s] = 0;
                            ++s;
                        }
                        if (s == slots.size()) break;
                    }
                }
            }
        }
    }
    return out;
}

inline RatMat trace_gram(const CMField& k, const std::vector<Elem>& b) {
    RatMat g(b.size(), b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) g(i, j) = k.trace(b[i] * b[j].conj());
    return g;
}

// x in the lattice with x xbar = nu; T2(x) = Tr(nu) bounds the search
inline std::optional<Elem> relative_norm_solution(const Lattice& lat, const Elem& nu, const CMField& k) {
    std::vector<Elem> b;
    for (const auto& v : lat.basis_vectors()) b.push_back(k.make_elem(v));
    std::optional<Elem> hit;
    cmq::enumerate_short(trace_gram(k, b), k.trace(nu), [&](const std::vector<Int>& x, const Rat&) {
        Elem e = k.zero();
        for (std::size_t i = 0; i < 4; ++i) e = e + b[i] * Rat(x[i]);
        if (e * e.conj() == nu) hit = e;
        return !hit;
    });
    return hit;
}

// totally positive alpha with alpha O = a abar, searched in a fundamental domain of eta0
inline std::optional<Elem> polarisation(const FracIdeal& a) {
    const CMField& k = a.K();
    const Order& o = a.order();
    FracIdeal aa = a * a.conj();
    const Rat n = a.norm();
    Order ok = Order::maximal(o.field());
    FracIdeal big = aa.extend(ok);
    std::vector<Elem> rb = cmq::real_part_basis(big.lattice(), k);
    RatMat g(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) g(i, j) = k.real_trace(rb[i] * rb[j]);
    const Elem& eta = k.units().eta0;
    long double e = std::max(k.real_embed(eta, 0), k.real_embed(eta, 1));
    Rat bound = Rat(static_cast<double>(n.get_d() * (e * e + 1) * 1.0001L + 1));
    // least s with eta0^s in O
    long s = 1;
    Elem es = eta;
    while (!o.contains(es)) {
        es = es * eta;
        ++s;
    }
    for (const auto& x : oracle::short_vectors(g, bound)) {
        Elem c = rb[0] * Rat(x[0]) + rb[1] * Rat(x[1]);
        for (int sign : {1, -1}) {
            Elem al = c * Rat(sign);
            if (!k.is_totally_positive(al) || k.real_norm(al) != n) continue;
            Elem t = al;
            for (long m = 0; m < s; ++m) {
                if (aa.contains(t)) return t;
                t = t * eta;
            }
        }
    }
    return std::nullopt;
}

// |c(O)| by listing pairs (a, alpha eta_O^j) for ideals of bounded norm and
// merging classes with explicit x, x a = b, x xbar alpha = beta.
struct PolarisedCount {
    std::size_t classes = 0;
    std::size_t ideals = 0;
    std::size_t pairs = 0;
};

inline PolarisedCount polarised_count(const Order& o, const Int& f, long nmax) {
    const CMField& k = o.K();
    const Elem& eta = k.units().eta0;
    Elem eta_o = eta;
    while (!o.contains(eta_o)) eta_o = eta_o * eta;
    struct P {
        FracIdeal a;
        Elem alpha;
    };
    PolarisedCount res;
    std::vector<P> reps;
    auto ideals = ideals_up_to(o, nmax, f);
    res.ideals = ideals.size();
    for (const auto& a : ideals) {
        auto al = polarisation(a);
        if (!al) continue;
        for (int j = 0; j < 2; ++j) {
            Elem alpha = j ? *al * eta_o : *al;
            ++res.pairs;
            bool found = false;
            for (const auto& r : reps) {
                Lattice c = cmq::colon(a.lattice(), r.a.lattice(), k);
                if (relative_norm_solution(c, alpha / r.alpha, k)) {
                    found = true;
                    break;
                }
            }
            if (!found) reps.push_back(P{a, alpha});
        }
    }
    res.classes = reps.size();
    return res;
}

// group of units of Z/n by brute force: sorted list of element orders
inline std::map<long, long> unit_order_profile(long n) {
    std::map<long, long> prof;
    for (long a = 1; a < n; ++a) {
        if (std::gcd(a, n) != 1) continue;
        long x = a, k = 1;
        while (x != 1) {
            x = x * a % n;
            ++k;
        }
        ++prof[k];
    }
    return prof;
}

// element orders of a finite abelian group given by invariants
inline std::map<long, long> abelian_order_profile(const AbelianGroup& g) {
    std::map<long, long> prof;
    for (const auto& e : g.elements()) ++prof[g.element_order(e).get_si()];
    return prof;
}

}  // namespace oracle

namespace oracle {

// residue class of x in O_K / f O_K as coordinates mod f
inline std::vector<long> residue_key(const Order& ok, const Elem& x, long f) {
    std::vector<long> key;
    for (const auto& c : ok.coords(x)) {
        if (c.get_den() != 1) throw std::logic_error("oracle::residue_key: not integral");
        Int r;
        mpz_fdiv_r_ui(r.get_mpz_t(), c.get_num().get_mpz_t(), static_cast<unsigned long>(f));
        key.push_back(r.get_si());
    }
    return key;
}

// |image of O_K^x in (O_K/f)^x| by closing zeta and epsK under multiplication
inline long unit_image_count(const cmq::FieldPtr& k, long f) {
    Order ok = Order::maximal(k);
    std::set<std::vector<long>> seen;
    std::vector<Elem> frontier{k->one()};
    seen.insert(residue_key(ok, k->one(), f));
    // residues of zeta^a epsK^b; reduce powers through their residues to keep entries small
    auto reduce = [&](const Elem& x) {
        auto key = residue_key(ok, x, f);
        std::vector<Int> c(key.begin(), key.end());
        return ok.from_coords(c);
    };
    const Elem g[2] = {k->units().zeta, k->units().epsK};
    while (!frontier.empty()) {
        std::vector<Elem> next;
        for (const auto& x : frontier)
            for (const auto& h : g) {
                Elem y = reduce(x * h);
                if (seen.insert(residue_key(ok, y, f)).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return static_cast<long>(seen.size());
}

// Orders O with p O_K ⊆ O ⊆ O_K, from all F_p-subspaces of O_K / p O_K in reduced echelon form.
inline std::vector<Order> orders_over(const cmq::FieldPtr& k, long p) {
    Order ok = Order::maximal(k);
    const auto b = ok.basis();
    std::vector<Order> out;
    for (unsigned mask = 0; mask < 16; ++mask) {
        std::vector<int> piv;
        for (int i = 0; i < 4; ++i)
            if (mask & (1u << i)) piv.push_back(i);
        // free entries: row r, column c > piv[r], c not a pivot
        std::vector<std::pair<int, int>> slots;
        for (std::size_t r = 0; r < piv.size(); ++r)
            for (int c = piv[r] + 1; c < 4; ++c)
                if (!(mask & (1u << c))) slots.push_back({static_cast<int>(r), c});
        std::vector<long> v(slots.size(), 0);
        for (;;) {
            std::vector<Elem> gens;
            for (const auto& x : b) gens.push_back(x * Rat(p));
            gens.push_back(k->one());
            for (std::size_t r = 0; r < piv.size(); ++r) {
                long row[4] = {};
                row[piv[r]] = 1;
                for (std::size_t s = 0; s < slots.size(); ++s)
                    if (slots[s].first == static_cast<int>(r)) row[slots[s].second] = v[s];
                Elem e = k->zero();
                for (int i = 0; i < 4; ++i) e = e + b[i] * Rat(row[i]);
                gens.push_back(e);
            }
            std::vector<std::vector<Rat>> vs;
            for (const auto& g : gens) vs.push_back(g.vec());
            Lattice lat = Lattice::from_generators(4, vs);
            std::vector<Elem> lb;
            for (const auto& x : lat.basis_vectors()) lb.push_back(k->make_elem(x));
            bool ring = true;
            for (std::size_t i = 0; i < 4 && ring; ++i)
                for (std::size_t j = i; j < 4 && ring; ++j) ring = lat.contains((lb[i] * lb[j]).vec());
            // the unit must be in the span (guaranteed) and the lattice must be new
            if (ring) {
                Order o(k, lat, false);
                bool dup = false;
                for (const auto& q : out) dup = dup || q == o;
                if (!dup) out.push_back(o);
            }
            std::size_t s = 0;
            while (s < slots.size() && ++v[s] >= p) {
                v[s] = 0;
                ++s;
            }
            if (s == slots.size()) break;
        }
    }
    return out;
}

// smallest cc-stable order over p O_K on which every ray class generator mod p passes s_member
inline std::optional<Order> minimal_s_full(const cmq::FieldPtr& k, long p) {
    std::vector<Order> full;
    for (const auto& o : orders_over(k, p))
        if (o.is_cc_stable() && cmq::is_s_full(o, Int(p))) full.push_back(o);
    for (const auto& o : full) {
        bool least = true;
        for (const auto& q : full) least = least && q.contains(o);
        if (least) return o;
    }
    return std::nullopt;
}

// disc(O) as the determinant of the trace form on a basis
inline Rat discriminant(const Order& o) {
    const auto b = o.basis();
    RatMat g(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) g(i, j) = o.K().trace(b[i] * b[j]);
    // fraction-free elimination
    Rat d = 1;
    for (std::size_t c = 0; c < 4; ++c) {
        std::size_t p = c;
        while (p < 4 && g(p, c) == 0) ++p;
        if (p == 4) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < 4; ++j) std::swap(g(c, j), g(p, j));
            d = -d;
        }
        d *= g(c, c);
        for (std::size_t i = c + 1; i < 4; ++i) {
            Rat f = g(i, c) / g(c, c);
            for (std::size_t j = c; j < 4; ++j) g(i, j) -= f * g(c, j);
        }
    }
    return d;
}

}  // namespace oracle

namespace oracle {

// determinant by Gaussian elimination over Q
inline Rat rat_det(RatMat g) {
    const std::size_t n = g.rows();
    Rat d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && g(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(g(c, j), g(p, j));
            d = -d;
        }
        d *= g(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            Rat f = g(i, c) / g(c, c);
            for (std::size_t j = c; j < n; ++j) g(i, j) -= f * g(c, j);
        }
    }
    return d;
}

// random element with integer power-basis coordinates in [-r, r]
inline Elem random_elem(const CMField& k, std::mt19937_64& rng, long r = 5) {
    std::uniform_int_distribution<long> d(-r, r);
    Elem x;
    do x = k.make_elem({Rat(d(rng)), Rat(d(rng)), Rat(d(rng)), Rat(d(rng))});
    while (x.is_zero());
    return x;
}

// random element of an order, as a combination of its basis
inline Elem random_elem(const Order& o, std::mt19937_64& rng, long r = 5) {
    std::uniform_int_distribution<long> d(-r, r);
    auto b = o.basis();
    Elem x;
    do {
        x = o.K().zero();
        for (const auto& e : b) x = x + e * Rat(d(rng));
    } while (x.is_zero());
    return x;
}

}  // namespace oracle
