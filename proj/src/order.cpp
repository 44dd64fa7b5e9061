#include "cmq/order.hpp"

#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace cmq {

std::vector<Int> prime_factors(Int n) {
    std::vector<Int> ps;
    n = abs(n);
    for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

Int p_radical_exponent(const Int& p) {
    Int q = p;
    Int j = 1;
    while (q < 4) {
        q *= p;
        j += 1;
    }
    return j;
}

Lattice span(const std::vector<Elem>& xs) {
    std::vector<std::vector<Rat>> g;
    for (const auto& x : xs) g.push_back(x.vec());
    return Lattice::from_generators(4, g);
}

std::vector<Elem> lattice_elems(const Lattice& a, const CMField& k) {
    std::vector<Elem> out;
    for (const auto& v : a.basis_vectors()) out.push_back(k.make_elem(v));
    return out;
}

Lattice lattice_product(const Lattice& a, const Lattice& b, const CMField& k) {
    auto ea = lattice_elems(a, k), eb = lattice_elems(b, k);
    std::vector<Elem> g;
    for (const auto& x : ea)
        for (const auto& y : eb) g.push_back(x * y);
    return span(g);
}

Lattice lattice_conj(const Lattice& a) {
    std::vector<std::vector<Rat>> g;
    for (auto v : a.basis_vectors()) {
        v[1] = -v[1];
        v[3] = -v[3];
        g.push_back(v);
    }
    return Lattice::from_generators(4, g);
}

Lattice colon(const Lattice& a, const Lattice& b, const CMField& k) {
    auto ea = lattice_elems(a, k);
    std::optional<Lattice> acc;
    for (const auto& beta : lattice_elems(b, k)) {
        Elem bi = beta.inverse();
        std::vector<Elem> g;
        for (const auto& x : ea) g.push_back(x * bi);
        Lattice l = span(g);
        acc = acc ? acc->intersect(l) : l;
    }
    return *acc;
}

Lattice scaled_lattice(const Order& o, const Int& f) { return o.lattice().scaled(Rat(f)); }

// ------------------------------------------------------------------ Order

Order::Order(FieldPtr k, Lattice lat, bool check) : k_(std::move(k)), lat_(std::move(lat)) {
    if (!check) return;
    if (!lat_.contains(k_->one().vec())) throw std::invalid_argument("order: lattice does not contain 1");
    auto b = basis();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i; j < 4; ++j)
            if (!contains(b[i] * b[j])) throw std::invalid_argument("order: lattice is not closed under products");
}

Order Order::equation_order(const FieldPtr& k) { return Order(k, Lattice::standard(4), false); }

Order Order::generated(const FieldPtr& k, const std::vector<Elem>& gens, const std::optional<Lattice>& base) {
    std::vector<Elem> g{k->one()};
    g.insert(g.end(), gens.begin(), gens.end());
    if (base) {
        auto be = lattice_elems(*base, *k);
        g.insert(g.end(), be.begin(), be.end());
    }
    std::vector<Elem> cur = g;
    for (int it = 0; it < 64; ++it) {
        std::vector<Elem> next = cur;
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (std::size_t j = i; j < cur.size(); ++j) next.push_back(cur[i] * cur[j]);
        Lattice l;
        bool full = true;
        try {
            l = span(next);
        } catch (const std::domain_error&) {
            full = false;
        }
        if (full) {
            // iterate on a basis
            for (int inner = 0; inner < 64; ++inner) {
                auto b = lattice_elems(l, *k);
                std::vector<Elem> prods = b;
                bool closed = true;
                for (std::size_t i = 0; i < 4; ++i)
                    for (std::size_t j = i; j < 4; ++j) {
                        Elem p = b[i] * b[j];
                        if (!l.contains(p.vec())) closed = false;
                        prods.push_back(p);
                    }
                if (closed) return Order(k, l, false);
                l = span(prods);
            }
            throw std::runtime_error("order closure did not stabilise (non-integral generators?)");
        }
        if (next.size() > 256) break;
        cur = next;
    }
    throw std::domain_error("order: generators do not span a rank-4 ring");
}

std::vector<Elem> Order::basis() const { return lattice_elems(lat_, *k_); }
Elem Order::basis_elem(std::size_t i) const { return k_->make_elem(lat_.basis_vector(i)); }

Elem Order::from_coords(const std::vector<Rat>& c) const {
    Elem r = k_->zero();
    auto b = basis();
    for (std::size_t i = 0; i < 4; ++i)
        if (c[i] != 0) r = r + b[i] * c[i];
    return r;
}

Elem Order::from_coords(const std::vector<Int>& c) const {
    std::vector<Rat> q(c.begin(), c.end());
    return from_coords(q);
}

Int Order::index_in(const Order& big) const {
    Rat r = lattice_index(big.lattice(), lat_);
    if (r.get_den() != 1) throw std::domain_error("index_in: not a suborder");
    return r.get_num();
}

Rat Order::disc() const {
    RatMat b = lat_.basis();
    return det(b.transpose() * k_->trace_form() * b);
}

Order Order::conj() const { return Order(k_, lattice_conj(lat_), false); }

bool Order::is_maximal() const { return *this == maximal(k_); }

std::vector<std::vector<std::vector<Int>>> Order::mult_table() const {
    auto b = basis();
    std::vector<std::vector<std::vector<Int>>> t(4, std::vector<std::vector<Int>>(4, std::vector<Int>(4)));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i; j < 4; ++j) {
            auto c = coords(b[i] * b[j]);
            for (std::size_t l = 0; l < 4; ++l) {
                if (c[l].get_den() != 1) throw std::logic_error("mult_table: lattice is not a ring");
                t[i][j][l] = c[l].get_num();
                t[j][i][l] = t[i][j][l];
            }
        }
    return t;
}

Lattice Order::trace_dual() const {
    RatMat b = lat_.basis();
    RatMat m = b.transpose() * k_->trace_form();
    return Lattice::from_basis(inverse(m));
}

Order Order::operator+(const Order& o) const { return generated(k_, {}, lat_ + o.lat_); }

Order Order::intersect(const Order& o) const { return Order(k_, lat_.intersect(o.lat_), false); }

// ------------------------------------------------------------ Round 2

std::vector<std::vector<Int>> kernel_mod_p(const IntMat& m0, const Int& p) {
    const std::size_t r = m0.rows(), c = m0.cols();
    IntMat m = m0;
    auto md = [&](const Int& x) {
        Int y = x % p;
        if (y < 0) y += p;
        return y;
    };
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = md(m(i, j));
    std::vector<long> pivcol;
    std::size_t row = 0;
    for (std::size_t col = 0; col < c && row < r; ++col) {
        std::size_t piv = row;
        while (piv < r && m(piv, col) == 0) ++piv;
        if (piv == r) continue;
        for (std::size_t j = 0; j < c; ++j) std::swap(m(row, j), m(piv, j));
        Int inv;
        mpz_invert(inv.get_mpz_t(), m(row, col).get_mpz_t(), p.get_mpz_t());
        for (std::size_t j = 0; j < c; ++j) m(row, j) = md(m(row, j) * inv);
        for (std::size_t i = 0; i < r; ++i) {
            if (i == row || m(i, col) == 0) continue;
            Int f = m(i, col);
            for (std::size_t j = 0; j < c; ++j) m(i, j) = md(m(i, j) - f * m(row, j));
        }
        pivcol.push_back(static_cast<long>(col));
        ++row;
    }
    std::vector<bool> is_piv(c, false);
    for (long pc : pivcol) is_piv[static_cast<std::size_t>(pc)] = true;
    std::vector<std::vector<Int>> ker;
    for (std::size_t free = 0; free < c; ++free) {
        if (is_piv[free]) continue;
        std::vector<Int> v(c, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivcol.size(); ++i) v[static_cast<std::size_t>(pivcol[i])] = md(-m(i, free));
        ker.push_back(v);
    }
    return ker;
}

namespace {

using Vec4 = std::vector<Int>;

Vec4 mul_mod(const std::vector<std::vector<std::vector<Int>>>& t, const Vec4& x, const Vec4& y, const Int& p) {
    Vec4 r(4, 0);
    for (std::size_t i = 0; i < 4; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < 4; ++j) {
            if (y[j] == 0) continue;
            Int xy = x[i] * y[j];
            for (std::size_t k = 0; k < 4; ++k) r[k] += xy * t[i][j][k];
        }
    }
    for (auto& v : r) {
        v %= p;
        if (v < 0) v += p;
    }
    return r;
}

Vec4 pow_mod(const std::vector<std::vector<std::vector<Int>>>& t, const Vec4& one, Vec4 x, Int e, const Int& p) {
    Vec4 r = one;
    while (e > 0) {
        if (e % 2 == 1) r = mul_mod(t, r, x, p);
        e /= 2;
        if (e > 0) x = mul_mod(t, x, x, p);
    }
    return r;
}

}  // namespace

Order p_maximal(const Order& o0, const Int& p) {
    Order o = o0;
    const CMField& k = o.K();
    Int q;
    mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), p_radical_exponent(p).get_ui());
    for (int it = 0; it < 64; ++it) {
        auto t = o.mult_table();
        auto onec = o.coords(k.one());
        Vec4 one(4);
        for (int i = 0; i < 4; ++i) one[i] = onec[i].get_num();
        IntMat fr(4, 4);
        for (std::size_t i = 0; i < 4; ++i) {
            Vec4 e(4, 0);
            e[i] = 1;
            Vec4 r = pow_mod(t, one, e, q, p);
            for (std::size_t l = 0; l < 4; ++l) fr(l, i) = r[l];
        }
        auto ker = kernel_mod_p(fr, p);
        std::vector<Elem> gens;
        auto b = o.basis();
        for (const auto& x : b) gens.push_back(x * Rat(p));
        for (const auto& v : ker) gens.push_back(o.from_coords(v));
        Lattice rad = span(gens);
        Lattice mult = colon(rad, rad, k);
        if (mult == o.lattice()) return o;
        o = Order(o.field(), mult, false);
    }
    throw std::runtime_error("round 2 did not terminate");
}

Order Order::maximal(const FieldPtr& k) {
    static std::mutex mu;
    static std::map<std::pair<std::string, std::string>, Lattice> cache;
    const auto key = std::make_pair(k->A().get_str(), k->B().get_str());
    {
        std::lock_guard<std::mutex> g(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return Order(k, it->second, false);
    }
    Order o = equation_order(k);
    const Int disc = k->poly_disc();
    for (const auto& p : prime_factors(disc))
        if (disc % (p * p) == 0) o = p_maximal(o, p);
    std::lock_guard<std::mutex> g(mu);
    cache.emplace(key, o.lattice());
    return o;
}

// ------------------------------------------------------------ RealOrder

RealOrder real_suborder(const Order& o) {
    const IntMat& h = o.lattice().hnf();
    IntMat m(2, 4);
    for (std::size_t j = 0; j < 4; ++j) {
        m(0, j) = h(1, j);
        m(1, j) = h(3, j);
    }
    IntMat ker = integer_kernel(m);
    std::vector<std::vector<Rat>> g;
    for (std::size_t c = 0; c < ker.cols(); ++c) {
        std::vector<Rat> v(2);
        for (std::size_t j = 0; j < 4; ++j) {
            Rat s = ratio(h(0, j) * ker(j, c), o.lattice().denom());
            Rat t = ratio(h(2, j) * ker(j, c), o.lattice().denom());
            v[0] += s;
            v[1] += t;
        }
        g.push_back(v);
    }
    return RealOrder{o.field(), Lattice::from_generators(2, g)};
}

bool RealOrder::contains(const Elem& x) const { return x.is_real() && lat.contains(std::vector<Rat>{x[0], x[2]}); }

Int RealOrder::index_in(const RealOrder& big) const {
    Rat r = lattice_index(big.lat, lat);
    if (r.get_den() != 1) throw std::domain_error("RealOrder::index_in: not a suborder");
    return r.get_num();
}

std::vector<Elem> RealOrder::basis() const {
    std::vector<Elem> out;
    for (const auto& v : lat.basis_vectors()) out.push_back(k->make_elem({v[0], Rat(0), v[1], Rat(0)}));
    return out;
}

// ------------------------------------------------------------ enumeration

std::vector<Order> intermediate_orders(const Order& base0, const Order& top, std::size_t cap) {
    const FieldPtr& k = top.field();
    Order base = Order::generated(k, {}, base0.lattice());
    std::map<std::string, Order> seen;
    std::deque<Order> queue;
    seen.emplace(base.key(), base);
    queue.push_back(base);
    while (!queue.empty()) {
        Order r = queue.front();
        queue.pop_front();
        Int idx = r.index_in(top);
        if (idx == 1) continue;
        for (const auto& p : prime_factors(idx)) {
            Lattice lp = r.lattice().scaled(ratio(1, p)).intersect(top.lattice());
            // F_p-basis of lp / r
            RatMat pb = lp.basis();
            RatMat pinv = inverse(pb);
            RatMat rc = pinv * r.lattice().basis();
            IntMat mi(4, 4);
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j) mi(i, j) = rc(i, j).get_num();
            auto s = snf(mi, true);
            RatMat nb = pb * inverse(to_rat(s.u));
            std::vector<Elem> fb;
            for (std::size_t i = 0; i < 4; ++i)
                if (s.diag[i] == p) fb.push_back(k->make_elem(nb.col(i)));
            const std::size_t dim = fb.size();
            // projective points of F_p^dim
            std::vector<Int> c(dim, 0);
            for (std::size_t lead = 0; lead < dim; ++lead) {
                std::size_t tail = dim - lead - 1;
                Int total;
                mpz_pow_ui(total.get_mpz_t(), p.get_mpz_t(), tail);
                for (Int n = 0; n < total; ++n) {
                    Elem y = fb[lead];
                    Int t = n;
                    for (std::size_t j = lead + 1; j < dim; ++j) {
                        Int cj = t % p;
                        t /= p;
                        if (cj != 0) y = y + fb[j] * Rat(cj);
                    }
                    Order o = Order::generated(k, {y}, r.lattice());
                    if (!top.contains(o)) continue;
                    if (seen.emplace(o.key(), o).second) {
                        queue.push_back(o);
                        if (seen.size() > cap) throw std::runtime_error("intermediate_orders: cap exceeded");
                    }
                }
            }
        }
    }
    std::vector<Order> out;
    for (auto& [key, o] : seen) out.push_back(o);
    return out;
}

std::vector<Order> orders_with_conductor_dividing(const FieldPtr& k, const Int& f) {
    Order ok = Order::maximal(k);
    Order base = Order::generated(k, {}, scaled_lattice(ok, f));
    return intermediate_orders(base, ok);
}

long roots_of_unity_count(const Order& o) {
    const auto& u = o.K().units();
    long c = 0;
    Elem z = o.K().one();
    for (long j = 0; j < u.w; ++j) {
        if (o.contains(z)) ++c;
        z = z * u.zeta;
    }
    return c;
}

}  // namespace cmq
