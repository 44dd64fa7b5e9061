#include "cmq/classgroup.hpp"

#include "cmq/residue.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cmq {

namespace {

// smallest j >= 1 with pred(x^j), powers taken in O_K / c O_K
long first_power_in(const ResidueRing& r, const Elem& x, const std::function<bool(const RVec&)>& pred) {
    RVec g = r.from_elem(x);
    RVec y = r.one();
    for (long j = 1; j <= r.size() + 1; ++j) {
        y = r.mul(y, g);
        if (pred(y)) return j;
    }
    throw std::runtime_error("first_power_in: no power found");
}

std::vector<Elem> coordinate_sublattice(const Lattice& l, const CMField& k, std::size_t r0, std::size_t r1) {
    const IntMat& h = l.hnf();
    IntMat m(2, 4);
    for (std::size_t j = 0; j < 4; ++j) {
        m(0, j) = h(r0, j);
        m(1, j) = h(r1, j);
    }
    IntMat ker = integer_kernel(m);
    std::vector<Elem> out;
    for (std::size_t c = 0; c < ker.cols(); ++c) {
        std::vector<Rat> v(4);
        for (std::size_t i = 0; i < 4; ++i) {
            Int s = 0;
            for (std::size_t j = 0; j < 4; ++j) s += h(i, j) * ker(j, c);
            v[i] = ratio(s, l.denom());
        }
        out.push_back(k.make_elem(v));
    }
    return out;
}

Rat rat_above(long double x) {
    const long double scale = 1048576.0L;
    Int n;
    mpz_set_d(n.get_mpz_t(), static_cast<double>(std::ceil(x * scale)) + 1.0);
    return ratio(n, Int(1048576));
}

Elem combine(const std::vector<Elem>& b, const std::vector<Int>& c) {
    Elem x = b[0] * Rat(c[0]);
    for (std::size_t i = 1; i < b.size(); ++i) x = x + b[i] * Rat(c[i]);
    return x;
}

std::vector<Elem> lll_basis(const CMField& k, const std::vector<Elem>& basis) {
    IntMat t = lll_gram(t2_gram(k, basis));
    std::vector<Elem> out;
    for (std::size_t c = 0; c < t.cols(); ++c) out.push_back(combine(basis, t.col(c)));
    return out;
}

// x a^-1 for a short x in a with N(x a^-1) prime to f
std::optional<FracIdeal> small_inverse(const FracIdeal& a, const Int& f) {
    const CMField& k = a.K();
    auto rb = lll_basis(k, a.basis());
    RatMat g = t2_gram(k, rb);
    Rat bound = g(0, 0);
    for (std::size_t i = 1; i < g.rows(); ++i) bound = std::max(bound, g(i, i));
    const Rat na = a.norm();
    std::optional<Elem> found;
    for (int round = 0; round < 4 && !found; ++round, bound *= 4)
        enumerate_short(g, bound, [&](const std::vector<Int>& c, const Rat&) {
            Elem x = combine(rb, c);
            Rat n = abs(k.norm(x)) / na;
            if (n.get_den() != 1 || gcd(n.get_num(), f) != 1) return true;
            found = x;
            return false;
        });
    if (!found) return std::nullopt;
    return a.inverse() * *found;
}

// an integral ideal of small norm prime to f in the class of a
FracIdeal reduce_class(const FracIdeal& a, const Int& f) {
    auto c = small_inverse(a, f);
    if (!c) return a;
    auto d = small_inverse(*c, f);
    if (!d) return a;
    if (a.is_integral() && a.norm() <= d->norm()) return a;
    return *d;
}

FracIdeal reduced_product(const Order& o, const std::vector<FracIdeal>& gens, const IVec& raw, const Int& f) {
    FracIdeal a = FracIdeal::unit(o);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == 0) continue;
        const FracIdeal g = raw[i] > 0 ? gens[i] : gens[i].inverse();
        for (long e = Int(abs(raw[i])).get_si(); e > 0; --e) a = reduce_class(a * g, f);
    }
    return a;
}

Lattice times(const Elem& x, const Lattice& l, const CMField& k) {
    std::vector<Elem> g;
    for (const auto& b : lattice_elems(l, k)) g.push_back(x * b);
    return span(g);
}

}  // namespace

OrderUnits order_units(const Order& o) {
    const CMField& k = o.K();
    const auto& ud = k.units();
    Order ok = Order::maximal(o.field());
    OrderUnits u;
    u.w = roots_of_unity_count(o);
    const bool eta_is_eps = ud.eta0 == ud.eps0;
    long s = 0;
    if (ud.n0 == ud.eta0) s = 1;
    else if (ud.n0 == ud.eta0 * ud.eta0) s = 2;
    else throw std::logic_error("order_units: unexpected relative norm of the unit");
    const Int c = o.index_in(ok);
    if (c == 1) {
        u.eps_step = 1;
        u.eta_step = 1;
        u.norm_step = s;
    } else {
        ResidueRing r = ResidueRing::of_order(ok, c);
        auto in_o = [&](const RVec& y) { return o.contains(r.to_elem(y)); };
        u.eps_step = first_power_in(r, ud.eps0, in_o);
        u.eta_step = eta_is_eps ? u.eps_step : first_power_in(r, ud.eta0, in_o);
        std::vector<RVec> roots;
        RVec z = r.from_elem(ud.zeta);
        RVec zi = r.one();
        for (long i = 0; i < ud.w; ++i) {
            roots.push_back(zi);
            zi = r.mul(zi, z);
        }
        long j0 = first_power_in(r, ud.epsK, [&](const RVec& y) {
            for (const auto& q : roots)
                if (in_o(r.mul(q, y))) return true;
            return false;
        });
        u.norm_step = s * j0;
        u.eps_k_step = j0;
    }
    u.w_k = ud.w;
    u.unit_size_k = std::fabs(k.real_embed(ud.eps0, 0));
    u.unit_size = std::pow(std::fabs(k.real_embed(ud.eps0, 0)), static_cast<long double>(u.eps_step));
    return u;
}

std::optional<long> eta_log(const CMField& k, const Elem& x) {
    if (!x.is_real()) return std::nullopt;
    const Elem& eta = k.units().eta0;
    long double lx = k.real_embed(x, 0);
    if (lx <= 0) return std::nullopt;
    long m = std::lround(std::log(lx) / std::log(k.real_embed(eta, 0)));
    if (eta.pow(m) == x) return m;
    return std::nullopt;
}

std::vector<Elem> real_part_basis(const Lattice& l, const CMField& k) { return coordinate_sublattice(l, k, 1, 3); }
std::vector<Elem> imaginary_part_basis(const Lattice& l, const CMField& k) { return coordinate_sublattice(l, k, 0, 2); }

RatMat t2_gram(const CMField& k, const std::vector<Elem>& basis) {
    const std::size_t n = basis.size();
    RatMat g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            g(i, j) = k.trace(basis[i] * basis[j].conj());
            g(j, i) = g(i, j);
        }
    return g;
}

std::optional<Elem> search_norm(const CMField& k, const std::vector<Elem>& basis, const Rat& n, long double unit_size,
                                const std::function<bool(const Elem&)>& accept) {
    auto rb = lll_basis(k, basis);
    RatMat g = t2_gram(k, rb);
    const long double u = std::max(unit_size, 1.0L);
    const long double b = 2.0L * std::sqrt(static_cast<long double>(n.get_d())) * (u + 1.0L / u);
    Rat bound = rat_above(b * (1.0L + 1e-12L));
    std::optional<Elem> found;
    enumerate_short(g, bound, [&](const std::vector<Int>& c, const Rat&) {
        Elem x = combine(rb, c);
        if (abs(k.norm(x)) != n) return true;
        if (accept(x)) {
            found = x;
            return false;
        }
        if (accept(-x)) {
            found = -x;
            return false;
        }
        return true;
    });
    return found;
}

std::optional<Elem> is_principal(const FracIdeal& a) { return is_principal(a, order_units(a.order())); }

std::optional<Elem> is_principal(const FracIdeal& a, const OrderUnits& u) {
    const CMField& k = a.K();
    const Order& o = a.order();
    if (o.is_maximal()) return search_norm(k, a.basis(), a.norm(), u.unit_size_k, [](const Elem&) { return true; });
    // a = x O gives a O_K = x O_K; x is a generator of a O_K times a unit of O_K mod O^x
    FracIdeal b = a.extend(Order::maximal(o.field()));
    if (b.norm() != a.norm()) return std::nullopt;
    auto y = search_norm(k, b.basis(), b.norm(), u.unit_size_k, [](const Elem&) { return true; });
    if (!y) return std::nullopt;
    const auto& ud = k.units();
    Elem e = *y;
    for (long j = 0; j < u.eps_k_step; ++j) {
        Elem x = e;
        for (long i = 0; i < u.w_k; ++i) {
            if (a.contains(x)) return x;
            x = x * ud.zeta;
        }
        e = e * ud.epsK;
    }
    return std::nullopt;
}

std::optional<Elem> totally_positive_generator(const FracIdeal& a, const OrderUnits& u) {
    const CMField& k = a.K();
    auto rb = real_part_basis(a.lattice(), k);
    if (rb.size() != 2) return std::nullopt;
    auto x = search_norm(k, rb, a.norm(), u.unit_size, [](const Elem&) { return true; });
    if (!x) return std::nullopt;
    Elem e = k.units().eps0.pow(u.eps_step);
    for (const Elem& c : {*x, -*x, *x * e, -(*x * e)})
        if (k.is_totally_positive(c)) return c;
    return std::nullopt;
}

Rat minkowski_bound(const Order& ok) {
    long double d = std::fabs(static_cast<long double>(ok.disc().get_d()));
    const long double pi = std::numbers::pi_v<long double>;
    long double c = 24.0L / 256.0L * (16.0L / (pi * pi));
    return rat_above(c * std::sqrt(d));
}

// ------------------------------------------------------------ PicardGroup

PicardGroup::PicardGroup(const Order& o, const Int& f) : o_(o) {
    Order ok = Order::maximal(o.field());
    Int c = o.index_in(ok);
    f_ = lcm(f, c);
    units_ = order_units(o);
    for (const auto& p : primes_up_to(ok, floor_rat(minkowski_bound(ok)), f_)) gens_.push_back(p.ideal.contract(o));
    if (c != 1) {
        UnitGroup ug(ResidueRing::of_order(ok, f_));
        for (const auto& t : ug.generators())
            gens_.push_back(FracIdeal::principal(ok, ug.ring().to_elem(t)).contract(o));
    }
    const std::size_t n = gens_.size();
    auto cache = std::make_shared<std::map<IVec, FracIdeal>>();
    auto ideal_of = [this, cache](const IVec& raw) {
        auto it = cache->find(raw);
        if (it != cache->end()) return it->second;
        FracIdeal a = reduced_product(o_, gens_, raw, f_);
        cache->emplace(raw, a);
        return a;
    };
    std::vector<IVec> g;
    for (std::size_t i = 0; i < n; ++i) {
        IVec e(n, 0);
        e[i] = 1;
        g.push_back(e);
    }
    std::function<IVec(const IVec&, const IVec&)> compose = [](const IVec& x, const IVec& y) {
        IVec z(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
        return z;
    };
    std::function<bool(const IVec&)> trivial = [&](const IVec& x) {
        return is_principal(ideal_of(x), units_).has_value();
    };
    gs_ = group_structure<IVec>(g, IVec(n, 0), compose, trivial);
    gs_.raw_log = nullptr;
    for (const auto& raw : gs_.element_raw) {
        reps_.push_back(ideal_of(raw));
    }
    for (std::size_t i = 0; i < reps_.size(); ++i) snf_index_[coords(i)] = i;
}

FracIdeal PicardGroup::ideal_of(const IVec& raw) const { return reduced_product(o_, gens_, raw, f_); }

IVec PicardGroup::coords(std::size_t i) const {
    if (gs_.group.rank() == 0) return {};
    return group().reduce(gs_.presentation.map(gs_.element_raw[i]));
}

std::size_t PicardGroup::index_of(const IVec& snf) const { return snf_index_.at(group().reduce(snf)); }

std::pair<std::size_t, Elem> PicardGroup::locate(const FracIdeal& a) const {
    for (std::size_t i = 0; i < reps_.size(); ++i) {
        FracIdeal b = a * reps_[i].inverse();
        if (auto x = is_principal(b, units_)) return {i, *x};
    }
    throw std::invalid_argument("PicardGroup::locate: ideal not in the group");
}

std::pair<std::size_t, Elem> PicardGroup::multiply(std::size_t i, std::size_t j) const {
    IVec c = coords(i);
    IVec d = coords(j);
    for (std::size_t t = 0; t < c.size(); ++t) c[t] += d[t];
    std::size_t m = index_of(c);
    auto x = is_principal(reps_[i] * reps_[j] * reps_[m].inverse(), units_);
    if (!x) throw std::logic_error("PicardGroup::multiply: inconsistent class data");
    return {m, *x};
}

std::vector<FracIdeal> PicardGroup::snf_generators() const {
    std::vector<FracIdeal> out;
    for (std::size_t j = 0; j < group().rank(); ++j) out.push_back(reps_[index_of([&] {
        IVec e(group().rank(), 0);
        e[j] = 1;
        return e;
    }())]);
    return out;
}

// ---------------------------------------------------- PolarisedClassGroup

bool PolarisedPair::valid() const {
    const CMField& k = a.K();
    if (!alpha.is_real() || !k.is_totally_positive(alpha)) return false;
    return a * a.conj() == FracIdeal::principal(a.order(), alpha);
}

bool PolarisedClassGroup::is_trivial(const PolarisedPair& p, const OrderUnits& u) {
    auto x = is_principal(p.a, u);
    if (!x) return false;
    Elem r = p.alpha / (*x * x->conj());
    auto m = eta_log(p.a.K(), r);
    if (!m) throw std::logic_error("polarised pair is not well formed");
    return *m % u.norm_step == 0;
}

PolarisedClassGroup::PolarisedClassGroup(const Order& o, const Int& f) {
    pic_ = std::make_shared<PicardGroup>(o, f);
    const auto& u = pic_->units();
    const CMField& k = o.K();
    t_ = u.norm_index();
    alpha_.resize(pic_->count());
    std::vector<std::size_t> h;
    for (std::size_t i = 0; i < pic_->count(); ++i) {
        const FracIdeal& a = pic_->rep(i);
        alpha_[i] = totally_positive_generator(a * a.conj(), u);
        if (alpha_[i]) h.push_back(i);
    }
    const Elem eta = k.units().eta0.pow(u.eta_step);
    auto table = std::make_shared<std::map<std::pair<std::size_t, std::size_t>, Key>>();
    std::function<Key(const Key&, const Key&)> compose = [this, table, &u, &k](const Key& x, const Key& y) {
        auto pk = std::minmax(x.first, y.first);
        auto it = table->find(pk);
        if (it == table->end()) {
            auto [m, g] = pic_->multiply(pk.first, pk.second);
            Elem r = *alpha_[pk.first] * *alpha_[pk.second] / (g * g.conj() * *alpha_[m]);
            auto e = eta_log(k, r);
            if (!e || *e % u.eta_step != 0) throw std::logic_error("PolarisedClassGroup: bad unit");
            it = table->emplace(pk, Key{m, (*e / u.eta_step) % t_}).first;
        }
        long s = ((x.second + y.second + it->second.second) % t_ + t_) % t_;
        return Key{it->second.first, s};
    };
    Key one = normalise(PolarisedPair{FracIdeal::unit(o), k.one()});
    std::vector<Key> gens;
    for (auto i : h) gens.push_back(Key{i, 0});
    if (t_ > 1) gens.push_back(Key{one.first, (one.second + 1) % t_});
    std::function<Key(const Key&)> key = [](const Key& x) { return x; };
    gs_ = group_structure_hashed<Key, Key, KeyHash>(gens, one, compose, key);
    for (const auto& e : gs_.elements) reps_.push_back(PolarisedPair{pic_->rep(e.first), *alpha_[e.first] * eta.pow(e.second)});
}

PolarisedClassGroup::Key PolarisedClassGroup::normalise(const PolarisedPair& p) const {
    const auto& u = pic_->units();
    auto [m, x] = pic_->locate(p.a);
    if (!alpha_[m]) throw std::invalid_argument("PolarisedClassGroup: not a polarised pair");
    Elem r = p.alpha / (x * x.conj() * *alpha_[m]);
    auto e = eta_log(p.a.K(), r);
    if (!e || *e % u.eta_step != 0) throw std::invalid_argument("PolarisedClassGroup: not a polarised pair");
    return Key{m, ((*e / u.eta_step) % t_ + t_) % t_};
}

IVec PolarisedClassGroup::dlog(const PolarisedPair& p) const { return *gs_.dlog(normalise(p)); }

bool PolarisedClassGroup::is_identity(const PolarisedPair& p) const { return is_trivial(p, pic_->units()); }

MorphismKernel morphism_kernel(const Order& osub, const Order& o, const Int& f) {
    PolarisedClassGroup g(osub, f);
    OrderUnits u = order_units(o);
    MorphismKernel mk;
    mk.domain_size = g.size();
    for (std::size_t i = 0; i < g.count(); ++i) {
        const auto& p = g.rep(i);
        if (PolarisedClassGroup::is_trivial(PolarisedPair{p.a.extend(o), p.alpha}, u)) mk.kernel.push_back(p);
    }
    mk.kernel_size = mk.kernel.size();
    return mk;
}

// ------------------------------------------------------------------ PPAV

namespace {

bool phi_positive(const CMField& k, const Elem& xi) {
    Elem r = xi / k.alpha();
    return k.real_sign(r, 0) > 0 && k.real_sign(r, 1) > 0;
}

}  // namespace

bool PPAVClass::valid() const {
    const CMField& k = a.K();
    if (xi.conj() != -xi || !phi_positive(k, xi)) return false;
    return times(xi, (a * a.conj()).lattice(), k) == a.order().trace_dual();
}

std::vector<PPAVClass> ppav_classes(const Order& o, const Int& f) {
    if (!o.K().is_cyclic()) throw std::invalid_argument("ppav_classes: field is not cyclic");
    if (!o.is_cc_stable()) throw std::invalid_argument("ppav_classes: order is not stable under conjugation");
    const CMField& k = o.K();
    PicardGroup pic(o, f);
    const auto& u = pic.units();
    Lattice dual = o.trace_dual();
    const Rat dual_index = dual.covolume() / o.lattice().covolume();
    const long e_eta = k.units().eta0 == k.units().eps0 ? 1 : 2;
    const long period = u.norm_step * e_eta / u.eps_step;
    const Elem e = k.units().eps0.pow(u.eps_step);
    std::vector<PPAVClass> out;
    for (std::size_t i = 0; i < pic.count(); ++i) {
        const FracIdeal& a = pic.rep(i);
        FracIdeal aa = a * a.conj();
        Lattice l = colon(dual, aa.lattice(), k);
        auto ib = imaginary_part_basis(l, k);
        if (ib.size() != 2) continue;
        auto xi = search_norm(k, ib, dual_index / aa.norm(), u.unit_size,
                              [&](const Elem& x) { return times(x, aa.lattice(), k) == dual; });
        if (!xi) continue;
        Elem ej = k.one();
        for (long j = 0; j < period; ++j) {
            for (const Elem& c : {*xi * ej, -(*xi * ej)})
                if (phi_positive(k, c)) out.push_back(PPAVClass{a, c});
            ej = ej * e;
        }
    }
    return out;
}

bool check_isogeny(const PPAVClass& c1, const PPAVClass& c2, long l, const Elem& mu) {
    const CMField& k = c1.a.K();
    if (mu.is_zero()) return false;
    if (!c2.a.lattice().contains(times(mu, c1.a.lattice(), k))) return false;
    return c2.xi * mu * mu.conj() == c1.xi * Rat(l);
}

std::optional<Elem> isogeny_test(const PPAVClass& c1, const PPAVClass& c2, long l) {
    const CMField& k = c1.a.K();
    if (c1.a.order().field() != c2.a.order().field()) throw std::invalid_argument("isogeny_test: classes from different fields");
    Elem nu = c1.xi * Rat(l) / c2.xi;
    if (!nu.is_real() || !k.is_totally_positive(nu)) return std::nullopt;
    Lattice c = colon(c2.a.lattice(), c1.a.lattice(), k);
    auto rb = lll_basis(k, lattice_elems(c, k));
    RatMat g = t2_gram(k, rb);
    std::optional<Elem> found;
    enumerate_short(g, k.trace(nu), [&](const std::vector<Int>& cc, const Rat&) {
        Elem mu = combine(rb, cc);
        if (mu * mu.conj() == nu) {
            found = mu;
            return false;
        }
        return true;
    });
    if (found && !check_isogeny(c1, c2, l, *found)) throw std::logic_error("isogeny_test: witness fails");
    return found;
}

bool ppav_equivalent(const PPAVClass& x, const PPAVClass& y) {
    if (x.a.order() != y.a.order()) return false;
    auto mu = isogeny_test(x, y, 1);
    return mu && FracIdeal(y.a.order(), times(*mu, x.a.lattice(), x.a.K())) == y.a;
}

}  // namespace cmq
