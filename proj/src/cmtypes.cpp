#include "cmq/cmtypes.hpp"

#include "cmq/residue.hpp"

#include <map>
#include <stdexcept>

namespace cmq {

namespace {

void require_cyclic(const CMField& k) {
    if (!k.is_cyclic()) throw std::invalid_argument("CM type: field is not cyclic");
}

bool s_member_with(const FracIdeal& a, const Order& o, const OrderUnits& u, const CMType& phi) {
    if (!a.coprime_to(o.index_in(Order::maximal(o.field())))) throw std::invalid_argument("s_member: ideal not coprime to the conductor");
    FracIdeal b = reflex_type_norm(a, phi);
    FracIdeal bo = b.order() == o ? b : b.contract(o);
    return PolarisedClassGroup::is_trivial(PolarisedPair{bo, a.K().rat(a.norm())}, u);
}

}  // namespace

CMType standard_type(const FieldPtr& k) {
    require_cyclic(*k);
    return CMType{k, false};
}

Elem type_norm(const Elem& x, const CMType& phi) {
    require_cyclic(*phi.k);
    return x * phi.k->sigma(x, phi.s());
}

Elem reflex_type_norm(const Elem& y, const CMType& phi) {
    require_cyclic(*phi.k);
    return y * phi.k->sigma(y, 4 - phi.s());
}

FracIdeal type_norm(const FracIdeal& a, const CMType& phi) {
    require_cyclic(*phi.k);
    return a * a.sigma(phi.s());
}

FracIdeal reflex_type_norm(const FracIdeal& b, const CMType& phi) {
    require_cyclic(*phi.k);
    return b * b.sigma(4 - phi.s());
}

bool composite_identity(const FracIdeal& a, const CMType& phi) {
    return reflex_type_norm(type_norm(a, phi), phi) == a.pow(2) * (a * a.conj()).sigma(1);
}

RayClassGenerators ray_class_generators(const FieldPtr& k, const Int& f) {
    require_cyclic(*k);
    Order ok = Order::maximal(k);
    PicardGroup pic(ok, f);
    RayClassGenerators rg;
    rg.f = f;
    rg.class_number = pic.size();
    for (const auto& a : pic.snf_generators()) {
        rg.ideals.push_back(a);
        rg.gens.push_back(std::nullopt);
    }
    rg.residue_units = 1;
    rg.unit_image = 1;
    Int kernel_generated = 1;
    if (f > 1) {
        UnitGroup ug(ResidueRing::of_order(ok, f));
        const auto& r = ug.ring();
        rg.residue_units = ug.order();
        std::vector<IVec> img{ug.dlog(r.from_elem(k->units().zeta)), ug.dlog(r.from_elem(k->units().epsK))};
        rg.unit_image = subgroup_order(ug.group(), img);
        Presentation q = quotient(ug.group(), img);
        std::vector<IVec> images;
        for (std::size_t j = 0; j < q.group.rank(); ++j) {
            IVec raw(ug.group().rank());
            for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = q.from_snf(i, j);
            Elem t = r.to_elem(ug.exp(raw));
            rg.ideals.push_back(FracIdeal::principal(ok, t));
            rg.gens.push_back(t);
            images.push_back(q.map(ug.dlog(r.from_elem(t))));
        }
        kernel_generated = q.group.rank() ? subgroup_order(q.group, images) : Int(1);
    }
    rg.ray_class_order = rg.class_number * rg.residue_units / rg.unit_image;
    rg.generated_order = rg.class_number * kernel_generated;
    return rg;
}

std::optional<Elem> reflex_generator(const FracIdeal& a, const CMType& phi) {
    const CMField& k = *phi.k;
    Order ok = Order::maximal(phi.k);
    OrderUnits u = order_units(ok);
    FracIdeal b = reflex_type_norm(a, phi);
    auto x = is_principal(b, u);
    if (!x) return std::nullopt;
    Elem r = k.rat(a.norm()) / (*x * x->conj());
    auto m = eta_log(k, r);
    if (!m) throw std::logic_error("reflex_generator: relative norm is not a unit");
    if (*m % u.norm_step != 0) return std::nullopt;
    const long s = u.norm_step;  // n0 = eta0^s for O_K
    Elem mu = *x * k.units().epsK.pow(*m / s);
    if (mu * mu.conj() != k.rat(a.norm())) throw std::logic_error("reflex_generator: normalisation failed");
    return mu;
}

bool s_member(const FracIdeal& a, const Order& o, const CMType& phi) {
    return s_member_with(a, o, order_units(o), phi);
}

bool s_member(const FracIdeal& a, const Order& o, const OrderUnits& u, const CMType& phi) {
    return s_member_with(a, o, u, phi);
}

bool is_s_full(const Order& o, const RayClassGenerators& rg, const CMType& phi) {
    OrderUnits u = order_units(o);
    for (const auto& a : rg.ideals)
        if (!s_member_with(a, o, u, phi)) return false;
    return true;
}

bool is_s_full(const Order& o, const Int& f) {
    return is_s_full(o, ray_class_generators(o.field(), f), standard_type(o.field()));
}

OminData omin_data(const FieldPtr& k, const Int& f, const CMType& phi) {
    if (k->is_zeta5()) throw std::invalid_argument("omin: use omin_zeta5 for Q(zeta5)");
    Order ok = Order::maximal(k);
    OminData d{ok, {}, ray_class_generators(k, f)};
    for (std::size_t i = 0; i < d.rays.ideals.size(); ++i) {
        std::optional<Elem> mu;
        if (d.rays.gens[i]) mu = reflex_type_norm(*d.rays.gens[i], phi);
        else mu = reflex_generator(d.rays.ideals[i], phi);
        if (!mu) throw std::domain_error("omin: S_{O_K} is not the full ideal group");
        d.mu.push_back(*mu);
    }
    d.order = Order::generated(k, d.mu, scaled_lattice(ok, f));
    return d;
}

Order omin(const FieldPtr& k, const Int& f, const CMType& phi) { return omin_data(k, f, phi).order; }
Order omin(const FieldPtr& k, const Int& f) { return omin(k, f, standard_type(k)); }

std::pair<int, Order> omin_stabilize(const FieldPtr& k, const Int& p, const CMType& phi) {
    Order prev = omin(k, 1, phi);
    Int q = 1;
    for (int j = 0; j < 30; ++j) {
        q *= p;
        Order next = omin(k, q, phi);
        if (next == prev) return {j, prev};
        prev = next;
    }
    throw std::runtime_error("omin_stabilize: no stabilisation");
}

std::vector<Order> omin_zeta5(const FieldPtr& k, const Int& f) {
    if (!k->is_zeta5()) throw std::invalid_argument("omin_zeta5: field is not Q(zeta5)");
    CMType phi = standard_type(k);
    Order ok = Order::maximal(k);
    RayClassGenerators rg = ray_class_generators(k, f);
    std::vector<Elem> mu;
    for (std::size_t i = 0; i < rg.ideals.size(); ++i) {
        auto m = rg.gens[i] ? std::optional<Elem>(reflex_type_norm(*rg.gens[i], phi)) : reflex_generator(rg.ideals[i], phi);
        if (!m) throw std::domain_error("omin_zeta5: missing generator");
        mu.push_back(*m);
    }
    const Elem z5 = k->units().zeta.pow(2);
    std::vector<Elem> zp{k->one()};
    for (int e = 1; e < 5; ++e) zp.push_back(zp.back() * z5);
    std::map<std::string, Order> cands;
    const Lattice base = scaled_lattice(ok, f);
    std::size_t total = 1;
    for (std::size_t i = 0; i < mu.size(); ++i) total *= 5;
    for (std::size_t c = 0; c < total; ++c) {
        std::vector<Elem> g;
        std::size_t r = c;
        for (const auto& m : mu) {
            g.push_back(zp[r % 5] * m);
            r /= 5;
        }
        Order o = Order::generated(k, g, base);
        cands.emplace(o.key(), o);
    }
    std::vector<Order> out;
    for (const auto& [key, o] : cands) {
        bool minimal = true;
        for (const auto& [key2, o2] : cands)
            if (key2 != key && o.contains(o2)) {
                minimal = false;
                break;
            }
        if (minimal) out.push_back(o);
    }
    return out;
}

std::vector<Order> enumerate_s_full_orders(const FieldPtr& k, const Int& f, bool verify) {
    Order ok = Order::maximal(k);
    // S_O ⊆ S_{O_K} for every O, so nothing is s-full unless O_K is
    if (!k->is_zeta5() && !is_s_full(ok, ray_class_generators(k, f), standard_type(k))) return {};
    std::vector<Order> mins = k->is_zeta5() ? omin_zeta5(k, f) : std::vector<Order>{omin(k, f)};
    std::map<std::string, Order> all;
    for (const auto& m : mins)
        for (const auto& o : intermediate_orders(m, ok))
            if (o.is_cc_stable()) all.emplace(o.key(), o);
    std::vector<Order> out;
    RayClassGenerators rg;
    if (verify) rg = ray_class_generators(k, f);
    for (const auto& [key, o] : all) {
        if (verify && !is_s_full(o, rg, standard_type(k))) throw std::logic_error("enumerate_s_full_orders: s_member disagrees with O_min");
        out.push_back(o);
    }
    return out;
}

}  // namespace cmq
