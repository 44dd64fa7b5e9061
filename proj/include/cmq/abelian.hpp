#pragma once

#include "cmq/linalg.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace cmq {

using IVec = std::vector<Int>;

// Z^r / diag(invariants), invariants d_1 | d_2 | ... all > 1.
struct AbelianGroup {
    std::vector<Int> invariants;

    std::size_t rank() const { return invariants.size(); }
    Int order() const;
    Int exponent() const;
    IVec reduce(const IVec& v) const;
    bool is_zero(const IVec& v) const;
    IVec add(const IVec& a, const IVec& b) const;
    IVec neg(const IVec& a) const;
    IVec scale(const IVec& a, const Int& k) const;
    Int element_order(const IVec& v) const;
    // Elements in lexicographic order of coordinates.
    std::vector<IVec> elements(const Int& cap = 1000000) const;
    bool operator==(const AbelianGroup& o) const { return invariants == o.invariants; }
};

// Z^n / L for a full-rank relation lattice L (columns of `relations`).
struct Presentation {
    AbelianGroup group;
    IntMat to_snf;    // rank x n
    IntMat from_snf;  // n x rank; column j is the raw vector of SNF generator j
    IVec map(const IVec& raw) const;
};
Presentation present(const IntMat& relations);

// G / <gens>
Presentation quotient(const AbelianGroup& g, const std::vector<IVec>& gens);
Int subgroup_order(const AbelianGroup& g, const std::vector<IVec>& gens);
bool subgroup_contains(const AbelianGroup& g, const std::vector<IVec>& gens, const IVec& x);

struct Subgroup {
    std::vector<IVec> gens;  // in ambient coordinates
    AbelianGroup structure;
    Int order() const { return structure.order(); }
    Int exponent() const { return structure.exponent(); }
};
Subgroup make_subgroup(const AbelianGroup& g, const std::vector<IVec>& gens);
Subgroup subgroup_intersection(const AbelianGroup& g, const std::vector<IVec>& a, const std::vector<IVec>& b);
// Kernel of the homomorphism G -> H sending generator j of G to column j of m.
Subgroup hom_kernel(const AbelianGroup& g, const AbelianGroup& h, const IntMat& m);
Int hom_image_order(const AbelianGroup& g, const AbelianGroup& h, const IntMat& m);

// Abelian group generated by opaque elements, with discrete logs.
template <class T>
struct GroupStructure {
    AbelianGroup group;
    std::vector<T> generators;              // one per invariant
    std::vector<T> input_generators;
    Presentation presentation;              // raw exponents -> SNF
    std::vector<T> elements;                // every element once
    std::vector<IVec> element_raw;          // raw exponents of elements[i]
    std::function<std::optional<IVec>(const T&)> raw_log;

    std::optional<IVec> dlog(const T& x) const {
        auto r = raw_log(x);
        if (!r) return std::nullopt;
        return presentation.map(*r);
    }
};

struct GroupTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

template <class T, class Compose>
T power(const T& one, const T& g, long k, const Compose& compose) {
    T r = one;
    T b = g;
    while (k > 0) {
        if (k & 1) r = compose(r, b);
        k >>= 1;
        if (k) b = compose(b, b);
    }
    return r;
}

template <class T>
GroupStructure<T> finish(std::vector<T> gens, std::vector<long> rel_k, std::vector<IVec> rel_v,
                         std::vector<T> elems, std::vector<IVec> raws, const T& one,
                         const std::function<T(const T&, const T&)>& compose) {
    const std::size_t n = gens.size();
    IntMat rel(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        rel(i, i) = rel_k[i];
        for (std::size_t j = 0; j < i; ++j) rel(j, i) = -rel_v[i][j];
    }
    GroupStructure<T> gs;
    gs.input_generators = gens;
    gs.presentation = n ? present(rel) : Presentation{};
    gs.group = gs.presentation.group;
    // canonical raw vector -> element index (mixed radix)
    auto index_of = [rel_k, rel_v, n](IVec v) {
        for (std::size_t i = n; i-- > 0;) {
            Int q = floor_div(v[i], Int(rel_k[i]));
            if (q != 0) {
                v[i] -= q * rel_k[i];
                for (std::size_t j = 0; j < i; ++j) v[j] += q * rel_v[i][j];
            }
        }
        long idx = 0, mult = 1;
        for (std::size_t i = 0; i < n; ++i) {
            idx += v[i].get_si() * mult;
            mult *= rel_k[i];
        }
        return idx;
    };
    for (std::size_t j = 0; j < gs.group.rank(); ++j) {
        IVec raw(n);
        for (std::size_t i = 0; i < n; ++i) raw[i] = gs.presentation.from_snf(i, j);
        gs.generators.push_back(elems[static_cast<std::size_t>(index_of(raw))]);
    }
    (void)one;
    (void)compose;
    gs.elements = std::move(elems);
    gs.element_raw = std::move(raws);
    return gs;
}

}  // namespace detail

// Closure with canonical keys; suitable when elements have a normal form.
template <class T, class Key, class Hash = std::hash<Key>>
GroupStructure<T> group_structure_hashed(const std::vector<T>& gens, const T& one,
                                         std::function<T(const T&, const T&)> compose,
                                         std::function<Key(const T&)> key, std::size_t cap = 10000000) {
    const std::size_t n = gens.size();
    std::vector<T> elems{one};
    std::vector<IVec> raws{IVec(n, 0)};
    auto table = std::make_shared<std::unordered_map<Key, std::size_t, Hash>>();
    (*table)[key(one)] = 0;
    std::vector<long> rel_k(n);
    std::vector<IVec> rel_v(n);
    for (std::size_t i = 0; i < n; ++i) {
        T x = gens[i];
        long k = 1;
        for (;;) {
            auto it = table->find(key(x));
            if (it != table->end()) {
                rel_v[i] = raws[it->second];
                break;
            }
            x = compose(x, gens[i]);
            ++k;
            if (static_cast<std::size_t>(k) * elems.size() > cap) throw GroupTooLarge("group_structure: cap exceeded");
        }
        rel_k[i] = k;
        const std::size_t base = elems.size();
        T gj = one;
        for (long j = 1; j < k; ++j) {
            gj = compose(gj, gens[i]);
            for (std::size_t h = 0; h < base; ++h) {
                T y = compose(gj, elems[h]);
                IVec r = raws[h];
                r[i] = j;
                (*table)[key(y)] = elems.size();
                elems.push_back(std::move(y));
                raws.push_back(std::move(r));
            }
        }
    }
    auto gs = detail::finish<T>(gens, rel_k, rel_v, elems, raws, one, compose);
    auto raw_copy = std::make_shared<std::vector<IVec>>(gs.element_raw);
    gs.raw_log = [table, raw_copy, key](const T& x) -> std::optional<IVec> {
        auto it = table->find(key(x));
        if (it == table->end()) return std::nullopt;
        return (*raw_copy)[it->second];
    };
    return gs;
}

// Closure using only an identity test. Quadratic in the group order.
template <class T>
GroupStructure<T> group_structure(const std::vector<T>& gens, const T& one,
                                  std::function<T(const T&, const T&)> compose,
                                  std::function<bool(const T&)> is_identity, std::size_t cap = 100000) {
    const std::size_t n = gens.size();
    std::vector<T> elems{one}, inv{one};
    std::vector<IVec> raws{IVec(n, 0)};
    std::vector<long> rel_k(n);
    std::vector<IVec> rel_v(n);
    auto find = [&](const T& x) -> long {
        for (std::size_t h = 0; h < elems.size(); ++h)
            if (is_identity(compose(x, inv[h]))) return static_cast<long>(h);
        return -1;
    };
    for (std::size_t i = 0; i < n; ++i) {
        // inverse of g from its full order
        long ord = 1;
        T p = gens[i];
        while (!is_identity(p)) {
            p = compose(p, gens[i]);
            if (static_cast<std::size_t>(++ord) > cap) throw GroupTooLarge("group_structure: element order cap");
        }
        T ginv = detail::power(one, gens[i], ord - 1, compose);
        T x = gens[i];
        long k = 1;
        for (;;) {
            long h = find(x);
            if (h >= 0) {
                rel_v[i] = raws[static_cast<std::size_t>(h)];
                break;
            }
            x = compose(x, gens[i]);
            ++k;
        }
        rel_k[i] = k;
        if (static_cast<std::size_t>(k) * elems.size() > cap) throw GroupTooLarge("group_structure: cap exceeded");
        const std::size_t base = elems.size();
        T gj = one, gji = one;
        for (long j = 1; j < k; ++j) {
            gj = compose(gj, gens[i]);
            gji = compose(gji, ginv);
            for (std::size_t h = 0; h < base; ++h) {
                IVec r = raws[h];
                r[i] = j;
                elems.push_back(compose(gj, elems[h]));
                inv.push_back(compose(gji, inv[h]));
                raws.push_back(std::move(r));
            }
        }
    }
    auto gs = detail::finish<T>(gens, rel_k, rel_v, elems, raws, one, compose);
    auto el_inv = std::make_shared<std::vector<T>>(inv);
    auto raw_copy = std::make_shared<std::vector<IVec>>(gs.element_raw);
    gs.raw_log = [el_inv, raw_copy, compose, is_identity](const T& x) -> std::optional<IVec> {
        for (std::size_t h = 0; h < el_inv->size(); ++h)
            if (is_identity(compose(x, (*el_inv)[h]))) return (*raw_copy)[h];
        return std::nullopt;
    };
    return gs;
}

std::string to_string(const AbelianGroup& g);

}  // namespace cmq
