#pragma once

#include "cmq/order.hpp"

#include <string>
#include <vector>

namespace cmq {

// Fractional ideal of an order, stored as a full-rank lattice in the power basis.
class FracIdeal {
public:
    FracIdeal() = default;
    FracIdeal(Order o, Lattice lat);

    static FracIdeal unit(const Order& o);
    static FracIdeal principal(const Order& o, const Elem& x);
    // O-module generated by gens
    static FracIdeal generated(const Order& o, const std::vector<Elem>& gens);

    const Order& order() const { return o_; }
    const CMField& K() const { return o_.K(); }
    const Lattice& lattice() const { return lat_; }
    std::vector<Elem> basis() const;

    bool contains(const Elem& x) const { return lat_.contains(x.vec()); }
    bool contains(const FracIdeal& b) const { return lat_.contains(b.lat_); }
    bool is_integral() const { return o_.lattice().contains(lat_); }
    // smallest positive integer d with d * this integral
    Int denominator() const;

    FracIdeal operator*(const FracIdeal& b) const;
    FracIdeal operator*(const Elem& x) const;
    FracIdeal operator+(const FracIdeal& b) const;
    FracIdeal intersect(const FracIdeal& b) const;
    FracIdeal pow(long e) const;
    FracIdeal conj() const;
    FracIdeal sigma(int k = 1) const;  // cyclic fields, order must be sigma-stable

    Rat norm() const;  // [O : a]
    FracIdeal colon(const FracIdeal& b) const;  // {x : x b in this}
    FracIdeal inverse() const;                  // (O : a)
    bool is_invertible() const;
    bool coprime_to(const Int& f) const;
    Order multiplier_ring() const;

    FracIdeal extend(const Order& big) const;
    FracIdeal contract(const Order& small) const;

    bool operator==(const FracIdeal& b) const { return lat_ == b.lat_; }
    bool operator!=(const FracIdeal& b) const { return !(*this == b); }
    bool operator<(const FracIdeal& b) const { return lat_ < b.lat_; }
    std::string key() const { return lat_.key(); }
    std::string str() const;

private:
    Order o_;
    Lattice lat_;
};

struct PrimeIdeal {
    FracIdeal ideal;
    Int p;
    int f = 1;  // residue degree
    int e = 1;  // ramification index (computed for maximal orders only)
    Int norm() const;
};

// Maximal ideals of O containing p.
std::vector<PrimeIdeal> primes_above(const Order& o, const Int& p);
// All prime ideals of O with norm at most bound, skipping primes dividing `avoid`.
std::vector<PrimeIdeal> primes_up_to(const Order& o, const Int& bound, const Int& avoid = 1);

bool is_prime(const Int& n);

}  // namespace cmq
