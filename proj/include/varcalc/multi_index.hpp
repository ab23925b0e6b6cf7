#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "varcalc/rational.hpp"

namespace varcalc {

/// Exponent vector (j_1,...,j_n) over the spatial coordinates. Indexes both
/// total derivatives D_J and theta-gradings theta^(J).
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t dims) : e_(dims, 0) {}
    explicit MultiIndex(std::vector<int> exponents);
    static MultiIndex zero(std::size_t dims) { return MultiIndex(dims); }
    static MultiIndex unit(std::size_t dims, std::size_t i);

    std::size_t dims() const { return e_.size(); }
    int operator[](std::size_t i) const { return e_[i]; }
    int& operator[](std::size_t i) { return e_[i]; }

    /// |J| = sum of components.
    int order() const;
    bool is_zero() const { return order() == 0; }

    MultiIndex operator+(const MultiIndex& o) const;
    /// Componentwise difference; caller must ensure o <= *this.
    MultiIndex operator-(const MultiIndex& o) const;

    /// Componentwise partial order L <= K.
    bool leq(const MultiIndex& o) const;
    MultiIndex min(const MultiIndex& o) const;

    /// Index of the last nonzero coordinate; -1 when zero.
    int last_nonzero() const;

    bool operator==(const MultiIndex&) const = default;
    auto operator<=>(const MultiIndex&) const = default;

    const std::vector<int>& exponents() const { return e_; }
    std::string str() const;

private:
    std::vector<int> e_;
};

/// (K choose L) = prod_i (k_i choose l_i); zero unless L <= K.
Integer multi_binomial(const MultiIndex& k, const MultiIndex& l);

/// Invokes fn on every L with 0 <= L <= k (componentwise), in lex order.
void for_each_leq(const MultiIndex& k, const std::function<void(const MultiIndex&)>& fn);

/// All multi-indices of the given dimension with |J| <= max_order, in
/// (order, lex) order.
std::vector<MultiIndex> multi_indices_up_to(std::size_t dims, int max_order);

} // namespace varcalc
