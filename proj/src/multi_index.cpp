#include "varcalc/multi_index.hpp"

#include <cassert>
#include <numeric>
#include <stdexcept>

namespace varcalc {

MultiIndex::MultiIndex(std::vector<int> exponents) : e_(std::move(exponents)) {
    for (int x : e_)
        if (x < 0) throw std::invalid_argument("multi-index components must be non-negative");
}

MultiIndex MultiIndex::unit(std::size_t dims, std::size_t i) {
    MultiIndex m(dims);
    assert(i < dims);
    m.e_[i] = 1;
    return m;
}

int MultiIndex::order() const { return std::accumulate(e_.begin(), e_.end(), 0); }

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
    assert(dims() == o.dims());
    MultiIndex r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
    return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
    assert(dims() == o.dims());
    MultiIndex r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) {
        r.e_[i] -= o.e_[i];
        assert(r.e_[i] >= 0);
    }
    return r;
}

bool MultiIndex::leq(const MultiIndex& o) const {
    assert(dims() == o.dims());
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > o.e_[i]) return false;
    return true;
}

MultiIndex MultiIndex::min(const MultiIndex& o) const {
    assert(dims() == o.dims());
    MultiIndex r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = std::min(r.e_[i], o.e_[i]);
    return r;
}

int MultiIndex::last_nonzero() const {
    for (int i = static_cast<int>(e_.size()) - 1; i >= 0; --i)
        if (e_[i] != 0) return i;
    return -1;
}

std::string MultiIndex::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(e_[i]);
    }
    return s + ")";
}

Integer multi_binomial(const MultiIndex& k, const MultiIndex& l) {
    assert(k.dims() == l.dims());
    if (!l.leq(k)) return Integer(0);
    Integer out(1);
    for (std::size_t i = 0; i < k.dims(); ++i)
        out *= binomial(static_cast<unsigned long>(k[i]), static_cast<unsigned long>(l[i]));
    return out;
}

void for_each_leq(const MultiIndex& k, const std::function<void(const MultiIndex&)>& fn) {
    MultiIndex cur(k.dims());
    while (true) {
        fn(cur);
        // odometer increment bounded componentwise by k
        std::size_t i = 0;
        for (; i < k.dims(); ++i) {
            if (cur[i] < k[i]) {
                ++cur[i];
                for (std::size_t j = 0; j < i; ++j) cur[j] = 0;
                break;
            }
        }
        if (i == k.dims()) break;
    }
}

std::vector<MultiIndex> multi_indices_up_to(std::size_t dims, int max_order) {
    std::vector<MultiIndex> out;
    MultiIndex bound(dims);
    for (std::size_t i = 0; i < dims; ++i) bound[i] = max_order;
    for_each_leq(bound, [&](const MultiIndex& m) {
        if (m.order() <= max_order) out.push_back(m);
    });
    std::sort(out.begin(), out.end(), [](const MultiIndex& a, const MultiIndex& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a < b;
    });
    return out;
}

} // namespace varcalc
