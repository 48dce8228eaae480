#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace cohesion {

// Set of node ids over a fixed universe {0..n-1}, packed 64 ids per word.
class NodeSet {
public:
    NodeSet() = default;

    explicit NodeSet(int universe) : n_(universe), w_((universe + 63) / 64, 0) {
        assert(universe >= 0);
    }

    static NodeSet of(int universe, std::initializer_list<int> ids) {
        NodeSet s(universe);
        for (int u : ids) s.set(u);
        return s;
    }

    static NodeSet full(int universe) {
        NodeSet s(universe);
        for (int u = 0; u < universe; ++u) s.set(u);
        return s;
    }

    // Interprets bit i of `mask` as node i; universe may exceed 64.
    static NodeSet from_mask(int universe, std::uint64_t mask) {
        assert(universe >= 0);
        NodeSet s(universe);
        if (!s.w_.empty()) s.w_[0] = mask;
        assert(universe >= 64 || (mask >> universe) == 0);
        return s;
    }

    int universe() const { return n_; }

    bool test(int u) const {
        assert(0 <= u && u < n_);
        return (w_[u >> 6] >> (u & 63)) & 1u;
    }

    void set(int u) {
        assert(0 <= u && u < n_);
        w_[u >> 6] |= std::uint64_t{1} << (u & 63);
    }

    void reset(int u) {
        assert(0 <= u && u < n_);
        w_[u >> 6] &= ~(std::uint64_t{1} << (u & 63));
    }

    int count() const {
        int c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }

    bool empty() const {
        for (auto w : w_)
            if (w) return false;
        return true;
    }

    // Lowest member, or -1 when empty.
    int first() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return int(i * 64) + std::countr_zero(w_[i]);
        return -1;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t w = w_[i];
            while (w) {
                f(int(i * 64) + std::countr_zero(w));
                w &= w - 1;
            }
        }
    }

    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(count());
        for_each([&](int u) { out.push_back(u); });
        return out;
    }

    std::uint64_t to_mask() const {
        assert(n_ <= 64);
        return w_.empty() ? 0 : w_[0];
    }

    bool is_subset_of(const NodeSet& o) const {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    bool intersects(const NodeSet& o) const {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    NodeSet operator&(const NodeSet& o) const {
        assert(n_ == o.n_);
        NodeSet r(n_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
        return r;
    }

    NodeSet operator|(const NodeSet& o) const {
        assert(n_ == o.n_);
        NodeSet r(n_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] | o.w_[i];
        return r;
    }

    // Members of this set absent from `o`.
    NodeSet minus(const NodeSet& o) const {
        assert(n_ == o.n_);
        NodeSet r(n_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & ~o.w_[i];
        return r;
    }

    bool operator==(const NodeSet& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const NodeSet& o) const { return !(*this == o); }

    bool operator<(const NodeSet& o) const {
        if (n_ != o.n_) return n_ < o.n_;
        return w_ < o.w_;
    }

private:
    int n_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace cohesion
