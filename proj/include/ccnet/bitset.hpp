#pragma once

#include <cstdint>
#include <vector>

namespace ccnet {

// Fixed-capacity bitset sized at runtime. Vertex sets all over the toolkit
// are represented this way; the contract everywhere is set semantics, the
// words are just the fast path.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int n) : n_(n), w_((n + 63) / 64, 0) {}

    void set(int i) { w_[i >> 6] |= uint64_t{1} << (i & 63); }
    void reset(int i) { w_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    int size() const { return n_; }

    int count() const {
        int c = 0;
        for (uint64_t w : w_) c += __builtin_popcountll(w);
        return c;
    }

    bool intersects(const Bitset& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    Bitset& operator|=(const Bitset& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    Bitset& operator&=(const Bitset& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }

    bool operator==(const Bitset& o) const { return n_ == o.n_ && w_ == o.w_; }

    // Members in increasing order.
    std::vector<int> to_vector() const {
        std::vector<int> out;
        for (int i = 0; i < n_; ++i)
            if (test(i)) out.push_back(i);
        return out;
    }

    static Bitset of(int n, const std::vector<int>& members) {
        Bitset b(n);
        for (int v : members) b.set(v);
        return b;
    }

private:
    int n_ = 0;
    std::vector<uint64_t> w_;
};

}  // namespace ccnet
