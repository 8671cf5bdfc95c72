#ifndef FAIRSIM_BITSET_HH
#define FAIRSIM_BITSET_HH

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace fairsim {

// Fixed-universe dynamic bitset. Values of the same universe size compare
// and combine word-wise; mixing sizes is a programming error.
class Bitset {
public:
    Bitset() = default;

    explicit Bitset(std::size_t size) : size_(size), words_((size + 63) / 64, 0u) {}

    static Bitset full(std::size_t size) {
        Bitset b(size);
        for (auto& w : b.words_) w = ~0ull;
        b.trim();
        return b;
    }

    std::size_t size() const { return size_; }

    bool test(std::size_t i) const {
        assert(i < size_);
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i) {
        assert(i < size_);
        words_[i >> 6] |= (1ull << (i & 63));
    }

    void reset(std::size_t i) {
        assert(i < size_);
        words_[i >> 6] &= ~(1ull << (i & 63));
    }

    std::size_t count() const {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
        return n;
    }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }

    bool none() const { return !any(); }

    bool subset_of(const Bitset& other) const {
        assert(size_ == other.size_);
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~other.words_[k]) return false;
        return true;
    }

    Bitset& operator|=(const Bitset& o) {
        assert(size_ == o.size_);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }

    Bitset& operator&=(const Bitset& o) {
        assert(size_ == o.size_);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }

    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }

    friend bool operator==(const Bitset& a, const Bitset& b) {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

    // Visits set bits in increasing index order.
    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            std::uint64_t w = words_[k];
            while (w) {
                unsigned bit = static_cast<unsigned>(__builtin_ctzll(w));
                f(k * 64 + bit);
                w &= w - 1;
            }
        }
    }

private:
    void trim() {
        if (size_ % 64 != 0 && !words_.empty())
            words_.back() &= (1ull << (size_ % 64)) - 1;
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace fairsim

#endif
