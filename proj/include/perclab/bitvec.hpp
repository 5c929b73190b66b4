#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace perclab {

// Packed bit vector; one bit per edge in configuration use.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(int n, bool value = false)
        : n_(n), w_((n + 63) / 64, value ? ~0ULL : 0ULL) {
        trim();
    }

    int size() const { return n_; }

    bool get(int i) const { return (w_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1ULL; }

    void set(int i, bool v) {
        std::uint64_t& w = w_[static_cast<std::size_t>(i) >> 6];
        const std::uint64_t m = 1ULL << (i & 63);
        w = v ? (w | m) : (w & ~m);
    }

    void fill(bool v) {
        for (auto& w : w_) w = v ? ~0ULL : 0ULL;
        trim();
    }

    int count() const {
        int c = 0;
        for (auto w : w_) c += __builtin_popcountll(w);
        return c;
    }

    // true iff every set bit of *this is also set in other
    bool subset_of(const BitVec& other) const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & ~other.w_[k]) return false;
        return true;
    }

    BitVec operator|(const BitVec& other) const {
        BitVec r = *this;
        for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] |= other.w_[k];
        return r;
    }

    bool operator==(const BitVec& other) const { return n_ == other.n_ && w_ == other.w_; }
    bool operator!=(const BitVec& other) const { return !(*this == other); }

    // Hex dump: byte k holds bits 8k..8k+7 (LSB first), printed high nibble first.
    std::string to_hex() const;
    static BitVec from_hex(const std::string& hex, int n);

    std::uint64_t fnv1a() const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (auto w : w_)
            for (int b = 0; b < 8; ++b) {
                h ^= (w >> (8 * b)) & 0xFFULL;
                h *= 0x100000001b3ULL;
            }
        return h;
    }

private:
    void trim() {
        if (n_ & 63) w_.back() &= (1ULL << (n_ & 63)) - 1;
    }

    int n_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace perclab
