#include "perclab/bitvec.hpp"

#include "perclab/errors.hpp"

namespace perclab {

std::string BitVec::to_hex() const {
    static const char* digits = "0123456789abcdef";
    const int nbytes = (n_ + 7) / 8;
    std::string out;
    out.reserve(static_cast<std::size_t>(nbytes) * 2);
    for (int k = 0; k < nbytes; ++k) {
        const std::uint64_t w = w_[static_cast<std::size_t>(k) >> 3];
        const unsigned byte = static_cast<unsigned>((w >> (8 * (k & 7))) & 0xFF);
        out.push_back(digits[byte >> 4]);
        out.push_back(digits[byte & 0xF]);
    }
    return out;
}

BitVec BitVec::from_hex(const std::string& hex, int n) {
    const int nbytes = (n + 7) / 8;
    if (static_cast<int>(hex.size()) != 2 * nbytes)
        throw ValidationError("hex configuration length mismatch: got " +
                              std::to_string(hex.size()) + " digits for " + std::to_string(n) +
                              " bits");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw ValidationError(std::string("invalid hex digit '") + c + "'");
    };
    BitVec v(n);
    for (int k = 0; k < nbytes; ++k) {
        const int byte = (nibble(hex[2 * k]) << 4) | nibble(hex[2 * k + 1]);
        for (int b = 0; b < 8; ++b) {
            const int i = 8 * k + b;
            if (i < n && ((byte >> b) & 1)) v.set(i, true);
        }
        if (8 * k + 8 > n && (byte >> (n - 8 * k)) != 0)
            throw ValidationError("hex configuration has bits beyond declared length");
    }
    return v;
}

}  // namespace perclab
