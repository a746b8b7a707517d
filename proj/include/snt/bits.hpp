/*
 * bits.hpp
 *
 * Packed bit buffer with variable-width append/read, shared by the
 * bitvector and wavelet-tree layers.
 */

#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace snt {

// Little-endian bit packing: bit i of the logical stream lives in
// words[i / 64] at position i % 64. Reads of up to 64 bits may span
// two words.
class bit_buffer {
public:
    bit_buffer() = default;

    explicit bit_buffer(uint64_t nbits) : nbits_(nbits) {
        words_.assign((nbits + 63) / 64, 0);
    }

    uint64_t size() const { return nbits_; }
    bool empty() const { return nbits_ == 0; }
    const std::vector<uint64_t>& words() const { return words_; }
    std::vector<uint64_t>& words() { return words_; }

    void append(uint64_t value, unsigned width) {
        assert(width <= 64);
        if (width == 0) return;
        if (width < 64) value &= (uint64_t(1) << width) - 1;
        uint64_t pos = nbits_;
        nbits_ += width;
        if (words_.size() * 64 < nbits_) words_.resize((nbits_ + 63) / 64, 0);
        unsigned off = pos % 64;
        words_[pos / 64] |= value << off;
        if (off + width > 64) words_[pos / 64 + 1] |= value >> (64 - off);
    }

    void append_bit(bool b) { append(b ? 1 : 0, 1); }

    uint64_t get(uint64_t pos, unsigned width) const {
        assert(width <= 64);
        assert(pos + width <= nbits_);
        if (width == 0) return 0;
        unsigned off = pos % 64;
        uint64_t lo = words_[pos / 64] >> off;
        if (off + width > 64) lo |= words_[pos / 64 + 1] << (64 - off);
        if (width < 64) lo &= (uint64_t(1) << width) - 1;
        return lo;
    }

    bool get_bit(uint64_t pos) const {
        assert(pos < nbits_);
        return (words_[pos / 64] >> (pos % 64)) & 1;
    }

    void set_bit(uint64_t pos, bool b) {
        assert(pos < nbits_);
        uint64_t mask = uint64_t(1) << (pos % 64);
        if (b)
            words_[pos / 64] |= mask;
        else
            words_[pos / 64] &= ~mask;
    }

    // number of 1 bits in [0, nbits_)
    uint64_t popcount() const {
        uint64_t c = 0;
        for (uint64_t w : words_) c += std::popcount(w);
        return c;
    }

    bool operator==(const bit_buffer& o) const {
        return nbits_ == o.nbits_ && words_ == o.words_;
    }

private:
    std::vector<uint64_t> words_;
    uint64_t nbits_ = 0;
};

inline unsigned bits_for(uint64_t v) {  // width of v, i.e. ceil(lg(v+1))
    return v == 0 ? 0 : 64 - std::countl_zero(v);
}

}  // namespace snt
