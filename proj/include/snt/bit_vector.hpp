/*
 * bit_vector.hpp
 *
 * Plain bitvector with a two-level rank directory: absolute counts every
 * 512 bits, 16-bit relative counts per 64-bit word.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "snt/bits.hpp"

namespace snt {

class bit_vector {
public:
    static constexpr uint64_t kSuperblockBits = 512;
    static constexpr uint64_t kWordsPerSuperblock = kSuperblockBits / 64;

    bit_vector() = default;
    explicit bit_vector(const std::vector<bool>& bits);
    explicit bit_vector(bit_buffer bits);

    uint64_t size() const { return bits_.size(); }

    // number of 1 bits in [0, i); i may equal size()
    uint64_t rank1(uint64_t i) const;
    uint64_t rank0(uint64_t i) const { return i - rank1(i); }

    bool access(uint64_t i) const;
    bool operator[](uint64_t i) const { return access(i); }

    uint64_t ones() const { return total_ones_; }

    // storage accounting, in bits
    uint64_t payload_bits() const { return bits_.words().size() * 64; }
    uint64_t sample_bits() const {
        return super_ranks_.size() * 64 + word_ranks_.size() * 16;
    }

    void serialize(std::ostream& out) const;
    static bit_vector load(std::istream& in);

    bool operator==(const bit_vector& o) const { return bits_ == o.bits_; }

private:
    void build_rank_directory();

    bit_buffer bits_;
    std::vector<uint64_t> super_ranks_;   // absolute rank1 before each superblock
    std::vector<uint16_t> word_ranks_;    // rank1 within superblock, before each word
    uint64_t total_ones_ = 0;
};

}  // namespace snt
