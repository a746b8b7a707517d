/*
 * rrr_vector.hpp
 *
 * Compressed bitvector. Fixed-size blocks are stored as a popcount class
 * plus a combinatorial offset into the enumeration of all blocks of that
 * class; superblock samples every 32 blocks give O(1) rank with at most
 * one superblock scan.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "snt/bits.hpp"

namespace snt {

class rrr_vector {
public:
    static constexpr unsigned kSampleRate = 32;  // blocks per superblock

    rrr_vector() = default;
    rrr_vector(const std::vector<bool>& bits, unsigned block_size);
    rrr_vector(const bit_buffer& bits, unsigned block_size);

    uint64_t size() const { return n_; }
    unsigned block_size() const { return b_; }

    uint64_t rank1(uint64_t i) const;
    uint64_t rank0(uint64_t i) const { return i - rank1(i); }

    bool access(uint64_t i) const;
    bool operator[](uint64_t i) const { return access(i); }

    uint64_t ones() const { return total_ones_; }

    struct size_breakdown {
        uint64_t class_bits;    // ceil(n/b) * ceil(lg(b+1))
        uint64_t offset_bits;   // sum of per-block offset widths
        uint64_t sample_bits;   // superblock samples, 128 bits each
        uint64_t payload() const { return class_bits + offset_bits; }
        uint64_t total() const { return class_bits + offset_bits + sample_bits; }
    };
    size_breakdown sizes() const;

    uint64_t payload_bits() const { return sizes().payload(); }
    uint64_t sample_bits() const { return sizes().sample_bits; }

    // h(b) = lg(b+1)/b, the per-bit class overhead
    static double class_overhead_per_bit(unsigned block_size);

    // combinatorial coding of a single block, exposed for tests
    static uint64_t encode_block(uint64_t block, unsigned b, unsigned cls);
    static uint64_t decode_block(uint64_t offset, unsigned b, unsigned cls);
    static unsigned offset_width(unsigned b, unsigned cls);

    void serialize(std::ostream& out) const;
    static rrr_vector load(std::istream& in);

    bool operator==(const rrr_vector& o) const;

private:
    void build(const bit_buffer& bits);
    uint64_t num_blocks() const { return (n_ + b_ - 1) / b_; }
    // class of block t and the offset-stream position of block t, starting
    // the scan at t's superblock sample; also accumulates rank before t
    struct block_cursor {
        uint64_t rank;
        uint64_t offset_pos;
    };
    block_cursor seek(uint64_t block) const;
    uint64_t read_block(uint64_t block, const block_cursor& cur) const;

    uint64_t n_ = 0;
    unsigned b_ = 0;
    unsigned class_width_ = 0;
    bit_buffer classes_;
    bit_buffer offsets_;
    std::vector<uint64_t> sample_rank_;  // rank1 before block 32k
    std::vector<uint64_t> sample_pos_;   // offset-stream bit position before block 32k
    uint64_t total_ones_ = 0;
};

}  // namespace snt
