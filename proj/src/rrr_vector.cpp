#include "snt/rrr_vector.hpp"

#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "snt/serialize.hpp"

namespace snt {

namespace {

// C(n, k) for n, k <= 63; C(63, 31) fits comfortably in 64 bits
const uint64_t* binomial_table() {
    static const auto table = [] {
        static uint64_t t[64][64];
        for (int n = 0; n < 64; ++n) {
            t[n][0] = 1;
            for (int k = 1; k < 64; ++k)
                t[n][k] = (k > n) ? 0 : (n == 0 ? 0 : t[n - 1][k - 1] + t[n - 1][k]);
        }
        return &t[0][0];
    }();
    return table;
}

inline uint64_t binom(unsigned n, unsigned k) { return binomial_table()[n * 64 + k]; }

unsigned class_width_for(unsigned b) { return bits_for(b); }  // ceil(lg(b+1))

void check_block_size(unsigned b) {
    if (b != 15 && b != 31 && b != 63)
        throw std::invalid_argument("rrr_vector: block size must be 15, 31 or 63");
}

}  // namespace

unsigned rrr_vector::offset_width(unsigned b, unsigned cls) {
    uint64_t count = binom(b, cls);
    return bits_for(count - 1);
}

uint64_t rrr_vector::encode_block(uint64_t block, unsigned b, unsigned cls) {
    uint64_t nr = 0;
    unsigned k = cls;
    for (unsigned i = 0; i < b && k > 0; ++i) {
        if ((block >> i) & 1) {
            nr += binom(b - i - 1, k);
            --k;
        }
    }
    return nr;
}

uint64_t rrr_vector::decode_block(uint64_t offset, unsigned b, unsigned cls) {
    uint64_t block = 0;
    unsigned k = cls;
    for (unsigned i = 0; i < b && k > 0; ++i) {
        uint64_t skip = binom(b - i - 1, k);
        if (offset >= skip) {
            block |= uint64_t(1) << i;
            offset -= skip;
            --k;
        }
    }
    return block;
}

double rrr_vector::class_overhead_per_bit(unsigned block_size) {
    check_block_size(block_size);
    return std::log2(double(block_size) + 1.0) / double(block_size);
}

rrr_vector::rrr_vector(const std::vector<bool>& bits, unsigned block_size) {
    check_block_size(block_size);
    bit_buffer buf(bits.size());
    for (uint64_t i = 0; i < bits.size(); ++i)
        if (bits[i]) buf.set_bit(i, true);
    n_ = bits.size();
    b_ = block_size;
    build(buf);
}

rrr_vector::rrr_vector(const bit_buffer& bits, unsigned block_size) {
    check_block_size(block_size);
    n_ = bits.size();
    b_ = block_size;
    build(bits);
}

void rrr_vector::build(const bit_buffer& bits) {
    class_width_ = class_width_for(b_);
    const uint64_t nb = num_blocks();
    classes_ = bit_buffer();
    offsets_ = bit_buffer();
    sample_rank_.clear();
    sample_pos_.clear();
    uint64_t rank = 0;
    for (uint64_t t = 0; t < nb; ++t) {
        if (t % kSampleRate == 0) {
            sample_rank_.push_back(rank);
            sample_pos_.push_back(offsets_.size());
        }
        uint64_t begin = t * b_;
        unsigned width = static_cast<unsigned>(std::min<uint64_t>(b_, n_ - begin));
        uint64_t block = bits.get(begin, width);  // final partial block zero-padded
        unsigned cls = static_cast<unsigned>(std::popcount(block));
        classes_.append(cls, class_width_);
        offsets_.append(encode_block(block, b_, cls), offset_width(b_, cls));
        rank += cls;
    }
    total_ones_ = rank;
}

rrr_vector::block_cursor rrr_vector::seek(uint64_t block) const {
    uint64_t s = block / kSampleRate;
    block_cursor cur{sample_rank_[s], sample_pos_[s]};
    for (uint64_t t = s * kSampleRate; t < block; ++t) {
        unsigned cls = static_cast<unsigned>(classes_.get(t * class_width_, class_width_));
        cur.rank += cls;
        cur.offset_pos += offset_width(b_, cls);
    }
    return cur;
}

uint64_t rrr_vector::read_block(uint64_t block, const block_cursor& cur) const {
    unsigned cls = static_cast<unsigned>(classes_.get(block * class_width_, class_width_));
    unsigned w = offset_width(b_, cls);
    return decode_block(offsets_.get(cur.offset_pos, w), b_, cls);
}

uint64_t rrr_vector::rank1(uint64_t i) const {
    if (i > n_) throw std::out_of_range("rrr_vector::rank1: index past end");
    if (i == 0) return 0;
    uint64_t block = i / b_;
    unsigned rem = static_cast<unsigned>(i % b_);
    if (block >= num_blocks()) return total_ones_;  // i == n_ on a block boundary
    block_cursor cur = seek(block);
    if (rem == 0) return cur.rank;
    uint64_t word = read_block(block, cur);
    return cur.rank + std::popcount(word & ((uint64_t(1) << rem) - 1));
}

bool rrr_vector::access(uint64_t i) const {
    if (i >= n_) throw std::out_of_range("rrr_vector::access: index past end");
    uint64_t block = i / b_;
    block_cursor cur = seek(block);
    return (read_block(block, cur) >> (i % b_)) & 1;
}

rrr_vector::size_breakdown rrr_vector::sizes() const {
    return {num_blocks() * class_width_, offsets_.size(),
            sample_rank_.size() * 128};
}

void rrr_vector::serialize(std::ostream& out) const {
    write_u64(out, n_);
    write_u8(out, static_cast<uint8_t>(b_));
    auto write_padded = [&](const bit_buffer& buf) {
        const auto& words = buf.words();
        uint64_t nbytes = (buf.size() + 7) / 8;
        for (uint64_t i = 0; i < nbytes; ++i)
            write_u8(out, static_cast<uint8_t>(words[i / 8] >> (8 * (i % 8))));
    };
    write_padded(classes_);
    for (uint64_t s = 0; s < sample_rank_.size(); ++s) {
        write_u64(out, sample_rank_[s]);
        write_u64(out, sample_pos_[s]);
    }
    write_padded(offsets_);
}

rrr_vector rrr_vector::load(std::istream& in) {
    rrr_vector v;
    v.n_ = read_u64(in);
    v.b_ = read_u8(in);
    check_block_size(v.b_);
    v.class_width_ = class_width_for(v.b_);
    const uint64_t nb = v.num_blocks();
    auto read_padded = [&](uint64_t nbits) {
        bit_buffer buf(nbits);
        uint64_t nbytes = (nbits + 7) / 8;
        for (uint64_t i = 0; i < nbytes; ++i)
            buf.words()[i / 8] |= uint64_t(read_u8(in)) << (8 * (i % 8));
        return buf;
    };
    v.classes_ = read_padded(nb * v.class_width_);
    uint64_t nsamples = (nb + kSampleRate - 1) / kSampleRate;
    v.sample_rank_.resize(nsamples);
    v.sample_pos_.resize(nsamples);
    for (uint64_t s = 0; s < nsamples; ++s) {
        v.sample_rank_[s] = read_u64(in);
        v.sample_pos_[s] = read_u64(in);
    }
    uint64_t offset_bits = 0;
    uint64_t ones = 0;
    for (uint64_t t = 0; t < nb; ++t) {
        unsigned cls = static_cast<unsigned>(v.classes_.get(t * v.class_width_, v.class_width_));
        offset_bits += offset_width(v.b_, cls);
        ones += cls;
    }
    v.offsets_ = read_padded(offset_bits);
    v.total_ones_ = ones;
    return v;
}

bool rrr_vector::operator==(const rrr_vector& o) const {
    return n_ == o.n_ && b_ == o.b_ && classes_ == o.classes_ && offsets_ == o.offsets_ &&
           sample_rank_ == o.sample_rank_ && sample_pos_ == o.sample_pos_;
}

}  // namespace snt
