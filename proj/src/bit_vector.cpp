#include "snt/bit_vector.hpp"

#include <bit>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "snt/serialize.hpp"

namespace snt {

bit_vector::bit_vector(const std::vector<bool>& bits) {
    bit_buffer buf(bits.size());
    for (uint64_t i = 0; i < bits.size(); ++i)
        if (bits[i]) buf.set_bit(i, true);
    bits_ = std::move(buf);
    build_rank_directory();
}

bit_vector::bit_vector(bit_buffer bits) : bits_(std::move(bits)) {
    build_rank_directory();
}

void bit_vector::build_rank_directory() {
    const auto& words = bits_.words();
    super_ranks_.assign((words.size() + kWordsPerSuperblock - 1) / kWordsPerSuperblock + 1, 0);
    word_ranks_.assign(words.size(), 0);
    uint64_t total = 0;
    uint64_t in_super = 0;
    for (uint64_t w = 0; w < words.size(); ++w) {
        if (w % kWordsPerSuperblock == 0) {
            super_ranks_[w / kWordsPerSuperblock] = total;
            in_super = 0;
        }
        word_ranks_[w] = static_cast<uint16_t>(in_super);
        uint64_t pc = std::popcount(words[w]);
        total += pc;
        in_super += pc;
    }
    super_ranks_.back() = total;
    total_ones_ = total;
}

uint64_t bit_vector::rank1(uint64_t i) const {
    if (i > size()) throw std::out_of_range("bit_vector::rank1: index past end");
    if (i == 0) return 0;
    uint64_t w = i / 64;
    uint64_t r = super_ranks_[w / kWordsPerSuperblock];
    if (w < word_ranks_.size()) {
        r += word_ranks_[w];
        uint64_t rem = i % 64;
        if (rem)
            r += std::popcount(bits_.words()[w] & ((uint64_t(1) << rem) - 1));
    } else {
        // i == size() landing exactly on the end of the last word
        r = total_ones_;
    }
    return r;
}

bool bit_vector::access(uint64_t i) const {
    if (i >= size()) throw std::out_of_range("bit_vector::access: index past end");
    return bits_.get_bit(i);
}

void bit_vector::serialize(std::ostream& out) const {
    write_u64(out, bits_.size());
    for (uint64_t w : bits_.words()) write_u64(out, w);
}

bit_vector bit_vector::load(std::istream& in) {
    uint64_t n = read_u64(in);
    bit_buffer buf(n);
    for (auto& w : buf.words()) w = read_u64(in);
    return bit_vector(std::move(buf));
}

}  // namespace snt
