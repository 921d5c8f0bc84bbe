#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "tpc/error.hpp"

namespace tpc {

// Bit-packed subset of {0, ..., universe-1}. Bit i of word i/64 is element i,
// so the whole set reads as a universe-bit little-endian integer.
class VertexSet {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    VertexSet() = default;

    explicit VertexSet(std::size_t universe)
        : n_(universe), words_((universe + 63) / 64, 0) {}

    static VertexSet full(std::size_t universe) {
        VertexSet s(universe);
        for (std::size_t i = 0; i + 1 < s.words_.size(); ++i) s.words_[i] = ~0ull;
        if (!s.words_.empty()) {
            std::size_t rem = universe % 64;
            s.words_.back() = rem == 0 ? ~0ull : ((1ull << rem) - 1);
        }
        s.size_ = universe;
        return s;
    }

    static VertexSet of(std::size_t universe, std::initializer_list<std::size_t> elems) {
        VertexSet s(universe);
        for (std::size_t e : elems) s.add(e);
        return s;
    }

    template <class Range>
    static VertexSet from_range(std::size_t universe, const Range& elems) {
        VertexSet s(universe);
        for (auto e : elems) s.add(static_cast<std::size_t>(e));
        return s;
    }

    std::size_t universe() const { return n_; }
    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool test(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void add(std::size_t i) {
        check_index(i);
        std::uint64_t m = 1ull << (i & 63);
        if (!(words_[i >> 6] & m)) {
            words_[i >> 6] |= m;
            ++size_;
        }
    }

    void remove(std::size_t i) {
        check_index(i);
        std::uint64_t m = 1ull << (i & 63);
        if (words_[i >> 6] & m) {
            words_[i >> 6] &= ~m;
            --size_;
        }
    }

    VertexSet& operator|=(const VertexSet& o) {
        check_universe(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        recount();
        return *this;
    }

    VertexSet& operator&=(const VertexSet& o) {
        check_universe(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        recount();
        return *this;
    }

    // Set difference: removes every element of o.
    VertexSet& subtract(const VertexSet& o) {
        check_universe(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        recount();
        return *this;
    }

    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }

    friend bool operator==(const VertexSet& a, const VertexSet& b) {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }

    bool intersects(const VertexSet& o) const {
        check_universe(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    std::size_t intersection_size(const VertexSet& o) const {
        check_universe(o);
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += std::popcount(words_[i] & o.words_[i]);
        return c;
    }

    bool contains_all(const VertexSet& o) const {
        check_universe(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (o.words_[i] & ~words_[i]) return false;
        return true;
    }

    std::size_t first() const { return next_from(0); }

    // Smallest element > i, or npos.
    std::size_t next(std::size_t i) const { return next_from(i + 1); }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                std::size_t b = static_cast<std::size_t>(std::countr_zero(bits));
                f(w * 64 + b);
                bits &= bits - 1;
            }
        }
    }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        out.reserve(size_);
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    // Order as universe-bit integers (element 0 is the lowest bit).
    static bool value_less(const VertexSet& a, const VertexSet& b) {
        a.check_universe(b);
        for (std::size_t i = a.words_.size(); i-- > 0;)
            if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
        return false;
    }

    // Lexicographic order on the ascending element sequences; a proper
    // prefix precedes its extensions.
    static bool lex_less(const VertexSet& a, const VertexSet& b) {
        a.check_universe(b);
        for (std::size_t i = 0; i < a.words_.size(); ++i) {
            std::uint64_t diff = a.words_[i] ^ b.words_[i];
            if (!diff) continue;
            std::size_t p = i * 64 + static_cast<std::size_t>(std::countr_zero(diff));
            if (a.test(p)) return b.next(p) != npos;
            return a.next(p) == npos;
        }
        return false;
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    void check_index(std::size_t i) const {
        if (i >= n_) fail(errc::dimension_mismatch, "element index out of range");
    }

    void check_universe(const VertexSet& o) const {
        if (n_ != o.n_) fail(errc::dimension_mismatch, "vertex sets over different universes");
    }

    std::size_t next_from(std::size_t i) const {
        if (i >= n_) return npos;
        std::size_t w = i >> 6;
        std::uint64_t bits = words_[w] & (~0ull << (i & 63));
        while (true) {
            if (bits) return w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
            if (++w == words_.size()) return npos;
            bits = words_[w];
        }
    }

    void recount() {
        size_ = 0;
        for (std::uint64_t w : words_) size_ += std::popcount(w);
    }

    std::size_t n_ = 0;
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace tpc
