#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace recourse::detail {

// Vertex-set masks used by the exact solvers. Mask64 covers graphs that fit
// in one machine word; MaskDyn is the vector-backed fallback for larger
// instances (adversary games grow into the hundreds of vertices).

struct Mask64 {
    std::uint64_t w = 0;

    static Mask64 full(int n) {
        return Mask64{n >= 64 ? ~0ULL : ((1ULL << n) - 1)};
    }
    bool test(int i) const { return (w >> i) & 1ULL; }
    void set(int i) { w |= 1ULL << i; }
    void reset(int i) { w &= ~(1ULL << i); }
    int count() const { return std::popcount(w); }
    bool any() const { return w != 0; }
    bool operator==(const Mask64&) const = default;
    Mask64 operator&(const Mask64& o) const { return Mask64{w & o.w}; }
    Mask64 operator|(const Mask64& o) const { return Mask64{w | o.w}; }
    Mask64 andnot(const Mask64& o) const { return Mask64{w & ~o.w}; }
    int lowest() const { return std::countr_zero(w); }

    template <class F>
    void for_each(F f) const {
        std::uint64_t x = w;
        while (x) {
            f(std::countr_zero(x));
            x &= x - 1;
        }
    }
};

struct MaskDyn {
    std::vector<std::uint64_t> w;

    MaskDyn() = default;
    explicit MaskDyn(int nbits) : w((nbits + 63) / 64, 0) {}

    static MaskDyn full(int n) {
        MaskDyn m(n);
        for (int i = 0; i < n; ++i) m.set(i);
        return m;
    }
    bool test(int i) const { return (w[i / 64] >> (i % 64)) & 1ULL; }
    void set(int i) { w[i / 64] |= 1ULL << (i % 64); }
    void reset(int i) { w[i / 64] &= ~(1ULL << (i % 64)); }
    int count() const {
        int c = 0;
        for (auto x : w) c += std::popcount(x);
        return c;
    }
    bool any() const {
        for (auto x : w)
            if (x) return true;
        return false;
    }
    bool operator==(const MaskDyn&) const = default;
    MaskDyn operator&(const MaskDyn& o) const {
        MaskDyn r = *this;
        for (std::size_t i = 0; i < w.size(); ++i) r.w[i] &= o.w[i];
        return r;
    }
    MaskDyn operator|(const MaskDyn& o) const {
        MaskDyn r = *this;
        for (std::size_t i = 0; i < w.size(); ++i) r.w[i] |= o.w[i];
        return r;
    }
    MaskDyn andnot(const MaskDyn& o) const {
        MaskDyn r = *this;
        for (std::size_t i = 0; i < w.size(); ++i) r.w[i] &= ~o.w[i];
        return r;
    }
    int lowest() const {
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i]) return static_cast<int>(i) * 64 + std::countr_zero(w[i]);
        return static_cast<int>(w.size()) * 64;
    }

    template <class F>
    void for_each(F f) const {
        for (std::size_t i = 0; i < w.size(); ++i) {
            std::uint64_t x = w[i];
            while (x) {
                f(static_cast<int>(i) * 64 + std::countr_zero(x));
                x &= x - 1;
            }
        }
    }
};

}  // namespace recourse::detail
