#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "nmsa/core.hpp"
#include "nmsa/scoring.hpp"

namespace nmsa::detail {

using i128 = __int128;

/// Saturating product for cell-count estimates; anything at or beyond the
/// saturation point exceeds every representable cap.
inline constexpr i128 kCellSaturation = (i128)1 << 62;

inline i128 sat_mul(i128 a, long long b) {
    if (a >= kCellSaturation) return kCellSaturation;
    i128 r = a * b;
    return r >= kCellSaturation ? kCellSaturation : r;
}

inline void check_cell_cap(i128 cells, long long cap, const char* what) {
    if (cells > (i128)cap) {
        bool saturated = cells >= kCellSaturation;
        throw Error(Errc::ResourceCapExceeded,
                    std::string(what) + ": estimated " +
                        (saturated ? std::string(">= 2^62")
                                   : std::to_string((long long)cells)) +
                        " cells exceeds cap " + std::to_string(cap));
    }
}

/// Integer view of a scoring matrix: entry * scale is integral for every
/// entry. Lets the dynamic programs run on 64-bit integers while staying
/// exact; divide by `scale` to recover the rational value.
struct ScaledMatrix {
    long long scale = 1;
    int side = 0;
    long long max_cost = 0;
    std::vector<long long> cost; // side * side

    ScaledMatrix() = default;
    explicit ScaledMatrix(const ScoringMatrix& g, long long extra_scale = 1) {
        long long l = 1;
        for (const auto& e : g.entries()) {
            i128 next = (i128)(l / std::gcd(l, e.den())) * e.den();
            if (next > (i128)(1LL << 60)) throw std::overflow_error("matrix scale overflow");
            l = (long long)next;
        }
        i128 s = (i128)l * extra_scale;
        if (s > (i128)(1LL << 60)) throw std::overflow_error("matrix scale overflow");
        scale = (long long)s;
        side = g.side();
        cost.resize((std::size_t)side * side);
        for (int a = 0; a < side; ++a)
            for (int b = 0; b < side; ++b) {
                const Rational& e = g.at_index(a, b);
                i128 v = (i128)e.num() * (scale / e.den());
                if (v > (i128)(1LL << 60)) throw std::overflow_error("scaled matrix entry overflow");
                cost[(std::size_t)a * side + b] = (long long)v;
                max_cost = std::max(max_cost, (long long)v);
            }
    }

    long long at(int a, int b) const { return cost[(std::size_t)a * side + b]; }
};

inline long long checked_lcm(long long a, long long b) {
    long long g = std::gcd(a, b);
    i128 l = (i128)(a / g) * b;
    if (l > (i128)(1LL << 60)) throw std::overflow_error("scale lcm overflow");
    return (long long)l;
}

/// Accumulated DP values are bounded by max entry x pairs x columns;
/// refuse inputs where that bound leaves no 64-bit headroom.
inline void check_cost_headroom(long long max_cost, long long pairs, long long max_columns) {
    i128 bound = (i128)max_cost * std::max(pairs, 1LL) * std::max(max_columns, 1LL);
    if (bound >= ((i128)1 << 62))
        throw std::overflow_error("scaled costs exceed 64-bit accumulation headroom");
}

/// Sequences mapped to alphabet indices, for O(1) cost lookups.
struct IndexedSequences {
    int k = 0;
    int gap = 0;
    std::vector<std::vector<int>> sym; // sym[i][p] = alphabet index of s_i(p+1)

    IndexedSequences(const KSequence& S, const Alphabet& alpha) : k(S.k()), gap(alpha.size()) {
        sym.resize(k);
        for (int i = 0; i < k; ++i) {
            const Sequence& s = S.sequence(i);
            sym[i].resize(s.size());
            for (std::size_t p = 0; p < s.size(); ++p) sym[i][p] = alpha.index_of(s[p]);
        }
    }

    /// Alphabet index in row i of the column defined by `mask` at prefix v.
    int col_sym(int i, unsigned mask, const IndexVector& v) const {
        return (mask >> i) & 1u ? sym[i][v[i] - 1] : gap;
    }
};

inline void ensure_sequences_over(const ScoringMatrix& g, const KSequence& S) {
    for (const auto& s : S.sequences())
        for (char c : s)
            if (!g.alphabet().contains(c))
                throw Error(Errc::AlphabetMismatch,
                            std::string("sequence symbol '") + c + "' not in matrix alphabet");
}

/// Row-major strides for a dense table over mixed radices. Linear index
/// order coincides with the index-vector enumeration order (first
/// component fastest).
struct MixedRadix {
    std::vector<long long> stride;
    long long size = 1;

    MixedRadix() = default;
    explicit MixedRadix(const std::vector<int>& radix) {
        stride.resize(radix.size());
        for (std::size_t i = 0; i < radix.size(); ++i) {
            stride[i] = size;
            size *= radix[i];
        }
    }

    long long index(const IndexVector& v) const {
        long long idx = 0;
        for (std::size_t i = 0; i < v.size(); ++i) idx += stride[i] * v[i];
        return idx;
    }
};

/// All non-zero k-bit column masks, largest first in the lexicographic
/// order of the bit vector [b_1,...,b_k]. Tie-breaking in every
/// traceback walks this order, which makes outputs deterministic.
/// Everything downstream scans all 2^k - 1 masks per cell, so k is
/// capped well before the mask table itself becomes the problem.
inline std::vector<unsigned> masks_lex_desc(int k) {
    if (k > 20)
        throw Error(Errc::ResourceCapExceeded,
                    "k = " + std::to_string(k) + " is beyond the dense column enumeration (max 20)");
    std::vector<unsigned> out;
    out.reserve((1u << k) - 1);
    for (unsigned v = (1u << k) - 1; v >= 1; --v) {
        unsigned m = 0;
        for (int i = 0; i < k; ++i)
            if (v >> (k - 1 - i) & 1u) m |= 1u << i;
        out.push_back(m);
    }
    return out;
}

inline bool mask_within(unsigned mask, const IndexVector& v) {
    for (int i = 0; mask >> i; ++i)
        if ((mask >> i & 1u) && v[i] < 1) return false;
    return true;
}

inline BitVector mask_to_bits(unsigned mask, int k) {
    BitVector b(k, 0);
    for (int i = 0; i < k; ++i) b[i] = (mask >> i) & 1u;
    return b;
}

/// Scaled SP cost of the column `mask` places at prefix v (pairs whose
/// rows are both gaps contribute the (gap,gap) entry, i.e. zero).
inline long long sp_column_cost(const ScaledMatrix& m, const IndexedSequences& seqs, unsigned mask,
                                const IndexVector& v) {
    long long c = 0;
    for (int h = 0; h < seqs.k; ++h) {
        int xh = seqs.col_sym(h, mask, v);
        for (int i = h + 1; i < seqs.k; ++i) c += m.at(xh, seqs.col_sym(i, mask, v));
    }
    return c;
}

inline long long sp_column_cost_array(const std::vector<ScaledMatrix>& per_pair,
                                      const IndexedSequences& seqs, unsigned mask,
                                      const IndexVector& v) {
    long long c = 0;
    int p = 0;
    for (int h = 0; h < seqs.k; ++h) {
        int xh = seqs.col_sym(h, mask, v);
        for (int i = h + 1; i < seqs.k; ++i, ++p)
            c += per_pair[p].at(xh, seqs.col_sym(i, mask, v));
    }
    return c;
}

} // namespace nmsa::detail
