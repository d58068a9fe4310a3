#pragma once

#include <string>
#include <vector>

#include "nmsa/exact.hpp"
#include "nmsa/scoring.hpp"

namespace nmsa {

struct PairwiseResult {
    Rational value;
    Alignment alignment;
    long long cells_computed = 0;
};

namespace detail {

/// One pass of the pairwise recurrence keeping, per prefix, the optimal
/// cost and the maximum length over optimal alignments of that prefix.
struct PairDP {
    long long n, m;
    ScaledMatrix sm;
    int gap;
    std::vector<int> si, ti;
    std::vector<long long> cost; // (n+1) x (m+1)
    std::vector<long long> len;  // max alignment length at optimal cost

    PairDP(const Sequence& s, const Sequence& t, const ScoringMatrix& g)
        : n((long long)s.size()), m((long long)t.size()), sm(g), gap(g.gap_index()) {
        check_cost_headroom(sm.max_cost, 1, n + m);
        si.resize(s.size());
        ti.resize(t.size());
        for (std::size_t p = 0; p < s.size(); ++p) si[p] = g.alphabet().index_of(s[p]);
        for (std::size_t p = 0; p < t.size(); ++p) ti[p] = g.alphabet().index_of(t[p]);
        cost.assign((n + 1) * (m + 1), 0);
        len.assign((n + 1) * (m + 1), 0);
        for (long long i = 0; i <= n; ++i) {
            for (long long j = 0; j <= m; ++j) {
                if (i == 0 && j == 0) continue;
                long long idx = i * (m + 1) + j;
                long long best = -1, best_len = -1;
                auto consider = [&](long long pidx, long long c) {
                    long long cand = cost[pidx] + c;
                    if (best < 0 || cand < best) {
                        best = cand;
                        best_len = len[pidx] + 1;
                    } else if (cand == best && len[pidx] + 1 > best_len) {
                        best_len = len[pidx] + 1;
                    }
                };
                if (i > 0 && j > 0) consider(idx - (m + 1) - 1, sm.at(si[i - 1], ti[j - 1]));
                if (i > 0) consider(idx - (m + 1), sm.at(si[i - 1], gap));
                if (j > 0) consider(idx - 1, sm.at(gap, ti[j - 1]));
                cost[idx] = best;
                len[idx] = best_len;
            }
        }
    }

    /// Deterministic walk back: among optimal predecessors prefer the
    /// substitution column, then the s-consuming column.
    std::vector<BitVector> traceback() const {
        std::vector<BitVector> cols;
        long long i = n, j = m;
        while (i > 0 || j > 0) {
            long long idx = i * (m + 1) + j;
            if (i > 0 && j > 0 && cost[idx - (m + 1) - 1] + sm.at(si[i - 1], ti[j - 1]) == cost[idx]) {
                cols.push_back({1, 1});
                --i, --j;
            } else if (i > 0 && cost[idx - (m + 1)] + sm.at(si[i - 1], gap) == cost[idx]) {
                cols.push_back({1, 0});
                --i;
            } else {
                cols.push_back({0, 1});
                --j;
            }
        }
        std::reverse(cols.begin(), cols.end());
        return cols;
    }
};

} // namespace detail

/// Optimal A-score (edit distance under gamma) with a witness alignment.
inline PairwiseResult dist_A(const Sequence& s, const Sequence& t, const ScoringMatrix& g) {
    KSequence S(g.alphabet(), {s, t});
    detail::PairDP dp(s, t, g);
    Alignment A = alignment_from_bitvectors(S, dp.traceback());
    return PairwiseResult{Rational(dp.cost.back(), dp.sm.scale), std::move(A),
                          (dp.n + 1) * (dp.m + 1)};
}

/// Maximum length over the A-optimal alignments of s, t.
inline long long max_optimal_length(const Sequence& s, const Sequence& t,
                                    const ScoringMatrix& g) {
    KSequence S(g.alphabet(), {s, t}); // validates symbols
    detail::PairDP dp(s, t, g);
    return dp.len.back();
}

/// The optimal A-score divided by the maximum optimal length: never more
/// than twice the normalized distance, and cheap to compute.
inline Rational heuristic_N(const Sequence& s, const Sequence& t, const ScoringMatrix& g) {
    KSequence S(g.alphabet(), {s, t});
    detail::PairDP dp(s, t, g);
    if (dp.len.back() == 0) return Rational(0);
    return Rational(dp.cost.back(), dp.sm.scale) / Rational(dp.len.back());
}

/// Optimal N-score (normalized edit distance): the k = 2 case of the
/// length-stratified table, minimizing D(n, m, L)/L over widths L.
inline PairwiseResult dist_N(const Sequence& s, const Sequence& t, const ScoringMatrix& g) {
    KSequence S(g.alphabet(), {s, t});
    ExactResult r = nmsa1_exact(S, g);
    return PairwiseResult{r.value, std::move(r.alignment), r.cells_computed};
}

} // namespace nmsa
