#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nmsa/detail/dense.hpp"
#include "nmsa/exact.hpp"
#include "nmsa/scoring.hpp"

namespace nmsa {

struct EnumerationBudget {
    long long max_alignments = 10'000'000;
    /// Width cap; -1 means the natural bound (total symbol count).
    long long max_width = -1;
};

/// Visits every alignment of S exactly once. Alignments are generated as
/// sequences of non-zero column bit vectors whose component-wise sum is
/// the length vector, depth first, columns chosen largest-first in
/// lexicographic order. No pruning, no memoization: this is the ground
/// truth the clever algorithms are checked against.
template <typename Fn>
inline void enumerate_alignments(const KSequence& S, const EnumerationBudget& budget, Fn&& visit) {
    if (budget.max_alignments <= 0 || budget.max_width == 0)
        throw Error(Errc::ValidationError, "enumeration budget must be positive");
    const int k = S.k();
    const IndexVector n = S.lengths();
    const long long width_cap = budget.max_width < 0 ? S.total_length() : budget.max_width;
    const std::vector<unsigned> masks = detail::masks_lex_desc(k);
    std::vector<BitVector> cols;
    IndexVector consumed(k, 0);
    long long emitted = 0;

    std::function<void()> dfs = [&]() {
        if (consumed == n) {
            if (++emitted > budget.max_alignments)
                throw Error(Errc::BudgetExceeded,
                            "enumeration exceeded " + std::to_string(budget.max_alignments) +
                                " alignments");
            visit(static_cast<const Alignment&>(alignment_from_bitvectors(S, cols)));
            return;
        }
        if ((long long)cols.size() >= width_cap)
            throw Error(Errc::BudgetExceeded, "enumeration exceeded the width budget");
        for (unsigned m : masks) {
            bool ok = true;
            for (int i = 0; i < k; ++i)
                if ((m >> i & 1u) && consumed[i] >= n[i]) { ok = false; break; }
            if (!ok) continue;
            for (int i = 0; i < k; ++i)
                if (m >> i & 1u) ++consumed[i];
            cols.push_back(detail::mask_to_bits(m, k));
            dfs();
            cols.pop_back();
            for (int i = 0; i < k; ++i)
                if (m >> i & 1u) --consumed[i];
        }
    };
    dfs();
}

inline long long count_alignments(const KSequence& S, const EnumerationBudget& budget = {}) {
    long long count = 0;
    enumerate_alignments(S, budget, [&](const Alignment&) { ++count; });
    return count;
}

enum class OracleCriterion { SP, V1, V2, V3 };

inline const char* oracle_criterion_name(OracleCriterion c) {
    switch (c) {
        case OracleCriterion::SP: return "sp";
        case OracleCriterion::V1: return "v1";
        case OracleCriterion::V2: return "v2";
        case OracleCriterion::V3: return "v3";
    }
    return "?";
}

/// Exhaustive minimum of the chosen criterion, scored definitionally.
/// Ties resolve to the first alignment in enumeration order.
inline ExactResult brute_force_optimum(const KSequence& S, const ScoringMatrix& g,
                                       OracleCriterion crit, const EnumerationBudget& budget = {}) {
    detail::ensure_sequences_over(g, S);
    std::optional<Rational> best;
    Alignment best_alignment;
    long long seen = 0;
    enumerate_alignments(S, budget, [&](const Alignment& A) {
        ++seen;
        Rational v;
        switch (crit) {
            case OracleCriterion::SP: v = score_SP(g, A); break;
            case OracleCriterion::V1: v = score_V1(g, A); break;
            case OracleCriterion::V2: v = score_V2(g, A); break;
            case OracleCriterion::V3: v = score_V3(g, A); break;
        }
        if (!best || v < *best) {
            best = v;
            best_alignment = A;
        }
    });
    return ExactResult{*best, std::move(best_alignment),
                       std::string("oracle_") + oracle_criterion_name(crit), seen};
}

/// Exhaustive minimum of the per-pair-matrix SP criterion.
inline ExactResult brute_force_optimum_array(const KSequence& S, const MatrixArray& gs,
                                             const EnumerationBudget& budget = {}) {
    if (gs.k() != S.k()) throw Error(Errc::ArityMismatch, "matrix array arity differs from k");
    std::optional<Rational> best;
    Alignment best_alignment;
    long long seen = 0;
    enumerate_alignments(S, budget, [&](const Alignment& A) {
        ++seen;
        Rational v = score_SP_array(gs, A);
        if (!best || v < *best) {
            best = v;
            best_alignment = A;
        }
    });
    return ExactResult{*best, std::move(best_alignment), "oracle_sp_array", seen};
}

} // namespace nmsa
