#pragma once

#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "nmsa/core.hpp"
#include "nmsa/rational.hpp"

namespace nmsa {

/// Cost table over (alphabet + gap) x (alphabet + gap).
///
/// Entries are non-negative exact rationals. Matrices read from files are
/// canonicalized to integers (see canonicalized()); the rational-valued
/// form exists for the per-pair arrays produced by matrix_times_lengths.
/// The (gap,gap) entry is not part of the input format; it reads as 0,
/// which is exactly the convention used by column-wise SP costs.
class ScoringMatrix {
  public:
    ScoringMatrix(Alphabet alphabet, std::vector<Rational> entries)
        : alphabet_(std::move(alphabet)), entries_(std::move(entries)) {
        const int m = alphabet_.size() + 1;
        if ((int)entries_.size() != m * m)
            throw Error(Errc::ValidationError, "scoring matrix has wrong shape");
        for (const auto& e : entries_)
            if (e < Rational(0))
                throw Error(Errc::ValidationError, "scoring matrix entries must be non-negative");
        entries_[m * m - 1] = Rational(0); // (gap,gap) convention
    }

    static ScoringMatrix zero(const Alphabet& alphabet) {
        const int m = alphabet.size() + 1;
        return ScoringMatrix(alphabet, std::vector<Rational>(m * m, Rational(0)));
    }

    const Alphabet& alphabet() const { return alphabet_; }
    int gap_index() const { return alphabet_.size(); }
    int side() const { return alphabet_.size() + 1; }

    const Rational& at_index(int a, int b) const { return entries_[a * side() + b]; }
    const Rational& at(char a, char b) const {
        return at_index(alphabet_.index_of(a), alphabet_.index_of(b));
    }
    const std::vector<Rational>& entries() const { return entries_; }

    bool is_canonical() const {
        for (const auto& e : entries_)
            if (!e.is_integer()) return false;
        return true;
    }

    /// Clears denominators: multiplies every entry by the least common
    /// multiple of the entry denominators. Order of optima is preserved,
    /// so this is a harmless normal form.
    ScoringMatrix canonicalized() const {
        long long l = 1;
        for (const auto& e : entries_) l = std::lcm(l, e.den());
        if (l == 1) return *this;
        return scaled(Rational(l));
    }

    /// Every entry multiplied by c > 0, then re-canonicalized to integers.
    ScoringMatrix scaled(const Rational& c) const {
        if (!(c > Rational(0)))
            throw Error(Errc::NonPositiveScale, "scale factor must be positive");
        std::vector<Rational> out(entries_.size());
        for (std::size_t i = 0; i < entries_.size(); ++i) out[i] = entries_[i] * c;
        ScoringMatrix m(alphabet_, std::move(out));
        return m.is_canonical() ? m : m.canonicalized();
    }

    Rational max_entry() const {
        Rational mx(0);
        for (const auto& e : entries_)
            if (e > mx) mx = e;
        return mx;
    }

    /// Largest indel cost, max over symbols of gamma(a,-) and gamma(-,a).
    Rational max_gap_cost() const {
        Rational mx(0);
        const int g = gap_index();
        for (int a = 0; a < alphabet_.size(); ++a) {
            if (at_index(a, g) > mx) mx = at_index(a, g);
            if (at_index(g, a) > mx) mx = at_index(g, a);
        }
        return mx;
    }

  private:
    Alphabet alphabet_;
    std::vector<Rational> entries_;
};

inline int pair_count(int k) { return k * (k - 1) / 2; }

/// Flat index of the unordered pair {h,i}, h < i, 0-based, in the order
/// (0,1),(0,2),...,(0,k-1),(1,2),...,(k-2,k-1).
inline int pair_index(int h, int i, int k) {
    return h * k - h * (h + 1) / 2 + (i - h - 1);
}

inline std::pair<int, int> pair_from_index(int p, int k) {
    for (int h = 0; h < k - 1; ++h) {
        int row = k - 1 - h;
        if (p < row) return {h, h + 1 + p};
        p -= row;
    }
    throw Error(Errc::IndexOutOfRange, "pair index out of range");
}

/// One scoring matrix per sequence pair {h,i}, all over one alphabet.
class MatrixArray {
  public:
    MatrixArray(int k, std::vector<ScoringMatrix> matrices) : k_(k), mats_(std::move(matrices)) {
        if (k_ < 2 || (int)mats_.size() != pair_count(k_))
            throw Error(Errc::ArityMismatch, "matrix array needs C(k,2) matrices");
        for (const auto& m : mats_)
            if (!(m.alphabet() == mats_[0].alphabet()))
                throw Error(Errc::ValidationError, "matrix array must share one alphabet");
    }

    static MatrixArray uniform(int k, const ScoringMatrix& g) {
        return MatrixArray(k, std::vector<ScoringMatrix>(pair_count(k), g));
    }

    int k() const { return k_; }
    const Alphabet& alphabet() const { return mats_[0].alphabet(); }
    const ScoringMatrix& at(int h, int i) const { return mats_[pair_index(h, i, k_)]; }
    const ScoringMatrix& at_pair(int p) const { return mats_[p]; }

  private:
    int k_;
    std::vector<ScoringMatrix> mats_;
};

/// The array gamma x L: matrix for pair {h,i} is gamma with every entry
/// divided by L_hi. Pairs with L_hi = 0 get a zero matrix; such a pair
/// can never contribute a column, so its entries are never read.
inline MatrixArray matrix_times_lengths(const ScoringMatrix& g, int k,
                                        const std::vector<long long>& L) {
    if ((int)L.size() != pair_count(k))
        throw Error(Errc::ArityMismatch, "length vector needs C(k,2) entries");
    std::vector<ScoringMatrix> mats;
    mats.reserve(L.size());
    for (long long lhi : L) {
        if (lhi < 0) throw Error(Errc::LengthVectorOutOfRange, "negative induced length");
        if (lhi == 0) {
            mats.push_back(ScoringMatrix::zero(g.alphabet()));
        } else {
            std::vector<Rational> e(g.entries());
            for (auto& x : e) x = x / Rational(lhi);
            mats.push_back(ScoringMatrix(g.alphabet(), std::move(e)));
        }
    }
    return MatrixArray(k, std::move(mats));
}

// ---------------------------------------------------------------------------
// Alignment scoring criteria.
// ---------------------------------------------------------------------------

/// Column-wise cost of a 2-row alignment: sum of gamma over its columns.
inline Rational score_A(const ScoringMatrix& g, const Alignment& A) {
    if (A.k() != 2) throw Error(Errc::WrongRowCount, "A-score needs exactly 2 rows");
    Rational total(0);
    for (int j = 0; j < A.width(); ++j) total += g.at(A.row(0)[j], A.row(1)[j]);
    return total;
}

/// A-score divided by the alignment length; 0 for the empty alignment.
inline Rational score_N(const ScoringMatrix& g, const Alignment& A) {
    if (A.k() != 2) throw Error(Errc::WrongRowCount, "N-score needs exactly 2 rows");
    if (A.width() == 0) return Rational(0);
    return score_A(g, A) / Rational(A.width());
}

/// SP-score: sum of A-scores over all induced sequence pairs.
inline Rational score_SP(const ScoringMatrix& g, const Alignment& A) {
    Rational total(0);
    for (int h = 0; h < A.k(); ++h)
        for (int i = h + 1; i < A.k(); ++i)
            total += score_A(g, induced_alignment(A, {h, i}));
    return total;
}

/// SP-score computed column by column with gamma(-,-) = 0. Algebraically
/// equal to score_SP; kept as an independent route for cross-checks and
/// as the cost function the dynamic programs use.
inline Rational score_SP_by_columns(const ScoringMatrix& g, const Alignment& A) {
    Rational total(0);
    for (int j = 0; j < A.width(); ++j)
        for (int h = 0; h < A.k(); ++h)
            for (int i = h + 1; i < A.k(); ++i)
                total += g.at(A.row(h)[j], A.row(i)[j]);
    return total;
}

/// SP-score with a separate matrix per pair.
inline Rational score_SP_array(const MatrixArray& gs, const Alignment& A) {
    if (gs.k() != A.k()) throw Error(Errc::ArityMismatch, "matrix array arity differs from k");
    Rational total(0);
    for (int h = 0; h < A.k(); ++h)
        for (int i = h + 1; i < A.k(); ++i)
            total += score_A(gs.at(h, i), induced_alignment(A, {h, i}));
    return total;
}

/// Criterion 1: SP-score over the alignment length.
inline Rational score_V1(const ScoringMatrix& g, const Alignment& A) {
    if (A.width() == 0) return Rational(0);
    return score_SP(g, A) / Rational(A.width());
}

/// Criterion 2: sum of N-scores of the induced pairs.
inline Rational score_V2(const ScoringMatrix& g, const Alignment& A) {
    Rational total(0);
    for (int h = 0; h < A.k(); ++h)
        for (int i = h + 1; i < A.k(); ++i)
            total += score_N(g, induced_alignment(A, {h, i}));
    return total;
}

/// Criterion 3: SP-score over the summed induced lengths.
inline Rational score_V3(const ScoringMatrix& g, const Alignment& A) {
    if (A.width() == 0) return Rational(0);
    Rational sp(0);
    long long len_sum = 0;
    for (int h = 0; h < A.k(); ++h)
        for (int i = h + 1; i < A.k(); ++i) {
            Alignment p = induced_alignment(A, {h, i});
            sp += score_A(g, p);
            len_sum += p.width();
        }
    if (len_sum == 0) return Rational(0);
    return sp / Rational(len_sum);
}

/// Induced lengths |A_{h,i}| for every pair, in pair_index order.
inline std::vector<long long> induced_length_vector(const Alignment& A) {
    std::vector<long long> L;
    L.reserve(pair_count(A.k()));
    for (int h = 0; h < A.k(); ++h)
        for (int i = h + 1; i < A.k(); ++i)
            L.push_back(induced_alignment(A, {h, i}).width());
    return L;
}

// ---------------------------------------------------------------------------
// Matrix classes.
// ---------------------------------------------------------------------------

struct MatrixViolation {
    std::string condition; // e.g. "MC.c", "MW.e", "MN.b"
    std::string witness;   // the symbols that break it, gap rendered as '-'
};

struct MatrixClassReport {
    bool in_MC = false;
    bool in_MW = false;
    bool in_MN = false;
    std::vector<MatrixViolation> violations;
};

/// Checks membership in the three scoring-matrix classes.
///
/// MC quantifies over the alphabet plus gap with gamma(-,-) read as 0,
/// MW and the MN gap condition quantify over the alphabet only. Every
/// failed condition is recorded with a witness.
inline MatrixClassReport classify_matrix(const ScoringMatrix& g) {
    MatrixClassReport rep;
    const int m = g.alphabet().size();
    const int gi = g.gap_index();
    const Rational zero(0);
    auto sym = [&](int a) { return a == gi ? kGap : g.alphabet().symbol(a); };
    auto wit = [&](std::initializer_list<int> xs) {
        std::string w;
        for (int x : xs) {
            if (!w.empty()) w += ',';
            w += sym(x);
        }
        return w;
    };

    rep.in_MC = true;
    for (int a = 0; a <= gi; ++a) {
        for (int b = 0; b <= gi; ++b) {
            const Rational& v = g.at_index(a, b);
            if (a == b ? v != zero : !(v > zero)) {
                rep.in_MC = false;
                rep.violations.push_back({"MC.a", wit({a, b})});
            }
            if (g.at_index(a, b) != g.at_index(b, a)) {
                rep.in_MC = false;
                rep.violations.push_back({"MC.b", wit({a, b})});
            }
            for (int c = 0; c <= gi; ++c)
                if (g.at_index(a, c) > g.at_index(a, b) + g.at_index(b, c)) {
                    rep.in_MC = false;
                    rep.violations.push_back({"MC.c", wit({a, b, c})});
                }
        }
    }

    rep.in_MW = true;
    for (int a = 0; a < m; ++a) {
        if (!(g.at_index(a, gi) == g.at_index(gi, a) && g.at_index(a, gi) > zero)) {
            rep.in_MW = false;
            rep.violations.push_back({"MW.a", wit({a})});
        }
        for (int b = 0; b < m; ++b) {
            const Rational& v = g.at_index(a, b);
            if (a == b ? v != zero : !(v > zero)) {
                rep.in_MW = false;
                rep.violations.push_back({"MW.b", wit({a, b})});
            }
            if (g.at_index(a, b) < g.at_index(a, gi) + g.at_index(gi, b) &&
                g.at_index(a, b) != g.at_index(b, a)) {
                rep.in_MW = false;
                rep.violations.push_back({"MW.c", wit({a, b})});
            }
            if (g.at_index(a, gi) > g.at_index(a, b) + g.at_index(b, gi)) {
                rep.in_MW = false;
                rep.violations.push_back({"MW.d", wit({a, b})});
            }
            for (int c = 0; c < m; ++c) {
                Rational lhs = std::min(g.at_index(a, c), g.at_index(a, gi) + g.at_index(gi, c));
                if (lhs > g.at_index(a, b) + g.at_index(b, c)) {
                    rep.in_MW = false;
                    rep.violations.push_back({"MW.e", wit({a, b, c})});
                }
            }
        }
    }

    rep.in_MN = rep.in_MW;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (g.at_index(a, gi) > Rational(2) * g.at_index(b, gi)) {
                rep.in_MN = false;
                rep.violations.push_back({"MN.b", wit({a, b})});
            }
    return rep;
}

} // namespace nmsa
