#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "nmsa/eail.hpp"
#include "nmsa/exact.hpp"
#include "nmsa/oracle.hpp"
#include "nmsa/pairwise.hpp"
#include "testutil.hpp"

using namespace nmsa;

namespace {

const ScoringMatrix& g9() {
    static ScoringMatrix m = tu::uniform_matrix("abc", 9, 10);
    return m;
}
const ScoringMatrix& d7() {
    static ScoringMatrix m = tu::uniform_matrix("abc", 7, 9);
    return m;
}

KSequence letters() { return tu::kseq("abc", {"a", "b", "c"}); }
KSequence perms() { return tu::kseq("abc", {"abc", "acb", "cba"}); }

TEST(MsaExact, SingleColumnOptimum) {
    ExactResult r = msa_exact(letters(), g9());
    EXPECT_EQ(r.value, Rational(27));
    EXPECT_EQ(r.alignment.width(), 1);
    EXPECT_EQ(score_SP(g9(), r.alignment), r.value);
    EXPECT_EQ(r.cells_computed, 2 * 2 * 2);
}

TEST(MsaExact, EmptyAgainstNonEmpty) {
    ExactResult r = msa_exact(tu::kseq("ab", {"ab", ""}), tu::levenshtein("ab"));
    EXPECT_EQ(r.value, Rational(2));
    EXPECT_EQ(r.alignment.rows(), (std::vector<std::string>{"ab", "--"}));
}

TEST(MsaExact, IdenticalSequences) {
    ExactResult r = msa_exact(tu::kseq("ab", {"a", "a", "a"}), tu::levenshtein("ab"));
    EXPECT_EQ(r.value, Rational(0));
    EXPECT_EQ(r.alignment.width(), 1);
}

TEST(MsaExactArray, UniformEqualsPlain) {
    std::mt19937 rng(31);
    for (int iter = 0; iter < 10; ++iter) {
        std::vector<std::string> seqs;
        for (int i = 0; i < 3; ++i) seqs.push_back(tu::random_sequence(rng, "ab", 3));
        KSequence S = tu::kseq("ab", seqs);
        if (S.all_empty()) continue;
        ScoringMatrix m = tu::random_matrix(rng, "ab", 9);
        EXPECT_EQ(msa_exact_array(S, MatrixArray::uniform(3, m)).value, msa_exact(S, m).value);
    }
}

TEST(MsaExactArray, MatchesArrayOracle) {
    std::mt19937 rng(32);
    for (int iter = 0; iter < 10; ++iter) {
        std::vector<std::string> seqs;
        for (int i = 0; i < 3; ++i) seqs.push_back(tu::random_sequence(rng, "ab", 2));
        KSequence S = tu::kseq("ab", seqs);
        if (S.all_empty()) continue;
        std::vector<ScoringMatrix> mats;
        for (int p = 0; p < 3; ++p) mats.push_back(tu::random_matrix(rng, "ab", 9));
        MatrixArray gs(3, std::move(mats));
        EXPECT_EQ(msa_exact_array(S, gs).value, brute_force_optimum_array(S, gs).value);
    }
}

TEST(MsaExactArray, LengthWeightedObjective) {
    // with gamma x L weights, the engine minimizes the V2-style
    // numerator the criterion-2 program feeds it
    std::mt19937 rng(33);
    std::vector<long long> L = {2, 3, 2};
    MatrixArray gs = matrix_times_lengths(d7(), 3, L);
    KSequence S = tu::kseq("abc", {"ab", "c", "b"});
    ExactResult r = msa_exact_array(S, gs);
    ExactResult o = brute_force_optimum_array(S, gs);
    EXPECT_EQ(r.value, o.value);
}

TEST(Nmsa1Exact, WidthThreeOptimum) {
    ExactResult r = nmsa1_exact(letters(), g9());
    EXPECT_EQ(r.value, Rational(20));
    EXPECT_EQ(r.alignment.width(), 3);
    EXPECT_EQ(score_V1(g9(), r.alignment), r.value);
}

TEST(Nmsa1Exact, IdenticalSequencesZero) {
    EXPECT_EQ(nmsa1_exact(tu::kseq("ab", {"ab", "ab"}), tu::levenshtein("ab")).value, Rational(0));
}

TEST(Nmsa1Exact, PermTrioMatchesOracle) {
    ExactResult r = nmsa1_exact(perms(), d7());
    ExactResult o = brute_force_optimum(perms(), d7(), OracleCriterion::V1);
    EXPECT_EQ(r.value, o.value);
    EXPECT_EQ(score_V1(d7(), r.alignment), r.value);
}

TEST(Nmsa1Exact, CellTelemetryClosedForm) {
    // (N+1) * prod(n_i + 1)
    ExactResult r = nmsa1_exact(perms(), d7());
    EXPECT_EQ(r.cells_computed, (9 + 1) * 4 * 4 * 4);
    ExactResult r2 = nmsa1_exact(letters(), g9());
    EXPECT_EQ(r2.cells_computed, (3 + 1) * 2 * 2 * 2);
}

TEST(Nmsa2Exact, PermTrioOptimum) {
    // beats the displayed width-5 alignment (81/5): the optimum keeps all
    // induced pairs at width 4 for a total of 61/4
    ExactResult r = nmsa2_exact(perms(), d7());
    EXPECT_EQ(r.value, Rational(61, 4));
    EXPECT_LT(r.value, Rational(81, 5));
    EXPECT_EQ(score_V2(d7(), r.alignment), r.value);
    EXPECT_EQ(r.value, brute_force_optimum(perms(), d7(), OracleCriterion::V2).value);
}

TEST(Nmsa2Exact, LettersPreferSingleColumn) {
    ExactResult r = nmsa2_exact(letters(), g9());
    EXPECT_EQ(r.value, Rational(27));
    EXPECT_EQ(r.alignment.width(), 1);
}

TEST(Nmsa2Exact, TwoSequencesReduceToNormalizedDistance) {
    std::mt19937 rng(34);
    for (int iter = 0; iter < 12; ++iter) {
        std::string s = tu::random_sequence(rng, "ab", 3);
        std::string t = tu::random_sequence(rng, "ab", 3);
        if (s.empty() && t.empty()) s = "a";
        ScoringMatrix m = tu::random_matrix(rng, "ab", 9);
        KSequence S = tu::kseq("ab", {s, t});
        EXPECT_EQ(nmsa2_exact(S, m).value, dist_N(s, t, m).value) << s << "/" << t;
    }
}

TEST(Nmsa2Inner, FiniteExactlyWhenFeasible) {
    KSequence S = tu::kseq("ab", {"ab", "a", "b"});
    IndexVector n = S.lengths();
    std::vector<int> L(3, 0);
    std::vector<int> bounds = {n[0] + n[1], n[0] + n[2], n[1] + n[2]};
    for (L[0] = 0; L[0] <= bounds[0]; ++L[0])
        for (L[1] = 0; L[1] <= bounds[1]; ++L[1])
            for (L[2] = 0; L[2] <= bounds[2]; ++L[2]) {
                bool finite = nmsa2_induced_length_value(S, tu::levenshtein("ab"), L).has_value();
                bool feasible = eail_check(n, L).feasible;
                EXPECT_EQ(finite, feasible) << L[0] << "," << L[1] << "," << L[2];
            }
}

TEST(Nmsa3Exact, GoldenValues) {
    ExactResult r = nmsa3_exact(letters(), g9());
    EXPECT_EQ(r.value, Rational(9));
    EXPECT_EQ(r.alignment.width(), 1);
    ExactResult d = nmsa3_exact(perms(), d7());
    EXPECT_EQ(d.value, Rational(61, 12));
    EXPECT_EQ(score_V3(d7(), d.alignment), d.value);
    EXPECT_EQ(d.value, brute_force_optimum(perms(), d7(), OracleCriterion::V3).value);
}

TEST(Nmsa3Exact, IdenticalSequencesZero) {
    EXPECT_EQ(nmsa3_exact(tu::kseq("ab", {"ab", "ab", "ab"}), tu::levenshtein("ab")).value,
              Rational(0));
}

TEST(Nmsa3Exact, CellTelemetryClosedForm) {
    // ((k-1)N + 1) * prod(n_i + 1)
    ExactResult r = nmsa3_exact(perms(), d7());
    EXPECT_EQ(r.cells_computed, (2 * 9 + 1) * 4 * 4 * 4);
}

TEST(ResourceGuard, CapAborts) {
    ExactOptions tiny{10};
    try {
        nmsa1_exact(perms(), d7(), tiny);
        FAIL() << "expected ResourceCapExceeded";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::ResourceCapExceeded);
        EXPECT_NE(std::string(e.what()).find("640"), std::string::npos);
    }
    EXPECT_THROW(nmsa2_exact(perms(), d7(), tiny), Error);
    EXPECT_THROW(msa_exact(perms(), d7(), tiny), Error);
    EXPECT_THROW(nmsa3_exact(perms(), d7(), tiny), Error);
}

TEST(AllEngines, FourSequenceOracleEquivalence) {
    std::mt19937 rng(38);
    for (int iter = 0; iter < 6; ++iter) {
        std::vector<std::string> seqs;
        for (int i = 0; i < 4; ++i) seqs.push_back(tu::random_sequence(rng, "ab", 2));
        KSequence S = tu::kseq("ab", seqs);
        if (S.all_empty()) continue;
        ScoringMatrix m = tu::random_matrix(rng, "ab", 9);
        EXPECT_EQ(msa_exact(S, m).value, brute_force_optimum(S, m, OracleCriterion::SP).value);
        EXPECT_EQ(nmsa1_exact(S, m).value, brute_force_optimum(S, m, OracleCriterion::V1).value);
        EXPECT_EQ(nmsa3_exact(S, m).value, brute_force_optimum(S, m, OracleCriterion::V3).value);
    }
    for (int iter = 0; iter < 4; ++iter) {
        std::vector<std::string> seqs;
        for (int i = 0; i < 4; ++i) seqs.push_back(tu::random_sequence(rng, "ab", 1));
        KSequence S = tu::kseq("ab", seqs);
        if (S.all_empty()) continue;
        ScoringMatrix m = tu::random_matrix(rng, "ab", 9);
        EXPECT_EQ(nmsa2_exact(S, m).value, brute_force_optimum(S, m, OracleCriterion::V2).value);
    }
}

TEST(ResourceGuard, HugeCostsRejectedBeforeOverflow) {
    Alphabet a("ab");
    long long big = 1LL << 59;
    std::vector<Rational> e = {
        Rational(0),   Rational(big), Rational(big),
        Rational(big), Rational(0),   Rational(big),
        Rational(big), Rational(big), Rational(0),
    };
    ScoringMatrix huge(a, e);
    KSequence S = tu::kseq("ab", {"abab", "baba", "aabb"});
    EXPECT_THROW(msa_exact(S, huge), std::overflow_error);
    EXPECT_THROW(dist_A("abab", "baba", huge), std::overflow_error);
}

TEST(AllEngines, FractionalEntriesStayExact) {
    // denominators 3, 7, 11: the clearing scale is their product
    Alphabet a("ab");
    std::vector<Rational> e = {
        Rational(0),     Rational(1, 3), Rational(1, 7),
        Rational(1, 3),  Rational(0),    Rational(1, 11),
        Rational(1, 7),  Rational(1, 11), Rational(0),
    };
    ScoringMatrix m(a, e);
    KSequence S = tu::kseq("ab", {"ab", "ba", "b"});
    ExactResult r = msa_exact(S, m);
    EXPECT_EQ(r.value, brute_force_optimum(S, m, OracleCriterion::SP).value);
    EXPECT_EQ(score_SP(m, r.alignment), r.value);
    ExactResult v2 = nmsa2_exact(S, m);
    EXPECT_EQ(v2.value, brute_force_optimum(S, m, OracleCriterion::V2).value);
}

TEST(ResourceGuard, TooManySequences) {
    std::vector<std::string> seqs(25, "");
    seqs[0] = "a";
    seqs[1] = "b";
    KSequence S = tu::kseq("ab", seqs);
    try {
        msa_exact(S, tu::levenshtein("ab"));
        FAIL() << "expected ResourceCapExceeded";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::ResourceCapExceeded);
    }
}

TEST(AllEngines, EmptyKSequence) {
    KSequence S = tu::kseq("ab", {"", "", ""});
    EXPECT_EQ(msa_exact(S, tu::levenshtein("ab")).value, Rational(0));
    EXPECT_EQ(nmsa1_exact(S, tu::levenshtein("ab")).value, Rational(0));
    EXPECT_EQ(nmsa2_exact(S, tu::levenshtein("ab")).value, Rational(0));
    EXPECT_EQ(nmsa3_exact(S, tu::levenshtein("ab")).value, Rational(0));
    EXPECT_EQ(msa_exact(S, tu::levenshtein("ab")).alignment.width(), 0);
}

TEST(AllEngines, OracleEquivalenceSmallGrid) {
    // spot sample of the exhaustive grid; the full sweep runs in the
    // acceptance suite
    std::mt19937 rng(35);
    std::vector<std::string> pool = {"", "a", "b", "ab", "ba", "aa"};
    for (int iter = 0; iter < 15; ++iter) {
        std::vector<std::string> seqs = {pool[rng() % pool.size()], pool[rng() % pool.size()],
                                         pool[rng() % pool.size()]};
        KSequence S = tu::kseq("ab", seqs);
        if (S.all_empty()) continue;
        ScoringMatrix m = tu::random_matrix(rng, "ab", 9);
        EXPECT_EQ(msa_exact(S, m).value, brute_force_optimum(S, m, OracleCriterion::SP).value);
        EXPECT_EQ(nmsa1_exact(S, m).value, brute_force_optimum(S, m, OracleCriterion::V1).value);
        EXPECT_EQ(nmsa2_exact(S, m).value, brute_force_optimum(S, m, OracleCriterion::V2).value);
        EXPECT_EQ(nmsa3_exact(S, m).value, brute_force_optimum(S, m, OracleCriterion::V3).value);
    }
}

TEST(AllEngines, ReturnedAlignmentReproducesValue) {
    std::mt19937 rng(36);
    for (int iter = 0; iter < 10; ++iter) {
        std::vector<std::string> seqs;
        for (int i = 0; i < 3; ++i) seqs.push_back(tu::random_sequence(rng, "ab", 3));
        KSequence S = tu::kseq("ab", seqs);
        if (S.all_empty()) continue;
        ScoringMatrix m = tu::random_matrix(rng, "ab", 9);
        ExactResult sp = msa_exact(S, m);
        EXPECT_EQ(score_SP(m, sp.alignment), sp.value);
        ExactResult v1 = nmsa1_exact(S, m);
        EXPECT_EQ(score_V1(m, v1.alignment), v1.value);
        ExactResult v2 = nmsa2_exact(S, m);
        EXPECT_EQ(score_V2(m, v2.alignment), v2.value);
        ExactResult v3 = nmsa3_exact(S, m);
        EXPECT_EQ(score_V3(m, v3.alignment), v3.value);
    }
}

TEST(Concurrency, ParallelCallersShareNothing) {
    // every engine owns its table; concurrent calls over one shared
    // matrix must agree with the serial answers
    std::vector<KSequence> inputs;
    std::vector<Rational> expected;
    std::mt19937 rng(39);
    for (int i = 0; i < 8; ++i) {
        std::vector<std::string> seqs;
        for (int j = 0; j < 3; ++j) seqs.push_back(tu::random_sequence(rng, "ab", 3, 1));
        inputs.push_back(tu::kseq("ab", seqs));
        expected.push_back(nmsa2_exact(inputs.back(), tu::levenshtein("ab")).value);
    }
    std::vector<Rational> got(inputs.size(), Rational(0));
    std::vector<std::thread> workers;
    for (std::size_t t = 0; t < 4; ++t)
        workers.emplace_back([&, t]() {
            for (std::size_t i = t; i < inputs.size(); i += 4)
                got[i] = nmsa2_exact(inputs[i], tu::levenshtein("ab")).value;
        });
    for (auto& w : workers) w.join();
    EXPECT_EQ(got, expected);
}

TEST(Sanity, WidthNormalizedAtMostSumOfPairs) {
    std::mt19937 rng(37);
    for (int iter = 0; iter < 10; ++iter) {
        std::vector<std::string> seqs;
        for (int i = 0; i < 3; ++i) seqs.push_back(tu::random_sequence(rng, "ab", 3, 1));
        KSequence S = tu::kseq("ab", seqs);
        ScoringMatrix m = tu::random_matrix(rng, "ab", 9);
        EXPECT_LE(nmsa1_exact(S, m).value, msa_exact(S, m).value);
    }
}

} // namespace
