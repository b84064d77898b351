#include "doctest.h"

#include <random>
#include <set>

#include "rsfactor/root_system.hpp"

using namespace rsfactor;

namespace {

// Independent typing oracle: a root lambda_i - lambda_j is compact exactly
// when the matrix unit E_{ij} stays inside a diagonal block of
// J = diag(I_p, -I_q), i.e. when J_ii == J_jj.
RootKind typing_oracle(int i, int j, int p) {
    const int ji = i < p ? 1 : -1;
    const int jj = j < p ? 1 : -1;
    return ji == jj ? RootKind::Compact : RootKind::Noncompact;
}

// The set of positive roots mapped to positive roots by w.
std::set<std::pair<int, int>> non_inverted(const RootSystem& rs, const WeylElement& w) {
    std::set<std::pair<int, int>> out;
    for (const Root& rt : rs.positive_roots)
        if (w(rt.from) < w(rt.to)) out.insert({rt.from, rt.to});
    return out;
}

std::set<std::pair<int, int>> inverted(const RootSystem& rs, const WeylElement& w) {
    std::set<std::pair<int, int>> out;
    for (const Root& rt : rs.positive_roots)
        if (w(rt.from) > w(rt.to)) out.insert({rt.from, rt.to});
    return out;
}

std::set<std::pair<int, int>> tau_set(const ReducedWordData& word) {
    std::set<std::pair<int, int>> out;
    for (const Root& rt : word.taus) out.insert({rt.from, rt.to});
    return out;
}

void check_word_invariants(const RootSystem& rs, const ReducedWordData& word, bool birkhoff) {
    // tau_j = r_1..r_{j-1} . gamma_j and prefixes are consistent.
    for (int j = 0; j < word.length(); ++j) {
        const WeylElement u = word.prefixes[j].inverse();  // r_1..r_j
        const Root& g = rs.simple_root(word.gammas[j]);
        CHECK(word.taus[j].from == u(g.from));
        CHECK(word.taus[j].to == u(g.to));
    }
    // All taus distinct and equal to the predicted set.
    CHECK(tau_set(word).size() == static_cast<size_t>(word.length()));
    if (birkhoff)
        CHECK(tau_set(word) == non_inverted(rs, word.target));
    else
        CHECK(tau_set(word) == inverted(rs, word.target));
    // Prefix reflections multiply out to the recorded data.
    WeylElement acc = WeylElement::identity(rs.n());
    for (int j = 0; j < word.length(); ++j) {
        acc = WeylElement::simple_reflection(rs.n(), word.gammas[j]) * acc;
        CHECK(word.prefixes[j + 1] == acc);
    }
}

}  // namespace

TEST_SUITE("root_system") {

TEST_CASE("weyl element basics") {
    const auto w = WeylElement::from_one_line({1, 2, 0});
    CHECK(w.length() == 2);
    CHECK((w * w.inverse()).is_identity());
    const auto s0 = WeylElement::simple_reflection(3, 0);
    const auto s1 = WeylElement::simple_reflection(3, 1);
    CHECK((s0 * s1) != (s1 * s0));
    CHECK((s0 * s0).is_identity());
    CHECK((s0 * s1 * s0) == (s1 * s0 * s1));  // braid relation in S3
    CHECK_THROWS_AS(WeylElement::from_one_line({0, 0, 1}), InvalidInput);
}

TEST_CASE("A1 root system") {
    const auto rs = build_root_system(1);
    CHECK(rs.num_positive() == 1);
    CHECK(rs.positive_roots[0].height == 1);
    CHECK(rs.positive_roots[0].kind == RootKind::Untyped);
}

TEST_CASE("A2 heights and deterministic order") {
    const auto rs = build_root_system(2);
    REQUIRE(rs.num_positive() == 3);
    // Order alpha1, alpha2, alpha1+alpha2 with heights 1, 1, 2.
    CHECK(rs.positive_roots[0].coeffs == std::vector<int>{1, 0});
    CHECK(rs.positive_roots[1].coeffs == std::vector<int>{0, 1});
    CHECK(rs.positive_roots[2].coeffs == std::vector<int>{1, 1});
    CHECK(rs.positive_roots[0].height == 1);
    CHECK(rs.positive_roots[1].height == 1);
    CHECK(rs.positive_roots[2].height == 2);
    CHECK(rs.delta_pairings == std::vector<int>{1, 1, 2});
}

TEST_CASE("signature typing matches the block-membership oracle") {
    const auto rs = build_root_system(2, std::pair{2, 1});
    CHECK(rs.positive_roots[0].kind == RootKind::Compact);     // alpha1
    CHECK(rs.positive_roots[1].kind == RootKind::Noncompact);  // alpha2
    CHECK(rs.positive_roots[2].kind == RootKind::Noncompact);  // alpha1+alpha2
    for (int rank = 1; rank <= 3; ++rank) {
        for (int p = 1; p <= rank; ++p) {
            const auto rsx = build_root_system(rank, std::pair{p, rank + 1 - p});
            int noncompact = 0;
            for (const Root& rt : rsx.positive_roots) {
                CHECK(rt.kind == typing_oracle(rt.from, rt.to, p));
                if (rt.kind == RootKind::Noncompact) ++noncompact;
            }
            CHECK(noncompact == p * (rank + 1 - p));
            // Exactly one simple root is noncompact, and a positive root is
            // noncompact iff its coefficient on that simple root is 1.
            int noncompact_simple = -1;
            for (int i = 0; i < rank; ++i)
                if (rsx.simple_root(i).kind == RootKind::Noncompact) {
                    CHECK(noncompact_simple == -1);
                    noncompact_simple = i;
                }
            REQUIRE(noncompact_simple >= 0);
            for (const Root& rt : rsx.positive_roots)
                CHECK((rt.kind == RootKind::Noncompact) == (rt.coeffs[noncompact_simple] == 1));
        }
    }
}

TEST_CASE("invalid configuration") {
    CHECK_THROWS_AS(build_root_system(0), ConfigurationError);
    CHECK_THROWS_AS(build_root_system(2, std::pair{3, 1}), ConfigurationError);
    CHECK_THROWS_AS(build_root_system(2, std::pair{3, 0}), ConfigurationError);
}

TEST_CASE("reduced word for identity in A2 is the lexicographic enumeration") {
    const auto rs = build_root_system(2);
    const auto word = reduced_word_for(rs, WeylElement::identity(3));
    REQUIRE(word.length() == 3);
    CHECK(word.taus[0].from == 0);
    CHECK(word.taus[0].to == 1);  // lambda1-lambda2
    CHECK(word.taus[1].from == 0);
    CHECK(word.taus[1].to == 2);  // lambda1-lambda3
    CHECK(word.taus[2].from == 1);
    CHECK(word.taus[2].to == 2);  // lambda2-lambda3
    check_word_invariants(rs, word, true);
}

TEST_CASE("reduced word for s1 in A2") {
    const auto rs = build_root_system(2);
    const auto s1 = WeylElement::simple_reflection(3, 0);
    const auto word = reduced_word_for(rs, s1);
    REQUIRE(word.length() == 2);
    CHECK(word.gammas == std::vector<int>{1, 0});  // (alpha2, alpha1)
    CHECK(word.taus[0].coeffs == std::vector<int>{0, 1});
    CHECK(word.taus[1].coeffs == std::vector<int>{1, 1});
    check_word_invariants(rs, word, true);
}

TEST_CASE("reduced word for the longest element is empty") {
    const auto rs = build_root_system(1);
    const auto word = reduced_word_for(rs, WeylElement::simple_reflection(2, 0));
    CHECK(word.length() == 0);
    CHECK(word.prefixes.size() == 1);
}

TEST_CASE("bruhat word examples") {
    const auto rs = build_root_system(2);
    const auto w0 = WeylElement::from_one_line({2, 1, 0});
    const auto full = bruhat_word_for(rs, w0);
    REQUIRE(full.length() == 3);
    CHECK(tau_set(full).size() == 3);
    CHECK(tau_set(full) == inverted(rs, w0));
    CHECK(full.gammas == std::vector<int>{0, 1, 0});  // lexicographic sequence

    CHECK(bruhat_word_for(rs, WeylElement::identity(3)).length() == 0);

    const auto single = bruhat_word_for(rs, WeylElement::simple_reflection(3, 0));
    REQUIRE(single.length() == 1);
    CHECK(single.gammas == std::vector<int>{0});
}

TEST_CASE("delta identity frozen values for the A2 lexicographic word") {
    const auto rs = build_root_system(2);
    const auto word = reduced_word_for(rs, WeylElement::identity(3));
    const auto pairs = verify_delta_identity(word);
    REQUIRE(pairs.size() == 3);
    CHECK(pairs[0] == std::pair<long, long>{0, 0});
    CHECK(pairs[1] == std::pair<long, long>{1, 1});
    CHECK(pairs[2] == std::pair<long, long>{0, 0});  // (-1) + (+1)
}

TEST_CASE("delta identity over every word of every element, ranks 1..3") {
    for (int rank = 1; rank <= 3; ++rank) {
        const auto rs = build_root_system(rank);
        for (const auto& w : all_weyl_elements(rank)) {
            for (const auto& word : all_reduced_words(rs, w)) {
                check_word_invariants(rs, word, true);
                for (const auto& [lhs, rhs] : verify_delta_identity(word)) CHECK(lhs == rhs);
            }
            for (const auto& word : all_bruhat_words(rs, w)) {
                check_word_invariants(rs, word, false);
                for (const auto& [lhs, rhs] : verify_delta_identity(word)) CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("betweenness: tau_i + tau_j = tau_m forces i < m < j or j < m < i") {
    for (int rank = 1; rank <= 3; ++rank) {
        const auto rs = build_root_system(rank);
        for (const auto& w : all_weyl_elements(rank)) {
            for (const auto& word : all_reduced_words(rs, w)) {
                const int n = word.length();
                for (int i = 0; i < n; ++i) {
                    for (int j = 0; j < n; ++j) {
                        if (i == j) continue;
                        // Sum is a root iff the position pairs chain.
                        const Root &a = word.taus[i], &b = word.taus[j];
                        int from = -1, to = -1;
                        if (a.to == b.from) {
                            from = a.from;
                            to = b.to;
                        } else if (b.to == a.from) {
                            from = b.from;
                            to = a.to;
                        } else {
                            continue;
                        }
                        for (int m = 0; m < n; ++m) {
                            if (word.taus[m].from == from && word.taus[m].to == to) {
                                CHECK(((i < m && m < j) || (j < m && m < i)));
                            }
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("randomized admissible orders still satisfy the word invariants") {
    std::mt19937_64 rng(12345);
    for (int rank = 2; rank <= 3; ++rank) {
        const auto rs = build_root_system(rank);
        const auto elements = all_weyl_elements(rank);
        for (int rep = 0; rep < 50; ++rep) {
            const auto& w = elements[rng() % elements.size()];
            auto chooser = [&rng](const std::vector<int>& adm) {
                return adm[rng() % adm.size()];
            };
            const auto word = reduced_word_for(rs, w, chooser);
            check_word_invariants(rs, word, true);
            for (const auto& [lhs, rhs] : verify_delta_identity(word)) CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("W(K) membership") {
    const auto rs21 = build_root_system(2, std::pair{2, 1});
    CHECK(is_in_wk(rs21, WeylElement::simple_reflection(3, 0)));
    CHECK_FALSE(is_in_wk(rs21, WeylElement::simple_reflection(3, 1)));

    const auto rs11 = build_root_system(1, std::pair{1, 1});
    int in_wk = 0;
    for (const auto& w : all_weyl_elements(1))
        if (is_in_wk(rs11, w)) ++in_wk;
    CHECK(in_wk == 1);

    CHECK_THROWS_AS(is_in_wk(build_root_system(2), WeylElement::identity(3)), ConfigurationError);
}

}  // TEST_SUITE
