#include "rsfactor/root_system.hpp"

#include <algorithm>
#include <numeric>

namespace rsfactor {

WeylElement WeylElement::from_one_line(std::vector<int> img) {
    const int n = static_cast<int>(img.size());
    std::vector<char> seen(n, 0);
    for (int v : img) {
        if (v < 0 || v >= n || seen[v]) throw InvalidInput("not a permutation in one-line notation");
        seen[v] = 1;
    }
    WeylElement w(n);
    w.img_ = std::move(img);
    return w;
}

int RootSystem::index_of(int from, int to) const {
    for (int k = 0; k < num_positive(); ++k)
        if (positive_roots[k].from == from && positive_roots[k].to == to) return k;
    return -1;
}

const Root& RootSystem::root_at(int from, int to) const {
    const int k = index_of(from, to);
    if (k < 0) throw InvalidInput("not a positive root");
    return positive_roots[k];
}

namespace {

RootKind classify(int from, int to, const std::optional<std::pair<int, int>>& signature) {
    if (!signature) return RootKind::Untyped;
    const int p = signature->first;
    const bool crosses = from < p && to >= p;
    return crosses ? RootKind::Noncompact : RootKind::Compact;
}

// Ascending colexicographic order on the coefficient vectors, i.e. compare
// the last differing coefficient.  Lists the simple roots in index order,
// interleaved with the composites as soon as all their letters appeared.
bool colex_less(const Root& a, const Root& b) {
    const int r = static_cast<int>(a.coeffs.size());
    for (int k = r - 1; k >= 0; --k)
        if (a.coeffs[k] != b.coeffs[k]) return a.coeffs[k] < b.coeffs[k];
    return false;
}

}  // namespace

RootSystem build_root_system(int rank, std::optional<std::pair<int, int>> signature) {
    if (rank < 1) throw ConfigurationError("rank must be >= 1");
    if (signature) {
        const auto [p, q] = *signature;
        if (p < 1 || q < 1 || p + q != rank + 1)
            throw ConfigurationError("signature (p,q) requires p,q >= 1 and p+q = rank+1");
    }

    RootSystem rs;
    rs.rank = rank;
    rs.signature = signature;
    for (int i = 0; i <= rank; ++i) {
        for (int j = i + 1; j <= rank; ++j) {
            Root rt;
            rt.from = i;
            rt.to = j;
            rt.coeffs.assign(rank, 0);
            for (int k = i; k < j; ++k) rt.coeffs[k] = 1;
            rt.height = j - i;
            rt.kind = classify(i, j, signature);
            rs.positive_roots.push_back(std::move(rt));
        }
    }
    std::sort(rs.positive_roots.begin(), rs.positive_roots.end(), colex_less);

    rs.simple_positions.assign(rank, -1);
    rs.delta_pairings.clear();
    for (int k = 0; k < rs.num_positive(); ++k) {
        const Root& rt = rs.positive_roots[k];
        if (rt.height == 1) rs.simple_positions[rt.from] = k;
        // delta(h_tau) = height(tau) in the simply laced case.
        rs.delta_pairings.push_back(rt.height);
    }
    return rs;
}

namespace {

// Incremental state of the two word algorithms.  `want_ascent` selects the
// admissibility condition: v.gamma > 0 (completion of w towards the longest
// element, enumerating the non-inverted roots) versus v.gamma < 0 (descent
// of w to the identity, enumerating its inversions).
class WordBuilder {
public:
    WordBuilder(const RootSystem& rs, const WeylElement& w, bool want_ascent)
        : rs_(rs), want_ascent_(want_ascent), v_(w), u_(WeylElement::identity(rs.n())) {
        if (w.degree() != rs.n()) throw InvalidInput("Weyl element degree does not match root system");
        word_.rank = rs.rank;
        word_.signature = rs.signature;
        word_.target = w;
        word_.prefixes.push_back(WeylElement::identity(rs.n()));
    }

    std::vector<int> admissible() const {
        std::vector<int> out;
        for (int c = 0; c < rs_.rank; ++c) {
            const bool ascent = v_(c) < v_(c + 1);  // v . alpha_c > 0
            if (ascent == want_ascent_) out.push_back(c);
        }
        return out;
    }

    void step(int c) {
        // tau_j = r_1..r_{j-1} . gamma_j, always a positive root here.
        const int a = u_(c), b = u_(c + 1);
        if (a > b) throw InvariantViolation("word algorithm produced a negative tau");
        word_.taus.push_back(rs_.root_at(a, b));
        word_.gammas.push_back(c);

        const WeylElement r = WeylElement::simple_reflection(rs_.n(), c);
        v_ = v_ * r;
        u_ = u_ * r;
        word_.prefixes.push_back(r * word_.prefixes.back());
    }

    ReducedWordData finish() const {
        const int expected =
            want_ascent_ ? rs_.num_positive() - word_.target.length() : word_.target.length();
        if (word_.length() != expected) throw InvariantViolation("word has unexpected length");
        return word_;
    }

private:
    const RootSystem& rs_;
    bool want_ascent_;
    WeylElement v_;  // w * r_1 * .. * r_j
    WeylElement u_;  // r_1 * .. * r_j
    ReducedWordData word_;
};

ReducedWordData run_word_algorithm(const RootSystem& rs, const WeylElement& w, bool want_ascent,
                                   const GammaChooser& choose) {
    WordBuilder b(rs, w, want_ascent);
    for (;;) {
        const std::vector<int> adm = b.admissible();
        if (adm.empty()) break;
        b.step(choose ? choose(adm) : adm.front());
    }
    return b.finish();
}

void enumerate_words(WordBuilder b, std::vector<ReducedWordData>& out) {
    const std::vector<int> adm = b.admissible();
    if (adm.empty()) {
        out.push_back(b.finish());
        return;
    }
    for (int c : adm) {
        WordBuilder branch = b;
        branch.step(c);
        enumerate_words(std::move(branch), out);
    }
}

}  // namespace

ReducedWordData reduced_word_for(const RootSystem& rs, const WeylElement& w,
                                 const GammaChooser& choose) {
    return run_word_algorithm(rs, w, /*want_ascent=*/true, choose);
}

ReducedWordData bruhat_word_for(const RootSystem& rs, const WeylElement& w,
                                const GammaChooser& choose) {
    return run_word_algorithm(rs, w, /*want_ascent=*/false, choose);
}

std::vector<std::pair<long, long>> verify_delta_identity(const ReducedWordData& word) {
    std::vector<std::pair<long, long>> out;
    for (int m = 0; m < word.length(); ++m) {
        const long lhs = word.taus[m].height - 1;
        long rhs = 0;
        for (int k = 0; k < m; ++k) rhs += Root::pairing(word.taus[k], word.taus[m]);
        out.emplace_back(lhs, rhs);
    }
    return out;
}

bool is_in_wk(const RootSystem& rs, const WeylElement& w) {
    if (!rs.signature) throw ConfigurationError("is_in_wk requires a signature");
    const int p = rs.signature->first;
    for (int i = 0; i < rs.n(); ++i) {
        if ((i < p) != (w(i) < p)) return false;
    }
    return true;
}

std::vector<WeylElement> all_weyl_elements(int rank) {
    const int n = rank + 1;
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    std::vector<WeylElement> out;
    do {
        out.push_back(WeylElement::from_one_line(img));
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

std::vector<ReducedWordData> all_reduced_words(const RootSystem& rs, const WeylElement& w) {
    std::vector<ReducedWordData> out;
    enumerate_words(WordBuilder(rs, w, /*want_ascent=*/true), out);
    return out;
}

std::vector<ReducedWordData> all_bruhat_words(const RootSystem& rs, const WeylElement& w) {
    std::vector<ReducedWordData> out;
    enumerate_words(WordBuilder(rs, w, /*want_ascent=*/false), out);
    return out;
}

}  // namespace rsfactor
