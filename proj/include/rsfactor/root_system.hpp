#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "rsfactor/errors.hpp"

namespace rsfactor {

enum class RootKind { Untyped, Compact, Noncompact };

// A positive root lambda_from - lambda_to of type A (0-based indices,
// from < to), together with its coefficients over the simple roots.
struct Root {
    int from = 0;
    int to = 0;
    std::vector<int> coeffs;
    int height = 0;
    RootKind kind = RootKind::Untyped;

    bool same_position(const Root& other) const { return from == other.from && to == other.to; }

    // tau(h_beta), the exact integer pairing of a root against a coroot.
    static int pairing(const Root& tau, const Root& beta) {
        int v = 0;
        if (tau.from == beta.from) v += 1;
        if (tau.from == beta.to) v -= 1;
        if (tau.to == beta.from) v -= 1;
        if (tau.to == beta.to) v += 1;
        return v;
    }
};

// Weyl group element of type A_{n-1}, modelled as a permutation of {0..n-1}
// acting on diagonal coordinates: w . lambda_i = lambda_{w(i)}.
class WeylElement {
public:
    WeylElement() = default;
    explicit WeylElement(int n) : img_(n) {
        for (int i = 0; i < n; ++i) img_[i] = i;
    }

    static WeylElement identity(int n) { return WeylElement(n); }

    // Simple reflection s_i swapping i and i+1 (0-based simple index).
    static WeylElement simple_reflection(int n, int simple_index) {
        WeylElement w(n);
        std::swap(w.img_[simple_index], w.img_[simple_index + 1]);
        return w;
    }

    static WeylElement from_one_line(std::vector<int> img);

    int degree() const { return static_cast<int>(img_.size()); }
    int operator()(int i) const { return img_[i]; }
    const std::vector<int>& one_line() const { return img_; }

    // (a*b)(i) = a(b(i)): b acts first.
    WeylElement operator*(const WeylElement& rhs) const {
        WeylElement out(degree());
        for (int i = 0; i < degree(); ++i) out.img_[i] = img_[rhs.img_[i]];
        return out;
    }

    WeylElement inverse() const {
        WeylElement out(degree());
        for (int i = 0; i < degree(); ++i) out.img_[img_[i]] = i;
        return out;
    }

    int length() const {  // inversion count
        int c = 0;
        for (int i = 0; i < degree(); ++i)
            for (int j = i + 1; j < degree(); ++j)
                if (img_[i] > img_[j]) ++c;
        return c;
    }

    bool is_identity() const {
        for (int i = 0; i < degree(); ++i)
            if (img_[i] != i) return false;
        return true;
    }

    bool operator==(const WeylElement& rhs) const { return img_ == rhs.img_; }
    bool operator!=(const WeylElement& rhs) const { return img_ != rhs.img_; }

private:
    std::vector<int> img_;
};

// Exact integer root data of A_rank, with optional compact/noncompact typing
// from a signature (p,q), p+q = rank+1.
struct RootSystem {
    int rank = 0;
    std::optional<std::pair<int, int>> signature;
    std::vector<Root> positive_roots;   // fixed deterministic order
    std::vector<int> simple_positions;  // positive_roots index of each simple root
    std::vector<int> delta_pairings;    // delta(h_tau) per positive root (= height)

    int n() const { return rank + 1; }
    int num_positive() const { return static_cast<int>(positive_roots.size()); }
    const Root& simple_root(int i) const { return positive_roots[simple_positions[i]]; }
    // Index of the positive root lambda_from - lambda_to; -1 if absent.
    int index_of(int from, int to) const;
    const Root& root_at(int from, int to) const;
};

RootSystem build_root_system(int rank, std::optional<std::pair<int, int>> signature = std::nullopt);

// A Weyl element together with a word gamma_1..gamma_n of simple roots, the
// associated positive roots tau_j = r_1..r_{j-1} . gamma_j, and the prefix
// reflections w'_j = r_j..r_1.
struct ReducedWordData {
    int rank = 0;
    std::optional<std::pair<int, int>> signature;
    WeylElement target;
    std::vector<int> gammas;            // 0-based simple-root indices
    std::vector<Root> taus;             // typed against the generating root system
    std::vector<WeylElement> prefixes;  // prefixes[j] = r_j..r_1, j = 0..n

    int length() const { return static_cast<int>(gammas.size()); }
    int n() const { return rank + 1; }
};

// Chooser for the next admissible simple-root index; the default picks the
// smallest, which fixes one deterministic word per Weyl element.
using GammaChooser = std::function<int(const std::vector<int>&)>;

// Word enumerating the positive roots *not* inverted by w: after the word,
// w has been completed to the longest element.  Length = l(w0) - l(w).
ReducedWordData reduced_word_for(const RootSystem& rs, const WeylElement& w,
                                 const GammaChooser& choose = {});

// Minimal factorization of w itself; the taus are the inversions of w.
ReducedWordData bruhat_word_for(const RootSystem& rs, const WeylElement& w,
                                const GammaChooser& choose = {});

// For each position m (1-based) returns the pair
//   (delta(h_{tau_m}) - 1, sum_{k<m} tau_k(h_{tau_m}))
// computed in exact integers; the two entries agree for every valid word.
std::vector<std::pair<long, long>> verify_delta_identity(const ReducedWordData& word);

// True iff w preserves the blocks {0..p-1} and {p..n-1}.
bool is_in_wk(const RootSystem& rs, const WeylElement& w);

std::vector<WeylElement> all_weyl_elements(int rank);

// Every word obtainable from the respective algorithm (all admissible
// gamma choices); used for exhaustive identity checks at small rank.
std::vector<ReducedWordData> all_reduced_words(const RootSystem& rs, const WeylElement& w);
std::vector<ReducedWordData> all_bruhat_words(const RootSystem& rs, const WeylElement& w);

}  // namespace rsfactor
