#include "rsfactor/json_io.hpp"

#include <algorithm>
#include <string>

namespace rsfactor {

void require_keys(const Json& j, std::initializer_list<const char*> allowed,
                  std::initializer_list<const char*> required) {
    if (!j.is_object()) throw ConfigurationError("expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* a) { return key == a; }) == allowed.end())
            throw ConfigurationError("unknown field '" + key + "'");
    }
    for (const char* req : required) {
        if (!j.contains(req)) throw ConfigurationError(std::string("missing field '") + req + "'");
    }
}

std::string tag_to_string(GroupTag tag) {
    switch (tag) {
        case GroupTag::SL: return "sl";
        case GroupTag::SU: return "su";
        case GroupTag::SUpq: return "supq";
        case GroupTag::Torus: return "torus";
    }
    return "sl";
}

GroupTag tag_from_string(const std::string& s) {
    if (s == "sl") return GroupTag::SL;
    if (s == "su") return GroupTag::SU;
    if (s == "supq") return GroupTag::SUpq;
    if (s == "torus") return GroupTag::Torus;
    throw ConfigurationError("unknown group tag '" + s + "'");
}

namespace {

std::optional<std::pair<int, int>> signature_from_json(const Json& j) {
    if (!j.contains("signature") || j["signature"].is_null()) return std::nullopt;
    const auto& sig = j["signature"];
    if (!sig.is_array() || sig.size() != 2)
        throw ConfigurationError("signature must be a pair [p, q]");
    return std::pair{sig[0].get<int>(), sig[1].get<int>()};
}

}  // namespace

Json matrix_to_json(const GroupElement& g) {
    Json j;
    j["n"] = g.config.n;
    j["group"] = tag_to_string(g.tag);
    if (g.config.signature)
        j["signature"] = {g.config.signature->first, g.config.signature->second};
    Json rows = Json::array();
    for (int r = 0; r < g.config.n; ++r) {
        Json row = Json::array();
        for (int c = 0; c < g.config.n; ++c)
            row.push_back({g.m(r, c).real(), g.m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j;
}

GroupElement matrix_from_json(const Json& j) {
    require_keys(j, {"n", "group", "signature", "rows"}, {"n", "rows"});
    const int n = j["n"].get<int>();
    if (n < 2) throw ConfigurationError("matrix size must be >= 2");
    const auto sig = signature_from_json(j);
    if (sig && sig->first + sig->second != n)
        throw ConfigurationError("signature does not sum to the matrix size");

    GroupElement g;
    g.config = sig ? RealizationConfig::supq(sig->first, sig->second)
                   : RealizationConfig::sl(n);
    g.tag = j.contains("group") ? tag_from_string(j["group"].get<std::string>()) : GroupTag::SL;
    if (g.tag == GroupTag::SUpq && !sig)
        throw ConfigurationError("group tag 'supq' requires a signature");

    const auto& rows = j["rows"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw ConfigurationError("matrix must have n rows");
    g.m = Mat(n, n);
    for (int r = 0; r < n; ++r) {
        const auto& row = rows[r];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ConfigurationError("matrix rows must have n entries");
        for (int c = 0; c < n; ++c) {
            const auto& e = row[c];
            if (!e.is_array() || e.size() != 2)
                throw ConfigurationError("matrix entries are [re, im] pairs");
            g.m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
        }
    }
    return g;
}

Json permutation_to_json(const WeylElement& w) {
    Json out = Json::array();
    for (int i = 0; i < w.degree(); ++i) out.push_back(w(i) + 1);
    return out;
}

WeylElement permutation_from_json(const Json& j) {
    if (!j.is_array() || j.size() < 2)
        throw ConfigurationError("permutation must be a one-line array of length >= 2");
    std::vector<int> img;
    for (const auto& v : j) img.push_back(v.get<int>() - 1);
    try {
        return WeylElement::from_one_line(img);
    } catch (const InvalidInput& e) {
        throw ConfigurationError(e.what());
    }
}

namespace {

const char* kind_name(RootKind kind) {
    switch (kind) {
        case RootKind::Compact: return "compact";
        case RootKind::Noncompact: return "noncompact";
        case RootKind::Untyped: return "untyped";
    }
    return "untyped";
}

Json root_to_json(const Root& rt) {
    Json j;
    j["coeffs"] = rt.coeffs;
    j["from"] = rt.from + 1;
    j["to"] = rt.to + 1;
    j["height"] = rt.height;
    j["type"] = kind_name(rt.kind);
    return j;
}

}  // namespace

Json word_to_json(const ReducedWordData& word) {
    Json j;
    j["target"] = permutation_to_json(word.target);
    if (word.signature) j["signature"] = {word.signature->first, word.signature->second};
    j["length"] = word.length();
    Json gammas = Json::array();
    for (int g : word.gammas) gammas.push_back(g + 1);
    j["gammas"] = std::move(gammas);
    Json taus = Json::array();
    for (const Root& t : word.taus) taus.push_back(root_to_json(t));
    j["taus"] = std::move(taus);
    return j;
}

Json coords_to_json(const RSFCoordinates& coords) {
    Json j;
    j["word"] = permutation_to_json(coords.word.target);
    if (coords.word.signature)
        j["signature"] = {coords.word.signature->first, coords.word.signature->second};
    Json zeta = Json::array();
    for (int k = 0; k < coords.zetas.size(); ++k)
        zeta.push_back({coords.zetas(k).real(), coords.zetas(k).imag()});
    j["zeta"] = std::move(zeta);
    Json torus = Json::array();
    for (int k = 0; k < coords.torus_angles.size(); ++k) torus.push_back(coords.torus_angles(k));
    j["torus"] = std::move(torus);
    return j;
}

RSFCoordinates coords_from_json(const Json& j) {
    require_keys(j, {"word", "signature", "zeta", "torus"}, {"word", "zeta", "torus"});
    const WeylElement target = permutation_from_json(j["word"]);
    const int rank = target.degree() - 1;
    const auto sig = signature_from_json(j);
    const RootSystem rs = build_root_system(rank, sig);
    RSFCoordinates coords;
    coords.word = reduced_word_for(rs, target);

    const auto& zeta = j["zeta"];
    if (!zeta.is_array() || static_cast<int>(zeta.size()) != coords.word.length())
        throw ConfigurationError("zeta must have one [re, im] entry per word letter (" +
                                 std::to_string(coords.word.length()) + " expected)");
    coords.zetas = Eigen::VectorXcd(coords.word.length());
    for (int k = 0; k < coords.word.length(); ++k) {
        const auto& e = zeta[k];
        if (!e.is_array() || e.size() != 2)
            throw ConfigurationError("zeta entries are [re, im] pairs");
        coords.zetas(k) = cplx(e[0].get<double>(), e[1].get<double>());
    }

    const auto& torus = j["torus"];
    if (!torus.is_array() || static_cast<int>(torus.size()) != rank)
        throw ConfigurationError("torus must have rank angles");
    coords.torus_angles = Eigen::VectorXd(rank);
    for (int k = 0; k < rank; ++k) coords.torus_angles(k) = torus[k].get<double>();
    return coords;
}

Json root_system_to_json(const RootSystem& rs) {
    Json j;
    j["rank"] = rs.rank;
    if (rs.signature)
        j["signature"] = {rs.signature->first, rs.signature->second};
    else
        j["signature"] = nullptr;
    Json roots = Json::array();
    for (int k = 0; k < rs.num_positive(); ++k) {
        Json r = root_to_json(rs.positive_roots[k]);
        r["delta_pairing"] = rs.delta_pairings[k];
        roots.push_back(std::move(r));
    }
    j["roots"] = std::move(roots);
    return j;
}

Json moment_report_to_json(const MomentReport& rep) {
    auto est = [](const MomentEstimate& e) {
        Json j;
        j["mean"] = e.mean;
        j["std_error"] = e.std_error;
        return j;
    };
    Json j;
    j["n"] = rep.n;
    j["samples"] = rep.samples;
    j["seed"] = rep.seed;
    j["product_tr2"] = est(rep.product_tr2);
    j["product_g11"] = est(rep.product_g11);
    j["qr_tr2"] = est(rep.qr_tr2);
    j["qr_g11"] = est(rep.qr_g11);
    j["z_scores"] = {{"product_tr2", rep.z_product_tr2}, {"product_g11", rep.z_product_g11},
                     {"qr_tr2", rep.z_qr_tr2},           {"qr_g11", rep.z_qr_g11},
                     {"diff_tr2", rep.z_diff_tr2},       {"diff_g11", rep.z_diff_g11}};
    return j;
}

}  // namespace rsfactor
