#include "rsfactor/haar.hpp"

#include <cmath>

#include "rsfactor/parallel.hpp"

namespace rsfactor {

namespace {

double sign_term(const DensitySpec& spec, int j, cplx zeta) {
    const double t = 1.0 + spec.signs[j] * std::norm(zeta);
    if (t <= 0.0) throw DomainViolation("noncompact coordinate outside the unit disk");
    return t;
}

// delta = half sum of positive roots evaluated on log(a) for diagonal a.
double delta_of_log(const Eigen::VectorXd& log_diag) {
    const int n = static_cast<int>(log_diag.size());
    double out = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out += 0.5 * (log_diag(i) - log_diag(j));
    return out;
}

struct RealCoords {
    // Flattened view: re/im of each zeta, then the torus angles.
    static Eigen::VectorXd pack(const RSFCoordinates& c, bool with_torus) {
        const int n = c.word.length();
        Eigen::VectorXd v(2 * n + (with_torus ? c.word.rank : 0));
        for (int j = 0; j < n; ++j) {
            v(2 * j) = c.zetas(j).real();
            v(2 * j + 1) = c.zetas(j).imag();
        }
        if (with_torus)
            for (int i = 0; i < c.word.rank; ++i) v(2 * n + i) = c.torus_angles(i);
        return v;
    }

    static RSFCoordinates unpack(const ReducedWordData& word, const Eigen::VectorXd& v,
                                 const Eigen::VectorXd& fixed_torus) {
        RSFCoordinates c;
        c.word = word;
        const int n = word.length();
        c.zetas = Eigen::VectorXcd(n);
        for (int j = 0; j < n; ++j) c.zetas(j) = cplx(v(2 * j), v(2 * j + 1));
        if (v.size() == 2 * n + word.rank) {
            c.torus_angles = v.tail(word.rank);
        } else {
            c.torus_angles = fixed_torus;
        }
        return c;
    }
};

// Central-difference Jacobian with optional angle wrapping per output row.
template <class F>
Eigen::MatrixXd fd_jacobian(const F& f, const Eigen::VectorXd& at, double step,
                            const std::vector<char>& angular_output) {
    const Eigen::VectorXd base = f(at);
    const int rows = static_cast<int>(base.size());
    const int cols = static_cast<int>(at.size());
    Eigen::MatrixXd jac(rows, cols);
    for (int c = 0; c < cols; ++c) {
        Eigen::VectorXd plus = at, minus = at;
        plus(c) += step;
        minus(c) -= step;
        const Eigen::VectorXd fp = f(plus), fm = f(minus);
        for (int r = 0; r < rows; ++r) {
            double diff = fp(r) - fm(r);
            if (angular_output[r]) diff = std::remainder(diff, 2.0 * M_PI);
            jac(r, c) = diff / (2.0 * step);
        }
    }
    return jac;
}

}  // namespace

DensitySpec make_density_spec(const ReducedWordData& word) {
    DensitySpec spec;
    spec.word = word;
    for (const Root& tau : word.taus) {
        spec.exponents.push_back(tau.height);
        spec.signs.push_back(tau.kind == RootKind::Noncompact ? -1 : 1);
    }
    return spec;
}

double density(const DensitySpec& spec, const RSFCoordinates& coords) {
    if (coords.zetas.size() != spec.word.length())
        throw InvalidInput("coordinate vector does not match the density spec");
    double out = 1.0;
    for (int j = 0; j < spec.word.length(); ++j)
        out *= std::pow(sign_term(spec, j, coords.zetas(j)), -(1 + spec.exponents[j]));
    return out;
}

std::pair<double, double> a4delta(const RSFCoordinates& coords) {
    const GroupElement a = a_product(coords);
    const int n = coords.word.n();
    Eigen::VectorXd log_diag(n);
    for (int i = 0; i < n; ++i) log_diag(i) = std::log(a.m(i, i).real());
    const double via_a = std::exp(4.0 * delta_of_log(log_diag));

    const DensitySpec spec = make_density_spec(coords.word);
    double closed = 1.0;
    for (int j = 0; j < coords.word.length(); ++j)
        closed *= std::pow(sign_term(spec, j, coords.zetas(j)), -2.0 * spec.exponents[j]);
    return {via_a, closed};
}

namespace {

// |det| of the zeta -> x map at the given coordinates.
double nilpotent_fd_det(const WordRealization& wr, const RealizationConfig& cfg,
                        const RSFCoordinates& coords, double step, bool richardson) {
    const ReducedWordData& word = wr.word();
    const Mat winv = representative_of(cfg.n, word.target).adjoint();

    auto x_of = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        RSFCoordinates c = RealCoords::unpack(word, v, coords.torus_angles);
        const GroupElement g = rsf_forward(cfg, wr, c);
        const Mat rho = winv * g.m;
        const auto f = birkhoff_factorize(GroupElement{rho, GroupTag::SL, cfg});
        if (!f.w.is_identity()) throw StratumError("translate left the top component");
        const Eigen::VectorXcd x = l_coordinates(f.l.m, wr);
        Eigen::VectorXd out(2 * x.size());
        for (int j = 0; j < x.size(); ++j) {
            out(2 * j) = x(j).real();
            out(2 * j + 1) = x(j).imag();
        }
        return out;
    };

    const Eigen::VectorXd at = RealCoords::pack(coords, /*with_torus=*/false);
    const std::vector<char> angular(2 * word.length(), 0);
    Eigen::MatrixXd jac = fd_jacobian(x_of, at, step, angular);
    if (richardson) {
        const Eigen::MatrixXd half = fd_jacobian(x_of, at, step / 2.0, angular);
        jac = (4.0 * half - jac) / 3.0;
    }
    return std::abs(jac.determinant());
}

}  // namespace

double nilpotent_jacobian_test(const RSFCoordinates& coords, double fd_step) {
    const ReducedWordData& word = coords.word;
    for (int j = 0; j < word.length(); ++j)
        if (word.taus[j].kind == RootKind::Noncompact &&
            std::abs(coords.zetas(j)) + 10.0 * fd_step >= 1.0)
            throw NumericalWarning("coordinates too close to the disk boundary for this step");

    const DensitySpec spec = make_density_spec(word);
    double predicted = 1.0;
    for (int j = 0; j < word.length(); ++j)
        predicted *= std::pow(sign_term(spec, j, coords.zetas(j)), spec.exponents[j] - 1);

    const RealizationConfig cfg{word.n(), word.signature};
    const WordRealization wr(word);
    double det = nilpotent_fd_det(wr, cfg, coords, fd_step, /*richardson=*/false);
    double rel = std::abs(det - predicted) / predicted;
    if (rel > 1e-4) {
        det = nilpotent_fd_det(wr, cfg, coords, fd_step, /*richardson=*/true);
        rel = std::abs(det - predicted) / predicted;
    }
    return rel;
}

double invariance_jacobian_test(const GroupElement& g0, const RSFCoordinates& coords,
                                double fd_step) {
    const ReducedWordData& word = coords.word;
    for (int j = 0; j < word.length(); ++j)
        if (word.taus[j].kind == RootKind::Noncompact &&
            std::abs(coords.zetas(j)) + 10.0 * fd_step >= 1.0)
            throw NumericalWarning("coordinates too close to the disk boundary for this step");

    const RealizationConfig cfg{word.n(), word.signature};
    const WordRealization wr(word);
    const DensitySpec spec = make_density_spec(word);

    auto translate = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        RSFCoordinates c = RealCoords::unpack(word, v, coords.torus_angles);
        const GroupElement g = rsf_forward(cfg, wr, c);
        const GroupElement moved{g0.m * g.m, g.tag, cfg};
        const RSFCoordinates back = rsf_inverse(moved, wr);
        return RealCoords::pack(back, /*with_torus=*/true);
    };

    const Eigen::VectorXd at = RealCoords::pack(coords, /*with_torus=*/true);
    std::vector<char> angular(at.size(), 0);
    for (int i = 0; i < word.rank; ++i) angular[2 * word.length() + i] = 1;

    const Eigen::VectorXd image = translate(at);
    const RSFCoordinates moved = RealCoords::unpack(word, image, coords.torus_angles);

    auto rel_of = [&](const Eigen::MatrixXd& jac) {
        const double lhs = density(spec, coords);
        const double rhs = density(spec, moved) * std::abs(jac.determinant());
        return std::abs(lhs - rhs) / lhs;
    };

    double rel = rel_of(fd_jacobian(translate, at, fd_step, angular));
    if (rel > 1e-4) {
        const Eigen::MatrixXd jac = fd_jacobian(translate, at, fd_step, angular);
        const Eigen::MatrixXd half = fd_jacobian(translate, at, fd_step / 2.0, angular);
        rel = rel_of((4.0 * half - jac) / 3.0);
    }
    return rel;
}

double compact_radial_icdf(int exponent, double u) {
    return std::pow(1.0 - u, -1.0 / exponent) - 1.0;
}

RSFCoordinates sample_compact(const DensitySpec& spec, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    RSFCoordinates c;
    c.word = spec.word;
    c.zetas = Eigen::VectorXcd(spec.word.length());
    for (int j = 0; j < spec.word.length(); ++j) {
        if (spec.signs[j] < 0)
            throw ConfigurationError("sample_compact requires an all-compact word");
        const double s = compact_radial_icdf(spec.exponents[j], unif(rng));
        c.zetas(j) = std::polar(std::sqrt(s), ang(rng));
    }
    c.torus_angles = Eigen::VectorXd(spec.word.rank);
    for (int i = 0; i < spec.word.rank; ++i) c.torus_angles(i) = ang(rng);
    return c;
}

std::pair<RSFCoordinates, double> sample_truncated(const DensitySpec& spec, std::mt19937_64& rng,
                                                   double rmax) {
    if (!(rmax > 0.0 && rmax < 1.0))
        throw ConfigurationError("sample_truncated requires 0 < rmax < 1");
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    RSFCoordinates c;
    c.word = spec.word;
    c.zetas = Eigen::VectorXcd(spec.word.length());
    double weight = 1.0;
    for (int j = 0; j < spec.word.length(); ++j) {
        if (spec.signs[j] < 0) {
            const double r = rmax * std::sqrt(unif(rng));
            c.zetas(j) = std::polar(r, ang(rng));
            // density / (uniform proposal on the truncated disk)
            weight *= std::pow(1.0 - r * r, -(1.0 + spec.exponents[j])) * M_PI * rmax * rmax;
        } else {
            const double s = compact_radial_icdf(spec.exponents[j], unif(rng));
            c.zetas(j) = std::polar(std::sqrt(s), ang(rng));
        }
    }
    c.torus_angles = Eigen::VectorXd(spec.word.rank);
    for (int i = 0; i < spec.word.rank; ++i) c.torus_angles(i) = ang(rng);
    return {std::move(c), weight};
}

namespace {

struct BlockMoments {
    double sum_tr2 = 0.0, sum_tr2_sq = 0.0;
    double sum_g11 = 0.0, sum_g11_sq = 0.0;
};

MomentEstimate reduce_mean(const std::vector<double>& sums, const std::vector<double>& sums_sq,
                           long long count) {
    const double total = pairwise_sum(sums);
    const double total_sq = pairwise_sum(sums_sq);
    const double mean = total / static_cast<double>(count);
    const double var = std::max(0.0, total_sq / static_cast<double>(count) - mean * mean);
    return MomentEstimate{mean, std::sqrt(var / static_cast<double>(count))};
}

}  // namespace

MomentReport haar_moment_compare(int n, long long samples, std::uint64_t seed) {
    if (n < 2) throw ConfigurationError("moment comparison needs n >= 2");
    if (samples < 1) throw ConfigurationError("moment comparison needs at least one sample");
    const RootSystem rs = build_root_system(n - 1);
    const ReducedWordData word = reduced_word_for(rs, WeylElement::identity(n));
    const DensitySpec spec = make_density_spec(word);
    const RealizationConfig cfg = RealizationConfig::su(n);
    const WordRealization wr(word);

    constexpr long long kBlock = 1024;
    const int nblocks = static_cast<int>((samples + kBlock - 1) / kBlock);

    std::vector<BlockMoments> product_blocks(nblocks), qr_blocks(nblocks);
    parallel_blocks(nblocks, [&](int b) {
        const long long lo = b * kBlock;
        const long long hi = std::min(samples, lo + kBlock);
        std::mt19937_64 rng_prod(mix_seed(seed, 2 * b));
        std::mt19937_64 rng_qr(mix_seed(seed, 2 * b + 1));
        BlockMoments pm, qm;
        for (long long s = lo; s < hi; ++s) {
            const RSFCoordinates c = sample_compact(spec, rng_prod);
            const GroupElement g = rsf_forward(cfg, wr, c);
            const double tr2 = std::norm(g.m.trace());
            const double g11 = std::norm(g.m(0, 0));
            pm.sum_tr2 += tr2;
            pm.sum_tr2_sq += tr2 * tr2;
            pm.sum_g11 += g11;
            pm.sum_g11_sq += g11 * g11;

            const GroupElement h = random_element(cfg, GroupTag::SU, rng_qr);
            const double htr2 = std::norm(h.m.trace());
            const double hg11 = std::norm(h.m(0, 0));
            qm.sum_tr2 += htr2;
            qm.sum_tr2_sq += htr2 * htr2;
            qm.sum_g11 += hg11;
            qm.sum_g11_sq += hg11 * hg11;
        }
        product_blocks[b] = pm;
        qr_blocks[b] = qm;
    });

    auto collect = [&](const std::vector<BlockMoments>& blocks, bool tr2) {
        std::vector<double> sums(blocks.size()), sums_sq(blocks.size());
        for (size_t b = 0; b < blocks.size(); ++b) {
            sums[b] = tr2 ? blocks[b].sum_tr2 : blocks[b].sum_g11;
            sums_sq[b] = tr2 ? blocks[b].sum_tr2_sq : blocks[b].sum_g11_sq;
        }
        return reduce_mean(sums, sums_sq, samples);
    };

    MomentReport rep;
    rep.n = n;
    rep.samples = samples;
    rep.seed = seed;
    rep.product_tr2 = collect(product_blocks, true);
    rep.product_g11 = collect(product_blocks, false);
    rep.qr_tr2 = collect(qr_blocks, true);
    rep.qr_g11 = collect(qr_blocks, false);

    const double truth_g11 = 1.0 / static_cast<double>(n);
    rep.z_product_tr2 = (rep.product_tr2.mean - 1.0) / rep.product_tr2.std_error;
    rep.z_qr_tr2 = (rep.qr_tr2.mean - 1.0) / rep.qr_tr2.std_error;
    rep.z_product_g11 = (rep.product_g11.mean - truth_g11) / rep.product_g11.std_error;
    rep.z_qr_g11 = (rep.qr_g11.mean - truth_g11) / rep.qr_g11.std_error;
    rep.z_diff_tr2 = (rep.product_tr2.mean - rep.qr_tr2.mean) /
                     std::hypot(rep.product_tr2.std_error, rep.qr_tr2.std_error);
    rep.z_diff_g11 = (rep.product_g11.mean - rep.qr_g11.mean) /
                     std::hypot(rep.product_g11.std_error, rep.qr_g11.std_error);
    return rep;
}

}  // namespace rsfactor
