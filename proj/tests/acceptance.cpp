// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "binn/active.hpp"
#include "binn/gp.hpp"
#include "binn/model.hpp"
#include "binn/problems.hpp"
#include "fixtures.hpp"

using namespace binn;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

ModelConfig synthetic_config() {
    ModelConfig c;
    c.modes = 1;
    c.prior_variance = 1.0;
    c.noise_variance = problems::kSyntheticNoiseVariance;
    c.sweeps = 1;
    return c;
}

// Inputs are min-max scaled; synthetic x spans about [-1, 1], so a length scale of
// 0.25 in scaled units is 0.5 in raw units.
constexpr double kScaledHalf = 0.25;

Outcome gp_equivalence() {
    const auto train = problems::synthetic_1d(60, 101);
    const auto test = problems::synthetic_1d(200, 102);
    auto c = synthetic_config();
    c.center_placement = CenterPlacement::AtTrainingPoints;
    c.length_scales = {0.5};
    const auto model = fit(c, train);
    const auto pred = predict_batch(model, test.inputs(), false);
    const auto gp = gp_fit_predict(BinnProductKernel{model.bases, c.prior_variance},
                                   Dataset(model.scaler.transform(train.inputs()), train.targets()),
                                   model.scaler.transform(test.inputs()), c.noise_variance);
    const double dm = (pred.means - gp.means).cwiseAbs().maxCoeff();
    const double dv = (pred.variances - gp.variances).cwiseAbs().maxCoeff();
    return {dm <= 1e-8 && dv <= 1e-8, "max |mean diff| " + fmt("%.2e", dm) + ", max |var diff| " + fmt("%.2e", dv)};
}

struct RmsePair {
    double binn = 0.0;
    double gp = 0.0;
};

RmsePair rmse_against_rbf(std::uint64_t seed, const ModelConfig& c) {
    const auto train = problems::synthetic_1d(60, derive_seed(seed, "train"));
    const auto test = problems::synthetic_1d(200, derive_seed(seed, "test"));
    const auto model = fit(c, train);
    const auto pred = predict_batch(model, test.inputs(), false);
    const auto gp = gp_fit_predict(RbfKernel{1.0, 0.5}, train, test.inputs(), c.noise_variance);
    return {rmse(pred.means, test.targets()), rmse(gp.means, test.targets())};
}

Outcome rmse_agreement() {
    auto c = synthetic_config();
    c.center_placement = CenterPlacement::AtTrainingPoints;
    c.length_scales = {kScaledHalf};
    double binn = 0.0, gp = 0.0, per_seed = 0.0, worst = 0.0;
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto r = rmse_against_rbf(s, c);
        binn += r.binn / 5;
        gp += r.gp / 5;
        const double d = std::abs(r.binn - r.gp);
        per_seed += d / 5;
        worst = std::max(worst, d);
    }
    const double diff = std::abs(binn - gp);
    return {diff <= 2e-2, "|mean RMSE_GP - mean RMSE_BINN| " + fmt("%.4f", diff) + " (per-seed mean " +
                              fmt("%.4f", per_seed) + ", worst " + fmt("%.4f", worst) + ")"};
}

Outcome compact_basis() {
    auto c = synthetic_config();
    c.basis_counts = {20};
    c.length_scales = {kScaledHalf};
    double binn = 0.0, gp = 0.0;
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto r = rmse_against_rbf(s, c);
        binn += r.binn;
        gp += r.gp;
    }
    const double ratio = binn / gp;
    return {ratio <= 1.5, "mean RMSE B-INN " + fmt("%.4f", binn / 5) + " vs GP " + fmt("%.4f", gp / 5) +
                              ", ratio " + fmt("%.3f", ratio)};
}

Outcome linear_scaling() {
    auto c = synthetic_config();
    c.basis_counts = {20};
    c.length_scales = {kScaledHalf};
    c.sweeps = 5;
    const auto small = problems::synthetic_1d(100000, 100000);
    const auto large = problems::synthetic_1d(200000, 200000);
    auto once = [&](const Dataset& data) {
        const auto start = std::chrono::steady_clock::now();
        const auto m = fit(c, data);
        const double s = seconds_since(start);
        return m.dims() == 1 ? s : 1e9;
    };
    // interleaved repetitions so that machine-load drift hits both sizes alike
    (void)once(small);
    std::vector<double> ts, tl;
    for (int rep = 0; rep < 5; ++rep) {
        ts.push_back(once(small));
        tl.push_back(once(large));
    }
    std::sort(ts.begin(), ts.end());
    std::sort(tl.begin(), tl.end());
    const double t1 = ts[2];
    const double t2 = tl[2];
    const double ratio = t2 / t1;
    return {ratio <= 2.5, "median fit " + fmt("%.3f", t1) + " s at 1e5, " + fmt("%.3f", t2) + " s at 2e5, ratio " +
                              fmt("%.2f", ratio)};
}

Outcome variance_formula() {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> pick(0, 1);
    int passed = 0;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const std::size_t dims = 2 + static_cast<std::size_t>(pick(rng));
        const std::size_t modes = 1 + static_cast<std::size_t>(pick(rng));
        std::vector<std::size_t> counts(dims);
        for (auto& j : counts) j = 3 + static_cast<std::size_t>(pick(rng));
        const auto model = test::random_model(rng, dims, modes, counts, 0.05);
        Vector x(static_cast<Eigen::Index>(dims));
        for (Eigen::Index d = 0; d < x.size(); ++d) x(d) = std::uniform_real_distribution<double>(0, 1)(rng);
        const auto mc = test::monte_carlo_variance(model, x, 1000000, 7000 + static_cast<std::uint64_t>(i));
        const double z = std::abs(predict_variance(model, x, false) - mc.variance) / mc.variance_std_error;
        worst = std::max(worst, z);
        if (z <= 3.0) ++passed;
    }
    return {passed == 20, std::to_string(passed) + "/20 within 3 standard errors (worst " + fmt("%.2f", worst) + ")"};
}

Outcome poisson_residual() {
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    std::uniform_real_distribution<double> up(0.1, 1.0);
    const double h = 1.0 / 128;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const std::array<double, 3> x{u(rng), u(rng), u(rng)};
        const double p = up(rng);
        double lap = 0.0;
        for (std::size_t d = 0; d < 3; ++d) {
            auto xp = x, xm = x;
            xp[d] += h;
            xm[d] -= h;
            lap += (problems::poisson_solution(xp, p) - 2 * problems::poisson_solution(x, p) +
                    problems::poisson_solution(xm, p)) /
                   (h * h);
        }
        const double f = problems::poisson_forcing(x, p);
        // scale: magnitude of the forcing's terms, so zero crossings of f do not blow up the ratio
        const double scale = p * (1.0 + 0.8 + 1.2);
        worst = std::max(worst, std::abs(-lap - f) / std::max(std::abs(f), scale));
    }
    return {worst <= 1e-3, "max relative residual " + fmt("%.2e", worst)};
}

Outcome active_learning() {
    active::PoissonSource source(8);
    int good = 0;
    std::string detail;
    for (std::uint64_t s = 0; s < 5; ++s) {
        auto c = active::poisson_al_config();
        c.seed = derive_seed(s, "init");
        active::CampaignConfig al;
        al.pool = active::linspace_pool(0.0, 1.0, 40);
        al.init_size = 6;
        al.validation_size = 2;
        al.rounds = 10;
        al.seed = s;
        const auto r = active::run_campaign(source, c, al);
        const auto sum = active::summarize(r.rmse_history);
        const bool halved = sum.final_rmse <= 0.5 * sum.init_rmse;
        const bool late = sum.best_round + 3 > r.rmse_history.size() - 1;
        if (halved && late) ++good;
        detail += fmt(" %.2f", sum.final_rmse / sum.init_rmse) + "@" + std::to_string(sum.best_round);
    }
    return {good >= 3, std::to_string(good) + "/5 seeds halve RMSE with best in last 3 rounds (final/init@best:" +
                           detail + ")"};
}

Outcome argmax_property() {
    active::PoissonSource source(5);
    // Fixed-prior fits let redundant modes collapse to zero mean while keeping their prior
    // variance, which is flat in the parameter and swamps the signal; centering each block
    // prior on the current posterior mean keeps every mode identified.
    auto c = active::poisson_al_config();
    c.sweeps = 10;
    c.noise_variance = 1e-8;
    c.proximal_updates = true;
    int hits = 0;
    for (std::uint64_t t = 0; t < 20; ++t) {
        std::mt19937_64 rng(derive_seed(t, "planted"));
        std::uniform_real_distribution<double> low(0.0, 0.5);
        std::vector<double> labeled;
        Dataset train = Dataset::empty(4);
        for (int k = 0; k < 4; ++k) {
            labeled.push_back(low(rng));
            train = train.concat(source.label(Vector::Constant(1, labeled.back())));
        }
        FitOptions opts;
        opts.scaler = Scaler({0, 0, 0, 0}, {1, 1, 1, 1});
        c.seed = t;
        const auto model = fit(c, train, opts);
        std::vector<Vector> pool;
        for (int rep = 0; rep < 3; ++rep) {
            for (double p : labeled) pool.push_back(Vector::Constant(1, p));
        }
        const auto planted_at = std::uniform_int_distribution<std::size_t>(0, pool.size())(rng);
        const double planted = std::uniform_real_distribution<double>(0.8, 1.0)(rng);
        pool.insert(pool.begin() + static_cast<std::ptrdiff_t>(planted_at), Vector::Constant(1, planted));
        if (active::select_next(model, pool, source.spatial_points()).index == planted_at) ++hits;
    }
    return {hits == 20, std::to_string(hits) + "/20 trials selected the planted candidate"};
}

Outcome heat_convergence() {
    problems::HeatSpec spec;
    spec.power = 150.0;
    spec.conductivity = 2.0;
    const std::vector<std::size_t> sizes{21, 41, 81, 161};
    std::vector<problems::HeatSolution> sols;
    for (auto n : sizes) {
        spec.nx = spec.ny = n;
        sols.push_back(problems::heat_fields(spec));
    }
    // max difference over the coarse grid's nodes and every saved time level
    auto diff = [&](std::size_t a) {
        const auto& coarse = sols[a];
        const auto& fine = sols[a + 1];
        double m = 0.0;
        for (std::size_t s = 0; s < coarse.fields.size(); ++s) {
            for (std::size_t i = 0; i < coarse.nx; ++i) {
                for (std::size_t j = 0; j < coarse.ny; ++j) {
                    const double uc = coarse.fields[s](static_cast<Eigen::Index>(i * coarse.ny + j));
                    const double uf = fine.fields[s](static_cast<Eigen::Index>(2 * i * fine.ny + 2 * j));
                    m = std::max(m, std::abs(uc - uf));
                }
            }
        }
        return m;
    };
    const double e1 = diff(0), e2 = diff(1), e3 = diff(2);
    spec.nx = spec.ny = 41;
    spec.power = 0.0;
    bool zero = true;
    for (const auto& f : problems::heat_fields(spec).fields) zero = zero && f.isZero(0.0);
    const bool pass = e1 / e2 >= 1.5 && e2 / e3 >= 1.5 && zero;
    return {pass, "differences " + fmt("%.3e", e1) + ", " + fmt("%.3e", e2) + ", " + fmt("%.3e", e3) + "; ratios " +
                      fmt("%.2f", e1 / e2) + ", " + fmt("%.2f", e2 / e3) + "; P = 0 field " +
                      (zero ? "exactly zero" : "NONZERO")};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 exact 1D GP equivalence", gp_equivalence},
        {"2 RMSE agreement with RBF GP", rmse_agreement},
        {"3 compact basis robustness", compact_basis},
        {"4 linear scaling", linear_scaling},
        {"5 predictive variance vs Monte Carlo", variance_formula},
        {"6 Poisson analytic residual", poisson_residual},
        {"7 active-learning efficacy", active_learning},
        {"8 acquisition argmax", argmax_property},
        {"9 heat self-convergence", heat_convergence},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = seconds_since(start);
        std::printf("%s criterion %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
