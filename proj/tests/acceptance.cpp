// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "gdd/analytic.hpp"
#include "gdd/montecarlo.hpp"
#include "gdd/reference.hpp"
#include "gdd/stats.hpp"
#include "helpers.hpp"

using namespace gdd;
using gdd::test::fig1;
using gdd::test::rel_diff;

namespace {

// Tolerances and budgets.
constexpr double equivalence_rel_tol = 1e-9;
constexpr double row_space_tol = 1e-10;
constexpr double hand_value_tol = 1e-12;
constexpr double density_norm_tol = 1e-10;
constexpr double mode_slope_tol = 1e-6;
constexpr double ks_alpha = 0.01;
constexpr double sigma_band = 3.0;
constexpr double doubling_tol = 1e-9;
constexpr double budget_equivalence_s = 10.0;
constexpr double budget_null_s = 60.0;
constexpr double budget_pfa_s = 120.0;
constexpr double budget_pd_s = 120.0;

constexpr std::uint64_t seed_equivalence = 0xacce55;
constexpr std::uint64_t seed_null = 0x5eed0003;
constexpr std::uint64_t seed_pfa = 0x5eed0004;
constexpr std::uint64_t seed_pd = 0x5eed0005;
constexpr std::uint64_t seed_cfar_identity = 0x5eed0071;
constexpr std::uint64_t seed_cfar_colored = 0x5eed0072;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct Fig1 {
    Scenario s = fig1();
    SignalModel m = default_signal_model(fig1(), 0.1);
    NoiseModel n = NoiseModel::exponential(12, 0.95);
    DistParams p = DistParams::from(fig1());
};

Outcome formula_equivalence()
{
    Stopwatch clock;
    const Scenario s = fig1();
    Rng rng = make_stream(seed_equivalence, 0);
    double eq3_vs_prime = 0.0, eq3_vs_t = 0.0, reduced = 0.0, amgdd_forms = 0.0, row_space = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const SignalModel m = gdd::test::random_signal_model(s.O, s.P, s.Q, rng);
        const NoiseModel n(gdd::test::hermitian_pd(s.O, 1e3, rng));
        const double rho = std::uniform_real_distribution<double>(0.0, 200.0)(rng);
        const TrialData d = gen_trial(s, m, n, i % 4 == 0 ? 0.0 : rho, rng);
        const DetectorOutput out = evaluate(d, m);

        const double original = reference::glrgdd_original(d, m);
        eq3_vs_prime = std::max(eq3_vs_prime, rel_diff(original, glrgdd_prime(out.t_glrgdd)));
        eq3_vs_t = std::max(eq3_vs_t, rel_diff(original, out.t_glrgdd));
        reduced = std::max(reduced, rel_diff(reference::glrgdd_reduced(d, m), out.t_glrgdd));
        amgdd_forms = std::max(amgdd_forms, rel_diff(reference::amgdd_projector_form(d, m, ScmMode::augmented),
                                                     out.t_amgdd));
        const ComplexMatrix z_star = build_workspace(d, m).Z_star;
        row_space = std::max(row_space, max_abs(d.Z * projector(m.row_basis()).range * d.Z.adjoint() -
                                                z_star * z_star.adjoint()));
    }
    const double elapsed = clock.seconds();
    const bool pass = eq3_vs_prime <= equivalence_rel_tol && reduced <= equivalence_rel_tol &&
                      amgdd_forms <= equivalence_rel_tol && row_space <= row_space_tol &&
                      elapsed < budget_equivalence_s;
    return {pass, "GLRT form vs t' " + fmt(eq3_vs_prime) + " (vs t directly " + fmt(eq3_vs_t) +
                      "), explicit-inverse vs production t " + fmt(reduced) + ", AMGDD projector vs whitened " +
                      fmt(amgdd_forms) + ", |ZPZ^H - Z*Z*^H| " + fmt(row_space) + ", " + fmt(elapsed) + " s"};
}

double argmax(const std::function<double(double)>& f)
{
    double best = 0.0;
    for (int i = 1; i < 1000000; ++i)
        if (f(i / 1e6) > f(best))
            best = i / 1e6;
    return best;
}

Outcome hand_values()
{
    const DistParams p = Fig1().p;
    const double pfa1 = pfa_glrgdd(1.0, p);
    const double h = 1e-6;
    auto slope = [h](const std::function<double(double)>& f, double x) { return (f(x + h) - f(x - h)) / (2 * h); };
    const std::function<double(double)> g = [&](double b) { return pdf_beta_g(b, p); };
    const std::function<double(double)> a = [&](double b) { return pdf_beta_a(b, p); };
    // stated modes 1/3 and 0.25
    const bool mode_g = std::abs(slope(g, 1.0 / 3.0)) <= mode_slope_tol;
    const bool mode_a = std::abs(slope(a, 0.25)) <= mode_slope_tol;
    const double norm_g = integrate_unit(g);
    const double norm_a = integrate_unit(a);
    const bool pass = std::abs(pfa1 - 0.5) <= hand_value_tol && mode_g && mode_a &&
                      std::abs(norm_g - 1.0) <= density_norm_tol && std::abs(norm_a - 1.0) <= density_norm_tol;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "pfa_glrgdd(1) = %.17g, GLRGDD mode %.6f (%s 1/3), AMGDD mode %.6f (%s 0.25), integrals 1%+.2e "
                  "and 1%+.2e",
                  pfa1, argmax(g), mode_g ? "=" : "!=", argmax(a), mode_a ? "=" : "!=", norm_g - 1.0, norm_a - 1.0);
    return {pass, buf};
}

Outcome null_distribution()
{
    Stopwatch clock;
    const Fig1 f;
    const auto outputs = simulate(f.s, f.m, f.n, 0.0, 10000, seed_null, streams::null_distribution);
    std::string detail;
    bool pass = true;
    for (Detector det : {Detector::glrgdd, Detector::amgdd}) {
        std::vector<double> v;
        for (const auto& o : outputs)
            v.push_back(decision_statistic(o, det));
        std::sort(v.begin(), v.end());
        const double d = ks_statistic(v, [&](double x) { return 1.0 - theoretical_pfa(det, x, f.p); });
        const double pv = ks_pvalue(d, static_cast<std::int64_t>(v.size()));
        pass = pass && pv >= ks_alpha;
        detail += std::string(to_string(det)) + " D=" + fmt(d) + " p=" + fmt(pv) + ", ";
    }
    const double elapsed = clock.seconds();
    pass = pass && elapsed < budget_null_s;
    return {pass, detail + "10000 samples, " + fmt(elapsed) + " s"};
}

Outcome pfa_reproduction()
{
    Stopwatch clock;
    const Fig1 f;
    const std::int64_t trials = 100000;
    const double target = 1e-3;
    const double half = sigma_band * std::sqrt(target * (1 - target) / trials);
    const auto outputs = simulate(f.s, f.m, f.n, 0.0, trials, seed_pfa, streams::detection(0.0));
    std::string detail;
    bool pass = true;
    for (Detector det : {Detector::glrgdd, Detector::amgdd}) {
        const double eta = theoretical_threshold(det, target, f.p);
        const auto hits = std::count_if(outputs.begin(), outputs.end(),
                                        [&](const DetectorOutput& o) { return decision_statistic(o, det) > eta; });
        const double pfa = static_cast<double>(hits) / trials;
        pass = pass && std::abs(pfa - target) <= half;
        detail += std::string(to_string(det)) + " eta=" + fmt(eta) + " pfa=" + fmt(pfa) + ", ";
    }
    const double elapsed = clock.seconds();
    pass = pass && elapsed < budget_pfa_s;
    return {pass, detail + "band 1e-3 +/- " + fmt(half) + ", " + fmt(elapsed) + " s"};
}

Outcome pd_reproduction()
{
    Stopwatch clock;
    Fig1 f;
    f.s.snr_grid_db = {10.0, 14.0, 18.0, 22.0};
    f.s.trials_pd = 10000;
    f.s.seed = seed_pd;
    const SweepResult r = sweep(f.s, f.m, f.n);
    bool pass = r.failures.empty() && r.points.size() == 8;
    std::string detail;
    for (const PerfPoint& pt : r.points) {
        const double band = binomial_halfwidth(pt.pd_theory, f.s.trials_pd, sigma_band);
        const bool ok = std::abs(pt.pd_mc - pt.pd_theory) <= band;
        pass = pass && ok;
        detail += fmt(pt.snr_db) + "dB " + std::string(to_string(pt.detector)) + " " + fmt(pt.pd_mc) + "/" +
                  fmt(pt.pd_theory) + (ok ? "" : "(out)") + ", ";
    }
    const double elapsed = clock.seconds();
    pass = pass && elapsed < budget_pd_s;
    return {pass, detail + fmt(elapsed) + " s"};
}

Outcome ordering()
{
    const double target = 1e-3;
    const DistParams p6{12, 6, 3, 11, 0.0};
    const DistParams p9{12, 9, 3, 11, 0.0};
    const double eta6[2] = {theoretical_threshold(Detector::glrgdd, target, p6),
                            theoretical_threshold(Detector::amgdd, target, p6)};
    const double eta9[2] = {theoretical_threshold(Detector::glrgdd, target, p9),
                            theoretical_threshold(Detector::amgdd, target, p9)};
    int points = 0;
    std::string violations;
    auto expect = [&](bool ok, const std::string& what) {
        ++points;
        if (!ok)
            violations += " " + what;
    };
    for (double db = 0.0; db <= 30.0; db += 2.0) {
        DistParams a = p6, b = p9;
        a.rho = b.rho = db_to_linear(db);
        const double g6 = pd_glrgdd(eta6[0], a), a6 = pd_amgdd(eta6[1], a);
        const double g9 = pd_glrgdd(eta9[0], b), a9 = pd_amgdd(eta9[1], b);
        const std::string at = "@" + fmt(db) + "dB";
        expect(g6 >= a6, "P6:G<A" + at + "(" + fmt(g6 - a6) + ")");
        expect(g9 >= a9, "P9:G<A" + at + "(" + fmt(g9 - a9) + ")");
        expect(g9 >= g6, "G:P9<P6" + at);
        expect(a9 >= a6, "A:P9<P6" + at);
    }
    return {violations.empty(), std::to_string(points) + " comparisons on the 0:2:30 dB grid, violations:" +
                                    (violations.empty() ? std::string(" none") : violations)};
}

Outcome cfar()
{
    const Fig1 f;
    const std::int64_t trials = 100000;
    const auto identity = simulate(f.s, f.m, NoiseModel::identity(12), 0.0, trials, seed_cfar_identity,
                                   streams::null_calibration);
    const auto colored = simulate(f.s, f.m, f.n, 0.0, trials, seed_cfar_colored, streams::null_calibration);
    bool pass = true;
    std::string detail;
    for (Detector det : {Detector::glrgdd, Detector::amgdd}) {
        auto pick = [det](const std::vector<DetectorOutput>& o) {
            std::vector<double> v;
            for (const auto& x : o)
                v.push_back(decision_statistic(x, det));
            return v;
        };
        const ThresholdEstimate a = threshold_from_sample(pick(identity), f.s.pfa_target, det, seed_cfar_identity);
        const ThresholdEstimate b = threshold_from_sample(pick(colored), f.s.pfa_target, det, seed_cfar_colored);
        const bool overlap = a.ci_low <= b.ci_high && b.ci_low <= a.ci_high;
        pass = pass && overlap;
        detail += std::string(to_string(det)) + " I:" + fmt(a.eta) + "[" + fmt(a.ci_low) + "," + fmt(a.ci_high) +
                  "] R:" + fmt(b.eta) + "[" + fmt(b.ci_low) + "," + fmt(b.ci_high) + "], ";
    }
    return {pass, detail + std::to_string(trials) + " trials each"};
}

Outcome analytic_robustness()
{
    const DistParams base = Fig1().p;
    const QuadratureOptions lo{96, 0.0, 96, false};
    const QuadratureOptions hi{192, 0.0, 192, false};
    double worst = 0.0;
    int monotone_failures = 0;
    for (Detector det : {Detector::glrgdd, Detector::amgdd}) {
        const double eta = theoretical_threshold(det, 1e-3, base);
        double prev_pd = 0.0;
        for (double db = -10.0; db <= 40.0; db += 1.0) {
            DistParams p = base;
            p.rho = db_to_linear(db);
            const double a = theoretical_pd(det, eta, p, lo);
            worst = std::max(worst, std::abs(a - theoretical_pd(det, eta, p, hi)));
            monotone_failures += a < prev_pd - 1e-12;
            prev_pd = a;
        }
        double prev_pfa = 1.0;
        for (int i = 0; i <= 200; ++i) {
            const double e = std::pow(10.0, -3.0 + 0.03 * i);
            const double a = theoretical_pfa(det, e, base, lo);
            worst = std::max(worst, std::abs(a - theoretical_pfa(det, e, base, hi)));
            monotone_failures += a > prev_pfa + 1e-12;
            prev_pfa = a;
        }
    }
    for (double nc : {0.0, 5.0, 50.0}) {
        double prev = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double v = cdf_p1(std::pow(10.0, -3.0 + 0.03 * i), nc, base);
            monotone_failures += v < prev - 1e-15;
            prev = v;
        }
    }
    return {worst < doubling_tol && monotone_failures == 0,
            "max change on order doubling " + fmt(worst) + ", monotonicity violations " +
                std::to_string(monotone_failures)};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"1 formula-equivalence", formula_equivalence},
        {"2 hand-values", hand_values},
        {"3 null-distribution", null_distribution},
        {"4 pfa-reproduction", pfa_reproduction},
        {"5 pd-reproduction", pd_reproduction},
        {"6 ordering", ordering},
        {"7 cfar", cfar},
        {"8 analytic-robustness", analytic_robustness},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
