#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "gdd/reference.hpp"
#include "gdd/runner.hpp"
#include "gdd/stats.hpp"

namespace gdd {

namespace {

// Random inputs for the algebraic checks; drawn from a dedicated stream.
struct Sampler {
    Rng rng;

    ComplexMatrix gaussian(Index rows, Index cols)
    {
        return sample_colored_gaussian(ComplexMatrix::Identity(rows, rows), cols, rng);
    }

    // Hermitian PD with eigenvalues log-spaced over [1/cond, 1].
    ComplexMatrix hermitian_pd(Index n, double cond)
    {
        Eigen::HouseholderQR<ComplexMatrix> qr(gaussian(n, n));
        const ComplexMatrix u = qr.householderQ();
        Eigen::VectorXd lambda(n);
        for (Index i = 0; i < n; ++i)
            lambda(i) = std::pow(cond, -static_cast<double>(i) / std::max<Index>(1, n - 1));
        ComplexMatrix m = u * lambda.asDiagonal() * u.adjoint();
        return 0.5 * (m + m.adjoint());
    }

    SignalModel signal_model(Index o, Index p, Index q)
    {
        return SignalModel(gaussian(o, 1).col(0), gaussian(q, p), gaussian(q, 1).col(0));
    }
};

double rel_diff(double a, double b)
{
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

std::string fmt(double v)
{
    return format_number(v);
}

class Suite {
public:
    Suite(std::ostream& log) : log_(log) {}

    void check(const std::string& name, const std::function<std::pair<bool, std::string>()>& body)
    {
        const auto t0 = std::chrono::steady_clock::now();
        CheckResult r{name, false, {}};
        try {
            auto [ok, detail] = body();
            r.passed = ok;
            r.detail = std::move(detail);
        } catch (const std::exception& e) {
            r.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        log_ << "  " << name << " (" << fmt(secs) << " s)\n";
        results_.push_back(std::move(r));
    }

    std::vector<CheckResult> take() { return std::move(results_); }

private:
    std::ostream& log_;
    std::vector<CheckResult> results_;
};

} // namespace

std::vector<CheckResult> run_validation(const RunConfig& cfg, std::ostream& log)
{
    const Scenario& s = cfg.scenario;
    const DistParams dist = DistParams::from(s);
    const SignalModel model = default_signal_model(s, cfg.spatial_freq);
    const NoiseModel noise = NoiseModel::exponential(s.O, cfg.cov_coeff);
    const EngineOptions engine{cfg.workers, 1024, ScmMode::augmented};
    Sampler rnd{make_stream(s.seed, 0xa11ce)};
    Suite suite(log);
    log << "running validation checks\n";

    // model
    suite.check("model.snr_round_trip", [&] {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const SignalModel m = rnd.signal_model(s.O, s.P, s.Q);
            const NoiseModel n(rnd.hermitian_pd(s.O, 1e3));
            const double rho = std::pow(10.0, std::uniform_real_distribution<double>(-3.0, 6.0)(rnd.rng));
            worst = std::max(worst, rel_diff(snr_of_theta(snr_to_theta(rho, m, n), m, n), rho));
        }
        return std::pair{worst <= 1e-12, "max relative error " + fmt(worst)};
    });
    suite.check("model.default_signal_model", [&] {
        double worst = 0.0;
        for (int o = 2; o <= 16; ++o)
            for (int p = 1; p <= 8; ++p)
                for (int q = 1; q <= p; ++q) {
                    Scenario t = s;
                    t.O = o;
                    t.P = p;
                    t.Q = q;
                    t.L = std::max({o + q - p, o + 1 - p, 0});
                    const SignalModel m = default_signal_model(t, cfg.spatial_freq);
                    const ComplexMatrix& c = m.row_basis();
                    worst = std::max(worst, max_abs(c * c.adjoint() - ComplexMatrix::Identity(q, q)));
                    worst = std::max(worst, (m.steering().cwiseAbs().array() - 1.0).abs().maxCoeff());
                }
        return std::pair{worst <= 1e-12, "max deviation " + fmt(worst)};
    });
    suite.check("model.noise_factor", [&] {
        double worst = 0.0;
        for (int o = 1; o <= 64; ++o) {
            const NoiseModel n = NoiseModel::exponential(o, cfg.cov_coeff);
            worst = std::max(worst, max_abs(n.factor() * n.factor().adjoint() - n.covariance()));
        }
        return std::pair{worst <= 1e-12, "max |GGᴴ - R| " + fmt(worst)};
    });

    // matrix-core
    suite.check("linalg.hermitian_solve", [&] {
        double worst_residual = 0.0;
        double worst_recovery = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double cond = std::pow(10.0, 1 + i % 8);
            const ComplexMatrix m = rnd.hermitian_pd(s.O, cond);
            const ComplexMatrix x0 = rnd.gaussian(s.O, 3);
            const ComplexMatrix b = m * x0;
            const ComplexMatrix x = hermitian_solve(m, b);
            worst_residual = std::max(worst_residual, max_abs(m * x - b) / max_abs(b));
                            // rounding of B alone perturbs X by ~cond·eps, so recovery is bounded where cond·eps ≪ 1e-9
            if (cond <= 1e6)
                worst_recovery = std::max(worst_recovery, max_abs(x - x0) / max_abs(x0));
        }
        return std::pair{worst_residual <= 1e-9 && worst_recovery <= 1e-9,
                         "residual " + fmt(worst_residual) + ", recovery (cond<=1e6) " + fmt(worst_recovery)};
    });
    suite.check("linalg.projector_properties", [&] {
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const ComplexMatrix c = rnd.gaussian(s.Q, s.P);
            const Projectors pr = projector(c);
            worst = std::max({worst, max_abs(pr.range * pr.range - pr.range), max_abs(pr.range - pr.range.adjoint()),
                              max_abs(pr.range * pr.complement)});
        }
        return std::pair{worst <= 1e-10, "max deviation " + fmt(worst)};
    });
    suite.check("linalg.row_space_identity", [&] {
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const ComplexMatrix c = rnd.gaussian(s.Q, s.P);
            const ComplexMatrix z = rnd.gaussian(s.O, s.P);
            const ComplexMatrix z_star = z * c.adjoint() * gram_inv_sqrt(c);
            worst = std::max(worst, max_abs(z * projector(c).range * z.adjoint() - z_star * z_star.adjoint()));
        }
        return std::pair{worst <= 1e-10, "max |Z P Zᴴ - Z* Z*ᴴ| " + fmt(worst)};
    });

    // detectors
    const auto h0 = simulate(s, model, noise, 0.0, 10000, s.seed, streams::null_distribution, engine);
    suite.check("detectors.glrgdd_range", [&] {
        const auto h1 = simulate(s, model, noise, db_to_linear(20.0), 10000, s.seed, streams::detection(100.0), engine);
        bool ok = true;
        for (const auto* set : {&h0, &h1})
            for (const auto& o : *set)
                ok = ok && o.t_glrgdd >= 0.0 && o.t_glrgdd < 1.0 &&
                     rel_diff(o.t_glrgdd_prime, o.t_glrgdd / (1.0 - o.t_glrgdd)) <= 1e-9;
        return std::pair{ok, std::string("20000 trials")};
    });
    suite.check("detectors.dual_forms", [&] {
        double worst_g = 0.0;
        double worst_a = 0.0;
        Rng rng = make_stream(s.seed, 0xd0a1);
        for (int i = 0; i < 1000; ++i) {
            const TrialData d = gen_trial(s, model, noise, i % 2 ? db_to_linear(15.0) : 0.0, rng);
            const DetectorOutput out = evaluate(d, model);
            worst_g = std::max(worst_g, rel_diff(reference::glrgdd_original(d, model), out.t_glrgdd_prime));
            worst_a = std::max(worst_a, rel_diff(reference::amgdd_projector_form(d, model, ScmMode::augmented),
                                                 out.t_amgdd));
            if (s.L >= s.O)
                worst_a = std::max(worst_a, rel_diff(reference::amgdd_projector_form(d, model, ScmMode::raw),
                                                     amgdd(d, model, ScmMode::raw)));
        }
        return std::pair{worst_g <= 1e-9 && worst_a <= 1e-9,
                         "original vs reduced GLRGDD " + fmt(worst_g) + ", AMGDD " + fmt(worst_a)};
    });
    suite.check("detectors.scale_invariance", [&] {
        double worst = 0.0;
        Rng rng = make_stream(s.seed, 0x5ca1e);
        for (int i = 0; i < 1000; ++i) {
            TrialData d = gen_trial(s, model, noise, db_to_linear(10.0), rng);
            const double before = glrgdd(d, model);
            const double c = std::uniform_real_distribution<double>(0.01, 100.0)(rng);
            d.Z *= c;
            d.Z_L *= c;
            worst = std::max(worst, rel_diff(glrgdd(d, model), before));
        }
        return std::pair{worst <= 1e-9, "max relative change " + fmt(worst)};
    });
    suite.check("detectors.cfar_two_sample_ks", [&] {
        const NoiseModel white = NoiseModel::identity(s.O);
        const auto other = simulate(s, model, white, 0.0, 10000, s.seed ^ 0xcfa7, streams::null_distribution, engine);
        std::ostringstream detail;
        bool ok = true;
        for (Detector det : {Detector::glrgdd, Detector::amgdd}) {
            std::vector<double> a;
            std::vector<double> b;
            for (const auto& o : h0)
                a.push_back(decision_statistic(o, det));
            for (const auto& o : other)
                b.push_back(decision_statistic(o, det));
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            const double pv = ks_two_sample_pvalue(ks_two_sample_statistic(a, b), a.size(), b.size());
            ok = ok && pv > 0.01;
            detail << to_string(det) << " p=" << fmt(pv) << ' ';
        }
        return std::pair{ok, detail.str()};
    });

    // analytic
    suite.check("analytic.cdf_monotone", [&] {
        bool ok = true;
        for (double nc : {0.0, 1.0, 10.0, 100.0, 1000.0}) {
            double prev = 0.0;
            for (int i = 0; i <= 200; ++i) {
                const double eta = std::pow(10.0, -3.0 + 0.03 * i);
                const double v = cdf_p1(eta, nc, dist);
                ok = ok && v >= prev - 1e-15;
                prev = v;
            }
        }
        for (double eta : {0.1, 1.0, 10.0, 100.0}) {
            double prev = 1.0;
            for (int i = 0; i <= 200; ++i) {
                const double v = cdf_p1(eta, i * 5.0, dist);
                ok = ok && v <= prev + 1e-15;
                prev = v;
            }
        }
        return std::pair{ok, std::string("eta and noncentrality grids")};
    });
    const double eta_g = theoretical_threshold(Detector::glrgdd, s.pfa_target, dist);
    const double eta_a = theoretical_threshold(Detector::amgdd, s.pfa_target, dist);
    suite.check("analytic.pd_monotone_in_rho", [&] {
        bool ok = true;
        for (Detector det : {Detector::glrgdd, Detector::amgdd}) {
            DistParams p = dist;
            double prev = 0.0;
            for (int i = 0; i <= 60; ++i) {
                p.rho = i == 0 ? 0.0 : std::pow(10.0, -2.0 + 0.1 * i);
                const double v = theoretical_pd(det, det == Detector::glrgdd ? eta_g : eta_a, p);
                ok = ok && v >= prev - 1e-12;
                prev = v;
            }
        }
        return std::pair{ok, std::string("rho in [0, 1e4]")};
    });
    suite.check("analytic.pd_at_zero_snr_is_pfa", [&] {
        double worst = 0.0;
        for (double eta : {0.1, 1.0, 5.0, 20.0, 100.0}) {
            worst = std::max(worst, std::abs(pd_glrgdd(eta, dist) - pfa_glrgdd(eta, dist)));
            DistParams p = dist;
            worst = std::max(worst, std::abs(pd_amgdd(eta, p) - pfa_amgdd(eta, p)));
        }
        return std::pair{worst <= 1e-12, "max |pd(0) - pfa| " + fmt(worst)};
    });
    suite.check("analytic.pfa_closed_form_vs_quadrature", [&] {
        double worst = 0.0;
        for (double eta : {0.01, 0.5, 1.0, 3.0, 20.0, 200.0}) {
            const double quad = integrate_unit(
                [&](double beta) { return (1.0 - cdf_p1(eta, 0.0, dist)) * pdf_beta_g(beta, dist); });
            worst = std::max(worst, std::abs(quad - pfa_glrgdd(eta, dist)));
        }
        return std::pair{worst <= 1e-10, "max difference " + fmt(worst)};
    });
    suite.check("analytic.quadrature_order_doubling", [&] {
        double worst = 0.0;
        const QuadratureOptions fixed{96, 0.0, 96, false};
        const QuadratureOptions doubled{192, 0.0, 192, false};
        for (double db : {0.0, 10.0, 20.0, 30.0, 40.0}) {
            DistParams p = dist;
            p.rho = db_to_linear(db);
            worst = std::max(worst, std::abs(pd_glrgdd(eta_g, p, fixed) - pd_glrgdd(eta_g, p, doubled)));
            worst = std::max(worst, std::abs(pd_amgdd(eta_a, p, fixed) - pd_amgdd(eta_a, p, doubled)));
        }
        return std::pair{worst < 1e-9, "max change " + fmt(worst)};
    });
    suite.check("analytic.null_cdf_ks", [&] {
        std::ostringstream detail;
        bool ok = true;
        for (Detector det : {Detector::glrgdd, Detector::amgdd}) {
            std::vector<double> v;
            for (const auto& o : h0)
                v.push_back(decision_statistic(o, det));
            std::sort(v.begin(), v.end());
            const double d = ks_statistic(v, [&](double x) { return 1.0 - theoretical_pfa(det, x, dist); });
            const double crit = ks_critical_value(static_cast<std::int64_t>(v.size()), 0.01);
            ok = ok && d < crit;
            detail << to_string(det) << " D=" << fmt(d) << ' ';
        }
        detail << "crit=" << fmt(ks_critical_value(10000, 0.01));
        return std::pair{ok, detail.str()};
    });

    // montecarlo
    suite.check("montecarlo.worker_count_determinism", [&] {
        EngineOptions one = engine;
        one.workers = 1;
        one.chunk = 257;
        EngineOptions three = one;
        three.workers = 3;
        const auto a = simulate(s, model, noise, 10.0, 2000, s.seed, 77, one);
        const auto b = simulate(s, model, noise, 10.0, 2000, s.seed, 77, three);
        bool same = a.size() == b.size();
        for (std::size_t i = 0; same && i < a.size(); ++i)
            same = a[i].t_glrgdd == b[i].t_glrgdd && a[i].t_amgdd == b[i].t_amgdd;
        return std::pair{same, std::string("2000 trials, 1 vs 3 workers")};
    });
    suite.check("montecarlo.threshold_ci_nesting", [&] {
        std::ostringstream detail;
        bool ok = true;
        const auto big = simulate(s, model, noise, 0.0, 100000, s.seed, streams::null_calibration, engine);
        for (Detector det : {Detector::glrgdd, Detector::amgdd}) {
            std::vector<double> all;
            for (const auto& o : big)
                all.push_back(decision_statistic(o, det));
            const std::vector<double> head(all.begin(), all.begin() + 10000);
            const auto small_est = threshold_from_sample(head, s.pfa_target, det, s.seed);
            const auto big_est = threshold_from_sample(all, s.pfa_target, det, s.seed);
            const bool nested = big_est.ci_high - big_est.ci_low < small_est.ci_high - small_est.ci_low &&
                                big_est.eta >= small_est.ci_low && big_est.eta <= small_est.ci_high;
            ok = ok && nested;
            detail << to_string(det) << " width 1e4=" << fmt(small_est.ci_high - small_est.ci_low)
                   << " 1e5=" << fmt(big_est.ci_high - big_est.ci_low) << ' ';
        }
        return std::pair{ok, detail.str()};
    });

    // cli
    suite.check("cli.curve_theory_within_band", [&] {
        Scenario t = s;
        t.snr_grid_db = {10.0, 18.0, 22.0};
        SweepOptions opts;
        opts.engine = engine;
        const SweepResult r = sweep(t, model, noise, opts);
        bool ok = r.failures.empty() && r.points.size() == 6;
        double worst = 0.0;
        for (const auto& pt : r.points) {
            const double band = binomial_halfwidth(pt.pd_theory, t.trials_pd);
            worst = std::max(worst, std::abs(pt.pd_theory - pt.pd_mc) / band);
            ok = ok && std::abs(pt.pd_theory - pt.pd_mc) <= band;
        }
        return std::pair{ok, "max |theory - mc| / 3σ = " + fmt(worst)};
    });

    return suite.take();
}

} // namespace gdd
