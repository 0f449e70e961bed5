#include "gdd/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "gdd/stats.hpp"

namespace gdd {

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

namespace {

void write_pfa(const RunConfig& cfg, std::ostream& os)
{
    const DistParams p = DistParams::from(cfg.scenario);
    os << "detector,eta,pfa\n";
    for (Detector det : cfg.detectors)
        os << to_string(det) << ',' << format_number(*cfg.eta) << ','
           << format_number(theoretical_pfa(det, *cfg.eta, p)) << '\n';
}

void write_threshold(const RunConfig& cfg, const SignalModel& m, const NoiseModel& n, std::ostream& os)
{
    const Scenario& s = cfg.scenario;
    const DistParams p = DistParams::from(s);
    EngineOptions engine{cfg.workers, 1024, cfg.scm};
    const auto null = simulate(s, m, n, 0.0, s.trials_calibration, s.seed, streams::null_calibration, engine);
    os << "detector,pfa_target,eta_analytic,eta_empirical,eta_empirical_low,eta_empirical_high,trials,seed\n";
    for (Detector det : cfg.detectors) {
        std::vector<double> values;
        values.reserve(null.size());
        for (const auto& o : null)
            values.push_back(decision_statistic(o, det));
        const auto est = threshold_from_sample(std::move(values), s.pfa_target, det, s.seed);
        os << to_string(det) << ',' << format_number(s.pfa_target) << ','
           << format_number(theoretical_threshold(det, s.pfa_target, p)) << ',' << format_number(est.eta) << ','
           << format_number(est.ci_low) << ',' << format_number(est.ci_high) << ',' << est.trials << ','
           << s.seed << '\n';
    }
}

void write_pd(const RunConfig& cfg, std::ostream& os)
{
    const Scenario& s = cfg.scenario;
    DistParams p = DistParams::from(s);
    os << "snr_db,detector,pd_theory,eta,pfa_target\n";
    for (Detector det : cfg.detectors) {
        p.rho = 0.0;
        const double eta = theoretical_threshold(det, s.pfa_target, p);
        for (double db : s.snr_grid_db) {
            p.rho = db_to_linear(db);
            os << format_number(db) << ',' << to_string(det) << ',' << format_number(theoretical_pd(det, eta, p))
               << ',' << format_number(eta) << ',' << format_number(s.pfa_target) << '\n';
        }
    }
}

int write_curve(const RunConfig& cfg, const SignalModel& m, const NoiseModel& n, std::ostream& os,
                std::ostream& log)
{
    const Scenario& s = cfg.scenario;
    SweepOptions opts;
    opts.detectors = cfg.detectors;
    opts.threshold_source = cfg.threshold_source;
    opts.engine = {cfg.workers, 1024, cfg.scm};
    const SweepResult r = sweep(s, m, n, opts);

    os << curve_header << '\n';
    int outside = 0;
    for (const auto& pt : r.points) {
        os << format_number(pt.snr_db) << ',' << to_string(pt.detector) << ',' << format_number(pt.pd_theory)
           << ',' << format_number(pt.pd_mc) << ',' << format_number(pt.ci_halfwidth) << ','
           << format_number(pt.eta) << ',' << format_number(s.pfa_target) << ',' << s.seed << '\n';
        if (std::abs(pt.pd_theory - pt.pd_mc) > pt.ci_halfwidth)
            ++outside;
    }
    if (outside)
        log << "warning: " << outside << " of " << r.points.size()
            << " rows have |pd_theory - pd_mc| > ci_halfwidth\n";
    for (const auto& f : r.failures)
        log << "error: " << f << '\n';
    if (!r.failures.empty()) {
        log << "partial output: " << r.failures.size() << " point(s) missing\n";
        return exit_partial;
    }
    return exit_ok;
}

void write_null_dist(const RunConfig& cfg, const SignalModel& m, const NoiseModel& n, std::ostream& os,
                     std::ostream& log)
{
    const Scenario& s = cfg.scenario;
    const DistParams p = DistParams::from(s);
    EngineOptions engine{cfg.workers, 1024, cfg.scm};
    const auto null = simulate(s, m, n, 0.0, cfg.null_trials, s.seed, streams::null_distribution, engine);
    os << "detector,statistic,empirical_cdf,analytic_cdf\n";
    for (Detector det : cfg.detectors) {
        std::vector<double> values;
        values.reserve(null.size());
        for (const auto& o : null)
            values.push_back(decision_statistic(o, det));
        std::sort(values.begin(), values.end());
        const auto total = static_cast<double>(values.size());
        std::vector<double> analytic(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            analytic[i] = 1.0 - theoretical_pfa(det, values[i], p);
            os << to_string(det) << ',' << format_number(values[i]) << ',' << format_number((i + 1) / total) << ','
               << format_number(analytic[i]) << '\n';
        }
        double d = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i)
            d = std::max({d, (i + 1) / total - analytic[i], analytic[i] - i / total});
        const auto count = static_cast<std::int64_t>(values.size());
        log << to_string(det) << ": KS D=" << format_number(d) << " p=" << format_number(ks_pvalue(d, count))
            << " (1% critical " << format_number(ks_critical_value(count, 0.01)) << ")\n";
    }
}

int dispatch(const RunConfig& cfg, std::ostream& os, std::ostream& log)
{
    if (cfg.mode == Mode::validate) {
        const auto checks = run_validation(cfg, log);
        int failed = 0;
        for (const auto& c : checks) {
            os << (c.passed ? "PASS " : "FAIL ") << c.name;
            if (!c.detail.empty())
                os << ": " << c.detail;
            os << '\n';
            failed += c.passed ? 0 : 1;
        }
        os << checks.size() - failed << '/' << checks.size() << " checks passed\n";
        return failed ? exit_check_failed : exit_ok;
    }
    if (cfg.mode == Mode::pfa) {
        write_pfa(cfg, os);
        return exit_ok;
    }
    if (cfg.mode == Mode::pd) {
        write_pd(cfg, os);
        return exit_ok;
    }

    const SignalModel m = default_signal_model(cfg.scenario, cfg.spatial_freq);
    const NoiseModel n = NoiseModel::exponential(cfg.scenario.O, cfg.cov_coeff);
    switch (cfg.mode) {
    case Mode::threshold: write_threshold(cfg, m, n, os); return exit_ok;
    case Mode::curve: return write_curve(cfg, m, n, os, log);
    case Mode::null_dist: write_null_dist(cfg, m, n, os, log); return exit_ok;
    default: return exit_ok;
    }
}

} // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& log)
{
    if (const auto issues = validate_config(cfg); !issues.empty()) {
        log << ConfigError(issues).what() << '\n';
        return exit_config;
    }
    try {
        if (cfg.out.empty())
            return dispatch(cfg, out, log);
        std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
        if (!file) {
            log << "error: cannot open output file '" << cfg.out << "'\n";
            return exit_config;
        }
        const int code = dispatch(cfg, file, log);
        file.flush();
        if (!file) {
            log << "error: failed writing '" << cfg.out << "'\n";
            return exit_numerical;
        }
        return code;
    } catch (const FactorizationError& e) {
        log << "error [matrix-core]: " << e.what() << '\n';
    } catch (const QuadratureError& e) {
        log << "error [analytic]: " << e.what() << '\n';
    } catch (const std::exception& e) {
        log << "error [" << to_string(cfg.mode) << "]: " << e.what() << '\n';
    }
    return exit_numerical;
}

} // namespace gdd
