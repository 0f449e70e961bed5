#include "gdd/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "gdd/stats.hpp"

namespace gdd {

std::uint64_t streams::detection(double rho) noexcept
{
    return 0x100 + mix64(std::bit_cast<std::uint64_t>(rho));
}

namespace {

unsigned resolve_workers(unsigned requested, std::int64_t chunks)
{
    unsigned w = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::int64_t>(w, std::max<std::int64_t>(chunks, 1)));
}

// Runs body(chunk_index, begin, end) over [0, total) in fixed-size chunks.
template <class Body>
void for_each_chunk(std::int64_t total, const EngineOptions& opts, Body&& body)
{
    const std::int64_t chunk = std::max<std::int64_t>(1, opts.chunk);
    const std::int64_t chunks = (total + chunk - 1) / chunk;
    const unsigned workers = resolve_workers(opts.workers, chunks);

    std::atomic<std::int64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::int64_t c = next.fetch_add(1);
            if (c >= chunks)
                return;
            try {
                body(c, c * chunk, std::min(total, (c + 1) * chunk));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(chunks);
                return;
            }
        }
    };

    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace

TrialData gen_trial(const Scenario& s, const SignalModel& m, const NoiseModel& n, double rho, Rng& rng)
{
    if (m.channels() != s.O || n.channels() != s.O || m.columns() != s.P || m.rank() != s.Q)
        throw std::invalid_argument("gen_trial: model dimensions differ from scenario");
    TrialData d;
    d.Z = n.sample(s.P, rng);
    if (rho > 0.0)
        d.Z += m.signal(snr_to_theta(rho, m, n));
    else if (rho < 0.0)
        throw std::invalid_argument("gen_trial: rho must be >= 0");
    d.Z_L = n.sample(s.L, rng);
    return d;
}

std::vector<DetectorOutput> simulate(const Scenario& s, const SignalModel& m, const NoiseModel& n, double rho,
                                     std::int64_t trials, std::uint64_t seed, std::uint64_t stream,
                                     const EngineOptions& opts)
{
    require_valid(s);
    if (trials < 0)
        throw std::invalid_argument("simulate: negative trial count");
    std::vector<DetectorOutput> out(static_cast<std::size_t>(trials));
    for_each_chunk(trials, opts, [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
        Rng rng = make_stream(seed, stream, static_cast<std::uint64_t>(c));
        for (std::int64_t t = begin; t < end; ++t)
            out[static_cast<std::size_t>(t)] = evaluate(gen_trial(s, m, n, rho, rng), m, opts.scm);
    });
    return out;
}

std::vector<double> null_statistics(const Scenario& s, const SignalModel& m, const NoiseModel& n, Detector det,
                                    std::int64_t trials, std::uint64_t seed, std::uint64_t stream,
                                    const EngineOptions& opts)
{
    const auto outputs = simulate(s, m, n, 0.0, trials, seed, stream, opts);
    std::vector<double> values;
    values.reserve(outputs.size());
    for (const auto& o : outputs)
        values.push_back(decision_statistic(o, det));
    return values;
}

ThresholdEstimate threshold_from_sample(std::vector<double> values, double pfa, Detector det, std::uint64_t seed)
{
    const auto n = static_cast<std::int64_t>(values.size());
    if (n == 0)
        throw std::invalid_argument("threshold_from_sample: empty sample");
    std::sort(values.begin(), values.end());
    const std::int64_t rank = exceedance_rank(n, pfa);
    const auto spread = static_cast<std::int64_t>(std::ceil(3.0 * std::sqrt(n * pfa * (1.0 - pfa))));
    auto at = [&](std::int64_t r) { return values[static_cast<std::size_t>(std::clamp<std::int64_t>(r, 1, n) - 1)]; };

    ThresholdEstimate est;
    est.detector = det;
    est.eta = at(rank);
    est.ci_low = at(rank - spread);
    est.ci_high = at(rank + spread);
    est.trials = n;
    est.seed = seed;
    return est;
}

ThresholdEstimate calibrate_threshold(const Scenario& s, const SignalModel& m, const NoiseModel& n, Detector det,
                                      std::int64_t trials, std::uint64_t seed, const EngineOptions& opts)
{
    require_valid(s);
    if (static_cast<double>(trials) * s.pfa_target < 10.0) {
        std::ostringstream os;
        os << "calibrate_threshold: " << trials << " trials give fewer than 10 expected exceedances at pfa "
           << s.pfa_target;
        throw std::invalid_argument(os.str());
    }
    return threshold_from_sample(null_statistics(s, m, n, det, trials, seed, streams::null_calibration, opts),
                                 s.pfa_target, det, seed);
}

namespace {

McResult count_exceedances(const std::vector<DetectorOutput>& outputs, Detector det, double eta, std::uint64_t seed)
{
    const auto hits = std::count_if(outputs.begin(), outputs.end(),
                                    [&](const DetectorOutput& o) { return decision_statistic(o, det) > eta; });
    McResult r;
    r.detector = det;
    r.eta_used = eta;
    r.trials = static_cast<std::int64_t>(outputs.size());
    r.estimate = r.trials ? static_cast<double>(hits) / r.trials : 0.0;
    r.ci_halfwidth = r.trials ? binomial_halfwidth(r.estimate, r.trials) : 0.0;
    r.seed = seed;
    return r;
}

} // namespace

McResult estimate_pd(const Scenario& s, const SignalModel& m, const NoiseModel& n, Detector det, double eta,
                     double rho, std::int64_t trials, std::uint64_t seed, const EngineOptions& opts)
{
    if (trials < 1)
        throw std::invalid_argument("estimate_pd: trials must be positive");
    return count_exceedances(simulate(s, m, n, rho, trials, seed, streams::detection(rho), opts), det, eta, seed);
}

SweepResult sweep(const Scenario& s, const SignalModel& m, const NoiseModel& n, const SweepOptions& opts)
{
    require_valid(s);
    SweepResult result;
    const DistParams base = DistParams::from(s);

    struct Thresholds {
        double theory = 0.0;
        double mc = 0.0;
        bool ok = false;
    };
    std::vector<Thresholds> eta(opts.detectors.size());
    for (std::size_t i = 0; i < opts.detectors.size(); ++i) {
        try {
            eta[i].theory = theoretical_threshold(opts.detectors[i], s.pfa_target, base, opts.quadrature);
            eta[i].mc = eta[i].theory;
            eta[i].ok = true;
        } catch (const std::exception& e) {
            result.failures.push_back(std::string(to_string(opts.detectors[i])) + ": analytic threshold: " + e.what());
        }
    }
    if (opts.threshold_source == ThresholdSource::empirical) {
        try {
            const auto null = simulate(s, m, n, 0.0, s.trials_calibration, s.seed, streams::null_calibration,
                                       opts.engine);
            for (std::size_t i = 0; i < opts.detectors.size(); ++i) {
                std::vector<double> values;
                values.reserve(null.size());
                for (const auto& o : null)
                    values.push_back(decision_statistic(o, opts.detectors[i]));
                eta[i].mc = threshold_from_sample(std::move(values), s.pfa_target, opts.detectors[i], s.seed).eta;
            }
        } catch (const std::exception& e) {
            for (auto& t : eta)
                t.ok = false;
            result.failures.push_back(std::string("empirical threshold calibration: ") + e.what());
        }
    }

    for (double snr_db : s.snr_grid_db) {
        const double rho = db_to_linear(snr_db);
        std::vector<DetectorOutput> trials;
        try {
            trials = simulate(s, m, n, rho, s.trials_pd, s.seed, streams::detection(rho), opts.engine);
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << "snr " << snr_db << " dB: simulation: " << e.what();
            result.failures.push_back(os.str());
            continue;
        }
        DistParams p = base;
        p.rho = rho;
        for (std::size_t i = 0; i < opts.detectors.size(); ++i) {
            if (!eta[i].ok)
                continue;
            const Detector det = opts.detectors[i];
            try {
                PerfPoint pt;
                pt.snr_db = snr_db;
                pt.detector = det;
                pt.pd_theory = theoretical_pd(det, eta[i].theory, p, opts.quadrature);
                const McResult mc = count_exceedances(trials, det, eta[i].mc, s.seed);
                pt.pd_mc = mc.estimate;
                pt.ci_halfwidth = mc.ci_halfwidth;
                pt.eta = eta[i].mc;
                result.points.push_back(pt);
            } catch (const std::exception& e) {
                std::ostringstream os;
                os << "snr " << snr_db << " dB, " << to_string(det) << ": " << e.what();
                result.failures.push_back(os.str());
            }
        }
    }
    return result;
}

} // namespace gdd
