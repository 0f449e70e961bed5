#include "gdd/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace gdd {

std::string_view to_string(Mode m) noexcept
{
    switch (m) {
    case Mode::pfa: return "pfa";
    case Mode::threshold: return "threshold";
    case Mode::pd: return "pd";
    case Mode::curve: return "curve";
    case Mode::validate: return "validate";
    case Mode::null_dist: return "null-dist";
    }
    return "?";
}

std::optional<Mode> parse_mode(std::string_view text) noexcept
{
    for (Mode m : {Mode::pfa, Mode::threshold, Mode::pd, Mode::curve, Mode::validate, Mode::null_dist})
        if (text == to_string(m))
            return m;
    return std::nullopt;
}

Scenario RunConfig::default_scenario()
{
    Scenario s;
    for (int db = 0; db <= 30; db += 2)
        s.snr_grid_db.push_back(db);
    return s;
}

namespace {

std::string format_issues(const std::vector<ConfigIssue>& issues)
{
    std::ostringstream os;
    os << "configuration error";
    for (const auto& i : issues) {
        os << "\n  ";
        if (i.line > 0)
            os << "line " << i.line << ": ";
        if (!i.key.empty())
            os << "key '" << i.key << "': ";
        os << i.message;
    }
    return os.str();
}

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
std::optional<T> parse_number(std::string_view s)
{
    s = trim(s);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    T value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        return std::nullopt;
    if constexpr (std::is_floating_point_v<T>)
        if (!std::isfinite(value))
            return std::nullopt;
    return value;
}

std::optional<std::vector<double>> parse_grid(std::string_view s)
{
    std::vector<double> grid;
    s = trim(s);
    if (s.empty())
        return grid;
    if (s.find(':') != std::string_view::npos) {
        const auto c1 = s.find(':');
        const auto c2 = s.find(':', c1 + 1);
        if (c2 == std::string_view::npos)
            return std::nullopt;
        const auto start = parse_number<double>(s.substr(0, c1));
        const auto step = parse_number<double>(s.substr(c1 + 1, c2 - c1 - 1));
        const auto stop = parse_number<double>(s.substr(c2 + 1));
        if (!start || !step || !stop || !(*step > 0.0) || *stop < *start)
            return std::nullopt;
        const auto count = static_cast<long>(std::floor((*stop - *start) / *step + 1e-9)) + 1;
        if (count > 100000)
            return std::nullopt;
        for (long i = 0; i < count; ++i)
            grid.push_back(*start + i * *step);
        return grid;
    }
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const auto comma = s.find(',', pos);
        const auto item = s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        const auto v = parse_number<double>(item);
        if (!v)
            return std::nullopt;
        grid.push_back(*v);
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return grid;
}

} // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error(format_issues(issues)), issues_(std::move(issues))
{
}

RunConfig parse_config(std::string_view text)
{
    RunConfig cfg;
    std::vector<ConfigIssue> issues;
    std::set<std::string> seen;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            issues.push_back({line_no, "", "expected 'key = value'"});
            continue;
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) {
            issues.push_back({line_no, "", "missing key"});
            continue;
        }
        if (!seen.insert(key).second) {
            issues.push_back({line_no, key, "duplicate key"});
            continue;
        }
        auto bad = [&](const std::string& why) { issues.push_back({line_no, key, why}); };

        auto set_int = [&](auto& field, long long min) {
            const auto v = parse_number<long long>(value);
            if (!v)
                bad("expected an integer, got '" + std::string(value) + "'");
            else if (*v < min)
                bad("must be >= " + std::to_string(min) + ", got " + std::to_string(*v));
            else
                field = static_cast<std::remove_reference_t<decltype(field)>>(*v);
        };
        auto set_real = [&](double& field) {
            const auto v = parse_number<double>(value);
            if (!v)
                bad("expected a number, got '" + std::string(value) + "'");
            else
                field = *v;
        };

        Scenario& s = cfg.scenario;
        if (key == "O")
            set_int(s.O, 2);
        else if (key == "P")
            set_int(s.P, 1);
        else if (key == "Q")
            set_int(s.Q, 1);
        else if (key == "L")
            set_int(s.L, 0);
        else if (key == "pfa") {
            set_real(s.pfa_target);
            if (!(s.pfa_target > 0.0 && s.pfa_target < 1.0))
                bad("must lie in (0,1)");
        } else if (key == "snr_db") {
            if (auto g = parse_grid(value))
                s.snr_grid_db = std::move(*g);
            else
                bad("expected 'a, b, c' or 'start:step:stop', got '" + std::string(value) + "'");
        } else if (key == "seed") {
            if (auto v = parse_number<std::uint64_t>(value))
                s.seed = *v;
            else
                bad("expected an unsigned 64-bit integer");
        } else if (key == "trials_calibration")
            set_int(s.trials_calibration, 1);
        else if (key == "trials_pd")
            set_int(s.trials_pd, 1);
        else if (key == "null_trials")
            set_int(cfg.null_trials, 1);
        else if (key == "workers")
            set_int(cfg.workers, 0);
        else if (key == "detector") {
            if (value == "glrgdd")
                cfg.detectors = {Detector::glrgdd};
            else if (value == "amgdd")
                cfg.detectors = {Detector::amgdd};
            else if (value == "both")
                cfg.detectors = {Detector::glrgdd, Detector::amgdd};
            else
                bad("expected glrgdd, amgdd or both");
        } else if (key == "cov_coeff") {
            set_real(cfg.cov_coeff);
            if (!(std::abs(cfg.cov_coeff) < 1.0))
                bad("|cov_coeff| must be < 1");
        } else if (key == "spatial_freq")
            set_real(cfg.spatial_freq);
        else if (key == "scm") {
            if (value == "augmented")
                cfg.scm = ScmMode::augmented;
            else if (value == "raw")
                cfg.scm = ScmMode::raw;
            else
                bad("expected augmented or raw");
        } else if (key == "threshold") {
            if (value == "analytic")
                cfg.threshold_source = ThresholdSource::analytic;
            else if (value == "empirical")
                cfg.threshold_source = ThresholdSource::empirical;
            else
                bad("expected analytic or empirical");
        } else if (key == "eta") {
            double eta = 0.0;
            set_real(eta);
            if (eta < 0.0)
                bad("must be >= 0");
            else
                cfg.eta = eta;
        } else if (key == "out")
            cfg.out = std::string(value);
        else if (key == "mode") {
            if (auto m = parse_mode(value))
                cfg.mode = *m;
            else
                bad("unknown mode '" + std::string(value) + "'");
        } else
            bad("unknown key");
    }

    if (issues.empty())
        issues = validate_config(cfg);
    if (!issues.empty())
        throw ConfigError(std::move(issues));
    return cfg;
}

std::vector<ConfigIssue> validate_config(const RunConfig& c)
{
    std::vector<ConfigIssue> issues;
    for (auto& e : validate_scenario(c.scenario))
        issues.push_back({0, "", std::move(e)});
    if (c.mode == Mode::pfa && !c.eta)
        issues.push_back({0, "eta", "mode pfa requires eta"});
    if ((c.mode == Mode::pd || c.mode == Mode::curve) && c.scenario.snr_grid_db.empty())
        issues.push_back({0, "snr_db", "mode " + std::string(to_string(c.mode)) + " requires a nonempty SNR grid"});
    if (c.scm == ScmMode::raw && c.scenario.L < c.scenario.O)
        issues.push_back({0, "scm", "raw SCM needs L >= O"});
    if (c.detectors.empty())
        issues.push_back({0, "detector", "no detector selected"});
    return issues;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError({{0, "", "cannot open '" + path + "'"}});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace gdd
