#include "boldwalk/driver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

#include "boldwalk/cycles.hpp"
#include "boldwalk/model.hpp"
#include "boldwalk/parallel.hpp"

namespace boldwalk::driver {

namespace {

using ordered_json = nlohmann::ordered_json;

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument("driver: " + msg);
}

constexpr const char* kDefaultCheckpoints = "geometric:1.7782794100389228:100";

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t next = s.find(sep, pos);
        out.push_back(s.substr(pos, next == std::string::npos
                                        ? std::string::npos
                                        : next - pos));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

io::RunHeader header_for(const SimulateConfig& c) {
    io::RunHeader h;
    h.command = "simulate";
    h.engine = c.engine;
    h.gamma = c.gamma;
    h.t_max = c.t_max;
    h.k_max = c.k_max;
    h.n_walkers = c.n_walkers;
    h.seed = c.seed;
    if (c.engine == "direct")
        h.checkpoints = c.checkpoints.empty() ? kDefaultCheckpoints : c.checkpoints;
    h.format = c.format;
    io::validate_header(h);
    return h;
}

} // namespace

std::vector<std::int64_t> resolve_checkpoints(const std::string& descriptor,
                                              std::int64_t t_max) {
    require(t_max >= 1, "checkpoints: t_max must be >= 1");
    const std::string desc =
        descriptor.empty() ? kDefaultCheckpoints : descriptor;
    std::vector<std::int64_t> out;
    if (desc.rfind("geometric:", 0) == 0) {
        const auto parts = split(desc.substr(10), ':');
        require(parts.size() == 1 || parts.size() == 2,
                "checkpoints: expected geometric:RATIO[:START]");
        double ratio = 0.0, start = 100.0;
        try {
            ratio = std::stod(parts[0]);
            if (parts.size() == 2) start = std::stod(parts[1]);
        } catch (const std::exception&) {
            require(false, "checkpoints: bad geometric parameters");
        }
        require(ratio > 1.0, "checkpoints: geometric ratio must be > 1");
        require(start >= 1.0, "checkpoints: geometric start must be >= 1");
        for (int j = 0;; ++j) {
            const double v = start * std::pow(ratio, j);
            if (v > static_cast<double>(t_max) + 0.5) break;
            const auto c = static_cast<std::int64_t>(std::llround(v));
            if (out.empty() || c > out.back()) out.push_back(c);
            require(j < 20000, "checkpoints: geometric grid too fine");
        }
        if (out.empty() || out.back() != t_max) out.push_back(t_max);
        return out;
    }
    if (desc.rfind("list:", 0) == 0) {
        for (const std::string& f : split(desc.substr(5), ',')) {
            try {
                out.push_back(std::stoll(f));
            } catch (const std::exception&) {
                require(false, "checkpoints: bad list entry '" + f + "'");
            }
        }
        require(!out.empty(), "checkpoints: empty list");
        for (std::size_t i = 0; i < out.size(); ++i) {
            require(out[i] >= 1 && out[i] <= t_max,
                    "checkpoints: list entries must lie in [1, t_max]");
            require(i == 0 || out[i] > out[i - 1],
                    "checkpoints: list must be strictly increasing");
        }
        return out;
    }
    require(false, "checkpoints: unknown descriptor '" + desc + "'");
    return out;
}

io::RunData run_simulate(const SimulateConfig& config) {
    io::RunData run;
    run.header = header_for(config);
    const io::RunHeader& h = run.header;
    if (h.engine == "direct") {
        const std::vector<std::int64_t> cps =
            resolve_checkpoints(h.checkpoints, h.t_max);
        run.direct_rows = walk::run_ensemble(h.gamma, h.t_max, cps,
                                             h.n_walkers, h.seed,
                                             config.threads);
        return run;
    }
    const cycles::CycleStop stop = h.k_max > 0 ? cycles::CycleStop::at_k(h.k_max)
                                               : cycles::CycleStop::at_t(h.t_max);
    std::vector<std::vector<cycles::CycleRecord>> per_walker(
        static_cast<std::size_t>(h.n_walkers));
    parallel_for(h.n_walkers, config.threads, [&](std::int64_t wid) {
        Rng rng(h.seed, static_cast<std::uint64_t>(wid));
        per_walker[static_cast<std::size_t>(wid)] =
            cycles::run_cycles(h.gamma, stop, rng);
    });
    std::size_t total = 0;
    for (const auto& recs : per_walker) total += recs.size();
    run.cycle_rows.reserve(total);
    for (std::int64_t wid = 0; wid < h.n_walkers; ++wid)
        for (const auto& r : per_walker[static_cast<std::size_t>(wid)])
            run.cycle_rows.push_back({wid, r.k, r.t, r.z, r.m, r.n});
    return run;
}

io::RunData replay(const io::RunHeader& header, int threads) {
    io::validate_header(header);
    require(header.command == "simulate", "replay: not a simulate header");
    SimulateConfig c;
    c.engine = header.engine;
    c.gamma = header.gamma;
    c.t_max = header.t_max;
    c.k_max = header.k_max;
    c.n_walkers = header.n_walkers;
    c.seed = header.seed;
    c.checkpoints = header.checkpoints;
    c.format = header.format;
    c.threads = threads;
    return run_simulate(c);
}

namespace {

// z samples (as doubles) for every requested time, one inner vector per time.
std::vector<std::vector<double>> gather_z(const io::RunData& run,
                                          const std::vector<std::int64_t>& times) {
    const bool direct = run.header.engine == "direct";
    const auto n = static_cast<std::size_t>(run.header.n_walkers);
    std::vector<std::vector<double>> out(times.size());
    if (direct) {
        for (std::size_t c = 0; c < times.size(); ++c) {
            out[c].reserve(n);
            for (const auto& r : run.direct_rows)
                if (r.t == times[c]) out[c].push_back(static_cast<double>(r.z));
            if (out[c].size() != n)
                throw std::runtime_error(
                    "analyze: time " + std::to_string(times[c]) +
                    " is not a checkpoint of every walker");
        }
        return out;
    }
    // Cycle runs: slice per walker, then reconstruct z at each time.
    if (run.cycle_rows.empty()) throw std::runtime_error("analyze: no rows");
    std::vector<std::pair<std::size_t, std::size_t>> slices(n, {0, 0});
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= run.cycle_rows.size(); ++i) {
        if (i == run.cycle_rows.size() ||
            (i > begin && run.cycle_rows[i].walker_id !=
                              run.cycle_rows[begin].walker_id)) {
            const auto wid =
                static_cast<std::size_t>(run.cycle_rows[begin].walker_id);
            if (wid >= n || slices[wid].second != 0)
                throw std::runtime_error("analyze: malformed walker ids");
            slices[wid] = {begin, i};
            begin = i;
            if (i == run.cycle_rows.size()) break;
        }
    }
    for (std::size_t c = 0; c < times.size(); ++c) out[c].reserve(n);
    std::vector<cycles::CycleRecord> recs;
    for (std::size_t w = 0; w < n; ++w) {
        const auto [lo, hi] = slices[w];
        if (hi == lo) throw std::runtime_error("analyze: walker without rows");
        recs.clear();
        for (std::size_t i = lo; i < hi; ++i) {
            const io::CycleRow& r = run.cycle_rows[i];
            recs.push_back({r.k, r.t, r.z, r.m, r.n});
        }
        for (std::size_t c = 0; c < times.size(); ++c)
            out[c].push_back(
                static_cast<double>(cycles::reconstruct_z(recs, times[c])));
    }
    return out;
}

std::vector<std::int64_t> default_times(const io::RunData& run) {
    if (run.header.engine == "direct") {
        std::vector<std::int64_t> times;
        for (const auto& r : run.direct_rows)
            if (r.walker_id == run.direct_rows.front().walker_id)
                times.push_back(r.t);
        std::sort(times.begin(), times.end());
        times.erase(std::unique(times.begin(), times.end()), times.end());
        return times;
    }
    // Largest horizon shared by all walkers, on the default geometric grid.
    if (run.cycle_rows.empty()) throw std::runtime_error("analyze: no rows");
    std::int64_t shared = std::numeric_limits<std::int64_t>::max();
    const auto& rows = run.cycle_rows;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (i + 1 == rows.size() || rows[i + 1].walker_id != rows[i].walker_id)
            shared = std::min(shared, rows[i].t);
    if (shared < 1) throw std::runtime_error("analyze: no usable rows");
    return resolve_checkpoints("", shared);
}

void write_dat(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("analyze: cannot write '" + path + "'");
    os << "# " << header << '\n';
    os.precision(10);
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? " " : "") << row[i];
        os << '\n';
    }
}

} // namespace

AnalyzeResult analyze_run(const io::RunData& run, const AnalyzeConfig& config) {
    io::validate_header(run.header);
    require(config.format == "jsonl" || config.format == "csv",
            "analyze: format must be 'jsonl' or 'csv'");
    require(!config.qs.empty() && !config.lambdas.empty(),
            "analyze: need at least one q and one lambda");

    AnalyzeResult res;
    res.gamma = run.header.gamma;
    res.nu = model::predict_regime(res.gamma).nu;

    const std::vector<std::int64_t> times =
        config.at_times.empty() ? default_times(run) : config.at_times;
    require(!times.empty(), "analyze: no analysis times");
    for (std::size_t i = 1; i < times.size(); ++i)
        require(times[i] > times[i - 1], "analyze: times must increase");

    const std::vector<std::vector<double>> z = gather_z(run, times);
    Rng boot_rng(mix64(run.header.seed ^ 0xA11A), 0);
    for (std::size_t c = 0; c < times.size(); ++c)
        res.summaries.push_back(stats::summarize(
            times[c], z[c], res.gamma, config.qs, config.lambdas,
            config.bootstrap_resamples, boot_rng));

    if (times.size() >= 4 &&
        static_cast<double>(times.back()) >= 10.0 * static_cast<double>(times.front())) {
        res.nu_fit = stats::estimate_nu(times, z, /*use_mean=*/false,
                                        config.bootstrap_resamples, boot_rng);
    }
    if (res.gamma > 0.0 && res.gamma <= 0.5) {
        const auto& ref = res.summaries.back().reference_sorted;
        res.ks_final = stats::ks_distance(ref, model::levy_cdf);
        res.ks_critical =
            stats::ks_critical_1pct(static_cast<double>(ref.size()));
    }
    return res;
}

void write_analysis_records(std::ostream& os, const AnalyzeResult& result,
                            const AnalyzeConfig& config) {
    const bool csv = config.format == "csv";
    auto reference_value = [&](double lambda) {
        return result.gamma == 0.0 ? model::limit_laplace_T(lambda)
                                   : model::limit_laplace_L(lambda);
    };
    const bool has_reference = result.gamma >= 0.0 && result.gamma <= 0.5;
    if (csv) {
        os << "kind,t,count,key,value,se,reference\n";
        os.precision(10);
        for (const auto& s : result.summaries) {
            os << "median," << s.t << ',' << s.count << ",," << s.z_median
               << ",,\n";
            for (const auto& m : s.moments)
                os << "moment," << s.t << ',' << s.count << ',' << m.q << ','
                   << m.value << ',' << m.se << ",\n";
            for (const auto& l : s.laplace)
                os << "laplace," << s.t << ',' << s.count << ',' << l.lambda
                   << ',' << l.value << ',' << l.se << ','
                   << reference_value(l.lambda) << '\n';
        }
        if (result.nu_fit)
            os << "nu,,,," << result.nu_fit->nu_hat << ','
               << result.nu_fit->std_err << ',' << result.nu << '\n';
        if (result.ks_final)
            os << "ks,,,," << *result.ks_final << ",," << *result.ks_critical
               << '\n';
        return;
    }
    ordered_json head;
    head["type"] = "analyze";
    head["gamma"] = result.gamma;
    head["nu"] = result.nu;
    os << head.dump() << '\n';
    for (const auto& s : result.summaries) {
        ordered_json j;
        j["type"] = "summary";
        j["t"] = s.t;
        j["count"] = s.count;
        j["z_median"] = s.z_median;
        j["moments"] = ordered_json::array();
        for (const auto& m : s.moments)
            j["moments"].push_back({{"q", m.q}, {"value", m.value}, {"se", m.se}});
        if (has_reference) {
            j["laplace"] = ordered_json::array();
            for (const auto& l : s.laplace)
                j["laplace"].push_back({{"lambda", l.lambda},
                                        {"value", l.value},
                                        {"se", l.se},
                                        {"reference", reference_value(l.lambda)}});
        }
        os << j.dump() << '\n';
    }
    if (result.nu_fit) {
        ordered_json j;
        j["type"] = "nu";
        j["nu_hat"] = result.nu_fit->nu_hat;
        j["std_err"] = result.nu_fit->std_err;
        j["t_lo"] = result.nu_fit->t_lo;
        j["t_hi"] = result.nu_fit->t_hi;
        j["method"] = result.nu_fit->method;
        j["nu_predicted"] = result.nu;
        os << j.dump() << '\n';
    }
    if (result.ks_final) {
        ordered_json j;
        j["type"] = "ks";
        j["statistic"] = *result.ks_final;
        j["critical_1pct"] = *result.ks_critical;
        j["reference"] = "levy";
        os << j.dump() << '\n';
    }
}

void write_analysis(const AnalyzeResult& result, const AnalyzeConfig& config,
                    const std::string& out_path) {
    {
        std::ofstream os(out_path);
        if (!os)
            throw std::runtime_error("analyze: cannot write '" + out_path + "'");
        write_analysis_records(os, result, config);
    }
    std::vector<std::vector<double>> scaling;
    for (const auto& s : result.summaries) {
        double mean_scaled = 0.0;
        for (const auto& m : s.moments)
            if (m.q == 1.0) mean_scaled = m.value;
        const double nu = result.nu;
        const double mean_z =
            mean_scaled * std::pow(static_cast<double>(s.t), nu);
        scaling.push_back({std::log10(static_cast<double>(s.t)),
                           std::log10(s.z_median),
                           mean_z > 0.0 ? std::log10(mean_z) : 0.0});
    }
    write_dat(out_path + ".scaling.dat", "log10_t log10_median_z log10_mean_z",
              scaling);

    const auto& last = result.summaries.back();
    if (!last.laplace.empty()) {
        std::vector<std::vector<double>> rows;
        auto reference_value = [&](double lambda) {
            return result.gamma == 0.0 ? model::limit_laplace_T(lambda)
                                       : model::limit_laplace_L(lambda);
        };
        for (const auto& l : last.laplace)
            rows.push_back({l.lambda, l.value, l.se, reference_value(l.lambda)});
        write_dat(out_path + ".laplace.dat",
                  "lambda empirical se reference", rows);
    }
    if (result.gamma > 0.0 && result.gamma <= 0.5 &&
        !last.reference_sorted.empty()) {
        const auto& ref = last.reference_sorted;
        std::vector<std::vector<double>> rows;
        const std::size_t stride = std::max<std::size_t>(1, ref.size() / 1000);
        for (std::size_t i = 0; i < ref.size(); i += stride)
            rows.push_back({ref[i],
                            static_cast<double>(i + 1) /
                                static_cast<double>(ref.size()),
                            model::levy_cdf(ref[i])});
        write_dat(out_path + ".ecdf.dat", "value ecdf reference_cdf", rows);
    }
}

} // namespace boldwalk::driver
