#include "boldwalk/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace boldwalk::io {

namespace {

using ordered_json = nlohmann::ordered_json;

void fail(const std::string& msg) { throw std::runtime_error("io: " + msg); }

ordered_json header_to_json(const RunHeader& h) {
    ordered_json j;
    j["type"] = "header";
    j["command"] = h.command;
    j["engine"] = h.engine;
    j["gamma"] = h.gamma;
    if (h.t_max > 0) j["t_max"] = h.t_max;
    if (h.k_max > 0) j["k_max"] = h.k_max;
    j["n_walkers"] = h.n_walkers;
    j["seed"] = h.seed;
    if (h.engine == "direct") j["checkpoints"] = h.checkpoints;
    j["format"] = h.format;
    return j;
}

RunHeader header_from_json(const ordered_json& j) {
    RunHeader h;
    if (j.value("type", "") != std::string("header"))
        fail("first line is not a run header");
    h.command = j.at("command").get<std::string>();
    h.engine = j.at("engine").get<std::string>();
    h.gamma = j.at("gamma").get<double>();
    h.t_max = j.value("t_max", std::int64_t{0});
    h.k_max = j.value("k_max", std::int64_t{0});
    h.n_walkers = j.at("n_walkers").get<std::int64_t>();
    h.seed = j.at("seed").get<std::uint64_t>();
    h.checkpoints = j.value("checkpoints", std::string{});
    h.format = j.at("format").get<std::string>();
    return h;
}

std::vector<std::int64_t> split_int_fields(const std::string& line,
                                           std::size_t expected) {
    std::vector<std::int64_t> out;
    out.reserve(expected);
    std::size_t pos = 0;
    while (pos <= line.size()) {
        const std::size_t comma = line.find(',', pos);
        const std::string field =
            line.substr(pos, comma == std::string::npos ? std::string::npos
                                                        : comma - pos);
        try {
            out.push_back(std::stoll(field));
        } catch (const std::exception&) {
            fail("bad integer field '" + field + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.size() != expected) fail("wrong number of csv fields");
    return out;
}

} // namespace

void validate_header(const RunHeader& h) {
    auto bad = [](const std::string& msg) {
        throw std::invalid_argument("run header: " + msg);
    };
    if (h.engine != "direct" && h.engine != "cycles")
        bad("engine must be 'direct' or 'cycles'");
    if (h.format != "jsonl" && h.format != "csv")
        bad("format must be 'jsonl' or 'csv'");
    if (h.engine == "direct") {
        if (h.t_max <= 0 || h.k_max != 0) bad("direct engine runs stop on t_max");
    } else {
        if ((h.t_max > 0) == (h.k_max > 0))
            bad("cycles engine needs exactly one of t_max / k_max");
    }
    if (h.n_walkers < 1) bad("n_walkers must be >= 1");
}

void write_run(std::ostream& os, const RunData& run) {
    validate_header(run.header);
    const RunHeader& h = run.header;
    const bool csv = h.format == "csv";
    const std::string header_line = header_to_json(h).dump();
    if (csv) {
        os << "# " << header_line << '\n';
        os << (h.engine == "direct" ? "walker_id,t,z,x"
                                    : "walker_id,k,t,z,m,n")
           << '\n';
        if (h.engine == "direct") {
            for (const auto& r : run.direct_rows)
                os << r.walker_id << ',' << r.t << ',' << r.z << ',' << r.x
                   << '\n';
        } else {
            for (const auto& r : run.cycle_rows)
                os << r.walker_id << ',' << r.k << ',' << r.t << ',' << r.z
                   << ',' << r.m << ',' << r.n << '\n';
        }
        return;
    }
    os << header_line << '\n';
    if (h.engine == "direct") {
        for (const auto& r : run.direct_rows)
            os << "{\"walker_id\":" << r.walker_id << ",\"t\":" << r.t
               << ",\"z\":" << r.z << ",\"x\":" << r.x << "}\n";
    } else {
        for (const auto& r : run.cycle_rows)
            os << "{\"walker_id\":" << r.walker_id << ",\"k\":" << r.k
               << ",\"t\":" << r.t << ",\"z\":" << r.z << ",\"m\":" << r.m
               << ",\"n\":" << r.n << "}\n";
    }
}

std::string write_run_to_string(const RunData& run) {
    std::ostringstream os;
    write_run(os, run);
    return os.str();
}

RunData read_run(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) fail("empty input");
    const bool csv = line.rfind("# ", 0) == 0;
    ordered_json parsed;
    try {
        parsed = ordered_json::parse(csv ? line.substr(2) : line);
    } catch (const nlohmann::json::exception& e) {
        fail(std::string("bad header json: ") + e.what());
    }
    RunData run;
    try {
        run.header = header_from_json(parsed);
    } catch (const nlohmann::json::exception& e) {
        fail(std::string("bad header fields: ") + e.what());
    }
    try {
        validate_header(run.header);
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
    const bool direct = run.header.engine == "direct";
    if (csv != (run.header.format == "csv"))
        fail("header format does not match the file layout");
    if (csv) {
        if (!std::getline(is, line)) fail("missing csv column line");
        const std::string want = direct ? "walker_id,t,z,x" : "walker_id,k,t,z,m,n";
        if (line != want) fail("unexpected csv columns '" + line + "'");
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            if (direct) {
                const auto f = split_int_fields(line, 4);
                run.direct_rows.push_back({f[0], f[1], f[2], f[3]});
            } else {
                const auto f = split_int_fields(line, 6);
                run.cycle_rows.push_back({f[0], f[1], f[2], f[3], f[4], f[5]});
            }
        }
        return run;
    }
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        ordered_json row;
        try {
            row = ordered_json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            fail(std::string("bad row json: ") + e.what());
        }
        try {
            if (direct) {
                run.direct_rows.push_back({row.at("walker_id").get<std::int64_t>(),
                                           row.at("t").get<std::int64_t>(),
                                           row.at("z").get<std::int64_t>(),
                                           row.at("x").get<std::int64_t>()});
            } else {
                run.cycle_rows.push_back({row.at("walker_id").get<std::int64_t>(),
                                          row.at("k").get<std::int64_t>(),
                                          row.at("t").get<std::int64_t>(),
                                          row.at("z").get<std::int64_t>(),
                                          row.at("m").get<std::int64_t>(),
                                          row.at("n").get<std::int64_t>()});
            }
        } catch (const nlohmann::json::exception& e) {
            fail(std::string("bad row fields: ") + e.what());
        }
    }
    return run;
}

RunData read_run_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) fail("cannot open '" + path + "'");
    return read_run(is);
}

} // namespace boldwalk::io
