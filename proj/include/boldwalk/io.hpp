// Run serialization: a one-line JSON header carrying the full run
// configuration, followed by one record per row. JSONL is the primary
// format; CSV keeps the same header as a '# '-prefixed comment line. A file
// can always be re-executed from its own header, and identical
// configurations produce byte-identical files regardless of thread count.

#ifndef BOLDWALK_IO_HPP
#define BOLDWALK_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "boldwalk/walk.hpp"

namespace boldwalk::io {

struct RunHeader {
    std::string command = "simulate";
    std::string engine = "direct"; // "direct" | "cycles"
    double gamma = 0.0;
    std::int64_t t_max = 0; // positive when the run stopped on time
    std::int64_t k_max = 0; // positive when the run stopped on cycle count
    std::int64_t n_walkers = 0;
    std::uint64_t seed = 0;
    std::string checkpoints; // descriptor, direct engine only
    std::string format = "jsonl"; // "jsonl" | "csv"
};

struct CycleRow {
    std::int64_t walker_id;
    std::int64_t k;
    std::int64_t t;
    std::int64_t z;
    std::int64_t m;
    std::int64_t n;
};

struct RunData {
    RunHeader header;
    std::vector<walk::CheckpointRecord> direct_rows; // engine == "direct"
    std::vector<CycleRow> cycle_rows;                // engine == "cycles"
};

// Serialize per header.format. Throws std::invalid_argument on an
// inconsistent header (unknown engine/format, wrong stop bound).
void write_run(std::ostream& os, const RunData& run);
std::string write_run_to_string(const RunData& run);

// Parse either format (detected from the first line). Throws
// std::runtime_error on schema violations.
RunData read_run(std::istream& is);
RunData read_run_file(const std::string& path);

void validate_header(const RunHeader& header);

} // namespace boldwalk::io

#endif // BOLDWALK_IO_HPP
