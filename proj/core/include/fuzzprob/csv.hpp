#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzprob/bench.hpp"
#include "fuzzprob/controller.hpp"

namespace fuzzprob {

inline constexpr std::string_view kBenchCsvHeader =
    "instance_id,backend,N,seed,linf_error,wall_time_ns,hoeffding_bound";
inline constexpr std::string_view kTraceCsvHeader =
    "step,plant_state,error_input,control_output,backend_latency_samples";

/// Shortest form of "%.17g"; parses back to the identical double.
std::string format_real(double value);

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);
void write_csv(std::ostream& out, const std::vector<TraceRecord>& trace);

/// Writes header + rows with LF line endings. Throws std::runtime_error with the
/// OS message when the file cannot be written.
void emit_csv(const std::vector<BenchRow>& rows, const std::string& path);
void emit_csv(const std::vector<TraceRecord>& trace, const std::string& path);

std::vector<BenchRow> parse_bench_csv(std::string_view text);
std::vector<TraceRecord> parse_trace_csv(std::string_view text);

}  // namespace fuzzprob
