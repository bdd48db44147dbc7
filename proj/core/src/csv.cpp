#include "fuzzprob/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fuzzprob/error.hpp"

namespace fuzzprob {

std::string format_real(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("format_real: conversion failed");
  return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << kBenchCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.instance_id << ',' << r.backend << ',' << r.n << ',' << r.seed << ','
        << format_real(r.linf_error) << ',' << r.wall_time_ns << ',' << format_real(r.hoeffding_bound)
        << '\n';
  }
}

void write_csv(std::ostream& out, const std::vector<TraceRecord>& trace) {
  out << kTraceCsvHeader << '\n';
  for (const auto& t : trace) {
    out << t.step << ',' << format_real(t.plant_state) << ',' << format_real(t.error_input) << ','
        << format_real(t.control_output) << ',' << t.backend_latency_samples << '\n';
  }
}

namespace {

template <typename Rows>
void emit(const Rows& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path + ": " + std::strerror(errno));
  write_csv(out, rows);
  out.flush();
  if (!out) throw std::runtime_error(path + ": " + std::strerror(errno));
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  for (;;) {
    const auto comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      return fields;
    }
    fields.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
}

template <typename T>
T number(std::string_view field, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error("csv line " + std::to_string(line) + ": malformed field '" + std::string(field) + "'");
  }
  return value;
}

// Calls on_row(fields, line_no) for every data line after checking the header.
template <typename F>
void for_each_row(std::string_view text, std::string_view header, std::size_t arity, F on_row) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!seen_header) {
      if (line != header) throw Error("csv: unexpected header '" + std::string(line) + "'");
      seen_header = true;
      continue;
    }
    const auto fields = split(line);
    if (fields.size() != arity) {
      throw Error("csv line " + std::to_string(line_no) + ": expected " + std::to_string(arity) +
                  " fields");
    }
    on_row(fields, line_no);
  }
  if (!seen_header) throw Error("csv: missing header");
}

}  // namespace

void emit_csv(const std::vector<BenchRow>& rows, const std::string& path) { emit(rows, path); }

void emit_csv(const std::vector<TraceRecord>& trace, const std::string& path) { emit(trace, path); }

std::vector<BenchRow> parse_bench_csv(std::string_view text) {
  std::vector<BenchRow> rows;
  for_each_row(text, kBenchCsvHeader, 7, [&](const auto& f, std::size_t line) {
    rows.push_back(BenchRow{std::string(f[0]), std::string(f[1]), number<std::size_t>(f[2], line),
                            number<std::uint64_t>(f[3], line), number<double>(f[4], line),
                            number<std::int64_t>(f[5], line), number<double>(f[6], line)});
  });
  return rows;
}

std::vector<TraceRecord> parse_trace_csv(std::string_view text) {
  std::vector<TraceRecord> trace;
  for_each_row(text, kTraceCsvHeader, 5, [&](const auto& f, std::size_t line) {
    trace.push_back(TraceRecord{number<std::size_t>(f[0], line), number<double>(f[1], line),
                                number<double>(f[2], line), number<double>(f[3], line),
                                number<std::size_t>(f[4], line)});
  });
  return trace;
}

}  // namespace fuzzprob
