#pragma once

#include <vector>

#include "fuzzprob/fuzzprob.hpp"
#include "oracles.hpp"

namespace testing_helpers {

inline fuzzprob::Universe grid(std::size_t n, const char* name = "u") {
  return fuzzprob::Universe(name, 0.0, static_cast<double>(n - 1), n);
}

inline fuzzprob::Relation relation(const oracle::Matrix& r, const char* in = "x", const char* out = "y") {
  std::vector<double> flat;
  for (const auto& row : r) flat.insert(flat.end(), row.begin(), row.end());
  return fuzzprob::Relation(grid(r.size(), in), grid(r[0].size(), out), std::move(flat));
}

inline fuzzprob::ConditionalMatrix conditional(const oracle::Matrix& r) {
  std::vector<double> flat;
  for (const auto& row : r) flat.insert(flat.end(), row.begin(), row.end());
  return fuzzprob::ConditionalMatrix(grid(r.size(), "x"), grid(r[0].size(), "y"), std::move(flat));
}

inline std::vector<double> vec(std::span<const double> s) { return {s.begin(), s.end()}; }

}  // namespace testing_helpers
