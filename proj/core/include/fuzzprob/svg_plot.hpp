#pragma once

#include <string>
#include <vector>

#include "fuzzprob/bench.hpp"

namespace fuzzprob {

/// Log-log plot of median error against N, one polyline and legend entry per
/// backend. Zero medians (exact backends) are drawn on the bottom axis.
/// Throws DomainError("nothing to plot") for empty input.
std::string render_svg_lineplot(const std::vector<BenchRow>& rows);

void emit_svg_lineplot(const std::vector<BenchRow>& rows, const std::string& path);

}  // namespace fuzzprob
