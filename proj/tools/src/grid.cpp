#include "oneharm_cli/grid.hpp"

#include <charconv>
#include <cmath>

#include "oneharm/error.hpp"
#include "oneharm/numerics.hpp"

namespace oneharm::cli {
namespace {

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::logic_error&) {
    fail(ErrorKind::usage, "cannot read " + what + " from '" + text + "'");
  }
}

int parse_int(const std::string& text, const std::string& what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    fail(ErrorKind::usage, "cannot read " + what + " from '" + text + "'");
  return v;
}

}  // namespace

GridSpec parse_grid(const std::string& text) {
  std::string body = text;
  GridSpec g;
  if (const auto comma = body.find(','); comma != std::string::npos) {
    const std::string flag = body.substr(comma + 1);
    if (flag != "log") fail(ErrorKind::usage, "grid suffix must be ',log', got '," + flag + "'");
    g.log = true;
    body.resize(comma);
  }
  const auto c1 = body.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : body.find(':', c1 + 1);
  if (c2 == std::string::npos) fail(ErrorKind::usage, "grid must look like a:b:n[,log], got '" + text + "'");
  g.a = parse_double(body.substr(0, c1), "grid start");
  g.b = parse_double(body.substr(c1 + 1, c2 - c1 - 1), "grid end");
  g.n = parse_int(body.substr(c2 + 1), "grid size");
  if (g.n < 1) fail(ErrorKind::usage, "grid size must be positive");
  if (g.n == 1 && g.a != g.b) fail(ErrorKind::usage, "a one-point grid needs a == b");
  return g;
}

std::vector<double> expand(const GridSpec& g, GridAxis axis) {
  if (g.n == 1) return {g.a};
  if (!g.log) return linspace(g.a, g.b, g.n);
  if (axis == GridAxis::approach_one) {
    if (!(g.a < 1.0 && g.b < 1.0)) fail(ErrorKind::usage, "log ratio grids need both ends below 1");
    return ratio_grid(g.a, g.b, g.n);
  }
  if (!(g.a > 0.0 && g.b > 0.0)) fail(ErrorKind::usage, "log grids need positive ends");
  return geomspace(g.a, g.b, g.n);
}

std::vector<int> parse_int_range(const std::string& text) {
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int lo = parse_int(text.substr(0, dots), "range start");
    const int hi = parse_int(text.substr(dots + 2), "range end");
    if (hi < lo) fail(ErrorKind::usage, "empty range '" + text + "'");
    std::vector<int> out;
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  return {parse_int(text, "integer")};
}

}  // namespace oneharm::cli
