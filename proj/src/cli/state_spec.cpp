#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "coherence/cli.hpp"
#include "coherence/error.hpp"

namespace coherence::cli {

namespace {

[[noreturn]] void usage_at(std::size_t position, const std::string& what) {
  fail(ErrorKind::usage, what + " (at position " + std::to_string(position) + ")");
}

bool parse_real(std::string_view text, double& out) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size() && std::isfinite(out);
}

double parse_real_or_throw(std::string_view text, std::size_t position, const char* what) {
  double x = 0.0;
  if (!parse_real(text, x))
    usage_at(position, std::string("cannot parse ") + what + " '" + std::string(text) + "'");
  return x;
}

bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

}  // namespace

std::string_view version() { return COHERENCE_VERSION; }

std::vector<double> Grid::points() const {
  std::vector<double> out;
  for (long long i = 0;; ++i) {
    const double x = start + static_cast<double>(i) * step;
    if (x > stop + 1e-9 * step) break;
    out.push_back(x);
  }
  return out;
}

Grid parse_grid(std::string_view text) {
  Grid g;
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos)
    usage_at(0, "grid must look like start:stop:step, got '" + std::string(text) + "'");
  g.start = parse_real_or_throw(text.substr(0, first), 0, "grid start");
  g.stop = parse_real_or_throw(text.substr(first + 1, second - first - 1), first + 1, "grid stop");
  g.step = parse_real_or_throw(text.substr(second + 1), second + 1, "grid step");
  require(g.start >= 0.0 && g.step > 0.0 && g.stop >= g.start, ErrorKind::usage,
          "grid needs start >= 0, step > 0 and stop >= start");
  return g;
}

void validate(const RunConfig& config) {
  require(config.tol > 0.0 && config.tol < 1.0, ErrorKind::usage, "--tol must lie in (0, 1)");
  require(config.grid.start >= 0.0 && config.grid.step > 0.0, ErrorKind::usage,
          "grid needs start >= 0 and step > 0");
}

StateSpec parse_state_spec(std::string_view text) {
  StateSpec spec;
  std::size_t i = 0;
  while (i < text.size() && is_name_char(text[i])) ++i;
  if (i == 0) usage_at(0, "expected a state name");
  spec.name = std::string(text.substr(0, i));
  if (i == text.size()) return spec;
  if (text[i] != ':') usage_at(i, std::string("unexpected character '") + text[i] + "'");
  ++i;
  std::set<std::string> seen;
  while (true) {
    const std::size_t key_start = i;
    while (i < text.size() && is_name_char(text[i])) ++i;
    if (i == key_start) usage_at(key_start, "expected a parameter name");
    if (i == text.size() || text[i] != '=') usage_at(i, "expected '=' after parameter name");
    std::string key(text.substr(key_start, i - key_start));
    if (!seen.insert(key).second) usage_at(key_start, "duplicate parameter '" + key + "'");
    ++i;
    const std::size_t value_start = i;
    while (i < text.size() && text[i] != ',') ++i;
    if (i == value_start) usage_at(value_start, "empty value for '" + key + "'");
    spec.params.push_back({std::move(key), std::string(text.substr(value_start, i - value_start)), key_start});
    if (i == text.size()) break;
    ++i;  // ','
  }
  return spec;
}

std::complex<double> parse_complex(std::string_view text) {
  if (text.empty()) usage_at(0, "empty complex number");
  if (text.back() != 'i') return {parse_real_or_throw(text, 0, "number"), 0.0};

  const std::string_view body = text.substr(0, text.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string_view re_text = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
  const std::string_view im_text = split == std::string_view::npos ? body : body.substr(split);
  const std::size_t im_pos = split == std::string_view::npos ? 0 : split;
  double re = re_text.empty() ? 0.0 : parse_real_or_throw(re_text, 0, "real part");
  double im = 0.0;
  if (im_text.empty() || im_text == "+")
    im = 1.0;
  else if (im_text == "-")
    im = -1.0;
  else
    im = parse_real_or_throw(im_text, im_pos, "imaginary part");
  return {re, im};
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return buf;
}

std::string config_comment(const RunConfig& config) {
  std::ostringstream s;
  s << "# config: tol=" << format_real(config.tol)
    << " log_base=" << measures::to_string(config.log_base) << " grid="
    << format_real(config.grid.start) << ":" << format_real(config.grid.stop) << ":"
    << format_real(config.grid.step) << " version=" << version();
  return s.str();
}

}  // namespace coherence::cli
