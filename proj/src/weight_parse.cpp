#include "hardylab/weight_parse.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace hardylab::text {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<double> expect_count(std::string_view body, std::size_t lo, std::size_t hi,
                                 std::string_view family) {
  auto values = parse_list(body);
  if (values.size() < lo || values.size() > hi) {
    throw DomainError("weight '" + std::string(family) + "' has the wrong number of arguments");
  }
  return values;
}

}  // namespace

double parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw DomainError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<double> parse_list(std::string_view s) {
  std::vector<double> out;
  s = trim(s);
  if (s.empty()) return out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(parse_number(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

Interval parse_interval(std::string_view s) {
  const auto v = parse_list(s);
  if (v.size() != 2) throw DomainError("interval must be written lo,hi");
  return Interval(v[0], v[1]);
}

WeightFamily parse_weight(std::string_view spec) {
  spec = trim(spec);
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw DomainError("weight must be written family:arguments");
  const std::string_view family = spec.substr(0, colon);
  const std::string_view body = spec.substr(colon + 1);
  if (family == "const") return make_constant(expect_count(body, 1, 1, family)[0]);
  if (family == "pow") {
    const auto v = expect_count(body, 2, 2, family);
    return make_power(v[0], v[1]);
  }
  if (family == "extg") {
    const auto v = expect_count(body, 2, 2, family);
    return make_extremal_g(v[0], v[1]);
  }
  if (family == "extphi") {
    const auto v = expect_count(body, 1, 2, family);
    return make_extremal_phi(v[0], v.size() == 2 ? v[1] : 0.0);
  }
  if (family == "step") {
    const auto semi = body.find(';');
    if (semi == std::string_view::npos) throw DomainError("step weight must be written step:b1,..;l1,..");
    return make_step(parse_list(body.substr(0, semi)), parse_list(body.substr(semi + 1)));
  }
  if (family == "table") {
    std::vector<double> grid;
    std::vector<double> values;
    read_columns(std::string(trim(body)), grid, values);
    return make_tabulated(std::move(grid), std::move(values));
  }
  throw DomainError("unknown weight family '" + std::string(family) + "'");
}

void read_columns(const std::string& path, std::vector<double>& first, std::vector<double>& second) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& ch : line) {
      if (ch == ',' || ch == '\t') ch = ' ';
    }
    std::istringstream fields(line);
    std::string a;
    std::string b;
    std::string extra;
    if (!(fields >> a)) continue;
    if (!(fields >> b) || (fields >> extra)) {
      throw DomainError(path + ":" + std::to_string(number) + ": expected two columns");
    }
    first.push_back(parse_number(a));
    second.push_back(parse_number(b));
  }
}

SequenceData read_sequence(const std::string& path) {
  std::vector<double> lambda;
  std::vector<double> a;
  read_columns(path, lambda, a);
  return SequenceData(std::move(lambda), std::move(a));
}

}  // namespace hardylab::text
