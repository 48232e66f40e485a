#include "hardylab/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <type_traits>

namespace hardylab::io {

namespace {

Json named_json(const NamedValues& values) {
  Json j = Json::object();
  for (const auto& [k, v] : values) j[k] = number_json(v);
  return j;
}

NamedValues named_from_json(const Json& j) {
  NamedValues out;
  for (auto it = j.begin(); it != j.end(); ++it) out.emplace_back(it.key(), number_from_json(it.value()));
  return out;
}

Json array_json(const std::vector<double>& v) {
  Json j = Json::array();
  for (double x : v) j.push_back(number_json(x));
  return j;
}

std::vector<double> array_from_json(const Json& j) {
  std::vector<double> out;
  for (const auto& x : j) out.push_back(number_from_json(x));
  return out;
}

std::string named_csv(const NamedValues& values) {
  std::string s;
  for (const auto& [k, v] : values) {
    if (!s.empty()) s += ';';
    s += k + '=' + format_number(v);
  }
  return s;
}

std::string short_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::string relation_name(Relation r) {
  switch (r) {
    case Relation::kLessEqual: return "le";
    case Relation::kGreaterEqual: return "ge";
    case Relation::kIdentity: return "identity";
  }
  return "le";
}

Relation parse_relation(const std::string& name) {
  if (name == "le") return Relation::kLessEqual;
  if (name == "ge") return Relation::kGreaterEqual;
  if (name == "identity") return Relation::kIdentity;
  throw DomainError("unknown relation '" + name + "'");
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json number_json(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::nan("");
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
  }
  throw DomainError("expected a number in JSON, got " + j.dump());
}

Json to_json(const InequalityReport& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["inequality"] = r.inequality;
  j["relation"] = relation_name(r.relation);
  j["lhs"] = number_json(r.lhs);
  j["rhs"] = number_json(r.rhs);
  j["margin"] = number_json(r.margin);
  j["relative_margin"] = number_json(r.relative_margin);
  j["tolerance"] = number_json(r.tolerance);
  j["satisfied"] = r.satisfied;
  j["params"] = named_json(r.params);
  j["diagnostics"] = named_json(r.diagnostics);
  return j;
}

InequalityReport report_from_json(const Json& j) {
  InequalityReport r;
  r.inequality = j.at("inequality").get<std::string>();
  r.relation = parse_relation(j.at("relation").get<std::string>());
  r.lhs = number_from_json(j.at("lhs"));
  r.rhs = number_from_json(j.at("rhs"));
  r.margin = number_from_json(j.at("margin"));
  r.relative_margin = number_from_json(j.at("relative_margin"));
  r.tolerance = number_from_json(j.at("tolerance"));
  r.satisfied = j.at("satisfied").get<bool>();
  r.params = named_from_json(j.at("params"));
  r.diagnostics = named_from_json(j.at("diagnostics"));
  return r;
}

Json to_json(const WeightFamily& w) {
  Json j;
  j["family"] = family_name(w);
  std::visit(
      [&j](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, weights::Constant>) {
          j["level"] = number_json(v.level);
        } else if constexpr (std::is_same_v<T, weights::Power>) {
          j["coeff"] = number_json(v.coeff);
          j["exponent"] = number_json(v.exponent);
        } else if constexpr (std::is_same_v<T, weights::ExtremalG>) {
          j["a"] = number_json(v.a);
          j["ell"] = number_json(v.ell);
        } else if constexpr (std::is_same_v<T, weights::ExtremalPhi>) {
          j["a"] = number_json(v.a);
          j["epsilon"] = number_json(v.epsilon);
        } else if constexpr (std::is_same_v<T, weights::Step>) {
          j["breakpoints"] = array_json(v.breakpoints);
          j["levels"] = array_json(v.levels);
        } else {
          j["grid"] = array_json(v.grid);
          j["values"] = array_json(v.values);
        }
      },
      w);
  return j;
}

WeightFamily weight_from_json(const Json& j) {
  const auto family = j.at("family").get<std::string>();
  if (family == "const") return make_constant(number_from_json(j.at("level")));
  if (family == "pow") return make_power(number_from_json(j.at("coeff")), number_from_json(j.at("exponent")));
  if (family == "extg") return make_extremal_g(number_from_json(j.at("a")), number_from_json(j.at("ell")));
  if (family == "extphi") return make_extremal_phi(number_from_json(j.at("a")), number_from_json(j.at("epsilon")));
  if (family == "step") return make_step(array_from_json(j.at("breakpoints")), array_from_json(j.at("levels")));
  if (family == "table") return make_tabulated(array_from_json(j.at("grid")), array_from_json(j.at("values")));
  throw DomainError("unknown weight family '" + family + "'");
}

Json to_json(const harness::Instance& inst) {
  Json j;
  j["index"] = inst.index;
  j["p"] = number_json(inst.p);
  j["q"] = number_json(inst.q);
  if (const auto* seq = std::get_if<SequenceData>(&inst.data)) {
    j["lambda"] = array_json(seq->lambda);
    j["a"] = array_json(seq->a);
  } else {
    j["weight"] = to_json(std::get<WeightFamily>(inst.data));
  }
  j["aux"] = array_json({inst.aux.begin(), inst.aux.end()});
  return j;
}

Json to_json(const harness::BatchResult& b) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["total"] = b.total;
  j["satisfied"] = b.satisfied;
  j["worst_relative_margin"] = number_json(b.worst_relative_margin);
  j["worst_index"] = b.worst_index;
  if (b.worst_case) {
    j["worst_case"] = {{"instance", to_json(b.worst_case->instance)},
                       {"report", to_json(b.worst_case->report)}};
  }
  return j;
}

Json to_json(const muckenhoupt::P0Solution& s, double q_exp, double M) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["q"] = number_json(q_exp);
  j["M"] = number_json(M);
  j["p0"] = number_json(s.p0);
  j["gap"] = number_json(s.gap);
  j["residual"] = number_json(s.residual);
  j["iterations"] = s.iterations;
  return j;
}

Json to_json(const SweepTable& t) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = t.kind;
  j["converged"] = t.converged;
  j["tolerance"] = number_json(t.tolerance);
  Json rows = Json::array();
  for (const SweepRow& r : t.rows) {
    rows.push_back({{"kind", r.kind},
                    {"index", r.index},
                    {"parameter", number_json(r.parameter)},
                    {"lhs", number_json(r.lhs)},
                    {"rhs", number_json(r.rhs)},
                    {"value", number_json(r.value)},
                    {"limit", number_json(r.limit)},
                    {"deviation", number_json(r.deviation)}});
  }
  j["rows"] = std::move(rows);
  return j;
}

SweepTable sweep_from_json(const Json& j) {
  SweepTable t;
  t.kind = j.at("kind").get<std::string>();
  t.converged = j.at("converged").get<bool>();
  t.tolerance = number_from_json(j.at("tolerance"));
  for (const auto& r : j.at("rows")) {
    t.rows.push_back({r.at("kind").get<std::string>(), r.at("index").get<std::size_t>(),
                      number_from_json(r.at("parameter")), number_from_json(r.at("lhs")),
                      number_from_json(r.at("rhs")), number_from_json(r.at("value")),
                      number_from_json(r.at("limit")), number_from_json(r.at("deviation"))});
  }
  return t;
}

std::string csv_header_report() {
  return "schema_version,inequality,relation,lhs,rhs,margin,relative_margin,tolerance,satisfied,"
         "params";
}

std::string csv_header_sweep() { return "kind,index,parameter,lhs,rhs,value,limit,deviation"; }

void write_csv(std::ostream& os, const std::vector<InequalityReport>& reports) {
  os << csv_header_report() << '\n';
  for (const auto& r : reports) {
    os << kSchemaVersion << ',' << r.inequality << ',' << relation_name(r.relation) << ','
       << format_number(r.lhs) << ',' << format_number(r.rhs) << ',' << format_number(r.margin)
       << ',' << format_number(r.relative_margin) << ',' << format_number(r.tolerance) << ','
       << (r.satisfied ? "true" : "false") << ',' << named_csv(r.params) << '\n';
  }
}

void write_csv(std::ostream& os, const SweepTable& t) {
  os << csv_header_sweep() << '\n';
  for (const auto& r : t.rows) {
    os << r.kind << ',' << r.index << ',' << format_number(r.parameter) << ','
       << format_number(r.lhs) << ',' << format_number(r.rhs) << ',' << format_number(r.value)
       << ',' << format_number(r.limit) << ',' << format_number(r.deviation) << '\n';
  }
}

void write_table(std::ostream& os, const InequalityReport& r) {
  os << r.inequality << " (" << relation_name(r.relation) << ")\n";
  os << "  lhs              " << short_number(r.lhs) << '\n';
  os << "  rhs              " << short_number(r.rhs) << '\n';
  os << "  margin           " << short_number(r.margin) << '\n';
  os << "  relative margin  " << short_number(r.relative_margin) << '\n';
  os << "  tolerance        " << short_number(r.tolerance) << '\n';
  os << "  satisfied        " << (r.satisfied ? "yes" : "no") << '\n';
  for (const auto& [k, v] : r.params) os << "  param " << k << " = " << short_number(v) << '\n';
  for (const auto& [k, v] : r.diagnostics) os << "  diag  " << k << " = " << short_number(v) << '\n';
}

void write_table(std::ostream& os, const SweepTable& t) {
  char line[256];
  std::snprintf(line, sizeof line, "%5s %18s %18s %18s %18s %12s\n", "index", "parameter", "lhs",
                "rhs", "value", "deviation");
  os << t.kind << " sweep (limit tolerance " << short_number(t.tolerance) << ")\n" << line;
  for (const auto& r : t.rows) {
    std::snprintf(line, sizeof line, "%5zu %18.10g %18.10g %18.10g %18.10g %12.4g\n", r.index,
                  r.parameter, r.lhs, r.rhs, r.value, r.deviation);
    os << line;
  }
  os << (t.converged ? "converged\n" : "not converged\n");
}

}  // namespace hardylab::io
