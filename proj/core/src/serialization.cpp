#include "divreg/serialization.hpp"

#include "divreg/errors.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace divreg {

namespace {

const Json &require(const Json &j, const char *key) {
  if (!j.is_object() || !j.contains(key))
    throw DomainError(std::string("json: missing key '") + key + "'");
  return j.at(key);
}

template <class T> T get(const Json &j, const char *key) {
  const Json &v = require(j, key);
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception &) {
    throw DomainError(std::string("json: key '") + key +
                      "' has the wrong type");
  }
}

Json term_json(const BasisFunction &b, const ComplexMatrix &c) {
  Json t = to_json(b);
  const Json m = to_json(c);
  t["re"] = m["re"];
  t["im"] = m["im"];
  return t;
}

std::vector<std::string> split(const std::string &line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep))
    out.push_back(cur);
  if (!line.empty() && line.back() == sep)
    out.emplace_back();
  return out;
}

std::string trim(const std::string &s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string &s, std::size_t line) {
  const std::string t = trim(s);
  double v = 0.0;
  const auto *end = t.data() + t.size();
  const auto res = std::from_chars(t.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end || t.empty())
    throw DomainError("csv line " + std::to_string(line) +
                      ": not a number: '" + t + "'");
  return v;
}

} // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json to_json(const ComplexMatrix &m) {
  Json re = Json::array(), im = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json rr = Json::array(), ir = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ir.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return {{"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const Json &j) {
  const Json &re = require(j, "re");
  const Json &im = require(j, "im");
  if (!re.is_array() || !im.is_array() || re.size() != im.size() ||
      re.empty())
    throw DomainError("json: matrix re/im must be equally sized arrays");
  const std::size_t rows = re.size();
  const std::size_t cols = re[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!re[r].is_array() || !im[r].is_array() || re[r].size() != cols ||
        im[r].size() != cols)
      throw DomainError("json: ragged matrix row " + std::to_string(r));
    for (std::size_t c = 0; c < cols; ++c) {
      if (!re[r][c].is_number() || !im[r][c].is_number())
        throw DomainError("json: matrix entries must be numbers");
      m(r, c) = Complex(re[r][c].get<double>(), im[r][c].get<double>());
    }
  }
  return m;
}

Json to_json(const BasisFunction &b) {
  Json j;
  if (b.power.den == 1)
    j["power"] = b.power.num;
  else
    j["power"] = b.power.str();
  j["logpower"] = b.logpower;
  return j;
}

BasisFunction basis_from_json(const Json &j) {
  const Json &p = require(j, "power");
  Rational power;
  if (p.is_number_integer()) {
    power = Rational(p.get<int>());
  } else if (p.is_string()) {
    const auto s = p.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos)
        power = Rational(std::stoi(s));
      else
        power = Rational(std::stoi(s.substr(0, slash)),
                         std::stoi(s.substr(slash + 1)));
    } catch (const std::logic_error &) {
      throw DomainError("json: bad power '" + s + "'");
    }
  } else {
    throw DomainError("json: power must be an integer or \"p/q\"");
  }
  return {power, get<int>(j, "logpower")};
}

Json to_json(const AsymptoticExpansion &x) {
  Json terms = Json::array();
  for (const auto &[b, c] : x.terms())
    terms.push_back(term_json(b, c));
  Json j{{"regulator", to_string(x.kind())},
         {"dimension", x.dimension()},
         {"terms", terms}};
  j["remainder"] = x.remainder_order() ? to_json(*x.remainder_order())
                                       : Json(nullptr);
  return j;
}

AsymptoticExpansion expansion_from_json(const Json &j) {
  const auto kind = regulator_from_string(get<std::string>(j, "regulator"));
  const auto dim = get<std::size_t>(j, "dimension");
  AsymptoticExpansion x(kind, dim);
  const Json &terms = require(j, "terms");
  if (!terms.is_array())
    throw DomainError("json: 'terms' must be an array");
  for (const auto &t : terms) {
    const auto c = matrix_from_json(t);
    if (c.rows() != dim || c.cols() != dim)
      throw DomainError("json: coefficient shape does not match dimension");
    x.add(basis_from_json(t), c);
  }
  if (j.contains("remainder") && !j.at("remainder").is_null())
    x.set_remainder_order(basis_from_json(j.at("remainder")));
  return x;
}

Json to_json(const DeviationFactor &f) {
  Json exponent = Json::array();
  for (const auto &[b, h] : f.exponent())
    exponent.push_back(term_json(b, h));
  return {{"regulator", to_string(f.kind())},
          {"dimension", f.dimension()},
          {"reference_scale", f.reference_scale()},
          {"exponent", exponent}};
}

DeviationFactor factor_from_json(const Json &j) {
  const auto kind = regulator_from_string(get<std::string>(j, "regulator"));
  const auto dim = get<std::size_t>(j, "dimension");
  DeviationFactor::Exponent exponent;
  for (const auto &t : require(j, "exponent"))
    exponent[basis_from_json(t)] = matrix_from_json(t);
  return DeviationFactor(kind, dim, std::move(exponent),
                         get<double>(j, "reference_scale"));
}

Json to_json(const AdmissibilityReport &r) {
  Json v = Json::array();
  for (const auto &x : r.violations) {
    Json e = to_json(x.basis);
    e["hermitian_part_norm"] = x.hermitian_part_norm;
    e["coefficient_norm"] = x.coefficient_norm;
    e["order"] = x.order;
    v.push_back(std::move(e));
  }
  return {{"verdict", r.admissible() ? "pass" : "violation"},
          {"violations", v}};
}

Json to_json(const FitResult &r) {
  Json coeffs = Json::array();
  for (const auto &c : r.coefficients) {
    Json e = to_json(c.basis);
    e["label"] = c.basis.label();
    e["re"] = c.value.real();
    e["im"] = c.value.imag();
    e["stderr"] = c.standard_error;
    coeffs.push_back(std::move(e));
  }
  return {{"schema_version", kSchemaVersion},
          {"coefficients", coeffs},
          {"residual_norm", r.residual_norm},
          {"condition", r.condition}};
}

Json to_json(const SeriesRegularization &r) {
  Json regular = Json::array();
  for (std::size_t m = 0; m < r.regular.size(); ++m) {
    Json e = to_json(r.regular[m]);
    e["order"] = m + 1;
    regular.push_back(std::move(e));
  }
  return {{"schema_version", kSchemaVersion},
          {"lambda", r.lambda},
          {"e", r.e},
          {"factor", to_json(r.factor)},
          {"factor_value", to_json(evaluate_factor(r.factor, r.lambda))},
          {"class_A", class_A(r.factor)},
          {"regular", regular},
          {"regular_sum", to_json(r.regular_sum())}};
}

Json to_json(const ExampleReport &r) {
  Json checks = Json::array();
  for (const auto &c : r.cross_checks) {
    checks.push_back({{"name", c.name},
                      {"computed", c.computed},
                      {"reference", c.reference},
                      {"deviation", c.deviation},
                      {"tolerance", c.tolerance},
                      {"passed", c.passed}});
  }
  Json j{{"schema_version", kSchemaVersion},
         {"id", r.id},
         {"parameters", r.parameters},
         {"e", r.e},
         {"coupling_power", r.coupling_power},
         {"expansion", to_json(r.expansion)},
         {"admissibility", to_json(r.admissibility)},
         {"regular", to_json(r.regular)},
         {"regular_note", r.regular_note},
         {"cross_checks", checks},
         {"notes", r.notes}};
  j["infrared_expansion"] =
      r.infrared_expansion ? to_json(*r.infrared_expansion) : Json(nullptr);
  j["factor"] = r.factor ? to_json(*r.factor) : Json(nullptr);
  j["infrared_factor"] =
      r.infrared_factor ? to_json(*r.infrared_factor) : Json(nullptr);
  return j;
}

CouplingSeries series_from_json(const Json &j) {
  CouplingSeries s;
  s.e = get<double>(j, "e");
  const Json &orders = require(j, "orders");
  if (!orders.is_array() || orders.empty())
    throw DomainError("json: 'orders' must be a non-empty array");
  for (const auto &o : orders)
    s.orders.push_back(expansion_from_json(o));
  return s;
}

void write_ladder_csv(std::ostream &os, const SampledIntegral &s,
                      const std::vector<std::string> &comments) {
  for (const auto &c : comments)
    os << "# " << c << '\n';
  os << "lambda,re,im,err\n";
  for (const auto &r : s.rungs) {
    os << format_double(r.lambda) << ',' << format_double(r.value.real())
       << ',' << format_double(r.value.imag()) << ','
       << format_double(r.error) << '\n';
  }
}

SampledIntegral read_ladder_csv(std::istream &is,
                                std::vector<std::string> *comments) {
  SampledIntegral s;
  std::string line;
  std::size_t number = 0;
  bool header = false;
  while (std::getline(is, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty())
      continue;
    if (t.front() == '#') {
      if (comments)
        comments->push_back(trim(t.substr(1)));
      continue;
    }
    if (!header) {
      if (t != "lambda,re,im,err")
        throw DomainError("csv line " + std::to_string(number) +
                          ": expected header 'lambda,re,im,err'");
      header = true;
      continue;
    }
    const auto fields = split(t, ',');
    if (fields.size() != 4)
      throw DomainError("csv line " + std::to_string(number) +
                        ": expected 4 fields, got " +
                        std::to_string(fields.size()));
    LadderRung r;
    r.lambda = parse_double(fields[0], number);
    r.value = Complex(parse_double(fields[1], number),
                      parse_double(fields[2], number));
    r.error = parse_double(fields[3], number);
    s.rungs.push_back(r);
  }
  if (!header)
    throw DomainError("csv: missing header 'lambda,re,im,err'");
  s.validate();
  return s;
}

void write_s1_csv(std::ostream &os, const std::vector<S1Row> &rows) {
  os << "k,l,re,im\n";
  for (const auto &r : rows) {
    os << format_double(r.k) << ',' << r.l << ','
       << format_double(r.value.real()) << ','
       << format_double(r.value.imag()) << '\n';
  }
}

} // namespace divreg
