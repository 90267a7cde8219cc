#include "rhilab/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rhilab/errors.hpp"

namespace rhilab::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

Rational rational(const json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw ParseError(where + ": expected a rational string such as \"3/4\"");
}

std::vector<Rational> rationals(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  std::vector<Rational> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(rational(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

std::string kind_of(const json& j) {
  const json& k = field(j, "kind");
  if (!k.is_string()) throw ParseError("\"kind\" must be a string");
  return k.get<std::string>();
}

StepWeight step_from(const json& j) {
  auto bp = rationals(field(j, "breakpoints"), "breakpoints");
  auto vals = rationals(field(j, "values"), "values");
  try {
    return StepWeight(std::move(bp), std::move(vals));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

DyadicWeight dyadic_from(const json& j) {
  const json& dim = field(j, "dim");
  const json& depth = field(j, "depth");
  if (!dim.is_number_integer() || !depth.is_number_integer()) throw ParseError("dim and depth must be integers");
  const json& cube = field(j, "cube");
  auto lo = rationals(field(cube, "lo"), "cube.lo");
  const Rational side = rational(field(cube, "side"), "cube.side");
  if (side.sign() <= 0) throw ParseError("cube.side must be positive");
  auto cells = rationals(field(j, "cells"), "cells");
  try {
    return DyadicWeight(dim.get<int>(), Cube(std::move(lo), side), depth.get<int>(), std::move(cells));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

AtomlessMeasure1D cdf_from(const json& j) {
  const json& knots = field(j, "knots");
  if (!knots.is_array()) throw ParseError("knots: expected an array");
  std::vector<std::pair<Rational, Rational>> out;
  for (std::size_t k = 0; k < knots.size(); ++k) {
    const auto where = "knots[" + std::to_string(k) + "]";
    if (!knots[k].is_array() || knots[k].size() != 2) throw ParseError(where + ": expected [x, F]");
    out.emplace_back(rational(knots[k][0], where), rational(knots[k][1], where));
  }
  try {
    return AtomlessMeasure1D(std::move(out));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

json strings(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

json strings(std::span<const Rational> v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

json interval_json(const Interval& i) { return json::array({i.lo().str(), i.hi().str()}); }

json cube_json(const Cube& c) {
  json j;
  j["lo"] = strings(c.lo());
  j["side"] = c.side().str();
  return j;
}

json params_json(const VerdictParams& p) {
  json j = json::object();
  if (p.r) j["r"] = decimal(*p.r);
  if (p.delta_exact)
    j["delta"] = p.delta_exact->str();
  else if (p.delta)
    j["delta"] = decimal(*p.delta);
  if (p.tau) j["tau"] = decimal(*p.tau);
  if (p.n) j["n"] = *p.n;
  if (p.depth) j["depth"] = *p.depth;
  return j;
}

}  // namespace

Box MeasureFile::root() const {
  Box b;
  for (const auto& a : axes) b.emplace_back(a.knots().front().first, a.knots().back().first);
  return b;
}

WeightFile parse_weight(std::string_view text) {
  const json j = parse_json(text);
  const std::string kind = kind_of(j);
  if (kind == "step") return step_from(j);
  if (kind == "dyadic") return dyadic_from(j);
  throw ParseError("unknown weight kind \"" + kind + "\" (expected step or dyadic)");
}

StepWeight parse_step_weight(std::string_view text) {
  const json j = parse_json(text);
  if (kind_of(j) != "step") throw ParseError("expected a step weight");
  return step_from(j);
}

MeasureFile parse_measure(std::string_view text) {
  const json j = parse_json(text);
  const std::string kind = kind_of(j);
  MeasureFile m;
  if (kind == "cdf") {
    m.axes.push_back(cdf_from(j));
  } else if (kind == "product") {
    const json& axes = field(j, "axes");
    if (!axes.is_array() || axes.empty()) throw ParseError("axes: expected a non-empty array");
    for (const auto& a : axes) m.axes.push_back(cdf_from(a));
  } else {
    throw ParseError("unknown measure kind \"" + kind + "\" (expected cdf or product)");
  }
  return m;
}

json to_json(const StepWeight& w) {
  json j;
  j["kind"] = "step";
  j["breakpoints"] = strings(w.breakpoints());
  j["values"] = strings(w.values());
  return j;
}

json to_json(const DyadicWeight& w) {
  json j;
  j["kind"] = "dyadic";
  j["dim"] = w.dim();
  j["depth"] = w.depth();
  j["cube"] = cube_json(w.cube());
  j["cells"] = strings(w.cells());
  return j;
}

json to_json(const MeasureFile& m) {
  auto one = [](const AtomlessMeasure1D& a) {
    json j;
    j["kind"] = "cdf";
    json knots = json::array();
    for (const auto& [x, f] : a.knots()) knots.push_back(json::array({x.str(), f.str()}));
    j["knots"] = knots;
    return j;
  };
  if (m.axes.size() == 1) return one(m.axes[0]);
  json j;
  j["kind"] = "product";
  j["axes"] = json::array();
  for (const auto& a : m.axes) j["axes"].push_back(one(a));
  return j;
}

std::string decimal(long double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.21Lg", x);
  return buf;
}

json to_json(const Real& x) {
  if (x.exact) return x.exact->str();
  return decimal(x.value);
}

json to_json(const Witness& w) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, Interval>) {
          json j;
          j["interval"] = interval_json(v);
          return j;
        } else if constexpr (std::is_same_v<T, Cube>) {
          json j;
          j["cube"] = cube_json(v);
          return j;
        } else {
          json j;
          j["level"] = v.str();
          return j;
        }
      },
      w);
}

json to_json(const ConstantReport& r) {
  json j;
  j["kind"] = std::string(to_string(r.kind));
  j["value"] = to_json(r.value);
  j["exact"] = r.value.is_exact();
  j["isLowerBound"] = r.is_lower_bound;
  j["refinementDepth"] = r.refinement_depth;
  j["witness"] = to_json(r.witness);
  return j;
}

json to_json(const Verdict& v) {
  json j;
  j["theorem"] = std::string(to_string(v.theorem));
  j["params"] = params_json(v.params);
  j["lhs"] = to_json(v.lhs);
  j["rhs"] = to_json(v.rhs);
  j["ratio"] = to_json(v.ratio);
  j["holds"] = v.holds;
  j["exact"] = v.exact;
  j["deltaSource"] = v.delta_source;
  j["witness"] = to_json(v.witness);
  return j;
}

json to_json(const MuDyadicGrid& g) {
  json j;
  j["dim"] = g.dim();
  j["depth"] = g.depth();
  json root = json::array();
  for (const auto& i : g.root()) root.push_back(interval_json(i));
  j["root"] = root;
  json removable = json::array();
  for (int d = 0; d < g.dim(); ++d) {
    json axis = json::array();
    for (const auto& f : g.removable(d)) axis.push_back(interval_json(f));
    removable.push_back(axis);
  }
  j["removable"] = removable;
  json gens = json::array();
  for (int k = 0; k <= g.depth(); ++k) {
    json boxes = json::array();
    for (std::size_t b = 0; b < g.box_count(k); ++b) {
      json box;
      json sides = json::array();
      for (const auto& i : g.box(k, b)) sides.push_back(interval_json(i));
      box["box"] = sides;
      box["mass"] = g.box_mass(k, b).str();
      boxes.push_back(box);
    }
    gens.push_back(boxes);
  }
  j["generations"] = gens;
  return j;
}

json to_json(const SearchResult& s) {
  json j;
  j["bestRatio"] = decimal(s.best_ratio);
  j["witnessWeight"] = to_json(s.witness);
  j["witnessConstant"] = decimal(s.witness_constant);
  j["iterations"] = s.evaluations;
  json trace = json::array();
  for (const auto& t : s.trace) trace.push_back(json::array({t.evaluation, decimal(t.ratio)}));
  j["trace"] = trace;
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(s.trace_hash));
  j["traceHash"] = hex;
  return j;
}

std::string canonical(const json& j) { return j.dump() + "\n"; }

std::string canonical(const WeightFile& w) {
  return std::visit([](const auto& x) { return canonical(to_json(x)); }, w);
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

std::string profile_csv(const MaximalProfile& p, const StepWeight& w, int samples) {
  if (samples < 0) throw DomainError("sample count must be >= 0");
  std::ostringstream os;
  os << "# operator=" << to_string(p.op()) << " weight=" << fnv1a_hex(canonical(to_json(w)))
     << " source=" << p.source().lo() << "," << p.source().hi() << "\n";
  os << "x,value\n";
  for (std::size_t s = 0; s < p.segments().size(); ++s) {
    const auto& seg = p.segments()[s];
    const Rational& a = seg.interval.lo();
    const Rational& b = seg.interval.hi();
    // left end uses the profile value; interior points the segment form
    if (s == 0) os << a << "," << decimal(p(a).to_long_double()) << "\n";
    for (int k = 1; k <= samples; ++k) {
      const Rational x = a + (b - a) * Rational(k, samples + 1);
      os << x << "," << decimal(seg.form.at(x).to_long_double()) << "\n";
    }
    os << b << "," << decimal(p(b).to_long_double()) << "\n";
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, std::string_view data) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace rhilab::io
