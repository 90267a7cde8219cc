#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "rhilab/dyadic.hpp"
#include "rhilab/extremal.hpp"
#include "rhilab/maximal.hpp"
#include "rhilab/mugrid.hpp"
#include "rhilab/report.hpp"
#include "rhilab/step_weight.hpp"

namespace rhilab::io {

using json = nlohmann::ordered_json;

/// A parsed weight file: {"kind":"step",...} or {"kind":"dyadic",...}.
using WeightFile = std::variant<StepWeight, DyadicWeight>;

/// Measure file: {"kind":"cdf","knots":[[x,F],...]} or {"kind":"product","axes":[<cdf>,...]}.
struct MeasureFile {
  std::vector<AtomlessMeasure1D> axes;
  /// Root box: the knot range of each axis.
  Box root() const;
};

WeightFile parse_weight(std::string_view text);
StepWeight parse_step_weight(std::string_view text);
MeasureFile parse_measure(std::string_view text);

json to_json(const StepWeight& w);
json to_json(const DyadicWeight& w);
json to_json(const MeasureFile& m);
json to_json(const Real& x);  ///< "p/q" when exact, else a decimal string with 21 significant digits
json to_json(const Witness& w);
json to_json(const ConstantReport& r);
json to_json(const Verdict& v);
json to_json(const MuDyadicGrid& g);
json to_json(const SearchResult& s);

/// Canonical text: compact JSON with fixed key order and a trailing newline.
std::string canonical(const json& j);
std::string canonical(const WeightFile& w);

std::string decimal(long double x);

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// CSV of a profile: header comment with operator and weight hash, then x,value rows
/// at segment ends plus `samples` interior points per segment.
std::string profile_csv(const MaximalProfile& p, const StepWeight& w, int samples);

std::string read_file(const std::string& path);
/// Writes through a temporary file and rename.
void write_file_atomic(const std::string& path, std::string_view data);

}  // namespace rhilab::io
