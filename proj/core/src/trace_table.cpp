#include "modflow/trace_table.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace modflow::tables {

namespace {

constexpr double kBoundSlack = 1e-12;

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument("spectral trace table: " + msg);
}

}  // namespace

SpectralTraceTable::SpectralTraceTable(double beta, std::map<long, double> entries,
                                       TailRule tail)
    : beta_(beta), entries_(std::move(entries)), tail_(tail) {
  if (beta_ == 0.0) fail("beta must be nonzero");
  if (entries_.empty()) fail("no entries");
  if (!entries_.count(0)) fail("missing n = 0 entry (the tau-value)");

  const long n_min = entries_.begin()->first;
  const long n_max = entries_.rbegin()->first;
  if (long(entries_.size()) != n_max - n_min + 1)
    fail("entries must cover a contiguous window of n");

  const double tau0 = entries_.at(0);
  if (tau0 < 0.0) fail("tau must be nonnegative");
  for (const auto& [n, v] : entries_) {
    if (v < 0.0) fail("entries must be nonnegative");
    if (v > std::exp(double(n) * beta_) * tau0 * (1.0 + kBoundSlack))
      fail("entry exceeds the trace bound e^{n beta} tau at n = " + std::to_string(n));
  }

  switch (tail_.kind) {
    case TailRule::Kind::Zero:
      break;
    case TailRule::Kind::Geometric: {
      if (!tail_.ratio) fail("geometric tail needs a ratio");
      const double rho = *tail_.ratio;
      if (!(rho > 0.0 && rho < 1.0)) fail("geometric ratio must lie in (0,1)");
      if (rho > std::exp(-std::abs(beta_)) * (1.0 + kBoundSlack))
        fail("geometric tail grows faster than e^{n beta}; series would be unbounded");
      break;
    }
    case TailRule::Kind::Full: {
      for (const auto& [n, v] : entries_) {
        const double expect = tau0 * std::exp(double(n) * beta_);
        if (std::abs(v - expect) > 1e-9 * std::max(1.0, std::abs(expect)))
          fail("full-subspace tail contradicts tabulated entries at n = " +
               std::to_string(n));
      }
      break;
    }
  }

  if (tail_.anchor) {
    const long edge = std::max(std::labs(n_min), std::labs(n_max));
    if (*tail_.anchor != edge)
      fail("declared anchor " + std::to_string(*tail_.anchor) +
           " does not match the window edge " + std::to_string(edge));
  }
}

double SpectralTraceTable::value(long n) const {
  const long n_min = entries_.begin()->first;
  const long n_max = entries_.rbegin()->first;
  if (n >= n_min && n <= n_max) return entries_.at(n);
  switch (tail_.kind) {
    case TailRule::Kind::Zero:
      return 0.0;
    case TailRule::Kind::Full:
      return entries_.at(0) * std::exp(double(n) * beta_);
    case TailRule::Kind::Geometric: {
      const double rho = *tail_.ratio;
      if (n > n_max) return entries_.at(n_max) * std::pow(rho, double(n - n_max));
      return entries_.at(n_min) * std::pow(rho, double(n_min - n));
    }
  }
  return 0.0;
}

BoundedSequence SpectralTraceTable::phi_d_sequence() const {
  const long n_min = entries_.begin()->first;
  const long n_max = entries_.rbegin()->first;
  std::vector<double> vals;
  vals.reserve(std::size_t(n_max - n_min + 1));
  for (long n = n_min; n <= n_max; ++n)
    vals.push_back(std::exp(-double(n) * beta_) * entries_.at(n));

  Tail left, right;
  switch (tail_.kind) {
    case TailRule::Kind::Zero:
      left = right = {TailKind::Zero, 0.0};
      break;
    case TailRule::Kind::Full:
      left = right = {TailKind::Constant, 0.0};
      break;
    case TailRule::Kind::Geometric: {
      const double rho = *tail_.ratio;
      const double r_right = rho * std::exp(-beta_);
      const double r_left = rho * std::exp(beta_);
      right = std::abs(r_right - 1.0) < 1e-14 ? Tail{TailKind::Constant, 0.0}
                                              : Tail{TailKind::Geometric, r_right};
      left = std::abs(r_left - 1.0) < 1e-14 ? Tail{TailKind::Constant, 0.0}
                                            : Tail{TailKind::Geometric, r_left};
      break;
    }
  }
  return BoundedSequence(n_min, std::move(vals), left, right);
}

SpectralTraceTable SpectralTraceTable::shifted(long k) const {
  const long n_min = entries_.begin()->first;
  const long n_max = entries_.rbegin()->first;
  const long new_min = std::min(n_min - k, 0L);
  const long new_max = std::max(n_max - k, 0L);
  std::map<long, double> shifted_entries;
  for (long n = new_min; n <= new_max; ++n) shifted_entries.emplace(n, value(n + k));
  TailRule rule = tail_;
  rule.anchor.reset();
  return SpectralTraceTable(beta_, std::move(shifted_entries), rule);
}

AbstractIsometry suq2_isometry(double q, int k) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("suq2: q in (0,1) required");
  if (k < 1) throw std::invalid_argument("suq2: k >= 1 required");
  const double beta = -std::log(q * q);  // e^{-beta} = q^2
  const long window = std::max<long>(8, k + 2);
  std::map<long, double> entries;
  for (long j = -window; j <= window; ++j)
    entries.emplace(j, std::pow(q, 2.0 * (double(std::labs(j)) + 1.0)));
  TailRule tail{TailRule::Kind::Geometric, q * q, window};
  return AbstractIsometry{-k, SpectralTraceTable(beta, std::move(entries), tail)};
}

double suq2_closed_form(double q, int k) { return double(k) * q * q; }

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

TailRule tail_from_json(const json& j) {
  TailRule rule;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "zero")
    rule.kind = TailRule::Kind::Zero;
  else if (kind == "geometric")
    rule.kind = TailRule::Kind::Geometric;
  else if (kind == "full")
    rule.kind = TailRule::Kind::Full;
  else
    throw std::invalid_argument("spectral trace table: unknown tail kind '" + kind + "'");
  if (j.contains("ratio")) rule.ratio = j.at("ratio").get<double>();
  if (j.contains("anchor")) rule.anchor = j.at("anchor").get<long>();
  return rule;
}

}  // namespace

AbstractIsometry load_isometry_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("trace table document: ") + e.what());
  }
  try {
    const double beta = doc.at("beta").get<double>();
    const int degree = doc.at("degree").get<int>();
    if (degree == 0)
      throw std::invalid_argument("trace table document: degree must be nonzero");
    std::map<long, double> entries;
    for (const auto& [key, value] : doc.at("entries").items())
      entries.emplace(std::stol(key), value.get<double>());
    const TailRule rule = tail_from_json(doc.at("tail"));
    return AbstractIsometry{degree, SpectralTraceTable(beta, std::move(entries), rule)};
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("trace table document: ") + e.what());
  }
}

AbstractIsometry load_isometry_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open trace table file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_isometry_json(buf.str());
}

std::string to_json(const AbstractIsometry& iso, int indent) {
  json doc;
  doc["beta"] = iso.range.beta();
  doc["degree"] = iso.degree;
  json entries = json::object();
  for (const auto& [n, v] : iso.range.entries()) entries[std::to_string(n)] = v;
  doc["entries"] = entries;
  json tail;
  switch (iso.range.tail().kind) {
    case TailRule::Kind::Zero: tail["kind"] = "zero"; break;
    case TailRule::Kind::Geometric: tail["kind"] = "geometric"; break;
    case TailRule::Kind::Full: tail["kind"] = "full"; break;
  }
  if (iso.range.tail().ratio) tail["ratio"] = *iso.range.tail().ratio;
  if (iso.range.tail().anchor) tail["anchor"] = *iso.range.tail().anchor;
  doc["tail"] = tail;
  return doc.dump(indent);
}

}  // namespace modflow::tables
