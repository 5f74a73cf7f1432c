#pragma once

#include <map>
#include <optional>
#include <string>

#include "modflow/sequences.hpp"

namespace modflow::tables {

/// Tail rule of a spectral-trace table, in the on-disk vocabulary:
///   zero       -- entries vanish beyond the window
///   geometric  -- decay by `ratio` per unit |n| beyond the window edges
///   full       -- full spectral subspaces: value(n) = value(0) e^{n beta}
struct TailRule {
  enum class Kind { Zero, Geometric, Full } kind = Kind::Zero;
  std::optional<double> ratio;
  std::optional<long> anchor;  // expected window edge; consistency check only
};

/// Data-driven spectral trace n -> Tr_phi(f Phi_n) for one fixed positive
/// degree-zero element f. Construction validates:
///   * the n = 0 entry exists (it is the tau-value),
///   * every entry obeys value(n) <= e^{n beta} value(0) (1 + 1e-12),
///   * full-rule tables match value(0) e^{n beta} on the whole window,
///   * geometric extrapolation keeps the weighted sequence bounded
///     (ratio <= e^{-beta} when beta > 0, ratio <= e^{beta} otherwise),
///   * a declared anchor equals the window edge it names.
class SpectralTraceTable {
 public:
  SpectralTraceTable(double beta, std::map<long, double> entries, TailRule tail);

  double beta() const { return beta_; }
  const std::map<long, double>& entries() const { return entries_; }
  const TailRule& tail() const { return tail_; }

  /// tau(f) = value(0).
  double tau() const { return entries_.at(0); }

  /// Tr_phi(f Phi_n), extended by the tail rule. Large |n| against a full
  /// tail can overflow e^{n beta}; use phi_d_sequence for series work.
  double value(long n) const;

  /// The weighted sequence s_n = e^{-beta n} value(n) with structured tails;
  /// this is what every series kernel consumes. Bounded by tau().
  BoundedSequence phi_d_sequence() const;

  /// Shifted table: value'(n) = value(n + k). Realises the source table of a
  /// degree-k isometry from its range table.
  SpectralTraceTable shifted(long k) const;

 private:
  double beta_;
  std::map<long, double> entries_;
  TailRule tail_;
};

/// Homogeneous isometry known only through trace data: degree k != 0 and the
/// range table n -> Tr_phi(v v* Phi_n). The source table Tr_phi(v* v Phi_n)
/// is the range table shifted by the degree.
struct AbstractIsometry {
  int degree = 0;
  SpectralTraceTable range;

  SpectralTraceTable source() const { return range.shifted(degree); }
};

/// The q-deformed example family: the degree -k isometry whose range table
/// is Tr_phi(v v* Phi_j) = q^{2(|j|+1)} with beta = -log(q^2). The closed
/// form is extrapolated to all j in Z; flows computed from it downstream are
/// marked extrapolation-dependent.
AbstractIsometry suq2_isometry(double q, int k);

/// Closed-form flow of the q-deformed family: k q^2.
double suq2_closed_form(double q, int k);

/// Parse a JSON document
///   {"beta": r, "degree": d, "entries": {"n": v, ...},
///    "tail": {"kind": "zero"|"geometric"|"full", "ratio": r?, "anchor": a?}}
/// Validation failures (schema, missing n=0, trace-bound violation) throw
/// std::invalid_argument.
AbstractIsometry load_isometry_json(const std::string& json_text);
AbstractIsometry load_isometry_file(const std::string& path);

std::string to_json(const AbstractIsometry& iso, int indent = 2);

}  // namespace modflow::tables
