#pragma once

#include "delzant/io.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace delzant {

/// One verification outcome, serialized as
/// {check, inputs, residual, tolerance, pass}.
struct CheckReport {
  std::string check;
  io::Json inputs;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

io::Json to_json(const CheckReport& report);

/// Named tolerances with defaults; overrides come from `--tol name=value`.
class Tolerances {
 public:
  Tolerances();
  double get(const std::string& name) const;
  /// Throws Error(InvalidInput) for an unknown name.
  void set(const std::string& name, double value);
  const std::map<std::string, double>& values() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

struct SampleCounts {
  std::size_t roundtrip = 100;
  std::size_t expanded = 100;
  std::size_t cosine = 1000;
  std::size_t continuity = 20;  // (η, η') pairs per facet
  std::size_t pythagoras_54 = 50;
  std::size_t pythagoras_55 = 1000;
  std::size_t orthogonal = 100;
  std::size_t kl = 100;
  std::size_t product = 100;
};

/// A polytope, a potential and how hard to test them. `eta_prime_shift` > 0
/// moves η' off the projected foot by that chart distance (away from η), a
/// negative control under which pythagoras_54 must fail.
struct Scenario {
  std::string name;
  Polytope polytope;
  SymplecticPotential potential;
  SampleCounts samples;
  double eta_prime_shift = 0.0;
};

Scenario parse_scenario(const io::Json& j);

/// Runs every applicable check; deterministic for a given seed.
std::vector<CheckReport> verify_scenario(const Scenario& scenario, std::uint64_t seed, const Tolerances& tol);

}  // namespace delzant
