#pragma once

// Sampling-based audits of universally quantified identities. Each record
// keeps the worst residual seen and the inputs that produced it.

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "projlat/algebra.hpp"

namespace projlat {

struct AuditOptions {
  std::uint64_t seed = 0;
  int samples = 500;
};

struct ResidualRecord {
  ResidualRecord() = default;
  explicit ResidualRecord(std::string n) : name(std::move(n)) {}

  std::string name;
  double worst = 0.0;
  int trials = 0;
  /// Inputs at the worst residual, in the order the check consumed them.
  std::vector<Element> witness;

  void observe(double residual, std::vector<Element> inputs) {
    ++trials;
    if (witness.empty() || residual > worst) {
      worst = residual;
      witness = std::move(inputs);
    }
  }
};

struct AuditReport {
  std::vector<ResidualRecord> records;

  double worst() const {
    double w = 0.0;
    for (const auto& r : records) w = std::max(w, r.worst);
    return w;
  }
  bool pass(double tol) const { return worst() <= tol; }
  const ResidualRecord* find(const std::string& name) const {
    for (const auto& r : records)
      if (r.name == name) return &r;
    return nullptr;
  }
};

}  // namespace projlat
