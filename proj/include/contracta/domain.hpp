#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "contracta/errors.hpp"

namespace contracta {

// One-dimensional carrier set: either a real interval [lo, hi] or an
// enumerated point sequence produced by a generator rule k -> value,
// capped at n_max points. Enumerated values are cached eagerly and the
// generator is required to be injective over the cached range.
class DomainDescriptor {
 public:
  enum class Kind { interval, enumerated };

  using Generator = std::function<double(std::uint64_t)>;

  static DomainDescriptor interval(double lo, double hi);
  static DomainDescriptor enumerated(std::string rule_name, Generator rule,
                                     std::uint64_t n_max);
  // k -> H_{k+1}, the k-th harmonic partial sum starting from H_1 = 1.
  static DomainDescriptor harmonic(std::uint64_t n_max);

  Kind kind() const { return kind_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::uint64_t size() const { return values_.size(); }
  const std::string& rule_name() const { return rule_name_; }

  bool contains(double p, double tol = 1e-9) const;

  // Enumerated access. point(k) is the k-th value; index_of locates a
  // value back to its index (within tol) or returns nullopt.
  double point(std::uint64_t k) const;
  std::optional<std::uint64_t> index_of(double value, double tol = 1e-9) const;

  // count equispaced points for intervals; the first count enumerated
  // points otherwise. count must fit the enumerated capacity.
  std::vector<double> grid(std::uint64_t count) const;

  std::string describe() const;

 private:
  DomainDescriptor() = default;

  Kind kind_ = Kind::interval;
  double lo_ = 0.0;
  double hi_ = 1.0;
  std::string rule_name_;
  std::vector<double> values_;   // enumerated cache
  bool values_increasing_ = false;
};

}  // namespace contracta
