#include "contracta/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace contracta {

DomainDescriptor DomainDescriptor::interval(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw ArgumentError("interval bounds must be finite");
  if (!(lo < hi)) throw ArgumentError("interval requires lo < hi");
  DomainDescriptor d;
  d.kind_ = Kind::interval;
  d.lo_ = lo;
  d.hi_ = hi;
  return d;
}

DomainDescriptor DomainDescriptor::enumerated(std::string rule_name,
                                              Generator rule,
                                              std::uint64_t n_max) {
  if (n_max == 0) throw ArgumentError("enumerated domain needs n_max >= 1");
  if (!rule) throw ArgumentError("enumerated domain needs a generator rule");

  DomainDescriptor d;
  d.kind_ = Kind::enumerated;
  d.rule_name_ = std::move(rule_name);
  d.values_.reserve(n_max);
  for (std::uint64_t k = 0; k < n_max; ++k) {
    double v = rule(k);
    if (!std::isfinite(v))
      throw ArgumentError("generator produced a non-finite value at index " +
                          std::to_string(k));
    d.values_.push_back(v);
  }

  d.values_increasing_ =
      std::is_sorted(d.values_.begin(), d.values_.end(),
                     [](double a, double b) { return a <= b; });
  if (d.values_increasing_) {
    // strictly increasing, hence injective
  } else {
    std::vector<double> sorted = d.values_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ArgumentError("enumerated generator is not injective up to " +
                          std::to_string(n_max));
  }

  auto [lo_it, hi_it] = std::minmax_element(d.values_.begin(), d.values_.end());
  d.lo_ = *lo_it;
  d.hi_ = *hi_it;
  return d;
}

DomainDescriptor DomainDescriptor::harmonic(std::uint64_t n_max) {
  double sum = 0.0;
  std::uint64_t next = 1;
  return enumerated(
      "harmonic",
      [sum, next](std::uint64_t k) mutable {
        // sequential access is the common case; restart otherwise
        if (k + 1 != next) {
          sum = 0.0;
          next = 1;
          for (std::uint64_t i = 1; i <= k; ++i) sum += 1.0 / double(i);
        }
        sum += 1.0 / double(k + 1);
        next = k + 2;
        return sum;
      },
      n_max);
}

bool DomainDescriptor::contains(double p, double tol) const {
  if (!std::isfinite(p)) return false;
  if (kind_ == Kind::interval) return p >= lo_ - tol && p <= hi_ + tol;
  return index_of(p, tol).has_value();
}

double DomainDescriptor::point(std::uint64_t k) const {
  if (kind_ != Kind::enumerated)
    throw ArgumentError("point(k) applies to enumerated domains only");
  if (k >= values_.size())
    throw ArgumentError("enumerated index " + std::to_string(k) +
                        " exceeds capacity " + std::to_string(values_.size()));
  return values_[k];
}

std::optional<std::uint64_t> DomainDescriptor::index_of(double value,
                                                        double tol) const {
  if (kind_ != Kind::enumerated) return std::nullopt;
  if (values_increasing_) {
    auto it = std::lower_bound(values_.begin(), values_.end(), value - tol);
    if (it == values_.end()) return std::nullopt;
    if (std::fabs(*it - value) <= tol)
      return static_cast<std::uint64_t>(it - values_.begin());
    return std::nullopt;
  }
  for (std::uint64_t k = 0; k < values_.size(); ++k)
    if (std::fabs(values_[k] - value) <= tol) return k;
  return std::nullopt;
}

std::vector<double> DomainDescriptor::grid(std::uint64_t count) const {
  if (count == 0) throw ArgumentError("grid needs count >= 1");
  std::vector<double> pts;
  pts.reserve(count);
  if (kind_ == Kind::interval) {
    if (count == 1) {
      pts.push_back(lo_);
      return pts;
    }
    double step = (hi_ - lo_) / double(count - 1);
    for (std::uint64_t k = 0; k < count; ++k) pts.push_back(lo_ + double(k) * step);
    pts.back() = hi_;  // land exactly on the endpoint
    return pts;
  }
  if (count > values_.size())
    throw ArgumentError("count " + std::to_string(count) +
                        " exceeds enumerated-domain capacity " +
                        std::to_string(values_.size()));
  pts.assign(values_.begin(), values_.begin() + count);
  return pts;
}

std::string DomainDescriptor::describe() const {
  std::ostringstream os;
  if (kind_ == Kind::interval) {
    os << "[" << lo_ << ", " << hi_ << "]";
  } else {
    os << rule_name_ << "[" << values_.size() << "]";
  }
  return os.str();
}

}  // namespace contracta
