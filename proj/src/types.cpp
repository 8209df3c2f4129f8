#include "rcpkit/error.hpp"
#include "rcpkit/types.hpp"

#include <algorithm>
#include <iterator>

namespace rcpkit {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::numeric_failure: return "numeric-failure";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::domain: return "domain";
    case ErrorKind::undefined_angle: return "undefined-angle";
    case ErrorKind::degenerate_measurement: return "degenerate-measurement";
    case ErrorKind::degenerate_sample: return "degenerate-sample";
  }
  return "unknown";
}

Support support_of(const Vector& x) {
  Support s;
  for (Index i = 0; i < x.size(); ++i)
    if (x[i] != 0.0) s.push_back(i);
  return s;
}

Support support_union(const Support& a, const Support& b) {
  Support out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool supports_disjoint(const Support& a, const Support& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return true;
}

}  // namespace rcpkit
