#include "semifore/ensemble.hpp"

#include <algorithm>

#include "semifore/errors.hpp"

namespace semifore::models {

double combine_median(std::vector<double> values) {
  if (values.empty()) throw ValidationError("combine_median: empty input");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  if (values.size() % 2 == 1) return values[mid];
  const double below = *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (below + values[mid]);
}

}  // namespace semifore::models
