#pragma once

#include <vector>

namespace semifore::models {

// Median by partial selection; even counts average the two central values.
double combine_median(std::vector<double> values);

}  // namespace semifore::models
